//! Seeded random complexes for property checks.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::complex::{BoundedComplex, GradedMorphism, HomComplex, PeriodicComplex};
use crate::error::Result;
use crate::field::Scalar;
use crate::homological::projective_sum;
use crate::linalg::Mat;
use crate::module::{hom, ModMap, Module};

/// Coefficients of random combinations are drawn from `-COEF..=COEF`.
const COEF: i64 = 2;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random combination of the maps `src -> tgt` killed by every
/// constraint (each constraint returns coordinates that must vanish).
pub fn random_constrained_map(
    src: &Module,
    tgt: &Module,
    constraints: &[&dyn Fn(&ModMap) -> Vec<Scalar>],
    rng: &mut ChaCha8Rng,
) -> Result<ModMap> {
    let field = src.field();
    let h = hom(src, tgt)?;
    if h.dim() == 0 {
        return Ok(ModMap::zero_between(src, tgt));
    }
    let cols: Vec<Vec<Scalar>> = h.basis().iter().map(|b| constraints.iter().flat_map(|c| c(b)).collect()).collect();
    let rows = cols.first().map_or(0, |c| c.len());
    let kernel = if rows == 0 { Mat::identity(field, h.dim()) } else { Mat::from_cols(field, rows, &cols).kernel() };
    let mut coeffs = vec![field.zero(); h.dim()];
    for k in 0..kernel.cols() {
        let c = field.int(rng.gen_range(-COEF..=COEF));
        let kc = kernel.col(k);
        for (x, y) in coeffs.iter_mut().zip(&kc) {
            *x = x.clone() + c.clone() * y.clone();
        }
    }
    Ok(h.combine(&coeffs))
}

fn random_tops(n: usize, max_summands: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let k = rng.gen_range(0..=max_summands);
    let mut tops: Vec<usize> = (0..k).map(|_| rng.gen_range(0..n)).collect();
    tops.sort_unstable();
    tops
}

/// A random complex of projectives in degrees `lo..lo+len`, each term a sum
/// of at most `max_summands` indecomposable projectives.
pub fn random_projective_complex(alg: &Arc<Algebra>, lo: i64, len: usize, max_summands: usize, rng: &mut ChaCha8Rng) -> Result<BoundedComplex> {
    let n = alg.n_vertices();
    let comps: Vec<Module> = (0..len.max(1)).map(|_| projective_sum(alg, &random_tops(n, max_summands, rng))).collect();
    let mut diffs: Vec<ModMap> = Vec::new();
    for j in 0..comps.len() - 1 {
        let prev = diffs.last().cloned();
        let after_prev = move |g: &ModMap| prev.as_ref().map_or_else(Vec::new, |p| g.compose(p).to_vec());
        diffs.push(random_constrained_map(&comps[j], &comps[j + 1], &[&after_prev], rng)?);
    }
    BoundedComplex::new(lo, comps, diffs)
}

/// A random `m`-periodic complex whose components are sums of modules
/// drawn from `pool`.
pub fn random_periodic_complex(pool: &[Module], m: usize, max_summands: usize, rng: &mut ChaCha8Rng) -> Result<PeriodicComplex> {
    let alg = pool[0].algebra().clone();
    let pick = |rng: &mut ChaCha8Rng| -> Vec<Module> {
        let k = rng.gen_range(0..=max_summands);
        (0..k).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect()
    };
    if m == 1 {
        // V = A ⊕ B with d = [[0, g], [0, 0]]
        let a = pick(rng);
        let b = pick(rng);
        let am = Module::direct_sum(&alg, &a.iter().collect::<Vec<_>>());
        let bm = Module::direct_sum(&alg, &b.iter().collect::<Vec<_>>());
        let g = random_constrained_map(&bm, &am, &[], rng)?;
        let v = Module::direct_sum(&alg, &[&am, &bm]);
        let (inc, proj) = Module::sum_maps(&[&am, &bm]);
        let d = inc[0].compose(&g).compose(&proj[1]);
        return PeriodicComplex::new(1, vec![v], vec![d]);
    }
    let comps: Vec<Module> = (0..m).map(|_| Module::direct_sum(&alg, &pick(rng).iter().collect::<Vec<_>>())).collect();
    let mut diffs: Vec<ModMap> = Vec::new();
    for i in 0..m - 1 {
        let prev = diffs.last().cloned();
        let after_prev = move |g: &ModMap| prev.as_ref().map_or_else(Vec::new, |p| g.compose(p).to_vec());
        diffs.push(random_constrained_map(&comps[i], &comps[i + 1], &[&after_prev], rng)?);
    }
    let before = diffs[m - 2].clone();
    let after = diffs[0].clone();
    let c1 = move |g: &ModMap| g.compose(&before).to_vec();
    let c2 = move |g: &ModMap| after.compose(g).to_vec();
    diffs.push(random_constrained_map(&comps[m - 1], &comps[0], &[&c1, &c2], rng)?);
    PeriodicComplex::new(m, comps, diffs)
}

/// A random homogeneous element of degree `p` of the Hom complex.
pub fn random_graded_morphism(v: &PeriodicComplex, w: &PeriodicComplex, p: i64, rng: &mut ChaCha8Rng) -> Result<GradedMorphism> {
    let h = HomComplex::new(v, w)?;
    let field = v.field();
    let c: Vec<Scalar> = (0..h.dim(p)).map(|_| field.int(rng.gen_range(-COEF..=COEF))).collect();
    Ok(h.combine(p, &c))
}

/// A random chain map `V -> W`: a combination of a basis of the degree-0
/// cocycles.
pub fn random_chain_map(v: &PeriodicComplex, w: &PeriodicComplex, rng: &mut ChaCha8Rng) -> Result<GradedMorphism> {
    let h = HomComplex::new(v, w)?;
    let field = v.field();
    let z = h.differential_matrix(0).kernel();
    let mut c = vec![field.zero(); h.dim(0)];
    for k in 0..z.cols() {
        let a = field.int(rng.gen_range(-COEF..=COEF));
        for (x, y) in c.iter_mut().zip(z.col(k)) {
            *x = x.clone() + a.clone() * y;
        }
    }
    Ok(h.combine(0, &c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presets::*;
    use crate::field::Field;

    #[test]
    fn random_complexes_are_complexes() {
        let a = build(linear_a(Field::Rationals, 2));
        let pool = vec![Module::projective(&a, 0), Module::projective(&a, 1), Module::simple(&a, 1)];
        let mut r = rng(3);
        for m in 1..=3 {
            for _ in 0..10 {
                let v = random_periodic_complex(&pool, m, 3, &mut r).unwrap();
                assert!(v.d_squared_zero());
            }
        }
        for _ in 0..10 {
            let c = random_projective_complex(&a, -1, 3, 2, &mut r).unwrap();
            for j in c.lo()..c.hi() {
                assert!(c.diff(j + 1).compose(&c.diff(j)).is_zero());
            }
        }
    }

    #[test]
    fn random_chain_maps_are_closed() {
        let a = build(linear_a(Field::Rationals, 2));
        let pool = vec![Module::projective(&a, 0), Module::projective(&a, 1), Module::simple(&a, 1)];
        let mut r = rng(8);
        for _ in 0..5 {
            let v = random_periodic_complex(&pool, 2, 2, &mut r).unwrap();
            let w = random_periodic_complex(&pool, 2, 2, &mut r).unwrap();
            let f = random_chain_map(&v, &w, &mut r).unwrap();
            assert!(f.is_closed(&v, &w));
            assert!(random_graded_morphism(&v, &w, 1, &mut r).unwrap().is_well_formed(&v, &w));
        }
    }

    #[test]
    fn sampling_is_reproducible() {
        let a = build(linear_a(Field::Rationals, 3));
        let pool = vec![Module::projective(&a, 0), Module::projective(&a, 2), Module::simple(&a, 1)];
        let x = random_periodic_complex(&pool, 2, 3, &mut rng(11)).unwrap();
        let y = random_periodic_complex(&pool, 2, 3, &mut rng(11)).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn sampled_differentials_are_often_nonzero() {
        let a = build(linear_a(Field::Rationals, 2));
        let mut r = rng(5);
        let nonzero = (0..30)
            .filter(|_| {
                let c = random_projective_complex(&a, 0, 2, 2, &mut r).unwrap();
                !c.diff(0).is_zero()
            })
            .count();
        assert!(nonzero > 5, "{nonzero}");
    }
}
