use std::sync::Arc;

use proptest::prelude::*;

use periodica::algebra::{presets, Algebra};
use periodica::complex::{cone, homotopy_hom, GradedMorphism, PeriodicComplex};
use periodica::decompose::iso_q;
use periodica::derived::hereditary_decompose;
use periodica::module::Module;
use periodica::sampling::{random_chain_map, random_graded_morphism, random_periodic_complex, random_projective_complex, rng};
use periodica::stable::StableContext;
use periodica::Field;

const Q: Field = Field::Rationals;

fn ka(n: usize) -> Arc<Algebra> {
    presets::build(presets::linear_a(Q, n))
}

fn pool(a: &Arc<Algebra>) -> Vec<Module> {
    let n = a.n_vertices();
    let mut p: Vec<Module> = (0..n).map(|v| Module::projective(a, v)).collect();
    p.extend((0..n).map(|v| Module::simple(a, v)));
    p.extend((0..n).map(|v| Module::injective(a, v)));
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn shift_composes_and_is_strictly_periodic(seed in any::<u64>(), m in 1usize..4, a in -5i64..5, b in -5i64..5) {
        let alg = ka(2);
        let v = random_periodic_complex(&pool(&alg), m, 3, &mut rng(seed)).unwrap();
        prop_assert_eq!(v.shift(a).shift(b), v.shift(a + b));
        prop_assert_eq!(v.shift(2 * m as i64), v.clone());
        if m % 2 == 0 {
            prop_assert_eq!(v.shift(m as i64), v.clone());
        }
        for i in 0..m as i64 {
            let (x, y) = (v.shift(a).cohomology(i), v.cohomology(i + a));
            prop_assert!(iso_q(&x, &y).unwrap());
        }
    }

    #[test]
    fn rank_bookkeeping(seed in any::<u64>(), m in 1usize..4) {
        let alg = ka(3);
        let v = random_periodic_complex(&pool(&alg), m, 3, &mut rng(seed)).unwrap();
        let lhs: usize = (0..m as i64).map(|i| v.comp(i).dim() - v.cohomology(i).dim()).sum();
        let ranks: usize = v.diffs().iter().map(|d| d.rank()).sum();
        prop_assert_eq!(lhs, 2 * ranks);
    }

    #[test]
    fn cone_identities(seed in any::<u64>(), m in 1usize..4) {
        let alg = ka(2);
        let mut g = rng(seed);
        let v = random_periodic_complex(&pool(&alg), m, 2, &mut g).unwrap();
        let w = random_periodic_complex(&pool(&alg), m, 2, &mut g).unwrap();
        let f = random_chain_map(&v, &w, &mut g).unwrap();
        let cd = cone(&f, &v, &w).unwrap();
        prop_assert!(cd.cone.d_squared_zero());
        for (name, holds) in cd.verify(&f, &v, &w) {
            prop_assert!(holds, "{}", name);
        }
        let id = GradedMorphism::identity(&v);
        prop_assert!(cone(&id, &v, &v).unwrap().cone.is_acyclic());
    }

    #[test]
    fn graded_leibniz(seed in any::<u64>(), m in 1usize..4, p in -3i64..3, q in -3i64..3) {
        let alg = ka(2);
        let mut g = rng(seed);
        let u = random_periodic_complex(&pool(&alg), m, 2, &mut g).unwrap();
        let v = random_periodic_complex(&pool(&alg), m, 2, &mut g).unwrap();
        let w = random_periodic_complex(&pool(&alg), m, 2, &mut g).unwrap();
        let x = random_graded_morphism(&u, &v, p, &mut g).unwrap();
        let y = random_graded_morphism(&v, &w, q, &mut g).unwrap();
        let sign = if q.rem_euclid(2) == 0 { Q.one() } else { -Q.one() };
        let lhs = y.compose(&x).differential(&u, &w);
        let rhs = y.differential(&v, &w).compose(&x).add(&y.compose(&x.differential(&u, &v)).scale(&sign));
        prop_assert_eq!(lhs, rhs);
        prop_assert!(x.differential(&u, &v).differential(&u, &v).is_zero());
    }

    #[test]
    fn quasi_iso_criteria_agree(seed in any::<u64>(), m in 1usize..4) {
        let alg = ka(2);
        let mut g = rng(seed);
        let v = random_periodic_complex(&pool(&alg), m, 2, &mut g).unwrap();
        let w = random_periodic_complex(&pool(&alg), m, 2, &mut g).unwrap();
        let f = random_chain_map(&v, &w, &mut g).unwrap();
        prop_assert_eq!(periodica::complex::is_quasi_iso(&f, &v, &w).unwrap(), periodica::complex::induces_cohomology_iso(&f, &v, &w));
    }

    #[test]
    fn fold_cohomology_is_sum(seed in any::<u64>(), m in 1usize..4) {
        let alg = ka(3);
        let c = random_projective_complex(&alg, -2, 4, 2, &mut rng(seed)).unwrap();
        let v = c.fold(m).unwrap();
        for i in 0..m as i64 {
            let want: usize = (c.lo()..=c.hi()).filter(|j| j.rem_euclid(m as i64) == i).map(|j| c.cohomology_dim(j)).sum();
            prop_assert_eq!(v.cohomology(i).dim(), want);
        }
    }

    #[test]
    fn contractible_iff_acyclic_on_projectives(seed in any::<u64>(), m in 1usize..4) {
        let alg = ka(3);
        let projectives: Vec<Module> = (0..3).map(|v| Module::projective(&alg, v)).collect();
        let v = random_periodic_complex(&projectives, m, 3, &mut rng(seed)).unwrap();
        let acyclic = v.is_acyclic();
        prop_assert_eq!(acyclic, v.is_contractible().unwrap());
        prop_assert_eq!(acyclic, homotopy_hom(&v, &v, 0).unwrap() == 0);
        prop_assert_eq!(acyclic, periodica::complex::decompose_acyclic_projective(&v).is_ok());
    }

    #[test]
    fn hereditary_decomposition_preserves_cohomology(seed in any::<u64>(), m in 1usize..4) {
        let alg = ka(2);
        let v = random_periodic_complex(&pool(&alg), m, 3, &mut rng(seed)).unwrap();
        let d = hereditary_decompose(&v).unwrap();
        prop_assert!(d.verify(&v).unwrap());
        for i in 0..m as i64 {
            prop_assert!(iso_q(&v.cohomology(i), &d.stalk_sum.cohomology(i)).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn loop_and_suspension_are_inverse(a in 0usize..3, l in 1usize..3, k in 0usize..2) {
        let alg = presets::build(presets::cyclic_nakayama(Q, 3, 3));
        let ctx = StableContext::new(&alg).unwrap();
        let x = Module::radical_quotient_of_projective(&alg, a, l);
        let y = Module::direct_sum(&alg, &[&x, &Module::projective(&alg, k)]);
        let back = ctx.loop_module(&ctx.suspension(&y).unwrap()).unwrap();
        prop_assert!(iso_q(&back, &x).unwrap());
        let forth = ctx.suspension(&ctx.loop_module(&x).unwrap()).unwrap();
        prop_assert!(iso_q(&forth, &x).unwrap());
    }

    #[test]
    fn stable_composition_ignores_representatives(a in 0usize..3, l1 in 1usize..3, b in 0usize..3, l2 in 1usize..3, c in 0usize..3, l3 in 1usize..3) {
        let alg = presets::build(presets::cyclic_nakayama(Q, 3, 3));
        let ctx = StableContext::new(&alg).unwrap();
        let x = Module::radical_quotient_of_projective(&alg, a, l1);
        let y = Module::radical_quotient_of_projective(&alg, b, l2);
        let z = Module::radical_quotient_of_projective(&alg, c, l3);
        let hxy = ctx.stable_hom(&x, &y).unwrap();
        let hyz = ctx.stable_hom(&y, &z).unwrap();
        let hxz = ctx.stable_hom(&x, &z).unwrap();
        let pxy = hxy.projective_maps.clone();
        let pyz = hyz.projective_maps.clone();
        for f in hxy.basis() {
            for g in hyz.basis() {
                let base = hxz.class_of(&g.compose(&f)).unwrap();
                let mut f2 = f.clone();
                for k in 0..pxy.cols() {
                    f2 = f2.add(&hxy.hom.combine(&pxy.col(k)));
                }
                let mut g2 = g.clone();
                for k in 0..pyz.cols() {
                    g2 = g2.add(&hyz.hom.combine(&pyz.col(k)));
                }
                prop_assert_eq!(hxz.class_of(&g2.compose(&f2)).unwrap(), base);
            }
        }
    }
}

#[test]
fn suspension_squared_is_identity_on_nakayama_nonprojectives() {
    for n in [2, 3, 4] {
        let alg = presets::build(presets::cyclic_nakayama(Q, n, n));
        let ctx = StableContext::new(&alg).unwrap();
        let all = periodica::stable::nakayama_nonprojectives(&alg).unwrap();
        assert_eq!(all.len(), n * (n - 1));
        for (_, x) in all {
            assert!(iso_q(&ctx.suspension_power(&x, 2).unwrap(), &x).unwrap());
        }
    }
}

#[test]
fn zero_differential_complexes_are_fixed_by_m_shifts() {
    let alg = ka(2);
    for m in 1..5usize {
        let comps: Vec<Module> = (0..m).map(|i| Module::projective(&alg, i % 2)).collect();
        let diffs = (0..m).map(|i| periodica::module::ModMap::zero_between(&comps[i], &comps[(i + 1) % m])).collect();
        let v = PeriodicComplex::new(m, comps, diffs).unwrap();
        assert_eq!(v.shift(m as i64), v);
    }
}
