//! Isomorphism tests and Krull-Schmidt decomposition via Fitting's lemma.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::Mat;
use crate::module::{hom, HomSpace, ModMap, Module};

pub const DEFAULT_SEED: u64 = 0x5eed;

/// Random integer combinations tried over the rationals before the
/// symbolic fallback.
const RATIONAL_TRIES: usize = 6;
const RANDOM_RANGE: i64 = 1 << 20;
/// Prime-field Hom spaces with at most this many elements are searched
/// exhaustively.
const EXHAUSTIVE_LIMIT: u64 = 4096;
/// Largest block size for the symbolic determinant.
const SYMBOLIC_MAX_DIM: usize = 6;

fn random_scalar(field: Field, rng: &mut ChaCha8Rng) -> Scalar {
    match field {
        Field::Rationals => field.int(rng.gen_range(-RANDOM_RANGE..=RANDOM_RANGE)),
        Field::Prime(p) => field.int(rng.gen_range(0..p) as i64),
    }
}

pub fn random_combination(h: &HomSpace, field: Field, rng: &mut ChaCha8Rng) -> ModMap {
    let c: Vec<Scalar> = (0..h.dim()).map(|_| random_scalar(field, rng)).collect();
    h.combine(&c)
}

/// Cheap invariants that every isomorphism preserves.
fn obviously_different(m: &Module, n: &Module) -> Result<bool> {
    if m.dims() != n.dims() {
        return Ok(true);
    }
    if m.top_dims() != n.top_dims() || m.socle_dims() != n.socle_dims() {
        return Ok(true);
    }
    for j in 2..4 {
        if m.radical_power_submodule(j).dims() != n.radical_power_submodule(j).dims() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// An explicit isomorphism `m -> n`, or `None` when none exists.
pub fn find_iso(m: &Module, n: &Module, seed: u64) -> Result<Option<ModMap>> {
    m.same_algebra(n)?;
    if obviously_different(m, n)? {
        return Ok(None);
    }
    if m.is_zero() {
        return Ok(Some(ModMap::identity(m)));
    }
    let h = hom(m, n)?;
    if h.dim() == 0 {
        return Ok(None);
    }
    let field = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if let Field::Prime(p) = field {
        let total = (p as u128).checked_pow(h.dim() as u32);
        if let Some(t) = total.filter(|&t| t <= EXHAUSTIVE_LIMIT as u128) {
            for idx in 0..t as u64 {
                let mut x = idx;
                let c: Vec<Scalar> = (0..h.dim())
                    .map(|_| {
                        let d = x % p;
                        x /= p;
                        field.int(d as i64)
                    })
                    .collect();
                let f = h.combine(&c);
                if f.is_iso() {
                    return Ok(Some(f));
                }
            }
            return Ok(None);
        }
    }
    let tries = if field == Field::Rationals { RATIONAL_TRIES } else { 4 * RATIONAL_TRIES };
    for _ in 0..tries {
        let f = random_combination(&h, field, &mut rng);
        if f.is_iso() {
            return Ok(Some(f));
        }
    }
    // symbolic fallback: the generic combination is invertible iff every
    // vertex block has a nonzero determinant polynomial
    let blocks = m.dims().len();
    for v in 0..blocks {
        let d = m.dims()[v];
        if d == 0 {
            continue;
        }
        if d > SYMBOLIC_MAX_DIM {
            return Err(Error::Inconclusive(format!(
                "no isomorphism found by random search and block size {d} exceeds the symbolic limit"
            )));
        }
        let entries: Vec<Vec<Vec<Scalar>>> = (0..d)
            .map(|r| (0..d).map(|c| h.basis().iter().map(|b| b.blocks[v].get(r, c).clone()).collect()).collect())
            .collect();
        let det = symbolic_det(field, &entries, h.dim());
        if det.is_empty() {
            return Ok(None);
        }
    }
    if let Field::Prime(p) = field {
        if (m.dim() as u64) >= p {
            return Err(Error::Inconclusive(
                "determinant polynomial is nonzero but the prime is too small to guarantee an invertible point".into(),
            ));
        }
    }
    // a nonzero polynomial has a nonvanishing point; keep sampling
    for _ in 0..10_000 {
        let f = random_combination(&h, field, &mut rng);
        if f.is_iso() {
            return Ok(Some(f));
        }
    }
    Err(Error::Inconclusive("an isomorphism exists but none was sampled".into()))
}

pub fn iso_q(m: &Module, n: &Module) -> Result<bool> {
    Ok(find_iso(m, n, DEFAULT_SEED)?.is_some())
}

type Poly = BTreeMap<Vec<u16>, Scalar>;

fn poly_add_scaled(acc: &mut Poly, p: &Poly, lin: &[Scalar], sign: bool, nvars: usize) {
    for (mono, c) in p {
        for (i, l) in lin.iter().enumerate().take(nvars) {
            if l.is_zero() {
                continue;
            }
            let mut m2 = mono.clone();
            m2[i] += 1;
            let term = c * l;
            let term = if sign { -term } else { term };
            let e = acc.entry(m2).or_insert_with(|| term.field().zero());
            *e = &*e + &term;
        }
    }
    acc.retain(|_, c| !c.is_zero());
}

/// Determinant of the matrix with linear entries `sum_i t_i * entries[r][c][i]`,
/// by expansion along rows with memoization on column subsets.
fn symbolic_det(field: Field, entries: &[Vec<Vec<Scalar>>], nvars: usize) -> Poly {
    let d = entries.len();
    let mut memo: Vec<Option<Poly>> = vec![None; 1 << d];
    let mut one = Poly::new();
    one.insert(vec![0; nvars], field.one());
    memo[0] = Some(one);
    for mask in 1usize..(1 << d) {
        let j = mask.count_ones() as usize;
        let row = j - 1;
        let cols: Vec<usize> = (0..d).filter(|c| mask & (1 << c) != 0).collect();
        let mut acc = Poly::new();
        for (idx, &c) in cols.iter().enumerate() {
            let sub = memo[mask & !(1 << c)].as_ref().unwrap();
            if sub.is_empty() {
                continue;
            }
            let negative = (row + idx) % 2 == 1;
            poly_add_scaled(&mut acc, sub, &entries[row][c], negative, nvars);
        }
        memo[mask] = Some(acc);
    }
    memo[(1 << d) - 1].take().unwrap()
}

fn is_nilpotent(a: &Mat) -> bool {
    a.pow(a.rows().max(1)).is_zero()
}

fn endo_pow(f: &ModMap, e: usize) -> ModMap {
    ModMap { blocks: f.blocks.iter().map(|b| b.pow(e)).collect() }
}

/// The whole module as one matrix (block diagonal over vertices).
fn total_matrix(f: &ModMap) -> Mat {
    Mat::block_diag(f.field(), &f.blocks.iter().collect::<Vec<_>>())
}

/// Eigenvalues of `a` lying in the base field.
fn rational_eigenvalues(a: &Mat) -> Vec<Scalar> {
    let field = a.field();
    let n = a.rows();
    if n == 0 {
        return vec![];
    }
    match field {
        Field::Prime(p) if p <= EXHAUSTIVE_LIMIT => {
            let id = Mat::identity(field, n);
            field
                .elements()
                .unwrap()
                .into_iter()
                .filter(|l| a.sub(&id.scale(l)).det().is_zero())
                .collect()
        }
        Field::Prime(_) => {
            // only the trace candidate is examined for large primes
            let t = a.trace();
            match field.int(n as i64).inv() {
                Some(inv) => {
                    let l = &t * &inv;
                    let id = Mat::identity(field, n);
                    if a.sub(&id.scale(&l)).det().is_zero() {
                        vec![l]
                    } else {
                        vec![]
                    }
                }
                None => vec![],
            }
        }
        Field::Rationals => rational_roots(&char_poly_rational(a)).into_iter().map(Scalar::Q).collect(),
    }
}

/// Coefficients `c_0..c_n` of `det(x I - A)` (Faddeev-LeVerrier).
fn char_poly_rational(a: &Mat) -> Vec<BigRational> {
    let field = a.field();
    let n = a.rows();
    let mut c = vec![BigRational::zero(); n + 1];
    c[n] = BigRational::one();
    let id = Mat::identity(field, n);
    let mut m = Mat::zeros(field, n, n);
    for k in 1..=n {
        m = a.mul(&m).add(&id.scale(&Scalar::Q(c[n - k + 1].clone())));
        let tr = a.mul(&m).trace();
        let tr = tr.as_rational().unwrap().clone();
        c[n - k] = -tr / BigRational::from_integer(BigInt::from(k));
    }
    c
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    let v = n.to_u64()?;
    if v > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            out.push(BigInt::from(d));
            if d * d != v {
                out.push(BigInt::from(v / d));
            }
        }
        d += 1;
    }
    Some(out)
}

fn rational_roots(coeffs: &[BigRational]) -> Vec<BigRational> {
    // clear denominators
    let l = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = coeffs.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    if ints.iter().all(Zero::is_zero) {
        return roots;
    }
    if ints[0].is_zero() {
        roots.push(BigRational::zero());
        while ints[0].is_zero() {
            ints.remove(0);
        }
    }
    let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
        return roots;
    };
    let eval = |x: &BigRational| -> BigRational {
        let mut acc = BigRational::zero();
        for c in ints.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    };
    for p in &ps {
        for q in &qs {
            for s in [1, -1] {
                let x = BigRational::new(p * BigInt::from(s), q.clone());
                if !roots.contains(&x) && eval(&x).is_zero() {
                    roots.push(x);
                }
            }
        }
    }
    roots
}

/// Fitting splitting `M = ker φ^s ⊕ im φ^s` when `φ` is neither nilpotent
/// nor invertible.
fn fitting_split(m: &Module, f: &ModMap) -> Option<(Module, ModMap, Module, ModMap)> {
    let t = total_matrix(f);
    if t.rank() == t.rows() || is_nilpotent(&t) {
        return None;
    }
    let s = endo_pow(f, m.dim());
    let (k, ki) = s.kernel(m);
    let (i, ii) = s.image(m);
    Some((k, ki, i, ii))
}

/// Endomorphisms worth trying as splitting elements.
fn splitting_candidates(m: &Module, end: &HomSpace, rng: &mut ChaCha8Rng) -> Vec<ModMap> {
    let field = m.field();
    let mut base: Vec<ModMap> = end.basis().to_vec();
    for _ in 0..2 {
        base.push(random_combination(end, field, rng));
    }
    let mut out = Vec::new();
    for f in &base {
        out.push(f.clone());
        let id = ModMap::identity(m);
        for l in rational_eigenvalues(&total_matrix(f)) {
            out.push(f.sub(&id.scale(&l)));
        }
    }
    out
}

/// The summand decomposition: `Ok(None)` when `m` is certified
/// indecomposable, `Ok(Some(..))` with a nontrivial splitting otherwise.
fn split_once(m: &Module, rng: &mut ChaCha8Rng) -> Result<Option<(Module, ModMap, Module, ModMap)>> {
    let end = hom(m, m)?;
    for f in splitting_candidates(m, &end, rng) {
        if let Some(s) = fitting_split(m, &f) {
            return Ok(Some(s));
        }
    }
    if local_certificate(m, &end) {
        return Ok(None);
    }
    Err(Error::Inconclusive(format!(
        "could not split {m:?} and could not certify that its endomorphism ring is local"
    )))
}

/// `End(M) = k·id ⊕ N` with `N` a nilpotent two-sided ideal.
fn local_certificate(m: &Module, end: &HomSpace) -> bool {
    let field = m.field();
    let n = m.dim();
    let id = ModMap::identity(m);
    let mut gens = Vec::new();
    for f in end.basis() {
        let t = total_matrix(f);
        let eig = rational_eigenvalues(&t);
        let Some(l) = eig.first() else { return false };
        let g = f.sub(&id.scale(l));
        if !is_nilpotent(&total_matrix(&g)) {
            return false;
        }
        gens.push(g.to_vec());
    }
    let k = end.dim();
    if k == 0 {
        return false;
    }
    let rows = gens[0].len();
    let nmat = Mat::from_cols(field, rows, &gens).image();
    if nmat.cols() + 1 != k {
        return false;
    }
    if Mat::hstack(field, rows, &[&nmat, &Mat::column_vector(field, &id.to_vec())]).rank() != k {
        return false;
    }
    let src = m.dims().to_vec();
    let as_map = |c: &[Scalar]| ModMap::from_vec(field, &src, &src, c);
    let nmaps: Vec<ModMap> = nmat.columns().iter().map(|c| as_map(c)).collect();
    // two-sided ideal
    for x in &nmaps {
        for f in end.basis() {
            for p in [x.compose(f), f.compose(x)] {
                let joined = Mat::hstack(field, rows, &[&nmat, &Mat::column_vector(field, &p.to_vec())]);
                if joined.rank() != nmat.cols() {
                    return false;
                }
            }
        }
    }
    // nilpotent: N^{n+1} = 0
    let mut power = nmaps.clone();
    for _ in 0..n {
        let mut next = Vec::new();
        for a in &power {
            for b in &nmaps {
                let c = a.compose(b);
                if !c.is_zero() {
                    next.push(c.to_vec());
                }
            }
        }
        if next.is_empty() {
            return true;
        }
        let span = Mat::from_cols(field, rows, &next).image();
        power = span.columns().iter().map(|c| as_map(c)).collect();
    }
    power.is_empty()
}

pub fn indecomposable_q(m: &Module) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    Ok(split_once(m, &mut rng)?.is_none())
}

/// A summand with its embedding into the original module.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Module,
    pub inclusion: ModMap,
}

/// Indecomposable summands whose direct sum is isomorphic to `m`.
pub fn decompose_with_inclusions(m: &Module) -> Result<Vec<Summand>> {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut out = Vec::new();
    let mut stack = vec![Summand { module: m.clone(), inclusion: ModMap::identity(m) }];
    while let Some(s) = stack.pop() {
        if s.module.is_zero() {
            continue;
        }
        match split_once(&s.module, &mut rng)? {
            None => out.push(s),
            Some((a, ai, b, bi)) => {
                stack.push(Summand { module: b, inclusion: s.inclusion.compose(&bi) });
                stack.push(Summand { module: a, inclusion: s.inclusion.compose(&ai) });
            }
        }
    }
    Ok(out)
}

pub fn decompose(m: &Module) -> Result<Vec<Module>> {
    Ok(decompose_with_inclusions(m)?.into_iter().map(|s| s.module).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presets::*;
    use crate::field::Field;

    #[test]
    fn iso_detection() {
        let a = build(cyclic_nakayama(Field::Rationals, 3, 3));
        let m = Module::radical_quotient_of_projective(&a, 0, 2);
        assert!(iso_q(&m, &m).unwrap());
        let n = Module::radical_quotient_of_projective(&a, 1, 2);
        assert!(!iso_q(&m, &n).unwrap());
        // same dimension vector, different structure
        let k = build(linear_a(Field::Rationals, 2));
        let p2 = Module::projective(&k, 1);
        let s = Module::direct_sum(&k, &[&Module::simple(&k, 0), &Module::simple(&k, 1)]);
        assert!(!iso_q(&p2, &s).unwrap());
    }

    #[test]
    fn iso_after_basis_change() {
        let a = build(cyclic_nakayama(Field::Rationals, 2, 3));
        let m = Module::direct_sum(&a, &[&Module::projective(&a, 0), &Module::radical_quotient_of_projective(&a, 1, 2)]);
        let f = Field::Rationals;
        let bases: Vec<Mat> = m
            .dims()
            .iter()
            .map(|&d| Mat::from_fn(f, d, d, |i, j| f.int(if i == j { 2 } else if i < j { 1 } else { 0 })))
            .collect();
        let (n, _) = m.transport(&bases).unwrap();
        let iso = find_iso(&n, &m, 3).unwrap().unwrap();
        assert!(iso.is_hom(&n, &m) && iso.is_iso());
    }

    #[test]
    fn decomposition_of_sums() {
        let k = build(linear_a(Field::Rationals, 2));
        let m = Module::direct_sum(&k, &[&Module::projective(&k, 0), &Module::simple(&k, 1)]);
        let parts = decompose(&m).unwrap();
        assert_eq!(parts.len(), 2);
        assert!(!indecomposable_q(&m).unwrap());
        let reg = Module::regular(&build(cyclic_nakayama(Field::Rationals, 3, 2)));
        let parts = decompose(&reg).unwrap();
        assert_eq!(parts.len(), 3);
        for p in &parts {
            assert!(indecomposable_q(p).unwrap());
        }
    }

    #[test]
    fn nakayama_intervals_are_indecomposable() {
        for f in [Field::Rationals, Field::Prime(2), Field::Prime(3)] {
            let a = build(cyclic_nakayama(f, 3, 3));
            for v in 0..3 {
                for l in 1..=3 {
                    let m = Module::radical_quotient_of_projective(&a, v, l);
                    assert!(indecomposable_q(&m).unwrap());
                }
            }
        }
    }

    #[test]
    fn repeated_summands_split() {
        let k = build(linear_a(Field::Rationals, 2));
        let s = Module::simple(&k, 1);
        let m = Module::direct_sum(&k, &[&s, &s, &s]);
        assert_eq!(decompose(&m).unwrap().len(), 3);
        let f2 = build(linear_a(Field::Prime(2), 2));
        let s = Module::simple(&f2, 1);
        let m = Module::direct_sum(&f2, &[&s, &s, &Module::projective(&f2, 1)]);
        assert_eq!(decompose(&m).unwrap().len(), 3);
    }

    #[test]
    fn symbolic_determinant_detects_singular_pencil() {
        let f = Field::Rationals;
        // [[t0, t1], [t0, t1]] is singular for every choice
        let e = vec![
            vec![vec![f.one(), f.zero()], vec![f.zero(), f.one()]],
            vec![vec![f.one(), f.zero()], vec![f.zero(), f.one()]],
        ];
        assert!(symbolic_det(f, &e, 2).is_empty());
        let e = vec![
            vec![vec![f.one(), f.zero()], vec![f.zero(), f.one()]],
            vec![vec![f.zero(), f.one()], vec![f.one(), f.zero()]],
        ];
        assert!(!symbolic_det(f, &e, 2).is_empty());
    }

    #[test]
    fn rational_roots_of_char_poly() {
        let f = Field::Rationals;
        let a = Mat::from_i64(f, 3, 3, &[2, 1, 0, 0, 2, 0, 0, 0, -3]);
        let mut r = rational_eigenvalues(&a);
        r.sort_by_key(|s| s.to_i64());
        assert_eq!(r, vec![f.int(-3), f.int(2)]);
    }
}
