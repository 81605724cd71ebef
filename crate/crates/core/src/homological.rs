//! Projective covers, injective envelopes, syzygies, minimal resolutions
//! and Ext dimensions.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::Result;
use crate::field::Scalar;
use crate::linalg::Mat;
use crate::module::{ModMap, Module};

/// A natural number computed up to a search bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Bounded {
    Exact(usize),
    AtLeast(usize),
}

impl Bounded {
    pub fn exact(&self) -> Option<usize> {
        match self {
            Bounded::Exact(n) => Some(*n),
            Bounded::AtLeast(_) => None,
        }
    }
}

impl fmt::Display for Bounded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bounded::Exact(n) => write!(f, "{n}"),
            Bounded::AtLeast(n) => write!(f, ">= {n}"),
        }
    }
}

/// `⊕_i P(tops[i])`, summands in the given order.
pub fn projective_sum(alg: &Arc<Algebra>, tops: &[usize]) -> Module {
    let ps: Vec<Module> = tops.iter().map(|&v| Module::projective(alg, v)).collect();
    Module::direct_sum(alg, &ps.iter().collect::<Vec<_>>())
}

/// Position of the generator of summand `i` inside `⊕ P(tops[j])`.
pub fn generator_position(alg: &Algebra, tops: &[usize], i: usize) -> (usize, usize) {
    let v = tops[i];
    let before: usize = tops[..i].iter().map(|&w| alg.basis_between(w, v).len()).sum();
    (v, before + Module::generator_index(alg, v))
}

/// The map `⊕ P(tops[i]) -> target` sending the `i`-th generator to
/// `elems[i]`, an element of the component of `target` at `tops[i]`.
pub fn map_from_generators(target: &Module, tops: &[usize], elems: &[Vec<Scalar>]) -> ModMap {
    let field = target.field();
    if tops.is_empty() {
        return ModMap::zero(field, &vec![0; target.dims().len()], target.dims());
    }
    let parts: Vec<ModMap> = tops.iter().zip(elems).map(|(&v, e)| target.map_from_projective(v, e)).collect();
    ModMap::hstack(&parts.iter().collect::<Vec<_>>())
}

/// Images of the generators of `⊕ P(tops[i])` under `f`.
pub fn generator_images(alg: &Algebra, tops: &[usize], f: &ModMap) -> Vec<Vec<Scalar>> {
    (0..tops.len())
        .map(|i| {
            let (v, pos) = generator_position(alg, tops, i);
            f.blocks[v].col(pos)
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct Cover {
    pub tops: Vec<usize>,
    pub module: Module,
    pub map: ModMap,
}

/// Minimal projective cover: one summand `P(v)` per basis vector of a
/// complement of `rad M` in `M e_v`.
pub fn projective_cover(m: &Module) -> Cover {
    let alg = m.algebra();
    let field = m.field();
    let rad = m.radical();
    let mut tops = Vec::new();
    let mut elems = Vec::new();
    for v in 0..alg.n_vertices() {
        let q = Mat::quotient(field, m.dims()[v], &rad.0[v]);
        for c in q.section.columns() {
            tops.push(v);
            elems.push(c);
        }
    }
    let module = projective_sum(alg, &tops);
    let map = map_from_generators(m, &tops, &elems);
    Cover { tops, module, map }
}

/// `Ω M` with its inclusion into the projective cover.
pub fn syzygy(m: &Module) -> (Module, ModMap, Cover) {
    let c = projective_cover(m);
    let (k, incl) = c.map.kernel(&c.module);
    (k, incl, c)
}

pub fn is_projective(m: &Module) -> bool {
    let c = projective_cover(m);
    c.module.dim() == m.dim()
}

#[derive(Clone, Debug)]
pub struct Envelope {
    pub socle_vertices: Vec<usize>,
    pub module: Module,
    pub map: ModMap,
}

/// Minimal injective envelope `M -> ⊕ I(v)^{dim soc_v}`.
pub fn injective_envelope(m: &Module) -> Envelope {
    let alg = m.algebra();
    let field = m.field();
    let soc = m.socle();
    let mut vertices = Vec::new();
    let mut parts: Vec<ModMap> = Vec::new();
    let mut injs = Vec::new();
    for v in 0..alg.n_vertices() {
        let s = &soc.0[v];
        if s.cols() == 0 {
            continue;
        }
        let l = s.left_inverse().expect("socle basis has full rank");
        for t in 0..s.cols() {
            let lambda = l.row(t);
            let inj = Module::injective(alg, v);
            // component y of I(v) is dual to {b : left(b) = y, right(b) = v}
            let blocks = (0..alg.n_vertices())
                .map(|y| {
                    let bs = alg.basis_between(y, v);
                    let rows: Vec<Vec<Scalar>> = bs
                        .iter()
                        .map(|&b| {
                            let act = m.act(b);
                            (0..m.dims()[y])
                                .map(|j| {
                                    let mut acc = field.zero();
                                    for (k, lk) in lambda.iter().enumerate() {
                                        acc = &acc + &(lk * act.get(k, j));
                                    }
                                    acc
                                })
                                .collect()
                        })
                        .collect();
                    Mat::from_rows(field, rows, m.dims()[y])
                })
                .collect();
            vertices.push(v);
            parts.push(ModMap { blocks });
            injs.push(inj);
        }
    }
    let module = Module::direct_sum(alg, &injs.iter().collect::<Vec<_>>());
    let map = if parts.is_empty() {
        ModMap::zero(field, m.dims(), module.dims())
    } else {
        ModMap::vstack(&parts.iter().collect::<Vec<_>>())
    };
    Envelope { socle_vertices: vertices, module, map }
}

/// `Ω⁻¹ M`, the cokernel of the injective envelope.
pub fn cosyzygy(m: &Module) -> (Module, ModMap, Envelope) {
    let e = injective_envelope(m);
    let (c, proj) = e.map.cokernel(&e.module);
    (c, proj, e)
}

pub fn is_injective(m: &Module) -> bool {
    injective_envelope(m).module.dim() == m.dim()
}

/// Minimal projective resolution `... -> P_1 -> P_0 -> M`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub tops: Vec<Vec<usize>>,
    pub terms: Vec<Module>,
    /// `diffs[j]` maps `terms[j + 1]` to `terms[j]`.
    pub diffs: Vec<ModMap>,
    pub augmentation: ModMap,
    /// `true` when the last computed syzygy vanished.
    pub complete: bool,
}

impl Resolution {
    pub fn length(&self) -> Bounded {
        if self.complete {
            Bounded::Exact(self.terms.len().saturating_sub(1))
        } else {
            Bounded::AtLeast(self.terms.len())
        }
    }
}

/// Resolves `m` by iterated minimal covers, computing at most `max_terms`
/// terms.
pub fn minimal_resolution(m: &Module, max_terms: usize) -> Resolution {
    if m.is_zero() {
        return Resolution { tops: vec![], terms: vec![], diffs: vec![], augmentation: ModMap::zero_between(m, m), complete: true };
    }
    let mut tops = Vec::new();
    let mut terms: Vec<Module> = Vec::new();
    let mut diffs = Vec::new();
    let c0 = projective_cover(m);
    let augmentation = c0.map.clone();
    let (mut k, mut incl) = c0.map.kernel(&c0.module);
    tops.push(c0.tops);
    terms.push(c0.module);
    let mut complete = k.is_zero();
    while !complete && terms.len() < max_terms {
        let c = projective_cover(&k);
        diffs.push(incl.compose(&c.map));
        let (k2, incl2) = c.map.kernel(&c.module);
        tops.push(c.tops);
        terms.push(c.module);
        k = k2;
        incl = incl2;
        complete = k.is_zero();
    }
    Resolution { tops, terms, diffs, augmentation, complete }
}

pub fn projective_dimension(m: &Module, bound: usize) -> Bounded {
    if m.is_zero() {
        return Bounded::Exact(0);
    }
    minimal_resolution(m, bound + 1).length()
}

/// Maximum projective dimension of the simples, searched up to `bound`.
pub fn global_dimension(alg: &Arc<Algebra>, bound: usize) -> Bounded {
    let mut best = 0;
    for v in 0..alg.n_vertices() {
        match projective_dimension(&Module::simple(alg, v), bound) {
            Bounded::Exact(d) => best = best.max(d),
            Bounded::AtLeast(_) => return Bounded::AtLeast(bound),
        }
    }
    if best > bound {
        Bounded::AtLeast(bound)
    } else {
        Bounded::Exact(best)
    }
}

/// Matrix of `Hom(P_j, N) -> Hom(P_{j+1}, N)`, `φ ↦ φ ∘ d`, in generator
/// coordinates (Yoneda: `Hom(⊕ P(v_i), N) = ⊕ N e_{v_i}`).
pub fn dual_differential(alg: &Arc<Algebra>, src_tops: &[usize], tgt_tops: &[usize], d: &ModMap, n: &Module) -> Mat {
    let field = n.field();
    let src_dim: usize = src_tops.iter().map(|&v| n.dims()[v]).sum();
    let tgt_dim: usize = tgt_tops.iter().map(|&v| n.dims()[v]).sum();
    let mut cols = Vec::with_capacity(src_dim);
    for (i, &v) in src_tops.iter().enumerate() {
        for k in 0..n.dims()[v] {
            let mut elems: Vec<Vec<Scalar>> = src_tops.iter().map(|&w| vec![field.zero(); n.dims()[w]]).collect();
            elems[i][k] = field.one();
            let phi = map_from_generators(n, src_tops, &elems);
            let comp = phi.compose(d);
            cols.push(generator_images(alg, tgt_tops, &comp).concat());
        }
    }
    Mat::from_cols(field, tgt_dim, &cols)
}

/// `dim Ext^j(M, N)` for `j = 0..=max_j` using a minimal resolution of `M`.
/// Degrees past an incomplete resolution are not returned.
pub fn ext_dims(m: &Module, n: &Module, max_j: usize) -> Result<Vec<usize>> {
    m.same_algebra(n)?;
    let alg = m.algebra();
    let res = minimal_resolution(m, max_j + 2);
    let hom_dim = |tops: &[usize]| -> usize { tops.iter().map(|&v| n.dims()[v]).sum() };
    let mut out = Vec::new();
    for j in 0..=max_j {
        if j >= res.terms.len() {
            if res.complete {
                out.push(0);
                continue;
            }
            break;
        }
        let dim_j = hom_dim(&res.tops[j]);
        // outgoing: Hom(P_j, N) -> Hom(P_{j+1}, N)
        let rank_out = if j < res.diffs.len() {
            dual_differential(alg, &res.tops[j], &res.tops[j + 1], &res.diffs[j], n).rank()
        } else if res.complete || j + 1 < res.terms.len() {
            0
        } else {
            break;
        };
        let rank_in = if j >= 1 { dual_differential(alg, &res.tops[j - 1], &res.tops[j], &res.diffs[j - 1], n).rank() } else { 0 };
        out.push(dim_j - rank_out - rank_in);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presets::*;
    use crate::field::Field;
    use crate::module::hom_dim;

    #[test]
    fn syzygies_over_a2() {
        let a = build(linear_a(Field::Rationals, 2));
        let s1 = Module::simple(&a, 0);
        let s2 = Module::simple(&a, 1);
        let (o, _, c) = syzygy(&s2);
        assert_eq!(c.tops, vec![1]);
        assert_eq!(o, s1);
        assert!(syzygy(&Module::projective(&a, 1)).0.is_zero());
        assert_eq!(global_dimension(&a, 5), Bounded::Exact(1));
        assert_eq!(ext_dims(&s2, &s1, 3).unwrap(), vec![0, 1, 0, 0]);
        assert_eq!(ext_dims(&s1, &s2, 3).unwrap(), vec![0, 0, 0, 0]);
    }

    #[test]
    fn dual_numbers_have_infinite_global_dimension() {
        let a = build(dual_numbers(Field::Rationals));
        assert_eq!(global_dimension(&a, 10), Bounded::AtLeast(10));
        let s = Module::simple(&a, 0);
        assert_eq!(ext_dims(&s, &s, 4).unwrap(), vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn semisimple_has_dimension_zero() {
        let a = build(semisimple(Field::Rationals, 2));
        assert_eq!(global_dimension(&a, 3), Bounded::Exact(0));
    }

    #[test]
    fn nakayama_syzygy_of_interval() {
        let n = 3;
        let a = build(cyclic_nakayama(Field::Rationals, n, n));
        for av in 0..n {
            for l in 1..n {
                let m = Module::radical_quotient_of_projective(&a, av, l);
                let (o, _, c) = syzygy(&m);
                let expect = Module::radical_quotient_of_projective(&a, (av + l) % n, n - l);
                assert_eq!(o.dims(), expect.dims());
                assert_eq!(c.module.dim(), m.dim() + o.dim());
            }
        }
    }

    #[test]
    fn envelope_is_injective_map() {
        let a = build(cyclic_nakayama(Field::Rationals, 3, 3));
        let m = Module::radical_quotient_of_projective(&a, 1, 2);
        let e = injective_envelope(&m);
        assert!(e.map.is_hom(&m, &e.module));
        assert_eq!(e.map.rank(), m.dim());
        assert_eq!(e.module.dim(), 3);
        let (c, _, _) = cosyzygy(&m);
        assert_eq!(c.dim(), 1);
        assert!(is_injective(&Module::projective(&a, 0)));
        let k = build(linear_a(Field::Rationals, 2));
        assert!(!is_injective(&Module::projective(&k, 0)));
        assert_eq!(hom_dim(&m, &e.module).unwrap(), 1);
    }
}
