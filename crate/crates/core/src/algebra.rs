//! Finite-dimensional algebras presented by quivers with relations.
//!
//! Conventions used throughout the crate:
//!
//! * Modules are right modules. A basis element `b` satisfies
//!   `b = e_{left(b)} * b * e_{right(b)}`, and acts on a module as a map
//!   from the component at `left(b)` to the component at `right(b)`.
//! * An arrow `a: u -> v` is the element `e_v * a * e_u`, so it acts as a
//!   map from the component at `v` to the component at `u`.
//! * Products compose like functions: `a * b` is nonzero only when
//!   `source(a) == target(b)`, and means "first `b`, then `a`" as a path.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{precondition, Result};
use crate::field::{Field, Scalar};
use crate::linalg::Mat;

/// Hard cap on the number of enumerated paths when building an algebra.
pub const MAX_PATHS: usize = 20_000;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quiver {
    pub vertex_names: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(n: usize) -> Self {
        Quiver { vertex_names: (1..=n).map(|v| v.to_string()).collect(), arrows: Vec::new() }
    }

    pub fn n_vertices(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn add_arrow(&mut self, name: impl Into<String>, source: usize, target: usize) -> Result<usize> {
        let n = self.n_vertices();
        if source >= n || target >= n {
            return precondition(format!("arrow endpoints {source}->{target} out of range"));
        }
        self.arrows.push(Arrow { name: name.into(), source, target });
        Ok(self.arrows.len() - 1)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Left idempotent of the product word (first letter's target).
    fn word_left(&self, w: &[usize]) -> usize {
        self.arrows[w[0]].target
    }

    fn word_right(&self, w: &[usize]) -> usize {
        self.arrows[*w.last().unwrap()].source
    }

    fn word_composable(&self, w: &[usize]) -> bool {
        w.windows(2).all(|p| self.arrows[p[0]].source == self.arrows[p[1]].target)
    }
}

/// A linear combination of parallel paths, each of length at least two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Scalar, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    pub field: Field,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    /// All paths of length `>= nilpotency` are zero.
    pub nilpotency: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisElem {
    pub left: usize,
    pub right: usize,
    /// Product of arrow generators; empty for the idempotent at `left`.
    pub word: Vec<usize>,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub name: String,
    pub basis: usize,
    pub left: usize,
    pub right: usize,
}

/// Basis, structure constants and vertex idempotents of a basic algebra.
#[derive(Debug)]
pub struct Algebra {
    id: u64,
    name: String,
    field: Field,
    vertex_names: Vec<String>,
    basis: Vec<BasisElem>,
    generators: Vec<Generator>,
    idempotents: Vec<usize>,
    mult: Vec<Vec<Vec<(usize, Scalar)>>>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl Algebra {
    pub(crate) fn from_parts(
        name: String,
        field: Field,
        vertex_names: Vec<String>,
        basis: Vec<BasisElem>,
        generators: Vec<Generator>,
        idempotents: Vec<usize>,
        mult: Vec<Vec<Vec<(usize, Scalar)>>>,
    ) -> Self {
        Algebra { id: NEXT_ID.fetch_add(1, Ordering::Relaxed), name, field, vertex_names, basis, generators, idempotents, mult }
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn n_vertices(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn basis(&self) -> &[BasisElem] {
        &self.basis
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn idempotent(&self, v: usize) -> usize {
        self.idempotents[v]
    }

    /// Structure constants of `b_i * b_j`.
    pub fn mul_basis(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.mult[i][j]
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in &self.mult[i][j] {
                    out[*k] = &out[*k] + &(&ab * c);
                }
            }
        }
        out
    }

    pub fn unit(&self) -> Vec<Scalar> {
        let mut u = vec![self.field.zero(); self.dim()];
        for &e in &self.idempotents {
            u[e] = self.field.one();
        }
        u
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    /// Basis indices with the given idempotent pair.
    pub fn basis_between(&self, left: usize, right: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].left == left && self.basis[i].right == right).collect()
    }

    /// Matrix of left multiplication by `x` in the basis.
    pub fn left_mult_matrix(&self, x: &[Scalar]) -> Mat {
        let n = self.dim();
        let cols: Vec<Vec<Scalar>> = (0..n).map(|j| self.mul(x, &self.basis_vector(j))).collect();
        Mat::from_cols(self.field, n, &cols)
    }

    pub fn right_mult_matrix(&self, x: &[Scalar]) -> Mat {
        let n = self.dim();
        let cols: Vec<Vec<Scalar>> = (0..n).map(|j| self.mul(&self.basis_vector(j), x)).collect();
        Mat::from_cols(self.field, n, &cols)
    }

    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul(&self.basis_vector(i), &self.basis_vector(j));
                for k in 0..n {
                    let l = self.mul(&ij, &self.basis_vector(k));
                    let jk = self.mul(&self.basis_vector(j), &self.basis_vector(k));
                    let r = self.mul(&self.basis_vector(i), &jk);
                    if l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Columns span `rad^j` (the ideal generated by all products of `j` arrows).
    pub fn radical_power(&self, j: usize) -> Mat {
        let n = self.dim();
        let field = self.field;
        if j == 0 {
            return Mat::identity(field, n);
        }
        let rad: Vec<usize> = (0..n).filter(|&i| !self.idempotents.contains(&i)).collect();
        let mut span = Mat::identity(field, n).select_cols(&rad);
        for _ in 1..j {
            let mut cols = Vec::new();
            for c in span.columns() {
                for g in &self.generators {
                    cols.push(self.mul(&c, &self.basis_vector(g.basis)));
                }
            }
            if cols.is_empty() {
                return Mat::zeros(field, n, 0);
            }
            span = Mat::from_cols(field, n, &cols).image();
        }
        span
    }

    /// Loewy length: smallest `j` with `rad^j = 0`.
    pub fn loewy_length(&self) -> usize {
        let mut j = 0;
        while self.radical_power(j).rank() > 0 {
            j += 1;
        }
        j
    }

    /// `Λ^op ⊗ Λ`, whose right modules are `Λ`-bimodules.
    /// Vertex `(x, y)` has index `x * n + y`.
    pub fn enveloping(&self) -> Algebra {
        let n = self.n_vertices();
        let d = self.dim();
        let field = self.field;
        let idx = |a: usize, b: usize| a * d + b;
        let mut basis = Vec::with_capacity(d * d);
        let mut vertex_names = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                vertex_names.push(format!("({},{})", self.vertex_names[x], self.vertex_names[y]));
            }
        }
        let mut generators = Vec::new();
        let mut gen_index: HashMap<(usize, usize), usize> = HashMap::new();
        for (gi, g) in self.generators.iter().enumerate() {
            for y in 0..n {
                let b = idx(g.basis, self.idempotents[y]);
                gen_index.insert((0, gi * n + y), generators.len());
                generators.push(Generator {
                    name: format!("{}⊗e{}", g.name, self.vertex_names[y]),
                    basis: b,
                    left: g.right * n + y,
                    right: g.left * n + y,
                });
            }
        }
        for x in 0..n {
            for (gi, g) in self.generators.iter().enumerate() {
                let b = idx(self.idempotents[x], g.basis);
                gen_index.insert((1, x * self.generators.len() + gi), generators.len());
                generators.push(Generator {
                    name: format!("e{}⊗{}", self.vertex_names[x], g.name),
                    basis: b,
                    left: x * n + g.left,
                    right: x * n + g.right,
                });
            }
        }
        for a in 0..d {
            for b in 0..d {
                let (ba, bb) = (&self.basis[a], &self.basis[b]);
                let mut word = Vec::new();
                for &g in ba.word.iter().rev() {
                    word.push(gen_index[&(0, g * n + bb.left)]);
                }
                for &g in &bb.word {
                    word.push(gen_index[&(1, ba.left * self.generators.len() + g)]);
                }
                basis.push(BasisElem {
                    left: ba.right * n + bb.left,
                    right: ba.left * n + bb.right,
                    word,
                    label: format!("{}⊗{}", ba.label, bb.label),
                });
            }
        }
        let mut mult = vec![vec![Vec::new(); d * d]; d * d];
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    for e in 0..d {
                        // (a⊗b)(c⊗e) = (c·a) ⊗ (b·e)
                        let left = &self.mult[c][a];
                        let right = &self.mult[b][e];
                        if left.is_empty() || right.is_empty() {
                            continue;
                        }
                        let mut terms = Vec::new();
                        for (k1, s1) in left {
                            for (k2, s2) in right {
                                terms.push((idx(*k1, *k2), s1 * s2));
                            }
                        }
                        mult[idx(a, b)][idx(c, e)] = terms;
                    }
                }
            }
        }
        let idempotents = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .map(|(x, y)| idx(self.idempotents[x], self.idempotents[y]))
            .collect();
        Algebra::from_parts(format!("({})^e", self.name), field, vertex_names, basis, generators, idempotents, mult)
    }
}

/// Builds the algebra `kQ / (I + paths of length >= N)`.
pub fn build_algebra(pres: &Presentation) -> Result<Arc<Algebra>> {
    let q = &pres.quiver;
    let field = pres.field;
    let n = q.n_vertices();
    if n == 0 {
        return precondition("quiver has no vertices");
    }
    if pres.nilpotency < 2 {
        return precondition("nilpotency bound must be at least 2");
    }
    for (ri, r) in pres.relations.iter().enumerate() {
        if r.terms.is_empty() {
            return precondition(format!("relation {} is empty", ri + 1));
        }
        let mut ends = None;
        for (_, w) in &r.terms {
            if w.len() < 2 {
                return precondition(format!("relation {} contains a path of length < 2", ri + 1));
            }
            if !q.word_composable(w) {
                return precondition(format!("relation {} contains a non-composable word", ri + 1));
            }
            let e = (q.word_left(w), q.word_right(w));
            if *ends.get_or_insert(e) != e {
                return precondition(format!("relation {} mixes non-parallel paths", ri + 1));
            }
        }
    }

    // enumerate paths of length < N; a path is (left vertex, word)
    let mut paths: Vec<(usize, usize, Vec<usize>)> = (0..n).map(|v| (v, v, Vec::new())).collect();
    let mut frontier: Vec<usize> = (0..n).collect();
    for _len in 1..pres.nilpotency {
        let mut next = Vec::new();
        for &pi in &frontier {
            let (l, r, w) = paths[pi].clone();
            for (ai, a) in q.arrows.iter().enumerate() {
                // extend on the right: w * a needs right(w) == left(a) = target(a)
                if a.target != r {
                    continue;
                }
                let mut w2 = w.clone();
                w2.push(ai);
                paths.push((if w.is_empty() { a.target } else { l }, a.source, w2));
                next.push(paths.len() - 1);
                if paths.len() > MAX_PATHS {
                    return precondition(format!(
                        "more than {MAX_PATHS} paths below the nilpotency bound; the quotient is too large"
                    ));
                }
            }
        }
        frontier = next;
    }
    // column order: longest paths first so leading monomials are longest
    let mut order: Vec<usize> = (0..paths.len()).collect();
    order.sort_by(|&a, &b| paths[b].2.len().cmp(&paths[a].2.len()).then(paths[a].2.cmp(&paths[b].2)).then(paths[a].0.cmp(&paths[b].0)));
    let mut col_of: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
    for (c, &pi) in order.iter().enumerate() {
        col_of.insert((paths[pi].0, paths[pi].2.clone()), c);
    }
    let n_paths = paths.len();
    let concat = |a: &(usize, usize, Vec<usize>), b: &(usize, usize, Vec<usize>)| -> Option<(usize, Vec<usize>)> {
        if a.1 != b.0 {
            return None;
        }
        let mut w = a.2.clone();
        w.extend_from_slice(&b.2);
        if w.len() >= pres.nilpotency {
            return None;
        }
        Some((a.0, w))
    };

    // ideal generated by relations, truncated
    let mut gens: Vec<Vec<Scalar>> = Vec::new();
    for r in &pres.relations {
        let rl = q.word_left(&r.terms[0].1);
        let rr = q.word_right(&r.terms[0].1);
        for p in paths.iter().filter(|p| p.1 == rl) {
            for s in paths.iter().filter(|s| s.0 == rr) {
                let mut v = vec![field.zero(); n_paths];
                let mut any = false;
                for (c, w) in &r.terms {
                    let mid = (rl, rr, w.clone());
                    let Some((l1, w1)) = concat(p, &mid) else { continue };
                    let Some(full) = concat(&(l1, rr, w1), s) else { continue };
                    let col = col_of[&full];
                    v[col] = &v[col] + c;
                    any = true;
                }
                if any && v.iter().any(|x| !x.is_zero()) {
                    gens.push(v);
                }
            }
        }
    }
    let (pivots, rref) = if gens.is_empty() {
        (Vec::new(), Mat::zeros(field, 0, n_paths))
    } else {
        let m = Mat::from_rows(field, gens, n_paths);
        let e = m.rref();
        (e.pivots, e.rref)
    };
    // normal monomials are the non-pivot columns
    let normal_cols: Vec<usize> = (0..n_paths).filter(|c| !pivots.contains(c)).collect();
    // basis order: by length, then left vertex, then word
    let mut normal: Vec<usize> = normal_cols.iter().map(|&c| order[c]).collect();
    normal.sort_by(|&a, &b| paths[a].2.len().cmp(&paths[b].2.len()).then(paths[a].0.cmp(&paths[b].0)).then(paths[a].2.cmp(&paths[b].2)));
    let mut basis_of_col: HashMap<usize, usize> = HashMap::new();
    for (bi, &pi) in normal.iter().enumerate() {
        basis_of_col.insert(col_of[&(paths[pi].0, paths[pi].2.clone())], bi);
    }
    let pivot_row: HashMap<usize, usize> = pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();
    let normal_form = |col: usize| -> Vec<(usize, Scalar)> {
        if let Some(&b) = basis_of_col.get(&col) {
            return vec![(b, field.one())];
        }
        let r = pivot_row[&col];
        let mut out = Vec::new();
        for c in 0..n_paths {
            if c == col {
                continue;
            }
            let v = rref.get(r, c);
            if !v.is_zero() {
                out.push((basis_of_col[&c], -v));
            }
        }
        out
    };

    // generators: arrows that survive as basis elements
    let mut generators = Vec::new();
    for (ai, a) in q.arrows.iter().enumerate() {
        let col = col_of[&(a.target, vec![ai])];
        let Some(&b) = basis_of_col.get(&col) else {
            return precondition(format!("arrow {} lies in the ideal; relations are not admissible", a.name));
        };
        generators.push(Generator { name: a.name.clone(), basis: b, left: a.target, right: a.source });
    }
    let gen_of_arrow: Vec<usize> = (0..q.arrows.len()).collect();
    let basis: Vec<BasisElem> = normal
        .iter()
        .map(|&pi| {
            let (l, r, w) = &paths[pi];
            let label = if w.is_empty() {
                format!("e{}", q.vertex_names[*l])
            } else {
                w.iter().map(|&a| q.arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
            };
            BasisElem { left: *l, right: *r, word: w.iter().map(|&a| gen_of_arrow[a]).collect(), label }
        })
        .collect();
    let d = basis.len();
    let mut mult = vec![vec![Vec::new(); d]; d];
    for i in 0..d {
        for j in 0..d {
            let Some(full) = concat(&paths[normal[i]], &paths[normal[j]]) else { continue };
            mult[i][j] = normal_form(col_of[&full]);
        }
    }
    let idempotents = (0..n).map(|v| basis_of_col[&col_of[&(v, Vec::new())]]).collect();
    Ok(Arc::new(Algebra::from_parts(
        pres.name.clone(),
        field,
        q.vertex_names.clone(),
        basis,
        generators,
        idempotents,
        mult,
    )))
}

/// Infinite families of small algebras used across the crate.
pub mod presets {
    use super::*;

    /// Linear `A_n`: arrows `i -> i+1`. The vertex `1` is a source, so the
    /// projective at `1` is simple.
    pub fn linear_a(field: Field, n: usize) -> Presentation {
        let mut q = Quiver::new(n);
        for i in 0..n.saturating_sub(1) {
            q.add_arrow(format!("a{}", i + 1), i, i + 1).unwrap();
        }
        Presentation { name: format!("kA{n}"), field, quiver: q, relations: Vec::new(), nilpotency: n.max(2) }
    }

    /// `kQ_n / rad^m` for the cyclic quiver with arrows `i -> i-1`.
    pub fn cyclic_nakayama(field: Field, n: usize, m: usize) -> Presentation {
        let mut q = Quiver::new(n);
        for i in 0..n {
            let t = (i + n - 1) % n;
            q.add_arrow(format!("a{}", i + 1), i, t).unwrap();
        }
        Presentation { name: format!("Λ({n},{m})"), field, quiver: q, relations: Vec::new(), nilpotency: m }
    }

    /// `k^n`, no arrows.
    pub fn semisimple(field: Field, n: usize) -> Presentation {
        Presentation { name: format!("k^{n}"), field, quiver: Quiver::new(n), relations: Vec::new(), nilpotency: 2 }
    }

    pub fn dual_numbers(field: Field) -> Presentation {
        let mut p = cyclic_nakayama(field, 1, 2);
        p.name = "k[x]/(x^2)".to_string();
        p.quiver.arrows[0].name = "x".to_string();
        p
    }

    pub fn build(p: Presentation) -> Arc<Algebra> {
        build_algebra(&p).expect("preset presentations are admissible")
    }
}

impl Presentation {
    pub fn build(&self) -> Result<Arc<Algebra>> {
        build_algebra(self)
    }
}

#[cfg(test)]
mod tests {
    use super::presets::*;
    use super::*;

    #[test]
    fn dimensions_of_presets() {
        let q = Field::Rationals;
        assert_eq!(build(linear_a(q, 2)).dim(), 3);
        assert_eq!(build(linear_a(q, 3)).dim(), 6);
        assert_eq!(build(cyclic_nakayama(q, 3, 3)).dim(), 9);
        assert_eq!(build(dual_numbers(q)).dim(), 2);
        assert_eq!(build(semisimple(q, 2)).dim(), 2);
        assert_eq!(build(cyclic_nakayama(q, 2, 4)).dim(), 8);
    }

    #[test]
    fn associativity_and_unit() {
        let a = build(cyclic_nakayama(Field::Rationals, 2, 3));
        assert!(a.is_associative());
        let u = a.unit();
        for i in 0..a.dim() {
            let b = a.basis_vector(i);
            assert_eq!(a.mul(&u, &b), b);
            assert_eq!(a.mul(&b, &u), b);
        }
    }

    #[test]
    fn relations_cut_down_dimension() {
        // commutative square 1->2->4, 1->3->4 with ab = cd
        let f = Field::Rationals;
        let mut q = Quiver::new(4);
        let a = q.add_arrow("a", 0, 1).unwrap();
        let b = q.add_arrow("b", 1, 3).unwrap();
        let c = q.add_arrow("c", 0, 2).unwrap();
        let d = q.add_arrow("d", 2, 3).unwrap();
        let rel = Relation { terms: vec![(f.one(), vec![b, a]), (f.int(-1), vec![d, c])] };
        let pres = Presentation { name: "square".into(), field: f, quiver: q, relations: vec![rel], nilpotency: 4 };
        let alg = pres.build().unwrap();
        assert_eq!(alg.dim(), 4 + 4 + 1);
        assert!(alg.is_associative());
    }

    #[test]
    fn non_admissible_relations_rejected() {
        let f = Field::Rationals;
        let mut q = Quiver::new(2);
        let a = q.add_arrow("a", 0, 1).unwrap();
        let short = Relation { terms: vec![(f.one(), vec![a])] };
        let pres = Presentation { name: "bad".into(), field: f, quiver: q.clone(), relations: vec![short], nilpotency: 3 };
        assert!(pres.build().is_err());
        let mut q2 = Quiver::new(3);
        let a = q2.add_arrow("a", 0, 1).unwrap();
        let b = q2.add_arrow("b", 1, 2).unwrap();
        let c = q2.add_arrow("c", 0, 1).unwrap();
        let mixed = Relation { terms: vec![(f.one(), vec![b, a]), (f.one(), vec![c, a])] };
        let pres = Presentation { name: "bad".into(), field: f, quiver: q2, relations: vec![mixed], nilpotency: 3 };
        assert!(pres.build().is_err());
        let pres = Presentation { name: "bad".into(), field: f, quiver: q, relations: vec![], nilpotency: 1 };
        assert!(pres.build().is_err());
    }

    #[test]
    fn enveloping_dimension_and_associativity() {
        let a = build(linear_a(Field::Rationals, 2));
        let e = a.enveloping();
        assert_eq!(e.dim(), 9);
        assert_eq!(e.n_vertices(), 4);
        let d = build(cyclic_nakayama(Field::Rationals, 2, 2)).enveloping();
        assert_eq!(d.dim(), 16);
        assert!(d.is_associative());
        // every basis element equals the product of its word
        for (i, b) in d.basis().iter().enumerate() {
            if b.word.is_empty() {
                continue;
            }
            let mut acc = d.basis_vector(d.generators()[b.word[0]].basis);
            for &g in &b.word[1..] {
                acc = d.mul(&acc, &d.basis_vector(d.generators()[g].basis));
            }
            assert_eq!(acc, d.basis_vector(i));
        }
    }

    #[test]
    fn radical_filtration() {
        let a = build(cyclic_nakayama(Field::Rationals, 3, 3));
        assert_eq!(a.radical_power(1).cols(), 6);
        assert_eq!(a.radical_power(2).cols(), 3);
        assert_eq!(a.radical_power(3).cols(), 0);
        assert_eq!(a.loewy_length(), 3);
    }
}
