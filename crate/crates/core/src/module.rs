//! Right modules as quiver representations, module maps and Hom spaces.

use std::fmt;
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{precondition, Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::Mat;

/// A finite-dimensional right module. The matrix of generator `g` maps the
/// component at `g.left` to the component at `g.right`, acting on columns.
#[derive(Clone)]
pub struct Module {
    alg: Arc<Algebra>,
    dims: Vec<usize>,
    arrows: Vec<Mat>,
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        self.alg.id() == other.alg.id() && self.dims == other.dims && self.arrows == other.arrows
    }
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module{:?} over {}", self.dims, self.alg.name())
    }
}

impl Module {
    /// Validates shapes and that every relation of the algebra acts as zero.
    pub fn new(alg: Arc<Algebra>, dims: Vec<usize>, arrows: Vec<Mat>) -> Result<Self> {
        if dims.len() != alg.n_vertices() {
            return precondition(format!("dimension vector has {} entries, expected {}", dims.len(), alg.n_vertices()));
        }
        if arrows.len() != alg.generators().len() {
            return precondition(format!("{} arrow matrices given, expected {}", arrows.len(), alg.generators().len()));
        }
        for (g, a) in alg.generators().iter().zip(&arrows) {
            if a.shape() != (dims[g.right], dims[g.left]) {
                return precondition(format!(
                    "matrix of arrow {} has shape {:?}, expected {:?}",
                    g.name,
                    a.shape(),
                    (dims[g.right], dims[g.left])
                ));
            }
            if a.field() != alg.field() {
                return precondition("matrix entries live in the wrong field");
            }
        }
        let m = Module { alg, dims, arrows };
        if !m.satisfies_relations() {
            return precondition("arrow matrices do not satisfy the relations of the algebra");
        }
        Ok(m)
    }

    pub(crate) fn new_unchecked(alg: Arc<Algebra>, dims: Vec<usize>, arrows: Vec<Mat>) -> Self {
        debug_assert!({
            let m = Module { alg: alg.clone(), dims: dims.clone(), arrows: arrows.clone() };
            m.satisfies_relations()
        });
        Module { alg, dims, arrows }
    }

    pub fn zero(alg: &Arc<Algebra>) -> Self {
        let dims = vec![0; alg.n_vertices()];
        let arrows = alg.generators().iter().map(|_| Mat::zeros(alg.field(), 0, 0)).collect();
        Module { alg: alg.clone(), dims, arrows }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn field(&self) -> Field {
        self.alg.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn arrow(&self, g: usize) -> &Mat {
        &self.arrows[g]
    }

    pub fn arrows(&self) -> &[Mat] {
        &self.arrows
    }

    pub fn same_algebra(&self, other: &Module) -> Result<()> {
        if self.alg.id() != other.alg.id() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    /// Action of basis element `b`, a map from the component at `left(b)`
    /// to the component at `right(b)`.
    pub fn act(&self, b: usize) -> Mat {
        let be = &self.alg.basis()[b];
        let mut m = Mat::identity(self.field(), self.dims[be.left]);
        for &g in &be.word {
            m = self.arrows[g].mul(&m);
        }
        m
    }

    /// `rho(b * g) == A_g * rho(b)` for all basis `b` and generators `g`.
    pub fn satisfies_relations(&self) -> bool {
        let alg = &self.alg;
        let acts: Vec<Mat> = (0..alg.dim()).map(|b| self.act(b)).collect();
        for (b, be) in alg.basis().iter().enumerate() {
            for (gi, g) in alg.generators().iter().enumerate() {
                if be.right != g.left {
                    continue;
                }
                let lhs = self.arrows[gi].mul(&acts[b]);
                let mut rhs = Mat::zeros(self.field(), self.dims[g.right], self.dims[be.left]);
                for (k, c) in alg.mul_basis(b, g.basis) {
                    rhs = rhs.add(&acts[*k].scale(c));
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Basis indices of `e_v Λ`, grouped by right vertex.
    pub fn projective_basis(alg: &Algebra, v: usize) -> Vec<Vec<usize>> {
        (0..alg.n_vertices()).map(|y| alg.basis_between(v, y)).collect()
    }

    /// The indecomposable projective `P(v) = e_v Λ`.
    pub fn projective(alg: &Arc<Algebra>, v: usize) -> Self {
        let comps = Self::projective_basis(alg, v);
        let field = alg.field();
        let arrows = alg
            .generators()
            .iter()
            .map(|g| {
                let src = &comps[g.left];
                let tgt = &comps[g.right];
                let mut m = Mat::zeros(field, tgt.len(), src.len());
                for (j, &b) in src.iter().enumerate() {
                    for (k, c) in alg.mul_basis(b, g.basis) {
                        let i = tgt.iter().position(|t| t == k).expect("product stays in e_v Λ");
                        m.set(i, j, c.clone());
                    }
                }
                m
            })
            .collect();
        Module { alg: alg.clone(), dims: comps.iter().map(Vec::len).collect(), arrows }
    }

    /// The indecomposable injective `I(v) = D(Λ e_v)`.
    pub fn injective(alg: &Arc<Algebra>, v: usize) -> Self {
        let comps: Vec<Vec<usize>> = (0..alg.n_vertices()).map(|y| alg.basis_between(y, v)).collect();
        let field = alg.field();
        let arrows = alg
            .generators()
            .iter()
            .map(|g| {
                let src = &comps[g.left];
                let tgt = &comps[g.right];
                let mut m = Mat::zeros(field, tgt.len(), src.len());
                for (i, &x) in tgt.iter().enumerate() {
                    for (k, c) in alg.mul_basis(g.basis, x) {
                        let j = src.iter().position(|s| s == k).expect("product stays in Λ e_v");
                        m.set(i, j, c.clone());
                    }
                }
                m
            })
            .collect();
        Module { alg: alg.clone(), dims: comps.iter().map(Vec::len).collect(), arrows }
    }

    pub fn simple(alg: &Arc<Algebra>, v: usize) -> Self {
        let mut dims = vec![0; alg.n_vertices()];
        dims[v] = 1;
        let arrows = alg
            .generators()
            .iter()
            .map(|g| Mat::zeros(alg.field(), dims[g.right], dims[g.left]))
            .collect();
        Module { alg: alg.clone(), dims, arrows }
    }

    /// `Λ_Λ = ⊕_v P(v)`.
    pub fn regular(alg: &Arc<Algebra>) -> Self {
        let ps: Vec<Module> = (0..alg.n_vertices()).map(|v| Module::projective(alg, v)).collect();
        Module::direct_sum(alg, &ps.iter().collect::<Vec<_>>())
    }

    /// `P(v) / P(v) rad^l`: the uniserial quotient of length `l` for
    /// Nakayama algebras, the interval module for linear quivers.
    pub fn radical_quotient_of_projective(alg: &Arc<Algebra>, v: usize, l: usize) -> Self {
        let p = Module::projective(alg, v);
        let sub = p.radical_power_submodule(l);
        p.quotient(&sub).0
    }

    pub fn direct_sum(alg: &Arc<Algebra>, mods: &[&Module]) -> Self {
        let n = alg.n_vertices();
        let field = alg.field();
        let dims: Vec<usize> = (0..n).map(|v| mods.iter().map(|m| m.dims[v]).sum()).collect();
        let arrows = alg
            .generators()
            .iter()
            .enumerate()
            .map(|(gi, _)| Mat::block_diag(field, &mods.iter().map(|m| &m.arrows[gi]).collect::<Vec<_>>()))
            .collect();
        Module { alg: alg.clone(), dims, arrows }
    }

    /// Inclusions and projections of `⊕ mods`.
    pub fn sum_maps(mods: &[&Module]) -> (Vec<ModMap>, Vec<ModMap>) {
        let field = mods[0].field();
        let n = mods[0].dims.len();
        let total: Vec<usize> = (0..n).map(|v| mods.iter().map(|m| m.dims[v]).sum()).collect();
        let mut incl = Vec::new();
        let mut proj = Vec::new();
        let mut off = vec![0; n];
        for m in mods {
            let mut ib = Vec::new();
            let mut pb = Vec::new();
            for v in 0..n {
                let mut i = Mat::zeros(field, total[v], m.dims[v]);
                let mut p = Mat::zeros(field, m.dims[v], total[v]);
                for k in 0..m.dims[v] {
                    i.set(off[v] + k, k, field.one());
                    p.set(k, off[v] + k, field.one());
                }
                ib.push(i);
                pb.push(p);
                off[v] += m.dims[v];
            }
            incl.push(ModMap { blocks: ib });
            proj.push(ModMap { blocks: pb });
        }
        (incl, proj)
    }

    /// Submodule spanned by the given columns per vertex. The spans must be
    /// closed under the arrow action.
    pub fn submodule(&self, spans: &[Mat]) -> Result<(Module, ModMap)> {
        let bases: Vec<Mat> = spans.iter().map(|s| s.image()).collect();
        let mut arrows = Vec::new();
        for (gi, g) in self.alg.generators().iter().enumerate() {
            let img = self.arrows[gi].mul(&bases[g.left]);
            let Some(x) = bases[g.right].solve_mat(&img) else {
                return precondition("subspace is not closed under the arrow action");
            };
            arrows.push(x);
        }
        let dims = bases.iter().map(Mat::cols).collect();
        Ok((Module::new_unchecked(self.alg.clone(), dims, arrows), ModMap { blocks: bases }))
    }

    /// Smallest submodule containing the given columns per vertex.
    pub fn generated_submodule(&self, gens: &[Mat]) -> (Module, ModMap) {
        let mut spans: Vec<Mat> = gens.iter().map(|g| g.image()).collect();
        loop {
            let mut changed = false;
            for (gi, g) in self.alg.generators().iter().enumerate() {
                let img = self.arrows[gi].mul(&spans[g.left]);
                let joined = Mat::hstack(self.field(), self.dims[g.right], &[&spans[g.right], &img]);
                let r = joined.rank();
                if r > spans[g.right].cols() {
                    spans[g.right] = joined.image();
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        self.submodule(&spans).expect("generated span is closed")
    }

    /// `M rad^j`, spanned by images of all paths of length `j`.
    pub fn radical_power_submodule(&self, j: usize) -> Mat2 {
        let field = self.field();
        let mut spans: Vec<Mat> = self.dims.iter().map(|&d| Mat::identity(field, d)).collect();
        for _ in 0..j {
            let mut next: Vec<Vec<Mat>> = vec![Vec::new(); self.dims.len()];
            for (gi, g) in self.alg.generators().iter().enumerate() {
                next[g.right].push(self.arrows[gi].mul(&spans[g.left]));
            }
            spans = next
                .into_iter()
                .enumerate()
                .map(|(v, ms)| {
                    let refs: Vec<&Mat> = ms.iter().collect();
                    Mat::hstack(field, self.dims[v], &refs).image()
                })
                .collect();
        }
        Mat2(spans)
    }

    pub fn radical(&self) -> Mat2 {
        self.radical_power_submodule(1)
    }

    /// Socle: per vertex, the common kernel of all arrows leaving it.
    pub fn socle(&self) -> Mat2 {
        let field = self.field();
        Mat2(
            (0..self.dims.len())
                .map(|v| {
                    let outs: Vec<&Mat> = self
                        .alg
                        .generators()
                        .iter()
                        .enumerate()
                        .filter(|(_, g)| g.left == v)
                        .map(|(gi, _)| &self.arrows[gi])
                        .collect();
                    if outs.is_empty() {
                        return Mat::identity(field, self.dims[v]);
                    }
                    Mat::vstack(field, self.dims[v], &outs).kernel()
                })
                .collect(),
        )
    }

    /// Dimension vector of `M / M rad`.
    pub fn top_dims(&self) -> Vec<usize> {
        let rad = self.radical();
        self.dims.iter().zip(&rad.0).map(|(d, r)| d - r.cols()).collect()
    }

    pub fn socle_dims(&self) -> Vec<usize> {
        self.socle().0.iter().map(Mat::cols).collect()
    }

    /// Quotient by a submodule given by spanning columns per vertex.
    pub fn quotient(&self, sub: &Mat2) -> (Module, ModMap) {
        let field = self.field();
        let qs: Vec<_> = self.dims.iter().zip(&sub.0).map(|(&d, s)| Mat::quotient(field, d, s)).collect();
        let arrows = self
            .alg
            .generators()
            .iter()
            .enumerate()
            .map(|(gi, g)| qs[g.right].projection.mul(&self.arrows[gi]).mul(&qs[g.left].section))
            .collect();
        let dims = qs.iter().map(|q| q.dim).collect();
        let proj = ModMap { blocks: qs.into_iter().map(|q| q.projection).collect() };
        (Module::new_unchecked(self.alg.clone(), dims, arrows), proj)
    }

    /// Vertex-homogeneous element `m` in component `v` generates a map
    /// `P(v) -> self` sending `e_v` to `m`.
    pub fn map_from_projective(&self, v: usize, m: &[Scalar]) -> ModMap {
        let comps = Self::projective_basis(&self.alg, v);
        let field = self.field();
        let mv = Mat::column_vector(field, m);
        let blocks = comps
            .iter()
            .enumerate()
            .map(|(y, bs)| {
                let cols: Vec<Vec<Scalar>> = bs.iter().map(|&b| self.act(b).mul(&mv).col(0)).collect();
                Mat::from_cols(field, self.dims[y], &cols)
            })
            .collect();
        ModMap { blocks }
    }

    /// Position of the generator `e_v` inside the component `v` of `P(v)`.
    pub fn generator_index(alg: &Algebra, v: usize) -> usize {
        let e = alg.idempotent(v);
        alg.basis_between(v, v).iter().position(|&b| b == e).unwrap()
    }

    /// Changes basis componentwise: arrows become `B_y^{-1} A_g B_x`.
    pub fn transport(&self, bases: &[Mat]) -> Result<(Module, ModMap)> {
        let mut arrows = Vec::new();
        let invs: Vec<Mat> = bases
            .iter()
            .map(|b| b.inverse().ok_or_else(|| Error::Precondition("basis change is not invertible".into())))
            .collect::<Result<_>>()?;
        for (gi, g) in self.alg.generators().iter().enumerate() {
            arrows.push(invs[g.right].mul(&self.arrows[gi]).mul(&bases[g.left]));
        }
        // map from new module to self
        Ok((Module::new_unchecked(self.alg.clone(), self.dims.clone(), arrows), ModMap { blocks: bases.to_vec() }))
    }
}

/// One matrix per vertex: spanning columns of a subspace of each component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2(pub Vec<Mat>);

impl Mat2 {
    pub fn dims(&self) -> Vec<usize> {
        self.0.iter().map(Mat::cols).collect()
    }
}

/// A morphism of modules, one block per vertex (`tgt_dim x src_dim`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModMap {
    pub blocks: Vec<Mat>,
}

impl ModMap {
    pub fn zero(field: Field, src: &[usize], tgt: &[usize]) -> Self {
        ModMap { blocks: src.iter().zip(tgt).map(|(&s, &t)| Mat::zeros(field, t, s)).collect() }
    }

    pub fn zero_between(src: &Module, tgt: &Module) -> Self {
        Self::zero(src.field(), src.dims(), tgt.dims())
    }

    pub fn identity(m: &Module) -> Self {
        ModMap { blocks: m.dims().iter().map(|&d| Mat::identity(m.field(), d)).collect() }
    }

    pub fn field(&self) -> Field {
        self.blocks[0].field()
    }

    pub fn src_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(Mat::cols).collect()
    }

    pub fn tgt_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(Mat::rows).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModMap) -> ModMap {
        ModMap { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.mul(b)).collect() }
    }

    pub fn add(&self, other: &ModMap) -> ModMap {
        ModMap { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &ModMap) -> ModMap {
        ModMap { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> ModMap {
        ModMap { blocks: self.blocks.iter().map(|a| a.scale(s)).collect() }
    }

    pub fn neg(&self) -> ModMap {
        ModMap { blocks: self.blocks.iter().map(Mat::neg).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Mat::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Mat::rank).sum()
    }

    pub fn is_iso(&self) -> bool {
        self.blocks.iter().all(|b| b.is_square() && b.rank() == b.rows())
    }

    pub fn inverse(&self) -> Option<ModMap> {
        Some(ModMap { blocks: self.blocks.iter().map(Mat::inverse).collect::<Option<_>>()? })
    }

    pub fn is_hom(&self, src: &Module, tgt: &Module) -> bool {
        if self.src_dims() != src.dims() || self.tgt_dims() != tgt.dims() {
            return false;
        }
        src.algebra().generators().iter().enumerate().all(|(gi, g)| {
            self.blocks[g.right].mul(src.arrow(gi)) == tgt.arrow(gi).mul(&self.blocks[g.left])
        })
    }

    /// Coordinates in the order used by [`HomSpace`]: vertex by vertex,
    /// each block row-major.
    pub fn to_vec(&self) -> Vec<Scalar> {
        self.blocks.iter().flat_map(|b| b.flatten().iter().cloned()).collect()
    }

    pub fn from_vec(field: Field, src: &[usize], tgt: &[usize], v: &[Scalar]) -> ModMap {
        let mut off = 0;
        let blocks = src
            .iter()
            .zip(tgt)
            .map(|(&s, &t)| {
                let b = Mat::from_fn(field, t, s, |i, j| v[off + i * s + j].clone());
                off += s * t;
                b
            })
            .collect();
        ModMap { blocks }
    }

    /// Kernel as a submodule of `src`.
    pub fn kernel(&self, src: &Module) -> (Module, ModMap) {
        let spans: Vec<Mat> = self.blocks.iter().map(Mat::kernel).collect();
        src.submodule(&spans).expect("kernels are submodules")
    }

    pub fn image(&self, tgt: &Module) -> (Module, ModMap) {
        let spans: Vec<Mat> = self.blocks.iter().map(Mat::image).collect();
        tgt.submodule(&spans).expect("images are submodules")
    }

    pub fn cokernel(&self, tgt: &Module) -> (Module, ModMap) {
        let spans = Mat2(self.blocks.iter().map(Mat::image).collect());
        tgt.quotient(&spans)
    }

    /// Block matrix `[f_1 f_2 ...]` from `⊕ src_i` to a common target.
    pub fn hstack(maps: &[&ModMap]) -> ModMap {
        let n = maps[0].blocks.len();
        let field = maps[0].field();
        ModMap {
            blocks: (0..n)
                .map(|v| Mat::hstack(field, maps[0].blocks[v].rows(), &maps.iter().map(|m| &m.blocks[v]).collect::<Vec<_>>()))
                .collect(),
        }
    }

    pub fn vstack(maps: &[&ModMap]) -> ModMap {
        let n = maps[0].blocks.len();
        let field = maps[0].field();
        ModMap {
            blocks: (0..n)
                .map(|v| Mat::vstack(field, maps[0].blocks[v].cols(), &maps.iter().map(|m| &m.blocks[v]).collect::<Vec<_>>()))
                .collect(),
        }
    }

    pub fn block_diag(maps: &[&ModMap]) -> ModMap {
        let n = maps[0].blocks.len();
        let field = maps[0].field();
        ModMap {
            blocks: (0..n)
                .map(|v| Mat::block_diag(field, &maps.iter().map(|m| &m.blocks[v]).collect::<Vec<_>>()))
                .collect(),
        }
    }
}

/// A basis of `Hom_Λ(M, N)` with coordinate extraction.
#[derive(Clone, Debug)]
pub struct HomSpace {
    src_dims: Vec<usize>,
    tgt_dims: Vec<usize>,
    field: Field,
    basis: Vec<ModMap>,
    basis_mat: Mat,
    coord: Mat,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ModMap] {
        &self.basis
    }

    /// Flattened basis maps as columns.
    pub fn basis_matrix(&self) -> &Mat {
        &self.basis_mat
    }

    pub fn combine(&self, coeffs: &[Scalar]) -> ModMap {
        let v = self.basis_mat.mul_vec(coeffs);
        ModMap::from_vec(self.field, &self.src_dims, &self.tgt_dims, &v)
    }

    /// Coordinates of `f`, or `None` if `f` is not a module map.
    pub fn coords(&self, f: &ModMap) -> Option<Vec<Scalar>> {
        let v = f.to_vec();
        let x = self.coord.mul_vec(&v);
        if self.basis_mat.mul_vec(&x) == v {
            Some(x)
        } else {
            None
        }
    }
}

/// Linear constraints `F_y A^M_g - A^N_g F_x = 0` on the flattened blocks.
pub fn hom_constraints(m: &Module, n: &Module) -> Mat {
    let field = m.field();
    let nv = m.dims().len();
    let mut offs = vec![0; nv + 1];
    for v in 0..nv {
        offs[v + 1] = offs[v] + m.dims()[v] * n.dims()[v];
    }
    let unknowns = offs[nv];
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (gi, g) in m.algebra().generators().iter().enumerate() {
        let (x, y) = (g.left, g.right);
        let am = m.arrow(gi);
        let an = n.arrow(gi);
        let (mx, my, nx, ny) = (m.dims()[x], m.dims()[y], n.dims()[x], n.dims()[y]);
        // entry (i, j) of the ny x mx equation matrix
        for i in 0..ny {
            for j in 0..mx {
                let mut row = vec![field.zero(); unknowns];
                for k in 0..my {
                    let c = am.get(k, j);
                    if !c.is_zero() {
                        let idx = offs[y] + i * my + k;
                        row[idx] = &row[idx] + c;
                    }
                }
                for k in 0..nx {
                    let c = an.get(i, k);
                    if !c.is_zero() {
                        let idx = offs[x] + k * mx + j;
                        row[idx] = &row[idx] - c;
                    }
                }
                if row.iter().any(|s| !s.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    Mat::from_rows(field, rows, unknowns)
}

pub fn hom(m: &Module, n: &Module) -> Result<HomSpace> {
    m.same_algebra(n)?;
    let field = m.field();
    let sys = hom_constraints(m, n);
    let k = sys.kernel();
    let basis = k.columns().iter().map(|c| ModMap::from_vec(field, m.dims(), n.dims(), c)).collect();
    let coord = if k.cols() == 0 {
        Mat::zeros(field, 0, k.rows())
    } else {
        k.left_inverse().expect("kernel basis has full column rank")
    };
    Ok(HomSpace { src_dims: m.dims().to_vec(), tgt_dims: n.dims().to_vec(), field, basis, basis_mat: k, coord })
}

pub fn hom_dim(m: &Module, n: &Module) -> Result<usize> {
    m.same_algebra(n)?;
    let sys = hom_constraints(m, n);
    Ok(sys.cols() - sys.rank())
}
