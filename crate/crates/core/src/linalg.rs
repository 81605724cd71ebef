//! Dense exact matrices.
//!
//! Elimination over the rationals is fraction-free (Bareiss) on integer rows;
//! prime fields use plain Gauss-Jordan on residues.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::{Field, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rref: Mat,
    pub pivots: Vec<usize>,
}

/// A quotient `ambient / span(sub)`: `projection * sub == 0`,
/// `projection * section == I`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub dim: usize,
    pub projection: Mat,
    pub section: Mat,
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Mat { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { field, rows, cols, data }
    }

    pub fn from_i64(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count");
        Mat::from_fn(field, rows, cols, |i, j| field.int(entries[i * cols + j]))
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Mat { field, rows: r, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(field: Field, rows: usize, cols: &[Vec<Scalar>]) -> Self {
        Mat::from_fn(field, rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn column_vector(field: Field, v: &[Scalar]) -> Self {
        Mat::from_cols(field, v.len(), &[v.to_vec()])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    /// Row-major flattening.
    pub fn flatten(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product {:?} * {:?}", self.shape(), rhs.shape());
        let mut out = Mat::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (k, x) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in sum");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Mat { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in difference");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Mat { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        let data = self.data.iter().map(|a| a * s).collect();
        Mat { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Mat {
        let data = self.data.iter().map(|a| -a).collect();
        Mat { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn pow(&self, e: usize) -> Mat {
        assert!(self.is_square());
        let mut out = Mat::identity(self.field, self.rows);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn hstack(field: Field, rows: usize, blocks: &[&Mat]) -> Mat {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let mut c0 = 0;
        for b in blocks {
            assert_eq!(b.rows, rows);
            out.set_block(0, c0, b);
            c0 += b.cols;
        }
        out
    }

    pub fn vstack(field: Field, cols: usize, blocks: &[&Mat]) -> Mat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let mut r0 = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            out.set_block(r0, 0, b);
            r0 += b.rows;
        }
        out
    }

    pub fn block_diag(field: Field, blocks: &[&Mat]) -> Mat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> Mat {
        Mat::from_fn(self.field, rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.field, idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    pub fn trace(&self) -> Scalar {
        let mut t = self.field.zero();
        for i in 0..self.rows.min(self.cols) {
            t = &t + self.get(i, i);
        }
        t
    }

    // ---- elimination -------------------------------------------------

    pub fn rref(&self) -> Echelon {
        match self.field {
            Field::Rationals => rref_rational(self),
            Field::Prime(p) => rref_prime(self, p),
        }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        match self.field {
            Field::Rationals => bareiss_forward(&integer_rows(self), self.cols).1.len(),
            Field::Prime(p) => rref_prime(self, p).pivots.len(),
        }
    }

    /// Columns form a basis of the null space.
    pub fn kernel(&self) -> Mat {
        let e = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        let mut k = Mat::zeros(self.field, self.cols, free.len());
        for (t, &fc) in free.iter().enumerate() {
            k.set(fc, t, self.field.one());
            for (r, &pc) in e.pivots.iter().enumerate() {
                let v = e.rref.get(r, fc);
                if !v.is_zero() {
                    k.set(pc, t, -v);
                }
            }
        }
        k
    }

    /// Columns form a basis of the column space (taken from the pivot columns).
    pub fn image(&self) -> Mat {
        let e = self.rref();
        self.select_cols(&e.pivots)
    }

    /// Some `x` with `self * x == b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let aug = Mat::hstack(self.field, self.rows, &[self, &Mat::column_vector(self.field, b)]);
        let e = aug.rref();
        if e.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &pc) in e.pivots.iter().enumerate() {
            x[pc] = e.rref.get(r, self.cols).clone();
        }
        Some(x)
    }

    /// Some `X` with `self * X == b`.
    pub fn solve_mat(&self, b: &Mat) -> Option<Mat> {
        assert_eq!(b.rows, self.rows);
        let aug = Mat::hstack(self.field, self.rows, &[self, b]);
        let e = aug.rref();
        if e.pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Mat::zeros(self.field, self.cols, b.cols);
        for (r, &pc) in e.pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, e.rref.get(r, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let x = self.solve_mat(&Mat::identity(self.field, n))?;
        if self.rank() < n {
            return None;
        }
        Some(x)
    }

    pub fn det(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return self.field.one();
        }
        match self.field {
            Field::Rationals => {
                // scale rows to integers, Bareiss gives det of the scaled matrix
                let mut scale = BigRational::one();
                let rows: Vec<Vec<BigInt>> = (0..n)
                    .map(|i| {
                        let row: Vec<BigRational> =
                            (0..n).map(|j| self.get(i, j).as_rational().unwrap().clone()).collect();
                        let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                        scale = &scale * BigRational::from_integer(l.clone());
                        row.iter().map(|q| (q * BigRational::from_integer(l.clone())).to_integer()).collect()
                    })
                    .collect();
                let (m, pivots, sign) = bareiss_forward_signed(&rows, n);
                if pivots.len() < n {
                    return self.field.zero();
                }
                let d = BigRational::from_integer(m[n - 1][n - 1].clone() * BigInt::from(sign));
                Scalar::Q(d / scale)
            }
            Field::Prime(p) => {
                let mut a: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| residue(self.get(i, j))).collect()).collect();
                let mut det = 1u64;
                for c in 0..n {
                    let Some(pr) = (c..n).find(|&r| a[r][c] != 0) else { return self.field.zero() };
                    if pr != c {
                        a.swap(pr, c);
                        det = (p - det) % p;
                    }
                    det = det * a[c][c] % p;
                    let inv = inv_mod(a[c][c], p);
                    for r in c + 1..n {
                        if a[r][c] == 0 {
                            continue;
                        }
                        let f = a[r][c] * inv % p;
                        for j in c..n {
                            a[r][j] = (a[r][j] + p - f * a[c][j] % p) % p;
                        }
                    }
                }
                Scalar::F { v: det, p }
            }
        }
    }

    /// Indices of a maximal set of linearly independent rows.
    pub fn independent_rows(&self) -> Vec<usize> {
        self.transpose().rref().pivots
    }

    /// `L` with `L * self == I` for a matrix of full column rank.
    pub fn left_inverse(&self) -> Option<Mat> {
        let rows = self.independent_rows();
        if rows.len() < self.cols {
            return None;
        }
        let inv = self.select_rows(&rows).inverse()?;
        let mut l = Mat::zeros(self.field, self.cols, self.rows);
        for (t, &r) in rows.iter().enumerate() {
            for i in 0..self.cols {
                l.set(i, r, inv.get(i, t).clone());
            }
        }
        Some(l)
    }

    /// Quotient of `k^ambient` by the column span of `sub`.
    pub fn quotient(field: Field, ambient: usize, sub: &Mat) -> Quotient {
        assert_eq!(sub.rows, ambient);
        let aug = Mat::hstack(field, ambient, &[sub, &Mat::identity(field, ambient)]);
        let e = aug.rref();
        let sub_piv: Vec<usize> = e.pivots.iter().copied().filter(|&p| p < sub.cols).collect();
        let comp: Vec<usize> = e.pivots.iter().copied().filter(|&p| p >= sub.cols).map(|p| p - sub.cols).collect();
        let img = sub.select_cols(&sub_piv);
        let section = Mat::identity(field, ambient).select_cols(&comp);
        let full = Mat::hstack(field, ambient, &[&img, &section]);
        let inv = full.inverse().expect("complemented basis is invertible");
        let r = img.cols;
        let projection = inv.block(r, ambient - r, 0, ambient);
        Quotient { dim: ambient - r, projection, section }
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

fn residue(s: &Scalar) -> u64 {
    match s {
        Scalar::F { v, .. } => *v,
        Scalar::Q(_) => panic!("expected a prime-field element"),
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn rref_prime(m: &Mat, p: u64) -> Echelon {
    let (rows, cols) = m.shape();
    let mut a: Vec<Vec<u64>> = (0..rows).map(|i| (0..cols).map(|j| residue(m.get(i, j))).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(pr, r);
        let inv = inv_mod(a[r][c], p);
        for j in c..cols {
            a[r][j] = a[r][j] * inv % p;
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in c..cols {
                    a[i][j] = (a[i][j] + p - f * a[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let rref = Mat::from_fn(m.field, pivots.len(), cols, |i, j| Scalar::F { v: a[i][j], p });
    Echelon { rref, pivots }
}

/// Rows scaled by the lcm of their denominators.
fn integer_rows(m: &Mat) -> Vec<Vec<BigInt>> {
    (0..m.rows)
        .map(|i| {
            let row: Vec<&BigRational> = (0..m.cols).map(|j| m.get(i, j).as_rational().unwrap()).collect();
            let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter().map(|q| (*q * BigRational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect()
}

fn bareiss_forward(rows: &[Vec<BigInt>], cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let (m, p, _) = bareiss_forward_signed(rows, cols);
    (m, p)
}

/// Fraction-free forward elimination. Returns the echelon rows, pivot
/// columns and the sign of the row permutation applied.
fn bareiss_forward_signed(rows: &[Vec<BigInt>], cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>, i64) {
    let mut a = rows.to_vec();
    let n = a.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut sign = 1i64;
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        let Some(pr) = (r..n).find(|&i| !a[i][c].is_zero()) else { continue };
        if pr != r {
            a.swap(pr, r);
            sign = -sign;
        }
        let (top, rest) = a.split_at_mut(r + 1);
        let piv_row = &top[r];
        let piv = piv_row[c].clone();
        for row in rest.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..cols {
                let v = &piv * &row[j] - &f * &piv_row[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
            // columns left of c in rows below r are already zero
        }
        // entries of the pivot row left untouched; remaining rows in `rest`
        // for columns skipped earlier were zero, keep the division exact
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    (a, pivots, sign)
}

fn rref_rational(m: &Mat) -> Echelon {
    let cols = m.cols;
    let (ech, pivots) = bareiss_forward(&integer_rows(m), cols);
    let rank = pivots.len();
    let mut q: Vec<Vec<BigRational>> = ech
        .into_iter()
        .take(rank)
        .map(|row| row.into_iter().map(BigRational::from_integer).collect())
        .collect();
    for r in (0..rank).rev() {
        let pc = pivots[r];
        let inv = q[r][pc].recip();
        for j in pc..cols {
            if !q[r][j].is_zero() {
                q[r][j] = &q[r][j] * &inv;
            }
        }
        for i in 0..r {
            if q[i][pc].is_zero() {
                continue;
            }
            let f = q[i][pc].clone();
            for j in pc..cols {
                if !q[r][j].is_zero() {
                    let v = &q[i][j] - &f * &q[r][j];
                    q[i][j] = v;
                }
            }
        }
    }
    let rref = Mat::from_fn(Field::Rationals, rank, cols, |i, j| Scalar::Q(q[i][j].clone()));
    Echelon { rref, pivots }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: usize, cols: usize, e: &[i64]) -> Mat {
        Mat::from_i64(Field::Rationals, rows, cols, e)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Mat::identity(Field::Rationals, 3).rank(), 3);
        assert_eq!(Mat::zeros(Field::Rationals, 2, 5).rank(), 0);
        assert_eq!(q(2, 2, &[1, 2, 2, 4]).rank(), 1);
        let f2 = Field::prime(2).unwrap();
        assert_eq!(Mat::from_i64(f2, 2, 2, &[1, 1, 1, 1]).rank(), 1);
        assert_eq!(Mat::from_i64(f2, 2, 2, &[1, 1, 1, 3]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Mat::identity(Field::Rationals, 3).kernel().cols(), 0);
        assert_eq!(Mat::zeros(Field::Rationals, 2, 3).kernel().cols(), 3);
        let k = q(1, 2, &[1, 1]).kernel();
        assert_eq!(k.cols(), 1);
        assert_eq!(k, q(2, 1, &[-1, 1]));
    }

    #[test]
    fn quotient_and_solve_examples() {
        let f = Field::Rationals;
        assert_eq!(Mat::quotient(f, 3, &Mat::identity(f, 3)).dim, 0);
        let z = Mat::quotient(f, 2, &Mat::zeros(f, 2, 1));
        assert_eq!(z.dim, 2);
        let x = q(1, 1, &[2]).solve(&[f.one()]).unwrap();
        assert_eq!(x, vec![f.ratio(1, 2).unwrap()]);
        assert!(q(2, 1, &[1, 1]).solve(&[f.one(), f.zero()]).is_none());
    }

    #[test]
    fn quotient_projection_kills_sub() {
        let f = Field::Rationals;
        let sub = q(3, 2, &[1, 2, 1, 2, 0, 0]);
        let qt = Mat::quotient(f, 3, &sub);
        assert_eq!(qt.dim, 2);
        assert!(qt.projection.mul(&sub).is_zero());
        assert_eq!(qt.projection.mul(&qt.section), Mat::identity(f, 2));
    }

    #[test]
    fn determinants() {
        assert_eq!(q(2, 2, &[1, 2, 3, 4]).det(), Field::Rationals.int(-2));
        assert_eq!(q(3, 3, &[0, 1, 0, 1, 0, 0, 0, 0, 1]).det(), Field::Rationals.int(-1));
        let f5 = Field::prime(5).unwrap();
        assert_eq!(Mat::from_i64(f5, 2, 2, &[1, 2, 3, 4]).det(), f5.int(3));
        let half = Mat::from_fn(Field::Rationals, 2, 2, |i, j| {
            if i == j { Field::Rationals.ratio(1, 2).unwrap() } else { Field::Rationals.zero() }
        });
        assert_eq!(half.det(), Field::Rationals.ratio(1, 4).unwrap());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = q(3, 3, &[2, 1, 0, 1, 3, 1, 0, 1, 4]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(Field::Rationals, 3));
        assert!(q(2, 2, &[1, 2, 2, 4]).inverse().is_none());
    }

    #[test]
    fn left_inverse_of_tall_matrix() {
        let a = q(3, 2, &[1, 0, 2, 1, 0, 3]);
        let l = a.left_inverse().unwrap();
        assert_eq!(l.mul(&a), Mat::identity(Field::Rationals, 2));
    }
}
