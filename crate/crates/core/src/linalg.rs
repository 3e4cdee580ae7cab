//! Dense exact linear algebra over `F_p`.
//!
//! Everything here is fraction-free Gaussian elimination on small dense
//! matrices.  Pivoting always picks the leftmost usable column, so echelon
//! forms, kernels and spans are canonical for fixed input, which keeps all
//! downstream output deterministic.

use crate::fp::FieldSpec;
use crate::{Error, Result};

/// Dense row-major matrix over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub field: FieldSpec,
    pub rows: usize,
    pub cols: usize,
    data: Vec<u64>,
}

impl Mat {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Mat {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<u64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            for x in row {
                data.push(x % field.p);
            }
        }
        Ok(Mat {
            field,
            rows: r,
            cols: c,
            data,
        })
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.field.p;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(other.data.iter()) {
            *a = f.add(*a, b);
        }
        out
    }

    pub fn scale(&self, s: u64) -> Mat {
        let f = self.field;
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = f.mul(*a, s);
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len());
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for j in 0..self.cols {
                    acc = f.add(acc, f.mul(self.get(i, j), v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn vstack(field: FieldSpec, blocks: &[&Mat]) -> Mat {
        let cols = blocks.first().map_or(0, |m| m.cols);
        let rows = blocks.iter().map(|m| m.rows).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let mut off = 0;
        for m in blocks {
            assert_eq!(m.cols, cols);
            for i in 0..m.rows {
                for j in 0..cols {
                    out.set(off + i, j, m.get(i, j));
                }
            }
            off += m.rows;
        }
        out
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    let (a, b) = (self.get(r, j), self.get(pr, j));
                    self.set(r, j, b);
                    self.set(pr, j, a);
                }
            }
            let inv = f.inv(self.get(r, c));
            for j in 0..self.cols {
                let v = f.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in 0..self.cols {
                    let v = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Inverse of a square matrix, when it exists.
    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Mat::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(k, &c)| k != c) {
            return None;
        }
        let mut inv = Mat::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Some(inv)
    }

    /// Canonical basis of the right kernel: one vector per free column `j`,
    /// with entry 1 at `j`, back-substituted pivot entries, zeros elsewhere.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let f = self.field;
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_row: std::collections::BTreeMap<usize, usize> =
            pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();
        let mut basis = Vec::new();
        for j in 0..self.cols {
            if pivot_row.contains_key(&j) {
                continue;
            }
            let mut v = vec![0u64; self.cols];
            v[j] = 1;
            for (&pc, &pr) in pivot_row.iter() {
                v[pc] = f.neg(m.get(pr, j));
            }
            basis.push(v);
        }
        basis
    }
}

/// Solve `A x = y` where the columns of `A` are given as vectors.
/// Returns the canonical solution with zeros on free coordinates,
/// or `None` when `y` is outside the column span.
pub fn solve_columns(field: FieldSpec, cols: &[Vec<u64>], y: &[u64]) -> Option<Vec<u64>> {
    let n = y.len();
    debug_assert!(cols.iter().all(|c| c.len() == n));
    let mut aug = Mat::zeros(field, n, cols.len() + 1);
    for (j, c) in cols.iter().enumerate() {
        for i in 0..n {
            aug.set(i, j, c[i]);
        }
    }
    for i in 0..n {
        aug.set(i, cols.len(), y[i]);
    }
    let pivots = aug.rref();
    if pivots.contains(&cols.len()) {
        return None;
    }
    let mut x = vec![0u64; cols.len()];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug.get(r, cols.len());
    }
    Some(x)
}

/// A subspace of `F_p^n` kept as a reduced column-echelon basis: each basis
/// vector owns a pivot coordinate where it is 1 and all other basis vectors
/// are 0; pivots are strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    pub field: FieldSpec,
    pub ambient: usize,
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        let mut s = Subspace::zero(field, ambient);
        for i in 0..ambient {
            let mut v = vec![0; ambient];
            v[i] = 1;
            s.insert(v);
        }
        s
    }

    pub fn from_vectors(
        field: FieldSpec,
        ambient: usize,
        vecs: impl IntoIterator<Item = Vec<u64>>,
    ) -> Self {
        let mut s = Subspace::zero(field, ambient);
        for v in vecs {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    /// Residue of `v` modulo the subspace: pivot coordinates eliminated.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let f = self.field;
        let mut w = v.to_vec();
        for (b, &pv) in self.basis.iter().zip(self.pivots.iter()) {
            let coeff = w[pv];
            if coeff == 0 {
                continue;
            }
            for i in 0..self.ambient {
                w[i] = f.sub(w[i], f.mul(coeff, b[i]));
            }
        }
        w
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Insert a vector; returns true when the dimension grew.
    pub fn insert(&mut self, v: Vec<u64>) -> bool {
        assert_eq!(v.len(), self.ambient);
        let f = self.field;
        let mut w = self.reduce(&v);
        let Some(p) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(w[p]);
        for x in w.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for b in self.basis.iter_mut() {
            let coeff = b[p];
            if coeff == 0 {
                continue;
            }
            for i in 0..self.ambient {
                b[i] = f.sub(b[i], f.mul(coeff, w[i]));
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.basis.insert(at, w);
        true
    }

    pub fn is_contained_in(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    /// Basis vectors of `larger` that extend `self` to `self + larger`,
    /// i.e. a complement of `self` inside `self + larger`.
    pub fn complement_in(&self, larger: &Subspace) -> Vec<Vec<u64>> {
        let mut acc = self.clone();
        let mut out = Vec::new();
        for b in larger.basis.iter() {
            if acc.insert(b.clone()) {
                out.push(b.clone());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> FieldSpec {
        FieldSpec::new(10007).unwrap()
    }

    #[test]
    fn rref_and_rank() {
        let m = Mat::from_rows(f(), vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]).unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.nullity(), 1);
    }

    #[test]
    fn kernel_is_kernel() {
        let m = Mat::from_rows(f(), vec![vec![1, 2, 3], vec![0, 1, 1]]).unwrap();
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 1);
        for v in &ker {
            assert!(m.apply(v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn product_against_identity() {
        let m = Mat::from_rows(f(), vec![vec![3, 1], vec![4, 1], vec![5, 9]]).unwrap();
        let id = Mat::identity(f(), 2);
        assert_eq!(m.mul(&id), m);
    }

    #[test]
    fn solve_in_column_span() {
        let cols = vec![vec![1, 0, 2], vec![0, 1, 3]];
        let y = vec![2, 5, 19];
        let x = solve_columns(f(), &cols, &y).unwrap();
        assert_eq!(x, vec![2, 5]);
        assert!(solve_columns(f(), &cols, &[0, 0, 1]).is_none());
    }

    #[test]
    fn subspace_reduce_and_membership() {
        let mut s = Subspace::zero(f(), 3);
        assert!(s.insert(vec![1, 1, 0]));
        assert!(s.insert(vec![0, 1, 1]));
        assert!(!s.insert(vec![1, 2, 1]));
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[1, 0, 10006]));
        assert!(!s.contains(&[0, 0, 1]));
    }

    #[test]
    fn complement_extends_basis() {
        let small = Subspace::from_vectors(f(), 3, vec![vec![1, 0, 0]]);
        let big = Subspace::full(f(), 3);
        let comp = small.complement_in(&big);
        assert_eq!(comp.len(), 2);
        let mut s = small.clone();
        for v in comp {
            assert!(s.insert(v));
        }
        assert_eq!(s.dim(), 3);
    }

    #[test]
    fn inverse_round_trips() {
        let m = Mat::from_rows(f(), vec![vec![2, 1, 0], vec![1, 1, 1], vec![0, 3, 1]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(f(), 3));
        assert_eq!(inv.mul(&m), Mat::identity(f(), 3));
        let singular = Mat::from_rows(f(), vec![vec![1, 2], vec![2, 4]]).unwrap();
        assert!(singular.inverse().is_none());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn small_mat(rows: usize, cols: usize) -> impl Strategy<Value = Mat> {
            proptest::collection::vec(0u64..10007, rows * cols).prop_map(move |data| {
                let mut m = Mat::zeros(FieldSpec::new(10007).unwrap(), rows, cols);
                for i in 0..rows {
                    for j in 0..cols {
                        m.set(i, j, data[i * cols + j]);
                    }
                }
                m
            })
        }

        proptest! {
            #[test]
            fn product_is_associative(a in small_mat(3, 4), b in small_mat(4, 2), c in small_mat(2, 3)) {
                prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            }

            #[test]
            fn kernel_vectors_are_annihilated(m in small_mat(3, 5)) {
                let ker = m.kernel_basis();
                prop_assert_eq!(ker.len(), m.nullity());
                for v in ker {
                    prop_assert!(m.apply(&v).iter().all(|&x| x == 0));
                }
            }

            #[test]
            fn rank_bounded_and_transpose_invariant(m in small_mat(4, 3)) {
                let r = m.rank();
                prop_assert!(r <= 3);
                prop_assert_eq!(r, m.transpose().rank());
            }

            #[test]
            fn span_reduction_is_a_projection(m in small_mat(4, 4)) {
                let s = Subspace::from_vectors(m.field, 4, (0..4).map(|j| m.col(j)));
                for j in 0..4 {
                    prop_assert!(s.contains(&m.col(j)));
                }
                let v = vec![1, 2, 3, 4];
                let reduced = s.reduce(&v);
                prop_assert_eq!(s.reduce(&reduced), reduced.clone());
                // v and its residue differ by a span element.
                let mut diff = vec![0u64; 4];
                for i in 0..4 {
                    diff[i] = m.field.sub(v[i], reduced[i]);
                }
                prop_assert!(s.contains(&diff));
            }
        }
    }
}
