use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::{Elem, PrimeField};
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// A dense matrix over GF(p), stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mat {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// Reduced row-echelon form of a matrix together with its rank and pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Solution set of `A·X = B`: a particular solution plus the null space of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Mat,
    pub kernel: Subspace,
}

impl Mat {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from raw entries, reducing each one modulo p.
    pub fn from_vec(field: PrimeField, rows: usize, cols: usize, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                context: "matrix entries",
                expected: rows * cols,
                found: entries.len(),
            });
        }
        let data = entries.into_iter().map(|x| field.reduce(x)).collect();
        Ok(Self { field, rows, cols, data })
    }

    /// Builds a matrix from already-reduced entries.
    pub(crate) fn from_raw(field: PrimeField, rows: usize, cols: usize, data: Vec<Elem>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        debug_assert!(data.iter().all(|&x| (x as u32) < field.p()));
        Self { field, rows, cols, data }
    }

    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { context: "matrix row", expected: cols, found: r.len() });
            }
            data.extend(r.iter().map(|&x| field.reduce(x)));
        }
        Ok(Self { field, rows: rows.len(), cols, data })
    }

    /// Stacks reduced row vectors into a matrix with `cols` columns.
    pub fn from_row_vecs<'a>(field: PrimeField, cols: usize, rows: impl IntoIterator<Item = &'a [Elem]>) -> Self {
        let mut data = Vec::new();
        let mut n = 0;
        for r in rows {
            assert_eq!(r.len(), cols, "row length");
            data.extend_from_slice(r);
            n += 1;
        }
        Self { field, rows: n, cols, data }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        debug_assert!((v as u32) < self.field.p());
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [Elem] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Elem]> + '_ {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Mat) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let mut out = Self::zeros(self.field, self.rows, rhs.cols);
        for r in 0..self.rows {
            let dst = &mut out.data[r * rhs.cols..(r + 1) * rhs.cols];
            for k in 0..self.cols {
                let c = self.data[r * self.cols + k];
                if c != 0 {
                    self.field.axpy(dst, c, rhs.row(k));
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.rows, "vector length");
        let mut out = vec![0; self.cols];
        for (k, &c) in v.iter().enumerate() {
            if c != 0 {
                self.field.axpy(&mut out, c, self.row(k));
            }
        }
        out
    }

    pub fn add(&self, rhs: &Mat) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape");
        let mut out = self.clone();
        self.field.axpy(&mut out.data, 1, &rhs.data);
        out
    }

    pub fn sub(&self, rhs: &Mat) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference shape");
        let mut out = self.clone();
        self.field.axpy(&mut out.data, self.field.neg(1), &rhs.data);
        out
    }

    pub fn scale(&self, c: Elem) -> Self {
        let mut out = Self::zeros(self.field, self.rows, self.cols);
        self.field.axpy(&mut out.data, c, &self.data);
        out
    }

    /// `[self | rhs]`
    pub fn hstack(&self, rhs: &Mat) -> Self {
        assert_eq!(self.rows, rhs.rows, "hstack rows");
        let cols = self.cols + rhs.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(rhs.row(r));
        }
        Self { field: self.field, rows: self.rows, cols, data }
    }

    /// `[self ; rhs]`
    pub fn vstack(&self, rhs: &Mat) -> Self {
        assert_eq!(self.cols, rhs.cols, "vstack cols");
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Self { field: self.field, rows: self.rows + rhs.rows, cols: self.cols, data }
    }

    /// Block-diagonal matrix with the given blocks.
    pub fn block_diag(field: PrimeField, blocks: &[&Mat]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                out.row_mut(r0 + r)[c0..c0 + b.cols].copy_from_slice(b.row(r));
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn select_cols(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.data[r * cols.len() + j] = self.get(r, c);
            }
        }
        out
    }

    /// Reduced row-echelon form.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(pr) = (rank..m.rows).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            if pr != rank {
                for k in 0..m.cols {
                    m.data.swap(pr * m.cols + k, rank * m.cols + k);
                }
            }
            let inv = f.inv(m.get(rank, c));
            if inv != 1 {
                for x in m.row_mut(rank) {
                    *x = f.mul(*x, inv);
                }
            }
            let pivot_row = m.row(rank).to_vec();
            for r in 0..m.rows {
                if r != rank {
                    let factor = m.get(r, c);
                    if factor != 0 {
                        f.axpy(m.row_mut(r), f.neg(factor), &pivot_row);
                    }
                }
            }
            pivots.push(c);
            rank += 1;
        }
        Rref { matrix: m, rank, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Right null space `{v : self·v = 0}`.
    pub fn kernel(&self) -> Subspace {
        let Rref { matrix, pivots, .. } = self.rref();
        let f = self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Mat::zeros(f, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            basis.set(k, fc, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                basis.set(k, pc, f.neg(matrix.get(r, fc)));
            }
        }
        Subspace::from_mat(basis)
    }

    /// Left null space `{v : v·self = 0}`.
    pub fn left_kernel(&self) -> Subspace {
        self.transpose().kernel()
    }

    /// Solves `self·X = rhs`. Returns `None` when the system is inconsistent. The particular
    /// solution has zeros in every free coordinate.
    pub fn solve(&self, rhs: &Mat) -> Result<Option<Solution>> {
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch { context: "solve rows", expected: self.rows, found: rhs.rows });
        }
        let n = self.cols;
        let Rref { matrix, pivots, .. } = self.hstack(rhs).rref();
        if pivots.iter().any(|&c| c >= n) {
            return Ok(None);
        }
        let mut x = Mat::zeros(self.field, n, rhs.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            x.row_mut(pc).copy_from_slice(&matrix.row(r)[n..]);
        }
        Ok(Some(Solution { particular: x, kernel: self.kernel() }))
    }

    /// Exact inverse when the matrix is square and of full rank.
    pub fn inverse(&self) -> Result<Option<Mat>> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let Rref { matrix, rank, .. } = self.hstack(&Mat::identity(self.field, n)).rref();
        if rank < n || (0..n).any(|i| matrix.get(i, i) != 1) {
            return Ok(None);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Ok(Some(matrix.select_cols(&cols)))
    }

    pub fn is_invertible(&self) -> Result<bool> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(self.rank() == self.rows)
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        self.row_iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect()
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat[{}; {}x{}]", self.field, self.rows, self.cols)?;
        f.debug_list().entries(self.row_iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> PrimeField {
        PrimeField::gf2()
    }

    fn m(rows: &[Vec<i64>]) -> Mat {
        Mat::from_rows(gf2(), rows[0].len(), rows).unwrap()
    }

    #[test]
    fn rref_zero_matrix() {
        let z = Mat::zeros(gf2(), 2, 2);
        let r = z.rref();
        assert_eq!(r.matrix, z);
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn rref_identity() {
        let id = Mat::identity(gf2(), 3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rref_rank_one() {
        let r = m(&[vec![1, 1], vec![1, 1]]).rref();
        assert_eq!(r.matrix, m(&[vec![1, 1], vec![0, 0]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Mat::identity(gf2(), 2).kernel().dim(), 0);
        let full = Mat::zeros(gf2(), 2, 3).kernel();
        assert_eq!(full, Subspace::full(gf2(), 3));
        let k = m(&[vec![1, 1, 0]]).kernel();
        assert_eq!(k.dim(), 2);
        assert!(k.contains(&[1, 1, 0]));
        assert!(k.contains(&[0, 0, 1]));
        assert!(!k.contains(&[1, 0, 0]));
    }

    #[test]
    fn solve_examples() {
        let b = m(&[vec![1, 0], vec![1, 1]]);
        let s = Mat::identity(gf2(), 2).solve(&b).unwrap().unwrap();
        assert_eq!(s.particular, b);
        assert_eq!(s.kernel.dim(), 0);

        assert!(Mat::zeros(gf2(), 1, 2).solve(&m(&[vec![1]])).unwrap().is_none());

        let s = m(&[vec![1, 1]]).solve(&m(&[vec![1]])).unwrap().unwrap();
        assert_eq!(s.particular, m(&[vec![1], vec![0]]));
        assert_eq!(s.kernel, Subspace::span(gf2(), 2, [&[1u8, 1][..]]));

        assert!(matches!(
            Mat::identity(gf2(), 2).solve(&Mat::zeros(gf2(), 3, 1)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn inverse_examples() {
        let id = Mat::identity(gf2(), 3);
        assert_eq!(id.inverse().unwrap(), Some(id.clone()));
        assert!(!Mat::zeros(gf2(), 2, 2).is_invertible().unwrap());
        let u = m(&[vec![1, 1], vec![0, 1]]);
        let inv = u.inverse().unwrap().unwrap();
        assert_eq!(inv, u);
        assert_eq!(u.mul(&inv), Mat::identity(gf2(), 2));
        assert!(matches!(Mat::zeros(gf2(), 2, 3).inverse(), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn inverse_over_gf5() {
        let f = PrimeField::new(5).unwrap();
        let a = Mat::from_rows(f, 2, &[vec![2, 3], vec![1, 1]]).unwrap();
        let inv = a.inverse().unwrap().unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(f, 2));
        assert_eq!(inv.mul(&a), Mat::identity(f, 2));
    }
}
