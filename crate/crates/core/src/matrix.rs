//! Dense exact linear algebra over F_{p^e}: rank, kernel, solve, echelon forms.
//!
//! Matrices act on column vectors, so composition is matrix product. All
//! eliminations are exact Gaussian elimination; there is no pivoting subtlety
//! over a finite field beyond finding any nonzero entry.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{FiniteField, Scalar};

/// A rows x cols matrix over a finite field, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Scalar::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::ONE;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut m = Mat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| s.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_col(&mut self, j: usize, v: &[Scalar]) {
        assert_eq!(v.len(), self.rows);
        for (i, &x) in v.iter().enumerate() {
            self[(i, j)] = x;
        }
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn add(&self, other: &Mat, f: &FiniteField) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Mat, f: &FiniteField) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self, f: &FiniteField) -> Mat {
        let data = self.data.iter().map(|&a| f.neg(a)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: Scalar, f: &FiniteField) -> Mat {
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Mat, f: &FiniteField) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let dest = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dest.iter_mut().zip(orow) {
                    *d = f.add(*d, f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar], f: &FiniteField) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![Scalar::ZERO; self.rows];
        for i in 0..self.rows {
            let mut acc = Scalar::ZERO;
            for (k, &x) in v.iter().enumerate() {
                acc = f.add(acc, f.mul(self[(i, k)], x));
            }
            out[i] = acc;
        }
        out
    }

    pub fn pow(&self, mut n: u64, f: &FiniteField) -> Mat {
        assert!(self.is_square());
        let mut acc = Mat::identity(self.rows);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            base = base.mul(&base, f);
            n >>= 1;
        }
        acc
    }

    /// Stack horizontally: [self | other].
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        Mat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)]
            } else {
                other[(i, j - self.cols)]
            }
        })
    }

    /// The 2x2 block matrix [[a, b], [c, d]]; all blocks square of equal size.
    pub fn block2(a: &Mat, b: &Mat, c: &Mat, d: &Mat) -> Mat {
        let n = a.rows;
        assert!([a, b, c, d].iter().all(|m| m.rows == n && m.cols == n));
        Mat::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
            (true, true) => a[(i, j)],
            (true, false) => b[(i, j - n)],
            (false, true) => c[(i - n, j)],
            (false, false) => d[(i - n, j - n)],
        })
    }

    /// Kronecker product: entry `((i1*r2+i2), (j1*c2+j2))` is
    /// `self[(i1,j1)] * other[(i2,j2)]`.
    pub fn kronecker(&self, other: &Mat, f: &FiniteField) -> Mat {
        let mut out = Mat::zeros(self.rows * other.rows, self.cols * other.cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self[(i1, j1)];
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        out[(i1 * other.rows + i2, j1 * other.cols + j2)] =
                            f.mul(a, other[(i2, j2)]);
                    }
                }
            }
        }
        out
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self, f: &FiniteField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            // find pivot
            let mut piv = None;
            for i in r..self.rows {
                if !self[(i, c)].is_zero() {
                    piv = Some(i);
                    break;
                }
            }
            let Some(piv) = piv else { continue };
            self.swap_rows(r, piv);
            let inv = f.inv(self[(r, c)]).unwrap();
            for j in c..self.cols {
                self[(r, j)] = f.mul(self[(r, j)], inv);
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let factor = self[(i, c)];
                    for j in c..self.cols {
                        let sub = f.mul(factor, self[(r, j)]);
                        self[(i, j)] = f.sub(self[(i, j)], sub);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self, f: &FiniteField) -> usize {
        let mut m = self.clone();
        m.rref(f).len()
    }

    /// Columns spanning the kernel of self, each normalized so its first
    /// nonzero entry is one.
    pub fn kernel_basis(&self, f: &FiniteField) -> Mat {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Mat::zeros(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out[(fc, k)] = Scalar::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                // row r of the rref reads x_pc + sum m[r][free] x_free = 0
                out[(pc, k)] = f.neg(m[(r, fc)]);
            }
            let lead = (0..self.cols).find(|&i| !out[(i, k)].is_zero()).unwrap();
            let inv = f.inv(out[(lead, k)]).unwrap();
            for i in 0..self.cols {
                out[(i, k)] = f.mul(out[(i, k)], inv);
            }
        }
        out
    }

    /// Any solution of self * x = b, or None.
    pub fn solve(&self, b: &[Scalar], f: &FiniteField) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch);
        }
        let rhs = Mat { rows: b.len(), cols: 1, data: b.to_vec() };
        Ok(self.solve_mat(&rhs, f)?.map(|m| m.data))
    }

    /// Any solution X of self * X = B (column-wise), or None when some column
    /// is not in the column span.
    pub fn solve_mat(&self, b: &Mat, f: &FiniteField) -> Result<Option<Mat>> {
        if b.rows != self.rows {
            return Err(Error::DimensionMismatch);
        }
        let mut aug = self.hstack(b);
        let pivots = aug.rref(f);
        // any pivot in the B-part means that column is inconsistent
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Mat::zeros(self.cols, b.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(pc, j)] = aug[(r, self.cols + j)];
            }
        }
        Ok(Some(x))
    }

    /// Indices of columns forming a basis of the column space.
    pub fn pivot_columns(&self, f: &FiniteField) -> Vec<usize> {
        let mut m = self.clone();
        m.rref(f)
    }

    /// A matrix whose columns are a basis of the column space.
    pub fn image_basis(&self, f: &FiniteField) -> Mat {
        let pivots = self.pivot_columns(f);
        let mut out = Mat::zeros(self.rows, pivots.len());
        for (k, &c) in pivots.iter().enumerate() {
            for i in 0..self.rows {
                out[(i, k)] = self[(i, c)];
            }
        }
        out
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }
}

impl core::ops::Index<(usize, usize)> for Mat {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Incremental Gaussian eliminator over row vectors; keeps reduced rows with
/// normalized pivots so that membership tests and rank growth are one
/// reduction each.
pub struct Eliminator {
    field: FiniteField,
    width: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Eliminator {
    pub fn new(field: &FiniteField, width: usize) -> Self {
        Eliminator { field: field.clone(), width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce v against the accumulated rows in place.
    pub fn reduce(&self, v: &mut [Scalar]) {
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c.is_zero() {
                continue;
            }
            for j in p..self.width {
                v[j] = f.sub(v[j], f.mul(c, row[j]));
            }
        }
    }

    /// Insert a vector; returns true when it enlarged the span.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.width);
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|s| !s.is_zero()) else {
            return false;
        };
        let f = self.field.clone();
        let inv = f.inv(v[p]).unwrap();
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }
}

/// Greedily extends the column span of `base` by columns of `cands` that
/// increase the rank; returns the indices of the chosen candidate columns.
pub fn rank_extension(base: &Mat, cands: &Mat, f: &FiniteField) -> Vec<usize> {
    assert_eq!(base.rows, cands.rows);
    let mut elim = Eliminator::new(f, base.rows);
    for j in 0..base.cols {
        elim.insert(base.col(j));
    }
    let mut chosen = Vec::new();
    for j in 0..cands.cols {
        if elim.insert(cands.col(j)) {
            chosen.push(j);
        }
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FiniteField {
        FiniteField::new(3, 1, None).unwrap()
    }

    fn m(f: &FiniteField, rows: &[&[i64]]) -> Mat {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| f.from_int(x)).collect()).collect())
    }

    #[test]
    fn rank_examples() {
        let f = f3();
        assert_eq!(m(&f, &[&[0, 1], &[0, 0]]).rank(&f), 1);
        assert_eq!(Mat::identity(4).rank(&f), 4);
        assert_eq!(Mat::zeros(3, 3).rank(&f), 0);
    }

    #[test]
    fn kernel_of_sum_functional() {
        let f = f3();
        // x + y = 0 over F_3: kernel spanned by (1, 2)
        let k = m(&f, &[&[1, 1]]).kernel_basis(&f);
        assert_eq!((k.rows, k.cols), (2, 1));
        assert_eq!(k.col(0), vec![f.scalar(1), f.scalar(2)]);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let f = f3();
        let a = m(&f, &[&[1, 2], &[0, 0]]);
        let x = a.solve(&[f.scalar(2), f.scalar(0)], &f).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x, &f), vec![f.scalar(2), f.scalar(0)]);
        assert!(a.solve(&[f.scalar(0), f.scalar(1)], &f).unwrap().is_none());
        assert!(a.solve(&[f.scalar(0)], &f).is_err());
    }

    #[test]
    fn rank_nullity() {
        let f = FiniteField::new(3, 2, None).unwrap();
        // pseudo-random fixed matrix
        let a = Mat::from_fn(5, 7, |i, j| f.scalar(((i * 31 + j * 17 + 3) % 9) as u32));
        let k = a.kernel_basis(&f);
        assert_eq!(a.rank(&f) + k.cols, a.cols);
        assert!(a.mul(&k, &f).is_zero());
    }

    #[test]
    fn product_rank_bound() {
        let f = f3();
        let a = m(&f, &[&[1, 0, 2], &[0, 1, 1]]);
        let b = m(&f, &[&[1, 1], &[2, 0], &[0, 1]]);
        let ab = a.mul(&b, &f);
        assert!(ab.rank(&f) <= a.rank(&f).min(b.rank(&f)));
    }
}
