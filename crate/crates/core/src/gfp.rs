//! Dense matrices over a prime field GF(p), with the handful of exact
//! kernels the oracle needs: products, row reduction, rank, kernel bases,
//! solving, and basis extension.  Entries are reduced representatives in
//! `[0, p)`; `p < 2^31` keeps products inside `u64`.

use crate::{Error, Result};

pub fn validate_prime(p: u64) -> Result<()> {
    if p >= 1 << 31 {
        return Err(Error::FieldTooLarge(p));
    }
    if p < 2 {
        return Err(Error::NotPrime(p));
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return Err(Error::NotPrime(p));
        }
        d += 1;
    }
    Ok(())
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>, // row-major
}

impl Mat {
    pub fn zero(p: u64, rows: usize, cols: usize) -> Mat {
        Mat {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u64, n: usize) -> Mat {
        let mut m = Mat::zero(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u64, rows: Vec<Vec<u64>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row.into_iter().map(|x| x % p));
        }
        Mat {
            p,
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.p, other.p);
        let mut out = Mat::zero(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = (out.get(i, j) + a * other.get(k, j)) % self.p;
                    out.data[i * other.cols + j] = v;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a = (*a + b) % self.p;
        }
        out
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a = (*a + self.p - b) % self.p;
        }
        out
    }

    pub fn scale(&self, c: u64) -> Mat {
        let c = c % self.p;
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = *a * c % self.p;
        }
        out
    }

    /// Stack side by side.
    pub fn hstack(p: u64, mats: &[&Mat]) -> Mat {
        let rows = mats.first().map_or(0, |m| m.rows);
        let cols = mats.iter().map(|m| m.cols).sum();
        let mut out = Mat::zero(p, rows, cols);
        let mut off = 0;
        for m in mats {
            assert_eq!(m.rows, rows);
            for i in 0..rows {
                for j in 0..m.cols {
                    out.set(i, off + j, m.get(i, j));
                }
            }
            off += m.cols;
        }
        out
    }

    fn inv_scalar(&self, a: u64) -> u64 {
        // Fermat: a^(p-2) mod p
        let mut base = a % self.p;
        let mut exp = self.p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(piv) = (row..m.rows).find(|&i| m.get(i, col) != 0) else {
                continue;
            };
            for j in 0..m.cols {
                let a = m.get(row, j);
                let b = m.get(piv, j);
                m.set(row, j, b);
                m.set(piv, j, a);
            }
            let inv = m.inv_scalar(m.get(row, col));
            for j in 0..m.cols {
                let v = m.get(row, j) * inv % m.p;
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i != row && m.get(i, col) != 0 {
                    let f = m.get(i, col);
                    for j in 0..m.cols {
                        let v = (m.get(i, j) + (m.p - f) * m.get(row, j)) % m.p;
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns spanning the kernel (right null space).
    pub fn kernel_basis(&self) -> Mat {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Mat::zero(self.p, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis.set(fc, k, 1);
            for (pi, &pc) in pivots.iter().enumerate() {
                let v = r.get(pi, fc);
                if v != 0 {
                    basis.set(pc, k, self.p - v);
                }
            }
        }
        basis
    }

    /// Any solution `X` of `self * X = rhs`, or None when inconsistent.
    pub fn solve(&self, rhs: &Mat) -> Option<Mat> {
        assert_eq!(self.rows, rhs.rows);
        let aug = Mat::hstack(self.p, &[self, rhs]);
        let (r, pivots) = aug.rref();
        // a pivot in the rhs block means inconsistency
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Mat::zero(self.p, self.cols, rhs.cols);
        for (pi, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, r.get(pi, self.cols + j));
            }
        }
        Some(x)
    }

    /// A maximal independent subset of the columns, as column indices.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().1
    }

    /// Columns of the identity extending `self`'s column space to a basis.
    pub fn extend_to_basis(&self) -> Mat {
        let mut chosen: Vec<Vec<u64>> = self
            .independent_columns()
            .iter()
            .map(|&j| self.column(j))
            .collect();
        let mut extra = Vec::new();
        for i in 0..self.rows {
            let mut e = vec![0u64; self.rows];
            e[i] = 1;
            let mut cand = chosen.clone();
            cand.push(e.clone());
            let m = Mat::from_rows(self.p, cand).transpose();
            if m.rank() == chosen.len() + 1 {
                chosen.push(e.clone());
                extra.push(e);
            }
        }
        if extra.is_empty() {
            return Mat::zero(self.p, self.rows, 0);
        }
        Mat::from_rows(self.p, extra).transpose()
    }
}

/// Rank of a list of flattened vectors (rows).
pub fn row_span_rank(p: u64, rows: &[Vec<u64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    Mat::from_rows(p, rows.to_vec()).rank()
}
