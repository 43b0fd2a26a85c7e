use std::fmt;
use std::sync::Arc;

use crate::dring::{RingElem, RingSpec};
use crate::error::{Error, Result};

/// Square matrix over `O/p^m`, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    ring: Arc<RingSpec>,
    n: usize,
    e: Vec<RingElem>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.n, self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| {
                    let c = self.get(i, j).coeffs();
                    let used = self.ring.degree();
                    if used == 1 {
                        c[0].to_string()
                    } else {
                        format!("{:?}", &c[..used])
                    }
                })
                .collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zero(ring: &Arc<RingSpec>, n: usize) -> Mat {
        Mat {
            ring: ring.clone(),
            n,
            e: vec![ring.zero(); n * n],
        }
    }

    pub fn identity(ring: &Arc<RingSpec>, n: usize) -> Mat {
        let mut m = Mat::zero(ring, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_fn(ring: &Arc<RingSpec>, n: usize, mut f: impl FnMut(usize, usize) -> RingElem) -> Mat {
        let mut e = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                e.push(f(i, j));
            }
        }
        Mat { ring: ring.clone(), n, e }
    }

    /// Builds a matrix from integer entries, reduced into the ring.
    pub fn from_ints(ring: &Arc<RingSpec>, rows: &[&[i64]]) -> Mat {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Mat::from_fn(ring, n, |i, j| ring.from_int(rows[i][j]))
    }

    pub fn diag(ring: &Arc<RingSpec>, d: &[RingElem]) -> Mat {
        let mut m = Mat::zero(ring, d.len());
        for (i, v) in d.iter().enumerate() {
            m.set(i, i, *v);
        }
        m
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Zero-based access.
    pub fn get(&self, i: usize, j: usize) -> &RingElem {
        &self.e[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RingElem) {
        self.e[i * self.n + j] = v;
    }

    /// One-based access, matching the usual `x_{ij}` indexing.
    pub fn entry(&self, i: usize, j: usize) -> &RingElem {
        self.get(i - 1, j - 1)
    }

    pub fn set_entry(&mut self, i: usize, j: usize, v: RingElem) {
        self.set(i - 1, j - 1, v);
    }

    fn check_compatible(&self, other: &Mat) {
        assert_eq!(self.n, other.n, "dimension mismatch");
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring,
            "matrices over different rings"
        );
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        self.check_compatible(other);
        let r = &self.ring;
        let n = self.n;
        let mut out = Mat::zero(r, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if r.is_zero(a) {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    out.e[idx] = r.add(&out.e[idx], &r.mul(a, other.get(k, j)));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        self.check_compatible(other);
        let e = self.e.iter().zip(&other.e).map(|(a, b)| self.ring.add(a, b)).collect();
        Mat { ring: self.ring.clone(), n: self.n, e }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.check_compatible(other);
        let e = self.e.iter().zip(&other.e).map(|(a, b)| self.ring.sub(a, b)).collect();
        Mat { ring: self.ring.clone(), n: self.n, e }
    }

    pub fn neg(&self) -> Mat {
        let e = self.e.iter().map(|a| self.ring.neg(a)).collect();
        Mat { ring: self.ring.clone(), n: self.n, e }
    }

    pub fn scale(&self, s: &RingElem) -> Mat {
        let e = self.e.iter().map(|a| self.ring.mul(s, a)).collect();
        Mat { ring: self.ring.clone(), n: self.n, e }
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(&self.ring, self.n, |i, j| *self.get(j, i))
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        let mut acc = Mat::identity(&self.ring, self.n);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `diag(left) * self * diag(right)`.
    pub fn diag_mul(&self, left: &[RingElem], right: &[RingElem]) -> Mat {
        assert_eq!(left.len(), self.n);
        assert_eq!(right.len(), self.n);
        let r = &self.ring;
        Mat::from_fn(r, self.n, |i, j| r.mul(&r.mul(&left[i], self.get(i, j)), &right[j]))
    }

    /// Submatrix on the given zero-based row and column ranges.
    pub fn block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Mat {
        assert_eq!(rows.len(), cols.len(), "blocks must be square");
        let (r0, c0) = (rows.start, cols.start);
        Mat::from_fn(&self.ring, rows.len(), |i, j| *self.get(r0 + i, c0 + j))
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|a| self.ring.is_zero(a))
    }

    /// Entrywise congruence modulo `p^t`.
    pub fn eq_mod(&self, other: &Mat, t: u32) -> Result<bool> {
        self.check_compatible(other);
        for (a, b) in self.e.iter().zip(&other.e) {
            if !self.ring.eq_mod(a, b, t)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Row-reduces `[self | I]` with unit pivots. Over a local ring a matrix
    /// is invertible exactly when every column has a unit pivot available.
    pub fn inverse(&self) -> Result<Mat> {
        let r = &self.ring;
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Mat::identity(r, n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&row| r.is_unit(a.get(row, col)))
                .ok_or_else(|| Error::Domain("matrix is not invertible over O/p^m".into()))?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p_inv = r.invert(a.get(col, col))?;
            a.scale_row(col, &p_inv);
            inv.scale_row(col, &p_inv);
            for row in 0..n {
                if row == col {
                    continue;
                }
                let factor = *a.get(row, col);
                if r.is_zero(&factor) {
                    continue;
                }
                a.sub_row_multiple(row, col, &factor);
                inv.sub_row_multiple(row, col, &factor);
            }
        }
        Ok(inv)
    }

    /// Determinant by elimination with unit pivots; falls back to the
    /// division-free Berkowitz expansion when no unit pivot exists.
    pub fn det(&self) -> RingElem {
        let r = &self.ring;
        let n = self.n;
        let mut a = self.clone();
        let mut det = r.one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&row| r.is_unit(a.get(row, col))) else {
                return super::charpoly::det_division_free(self);
            };
            if pivot != col {
                a.swap_rows(pivot, col);
                det = r.neg(&det);
            }
            let p = *a.get(col, col);
            det = r.mul(&det, &p);
            let p_inv = r.invert(&p).expect("pivot is a unit");
            for row in col + 1..n {
                let factor = r.mul(a.get(row, col), &p_inv);
                if !r.is_zero(&factor) {
                    a.sub_row_multiple(row, col, &factor);
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for c in 0..self.n {
            self.e.swap(i * self.n + c, j * self.n + c);
        }
    }

    fn scale_row(&mut self, i: usize, s: &RingElem) {
        for c in 0..self.n {
            let idx = i * self.n + c;
            self.e[idx] = self.ring.mul(s, &self.e[idx]);
        }
    }

    // row_i -= factor * row_j
    fn sub_row_multiple(&mut self, i: usize, j: usize, factor: &RingElem) {
        for c in 0..self.n {
            let t = self.ring.mul(factor, &self.e[j * self.n + c]);
            let idx = i * self.n + c;
            self.e[idx] = self.ring.sub(&self.e[idx], &t);
        }
    }
}
