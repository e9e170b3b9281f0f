//! Gauss-Jordan elimination. Integer matrices are eliminated over Q.

use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::ring::{Ring, Scalar};
use crate::error::{Error, Result};

/// Reduced row echelon form of a matrix.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// The nonzero rows of the RREF, one per pivot.
    pub rows: Vec<Vec<Scalar>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
    pub ring: Ring,
}

fn field_of(ring: Ring) -> Ring {
    if ring == Ring::Z { Ring::Q } else { ring }
}

/// Row-reduces `rows` (each of length `cols`) over the field `ring`.
pub(crate) fn rref_rows(ring: Ring, mut rows: Vec<Vec<Scalar>>, cols: usize) -> Echelon {
    let ring = field_of(ring);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = ring.normalize(Scalar::one() / &rows[r][c]);
        if !inv.is_one() {
            for x in rows[r][c..].iter_mut() {
                *x = ring.mul(x, &inv);
            }
        }
        let (head, tail) = rows.split_at_mut(r);
        let (prow, rest) = tail.split_first_mut().unwrap();
        for other in head.iter_mut().chain(rest.iter_mut()) {
            let f = other[c].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in other[c..].iter_mut().zip(&prow[c..]) {
                if !y.is_zero() {
                    *x = ring.sub(x, &ring.mul(&f, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    Echelon { rows, pivots, cols, ring }
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Kernel basis as columns, one per free column `f`, with a 1 at `f` and
    /// zeros at the other free columns.
    pub fn kernel(&self) -> Matrix {
        let free = self.free_columns();
        let mut k = Matrix::zeros(self.ring, self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k.set(f, j, Scalar::one());
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if !row[f].is_zero() {
                    k.set(p, j, -row[f].clone());
                }
            }
        }
        k
    }
}

impl Matrix {
    fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows()).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn echelon(&self) -> Echelon {
        rref_rows(self.ring(), self.row_vecs(), self.cols())
    }

    /// Rank over the fraction field (Q for integer matrices).
    pub fn rank(&self) -> usize {
        if self.rows() <= self.cols() {
            self.echelon().rank()
        } else {
            self.transpose().echelon().rank()
        }
    }

    /// Kernel basis as the columns of a matrix.
    ///
    /// Over `Z` the basis is the rational RREF basis, which must be integral;
    /// otherwise [`Error::NonFree`] is returned.
    pub fn kernel_basis(&self) -> Result<Matrix> {
        let k = self.echelon().kernel();
        if self.ring() == Ring::Z {
            if !k.is_integral() {
                return Err(Error::NonFree(format!(
                    "kernel of a {}x{} integer matrix",
                    self.rows(),
                    self.cols()
                )));
            }
            return k.to_ring(Ring::Z);
        }
        Ok(k)
    }

    /// Determinant over the fraction field, normalized back into the ring.
    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let ring = field_of(self.ring());
        let n = self.rows();
        let mut a = self.row_vecs();
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
                return Scalar::zero();
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            det = ring.mul(&det, &a[c][c]);
            let inv = ring.normalize(Scalar::one() / &a[c][c]);
            for i in c + 1..n {
                let f = ring.mul(&a[i][c], &inv);
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let t = ring.mul(&f, &a[c][j]);
                    a[i][j] = ring.sub(&a[i][j], &t);
                }
            }
        }
        self.ring().normalize(det)
    }
}
