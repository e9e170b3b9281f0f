//! Subspaces and quotients of `k^n` with coordinate bases.

use num_traits::Zero;

use super::field::rref_rows;
use super::matrix::Matrix;
use super::ring::{Ring, Scalar};
use crate::error::{Error, Result};

/// A subspace of `k^ambient` with a basis whose restriction to the rows
/// `positions` is the identity, so coordinates of a member are read off
/// directly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    basis: Matrix,
    positions: Vec<usize>,
}

impl Subspace {
    /// Kernel of `m` (as a subspace of its source).
    pub fn kernel(m: &Matrix) -> Result<Subspace> {
        let e = m.echelon();
        let positions = e.free_columns();
        let basis = m.kernel_basis()?;
        Ok(Subspace { basis, positions })
    }

    /// Joint kernel of several maps out of the same space.
    pub fn joint_kernel(ring: Ring, ambient: usize, maps: &[Matrix]) -> Result<Subspace> {
        if maps.is_empty() {
            return Ok(Subspace::whole(ring, ambient));
        }
        let stacked = Matrix::vstack(maps, ring, ambient)?;
        Subspace::kernel(&stacked)
    }

    /// Span of the columns of `m`. Requires a field.
    pub fn span(m: &Matrix) -> Result<Subspace> {
        m.ring().require_field("column span")?;
        let t = m.transpose();
        let rows = (0..t.rows()).map(|i| t.row(i).to_vec()).collect();
        let e = rref_rows(m.ring(), rows, m.rows());
        let data: Vec<Scalar> = e.rows.into_iter().flatten().collect();
        let dim = e.pivots.len();
        let basis = Matrix::from_scalars(m.ring(), dim, m.rows(), data)?.transpose();
        Ok(Subspace { basis, positions: e.pivots })
    }

    pub fn whole(ring: Ring, n: usize) -> Subspace {
        Subspace { basis: Matrix::identity(ring, n), positions: (0..n).collect() }
    }

    pub fn zero(ring: Ring, n: usize) -> Subspace {
        Subspace { basis: Matrix::zeros(ring, n, 0), positions: Vec::new() }
    }

    pub fn ring(&self) -> Ring {
        self.basis.ring()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    /// Basis vectors as columns.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    /// Coordinates of the columns of `v`, assumed to lie in the subspace.
    pub fn coordinates_unchecked(&self, v: &Matrix) -> Matrix {
        v.select_rows(&self.positions)
    }

    /// Coordinates of the columns of `v`; fails if some column is outside.
    pub fn coordinates(&self, v: &Matrix) -> Result<Matrix> {
        let c = self.coordinates_unchecked(v);
        if &self.basis * &c != *v {
            return Err(Error::Functoriality("vector outside the subspace".into()));
        }
        Ok(c)
    }

    pub fn contains(&self, v: &Matrix) -> bool {
        self.coordinates(v).is_ok()
    }

    /// Matrix of `f` restricted to `self`, landing in `target`.
    pub fn restrict(&self, f: &Matrix, target: &Subspace) -> Result<Matrix> {
        target.coordinates(&(f * &self.basis))
    }
}

/// The quotient `k^ambient / S` with the complement spanned by the unit
/// vectors at non-pivot positions of `S`.
#[derive(Clone, Debug)]
pub struct Quotient {
    ring: Ring,
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    complement: Vec<usize>,
}

impl Quotient {
    /// Quotient by the span of the columns of `relations`.
    pub fn new(relations: &Matrix) -> Result<Quotient> {
        relations.ring().require_field("quotient")?;
        let ambient = relations.rows();
        let t = relations.transpose();
        let rows = (0..t.rows()).map(|i| t.row(i).to_vec()).collect();
        let e = rref_rows(relations.ring(), rows, ambient);
        let complement = e.free_columns();
        Ok(Quotient { ring: relations.ring(), ambient, rows: e.rows, pivots: e.pivots, complement })
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Projection matrix `k^ambient -> quotient`.
    pub fn projection(&self) -> Matrix {
        let mut p = Matrix::zeros(self.ring, self.dim(), self.ambient);
        let mut col_of = vec![None; self.ambient];
        for (k, &c) in self.complement.iter().enumerate() {
            col_of[c] = Some(k);
            p.set(k, c, Scalar::from_integer(1.into()));
        }
        // e_p = (row with pivot p) - (its non-pivot part)
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            for (c, x) in row.iter().enumerate() {
                if c == piv || x.is_zero() {
                    continue;
                }
                if let Some(k) = col_of[c] {
                    p.set(k, piv, -x.clone());
                }
            }
        }
        p
    }

    /// Lift `quotient -> k^ambient` onto the complement.
    pub fn lift(&self) -> Matrix {
        let mut l = Matrix::zeros(self.ring, self.ambient, self.dim());
        for (k, &c) in self.complement.iter().enumerate() {
            l.set(c, k, Scalar::from_integer(1.into()));
        }
        l
    }

    /// Map induced by `f: ambient -> target.ambient` on quotients.
    pub fn induced(&self, f: &Matrix, target: &Quotient) -> Matrix {
        &(&target.projection() * f) * &self.lift()
    }
}
