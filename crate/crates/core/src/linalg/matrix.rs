use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ring::{scalar_from_str, scalar_to_string, Ring, Scalar};
use crate::error::{Error, Result};

/// Dense exact matrix over a [`Ring`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Self {
        Matrix { ring, rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    /// Row-major integer entries.
    pub fn from_i64(ring: Ring, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        Matrix {
            ring,
            rows,
            cols,
            data: entries.iter().map(|&v| ring.from_i64(v)).collect(),
        }
    }

    pub fn from_rows(ring: Ring, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let flat: Vec<i64> = rows.iter().flat_map(|row| {
            assert_eq!(row.len(), c, "ragged rows");
            row.iter().copied()
        }).collect();
        Matrix::from_i64(ring, r, c, &flat)
    }

    pub fn from_scalars(ring: Ring, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if ring == Ring::Z {
            if let Some(x) = data.iter().find(|x| !x.is_integer()) {
                return Err(Error::Ring(format!("non-integral entry {x} in a Z-matrix")));
            }
        }
        Ok(Matrix { ring, rows, cols, data: data.into_iter().map(|x| ring.normalize(x)).collect() })
    }

    /// Column vector.
    pub fn column(ring: Ring, entries: Vec<Scalar>) -> Self {
        let n = entries.len();
        Matrix::from_scalars(ring, n, 1, entries).expect("column vector")
    }

    pub fn ring(&self) -> Ring {
        self.ring
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = self.ring.normalize(v);
    }

    pub fn set_i64(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = self.ring.from_i64(v);
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j { x.is_one() } else { x.is_zero() }
                })
            })
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(Scalar::is_integer)
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { ring: self.ring, rows: self.cols, cols: self.rows, data }
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.ring != other.ring {
            return Err(Error::Ring(format!("{} * {}", self.ring, other.ring)));
        }
        let mut out = Matrix::zeros(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let brow = other.row(k);
                let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, b) in orow.iter_mut().zip(brow) {
                    if !b.is_zero() {
                        *o += a * b;
                    }
                }
            }
        }
        if let Ring::Fp(_) = self.ring {
            for x in &mut out.data {
                *x = self.ring.normalize(std::mem::take(x));
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |r, a, b| r.add(a, b))
    }

    pub fn checked_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |r, a, b| r.sub(a, b))
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(Ring, &Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        if self.shape() != other.shape() {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.ring != other.ring {
            return Err(Error::Ring(format!("{} vs {}", self.ring, other.ring)));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(self.ring, a, b)).collect();
        Ok(Matrix { ring: self.ring, rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let data = self.data.iter().map(|x| self.ring.mul(x, c)).collect();
        Matrix { ring: self.ring, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale_i64(&self, c: i64) -> Matrix {
        self.scale(&self.ring.from_i64(c))
    }

    /// Kronecker product; row index of `A ⊗ B` is `i * B.rows + k`.
    pub fn kronecker(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ring, other.ring);
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Matrix::zeros(self.ring, rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.data[(i * other.rows + k) * cols + j * other.cols + l] =
                                self.ring.mul(a, b);
                        }
                    }
                }
            }
        }
        out
    }

    /// `n`-fold Kronecker power; the 0-th power is the 1x1 identity.
    pub fn kronecker_power(&self, n: usize) -> Matrix {
        let mut out = Matrix::identity(self.ring, 1);
        for _ in 0..n {
            out = out.kronecker(self);
        }
        out
    }

    /// Block diagonal `[A 0; 0 B]`.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ring, other.ring);
        let mut out = Matrix::zeros(self.ring, self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = block.get(i, j).clone();
            }
        }
    }

    /// Adds `block` into the submatrix at `(r0, c0)`.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        for i in 0..block.rows {
            for j in 0..block.cols {
                let b = block.get(i, j);
                if !b.is_zero() {
                    let idx = (r0 + i) * self.cols + c0 + j;
                    self.data[idx] = self.ring.add(&self.data[idx], b);
                }
            }
        }
    }

    pub fn hstack(parts: &[Matrix], ring: Ring, rows: usize) -> Result<Matrix> {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(ring, rows, cols);
        let mut c0 = 0;
        for p in parts {
            if p.rows != rows {
                return Err(Error::Shape(format!("hstack: {} rows, expected {rows}", p.rows)));
            }
            out.set_block(0, c0, p);
            c0 += p.cols;
        }
        Ok(out)
    }

    pub fn vstack(parts: &[Matrix], ring: Ring, cols: usize) -> Result<Matrix> {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zeros(ring, rows, cols);
        let mut r0 = 0;
        for p in parts {
            if p.cols != cols {
                return Err(Error::Shape(format!("vstack: {} cols, expected {cols}", p.cols)));
            }
            out.set_block(r0, 0, p);
            r0 += p.rows;
        }
        Ok(out)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix { ring: self.ring, rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.rows);
        for i in 0..self.rows {
            for &j in idx {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { ring: self.ring, rows: self.rows, cols: idx.len(), data }
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square(), "trace of a non-square matrix");
        let mut t = Scalar::zero();
        for i in 0..self.rows {
            t += self.get(i, i);
        }
        self.ring.normalize(t)
    }

    /// Reinterprets the entries over another ring: Z embeds into Q, reduces
    /// into F_p; Q maps to Z only when integral and to F_p when denominators
    /// are prime to p.
    pub fn to_ring(&self, ring: Ring) -> Result<Matrix> {
        if ring == self.ring {
            return Ok(self.clone());
        }
        match (self.ring, ring) {
            (Ring::Fp(_), _) => Err(Error::Ring(format!("cannot lift {} to {ring}", self.ring))),
            (_, Ring::Z) if !self.is_integral() => {
                Err(Error::Ring("non-integral matrix cannot be viewed over Z".into()))
            }
            (_, Ring::Fp(p)) if self.data.iter().any(|x| (x.denom() % p).is_zero()) => {
                Err(Error::Ring(format!("denominator divisible by {p}")))
            }
            _ => Ok(Matrix {
                ring,
                rows: self.rows,
                cols: self.cols,
                data: self.data.iter().map(|x| ring.normalize(x.clone())).collect(),
            }),
        }
    }

    /// Integer entries, row by row. Panics on non-integral entries.
    pub fn to_bigint_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| {
                        assert!(x.is_integer(), "non-integral entry");
                        x.numer().clone()
                    })
                    .collect()
            })
            .collect()
    }

    pub fn from_bigint_rows(ring: Ring, rows: usize, cols: usize, m: &[Vec<BigInt>]) -> Matrix {
        let data = m
            .iter()
            .flat_map(|r| r.iter().map(|x| ring.normalize(Scalar::from_integer(x.clone()))))
            .collect();
        Matrix { ring, rows, cols, data }
    }

    /// Integer matrix of a permutation: column `j` is `e_{perm[j]}`.
    pub fn permutation(ring: Ring, perm: &[usize]) -> Matrix {
        let n = perm.len();
        let mut m = Matrix::zeros(ring, n, n);
        for (j, &i) in perm.iter().enumerate() {
            m.data[i * n + j] = Scalar::one();
        }
        m
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale_i64(-1)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(scalar_to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Wire format: `{ring, rows, cols, entries}` with row-major decimal strings.
#[derive(Serialize, Deserialize)]
struct MatrixJson {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<String>,
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            entries: self.data.iter().map(scalar_to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Matrix, D::Error> {
        let j = MatrixJson::deserialize(d)?;
        let data = j
            .entries
            .iter()
            .map(|s| scalar_from_str(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Matrix::from_scalars(j.ring, j.rows, j.cols, data).map_err(serde::de::Error::custom)
    }
}
