//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;
use super::ring::Ring;
use crate::error::{Error, Result};

/// `U * M * V = D` with `U`, `V` unimodular and `D` diagonal, `d1 | d2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub u: Matrix,
    pub d: Matrix,
    pub v: Matrix,
}

impl Snf {
    /// Nonzero diagonal entries.
    pub fn divisors(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n)
            .map(|i| self.d.get(i, i).numer().clone())
            .filter(|x| !x.is_zero())
            .collect()
    }
}

type Grid = Vec<Vec<BigInt>>;

struct Work {
    a: Grid,
    u: Option<Grid>,
    v: Option<Grid>,
}

fn identity_grid(n: usize) -> Grid {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

impl Work {
    fn rows(&self) -> usize {
        self.a.len()
    }

    fn cols(&self) -> usize {
        self.a.first().map_or(0, Vec::len)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v {
                row.swap(i, j);
            }
        }
    }

    /// row_i -= q * row_j
    fn sub_row(&mut self, i: usize, j: usize, q: &BigInt) {
        fn go(g: &mut Grid, i: usize, j: usize, q: &BigInt) {
            let src = g[j].clone();
            for (x, y) in g[i].iter_mut().zip(&src) {
                if !y.is_zero() {
                    *x -= q * y;
                }
            }
        }
        go(&mut self.a, i, j, q);
        if let Some(u) = &mut self.u {
            go(u, i, j, q);
        }
    }

    /// col_i -= q * col_j
    fn sub_col(&mut self, i: usize, j: usize, q: &BigInt) {
        fn go(g: &mut Grid, i: usize, j: usize, q: &BigInt) {
            for row in g {
                if !row[j].is_zero() {
                    let t = q * &row[j];
                    row[i] -= t;
                }
            }
        }
        go(&mut self.a, i, j, q);
        if let Some(v) = &mut self.v {
            go(v, i, j, q);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -std::mem::take(x);
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -std::mem::take(x);
            }
        }
    }

    fn smallest_in(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows() {
            for j in t..self.cols() {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                    if x.abs().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn run(&mut self) {
        let n = self.rows().min(self.cols());
        let mut t = 0;
        while t < n {
            let Some((pi, pj)) = self.smallest_in(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                // clear column t below the pivot
                let mut dirty = false;
                for i in t + 1..self.rows() {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = self.a[i][t].div_floor(&self.a[t][t]);
                    self.sub_row(i, t, &q);
                    if !self.a[i][t].is_zero() {
                        dirty = true;
                    }
                }
                // clear row t right of the pivot
                for j in t + 1..self.cols() {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = self.a[t][j].div_floor(&self.a[t][t]);
                    self.sub_col(j, t, &q);
                    if !self.a[t][j].is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    // a smaller remainder appeared in row or column t
                    let mut best = (t, t);
                    for i in t + 1..self.rows() {
                        if !self.a[i][t].is_zero() && self.a[i][t].abs() < self.a[best.0][best.1].abs() {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..self.cols() {
                        if !self.a[t][j].is_zero() && self.a[t][j].abs() < self.a[best.0][best.1].abs() {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                // divisibility: fold a row with a non-multiple into row t
                let p = self.a[t][t].clone();
                let bad = (t + 1..self.rows())
                    .find(|&i| (t + 1..self.cols()).any(|j| !self.a[i][j].is_multiple_of(&p)));
                match bad {
                    Some(i) => {
                        let m1 = BigInt::from(-1);
                        self.sub_row(t, i, &m1);
                    }
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
    }
}

fn integer_grid(m: &Matrix) -> Result<Grid> {
    if m.ring() != Ring::Z {
        return Err(Error::Ring(format!("Smith normal form needs Z, got {}", m.ring())));
    }
    Ok(m.to_bigint_rows())
}

/// Smith normal form with transforms.
pub fn snf(m: &Matrix) -> Result<Snf> {
    let a = integer_grid(m)?;
    let (r, c) = m.shape();
    let mut w = Work { a, u: Some(identity_grid(r)), v: Some(identity_grid(c)) };
    w.run();
    Ok(Snf {
        u: Matrix::from_bigint_rows(Ring::Z, r, r, &w.u.unwrap()),
        d: Matrix::from_bigint_rows(Ring::Z, r, c, &w.a),
        v: Matrix::from_bigint_rows(Ring::Z, c, c, &w.v.unwrap()),
    })
}

/// Extended gcd: `(g, s, t)` with `s*a + t*b = g >= 0`.
fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Row-style Hermite basis of the lattice spanned by the given vectors.
fn lattice_basis(len: usize, vectors: impl Iterator<Item = Vec<BigInt>>) -> Grid {
    let mut basis: Vec<Option<Vec<BigInt>>> = vec![None; len];
    for mut v in vectors {
        let mut c = 0;
        while c < len {
            if v[c].is_zero() {
                c += 1;
                continue;
            }
            match &mut basis[c] {
                None => {
                    if v[c].is_negative() {
                        v.iter_mut().for_each(|x| *x = -std::mem::take(x));
                    }
                    basis[c] = Some(v);
                    break;
                }
                Some(b) => {
                    if v[c].is_multiple_of(&b[c]) {
                        let q = &v[c] / &b[c];
                        for (x, y) in v.iter_mut().zip(b.iter()) {
                            if !y.is_zero() {
                                *x -= &q * y;
                            }
                        }
                    } else {
                        let (g, s, t) = ext_gcd(&b[c], &v[c]);
                        let bq = &b[c] / &g;
                        let vq = &v[c] / &g;
                        let nb: Vec<BigInt> =
                            b.iter().zip(&v).map(|(x, y)| &s * x + &t * y).collect();
                        let nv: Vec<BigInt> =
                            b.iter().zip(&v).map(|(x, y)| &bq * y - &vq * x).collect();
                        *b = nb;
                        v = nv;
                    }
                    c += 1;
                }
            }
        }
    }
    basis.into_iter().flatten().collect()
}

/// Nonzero invariant factors of an integer matrix, without transforms.
///
/// The column lattice is first brought to a basis of at most `rows` vectors,
/// which keeps wide relation matrices cheap.
pub fn invariant_factors(m: &Matrix) -> Result<Vec<BigInt>> {
    let a = integer_grid(m)?;
    let (r, c) = m.shape();
    let grid = if c > r {
        let cols = (0..c).map(|j| a.iter().map(|row| row[j].clone()).collect());
        lattice_basis(r, cols)
    } else {
        a
    };
    if grid.is_empty() {
        return Ok(Vec::new());
    }
    let mut w = Work { a: grid, u: None, v: None };
    w.run();
    let n = w.rows().min(w.cols());
    Ok((0..n).map(|i| w.a[i][i].clone()).filter(|x| !x.is_zero()).collect())
}

/// Cokernel `Z^rows / im M`, as free rank plus torsion divisors `> 1`.
pub fn cokernel_summary(m: &Matrix) -> Result<(usize, Vec<BigInt>)> {
    let divs = invariant_factors(m)?;
    let free = m.rows() - divs.len();
    Ok((free, divs.into_iter().filter(|d| !d.is_one()).collect()))
}
