//! Tensor powers of the bar resolution: a projective resolution of
//! `𝔞^{⊗d} ⊗ P_r` over a field, using `P_i ⊗ P_j ≅ P_{i+j}`.

use serde::Serialize;

use super::{evaluate, ContravariantX};
use crate::barres::{bar_element, sign, FormalSum};
use crate::error::{Error, Result};
use crate::linalg::{ChainComplex, Matrix, Ring};

/// Weak compositions of `n` into `d` parts, lex order.
pub fn weak_compositions(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if d == 1 {
            cur.push(n);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in 0..=n {
            cur.push(k);
            go(n - k, d - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if d > 0 {
        go(n, d, &mut Vec::new(), &mut out);
    }
    out
}

/// One nonzero block of a differential: from component `src` of degree `n`
/// to component `dst` of degree `n-1`, as a formal sum of morphisms
/// `ℤ^{*label(dst)} -> ℤ^{*label(src)}`.
#[derive(Clone, Debug, Serialize)]
pub struct Block {
    pub src: usize,
    pub dst: usize,
    pub sum: FormalSum,
}

/// Degree `n` is `⊕ P_{n+d+r}` over weak compositions `(k_1, ..., k_d)` of
/// `n`; factor `j` sits in bar degree `k_j`.
#[derive(Clone, Debug, Serialize)]
pub struct TensorResolution {
    pub ring: Ring,
    pub d: usize,
    pub r: usize,
    pub components: Vec<Vec<Vec<usize>>>,
    /// `differentials[n-1]` lists the blocks of `D_n`.
    pub differentials: Vec<Vec<Block>>,
}

impl TensorResolution {
    pub fn label(&self, n: usize) -> usize {
        n + self.d + self.r
    }

    /// Symbolic `D_n ∘ D_{n+1} = 0` for every `n < n_max`.
    pub fn check_d_squared(&self) -> Result<bool> {
        for n in 1..self.differentials.len() {
            let (upper, lower) = (&self.differentials[n], &self.differentials[n - 1]);
            for src in 0..self.components[n + 1].len() {
                for dst in 0..self.components[n - 1].len() {
                    let mut acc = FormalSum::zero(self.label(n - 1), self.label(n + 1));
                    for u in upper.iter().filter(|b| b.src == src) {
                        for l in lower.iter().filter(|b| b.src == u.dst && b.dst == dst) {
                            acc = acc.add(&FormalSum::compose(&u.sum, &l.sum)?)?;
                        }
                    }
                    if !acc.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// `X ⊗_gr` of the resolution: `C_n = ⊕ X(n+d+r)`.
    pub fn pair(&self, x: &dyn ContravariantX) -> Result<ChainComplex> {
        if x.ring() != self.ring {
            return Err(Error::Ring(format!("X is over {}, resolution over {}", x.ring(), self.ring)));
        }
        let mut ds = Vec::new();
        for (i, blocks) in self.differentials.iter().enumerate() {
            let n = i + 1;
            let (dim_hi, dim_lo) = (x.dim(self.label(n))?, x.dim(self.label(n - 1))?);
            let mut m = Matrix::zeros(
                self.ring,
                dim_lo * self.components[n - 1].len(),
                dim_hi * self.components[n].len(),
            );
            for b in blocks {
                m.add_block(b.dst * dim_lo, b.src * dim_hi, &evaluate(x, &b.sum)?);
            }
            ds.push(m);
        }
        ChainComplex::new(self.ring, ds)
    }
}

/// Builds degrees `0..=n_max`. The differential on factor `j` is
/// `(-1)^{k_1+...+k_{j-1}} id * ... * d_{k_j} * ... * id * id_r`.
pub fn resolution_tensor_power(ring: Ring, d: usize, r: usize, n_max: usize) -> Result<TensorResolution> {
    ring.require_field("tensor powers of the bar resolution")?;
    if d == 0 {
        return Err(Error::InvalidArgument("tensor power needs d >= 1".into()));
    }
    let components: Vec<Vec<Vec<usize>>> = (0..=n_max).map(|n| weak_compositions(n, d)).collect();
    let mut differentials = Vec::new();
    for n in 1..=n_max {
        let mut blocks = Vec::new();
        for (src, k) in components[n].iter().enumerate() {
            for j in 0..d {
                if k[j] == 0 {
                    continue;
                }
                let mut lower = k.clone();
                lower[j] -= 1;
                let dst = components[n - 1].iter().position(|c| *c == lower).expect("composition");
                let mut sum = FormalSum::identity(0);
                for (i, &ki) in k.iter().enumerate() {
                    let factor = if i == j { bar_element(ki, 0)? } else { FormalSum::identity(ki + 1) };
                    sum = FormalSum::free_product(&sum, &factor);
                }
                sum = FormalSum::free_product(&sum, &FormalSum::identity(r));
                let koszul: usize = k[..j].iter().sum();
                blocks.push(Block { src, dst, sum: sum.scale(sign(koszul)) });
            }
        }
        differentials.push(blocks);
    }
    Ok(TensorResolution { ring, d, r, components, differentials })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torgr::{tor_complex, ConstantX};

    #[test]
    fn compositions() {
        assert_eq!(weak_compositions(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(weak_compositions(3, 1), vec![vec![3]]);
        assert_eq!(weak_compositions(2, 3).len(), 6);
    }

    #[test]
    fn single_factor_is_the_bar_complex() {
        let x = ConstantX::new(Ring::Q, 2);
        for r in 0..=2 {
            let res = resolution_tensor_power(Ring::Q, 1, r, 4).unwrap();
            assert_eq!(res.pair(&x).unwrap().boundaries(), tor_complex(&x, r, 4).unwrap().boundaries());
        }
    }

    #[test]
    fn square_is_a_complex_and_constant_is_acyclic() {
        let res = resolution_tensor_power(Ring::Q, 2, 0, 5).unwrap();
        assert!(res.check_d_squared().unwrap());
        let c = res.pair(&ConstantX::new(Ring::Q, 1)).unwrap();
        for n in 0..=4 {
            assert!(c.homology(n).unwrap().is_zero(), "H_{n}");
        }
        assert!(resolution_tensor_power(Ring::Z, 2, 0, 3).is_err());
    }
}
