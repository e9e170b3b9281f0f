//! Cross-effects at `(ℤ, ..., ℤ)` and degree detection.

use serde::Serialize;

use super::symmod::SymModule;
use super::tabulated::TabulatedFunctor;
use crate::error::Result;
use crate::linalg::{Matrix, Ring, Subspace};

/// `cr_n F(ℤ, ..., ℤ)` as a subspace of `F(ℤ^n)` with its `𝔖_n`-action.
#[derive(Clone, Debug, Serialize)]
pub struct CrossEffect {
    pub n: usize,
    pub dim: usize,
    #[serde(skip)]
    pub subspace: Subspace,
    pub module: SymModule,
}

/// `I_n` with the `i`-th diagonal entry zeroed: collapses the `i`-th summand.
pub fn collapse(n: usize, i: usize) -> Matrix {
    let mut e = Matrix::identity(Ring::Z, n);
    e.set_i64(i, i, 0);
    e
}

/// Permutation matrix of the adjacent transposition `(i, i+1)` on `ℤ^n`.
pub fn adjacent_swap(n: usize, i: usize) -> Matrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(i, i + 1);
    Matrix::permutation(Ring::Z, &perm)
}

/// Joint kernel of the collapse maps on `F(ℤ^n)`. For `n = 0` this is `F(0)`.
pub fn cross_effect_subspace(f: &dyn TabulatedFunctor, n: usize) -> Result<Subspace> {
    let maps = (0..n).map(|i| f.on_matrix(&collapse(n, i))).collect::<Result<Vec<_>>>()?;
    Subspace::joint_kernel(f.ring(), f.dim(n)?, &maps)
}

pub fn cross_effect(f: &dyn TabulatedFunctor, n: usize) -> Result<CrossEffect> {
    let subspace = cross_effect_subspace(f, n)?;
    let generators = (0..n.saturating_sub(1))
        .map(|i| subspace.restrict(&f.on_matrix(&adjacent_swap(n, i))?, &subspace))
        .collect::<Result<Vec<_>>>()?;
    let module = if n <= 1 {
        SymModule::without_generators(n, f.ring(), subspace.dim())
    } else if subspace.dim() == 0 {
        SymModule::new(n, f.ring(), vec![Matrix::zeros(f.ring(), 0, 0); n - 1])?
    } else {
        SymModule::new(n, f.ring(), generators)?
    };
    Ok(CrossEffect { n, dim: subspace.dim(), subspace, module })
}

/// Degree of `F`, or `None` if it exceeds `bound`. Cross-effects at `ℤ` can
/// vanish below the degree (`Λ²(ℤ) = 0`), so this is the largest `n <= bound`
/// with `cr_n F(ℤ, ..., ℤ) != 0`, certified by `cr_{bound+1} = 0`.
pub fn degree(f: &dyn TabulatedFunctor, bound: usize) -> Result<Option<usize>> {
    if cross_effect_subspace(f, bound + 1)?.dim() != 0 {
        return Ok(None);
    }
    for n in (1..=bound).rev() {
        if cross_effect_subspace(f, n)?.dim() != 0 {
            return Ok(Some(n));
        }
    }
    Ok(Some(0))
}
