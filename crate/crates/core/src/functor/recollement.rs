//! The functors `α_n(M) = 𝔞^{⊗n} ⊗_{𝔖_n} M` and `β_n(M) = (𝔞^{⊗n} ⊗ M)^{𝔖_n}`,
//! and the unit `F -> β_n(cr_n F)`.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use serde::Serialize;

use super::cross::{collapse, cross_effect, cross_effect_subspace, degree, CrossEffect};
use super::expr::Variance;
use super::symmod::{Character, SymModule};
use super::tabulated::{KernelFunctor, NatTransformation, SharedFunctor, TabulatedFunctor};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Quotient, Ring, Subspace};

/// Permutation matrix exchanging tensor positions `i` and `i+1` of `(k^m)^{⊗n}`.
pub fn tensor_swap(ring: Ring, m: usize, n: usize, i: usize) -> Matrix {
    let total = m.pow(n as u32);
    let mut perm = vec![0; total];
    let mut digits = vec![0usize; n];
    for (idx, p) in perm.iter_mut().enumerate() {
        let mut x = idx;
        for d in digits.iter_mut().rev() {
            *d = x % m;
            x /= m;
        }
        digits.swap(i, i + 1);
        *p = digits.iter().fold(0, |acc, &d| acc * m + d);
    }
    Matrix::permutation(ring, &perm)
}

/// `T_i = swap_i ⊗ M(s_i)` on `(k^m)^{⊗n} ⊗ M`.
fn twisted_swaps(module: &SymModule, m: usize) -> Vec<Matrix> {
    let n = module.n();
    (0..n.saturating_sub(1))
        .map(|i| tensor_swap(module.ring(), m, n, i).kronecker(module.generator(i)))
        .collect()
}

fn full_map(module: &SymModule, phi: &Matrix) -> Result<Matrix> {
    let a = phi.to_ring(module.ring())?;
    Ok(a.kronecker_power(module.n()).kronecker(&Matrix::identity(module.ring(), module.dim())))
}

fn minus_identity(ts: &[Matrix], dim: usize, ring: Ring) -> Vec<Matrix> {
    let id = Matrix::identity(ring, dim);
    ts.iter().map(|t| &id - t).collect()
}

/// Coinvariants `α_n(M)`.
pub struct AlphaFunctor {
    module: SymModule,
    cache: RwLock<HashMap<usize, Arc<Quotient>>>,
}

impl AlphaFunctor {
    pub fn new(module: SymModule) -> Result<Self> {
        module.ring().require_field("alpha_n")?;
        Ok(AlphaFunctor { module, cache: RwLock::new(HashMap::new()) })
    }

    fn quotient(&self, m: usize) -> Result<Arc<Quotient>> {
        if let Some(q) = self.cache.read().unwrap().get(&m) {
            return Ok(q.clone());
        }
        let ring = self.module.ring();
        let dim = m.pow(self.module.n() as u32) * self.module.dim();
        let rel = minus_identity(&twisted_swaps(&self.module, m), dim, ring);
        let q = Arc::new(Quotient::new(&Matrix::hstack(&rel, ring, dim)?)?);
        self.cache.write().unwrap().insert(m, q.clone());
        Ok(q)
    }
}

impl TabulatedFunctor for AlphaFunctor {
    fn ring(&self) -> Ring {
        self.module.ring()
    }

    fn variance(&self) -> Variance {
        Variance::Co
    }

    fn dim(&self, m: usize) -> Result<usize> {
        Ok(self.quotient(m)?.dim())
    }

    fn on_matrix(&self, phi: &Matrix) -> Result<Matrix> {
        let (b, a) = phi.shape();
        let full = full_map(&self.module, phi)?;
        let (src, dst) = (self.quotient(a)?, self.quotient(b)?);
        Ok(src.induced(&full, &dst))
    }

    fn name(&self) -> String {
        format!("alpha_{}", self.module.n())
    }
}

/// Invariants `β_n(M)`.
pub struct BetaFunctor {
    module: SymModule,
    cache: RwLock<HashMap<usize, Arc<Subspace>>>,
}

impl BetaFunctor {
    pub fn new(module: SymModule) -> Result<Self> {
        module.ring().require_field("beta_n")?;
        Ok(BetaFunctor { module, cache: RwLock::new(HashMap::new()) })
    }

    pub fn module(&self) -> &SymModule {
        &self.module
    }

    pub fn subspace(&self, m: usize) -> Result<Arc<Subspace>> {
        if let Some(s) = self.cache.read().unwrap().get(&m) {
            return Ok(s.clone());
        }
        let ring = self.module.ring();
        let dim = m.pow(self.module.n() as u32) * self.module.dim();
        let rel = minus_identity(&twisted_swaps(&self.module, m), dim, ring);
        let s = Arc::new(Subspace::joint_kernel(ring, dim, &rel)?);
        self.cache.write().unwrap().insert(m, s.clone());
        Ok(s)
    }
}

impl TabulatedFunctor for BetaFunctor {
    fn ring(&self) -> Ring {
        self.module.ring()
    }

    fn variance(&self) -> Variance {
        Variance::Co
    }

    fn dim(&self, m: usize) -> Result<usize> {
        Ok(self.subspace(m)?.dim())
    }

    fn on_matrix(&self, phi: &Matrix) -> Result<Matrix> {
        let (b, a) = phi.shape();
        let full = full_map(&self.module, phi)?;
        let (s, t) = (self.subspace(a)?, self.subspace(b)?);
        Ok(t.coordinates_unchecked(&(&full * s.basis())))
    }

    fn name(&self) -> String {
        format!("beta_{}", self.module.n())
    }
}

/// The unit `η: F -> β_n(cr_n F)` with its kernel.
pub struct Unit {
    pub n: usize,
    pub cross: CrossEffect,
    pub beta: Arc<BetaFunctor>,
    pub eta: NatTransformation,
}

impl Unit {
    pub fn kernel(&self) -> KernelFunctor {
        KernelFunctor::new(self.eta.clone())
    }
}

/// Index tuples `J ∈ (0..m)^n` in row-major order.
fn tuples(m: usize, n: usize) -> Vec<Vec<usize>> {
    let total = m.pow(n as u32);
    (0..total)
        .map(|mut idx| {
            let mut t = vec![0; n];
            for d in t.iter_mut().rev() {
                *d = idx % m;
                idx /= m;
            }
            t
        })
        .collect()
}

/// Builds `η_m(x) = Σ_J e_J ⊗ π F(f_J) x`, where `f_J: ℤ^m -> ℤ^n` sends
/// `e_j` to `Σ_{k: J_k = j} e_k` and `π` projects `F(ℤ^n)` onto `cr_n F`.
pub fn unit_to_beta(f: SharedFunctor, n: usize) -> Result<Unit> {
    let ring = f.ring();
    ring.require_field("unit_to_beta")?;
    if f.variance() == Variance::Contra {
        return Err(Error::Variance("unit_to_beta needs a covariant functor".into()));
    }
    match degree(f.as_ref(), n)? {
        Some(d) if d == n => {}
        other => {
            return Err(Error::DegreeMismatch {
                expected: n,
                found: other.map_or(format!("> {n}"), |d| d.to_string()),
            })
        }
    }
    let cross = cross_effect(f.as_ref(), n)?;
    let beta = Arc::new(BetaFunctor::new(cross.module.clone())?);
    let dim_n = f.dim(n)?;
    let mut pi = Matrix::identity(ring, dim_n);
    for i in 0..n {
        pi = &pi * &(&Matrix::identity(ring, dim_n) - &f.on_matrix(&collapse(n, i))?);
    }
    let sub = cross.subspace.clone();
    let (src, b2) = (f.clone(), beta.clone());
    let component = move |m: usize| -> Result<Matrix> {
        let blocks = tuples(m, n)
            .into_iter()
            .map(|j| {
                let mut fj = Matrix::zeros(Ring::Z, n, m);
                for (k, &jk) in j.iter().enumerate() {
                    fj.set_i64(k, jk, 1);
                }
                Ok(sub.coordinates_unchecked(&(&pi * &src.on_matrix(&fj)?)))
            })
            .collect::<Result<Vec<_>>>()?;
        let full = Matrix::vstack(&blocks, ring, src.dim(m)?)?;
        b2.subspace(m)?.coordinates(&full)
    };
    let eta = NatTransformation::new(f, beta.clone(), component)?;
    Ok(Unit { n, cross, beta, eta })
}

/// Character comparison of `cr_n α_n(M)` and `cr_n β_n(M)` with `M`.
#[derive(Clone, Debug, Serialize)]
pub struct RecollementReport {
    pub n: usize,
    pub module: Character,
    pub cr_alpha: Character,
    pub cr_beta: Character,
    pub alpha_pass: bool,
    pub beta_pass: bool,
}

impl RecollementReport {
    pub fn pass(&self) -> bool {
        self.alpha_pass && self.beta_pass
    }
}

pub fn check_recollement_units(module: &SymModule) -> Result<RecollementReport> {
    let n = module.n();
    let alpha = AlphaFunctor::new(module.clone())?;
    let beta = BetaFunctor::new(module.clone())?;
    let target = module.character();
    let cr_alpha = cross_effect(&alpha, n)?.module.character();
    let cr_beta = cross_effect(&beta, n)?.module.character();
    Ok(RecollementReport {
        n,
        alpha_pass: cr_alpha == target,
        beta_pass: cr_beta == target,
        module: target,
        cr_alpha,
        cr_beta,
    })
}

/// `cr_n K = 0` for the kernel `K` of the unit, checked at `(ℤ, ..., ℤ)`.
pub fn unit_kernel_cross_effect_dim(unit: &Unit) -> Result<usize> {
    Ok(cross_effect_subspace(&unit.kernel(), unit.n)?.dim())
}
