//! Tor over gr against `𝔞 ⊗ P_r`, computed degree by degree from the bar
//! complex `X(n+r+1) -> X(n+r)`.

mod tensor_res;
mod xi;

use std::sync::Arc;

use serde::Serialize;

use crate::barres::{bar_element, FormalSum};
use crate::error::{Error, Result};
use crate::functor::{SharedFunctor, Variance};
use crate::linalg::{ChainComplex, HomologyGroup, Matrix, Ring};
use crate::par::{self, Execution};
use crate::word::GrMorphism;

pub use tensor_res::{resolution_tensor_power, weak_compositions, TensorResolution};
pub use xi::{
    homotopy_check, verify_xi, ClosureXi, HomotopyDegree, HomotopyReport, HypothesisResult,
    IdentityXi, ProjectionXi, SampleSpec, XiProvider, XiReport, XiWitness,
};

/// A contravariant functor `gr^op -> k-Mod` with finite free values.
///
/// `on_morphism(φ)` for `φ: ℤ^{*a} -> ℤ^{*b}` is a `dim(a) x dim(b)` matrix.
pub trait ContravariantX: Send + Sync {
    fn ring(&self) -> Ring;
    fn dim(&self, n: usize) -> Result<usize>;
    fn on_morphism(&self, f: &GrMorphism) -> Result<Matrix>;
    fn name(&self) -> String;

    /// Human-readable name of the `i`-th basis vector of `X(n)`.
    fn basis_label(&self, _n: usize, i: usize) -> String {
        format!("b{}", i + 1)
    }
}

pub type SharedX = Arc<dyn ContravariantX>;

/// The constant functor with value `k^dim` and identity maps.
#[derive(Clone, Debug)]
pub struct ConstantX {
    ring: Ring,
    dim: usize,
}

impl ConstantX {
    pub fn new(ring: Ring, dim: usize) -> Self {
        ConstantX { ring, dim }
    }
}

impl ContravariantX for ConstantX {
    fn ring(&self) -> Ring {
        self.ring
    }

    fn dim(&self, _n: usize) -> Result<usize> {
        Ok(self.dim)
    }

    fn on_morphism(&self, _f: &GrMorphism) -> Result<Matrix> {
        Ok(Matrix::identity(self.ring, self.dim))
    }

    fn name(&self) -> String {
        format!("const({})", self.dim)
    }
}

/// A contravariant functor on ab precomposed with abelianization.
#[derive(Clone)]
pub struct AbX {
    f: SharedFunctor,
}

impl AbX {
    pub fn new(f: SharedFunctor) -> Result<Self> {
        if f.variance() == Variance::Co {
            return Err(Error::Variance(format!("{} is covariant", f.name())));
        }
        Ok(AbX { f })
    }
}

impl ContravariantX for AbX {
    fn ring(&self) -> Ring {
        self.f.ring()
    }

    fn dim(&self, n: usize) -> Result<usize> {
        self.f.dim(n)
    }

    fn on_morphism(&self, f: &GrMorphism) -> Result<Matrix> {
        self.f.on_morphism(f)
    }

    fn name(&self) -> String {
        self.f.name()
    }
}

/// `X(A) = k[Hom_gr(A, ℤ/2)]`. Basis vectors of `X(n)` are characters encoded
/// as bitmasks: bit `k` is the value on `e_{k+1}`.
#[derive(Clone, Debug)]
pub struct HomZ2X {
    ring: Ring,
}

const HOM_Z2_MAX_RANK: usize = 16;

impl HomZ2X {
    pub fn new(ring: Ring) -> Self {
        HomZ2X { ring }
    }

    /// `χ ∘ φ` for a character `χ` of the target.
    pub fn pull_back(f: &GrMorphism, chi: usize) -> usize {
        let mut out = 0;
        for (j, w) in f.images().iter().enumerate() {
            let parity: i64 = w
                .exponent_sums()
                .iter()
                .enumerate()
                .filter(|(k, _)| chi >> k & 1 == 1)
                .map(|(_, e)| e.rem_euclid(2))
                .sum();
            if parity % 2 == 1 {
                out |= 1 << j;
            }
        }
        out
    }
}

impl ContravariantX for HomZ2X {
    fn ring(&self) -> Ring {
        self.ring
    }

    fn dim(&self, n: usize) -> Result<usize> {
        if n > HOM_Z2_MAX_RANK {
            return Err(Error::InvalidArgument(format!(
                "k[Hom(-, Z/2)] is tabulated up to rank {HOM_Z2_MAX_RANK}"
            )));
        }
        Ok(1 << n)
    }

    fn on_morphism(&self, f: &GrMorphism) -> Result<Matrix> {
        let (rows, cols) = (self.dim(f.src())?, self.dim(f.dst())?);
        let mut m = Matrix::zeros(self.ring, rows, cols);
        for chi in 0..cols {
            m.set_i64(HomZ2X::pull_back(f, chi), chi, 1);
        }
        Ok(m)
    }

    fn name(&self) -> String {
        "hom-zmod2".into()
    }

    fn basis_label(&self, n: usize, i: usize) -> String {
        let vals: Vec<String> = (0..n).map(|k| (i >> k & 1).to_string()).collect();
        format!("({})", vals.join(","))
    }
}

/// `X(s) = Σ c X(f)` for a formal sum `s: src -> dst`.
pub fn evaluate(x: &dyn ContravariantX, s: &FormalSum) -> Result<Matrix> {
    let mut out = Matrix::zeros(x.ring(), x.dim(s.src())?, x.dim(s.dst())?);
    for (f, c) in s.terms() {
        out.add_block(0, 0, &x.on_morphism(f)?.scale_i64(c));
    }
    Ok(out)
}

/// `δ_1, ..., δ_{n_max}` without the `d∘d = 0` check.
pub(crate) fn deltas(x: &dyn ContravariantX, r: usize, n_max: usize, exec: Execution) -> Result<Vec<Matrix>> {
    let degrees: Vec<usize> = (1..=n_max).collect();
    par::try_map(exec, &degrees, |&n| evaluate(x, &bar_element(n, r)?))
}

/// The complex with `C_n = X(n+r+1)` and `d_n = δ_n` for `n <= n_max`.
pub fn tor_complex(x: &dyn ContravariantX, r: usize, n_max: usize) -> Result<ChainComplex> {
    tor_complex_with(x, r, n_max, Execution::default())
}

pub fn tor_complex_with(x: &dyn ContravariantX, r: usize, n_max: usize, exec: Execution) -> Result<ChainComplex> {
    if n_max == 0 {
        return Err(Error::Precondition("the Tor complex needs n_max >= 1".into()));
    }
    let ds = deltas(x, r, n_max, exec)?;
    ChainComplex::new(x.ring(), ds).map_err(|e| match e {
        Error::NotAComplex { degree } => Error::Functoriality(format!(
            "{}: delta_{degree} * delta_{} != 0",
            x.name(),
            degree + 1
        )),
        e => e,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TorResult {
    pub x: String,
    pub r: usize,
    pub ring: Ring,
    pub groups: Vec<HomologyGroup>,
}

/// `Tor_n^gr(X, 𝔞 ⊗ P_r)` for each requested degree. Every answer is exact:
/// `H_n` only involves `δ_n` and `δ_{n+1}`.
pub fn tor(x: &dyn ContravariantX, r: usize, degrees: &[usize], exec: Execution) -> Result<TorResult> {
    let n_max = degrees.iter().max().map_or(1, |&n| n + 1);
    let c = tor_complex_with(x, r, n_max, exec)?;
    Ok(TorResult {
        x: x.name(),
        r,
        ring: x.ring(),
        groups: c.homology_many(degrees, exec)?,
    })
}

/// `Tor_n` from an already built complex, refusing degrees it cannot answer.
pub fn tor_from_complex(c: &ChainComplex, n: usize) -> Result<HomologyGroup> {
    if n + 1 > c.len() {
        return Err(Error::Precondition(format!(
            "Tor_{n} needs delta_{} but the complex stops at n_max = {}",
            n + 1,
            c.len()
        )));
    }
    c.homology(n)
}
