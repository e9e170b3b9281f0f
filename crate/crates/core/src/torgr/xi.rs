//! Maps `ξ(A,T): X(A) -> X(T*A)`, a bounded checker for the three hypotheses
//! of the vanishing criterion, and the contracting-homotopy check.

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use super::{deltas, ContravariantX};
use crate::error::{Error, Result};
use crate::gcat::case_rng;
use crate::linalg::{Matrix, Ring};
use crate::par::{self, Execution};
use crate::word::{enumerate_words, is_basis, FreeWord, GrMorphism, Letter};

/// Supplies `ξ(A,T)` as a `dim X(t+a) x dim X(a)` matrix.
pub trait XiProvider: Send + Sync {
    fn xi(&self, x: &dyn ContravariantX, a: usize, t: usize) -> Result<Matrix>;
    fn name(&self) -> String;
}

/// `ξ(A,T) = X(p)` for the retraction `p: T*A -> A` killing `T`. On
/// `k[Hom(-, ℤ/2)]` this extends characters by zero.
#[derive(Clone, Copy, Debug, Default)]
pub struct ProjectionXi;

impl XiProvider for ProjectionXi {
    fn xi(&self, x: &dyn ContravariantX, a: usize, t: usize) -> Result<Matrix> {
        x.on_morphism(&GrMorphism::projection_last(a, t))
    }

    fn name(&self) -> String {
        "projection".into()
    }
}

/// The identity matrix; only well-shaped when `dim X` is constant.
#[derive(Clone, Copy, Debug, Default)]
pub struct IdentityXi;

impl XiProvider for IdentityXi {
    fn xi(&self, x: &dyn ContravariantX, a: usize, _t: usize) -> Result<Matrix> {
        Ok(Matrix::identity(x.ring(), x.dim(a)?))
    }

    fn name(&self) -> String {
        "identity".into()
    }
}

type XiFn = dyn Fn(&dyn ContravariantX, usize, usize) -> Result<Matrix> + Send + Sync;

/// A `ξ` given by a closure.
pub struct ClosureXi {
    name: String,
    f: Box<XiFn>,
}

impl ClosureXi {
    pub fn new(
        name: impl Into<String>,
        f: impl Fn(&dyn ContravariantX, usize, usize) -> Result<Matrix> + Send + Sync + 'static,
    ) -> Self {
        ClosureXi { name: name.into(), f: Box::new(f) }
    }
}

impl XiProvider for ClosureXi {
    fn xi(&self, x: &dyn ContravariantX, a: usize, t: usize) -> Result<Matrix> {
        (self.f)(x, a, t)
    }

    fn name(&self) -> String {
        self.name.clone()
    }
}

fn checked_xi(x: &dyn ContravariantX, xi: &dyn XiProvider, a: usize, t: usize) -> Result<Matrix> {
    let m = xi.xi(x, a, t)?;
    let want = (x.dim(t + a)?, x.dim(a)?);
    if m.shape() != want || m.ring() != x.ring() {
        return Err(Error::Shape(format!(
            "xi({a},{t}) is {}x{} over {}, expected {}x{} over {}",
            m.rows(),
            m.cols(),
            m.ring(),
            want.0,
            want.1,
            x.ring()
        )));
    }
    Ok(m)
}

/// Bounds for [`verify_xi`]. Ranks run over `1..=max_rank`; morphisms are
/// tuples of reduced words of length `<= max_word_len`.
#[derive(Clone, Debug, Serialize)]
pub struct SampleSpec {
    pub max_rank: usize,
    pub max_word_len: usize,
    /// Enumerated `φ` (and, for (3), `τ`) per rank triple.
    pub per_triple: usize,
    /// Extra random cases per hypothesis.
    pub random: usize,
    pub seed: u64,
}

impl Default for SampleSpec {
    fn default() -> Self {
        SampleSpec { max_rank: 3, max_word_len: 4, per_triple: 6, random: 100, seed: 0 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct XiWitness {
    pub a: usize,
    pub b: usize,
    pub t: usize,
    pub phi: String,
    pub tau: Option<String>,
    /// Basis vector of the source on which the two composites differ.
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct HypothesisResult {
    pub hypothesis: u8,
    pub pass: bool,
    pub enumerated: usize,
    pub sampled: usize,
    pub witness: Option<XiWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct XiReport {
    pub x: String,
    pub xi: String,
    pub ring: Ring,
    pub spec: SampleSpec,
    pub hypotheses: Vec<HypothesisResult>,
}

impl XiReport {
    pub fn pass(&self, h: u8) -> bool {
        self.hypotheses.iter().any(|r| r.hypothesis == h && r.pass)
    }

    pub fn all_pass(&self) -> bool {
        self.hypotheses.iter().all(|r| r.pass)
    }
}

fn format_vector(x: &dyn ContravariantX, n: usize, m: &Matrix, col: usize) -> String {
    let mut parts = Vec::new();
    for i in 0..m.rows() {
        let c = m.get(i, col);
        if c.is_one() {
            parts.push(x.basis_label(n, i));
        } else if !c.is_zero() {
            parts.push(format!("{}*{}", crate::linalg::scalar_to_string(c), x.basis_label(n, i)));
        }
    }
    if parts.is_empty() { "0".into() } else { parts.join(" + ") }
}

fn first_difference(l: &Matrix, r: &Matrix) -> Option<usize> {
    (0..l.cols()).find(|&j| (0..l.rows()).any(|i| l.get(i, j) != r.get(i, j)))
}

/// One instance: compares `ξ(A,T) X(φ)` with `X(g) ξ(B,T)` for `g = T*φ`
/// or `g = ψ`.
struct Case {
    a: usize,
    b: usize,
    t: usize,
    phi: GrMorphism,
    tau: Option<GrMorphism>,
}

impl Case {
    fn target_morphism(&self) -> Result<GrMorphism> {
        match &self.tau {
            None => Ok(GrMorphism::free_product(&GrMorphism::identity(self.t), &self.phi)),
            Some(tau) => crate::barres::psi(tau, &self.phi),
        }
    }

    fn check(&self, x: &dyn ContravariantX, xi: &dyn XiProvider) -> Result<Option<XiWitness>> {
        let lhs = &checked_xi(x, xi, self.a, self.t)? * &x.on_morphism(&self.phi)?;
        let rhs = &x.on_morphism(&self.target_morphism()?)? * &checked_xi(x, xi, self.b, self.t)?;
        Ok(first_difference(&lhs, &rhs).map(|j| XiWitness {
            a: self.a,
            b: self.b,
            t: self.t,
            phi: self.phi.to_string(),
            tau: self.tau.as_ref().map(ToString::to_string),
            input: x.basis_label(self.b, j),
            lhs: format_vector(x, self.t + self.a, &lhs, j),
            rhs: format_vector(x, self.t + self.a, &rhs, j),
        }))
    }
}

/// `θ` on `T*B`: `τ` on `T`, identity on `B`.
fn theta_invertible(tau: &GrMorphism, b: usize) -> bool {
    let t = tau.src();
    let mut images = tau.images().to_vec();
    images.extend_from_slice(GrMorphism::inclusion_last(b, t).images());
    is_basis(&images, t + b)
}

/// The first `limit` tuples of `len` words from `pool`, in lex order of indices.
fn tuples(pool: &[FreeWord], len: usize, limit: usize) -> Vec<Vec<FreeWord>> {
    let mut out = Vec::new();
    if pool.is_empty() && len > 0 {
        return out;
    }
    let mut idx = vec![0usize; len];
    while out.len() < limit {
        out.push(idx.iter().map(|&i| pool[i].clone()).collect());
        let Some(k) = (0..len).rev().find(|&k| idx[k] + 1 < pool.len()) else {
            break;
        };
        idx[k] += 1;
        for j in k + 1..len {
            idx[j] = 0;
        }
    }
    out
}

fn random_word<R: Rng>(rng: &mut R, rank: usize, max_len: usize) -> FreeWord {
    let len = rng.random_range(0..=max_len);
    let letters: Vec<Letter> = (0..len)
        .map(|_| {
            let g = rng.random_range(1..=rank) as Letter;
            if rng.random_bool(0.5) { g } else { -g }
        })
        .collect();
    crate::word::reduce(&letters, rank).expect("letters in range")
}

fn random_morphism<R: Rng>(rng: &mut R, src: usize, dst: usize, max_len: usize) -> GrMorphism {
    let images = (0..src).map(|_| random_word(rng, dst, max_len)).collect();
    GrMorphism::new(src, dst, images).expect("well-formed")
}

/// `τ: T -> T*B` with `θ` invertible: a random automorphism composed with
/// the inclusion of `T`.
fn random_tau<R: Rng>(rng: &mut R, t: usize, b: usize, max_len: usize) -> GrMorphism {
    for _ in 0..64 {
        let tau = random_morphism(rng, t, t + b, max_len);
        if theta_invertible(&tau, b) {
            return tau;
        }
    }
    GrMorphism::inclusion_first(t, b)
}

fn triples(max_rank: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for t in 1..=max_rank {
        for b in 1..=max_rank {
            for a in 1..=max_rank {
                out.push((t, b, a));
            }
        }
    }
    out
}

fn enumerated_cases(spec: &SampleSpec, with_tau: bool) -> Vec<Vec<Case>> {
    triples(spec.max_rank)
        .into_iter()
        .map(|(t, b, a)| {
            let pool = enumerate_words(b, spec.max_word_len);
            let phis = tuples(&pool, a, spec.per_triple);
            let taus: Vec<Option<GrMorphism>> = if with_tau {
                let tpool = enumerate_words(t + b, spec.max_word_len);
                tuples(&tpool, t, spec.per_triple * 64)
                    .into_iter()
                    .map(|ws| GrMorphism::new(t, t + b, ws).expect("well-formed"))
                    .filter(|tau| theta_invertible(tau, b))
                    .take(spec.per_triple)
                    .map(Some)
                    .collect()
            } else {
                vec![None]
            };
            let mut cases = Vec::new();
            for ws in phis {
                let phi = GrMorphism::new(a, b, ws).expect("well-formed");
                for tau in &taus {
                    cases.push(Case { a, b, t, phi: phi.clone(), tau: tau.clone() });
                }
            }
            cases
        })
        .collect()
}

fn random_cases(spec: &SampleSpec, with_tau: bool) -> Vec<Case> {
    (0..spec.random as u64)
        .map(|k| {
            let mut rng = case_rng(spec.seed, k + if with_tau { 1 << 32 } else { 0 });
            let (t, b, a) = (
                rng.random_range(1..=spec.max_rank),
                rng.random_range(1..=spec.max_rank),
                rng.random_range(1..=spec.max_rank),
            );
            let phi = random_morphism(&mut rng, a, b, spec.max_word_len);
            let tau = with_tau.then(|| random_tau(&mut rng, t, b, spec.max_word_len));
            Case { a, b, t, phi, tau }
        })
        .collect()
}

/// Runs a group of cases in order, stopping at the first counterexample.
fn run_group(cases: &[Case], x: &dyn ContravariantX, xi: &dyn XiProvider) -> Result<(usize, Option<XiWitness>)> {
    for (k, c) in cases.iter().enumerate() {
        if let Some(w) = c.check(x, xi)? {
            return Ok((k + 1, Some(w)));
        }
    }
    Ok((cases.len(), None))
}

fn check_square(
    hypothesis: u8,
    x: &dyn ContravariantX,
    xi: &dyn XiProvider,
    spec: &SampleSpec,
    exec: Execution,
) -> Result<HypothesisResult> {
    let with_tau = hypothesis == 3;
    let groups = enumerated_cases(spec, with_tau);
    let results = par::try_map(exec, &groups, |g| run_group(g, x, xi))?;
    let mut enumerated = 0;
    for (n, w) in results {
        enumerated += n;
        if w.is_some() {
            return Ok(HypothesisResult { hypothesis, pass: false, enumerated, sampled: 0, witness: w });
        }
    }
    let random = random_cases(spec, with_tau);
    let (sampled, witness) = run_group(&random, x, xi)?;
    Ok(HypothesisResult { hypothesis, pass: witness.is_none(), enumerated, sampled, witness })
}

fn check_retraction(x: &dyn ContravariantX, xi: &dyn XiProvider, spec: &SampleSpec) -> Result<HypothesisResult> {
    let mut enumerated = 0;
    for t in 1..=spec.max_rank {
        for a in 1..=spec.max_rank {
            enumerated += 1;
            let m = &x.on_morphism(&GrMorphism::inclusion_last(a, t))? * &checked_xi(x, xi, a, t)?;
            if let Some(j) = first_difference(&m, &Matrix::identity(x.ring(), m.rows())) {
                let witness = XiWitness {
                    a,
                    b: a,
                    t,
                    phi: GrMorphism::inclusion_last(a, t).to_string(),
                    tau: None,
                    input: x.basis_label(a, j),
                    lhs: format_vector(x, a, &m, j),
                    rhs: x.basis_label(a, j),
                };
                return Ok(HypothesisResult { hypothesis: 2, pass: false, enumerated, sampled: 0, witness: Some(witness) });
            }
        }
    }
    Ok(HypothesisResult { hypothesis: 2, pass: true, enumerated, sampled: 0, witness: None })
}

/// Checks the naturality square (1), the retraction identity (2) and the
/// `θ/τ/ψ` square (3) on a bounded enumeration plus random samples. PASS
/// means no counterexample within the bounds recorded in the report.
pub fn verify_xi(
    x: &dyn ContravariantX,
    xi: &dyn XiProvider,
    spec: &SampleSpec,
    exec: Execution,
) -> Result<XiReport> {
    if spec.max_rank == 0 {
        return Err(Error::InvalidArgument("sample spec needs max_rank >= 1".into()));
    }
    let hypotheses = vec![
        check_square(1, x, xi, spec, exec)?,
        check_retraction(x, xi, spec)?,
        check_square(3, x, xi, spec, exec)?,
    ];
    Ok(XiReport { x: x.name(), xi: xi.name(), ring: x.ring(), spec: spec.clone(), hypotheses })
}

#[derive(Clone, Debug, Serialize)]
pub struct HomotopyDegree {
    pub n: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomotopyReport {
    pub x: String,
    pub xi: String,
    pub ring: Ring,
    pub r: usize,
    pub n_max: usize,
    pub degrees: Vec<HomotopyDegree>,
}

impl HomotopyReport {
    pub fn all_pass(&self) -> bool {
        self.degrees.iter().all(|d| d.pass)
    }
}

/// Checks `δ_n h_n + h_{n-1} δ_{n-1} = Id` on `X(n+r)` for `1 <= n <= n_max`,
/// with `h_n = ξ(ℤ^{*n+r}, ℤ)`.
pub fn homotopy_check(
    x: &dyn ContravariantX,
    xi: &dyn XiProvider,
    r: usize,
    n_max: usize,
    exec: Execution,
) -> Result<HomotopyReport> {
    let ds = deltas(x, r, n_max, exec)?;
    let hs = par::try_map(exec, &(1..=n_max).collect::<Vec<_>>(), |&n| checked_xi(x, xi, n + r, 1))?;
    let degrees = (1..=n_max)
        .map(|n| {
            let mut s = &ds[n - 1] * &hs[n - 1];
            if n >= 2 {
                s = &s + &(&hs[n - 2] * &ds[n - 2]);
            }
            HomotopyDegree { n, pass: s.is_identity() }
        })
        .collect();
    Ok(HomotopyReport { x: x.name(), xi: xi.name(), ring: x.ring(), r, n_max, degrees })
}
