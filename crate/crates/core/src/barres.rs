//! Formal sums of parallel morphisms and the bar differentials.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::word::{FreeWord, GrMorphism};

/// Integer combination of parallel morphisms `F_src -> F_dst`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSum {
    src: usize,
    dst: usize,
    terms: BTreeMap<GrMorphism, i64>,
}

impl FormalSum {
    pub fn zero(src: usize, dst: usize) -> Self {
        FormalSum { src, dst, terms: BTreeMap::new() }
    }

    pub fn singleton(m: GrMorphism, coeff: i64) -> Self {
        let mut s = FormalSum::zero(m.src(), m.dst());
        s.add_term(m, coeff);
        s
    }

    pub fn identity(n: usize) -> Self {
        FormalSum::singleton(GrMorphism::identity(n), 1)
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn dst(&self) -> usize {
        self.dst
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GrMorphism, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, m: &GrMorphism) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: GrMorphism, coeff: i64) {
        assert!(
            m.src() == self.src && m.dst() == self.dst,
            "term {m} is not parallel to {} -> {}",
            self.src,
            self.dst
        );
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry(m).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    pub fn add(&self, other: &FormalSum) -> Result<FormalSum> {
        if (self.src, self.dst) != (other.src, other.dst) {
            return Err(Error::RankMismatch { expected: self.src, found: other.src });
        }
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> FormalSum {
        if k == 0 {
            return FormalSum::zero(self.src, self.dst);
        }
        FormalSum {
            src: self.src,
            dst: self.dst,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    /// Bilinear extension of `g ∘ f`.
    pub fn compose(s: &FormalSum, t: &FormalSum) -> Result<FormalSum> {
        if t.dst != s.src {
            return Err(Error::RankMismatch { expected: s.src, found: t.dst });
        }
        let mut out = FormalSum::zero(t.src, s.dst);
        for (g, a) in s.terms() {
            for (f, b) in t.terms() {
                out.add_term(GrMorphism::compose(g, f)?, a * b);
            }
        }
        Ok(out)
    }

    /// Bilinear extension of the free product of morphisms.
    pub fn free_product(s: &FormalSum, t: &FormalSum) -> FormalSum {
        let mut out = FormalSum::zero(s.src + t.src, s.dst + t.dst);
        for (f, a) in s.terms() {
            for (g, b) in t.terms() {
                out.add_term(GrMorphism::free_product(f, g), a * b);
            }
        }
        out
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let tuple = tuple_string(m);
            match (k, c) {
                (0, 1) => write!(f, "{tuple}")?,
                (0, -1) => write!(f, "-{tuple}")?,
                (0, c) => write!(f, "{c}{tuple}")?,
                (_, 1) => write!(f, " + {tuple}")?,
                (_, -1) => write!(f, " - {tuple}")?,
                (_, c) if c < 0 => write!(f, " - {}{tuple}", -c)?,
                (_, c) => write!(f, " + {c}{tuple}")?,
            }
        }
        Ok(())
    }
}

fn tuple_string(m: &GrMorphism) -> String {
    let ws: Vec<String> = m.images().iter().map(FreeWord::to_string).collect();
    format!("({})", ws.join(", "))
}

impl Serialize for FormalSum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            coeff: i64,
            morphism: String,
        }
        #[derive(Serialize)]
        struct Wire {
            src: usize,
            dst: usize,
            terms: Vec<Term>,
        }
        Wire {
            src: self.src,
            dst: self.dst,
            terms: self
                .terms()
                .map(|(m, c)| Term { coeff: c, morphism: tuple_string(m) })
                .collect(),
        }
        .serialize(s)
    }
}

/// Which face map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FaceKind {
    A,
    B(usize),
    C,
}

impl fmt::Display for FaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FaceKind::A => write!(f, "a"),
            FaceKind::B(i) => write!(f, "b{i}"),
            FaceKind::C => write!(f, "c"),
        }
    }
}

/// Face `ℤ^{n+r} -> ℤ^{n+r+1}` of the bar differential.
///
/// `a` drops `e1`, `b_i` merges `e_i e_{i+1}`, `c` drops `e_{n+1}`.
pub fn face(kind: FaceKind, n: usize, r: usize) -> Result<GrMorphism> {
    if n == 0 {
        return Err(Error::InvalidArgument("faces need n >= 1".into()));
    }
    let dst = n + r + 1;
    let g = |k: usize| FreeWord::generator(k, dst);
    let images: Vec<FreeWord> = match kind {
        FaceKind::A => (2..=dst).map(g).collect(),
        FaceKind::B(i) => {
            if i == 0 || i > n {
                return Err(Error::InvalidArgument(format!("b_{i} needs 1 <= i <= {n}")));
            }
            let mut v: Vec<FreeWord> = (1..i).map(g).collect();
            v.push(g(i).mul(&g(i + 1)));
            v.extend((i + 2..=dst).map(g));
            v
        }
        FaceKind::C => (1..=n).chain(n + 2..=dst).map(g).collect(),
    };
    GrMorphism::new(n + r, dst, images)
}

/// `a - b_1 + b_2 - ... + (-1)^n b_n + (-1)^{n+1} c`.
pub fn bar_element(n: usize, r: usize) -> Result<FormalSum> {
    let mut s = FormalSum::zero(n + r, n + r + 1);
    s.add_term(face(FaceKind::A, n, r)?, 1);
    for i in 1..=n {
        s.add_term(face(FaceKind::B(i), n, r)?, sign(i));
    }
    s.add_term(face(FaceKind::C, n, r)?, sign(n + 1));
    Ok(s)
}

pub(crate) fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) { 1 } else { -1 }
}

/// One cell of the `d^2 = 0` grid.
#[derive(Clone, Debug, Serialize)]
pub struct DSquaredCell {
    pub n: usize,
    pub r: usize,
    pub pass: bool,
    /// Nonzero terms left after cancellation.
    pub residue: FormalSum,
}

#[derive(Clone, Debug, Serialize)]
pub struct DSquaredReport {
    pub n_max: usize,
    pub r_max: usize,
    pub cells: Vec<DSquaredCell>,
}

impl DSquaredReport {
    pub fn all_pass(&self) -> bool {
        self.cells.iter().all(|c| c.pass)
    }
}

fn grid(n_max: usize, r_max: usize, n_min: usize) -> Vec<(usize, usize)> {
    (n_min..=n_max).flat_map(|n| (0..=r_max).map(move |r| (n, r))).collect()
}

/// Checks `bar_element(n+1, r) ∘ bar_element(n, r) = 0` on the grid.
pub fn check_d_squared(n_max: usize, r_max: usize) -> DSquaredReport {
    check_d_squared_with(n_max, r_max, Execution::default())
}

pub fn check_d_squared_with(n_max: usize, r_max: usize, exec: Execution) -> DSquaredReport {
    let cells = par::map(exec, &grid(n_max, r_max, 1), |&(n, r)| {
        let residue = FormalSum::compose(
            &bar_element(n + 1, r).expect("n >= 1"),
            &bar_element(n, r).expect("n >= 1"),
        )
        .expect("composable by construction");
        DSquaredCell { n, r, pass: residue.is_zero(), residue }
    });
    DSquaredReport { n_max, r_max, cells }
}

/// Which structural identity a check refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityKind {
    /// `a^{n,r} = u(ℤ^{n+r}, ℤ)`
    AIsInclusion,
    /// `b_{i+1}^{n,r} = ℤ * b_i^{n-1,r}`
    BShift,
    /// `c^{n,r} = ℤ * c^{n-1,r}`
    CShift,
    /// `ψ = b_1^{n,r}` for `τ = e1 e2`
    PsiIsB1,
    /// `θ ∘ θ^{-1} = θ^{-1} ∘ θ = id`
    ThetaInvertible,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub kind: IdentityKind,
    pub n: usize,
    pub r: usize,
    pub i: Option<usize>,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomotopyIdentityReport {
    pub n_max: usize,
    pub r_max: usize,
    pub checks: Vec<IdentityCheck>,
}

impl HomotopyIdentityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// `θ` on `ℤ * ℤ^{m}`: `e1 -> e1 e2`, identity elsewhere; with `inverse`,
/// `e1 -> e1 e2^-1`.
pub fn theta(m: usize, inverse: bool) -> GrMorphism {
    let n = m + 1;
    let e2 = FreeWord::generator(2, n);
    let e2 = if inverse { e2.inverse() } else { e2 };
    let mut images = vec![FreeWord::generator(1, n).mul(&e2)];
    images.extend((2..=n).map(|k| FreeWord::generator(k, n)));
    GrMorphism::new(n, n, images).expect("well-formed")
}

/// `ψ: T * A -> T * B` from `τ: T -> T * B` and `φ: A -> B`.
pub fn psi(tau: &GrMorphism, phi: &GrMorphism) -> Result<GrMorphism> {
    let t = tau.src();
    let u = GrMorphism::inclusion_last(phi.dst(), t);
    if tau.dst() != u.dst() {
        return Err(Error::RankMismatch { expected: u.dst(), found: tau.dst() });
    }
    let second = GrMorphism::compose(&u, phi)?;
    let mut images = tau.images().to_vec();
    images.extend_from_slice(second.images());
    GrMorphism::new(t + phi.src(), u.dst(), images)
}

fn cell_checks(n: usize, r: usize) -> Vec<IdentityCheck> {
    let mk = |kind, i, lhs: GrMorphism, rhs: GrMorphism| IdentityCheck {
        kind,
        n,
        r,
        i,
        pass: lhs == rhs,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    };
    let f = |k, n| face(k, n, r).expect("in range");
    let id1 = GrMorphism::identity(1);
    let mut out = vec![mk(
        IdentityKind::AIsInclusion,
        None,
        f(FaceKind::A, n),
        GrMorphism::inclusion_last(n + r, 1),
    )];
    if n >= 2 {
        for i in 1..n {
            out.push(mk(
                IdentityKind::BShift,
                Some(i),
                f(FaceKind::B(i + 1), n),
                GrMorphism::free_product(&id1, &f(FaceKind::B(i), n - 1)),
            ));
        }
        out.push(mk(
            IdentityKind::CShift,
            None,
            f(FaceKind::C, n),
            GrMorphism::free_product(&id1, &f(FaceKind::C, n - 1)),
        ));
    }
    // τ = e1 e2 in ℤ * ℤ^{n+r}, φ = a^{n-1,r} (the identity of ℤ^r when n = 1)
    let m = n + r;
    let tau = GrMorphism::new(1, m + 1, vec![theta(m, false).images()[0].clone()]).unwrap();
    let phi = if n >= 2 { f(FaceKind::A, n - 1) } else { GrMorphism::inclusion_last(r, 1) };
    let psi = psi(&tau, &phi).expect("ranks match");
    out.push(mk(IdentityKind::PsiIsB1, Some(1), psi, f(FaceKind::B(1), n)));
    let th = theta(m, false);
    let inv = theta(m, true);
    let both = GrMorphism::compose(&th, &inv).unwrap() == GrMorphism::identity(m + 1)
        && GrMorphism::compose(&inv, &th).unwrap() == GrMorphism::identity(m + 1);
    out.push(IdentityCheck {
        kind: IdentityKind::ThetaInvertible,
        n,
        r,
        i: None,
        pass: both,
        lhs: th.to_string(),
        rhs: inv.to_string(),
    });
    out
}

/// Checks the structural identities behind the contracting homotopy.
pub fn check_homotopy_identities(n_max: usize, r_max: usize) -> HomotopyIdentityReport {
    check_homotopy_identities_with(n_max, r_max, Execution::default())
}

pub fn check_homotopy_identities_with(
    n_max: usize,
    r_max: usize,
    exec: Execution,
) -> HomotopyIdentityReport {
    let checks = par::map(exec, &grid(n_max, r_max, 1), |&(n, r)| cell_checks(n, r))
        .into_iter()
        .flatten()
        .collect();
    HomotopyIdentityReport { n_max, r_max, checks }
}
