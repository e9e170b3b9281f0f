//! The acceptance battery, one verdict per criterion.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::barres::{check_d_squared_with, check_homotopy_identities_with};
use crate::coend::{functor_tensor, stabilize, stable_h1};
use crate::error::Result;
use crate::functor::{
    check_recollement_units, cross_effect, degree, unit_kernel_cross_effect_dim, unit_to_beta, ExprFunctor,
    FunctorExpr, SymModule,
};
use crate::gcat::{case_rng, check_random_cases};
use crate::linalg::{snf, ChainComplex, Matrix, Ring};
use crate::par::Execution;
use crate::torgr::{homotopy_check, tor, tor_complex, verify_xi, AbX, ConstantX, HomZ2X, IdentityXi, ProjectionXi, SampleSpec};

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    pub pass: bool,
    pub detail: String,
    /// Time budget in seconds, as stated by the criterion.
    pub budget_secs: Option<u64>,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub criteria: Vec<CriterionResult>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.criteria.iter().all(|c| c.pass)
    }
}

type Check = fn(u64, Execution) -> Result<(bool, String)>;

pub const CRITERIA: [(u8, &str, Option<u64>, Check); 10] = [
    (1, "symbolic d^2 = 0", Some(10), d_squared),
    (2, "homotopy identities", Some(5), homotopy_identities),
    (3, "constant functor homotopy and Tor vanishing", None, constant_homotopy),
    (4, "negative xi test", None, negative_xi),
    (5, "Tor of the dual abelianization", Some(1), tor_dual),
    (6, "recollement layer", Some(30), recollement),
    (7, "cross-effect and degree table", None, degree_table),
    (8, "coend Dual(Id) with Id", Some(30), coend_dual_id),
    (9, "G calculus", Some(60), gcat_cases),
    (10, "exact linear algebra self-checks", None, linalg_checks),
];

fn expr(s: &str, ring: Ring) -> Result<ExprFunctor> {
    ExprFunctor::new(FunctorExpr::parse(s)?, ring)
}

fn d_squared(_: u64, exec: Execution) -> Result<(bool, String)> {
    let r = check_d_squared_with(6, 2, exec);
    Ok((r.all_pass(), format!("{} cells, n <= 6, r <= 2", r.cells.len())))
}

fn homotopy_identities(_: u64, exec: Execution) -> Result<(bool, String)> {
    let r = check_homotopy_identities_with(8, 3, exec);
    let failed = r.checks.iter().filter(|c| !c.pass).count();
    Ok((r.all_pass(), format!("{} identities, {failed} failed, n <= 8, r <= 3", r.checks.len())))
}

fn constant_homotopy(_: u64, exec: Execution) -> Result<(bool, String)> {
    let mut ok = true;
    for ring in [Ring::Z, Ring::Q, Ring::Fp(2)] {
        let x = ConstantX::new(ring, 1);
        for r in 0..=2 {
            ok &= homotopy_check(&x, &IdentityXi, r, 6, exec)?.all_pass();
            ok &= tor(&x, r, &[0, 1, 2, 3, 4, 5], exec)?.groups.iter().all(|g| g.is_zero());
        }
    }
    Ok((ok, "n <= 6, r <= 2 over Z, Q, F2; Tor_n = 0 for n <= 5".into()))
}

fn negative_xi(seed: u64, exec: Execution) -> Result<(bool, String)> {
    let spec = SampleSpec { seed, ..SampleSpec::default() };
    let r = verify_xi(&HomZ2X::new(Ring::Fp(2)), &ProjectionXi, &spec, exec)?;
    let Some(w) = r.hypotheses[2].witness.clone() else {
        return Ok((false, "hypothesis (3) found no counterexample".into()));
    };
    let expected = (w.a, w.b, w.t, w.phi.as_str(), w.tau.as_deref())
        == (1, 1, 1, "(x1) : 1 -> 1", Some("(x1*x2) : 1 -> 2"));
    let ok = r.pass(1) && r.pass(2) && !r.pass(3) && expected;
    Ok((
        ok,
        format!(
            "(1) {} (2) {} (3) {}; witness A=B=T=Z phi={} tau={} on {}: {} vs {}",
            verdict(r.pass(1)),
            verdict(r.pass(2)),
            verdict(r.pass(3)),
            w.phi,
            w.tau.unwrap_or_default(),
            w.input,
            w.lhs,
            w.rhs
        ),
    ))
}

fn tor_dual(_: u64, exec: Execution) -> Result<(bool, String)> {
    let x = AbX::new(std::sync::Arc::new(expr("dual(id)", Ring::Z)?))?;
    let c = tor_complex(&x, 0, 2)?;
    let d1 = Matrix::from_rows(Ring::Z, &[vec![0, 0]]);
    let d2 = Matrix::from_rows(Ring::Z, &[vec![-1, 0, 0], vec![0, 0, 1]]);
    let t = tor(&x, 0, &[0, 1], exec)?;
    let (t0, t1) = (&t.groups[0], &t.groups[1]);
    let ok = c.boundary(1) == Some(&d1)
        && c.boundary(2) == Some(&d2)
        && t0.free_rank == 1
        && t0.torsion.is_empty()
        && t1.is_zero();
    Ok((ok, format!("Tor_0 = {t0}, Tor_1 = {t1}")))
}

fn recollement(_: u64, _: Execution) -> Result<(bool, String)> {
    let mut ok = true;
    for m in [SymModule::trivial(2, Ring::Q), SymModule::sign(2, Ring::Q), SymModule::regular(2, Ring::Q)] {
        ok &= check_recollement_units(&m)?.pass();
    }
    let unit = unit_to_beta(ExprFunctor::shared(FunctorExpr::parse("pow(id,2)")?, Ring::Q)?, 2)?;
    let k = unit_kernel_cross_effect_dim(&unit)?;
    ok &= k == 0;
    Ok((ok, format!("cr2(alpha2 M) = M for trivial, sign, regular; cr2 of the unit kernel has dim {k}")))
}

fn degree_table(_: u64, _: Execution) -> Result<(bool, String)> {
    let table = [("id", 1), ("pow(id,2)", 2), ("sym(2)", 2), ("ext(2)", 2), ("pow(id,3)", 3)];
    let mut ok = true;
    let mut parts = Vec::new();
    for (s, want) in table {
        let d = degree(&expr(s, Ring::Q)?, 5)?;
        ok &= d == Some(want);
        parts.push(format!("{s}:{}", d.map_or("?".into(), |d| d.to_string())));
    }
    let cr2 = cross_effect(&expr("pow(id,2)", Ring::Q)?, 2)?.dim;
    ok &= cr2 == 2;
    Ok((ok, format!("{}; dim cr2(pow(id,2)) = {cr2}", parts.join(" "))))
}

fn coend_dual_id(_: u64, exec: Execution) -> Result<(bool, String)> {
    let (x, g) = (expr("dual(id)", Ring::Z)?, expr("id", Ring::Z)?);
    let p = functor_tensor(&x, &g, 3, &[], exec)?;
    let s = stabilize(&x, &g, 2, 5, exec)?;
    let h = stable_h1(&FunctorExpr::parse("dual(id)")?, Ring::Z, exec)?;
    let is_z = |v: &crate::coend::CoendValue| v.free_rank == 1 && v.torsion.is_empty();
    let ok = is_z(&p.value)
        && s.stable_at.is_some_and(|n| n <= 3)
        && s.value.as_ref().is_some_and(is_z)
        && h.coend.value.as_ref().is_some_and(is_z);
    Ok((
        ok,
        format!(
            "N=3 value {}, stable at {}, stable_h1 {}",
            p.value,
            s.stable_at.map_or("-".into(), |n| n.to_string()),
            h.coend.value.map_or("-".into(), |v| v.to_string())
        ),
    ))
}

fn gcat_cases(seed: u64, exec: Execution) -> Result<(bool, String)> {
    let r = check_random_cases(200, 4, seed, exec);
    Ok((r.all_pass(), format!("200 cases, ranks <= 4, {} failures", r.failures().len())))
}

/// A random integer matrix with dims in `1..=12` and entries in `-9..=9`.
pub fn random_integer_matrix(seed: u64, case: u64) -> Matrix {
    let mut rng = case_rng(seed, case);
    let (r, c) = (rng.random_range(1..=12), rng.random_range(1..=12));
    let entries: Vec<i64> = (0..r * c).map(|_| rng.random_range(-9..=9)).collect();
    Matrix::from_i64(Ring::Z, r, c, &entries)
}

/// `U M V = D`, `U` and `V` unimodular, diagonal divisor chain.
pub fn snf_is_valid(m: &Matrix) -> Result<bool> {
    let s = snf(m)?;
    if &(&s.u * m) * &s.v != s.d {
        return Ok(false);
    }
    let unit = |x: &Matrix| x.determinant().abs().is_one();
    if !unit(&s.u) || !unit(&s.v) {
        return Ok(false);
    }
    for i in 0..s.d.rows() {
        for j in 0..s.d.cols() {
            if i != j && !s.d.get(i, j).is_zero() {
                return Ok(false);
            }
        }
    }
    let divs: Vec<BigInt> = s.divisors();
    let diag: Vec<BigInt> = (0..s.d.rows().min(s.d.cols())).map(|i| s.d.get(i, i).numer().clone()).collect();
    // nonzero positive divisors first, each dividing the next, then zeros
    let nonzero = diag.iter().take_while(|x| !x.is_zero()).count();
    Ok(diag[..nonzero].iter().all(|x| x.is_positive())
        && diag[nonzero..].iter().all(Zero::is_zero)
        && divs.windows(2).all(|w| w[1].is_multiple_of(&w[0])))
}

fn linalg_checks(seed: u64, _: Execution) -> Result<(bool, String)> {
    let mut bad = 0;
    for k in 0..500 {
        if !snf_is_valid(&random_integer_matrix(seed, k))? {
            bad += 1;
        }
    }
    let c = ChainComplex::new(Ring::Z, vec![Matrix::from_i64(Ring::Z, 1, 1, &[2])])?;
    let (h0, h1) = (c.homology(0)?, c.homology(1)?);
    let ok = bad == 0 && h0.to_string() == "Z/2" && h1.is_zero();
    Ok((ok, format!("500 SNFs, {bad} invalid; x2 complex H0 = {h0}, H1 = {h1}")))
}

fn verdict(p: bool) -> &'static str {
    if p { "PASS" } else { "FAIL" }
}

/// Runs one criterion; an engine error counts as FAIL with the message.
pub fn run_criterion(id: u8, seed: u64, exec: Execution) -> Option<CriterionResult> {
    let &(id, name, budget_secs, check) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let (pass, detail) = check(seed, exec).unwrap_or_else(|e| (false, format!("error: {e}")));
    Some(CriterionResult { id, name: name.into(), pass, detail, budget_secs, elapsed: start.elapsed() })
}

pub fn run_suite(seed: u64, exec: Execution) -> SuiteReport {
    let criteria = CRITERIA.iter().filter_map(|c| run_criterion(c.0, seed, exec)).collect();
    SuiteReport { seed, criteria }
}

impl SuiteReport {
    /// `[PASS] 1 name: detail (0.12 s)` per criterion.
    pub fn table(&self) -> String {
        self.criteria
            .iter()
            .map(|c| {
                format!(
                    "[{}] {:>2} {}: {} ({:.2} s)\n",
                    verdict(c.pass),
                    c.id,
                    c.name,
                    c.detail,
                    c.elapsed.as_secs_f64()
                )
            })
            .collect()
    }
}
