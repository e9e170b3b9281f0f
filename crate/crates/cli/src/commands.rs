use std::fmt::Write as _;
use std::sync::Arc;

use clap::{Args, Subcommand};
use serde::Serialize;
use serde_json::json;

use grtor_core::barres::{bar_element, check_d_squared_with, check_homotopy_identities_with};
use grtor_core::coend::{functor_tensor, stabilize, stable_h1 as stable_h1_report};
use grtor_core::functor::{
    check_recollement_units, cross_effect, degree as functor_degree, unit_kernel_cross_effect_dim, unit_to_beta,
    AlphaFunctor, BetaFunctor, ExprFunctor, FunctorExpr, SymModule, TabulatedFunctor,
};
use grtor_core::gcat::{
    check_random_cases, check_stabilizer, functor_i, functor_iota, g_compose, transitivity_witness, witness_holds,
    GMorphism,
};
use grtor_core::suite::{run_criterion, CRITERIA};
use grtor_core::torgr::{
    homotopy_check, tor as tor_groups, verify_xi, AbX, ConstantX, HomZ2X, IdentityXi, ProjectionXi, SampleSpec,
    SharedX, XiProvider,
};
use grtor_core::word::{is_basis, nielsen_reduce, parse_morphism, parse_word, parse_word_list, GrMorphism};
use grtor_core::{Error, Result, Ring};

use crate::output::{Report, Table};
use crate::GlobalOpts;

fn verdict(p: bool) -> &'static str {
    if p { "PASS" } else { "FAIL" }
}

fn words_string(ws: &[grtor_core::FreeWord]) -> Vec<String> {
    ws.iter().map(ToString::to_string).collect()
}

// ---------------------------------------------------------------- words

#[derive(Args, Debug)]
pub struct WordsCmd {
    #[command(subcommand)]
    op: WordsOp,
}

#[derive(Subcommand, Debug)]
enum WordsOp {
    /// Freely reduce a word.
    Reduce {
        word: String,
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Compose two morphisms, `g ∘ f`.
    Compose { g: String, f: String },
    /// Nielsen-reduce a list of words and decide whether it is a basis.
    Nielsen {
        words: String,
        #[arg(long)]
        rank: usize,
    },
    /// Matrix of the induced map on abelianizations.
    Abelianize { morphism: String },
}

pub fn words(c: &WordsCmd) -> Result<Report> {
    match &c.op {
        WordsOp::Reduce { word, rank } => {
            let w = parse_word(word, *rank)?;
            Ok(Report::new(&json!({ "word": w.to_string(), "rank": w.rank(), "length": w.len() }), format!("{w}\n")))
        }
        WordsOp::Compose { g, f } => {
            let h = GrMorphism::compose(&parse_morphism(g)?, &parse_morphism(f)?)?;
            Ok(Report::new(&json!({ "composite": h.to_string() }), format!("{h}\n")))
        }
        WordsOp::Nielsen { words, rank } => {
            let ws = parse_word_list(words, Some(*rank))?;
            let (reduced, record) = nielsen_reduce(&ws, *rank);
            let basis = is_basis(&ws, *rank);
            let text = format!("reduced: {{{}}}\nbasis: {basis}\n", words_string(&reduced).join(", "));
            Ok(Report::new(
                &json!({
                    "input": words_string(&ws),
                    "reduced": words_string(&reduced),
                    "steps": record.steps.len(),
                    "is_basis": basis,
                }),
                text,
            ))
        }
        WordsOp::Abelianize { morphism } => {
            let m = parse_morphism(morphism)?.abelianize();
            Ok(Report::new(&m, format!("{m}\n")))
        }
    }
}

// ---------------------------------------------------------------- gcat

#[derive(Args, Debug)]
pub struct GcatCmd {
    #[command(subcommand)]
    op: GcatOp,
}

/// Morphisms are written `"(w1, ..., wa) : a -> b | {h1, ..., hk}"`.
#[derive(Subcommand, Debug)]
enum GcatOp {
    /// `g ∘ f` in the auxiliary category.
    Compose { g: String, f: String },
    /// The underlying group morphism.
    I { f: String },
    /// The retraction obtained by killing the complement.
    Iota { f: String },
    /// An automorphism `φ` of the common target with `φ ∘ f = g`.
    Witness { f: String, g: String },
    /// Randomized laws: retraction, associativity, functoriality, witness.
    Random {
        #[arg(long, default_value_t = 200)]
        cases: u64,
        #[arg(long, default_value_t = 4)]
        max_rank: usize,
    },
    /// Samples automorphisms fixing the canonical morphism `A -> A * B`.
    Stabilizer {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

fn parse_gmorphism(s: &str) -> Result<GMorphism> {
    let (u, h) = s
        .split_once('|')
        .ok_or_else(|| Error::InvalidArgument(format!("expected 'morphism | complement', got {s:?}")))?;
    let u = parse_morphism(u.trim())?;
    let h = if h.trim().is_empty() { Vec::new() } else { parse_word_list(h.trim(), Some(u.dst()))? };
    GMorphism::new(u, h)
}

fn gmorphism_json(f: &GMorphism) -> serde_json::Value {
    json!({ "u": f.u().to_string(), "complement": words_string(f.complement()) })
}

fn gmorphism_text(f: &GMorphism) -> String {
    format!("{} | {{{}}}\n", f.u(), words_string(f.complement()).join(", "))
}

pub fn gcat(c: &GcatCmd, g: &GlobalOpts) -> Result<Report> {
    match &c.op {
        GcatOp::Compose { g: gs, f } => {
            let h = g_compose(&parse_gmorphism(gs)?, &parse_gmorphism(f)?)?;
            Ok(Report::new(&gmorphism_json(&h), gmorphism_text(&h)))
        }
        GcatOp::I { f } => {
            let h = functor_i(&parse_gmorphism(f)?);
            Ok(Report::new(&json!({ "morphism": h.to_string() }), format!("{h}\n")))
        }
        GcatOp::Iota { f } => {
            let h = functor_iota(&parse_gmorphism(f)?);
            Ok(Report::new(&json!({ "morphism": h.to_string() }), format!("{h}\n")))
        }
        GcatOp::Witness { f, g: gs } => {
            let (f, gm) = (parse_gmorphism(f)?, parse_gmorphism(gs)?);
            let phi = transitivity_witness(&f, &gm)?;
            let holds = witness_holds(&phi, &f, &gm);
            Ok(Report::new(
                &json!({ "witness": phi.to_string(), "holds": holds }),
                format!("{phi}\n{}\n", verdict(holds)),
            )
            .with_verdict(holds))
        }
        GcatOp::Random { cases, max_rank } => {
            let r = check_random_cases(*cases, *max_rank, g.seed, g.exec());
            let fails = r.failures();
            let text = format!("{} cases, ranks <= {max_rank}: {} ({} failures)\n", cases, verdict(r.all_pass()), fails.len());
            Ok(Report::new(&r, text).with_verdict(r.all_pass()))
        }
        GcatOp::Stabilizer { a, b, samples } => {
            let r = check_stabilizer(*a, *b, *samples, g.seed);
            let text = format!(
                "product forms fixing: {}; random fixing: {} (restricting: {}): {}\n",
                r.product_forms_fixing,
                r.random_fixing,
                r.random_fixing_restricting,
                verdict(r.pass())
            );
            Ok(Report::new(&r, text).with_verdict(r.pass()))
        }
    }
}

// ---------------------------------------------------------------- bar

#[derive(Args, Debug)]
pub struct BarCmd {
    #[command(subcommand)]
    op: BarOp,
}

#[derive(Subcommand, Debug)]
enum BarOp {
    /// Symbolic `d^2 = 0` on the grid `1 <= n <= n_max`, `0 <= r <= r_max`.
    CheckD2 {
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 2)]
        r_max: usize,
    },
    /// Face identities behind the contracting homotopy.
    CheckHomotopyIds {
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = 3)]
        r_max: usize,
    },
    /// Print the differential as a formal sum.
    Element {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        r: usize,
    },
}

pub fn bar(c: &BarCmd, g: &GlobalOpts) -> Result<Report> {
    match &c.op {
        BarOp::CheckD2 { n_max, r_max } => {
            let r = check_d_squared_with(*n_max, *r_max, g.exec());
            let mut table = Table::new(&["n", "r", "verdict", "residue_terms"]);
            let mut text = String::new();
            for cell in &r.cells {
                let _ = writeln!(text, "n={} r={} {}", cell.n, cell.r, verdict(cell.pass));
                table.push(vec![cell.n.to_string(), cell.r.to_string(), verdict(cell.pass).into(), cell.residue.len().to_string()]);
            }
            Ok(Report::new(&r, text).with_table(table).with_verdict(r.all_pass()))
        }
        BarOp::CheckHomotopyIds { n_max, r_max } => {
            let r = check_homotopy_identities_with(*n_max, *r_max, g.exec());
            let mut table = Table::new(&["kind", "n", "r", "i", "verdict"]);
            for k in &r.checks {
                table.push(vec![
                    format!("{:?}", k.kind),
                    k.n.to_string(),
                    k.r.to_string(),
                    k.i.map_or(String::new(), |i| i.to_string()),
                    verdict(k.pass).into(),
                ]);
            }
            let failed = r.checks.iter().filter(|k| !k.pass).count();
            let text = format!("{} identities, {failed} failed: {}\n", r.checks.len(), verdict(r.all_pass()));
            Ok(Report::new(&r, text).with_table(table).with_verdict(r.all_pass()))
        }
        BarOp::Element { n, r } => {
            let s = bar_element(*n, *r)?;
            Ok(Report::new(&s, format!("{s}\n")))
        }
    }
}

// ---------------------------------------------------------------- tor and xi

/// `a..b` (inclusive), `a..=b`, `n`, or a comma list.
pub fn parse_degrees(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::InvalidArgument(format!("cannot read degrees {s:?}"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    if let Some((a, b)) = s.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let (a, b) = (num(a)?, num(b)?);
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(num).collect()
}

/// `const`, `hom-zmod2`, or a contravariant functor expression.
pub fn parse_x(s: &str, ring: Ring) -> Result<SharedX> {
    Ok(match s.trim() {
        "const" => Arc::new(ConstantX::new(ring, 1)),
        "hom-zmod2" => Arc::new(HomZ2X::new(ring)),
        e => Arc::new(AbX::new(ExprFunctor::shared(FunctorExpr::parse(e)?, ring)?)?),
    })
}

fn parse_xi(s: Option<&str>, x: &str) -> Result<Box<dyn XiProvider>> {
    let name = s.unwrap_or(if x.trim() == "const" { "identity" } else { "projection" });
    match name {
        "identity" => Ok(Box::new(IdentityXi)),
        "projection" | "extend-by-zero" => Ok(Box::new(ProjectionXi)),
        other => Err(Error::InvalidArgument(format!("unknown xi {other:?}; use identity or projection"))),
    }
}

#[derive(Args, Debug)]
pub struct TorCmd {
    /// `const`, `hom-zmod2`, or a contravariant expression such as `dual(id)`.
    #[arg(long)]
    functor: String,
    #[arg(long, default_value_t = 0)]
    r: usize,
    #[arg(long, default_value = "0..3")]
    degrees: String,
}

pub fn tor(c: &TorCmd, g: &GlobalOpts) -> Result<Report> {
    let ring = g.ring_or(Ring::Z);
    let x = parse_x(&c.functor, ring)?;
    let res = tor_groups(x.as_ref(), c.r, &parse_degrees(&c.degrees)?, g.exec())?;
    let mut table = Table::new(&["degree", "free_rank", "torsion", "group"]);
    let mut text = String::new();
    for h in &res.groups {
        let torsion: Vec<String> = h.torsion.iter().map(ToString::to_string).collect();
        let _ = writeln!(text, "Tor_{} = {h}", h.degree);
        table.push(vec![h.degree.to_string(), h.free_rank.to_string(), torsion.join(" "), h.to_string()]);
    }
    Ok(Report::new(&res, text).with_table(table))
}

#[derive(Args, Debug)]
pub struct XiCmd {
    #[command(subcommand)]
    op: XiOp,
}

#[derive(Subcommand, Debug)]
enum XiOp {
    /// Bounded check of hypotheses (1), (2), (3).
    Verify {
        #[arg(long)]
        x: String,
        /// `identity` or `projection` (extend by zero).
        #[arg(long)]
        xi: Option<String>,
        #[arg(long, default_value_t = 3)]
        max_rank: usize,
        #[arg(long, default_value_t = 4)]
        word_len: usize,
        #[arg(long, default_value_t = 6)]
        per_triple: usize,
        #[arg(long, default_value_t = 100)]
        random: usize,
    },
    /// `δ_n h_n + h_{n-1} δ_{n-1} = Id` for `n <= n_max`.
    Homotopy {
        #[arg(long)]
        x: String,
        #[arg(long)]
        xi: Option<String>,
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
    },
}

pub fn xi(c: &XiCmd, g: &GlobalOpts) -> Result<Report> {
    let ring = g.ring_or(Ring::Q);
    match &c.op {
        XiOp::Verify { x, xi, max_rank, word_len, per_triple, random } => {
            let (xs, provider) = (parse_x(x, ring)?, parse_xi(xi.as_deref(), x)?);
            let spec = SampleSpec {
                max_rank: *max_rank,
                max_word_len: *word_len,
                per_triple: *per_triple,
                random: *random,
                seed: g.seed,
            };
            let r = verify_xi(xs.as_ref(), provider.as_ref(), &spec, g.exec())?;
            let mut text = String::new();
            let mut table = Table::new(&["hypothesis", "verdict", "enumerated", "sampled", "witness"]);
            for h in &r.hypotheses {
                let w = h.witness.as_ref().map(|w| {
                    format!(
                        "A={} B={} T={} phi={} tau={} on {}: {} vs {}",
                        w.a,
                        w.b,
                        w.t,
                        w.phi,
                        w.tau.as_deref().unwrap_or("-"),
                        w.input,
                        w.lhs,
                        w.rhs
                    )
                });
                let _ = writeln!(
                    text,
                    "({}) {} [{} enumerated, {} sampled]{}",
                    h.hypothesis,
                    verdict(h.pass),
                    h.enumerated,
                    h.sampled,
                    w.as_ref().map_or(String::new(), |w| format!(" witness {w}"))
                );
                table.push(vec![
                    h.hypothesis.to_string(),
                    verdict(h.pass).into(),
                    h.enumerated.to_string(),
                    h.sampled.to_string(),
                    w.unwrap_or_default(),
                ]);
            }
            Ok(Report::new(&r, text).with_table(table).with_verdict(r.all_pass()))
        }
        XiOp::Homotopy { x, xi, r, n_max } => {
            let (xs, provider) = (parse_x(x, ring)?, parse_xi(xi.as_deref(), x)?);
            let rep = homotopy_check(xs.as_ref(), provider.as_ref(), *r, *n_max, g.exec())?;
            let mut table = Table::new(&["n", "verdict"]);
            let mut text = String::new();
            for d in &rep.degrees {
                let _ = writeln!(text, "n={} {}", d.n, verdict(d.pass));
                table.push(vec![d.n.to_string(), verdict(d.pass).into()]);
            }
            Ok(Report::new(&rep, text).with_table(table).with_verdict(rep.all_pass()))
        }
    }
}

// ---------------------------------------------------------------- functors

fn expr_functor(s: &str, ring: Ring) -> Result<ExprFunctor> {
    ExprFunctor::new(FunctorExpr::parse(s)?, ring)
}

#[derive(Args, Debug)]
pub struct CrossEffectCmd {
    #[arg(long)]
    functor: String,
    #[arg(long)]
    n: usize,
}

pub fn crosseffect(c: &CrossEffectCmd, g: &GlobalOpts) -> Result<Report> {
    let f = expr_functor(&c.functor, g.ring_or(Ring::Q))?;
    let ce = cross_effect(&f, c.n)?;
    let ch = ce.module.character();
    let mut text = format!("dim cr_{} = {}\n", c.n, ce.dim);
    for (i, m) in ce.module.generators().iter().enumerate() {
        let _ = writeln!(text, "s_{} = {m}", i + 1);
    }
    Ok(Report::new(&json!({ "cross_effect": ce, "character": ch }), text))
}

#[derive(Args, Debug)]
pub struct DegreeCmd {
    #[arg(long)]
    functor: String,
    #[arg(long, default_value_t = 6)]
    bound: usize,
}

pub fn degree(c: &DegreeCmd, g: &GlobalOpts) -> Result<Report> {
    let f = expr_functor(&c.functor, g.ring_or(Ring::Q))?;
    let d = functor_degree(&f, c.bound)?;
    let text = match d {
        Some(d) => format!("degree {d}\n"),
        None => format!("degree > {}\n", c.bound),
    };
    Ok(Report::new(&json!({ "functor": c.functor, "bound": c.bound, "degree": d }), text))
}

#[derive(Args, Debug)]
pub struct AlphaBetaCmd {
    /// `trivial`, `sign` or `regular`.
    #[arg(long, default_value = "regular")]
    module: String,
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Largest rank at which to tabulate `dim α_n M` and `dim β_n M`.
    #[arg(long, default_value_t = 4)]
    m_max: usize,
    /// Also check that the unit `F -> β_n(cr_n F)` has a kernel with `cr_n = 0`.
    #[arg(long)]
    unit: Option<String>,
}

#[derive(Serialize)]
struct AlphaBetaOut {
    recollement: grtor_core::functor::RecollementReport,
    alpha_dims: Vec<usize>,
    beta_dims: Vec<usize>,
    unit_kernel_cr_dim: Option<usize>,
}

pub fn alpha_beta(c: &AlphaBetaCmd, g: &GlobalOpts) -> Result<Report> {
    let ring = g.ring_or(Ring::Q);
    let module = match c.module.as_str() {
        "trivial" => SymModule::trivial(c.n, ring),
        "sign" => SymModule::sign(c.n, ring),
        "regular" => SymModule::regular(c.n, ring),
        other => return Err(Error::InvalidArgument(format!("unknown module {other:?}"))),
    };
    let rec = check_recollement_units(&module)?;
    let (alpha, beta) = (AlphaFunctor::new(module.clone())?, BetaFunctor::new(module)?);
    let alpha_dims = (0..=c.m_max).map(|m| alpha.dim(m)).collect::<Result<Vec<_>>>()?;
    let beta_dims = (0..=c.m_max).map(|m| beta.dim(m)).collect::<Result<Vec<_>>>()?;
    let unit_kernel_cr_dim = match &c.unit {
        Some(e) => {
            let u = unit_to_beta(ExprFunctor::shared(FunctorExpr::parse(e)?, ring)?, c.n)?;
            Some(unit_kernel_cross_effect_dim(&u)?)
        }
        None => None,
    };
    let pass = rec.pass() && unit_kernel_cr_dim.is_none_or(|d| d == 0);
    let mut text = format!(
        "cr_{n}(alpha_{n} M) = M: {}\ncr_{n}(beta_{n} M) = M: {}\ndim alpha: {alpha_dims:?}\ndim beta: {beta_dims:?}\n",
        verdict(rec.alpha_pass),
        verdict(rec.beta_pass),
        n = c.n
    );
    if let Some(d) = unit_kernel_cr_dim {
        let _ = writeln!(text, "cr_{} of the unit kernel: dim {d}", c.n);
    }
    let out = AlphaBetaOut { recollement: rec, alpha_dims, beta_dims, unit_kernel_cr_dim };
    Ok(Report::new(&out, text).with_verdict(pass))
}

// ---------------------------------------------------------------- coend

#[derive(Args, Debug)]
pub struct CoendCmd {
    #[arg(long)]
    left: String,
    #[arg(long)]
    right: String,
    #[arg(long, default_value_t = 2)]
    n_min: usize,
    #[arg(long, default_value_t = 5)]
    n_max: usize,
}

fn levels_table(levels: &[grtor_core::coend::CoendPresentation]) -> (Table, String) {
    let mut table = Table::new(&["N", "level", "generators", "relations", "free_rank", "torsion", "value"]);
    let mut text = String::new();
    for p in levels {
        let torsion: Vec<String> = p.value.torsion.iter().map(ToString::to_string).collect();
        let _ = writeln!(text, "N={} (level {}): {} [{} generators, {} relations]", p.n, p.level, p.value, p.generators, p.relations);
        table.push(vec![
            p.n.to_string(),
            p.level.to_string(),
            p.generators.to_string(),
            p.relations.to_string(),
            p.value.free_rank.to_string(),
            torsion.join(" "),
            p.value.to_string(),
        ]);
    }
    (table, text)
}

pub fn coend(c: &CoendCmd, g: &GlobalOpts) -> Result<Report> {
    let ring = g.ring_or(Ring::Z);
    let (x, y) = (expr_functor(&c.left, ring)?, expr_functor(&c.right, ring)?);
    let s = if c.n_min == c.n_max && c.n_min < 2 {
        // a single level below the stabilization range
        let p = functor_tensor(&x, &y, c.n_min, &[], g.exec())?;
        let (table, text) = levels_table(std::slice::from_ref(&p));
        return Ok(Report::new(&p, text).with_table(table));
    } else {
        stabilize(&x, &y, c.n_min, c.n_max, g.exec())?
    };
    let (table, mut text) = levels_table(&s.levels);
    match (&s.stable_at, &s.value) {
        (Some(n), Some(v)) => {
            let _ = writeln!(text, "stable at N={n}: {v}");
        }
        _ => text.push_str("stability unknown\n"),
    }
    Ok(Report::new(&s, text).with_table(table))
}

#[derive(Args, Debug)]
pub struct StableH1Cmd {
    #[arg(long)]
    functor: String,
}

pub fn stable_h1(c: &StableH1Cmd, g: &GlobalOpts) -> Result<Report> {
    let r = stable_h1_report(&FunctorExpr::parse(&c.functor)?, g.ring_or(Ring::Z), g.exec())?;
    let (table, mut text) = levels_table(&r.coend.levels);
    match (&r.coend.stable_at, &r.coend.value) {
        (Some(n), Some(v)) => {
            let _ = writeln!(text, "degree {}; predicted stable H_1 = {v} (stable at N={n})", r.degree);
        }
        _ => {
            let _ = writeln!(text, "degree {}; no stabilization up to N={}", r.degree, r.coend.n_max);
        }
    }
    Ok(Report::new(&r, text).with_table(table))
}

// ---------------------------------------------------------------- suite

#[derive(Args, Debug)]
pub struct SuiteCmd {
    /// Run only these criteria.
    #[arg(long, value_delimiter = ',')]
    only: Vec<u8>,
}

pub fn suite(c: &SuiteCmd, g: &GlobalOpts) -> Result<Report> {
    let ids: Vec<u8> = if c.only.is_empty() { CRITERIA.iter().map(|c| c.0).collect() } else { c.only.clone() };
    let mut results = Vec::new();
    for id in ids {
        results.push(run_criterion(id, g.seed, g.exec()).ok_or_else(|| {
            Error::InvalidArgument(format!("no criterion {id}; valid ids are 1..={}", CRITERIA.len()))
        })?);
    }
    let report = grtor_core::suite::SuiteReport { seed: g.seed, criteria: results };
    let mut table = Table::new(&["id", "criterion", "verdict", "detail"]);
    for r in &report.criteria {
        table.push(vec![r.id.to_string(), r.name.clone(), verdict(r.pass).into(), r.detail.clone()]);
    }
    let pass = report.all_pass();
    Ok(Report::new(&report, report.table()).with_table(table).with_verdict(pass))
}
