mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use grtor_core::{Execution, Ring};

use crate::output::{Report, RunManifest};

#[derive(Parser, Debug)]
#[command(name = "grtor", version, about = "Exact Tor, cross-effect and coend computations over gr and ab")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Coefficient ring: z, q or fp:<p>. Each command has its own default.
    #[arg(long, global = true)]
    pub ring: Option<Ring>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the JSON report here (`-` for stdout).
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Write the tabular part of the report as CSV.
    #[arg(long, global = true)]
    pub csv: Option<PathBuf>,
    /// Write the run manifest (parameters, seed, version, wall time).
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    /// Disable data parallelism.
    #[arg(long, global = true)]
    pub sequential: bool,
}

impl GlobalOpts {
    pub fn exec(&self) -> Execution {
        if self.sequential { Execution::Sequential } else { Execution::Parallel }
    }

    pub fn ring_or(&self, default: Ring) -> Ring {
        self.ring.unwrap_or(default)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Word reduction, composition and Nielsen reduction.
    Words(commands::WordsCmd),
    /// Morphisms of the auxiliary category of complemented monomorphisms.
    Gcat(commands::GcatCmd),
    /// Bar resolution checks.
    Bar(commands::BarCmd),
    /// Tor over gr against the abelianization tensored with P_r.
    Tor(commands::TorCmd),
    /// Hypotheses of the vanishing criterion and the contracting homotopy.
    Xi(commands::XiCmd),
    /// Cross-effect at (Z, ..., Z) with its symmetric group action.
    Crosseffect(commands::CrossEffectCmd),
    /// Polynomial degree by cross-effect vanishing.
    Degree(commands::DegreeCmd),
    /// Recollement functors alpha_n and beta_n.
    AlphaBeta(commands::AlphaBetaCmd),
    /// Truncated functor tensor product over ab.
    Coend(commands::CoendCmd),
    /// Stabilized coend F (x)_ab Id.
    StableH1(commands::StableH1Cmd),
    /// Full acceptance battery.
    Suite(commands::SuiteCmd),
}

fn init_threads() {
    if let Some(n) = std::env::var("GRTOR_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn run(cli: &Cli) -> grtor_core::Result<Report> {
    let g = &cli.global;
    match &cli.command {
        Command::Words(c) => commands::words(c),
        Command::Gcat(c) => commands::gcat(c, g),
        Command::Bar(c) => commands::bar(c, g),
        Command::Tor(c) => commands::tor(c, g),
        Command::Xi(c) => commands::xi(c, g),
        Command::Crosseffect(c) => commands::crosseffect(c, g),
        Command::Degree(c) => commands::degree(c, g),
        Command::AlphaBeta(c) => commands::alpha_beta(c, g),
        Command::Coend(c) => commands::coend(c, g),
        Command::StableH1(c) => commands::stable_h1(c, g),
        Command::Suite(c) => commands::suite(c, g),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    init_threads();
    let start = Instant::now();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let manifest = RunManifest::new(&argv, &cli.global, start.elapsed());
    if let Err(e) = output::emit(&report, &cli.global, &manifest) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match report.verdict {
        Some(false) => ExitCode::from(1),
        _ => ExitCode::SUCCESS,
    }
}
