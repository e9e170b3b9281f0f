use std::fs::File;
use std::io::{self, Write};
use std::path::Path;
use std::time::Duration;

use serde::Serialize;

use crate::GlobalOpts;

/// Rows of a CSV projection.
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table { headers: headers.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

pub struct Report {
    pub json: serde_json::Value,
    pub text: String,
    pub table: Option<Table>,
    /// `None` for pure computations, `Some(pass)` for checks.
    pub verdict: Option<bool>,
}

impl Report {
    pub fn new<T: Serialize>(value: &T, text: String) -> Self {
        Report {
            json: serde_json::to_value(value).expect("reports serialize"),
            text,
            table: None,
            verdict: None,
        }
    }

    pub fn with_verdict(mut self, pass: bool) -> Self {
        self.verdict = Some(pass);
        self
    }

    pub fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }
}

/// Everything needed to reproduce a run. Wall time lives here, never in the
/// JSON report, so that reports stay byte-identical across runs.
#[derive(Serialize)]
pub struct RunManifest {
    pub command: String,
    pub arguments: Vec<String>,
    pub ring: Option<String>,
    pub seed: u64,
    pub parallel: bool,
    pub threads: Option<String>,
    pub engine_version: &'static str,
    pub wall_time_secs: f64,
}

impl RunManifest {
    pub fn new(argv: &[String], g: &GlobalOpts, elapsed: Duration) -> Self {
        let arguments: Vec<String> = argv.iter().skip(1).cloned().collect();
        RunManifest {
            command: arguments.iter().find(|a| !a.starts_with('-')).cloned().unwrap_or_default(),
            arguments,
            ring: g.ring.map(|r| r.to_string()),
            seed: g.seed,
            parallel: !g.sequential,
            threads: std::env::var("GRTOR_THREADS").ok(),
            engine_version: env!("CARGO_PKG_VERSION"),
            wall_time_secs: elapsed.as_secs_f64(),
        }
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> io::Result<()> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    if path.as_os_str() == "-" {
        io::stdout().write_all(s.as_bytes())
    } else {
        std::fs::write(path, s)
    }
}

fn write_csv(path: &Path, table: &Table) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(File::create(path)?);
    w.write_record(&table.headers)?;
    for r in &table.rows {
        w.write_record(r)?;
    }
    w.flush()
}

pub fn emit(report: &Report, g: &GlobalOpts, manifest: &RunManifest) -> io::Result<()> {
    let json_to_stdout = g.json.as_deref().is_some_and(|p| p.as_os_str() == "-");
    if !json_to_stdout {
        print!("{}", report.text);
    }
    if let Some(p) = &g.json {
        write_json(p, &report.json)?;
    }
    if let Some(p) = &g.csv {
        match &report.table {
            Some(t) => write_csv(p, t)?,
            None => eprintln!("note: this command has no tabular output; {} not written", p.display()),
        }
    }
    if let Some(p) = &g.manifest {
        write_json(p, manifest)?;
    }
    Ok(())
}
