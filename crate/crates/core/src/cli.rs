//! The `arbx` command line: argument parsing, commands and run reports.
//!
//! Exit codes are 0 for ok, 2 for an arbitrage violation and 1 for any
//! usage, parse or structural error.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::basis::{canonical_basis, complete, dimension, price_vector};
use crate::dynamics::{
    apply_exact, build_operator, first_order_rates, propagate_log,
    propagate_multiplicative_first_order,
};
use crate::error::{Error, Result};
use crate::exchange::{
    check_no_arbitrage, check_no_arbitrage_oracle_with_limit, exp_of, log_of, NoArbitrageCheck,
    DEFAULT_TOLERANCE,
};
use crate::generate::{generate_graph, GraphKind};
use crate::graph::{MarketGraph, DEFAULT_ORACLE_LIMIT};
use crate::io::{
    numeric_labels, rates_csv, read_json, read_rates, rows_csv, BasisFile, GraphFile,
    PerturbationFile, RatesTable,
};

#[derive(Debug, Parser)]
#[command(name = "arbx", version, about = "No-arbitrage checks and completion for exchange-rate ensembles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Add wall-clock timings (milliseconds) to the report metrics.
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Complete,
    Tree,
    Gnp,
    Pa,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a rates file for arbitrage via fundamental cycles.
    Check {
        #[arg(long)]
        rates: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Complete a full rates file from basis values.
    Complete {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        basis: PathBuf,
        /// Basis values are rates rather than log rates.
        #[arg(long)]
        multiplicative: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the canonical basis of a graph.
    Basis {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Print the dimension of the arbitrage-free space of a graph.
    Dim {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Price every good against a reference good.
    Price {
        #[arg(long)]
        rates: PathBuf,
        #[arg(long = "ref")]
        reference: String,
    },
    /// Apply a basis perturbation to a rates file.
    Perturb {
        #[arg(long)]
        rates: PathBuf,
        #[arg(long)]
        delta: PathBuf,
        /// Exact update instead of the first-order one.
        #[arg(long)]
        exact: bool,
        /// Write the updated rates here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a random connected market graph.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a rates file against every simple cycle.
    Oracle {
        #[arg(long)]
        rates: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_ORACLE_LIMIT)]
        max_n: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Ok,
    Violation,
    Error,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Ok => 0,
            Verdict::Error => 1,
            Verdict::Violation => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessReport {
    pub cycle: Vec<String>,
    pub log_gain: f64,
    pub multiplicative_gain: f64,
}

/// Outcome of one command. Every field is present in every command's JSON.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub verdict: Verdict,
    pub witness: Option<WitnessReport>,
    pub metrics: BTreeMap<String, f64>,
    /// Input path to SHA-256 hex digest.
    pub inputs: BTreeMap<String, String>,
    /// `labels[k]` names good `k + 1`.
    pub labels: Vec<String>,
    pub notes: Vec<String>,
    pub data: Value,
    pub error: Option<String>,
}

impl RunReport {
    fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            verdict: Verdict::Ok,
            witness: None,
            metrics: BTreeMap::new(),
            inputs: BTreeMap::new(),
            labels: Vec::new(),
            notes: Vec::new(),
            data: Value::Null,
            error: None,
        }
    }

    fn metric(&mut self, key: &str, value: f64) {
        self.metrics.insert(key.to_string(), value);
    }

    fn digest(&mut self, path: &Path) -> Result<()> {
        let bytes = std::fs::read(path)?;
        let hex: String = Sha256::digest(&bytes)
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect();
        self.inputs.insert(path.display().to_string(), hex);
        Ok(())
    }

    fn fail(mut self, e: Error) -> Self {
        self.verdict = Verdict::Error;
        self.error = Some(e.to_string());
        self
    }

    pub fn exit_code(&self) -> i32 {
        self.verdict.exit_code()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(e) = &self.error {
            out.push_str(&format!("error: {e}\n"));
            return out;
        }
        match self.command.as_str() {
            "dim" => {
                out.push_str(&format!("{}\n", number(self.metrics["dimension"])));
                return out;
            }
            "basis" => {
                for pair in self.data["entries"].as_array().into_iter().flatten() {
                    out.push_str(&format!("{},{}\n", pair[0], pair[1]));
                }
                return out;
            }
            "price" => {
                out.push_str(&format!("reference: {}\n", self.data["reference"].as_str().unwrap_or("")));
                out.push_str("good,log_price,price\n");
                for row in self.data["prices"].as_array().into_iter().flatten() {
                    out.push_str(&format!(
                        "{},{},{}\n",
                        row["good"].as_str().unwrap_or(""),
                        row["log_price"],
                        row["price"]
                    ));
                }
                return out;
            }
            _ => {}
        }
        let verdict = match self.verdict {
            Verdict::Ok => "ok",
            Verdict::Violation => "violation",
            Verdict::Error => "error",
        };
        out.push_str(&format!("verdict: {verdict}\n"));
        if let Some(w) = &self.witness {
            out.push_str(&format!(
                "witness: {}  gain {} (log {})\n",
                w.cycle.join(" -> "),
                w.multiplicative_gain,
                w.log_gain
            ));
        }
        for (k, v) in &self.metrics {
            out.push_str(&format!("{k}: {}\n", number(*v)));
        }
        for note in &self.notes {
            out.push_str(&format!("note: {note}\n"));
        }
        if let Some(csv) = self.data.get("rates_csv").and_then(Value::as_str) {
            out.push_str(csv);
        }
        out
    }
}

fn number(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// Parses `args`, runs the command, prints the report and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let format = cli.format;
    let report = run(cli);
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
    report.exit_code()
}

pub fn run(cli: Cli) -> RunReport {
    let start = Instant::now();
    let mut report = match cli.command {
        Command::Check { rates, tol } => cmd_check(&rates, tol),
        Command::Complete {
            graph,
            basis,
            multiplicative,
            out,
        } => cmd_complete(&graph, &basis, multiplicative, &out),
        Command::Basis { graph } => cmd_basis(&graph),
        Command::Dim { graph } => cmd_dim(&graph),
        Command::Price { rates, reference } => cmd_price(&rates, &reference),
        Command::Perturb {
            rates,
            delta,
            exact,
            out,
        } => cmd_perturb(&rates, &delta, exact, out.as_deref()),
        Command::Gen {
            kind,
            n,
            p,
            m,
            seed,
            out,
        } => cmd_gen(kind, n, p, m, seed, &out),
        Command::Oracle { rates, tol, max_n } => cmd_oracle(&rates, tol, max_n),
    };
    if cli.timings {
        report.metric("elapsed_ms", start.elapsed().as_secs_f64() * 1e3);
    }
    report
}

fn finish(report: RunReport, body: impl FnOnce(&mut RunReport) -> Result<()>) -> RunReport {
    let mut report = report;
    match body(&mut report) {
        Ok(()) => report,
        Err(e) => report.fail(e),
    }
}

fn load_rates(report: &mut RunReport, path: &Path, tol: f64) -> Result<RatesTable> {
    report.digest(path)?;
    let table = read_rates(path, tol)?;
    report.labels = table.labels.clone();
    report.metric("goods", table.labels.len() as f64);
    report.metric("edges", table.rates.graph().size() as f64);
    for &(s, d) in &table.filled {
        report.notes.push(format!(
            "filled {} -> {} as reciprocal",
            table.label(s),
            table.label(d)
        ));
    }
    Ok(table)
}

fn load_graph(report: &mut RunReport, path: &Path) -> Result<MarketGraph> {
    report.digest(path)?;
    let g = read_json::<GraphFile>(path)?.to_graph()?;
    report.labels = numeric_labels(g.order());
    Ok(g)
}

fn record_check(report: &mut RunReport, table: &RatesTable, check: NoArbitrageCheck) {
    report.metric("conditions_checked", check.conditions_checked as f64);
    report.metric("max_abs_log_gain", check.max_abs_log_gain);
    if let Some(w) = check.witness {
        report.verdict = Verdict::Violation;
        report.witness = Some(WitnessReport {
            cycle: w.cycle.iter().map(|&v| table.label(v).to_string()).collect(),
            log_gain: w.log_gain,
            multiplicative_gain: w.multiplicative_gain,
        });
    }
}

pub fn cmd_check(rates: &Path, tol: f64) -> RunReport {
    finish(RunReport::new("check"), |report| {
        let table = load_rates(report, rates, tol)?;
        let check = check_no_arbitrage(&log_of(&table.rates), tol)?;
        record_check(report, &table, check);
        Ok(())
    })
}

pub fn cmd_oracle(rates: &Path, tol: f64, max_n: usize) -> RunReport {
    finish(RunReport::new("oracle"), |report| {
        let table = load_rates(report, rates, tol)?;
        let check = check_no_arbitrage_oracle_with_limit(&log_of(&table.rates), tol, max_n)?;
        record_check(report, &table, check);
        Ok(())
    })
}

pub fn cmd_complete(graph: &Path, basis: &Path, multiplicative: bool, out: &Path) -> RunReport {
    finish(RunReport::new("complete"), |report| {
        let g = load_graph(report, graph)?;
        report.digest(basis)?;
        if !g.is_connected() {
            return Err(Error::NotConnected);
        }
        let assignment = read_json::<BasisFile>(basis)?.to_assignment(&g, multiplicative)?;
        let rates = exp_of(&complete(&assignment))?;
        std::fs::write(out, rates_csv(&rates, &report.labels))?;
        report.metric("dimension", assignment.spec().dimension() as f64);
        report.metric("edges", g.size() as f64);
        report.data = json!({ "out": out.display().to_string() });
        Ok(())
    })
}

pub fn cmd_basis(graph: &Path) -> RunReport {
    finish(RunReport::new("basis"), |report| {
        let g = load_graph(report, graph)?;
        let spec = canonical_basis(&g)?;
        report.metric("dimension", spec.dimension() as f64);
        let entries: Vec<[usize; 2]> = spec.entries().iter().map(|&(i, j)| [i, j]).collect();
        report.data = json!({ "entries": entries });
        Ok(())
    })
}

pub fn cmd_dim(graph: &Path) -> RunReport {
    finish(RunReport::new("dim"), |report| {
        let g = load_graph(report, graph)?;
        report.metric("dimension", dimension(&g)? as f64);
        Ok(())
    })
}

pub fn cmd_price(rates: &Path, reference: &str) -> RunReport {
    finish(RunReport::new("price"), |report| {
        let table = load_rates(report, rates, DEFAULT_TOLERANCE)?;
        let k = table
            .index_of(reference)
            .ok_or_else(|| Error::Parse(format!("unknown reference good {reference:?}")))?;
        let p = price_vector(&log_of(&table.rates), k)?;
        let rows: Vec<Value> = p
            .prices()
            .iter()
            .enumerate()
            .map(|(idx, &x)| {
                json!({ "good": table.labels[idx], "log_price": x, "price": x.exp() })
            })
            .collect();
        report.data = json!({ "reference": reference, "prices": rows });
        Ok(())
    })
}

pub fn cmd_perturb(rates: &Path, delta: &Path, exact: bool, out: Option<&Path>) -> RunReport {
    finish(RunReport::new("perturb"), |report| {
        let table = load_rates(report, rates, DEFAULT_TOLERANCE)?;
        report.digest(delta)?;
        let g = table.rates.graph();
        let perturbation = read_json::<PerturbationFile>(delta)?.to_vector(g)?;
        let op = build_operator(perturbation.spec());
        let d_e = propagate_log(&op, &perturbation)?;
        let e = log_of(&table.rates);
        let csv = if exact {
            let (_, updated) = apply_exact(&e, &d_e)?;
            rates_csv(&updated, &table.labels)
        } else {
            let step = propagate_multiplicative_first_order(&table.rates, &d_e)?;
            let updated = first_order_rates(&table.rates, &step);
            let n = g.order();
            if let Some(k) = updated.iter().position(|&x| x <= 0.0) {
                report
                    .notes
                    .push(format!("first-order rate at ({}, {}) is not positive", k / n + 1, k % n + 1));
            }
            rows_csv(g, &table.labels, |i, j| updated[(i - 1) * n + (j - 1)])
        };
        report.metric(
            "max_abs_log_delta",
            d_e.entries().iter().fold(0.0, |m, x| f64::max(m, x.abs())),
        );
        if let Some(path) = out {
            std::fs::write(path, &csv)?;
        }
        report.data = json!({ "mode": if exact { "exact" } else { "first_order" }, "rates_csv": csv });
        Ok(())
    })
}

pub fn cmd_gen(
    kind: Kind,
    n: usize,
    p: Option<f64>,
    m: Option<usize>,
    seed: u64,
    out: &Path,
) -> RunReport {
    finish(RunReport::new("gen"), |report| {
        let kind = match kind {
            Kind::Complete => GraphKind::Complete,
            Kind::Tree => GraphKind::Tree,
            Kind::Gnp => GraphKind::Gnp {
                p: p.ok_or_else(|| Error::BadParams("gnp requires --p".into()))?,
            },
            Kind::Pa => GraphKind::PreferentialAttachment {
                m: m.ok_or_else(|| Error::BadParams("pa requires --m".into()))?,
            },
        };
        let g = generate_graph(kind, n, seed)?;
        let text = serde_json::to_string(&GraphFile::from_graph(&g)).expect("graph serializes");
        std::fs::write(out, text + "\n")?;
        report.labels = numeric_labels(n);
        report.metric("goods", n as f64);
        report.metric("edges", g.size() as f64);
        report.data = json!({ "out": out.display().to_string() });
        Ok(())
    })
}
