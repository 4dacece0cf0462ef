//! `turner`: build bases, structure constants and doubles, and run the
//! verification suites.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;
use turner_core::double::{Double, Route, Variant};
use turner_core::schur::{Mode, SchurAlgebra};
use turner_core::superalgebra::{preset, Ring, SuperAlgebra};
use turner_core::table_io::{cache_dir, load_or_build, write_atomic, write_table_over};
use turner_core::verify::{run_suite, SuiteConfig, DEFAULT_SEED};
use turner_core::{Error, Exec, Result};

#[derive(Parser)]
#[command(name = "turner", version, about = "Exact integer computations: superalgebra doubles, generalized Schur algebras, wreath products, zigzag algebras")]
struct Cli {
    #[command(flatten)]
    job: Job,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Job {
    /// Built-in algebra: trivial, dual, exterior, matrix<N>, pq-a<L>[-rev], zigzag-a<L>
    #[arg(long, global = true)]
    preset: Option<String>,
    /// JSON presentation file (instead of --preset)
    #[arg(long, global = true, conflicts_with = "preset")]
    presentation: Option<PathBuf>,
    #[arg(short, global = true)]
    n: Option<usize>,
    #[arg(short, global = true)]
    d: Option<usize>,
    /// Scalar ring: z, q or fp:<p>
    #[arg(long, global = true, default_value = "z")]
    ring: String,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write the result here instead of stdout
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Run on one thread
    #[arg(long, global = true)]
    sequential: bool,
    #[arg(long, global = true, default_value_t = 5)]
    max_d: usize,
}

#[derive(Subcommand)]
enum Command {
    /// List the basis of S^A(n,d), or the labels of the double
    Basis {
        #[arg(long)]
        double: bool,
    },
    /// Structure constants of S^A(n,d) as JSON lines
    Constants {
        #[arg(long, default_value = "verified")]
        mode: String,
    },
    /// Product table, Gram matrix or φ of the double
    Double {
        #[arg(long, value_enum, default_value_t = DoubleOut::Table)]
        what: DoubleOut,
        /// plain or divided
        #[arg(long, default_value = "plain")]
        variant: String,
    },
    /// Run a verification suite (or `all`)
    Verify {
        suite: String,
        /// Emit the reports as JSON
        #[arg(long)]
        json: bool,
    },
    /// Time table builds in parallel and sequential mode
    Bench {
        #[arg(long, default_value_t = 3)]
        reps: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DoubleOut {
    Table,
    Gram,
    Phi,
}

impl Job {
    fn algebra(&self) -> Result<SuperAlgebra> {
        match (&self.presentation, &self.preset) {
            (Some(path), _) => SuperAlgebra::from_json(&std::fs::read_to_string(path)?),
            (None, Some(p)) => preset(p),
            (None, None) => preset("trivial"),
        }
    }

    fn exec(&self) -> Exec {
        if self.sequential {
            Exec::Sequential
        } else {
            Exec::Parallel
        }
    }

    fn nd(&self) -> Result<(usize, usize)> {
        let (n, d) = (self.n.unwrap_or(1), self.d.unwrap_or(2));
        if d > self.max_d {
            return Err(Error::Precondition(format!("d = {d} exceeds the maximum {} (raise --max-d)", self.max_d)));
        }
        Ok((n, d))
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.output {
            Some(path) => write_atomic(path, text.as_bytes()),
            None => {
                std::io::stdout().write_all(text.as_bytes())?;
                Ok(())
            }
        }
    }
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Ok,
    /// A verification suite reported failures; carries the diagnostic.
    Failed(serde_json::Value),
}

fn run(cli: &Cli) -> Result<Outcome> {
    let job = &cli.job;
    let ring = Ring::parse(&job.ring)?;
    match &cli.command {
        Command::Basis { double } => {
            let a = job.algebra()?;
            let (n, d) = job.nd()?;
            let labels: Vec<String> = if *double {
                let x = Double::new(&a, n, d, job.exec())?;
                (0..x.dim()).map(|i| x.label_name(i)).collect()
            } else {
                let s = SchurAlgebra::empty(&a, n, d)?;
                (0..s.dim()).map(|i| s.label(i)).collect()
            };
            job.emit(&labels.iter().map(|l| format!("{l}\n")).collect::<String>())?;
        }
        Command::Constants { mode } => {
            let a = job.algebra()?;
            let (n, d) = job.nd()?;
            let mode: Mode = mode.parse()?;
            let (s, _) = load_or_build(&a, n, d, mode, job.exec(), cache_dir().as_deref())?;
            let mut buf = Vec::new();
            write_table_over(&s, ring, &mut buf)?;
            job.emit(&String::from_utf8(buf).map_err(|e| Error::Format(e.to_string()))?)?;
        }
        Command::Double { what, variant } => {
            let a = job.algebra()?;
            let (n, d) = job.nd()?;
            let variant: Variant = variant.parse()?;
            let x = Double::new(&a, n, d, job.exec())?;
            job.emit(&double_output(&x, *what, variant, ring, job.exec())?)?;
        }
        Command::Verify { suite, json } => {
            let cfg = SuiteConfig { preset: job.preset.clone(), n: job.n, d: job.d, seed: job.seed, exec: job.exec() };
            let reports = run_suite(suite, &cfg)?;
            let passed = reports.iter().all(|r| r.passed());
            let text = if *json {
                format!("{}\n", serde_json::to_string_pretty(&reports)?)
            } else {
                let mut t = String::new();
                for r in &reports {
                    for c in &r.checks {
                        t += &format!("{} {}/{}: {}\n", if c.pass { "PASS" } else { "FAIL" }, r.suite, c.name, c.detail);
                    }
                }
                t + if passed { "PASS\n" } else { "FAIL\n" }
            };
            job.emit(&text)?;
            if !passed {
                let first = reports.iter().flat_map(|r| r.failures().map(move |c| (r, c))).next().expect("a failure");
                return Ok(Outcome::Failed(json!({
                    "error": first.1.detail.split(':').next().unwrap_or("theorem_violation"),
                    "suite": first.0.suite,
                    "check": first.1.name,
                    "message": first.1.detail,
                })));
            }
        }
        Command::Bench { reps } => {
            let a = job.algebra()?;
            let (n, d) = job.nd()?;
            let mut t = String::new();
            for exec in [Exec::Parallel, Exec::Sequential] {
                let mut best = u128::MAX;
                for _ in 0..(*reps).max(1) {
                    let start = Instant::now();
                    SchurAlgebra::new(&a, n, d, Mode::Formula, exec)?;
                    best = best.min(start.elapsed().as_micros());
                }
                t += &format!("{exec:?} S^{}({n},{d}): best of {reps} {:.3} ms\n", a.name(), best as f64 / 1000.0);
            }
            job.emit(&t)?;
        }
    }
    Ok(Outcome::Ok)
}

fn double_output(x: &Double, what: DoubleOut, variant: Variant, ring: Ring, exec: Exec) -> Result<String> {
    let labels: Vec<String> = (0..x.dim()).map(|i| x.label_name(i)).collect();
    let head = json!({
        "presentation": x.algebra().fingerprint(),
        "n": x.n(),
        "d": x.d(),
        "ring": ring.name(),
        "basis": labels,
    });
    let mut out = String::new();
    match what {
        DoubleOut::Table => {
            let mut h = head;
            h["kind"] = json!("double-table");
            h["variant"] = json!(variant.to_string());
            out += &format!("{h}\n");
            for i in 0..x.dim() {
                for j in 0..x.dim() {
                    let p = ring.extend(&x.product(i, j, variant, Route::Transport)?);
                    if !p.is_zero() {
                        let terms: Vec<(usize, i64)> = p.iter().map(|(&k, &c)| (k, c)).collect();
                        out += &format!("{}\n", json!({ "left": i, "right": j, "out": terms }));
                    }
                }
            }
        }
        DoubleOut::Gram => {
            let f = x.symmetric_form(exec)?;
            let gram: Vec<Vec<i64>> = match ring {
                Ring::Prime(p) => f.gram.iter().map(|r| r.iter().map(|v| v.rem_euclid(p)).collect()).collect(),
                _ => f.gram.clone(),
            };
            let mut h = head;
            h["kind"] = json!("gram");
            h["functional"] = json!(f.functional);
            h["determinant"] = json!(f.determinant().to_string());
            h["gram"] = json!(gram);
            out += &format!("{h}\n");
        }
        DoubleOut::Phi => {
            let mut h = head;
            h["kind"] = json!("phi");
            h["target"] = json!((0..x.target().dim()).map(|i| x.target().label(i)).collect::<Vec<_>>());
            h["phi"] = json!(x.phi().iter().map(|&(k, s)| json!({ "target": k, "sign": s })).collect::<Vec<_>>());
            out += &format!("{h}\n");
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed(diag)) => {
            eprintln!("{diag}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("{}", json!({ "error": e.kind(), "message": e.to_string() }));
            ExitCode::from(2)
        }
    }
}
