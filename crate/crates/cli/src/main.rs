use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use quivhopf_core::engine::{dimension_oracle, Mode};
use quivhopf_core::hopf::HopfData;
use quivhopf_core::iso::Isomorphism;
use quivhopf_core::quiver::{AlgebraKind, CartanMatrix};
use quivhopf_core::suite::{run_in, SuiteConfig, SuiteName, Workspace};
use quivhopf_core::syntax::{format_element, format_tensor, format_word, parse_element};
use quivhopf_core::Error;

/// Double-quiver algebras and restricted quantum groups at roots of unity.
#[derive(Parser)]
#[command(name = "quivhopf", version)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Opts {
    /// JSON config file; command-line flags override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Order of the root of unity q (default 5).
    #[arg(long, global = true)]
    n: Option<u32>,
    /// Cartan type (A2, D4, ...) or JSON rows such as [[2,-1],[-1,2]] (default A1).
    #[arg(long, global = true)]
    cartan: Option<String>,
    /// kQ, PiC, uqC or uq.
    #[arg(long, global = true)]
    algebra: Option<AlgebraKind>,
    /// full or bounded.
    #[arg(long, global = true)]
    mode: Option<Mode>,
    /// Degree cap for completion.
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Where to write the report of `verify`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Admit 3 ≤ n < 5; results there are unsupported.
    #[arg(long, global = true)]
    allow_small_n: bool,
    /// Number of sampled words in the axiom checks.
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[arg(long, global = true, hide = true)]
    corrupt_relation: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of the algebra, with an independent cross-check on request.
    Dim {
        /// Also count by exact linear algebra.
        #[arg(long)]
        oracle: bool,
    },
    /// Normal-form basis of the algebra.
    Basis {
        /// Print every basis word, one per line, in monomial order.
        #[arg(long)]
        dump: bool,
    },
    /// Normal form of an expression.
    Nf { expr: String },
    /// Coproduct of an expression, as a sum of tensors.
    Coproduct { expr: String },
    /// Antipode of an expression.
    Antipode { expr: String },
    /// Run a verification suite: scalars, hopf, ideals, lemmas, iso or all.
    Verify { suite: SuiteName },
    /// Image of an element of uqC in uq.
    Tau { expr: String },
    /// Image of an element of uq in uqC.
    Sigma { expr: String },
}

macro_rules! wl {
    ($out:expr, $($arg:tt)*) => {{
        let _ = writeln!($out, $($arg)*);
    }};
}

fn config(opts: &Opts) -> Result<SuiteConfig, Error> {
    let mut c = match &opts.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
            SuiteConfig::from_json(&text)?
        }
        None => SuiteConfig::new(CartanMatrix::of_type("A1")?, 5),
    };
    if let Some(s) = &opts.cartan {
        c.cartan = s.parse()?;
    }
    if let Some(n) = opts.n {
        c.n = n;
    }
    c.algebra = opts.algebra.or(c.algebra);
    c.mode = opts.mode.or(c.mode);
    c.cap = opts.cap.or(c.cap);
    c.seed = opts.seed.unwrap_or(c.seed);
    c.out = opts.out.clone().or(c.out);
    c.samples = opts.samples.unwrap_or(c.samples);
    c.allow_small_n |= opts.allow_small_n;
    c.corrupt_relation = opts.corrupt_relation.or(c.corrupt_relation);
    Ok(c)
}

fn run(cli: Cli, out: &mut String) -> Result<ExitCode, Error> {
    let mut cfg = config(&cli.opts)?;
    let json = cli.opts.json;
    if let Command::Verify { suite } = &cli.command {
        cfg.suite = *suite;
    }
    let kind = cfg.algebra.unwrap_or(AlgebraKind::UqC);
    let ws = Workspace::new(cfg)?;

    match cli.command {
        Command::Dim { oracle } => {
            let a = ws.algebra(kind)?;
            let stats = a.system().stats();
            match a.dimension() {
                Some(d) => wl!(out, "dim {kind} = {d}"),
                None if a.is_exact() && matches!(kind, AlgebraKind::UqC | AlgebraKind::Uq) => {
                    wl!(out, "dim {kind}: no finite normal-form basis found within cap {} (mode {})", a.cap(), a.mode())
                }
                None => wl!(out, "dim {kind}: not computed (mode {})", a.mode()),
            }
            wl!(out, "rules {} | cap {} | confluent {}", stats.rules, a.cap(), a.is_exact());
            if oracle {
                let r = dimension_oracle(a.presentation(), a.cap())?;
                wl!(out, "oracle dim {kind} = {} ({:?}, {} units of work)", r.dimension, r.method, r.work);
            }
        }
        Command::Basis { dump } => {
            let a = ws.algebra(kind)?;
            let b = a.basis().ok_or_else(|| {
                Error::Config(format!("{kind} has no finite basis in mode {}; use a finite-dimensional instance in full mode", a.mode()))
            })?;
            if dump {
                for w in b.words() {
                    wl!(out, "{}", format_word(a.alphabet(), w));
                }
            } else {
                wl!(out, "basis of {kind}: {} words, longest {}", b.len(), b.max_length());
            }
        }
        Command::Nf { expr } => {
            let a = ws.algebra(kind)?;
            let e = parse_element(&expr, a.alphabet())?;
            wl!(out, "{}", format_element(a.alphabet(), &a.normal_form(&e)?));
        }
        Command::Coproduct { expr } => {
            let a = ws.algebra(kind)?;
            let hd = HopfData::new(&a)?;
            let e = parse_element(&expr, a.alphabet())?;
            wl!(out, "{}", format_tensor(a.alphabet(), &hd.comultiply(&e)?));
        }
        Command::Antipode { expr } => {
            let a = ws.algebra(kind)?;
            let hd = HopfData::new(&a)?;
            let e = parse_element(&expr, a.alphabet())?;
            wl!(out, "{}", format_element(a.alphabet(), &hd.antipode(&e)?));
        }
        Command::Tau { expr } => {
            let (q, g) = (ws.algebra(AlgebraKind::UqC)?, ws.algebra(AlgebraKind::Uq)?);
            let iso = Isomorphism::new(&q, &g)?;
            let e = parse_element(&expr, q.alphabet())?;
            wl!(out, "{}", format_element(g.alphabet(), &iso.tau(&e)?));
        }
        Command::Sigma { expr } => {
            let (q, g) = (ws.algebra(AlgebraKind::UqC)?, ws.algebra(AlgebraKind::Uq)?);
            let iso = Isomorphism::new(&q, &g)?;
            let e = parse_element(&expr, g.alphabet())?;
            wl!(out, "{}", format_element(q.alphabet(), &iso.sigma(&e)?));
        }
        Command::Verify { .. } => {
            let report = run_in(&ws)?;
            let body = if json { report.to_json() } else { report.to_text() };
            if let Some(path) = &ws.config().out {
                let as_json = json || path.extension().is_some_and(|e| e == "json");
                let file_body = if as_json { report.to_json() } else { report.to_text() };
                fs::write(path, file_body).map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))?;
                wl!(out, "{}", report.summary_line());
            } else {
                out.push_str(&body);
                if json {
                    out.push('\n');
                }
            }
            return Ok(if report.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let mut out = String::new();
    let result = run(Cli::parse(), &mut out);
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
