//! `ipgap`: analyze instance files, generate seeded families, certify them
//! in batch and run the geometry suites.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use ipgap::batch::{certify, generate, RunManifest};
use ipgap::bounds::{full_report, proximity_check, BoundOptions, Status};
use ipgap::exact::compute_invariants_capped;
use ipgap::geometry::improving_point_construction;
use ipgap::geometry::suite::{verify_geometry, GeometryConfig};
use ipgap::integer::{IntError, IntOptions};
use ipgap::io::InstanceFile;
use ipgap::polyhedra::{is_polytope, PolyError};

const EXIT_USAGE: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;
const EXIT_BUDGET: u8 = 4;
const EXIT_VIOLATION: u8 = 5;

const ROUNDING: &str = "bound values are decimals rounded toward +infinity, marked with ↑";

#[derive(Parser)]
#[command(
    name = "ipgap",
    version,
    about = "Integrality gaps, proximity and sparsity bounds for min{c.x : Ax = b, x >= 0 integer}"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for one instance file.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        node_cap: Option<u64>,
        #[arg(long)]
        precision_bits: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a seeded instance family as a manifest with explicit instances.
    Generate(RunArgs),
    /// Certify every bound on a generated family or an explicit manifest.
    Certify(RunArgs),
    /// Run the volume, slicing, E-body and lattice-point suites.
    VerifyGeometry {
        /// Largest slice dimension.
        #[arg(long, default_value_t = 5)]
        dims: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Random sections for the volume identities.
        #[arg(long, default_value_t = 200)]
        sections: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// JSON manifest; flags override its fields.
    #[arg(long)]
    manifest: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    count: Option<usize>,
    /// Row count or inclusive range, e.g. `2` or `1-3`.
    #[arg(long, value_parser = parse_range)]
    m: Option<[usize; 2]>,
    /// Column count or inclusive range; default `m+1` through `m+5`.
    #[arg(long, value_parser = parse_range)]
    n: Option<[usize; 2]>,
    #[arg(long)]
    entry_bound: Option<i64>,
    #[arg(long)]
    node_cap: Option<u64>,
    #[arg(long)]
    precision_bits: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_range(s: &str) -> Result<[usize; 2], String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    match s.split_once(['-', ':']).or_else(|| s.split_once("..=")) {
        Some((lo, hi)) => Ok([parse(lo)?, parse(hi.trim_start_matches('='))?]),
        None => {
            let v = parse(s)?;
            Ok([v, v])
        }
    }
}

struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn new(code: u8, kind: &'static str, message: impl ToString) -> Self {
        Self {
            code,
            kind,
            message: message.to_string(),
        }
    }

    fn from_int(e: IntError) -> Self {
        match e {
            IntError::Infeasible | IntError::NoIntegerPoint => Self::new(EXIT_INFEASIBLE, "infeasible", e),
            IntError::Unbounded => Self::new(EXIT_INFEASIBLE, "unbounded", e),
            IntError::BudgetExceeded(_) | IntError::Poly(PolyError::BudgetExceeded(_)) => {
                Self::new(EXIT_BUDGET, "budget-exceeded", e)
            }
            IntError::Poly(PolyError::Infeasible { .. }) => Self::new(EXIT_INFEASIBLE, "infeasible", e),
            other => Self::new(EXIT_USAGE, "invalid-instance", other),
        }
    }
}

fn emit(doc: &Value, out: Option<&Path>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(doc).expect("JSON values serialize") + "\n";
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::new(EXIT_USAGE, "io", format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(EXIT_USAGE, "io", format!("{}: {e}", path.display())))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn analyze(file: &Path, node_cap: Option<u64>, precision_bits: Option<u32>, out: Option<&Path>) -> Result<u8, Failure> {
    let parsed = InstanceFile::parse(&read(file)?).map_err(|e| Failure::new(EXIT_USAGE, "parse", e))?;
    let inst = parsed.instance().map_err(|e| Failure::new(EXIT_USAGE, "parse", e))?;
    let defaults = BoundOptions::default();
    let opts = BoundOptions {
        precision_bits: precision_bits.unwrap_or(defaults.precision_bits),
        int: IntOptions {
            node_cap: node_cap.unwrap_or(defaults.int.node_cap),
            ..IntOptions::default()
        },
        ..defaults
    };
    let bx = parsed.search_box();
    let report = full_report(&inst, bx.as_ref(), &opts).map_err(Failure::from_int)?;
    let mut doc = json!({
        "instance": parsed.to_value(),
        "rounding": ROUNDING,
        "report": to_value(&report),
    });
    let mut code = match report.status {
        Status::Infeasible | Status::Unbounded => EXIT_INFEASIBLE,
        Status::Optimal if report.violations() > 0 => EXIT_VIOLATION,
        Status::Optimal if report.indeterminate() > 0 => EXIT_BUDGET,
        Status::Optimal => 0,
    };
    if report.status == Status::Optimal && (bx.is_some() || is_polytope(&inst)) {
        let inv = compute_invariants_capped(inst.a(), opts.minor_cap)
            .map_err(|e| Failure::from_int(PolyError::from(e).into()))?;
        let proximity = proximity_check(&inst, &inv, bx.as_ref(), &opts).map_err(Failure::from_int)?;
        if proximity.violations > 0 {
            code = EXIT_VIOLATION;
        }
        doc["proximity"] = to_value(&proximity);
        if let (Some(x), Some(z)) = (&report.lp, &report.ip) {
            doc["improving_point"] = match improving_point_construction(&inst, x, z, 1_000_000) {
                Ok(outcome) => to_value(&outcome),
                Err(e) => json!({ "skipped": e.to_string() }),
            };
        }
    }
    doc["exit_status"] = json!(code);
    emit(&doc, out)?;
    Ok(code)
}

fn manifest_from(args: &RunArgs) -> Result<RunManifest, Failure> {
    let mut m = match &args.manifest {
        Some(path) => RunManifest::parse(&read(path)?).map_err(|e| Failure::new(EXIT_USAGE, "parse", e))?,
        None => RunManifest::default(),
    };
    let explicit_family = args.seed.is_some()
        || args.count.is_some()
        || args.m.is_some()
        || args.n.is_some()
        || args.entry_bound.is_some();
    if explicit_family {
        m.instances = None;
    }
    m.seed = args.seed.unwrap_or(m.seed);
    m.count = args.count.unwrap_or(m.count);
    m.m = args.m.unwrap_or(m.m);
    m.n = args.n.or(m.n);
    m.entry_bound = args.entry_bound.unwrap_or(m.entry_bound);
    m.node_cap = args.node_cap.unwrap_or(m.node_cap);
    m.precision_bits = args.precision_bits.unwrap_or(m.precision_bits);
    m.validate().map_err(|e| Failure::new(EXIT_USAGE, "usage", e))?;
    Ok(m)
}

fn run_generate(args: &RunArgs) -> Result<u8, Failure> {
    let mut manifest = manifest_from(args)?;
    let files = generate(&manifest).map_err(|e| Failure::new(EXIT_USAGE, "usage", e))?;
    manifest.instances = Some(files.iter().map(InstanceFile::to_value).collect());
    emit(&to_value(&manifest), args.out.as_deref())?;
    Ok(0)
}

fn run_certify(args: &RunArgs) -> Result<u8, Failure> {
    let manifest = manifest_from(args)?;
    let summary = certify(&manifest).map_err(|e| Failure::new(EXIT_USAGE, "parse", e))?;
    emit(&to_value(&summary), args.out.as_deref())?;
    eprintln!(
        "{} instances: {} passed, {} violations, {} budget-exceeded, {} indeterminate",
        summary.instances, summary.passed, summary.violations, summary.budget_exceeded, summary.indeterminate
    );
    Ok(summary.exit_code() as u8)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Analyze {
            file,
            node_cap,
            precision_bits,
            out,
        } => analyze(&file, node_cap, precision_bits, out.as_deref()),
        Command::Generate(args) => run_generate(&args),
        Command::Certify(args) => run_certify(&args),
        Command::VerifyGeometry {
            dims,
            samples,
            seed,
            sections,
            out,
        } => {
            if !(1..=8).contains(&dims) {
                return Err(Failure::new(EXIT_USAGE, "usage", "--dims must be between 1 and 8"));
            }
            let report = verify_geometry(&GeometryConfig {
                max_dim: dims,
                samples,
                seed,
                sections,
            });
            for notice in &report.notices {
                eprintln!("notice: {notice}");
            }
            emit(&to_value(&report), out.as_deref())?;
            Ok(if report.passed { 0 } else { EXIT_VIOLATION })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let doc = json!({ "error": { "kind": f.kind, "message": f.message, "exit_status": f.code } });
            println!("{}", serde_json::to_string_pretty(&doc).expect("JSON values serialize"));
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
