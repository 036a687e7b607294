use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use latfac::cochar::{enumerate_closure_operators, enumerate_interior_operators, Endo};
use latfac::counting::{count_report, count_saturated_grid, poly_bernoulli};
use latfac::crypto::{enumerate_submonoids, MonoidOp};
use latfac::factorization::{enumerate_fac, FactorizationSystem};
use latfac::io::{
    lattice_from_json, lattice_to_dot, lattice_to_json, pairs_of, transfer_to_dot, EndoRecord, FsRecord, LatticeRecord,
    SubmonoidRecord, TransferRecord, FORMAT_VERSION,
};
use latfac::transfer::{enumerate_saturated, enumerate_transfer};
use latfac::verify::{run_suite, Suite, SuiteParams};
use latfac::{Lattice, Relation, Standard, TransferSystem, DEFAULT_MAX_STRUCTURES};

const CAP_VAR: &str = "LATFAC_MAX_ELEMENTS";

#[derive(Parser)]
#[command(name = "latfac", version, about = "Factorization systems on finite lattices")]
struct Cli {
    /// Emit JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    /// Emit Graphviz DOT where meaningful.
    #[arg(long, global = true, conflicts_with = "json")]
    dot: bool,
    /// Abort enumerations producing more than this many structures.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_STRUCTURES)]
    max_structures: usize,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build, check or dualize lattices.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// List or count structures on a lattice.
    Enumerate(EnumerateArgs),
    /// Run an exhaustive verification suite.
    Verify(VerifyArgs),
    /// Counting reports and closed forms.
    #[command(subcommand)]
    Count(CountCmd),
    /// Export a lattice or transfer system.
    #[command(subcommand)]
    Export(ExportCmd),
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Build a standard lattice: chain N, grid M N, boolean N, bowtie N, diamond, pentagon.
    Make {
        kind: String,
        params: Vec<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check that a file describes a lattice.
    Validate { lattice: String },
    /// Write the dual lattice.
    Dual {
        lattice: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Structure {
    Transfer,
    Fac,
    Saturated,
    Disklike,
    Closure,
    Interior,
    Submonoid,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OpArg {
    Meet,
    Join,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(value_enum)]
    structure: Structure,
    /// Lattice JSON file or standard name such as `grid(1,1)`.
    #[arg(long)]
    lattice: String,
    /// Print only the number of structures.
    #[arg(long)]
    count_only: bool,
    /// Monoid operation for submonoids.
    #[arg(long, value_enum, default_value = "meet")]
    op: OpArg,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_parser = parse_suite)]
    suite: Suite,
    #[arg(long)]
    lattice: Option<String>,
    /// Grid parameters for `polybernoulli`.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Subcommand)]
enum CountCmd {
    /// Every structure count on one lattice, cross-checked.
    Report {
        #[arg(long)]
        lattice: String,
    },
    /// B_{a,b} for a, b >= 1.
    PolyBernoulli { a: usize, b: usize },
    /// Saturated transfer systems on grid(m, n) by formula.
    SaturatedGrid {
        m: usize,
        n: usize,
        /// Also count by enumeration and compare.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Subcommand)]
enum ExportCmd {
    /// Hasse diagram, optionally with a transfer system overlaid.
    Dot {
        #[arg(long, required_unless_present = "transfer")]
        lattice: Option<String>,
        /// Transfer system JSON file to overlay.
        #[arg(long)]
        transfer: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Normalized lattice or transfer system JSON.
    Json {
        #[arg(long, required_unless_present = "transfer")]
        lattice: Option<String>,
        #[arg(long)]
        transfer: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|_| {
        let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("unknown suite; expected one of {}", names.join(", "))
    })
}

enum Failure {
    Usage(String),
    Domain(latfac::Error),
    Io(String),
    Verification(String),
}

impl From<latfac::Error> for Failure {
    fn from(e: latfac::Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome<T = ()> = Result<T, Failure>;

struct Ctx {
    json: bool,
    dot: bool,
    limit: usize,
    cap: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(failure) => {
            let (kind, message) = match failure {
                Failure::Domain(e) => (e.kind().to_string(), e.to_string()),
                Failure::Io(msg) => ("io".to_string(), msg),
                Failure::Verification(msg) => ("verification_failed".to_string(), msg),
                Failure::Usage(_) => unreachable!(),
            };
            let err = json!({
                "format_version": FORMAT_VERSION,
                "error": { "kind": kind, "message": message },
            });
            eprintln!("{err}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    if let Some(k) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let cap = match std::env::var(CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{CAP_VAR} must be a positive integer, got {v:?}")))?,
        Err(_) => latfac::lattice::DEFAULT_MAX_ELEMENTS,
    };
    let ctx = Ctx {
        json: cli.json,
        dot: cli.dot,
        limit: cli.max_structures,
        cap,
    };
    match cli.command {
        Command::Lattice(cmd) => lattice_cmd(&ctx, cmd),
        Command::Enumerate(args) => enumerate_cmd(&ctx, args),
        Command::Verify(args) => verify_cmd(&ctx, args),
        Command::Count(cmd) => count_cmd(&ctx, cmd),
        Command::Export(cmd) => export_cmd(&ctx, cmd),
    }
}

fn emit(output: Option<&Path>, text: &str) -> Outcome {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

/// Adds `format_version` to a JSON object.
fn versioned(mut value: Value) -> Value {
    if let Value::Object(map) = &mut value {
        map.insert("format_version".into(), FORMAT_VERSION.into());
    }
    value
}

fn no_dot(ctx: &Ctx, what: &str) -> Outcome {
    if ctx.dot {
        return Err(Failure::Usage(format!("--dot is not supported by {what}")));
    }
    Ok(())
}

/// A lattice JSON file, or a standard lattice written like `grid(1,1)`.
fn load_lattice(ctx: &Ctx, spec: &str) -> Outcome<Arc<Lattice>> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{spec}: {e}")))?;
        return Ok(Arc::new(lattice_from_json(&text, ctx.cap)?));
    }
    match spec.parse::<Standard>() {
        Ok(shape) => Ok(Arc::new(shape.build_with_cap(ctx.cap)?)),
        Err(_) => Err(Failure::Io(format!("{spec}: no such file or standard lattice"))),
    }
}

fn load_transfer(ctx: &Ctx, path: &Path) -> Outcome<TransferSystem> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let record: TransferRecord = serde_json::from_str(&text).map_err(latfac::Error::from)?;
    Ok(record.to_system(path.parent(), ctx.cap)?)
}

fn lattice_out(ctx: &Ctx, lattice: &Lattice, output: Option<&Path>) -> Outcome {
    let text = if ctx.dot {
        lattice_to_dot(lattice)
    } else {
        lattice_to_json(lattice)
    };
    emit(output, &text)
}

fn lattice_cmd(ctx: &Ctx, cmd: LatticeCmd) -> Outcome {
    match cmd {
        LatticeCmd::Make { kind, params, output } => {
            let lattice = Standard::parse(&kind, &params)?.build_with_cap(ctx.cap)?;
            lattice_out(ctx, &lattice, output.as_deref())
        }
        LatticeCmd::Dual { lattice, output } => {
            let lattice = load_lattice(ctx, &lattice)?;
            lattice_out(ctx, &lattice.dual(), output.as_deref())
        }
        LatticeCmd::Validate { lattice } => {
            no_dot(ctx, "lattice validate")?;
            let l = load_lattice(ctx, &lattice)?;
            if ctx.json {
                let v = versioned(json!({
                    "valid": true,
                    "name": l.name(),
                    "size": l.size(),
                    "covers": l.covering_relations().len(),
                    "modular": l.is_modular(),
                }));
                emit(None, &pretty(&v))
            } else {
                let modular = if l.is_modular() { "modular" } else { "not modular" };
                emit(
                    None,
                    &format!("valid lattice {}: {} elements, {modular}", l.name(), l.size()),
                )
            }
        }
    }
}

fn show_pairs(lattice: &Lattice, rel: &Relation) -> String {
    let parts: Vec<String> = rel
        .pairs()
        .map(|(x, y)| format!("{} → {}", lattice.label(x), lattice.label(y)))
        .collect();
    format!("{{{}}}", parts.join(", "))
}

fn show_endo(f: &Endo) -> String {
    let l = f.lattice();
    let parts: Vec<String> = l
        .elements()
        .map(|x| format!("{} ↦ {}", l.label(x), l.label(f.apply(x))))
        .collect();
    parts.join(", ")
}

fn show_fs(fs: &FactorizationSystem) -> String {
    let l = fs.lattice();
    format!("L = {}  R = {}", show_pairs(l, fs.left()), show_pairs(l, fs.right()))
}

fn enumerate_cmd(ctx: &Ctx, args: EnumerateArgs) -> Outcome {
    let lat = load_lattice(ctx, &args.lattice)?;
    let op = match args.op {
        OpArg::Meet => MonoidOp::Meet,
        OpArg::Join => MonoidOp::Join,
    };
    let (kind, lines, items, dots): (String, Vec<String>, Vec<Value>, Vec<String>) = match args.structure {
        Structure::Transfer | Structure::Saturated | Structure::Disklike => {
            let (kind, systems) = match args.structure {
                Structure::Transfer => ("transfer", enumerate_transfer(&lat, ctx.limit)?),
                Structure::Saturated => ("saturated", enumerate_saturated(&lat, ctx.limit)?),
                _ => (
                    "disklike",
                    enumerate_transfer(&lat, ctx.limit)?
                        .into_iter()
                        .filter(|t| t.is_disklike())
                        .collect(),
                ),
            };
            (
                kind.to_string(),
                systems.iter().map(|t| show_pairs(&lat, t.relation())).collect(),
                systems
                    .iter()
                    .map(|t| json!({ "pairs": pairs_of(t.relation()) }))
                    .collect(),
                systems.iter().map(transfer_to_dot).collect(),
            )
        }
        Structure::Fac => {
            let systems = enumerate_fac(&lat, ctx.limit)?;
            (
                "fac".into(),
                systems.iter().map(show_fs).collect(),
                systems
                    .iter()
                    .map(|f| serde_json::to_value(FsRecord::from_fs(f)).unwrap())
                    .collect(),
                Vec::new(),
            )
        }
        Structure::Closure | Structure::Interior => {
            let (kind, ops) = if args.structure == Structure::Closure {
                ("closure", enumerate_closure_operators(&lat, ctx.limit)?)
            } else {
                ("interior", enumerate_interior_operators(&lat, ctx.limit)?)
            };
            (
                kind.into(),
                ops.iter().map(show_endo).collect(),
                ops.iter()
                    .map(|f| serde_json::to_value(EndoRecord::from_endo(f)).unwrap())
                    .collect(),
                Vec::new(),
            )
        }
        Structure::Submonoid => {
            let subs = enumerate_submonoids(&lat, op, ctx.limit)?;
            let show = |s: &latfac::crypto::Submonoid| {
                let labels: Vec<&str> = s.members().iter().map(|x| lat.label(x)).collect();
                format!("{{{}}}", labels.join(", "))
            };
            (
                format!("submonoid-{op}"),
                subs.iter().map(show).collect(),
                subs.iter()
                    .map(|s| serde_json::to_value(SubmonoidRecord::from_submonoid(s)).unwrap())
                    .collect(),
                Vec::new(),
            )
        }
    };
    let count = lines.len();
    if ctx.dot {
        let drawable = matches!(
            args.structure,
            Structure::Transfer | Structure::Saturated | Structure::Disklike
        );
        if args.count_only || !drawable {
            return no_dot(ctx, &format!("enumerate {kind}"));
        }
        return emit(None, &dots.concat());
    }
    if ctx.json {
        let mut v = json!({ "lattice": lat.name(), "kind": kind, "count": count });
        if !args.count_only {
            v["items"] = Value::Array(items);
        }
        return emit(None, &pretty(&versioned(v)));
    }
    if args.count_only {
        return emit(None, &count.to_string());
    }
    let width = count.saturating_sub(1).to_string().len();
    let mut text = String::new();
    for (i, line) in lines.iter().enumerate() {
        text.push_str(&format!("{i:>width$}  {line}\n"));
    }
    text.push_str(&format!("{count} {kind} on {}", lat.name()));
    emit(None, &text)
}

fn verify_cmd(ctx: &Ctx, args: VerifyArgs) -> Outcome {
    no_dot(ctx, "verify")?;
    let params = SuiteParams { m: args.m, n: args.n };
    let lattice = match (&args.lattice, args.suite, args.m, args.n) {
        (Some(spec), ..) => load_lattice(ctx, spec)?,
        (None, Suite::Polybernoulli, Some(m), Some(n)) => Arc::new(Standard::Grid(m, n).build_with_cap(ctx.cap)?),
        _ => {
            return Err(Failure::Usage(match args.suite {
                Suite::Polybernoulli => "verify polybernoulli needs --lattice or both --m and --n".into(),
                s => format!("verify {s} needs --lattice"),
            }))
        }
    };
    let report = run_suite(args.suite, &lattice, params, ctx.limit)?;
    if ctx.json {
        emit(None, &pretty(&serde_json::to_value(&report).unwrap()))?;
    } else {
        emit(None, &report.to_text())?;
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "suite {} failed {} of {} checks on {}",
            report.suite, report.failed, report.checks, report.lattice
        )))
    }
}

fn count_cmd(ctx: &Ctx, cmd: CountCmd) -> Outcome {
    no_dot(ctx, "count")?;
    match cmd {
        CountCmd::Report { lattice } => {
            let lat = load_lattice(ctx, &lattice)?;
            let report = count_report(&lat, ctx.limit)?;
            if ctx.json {
                emit(None, &pretty(&versioned(serde_json::to_value(&report).unwrap())))
            } else {
                emit(None, &report.to_table())
            }
        }
        CountCmd::PolyBernoulli { a, b } => {
            let value = poly_bernoulli(a, b)?;
            if ctx.json {
                emit(
                    None,
                    &pretty(&versioned(json!({ "a": a, "b": b, "value": value.to_string() }))),
                )
            } else {
                emit(None, &value.to_string())
            }
        }
        CountCmd::SaturatedGrid { m, n, check } => {
            let value = count_saturated_grid(m, n, check, ctx.limit)?;
            if ctx.json {
                let v = json!({ "m": m, "n": n, "value": value.to_string(), "checked": check });
                emit(None, &pretty(&versioned(v)))
            } else {
                emit(None, &value.to_string())
            }
        }
    }
}

fn export_cmd(ctx: &Ctx, cmd: ExportCmd) -> Outcome {
    let (lattice, transfer, output, dot) = match cmd {
        ExportCmd::Dot {
            lattice,
            transfer,
            output,
        } => (lattice, transfer, output, true),
        ExportCmd::Json {
            lattice,
            transfer,
            output,
        } => (lattice, transfer, output, false),
    };
    let text = match (transfer, dot) {
        (Some(path), true) => transfer_to_dot(&load_transfer(ctx, &path)?),
        (Some(path), false) => {
            let t = load_transfer(ctx, &path)?;
            pretty(&serde_json::to_value(TransferRecord::from_system(&t)).unwrap())
        }
        (None, dot) => {
            let lat = load_lattice(ctx, lattice.as_deref().expect("required by clap"))?;
            if dot {
                lattice_to_dot(&lat)
            } else {
                pretty(&serde_json::to_value(LatticeRecord::from_lattice(&lat)).unwrap())
            }
        }
    };
    emit(output.as_deref(), &text)
}
