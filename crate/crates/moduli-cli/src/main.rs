//! File-based, deterministic front end: every command reads JSON files,
//! writes JSON to stdout or --out, and exits with 0 (ok), 2 (degenerate
//! input), 3 (validation failure), or 4 (internal invariant violation).

use clap::{Parser, Subcommand, ValueEnum};
use moduli::brauer::{
    non_retract_witness, tame_residue, verify_certificate, BrauerError, Place, QuaternionOverFt,
    Residue,
};
use moduli::exactnum::{format_rational, rational_roots, Poly};
use moduli::jsonio::{
    self, algebra_to_desc, config_from_desc, context_to_desc, subspace_to_desc, ChartDesc,
    ConfigDesc, FtQuaternionDesc, QuaternionDesc,
};
use moduli::parametrize::{build_context, canonical, chart_coords, from_chart, ParamError};
use moduli::selftest::{self, Scale};
use serde::Serialize;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_DEGENERATE: u8 = 2;
const EXIT_VALIDATION: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(name = "moduli-cli", version, about = "Exact canonical forms and obstruction certificates for twisted point configurations")]
struct Cli {
    /// Seed for any sampled values; recorded in outputs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: i64,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format (only json).
    #[arg(long, global = true, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an algebra descriptor and report which construction applies.
    Define { algebra: PathBuf },
    /// Build and emit the full parametrization context for an algebra.
    Context { algebra: PathBuf },
    /// Canonical subspace and chart coordinates of one configuration.
    Canonical { context: PathBuf, config: PathBuf },
    /// Decide whether two configurations are in the same orbit.
    Compare {
        context: PathBuf,
        config_a: PathBuf,
        config_b: PathBuf,
    },
    /// Canonicalize, pass through the chart, and re-verify equality.
    Roundtrip { context: PathBuf, config: PathBuf },
    /// Emit a non-retract-rationality certificate for even n.
    Obstruction {
        #[arg(long)]
        n: usize,
        quaternion: PathBuf,
    },
    /// Tame residues of a quaternion algebra over Q(t).
    Residues { quaternion: PathBuf },
    /// Run the acceptance suite.
    Selftest {
        #[arg(value_enum, default_value = "small")]
        scale: ScaleArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ScaleArg {
    Small,
    Full,
}

struct Failure {
    code: u8,
    reason: String,
}

impl Failure {
    fn validation(reason: impl Into<String>) -> Self {
        Failure { code: EXIT_VALIDATION, reason: reason.into() }
    }
    fn degenerate(reason: impl Into<String>) -> Self {
        Failure { code: EXIT_DEGENERATE, reason: reason.into() }
    }
    fn internal(reason: impl Into<String>) -> Self {
        Failure { code: EXIT_INTERNAL, reason: reason.into() }
    }
}

impl From<jsonio::IoError> for Failure {
    fn from(e: jsonio::IoError) -> Self {
        Failure::validation(format!("input: {e}"))
    }
}

impl From<BrauerError> for Failure {
    fn from(e: BrauerError) -> Self {
        match e {
            BrauerError::Ramified | BrauerError::ZeroEntry => {
                Failure::degenerate(format!("brauer: {e}"))
            }
            _ => Failure::validation(format!("brauer: {e}")),
        }
    }
}

impl From<ParamError> for Failure {
    fn from(e: ParamError) -> Self {
        match e {
            ParamError::NotInGeneralPosition
            | ParamError::NotInDenseOrbit
            | ParamError::ContextDegenerate(_) => Failure::degenerate(format!("parametrize: {e}")),
            ParamError::NotInZ | ParamError::SingularMatrix | ParamError::NonUnitScale => {
                Failure::internal(format!("parametrize: {e}"))
            }
            _ => Failure::validation(format!("parametrize: {e}")),
        }
    }
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::validation(format!("read {}: {e}", path.display())))
}

fn emit<T: Serialize>(cli_out: &Option<PathBuf>, value: &T) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Failure::internal(format!("serialize: {e}")))?;
    text.push('\n');
    match cli_out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::validation(format!("write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct DefineReport {
    degree: usize,
    parity: &'static str,
    branch: &'static str,
    factors: usize,
}

#[derive(Serialize)]
struct CanonicalReport {
    seed: i64,
    canonical: jsonio::SubspaceDesc,
    chart: ChartDesc,
}

#[derive(Serialize)]
struct CompareReport {
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

#[derive(Serialize)]
struct RoundtripReport {
    seed: i64,
    canonical: jsonio::SubspaceDesc,
    chart: ChartDesc,
    rebuilt_equal: bool,
}

#[derive(Serialize)]
struct ObstructionReport {
    witness_algebra: jsonio::AlgebraDesc,
    certificate: moduli::brauer::Certificate,
    verified: bool,
}

#[derive(Serialize)]
struct ResidueEntry {
    place: String,
    residue: String,
}

#[derive(Serialize)]
struct ResidueReport {
    entries: Vec<ResidueEntry>,
}

#[derive(Serialize)]
struct SelftestLine {
    criterion: usize,
    name: &'static str,
    passed: bool,
    detail: String,
}

#[derive(Serialize)]
struct SelftestReport {
    seed: i64,
    scale: &'static str,
    passed: bool,
    results: Vec<SelftestLine>,
}

fn place_label(place: &Place) -> String {
    match place {
        Place::Infinity => "inf".to_string(),
        Place::Finite(p) => format!("{p}"),
    }
}

fn residue_label(r: &Residue) -> String {
    match r {
        Residue::Trivial => "trivial".to_string(),
        Residue::Class(b) => format!("class {b}"),
        Residue::Undecided(p) => format!("undecided ({p})"),
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Define { algebra } => {
            let alg = jsonio::parse_algebra_json(&read_file(algebra)?)?;
            let n = alg.degree();
            let (parity, branch) = if n % 2 == 1 && n >= 5 {
                ("odd", "parametrization available")
            } else if n % 2 == 0 && n >= 6 {
                ("even", "obstruction module applies")
            } else if n % 2 == 1 {
                ("odd", "degree below the parametrization range")
            } else {
                ("even", "degree below the obstruction range")
            };
            emit(&cli.out, &DefineReport { degree: n, parity, branch, factors: alg.factors().len() })?;
            Ok(EXIT_OK)
        }
        Command::Context { algebra } => {
            let alg = jsonio::parse_algebra_json(&read_file(algebra)?)?;
            let ctx = build_context(&alg, cli.seed)?;
            emit(&cli.out, &context_to_desc(&ctx, cli.seed))?;
            Ok(EXIT_OK)
        }
        Command::Canonical { context, config } => {
            let ctx = jsonio::parse_context_json(&read_file(context)?)?;
            let desc: ConfigDesc = serde_json::from_str(&read_file(config)?)
                .map_err(|e| Failure::validation(format!("config: {e}")))?;
            let cfg = config_from_desc(&desc)?;
            let s_plane = canonical(&ctx, &cfg)?;
            let (pivots, coords) = chart_coords(&ctx, &s_plane)?;
            emit(&cli.out, &CanonicalReport {
                seed: cli.seed,
                canonical: subspace_to_desc(&s_plane),
                chart: ChartDesc {
                    pivots: [pivots.0, pivots.1],
                    coords: coords.iter().map(format_rational).collect(),
                },
            })?;
            Ok(EXIT_OK)
        }
        Command::Compare { context, config_a, config_b } => {
            let ctx = jsonio::parse_context_json(&read_file(context)?)?;
            let cfg_a = jsonio::parse_config_json(&read_file(config_a)?)?;
            let cfg_b = jsonio::parse_config_json(&read_file(config_b)?)?;
            let verdict = match (canonical(&ctx, &cfg_a), canonical(&ctx, &cfg_b)) {
                (Ok(a), Ok(b)) => CompareReport {
                    verdict: if a == b { "EQUIVALENT" } else { "DIFFERENT" },
                    reason: None,
                },
                (Err(e), _) | (_, Err(e)) => match e {
                    ParamError::NotInGeneralPosition | ParamError::NotInDenseOrbit => {
                        CompareReport { verdict: "DEGENERATE", reason: Some(e.to_string()) }
                    }
                    other => return Err(other.into()),
                },
            };
            let code = if verdict.verdict == "DEGENERATE" { EXIT_DEGENERATE } else { EXIT_OK };
            emit(&cli.out, &verdict)?;
            Ok(code)
        }
        Command::Roundtrip { context, config } => {
            let ctx = jsonio::parse_context_json(&read_file(context)?)?;
            let cfg = jsonio::parse_config_json(&read_file(config)?)?;
            let s_plane = canonical(&ctx, &cfg)?;
            let (pivots, coords) = chart_coords(&ctx, &s_plane)?;
            let rebuilt = from_chart(&ctx, pivots, &coords)?;
            if rebuilt != s_plane {
                return Err(Failure::internal("chart round-trip changed the subspace"));
            }
            emit(&cli.out, &RoundtripReport {
                seed: cli.seed,
                canonical: subspace_to_desc(&s_plane),
                chart: ChartDesc {
                    pivots: [pivots.0, pivots.1],
                    coords: coords.iter().map(format_rational).collect(),
                },
                rebuilt_equal: true,
            })?;
            Ok(EXIT_OK)
        }
        Command::Obstruction { n, quaternion } => {
            let desc: QuaternionDesc = serde_json::from_str(&read_file(quaternion)?)
                .map_err(|e| Failure::validation(format!("quaternion: {e}")))?;
            let alg = jsonio::quaternion_from_desc(&desc)?;
            let (e, cert) = non_retract_witness(*n, &alg)?;
            let verified = verify_certificate(&cert, &e)?;
            if !verified {
                return Err(Failure::internal("fresh certificate failed re-verification"));
            }
            emit(&cli.out, &ObstructionReport {
                witness_algebra: algebra_to_desc(&e),
                certificate: cert,
                verified,
            })?;
            Ok(EXIT_OK)
        }
        Command::Residues { quaternion } => {
            let desc: FtQuaternionDesc = serde_json::from_str(&read_file(quaternion)?)
                .map_err(|e| Failure::validation(format!("quaternion: {e}")))?;
            let alg = jsonio::ft_quaternion_from_desc(&desc)?;
            let entries = residue_table(&alg)?;
            emit(&cli.out, &ResidueReport { entries })?;
            Ok(EXIT_OK)
        }
        Command::Selftest { scale } => {
            let (s, label) = match scale {
                ScaleArg::Small => (Scale::Small, "small"),
                ScaleArg::Full => (Scale::Full, "full"),
            };
            let results = selftest::run(s, cli.seed as u64);
            let passed = results.iter().all(|r| r.passed);
            for r in &results {
                eprintln!(
                    "criterion {}: {} [{}] {}",
                    r.index,
                    if r.passed { "pass" } else { "FAIL" },
                    r.name,
                    r.detail
                );
            }
            emit(&cli.out, &SelftestReport {
                seed: cli.seed,
                scale: label,
                passed,
                results: results
                    .into_iter()
                    .map(|r| SelftestLine {
                        criterion: r.index,
                        name: r.name,
                        passed: r.passed,
                        detail: r.detail,
                    })
                    .collect(),
            })?;
            Ok(if passed { EXIT_OK } else { EXIT_INTERNAL })
        }
    }
}

/// Residues at infinity and at every finite place where ramification is
/// possible: the rational roots of f and g (higher-degree ramified places
/// would surface as Undecided and can be queried through the library).
fn residue_table(alg: &QuaternionOverFt) -> Result<Vec<ResidueEntry>, Failure> {
    let mut places = vec![Place::Infinity];
    let mut roots = Vec::new();
    for p in [alg.f(), alg.g()] {
        for r in rational_roots(p).map_err(|e| Failure::validation(format!("roots: {e}")))? {
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
    }
    roots.sort();
    for r in roots {
        places.push(Place::Finite(Poly::new(vec![-r, moduli::exactnum::rat(1)])));
    }
    let mut entries = Vec::new();
    for place in &places {
        let rc = tame_residue(alg, place)?;
        entries.push(ResidueEntry {
            place: place_label(place),
            residue: residue_label(&rc.residue),
        });
    }
    Ok(entries)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = std::panic::catch_unwind(|| run(&cli));
    match outcome {
        Ok(Ok(code)) => ExitCode::from(code),
        Ok(Err(f)) => {
            eprintln!("error[{}]: {}", f.code, f.reason);
            ExitCode::from(f.code)
        }
        Err(_) => {
            eprintln!("error[{EXIT_INTERNAL}]: internal invariant violation");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}
