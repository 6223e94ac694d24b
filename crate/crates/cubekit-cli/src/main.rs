//! `cubekit`: analyze finite set systems and graphs through well-gradedness,
//! shattering, duality and one-inclusion graph structure.
//!
//! Exit codes: 0 success, 2 input error, 3 resource cap exceeded, 4 internal
//! invariant violation (a bug signal, never expected).

mod report;

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cubekit_core::classify::classify;
use cubekit_core::duality::{dual, ess_dual};
use cubekit_core::error::CoreError;
use cubekit_core::graphs::{make_co_half_graph, make_half_graph, HalfGraphOrientation};
use cubekit_core::json::{graph_to_json, system_from_json, system_to_json, ParseError};
use cubekit_core::one_inclusion::build_graph;
use cubekit_core::oracle::{run_all_checks, CheckBounds, TheoremCheck};
use cubekit_core::set_system::{Member, SetSystem};
use cubekit_core::Caps;

use report::{classification_json, graph_report, system_report, ReportOptions};

/// Analyze finite set systems and graphs: well-gradedness, shattering,
/// duality, structural classification, and half-graph decompositions.
#[derive(Parser)]
#[command(name = "cubekit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Pretty-print the JSON output.
    #[arg(long, global = true)]
    pretty: bool,

    /// Cap for the subset-enumerating operations (default 20; env CUBEKIT_CAPS).
    #[arg(long, global = true)]
    max_domain: Option<usize>,

    /// Cap for clique and independent-set enumeration (default 20).
    #[arg(long, global = true)]
    max_vertices: Option<usize>,

    /// Re-derive the report's key predicates through their independent
    /// second routes and fail on any disagreement.
    #[arg(long, global = true)]
    debug_asserts: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a set-system file and print a full report.
    AnalyzeSystem { path: PathBuf },
    /// Analyze a graph file through its neighbourhood system.
    AnalyzeGraph { path: PathBuf },
    /// Print the dual of a set system, in the set-system file format.
    Dual { path: PathBuf },
    /// Print the essential dual of a set system.
    EssDual { path: PathBuf },
    /// Print the structural classification of a set system.
    Classify { path: PathBuf },
    /// Print the one-inclusion graph of a set system in DOT format.
    ExportDot { path: PathBuf },
    /// Generate a standard input: a graph or a set system, as JSON.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        n: usize,
    },
    /// Run the exhaustive verification battery and print its report.
    Verify {
        /// Largest set-system domain to sweep (hard limit 4).
        #[arg(long, default_value_t = 3)]
        systems: usize,
        /// Largest graph vertex count to sweep (hard limit 6).
        #[arg(long, default_value_t = 4)]
        graphs: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    HalfGraph,
    CoHalfGraph,
    FullChain,
    UpwardStarlike,
    DownwardStarlike,
}

#[derive(Debug)]
enum CliError {
    Io(String),
    Parse(ParseError),
    Core(CoreError),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(msg) => write!(f, "{msg}"),
            CliError::Parse(e) => write!(f, "{e}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) | CliError::Parse(_) | CliError::Usage(_) => 2,
            CliError::Core(e) => match e {
                CoreError::DomainTooLarge { .. }
                | CoreError::VertexCapExceeded { .. }
                | CoreError::SizeTooLarge { .. } => 3,
                CoreError::InvariantViolation(_) => 4,
                _ => 2,
            },
        }
    }
}

#[derive(Serialize)]
struct VerifyReport {
    schema: &'static str,
    bounds: VerifyBounds,
    all_passed: bool,
    checks: Vec<TheoremCheck>,
}

#[derive(Serialize)]
struct VerifyBounds {
    systems: usize,
    graphs: usize,
}

fn effective_caps(cli: &Cli) -> Result<Caps, CliError> {
    let mut caps = Caps::default();
    if let Ok(text) = std::env::var("CUBEKIT_CAPS") {
        caps = caps.parse_overrides(&text).map_err(CliError::Usage)?;
    }
    if let Some(d) = cli.max_domain {
        caps.max_domain = d;
    }
    if let Some(v) = cli.max_vertices {
        caps.max_vertices = v;
    }
    Ok(caps)
}

fn read_file(path: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

fn load_system(path: &PathBuf) -> Result<SetSystem, CliError> {
    Ok(system_from_json(&read_file(path)?)?)
}

fn to_text(value: &impl Serialize, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(value).expect("report serialization")
    } else {
        serde_json::to_string(value).expect("report serialization")
    }
}

fn gen_full_chain(n: usize) -> Result<SetSystem, CliError> {
    if n == 0 {
        return Err(CliError::Usage(
            "a full chain needs at least one member".into(),
        ));
    }
    if n > cubekit_core::MAX_DOMAIN + 1 {
        return Err(CoreError::DomainTooLarge {
            size: n - 1,
            cap: cubekit_core::MAX_DOMAIN,
        }
        .into());
    }
    let domain: Vec<String> = (1..n).map(|i| format!("x{i}")).collect();
    let family = (0..n).map(Member::full).collect();
    Ok(SetSystem::new(domain, family)?)
}

/// Upward-starlike system with `k` wings of lengths 1 through `k`, plus one
/// domain element that lies in no member.
fn gen_upward_starlike(k: usize) -> Result<SetSystem, CliError> {
    if k < 2 {
        return Err(CliError::Usage(
            "a starlike system needs at least two wings".into(),
        ));
    }
    let elements = k * (k + 1) / 2 + 1;
    if elements > cubekit_core::MAX_DOMAIN {
        return Err(CoreError::DomainTooLarge {
            size: elements,
            cap: cubekit_core::MAX_DOMAIN,
        }
        .into());
    }
    let mut domain = Vec::new();
    let mut family = vec![Member::EMPTY];
    for wing in 1..=k {
        let base = domain.len();
        for step in 1..=wing {
            domain.push(format!("w{wing}e{step}"));
            let bits = ((1u64 << step) - 1) << base;
            family.push(Member::from_bits(bits));
        }
    }
    domain.push("z".into());
    Ok(SetSystem::new(domain, family)?)
}

fn run(cli: &Cli) -> Result<(String, u8), CliError> {
    let caps = effective_caps(cli)?;
    let opts = ReportOptions {
        caps,
        strict: cli.debug_asserts,
    };
    match &cli.command {
        Command::AnalyzeSystem { path } => {
            let s = load_system(path)?;
            Ok((to_text(&system_report(&s, &opts)?, cli.pretty), 0))
        }
        Command::AnalyzeGraph { path } => {
            let g = cubekit_core::json::graph_from_json(&read_file(path)?)?;
            Ok((to_text(&graph_report(&g, &opts)?, cli.pretty), 0))
        }
        Command::Dual { path } => {
            let s = load_system(path)?;
            let d = dual(&s)?;
            Ok((to_text(&system_to_json(&d.system), cli.pretty), 0))
        }
        Command::EssDual { path } => {
            let s = load_system(path)?;
            let d = ess_dual(&s)?;
            Ok((to_text(&system_to_json(&d.system), cli.pretty), 0))
        }
        Command::Classify { path } => {
            let s = load_system(path)?;
            let c = classify(&s);
            Ok((to_text(&classification_json(&s, &c), cli.pretty), 0))
        }
        Command::ExportDot { path } => {
            let s = load_system(path)?;
            Ok((build_graph(&s).to_dot(), 0))
        }
        Command::Gen { kind, n } => {
            let n = *n;
            let value = match kind {
                GenKind::HalfGraph => {
                    graph_to_json(&make_half_graph(n, HalfGraphOrientation::Leq)?)
                }
                GenKind::CoHalfGraph => graph_to_json(&make_co_half_graph(n)?),
                GenKind::FullChain => system_to_json(&gen_full_chain(n)?),
                GenKind::UpwardStarlike => system_to_json(&gen_upward_starlike(n)?),
                GenKind::DownwardStarlike => {
                    system_to_json(&gen_upward_starlike(n)?.complement_family())
                }
            };
            Ok((to_text(&value, cli.pretty), 0))
        }
        Command::Verify { systems, graphs } => {
            let bounds = CheckBounds {
                max_system_domain: *systems,
                max_graph_vertices: *graphs,
            };
            let checks = run_all_checks(&bounds)?;
            let all_passed = checks.iter().all(|c| c.passed());
            let report = VerifyReport {
                schema: "cubekit/verify/1",
                bounds: VerifyBounds {
                    systems: *systems,
                    graphs: *graphs,
                },
                all_passed,
                checks,
            };
            // a failing theorem check means the implementation is wrong
            let code = if all_passed { 0 } else { 4 };
            Ok((to_text(&report, cli.pretty), code))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, code)) => {
            println!("{text}");
            ExitCode::from(code)
        }
        Err(err) => {
            eprintln!("cubekit: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
