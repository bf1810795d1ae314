//! Command-line front door: generate systems, run the decision procedures,
//! emit canonical JSON reports and DOT graphs.
//!
//! Exit status separates verdict from process: 0 means a verdict was
//! computed (pass or fail alike), 2 means the invocation or input was bad,
//! 3 means a resource cap fired and the question is undecided.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use pseudotrap_core::algebra::{check_uniformity_base, AlgebraError, AxiomOutcome};
use pseudotrap_core::graph::{build_metric_graph, count_walks, eps_grid, to_dot, GraphError};
use pseudotrap_core::model::{
    load_system, metric_entourage, save_system, FiniteSystem, ModelError, PointSet,
};
use pseudotrap_core::orbit::{hausdorff_distance, is_minimal, omega_limit, OrbitError};
use pseudotrap_core::report::{
    canonical_json, check_report, minimality_report, orbital_report, strong_orbital_report,
    sweep_report, sws_report, system_hash, trap_check_report,
};
use pseudotrap_core::verifier::{
    certify_second_weak_shadowing, cover_check, minimality_criterion, oracle_cover_check,
    oracle_trap_check, orbital_shadowing_check, strong_orbital_check_minimal, trap_check,
    trap_search, SearchLimits, VerifierError,
};
use pseudotrap_core::zoo::{
    cyclic_rotation, disjoint_attractors, interval_map_grid, random_map, IntervalKind,
    RandomMetric, RotationMetric, ZooError,
};

const STATE_CAP_VAR: &str = "PSEUDOTRAP_STATE_CAP";

/// Oracle cross-checks run automatically inside this envelope.
const ORACLE_MAX_POINTS: usize = 8;
const ORACLE_MAX_STEPS: usize = 6;

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Undecided(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Undecided(_) => 3,
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<ZooError> for CliError {
    fn from(e: ZooError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<OrbitError> for CliError {
    fn from(e: OrbitError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::WalkCapExceeded { .. } => CliError::Undecided(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<VerifierError> for CliError {
    fn from(e: VerifierError) -> Self {
        match e {
            VerifierError::StateCap { .. } => CliError::Undecided(e.to_string()),
            VerifierError::Graph(g) => g.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "pseudotrap",
    about = "Exact shadowing diagnostics for finite dynamical systems",
    version
)]
struct RunConfig {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct SystemArg {
    /// System JSON file.
    #[arg(short = 's', long = "system", value_name = "FILE")]
    system: PathBuf,
}

#[derive(Debug, Args)]
struct OutputArg {
    /// Write the report here instead of standard output.
    #[arg(short = 'o', long = "output", value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RotationMetricArg {
    Arc,
    Chordlike,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RandomMetricArg {
    Line,
    RandomValid,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum IntervalKindArg {
    Logistic,
    Tent,
}

#[derive(Debug, Subcommand)]
enum Generate {
    /// Cyclic rotation on q points.
    Rotation {
        #[arg(long)]
        q: usize,
        #[arg(long, value_enum, default_value_t = RotationMetricArg::Arc)]
        metric: RotationMetricArg,
        #[arg(long, default_value_t = 1)]
        scale: u64,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Discretized interval map on N grid centers.
    Interval {
        #[arg(long, value_enum)]
        kind: IntervalKindArg,
        /// Logistic parameter numerator; required for --kind logistic.
        #[arg(long)]
        r_num: Option<i64>,
        /// Logistic parameter denominator; required for --kind logistic.
        #[arg(long)]
        r_den: Option<i64>,
        #[arg(long)]
        grid: usize,
        #[arg(long, default_value_t = 1)]
        scale: u64,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Seeded random map with a line or shortest-path-closed metric.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = RandomMetricArg::Line)]
        metric: RandomMetricArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Disjoint cycles separated by a flat gap.
    Attractors {
        /// Comma-separated cycle sizes, e.g. 3,1.
        #[arg(long, value_delimiter = ',', required = true)]
        cycles: Vec<usize>,
        #[arg(long)]
        separation: u64,
        #[command(flatten)]
        out: OutputArg,
    },
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit a system from one of the built-in families.
    #[command(subcommand)]
    Generate(Generate),
    /// Eventual cycle and entry time, per point or for one point.
    Omega {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long)]
        point: Option<usize>,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Is the map a single full cycle?
    Minimal {
        #[command(flatten)]
        sys: SystemArg,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Hausdorff distance between two point sets.
    Hausdorff {
        #[command(flatten)]
        sys: SystemArg,
        /// Comma-separated point indices.
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<usize>,
        /// Comma-separated point indices.
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<usize>,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Axioms of a uniformity base, on the full metric-entourage family.
    UniformityCheck {
        #[command(flatten)]
        sys: SystemArg,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Cycle trapping: fixed (delta, n) verdict or full grid search.
    Trap {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long)]
        eps: u64,
        #[arg(long)]
        delta: Option<u64>,
        #[arg(long)]
        n: Option<usize>,
        /// Sweep the delta grid and report the most robust witness.
        #[arg(long)]
        search: bool,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Second weak shadowing certificate at one eps.
    Sws {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long)]
        eps: u64,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Space covering at a fixed (delta, n).
    Cover {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long)]
        eps: u64,
        #[arg(long)]
        delta: u64,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Decide minimality through the covering criterion.
    MinimalityCriterion {
        #[command(flatten)]
        sys: SystemArg,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Strong orbital shadowing on a minimal system.
    StrongOrbital {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long)]
        eps: u64,
        #[arg(long)]
        horizon: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 16)]
        samples: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Finite-horizon orbital shadowing diagnostic.
    Orbital {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long)]
        eps: u64,
        #[arg(long)]
        delta: u64,
        #[arg(long)]
        horizon: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Pseudo-orbit graph as DOT.
    ExportDot {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long)]
        delta: u64,
        #[command(flatten)]
        out: OutputArg,
    },
}

fn main() -> ExitCode {
    let cfg = RunConfig::parse();
    match run(cfg.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn emit(text: &str, out: &OutputArg) -> Result<(), CliError> {
    match &out.output {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn read_system(arg: &SystemArg) -> Result<FiniteSystem, CliError> {
    let text = fs::read_to_string(&arg.system)
        .map_err(|e| CliError::Usage(format!("{}: {e}", arg.system.display())))?;
    load_system(&text).map_err(|e| CliError::Usage(format!("{}: {e}", arg.system.display())))
}

fn limits_from_env() -> Result<SearchLimits, CliError> {
    let mut limits = SearchLimits::default();
    if let Ok(raw) = std::env::var(STATE_CAP_VAR) {
        let cap: usize = raw
            .parse()
            .map_err(|_| CliError::Usage(format!("{STATE_CAP_VAR} must be an integer, got {raw:?}")))?;
        if cap == 0 {
            return Err(CliError::Usage(format!("{STATE_CAP_VAR} must be positive")));
        }
        limits.state_cap = cap;
    }
    Ok(limits)
}

fn point_set(s: &FiniteSystem, points: &[usize]) -> Result<PointSet, CliError> {
    Ok(PointSet::from_indices(s.num_points(), points)?)
}

/// Small systems get the enumeration oracle re-run automatically; a mismatch
/// would be an implementation bug, not an input problem.
fn oracle_in_reach(s: &FiniteSystem, delta: u64, n: usize, limits: SearchLimits) -> bool {
    if s.num_points() > ORACLE_MAX_POINTS || n > ORACLE_MAX_STEPS {
        return false;
    }
    match build_metric_graph(s, delta) {
        Ok(g) => count_walks(&g, n) <= limits.walk_cap,
        Err(_) => false,
    }
}

#[derive(Serialize)]
struct OmegaEntry {
    point: usize,
    entry_time: usize,
    cycle: Vec<usize>,
}

#[derive(Serialize)]
struct OmegaDoc {
    command: String,
    system: String,
    points: Vec<OmegaEntry>,
}

#[derive(Serialize)]
struct MinimalDoc {
    command: String,
    system: String,
    minimal: bool,
}

#[derive(Serialize)]
struct HausdorffDoc {
    command: String,
    system: String,
    a: Vec<usize>,
    b: Vec<usize>,
    classical: u64,
    least_strict_eps: u64,
}

#[derive(Serialize)]
struct AxiomDoc {
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<usize>>,
}

#[derive(Serialize)]
struct UniformityDoc {
    command: String,
    system: String,
    family_size: usize,
    intersection: AxiomDoc,
    composition: AxiomDoc,
    inverse: AxiomDoc,
    separating: bool,
    pass: bool,
}

fn axiom_doc(outcome: &AxiomOutcome) -> AxiomDoc {
    match outcome {
        AxiomOutcome::Pass => AxiomDoc { pass: true, witness: None },
        AxiomOutcome::Fail { witness } => AxiomDoc { pass: false, witness: Some(witness.clone()) },
    }
}

fn run(cmd: Command) -> Result<(), CliError> {
    let limits = limits_from_env()?;
    match cmd {
        Command::Generate(gen) => {
            let (system, out) = match gen {
                Generate::Rotation { q, metric, scale, out } => {
                    let metric = match metric {
                        RotationMetricArg::Arc => RotationMetric::Arc,
                        RotationMetricArg::Chordlike => RotationMetric::Chordlike,
                    };
                    (cyclic_rotation(q, metric, scale)?, out)
                }
                Generate::Interval { kind, r_num, r_den, grid, scale, out } => {
                    let kind = match kind {
                        IntervalKindArg::Logistic => {
                            let (Some(num), Some(den)) = (r_num, r_den) else {
                                return Err(CliError::Usage(
                                    "--kind logistic needs --r-num and --r-den".to_string(),
                                ));
                            };
                            IntervalKind::Logistic { r_num: num, r_den: den }
                        }
                        IntervalKindArg::Tent => {
                            if r_num.is_some() || r_den.is_some() {
                                return Err(CliError::Usage(
                                    "--r-num/--r-den only apply to --kind logistic".to_string(),
                                ));
                            }
                            IntervalKind::Tent
                        }
                    };
                    (interval_map_grid(kind, grid, scale)?, out)
                }
                Generate::Random { n, metric, seed, out } => {
                    let metric = match metric {
                        RandomMetricArg::Line => RandomMetric::Line,
                        RandomMetricArg::RandomValid => RandomMetric::RandomValid,
                    };
                    (random_map(n, metric, seed)?, out)
                }
                Generate::Attractors { cycles, separation, out } => {
                    (disjoint_attractors(&cycles, separation)?, out)
                }
            };
            emit(&save_system(&system), &out)
        }
        Command::Omega { sys, point, out } => {
            let s = read_system(&sys)?;
            let targets: Vec<usize> = match point {
                Some(p) => vec![p],
                None => (0..s.num_points()).collect(),
            };
            let mut points = Vec::with_capacity(targets.len());
            for p in targets {
                let o = omega_limit(&s, p)?;
                points.push(OmegaEntry {
                    point: p,
                    entry_time: o.entry_time,
                    cycle: o.cycle.to_vec(),
                });
            }
            let doc = OmegaDoc {
                command: "omega".to_string(),
                system: system_hash(&s),
                points,
            };
            emit(&canonical_json(&doc), &out)
        }
        Command::Minimal { sys, out } => {
            let s = read_system(&sys)?;
            let doc = MinimalDoc {
                command: "minimal".to_string(),
                system: system_hash(&s),
                minimal: is_minimal(&s),
            };
            emit(&canonical_json(&doc), &out)
        }
        Command::Hausdorff { sys, a, b, out } => {
            let s = read_system(&sys)?;
            let d = hausdorff_distance(&s, &point_set(&s, &a)?, &point_set(&s, &b)?)?;
            let doc = HausdorffDoc {
                command: "hausdorff".to_string(),
                system: system_hash(&s),
                a,
                b,
                classical: d.classical,
                least_strict_eps: d.least_strict_eps,
            };
            emit(&canonical_json(&doc), &out)
        }
        Command::UniformityCheck { sys, out } => {
            let s = read_system(&sys)?;
            let family: Vec<_> = eps_grid(&s)
                .into_iter()
                .map(|eps| metric_entourage(&s, eps))
                .collect::<Result<_, _>>()?;
            let report = check_uniformity_base(&family)?;
            let doc = UniformityDoc {
                command: "uniformity_check".to_string(),
                system: system_hash(&s),
                family_size: family.len(),
                intersection: axiom_doc(&report.intersection),
                composition: axiom_doc(&report.composition),
                inverse: axiom_doc(&report.inverse),
                separating: report.separating,
                pass: report.all_pass(),
            };
            emit(&canonical_json(&doc), &out)
        }
        Command::Trap { sys, eps, delta, n, search, out } => {
            let s = read_system(&sys)?;
            match (search, delta, n) {
                (true, None, None) => {
                    let outcome = trap_search(&s, eps, limits)?;
                    let doc = sweep_report(&s, "cycle_trapping", &outcome, false);
                    emit(&canonical_json(&doc), &out)
                }
                (false, Some(delta), Some(n)) => {
                    let cert = trap_check(&s, eps, delta, n, limits)?;
                    let oracle_checked = oracle_in_reach(&s, delta, n, limits);
                    if oracle_checked {
                        let slow = oracle_trap_check(&s, eps, delta, n, limits)?;
                        assert_eq!(
                            (cert.verdict, &cert.counterexample),
                            (slow.verdict, &slow.counterexample),
                            "product search disagrees with the enumeration oracle"
                        );
                    }
                    let doc = trap_check_report(&s, &cert, delta, oracle_checked);
                    emit(&canonical_json(&doc), &out)
                }
                _ => Err(CliError::Usage(
                    "trap needs either --search or both --delta and --n".to_string(),
                )),
            }
        }
        Command::Sws { sys, eps, out } => {
            let s = read_system(&sys)?;
            let cert = certify_second_weak_shadowing(&s, eps, limits)?;
            let doc = sws_report(&s, &cert, false);
            emit(&canonical_json(&doc), &out)
        }
        Command::Cover { sys, eps, delta, n, out } => {
            let s = read_system(&sys)?;
            let cert = cover_check(&s, eps, delta, n, limits)?;
            let oracle_checked = oracle_in_reach(&s, delta, n, limits);
            if oracle_checked {
                let slow = oracle_cover_check(&s, eps, delta, n, limits)?;
                assert_eq!(
                    (cert.verdict, &cert.counterexample),
                    (slow.verdict, &slow.counterexample),
                    "product search disagrees with the enumeration oracle"
                );
            }
            let doc = check_report(
                &s,
                "space_covering",
                eps,
                delta,
                n,
                cert.verdict,
                cert.counterexample.as_ref().map(|w| w.points()),
                oracle_checked,
            );
            emit(&canonical_json(&doc), &out)
        }
        Command::MinimalityCriterion { sys, out } => {
            let s = read_system(&sys)?;
            let verdict = minimality_criterion(&s, limits)?;
            assert_eq!(
                verdict.minimal,
                is_minimal(&s),
                "covering criterion disagrees with the direct cycle check"
            );
            let doc = minimality_report(&s, &verdict, true);
            emit(&canonical_json(&doc), &out)
        }
        Command::StrongOrbital { sys, eps, horizon, seed, samples, out } => {
            let s = read_system(&sys)?;
            let r = strong_orbital_check_minimal(&s, eps, horizon, seed, samples, limits)?;
            emit(&canonical_json(&strong_orbital_report(&s, &r)), &out)
        }
        Command::Orbital { sys, eps, delta, horizon, seed, samples, out } => {
            let s = read_system(&sys)?;
            let r = orbital_shadowing_check(&s, eps, delta, horizon, seed, samples, limits)?;
            emit(&canonical_json(&orbital_report(&s, &r)), &out)
        }
        Command::ExportDot { sys, delta, out } => {
            let s = read_system(&sys)?;
            let g = build_metric_graph(&s, delta)?;
            emit(&to_dot(&g, &s), &out)
        }
    }
}
