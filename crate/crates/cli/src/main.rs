//! `swcap`: generate small-world instances, take exact global min cuts,
//! evaluate closed-form capacity bounds, and run seeded Monte Carlo
//! experiments. Exit codes: 0 success, 2 parameter error, 3 experiment
//! assertion failure.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use swcap_cli::csvfmt::sig6;
use swcap_cli::harness::{
    self, bounds_csv, coverage_csv, delivery_csv, figure_data, normalizer_csv, run_concentration,
    run_routing, trials_csv, traces_jsonl, EmpiricalOptions, ExperimentConfig, FigureId,
    FigureOptions, ModelSpec, Sweep,
};
use swcap_cli::json;
use swcap_core::bounds::ConfidenceParam;
use swcap_core::expectation::NormalizerTable;
use swcap_core::generators::{
    gen_kleinberg, gen_navigable_ring, gen_rewired_smallworld, gen_ring_lattice,
    gen_shortcut_smallworld, KleinbergParams, NavigableRingParams, RewireTargets, RewiringParams,
    RingLatticeParams, ShortcutParams,
};
use swcap_core::mincut::global_min_cut;
use swcap_core::routing::RouteModel;
use swcap_core::{ParamError, Seed, WeightedGraph};

#[derive(Parser)]
#[command(
    name = "swcap",
    version,
    about = "Small-world network capacity: generators, exact min cuts, bounds, experiments"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelKind {
    Ring,
    Shortcuts,
    Rewiring,
    Kleinberg,
    Navigable,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TargetRule {
    NonAdjacent,
    NonLattice,
}

#[derive(Args, Clone)]
struct ModelArgs {
    /// Node count (ring models) or grid side length (kleinberg)
    #[arg(short = 'n', long)]
    n: Option<usize>,
    /// Ring lattice degree (even)
    #[arg(short = 'k', long)]
    k: Option<usize>,
    /// Shortcut/rewiring probability
    #[arg(short = 'p', long)]
    p: Option<f64>,
    /// Initial neighborhood radius (kleinberg)
    #[arg(long)]
    h: Option<usize>,
    /// Shortcut trials per node (kleinberg, navigable)
    #[arg(short = 'q', long)]
    q: Option<usize>,
    /// Harmonic decay exponent (kleinberg, navigable)
    #[arg(short = 'r', long)]
    r: Option<f64>,
    /// Admissible-target rule for rewiring
    #[arg(long, value_enum, default_value_t = TargetRule::NonAdjacent)]
    target_rule: TargetRule,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FigureArg {
    Fig4,
    Fig6,
    Fig7,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NormalizerKind {
    Kleinberg,
    Navigable,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate one instance and emit it as JSON
    Gen {
        model: ModelKind,
        #[command(flatten)]
        params: ModelArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact global minimum cut of a JSON graph
    Mincut {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Closed-form capacity interval for one parameter point (CSV)
    Bounds {
        model: ModelKind,
        #[command(flatten)]
        params: ModelArgs,
        #[arg(short = 'd', long, default_value_t = 1.0)]
        d: f64,
    },
    /// Monte Carlo experiments
    Experiment {
        #[command(subcommand)]
        which: ExperimentCmd,
    },
    /// Plot-ready data for the capacity-band figures
    Figure {
        which: FigureArg,
        /// Substitute a desk-scale size for the caption's n
        #[arg(long)]
        scale: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Overlay the empirical mean sampled min cut
        #[arg(long)]
        empirical: bool,
        /// Instances per point for --empirical
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(short = 'd', long, default_value_t = 1.0)]
        d: f64,
    },
    /// Export harmonic normalizing constants as CSV
    Normalizers {
        model: NormalizerKind,
        #[command(flatten)]
        params: ModelArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ExperimentCmd {
    /// Sampled min cuts against the concentration interval
    Concentration {
        model: ModelKind,
        #[command(flatten)]
        params: ModelArgs,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'd', long, default_value_t = 1.0)]
        d: f64,
        /// Sweep these p values (comma separated) instead of a single -p
        #[arg(long, value_delimiter = ',')]
        p_grid: Option<Vec<f64>>,
        /// Sweep these q values (comma separated) instead of a single -q
        #[arg(long, value_delimiter = ',')]
        q_grid: Option<Vec<usize>>,
        /// Also emit one CSV row per trial
        #[arg(long)]
        per_trial: bool,
    },
    /// Greedy delivery times over fresh instances
    Routing {
        model: ModelKind,
        #[command(flatten)]
        params: ModelArgs,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Dump one JSON line per trace to this file
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
}

enum CliError {
    Param(String),
    Assertion(String),
    Other(anyhow::Error),
}

impl From<ParamError> for CliError {
    fn from(e: ParamError) -> Self {
        CliError::Param(e.to_string())
    }
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        // Parameter-class failures exit 2 even when they bubbled through
        // anyhow; everything else is an ordinary runtime error.
        if e.downcast_ref::<ParamError>().is_some() {
            CliError::Param(e.to_string())
        } else {
            CliError::Other(e)
        }
    }
}

fn require<T: Copy>(v: Option<T>, what: &str, model: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Param(format!("missing {what} for model {model}")))
}

impl ModelArgs {
    fn ring(&self) -> Result<RingLatticeParams, CliError> {
        Ok(RingLatticeParams::new(
            require(self.n, "-n", "ring")?,
            require(self.k, "-k", "ring")?,
        )?)
    }

    fn shortcuts(&self, default_n: Option<usize>) -> Result<ShortcutParams, CliError> {
        let n = self.n.or(default_n);
        Ok(ShortcutParams::new(
            require(n, "-n", "shortcuts")?,
            require(self.k, "-k", "shortcuts")?,
            self.p.unwrap_or(0.0),
        )?)
    }

    fn rewiring(&self, default_n: Option<usize>) -> Result<RewiringParams, CliError> {
        let n = self.n.or(default_n);
        let mut params = RewiringParams::new(
            require(n, "-n", "rewiring")?,
            require(self.k, "-k", "rewiring")?,
            self.p.unwrap_or(0.0),
        )?;
        params.targets = match self.target_rule {
            TargetRule::NonAdjacent => RewireTargets::NonAdjacent,
            TargetRule::NonLattice => RewireTargets::NonLattice,
        };
        Ok(params)
    }

    fn kleinberg(&self, default_n: Option<usize>) -> Result<KleinbergParams, CliError> {
        let n = self.n.or(default_n);
        Ok(KleinbergParams::new(
            require(n, "-n", "kleinberg")?,
            require(self.h, "--h", "kleinberg")?,
            self.q.unwrap_or(0),
            require(self.r, "-r", "kleinberg")?,
        )?)
    }

    fn navigable(&self, default_n: Option<usize>) -> Result<NavigableRingParams, CliError> {
        let n = self.n.or(default_n);
        Ok(NavigableRingParams::new(
            require(n, "-n", "navigable")?,
            require(self.k, "-k", "navigable")?,
            self.q.unwrap_or(0),
            require(self.r, "-r", "navigable")?,
        )?)
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Other(anyhow::anyhow!("writing {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Other(e.into()))
        }
    }
}

fn generate(model: ModelKind, params: &ModelArgs, seed: Seed) -> Result<WeightedGraph, CliError> {
    Ok(match model {
        ModelKind::Ring => gen_ring_lattice(&params.ring()?)?,
        ModelKind::Shortcuts => gen_shortcut_smallworld(&params.shortcuts(None)?, seed)?,
        ModelKind::Rewiring => gen_rewired_smallworld(&params.rewiring(None)?, seed)?,
        ModelKind::Kleinberg => gen_kleinberg(&params.kleinberg(None)?, seed)?,
        ModelKind::Navigable => gen_navigable_ring(&params.navigable(None)?, seed)?,
    })
}

fn model_spec(
    model: ModelKind,
    params: &ModelArgs,
    desk_default: bool,
) -> Result<ModelSpec, CliError> {
    // Concentration experiments default to desk-scale sizes where an exact
    // min cut per trial stays sub-second.
    let ring_default = desk_default.then_some(200);
    let grid_default = desk_default.then_some(24);
    Ok(match model {
        ModelKind::Shortcuts => ModelSpec::Shortcuts(params.shortcuts(ring_default)?),
        ModelKind::Rewiring => ModelSpec::Rewiring(params.rewiring(ring_default)?),
        ModelKind::Kleinberg => ModelSpec::Kleinberg(params.kleinberg(grid_default)?),
        ModelKind::Navigable => ModelSpec::Navigable(params.navigable(ring_default)?),
        ModelKind::Ring => {
            return Err(CliError::Param(
                "the plain ring lattice has no random component; use shortcuts, rewiring, \
                 kleinberg, or navigable"
                    .into(),
            ))
        }
    })
}

fn route_model(model: ModelKind, params: &ModelArgs) -> Result<RouteModel, CliError> {
    Ok(match model {
        ModelKind::Ring => RouteModel::RingLattice(params.ring()?),
        ModelKind::Kleinberg => RouteModel::Kleinberg(params.kleinberg(None)?),
        ModelKind::Navigable => RouteModel::NavigableRing(params.navigable(None)?),
        ModelKind::Shortcuts | ModelKind::Rewiring => {
            return Err(CliError::Param(
                "routing experiments run on ring, kleinberg, or navigable topologies".into(),
            ))
        }
    })
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Gen {
            model,
            params,
            seed,
            out,
        } => {
            let g = generate(model, &params, Seed(seed))?;
            let mut text = json::to_string(&g);
            text.push('\n');
            emit(out.as_ref(), &text)
        }
        Cmd::Mincut { input } => {
            let g = json::read_graph(&input)?;
            let cut = global_min_cut(&g);
            let ids: Vec<String> = cut.partition.iter().map(|v| v.to_string()).collect();
            emit(None, &format!("{}\n{}\n", sig6(cut.value), ids.join(" ")))
        }
        Cmd::Bounds { model, params, d } => {
            let spec = model_spec(model, &params, false)?;
            let d = ConfidenceParam::new(d)?;
            emit(None, &bounds_csv(&spec, d)?)
        }
        Cmd::Experiment { which } => match which {
            ExperimentCmd::Concentration {
                model,
                params,
                trials,
                seed,
                d,
                p_grid,
                q_grid,
                per_trial,
            } => {
                let spec = model_spec(model, &params, true)?;
                let sweep = match (&spec, p_grid, q_grid) {
                    (_, Some(_), Some(_)) => {
                        return Err(CliError::Param(
                            "give either --p-grid or --q-grid, not both".into(),
                        ))
                    }
                    (ModelSpec::Shortcuts(_) | ModelSpec::Rewiring(_), Some(grid), None) => {
                        Sweep::P(grid)
                    }
                    (ModelSpec::Shortcuts(sp), None, None) => Sweep::P(vec![params
                        .p
                        .unwrap_or(sp.p)]),
                    (ModelSpec::Rewiring(rp), None, None) => Sweep::P(vec![params
                        .p
                        .unwrap_or(rp.p)]),
                    (ModelSpec::Kleinberg(_) | ModelSpec::Navigable(_), None, Some(grid)) => {
                        Sweep::Q(grid)
                    }
                    (ModelSpec::Kleinberg(kp), None, None) => {
                        Sweep::Q(vec![params.q.unwrap_or(kp.q)])
                    }
                    (ModelSpec::Navigable(np), None, None) => {
                        Sweep::Q(vec![params.q.unwrap_or(np.q)])
                    }
                    _ => {
                        return Err(CliError::Param(
                            "sweep axis does not match the model (p for shortcuts/rewiring, \
                             q for kleinberg/navigable)"
                                .into(),
                        ))
                    }
                };
                let cfg = ExperimentConfig {
                    model: spec,
                    d: ConfidenceParam::new(d)?,
                    trials,
                    seed: Seed(seed),
                    sweep,
                };
                let outcome = run_concentration(&cfg)?;
                let mut text = coverage_csv(&cfg, &outcome);
                if per_trial {
                    text.push('\n');
                    text.push_str(&trials_csv(&outcome));
                }
                emit(None, &text)?;
                if matches!(cfg.model, ModelSpec::Rewiring(_))
                    && outcome.deterministic_ceiling_violated()
                {
                    return Err(CliError::Assertion(
                        "a rewired instance exceeded the deterministic capacity ceiling k".into(),
                    ));
                }
                Ok(())
            }
            ExperimentCmd::Routing {
                model,
                params,
                trials,
                seed,
                trace_out,
            } => {
                let rm = route_model(model, &params)?;
                let (stats, traces) = run_routing(&rm, trials, Seed(seed))?;
                if let Some(path) = &trace_out {
                    std::fs::write(path, traces_jsonl(&traces)).map_err(|e| {
                        CliError::Other(anyhow::anyhow!("writing {}: {e}", path.display()))
                    })?;
                }
                emit(None, &delivery_csv(&rm, &stats))?;
                if stats.undelivered > 0 {
                    return Err(CliError::Assertion(format!(
                        "{} of {} greedy deliveries failed",
                        stats.undelivered, stats.trials
                    )));
                }
                Ok(())
            }
        },
        Cmd::Figure {
            which,
            scale,
            seed,
            empirical,
            trials,
            d,
        } => {
            let id = match which {
                FigureArg::Fig4 => FigureId::Fig4,
                FigureArg::Fig6 => FigureId::Fig6,
                FigureArg::Fig7 => FigureId::Fig7,
            };
            let opts = FigureOptions {
                scale,
                d: ConfidenceParam::new(d)?,
                empirical: empirical.then_some(EmpiricalOptions {
                    trials,
                    seed: Seed(seed),
                }),
            };
            emit(None, &figure_data(id, &opts)?)
        }
        Cmd::Normalizers { model, params, out } => {
            let table = match model {
                NormalizerKind::Kleinberg => {
                    NormalizerTable::kleinberg(&params.kleinberg(None)?)?
                }
                NormalizerKind::Navigable => {
                    NormalizerTable::navigable_ring(&params.navigable(None)?)?
                }
            };
            emit(out.as_ref(), &normalizer_csv(&table))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Param(msg)) => {
            eprintln!("parameter error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Assertion(msg)) => {
            eprintln!("experiment assertion failed: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::Other(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

// Referenced by the harness module docs; silences the unused-import lint in
// builds where only the binary is compiled.
#[allow(unused)]
fn _harness_link() {
    let _ = harness::COVERAGE_CSV_HEADER;
}
