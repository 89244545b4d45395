//! Monte Carlo experiment harness: concentration sweeps, routing
//! experiments, and figure-data emission.
//!
//! Trials within a sweep point run in parallel (rayon); every per-trial seed
//! is derived from `(master, sweep_index, trial_index)`, and all aggregates
//! are integer-valued sums or maxima, so output never depends on thread
//! schedule. `RAYON_NUM_THREADS` overrides the worker count.

use anyhow::{anyhow, Result};
use rayon::prelude::*;

use swcap_core::bounds::{
    bounds_kleinberg_with, bounds_navigable_ring, bounds_rewiring, bounds_shortcuts,
    BoundsReport, ConfidenceParam, Eq1Range, ModelTag,
};
use swcap_core::expectation::NormalizerTable;
use swcap_core::generators::{
    gen_kleinberg_with, gen_navigable_ring_with, gen_rewired_smallworld, gen_shortcut_smallworld,
    trial_seed, GridHarmonicSampler, KleinbergParams, NavigableRingParams, RewiringParams,
    RingHarmonicClasses, ShortcutParams,
};
use swcap_core::mincut::global_min_cut;
use swcap_core::routing::{DeliveryStats, PreparedRouteModel, RouteModel, RoutingTrace};
use swcap_core::{ParamError, Seed, WeightedGraph};

use crate::csvfmt::{flag, row, sig6};

/// Model under study in a concentration experiment.
#[derive(Debug, Clone, Copy)]
pub enum ModelSpec {
    Shortcuts(ShortcutParams),
    Rewiring(RewiringParams),
    Kleinberg(KleinbergParams),
    Navigable(NavigableRingParams),
}

impl ModelSpec {
    pub fn tag(&self) -> ModelTag {
        match self {
            ModelSpec::Shortcuts(_) => ModelTag::Shortcuts,
            ModelSpec::Rewiring(_) => ModelTag::Rewiring,
            ModelSpec::Kleinberg(_) => ModelTag::Kleinberg,
            ModelSpec::Navigable(_) => ModelTag::NavigableRing,
        }
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        match self {
            ModelSpec::Shortcuts(p) => p.validate(),
            ModelSpec::Rewiring(p) => p.validate(),
            ModelSpec::Kleinberg(p) => p.validate(),
            ModelSpec::Navigable(p) => p.validate(),
        }
    }

    /// Parameter columns `n,k,p,h,q,r` for CSV rows (empty when unused).
    pub fn param_cols(&self) -> [String; 6] {
        let none = String::new();
        match self {
            ModelSpec::Shortcuts(p) => [
                p.base.n.to_string(),
                p.base.k.to_string(),
                sig6(p.p),
                none.clone(),
                none.clone(),
                none,
            ],
            ModelSpec::Rewiring(p) => [
                p.base.n.to_string(),
                p.base.k.to_string(),
                sig6(p.p),
                none.clone(),
                none.clone(),
                none,
            ],
            ModelSpec::Kleinberg(p) => [
                p.n.to_string(),
                none.clone(),
                none.clone(),
                p.h.to_string(),
                p.q.to_string(),
                sig6(p.r),
            ],
            ModelSpec::Navigable(p) => [
                p.base.n.to_string(),
                p.base.k.to_string(),
                none.clone(),
                none,
                p.q.to_string(),
                sig6(p.r),
            ],
        }
    }
}

/// Sweep axis: probabilities for the shortcut/rewiring models, shortcut
/// trial counts for the Kleinberg/navigable models.
#[derive(Debug, Clone)]
pub enum Sweep {
    P(Vec<f64>),
    Q(Vec<usize>),
}

impl Sweep {
    fn values(&self) -> Vec<f64> {
        match self {
            Sweep::P(v) => v.clone(),
            Sweep::Q(v) => v.iter().map(|&q| q as f64).collect(),
        }
    }

    pub fn axis_name(&self) -> &'static str {
        match self {
            Sweep::P(_) => "p",
            Sweep::Q(_) => "q",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub model: ModelSpec,
    pub d: ConfidenceParam,
    pub trials: usize,
    pub seed: Seed,
    pub sweep: Sweep,
}

/// One sampled instance in a concentration experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub sweep_value: f64,
    pub trial: usize,
    pub seed: u64,
    /// Exact global min cut of the sampled instance (an integer for
    /// unit-weight samples).
    pub c_s: f64,
    pub in_interval: bool,
    /// Whether `c_s` respected the model's deterministic ceiling (rewiring:
    /// `c_s <= k`; other models: the concentration upper end).
    pub below_tight_upper: bool,
}

/// Aggregate for one sweep value.
#[derive(Debug, Clone)]
pub struct CoverageSummary {
    pub sweep_value: f64,
    pub trials: usize,
    /// Fraction of trials whose min cut landed in the model's interval.
    pub coverage: f64,
    pub mean_cs: f64,
    pub report: BoundsReport,
}

#[derive(Debug, Clone)]
pub struct ConcentrationOutcome {
    pub summaries: Vec<CoverageSummary>,
    pub records: Vec<TrialRecord>,
}

impl ConcentrationOutcome {
    /// Rewiring's `c_s <= k` is a theorem, not a probability statement; any
    /// violation is a generator or min-cut bug.
    pub fn deterministic_ceiling_violated(&self) -> bool {
        self.records.iter().any(|r| !r.below_tight_upper)
    }
}

struct SweepPoint {
    model: ModelSpec,
    report: BoundsReport,
}

fn instantiate(model: &ModelSpec, sweep: &Sweep, value: f64) -> Result<ModelSpec> {
    match (model, sweep) {
        (ModelSpec::Shortcuts(p), Sweep::P(_)) => {
            let mut p = *p;
            p.p = value;
            Ok(ModelSpec::Shortcuts(p))
        }
        (ModelSpec::Rewiring(p), Sweep::P(_)) => {
            let mut p = *p;
            p.p = value;
            Ok(ModelSpec::Rewiring(p))
        }
        (ModelSpec::Kleinberg(p), Sweep::Q(_)) => {
            let mut p = *p;
            p.q = value as usize;
            Ok(ModelSpec::Kleinberg(p))
        }
        (ModelSpec::Navigable(p), Sweep::Q(_)) => {
            let mut p = *p;
            p.q = value as usize;
            Ok(ModelSpec::Navigable(p))
        }
        (ModelSpec::Shortcuts(_) | ModelSpec::Rewiring(_), Sweep::Q(_)) => {
            Err(anyhow!("probability models sweep over p, not q"))
        }
        (ModelSpec::Kleinberg(_) | ModelSpec::Navigable(_), Sweep::P(_)) => {
            Err(anyhow!("harmonic models sweep over q, not p"))
        }
    }
}

/// Shared per-model tables that do not depend on the sweep value.
enum SharedTables {
    None,
    Grid {
        sampler: GridHarmonicSampler,
        normalizers: NormalizerTable,
    },
    Ring {
        classes: RingHarmonicClasses,
    },
}

fn shared_tables(model: &ModelSpec) -> Result<SharedTables, ParamError> {
    Ok(match model {
        ModelSpec::Kleinberg(p) => SharedTables::Grid {
            sampler: GridHarmonicSampler::new(p)?,
            normalizers: NormalizerTable::kleinberg(p)?,
        },
        ModelSpec::Navigable(p) => SharedTables::Ring {
            classes: RingHarmonicClasses::new(p)?,
        },
        _ => SharedTables::None,
    })
}

fn point_report(
    model: &ModelSpec,
    tables: &SharedTables,
    d: ConfidenceParam,
) -> Result<BoundsReport, ParamError> {
    match (model, tables) {
        (ModelSpec::Shortcuts(p), _) => bounds_shortcuts(p, d),
        (ModelSpec::Rewiring(p), _) => bounds_rewiring(p, d),
        (ModelSpec::Kleinberg(p), SharedTables::Grid { normalizers, .. }) => {
            bounds_kleinberg_with(p, normalizers, d, Eq1Range::DistanceConsistent)
        }
        (ModelSpec::Navigable(p), _) => bounds_navigable_ring(p, d),
        _ => unreachable!("tables built per model"),
    }
}

fn generate(model: &ModelSpec, tables: &SharedTables, seed: Seed) -> WeightedGraph {
    match (model, tables) {
        (ModelSpec::Shortcuts(p), _) => {
            gen_shortcut_smallworld(p, seed).expect("validated params")
        }
        (ModelSpec::Rewiring(p), _) => gen_rewired_smallworld(p, seed).expect("validated params"),
        (ModelSpec::Kleinberg(p), SharedTables::Grid { sampler, .. }) => {
            gen_kleinberg_with(p, sampler, seed).expect("validated params")
        }
        (ModelSpec::Navigable(p), SharedTables::Ring { classes }) => {
            gen_navigable_ring_with(p, classes, seed).expect("validated params")
        }
        _ => unreachable!("tables built per model"),
    }
}

/// Whether a sampled min cut falls in the model's claimed interval, plus the
/// deterministic-ceiling flag.
fn classify(report: &BoundsReport, c_s: f64) -> (bool, bool) {
    match report.model {
        ModelTag::Shortcuts => (
            c_s >= report.lower && c_s <= report.upper,
            c_s <= report.upper,
        ),
        ModelTag::Rewiring => (
            c_s >= report.lower && c_s <= report.upper,
            c_s <= report.upper,
        ),
        ModelTag::Kleinberg | ModelTag::NavigableRing => (
            c_s >= report.tight_lower && c_s <= report.upper,
            c_s <= report.upper,
        ),
    }
}

/// Generate `trials` instances per sweep value, take the exact global min
/// cut of each, and compare against the model's interval.
pub fn run_concentration(cfg: &ExperimentConfig) -> Result<ConcentrationOutcome> {
    cfg.model.validate()?;
    if cfg.trials == 0 {
        return Err(ParamError::NoTrials.into());
    }
    let values = cfg.sweep.values();
    let mut points = Vec::with_capacity(values.len());
    for &v in &values {
        let model = instantiate(&cfg.model, &cfg.sweep, v)?;
        model.validate()?;
        points.push((v, model));
    }
    let tables = shared_tables(&cfg.model)?;

    let mut summaries = Vec::with_capacity(points.len());
    let mut records = Vec::new();
    for (sweep_index, (value, model)) in points.iter().enumerate() {
        let report = point_report(model, &tables, cfg.d)?;
        let point_records: Vec<TrialRecord> = (0..cfg.trials)
            .into_par_iter()
            .map(|trial| {
                let seed = trial_seed(cfg.seed, sweep_index as u64, trial as u64);
                let g = generate(model, &tables, seed);
                let c_s = global_min_cut(&g).value;
                let (in_interval, below_tight_upper) = classify(&report, c_s);
                TrialRecord {
                    sweep_value: *value,
                    trial,
                    seed: seed.0,
                    c_s,
                    in_interval,
                    below_tight_upper,
                }
            })
            .collect();
        let covered = point_records.iter().filter(|r| r.in_interval).count();
        let cs_sum: f64 = point_records.iter().map(|r| r.c_s).sum();
        summaries.push(CoverageSummary {
            sweep_value: *value,
            trials: cfg.trials,
            coverage: covered as f64 / cfg.trials as f64,
            mean_cs: cs_sum / cfg.trials as f64,
            report,
        });
        records.extend(point_records);
    }
    Ok(ConcentrationOutcome { summaries, records })
}

pub const COVERAGE_CSV_HEADER: &str =
    "model,n,k,p,h,q,r,d,sweep,sweep_value,trials,coverage,mean_cs,c_w,epsilon,lower,upper,tight_lower,clamped";

pub fn coverage_csv(cfg: &ExperimentConfig, outcome: &ConcentrationOutcome) -> String {
    let mut out = String::from(COVERAGE_CSV_HEADER);
    out.push('\n');
    for s in &outcome.summaries {
        let model = instantiate(&cfg.model, &cfg.sweep, s.sweep_value)
            .expect("summaries came from valid points");
        let cols = model.param_cols();
        let fields = [
            cfg.model.tag().as_str().to_string(),
            cols[0].clone(),
            cols[1].clone(),
            cols[2].clone(),
            cols[3].clone(),
            cols[4].clone(),
            cols[5].clone(),
            sig6(cfg.d.value()),
            cfg.sweep.axis_name().to_string(),
            sig6(s.sweep_value),
            s.trials.to_string(),
            sig6(s.coverage),
            sig6(s.mean_cs),
            sig6(s.report.c_w),
            sig6(s.report.epsilon),
            sig6(s.report.lower),
            sig6(s.report.upper),
            sig6(s.report.tight_lower),
            flag(s.report.clamped).to_string(),
        ];
        out.push_str(&row(fields));
        out.push('\n');
    }
    out
}

pub const TRIAL_CSV_HEADER: &str = "sweep_value,trial,seed,c_s,in_interval,below_tight_upper";

pub fn trials_csv(outcome: &ConcentrationOutcome) -> String {
    let mut out = String::from(TRIAL_CSV_HEADER);
    out.push('\n');
    for r in &outcome.records {
        out.push_str(&row([
            sig6(r.sweep_value),
            r.trial.to_string(),
            r.seed.to_string(),
            sig6(r.c_s),
            flag(r.in_interval).to_string(),
            flag(r.below_tight_upper).to_string(),
        ]));
        out.push('\n');
    }
    out
}

/// Bounds CSV for one parameter point.
pub const BOUNDS_CSV_HEADER: &str =
    "model,n,k,p,h,q,r,d,c_w,epsilon,lower,upper,tight_lower,clamped";

pub fn bounds_csv(model: &ModelSpec, d: ConfidenceParam) -> Result<String> {
    model.validate()?;
    let tables = shared_tables(model)?;
    let report = point_report(model, &tables, d)?;
    let cols = model.param_cols();
    let mut out = String::from(BOUNDS_CSV_HEADER);
    out.push('\n');
    out.push_str(&row([
        report.model.as_str().to_string(),
        cols[0].clone(),
        cols[1].clone(),
        cols[2].clone(),
        cols[3].clone(),
        cols[4].clone(),
        cols[5].clone(),
        sig6(d.value()),
        sig6(report.c_w),
        sig6(report.epsilon),
        sig6(report.lower),
        sig6(report.upper),
        sig6(report.tight_lower),
        flag(report.clamped).to_string(),
    ]));
    out.push('\n');
    Ok(out)
}

/// Run a routing experiment in parallel; traces come back in trial order.
pub fn run_routing(
    model: &RouteModel,
    trials: usize,
    seed: Seed,
) -> Result<(DeliveryStats, Vec<RoutingTrace>)> {
    if trials == 0 {
        return Err(ParamError::NoTrials.into());
    }
    let prepared = PreparedRouteModel::new(model)?;
    let traces: Vec<RoutingTrace> = (0..trials as u64)
        .into_par_iter()
        .map(|t| prepared.trial(seed, t))
        .collect();
    let stats = DeliveryStats::from_traces(&traces, prepared.node_count());
    Ok((stats, traces))
}

pub const DELIVERY_CSV_HEADER: &str =
    "model,n,k,h,q,r,trials,mean_hops,max_hops,bound,bound_satisfied";

pub fn delivery_csv(model: &RouteModel, stats: &DeliveryStats) -> String {
    let (name, n, k, h, q, r) = match model {
        RouteModel::RingLattice(p) => (
            "ring",
            p.n.to_string(),
            p.k.to_string(),
            String::new(),
            String::new(),
            String::new(),
        ),
        RouteModel::Kleinberg(p) => (
            "kleinberg",
            p.n.to_string(),
            String::new(),
            p.h.to_string(),
            p.q.to_string(),
            sig6(p.r),
        ),
        RouteModel::NavigableRing(p) => (
            "navigable",
            p.base.n.to_string(),
            p.base.k.to_string(),
            String::new(),
            p.q.to_string(),
            sig6(p.r),
        ),
    };
    let mut out = String::from(DELIVERY_CSV_HEADER);
    out.push('\n');
    out.push_str(&row([
        name.to_string(),
        n,
        k,
        h,
        q,
        r,
        stats.trials.to_string(),
        sig6(stats.mean_hops),
        stats.max_hops.to_string(),
        sig6(stats.bound),
        flag(stats.bound_satisfied).to_string(),
    ]));
    out.push('\n');
    out
}

/// One trace per JSON line, for the verbose routing dump.
pub fn traces_jsonl(traces: &[RoutingTrace]) -> String {
    let mut out = String::new();
    for t in traces {
        let path: Vec<String> = t.path.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!(
            "{{\"source\":{},\"target\":{},\"hops\":{},\"delivered\":{},\"path\":[{}]}}\n",
            t.source,
            t.target,
            t.hops,
            t.delivered,
            path.join(",")
        ));
    }
    out
}

/// Figures from the source material, as plot-ready CSV.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    /// Shortcut model band over p: n=1000, k=20, d=1.
    Fig4,
    /// Kleinberg band over q: grid side 80, h=2, r=2, d=1.
    Fig6,
    /// Navigable ring band over q: n=1600, k=14, r=1, d=1.
    Fig7,
}

#[derive(Debug, Clone, Copy)]
pub struct FigureOptions {
    /// Replace the caption's size (ring node count / grid side) with a desk
    /// scale; the caption stays in the metadata.
    pub scale: Option<usize>,
    pub d: ConfidenceParam,
    /// Overlay an empirical mean-c_s column from sampled instances.
    pub empirical: Option<EmpiricalOptions>,
}

#[derive(Debug, Clone, Copy)]
pub struct EmpiricalOptions {
    pub trials: usize,
    pub seed: Seed,
}

pub fn figure_data(which: FigureId, opts: &FigureOptions) -> Result<String> {
    let (caption, base_model, sweep) = match which {
        FigureId::Fig4 => {
            let n = opts.scale.unwrap_or(1000);
            let p_grid: Vec<f64> = (0..=20).map(|i| i as f64 * 0.05).collect();
            (
                "figure fig4: shortcut model capacity band; caption n=1000 k=20 d=1",
                ModelSpec::Shortcuts(ShortcutParams::new(n, 20, 0.0).map_err(anyhow::Error::from)?),
                Sweep::P(p_grid),
            )
        }
        FigureId::Fig6 => {
            let side = opts.scale.unwrap_or(80);
            (
                "figure fig6: kleinberg capacity band; caption n=80 h=2 r=2 d=1",
                ModelSpec::Kleinberg(
                    KleinbergParams::new(side, 2, 1, 2.0).map_err(anyhow::Error::from)?,
                ),
                Sweep::Q((0..=10).collect()),
            )
        }
        FigureId::Fig7 => {
            let n = opts.scale.unwrap_or(1600);
            (
                "figure fig7: navigable ring capacity band; caption n=1600 k=14 r=1 d=1",
                ModelSpec::Navigable(
                    NavigableRingParams::new(n, 14, 1, 1.0).map_err(anyhow::Error::from)?,
                ),
                Sweep::Q((0..=10).collect()),
            )
        }
    };

    let tables = shared_tables(&base_model)?;
    let mut out = String::new();
    out.push_str(&format!("# {caption}\n"));
    if let Some(scale) = opts.scale {
        out.push_str(&format!("# scaled size: {scale}\n"));
    }
    if let Some(e) = opts.empirical {
        out.push_str(&format!(
            "# empirical overlay: trials={} seed={}\n",
            e.trials, e.seed.0
        ));
    }
    out.push_str("x,c_w,lower,upper");
    if opts.empirical.is_some() {
        out.push_str(",mean_cs");
    }
    out.push('\n');

    for (sweep_index, value) in sweep.values().iter().enumerate() {
        let model = instantiate(&base_model, &sweep, *value)?;
        model.validate()?;
        let report = point_report(&model, &tables, opts.d)?;
        let mut fields = vec![
            sig6(*value),
            sig6(report.c_w),
            sig6(report.tight_lower),
            sig6(report.upper),
        ];
        if let Some(e) = opts.empirical {
            let cs_sum: f64 = (0..e.trials)
                .into_par_iter()
                .map(|trial| {
                    let seed = trial_seed(e.seed, sweep_index as u64, trial as u64);
                    global_min_cut(&generate(&model, &tables, seed)).value
                })
                .sum();
            fields.push(sig6(cs_sum / e.trials as f64));
        }
        out.push_str(&row(fields));
        out.push('\n');
    }
    Ok(out)
}

/// Normalizer-table export: `x,y,s` rows for the grid, a single value line
/// for the ring.
pub fn normalizer_csv(table: &NormalizerTable) -> String {
    match table {
        NormalizerTable::Grid { side, .. } => {
            let mut out = String::from("x,y,s\n");
            for x in 1..=*side {
                for y in 1..=*side {
                    let s = table.grid_value(x, y).expect("in range");
                    out.push_str(&row([x.to_string(), y.to_string(), sig6(s)]));
                    out.push('\n');
                }
            }
            out
        }
        NormalizerTable::Ring { s } => format!("{}\n", sig6(*s)),
    }
}
