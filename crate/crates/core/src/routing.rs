//! Greedy decentralized routing and delivery-time experiments.
//!
//! The message always moves to the current holder's neighbor closest to the
//! target under the base metric (ring or Manhattan), ties broken toward the
//! lowest node id. On every topology here a lattice neighbor strictly closer
//! to the target exists, so each hop shrinks the metric distance; a trace
//! where no strictly closer neighbor exists stops undelivered.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::ParamError;
use crate::generators::{
    gen_kleinberg_with, gen_navigable_ring_with, gen_ring_lattice, routing_pair_rng,
    routing_trial_seed, GridHarmonicSampler, KleinbergParams, NavigableRingParams,
    RingHarmonicClasses, RingLatticeParams,
};
use crate::graph::{lattice_dist, ring_dist, NodeId, WeightedGraph};
use crate::rng::Seed;

/// Base metric the greedy router measures progress against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    /// Ring of `n` nodes with hop distance.
    Ring { n: usize },
    /// `side`-by-`side` grid with Manhattan distance on flat node ids.
    Grid { side: usize },
}

impl Metric {
    pub fn node_count(&self) -> usize {
        match *self {
            Metric::Ring { n } => n,
            Metric::Grid { side } => side * side,
        }
    }

    #[inline]
    pub fn distance(&self, a: NodeId, b: NodeId) -> usize {
        match *self {
            Metric::Ring { n } => ring_dist(a, b, n),
            Metric::Grid { side } => {
                lattice_dist(crate::generators::grid_coords(a, side), {
                    crate::generators::grid_coords(b, side)
                })
            }
        }
    }
}

/// One greedy delivery attempt.
#[derive(Debug, Clone, PartialEq)]
pub struct RoutingTrace {
    pub source: NodeId,
    pub target: NodeId,
    pub hops: usize,
    pub delivered: bool,
    /// Visited nodes, starting at `source`; ends at `target` iff delivered.
    pub path: Vec<NodeId>,
    /// `phase_steps[j]` counts hops taken while the current distance `d` was
    /// in phase `j`: phase 0 means `d <= 2`, phase `j > 0` means
    /// `2^j < d <= 2^(j+1)`.
    pub phase_steps: Vec<u32>,
}

fn phase_of(d: usize) -> usize {
    if d <= 2 {
        0
    } else {
        (usize::BITS - 1 - (d - 1).leading_zeros()) as usize
    }
}

/// Route greedily from `source` to `target`, at most `max_steps` hops.
pub fn greedy_route(
    g: &WeightedGraph,
    metric: &Metric,
    source: NodeId,
    target: NodeId,
    max_steps: usize,
) -> Result<RoutingTrace, ParamError> {
    if metric.node_count() != g.node_count() {
        return Err(ParamError::MetricMismatch {
            metric_nodes: metric.node_count(),
            graph_nodes: g.node_count(),
        });
    }
    for &id in &[source, target] {
        if id >= g.node_count() {
            return Err(ParamError::NodeOutOfRange {
                id,
                n: g.node_count(),
            });
        }
    }
    if source == target {
        return Err(ParamError::SourceEqualsTarget);
    }

    let mut path = vec![source];
    let mut phase_steps: Vec<u32> = Vec::new();
    let mut current = source;
    let mut delivered = false;
    for _ in 0..max_steps {
        let d_current = metric.distance(current, target);
        let mut best = usize::MAX;
        let mut best_d = usize::MAX;
        for &(v, _) in g.neighbors(current) {
            let dv = metric.distance(v, target);
            if dv < best_d {
                best_d = dv;
                best = v;
            }
        }
        if best_d >= d_current {
            // No strictly closer contact; greedy is stuck.
            break;
        }
        let phase = phase_of(d_current);
        if phase_steps.len() <= phase {
            phase_steps.resize(phase + 1, 0);
        }
        phase_steps[phase] += 1;
        current = best;
        path.push(current);
        if current == target {
            delivered = true;
            break;
        }
    }

    Ok(RoutingTrace {
        source,
        target,
        hops: path.len() - 1,
        delivered,
        path,
        phase_steps,
    })
}

/// Delivery-time ceiling for the navigable ring at `r = 1`:
/// `ln^2(2n) / ln(2)`.
pub fn navigability_bound(n: usize) -> f64 {
    debug_assert!(n >= 2);
    let l = libm::log(2.0 * n as f64);
    l * l / libm::log(2.0)
}

/// Aggregated delivery statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct DeliveryStats {
    pub trials: usize,
    pub mean_hops: f64,
    pub max_hops: usize,
    /// `navigability_bound(node_count)`; the theorem guarantees the mean
    /// stays under it only for the navigable ring with `r = 1`.
    pub bound: f64,
    pub bound_satisfied: bool,
    pub undelivered: usize,
    /// Mean steps spent per phase (see [`RoutingTrace::phase_steps`]).
    pub phase_mean: Vec<f64>,
}

impl DeliveryStats {
    /// Fold traces into stats. All aggregates are integer sums and maxima,
    /// so the result does not depend on trace order.
    pub fn from_traces<'a, I>(traces: I, node_count: usize) -> Self
    where
        I: IntoIterator<Item = &'a RoutingTrace>,
    {
        let mut trials = 0usize;
        let mut hop_sum = 0u64;
        let mut max_hops = 0usize;
        let mut undelivered = 0usize;
        let mut phase_sums: Vec<u64> = Vec::new();
        for t in traces {
            trials += 1;
            hop_sum += t.hops as u64;
            max_hops = max_hops.max(t.hops);
            if !t.delivered {
                undelivered += 1;
            }
            if phase_sums.len() < t.phase_steps.len() {
                phase_sums.resize(t.phase_steps.len(), 0);
            }
            for (j, &c) in t.phase_steps.iter().enumerate() {
                phase_sums[j] += c as u64;
            }
        }
        let mean_hops = if trials > 0 {
            hop_sum as f64 / trials as f64
        } else {
            0.0
        };
        let bound = navigability_bound(node_count);
        DeliveryStats {
            trials,
            mean_hops,
            max_hops,
            bound,
            bound_satisfied: mean_hops <= bound,
            undelivered,
            phase_mean: phase_sums
                .iter()
                .map(|&s| s as f64 / trials.max(1) as f64)
                .collect(),
        }
    }
}

/// Topologies the routing experiments run on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RouteModel {
    RingLattice(RingLatticeParams),
    Kleinberg(KleinbergParams),
    NavigableRing(NavigableRingParams),
}

impl RouteModel {
    pub fn node_count(&self) -> usize {
        match self {
            RouteModel::RingLattice(p) => p.n,
            RouteModel::Kleinberg(p) => p.node_count(),
            RouteModel::NavigableRing(p) => p.base.n,
        }
    }

    pub fn metric(&self) -> Metric {
        match self {
            RouteModel::RingLattice(p) => Metric::Ring { n: p.n },
            RouteModel::Kleinberg(p) => Metric::Grid { side: p.n },
            RouteModel::NavigableRing(p) => Metric::Ring { n: p.base.n },
        }
    }
}

enum PreparedInner {
    Ring(RingLatticeParams),
    Kleinberg {
        params: KleinbergParams,
        sampler: GridHarmonicSampler,
    },
    Navigable {
        params: NavigableRingParams,
        classes: RingHarmonicClasses,
    },
}

/// A routing model with its (seed-independent) sampling tables prebuilt, so
/// per-trial instance generation stays cheap across thousands of trials.
pub struct PreparedRouteModel {
    metric: Metric,
    inner: PreparedInner,
}

impl PreparedRouteModel {
    pub fn new(model: &RouteModel) -> Result<Self, ParamError> {
        let inner = match model {
            RouteModel::RingLattice(p) => {
                p.validate()?;
                PreparedInner::Ring(*p)
            }
            RouteModel::Kleinberg(p) => PreparedInner::Kleinberg {
                params: *p,
                sampler: GridHarmonicSampler::new(p)?,
            },
            RouteModel::NavigableRing(p) => PreparedInner::Navigable {
                params: *p,
                classes: RingHarmonicClasses::new(p)?,
            },
        };
        Ok(Self {
            metric: model.metric(),
            inner,
        })
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn node_count(&self) -> usize {
        self.metric.node_count()
    }

    fn generate(&self, seed: Seed) -> WeightedGraph {
        match &self.inner {
            PreparedInner::Ring(p) => gen_ring_lattice(p).expect("validated params"),
            PreparedInner::Kleinberg { params, sampler } => {
                gen_kleinberg_with(params, sampler, seed).expect("validated params")
            }
            PreparedInner::Navigable { params, classes } => {
                gen_navigable_ring_with(params, classes, seed).expect("validated params")
            }
        }
    }

    /// Run trial `trial_index`: fresh instance from the derived trial seed,
    /// uniform ordered source/target pair, greedy route.
    pub fn trial(&self, master: Seed, trial_index: u64) -> RoutingTrace {
        let n = self.node_count();
        let trial_seed = routing_trial_seed(master, trial_index);
        let g = self.generate(trial_seed);
        let mut rng = routing_pair_rng(trial_seed);
        let source = rng.next_below(n as u64) as usize;
        let mut target = rng.next_below(n as u64 - 1) as usize;
        if target >= source {
            target += 1;
        }
        greedy_route(&g, &self.metric, source, target, n)
            .expect("prepared model yields valid routing inputs")
    }
}

/// Run `trials` independent greedy deliveries, one fresh graph instance and
/// one uniform source/target pair per trial.
pub fn delivery_experiment(
    model: &RouteModel,
    trials: usize,
    seed: Seed,
) -> Result<DeliveryStats, ParamError> {
    if trials == 0 {
        return Err(ParamError::NoTrials);
    }
    let prepared = PreparedRouteModel::new(model)?;
    let traces: Vec<RoutingTrace> = (0..trials as u64)
        .map(|t| prepared.trial(seed, t))
        .collect();
    Ok(DeliveryStats::from_traces(&traces, prepared.node_count()))
}
