//! Seeded constructors for the four small-world topologies.
//!
//! All generators are pure functions of `(params, seed)`. Random decisions
//! are keyed per pair / per (lap, node) / per (node, trial) through
//! [`crate::rng::derive2`]/[`derive3`], so no node's draws depend on any
//! other node's, and instances are reproducible bit-for-bit.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::ParamError;
use crate::graph::{lattice_dist, ring_dist, NodeId, WeightedGraph};
use crate::numeric::inv_pow_table;
use crate::rng::{derive, derive2, derive3, tag, unit_f64, Seed, SplitMix64};

/// Ring lattice of `n` nodes where each node connects to everything within
/// ring distance `k/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RingLatticeParams {
    pub n: usize,
    pub k: usize,
}

impl RingLatticeParams {
    pub fn new(n: usize, k: usize) -> Result<Self, ParamError> {
        let p = Self { n, k };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        if self.n < 4 {
            return Err(ParamError::NodeCount { n: self.n, min: 4 });
        }
        if self.k % 2 != 0 || self.k < 2 || self.k + 2 > self.n {
            return Err(ParamError::LatticeDegree {
                n: self.n,
                k: self.k,
            });
        }
        Ok(())
    }
}

/// Ring lattice plus each non-lattice pair independently with probability `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShortcutParams {
    pub base: RingLatticeParams,
    pub p: f64,
}

impl ShortcutParams {
    pub fn new(n: usize, k: usize, p: f64) -> Result<Self, ParamError> {
        let params = Self {
            base: RingLatticeParams { n, k },
            p,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        self.base.validate()?;
        probability(self.p)?;
        Ok(())
    }
}

/// Which targets a rewired edge may attach to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RewireTargets {
    /// Any node that is not `u` and not currently adjacent to `u`. Matches
    /// the multi-edge exclusion used by the capacity lower-bound argument
    /// (candidate count at most `n - k - 1`).
    #[default]
    NonAdjacent,
    /// Additionally excludes every original lattice neighbor of `u`, even if
    /// that lattice edge was rewired away earlier. Sensitivity variant; the
    /// current-adjacency exclusion still applies so multi-edges can never
    /// arise.
    NonLattice,
}

/// Watts–Strogatz rewiring of a ring lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RewiringParams {
    pub base: RingLatticeParams,
    pub p: f64,
    pub targets: RewireTargets,
}

impl RewiringParams {
    pub fn new(n: usize, k: usize, p: f64) -> Result<Self, ParamError> {
        let params = Self {
            base: RingLatticeParams { n, k },
            p,
            targets: RewireTargets::default(),
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        self.base.validate()?;
        probability(self.p)?;
        Ok(())
    }
}

/// Kleinberg grid: `n`-by-`n` lattice, everything within Manhattan distance
/// `h` connected, plus `q` harmonic shortcut trials per node with decay
/// exponent `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KleinbergParams {
    /// Grid side length; the graph has `n * n` nodes.
    pub n: usize,
    pub h: usize,
    pub q: usize,
    pub r: f64,
}

impl KleinbergParams {
    pub fn new(n: usize, h: usize, q: usize, r: f64) -> Result<Self, ParamError> {
        let p = Self { n, h, q, r };
        p.validate()?;
        Ok(p)
    }

    /// Full validity, including `h < n - 1` as required by the closed-form
    /// capacity (guarantees every node keeps shortcut candidates).
    pub fn validate(&self) -> Result<(), ParamError> {
        self.validate_grid()?;
        if self.h + 1 >= self.n {
            return Err(ParamError::RadiusTooLarge {
                n: self.n,
                h: self.h,
            });
        }
        Ok(())
    }

    /// Structural validity only. Sampling and normalizer sums tolerate any
    /// `h >= 1`; nodes whose candidate set comes up empty are degenerate
    /// (normalizer 0) and simply skip their trials.
    pub fn validate_grid(&self) -> Result<(), ParamError> {
        if self.n < 2 {
            return Err(ParamError::NodeCount { n: self.n, min: 2 });
        }
        if self.h < 1 || self.h > 2 * (self.n - 1) {
            return Err(ParamError::GridRadius {
                n: self.n,
                h: self.h,
            });
        }
        decay(self.r)?;
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.n * self.n
    }
}

/// Navigable ring: `k`-connected ring lattice plus `q` harmonic shortcut
/// trials per node over targets at ring distance greater than `k/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NavigableRingParams {
    pub base: RingLatticeParams,
    pub q: usize,
    pub r: f64,
}

impl NavigableRingParams {
    pub fn new(n: usize, k: usize, q: usize, r: f64) -> Result<Self, ParamError> {
        let params = Self {
            base: RingLatticeParams { n, k },
            q,
            r,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        // k <= n - 2 already guarantees a non-empty candidate set.
        self.base.validate()?;
        decay(self.r)?;
        Ok(())
    }
}

fn probability(p: f64) -> Result<(), ParamError> {
    if p.is_finite() && (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(ParamError::Probability { value: p })
    }
}

fn decay(r: f64) -> Result<(), ParamError> {
    if r.is_finite() && r >= 0.0 {
        Ok(())
    } else {
        Err(ParamError::DecayExponent { value: r })
    }
}

/// Flat node id of the 1-indexed grid point `(x, y)` on a grid of the given
/// side length: `(x - 1) * side + (y - 1)`.
#[inline]
pub fn grid_node_id(x: usize, y: usize, side: usize) -> NodeId {
    debug_assert!((1..=side).contains(&x) && (1..=side).contains(&y));
    (x - 1) * side + (y - 1)
}

/// Inverse of [`grid_node_id`].
#[inline]
pub fn grid_coords(id: NodeId, side: usize) -> (usize, usize) {
    debug_assert!(id < side * side);
    (id / side + 1, id % side + 1)
}

/// The `k`-connected ring lattice: exactly `n * k / 2` unit edges.
pub fn gen_ring_lattice(params: &RingLatticeParams) -> Result<WeightedGraph, ParamError> {
    params.validate()?;
    let (n, k) = (params.n, params.k);
    let mut pairs = Vec::with_capacity(n * k / 2);
    for offset in 1..=k / 2 {
        for u in 0..n {
            pairs.push((u, (u + offset) % n));
        }
    }
    Ok(WeightedGraph::from_unit_pairs(n, pairs))
}

/// Small-world network with added shortcuts: every non-lattice pair is added
/// independently with probability `p`.
///
/// The Bernoulli draw for pair `(i, j)`, `i < j`, is
/// `unit_f64(derive2(seed, SHORTCUT_PAIR, i * n + j)) < p`.
pub fn gen_shortcut_smallworld(
    params: &ShortcutParams,
    seed: Seed,
) -> Result<WeightedGraph, ParamError> {
    params.validate()?;
    let (n, k) = (params.base.n, params.base.k);
    let half = k / 2;
    let mut pairs = Vec::with_capacity(n * k / 2);
    for i in 0..n {
        for j in i + 1..n {
            let lattice = ring_dist(i, j, n) <= half;
            if lattice {
                pairs.push((i, j));
            } else if params.p > 0.0 {
                let key = derive2(seed.0, tag::SHORTCUT_PAIR, (i * n + j) as u64);
                if unit_f64(key) < params.p {
                    pairs.push((i, j));
                }
            }
        }
    }
    Ok(WeightedGraph::from_unit_pairs(n, pairs))
}

/// Diagnostics from one rewiring run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RewiringStats {
    /// Edges chosen for rewiring that had no admissible target and were left
    /// in place.
    pub left_in_place: usize,
}

/// Small-world network with rewiring (lap procedure).
///
/// For lap `x = 1..=k/2` and each node `u` in ascending order, the original
/// lattice edge `(u, (u + x) mod n)` is rewired with probability `p` to a
/// target drawn uniformly from the admissible set (see [`RewireTargets`]).
/// Each original lattice edge is considered exactly once; rewired edges are
/// never reconsidered. Total edge count is always `n * k / 2`.
pub fn gen_rewired_smallworld(
    params: &RewiringParams,
    seed: Seed,
) -> Result<WeightedGraph, ParamError> {
    gen_rewired_smallworld_detailed(params, seed).map(|(g, _)| g)
}

/// [`gen_rewired_smallworld`] plus diagnostics.
pub fn gen_rewired_smallworld_detailed(
    params: &RewiringParams,
    seed: Seed,
) -> Result<(WeightedGraph, RewiringStats), ParamError> {
    params.validate()?;
    let (n, k) = (params.base.n, params.base.k);
    let half = k / 2;
    let mut adj: Vec<BTreeSet<NodeId>> = (0..n)
        .map(|u| {
            (1..=half)
                .flat_map(|x| [(u + x) % n, (u + n - x) % n])
                .collect()
        })
        .collect();

    let mut stats = RewiringStats::default();
    let mut admissible: Vec<NodeId> = Vec::with_capacity(n);
    for lap in 1..=half {
        for u in 0..n {
            let v = (u + lap) % n;
            let mut rng = SplitMix64::new(derive3(seed.0, tag::REWIRE_EDGE, lap as u64, u as u64));
            if !rng.next_bool(params.p) {
                continue;
            }
            debug_assert!(adj[u].contains(&v), "lattice edge missing at its lap slot");
            admissible.clear();
            for t in 0..n {
                if t == u || adj[u].contains(&t) {
                    continue;
                }
                if params.targets == RewireTargets::NonLattice && ring_dist(u, t, n) <= half {
                    continue;
                }
                admissible.push(t);
            }
            if admissible.is_empty() {
                stats.left_in_place += 1;
                continue;
            }
            let t = admissible[rng.next_below(admissible.len() as u64) as usize];
            adj[u].remove(&v);
            adj[v].remove(&u);
            adj[u].insert(t);
            adj[t].insert(u);
        }
    }

    let mut pairs = Vec::with_capacity(n * half);
    for u in 0..n {
        for &v in adj[u].iter() {
            if v > u {
                pairs.push((u, v));
            }
        }
    }
    debug_assert_eq!(pairs.len(), n * half, "rewiring must conserve edge count");
    Ok((WeightedGraph::from_unit_pairs(n, pairs), stats))
}

/// Cached-or-on-the-fly harmonic endpoint sampler for the Kleinberg grid.
///
/// For node `u`, candidate `v` (lattice distance `d > h`) is selected with
/// probability `d^-r / s(u)`. Candidates are laid out in flat node order and
/// picked by binary search on the cumulative weights. Rows are precomputed
/// when the grid is small enough to afford `nodes^2` floats; otherwise each
/// row is rebuilt on demand, which changes nothing about the draws.
pub struct GridHarmonicSampler {
    side: usize,
    h: usize,
    inv_pow: Vec<f64>,
    cached_rows: Option<Vec<Vec<f64>>>,
}

/// Above this node count, sampler rows are rebuilt per node instead of
/// being cached (`nodes^2 * 8` bytes would get out of hand).
const SAMPLER_CACHE_LIMIT: usize = 3000;

impl GridHarmonicSampler {
    pub fn new(params: &KleinbergParams) -> Result<Self, ParamError> {
        params.validate_grid()?;
        let side = params.n;
        let nodes = side * side;
        let inv_pow = inv_pow_table(2 * (side - 1), params.r);
        let mut sampler = Self {
            side,
            h: params.h,
            inv_pow,
            cached_rows: None,
        };
        if nodes <= SAMPLER_CACHE_LIMIT {
            let rows = (0..nodes).map(|u| sampler.build_row(u)).collect();
            sampler.cached_rows = Some(rows);
        }
        Ok(sampler)
    }

    fn build_row(&self, u: NodeId) -> Vec<f64> {
        let nodes = self.side * self.side;
        let from = grid_coords(u, self.side);
        let mut cum = Vec::with_capacity(nodes);
        let mut running = 0.0f64;
        for v in 0..nodes {
            let d = lattice_dist(from, grid_coords(v, self.side));
            if d > self.h {
                running += self.inv_pow[d];
            }
            cum.push(running);
        }
        cum
    }

    /// Total candidate weight `s(u)`; zero means the node is degenerate.
    pub fn total(&self, u: NodeId) -> f64 {
        match &self.cached_rows {
            Some(rows) => *rows[u].last().expect("non-empty row"),
            None => *self.build_row(u).last().expect("non-empty row"),
        }
    }

    fn with_row<R>(&self, u: NodeId, f: impl FnOnce(&[f64]) -> R) -> R {
        match &self.cached_rows {
            Some(rows) => f(&rows[u]),
            None => f(&self.build_row(u)),
        }
    }

    fn pick_in_row(row: &[f64], unit: f64) -> Option<NodeId> {
        let total = *row.last().expect("non-empty row");
        if total <= 0.0 {
            return None;
        }
        let target = unit * total;
        let mut idx = row.partition_point(|&c| c <= target);
        if idx >= row.len() {
            idx = row.len() - 1;
        }
        // Walk off any zero-weight plateau (possible only at fp boundaries).
        while idx > 0 && row[idx] == row[idx - 1] {
            idx -= 1;
        }
        Some(idx)
    }
}

/// Kleinberg network: grid lattice within distance `h`, plus `q` harmonic
/// shortcut trials per node, deduplicated into simple undirected edges.
///
/// Trial `t` of node `u` draws `unit = next_f64()` from the stream seeded by
/// `derive3(seed, KLEINBERG_TRIAL, u, t)` and picks the candidate by
/// cumulative-weight binary search. Degenerate nodes (no candidates) skip
/// their trials.
pub fn gen_kleinberg(params: &KleinbergParams, seed: Seed) -> Result<WeightedGraph, ParamError> {
    let sampler = GridHarmonicSampler::new(params)?;
    gen_kleinberg_with(params, &sampler, seed)
}

/// [`gen_kleinberg`] against a prebuilt sampler, for many-instance sweeps.
pub fn gen_kleinberg_with(
    params: &KleinbergParams,
    sampler: &GridHarmonicSampler,
    seed: Seed,
) -> Result<WeightedGraph, ParamError> {
    params.validate_grid()?;
    let side = params.n;
    let nodes = side * side;
    let mut pairs: BTreeSet<(NodeId, NodeId)> = BTreeSet::new();

    let h = params.h as isize;
    for x in 1..=side {
        for y in 1..=side {
            let u = grid_node_id(x, y, side);
            for dx in -h..=h {
                let rem = h - dx.abs();
                for dy in -rem..=rem {
                    if dx == 0 && dy == 0 {
                        continue;
                    }
                    let (vx, vy) = (x as isize + dx, y as isize + dy);
                    if vx < 1 || vy < 1 || vx > side as isize || vy > side as isize {
                        continue;
                    }
                    let v = grid_node_id(vx as usize, vy as usize, side);
                    pairs.insert((u.min(v), u.max(v)));
                }
            }
        }
    }

    for u in 0..nodes {
        sampler.with_row(u, |row| {
            for trial in 0..params.q {
                let mut rng =
                    SplitMix64::new(derive3(seed.0, tag::KLEINBERG_TRIAL, u as u64, trial as u64));
                if let Some(v) = GridHarmonicSampler::pick_in_row(row, rng.next_f64()) {
                    debug_assert!(v != u);
                    pairs.insert((u.min(v), u.max(v)));
                }
            }
        });
    }

    Ok(WeightedGraph::from_unit_pairs(nodes, pairs))
}

/// Endpoint chosen by trial `trial` of `node` in the Kleinberg model, or
/// `None` when the node is degenerate. Exactly the draw the generator makes.
pub fn kleinberg_trial_endpoint(
    params: &KleinbergParams,
    seed: Seed,
    node: NodeId,
    trial: usize,
) -> Result<Option<NodeId>, ParamError> {
    let sampler = GridHarmonicSampler::new(params)?;
    if node >= params.node_count() {
        return Err(ParamError::NodeOutOfRange {
            id: node,
            n: params.node_count(),
        });
    }
    let mut rng = SplitMix64::new(derive3(
        seed.0,
        tag::KLEINBERG_TRIAL,
        node as u64,
        trial as u64,
    ));
    Ok(sampler.with_row(node, |row| {
        GridHarmonicSampler::pick_in_row(row, rng.next_f64())
    }))
}

/// Shared per-distance-class cumulative table for the navigable ring (every
/// node sees the same distance profile).
pub struct RingHarmonicClasses {
    n: usize,
    /// `(distance, nodes_at_distance, cumulative_weight)` for distances
    /// `k/2 + 1 ..= floor(n/2)`, in increasing distance order.
    classes: Vec<(usize, usize, f64)>,
}

impl RingHarmonicClasses {
    pub fn new(params: &NavigableRingParams) -> Result<Self, ParamError> {
        params.validate()?;
        let (n, k) = (params.base.n, params.base.k);
        let far = n / 2;
        let inv_pow = inv_pow_table(far, params.r);
        let mut classes = Vec::new();
        let mut running = 0.0f64;
        for t in k / 2 + 1..=far {
            let count = if n % 2 == 0 && t == far { 1 } else { 2 };
            running += count as f64 * inv_pow[t];
            classes.push((t, count, running));
        }
        debug_assert!(!classes.is_empty(), "k <= n - 2 guarantees candidates");
        Ok(Self { n, classes })
    }

    fn total(&self) -> f64 {
        self.classes.last().map_or(0.0, |&(_, _, c)| c)
    }

    /// Draw an endpoint for trials out of `node`: one uniform picks the
    /// distance class, a second (only when the class holds two nodes) picks
    /// the side of the ring.
    fn pick(&self, node: NodeId, rng: &mut SplitMix64) -> NodeId {
        let target = rng.next_f64() * self.total();
        let mut idx = self.classes.partition_point(|&(_, _, c)| c <= target);
        if idx >= self.classes.len() {
            idx = self.classes.len() - 1;
        }
        let (t, count, _) = self.classes[idx];
        if count == 1 || rng.next_f64() < 0.5 {
            (node + t) % self.n
        } else {
            (node + self.n - t) % self.n
        }
    }
}

/// Navigable small-world ring: the `k`-connected lattice plus `q` harmonic
/// shortcut trials per node, deduplicated.
///
/// Trial `t` of node `i` draws from the stream seeded by
/// `derive3(seed, NAVIGABLE_TRIAL, i, t)`: first uniform selects the
/// distance class, second (two-node classes only) the direction.
pub fn gen_navigable_ring(
    params: &NavigableRingParams,
    seed: Seed,
) -> Result<WeightedGraph, ParamError> {
    let classes = RingHarmonicClasses::new(params)?;
    gen_navigable_ring_with(params, &classes, seed)
}

/// [`gen_navigable_ring`] against a prebuilt class table.
pub fn gen_navigable_ring_with(
    params: &NavigableRingParams,
    classes: &RingHarmonicClasses,
    seed: Seed,
) -> Result<WeightedGraph, ParamError> {
    params.validate()?;
    let (n, k) = (params.base.n, params.base.k);
    let mut pairs: BTreeSet<(NodeId, NodeId)> = BTreeSet::new();
    for offset in 1..=k / 2 {
        for u in 0..n {
            let v = (u + offset) % n;
            pairs.insert((u.min(v), u.max(v)));
        }
    }
    for u in 0..n {
        for trial in 0..params.q {
            let mut rng =
                SplitMix64::new(derive3(seed.0, tag::NAVIGABLE_TRIAL, u as u64, trial as u64));
            let v = classes.pick(u, &mut rng);
            debug_assert!(v != u);
            pairs.insert((u.min(v), u.max(v)));
        }
    }
    Ok(WeightedGraph::from_unit_pairs(n, pairs))
}

/// Endpoint chosen by trial `trial` of `node` in the navigable ring.
/// Exactly the draw the generator makes.
pub fn navigable_trial_endpoint(
    params: &NavigableRingParams,
    seed: Seed,
    node: NodeId,
    trial: usize,
) -> Result<NodeId, ParamError> {
    let classes = RingHarmonicClasses::new(params)?;
    if node >= params.base.n {
        return Err(ParamError::NodeOutOfRange {
            id: node,
            n: params.base.n,
        });
    }
    let mut rng = SplitMix64::new(derive3(
        seed.0,
        tag::NAVIGABLE_TRIAL,
        node as u64,
        trial as u64,
    ));
    Ok(classes.pick(node, &mut rng))
}

/// Per-trial instance seed used by the experiment harnesses:
/// `derive3(master, CONCENTRATION_TRIAL, sweep_index, trial_index)`.
pub fn trial_seed(master: Seed, sweep_index: u64, trial_index: u64) -> Seed {
    Seed(derive3(
        master.0,
        tag::CONCENTRATION_TRIAL,
        sweep_index,
        trial_index,
    ))
}

/// Per-trial instance seed for routing experiments:
/// `derive2(master, ROUTING_TRIAL, trial_index)`.
pub fn routing_trial_seed(master: Seed, trial_index: u64) -> Seed {
    Seed(derive2(master.0, tag::ROUTING_TRIAL, trial_index))
}

/// Source/target stream for a routing trial: `derive(trial_seed, ROUTING_PAIR)`.
pub fn routing_pair_rng(trial: Seed) -> SplitMix64 {
    SplitMix64::new(derive(trial.0, tag::ROUTING_PAIR))
}
