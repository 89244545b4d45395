//! Expected weighted graphs and harmonic normalizing constants.
//!
//! The expected graph assigns each pair the probability that the edge shows
//! up in a sampled instance (for the rewiring model, a proven lower bound on
//! it). Cuts in the expected graph are expectations of the same cuts in
//! samples, which is what the concentation bounds lean on.

use alloc::vec::Vec;

use crate::error::ParamError;
use crate::generators::{
    grid_coords, grid_node_id, KleinbergParams, NavigableRingParams, RewiringParams,
    ShortcutParams,
};
use crate::graph::{lattice_dist, ring_dist, WeightedGraph};
use crate::numeric::{inv_pow_table, powi, KahanSum};

/// A complete weighted graph whose edge weights are edge-presence
/// probabilities (zero-probability pairs are simply absent).
pub type ExpectedGraph = WeightedGraph;

/// Grid side limit for the brute-force normalizer oracle.
pub const NORMALIZER_ORACLE_MAX_SIDE: usize = 60;

/// How a pair's weight is derived from its per-trial success probability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WeightRule {
    /// The exactly-one-success Binomial term `q (1-a)^(q-1) a`, summed over
    /// the two endpoints. This is what the closed-form capacities use; for
    /// `q = 1` it is the exact edge probability.
    #[default]
    ExactlyOneSuccess,
    /// True at-least-one-trial-hits probability
    /// `1 - (1-a_u)^q (1-a_v)^q`. Comparison mode; for `q >= 2` it differs
    /// from the Binomial term at second order.
    AtLeastOnce,
}

/// Per-node normalizing constants `s(u)` for one model instance.
#[derive(Debug, Clone, PartialEq)]
pub enum NormalizerTable {
    /// Grid constants in flat node order (`(x-1)*side + (y-1)`).
    Grid { side: usize, s: Vec<f64> },
    /// Ring constant, shared by all nodes.
    Ring { s: f64 },
}

impl NormalizerTable {
    /// All grid constants via the line-scan algorithm.
    pub fn kleinberg(params: &KleinbergParams) -> Result<Self, ParamError> {
        params.validate_grid()?;
        let side = params.n;
        let inv = inv_pow_table(2 * (side - 1), params.r);
        let mut s = Vec::with_capacity(side * side);
        for id in 0..side * side {
            let (x, y) = grid_coords(id, side);
            s.push(normalizer_from_parts(x, y, side, params.h, &inv));
        }
        Ok(Self::Grid { side, s })
    }

    pub fn navigable_ring(params: &NavigableRingParams) -> Result<Self, ParamError> {
        Ok(Self::Ring {
            s: ring_normalizer(params)?,
        })
    }

    /// Constant for grid point `(x, y)`; `None` on a ring table.
    pub fn grid_value(&self, x: usize, y: usize) -> Option<f64> {
        match self {
            Self::Grid { side, s } => {
                if (1..=*side).contains(&x) && (1..=*side).contains(&y) {
                    Some(s[grid_node_id(x, y, *side)])
                } else {
                    None
                }
            }
            Self::Ring { .. } => None,
        }
    }

    pub fn ring_value(&self) -> Option<f64> {
        match self {
            Self::Ring { s } => Some(*s),
            Self::Grid { .. } => None,
        }
    }
}

/// `s(x, y)` for the Kleinberg grid, computed as the full-grid sum minus the
/// within-`h` sum, with the within part enumerated by the border-clipped
/// line scan (upper lines `y + i`, then lower lines `y - i`; the published
/// scan's stray `m_1` bound on the lower-left quadrant is the mirror of the
/// upper-left one, so the range is `min(h - i, x - 1)`).
///
/// Degenerate nodes (no candidate at distance beyond `h`) yield 0.
pub fn kleinberg_normalizer(
    x: usize,
    y: usize,
    params: &KleinbergParams,
) -> Result<f64, ParamError> {
    params.validate_grid()?;
    check_coord(x, y, params.n)?;
    let inv = inv_pow_table(2 * (params.n - 1), params.r);
    Ok(normalizer_from_parts(x, y, params.n, params.h, &inv))
}

fn check_coord(x: usize, y: usize, n: usize) -> Result<(), ParamError> {
    if (1..=n).contains(&x) && (1..=n).contains(&y) {
        Ok(())
    } else {
        Err(ParamError::GridCoordinate { x, y, n })
    }
}

fn normalizer_from_parts(x: usize, y: usize, n: usize, h: usize, inv: &[f64]) -> f64 {
    full_grid_sum(x, y, n, inv) - within_h_sum(x, y, n, h, inv)
}

/// First term of the algorithm: `sum over (i,j) != (x,y) of d^-r`.
fn full_grid_sum(x: usize, y: usize, n: usize, inv: &[f64]) -> f64 {
    let mut acc = KahanSum::default();
    for i in 1..=n {
        for j in 1..=n {
            if (i, j) != (x, y) {
                acc.add(inv[x.abs_diff(i) + y.abs_diff(j)]);
            }
        }
    }
    acc.total()
}

/// Buffer term `z`: distances of the initially-connected nodes (0 < d <= h),
/// enumerated line by line with the grid-border clips.
fn within_h_sum(x: usize, y: usize, n: usize, h: usize, inv: &[f64]) -> f64 {
    let mut acc = KahanSum::default();
    // Lines y + i, including the home line i = 0.
    for i in 0..=h.min(n - y) {
        for j in 0..=(h - i).min(n - x) {
            if i + j > 0 {
                acc.add(inv[i + j]);
            }
        }
        for j in 1..=(h - i).min(x - 1) {
            acc.add(inv[i + j]);
        }
    }
    // Lines y - i below.
    for i in 1..=h.min(y - 1) {
        for j in 0..=(h - i).min(n - x) {
            acc.add(inv[i + j]);
        }
        for j in 1..=(h - i).min(x - 1) {
            acc.add(inv[i + j]);
        }
    }
    acc.total()
}

/// Oracle: direct double loop over all grid nodes at distance beyond `h`.
pub fn kleinberg_normalizer_bruteforce(
    x: usize,
    y: usize,
    params: &KleinbergParams,
) -> Result<f64, ParamError> {
    params.validate_grid()?;
    check_coord(x, y, params.n)?;
    let n = params.n;
    if n > NORMALIZER_ORACLE_MAX_SIDE {
        return Err(ParamError::GridTooLargeForOracle {
            n,
            max: NORMALIZER_ORACLE_MAX_SIDE,
        });
    }
    let inv = inv_pow_table(2 * (n - 1), params.r);
    let mut acc = KahanSum::default();
    for i in 1..=n {
        for j in 1..=n {
            let d = x.abs_diff(i) + y.abs_diff(j);
            if d > params.h {
                acc.add(inv[d]);
            }
        }
    }
    Ok(acc.total())
}

/// Corner normalizer `s(1,1)` by the diagonal-count closed form:
/// `sum_{i=h+1}^{n-1} (i+1) i^-r + sum_{i=0}^{n-2} (n-1-i) (n+i)^-r`.
pub fn s_corner_closed_form(params: &KleinbergParams) -> Result<f64, ParamError> {
    params.validate()?;
    let n = params.n;
    let inv = inv_pow_table(2 * (n - 1), params.r);
    let mut acc = KahanSum::default();
    for i in params.h + 1..=n - 1 {
        acc.add((i + 1) as f64 * inv[i]);
    }
    for i in 0..=n - 2 {
        acc.add((n - 1 - i) as f64 * inv[n + i]);
    }
    Ok(acc.total())
}

/// Ring normalizer, identical for every node:
/// `s = (1 + a_n) ((n - a_n)/2)^-r + 2 sum_{i=k/2+1}^{(n-a_n)/2 - 1} i^-r`
/// with `a_n = (1 - (-1)^n)/2`.
pub fn ring_normalizer(params: &NavigableRingParams) -> Result<f64, ParamError> {
    params.validate()?;
    let (n, k) = (params.base.n, params.base.k);
    let a_n = n % 2;
    let far = (n - a_n) / 2;
    let inv = inv_pow_table(far, params.r);
    let mut acc = KahanSum::default();
    for i in k / 2 + 1..=far.saturating_sub(1) {
        acc.add(2.0 * inv[i]);
    }
    acc.add((1 + a_n) as f64 * inv[far]);
    Ok(acc.total())
}

/// Expected graph of the shortcut model: lattice pairs weight 1, every other
/// pair weight `p`.
pub fn expected_graph_shortcuts(params: &ShortcutParams) -> Result<ExpectedGraph, ParamError> {
    params.validate()?;
    let (n, k) = (params.base.n, params.base.k);
    let half = k / 2;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let w = if ring_dist(i, j, n) <= half {
                1.0
            } else {
                params.p
            };
            edges.push((i, j, w));
        }
    }
    Ok(WeightedGraph::new(n, edges).expect("canonical expected-graph edges"))
}

/// Lower-bound graph `F` for the rewiring model: lattice pairs weight
/// `1 - p`, every other pair weight `p k / (n - k - 1)`.
///
/// This is not the exact edge-probability graph; every weight is a lower
/// bound on the true probability, so its min cut (which is exactly `k`)
/// lower-bounds the capacity of the true expected graph.
pub fn expected_graph_rewired_lower(params: &RewiringParams) -> Result<ExpectedGraph, ParamError> {
    params.validate()?;
    let (n, k) = (params.base.n, params.base.k);
    let half = k / 2;
    let w_far = params.p * k as f64 / (n - k - 1) as f64;
    let w_lattice = 1.0 - params.p;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let w = if ring_dist(i, j, n) <= half {
                w_lattice
            } else {
                w_far
            };
            edges.push((i, j, w));
        }
    }
    Ok(WeightedGraph::new(n, edges).expect("canonical expected-graph edges"))
}

fn pair_weight(rule: WeightRule, q: usize, a_u: f64, a_v: f64) -> f64 {
    match rule {
        WeightRule::ExactlyOneSuccess => {
            let qf = q as f64;
            qf * powi(1.0 - a_u, q - 1) * a_u + qf * powi(1.0 - a_v, q - 1) * a_v
        }
        WeightRule::AtLeastOnce => 1.0 - powi(1.0 - a_u, q) * powi(1.0 - a_v, q),
    }
}

/// Expected graph of the Kleinberg model under the paper's exactly-one-
/// success weights.
pub fn expected_graph_kleinberg(params: &KleinbergParams) -> Result<ExpectedGraph, ParamError> {
    expected_graph_kleinberg_with_rule(params, WeightRule::default())
}

pub fn expected_graph_kleinberg_with_rule(
    params: &KleinbergParams,
    rule: WeightRule,
) -> Result<ExpectedGraph, ParamError> {
    params.validate()?;
    let table = NormalizerTable::kleinberg(params)?;
    let side = params.n;
    let nodes = side * side;
    let inv = inv_pow_table(2 * (side - 1), params.r);
    let s = match &table {
        NormalizerTable::Grid { s, .. } => s,
        NormalizerTable::Ring { .. } => unreachable!(),
    };
    let mut edges = Vec::new();
    for u in 0..nodes {
        let cu = grid_coords(u, side);
        for v in u + 1..nodes {
            let d = lattice_dist(cu, grid_coords(v, side));
            let w = if d <= params.h {
                1.0
            } else if params.q == 0 {
                0.0
            } else {
                let a_u = if s[u] > 0.0 { inv[d] / s[u] } else { 0.0 };
                let a_v = if s[v] > 0.0 { inv[d] / s[v] } else { 0.0 };
                pair_weight(rule, params.q, a_u, a_v)
            };
            if w > 0.0 {
                edges.push((u, v, w));
            }
        }
    }
    Ok(WeightedGraph::new(nodes, edges).expect("canonical expected-graph edges"))
}

/// Expected graph of the navigable ring under the paper's exactly-one-
/// success weights: a pair at ring distance `t > k/2` has weight
/// `2 q (t^-r / s) (1 - t^-r / s)^(q-1)`.
pub fn expected_graph_navigable_ring(
    params: &NavigableRingParams,
) -> Result<ExpectedGraph, ParamError> {
    expected_graph_navigable_ring_with_rule(params, WeightRule::default())
}

pub fn expected_graph_navigable_ring_with_rule(
    params: &NavigableRingParams,
    rule: WeightRule,
) -> Result<ExpectedGraph, ParamError> {
    params.validate()?;
    let (n, k) = (params.base.n, params.base.k);
    let half = k / 2;
    let s = ring_normalizer(params)?;
    let inv = inv_pow_table(n / 2, params.r);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let t = ring_dist(i, j, n);
            let w = if t <= half {
                1.0
            } else if params.q == 0 || s <= 0.0 {
                0.0
            } else {
                let a = inv[t] / s;
                pair_weight(rule, params.q, a, a)
            };
            if w > 0.0 {
                edges.push((i, j, w));
            }
        }
    }
    Ok(WeightedGraph::new(n, edges).expect("canonical expected-graph edges"))
}
