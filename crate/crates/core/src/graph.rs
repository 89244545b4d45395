//! Weighted undirected graphs, cut evaluation, and the two base metrics.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{GraphError, ParamError};

/// Node index in `[0, node_count)`.
pub type NodeId = usize;

/// Hop distance on a ring of `n` nodes: `min(|i-j|, n-|i-j|)`.
///
/// Symmetric, zero iff `i == j`, and never larger than `n/2`.
pub fn ring_distance(i: NodeId, j: NodeId, n: usize) -> Result<usize, ParamError> {
    if n < 2 {
        return Err(ParamError::NodeCount { n, min: 2 });
    }
    if i >= n {
        return Err(ParamError::NodeOutOfRange { id: i, n });
    }
    if j >= n {
        return Err(ParamError::NodeOutOfRange { id: j, n });
    }
    Ok(ring_dist(i, j, n))
}

/// `ring_distance` without the parameter checks, for validated hot paths.
#[inline]
pub(crate) fn ring_dist(i: NodeId, j: NodeId, n: usize) -> usize {
    let d = if i > j { i - j } else { j - i };
    d.min(n - d)
}

/// Manhattan hop distance between two 1-indexed grid points of an `n`-by-`n`
/// square lattice.
pub fn lattice_distance(
    u: (usize, usize),
    v: (usize, usize),
    n: usize,
) -> Result<usize, ParamError> {
    for &(x, y) in &[u, v] {
        if x < 1 || x > n || y < 1 || y > n {
            return Err(ParamError::GridCoordinate { x, y, n });
        }
    }
    Ok(lattice_dist(u, v))
}

#[inline]
pub(crate) fn lattice_dist(u: (usize, usize), v: (usize, usize)) -> usize {
    u.0.abs_diff(v.0) + u.1.abs_diff(v.1)
}

/// One side of a cut together with the total weight crossing it.
#[derive(Debug, Clone, PartialEq)]
pub struct CutResult {
    pub value: f64,
    /// Sorted node ids of one side of the partition (non-empty, proper).
    pub partition: Vec<NodeId>,
}

/// Undirected graph with non-negative real edge weights.
///
/// No self-loops, at most one edge per unordered pair, at least two nodes.
/// Sampled instances carry unit weights; expected graphs carry edge
/// probabilities. Zero-weight pairs are simply absent: they contribute
/// nothing to any cut.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    node_count: usize,
    /// Canonical edge list: `a < b`, sorted lexicographically.
    edges: Vec<(NodeId, NodeId, f64)>,
    /// Adjacency lists sorted by neighbor id.
    adj: Vec<Vec<(NodeId, f64)>>,
}

impl WeightedGraph {
    /// Build from an edge list, validating all structural invariants.
    pub fn new<I>(node_count: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (NodeId, NodeId, f64)>,
    {
        if node_count < 2 {
            return Err(ParamError::NodeCount {
                n: node_count,
                min: 2,
            }
            .into());
        }
        let mut canon: Vec<(NodeId, NodeId, f64)> = Vec::new();
        for (a, b, w) in edges {
            if a == b {
                return Err(GraphError::SelfLoop { id: a });
            }
            for &id in &[a, b] {
                if id >= node_count {
                    return Err(ParamError::NodeOutOfRange {
                        id,
                        n: node_count,
                    }
                    .into());
                }
            }
            if !(w.is_finite() && w >= 0.0) {
                return Err(ParamError::EdgeWeight { value: w }.into());
            }
            if w == 0.0 {
                continue;
            }
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            canon.push((a, b, w));
        }
        canon.sort_unstable_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)));
        if let Some(w) = canon.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
            return Err(GraphError::DuplicateEdge { a: w[0].0, b: w[0].1 });
        }
        let mut adj = vec![Vec::new(); node_count];
        for &(a, b, w) in &canon {
            adj[a].push((b, w));
            adj[b].push((a, w));
        }
        for list in &mut adj {
            list.sort_unstable_by_key(|&(v, _)| v);
        }
        Ok(Self {
            node_count,
            edges: canon,
            adj,
        })
    }

    /// Build from unit-weight pairs that are already unique and in-range
    /// (generators guarantee this via their dedup sets).
    pub(crate) fn from_unit_pairs<I>(node_count: usize, pairs: I) -> Self
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut canon: Vec<(NodeId, NodeId, f64)> = pairs
            .into_iter()
            .map(|(a, b)| if a < b { (a, b, 1.0) } else { (b, a, 1.0) })
            .collect();
        canon.sort_unstable_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)));
        debug_assert!(canon.windows(2).all(|w| (w[0].0, w[0].1) < (w[1].0, w[1].1)));
        debug_assert!(canon.iter().all(|&(a, b, _)| a != b && b < node_count));
        let mut adj = vec![Vec::new(); node_count];
        for &(a, b, w) in &canon {
            adj[a].push((b, w));
            adj[b].push((a, w));
        }
        for list in &mut adj {
            list.sort_unstable_by_key(|&(v, _)| v);
        }
        Self {
            node_count,
            edges: canon,
            adj,
        }
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list: `a < b`, sorted, positive weights only.
    pub fn edges(&self) -> &[(NodeId, NodeId, f64)] {
        &self.edges
    }

    /// Neighbors of `u` with edge weights, sorted by neighbor id.
    pub fn neighbors(&self, u: NodeId) -> &[(NodeId, f64)] {
        &self.adj[u]
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.weight(u, v).is_some()
    }

    /// Weight of the edge between `u` and `v`, if present.
    pub fn weight(&self, u: NodeId, v: NodeId) -> Option<f64> {
        self.adj[u]
            .binary_search_by_key(&v, |&(x, _)| x)
            .ok()
            .map(|i| self.adj[u][i].1)
    }

    /// Sum of incident edge weights.
    pub fn weighted_degree(&self, u: NodeId) -> f64 {
        self.adj[u].iter().map(|&(_, w)| w).sum()
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|&(_, _, w)| w).sum()
    }

    /// Total weight crossing the given side of a cut.
    ///
    /// `side` must be a non-empty proper subset of the nodes.
    pub fn cut_value(&self, side: &[NodeId]) -> Result<f64, GraphError> {
        let mut in_side = vec![false; self.node_count];
        let mut count = 0usize;
        for &u in side {
            if u >= self.node_count {
                return Err(ParamError::NodeOutOfRange {
                    id: u,
                    n: self.node_count,
                }
                .into());
            }
            if !in_side[u] {
                in_side[u] = true;
                count += 1;
            }
        }
        if count == 0 || count == self.node_count {
            return Err(GraphError::TrivialCut);
        }
        let mut total = 0.0;
        for &(a, b, w) in &self.edges {
            if in_side[a] != in_side[b] {
                total += w;
            }
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> WeightedGraph {
        WeightedGraph::new(3, [(0, 1, 1.0), (1, 2, 1.0)]).unwrap()
    }

    #[test]
    fn ring_distance_examples() {
        assert_eq!(ring_distance(0, 2, 10).unwrap(), 2);
        assert_eq!(ring_distance(0, 9, 10).unwrap(), 1);
        assert_eq!(ring_distance(1, 6, 10).unwrap(), 5);
        assert!(ring_distance(0, 0, 1).is_err());
        assert!(ring_distance(5, 0, 5).is_err());
    }

    #[test]
    fn ring_distance_is_a_cycle_metric() {
        // Exhaustive over all triples for n <= 50: symmetry, identity,
        // triangle inequality, and the n/2 cap.
        for n in 2..=50 {
            for i in 0..n {
                for j in 0..n {
                    let dij = ring_dist(i, j, n);
                    assert_eq!(dij, ring_dist(j, i, n));
                    assert_eq!(dij == 0, i == j);
                    assert!(dij <= n / 2);
                    for l in 0..n {
                        assert!(dij <= ring_dist(i, l, n) + ring_dist(l, j, n));
                    }
                }
            }
        }
    }

    #[test]
    fn lattice_distance_examples() {
        assert_eq!(lattice_distance((1, 1), (1, 1), 5).unwrap(), 0);
        assert_eq!(lattice_distance((1, 1), (3, 4), 5).unwrap(), 5);
        assert_eq!(lattice_distance((2, 5), (5, 2), 5).unwrap(), 6);
        assert!(lattice_distance((0, 1), (1, 1), 5).is_err());
        assert!(lattice_distance((1, 1), (6, 1), 5).is_err());
    }

    #[test]
    fn construction_rejects_invalid() {
        assert!(matches!(
            WeightedGraph::new(1, []),
            Err(GraphError::Param(ParamError::NodeCount { .. }))
        ));
        assert!(matches!(
            WeightedGraph::new(3, [(0, 0, 1.0)]),
            Err(GraphError::SelfLoop { .. })
        ));
        assert!(matches!(
            WeightedGraph::new(3, [(0, 1, 1.0), (1, 0, 2.0)]),
            Err(GraphError::DuplicateEdge { .. })
        ));
        assert!(matches!(
            WeightedGraph::new(3, [(0, 3, 1.0)]),
            Err(GraphError::Param(ParamError::NodeOutOfRange { .. }))
        ));
        assert!(matches!(
            WeightedGraph::new(3, [(0, 1, -0.5)]),
            Err(GraphError::Param(ParamError::EdgeWeight { .. }))
        ));
    }

    #[test]
    fn zero_weight_edges_are_dropped() {
        let g = WeightedGraph::new(3, [(0, 1, 0.0), (1, 2, 2.0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(!g.has_edge(0, 1));
        assert_eq!(g.weight(1, 2), Some(2.0));
    }

    #[test]
    fn cut_value_examples() {
        let tri = WeightedGraph::new(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        assert_eq!(tri.cut_value(&[0]).unwrap(), 2.0);
        let p = path3();
        assert_eq!(p.cut_value(&[1]).unwrap(), 2.0);
        assert_eq!(p.cut_value(&[0]).unwrap(), 1.0);
        assert!(matches!(p.cut_value(&[]), Err(GraphError::TrivialCut)));
        assert!(matches!(
            p.cut_value(&[0, 1, 2]),
            Err(GraphError::TrivialCut)
        ));
    }
}
