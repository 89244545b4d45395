//! The shared graph interchange format:
//! `{"n": N, "edges": [[i, j, w], ...]}` with `i < j`, one entry per edge,
//! weights as decimal floats.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use swcap_core::WeightedGraph;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(usize, usize, f64)>,
}

impl GraphJson {
    pub fn from_graph(g: &WeightedGraph) -> Self {
        Self {
            n: g.node_count(),
            edges: g.edges().to_vec(),
        }
    }

    pub fn into_graph(self) -> Result<WeightedGraph> {
        for &(i, j, _) in &self.edges {
            if i >= j {
                bail!("edge [{i}, {j}] violates the i < j convention");
            }
        }
        WeightedGraph::new(self.n, self.edges).context("invalid graph")
    }
}

pub fn write_graph(g: &WeightedGraph, path: &Path) -> Result<()> {
    fs::write(path, to_string(g)).with_context(|| format!("writing {}", path.display()))
}

pub fn to_string(g: &WeightedGraph) -> String {
    serde_json::to_string(&GraphJson::from_graph(g)).expect("graph serializes")
}

pub fn read_graph(path: &Path) -> Result<WeightedGraph> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let parsed: GraphJson =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    parsed.into_graph()
}
