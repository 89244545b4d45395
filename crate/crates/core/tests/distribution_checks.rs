//! Statistical fidelity of the samplers, with fixed seeds so outcomes are
//! reproducible. Bands are 3-sigma binomial intervals; parameters are chosen
//! so the tested quantities sit well inside them for a correct sampler.

use swcap_core::expectation::{
    expected_graph_kleinberg, expected_graph_navigable_ring, ring_normalizer,
};
use swcap_core::generators::{
    gen_kleinberg_with, gen_navigable_ring, gen_rewired_smallworld, gen_shortcut_smallworld,
    GridHarmonicSampler, KleinbergParams, NavigableRingParams, RewiringParams, ShortcutParams,
};
use swcap_core::Seed;

const MASTER: u64 = 0x5eed_cafe;

#[test]
fn shortcut_added_edge_count_matches_binomial_moments() {
    // n=200, k=10, p=0.1: 18900 candidate pairs, mean 1890, per-instance
    // sigma ~41.24; over 1000 seeds the sample mean gets sigma/sqrt(1000).
    let params = ShortcutParams::new(200, 10, 0.1).unwrap();
    let lattice_edges = 200 * 10 / 2;
    let candidates = 200 * 199 / 2 - lattice_edges;
    let seeds = 1000u64;
    let mut total_added = 0usize;
    for s in 0..seeds {
        let g = gen_shortcut_smallworld(&params, Seed(MASTER ^ s)).unwrap();
        total_added += g.edge_count() - lattice_edges;
    }
    let mean = total_added as f64 / seeds as f64;
    let expect = candidates as f64 * 0.1;
    let sigma_inst = (candidates as f64 * 0.1 * 0.9).sqrt();
    let band = 3.0 * sigma_inst / (seeds as f64).sqrt();
    assert!(
        (mean - expect).abs() <= band,
        "mean {mean} vs {expect} (band {band})"
    );
}

#[test]
fn shortcut_edge_presence_is_bernoulli_p() {
    let params = ShortcutParams::new(50, 4, 0.2).unwrap();
    let instances = 5000u64;
    let probes: [(usize, usize); 3] = [(0, 10), (0, 25), (3, 30)];
    let mut hits = [0u32; 3];
    for s in 0..instances {
        let g = gen_shortcut_smallworld(&params, Seed(MASTER.wrapping_add(s))).unwrap();
        for (i, &(a, b)) in probes.iter().enumerate() {
            if g.has_edge(a, b) {
                hits[i] += 1;
            }
        }
    }
    let band = 3.0 * (0.2f64 * 0.8 / instances as f64).sqrt();
    for (i, &h) in hits.iter().enumerate() {
        let freq = h as f64 / instances as f64;
        assert!(
            (freq - 0.2).abs() <= band,
            "pair {:?}: freq {freq} (band {band})",
            probes[i]
        );
    }
}

#[test]
fn navigable_edge_presence_tracks_expected_weight_at_q1() {
    // Large n so the first-order weight 2a sits well inside the band around
    // the true probability 2a - a^2.
    let params = NavigableRingParams::new(200, 4, 1, 1.0).unwrap();
    let g_exp = expected_graph_navigable_ring(&params).unwrap();
    let instances = 5000u64;
    let probes: [(usize, usize); 3] = [(0, 3), (0, 20), (0, 100)];
    let mut hits = [0u32; 3];
    for s in 0..instances {
        let g = gen_navigable_ring(&params, Seed(MASTER ^ (s << 1))).unwrap();
        for (i, &(a, b)) in probes.iter().enumerate() {
            if g.has_edge(a, b) {
                hits[i] += 1;
            }
        }
    }
    for (i, &(a, b)) in probes.iter().enumerate() {
        let w = g_exp.weight(a, b).unwrap_or(0.0);
        let freq = hits[i] as f64 / instances as f64;
        let band = 3.0 * (w * (1.0 - w) / instances as f64).sqrt();
        assert!(
            (freq - w).abs() <= band,
            "pair ({a},{b}): freq {freq} vs weight {w} (band {band})"
        );
    }
}

#[test]
fn kleinberg_q2_presence_at_least_the_binomial_weight() {
    // For q >= 2 the exactly-one-success weight underestimates the true
    // at-least-once probability, so the test is one-sided.
    let params = KleinbergParams::new(6, 1, 2, 1.0).unwrap();
    let g_exp = expected_graph_kleinberg(&params).unwrap();
    let sampler = GridHarmonicSampler::new(&params).unwrap();
    let instances = 5000u64;
    let probes: [(usize, usize); 3] = [(0, 14), (0, 35), (7, 28)];
    let mut hits = [0u32; 3];
    for s in 0..instances {
        let g = gen_kleinberg_with(&params, &sampler, Seed(MASTER ^ (s * 3))).unwrap();
        for (i, &(a, b)) in probes.iter().enumerate() {
            if g.has_edge(a, b) {
                hits[i] += 1;
            }
        }
    }
    for (i, &(a, b)) in probes.iter().enumerate() {
        let w = g_exp.weight(a, b).unwrap_or(0.0);
        let freq = hits[i] as f64 / instances as f64;
        let band = 3.0 * (w * (1.0 - w) / instances as f64).sqrt();
        assert!(
            freq >= w - band,
            "pair ({a},{b}): freq {freq} below weight {w} - band {band}"
        );
    }
}

#[test]
fn rewired_presence_at_least_the_lower_bound_weight() {
    // The per-edge bound p*k/(n-k-1) leans on the candidate count never
    // exceeding n-k-1, which a node whose degree has dipped below k briefly
    // violates; the lapse shrinks like 1/n, so probe at a size where the
    // bound manifests cleanly.
    let params = RewiringParams::new(60, 4, 0.5).unwrap();
    let w_bound = 0.5 * 4.0 / (60.0 - 4.0 - 1.0);
    let instances = 5000u64;
    let probes: [(usize, usize); 3] = [(0, 30), (0, 10), (5, 40)];
    let mut hits = [0u32; 3];
    for s in 0..instances {
        let g = gen_rewired_smallworld(&params, Seed(MASTER ^ (s * 7))).unwrap();
        for (i, &(a, b)) in probes.iter().enumerate() {
            if g.has_edge(a, b) {
                hits[i] += 1;
            }
        }
    }
    let band = 3.0 * (w_bound * (1.0 - w_bound) / instances as f64).sqrt();
    for (i, &h) in hits.iter().enumerate() {
        let freq = h as f64 / instances as f64;
        assert!(
            freq >= w_bound - band,
            "pair {:?}: freq {freq} below bound {w_bound} - band {band}",
            probes[i]
        );
    }
}

#[test]
fn navigable_trial_hits_antipode_at_harmonic_rate() {
    // n=10, k=4, r=1: s = 1/5 + 2(1/3 + 1/4); the antipode draws
    // (1/5)/s ~ 0.14634 of node 0's trials.
    let params = NavigableRingParams::new(10, 4, 1, 1.0).unwrap();
    let s = ring_normalizer(&params).unwrap();
    let p_antipode = 0.2 / s;
    assert!((p_antipode - 0.14634).abs() < 1e-4);
    let seeds = 2000u64;
    let mut hits = 0u32;
    for sd in 0..seeds {
        let v = swcap_core::generators::navigable_trial_endpoint(&params, Seed(MASTER ^ sd), 0, 0)
            .unwrap();
        if v == 5 {
            hits += 1;
        }
    }
    let freq = hits as f64 / seeds as f64;
    let band = 3.0 * (p_antipode * (1.0 - p_antipode) / seeds as f64).sqrt();
    assert!(
        (freq - p_antipode).abs() <= band,
        "freq {freq} vs {p_antipode} (band {band})"
    );
}
