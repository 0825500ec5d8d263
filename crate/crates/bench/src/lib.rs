//! Fixed workloads shared by the benchmarks.

use mpemc_core::bench::InstanceFamily;
use mpemc_core::matching::WeightedGraph;
use mpemc_core::{gen_random, GenParams, Instance};

/// Instances with `nodes` nodes, edge probability `p` and `k <= 3`.
pub fn instances(nodes: usize, p: f64, count: usize) -> Vec<Instance> {
    (0..count as u64)
        .map(|seed| {
            gen_random(seed, &GenParams { nodes, edge_probability: p, max_cost: 100, k: 3 })
                .expect("parameters are valid")
        })
        .collect()
}

/// The small instances the exact oracle is run on in the acceptance suite.
pub fn oracle_instances(count: usize) -> Vec<Instance> {
    let family = InstanceFamily { seed: 1, count, min_nodes: 4, edge_probability: 0.6, ..Default::default() };
    family.instances().expect("family generates").into_iter().map(|m| m.instance).collect()
}

/// Complete graph with pseudo-random positive weights.
pub fn dense_weighted_graph(n: usize) -> WeightedGraph {
    let mut state = 0x9e37_79b9_u64;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            state = state.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
            edges.push((u, v, (state >> 33) as i64 % 1000 + 1));
        }
    }
    WeightedGraph::new(n, edges)
}
