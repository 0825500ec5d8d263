//! Exact minimum-cost edge cover of multigraphs with loops.
//!
//! Every node first buys its cheapest incident edge at cost `m(u)`. Pairing
//! two nodes with one edge `uv` instead saves `m(u) + m(v) - c(uv)`, so the
//! optimum is `Σ m(u)` minus a maximum-weight matching over these savings.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::instance::{Cost, NodeId};
use crate::matching::{max_weight_matching, WeightedGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverEdge {
    pub u: NodeId,
    pub v: NodeId,
    pub cost: Cost,
}

impl CoverEdge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverMultigraph {
    nodes: usize,
    edges: Vec<CoverEdge>,
}

impl CoverMultigraph {
    pub fn new(nodes: usize, edges: Vec<CoverEdge>) -> Result<Self> {
        if let Some(e) = edges.iter().find(|e| e.u >= nodes || e.v >= nodes) {
            return Err(Error::Parameter(format!(
                "cover edge ({}, {}) out of range for {nodes} nodes",
                e.u, e.v
            )));
        }
        Ok(CoverMultigraph { nodes, edges })
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn edges(&self) -> &[CoverEdge] {
        &self.edges
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeCover {
    /// Indices into the multigraph's edge list, sorted.
    pub edges: Vec<usize>,
    pub cost: Cost,
}

/// Cheapest edge touching each node, lowest index on ties.
pub fn cheapest_per_node(g: &CoverMultigraph) -> Vec<Option<usize>> {
    let mut best: Vec<Option<usize>> = vec![None; g.nodes];
    for (i, e) in g.edges.iter().enumerate() {
        for x in [e.u, e.v] {
            if best[x].map_or(true, |j| e.cost < g.edges[j].cost) {
                best[x] = Some(i);
            }
        }
    }
    best
}

pub fn min_cost_edge_cover(g: &CoverMultigraph) -> Result<EdgeCover> {
    let cheapest = cheapest_per_node(g);
    let mut m = Vec::with_capacity(g.nodes);
    for (u, c) in cheapest.iter().enumerate() {
        match c {
            Some(i) => m.push(g.edges[*i].cost),
            None => return Err(Error::Uncoverable(u)),
        }
    }

    // Cheapest non-loop edge per unordered pair.
    let mut pair_best: HashMap<(NodeId, NodeId), usize> = HashMap::new();
    let mut pairs = Vec::new();
    for (i, e) in g.edges.iter().enumerate().filter(|(_, e)| !e.is_loop()) {
        let key = (e.u.min(e.v), e.u.max(e.v));
        match pair_best.get(&key) {
            Some(&j) if g.edges[j].cost <= e.cost => {}
            Some(_) => {
                pair_best.insert(key, i);
            }
            None => {
                pair_best.insert(key, i);
                pairs.push(key);
            }
        }
    }

    let gains = pairs.iter().map(|&(u, v)| {
        let c = g.edges[pair_best[&(u, v)]].cost;
        let gain = m[u] as i128 + m[v] as i128 - c as i128;
        (u, v, i64::try_from(gain).expect("edge cover costs fit in i64"))
    });
    let matching = max_weight_matching(&WeightedGraph::new(g.nodes, gains));

    let mut chosen: Vec<usize> = matching.pairs.iter().map(|key| pair_best[key]).collect();
    for u in 0..g.nodes {
        if matching.mate[u].is_none() {
            chosen.push(cheapest[u].expect("checked above"));
        }
    }
    chosen.sort_unstable();
    chosen.dedup();
    let cost = chosen.iter().map(|&i| g.edges[i].cost).sum();
    Ok(EdgeCover { edges: chosen, cost })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn edge(u: NodeId, v: NodeId, cost: Cost) -> CoverEdge {
        CoverEdge { u, v, cost }
    }

    fn brute_force(g: &CoverMultigraph) -> Option<Cost> {
        let m = g.edges.len();
        let mut best = None;
        for mask in 0u32..(1 << m) {
            let mut covered = vec![false; g.nodes];
            let mut cost = 0;
            for (i, e) in g.edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    covered[e.u] = true;
                    covered[e.v] = true;
                    cost += e.cost;
                }
            }
            if covered.iter().all(|&c| c) && best.map_or(true, |b| cost < b) {
                best = Some(cost);
            }
        }
        best
    }

    fn assert_covers(g: &CoverMultigraph, cover: &EdgeCover) {
        let mut covered = vec![false; g.nodes];
        for &i in &cover.edges {
            covered[g.edges[i].u] = true;
            covered[g.edges[i].v] = true;
        }
        assert!(covered.iter().all(|&c| c));
        assert_eq!(cover.cost, cover.edges.iter().map(|&i| g.edges[i].cost).sum::<Cost>());
    }

    #[test]
    fn single_loop() {
        let g = CoverMultigraph::new(1, vec![edge(0, 0, 4)]).unwrap();
        let c = min_cost_edge_cover(&g).unwrap();
        assert_eq!((c.edges, c.cost), (vec![0], 4));
    }

    #[test]
    fn two_loops_beat_expensive_edge() {
        let g = CoverMultigraph::new(2, vec![edge(0, 1, 5), edge(0, 0, 2), edge(1, 1, 2)]).unwrap();
        let c = min_cost_edge_cover(&g).unwrap();
        assert_eq!((c.edges, c.cost), (vec![1, 2], 4));
    }

    #[test]
    fn triangle_cover() {
        let g = CoverMultigraph::new(3, vec![edge(0, 1, 1), edge(1, 2, 2), edge(0, 2, 3)]).unwrap();
        let c = min_cost_edge_cover(&g).unwrap();
        assert_eq!((c.edges, c.cost), (vec![0, 1], 3));
        assert_eq!(brute_force(&g), Some(3));
    }

    #[test]
    fn uncoverable_node_is_named() {
        let g = CoverMultigraph::new(3, vec![edge(0, 1, 1)]).unwrap();
        assert!(matches!(min_cost_edge_cover(&g), Err(Error::Uncoverable(2))));
    }

    #[test]
    fn parallel_edges_use_cheapest() {
        let g = CoverMultigraph::new(2, vec![edge(0, 1, 9), edge(1, 0, 3), edge(0, 1, 3)]).unwrap();
        let c = min_cost_edge_cover(&g).unwrap();
        assert_eq!((c.edges, c.cost), (vec![1], 3));
    }

    fn arb_multigraph() -> impl Strategy<Value = CoverMultigraph> {
        (1usize..=7).prop_flat_map(|n| {
            let e = (0..n, 0..n, 1u64..15).prop_map(|(u, v, c)| edge(u, v, c));
            // One loop per node guarantees coverability; extra edges on top.
            (Just(n), proptest::collection::vec(1u64..15, n), proptest::collection::vec(e, 0..=(14 - n)))
        })
        .prop_map(|(n, loops, extra)| {
            let mut edges: Vec<CoverEdge> = Vec::new();
            for (i, e) in extra.into_iter().enumerate() {
                edges.push(e);
                if i < n {
                    edges.push(edge(i, i, loops[i] + 10));
                }
            }
            for u in 0..n {
                if !edges.iter().any(|e| e.u == u || e.v == u) {
                    edges.push(edge(u, u, loops[u]));
                }
            }
            CoverMultigraph::new(n, edges).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn matches_brute_force(g in arb_multigraph()) {
            prop_assume!(g.edges.len() <= 14);
            let cover = min_cost_edge_cover(&g).unwrap();
            assert_covers(&g, &cover);
            prop_assert_eq!(Some(cover.cost), brute_force(&g));
        }

        #[test]
        fn equals_sum_of_cheapest_minus_matching(g in arb_multigraph()) {
            let cover = min_cost_edge_cover(&g).unwrap();
            let cheapest = cheapest_per_node(&g);
            let m: Vec<Cost> = cheapest.iter().map(|c| g.edges[c.unwrap()].cost).collect();
            let gains = g.edges.iter().filter(|e| !e.is_loop()).map(|e| {
                (e.u, e.v, m[e.u] as i64 + m[e.v] as i64 - e.cost as i64)
            });
            let matching = max_weight_matching(&WeightedGraph::new(g.node_count(), gains));
            let sum: Cost = m.iter().sum();
            prop_assert_eq!(cover.cost as i64, sum as i64 - matching.weight);
        }

        #[test]
        fn cover_is_disjoint_stars(g in arb_multigraph()) {
            let cover = min_cost_edge_cover(&g).unwrap();
            let mut deg = vec![0usize; g.node_count()];
            for &i in &cover.edges {
                let e = g.edges[i];
                if !e.is_loop() {
                    deg[e.u] += 1;
                    deg[e.v] += 1;
                }
            }
            for &i in &cover.edges {
                let e = g.edges[i];
                if e.is_loop() {
                    // A loop only ever covers an otherwise uncovered node.
                    prop_assert_eq!(deg[e.u], 0);
                } else {
                    // No edge joins two centers.
                    prop_assert!(deg[e.u] == 1 || deg[e.v] == 1);
                }
            }
        }
    }
}
