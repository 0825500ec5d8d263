//! Seeded random instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{Cost, Edge, Instance};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenParams {
    pub nodes: usize,
    /// Probability that each pair of nodes is joined, in `[0, 1]`.
    pub edge_probability: f64,
    /// Costs are drawn uniformly from `1..=max_cost`.
    pub max_cost: Cost,
    /// Requirements are drawn uniformly from `0..=min(k, deg(v))`.
    pub k: u32,
}

impl GenParams {
    pub fn check(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.edge_probability) {
            return Err(Error::Parameter(format!(
                "edge probability {} is outside [0, 1]",
                self.edge_probability
            )));
        }
        if self.max_cost == 0 {
            return Err(Error::Parameter("max cost must be at least 1".into()));
        }
        Ok(())
    }
}

/// Draws an instance from `rng`.
pub fn generate<R: Rng>(rng: &mut R, params: &GenParams) -> Result<Instance> {
    params.check()?;
    let n = params.nodes;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(params.edge_probability) {
                edges.push(Edge::new(u, v, rng.gen_range(1..=params.max_cost)));
            }
        }
    }
    let mut degree = vec![0u32; n];
    for e in &edges {
        degree[e.u] += 1;
        degree[e.v] += 1;
    }
    let requirements = degree.iter().map(|&d| rng.gen_range(0..=params.k.min(d))).collect();
    Instance::new(n, edges, requirements)
}

/// Same seed, same parameters, same instance.
pub fn gen_random(seed: u64, params: &GenParams) -> Result<Instance> {
    generate(&mut ChaCha8Rng::seed_from_u64(seed), params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::emit_text;

    fn params(nodes: usize, edge_probability: f64) -> GenParams {
        GenParams { nodes, edge_probability, max_cost: 10, k: 2 }
    }

    #[test]
    fn deterministic_per_seed() {
        let a = gen_random(1, &params(5, 0.8)).unwrap();
        let b = gen_random(1, &params(5, 0.8)).unwrap();
        assert_eq!(emit_text(&a), emit_text(&b));
        let others: Vec<String> =
            (2..6).map(|s| emit_text(&gen_random(s, &params(5, 0.8)).unwrap())).collect();
        assert!(others.iter().any(|t| *t != emit_text(&a)));
    }

    #[test]
    fn complete_graph_at_probability_one() {
        let inst = gen_random(7, &params(4, 1.0)).unwrap();
        assert_eq!(inst.edges().len(), 6);
        assert!(inst.edges().iter().all(|e| (1..=10).contains(&e.cost)));
        assert!(inst.max_requirement() <= 2);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(gen_random(0, &params(3, 1.5)).is_err());
        assert!(gen_random(0, &GenParams { max_cost: 0, ..params(3, 0.5) }).is_err());
    }

    #[test]
    fn empty_graph() {
        let inst = gen_random(3, &params(4, 0.0)).unwrap();
        assert!(inst.edges().is_empty());
        assert_eq!(inst.requirements(), &[0; 4]);
    }
}
