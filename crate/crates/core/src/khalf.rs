//! The `(k + 1/2)` algorithm.
//!
//! First every node with a requirement gets power at least its threshold
//! `w_v` and one covering edge, via the restricted cover solver. The edges
//! these powers induce satisfy one unit of each requirement; the remaining
//! `r(v) - d_F(v)` units are bought with each node's cheapest unused edges.

use crate::error::Result;
use crate::instance::{normalize, EdgeId, Instance, NodeId, Solution};
use crate::restricted::{solve_restricted, RestrictedInstance, RestrictedSolution};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KhalfResult {
    pub solution: Solution,
    pub restricted: RestrictedSolution,
    /// `F`, the edges induced by the restricted powers.
    pub induced: Vec<EdgeId>,
    /// `∪ I_v`, the per-node top-up edges.
    pub top_up: Vec<EdgeId>,
}

pub fn solve_khalf(inst: &Instance) -> Result<KhalfResult> {
    let graph = inst.graph();
    let n = inst.node_count();
    let w = inst.threshold_costs();
    let targets: Vec<NodeId> = (0..n).filter(|&v| inst.requirement(v) >= 1).collect();
    let ri = RestrictedInstance::new(graph.clone(), &targets, &w)?;
    let restricted = solve_restricted(&ri)?;

    let induced = restricted.assignment.induced.clone();
    let deg = graph.degrees(&induced)?;
    for &v in &targets {
        assert!(deg[v] >= 1, "node {v} is not covered by the restricted powers");
    }

    let residual = inst.residual_requirements(&induced)?;
    let mut top_up = Vec::new();
    for v in 0..n {
        let picks = graph
            .incident(v)
            .iter()
            .copied()
            .filter(|id| induced.binary_search(id).is_err())
            .take(residual[v] as usize);
        for id in picks {
            assert!(graph.cost(id) <= w[v], "top-up edge {id} costs more than w_{v}");
            top_up.push(id);
        }
    }
    let top_up = normalize(&top_up);

    let mut all = induced.clone();
    all.extend_from_slice(&top_up);
    let solution = Solution::from_edges(graph, &all)?;
    assert!(inst.is_cover(&solution.chosen)?, "result is not a cover");
    Ok(KhalfResult { solution, restricted, induced, top_up })
}
