//! Two-copy reduction from general instances to bipartite ones.
//!
//! Node `v` of the original graph becomes `a_v = v` on side A and
//! `b_v = n + v` on side B. Original edge `e = uv` yields bipartite edges
//! `2e = a_u b_v` and `2e + 1 = a_v b_u`, both with cost `c(e)`. Only side B
//! carries requirements.

use std::ops::Range;

use crate::error::Result;
use crate::instance::{normalize, Cost, Edge, EdgeId, Instance, NodeId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteInstance {
    instance: Instance,
    original_nodes: usize,
}

impl BipartiteInstance {
    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn original_node_count(&self) -> usize {
        self.original_nodes
    }

    pub fn side_a(&self) -> Range<NodeId> {
        0..self.original_nodes
    }

    pub fn side_b(&self) -> Range<NodeId> {
        self.original_nodes..2 * self.original_nodes
    }

    pub fn a(&self, v: NodeId) -> NodeId {
        v
    }

    pub fn b(&self, v: NodeId) -> NodeId {
        self.original_nodes + v
    }

    pub fn is_b(&self, node: NodeId) -> bool {
        node >= self.original_nodes
    }

    /// Endpoint of a bipartite edge on side A.
    pub fn a_end(&self, id: EdgeId) -> NodeId {
        self.instance.edges()[id].u
    }

    /// Endpoint of a bipartite edge on side B.
    pub fn b_end(&self, id: EdgeId) -> NodeId {
        self.instance.edges()[id].v
    }

    /// The original edge a bipartite edge was copied from.
    pub fn origin(&self, id: EdgeId) -> EdgeId {
        id / 2
    }

    /// `(p_J(A), p_J(B))`.
    pub fn side_powers(&self, set: &[EdgeId]) -> Result<(Cost, Cost)> {
        let power = self.instance.graph().powers(set)?;
        let (a, b) = power.split_at(self.original_nodes);
        Ok((a.iter().sum(), b.iter().sum()))
    }

    /// Maps a bipartite edge set back to the original edges it was copied from.
    pub fn from_bipartite(&self, set: &[EdgeId]) -> Result<Vec<EdgeId>> {
        self.instance.graph().check_edges(set)?;
        Ok(normalize(&set.iter().map(|&id| self.origin(id)).collect::<Vec<_>>()))
    }
}

pub fn to_bipartite(inst: &Instance) -> BipartiteInstance {
    let n = inst.node_count();
    let edges = inst
        .edges()
        .iter()
        .flat_map(|e| [Edge::new(e.u, n + e.v, e.cost), Edge::new(e.v, n + e.u, e.cost)])
        .collect();
    let mut requirements = vec![0; 2 * n];
    requirements[n..].copy_from_slice(inst.requirements());
    let instance = Instance::new(2 * n, edges, requirements)
        .expect("bipartite image of a valid instance is valid");
    BipartiteInstance { instance, original_nodes: n }
}
