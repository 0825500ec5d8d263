//! Graphs with edge costs, degree requirements and the power objective.

use std::collections::HashMap;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};

pub type NodeId = usize;
pub type EdgeId = usize;
pub type Cost = u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
    pub cost: Cost,
}

impl Edge {
    pub fn new(u: NodeId, v: NodeId, cost: Cost) -> Self {
        Edge { u, v, cost }
    }

    /// The endpoint opposite to `x`. `x` must be an endpoint.
    pub fn other(&self, x: NodeId) -> NodeId {
        if self.u == x {
            self.v
        } else {
            debug_assert_eq!(self.v, x);
            self.u
        }
    }

    pub fn touches(&self, x: NodeId) -> bool {
        self.u == x || self.v == x
    }

    fn key(&self) -> (NodeId, NodeId) {
        (self.u.min(self.v), self.u.max(self.v))
    }
}

/// A simple undirected graph on nodes `0..n` with integer edge costs.
///
/// Incidence lists are kept sorted by `(cost, edge id)`, which is the
/// tie-breaking order used by every "cheapest edges" selection in the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    incident: Vec<Vec<EdgeId>>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        let violations = graph_violations(n, &edges);
        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }
        Ok(Self::build(n, edges))
    }

    fn build(n: usize, edges: Vec<Edge>) -> Self {
        let mut incident = vec![Vec::new(); n];
        for (id, e) in edges.iter().enumerate() {
            incident[e.u].push(id);
            incident[e.v].push(id);
        }
        for list in &mut incident {
            list.sort_by_key(|&id| (edges[id].cost, id));
        }
        Graph { n, edges, incident }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    pub fn cost(&self, id: EdgeId) -> Cost {
        self.edges[id].cost
    }

    /// Edges at `v`, cheapest first.
    pub fn incident(&self, v: NodeId) -> &[EdgeId] {
        &self.incident[v]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.incident[v].len()
    }

    /// The cheapest edge at `v` (lowest id on ties).
    pub fn cheapest_incident(&self, v: NodeId) -> Option<EdgeId> {
        self.incident[v].first().copied()
    }

    pub fn check_edges(&self, set: &[EdgeId]) -> Result<()> {
        match set.iter().find(|&&id| id >= self.edges.len()) {
            Some(&id) => Err(Error::UnknownEdge(id)),
            None => Ok(()),
        }
    }

    /// Node powers of the subgraph `(V, set)`: the most expensive chosen edge
    /// at each node, or 0 for nodes the set does not touch.
    pub fn powers(&self, set: &[EdgeId]) -> Result<Vec<Cost>> {
        self.check_edges(set)?;
        let mut power = vec![0; self.n];
        for &id in set {
            let e = &self.edges[id];
            power[e.u] = power[e.u].max(e.cost);
            power[e.v] = power[e.v].max(e.cost);
        }
        Ok(power)
    }

    pub fn total_power(&self, set: &[EdgeId]) -> Result<Cost> {
        Ok(self.powers(set)?.iter().sum())
    }

    pub fn degrees(&self, set: &[EdgeId]) -> Result<Vec<usize>> {
        self.check_edges(set)?;
        let mut deg = vec![0; self.n];
        for &id in set {
            let e = &self.edges[id];
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        Ok(deg)
    }

    /// `{uv : power[u] >= c(uv) and power[v] >= c(uv)}`.
    pub fn induced_by_powers(&self, power: &[Cost]) -> Vec<EdgeId> {
        (0..self.edges.len())
            .filter(|&id| {
                let e = &self.edges[id];
                power[e.u] >= e.cost && power[e.v] >= e.cost
            })
            .collect()
    }
}

fn graph_violations(n: usize, edges: &[Edge]) -> Vec<Violation> {
    let mut violations = Vec::new();
    let mut seen: HashMap<(NodeId, NodeId), EdgeId> = HashMap::new();
    for (id, e) in edges.iter().enumerate() {
        let mut in_range = true;
        for node in [e.u, e.v] {
            if node >= n {
                violations.push(Violation::EndpointOutOfRange { edge: id, node });
                in_range = false;
            }
        }
        if !in_range {
            continue;
        }
        if e.u == e.v {
            violations.push(Violation::SelfLoop { edge: id, node: e.u });
            continue;
        }
        if let Some(&first) = seen.get(&e.key()) {
            violations.push(Violation::DuplicateEdge { edge: id, first, u: e.u, v: e.v });
        } else {
            seen.insert(e.key(), id);
        }
    }
    violations
}

/// Checks every rule an instance must satisfy: simple graph, endpoints in
/// range, one requirement per node and `r(v) <= deg(v)`.
///
/// Costs are unsigned, so non-negativity holds by construction.
pub fn validate_instance(
    n: usize,
    edges: &[Edge],
    requirements: &[u32],
) -> std::result::Result<(), Vec<Violation>> {
    let mut violations = graph_violations(n, edges);
    if requirements.len() != n {
        violations.push(Violation::RequirementCount { expected: n, found: requirements.len() });
    } else {
        let mut degree = vec![0usize; n];
        for e in edges.iter().filter(|e| e.u < n && e.v < n && e.u != e.v) {
            degree[e.u] += 1;
            degree[e.v] += 1;
        }
        for (node, (&r, &d)) in requirements.iter().zip(&degree).enumerate() {
            if r as usize > d {
                violations.push(Violation::RequirementExceedsDegree {
                    node,
                    requirement: r,
                    degree: d,
                });
            }
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// A validated instance: a simple graph plus a requirement `r(v)` per node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    graph: Graph,
    requirements: Vec<u32>,
}

impl Instance {
    pub fn new(n: usize, edges: Vec<Edge>, requirements: Vec<u32>) -> Result<Self> {
        validate_instance(n, &edges, &requirements).map_err(Error::Invalid)?;
        Ok(Instance { graph: Graph::build(n, edges), requirements })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn node_count(&self) -> usize {
        self.graph.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.graph.edges
    }

    pub fn requirements(&self) -> &[u32] {
        &self.requirements
    }

    pub fn requirement(&self, v: NodeId) -> u32 {
        self.requirements[v]
    }

    /// `k`, the largest requirement (0 for an empty instance).
    pub fn max_requirement(&self) -> u32 {
        self.requirements.iter().copied().max().unwrap_or(0)
    }

    pub fn power_profile(&self, set: &[EdgeId]) -> Result<Solution> {
        Solution::from_edges(&self.graph, set)
    }

    pub fn residual_requirements(&self, set: &[EdgeId]) -> Result<ResidualRequirements> {
        let deg = self.graph.degrees(set)?;
        Ok(ResidualRequirements(
            self.requirements
                .iter()
                .zip(deg)
                .map(|(&r, d)| r.saturating_sub(d.min(u32::MAX as usize) as u32))
                .collect(),
        ))
    }

    /// `w_v`: cost of the `r(v)`-th cheapest edge at `v`, or 0 when `r(v) = 0`.
    pub fn threshold_costs(&self) -> ThresholdCosts {
        ThresholdCosts(
            (0..self.node_count())
                .map(|v| match self.requirements[v] {
                    0 => 0,
                    r => self.graph.cost(self.graph.incident(v)[r as usize - 1]),
                })
                .collect(),
        )
    }

    /// Union over all nodes of their `r(v)` cheapest incident edges.
    pub fn trivial_cover(&self) -> Solution {
        let mut chosen: Vec<EdgeId> = (0..self.node_count())
            .flat_map(|v| {
                self.graph.incident(v)[..self.requirements[v] as usize].iter().copied()
            })
            .collect();
        chosen.sort_unstable();
        chosen.dedup();
        Solution::from_edges(&self.graph, &chosen).expect("incident edges are in range")
    }

    pub fn is_cover(&self, set: &[EdgeId]) -> Result<bool> {
        let deg = self.graph.degrees(set)?;
        Ok(deg.iter().zip(&self.requirements).all(|(&d, &r)| d >= r as usize))
    }
}

/// An edge set together with the power profile it induces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub chosen: Vec<EdgeId>,
    pub power: Vec<Cost>,
    pub total_power: Cost,
}

impl Solution {
    /// Sorts and deduplicates `set`, then evaluates its powers on `graph`.
    pub fn from_edges(graph: &Graph, set: &[EdgeId]) -> Result<Self> {
        let chosen = normalize(set);
        let power = graph.powers(&chosen)?;
        let total_power = power.iter().sum();
        Ok(Solution { chosen, power, total_power })
    }

    pub fn empty(n: usize) -> Self {
        Solution { chosen: Vec::new(), power: vec![0; n], total_power: 0 }
    }
}

/// `r_J(v) = max(r(v) - d_J(v), 0)` for every node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualRequirements(pub Vec<u32>);

impl Deref for ResidualRequirements {
    type Target = [u32];

    fn deref(&self) -> &[u32] {
        &self.0
    }
}

/// Per-node threshold cost `w_v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdCosts(pub Vec<Cost>);

impl ThresholdCosts {
    pub fn sum(&self) -> u128 {
        self.0.iter().map(|&w| w as u128).sum()
    }
}

impl Deref for ThresholdCosts {
    type Target = [Cost];

    fn deref(&self) -> &[Cost] {
        &self.0
    }
}

/// `R_J = Σ_{b ∈ nodes} w_b · r_J(b)`.
pub fn deficiency_potential(
    w: &[Cost],
    residual: &[u32],
    nodes: impl IntoIterator<Item = NodeId>,
) -> u128 {
    nodes
        .into_iter()
        .map(|b| w[b] as u128 * residual[b] as u128)
        .sum()
}

pub fn normalize(set: &[EdgeId]) -> Vec<EdgeId> {
    let mut out = set.to_vec();
    out.sort_unstable();
    out.dedup();
    out
}
