//! Restricted minimum-power edge cover.
//!
//! Given targets `U` with power lower bounds `ℓ`, find powers `π >= ℓ` on
//! `U` such that `F = {uv : π(u), π(v) >= c(uv)}` covers `U`, minimizing
//! `Σ π`. Solved within a factor 3/2 by an exact minimum-cost edge cover on
//! an auxiliary multigraph over `U` whose edges stand for one or two edges
//! of the original graph.

use serde::{Deserialize, Serialize};

use crate::edge_cover::{min_cost_edge_cover, CoverEdge, CoverMultigraph};
use crate::error::{Error, Result};
use crate::instance::{normalize, Cost, EdgeId, Graph, NodeId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedInstance {
    graph: Graph,
    targets: Vec<NodeId>,
    /// Indexed by node; zero outside the targets.
    lower: Vec<Cost>,
}

impl RestrictedInstance {
    /// `lower` is indexed by node; entries outside `targets` are ignored.
    pub fn new(graph: Graph, targets: &[NodeId], lower: &[Cost]) -> Result<Self> {
        let n = graph.node_count();
        if lower.len() != n {
            return Err(Error::Parameter(format!(
                "expected {n} lower bounds, found {}",
                lower.len()
            )));
        }
        let targets = normalize(targets);
        let mut bounds = vec![0; n];
        for &u in &targets {
            if u >= n {
                return Err(Error::Parameter(format!("target {u} is not a node")));
            }
            if graph.degree(u) == 0 {
                return Err(Error::Uncoverable(u));
            }
            bounds[u] = lower[u];
        }
        Ok(RestrictedInstance { graph, targets, lower: bounds })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn targets(&self) -> &[NodeId] {
        &self.targets
    }

    pub fn lower(&self) -> &[Cost] {
        &self.lower
    }

    pub fn is_target(&self, v: NodeId) -> bool {
        self.targets.binary_search(&v).is_ok()
    }

    /// Raises every target bound to at least its cheapest incident cost.
    /// Any feasible assignment already satisfies this, so it loses nothing.
    pub fn normalized(&self) -> RestrictedInstance {
        let mut lower = self.lower.clone();
        for &u in &self.targets {
            let cheapest = self.graph.cheapest_incident(u).expect("targets have edges");
            lower[u] = lower[u].max(self.graph.cost(cheapest));
        }
        RestrictedInstance { graph: self.graph.clone(), targets: self.targets.clone(), lower }
    }
}

/// Node powers together with the edge set they induce.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerAssignment {
    pub power: Vec<Cost>,
    /// `{uv : π(u) >= c(uv) and π(v) >= c(uv)}`.
    pub induced: Vec<EdgeId>,
    pub total: Cost,
}

impl PowerAssignment {
    pub fn new(graph: &Graph, power: Vec<Cost>) -> Self {
        let induced = graph.induced_by_powers(&power);
        let total = power.iter().sum();
        PowerAssignment { power, induced, total }
    }

    /// `π >= ℓ` on the targets and every target touches an induced edge.
    pub fn is_feasible(&self, ri: &RestrictedInstance) -> bool {
        let mut covered = vec![false; ri.graph.node_count()];
        for &id in &self.induced {
            let e = ri.graph.edge(id);
            covered[e.u] = true;
            covered[e.v] = true;
        }
        ri.targets.iter().all(|&u| covered[u] && self.power[u] >= ri.lower[u])
    }
}

/// `D(I) = Σ_v max(p_I(v) - ℓ_v, 0)`.
pub fn deficiency(graph: &Graph, lower: &[Cost], set: &[EdgeId]) -> Result<Cost> {
    let power = graph.powers(set)?;
    Ok(power.iter().zip(lower).map(|(&p, &l)| p.saturating_sub(l)).sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverEdgeKind {
    /// A target covered alone through its cheapest edge.
    Loop,
    /// An original edge between two targets.
    Direct,
    /// Two original edges `ux`, `xv` through an intermediate node `x`.
    Path { via: NodeId },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverGraphEdge {
    pub kind: CoverEdgeKind,
    /// Original node ids; equal for loops.
    pub u: NodeId,
    pub v: NodeId,
    pub cost: Cost,
    /// The original edges this edge stands for.
    pub origin: Vec<EdgeId>,
}

impl CoverGraphEdge {
    /// `ℓ(e')`: the lower bounds of the targets this edge covers.
    pub fn bound(&self, lower: &[Cost]) -> Cost {
        match self.kind {
            CoverEdgeKind::Loop => lower[self.u],
            _ => lower[self.u] + lower[self.v],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverGraph {
    pub targets: Vec<NodeId>,
    pub edges: Vec<CoverGraphEdge>,
}

impl CoverGraph {
    /// The same multigraph with targets renumbered `0..|U|`.
    pub fn multigraph(&self) -> CoverMultigraph {
        let local = |x: NodeId| self.targets.binary_search(&x).expect("endpoint is a target");
        let edges = self
            .edges
            .iter()
            .map(|e| CoverEdge { u: local(e.u), v: local(e.v), cost: e.cost })
            .collect();
        CoverMultigraph::new(self.targets.len(), edges).expect("endpoints are local ids")
    }
}

/// Builds the auxiliary multigraph over the targets. Expects normalized
/// lower bounds (see [`RestrictedInstance::normalized`]).
pub fn build_cover_graph(ri: &RestrictedInstance) -> Result<CoverGraph> {
    let g = &ri.graph;
    let lower = &ri.lower;
    let d = |set: &[EdgeId]| deficiency(g, lower, set).expect("edges come from the graph");
    let mut edges = Vec::new();

    for &v in &ri.targets {
        let e = g.cheapest_incident(v).ok_or(Error::Uncoverable(v))?;
        edges.push(CoverGraphEdge {
            kind: CoverEdgeKind::Loop,
            u: v,
            v,
            cost: lower[v] + d(&[e]),
            origin: vec![e],
        });
    }

    for (id, e) in g.edges().iter().enumerate() {
        if ri.is_target(e.u) && ri.is_target(e.v) {
            edges.push(CoverGraphEdge {
                kind: CoverEdgeKind::Direct,
                u: e.u.min(e.v),
                v: e.u.max(e.v),
                cost: lower[e.u] + lower[e.v] + d(&[id]),
                origin: vec![id],
            });
        }
    }

    // Two-edge paths u–x–v between distinct targets. The pair cost is
    // symmetric, so each unordered pair of edges at x is considered once;
    // only the cheapest path per target pair is kept.
    let mut best_path: std::collections::BTreeMap<(NodeId, NodeId), CoverGraphEdge> =
        std::collections::BTreeMap::new();
    for x in 0..g.node_count() {
        let at_x = g.incident(x);
        for (i, &e1) in at_x.iter().enumerate() {
            for &e2 in &at_x[i + 1..] {
                let u = g.edge(e1).other(x);
                let v = g.edge(e2).other(x);
                if !(ri.is_target(u) && ri.is_target(v)) {
                    continue;
                }
                let (u, v) = (u.min(v), u.max(v));
                let mut origin = vec![e1, e2];
                origin.sort_unstable();
                let cost = lower[u] + lower[v] + d(&origin);
                let candidate =
                    CoverGraphEdge { kind: CoverEdgeKind::Path { via: x }, u, v, cost, origin };
                match best_path.get(&(u, v)) {
                    Some(old) if old.cost <= cost => {}
                    _ => {
                        best_path.insert((u, v), candidate);
                    }
                }
            }
        }
    }
    edges.extend(best_path.into_values());

    Ok(CoverGraph { targets: ri.targets.clone(), edges })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedSolution {
    pub assignment: PowerAssignment,
    /// Indices into `cover_graph.edges` of the chosen cover.
    pub cover: Vec<usize>,
    /// `c'(I')`.
    pub cover_cost: Cost,
    /// `I`, the union of the chosen edges' origins.
    pub edges: Vec<EdgeId>,
    pub cover_graph: CoverGraph,
}

pub fn solve_restricted(ri: &RestrictedInstance) -> Result<RestrictedSolution> {
    let norm = ri.normalized();
    let cover_graph = build_cover_graph(&norm)?;
    let cover = min_cost_edge_cover(&cover_graph.multigraph())?;

    let origin: Vec<EdgeId> = cover
        .edges
        .iter()
        .flat_map(|&i| cover_graph.edges[i].origin.iter().copied())
        .collect();
    let edges = normalize(&origin);
    let power: Vec<Cost> = ri
        .graph
        .powers(&edges)?
        .into_iter()
        .zip(&norm.lower)
        .map(|(p, &l)| p.max(l))
        .collect();
    let assignment = PowerAssignment::new(&ri.graph, power);

    assert!(
        assignment.total <= cover.cost,
        "power {} exceeds cover cost {}",
        assignment.total,
        cover.cost
    );
    assert!(assignment.is_feasible(ri), "restricted assignment is infeasible");

    Ok(RestrictedSolution {
        assignment,
        cover: cover.edges,
        cover_cost: cover.cost,
        edges,
        cover_graph,
    })
}
