//! Independent checking of a claimed solution.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::instance::{Cost, EdgeId, Instance, NodeId, Solution};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Issue {
    UnknownEdge { edge: EdgeId },
    DegreeShort { node: NodeId, requirement: u32, degree: usize },
    PowerCount { expected: usize, found: usize },
    PowerMismatch { node: NodeId, claimed: Cost, actual: Cost },
    TotalMismatch { claimed: Cost, actual: Cost },
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Issue::UnknownEdge { edge } => write!(f, "edge {edge} is not in the instance"),
            Issue::DegreeShort { node, requirement, degree } => {
                write!(f, "node {node}: degree {degree} below requirement {requirement}")
            }
            Issue::PowerCount { expected, found } => {
                write!(f, "expected {expected} power values, found {found}")
            }
            Issue::PowerMismatch { node, claimed, actual } => {
                write!(f, "node {node}: claimed power {claimed}, actual {actual}")
            }
            Issue::TotalMismatch { claimed, actual } => {
                write!(f, "claimed total power {claimed}, actual {actual}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeReport {
    pub node: NodeId,
    pub requirement: u32,
    pub degree: usize,
    pub power: Cost,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub nodes: Vec<NodeReport>,
    pub total_power: Cost,
    pub issues: Vec<Issue>,
}

impl VerifyReport {
    pub fn is_ok(&self) -> bool {
        self.issues.is_empty()
    }
}

/// Recomputes degrees and powers from `solution.chosen` and compares them
/// with the requirements and with the claimed powers.
pub fn verify(inst: &Instance, solution: &Solution) -> VerifyReport {
    let graph = inst.graph();
    let mut issues = Vec::new();
    let chosen: Vec<EdgeId> = solution
        .chosen
        .iter()
        .copied()
        .filter(|&id| {
            let known = id < graph.edge_count();
            if !known {
                issues.push(Issue::UnknownEdge { edge: id });
            }
            known
        })
        .collect();
    let degree = graph.degrees(&chosen).expect("edges were filtered");
    let power = graph.powers(&chosen).expect("edges were filtered");

    let nodes: Vec<NodeReport> = (0..inst.node_count())
        .map(|v| NodeReport {
            node: v,
            requirement: inst.requirement(v),
            degree: degree[v],
            power: power[v],
        })
        .collect();
    for n in &nodes {
        if n.degree < n.requirement as usize {
            issues.push(Issue::DegreeShort {
                node: n.node,
                requirement: n.requirement,
                degree: n.degree,
            });
        }
    }
    if solution.power.len() != power.len() {
        issues.push(Issue::PowerCount { expected: power.len(), found: solution.power.len() });
    } else {
        for (v, (&claimed, &actual)) in solution.power.iter().zip(&power).enumerate() {
            if claimed != actual {
                issues.push(Issue::PowerMismatch { node: v, claimed, actual });
            }
        }
    }
    let total_power = power.iter().sum();
    if solution.total_power != total_power {
        issues.push(Issue::TotalMismatch { claimed: solution.total_power, actual: total_power });
    }
    VerifyReport { nodes, total_power, issues }
}
