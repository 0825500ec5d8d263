use std::fmt;

use crate::instance::{EdgeId, NodeId};

/// A single broken rule found while validating an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    SelfLoop { edge: EdgeId, node: NodeId },
    DuplicateEdge { edge: EdgeId, first: EdgeId, u: NodeId, v: NodeId },
    EndpointOutOfRange { edge: EdgeId, node: NodeId },
    UnknownNode { node: NodeId },
    RequirementExceedsDegree { node: NodeId, requirement: u32, degree: usize },
    RequirementCount { expected: usize, found: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SelfLoop { edge, node } => {
                write!(f, "edge {edge}: self-loop at node {node}")
            }
            Violation::DuplicateEdge { edge, first, u, v } => {
                write!(f, "edge {edge}: duplicate edge {{{u},{v}}} (first seen as edge {first})")
            }
            Violation::EndpointOutOfRange { edge, node } => {
                write!(f, "edge {edge}: endpoint {node} is not a node")
            }
            Violation::UnknownNode { node } => write!(f, "node {node}: unknown node"),
            Violation::RequirementExceedsDegree { node, requirement, degree } => write!(
                f,
                "node {node}: r(v) exceeds degree (r = {requirement}, degree = {degree})"
            ),
            Violation::RequirementCount { expected, found } => {
                write!(f, "expected {expected} requirements, found {found}")
            }
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid instance: {}", join(.0))]
    Invalid(Vec<Violation>),
    #[error("edge {0} is not part of the instance")]
    UnknownEdge(EdgeId),
    #[error("instance too large for exhaustive search: {size} edges exceeds limit {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("instance is infeasible at node {0}")]
    Infeasible(NodeId),
    #[error("node {0} has no incident edge and cannot be covered")]
    Uncoverable(NodeId),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn join(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
