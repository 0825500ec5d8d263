//! Instance files.
//!
//! Text format, one item per line, `#` starts a comment:
//!
//! ```text
//! # path a-b-c
//! 3          node count, first non-empty line
//! 0 1 1      edge: u v cost
//! 1 2 2
//! 0 1        requirement: v r
//! 1 2
//! 2 1
//! ```
//!
//! Nodes without a requirement line get `r = 0`. [`emit_text`] writes the
//! node count, then every edge, then a requirement line for every node.
//!
//! The JSON format carries the same fields:
//! `{"nodes": 3, "edges": [[0, 1, 1], [1, 2, 2]], "requirements": [1, 2, 1]}`.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};
use crate::instance::{Cost, Edge, Instance, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl Format {
    /// JSON for `.json` files, text otherwise.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Text,
        }
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_field<T: std::str::FromStr>(token: &str, what: &str, line: usize) -> Result<T> {
    if token.starts_with('-') {
        return Err(parse_error(line, format!("negative {what} {token}")));
    }
    token.parse().map_err(|_| parse_error(line, format!("invalid {what} {token:?}")))
}

pub fn parse_text(text: &str) -> Result<Instance> {
    let mut nodes: Option<usize> = None;
    let mut edges = Vec::new();
    let mut requirements: Vec<(usize, NodeId, u32)> = Vec::new();

    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if nodes.is_none() {
            if tokens.len() != 1 {
                return Err(parse_error(line, "expected the node count"));
            }
            nodes = Some(parse_field(tokens[0], "node count", line)?);
            continue;
        }
        match tokens.as_slice() {
            [u, v, c] => {
                let u = parse_field(u, "node", line)?;
                let v = parse_field(v, "node", line)?;
                let c: Cost = parse_field(c, "cost", line)?;
                edges.push(Edge::new(u, v, c));
            }
            [v, r] => {
                let v: NodeId = parse_field(v, "node", line)?;
                let r: u32 = parse_field(r, "requirement", line)?;
                if let Some((first, _, _)) = requirements.iter().find(|(_, x, _)| *x == v) {
                    return Err(parse_error(
                        line,
                        format!("duplicate requirement for node {v} (first on line {first})"),
                    ));
                }
                requirements.push((line, v, r));
            }
            _ => {
                return Err(parse_error(
                    line,
                    format!("expected \"u v cost\" or \"v r\", found {} fields", tokens.len()),
                ))
            }
        }
    }

    let n = nodes.ok_or_else(|| parse_error(text.lines().count().max(1), "missing node count"))?;
    let mut r = vec![0; n];
    let mut unknown = Vec::new();
    for (_, v, req) in requirements {
        match r.get_mut(v) {
            Some(slot) => *slot = req,
            None => unknown.push(Violation::UnknownNode { node: v }),
        }
    }
    match Instance::new(n, edges, r) {
        Err(Error::Invalid(mut rest)) => {
            unknown.append(&mut rest);
            Err(Error::Invalid(unknown))
        }
        Ok(_) if !unknown.is_empty() => Err(Error::Invalid(unknown)),
        other => other,
    }
}

pub fn emit_text(inst: &Instance) -> String {
    let mut out = String::new();
    writeln!(out, "{}", inst.node_count()).unwrap();
    for e in inst.edges() {
        writeln!(out, "{} {} {}", e.u, e.v, e.cost).unwrap();
    }
    for (v, r) in inst.requirements().iter().enumerate() {
        writeln!(out, "{v} {r}").unwrap();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceDoc {
    pub nodes: usize,
    pub edges: Vec<(NodeId, NodeId, Cost)>,
    pub requirements: Vec<u32>,
}

impl From<&Instance> for InstanceDoc {
    fn from(inst: &Instance) -> Self {
        InstanceDoc {
            nodes: inst.node_count(),
            edges: inst.edges().iter().map(|e| (e.u, e.v, e.cost)).collect(),
            requirements: inst.requirements().to_vec(),
        }
    }
}

impl TryFrom<InstanceDoc> for Instance {
    type Error = Error;

    fn try_from(doc: InstanceDoc) -> Result<Self> {
        let edges = doc.edges.into_iter().map(|(u, v, c)| Edge::new(u, v, c)).collect();
        Instance::new(doc.nodes, edges, doc.requirements)
    }
}

pub fn parse_json(text: &str) -> Result<Instance> {
    let doc: InstanceDoc = serde_json::from_str(text)?;
    doc.try_into()
}

pub fn emit_json(inst: &Instance) -> String {
    serde_json::to_string(&InstanceDoc::from(inst)).expect("instance documents serialize")
}

pub fn parse(text: &str, format: Format) -> Result<Instance> {
    match format {
        Format::Text => parse_text(text),
        Format::Json => parse_json(text),
    }
}

pub fn emit(inst: &Instance, format: Format) -> String {
    match format {
        Format::Text => emit_text(inst),
        Format::Json => emit_json(inst) + "\n",
    }
}

pub fn read_instance(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path)?;
    parse(&text, Format::from_path(path))
}
