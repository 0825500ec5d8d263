//! Minimum-power edge multi-cover.
//!
//! Given a graph with edge costs and a degree requirement `r(v)` per node,
//! choose edges so every node meets its requirement while minimizing the
//! sum over nodes of the most expensive chosen edge at that node.
//!
//! Solvers:
//! - [`Instance::trivial_cover`], a `(k + 1)` approximation.
//! - [`solve_logk`], an `O(log k)` approximation.
//! - [`solve_khalf`], a `(k + 1/2)` approximation.
//! - [`exact_mpemc`], exhaustive search for small instances.

pub mod arith;
pub mod bench;
pub mod bipartite;
pub mod coverage;
pub mod edge_cover;
pub mod error;
pub mod exact;
pub mod generate;
pub mod instance;
pub mod io;
pub mod khalf;
pub mod logk;
pub mod matching;
pub mod restricted;
pub mod verify;

pub use bench::{run_bench, Algorithm, BenchConfig, BenchReport, BenchRow, InstanceFamily};
pub use bipartite::{to_bipartite, BipartiteInstance};
pub use coverage::{coverage_value, solve_bpbmem, BpbmemMode, StarChoice};
pub use edge_cover::{min_cost_edge_cover, CoverEdge, CoverMultigraph, EdgeCover};
pub use error::{Error, Result, Violation};
pub use exact::{exact_bpbmem, exact_mpemc, exact_restricted};
pub use instance::{
    deficiency_potential, validate_instance, Cost, Edge, EdgeId, Graph, Instance, NodeId,
    ResidualRequirements, Solution, ThresholdCosts,
};
pub use generate::{gen_random, GenParams};
pub use io::{emit_json, emit_text, parse_json, parse_text, Format};
pub use khalf::{solve_khalf, KhalfResult};
pub use logk::{
    cheap_edges, completion, reduce_step, solve_logk, Gamma, LogkResult, ReduceOutcome,
    ReduceParams,
};
pub use matching::{max_weight_matching, Matching, WeightedGraph};
pub use restricted::{
    build_cover_graph, deficiency, solve_restricted, CoverGraph, CoverGraphEdge, PowerAssignment,
    RestrictedInstance, RestrictedSolution,
};
pub use verify::{verify, Issue, VerifyReport};
