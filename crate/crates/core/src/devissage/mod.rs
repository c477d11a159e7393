//! Glued configurations and the assembly of their fundamental groups.

mod assemble;
mod config;
mod discreteness;
mod graph;
mod split;

use thiserror::Error;

use crate::group::GroupError;
use crate::vk::VkError;

pub use assemble::{
    assemble_curve, assemble_direct, assemble_direct_rooted, free_generator, AssemblyResult, Method, Origin,
    Structure,
};
pub use config::{validate_config, ConfigIssue, Configuration, Edge, Node};
pub use discreteness::{discreteness, DiscretenessVerdict, NodeVerdict, Verdict, VerdictTree};
pub use graph::{
    build_graph, connected, free_rank, spanning_tree, spanning_tree_rooted, GraphEdge, IncidenceGraph,
    SpanningTree, Vertex,
};
pub use split::{assemble_recursive, compute_t_split, order_t, Block};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DevissageError {
    #[error("invalid configuration: {}", .0.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<ConfigIssue>),
    #[error("the incidence graph is not connected")]
    Disconnected,
    #[error("the configuration has no singular locus")]
    NoSingularLocus,
    #[error("block of `{0}` is malformed")]
    BadBlock(String),
    #[error("not a curve-like configuration: {0}")]
    NotCurve(String),
    #[error("unknown root component `{0}`")]
    UnknownRoot(String),
    #[error("no discreteness verdict supplied for `{0}`")]
    MissingVerdict(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Vk(#[from] VkError),
}
