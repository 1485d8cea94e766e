//! Shape type inference and the closure check.

mod closure;
mod saturate;
mod sym;

use thiserror::Error;

use crate::term::ScopeViolation;

pub use closure::{active_nodes_of as active_nodes, closure_violations, is_type, ClosureViolation};
pub use saturate::{infer_principal, seed_graph};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum InferError {
    #[error("process is not well scoped: {0:?}")]
    NotWellScoped(Vec<ScopeViolation>),
    #[error("inference exceeded {0} nodes")]
    Diverged(usize),
}
