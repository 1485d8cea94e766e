//! Shape graphs: labels, process matching, sampling and export.

mod export;
mod graph;
mod iso;
mod matching;
mod sample;
mod types;

pub use export::{from_json, to_dot, to_json, to_json_value, GraphFormatError};
pub use graph::{Edge, NodeId, ShapeGraph, ShapePredicate};
pub use matching::{matches, matches_at};
pub use sample::meaning_sample;
pub use types::{parse_action_type, ActionType, ElementType, FormType, MessageType, TypeSubst};
