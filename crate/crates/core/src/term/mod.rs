//! Names, messages, actions and processes of the metacalculus.

mod name;
mod names;
mod normal;
mod parse;
mod subst;
mod syntax;

pub use name::{BasicName, Name, BULLET, RESERVED};
pub use names::{action_free_names, all_names, fbn, free_names, ibn, nbn, scope_violations, well_scoped, ScopeViolation};
pub use normal::{alpha_eq, congruent, float, reindex_canonical, struct_normalize, Soup};
pub use parse::{parse_action, parse_message, parse_name, parse_process};
pub(crate) use parse::name as parse_name_at;
pub use subst::{apply_subst, fresh_name, rename, splice, subst_action, subst_message, Subst};
pub use syntax::{Action, Element, Message, Process};
