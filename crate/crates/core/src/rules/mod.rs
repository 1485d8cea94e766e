//! Rewriting rules as data: templates, the rule language, matching and reduction.

pub(crate) mod matching;
mod parse;
mod presets;
mod reduce;
mod template;

pub use matching::{instantiate, Binding};
pub use parse::{parse_rule, parse_rules};
pub use presets::{rsa, rsp};
pub use reduce::{one_step_reducts, rewrite_trace, Strategy, Trace};
pub use template::{ActionTempl, ElemTempl, ProcTempl, Rule, RuleSet, Var, VarKind};
