//! Surface calculi and their translations into the metacalculus.

pub mod ma;
pub mod pi;
pub mod reference;
pub mod safety;

pub use ma::{
    cabenc, cabname, encode_ma, ma_scope_violations, ma_subst, ma_well_scoped, parse_env, parse_ex_type, parse_ma, parse_msg_type, Cap,
    EncodedMa, ExType, MaProcess, MaScopeViolation, MsgType,
};
pub use pi::{encode_pi, parse_pi, pi_fbn, pi_subst, pi_well_scoped, PiProcess};
pub use reference::{ma_reducts, pi_reducts};
pub use safety::{ma_safety, pi_safety, Finding, FindingKind, SafetyError, SafetyVerdict};
