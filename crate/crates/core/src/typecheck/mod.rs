//! The reference type systems for the two calculi and their embeddings into shape types.

mod tma;
mod tpi;
mod unify;

pub use tma::{extract_envs, tma_check, tma_decide, tma_typable, typenc, AEnvironment, TmaError, TypeInfo};
pub use tpi::{
    agrees, chtypes, distinct_binders, parse_pi_context, parse_pi_type, tpi_check, tpi_decide, tpi_infer, tpi_typable, PiContext, PiType,
};
