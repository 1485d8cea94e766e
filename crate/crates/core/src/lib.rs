//! A generic process metacalculus with rewriting rules given as data, and
//! polymorphic shape types inferred for any calculus it can express.

pub mod lex;
pub mod term;

pub use lex::ParseError;
pub mod rules;
pub mod shape;
pub mod infer;
pub mod calculi;
pub mod typecheck;
pub mod cli;
