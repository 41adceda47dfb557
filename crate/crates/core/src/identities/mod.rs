//! Identity expressions, their evaluation and verification.

pub mod ast;
pub mod eval;
pub mod catalog;
pub mod verify;
pub mod crosscheck;
