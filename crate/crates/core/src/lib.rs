//! A self-contained normalization engine for a small cubical type theory,
//! with a synthetic-homotopy standard library and benchmark CLI.

pub mod interval;
pub mod syntax;
pub mod sexpr;
