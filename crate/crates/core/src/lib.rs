//! Negative translations between intuitionistic, classical and linear logic,
//! with a proof search engine and finite countermodels for checking them.

pub mod cli;
pub mod formula;
pub mod gen;
pub mod models;
pub mod prover;
pub mod rewrite;
pub mod selftest;
pub mod syntax;
pub mod xlate;
