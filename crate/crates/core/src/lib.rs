//! Exact structure-constant computations for Hom-associative, Hom-Leibniz and
//! Hom-Leibniz Poisson algebras: axiom checkers, representations, matched pairs,
//! relative Rota-Baxter and Nijenhuis operators, a small constraint solver, and a
//! text format with a command-line front end.

pub mod error;
pub mod exactla;
pub mod fixtures;
pub mod homcore;
pub mod homio;
pub mod homrep;
pub mod matched;
pub mod rbops;
pub mod rbosolve;
pub mod report;

pub use error::{Error, ParseError, Result};
