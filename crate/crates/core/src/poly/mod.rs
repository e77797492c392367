//! Exact sparse multivariate polynomials over the rationals.

mod json;
mod monomial;
mod parse;
mod polynomial;
mod rational;
mod vars;

pub use monomial::Monomial;
pub use parse::parse_polynomial;
pub use polynomial::{Homogeneity, Polynomial, RuleSet};
pub use rational::{ParseRationalError, Rational};
pub use vars::VarTable;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("variable `{name}` has weight {left} in one table and {right} in the other")]
    WeightConflict { name: String, left: u32, right: u32 },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` listed twice")]
    DuplicateVariable(String),
    #[error("variable table is full")]
    TooManyVariables,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("`{0}` does not occur linearly with a constant coefficient")]
    NonLinear(String),
    #[error("`{0}` does not occur")]
    Absent(String),
    #[error("monomial variable `{0}` is outside the coefficient subset")]
    NotInSubset(String),
    #[error("leading coefficient in `{0}` is not a nonzero constant")]
    NonConstantLeading(String),
}

/// Builds a table from `(name, weight)` pairs, panicking on duplicates.
/// Intended for fixed internal tables.
pub fn table(vars: &[(&str, u32)]) -> std::sync::Arc<VarTable> {
    VarTable::new(vars).expect("static variable table")
}
