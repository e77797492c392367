//! Reference data shipped with the crate and comparison against computed values.

use std::sync::Arc;

use crate::poly::{PolyError, Polynomial, Rational, RuleSet, VarTable};

pub const APPENDIX0: &str = include_str!("../data/appendix0.txt");
pub const APPENDIX1: &str = include_str!("../data/appendix1.txt");
pub const APPENDIX2: &str = include_str!("../data/appendix2.txt");
pub const E6_BARRED: &str = include_str!("../data/e6_barred.txt");

/// One line `multiplier*name = polynomial`.
#[derive(Debug, Clone)]
pub struct GoldenEntry {
    pub name: String,
    pub multiplier: Rational,
    pub value: Polynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GoldenError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Poly { line: usize, source: PolyError },
}

pub fn parse_golden(text: &str, vars: &Arc<VarTable>) -> Result<Vec<GoldenEntry>, GoldenError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |msg: &str| GoldenError::Malformed { line: i + 1, msg: msg.to_string() };
        let (lhs, rhs) = line.split_once('=').ok_or_else(|| bad("missing `=`"))?;
        let (mult, name) = match lhs.trim().split_once('*') {
            Some((m, n)) => (m.trim().parse::<Rational>().map_err(|_| bad("bad multiplier"))?, n.trim()),
            None => (Rational::one(), lhs.trim()),
        };
        let value = Polynomial::parse(rhs.trim(), vars).map_err(|source| GoldenError::Poly { line: i + 1, source })?;
        out.push(GoldenEntry { name: name.to_string(), multiplier: mult, value });
    }
    Ok(out)
}

/// Result of checking one golden entry.
#[derive(Debug, Clone)]
pub struct EntryCheck {
    pub name: String,
    pub multiplier: Rational,
    pub pass: bool,
    /// `multiplier*computed - golden`, zero on a pass.
    pub difference: Polynomial,
    pub terms: usize,
}

/// Compares `multiplier * computed[name]` with each golden value.
pub fn compare(entries: &[GoldenEntry], computed: &RuleSet) -> Vec<EntryCheck> {
    entries
        .iter()
        .map(|e| {
            let difference = match computed.get(&e.name) {
                Some(p) => &p.scale(&e.multiplier) - &e.value,
                None => e.value.clone(),
            };
            EntryCheck {
                name: e.name.clone(),
                multiplier: e.multiplier.clone(),
                pass: computed.contains_key(&e.name) && difference.is_zero(),
                terms: e.value.len(),
                difference,
            }
        })
        .collect()
}
