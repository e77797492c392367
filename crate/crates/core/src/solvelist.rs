//! Rule sets given by a base substitution, a template polynomial and an
//! ordered list of `(monomial, unknown)` pairs.

use sha2::{Digest, Sha256};
use std::fmt::Write as _;

use crate::cache::Cache;
pub use crate::poly::RuleSet;
use crate::poly::{PolyError, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("pair {index} (`{unknown}`): {reason}")]
    ValidityViolation { index: usize, unknown: String, reason: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// One entry of a solve-list: the coefficient of `monomial` determines `unknown`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolvePair {
    pub monomial: Vec<(String, u32)>,
    pub unknown: String,
}

impl SolvePair {
    pub fn new(monomial: &[(&str, u32)], unknown: &str) -> Self {
        SolvePair {
            monomial: monomial.iter().map(|(n, e)| (n.to_string(), *e)).collect(),
            unknown: unknown.to_string(),
        }
    }

    fn monomial_text(&self) -> String {
        if self.monomial.is_empty() {
            return "1".into();
        }
        self.monomial
            .iter()
            .map(|(n, e)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect::<Vec<_>>()
            .join("*")
    }
}

#[derive(Debug, Clone)]
pub struct SolveList {
    pub base: RuleSet,
    pub template: Polynomial,
    pub pairs: Vec<SolvePair>,
    /// Variables the pair monomials live in (the coefficient extraction subset).
    pub over: Vec<String>,
}

/// Outcome of an expansion: the solved rules and the working polynomial left
/// after eliminating every solved unknown.
#[derive(Debug, Clone)]
pub struct Expansion {
    pub rules: RuleSet,
    pub residual: Polynomial,
}

impl SolveList {
    pub fn new(base: RuleSet, template: Polynomial, pairs: Vec<SolvePair>, over: &[&str]) -> Self {
        SolveList { base, template, pairs, over: over.iter().map(|s| s.to_string()).collect() }
    }

    pub fn expand(&self) -> Result<RuleSet, SolveError> {
        self.expand_prefix(self.pairs.len())
    }

    /// Solves only the first `k` pairs. Each coefficient is extracted by a
    /// substitution capped at the pair's monomial, so the fully substituted
    /// template is never formed.
    pub fn expand_prefix(&self, k: usize) -> Result<RuleSet, SolveError> {
        let mut rules = RuleSet::new();
        for index in 0..k.min(self.pairs.len()) {
            let raw = self.raw_coefficient(index)?;
            let c = if rules.is_empty() { raw } else { raw.try_substitute(&rules)? };
            let pair = &self.pairs[index];
            let sol = c.solve_linear(&pair.unknown).map_err(|e| SolveError::ValidityViolation {
                index,
                unknown: pair.unknown.clone(),
                reason: e.to_string(),
            })?;
            rules.insert(pair.unknown.clone(), sol);
        }
        Ok(rules)
    }

    /// The coefficient `c_i` before earlier unknowns are eliminated; it must
    /// not mention any later unknown.
    pub fn raw_coefficient(&self, index: usize) -> Result<Polynomial, SolveError> {
        let pair = &self.pairs[index];
        let caps: Vec<(&str, u32)> = self
            .over
            .iter()
            .map(|v| {
                let e = pair.monomial.iter().find(|(n, _)| n == v).map_or(0, |(_, e)| *e);
                (v.as_str(), e)
            })
            .collect();
        let sub = self.template.substitute_capped(&self.base, &caps)?;
        let over: Vec<&str> = self.over.iter().map(String::as_str).collect();
        let c = sub.coeff_of(&pair.monomial.iter().map(|(n, e)| (n.as_str(), *e)).collect::<Vec<_>>(), &over)?;
        if let Some(later) = self.pairs[index + 1..].iter().find(|p| c.contains_var(&p.unknown)) {
            return Err(SolveError::ValidityViolation {
                index,
                unknown: pair.unknown.clone(),
                reason: format!(
                    "coefficient of {} involves the later unknown `{}`",
                    pair.monomial_text(),
                    later.unknown
                ),
            });
        }
        Ok(c)
    }

    /// Expansion by incremental elimination on the fully substituted template.
    /// Returns the rules and what is left of the template afterwards.
    pub fn expand_incremental(&self, k: usize) -> Result<Expansion, SolveError> {
        let work = self.template.try_substitute(&self.base)?;
        self.expand_from(work, k)
    }

    /// Incremental elimination starting from an already substituted template.
    pub fn expand_from(&self, mut work: Polynomial, k: usize) -> Result<Expansion, SolveError> {
        let over: Vec<&str> = self.over.iter().map(String::as_str).collect();
        let mut rules = RuleSet::new();
        for (index, pair) in self.pairs.iter().take(k).enumerate() {
            let violation =
                |reason: String| SolveError::ValidityViolation { index, unknown: pair.unknown.clone(), reason };
            let mono: Vec<(&str, u32)> = pair.monomial.iter().map(|(n, e)| (n.as_str(), *e)).collect();
            let c = work.coeff_of(&mono, &over)?;
            if let Some(later) = self.pairs[index + 1..].iter().find(|p| c.contains_var(&p.unknown)) {
                return Err(violation(format!(
                    "coefficient of {} involves the later unknown `{}`",
                    pair.monomial_text(),
                    later.unknown
                )));
            }
            let sol = c.solve_linear(&pair.unknown).map_err(|e| violation(e.to_string()))?;
            work = work.substitute_one(&pair.unknown, &sol);
            rules.insert(pair.unknown.clone(), sol);
        }
        Ok(Expansion { rules, residual: work })
    }

    /// Rewrites base right-hand sides and template by `param`.
    pub fn pull_back(&self, param: &RuleSet) -> SolveList {
        SolveList {
            base: self.base.iter().map(|(v, p)| (v.clone(), p.substitute(param))).collect(),
            template: self.template.substitute(param),
            pairs: self.pairs.clone(),
            over: self.over.clone(),
        }
    }

    /// Canonical text used for content addressing.
    pub fn canonical_text(&self) -> String {
        let mut s = String::new();
        let t = self.template.vars();
        let _ = writeln!(s, "template-vars {}", table_text(t));
        let _ = writeln!(s, "template {}", self.template);
        for (v, p) in &self.base {
            let _ = writeln!(s, "base {v} [{}] = {}", table_text(p.vars()), p);
        }
        for p in &self.pairs {
            let _ = writeln!(s, "pair {} -> {}", p.monomial_text(), p.unknown);
        }
        let _ = writeln!(s, "over {}", self.over.join(","));
        s
    }

    pub fn content_hash(&self) -> String {
        hex_digest(self.canonical_text().as_bytes())
    }

    /// Expands through the cache when one is given.
    pub fn expand_cached(&self, cache: Option<&Cache>) -> Result<RuleSet, SolveError> {
        let Some(cache) = cache else {
            return self.expand();
        };
        let key = self.content_hash();
        if let Some(r) = cache.load(&key) {
            return Ok(r);
        }
        let r = self.expand()?;
        cache.store(&key, &r);
        Ok(r)
    }
}

pub(crate) fn table_text(t: &crate::poly::VarTable) -> String {
    (0..t.len()).map(|i| format!("{}:{}", t.name(i), t.weight(i))).collect::<Vec<_>>().join(",")
}

pub(crate) fn hex_digest(bytes: &[u8]) -> String {
    let d = Sha256::digest(bytes);
    d.iter().map(|b| format!("{b:02x}")).collect()
}

/// Rules equivalent to applying `inner` first and then `outer`.
pub fn compose(outer: &RuleSet, inner: &RuleSet) -> RuleSet {
    let mut out: RuleSet = inner.iter().map(|(v, p)| (v.clone(), p.substitute(outer))).collect();
    for (v, p) in outer {
        if !out.contains_key(v) {
            out.insert(v.clone(), p.clone());
        }
    }
    out
}

/// Applies `rules` to every right-hand side of `target`.
pub fn apply_to_rules(target: &RuleSet, rules: &RuleSet) -> RuleSet {
    target.iter().map(|(v, p)| (v.clone(), p.substitute(rules))).collect()
}
