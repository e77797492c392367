//! Preferred versal form coefficients for E6, E7 and E8 as polynomials in the
//! elementary symmetric functions `s_i`.

mod gens;
pub mod sextic;
mod types;

pub use gens::{good_gens_bar, jacobian, GoodGenSet};
pub use types::{EType, ParseETypeError};

use std::sync::Arc;

use crate::cache::Cache;
use crate::poly::{Polynomial, RuleSet, VarTable};
use crate::solvelist::{apply_to_rules, compose, SolveError, SolveList, SolvePair};

const EXTENSIONS: &str = include_str!("../../data/barred_extensions.txt");

fn is_symmetric_var(name: &str) -> bool {
    name.strip_prefix('s').is_some_and(|r| !r.is_empty() && r.bytes().all(|b| b.is_ascii_digit()))
}

/// Sets every `s_i` to zero.
pub fn reduce_mod_m(p: &Polynomial) -> Polynomial {
    let vars = p.vars();
    p.filter_terms(|m, _| m.iter().all(|(v, _)| !is_symmetric_var(vars.name(v))))
}

fn parse(text: &str, t: &Arc<VarTable>) -> Polynomial {
    Polynomial::parse(text, t).expect("built-in text parses")
}

fn pairs(list: &[(&[(&str, u32)], &str)]) -> Vec<SolvePair> {
    list.iter().map(|(m, v)| SolvePair::new(m, v)).collect()
}

fn zero_z(t: &Arc<VarTable>) -> RuleSet {
    let mut r = RuleSet::new();
    r.insert("z".into(), Polynomial::zero(t));
    r
}

/// Barred defining polynomial with undetermined coefficients.
pub fn barred_template(t: EType) -> Polynomial {
    let text = match t {
        EType::E6 => {
            "-Xb^2*Wb - Xb*Zb^2 + Yb^3 + phib1*Yb^2*Zb + phib2*Xb*Yb*Wb + epsb2*Yb*Zb^2 + phib3p*Xb*Zb*Wb \
             + phib3pp*Zb^3 + phib4*Yb^2*Wb + epsb5*Yb*Zb*Wb + phib6*Xb*Wb^2 + epsb6*Zb^2*Wb + epsb8*Yb*Wb^2 \
             + epsb9*Zb*Wb^2 + epsb12*Wb^3"
        }
        EType::E7 => {
            "-Xb^2 - Yb^3*Wb + 16*Yb*Zb^3 + epsb2*Yb^2*Zb*Wb + phib2*(16*Zb^4 - Yb^2*Zb*Wb) + phib4*Yb*Zb^2*Wb \
             + epsb6*Yb^2*Wb^2 + phib6*(16*Zb^3*Wb - Yb^2*Wb^2) + epsb8*Yb*Zb*Wb^2 + epsb10*Zb^2*Wb^2 \
             + epsb12*Yb*Wb^3 + epsb14*Zb*Wb^3 + epsb18*Wb^4"
        }
        EType::E8 => {
            "-Xb^2 + Yb^3 - Zb^5*Wb + epsb2*Yb*Zb^3*Wb + phib4*Yb^2*Zb*Wb + phib6*Zb^4*Wb^2 + epsb8*Yb*Zb^2*Wb^2 \
             + phib10*Yb^2*Wb^2 + epsb12*Zb^3*Wb^3 + epsb14*Yb*Zb*Wb^3 + epsb18*Zb^2*Wb^4 + epsb20*Yb*Wb^4 \
             + epsb24*Zb*Wb^5 + epsb30*Wb^6"
        }
    };
    parse(text, &t.table())
}

/// Preferred versal form with undetermined coefficients `eps_i`.
pub fn versal_template(t: EType) -> Polynomial {
    let text = match t {
        EType::E6 => {
            "-X^2*W - X*Z^2 + Y^3 + eps2*Y*Z^2 + eps5*Y*Z*W + eps6*Z^2*W + eps8*Y*W^2 + eps9*Z*W^2 + eps12*W^3"
        }
        EType::E7 => {
            "-X^2 - Y^3*W + 16*Y*Z^3 + eps2*Y^2*Z*W + eps6*Y^2*W^2 + eps8*Y*Z*W^2 + eps10*Z^2*W^2 \
             + eps12*Y*W^3 + eps14*Z*W^3 + eps18*W^4"
        }
        EType::E8 => {
            "-X^2 + Y^3 - Z^5*W + eps2*Y*Z^3*W + eps8*Y*Z^2*W^2 + eps12*Z^3*W^3 + eps14*Y*Z*W^3 \
             + eps18*Z^2*W^4 + eps20*Y*W^4 + eps24*Z*W^5 + eps30*W^6"
        }
    };
    parse(text, &t.table())
}

/// The change of generators `Xb, Yb, Zb, Wb` in terms of `X, Y, Z, W`.
pub fn mu_rules(t: EType) -> RuleSet {
    let tab = t.table();
    let rows: [(&str, &str); 4] = match t {
        EType::E6 => [
            ("Xb", "X + psi2*Y + psi3p*Z + psi6*W"),
            ("Yb", "Y + psi1*Z + psi4*W"),
            ("Zb", "Z + psi3pp*W"),
            ("Wb", "W"),
        ],
        EType::E7 => [("Xb", "X"), ("Yb", "Y + psi2*Z + psi6*W"), ("Zb", "Z + psi4*W"), ("Wb", "W")],
        EType::E8 => [("Xb", "X"), ("Yb", "Y + psi4*Z*W + psi10*W^2"), ("Zb", "Z + psi6*W"), ("Wb", "W")],
    };
    rows.iter().map(|(v, p)| (v.to_string(), parse(p, &tab))).collect()
}

/// Inverse of [`mu_rules`], solved in the order `W, Z, Y, X`.
pub fn mu_inverse(t: EType) -> RuleSet {
    let tab = t.table();
    let mu = mu_rules(t);
    let mut inv = RuleSet::new();
    for v in ["W", "Z", "Y", "X"] {
        let bar = format!("{v}b");
        let var = Polynomial::var(&tab, v).expect("generator");
        let tail = &mu[&bar] - &var;
        let expr = &Polynomial::var(&tab, &bar).expect("barred generator") - &tail.substitute(&inv);
        inv.insert(v.to_string(), expr);
    }
    let mut out = RuleSet::new();
    for v in ["X", "Y", "Z", "W"] {
        out.insert(v.to_string(), inv[v].clone());
    }
    out
}

/// The map `Xb, Yb, Zb, Wb` as polynomials in `x, y, z` over the `s_i`.
pub fn barred_map(t: EType) -> RuleSet {
    let g = good_gens_bar(t);
    ["Xb", "Yb", "Zb", "Wb"].iter().zip(g.as_array()).map(|(v, p)| (v.to_string(), p.clone())).collect()
}

fn low_weight_barred_pairs(t: EType) -> Vec<SolvePair> {
    match t {
        EType::E6 => pairs(&[
            (&[("x", 2), ("y", 6), ("z", 1)], "phib1"),
            (&[("x", 4), ("y", 5)], "phib2"),
            (&[("x", 1), ("y", 6), ("z", 2)], "epsb2"),
            (&[("x", 3), ("y", 5), ("z", 1)], "phib3p"),
            (&[("y", 6), ("z", 3)], "phib3pp"),
            (&[("x", 5), ("y", 4)], "phib4"),
            (&[("x", 4), ("y", 4), ("z", 1)], "epsb5"),
            (&[("x", 6), ("y", 3)], "phib6"),
            (&[("x", 3), ("y", 4), ("z", 2)], "epsb6"),
        ]),
        EType::E7 => pairs(&[
            (&[("x", 4), ("y", 8)], "epsb2"),
            (&[("x", 1), ("y", 9), ("z", 2)], "phib2"),
            (&[("x", 5), ("y", 7)], "phib4"),
            (&[("x", 6), ("y", 6)], "epsb6"),
            (&[("x", 3), ("y", 7), ("z", 2)], "phib6"),
        ]),
        EType::E8 => pairs(&[
            (&[("x", 4), ("y", 14)], "epsb2"),
            (&[("x", 5), ("y", 13)], "phib4"),
            (&[("x", 6), ("y", 12)], "phib6"),
            (&[("x", 7), ("y", 11)], "epsb8"),
            (&[("x", 8), ("y", 10)], "phib10"),
        ]),
    }
}

/// Pairs appended to the low-weight barred list, read from the data file.
pub fn barred_extension_pairs(t: EType) -> Vec<SolvePair> {
    let mut out = Vec::new();
    for line in EXTENSIONS.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 3 || f[0] != t.to_string() {
            continue;
        }
        let mono: Vec<(String, u32)> = f[1]
            .split('*')
            .map(|p| match p.split_once('^') {
                Some((v, e)) => (v.to_string(), e.parse().expect("exponent")),
                None => (p.to_string(), 1),
            })
            .collect();
        out.push(SolvePair { monomial: mono, unknown: f[2].to_string() });
    }
    out
}

/// Solve-list for the barred coefficients. With `extended` the list covers
/// every coefficient of the barred polynomial, otherwise only the low-weight
/// ones needed downstream.
pub fn bar_coeff_list(t: EType, extended: bool) -> SolveList {
    let mut p = low_weight_barred_pairs(t);
    if extended {
        p.extend(barred_extension_pairs(t));
    }
    let mut base = barred_map(t);
    let over: &[&str] = if t == EType::E8 { &["x", "y"] } else { &["x", "y", "z"] };
    if t == EType::E8 {
        base = apply_to_rules(&base, &zero_z(&t.table()));
    }
    SolveList::new(base, barred_template(t), p, over)
}

/// Solve-list for the change of generators.
pub fn psi_list(t: EType) -> SolveList {
    let p = match t {
        EType::E6 => pairs(&[
            (&[("Y", 2), ("Z", 1)], "psi1"),
            (&[("X", 1), ("Y", 1), ("W", 1)], "psi2"),
            (&[("Z", 3)], "psi3p"),
            (&[("X", 1), ("Z", 1), ("W", 1)], "psi3pp"),
            (&[("Y", 2), ("W", 1)], "psi4"),
            (&[("X", 1), ("W", 2)], "psi6"),
        ]),
        EType::E7 => {
            pairs(&[(&[("Z", 4)], "psi2"), (&[("Y", 1), ("Z", 2), ("W", 1)], "psi4"), (&[("Z", 3), ("W", 1)], "psi6")])
        }
        EType::E8 => pairs(&[
            (&[("Y", 2), ("Z", 1), ("W", 1)], "psi4"),
            (&[("Z", 4), ("W", 2)], "psi6"),
            (&[("Y", 2), ("W", 2)], "psi10"),
        ]),
    };
    SolveList::new(mu_rules(t), barred_template(t), p, &["X", "Y", "Z", "W"])
}

fn versal_pairs(t: EType) -> Vec<SolvePair> {
    match t {
        EType::E6 => pairs(&[
            (&[("x", 1), ("y", 6), ("z", 2)], "eps2"),
            (&[("x", 4), ("y", 4), ("z", 1)], "eps5"),
            (&[("x", 3), ("y", 4), ("z", 2)], "eps6"),
            (&[("x", 7), ("y", 2)], "eps8"),
            (&[("x", 6), ("y", 2), ("z", 1)], "eps9"),
            (&[("x", 6), ("y", 1), ("z", 2)], "eps12"),
        ]),
        EType::E7 => pairs(&[
            (&[("x", 4), ("y", 8)], "eps2"),
            (&[("x", 6), ("y", 6)], "eps6"),
            (&[("x", 7), ("y", 5)], "eps8"),
            (&[("x", 8), ("y", 4)], "eps10"),
            (&[("x", 9), ("y", 3)], "eps12"),
            (&[("x", 10), ("y", 2)], "eps14"),
            (&[("x", 12)], "eps18"),
        ]),
        EType::E8 => pairs(&[
            (&[("x", 4), ("y", 14)], "eps2"),
            (&[("x", 7), ("y", 11)], "eps8"),
            (&[("x", 9), ("y", 9)], "eps12"),
            (&[("x", 10), ("y", 8)], "eps14"),
            (&[("x", 12), ("y", 6)], "eps18"),
            (&[("x", 13), ("y", 5)], "eps20"),
            (&[("x", 15), ("y", 3)], "eps24"),
            (&[("x", 18)], "eps30"),
        ]),
    }
}

/// Intermediate rule sets of the pipeline.
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub etype: EType,
    /// Low-weight barred coefficients in terms of the `s_i`.
    pub nu: RuleSet,
    /// Change-of-generator coefficients in terms of barred coefficients.
    pub psi: RuleSet,
    /// `X, Y, Z, W` as polynomials in `x, y, z` (with `z = 0` for E7 and E8).
    pub pi: RuleSet,
}

impl Pipeline {
    pub fn build(t: EType, cache: Option<&Cache>) -> Result<Self, SolveError> {
        let nu = bar_coeff_list(t, false).expand_cached(cache)?;
        Self::assemble(t, nu, barred_map(t), cache)
    }

    /// The pipeline over a parameter space: every `s_i` is replaced by
    /// `param[s_i]` in the base rules before any solving happens.
    pub fn pulled_back(t: EType, param: &RuleSet, cache: Option<&Cache>) -> Result<Self, SolveError> {
        let nu = bar_coeff_list(t, false).pull_back(param).expand_cached(cache)?;
        Self::assemble(t, nu, apply_to_rules(&barred_map(t), param), cache)
    }

    fn assemble(t: EType, nu: RuleSet, mut bar: RuleSet, cache: Option<&Cache>) -> Result<Self, SolveError> {
        let psi = psi_list(t).expand_cached(cache)?;
        if t != EType::E6 {
            bar = apply_to_rules(&bar, &zero_z(&t.table()));
        }
        let pi = compose(&nu, &compose(&psi, &compose(&bar, &mu_inverse(t))));
        let pi = pi.into_iter().filter(|(v, _)| ["X", "Y", "Z", "W"].contains(&v.as_str())).collect();
        Ok(Pipeline { etype: t, nu, psi, pi })
    }

    /// Final solve-list: versal template over the composed map.
    pub fn versal_list(&self) -> SolveList {
        let over: &[&str] = if self.etype == EType::E6 { &["x", "y", "z"] } else { &["x", "y"] };
        SolveList::new(self.pi.clone(), versal_template(self.etype), versal_pairs(self.etype), over)
    }

    pub fn versal_coeffs(&self, cache: Option<&Cache>) -> Result<RuleSet, SolveError> {
        self.versal_list().expand_cached(cache)
    }

    /// Solves the versal list only up to and including `name`.
    pub fn versal_coeff(&self, name: &str) -> Result<Polynomial, SolveError> {
        let pairs = versal_pairs(self.etype);
        let k = pairs.iter().position(|p| p.unknown == name).ok_or_else(|| SolveError::ValidityViolation {
            index: pairs.len(),
            unknown: name.to_string(),
            reason: format!("not a versal coefficient of {}", self.etype),
        })?;
        let mut rules = self.versal_list().expand_prefix(k + 1)?;
        Ok(rules.swap_remove(name).expect("solved"))
    }
}

/// The `eps_i` of `t` as polynomials in `s_1, ..., s_n`.
pub fn versal_coeffs(t: EType, cache: Option<&Cache>) -> Result<RuleSet, SolveError> {
    Pipeline::build(t, cache)?.versal_coeffs(cache)
}

/// Value of the versal polynomial, with coefficients `eps`, at the image of
/// the point `(x, y, z)` over the parameter point `s`. Computed numerically
/// through every stage of the pipeline with `z` kept, so a zero here checks
/// the `z = 0` shortcut as well as the solved coefficients.
pub fn pi_residual_at(
    p: &Pipeline,
    eps: &RuleSet,
    s: &[crate::poly::Rational],
    xyz: [crate::poly::Rational; 3],
) -> Result<crate::poly::Rational, crate::poly::PolyError> {
    use crate::poly::Rational;
    use rustc_hash::FxHashMap;
    let t = p.etype;
    let mut vals: FxHashMap<String, Rational> = FxHashMap::default();
    for (i, v) in s.iter().enumerate() {
        vals.insert(format!("s{}", i + 1), v.clone());
    }
    for (n, v) in ["x", "y", "z"].iter().zip(xyz) {
        vals.insert(n.to_string(), v);
    }
    for (n, r) in &p.nu {
        let v = r.eval(&vals)?;
        vals.insert(n.clone(), v);
    }
    for (n, r) in &p.psi {
        let v = r.eval(&vals)?;
        vals.insert(n.clone(), v);
    }
    for (n, r) in &barred_map(t) {
        let v = r.eval(&vals)?;
        vals.insert(n.clone(), v);
    }
    for (n, r) in &mu_inverse(t) {
        let v = r.eval(&vals)?;
        vals.insert(n.clone(), v);
    }
    for (n, r) in eps {
        let v = r.eval(&vals)?;
        vals.insert(n.clone(), v);
    }
    versal_template(t).eval(&vals)
}
