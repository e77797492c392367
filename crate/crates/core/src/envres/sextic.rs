//! The weight-16 sextic completing the E8 good generating set.
//!
//! Conditions imposed on a general sextic `F` with `F = x*y^5 mod m`:
//! `F(U, U^3, 1) = Psi(U)^2` and `Psi(U) | F_x(U, U^3, 1)`, where
//! `Psi(U) = U^8 - s1*U^7 + ... + s8`. The coefficients of `x^3*y^3` and `x^6`
//! are then set to zero.

use rustc_hash::FxHashMap;
use std::sync::Arc;

use crate::combinat::partitions;
use crate::linalg::{LinalgError, LinearSystem};
use crate::poly::{Monomial, Polynomial, Rational, RuleSet, VarTable};

/// Outcome of the sextic solve.
#[derive(Debug, Clone)]
pub struct SexticReport {
    pub unknowns: usize,
    /// Rank and nullity of the system from the two base conditions alone.
    pub base_rank: usize,
    pub base_nullity: usize,
    /// Rank and nullity after zeroing the `x^3*y^3` and `x^6` coefficients.
    pub rank: usize,
    pub nullity: usize,
    /// The solution with free unknowns set to zero.
    pub sextic: Polynomial,
}

/// Monic polynomial in `U` whose roots are the `t_i`: `U^n - s1*U^(n-1) + ... + (-1)^n*s_n`.
pub fn root_polynomial(vars: &Arc<VarTable>, n: usize) -> Polynomial {
    let u = vars.index_of("U").expect("U in table");
    let mut terms = vec![(Monomial::from_pairs([(u, n as u32)]), Rational::one())];
    for i in 1..=n {
        let s = vars.index_of(&format!("s{i}")).expect("s_i in table");
        let sign = if i % 2 == 0 { 1 } else { -1 };
        terms.push((Monomial::from_pairs([(u, (n - i) as u32), (s, 1)]), Rational::from_int(sign)));
    }
    Polynomial::from_terms(vars, terms)
}

pub fn solve_sextic() -> Result<SexticReport, LinalgError> {
    let mut shapes: Vec<(u32, u32, u32, Vec<Vec<u32>>)> = Vec::new();
    for a in 0..=6u32 {
        for b in 0..=6 - a {
            if a + 3 * b <= 16 {
                shapes.push((a, b, 6 - a - b, partitions(16 - a - 3 * b, 8)));
            }
        }
    }
    let count: usize = shapes.iter().map(|s| s.3.len()).sum();
    let mut names: Vec<(String, u32)> = vec![("x".into(), 1), ("y".into(), 3), ("z".into(), 0), ("U".into(), 1)];
    names.extend((1..=8).map(|i| (format!("s{i}"), i)));
    names.extend((0..count).map(|k| (format!("u{k}"), 0)));
    let tab = VarTable::new(&names).expect("distinct names");
    let (x, y, z) = (0usize, 1usize, 2usize);
    let s0 = 4usize;
    let u0 = s0 + 8;

    let mut terms = Vec::with_capacity(count);
    let mut zeroed = Vec::new();
    let mut k = 0;
    for (a, b, c, parts) in &shapes {
        for p in parts {
            let mut m = vec![(x, *a), (y, *b), (z, *c), (u0 + k, 1)];
            m.extend(p.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, e)| (s0 + i, *e)));
            terms.push((Monomial::from_pairs(m.into_iter().filter(|(_, e)| *e > 0)), Rational::one()));
            if (*a, *b) == (3, 3) || (*a, *b, *c) == (6, 0, 0) {
                zeroed.push(k);
            }
            k += 1;
        }
    }
    let f = Polynomial::from_terms(&tab, terms);
    let uvar = Polynomial::var(&tab, "U").expect("U");
    let mut eta = RuleSet::new();
    eta.insert("x".into(), uvar.clone());
    eta.insert("y".into(), uvar.pow(3));
    eta.insert("z".into(), Polynomial::one(&tab));
    let psi = root_polynomial(&tab, 8);

    let cond1 = &f.substitute(&eta) - &psi.pow(2);
    let (_, cond2) = f.derivative("x").substitute(&eta).div_rem_in(&psi, "U").expect("monic divisor");

    let unknowns: FxHashMap<String, usize> = (0..count).map(|k| (format!("u{k}"), k)).collect();
    let mut sys = LinearSystem::new(count);
    sys.push_polynomial(&cond1, &unknowns)?;
    sys.push_polynomial(&cond2, &unknowns)?;
    let base = sys.solve()?;
    for k in &zeroed {
        sys.push(vec![(*k, Rational::one())], Rational::zero());
    }
    let sol = sys.solve()?;

    let mut values = RuleSet::new();
    for (k, v) in sol.values.iter().enumerate() {
        values.insert(format!("u{k}"), Polynomial::constant(&tab, v.clone()));
    }
    let sextic = f.substitute(&values);
    let keep: Vec<(String, u32)> = names[..u0].to_vec();
    let small = VarTable::new(&keep).expect("distinct names");
    Ok(SexticReport {
        unknowns: count,
        base_rank: base.rank,
        base_nullity: base.nullity(),
        rank: sol.rank,
        nullity: sol.nullity(),
        sextic: sextic.embed_support(&small).expect("solution free of unknowns"),
    })
}
