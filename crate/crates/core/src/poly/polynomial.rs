use indexmap::IndexMap;
use rustc_hash::{FxHashMap, FxHashSet};
use std::borrow::Cow;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{Monomial, PolyError, Rational, VarTable};

type Acc = FxHashMap<Monomial, Rational>;

/// Simultaneous substitution rules `variable -> polynomial`, kept in insertion order.
pub type RuleSet = IndexMap<String, Polynomial>;

/// Sparse polynomial over the rationals. Terms are kept sorted in descending
/// graded-lex order with no zero coefficients, so equality is structural.
#[derive(Clone)]
pub struct Polynomial {
    vars: Arc<VarTable>,
    terms: Vec<(Monomial, Rational)>,
}

/// Result of a weighted homogeneity test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Weight(u64),
    Mixed,
}

fn sort_terms(terms: &mut [(Monomial, Rational)]) {
    terms.sort_unstable_by(|a, b| b.0.cmp_grlex(&a.0));
}

fn acc_add(acc: &mut Acc, m: Monomial, c: Rational) {
    use std::collections::hash_map::Entry;
    match acc.entry(m) {
        Entry::Occupied(mut e) => {
            let v = e.get_mut();
            *v += &c;
            if v.is_zero() {
                e.remove();
            }
        }
        Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c);
            }
        }
    }
}

fn mul_into(acc: &mut Acc, a: &[(Monomial, Rational)], b: &[(Monomial, Rational)], scale: &Rational) {
    let (outer, inner) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    acc.reserve(inner.len());
    for (ma, ca) in outer {
        let ca = ca * scale;
        for (mb, cb) in inner {
            acc_add(acc, ma.mul(mb), &ca * cb);
        }
    }
}

impl Polynomial {
    pub fn zero(vars: &Arc<VarTable>) -> Self {
        Polynomial { vars: vars.clone(), terms: Vec::new() }
    }

    pub fn one(vars: &Arc<VarTable>) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: &Arc<VarTable>, c: Rational) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(Monomial::one(), c)] };
        Polynomial { vars: vars.clone(), terms }
    }

    pub fn int(vars: &Arc<VarTable>, n: i64) -> Self {
        Self::constant(vars, Rational::from_int(n))
    }

    pub fn var(vars: &Arc<VarTable>, name: &str) -> Result<Self, PolyError> {
        let i = vars.index_of(name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Polynomial { vars: vars.clone(), terms: vec![(Monomial::var(i), Rational::one())] })
    }

    /// `c * prod name^exp`.
    pub fn term(vars: &Arc<VarTable>, c: Rational, factors: &[(&str, u32)]) -> Result<Self, PolyError> {
        let mut pairs = Vec::new();
        for (n, e) in factors {
            let i = vars.index_of(n).ok_or_else(|| PolyError::UnknownVariable(n.to_string()))?;
            pairs.push((i, *e));
        }
        Ok(Self::from_terms(vars, [(Monomial::from_pairs(pairs), c)]))
    }

    pub fn from_terms(vars: &Arc<VarTable>, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut acc = Acc::default();
        for (m, c) in terms {
            acc_add(&mut acc, m, c);
        }
        Self::from_acc(vars, acc)
    }

    fn from_acc(vars: &Arc<VarTable>, acc: Acc) -> Self {
        let mut terms: Vec<_> = acc.into_iter().collect();
        sort_terms(&mut terms);
        Polynomial { vars: vars.clone(), terms }
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Same as [`is_zero`](Self::is_zero).
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.iter().find(|(m, _)| m.is_one()).map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    /// Re-expresses the polynomial over a table that contains all of its variables.
    pub fn embed(&self, table: &Arc<VarTable>) -> Result<Self, PolyError> {
        if Arc::ptr_eq(&self.vars, table) || *self.vars == **table {
            return Ok(Polynomial { vars: table.clone(), terms: self.terms.clone() });
        }
        let mut map = Vec::with_capacity(self.vars.len());
        let mut identity = true;
        for (i, name) in self.vars.names().iter().enumerate() {
            let j = table.index_of(name).ok_or_else(|| PolyError::UnknownVariable(name.clone()))?;
            if table.weight(j) != self.vars.weight(i) {
                return Err(PolyError::WeightConflict {
                    name: name.clone(),
                    left: self.vars.weight(i),
                    right: table.weight(j),
                });
            }
            identity &= i == j;
            map.push(j);
        }
        if identity {
            return Ok(Polynomial { vars: table.clone(), terms: self.terms.clone() });
        }
        let mut terms: Vec<_> = self.terms.iter().map(|(m, c)| (m.remap(&map), c.clone())).collect();
        sort_terms(&mut terms);
        Ok(Polynomial { vars: table.clone(), terms })
    }

    /// Like [`embed`](Self::embed), but only variables that actually occur
    /// need to exist in `table`.
    pub fn embed_support(&self, table: &Arc<VarTable>) -> Result<Self, PolyError> {
        let used = self.support();
        let mut map = vec![usize::MAX; self.vars.len()];
        for &i in &used {
            let name = self.vars.name(i);
            let j = table.index_of(name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
            if table.weight(j) != self.vars.weight(i) {
                return Err(PolyError::WeightConflict {
                    name: name.to_string(),
                    left: self.vars.weight(i),
                    right: table.weight(j),
                });
            }
            map[i] = j;
        }
        let mut terms: Vec<_> = self.terms.iter().map(|(m, c)| (m.remap(&map), c.clone())).collect();
        sort_terms(&mut terms);
        Ok(Polynomial { vars: table.clone(), terms })
    }

    fn aligned<'a>(&'a self, other: &'a Self) -> Result<(Cow<'a, Self>, Cow<'a, Self>), PolyError> {
        if Arc::ptr_eq(&self.vars, &other.vars) || *self.vars == *other.vars {
            return Ok((Cow::Borrowed(self), Cow::Borrowed(other)));
        }
        let u = VarTable::union(&self.vars, &other.vars)?;
        let a = if Arc::ptr_eq(&u, &self.vars) { Cow::Borrowed(self) } else { Cow::Owned(self.embed(&u)?) };
        Ok((a, Cow::Owned(other.embed(&u)?)))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        let (a, b) = self.aligned(other)?;
        Ok(a.merge(&b, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        let (a, b) = self.aligned(other)?;
        Ok(a.merge(&b, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        let (a, b) = self.aligned(other)?;
        Ok(a.mul_same(&b))
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                a[i].0.cmp_grlex(&b[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { vars: self.vars.clone(), terms: out }
    }

    fn mul_same(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.vars);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        let mut acc = Acc::default();
        mul_into(&mut acc, &self.terms, &other.terms, &Rational::one());
        Self::from_acc(&self.vars, acc)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Polynomial { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..e {
            acc = acc.mul_same(self);
        }
        acc
    }

    pub fn add_constant(&self, c: &Rational) -> Self {
        self + &Self::constant(&self.vars, c.clone())
    }

    /// Indices of variables that occur in some term.
    pub fn support(&self) -> Vec<usize> {
        let mut seen = FxHashSet::default();
        for (m, _) in &self.terms {
            for (v, _) in m.iter() {
                seen.insert(v);
            }
        }
        let mut v: Vec<_> = seen.into_iter().collect();
        v.sort_unstable();
        v
    }

    pub fn support_names(&self) -> Vec<String> {
        self.support().into_iter().map(|i| self.vars.name(i).to_string()).collect()
    }

    pub fn contains_var(&self, name: &str) -> bool {
        match self.vars.index_of(name) {
            Some(i) => self.terms.iter().any(|(m, _)| m.exp(i) > 0),
            None => false,
        }
    }

    pub fn degree_in(&self, name: &str) -> u32 {
        match self.vars.index_of(name) {
            Some(i) => self.terms.iter().map(|(m, _)| m.exp(i)).max().unwrap_or(0),
            None => 0,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Lowest total degree of a term (`None` for zero).
    pub fn order(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    pub fn monomial_weight(&self, m: &Monomial) -> u64 {
        m.weighted_degree(|v| self.vars.weight(v))
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut w = None;
        for (m, _) in &self.terms {
            let d = self.monomial_weight(m);
            match w {
                None => w = Some(d),
                Some(x) if x != d => return Homogeneity::Mixed,
                _ => {}
            }
        }
        match w {
            None => Homogeneity::Zero,
            Some(d) => Homogeneity::Weight(d),
        }
    }

    /// Common weighted degree, or `None` if mixed or zero.
    pub fn weighted_degree(&self) -> Option<u64> {
        match self.homogeneity() {
            Homogeneity::Weight(d) => Some(d),
            _ => None,
        }
    }

    /// Keeps the terms satisfying `keep`.
    pub fn filter_terms(&self, keep: impl Fn(&Monomial, &Rational) -> bool) -> Self {
        Polynomial { vars: self.vars.clone(), terms: self.terms.iter().filter(|(m, c)| keep(m, c)).cloned().collect() }
    }

    /// Keeps the terms of total degree at most `d` in the variables `over`.
    pub fn truncate(&self, over: &[&str], d: u32) -> Self {
        let idx: Vec<usize> = over.iter().filter_map(|n| self.vars.index_of(n)).collect();
        self.filter_terms(|m, _| idx.iter().map(|&i| m.exp(i)).sum::<u32>() <= d)
    }

    pub fn derivative(&self, name: &str) -> Self {
        let Some(i) = self.vars.index_of(name) else {
            return Self::zero(&self.vars);
        };
        let mut acc = Acc::default();
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            let dm = m.div(&Monomial::var(i)).expect("exponent positive");
            acc_add(&mut acc, dm, c * &Rational::from_int(e as i64));
        }
        Self::from_acc(&self.vars, acc)
    }

    /// Coefficients with respect to one variable: entry `k` multiplies `name^k`.
    pub fn coefficients_in(&self, name: &str) -> Vec<Self> {
        let Some(i) = self.vars.index_of(name) else {
            return vec![self.clone()];
        };
        let deg = self.degree_in(name) as usize;
        let mut parts: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            parts[m.exp(i) as usize].push((m.without(i), c.clone()));
        }
        parts.into_iter().map(|terms| Polynomial { vars: self.vars.clone(), terms }).collect()
    }

    /// Inverse of [`coefficients_in`](Self::coefficients_in).
    pub fn from_coefficients_in(vars: &Arc<VarTable>, name: &str, coeffs: &[Self]) -> Result<Self, PolyError> {
        let x = Self::var(vars, name)?;
        let mut acc = Self::zero(vars);
        let mut xp = Self::one(vars);
        for c in coeffs {
            acc = acc.checked_add(&c.checked_mul(&xp)?)?;
            xp = xp.mul_same(&x);
        }
        Ok(acc)
    }

    /// Coefficient of the monomial `m` (over the variables `over`) when the
    /// polynomial is regarded as a polynomial in `over`.
    pub fn coeff_of(&self, m: &[(&str, u32)], over: &[&str]) -> Result<Self, PolyError> {
        let mut mask = vec![false; self.vars.len()];
        for n in over {
            if let Some(i) = self.vars.index_of(n) {
                mask[i] = true;
            }
        }
        let mut pairs = Vec::new();
        for (n, e) in m {
            if !over.contains(n) {
                return Err(PolyError::NotInSubset(n.to_string()));
            }
            match self.vars.index_of(n) {
                Some(i) => pairs.push((i, *e)),
                None if *e == 0 => {}
                None => return Ok(Self::zero(&self.vars)),
            }
        }
        Ok(self.coeff_of_mono(&Monomial::from_pairs(pairs), &mask))
    }

    /// Index-based [`coeff_of`](Self::coeff_of): `mask[i]` marks the variables of the subset.
    pub fn coeff_of_mono(&self, m: &Monomial, mask: &[bool]) -> Self {
        let terms = self
            .terms
            .iter()
            .filter_map(|(t, c)| {
                let (inside, rest) = t.split(|v| mask.get(v).copied().unwrap_or(false));
                (inside == *m).then(|| (rest, c.clone()))
            })
            .collect();
        Polynomial { vars: self.vars.clone(), terms }
    }

    /// Groups terms by their part in the variables marked by `mask`.
    pub fn collect_in(&self, mask: &[bool]) -> Vec<(Monomial, Self)> {
        let mut groups: IndexMap<Monomial, Vec<(Monomial, Rational)>> = IndexMap::new();
        for (t, c) in &self.terms {
            let (inside, rest) = t.split(|v| mask.get(v).copied().unwrap_or(false));
            groups.entry(inside).or_default().push((rest, c.clone()));
        }
        let mut out: Vec<_> = groups
            .into_iter()
            .map(|(m, mut terms)| {
                sort_terms(&mut terms);
                (m, Polynomial { vars: self.vars.clone(), terms })
            })
            .collect();
        out.sort_by(|a, b| b.0.cmp_grlex(&a.0));
        out
    }

    pub fn mask(&self, names: &[&str]) -> Vec<bool> {
        let mut mask = vec![false; self.vars.len()];
        for n in names {
            if let Some(i) = self.vars.index_of(n) {
                mask[i] = true;
            }
        }
        mask
    }

    /// Solves `self = 0` for `name`, which must occur linearly with a nonzero
    /// constant coefficient.
    pub fn solve_linear(&self, name: &str) -> Result<Self, PolyError> {
        let i = self.vars.index_of(name).ok_or_else(|| PolyError::Absent(name.to_string()))?;
        let mut lead: Vec<(Monomial, Rational)> = Vec::new();
        let mut rest: Vec<(Monomial, Rational)> = Vec::new();
        for (m, c) in &self.terms {
            match m.exp(i) {
                0 => rest.push((m.clone(), c.clone())),
                1 => lead.push((m.without(i), c.clone())),
                _ => return Err(PolyError::NonLinear(name.to_string())),
            }
        }
        let a = match lead.as_slice() {
            [] => return Err(PolyError::Absent(name.to_string())),
            [(m, c)] if m.is_one() => c.clone(),
            _ => return Err(PolyError::NonLinear(name.to_string())),
        };
        let scale = -(a.recip().expect("nonzero"));
        Ok(Polynomial { vars: self.vars.clone(), terms: rest }.scale(&scale))
    }

    /// Simultaneous substitution. Panics on a weight conflict between tables;
    /// see [`try_substitute`](Self::try_substitute).
    pub fn substitute(&self, rules: &RuleSet) -> Self {
        self.try_substitute(rules).expect("substitution tables conflict")
    }

    pub fn try_substitute(&self, rules: &RuleSet) -> Result<Self, PolyError> {
        self.substitute_impl(rules, &[])
    }

    /// Substitution that drops every term whose exponent in a capped variable
    /// exceeds its cap. Caps are applied to intermediate products too, which is
    /// sound because a discarded factor can never contribute to a kept term.
    pub fn substitute_capped(&self, rules: &RuleSet, caps: &[(&str, u32)]) -> Result<Self, PolyError> {
        self.substitute_impl(rules, caps)
    }

    fn substitute_impl(&self, rules: &RuleSet, caps: &[(&str, u32)]) -> Result<Self, PolyError> {
        let n = self.vars.len();
        let mut repl: Vec<Option<&Polynomial>> = vec![None; n];
        let mut any = false;
        for i in self.support() {
            if let Some(p) = rules.get(self.vars.name(i)) {
                repl[i] = Some(p);
                any = true;
            }
        }
        if !any && caps.is_empty() {
            return Ok(self.clone());
        }
        let mut table = self.vars.clone();
        for p in repl.iter().flatten() {
            table = VarTable::union(&table, p.vars())?;
        }
        let mut cap = vec![u32::MAX; table.len()];
        for (name, c) in caps {
            if let Some(i) = table.index_of(name) {
                cap[i] = *c;
            }
        }
        let capped = caps.iter().any(|(name, _)| table.index_of(name).is_some());
        let keep = |m: &Monomial| !capped || m.iter().all(|(v, e)| e <= cap[v]);
        let mut rule_polys: Vec<Option<Polynomial>> = vec![None; n];
        for i in 0..n {
            if let Some(p) = repl[i] {
                let p = p.embed(&table)?;
                rule_polys[i] = Some(if capped { p.filter_terms(|m, _| keep(m)) } else { p });
            }
        }
        let replaced = |v: usize| rule_polys[v].is_some();
        let mut groups: FxHashMap<Monomial, Vec<(Monomial, Rational)>> = FxHashMap::default();
        for (m, c) in &self.terms {
            // `table` extends `self.vars`, so indices carry over unchanged.
            let (r, kept) = m.split(replaced);
            if !keep(&kept) {
                continue;
            }
            groups.entry(r).or_default().push((kept, c.clone()));
        }
        let mut keys: Vec<Monomial> = groups.keys().cloned().collect();
        keys.sort_by(|a, b| a.cmp_grlex(b));
        let mut powers: FxHashMap<(usize, u32), Polynomial> = FxHashMap::default();
        let mut acc = Acc::default();
        for key in keys {
            let kept = &groups[&key];
            let mut prod: Option<Polynomial> = None;
            for (v, e) in key.iter() {
                let pw = power_cached(&mut powers, &rule_polys, v, e, &keep);
                prod = Some(match prod {
                    None => pw,
                    Some(p) => p.mul_filtered(&pw, &keep),
                });
            }
            match prod {
                None => {
                    for (m, c) in kept {
                        acc_add(&mut acc, m.clone(), c.clone());
                    }
                }
                Some(p) => {
                    if capped {
                        for (ma, ca) in kept {
                            for (mb, cb) in &p.terms {
                                let m = ma.mul(mb);
                                if keep(&m) {
                                    acc_add(&mut acc, m, ca * cb);
                                }
                            }
                        }
                    } else {
                        mul_into(&mut acc, kept, &p.terms, &Rational::one())
                    }
                }
            }
        }
        Ok(Self::from_acc(&table, acc))
    }

    fn mul_filtered(&self, other: &Self, keep: &dyn Fn(&Monomial) -> bool) -> Self {
        let mut acc = Acc::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                if keep(&m) {
                    acc_add(&mut acc, m, ca * cb);
                }
            }
        }
        Self::from_acc(&self.vars, acc)
    }

    /// Simultaneous substitution by nested Horner evaluation, one substituted
    /// variable at a time. Much cheaper than [`substitute`](Self::substitute)
    /// when the rule polynomials are short and the exponents high.
    pub fn substitute_horner(&self, rules: &RuleSet) -> Result<Self, PolyError> {
        let mut table = self.vars.clone();
        let mut order: Vec<(String, Polynomial)> = Vec::new();
        for i in self.support().into_iter().rev() {
            if let Some(p) = rules.get(self.vars.name(i)) {
                table = VarTable::union(&table, p.vars())?;
                order.push((self.vars.name(i).to_string(), p.clone()));
            }
        }
        let order: Vec<(String, Polynomial)> =
            order.into_iter().map(|(n, p)| p.embed(&table).map(|p| (n, p))).collect::<Result<_, _>>()?;
        fn rec(p: &Polynomial, order: &[(String, Polynomial)]) -> Polynomial {
            let Some(((name, r), rest)) = order.split_first() else {
                return p.clone();
            };
            if p.is_zero() {
                return p.clone();
            }
            let coeffs = p.coefficients_in(name);
            let mut acc = Polynomial::zero(&p.vars);
            for c in coeffs.iter().rev() {
                acc = &(&acc * r) + &rec(c, rest);
            }
            acc
        }
        Ok(rec(&self.embed(&table)?, &order))
    }

    /// Substitutes one variable.
    pub fn substitute_one(&self, name: &str, value: &Polynomial) -> Self {
        let mut r = RuleSet::new();
        r.insert(name.to_string(), value.clone());
        self.substitute(&r)
    }

    /// Evaluates with every variable replaced by a rational; missing variables are an error.
    pub fn eval(&self, point: &FxHashMap<String, Rational>) -> Result<Rational, PolyError> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.iter() {
                let name = self.vars.name(v);
                let x = point.get(name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
                t *= &x.pow(e);
            }
            total += &t;
        }
        Ok(total)
    }

    /// Quotient and remainder by `divisor`, both viewed as polynomials in
    /// `name`; the leading coefficient of `divisor` in `name` must be a nonzero constant.
    pub fn div_rem_in(&self, divisor: &Self, name: &str) -> Result<(Self, Self), PolyError> {
        let dc = divisor.coefficients_in(name);
        let dn = dc.len() - 1;
        let lc = dc[dn]
            .as_constant()
            .filter(|c| !c.is_zero())
            .ok_or_else(|| PolyError::NonConstantLeading(name.to_string()))?;
        let inv = lc.recip().expect("nonzero");
        let table = VarTable::union(&self.vars, &divisor.vars)?;
        let mut rc: Vec<Self> = self.embed(&table)?.coefficients_in(name);
        let dc: Vec<Self> = dc.iter().map(|c| c.embed(&table)).collect::<Result<_, _>>()?;
        if rc.len() <= dn {
            return Ok((Self::zero(&table), self.embed(&table)?));
        }
        let mut qc = vec![Self::zero(&table); rc.len() - dn];
        for k in (dn..rc.len()).rev() {
            let q = rc[k].scale(&inv);
            if q.is_zero() {
                continue;
            }
            for (j, d) in dc.iter().enumerate() {
                let idx = k - dn + j;
                rc[idx] = &rc[idx] - &(&q * d);
            }
            qc[k - dn] = q;
        }
        rc.truncate(dn);
        let q = Self::from_coefficients_in(&table, name, &qc)?;
        let r = Self::from_coefficients_in(&table, name, &rc)?;
        Ok((q, r))
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&Rational) -> Rational) -> Self {
        Self::from_terms(&self.vars, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Lowest common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> num_bigint::BigInt {
        let mut l = num_bigint::BigInt::from(1);
        for (_, c) in &self.terms {
            l = Rational::denom_lcm(&l, &c.denom());
        }
        l
    }
}

fn power_cached(
    cache: &mut FxHashMap<(usize, u32), Polynomial>,
    rules: &[Option<Polynomial>],
    v: usize,
    e: u32,
    keep: &dyn Fn(&Monomial) -> bool,
) -> Polynomial {
    if let Some(p) = cache.get(&(v, e)) {
        return p.clone();
    }
    let base = rules[v].as_ref().expect("rule present");
    let mut k = (1..e).rev().find(|k| cache.contains_key(&(v, *k))).unwrap_or(1);
    let mut p = if k == 1 { base.clone() } else { cache[&(v, k)].clone() };
    while k < e {
        p = p.mul_filtered(base, keep);
        k += 1;
    }
    cache.insert((v, e), p.clone());
    p
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        match self.aligned(other) {
            Ok((a, b)) => a.terms == b.terms,
            Err(_) => false,
        }
    }
}

impl Eq for Polynomial {}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut first = true;
            if !a.is_one() || m.is_one() {
                write!(f, "{a}")?;
                first = false;
            }
            for (v, e) in m.iter() {
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", self.vars.name(v))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

macro_rules! polyop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial tables conflict")
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                (&self).$m(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                self.$m(&rhs)
            }
        }
    };
}

polyop!(Add, add, checked_add);
polyop!(Sub, sub, checked_sub);
polyop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
