//! ADE root systems in the hyperbolic lattice model.
//!
//! The ambient space has basis `e_0, ..., e_n` with `<e_0,e_0> = 1` and
//! `<e_i,e_i> = -1`. Root systems sit inside it, and the distinguished
//! functionals are `t_i = (1/3 e_0^* + e_i^*)` restricted to the root span.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::linalg::invert;
use crate::poly::{Polynomial, Rational, RuleSet, VarTable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("{family}{rank} is outside the supported ranks")]
    RankOutOfBounds { family: Family, rank: usize },
    #[error("{spec} has no simple root v{index}")]
    InvalidGenerator { spec: RootSystemSpec, index: usize },
    #[error("no orthogonal split of {spec} at v{k}")]
    UnsupportedVertex { spec: RootSystemSpec, k: usize },
    #[error("cannot parse root system `{0}`")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    D,
    E,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::D => "D",
            Family::E => "E",
        })
    }
}

/// A root system type. `A4` and `E4` are isomorphic but distinct specs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSystemSpec {
    family: Family,
    rank: usize,
}

impl RootSystemSpec {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootError> {
        let ok = match family {
            Family::A => true,
            Family::D => rank >= 2,
            Family::E => (3..=8).contains(&rank),
        };
        if ok {
            Ok(RootSystemSpec { family, rank })
        } else {
            Err(RootError::RankOutOfBounds { family, rank })
        }
    }

    pub fn a(rank: usize) -> Self {
        Self::new(Family::A, rank).expect("A rank")
    }

    pub fn d(rank: usize) -> Self {
        Self::new(Family::D, rank).expect("D rank")
    }

    pub fn e(rank: usize) -> Self {
        Self::new(Family::E, rank).expect("E rank")
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of distinguished functionals: `rank + 1` for A, `rank` otherwise.
    pub fn n(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            _ => self.rank,
        }
    }

    /// Labels of the simple roots: `1..n-1` for A, `1..n` for D, `0..n-1` for E.
    pub fn root_indices(&self) -> Vec<usize> {
        let n = self.n();
        match self.family {
            Family::A => (1..n).collect(),
            Family::D => (1..=n).collect(),
            Family::E => (0..n).collect(),
        }
    }

    fn position(&self, index: usize) -> Option<usize> {
        self.root_indices().iter().position(|&i| i == index)
    }

    /// Simple root `v_index` in the `e_0..e_n` basis.
    pub fn root(&self, index: usize) -> Result<Vec<Rational>, RootError> {
        let n = self.n();
        if self.position(index).is_none() {
            return Err(RootError::InvalidGenerator { spec: *self, index });
        }
        let mut v = vec![Rational::zero(); n + 1];
        let one = Rational::one;
        match (self.family, index) {
            (Family::E, 0) => {
                v[0] = one();
                for x in &mut v[1..=3] {
                    *x = -one();
                }
            }
            (Family::D, i) if i == n => {
                v[n - 1] = one();
                v[n] = one();
            }
            (_, i) => {
                v[i] = one();
                v[i + 1] = -one();
            }
        }
        Ok(v)
    }

    pub fn roots(&self) -> Vec<Vec<Rational>> {
        self.root_indices().into_iter().map(|i| self.root(i).expect("own root")).collect()
    }

    /// Table of `t1..tn`, all of weight 1.
    pub fn t_table(&self) -> Arc<VarTable> {
        let names: Vec<(String, u32)> = (1..=self.n()).map(|i| (format!("t{i}"), 1)).collect();
        VarTable::new(&names).expect("t table")
    }

    /// Matrix of values `t_i(v_j)`; rows are `i = 1..n`, columns follow `root_indices`.
    pub fn functional_matrix(&self) -> Vec<Vec<Rational>> {
        let roots = self.roots();
        let third = Rational::new(1, 3);
        (1..=self.n()).map(|i| roots.iter().map(|v| &(&third * &v[0]) + &v[i]).collect()).collect()
    }

    /// Coefficients of each `v_j^*` over `t1..tn` (row per root, in `root_indices` order).
    /// For A the last functional is dropped, so `t_n` never appears.
    pub fn dual_matrix(&self) -> Vec<Vec<Rational>> {
        let n = self.n();
        let m = self.functional_matrix();
        let r = self.root_indices().len();
        if r == 0 {
            return Vec::new();
        }
        let square: Vec<Vec<Rational>> = m[..r].to_vec();
        let inv = invert(&square).expect("functionals span the dual");
        inv.into_iter()
            .map(|mut row| {
                row.resize(n, Rational::zero());
                row
            })
            .collect()
    }

    /// Coefficients over `t1..tn` of the functional `x -> <x, v>` on the root span.
    fn pairing_in_t(&self, v: &[Rational]) -> Vec<Rational> {
        let n = self.n();
        match self.family {
            // On the sum-zero hyperplane the t_i are the coordinate functionals.
            Family::A => (1..=n).map(|i| -v[i].clone()).collect(),
            _ => {
                let roots = self.roots();
                let dual = self.dual_matrix();
                let mut out = vec![Rational::zero(); n];
                for (vj, row) in roots.iter().zip(&dual) {
                    let c = inner(vj, v);
                    if c.is_zero() {
                        continue;
                    }
                    for (o, x) in out.iter_mut().zip(row) {
                        *o += &(&c * x);
                    }
                }
                out
            }
        }
    }
}

impl fmt::Display for RootSystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for RootSystemSpec {
    type Err = RootError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || RootError::Parse(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().trim_start_matches('_').parse().map_err(|_| bad())?;
        Self::new(family, rank)
    }
}

/// The bilinear form `x_0 y_0 - sum x_i y_i`.
pub fn inner(x: &[Rational], y: &[Rational]) -> Rational {
    let mut s = &x[0] * &y[0];
    for (a, b) in x.iter().zip(y).skip(1) {
        s -= &(a * b);
    }
    s
}

fn linear_form(vars: &Arc<VarTable>, names: &[String], coeffs: &[Rational]) -> Polynomial {
    let mut p = Polynomial::zero(vars);
    for (name, c) in names.iter().zip(coeffs) {
        if !c.is_zero() {
            p = &p + &Polynomial::var(vars, name).expect("own variable").scale(c);
        }
    }
    p
}

fn dual_names(spec: &RootSystemSpec) -> Vec<String> {
    spec.root_indices().iter().map(|i| format!("vd{i}")).collect()
}

/// Each `t_i` as a linear form in the dual basis variables `vd{j}`.
pub fn distinguished_functionals(spec: &RootSystemSpec) -> Vec<Polynomial> {
    let names = dual_names(spec);
    let pairs: Vec<(&str, u32)> = names.iter().map(|s| (s.as_str(), 1)).collect();
    let vars = VarTable::new(&pairs).expect("dual table");
    spec.functional_matrix().iter().map(|row| linear_form(&vars, &names, row)).collect()
}

/// Each dual basis vector `vd{j}` as a linear form in `t1..tn`.
pub fn dual_basis_in_t(spec: &RootSystemSpec) -> RuleSet {
    let vars = spec.t_table();
    let names: Vec<String> = vars.names().to_vec();
    dual_names(spec).into_iter().zip(spec.dual_matrix()).map(|(d, row)| (d, linear_form(&vars, &names, &row))).collect()
}

/// The reflection in `v_g` acting on `t1..tn`.
pub fn weyl_action(spec: &RootSystemSpec, g: usize) -> Result<RuleSet, RootError> {
    let v = spec.root(g)?;
    let vars = spec.t_table();
    let names: Vec<String> = vars.names().to_vec();
    let pairing = linear_form(&vars, &names, &spec.pairing_in_t(&v));
    let third = Rational::new(1, 3);
    Ok(names
        .iter()
        .enumerate()
        .map(|(k, name)| {
            let i = k + 1;
            let ti_v = &(&third * &v[0]) + &v[i];
            let t = Polynomial::var(&vars, name).expect("own variable");
            (name.clone(), &t + &pairing.scale(&ti_v))
        })
        .collect())
}

/// One component of the split: its type and the labels in the ambient
/// system of its simple roots (listed in the component's own label order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub spec: RootSystemSpec,
    pub labels: Vec<usize>,
    /// Prefix of the component's functional names, `tp` or `tpp`.
    pub prefix: &'static str,
}

impl Component {
    pub fn names(&self) -> Vec<String> {
        (1..=self.spec.n()).map(|i| format!("{}{i}", self.prefix)).collect()
    }
}

/// Orthogonal decomposition of the root span at a vertex `v_k`: the line
/// through `w = v_k + (combination of the other roots)` orthogonal to them,
/// plus the spans of the one or two components left after deleting `v_k`.
#[derive(Debug, Clone)]
pub struct VertexSplit {
    pub spec: RootSystemSpec,
    pub k: usize,
    pub left: Component,
    pub right: Option<Component>,
    /// Coefficients of `w` on the other simple roots, keyed by label.
    pub tilde: Vec<(usize, Rational)>,
    /// `t_i` in terms of `mu1` (the dual of `v_k`), `tp*` and `tpp*`, with the
    /// last functional of every A-type component eliminated.
    pub rules: RuleSet,
    /// The extra shifted functional appearing in the product form at `(E_n, v_2)`.
    pub missing: Option<Polynomial>,
    pub vars: Arc<VarTable>,
}

fn components(spec: &RootSystemSpec, k: usize) -> Result<(Component, Option<Component>), RootError> {
    let n = spec.n();
    let unsupported = || RootError::UnsupportedVertex { spec: *spec, k };
    let comp = |spec: RootSystemSpec, labels: Vec<usize>, prefix| Component { spec, labels, prefix };
    Ok(match spec.family() {
        Family::A => {
            if k < 1 || k >= n {
                return Err(unsupported());
            }
            (
                comp(RootSystemSpec::a(k - 1), (1..k).collect(), "tp"),
                Some(comp(RootSystemSpec::a(n - k - 1), (k + 1..n).collect(), "tpp")),
            )
        }
        Family::D => {
            if k == n {
                (comp(RootSystemSpec::a(n - 1), (1..n).collect(), "tp"), None)
            } else if k >= 1 && k + 2 <= n {
                (
                    comp(RootSystemSpec::a(k - 1), (1..k).collect(), "tp"),
                    Some(comp(RootSystemSpec::d(n - k), (k + 1..=n).collect(), "tpp")),
                )
            } else {
                return Err(unsupported());
            }
        }
        Family::E => match k {
            0 => (comp(RootSystemSpec::a(n - 1), (1..n).collect(), "tp"), None),
            1 => {
                let mut labels: Vec<usize> = (1..=n - 3).map(|i| n - i).collect();
                labels.extend([2, 0]);
                (comp(RootSystemSpec::d(n - 1), labels, "tp"), None)
            }
            2 => {
                let mut labels = vec![0];
                labels.extend(3..n);
                (comp(RootSystemSpec::a(1), vec![1], "tp"), Some(comp(RootSystemSpec::a(n - 2), labels, "tpp")))
            }
            k if k < n => (
                comp(RootSystemSpec::e(k), (0..k).collect(), "tp"),
                Some(comp(RootSystemSpec::a(n - k - 1), (k + 1..n).collect(), "tpp")),
            ),
            _ => return Err(unsupported()),
        },
    })
}

impl VertexSplit {
    pub fn components(&self) -> Vec<&Component> {
        std::iter::once(&self.left).chain(self.right.as_ref()).collect()
    }

    /// Rewrites a polynomial so that no A-type component uses its last functional.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        p.substitute(&self.relations())
    }

    /// `last -> -(sum of the others)` for every A-type component.
    pub fn relations(&self) -> RuleSet {
        let mut r = RuleSet::new();
        for c in self.components() {
            if c.spec.family() != Family::A {
                continue;
            }
            let names = c.names();
            let (last, rest) = names.split_last().expect("nonempty");
            let mut sum = Polynomial::zero(&self.vars);
            for x in rest {
                sum = &sum - &Polynomial::var(&self.vars, x).expect("own variable");
            }
            r.insert(last.clone(), sum);
        }
        r
    }
}

/// Orthogonal split of `spec` at `v_k`.
pub fn vertex_split(spec: &RootSystemSpec, k: usize) -> Result<VertexSplit, RootError> {
    let (left, right) = components(spec, k)?;
    let vk = spec.root(k)?;
    let parts: Vec<&Component> = std::iter::once(&left).chain(right.as_ref()).collect();
    let others: Vec<usize> = parts.iter().flat_map(|c| c.labels.iter().copied()).collect();
    let other_roots: Vec<Vec<Rational>> = others.iter().map(|&j| spec.root(j).expect("label")).collect();

    // w = v_k + sum a_j v_j with <w, v_i> = 0 for every other simple root.
    let tilde: Vec<(usize, Rational)> = if others.is_empty() {
        Vec::new()
    } else {
        let gram: Vec<Vec<Rational>> =
            other_roots.iter().map(|vi| other_roots.iter().map(|vj| inner(vi, vj)).collect()).collect();
        let inv = invert(&gram).expect("definite form");
        let rhs: Vec<Rational> = other_roots.iter().map(|vi| -inner(vi, &vk)).collect();
        others
            .iter()
            .zip(&inv)
            .map(|(&j, row)| {
                let mut a = Rational::zero();
                for (x, y) in row.iter().zip(&rhs) {
                    a += &(x * y);
                }
                (j, a)
            })
            .collect()
    };

    // Variable layout: mu1, then each component's functionals.
    let mut names = vec!["mu1".to_string()];
    for c in &parts {
        names.extend(c.names());
    }
    let pairs: Vec<(&str, u32)> = names.iter().map(|s| (s.as_str(), 1)).collect();
    let vars = VarTable::new(&pairs).expect("split table");
    let width = names.len();

    // Dual basis of the ambient system: v_j^* = a_j mu1 + (component dual vector).
    let labels = spec.root_indices();
    let mut dual: Vec<Vec<Rational>> = vec![vec![Rational::zero(); width]; labels.len()];
    dual[spec.position(k).expect("label")][0] = Rational::one();
    let mut offset = 1;
    for c in &parts {
        let sub = c.spec.dual_matrix();
        for (row, &label) in sub.iter().zip(&c.labels) {
            let pos = spec.position(label).expect("label");
            let a = &tilde.iter().find(|(j, _)| *j == label).expect("coefficient").1;
            dual[pos][0] = a.clone();
            for (i, x) in row.iter().enumerate() {
                dual[pos][offset + i] = x.clone();
            }
        }
        offset += c.spec.n();
    }

    let m = spec.functional_matrix();
    let mut split = VertexSplit {
        spec: *spec,
        k,
        left: left.clone(),
        right: right.clone(),
        tilde,
        rules: RuleSet::new(),
        missing: None,
        vars: vars.clone(),
    };
    let mut rules = RuleSet::new();
    for (i, row) in m.iter().enumerate() {
        let mut coeffs = vec![Rational::zero(); width];
        for (c, d) in row.iter().zip(&dual) {
            for (x, y) in coeffs.iter_mut().zip(d) {
                *x += &(c * y);
            }
        }
        let form = linear_form(&vars, &names, &coeffs);
        rules.insert(format!("t{}", i + 1), split.reduce(&form));
    }
    split.rules = rules;
    if spec.family() == Family::E && k == 2 {
        split.missing = Some(e2_missing(&split));
    }
    Ok(split)
}

/// At `(E_n, v_2)` the product form pairs the shifted functionals of both
/// components; exactly one of them is not among the `t_i`.
fn e2_missing(split: &VertexSplit) -> Polynomial {
    let n = split.spec.n() as i64;
    let vars = &split.vars;
    let var = |s: &str| Polynomial::var(vars, s).expect("own variable");
    let mu = var("mu1");
    let sigma = -var("tpp1");
    let shift = mu.scale(&Rational::new(n - 9, 3 * n - 3)) - sigma.scale(&Rational::new(1, 3));
    let mut candidates: Vec<Polynomial> = split
        .right
        .as_ref()
        .expect("right component")
        .names()
        .iter()
        .map(|x| split.reduce(&(var(x) + &shift)))
        .collect();
    for t in split.rules.values() {
        if let Some(pos) = candidates.iter().position(|c| c == t) {
            candidates.remove(pos);
        }
    }
    assert_eq!(candidates.len(), 1, "one unmatched functional");
    candidates.pop().expect("one")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let s: RootSystemSpec = "E6".parse().unwrap();
        assert_eq!(s.to_string(), "E6");
        assert_eq!("A_3".parse::<RootSystemSpec>().unwrap().n(), 4);
        assert!("E9".parse::<RootSystemSpec>().is_err());
        assert!("D1".parse::<RootSystemSpec>().is_err());
        assert_ne!(RootSystemSpec::a(4), RootSystemSpec::e(4));
    }

    #[test]
    fn roots_have_norm_minus_two() {
        for spec in [RootSystemSpec::a(5), RootSystemSpec::d(6), RootSystemSpec::e(8)] {
            for v in spec.roots() {
                assert_eq!(inner(&v, &v), Rational::from_int(-2));
            }
        }
    }
}
