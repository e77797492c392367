//! Rational double points: the type of a surface germ from its defining
//! polynomial, and the bound on the general hyperplane section of a
//! threefold predicted from orders of vanishing of standard coordinates.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::poly::{PolyError, Polynomial, Rational, RuleSet, VarTable};
use crate::rootsys::{Family, RootError, RootSystemSpec};

#[derive(Debug, thiserror::Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("the origin does not lie on the surface")]
    NotOnSurface,
    #[error("a jet of order {0} does not decide the type")]
    Undecidable(u32),
    #[error("not a rational double point")]
    NotRdp,
    #[error("variable `{0}` is not one of the three coordinates")]
    ExtraVariable(String),
    #[error("length {0} is outside 1..=6")]
    LengthOutOfRange(u32),
    #[error("bad valuation `{0}` (expected an integer, `inf` or `>=k`)")]
    BadValuation(String),
    #[error("no monomial table for {0}")]
    NoTable(RootSystemSpec),
}

/// Type of a rational double point; `A(0)` is a smooth point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RdpType {
    A(u32),
    D(u32),
    E(u32),
}

impl fmt::Display for RdpType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RdpType::A(n) => write!(f, "A{n}"),
            RdpType::D(n) => write!(f, "D{n}"),
            RdpType::E(n) => write!(f, "E{n}"),
        }
    }
}

impl FromStr for RdpType {
    type Err = ClassifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ClassifyError::BadValuation(s.to_string());
        let s = s.trim();
        let n: u32 = s.get(1..).ok_or_else(bad)?.parse().map_err(|_| bad())?;
        match &s[..1] {
            "A" => Ok(RdpType::A(n)),
            "D" if n >= 4 => Ok(RdpType::D(n)),
            "E" if (6..=8).contains(&n) => Ok(RdpType::E(n)),
            _ => Err(bad()),
        }
    }
}

impl RdpType {
    /// Weighted homogeneous normal form in `x, y, z`.
    pub fn normal_form(&self) -> String {
        match *self {
            RdpType::A(0) => "x".into(),
            RdpType::A(n) => format!("x^2 + y^2 + z^{}", n + 1),
            RdpType::D(n) => format!("x^2 + y^2*z + z^{}", n - 1),
            RdpType::E(6) => "x^2 + y^3 + z^4".into(),
            RdpType::E(7) => "x^2 + y^3 + y*z^3".into(),
            RdpType::E(_) => "x^2 + y^3 + z^5".into(),
        }
    }
}

/// Associated type of the length of an irreducible small resolution.
pub fn length_type(length: u32) -> Result<RdpType, ClassifyError> {
    Ok(match length {
        1 => RdpType::A(1),
        2 => RdpType::D(4),
        3 => RdpType::E(6),
        4 => RdpType::E(7),
        5 | 6 => RdpType::E(8),
        _ => return Err(ClassifyError::LengthOutOfRange(length)),
    })
}

// ---------------------------------------------------------------------------
// Germ classification

const X: &str = "x";
const Y: &str = "y";
const Z: &str = "z";

fn xyz() -> Arc<VarTable> {
    VarTable::new(&[(X, 1), (Y, 1), (Z, 1)]).expect("xyz")
}

fn homogeneous_part(p: &Polynomial, d: u32) -> Polynomial {
    p.filter_terms(|m, _| m.degree() == d)
}

fn coeff(p: &Polynomial, e: [u32; 3]) -> Rational {
    let idx: Vec<usize> = [X, Y, Z].iter().map(|n| p.vars().index_of(n).expect("xyz")).collect();
    p.terms()
        .iter()
        .find(|(m, _)| (0..3).all(|i| m.exp(idx[i]) == e[i]) && m.degree() == e.iter().sum::<u32>())
        .map(|(_, c)| c.clone())
        .unwrap_or_else(Rational::zero)
}

fn var(name: &str) -> Polynomial {
    Polynomial::var(&xyz(), name).expect("xyz")
}

fn unit(i: usize) -> [u32; 3] {
    let mut e = [0; 3];
    e[i] += 1;
    e
}

/// Congruence diagonalization `P^T A P = D` of a symmetric matrix.
fn diagonalize(mut a: [[Rational; 3]; 3]) -> ([Rational; 3], [[Rational; 3]; 3]) {
    let mut p: [[Rational; 3]; 3] =
        std::array::from_fn(|i| std::array::from_fn(|j| if i == j { Rational::one() } else { Rational::zero() }));
    // Column operation c_j += f c_i applied to A (both sides) and to P.
    fn add_col(a: &mut [[Rational; 3]; 3], p: &mut [[Rational; 3]; 3], j: usize, i: usize, f: &Rational) {
        for r in 0..3 {
            let v = &a[r][j] + &(f * &a[r][i]);
            a[r][j] = v;
            let v = &p[r][j] + &(f * &p[r][i]);
            p[r][j] = v;
        }
        for c in 0..3 {
            let v = &a[j][c] + &(f * &a[i][c]);
            a[j][c] = v;
        }
    }
    for i in 0..3 {
        if a[i][i].is_zero() {
            if let Some(j) = (i + 1..3).find(|&j| !a[j][j].is_zero()) {
                a.swap(i, j);
                for row in a.iter_mut().chain(p.iter_mut()) {
                    row.swap(i, j);
                }
            } else if let Some(j) = (i + 1..3).find(|&j| !a[i][j].is_zero()) {
                add_col(&mut a, &mut p, i, j, &Rational::one());
            } else {
                continue;
            }
        }
        let piv = a[i][i].recip().expect("nonzero pivot");
        for j in i + 1..3 {
            if !a[i][j].is_zero() {
                let f = -(&a[i][j] * &piv);
                add_col(&mut a, &mut p, j, i, &f);
            }
        }
    }
    (std::array::from_fn(|i| a[i][i].clone()), p)
}

/// Replaces `x, y, z` by `sum_j m[k][j] * target[j]` simultaneously.
fn linear_change(f: &Polynomial, m: &[[Rational; 3]; 3], target: [&str; 3]) -> Polynomial {
    let rules: RuleSet = [X, Y, Z]
        .iter()
        .enumerate()
        .map(|(k, name)| {
            let image = (0..3).fold(Polynomial::zero(&xyz()), |acc, j| &acc + &var(target[j]).scale(&m[k][j]));
            (name.to_string(), image)
        })
        .collect();
    f.substitute(&rules)
}

fn mul_trunc(a: &Polynomial, b: &Polynomial, jet: u32) -> Polynomial {
    (a * b).truncate(&[X, Y, Z], jet)
}

/// `p` with `name` replaced by `value` (of order at least 1), keeping
/// degrees up to `jet`.
fn substitute_trunc(p: &Polynomial, name: &str, value: &Polynomial, jet: u32) -> Polynomial {
    let mut out = Polynomial::zero(p.vars());
    let mut power = Polynomial::one(p.vars());
    for (k, c) in p.coefficients_in(name).iter().enumerate() {
        if k > 0 {
            power = mul_trunc(&power, value, jet);
        }
        if power.is_zero() {
            break;
        }
        out = &out + &mul_trunc(c, &power, jet);
    }
    out
}

/// Eliminates the variables in `quad` (each appearing as `d_i v_i^2` in the
/// quadratic part) by the formal splitting lemma, modulo degree `jet + 1`.
fn split_off(f: &Polynomial, quad: &[(&str, Rational)], jet: u32) -> Polynomial {
    let at = |p: &Polynomial, crit: &[Polynomial]| {
        quad.iter().zip(crit).fold(p.clone(), |acc, ((n, _), c)| substitute_trunc(&acc, n, c, jet))
    };
    let mut crit: Vec<Polynomial> = quad.iter().map(|_| Polynomial::zero(f.vars())).collect();
    let grads: Vec<Polynomial> = quad.iter().map(|(n, _)| f.derivative(n)).collect();
    for _ in 0..jet {
        let next: Vec<Polynomial> = quad
            .iter()
            .zip(&grads)
            .zip(&crit)
            .map(|(((_, d), g), c)| {
                let step = at(g, &crit).scale(&(Rational::from_int(2) * d.clone()).recip().expect("nonzero"));
                c - &step
            })
            .collect();
        if next == crit {
            break;
        }
        crit = next;
    }
    at(f, &crit)
}

fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip().expect("pivot");
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] * &inv;
            for j in c..ncols {
                let v = &rows[i][j] - &(&f * &rows[r][j]);
                rows[i][j] = v;
            }
        }
        r += 1;
    }
    r
}

/// `dim Q[y,z] / (J + m^n)` for the ideal `J` generated by `gens`.
fn colength(gens: &[Polynomial], n: u32) -> usize {
    let basis: Vec<(u32, u32)> = (0..n).flat_map(|d| (0..=d).map(move |a| (a, d - a))).collect();
    let index: rustc_hash::FxHashMap<(u32, u32), usize> = basis.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let mut rows = Vec::new();
    for &(a, b) in &basis {
        let shift = &var(Y).pow(a) * &var(Z).pow(b);
        for g in gens {
            let h = (&shift * g).truncate(&[X, Y, Z], n - 1);
            let mut row = vec![Rational::zero(); basis.len()];
            for (m, c) in h.terms() {
                let e = (m.exp(h.vars().index_of(Y).expect("y")), m.exp(h.vars().index_of(Z).expect("z")));
                row[index[&e]] = c.clone();
            }
            rows.push(row);
        }
    }
    basis.len() - rank(rows)
}

/// Milnor number of a plane curve germ `g(y, z)` known up to degree `jet`:
/// the colength of the Jacobian ideal plus `m^n`, once it stops growing.
fn milnor(g: &Polynomial, jet: u32) -> Option<u32> {
    let gens = [g.derivative(Y), g.derivative(Z)];
    let mut prev = colength(&gens, 1);
    for n in 2..=jet {
        let next = colength(&gens, n);
        if next == prev {
            return Some(prev as u32);
        }
        prev = next;
    }
    None
}

/// Type of the germ at the origin of `f = 0`, with `coords` naming the three
/// variables of `f`. Only terms of degree at most `jet` are trusted.
pub fn rdp_type(f: &Polynomial, coords: [&str; 3], jet: u32) -> Result<RdpType, ClassifyError> {
    let mut rules = RuleSet::new();
    for (c, t) in coords.iter().zip([X, Y, Z]) {
        rules.insert(c.to_string(), var(t));
    }
    if let Some(extra) = f.support_names().into_iter().find(|n| !coords.contains(&n.as_str())) {
        return Err(ClassifyError::ExtraVariable(extra));
    }
    let f = f.substitute(&rules).embed_support(&xyz())?.truncate(&[X, Y, Z], jet);
    if !f.constant_term().is_zero() {
        return Err(ClassifyError::NotOnSurface);
    }
    if jet < 1 {
        return Err(ClassifyError::Undecidable(jet));
    }
    if !homogeneous_part(&f, 1).is_zero() {
        return Ok(RdpType::A(0));
    }
    if jet < 2 {
        return Err(ClassifyError::Undecidable(jet));
    }
    let q = homogeneous_part(&f, 2);
    let half = Rational::new(1, 2);
    let a: [[Rational; 3]; 3] = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut e = unit(i);
            e[j] += 1;
            if i == j {
                coeff(&q, e)
            } else {
                &coeff(&q, e) * &half
            }
        })
    });
    let (diag, p) = diagonalize(a);
    // Nonzero diagonal entries first.
    let mut order: Vec<usize> = (0..3).collect();
    order.sort_by_key(|&i| diag[i].is_zero());
    let names = [X, Y, Z];
    let mut target = [X; 3];
    for (pos, &col) in order.iter().enumerate() {
        target[col] = names[pos];
    }
    let f = linear_change(&f, &p, target);
    let d: Vec<Rational> = order.iter().map(|&i| diag[i].clone()).filter(|c| !c.is_zero()).collect();
    match d.len() {
        3 => Ok(RdpType::A(1)),
        2 => {
            let g = split_off(&f, &[(X, d[0].clone()), (Y, d[1].clone())], jet);
            match g.order() {
                Some(n) => Ok(RdpType::A(n - 1)),
                None => Err(ClassifyError::Undecidable(jet)),
            }
        }
        1 => rank_one(&split_off(&f, &[(X, d[0].clone())], jet), jet),
        _ => Err(ClassifyError::NotRdp),
    }
}

/// `x^2 + g(y, z)` with `g` of order at least 3.
fn rank_one(g: &Polynomial, jet: u32) -> Result<RdpType, ClassifyError> {
    if jet < 3 {
        return Err(ClassifyError::Undecidable(jet));
    }
    let g3 = homogeneous_part(g, 3);
    if g3.is_zero() {
        return Err(ClassifyError::NotRdp);
    }
    let [a, b, c, d] = [[0, 3, 0], [0, 2, 1], [0, 1, 2], [0, 0, 3]].map(|e| coeff(&g3, e));
    let r = Rational::from_int;
    let disc = &(&(&(&(&b * &b) * &(&c * &c)) - &(&r(4) * &(&a * &c.pow(3)))) - &(&r(4) * &(&b.pow(3) * &d)))
        - &(&(&r(27) * &(&a * &a * &d * &d)) - &(&r(18) * &(&a * &b * &c * &d)));
    if !disc.is_zero() {
        return Ok(RdpType::D(4));
    }
    let hessian =
        [&(&b * &b) - &(&r(3) * &(&a * &c)), &(&b * &c) - &(&r(9) * &(&a * &d)), &(&c * &c) - &(&r(3) * &(&b * &d))];
    let decided_milnor = |g: &Polynomial| milnor(g, jet).ok_or(ClassifyError::Undecidable(jet));
    if hessian.iter().any(|h| !h.is_zero()) {
        return Ok(RdpType::D(decided_milnor(g)?));
    }
    // g3 = c h^3; any nonzero second partial is a multiple of h.
    let h = [g3.derivative(Y).derivative(Y), g3.derivative(Y).derivative(Z), g3.derivative(Z).derivative(Z)]
        .into_iter()
        .find(|p| !p.is_zero())
        .expect("nonzero cubic");
    let (hy, hz) = (coeff(&h, [0, 1, 0]), coeff(&h, [0, 0, 1]));
    // Move h to the coordinate y.
    let zero = Rational::zero();
    let m = if hy.is_zero() {
        [
            [r(1), zero.clone(), zero.clone()],
            [zero.clone(), zero.clone(), r(1)],
            [zero.clone(), hz.recip().expect("h"), zero.clone()],
        ]
    } else {
        let inv = hy.recip().expect("h");
        [
            [r(1), zero.clone(), zero.clone()],
            [zero.clone(), inv.clone(), -(&hz * &inv)],
            [zero.clone(), zero.clone(), r(1)],
        ]
    };
    let g = linear_change(g, &m, [X, Y, Z]);
    if jet < 4 {
        return Err(ClassifyError::Undecidable(jet));
    }
    let g4 = homogeneous_part(&g, 4);
    if !coeff(&g4, [0, 0, 4]).is_zero() {
        Ok(RdpType::E(6))
    } else if !coeff(&g4, [0, 1, 3]).is_zero() {
        Ok(RdpType::E(7))
    } else {
        match decided_milnor(&g)? {
            8 => Ok(RdpType::E(8)),
            _ => Err(ClassifyError::NotRdp),
        }
    }
}

// ---------------------------------------------------------------------------
// Section bounds

/// Order of vanishing in `T` of a coefficient pulled back along a disk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Exact(u32),
    /// Only a lower bound is known.
    AtLeast(u32),
    /// The coefficient vanishes identically.
    Infinite,
}

impl Valuation {
    fn lower(self) -> Option<u32> {
        match self {
            Valuation::Exact(d) | Valuation::AtLeast(d) => Some(d),
            Valuation::Infinite => None,
        }
    }

    fn product(self, other: Valuation) -> Valuation {
        match (self, other) {
            (Valuation::Infinite, _) | (_, Valuation::Infinite) => Valuation::Infinite,
            (Valuation::Exact(a), Valuation::Exact(b)) => Valuation::Exact(a + b),
            (a, b) => Valuation::AtLeast(a.lower().unwrap_or(0) + b.lower().unwrap_or(0)),
        }
    }

    /// Order of a sum: exact only if a single exact term attains the minimum.
    fn sum(terms: &[Valuation]) -> Valuation {
        let Some(min) = terms.iter().filter_map(|v| v.lower()).min() else {
            return Valuation::Infinite;
        };
        let at_min: Vec<&Valuation> = terms.iter().filter(|v| v.lower() == Some(min)).collect();
        match at_min.as_slice() {
            [Valuation::Exact(d)] => Valuation::Exact(*d),
            _ => Valuation::AtLeast(min),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Exact(d) => write!(f, "{d}"),
            Valuation::AtLeast(d) => write!(f, ">={d}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Valuation {
    type Err = ClassifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ClassifyError::BadValuation(s.to_string());
        let s = s.trim();
        if s == "inf" {
            Ok(Valuation::Infinite)
        } else if let Some(rest) = s.strip_prefix(">=") {
            Ok(Valuation::AtLeast(rest.trim().parse().map_err(|_| bad())?))
        } else {
            Ok(Valuation::Exact(s.parse().map_err(|_| bad())?))
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Valuation::Exact(d) => s.serialize_u32(*d),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Valuation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u32),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Ok(Valuation::Exact(n)),
            Raw::S(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Orders of vanishing of the standard coordinates of `spec` along a disk.
/// Coordinates not listed have order at least 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationProfile {
    #[serde(rename = "type", with = "spec_string")]
    pub spec: RootSystemSpec,
    pub valuations: BTreeMap<String, Valuation>,
}

mod spec_string {
    use crate::rootsys::RootSystemSpec;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(spec: &RootSystemSpec, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&spec.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<RootSystemSpec, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

impl ValuationProfile {
    pub fn new(spec: RootSystemSpec) -> Self {
        ValuationProfile { spec, valuations: BTreeMap::new() }
    }

    pub fn with(mut self, name: &str, v: Valuation) -> Self {
        self.valuations.insert(name.to_string(), v);
        self
    }

    pub fn get(&self, name: &str) -> Valuation {
        self.valuations.get(name).copied().unwrap_or(Valuation::AtLeast(1))
    }

    fn is_e7(&self) -> bool {
        self.spec.family() == Family::E && self.spec.n() == 7
    }

    /// Order of the coefficient that multiplies a monomial of the versal
    /// form; for `E7` the two modified coefficients at weights 12 and 18.
    pub fn effective(&self, name: &str) -> Valuation {
        if !self.is_e7() {
            return self.get(name);
        }
        let (e6, e12, e18) = (self.get("eps6"), self.get("eps12"), self.get("eps18"));
        match name {
            "eps12" => Valuation::sum(&[e12, e6.product(e6)]),
            "eps18" => Valuation::sum(&[e18, e6.product(e12), e6.product(e6).product(e6)]),
            _ => self.get(name),
        }
    }
}

/// Columns of the monomial table, from simplest to worst.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Column {
    A0,
    A1,
    A2,
    D4,
    Dk,
    E6,
    E7,
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Column::A0 => "A0",
            Column::A1 => "A1",
            Column::A2 => "A2",
            Column::D4 => "D4",
            Column::Dk => "Dk",
            Column::E6 => "E6",
            Column::E7 => "E7",
        })
    }
}

/// Predicted bound on the general hyperplane section.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SectionBound {
    /// At worst the column type, witnessed by a monomial `T^d Y^k Z^l`
    /// coming from the named coordinate.
    AtWorst { column: Column, monomial: String, coordinate: String, order: u32 },
    /// No monomial of the table occurs.
    NoBound(String),
}

impl SectionBound {
    pub fn column(&self) -> Option<Column> {
        match self {
            SectionBound::AtWorst { column, .. } => Some(*column),
            SectionBound::NoBound(_) => None,
        }
    }
}

impl fmt::Display for SectionBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SectionBound::AtWorst { column, monomial, coordinate, order } => {
                write!(f, "at worst {column} (monomial {monomial} from {coordinate}, order {order})")
            }
            SectionBound::NoBound(s) => write!(f, "no bound (>= {s})"),
        }
    }
}

type Cells = &'static [(u32, &'static str, Column)];

/// Coordinate names of the monomial table per type, with the cells of each row.
fn table_rows(spec: &RootSystemSpec) -> Result<Vec<(String, Cells)>, ClassifyError> {
    use Column::*;
    const E_ROWS: [([Option<&str>; 3], Cells); 8] = [
        ([None, None, Some("eps8")], &[(1, "T*Y*Z^2", E7)]),
        ([None, Some("eps6"), None], &[(1, "T*Y^2", E6)]),
        ([None, None, Some("eps12")], &[(1, "T*Z^3", E6)]),
        ([Some("eps5"), Some("eps8"), Some("eps14")], &[(1, "T*Y*Z", D4), (2, "T^2*Y*Z", E7)]),
        ([Some("eps6"), Some("eps10"), Some("eps18")], &[(1, "T*Z^2", D4), (2, "T^2*Z^2", E6)]),
        ([Some("eps8"), Some("eps12"), Some("eps20")], &[(1, "T*Y", A1), (2, "T^2*Y", Dk), (3, "T^3*Y", E7)]),
        ([Some("eps9"), Some("eps14"), Some("eps24")], &[(1, "T*Z", A1), (2, "T^2*Z", D4), (3, "T^3*Z", E6)]),
        (
            [Some("eps12"), Some("eps18"), Some("eps30")],
            &[(1, "T", A0), (2, "T^2", A2), (3, "T^3", Dk), (4, "T^4", E6)],
        ),
    ];
    let n = spec.n();
    let rows = match spec.family() {
        Family::A if n >= 2 => {
            let mut v: Vec<(String, Cells)> = vec![(format!("alpha{n}"), &[(1, "T", A0), (2, "T^2", A1)])];
            if n >= 3 {
                v.push((format!("alpha{}", n - 1), &[(1, "T*Z", A1)]));
            }
            v
        }
        Family::D if n >= 4 => {
            const TOP: Cells = &[(1, "T", A0), (2, "T^2", A2), (3, "T^3", D4)];
            vec![
                (format!("delta{}", 2 * n - 2), TOP),
                (format!("gamma{n}"), &[(1, "T*Y", A1), (2, "T^2*Y", D4)]),
                (format!("delta{}", 2 * n - 4), &[(1, "T*Z", A1)]),
            ]
        }
        Family::E if (6..=8).contains(&n) => {
            E_ROWS.iter().filter_map(|(names, cells)| names[n - 6].map(|c| (c.to_string(), *cells))).collect()
        }
        _ => return Err(ClassifyError::NoTable(*spec)),
    };
    Ok(rows)
}

/// The leftmost column of the monomial table containing a monomial
/// `T^d Y^k Z^l` whose coefficient has exact order `d`.
pub fn section_type(profile: &ValuationProfile) -> Result<SectionBound, ClassifyError> {
    let mut best: Option<SectionBound> = None;
    for (name, cells) in table_rows(&profile.spec)? {
        let Valuation::Exact(d) = profile.effective(&name) else { continue };
        let Some((_, mono, col)) = cells.iter().find(|(cd, _, _)| *cd == d) else { continue };
        if best.as_ref().and_then(SectionBound::column).is_none_or(|b| *col < b) {
            let coordinate =
                if profile.is_e7() && (name == "eps12" || name == "eps18") { format!("{name}~") } else { name };
            best = Some(SectionBound::AtWorst { column: *col, monomial: mono.to_string(), coordinate, order: d });
        }
    }
    Ok(best.unwrap_or_else(|| SectionBound::NoBound(profile.spec.to_string())))
}
