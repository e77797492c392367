//! Relations among distinguished polynomials at a vertex of the Dynkin
//! diagram, restricted polynomials, and the congruences between the
//! coordinates of an exceptional type and those of a partial resolution.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::cache::Cache;
use crate::distpoly::{second_of, standard_coords, Coords, DistError};
use crate::envres::{versal_coeffs, EType, Pipeline};
use crate::linalg::{LinalgError, LinearSystem};
use crate::poly::{PolyError, Polynomial, Rational, RuleSet, VarTable};
use crate::rootsys::{vertex_split, Family, RootError, RootSystemSpec};
use crate::solvelist::SolveError;

#[derive(Debug, thiserror::Error)]
pub enum CongruenceError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Dist(#[from] DistError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("no vertex relation for {spec} at v{k}")]
    Unsupported { spec: RootSystemSpec, k: usize },
    #[error("no restricted polynomial is defined for {0}")]
    NoRestricted(RootSystemSpec),
    #[error("division by the extra linear factor leaves a remainder")]
    InexactDivision,
    #[error("{spec}: `{coord}` is not linear in its parameter with a constant coefficient")]
    NotTriangular { spec: RootSystemSpec, coord: String },
    #[error("{spec}: `{coord}` does not vanish on the restricted polynomial")]
    NotAnnihilated { spec: RootSystemSpec, coord: String },
    #[error("{0}: the pulled-back coordinate is not a constant multiple of the constant term")]
    NonConstantRatio(String),
    #[error("{0}: the pulled-back coordinate is not a combination of the two monomials")]
    NotInSpan(String),
    #[error("{0}: the two monomials are linearly dependent")]
    Singular(String),
    #[error("unknown case `{0}` (expected e.g. E7:v2)")]
    UnknownCase(String),
}

fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn u_of(p: &Polynomial) -> Polynomial {
    Polynomial::var(p.vars(), "U").expect("polynomial in U")
}

/// `p(U + by)`.
fn shifted(p: &Polynomial, by: &Polynomial) -> Polynomial {
    p.substitute_one("U", &(&u_of(p) + by))
}

/// `U^deg + sum_j coeff(j) U^(deg-j)`.
fn monic_with(vars: &Arc<VarTable>, deg: usize, coeff: impl Fn(usize) -> Polynomial) -> Polynomial {
    let u = Polynomial::var(vars, "U").expect("U");
    let mut p = u.pow(deg as u32);
    for j in 1..=deg {
        p = &p + &(&coeff(j) * &u.pow((deg - j) as u32));
    }
    p
}

/// `s_i -> coefficient of U^(n-i)` for a monic polynomial of degree `n` in `U`.
pub fn coefficient_rules(f: &Polynomial, n: usize) -> RuleSet {
    let c = f.coefficients_in("U");
    let zero = Polynomial::zero(f.vars());
    (1..=n).map(|i| (format!("s{i}"), c.get(n - i).cloned().unwrap_or_else(|| zero.clone()))).collect()
}

// ---------------------------------------------------------------------------
// Vertex relations

/// `f_S(U)` assembled from the distinguished polynomials of the two
/// components, the coordinate `mu` dual to the removed root and, at
/// `(E_n, v_2)`, a root `sigma` of the right component's polynomial.
pub fn assemble_at_vertex(
    spec: &RootSystemSpec,
    k: usize,
    left: &Polynomial,
    right: Option<&Polynomial>,
    mu: &Polynomial,
    sigma: Option<&Polynomial>,
) -> Result<Polynomial, CongruenceError> {
    let n = spec.n() as i64;
    let ki = k as i64;
    let unsupported = || CongruenceError::Unsupported { spec: *spec, k };
    let need_right = || right.ok_or_else(unsupported);
    let u = u_of(left);
    Ok(match spec.family() {
        Family::A => &shifted(left, &mu.scale(&frac(1, ki))) * &shifted(need_right()?, &mu.scale(&frac(-1, n - ki))),
        Family::D if k == spec.n() => shifted(left, &mu.scale(&frac(2, n))),
        Family::D => &shifted(left, &mu.scale(&frac(1, ki))) * need_right()?,
        Family::E => match k {
            0 => shifted(left, &mu.scale(&frac(n - 9, 3 * n))),
            1 => {
                let rho = left
                    .coefficients_in("U")
                    .get(spec.n() - 2)
                    .cloned()
                    .unwrap_or_else(|| Polynomial::zero(left.vars()));
                let linear = &(&(-&u) + &rho.scale(&frac(1, 3))) - &mu.scale(&frac(9 - n, 6));
                let arg = &(&(-&u) - &rho.scale(&frac(1, 6))) + &mu.scale(&frac(9 - n, 12));
                let p = &linear * &left.substitute_one("U", &arg);
                if n % 2 == 1 {
                    -p
                } else {
                    p
                }
            }
            2 => {
                let sigma = sigma.ok_or_else(unsupported)?;
                let c = frac(9 - n, 3 * n - 3);
                let a = shifted(left, &(&sigma.scale(&frac(2, 3)) + &mu.scale(&frac(9 - n, 6 * n - 6))));
                let b = shifted(need_right()?, &(&sigma.scale(&frac(-1, 3)) - &mu.scale(&c)));
                let divisor = &(&u - &sigma.scale(&frac(4, 3))) - &mu.scale(&c);
                let (q, rem) = (&a * &b).div_rem_in(&divisor, "U")?;
                if !rem.is_zero() {
                    return Err(CongruenceError::InexactDivision);
                }
                q
            }
            _ => {
                let tau =
                    left.coefficients_in("U").get(k - 1).cloned().unwrap_or_else(|| Polynomial::zero(left.vars()));
                let nine_k = 9 - ki;
                let shift = &tau.scale(&frac(-1, nine_k)) - &mu.scale(&frac(9 - n, nine_k * (n - ki)));
                left * &shifted(need_right()?, &shift)
            }
        },
    })
}

/// Both sides of the vertex relation, expanded in `mu1` and the component
/// functionals `tp*`, `tpp*`.
#[derive(Debug, Clone)]
pub struct Relation {
    pub spec: RootSystemSpec,
    pub k: usize,
    /// `prod (U + t_i)` with the `t_i` rewritten through the split.
    pub lhs: Polynomial,
    /// The assembled right-hand side.
    pub rhs: Polynomial,
}

impl Relation {
    pub fn difference(&self) -> Polynomial {
        &self.lhs - &self.rhs
    }

    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn dist_relation(spec: &RootSystemSpec, k: usize) -> Result<Relation, CongruenceError> {
    let split = vertex_split(spec, k)?;
    let vars = split.vars.extended(&[("U", 1)])?;
    let var = |s: &str| Polynomial::var(&vars, s).expect("split variable");
    let u = var("U");
    let mut lhs = Polynomial::one(&vars);
    for t in split.rules.values() {
        lhs = &lhs * &(&u + t);
    }
    let product = |names: Vec<String>| {
        let p = names.iter().fold(Polynomial::one(&vars), |acc, x| &acc * &(&u + &var(x)));
        split.reduce(&p)
    };
    let left = product(split.left.names());
    let right = split.right.as_ref().map(|c| product(c.names()));
    let sigma = split.right.as_ref().filter(|_| spec.family() == Family::E && k == 2).map(|c| -var(&c.names()[0]));
    let rhs = assemble_at_vertex(spec, k, &left, right.as_ref(), &var("mu1"), sigma.as_ref())?;
    Ok(Relation { spec: *spec, k, lhs: split.reduce(&lhs), rhs: split.reduce(&rhs) })
}

// ---------------------------------------------------------------------------
// Low-order congruences for A and D

/// One congruence with what is left of `lhs - rhs` after the reduction.
#[derive(Debug, Clone)]
pub struct CongruenceCheck {
    pub statement: String,
    pub residual: Polynomial,
}

impl CongruenceCheck {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

fn at_mu_zero(p: &Polynomial) -> Polynomial {
    p.substitute_one("mu1", &Polynomial::zero(p.vars()))
}

/// Checks the congruences between the coordinates of `A` or `D` and those
/// of the partial resolution at `v_k`. Variables: `mu1`, `a_j` for the left
/// component, `b_j` (A) or `c_j`, `d_{2j}`, `g` (D) for the right one.
pub fn low_order_congruences(spec: &RootSystemSpec, k: usize) -> Result<Vec<CongruenceCheck>, CongruenceError> {
    let n = spec.n();
    let unsupported = || CongruenceError::Unsupported { spec: *spec, k };
    let left_size = match spec.family() {
        Family::A if (1..n).contains(&k) => k,
        Family::D if k == n => n,
        Family::D if k >= 1 && k + 2 <= n => k,
        _ => return Err(unsupported()),
    };
    let m = n - left_size;
    let mut decl: Vec<(String, u32)> = vec![("U".into(), 1), ("Z".into(), 2), ("mu1".into(), 1)];
    decl.extend((2..=left_size).map(|j| (format!("a{j}"), j as u32)));
    if spec.family() == Family::A {
        decl.extend((2..=m).map(|j| (format!("b{j}"), j as u32)));
    } else if m > 0 {
        decl.extend((1..=m).map(|j| (format!("c{j}"), j as u32)));
        decl.extend((1..m).map(|j| (format!("d{}", 2 * j), 2 * j as u32)));
        decl.push(("g".into(), m as u32));
    }
    let vars = VarTable::new(&decl)?;
    let zero = Polynomial::zero(&vars);
    let coord = |prefix: &str, j: usize, top: usize| -> Polynomial {
        match j {
            0 => Polynomial::one(&vars),
            1 => zero.clone(),
            j if j <= top => Polynomial::var(&vars, &format!("{prefix}{j}")).expect("coordinate"),
            _ => zero.clone(),
        }
    };
    let a = |j: usize| coord("a", j, left_size);
    let fa = monic_with(&vars, left_size, a);
    let mu = Polynomial::var(&vars, "mu1")?;
    let mut out = Vec::new();
    let check =
        |statement: String, lhs: Polynomial, rhs: Polynomial| CongruenceCheck { statement, residual: &lhs - &rhs };

    match spec.family() {
        Family::A => {
            let b = |j: usize| coord("b", j, m);
            let f = assemble_at_vertex(spec, k, &fa, Some(&monic_with(&vars, m, b)), &mu, None)?;
            let s = coefficient_rules(&f, n);
            let sk = |i: usize| at_mu_zero(&s[&format!("s{i}")]);
            out.push(check(
                format!("alpha{} = a{} b{} + a{} b{} mod mu1", n - 1, k - 1, m, k, m - 1),
                sk(n - 1),
                &(&a(k - 1) * &b(m)) + &(&a(k) * &b(m - 1)),
            ));
            out.push(check(format!("alpha{n} = a{k} b{m} mod mu1"), sk(n), &a(k) * &b(m)));
        }
        Family::D if k == n => {
            let f = assemble_at_vertex(spec, k, &fa, None, &mu, None)?;
            out.push(check(format!("gamma{n} = a{n} mod mu1"), at_mu_zero(&f.coefficients_in("U")[0]), a(n)));
        }
        Family::D => {
            let c = |j: usize| Polynomial::var(&vars, &format!("c{j}")).expect("coordinate");
            let fd = monic_with(&vars, m, c);
            let f = assemble_at_vertex(spec, k, &fa, Some(&fd), &mu, None)?;
            if k == 1 {
                let lhs = second_of(&f).coefficients_in("Z")[2].clone();
                let rhs = second_of(&fd).coefficients_in("Z")[1].clone();
                out.push(check(format!("delta{} = delta''{} mod mu1", 2 * n - 4, 2 * n - 4), at_mu_zero(&lhs), rhs));
            }
            out.push(check(
                format!("gamma{n} = a{k} gamma''{m} mod mu1"),
                at_mu_zero(&f.coefficients_in("U")[0]),
                &a(k) * &c(m),
            ));
            {
                // g_D = g~_A(Z) g_{D''}(Z) with the D'' coordinates kept free.
                let g_tilde = second_of(&shifted(&fa, &mu.scale(&frac(1, k as i64))));
                let z = Polynomial::var(&vars, "Z")?;
                let gm = Polynomial::var(&vars, "g")?;
                let mut g2 = &z.pow(m as u32) + &gm.pow(2);
                for j in 1..m {
                    g2 = &g2 + &(&Polynomial::var(&vars, &format!("d{}", 2 * j))? * &z.pow((m - j) as u32));
                }
                let delta = (&g_tilde * &g2).coefficients_in("Z")[1].clone();
                let mut over: Vec<String> = vec!["mu1".into(), "g".into()];
                over.extend((2..=k).map(|j| format!("a{j}")));
                over.extend((1..m).map(|j| format!("d{}", 2 * j)));
                let over: Vec<&str> = over.iter().map(String::as_str).collect();
                let dm = Polynomial::var(&vars, &format!("d{}", 2 * m - 2))?;
                out.push(check(
                    format!("delta{} = a{k}^2 delta''{} mod degree 4", 2 * n - 2, 2 * m - 2),
                    delta.truncate(&over, 3),
                    &a(k).pow(2) * &dm,
                ));
            }
        }
        Family::E => unreachable!("rejected above"),
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Restricted polynomials

/// `U` and `lam1..lam8` (weight `i`): the parameter space of every
/// restricted polynomial.
pub fn param_table() -> Arc<VarTable> {
    let mut v: Vec<(String, u32)> = vec![("U".into(), 1)];
    v.extend((1..=8).map(|i| (format!("lam{i}"), i as u32)));
    VarTable::new(&v).expect("parameter table")
}

fn on_params(p: &Polynomial) -> Result<Polynomial, CongruenceError> {
    Ok(p.embed_support(&param_table())?)
}

fn lam(i: usize) -> Polynomial {
    Polynomial::var(&param_table(), &format!("lam{i}")).expect("parameter")
}

fn etype_of(spec: &RootSystemSpec) -> Option<EType> {
    match (spec.family(), spec.n()) {
        (Family::E, 6) => Some(EType::E6),
        (Family::E, 7) => Some(EType::E7),
        (Family::E, 8) => Some(EType::E8),
        _ => None,
    }
}

/// Standard coordinates of any supported type, as polynomials in `s1..sn`.
pub fn coordinates(spec: &RootSystemSpec, cache: Option<&Cache>) -> Result<Coords, CongruenceError> {
    match etype_of(spec) {
        Some(t) => Ok(versal_coeffs(t, cache)?.into_iter().collect()),
        None => Ok(standard_coords(spec)?),
    }
}

fn weight(p: &Polynomial) -> u64 {
    p.weighted_degree().unwrap_or(0)
}

/// Name of the coordinate of highest weight (the constant term of the versal form).
fn constant_term_name(coords: &Coords) -> String {
    coords.iter().max_by_key(|(_, p)| weight(p)).expect("nonempty").0.clone()
}

fn vanishing_names(spec: &RootSystemSpec) -> Option<Vec<String>> {
    let n = spec.n();
    let names = |v: &[&str]| Some(v.iter().map(|s| s.to_string()).collect());
    match spec.family() {
        Family::A if n >= 2 => Some((2..n).map(|j| format!("alpha{j}")).collect()),
        Family::D if n.is_multiple_of(2) && n >= 4 => {
            let mut v = vec![format!("gamma{n}")];
            v.extend((1..=n - 2).map(|j| format!("delta{}", 2 * j)));
            Some(v)
        }
        Family::D if n == 7 => names(&["delta2", "delta4", "delta6", "gamma7"]),
        Family::E => match n {
            4 => names(&["eps2", "eps3", "eps4"]),
            5 => names(&["eps2", "eps4", "eps5"]),
            6 => names(&["eps2", "eps5", "eps6"]),
            7 => names(&["eps2", "eps6"]),
            _ => None,
        },
        _ => None,
    }
}

/// A monic polynomial over parameters whose coefficient map kills every
/// vanishing coordinate but not the constant term.
#[derive(Debug, Clone)]
pub struct RestrictedPoly {
    pub spec: RootSystemSpec,
    pub r: Polynomial,
    /// Parameters left free, in increasing weight.
    pub params: Vec<String>,
    pub vanishing: Vec<String>,
    pub constant_name: String,
    /// The constant term pulled back to the parameters.
    pub constant: Polynomial,
}

impl RestrictedPoly {
    /// `s_i ->` the coefficients of `r`.
    pub fn s_rules(&self) -> RuleSet {
        coefficient_rules(&self.r, self.spec.n())
    }

    /// Pulls back the coordinate `name` of this type to the parameters.
    pub fn pull(&self, name: &str, cache: Option<&Cache>) -> Result<Polynomial, CongruenceError> {
        pull_coordinate(&self.spec, name, &self.s_rules(), cache)
    }
}

/// A coordinate of `spec` with `s_i` replaced by `rules`. For E6 to E8 the
/// value comes from the solve-lists pulled back to the parameter space.
pub fn pull_coordinate(
    spec: &RootSystemSpec,
    name: &str,
    rules: &RuleSet,
    cache: Option<&Cache>,
) -> Result<Polynomial, CongruenceError> {
    if let Some(t) = etype_of(spec) {
        return on_params(&Pipeline::pulled_back(t, rules, cache)?.versal_coeff(name)?);
    }
    let coords = standard_coords(spec)?;
    let (_, p) = coords
        .iter()
        .find(|(c, _)| c == name)
        .ok_or_else(|| CongruenceError::NotAnnihilated { spec: *spec, coord: name.to_string() })?;
    on_params(&p.substitute(rules))
}

fn free_params(r: &Polynomial) -> Vec<String> {
    let mut v: Vec<String> = r.support_names().into_iter().filter(|x| x != "U").collect();
    v.sort_by_key(|x| x[3..].parse::<u32>().unwrap_or(0));
    v
}

/// Derives the restricted polynomial of `spec` by solving the vanishing
/// coordinates for their parameters, weight by weight. For `D_n` with `n`
/// even the factorized form `U^n - lam_{n-1} U` is used instead.
pub fn derive_restricted(spec: &RootSystemSpec, cache: Option<&Cache>) -> Result<RestrictedPoly, CongruenceError> {
    let n = spec.n();
    let vanishing = vanishing_names(spec).ok_or(CongruenceError::NoRestricted(*spec))?;
    let coords = coordinates(spec, cache)?;
    let vars = param_table();
    let u = Polynomial::var(&vars, "U")?;
    let lookup = |name: &str| coords.iter().find(|(c, _)| c == name).map(|(_, p)| p.clone());
    let mut r = if spec.family() == Family::D && n.is_multiple_of(2) {
        &u.pow(n as u32) - &(&lam(n - 1) * &u)
    } else {
        let first = if spec.family() == Family::A { 2 } else { 1 };
        monic_with(&vars, n, |j| if j >= first { lam(j) } else { Polynomial::zero(&vars) })
    };
    if !(spec.family() == Family::D && n.is_multiple_of(2)) {
        let mut order: Vec<(u64, String)> = vanishing
            .iter()
            .map(|c| lookup(c).map(|p| (weight(&p), c.clone())))
            .collect::<Option<_>>()
            .ok_or(CongruenceError::NoRestricted(*spec))?;
        order.sort();
        for (w, name) in order.into_iter().filter(|(w, _)| *w <= n as u64) {
            let pulled = on_params(&lookup(&name).expect("listed").substitute(&coefficient_rules(&r, n)))?;
            let not_triangular = || CongruenceError::NotTriangular { spec: *spec, coord: name.clone() };
            let target = format!("lam{w}");
            let sol = pulled.solve_linear(&target).map_err(|_| not_triangular())?;
            r = r.substitute_one(&target, &sol);
        }
    }
    let rules = coefficient_rules(&r, n);
    for name in &vanishing {
        let p = lookup(name).ok_or(CongruenceError::NoRestricted(*spec))?;
        if !p.substitute(&rules).is_zero() {
            return Err(CongruenceError::NotAnnihilated { spec: *spec, coord: name.clone() });
        }
    }
    let constant_name = constant_term_name(&coords);
    let constant = pull_coordinate(spec, &constant_name, &rules, cache)?;
    Ok(RestrictedPoly { spec: *spec, params: free_params(&r), r, vanishing, constant_name, constant })
}

/// The type-A restricted polynomial `U^n - lam1^n`, which has the explicit root `lam1`.
pub fn a_root_form(spec: &RootSystemSpec) -> Result<RestrictedPoly, CongruenceError> {
    if spec.family() != Family::A || spec.n() < 2 {
        return Err(CongruenceError::NoRestricted(*spec));
    }
    let n = spec.n();
    let u = Polynomial::var(&param_table(), "U")?;
    let r = &u.pow(n as u32) - &lam(1).pow(n as u32);
    let rules = coefficient_rules(&r, n);
    let coords = standard_coords(spec)?;
    let constant_name = constant_term_name(&coords);
    let constant = pull_coordinate(spec, &constant_name, &rules, None)?;
    Ok(RestrictedPoly {
        spec: *spec,
        params: vec!["lam1".into()],
        r,
        vanishing: vanishing_names(spec).unwrap_or_default(),
        constant_name,
        constant,
    })
}

const TABLE_D7: (&str, &str) = (
    "U^7 + lam1*U^6 + 1/2*lam1^2*U^5 + lam3*U^4 + (lam1*lam3 - 1/8*lam1^4)*U^3 + lam5*U^2 \
     + (lam1*lam5 - 1/2*lam3*lam1^3 + 1/16*lam1^6 + 1/2*lam3^2)*U",
    "(lam1*lam5 - 1/2*lam3*lam1^3 + 1/16*lam1^6 + 1/2*lam3^2)^2",
);
const TABLE_E4: (&str, &str) = ("U^4 + lam1*U^3 + 3/5*lam1^2*U^2 + 1/25*lam1^3*U + 11/125*lam1^4", "243/3125*lam1^5");
const TABLE_E5: (&str, &str) = (
    "U^5 + lam1*U^4 + 5/8*lam1^2*U^3 + lam3*U^2 + (15/128*lam1^4 - 1/2*lam1*lam3)*U \
     + 27/256*lam1^5 - 1/2*lam1^2*lam3",
    "2601/16384*lam1^8 + 9/4*lam3^2*lam1^2 - 153/128*lam1^5*lam3",
);
const TABLE_E6: &str = "U^6 + lam1*U^5 + 2/3*lam1^2*U^4 + lam3*U^3 + lam4*U^2 \
     + (1/3*lam1*lam4 - 1/3*lam3*lam1^2 + 2/27*lam1^5)*U \
     + 5/18*lam1^2*lam4 - 1/9*lam3*lam1^3 + 11/486*lam1^6 - 1/8*lam3^2";
const TABLE_E7: &str = "U^7 + lam1*U^6 + 3/4*lam1^2*U^5 + lam3*U^4 + lam4*U^3 + lam5*U^2 \
     + (-1/8*lam3^2 + 3/64*lam1^6 - 3/16*lam3*lam1^3 - 1/4*lam1*lam5 + 3/8*lam1^2*lam4)*U + lam7";

/// The published restricted polynomial and, where printed, its constant term.
pub fn reference_restricted(spec: &RootSystemSpec) -> Option<(Polynomial, Option<Polynomial>)> {
    let n = spec.n();
    let (r, c): (String, Option<String>) = match (spec.family(), n) {
        (Family::A, n) if n >= 2 => (format!("U^{n} + lam{n}"), Some(format!("lam{n}"))),
        (Family::D, n) if n % 2 == 0 && n >= 4 => (format!("U^{n} - lam{}*U", n - 1), Some(format!("lam{}^2", n - 1))),
        (Family::D, 7) => (TABLE_D7.0.into(), Some(TABLE_D7.1.into())),
        (Family::E, 4) => (TABLE_E4.0.into(), Some(TABLE_E4.1.into())),
        (Family::E, 5) => (TABLE_E5.0.into(), Some(TABLE_E5.1.into())),
        (Family::E, 6) => (TABLE_E6.into(), None),
        (Family::E, 7) => (TABLE_E7.into(), None),
        _ => return None,
    };
    let vars = param_table();
    let parse = |s: &str| Polynomial::parse(s, &vars).expect("reference polynomial parses");
    Some((parse(&r), c.as_deref().map(parse)))
}

/// The displayed pullback of `delta8` for `D7`.
pub const D7_DELTA8: &str = "lam1^3*lam5 - 3/4*lam1^5*lam3 + 3/2*lam1^2*lam3^2 + 5/64*lam1^8 - 2*lam3*lam5";

// ---------------------------------------------------------------------------
// Key cases

/// One row of the key computations: `eps_target = c * (constant term)^degree`
/// modulo the ideal of the other coordinates; two-term rows also carry the
/// coefficient of a second monomial that only vanishes modulo the larger ideal.
/// Factors `(coordinate, exponent)` of a monomial, with its rational coefficient.
pub type MonomialTerm = (&'static [(&'static str, u32)], (i64, i64));

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KeyCase {
    pub etype: EType,
    pub k: usize,
    pub length: u32,
    pub target: u32,
    pub degree: u32,
    pub constant: (i64, i64),
    /// Second monomial in coordinates of the component, with its coefficient.
    pub other: Option<MonomialTerm>,
    /// Monomial `T^d Y^k Z^l` contributed to the section profile.
    pub monomial: &'static str,
    /// Predicted type of the general hyperplane section.
    pub section: &'static str,
}

#[allow(clippy::too_many_arguments)]
const fn row(
    etype: EType,
    k: usize,
    length: u32,
    target: u32,
    degree: u32,
    constant: (i64, i64),
    monomial: &'static str,
    section: &'static str,
) -> KeyCase {
    KeyCase { etype, k, length, target, degree, constant, other: None, monomial, section }
}

pub const KEY_CASES: [KeyCase; 15] = [
    row(EType::E6, 0, 2, 6, 1, (-1, 1), "T*Z^2", "D4"),
    row(EType::E6, 4, 2, 5, 1, (-1, 1), "T*Y*Z", "D4"),
    row(EType::E6, 5, 1, 8, 1, (-1, 4), "T*Y", "A1"),
    row(EType::E7, 0, 2, 14, 2, (64, 1), "T^2*Z", "D4"),
    row(EType::E7, 1, 2, 10, 1, (16, 1), "T*Z^2", "D4"),
    row(EType::E7, 2, 3, 6, 1, (-12, 1), "T*Y^2", "E6"),
    row(EType::E7, 4, 3, 10, 2, (16, 1), "T^2*Z^2", "E6"),
    row(EType::E7, 5, 2, 8, 1, (-4, 1), "T*Y*Z", "D4"),
    row(EType::E7, 6, 1, 12, 1, (16, 1), "T*Y", "A1"),
    row(EType::E8, 0, 3, 24, 3, (1, 1), "T^3*Z", "E6"),
    KeyCase { other: Some((&[("delta8", 3)], (0, 1))), ..row(EType::E8, 1, 2, 24, 2, (-1, 16), "T^2*Z", "D4") },
    row(EType::E8, 2, 4, 14, 2, (1, 1), "T^2*Y*Z", "E7"),
    row(EType::E8, 5, 4, 8, 1, (-1, 4), "T*Y*Z^2", "E7"),
    row(EType::E8, 6, 3, 12, 1, (1, 1), "T*Z^3", "E6"),
    KeyCase {
        other: Some((&[("eps8", 1), ("eps10", 1)], (-1, 3072))),
        ..row(EType::E8, 7, 2, 18, 1, (1, 64), "T*Z^2", "D4")
    },
];

impl KeyCase {
    pub fn spec(&self) -> RootSystemSpec {
        RootSystemSpec::e(self.etype.rank())
    }

    pub fn target_name(&self) -> String {
        format!("eps{}", self.target)
    }

    pub fn expected(&self) -> Rational {
        frac(self.constant.0, self.constant.1)
    }

    /// True when the constant term comes from the right component.
    pub fn tilde_is_right(&self) -> bool {
        self.k == 2
    }

    pub fn all() -> &'static [KeyCase] {
        &KEY_CASES
    }
}

impl fmt::Display for KeyCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:v{}", self.etype, self.k)
    }
}

impl FromStr for KeyCase {
    type Err = CongruenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CongruenceError::UnknownCase(s.to_string());
        let (t, v) = s.trim().split_once(':').ok_or_else(bad)?;
        let t: EType = t.parse().map_err(|_| bad())?;
        let k: usize = v.trim().trim_start_matches(['v', 'V']).parse().map_err(|_| bad())?;
        KEY_CASES.iter().find(|c| c.etype == t && c.k == k).copied().ok_or_else(bad)
    }
}

/// The pulled-back distinguished polynomial of a key case and the
/// restricted polynomial of the component that carries the constant term.
#[derive(Debug, Clone)]
pub struct CasePullback {
    pub case: KeyCase,
    pub left: RootSystemSpec,
    pub right: Option<RootSystemSpec>,
    pub tilde: RestrictedPoly,
    /// `psi^* f_{E_n}(U)`.
    pub dist: Polynomial,
}

impl CasePullback {
    pub fn s_rules(&self) -> RuleSet {
        coefficient_rules(&self.dist, self.case.etype.rank())
    }
}

/// Builds `psi^* f_{E_n}` from the vertex relation with `mu1 = 0`: the
/// component carrying the constant term contributes its restricted
/// polynomial and the other one a pure power of `U`.
pub fn case_pullback(case: &KeyCase, cache: Option<&Cache>) -> Result<CasePullback, CongruenceError> {
    let spec = case.spec();
    let split = vertex_split(&spec, case.k)?;
    let vars = param_table();
    let u = Polynomial::var(&vars, "U")?;
    let power = |s: &RootSystemSpec| u.pow(s.n() as u32);
    let zero = Polynomial::zero(&vars);
    let (tilde, left, right, sigma) = if case.tilde_is_right() {
        let rs = split.right.as_ref().expect("two components").spec;
        let tilde = a_root_form(&rs)?;
        let r = tilde.r.clone();
        (tilde, power(&split.left.spec), Some(r), Some(lam(1)))
    } else {
        let tilde = derive_restricted(&split.left.spec, cache)?;
        let right = split.right.as_ref().map(|c| power(&c.spec));
        (tilde.clone(), tilde.r, right, None)
    };
    let dist = on_params(&assemble_at_vertex(&spec, case.k, &left, right.as_ref(), &zero, sigma.as_ref())?)?;
    Ok(CasePullback { case: *case, left: split.left.spec, right: split.right.as_ref().map(|c| c.spec), tilde, dist })
}

/// `psi^* eps_target`, computed by pulling the solve-lists of `E_n` back
/// along `s_i -> coefficients of psi^* f_{E_n}`.
pub fn pullback_eps(pb: &CasePullback, cache: Option<&Cache>) -> Result<Polynomial, CongruenceError> {
    let p = Pipeline::pulled_back(pb.case.etype, &pb.s_rules(), cache)?;
    on_params(&p.versal_coeff(&pb.case.target_name())?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Computed {
    Single(Rational),
    /// Coefficients of the second monomial and of the constant-term power.
    Pair(Rational, Rational),
}

#[derive(Debug, Clone)]
pub struct KeyOutcome {
    pub case: KeyCase,
    pub computed: Computed,
    pub pass: bool,
}

impl KeyOutcome {
    /// The coefficient of the constant-term power.
    pub fn constant(&self) -> &Rational {
        match &self.computed {
            Computed::Single(c) | Computed::Pair(_, c) => c,
        }
    }

    /// Order of vanishing of the target coordinate along the disk: the
    /// constant of the restricted polynomial vanishes to order one, so a
    /// nonzero constant gives exactly the case degree.
    pub fn valuation(&self) -> Option<u32> {
        (!self.constant().is_zero()).then_some(self.case.degree)
    }
}

/// `c` with `p = c q`, if it exists.
pub fn constant_ratio(p: &Polynomial, q: &Polynomial) -> Option<Rational> {
    let (m, c) = q.leading()?;
    let a = p.terms().iter().find(|(pm, _)| pm == m).map(|(_, a)| a.clone()).unwrap_or_else(Rational::zero);
    let ratio = &a * &c.recip().expect("nonzero");
    (*p == q.scale(&ratio)).then_some(ratio)
}

/// Solves `p = c1 a + c2 b` for constants.
fn two_term(
    label: &str,
    p: &Polynomial,
    a: &Polynomial,
    b: &Polynomial,
) -> Result<(Rational, Rational), CongruenceError> {
    let unknowns = VarTable::new(&[("coef1", 0), ("coef2", 0)])?;
    let c1 = Polynomial::var(&unknowns, "coef1")?;
    let c2 = Polynomial::var(&unknowns, "coef2")?;
    let eq = &(p - &(&c1 * a)) - &(&c2 * b);
    let mut sys = LinearSystem::new(2);
    let cols: FxHashMap<String, usize> = [("coef1".to_string(), 0), ("coef2".to_string(), 1)].into_iter().collect();
    sys.push_polynomial(&eq, &cols)?;
    let sol = sys.solve().map_err(|_| CongruenceError::NotInSpan(label.to_string()))?;
    if sol.nullity() > 0 {
        return Err(CongruenceError::Singular(label.to_string()));
    }
    Ok((sol.values[0].clone(), sol.values[1].clone()))
}

/// Verifies one key case.
pub fn key_constant(case: &KeyCase, cache: Option<&Cache>) -> Result<KeyOutcome, CongruenceError> {
    let pb = case_pullback(case, cache)?;
    let eps = pullback_eps(&pb, cache)?;
    let main = pb.tilde.constant.pow(case.degree);
    let label = case.to_string();
    let (computed, pass) = match case.other {
        None => {
            let c = constant_ratio(&eps, &main).ok_or_else(|| CongruenceError::NonConstantRatio(label.clone()))?;
            let pass = c == case.expected();
            (Computed::Single(c), pass)
        }
        Some((factors, c1)) => {
            let mut other = Polynomial::one(&param_table());
            for (name, e) in factors {
                other = &other * &pb.tilde.pull(name, cache)?.pow(*e);
            }
            let (a, b) = two_term(&label, &eps, &other, &main)?;
            let pass = a == frac(c1.0, c1.1) && b == case.expected();
            (Computed::Pair(a, b), pass)
        }
    };
    Ok(KeyOutcome { case: *case, computed, pass })
}
