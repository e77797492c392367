//! Distinguished polynomials and the closed-form standard coordinates
//! for the A, D and small E types.

use std::sync::Arc;

use crate::poly::{PolyError, Polynomial, Rational, RuleSet, VarTable};
use crate::rootsys::{Family, RootSystemSpec};

#[derive(Debug, thiserror::Error)]
pub enum DistError {
    #[error("polynomial is not symmetric in {0}")]
    NotSymmetric(String),
    #[error("nonzero remainder dividing by {0}")]
    Remainder(&'static str),
    #[error("{0} has no closed-form coordinates here")]
    Unsupported(RootSystemSpec),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// `U`, `Z`, `t1..tn` (weight 1 each, `Z` weight 2) and `s1..sn` (weight i).
pub fn dist_table(n: usize) -> Arc<VarTable> {
    let mut v: Vec<(String, u32)> = vec![("U".into(), 1), ("Z".into(), 2)];
    v.extend(names("t", n).into_iter().map(|s| (s, 1)));
    v.extend(names("s", n).into_iter().enumerate().map(|(i, s)| (s, i as u32 + 1)));
    VarTable::new(&v).expect("distinguished table")
}

fn var(vars: &Arc<VarTable>, name: &str) -> Polynomial {
    Polynomial::var(vars, name).expect("own variable")
}

/// `U^n + s1 U^(n-1) + ... + sn` over the given coefficient names.
pub fn monic(vars: &Arc<VarTable>, u: &str, coeffs: &[String]) -> Polynomial {
    let n = coeffs.len() as u32;
    let mut p = Polynomial::term(vars, Rational::one(), &[(u, n)]).expect("own variable");
    for (i, c) in coeffs.iter().enumerate() {
        let e = n - 1 - i as u32;
        p = &p + &Polynomial::term(vars, Rational::one(), &[(c.as_str(), 1), (u, e)]).expect("own variable");
    }
    p
}

/// Both forms of the distinguished polynomial.
#[derive(Debug, Clone)]
pub struct DistPoly {
    pub spec: RootSystemSpec,
    /// `prod (U + t_i)`; for A the last functional is replaced by minus the sum of the others.
    pub product: Polynomial,
    /// `U^n + sum s_i U^(n-i)`; for A with `s1 = 0`.
    pub expanded: Polynomial,
}

/// Rule `t_n -> -(t_1 + ... + t_{n-1})` imposing the A-type relation.
pub fn a_relation(vars: &Arc<VarTable>, n: usize) -> RuleSet {
    let mut sum = Polynomial::zero(vars);
    for i in 1..n {
        sum = &sum - &var(vars, &format!("t{i}"));
    }
    let mut r = RuleSet::new();
    r.insert(format!("t{n}"), sum);
    r
}

pub fn f_dist(spec: &RootSystemSpec) -> DistPoly {
    let n = spec.n();
    let vars = dist_table(n);
    let u = var(&vars, "U");
    let mut product = Polynomial::one(&vars);
    for i in 1..=n {
        product = &product * &(&u + &var(&vars, &format!("t{i}")));
    }
    let mut expanded = monic(&vars, "U", &names("s", n));
    if spec.family() == Family::A {
        product = product.substitute(&a_relation(&vars, n));
        expanded = expanded.substitute_one("s1", &Polynomial::zero(&vars));
    }
    DistPoly { spec: *spec, product, expanded }
}

/// `s_i -> e_i(t_1..t_n)`.
pub fn elementary_rules(n: usize) -> RuleSet {
    let vars = dist_table(n);
    let u = var(&vars, "U");
    let mut product = Polynomial::one(&vars);
    for i in 1..=n {
        product = &product * &(&u + &var(&vars, &format!("t{i}")));
    }
    let coeffs = product.coefficients_in("U");
    let t: Vec<(String, u32)> = names("t", n).into_iter().map(|x| (x, 1)).collect();
    let tvars = VarTable::new(&t).expect("t table");
    (1..=n).map(|i| (format!("s{i}"), coeffs[n - i].embed_support(&tvars).expect("t only"))).collect()
}

/// Rewrites a polynomial symmetric in `group` as a polynomial in the
/// elementary symmetric functions named `out` (same length as `group`).
/// Other variables are treated as coefficients.
pub fn symmetric_reduce_in(p: &Polynomial, group: &[String], out: &[String]) -> Result<Polynomial, DistError> {
    let k = group.len();
    let mut extra: Vec<(String, u32)> = group.iter().map(|g| (g.clone(), 1)).collect();
    extra.extend(out.iter().enumerate().map(|(i, s)| (s.clone(), i as u32 + 1)));
    let vars = p.vars().extended(&extra)?;
    let mut rest = p.embed(&vars)?;
    let gidx: Vec<usize> = group.iter().map(|g| vars.index_of(g).expect("group var")).collect();
    let mask: Vec<bool> = (0..vars.len()).map(|i| gidx.contains(&i)).collect();

    // e_j of the group, and their products cached by exponent vector.
    let u = "__u";
    let uvars = vars.extended(&[(u, 1)])?;
    let mut prod = Polynomial::one(&uvars);
    for g in group {
        prod = &prod * &(&var(&uvars, u) + &var(&uvars, g));
    }
    let coeffs = prod.coefficients_in(u);
    let elem: Vec<Polynomial> = (1..=k).map(|j| coeffs[k - j].embed_support(&vars).expect("same vars")).collect();
    let mut powers: Vec<Vec<Polynomial>> = elem.iter().map(|e| vec![Polynomial::one(&vars), e.clone()]).collect();

    let mut result = Polynomial::zero(&vars);
    while !rest.is_zero() {
        let collected = rest.collect_in(&mask);
        let (lead, coef) = collected.iter().max_by(|a, b| a.0.cmp_grlex(&b.0)).expect("nonzero").clone();
        let exps: Vec<u32> = gidx.iter().map(|&i| lead.exp(i)).collect();
        if exps.windows(2).any(|w| w[0] < w[1]) {
            return Err(DistError::NotSymmetric(group.join(",")));
        }
        // lead = prod e_j^(a_j - a_{j+1}) leading term.
        let mut term = coef.clone();
        let mut sterm = coef;
        for j in 0..k {
            let m = exps[j] - exps.get(j + 1).copied().unwrap_or(0);
            if m == 0 {
                continue;
            }
            while powers[j].len() <= m as usize {
                let next = powers[j].last().expect("nonempty") * &elem[j];
                powers[j].push(next);
            }
            term = &term * &powers[j][m as usize];
            sterm = &sterm * &Polynomial::term(&vars, Rational::one(), &[(out[j].as_str(), m)])?;
        }
        rest = &rest - &term;
        result = &result + &sterm;
    }
    Ok(result)
}

/// Symmetric reduction in `t1..tn` to `s1..sn`.
pub fn symmetric_reduce(p: &Polynomial, n: usize) -> Result<Polynomial, DistError> {
    symmetric_reduce_in(p, &names("t", n), &names("s", n))
}

/// Coefficients of the second distinguished polynomial of `D_n`.
#[derive(Debug, Clone)]
pub struct SecondDist {
    /// `g(Z) = Z^n + sum_{i<n} delta_{2i} Z^(n-i) + gamma^2`.
    pub g: Polynomial,
    /// `delta_2, ..., delta_{2n-2}`.
    pub delta: Vec<Polynomial>,
    pub gamma: Polynomial,
}

fn even_odd(f: &Polynomial, n: usize) -> (Polynomial, Polynomial) {
    let vars = f.vars();
    let a = f.coefficients_in("U");
    let z = var(vars, "Z");
    let mut p = Polynomial::zero(vars);
    let mut q = Polynomial::zero(vars);
    for (j, c) in a.iter().enumerate().take(n + 1) {
        let m = (j / 2) as u32;
        let sign = if m.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
        let t = &c.scale(&sign) * &z.pow(m);
        if j % 2 == 1 {
            p = &p + &t;
        } else {
            q = &q + &t;
        }
    }
    (p, q)
}

/// `g` with `g(-U^2) = f(U) f(-U)`, as a polynomial in `Z`.
pub fn second_of(f: &Polynomial) -> Polynomial {
    let vars = f.vars();
    let u = var(vars, "U");
    let fneg = f.substitute_one("U", &-&u);
    let c = (f * &fneg).coefficients_in("U");
    let z = var(vars, "Z");
    let mut g = Polynomial::zero(vars);
    for (j, cj) in c.iter().enumerate().step_by(2) {
        let m = (j / 2) as u32;
        let sign = if m.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
        g = &g + &(&cj.scale(&sign) * &z.pow(m));
    }
    g
}

/// Second distinguished polynomial of `D_n` with `f = U^n + sum s_i U^(n-i)`.
pub fn g_dist(n: usize) -> SecondDist {
    let vars = dist_table(n);
    let g = second_of(&monic(&vars, "U", &names("s", n)));
    let gz = g.coefficients_in("Z");
    let delta = (1..n).map(|i| gz[n - i].clone()).collect();
    SecondDist { g, delta, gamma: var(&vars, &format!("s{n}")) }
}

/// The even/odd split of `f_{D_n}` and the derived polynomials.
#[derive(Debug, Clone)]
pub struct PqSplit {
    pub p: Polynomial,
    pub q: Polynomial,
    /// `(Q - s_n) / Z`.
    pub s: Polynomial,
    /// `U P + Q = (Z + U^2) G + f`.
    pub g: Polynomial,
    /// `v^(n-2) G(Z, u/v)`.
    pub g_tilde: Polynomial,
}

pub fn pq_split(n: usize) -> Result<PqSplit, DistError> {
    let base = dist_table(n);
    let vars = base.extended(&[("u", 1), ("v", 1)])?;
    let f = monic(&vars, "U", &names("s", n));
    let (p, q) = even_odd(&f, n);
    let z = var(&vars, "Z");
    let u = var(&vars, "U");
    let sn = var(&vars, &format!("s{n}"));
    let (s, r) = (&q - &sn).div_rem_in(&z, "Z")?;
    if !r.is_zero() {
        return Err(DistError::Remainder("Z"));
    }
    let lhs = &(&(&u * &p) + &q) - &f;
    let divisor = &z + &u.pow(2);
    let (g, r) = lhs.div_rem_in(&divisor, "Z")?;
    if !r.is_zero() {
        return Err(DistError::Remainder("Z + U^2"));
    }
    let coeffs = g.coefficients_in("U");
    let top = (n as u32).saturating_sub(2);
    let mut g_tilde = Polynomial::zero(&vars);
    for (j, c) in coeffs.iter().enumerate() {
        let j = j as u32;
        if j > top {
            if !c.is_zero() {
                return Err(DistError::Remainder("degree bound on G"));
            }
            continue;
        }
        let mono = Polynomial::term(&vars, Rational::one(), &[("u", j), ("v", top - j)])?;
        g_tilde = &g_tilde + &(c * &mono);
    }
    Ok(PqSplit { p, q, s, g, g_tilde })
}

/// Named standard coordinate functions in `s1..sn`.
pub type Coords = Vec<(String, Polynomial)>;

const E4_CLOSED: [(&str, &str); 4] = [
    ("eps2", "s2 - 3/5*s1^2"),
    ("eps3", "s3 - 1/5*s2*s1 + 2/25*s1^3"),
    ("eps4", "s4 + 1/5*s3*s1 - 8/25*s2*s1^2 + 12/125*s1^4"),
    ("eps5", "3/5*s1*s4 - 6/25*s3*s1^2 + 12/125*s2*s1^3 - 72/3125*s1^5"),
];

/// The E5 degree-6 coordinate with the sign of `s3^2` flipped. This variant
/// circulates in print; it is not fixed by the reflection in `v_0`.
pub const E5_EPS6_SIGN_VARIANT: &str =
    "3/4*s2^2*s1^2 - 3/4*s2*s1^4 - s2*s1*s3 - 2*s2*s4 + 5/32*s1^6 + 3/4*s1^3*s3 + 1/2*s1^2*s4 - 3*s1*s5 - s3^2";

const E5_CLOSED: [(&str, &str); 5] = [
    ("eps2", "-2*s2 + 5/4*s1^2"),
    ("eps4", "s2^2 - 2*s2*s1^2 + 5/8*s1^4 + s1*s3 + 2*s4"),
    ("eps5", "-1/8*s2*s1^3 + 1/32*s1^5 + 1/4*s1^2*s3 - 1/2*s1*s4 + s5"),
    (
        "eps6",
        "3/4*s2^2*s1^2 - 3/4*s2*s1^4 - s2*s1*s3 - 2*s2*s4 + 5/32*s1^6 + 3/4*s1^3*s3 + 1/2*s1^2*s4 - 3*s1*s5 + s3^2",
    ),
    (
        "eps8",
        "3/16*s2^2*s1^4 - 1/8*s2*s1^6 - 1/2*s2*s1^3*s3 + 3*s2*s1*s5 + 5/256*s1^8 + 3/16*s1^5*s3 \
         - 1/8*s1^4*s4 - 1/2*s1^3*s5 + 1/2*s1^2*s3^2 - s1*s4*s3 - 2*s5*s3 + s4^2",
    ),
];

const E3_CLOSED: [(&str, &str); 3] = [("eps2_1", "s1^2"), ("eps2_2", "s2"), ("eps3", "s3 - 1/3*s1*s2 + 2/27*s1^3")];

fn closed(vars: &Arc<VarTable>, table: &[(&str, &str)]) -> Coords {
    table.iter().map(|(name, text)| (name.to_string(), Polynomial::parse(text, vars).expect("closed form"))).collect()
}

/// Standard coordinates for the types with closed forms (A, D, E3, E4, E5).
pub fn standard_coords(spec: &RootSystemSpec) -> Result<Coords, DistError> {
    let n = spec.n();
    let vars = dist_table(n);
    Ok(match spec.family() {
        Family::A => (2..=n).map(|i| (format!("alpha{i}"), var(&vars, &format!("s{i}")))).collect(),
        Family::D => {
            let g = g_dist(n);
            let mut out = vec![(format!("gamma{n}"), g.gamma)];
            out.extend(g.delta.into_iter().enumerate().map(|(i, d)| (format!("delta{}", 2 * i + 2), d)));
            out
        }
        Family::E => match n {
            3 => closed(&vars, &E3_CLOSED),
            4 => closed(&vars, &E4_CLOSED),
            5 => closed(&vars, &E5_CLOSED),
            _ => return Err(DistError::Unsupported(*spec)),
        },
    })
}

/// The two constant terms attached to the components of `D_2`.
pub fn d2_constant_terms() -> [Polynomial; 2] {
    let g = g_dist(2);
    let quarter = Rational::new(-1, 4);
    let two_gamma = g.gamma.scale(&Rational::from_int(2));
    [(&g.delta[0] - &two_gamma).scale(&quarter), (&g.delta[0] + &two_gamma).scale(&quarter)]
}

/// Outcome of re-deriving the E4/E5 coordinates through the isomorphisms
/// with A4 and D5.
#[derive(Debug, Clone)]
pub struct E45Report {
    pub rows: Vec<(String, String, bool)>,
}

impl E45Report {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.2)
    }
}

/// Re-derives E4 and E5 coordinates from the shifted distinguished polynomials.
pub fn e45_check() -> Result<E45Report, DistError> {
    let mut rows = Vec::new();
    for n in [4usize, 5] {
        let spec = RootSystemSpec::e(n);
        let vars = dist_table(5);
        let s = names("s", n);
        let f = monic(&vars, "U", &s);
        let u = var(&vars, "U");
        let s1 = var(&vars, "s1");
        let derived: Coords = if n == 4 {
            let shifted = f.substitute_one("U", &(&u - &s1.scale(&Rational::new(2, 5))));
            let a4 = &(&u + &s1.scale(&Rational::new(3, 5))) * &shifted;
            let c = a4.coefficients_in("U");
            (2..=5).map(|i| (format!("eps{i}"), c[5 - i].clone())).collect()
        } else {
            let d5 = f.substitute_one("U", &(&u - &s1.scale(&Rational::new(1, 2))));
            let g = second_of(&d5).coefficients_in("Z");
            let mut out: Coords = (1..=4usize).map(|i| (format!("eps{}", 2 * i), g[5 - i].clone())).collect();
            out.push(("eps5".into(), d5.coefficients_in("U")[0].clone()));
            out
        };
        for (name, closed) in standard_coords(&spec)? {
            let pass = derived.iter().any(|(d, p)| d == &name && p == &closed);
            rows.push((spec.to_string(), name, pass));
        }
    }
    Ok(E45Report { rows })
}
