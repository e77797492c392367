//! Reproducible checks against the shipped reference data, reported row by row.

use std::fmt;

use serde::Serialize;

use crate::cache::Cache;
use crate::congruence::{dist_relation, key_constant, KeyCase, KEY_CASES};
use crate::distpoly::{e45_check, g_dist, pq_split, standard_coords};
use crate::envres::sextic::solve_sextic;
use crate::envres::{bar_coeff_list, versal_coeffs, EType};
use crate::golden::{compare, parse_golden, APPENDIX0, APPENDIX1, APPENDIX2, E6_BARRED};
use crate::invariance::{block_images, fixed_by_images, invariant_full};
use crate::poly::Polynomial;
use crate::rootsys::{vertex_split, RootSystemSpec};

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("unknown verification target `{0}`")]
    UnknownTarget(String),
}

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub target: String,
    pub rows: Vec<Row>,
}

impl Report {
    fn new(target: &str) -> Self {
        Report { target: target.to_string(), rows: Vec::new() }
    }

    fn push(&mut self, label: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.rows.push(Row { label: label.into(), pass, detail: detail.into() });
    }

    fn fail(&mut self, label: impl Into<String>, err: impl fmt::Display) {
        self.push(label, false, format!("error: {err}"));
    }

    pub fn all_pass(&self) -> bool {
        !self.rows.is_empty() && self.rows.iter().all(|r| r.pass)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{} {}: {}", if r.pass { "PASS" } else { "FAIL" }, r.label, r.detail)?;
        }
        write!(f, "{}: {}", self.target, if self.all_pass() { "PASS" } else { "FAIL" })
    }
}

/// Targets accepted by [`run`].
pub const TARGETS: [&str; 9] = [
    "appendix0",
    "appendix1",
    "appendix2",
    "e6-barred",
    "identities",
    "relations",
    "invariance",
    "congruence",
    "eps30",
];

pub fn run(target: &str, cache: Option<&Cache>, jobs: usize) -> Result<Report, VerifyError> {
    Ok(match target {
        "appendix0" => appendix0(),
        "appendix1" => appendix(EType::E6, cache),
        "appendix2" => appendix(EType::E7, cache),
        "e6-barred" => e6_barred(),
        "identities" => identities(),
        "relations" => relations(8),
        "invariance" => invariance(cache),
        "congruence" => congruence(&KEY_CASES, cache, jobs),
        "eps30" => eps30_size(cache),
        other => return Err(VerifyError::UnknownTarget(other.to_string())),
    })
}

fn first_difference(p: &Polynomial) -> String {
    let Some((m, _)) = p.terms().first() else { return "equal".into() };
    let first = p.filter_terms(|x, _| x == m);
    format!("{} differing terms, e.g. {first}", p.len())
}

/// The sextic from the two base conditions and two normalizing zeros.
pub fn appendix0() -> Report {
    let mut rep = Report::new("appendix0");
    match solve_sextic() {
        Ok(r) => {
            let line = APPENDIX0.lines().find(|l| l.trim_start().starts_with("Yb"));
            let Some((_, rhs)) = line.and_then(|l| l.split_once('=')) else {
                rep.push("Yb", false, "reference line missing");
                return rep;
            };
            match Polynomial::parse(rhs, r.sextic.vars()) {
                Ok(want) => {
                    let d = &r.sextic - &want;
                    rep.push("Yb", d.is_zero(), format!("{} terms, {}", want.len(), first_difference(&d)));
                }
                Err(e) => rep.fail("Yb", e),
            }
            rep.push(
                "unique",
                r.nullity == 0,
                format!("rank {} of {} unknowns, nullity {}", r.rank, r.unknowns, r.nullity),
            );
        }
        Err(e) => rep.fail("Yb", e),
    }
    rep
}

/// Standard coordinates of E6 or E7 against the reference files, with their multipliers.
pub fn appendix(t: EType, cache: Option<&Cache>) -> Report {
    let (name, text) = if t == EType::E6 { ("appendix1", APPENDIX1) } else { ("appendix2", APPENDIX2) };
    let mut rep = Report::new(name);
    let want = match parse_golden(text, &t.table()) {
        Ok(w) => w,
        Err(e) => {
            rep.fail("reference", e);
            return rep;
        }
    };
    match versal_coeffs(t, cache) {
        Ok(eps) => {
            for c in compare(&want, &eps) {
                let detail =
                    format!("multiplier {}, {} terms, {}", c.multiplier, c.terms, first_difference(&c.difference));
                rep.push(c.name, c.pass, detail);
            }
        }
        Err(e) => rep.fail(t.to_string(), e),
    }
    rep
}

/// Every coefficient of the expanded E6 barred polynomial.
pub fn e6_barred() -> Report {
    let mut rep = Report::new("e6-barred");
    let want = match parse_golden(E6_BARRED, &EType::E6.table()) {
        Ok(w) => w,
        Err(e) => {
            rep.fail("reference", e);
            return rep;
        }
    };
    match bar_coeff_list(EType::E6, true).expand() {
        Ok(got) => {
            for c in compare(&want, &got) {
                let detail = first_difference(&c.difference);
                rep.push(c.name, c.pass, detail);
            }
        }
        Err(e) => rep.fail("E6", e),
    }
    rep
}

/// `g = Z P^2 + Q^2` for `n = 2..9` and the E4/E5 re-derivation.
pub fn identities() -> Report {
    let mut rep = Report::new("identities");
    for n in 2..=9 {
        match pq_split(n) {
            Ok(pq) => {
                let z = Polynomial::var(pq.p.vars(), "Z").expect("Z");
                let d = &(&(&z * &pq.p.pow(2)) + &pq.q.pow(2)) - &g_dist(n).g;
                rep.push(format!("g = Z P^2 + Q^2, n = {n}"), d.is_zero(), first_difference(&d));
            }
            Err(e) => rep.fail(format!("n = {n}"), e),
        }
    }
    match e45_check() {
        Ok(r) => {
            for (label, detail, pass) in r.rows {
                rep.push(label, pass, detail);
            }
        }
        Err(e) => rep.fail("E4/E5", e),
    }
    rep
}

/// Vertex relations for every type with `n <= max_n` and every vertex with an orthogonal split.
pub fn relations(max_n: usize) -> Report {
    let mut rep = Report::new("relations");
    let mut specs: Vec<RootSystemSpec> = (1..max_n).map(RootSystemSpec::a).collect();
    specs.extend((4..=max_n).map(RootSystemSpec::d));
    specs.extend((3..=max_n.min(8)).map(RootSystemSpec::e));
    for spec in specs {
        for k in 0..=spec.n() {
            if vertex_split(&spec, k).is_err() {
                continue;
            }
            match dist_relation(&spec, k) {
                Ok(r) => rep.push(format!("{spec} v{k}"), r.holds(), first_difference(&r.difference())),
                Err(e) => rep.fail(format!("{spec} v{k}"), e),
            }
        }
    }
    rep
}

/// Invariance of every standard coordinate under the reflection that is not
/// a permutation of the functionals; type A and types up to rank 6 also by
/// the full route.
pub fn invariance(cache: Option<&Cache>) -> Report {
    let mut rep = Report::new("invariance");
    let mut jobs: Vec<(RootSystemSpec, Vec<(String, Polynomial)>)> = Vec::new();
    let mut specs: Vec<RootSystemSpec> = (1..=8).map(RootSystemSpec::a).collect();
    specs.extend((2..=8).map(RootSystemSpec::d));
    specs.extend((3..=5).map(RootSystemSpec::e));
    for spec in specs {
        match standard_coords(&spec) {
            Ok(c) => jobs.push((spec, c)),
            Err(e) => rep.fail(spec.to_string(), e),
        }
    }
    for t in EType::ALL {
        match versal_coeffs(t, cache) {
            Ok(c) => jobs.push((RootSystemSpec::e(t.rank()), c.into_iter().collect())),
            Err(e) => rep.fail(t.to_string(), e),
        }
    }
    for (spec, coords) in jobs {
        let images = if spec.family() == crate::rootsys::Family::A {
            None
        } else {
            match block_images(&spec) {
                Ok(i) => Some(i),
                Err(e) => {
                    rep.fail(spec.to_string(), e);
                    continue;
                }
            }
        };
        for (name, p) in coords {
            let blocks = images.as_ref().is_none_or(|i| fixed_by_images(&p, i));
            let full = if spec.rank() <= 6 || spec.family() == crate::rootsys::Family::A {
                invariant_full(&spec, &p).ok()
            } else {
                None
            };
            let pass = blocks && full.unwrap_or(true);
            let detail = match full {
                Some(f) => format!("{} terms, block route {blocks}, full route {f}", p.len()),
                None => format!("{} terms, block route {blocks}", p.len()),
            };
            rep.push(format!("{spec} {name}"), pass, detail);
        }
    }
    rep
}

/// Key constants, computed on up to `jobs` threads; rows keep the input order.
pub fn congruence(cases: &[KeyCase], cache: Option<&Cache>, jobs: usize) -> Report {
    use std::sync::atomic::{AtomicUsize, Ordering};
    use std::sync::Mutex;
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Row>>> = Mutex::new(vec![None; cases.len()]);
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, cases.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(case) = cases.get(i) else { break };
                let row = key_row(case, cache);
                slots.lock().expect("no panics while locked")[i] = Some(row);
            });
        }
    });
    let mut rep = Report::new("congruence");
    rep.rows = slots.into_inner().expect("threads joined").into_iter().map(|r| r.expect("every case ran")).collect();
    rep
}

fn fmt_pair(p: (i64, i64)) -> String {
    if p.1 == 1 {
        p.0.to_string()
    } else {
        format!("{}/{}", p.0, p.1)
    }
}

fn key_row(case: &KeyCase, cache: Option<&Cache>) -> Row {
    let expected = match case.other {
        Some((_, c1)) => format!("({}, {})", fmt_pair(c1), fmt_pair(case.constant)),
        None => fmt_pair(case.constant),
    };
    let label = format!("{case} length {}", case.length);
    match key_constant(case, cache) {
        Ok(out) => {
            let computed = match &out.computed {
                crate::congruence::Computed::Single(c) => c.to_string(),
                crate::congruence::Computed::Pair(a, b) => format!("({a}, {b})"),
            };
            Row { label, pass: out.pass, detail: format!("eps{} expected {expected} computed {computed}", case.target) }
        }
        Err(e) => Row { label, pass: false, detail: format!("expected {expected}, error: {e}") },
    }
}

/// Term count of the E8 constant term, which must not exceed 2462.
pub fn eps30_size(cache: Option<&Cache>) -> Report {
    let mut rep = Report::new("eps30");
    match versal_coeffs(EType::E8, cache) {
        Ok(eps) => {
            let n = eps.get("eps30").map_or(0, Polynomial::len);
            rep.push("eps30 terms", n > 0 && n <= 2462, format!("{n} nonzero terms (bound 2462)"));
        }
        Err(e) => rep.fail("E8", e),
    }
    rep
}
