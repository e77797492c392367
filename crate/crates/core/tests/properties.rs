use std::sync::Arc;

use proptest::prelude::*;
use rdpinv::envres::{bar_coeff_list, psi_list, EType, Pipeline};
use rdpinv::poly::{Homogeneity, Monomial, Polynomial, Rational, RuleSet, VarTable};
use rdpinv::solvelist::SolveList;

fn table() -> Arc<VarTable> {
    VarTable::new(&[("a", 1), ("b", 2), ("c", 3)]).unwrap()
}

fn target() -> Arc<VarTable> {
    VarTable::new(&[("u", 1), ("v", 1)]).unwrap()
}

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| Rational::new(n, d))
}

/// Random polynomial as a sum of at most `max_terms` terms of degree at most 3 in each variable.
fn poly_in(vars: Arc<VarTable>, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    let n = vars.len();
    proptest::collection::vec((proptest::collection::vec(0u32..=3, n), rational()), 0..=max_terms).prop_map(
        move |terms| {
            terms.into_iter().fold(Polynomial::zero(&vars), |acc, (exps, c)| {
                let m = Monomial::from_pairs(exps.iter().enumerate().map(|(i, &e)| (i, e)));
                &acc + &Polynomial::from_terms(&vars, vec![(m, c)])
            })
        },
    )
}

fn rules_into(target: Arc<VarTable>) -> impl Strategy<Value = RuleSet> {
    proptest::collection::vec(poly_in(target, 3), 3)
        .prop_map(|ps| ["a", "b", "c"].iter().map(|s| s.to_string()).zip(ps).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly_in(table(), 5), b in poly_in(table(), 5), c in poly_in(table(), 5)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn substitution_is_a_ring_homomorphism(
        a in poly_in(table(), 4),
        b in poly_in(table(), 4),
        rules in rules_into(target()),
    ) {
        let sum = (&a + &b).substitute(&rules);
        prop_assert!((&sum - &(&a.substitute(&rules) + &b.substitute(&rules))).is_zero());
        let prod = (&a * &b).substitute(&rules);
        prop_assert!((&prod - &(&a.substitute(&rules) * &b.substitute(&rules))).is_zero());
    }

    #[test]
    fn horner_substitution_matches_plain(a in poly_in(table(), 6), rules in rules_into(target())) {
        let plain = a.substitute(&rules);
        let horner = a.substitute_horner(&rules).unwrap();
        prop_assert!((&plain - &horner).is_zero());
    }

    #[test]
    fn text_and_json_round_trip(a in poly_in(table(), 6)) {
        prop_assert_eq!(Polynomial::parse(&a.to_string(), &table()).unwrap(), a.clone());
        let back = Polynomial::from_json(&a.to_json()).unwrap();
        prop_assert_eq!(back.to_string(), a.to_string());
        prop_assert_eq!(back.to_json(), a.to_json());
    }

    #[test]
    fn homogeneous_rules_preserve_homogeneity(
        a in poly_in(table(), 6),
        ca in rational(), cb in rational(), cc in rational(),
    ) {
        // Keep only the terms of one weighted degree.
        let vars = table();
        let w = |m: &Monomial| m.weighted_degree(|i| vars.weight(i));
        let Some(d) = a.terms().first().map(|(m, _)| w(m)) else { return Ok(()) };
        let a = a.filter_terms(|m, _| w(m) == d);
        let t = VarTable::new(&[("u", 1), ("v", 2)]).unwrap();
        let p = |s: &str| Polynomial::parse(s, &t).unwrap();
        let rules: RuleSet = [
            ("a", p("u").scale(&ca)),
            ("b", &p("u^2").scale(&cb) + &p("v")),
            ("c", &p("u*v") + &p("u^3").scale(&cc)),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
        let image = a.substitute(&rules);
        if !image.is_zero() {
            prop_assert_eq!(image.homogeneity(), Homogeneity::Weight(d));
        }
    }
}

fn e6_lists() -> Vec<(&'static str, SolveList)> {
    let pipeline = Pipeline::build(EType::E6, None).unwrap();
    vec![
        ("barred", bar_coeff_list(EType::E6, false)),
        ("barred extended", bar_coeff_list(EType::E6, true)),
        ("psi", psi_list(EType::E6)),
        ("versal", pipeline.versal_list()),
    ]
}

/// Variables a parameter rule may replace: everything that is neither solved
/// for, nor a coordinate, nor defined by the base.
fn free_vars(list: &SolveList) -> Vec<(String, u32)> {
    let unknowns: Vec<&str> = list.pairs.iter().map(|p| p.unknown.as_str()).collect();
    let mut out: Vec<(String, u32)> = Vec::new();
    let polys = list.base.values().chain(std::iter::once(&list.template));
    for p in polys {
        let vars = p.vars();
        for name in p.support_names() {
            let skip = unknowns.contains(&name.as_str())
                || list.over.contains(&name)
                || list.base.contains_key(&name)
                || out.iter().any(|(n, _)| *n == name);
            if !skip {
                out.push((name.clone(), vars.weight_of(&name).unwrap()));
            }
        }
    }
    out
}

#[test]
fn e6_lists_have_free_parameters() {
    for (name, list) in e6_lists() {
        assert!(!free_vars(&list).is_empty(), "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    /// Pulling back a list and expanding equals expanding and substituting.
    #[test]
    fn pull_back_commutes_with_expansion(coeffs in proptest::collection::vec(rational(), 12)) {
        let lam = VarTable::new(&[("lam", 1)]).unwrap();
        let l = Polynomial::parse("lam", &lam).unwrap();
        for (name, list) in e6_lists() {
            let param: RuleSet = free_vars(&list)
                .into_iter()
                .zip(coeffs.iter().cycle())
                .map(|((v, w), c)| (v, l.pow(w).scale(c)))
                .collect();
            let expanded = list.expand().unwrap();
            let pulled = list.pull_back(&param).expand().unwrap();
            prop_assert_eq!(pulled.len(), expanded.len());
            for (v, p) in &expanded {
                let d = &pulled[v] - &p.substitute(&param);
                prop_assert!(d.is_zero(), "{} {}: {}", name, v, d);
            }
        }
    }

    /// Solving only a prefix of the pairs gives the same first rules.
    #[test]
    fn prefix_expansion_agrees(k in 0usize..8) {
        for (name, list) in e6_lists() {
            let full = list.expand().unwrap();
            let part = list.expand_prefix(k).unwrap();
            prop_assert_eq!(part.len(), k.min(list.pairs.len()));
            for (v, p) in &part {
                prop_assert_eq!(&full[v], p, "{} {}", name, v);
            }
        }
    }
}

#[test]
fn expansion_is_deterministic() {
    for (name, list) in e6_lists() {
        let a: Vec<String> = list.expand().unwrap().iter().map(|(v, p)| format!("{v}={p}")).collect();
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let list = list.clone();
                std::thread::spawn(move || {
                    list.expand().unwrap().iter().map(|(v, p)| format!("{v}={p}")).collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            assert_eq!(h.join().unwrap(), a, "{name}");
        }
    }
}
