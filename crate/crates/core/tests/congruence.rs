use rdpinv::congruence::*;
use rdpinv::envres::versal_coeffs;
use rdpinv::poly::{Polynomial, Rational};
use rdpinv::rootsys::{vertex_split, Family, RootSystemSpec};

fn lam(s: &str) -> Polynomial {
    Polynomial::parse(s, &param_table()).unwrap()
}

fn all_specs() -> Vec<RootSystemSpec> {
    let mut v: Vec<RootSystemSpec> = (1..=7).map(RootSystemSpec::a).collect();
    v.extend((4..=8).map(RootSystemSpec::d));
    v.extend((3..=8).map(RootSystemSpec::e));
    v
}

#[test]
fn vertex_relations_hold_at_every_split() {
    let mut checked = 0;
    for spec in all_specs() {
        for k in 0..=spec.n() {
            if vertex_split(&spec, k).is_err() {
                continue;
            }
            let rel = dist_relation(&spec, k).unwrap();
            assert!(rel.holds(), "{spec} v{k}: {}", rel.difference());
            checked += 1;
        }
    }
    assert!(checked > 50);
}

#[test]
fn low_order_congruences_for_a() {
    for n in 3..=8 {
        let spec = RootSystemSpec::a(n - 1);
        for k in 1..n {
            for c in low_order_congruences(&spec, k).unwrap() {
                assert!(c.holds(), "{spec} v{k}: {} leaves {}", c.statement, c.residual);
            }
        }
    }
}

#[test]
fn low_order_congruences_for_d() {
    for n in 4..=7 {
        let spec = RootSystemSpec::d(n);
        let checks = low_order_congruences(&spec, n).unwrap();
        assert!(checks.iter().all(CongruenceCheck::holds));
        for k in 1..=n - 2 {
            let checks = low_order_congruences(&spec, k).unwrap();
            let (delta, rest) = checks.split_last().unwrap();
            assert!(rest.iter().all(CongruenceCheck::holds), "{spec} v{k}");
            let vars = delta.residual.vars();
            let expected = match k {
                1 => Polynomial::parse(&format!("mu1^2*d{} + g^2", 2 * n - 4), vars).unwrap(),
                2 => Polynomial::parse("-2*a2*g^2", vars).unwrap(),
                _ => Polynomial::zero(vars),
            };
            assert_eq!(delta.residual, expected, "{spec} v{k}: {}", delta.statement);
        }
    }
}

#[test]
fn restricted_polynomials_match_reference() {
    for s in ["A1", "A3", "A6", "D4", "D6", "D8", "D7", "E4", "E5", "E6", "E7"] {
        let spec: RootSystemSpec = s.parse().unwrap();
        let rp = derive_restricted(&spec, None).unwrap();
        let (r, constant) = reference_restricted(&spec).unwrap();
        assert_eq!(rp.r, r, "{s}");
        if let Some(c) = constant {
            assert_eq!(rp.constant, c, "{s}");
        }
        assert!(!rp.constant.is_zero());
        // Every coordinate outside the vanishing set survives the restriction.
        for (name, _) in coordinates(&spec, None).unwrap() {
            let pulled = rp.pull(&name, None).unwrap();
            assert_eq!(pulled.is_zero(), rp.vanishing.contains(&name), "{s} {name}");
        }
    }
    assert!(derive_restricted(&RootSystemSpec::d(5), None).is_err());
    assert!(derive_restricted(&RootSystemSpec::e(8), None).is_err());
}

#[test]
fn root_form_of_type_a() {
    let rp = a_root_form(&RootSystemSpec::a(5)).unwrap();
    assert_eq!(rp.constant, lam("-lam1^6"));
    assert!(rp.vanishing.iter().all(|c| rp.pull(c, None).unwrap().is_zero()));
}

#[test]
fn displayed_pullbacks() {
    let case = |s: &str| case_pullback(&s.parse().unwrap(), None).unwrap();
    assert_eq!(case("E7:v0").dist, lam("U^7 + lam7"));
    assert_eq!(case("E8:v0").dist, lam("U^8 + lam8"));
    assert_eq!(case("E7:v1").dist, lam("U^7 + lam5*U^2"));
    // (E_n, v2): (U + 2/3 lam1)^2 sum_i lam1^i (U - 1/3 lam1)^(n-2-i).
    for s in ["E7:v2", "E8:v2"] {
        let pb = case(s);
        let n = pb.case.etype.rank();
        let u = lam("U");
        let l = lam("lam1");
        let shifted = &u - &l.scale(&Rational::new(1, 3));
        let mut sum = Polynomial::zero(&param_table());
        for i in 0..=n - 2 {
            sum = &sum + &(&l.pow(i as u32) * &shifted.pow((n - 2 - i) as u32));
        }
        let expected = &(&u + &l.scale(&Rational::new(2, 3))).pow(2) * &sum;
        assert_eq!(pb.dist, expected, "{s}");
    }
    let e8v1 = case("E8:v1");
    assert_eq!(e8v1.tilde.pull("delta8", None).unwrap(), lam(D7_DELTA8));
}

#[test]
fn e7_v1_worked_example() {
    let pb = case_pullback(&"E7:v1".parse().unwrap(), None).unwrap();
    assert_eq!(pb.tilde.constant, lam("lam5^2"));
    assert_eq!(pullback_eps(&pb, None).unwrap(), lam("16*lam5^2"));
}

#[test]
fn pulled_back_pipeline_agrees_with_direct_substitution() {
    for case in KEY_CASES.iter().filter(|c| c.etype.rank() < 8 || c.k == 5) {
        let pb = case_pullback(case, None).unwrap();
        let via_pipeline = pullback_eps(&pb, None).unwrap();
        let coeffs = versal_coeffs(case.etype, None).unwrap();
        let direct = coeffs[&case.target_name()].substitute(&pb.s_rules());
        let direct = direct.embed_support(&param_table()).unwrap();
        assert_eq!(via_pipeline, direct, "{case}");
    }
}

#[test]
fn key_constants() {
    for case in KEY_CASES.iter() {
        let out = key_constant(case, None).unwrap();
        assert!(out.pass, "{case}: {:?}", out.computed);
        assert_eq!(out.constant(), &case.expected());
    }
    let e8v1 = key_constant(&"E8:v1".parse().unwrap(), None).unwrap();
    assert_eq!(e8v1.computed, Computed::Pair(Rational::zero(), Rational::new(-1, 16)));
    let e8v7 = key_constant(&"E8:v7".parse().unwrap(), None).unwrap();
    assert_eq!(e8v7.computed, Computed::Pair(Rational::new(-1, 3072), Rational::new(1, 64)));
}

#[test]
fn case_names_round_trip() {
    for case in KEY_CASES.iter() {
        assert_eq!(case.to_string().parse::<KeyCase>().unwrap(), *case);
        assert_eq!(case.spec().family(), Family::E);
    }
    assert!("E7:v3".parse::<KeyCase>().is_err());
    assert!("E9:v1".parse::<KeyCase>().is_err());
}
