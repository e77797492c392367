use rdpinv::distpoly::*;
use rdpinv::invariance::{invariant_blocks, invariant_full};
use rdpinv::poly::{Homogeneity, Polynomial, Rational};
use rdpinv::rootsys::{Family, RootSystemSpec};

fn parse(text: &str, n: usize) -> Polynomial {
    Polynomial::parse(text, &dist_table(n)).unwrap()
}

fn specs_with_closed_forms() -> Vec<RootSystemSpec> {
    let mut v: Vec<RootSystemSpec> = (0..=8).map(RootSystemSpec::a).collect();
    v.extend((2..=8).map(RootSystemSpec::d));
    v.extend((3..=5).map(RootSystemSpec::e));
    v
}

#[test]
fn product_and_coefficient_forms_agree() {
    for spec in specs_with_closed_forms() {
        let n = spec.n();
        let d = f_dist(&spec);
        let mut expanded = d.expanded.substitute(&elementary_rules(n));
        if spec.family() == Family::A {
            expanded = expanded.substitute(&a_relation(&dist_table(n), n));
        }
        assert_eq!(d.product, expanded, "{spec}");
    }
    assert_eq!(f_dist(&RootSystemSpec::a(0)).product, parse("U", 1));
    assert_eq!(f_dist(&RootSystemSpec::a(0)).expanded, parse("U", 1));
    assert_eq!(f_dist(&RootSystemSpec::a(1)).expanded, parse("U^2 + s2", 2));
    assert_eq!(f_dist(&RootSystemSpec::d(2)).expanded, parse("U^2 + s1*U + s2", 2));
}

#[test]
fn symmetric_reduction_round_trips_and_rejects() {
    let n = 4;
    let p = parse("s1^3*s2 - 7*s4 + s2*s2 + 1/3*s3*s1", n);
    let t = p.substitute(&elementary_rules(n));
    assert_eq!(symmetric_reduce(&t, n).unwrap(), p);
    assert!(symmetric_reduce(&parse("t1^2 + t2", n), n).is_err());
}

#[test]
fn second_distinguished_polynomial_matches_direct_expansion() {
    // Oracle: expand prod (Z + t_i^2) in free t, then rewrite in s.
    for n in 2..=6usize {
        let vars = dist_table(n);
        let z = Polynomial::var(&vars, "Z").unwrap();
        let mut direct = Polynomial::one(&vars);
        for i in 1..=n {
            direct = &direct * &(&z + &Polynomial::var(&vars, &format!("t{i}")).unwrap().pow(2));
        }
        let direct = symmetric_reduce(&direct, n).unwrap();
        let g = g_dist(n);
        assert_eq!(g.g, direct, "n = {n}");
        let gz = g.g.coefficients_in("Z");
        assert_eq!(gz[0], g.gamma.pow(2));
        assert!(gz[n].as_constant().unwrap().is_one());
    }
    assert_eq!(g_dist(2).delta[0], parse("s1^2 - 2*s2", 2));
    for n in 2..=9 {
        assert_eq!(g_dist(n).gamma, parse(&format!("s{n}"), n));
    }
    let d3 = g_dist(3);
    assert_eq!(d3.delta[0], parse("s1^2 - 2*s2", 3));
    assert_eq!(d3.delta[1], parse("s2^2 - 2*s1*s3", 3));
}

#[test]
fn even_odd_split_identities() {
    for n in 2..=9usize {
        let pq = pq_split(n).unwrap();
        let vars = pq.p.vars().clone();
        let u = Polynomial::var(&vars, "U").unwrap();
        let z = Polynomial::var(&vars, "Z").unwrap();
        let f = monic(&vars, "U", &(1..=n).map(|i| format!("s{i}")).collect::<Vec<_>>());
        let minus_u2 = -&u.pow(2);
        let back = &(&u * &pq.p.substitute_one("Z", &minus_u2)) + &pq.q.substitute_one("Z", &minus_u2);
        assert_eq!(back, f, "n = {n}");
        let g = &(&z * &pq.p.pow(2)) + &pq.q.pow(2);
        assert_eq!(g, g_dist(n).g, "g = Z P^2 + Q^2 at n = {n}");
        let sn = Polynomial::var(&vars, &format!("s{n}")).unwrap();
        assert_eq!(&(&z * &pq.s) + &sn, pq.q);
        let lhs = &(&u * &pq.p) + &pq.q;
        assert_eq!(lhs, &(&(&z + &u.pow(2)) * &pq.g) + &f);
        assert_eq!(pq.g.degree_in("U"), n as u32 - 2);
        let total: Vec<u32> = pq
            .g_tilde
            .terms()
            .iter()
            .map(|(m, _)| m.exp(vars.index_of("u").unwrap()) + m.exp(vars.index_of("v").unwrap()))
            .collect();
        assert!(total.iter().all(|&d| d == n as u32 - 2));
    }
    let pq = pq_split(2).unwrap();
    let vars = pq.p.vars().clone();
    assert_eq!(pq.p, Polynomial::parse("s1", &vars).unwrap());
    assert_eq!(pq.q, Polynomial::parse("-Z + s2", &vars).unwrap());
}

#[test]
fn closed_forms_and_constant_terms() {
    let e4 = standard_coords(&RootSystemSpec::e(4)).unwrap();
    assert_eq!(e4[0].1, parse("s2 - 3/5*s1^2", 4));
    let e5 = standard_coords(&RootSystemSpec::e(5)).unwrap();
    assert_eq!(e5[0].1, parse("-2*s2 + 5/4*s1^2", 5));
    let [minus, plus] = d2_constant_terms();
    let g = g_dist(2);
    let quarter = Rational::new(-1, 4);
    assert_eq!(minus, (&g.delta[0] - &g.gamma.scale(&2.into())).scale(&quarter));
    assert_eq!(plus, (&g.delta[0] + &g.gamma.scale(&2.into())).scale(&quarter));
    assert!(standard_coords(&RootSystemSpec::e(6)).is_err());
    let names: Vec<String> = standard_coords(&RootSystemSpec::d(4)).unwrap().into_iter().map(|c| c.0).collect();
    assert_eq!(names, ["gamma4", "delta2", "delta4", "delta6"]);
    assert_eq!(standard_coords(&RootSystemSpec::a(1)).unwrap()[0].1, parse("s2", 2));
}

fn subscript_weight(name: &str) -> u64 {
    let digits: String = name.chars().skip_while(|c| !c.is_ascii_digit()).take_while(|c| c.is_ascii_digit()).collect();
    digits.parse().unwrap()
}

#[test]
fn coordinates_are_homogeneous_of_their_weight() {
    for spec in specs_with_closed_forms() {
        for (name, p) in standard_coords(&spec).unwrap() {
            assert_eq!(p.homogeneity(), Homogeneity::Weight(subscript_weight(&name)), "{spec} {name}");
        }
    }
}

#[test]
fn coordinates_are_invariant_full_route() {
    let mut specs: Vec<RootSystemSpec> = (1..=6).map(RootSystemSpec::a).collect();
    specs.extend((2..=6).map(RootSystemSpec::d));
    specs.extend((3..=5).map(RootSystemSpec::e));
    for spec in specs {
        for (name, p) in standard_coords(&spec).unwrap() {
            assert!(invariant_full(&spec, &p).unwrap(), "{spec} {name}");
        }
    }
}

#[test]
fn coordinates_are_invariant_block_route() {
    for spec in specs_with_closed_forms() {
        for (name, p) in standard_coords(&spec).unwrap() {
            assert!(invariant_blocks(&spec, &p).unwrap(), "{spec} {name}");
        }
    }
}

#[test]
fn non_invariants_are_detected_by_both_routes() {
    let e4 = RootSystemSpec::e(4);
    let s2 = parse("s2", 4);
    assert!(!invariant_full(&e4, &s2).unwrap());
    assert!(!invariant_blocks(&e4, &s2).unwrap());
    let d4 = RootSystemSpec::d(4);
    let s1 = parse("s1", 4);
    assert!(!invariant_full(&d4, &s1).unwrap());
    assert!(!invariant_blocks(&d4, &s1).unwrap());
}

#[test]
fn e4_e5_rederivation() {
    let report = e45_check().unwrap();
    assert_eq!(report.rows.len(), 9);
    assert!(report.all_pass(), "{:?}", report.rows);
}

#[test]
fn e5_sign_variant_is_not_invariant() {
    let e5 = RootSystemSpec::e(5);
    let variant = parse(E5_EPS6_SIGN_VARIANT, 5);
    let eps6 = standard_coords(&e5).unwrap().into_iter().find(|c| c.0 == "eps6").unwrap().1;
    assert_eq!(&eps6 - &variant, parse("2*s3^2", 5));
    assert!(!invariant_full(&e5, &variant).unwrap());
    assert!(!invariant_blocks(&e5, &variant).unwrap());
}
