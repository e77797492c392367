use rdpinv::poly::{Polynomial, Rational, RuleSet, VarTable};
use rdpinv::rootsys::*;
use std::sync::Arc;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn all_specs() -> Vec<RootSystemSpec> {
    let mut v: Vec<RootSystemSpec> = (0..=8).map(RootSystemSpec::a).collect();
    v.extend((2..=8).map(RootSystemSpec::d));
    v.extend((3..=8).map(RootSystemSpec::e));
    v
}

fn with_s1(spec: &RootSystemSpec) -> (Arc<VarTable>, RuleSet) {
    let vars = spec.t_table().extended(&[("s1", 1)]).unwrap();
    let mut sum = Polynomial::zero(&vars);
    for i in 1..=spec.n() {
        sum = &sum + &Polynomial::var(&vars, &format!("t{i}")).unwrap();
    }
    let mut r = RuleSet::new();
    r.insert("s1".into(), sum);
    (vars, r)
}

fn t_sum(vars: &Arc<VarTable>, from: usize, to: usize) -> String {
    let _ = vars;
    let terms: Vec<String> = (from..=to).map(|i| format!("t{i}")).collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

#[test]
fn dual_basis_matches_closed_forms() {
    for spec in all_specs() {
        let n = spec.n() as i64;
        let (vars, s1) = with_s1(&spec);
        let rules = dual_basis_in_t(&spec);
        for (name, got) in &rules {
            let i: i64 = name[2..].parse().unwrap();
            let text = match spec.family() {
                Family::A => t_sum(&vars, 1, i as usize),
                Family::D if i == n => "1/2*s1".to_string(),
                Family::D if i == n - 1 => format!("1/2*s1 - t{n}"),
                Family::D => format!("s1 - ({})", t_sum(&vars, i as usize + 1, n as usize)),
                Family::E => {
                    let c = match i {
                        0 => q(3, n - 9),
                        1 => q(2, n - 9),
                        2 => q(4, n - 9),
                        _ => q(9 - i, n - 9),
                    };
                    let rest = if i == 0 { "0".into() } else { t_sum(&vars, 1, i as usize) };
                    format!("{c}*s1 + {rest}")
                }
            };
            let want = Polynomial::parse(&text, &vars).unwrap().substitute(&s1);
            assert_eq!(got, &want, "{spec} {name}");
        }
    }
}

#[test]
fn functionals_match_closed_forms() {
    for spec in all_specs() {
        let n = spec.n();
        let fs = distinguished_functionals(&spec);
        assert_eq!(fs.len(), n);
        let vars = fs[0].vars().clone();
        let vd = |i: usize| -> Polynomial {
            match Polynomial::var(&vars, &format!("vd{i}")) {
                Ok(p) => p,
                Err(_) => Polynomial::zero(&vars),
            }
        };
        for (k, got) in fs.iter().enumerate() {
            let i = k + 1;
            let want = match spec.family() {
                Family::A => vd(i) - vd(i - 1),
                Family::D if i == n - 1 => vd(n - 1) - vd(n - 2) + vd(n),
                Family::D if i == n => vd(n) - vd(n - 1),
                Family::D => vd(i) - vd(i - 1),
                Family::E => {
                    let v0 = &vd(0);
                    match i {
                        1 => vd(1) - v0.scale(&q(2, 3)),
                        2 => vd(2) - vd(1) - v0.scale(&q(2, 3)),
                        3 => vd(3) - vd(2) - v0.scale(&q(2, 3)),
                        _ => vd(i) - vd(i - 1) + v0.scale(&q(1, 3)),
                    }
                }
            };
            assert_eq!(got, &want, "{spec} t{i}");
        }
    }
}

#[test]
fn functionals_and_dual_basis_are_inverse() {
    for spec in all_specs() {
        let dual = dual_basis_in_t(&spec);
        let vars = spec.t_table();
        let sum =
            (1..=spec.n()).fold(Polynomial::zero(&vars), |a, i| a + Polynomial::var(&vars, &format!("t{i}")).unwrap());
        for (k, t) in distinguished_functionals(&spec).iter().enumerate() {
            let back = t.substitute(&dual);
            let ti = Polynomial::var(&vars, &format!("t{}", k + 1)).unwrap();
            let diff = &back - &ti;
            match spec.family() {
                Family::A => {
                    // Agreement holds modulo s1.
                    assert!(diff.is_zero() || diff == -&sum, "{spec}");
                }
                _ => assert!(diff.is_zero(), "{spec}"),
            }
        }
    }
}

#[test]
fn reflections_match_closed_forms() {
    for spec in all_specs() {
        let n = spec.n();
        let vars = spec.t_table();
        let t = |i: usize| Polynomial::var(&vars, &format!("t{i}")).unwrap();
        for g in spec.root_indices() {
            let r = weyl_action(&spec, g).unwrap();
            for i in 1..=n {
                let want = match (spec.family(), g) {
                    (Family::E, 0) => {
                        let s = t(1) + t(2) + t(3);
                        if i <= 3 {
                            t(i) - s.scale(&q(2, 3))
                        } else {
                            t(i) + s.scale(&q(1, 3))
                        }
                    }
                    (Family::D, g) if g == n => match i {
                        i if i == n - 1 => -t(n),
                        i if i == n => -t(n - 1),
                        i => t(i),
                    },
                    (_, g) if i == g => t(g + 1),
                    (_, g) if i == g + 1 => t(g),
                    _ => t(i),
                };
                assert_eq!(r[&format!("t{i}")], want, "{spec} r{g} t{i}");
            }
        }
    }
}

#[test]
fn reflections_are_involutions() {
    for spec in all_specs() {
        for g in spec.root_indices() {
            let r = weyl_action(&spec, g).unwrap();
            for (name, image) in &r {
                let twice = image.substitute(&r);
                assert_eq!(twice, Polynomial::var(&spec.t_table(), name).unwrap(), "{spec} r{g}");
            }
        }
    }
    assert!(weyl_action(&RootSystemSpec::e(6), 6).is_err());
}

/// Expected coefficients of the orthogonal vector at `v_k`, keyed by
/// ambient label, written as the closed forms of the reference table.
fn expected_tilde(spec: &RootSystemSpec, k: usize) -> Vec<(usize, Rational)> {
    let n = spec.n() as i64;
    let ki = k as i64;
    let mut out = Vec::new();
    match spec.family() {
        Family::A => {
            for i in 1..ki {
                out.push((i as usize, q(i, ki)));
            }
            for i in 1..n - ki {
                out.push(((ki + i) as usize, q(n - ki - i, n - ki)));
            }
        }
        Family::D if ki == n => {
            for i in 1..=n - 2 {
                out.push((i as usize, q(2 * i, n)));
            }
            out.push(((n - 1) as usize, q(n - 2, n)));
        }
        Family::D => {
            for i in 1..ki {
                out.push((i as usize, q(i, ki)));
            }
            for i in 1..=n - ki - 2 {
                out.push(((ki + i) as usize, Rational::one()));
            }
            out.push(((n - 1) as usize, q(1, 2)));
            out.push((n as usize, q(1, 2)));
        }
        Family::E => match k {
            0 => {
                out.push((1, q(n - 3, n)));
                out.push((2, q(2 * n - 6, n)));
                for i in 3..n {
                    out.push((i as usize, q(3 * n - 3 * i, n)));
                }
            }
            1 => {
                // Component labels run n-1, ..., 3, then 2, then 0.
                for i in 1..=n - 3 {
                    out.push(((n - i) as usize, q(i, 2)));
                }
                out.push((2, q(n - 1, 4)));
                out.push((0, q(n - 3, 4)));
            }
            2 => {
                out.push((1, q(1, 2)));
                out.push((0, q(n - 3, n - 1)));
                for i in 2..=n - 2 {
                    out.push(((i + 1) as usize, q(2 * n - 2 * i - 2, n - 1)));
                }
            }
            _ => {
                out.push((0, q(3, 9 - ki)));
                out.push((1, q(2, 9 - ki)));
                out.push((2, q(4, 9 - ki)));
                for i in 3..ki {
                    out.push((i as usize, q(9 - i, 9 - ki)));
                }
                for i in 1..n - ki {
                    out.push(((ki + i) as usize, q(n - ki - i, n - ki)));
                }
            }
        },
    }
    out.sort_by_key(|(j, _)| *j);
    out
}

fn supported_splits() -> Vec<(RootSystemSpec, usize)> {
    let mut v = Vec::new();
    for spec in all_specs() {
        for k in spec.root_indices() {
            if vertex_split(&spec, k).is_ok() {
                v.push((spec, k));
            }
        }
    }
    v
}

#[test]
fn split_components_and_vectors_match_table() {
    let splits = supported_splits();
    for (spec, k) in &splits {
        let s = vertex_split(spec, *k).unwrap();
        let mut got = s.tilde.clone();
        got.sort_by_key(|(j, _)| *j);
        assert_eq!(got, expected_tilde(spec, *k), "{spec} v{k}");
        // Orthogonality checked directly in the lattice basis.
        let mut w = spec.root(*k).unwrap();
        for (j, a) in &s.tilde {
            for (x, y) in w.iter_mut().zip(spec.root(*j).unwrap()) {
                *x += &(a * &y);
            }
        }
        for c in s.components() {
            for label in &c.labels {
                assert!(inner(&w, &spec.root(*label).unwrap()).is_zero());
            }
        }
        let types: Vec<String> = s.components().iter().map(|c| c.spec.to_string()).collect();
        let n = spec.n();
        let want: Vec<String> = match (spec.family(), *k) {
            (Family::A, k) => vec![format!("A{}", k - 1), format!("A{}", n - k - 1)],
            (Family::D, k) if k == n => vec![format!("A{}", n - 1)],
            (Family::D, k) => vec![format!("A{}", k - 1), format!("D{}", n - k)],
            (Family::E, 0) => vec![format!("A{}", n - 1)],
            (Family::E, 1) => vec![format!("D{}", n - 1)],
            (Family::E, 2) => vec!["A1".into(), format!("A{}", n - 2)],
            (Family::E, k) => vec![format!("E{k}"), format!("A{}", n - k - 1)],
        };
        assert_eq!(types, want, "{spec} v{k}");
    }
    // Every vertex but (D_n, v_{n-1}) is covered.
    for n in 2..=8 {
        assert!(vertex_split(&RootSystemSpec::d(n), n - 1).is_err());
    }
    assert_eq!(splits.len(), 36 + 28 + 33);
}

fn split_poly(s: &VertexSplit, text: &str) -> Polynomial {
    s.reduce(&Polynomial::parse(text, &s.vars).unwrap())
}

#[test]
fn split_functionals_match_closed_forms() {
    // Type A, every k.
    for m in 2..=9usize {
        let spec = RootSystemSpec::a(m - 1);
        for k in 1..m {
            let s = vertex_split(&spec, k).unwrap();
            for i in 1..=k {
                let want = split_poly(&s, &format!("1/{k}*mu1 + tp{i}"));
                assert_eq!(s.rules[&format!("t{i}")], want);
            }
            for i in 1..=m - k {
                let want = split_poly(&s, &format!("-1/{}*mu1 + tpp{i}", m - k));
                assert_eq!(s.rules[&format!("t{}", k + i)], want);
            }
        }
    }
    for n in 3..=8i64 {
        let spec = RootSystemSpec::e(n as usize);
        let s = vertex_split(&spec, 1).unwrap();
        let sp1: String = (1..n).map(|j| format!("tp{j}")).collect::<Vec<_>>().join(" + ");
        let want = split_poly(&s, &format!("{}*mu1 - 1/3*({sp1})", q(9 - n, 6)));
        assert_eq!(s.rules["t1"], want, "E{n} t1");
        for i in 1..n {
            let want = split_poly(&s, &format!("{}*mu1 + 1/6*({sp1}) - tp{}", q(n - 9, 12), n - i));
            assert_eq!(s.rules[&format!("t{}", i + 1)], want, "E{n} t{}", i + 1);
        }

        let s = vertex_split(&spec, 2).unwrap();
        for i in 1..=2 {
            let want = split_poly(&s, &format!("{}*mu1 - 2/3*tpp1 + tp{i}", q(9 - n, 6 * n - 6)));
            assert_eq!(s.rules[&format!("t{i}")], want);
        }
        for i in 2..n {
            let want = split_poly(&s, &format!("{}*mu1 + 1/3*tpp1 + tpp{i}", q(n - 9, 3 * n - 3)));
            assert_eq!(s.rules[&format!("t{}", i + 1)], want);
        }
        let missing = split_poly(&s, &format!("{}*mu1 + 4/3*tpp1", q(n - 9, 3 * n - 3)));
        assert_eq!(s.missing.as_ref().unwrap(), &missing);
    }
}
