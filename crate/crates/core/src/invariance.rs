//! Weyl-invariance checks for polynomials in `s1..sn`.
//!
//! Two routes. The full route expands in the functionals `t_i`, applies a
//! reflection and reduces back to `s`. The block route splits the
//! functionals into two groups that the reflection preserves up to symmetric
//! shifts, and compares in the elementary symmetric functions `a_j`, `b_j`
//! of the groups, which stay algebraically independent and keep the
//! intermediate polynomials small.

use std::sync::Arc;

use crate::distpoly::{elementary_rules, symmetric_reduce, symmetric_reduce_in, DistError};
use crate::poly::{Polynomial, RuleSet, VarTable};
use crate::rootsys::{weyl_action, Family, RootError, RootSystemSpec};

#[derive(Debug, thiserror::Error)]
pub enum InvarianceError {
    #[error(transparent)]
    Dist(#[from] DistError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("{0} has no block decomposition for its extra reflection")]
    NoBlocks(RootSystemSpec),
}

/// Checks `p(s) = p(r_g s)` for one simple reflection by expanding in `t`.
pub fn fixed_full(spec: &RootSystemSpec, p: &Polynomial, g: usize) -> Result<bool, InvarianceError> {
    let n = spec.n();
    let in_t = p.substitute_horner(&elementary_rules(n)).map_err(DistError::from)?;
    let moved = in_t.substitute_horner(&weyl_action(spec, g)?).map_err(DistError::from)?;
    // A non-symmetric image already shows the polynomial is moved.
    match symmetric_reduce(&moved, n) {
        Ok(back) => Ok(back == *p),
        Err(DistError::NotSymmetric(_)) => Ok(false),
        Err(e) => Err(e.into()),
    }
}

/// Checks every simple reflection of `spec` by the full route.
pub fn invariant_full(spec: &RootSystemSpec, p: &Polynomial) -> Result<bool, InvarianceError> {
    for g in spec.root_indices() {
        if !fixed_full(spec, p, g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The reflection that is not a permutation of the `t_i`, and the size of
/// the first block of functionals.
fn extra_reflection(spec: &RootSystemSpec) -> Option<(usize, usize)> {
    let n = spec.n();
    match spec.family() {
        Family::A => None,
        Family::D => Some((n, n - 2)),
        Family::E => Some((0, 3)),
    }
}

fn product(vars: &Arc<VarTable>, forms: &[Polynomial]) -> Polynomial {
    let u = Polynomial::var(vars, "U").expect("U");
    forms.iter().fold(Polynomial::one(vars), |acc, t| &acc * &(&u + t))
}

/// `s_i` images before and after the reflection, as polynomials in the
/// block symmetric functions `a1..ak`, `b1..b(n-k)`.
pub fn block_images(spec: &RootSystemSpec) -> Result<(RuleSet, RuleSet), InvarianceError> {
    let n = spec.n();
    let (g, k) = extra_reflection(spec).ok_or(InvarianceError::NoBlocks(*spec))?;
    let a: Vec<String> = (1..=k).map(|i| format!("a{i}")).collect();
    let b: Vec<String> = (1..=n - k).map(|i| format!("b{i}")).collect();
    let t: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
    let mut decl: Vec<(String, u32)> = vec![("U".into(), 1)];
    decl.extend(t.iter().map(|x| (x.clone(), 1)));
    decl.extend(a.iter().enumerate().map(|(i, x)| (x.clone(), i as u32 + 1)));
    decl.extend(b.iter().enumerate().map(|(i, x)| (x.clone(), i as u32 + 1)));
    let vars = VarTable::new(&decl).map_err(DistError::from)?;
    let tv: Vec<Polynomial> = t.iter().map(|x| Polynomial::var(&vars, x).expect("t")).collect();
    let r = weyl_action(spec, g)?;
    let moved: Vec<Polynomial> = tv.iter().map(|x| x.substitute(&r)).collect();

    let to_blocks = |p: &Polynomial| -> Result<Polynomial, InvarianceError> {
        let p = symmetric_reduce_in(p, &t[..k], &a)?;
        Ok(symmetric_reduce_in(&p, &t[k..], &b)?)
    };
    let before = to_blocks(&product(&vars, &tv))?;
    let after = to_blocks(&product(&vars, &moved))?;
    let rules = |f: &Polynomial| -> RuleSet {
        let c = f.coefficients_in("U");
        (1..=n).map(|i| (format!("s{i}"), c[n - i].clone())).collect()
    };
    Ok((rules(&before), rules(&after)))
}

/// Checks invariance under the non-permutation reflection by the block route.
/// The permutation reflections fix every polynomial in `s` by construction.
pub fn invariant_blocks(spec: &RootSystemSpec, p: &Polynomial) -> Result<bool, InvarianceError> {
    if extra_reflection(spec).is_none() {
        return Ok(true);
    }
    let (before, after) = block_images(spec)?;
    Ok(fixed_by_images(p, &(before, after)))
}

/// Same as [`invariant_blocks`] with precomputed images, for checking many polynomials.
pub fn fixed_by_images(p: &Polynomial, images: &(RuleSet, RuleSet)) -> bool {
    let before = p.substitute_horner(&images.0).expect("block tables agree");
    let after = p.substitute_horner(&images.1).expect("block tables agree");
    before == after
}
