use smallvec::SmallVec;
use std::cmp::Ordering;

/// Sparse exponent vector: packed `(var << 16) | exp` words sorted by variable
/// index, no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Monomial(SmallVec<[u32; 6]>);

#[inline]
fn pack(var: usize, exp: u32) -> u32 {
    debug_assert!(exp > 0 && exp < 1 << 16 && var < 1 << 16);
    ((var as u32) << 16) | exp
}

#[inline]
fn var_of(w: u32) -> usize {
    (w >> 16) as usize
}

#[inline]
fn exp_of(w: u32) -> u32 {
    w & 0xffff
}

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(i: usize) -> Self {
        let mut v = SmallVec::new();
        v.push(pack(i, 1));
        Monomial(v)
    }

    /// From `(var index, exponent)` pairs in any order; repeated indices add.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut v: Vec<(usize, u32)> = pairs.into_iter().filter(|p| p.1 > 0).collect();
        v.sort_unstable();
        let mut out: SmallVec<[u32; 6]> = SmallVec::new();
        for (i, e) in v {
            match out.last_mut() {
                Some(last) if var_of(*last) == i => *last = pack(i, exp_of(*last) + e),
                _ => out.push(pack(i, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|&w| (var_of(w), exp_of(w)))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exp(&self, var: usize) -> u32 {
        match self.0.binary_search_by(|w| var_of(*w).cmp(&var)) {
            Ok(i) => exp_of(self.0[i]),
            Err(_) => 0,
        }
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&w| exp_of(w)).sum()
    }

    pub fn weighted_degree(&self, weights: impl Fn(usize) -> u32) -> u64 {
        self.iter().map(|(v, e)| weights(v) as u64 * e as u64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        if a.is_empty() {
            return other.clone();
        }
        if b.is_empty() {
            return self.clone();
        }
        let mut out: SmallVec<[u32; 6]> = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let (va, vb) = (var_of(a[i]), var_of(b[j]));
            match va.cmp(&vb) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push(pack(va, exp_of(a[i]) + exp_of(b[j])));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn pow(&self, e: u32) -> Monomial {
        if e == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&w| pack(var_of(w), exp_of(w) * e)).collect())
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out: SmallVec<[u32; 6]> = SmallVec::new();
        let mut j = 0;
        for &w in &self.0 {
            let v = var_of(w);
            if j < other.0.len() && var_of(other.0[j]) < v {
                return None;
            }
            if j < other.0.len() && var_of(other.0[j]) == v {
                let (e, f) = (exp_of(w), exp_of(other.0[j]));
                j += 1;
                if f > e {
                    return None;
                }
                if e > f {
                    out.push(pack(v, e - f));
                }
            } else {
                out.push(w);
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Splits into the part on variables satisfying `pred` and the rest.
    pub fn split(&self, pred: impl Fn(usize) -> bool) -> (Monomial, Monomial) {
        let mut yes = SmallVec::new();
        let mut no = SmallVec::new();
        for &w in &self.0 {
            if pred(var_of(w)) {
                yes.push(w);
            } else {
                no.push(w);
            }
        }
        (Monomial(yes), Monomial(no))
    }

    /// Drops variable `var` entirely.
    pub fn without(&self, var: usize) -> Monomial {
        Monomial(self.0.iter().copied().filter(|&w| var_of(w) != var).collect())
    }

    /// Reindexes variables through `map`.
    pub fn remap(&self, map: &[usize]) -> Monomial {
        Monomial::from_pairs(self.iter().map(|(v, e)| (map[v], e)))
    }

    /// Graded lexicographic comparison: total degree first, then the exponent
    /// of the earliest variable where the two differ.
    pub fn cmp_grlex(&self, other: &Monomial) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => self.cmp_lex(other),
            o => o,
        }
    }

    pub fn cmp_lex(&self, other: &Monomial) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let n = a.len().min(b.len());
        for k in 0..n {
            if a[k] == b[k] {
                continue;
            }
            let (va, vb) = (var_of(a[k]), var_of(b[k]));
            return match va.cmp(&vb) {
                Ordering::Less => Ordering::Greater,
                Ordering::Greater => Ordering::Less,
                Ordering::Equal => exp_of(a[k]).cmp(&exp_of(b[k])),
            };
        }
        a.len().cmp(&b.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        let s1sq = Monomial::from_pairs([(0, 2)]);
        let s2 = Monomial::from_pairs([(1, 1)]);
        let s1s2 = Monomial::from_pairs([(0, 1), (1, 1)]);
        let s2sq = Monomial::from_pairs([(1, 2)]);
        assert_eq!(s1sq.cmp_grlex(&s2), Ordering::Greater);
        assert_eq!(s1sq.cmp_grlex(&s1s2), Ordering::Greater);
        assert_eq!(s1s2.cmp_grlex(&s2sq), Ordering::Greater);
        assert_eq!(Monomial::var(0).cmp_lex(&Monomial::var(0).mul(&Monomial::var(1))), Ordering::Less);
    }

    #[test]
    fn div_and_mul_are_inverse() {
        let a = Monomial::from_pairs([(0, 2), (3, 1), (5, 4)]);
        let b = Monomial::from_pairs([(3, 1), (5, 2)]);
        let q = a.div(&b).unwrap();
        assert_eq!(q.mul(&b), a);
        assert!(b.div(&a).is_none());
    }
}
