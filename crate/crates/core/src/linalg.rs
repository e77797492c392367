//! Sparse exact linear algebra over the rationals.

use rustc_hash::FxHashMap;

use crate::poly::{Monomial, Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error("equation is not linear in the unknown `{0}`")]
    NonLinear(String),
}

type Row = Vec<(usize, Rational)>;

/// Equations `sum a_j x_j = b` with sparse rows.
#[derive(Debug, Clone, Default)]
pub struct LinearSystem {
    ncols: usize,
    rows: Vec<(Row, Rational)>,
}

#[derive(Debug, Clone)]
pub struct Solution {
    /// A particular solution with every free unknown set to zero.
    pub values: Vec<Rational>,
    pub rank: usize,
    /// Indices of unknowns left free.
    pub free: Vec<usize>,
}

impl Solution {
    pub fn nullity(&self) -> usize {
        self.free.len()
    }
}

fn axpy(row: &Row, scale: &Rational, other: &Row) -> Row {
    // row + scale * other, both sorted by column
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < other.len() {
        if j == other.len() || (i < row.len() && row[i].0 < other[j].0) {
            out.push(row[i].clone());
            i += 1;
        } else if i == row.len() || other[j].0 < row[i].0 {
            out.push((other[j].0, scale * &other[j].1));
            j += 1;
        } else {
            let v = &row[i].1 + &(scale * &other[j].1);
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl LinearSystem {
    pub fn new(ncols: usize) -> Self {
        LinearSystem { ncols, rows: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn push(&mut self, mut row: Row, rhs: Rational) {
        row.retain(|(_, c)| !c.is_zero());
        row.sort_by_key(|(j, _)| *j);
        self.rows.push((row, rhs));
    }

    /// Adds one equation per monomial in the non-unknown variables: the
    /// coefficient of that monomial in `p` must vanish. `p` must be affine in
    /// the unknowns, which are matched by name.
    pub fn push_polynomial(&mut self, p: &Polynomial, unknowns: &FxHashMap<String, usize>) -> Result<(), LinalgError> {
        let vars = p.vars();
        let col: Vec<Option<usize>> = (0..vars.len()).map(|i| unknowns.get(vars.name(i)).copied()).collect();
        let mut eqs: FxHashMap<Monomial, (Row, Rational)> = FxHashMap::default();
        for (m, c) in p.terms() {
            let (u, rest) = m.split(|v| col[v].is_some());
            let e = eqs.entry(rest).or_insert_with(|| (Vec::new(), Rational::zero()));
            match u.iter().collect::<Vec<_>>().as_slice() {
                [] => e.1 = &e.1 - c,
                [(v, 1)] => e.0.push((col[*v].expect("unknown"), c.clone())),
                [(v, _), ..] => return Err(LinalgError::NonLinear(vars.name(*v).to_string())),
            }
        }
        let mut keys: Vec<Monomial> = eqs.keys().cloned().collect();
        keys.sort_by(|a, b| b.cmp_grlex(a));
        for k in keys {
            let (row, rhs) = eqs.remove(&k).expect("key");
            self.push(row, rhs);
        }
        Ok(())
    }

    /// Gaussian elimination, deterministic in the row order.
    pub fn solve(&self) -> Result<Solution, LinalgError> {
        let mut pivots: FxHashMap<usize, (Row, Rational)> = FxHashMap::default();
        for (row, rhs) in &self.rows {
            let (mut row, mut rhs) = (row.clone(), rhs.clone());
            loop {
                let Some((lead, lc)) = row.first().cloned() else {
                    if !rhs.is_zero() {
                        return Err(LinalgError::Inconsistent);
                    }
                    break;
                };
                match pivots.get(&lead) {
                    Some((prow, prhs)) => {
                        let f = -&lc;
                        row = axpy(&row, &f, prow);
                        rhs = &rhs + &(&f * prhs);
                    }
                    None => {
                        let inv = lc.recip().expect("nonzero pivot");
                        let row: Row = row.iter().map(|(j, c)| (*j, c * &inv)).collect();
                        pivots.insert(lead, (row, &rhs * &inv));
                        break;
                    }
                }
            }
        }
        let mut values = vec![Rational::zero(); self.ncols];
        let mut cols: Vec<usize> = pivots.keys().copied().collect();
        cols.sort_unstable();
        for &c in cols.iter().rev() {
            let (row, rhs) = &pivots[&c];
            let mut v = rhs.clone();
            for (j, a) in &row[1..] {
                v -= &(a * &values[*j]);
            }
            values[c] = v;
        }
        let free = (0..self.ncols).filter(|j| !pivots.contains_key(j)).collect();
        Ok(Solution { values, rank: pivots.len(), free })
    }
}

/// Inverse of a square matrix by Gauss-Jordan elimination; `None` when singular.
pub fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip()?;
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..2 * n {
                    let v = &a[r][j] - &(&f * &a[col][j]);
                    a[r][j] = v;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}
