//! Small exact linear algebra used by the halfspace enumerator and the
//! universality rank test.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::rational::Rational;

/// Reduced row echelon form in place; returns pivot columns.
pub(crate) fn rref(rows: &mut [Vec<Rational>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row[c..ncols].iter_mut().zip(&pivot_row[c..ncols]) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub(crate) fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of { v : rows · v = 0 } for vectors of length `ncols`.
pub(crate) fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::from_integer(1.into());
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Incremental integer echelon basis; rank over the rationals of the rows
/// pushed so far.
#[derive(Debug, Default)]
pub(crate) struct IntegerEchelon {
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl IntegerEchelon {
    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a row; returns whether the rank grew.
    pub(crate) fn push(&mut self, row: &[i64]) -> bool {
        let mut v: Vec<BigInt> = row.iter().map(|&x| BigInt::from(x)).collect();
        for (pc, r) in &self.rows {
            if v[*pc].is_zero() {
                continue;
            }
            let a = r[*pc].clone();
            let b = v[*pc].clone();
            for (vj, rj) in v.iter_mut().zip(r) {
                *vj = &a * &*vj - &b * rj;
            }
            normalize(&mut v);
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(pc) => {
                normalize(&mut v);
                self.rows.push((pc, v));
                true
            }
            None => false,
        }
    }
}

fn normalize(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && g.abs() != BigInt::from(1) {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}
