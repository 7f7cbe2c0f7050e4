//! Dense exact-rational simplex for `max c·x  s.t.  A x <= b, x >= 0` with
//! `b >= 0`, so the all-slack basis is feasible and no phase one is needed.
//! Bland's rule picks both the entering and the leaving variable, which rules
//! out cycling.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub primal: Vec<Rational>,
    /// Optimal multipliers of the `A x <= b` constraints.
    pub dual: Vec<Rational>,
    pub objective: Rational,
    pub pivots: usize,
}

pub fn maximize(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> Result<LpSolution> {
    let m = a.len();
    let n = c.len();
    if b.len() != m || a.iter().any(|row| row.len() != n) {
        return Err(Error::input("LP dimensions do not agree"));
    }
    if b.iter().any(Signed::is_negative) {
        return Err(Error::input("LP right-hand side must be nonnegative"));
    }

    let width = n + m;
    // constraint rows: [A | I], right-hand side kept separately
    let mut tableau: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut t = row.clone();
            t.extend((0..m).map(|k| if k == i { Rational::from_integer(1.into()) } else { Rational::zero() }));
            t
        })
        .collect();
    let mut rhs: Vec<Rational> = b.to_vec();
    let mut basis: Vec<usize> = (n..width).collect();
    // reduced costs c_j - c_B B^-1 A_j
    let mut reduced: Vec<Rational> = c.iter().cloned().chain((0..m).map(|_| Rational::zero())).collect();
    let mut objective = Rational::zero();
    let mut pivots = 0;

    while let Some(enter) = reduced.iter().position(Signed::is_positive) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            let coef = &tableau[i][enter];
            if !coef.is_positive() {
                continue;
            }
            let ratio = &rhs[i] / coef;
            let better = match &leave {
                None => true,
                Some((best, best_ratio)) => {
                    ratio < *best_ratio || (ratio == *best_ratio && basis[i] < basis[*best])
                }
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((row, _)) = leave else {
            return Err(Error::input("LP is unbounded"));
        };

        let pivot = tableau[row][enter].clone();
        for v in tableau[row].iter_mut() {
            *v /= &pivot;
        }
        rhs[row] /= &pivot;
        let pivot_row = tableau[row].clone();
        let pivot_rhs = rhs[row].clone();
        for i in 0..m {
            if i == row || tableau[i][enter].is_zero() {
                continue;
            }
            let factor = tableau[i][enter].clone();
            for (v, p) in tableau[i].iter_mut().zip(&pivot_row) {
                *v -= &factor * p;
            }
            rhs[i] -= &factor * &pivot_rhs;
        }
        let factor = reduced[enter].clone();
        for (v, p) in reduced.iter_mut().zip(&pivot_row) {
            *v -= &factor * p;
        }
        objective += &factor * &pivot_rhs;
        basis[row] = enter;
        pivots += 1;
    }

    let mut primal = vec![Rational::zero(); n];
    for (i, &var) in basis.iter().enumerate() {
        if var < n {
            primal[var] = rhs[i].clone();
        }
    }
    let dual = reduced[n..].iter().map(|d| -d).collect();
    Ok(LpSolution { primal, dual, objective, pivots })
}
