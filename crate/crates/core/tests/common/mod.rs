//! Reference implementations used only by tests. They work straight from the
//! definitions on plain matrices and share no code with the library's search
//! or LP routines.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use saddles::{DominanceMode, Rational, ZeroSumGame};

pub type Matrix = Vec<Vec<Rational>>;
pub type Product = (Vec<usize>, Vec<usize>);

pub fn matrix(g: &ZeroSumGame) -> Matrix {
    (0..g.rows()).map(|r| g.row(r).to_vec()).collect()
}

pub fn int_matrix(rows: &[&[i64]]) -> Matrix {
    rows.iter().map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect()).collect()
}

/// All nonempty subsets of `0..n`, as sorted index lists.
pub fn subsets(n: usize) -> Vec<Vec<usize>> {
    (1u32..(1 << n)).map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect()).collect()
}

fn dominates(pairs: &[(Rational, Rational)], mode: DominanceMode) -> bool {
    // pairs are (dominator value, dominated value) oriented so that bigger is better
    match mode {
        DominanceMode::Weak => pairs.iter().all(|(x, y)| x >= y),
        DominanceMode::Strict => pairs.iter().all(|(x, y)| x > y),
        DominanceMode::WeakRequireStrict => {
            pairs.iter().all(|(x, y)| x >= y) && pairs.iter().any(|(x, y)| x > y)
        }
    }
}

pub fn is_gsp(a: &Matrix, rows: &[usize], cols: &[usize], mode: DominanceMode) -> bool {
    let n = a.len();
    let m = a[0].len();
    let rows_ok = (0..n).filter(|r| !rows.contains(r)).all(|out| {
        rows.iter().any(|&inside| {
            let pairs: Vec<_> = cols.iter().map(|&c| (a[inside][c].clone(), a[out][c].clone())).collect();
            dominates(&pairs, mode)
        })
    });
    let cols_ok = (0..m).filter(|c| !cols.contains(c)).all(|out| {
        cols.iter().any(|&inside| {
            // the column player prefers smaller entries
            let pairs: Vec<_> = rows.iter().map(|&r| (-a[r][inside].clone(), -a[r][out].clone())).collect();
            dominates(&pairs, mode)
        })
    });
    rows_ok && cols_ok
}

pub fn gsps(a: &Matrix, mode: DominanceMode) -> Vec<Product> {
    let rs = subsets(a.len());
    let cs = subsets(a[0].len());
    let mut out = Vec::new();
    for r in &rs {
        for c in &cs {
            if is_gsp(a, r, c, mode) {
                out.push((r.clone(), c.clone()));
            }
        }
    }
    out
}

fn contained(inner: &Product, outer: &Product) -> bool {
    inner.0.iter().all(|r| outer.0.contains(r)) && inner.1.iter().all(|c| outer.1.contains(c))
}

/// Inclusion-minimal GSPs by pairwise comparison of every GSP against every other.
pub fn saddles(a: &Matrix, mode: DominanceMode) -> BTreeSet<Product> {
    let all = gsps(a, mode);
    all.iter()
        .filter(|p| !all.iter().any(|q| q != *p && contained(q, p)))
        .cloned()
        .collect()
}

/// Solves `m x = rhs` exactly; `None` when the matrix is singular.
pub fn solve(mut m: Matrix, mut rhs: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = &m[r][col] / &m[col][col];
                let pivot_row = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(pivot_row).skip(col) {
                    *x -= &f * y;
                }
                let d = &f * &rhs[col];
                rhs[r] -= d;
            }
        }
    }
    Some((0..n).map(|i| &rhs[i] / &m[i][i]).collect())
}

/// Solves `sum_i p_i a[i][j] = v` for `j` in `others`, `sum p = 1`, with `p`
/// supported on `support`. Returns `(p, v)`.
fn bordered(a: &Matrix, support: &[usize], others: &[usize], transpose: bool) -> Option<(Vec<Rational>, Rational)> {
    let k = support.len();
    let at = |i: usize, j: usize| if transpose { a[j][i].clone() } else { a[i][j].clone() };
    let mut m: Matrix = Vec::with_capacity(k + 1);
    for &j in others {
        let mut row: Vec<Rational> = support.iter().map(|&i| at(i, j)).collect();
        row.push(-Rational::one());
        m.push(row);
    }
    let mut last = vec![Rational::one(); k];
    last.push(Rational::zero());
    m.push(last);
    let mut rhs = vec![Rational::zero(); k];
    rhs.push(Rational::one());
    let sol = solve(m, rhs)?;
    Some((sol[..k].to_vec(), sol[k].clone()))
}

/// Equilibrium found by support enumeration: every pair of equal-size
/// supports, each indifference system solved exactly, then optimality checked
/// against every pure deviation in the full game.
pub fn support_equilibrium(a: &Matrix) -> (Vec<Rational>, Vec<Rational>, Rational) {
    let n = a.len();
    let m = a[0].len();
    for i_set in subsets(n) {
        for j_set in subsets(m).into_iter().filter(|j| j.len() == i_set.len()) {
            let Some((xs, v)) = bordered(a, &i_set, &j_set, false) else { continue };
            let Some((ys, w)) = bordered(a, &j_set, &i_set, true) else { continue };
            if v != w || xs.iter().chain(&ys).any(|p| p.is_negative()) {
                continue;
            }
            let mut x = vec![Rational::zero(); n];
            let mut y = vec![Rational::zero(); m];
            for (&i, p) in i_set.iter().zip(xs) {
                x[i] = p;
            }
            for (&j, q) in j_set.iter().zip(ys) {
                y[j] = q;
            }
            let col_ok = (0..m).all(|j| (0..n).map(|i| &x[i] * &a[i][j]).sum::<Rational>() >= v);
            let row_ok = (0..n).all(|i| (0..m).map(|j| &a[i][j] * &y[j]).sum::<Rational>() <= v);
            if col_ok && row_ok {
                return (x, y, v);
            }
        }
    }
    panic!("support enumeration found no equilibrium");
}

pub fn support_value(a: &Matrix) -> Rational {
    support_equilibrium(a).2
}

/// Uniform integer matrix drawn without going through the library generator.
pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> Matrix {
    (0..rows)
        .map(|_| (0..cols).map(|_| Rational::from_integer(rng.random_range(-bound..=bound).into())).collect())
        .collect()
}

pub fn game_of(a: &Matrix) -> ZeroSumGame {
    ZeroSumGame::new(a.len(), a[0].len(), a.iter().flatten().cloned().collect()).unwrap()
}

pub fn product_of(p: &saddles::ActionProduct) -> Product {
    (p.row_set().to_vec(), p.col_set().to_vec())
}
