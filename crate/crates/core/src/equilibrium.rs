//! Saddle points, game values and mixed equilibria.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::game::{ActionProduct, ZeroSumGame};
use crate::lp;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PureSaddlePoint {
    pub row: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedStrategyPair {
    pub row_strategy: Vec<Rational>,
    pub col_strategy: Vec<Rational>,
    /// Row player's expected payoff under the pair.
    pub value: Rational,
}

impl MixedStrategyPair {
    pub fn pure(rows: usize, cols: usize, at: PureSaddlePoint, value: Rational) -> Self {
        MixedStrategyPair {
            row_strategy: point_mass(rows, at.row),
            col_strategy: point_mass(cols, at.col),
            value,
        }
    }

    pub fn row_support(&self) -> Vec<usize> {
        support(&self.row_strategy)
    }

    pub fn col_support(&self) -> Vec<usize> {
        support(&self.col_strategy)
    }
}

fn point_mass(len: usize, at: usize) -> Vec<Rational> {
    (0..len).map(|i| if i == at { Rational::one() } else { Rational::zero() }).collect()
}

fn support(v: &[Rational]) -> Vec<usize> {
    v.iter().enumerate().filter(|(_, p)| p.is_positive()).map(|(i, _)| i).collect()
}

/// Cells that are a maximum of their column and a minimum of their row.
pub fn pure_saddle_points(game: &ZeroSumGame) -> Vec<PureSaddlePoint> {
    let mut out = Vec::new();
    for r in 0..game.rows() {
        let row_min = game.row(r).iter().min().expect("nonempty row");
        for c in 0..game.cols() {
            let v = game.entry(r, c);
            if v == row_min && (0..game.rows()).all(|s| game.entry(s, c) <= v) {
                out.push(PureSaddlePoint { row: r, col: c });
            }
        }
    }
    out
}

/// `A y`: row player's payoff for each pure row against `y`.
pub fn row_payoffs(game: &ZeroSumGame, col_strategy: &[Rational]) -> Vec<Rational> {
    (0..game.rows())
        .map(|r| game.row(r).iter().zip(col_strategy).map(|(a, y)| a * y).sum())
        .collect()
}

/// `x^T A`: row player's payoff for each pure column against `x`.
pub fn col_payoffs(game: &ZeroSumGame, row_strategy: &[Rational]) -> Vec<Rational> {
    (0..game.cols())
        .map(|c| (0..game.rows()).map(|r| game.entry(r, c) * &row_strategy[r]).sum())
        .collect()
}

pub fn expected_payoff(game: &ZeroSumGame, row_strategy: &[Rational], col_strategy: &[Rational]) -> Rational {
    row_payoffs(game, col_strategy).iter().zip(row_strategy).map(|(p, x)| p * x).sum()
}

/// An exact equilibrium from the column player's LP and its dual.
///
/// Payoffs are shifted to be at least 1, then the column player solves
/// `max sum(w)  s.t.  A' w <= 1, w >= 0`. With optimum `z`, the shifted
/// value is `1/z`, `y = w/z`, and the optimal dual multipliers divided by
/// `z` give the row player's strategy.
pub fn nash_equilibrium(game: &ZeroSumGame) -> MixedStrategyPair {
    let min = game.entries().iter().min().expect("nonempty game").clone();
    let shift = Rational::one() - min;
    let a: Vec<Vec<Rational>> = (0..game.rows())
        .map(|r| game.row(r).iter().map(|v| v + &shift).collect())
        .collect();
    let b = vec![Rational::one(); game.rows()];
    let c = vec![Rational::one(); game.cols()];
    let sol = lp::maximize(&a, &b, &c).expect("shifted game LP is feasible and bounded");
    debug_assert!(sol.objective.is_positive());
    let z = sol.objective;
    MixedStrategyPair {
        row_strategy: sol.dual.iter().map(|u| u / &z).collect(),
        col_strategy: sol.primal.iter().map(|w| w / &z).collect(),
        value: z.recip() - shift,
    }
}

pub fn game_value(game: &ZeroSumGame) -> Rational {
    nash_equilibrium(game).value
}

fn is_distribution(v: &[Rational]) -> bool {
    !v.iter().any(Signed::is_negative) && v.iter().sum::<Rational>().is_one()
}

/// Exact best-response check: `max_r (A y)_r = x^T A y = min_c (x^T A)_c`,
/// with `value` equal to `x^T A y`. Vectors that are not probability
/// distributions are never equilibria.
pub fn is_nash(game: &ZeroSumGame, pair: &MixedStrategyPair) -> Result<bool> {
    if pair.row_strategy.len() != game.rows() || pair.col_strategy.len() != game.cols() {
        return Err(Error::input(format!(
            "strategy lengths {}/{} do not match a {}x{} game",
            pair.row_strategy.len(),
            pair.col_strategy.len(),
            game.rows(),
            game.cols()
        )));
    }
    if !is_distribution(&pair.row_strategy) || !is_distribution(&pair.col_strategy) {
        return Ok(false);
    }
    let payoff = expected_payoff(game, &pair.row_strategy, &pair.col_strategy);
    let best_row = row_payoffs(game, &pair.col_strategy).into_iter().max().expect("nonempty");
    let best_col = col_payoffs(game, &pair.row_strategy).into_iter().min().expect("nonempty");
    Ok(payoff == pair.value && best_row == payoff && best_col == payoff)
}

/// Places a subgame's strategies at `product`'s indices of the full game,
/// with zero probability elsewhere.
pub fn embed_strategy(
    pair: &MixedStrategyPair,
    product: &ActionProduct,
    full_rows: usize,
    full_cols: usize,
) -> Result<MixedStrategyPair> {
    let (pr, pc) = product.shape();
    if pair.row_strategy.len() != pr || pair.col_strategy.len() != pc {
        return Err(Error::input("strategy lengths do not match the product"));
    }
    let out_of_range = product.row_set().last().is_some_and(|&r| r >= full_rows)
        || product.col_set().last().is_some_and(|&c| c >= full_cols);
    if out_of_range {
        return Err(Error::input("product does not fit the target game"));
    }
    let spread = |values: &[Rational], at: &[usize], len: usize| {
        let mut v = vec![Rational::zero(); len];
        for (p, &i) in values.iter().zip(at) {
            v[i] = p.clone();
        }
        v
    };
    Ok(MixedStrategyPair {
        row_strategy: spread(&pair.row_strategy, product.row_set(), full_rows),
        col_strategy: spread(&pair.col_strategy, product.col_set(), full_cols),
        value: pair.value.clone(),
    })
}
