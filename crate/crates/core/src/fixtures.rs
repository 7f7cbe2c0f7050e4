//! Small reference games with known saddle structure.
//!
//! * `a1`: one weak saddle `{r1,r2} x {c1,c2,c3}`; the full product is its
//!   only strict saddle and no action is weakly dominated.
//! * `a2`: pure saddle point at `(r1, c1)`, also the unique weak saddle;
//!   `(r2+r3)/2, (c2+c3)/2` is a mixed equilibrium disjoint from it.
//! * `a3`: four interchangeable weak saddles over rows `{r1,r3}`/`{r3,r4}`
//!   and columns `{c1,c3}`/`{c3,c5}`.

use crate::game::ZeroSumGame;

pub fn a1() -> ZeroSumGame {
    ZeroSumGame::from_int_rows(&[
        [2, 1, 0, 1, 2],
        [0, 3, 4, 4, 1],
        [0, 2, 2, 1, 2],
        [2, 1, 0, 2, 1],
    ])
    .unwrap()
}

pub fn a2() -> ZeroSumGame {
    ZeroSumGame::from_int_rows(&[[0, 0, 0], [0, 1, -1], [0, -1, 1]]).unwrap()
}

pub fn a3() -> ZeroSumGame {
    ZeroSumGame::from_int_rows(&[
        [2, 2, 1, 3, 2],
        [2, 4, 0, 0, 2],
        [1, 3, 3, 4, 1],
        [2, 3, 1, 3, 2],
        [1, 0, 2, 2, 0],
    ])
    .unwrap()
}

/// Constant `n x m` game with every payoff equal to `value`.
pub fn constant(rows: usize, cols: usize, value: i64) -> ZeroSumGame {
    ZeroSumGame::from_int_rows(&vec![vec![value; cols]; rows]).unwrap()
}

pub fn matching_pennies() -> ZeroSumGame {
    ZeroSumGame::from_int_rows(&[[1, -1], [-1, 1]]).unwrap()
}
