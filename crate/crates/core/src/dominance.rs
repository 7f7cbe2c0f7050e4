//! Dominance between actions and between sets of actions.
//!
//! Row `r1` dominates `r2` with respect to a column set `C'` when
//! `a[r1][c]` compares to `a[r2][c]` as the mode requires for every
//! `c in C'`. Column `c1` dominates `c2` with respect to `R'` in the mirrored
//! sense: the column player prefers smaller payoffs, so `a[r][c1] <= a[r][c2]`.
//!
//! `Weak` is sometimes called "very weak" dominance elsewhere. The variant
//! that additionally requires one strict inequality is `WeakRequireStrict`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::ZeroSumGame;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DominanceMode {
    #[serde(rename = "weak")]
    Weak,
    #[serde(rename = "strict")]
    Strict,
    #[serde(rename = "weak-strict")]
    WeakRequireStrict,
}

impl DominanceMode {
    pub const ALL: [DominanceMode; 3] =
        [DominanceMode::Weak, DominanceMode::Strict, DominanceMode::WeakRequireStrict];

    pub fn name(self) -> &'static str {
        match self {
            DominanceMode::Weak => "weak",
            DominanceMode::Strict => "strict",
            DominanceMode::WeakRequireStrict => "weak-strict",
        }
    }

    /// `comparisons` yields, per opponent action, how the dominating action's
    /// payoff compares to the dominated one's from the owner's point of view.
    fn accepts(self, comparisons: impl Iterator<Item = Ordering>) -> bool {
        let mut any_strict = false;
        for ord in comparisons {
            match (self, ord) {
                (_, Ordering::Less) => return false,
                (DominanceMode::Strict, Ordering::Equal) => return false,
                (_, Ordering::Greater) => any_strict = true,
                _ => {}
            }
        }
        self != DominanceMode::WeakRequireStrict || any_strict
    }
}

impl fmt::Display for DominanceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DominanceMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "weak" => Ok(DominanceMode::Weak),
            "strict" => Ok(DominanceMode::Strict),
            "weak-strict" => Ok(DominanceMode::WeakRequireStrict),
            other => Err(Error::input(format!(
                "unknown dominance mode `{other}` (expected weak, strict or weak-strict)"
            ))),
        }
    }
}

/// Maps each dominated action to the lowest-index action dominating it.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DominanceWitness(pub BTreeMap<usize, usize>);

impl DominanceWitness {
    pub fn dominator_of(&self, action: usize) -> Option<usize> {
        self.0.get(&action).copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn check_indices(kind: &str, indices: &[usize], bound: usize) -> Result<()> {
    match indices.iter().find(|&&i| i >= bound) {
        Some(i) => Err(Error::input(format!("{kind} index {i} out of range (< {bound})"))),
        None => Ok(()),
    }
}

fn nonempty(kind: &str, set: &[usize]) -> Result<()> {
    if set.is_empty() {
        Err(Error::input(format!("{kind} restriction set must be nonempty")))
    } else {
        Ok(())
    }
}

fn rows_cmp(game: &ZeroSumGame, r1: usize, r2: usize, cols: &[usize], mode: DominanceMode) -> bool {
    mode.accepts(cols.iter().map(|&c| game.entry(r1, c).cmp(game.entry(r2, c))))
}

fn cols_cmp(game: &ZeroSumGame, c1: usize, c2: usize, rows: &[usize], mode: DominanceMode) -> bool {
    mode.accepts(rows.iter().map(|&r| game.entry(r, c2).cmp(game.entry(r, c1))))
}

/// Whether row `r1` dominates row `r2` with respect to `col_set`.
pub fn row_dominates(
    game: &ZeroSumGame,
    r1: usize,
    r2: usize,
    col_set: &[usize],
    mode: DominanceMode,
) -> Result<bool> {
    nonempty("column", col_set)?;
    check_indices("row", &[r1, r2], game.rows())?;
    check_indices("column", col_set, game.cols())?;
    Ok(rows_cmp(game, r1, r2, col_set, mode))
}

/// Whether column `c1` dominates column `c2` with respect to `row_set`.
pub fn col_dominates(
    game: &ZeroSumGame,
    c1: usize,
    c2: usize,
    row_set: &[usize],
    mode: DominanceMode,
) -> Result<bool> {
    nonempty("row", row_set)?;
    check_indices("column", &[c1, c2], game.cols())?;
    check_indices("row", row_set, game.rows())?;
    Ok(cols_cmp(game, c1, c2, row_set, mode))
}

/// Every row of `dominated` is dominated by some row of `dominating` with
/// respect to `col_set`. Returns the witness, or `None` if some row has no
/// dominator. An empty `dominated` set yields the empty witness.
pub fn set_dominates_rows(
    game: &ZeroSumGame,
    dominating: &[usize],
    dominated: &[usize],
    col_set: &[usize],
    mode: DominanceMode,
) -> Result<Option<DominanceWitness>> {
    nonempty("column", col_set)?;
    check_indices("row", dominating, game.rows())?;
    check_indices("row", dominated, game.rows())?;
    check_indices("column", col_set, game.cols())?;
    Ok(witness(dominating, dominated, |d, r| rows_cmp(game, d, r, col_set, mode)))
}

/// Column mirror of [`set_dominates_rows`].
pub fn set_dominates_cols(
    game: &ZeroSumGame,
    dominating: &[usize],
    dominated: &[usize],
    row_set: &[usize],
    mode: DominanceMode,
) -> Result<Option<DominanceWitness>> {
    nonempty("row", row_set)?;
    check_indices("column", dominating, game.cols())?;
    check_indices("column", dominated, game.cols())?;
    check_indices("row", row_set, game.rows())?;
    Ok(witness(dominating, dominated, |d, c| cols_cmp(game, d, c, row_set, mode)))
}

fn witness(
    dominating: &[usize],
    dominated: &[usize],
    dominates: impl Fn(usize, usize) -> bool,
) -> Option<DominanceWitness> {
    let mut lowest: Vec<usize> = dominating.to_vec();
    lowest.sort_unstable();
    let mut map = BTreeMap::new();
    for &target in dominated {
        let by = lowest.iter().copied().find(|&d| dominates(d, target))?;
        map.insert(target, by);
    }
    Some(DominanceWitness(map))
}

/// Rows not dominated, with respect to all columns, by a row whose payoffs
/// differ from theirs. Identical rows never eliminate each other.
pub fn undominated_rows(game: &ZeroSumGame, mode: DominanceMode) -> Vec<usize> {
    let rows: Vec<usize> = (0..game.rows()).collect();
    let cols: Vec<usize> = (0..game.cols()).collect();
    rows.iter()
        .copied()
        .filter(|&r| first_row_eliminator(game, &rows, &cols, r, mode).is_none())
        .collect()
}

/// Column mirror of [`undominated_rows`].
pub fn undominated_cols(game: &ZeroSumGame, mode: DominanceMode) -> Vec<usize> {
    let rows: Vec<usize> = (0..game.rows()).collect();
    let cols: Vec<usize> = (0..game.cols()).collect();
    cols.iter()
        .copied()
        .filter(|&c| first_col_eliminator(game, &rows, &cols, c, mode).is_none())
        .collect()
}

/// Lowest row in `rows` that dominates `target` on `cols` without being
/// identical to it on `cols`.
pub(crate) fn first_row_eliminator(
    game: &ZeroSumGame,
    rows: &[usize],
    cols: &[usize],
    target: usize,
    mode: DominanceMode,
) -> Option<usize> {
    rows.iter().copied().find(|&r| {
        r != target
            && cols.iter().any(|&c| game.entry(r, c) != game.entry(target, c))
            && rows_cmp(game, r, target, cols, mode)
    })
}

pub(crate) fn first_col_eliminator(
    game: &ZeroSumGame,
    rows: &[usize],
    cols: &[usize],
    target: usize,
    mode: DominanceMode,
) -> Option<usize> {
    cols.iter().copied().find(|&c| {
        c != target
            && rows.iter().any(|&r| game.entry(r, c) != game.entry(r, target))
            && cols_cmp(game, c, target, rows, mode)
    })
}

/// Largest number of rows or columns the bitmask route supports.
pub const MASK_LIMIT: usize = 64;

/// Pairwise comparison masks for fast GSP checks over index bitmasks.
///
/// `row_geq[r1][r2]` holds the columns where `a[r1][c] >= a[r2][c]`, and
/// `row_gt` the strict version. Then `r1` weakly dominates `r2` on `C'`
/// iff `C'` is a subset of `row_geq[r1][r2]`. Columns are analogous with
/// `col_leq[c1][c2]` holding the rows where `a[r][c1] <= a[r][c2]`.
#[derive(Debug, Clone)]
pub struct DominanceTable {
    rows: usize,
    cols: usize,
    row_geq: Vec<u64>,
    row_gt: Vec<u64>,
    col_leq: Vec<u64>,
    col_lt: Vec<u64>,
}

impl DominanceTable {
    pub fn new(game: &ZeroSumGame) -> Result<Self> {
        let (n, m) = (game.rows(), game.cols());
        if n > MASK_LIMIT || m > MASK_LIMIT {
            return Err(Error::Capacity { rows: n, cols: m, max_rows: MASK_LIMIT, max_cols: MASK_LIMIT });
        }
        let mut row_geq = vec![0u64; n * n];
        let mut row_gt = vec![0u64; n * n];
        for r1 in 0..n {
            for r2 in 0..n {
                for c in 0..m {
                    match game.entry(r1, c).cmp(game.entry(r2, c)) {
                        Ordering::Greater => {
                            row_geq[r1 * n + r2] |= 1 << c;
                            row_gt[r1 * n + r2] |= 1 << c;
                        }
                        Ordering::Equal => row_geq[r1 * n + r2] |= 1 << c,
                        Ordering::Less => {}
                    }
                }
            }
        }
        let mut col_leq = vec![0u64; m * m];
        let mut col_lt = vec![0u64; m * m];
        for c1 in 0..m {
            for c2 in 0..m {
                for r in 0..n {
                    match game.entry(r, c1).cmp(game.entry(r, c2)) {
                        Ordering::Less => {
                            col_leq[c1 * m + c2] |= 1 << r;
                            col_lt[c1 * m + c2] |= 1 << r;
                        }
                        Ordering::Equal => col_leq[c1 * m + c2] |= 1 << r,
                        Ordering::Greater => {}
                    }
                }
            }
        }
        Ok(DominanceTable { rows: n, cols: m, row_geq, row_gt, col_leq, col_lt })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    fn accepts(geq: u64, gt: u64, set: u64, mode: DominanceMode) -> bool {
        match mode {
            DominanceMode::Weak => set & !geq == 0,
            DominanceMode::Strict => set & !gt == 0,
            DominanceMode::WeakRequireStrict => set & !geq == 0 && set & gt != 0,
        }
    }

    #[inline]
    pub fn row_dominates(&self, r1: usize, r2: usize, cols: u64, mode: DominanceMode) -> bool {
        let k = r1 * self.rows + r2;
        Self::accepts(self.row_geq[k], self.row_gt[k], cols, mode)
    }

    #[inline]
    pub fn col_dominates(&self, c1: usize, c2: usize, rows: u64, mode: DominanceMode) -> bool {
        let k = c1 * self.cols + c2;
        Self::accepts(self.col_leq[k], self.col_lt[k], rows, mode)
    }

    /// GSP test for the product given by `rows x cols` bitmasks.
    pub fn is_gsp(&self, rows: u64, cols: u64, mode: DominanceMode) -> bool {
        let outside_rows = !rows & low_bits(self.rows);
        let outside_cols = !cols & low_bits(self.cols);
        bits(outside_rows).all(|r| bits(rows).any(|d| self.row_dominates(d, r, cols, mode)))
            && bits(outside_cols).all(|c| bits(cols).any(|d| self.col_dominates(d, c, rows, mode)))
    }
}

#[inline]
pub(crate) fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bit positions of `mask`, lowest first.
#[inline]
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}
