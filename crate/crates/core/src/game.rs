//! Matrix games and action products.

use std::collections::HashSet;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, Rational};

/// A finite two-player zero-sum game. Entry `(r, c)` is the row player's
/// payoff; the column player receives its negation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroSumGame {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
}

impl ZeroSumGame {
    /// Builds a game from row-major entries with default labels `r1..`, `c1..`.
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::input(format!(
                "a game needs at least one row and one column, got {rows}x{cols}"
            )));
        }
        if entries.len() != rows * cols {
            return Err(Error::input(format!(
                "dimension mismatch: {rows}x{cols} game needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(ZeroSumGame {
            rows,
            cols,
            entries,
            row_labels: (1..=rows).map(|i| format!("r{i}")).collect(),
            col_labels: (1..=cols).map(|j| format!("c{j}")).collect(),
        })
    }

    /// Convenience constructor from integer rows; all rows must have equal length.
    pub fn from_int_rows<R: AsRef<[i64]>>(matrix: &[R]) -> Result<Self> {
        let rows = matrix.len();
        let cols = matrix.first().map_or(0, |r| r.as_ref().len());
        if matrix.iter().any(|r| r.as_ref().len() != cols) {
            return Err(Error::input("ragged matrix: rows differ in length"));
        }
        let entries = matrix
            .iter()
            .flat_map(|r| r.as_ref().iter().map(|&v| int(v)))
            .collect();
        Self::new(rows, cols, entries)
    }

    pub fn with_labels(mut self, row_labels: Vec<String>, col_labels: Vec<String>) -> Result<Self> {
        if row_labels.len() != self.rows || col_labels.len() != self.cols {
            return Err(Error::input("label count does not match game dimensions"));
        }
        for labels in [&row_labels, &col_labels] {
            let unique: HashSet<&String> = labels.iter().collect();
            if unique.len() != labels.len() {
                return Err(Error::input("labels must be unique per axis"));
            }
        }
        self.row_labels = row_labels;
        self.col_labels = col_labels;
        Ok(self)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    #[inline]
    pub fn entry(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[Rational] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn full_product(&self) -> ActionProduct {
        ActionProduct {
            row_set: (0..self.rows).collect(),
            col_set: (0..self.cols).collect(),
        }
    }

    /// Restriction to `product`, keeping the parent's labels.
    pub fn subgame(&self, product: &ActionProduct) -> Result<Self> {
        product.validate_for(self)?;
        let entries = product
            .row_set
            .iter()
            .flat_map(|&r| product.col_set.iter().map(move |&c| self.entry(r, c).clone()))
            .collect();
        Ok(ZeroSumGame {
            rows: product.row_set.len(),
            cols: product.col_set.len(),
            entries,
            row_labels: product.row_set.iter().map(|&r| self.row_labels[r].clone()).collect(),
            col_labels: product.col_set.iter().map(|&c| self.col_labels[c].clone()).collect(),
        })
    }

    /// The same game seen from the column player: rows and columns swap and
    /// payoffs change sign.
    pub fn transpose_negated(&self) -> Self {
        let entries = (0..self.cols)
            .flat_map(|c| (0..self.rows).map(move |r| -self.entry(r, c)))
            .collect();
        ZeroSumGame {
            rows: self.cols,
            cols: self.rows,
            entries,
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
        }
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (i..self.cols).all(|j| *self.entry(i, j) == -self.entry(j, i)))
    }

    /// Skew-symmetric with zeros only on the diagonal.
    pub fn is_confrontation(&self) -> bool {
        self.is_skew_symmetric()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || !self.entry(i, j).is_zero()))
    }

    /// SHA-256 over the canonical dimensions and entries (labels excluded),
    /// truncated to 128 bits and hex encoded.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(format!("{} {}", self.rows, self.cols));
        for q in &self.entries {
            hasher.update(b" ");
            hasher.update(format_rational(q));
        }
        hex::encode(&hasher.finalize()[..16])
    }
}

impl fmt::Display for ZeroSumGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(format_rational).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for r in 0..self.rows {
            let line: Vec<String> = cells[r * self.cols..(r + 1) * self.cols]
                .iter()
                .map(|s| format!("{s:>width$}"))
                .collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// A product `R' x C'` of nonempty, sorted, duplicate-free index sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ActionProduct {
    row_set: Vec<usize>,
    col_set: Vec<usize>,
}

impl ActionProduct {
    /// Sorts and deduplicates the given indices; both sets must be nonempty.
    pub fn new(
        rows: impl IntoIterator<Item = usize>,
        cols: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let mut row_set: Vec<usize> = rows.into_iter().collect();
        let mut col_set: Vec<usize> = cols.into_iter().collect();
        row_set.sort_unstable();
        row_set.dedup();
        col_set.sort_unstable();
        col_set.dedup();
        if row_set.is_empty() || col_set.is_empty() {
            return Err(Error::input("an action product needs nonempty row and column sets"));
        }
        Ok(ActionProduct { row_set, col_set })
    }

    pub fn row_set(&self) -> &[usize] {
        &self.row_set
    }

    pub fn col_set(&self) -> &[usize] {
        &self.col_set
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.row_set.len(), self.col_set.len())
    }

    pub fn validate_for(&self, game: &ZeroSumGame) -> Result<()> {
        if let Some(&r) = self.row_set.last().filter(|&&r| r >= game.rows()) {
            return Err(Error::input(format!(
                "row index {r} out of range for a game with {} rows",
                game.rows()
            )));
        }
        if let Some(&c) = self.col_set.last().filter(|&&c| c >= game.cols()) {
            return Err(Error::input(format!(
                "column index {c} out of range for a game with {} columns",
                game.cols()
            )));
        }
        Ok(())
    }

    /// Component-wise inclusion: `R1 ⊆ R2` and `C1 ⊆ C2`.
    pub fn is_subproduct_of(&self, other: &ActionProduct) -> bool {
        is_sorted_subset(&self.row_set, &other.row_set)
            && is_sorted_subset(&self.col_set, &other.col_set)
    }

    pub fn is_proper_subproduct_of(&self, other: &ActionProduct) -> bool {
        self != other && self.is_subproduct_of(other)
    }

    /// Maps a product expressed in this product's local (subgame) indices
    /// back to the parent game's indices.
    pub fn lift(&self, local: &ActionProduct) -> Result<ActionProduct> {
        let pick = |set: &[usize], idx: &[usize]| -> Result<Vec<usize>> {
            idx.iter()
                .map(|&i| {
                    set.get(i)
                        .copied()
                        .ok_or_else(|| Error::input(format!("local index {i} out of range")))
                })
                .collect()
        };
        Ok(ActionProduct {
            row_set: pick(&self.row_set, &local.row_set)?,
            col_set: pick(&self.col_set, &local.col_set)?,
        })
    }

    /// Re-expresses a sub-product of `self` in local (subgame) indices.
    pub fn localize(&self, inner: &ActionProduct) -> Result<ActionProduct> {
        if !inner.is_subproduct_of(self) {
            return Err(Error::input("inner product is not contained in the outer product"));
        }
        let position = |set: &[usize], i: usize| set.binary_search(&i).unwrap();
        Ok(ActionProduct {
            row_set: inner.row_set.iter().map(|&r| position(&self.row_set, r)).collect(),
            col_set: inner.col_set.iter().map(|&c| position(&self.col_set, c)).collect(),
        })
    }

    pub(crate) fn from_masks(rows: u64, cols: u64) -> Self {
        ActionProduct {
            row_set: mask_indices(rows),
            col_set: mask_indices(cols),
        }
    }

    /// Text form with 1-based labels, e.g. `{r1,r2} x {c1,c2,c3}`.
    pub fn display_with(&self, game: &ZeroSumGame) -> String {
        let join = |set: &[usize], labels: &[String]| {
            set.iter().map(|&i| labels[i].as_str()).collect::<Vec<_>>().join(",")
        };
        format!(
            "{{{}}} x {{{}}}",
            join(&self.row_set, game.row_labels()),
            join(&self.col_set, game.col_labels())
        )
    }
}

impl fmt::Display for ActionProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |prefix: char, set: &[usize]| {
            set.iter().map(|i| format!("{prefix}{}", i + 1)).collect::<Vec<_>>().join(",")
        };
        write!(f, "{{{}}} x {{{}}}", join('r', &self.row_set), join('c', &self.col_set))
    }
}

fn is_sorted_subset(small: &[usize], large: &[usize]) -> bool {
    let mut it = large.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

pub(crate) fn mask_indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{a1, a2};
    use proptest::prelude::*;

    #[test]
    fn smallest_game() {
        let g = ZeroSumGame::new(1, 1, vec![int(5)]).unwrap();
        assert_eq!((g.rows(), g.cols()), (1, 1));
        assert_eq!(g.row_labels(), ["r1"]);
        assert_eq!(g.col_labels(), ["c1"]);
    }

    #[test]
    fn a1_dimensions() {
        let g = a1();
        assert_eq!((g.rows(), g.cols()), (4, 5));
        assert_eq!(*g.entry(1, 3), int(4));
    }

    #[test]
    fn dimension_mismatch() {
        let err = ZeroSumGame::new(2, 2, vec![int(1), int(2), int(3)]).unwrap_err();
        assert!(matches!(err, Error::Input(ref m) if m.contains("dimension mismatch")));
        assert!(ZeroSumGame::new(0, 3, vec![]).is_err());
        assert!(ZeroSumGame::from_int_rows(&[vec![1, 2], vec![3]]).is_err());
    }

    #[test]
    fn subgame_examples() {
        let p = ActionProduct::new([0, 1], [0, 1, 2]).unwrap();
        let sub = a1().subgame(&p).unwrap();
        assert_eq!(sub, ZeroSumGame::from_int_rows(&[[2, 1, 0], [0, 3, 4]]).unwrap());

        let g = a1();
        assert_eq!(g.subgame(&g.full_product()).unwrap(), g);

        let p = ActionProduct::new([1, 2], [1, 2]).unwrap();
        let sub = a2().subgame(&p).unwrap();
        assert_eq!(sub.entries(), ZeroSumGame::from_int_rows(&[[1, -1], [-1, 1]]).unwrap().entries());
        assert_eq!(sub.row_labels(), ["r2", "r3"]);
        assert_eq!(sub.col_labels(), ["c2", "c3"]);
    }

    #[test]
    fn subgame_out_of_range() {
        let p = ActionProduct::new([0, 4], [0]).unwrap();
        assert!(matches!(a1().subgame(&p), Err(Error::Input(_))));
        let p = ActionProduct::new([0], [5]).unwrap();
        assert!(matches!(a1().subgame(&p), Err(Error::Input(_))));
    }

    #[test]
    fn product_normalizes() {
        let p = ActionProduct::new([3, 1, 1], [2, 0]).unwrap();
        assert_eq!(p.row_set(), [1, 3]);
        assert_eq!(p.col_set(), [0, 2]);
        assert!(ActionProduct::new([], [0]).is_err());
        assert!(ActionProduct::new([0], []).is_err());
        assert_eq!(p.to_string(), "{r2,r4} x {c1,c3}");
    }

    #[test]
    fn lift_and_localize() {
        let outer = ActionProduct::new([1, 3, 4], [0, 2]).unwrap();
        let inner = ActionProduct::new([3, 4], [2]).unwrap();
        let local = outer.localize(&inner).unwrap();
        assert_eq!(local, ActionProduct::new([1, 2], [1]).unwrap());
        assert_eq!(outer.lift(&local).unwrap(), inner);
        assert!(outer.localize(&ActionProduct::new([0], [0]).unwrap()).is_err());
    }

    #[test]
    fn skew_symmetry_and_confrontation() {
        // a2 is symmetric, not skew-symmetric: a[1][1] = 1
        assert!(!a2().is_skew_symmetric());
        assert!(!a1().is_skew_symmetric());
        let g = ZeroSumGame::from_int_rows(&[[0, 1], [-1, 0]]).unwrap();
        assert!(g.is_skew_symmetric());
        assert!(g.is_confrontation());
        assert!(!a2().is_confrontation());
        assert!(ZeroSumGame::from_int_rows(&[[0]]).unwrap().is_confrontation());
        assert!(!ZeroSumGame::from_int_rows(&[[1]]).unwrap().is_skew_symmetric());
    }

    #[test]
    fn labels_must_be_unique() {
        let g = ZeroSumGame::from_int_rows(&[[0, 1]]).unwrap();
        assert!(g.clone().with_labels(vec!["a".into()], vec!["x".into(), "x".into()]).is_err());
        let g = g.with_labels(vec!["a".into()], vec!["x".into(), "y".into()]).unwrap();
        assert_eq!(g.col_labels(), ["x", "y"]);
    }

    #[test]
    fn digest_ignores_labels_and_tracks_entries() {
        let g = ZeroSumGame::from_int_rows(&[[0, 1]]).unwrap();
        let relabeled = g.clone().with_labels(vec!["a".into()], vec!["x".into(), "y".into()]).unwrap();
        assert_eq!(g.digest(), relabeled.digest());
        assert_ne!(g.digest(), ZeroSumGame::from_int_rows(&[[1, 0]]).unwrap().digest());
        assert_ne!(g.digest(), ZeroSumGame::from_int_rows(&[[0], [1]]).unwrap().digest());
        assert_eq!(g.digest().len(), 32);
    }

    fn game_and_nested() -> impl Strategy<Value = (ZeroSumGame, ActionProduct, ActionProduct)> {
        (1usize..6, 1usize..6)
            .prop_flat_map(|(n, m)| {
                (
                    prop::collection::vec(-3i64..=3, n * m),
                    Just(n),
                    Just(m),
                    prop::collection::vec(any::<bool>(), n),
                    prop::collection::vec(any::<bool>(), m),
                    any::<u64>(),
                )
            })
            .prop_map(|(vals, n, m, rsel, csel, pick)| {
                let g = ZeroSumGame::new(n, m, vals.into_iter().map(int).collect()).unwrap();
                let mut rows: Vec<usize> = (0..n).filter(|&i| rsel[i]).collect();
                let mut cols: Vec<usize> = (0..m).filter(|&j| csel[j]).collect();
                if rows.is_empty() {
                    rows.push(pick as usize % n);
                }
                if cols.is_empty() {
                    cols.push(pick as usize % m);
                }
                let outer = ActionProduct::new(rows.clone(), cols.clone()).unwrap();
                let inner = ActionProduct::new(
                    rows.iter().copied().take(1 + (pick as usize % rows.len())),
                    cols.iter().copied().skip(pick as usize % cols.len()),
                )
                .unwrap();
                (g, outer, inner)
            })
    }

    proptest! {
        #[test]
        fn subgame_composition((g, outer, inner) in game_and_nested()) {
            let direct = g.subgame(&inner).unwrap();
            let local = outer.localize(&inner).unwrap();
            let nested = g.subgame(&outer).unwrap().subgame(&local).unwrap();
            prop_assert_eq!(direct, nested);
        }

        #[test]
        fn transpose_negated_is_an_involution((g, _, _) in game_and_nested()) {
            prop_assert_eq!(g.transpose_negated().transpose_negated(), g);
        }
    }
}
