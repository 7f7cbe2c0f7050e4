//! Generalized saddle points and saddles.
//!
//! A product `R' x C'` is a GSP under a dominance mode when every row outside
//! `R'` is dominated by some row of `R'` with respect to `C'`, and every
//! column outside `C'` is dominated by some column of `C'` with respect to
//! `R'`. Saddles are the inclusion-minimal GSPs.
//!
//! Exhaustive enumeration tests all `(2^n - 1)(2^m - 1)` products and is
//! guarded by [`EnumerationLimits`]. The number of weak saddles can grow
//! exponentially with the game size, so there is no way around the blow-up
//! for listing all of them; [`find_saddle`] locates a single one without the
//! guard.

mod permutation;

use rayon::prelude::*;
use serde::Serialize;

use crate::dominance::{
    bits, first_col_eliminator, first_row_eliminator, low_bits, set_dominates_cols,
    set_dominates_rows, DominanceMode, DominanceTable, MASK_LIMIT,
};
use crate::error::{Error, Result};
use crate::game::{ActionProduct, ZeroSumGame};

pub use permutation::{permutation_equivalent, PermutationWitness};

/// Size guard for exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub max_rows: usize,
    pub max_cols: usize,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits { max_rows: 12, max_cols: 12 }
    }
}

impl EnumerationLimits {
    /// Largest limits the bitmask search can represent.
    pub fn unlimited() -> Self {
        EnumerationLimits { max_rows: MASK_LIMIT, max_cols: MASK_LIMIT }
    }

    fn check(&self, game: &ZeroSumGame) -> Result<()> {
        let max_rows = self.max_rows.min(MASK_LIMIT);
        let max_cols = self.max_cols.min(MASK_LIMIT);
        if game.rows() > max_rows || game.cols() > max_cols {
            return Err(Error::Capacity { rows: game.rows(), cols: game.cols(), max_rows, max_cols });
        }
        Ok(())
    }
}

/// Inclusion-minimal GSPs of a game, sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SaddleSet {
    pub mode: DominanceMode,
    pub saddles: Vec<ActionProduct>,
}

impl SaddleSet {
    pub fn len(&self) -> usize {
        self.saddles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.saddles.is_empty()
    }

    pub fn contains(&self, product: &ActionProduct) -> bool {
        self.saddles.binary_search(product).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ActionProduct> {
        self.saddles.iter()
    }
}

/// Definition-level GSP check over exact payoffs.
pub fn is_gsp(game: &ZeroSumGame, product: &ActionProduct, mode: DominanceMode) -> Result<bool> {
    product.validate_for(game)?;
    let outside = |set: &[usize], len: usize| -> Vec<usize> {
        (0..len).filter(|i| set.binary_search(i).is_err()).collect()
    };
    let rows_out = outside(product.row_set(), game.rows());
    let cols_out = outside(product.col_set(), game.cols());
    Ok(
        set_dominates_rows(game, product.row_set(), &rows_out, product.col_set(), mode)?.is_some()
            && set_dominates_cols(game, product.col_set(), &cols_out, product.row_set(), mode)?
                .is_some(),
    )
}

/// Products above this many candidate pairs are scanned in parallel.
const PARALLEL_THRESHOLD: u64 = 1 << 12;

fn gsp_masks(table: &DominanceTable, mode: DominanceMode) -> Vec<(u64, u64)> {
    let full_r = low_bits(table.rows());
    let full_c = low_bits(table.cols());
    let scan = |rm: u64| {
        (1..=full_c)
            .filter(move |&cm| table.is_gsp(rm, cm, mode))
            .map(move |cm| (rm, cm))
    };
    if full_r.saturating_mul(full_c) > PARALLEL_THRESHOLD {
        (1..=full_r).into_par_iter().flat_map_iter(scan).collect()
    } else {
        (1..=full_r).flat_map(scan).collect()
    }
}

/// Every GSP of the game under `mode`, sorted.
pub fn enumerate_gsps(
    game: &ZeroSumGame,
    mode: DominanceMode,
    limits: EnumerationLimits,
) -> Result<Vec<ActionProduct>> {
    limits.check(game)?;
    let table = DominanceTable::new(game)?;
    let mut all: Vec<ActionProduct> = gsp_masks(&table, mode)
        .into_iter()
        .map(|(r, c)| ActionProduct::from_masks(r, c))
        .collect();
    all.sort();
    Ok(all)
}

/// All saddles under `mode`, using the default size guard.
pub fn enumerate_saddles(game: &ZeroSumGame, mode: DominanceMode) -> Result<SaddleSet> {
    enumerate_saddles_with(game, mode, EnumerationLimits::default())
}

pub fn enumerate_saddles_with(
    game: &ZeroSumGame,
    mode: DominanceMode,
    limits: EnumerationLimits,
) -> Result<SaddleSet> {
    limits.check(game)?;
    let table = DominanceTable::new(game)?;
    let mut gsps = gsp_masks(&table, mode);
    // A proper sub-product is strictly smaller, so scanning by total size
    // sees every minimal GSP below a candidate before the candidate itself.
    // A non-minimal GSP always contains a minimal one.
    gsps.sort_by_key(|&(r, c)| (r.count_ones() + c.count_ones(), r, c));
    let mut minimal: Vec<(u64, u64)> = Vec::new();
    for (r, c) in gsps {
        if !minimal.iter().any(|&(mr, mc)| mr & !r == 0 && mc & !c == 0) {
            minimal.push((r, c));
        }
    }
    let mut saddles: Vec<ActionProduct> =
        minimal.into_iter().map(|(r, c)| ActionProduct::from_masks(r, c)).collect();
    saddles.sort();
    saddles.dedup();
    Ok(SaddleSet { mode, saddles })
}

/// The unique strict saddle. A count other than one is reported as a
/// property violation.
pub fn strict_saddle(game: &ZeroSumGame) -> Result<ActionProduct> {
    let set = enumerate_saddles(game, DominanceMode::Strict)?;
    match <[ActionProduct; 1]>::try_from(set.saddles) {
        Ok([only]) => Ok(only),
        Err(found) => Err(Error::PropertyViolation(format!(
            "expected exactly one strict saddle, found {}: {:?}",
            found.len(),
            found.iter().map(ToString::to_string).collect::<Vec<_>>()
        ))),
    }
}

/// Some saddle under `mode`, found by repeatedly shrinking a GSP.
///
/// Starting from the full product, each step scans the proper sub-products
/// of the current GSP, smallest first (total size, then row count, then
/// index sets lexicographically), and descends into the first GSP found. The
/// descent stops when the current product has no proper sub-GSP; that final
/// empty scan is the minimality check.
///
/// Under weak and strict dominance, a sub-product of a GSP is a GSP of the
/// game exactly when it is one of the subgame, so the scan only ever looks
/// inside the current subgame. Candidates are still tested against the
/// whole game's dominance table, which keeps the search sound for
/// `WeakRequireStrict`, where that equivalence fails.
///
/// Only the bitmask limit applies: games up to 64x64 are accepted, with
/// exponential worst-case running time.
pub fn find_saddle(game: &ZeroSumGame, mode: DominanceMode) -> Result<ActionProduct> {
    let table = DominanceTable::new(game)?;
    let mut current = game.full_product();
    loop {
        let lift = |local: u64, set: &[usize]| bits(local).fold(0u64, |m, i| m | 1 << set[i]);
        let found = smallest_proper(current.row_set().len(), current.col_set().len(), |r, c| {
            table.is_gsp(lift(r, current.row_set()), lift(c, current.col_set()), mode)
        });
        match found {
            Some((r, c)) => current = current.lift(&ActionProduct::from_masks(r, c))?,
            None => return Ok(current),
        }
    }
}

fn smallest_proper(
    n: usize,
    m: usize,
    mut accept: impl FnMut(u64, u64) -> bool,
) -> Option<(u64, u64)> {
    let row_subsets: Vec<Vec<u64>> = (0..=n).map(|k| combinations(n, k)).collect();
    let col_subsets: Vec<Vec<u64>> = (0..=m).map(|k| combinations(m, k)).collect();
    for total in 2..n + m {
        let lo = 1.max(total.saturating_sub(m));
        let hi = n.min(total - 1);
        for k in lo..=hi {
            for &r in &row_subsets[k] {
                for &c in &col_subsets[total - k] {
                    if accept(r, c) {
                        return Some((r, c));
                    }
                }
            }
        }
    }
    None
}

/// `k`-subsets of `0..n` as bitmasks, in lexicographic order of their sorted
/// index lists.
fn combinations(n: usize, k: usize) -> Vec<u64> {
    fn extend(start: usize, n: usize, k: usize, acc: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..=n - k {
            extend(i + 1, n, k - 1, acc | 1 << i, out);
        }
    }
    let mut out = Vec::new();
    if k <= n {
        extend(0, n, k, 0, &mut out);
    }
    out
}

/// Fixpoint of iterated elimination of dominated actions.
///
/// Each round removes rows one at a time, lowest index first, while some
/// remaining row is dominated (over the remaining columns) by a remaining
/// row with different payoffs; then columns likewise. Rounds repeat until
/// nothing changes. Under `Weak` and `Strict` the result is a GSP, but not
/// necessarily a minimal one.
pub fn iterated_elimination(game: &ZeroSumGame, mode: DominanceMode) -> ActionProduct {
    let mut rows: Vec<usize> = (0..game.rows()).collect();
    let mut cols: Vec<usize> = (0..game.cols()).collect();
    loop {
        let mut changed = false;
        while let Some(pos) = rows
            .iter()
            .position(|&r| first_row_eliminator(game, &rows, &cols, r, mode).is_some())
        {
            rows.remove(pos);
            changed = true;
        }
        while let Some(pos) = cols
            .iter()
            .position(|&c| first_col_eliminator(game, &rows, &cols, c, mode).is_some())
        {
            cols.remove(pos);
            changed = true;
        }
        if !changed {
            break;
        }
    }
    ActionProduct::new(rows, cols).expect("elimination keeps at least one action per player")
}

/// `(R1 x C2, R2 x C1)` for `s1 = R1 x C1` and `s2 = R2 x C2`.
pub fn cross_products(s1: &ActionProduct, s2: &ActionProduct) -> (ActionProduct, ActionProduct) {
    let mix = |r: &ActionProduct, c: &ActionProduct| {
        ActionProduct::new(r.row_set().iter().copied(), c.col_set().iter().copied())
            .expect("component sets are nonempty")
    };
    (mix(s1, s2), mix(s2, s1))
}

/// Products whose rows and columns are subsets of `outer`'s, as an iterator
/// over index-set bitmasks local to `outer`. Used by property checks.
pub(crate) fn local_subproducts(outer: &ActionProduct) -> impl Iterator<Item = ActionProduct> + '_ {
    let rn = outer.row_set().len();
    let cn = outer.col_set().len();
    (1..=low_bits(rn)).flat_map(move |r| {
        (1..=low_bits(cn)).map(move |c| {
            ActionProduct::new(
                bits(r).map(|i| outer.row_set()[i]),
                bits(c).map(|j| outer.col_set()[j]),
            )
            .expect("nonempty masks")
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{a1, a2, a3, constant};
    use crate::generate::{generate, GeneratorConfig, GeneratorKind};
    use DominanceMode::*;

    fn p(rows: &[usize], cols: &[usize]) -> ActionProduct {
        ActionProduct::new(rows.iter().copied(), cols.iter().copied()).unwrap()
    }

    #[test]
    fn gsp_examples() {
        for g in [a1(), a2(), a3(), constant(2, 3, 1)] {
            for mode in [Weak, Strict] {
                assert!(is_gsp(&g, &g.full_product(), mode).unwrap());
            }
        }
        assert!(is_gsp(&a1(), &p(&[0, 1], &[0, 1, 2]), Weak).unwrap());
        assert!(!is_gsp(&a2(), &p(&[0], &[1]), Weak).unwrap());
        assert!(is_gsp(&a2(), &p(&[0], &[0]), Weak).unwrap());
        assert!(is_gsp(&a1(), &p(&[0, 9], &[0]), Weak).is_err());
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_saddles(&a1(), Weak).unwrap().saddles, vec![p(&[0, 1], &[0, 1, 2])]);
        assert_eq!(enumerate_saddles(&a2(), Weak).unwrap().saddles, vec![p(&[0], &[0])]);
        assert_eq!(
            enumerate_saddles(&a3(), Weak).unwrap().saddles,
            vec![
                p(&[0, 2], &[0, 2]),
                p(&[0, 2], &[2, 4]),
                p(&[2, 3], &[0, 2]),
                p(&[2, 3], &[2, 4]),
            ]
        );
        assert_eq!(
            enumerate_saddles(&constant(2, 2, 0), Weak).unwrap().saddles,
            vec![p(&[0], &[0]), p(&[0], &[1]), p(&[1], &[0]), p(&[1], &[1])]
        );
    }

    #[test]
    fn strict_saddle_examples() {
        for g in [a1(), a2(), a3()] {
            assert_eq!(strict_saddle(&g).unwrap(), g.full_product());
        }
        assert_eq!(strict_saddle(&constant(1, 1, 7)).unwrap(), p(&[0], &[0]));
    }

    #[test]
    fn enumeration_guard() {
        let big = constant(13, 2, 0);
        assert!(matches!(enumerate_saddles(&big, Weak), Err(Error::Capacity { .. })));
        let lifted = EnumerationLimits { max_rows: 13, max_cols: 12 };
        assert_eq!(enumerate_saddles_with(&big, Weak, lifted).unwrap().len(), 26);
    }

    #[test]
    fn find_saddle_examples() {
        assert_eq!(find_saddle(&a1(), Weak).unwrap(), p(&[0, 1], &[0, 1, 2]));
        assert_eq!(find_saddle(&a2(), Weak).unwrap(), p(&[0], &[0]));
        let s = find_saddle(&a3(), Weak).unwrap();
        assert!(enumerate_saddles(&a3(), Weak).unwrap().contains(&s));
        assert_eq!(find_saddle(&a1(), Strict).unwrap(), a1().full_product());
    }

    #[test]
    fn find_saddle_beyond_guard() {
        // 14x14 with a pure saddle point at (0, 0) and strictly worse elsewhere
        let mut rows = vec![vec![-1i64; 14]; 14];
        rows[0] = vec![1; 14];
        rows[0][0] = 0;
        for r in rows.iter_mut().skip(1) {
            r[0] = -1;
        }
        let g = ZeroSumGame::from_int_rows(&rows).unwrap();
        assert!(enumerate_saddles(&g, Weak).is_err());
        assert_eq!(find_saddle(&g, Weak).unwrap(), p(&[0], &[0]));
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(combinations(4, 2), vec![0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100]);
        assert_eq!(combinations(3, 0), vec![0]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn elimination_examples() {
        assert_eq!(iterated_elimination(&a1(), Weak), a1().full_product());
        assert_eq!(iterated_elimination(&constant(3, 2, 4), Weak), constant(3, 2, 4).full_product());

        let mut rows: Vec<Vec<i64>> = vec![vec![0, 0, 0], vec![0, 1, -1], vec![0, -1, 1]];
        rows.push(vec![-5, -5, -5]);
        let g = ZeroSumGame::from_int_rows(&rows).unwrap();
        let kept = iterated_elimination(&g, Strict);
        assert!(!kept.row_set().contains(&3));
        assert!(is_gsp(&g, &kept, Strict).unwrap());
    }

    #[test]
    fn elimination_is_not_minimal_on_a1() {
        let kept = iterated_elimination(&a1(), Weak);
        let saddle = p(&[0, 1], &[0, 1, 2]);
        assert!(is_gsp(&a1(), &kept, Weak).unwrap());
        assert!(saddle.is_proper_subproduct_of(&kept));
    }

    #[test]
    fn cross_product_examples() {
        let (x, y) = cross_products(&p(&[0, 2], &[0, 2]), &p(&[2, 3], &[2, 4]));
        assert_eq!(x, p(&[0, 2], &[2, 4]));
        assert_eq!(y, p(&[2, 3], &[0, 2]));
        let s = p(&[0], &[0]);
        assert_eq!(cross_products(&s, &s), (s.clone(), s));
    }

    #[test]
    fn weak_strict_variant_breaks_equivalence() {
        // A2 restricted to its first two rows and columns: [[0,0],[0,1]]
        let g = a2().subgame(&p(&[0, 1], &[0, 1])).unwrap();
        let set = enumerate_saddles(&g, WeakRequireStrict).unwrap();
        assert_eq!(set.saddles, vec![p(&[0, 1], &[0]), p(&[1], &[0, 1])]);
        let subs: Vec<_> = set.iter().map(|s| g.subgame(s).unwrap()).collect();
        assert!(permutation_equivalent(&subs[0], &subs[1]).is_none());
        // plain weak dominance: two 1x1 saddles, both the payoff 0
        let weak = enumerate_saddles(&g, Weak).unwrap();
        assert_eq!(weak.saddles, vec![p(&[0], &[0]), p(&[1], &[0])]);
    }

    #[test]
    fn enumerated_gsps_agree_with_definition() {
        for seed in 0..30 {
            let g = generate(&GeneratorConfig::new(GeneratorKind::UniformInt, 3, 4, 1, seed)).unwrap();
            for mode in DominanceMode::ALL {
                let all = enumerate_gsps(&g, mode, EnumerationLimits::default()).unwrap();
                for q in local_subproducts(&g.full_product()) {
                    assert_eq!(all.binary_search(&q).is_ok(), is_gsp(&g, &q, mode).unwrap());
                }
            }
        }
    }

    #[test]
    fn parallel_and_sequential_scans_agree() {
        let g = generate(&GeneratorConfig::new(GeneratorKind::UniformInt, 7, 7, 1, 3)).unwrap();
        let table = DominanceTable::new(&g).unwrap();
        let mut par = gsp_masks(&table, Weak);
        let mut seq: Vec<(u64, u64)> = (1..=low_bits(7))
            .flat_map(|r| (1..=low_bits(7)).map(move |c| (r, c)))
            .filter(|&(r, c)| table.is_gsp(r, c, Weak))
            .collect();
        par.sort();
        seq.sort();
        assert_eq!(par, seq);
    }
}
