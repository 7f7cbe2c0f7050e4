//! Equivalence of games up to row and column permutations.

use serde::Serialize;

use crate::game::ZeroSumGame;
use crate::rational::Rational;

/// Row and column bijections with `b[i][j] == a[row_perm[i]][col_perm[j]]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PermutationWitness {
    pub row_perm: Vec<usize>,
    pub col_perm: Vec<usize>,
}

impl PermutationWitness {
    pub fn identity(rows: usize, cols: usize) -> Self {
        PermutationWitness { row_perm: (0..rows).collect(), col_perm: (0..cols).collect() }
    }

    /// Rearranges `a` according to the witness.
    pub fn apply(&self, a: &ZeroSumGame) -> ZeroSumGame {
        let entries = self
            .row_perm
            .iter()
            .flat_map(|&r| self.col_perm.iter().map(move |&c| a.entry(r, c).clone()))
            .collect();
        ZeroSumGame::new(self.row_perm.len(), self.col_perm.len(), entries)
            .expect("witness dimensions are nonzero")
    }
}

/// Finds row and column permutations carrying `a` onto `b`, if any exist.
///
/// Backtracks over assignments of `a`'s rows to `b`'s rows, trying only rows
/// with the same sorted entry multiset and pruning whenever the partial
/// columns of the two matrices stop agreeing as multisets. Columns are then
/// matched greedily. Candidates are tried lowest index first, so the result
/// is deterministic and `(g, g)` yields the identity.
pub fn permutation_equivalent(a: &ZeroSumGame, b: &ZeroSumGame) -> Option<PermutationWitness> {
    let (n, m) = (a.rows(), a.cols());
    if (n, m) != (b.rows(), b.cols()) {
        return None;
    }
    if sorted_refs(a.entries()) != sorted_refs(b.entries()) {
        return None;
    }
    let sig_a: Vec<_> = (0..n).map(|r| sorted_refs(a.row(r))).collect();
    let sig_b: Vec<_> = (0..n).map(|r| sorted_refs(b.row(r))).collect();

    let mut search = Search { a, b, sig_a, sig_b, row_perm: Vec::with_capacity(n), used: vec![false; n] };
    if !search.assign_rows() {
        return None;
    }
    let row_perm = search.row_perm;

    let column = |g: &ZeroSumGame, c: usize, perm: Option<&[usize]>| -> Vec<Rational> {
        (0..n)
            .map(|i| g.entry(perm.map_or(i, |p| p[i]), c).clone())
            .collect()
    };
    let a_cols: Vec<Vec<Rational>> = (0..m).map(|c| column(a, c, Some(&row_perm))).collect();
    let mut taken = vec![false; m];
    let mut col_perm = Vec::with_capacity(m);
    for d in 0..m {
        let target = column(b, d, None);
        let c = (0..m).find(|&c| !taken[c] && a_cols[c] == target)?;
        taken[c] = true;
        col_perm.push(c);
    }
    Some(PermutationWitness { row_perm, col_perm })
}

fn sorted_refs(values: &[Rational]) -> Vec<&Rational> {
    let mut v: Vec<&Rational> = values.iter().collect();
    v.sort();
    v
}

struct Search<'g> {
    a: &'g ZeroSumGame,
    b: &'g ZeroSumGame,
    sig_a: Vec<Vec<&'g Rational>>,
    sig_b: Vec<Vec<&'g Rational>>,
    row_perm: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn assign_rows(&mut self) -> bool {
        let i = self.row_perm.len();
        if i == self.a.rows() {
            return true;
        }
        for j in 0..self.a.rows() {
            if self.used[j] || self.sig_a[j] != self.sig_b[i] {
                continue;
            }
            self.used[j] = true;
            self.row_perm.push(j);
            if self.column_prefixes_agree() && self.assign_rows() {
                return true;
            }
            self.row_perm.pop();
            self.used[j] = false;
        }
        false
    }

    /// The columns restricted to the rows assigned so far must coincide as
    /// multisets, otherwise no column permutation can complete the match.
    fn column_prefixes_agree(&self) -> bool {
        let k = self.row_perm.len();
        let m = self.a.cols();
        let mut pa: Vec<Vec<&Rational>> = (0..m)
            .map(|c| self.row_perm.iter().map(|&r| self.a.entry(r, c)).collect())
            .collect();
        let mut pb: Vec<Vec<&Rational>> =
            (0..m).map(|c| (0..k).map(|r| self.b.entry(r, c)).collect()).collect();
        pa.sort();
        pb.sort();
        pa == pb
    }
}
