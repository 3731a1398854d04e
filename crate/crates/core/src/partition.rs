use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer partition, stored as its positive parts in weakly decreasing
/// order. The empty partition has no parts.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition from weakly decreasing parts. Trailing zeros are
    /// dropped; any other zero or an increase is rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if let Some(w) = parts.windows(2).find(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts not weakly decreasing ({} < {})",
                w[0], w[1]
            )));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(
                "zero part before a positive part".into(),
            ));
        }
        Ok(Partition { parts })
    }

    /// Sorts an arbitrary sequence decreasingly and drops zeros.
    pub fn from_unsorted(seq: &[usize]) -> Self {
        let mut parts: Vec<usize> = seq.iter().copied().filter(|&x| x > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The integer being partitioned.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `λ_i` with 1-based `i`; zero past the last part.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.row >= 1 && cell.col >= 1 && self.part(cell.row) >= cell.col
    }

    /// The conjugate partition, whose parts are the column lengths.
    pub fn conjugate(&self) -> Partition {
        let width = self.part(1);
        let parts = (1..=width)
            .map(|c| self.parts.iter().take_while(|&&p| p >= c).count())
            .collect();
        Partition { parts }
    }

    /// Side length of the largest square `(d, d)` inside the diagram.
    pub fn durfee(&self) -> usize {
        self.parts
            .iter()
            .enumerate()
            .take_while(|&(i, &p)| p > i)
            .count()
    }

    /// `λ^t_i = λ_i + 1` for every `i` up to the Durfee size.
    pub fn is_threshold(&self) -> bool {
        let conj = self.conjugate();
        (1..=self.durfee()).all(|i| conj.part(i) == self.part(i) + 1)
    }

    /// No 2×2 square: `λ_2 ≤ 1`.
    pub fn is_hook(&self) -> bool {
        self.part(2) <= 1
    }

    /// Cell count of the largest hook `(λ_1, 1^{ℓ-1})` fitting inside the diagram.
    pub fn largest_hook_size(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            self.part(1) + self.len() - 1
        }
    }

    /// Dominance order: `mu` is sorted decreasingly, both are zero-padded,
    /// totals must agree and every prefix sum of `self` must be at least the
    /// corresponding prefix sum of `mu`.
    pub fn dominates(&self, mu: &[usize]) -> bool {
        let mut mu = mu.to_vec();
        mu.sort_unstable_by(|a, b| b.cmp(a));
        let total: usize = mu.iter().sum();
        if total != self.size() {
            return false;
        }
        let len = self.len().max(mu.len());
        let (mut lhs, mut rhs) = (0usize, 0usize);
        for k in 0..len {
            lhs += self.parts.get(k).copied().unwrap_or(0);
            rhs += mu.get(k).copied().unwrap_or(0);
            if lhs < rhs {
                return false;
            }
        }
        true
    }

    /// Cells of the diagram in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (1..=len).map(move |c| Cell::new(r + 1, c)))
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A cell `(row, col)` of a Young diagram, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        debug_assert!(row >= 1 && col >= 1, "cells are 1-based");
        Cell { row, col }
    }

    /// The opposite position across the diagonal of a threshold diagram:
    /// `(t+1, s)` when `s ≤ t`, otherwise `(t, s-1)`.
    pub fn opposite(self) -> Cell {
        let (s, t) = (self.row, self.col);
        if s <= t {
            Cell::new(t + 1, s)
        } else {
            Cell::new(t, s - 1)
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.row, self.col)
    }
}

/// Every partition of `n`, in reverse lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Threshold partitions of `n`, obtained by filtering [`partitions_of`].
pub fn threshold_partitions(n: usize) -> Vec<Partition> {
    partitions_of(n)
        .into_iter()
        .filter(Partition::is_threshold)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Column lengths counted cell by cell from the diagram.
    fn conjugate_oracle(parts: &[usize]) -> Vec<usize> {
        let mut cols = vec![0usize; parts.first().copied().unwrap_or(0)];
        for &len in parts {
            for c in cols.iter_mut().take(len) {
                *c += 1;
            }
        }
        cols
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(conjugate_oracle(&[3, 2, 2, 1]), vec![4, 3, 1]);
        assert_eq!(conjugate_oracle(&[2, 2, 2]), vec![3, 3]);
        assert_eq!(p(&[3, 2, 2, 1]).conjugate(), p(&[4, 3, 1]));
        assert_eq!(p(&[]).conjugate(), p(&[]));
        assert_eq!(p(&[2, 2, 2]).conjugate(), p(&[3, 3]));
    }

    #[test]
    fn conjugate_matches_oracle_and_is_involution() {
        for n in 0..=12 {
            for lam in partitions_of(n) {
                assert_eq!(
                    lam.conjugate().parts(),
                    conjugate_oracle(lam.parts()).as_slice()
                );
                assert_eq!(lam.conjugate().conjugate(), lam);
            }
        }
    }

    #[test]
    fn durfee_examples() {
        assert_eq!(p(&[3, 2, 2, 1]).durfee(), 2);
        assert_eq!(p(&[]).durfee(), 0);
        assert_eq!(p(&[1, 1]).durfee(), 1);
    }

    #[test]
    fn threshold_and_hook_examples() {
        assert!(p(&[3, 2, 2, 1]).is_threshold());
        assert!(p(&[2, 2, 2]).is_threshold());
        assert!(!p(&[2, 1]).is_threshold());
        assert!(p(&[]).is_threshold());

        assert!(p(&[3, 1, 1, 1]).is_hook());
        assert!(!p(&[2, 2]).is_hook());
        assert!(!p(&[3, 2, 2, 1]).is_hook());
        assert!(p(&[]).is_hook());
    }

    #[test]
    fn dominance_examples() {
        assert!(p(&[3, 2, 2, 1]).dominates(&[2, 3, 2, 1]));
        assert!(p(&[2, 2]).dominates(&[2, 2]));
        assert!(!p(&[2, 1, 1]).dominates(&[3, 1]));
        // different totals never compare
        assert!(!p(&[3]).dominates(&[2]));
    }

    #[test]
    fn dominance_is_a_partial_order() {
        for n in 0..=8 {
            let all = partitions_of(n);
            for a in &all {
                assert!(a.dominates(a.parts()));
                for b in &all {
                    if a != b && a.dominates(b.parts()) {
                        assert!(!b.dominates(a.parts()), "{a} {b}");
                    }
                    for c in &all {
                        if a.dominates(b.parts()) && b.dominates(c.parts()) {
                            assert!(a.dominates(c.parts()));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn opposite_position_examples() {
        assert_eq!(Cell::new(1, 1).opposite(), Cell::new(2, 1));
        assert_eq!(Cell::new(2, 1).opposite(), Cell::new(1, 1));
        assert_eq!(Cell::new(1, 2).opposite(), Cell::new(3, 1));
    }

    #[test]
    fn opposite_position_is_involution() {
        for r in 1..=10 {
            for c in 1..=10 {
                let cell = Cell::new(r, c);
                assert_eq!(cell.opposite().opposite(), cell);
                // swaps the strict lower triangle with the rest
                assert_ne!(r > c, cell.opposite().row > cell.opposite().col);
            }
        }
    }

    #[test]
    fn construction_rejects_bad_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0, 1]).is_err());
        assert_eq!(Partition::new(vec![2, 1, 0, 0]).unwrap(), p(&[2, 1]));
        assert_eq!(Partition::from_unsorted(&[0, 1, 3, 0, 2]), p(&[3, 2, 1]));
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn largest_hook() {
        assert_eq!(p(&[3, 3, 2, 2]).largest_hook_size(), 6);
        assert_eq!(p(&[]).largest_hook_size(), 0);
    }
}
