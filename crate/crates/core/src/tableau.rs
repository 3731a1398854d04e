use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{Cell, Partition};

/// A word over the positive integers.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Result<Self> {
        if letters.contains(&0) {
            return Err(Error::InvalidWord("letters must be positive".into()));
        }
        Ok(Word(letters))
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }

    /// Multiplicity of each letter `1..=max`, with `max` the largest letter.
    pub fn content(&self) -> Vec<usize> {
        let max = self.0.iter().copied().max().unwrap_or(0);
        let mut counts = vec![0; max];
        for &x in &self.0 {
            counts[x - 1] += 1;
        }
        counts
    }

    /// Relabels the `1`s left to right with the first letters of `alphabet`,
    /// then the `2`s, and so on.
    pub fn standardize(&self, alphabet: &[usize]) -> Result<Word> {
        check_alphabet(alphabet, self.0.len())?;
        let mut order: Vec<usize> = (0..self.0.len()).collect();
        order.sort_by_key(|&k| (self.0[k], k));
        let mut out = vec![0; self.0.len()];
        for (rank, k) in order.into_iter().enumerate() {
            out[k] = alphabet[rank];
        }
        Ok(Word(out))
    }
}

impl Deref for Word {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl TryFrom<Vec<usize>> for Word {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Word::new(v)
    }
}

impl From<Word> for Vec<usize> {
    fn from(w: Word) -> Self {
        w.0
    }
}

pub(crate) fn check_alphabet(alphabet: &[usize], expected: usize) -> Result<()> {
    if alphabet.len() != expected {
        return Err(Error::AlphabetSize {
            expected,
            found: alphabet.len(),
        });
    }
    if alphabet.first() == Some(&0) || alphabet.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::AlphabetNotIncreasing);
    }
    Ok(())
}

/// A semistandard Young tableau in English notation, stored row by row.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct Tableau {
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    /// Validates semistandardness: positive entries, rows weakly increasing,
    /// columns strictly increasing, row lengths weakly decreasing.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let t = Tableau { rows };
        t.validate()?;
        Ok(t)
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<Vec<usize>>) -> Self {
        let t = Tableau { rows };
        debug_assert!(t.validate().is_ok(), "{t:?}");
        t
    }

    pub fn empty() -> Self {
        Tableau::default()
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidTableau(msg));
        for (r, row) in self.rows.iter().enumerate() {
            if row.is_empty() {
                return bad(format!("row {} is empty", r + 1));
            }
            if row.contains(&0) {
                return bad("entries must be positive".into());
            }
            if row.windows(2).any(|w| w[0] > w[1]) {
                return bad(format!("row {} not weakly increasing", r + 1));
            }
            if r > 0 {
                let above = &self.rows[r - 1];
                if row.len() > above.len() {
                    return bad(format!("row {} longer than row {}", r + 1, r));
                }
                if let Some(c) = (0..row.len()).find(|&c| above[c] >= row[c]) {
                    return bad(format!("column {} not strictly increasing", c + 1));
                }
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<usize>> {
        self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn num_cells(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(Vec::len).collect()).expect("rows form a diagram")
    }

    pub fn get(&self, cell: Cell) -> Option<usize> {
        self.rows.get(cell.row - 1)?.get(cell.col - 1).copied()
    }

    pub fn max_entry(&self) -> Option<usize> {
        self.rows.iter().filter_map(|r| r.last()).copied().max()
    }

    /// Schensted row insertion of `x`. Returns the new tableau and the cell
    /// that was added to the shape.
    pub fn insert(&self, x: usize) -> (Tableau, Cell) {
        let mut t = self.clone();
        let cell = t.insert_in_place(x);
        (t, cell)
    }

    /// In-place variant of [`Tableau::insert`].
    pub fn insert_in_place(&mut self, mut x: usize) -> Cell {
        debug_assert!(x >= 1);
        let mut r = 0;
        loop {
            if r == self.rows.len() {
                self.rows.push(vec![x]);
                return Cell::new(r + 1, 1);
            }
            let row = &mut self.rows[r];
            // leftmost entry strictly greater than x; equal entries stay put
            let j = row.partition_point(|&v| v <= x);
            if j == row.len() {
                row.push(x);
                return Cell::new(r + 1, j + 1);
            }
            std::mem::swap(&mut row[j], &mut x);
            r += 1;
        }
    }

    /// Schensted reverse bumping from `cell`, which must be a removable corner.
    /// Returns the shrunken tableau and the letter ejected from the first row.
    pub fn reverse_bump(&self, cell: Cell) -> Result<(Tableau, usize)> {
        let mut t = self.clone();
        let y = t.reverse_bump_in_place(cell)?;
        Ok((t, y))
    }

    pub fn reverse_bump_in_place(&mut self, cell: Cell) -> Result<usize> {
        let not_end = Error::NotRowEnd {
            row: cell.row,
            col: cell.col,
        };
        let r = cell.row.checked_sub(1).ok_or(not_end.clone())?;
        if self.rows.get(r).map(Vec::len) != Some(cell.col) {
            return Err(not_end);
        }
        if self
            .rows
            .get(r + 1)
            .is_some_and(|below| below.len() >= cell.col)
        {
            return Err(not_end);
        }
        let mut x = self.rows[r].pop().expect("row is nonempty");
        if self.rows[r].is_empty() {
            self.rows.pop();
        }
        for rr in (0..r).rev() {
            let row = &mut self.rows[rr];
            // rightmost entry strictly smaller than x
            let j = row.partition_point(|&v| v < x);
            debug_assert!(j > 0, "column strictness guarantees a smaller entry");
            std::mem::swap(&mut row[j - 1], &mut x);
        }
        Ok(x)
    }

    /// Insertion tableau `P(w) = ∅ ← w_1 ← ⋯ ← w_k`.
    pub fn schensted_p(word: &[usize]) -> Tableau {
        let mut t = Tableau::empty();
        for &x in word {
            t.insert_in_place(x);
        }
        t
    }

    /// Cells paired with entries in reading order: rows bottom to top, each
    /// row left to right.
    pub fn reading_cells(&self) -> impl Iterator<Item = (Cell, usize)> + '_ {
        self.rows.iter().enumerate().rev().flat_map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(move |(c, &v)| (Cell::new(r + 1, c + 1), v))
        })
    }

    pub fn reading_word(&self) -> Word {
        Word(self.reading_cells().map(|(_, v)| v).collect())
    }

    /// The subword of the reading word on the letters `i` and `i + 1`.
    pub fn restricted_reading_word(&self, i: usize) -> Word {
        Word(
            self.reading_cells()
                .map(|(_, v)| v)
                .filter(|&v| v == i || v == i + 1)
                .collect(),
        )
    }

    /// Multiplicity of each letter `1..=max_entry`.
    pub fn weight(&self) -> Vec<usize> {
        let mut w = vec![0; self.max_entry().unwrap_or(0)];
        for row in &self.rows {
            for &v in row {
                w[v - 1] += 1;
            }
        }
        w
    }

    /// Relabels equal entries left to right (each value class is a horizontal
    /// strip) with consecutive letters of `alphabet`.
    pub fn standardize(&self, alphabet: &[usize]) -> Result<Tableau> {
        check_alphabet(alphabet, self.num_cells())?;
        let mut cells: Vec<(usize, usize, usize)> = self
            .rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, &v)| (v, c, r)))
            .collect();
        cells.sort_unstable();
        let mut rows = self.rows.clone();
        for (rank, (_, c, r)) in cells.into_iter().enumerate() {
            rows[r][c] = alphabet[rank];
        }
        Ok(Tableau::from_rows_unchecked(rows))
    }

    pub(crate) fn set(&mut self, cell: Cell, value: usize) {
        self.rows[cell.row - 1][cell.col - 1] = value;
    }

    pub(crate) fn rows_mut(&mut self) -> &mut Vec<Vec<usize>> {
        &mut self.rows
    }

    /// Every semistandard tableau of the given shape with entries in
    /// `1..=max_entry`, in lexicographic order of the row-major filling.
    pub fn all_of_shape(shape: &Partition, max_entry: usize) -> Vec<Tableau> {
        fn fill(
            shape: &[usize],
            max: usize,
            r: usize,
            c: usize,
            rows: &mut Vec<Vec<usize>>,
            out: &mut Vec<Tableau>,
        ) {
            if r == shape.len() {
                out.push(Tableau { rows: rows.clone() });
                return;
            }
            if c == shape[r] {
                return fill(shape, max, r + 1, 0, rows, out);
            }
            let left = if c > 0 { rows[r][c - 1] } else { 1 };
            let above = if r > 0 { rows[r - 1][c] + 1 } else { 1 };
            for v in left.max(above)..=max {
                if c == 0 {
                    rows.push(vec![v]);
                } else {
                    rows[r].push(v);
                }
                fill(shape, max, r, c + 1, rows, out);
                if c == 0 {
                    rows.pop();
                } else {
                    rows[r].pop();
                }
            }
        }
        let mut out = Vec::new();
        fill(shape.parts(), max_entry, 0, 0, &mut Vec::new(), &mut out);
        out
    }
}

/// Knuth equivalence, decided by comparing insertion tableaux.
pub fn knuth_equivalent(w: &[usize], v: &[usize]) -> bool {
    Tableau::schensted_p(w) == Tableau::schensted_p(v)
}

impl TryFrom<Vec<Vec<usize>>> for Tableau {
    type Error = Error;

    fn try_from(rows: Vec<Vec<usize>>) -> Result<Self> {
        Tableau::new(rows)
    }
}

impl From<Tableau> for Vec<Vec<usize>> {
    fn from(t: Tableau) -> Self {
        t.rows
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.max_entry().unwrap_or(0) >= 10;
        for (r, row) in self.rows.iter().enumerate() {
            if r > 0 {
                write!(f, "/")?;
            }
            for (c, v) in row.iter().enumerate() {
                if wide && c > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}
