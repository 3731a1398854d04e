//! Type `A_{m-1}` crystal structures.
//!
//! Two models are provided: semistandard tableaux with the usual bracketing
//! rule on reading words ([`TableauCrystal`]), and PV-free Burge arrays with
//! the operators that shift entries along the weakly increasing bottom run
//! ([`BurgeCrystal`]). The Burge map intertwines the two.
//!
//! Crystal graphs can be generated from seeds, checked against the
//! Stembridge local axioms and compared up to isomorphism.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::{self, Display, Write as _};
use std::hash::Hash;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::burge::decode;
use crate::error::{Error, Result};
use crate::graph::BurgeArray;
use crate::partition::Partition;
use crate::pvfree::is_pv_free;
use crate::tableau::{Tableau, Word};

/// Outcome of cancelling `i`-pairs in a two-letter word. Letters `i` act as
/// `)` and letters `i + 1` as `(`; every `(` directly left of a `)` is paired
/// and removed until none remain.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BracketState {
    /// Positions of surviving `)`, in word order.
    pub unpaired_close: Vec<usize>,
    /// Positions of surviving `(`, in word order.
    pub unpaired_open: Vec<usize>,
    /// Number of `i`-pairs removed.
    pub pairs: usize,
}

impl BracketState {
    /// Single left-to-right scan with a stack of open positions. Letters
    /// other than `i` and `i + 1` are ignored.
    pub fn of(word: &[usize], i: usize) -> Self {
        let mut st = BracketState::default();
        for (pos, &x) in word.iter().enumerate() {
            if x == i + 1 {
                st.unpaired_open.push(pos);
            } else if x == i {
                if st.unpaired_open.pop().is_some() {
                    st.pairs += 1;
                } else {
                    st.unpaired_close.push(pos);
                }
            }
        }
        debug_assert!(match (st.unpaired_close.last(), st.unpaired_open.first()) {
            (Some(c), Some(o)) => c < o,
            _ => true,
        });
        st
    }

    /// Length of the `i`-string above: `ε_i`.
    pub fn epsilon(&self) -> usize {
        self.unpaired_open.len()
    }

    /// Length of the `i`-string below: `φ_i`.
    pub fn phi(&self) -> usize {
        self.unpaired_close.len()
    }
}

// ---------------------------------------------------------------------------
// Tableaux

/// Lowering operator on a tableau: the `i` under the rightmost unpaired `)`
/// of the `i`-th reading word becomes `i + 1`.
pub fn f_tableau(t: &Tableau, i: usize) -> Option<Tableau> {
    if i == 0 {
        return None;
    }
    let cells: Vec<_> = t
        .reading_cells()
        .filter(|&(_, v)| v == i || v == i + 1)
        .collect();
    let word: Vec<usize> = cells.iter().map(|&(_, v)| v).collect();
    let pos = *BracketState::of(&word, i).unpaired_close.last()?;
    let mut out = t.clone();
    out.set(cells[pos].0, i + 1);
    Some(out)
}

/// Raising operator on a tableau: the `i + 1` under the leftmost unpaired
/// `(` becomes `i`.
pub fn e_tableau(t: &Tableau, i: usize) -> Option<Tableau> {
    if i == 0 {
        return None;
    }
    let cells: Vec<_> = t
        .reading_cells()
        .filter(|&(_, v)| v == i || v == i + 1)
        .collect();
    let word: Vec<usize> = cells.iter().map(|&(_, v)| v).collect();
    let pos = *BracketState::of(&word, i).unpaired_open.first()?;
    let mut out = t.clone();
    out.set(cells[pos].0, i);
    Some(out)
}

// ---------------------------------------------------------------------------
// Burge arrays

/// Location of an entry in a Burge array: 0-based column, top or bottom row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slot {
    pub col: usize,
    pub top: bool,
}

/// The `i`-th reading word of a Burge array with the slot of each letter.
///
/// If the leftmost `i + 1` of the top row sits in column `k` with `k = 1`
/// or `b_{k-1} ≤ b_k`, it is read first. All other letters `i` and `i + 1`
/// follow column by column. Only that leading column can hold both letters.
pub fn burge_reading_slots(array: &BurgeArray, i: usize) -> Vec<(Slot, usize)> {
    let cols = array.columns();
    let mut out = Vec::new();
    let lead = cols
        .iter()
        .position(|&(a, _)| a == i + 1)
        .filter(|&k| k == 0 || cols[k - 1].1 <= cols[k].1);
    if let Some(k) = lead {
        out.push((Slot { col: k, top: true }, i + 1));
    }
    for (k, &(a, b)) in cols.iter().enumerate() {
        let mut here = 0;
        if (a == i || a == i + 1) && lead != Some(k) {
            out.push((Slot { col: k, top: true }, a));
            here += 1;
        }
        if b == i || b == i + 1 {
            out.push((Slot { col: k, top: false }, b));
            here += 1;
        }
        debug_assert!(
            here <= 1 || lead == Some(k),
            "column {k} of {array} holds both {i} and {} off the leading column",
            i + 1
        );
    }
    out
}

pub fn burge_reading_word(array: &BurgeArray, i: usize) -> Word {
    Word::new(
        burge_reading_slots(array, i)
            .into_iter()
            .map(|(_, v)| v)
            .collect(),
    )
    .expect("entries are positive")
}

/// Bracket state of the `i`-th reading word of a Burge array.
pub fn burge_brackets(array: &BurgeArray, i: usize) -> BracketState {
    BracketState::of(&burge_reading_word(array, i), i)
}

/// Start of the maximal weakly increasing run of the bottom row ending at
/// column `end` (0-based).
fn run_start(cols: &[(usize, usize)], end: usize) -> usize {
    let mut l = end;
    while l > 0 && cols[l - 1].1 <= cols[l].1 {
        l -= 1;
    }
    l
}

fn f_burge_unchecked(array: &BurgeArray, i: usize) -> Option<BurgeArray> {
    if i == 0 {
        return None;
    }
    let slots = burge_reading_slots(array, i);
    let word: Vec<usize> = slots.iter().map(|&(_, v)| v).collect();
    let pos = *BracketState::of(&word, i).unpaired_close.last()?;
    let x = slots[pos].0;
    let mut cols = array.columns().to_vec();
    let k = x.col;
    if !x.top && cols[k].0 == i + 1 {
        // the column reads [i+1, i]; it cannot be the first column
        debug_assert!(k > 0);
        let old = array.columns();
        let l = run_start(old, k - 1);
        let a_l = old[l].0;
        let m = (l..k)
            .rev()
            .find(|&m| old[m].1 < a_l)
            .expect("b_l < a_l always holds");
        for s in l..k - 1 {
            cols[s].0 = old[s + 1].0;
        }
        cols[k - 1].0 = i + 1;
        cols[m].1 = a_l;
        cols[k].1 = old[m].1;
    } else if x.top {
        cols[k].0 = i + 1;
    } else {
        cols[k].1 = i + 1;
    }
    Some(BurgeArray::from_columns_unchecked(cols))
}

fn e_burge_unchecked(array: &BurgeArray, i: usize) -> Option<BurgeArray> {
    if i == 0 {
        return None;
    }
    let slots = burge_reading_slots(array, i);
    let word: Vec<usize> = slots.iter().map(|&(_, v)| v).collect();
    let pos = *BracketState::of(&word, i).unpaired_open.first()?;
    let x = slots[pos].0;
    let mut cols = array.columns().to_vec();
    let k = x.col;
    if x.top && k > 0 && cols[k - 1].0 == i + 1 {
        // Undoing the forward shift can lengthen the run on its left, so
        // the literal run start may overshoot. The start actually used by
        // the preimage is the first one that yields a valid array.
        let old = array.columns();
        return (run_start(old, k - 1)..k).find_map(|l| {
            let mut cols = old.to_vec();
            let b_k = old[k].1;
            // equal tops at k-1, k force b_{k-1} > b_k, so m exists
            let m = (l..k).find(|&m| b_k < old[m].1)?;
            cols[l].0 = old[m].1;
            for s in l + 1..k {
                cols[s].0 = old[s - 1].0;
            }
            cols[m].1 = b_k;
            cols[k].1 = i;
            BurgeArray::new(cols).ok()
        });
    } else if x.top {
        cols[k].0 = i;
    } else {
        cols[k].1 = i;
    }
    Some(BurgeArray::from_columns_unchecked(cols))
}

/// Lowering operator on a PV-free Burge array.
pub fn f_burge(array: &BurgeArray, i: usize) -> Result<Option<BurgeArray>> {
    if !is_pv_free(array) {
        return Err(Error::NotPvFree);
    }
    Ok(f_burge_unchecked(array, i))
}

/// Raising operator on a PV-free Burge array.
pub fn e_burge(array: &BurgeArray, i: usize) -> Result<Option<BurgeArray>> {
    if !is_pv_free(array) {
        return Err(Error::NotPvFree);
    }
    Ok(e_burge_unchecked(array, i))
}

// ---------------------------------------------------------------------------
// Models

/// A crystal of type `A_{m-1}`: labels run over `1..m`.
pub trait CrystalModel: Sync {
    type Element: Clone + Eq + Ord + Hash + Send + Sync;

    fn max_letter(&self) -> usize;
    fn lower(&self, x: &Self::Element, i: usize) -> Option<Self::Element>;
    fn raise(&self, x: &Self::Element, i: usize) -> Option<Self::Element>;
    /// Weight vector of length `max_letter`.
    fn weight(&self, x: &Self::Element) -> Vec<usize>;

    fn labels(&self) -> std::ops::Range<usize> {
        1..self.max_letter().max(1)
    }
}

/// Semistandard tableaux with entries in `1..=max_letter`.
#[derive(Debug, Clone, Copy)]
pub struct TableauCrystal {
    pub max_letter: usize,
}

impl CrystalModel for TableauCrystal {
    type Element = Tableau;

    fn max_letter(&self) -> usize {
        self.max_letter
    }

    fn lower(&self, x: &Tableau, i: usize) -> Option<Tableau> {
        (i < self.max_letter).then(|| f_tableau(x, i)).flatten()
    }

    fn raise(&self, x: &Tableau, i: usize) -> Option<Tableau> {
        (i < self.max_letter).then(|| e_tableau(x, i)).flatten()
    }

    fn weight(&self, x: &Tableau) -> Vec<usize> {
        let mut w = x.weight();
        w.resize(self.max_letter.max(w.len()), 0);
        w
    }
}

/// PV-free Burge arrays with entries in `1..=max_letter`. Elements are
/// assumed PV-free; the public [`f_burge`]/[`e_burge`] check it.
#[derive(Debug, Clone, Copy)]
pub struct BurgeCrystal {
    pub max_letter: usize,
}

impl CrystalModel for BurgeCrystal {
    type Element = BurgeArray;

    fn max_letter(&self) -> usize {
        self.max_letter
    }

    fn lower(&self, x: &BurgeArray, i: usize) -> Option<BurgeArray> {
        debug_assert!(is_pv_free(x));
        (i < self.max_letter)
            .then(|| f_burge_unchecked(x, i))
            .flatten()
    }

    fn raise(&self, x: &BurgeArray, i: usize) -> Option<BurgeArray> {
        debug_assert!(is_pv_free(x));
        (i < self.max_letter)
            .then(|| e_burge_unchecked(x, i))
            .flatten()
    }

    fn weight(&self, x: &BurgeArray) -> Vec<usize> {
        x.content(self.max_letter)
    }
}

/// Burge arrays of the given (hook, threshold) shape with entries at most
/// `m`, obtained by decoding every tableau in `Tab_m(shape)`.
pub fn burge_arrays_of_shape(shape: &Partition, m: usize) -> Result<Vec<BurgeArray>> {
    if !shape.is_threshold() {
        return Err(Error::NotThresholdShape(shape.clone()));
    }
    Tableau::all_of_shape(shape, m).iter().map(decode).collect()
}

pub fn is_highest_weight<C: CrystalModel>(model: &C, x: &C::Element) -> bool {
    model.labels().all(|i| model.raise(x, i).is_none())
}

/// Raises greedily until no raising operator applies.
pub fn highest_weight_of<C: CrystalModel>(model: &C, x: &C::Element) -> C::Element {
    let mut cur = x.clone();
    'outer: loop {
        for i in model.labels() {
            if let Some(next) = model.raise(&cur, i) {
                cur = next;
                continue 'outer;
            }
        }
        return cur;
    }
}

/// Killed by `f_i` or `e_i` for every label, with weight a permutation of
/// the highest weight of its component.
pub fn is_extremal<C: CrystalModel>(model: &C, x: &C::Element) -> bool {
    let one_sided = model
        .labels()
        .all(|i| model.lower(x, i).is_none() || model.raise(x, i).is_none());
    if !one_sided {
        return false;
    }
    let mut w = model.weight(x);
    let mut hw = model.weight(&highest_weight_of(model, x));
    w.sort_unstable();
    hw.sort_unstable();
    w == hw
}

// ---------------------------------------------------------------------------
// Crystal graphs

/// A finite crystal graph. An edge `(u, v, i)` means `f_i(u) = v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrystalGraph<T> {
    pub vertices: Vec<T>,
    pub edges: Vec<(usize, usize, usize)>,
    pub weights: Vec<Vec<usize>>,
}

impl<T> CrystalGraph<T> {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn max_letter(&self) -> usize {
        self.weights.first().map_or(0, Vec::len)
    }

    /// Number of edges carrying each label.
    pub fn label_counts(&self) -> BTreeMap<usize, usize> {
        let mut counts = BTreeMap::new();
        for &(_, _, i) in &self.edges {
            *counts.entry(i).or_insert(0) += 1;
        }
        counts
    }

    fn adjacency(&self) -> Adjacency {
        let mut out = vec![BTreeMap::new(); self.len()];
        let mut inn = vec![BTreeMap::new(); self.len()];
        for &(u, v, i) in &self.edges {
            out[u].entry(i).or_insert(v);
            inn[v].entry(i).or_insert(u);
        }
        Adjacency { out, inn }
    }

    /// Weakly connected components as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut nbrs = vec![Vec::new(); self.len()];
        for &(u, v, _) in &self.edges {
            nbrs[u].push(v);
            nbrs[v].push(u);
        }
        let mut seen = vec![false; self.len()];
        let mut comps = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &nbrs[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }
}

struct Adjacency {
    out: Vec<BTreeMap<usize, usize>>,
    inn: Vec<BTreeMap<usize, usize>>,
}

impl Adjacency {
    fn f(&self, v: usize, i: usize) -> Option<usize> {
        self.out[v].get(&i).copied()
    }

    fn e(&self, v: usize, i: usize) -> Option<usize> {
        self.inn[v].get(&i).copied()
    }

    /// String length in one direction, capped so cycles terminate.
    fn walk(&self, v: usize, i: usize, up: bool) -> usize {
        let cap = self.out.len();
        let mut cur = v;
        let mut steps = 0;
        while steps <= cap {
            let next = if up { self.e(cur, i) } else { self.f(cur, i) };
            match next {
                Some(n) => {
                    cur = n;
                    steps += 1;
                }
                None => break,
            }
        }
        steps
    }

    fn epsilon(&self, v: usize, i: usize) -> usize {
        self.walk(v, i, true)
    }

    fn phi(&self, v: usize, i: usize) -> usize {
        self.walk(v, i, false)
    }
}

/// Closure of `seeds` under every `f_i` and `e_i`. Vertices are numbered in
/// breadth-first order with each layer sorted, so the result does not depend
/// on how the frontier expansion is scheduled.
pub fn generate_crystal<C: CrystalModel>(
    model: &C,
    seeds: impl IntoIterator<Item = C::Element>,
) -> CrystalGraph<C::Element> {
    let mut index: BTreeMap<C::Element, usize> = BTreeMap::new();
    let mut vertices = Vec::new();
    let mut frontier: BTreeSet<C::Element> = seeds.into_iter().collect();
    while !frontier.is_empty() {
        for x in &frontier {
            index.insert(x.clone(), vertices.len());
            vertices.push(x.clone());
        }
        let layer: Vec<C::Element> = frontier.into_iter().collect();
        let found: Vec<Vec<C::Element>> = layer
            .par_iter()
            .map(|x| {
                model
                    .labels()
                    .flat_map(|i| [model.lower(x, i), model.raise(x, i)])
                    .flatten()
                    .collect()
            })
            .collect();
        frontier = found
            .into_iter()
            .flatten()
            .filter(|y| !index.contains_key(y))
            .collect();
    }
    let mut edges = Vec::new();
    for (u, x) in vertices.iter().enumerate() {
        for i in model.labels() {
            if let Some(y) = model.lower(x, i) {
                edges.push((u, index[&y], i));
            }
        }
    }
    edges.sort_unstable();
    let weights = vertices.iter().map(|x| model.weight(x)).collect();
    CrystalGraph {
        vertices,
        edges,
        weights,
    }
}

// ---------------------------------------------------------------------------
// Stembridge axioms

/// Axioms checked by [`check_stembridge`], with Stembridge's labels for the
/// simply-laced local axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Axiom {
    P1,
    P2,
    P3,
    P4,
    P5,
    P6,
    #[serde(rename = "P5'")]
    P5Dual,
    #[serde(rename = "P6'")]
    P6Dual,
    #[serde(rename = "W")]
    Weight,
}

impl Axiom {
    pub const ALL: [Axiom; 9] = [
        Axiom::P1,
        Axiom::P2,
        Axiom::P3,
        Axiom::P4,
        Axiom::P5,
        Axiom::P6,
        Axiom::P5Dual,
        Axiom::P6Dual,
        Axiom::Weight,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Axiom::P1 => "P1",
            Axiom::P2 => "P2",
            Axiom::P3 => "P3",
            Axiom::P4 => "P4",
            Axiom::P5 => "P5",
            Axiom::P6 => "P6",
            Axiom::P5Dual => "P5'",
            Axiom::P6Dual => "P6'",
            Axiom::Weight => "W",
        }
    }

    /// Statement used by the checker. Notation: `ε_j`, `φ_j` are string
    /// lengths, `Δ_i g(x) = g(e_i x) - g(x)`, `∇_i g(x) = g(x) - g(f_i x)`,
    /// `δ = -ε`, and `a_ij` is the type A Cartan entry.
    pub fn statement(self) -> &'static str {
        match self {
            Axiom::P1 => "every monochromatic directed path is finite",
            Axiom::P2 => "each vertex has at most one outgoing and one incoming i-edge",
            Axiom::P3 => "if e_i x exists, Δ_i δ_j(x) + Δ_i φ_j(x) = a_ij for j ≠ i",
            Axiom::P4 => "if e_i x exists, Δ_i δ_j(x) ≤ 0 and Δ_i φ_j(x) ≤ 0",
            Axiom::P5 => "Δ_i δ_j(x) = 0 implies e_i e_j x = e_j e_i x = y and ∇_j φ_i(y) = 0",
            Axiom::P6 => {
                "Δ_i δ_j(x) = Δ_j δ_i(x) = -1 implies e_i e_j² e_i x = e_j e_i² e_j x = y \
                 and ∇_i φ_j(y) = ∇_j φ_i(y) = -1"
            }
            Axiom::P5Dual => "∇_i φ_j(x) = 0 implies f_i f_j x = f_j f_i x = y and Δ_j δ_i(y) = 0",
            Axiom::P6Dual => {
                "∇_i φ_j(x) = ∇_j φ_i(x) = -1 implies f_i f_j² f_i x = f_j f_i² f_j x = y \
                 and Δ_i δ_j(y) = Δ_j δ_i(y) = -1"
            }
            Axiom::Weight => {
                "wt(f_i x) = wt(x) - ε_i + ε_{i+1} and φ_i(x) - ε_i(x) = wt_i(x) - wt_{i+1}(x)"
            }
        }
    }
}

impl Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub vertex: usize,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StembridgeReport {
    pub vertices: usize,
    pub edges: usize,
    pub violations: Vec<Violation>,
}

impl StembridgeReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Axiom statements, for report headers.
    pub fn header() -> String {
        let mut s = String::from("Stembridge crystal axioms (simply-laced, type A):\n");
        for ax in Axiom::ALL {
            let _ = writeln!(s, "  {:<3} {}", ax.label(), ax.statement());
        }
        s
    }
}

fn cartan(i: usize, j: usize) -> i64 {
    if i == j {
        2
    } else if i.abs_diff(j) == 1 {
        -1
    } else {
        0
    }
}

fn apply(adj: &Adjacency, x: usize, ops: &[(bool, usize)]) -> Option<usize> {
    ops.iter().try_fold(
        x,
        |v, &(raise, i)| {
            if raise {
                adj.e(v, i)
            } else {
                adj.f(v, i)
            }
        },
    )
}

/// Checks the Stembridge axioms and the weight compatibilities on a finite
/// crystal graph. Violations are returned as data.
pub fn check_stembridge<T>(graph: &CrystalGraph<T>) -> StembridgeReport {
    let n = graph.len();
    let m = graph.max_letter();
    let labels: Vec<usize> = (1..m.max(1)).collect();
    let adj = graph.adjacency();
    let mut violations = Vec::new();
    let mut flag = |axiom, vertex, detail: String| {
        violations.push(Violation {
            axiom,
            vertex,
            detail,
        })
    };

    // P2: arrow uniqueness
    let mut out_seen = BTreeSet::new();
    let mut in_seen = BTreeSet::new();
    for &(u, v, i) in &graph.edges {
        if !out_seen.insert((u, i)) {
            flag(Axiom::P2, u, format!("second outgoing {i}-edge"));
        }
        if !in_seen.insert((v, i)) {
            flag(Axiom::P2, v, format!("second incoming {i}-edge"));
        }
        if i == 0 || i >= m {
            flag(Axiom::P2, u, format!("label {i} outside 1..{m}"));
        }
    }

    // P1: strings terminate
    for x in 0..n {
        for &i in &labels {
            if adj.phi(x, i) > n {
                flag(Axiom::P1, x, format!("{i}-string does not terminate"));
            }
        }
    }

    // weight shifts along edges and string lengths against the weight
    for &(u, v, i) in &graph.edges {
        if i == 0 || i >= m {
            continue;
        }
        let mut expect = graph.weights[u].clone();
        let ok = expect[i - 1] > 0 && {
            expect[i - 1] -= 1;
            expect[i] += 1;
            expect == graph.weights[v]
        };
        if !ok {
            flag(
                Axiom::Weight,
                u,
                format!("{i}-edge to {v} does not shift weight by one letter"),
            );
        }
    }
    for x in 0..n {
        let w = &graph.weights[x];
        for &i in &labels {
            let lhs = adj.phi(x, i) as i64 - adj.epsilon(x, i) as i64;
            let rhs = w[i - 1] as i64 - w[i] as i64;
            if lhs != rhs {
                flag(
                    Axiom::Weight,
                    x,
                    format!("φ_{i} - ε_{i} = {lhs} but wt gives {rhs}"),
                );
            }
        }
    }

    let eps = |v: usize, j: usize| adj.epsilon(v, j) as i64;
    let phi = |v: usize, j: usize| adj.phi(v, j) as i64;
    // Δ_i δ_j(x) and Δ_i φ_j(x), defined when e_i x exists
    let delta_delta = |x: usize, i: usize, j: usize| adj.e(x, i).map(|y| eps(x, j) - eps(y, j));
    let delta_phi = |x: usize, i: usize, j: usize| adj.e(x, i).map(|y| phi(y, j) - phi(x, j));
    // ∇_i φ_j(x), defined when f_i x exists
    let nabla_phi = |x: usize, i: usize, j: usize| adj.f(x, i).map(|y| phi(x, j) - phi(y, j));

    for x in 0..n {
        for &i in &labels {
            for &j in &labels {
                if i == j {
                    continue;
                }
                if let (Some(dd), Some(dp)) = (delta_delta(x, i, j), delta_phi(x, i, j)) {
                    if dd + dp != cartan(i, j) {
                        flag(
                            Axiom::P3,
                            x,
                            format!("i={i} j={j}: {dd} + {dp} ≠ {}", cartan(i, j)),
                        );
                    }
                    if dd > 0 || dp > 0 {
                        flag(Axiom::P4, x, format!("i={i} j={j}: Δδ={dd} Δφ={dp}"));
                    }
                }
                if adj.e(x, i).is_none() || adj.e(x, j).is_none() {
                    // P5/P6 need both raisings
                } else {
                    let dij = delta_delta(x, i, j).expect("e_i x exists");
                    let dji = delta_delta(x, j, i).expect("e_j x exists");
                    if dij == 0 {
                        let y1 = apply(&adj, x, &[(true, j), (true, i)]);
                        let y2 = apply(&adj, x, &[(true, i), (true, j)]);
                        match (y1, y2) {
                            (Some(a), Some(b)) if a == b => {
                                if nabla_phi(a, j, i) != Some(0) {
                                    flag(Axiom::P5, x, format!("i={i} j={j}: ∇_j φ_i(y) ≠ 0"));
                                }
                            }
                            _ => flag(Axiom::P5, x, format!("i={i} j={j}: e_i e_j ≠ e_j e_i")),
                        }
                    }
                    if i < j && dij == -1 && dji == -1 {
                        let y1 = apply(&adj, x, &[(true, i), (true, j), (true, j), (true, i)]);
                        let y2 = apply(&adj, x, &[(true, j), (true, i), (true, i), (true, j)]);
                        match (y1, y2) {
                            (Some(a), Some(b)) if a == b => {
                                if nabla_phi(a, i, j) != Some(-1) || nabla_phi(a, j, i) != Some(-1)
                                {
                                    flag(Axiom::P6, x, format!("i={i} j={j}: ∇φ(y) ≠ -1"));
                                }
                            }
                            _ => flag(Axiom::P6, x, format!("i={i} j={j}: braid relation fails")),
                        }
                    }
                }
                if adj.f(x, i).is_some() && adj.f(x, j).is_some() {
                    let nij = nabla_phi(x, i, j).expect("f_i x exists");
                    let nji = nabla_phi(x, j, i).expect("f_j x exists");
                    if nij == 0 {
                        let y1 = apply(&adj, x, &[(false, j), (false, i)]);
                        let y2 = apply(&adj, x, &[(false, i), (false, j)]);
                        match (y1, y2) {
                            (Some(a), Some(b)) if a == b => {
                                if delta_delta(a, j, i) != Some(0) {
                                    flag(Axiom::P5Dual, x, format!("i={i} j={j}: Δ_j δ_i(y) ≠ 0"));
                                }
                            }
                            _ => flag(Axiom::P5Dual, x, format!("i={i} j={j}: f_i f_j ≠ f_j f_i")),
                        }
                    }
                    if i < j && nij == -1 && nji == -1 {
                        let y1 = apply(&adj, x, &[(false, i), (false, j), (false, j), (false, i)]);
                        let y2 = apply(&adj, x, &[(false, j), (false, i), (false, i), (false, j)]);
                        match (y1, y2) {
                            (Some(a), Some(b)) if a == b => {
                                if delta_delta(a, i, j) != Some(-1)
                                    || delta_delta(a, j, i) != Some(-1)
                                {
                                    flag(Axiom::P6Dual, x, format!("i={i} j={j}: Δδ(y) ≠ -1"));
                                }
                            }
                            _ => flag(
                                Axiom::P6Dual,
                                x,
                                format!("i={i} j={j}: dual braid relation fails"),
                            ),
                        }
                    }
                }
            }
        }
    }

    StembridgeReport {
        vertices: n,
        edges: graph.edges.len(),
        violations,
    }
}

// ---------------------------------------------------------------------------
// Isomorphism

struct IsoSearch<'a> {
    la: Adjacency,
    ra: Adjacency,
    lw: &'a [Vec<usize>],
    rw: &'a [Vec<usize>],
    map: Vec<usize>,
    used: Vec<bool>,
}

const UNMAPPED: usize = usize::MAX;

impl IsoSearch<'_> {
    fn compatible(&self, u: usize, w: usize) -> bool {
        self.lw[u] == self.rw[w]
            && self.la.out[u].keys().eq(self.ra.out[w].keys())
            && self.la.inn[u].keys().eq(self.ra.inn[w].keys())
    }

    fn undo(&mut self, assigned: &[usize]) {
        for &u in assigned {
            self.used[self.map[u]] = false;
            self.map[u] = UNMAPPED;
        }
    }

    /// Extends `root -> cand` along edges. Returns the newly assigned left
    /// vertices, or `None` after undoing a failed attempt.
    fn propagate(&mut self, root: usize, cand: usize) -> Option<Vec<usize>> {
        let mut assigned = Vec::new();
        let mut queue = VecDeque::new();
        let mut pending = vec![(root, cand)];
        loop {
            for (u, w) in pending.drain(..) {
                if self.map[u] != UNMAPPED {
                    if self.map[u] != w {
                        self.undo(&assigned);
                        return None;
                    }
                    continue;
                }
                if self.used[w] || !self.compatible(u, w) {
                    self.undo(&assigned);
                    return None;
                }
                self.map[u] = w;
                self.used[w] = true;
                assigned.push(u);
                queue.push_back(u);
            }
            let Some(u) = queue.pop_front() else {
                return Some(assigned);
            };
            let w = self.map[u];
            // compatible() guarantees matching label sets
            for (i, &v) in &self.la.out[u] {
                pending.push((v, self.ra.out[w][i]));
            }
            for (i, &v) in &self.la.inn[u] {
                pending.push((v, self.ra.inn[w][i]));
            }
        }
    }

    fn search(&mut self, roots: &[usize]) -> bool {
        let Some((&root, rest)) = roots.split_first() else {
            return true;
        };
        for cand in 0..self.used.len() {
            if self.used[cand] {
                continue;
            }
            if let Some(assigned) = self.propagate(root, cand) {
                if self.search(rest) {
                    return true;
                }
                self.undo(&assigned);
            }
        }
        false
    }
}

/// A bijection `left index -> right index` preserving weights and labelled
/// edges, if one exists. Each component is anchored at a source vertex
/// (highest weight in a genuine crystal) and propagated along edges, with
/// backtracking over the anchor's image.
pub fn crystal_isomorphic<S, T>(
    left: &CrystalGraph<S>,
    right: &CrystalGraph<T>,
) -> Option<Vec<usize>> {
    if left.len() != right.len()
        || left.edges.len() != right.edges.len()
        || left.label_counts() != right.label_counts()
    {
        return None;
    }
    let la = left.adjacency();
    let roots: Vec<usize> = left
        .components()
        .iter()
        .map(|c| {
            c.iter()
                .copied()
                .find(|&v| la.inn[v].is_empty())
                .unwrap_or(c[0])
        })
        .collect();
    let mut s = IsoSearch {
        la,
        ra: right.adjacency(),
        lw: &left.weights,
        rw: &right.weights,
        map: vec![UNMAPPED; left.len()],
        used: vec![false; right.len()],
    };
    if !s.search(&roots) {
        return None;
    }
    let map = s.map;
    let right_edges: BTreeSet<_> = right.edges.iter().copied().collect();
    let preserved = left
        .edges
        .iter()
        .all(|&(u, v, i)| right_edges.contains(&(map[u], map[v], i)));
    preserved.then_some(map)
}

// ---------------------------------------------------------------------------
// Output

const EDGE_COLORS: [&str; 8] = [
    "blue", "red", "green", "orange", "purple", "brown", "cyan", "magenta",
];

/// Graphviz rendering: one node per element labelled with its compact form,
/// edges labelled `i` and coloured by label.
pub fn to_dot<T: Display>(graph: &CrystalGraph<T>) -> String {
    let mut s = String::from("digraph crystal {\n");
    let _ = writeln!(s, "  node [shape=plaintext];");
    for (k, v) in graph.vertices.iter().enumerate() {
        let _ = writeln!(s, "  n{k} [label=\"{v}\"];");
    }
    for &(u, v, i) in &graph.edges {
        let color = EDGE_COLORS[(i.max(1) - 1) % EDGE_COLORS.len()];
        let _ = writeln!(s, "  n{u} -> n{v} [label=\"{i}\", color={color}];");
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burge::encode;
    use crate::graph::{enumerate_graphs, star};

    fn t(rows: &[&[usize]]) -> Tableau {
        Tableau::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn arr(top: &[usize], bottom: &[usize]) -> BurgeArray {
        BurgeArray::from_rows(top, bottom).unwrap()
    }

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn bracket_basics() {
        let st = BracketState::of(&[2, 1, 2], 1);
        assert_eq!(st.pairs, 1);
        assert!(st.unpaired_close.is_empty());
        assert_eq!(st.unpaired_open, vec![2]);
        let st = BracketState::of(&[1, 1, 2, 2, 1], 1);
        assert_eq!(
            (
                st.unpaired_close.clone(),
                st.unpaired_open.clone(),
                st.pairs
            ),
            (vec![0, 1], vec![2], 1)
        );
    }

    /// Iterated removal of adjacent "()" pairs, checked against the scan.
    #[test]
    fn bracket_scan_matches_iterated_cancellation() {
        fn cancel(word: &[usize], i: usize) -> (Vec<usize>, Vec<usize>) {
            let mut live: Vec<(usize, usize)> = word
                .iter()
                .copied()
                .enumerate()
                .filter(|&(_, x)| x == i || x == i + 1)
                .collect();
            loop {
                let hit = live.windows(2).position(|w| w[0].1 == i + 1 && w[1].1 == i);
                match hit {
                    Some(k) => {
                        live.drain(k..k + 2);
                    }
                    None => break,
                }
            }
            let close = live.iter().filter(|x| x.1 == i).map(|x| x.0).collect();
            let open = live.iter().filter(|x| x.1 == i + 1).map(|x| x.0).collect();
            (close, open)
        }
        let mut words = vec![vec![]];
        for _ in 0..7 {
            let mut next = Vec::new();
            for w in &words {
                for x in 1..=3 {
                    let mut w2: Vec<usize> = w.clone();
                    w2.push(x);
                    next.push(w2);
                }
            }
            words.extend(next.iter().cloned());
            words = next
                .into_iter()
                .chain(words)
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
        }
        for w in words {
            for i in 1..=2 {
                let st = BracketState::of(&w, i);
                assert_eq!(
                    (st.unpaired_close, st.unpaired_open),
                    cancel(&w, i),
                    "{w:?}"
                );
            }
        }
    }

    #[test]
    fn f_tableau_examples() {
        assert_eq!(f_tableau(&t(&[&[1, 1]]), 1), Some(t(&[&[1, 2]])));
        assert_eq!(f_tableau(&t(&[&[1], &[2]]), 1), None);
        assert_eq!(f_tableau(&t(&[&[1, 2], &[2]]), 1), None);
    }

    /// f_1 on Tab_m((2,1)): images stay in the set, move one letter 1 -> 2,
    /// and the edge count matches the sl2 string decomposition
    /// (one 2-string for m = 2; strings 3+2+2+1 for m = 3).
    #[test]
    fn f_tableau_oracle_on_small_shape() {
        for (m, edges) in [(2, 1), (3, 4)] {
            let model = TableauCrystal { max_letter: m };
            let all = Tableau::all_of_shape(&p(&[2, 1]), m);
            let mut count = 0;
            for x in &all {
                if let Some(y) = f_tableau(x, 1) {
                    count += 1;
                    assert!(all.contains(&y));
                    let (mut wx, wy) = (model.weight(x), model.weight(&y));
                    wx[0] -= 1;
                    wx[1] += 1;
                    assert_eq!(wx, wy);
                }
            }
            assert_eq!(count, edges, "m={m}");
        }
        assert_eq!(
            f_tableau(&t(&[&[1, 1], &[2]]), 1),
            Some(t(&[&[1, 2], &[2]]))
        );
    }

    #[test]
    fn e_tableau_examples() {
        assert_eq!(e_tableau(&t(&[&[1, 2]]), 1), Some(t(&[&[1, 1]])));
        let hw = t(&[&[1, 1, 1], &[2, 2], &[3]]);
        assert!((1..5).all(|i| e_tableau(&hw, i).is_none()));
    }

    #[test]
    fn tableau_operators_are_partial_inverses() {
        for size in 0..=6 {
            for shape in crate::partition::partitions_of(size) {
                for x in Tableau::all_of_shape(&shape, 4) {
                    for i in 1..4 {
                        if let Some(y) = f_tableau(&x, i) {
                            assert_eq!(y.shape(), shape);
                            assert_eq!(e_tableau(&y, i).as_ref(), Some(&x));
                        }
                        if let Some(y) = e_tableau(&x, i) {
                            assert_eq!(f_tableau(&y, i).as_ref(), Some(&x));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn burge_reading_word_examples() {
        let a = arr(&[3, 3, 4], &[2, 1, 3]);
        assert_eq!(burge_reading_word(&a, 1).letters(), &[2, 1]);
        assert_eq!(burge_reading_word(&a, 2).letters(), &[3, 2, 3, 3]);
        assert_eq!(burge_reading_word(&a, 3).letters(), &[4, 3, 3, 3]);
        assert_eq!(
            burge_reading_word(&arr(&[3, 4], &[2, 1]), 3).letters(),
            &[3, 4]
        );
    }

    #[test]
    fn f_burge_examples() {
        let a = arr(&[2, 3, 4], &[1, 2, 3]);
        assert_eq!(burge_reading_word(&a, 2).letters(), &[3, 2, 2, 3]);
        assert_eq!(f_burge(&a, 2).unwrap(), Some(arr(&[3, 3, 4], &[2, 1, 3])));
        assert_eq!(f_burge(&a, 3).unwrap(), Some(arr(&[3, 4, 4], &[2, 2, 1])));
        // the top-row 3 is an unpaired ')': it becomes a 4
        assert_eq!(
            f_burge(&arr(&[2, 3], &[1, 1]), 3).unwrap(),
            Some(arr(&[2, 4], &[1, 1]))
        );
        assert_eq!(f_burge(&arr(&[2, 3], &[1, 1]), 4).unwrap(), None);
    }

    #[test]
    fn e_burge_examples() {
        let a = arr(&[2, 3, 4], &[1, 2, 3]);
        assert_eq!(
            e_burge(&arr(&[3, 3, 4], &[2, 1, 3]), 2).unwrap(),
            Some(a.clone())
        );
        assert_eq!(e_burge(&arr(&[3, 4, 4], &[2, 2, 1]), 3).unwrap(), Some(a));
        // R̃_1 of [[2,3],[1,2]] is 2 1 2: the trailing 2 is an unpaired '('
        let b = arr(&[2, 3], &[1, 2]);
        let expected = decode(&e_tableau(&encode(&b), 1).unwrap()).unwrap();
        assert_eq!(e_burge(&b, 1).unwrap(), Some(expected.clone()));
        assert_eq!(expected, arr(&[2, 3], &[1, 1]));
        // the only raising that kills it
        assert_eq!(e_burge(&arr(&[2, 3], &[1, 1]), 1).unwrap(), None);
    }

    #[test]
    fn burge_operators_reject_non_pv_free() {
        let fig = arr(&[2, 3, 3, 4], &[1, 2, 1, 2]);
        assert_eq!(f_burge(&fig, 1), Err(Error::NotPvFree));
        assert_eq!(e_burge(&fig, 1), Err(Error::NotPvFree));
    }

    #[test]
    fn burge_operators_intertwine_small() {
        for n in 0..=5 {
            for g in enumerate_graphs(n).unwrap() {
                let a = g.to_burge_array();
                if !is_pv_free(&a) {
                    continue;
                }
                let tab = encode(&a);
                for i in 1..n {
                    assert_eq!(
                        f_burge(&a, i).unwrap().map(|b| encode(&b)),
                        f_tableau(&tab, i),
                        "{a} f{i}"
                    );
                    assert_eq!(
                        e_burge(&a, i).unwrap().map(|b| encode(&b)),
                        e_tableau(&tab, i),
                        "{a} e{i}"
                    );
                }
            }
        }
    }

    #[test]
    fn highest_weight_examples() {
        let model = BurgeCrystal { max_letter: 5 };
        assert!(is_highest_weight(
            &model,
            &star(5, 1).unwrap().to_burge_array()
        ));
        assert!(!is_highest_weight(&model, &arr(&[3, 3, 4], &[2, 1, 3])));
        assert!(is_highest_weight(&model, &BurgeArray::empty()));
    }

    #[test]
    fn extremal_examples() {
        let model = BurgeCrystal { max_letter: 4 };
        let hw = arr(&[2, 3], &[1, 1]);
        assert!(is_extremal(&model, &hw));
        // star centred at 3 has threshold degree sequence and hook shape
        assert!(is_extremal(&model, &star(4, 3).unwrap().to_burge_array()));
        // weight (1,1,1,1) is not a permutation of (2,1,1,0)
        let flat = arr(&[2, 4], &[1, 3]);
        assert_eq!(model.weight(&flat), vec![1, 1, 1, 1]);
        assert!(!is_extremal(&model, &flat));
    }

    #[test]
    fn generate_small_crystals() {
        let chain = generate_crystal(&TableauCrystal { max_letter: 2 }, [t(&[&[1]])]);
        assert_eq!(chain.len(), 2);
        assert_eq!(chain.edges, vec![(0, 1, 1)]);
        let adjoint = generate_crystal(&TableauCrystal { max_letter: 3 }, [t(&[&[1, 1], &[2]])]);
        assert_eq!(adjoint.len(), 8);
        assert!(check_stembridge(&adjoint).passed());
    }

    #[test]
    fn tableau_crystals_satisfy_stembridge() {
        for m in 2..=4 {
            for size in 1..=5 {
                for shape in crate::partition::partitions_of(size) {
                    if shape.len() > m {
                        continue;
                    }
                    let model = TableauCrystal { max_letter: m };
                    let g = generate_crystal(&model, Tableau::all_of_shape(&shape, m));
                    let rep = check_stembridge(&g);
                    assert!(
                        rep.passed(),
                        "{shape} m={m}: {:?}",
                        &rep.violations[..rep.violations.len().min(3)]
                    );
                    assert_eq!(g.components().len(), 1);
                }
            }
        }
    }

    #[test]
    fn corrupted_crystal_is_flagged() {
        let model = TableauCrystal { max_letter: 3 };
        let mut g = generate_crystal(&model, Tableau::all_of_shape(&p(&[2, 1]), 3));
        let e = g.edges[0];
        g.edges[0] = (e.0, e.1, if e.2 == 1 { 2 } else { 1 });
        let rep = check_stembridge(&g);
        assert!(!rep.passed());
        assert!(rep.violations.iter().any(|v| v.axiom == Axiom::Weight));
    }

    /// Two copies of a genuine crystal with one pair of equal-label edges
    /// cross-wired: weights, arrow uniqueness and string lengths survive, so
    /// only the local axioms can notice.
    #[test]
    fn cross_wired_crystal_is_flagged() {
        let model = TableauCrystal { max_letter: 3 };
        let g = generate_crystal(&model, Tableau::all_of_shape(&p(&[2, 1]), 3));
        let n = g.len();
        let mut bad = CrystalGraph {
            vertices: (0..2 * n).collect::<Vec<_>>(),
            edges: g
                .edges
                .iter()
                .flat_map(|&(u, v, i)| [(u, v, i), (u + n, v + n, i)])
                .collect(),
            weights: g.weights.iter().chain(&g.weights).cloned().collect(),
        };
        assert!(check_stembridge(&bad).passed());
        let mut flagged = 0;
        for (u, v, i) in g.edges.clone() {
            let trial = {
                for e in bad.edges.iter_mut() {
                    if *e == (u, v, i) {
                        *e = (u, v + n, i);
                    } else if *e == (u + n, v + n, i) {
                        *e = (u + n, v, i);
                    }
                }
                let rep = check_stembridge(&bad);
                for e in bad.edges.iter_mut() {
                    if *e == (u, v + n, i) {
                        *e = (u, v, i);
                    } else if *e == (u + n, v, i) {
                        *e = (u + n, v + n, i);
                    }
                }
                rep
            };
            assert!(trial
                .violations
                .iter()
                .all(|x| !matches!(x.axiom, Axiom::P2 | Axiom::Weight)));
            if !trial.passed() {
                flagged += 1;
            }
        }
        assert!(flagged > 0);
        assert!(check_stembridge(&bad).passed());
    }

    #[test]
    fn isomorphism_examples() {
        let model = TableauCrystal { max_letter: 3 };
        let two = generate_crystal(&TableauCrystal { max_letter: 2 }, [t(&[&[1]])]);
        let three = generate_crystal(&model, [t(&[&[1]])]);
        assert_eq!(crystal_isomorphic(&two, &three), None);
        let adj = generate_crystal(&model, [t(&[&[1, 1], &[2]])]);
        assert_eq!(
            crystal_isomorphic(&adj, &adj),
            Some((0..adj.len()).collect())
        );
    }

    #[test]
    fn burge_and_tableau_crystals_isomorphic_via_encode() {
        let shape = p(&[2, 1, 1]);
        let arrays = burge_arrays_of_shape(&shape, 4).unwrap();
        let bc = generate_crystal(&BurgeCrystal { max_letter: 4 }, arrays);
        let tc = generate_crystal(
            &TableauCrystal { max_letter: 4 },
            Tableau::all_of_shape(&shape, 4),
        );
        let map = crystal_isomorphic(&bc, &tc).expect("isomorphic");
        for (u, &w) in map.iter().enumerate() {
            assert_eq!(encode(&bc.vertices[u]), tc.vertices[w]);
        }
    }

    #[test]
    fn dot_output() {
        let g = generate_crystal(&BurgeCrystal { max_letter: 3 }, [arr(&[2], &[1])]);
        let dot = to_dot(&g);
        assert!(dot.starts_with("digraph crystal {"));
        assert!(dot.contains("n0 [label=\"2/1\"];"));
        // f_1 pairs the two letters; f_2 moves the top 2
        assert!(dot.contains("n0 -> n1 [label=\"2\", color=red];"));
        assert_eq!(dot, to_dot(&g));
    }

    #[test]
    fn json_output() {
        let g = generate_crystal(&BurgeCrystal { max_letter: 2 }, [arr(&[2], &[1])]);
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(
            json,
            r#"{"vertices":[{"top":[2],"bottom":[1]}],"edges":[],"weights":[[1,1]]}"#
        );
        let back: CrystalGraph<BurgeArray> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
    }
}
