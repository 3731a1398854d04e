//! Exhaustive verification harness.
//!
//! Every suite enumerates its whole (small) state space and compares two
//! independent computations. Suites run in parallel and their reports are
//! merged in a fixed order, so the output does not depend on scheduling.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::burge::{decode, encode, encode_checked, shape_of_graph, standardize_burge_array};
use crate::crystal::{
    burge_arrays_of_shape, burge_brackets, burge_reading_word, check_stembridge,
    crystal_isomorphic, e_burge, e_tableau, f_burge, f_tableau, generate_crystal, is_extremal,
    is_highest_weight, BurgeCrystal, CrystalGraph, TableauCrystal,
};
use crate::error::{Error, Result};
use crate::graph::{
    enumerate_graphs, is_graphic, BurgeArray, SimpleGraph, DEFAULT_ENUMERATION_CAP,
};
use crate::partition::{threshold_partitions, Partition};
use crate::pvfree::{
    find_valley, has_hook_shape, is_hook_graph, is_pv_free, longest_pv_free_subarray,
};
use crate::tableau::Tableau;

/// Failure messages kept per suite; the count is always exact.
const RECORDED_FAILURES: usize = 8;

/// Deliberate defects for checking that the harness can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mutation {
    /// Treat every array as peak-free.
    IgnorePeaks,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    /// Largest vertex count for the graph-indexed suites.
    pub max_n: usize,
    /// Largest cell count for the tableau round trip.
    pub tableau_cells: usize,
    /// Largest entry for the tableau round trip.
    pub tableau_entries: usize,
    /// Largest vertex count for the star suite.
    pub star_n: usize,
    /// Largest alphabet for the Stembridge suite.
    pub crystal_m: usize,
    /// Longest sequence and largest entry for the Erdős–Gallai comparison.
    pub degree_len: usize,
    pub degree_max: usize,
    pub mutation: Option<Mutation>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_n: 5,
            tableau_cells: 8,
            tableau_entries: 6,
            star_n: 7,
            crystal_m: 5,
            degree_len: 6,
            degree_max: 5,
            mutation: None,
        }
    }
}

impl VerifyConfig {
    pub fn with_max_n(max_n: usize) -> Self {
        VerifyConfig {
            max_n,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let caps: [(&'static str, usize, usize); 6] = [
            ("max_n", self.max_n, DEFAULT_ENUMERATION_CAP),
            ("star_n", self.star_n, DEFAULT_ENUMERATION_CAP + 1),
            ("crystal_m", self.crystal_m, 6),
            ("tableau_cells", self.tableau_cells, 10),
            ("tableau_entries", self.tableau_entries, 8),
            ("degree_len", self.degree_len, 9),
        ];
        for (what, value, cap) in caps {
            if value > cap {
                return Err(Error::CapExceeded { what, value, cap });
            }
        }
        Ok(())
    }
}

/// Result of one suite. `elapsed` is kept out of the serialized form so
/// reports are byte-identical across runs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub passed: bool,
    pub checked: u64,
    pub failed: u64,
    pub failures: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

#[derive(Debug, Default)]
struct Tally {
    checked: u64,
    failed: u64,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < RECORDED_FAILURES {
                self.failures.push(msg());
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.failed += other.failed;
        let room = RECORDED_FAILURES - self.failures.len();
        self.failures.extend(other.failures.into_iter().take(room));
        self
    }
}

/// Runs `f` over every graph on `n` vertices in parallel chunks and merges
/// the tallies in enumeration order.
fn over_graphs(n: usize, f: impl Fn(&SimpleGraph, &mut Tally) + Sync) -> Tally {
    let graphs: Vec<SimpleGraph> = enumerate_graphs(n).expect("n within cap").collect();
    graphs
        .par_chunks(512)
        .map(|chunk| {
            let mut t = Tally::default();
            for g in chunk {
                f(g, &mut t);
            }
            t
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), Tally::merge)
}

fn over_graphs_up_to(max_n: usize, f: impl Fn(&SimpleGraph, &mut Tally) + Sync) -> Tally {
    (0..=max_n).fold(Tally::default(), |acc, n| acc.merge(over_graphs(n, &f)))
}

/// PV-free arrays of all graphs on `n` vertices.
fn pv_free_arrays(n: usize) -> Vec<BurgeArray> {
    enumerate_graphs(n)
        .expect("n within cap")
        .map(|g| g.to_burge_array())
        .filter(is_pv_free)
        .collect()
}

// ---------------------------------------------------------------------------
// Oracles

/// `s_λ(x_1, …, x_n)` as a map from exponent vectors to coefficients, by
/// enumerating semistandard tableaux.
pub fn schur_polynomial(shape: &Partition, n: usize) -> BTreeMap<Vec<usize>, u64> {
    let mut poly = BTreeMap::new();
    for t in Tableau::all_of_shape(shape, n) {
        let mut w = t.weight();
        w.resize(n, 0);
        *poly.entry(w).or_insert(0) += 1;
    }
    poly
}

/// Strict partitions of `n` with parts at most `max`.
fn strict_partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in strict_partitions(n - first, first - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Threshold partitions of `size` built directly: Frobenius coordinates
/// `(α | α + 1)` with `α + 1` a strict partition of `size / 2`.
pub fn threshold_partitions_direct(size: usize) -> Vec<Partition> {
    if size % 2 == 1 {
        return Vec::new();
    }
    let mut out: Vec<Partition> = strict_partitions(size / 2, size / 2)
        .into_iter()
        .map(|mu| {
            let d = mu.len();
            // column j (1-based, j ≤ d) has length mu_j + j
            let col_len: Vec<usize> = mu.iter().enumerate().map(|(j, &m)| m + j + 1).collect();
            let tallest = col_len.first().copied().unwrap_or(0);
            let mut parts: Vec<usize> = (1..=d).map(|i| mu[i - 1] - 1 + i).collect();
            parts.extend((d + 1..=tallest).map(|i| col_len.iter().filter(|&&c| c >= i).count()));
            Partition::new(parts).expect("Frobenius construction is a partition")
        })
        .collect();
    out.sort_by(|a, b| a.parts().cmp(b.parts()));
    out
}

/// Exponent vector to coefficient.
pub type Polynomial = BTreeMap<Vec<usize>, u64>;

/// Both sides of the Littlewood identity in `n` variables: degree sequences
/// of all graphs, and the sum of `s_λ` over threshold `λ` (including the
/// empty one). Returns `None` if the two threshold generators disagree.
pub fn littlewood_sides(n: usize) -> Option<(Polynomial, Polynomial)> {
    let mut graphs = BTreeMap::new();
    for g in enumerate_graphs(n).ok()? {
        *graphs.entry(g.degree_sequence()).or_insert(0) += 1;
    }
    let mut schur = BTreeMap::new();
    for size in (0..=n * n.saturating_sub(1)).step_by(2) {
        let fits = |l: &Partition| l.part(1) < n.max(1) && l.len() <= n;
        let filtered: Vec<Partition> = threshold_partitions(size)
            .into_iter()
            .filter(fits)
            .collect();
        let mut direct: Vec<Partition> = threshold_partitions_direct(size)
            .into_iter()
            .filter(fits)
            .collect();
        let mut sorted = filtered.clone();
        sorted.sort_by(|a, b| a.parts().cmp(b.parts()));
        direct.sort_by(|a, b| a.parts().cmp(b.parts()));
        if sorted != direct {
            return None;
        }
        for lam in &filtered {
            for (mono, c) in schur_polynomial(lam, n) {
                *schur.entry(mono).or_insert(0) += c;
            }
        }
    }
    Some((graphs, schur))
}

pub fn littlewood_check(n: usize) -> bool {
    littlewood_sides(n).is_some_and(|(l, r)| l == r)
}

/// Erdős–Gallai: even total and, for each `k`,
/// `Σ_{i≤k} d_i ≤ k(k−1) + Σ_{i>k} min(d_i, k)` on the sorted sequence.
pub fn erdos_gallai_oracle(degrees: &[usize]) -> bool {
    let mut d = degrees.to_vec();
    d.sort_unstable_by(|a, b| b.cmp(a));
    if d.iter().sum::<usize>() % 2 == 1 {
        return false;
    }
    (1..=d.len()).all(|k| {
        let lhs: usize = d[..k].iter().sum();
        let rhs = k * (k - 1) + d[k..].iter().map(|&x| x.min(k)).sum::<usize>();
        lhs <= rhs
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HookReport {
    pub n: usize,
    pub graphs: u64,
    pub counterexamples: Vec<SimpleGraph>,
}

/// Compares PV-freeness with hook shape for every graph on `n` vertices.
pub fn hook_characterization_exhaustive(n: usize) -> Result<HookReport> {
    hook_characterization_with(n, None)
}

fn hook_characterization_with(n: usize, mutation: Option<Mutation>) -> Result<HookReport> {
    let graphs: Vec<SimpleGraph> = enumerate_graphs(n)?.collect();
    let counterexamples: Vec<SimpleGraph> = graphs
        .par_iter()
        .filter(|g| {
            let a = g.to_burge_array();
            let pv_free = match mutation {
                Some(Mutation::IgnorePeaks) => find_valley(&a).is_none(),
                None => is_pv_free(&a),
            };
            pv_free != has_hook_shape(g)
        })
        .cloned()
        .collect();
    Ok(HookReport {
        n,
        graphs: graphs.len() as u64,
        counterexamples,
    })
}

// ---------------------------------------------------------------------------
// Reference crystals, transcribed vertex by vertex and arrow by arrow

/// A crystal given explicitly, for comparison with a generated one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceCrystal {
    pub shape: Partition,
    pub max_letter: usize,
    pub vertices: Vec<BurgeArray>,
    pub edges: Vec<(usize, usize, usize)>,
}

fn arrays(cols: &[(&[usize], &[usize])]) -> Vec<BurgeArray> {
    cols.iter()
        .map(|(t, b)| BurgeArray::from_rows(t, b).expect("reference arrays are valid"))
        .collect()
}

/// The drawn crystals on arrays of shapes `(2,1,1)` and `(3,1,1,1)` with
/// letters in `{1,2,3,4}`.
pub fn reference_crystals() -> Vec<ReferenceCrystal> {
    let hook211 = ReferenceCrystal {
        shape: Partition::new(vec![2, 1, 1]).expect("partition"),
        max_letter: 4,
        vertices: arrays(&[
            (&[2, 4], &[1, 3]),
            (&[3, 4], &[2, 3]),
            (&[2, 4], &[1, 2]),
            (&[3, 4], &[2, 2]),
            (&[3, 4], &[1, 3]),
            (&[2, 4], &[1, 1]),
            (&[3, 4], &[2, 1]),
            (&[2, 3], &[1, 2]),
            (&[3, 4], &[1, 2]),
            (&[3, 4], &[1, 1]),
            (&[2, 3], &[1, 1]),
            (&[3, 3], &[2, 1]),
            (&[4, 4], &[2, 1]),
            (&[4, 4], &[3, 1]),
            (&[4, 4], &[3, 2]),
        ]),
        edges: vec![
            (0, 4, 2),
            (1, 14, 3),
            (2, 0, 2),
            (3, 1, 2),
            (4, 1, 1),
            (4, 13, 3),
            (5, 2, 1),
            (5, 9, 2),
            (6, 12, 3),
            (7, 2, 3),
            (7, 11, 2),
            (8, 3, 1),
            (9, 8, 1),
            (10, 5, 3),
            (10, 7, 1),
            (11, 6, 3),
            (12, 13, 2),
            (13, 14, 1),
        ],
    };
    let hook3111 = ReferenceCrystal {
        shape: Partition::new(vec![3, 1, 1, 1]).expect("partition"),
        max_letter: 4,
        vertices: arrays(&[
            (&[2, 3, 4], &[1, 1, 1]),
            (&[3, 4, 4], &[1, 2, 1]),
            (&[2, 3, 4], &[1, 1, 3]),
            (&[3, 3, 4], &[2, 1, 3]),
            (&[3, 4, 4], &[2, 2, 1]),
            (&[2, 3, 4], &[1, 2, 3]),
            (&[4, 4, 4], &[3, 2, 1]),
            (&[2, 3, 4], &[1, 1, 2]),
            (&[3, 4, 4], &[2, 3, 1]),
            (&[2, 3, 4], &[1, 2, 2]),
        ]),
        edges: vec![
            (0, 7, 1),
            (1, 4, 1),
            (2, 1, 3),
            (2, 5, 1),
            (3, 8, 3),
            (4, 8, 2),
            (5, 3, 2),
            (5, 4, 3),
            (7, 2, 2),
            (7, 9, 1),
            (8, 6, 3),
            (9, 5, 2),
        ],
    };
    vec![hook211, hook3111]
}

type LabelledEdges = BTreeSet<(BurgeArray, BurgeArray, usize)>;

fn labelled_edges(vertices: &[BurgeArray], edges: &[(usize, usize, usize)]) -> LabelledEdges {
    edges
        .iter()
        .map(|&(u, v, i)| (vertices[u].clone(), vertices[v].clone(), i))
        .collect()
}

/// Same vertex set and same labelled edge set, independent of numbering.
pub fn matches_reference(graph: &CrystalGraph<BurgeArray>, reference: &ReferenceCrystal) -> bool {
    let gv: BTreeSet<_> = graph.vertices.iter().collect();
    let rv: BTreeSet<_> = reference.vertices.iter().collect();
    gv == rv
        && labelled_edges(&graph.vertices, &graph.edges)
            == labelled_edges(&reference.vertices, &reference.edges)
}

/// PV-free arrays of graphs on `[m]` whose Burge shape is `shape`, found by
/// enumerating graphs (independently of decoding tableaux).
pub fn pv_free_arrays_of_shape(shape: &Partition, m: usize) -> Vec<BurgeArray> {
    let mut out: Vec<BurgeArray> = pv_free_arrays(m)
        .into_iter()
        .filter(|a| encode(a).shape() == *shape)
        .collect();
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// Suites

fn arr(top: &[usize], bottom: &[usize]) -> BurgeArray {
    BurgeArray::from_rows(top, bottom).expect("literal arrays are valid")
}

fn tab(rows: &[&[usize]]) -> Tableau {
    Tableau::new(rows.iter().map(|r| r.to_vec()).collect()).expect("literal tableaux are valid")
}

fn suite_encode_example(_: &VerifyConfig) -> Tally {
    let mut t = Tally::default();
    let g = SimpleGraph::new(4, [(1, 2), (1, 3), (2, 3), (2, 4)]).expect("graph");
    let a = g.to_burge_array();
    t.check(a == arr(&[2, 3, 3, 4], &[1, 2, 1, 2]), || {
        format!("array {a}")
    });
    let expected = tab(&[&[1, 1, 2], &[2, 2], &[3, 3], &[4]]);
    let got = encode(&a);
    t.check(got == expected, || format!("tableau {got}"));
    t.check(decode(&expected).as_ref() == Ok(&a), || "decode".into());
    t.check(
        SimpleGraph::from_burge_array(&a, 4).as_ref() == Ok(&g),
        || "graph from array".into(),
    );
    t
}

fn suite_round_trip(cfg: &VerifyConfig) -> Tally {
    let mut t = over_graphs_up_to(cfg.max_n, |g, t| {
        let a = g.to_burge_array();
        let ok = encode_checked(&a)
            .and_then(|tab| decode(&tab))
            .is_ok_and(|back| back == a);
        t.check(ok, || format!("decode(encode({a})) differs"));
        let g_ok = SimpleGraph::from_burge_array(&a, g.num_vertices()).is_ok_and(|h| h == *g);
        t.check(g_ok, || format!("graph of {a} differs"));
    });
    let m = cfg.tableau_entries;
    for size in (0..=cfg.tableau_cells).step_by(2) {
        for shape in threshold_partitions(size) {
            for tableau in Tableau::all_of_shape(&shape, m) {
                let ok = decode(&tableau)
                    .is_ok_and(|a| a.max_entry().unwrap_or(0) <= m && encode(&a) == tableau);
                t.check(ok, || format!("encode(decode({tableau})) differs"));
            }
        }
    }
    t
}

fn suite_shape_invariants(cfg: &VerifyConfig) -> Tally {
    over_graphs_up_to(cfg.max_n, |g, t| {
        let tableau = encode(&g.to_burge_array());
        let shape = tableau.shape();
        let degrees = g.degree_sequence();
        t.check(shape.is_threshold(), || format!("{shape} not threshold"));
        t.check(shape.dominates(&degrees), || {
            format!("{shape} does not dominate {degrees:?}")
        });
        let mut w = tableau.weight();
        w.resize(g.num_vertices(), 0);
        t.check(w == degrees, || {
            format!("weight {w:?} vs degrees {degrees:?}")
        });
        if g.is_threshold_graph() {
            t.check(shape == g.degree_partition(), || {
                format!("threshold graph with shape {shape}")
            });
        }
    })
}

fn suite_hook_characterization(cfg: &VerifyConfig) -> Tally {
    let mut t = Tally::default();
    for n in 0..=cfg.max_n {
        let rep = hook_characterization_with(n, cfg.mutation).expect("n within cap");
        t.checked += rep.graphs - rep.counterexamples.len() as u64;
        for g in rep.counterexamples {
            t.check(false, || format!("n={n}: {}", g.to_burge_array()));
        }
    }
    t
}

fn suite_hook_trees(cfg: &VerifyConfig) -> Tally {
    over_graphs_up_to(cfg.max_n, |g, t| {
        let n = g.num_vertices();
        let comps = g.nontrivial_components();
        let connected = n >= 2 && comps.len() == 1 && comps[0].len() == n;
        if connected && is_hook_graph(g) {
            t.check(
                g.num_edges() == n - 1 && g.is_tree_up_to_singletons(),
                || format!("connected hook-graph {} is not a tree", g.to_burge_array()),
            );
        }
    })
}

fn suite_star_hooks(cfg: &VerifyConfig) -> Tally {
    let mut t = Tally::default();
    for n in 2..=cfg.star_n {
        for center in 1..=n {
            let others: Vec<usize> = (1..=n).filter(|&v| v != center).collect();
            for mask in 1u32..(1 << others.len()) {
                let edges = others
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &v)| (center, v));
                let g = SimpleGraph::new(n, edges).expect("star");
                t.check(is_hook_graph(&g) && has_hook_shape(&g), || {
                    format!("star {} is not a hook-graph", g.to_burge_array())
                });
            }
        }
    }
    t
}

fn suite_longest_subarray(_: &VerifyConfig) -> Tally {
    let mut t = Tally::default();
    let a = arr(&[4, 8, 8, 9, 9], &[1, 3, 2, 5, 2]);
    let shape = encode(&a).shape();
    t.check(shape.parts() == [3, 3, 2, 2], || format!("shape {shape}"));
    t.check(!is_pv_free(&a), || "full array is PV-free".into());
    let sub = a.subarray(&[0, 1, 3, 4]);
    t.check(sub == arr(&[4, 8, 9, 9], &[1, 3, 5, 2]), || {
        format!("subarray {sub}")
    });
    t.check(is_pv_free(&sub), || "subarray has a pattern".into());
    t.check(encode(&sub).shape().is_hook(), || {
        "subarray shape is not a hook".into()
    });
    let longest = longest_pv_free_subarray(&a);
    t.check(longest == Ok(4), || format!("longest {longest:?}"));
    // the largest hook inside (3,3,2,2) is (3,1,1,1), with 6 cells
    t.check(shape.largest_hook_size() == 6, || {
        format!("largest hook {}", shape.largest_hook_size())
    });
    t
}

fn suite_littlewood(cfg: &VerifyConfig) -> Tally {
    let mut t = Tally::default();
    for n in 1..=cfg.max_n {
        match littlewood_sides(n) {
            None => t.check(false, || format!("n={n}: threshold generators disagree")),
            Some((lhs, rhs)) => t.check(lhs == rhs, || {
                let diff = lhs
                    .iter()
                    .find(|(k, v)| rhs.get(*k) != Some(v))
                    .map(|(k, _)| k.clone())
                    .or_else(|| rhs.keys().find(|k| !lhs.contains_key(*k)).cloned());
                format!("n={n}: sides differ at {diff:?}")
            }),
        }
    }
    t
}

fn suite_erdos_gallai(cfg: &VerifyConfig) -> Tally {
    fn rec(prefix: &mut Vec<usize>, max: usize, len: usize, t: &mut Tally) {
        let d = prefix.clone();
        t.check(is_graphic(&d) == erdos_gallai_oracle(&d), || {
            format!("{d:?}")
        });
        if prefix.len() == len {
            return;
        }
        for x in 0..=max {
            prefix.push(x);
            rec(prefix, x, len, t);
            prefix.pop();
        }
    }
    let mut t = Tally::default();
    rec(&mut Vec::new(), cfg.degree_max, cfg.degree_len, &mut t);
    t
}

fn suite_standardization(cfg: &VerifyConfig) -> Tally {
    over_graphs_up_to(cfg.max_n, |g, t| {
        let a = g.to_burge_array();
        let alphabet: Vec<usize> = (1..=2 * a.len()).collect();
        let lhs = standardize_burge_array(&a, &alphabet).map(|s| encode(&s));
        let rhs = encode(&a).standardize(&alphabet);
        t.check(lhs.is_ok() && lhs == rhs, || {
            format!("{a}: {lhs:?} vs {rhs:?}")
        });
    })
}

fn suite_operator_examples(_: &VerifyConfig) -> Tally {
    let mut t = Tally::default();
    let a = arr(&[3, 3, 4], &[2, 1, 3]);
    for (array, i, word) in [
        (a.clone(), 1, vec![2, 1]),
        (a.clone(), 2, vec![3, 2, 3, 3]),
        (a.clone(), 3, vec![4, 3, 3, 3]),
        (arr(&[3, 4], &[2, 1]), 3, vec![3, 4]),
    ] {
        let got = burge_reading_word(&array, i);
        t.check(got.letters() == word, || {
            format!("reading word {i} of {array}: {got:?}")
        });
    }
    let g = arr(&[2, 3, 4], &[1, 2, 3]);
    let f2 = arr(&[3, 3, 4], &[2, 1, 3]);
    let f3 = arr(&[3, 4, 4], &[2, 2, 1]);
    t.check(f_burge(&g, 2) == Ok(Some(f2.clone())), || "f_2".into());
    t.check(f_burge(&g, 3) == Ok(Some(f3.clone())), || "f_3".into());
    t.check(e_burge(&f2, 2) == Ok(Some(g.clone())), || "e_2".into());
    t.check(e_burge(&f3, 3) == Ok(Some(g)), || "e_3".into());
    t
}

fn suite_operator_intertwining(cfg: &VerifyConfig) -> Tally {
    over_graphs_up_to(cfg.max_n, |g, t| {
        let a = g.to_burge_array();
        if !is_pv_free(&a) {
            return;
        }
        let n = g.num_vertices();
        let tableau = encode(&a);
        for i in 1..n {
            let fa = f_burge(&a, i).expect("PV-free");
            let ft = f_tableau(&tableau, i);
            t.check(fa.as_ref().map(encode) == ft, || format!("f_{i} on {a}"));
            if let Some(b) = &fa {
                let valid = BurgeArray::new(b.columns().to_vec()).is_ok() && is_pv_free(b);
                t.check(valid, || format!("f_{i}({a}) = {b} leaves the crystal"));
                t.check(e_burge(b, i) == Ok(Some(a.clone())), || {
                    format!("e_{i} f_{i} on {a}")
                });
                let (mut w, wb) = (a.content(n), b.content(n));
                w[i - 1] -= 1;
                w[i] += 1;
                t.check(w == wb, || format!("f_{i} weight on {a}"));
            }
            let ea = e_burge(&a, i).expect("PV-free");
            let et = e_tableau(&tableau, i);
            t.check(ea.as_ref().map(encode) == et, || format!("e_{i} on {a}"));
            if let Some(b) = &ea {
                let valid = BurgeArray::new(b.columns().to_vec()).is_ok() && is_pv_free(b);
                t.check(valid, || format!("e_{i}({a}) = {b} leaves the crystal"));
                t.check(f_burge(b, i) == Ok(Some(a.clone())), || {
                    format!("f_{i} e_{i} on {a}")
                });
            }
        }
    })
}

fn suite_single_pair(cfg: &VerifyConfig) -> Tally {
    over_graphs_up_to(cfg.max_n, |g, t| {
        let a = g.to_burge_array();
        if !is_pv_free(&a) {
            return;
        }
        for i in 1..g.num_vertices() {
            let pairs = burge_brackets(&a, i).pairs;
            t.check(pairs <= 1, || format!("{a}: {pairs} {i}-pairs"));
        }
    })
}

fn suite_knuth_reading(cfg: &VerifyConfig) -> Tally {
    over_graphs_up_to(cfg.max_n, |g, t| {
        let a = g.to_burge_array();
        if !is_pv_free(&a) {
            return;
        }
        let tableau = encode(&a);
        for i in 1..g.num_vertices() {
            let lhs = Tableau::schensted_p(&burge_reading_word(&a, i));
            let rhs = Tableau::schensted_p(&tableau.restricted_reading_word(i));
            t.check(lhs == rhs, || format!("{a}, i={i}: {lhs} vs {rhs}"));
        }
    })
}

fn suite_stembridge(cfg: &VerifyConfig) -> Tally {
    let mut t = Tally::default();
    for m in 1..=cfg.crystal_m {
        let seeds = pv_free_arrays(m);
        let count = seeds.len();
        let graph = generate_crystal(&BurgeCrystal { max_letter: m }, seeds);
        t.check(graph.len() == count, || {
            format!("m={m}: closure added vertices")
        });
        let rep = check_stembridge(&graph);
        t.check(rep.passed(), || {
            let v = &rep.violations[0];
            format!(
                "m={m}: {} at {}: {}",
                v.axiom, graph.vertices[v.vertex], v.detail
            )
        });
        // the checker must notice a relabelled edge
        if let Some(&(u, v, i)) = graph.edges.first() {
            let mut bad = graph.clone();
            bad.edges[0] = (u, v, if i == 1 { 2 } else { 1 });
            if m > 2 {
                t.check(!check_stembridge(&bad).passed(), || {
                    format!("m={m}: corruption missed")
                });
            }
        }
    }
    t
}

fn suite_highest_weight(cfg: &VerifyConfig) -> Tally {
    over_graphs_up_to(cfg.max_n, |g, t| {
        let a = g.to_burge_array();
        if !is_pv_free(&a) {
            return;
        }
        let model = BurgeCrystal {
            max_letter: g.num_vertices(),
        };
        // a star on {1, ..., k+1} centred at 1, the rest isolated: the
        // columns are exactly (2,1), (3,1), ..., (k+1,1)
        let star = a
            .columns()
            .iter()
            .enumerate()
            .all(|(c, &col)| col == (c + 2, 1));
        t.check(is_highest_weight(&model, &a) == star, || format!("{a}"));
    })
}

fn suite_extremal(cfg: &VerifyConfig) -> Tally {
    over_graphs_up_to(cfg.max_n, |g, t| {
        let a = g.to_burge_array();
        if !is_pv_free(&a) {
            return;
        }
        let model = BurgeCrystal {
            max_letter: g.num_vertices(),
        };
        let threshold = g.degree_partition().is_threshold();
        t.check(is_extremal(&model, &a) == threshold, || format!("{a}"));
    })
}

fn suite_reference_crystals(_: &VerifyConfig) -> Tally {
    let mut t = Tally::default();
    for r in reference_crystals() {
        let m = r.max_letter;
        let seeds = pv_free_arrays_of_shape(&r.shape, m);
        let decoded = burge_arrays_of_shape(&r.shape, m).map(|mut v| {
            v.sort();
            v
        });
        t.check(decoded.as_ref() == Ok(&seeds), || {
            format!("{}: seed sets differ", r.shape)
        });
        let graph = generate_crystal(&BurgeCrystal { max_letter: m }, seeds);
        t.check(graph.len() == r.vertices.len(), || {
            format!("{}: {} vertices", r.shape, graph.len())
        });
        t.check(matches_reference(&graph, &r), || {
            format!("{}: edges differ", r.shape)
        });
        t.check(check_stembridge(&graph).passed(), || {
            format!("{}: axioms", r.shape)
        });
        let tableaux = generate_crystal(
            &TableauCrystal { max_letter: m },
            Tableau::all_of_shape(&r.shape, m),
        );
        let via_encode = crystal_isomorphic(&graph, &tableaux).is_some_and(|map| {
            map.iter()
                .enumerate()
                .all(|(u, &w)| encode(&graph.vertices[u]) == tableaux.vertices[w])
        });
        t.check(via_encode, || {
            format!("{}: not isomorphic via encode", r.shape)
        });
    }
    t
}

type SuiteFn = fn(&VerifyConfig) -> Tally;

const SUITES: &[(&str, SuiteFn)] = &[
    ("encode-example", suite_encode_example),
    ("round-trip", suite_round_trip),
    ("shape-invariants", suite_shape_invariants),
    ("hook-characterization", suite_hook_characterization),
    ("hook-trees", suite_hook_trees),
    ("star-hooks", suite_star_hooks),
    ("longest-subarray", suite_longest_subarray),
    ("littlewood", suite_littlewood),
    ("erdos-gallai", suite_erdos_gallai),
    ("standardization", suite_standardization),
    ("operator-examples", suite_operator_examples),
    ("operator-intertwining", suite_operator_intertwining),
    ("single-pair", suite_single_pair),
    ("knuth-reading", suite_knuth_reading),
    ("stembridge", suite_stembridge),
    ("highest-weight", suite_highest_weight),
    ("extremal", suite_extremal),
    ("reference-crystals", suite_reference_crystals),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|&(name, _)| name).collect()
}

fn run_one(name: &str, suite: SuiteFn, cfg: &VerifyConfig) -> SuiteReport {
    let start = Instant::now();
    let tally = suite(cfg);
    SuiteReport {
        name: name.to_string(),
        passed: tally.failed == 0,
        checked: tally.checked,
        failed: tally.failed,
        failures: tally.failures,
        elapsed: start.elapsed(),
    }
}

pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let &(name, suite) = SUITES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::UnknownSuite(name.to_string()))?;
    Ok(run_one(name, suite, cfg))
}

/// Runs the named suites (all of them when `names` is empty) in parallel.
pub fn run_suites(names: &[&str], cfg: &VerifyConfig) -> Result<VerifySummary> {
    cfg.validate()?;
    let selected: Vec<(&str, SuiteFn)> = if names.is_empty() {
        SUITES.to_vec()
    } else {
        names
            .iter()
            .map(|name| {
                SUITES
                    .iter()
                    .find(|(n, _)| n == name)
                    .copied()
                    .ok_or_else(|| Error::UnknownSuite(name.to_string()))
            })
            .collect::<Result<_>>()?
    };
    let suites: Vec<SuiteReport> = selected
        .par_iter()
        .map(|&(name, suite)| run_one(name, suite, cfg))
        .collect();
    Ok(VerifySummary {
        passed: suites.iter().all(|s| s.passed),
        suites,
    })
}

pub fn run_all(cfg: &VerifyConfig) -> Result<VerifySummary> {
    run_suites(&[], cfg)
}

/// Shape of the Burge tableau of every graph on `n` vertices, tallied.
pub fn shape_census(n: usize) -> Result<BTreeMap<Partition, u64>> {
    let mut census = BTreeMap::new();
    for g in enumerate_graphs(n)? {
        *census.entry(shape_of_graph(&g)).or_insert(0) += 1;
    }
    Ok(census)
}
