use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{threshold_partitions, Partition};

/// Largest vertex count [`enumerate_graphs`] accepts by default.
pub const DEFAULT_ENUMERATION_CAP: usize = 7;

/// A simple graph on the vertex set `1..=n`. Edges are stored in the
/// canonical form `(larger, smaller)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct SimpleGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl SimpleGraph {
    /// Builds a graph from unordered vertex pairs. Loops, out-of-range
    /// vertices and repeated edges are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            let e = (u.max(v), u.min(v));
            if e.1 == 0 || e.0 > n {
                return Err(Error::InvalidGraph(format!(
                    "edge {{{}, {}}} outside vertex set 1..={n}",
                    e.0, e.1
                )));
            }
            if !set.insert(e) {
                return Err(Error::InvalidGraph(format!(
                    "repeated edge {{{}, {}}}",
                    e.0, e.1
                )));
            }
        }
        Ok(SimpleGraph { n, edges: set })
    }

    pub fn edgeless(n: usize) -> Self {
        SimpleGraph {
            n,
            edges: BTreeSet::new(),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(larger, smaller)` pairs in increasing order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.max(v), u.min(v)))
    }

    /// Orders the edges by larger endpoint ascending, then smaller endpoint
    /// descending. Isolated vertices leave no trace.
    pub fn to_burge_array(&self) -> BurgeArray {
        let mut columns: Vec<(usize, usize)> = self.edges.iter().copied().collect();
        columns.sort_unstable_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)));
        BurgeArray::from_columns_unchecked(columns)
    }

    /// Inverse of [`SimpleGraph::to_burge_array`] once the vertex count is known.
    pub fn from_burge_array(array: &BurgeArray, n: usize) -> Result<Self> {
        if let Some(&(a, _)) = array.columns().iter().find(|&&(a, _)| a > n) {
            return Err(Error::InvalidGraph(format!(
                "array entry {a} exceeds vertex count {n}"
            )));
        }
        SimpleGraph::new(n, array.columns().iter().copied())
    }

    /// Neighbour counts `(d_1, ..., d_n)` in vertex order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(a, b) in &self.edges {
            d[a - 1] += 1;
            d[b - 1] += 1;
        }
        d
    }

    pub fn degree_partition(&self) -> Partition {
        Partition::from_unsorted(&self.degree_sequence())
    }

    pub fn is_threshold_graph(&self) -> bool {
        self.degree_partition().is_threshold()
    }

    /// Connected components that contain at least one edge, each as a sorted
    /// vertex list.
    pub fn nontrivial_components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..=self.n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut root = x;
            while parent[root] != root {
                root = parent[root];
            }
            let mut cur = x;
            while parent[cur] != root {
                let next = parent[cur];
                parent[cur] = root;
                cur = next;
            }
            root
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        let degree = self.degree_sequence();
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for v in 1..=self.n {
            if degree[v - 1] > 0 {
                let root = find(&mut parent, v);
                groups.entry(root).or_default().push(v);
            }
        }
        groups.into_values().collect()
    }

    /// Connected and acyclic once isolated vertices are ignored.
    pub fn is_tree_up_to_singletons(&self) -> bool {
        let comps = self.nontrivial_components();
        comps.len() == 1 && self.num_edges() + 1 == comps[0].len()
    }
}

impl TryFrom<GraphRepr> for SimpleGraph {
    type Error = Error;

    fn try_from(r: GraphRepr) -> Result<Self> {
        SimpleGraph::new(r.n, r.edges.into_iter().map(|[a, b]| (a, b)))
    }
}

impl From<SimpleGraph> for GraphRepr {
    fn from(g: SimpleGraph) -> Self {
        GraphRepr {
            n: g.n,
            edges: g.edges.into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

/// The star on `1..=n` with every other vertex joined to `center`.
pub fn star(n: usize, center: usize) -> Result<SimpleGraph> {
    if n == 0 || center == 0 || center > n {
        return Err(Error::InvalidGraph(format!(
            "star center {center} not in 1..={n}"
        )));
    }
    SimpleGraph::new(n, (1..=n).filter(|&v| v != center).map(|v| (center, v)))
}

/// A sequence is graphic when its sorted form is dominated by some
/// threshold partition of the same total.
pub fn is_graphic(degrees: &[usize]) -> bool {
    let total: usize = degrees.iter().sum();
    threshold_partitions(total)
        .iter()
        .any(|lam| lam.dominates(degrees))
}

/// Iterator over every simple graph on `1..=n`, driven by a bitmask over the
/// vertex pairs in lexicographic order.
#[derive(Debug, Clone)]
pub struct GraphEnumerator {
    n: usize,
    pairs: Vec<(usize, usize)>,
    next_mask: u64,
    end: u64,
}

impl Iterator for GraphEnumerator {
    type Item = SimpleGraph;

    fn next(&mut self) -> Option<SimpleGraph> {
        if self.next_mask >= self.end {
            return None;
        }
        let mask = self.next_mask;
        self.next_mask += 1;
        let edges = self
            .pairs
            .iter()
            .enumerate()
            .filter(|&(bit, _)| mask >> bit & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Some(SimpleGraph { n: self.n, edges })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next_mask) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for GraphEnumerator {}

/// All `2^(n(n-1)/2)` simple graphs on `1..=n`, with the default cap.
pub fn enumerate_graphs(n: usize) -> Result<GraphEnumerator> {
    enumerate_graphs_with_cap(n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_graphs_with_cap(n: usize, cap: usize) -> Result<GraphEnumerator> {
    // 2^(n choose 2) must fit in the counter
    if n > cap || n > 11 {
        return Err(Error::CapExceeded {
            what: "vertex count",
            value: n,
            cap: cap.min(11),
        });
    }
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|a| (1..a).map(move |b| (a, b))).collect();
    Ok(GraphEnumerator {
        n,
        end: 1u64 << pairs.len(),
        pairs,
        next_mask: 0,
    })
}

/// The two-row array of a graph's edges in Burge order.
///
/// Every column `(a_k, b_k)` has `a_k > b_k`, the top row weakly increases,
/// and the bottom row strictly decreases along runs of equal top entries.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "ArrayRepr", into = "ArrayRepr")]
pub struct BurgeArray {
    columns: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct ArrayRepr {
    top: Vec<usize>,
    bottom: Vec<usize>,
}

impl BurgeArray {
    /// Validates the Burge-order invariants column by column.
    pub fn new(columns: Vec<(usize, usize)>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidBurgeArray(msg));
        for (k, &(a, b)) in columns.iter().enumerate() {
            if b == 0 {
                return bad(format!("column {} has a zero entry", k + 1));
            }
            if a <= b {
                return bad(format!("column {} has top {a} not above bottom {b}", k + 1));
            }
        }
        for (k, w) in columns.windows(2).enumerate() {
            let ((a0, b0), (a1, b1)) = (w[0], w[1]);
            if a0 > a1 {
                return bad(format!("top row not weakly increasing at column {}", k + 2));
            }
            if a0 == a1 && b0 <= b1 {
                return bad(format!(
                    "bottom row not decreasing under equal top entries at column {}",
                    k + 2
                ));
            }
        }
        Ok(BurgeArray { columns })
    }

    /// Builds an array from separate rows.
    pub fn from_rows(top: &[usize], bottom: &[usize]) -> Result<Self> {
        if top.len() != bottom.len() {
            return Err(Error::InvalidBurgeArray(format!(
                "rows have lengths {} and {}",
                top.len(),
                bottom.len()
            )));
        }
        BurgeArray::new(top.iter().copied().zip(bottom.iter().copied()).collect())
    }

    pub(crate) fn from_columns_unchecked(columns: Vec<(usize, usize)>) -> Self {
        let a = BurgeArray { columns };
        debug_assert!(BurgeArray::new(a.columns.clone()).is_ok(), "{a:?}");
        a
    }

    pub fn empty() -> Self {
        BurgeArray::default()
    }

    pub fn columns(&self) -> &[(usize, usize)] {
        &self.columns
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn top(&self) -> Vec<usize> {
        self.columns.iter().map(|c| c.0).collect()
    }

    pub fn bottom(&self) -> Vec<usize> {
        self.columns.iter().map(|c| c.1).collect()
    }

    pub fn max_entry(&self) -> Option<usize> {
        self.columns.last().map(|c| c.0)
    }

    /// Multiplicity of each value `1..=m` across both rows, i.e. the degree
    /// sequence of the underlying graph padded to `m` vertices.
    pub fn content(&self, m: usize) -> Vec<usize> {
        let mut d = vec![0; m.max(self.max_entry().unwrap_or(0))];
        for &(a, b) in &self.columns {
            d[a - 1] += 1;
            d[b - 1] += 1;
        }
        d
    }

    /// The order-preserving subarray on the given column indices (0-based,
    /// strictly increasing). Deleting columns keeps the Burge invariants.
    pub fn subarray(&self, indices: &[usize]) -> BurgeArray {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        let columns = indices.iter().map(|&k| self.columns[k]).collect();
        BurgeArray::from_columns_unchecked(columns)
    }
}

impl TryFrom<ArrayRepr> for BurgeArray {
    type Error = Error;

    fn try_from(r: ArrayRepr) -> Result<Self> {
        BurgeArray::from_rows(&r.top, &r.bottom)
    }
}

impl From<BurgeArray> for ArrayRepr {
    fn from(a: BurgeArray) -> Self {
        ArrayRepr {
            top: a.top(),
            bottom: a.bottom(),
        }
    }
}

/// Compact `top/bottom` form, e.g. `234/123`. Entries are comma separated
/// once any of them has two digits.
impl fmt::Display for BurgeArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.max_entry().unwrap_or(0) >= 10 {
            ","
        } else {
            ""
        };
        let join = |row: Vec<usize>| {
            row.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(sep)
        };
        write!(f, "{}/{}", join(self.top()), join(self.bottom()))
    }
}
