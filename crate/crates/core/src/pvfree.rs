//! Peak and valley patterns in Burge arrays.
//!
//! A graph is a hook-graph exactly when its Burge array contains neither
//! pattern. Index triples returned here are 1-based column indices.

use serde::{Deserialize, Serialize};

use crate::burge::{encode, shape_of_graph};
use crate::error::{Error, Result};
use crate::graph::{BurgeArray, SimpleGraph};

/// Largest column count [`longest_pv_free_subarray`] will brute force.
pub const SUBARRAY_SEARCH_CAP: usize = 16;

/// Columns `i < j < k` (1-based) witnessing a peak or a valley.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "[usize; 3]", from = "[usize; 3]")]
pub struct Triple {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl From<Triple> for [usize; 3] {
    fn from(t: Triple) -> Self {
        [t.i, t.j, t.k]
    }
}

impl From<[usize; 3]> for Triple {
    fn from([i, j, k]: [usize; 3]) -> Self {
        Triple { i, j, k }
    }
}

/// A peak: `b_i ≤ b_k`, `j` is the least index in `(i, k)` with
/// `b_k < b_j`, and `a_i ≤ b_j`. The minimality of `j` is bound to the pair
/// `(i, k)`, so `j` is derived rather than searched. Returns the least
/// qualifying triple ordered by `(i, k)`.
pub fn find_peak(array: &BurgeArray) -> Option<Triple> {
    let cols = array.columns();
    let r = cols.len();
    for i in 0..r {
        let (a_i, b_i) = cols[i];
        for k in i + 2..r {
            let b_k = cols[k].1;
            if b_i > b_k {
                continue;
            }
            let Some(j) = (i + 1..k).find(|&j| b_k < cols[j].1) else {
                continue;
            };
            if a_i <= cols[j].1 {
                return Some(Triple {
                    i: i + 1,
                    j: j + 1,
                    k: k + 1,
                });
            }
        }
    }
    None
}

/// A valley: `b_j ≤ b_k < a_j` and `b_j < b_i`. Returns the
/// lexicographically least `(i, j, k)`.
pub fn find_valley(array: &BurgeArray) -> Option<Triple> {
    let cols = array.columns();
    let r = cols.len();
    for i in 0..r {
        for j in i + 1..r {
            let (a_j, b_j) = cols[j];
            if b_j >= cols[i].1 {
                continue;
            }
            for (k, &(_, b_k)) in cols.iter().enumerate().skip(j + 1) {
                if b_j <= b_k && b_k < a_j {
                    return Some(Triple {
                        i: i + 1,
                        j: j + 1,
                        k: k + 1,
                    });
                }
            }
        }
    }
    None
}

pub fn is_pv_free(array: &BurgeArray) -> bool {
    find_peak(array).is_none() && find_valley(array).is_none()
}

/// Hook-graph test through the array patterns alone.
pub fn is_hook_graph(g: &SimpleGraph) -> bool {
    is_pv_free(&g.to_burge_array())
}

/// Hook-graph test through the Burge shape.
pub fn has_hook_shape(g: &SimpleGraph) -> bool {
    shape_of_graph(g).is_hook()
}

/// Length of the longest PV-free column subsequence, by brute force over
/// subsets. Patterns are re-derived inside each subsequence.
pub fn longest_pv_free_subarray(array: &BurgeArray) -> Result<usize> {
    let r = array.len();
    if r > SUBARRAY_SEARCH_CAP {
        return Err(Error::CapExceeded {
            what: "column count",
            value: r,
            cap: SUBARRAY_SEARCH_CAP,
        });
    }
    if is_pv_free(array) {
        return Ok(r);
    }
    let mut best = 0;
    let mut indices = Vec::with_capacity(r);
    for mask in 0u32..(1 << r) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        indices.clear();
        indices.extend((0..r).filter(|&k| mask >> k & 1 == 1));
        if is_pv_free(&array.subarray(&indices)) {
            best = size;
        }
    }
    Ok(best)
}

/// Report for a single array: patterns found and the shape verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PvReport {
    pub peak: Option<Triple>,
    pub valley: Option<Triple>,
    pub pv_free: bool,
    pub hook_shape: bool,
}

pub fn pv_report(array: &BurgeArray) -> PvReport {
    let peak = find_peak(array);
    let valley = find_valley(array);
    PvReport {
        peak,
        valley,
        pv_free: peak.is_none() && valley.is_none(),
        hook_shape: encode(array).shape().is_hook(),
    }
}
