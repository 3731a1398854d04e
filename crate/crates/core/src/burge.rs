//! Burge's insertion/recording algorithm between Burge arrays and tableaux
//! of threshold shape.
//!
//! Each column `(a, b)` is processed by Schensted-inserting `b`, which adds a
//! cell `(s, t)`, and then recording `a` in the opposite cell. The inverse
//! removes the largest entry (rightmost among equal ones), reverse-bumps the
//! entry sitting in the opposite cell and emits the pair.

use crate::error::{Error, Result};
use crate::graph::{BurgeArray, SimpleGraph};
use crate::partition::{Cell, Partition};
use crate::tableau::{check_alphabet, Tableau};

/// Inserts one column `(a, b)` into a threshold-shaped tableau.
///
/// Fails with [`Error::OutOfOrderInsertion`] when the recorded entry does
/// not land in an addable cell or breaks semistandardness, which signals
/// that columns were fed out of Burge order.
pub fn burge_insert(tableau: &Tableau, a: usize, b: usize) -> Result<Tableau> {
    let mut t = tableau.clone();
    insert_column(&mut t, a, b, true)?;
    Ok(t)
}

fn insert_column(t: &mut Tableau, a: usize, b: usize, check: bool) -> Result<()> {
    let out_of_order = Error::OutOfOrderInsertion { top: a, bottom: b };
    if a <= b {
        return Err(out_of_order);
    }
    let added = t.insert_in_place(b);
    let target = added.opposite();
    let rows = t.rows_mut();
    let r = target.row - 1;
    let row_len = rows.get(r).map_or(0, Vec::len);
    if r > rows.len() || row_len + 1 != target.col || (r > 0 && rows[r - 1].len() < target.col) {
        return Err(out_of_order);
    }
    if check {
        let left_ok = target.col == 1 || rows[r][target.col - 2] <= a;
        let above_ok = r == 0 || rows[r - 1][target.col - 1] < a;
        if !left_ok || !above_ok {
            return Err(out_of_order);
        }
    }
    if r == rows.len() {
        rows.push(vec![a]);
    } else {
        rows[r].push(a);
    }
    if check && !t.shape().is_threshold() {
        return Err(Error::NotThresholdShape(t.shape()));
    }
    Ok(())
}

/// The threshold tableau of a Burge array.
pub fn encode(array: &BurgeArray) -> Tableau {
    let mut t = Tableau::empty();
    for &(a, b) in array.columns() {
        insert_column(&mut t, a, b, false).expect("valid Burge arrays insert cleanly");
    }
    debug_assert!(Tableau::new(t.rows().to_vec()).is_ok());
    t
}

/// [`encode`] with semistandardness and threshold shape checked after every
/// column. Used by the verification harness.
pub fn encode_checked(array: &BurgeArray) -> Result<Tableau> {
    let mut t = Tableau::empty();
    for &(a, b) in array.columns() {
        insert_column(&mut t, a, b, true)?;
    }
    Tableau::new(t.into_rows())
}

/// Inverse of [`encode`]. The tableau must have threshold shape.
pub fn decode(tableau: &Tableau) -> Result<BurgeArray> {
    let shape = tableau.shape();
    if !shape.is_threshold() {
        return Err(Error::NotThresholdShape(shape));
    }
    let mut t = tableau.clone();
    let mut columns = Vec::with_capacity(t.num_cells() / 2);
    while !t.is_empty() {
        let corner = largest_rightmost_cell(&t);
        let a = t.get(corner).expect("corner is a cell");
        remove_cell(&mut t, corner);
        let opposite = corner.opposite();
        let b = t.reverse_bump_in_place(opposite).map_err(|_| {
            Error::InvalidTableau(format!("opposite cell {opposite} is not removable"))
        })?;
        columns.push((a, b));
    }
    columns.reverse();
    BurgeArray::new(columns)
}

/// Cell holding the maximum entry with the greatest column index. Column
/// strictness makes it unique; the row tie-break only keeps this total.
fn largest_rightmost_cell(t: &Tableau) -> Cell {
    let mut best: Option<(usize, usize, usize)> = None;
    for (r, row) in t.rows().iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            let key = (v, c, r);
            if best.is_none_or(|b| key > b) {
                best = Some(key);
            }
        }
    }
    let (_, c, r) = best.expect("tableau is nonempty");
    Cell::new(r + 1, c + 1)
}

fn remove_cell(t: &mut Tableau, cell: Cell) {
    let rows = t.rows_mut();
    let row = &mut rows[cell.row - 1];
    debug_assert_eq!(row.len(), cell.col);
    row.pop();
    if row.is_empty() {
        rows.remove(cell.row - 1);
    }
}

/// Shape of the Burge tableau of a graph.
pub fn shape_of_graph(g: &SimpleGraph) -> Partition {
    encode(&g.to_burge_array()).shape()
}

/// Relabels a Burge array over a strictly increasing alphabet of size `2r`:
/// the `1`s get the first letters left to right, then the `2`s, and so on.
/// A value occurs at most once per column, so "left to right" is column order.
pub fn standardize_burge_array(array: &BurgeArray, alphabet: &[usize]) -> Result<BurgeArray> {
    check_alphabet(alphabet, 2 * array.len())?;
    let mut slots: Vec<(usize, usize, bool)> = Vec::with_capacity(2 * array.len());
    for (k, &(a, b)) in array.columns().iter().enumerate() {
        slots.push((a, k, true));
        slots.push((b, k, false));
    }
    slots.sort_unstable();
    let mut columns = array.columns().to_vec();
    for (rank, (_, k, top)) in slots.into_iter().enumerate() {
        if top {
            columns[k].0 = alphabet[rank];
        } else {
            columns[k].1 = alphabet[rank];
        }
    }
    BurgeArray::new(columns)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::enumerate_graphs;

    fn t(rows: &[&[usize]]) -> Tableau {
        Tableau::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn arr(top: &[usize], bottom: &[usize]) -> BurgeArray {
        BurgeArray::from_rows(top, bottom).unwrap()
    }

    #[test]
    fn burge_insert_steps() {
        let t1 = burge_insert(&Tableau::empty(), 2, 1).unwrap();
        assert_eq!(t1, t(&[&[1], &[2]]));
        let t2 = burge_insert(&t1, 3, 2).unwrap();
        assert_eq!(t2, t(&[&[1, 2], &[2], &[3]]));
        let t3 = burge_insert(&t2, 3, 1).unwrap();
        assert_eq!(t3, t(&[&[1, 1], &[2, 2], &[3, 3]]));
        let t4 = burge_insert(&t3, 4, 2).unwrap();
        assert_eq!(t4, t(&[&[1, 1, 2], &[2, 2], &[3, 3], &[4]]));
    }

    #[test]
    fn burge_insert_rejects_out_of_order_columns() {
        // (2,1) after (3,1): the recorded 2 lands below a 2
        let t1 = burge_insert(&Tableau::empty(), 3, 1).unwrap();
        assert!(matches!(
            burge_insert(&t1, 2, 1),
            Err(Error::OutOfOrderInsertion { top: 2, bottom: 1 })
        ));
        assert!(burge_insert(&Tableau::empty(), 1, 1).is_err());
    }

    #[test]
    fn encode_examples() {
        assert_eq!(
            encode(&arr(&[2, 3, 3, 4], &[1, 2, 1, 2])),
            t(&[&[1, 1, 2], &[2, 2], &[3, 3], &[4]])
        );
        assert_eq!(encode(&BurgeArray::empty()), Tableau::empty());
        assert_eq!(
            encode(&arr(&[4, 8, 8, 9, 9], &[1, 3, 2, 5, 2])),
            t(&[&[1, 2, 2], &[3, 5, 9], &[4, 8], &[8, 9]])
        );
    }

    #[test]
    fn decode_examples() {
        assert_eq!(
            decode(&t(&[&[1, 1, 2], &[2, 2], &[3, 3], &[4]])).unwrap(),
            arr(&[2, 3, 3, 4], &[1, 2, 1, 2])
        );
        assert_eq!(decode(&Tableau::empty()).unwrap(), BurgeArray::empty());
        assert_eq!(
            decode(&t(&[&[1, 2, 2], &[3, 5, 9], &[4, 8], &[8, 9]])).unwrap(),
            arr(&[4, 8, 8, 9, 9], &[1, 3, 2, 5, 2])
        );
        assert!(matches!(
            decode(&t(&[&[1, 2], &[2]])),
            Err(Error::NotThresholdShape(_))
        ));
    }

    #[test]
    fn shape_examples() {
        let fig = SimpleGraph::new(4, [(1, 2), (1, 3), (2, 3), (2, 4)]).unwrap();
        assert_eq!(shape_of_graph(&fig).parts(), &[3, 2, 2, 1]);
        let tree = SimpleGraph::from_burge_array(&arr(&[2, 4, 4], &[1, 3, 2]), 4).unwrap();
        assert_eq!(shape_of_graph(&tree).parts(), &[2, 2, 2]);
        assert!(shape_of_graph(&SimpleGraph::edgeless(3)).is_empty());
    }

    #[test]
    fn standardize_examples() {
        let alphabet: Vec<usize> = (1..=8).collect();
        assert_eq!(
            standardize_burge_array(&arr(&[2, 3, 3, 4], &[1, 2, 1, 2]), &alphabet).unwrap(),
            arr(&[3, 6, 7, 8], &[1, 4, 2, 5])
        );
        assert_eq!(
            standardize_burge_array(&BurgeArray::empty(), &[]).unwrap(),
            BurgeArray::empty()
        );
        assert_eq!(
            standardize_burge_array(&arr(&[2], &[1]), &[4, 9]).unwrap(),
            arr(&[9], &[4])
        );
        assert!(matches!(
            standardize_burge_array(&arr(&[2], &[1]), &[1, 2, 3]),
            Err(Error::AlphabetSize {
                expected: 2,
                found: 3
            })
        ));
    }

    #[test]
    fn round_trips_and_shapes_small_graphs() {
        for n in 0..=5 {
            for g in enumerate_graphs(n).unwrap() {
                let a = g.to_burge_array();
                let tab = encode_checked(&a).unwrap();
                assert_eq!(tab, encode(&a));
                assert_eq!(decode(&tab).unwrap(), a);
                let shape = tab.shape();
                assert!(shape.is_threshold());
                assert!(shape.dominates(&g.degree_sequence()));
                let mut w = tab.weight();
                w.resize(n, 0);
                assert_eq!(w, g.degree_sequence());
                if g.is_threshold_graph() {
                    assert_eq!(shape, g.degree_partition());
                }
            }
        }
    }

    #[test]
    fn standardization_intertwines_small_graphs() {
        for n in 0..=4 {
            for g in enumerate_graphs(n).unwrap() {
                let a = g.to_burge_array();
                let alphabet: Vec<usize> = (1..=2 * a.len()).collect();
                let lhs = encode(&standardize_burge_array(&a, &alphabet).unwrap());
                let rhs = encode(&a).standardize(&alphabet).unwrap();
                assert_eq!(lhs, rhs, "{a}");
            }
        }
    }
}
