//! Persistence diagrams of one-parameter filtrations.
//!
//! Standard boundary-matrix column reduction over Z/2 with the clearing
//! optimization: dimensions are processed top-down, and a cell that appears
//! as the pivot of a higher-dimensional column is skipped outright, since
//! its own column is guaranteed to reduce to zero.
//!
//! Diagrams separate finite pairs from essential classes; an essential
//! death is represented structurally (a separate birth list), never as a
//! sentinel float. Zero-length pairs are dropped from diagrams but still
//! appear in the raw [`Reduction`] pairing.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use thiserror::Error;

use crate::slicer::ScalarFiltration;

#[derive(Debug, Error)]
pub enum PersistenceError {
    #[error("requested dimension {requested} exceeds the filtration's top dimension {top}")]
    DimensionOverflow { requested: usize, top: usize },
}

/// The persistence diagram of one homology dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PersistenceDiagram {
    pub dim: usize,
    /// Finite (birth, death) pairs with birth < death, sorted.
    pub pairs: Vec<(f64, f64)>,
    /// Births of classes that never die, sorted.
    pub essential: Vec<f64>,
}

impl PersistenceDiagram {
    pub fn empty(dim: usize) -> Self {
        PersistenceDiagram { dim, pairs: Vec::new(), essential: Vec::new() }
    }

    /// Finite points plus essential classes.
    pub fn total_points(&self) -> usize {
        self.pairs.len() + self.essential.len()
    }
}

/// The raw pairing of a reduction: indices into the filtration's cell list.
/// Unlike diagrams, `pairs` keeps zero-length pairs, so together with
/// `essential` it accounts for every cell exactly once.
#[derive(Debug, Clone, PartialEq)]
pub struct Reduction {
    pub pairs: Vec<(usize, usize)>,
    pub essential: Vec<usize>,
}

/// Reduces the full boundary matrix and returns the cell pairing.
pub fn pairing(f: &ScalarFiltration) -> Reduction {
    let cells = f.cells();
    let m = cells.len();
    let top = f.top_dim().unwrap_or(0);

    let mut index_of: HashMap<&[usize], usize> = HashMap::with_capacity(m);
    for (i, c) in cells.iter().enumerate() {
        index_of.insert(c.vertices(), i);
    }

    // pivot cell -> column that holds it
    let mut pivot_owner: HashMap<usize, usize> = HashMap::new();
    let mut reduced: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut cleared: Vec<bool> = vec![false; m];
    let mut zero_column: Vec<bool> = vec![false; m];
    let mut pairs: Vec<(usize, usize)> = Vec::new();

    for d in (1..=top).rev() {
        for j in 0..m {
            if cells[j].dim() != d || cleared[j] {
                continue;
            }
            let mut col: Vec<usize> = boundary(cells[j].vertices(), &index_of);
            col.sort_unstable();
            loop {
                match col.last() {
                    None => {
                        zero_column[j] = true;
                        break;
                    }
                    Some(&piv) => match pivot_owner.get(&piv) {
                        Some(&owner) => col = sym_diff(&col, &reduced[&owner]),
                        None => {
                            pivot_owner.insert(piv, j);
                            pairs.push((piv, j));
                            cleared[piv] = true;
                            reduced.insert(j, col);
                            break;
                        }
                    },
                }
            }
        }
    }

    let essential: Vec<usize> = (0..m)
        .filter(|&i| {
            (cells[i].dim() == 0 || zero_column[i]) && !pivot_owner.contains_key(&i)
        })
        .collect();
    pairs.sort_unstable();
    Reduction { pairs, essential }
}

fn boundary(vertices: &[usize], index_of: &HashMap<&[usize], usize>) -> Vec<usize> {
    let mut col = Vec::with_capacity(vertices.len());
    for drop in 0..vertices.len() {
        let mut face = vertices.to_vec();
        face.remove(drop);
        col.push(
            *index_of
                .get(face.as_slice())
                .expect("filtrations are validated to contain every face"),
        );
    }
    col
}

/// Symmetric difference of two sorted index lists (addition over Z/2).
fn sym_diff(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Persistence diagrams in dimensions `0..=max_dim`.
///
/// Zero-length pairs are dropped. An empty filtration yields empty diagrams;
/// otherwise `max_dim` may not exceed the filtration's top dimension.
pub fn compute_diagrams(
    f: &ScalarFiltration,
    max_dim: usize,
) -> Result<Vec<PersistenceDiagram>, PersistenceError> {
    if f.is_empty() {
        return Ok((0..=max_dim).map(PersistenceDiagram::empty).collect());
    }
    let top = f.top_dim().expect("non-empty");
    if max_dim > top {
        return Err(PersistenceError::DimensionOverflow { requested: max_dim, top });
    }
    let red = pairing(f);
    let cells = f.cells();
    let mut diagrams: Vec<PersistenceDiagram> =
        (0..=max_dim).map(PersistenceDiagram::empty).collect();
    for &(i, j) in &red.pairs {
        let q = cells[i].dim();
        if q > max_dim {
            continue;
        }
        let (b, d) = (cells[i].value(), cells[j].value());
        if b < d {
            diagrams[q].pairs.push((b, d));
        }
    }
    for &i in &red.essential {
        let q = cells[i].dim();
        if q > max_dim {
            continue;
        }
        diagrams[q].essential.push(cells[i].value());
    }
    for dg in &mut diagrams {
        dg.pairs
            .sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.total_cmp(&b.1)));
        dg.essential.sort_by(f64::total_cmp);
    }
    Ok(diagrams)
}
