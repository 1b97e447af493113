//! Restriction of a bifiltration to a one-parameter filtration along a path.
//!
//! Every simplex receives the path coordinate at which its grade enters the
//! slice. Push-forward entry values are monotone along face relations by
//! construction; orthogonal entry values are repaired upward (a cell never
//! appears before its faces) so the result is always a valid filtration.
//! Values are emitted directly in the weight-stretched path coordinate, so
//! no separate diagram rescaling step exists downstream.

use std::collections::HashMap;

use crate::bifiltration::{Bifiltration, ValidationError};
use crate::path::{MonotonePath, ProjectionMode};

/// A simplex with its scalar filtration value.
#[derive(Debug, Clone, PartialEq)]
pub struct FilteredCell {
    vertices: Vec<usize>,
    value: f64,
}

impl FilteredCell {
    pub fn new(vertices: Vec<usize>, value: f64) -> Self {
        FilteredCell { vertices, value }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn value(&self) -> f64 {
        self.value
    }
}

/// A one-parameter filtered complex, cells sorted by
/// (value, dimension, vertex order).
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarFiltration {
    cells: Vec<FilteredCell>,
}

impl ScalarFiltration {
    /// Sorts the cells canonically and checks that every face is present
    /// with a value no larger than its cofaces.
    pub fn new(mut cells: Vec<FilteredCell>) -> Result<Self, ValidationError> {
        cells.sort_by(|a, b| {
            a.value
                .total_cmp(&b.value)
                .then_with(|| a.dim().cmp(&b.dim()))
                .then_with(|| a.vertices.cmp(&b.vertices))
        });
        let mut by_vertices: HashMap<&[usize], usize> = HashMap::new();
        for (i, c) in cells.iter().enumerate() {
            if c.vertices.is_empty() {
                return Err(ValidationError::EmptySimplex);
            }
            if c.vertices.windows(2).any(|w| w[0] >= w[1]) {
                return Err(ValidationError::UnsortedVertices { simplex: c.vertices.clone() });
            }
            if by_vertices.insert(&c.vertices, i).is_some() {
                return Err(ValidationError::DuplicateSimplex { simplex: c.vertices.clone() });
            }
        }
        for c in &cells {
            if c.dim() == 0 {
                continue;
            }
            for drop in 0..c.vertices.len() {
                let mut face = c.vertices.clone();
                face.remove(drop);
                match by_vertices.get(face.as_slice()) {
                    None => {
                        return Err(ValidationError::MissingFace {
                            simplex: c.vertices.clone(),
                            face,
                        })
                    }
                    Some(&fi) => {
                        if cells[fi].value > c.value {
                            return Err(ValidationError::NonMonotoneGrade {
                                simplex: c.vertices.clone(),
                                face,
                            });
                        }
                    }
                }
            }
        }
        Ok(ScalarFiltration { cells })
    }

    pub fn cells(&self) -> &[FilteredCell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Largest cell dimension, or `None` when empty.
    pub fn top_dim(&self) -> Option<usize> {
        self.cells.iter().map(FilteredCell::dim).max()
    }

    /// Debug dump, one `dim value v0 ... vd` line per cell.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for c in &self.cells {
            out.push_str(&format!("{} {}", c.dim(), c.value));
            for v in &c.vertices {
                out.push_str(&format!(" {v}"));
            }
            out.push('\n');
        }
        out
    }
}

/// Slices a bifiltration along a path.
///
/// With [`ProjectionMode::Orthogonal`], raw nearest-point values may violate
/// face monotonicity; they are repaired upward in dimension order before the
/// filtration is assembled.
pub fn slice(b: &Bifiltration, path: &MonotonePath, mode: ProjectionMode) -> ScalarFiltration {
    let mut raw: Vec<(Vec<usize>, f64)> = b
        .simplices()
        .iter()
        .map(|s| (s.vertices().to_vec(), path.entry_value(s.grade(), mode)))
        .collect();

    if mode == ProjectionMode::Orthogonal {
        raw.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        let mut repaired: HashMap<Vec<usize>, f64> = HashMap::new();
        for (vertices, value) in raw.iter_mut() {
            if vertices.len() > 1 {
                for drop in 0..vertices.len() {
                    let mut face = vertices.clone();
                    face.remove(drop);
                    let fv = repaired[&face];
                    if fv > *value {
                        *value = fv;
                    }
                }
            }
            repaired.insert(vertices.clone(), *value);
        }
    }

    ScalarFiltration::new(
        raw.into_iter()
            .map(|(vertices, value)| FilteredCell::new(vertices, value))
            .collect(),
    )
    .expect("slicing a valid bifiltration yields a valid filtration")
}
