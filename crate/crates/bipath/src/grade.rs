//! Points of the two-parameter grading plane.
//!
//! A [`BiGrade`] is a point of `R^2` under the componentwise partial order.
//! Grades double as path waypoints, so they serialize as a plain `[x, y]`
//! pair in JSON.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A point in the two-parameter plane, ordered componentwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct BiGrade {
    pub x: f64,
    pub y: f64,
}

impl BiGrade {
    pub fn new(x: f64, y: f64) -> Self {
        BiGrade { x, y }
    }

    /// Componentwise `self <= other` (the partial order of the plane).
    pub fn le(&self, other: &BiGrade) -> bool {
        self.x <= other.x && self.y <= other.y
    }

    /// Strict domination: `self < other` in every coordinate.
    pub fn lt(&self, other: &BiGrade) -> bool {
        self.x < other.x && self.y < other.y
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Total order by `x` then `y`, used only as a deterministic tie-break.
    pub fn lex_cmp(&self, other: &BiGrade) -> Ordering {
        self.x
            .total_cmp(&other.x)
            .then_with(|| self.y.total_cmp(&other.y))
    }

    /// Canonical text key, stable across runs of the same binary.
    pub fn key(&self) -> String {
        format!("{},{}", self.x, self.y)
    }
}

impl From<[f64; 2]> for BiGrade {
    fn from(a: [f64; 2]) -> Self {
        BiGrade { x: a[0], y: a[1] }
    }
}

impl From<BiGrade> for [f64; 2] {
    fn from(g: BiGrade) -> Self {
        [g.x, g.y]
    }
}

impl fmt::Display for BiGrade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}
