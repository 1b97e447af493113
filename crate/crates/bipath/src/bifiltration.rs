//! Bifiltered simplicial complexes and their builders.
//!
//! A [`Bifiltration`] assigns each simplex a [`BiGrade`]; grades must be
//! monotone along face relations so that every sublevel set is a genuine
//! subcomplex. Complexes are stored as explicit simplex lists in a canonical
//! order (grade, then dimension, then vertex order), which keeps parsing,
//! serialization and downstream reductions deterministic.
//!
//! # File formats
//!
//! Point clouds: one point per line, coordinates separated by commas or
//! whitespace, `#` starts a comment line.
//!
//! Bifiltrations: line 1 is the literal token `bifiltration`, lines 2 and 3
//! are free-text axis labels, and every following non-empty non-comment line
//! is `v0 v1 ... vd gx gy` (sorted vertex ids, then the two grade
//! coordinates).

use std::collections::HashMap;

use thiserror::Error;

use crate::grade::BiGrade;

/// Text-level failures while reading point clouds or bifiltration files.
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("empty input: no data rows")]
    EmptyInput,
    #[error("line {line}: expected {expected} coordinates, found {found}")]
    MixedDimension {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: unparsable number {token:?}")]
    UnparsableNumber { line: usize, token: String },
    #[error("bad header: {reason}")]
    BadHeader { reason: String },
    #[error("line {line}: {reason}")]
    BadLine { line: usize, reason: String },
    #[error(transparent)]
    Invalid(#[from] ValidationError),
}

/// Structural failures of a would-be bifiltration or filtration.
#[derive(Debug, Error)]
pub enum ValidationError {
    #[error("simplex has no vertices")]
    EmptySimplex,
    #[error("simplex {simplex:?} has unsorted or repeated vertices")]
    UnsortedVertices { simplex: Vec<usize> },
    #[error("duplicate simplex {simplex:?}")]
    DuplicateSimplex { simplex: Vec<usize> },
    #[error("simplex {simplex:?} is missing its face {face:?}")]
    MissingFace {
        simplex: Vec<usize>,
        face: Vec<usize>,
    },
    #[error("non-monotone grade: simplex {simplex:?} is graded below its face {face:?}")]
    NonMonotoneGrade {
        simplex: Vec<usize>,
        face: Vec<usize>,
    },
    #[error("simplex {simplex:?} has a non-finite grade")]
    NonFiniteGrade { simplex: Vec<usize> },
}

/// Failures of the geometric builders.
#[derive(Debug, Error)]
pub enum BuildError {
    #[error("value count {values} does not match point count {points}")]
    LengthMismatch { values: usize, points: usize },
    #[error("max_radius must be positive and finite, got {radius}")]
    NonPositiveRadius { radius: f64 },
    #[error("KOutOfRange: k = {k} with {n} points (need 1 <= k <= n - 1)")]
    KOutOfRange { k: usize, n: usize },
}

/// A finite point set in `R^d`, all points of equal dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    points: Vec<Vec<f64>>,
}

impl PointCloud {
    /// Wraps a non-empty list of equal-dimension points.
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self, ParseError> {
        if points.is_empty() {
            return Err(ParseError::EmptyInput);
        }
        let dim = points[0].len();
        if dim == 0 {
            return Err(ParseError::EmptyInput);
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(ParseError::MixedDimension {
                    line: i + 1,
                    expected: dim,
                    found: p.len(),
                });
            }
        }
        Ok(PointCloud { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Ambient dimension of every point.
    pub fn dim(&self) -> usize {
        self.points[0].len()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    /// Euclidean distance between points `i` and `j`.
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.points[i]
            .iter()
            .zip(&self.points[j])
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

/// Parses a point cloud from text. Coordinates may be separated by commas,
/// whitespace, or both; `#` starts a comment line; blank lines are skipped.
pub fn parse_point_cloud(text: &str) -> Result<PointCloud, ParseError> {
    let mut points: Vec<Vec<f64>> = Vec::new();
    let mut expected: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut coords = Vec::new();
        for token in line.split(',').flat_map(str::split_whitespace) {
            let v: f64 = token.parse().map_err(|_| ParseError::UnparsableNumber {
                line: line_no,
                token: token.to_string(),
            })?;
            if !v.is_finite() {
                return Err(ParseError::UnparsableNumber {
                    line: line_no,
                    token: token.to_string(),
                });
            }
            coords.push(v);
        }
        if coords.is_empty() {
            continue;
        }
        match expected {
            None => expected = Some(coords.len()),
            Some(d) if d != coords.len() => {
                return Err(ParseError::MixedDimension {
                    line: line_no,
                    expected: d,
                    found: coords.len(),
                })
            }
            _ => {}
        }
        points.push(coords);
    }
    if points.is_empty() {
        return Err(ParseError::EmptyInput);
    }
    PointCloud::new(points)
}

/// A simplex together with its grade of appearance.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedSimplex {
    vertices: Vec<usize>,
    grade: BiGrade,
}

impl GradedSimplex {
    /// Requires strictly increasing vertex ids and a finite grade.
    pub fn new(vertices: Vec<usize>, grade: BiGrade) -> Result<Self, ValidationError> {
        if vertices.is_empty() {
            return Err(ValidationError::EmptySimplex);
        }
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ValidationError::UnsortedVertices { simplex: vertices });
        }
        if !grade.is_finite() {
            return Err(ValidationError::NonFiniteGrade { simplex: vertices });
        }
        Ok(GradedSimplex { vertices, grade })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn grade(&self) -> BiGrade {
        self.grade
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }
}

/// A finite bifiltered simplicial complex.
///
/// Invariants, checked at construction:
/// every proper face of every simplex is present, no vertex set appears
/// twice, and `grade(face) <= grade(simplex)` componentwise.
#[derive(Debug, Clone, PartialEq)]
pub struct Bifiltration {
    simplices: Vec<GradedSimplex>,
    max_dim: usize,
    x_label: String,
    y_label: String,
}

impl Bifiltration {
    pub fn new(simplices: Vec<GradedSimplex>) -> Result<Self, ValidationError> {
        Self::with_labels(simplices, "x", "y")
    }

    pub fn with_labels(
        mut simplices: Vec<GradedSimplex>,
        x_label: &str,
        y_label: &str,
    ) -> Result<Self, ValidationError> {
        simplices.sort_by(|a, b| {
            a.grade
                .lex_cmp(&b.grade)
                .then_with(|| a.dim().cmp(&b.dim()))
                .then_with(|| a.vertices.cmp(&b.vertices))
        });
        let mut by_vertices: HashMap<&[usize], usize> = HashMap::new();
        for (i, s) in simplices.iter().enumerate() {
            if by_vertices.insert(&s.vertices, i).is_some() {
                return Err(ValidationError::DuplicateSimplex {
                    simplex: s.vertices.clone(),
                });
            }
        }
        for s in &simplices {
            if s.dim() == 0 {
                continue;
            }
            for drop in 0..s.vertices.len() {
                let mut face = s.vertices.clone();
                face.remove(drop);
                match by_vertices.get(face.as_slice()) {
                    None => {
                        return Err(ValidationError::MissingFace {
                            simplex: s.vertices.clone(),
                            face,
                        })
                    }
                    Some(&fi) => {
                        if !simplices[fi].grade.le(&s.grade) {
                            return Err(ValidationError::NonMonotoneGrade {
                                simplex: s.vertices.clone(),
                                face,
                            });
                        }
                    }
                }
            }
        }
        let max_dim = simplices.iter().map(|s| s.dim()).max().unwrap_or(0);
        Ok(Bifiltration {
            simplices,
            max_dim,
            x_label: x_label.to_string(),
            y_label: y_label.to_string(),
        })
    }

    pub fn simplices(&self) -> &[GradedSimplex] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Largest simplex dimension present.
    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn labels(&self) -> (&str, &str) {
        (&self.x_label, &self.y_label)
    }

    /// Componentwise (min, max) over all simplex grades.
    pub fn grade_bounds(&self) -> Option<(BiGrade, BiGrade)> {
        let mut it = self.simplices.iter().map(|s| s.grade);
        let first = it.next()?;
        let mut lo = first;
        let mut hi = first;
        for g in it {
            lo.x = lo.x.min(g.x);
            lo.y = lo.y.min(g.y);
            hi.x = hi.x.max(g.x);
            hi.y = hi.y.max(g.y);
        }
        Some((lo, hi))
    }
}

/// Parses the bifiltration text format.
///
/// The first three physical lines are the header: the literal token
/// `bifiltration`, then the two axis labels. Comment (`#`) and blank lines
/// are skipped from line 4 on.
pub fn parse_bifiltration(text: &str) -> Result<Bifiltration, ParseError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| ParseError::BadHeader {
        reason: "empty file".to_string(),
    })?;
    if header.trim() != "bifiltration" {
        return Err(ParseError::BadHeader {
            reason: format!("expected the token \"bifiltration\", found {header:?}"),
        });
    }
    let x_label = lines
        .next()
        .ok_or_else(|| ParseError::BadHeader {
            reason: "missing x-axis label line".to_string(),
        })?
        .trim()
        .to_string();
    let y_label = lines
        .next()
        .ok_or_else(|| ParseError::BadHeader {
            reason: "missing y-axis label line".to_string(),
        })?
        .trim()
        .to_string();

    let mut simplices = Vec::new();
    for (idx, raw) in lines.enumerate() {
        let line_no = idx + 4;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() < 3 {
            return Err(ParseError::BadLine {
                line: line_no,
                reason: "expected `v0 v1 ... vd gx gy`".to_string(),
            });
        }
        let (vertex_tokens, grade_tokens) = tokens.split_at(tokens.len() - 2);
        let mut vertices = Vec::with_capacity(vertex_tokens.len());
        for t in vertex_tokens {
            let v: usize = t.parse().map_err(|_| ParseError::UnparsableNumber {
                line: line_no,
                token: t.to_string(),
            })?;
            vertices.push(v);
        }
        let mut grade = [0.0f64; 2];
        for (g, t) in grade.iter_mut().zip(grade_tokens) {
            *g = t.parse().map_err(|_| ParseError::UnparsableNumber {
                line: line_no,
                token: t.to_string(),
            })?;
        }
        let simplex = GradedSimplex::new(vertices, BiGrade::new(grade[0], grade[1]))
            .map_err(ParseError::Invalid)?;
        simplices.push(simplex);
    }
    if simplices.is_empty() {
        return Err(ParseError::EmptyInput);
    }
    Ok(Bifiltration::with_labels(simplices, &x_label, &y_label)?)
}

/// Writes the bifiltration text format; inverse of [`parse_bifiltration`]
/// up to simplex reordering.
pub fn serialize_bifiltration(b: &Bifiltration) -> String {
    let mut out = String::from("bifiltration\n");
    out.push_str(&b.x_label);
    out.push('\n');
    out.push_str(&b.y_label);
    out.push('\n');
    for s in &b.simplices {
        for v in &s.vertices {
            out.push_str(&v.to_string());
            out.push(' ');
        }
        out.push_str(&format!("{} {}\n", s.grade.x, s.grade.y));
    }
    out
}

/// Function-Rips bifiltration of a point cloud.
///
/// The first grade coordinate of a simplex is its diameter (max pairwise
/// distance, 0 for vertices), the second the max of `vertex_values` over its
/// vertices. Simplices with diameter above `max_radius` are excluded; the
/// expansion stops at `max_dim`.
pub fn build_function_rips(
    pc: &PointCloud,
    vertex_values: &[f64],
    max_dim: usize,
    max_radius: f64,
) -> Result<Bifiltration, BuildError> {
    if vertex_values.len() != pc.len() {
        return Err(BuildError::LengthMismatch {
            values: vertex_values.len(),
            points: pc.len(),
        });
    }
    if !(max_radius > 0.0) || !max_radius.is_finite() {
        return Err(BuildError::NonPositiveRadius { radius: max_radius });
    }
    let n = pc.len();
    let mut dist = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = pc.distance(i, j);
            dist[i][j] = d;
            dist[j][i] = d;
        }
    }
    // upper neighbor sets keep the expansion free of duplicates
    let neighbors: Vec<Vec<usize>> = (0..n)
        .map(|i| ((i + 1)..n).filter(|&j| dist[i][j] <= max_radius).collect())
        .collect();

    let mut simplices = Vec::new();
    let mut verts = Vec::with_capacity(max_dim + 1);
    for v in 0..n {
        verts.push(v);
        expand_cofaces(
            &dist,
            vertex_values,
            max_dim,
            max_radius,
            &mut verts,
            0.0,
            vertex_values[v],
            &neighbors[v],
            &mut simplices,
        );
        verts.pop();
    }
    Ok(
        Bifiltration::with_labels(simplices, "rips", "value")
            .expect("rips expansion yields a valid bifiltration"),
    )
}

#[allow(clippy::too_many_arguments)]
fn expand_cofaces(
    dist: &[Vec<f64>],
    values: &[f64],
    max_dim: usize,
    max_radius: f64,
    verts: &mut Vec<usize>,
    diam: f64,
    fval: f64,
    candidates: &[usize],
    out: &mut Vec<GradedSimplex>,
) {
    out.push(
        GradedSimplex::new(verts.clone(), BiGrade::new(diam, fval))
            .expect("expansion emits sorted vertices and finite grades"),
    );
    if verts.len() == max_dim + 1 {
        return;
    }
    // candidates are larger than every current vertex and within max_radius
    // of all of them, so each extension stays within the radius cap
    for (idx, &u) in candidates.iter().enumerate() {
        let mut new_diam = diam;
        for &w in verts.iter() {
            new_diam = new_diam.max(dist[w][u]);
        }
        let new_fval = fval.max(values[u]);
        let next: Vec<usize> = candidates[idx + 1..]
            .iter()
            .copied()
            .filter(|&w| dist[u][w] <= max_radius)
            .collect();
        verts.push(u);
        expand_cofaces(
            dist, values, max_dim, max_radius, verts, new_diam, new_fval, &next, out,
        );
        verts.pop();
    }
}

/// Codensity values: distance from each point to its k-th nearest neighbor.
pub fn build_codensity_values(pc: &PointCloud, k: usize) -> Result<Vec<f64>, BuildError> {
    let n = pc.len();
    if k == 0 || k >= n {
        return Err(BuildError::KOutOfRange { k, n });
    }
    let mut values = Vec::with_capacity(n);
    for i in 0..n {
        let mut dists: Vec<f64> = (0..n).filter(|&j| j != i).map(|j| pc.distance(i, j)).collect();
        dists.sort_unstable_by(f64::total_cmp);
        values.push(dists[k - 1]);
    }
    Ok(values)
}
