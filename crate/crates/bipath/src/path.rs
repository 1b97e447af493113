//! Monotone piecewise-linear paths and the discrete path search space.
//!
//! A [`MonotonePath`] is a sequence of waypoints that strictly increase in
//! every coordinate. Each segment carries a weight, the smallest component
//! of its unit direction, and the path is parameterized by accumulated
//! weight-stretched arc length: a segment of Euclidean length `L` and weight
//! `w` occupies an interval of length `w * L` of the path coordinate. Past
//! the last waypoint the path extends along the final direction, so every
//! grade of the plane eventually enters.
//!
//! # Determinism
//!
//! Admissible-move enumeration returns grid points in lexicographic order
//! and initial-point sampling is uniform under a caller-seeded RNG, so all
//! downstream searches are reproducible from a single seed.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grade::BiGrade;

#[derive(Debug, Error)]
pub enum PathError {
    #[error("a path needs at least two waypoints, got {got}")]
    TooFewWaypoints { got: usize },
    #[error("segment {index} does not strictly increase in every coordinate")]
    NonIncreasingSegment { index: usize },
    #[error("waypoint {index} has a non-finite coordinate")]
    NonFiniteWaypoint { index: usize },
    #[error("path coordinate must be non-negative, got {x}")]
    NegativeCoordinate { x: f64 },
}

/// How a grade is mapped to a path coordinate when slicing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ProjectionMode {
    /// Smallest path coordinate whose point dominates the grade (default).
    PushForward,
    /// Path coordinate of the Euclidean nearest point on the extended path,
    /// ties broken toward the smaller coordinate. Experimental: values are
    /// repaired upward afterwards to restore filtration validity.
    Orthogonal,
}

/// Weight of the segment from `p` to `q`: the smallest component of the
/// unit direction vector. Requires `q` to strictly dominate `p`.
pub fn segment_weight(p: BiGrade, q: BiGrade) -> Result<f64, PathError> {
    if !p.lt(&q) {
        return Err(PathError::NonIncreasingSegment { index: 0 });
    }
    let (dx, dy) = (q.x - p.x, q.y - p.y);
    let len = (dx * dx + dy * dy).sqrt();
    Ok((dx / len).min(dy / len))
}

/// One linear piece of a path, with its stretched parameterization cached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathSegment {
    pub start: BiGrade,
    pub end: BiGrade,
    /// Unit direction, componentwise positive.
    pub dir: [f64; 2],
    /// Euclidean length.
    pub len: f64,
    /// min(dir[0], dir[1]), in (0, 1/sqrt(2)].
    pub weight: f64,
    /// Path coordinate at which this segment begins.
    pub offset: f64,
    /// Length of the segment in the path coordinate: `weight * len`.
    pub stretched_len: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PathJson {
    waypoints: Vec<BiGrade>,
}

/// A strictly monotone piecewise-linear path in the grading plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PathJson", into = "PathJson")]
pub struct MonotonePath {
    waypoints: Vec<BiGrade>,
    segments: Vec<PathSegment>,
}

impl TryFrom<PathJson> for MonotonePath {
    type Error = PathError;
    fn try_from(j: PathJson) -> Result<Self, PathError> {
        MonotonePath::new(j.waypoints)
    }
}

impl From<MonotonePath> for PathJson {
    fn from(p: MonotonePath) -> PathJson {
        PathJson { waypoints: p.waypoints }
    }
}

impl MonotonePath {
    /// Validates the waypoint sequence: at least two points, all finite,
    /// each strictly dominating its predecessor (axis-parallel segments are
    /// rejected, since they would force an infinite stretched coordinate).
    pub fn new(waypoints: Vec<BiGrade>) -> Result<Self, PathError> {
        if waypoints.len() < 2 {
            return Err(PathError::TooFewWaypoints { got: waypoints.len() });
        }
        for (i, w) in waypoints.iter().enumerate() {
            if !w.is_finite() {
                return Err(PathError::NonFiniteWaypoint { index: i });
            }
        }
        let mut segments = Vec::with_capacity(waypoints.len() - 1);
        let mut offset = 0.0;
        for (i, pair) in waypoints.windows(2).enumerate() {
            let (p, q) = (pair[0], pair[1]);
            if !p.lt(&q) {
                return Err(PathError::NonIncreasingSegment { index: i });
            }
            let (dx, dy) = (q.x - p.x, q.y - p.y);
            let len = (dx * dx + dy * dy).sqrt();
            let dir = [dx / len, dy / len];
            let weight = dir[0].min(dir[1]);
            let stretched_len = weight * len;
            segments.push(PathSegment {
                start: p,
                end: q,
                dir,
                len,
                weight,
                offset,
                stretched_len,
            });
            offset += stretched_len;
        }
        Ok(MonotonePath { waypoints, segments })
    }

    pub fn waypoints(&self) -> &[BiGrade] {
        &self.waypoints
    }

    pub fn segments(&self) -> &[PathSegment] {
        &self.segments
    }

    /// Stretched length up to the last waypoint; the path itself extends
    /// beyond this coordinate.
    pub fn total_stretched_len(&self) -> f64 {
        let last = self.segments.last().expect("paths have at least one segment");
        last.offset + last.stretched_len
    }

    /// Point of the plane at path coordinate `x >= 0`. Coordinates past the
    /// last waypoint continue along the final segment's direction.
    pub fn point_at(&self, x: f64) -> Result<BiGrade, PathError> {
        if !(x >= 0.0) {
            return Err(PathError::NegativeCoordinate { x });
        }
        let seg = self
            .segments
            .iter()
            .find(|s| x < s.offset + s.stretched_len)
            .unwrap_or_else(|| self.segments.last().expect("non-empty"));
        let t = (x - seg.offset) / seg.weight;
        Ok(BiGrade::new(
            seg.start.x + t * seg.dir[0],
            seg.start.y + t * seg.dir[1],
        ))
    }

    /// Path coordinate at which the grade `g` enters the sliced filtration.
    pub fn entry_value(&self, g: BiGrade, mode: ProjectionMode) -> f64 {
        match mode {
            ProjectionMode::PushForward => self.push_forward(g),
            ProjectionMode::Orthogonal => self.orthogonal(g),
        }
    }

    /// inf { x >= 0 : point_at(x) >= g componentwise }, exact per segment.
    fn push_forward(&self, g: BiGrade) -> f64 {
        let x_for = |coord: usize| -> f64 {
            let (gc, pick): (f64, fn(&BiGrade) -> f64) = match coord {
                0 => (g.x, |p| p.x),
                _ => (g.y, |p| p.y),
            };
            let seg = self
                .segments
                .iter()
                .find(|s| pick(&s.end) >= gc)
                .unwrap_or_else(|| self.segments.last().expect("non-empty"));
            seg.offset + (gc - pick(&seg.start)) * seg.weight / seg.dir[coord]
        };
        x_for(0).max(x_for(1)).max(0.0)
    }

    /// Path coordinate of the Euclidean nearest point of the extended path,
    /// ties toward the smaller coordinate.
    fn orthogonal(&self, g: BiGrade) -> f64 {
        let mut best: Option<(f64, f64)> = None; // (squared distance, x)
        let last = self.segments.len() - 1;
        for (i, seg) in self.segments.iter().enumerate() {
            let t_raw = (g.x - seg.start.x) * seg.dir[0] + (g.y - seg.start.y) * seg.dir[1];
            let t = if i == last {
                t_raw.max(0.0)
            } else {
                t_raw.clamp(0.0, seg.len)
            };
            let px = seg.start.x + t * seg.dir[0];
            let py = seg.start.y + t * seg.dir[1];
            let d2 = (g.x - px) * (g.x - px) + (g.y - py) * (g.y - py);
            let x = seg.offset + seg.weight * t;
            // segments are visited in increasing path coordinate, so a
            // strict improvement keeps the smaller x on ties
            if best.map_or(true, |(bd2, _)| d2 < bd2) {
                best = Some((d2, x));
            }
        }
        best.expect("non-empty").1
    }
}

/// Which coordinates must exceed the grid before move enumeration stops.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TerminationRule {
    /// Stop once any coordinate would leave the grid (default).
    #[default]
    AnyAxis,
    /// Stop only once every coordinate would leave the grid.
    AllAxes,
}

/// JSON shape of a search space description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchSpaceConfig {
    pub grid_min: [f64; 2],
    pub grid_max: [f64; 2],
    /// Subdivision count per axis; axis i has `grid_steps[i] + 1` points.
    pub grid_steps: [usize; 2],
    /// Strip widths (delta) per axis.
    pub strip: [f64; 2],
    /// Lookahead multipliers (n) per axis.
    pub lookahead: [usize; 2],
    /// Maximum number of extension steps (T).
    pub horizon: usize,
    /// Upper corner of the initial region; starts are grid points at or
    /// below this in both coordinates.
    pub init_max: [f64; 2],
    #[serde(default, skip_serializing_if = "is_default_rule")]
    pub termination: TerminationRule,
}

fn is_default_rule(r: &TerminationRule) -> bool {
    *r == TerminationRule::AnyAxis
}

/// A validated search space: a regular grid plus move-window parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SearchSpaceConfig", into = "SearchSpaceConfig")]
pub struct SearchSpace {
    config: SearchSpaceConfig,
    grid: Vec<BiGrade>,
}

impl TryFrom<SearchSpaceConfig> for SearchSpace {
    type Error = String;
    fn try_from(c: SearchSpaceConfig) -> Result<Self, String> {
        SearchSpace::new(c).map_err(|e| e.to_string())
    }
}

impl From<SearchSpace> for SearchSpaceConfig {
    fn from(s: SearchSpace) -> SearchSpaceConfig {
        s.config
    }
}

impl SearchSpace {
    pub fn new(config: SearchSpaceConfig) -> Result<Self, SpaceError> {
        for i in 0..2 {
            if !config.grid_min[i].is_finite() || !config.grid_max[i].is_finite() {
                return Err(SpaceError::new("grid bounds must be finite"));
            }
            if config.grid_max[i] <= config.grid_min[i] {
                return Err(SpaceError::new("grid_max must exceed grid_min on every axis"));
            }
            if config.grid_steps[i] == 0 {
                return Err(SpaceError::new("grid_steps must be at least 1 on every axis"));
            }
            if !(config.strip[i] > 0.0) || !config.strip[i].is_finite() {
                return Err(SpaceError::new("strip widths must be positive and finite"));
            }
            if config.lookahead[i] == 0 {
                return Err(SpaceError::new("lookahead must be at least 1 on every axis"));
            }
        }
        if config.horizon == 0 {
            return Err(SpaceError::new("horizon must be at least 1"));
        }
        let mut grid = Vec::with_capacity((config.grid_steps[0] + 1) * (config.grid_steps[1] + 1));
        for ix in 0..=config.grid_steps[0] {
            let x = lattice_coord(config.grid_min[0], config.grid_max[0], config.grid_steps[0], ix);
            for iy in 0..=config.grid_steps[1] {
                let y =
                    lattice_coord(config.grid_min[1], config.grid_max[1], config.grid_steps[1], iy);
                grid.push(BiGrade::new(x, y));
            }
        }
        grid.sort_by(|a, b| a.lex_cmp(b));
        Ok(SearchSpace { config, grid })
    }

    pub fn config(&self) -> &SearchSpaceConfig {
        &self.config
    }

    /// Grid points in lexicographic order.
    pub fn grid(&self) -> &[BiGrade] {
        &self.grid
    }

    pub fn horizon(&self) -> usize {
        self.config.horizon
    }

    /// Grid points reachable from `current` after `steps_taken` extension
    /// steps, in lexicographic order. Empty once the horizon is reached or
    /// the strip guard leaves the grid; otherwise all grid points strictly
    /// inside the open window `(current_i, current_i + n_i * delta_i)` per
    /// coordinate.
    pub fn admissible_next_points(&self, current: BiGrade, steps_taken: usize) -> Vec<BiGrade> {
        if steps_taken >= self.config.horizon {
            return Vec::new();
        }
        let c = [current.x, current.y];
        let exceeded = |i: usize| c[i] + self.config.strip[i] > self.config.grid_max[i];
        let stop = match self.config.termination {
            TerminationRule::AnyAxis => exceeded(0) || exceeded(1),
            TerminationRule::AllAxes => exceeded(0) && exceeded(1),
        };
        if stop {
            return Vec::new();
        }
        let hi = [
            c[0] + self.config.lookahead[0] as f64 * self.config.strip[0],
            c[1] + self.config.lookahead[1] as f64 * self.config.strip[1],
        ];
        self.grid
            .iter()
            .copied()
            .filter(|p| c[0] < p.x && p.x < hi[0] && c[1] < p.y && p.y < hi[1])
            .collect()
    }

    /// Uniformly samples a start among grid points dominated by `init_max`.
    pub fn sample_initial_point(&self, rng: &mut impl Rng) -> Result<BiGrade, SpaceError> {
        let cands: Vec<BiGrade> = self
            .grid
            .iter()
            .copied()
            .filter(|p| p.x <= self.config.init_max[0] && p.y <= self.config.init_max[1])
            .collect();
        if cands.is_empty() {
            return Err(SpaceError::new("init region contains no grid points"));
        }
        Ok(cands[rng.random_range(0..cands.len())])
    }
}

fn lattice_coord(min: f64, max: f64, steps: usize, i: usize) -> f64 {
    if i == steps {
        max
    } else {
        min + i as f64 * (max - min) / steps as f64
    }
}

/// An invalid or unusable search-space description.
#[derive(Debug, Error)]
#[error("invalid search space: {reason}")]
pub struct SpaceError {
    reason: String,
}

impl SpaceError {
    pub(crate) fn new(reason: &str) -> Self {
        SpaceError { reason: reason.to_string() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn g(x: f64, y: f64) -> BiGrade {
        BiGrade::new(x, y)
    }

    fn close(a: f64, b: f64) {
        assert!((a - b).abs() <= 1e-12, "{a} vs {b}");
    }

    #[test]
    fn weight_of_diagonal_and_steep_segments() {
        close(segment_weight(g(0.0, 0.0), g(1.0, 1.0)).unwrap(), 1.0 / 2f64.sqrt());
        close(segment_weight(g(0.0, 0.0), g(2.0, 1.0)).unwrap(), 1.0 / 5f64.sqrt());
        assert!(segment_weight(g(0.0, 0.0), g(0.0, 1.0)).is_err());
        assert!(segment_weight(g(0.0, 0.0), g(-1.0, 1.0)).is_err());
    }

    #[test]
    fn rejects_non_monotone_waypoints() {
        assert!(matches!(
            MonotonePath::new(vec![g(0.0, 0.0)]),
            Err(PathError::TooFewWaypoints { got: 1 })
        ));
        assert!(matches!(
            MonotonePath::new(vec![g(0.0, 0.0), g(1.0, 0.0)]),
            Err(PathError::NonIncreasingSegment { index: 0 })
        ));
        assert!(matches!(
            MonotonePath::new(vec![g(0.0, 0.0), g(1.0, 1.0), g(0.5, 2.0)]),
            Err(PathError::NonIncreasingSegment { index: 1 })
        ));
    }

    #[test]
    fn point_at_matches_hand_values() {
        let p = MonotonePath::new(vec![g(0.0, 0.0), g(1.0, 1.0), g(3.0, 2.0)]).unwrap();
        let at = |x: f64| p.point_at(x).unwrap();
        close(at(0.0).x, 0.0);
        close(at(0.5).x, 0.5);
        close(at(0.5).y, 0.5);
        // second segment has weight 1/sqrt(5) and stretched length 1
        close(p.total_stretched_len(), 2.0);
        close(at(1.5).x, 2.0);
        close(at(1.5).y, 1.5);
        // extension past the last waypoint
        close(at(3.0).x, 5.0);
        close(at(3.0).y, 3.0);
        assert!(p.point_at(-0.1).is_err());
    }

    #[test]
    fn push_forward_entry_values() {
        let p = MonotonePath::new(vec![g(0.0, 0.0), g(1.0, 1.0), g(3.0, 2.0)]).unwrap();
        close(p.entry_value(g(2.0, 1.0), ProjectionMode::PushForward), 1.5);
        // grades below the start clamp to zero
        close(p.entry_value(g(-1.0, -5.0), ProjectionMode::PushForward), 0.0);
        // grades past the last waypoint use the extension
        close(p.entry_value(g(5.0, 2.0), ProjectionMode::PushForward), 3.0);
        // entry is where the last coordinate is reached
        let q = MonotonePath::new(vec![g(0.0, 0.0), g(2.0, 2.0)]).unwrap();
        close(q.entry_value(g(1.0, 1.0), ProjectionMode::PushForward), 1.0);
    }

    #[test]
    fn orthogonal_entry_matches_push_forward_on_the_path() {
        let p = MonotonePath::new(vec![g(0.0, 0.0), g(2.0, 2.0)]).unwrap();
        close(p.entry_value(g(1.0, 1.0), ProjectionMode::Orthogonal), 1.0);
        // off-path grade projects to the nearest point
        close(p.entry_value(g(1.0, 0.0), ProjectionMode::Orthogonal), 0.5);
    }

    fn space_0_3(strip: f64, lookahead: usize, horizon: usize) -> SearchSpace {
        SearchSpace::new(SearchSpaceConfig {
            grid_min: [0.0, 0.0],
            grid_max: [3.0, 3.0],
            grid_steps: [3, 3],
            strip: [strip, strip],
            lookahead: [lookahead, lookahead],
            horizon,
            init_max: [0.0, 0.0],
            termination: TerminationRule::AnyAxis,
        })
        .unwrap()
    }

    #[test]
    fn admissible_windows_are_open() {
        let s = space_0_3(1.0, 1, 10);
        assert!(s.admissible_next_points(g(1.0, 1.0), 0).is_empty());
        let s = space_0_3(1.5, 1, 10);
        assert_eq!(s.admissible_next_points(g(1.0, 1.0), 0), vec![g(2.0, 2.0)]);
    }

    #[test]
    fn horizon_and_strip_guard_terminate() {
        let s = space_0_3(1.5, 2, 2);
        assert!(s.admissible_next_points(g(0.0, 0.0), 2).is_empty());
        assert!(!s.admissible_next_points(g(0.0, 0.0), 1).is_empty());
        // strip guard: 2 + 1.5 > 3 stops enumeration under AnyAxis
        assert!(s.admissible_next_points(g(2.0, 2.0), 0).is_empty());
        let mut cfg = s.config().clone();
        cfg.termination = TerminationRule::AllAxes;
        let s2 = SearchSpace::new(cfg).unwrap();
        assert!(s2.admissible_next_points(g(2.0, 2.0), 0).is_empty());
        assert_eq!(
            s2.admissible_next_points(g(2.0, 0.0), 0),
            vec![g(3.0, 1.0), g(3.0, 2.0)]
        );
    }

    #[test]
    fn sampling_is_reproducible() {
        let mut cfg = space_0_3(1.0, 1, 10).config().clone();
        cfg.init_max = [1.0, 1.0];
        let s = SearchSpace::new(cfg).unwrap();
        let mut r1 = ChaCha8Rng::seed_from_u64(7);
        let mut r2 = ChaCha8Rng::seed_from_u64(7);
        let a = s.sample_initial_point(&mut r1).unwrap();
        let b = s.sample_initial_point(&mut r2).unwrap();
        assert_eq!(a, b);
        assert!(a.x <= 1.0 && a.y <= 1.0);

        let mut cfg = s.config().clone();
        cfg.init_max = [-1.0, -1.0];
        let empty = SearchSpace::new(cfg).unwrap();
        assert!(empty.sample_initial_point(&mut r1).is_err());
    }

    #[test]
    fn path_json_round_trip() {
        let p = MonotonePath::new(vec![g(0.0, 0.5), g(1.0, 1.5), g(2.0, 4.0)]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "{\"waypoints\":[[0.0,0.5],[1.0,1.5],[2.0,4.0]]}");
        let back: MonotonePath = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let bad: Result<MonotonePath, _> =
            serde_json::from_str("{\"waypoints\":[[0,0],[0,1]]}");
        assert!(bad.is_err());
    }
}
