//! Path-space search for discriminating paths.
//!
//! The objective is [`query_distance`]: slice both bifiltrations along a
//! candidate path, compute diagrams in one homology dimension, and measure
//! a diagram distance. Three maximization strategies are provided:
//!
//! * [`ensemble_search`]: independent uniform rollouts through the move
//!   grid, optionally seeded with caller-supplied paths;
//! * [`greedy_search`]: always extend by the admissible point with the
//!   highest partial-path value, ties toward the lexicographically
//!   smallest grade;
//! * [`qlearn_search`]: tabular Q-learning over waypoint-sequence states
//!   with an epsilon-greedy policy, plus an update trace that can be
//!   replayed bit-for-bit.
//!
//! [`matching_distance_approx`] is the baseline the searches are compared
//! against: the max of the same bottleneck objective over a deterministic
//! family of straight-line slices. Any path value therefore dominates the
//! baseline whenever the family is included in the evaluation set.
//!
//! All strategies draw every random choice from a single 64-bit seed via a
//! counter-based generator, so results are reproducible across platforms
//! and, for the ensemble, across thread counts.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bifiltration::Bifiltration;
use crate::distances::{bottleneck, wasserstein, DistanceError};
use crate::float_json;
use crate::grade::BiGrade;
use crate::path::{MonotonePath, PathError, ProjectionMode, SearchSpace, SpaceError};
use crate::persistence::{compute_diagrams, PersistenceError};
use crate::slicer::slice;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("search produced no path with at least two waypoints")]
    NoViablePath,
    #[error("hyperparameter {name} must lie in {range}, got {value}")]
    InvalidHyperParameter {
        name: &'static str,
        range: &'static str,
        value: f64,
    },
    #[error("slice family needs at least one line")]
    EmptySliceFamily,
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Persistence(#[from] PersistenceError),
    #[error(transparent)]
    Distance(#[from] DistanceError),
}

/// Which diagram distance scores a path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Metric {
    Bottleneck,
    Wasserstein,
}

/// Configuration of the path objective.
#[derive(Debug, Clone, PartialEq)]
pub struct QueryConfig {
    pub metric: Metric,
    /// Wasserstein exponent; ignored by the bottleneck metric.
    pub q: f64,
    /// Homology dimension whose diagrams are compared.
    pub hom_dim: usize,
    pub mode: ProjectionMode,
}

impl Default for QueryConfig {
    fn default() -> Self {
        QueryConfig {
            metric: Metric::Bottleneck,
            q: 1.0,
            hom_dim: 0,
            mode: ProjectionMode::PushForward,
        }
    }
}

/// Distance between the two bifiltrations along one path: slice both,
/// compute the configured diagrams, and compare them. Returns `+inf` when
/// the essential-class counts differ along this path, marking the path as
/// incomparable rather than failing.
pub fn query_distance(
    a: &Bifiltration,
    b: &Bifiltration,
    path: &MonotonePath,
    cfg: &QueryConfig,
) -> Result<f64, SearchError> {
    let fa = slice(a, path, cfg.mode);
    let fb = slice(b, path, cfg.mode);
    let da = compute_diagrams(&fa, cfg.hom_dim)?;
    let db = compute_diagrams(&fb, cfg.hom_dim)?;
    let (da, db) = (&da[cfg.hom_dim], &db[cfg.hom_dim]);
    let m = match cfg.metric {
        Metric::Bottleneck => bottleneck(da, db)?,
        Metric::Wasserstein => wasserstein(da, db, cfg.q)?,
    };
    Ok(m.cost)
}

/// One scored path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub path: MonotonePath,
    #[serde(with = "float_json")]
    pub value: f64,
}

/// Outcome of a search: the best path over everything evaluated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub best_path: MonotonePath,
    #[serde(with = "float_json")]
    pub best_value: f64,
    pub evaluations: u64,
    pub history: Vec<Evaluation>,
}

impl SearchResult {
    fn from_history(history: Vec<Evaluation>) -> Result<Self, SearchError> {
        let mut best: Option<usize> = None;
        for (i, e) in history.iter().enumerate() {
            if best.map_or(true, |bi| e.value > history[bi].value) {
                best = Some(i);
            }
        }
        let best = best.ok_or(SearchError::NoViablePath)?;
        Ok(SearchResult {
            best_path: history[best].path.clone(),
            best_value: history[best].value,
            evaluations: history.len() as u64,
            history,
        })
    }
}

fn rollout_points(space: &SearchSpace, rng: &mut ChaCha8Rng) -> Result<Vec<BiGrade>, SearchError> {
    let mut points = vec![space.sample_initial_point(rng)?];
    loop {
        let acts = space.admissible_next_points(*points.last().expect("non-empty"), points.len() - 1);
        if acts.is_empty() {
            return Ok(points);
        }
        points.push(acts[rng.random_range(0..acts.len())]);
    }
}

/// Uniform random rollouts plus any caller-seeded paths, best value wins.
///
/// Rollout `i` draws from an independent stream of the seed, so the result
/// does not depend on how the evaluations are scheduled across threads.
/// Rollouts that stop at a single waypoint (no admissible move from the
/// start) are discarded; the search fails with [`SearchError::NoViablePath`]
/// if nothing at all could be evaluated.
pub fn ensemble_search_with<E>(
    eval: E,
    space: &SearchSpace,
    n_rollouts: usize,
    seed: u64,
    seed_paths: &[MonotonePath],
) -> Result<SearchResult, SearchError>
where
    E: Fn(&MonotonePath) -> Result<f64, SearchError> + Sync,
{
    let seeded: Vec<Evaluation> = seed_paths
        .par_iter()
        .map(|p| {
            Ok(Evaluation {
                path: p.clone(),
                value: eval(p)?,
            })
        })
        .collect::<Result<_, SearchError>>()?;

    let rolled: Vec<Option<Evaluation>> = (0..n_rollouts)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64 + 1);
            let points = rollout_points(space, &mut rng)?;
            if points.len() < 2 {
                return Ok(None);
            }
            let path = MonotonePath::new(points).expect("rollouts strictly increase");
            let value = eval(&path)?;
            Ok(Some(Evaluation { path, value }))
        })
        .collect::<Result<_, SearchError>>()?;

    let mut history = seeded;
    history.extend(rolled.into_iter().flatten());
    SearchResult::from_history(history)
}

/// [`ensemble_search_with`] with the [`query_distance`] objective.
pub fn ensemble_search(
    a: &Bifiltration,
    b: &Bifiltration,
    space: &SearchSpace,
    cfg: &QueryConfig,
    n_rollouts: usize,
    seed: u64,
    seed_paths: &[MonotonePath],
) -> Result<SearchResult, SearchError> {
    ensemble_search_with(|p| query_distance(a, b, p, cfg), space, n_rollouts, seed, seed_paths)
}

/// Greedy rollout: from a sampled start, always extend by the admissible
/// point whose extended partial path scores highest (every candidate
/// evaluation is recorded), ties toward the lexicographically smallest
/// grade.
pub fn greedy_search_with<E>(
    eval: E,
    space: &SearchSpace,
    seed: u64,
) -> Result<SearchResult, SearchError>
where
    E: Fn(&MonotonePath) -> Result<f64, SearchError>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = vec![space.sample_initial_point(&mut rng)?];
    let mut history: Vec<Evaluation> = Vec::new();
    loop {
        let acts = space.admissible_next_points(*points.last().expect("non-empty"), points.len() - 1);
        if acts.is_empty() {
            break;
        }
        let mut best: Option<(BiGrade, f64)> = None;
        for cand in acts {
            let mut ext = points.clone();
            ext.push(cand);
            let path = MonotonePath::new(ext).expect("admissible moves strictly increase");
            let value = eval(&path)?;
            history.push(Evaluation { path, value });
            if best.map_or(true, |(_, bv)| value > bv) {
                best = Some((cand, value));
            }
        }
        points.push(best.expect("non-empty candidate set").0);
    }
    SearchResult::from_history(history)
}

/// [`greedy_search_with`] with the [`query_distance`] objective.
pub fn greedy_search(
    a: &Bifiltration,
    b: &Bifiltration,
    space: &SearchSpace,
    cfg: &QueryConfig,
    seed: u64,
) -> Result<SearchResult, SearchError> {
    greedy_search_with(|p| query_distance(a, b, p, cfg), space, seed)
}

/// Q-learning hyperparameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QParams {
    /// Learning rate, in (0, 1].
    pub alpha: f64,
    /// Discount factor, in [0, 1].
    pub gamma: f64,
    /// Probability of taking the argmax action, in [0, 1].
    pub exploit: f64,
    /// Score only completed paths instead of every partial path.
    pub terminal_only: bool,
}

impl Default for QParams {
    fn default() -> Self {
        QParams { alpha: 0.1, gamma: 0.9, exploit: 0.9, terminal_only: false }
    }
}

impl QParams {
    pub fn validate(&self) -> Result<(), SearchError> {
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(SearchError::InvalidHyperParameter {
                name: "alpha",
                range: "(0, 1]",
                value: self.alpha,
            });
        }
        if !(0.0..=1.0).contains(&self.gamma) {
            return Err(SearchError::InvalidHyperParameter {
                name: "gamma",
                range: "[0, 1]",
                value: self.gamma,
            });
        }
        if !(0.0..=1.0).contains(&self.exploit) {
            return Err(SearchError::InvalidHyperParameter {
                name: "exploit",
                range: "[0, 1]",
                value: self.exploit,
            });
        }
        Ok(())
    }
}

/// State-action value table. States are canonical waypoint-sequence keys,
/// actions canonical grade keys; unseen entries read 0.
#[derive(Debug, Clone, PartialEq)]
pub struct QTable {
    pub alpha: f64,
    pub gamma: f64,
    pub exploit: f64,
    values: HashMap<String, HashMap<String, f64>>,
}

impl QTable {
    pub fn new(params: &QParams) -> Self {
        QTable {
            alpha: params.alpha,
            gamma: params.gamma,
            exploit: params.exploit,
            values: HashMap::new(),
        }
    }

    /// Canonical state key of a waypoint sequence.
    pub fn state_key(points: &[BiGrade]) -> String {
        let keys: Vec<String> = points.iter().map(BiGrade::key).collect();
        keys.join(";")
    }

    pub fn get(&self, state: &str, action: &str) -> f64 {
        self.values
            .get(state)
            .and_then(|m| m.get(action))
            .copied()
            .unwrap_or(0.0)
    }

    /// One temporal-difference step toward `target`.
    pub fn learn(&mut self, state: &str, action: &str, target: f64) {
        let q = self
            .values
            .entry(state.to_string())
            .or_default()
            .entry(action.to_string())
            .or_insert(0.0);
        *q += self.alpha * (target - *q);
    }

    /// Best admissible action by table value, first (lexicographically
    /// smallest) on ties; `None` when no action is admissible.
    pub fn argmax(&self, state: &str, actions: &[BiGrade]) -> Option<BiGrade> {
        let mut best: Option<(BiGrade, f64)> = None;
        for &a in actions {
            let v = self.get(state, &a.key());
            if best.map_or(true, |(_, bv)| v > bv) {
                best = Some((a, v));
            }
        }
        best.map(|(a, _)| a)
    }

    pub fn len(&self) -> usize {
        self.values.values().map(HashMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn max_over(&self, state: &str, actions: &[String]) -> f64 {
        if actions.is_empty() {
            0.0
        } else {
            actions
                .iter()
                .map(|a| self.get(state, a))
                .fold(f64::NEG_INFINITY, f64::max)
        }
    }
}

/// One recorded Q-update, sufficient to replay the table exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    pub state: String,
    pub action: String,
    pub reward: f64,
    pub next_state: String,
    pub next_actions: Vec<String>,
}

/// Result of a Q-learning run: the search outcome, the learned table, and
/// the update trace.
#[derive(Debug, Clone, PartialEq)]
pub struct QLearnOutcome {
    pub result: SearchResult,
    pub table: QTable,
    pub trace: Vec<TraceStep>,
}

/// Replays a trace into a fresh table. Applying the same updates in the
/// same order reproduces the original table bit for bit.
pub fn replay_trace(trace: &[TraceStep], params: &QParams) -> QTable {
    let mut table = QTable::new(params);
    for step in trace {
        let future = table.max_over(&step.next_state, &step.next_actions);
        let target = step.reward + table.gamma * future;
        table.learn(&step.state, &step.action, target);
    }
    table
}

/// Tabular Q-learning over waypoint sequences.
///
/// Per episode: sample a start, then repeatedly pick an admissible action
/// (argmax with probability `exploit`, else uniform), score the extended
/// partial path (or only terminal paths with `terminal_only`), and apply
/// the one-step temporal-difference update. The best path seen across all
/// episodes wins.
pub fn qlearn_search_with<E>(
    eval: E,
    space: &SearchSpace,
    episodes: usize,
    params: &QParams,
    seed: u64,
) -> Result<QLearnOutcome, SearchError>
where
    E: Fn(&MonotonePath) -> Result<f64, SearchError>,
{
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut table = QTable::new(params);
    let mut trace: Vec<TraceStep> = Vec::new();
    let mut history: Vec<Evaluation> = Vec::new();

    for _ in 0..episodes {
        let mut points = vec![space.sample_initial_point(&mut rng)?];
        let mut state = QTable::state_key(&points);
        loop {
            let acts = space.admissible_next_points(*points.last().expect("non-empty"), points.len() - 1);
            if acts.is_empty() {
                break;
            }
            let chosen = if rng.random::<f64>() < params.exploit {
                table.argmax(&state, &acts).expect("non-empty action set")
            } else {
                acts[rng.random_range(0..acts.len())]
            };
            points.push(chosen);
            let next_state = QTable::state_key(&points);
            let next_acts: Vec<String> = space
                .admissible_next_points(chosen, points.len() - 1)
                .iter()
                .map(BiGrade::key)
                .collect();
            let terminal = next_acts.is_empty();
            let reward = if !params.terminal_only || terminal {
                let path = MonotonePath::new(points.clone()).expect("admissible moves strictly increase");
                let value = eval(&path)?;
                history.push(Evaluation { path, value });
                value
            } else {
                0.0
            };
            let future = table.max_over(&next_state, &next_acts);
            table.learn(&state, &chosen.key(), reward + params.gamma * future);
            trace.push(TraceStep {
                state: state.clone(),
                action: chosen.key(),
                reward,
                next_state: next_state.clone(),
                next_actions: next_acts,
            });
            state = next_state;
        }
    }

    Ok(QLearnOutcome {
        result: SearchResult::from_history(history)?,
        table,
        trace,
    })
}

/// [`qlearn_search_with`] with the [`query_distance`] objective.
pub fn qlearn_search(
    a: &Bifiltration,
    b: &Bifiltration,
    space: &SearchSpace,
    cfg: &QueryConfig,
    episodes: usize,
    params: &QParams,
    seed: u64,
) -> Result<QLearnOutcome, SearchError> {
    qlearn_search_with(|p| query_distance(a, b, p, cfg), space, episodes, params, seed)
}

/// A deterministic family of `n_slices` straight-line slices through the
/// box `[lo, hi]`, parameterized by angle in (0, pi/2) and perpendicular
/// offset. Each line is returned as a 2-waypoint path entering the box at
/// or below `lo` and leaving at or above `hi`, so no grade inside the box
/// is clamped.
pub fn slice_family(lo: BiGrade, hi: BiGrade, n_slices: usize) -> Vec<MonotonePath> {
    let mut hi = hi;
    if hi.x - lo.x <= 0.0 {
        hi.x = lo.x + 1.0;
    }
    if hi.y - lo.y <= 0.0 {
        hi.y = lo.y + 1.0;
    }
    let n_angles = (n_slices as f64).sqrt().ceil() as usize;
    let per_angle = n_slices.div_ceil(n_angles.max(1));
    let mut family = Vec::with_capacity(n_slices);
    'outer: for j in 0..n_angles {
        let theta = std::f64::consts::FRAC_PI_2 * (j + 1) as f64 / (n_angles + 1) as f64;
        let (sin, cos) = theta.sin_cos();
        let corners = [
            (lo.x, lo.y),
            (hi.x, lo.y),
            (lo.x, hi.y),
            (hi.x, hi.y),
        ];
        let cs: Vec<f64> = corners.iter().map(|&(x, y)| -x * sin + y * cos).collect();
        let cmin = cs.iter().copied().fold(f64::INFINITY, f64::min);
        let cmax = cs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        for k in 0..per_angle {
            if family.len() == n_slices {
                break 'outer;
            }
            let c = cmin + (cmax - cmin) * (k + 1) as f64 / (per_angle + 1) as f64;
            let anchor = (-c * sin, c * cos);
            let s_start = ((lo.x - anchor.0) / cos).min((lo.y - anchor.1) / sin);
            let s_end = ((hi.x - anchor.0) / cos).max((hi.y - anchor.1) / sin);
            let p0 = BiGrade::new(anchor.0 + s_start * cos, anchor.1 + s_start * sin);
            let p1 = BiGrade::new(anchor.0 + s_end * cos, anchor.1 + s_end * sin);
            family.push(MonotonePath::new(vec![p0, p1]).expect("positive-slope line through a box"));
        }
    }
    family
}

/// Baseline approximation of the matching distance: the maximum of the
/// bottleneck [`query_distance`] over [`slice_family`] applied to the
/// combined grade bounding box of the two bifiltrations.
pub fn matching_distance_approx(
    a: &Bifiltration,
    b: &Bifiltration,
    cfg: &QueryConfig,
    n_slices: usize,
) -> Result<f64, SearchError> {
    if n_slices == 0 {
        return Err(SearchError::EmptySliceFamily);
    }
    let (lo, hi) = combined_bounds(a, b);
    let family = slice_family(lo, hi, n_slices);
    let cfg = QueryConfig { metric: Metric::Bottleneck, ..cfg.clone() };
    let values: Vec<f64> = family
        .par_iter()
        .map(|p| query_distance(a, b, p, &cfg))
        .collect::<Result<_, SearchError>>()?;
    Ok(values.into_iter().fold(f64::NEG_INFINITY, f64::max))
}

/// Componentwise bounding box over both complexes' grades.
pub fn combined_bounds(a: &Bifiltration, b: &Bifiltration) -> (BiGrade, BiGrade) {
    let mut lo = BiGrade::new(0.0, 0.0);
    let mut hi = BiGrade::new(1.0, 1.0);
    let mut any = false;
    for bounds in [a.grade_bounds(), b.grade_bounds()].into_iter().flatten() {
        if !any {
            (lo, hi) = bounds;
            any = true;
        } else {
            lo.x = lo.x.min(bounds.0.x);
            lo.y = lo.y.min(bounds.0.y);
            hi.x = hi.x.max(bounds.1.x);
            hi.y = hi.y.max(bounds.1.y);
        }
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bifiltration::GradedSimplex;
    use crate::path::SearchSpaceConfig;

    fn corridor_space() -> SearchSpace {
        SearchSpace::new(SearchSpaceConfig {
            grid_min: [0.0, 0.0],
            grid_max: [4.0, 4.0],
            grid_steps: [4, 4],
            strip: [1.1, 1.1],
            lookahead: [2, 2],
            horizon: 8,
            init_max: [0.0, 0.0],
            termination: Default::default(),
        })
        .unwrap()
    }

    fn corridor_eval(path: &MonotonePath) -> Result<f64, SearchError> {
        let on = path.waypoints().iter().all(|g| (g.x - g.y).abs() < 1e-9);
        Ok(if on { 1.0 } else { 0.1 })
    }

    fn tiny_bifiltration(edge_grade: BiGrade) -> Bifiltration {
        Bifiltration::new(vec![
            GradedSimplex::new(vec![0], BiGrade::new(0.0, 0.0)).unwrap(),
            GradedSimplex::new(vec![1], BiGrade::new(0.0, 0.0)).unwrap(),
            GradedSimplex::new(vec![0, 1], edge_grade).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn greedy_follows_planted_corridor() {
        let space = corridor_space();
        let out = greedy_search_with(corridor_eval, &space, 0).unwrap();
        assert_eq!(out.best_value, 1.0);
        assert!(out.best_path.waypoints().iter().all(|g| g.x == g.y));
        assert_eq!(out.evaluations as usize, out.history.len());
        assert!(out.evaluations > 0);
    }

    #[test]
    fn ensemble_is_deterministic_and_keeps_seed_paths_first() {
        let space = corridor_space();
        let diag = MonotonePath::new(vec![BiGrade::new(0.0, 0.0), BiGrade::new(4.0, 4.0)]).unwrap();
        let run = |seed| {
            ensemble_search_with(corridor_eval, &space, 16, seed, std::slice::from_ref(&diag))
                .unwrap()
        };
        let a = run(42);
        let b = run(42);
        assert_eq!(a, b);
        assert_eq!(a.history[0].path, diag);
        assert_eq!(a.best_value, 1.0);
        assert_eq!(a.evaluations, 17);
        let c = run(43);
        assert_eq!(c.history[0].path, diag);
    }

    #[test]
    fn ensemble_without_work_reports_no_viable_path() {
        let space = corridor_space();
        let err = ensemble_search_with(corridor_eval, &space, 0, 0, &[]).unwrap_err();
        assert!(matches!(err, SearchError::NoViablePath));
    }

    #[test]
    fn rollouts_blocked_at_start_are_discarded() {
        let space = SearchSpace::new(SearchSpaceConfig {
            grid_min: [0.0, 0.0],
            grid_max: [1.0, 1.0],
            grid_steps: [1, 1],
            strip: [1.5, 1.5],
            lookahead: [1, 1],
            horizon: 4,
            init_max: [0.0, 0.0],
            termination: Default::default(),
        })
        .unwrap();
        let err = ensemble_search_with(corridor_eval, &space, 3, 0, &[]).unwrap_err();
        assert!(matches!(err, SearchError::NoViablePath));
    }

    #[test]
    fn qlearn_matches_replayed_table_and_reaches_corridor() {
        let space = corridor_space();
        let params = QParams::default();
        let out = qlearn_search_with(corridor_eval, &space, 50, &params, 7).unwrap();
        assert_eq!(out.result.best_value, 1.0);
        let replayed = replay_trace(&out.trace, &params);
        assert_eq!(replayed, out.table);
        let greedy = greedy_search_with(corridor_eval, &space, 7).unwrap();
        assert!(out.result.best_value >= greedy.best_value);
    }

    #[test]
    fn qlearn_runs_are_reproducible() {
        let space = corridor_space();
        let params = QParams { terminal_only: true, ..QParams::default() };
        let a = qlearn_search_with(corridor_eval, &space, 20, &params, 3).unwrap();
        let b = qlearn_search_with(corridor_eval, &space, 20, &params, 3).unwrap();
        assert_eq!(a.result, b.result);
        assert_eq!(a.table, b.table);
        assert_eq!(a.trace, b.trace);
    }

    #[test]
    fn qparams_are_validated() {
        let bad = |p: QParams| qlearn_search_with(corridor_eval, &corridor_space(), 1, &p, 0);
        let e = bad(QParams { alpha: 0.0, ..QParams::default() }).unwrap_err();
        assert!(matches!(e, SearchError::InvalidHyperParameter { name: "alpha", .. }));
        let e = bad(QParams { gamma: 1.5, ..QParams::default() }).unwrap_err();
        assert!(matches!(e, SearchError::InvalidHyperParameter { name: "gamma", .. }));
        let e = bad(QParams { exploit: -0.1, ..QParams::default() }).unwrap_err();
        assert!(matches!(e, SearchError::InvalidHyperParameter { name: "exploit", .. }));
    }

    #[test]
    fn qtable_argmax_prefers_lex_smallest_on_ties() {
        let mut table = QTable::new(&QParams::default());
        let acts = vec![BiGrade::new(1.0, 1.0), BiGrade::new(1.0, 2.0), BiGrade::new(2.0, 1.0)];
        assert_eq!(table.argmax("s", &acts), Some(BiGrade::new(1.0, 1.0)));
        table.learn("s", "2,1", 5.0);
        assert_eq!(table.argmax("s", &acts), Some(BiGrade::new(2.0, 1.0)));
        assert_eq!(table.argmax("s", &[]), None);
    }

    #[test]
    fn slice_family_spans_the_requested_box() {
        let lo = BiGrade::new(0.0, 0.0);
        let hi = BiGrade::new(2.0, 3.0);
        let fam = slice_family(lo, hi, 10);
        assert_eq!(fam.len(), 10);
        for p in &fam {
            let w = p.waypoints();
            assert_eq!(w.len(), 2);
            assert!(w[0].x <= lo.x + 1e-12 && w[0].y <= lo.y + 1e-12);
            assert!(w[1].x >= hi.x - 1e-12 && w[1].y >= hi.y - 1e-12);
        }
    }

    #[test]
    fn slice_family_pads_degenerate_boxes() {
        let fam = slice_family(BiGrade::new(1.0, 1.0), BiGrade::new(1.0, 1.0), 3);
        assert_eq!(fam.len(), 3);
    }

    #[test]
    fn matching_distance_of_identical_inputs_is_zero() {
        let a = tiny_bifiltration(BiGrade::new(1.0, 2.0));
        let d = matching_distance_approx(&a, &a, &QueryConfig::default(), 8).unwrap();
        assert_eq!(d, 0.0);
    }

    #[test]
    fn matching_distance_needs_slices() {
        let a = tiny_bifiltration(BiGrade::new(1.0, 2.0));
        let err = matching_distance_approx(&a, &a, &QueryConfig::default(), 0).unwrap_err();
        assert!(matches!(err, SearchError::EmptySliceFamily));
    }

    #[test]
    fn query_distance_detects_grade_shift_along_diagonal() {
        let a = tiny_bifiltration(BiGrade::new(1.0, 1.0));
        let b = tiny_bifiltration(BiGrade::new(1.0, 1.5));
        let path = MonotonePath::new(vec![BiGrade::new(0.0, 0.0), BiGrade::new(4.0, 4.0)]).unwrap();
        let d = query_distance(&a, &b, &path, &QueryConfig::default()).unwrap();
        assert!((d - 0.5).abs() < 1e-12, "got {d}");
    }

    #[test]
    fn query_distance_surfaces_dimension_overflow() {
        let a = tiny_bifiltration(BiGrade::new(1.0, 1.0));
        let path = MonotonePath::new(vec![BiGrade::new(0.0, 0.0), BiGrade::new(4.0, 4.0)]).unwrap();
        let cfg = QueryConfig { hom_dim: 3, ..QueryConfig::default() };
        let err = query_distance(&a, &a, &path, &cfg).unwrap_err();
        assert!(matches!(err, SearchError::Persistence(_)));
    }
}
