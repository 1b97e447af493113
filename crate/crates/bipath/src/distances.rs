//! Bottleneck and Wasserstein distances between persistence diagrams.
//!
//! Both distances allow matching finite points to the diagonal at cost
//! half their persistence; essential classes must match essential classes,
//! and mismatched essential counts make the diagrams infinitely far apart
//! (reported as `+inf`, not an error, so searches can treat such a path as
//! incomparable rather than fail).
//!
//! The bottleneck distance is exact: the optimum is one of the finitely
//! many candidate costs (pairwise distances and diagonal costs), found by
//! binary search with a bipartite-matching feasibility test. The
//! q-Wasserstein distance solves the diagonal-augmented assignment problem
//! with an O(n^3) shortest-augmenting-path solver.
//!
//! Every distance returns a [`Matching`] certificate whose realized cost
//! reproduces the reported value.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::persistence::PersistenceDiagram;

#[derive(Debug, Error)]
pub enum DistanceError {
    #[error("diagram dimensions differ: {a} vs {b}")]
    DimMismatch { a: usize, b: usize },
    #[error("BadQ: q must be finite and >= 1, got {q}")]
    BadQ { q: f64 },
    #[error("scale factor must be positive and finite, got {scale}")]
    NonPositiveScale { scale: f64 },
}

/// One side of a matched pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatchPoint {
    /// Index into the diagram's finite pairs.
    Finite(usize),
    /// Index into the diagram's essential births.
    Essential(usize),
    Diagonal,
}

/// A matching certificate: `pairs` lists (point of A, point of B), where
/// the diagonal may appear any number of times. For finite distances every
/// finite point and essential class of each diagram appears exactly once;
/// an infinite distance (mismatched essential counts) carries no pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Matching {
    pub pairs: Vec<(MatchPoint, MatchPoint)>,
    pub cost: f64,
}

impl Matching {
    fn infinite() -> Self {
        Matching { pairs: Vec::new(), cost: f64::INFINITY }
    }

    /// Re-evaluates this matching against the diagrams it certifies.
    /// `q = None` recomputes a bottleneck cost, `q = Some(q)` a Wasserstein
    /// cost.
    pub fn recompute_cost(
        &self,
        a: &PersistenceDiagram,
        b: &PersistenceDiagram,
        q: Option<f64>,
    ) -> f64 {
        if self.cost.is_infinite() {
            return self.cost;
        }
        let costs = self.pairs.iter().map(|&(pa, pb)| pair_cost(a, b, pa, pb));
        match q {
            None => costs.fold(0.0, f64::max),
            Some(q) => costs.map(|c| c.powf(q)).sum::<f64>().powf(1.0 / q),
        }
    }
}

fn pair_cost(a: &PersistenceDiagram, b: &PersistenceDiagram, pa: MatchPoint, pb: MatchPoint) -> f64 {
    match (pa, pb) {
        (MatchPoint::Finite(i), MatchPoint::Finite(j)) => {
            linf(a.pairs[i], b.pairs[j])
        }
        (MatchPoint::Finite(i), MatchPoint::Diagonal) => diag_cost(a.pairs[i]),
        (MatchPoint::Diagonal, MatchPoint::Finite(j)) => diag_cost(b.pairs[j]),
        (MatchPoint::Essential(i), MatchPoint::Essential(j)) => {
            (a.essential[i] - b.essential[j]).abs()
        }
        (MatchPoint::Diagonal, MatchPoint::Diagonal) => 0.0,
        _ => f64::INFINITY,
    }
}

fn linf(p: (f64, f64), q: (f64, f64)) -> f64 {
    (p.0 - q.0).abs().max((p.1 - q.1).abs())
}

fn diag_cost(p: (f64, f64)) -> f64 {
    (p.1 - p.0) / 2.0
}

/// Sorted-order matching of essential births; `None` means the counts
/// differ and the distance is infinite.
fn essential_matching(
    a: &PersistenceDiagram,
    b: &PersistenceDiagram,
) -> Option<Vec<(usize, usize)>> {
    if a.essential.len() != b.essential.len() {
        return None;
    }
    let order = |v: &[f64]| {
        let mut idx: Vec<usize> = (0..v.len()).collect();
        idx.sort_by(|&i, &j| v[i].total_cmp(&v[j]));
        idx
    };
    Some(order(&a.essential).into_iter().zip(order(&b.essential)).collect())
}

/// Exact bottleneck distance with certificate.
pub fn bottleneck(
    a: &PersistenceDiagram,
    b: &PersistenceDiagram,
) -> Result<Matching, DistanceError> {
    if a.dim != b.dim {
        return Err(DistanceError::DimMismatch { a: a.dim, b: b.dim });
    }
    let Some(ess) = essential_matching(a, b) else {
        return Ok(Matching::infinite());
    };
    let ess_cost = ess
        .iter()
        .map(|&(i, j)| (a.essential[i] - b.essential[j]).abs())
        .fold(0.0, f64::max);
    let ess_pairs: Vec<(MatchPoint, MatchPoint)> = ess
        .into_iter()
        .map(|(i, j)| (MatchPoint::Essential(i), MatchPoint::Essential(j)))
        .collect();

    let (n, m) = (a.pairs.len(), b.pairs.len());
    if n + m == 0 {
        return Ok(Matching { pairs: ess_pairs, cost: ess_cost });
    }

    let mut candidates: Vec<f64> = vec![0.0];
    for i in 0..n {
        candidates.push(diag_cost(a.pairs[i]));
        for j in 0..m {
            candidates.push(linf(a.pairs[i], b.pairs[j]));
        }
    }
    for j in 0..m {
        candidates.push(diag_cost(b.pairs[j]));
    }
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    let feasible = |t: f64| feasibility_matching(a, b, t);
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    debug_assert!(feasible(candidates[hi]).is_some());
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(candidates[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let finite_opt = candidates[lo];
    let assignment =
        feasibility_matching(a, b, finite_opt).expect("binary search lands on a feasible cost");

    let mut pairs = assignment;
    pairs.extend(ess_pairs);
    Ok(Matching { pairs, cost: finite_opt.max(ess_cost) })
}

/// Perfect-matching feasibility at threshold `t` on the diagonal-augmented
/// bipartite graph; returns the realized pairing when feasible.
fn feasibility_matching(
    a: &PersistenceDiagram,
    b: &PersistenceDiagram,
    t: f64,
) -> Option<Vec<(MatchPoint, MatchPoint)>> {
    let (n, m) = (a.pairs.len(), b.pairs.len());
    let total = n + m;
    // left 0..n are A's points, n..total its diagonal copies;
    // right 0..m are B's points, m..total its diagonal copies
    let adjacency = |u: usize| -> Vec<usize> {
        let mut adj = Vec::new();
        if u < n {
            for j in 0..m {
                if linf(a.pairs[u], b.pairs[j]) <= t {
                    adj.push(j);
                }
            }
            if diag_cost(a.pairs[u]) <= t {
                adj.extend(m..total);
            }
        } else {
            for j in 0..m {
                if diag_cost(b.pairs[j]) <= t {
                    adj.push(j);
                }
            }
            adj.extend(m..total);
        }
        adj
    };

    let mut right_match: Vec<Option<usize>> = vec![None; total];
    fn augment(
        u: usize,
        adjacency: &dyn Fn(usize) -> Vec<usize>,
        right_match: &mut Vec<Option<usize>>,
        seen: &mut Vec<bool>,
    ) -> bool {
        for v in adjacency(u) {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            let free = match right_match[v] {
                None => true,
                Some(w) => augment(w, adjacency, right_match, seen),
            };
            if free {
                right_match[v] = Some(u);
                return true;
            }
        }
        false
    }

    for u in 0..total {
        let mut seen = vec![false; total];
        if !augment(u, &adjacency, &mut right_match, &mut seen) {
            return None;
        }
    }

    let mut pairs = Vec::new();
    for v in 0..total {
        let u = right_match[v].expect("perfect matching");
        match (u < n, v < m) {
            (true, true) => pairs.push((MatchPoint::Finite(u), MatchPoint::Finite(v))),
            (true, false) => pairs.push((MatchPoint::Finite(u), MatchPoint::Diagonal)),
            (false, true) => pairs.push((MatchPoint::Diagonal, MatchPoint::Finite(v))),
            (false, false) => {}
        }
    }
    pairs.sort_by_key(|&(pa, _)| match pa {
        MatchPoint::Finite(i) => (0, i),
        MatchPoint::Essential(i) => (1, i),
        MatchPoint::Diagonal => (2, 0),
    });
    Some(pairs)
}

/// Exact q-Wasserstein distance with certificate.
pub fn wasserstein(
    a: &PersistenceDiagram,
    b: &PersistenceDiagram,
    q: f64,
) -> Result<Matching, DistanceError> {
    if a.dim != b.dim {
        return Err(DistanceError::DimMismatch { a: a.dim, b: b.dim });
    }
    if !q.is_finite() || q < 1.0 {
        return Err(DistanceError::BadQ { q });
    }
    let Some(ess) = essential_matching(a, b) else {
        return Ok(Matching::infinite());
    };
    let ess_sum: f64 = ess
        .iter()
        .map(|&(i, j)| (a.essential[i] - b.essential[j]).abs().powf(q))
        .sum();
    let ess_pairs: Vec<(MatchPoint, MatchPoint)> = ess
        .into_iter()
        .map(|(i, j)| (MatchPoint::Essential(i), MatchPoint::Essential(j)))
        .collect();

    let (n, m) = (a.pairs.len(), b.pairs.len());
    let total = n + m;
    if total == 0 {
        return Ok(Matching { pairs: ess_pairs, cost: ess_sum.powf(1.0 / q) });
    }

    let mut cost = vec![vec![0.0f64; total]; total];
    for (i, row) in cost.iter_mut().enumerate() {
        for (j, c) in row.iter_mut().enumerate() {
            *c = match (i < n, j < m) {
                (true, true) => linf(a.pairs[i], b.pairs[j]).powf(q),
                (true, false) => diag_cost(a.pairs[i]).powf(q),
                (false, true) => diag_cost(b.pairs[j]).powf(q),
                (false, false) => 0.0,
            };
        }
    }
    let assignment = solve_assignment(&cost);
    let finite_sum: f64 = assignment.iter().enumerate().map(|(i, &j)| cost[i][j]).sum();

    let mut pairs = Vec::new();
    for (i, &j) in assignment.iter().enumerate() {
        match (i < n, j < m) {
            (true, true) => pairs.push((MatchPoint::Finite(i), MatchPoint::Finite(j))),
            (true, false) => pairs.push((MatchPoint::Finite(i), MatchPoint::Diagonal)),
            (false, true) => pairs.push((MatchPoint::Diagonal, MatchPoint::Finite(j))),
            (false, false) => {}
        }
    }
    pairs.extend(ess_pairs);
    Ok(Matching { pairs, cost: (finite_sum + ess_sum).powf(1.0 / q) })
}

/// Minimum-cost perfect assignment on a square matrix by shortest
/// augmenting paths with potentials; returns `row -> column`.
fn solve_assignment(cost: &[Vec<f64>]) -> Vec<usize> {
    let n = cost.len();
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut p = vec![0usize; n + 1]; // p[j]: row (1-based) assigned to column j
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut row_to_col = vec![0usize; n];
    for j in 1..=n {
        row_to_col[p[j] - 1] = j - 1;
    }
    row_to_col
}

/// Multiplies every birth and death (including essential births) by `w`.
pub fn scale_diagram(d: &PersistenceDiagram, w: f64) -> Result<PersistenceDiagram, DistanceError> {
    if !(w > 0.0) || !w.is_finite() {
        return Err(DistanceError::NonPositiveScale { scale: w });
    }
    Ok(PersistenceDiagram {
        dim: d.dim,
        pairs: d.pairs.iter().map(|&(b, dd)| (w * b, w * dd)).collect(),
        essential: d.essential.iter().map(|&b| w * b).collect(),
    })
}
