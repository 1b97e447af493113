//! Brute-force oracles and seeded generators shared by the integration
//! suites. Every oracle is a direct transcription of a definition,
//! independent of the engine's algorithms, so agreement between the two
//! routes is evidence rather than tautology.
#![allow(dead_code)]

use std::collections::HashMap;

use bipath::bifiltration::{build_function_rips, Bifiltration, GradedSimplex, PointCloud};
use bipath::grade::BiGrade;
use bipath::path::MonotonePath;
use bipath::persistence::PersistenceDiagram;
use bipath::slicer::{FilteredCell, ScalarFiltration};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

// ---------------------------------------------------------------------
// diagram-distance oracle: enumerate every matching
// ---------------------------------------------------------------------

fn unit(raw: f64, q: Option<f64>) -> f64 {
    match q {
        None => raw,
        Some(q) => raw.powf(q),
    }
}

fn combine(a: f64, b: f64, q: Option<f64>) -> f64 {
    match q {
        None => a.max(b),
        Some(_) => a + b,
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(idx: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == idx.len() {
            out.push(idx.clone());
            return;
        }
        for i in k..idx.len() {
            idx.swap(k, i);
            go(idx, k + 1, out);
            idx.swap(k, i);
        }
    }
    let mut out = Vec::new();
    go(&mut (0..n).collect(), 0, &mut out);
    out
}

fn best_essential(ea: &[f64], eb: &[f64], q: Option<f64>) -> f64 {
    if ea.is_empty() {
        return 0.0;
    }
    permutations(eb.len())
        .into_iter()
        .map(|perm| {
            let mut acc = 0.0;
            for (i, &j) in perm.iter().enumerate() {
                acc = combine(acc, unit((ea[i] - eb[j]).abs(), q), q);
            }
            acc
        })
        .fold(f64::INFINITY, f64::min)
}

fn best_finite(a: &[(f64, f64)], b: &[(f64, f64)], q: Option<f64>) -> f64 {
    fn go(
        i: usize,
        a: &[(f64, f64)],
        b: &[(f64, f64)],
        used: &mut Vec<bool>,
        q: Option<f64>,
    ) -> f64 {
        if i == a.len() {
            let mut acc = 0.0;
            for (j, &(bb, bd)) in b.iter().enumerate() {
                if !used[j] {
                    acc = combine(acc, unit((bd - bb) / 2.0, q), q);
                }
            }
            return acc;
        }
        let (ab, ad) = a[i];
        let mut best = combine(unit((ad - ab) / 2.0, q), go(i + 1, a, b, used, q), q);
        for j in 0..b.len() {
            if used[j] {
                continue;
            }
            let (bb, bd) = b[j];
            let c = (ab - bb).abs().max((ad - bd).abs());
            used[j] = true;
            best = best.min(combine(unit(c, q), go(i + 1, a, b, used, q), q));
            used[j] = false;
        }
        best
    }
    go(0, a, b, &mut vec![false; b.len()], q)
}

/// Exhaustive diagram distance: `q = None` gives the bottleneck cost,
/// `q = Some(q)` the q-Wasserstein cost. Essential classes may only match
/// essential classes; a count mismatch makes the diagrams incomparable.
/// The essential and finite sub-problems share no points, so the joint
/// optimum factors into the two independent optima for both the max and
/// the sum aggregation.
pub fn oracle_distance(a: &PersistenceDiagram, b: &PersistenceDiagram, q: Option<f64>) -> f64 {
    if a.essential.len() != b.essential.len() {
        return f64::INFINITY;
    }
    let ess = best_essential(&a.essential, &b.essential, q);
    let fin = best_finite(&a.pairs, &b.pairs, q);
    let total = combine(ess, fin, q);
    match q {
        None => total,
        Some(q) => total.powf(1.0 / q),
    }
}

// ---------------------------------------------------------------------
// Betti-number oracle: ranks of dense boundary matrices over GF(2)
// ---------------------------------------------------------------------

fn gf2_rank(mut rows: Vec<Vec<bool>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col]) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] {
                for (cell, &p) in row.iter_mut().zip(&pivot_row) {
                    *cell ^= p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn boundary_rank(sub: &[&FilteredCell], q: usize) -> usize {
    if q == 0 {
        return 0;
    }
    let rows: Vec<&[usize]> = sub.iter().filter(|c| c.dim() == q - 1).map(|c| c.vertices()).collect();
    let cols: Vec<&[usize]> = sub.iter().filter(|c| c.dim() == q).map(|c| c.vertices()).collect();
    if rows.is_empty() || cols.is_empty() {
        return 0;
    }
    let mut matrix = vec![vec![false; cols.len()]; rows.len()];
    for (j, cv) in cols.iter().enumerate() {
        for drop in 0..cv.len() {
            let mut face = cv.to_vec();
            face.remove(drop);
            if let Some(i) = rows.iter().position(|r| *r == face.as_slice()) {
                matrix[i][j] = true;
            }
        }
    }
    gf2_rank(matrix)
}

/// Betti number of the sublevel complex at `t` in dimension `q`:
/// dim ker boundary_q - rank boundary_{q+1} over GF(2).
pub fn oracle_betti(f: &ScalarFiltration, t: f64, q: usize) -> usize {
    let sub: Vec<&FilteredCell> = f.cells().iter().filter(|c| c.value() <= t).collect();
    let nq = sub.iter().filter(|c| c.dim() == q).count();
    nq - boundary_rank(&sub, q) - boundary_rank(&sub, q + 1)
}

/// Number of intervals of the diagram alive at `t` (born at or before,
/// dead strictly after).
pub fn diagram_count_at(d: &PersistenceDiagram, t: f64) -> usize {
    d.pairs.iter().filter(|&&(b, dd)| b <= t && t < dd).count()
        + d.essential.iter().filter(|&&b| b <= t).count()
}

// ---------------------------------------------------------------------
// straight-line slice oracle: closed form, weight applied once at the end
// ---------------------------------------------------------------------

/// Entry value of grade `g` along the extended line from `p0` through
/// `p1`: the Euclidean arc length to the first dominating line point,
/// scaled by the line's weight.
pub fn oracle_line_entry(p0: BiGrade, p1: BiGrade, g: BiGrade) -> f64 {
    let (dx, dy) = (p1.x - p0.x, p1.y - p0.y);
    let len = (dx * dx + dy * dy).sqrt();
    let v = (dx / len, dy / len);
    let w = v.0.min(v.1);
    let s = ((g.x - p0.x) / v.0).max((g.y - p0.y) / v.1).max(0.0);
    w * s
}

pub fn oracle_line_slice(bf: &Bifiltration, p0: BiGrade, p1: BiGrade) -> ScalarFiltration {
    let cells = bf
        .simplices()
        .iter()
        .map(|s| FilteredCell::new(s.vertices().to_vec(), oracle_line_entry(p0, p1, s.grade())))
        .collect();
    ScalarFiltration::new(cells).expect("line slices of valid bifiltrations are valid")
}

/// Bottleneck distance along one straight line, built from the closed-form
/// slice above instead of the path machinery.
pub fn oracle_line_distance(
    a: &Bifiltration,
    b: &Bifiltration,
    p0: BiGrade,
    p1: BiGrade,
    dim: usize,
) -> f64 {
    let da = bipath::persistence::compute_diagrams(&oracle_line_slice(a, p0, p1), dim).unwrap();
    let db = bipath::persistence::compute_diagrams(&oracle_line_slice(b, p0, p1), dim).unwrap();
    bipath::distances::bottleneck(&da[dim], &db[dim]).unwrap().cost
}

// ---------------------------------------------------------------------
// admissible-move oracle: set comprehension over the full lattice
// ---------------------------------------------------------------------

pub struct GridSpec {
    pub grid_min: [f64; 2],
    pub grid_max: [f64; 2],
    pub grid_steps: [usize; 2],
    pub strip: [f64; 2],
    pub lookahead: [usize; 2],
    pub horizon: usize,
}

fn lattice(min: f64, max: f64, steps: usize, i: usize) -> f64 {
    if i == steps {
        max
    } else {
        min + i as f64 * (max - min) / steps as f64
    }
}

pub fn oracle_admissible(
    spec: &GridSpec,
    current: BiGrade,
    steps_taken: usize,
    all_axes: bool,
) -> Vec<BiGrade> {
    if steps_taken >= spec.horizon {
        return Vec::new();
    }
    let out_x = current.x + spec.strip[0] > spec.grid_max[0];
    let out_y = current.y + spec.strip[1] > spec.grid_max[1];
    let stop = if all_axes { out_x && out_y } else { out_x || out_y };
    if stop {
        return Vec::new();
    }
    let hx = current.x + spec.lookahead[0] as f64 * spec.strip[0];
    let hy = current.y + spec.lookahead[1] as f64 * spec.strip[1];
    let mut pts = Vec::new();
    for i in 0..=spec.grid_steps[0] {
        for j in 0..=spec.grid_steps[1] {
            let x = lattice(spec.grid_min[0], spec.grid_max[0], spec.grid_steps[0], i);
            let y = lattice(spec.grid_min[1], spec.grid_max[1], spec.grid_steps[1], j);
            if current.x < x && x < hx && current.y < y && y < hy {
                pts.push(BiGrade::new(x, y));
            }
        }
    }
    pts.sort_by(|a, b| a.lex_cmp(b));
    pts
}

// ---------------------------------------------------------------------
// seeded generators
// ---------------------------------------------------------------------

pub fn round3(x: f64) -> f64 {
    (x * 1000.0).round() / 1000.0
}

/// A pair of small diagrams of the same dimension, at most 6 points each.
/// Essential counts usually match; one pair in ten mismatches so the
/// incomparable branch is exercised too.
pub fn random_diagram_pair(
    rng: &mut ChaCha8Rng,
    dim: usize,
) -> (PersistenceDiagram, PersistenceDiagram) {
    fn make(rng: &mut ChaCha8Rng, dim: usize, ess: usize) -> PersistenceDiagram {
        let n_fin = rng.random_range(0..=(6 - ess));
        let mut pairs = Vec::with_capacity(n_fin);
        for _ in 0..n_fin {
            let b = round3(rng.random_range(0.0..5.0));
            let d = b + round3(rng.random_range(0.001..3.0)).max(0.001);
            pairs.push((b, d));
        }
        pairs.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let mut essential: Vec<f64> = (0..ess).map(|_| round3(rng.random_range(0.0..5.0))).collect();
        essential.sort_by(f64::total_cmp);
        PersistenceDiagram { dim, pairs, essential }
    }
    let ess = rng.random_range(0..=2usize);
    let mismatch = rng.random_range(0..10) == 0;
    let a = make(rng, dim, ess);
    let b = make(rng, dim, if mismatch { ess + 1 } else { ess });
    (a, b)
}

/// Random function-Rips bifiltration on a planar cloud, capped in size.
pub fn random_bifiltration(rng: &mut ChaCha8Rng, max_simplices: usize) -> Bifiltration {
    loop {
        let n = rng.random_range(4..=7);
        let pts: Vec<Vec<f64>> = (0..n)
            .map(|_| vec![rng.random_range(0.0..1.0), rng.random_range(0.0..1.0)])
            .collect();
        let pc = PointCloud::new(pts).unwrap();
        let values: Vec<f64> = (0..n).map(|_| round3(rng.random_range(0.0..1.0))).collect();
        let radius = rng.random_range(0.3..0.9);
        let bf = build_function_rips(&pc, &values, 2, radius).unwrap();
        if bf.len() <= max_simplices {
            return bf;
        }
    }
}

/// Random one-parameter filtration: either a random planar complex or the
/// boundary of a tetrahedron (so dimension-2 homology is exercised), with
/// random cell values repaired upward along faces.
pub fn random_filtration(rng: &mut ChaCha8Rng, max_cells: usize) -> ScalarFiltration {
    let shells: Vec<Vec<usize>> = if rng.random_range(0..4) == 0 {
        let verts = [0usize, 1, 2, 3];
        let mut cells = Vec::new();
        for size in 1..=3 {
            for mask in 0u32..16 {
                if mask.count_ones() as usize == size {
                    cells.push(verts.iter().enumerate().filter(|&(i, _)| mask & (1 << i) != 0).map(|(_, &v)| v).collect());
                }
            }
        }
        cells
    } else {
        random_bifiltration(rng, max_cells)
            .simplices()
            .iter()
            .map(|s| s.vertices().to_vec())
            .collect()
    };
    let mut cells: Vec<(Vec<usize>, f64)> = shells
        .into_iter()
        .map(|vs| (vs, round3(rng.random_range(0.0..3.0))))
        .collect();
    cells.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    let mut value_of: HashMap<Vec<usize>, f64> = HashMap::new();
    for (vs, v) in cells.iter_mut() {
        let mut val = *v;
        if vs.len() > 1 {
            for drop in 0..vs.len() {
                let mut face = vs.clone();
                face.remove(drop);
                val = val.max(value_of[&face]);
            }
        }
        *v = val;
        value_of.insert(vs.clone(), val);
    }
    let cells = cells.into_iter().map(|(vs, v)| FilteredCell::new(vs, v)).collect();
    ScalarFiltration::new(cells).expect("upward repair yields a valid filtration")
}

/// Random strictly increasing path with `n_segments` segments starting
/// near `lo`.
pub fn random_path(rng: &mut ChaCha8Rng, lo: BiGrade, n_segments: usize) -> MonotonePath {
    let mut points = vec![BiGrade::new(
        round3(rng.random_range((lo.x - 0.5)..(lo.x + 0.5))),
        round3(rng.random_range((lo.y - 0.5)..(lo.y + 0.5))),
    )];
    for _ in 0..n_segments {
        let prev = *points.last().unwrap();
        points.push(BiGrade::new(
            prev.x + round3(rng.random_range(0.05..1.5)).max(0.05),
            prev.y + round3(rng.random_range(0.05..1.5)).max(0.05),
        ));
    }
    MonotonePath::new(points).unwrap()
}

/// Random strictly increasing 2-waypoint path around the box `[lo, hi]`.
pub fn random_path2(rng: &mut ChaCha8Rng, lo: BiGrade, hi: BiGrade) -> MonotonePath {
    let p0 = BiGrade::new(
        round3(rng.random_range((lo.x - 0.5)..hi.x.max(lo.x + 0.1))),
        round3(rng.random_range((lo.y - 0.5)..hi.y.max(lo.y + 0.1))),
    );
    let p1 = BiGrade::new(
        p0.x + round3(rng.random_range(0.1..2.0)).max(0.1),
        p0.y + round3(rng.random_range(0.1..2.0)).max(0.1),
    );
    MonotonePath::new(vec![p0, p1]).unwrap()
}

/// Hollow triangle (three vertices, three edges, no 2-cell) with all
/// vertices at the origin grade and every edge at `edge_grade`.
pub fn hollow_triangle(edge_grade: BiGrade) -> Bifiltration {
    let mut simplices: Vec<GradedSimplex> = (0..3)
        .map(|v| GradedSimplex::new(vec![v], BiGrade::new(0.0, 0.0)).unwrap())
        .collect();
    for e in [[0, 1], [0, 2], [1, 2]] {
        simplices.push(GradedSimplex::new(e.to_vec(), edge_grade).unwrap());
    }
    Bifiltration::new(simplices).unwrap()
}
