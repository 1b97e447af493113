//! The matching-distance baseline: sweep a deterministic family of
//! straight lines through the joint grade range and keep the largest
//! slice-wise distance. Searched paths can only do better on the same
//! objective, since lines are a subset of monotone paths.

use bipath::search::combined_bounds;
use bipath::{
    greedy_search, matching_distance_approx, parse_bifiltration, slice_family, Metric, QueryConfig,
    SearchSpace, SearchSpaceConfig,
};

const A: &str = "\
bifiltration
x
y
0 0.0 0.0
1 0.1 0.2
2 0.2 0.1
0 1 0.5 0.6
1 2 0.7 0.6
0 2 0.8 0.4
";

const B: &str = "\
bifiltration
x
y
0 0.0 0.0
1 0.1 0.2
2 0.2 0.1
0 1 0.9 0.8
1 2 1.0 0.9
0 2 1.1 0.7
";

fn main() {
    let a = parse_bifiltration(A).unwrap();
    let b = parse_bifiltration(B).unwrap();
    let cfg = QueryConfig { metric: Metric::Bottleneck, ..QueryConfig::default() };

    let (lo, hi) = combined_bounds(&a, &b);
    println!("grade range ({:.2}, {:.2}) .. ({:.2}, {:.2})", lo.x, lo.y, hi.x, hi.y);

    let first = &slice_family(lo, hi, 4)[0];
    println!(
        "first of 4 lines: ({:.3}, {:.3}) -> ({:.3}, {:.3})",
        first.waypoints()[0].x,
        first.waypoints()[0].y,
        first.waypoints()[1].x,
        first.waypoints()[1].y,
    );

    for n in [4, 16, 64] {
        let d = matching_distance_approx(&a, &b, &cfg, n).unwrap();
        println!("matching distance over {n:2} lines = {d:.6}");
    }

    let space = SearchSpace::new(SearchSpaceConfig {
        grid_min: [lo.x, lo.y],
        grid_max: [hi.x + 0.4, hi.y + 0.4],
        grid_steps: [8, 8],
        strip: [0.5, 0.5],
        lookahead: [2, 2],
        horizon: 8,
        init_max: [0.2, 0.2],
        termination: Default::default(),
    })
    .unwrap();
    let result = greedy_search(&a, &b, &space, &cfg, 3).unwrap();
    println!("greedy search over bent paths   = {:.6}", result.best_value);
}
