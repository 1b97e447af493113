//! Score a single path: slice two bifiltrations along it and measure how
//! far apart the resulting persistence diagrams are.

use bipath::{
    compute_diagrams, parse_bifiltration, query_distance, slice,BiGrade, Metric, MonotonePath,
    ProjectionMode, QueryConfig,
};

const A: &str = "\
bifiltration
scale
weight
0 0.0 0.0
1 0.0 0.0
2 0.0 0.0
0 1 0.4 0.4
1 2 0.4 0.4
0 2 0.4 0.4
";

fn shifted(text: &str, by: f64) -> String {
    let bif = parse_bifiltration(text).unwrap();
    let moved: Vec<_> = bif
        .simplices()
        .iter()
        .map(|s| {
            let g = s.grade();
            bipath::GradedSimplex::new(s.vertices().to_vec(), BiGrade::new(g.x + by, g.y + by))
                .unwrap()
        })
        .collect();
    bipath::serialize_bifiltration(&bipath::Bifiltration::new(moved).unwrap())
}

fn main() {
    let a = parse_bifiltration(A).unwrap();
    let b = parse_bifiltration(&shifted(A, 0.25)).unwrap();

    let path = MonotonePath::new(vec![BiGrade::new(0.0, 0.0), BiGrade::new(2.0, 2.0)]).unwrap();

    // inspect the H1 diagram on one side
    let fa = slice(&a, &path, ProjectionMode::PushForward);
    let diagrams = compute_diagrams(&fa, 1).unwrap();
    println!("H1 of a along the diagonal: {:?}", diagrams[1].essential);

    let cfg = QueryConfig {
        metric: Metric::Bottleneck,
        hom_dim: 1,
        ..QueryConfig::default()
    };
    let d = query_distance(&a, &b, &path, &cfg).unwrap();
    println!("bottleneck(H1) along the diagonal = {d:.6}");

    let cfg = QueryConfig {
        metric: Metric::Wasserstein,
        q: 2.0,
        hom_dim: 0,
        ..QueryConfig::default()
    };
    let d = query_distance(&a, &b, &path, &cfg).unwrap();
    println!("wasserstein(H0, q=2) along the diagonal = {d:.6}");
}
