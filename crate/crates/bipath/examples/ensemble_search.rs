//! End-to-end pipeline: build two bifiltrations from point clouds, then
//! search path space for the slice that separates them the most.

use bipath::{
    build_codensity_values, build_function_rips, ensemble_search, parse_point_cloud, Metric,
    QueryConfig, SearchSpace, SearchSpaceConfig,
};

fn build(csv: &str) -> bipath::Bifiltration {
    let cloud = parse_point_cloud(csv).unwrap();
    let values = build_codensity_values(&cloud, 1).unwrap();
    build_function_rips(&cloud, &values, 2, 2.5).unwrap()
}

fn main() {
    let a = build("0,0\n1,0\n0,1\n1,1\n");
    let b = build("0,0\n1.3,0\n0,1.3\n1.3,1.3\n");

    let space = SearchSpace::new(SearchSpaceConfig {
        grid_min: [0.0, 0.0],
        grid_max: [2.0, 2.0],
        grid_steps: [8, 8],
        strip: [0.6, 0.6],
        lookahead: [2, 2],
        horizon: 6,
        init_max: [0.5, 0.5],
        termination: Default::default(),
    })
    .unwrap();

    let cfg = QueryConfig {
        metric: Metric::Bottleneck,
        hom_dim: 1,
        ..QueryConfig::default()
    };

    let result = ensemble_search(&a, &b, &space, &cfg, 64, 7, &[]).unwrap();
    println!("evaluated {} paths", result.evaluations);
    println!("best value {:.6}", result.best_value);
    println!("best path:");
    for w in result.best_path.waypoints() {
        println!("  ({:.3}, {:.3})", w.x, w.y);
    }

    // same seed, same answer, regardless of thread count
    let again = ensemble_search(&a, &b, &space, &cfg, 64, 7, &[]).unwrap();
    assert_eq!(result, again);
    println!("rerun matched");
}
