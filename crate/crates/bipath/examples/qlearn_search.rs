use bipath::search::{qlearn_search_with, replay_trace};
use bipath::{QParams, SearchSpace, SearchSpaceConfig};

// A synthetic objective with a ridge along the diagonal, so the learner
// has something to find.
fn score(path: &bipath::MonotonePath) -> f64 {
    path.waypoints()
        .iter()
        .map(|w| 1.0 - (w.x - w.y).abs())
        .sum::<f64>()
}

fn main() {
    let space = SearchSpace::new(SearchSpaceConfig {
        grid_min: [0.0, 0.0],
        grid_max: [4.0, 4.0],
        grid_steps: [4, 4],
        strip: [1.1, 1.1],
        lookahead: [2, 2],
        horizon: 8,
        init_max: [1.0, 1.0],
        termination: Default::default(),
    })
    .unwrap();

    let params = QParams { alpha: 0.2, gamma: 0.9, exploit: 0.85, terminal_only: false };
    let outcome = qlearn_search_with(|p| Ok(score(p)), &space, 150, &params, 42).unwrap();

    println!("episodes recorded {} updates", outcome.trace.len());
    println!("best value {:.6}", outcome.result.best_value);
    println!("best path:");
    for w in outcome.result.best_path.waypoints() {
        println!("  ({:.1}, {:.1})", w.x, w.y);
    }

    // the trace is a complete record: replaying it rebuilds the table
    let replayed = replay_trace(&outcome.trace, &params);
    assert_eq!(replayed, outcome.table);
    println!("trace replay reproduced the table");
}
