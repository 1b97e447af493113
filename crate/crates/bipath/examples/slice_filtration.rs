//! Restrict a bifiltration to a one-parameter filtration along a monotone
//! path, under both entry-value conventions.

use bipath::{
    parse_bifiltration, slice, BiGrade, MonotonePath, ProjectionMode,
};

fn main() {
    let text = "\
bifiltration
radius
density
0 0.0 0.1
1 0.0 0.3
2 0.0 0.2
0 1 0.5 0.3
1 2 0.7 0.3
0 2 0.9 0.2
0 1 2 1.0 0.3
";
    let bif = parse_bifiltration(text).expect("well-formed bifiltration");
    let (xl, yl) = bif.labels();
    println!("axes: {xl} / {yl}");

    let path = MonotonePath::new(vec![
        BiGrade::new(0.0, 0.0),
        BiGrade::new(0.6, 0.2),
        BiGrade::new(1.2, 1.0),
    ])
    .expect("strictly increasing waypoints");

    for mode in [ProjectionMode::PushForward, ProjectionMode::Orthogonal] {
        let filtration = slice(&bif, &path, mode);
        println!("\n{mode:?}:");
        print!("{}", filtration.dump());
    }
}
