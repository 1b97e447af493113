//! Build a function-Rips bifiltration from a point cloud and print it in
//! the text format the CLI reads and writes.
//!
//! ```bash
//! cargo run --example build_bifiltration
//! ```

use bipath::{build_codensity_values, build_function_rips, parse_point_cloud, serialize_bifiltration};

fn main() {
    let csv = "\
0.0,0.0
1.0,0.0
0.0,1.0
1.0,1.0
0.5,0.5
";
    let cloud = parse_point_cloud(csv).expect("well-formed csv");
    println!("{} points in R^{}", cloud.len(), cloud.dim());

    // codensity: distance to the k-th nearest neighbor, so sparse points
    // enter late on the second axis
    let values = build_codensity_values(&cloud, 2).expect("k within range");
    for (i, v) in values.iter().enumerate() {
        println!("codensity[{i}] = {v:.4}");
    }

    let bif = build_function_rips(&cloud, &values, 2, 2.0).expect("positive radius");
    println!(
        "\n{} simplices up to dimension {}\n",
        bif.len(),
        bif.max_dim()
    );
    print!("{}", serialize_bifiltration(&bif));
}
