use bipath::persistence::PersistenceDiagram;
use bipath::{bottleneck, wasserstein};

fn main() {
    let a = PersistenceDiagram {
        dim: 1,
        pairs: vec![(0.2, 1.0), (0.5, 0.9)],
        essential: vec![0.1],
    };
    let b = PersistenceDiagram {
        dim: 1,
        pairs: vec![(0.25, 1.1)],
        essential: vec![0.3],
    };

    let m = bottleneck(&a, &b).expect("same dimension");
    println!("bottleneck = {:.6}", m.cost);
    for (p, q) in &m.pairs {
        println!("  {p:?} -> {q:?}");
    }
    // the certificate recomputes to the reported cost
    assert_eq!(m.recompute_cost(&a, &b, None), m.cost);

    for q in [1.0, 2.0] {
        let m = wasserstein(&a, &b, q).expect("q >= 1");
        println!("wasserstein q={q} = {:.6}", m.cost);
    }

    // diagrams with different essential counts are incomparable
    let c = PersistenceDiagram { dim: 1, pairs: vec![], essential: vec![0.0, 0.0] };
    let m = bottleneck(&a, &c).expect("same dimension");
    println!("mismatched essentials = {}", m.cost);
}
