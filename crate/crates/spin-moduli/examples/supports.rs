//! Enumerate limit square roots on a few dual graphs and check the
//! weighted count against 2^(2g).
//!
//! Run with `cargo run --example supports`.

use spin_moduli::dualgraph::{DualGraph, Vertex};
use spin_moduli::spinenum::spin_table;

fn show(name: &str, g: &DualGraph) {
    let table = spin_table(g).expect("degree identity holds");
    println!("{name}: genus {}", table.genus);
    for s in &table.supports {
        print!(
            "  Delta = {:?}: {} roots, multiplicity {}",
            s.delta, s.root_count, s.multiplicity
        );
        if s.is_singular_point == Some(true) {
            print!("  (singular locus)");
        }
        println!();
    }
    println!(
        "  weighted total {} = 2^{}\n",
        table.weighted_total,
        2 * table.genus
    );
}

fn main() {
    // two elliptic curves glued at three nodes
    show("banana", &DualGraph::two_component(1, 1, 3).unwrap());

    // an irreducible curve: one genus-1 component with two self-nodes
    let irr = DualGraph::new(
        vec![Vertex { id: "C".into(), genus: 1 }],
        &[("C", "C"), ("C", "C")],
    )
    .unwrap();
    show("genus 1 with two loops", &irr);

    // a chain of three components
    let chain = DualGraph::new(
        vec![
            Vertex { id: "C1".into(), genus: 1 },
            Vertex { id: "C2".into(), genus: 0 },
            Vertex { id: "C3".into(), genus: 2 },
        ],
        &[("C1", "C2"), ("C1", "C2"), ("C2", "C3"), ("C2", "C3")],
    )
    .unwrap();
    show("chain with a rational bridge", &chain);

    // the same curve can be loaded from a JSON spec
    let json = r#"{
        "vertices": [{"id": "C1", "genus": 1}, {"id": "C2", "genus": 1}],
        "edges": [["C1", "C2"], ["C1", "C2"]]
    }"#;
    show("from JSON", &DualGraph::from_json(json).unwrap());
}
