//! Stratify the enriched spin curves over a two-component curve by the
//! support of the underlying limit square root, and count F_q-points of
//! every stratum.
//!
//! Run with `cargo run --example strata`.

use spin_moduli::enriched::{enriched_count, stratification_report, TwoComponentCurve};

fn main() {
    let curve = TwoComponentCurve::new(1, 1, 3).unwrap();
    let report = stratification_report(&curve);
    println!(
        "two components of genus {} and {}, {} nodes, genus {}",
        report.g1, report.g2, report.delta, report.genus
    );
    println!("{} singular spin curves downstairs\n", report.singular_spin_count);

    for row in &report.rows {
        println!(
            "{:<10} torus of dimension {}, {} sign choices, {} two-torsion classes",
            row.support_name,
            row.torus_dim,
            1u64 << row.sign_exponent,
            row.j2_order
        );
        println!(
            "           inside hyperplanes {:?}, off hyperplanes {:?}",
            row.contained_in, row.avoids
        );
    }

    let q = 5;
    println!("\nlabel counts over F_{q}:");
    let counts = enriched_count(&curve, q);
    for (support, n) in &counts {
        println!("  I = {support:?}: {n}");
    }
    let total: u128 = counts.iter().map(|(_, n)| n).sum();
    println!("  total: {total}");
}
