//! Print the local model D_X of the moduli space at a spin curve whose
//! support meets delta nodes, resolve it chart by chart, and list the
//! limits of lines through the origin.
//!
//! Run with `cargo run --example local_model`.

use spin_moduli::localalgebra::{
    blowup_charts, dx_ideal, jacobian_rank_at_origin, line_limit_rational,
};
use spin_moduli::scalars::rat;

fn main() {
    let delta = 3;
    let ideal = dx_ideal(delta).unwrap();
    println!("D_X ideal for delta = {delta}:");
    for g in &ideal.generators {
        println!("  {g} = 0");
    }

    println!("\njacobian rank at the origin: {} (so the origin is singular)",
        jacobian_rank_at_origin(&ideal).unwrap());

    // blowup_charts errors out unless every generator pulls back to zero,
    // so getting charts at all certifies the resolution
    let charts = blowup_charts(delta).unwrap();
    println!("\nblow-up charts (all {} generators vanish identically):", ideal.generators.len());
    for chart in &charts {
        println!("  U_{}:", chart.s);
        for (&(i, j), image) in chart.substitution() {
            println!("    w{i}{j} -> {image}");
        }
    }

    // limits of lines t -> (d1 t, d2 t, d3 t): one point per choice of
    // square-root signs, when the roots are rational
    let direction = [rat(1), rat(4), rat(9)];
    println!("\nlimits of the line with direction (1, 4, 9):");
    for point in line_limit_rational(&direction).unwrap() {
        let coords: Vec<String> = point.iter().map(|c| c.to_string()).collect();
        println!("  [{}]", coords.join(" : "));
    }
}
