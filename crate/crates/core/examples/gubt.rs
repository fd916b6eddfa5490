//! Compare face numbers against a cyclic polytope with no more facets.
//!
//! Run with `cargo run --example gubt`.

use shellbound::generators::{cross_polytope, gubt_compare, hypercube_boundary};

fn main() {
    for (name, x) in [("octahedron", cross_polytope(2).unwrap()), ("cube", hypercube_boundary(2).unwrap())] {
        let report = gubt_compare(&x, 3, 5).unwrap();
        println!("{name} vs C(3,5) [{} mode]", report.mode);
        for row in &report.rows {
            println!("  f_{} = {} vs {}: {}", row.k, row.candidate, row.cyclic, if row.holds { "ok" } else { "VIOLATION" });
        }
    }
}
