//! Shellability in both directions forces f_k >= min(f_0, f_d).
//!
//! Run with `cargo run --example min_bound`.

use shellbound::bounds::corollaries;
use shellbound::generators::{cross_polytope, cyclic_boundary, hypercube_boundary};

fn main() {
    for (name, x) in [
        ("octahedron", cross_polytope(2).unwrap()),
        ("cube", hypercube_boundary(2).unwrap()),
        ("C(4,7)", cyclic_boundary(4, 7).unwrap()),
    ] {
        let r = corollaries(&x).unwrap();
        println!(
            "{name}: shellable {} / dual-shellable {}, f = {}",
            r.cl_shellable,
            r.dual_cl_shellable,
            x.f_vector()
        );
        for row in &r.rows {
            println!("  k={} f_k={} >= min(f_0, f_d) = {}: {:?}", row.k, row.fk, r.f0.min(r.fd), row.min_side);
        }
    }
}
