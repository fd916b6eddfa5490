//! Verify the lower bound on f_k for a sphere, a non-simplicial sphere and a
//! ball, with exact arithmetic.
//!
//! Run with `cargo run --example lower_bound`.

use shellbound::bounds::verify_lower_bound;
use shellbound::generators::{cross_polytope, hypercube_boundary, punctured};
use shellbound::lattice::FaceLattice;
use shellbound::shelling::find_shelling;

fn show(name: &str, x: &FaceLattice) {
    let order = find_shelling::<&str>(x, &[]).unwrap().expect("shellable");
    let d = x.dim() as usize;
    for k in (d - 1) / 2..=d {
        let r = verify_lower_bound(x, &order, k).unwrap();
        println!(
            "{name:<22} k={k}: f_k = {:>3} >= {:>5}  slack {:>4}  equality {} (expected {})",
            r.lhs, r.rhs, r.slack, r.equality, r.expected_equality
        );
    }
}

fn main() {
    let octahedron = cross_polytope(2).unwrap();
    show("octahedron", &octahedron);
    show("cube boundary", &hypercube_boundary(2).unwrap());
    show("punctured octahedron", &punctured(&octahedron, "123").unwrap());
    show("4-cube boundary", &hypercube_boundary(3).unwrap());
}
