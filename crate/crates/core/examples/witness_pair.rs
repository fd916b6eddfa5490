//! Split a shelling of a sphere and find faces deep inside each half.
//!
//! Run with `cargo run --example witness_pair`.

use shellbound::bounds::{check_split_count, find_witness_pair};
use shellbound::generators::cross_polytope;
use shellbound::shelling::find_shelling;

fn main() {
    let sphere = cross_polytope(3).unwrap();
    let order = find_shelling::<&str>(&sphere, &[]).unwrap().unwrap();
    println!("shelling: {:?}", order.ids());
    for j in 1..order.len() {
        let w = find_witness_pair(&sphere, &order, j).unwrap();
        let count = check_split_count(&sphere, &order, j, 2).unwrap();
        println!(
            "j={j:>2}: C={:<5} (dim {}), D={:<5} (dim {}); f_2 of interiors {} >= {}",
            w.c, w.dim_c, w.d, w.dim_d, count.lhs, count.rhs
        );
    }
}
