//! Cyclic 4-polytopes approach the bound f_1 >= f_3 as the vertex count grows.
//!
//! Run with `cargo run --example cyclic_tightness`.

use shellbound::bounds::{rho, Rational};
use shellbound::generators::cyclic_boundary;

fn main() {
    let limit = rho(4, 1).unwrap().value;
    for n in 6..=13 {
        let f = cyclic_boundary(4, n).unwrap().f_vector();
        let ratio = Rational::new(f.get(1) as i64, f.get(3) as i64);
        println!("C(4,{n:>2}): f = {f}  f_1/f_3 = {ratio}  (limit {limit})");
    }
}
