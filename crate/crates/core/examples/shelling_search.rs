//! Check explicit orders and search for shellings.
//!
//! Run with `cargo run --example shelling_search`.

use shellbound::generators::{cross_polytope, ngon};
use shellbound::shelling::{classify, find_shelling, is_shelling, ShellingOrder, Verdict};

fn main() {
    let square = ngon(4).unwrap();
    for ids in [["e12", "e23", "e34", "e41"], ["e12", "e34", "e23", "e41"]] {
        match is_shelling(&square, &ShellingOrder::from_ids(&ids)).unwrap() {
            Verdict::Shelling(cert) => println!("{ids:?}: shelling of a {:?}", classify(&square, &cert).unwrap()),
            Verdict::Failure(f) => println!("{ids:?}: fails at step {} ({:?})", f.step, f.reason),
        }
    }

    let octahedron = cross_polytope(2).unwrap();
    let order = find_shelling::<&str>(&octahedron, &[]).unwrap().unwrap();
    println!("first octahedron shelling: {:?}", order.ids());
    let from_456 = find_shelling(&octahedron, &["456"]).unwrap().unwrap();
    println!("one starting at 456:       {:?}", from_456.ids());
    let cert = is_shelling(&octahedron, &order).unwrap();
    println!("{}", serde_json::to_string_pretty(&cert.certificate().unwrap().steps[1]).unwrap());
}
