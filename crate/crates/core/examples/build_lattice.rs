//! Build a face lattice two ways and inspect it.
//!
//! Run with `cargo run --example build_lattice`.

use shellbound::io::lattice_to_json;
use shellbound::lattice::FaceLattice;

fn main() {
    // A square, given explicitly by its cover relations.
    let square = FaceLattice::build(
        &[
            ("0^", 0),
            ("v1", 1),
            ("v2", 1),
            ("v3", 1),
            ("v4", 1),
            ("e12", 2),
            ("e23", 2),
            ("e34", 2),
            ("e41", 2),
            ("1^", 3),
        ],
        &[
            ("0^", "v1"),
            ("0^", "v2"),
            ("0^", "v3"),
            ("0^", "v4"),
            ("v1", "e12"),
            ("v2", "e12"),
            ("v2", "e23"),
            ("v3", "e23"),
            ("v3", "e34"),
            ("v4", "e34"),
            ("v4", "e41"),
            ("v1", "e41"),
            ("e12", "1^"),
            ("e23", "1^"),
            ("e34", "1^"),
            ("e41", "1^"),
        ],
        1,
    )
    .expect("the square is a valid face lattice");
    println!("square: f = {}, diamond = {}", square.f_vector(), square.is_diamond());

    // Two triangles glued along an edge, from their vertex lists.
    let ball = FaceLattice::from_facets(&[vec!["1", "2", "3"], vec!["2", "3", "4"]]).unwrap();
    let boundary = ball.boundary_complex().unwrap();
    println!("ball: f = {}, boundary f = {}", ball.f_vector(), boundary.f_vector());
    println!("interior faces: {:?}", ball.interior().unwrap().ids());

    let cube = FaceLattice::from_facets(&[
        vec!["1", "2", "3"],
        vec!["1", "2", "6"],
        vec!["1", "5", "3"],
        vec!["1", "5", "6"],
        vec!["4", "2", "3"],
        vec!["4", "2", "6"],
        vec!["4", "5", "3"],
        vec!["4", "5", "6"],
    ])
    .unwrap()
    .dualize();
    println!("dual of the octahedron: f = {}", cube.f_vector());
    print!("{}", lattice_to_json(&square));
}
