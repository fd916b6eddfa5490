//! Deterministic corpus shared by the integration tests and the acceptance
//! harness.
#![allow(dead_code)]

use shellbound::generators::{cross_polytope, cyclic_boundary, hypercube_boundary, ngon, punctured, simplex_boundary};
use shellbound::lattice::FaceLattice;
use shellbound::shelling::{find_shelling, ShellingOrder};

pub struct Named {
    pub name: String,
    pub lattice: FaceLattice,
}

fn named(name: String, lattice: FaceLattice) -> Named {
    Named { name, lattice }
}

/// Spheres of dimension at most 3: simplex boundaries, cross-polytopes,
/// polygons with up to 8 sides, and boundaries of cyclic 4-polytopes on up to
/// 7 vertices.
pub fn spheres() -> Vec<Named> {
    let mut out = Vec::new();
    for d in 0..=3 {
        out.push(named(format!("simplex_boundary({d})"), simplex_boundary(d).unwrap()));
    }
    for d in 1..=3 {
        out.push(named(format!("cross_polytope({d})"), cross_polytope(d).unwrap()));
    }
    for n in 3..=8 {
        out.push(named(format!("ngon({n})"), ngon(n).unwrap()));
    }
    for n in 5..=7 {
        out.push(named(format!("cyclic_boundary(4,{n})"), cyclic_boundary(4, n).unwrap()));
    }
    out
}

/// `spheres()` plus cube boundaries, which are not simplicial.
pub fn spheres_with_cubes() -> Vec<Named> {
    let mut out = spheres();
    for d in 1..=3 {
        out.push(named(format!("hypercube_boundary({d})"), hypercube_boundary(d).unwrap()));
    }
    out
}

pub fn two_triangles() -> FaceLattice {
    FaceLattice::from_facets(&[vec!["1", "2", "3"], vec!["2", "3", "4"]]).unwrap()
}

/// Balls: each sphere of dimension at least 1 with its least facet removed,
/// plus the two-triangle ball.
pub fn balls() -> Vec<Named> {
    let mut out = vec![named("two_triangles".into(), two_triangles())];
    for s in spheres_with_cubes() {
        if s.lattice.dim() < 1 {
            continue;
        }
        let first = s.lattice.id(s.lattice.facets()[0]).to_string();
        out.push(named(format!("punctured({}, {first})", s.name), punctured(&s.lattice, &first).unwrap()));
    }
    out
}

pub fn first_shelling(lattice: &FaceLattice) -> ShellingOrder {
    find_shelling::<&str>(lattice, &[]).unwrap().expect("corpus members are shellable")
}
