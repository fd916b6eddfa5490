//! Face lattices of regular CW spheres and balls, shellings, and exact
//! verification of face-number lower bounds for shellable complexes.
//!
//! - [`lattice`]: graded face lattices, subcomplexes, closures, boundaries.
//! - [`shelling`]: checking and searching for shellings, with certificates.
//! - [`bounds`]: the lower-bound verifier and its supporting combinatorics.
//! - [`generators`]: simplices, cross-polytopes, cubes, polygons, cyclic
//!   polytopes, punctured spheres, and the comparison against cyclic
//!   polytopes.
//! - [`io`]: lattice JSON and facet-list text.
//! - [`cli`]: the `shellbound` command-line front end.

pub mod bounds;
pub mod cli;
pub mod generators;
pub mod io;
pub mod lattice;
pub mod shelling;
