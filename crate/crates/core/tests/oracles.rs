//! Independent oracles for derived quantities: binomials from a Pascal
//! triangle, cyclic-polytope facet counts from closed formulas, Gale's rule
//! from a brute-force sign test, and shellings replayed from certificates.

mod common;

use itertools::Itertools;
use proptest::prelude::*;
use shellbound::bounds::{
    binomial_pair, binomial_split_lb, is_simplicial, is_simplicial_by_intervals, rho, simplicial_equality_identity,
    verify_lower_bound, Rational,
};
use shellbound::generators::{cross_polytope, cyclic_boundary, cyclic_facets, gale_evenness, gubt_compare, punctured};
use shellbound::shelling::{classify, is_shelling, ShellingOrder, Topology, Verdict};

use common::{balls, first_shelling, spheres_with_cubes};

fn pascal(rows: usize) -> Vec<Vec<u64>> {
    let mut t = vec![vec![1u64]];
    for n in 1..=rows {
        let prev = &t[n - 1];
        let mut row = vec![1u64; n + 1];
        for k in 1..n {
            row[k] = prev[k - 1] + prev[k];
        }
        t.push(row);
    }
    t
}

fn choose(t: &[Vec<u64>], n: usize, k: usize) -> u64 {
    if k > n {
        0
    } else {
        t[n][k]
    }
}

// The floor/ceiling of (d+1)/2 are written out literally on purpose.
#[allow(clippy::manual_div_ceil)]
#[test]
fn rho_matches_pascal_triangle() {
    let t = pascal(16);
    for d in 0..=12usize {
        for k in 0..=d {
            let pair = choose(&t, (d + 2) / 2, d - k) + choose(&t, (d + 1) / 2, d - k);
            assert_eq!(binomial_pair(d, d - k), pair);
            let r = rho(d + 1, k).unwrap();
            assert_eq!(r.value, Rational::new(pair as i64, 2));
            assert!(*r.value.denom() == 1 || *r.value.denom() == 2);
        }
        assert_eq!(rho(d + 1, d).unwrap().value, Rational::from_integer(1));
        // At least 1 across the range, except at its lower end for even d,
        // where only the larger binomial survives and the value is 1/2.
        for k in (d.max(1) - 1) / 2..d {
            let value = rho(d + 1, k).unwrap().value;
            if d % 2 == 0 && k == (d - 1) / 2 {
                assert_eq!(value, Rational::new(1, 2), "d={d} k={k}");
            } else {
                assert!(value >= Rational::from_integer(1), "d={d} k={k}");
            }
        }
    }
}

#[test]
fn balanced_split_minimizes_binomial_sums() {
    let t = pascal(30);
    for d in 0..=12usize {
        for m in 1..=(d + 2) / 2 {
            let total = d + 1;
            let min = (0..=total).map(|a| choose(&t, a, m) + choose(&t, total - a, m)).min().unwrap();
            assert_eq!(min, binomial_pair(d, m), "d={d} m={m}");
        }
    }
}

proptest! {
    #[test]
    fn split_lemma_agrees_with_pascal(d in 0usize..=12, a in 0usize..=20, b in 0usize..=20, m in 1usize..=7) {
        let t = pascal(30);
        let result = binomial_split_lb(a, b, d, m);
        if a + b > d && m <= (d + 2) / 2 {
            let truth = choose(&t, a, m) + choose(&t, b, m) >= binomial_pair(d, m);
            prop_assert_eq!(result.unwrap(), truth);
            prop_assert!(truth);
        } else {
            prop_assert!(result.is_err());
        }
    }

    #[test]
    fn random_octahedron_orders_replay(seed in prop::collection::vec(any::<u32>(), 8)) {
        let oct = cross_polytope(2).unwrap();
        let mut ids: Vec<&str> = oct.facets().iter().map(|&f| oct.id(f)).collect();
        let mut keyed: Vec<(u32, &str)> = seed.into_iter().zip(ids.drain(..)).collect();
        keyed.sort();
        let order = ShellingOrder::from_ids(&keyed.iter().map(|(_, id)| *id).collect::<Vec<_>>());
        if let Verdict::Shelling(cert) = is_shelling(&oct, &order).unwrap() {
            prop_assert!(cert.replay(&oct).is_ok());
            prop_assert_eq!(classify(&oct, &cert).unwrap(), Topology::Sphere);
            let r = verify_lower_bound(&oct, &order, 1).unwrap();
            prop_assert!(r.holds() && r.equality);
        }
    }
}

/// Facet count of `C(d, n)`: `n/(n-m) C(n-m, m)` for `d = 2m`,
/// `2 C(n-m-1, m)` for `d = 2m+1`.
fn cyclic_facet_count(d: usize, n: usize) -> u64 {
    let t = pascal(30);
    let m = d / 2;
    if d.is_multiple_of(2) {
        (n as u64 * choose(&t, n - m, m)) / (n - m) as u64
    } else {
        2 * choose(&t, n - m - 1, m)
    }
}

/// Brute-force Gale test: every pair of non-members sees an even number of
/// members strictly between them.
fn gale_oracle(set: &[usize], n: usize) -> bool {
    let outside: Vec<usize> = (1..=n).filter(|i| !set.contains(i)).collect();
    outside
        .iter()
        .tuple_combinations()
        .all(|(&a, &b)| set.iter().filter(|&&s| a < s && s < b).count() % 2 == 0)
}

#[test]
fn gale_rule_matches_brute_force() {
    for n in 3..=10 {
        for d in 2..n.min(7) {
            for set in (1..=n).combinations(d) {
                assert_eq!(gale_evenness(&set, n), gale_oracle(&set, n), "{set:?} in [{n}]");
            }
        }
    }
}

#[test]
fn cyclic_facet_counts_match_closed_forms() {
    for d in 2..=6usize {
        for n in d + 1..=14 {
            let facets = cyclic_facets(d, n).unwrap();
            assert_eq!(facets.len() as u64, cyclic_facet_count(d, n), "C({d},{n})");
        }
    }
    for n in 5..=12 {
        let f = cyclic_boundary(4, n).unwrap().f_vector();
        assert_eq!(f.get(1), (n * (n - 1) / 2) as u64, "C(4,{n}) is neighborly");
        assert_eq!(f.get(0), n as u64);
    }
}

#[test]
fn simplicial_tests_agree() {
    for s in spheres_with_cubes().into_iter().chain(balls()) {
        assert_eq!(is_simplicial(&s.lattice), is_simplicial_by_intervals(&s.lattice), "{}", s.name);
        if is_simplicial(&s.lattice) && s.lattice.dim() >= 1 {
            assert!(simplicial_equality_identity(&s.lattice).unwrap(), "{}", s.name);
        }
    }
}

#[test]
fn every_corpus_member_has_a_replayable_shelling() {
    for s in spheres_with_cubes().into_iter().chain(balls()) {
        let order = first_shelling(&s.lattice);
        let cert = match is_shelling(&s.lattice, &order).unwrap() {
            Verdict::Shelling(c) => c,
            Verdict::Failure(f) => panic!("{}: {f:?}", s.name),
        };
        cert.replay(&s.lattice).unwrap();
        let expected = if s.lattice.boundary_complex().unwrap().is_void() { Topology::Sphere } else { Topology::Ball };
        assert_eq!(classify(&s.lattice, &cert).unwrap(), expected, "{}", s.name);
    }
}

#[test]
fn lower_bound_holds_on_the_whole_corpus() {
    for s in spheres_with_cubes().into_iter().chain(balls()).filter(|s| s.lattice.dim() >= 1) {
        let order = first_shelling(&s.lattice);
        let d = s.lattice.dim() as usize;
        for k in (d - 1) / 2..=d {
            let r = verify_lower_bound(&s.lattice, &order, k).unwrap();
            assert!(r.holds(), "{} k={k}: {r:?}", s.name);
        }
    }
}

/// `[f_k(X) - f_k(∂X)/2] / f_d(X)` on punctured cyclic polytopes decreases
/// with `n` toward `rho(d+1, k)`, and sits exactly on it at `k = d - 1`.
#[test]
fn punctured_cyclic_ratios_approach_rho() {
    for (poly_dim, range) in [(3usize, 5usize..=13usize), (4, 6..=13)] {
        let d = poly_dim - 1;
        for k in (d - 1) / 2..d {
            let target = rho(d + 1, k).unwrap().value;
            let mut previous: Option<Rational> = None;
            for n in range.clone() {
                let sphere = cyclic_boundary(poly_dim, n).unwrap();
                let first = sphere.id(sphere.facets()[0]).to_string();
                let ball = punctured(&sphere, &first).unwrap();
                let f = ball.f_vector();
                let fb = ball.boundary_complex().unwrap().f_vector();
                let ratio = (Rational::from_integer(f.get(k as isize) as i64) - Rational::new(fb.get(k as isize) as i64, 2))
                    / Rational::from_integer(f.get(d as isize) as i64);
                if k + 1 == d {
                    assert_eq!(ratio, target, "C({poly_dim},{n}) k={k}");
                } else {
                    assert!(ratio > target, "C({poly_dim},{n}) k={k}: {ratio} <= {target}");
                    if let Some(p) = previous {
                        assert!(ratio < p, "C({poly_dim},{n}) k={k}: {ratio} >= {p}");
                    }
                }
                previous = Some(ratio);
            }
        }
    }
}

#[test]
fn gubt_examples_never_flag_the_corpus() {
    let oct = cross_polytope(2).unwrap();
    let r = gubt_compare(&oct, 3, 5).unwrap();
    assert!(r.violations.is_empty() && r.mode == "theorem");
    let s = cyclic_boundary(4, 7).unwrap();
    let r = gubt_compare(&s, 4, 6).unwrap();
    assert!(r.violations.is_empty());
    assert!(r.rows.iter().all(|row| row.candidate >= row.cyclic));
}
