//! Acceptance run: twelve criteria, each with exact expectations and a time
//! limit. Prints one PASS/FAIL line per criterion and exits nonzero if any
//! fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_integer::binomial;
use shellbound::bounds::{
    barany_check, binomial_split_lb, check_split_count, corollaries, facet_decomposition, find_witness_pair, rho,
    split_complexes, vandermonde_check, verify_lower_bound, Rational,
};
use shellbound::generators::{cross_polytope, cyclic_boundary, hypercube_boundary, ngon, simplex_boundary};
use shellbound::lattice::FaceLattice;
use shellbound::shelling::{
    final_intersection_inside, find_shelling, is_shelling, FailureReason, ShellingOrder, Verdict,
};

use common::{balls, first_shelling, spheres, spheres_with_cubes, two_triangles};

type Check = Result<(), String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(cond: bool, message: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(message())
    }
}

fn exact_bound(x: &FaceLattice, k: usize, lhs: u64, rhs: Rational, equality: bool) -> Check {
    let r = verify_lower_bound(x, &first_shelling(x), k).map_err(|e| e.to_string())?;
    ensure(r.lhs == lhs && r.rhs == rhs, || format!("k={k}: got {} vs {}, want {lhs} vs {rhs}", r.lhs, r.rhs))?;
    ensure(r.equality == equality && r.expected_equality == equality, || {
        format!("k={k}: equality {} expected {} want {equality}", r.equality, r.expected_equality)
    })?;
    ensure(r.holds(), || format!("k={k}: report does not hold: {r:?}"))
}

fn simplicial_equality() -> Check {
    exact_bound(&cross_polytope(2).unwrap(), 1, 12, Rational::from_integer(12), true)?;
    ensure(rho(3, 1).unwrap().value == Rational::new(3, 2), || "rho(3,1) != 3/2".into())?;
    ensure(rho(4, 2).unwrap().value == Rational::from_integer(2), || "rho(4,2) != 2".into())?;
    exact_bound(&simplex_boundary(3).unwrap(), 2, 10, Rational::from_integer(10), true)
}

fn non_simplicial_strict() -> Check {
    let cube = hypercube_boundary(2).unwrap();
    exact_bound(&cube, 1, 12, Rational::from_integer(9), false)?;
    let r = verify_lower_bound(&cube, &first_shelling(&cube), 1).map_err(|e| e.to_string())?;
    ensure(r.slack == Rational::from_integer(3), || format!("slack {}", r.slack))
}

fn ball_with_boundary_term() -> Check {
    let ball = two_triangles();
    let order = ShellingOrder::from_ids(&["123", "234"]);
    let r = verify_lower_bound(&ball, &order, 1).map_err(|e| e.to_string())?;
    let want = Rational::new(3, 2) * 2 + Rational::new(4, 2);
    ensure(r.lhs == 5 && r.rhs == want && r.rhs == Rational::from_integer(5), || format!("k=1: {r:?}"))?;
    ensure(r.equality && r.expected_equality && r.holds(), || format!("k=1 flags: {r:?}"))?;
    let r = verify_lower_bound(&ball, &order, 0).map_err(|e| e.to_string())?;
    ensure(r.lhs == 4 && r.rhs == Rational::from_integer(3), || format!("k=0: {r:?}"))?;
    ensure(r.slack == Rational::from_integer(1) && !r.equality && !r.expected_equality && r.holds(), || {
        format!("k=0 flags: {r:?}")
    })
}

/// A facet order of a polygon is a shelling exactly when every edge after the
/// first shares a vertex with an earlier edge.
fn polygon_oracle(edges: &[BTreeSet<String>]) -> bool {
    let mut seen: BTreeSet<String> = edges[0].clone();
    for e in &edges[1..] {
        if e.is_disjoint(&seen) {
            return false;
        }
        seen.extend(e.iter().cloned());
    }
    true
}

fn shelling_verification() -> Check {
    let sq = ngon(4).unwrap();
    let accepted = is_shelling(&sq, &ShellingOrder::from_ids(&["e12", "e23", "e34", "e41"])).unwrap();
    ensure(matches!(accepted, Verdict::Shelling(_)), || "cyclic 4-gon order rejected".into())?;
    let rejected = is_shelling(&sq, &ShellingOrder::from_ids(&["e12", "e34", "e23", "e41"])).unwrap();
    ensure(
        rejected.failure().is_some_and(|f| f.step == 2 && f.reason == FailureReason::EmptyIntersection),
        || format!("opposite edges: {rejected:?}"),
    )?;

    let oct = cross_polytope(2).unwrap();
    let antipodal = ShellingOrder::from_ids(&["123", "456", "126", "135", "156", "234", "246", "345"]);
    let verdict = is_shelling(&oct, &antipodal).unwrap();
    ensure(verdict.failure().is_some_and(|f| f.step == 2), || format!("antipodal start: {verdict:?}"))?;

    for n in [4, 5] {
        let polygon = ngon(n).unwrap();
        let facets = polygon.facets();
        let mut tested = 0;
        for perm in facets.iter().copied().permutations(facets.len()) {
            let ids: Vec<&str> = perm.iter().map(|&f| polygon.id(f)).collect();
            let edges: Vec<BTreeSet<String>> = perm
                .iter()
                .map(|&f| polygon.vertices_of(f).into_iter().map(str::to_string).collect())
                .collect();
            let engine = matches!(is_shelling(&polygon, &ShellingOrder::from_ids(&ids)).unwrap(), Verdict::Shelling(_));
            ensure(engine == polygon_oracle(&edges), || format!("{n}-gon order {ids:?}: engine says {engine}"))?;
            tested += 1;
        }
        ensure(tested == (1..=n).product::<usize>(), || "permutation count".into())?;
    }
    Ok(())
}

fn witness_suite() -> Check {
    for s in spheres() {
        let x = &s.lattice;
        let order = first_shelling(x);
        for j in 1..order.len() {
            let w = find_witness_pair(x, &order, j).map_err(|e| format!("{} j={j}: {e}", s.name))?;
            let split = split_complexes(x, &order, j).map_err(|e| e.to_string())?;
            let (c, d) = (x.face(&w.c).unwrap(), x.face(&w.d).unwrap());
            ensure(
                split.int_beginning.contains(c)
                    && split.int_ending.contains(d)
                    && x.dim_of(c) + x.dim_of(d) <= x.dim()
                    && w.c_in_interior
                    && w.d_in_interior,
                || format!("{} j={j}: bad witness {w:?}", s.name),
            )?;
        }
    }
    Ok(())
}

fn split_count_sweep() -> Check {
    for s in spheres() {
        let x = &s.lattice;
        let order = first_shelling(x);
        let d = (x.dim() + 1) as usize;
        for j in 0..=order.len() {
            for k in (d - 1) / 2..d {
                let c = check_split_count(x, &order, j, k).map_err(|e| format!("{} j={j} k={k}: {e}", s.name))?;
                ensure(c.ok, || format!("{} j={j} k={k}: {c:?}", s.name))?;
            }
        }
    }
    Ok(())
}

fn interval_oracles() -> Check {
    for s in spheres_with_cubes() {
        let x = &s.lattice;
        let top_rank = x.rank();
        let coatoms = x.facets();
        for g in x.faces().filter(|&g| g != x.top()) {
            for rank in x.rank_of(g)..top_rank {
                let c = x.upper_interval_count(g, rank).map_err(|e| e.to_string())?;
                let oracle = binomial((top_rank - x.rank_of(g)) as u64, (top_rank - rank) as u64);
                ensure(c.meets_bound && c.bound == oracle && c.count >= oracle, || {
                    format!("{}: [{}, 1^] rank {rank}: {c:?}", s.name, x.id(g))
                })?;
            }
            for &coatom in coatoms.iter().filter(|&&c| c != g && x.leq(g, c)) {
                let a = x
                    .atom_avoiding_in_interval(g, coatom)
                    .map_err(|e| format!("{}: {} below {}: {e}", s.name, x.id(g), x.id(coatom)))?;
                ensure(
                    x.lower_covers(a).any(|b| b == g) && !x.leq(a, coatom),
                    || format!("{}: bad avoiding atom {}", s.name, x.id(a)),
                )?;
            }
        }
    }
    Ok(())
}

fn binomial_sweep() -> Check {
    for d in 0..=12usize {
        for m in 1..=(d + 2) / 2 {
            for a in 0..=d + 1 {
                for b in (d + 1).saturating_sub(a)..=d + 1 {
                    ensure(binomial_split_lb(a, b, d, m).unwrap(), || format!("a={a} b={b} d={d} m={m}"))?;
                }
            }
        }
        for k in 0..d {
            let v = vandermonde_check(d, k).unwrap();
            ensure(v.identity_holds && v.cross_terms_vanish == (k + 1 == d), || format!("d={d} k={k}: {v:?}"))?;
        }
    }
    Ok(())
}

fn barany_property() -> Check {
    let cases = [
        ("octahedron", cross_polytope(2).unwrap()),
        ("cube", hypercube_boundary(2).unwrap()),
        ("4-simplex boundary", simplex_boundary(3).unwrap()),
        ("C(4,7)", cyclic_boundary(4, 7).unwrap()),
    ];
    for (name, x) in cases {
        let report = corollaries(&x).map_err(|e| format!("{name}: {e}"))?;
        ensure(report.dual_cl_shellable && report.cl_shellable, || format!("{name}: shellings missing"))?;
        let f = x.f_vector();
        let floor = f.get(0).min(f.get(x.dim()));
        ensure((0..=x.dim()).all(|k| f.get(k) >= floor), || format!("{name}: f-vector {f}"))?;
        ensure(barany_check(&x) == Ok(true) && report.holds(), || format!("{name}: {report:?}"))?;
    }
    Ok(())
}

fn tightness_trend() -> Check {
    let mut previous: Option<Rational> = None;
    let limit = rho(4, 1).unwrap().value;
    for n in 6..=13usize {
        let f = cyclic_boundary(4, n).unwrap().f_vector();
        ensure(f.get(3) == (n * (n - 3) / 2) as u64, || format!("n={n}: f3={}", f.get(3)))?;
        let ratio = Rational::new(f.get(1) as i64, f.get(3) as i64);
        ensure(ratio == Rational::new(n as i64 - 1, n as i64 - 3), || format!("n={n}: ratio {ratio}"))?;
        ensure(ratio > limit, || format!("n={n}: ratio {ratio} not above {limit}"))?;
        if let Some(p) = previous {
            ensure(ratio < p, || format!("n={n}: {ratio} not below {p}"))?;
        }
        previous = Some(ratio);
    }
    ensure(previous == Some(Rational::new(6, 5)), || "ratio at n=13 is not 6/5".into())
}

/// Shellings to test on a ball: all of them when the ball is small, else one
/// per choice of first facet.
fn ball_shellings(x: &FaceLattice) -> Vec<ShellingOrder> {
    let facets = x.facets();
    if facets.len() <= 7 {
        facets
            .iter()
            .copied()
            .permutations(facets.len())
            .map(|p| ShellingOrder::from_ids(&p.iter().map(|&f| x.id(f)).collect::<Vec<_>>()))
            .filter(|o| matches!(is_shelling(x, o), Ok(Verdict::Shelling(_))))
            .collect()
    } else {
        facets
            .iter()
            .filter_map(|&f| find_shelling(x, &[x.id(f)]).unwrap())
            .collect()
    }
}

fn final_intersection() -> Check {
    for b in balls() {
        let orders = ball_shellings(&b.lattice);
        ensure(!orders.is_empty(), || format!("{}: no shellings", b.name))?;
        for order in orders {
            let inside = final_intersection_inside(&b.lattice, &order).map_err(|e| e.to_string())?;
            ensure(inside, || format!("{}: order {:?}", b.name, order.ids()))?;
        }
    }
    Ok(())
}

fn double_counting() -> Check {
    let corpus = spheres_with_cubes().into_iter().chain(balls());
    for s in corpus.filter(|s| s.lattice.dim() >= 1) {
        let x = &s.lattice;
        let order = first_shelling(x);
        let dec = facet_decomposition(x, &order).map_err(|e| format!("{}: {e}", s.name))?;
        let d = x.dim() as usize;
        for k in (d - 1) / 2..d {
            let r = verify_lower_bound(x, &order, k).map_err(|e| format!("{} k={k}: {e}", s.name))?;
            let direct: u64 = dec
                .facets
                .iter()
                .map(|e| e.int_beginning.get(k as isize) + e.int_ending.get(k as isize))
                .sum();
            let f = x.f_vector().get(k as isize);
            let boundary = x.boundary_complex().unwrap().f_vector().get(k as isize);
            ensure(
                r.interior_sum == Some(direct) && direct <= 2 * f - boundary && r.double_count_ok && r.holds(),
                || format!("{} k={k}: sum {direct} vs {} ({r:?})", s.name, 2 * f - boundary),
            )?;
        }
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("1 equality for simplicial spheres at k = d-1", Duration::from_secs(2), simplicial_equality),
        ("2 strict inequality for the cube", Duration::from_secs(1), non_simplicial_strict),
        ("3 ball with boundary term", Duration::from_secs(1), ball_with_boundary_term),
        ("4 shelling verification and permutation oracle", Duration::from_secs(10), shelling_verification),
        ("5 witness pairs across all splits", Duration::from_secs(60), witness_suite),
        ("6 split-count sweep", Duration::from_secs(60), split_count_sweep),
        ("7 interval-count and avoiding-atom oracles", Duration::from_secs(30), interval_oracles),
        ("8 binomial helper sweep", Duration::from_secs(5), binomial_sweep),
        ("9 min-bound property", Duration::from_secs(60), barany_property),
        ("10 cyclic tightness trend", Duration::from_secs(30), tightness_trend),
        ("11 final intersection inside the ball", Duration::from_secs(30), final_intersection),
        ("12 double-counting inequality", Duration::from_secs(60), double_counting),
    ];
    let mut failures = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let outcome = match result {
            Ok(()) if elapsed <= limit => Ok(()),
            Ok(()) => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            Err(e) => Err(e),
        };
        match outcome {
            Ok(()) => println!("PASS  [{name}] {elapsed:.2?}"),
            Err(e) => {
                failures += 1;
                println!("FAIL  [{name}] {elapsed:.2?}: {e}");
            }
        }
    }
    println!("{} of 12 criteria passed", 12 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
