//! Acceptance gate: every test is one criterion and prints one PASS line
//! (run with `-- --nocapture` to see them; the harness result line carries
//! the same information). Tolerances are stated inline; slack checks use
//! certified enclosures, equality checks are symbolic.

use std::collections::HashSet;
use std::time::Instant;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use poset_entropy::bounds::{
    check_bounds, check_log_comparison, classify_special_case, comparison_polynomial,
    edge_removal_experiment, epsilon, star_cost, two_minus_epsilon,
};
use poset_entropy::entropy::{complement_entropy_check, entropy_bruteforce, km_decompose};
use poset_entropy::exact::{rat_to_f64, ExactReal};
use poset_entropy::generate::{enumerate_width2, epoch_poset, path, random_width2, star, table1_case};
use poset_entropy::intervals::{
    breakpoints_and_epochs, build_q, canonical_intervals, interval_order_of, phantom_edges,
};
use poset_entropy::linext::{count_bruteforce, count_downsets, count_width2, fibonacci};
use poset_entropy::poset::Poset;
use poset_entropy::sortsim::{greedy_sort, random_extension};

const TOL: f64 = 1e-9;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn worked_example() -> Poset {
    Poset::from_covers(
        &["a", "b", "c", "d", "e", "f"],
        &[("a", "b"), ("b", "c"), ("d", "e"), ("e", "f"), ("a", "e"), ("d", "c"), ("b", "f")],
    )
    .unwrap()
}

#[test]
fn criterion_1_worked_example_exact() {
    let start = Instant::now();
    let p = worked_example();

    let chains = p.chain_cover_2().unwrap();
    let km = km_decompose(&p, &chains).unwrap();
    assert!(km.entropy.eq_symbolic(&ExactReal::one()), "incomparability entropy is exactly 1");
    let (_, comp) = complement_entropy_check(&p).unwrap();
    assert!(
        comp.eq_symbolic(&ExactReal::log2_uint(&BigUint::from(3u32))),
        "comparability entropy is exactly log2 3"
    );

    assert_eq!(count_width2(&p, &chains).unwrap(), BigUint::from(13u32));

    let rep = canonical_intervals(&p, &km);
    let third = |k: i64| (rat(k, 3), rat(k + 1, 3));
    for (id, want) in [("a", 0), ("b", 1), ("c", 2), ("d", 0), ("e", 1), ("f", 2)] {
        let v = p.ids().iter().position(|s| s == id).unwrap();
        assert_eq!(rep.intervals[v], third(want), "interval of {id}");
    }

    assert_eq!(p.kappa2(), 0, "one 6-element incomparability component");
    let io = interval_order_of(&rep);
    assert_eq!(io.kappa2(), 3, "interval order leaves three 2-element components");

    let es = breakpoints_and_epochs(&rep);
    let phantoms = phantom_edges(&p, &es).unwrap();
    let named: HashSet<(String, String)> = phantoms
        .edges
        .iter()
        .map(|e| (p.ids()[e.u].clone(), p.ids()[e.v].clone()))
        .collect();
    let want: HashSet<(String, String)> =
        [("d", "b"), ("e", "c")].map(|(u, v)| (u.to_string(), v.to_string())).into();
    assert_eq!(named, want, "phantom edges are d-b and e-c");

    let (q, _) = build_q(&p, &rep, &phantoms);
    assert_eq!(q, p, "the stretched extension is the poset itself");

    assert!(start.elapsed().as_secs_f64() < 1.0, "worked example must finish within 1s");
    println!("criterion 1 (worked example, all exact invariants): PASS");
}

#[test]
fn criterion_2_bounds_hold_on_all_small_posets() {
    let mut checked = 0usize;
    for n in 1..=8 {
        for p in enumerate_width2(n).unwrap() {
            let r = check_bounds(&p).unwrap();
            assert!(r.slack1_lower >= -TOL, "log e <= nH failed: {p:?}");
            assert!(r.slack1_upper >= -TOL, "nH <= (1 + 7 log2 e)*log e failed: {p:?}");
            assert!(r.slack2 >= -TOL, "factor-2 bound failed: {p:?}");
            assert!(r.slack3 >= -TOL, "refined bound failed: {p:?}");

            let g = p.incomparability_graph();
            let matching = (0..p.n()).all(|v| g.degree(v) <= 1);
            assert_eq!(r.tight, matching, "tightness characterization failed: {p:?}");
            checked += 1;
        }
    }
    println!("criterion 2 (three bounds + tightness on {checked} posets, n <= 8): PASS");
}

#[test]
fn criterion_3_entropy_cross_checks_on_connected_graphs() {
    let mut checked = 0usize;
    for n in 1..=8 {
        let log_n = (n as f64).log2();
        for p in enumerate_width2(n).unwrap() {
            let g = p.incomparability_graph();
            if !g.is_connected() {
                continue;
            }
            let chains = p.chain_cover_2().unwrap();
            let km = km_decompose(&p, &chains).unwrap();
            let exact = km.entropy.to_f64();

            let fw = entropy_bruteforce(&g.adj).unwrap();
            assert!((exact - fw.value).abs() <= 1e-6, "KM vs Frank-Wolfe: {p:?}");

            // Independent route to the complement identity: minimize over
            // the comparability graph numerically and add the two values.
            let comp_adj: Vec<u64> = (0..n)
                .map(|u| {
                    (0..n)
                        .filter(|&v| v != u && p.comparable(u, v))
                        .fold(0u64, |m, v| m | 1 << v)
                })
                .collect();
            let fw_comp = entropy_bruteforce(&comp_adj).unwrap();
            assert!(
                (exact + fw_comp.value - log_n).abs() <= 1e-6,
                "H(G) + H(complement) != log n: {p:?}"
            );
            checked += 1;
        }
    }
    println!("criterion 3 (decomposition vs Frank-Wolfe + complement identity, {checked} graphs): PASS");
}

#[test]
fn criterion_4_named_families() {
    // Paths count Fibonacci-many extensions.
    for n in 3..=20 {
        let e = count_downsets(&path(n)).unwrap();
        assert_eq!(e, fibonacci(n as u64 + 1), "path({n})");
    }

    // Five-element path: e = 8, so log e = 3 exactly and the entropy ratio
    // lands in a narrow certified window.
    let r = check_bounds(&path(5)).unwrap();
    assert!(r.log_e.eq_symbolic(&ExactReal::from_integer(3)));
    let ratio = r.lhs.div(&r.log_e).unwrap();
    let (lo, hi) = ratio.interval(256);
    assert!(rat_to_f64(&lo) >= 1.615 && rat_to_f64(&hi) <= 1.625, "ratio window");

    // Two-leaf star: the refined bound is symbolically tight.
    let log3 = ExactReal::log2_uint(&BigUint::from(3u32));
    assert!(star_cost(2).eq_symbolic(&two_minus_epsilon().mul(&log3)));
    let star3 = star(3).unwrap();
    let rs = check_bounds(&star3).unwrap();
    assert!(rs.rhs3.sub(&rs.lhs).is_zero_symbolic(), "star(3) refined bound tight");

    // The correction constant sits where it should.
    let (elo, ehi) = epsilon().interval(256);
    assert!(rat_to_f64(&elo) >= 0.2615 && rat_to_f64(&ehi) <= 0.2625);
    println!("criterion 4 (Fibonacci paths, ratio window, tight star, epsilon window): PASS");
}

#[test]
fn criterion_5_edge_removal_grid() {
    let start = Instant::now();
    // All coprime pairs with 2 <= omega < psi - 1 <= 7.
    let pairs = [(5, 2), (7, 2), (5, 3), (7, 3), (8, 3), (7, 4), (7, 5), (8, 5)];
    for (psi, omega) in pairs {
        let p = epoch_poset(psi, omega).unwrap();
        let exp = edge_removal_experiment(&p, 0).unwrap();

        assert_eq!(exp.overlap, rat(1, (psi * omega) as i64), "overlap for ({psi},{omega})");

        let h_room = exp.bound_h.sub(&exp.delta_h);
        assert!(rat_to_f64(&h_room.interval(256).0) >= -TOL, "entropy delta bound ({psi},{omega})");
        let e_room = exp.delta_e.sub(&exp.bound_e);
        assert!(rat_to_f64(&e_room.interval(256).0) >= -TOL, "extension delta bound ({psi},{omega})");

        assert!(
            exp.part_epoch_sizes.0 >= 3 && exp.part_epoch_sizes.1 >= 3,
            "split parts keep >= 3 epoch elements each ({psi},{omega})"
        );

        let classes = exp.classes.expect("extension census must run on this grid");
        assert_eq!(exp.class_bound, rat(2 * psi as i64, omega as i64) + rat(4, 1));
        // The orientation count behind the extension-count bound: forward
        // members of one class orient the edges at u and v in at most
        // 2 psi/omega + 4 ways. Class cardinality adds the lone backward
        // member and can top the same cap by one, which (7,5) realizes.
        assert!(
            BigRational::from_integer((classes.max_forward_members as u64).into())
                <= exp.class_bound,
            "forward orientation cap ({psi},{omega})"
        );
        assert!(
            BigRational::from_integer((classes.max_class_size as u64).into())
                <= &exp.class_bound + BigRational::from_integer(1.into()),
            "class cardinality cap ({psi},{omega})"
        );
        assert_eq!(classes.backward, classes.good_forward, "pairing ({psi},{omega})");
        assert_eq!(classes.backward, classes.class_count, "one backward per class ({psi},{omega})");
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 300.0, "grid must finish within 5 minutes, took {elapsed:.1}s");
    println!("criterion 5 (edge removal on {} coprime pairs, {elapsed:.1}s): PASS", pairs.len());
}

#[test]
fn criterion_6_log_comparison() {
    // Exact nonnegativity of the degree-7 difference polynomial on a dense
    // rational grid of u = x/y in [1, 16].
    let mut points = 0usize;
    for q in 1i64..=8 {
        for p in q..=16 * q {
            let u = rat(p, q);
            assert!(
                comparison_polynomial(&u) >= BigRational::zero(),
                "polynomial negative at {u}"
            );
            points += 1;
        }
    }

    // Certified logarithmic form on the same grid realized as (x, y) =
    // (p, q) with x >= y >= 2.
    let mut checks = 0usize;
    for q in 2i64..=8 {
        for p in q..=16 * q {
            check_log_comparison(&rat(p, 1), &rat(q, 1)).unwrap();
            checks += 1;
        }
    }
    println!("criterion 6 (polynomial on {points} grid points, {checks} certified log checks): PASS");
}

#[test]
fn criterion_7_pendant_family_closed_forms() {
    let want_bound = |case: u8| match case {
        5 => rat(43, 25),
        _ => rat(17, 10),
    };
    let mut failures = Vec::new();
    for case in 3u8..=6 {
        for param in 2usize..=8 {
            let p = table1_case(case, param).unwrap();
            let r = classify_special_case(&p).unwrap();
            assert_eq!(r.ratio_bound.as_ref(), Some(&want_bound(case)), "case {case} bound");
            if r.ratio_within_bound != Some(true) {
                failures.push(format!("case {case} param {param}: ratio exceeds {}", want_bound(case)));
            }
            if r.ratio_le_two_minus_eps != Some(true) {
                failures.push(format!("case {case} param {param}: ratio exceeds 2 - eps"));
            }
            if r.cost_matches != Some(true) {
                failures.push(format!("case {case} param {param}: entropy closed form mismatch"));
            }
            if r.e_matches != Some(true) {
                failures.push(format!(
                    "case {case} param {param}: extension-count closed form {} != exact {}",
                    r.form_e.unwrap(),
                    r.e
                ));
            }
        }
    }
    if failures.is_empty() {
        println!("criterion 7 (pendant-family closed forms and ratio caps): PASS");
    } else {
        println!("criterion 7 (pendant-family closed forms and ratio caps): FAIL");
        for f in &failures {
            println!("  {f}");
        }
        panic!("{} closed-form mismatches (ratio caps all hold)", failures.len());
    }
}

#[test]
fn criterion_8_sorter_stays_within_budget() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut sorted = 0usize;
    for n in 1..=8 {
        for p in enumerate_width2(n).unwrap() {
            let hidden = random_extension(&p, &mut rng);
            // greedy_sort re-checks the telescoping identity
            // e(P) = e(P + uv) + e(P + vu) exactly at every query.
            let t = greedy_sort(&p, &hidden).unwrap();
            assert!(t.within_budget(), "n = {n}: {} > {}", t.query_count(), t.budget2);
            sorted += 1;
        }
    }

    let mut random_sorted = 0usize;
    for n in 3..=12 {
        for p in random_width2(n, 20, 1000 + n as u64).unwrap() {
            let hidden = random_extension(&p, &mut rng);
            let t = greedy_sort(&p, &hidden).unwrap();
            assert!(t.within_budget(), "n = {n}: {} > {}", t.query_count(), t.budget2);
            random_sorted += 1;
        }
    }
    assert_eq!(random_sorted, 200);
    println!("criterion 8 (sorter within ceil(2 log2 e) on {sorted} + {random_sorted} posets): PASS");
}

#[test]
fn criterion_9_extension_counters_agree() {
    let mut checked = 0usize;
    for n in 1..=9 {
        for p in enumerate_width2(n).unwrap() {
            let chains = p.chain_cover_2().unwrap();
            let a = count_width2(&p, &chains).unwrap();
            let b = count_downsets(&p).unwrap();
            let c = count_bruteforce(&p).unwrap();
            assert!(a == b && b == c, "counters disagree on {p:?}");
            checked += 1;
        }
    }
    println!("criterion 9 (three extension counters agree on {checked} posets, n <= 9): PASS");
}
