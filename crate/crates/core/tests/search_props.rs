use std::collections::{BTreeSet, VecDeque};

use digitmult_core::dyadic::Dyadic;
use digitmult_core::gf2::{admissible_littlewood_degree, deg2};
use digitmult_core::roots::{build_bound_table, isolate_roots, BoundTable, BoundVerdict};
use digitmult_core::search::{find_multiple, residue_step, verify_witness, within_bounds, Residue};
use digitmult_core::{DigitSet, IntPolynomial, SearchConfig, SearchOutcome};
use proptest::prelude::*;

fn cfg() -> SearchConfig {
    SearchConfig { max_vertices: 200_000, ..SearchConfig::default() }
}

fn littlewood_monic(max_deg: usize) -> impl Strategy<Value = IntPolynomial> {
    (1..=max_deg).prop_flat_map(|n| {
        prop::collection::vec(prop_oneof![Just(-1i64), Just(1)], n).prop_map(|mut c| {
            c.push(1);
            IntPolynomial::from_i64s(&c)
        })
    })
}

fn newman(max_deg: usize) -> impl Strategy<Value = IntPolynomial> {
    (1..=max_deg).prop_flat_map(|n| {
        prop::collection::vec(0i64..=1, n + 1).prop_map(|mut c| {
            c[0] = 1;
            *c.last_mut().unwrap() = 1;
            IntPolynomial::from_i64s(&c)
        })
    })
}

/// Monic, coefficients in [-3, 3], nonzero constant term.
fn monic(max_deg: usize) -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-3i64..=3, 1..=max_deg).prop_map(|mut c| {
        if c[0] == 0 {
            c[0] = 1;
        }
        c.push(1);
        IntPolynomial::from_i64s(&c)
    })
}

/// Vertices reachable from the leading digit 1 while staying within the
/// table's bounds, or `None` past `cap`.
fn closure(p: &IntPolynomial, digits: &[i64], t: &BoundTable, cap: usize) -> Option<BTreeSet<Residue>> {
    let n = p.degree().unwrap();
    let start = Residue::constant(n, 1);
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(r) = queue.pop_front() {
        for &b in digits {
            let s = residue_step(&r, b, p).unwrap();
            if within_bounds(&s, t) != BoundVerdict::Out && seen.insert(s.clone()) {
                if seen.len() > cap {
                    return None;
                }
                queue.push_back(s);
            }
        }
    }
    Some(seen)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn littlewood_witnesses_are_sound_and_congruent(p in littlewood_monic(7)) {
        let d = DigitSet::littlewood();
        if let SearchOutcome::Exists(w, _) = find_multiple(&p, &d, &cfg()).unwrap() {
            prop_assert!(verify_witness(&p, &w, &d));
            let n = w.degree() as u64;
            prop_assert!(admissible_littlewood_degree(&p, n).unwrap());
            prop_assert_eq!((n + 1) % deg2(&p).unwrap(), 0);
        }
    }

    #[test]
    fn reciprocal_symmetry(p in newman(8)) {
        let d = DigitSet::littlewood();
        let r = p.reciprocal().unwrap();
        let a = find_multiple(&p, &d, &cfg()).unwrap();
        let b = find_multiple(&r, &d, &cfg()).unwrap();
        let decisive = |o: &SearchOutcome| !matches!(o, SearchOutcome::Inconclusive(..));
        if decisive(&a) && decisive(&b) {
            prop_assert_eq!(a.verdict_str(), b.verdict_str());
        }
        if let SearchOutcome::Exists(w, _) = &a {
            prop_assert!(verify_witness(&p, w, &d));
            prop_assert!(verify_witness(&r, &w.reciprocal(&d), &d));
        }
    }

    #[test]
    fn certificates_replay(p in monic(4), newman_digits in any::<bool>()) {
        let d = if newman_digits { DigitSet::newman() } else { DigitSet::littlewood() };
        match find_multiple(&p, &d, &cfg()).unwrap() {
            SearchOutcome::None(cert, stats) => {
                prop_assert_eq!(stats.final_delta, 0.0);
                prop_assert_eq!(stats.excluded_roots, 0);
                prop_assert!(cert.replay(&p).unwrap());
            }
            SearchOutcome::Exists(w, _) => prop_assert!(verify_witness(&p, &w, &d)),
            SearchOutcome::Inconclusive(..) => {}
        }
    }

    #[test]
    fn smaller_delta_gives_larger_graph(p in monic(4), d1 in 0usize..4, gap in 1usize..4) {
        let rs = isolate_roots(&p, 64).unwrap().resolve();
        prop_assume!(rs.excluded().is_empty() && !rs.has_undecided());
        let digits = [-1i64, 1];
        let delta = |k: usize| Dyadic::from_f64(1.0 - 0.05 * k as f64);
        let (big, small) = (delta(d1), delta(d1 + gap));
        let t_big = build_bound_table(&rs, &big).unwrap();
        let t_small = build_bound_table(&rs, &small).unwrap();
        if let (Some(g1), Some(g2)) = (closure(&p, &digits, &t_big, 50_000), closure(&p, &digits, &t_small, 50_000)) {
            prop_assert!(g2.is_subset(&g1), "{} vertices not kept at the larger bound", g2.difference(&g1).count());
        }
    }
}
