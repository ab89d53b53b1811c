use super::*;
use alloc::vec;

fn ip(s: &str) -> IntPolynomial {
    s.parse().unwrap()
}

fn res(c: &[i64]) -> Residue {
    Residue::from_i64s(c)
}

#[test]
fn residue_step_examples() {
    let p = ip("x^2-x-1");
    assert_eq!(residue_step(&res(&[1, 0]), -1, &p).unwrap(), res(&[-1, 1]));
    assert_eq!(residue_step(&res(&[-1, 1]), -1, &p).unwrap(), res(&[0, 0]));
    assert_eq!(residue_step(&res(&[0, 0, 1]), 1, &ip("x^3-2")).unwrap(), res(&[3, 0, 0]));
    assert_eq!(residue_step(&res(&[1]), 1, &ip("2x-1")), Err(Error::NonMonicModulus));
}

#[test]
fn kernel_step_matches_exact_step() {
    let p = ip("x^4-3x^3+x+5");
    let m = bfs::Modulus::new(&p).unwrap();
    let mut r = vec![1i64, 0, 0, 0];
    let mut out = vec![0i64; 4];
    let mut exact = res(&r);
    for b in [1, -1, 1, 1, -1, 0, 1, -1] {
        assert!(m.step(&r, b, &mut out));
        exact = residue_step(&exact, b, &p).unwrap();
        assert_eq!(Residue::from_i64s(&out), exact);
        r.copy_from_slice(&out);
    }
    assert!(!m.step(&[0, 0, 0, i64::MAX], 0, &mut out));
}

#[test]
fn within_bounds_through_residues() {
    let p = ip("x^2-x-1");
    let rs = crate::roots::isolate_roots(&p, 64).unwrap();
    let t = crate::roots::build_bound_table(&rs, &crate::dyadic::Dyadic::one()).unwrap();
    assert_eq!(within_bounds(&res(&[-1, 1]), &t), BoundVerdict::In);
    assert_eq!(within_bounds(&res(&[0, 0]), &t), BoundVerdict::In);
}

#[test]
fn golden_ratio_is_its_own_multiple() {
    let p = ip("x^2-x-1");
    let out = find_multiple(&p, &DigitSet::littlewood(), &SearchConfig::minimal()).unwrap();
    let SearchOutcome::Exists(w, _) = out else { panic!("{out:?}") };
    assert_eq!(w.digits_msb_first, [1, -1, -1]);
    assert_eq!(w.encode(&DigitSet::littlewood()), "+--");
    assert!(verify_witness(&p, &w, &DigitSet::littlewood()));
}

#[test]
fn x_minus_two_has_no_newman_multiple() {
    let p = ip("x-2");
    let out = find_multiple(&p, &DigitSet::newman(), &SearchConfig::default()).unwrap();
    let SearchOutcome::None(cert, stats) = out else { panic!("{out:?}") };
    assert_eq!(stats.final_delta, 0.0);
    assert_eq!(cert.vertex_count(), 1);
    assert!(cert.zero_unreached);
    assert!(cert.replay(&p).unwrap());
    assert!(cert.replay(&ip("x-3")).unwrap());
    // x+1 is itself Newman, so the set {1} is not closed for it
    assert!(!cert.replay(&ip("x+1")).unwrap());
}

#[test]
fn newman_multiple_ends_with_one() {
    // x^2+x+1 is Newman itself; (x+1)(x^2-x+1) = x^3+1
    for s in ["x^2+x+1", "x^2-x+1", "x+1"] {
        let p = ip(s);
        let out = find_multiple(&p, &DigitSet::newman(), &SearchConfig::minimal()).unwrap();
        let w = out.witness().expect(s).clone();
        assert_eq!(*w.digits_msb_first.last().unwrap(), 1);
        assert!(verify_witness(&p, &w, &DigitSet::newman()));
    }
}

#[test]
fn witness_strings() {
    let w = Witness::parse("+--").unwrap();
    assert_eq!(w.digits_msb_first, [1, -1, -1]);
    assert_eq!(w.degree(), 2);
    assert_eq!(Witness::parse("1001").unwrap().to_digit_string(false), "1001");
    assert_eq!(Witness::parse("2,0,-3").unwrap().digits_msb_first, [2, 0, -3]);
    assert_eq!(Witness::new(vec![2, 0, -3]).to_digit_string(true), "2,0,-3");
    assert!(Witness::parse("").is_err());
    assert!(Witness::parse("1,x").is_err());
}

#[test]
fn verify_witness_examples() {
    let p = ip("x^2-x-1");
    let d = DigitSet::littlewood();
    assert!(verify_witness(&p, &Witness::new(vec![1, -1, -1]), &d));
    assert!(!verify_witness(&p, &Witness::new(vec![1, 1, 1]), &d));
    assert!(!verify_witness(&p, &Witness::new(vec![-1, 1, 1]), &d));
    assert!(!verify_witness(&p, &Witness::new(vec![1, -1, -1, 0]), &d));
    assert!(!verify_witness(&p, &Witness::new(vec![]), &d));
}

#[test]
fn count_small_cases() {
    let d = DigitSet::littlewood();
    let CountOutcome::Counted { degree, count, .. } =
        count_minimal_multiples(&ip("x^2-x-1"), &d, &SearchConfig::minimal()).unwrap()
    else {
        panic!()
    };
    assert_eq!((degree, count), (2, num_bigint::BigUint::from(1u8)));
    let out = count_minimal_multiples(&ip("x-2"), &DigitSet::newman(), &SearchConfig::minimal()).unwrap();
    assert!(matches!(out, CountOutcome::NoMultiple(..)));
}

#[test]
fn digit_sets() {
    assert!(DigitSet::new(vec![]).is_err());
    assert!(DigitSet::new(vec![0]).is_err());
    let d = DigitSet::new(vec![2, -1, 0, 2]).unwrap();
    assert_eq!(d.digits(), [-1, 0, 2]);
    assert_eq!(d.bound(), 2);
    assert_eq!(d.default_leading(), [-1, 2]);
    assert_eq!(alloc::format!("{d}"), "custom=-1,0,2");
    assert_eq!("custom=-1,0,2".parse::<DigitSet>().unwrap(), d);
    assert_eq!("-1, 1".parse::<DigitSet>().unwrap(), DigitSet::littlewood());
    assert!("newman".parse::<DigitSet>().unwrap().is_newman());
    assert!("1,x".parse::<DigitSet>().is_err());
    assert_eq!(DigitSet::littlewood().default_leading(), [1]);
    assert!(DigitSet::littlewood().all_odd());
}

#[test]
fn bad_config_is_rejected() {
    let cfg = SearchConfig { delta_start: 0.93, ..SearchConfig::default() };
    assert!(find_multiple(&ip("x^2-x-1"), &DigitSet::littlewood(), &cfg).is_err());
    assert_eq!(SearchConfig::default().delta_steps().unwrap(), 19);
    assert_eq!(
        find_multiple(&ip("x^2-x"), &DigitSet::littlewood(), &SearchConfig::default()).unwrap_err(),
        Error::ZeroConstantTerm
    );
}

#[test]
fn caps_give_inconclusive() {
    let p = ip("x^10+x^9+x^8+x^3+x^2+1");
    let core = crate::intpoly::strip_cyclotomic(&p, false).noncyclotomic_part;
    let cfg = SearchConfig { max_vertices: 50, ..SearchConfig::default() };
    let out = find_multiple(&core, &DigitSet::littlewood(), &cfg).unwrap();
    assert!(matches!(out, SearchOutcome::Inconclusive(..)), "{out:?}");
    let mut calls = 0;
    let out = find_multiple_with(&core, &DigitSet::littlewood(), &SearchConfig::minimal(), &mut || {
        calls += 1;
        true
    })
    .unwrap();
    assert!(matches!(out, SearchOutcome::Inconclusive(InconclusiveReason::Timeout, _)), "{out:?}");
}
