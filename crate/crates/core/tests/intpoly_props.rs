use digitmult_core::intpoly::{cyclotomic, euler_phi, has_positive_real_root, strip_cyclotomic};
use digitmult_core::{IntPolynomial, PolynomialFamily};
use num_traits::Zero;
use proptest::prelude::*;

/// Degree at most `max_deg`, coefficients in [-10, 10], nonzero leading term.
fn poly(max_deg: usize) -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-10i64..=10, 1..=max_deg + 1).prop_map(|mut c| {
        let last = c.last_mut().unwrap();
        if *last == 0 {
            *last = 1;
        }
        IntPolynomial::from_i64s(&c)
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

proptest! {
    #[test]
    fn exact_div_undoes_mul(p in poly(20), q in poly(20)) {
        let pq = &p * &q;
        prop_assert_eq!(pq.exact_div(&q).unwrap(), p);
    }

    #[test]
    fn reciprocal_is_an_involution(p in poly(20)) {
        prop_assume!(!p.constant_term().is_zero());
        let r = p.reciprocal().unwrap();
        prop_assert_eq!(r.degree(), p.degree());
        prop_assert_eq!(r.reciprocal().unwrap(), p);
    }

    #[test]
    fn strip_cyclotomic_reconstructs(
        p in poly(8),
        cyc in prop::collection::vec((1u64..=30, 1u32..=2), 0..3),
        keep_phi1 in any::<bool>(),
    ) {
        let mut input = p;
        for &(n, e) in &cyc {
            input = &input * &cyclotomic(n).pow(e);
        }
        let split = strip_cyclotomic(&input, keep_phi1);
        prop_assert_eq!(split.reconstruct(), input.clone());
        let rest = &split.noncyclotomic_part;
        let d = rest.degree().unwrap_or(0) as u64;
        for n in 1..=200u64 {
            if n == 1 && keep_phi1 {
                continue;
            }
            if euler_phi(n) <= d {
                prop_assert!(rest.exact_div(&cyclotomic(n)).is_err(), "Phi_{} still divides {}", n, rest);
            }
        }
    }

    #[test]
    fn newman_has_no_positive_root(p in newman(20)) {
        prop_assert_eq!(p.classify_family(), PolynomialFamily::Newman);
        prop_assert!(!has_positive_real_root(&p));
    }
}

#[test]
fn cyclotomic_degree_and_division() {
    for n in 1..=200u64 {
        let phi = cyclotomic(n);
        assert_eq!(phi.degree(), Some(euler_phi(n) as usize), "n = {n}");
        assert!(IntPolynomial::x_pow_minus_one(n as usize).exact_div(&phi).is_ok(), "n = {n}");
    }
}
