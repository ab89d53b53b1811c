use digitmult_core::gf2::{deg2, deg2_factorization, factor_f2, is_irreducible, order_of_x, prime_factors, reduce_mod2, F2Poly};
use digitmult_core::IntPolynomial;
use proptest::prelude::*;

/// Nonzero polynomials of degree below 22.
fn f2poly() -> impl Strategy<Value = F2Poly> {
    (1u64..1 << 22).prop_map(F2Poly::from_u64)
}

/// Monic, odd constant term, degree 1..=14.
fn odd_monic() -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-3i64..=3, 1..=14).prop_map(|mut c| {
        if c[0] % 2 == 0 {
            c[0] += 1;
        }
        c.push(1);
        IntPolynomial::from_i64s(&c)
    })
}

fn no_small_factor(phi: &F2Poly) -> bool {
    let d = phi.degree().unwrap();
    (2u64..1 << (d / 2 + 1))
        .map(F2Poly::from_u64)
        .filter(|g| g.degree().unwrap() <= d / 2)
        .all(|g| !phi.rem(&g).is_zero())
}

proptest! {
    #[test]
    fn factorization_reconstructs(p in f2poly()) {
        // factor_f2 keeps X-free inputs only
        prop_assume!(p.bit(0));
        let f = factor_f2(&p).unwrap();
        prop_assert_eq!(f.reconstruct(), p);
        for fac in &f.factors {
            prop_assert!(no_small_factor(&fac.phi), "{} is reducible", fac.phi);
            prop_assert!(is_irreducible(&fac.phi));
        }
    }

    #[test]
    fn order_divides_group_order(p in f2poly()) {
        prop_assume!(p.bit(0));
        for phi in factor_f2(&p).unwrap().factors.into_iter().map(|f| f.phi) {
            let e = order_of_x(&phi).unwrap();
            let group = (1u64 << phi.degree().unwrap()) - 1;
            prop_assert_eq!(group % e, 0);
            prop_assert_eq!(e % 2, 1);
            // X^e = 1 and no proper divisor of e works
            prop_assert!(F2Poly::x_pow_mod(e as u128, &phi).is_one());
            for q in prime_factors(e) {
                prop_assert!(!F2Poly::x_pow_mod((e / q) as u128, &phi).is_one());
            }
        }
    }

    #[test]
    fn deg2_formula(p in odd_monic()) {
        let f = deg2_factorization(&p).unwrap();
        prop_assert_eq!(f.reconstruct(), reduce_mod2(&p));
        let top = f.factors.iter().map(|x| x.multiplicity).max().unwrap_or(0).max(f.m + 1);
        prop_assert!(1u64 << f.s >= top as u64);
        prop_assert!(f.s == 0 || (1u64 << (f.s - 1)) < top as u64);
        let lcm = f.factors.iter().fold(1u64, |a, x| num_integer::lcm(a, x.order));
        prop_assert_eq!(f.deg2, lcm << f.s);
    }

    #[test]
    fn deg2_is_reciprocal_invariant(p in odd_monic()) {
        let r = p.reciprocal().unwrap();
        prop_assert_eq!(deg2(&p).unwrap(), deg2(&r).unwrap());
    }
}
