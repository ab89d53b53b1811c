//! Multiplicative order of `X` modulo an irreducible polynomial.

use alloc::vec::Vec;

use super::F2Poly;
use crate::{Error, Result};

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    for c in 1.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!()
}

/// Distinct prime factors, ascending.
pub fn prime_factors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut stack = alloc::vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            out.push(m);
            continue;
        }
        // small factors first keeps rho on hard composites only
        if let Some(p) = (2..1000).find(|p| m % p == 0) {
            stack.push(p);
            stack.push(m / p);
            continue;
        }
        let d = pollard_rho(m);
        stack.push(d);
        stack.push(m / d);
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// `X^(2^k) mod m`.
fn frobenius_power(k: usize, m: &F2Poly) -> F2Poly {
    (0..k).fold(F2Poly::x().rem(m), |acc, _| acc.square().rem(m))
}

/// Rabin's test: `X^(2^d) = X` and `gcd(X^(2^(d/q)) - X, phi) = 1` for
/// every prime `q | d`.
pub fn is_irreducible(phi: &F2Poly) -> bool {
    let Some(d) = phi.degree() else {
        return false;
    };
    if d == 0 {
        return false;
    }
    let x = F2Poly::x().rem(phi);
    if frobenius_power(d, phi) != x {
        return false;
    }
    prime_factors(d as u64).into_iter().all(|q| {
        let h = frobenius_power(d / q as usize, phi).add(&x);
        phi.gcd(&h).degree() == Some(0)
    })
}

/// The least `e > 0` with `phi | X^e + 1`. Starts from `2^deg - 1` and
/// strips prime factors while `X^(e/q) = 1` still holds.
pub fn order_of_x(phi: &F2Poly) -> Result<u64> {
    let d = phi.degree().ok_or(Error::NotIrreducible)?;
    if d < 2 || !phi.bit(0) {
        return Err(Error::NotIrreducible);
    }
    if d > 64 {
        return Err(Error::TooLarge("order of X needs deg phi <= 64"));
    }
    if !is_irreducible(phi) {
        return Err(Error::NotIrreducible);
    }
    let full = if d == 64 { u64::MAX } else { (1u64 << d) - 1 };
    let mut e = full;
    for q in prime_factors(full) {
        while e % q == 0 && F2Poly::x_pow_mod((e / q) as u128, phi).is_one() {
            e /= q;
        }
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_of_mersenne_numbers() {
        assert_eq!(prime_factors((1 << 15) - 1), [7, 31, 151]);
        assert_eq!(prime_factors((1 << 12) - 1), [3, 5, 7, 13]);
        assert_eq!(prime_factors((1 << 31) - 1), [2147483647]);
        assert_eq!(prime_factors(u64::MAX), [3, 5, 17, 257, 641, 65537, 6700417]);
    }

    /// Least `e` with `phi | X^e + 1` by trial division of `X^e + 1`.
    fn order_by_trial(phi: &F2Poly) -> u64 {
        (1..).find(|&e| F2Poly::monomial(e as usize).add(&F2Poly::one()).rem(phi).is_zero()).unwrap()
    }

    #[test]
    fn known_orders() {
        assert_eq!(order_of_x(&F2Poly::from_u64(0b111)).unwrap(), 3);
        assert_eq!(order_of_x(&F2Poly::from_u64(0b1011)).unwrap(), 7);
        assert_eq!(order_of_x(&F2Poly::from_u64(0b11111)).unwrap(), 5);
        for bits in [0b111u64, 0b1011, 0b11111, 0b10011, 0b1001001, 0b100011011] {
            let phi = F2Poly::from_u64(bits);
            if let Ok(e) = order_of_x(&phi) {
                assert_eq!(e, order_by_trial(&phi), "{phi}");
            }
        }
    }

    #[test]
    fn reducible_rejected() {
        // x^4+x^2+1 = (x^2+x+1)^2
        assert_eq!(order_of_x(&F2Poly::from_u64(0b10101)), Err(Error::NotIrreducible));
        assert_eq!(order_of_x(&F2Poly::from_u64(0b11)), Err(Error::NotIrreducible));
        // (x^3+x+1)(x^3+x^2+1): X^63 = 1 holds but the product is reducible
        let p = F2Poly::from_u64(0b1011).mul(&F2Poly::from_u64(0b1101));
        assert!(F2Poly::x_pow_mod(63, &p).is_one());
        assert_eq!(order_of_x(&p), Err(Error::NotIrreducible));
    }
}
