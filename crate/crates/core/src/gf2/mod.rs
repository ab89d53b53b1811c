//! Factorization over `F_2` and the `deg2` invariant.
//!
//! For `p` in `F_2[X]` with `p(0) = 1`, write
//! `p = (X+1)^m * prod phi_j^{m_j}` with `phi_j` irreducible of degree at
//! least 2, and let `e_j` be the order of `X` modulo `phi_j`. With `s` the
//! least nonnegative integer such that `2^s >= max(m+1, m_1, ..., m_r)`,
//! `deg2 p = 2^s * lcm(e_1, ..., e_r)`. Every Littlewood multiple of an
//! integer polynomial `P` has degree `k * deg2(P mod 2) - 1` for some
//! `k >= 1`.

mod order;
mod poly;

use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::Zero;

pub use order::{is_irreducible, order_of_x, prime_factors};
pub use poly::F2Poly;

use crate::{Error, IntPolynomial, Result};

/// One irreducible factor of degree at least 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F2Factor {
    pub phi: F2Poly,
    pub multiplicity: u32,
    /// Order of `X` modulo `phi`, always odd.
    pub order: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F2Factorization {
    /// Multiplicity of `X + 1`.
    pub m: u32,
    /// Sorted by degree, then by bit pattern.
    pub factors: Vec<F2Factor>,
    pub s: u32,
    pub deg2: u64,
}

impl F2Factorization {
    pub fn reconstruct(&self) -> F2Poly {
        let base = F2Poly::from_u64(0b11).pow(self.m);
        self.factors
            .iter()
            .fold(base, |acc, f| acc.mul(&f.phi.pow(f.multiplicity)))
    }
}

pub fn reduce_mod2(p: &IntPolynomial) -> F2Poly {
    let mut limbs = alloc::vec![0u64; p.coeffs().len().div_ceil(64)];
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_odd() {
            limbs[k / 64] |= 1 << (k % 64);
        }
    }
    F2Poly::from_limbs(limbs)
}

/// Squarefree factorization: `(f, i)` with `f` squarefree and pairwise
/// coprime, product of `f^i` equal to the input.
fn squarefree_factors(f: &F2Poly) -> Vec<(F2Poly, u32)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.exact_div(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.exact_div(&y).expect("gcd divides");
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.exact_div(&w).expect("gcd divides");
        i += 1;
    }
    if !c.is_one() {
        for (g, j) in squarefree_factors(&c.sqrt_of_square()) {
            out.push((g, 2 * j));
        }
    }
    out
}

/// Distinct-degree factorization of a squarefree polynomial without linear
/// factors: `(g, d)` with `g` the product of all irreducible factors of
/// degree `d`.
fn distinct_degree(f: &F2Poly) -> Vec<(F2Poly, usize)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = F2Poly::x().rem(&rest);
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.square().rem(&rest);
        let g = rest.gcd(&h.add(&F2Poly::x()));
        if !g.is_one() {
            rest = rest.exact_div(&g).expect("gcd divides");
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(dr) = rest.degree().filter(|&dr| dr > 0) {
        out.push((rest, dr));
    }
    out
}

/// Equal-degree splitting in characteristic 2 using the trace map
/// `a + a^2 + ... + a^(2^(d-1))`, with the test elements `a` enumerated
/// deterministically.
fn equal_degree(g: &F2Poly, d: usize, out: &mut Vec<F2Poly>) {
    let n = g.degree().unwrap_or(0);
    if n == d {
        out.push(g.clone());
        return;
    }
    let mut seed = 2u64;
    loop {
        let a = F2Poly::from_limbs(alloc::vec![seed]).rem(g);
        seed += 1;
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut t = a.clone();
        let mut acc = a;
        for _ in 1..d {
            t = t.square().rem(g);
            acc = acc.add(&t);
        }
        let h = g.gcd(&acc);
        let dh = h.degree().unwrap_or(0);
        if dh > 0 && dh < n {
            let other = g.exact_div(&h).expect("gcd divides");
            equal_degree(&h, d, out);
            equal_degree(&other, d, out);
            return;
        }
    }
}

/// Complete factorization of `p` over `F_2`; `s` and `deg2` are left at
/// zero.
pub fn factor_f2(p: &F2Poly) -> Result<F2Factorization> {
    if !p.bit(0) {
        return Err(Error::EvenConstantTerm);
    }
    let x_plus_1 = F2Poly::from_u64(0b11);
    let mut rest = p.clone();
    let mut m = 0;
    while rest.degree().unwrap_or(0) > 0 && !rest.eval_one() {
        rest = rest.exact_div(&x_plus_1).expect("root at 1");
        m += 1;
    }
    let mut factors = Vec::new();
    for (sf, mult) in squarefree_factors(&rest) {
        for (g, d) in distinct_degree(&sf) {
            let mut irreducibles = Vec::new();
            equal_degree(&g, d, &mut irreducibles);
            for phi in irreducibles {
                let order = order_of_x(&phi)?;
                factors.push(F2Factor { phi, multiplicity: mult, order });
            }
        }
    }
    factors.sort_by(|a, b| (a.phi.degree(), &a.phi).cmp(&(b.phi.degree(), &b.phi)));
    Ok(F2Factorization { m, factors, s: 0, deg2: 0 })
}

/// Full factorization of `P mod 2` with `s` and `deg2` populated.
pub fn deg2_factorization(p: &IntPolynomial) -> Result<F2Factorization> {
    if p.degree().unwrap_or(0) == 0 {
        return Err(Error::TooLarge("deg2 needs a nonconstant polynomial"));
    }
    if p.constant_term().is_zero() || p.constant_term().is_even() {
        return Err(Error::EvenConstantTerm);
    }
    let reduced = reduce_mod2(p);
    if reduced.degree().unwrap_or(0) == 0 {
        // every non-constant coefficient even
        return Err(Error::TooLarge("deg2 needs a nonconstant reduction mod 2"));
    }
    let mut fac = factor_f2(&reduced)?;
    let max_mult = fac
        .factors
        .iter()
        .map(|f| f.multiplicity)
        .chain([fac.m + 1])
        .max()
        .unwrap_or(1);
    let mut s = 0;
    while (1u64 << s) < max_mult as u64 {
        s += 1;
    }
    let lcm = fac
        .factors
        .iter()
        .try_fold(1u64, |acc, f| {
            let g = acc.gcd(&f.order);
            (acc / g).checked_mul(f.order)
        })
        .ok_or(Error::TooLarge("deg2 overflows u64"))?;
    fac.s = s;
    fac.deg2 = lcm
        .checked_mul(1 << s)
        .ok_or(Error::TooLarge("deg2 overflows u64"))?;
    Ok(fac)
}

pub fn deg2(p: &IntPolynomial) -> Result<u64> {
    deg2_factorization(p).map(|f| f.deg2)
}

/// Smallest degree a Littlewood multiple of `p` can have.
pub fn minimal_littlewood_degree(p: &IntPolynomial) -> Result<u64> {
    Ok(deg2(p)? - 1)
}

/// Whether a Littlewood multiple of degree `n` is possible: `n = -1 mod
/// deg2`.
pub fn admissible_littlewood_degree(p: &IntPolynomial, n: u64) -> Result<bool> {
    let d = deg2(p)?;
    Ok((n + 1) % d == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn reduction() {
        assert_eq!(reduce_mod2(&ip("x^5-x^3+x-1")), F2Poly::from_u64(0b101011));
        assert_eq!(reduce_mod2(&ip("x^4+x+1")), F2Poly::from_u64(0b10011));
        assert_eq!(reduce_mod2(&ip("2x^3+x")), F2Poly::x());
    }

    #[test]
    fn small_factorizations() {
        let f = factor_f2(&F2Poly::from_u64(0b111)).unwrap();
        assert_eq!(f.m, 0);
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.factors[0].order, 3);

        // x^3+1 = (x+1)(x^2+x+1)
        let f = factor_f2(&F2Poly::from_u64(0b1001)).unwrap();
        assert_eq!(f.m, 1);
        assert_eq!(f.factors[0].phi, F2Poly::from_u64(0b111));

        let f = factor_f2(&F2Poly::from_u64(0b101)).unwrap();
        assert_eq!((f.m, f.factors.len()), (2, 0));

        assert_eq!(factor_f2(&F2Poly::from_u64(0b110)), Err(Error::EvenConstantTerm));
    }

    #[test]
    fn repeated_and_mixed_factors() {
        // (x^2+x+1)^3 (x^3+x+1) (x^3+x^2+1)^2 (x+1)^5
        let p = F2Poly::from_u64(0b111)
            .pow(3)
            .mul(&F2Poly::from_u64(0b1011))
            .mul(&F2Poly::from_u64(0b1101).pow(2))
            .mul(&F2Poly::from_u64(0b11).pow(5));
        let f = factor_f2(&p).unwrap();
        assert_eq!(f.m, 5);
        assert_eq!(f.reconstruct(), p);
        let mults: Vec<_> = f.factors.iter().map(|x| (x.phi.low_u64(), x.multiplicity)).collect();
        assert_eq!(mults, [(0b111, 3), (0b1011, 1), (0b1101, 2)]);
    }

    #[test]
    fn deg2_values() {
        assert_eq!(deg2(&ip("x^15+x^8+x^6+1")).unwrap(), 32766);
        assert_eq!(deg2(&ip("x^10+x^9+x^8+x^3+x^2+1")).unwrap(), 1020);
        assert_eq!(deg2(&ip("x-1")).unwrap(), 2);
        assert_eq!(minimal_littlewood_degree(&ip("x^15+x^12+x^10+1")).unwrap(), 32765);
        assert_eq!(minimal_littlewood_degree(&ip("x^15+x^14+x^10+1")).unwrap(), 10921);
        assert_eq!(minimal_littlewood_degree(&ip("x^15+x^12+x^4+1")).unwrap(), 31681);
        // x^2-x-1 is its own Littlewood multiple, so s must be allowed to be 0
        assert_eq!(deg2(&ip("x^2-x-1")).unwrap(), 3);
        assert_eq!(deg2(&ip("2x^2+1")), Err(Error::TooLarge("deg2 needs a nonconstant reduction mod 2")));
        assert_eq!(deg2(&ip("x^2+2")), Err(Error::EvenConstantTerm));
    }

    #[test]
    fn admissible_degrees() {
        assert!(admissible_littlewood_degree(&ip("x^12+x^11+x^10+1"), 1189).unwrap());
        assert!(!admissible_littlewood_degree(&ip("x-1"), 2).unwrap());
        assert!(admissible_littlewood_degree(&ip("x-1"), 1).unwrap());
    }
}
