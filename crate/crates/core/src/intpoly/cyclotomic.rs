use alloc::vec::Vec;

use super::IntPolynomial;
use crate::Error;

/// Result of dividing out every cyclotomic factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicSplit {
    /// `(n, multiplicity)` pairs, ascending `n`.
    pub cyclotomic_factors: Vec<(u64, u32)>,
    pub noncyclotomic_part: IntPolynomial,
}

impl CyclotomicSplit {
    /// Multiply the factors back together.
    pub fn reconstruct(&self) -> IntPolynomial {
        self.cyclotomic_factors
            .iter()
            .fold(self.noncyclotomic_part.clone(), |acc, &(n, m)| {
                &acc * &cyclotomic(n).pow(m)
            })
    }
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            while n % q == 0 {
                n /= q;
            }
            result -= result / q;
        }
        q += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn mobius(mut n: u64) -> i8 {
    let mut sign = 1;
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            n /= q;
            if n % q == 0 {
                return 0;
            }
            sign = -sign;
        }
        q += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// `Phi_n = prod_{d | n} (X^d - 1)^{mu(n/d)}`, evaluated by multiplying the
/// positive-exponent terms and dividing out the rest exactly.
pub fn cyclotomic(n: u64) -> IntPolynomial {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut num = IntPolynomial::one();
    let mut den = IntPolynomial::one();
    for d in (1..=n).filter(|d| n % d == 0) {
        match mobius(n / d) {
            1 => num = &num * &IntPolynomial::x_pow_minus_one(d as usize),
            -1 => den = &den * &IntPolynomial::x_pow_minus_one(d as usize),
            _ => {}
        }
    }
    num.exact_div(&den).expect("cyclotomic quotient is exact")
}

/// Divide out every `Phi_n` to full multiplicity, ascending `n`. With
/// `keep_phi1`, `Phi_1 = X - 1` is left in the noncyclotomic part.
pub fn strip_cyclotomic(p: &IntPolynomial, keep_phi1: bool) -> CyclotomicSplit {
    assert!(!p.is_zero(), "strip_cyclotomic of the zero polynomial");
    let deg = p.degree().unwrap_or(0) as u64;
    let mut rest = p.clone();
    let mut factors = Vec::new();
    // phi(n) >= sqrt(n/2), so phi(n) <= deg forces n <= 2 deg^2.
    let bound = 2 * deg * deg;
    let start = if keep_phi1 { 2 } else { 1 };
    for n in start..=bound.max(1) {
        let remaining = rest.degree().unwrap_or(0) as u64;
        if remaining == 0 {
            break;
        }
        if euler_phi(n) > remaining {
            continue;
        }
        let phi = cyclotomic(n);
        let mut mult = 0;
        loop {
            match rest.exact_div(&phi) {
                Ok(q) => {
                    rest = q;
                    mult += 1;
                }
                Err(Error::NotDivisible) => break,
                Err(e) => unreachable!("{e}"),
            }
        }
        if mult > 0 {
            factors.push((n, mult));
        }
    }
    CyclotomicSplit {
        cyclotomic_factors: factors,
        noncyclotomic_part: rest,
    }
}

pub fn is_cyclotomic_product(p: &IntPolynomial) -> bool {
    strip_cyclotomic(p, false).noncyclotomic_part.is_unit()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(4), p(&[1, 0, 1]));
        assert_eq!(cyclotomic(10), p(&[1, -1, 1, -1, 1]));
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn cyclotomic_degree_and_division_up_to_200() {
        for n in 1..=200u64 {
            let phi = cyclotomic(n);
            assert_eq!(phi.degree(), Some(euler_phi(n) as usize), "n={n}");
            assert!(IntPolynomial::x_pow_minus_one(n as usize).exact_div(&phi).is_ok());
        }
    }

    #[test]
    fn strip_examples() {
        // (x+1)^3 (x^2-x+1)(x^4-x^3+x^2-x+1)
        let p1 = "x^9+x^8+x^6+x^5+x^4+x^3+x+1".parse::<IntPolynomial>().unwrap();
        let split = strip_cyclotomic(&p1, false);
        assert_eq!(split.cyclotomic_factors, vec![(2, 3), (6, 1), (10, 1)]);
        assert_eq!(split.noncyclotomic_part, IntPolynomial::one());
        assert_eq!(split.reconstruct(), p1);
        assert!(is_cyclotomic_product(&p1));

        let p2 = "x^10+x^9+x^8+x^3+x^2+1".parse::<IntPolynomial>().unwrap();
        let split = strip_cyclotomic(&p2, false);
        assert_eq!(split.cyclotomic_factors, vec![(4, 1)]);
        assert_eq!(split.noncyclotomic_part.to_string(), "x^8+x^7-x^5+x^3+1");

        let golden = p(&[-1, -1, 1]);
        let split = strip_cyclotomic(&golden, false);
        assert!(split.cyclotomic_factors.is_empty());
        assert_eq!(split.noncyclotomic_part, golden);
    }

    #[test]
    fn keep_phi1() {
        let q = &p(&[-1, 1]) * &p(&[1, 1]);
        let split = strip_cyclotomic(&q, true);
        assert_eq!(split.cyclotomic_factors, vec![(2, 1)]);
        assert_eq!(split.noncyclotomic_part, p(&[-1, 1]));
    }

    #[test]
    fn cyclotomic_products() {
        assert!(is_cyclotomic_product(&p(&[-1, 1])));
        let t2p1 = "x^6+x^5-x^4-x^3-x^2+x+1".parse::<IntPolynomial>().unwrap();
        assert!(!is_cyclotomic_product(&t2p1));
    }
}
