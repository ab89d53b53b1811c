//! Dense polynomials in `Z[X]` with unbounded coefficients.

mod cyclotomic;
mod gcd;
mod parse;
mod sturm;

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub use cyclotomic::{cyclotomic, euler_phi, is_cyclotomic_product, strip_cyclotomic, CyclotomicSplit};
pub use sturm::{count_positive_real_roots, has_positive_real_root};

/// Dense integer polynomial, coefficients in ascending exponent order.
///
/// The zero polynomial has no coefficients; otherwise the last coefficient
/// is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

/// Coefficient family of a polynomial, most specific first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PolynomialFamily {
    Newman,
    Littlewood,
    Borwein,
    Other,
}

impl PolynomialFamily {
    pub fn as_str(self) -> &'static str {
        match self {
            PolynomialFamily::Newman => "newman",
            PolynomialFamily::Littlewood => "littlewood",
            PolynomialFamily::Borwein => "borwein",
            PolynomialFamily::Other => "other",
        }
    }
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `X^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        IntPolynomial { coeffs }
    }

    /// `X^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[n] += BigInt::one();
        Self::new(coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `X^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// True for a nonzero constant `c` with `|c| = 1`.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].abs().is_one()
    }

    /// Coefficients as `i64`, `None` if any does not fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| i64::try_from(c).ok()).collect()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Multiply by `X^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// gcd of the coefficients, nonnegative; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divide by the content and make the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Exact quotient `p / q` in `Z[X]`.
    pub fn exact_div(&self, q: &IntPolynomial) -> Result<IntPolynomial> {
        let (quot, rem) = self.div_rem_exact_lc(q)?;
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(Error::NotDivisible)
        }
    }

    /// Long division in which every leading-coefficient quotient must be
    /// exact. Fails with `NotDivisible` as soon as it is not.
    fn div_rem_exact_lc(&self, q: &IntPolynomial) -> Result<(IntPolynomial, IntPolynomial)> {
        let dq = q.degree().ok_or(Error::ZeroDivisor)?;
        let Some(dp) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if dp < dq {
            return Ok((Self::zero(), self.clone()));
        }
        let lc = &q.coeffs[dq];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); dp - dq + 1];
        for i in (0..=dp - dq).rev() {
            let top = &rem[i + dq];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lc);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            for (j, qc) in q.coeffs.iter().enumerate() {
                rem[i + j] -= &c * qc;
            }
            quot[i] = c;
        }
        rem.truncate(dq);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Remainder modulo a monic polynomial.
    pub fn rem_monic(&self, m: &IntPolynomial) -> Result<IntPolynomial> {
        if !m.is_monic() {
            return Err(Error::NonMonicModulus);
        }
        self.div_rem_exact_lc(m).map(|(_, r)| r)
    }

    /// `lc(q)^(deg p - deg q + 1) * p mod q`.
    pub fn pseudo_rem(&self, q: &IntPolynomial) -> Result<IntPolynomial> {
        let dq = q.degree().ok_or(Error::ZeroDivisor)?;
        let Some(dp) = self.degree() else {
            return Ok(Self::zero());
        };
        if dp < dq {
            return Ok(self.clone());
        }
        let lc = &q.coeffs[dq];
        let mut rem = self.coeffs.clone();
        for i in (0..=dp - dq).rev() {
            let top = rem[i + dq].clone();
            for c in rem.iter_mut() {
                *c *= lc;
            }
            for (j, qc) in q.coeffs.iter().enumerate() {
                rem[i + j] -= &top * qc;
            }
        }
        rem.truncate(dq);
        Ok(Self::new(rem))
    }

    /// `X^d P(1/X)`: the coefficient sequence reversed.
    pub fn reciprocal(&self) -> Result<IntPolynomial> {
        if self.constant_term().is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Ok(IntPolynomial { coeffs })
    }

    pub fn classify_family(&self) -> PolynomialFamily {
        if self.is_zero() {
            return PolynomialFamily::Other;
        }
        let one = BigInt::one();
        let minus_one = -BigInt::one();
        let all = |pred: &dyn Fn(&BigInt) -> bool| self.coeffs.iter().all(pred);
        if all(&|c| c.is_zero() || c.is_one()) && self.coeffs[0].is_one() {
            PolynomialFamily::Newman
        } else if all(&|c| *c == one || *c == minus_one) {
            PolynomialFamily::Littlewood
        } else if all(&|c| c.abs() <= one) && !self.coeffs[0].is_zero() {
            PolynomialFamily::Borwein
        } else {
            PolynomialFamily::Other
        }
    }

    pub fn pow(&self, e: u32) -> IntPolynomial {
        let mut acc = IntPolynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn gcd(&self, other: &IntPolynomial) -> IntPolynomial {
        gcd::gcd(self, other)
    }

    /// Yun's algorithm: pairwise coprime squarefree factors with their
    /// multiplicities, ascending multiplicity. The product equals the
    /// primitive part of `self` up to sign.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPolynomial, u32)> {
        gcd::squarefree_decomposition(self)
    }

    /// Product of the distinct irreducible factors, primitive.
    pub fn squarefree_part(&self) -> IntPolynomial {
        self.squarefree_decomposition()
            .into_iter()
            .fold(IntPolynomial::one(), |acc, (f, _)| &acc * &f)
    }
}

fn add_coeffs(a: &[BigInt], b: &[BigInt], sign: i8) -> IntPolynomial {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let x = a.get(k).cloned().unwrap_or_default();
        let y = b.get(k);
        out.push(match (y, sign) {
            (None, _) => x,
            (Some(y), 1) => x + y,
            (Some(y), _) => x - y,
        });
    }
    IntPolynomial::new(out)
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        add_coeffs(&self.coeffs, &rhs.coeffs, 1)
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        add_coeffs(&self.coeffs, &rhs.coeffs, -1)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn ring_ops() {
        assert_eq!(&p(&[1, 1]) * &p(&[-1, 1]), p(&[-1, 0, 1]));
        assert_eq!(p(&[-1, 1, 0, -1, 0, 1]).derivative(), p(&[1, 0, -3, 0, 5]));
        let s = &p(&[1, 0, 1]) + &p(&[0, 0, -1]);
        assert_eq!(s, p(&[1]));
        assert_eq!(s.degree(), Some(0));
        assert!((&p(&[1, 2]) - &p(&[1, 2])).is_zero());
    }

    #[test]
    fn exact_division() {
        assert_eq!(p(&[-1, 0, 1]).exact_div(&p(&[-1, 1])).unwrap(), p(&[1, 1]));
        assert_eq!(p(&[1, 0, 1]).exact_div(&p(&[-1, 1])), Err(Error::NotDivisible));
        assert_eq!(p(&[1]).exact_div(&IntPolynomial::zero()), Err(Error::ZeroDivisor));
        // x^10+x^9+x^8+x^3+x^2+1 = (x^2+1)(x^8+x^7-x^5+x^3+1)
        let big = p(&[1, 0, 1, 1, 0, 0, 0, 0, 1, 1, 1]);
        assert_eq!(big.exact_div(&p(&[1, 0, 1])).unwrap(), p(&[1, 0, 0, 1, 0, -1, 0, 1, 1]));
        // non-monic divisor whose leading coefficient does not divide
        assert_eq!(p(&[1, 1]).exact_div(&p(&[1, 2])), Err(Error::NotDivisible));
        assert_eq!(p(&[2, 6, 4]).exact_div(&p(&[1, 2])).unwrap(), p(&[2, 2]));
    }

    #[test]
    fn reciprocal_reverses() {
        assert_eq!(p(&[1, 1, 0, 0, 1]).reciprocal().unwrap(), p(&[1, 0, 0, 1, 1]));
        assert_eq!(p(&[1, 1, 1]).reciprocal().unwrap(), p(&[1, 1, 1]));
        let q = "x^15+x^14+x^10+1".parse::<IntPolynomial>().unwrap();
        assert_eq!(q.reciprocal().unwrap().to_string(), "x^15+x^5+x+1");
        assert_eq!(p(&[0, 1]).reciprocal(), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn families() {
        assert_eq!(p(&[1, 1, 0, 0, 1]).classify_family(), PolynomialFamily::Newman);
        assert_eq!(p(&[-1, -1, -1, 1, 1]).classify_family(), PolynomialFamily::Littlewood);
        assert_eq!(p(&[-1, 1, 0, -1, 0, 1]).classify_family(), PolynomialFamily::Borwein);
        assert_eq!(p(&[0, 1, 1]).classify_family(), PolynomialFamily::Other);
        assert_eq!(p(&[1, 2]).classify_family(), PolynomialFamily::Other);
    }

    #[test]
    fn pseudo_remainder() {
        // 4*(x^2+1) mod (2x+1) = 5
        assert_eq!(p(&[1, 0, 1]).pseudo_rem(&p(&[1, 2])).unwrap(), p(&[5]));
    }

    #[test]
    fn primitive_and_content() {
        let q = p(&[4, -6, -2]);
        assert_eq!(q.content(), BigInt::from(2));
        assert_eq!(q.primitive_part(), p(&[-2, 3, 1]));
    }
}
