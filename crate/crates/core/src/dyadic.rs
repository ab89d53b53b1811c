//! Exact dyadic rationals `m * 2^e` with directed rounding.
//!
//! Additions and products are exact; division and square roots round to a
//! requested number of significant bits in a requested direction. This is
//! the arithmetic behind the certified root disks.

use core::cmp::Ordering;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
    Nearest,
}

/// `mant * 2^exp`, with `mant` odd unless the value is zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl core::fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { mant, exp };
        d.normalize();
        d
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
    }

    pub fn zero() -> Self {
        Dyadic::default()
    }

    pub fn one() -> Self {
        Self::from_int(BigInt::one())
    }

    pub fn from_int(n: BigInt) -> Self {
        Self::new(n, 0)
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_int(BigInt::from(n))
    }

    /// Exact value of a finite float.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite float");
        if x == 0.0 {
            return Self::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1 << 52), raw_exp - 1075)
        };
        Self::new(BigInt::from(sign) * BigInt::from(m), e)
    }

    pub fn mant(&self) -> &BigInt {
        &self.mant
    }

    pub fn exp(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn sign(&self) -> Sign {
        self.mant.sign()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    /// Significant bits of the mantissa.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// `floor(log2 |x|)`, `None` for zero.
    pub fn log2_floor(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.exp + self.mant.bits() as i64 - 1)
    }

    pub fn mul_pow2(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic { mant: self.mant.clone(), exp: self.exp + k }
    }

    pub fn max(self, other: Dyadic) -> Dyadic {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: Dyadic) -> Dyadic {
        if self <= other {
            self
        } else {
            other
        }
    }

    /// Round a magnitude `mag * 2^exp`, known to lie strictly above
    /// `mag * 2^exp` when `sticky`, to `prec` bits.
    fn round_parts(sign: Sign, mag: BigUint, exp: i64, sticky: bool, prec: u32, mode: Round) -> Dyadic {
        let (mag, exp) = if sticky { ((mag << 1u8) | BigUint::one(), exp - 1) } else { (mag, exp) };
        let bits = mag.bits();
        if bits <= prec as u64 {
            return Dyadic::new(BigInt::from_biguint(sign, mag), exp);
        }
        let shift = bits - prec as u64;
        let q = &mag >> shift;
        let exact = mag.trailing_zeros().unwrap_or(0) >= shift;
        let away = match mode {
            _ if exact => false,
            Round::Nearest => mag.bit(shift - 1),
            Round::Up => sign == Sign::Plus,
            Round::Down => sign == Sign::Minus,
        };
        let q = if away { q + 1u8 } else { q };
        Dyadic::new(BigInt::from_biguint(sign, q), exp + shift as i64)
    }

    pub fn round(&self, prec: u32, mode: Round) -> Dyadic {
        if self.mant.bits() <= prec as u64 {
            return self.clone();
        }
        let (sign, mag) = self.mant.clone().into_parts();
        Self::round_parts(sign, mag, self.exp, false, prec, mode)
    }

    /// `a / b` rounded to `prec` bits.
    pub fn div(a: &Dyadic, b: &Dyadic, prec: u32, mode: Round) -> Dyadic {
        assert!(!b.is_zero(), "dyadic division by zero");
        if a.is_zero() {
            return Dyadic::zero();
        }
        let sign = if a.sign() == b.sign() { Sign::Plus } else { Sign::Minus };
        let num = a.mant.magnitude();
        let den = b.mant.magnitude();
        let k = (prec as i64 + den.bits() as i64 - num.bits() as i64 + 2).max(0);
        let scaled = num << k as u64;
        let q = &scaled / den;
        let sticky = &q * den != scaled;
        Self::round_parts(sign, q, a.exp - b.exp - k, sticky, prec, mode)
    }

    /// `sqrt(a)` rounded to `prec` bits; `a` must be nonnegative.
    pub fn sqrt(a: &Dyadic, prec: u32, mode: Round) -> Dyadic {
        assert!(!a.is_negative(), "square root of a negative dyadic");
        if a.is_zero() {
            return Dyadic::zero();
        }
        let mag = a.mant.magnitude();
        let mut t = (2 * prec as i64 + 4 - mag.bits() as i64).max(0);
        if (a.exp - t) % 2 != 0 {
            t += 1;
        }
        let scaled = mag << t as u64;
        let s = scaled.sqrt();
        let sticky = &s * &s != scaled;
        Self::round_parts(Sign::Plus, s, (a.exp - t) / 2, sticky, prec, mode)
    }

    /// Nearest-ish float; not rigorous on its own.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let mag = self.mant.magnitude();
        let bits = mag.bits() as i64;
        let (top, e) = if bits > 64 {
            ((mag >> (bits - 64) as u64).iter_u64_digits().next().unwrap_or(0), self.exp + bits - 64)
        } else {
            (mag.iter_u64_digits().next().unwrap_or(0), self.exp)
        };
        let e = e.clamp(-2000, 2000) as i32;
        let v = libm::scalbn(top as f64, e);
        if self.is_negative() {
            -v
        } else {
            v
        }
    }

    /// Smallest float not below the value.
    pub fn to_f64_up(&self) -> f64 {
        let mut x = self.to_f64();
        while Dyadic::from_f64_checked(x).is_some_and(|d| d < *self) {
            x = x.next_up();
        }
        x
    }

    /// Largest float not above the value.
    pub fn to_f64_down(&self) -> f64 {
        let mut x = self.to_f64();
        while Dyadic::from_f64_checked(x).is_some_and(|d| d > *self) {
            x = x.next_down();
        }
        x
    }

    fn from_f64_checked(x: f64) -> Option<Dyadic> {
        x.is_finite().then(|| Dyadic::from_f64(x))
    }

    /// Integer power, exact.
    pub fn powi(&self, e: u32) -> Dyadic {
        Dyadic { mant: num_traits::pow(self.mant.clone(), e as usize), exp: self.exp * e as i64 }
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.sign(), other.sign()) {
            (a, b) if a != b => {
                let rank = |s: Sign| match s {
                    Sign::Minus => 0,
                    Sign::NoSign => 1,
                    Sign::Plus => 2,
                };
                rank(a).cmp(&rank(b))
            }
            _ => {
                let e = self.exp.min(other.exp);
                let a = &self.mant << (self.exp - e) as u64;
                let b = &other.mant << (other.exp - e) as u64;
                a.cmp(&b)
            }
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &rhs.mant << (rhs.exp - e) as u64;
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() || rhs.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { mant: &self.mant * &rhs.mant, exp: self.exp + rhs.exp }
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        -&self
    }
}

/// Complex number with exact dyadic parts.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct DComplex {
    pub re: Dyadic,
    pub im: Dyadic,
}

impl DComplex {
    pub fn new(re: Dyadic, im: Dyadic) -> Self {
        DComplex { re, im }
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        DComplex::new(Dyadic::from_f64(re), Dyadic::from_f64(im))
    }

    pub fn real(re: Dyadic) -> Self {
        DComplex::new(re, Dyadic::zero())
    }

    pub fn zero() -> Self {
        DComplex::default()
    }

    pub fn one() -> Self {
        DComplex::real(Dyadic::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &DComplex) -> DComplex {
        DComplex::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &DComplex) -> DComplex {
        DComplex::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &DComplex) -> DComplex {
        DComplex::new(
            &(&self.re * &o.re) - &(&self.im * &o.im),
            &(&self.re * &o.im) + &(&self.im * &o.re),
        )
    }

    pub fn scale(&self, k: &Dyadic) -> DComplex {
        DComplex::new(&self.re * k, &self.im * k)
    }

    pub fn conj(&self) -> DComplex {
        DComplex::new(self.re.clone(), -&self.im)
    }

    /// `|z|^2`, exact.
    pub fn norm_sqr(&self) -> Dyadic {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn round(&self, prec: u32) -> DComplex {
        DComplex::new(self.re.round(prec, Round::Nearest), self.im.round(prec, Round::Nearest))
    }

    /// Approximate quotient to `prec` bits (not rigorous).
    pub fn div_approx(&self, o: &DComplex, prec: u32) -> DComplex {
        let n = self.mul(&o.conj());
        let d = o.norm_sqr();
        DComplex::new(
            Dyadic::div(&n.re, &d, prec, Round::Nearest),
            Dyadic::div(&n.im, &d, prec, Round::Nearest),
        )
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(x: f64) -> Dyadic {
        Dyadic::from_f64(x)
    }

    #[test]
    fn exact_roundtrip_and_ordering() {
        for x in [0.0, 1.0, -2.5, 1e-300, 3.75e200, f64::MIN_POSITIVE / 8.0] {
            assert_eq!(d(x).to_f64(), x);
        }
        assert!(d(1.5) > d(1.25));
        assert!(d(-1.5) < d(-1.25));
        assert!(d(-1.0) < Dyadic::zero());
        assert_eq!(&d(0.75) + &d(0.25), Dyadic::one());
        assert_eq!(&d(1.5) * &d(-2.0), d(-3.0));
    }

    #[test]
    fn directed_division() {
        let third_dn = Dyadic::div(&Dyadic::one(), &d(3.0), 60, Round::Down);
        let third_up = Dyadic::div(&Dyadic::one(), &d(3.0), 60, Round::Up);
        assert!(third_dn < third_up);
        assert!(&third_dn * &d(3.0) < Dyadic::one());
        assert!(&third_up * &d(3.0) > Dyadic::one());
        let neg = Dyadic::div(&d(-1.0), &d(3.0), 60, Round::Down);
        assert!(&neg * &d(3.0) < d(-1.0));
        assert_eq!(Dyadic::div(&d(6.0), &d(4.0), 10, Round::Up), d(1.5));
    }

    #[test]
    fn directed_sqrt() {
        let two = d(2.0);
        let lo = Dyadic::sqrt(&two, 80, Round::Down);
        let hi = Dyadic::sqrt(&two, 80, Round::Up);
        assert!(&lo * &lo < two && &hi * &hi > two);
        assert_eq!(Dyadic::sqrt(&d(2.25), 20, Round::Up), d(1.5));
        assert_eq!(Dyadic::sqrt(&d(0.25), 20, Round::Down), d(0.5));
    }

    #[test]
    fn float_bounds() {
        let third = Dyadic::div(&Dyadic::one(), &d(3.0), 200, Round::Nearest);
        let (lo, hi) = (third.to_f64_down(), third.to_f64_up());
        assert!(d(lo) <= third && third <= d(hi));
        assert!(hi.next_down() <= lo);
    }
}
