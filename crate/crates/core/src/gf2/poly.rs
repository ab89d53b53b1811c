use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Polynomial over `F_2`, bit `k` is the coefficient of `X^k`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct F2Poly {
    limbs: Vec<u64>,
}

impl F2Poly {
    pub fn zero() -> Self {
        F2Poly { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_u64(1)
    }

    /// `X`.
    pub fn x() -> Self {
        Self::from_u64(2)
    }

    pub fn from_u64(bits: u64) -> Self {
        let mut p = F2Poly { limbs: vec![bits] };
        p.normalize();
        p
    }

    pub fn from_limbs(limbs: Vec<u64>) -> Self {
        let mut p = F2Poly { limbs };
        p.normalize();
        p
    }

    pub fn monomial(k: usize) -> Self {
        let mut p = F2Poly::zero();
        p.set_bit(k, true);
        p
    }

    fn normalize(&mut self) {
        while self.limbs.last() == Some(&0) {
            self.limbs.pop();
        }
    }

    pub fn limbs(&self) -> &[u64] {
        &self.limbs
    }

    /// Low 64 bits (the whole polynomial when the degree is below 64).
    pub fn low_u64(&self) -> u64 {
        self.limbs.first().copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.limbs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        let top = *self.limbs.last()?;
        Some((self.limbs.len() - 1) * 64 + 63 - top.leading_zeros() as usize)
    }

    pub fn bit(&self, k: usize) -> bool {
        self.limbs
            .get(k / 64)
            .is_some_and(|l| (l >> (k % 64)) & 1 == 1)
    }

    pub fn set_bit(&mut self, k: usize, on: bool) {
        if self.limbs.len() <= k / 64 {
            self.limbs.resize(k / 64 + 1, 0);
        }
        if on {
            self.limbs[k / 64] |= 1 << (k % 64);
        } else {
            self.limbs[k / 64] &= !(1 << (k % 64));
        }
        self.normalize();
    }

    /// Value at `X = 1`.
    pub fn eval_one(&self) -> bool {
        self.limbs.iter().map(|l| l.count_ones()).sum::<u32>() % 2 == 1
    }

    pub fn add(&self, other: &F2Poly) -> F2Poly {
        let n = self.limbs.len().max(other.limbs.len());
        let limbs = (0..n)
            .map(|i| self.limbs.get(i).unwrap_or(&0) ^ other.limbs.get(i).unwrap_or(&0))
            .collect();
        F2Poly::from_limbs(limbs)
    }

    fn xor_shifted(&mut self, other: &F2Poly, shift: usize) {
        let (ls, bs) = (shift / 64, shift % 64);
        let need = other.limbs.len() + ls + 1;
        if self.limbs.len() < need {
            self.limbs.resize(need, 0);
        }
        for (i, &l) in other.limbs.iter().enumerate() {
            self.limbs[i + ls] ^= l << bs;
            if bs != 0 {
                self.limbs[i + ls + 1] ^= l >> (64 - bs);
            }
        }
        self.normalize();
    }

    pub fn mul(&self, other: &F2Poly) -> F2Poly {
        let mut out = F2Poly::zero();
        let Some(d) = other.degree() else {
            return out;
        };
        for k in 0..=d {
            if other.bit(k) {
                out.xor_shifted(self, k);
            }
        }
        out
    }

    pub fn square(&self) -> F2Poly {
        let mut out = F2Poly::zero();
        if let Some(d) = self.degree() {
            for k in (0..=d).filter(|&k| self.bit(k)) {
                out.set_bit(2 * k, true);
            }
        }
        out
    }

    /// Square root of a polynomial with only even exponents.
    pub fn sqrt_of_square(&self) -> F2Poly {
        let mut out = F2Poly::zero();
        if let Some(d) = self.degree() {
            for k in (0..=d).filter(|&k| self.bit(k)) {
                debug_assert!(k % 2 == 0, "not a square");
                out.set_bit(k / 2, true);
            }
        }
        out
    }

    pub fn derivative(&self) -> F2Poly {
        let mut out = F2Poly::zero();
        if let Some(d) = self.degree() {
            for k in (1..=d).step_by(2).filter(|&k| self.bit(k)) {
                out.set_bit(k - 1, true);
            }
        }
        out
    }

    pub fn div_rem(&self, m: &F2Poly) -> (F2Poly, F2Poly) {
        let dm = m.degree().expect("division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = F2Poly::zero();
        while let Some(dr) = rem.degree() {
            if dr < dm {
                break;
            }
            quot.set_bit(dr - dm, true);
            rem.xor_shifted(m, dr - dm);
        }
        (quot, rem)
    }

    pub fn rem(&self, m: &F2Poly) -> F2Poly {
        self.div_rem(m).1
    }

    pub fn exact_div(&self, m: &F2Poly) -> Option<F2Poly> {
        let (q, r) = self.div_rem(m);
        r.is_zero().then_some(q)
    }

    pub fn gcd(&self, other: &F2Poly) -> F2Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    pub fn mul_mod(&self, other: &F2Poly, m: &F2Poly) -> F2Poly {
        self.mul(other).rem(m)
    }

    /// `X^e mod m` by square-and-multiply.
    pub fn x_pow_mod(e: u128, m: &F2Poly) -> F2Poly {
        let mut result = F2Poly::one().rem(m);
        let base = F2Poly::x().rem(m);
        for i in (0..128 - e.leading_zeros()).rev() {
            result = result.square().rem(m);
            if (e >> i) & 1 == 1 {
                result = result.mul_mod(&base, m);
            }
        }
        result
    }

    pub fn pow(&self, e: u32) -> F2Poly {
        (0..e).fold(F2Poly::one(), |acc, _| acc.mul(self))
    }
}

impl fmt::Display for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(d) = self.degree() else {
            return f.write_str("0");
        };
        let mut first = true;
        for k in (0..=d).rev().filter(|&k| self.bit(k)) {
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match k {
                0 => f.write_str("1")?,
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
