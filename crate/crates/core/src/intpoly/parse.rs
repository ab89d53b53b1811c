//! Text formats.
//!
//! Dense: comma-separated integers in ascending exponent order,
//! `1,1,0,0,0,0,1,0,0,0,0,0,1` is `x^12+x^6+x+1`.
//!
//! Sparse: `term (± term)*` with `term = [coeff][x[^exp]]`, e.g.
//! `x^15+x^12+x^10+1`. Display always produces the sparse form with
//! descending exponents.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::IntPolynomial;
use crate::Error;

impl FromStr for IntPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let compact: alloc::string::String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if compact.contains(['x', 'X']) {
            parse_sparse(&compact)
        } else {
            parse_dense(&compact)
        }
    }
}

fn parse_dense(s: &str) -> Result<IntPolynomial, Error> {
    let coeffs = s
        .split(',')
        .map(|t| {
            t.parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("bad coefficient `{t}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IntPolynomial::new(coeffs))
}

fn parse_sparse(s: &str) -> Result<IntPolynomial, Error> {
    let bytes = s.as_bytes();
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut i = 0;
    let digits = |i: &mut usize| {
        let start = *i;
        while *i < bytes.len() && bytes[*i].is_ascii_digit() {
            *i += 1;
        }
        &s[start..*i]
    };
    let mut first = true;
    while i < bytes.len() {
        let mut neg = false;
        match bytes[i] {
            b'+' => i += 1,
            b'-' => {
                neg = true;
                i += 1;
            }
            _ if first => {}
            c => return Err(Error::Parse(format!("expected sign, found `{}`", c as char))),
        }
        first = false;
        let c_text = digits(&mut i);
        let has_coeff = !c_text.is_empty();
        let mut coeff = if has_coeff {
            c_text.parse::<BigInt>().expect("digits")
        } else {
            BigInt::one()
        };
        if has_coeff && i < bytes.len() && bytes[i] == b'*' {
            i += 1;
        }
        let exp = if i < bytes.len() && (bytes[i] == b'x' || bytes[i] == b'X') {
            i += 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let e = digits(&mut i);
                e.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad exponent near byte {i}")))?
            } else {
                1
            }
        } else if has_coeff {
            0
        } else {
            return Err(Error::Parse(format!("empty term near byte {i}")));
        };
        if exp > 1 << 24 {
            return Err(Error::Parse("exponent too large".into()));
        }
        if neg {
            coeff = -coeff;
        }
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, BigInt::zero());
        }
        coeffs[exp] += coeff;
    }
    Ok(IntPolynomial::new(coeffs))
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            if k == 0 || !mag.is_one() {
                f.write_str(&mag.to_string())?;
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl IntPolynomial {
    /// Dense text form, ascending exponents.
    pub fn to_dense_string(&self) -> alloc::string::String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<_> = self.coeffs.iter().map(ToString::to_string).collect();
        parts.join(",")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_and_sparse_agree() {
        let a: IntPolynomial = "1,1,0,0,0,0,1,0,0,0,0,0,1".parse().unwrap();
        let b: IntPolynomial = "x^12+x^6+x+1".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "x^12+x^6+x+1");
        assert_eq!(a.to_dense_string(), "1,1,0,0,0,0,1,0,0,0,0,0,1");
    }

    #[test]
    fn sparse_forms() {
        let p: IntPolynomial = "x^2 - x - 1".parse().unwrap();
        assert_eq!(p, IntPolynomial::from_i64s(&[-1, -1, 1]));
        let p: IntPolynomial = "-x^3+2x+3*x^2-7".parse().unwrap();
        assert_eq!(p, IntPolynomial::from_i64s(&[-7, 2, 3, -1]));
        assert_eq!(p.to_string(), "-x^3+3x^2+2x-7");
        let p: IntPolynomial = "x+x".parse().unwrap();
        assert_eq!(p.to_string(), "2x");
        assert_eq!("5".parse::<IntPolynomial>().unwrap().to_string(), "5");
        assert_eq!("x-x".parse::<IntPolynomial>().unwrap().to_string(), "0");
    }

    #[test]
    fn rejects_garbage() {
        assert!("".parse::<IntPolynomial>().is_err());
        assert!("x^".parse::<IntPolynomial>().is_err());
        assert!("x^2+".parse::<IntPolynomial>().is_err());
        assert!("1,,2".parse::<IntPolynomial>().is_err());
        assert!("x y".parse::<IntPolynomial>().is_err());
        assert!("2x3".parse::<IntPolynomial>().is_err());
    }
}
