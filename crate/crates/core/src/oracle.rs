//! Exhaustive enumeration of digit words for small degrees.
//!
//! Residues are tracked exactly with big integers and nothing else is used
//! to prune, so the results are independent of the root bounds that drive
//! the search.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::roots::{isolate_roots, CircleStatus, START_PRECISION};
use crate::search::{find_multiple, DigitSet, SearchConfig, SearchMode, SearchOutcome, Witness};
use crate::{Error, IntPolynomial, Result};

/// Words enumerated in one call at most.
const MAX_WORDS: u128 = 1 << 27;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// `(degree, digits, most significant first)` in enumeration order:
    /// by leading digit, then lexicographically by digit index.
    pub found: Vec<(u64, Vec<i64>)>,
    pub exhausted_degree: u64,
    /// Words visited, one per prefix.
    pub leaves: u128,
}

impl OracleResult {
    pub fn min_degree(&self) -> Option<u64> {
        self.found.iter().map(|f| f.0).min()
    }

    pub fn contains(&self, word: &[i64]) -> bool {
        self.found.iter().any(|f| f.1 == word)
    }
}

/// Number of words of degree at most `max_degree` with the given leading
/// digits.
pub fn word_count(digits: usize, leading: usize, max_degree: u64) -> Option<u128> {
    let mut total: u128 = 0;
    let mut layer = leading as u128;
    for _ in 0..=max_degree {
        total = total.checked_add(layer)?;
        layer = layer.checked_mul(digits as u128)?;
    }
    Some(total)
}

/// Every word over `d` of degree at most `max_degree`, leading digit in
/// `leading`, whose polynomial `p` divides. Words ending in `0` are skipped
/// when `nonzero_final` holds.
pub fn brute_force_multiples(
    p: &IntPolynomial,
    d: &DigitSet,
    max_degree: u64,
    leading: &[i64],
    nonzero_final: bool,
) -> Result<OracleResult> {
    if !p.is_monic() || p.degree().unwrap_or(0) == 0 {
        return Err(Error::NonMonicModulus);
    }
    if leading.is_empty() || leading.iter().any(|&a| a == 0 || !d.contains(a)) {
        return Err(Error::InvalidDigits("leading digits must be nonzero digits of the set"));
    }
    let digits = d.digits();
    if digits.len() == 2 && max_degree > 24 {
        return Err(Error::TooLarge("oracle degree above 24 for two digits"));
    }
    let expected = match word_count(digits.len(), leading.len(), max_degree) {
        Some(w) if w <= MAX_WORDS => w,
        _ => return Err(Error::TooLarge("oracle enumeration")),
    };
    let n = p.degree().expect("nonzero");
    // low coefficients of p; x^n = -(low part) modulo p
    let low: Vec<BigInt> = p.coeffs()[..n].to_vec();
    let depth = max_degree as usize;
    // residue of the current prefix at each depth
    let mut res: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; depth + 1];
    let mut word: Vec<i64> = Vec::with_capacity(depth + 1);
    let mut out = OracleResult { found: Vec::new(), exhausted_degree: max_degree, leaves: 0 };

    for &a in leading {
        res[0].iter_mut().for_each(|c| c.set_zero());
        res[0][0] = BigInt::from(a);
        word.clear();
        word.push(a);
        // next digit index to try at each depth
        let mut next = vec![0usize; depth + 1];
        let mut t = 0usize;
        out.leaves += 1;
        record(&res[0], &word, nonzero_final, &mut out);
        loop {
            if t == depth || next[t] == digits.len() {
                if t == 0 {
                    break;
                }
                next[t] = 0;
                word.pop();
                t -= 1;
                continue;
            }
            let b = digits[next[t]];
            next[t] += 1;
            let (lo, hi) = res.split_at_mut(t + 1);
            step(&lo[t], b, &low, &mut hi[0]);
            t += 1;
            word.push(b);
            out.leaves += 1;
            record(&res[t], &word, nonzero_final, &mut out);
        }
    }
    assert_eq!(out.leaves, expected, "enumeration missed words");
    Ok(out)
}

fn record(r: &[BigInt], word: &[i64], nonzero_final: bool, out: &mut OracleResult) {
    let last = *word.last().expect("nonempty");
    if r.iter().all(Zero::is_zero) && !(nonzero_final && last == 0) {
        out.found.push((word.len() as u64 - 1, word.to_vec()));
    }
}

/// `X*r + b` reduced modulo the monic polynomial with low part `low`.
fn step(r: &[BigInt], b: i64, low: &[BigInt], out: &mut [BigInt]) {
    let n = r.len();
    let top = &r[n - 1];
    for i in (1..n).rev() {
        out[i] = &r[i - 1] - top * &low[i];
    }
    out[0] = BigInt::from(b) - top * &low[0];
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mismatch {
    /// The search reported a witness within range that the oracle lacks.
    WitnessMissing { word: Vec<i64> },
    /// The minimal degrees disagree; `search` is `None` when the search
    /// did not report a witness.
    MinimalDegree { oracle: u64, search: Option<u64>, verdict: &'static str },
    /// The search proved nonexistence but the oracle found a multiple.
    NoneContradicted { word: Vec<i64> },
}

#[derive(Debug, Clone)]
pub struct CrossReport {
    pub polynomial: IntPolynomial,
    pub digits: Vec<i64>,
    pub max_degree: u64,
    pub oracle: OracleResult,
    pub verdict: &'static str,
    /// Whether the minimal degree comparison applied.
    pub minimal_checked: bool,
    pub mismatches: Vec<Mismatch>,
}

impl CrossReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for CrossReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "p={} digits={:?} max_degree={} oracle_hits={} verdict={}",
            self.polynomial,
            self.digits,
            self.max_degree,
            self.oracle.found.len(),
            self.verdict
        )?;
        for m in &self.mismatches {
            write!(f, "\n  mismatch: {}", describe(m))?;
        }
        Ok(())
    }
}

fn describe(m: &Mismatch) -> String {
    match m {
        Mismatch::WitnessMissing { word } => format!("search witness {word:?} not among oracle hits"),
        Mismatch::MinimalDegree { oracle, search, verdict } => {
            format!("oracle minimal degree {oracle}, search {verdict} at {search:?}")
        }
        Mismatch::NoneContradicted { word } => format!("search proved none but {word:?} is a multiple"),
    }
}

/// No root of `p` lies on or near the unit circle.
fn off_circle(p: &IntPolynomial) -> Result<bool> {
    let rs = match isolate_roots(p, START_PRECISION) {
        Ok(rs) => rs.resolve(),
        Err(Error::PrecisionExhausted(_)) => return Ok(false),
        Err(e) => return Err(e),
    };
    Ok(rs.balls.iter().all(|b| matches!(b.circle_status, CircleStatus::Inside | CircleStatus::Outside)))
}

/// Runs the oracle and the search on the same question and lists every
/// disagreement.
pub fn cross_validate(p: &IntPolynomial, d: &DigitSet, max_degree: u64, cfg: &SearchConfig) -> Result<CrossReport> {
    let leading = cfg.leading(d)?;
    let oracle = brute_force_multiples(p, d, max_degree, &leading, cfg.nonzero_final(d))?;
    let out = find_multiple(p, d, cfg)?;
    let mut mismatches = Vec::new();

    match &out {
        SearchOutcome::Exists(w, _) if (w.degree() as u64) <= max_degree => {
            if !oracle.contains(&w.digits_msb_first) {
                mismatches.push(Mismatch::WitnessMissing { word: w.digits_msb_first.clone() });
            }
        }
        SearchOutcome::None(..) => {
            if let Some(f) = oracle.found.first() {
                mismatches.push(Mismatch::NoneContradicted { word: f.1.clone() });
            }
        }
        _ => {}
    }

    let mut minimal_checked = false;
    if let Some(m) = oracle.min_degree() {
        if off_circle(p)? {
            minimal_checked = true;
            let minimal = if cfg.mode == SearchMode::MinimalDegree {
                out.clone()
            } else {
                find_multiple(p, d, &SearchConfig { mode: SearchMode::MinimalDegree, ..cfg.clone() })?
            };
            let got = minimal.witness().map(|w: &Witness| w.degree() as u64);
            if got != Some(m) {
                mismatches.push(Mismatch::MinimalDegree { oracle: m, search: got, verdict: minimal.verdict_str() });
            }
        }
    }

    Ok(CrossReport {
        polynomial: p.clone(),
        digits: d.digits().to_vec(),
        max_degree,
        oracle,
        verdict: out.verdict_str(),
        minimal_checked,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn golden_ratio_hits() {
        let d = DigitSet::littlewood();
        let r = brute_force_multiples(&ip("x^2-x-1"), &d, 4, &[1], false).unwrap();
        assert_eq!(r.found[0], (2, vec![1, -1, -1]));
        assert_eq!(r.leaves, 1 + 2 + 4 + 8 + 16);
        // degree 3: (x^2-x-1)(x+a) = x^3+(a-1)x^2-(a+1)x-a needs a-1 and
        // a+1 both odd. Degree 4: the cubic coefficient forces a in {0, 2},
        // then b-a-1 = +-1 gives b even, but b = -(constant) must be +-1.
        assert_eq!(r.found, vec![(2, vec![1, -1, -1])]);
        for (_, w) in &r.found {
            assert!(Witness::new(w.clone()).polynomial().exact_div(&ip("x^2-x-1")).is_ok());
        }
    }

    #[test]
    fn x_minus_two_has_no_hits() {
        let r = brute_force_multiples(&ip("x-2"), &DigitSet::newman(), 12, &[1], true).unwrap();
        assert!(r.found.is_empty());
        assert_eq!(r.leaves, (1 << 13) - 1);
    }

    #[test]
    fn phi3_is_its_own_multiple() {
        let r = brute_force_multiples(&ip("x^2+x+1"), &DigitSet::littlewood(), 2, &[1], false).unwrap();
        assert!(r.contains(&[1, 1, 1]));
    }

    #[test]
    fn guard() {
        let d = DigitSet::littlewood();
        assert!(matches!(brute_force_multiples(&ip("x-2"), &d, 25, &[1], false), Err(Error::TooLarge(_))));
        assert!(matches!(brute_force_multiples(&ip("2x-1"), &d, 3, &[1], false), Err(Error::NonMonicModulus)));
        assert_eq!(word_count(2, 1, 3), Some(15));
    }

    #[test]
    fn cross_validate_small() {
        let r = cross_validate(&ip("x-2"), &DigitSet::newman(), 12, &SearchConfig::default()).unwrap();
        assert!(r.ok(), "{r}");
        assert_eq!(r.verdict, "none");
        let r = cross_validate(&ip("x^2-x-1"), &DigitSet::littlewood(), 8, &SearchConfig::default()).unwrap();
        assert!(r.ok(), "{r}");
        assert!(r.minimal_checked);
    }
}
