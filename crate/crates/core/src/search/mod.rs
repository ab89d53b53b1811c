//! Residue-graph search for multiples with coefficients in a digit set.
//!
//! Vertices are remainders `R mod P` (deg `R` < deg `P`) that satisfy the
//! derivative bounds at the roots of `P` off the unit circle, plus the
//! digits themselves. Edges are `R -> X R + b mod P`. A multiple of degree
//! `n` with leading digit `a` is a path of length `n` from the constant `a`
//! to `0`, so breadth-first order finds the shortest multiple in the graph.
//!
//! The bound `B` is first tightened to `B - delta` to shrink the graph and
//! relaxed step by step; only the `delta = 0` graph can prove that no
//! multiple exists.

mod bfs;
mod certificate;
mod count;
mod store;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

pub use bfs::{find_multiple, find_multiple_with};
pub use certificate::ExhaustionCertificate;
pub use count::{count_minimal_multiples, count_minimal_multiples_with, CountOutcome};
pub use store::VertexStore;

use crate::roots::{BoundTable, BoundVerdict};
use crate::{Error, IntPolynomial, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Preset {
    Littlewood,
    Newman,
    Custom,
}

/// Finite set of allowed coefficients, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitSet {
    digits: Vec<i64>,
    bound: i64,
    preset: Preset,
}

impl DigitSet {
    pub fn new(mut digits: Vec<i64>) -> Result<Self> {
        digits.sort_unstable();
        digits.dedup();
        if digits.is_empty() {
            return Err(Error::InvalidDigits("empty digit set"));
        }
        if digits.len() > 255 {
            return Err(Error::InvalidDigits("at most 255 digits"));
        }
        if digits.iter().any(|&d| d.unsigned_abs() > 1 << 31) {
            return Err(Error::InvalidDigits("digits must be below 2^31 in magnitude"));
        }
        let bound = digits.iter().map(|d| d.abs()).max().unwrap_or(0);
        if bound == 0 {
            return Err(Error::InvalidDigits("digit set needs a nonzero digit"));
        }
        let preset = match digits.as_slice() {
            [-1, 1] => Preset::Littlewood,
            [0, 1] => Preset::Newman,
            _ => Preset::Custom,
        };
        Ok(DigitSet { digits, bound, preset })
    }

    /// `{-1, 1}`.
    pub fn littlewood() -> Self {
        Self::new(alloc::vec![-1, 1]).expect("valid")
    }

    /// `{0, 1}`.
    pub fn newman() -> Self {
        Self::new(alloc::vec![0, 1]).expect("valid")
    }

    pub fn digits(&self) -> &[i64] {
        &self.digits
    }

    /// `B = max |b|`.
    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn contains(&self, d: i64) -> bool {
        self.digits.binary_search(&d).is_ok()
    }

    pub fn is_littlewood(&self) -> bool {
        self.preset == Preset::Littlewood
    }

    pub fn is_newman(&self) -> bool {
        self.preset == Preset::Newman
    }

    /// `{1}` for the two presets (`Q` and `-Q` are both multiples, and a
    /// Newman polynomial leads with 1); every nonzero digit otherwise.
    pub fn default_leading(&self) -> Vec<i64> {
        match self.preset {
            Preset::Littlewood | Preset::Newman => alloc::vec![1],
            Preset::Custom => self.digits.iter().copied().filter(|&d| d != 0).collect(),
        }
    }

    /// Every digit is odd, so multiples obey the mod-2 degree congruence.
    pub fn all_odd(&self) -> bool {
        self.digits.iter().all(|d| d % 2 != 0)
    }
}

/// `littlewood`, `newman`, `custom=a,b,...` or a bare comma list.
impl core::str::FromStr for DigitSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "littlewood" => Ok(DigitSet::littlewood()),
            "newman" => Ok(DigitSet::newman()),
            t => {
                let list = t.strip_prefix("custom=").unwrap_or(t);
                let digits = list
                    .split(',')
                    .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(alloc::format!("bad digit {x:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                DigitSet::new(digits)
            }
        }
    }
}

impl fmt::Display for DigitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.preset {
            Preset::Littlewood => f.write_str("littlewood"),
            Preset::Newman => f.write_str("newman"),
            Preset::Custom => {
                f.write_str("custom=")?;
                for (i, d) in self.digits.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{d}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SearchMode {
    AnyMultiple,
    MinimalDegree,
    CountMinimal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub delta_start: f64,
    pub delta_step: f64,
    pub max_vertices: u64,
    pub max_depth: u64,
    pub mode: SearchMode,
    /// `None` picks [`DigitSet::default_leading`].
    pub leading_digits: Option<Vec<i64>>,
    /// `None` means: required exactly when 0 is a digit.
    pub require_nonzero_final_digit: Option<bool>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            delta_start: 0.95,
            delta_step: 0.05,
            max_vertices: 50_000_000,
            max_depth: 200_000,
            mode: SearchMode::AnyMultiple,
            leading_digits: None,
            require_nonzero_final_digit: None,
        }
    }
}

impl SearchConfig {
    pub fn minimal() -> Self {
        SearchConfig { mode: SearchMode::MinimalDegree, ..Self::default() }
    }

    /// Number of tightened rounds before `delta = 0`.
    pub fn delta_steps(&self) -> Result<u32> {
        if !(0.0..1.0).contains(&self.delta_start) || self.delta_step.partial_cmp(&0.0) != Some(core::cmp::Ordering::Greater) {
            return Err(Error::InvalidDigits("delta_start must lie in [0,1) and delta_step be positive"));
        }
        let k = libm::round(self.delta_start / self.delta_step);
        if libm::fabs(k * self.delta_step - self.delta_start) > 1e-9 {
            return Err(Error::InvalidDigits("delta_start must be a multiple of delta_step"));
        }
        Ok(k as u32)
    }

    pub(crate) fn leading(&self, d: &DigitSet) -> Result<Vec<i64>> {
        let mut lead = self.leading_digits.clone().unwrap_or_else(|| d.default_leading());
        lead.sort_unstable();
        lead.dedup();
        if lead.is_empty() || lead.iter().any(|&a| a == 0 || !d.contains(a)) {
            return Err(Error::InvalidDigits("leading digits must be nonzero digits of the set"));
        }
        Ok(lead)
    }

    pub(crate) fn nonzero_final(&self, d: &DigitSet) -> bool {
        self.require_nonzero_final_digit.unwrap_or_else(|| d.contains(0))
    }
}

/// Remainder `R mod P`, ascending coefficients, padded to length `deg P`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    pub coeffs: Vec<BigInt>,
}

impl Residue {
    pub fn zero(len: usize) -> Self {
        Residue { coeffs: alloc::vec![BigInt::zero(); len] }
    }

    pub fn constant(len: usize, c: i64) -> Self {
        let mut r = Self::zero(len);
        r.coeffs[0] = BigInt::from(c);
        r
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Residue { coeffs: c.iter().map(|&x| BigInt::from(x)).collect() }
    }

    pub fn from_poly(p: &IntPolynomial, len: usize) -> Self {
        let mut r = Self::zero(len);
        for (k, c) in p.coeffs().iter().enumerate() {
            r.coeffs[k] = c.clone();
        }
        r
    }

    pub fn to_poly(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.clone())
    }

    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

/// `X r + b mod P` in exact arithmetic.
pub fn residue_step(r: &Residue, b: i64, p: &IntPolynomial) -> Result<Residue> {
    let n = match p.degree() {
        Some(n) if n >= 1 && p.is_monic() => n,
        _ => return Err(Error::NonMonicModulus),
    };
    debug_assert_eq!(r.coeffs.len(), n);
    let top = r.coeffs[n - 1].clone();
    let mut out = Vec::with_capacity(n);
    out.push(BigInt::from(b) - &top * &p.coeffs()[0]);
    for k in 1..n {
        out.push(&r.coeffs[k - 1] - &top * &p.coeffs()[k]);
    }
    Ok(Residue { coeffs: out })
}

/// Bound check of a residue against a table built for the same modulus.
pub fn within_bounds(r: &Residue, t: &BoundTable) -> BoundVerdict {
    match r.to_i64s() {
        Some(c) => t.within_bounds(&c),
        None => BoundVerdict::Unknown,
    }
}

/// Digit word of a multiple, leading digit first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Witness {
    pub digits_msb_first: Vec<i64>,
}

impl Witness {
    pub fn new(digits_msb_first: Vec<i64>) -> Self {
        Witness { digits_msb_first }
    }

    pub fn degree(&self) -> usize {
        self.digits_msb_first.len().saturating_sub(1)
    }

    /// `Q = sum digit_i X^(n-i)`.
    pub fn polynomial(&self) -> IntPolynomial {
        IntPolynomial::from_i64s(&self.digits_msb_first.iter().rev().copied().collect::<Vec<_>>())
    }

    /// Witness for the reciprocal modulus: the reversed word without leading
    /// zeros, negated when it leads with a negative digit and negation stays
    /// inside `d`.
    pub fn reciprocal(&self, d: &DigitSet) -> Witness {
        let mut w: Vec<i64> = self.digits_msb_first.iter().rev().copied().skip_while(|&x| x == 0).collect();
        if w.first().is_some_and(|&x| x < 0) && w.iter().all(|&x| d.contains(-x)) {
            w.iter_mut().for_each(|x| *x = -*x);
        }
        Witness::new(w)
    }

    /// Compact string: `+`/`-`/`0` when `signed`, `1`/`0` otherwise;
    /// comma-separated integers if a digit falls outside `{-1, 0, 1}`.
    pub fn to_digit_string(&self, signed: bool) -> String {
        if self.digits_msb_first.iter().any(|d| !(-1..=1).contains(d)) {
            let mut s = String::new();
            for (i, d) in self.digits_msb_first.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                s.push_str(&alloc::format!("{d}"));
            }
            return s;
        }
        self.digits_msb_first
            .iter()
            .map(|&d| match (d, signed) {
                (1, true) => '+',
                (1, false) => '1',
                (-1, _) => '-',
                _ => '0',
            })
            .collect()
    }

    /// String in the alphabet suited to `d`.
    pub fn encode(&self, d: &DigitSet) -> String {
        self.to_digit_string(d.digits().iter().any(|&x| x < 0))
    }

    pub fn parse(s: &str) -> Result<Witness> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty witness".into()));
        }
        let digits = if s.contains(',') || s.chars().any(|c| !matches!(c, '+' | '-' | '0' | '1')) {
            s.split(',')
                .map(|t| t.trim().parse::<i64>().map_err(|e| Error::Parse(alloc::format!("witness digit {t:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| match c {
                    '+' | '1' => 1,
                    '-' => -1,
                    _ => 0,
                })
                .collect()
        };
        Ok(Witness::new(digits))
    }
}

/// Every digit in `D`, leading digit allowed, and `P` divides `Q` exactly.
pub fn verify_witness(p: &IntPolynomial, w: &Witness, d: &DigitSet) -> bool {
    verify_witness_with(p, w, d, &d.default_leading())
}

pub fn verify_witness_with(p: &IntPolynomial, w: &Witness, d: &DigitSet, leading: &[i64]) -> bool {
    let Some(&lead) = w.digits_msb_first.first() else {
        return false;
    };
    if p.is_zero() || !leading.contains(&lead) || lead == 0 {
        return false;
    }
    if !w.digits_msb_first.iter().all(|&x| d.contains(x)) {
        return false;
    }
    w.polynomial().exact_div(p).is_ok()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InconclusiveReason {
    VertexCap,
    DepthCap,
    PrecisionCap,
    ExcludedRootsNontermination,
    Timeout,
}

impl InconclusiveReason {
    pub fn as_str(self) -> &'static str {
        match self {
            InconclusiveReason::VertexCap => "vertex_cap",
            InconclusiveReason::DepthCap => "depth_cap",
            InconclusiveReason::PrecisionCap => "precision_cap",
            InconclusiveReason::ExcludedRootsNontermination => "excluded_roots_nontermination",
            InconclusiveReason::Timeout => "timeout",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SearchStats {
    /// Vertices of the last graph built.
    pub vertices: u64,
    /// Vertices over all delta rounds.
    pub vertices_total: u64,
    pub final_delta: f64,
    /// Deepest layer reached in the last graph, or the witness degree.
    pub max_layer: u64,
    /// Roots on (or not separable from) the unit circle left out of checks.
    pub excluded_roots: usize,
    /// The reported graph is that of the reversed modulus.
    pub reciprocal: bool,
    /// Filled by callers that own a clock.
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone)]
pub enum SearchOutcome {
    Exists(Witness, SearchStats),
    None(ExhaustionCertificate, SearchStats),
    Inconclusive(InconclusiveReason, SearchStats),
}

impl SearchOutcome {
    pub fn stats(&self) -> &SearchStats {
        match self {
            SearchOutcome::Exists(_, s) | SearchOutcome::None(_, s) | SearchOutcome::Inconclusive(_, s) => s,
        }
    }

    pub fn stats_mut(&mut self) -> &mut SearchStats {
        match self {
            SearchOutcome::Exists(_, s) | SearchOutcome::None(_, s) | SearchOutcome::Inconclusive(_, s) => s,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            SearchOutcome::Exists(w, _) => Some(w),
            _ => None,
        }
    }

    pub fn verdict_str(&self) -> &'static str {
        match self {
            SearchOutcome::Exists(..) => "exists",
            SearchOutcome::None(..) => "none",
            SearchOutcome::Inconclusive(..) => "inconclusive",
        }
    }
}

/// Smallest degree any multiple can have: `deg P`, and `deg2(P) - 1` when
/// every digit is odd.
pub fn degree_lower_bound(p: &IntPolynomial, d: &DigitSet) -> u64 {
    let n = p.degree().unwrap_or(0) as u64;
    if d.all_odd() {
        if let Ok(m) = crate::gf2::minimal_littlewood_degree(p) {
            return n.max(m);
        }
    }
    n
}

#[cfg(test)]
mod tests;
