//! Polynomial families, pre-filters and per-polynomial census records.
//!
//! The batch driver (threads, JSONL, resume) lives in the `digitmult` crate;
//! everything here is deterministic and single-threaded.

use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::gf2::deg2;
use crate::intpoly::{has_positive_real_root, strip_cyclotomic};
use crate::search::{find_multiple_with, verify_witness_with, DigitSet, SearchConfig, SearchOutcome, Witness};
use crate::{Error, IntPolynomial, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Newman,
    LittlewoodMonic,
    NewmanQuadrinomial,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Newman => "newman",
            Family::LittlewoodMonic => "littlewood_monic",
            Family::NewmanQuadrinomial => "newman_quadrinomial",
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "newman" => Ok(Family::Newman),
            "littlewood" | "littlewood_monic" | "littlewood-monic" => Ok(Family::LittlewoodMonic),
            "newman_quadrinomial" | "newman-quadrinomial" | "quadrinomial" => Ok(Family::NewmanQuadrinomial),
            _ => Err(Error::Parse(alloc::format!("unknown family {s:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub degree_min: u32,
    pub degree_max: u32,
    pub dedup_reciprocal: bool,
}

impl FamilySpec {
    pub fn new(family: Family, degree_min: u32, degree_max: u32) -> Result<Self> {
        if degree_min == 0 || degree_min > degree_max {
            return Err(Error::InvalidDigits("degree bounds must satisfy 1 <= min <= max"));
        }
        if degree_max > 62 {
            return Err(Error::TooLarge("family degree above 62"));
        }
        Ok(FamilySpec { family, degree_min, degree_max, dedup_reciprocal: false })
    }

    pub fn dedup(self, on: bool) -> Self {
        FamilySpec { dedup_reciprocal: on, ..self }
    }

    /// Members of one degree before deduplication.
    pub fn size_of_degree(&self, d: u32) -> u64 {
        let d = d as u64;
        match self.family {
            Family::Newman => 1 << (d - 1),
            Family::LittlewoodMonic => 1 << d,
            Family::NewmanQuadrinomial if d >= 3 => (d - 1) * (d - 2) / 2,
            Family::NewmanQuadrinomial => 0,
        }
    }
}

/// Coefficients most significant first in the census alphabet. The
/// characters sort `+ < - < 0 < 1`, which fixes the enumeration order.
pub fn coefficient_string(p: &IntPolynomial) -> String {
    p.coeffs()
        .iter()
        .rev()
        .map(|c| {
            if c.is_zero() {
                '0'
            } else if c.is_one() {
                '1'
            } else if *c == -num_bigint::BigInt::one() {
                '-'
            } else {
                '?'
            }
        })
        .collect()
}

fn littlewood_string(p: &IntPolynomial) -> String {
    coefficient_string(p).replace('1', "+")
}

fn key(family: Family, p: &IntPolynomial) -> String {
    match family {
        Family::LittlewoodMonic => littlewood_string(p),
        _ => coefficient_string(p),
    }
}

/// The reciprocal, negated if needed so that the leading coefficient is
/// positive. It has the same multiples up to reversal and sign.
pub fn reciprocal_partner(p: &IntPolynomial) -> Result<IntPolynomial> {
    let r = p.reciprocal()?;
    Ok(if r.leading().is_some_and(|c| c.is_negative()) { -&r } else { r })
}

/// Family members by ascending degree, then ascending coefficient string.
pub fn enumerate(spec: FamilySpec) -> Enumerate {
    Enumerate { spec, degree: spec.degree_min, index: 0 }
}

#[derive(Debug, Clone)]
pub struct Enumerate {
    spec: FamilySpec,
    degree: u32,
    index: u64,
}

impl Enumerate {
    fn member(&self) -> IntPolynomial {
        let d = self.degree as usize;
        let i = self.index;
        let mut c = alloc::vec![0i64; d + 1];
        c[0] = 1;
        c[d] = 1;
        match self.spec.family {
            // bit k of the index, from the top, is the coefficient of X^(d-1-k)
            Family::Newman => {
                for k in 0..d - 1 {
                    c[d - 1 - k] = ((i >> (d - 2 - k)) & 1) as i64;
                }
            }
            Family::LittlewoodMonic => {
                for k in 0..d {
                    c[d - 1 - k] = if (i >> (d - 1 - k)) & 1 == 1 { -1 } else { 1 };
                }
            }
            Family::NewmanQuadrinomial => {
                // b ascending, then c ascending
                let (mut b, mut rest) = (2usize, i as usize);
                while rest >= b - 1 {
                    rest -= b - 1;
                    b += 1;
                }
                c[b] = 1;
                c[rest + 1] = 1;
            }
        }
        IntPolynomial::from_i64s(&c)
    }
}

impl Iterator for Enumerate {
    type Item = IntPolynomial;

    fn next(&mut self) -> Option<IntPolynomial> {
        loop {
            if self.degree > self.spec.degree_max {
                return None;
            }
            if self.index >= self.spec.size_of_degree(self.degree) {
                self.degree += 1;
                self.index = 0;
                continue;
            }
            let p = self.member();
            self.index += 1;
            if self.spec.dedup_reciprocal {
                let q = reciprocal_partner(&p).expect("family members have constant term 1 or -1");
                if key(self.spec.family, &q) < key(self.spec.family, &p) {
                    continue;
                }
            }
            return Some(p);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    LittlewoodMultiple,
    NewmanMultiple,
}

impl Target {
    pub fn as_str(self) -> &'static str {
        match self {
            Target::LittlewoodMultiple => "littlewood",
            Target::NewmanMultiple => "newman",
        }
    }

    pub fn digits(self) -> DigitSet {
        match self {
            Target::LittlewoodMultiple => DigitSet::littlewood(),
            Target::NewmanMultiple => DigitSet::newman(),
        }
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "littlewood" | "littlewood_multiple" | "littlewood-multiple" => Ok(Target::LittlewoodMultiple),
            "newman" | "newman_multiple" | "newman-multiple" => Ok(Target::NewmanMultiple),
            _ => Err(Error::Parse(alloc::format!("unknown target {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Prefilter {
    /// Search this part; cyclotomic factors are already divided out.
    RunSearch(IntPolynomial),
    ExistsByCyclotomicProduct,
    FilteredNoNewman,
}

impl Prefilter {
    pub fn tag(&self) -> &'static str {
        match self {
            Prefilter::RunSearch(_) => "none",
            Prefilter::ExistsByCyclotomicProduct => "cyclotomic_product",
            Prefilter::FilteredNoNewman => "positive_real_root",
        }
    }
}

/// Every cyclotomic product has a Littlewood multiple, and one with
/// `P(1) != 0` has a Newman multiple; Newman polynomials have no positive
/// real roots. Otherwise the cyclotomic factors are divided out, keeping
/// `X - 1` for Newman targets.
pub fn prefilter(p: &IntPolynomial, target: Target) -> Prefilter {
    match target {
        Target::LittlewoodMultiple => {
            let rest = strip_cyclotomic(p, false).noncyclotomic_part;
            if rest.is_unit() {
                Prefilter::ExistsByCyclotomicProduct
            } else {
                Prefilter::RunSearch(rest)
            }
        }
        Target::NewmanMultiple => {
            if has_positive_real_root(p) {
                return Prefilter::FilteredNoNewman;
            }
            let rest = strip_cyclotomic(p, true).noncyclotomic_part;
            if rest.is_unit() {
                Prefilter::ExistsByCyclotomicProduct
            } else {
                Prefilter::RunSearch(rest)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Exists,
    None,
    Inconclusive,
    ExistsByCyclotomicProduct,
    FilteredNoNewman,
}

impl Verdict {
    pub const ALL: [Verdict; 5] =
        [Verdict::Exists, Verdict::None, Verdict::Inconclusive, Verdict::ExistsByCyclotomicProduct, Verdict::FilteredNoNewman];

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Exists => "exists",
            Verdict::None => "none",
            Verdict::Inconclusive => "inconclusive",
            Verdict::ExistsByCyclotomicProduct => "exists_by_cyclotomic_product",
            Verdict::FilteredNoNewman => "filtered_no_newman",
        }
    }

    pub fn has_multiple(self) -> bool {
        matches!(self, Verdict::Exists | Verdict::ExistsByCyclotomicProduct)
    }
}

impl FromStr for Verdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Verdict::ALL
            .into_iter()
            .find(|v| v.as_str() == s)
            .ok_or_else(|| Error::Parse(alloc::format!("unknown verdict {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CensusRecord {
    pub poly: IntPolynomial,
    pub family: Family,
    pub digits: String,
    pub verdict: Verdict,
    /// Multiple of the searched part, that is of `poly` with its
    /// cyclotomic factors divided out.
    pub witness: Option<Witness>,
    pub deg2: Option<u64>,
    pub prefilter: &'static str,
    pub vertices: u64,
    pub final_delta: Option<f64>,
    pub elapsed_ms: u64,
    /// Why an inconclusive verdict was reached.
    pub reason: Option<String>,
}

impl CensusRecord {
    pub fn witness_degree(&self) -> Option<u64> {
        self.witness.as_ref().map(|w| w.degree() as u64)
    }

    /// Re-checks an `exists` witness by exact division against the part
    /// the pre-filter hands to the search. Other verdicts pass trivially.
    pub fn witness_verifies(&self, target: Target, cfg: &SearchConfig) -> bool {
        if self.verdict != Verdict::Exists {
            return true;
        }
        let (Some(w), Prefilter::RunSearch(q)) = (&self.witness, prefilter(&self.poly, target)) else {
            return false;
        };
        let d = target.digits();
        match cfg.leading(&d) {
            Ok(lead) => verify_witness_with(&q, w, &d, &lead),
            Err(_) => false,
        }
    }
}

/// Pre-filter, then search, one family member. Certificates of `none`
/// verdicts are replayed before they are reported; a failed replay or any
/// error becomes an inconclusive record. `elapsed_ms` is left at 0.
pub fn census_entry(
    p: &IntPolynomial,
    family: Family,
    target: Target,
    cfg: &SearchConfig,
    interrupt: &mut dyn FnMut() -> bool,
) -> CensusRecord {
    let d = target.digits();
    let pre = prefilter(p, target);
    let mut rec = CensusRecord {
        poly: p.clone(),
        family,
        digits: d.to_string(),
        verdict: Verdict::Inconclusive,
        witness: None,
        deg2: None,
        prefilter: pre.tag(),
        vertices: 0,
        final_delta: None,
        elapsed_ms: 0,
        reason: None,
    };
    let q = match pre {
        Prefilter::ExistsByCyclotomicProduct => {
            rec.verdict = Verdict::ExistsByCyclotomicProduct;
            return rec;
        }
        Prefilter::FilteredNoNewman => {
            rec.verdict = Verdict::FilteredNoNewman;
            return rec;
        }
        Prefilter::RunSearch(q) => q,
    };
    if target == Target::LittlewoodMultiple {
        rec.deg2 = deg2(&q).ok();
    }
    let out = match find_multiple_with(&q, &d, cfg, interrupt) {
        Ok(out) => out,
        Err(e) => {
            rec.reason = Some(e.to_string());
            return rec;
        }
    };
    let stats = out.stats();
    rec.vertices = stats.vertices;
    rec.final_delta = Some(stats.final_delta);
    match out {
        SearchOutcome::Exists(w, _) => {
            rec.verdict = Verdict::Exists;
            rec.witness = Some(w);
        }
        SearchOutcome::None(cert, _) => match cert.replay(&q) {
            Ok(true) => rec.verdict = Verdict::None,
            Ok(false) => rec.reason = Some("certificate_rejected".into()),
            Err(e) => rec.reason = Some(e.to_string()),
        },
        SearchOutcome::Inconclusive(r, _) => rec.reason = Some(r.as_str().into()),
    }
    rec
}

/// Record counts by verdict.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CensusSummary {
    counts: [u64; 5],
}

impl CensusSummary {
    pub fn add(&mut self, v: Verdict) {
        self.counts[v as usize] += 1;
    }

    pub fn count(&self, v: Verdict) -> u64 {
        self.counts[v as usize]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Multiples known to exist, found or by cyclotomic product.
    pub fn exists_total(&self) -> u64 {
        self.count(Verdict::Exists) + self.count(Verdict::ExistsByCyclotomicProduct)
    }
}

impl<'a> FromIterator<&'a CensusRecord> for CensusSummary {
    fn from_iter<I: IntoIterator<Item = &'a CensusRecord>>(iter: I) -> Self {
        let mut s = CensusSummary::default();
        iter.into_iter().for_each(|r| s.add(r.verdict));
        s
    }
}

impl fmt::Display for CensusSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "exists: {}", self.exists_total())?;
        writeln!(f, "  found: {}", self.count(Verdict::Exists))?;
        writeln!(f, "  by_cyclotomic_product: {}", self.count(Verdict::ExistsByCyclotomicProduct))?;
        writeln!(f, "none: {}", self.count(Verdict::None))?;
        writeln!(f, "inconclusive: {}", self.count(Verdict::Inconclusive))?;
        writeln!(f, "filtered_no_newman: {}", self.count(Verdict::FilteredNoNewman))?;
        write!(f, "total: {}", self.total())
    }
}
