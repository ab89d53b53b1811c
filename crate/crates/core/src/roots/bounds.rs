//! Derivative bounds at the roots of the modulus.
//!
//! A residue `R` is kept when `|R^(k)(alpha)| <= k! B' / ||alpha|-1|^(k+1)`
//! for every non-excluded root `alpha` of multiplicity `e > k`. Both sides
//! are enclosed in intervals; `Out` is returned only when an inequality is
//! violated for every point of the enclosures, `In` only when it holds for
//! every point.
//!
//! The fast path sums `a_i * c^i` in `f64` with an explicit error budget;
//! the slow path repeats the evaluation exactly with dyadics. Conjugate
//! roots give the same moduli, so only one root of each certified
//! nonreal pair is checked.

use alloc::vec::Vec;

use crate::dyadic::{DComplex, Dyadic, Round};
use crate::roots::{CircleStatus, RootSystem};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundVerdict {
    In,
    Out,
    Unknown,
}

#[derive(Debug, Clone)]
struct Rhs {
    lo: Dyadic,
    /// `None` when `||alpha|-1|` has no positive lower bound yet.
    hi: Option<Dyadic>,
    lo_f: f64,
    hi_f: f64,
}

#[derive(Debug, Clone)]
struct RootBound {
    ball: usize,
    // c^m for m < n, exact and rounded to f64
    pows: Vec<DComplex>,
    pow_re: Vec<f64>,
    pow_im: Vec<f64>,
    // bound on |alpha^m - c^m|, exact
    drift: Vec<Dyadic>,
    // bound on |alpha^m - fl(c^m)|
    err_f: Vec<f64>,
    rhs: Vec<Rhs>,
}

#[derive(Debug, Clone)]
pub struct BoundTable {
    n: usize,
    b_eff: Dyadic,
    entries: Vec<RootBound>,
    excluded: Vec<usize>,
}

const U: f64 = f64::EPSILON / 2.0;

fn falling(i: usize, k: usize) -> u64 {
    (i - k + 1..=i).map(|x| x as u64).product()
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

fn f64_abs_diff(exact: &Dyadic, approx: f64) -> Dyadic {
    (exact - &Dyadic::from_f64(approx)).abs()
}

/// Table for residues of length `deg p` with effective bound `b_eff`.
///
/// Undecided roots are refined first. Unimodular candidates that stay
/// undecided at the cap are excluded alongside proven unimodular roots;
/// any other undecided root is an error.
pub fn build_bound_table(rs: &RootSystem, b_eff: &Dyadic) -> Result<BoundTable> {
    let rs = if rs.has_undecided() { rs.resolve() } else { rs.clone() };
    if rs
        .balls
        .iter()
        .any(|b| b.circle_status == CircleStatus::Undecided && !b.unimodular_candidate)
    {
        return Err(Error::PrecisionExhausted(rs.precision_bits));
    }
    let n = rs.poly.degree().expect("nonzero modulus");
    let excluded = rs.excluded();
    let mut entries = Vec::new();
    for (j, b) in rs.balls.iter().enumerate() {
        if excluded.contains(&j) || b.center.im < -&b.radius {
            continue;
        }
        entries.push(root_bound(j, &b.center, &b.radius, b.multiplicity, b.circle_status, n, b_eff));
    }
    Ok(BoundTable { n, b_eff: b_eff.clone(), entries, excluded })
}

fn root_bound(
    ball: usize,
    c: &DComplex,
    r: &Dyadic,
    mult: u32,
    status: CircleStatus,
    n: usize,
    b_eff: &Dyadic,
) -> RootBound {
    let prec = 64 + c.re.bits().max(c.im.bits()) as u32;
    let c2 = c.norm_sqr();
    let abs_lo = Dyadic::sqrt(&c2, prec, Round::Down);
    let abs_hi = Dyadic::sqrt(&c2, prec, Round::Up);
    let rho = &abs_hi + r;

    let mut pows = Vec::with_capacity(n);
    let mut pow_re = Vec::with_capacity(n);
    let mut pow_im = Vec::with_capacity(n);
    let mut drift = Vec::with_capacity(n);
    let mut err_f = Vec::with_capacity(n);
    let mut p = DComplex::one();
    let mut rho_m = Dyadic::one();
    let mut abs_m = Dyadic::one();
    for m in 0..n {
        if m > 0 {
            p = p.mul(c);
            rho_m = &rho_m * &rho;
            abs_m = &abs_m * &abs_hi;
        }
        // (|c|+r)^m - |c|^m is increasing in |c|, so the upper |c| is safe
        let d = (&rho_m - &abs_m).round(64, Round::Up);
        let (fr, fi) = (p.re.to_f64(), p.im.to_f64());
        let e = &d + &(&f64_abs_diff(&p.re, fr) + &f64_abs_diff(&p.im, fi));
        err_f.push(e.to_f64_up().next_up());
        pow_re.push(fr);
        pow_im.push(fi);
        drift.push(d);
        pows.push(p.clone());
    }

    // ||alpha| - 1| lies in [dlo, dhi]
    let one = Dyadic::one();
    let (dlo, dhi) = match status {
        CircleStatus::Outside => (&(&abs_lo - r) - &one, &(&abs_hi + r) - &one),
        CircleStatus::Inside => (&(&one - &abs_hi) - r, &(&one - &abs_lo) + r),
        _ => unreachable!("excluded roots have no bounds"),
    };
    let rhs = (0..mult as usize)
        .map(|k| {
            let num = &Dyadic::from_i64(factorial(k) as i64) * b_eff;
            let e = (k + 1) as u32;
            let lo = Dyadic::div(&num, &dhi.powi(e), 64, Round::Down);
            let hi = dlo.is_positive().then(|| Dyadic::div(&num, &dlo.powi(e), 64, Round::Up));
            let hi_f = hi.as_ref().map_or(f64::INFINITY, Dyadic::to_f64_up);
            Rhs { lo_f: lo.to_f64_down(), lo, hi, hi_f }
        })
        .collect();
    RootBound { ball, pows, pow_re, pow_im, drift, err_f, rhs }
}

impl BoundTable {
    pub fn residue_len(&self) -> usize {
        self.n
    }

    pub fn b_eff(&self) -> &Dyadic {
        &self.b_eff
    }

    /// Indices of the balls left out of the checks.
    pub fn excluded(&self) -> &[usize] {
        &self.excluded
    }

    /// Number of `(root, k)` inequalities checked.
    pub fn len(&self) -> usize {
        self.entries.iter().map(|e| e.rhs.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Balls with bounds, one per conjugate pair.
    pub fn checked_balls(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.ball).collect()
    }

    /// `(lower, upper)` enclosure of the right-hand side for entry `e`,
    /// derivative `k`, with `None` standing for an unbounded upper end.
    pub fn rhs_interval(&self, e: usize, k: usize) -> (&Dyadic, Option<&Dyadic>) {
        let r = &self.entries[e].rhs[k];
        (&r.lo, r.hi.as_ref())
    }

    pub fn within_bounds(&self, coeffs: &[i64]) -> BoundVerdict {
        match self.within_bounds_fast(coeffs) {
            BoundVerdict::Unknown => self.within_bounds_exact(coeffs),
            v => v,
        }
    }

    /// `f64` evaluation with a rigorous error budget; `Unknown` when the
    /// budget is too coarse or coefficients are too large for exact floats.
    pub fn within_bounds_fast(&self, coeffs: &[i64]) -> BoundVerdict {
        debug_assert!(coeffs.len() <= self.n);
        let mut verdict = BoundVerdict::In;
        for e in &self.entries {
            for (k, rhs) in e.rhs.iter().enumerate() {
                let (mut sr, mut si, mut mag, mut err) = (0.0, 0.0, 0.0, 0.0);
                for (i, &a) in coeffs.iter().enumerate().skip(k) {
                    if a == 0 {
                        continue;
                    }
                    let w = falling(i, k);
                    let aw = a.unsigned_abs() as f64 * w as f64;
                    if aw >= 4503599627370496.0 {
                        return BoundVerdict::Unknown;
                    }
                    let aw = if a < 0 { -aw } else { aw };
                    let (pr, pi) = (e.pow_re[i - k], e.pow_im[i - k]);
                    sr += aw * pr;
                    si += aw * pi;
                    mag += aw.abs() * (pr.abs() + pi.abs());
                    err += aw.abs() * e.err_f[i - k];
                }
                let s = libm::hypot(sr, si);
                let slack = (((2 * self.n + 8) as f64) * U * mag + 4.0 * U * s + err) * (1.0 + 1.0 / 64.0);
                if s - slack > rhs.hi_f {
                    return BoundVerdict::Out;
                }
                if s + slack > rhs.lo_f {
                    verdict = BoundVerdict::Unknown;
                }
            }
        }
        verdict
    }

    /// Exact dyadic evaluation of the same inequalities.
    pub fn within_bounds_exact(&self, coeffs: &[i64]) -> BoundVerdict {
        let mut verdict = BoundVerdict::In;
        for e in &self.entries {
            for (k, rhs) in e.rhs.iter().enumerate() {
                let mut s = DComplex::zero();
                let mut err = Dyadic::zero();
                for (i, &a) in coeffs.iter().enumerate().skip(k) {
                    if a == 0 {
                        continue;
                    }
                    let aw = Dyadic::from_int(num_bigint::BigInt::from(a) * falling(i, k));
                    s = s.add(&e.pows[i - k].scale(&aw));
                    err = &err + &(&aw.abs() * &e.drift[i - k]);
                }
                let n2 = s.norm_sqr();
                let lower = &Dyadic::sqrt(&n2, 64, Round::Down) - &err;
                let upper = &Dyadic::sqrt(&n2, 64, Round::Up) + &err;
                if rhs.hi.as_ref().is_some_and(|hi| lower > *hi) {
                    return BoundVerdict::Out;
                }
                if upper > rhs.lo {
                    verdict = BoundVerdict::Unknown;
                }
            }
        }
        verdict
    }
}
