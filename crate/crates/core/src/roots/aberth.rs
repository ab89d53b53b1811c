//! Root approximation (Aberth iteration, first in `f64` and then polished
//! with dyadic arithmetic) and a posteriori disk radii.
//!
//! Radii come from the Weierstrass-correction inclusion: with distinct
//! approximations `z_1..z_m` of the roots of `f` (degree `m`, leading
//! coefficient `lc`), the disks `|z - z_i| <= m |f(z_i)| / |lc prod_{j!=i}
//! (z_i - z_j)|` cover all roots, and each connected component holds as many
//! roots as disks. Pairwise disjoint disks therefore hold one root each.

use alloc::vec::Vec;

use crate::dyadic::{DComplex, Dyadic, Round};
use crate::IntPolynomial;

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct C64 {
    pub re: f64,
    pub im: f64,
}

impl C64 {
    fn new(re: f64, im: f64) -> Self {
        C64 { re, im }
    }
    fn add(self, o: C64) -> C64 {
        C64::new(self.re + o.re, self.im + o.im)
    }
    fn sub(self, o: C64) -> C64 {
        C64::new(self.re - o.re, self.im - o.im)
    }
    fn mul(self, o: C64) -> C64 {
        C64::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
    fn div(self, o: C64) -> C64 {
        let d = o.re * o.re + o.im * o.im;
        C64::new((self.re * o.re + self.im * o.im) / d, (self.im * o.re - self.re * o.im) / d)
    }
    fn abs(self) -> f64 {
        libm::hypot(self.re, self.im)
    }
}

fn horner_f64(c: &[f64], z: C64) -> (C64, C64) {
    let mut f = C64::new(0.0, 0.0);
    let mut df = C64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        df = df.mul(z).add(f);
        f = f.mul(z).add(C64::new(a, 0.0));
    }
    (f, df)
}

/// Rough approximations of all roots of a polynomial with nonzero leading
/// and constant coefficients.
pub(crate) fn aberth_f64(f: &IntPolynomial) -> Vec<C64> {
    let c: Vec<f64> = f.coeffs().iter().map(|a| Dyadic::from_int(a.clone()).to_f64()).collect();
    let m = c.len() - 1;
    let lc = c[m];
    let r0 = libm::pow((c[0] / lc).abs(), 1.0 / m as f64).clamp(1e-3, 1e3);
    let mut z: Vec<C64> = (0..m)
        .map(|k| {
            let t = 2.0 * core::f64::consts::PI * k as f64 / m as f64 + 0.4;
            C64::new(r0 * libm::cos(t), r0 * libm::sin(t))
        })
        .collect();
    let mut quiet = 0;
    for _ in 0..2000 {
        let mut worst: f64 = 0.0;
        for i in 0..m {
            let (fz, dfz) = horner_f64(&c, z[i]);
            if fz.abs() == 0.0 {
                continue;
            }
            let n = fz.div(dfz);
            let s = (0..m)
                .filter(|&j| j != i)
                .fold(C64::new(0.0, 0.0), |acc, j| acc.add(C64::new(1.0, 0.0).div(z[i].sub(z[j]))));
            let w = n.div(C64::new(1.0, 0.0).sub(n.mul(s)));
            if w.re.is_finite() && w.im.is_finite() {
                z[i] = z[i].sub(w);
                worst = worst.max(w.abs() / z[i].abs().max(1e-300));
            }
        }
        if worst < 1e-14 {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    z
}

fn eval_exact(c: &[Dyadic], z: &DComplex) -> DComplex {
    let mut acc = DComplex::zero();
    for a in c.iter().rev() {
        acc = acc.mul(z);
        acc.re = &acc.re + a;
    }
    acc
}

fn recip(z: &DComplex, prec: u32) -> Option<DComplex> {
    (!z.is_zero()).then(|| DComplex::one().div_approx(z, prec))
}

/// Newton-Aberth polishing at `prec` bits. Returns whether the corrections
/// fell below the working precision.
pub(crate) fn polish(f: &IntPolynomial, z: &mut [DComplex], prec: u32) -> bool {
    let c: Vec<Dyadic> = f.coeffs().iter().cloned().map(Dyadic::from_int).collect();
    let df = f.derivative();
    let dc: Vec<Dyadic> = df.coeffs().iter().cloned().map(Dyadic::from_int).collect();
    let m = z.len();
    let work = prec + 16;
    let nudge = Dyadic::one().mul_pow2(-(prec as i64) / 2);
    for _ in 0..(12 + 2 * (32 - prec.leading_zeros())) {
        let mut converged = true;
        for i in 0..m {
            let fz = eval_exact(&c, &z[i]).round(work);
            if fz.is_zero() {
                continue;
            }
            let dfz = eval_exact(&dc, &z[i]).round(work);
            let mut s = DComplex::zero();
            let mut clash = dfz.is_zero();
            for j in (0..m).filter(|&j| j != i) {
                match recip(&z[i].sub(&z[j]), work) {
                    Some(q) => s = s.add(&q),
                    None => clash = true,
                }
            }
            if clash {
                z[i] = DComplex::new(&z[i].re + &nudge, &z[i].im + &nudge);
                converged = false;
                continue;
            }
            let n = fz.div_approx(&dfz, work);
            let denom = DComplex::one().sub(&n.mul(&s)).round(work);
            let w = if denom.is_zero() { n } else { n.div_approx(&denom, work) };
            z[i] = z[i].sub(&w).round(prec);
            let scale = z[i].norm_sqr().max(Dyadic::one());
            if w.norm_sqr() > scale.mul_pow2(-2 * prec as i64 + 8) {
                converged = false;
            }
        }
        if converged {
            return true;
        }
    }
    false
}

/// Inclusion radii for every approximation, or `None` when two
/// approximations coincide.
pub(crate) fn inclusion_radii(f: &IntPolynomial, z: &[DComplex]) -> Option<Vec<Dyadic>> {
    let c: Vec<Dyadic> = f.coeffs().iter().cloned().map(Dyadic::from_int).collect();
    let m = z.len();
    let lc = c.last().expect("nonconstant").clone();
    let m2 = Dyadic::from_i64((m * m) as i64);
    let mut out = Vec::with_capacity(m);
    for i in 0..m {
        let fz = eval_exact(&c, &z[i]);
        let num = &m2 * &fz.norm_sqr();
        let mut den = &lc * &lc;
        for j in (0..m).filter(|&j| j != i) {
            den = &den * &z[i].sub(&z[j]).norm_sqr();
        }
        if den.is_zero() {
            return None;
        }
        let r2 = Dyadic::div(&num, &den, 64, Round::Up);
        out.push(Dyadic::sqrt(&r2, 64, Round::Up));
    }
    Some(out)
}

/// Whether closed disks `(c1, r1)` and `(c2, r2)` are disjoint.
pub(crate) fn disjoint(c1: &DComplex, r1: &Dyadic, c2: &DComplex, r2: &Dyadic) -> bool {
    let s = r1 + r2;
    c1.sub(c2).norm_sqr() > &s * &s
}
