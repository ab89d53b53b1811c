//! Certified complex root enclosures, unit-circle status of each root, the
//! derivative bound table used to prune residues, and Salem-type
//! classification.
//!
//! Each squarefree factor `f` of the input is split as `u = gcd(f, f*)` and
//! `v = f / u`. Every unimodular root of `f` is a root of `u`, so roots of
//! `v` always resolve to inside or outside under refinement. Roots of `u` are
//! proven unimodular when the disk's image under `z -> 1/conj(z)` meets no
//! other disk of `u`: that image holds the root `1/conj(alpha)` of `u`,
//! which must then be `alpha` itself.

mod aberth;
mod bounds;

use alloc::vec::Vec;

use num_traits::Zero;

pub use bounds::{build_bound_table, BoundTable, BoundVerdict};

use crate::dyadic::{DComplex, Dyadic, Round};
use crate::{Error, IntPolynomial, Result};

pub const START_PRECISION: u32 = 64;
pub const MAX_PRECISION: u32 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CircleStatus {
    Inside,
    Outside,
    OnCircle,
    Undecided,
}

impl CircleStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CircleStatus::Inside => "inside",
            CircleStatus::Outside => "outside",
            CircleStatus::OnCircle => "on_circle",
            CircleStatus::Undecided => "undecided",
        }
    }
}

/// Closed disk holding exactly one distinct root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootBall {
    pub center: DComplex,
    pub radius: Dyadic,
    pub multiplicity: u32,
    pub circle_status: CircleStatus,
    /// The root divides `gcd(p, p*)`, so it may lie on the unit circle.
    pub unimodular_candidate: bool,
    piece: usize,
}

impl RootBall {
    /// The disk is certainly off the real axis.
    pub fn is_nonreal(&self) -> bool {
        self.center.im.abs() > self.radius
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Piece {
    poly: IntPolynomial,
    multiplicity: u32,
    candidate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    pub poly: IntPolynomial,
    pub balls: Vec<RootBall>,
    pub precision_bits: u32,
    pieces: Vec<Piece>,
}

/// Primitive common factor of `p` and its reciprocal; holds every root of
/// modulus one.
pub fn unimodular_part(p: &IntPolynomial) -> IntPolynomial {
    let rec = p.reciprocal().expect("unimodular_part needs p(0) != 0");
    p.gcd(&rec).primitive_part()
}

fn split_pieces(p: &IntPolynomial) -> (u32, Vec<Piece>) {
    let mut q = p.clone();
    let mut zeros = 0;
    while !q.is_zero() && q.constant_term().is_zero() {
        q = q.exact_div(&IntPolynomial::monomial(1)).expect("X divides");
        zeros += 1;
    }
    let mut pieces = Vec::new();
    if q.degree().unwrap_or(0) == 0 {
        return (zeros, pieces);
    }
    for (f, mult) in q.squarefree_decomposition() {
        if f.degree().unwrap_or(0) == 0 {
            continue;
        }
        let u = unimodular_part(&f);
        let v = f.exact_div(&u).expect("gcd divides").primitive_part();
        for (poly, candidate) in [(u, true), (v, false)] {
            if poly.degree().unwrap_or(0) > 0 {
                pieces.push(Piece { poly, multiplicity: mult, candidate });
            }
        }
    }
    (zeros, pieces)
}

fn approximate(pieces: &[Piece], seeds: Option<&[RootBall]>, prec: u32) -> Vec<Vec<DComplex>> {
    pieces
        .iter()
        .enumerate()
        .map(|(k, piece)| {
            let mut z: Vec<DComplex> = match seeds {
                Some(balls) => balls.iter().filter(|b| b.piece == k).map(|b| b.center.clone()).collect(),
                None => aberth::aberth_f64(&piece.poly)
                    .iter()
                    .map(|c| DComplex::from_f64(c.re, c.im))
                    .collect(),
            };
            aberth::polish(&piece.poly, &mut z, prec);
            z
        })
        .collect()
}

fn certify(pieces: &[Piece], approx: Vec<Vec<DComplex>>) -> Option<Vec<RootBall>> {
    let mut balls = Vec::new();
    for (k, (piece, z)) in pieces.iter().zip(approx).enumerate() {
        let radii = aberth::inclusion_radii(&piece.poly, &z)?;
        for (center, radius) in z.into_iter().zip(radii) {
            balls.push(RootBall {
                center,
                radius,
                multiplicity: piece.multiplicity,
                circle_status: CircleStatus::Undecided,
                unimodular_candidate: piece.candidate,
                piece: k,
            });
        }
    }
    for i in 0..balls.len() {
        for j in i + 1..balls.len() {
            if !aberth::disjoint(&balls[i].center, &balls[i].radius, &balls[j].center, &balls[j].radius) {
                return None;
            }
        }
    }
    Some(balls)
}

fn plain_status(c: &DComplex, r: &Dyadic) -> CircleStatus {
    let c2 = c.norm_sqr();
    let one = Dyadic::one();
    if *r < one {
        let m = &one - r;
        if c2 < &m * &m {
            return CircleStatus::Inside;
        }
    }
    let p = &one + r;
    if c2 > &p * &p {
        return CircleStatus::Outside;
    }
    CircleStatus::Undecided
}

/// The image of ball `i` under `z -> 1/conj(z)` avoids every other ball of
/// the same piece.
fn inversion_fixed(balls: &[RootBall], i: usize) -> bool {
    let b = &balls[i];
    let m = &b.center.norm_sqr() - &(&b.radius * &b.radius);
    if !m.is_positive() {
        return false;
    }
    balls.iter().enumerate().filter(|&(j, o)| j != i && o.piece == b.piece).all(|(_, o)| {
        let d = b.center.sub(&o.center.scale(&m));
        let s = &b.radius + &(&m * &o.radius);
        d.norm_sqr() > &s * &s
    })
}

/// The conjugate of ball `i` avoids every other ball of the same piece, so
/// its root is real.
fn conjugation_fixed(balls: &[RootBall], i: usize) -> bool {
    let b = &balls[i];
    let cc = b.center.conj();
    balls
        .iter()
        .enumerate()
        .filter(|&(j, o)| j != i && o.piece == b.piece)
        .all(|(_, o)| aberth::disjoint(&cc, &b.radius, &o.center, &o.radius))
}

fn update_statuses(balls: &mut [RootBall]) {
    for i in 0..balls.len() {
        if balls[i].circle_status != CircleStatus::Undecided {
            continue;
        }
        let mut st = plain_status(&balls[i].center, &balls[i].radius);
        if st == CircleStatus::Undecided && balls[i].unimodular_candidate && inversion_fixed(balls, i) {
            st = CircleStatus::OnCircle;
        }
        balls[i].circle_status = st;
    }
}

impl RootSystem {
    /// Disjoint certified disks at the first precision (from `precision_bits`,
    /// doubling up to the cap) where isolation succeeds.
    pub fn isolate(p: &IntPolynomial, precision_bits: u32) -> Result<RootSystem> {
        assert!(p.degree().unwrap_or(0) >= 1, "isolate_roots needs a nonconstant polynomial");
        let (zeros, pieces) = split_pieces(p);
        let mut prec = precision_bits.clamp(START_PRECISION, MAX_PRECISION);
        loop {
            if let Some(mut balls) = certify(&pieces, approximate(&pieces, None, prec)) {
                if zeros > 0 {
                    balls.push(RootBall {
                        center: DComplex::zero(),
                        radius: Dyadic::zero(),
                        multiplicity: zeros,
                        circle_status: CircleStatus::Inside,
                        unimodular_candidate: false,
                        piece: usize::MAX,
                    });
                }
                update_statuses(&mut balls);
                return Ok(RootSystem { poly: p.clone(), balls, precision_bits: prec, pieces });
            }
            if prec >= MAX_PRECISION {
                return Err(Error::PrecisionExhausted(MAX_PRECISION));
            }
            prec = (prec * 2).min(MAX_PRECISION);
        }
    }

    /// One doubling of precision. A new disk replaces an old one only when it
    /// lies inside it, so radii never grow and resolved statuses stay put.
    pub fn refine(&self) -> RootSystem {
        if self.precision_bits >= MAX_PRECISION {
            return self.clone();
        }
        let prec = (self.precision_bits * 2).min(MAX_PRECISION);
        let approx = approximate(&self.pieces, Some(&self.balls), prec);
        let mut balls = self.balls.clone();
        for (k, (piece, z)) in self.pieces.iter().zip(approx).enumerate() {
            let radii = aberth::inclusion_radii(&piece.poly, &z);
            let old: Vec<usize> = (0..balls.len()).filter(|&i| balls[i].piece == k).collect();
            debug_assert_eq!(old.len(), z.len());
            let Some(radii) = radii else { continue };
            for ((i, c), r) in old.into_iter().zip(z).zip(radii) {
                let b = &balls[i];
                let gap = c.sub(&b.center).norm_sqr();
                let room = &b.radius - &r;
                if !room.is_negative() && gap <= &room * &room {
                    balls[i].center = c;
                    balls[i].radius = r;
                }
            }
        }
        update_statuses(&mut balls);
        RootSystem { poly: self.poly.clone(), balls, precision_bits: prec, pieces: self.pieces.clone() }
    }

    /// Refine until every status is decided or the precision cap is hit.
    pub fn resolve(&self) -> RootSystem {
        let mut rs = self.clone();
        while rs.has_undecided() && rs.precision_bits < MAX_PRECISION {
            rs = rs.refine();
        }
        rs
    }

    pub fn has_undecided(&self) -> bool {
        self.balls.iter().any(|b| b.circle_status == CircleStatus::Undecided)
    }

    /// Balls left out of bound checks: proven unimodular, or unimodular
    /// candidates still undecided.
    pub fn excluded(&self) -> Vec<usize> {
        (0..self.balls.len())
            .filter(|&i| {
                let b = &self.balls[i];
                b.circle_status == CircleStatus::OnCircle
                    || (b.circle_status == CircleStatus::Undecided && b.unimodular_candidate)
            })
            .collect()
    }

    /// Whether the root in ball `i` is certainly real.
    pub fn is_real(&self, i: usize) -> bool {
        let b = &self.balls[i];
        b.piece == usize::MAX || (!b.is_nonreal() && conjugation_fixed(&self.balls, i))
    }

    pub fn multiplicity_total(&self) -> u64 {
        self.balls.iter().map(|b| b.multiplicity as u64).sum()
    }
}

pub fn isolate_roots(p: &IntPolynomial, precision_bits: u32) -> Result<RootSystem> {
    RootSystem::isolate(p, precision_bits)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SalemKind {
    Salem,
    NegativeSalem,
    ComplexSalem,
    None,
}

impl SalemKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SalemKind::Salem => "salem",
            SalemKind::NegativeSalem => "negative_salem",
            SalemKind::ComplexSalem => "complex_salem",
            SalemKind::None => "none",
        }
    }
}

/// Root-pattern classification. Irreducibility is not checked.
pub fn classify_salem(p: &IntPolynomial) -> Result<SalemKind> {
    if p.degree().unwrap_or(0) == 0 {
        return Ok(SalemKind::None);
    }
    let rs = isolate_roots(p, START_PRECISION)?.resolve();
    if rs.has_undecided() {
        return Err(Error::Undecidable);
    }
    let count = |st: CircleStatus| {
        rs.balls.iter().filter(|b| b.circle_status == st).map(|b| b.multiplicity).sum::<u32>()
    };
    if count(CircleStatus::OnCircle) == 0 {
        return Ok(SalemKind::None);
    }
    let outside: Vec<usize> = (0..rs.balls.len())
        .filter(|&i| rs.balls[i].circle_status == CircleStatus::Outside)
        .collect();
    let total: u32 = outside.iter().map(|&i| rs.balls[i].multiplicity).sum();
    match (outside.as_slice(), total) {
        (&[i], 1) => {
            if !rs.is_real(i) {
                return Err(Error::Undecidable);
            }
            Ok(if rs.balls[i].center.re.is_positive() { SalemKind::Salem } else { SalemKind::NegativeSalem })
        }
        (&[i, j], 2) => {
            let (a, b) = (&rs.balls[i], &rs.balls[j]);
            if a.is_nonreal() && b.is_nonreal() {
                Ok(SalemKind::ComplexSalem)
            } else if rs.is_real(i) || rs.is_real(j) {
                Ok(SalemKind::None)
            } else {
                Err(Error::Undecidable)
            }
        }
        _ => Ok(SalemKind::None),
    }
}

/// One exported ball, with the radius rounded up.
#[derive(Debug, Clone, PartialEq)]
pub struct RootRecord {
    pub re: f64,
    pub im: f64,
    pub radius: f64,
    pub multiplicity: u32,
    pub circle_status: CircleStatus,
}

pub fn export_roots(rs: &RootSystem) -> Vec<RootRecord> {
    let mut out: Vec<RootRecord> = rs
        .balls
        .iter()
        .map(|b| RootRecord {
            re: b.center.re.to_f64(),
            im: b.center.im.to_f64(),
            // the float centre is off by at most one ulp per part
            radius: (&b.radius
                + &Dyadic::div(
                    &(&b.center.re.abs() + &b.center.im.abs()),
                    &Dyadic::from_i64(1 << 52),
                    64,
                    Round::Up,
                ))
                .to_f64_up(),
            multiplicity: b.multiplicity,
            circle_status: b.circle_status,
        })
        .collect();
    out.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    out
}
