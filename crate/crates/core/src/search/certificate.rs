use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::bfs::reversed_modulus;
use super::store::VertexStore;
use super::{residue_step, Residue};
use crate::dyadic::Dyadic;
use crate::roots::{build_bound_table, isolate_roots, BoundVerdict, START_PRECISION};
use crate::{IntPolynomial, Result};

/// Closed vertex set of the `delta = 0` graph with no path to `0`.
///
/// Every transition from a stored vertex lands in the set or is out of
/// bounds, and no transition reaches `0`. The graph may be that of the
/// reversed modulus, whose multiples are the reversed multiples.
#[derive(Debug, Clone)]
pub struct ExhaustionCertificate {
    store: VertexStore,
    starts: Vec<i64>,
    digits: Vec<i64>,
    nonzero_final: bool,
    reciprocal: bool,
    pub zero_unreached: bool,
}

impl ExhaustionCertificate {
    pub(crate) fn new(
        store: VertexStore,
        starts: Vec<i64>,
        digits: Vec<i64>,
        nonzero_final: bool,
        reciprocal: bool,
    ) -> Self {
        ExhaustionCertificate { store, starts, digits, nonzero_final, reciprocal, zero_unreached: true }
    }

    pub fn vertex_count(&self) -> usize {
        self.store.count()
    }

    /// The stored graph belongs to the reversed modulus.
    pub fn reciprocal(&self) -> bool {
        self.reciprocal
    }

    pub fn starts(&self) -> &[i64] {
        &self.starts
    }

    pub fn digits(&self) -> &[i64] {
        &self.digits
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        (0..self.store.count() as u32).map(|id| self.store.get(id))
    }

    /// Independent re-check: rebuilds the vertex set in an ordered set, steps
    /// every transition with exact big-integer arithmetic and proves each
    /// transition leaving the set out of bounds with exact dyadic evaluation
    /// on freshly isolated roots. `p` is the polynomial the search was asked
    /// about; the reversed modulus is derived from it when needed.
    pub fn replay(&self, p: &IntPolynomial) -> Result<bool> {
        let p = &if self.reciprocal {
            match reversed_modulus(p) {
                Some(q) => q,
                None => return Ok(false),
            }
        } else {
            p.clone()
        };
        let n = self.store.residue_len();
        if p.degree() != Some(n) {
            return Ok(false);
        }
        let set: BTreeSet<Residue> = self.vertices().map(|v| Residue::from_i64s(&v)).collect();
        if set.len() != self.store.count() {
            return Ok(false);
        }
        if !self.starts.iter().all(|&a| set.contains(&Residue::constant(n, a))) {
            return Ok(false);
        }
        let b = self.digits.iter().map(|d| d.abs()).max().unwrap_or(0);
        let rs = isolate_roots(p, START_PRECISION)?;
        let coarse = build_bound_table(&rs, &Dyadic::from_i64(b))?;
        if !coarse.excluded().is_empty() {
            return Ok(false);
        }
        let mut fine = None;
        for r in &set {
            for &d in &self.digits {
                let s = residue_step(r, d, p)?;
                if s.is_zero() {
                    if self.nonzero_final && d == 0 {
                        continue;
                    }
                    return Ok(false);
                }
                if set.contains(&s) {
                    continue;
                }
                let digit_const = s.coeffs[1..].iter().all(Zero::is_zero) && self.digits.iter().any(|&x| BigInt::from(x) == s.coeffs[0]);
                if digit_const {
                    return Ok(false);
                }
                let Some(c) = s.to_i64s() else { return Ok(false) };
                if coarse.within_bounds_exact(&c) == BoundVerdict::Out {
                    continue;
                }
                if fine.is_none() {
                    fine = Some(build_bound_table(&rs.refine(), &Dyadic::from_i64(b))?);
                }
                let t = fine.as_ref().expect("just built");
                if t.within_bounds_exact(&c) != BoundVerdict::Out {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
