use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, Zero};

use super::IntPolynomial;

fn sign_variations(signs: impl Iterator<Item = Sign>) -> usize {
    let mut last = Sign::NoSign;
    let mut count = 0;
    for s in signs.filter(|s| *s != Sign::NoSign) {
        if last != Sign::NoSign && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn sturm_chain(q: &IntPolynomial) -> Vec<IntPolynomial> {
    let mut chain = alloc::vec![q.clone(), q.derivative()];
    loop {
        let n = chain.len();
        let (a, b) = (&chain[n - 2], &chain[n - 1]);
        if b.is_zero() {
            chain.pop();
            break;
        }
        let mut r = a.pseudo_rem(b).expect("nonzero");
        // prem multiplies by lc(b)^(da-db+1); undo a negative factor
        let k = a.degree().unwrap_or(0) + 1 - b.degree().unwrap_or(0);
        if b.leading().is_some_and(Signed::is_negative) && k % 2 == 1 {
            r = -&r;
        }
        if r.is_zero() {
            break;
        }
        let c = r.content();
        let r = IntPolynomial::new(r.coeffs.iter().map(|x| -(x / &c)).collect());
        chain.push(r);
    }
    chain
}

/// Number of distinct roots in `(0, inf)`, by a Sturm chain in exact
/// integer arithmetic.
pub fn count_positive_real_roots(p: &IntPolynomial) -> usize {
    assert!(!p.is_zero(), "positive roots of the zero polynomial");
    let low = p.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let q = IntPolynomial::new(p.coeffs[low..].to_vec()).squarefree_part();
    if q.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let chain = sturm_chain(&q);
    let at_zero = sign_variations(chain.iter().map(|s| s.coeff(0).sign()));
    let at_inf = sign_variations(
        chain
            .iter()
            .map(|s| s.leading().map_or(Sign::NoSign, BigInt::sign)),
    );
    at_zero - at_inf
}

pub fn has_positive_real_root(p: &IntPolynomial) -> bool {
    count_positive_real_roots(p) > 0
}
