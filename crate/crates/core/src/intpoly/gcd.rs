use alloc::vec::Vec;

use num_integer::Integer;

use super::IntPolynomial;

/// gcd in `Z[X]` by the primitive remainder sequence. The result has a
/// positive leading coefficient (or is zero when both inputs are).
pub(super) fn gcd(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    if a.is_zero() {
        return b.primitive_part().scale(&b.content());
    }
    if b.is_zero() {
        return a.primitive_part().scale(&a.content());
    }
    let cont = a.content().gcd(&b.content());
    let (mut x, mut y) = if a.degree() >= b.degree() {
        (a.primitive_part(), b.primitive_part())
    } else {
        (b.primitive_part(), a.primitive_part())
    };
    while !y.is_zero() {
        let r = x.pseudo_rem(&y).expect("nonzero divisor");
        x = y;
        y = r.primitive_part();
    }
    x.primitive_part().scale(&cont)
}

pub(super) fn squarefree_decomposition(p: &IntPolynomial) -> Vec<(IntPolynomial, u32)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let a = p.primitive_part();
    let da = a.derivative();
    let c = gcd(&a, &da).primitive_part();
    let mut w = a.exact_div(&c).expect("gcd divides");
    let mut y = da.exact_div(&c).expect("gcd divides derivative");
    let mut z = &y - &w.derivative();
    let mut i = 1u32;
    while w.degree().unwrap_or(0) > 0 {
        let g = gcd(&w, &z).primitive_part();
        if g.degree().unwrap_or(0) > 0 {
            out.push((g.clone(), i));
        }
        w = w.exact_div(&g).expect("gcd divides");
        y = z.exact_div(&g).expect("gcd divides");
        z = &y - &w.derivative();
        i += 1;
    }
    out
}
