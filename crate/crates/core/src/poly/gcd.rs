//! Multivariate GCD over the rationals.
//!
//! Recursive primitive remainder sequences: a polynomial is viewed as
//! univariate in its highest occurring variable with coefficients in the
//! ring of the remaining variables; contents are computed recursively.
//! Adequate for the small degrees this crate manipulates (the command line
//! caps degrees at 64 by default).

use super::Poly;

/// Monic greatest common divisor (lexicographic leading coefficient 1).
/// `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    assert_eq!(a.nvars(), b.nvars());
    let n = a.nvars();
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(n);
    }
    let v = (0..n)
        .rev()
        .find(|&v| a.degree_in(v) > 0 || b.degree_in(v) > 0)
        .expect("non-constant polynomial has a variable");
    if a.degree_in(v) == 0 {
        return gcd(a, &content_in(b, v));
    }
    if b.degree_in(v) == 0 {
        return gcd(&content_in(a, v), b);
    }

    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd(&ca, &cb);
    let mut f = primitive_part_with(a, &ca);
    let mut g = primitive_part_with(b, &cb);
    if f.degree_in(v) < g.degree_in(v) {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        let r = pseudo_rem(&f, &g, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            return c.monic();
        }
        f = g;
        g = primitive_part(&r, v);
    }
    (&c * &primitive_part(&g, v)).monic()
}

/// GCD of the coefficients of `p` viewed as a polynomial in `x_v`.
pub(crate) fn content_in(p: &Poly, v: usize) -> Poly {
    let mut acc = Poly::zero(p.nvars());
    for c in p.coeffs_in(v) {
        if c.is_zero() {
            continue;
        }
        acc = gcd(&acc, &c);
        if acc.is_constant() {
            return Poly::one(p.nvars());
        }
    }
    acc
}

fn primitive_part_with(p: &Poly, content: &Poly) -> Poly {
    p.div_exact(content)
        .expect("content divides the polynomial")
        .monic()
}

pub(crate) fn primitive_part(p: &Poly, v: usize) -> Poly {
    primitive_part_with(p, &content_in(p, v))
}

/// Sparse pseudo-remainder of `f` by `g` in `x_v` (a nonzero multiple of
/// the true remainder, which is all a primitive sequence needs).
fn pseudo_rem(f: &Poly, g: &Poly, v: usize) -> Poly {
    let n = f.nvars();
    let dg = g.degree_in(v);
    let lcg = g.lc_in(v);
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(v) >= dg {
        let dr = r.degree_in(v);
        let lcr = r.lc_in(v);
        let mut e = vec![0; n];
        e[v] = dr - dg;
        let shift = Poly::monomial(n, e, num_traits::One::one());
        r = &(&r * &lcg) - &(&(&lcr * &shift) * g);
    }
    r
}
