//! Dense univariate polynomials over the rationals (index = degree), used
//! for tangent-cone directions and base points on lines.

use crate::exact::Rational;
use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

pub type UPoly = Vec<Rational>;

pub fn trim(mut p: UPoly) -> UPoly {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
    p
}

pub fn degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

pub fn derivative(p: &[Rational]) -> UPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
            .collect(),
    )
}

pub fn div_rem(a: &[Rational], b: &[Rational]) -> (UPoly, UPoly) {
    let db = degree(b).expect("division by zero polynomial");
    let mut rem = trim(a.to_vec());
    let mut quot = vec![Rational::zero(); rem.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let f = &rem[dr] / &b[db];
        for (i, c) in b.iter().enumerate().take(db + 1) {
            rem[dr - db + i] -= &f * c;
        }
        quot[dr - db] = f;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

pub fn monic(p: &[Rational]) -> UPoly {
    match degree(p) {
        None => Vec::new(),
        Some(d) => {
            let lc = p[d].clone();
            trim(p.iter().map(|c| c / &lc).collect())
        }
    }
}

pub fn gcd(a: &[Rational], b: &[Rational]) -> UPoly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while degree(&b).is_some() {
        let (_, r) = div_rem(&a, &b);
        a = b;
        b = r;
    }
    monic(&a)
}

pub fn is_squarefree(p: &[Rational]) -> bool {
    match degree(p) {
        None => false,
        Some(0) => true,
        Some(_) => degree(&gcd(p, &derivative(p))) == Some(0),
    }
}

/// Divides by `(t - root)` assuming it is a root.
fn deflate(p: &[Rational], root: &Rational) -> UPoly {
    let (q, r) = div_rem(p, &[-root.clone(), Rational::one()]);
    debug_assert!(degree(&r).is_none());
    q
}

/// Positive divisors of `|n|` (`n != 0`). Trial division up to 10^6; a
/// cofactor left after that is treated as prime.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(1_000_000u32);
    while &p * &p <= n && p <= limit {
        let mut k = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            k += 1;
        }
        if k > 0 {
            factors.push((p.clone(), k));
        }
        p += 1u32;
    }
    if n > BigInt::one() {
        factors.push((n, 1));
    }
    let mut out = vec![BigInt::one()];
    for (p, k) in factors {
        let mut next = Vec::with_capacity(out.len() * (k as usize + 1));
        for d in &out {
            let mut pk = BigInt::one();
            for _ in 0..=k {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Rational roots with multiplicities (ascending), plus the cofactor that
/// carries the irrational part.
pub fn rational_roots(p: &[Rational]) -> (Vec<(Rational, u32)>, UPoly) {
    let mut rest = trim(p.to_vec());
    let mut roots: Vec<(Rational, u32)> = Vec::new();
    if degree(&rest).is_none() {
        return (roots, rest);
    }
    let zeros = rest.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if zeros > 0 {
        roots.push((Rational::zero(), zeros as u32));
        rest = rest[zeros..].to_vec();
    }
    if degree(&rest).unwrap_or(0) == 0 {
        return (roots, rest);
    }
    let den = crate::exact::lcm_of_denominators(rest.iter());
    let ints: Vec<BigInt> = rest
        .iter()
        .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
        .collect();
    let a0 = ints[0].clone();
    let an = ints[ints.len() - 1].clone();
    let mut candidates: Vec<Rational> = Vec::new();
    for num in divisors(&a0) {
        for d in divisors(&an) {
            if num.gcd(&d).is_one() {
                candidates.push(Rational::new(num.clone(), d.clone()));
                candidates.push(Rational::new(-num.clone(), d));
            }
        }
    }
    candidates.sort();
    candidates.dedup();
    for c in candidates {
        let mut mult = 0;
        while degree(&rest).unwrap_or(0) > 0 && eval(&rest, &c).is_zero() {
            rest = deflate(&rest, &c);
            mult += 1;
        }
        if mult > 0 {
            roots.push((c, mult));
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    (roots, rest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn up(v: &[i64]) -> UPoly {
        v.iter().map(|&c| rat(c, 1)).collect()
    }

    #[test]
    fn roots_with_multiplicity() {
        // (t - 1)^2 (2t + 3) t (t^2 + 1)
        let p = [up(&[1, -2, 1]), up(&[3, 2]), up(&[0, 1]), up(&[1, 0, 1])]
            .iter()
            .fold(up(&[1]), |acc, f| {
                let mut out = vec![Rational::zero(); acc.len() + f.len() - 1];
                for (i, a) in acc.iter().enumerate() {
                    for (j, b) in f.iter().enumerate() {
                        out[i + j] += a * b;
                    }
                }
                out
            });
        let (roots, rest) = rational_roots(&p);
        assert_eq!(roots, vec![(rat(-3, 2), 1), (rat(0, 1), 1), (rat(1, 1), 2)]);
        assert_eq!(degree(&rest), Some(2));
        assert!(is_squarefree(&rest));
        assert!(!is_squarefree(&up(&[1, -2, 1])));
    }

    #[test]
    fn gcd_and_division() {
        let g = gcd(&up(&[-1, 0, 1]), &up(&[1, 2, 1]));
        assert_eq!(g, up(&[1, 1]));
        let (q, r) = div_rem(&up(&[1, 0, 0, 1]), &up(&[1, 1]));
        assert_eq!(q, up(&[1, -1, 1]));
        assert!(r.is_empty());
    }
}
