use super::cluster::{BlowupCluster, ClusterPoint};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::poly::univariate::{degree, is_squarefree, rational_roots};
use crate::poly::{gcd, Poly};
use num_traits::Zero;

pub const DEFAULT_DEPTH: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Axis {
    /// the curve `u = 0`
    U,
    /// the curve `v = 0`
    V,
}

struct Resolver {
    points: Vec<ClusterPoint>,
    limit: usize,
}

fn shift_v(g: &Poly, c: &Rational) -> Poly {
    if c.is_zero() {
        return g.clone();
    }
    g.substitute(&[
        Poly::var(2, 0),
        &Poly::var(2, 1) + &Poly::constant(2, c.clone()),
    ])
}

impl Resolver {
    /// `g` is the strict transform in local coordinates `(u, v)` at a point
    /// it passes through; `exc` lists the exceptional curves through the
    /// point as coordinate axes.
    fn visit(&mut self, g: &Poly, exc: &[(usize, Axis)], depth: usize) -> Result<()> {
        let m = g.order().expect("strict transform is nonzero");
        debug_assert!(m > 0);
        if m == 1 {
            match exc {
                [] => return Ok(()),
                [(_, axis)] => {
                    // transversal iff the restriction to the axis has a simple zero
                    let on_axis = Poly::from_terms(
                        2,
                        g.terms()
                            .filter(|(e, _)| {
                                if *axis == Axis::U {
                                    e[0] == 0
                                } else {
                                    e[1] == 0
                                }
                            })
                            .map(|(e, c)| (e.clone(), c.clone())),
                    );
                    if on_axis.order() == Some(1) {
                        return Ok(());
                    }
                }
                _ => {}
            }
        }
        if depth >= self.limit {
            return Err(Error::DepthExceeded(self.limit));
        }
        let id = self.points.len();
        let mut proximity: Vec<usize> = exc.iter().map(|(i, _)| *i).collect();
        proximity.sort_unstable();
        self.points.push(ClusterPoint { proximity, mult: m });

        let old_u = exc.iter().find(|(_, a)| *a == Axis::U).map(|(i, _)| *i);
        let old_v = exc.iter().find(|(_, a)| *a == Axis::V).map(|(i, _)| *i);

        // tangent cone h(u, v); directions v = c u, and u = 0 (c infinite)
        let h = g.homogeneous_part(m);
        let slope: Vec<Rational> = (0..=m).map(|k| h.coefficient(&[m - k, k])).collect();
        let (roots, rest) = rational_roots(&slope);
        if degree(&rest).unwrap_or(0) > 0 && !is_squarefree(&rest) {
            return Err(Error::IrrationalTangent(format!(
                "repeated irrational tangent of {}",
                h.to_string_with(&["u", "v"])
            )));
        }

        // chart v = u t: E is u = 0, the old v = 0 passes through t = 0
        let chart1 = g.substitute(&[Poly::var(2, 0), &Poly::var(2, 0) * &Poly::var(2, 1)]);
        let chart1 = chart1
            .div_monomial(&[m, 0])
            .expect("u^m divides the total transform");
        for (c, _) in roots {
            let local = shift_v(&chart1, &c);
            let mut next = vec![(id, Axis::U)];
            if c.is_zero() {
                if let Some(j) = old_v {
                    next.push((j, Axis::V));
                }
            }
            self.visit(&local, &next, depth + 1)?;
        }

        // chart u = u' v at the direction u = 0: E is v = 0
        if h.coefficient(&[0, m]).is_zero() {
            let chart2 = g.substitute(&[&Poly::var(2, 0) * &Poly::var(2, 1), Poly::var(2, 1)]);
            let chart2 = chart2
                .div_monomial(&[0, m])
                .expect("v^m divides the total transform");
            let mut next = vec![(id, Axis::V)];
            if let Some(j) = old_u {
                next.push((j, Axis::U));
            }
            self.visit(&chart2, &next, depth + 1)?;
        }
        Ok(())
    }
}

/// Minimal embedded resolution of the germ of `f(x, y) = 0` at the origin,
/// by point blow-ups in affine charts until the total transform has normal
/// crossings.
pub fn resolve_plane_curve(f: &Poly, depth_limit: usize) -> Result<BlowupCluster> {
    if f.nvars() != 2 {
        return Err(Error::InvalidInput(
            "the curve must be a polynomial in x and y".into(),
        ));
    }
    if f.is_zero() {
        return Err(Error::InvalidInput(
            "the zero polynomial defines no curve".into(),
        ));
    }
    if f.order() == Some(0) {
        return Err(Error::InvalidInput(
            "the curve does not pass through the origin".into(),
        ));
    }
    let common = gcd(&gcd(f, &f.derivative(0)), &f.derivative(1));
    if common.order() != Some(0) {
        return Err(Error::NotIsolated);
    }
    let mut r = Resolver {
        points: Vec::new(),
        limit: depth_limit,
    };
    r.visit(f, &[], 0)?;
    BlowupCluster::new(r.points)
}
