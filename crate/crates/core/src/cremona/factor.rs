use super::plane_map::{compose, format_point, normalize_point, PlaneMap, Point};
use super::trace::{FactorizationTrace, Step};
use crate::error::{Error, Result};
use crate::exact::{self, Rational};
use crate::poly::univariate::rational_roots;
use crate::poly::{gcd, Poly};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// A proper base point with its expected multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasePoint {
    #[serde(with = "exact::rational_vec")]
    pub coords: Vec<Rational>,
    pub mult: u32,
}

impl BasePoint {
    pub fn new(coords: [i64; 3], mult: u32) -> BasePoint {
        BasePoint {
            coords: coords
                .iter()
                .map(|&x| Rational::from_integer(x.into()))
                .collect(),
            mult,
        }
    }

    fn point(&self) -> Result<Point> {
        if self.coords.len() != 3 || self.coords.iter().all(|x| x.is_zero()) {
            return Err(Error::InvalidInput(
                "a base point needs three coordinates, not all zero".into(),
            ));
        }
        Ok(normalize_point(&[
            self.coords[0].clone(),
            self.coords[1].clone(),
            self.coords[2].clone(),
        ]))
    }
}

fn det(m: &[[Rational; 3]; 3]) -> Rational {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

fn adjugate(m: &[[Rational; 3]; 3]) -> [[Rational; 3]; 3] {
    let c = |i: usize, j: usize| {
        let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
        let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
        &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0]
    };
    // adj = transpose of the cofactor matrix
    [0, 1, 2].map(|i| [0, 1, 2].map(|j| c(j, i)))
}

fn mat_vec(m: &[[Rational; 3]; 3], v: &Point) -> Point {
    [0, 1, 2].map(|i| &m[i][0] * &v[0] + &m[i][1] * &v[1] + &m[i][2] * &v[2])
}

fn columns(ps: &[Point; 3]) -> [[Rational; 3]; 3] {
    [0, 1, 2].map(|i| [0, 1, 2].map(|j| ps[j][i].clone()))
}

fn unit(i: usize) -> Point {
    [0, 1, 2].map(|j| {
        if i == j {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

fn int_point(v: [i64; 3]) -> Point {
    v.map(|x| Rational::from_integer(x.into()))
}

/// Rational base points on the line `x_i = 0`: rational roots of the gcd of
/// the restricted components.
fn base_points_on_coordinate_line(g: &PlaneMap, i: usize) -> Vec<Point> {
    let others: Vec<usize> = (0..3).filter(|&j| j != i).collect();
    let restricted: Vec<Poly> = g
        .components()
        .iter()
        .map(|p| {
            Poly::from_terms(
                2,
                p.terms()
                    .filter(|(e, _)| e[i] == 0)
                    .map(|(e, c)| (vec![e[others[0]], e[others[1]]], c.clone())),
            )
        })
        .collect();
    let h = restricted
        .iter()
        .filter(|p| !p.is_zero())
        .fold(Poly::zero(2), |acc, p| {
            if acc.is_zero() {
                p.clone()
            } else {
                gcd(&acc, p)
            }
        });
    let Some(d) = h.total_degree() else {
        return Vec::new();
    };
    if d == 0 {
        return Vec::new();
    }
    let lift = |u: Rational, v: Rational| {
        let mut p = [Rational::zero(), Rational::zero(), Rational::zero()];
        p[others[0]] = u;
        p[others[1]] = v;
        normalize_point(&p)
    };
    let mut out = Vec::new();
    if h.coefficient(&[d, 0]).is_zero() {
        out.push(lift(Rational::one(), Rational::zero()));
    }
    let uni: Vec<Rational> = (0..=d).map(|k| h.coefficient(&[k, d - k])).collect();
    for (r, _) in rational_roots(&uni).0 {
        out.push(lift(r, Rational::one()));
    }
    out
}

/// Small points tried in turn as the general points of an elementary
/// transformation.
fn auxiliary_points() -> impl Iterator<Item = Point> {
    (1i64..).map(|t| int_point([1, t + 1, t * t + 2 * t - 5]))
}

fn collinear(ps: &[Point; 3]) -> bool {
    det(&columns(ps)).is_zero()
}

fn push_unique(pts: &mut Vec<(Point, u32)>, p: Point, m: u32) {
    if !pts.iter().any(|(q, _)| *q == p) {
        pts.push((p, m));
    }
}

/// Factors a plane Cremona map into quadratic maps based at triples of
/// points and a final linear map. Returns the trace and the maps in order
/// of application: `f = L ∘ q_k ∘ ... ∘ q_1`.
///
/// When fewer than three proper base points carry enough multiplicity
/// (base points infinitely near each other), the untwist is centred at the
/// proper points plus general auxiliary points, which makes the infinitely
/// near points proper on the next map.
pub fn factor_map(
    f: &PlaneMap,
    base_points: &[BasePoint],
) -> Result<(FactorizationTrace, Vec<PlaneMap>)> {
    let mut pts: Vec<(Point, u32)> = Vec::new();
    for bp in base_points {
        let p = bp.point()?;
        let actual = f.multiplicity_at(&p);
        if actual != bp.mult {
            return Err(Error::BadCluster(format!(
                "the map has multiplicity {actual} at {}, not {}",
                format_point(&p),
                bp.mult
            )));
        }
        if pts.iter().any(|(q, _)| *q == p) {
            return Err(Error::BadCluster(format!(
                "{} is listed twice",
                format_point(&p)
            )));
        }
        if bp.mult > 0 {
            pts.push((p, bp.mult));
        }
    }

    let mut g = f.clone();
    let mut maps = Vec::new();
    let mut steps = Vec::new();
    let mut degrees = vec![g.degree() as u64];
    let limit = 2 * g.degree() as usize + 8;
    let sigma = PlaneMap::standard();

    while g.degree() > 1 {
        if maps.len() >= limit {
            return Err(Error::PositionFailure(format!(
                "no untwist of {g} within {limit} quadratic steps"
            )));
        }
        pts.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        let n = g.degree();
        let top: u32 = pts.iter().take(3).map(|(_, m)| m).sum();
        let proper: Vec<(Point, u32)> = if pts.len() >= 3 && top > n {
            pts[..3].to_vec()
        } else {
            pts.iter().take(2).cloned().collect()
        };
        if proper.is_empty() {
            return Err(Error::PositionFailure(format!(
                "no proper base point of {g} found"
            )));
        }
        if proper.len() == 3
            && collinear(&[
                proper[0].0.clone(),
                proper[1].0.clone(),
                proper[2].0.clone(),
            ])
        {
            return Err(Error::PositionFailure(format!(
                "base points {}, {}, {} are collinear",
                format_point(&proper[0].0),
                format_point(&proper[1].0),
                format_point(&proper[2].0)
            )));
        }

        let mut aux = auxiliary_points();
        let mut attempt = 0;
        let (chosen, q, next) = loop {
            attempt += 1;
            if attempt > 64 {
                return Err(Error::PositionFailure(format!(
                    "no general auxiliary points for {g}"
                )));
            }
            let mut chosen = proper.clone();
            while chosen.len() < 3 {
                let p = aux.next().unwrap();
                if g.multiplicity_at(&p) == 0 && !chosen.iter().any(|(c, _)| *c == p) {
                    chosen.push((p, 0));
                }
            }
            let triple = [
                chosen[0].0.clone(),
                chosen[1].0.clone(),
                chosen[2].0.clone(),
            ];
            if collinear(&triple) {
                continue;
            }
            let a = columns(&triple);
            let q = compose(&sigma, &PlaneMap::linear(&adjugate(&a))?)?;
            let next = compose(&compose(&g, &PlaneMap::linear(&a)?)?, &sigma)?;
            let sum: u32 = chosen.iter().map(|(_, m)| m).sum();
            if next.degree() as i64 == 2 * n as i64 - sum as i64 {
                break (chosen, q, next);
            }
            if proper.len() == 3 {
                return Err(Error::PositionFailure(format!(
                    "untwist of {g} has degree {}, expected {}",
                    next.degree(),
                    2 * n as i64 - sum as i64
                )));
            }
        };

        // images of the unused points, the three vertices, and whatever
        // became proper on the contracted lines
        let a = columns(&[
            chosen[0].0.clone(),
            chosen[1].0.clone(),
            chosen[2].0.clone(),
        ]);
        let adj = adjugate(&a);
        let mut candidates: Vec<Point> = Vec::new();
        for (p, _) in &pts {
            if chosen.iter().any(|(c, _)| c == p) {
                continue;
            }
            let v = mat_vec(&adj, p);
            if v.iter().all(|x| !x.is_zero()) {
                candidates.push(normalize_point(&[
                    &v[1] * &v[2],
                    &v[0] * &v[2],
                    &v[0] * &v[1],
                ]));
            }
        }
        for i in 0..3 {
            candidates.push(unit(i));
            candidates.extend(base_points_on_coordinate_line(&next, i));
        }
        let mut new_pts = Vec::new();
        for p in candidates {
            let m = next.multiplicity_at(&p);
            if m > 0 {
                push_unique(&mut new_pts, p, m);
            }
        }
        new_pts.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));

        steps.push(Step::QuadraticCremona {
            points: chosen.iter().map(|(p, _)| format_point(p)).collect(),
            mults: chosen.iter().map(|(_, m)| *m as u64).collect(),
            degree_before: n as u64,
            degree_after: next.degree() as u64,
            remaining: new_pts.iter().map(|(_, m)| *m as u64).collect(),
        });
        degrees.push(next.degree() as u64);
        maps.push(q);
        g = next;
        pts = new_pts;
    }

    steps.push(Step::Linear);
    maps.push(g);

    let mut total = maps[0].clone();
    for m in &maps[1..] {
        total = compose(m, &total)?;
    }
    if total != *f {
        return Err(Error::PositionFailure(
            "the factors do not compose back to the map".into(),
        ));
    }
    Ok((
        FactorizationTrace {
            start: None,
            steps,
            degrees,
        },
        maps,
    ))
}
