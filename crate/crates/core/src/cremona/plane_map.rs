use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, Rational};
use crate::poly::{gcd, parse_poly, Poly};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const VARS: [&str; 3] = ["x0", "x1", "x2"];

/// A projective point with exact coordinates.
pub type Point = [Rational; 3];

/// Largest degree a composed map may reach. `BIRATLAB_MAX_DEGREE`
/// overrides the default of 64.
pub fn degree_ceiling() -> u32 {
    std::env::var("BIRATLAB_MAX_DEGREE")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(64)
}

/// A rational self-map of the plane: three coprime forms of one degree,
/// scaled so the leading coefficient of the first nonzero component is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PlaneMapRepr", into = "PlaneMapRepr")]
pub struct PlaneMap {
    components: [Poly; 3],
}

#[derive(Serialize, Deserialize)]
struct PlaneMapRepr {
    components: Vec<BTreeMap<String, String>>,
}

impl From<PlaneMap> for PlaneMapRepr {
    fn from(m: PlaneMap) -> Self {
        let components = m
            .components
            .iter()
            .map(|p| {
                p.terms()
                    .map(|(e, c)| (format!("{},{},{}", e[0], e[1], e[2]), format_rational(c)))
                    .collect()
            })
            .collect();
        PlaneMapRepr { components }
    }
}

impl TryFrom<PlaneMapRepr> for PlaneMap {
    type Error = Error;

    fn try_from(r: PlaneMapRepr) -> Result<PlaneMap> {
        if r.components.len() != 3 {
            return Err(Error::InvalidInput(format!(
                "a plane map needs 3 components, got {}",
                r.components.len()
            )));
        }
        let mut comps = Vec::with_capacity(3);
        for m in &r.components {
            let mut terms = Vec::with_capacity(m.len());
            for (k, v) in m {
                let e: Vec<u32> = k
                    .split(',')
                    .map(|x| x.trim().parse::<u32>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| Error::InvalidInput(format!("bad exponent triple {k:?}")))?;
                if e.len() != 3 {
                    return Err(Error::InvalidInput(format!("bad exponent triple {k:?}")));
                }
                let c = parse_rational(v)
                    .ok_or_else(|| Error::InvalidInput(format!("bad coefficient {v:?}")))?;
                terms.push((e, c));
            }
            comps.push(Poly::from_terms(3, terms));
        }
        let [a, b, c]: [Poly; 3] = comps.try_into().unwrap();
        PlaneMap::new([a, b, c])
    }
}

fn common_factor(ps: &[Poly]) -> Poly {
    ps.iter()
        .filter(|p| !p.is_zero())
        .fold(Poly::zero(3), |g, p| {
            if g.is_zero() {
                p.clone()
            } else {
                gcd(&g, p)
            }
        })
}

impl PlaneMap {
    /// Validates, strips the common factor, and normalizes.
    pub fn new(components: [Poly; 3]) -> Result<PlaneMap> {
        if components.iter().any(|p| p.nvars() != 3) {
            return Err(Error::InvalidInput(
                "components must be forms in x0, x1, x2".into(),
            ));
        }
        if components.iter().all(|p| p.is_zero()) {
            return Err(Error::DegenerateComposition);
        }
        let mut degree = None;
        for p in components.iter().filter(|p| !p.is_zero()) {
            if !p.is_homogeneous() {
                return Err(Error::InvalidInput("components must be homogeneous".into()));
            }
            let d = p.total_degree();
            if degree.is_some() && degree != d {
                return Err(Error::InvalidInput(
                    "components must share one degree".into(),
                ));
            }
            degree = d;
        }
        let g = common_factor(&components);
        let mut comps = components;
        if !g.is_constant() {
            for p in comps.iter_mut() {
                *p = p.div_exact(&g).expect("gcd divides every component");
            }
        }
        if comps.iter().find(|p| !p.is_zero()).unwrap().total_degree() == Some(0) {
            return Err(Error::InvalidInput(
                "a constant map is not a plane map".into(),
            ));
        }
        let lead = comps
            .iter()
            .find(|p| !p.is_zero())
            .unwrap()
            .leading_term()
            .unwrap()
            .1
            .clone();
        let inv = Rational::one() / lead;
        Ok(PlaneMap {
            components: comps.map(|p| p.scale(&inv)),
        })
    }

    pub fn parse(components: &[&str]) -> Result<PlaneMap> {
        if components.len() != 3 {
            return Err(Error::InvalidInput(format!(
                "a plane map needs 3 components, got {}",
                components.len()
            )));
        }
        let a = parse_poly(components[0], &VARS)?;
        let b = parse_poly(components[1], &VARS)?;
        let c = parse_poly(components[2], &VARS)?;
        PlaneMap::new([a, b, c])
    }

    /// `x ↦ M x`.
    pub fn linear(m: &[[Rational; 3]; 3]) -> Result<PlaneMap> {
        let comps = m.clone().map(|row| {
            Poly::from_terms(
                3,
                (0..3).map(|j| {
                    let mut e = vec![0; 3];
                    e[j] = 1;
                    (e, row[j].clone())
                }),
            )
        });
        PlaneMap::new(comps)
    }

    pub fn linear_int(m: [[i64; 3]; 3]) -> Result<PlaneMap> {
        PlaneMap::linear(&m.map(|row| row.map(|x| Rational::from_integer(x.into()))))
    }

    pub fn identity() -> PlaneMap {
        PlaneMap::linear_int([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap()
    }

    /// `(x1 x2 : x0 x2 : x0 x1)`.
    pub fn standard() -> PlaneMap {
        PlaneMap::parse(&["x1*x2", "x0*x2", "x0*x1"]).unwrap()
    }

    pub fn components(&self) -> &[Poly; 3] {
        &self.components
    }

    pub fn degree(&self) -> u32 {
        self.components
            .iter()
            .filter_map(|p| p.total_degree())
            .max()
            .unwrap()
    }

    pub fn apply(&self, p: &Point) -> Point {
        [0, 1, 2].map(|i| self.components[i].eval(p))
    }

    pub fn to_strings(&self) -> [String; 3] {
        [0, 1, 2].map(|i| self.components[i].to_string_with(&VARS))
    }

    /// The linear coefficient matrix of a degree-1 map.
    pub fn matrix(&self) -> Option<[[Rational; 3]; 3]> {
        if self.degree() != 1 {
            return None;
        }
        Some([0, 1, 2].map(|i| {
            [0, 1, 2].map(|j| {
                let mut e = vec![0; 3];
                e[j] = 1;
                self.components[i].coefficient(&e)
            })
        }))
    }

    /// Multiplicity of the net at `p`: the least order of vanishing of a
    /// component after moving `p` to the origin of an affine chart.
    pub fn multiplicity_at(&self, p: &Point) -> u32 {
        let c = p
            .iter()
            .position(|x| !x.is_zero())
            .expect("projective point is nonzero");
        let images: Vec<Poly> = (0..3)
            .map(|j| {
                if j == c {
                    Poly::one(3)
                } else {
                    &Poly::var(3, j) + &Poly::constant(3, &p[j] / &p[c])
                }
            })
            .collect();
        self.components
            .iter()
            .filter(|f| !f.is_zero())
            .map(|f| f.substitute(&images).order().unwrap_or(u32::MAX))
            .min()
            .unwrap()
    }
}

impl std::fmt::Display for PlaneMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [a, b, c] = self.to_strings();
        write!(f, "({a} : {b} : {c})")
    }
}

/// `f ∘ g`, with the common factor of the substituted components removed.
pub fn compose(f: &PlaneMap, g: &PlaneMap) -> Result<PlaneMap> {
    let ceiling = degree_ceiling();
    let degree = f.degree() * g.degree();
    if degree > ceiling {
        return Err(Error::DegreeCeiling { degree, ceiling });
    }
    let comps = f.components.clone().map(|p| p.substitute(&g.components));
    if comps.iter().all(|p| p.is_zero()) {
        return Err(Error::DegenerateComposition);
    }
    PlaneMap::new(comps)
}

/// Scales a point so its first nonzero coordinate is 1.
pub fn normalize_point(p: &Point) -> Point {
    let c = p
        .iter()
        .find(|x| !x.is_zero())
        .expect("projective point is nonzero")
        .clone();
    p.clone().map(|x| x / &c)
}

pub fn format_point(p: &Point) -> String {
    let p = normalize_point(p);
    format!(
        "({}:{}:{})",
        format_rational(&p[0]),
        format_rational(&p[1]),
        format_rational(&p[2])
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_is_an_involution() {
        let s = PlaneMap::standard();
        assert_eq!(compose(&s, &s).unwrap(), PlaneMap::identity());
    }

    #[test]
    fn linear_composition_is_matrix_product() {
        let a = PlaneMap::linear_int([[1, 2, 0], [0, 1, 0], [3, 0, 1]]).unwrap();
        let b = PlaneMap::linear_int([[0, 1, 0], [1, 0, 1], [0, 0, 2]]).unwrap();
        // A*B
        let ab = PlaneMap::linear_int([[2, 1, 2], [1, 0, 1], [0, 3, 2]]).unwrap();
        assert_eq!(compose(&a, &b).unwrap(), ab);
    }

    #[test]
    fn standard_after_linear_stays_quadratic() {
        let a = PlaneMap::linear_int([[1, 2, 3], [0, 1, -1], [2, 0, 1]]).unwrap();
        assert_eq!(compose(&PlaneMap::standard(), &a).unwrap().degree(), 2);
    }

    #[test]
    fn rejects_bad_components() {
        assert!(matches!(
            PlaneMap::parse(&["x0", "x1^2", "x2"]),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            PlaneMap::parse(&["x0 + 1", "x1", "x2"]),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            PlaneMap::parse(&["0", "0", "0"]),
            Err(Error::DegenerateComposition)
        ));
        assert!(matches!(
            PlaneMap::parse(&["1", "2", "3"]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn common_factor_is_removed() {
        let m = PlaneMap::parse(&["x0^2", "x0*x1", "x0*x2"]).unwrap();
        assert_eq!(m, PlaneMap::identity());
    }

    #[test]
    fn multiplicities() {
        let s = PlaneMap::standard();
        let r = |v: [i64; 3]| v.map(|x| Rational::from_integer(x.into()));
        assert_eq!(s.multiplicity_at(&r([1, 0, 0])), 1);
        assert_eq!(s.multiplicity_at(&r([1, 1, 1])), 0);
        let ex = PlaneMap::parse(&["x1*x2", "x0*x2", "x1*x2 + x0*x2 + x0^2"]).unwrap();
        assert_eq!(ex.multiplicity_at(&r([0, 1, 0])), 1);
        assert_eq!(ex.multiplicity_at(&r([0, 0, 1])), 1);
        assert_eq!(ex.multiplicity_at(&r([1, 0, 0])), 0);
    }

    #[test]
    fn json_round_trip() {
        let m = PlaneMap::parse(&["x1*x2", "x0*x2", "x1*x2 + x0*x2 + x0^2/3"]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        let back: PlaneMap = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<PlaneMap>(r#"{"components":[{"1,0":"1"},{},{}]}"#).is_err());
    }
}
