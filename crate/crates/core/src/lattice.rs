//! Picard lattices of the plane, its blow-ups at points in general
//! position, and the Hirzebruch surfaces.
//!
//! Bases are fixed: `(H)` on the plane, `(H, E_1, ..., E_r)` on a blow-up
//! with the diagonal form `(+1, -1, ..., -1)`, and `(C_0, f)` on `F_k` with
//! `C_0^2 = -k`, `C_0.f = 1`, `f^2 = 0`. Every [`DivisorClass`] carries the
//! name of its basis so a class can never be read against the wrong model.

use crate::error::{Error, Result};
use crate::exact::{self, Integer, Rational};
use crate::mmp;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ModelKind {
    Plane,
    BlowupPlane { r: u32 },
    Hirzebruch { k: u32 },
}

fn default_true() -> bool {
    true
}

/// A rational surface presented by its Picard lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceModel {
    #[serde(flatten)]
    pub kind: ModelKind,
    /// No 3 blown-up points collinear, no 6 on a conic. Only meaningful for
    /// blow-ups.
    #[serde(default = "default_true")]
    pub general_position: bool,
}

impl SurfaceModel {
    pub fn plane() -> Self {
        SurfaceModel {
            kind: ModelKind::Plane,
            general_position: true,
        }
    }

    pub fn blowup(r: u32) -> Self {
        SurfaceModel {
            kind: ModelKind::BlowupPlane { r },
            general_position: true,
        }
    }

    pub fn blowup_special(r: u32) -> Self {
        SurfaceModel {
            kind: ModelKind::BlowupPlane { r },
            general_position: false,
        }
    }

    pub fn hirzebruch(k: u32) -> Self {
        SurfaceModel {
            kind: ModelKind::Hirzebruch { k },
            general_position: true,
        }
    }

    pub fn rank(&self) -> usize {
        match self.kind {
            ModelKind::Plane => 1,
            ModelKind::BlowupPlane { r } => r as usize + 1,
            ModelKind::Hirzebruch { .. } => 2,
        }
    }

    pub fn basis(&self) -> Basis {
        match self.kind {
            ModelKind::Plane => Basis::Plane,
            ModelKind::BlowupPlane { r } => Basis::Blowup(r),
            ModelKind::Hirzebruch { k } => Basis::Hirzebruch(k),
        }
    }

    /// Gram matrix of the intersection form in the model's basis.
    pub fn gram(&self) -> Vec<Vec<i64>> {
        match self.kind {
            ModelKind::Plane => vec![vec![1]],
            ModelKind::BlowupPlane { r } => {
                let n = r as usize + 1;
                (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| {
                                if i != j {
                                    0
                                } else if i == 0 {
                                    1
                                } else {
                                    -1
                                }
                            })
                            .collect()
                    })
                    .collect()
            }
            ModelKind::Hirzebruch { k } => vec![vec![-(k as i64), 1], vec![1, 0]],
        }
    }

    pub fn class(&self, coords: &[i64]) -> Result<DivisorClass> {
        DivisorClass::new(self, coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero_class(&self) -> DivisorClass {
        DivisorClass {
            basis: self.basis(),
            coords: vec![Integer::zero(); self.rank()],
        }
    }

    /// The i-th basis vector.
    pub fn unit(&self, i: usize) -> DivisorClass {
        let mut c = self.zero_class();
        c.coords[i] = Integer::one();
        c
    }

    /// `E_i` on a blow-up, 1-based as in the basis names.
    pub fn exceptional(&self, i: usize) -> DivisorClass {
        self.unit(i)
    }

    /// True when the effective cone is finitely generated and enumerated
    /// by this crate: the plane, every `F_k`, and blow-ups of at most 8
    /// points in general position.
    pub fn cone_supported(&self) -> Result<()> {
        match self.kind {
            ModelKind::BlowupPlane { r } if r > 8 => Err(Error::UnsupportedCone(format!(
                "blow-up of {r} points has an infinite cone of (-1)-curves"
            ))),
            ModelKind::BlowupPlane { .. } if !self.general_position => Err(Error::UnsupportedCone(
                "blow-up points are not in general position".into(),
            )),
            _ => Ok(()),
        }
    }

    pub fn label(&self) -> String {
        match self.kind {
            ModelKind::Plane => "P2".into(),
            ModelKind::BlowupPlane { r } => format!("Bl{r}"),
            ModelKind::Hirzebruch { k } => format!("F{k}"),
        }
    }
}

/// Coordinate system a class is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    Plane,
    Blowup(u32),
    Hirzebruch(u32),
}

impl Basis {
    pub fn rank(&self) -> usize {
        match *self {
            Basis::Plane => 1,
            Basis::Blowup(r) => r as usize + 1,
            Basis::Hirzebruch(_) => 2,
        }
    }

    pub fn labels(&self) -> Vec<String> {
        match *self {
            Basis::Plane => vec!["H".into()],
            Basis::Blowup(r) => std::iter::once("H".to_string())
                .chain((1..=r).map(|i| format!("E{i}")))
                .collect(),
            Basis::Hirzebruch(_) => vec!["C0".into(), "f".into()],
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match *self {
            Basis::Plane => "P2".to_string(),
            Basis::Blowup(r) => format!("Bl{r}"),
            Basis::Hirzebruch(k) => format!("F{k}"),
        };
        write!(f, "{}:{}", prefix, self.labels().join(","))
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Basis> {
        let bad = || Error::InvalidInput(format!("unknown basis name {s:?}"));
        let (prefix, _) = s.split_once(':').ok_or_else(bad)?;
        let basis = if prefix == "P2" {
            Basis::Plane
        } else if let Some(r) = prefix.strip_prefix("Bl") {
            Basis::Blowup(r.parse().map_err(|_| bad())?)
        } else if let Some(k) = prefix.strip_prefix('F') {
            Basis::Hirzebruch(k.parse().map_err(|_| bad())?)
        } else {
            return Err(bad());
        };
        if basis.to_string() != s {
            return Err(bad());
        }
        Ok(basis)
    }
}

impl Serialize for Basis {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Basis {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Basis, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Integer coordinate vector in a model's basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DivisorClass {
    pub basis: Basis,
    #[serde(with = "exact::integer_vec")]
    pub coords: Vec<Integer>,
}

impl DivisorClass {
    pub fn new(model: &SurfaceModel, coords: Vec<Integer>) -> Result<DivisorClass> {
        if coords.len() != model.rank() {
            return Err(Error::InvalidClass(format!(
                "{} coordinates for a lattice of rank {}",
                coords.len(),
                model.rank()
            )));
        }
        Ok(DivisorClass {
            basis: model.basis(),
            coords,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &DivisorClass) -> DivisorClass {
        assert_eq!(self.basis, other.basis);
        DivisorClass {
            basis: self.basis,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &DivisorClass) -> DivisorClass {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, k: &Integer) -> DivisorClass {
        DivisorClass {
            basis: self.basis,
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    /// True when the coordinates have no common factor.
    pub fn is_primitive(&self) -> bool {
        self.coords
            .iter()
            .fold(Integer::zero(), |g, c| num_integer::Integer::gcd(&g, c))
            .is_one()
    }

    fn check(&self, model: &SurfaceModel) -> Result<()> {
        if self.basis != model.basis() || self.coords.len() != model.rank() {
            return Err(Error::InvalidClass(format!(
                "class in basis {} does not belong to model {}",
                self.basis,
                model.label()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = self.basis.labels();
        let mut first = true;
        for (c, l) in self.coords.iter().zip(&labels) {
            if c.is_zero() {
                continue;
            }
            let a = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if a.is_one() {
                write!(f, "{l}")?;
            } else {
                write!(f, "{a}{l}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Symmetric bilinear intersection pairing.
pub fn intersect(model: &SurfaceModel, a: &DivisorClass, b: &DivisorClass) -> Result<Integer> {
    a.check(model)?;
    b.check(model)?;
    Ok(pair_unchecked(model, a, b))
}

pub(crate) fn pair_unchecked(model: &SurfaceModel, a: &DivisorClass, b: &DivisorClass) -> Integer {
    match model.kind {
        ModelKind::Plane => &a.coords[0] * &b.coords[0],
        ModelKind::BlowupPlane { .. } => {
            let mut acc = &a.coords[0] * &b.coords[0];
            for (x, y) in a.coords[1..].iter().zip(&b.coords[1..]) {
                acc -= x * y;
            }
            acc
        }
        ModelKind::Hirzebruch { k } => {
            let (a0, a1) = (&a.coords[0], &a.coords[1]);
            let (b0, b1) = (&b.coords[0], &b.coords[1]);
            -(a0 * b0) * BigInt::from(k) + a0 * b1 + a1 * b0
        }
    }
}

pub fn self_intersection(model: &SurfaceModel, c: &DivisorClass) -> Result<Integer> {
    intersect(model, c, c)
}

/// `-3H`, `-3H + ΣE_i`, or `-2C_0 - (k+2)f`.
pub fn canonical_class(model: &SurfaceModel) -> DivisorClass {
    let coords = match model.kind {
        ModelKind::Plane => vec![BigInt::from(-3)],
        ModelKind::BlowupPlane { r } => std::iter::once(BigInt::from(-3))
            .chain((0..r).map(|_| BigInt::one()))
            .collect(),
        ModelKind::Hirzebruch { k } => vec![BigInt::from(-2), -BigInt::from(k + 2)],
    };
    DivisorClass {
        basis: model.basis(),
        coords,
    }
}

/// Arithmetic genus `1 + (C.C + K.C)/2`.
pub fn genus_of_class(model: &SurfaceModel, c: &DivisorClass) -> Result<Rational> {
    let k = canonical_class(model);
    let cc = intersect(model, c, c)?;
    let kc = intersect(model, &k, c)?;
    Ok(Rational::one() + Rational::new(cc + kc, BigInt::from(2)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AmpleVerdict {
    Ample,
    NefNotAmple,
    NotNef,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmpleReport {
    pub verdict: AmpleVerdict,
    /// A generator of the curve cone that is negative (not nef) or zero
    /// (nef, not ample) against the class.
    pub witness: Option<DivisorClass>,
    #[serde(with = "exact::integer_vec")]
    pub values: Vec<Integer>,
}

/// Finite generating set of the cone of curves, in canonical order.
pub fn curve_cone_generators(model: &SurfaceModel) -> Result<Vec<DivisorClass>> {
    model.cone_supported()?;
    Ok(match model.kind {
        ModelKind::Plane => vec![model.unit(0)],
        ModelKind::Hirzebruch { .. } => vec![model.unit(0), model.unit(1)],
        ModelKind::BlowupPlane { r: 0 } => vec![model.unit(0)],
        // E_1 and the fiber H - E_1
        ModelKind::BlowupPlane { r: 1 } => vec![model.unit(1), model.class(&[1, -1])?],
        ModelKind::BlowupPlane { r } => mmp::enumerate_minus_one_classes(r)?,
    })
}

/// Kleiman criterion against the finite generating set of the curve cone.
pub fn is_ample(model: &SurfaceModel, d: &DivisorClass) -> Result<AmpleReport> {
    d.check(model)?;
    let gens = curve_cone_generators(model)?;
    let values: Vec<Integer> = gens.iter().map(|g| pair_unchecked(model, d, g)).collect();
    let negative = values.iter().position(|v| v.is_negative());
    let zero = values.iter().position(|v| v.is_zero());
    let (verdict, witness) = match (negative, zero) {
        (Some(i), _) => (AmpleVerdict::NotNef, Some(gens[i].clone())),
        (None, Some(i)) => (AmpleVerdict::NefNotAmple, Some(gens[i].clone())),
        (None, None) => (AmpleVerdict::Ample, None),
    };
    Ok(AmpleReport {
        verdict,
        witness,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn pairing_examples() {
        let p2 = SurfaceModel::plane();
        let h = p2.unit(0);
        assert_eq!(intersect(&p2, &h, &h).unwrap(), BigInt::from(1));

        let bl2 = SurfaceModel::blowup(2);
        let e1 = bl2.exceptional(1);
        assert_eq!(intersect(&bl2, &e1, &e1).unwrap(), BigInt::from(-1));

        let f2 = SurfaceModel::hirzebruch(2);
        let c0 = f2.unit(0);
        assert_eq!(intersect(&f2, &c0, &c0).unwrap(), BigInt::from(-2));
    }

    #[test]
    fn mismatched_classes_are_rejected() {
        let bl2 = SurfaceModel::blowup(2);
        let f1 = SurfaceModel::hirzebruch(1);
        let c = f1.unit(0);
        assert!(matches!(
            intersect(&bl2, &c, &c),
            Err(Error::InvalidClass(_))
        ));
        assert!(matches!(bl2.class(&[1, 0]), Err(Error::InvalidClass(_))));
        // same rank, different basis
        let f0 = SurfaceModel::hirzebruch(0);
        assert!(intersect(&f0, &c, &c).is_err());
    }

    #[test]
    fn canonical_classes() {
        assert_eq!(
            canonical_class(&SurfaceModel::plane()).coords,
            vec![BigInt::from(-3)]
        );
        assert_eq!(
            canonical_class(&SurfaceModel::hirzebruch(0)).coords,
            vec![BigInt::from(-2), BigInt::from(-2)]
        );
        assert_eq!(
            canonical_class(&SurfaceModel::blowup(1)).coords,
            vec![BigInt::from(-3), BigInt::from(1)]
        );
    }

    #[test]
    fn genus_examples() {
        let p2 = SurfaceModel::plane();
        assert_eq!(
            genus_of_class(&p2, &p2.class(&[1]).unwrap()).unwrap(),
            rat(0, 1)
        );
        assert_eq!(
            genus_of_class(&p2, &p2.class(&[3]).unwrap()).unwrap(),
            rat(1, 1)
        );
        let f1 = SurfaceModel::hirzebruch(1);
        assert_eq!(genus_of_class(&f1, &f1.unit(0)).unwrap(), rat(0, 1));
    }

    #[test]
    fn ampleness_examples() {
        let p2 = SurfaceModel::plane();
        assert_eq!(
            is_ample(&p2, &p2.unit(0)).unwrap().verdict,
            AmpleVerdict::Ample
        );

        let f1 = SurfaceModel::hirzebruch(1);
        let rep = is_ample(&f1, &f1.class(&[1, 1]).unwrap()).unwrap();
        assert_eq!(rep.verdict, AmpleVerdict::NefNotAmple);
        assert_eq!(rep.witness, Some(f1.unit(0)));

        let bl6 = SurfaceModel::blowup(6);
        let anti = canonical_class(&bl6).scale(&BigInt::from(-1));
        let rep = is_ample(&bl6, &anti).unwrap();
        assert_eq!(rep.verdict, AmpleVerdict::Ample);
        assert_eq!(rep.values.len(), 27);
        assert!(rep.values.iter().all(|v| v.is_one()));

        let rep = is_ample(&bl6, &bl6.exceptional(3)).unwrap();
        assert_eq!(rep.verdict, AmpleVerdict::NotNef);
    }

    #[test]
    fn unsupported_cones() {
        let bl9 = SurfaceModel::blowup(9);
        assert!(matches!(
            is_ample(&bl9, &bl9.unit(0)),
            Err(Error::UnsupportedCone(_))
        ));
        let special = SurfaceModel::blowup_special(3);
        assert!(matches!(
            is_ample(&special, &special.unit(0)),
            Err(Error::UnsupportedCone(_))
        ));
    }

    #[test]
    fn basis_names_round_trip() {
        for b in [
            Basis::Plane,
            Basis::Blowup(0),
            Basis::Blowup(3),
            Basis::Hirzebruch(4),
        ] {
            assert_eq!(b.to_string().parse::<Basis>().unwrap(), b);
        }
        assert!("Bl3:H,E1".parse::<Basis>().is_err());
        assert!("Q:H".parse::<Basis>().is_err());
        let bl2 = SurfaceModel::blowup(2);
        assert_eq!(bl2.class(&[1, -1, -1]).unwrap().to_string(), "H - E1 - E2");
        assert_eq!(bl2.class(&[-3, 1, 1]).unwrap().to_string(), "-3H + E1 + E2");
    }

    #[test]
    fn model_json_shape() {
        let m = SurfaceModel::blowup(8);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"kind":"BlowupPlane","r":8,"general_position":true}"#);
        let back: SurfaceModel = serde_json::from_str(r#"{"kind":"Hirzebruch","k":3}"#).unwrap();
        assert_eq!(back, SurfaceModel::hirzebruch(3));
        let c = m.exceptional(2);
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.starts_with(r#"{"basis":"Bl8:H,E1,E2,E3,E4,E5,E6,E7,E8","coords":[0,0,1"#));
    }
}
