//! Readers for the command-line argument forms: inline JSON, `@file`, and
//! the short textual forms.

use crate::CliError;
use biratlab::cremona::{validate_type, BasePoint, HomaloidalType, PlaneMap};
use biratlab::exact::{parse_rational, Rational, Q};
use biratlab::lattice::{DivisorClass, SurfaceModel};
use biratlab::poly::{parse_poly, Poly};
use biratlab::sing::BlowupCluster;
use num_traits::Zero;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use std::collections::BTreeMap;

/// The argument itself, or the contents of the file named after `@`.
pub fn read_arg(s: &str) -> Result<String, CliError> {
    match s.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map(|t| t.trim().to_string())
            .map_err(|e| CliError::Input(format!("cannot read {path}: {e}"))),
        None => Ok(s.trim().to_string()),
    }
}

fn json<T: DeserializeOwned>(s: &str, what: &str) -> Result<T, CliError> {
    serde_json::from_str(s).map_err(|e| CliError::Input(format!("bad {what}: {e}")))
}

fn looks_like_json(s: &str) -> bool {
    s.starts_with('{') || s.starts_with('[') || s.starts_with('"')
}

/// JSON model, or one of `P2`, `Bl<r>`, `Bl<r>special`, `F<k>`.
pub fn model(arg: &str) -> Result<SurfaceModel, CliError> {
    let s = read_arg(arg)?;
    if looks_like_json(&s) {
        return json(&s, "model");
    }
    let bad = || CliError::Input(format!("unknown model {s:?}"));
    if s == "P2" {
        Ok(SurfaceModel::plane())
    } else if let Some(rest) = s.strip_prefix("Bl") {
        match rest.strip_suffix("special") {
            Some(r) => Ok(SurfaceModel::blowup_special(r.parse().map_err(|_| bad())?)),
            None => Ok(SurfaceModel::blowup(rest.parse().map_err(|_| bad())?)),
        }
    } else if let Some(k) = s.strip_prefix('F') {
        Ok(SurfaceModel::hirzebruch(k.parse().map_err(|_| bad())?))
    } else {
        Err(bad())
    }
}

/// JSON class, a coordinate array, or a linear expression in the basis
/// labels such as `3H - 2E1 - E2`.
pub fn class(model: &SurfaceModel, arg: &str) -> Result<DivisorClass, CliError> {
    let s = read_arg(arg)?;
    if s.starts_with('{') {
        let c: DivisorClass = json(&s, "class")?;
        if c.basis != model.basis() {
            return Err(CliError::Domain(biratlab::Error::InvalidClass(format!(
                "class in basis {} does not belong to model {}",
                c.basis,
                model.label()
            ))));
        }
        return Ok(c);
    }
    if s.starts_with('[') {
        let v: Vec<biratlab::exact::Z> = json(&s, "class")?;
        return Ok(DivisorClass::new(
            model,
            v.into_iter().map(|z| z.0).collect(),
        )?);
    }
    let labels = model.basis().labels();
    let names: Vec<&str> = labels.iter().map(|l| l.as_str()).collect();
    let p = parse_poly(&s, &names)?;
    if p.total_degree().unwrap_or(1) != 1 {
        return Err(CliError::Input(format!(
            "{s:?} is not a linear combination of {}",
            labels.join(", ")
        )));
    }
    let mut coords = Vec::with_capacity(names.len());
    for i in 0..names.len() {
        let mut e = vec![0; names.len()];
        e[i] = 1;
        let c = p.coefficient(&e);
        if !c.is_integer() {
            return Err(CliError::Input(format!(
                "coefficient of {} in {s:?} is not an integer",
                names[i]
            )));
        }
        coords.push(c.to_integer());
    }
    Ok(DivisorClass::new(model, coords)?)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum TypeRepr {
    Pair(u64, Vec<u64>),
    Named { n: u64, mults: Vec<u64> },
}

/// `[n, [m1, m2, ...]]` or `{"n": .., "mults": [..]}`.
pub fn homaloidal_type(arg: &str) -> Result<HomaloidalType, CliError> {
    let s = read_arg(arg)?;
    let (n, mults) = match json::<TypeRepr>(&s, "homaloidal type")? {
        TypeRepr::Pair(n, m) | TypeRepr::Named { n, mults: m } => (n, m),
    };
    Ok(validate_type(n, &mults)?)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MapRepr {
    Strings(Vec<String>),
    Map(PlaneMap),
}

/// Three polynomial strings in `x0, x1, x2`, or the coefficient-map JSON.
pub fn plane_map(arg: &str) -> Result<PlaneMap, CliError> {
    let s = read_arg(arg)?;
    from_map_repr(json(&s, "plane map")?)
}

fn from_map_repr(r: MapRepr) -> Result<PlaneMap, CliError> {
    match r {
        MapRepr::Strings(v) => {
            let parts: Vec<&str> = v.iter().map(|x| x.as_str()).collect();
            Ok(PlaneMap::parse(&parts)?)
        }
        MapRepr::Map(m) => Ok(m),
    }
}

/// A JSON array of maps, each in either form of [`plane_map`].
pub fn plane_maps(arg: &str) -> Result<Vec<PlaneMap>, CliError> {
    let s = read_arg(arg)?;
    let v: Vec<MapRepr> = json(&s, "map chain")?;
    if v.is_empty() {
        return Err(CliError::Input("the chain is empty".into()));
    }
    v.into_iter().map(from_map_repr).collect()
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PointRepr {
    Pair(Vec<Q>, u32),
    Point(BasePoint),
}

/// `[[[x0,x1,x2], m], ...]` or `[{"coords": [..], "mult": m}, ...]`.
pub fn base_points(arg: &str) -> Result<Vec<BasePoint>, CliError> {
    let s = read_arg(arg)?;
    let v: Vec<PointRepr> = json(&s, "base points")?;
    Ok(v.into_iter()
        .map(|p| match p {
            PointRepr::Pair(c, mult) => BasePoint {
                coords: c.into_iter().map(|q| q.0).collect(),
                mult,
            },
            PointRepr::Point(b) => b,
        })
        .collect())
}

/// A polynomial in `x, y`, as text or as a map `"i,j" -> "p/q"`.
pub fn curve(arg: &str) -> Result<Poly, CliError> {
    let s = read_arg(arg)?;
    if !s.starts_with('{') {
        return Ok(parse_poly(&s, &["x", "y"])?);
    }
    let m: BTreeMap<String, Q> = json(&s, "polynomial")?;
    let mut terms = Vec::with_capacity(m.len());
    for (k, v) in m {
        let e: Vec<u32> = k
            .split(',')
            .map(|x| x.trim().parse::<u32>())
            .collect::<Result<_, _>>()
            .map_err(|_| CliError::Input(format!("bad exponent pair {k:?}")))?;
        if e.len() != 2 {
            return Err(CliError::Input(format!("bad exponent pair {k:?}")));
        }
        terms.push((e, v.0));
    }
    Ok(Poly::from_terms(2, terms))
}

pub fn cluster(arg: &str) -> Result<BlowupCluster, CliError> {
    let s = read_arg(arg)?;
    let c: BlowupCluster = json(&s, "cluster")?;
    Ok(BlowupCluster::new(c.points)?)
}

pub fn rational(s: &str) -> Result<Rational, CliError> {
    parse_rational(s).ok_or_else(|| CliError::Input(format!("bad rational {s:?}")))
}

pub fn positive_rational(s: &str) -> Result<Rational, CliError> {
    let q = rational(s)?;
    if q <= Rational::zero() {
        return Err(CliError::Input(format!("{s} is not positive")));
    }
    Ok(q)
}
