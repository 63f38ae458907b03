//! Closed-form numerics for polarized varieties: the Δ-genus, log-Fano
//! Hilbert polynomials, Fano index tags, Mukai genera, the Castelnuovo
//! bound, and the threshold of a polarized rational surface.

use crate::error::{Error, Result};
use crate::exact::{self, rat, Rational};
use crate::lattice::{self, AmpleVerdict, DivisorClass, ModelKind, SurfaceModel};
use crate::lp::{self, LpOutcome};
use crate::mmp;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Dimension, degree `L^n` and section count of a polarized variety.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarizedNumerics {
    pub dim: u32,
    pub degree: u64,
    pub h0: u64,
}

/// `Δ = dim + degree - h0`.
pub fn delta_genus(p: &PolarizedNumerics) -> Result<i64> {
    if p.degree == 0 {
        return Err(Error::InvalidInput(
            "the degree of a polarization is positive".into(),
        ));
    }
    Ok(p.dim as i64 + p.degree as i64 - p.h0 as i64)
}

/// Polarized surfaces of Δ-genus zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case")]
pub enum DeltaZeroSurface {
    /// `(P2, O(e))`, `e = 1, 2`.
    Plane { e: u32 },
    /// `(F_r, C_0 + k f)` with `k ≥ r + 1`.
    Hirzebruch { r: u32, k: u32 },
    /// The cone over the rational normal curve of degree `r`.
    Cone { r: u32 },
}

impl DeltaZeroSurface {
    pub fn degree(&self) -> Result<i64> {
        Ok(match *self {
            DeltaZeroSurface::Plane { e } => (e * e) as i64,
            DeltaZeroSurface::Hirzebruch { r, k } => {
                let m = SurfaceModel::hirzebruch(r);
                let h = m.class(&[1, k as i64])?;
                lattice::self_intersection(&m, &h)?.try_into().unwrap()
            }
            DeltaZeroSurface::Cone { r } => r as i64,
        })
    }

    fn check(&self) -> Result<()> {
        match *self {
            DeltaZeroSurface::Plane { e } if e != 1 && e != 2 => Err(Error::NotMinimalDegree(
                format!("(P2, O({e})) has Δ = {}", delta_plane(e)),
            )),
            DeltaZeroSurface::Hirzebruch { r, k } if k < r + 1 => Err(Error::NotMinimalDegree(
                format!("C0 + {k}f on F{r} needs k >= r + 1 = {}", r + 1),
            )),
            DeltaZeroSurface::Cone { r } if r < 2 => Err(Error::NotMinimalDegree(format!(
                "a cone over a curve of degree {r} is not a surface scroll"
            ))),
            _ => Ok(()),
        }
    }
}

fn delta_plane(e: u32) -> i64 {
    let e = e as i64;
    2 + e * e - (e + 1) * (e + 2) / 2
}

/// Matches Δ = 0 surface numerics against the three families. With a
/// witness, the witness is checked; without one, the degree must single
/// out a family.
pub fn classify_delta_zero_surface(
    p: &PolarizedNumerics,
    witness: Option<&DeltaZeroSurface>,
) -> Result<DeltaZeroSurface> {
    if p.dim != 2 {
        return Err(Error::OutOfRegime(format!(
            "dimension {} is not a surface",
            p.dim
        )));
    }
    let delta = delta_genus(p)?;
    if delta != 0 {
        return Err(Error::NotMinimalDegree(format!(
            "Δ = 2 + {} - {} = {delta}, not 0",
            p.degree, p.h0
        )));
    }
    let deg = p.degree as i64;
    if let Some(w) = witness {
        w.check()?;
        let wd = w.degree()?;
        if wd != deg {
            return Err(Error::NotMinimalDegree(format!(
                "witness {w:?} has degree {wd}, not {deg}"
            )));
        }
        return Ok(w.clone());
    }
    let mut found = Vec::new();
    if deg == 1 {
        found.push(DeltaZeroSurface::Plane { e: 1 });
    }
    if deg == 4 {
        found.push(DeltaZeroSurface::Plane { e: 2 });
    }
    // 2k - r = deg with k ≥ r + 1
    for r in 0..=(deg - 2).max(-1) {
        if (deg + r) % 2 == 0 {
            found.push(DeltaZeroSurface::Hirzebruch {
                r: r as u32,
                k: ((deg + r) / 2) as u32,
            });
        }
    }
    if deg >= 2 {
        found.push(DeltaZeroSurface::Cone { r: deg as u32 });
    }
    match found.len() {
        0 => Err(Error::NotMinimalDegree(format!(
            "no Δ = 0 surface has degree {deg}"
        ))),
        1 => Ok(found.remove(0)),
        _ => Err(Error::Ambiguous(format!(
            "degree {deg} fits {found:?}; pass a witness"
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    pub n: u32,
    pub d: u64,
    #[serde(with = "exact::rational")]
    pub index: Rational,
    /// Coefficients of `p(t)` from `t^0` up.
    #[serde(with = "exact::rational_vec")]
    pub coefficients: Vec<Rational>,
}

impl HilbertData {
    pub fn eval(&self, t: &Rational) -> Rational {
        self.coefficients
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// `i ≥ n - 1`: the known roots pin the polynomial down.
    FullyConstrained,
    /// `i = n - 2`: one root short; the value is the displayed formula.
    Underdetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogFanoReport {
    pub hilbert: HilbertData,
    #[serde(with = "exact::rational")]
    pub a: Rational,
    #[serde(with = "exact::rational")]
    pub p0: Rational,
    #[serde(with = "exact::rational")]
    pub p1: Rational,
    #[serde(with = "exact::rational")]
    pub lower_bound: Rational,
    pub bound_holds: bool,
    pub regime: Regime,
    /// `n + g - 1` with `g = d/2 + 1`, reported next to `p(1)` when
    /// `i = n - 2` and `d` is even.
    pub mukai_h0: Option<u64>,
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `p(t) = (d/n!) (t+1)...(t+n-2) (t^2 + a t + n(n-1)/d)` with
/// `a = (n i - (n-2)(n-1))/2`, and `h^0 = p(1)`.
pub fn logfano_h0(n: u32, d: u64, i: &Rational) -> Result<LogFanoReport> {
    if n < 3 {
        return Err(Error::OutOfRegime(format!("dimension {n} < 3")));
    }
    if d == 0 {
        return Err(Error::InvalidInput("degree must be positive".into()));
    }
    if *i < rat(n as i64 - 2, 1) {
        return Err(Error::OutOfRegime(format!(
            "index {} < n - 2 = {}",
            exact::format_rational(i),
            n - 2
        )));
    }
    let nn = Rational::from_integer(n.into());
    let dd = Rational::from_integer(d.into());
    let a = (&nn * i - rat((n as i64 - 2) * (n as i64 - 1), 1)) / rat(2, 1);
    let mut p = vec![&dd / Rational::from_integer(factorial(n))];
    for j in 1..=(n - 2) {
        p = poly_mul(&p, &[rat(j as i64, 1), Rational::one()]);
    }
    let quad = [
        rat((n * (n - 1)) as i64, 1) / &dd,
        a.clone(),
        Rational::one(),
    ];
    p = poly_mul(&p, &quad);
    let hilbert = HilbertData {
        n,
        d,
        index: i.clone(),
        coefficients: p,
    };
    let p0 = hilbert.eval(&Rational::zero());
    assert!(p0.is_one(), "p(0) = {p0} for n = {n}, d = {d}");
    let p1 = hilbert.eval(&Rational::one());
    let lower_bound = &dd / &nn + rat(n as i64 - 1, 1);
    let mukai_regime = *i == rat(n as i64 - 2, 1);
    let mukai_h0 = (mukai_regime && d % 2 == 0).then(|| n as u64 + d / 2);
    Ok(LogFanoReport {
        hilbert,
        a,
        p0,
        bound_holds: p1 > lower_bound,
        p1,
        lower_bound,
        regime: if mukai_regime {
            Regime::Underdetermined
        } else {
            Regime::FullyConstrained
        },
        mukai_h0,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MukaiReport {
    pub degree: u64,
    pub genus: u64,
    pub dim: Option<u32>,
    pub expected_h0: Option<u64>,
}

/// `g = H^n/2 + 1` and `h^0 = n + g - 1`.
pub fn mukai_numerics(hn: u64, dim: Option<u32>) -> Result<MukaiReport> {
    if hn == 0 {
        return Err(Error::InvalidInput("degree must be positive".into()));
    }
    if hn % 2 == 1 {
        return Err(Error::NonIntegralGenus(format!("H^n = {hn} is odd")));
    }
    let genus = hn / 2 + 1;
    Ok(MukaiReport {
        degree: hn,
        genus,
        dim,
        expected_h0: dim.map(|n| n as u64 + genus - 1),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FanoIndexTag {
    Impossible,
    ProjectiveSpace,
    Quadric,
    DelPezzo,
    Mukai,
    General,
}

pub fn fano_index_classify(n: u32, i: u32) -> Result<FanoIndexTag> {
    if n == 0 || i == 0 {
        return Err(Error::InvalidInput(
            "dimension and index are positive".into(),
        ));
    }
    let (n, i) = (n as i64, i as i64);
    Ok(if i > n + 1 {
        FanoIndexTag::Impossible
    } else if i == n + 1 {
        FanoIndexTag::ProjectiveSpace
    } else if i == n {
        FanoIndexTag::Quadric
    } else if i == n - 1 {
        FanoIndexTag::DelPezzo
    } else if i == n - 2 {
        FanoIndexTag::Mukai
    } else {
        FanoIndexTag::General
    })
}

fn castelnuovo_parts(d: u64, n: u64) -> Result<(i64, i64)> {
    if n < 4 {
        return Err(Error::OutOfRegime(format!("ambient dimension {n} < 4")));
    }
    if d == 0 {
        return Err(Error::InvalidInput("degree must be positive".into()));
    }
    let (d, e) = (d as i64, n as i64 - 3);
    let m = (d - 1) / e;
    Ok((m, m * (m - 1) * e / 2 + m * (d - 1 - m * e)))
}

/// With `m = ⌊(d-1)/(n-3)⌋`: `m(m-1)(n-3)/2 + m(d-1-m(n-3))`.
pub fn castelnuovo_max_genus(d: u64, n: u64) -> Result<i64> {
    castelnuovo_parts(d, n).map(|(_, b)| b)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniruledReport {
    pub d: u64,
    pub n: u64,
    pub m: i64,
    pub castelnuovo_bound: i64,
    /// `1 + d/2`
    #[serde(with = "exact::rational")]
    pub genus_lower: Rational,
    /// `d < 2n - 4`
    pub passes: bool,
    /// `1 + d/2 > bound`
    pub inequality_holds: bool,
}

pub fn uniruled_criterion(d: u64, n: u64) -> Result<UniruledReport> {
    let (m, bound) = castelnuovo_parts(d, n)?;
    let genus_lower = Rational::one() + rat(d as i64, 2);
    Ok(UniruledReport {
        d,
        n,
        m,
        castelnuovo_bound: bound,
        inequality_holds: genus_lower > rat(bound, 1),
        genus_lower,
        passes: (d as i64) < 2 * n as i64 - 4,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub model: SurfaceModel,
    pub class: DivisorClass,
    #[serde(with = "exact::rational")]
    pub rho: Rational,
    /// `h + ρK` written as a non-negative combination of cone generators.
    pub decomposition: Vec<(DivisorClass, exact::Q)>,
    /// The surface stand-in for the threshold of a polarized 3-fold.
    pub note: String,
}

fn effective_generators(model: &SurfaceModel) -> Result<Vec<DivisorClass>> {
    let mut gens = match model.kind {
        ModelKind::Plane | ModelKind::BlowupPlane { r: 0 } => vec![model.unit(0)],
        ModelKind::Hirzebruch { .. } => vec![model.unit(0), model.unit(1)],
        ModelKind::BlowupPlane { r } => {
            let mut g = mmp::enumerate_minus_one_classes(r)?;
            g.extend(mmp::enumerate_conic_classes(r)?);
            g.extend((1..=r as usize).map(|i| model.exceptional(i)));
            g
        }
    };
    gens.sort();
    gens.dedup();
    Ok(gens)
}

/// `sup { m : h + mK effective }` for a nef class `h`, by exact linear
/// programming over the generators of the effective cone.
pub fn sharp_threshold(model: &SurfaceModel, h: &DivisorClass) -> Result<ThresholdReport> {
    let report = lattice::is_ample(model, h)?;
    if report.verdict == AmpleVerdict::NotNef {
        return Err(Error::NotNef(format!(
            "{h} meets {} negatively",
            report.witness.map(|w| w.to_string()).unwrap_or_default()
        )));
    }
    let gens = effective_generators(model)?;
    let k = lattice::canonical_class(model);
    let q = |x: &BigInt| Rational::from_integer(x.clone());
    // columns: λ_j for each generator, then m; Σ λ_j g_j - m K = h
    let rank = model.rank();
    let a: Vec<Vec<Rational>> = (0..rank)
        .map(|row| {
            gens.iter()
                .map(|g| q(&g.coords[row]))
                .chain(std::iter::once(-q(&k.coords[row])))
                .collect()
        })
        .collect();
    let b: Vec<Rational> = h.coords.iter().map(q).collect();
    let mut c = vec![Rational::zero(); gens.len()];
    c.push(Rational::one());
    match lp::maximize(&c, &a, &b) {
        LpOutcome::Optimal { value, x } => {
            let decomposition = gens
                .iter()
                .zip(&x)
                .filter(|(_, l)| !l.is_zero())
                .map(|(g, l)| (g.clone(), exact::Q(l.clone())))
                .collect();
            Ok(ThresholdReport {
                model: *model,
                class: h.clone(),
                rho: value,
                decomposition,
                note: "surface analog: sup of m with h + mK in the effective cone".into(),
            })
        }
        LpOutcome::Infeasible => Err(Error::NotNef(format!("{h} is not effective"))),
        LpOutcome::Unbounded => unreachable!("K is not effective on a rational surface"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NefValueReport {
    pub a: u64,
    pub n: u64,
    pub v: u64,
    pub bound: u64,
    pub holds: bool,
}

/// `v ≤ a(n+1)`.
pub fn nefvalue_denominator_bound(a: u64, n: u64, v: u64) -> Result<NefValueReport> {
    if a == 0 || n == 0 || v == 0 {
        return Err(Error::InvalidInput("a, n and v are positive".into()));
    }
    let bound = a * (n + 1);
    Ok(NefValueReport {
        a,
        n,
        v,
        bound,
        holds: v <= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pn(dim: u32, degree: u64, h0: u64) -> PolarizedNumerics {
        PolarizedNumerics { dim, degree, h0 }
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_genus(&pn(2, 1, 3)).unwrap(), 0);
        for d in 1..10 {
            // rational normal curve of degree d: h0 = d + 1 by Riemann-Roch
            assert_eq!(delta_genus(&pn(1, d, d + 1)).unwrap(), 0);
        }
        assert_eq!(delta_genus(&pn(2, 4, 6)).unwrap(), 0);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify_delta_zero_surface(&pn(2, 1, 3), None).unwrap(),
            DeltaZeroSurface::Plane { e: 1 }
        );
        let w = DeltaZeroSurface::Hirzebruch { r: 1, k: 2 };
        assert_eq!(
            classify_delta_zero_surface(&pn(2, 3, 5), Some(&w)).unwrap(),
            w
        );
        let cone = DeltaZeroSurface::Cone { r: 4 };
        assert_eq!(
            classify_delta_zero_surface(&pn(2, 4, 6), Some(&cone)).unwrap(),
            cone
        );
        assert!(matches!(
            classify_delta_zero_surface(&pn(2, 4, 6), None),
            Err(Error::Ambiguous(_))
        ));
        assert!(matches!(
            classify_delta_zero_surface(&pn(2, 4, 5), None),
            Err(Error::NotMinimalDegree(_))
        ));
        let bad = DeltaZeroSurface::Hirzebruch { r: 2, k: 2 };
        assert!(matches!(
            classify_delta_zero_surface(&pn(2, 2, 4), Some(&bad)),
            Err(Error::NotMinimalDegree(_))
        ));
    }

    #[test]
    fn logfano_examples() {
        let r = logfano_h0(3, 8, &rat(2, 1)).unwrap();
        assert_eq!(r.a, rat(2, 1));
        assert_eq!(r.p1, rat(10, 1));
        assert!(r.bound_holds);
        assert_eq!(logfano_h0(4, 2, &rat(3, 1)).unwrap().p0, rat(1, 1));
        let m = logfano_h0(3, 22, &rat(1, 1)).unwrap();
        assert_eq!(m.p1, rat(13, 1));
        assert_eq!(m.regime, Regime::Underdetermined);
        assert_eq!(m.mukai_h0, Some(14));
        assert!(matches!(
            logfano_h0(4, 2, &rat(1, 1)),
            Err(Error::OutOfRegime(_))
        ));
    }

    #[test]
    fn hilbert_coefficients() {
        for n in 3..=8u32 {
            for d in [1u64, 5, 12] {
                let i = rat(n as i64 - 1, 1);
                let h = logfano_h0(n, d, &i).unwrap().hilbert;
                let lead = rat(d as i64, 1) / Rational::from_integer(factorial(n));
                assert_eq!(h.coefficients[n as usize], lead);
                let second = &i * rat(d as i64, 2) / Rational::from_integer(factorial(n - 1));
                assert_eq!(h.coefficients[n as usize - 1], second);
            }
        }
    }

    #[test]
    fn mukai_examples() {
        assert_eq!(mukai_numerics(22, None).unwrap().genus, 12);
        assert_eq!(mukai_numerics(2, None).unwrap().genus, 2);
        assert_eq!(mukai_numerics(4, Some(3)).unwrap().expected_h0, Some(5));
        assert!(matches!(
            mukai_numerics(5, None),
            Err(Error::NonIntegralGenus(_))
        ));
    }

    #[test]
    fn index_tags() {
        assert_eq!(
            fano_index_classify(3, 4).unwrap(),
            FanoIndexTag::ProjectiveSpace
        );
        assert_eq!(fano_index_classify(3, 5).unwrap(), FanoIndexTag::Impossible);
        assert_eq!(fano_index_classify(4, 2).unwrap(), FanoIndexTag::Mukai);
        assert_eq!(fano_index_classify(3, 3).unwrap(), FanoIndexTag::Quadric);
        assert_eq!(fano_index_classify(5, 4).unwrap(), FanoIndexTag::DelPezzo);
        assert_eq!(fano_index_classify(8, 2).unwrap(), FanoIndexTag::General);
    }

    #[test]
    fn castelnuovo_examples() {
        assert_eq!(castelnuovo_max_genus(6, 5).unwrap(), 4);
        assert_eq!(castelnuovo_max_genus(1, 5).unwrap(), 0);
        assert_eq!(castelnuovo_max_genus(9, 6).unwrap(), 7);
        assert!(matches!(
            castelnuovo_max_genus(3, 3),
            Err(Error::OutOfRegime(_))
        ));
    }

    #[test]
    fn uniruled_examples() {
        let r = uniruled_criterion(5, 5).unwrap();
        assert!(r.passes && r.inequality_holds);
        assert_eq!(r.genus_lower, rat(7, 2));
        assert_eq!(r.castelnuovo_bound, 2);
        assert!(!uniruled_criterion(6, 5).unwrap().passes);
        let r = uniruled_criterion(1, 4).unwrap();
        assert!(r.passes && r.inequality_holds);
    }

    #[test]
    fn threshold_examples() {
        let p2 = SurfaceModel::plane();
        for d in 0..6 {
            let h = p2.class(&[d]).unwrap();
            assert_eq!(sharp_threshold(&p2, &h).unwrap().rho, rat(d, 3));
        }
        let f0 = SurfaceModel::hirzebruch(0);
        assert_eq!(
            sharp_threshold(&f0, &f0.class(&[1, 1]).unwrap())
                .unwrap()
                .rho,
            rat(1, 2)
        );
        let bl6 = SurfaceModel::blowup(6);
        assert_eq!(
            sharp_threshold(&bl6, &bl6.zero_class()).unwrap().rho,
            rat(0, 1)
        );
        let anti = lattice::canonical_class(&bl6).scale(&BigInt::from(-1));
        assert_eq!(sharp_threshold(&bl6, &anti).unwrap().rho, rat(1, 1));
        assert!(matches!(
            sharp_threshold(&bl6, &bl6.exceptional(1)),
            Err(Error::NotNef(_))
        ));
    }

    #[test]
    fn nefvalue_examples() {
        assert!(nefvalue_denominator_bound(1, 3, 4).unwrap().holds);
        assert!(!nefvalue_denominator_bound(1, 3, 5).unwrap().holds);
        assert!(nefvalue_denominator_bound(2, 4, 10).unwrap().holds);
    }
}
