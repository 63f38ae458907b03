//! Extremal rays and the surface minimal model program on the supported
//! rational models.

use crate::error::{Error, Result};
use crate::exact::{self, Integer};
use crate::lattice::{self, DivisorClass, ModelKind, SurfaceModel};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Reverse;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ContractionKind {
    BlowdownToPoint,
    RuledFibration,
    ContractToPoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalRay {
    pub generator: DivisorClass,
    pub contraction_kind: ContractionKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Strategy {
    FirstRay,
    PreferBirational,
    PreferFiber,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MmpStep {
    pub model_before: SurfaceModel,
    pub ray: ExtremalRay,
    pub model_after: SurfaceModel,
    /// Rows indexed by the target basis, columns by the source basis.
    #[serde(with = "exact::integer_matrix")]
    pub pushforward: Vec<Vec<Integer>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Terminal {
    PlaneOutput,
    RuledOutput {
        base_genus: u32,
        fiber: DivisorClass,
        rank: usize,
    },
    /// K nef. Never produced on rational models; kept so traces can be
    /// read back from other producers.
    MinimalOutput,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MmpTrace {
    pub start: SurfaceModel,
    pub strategy: Strategy,
    pub steps: Vec<MmpStep>,
    pub terminal: Terminal,
}

impl MmpTrace {
    pub fn final_model(&self) -> SurfaceModel {
        self.steps
            .last()
            .map(|s| s.model_after)
            .unwrap_or(self.start)
    }
}

/// All integer vectors of length `len` with the given sum and sum of
/// squares, in lexicographic order.
fn vectors_with_sum_and_norm(len: usize, sum: i64, norm: i64) -> Vec<Vec<i64>> {
    fn go(k: usize, s: i64, q: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k == 0 {
            if s == 0 && q == 0 {
                out.push(cur.clone());
            }
            return;
        }
        // Cauchy-Schwarz on the remaining k entries
        if q < 0 || s * s > k as i64 * q {
            return;
        }
        let bound = num_integer::Roots::sqrt(&q);
        for v in -bound..=bound {
            cur.push(v);
            go(k - 1, s - v, q - v * v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(len, sum, norm, &mut Vec::with_capacity(len), &mut out);
    out
}

/// Classes `aH - Σ b_i E_i` with `a ≥ 0`, `C^2 = c2`, `K.C = kc`. The
/// degree `a` is bounded by Cauchy-Schwarz applied to `Σb` and `Σb^2`.
fn classes_with_numerics(r: u32, c2: i64, kc: i64) -> Vec<(i64, Vec<i64>)> {
    let r = r as i64;
    // Σb = 3a + kc, Σb^2 = a^2 - c2
    let fits = |a: i64| {
        let s = 3 * a + kc;
        s * s <= r * (a * a - c2)
    };
    // (3a+kc)^2 - r(a^2-c2) has positive leading coefficient for r ≤ 8,
    // so `fits` fails for every a past its larger root, which is below 12.
    let mut found = Vec::new();
    for a in 0..=64 {
        if a * a >= c2 && fits(a) {
            for b in vectors_with_sum_and_norm(r as usize, 3 * a + kc, a * a - c2) {
                found.push((a, b));
            }
        }
    }
    found.sort_by_key(|(a, b)| {
        (
            *a,
            Reverse(b.iter().map(|x| x.abs()).collect::<Vec<_>>()),
            b.clone(),
        )
    });
    found
}

fn to_class(model: &SurfaceModel, a: i64, b: &[i64]) -> DivisorClass {
    let coords = std::iter::once(BigInt::from(a))
        .chain(b.iter().map(|x| BigInt::from(-x)))
        .collect();
    DivisorClass::new(model, coords).expect("rank matches by construction")
}

/// Every class with `C^2 = -1` and `K.C = -1` on the blow-up of `r ≤ 8`
/// general points, in canonical order: by degree, then by the absolute
/// multiplicity vector descending.
pub fn enumerate_minus_one_classes(r: u32) -> Result<Vec<DivisorClass>> {
    if r > 8 {
        return Err(Error::UnsupportedCone(format!(
            "(-1)-classes are infinite for r = {r}"
        )));
    }
    let model = SurfaceModel::blowup(r);
    let found = classes_with_numerics(r, -1, -1);
    assert!(
        found.iter().all(|(a, _)| *a <= 6),
        "(-1)-class of degree above 6"
    );
    Ok(found.iter().map(|(a, b)| to_class(&model, *a, b)).collect())
}

/// Conic-bundle fiber classes: `C^2 = 0`, `K.C = -2`.
pub fn enumerate_conic_classes(r: u32) -> Result<Vec<DivisorClass>> {
    if r > 8 {
        return Err(Error::UnsupportedCone(format!(
            "conic classes are infinite for r = {r}"
        )));
    }
    let model = SurfaceModel::blowup(r);
    Ok(classes_with_numerics(r, 0, -2)
        .iter()
        .map(|(a, b)| to_class(&model, *a, b))
        .collect())
}

fn abs_key(c: &DivisorClass) -> (Integer, Reverse<Vec<Integer>>, Vec<Integer>) {
    let a = c.coords[0].clone();
    let b: Vec<Integer> = c.coords[1..].iter().map(|x| -x).collect();
    (a, Reverse(b.iter().map(|x| x.abs()).collect()), b)
}

/// K-negative extremal rays. On blow-ups with `r ≥ 2` the conic classes
/// span faces rather than rays; they are listed as fiber rays so that the
/// fiber-first strategy can stop at higher rank.
pub fn enumerate_extremal_rays(model: &SurfaceModel) -> Result<Vec<ExtremalRay>> {
    model.cone_supported()?;
    let ray = |generator, contraction_kind| ExtremalRay {
        generator,
        contraction_kind,
    };
    Ok(match model.kind {
        ModelKind::Plane | ModelKind::BlowupPlane { r: 0 } => {
            vec![ray(model.unit(0), ContractionKind::ContractToPoint)]
        }
        ModelKind::Hirzebruch { k: 0 } => vec![
            ray(model.unit(0), ContractionKind::RuledFibration),
            ray(model.unit(1), ContractionKind::RuledFibration),
        ],
        ModelKind::Hirzebruch { k: 1 } => vec![
            ray(model.unit(0), ContractionKind::BlowdownToPoint),
            ray(model.unit(1), ContractionKind::RuledFibration),
        ],
        ModelKind::Hirzebruch { .. } => vec![ray(model.unit(1), ContractionKind::RuledFibration)],
        ModelKind::BlowupPlane { r } => {
            let mut rays: Vec<ExtremalRay> = enumerate_minus_one_classes(r)?
                .into_iter()
                .map(|c| ray(c, ContractionKind::BlowdownToPoint))
                .chain(
                    enumerate_conic_classes(r)?
                        .into_iter()
                        .map(|c| ray(c, ContractionKind::RuledFibration)),
                )
                .collect();
            rays.sort_by_key(|x| abs_key(&x.generator));
            rays
        }
    })
}

fn identity(n: usize) -> Vec<Vec<Integer>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Integer::one()
                    } else {
                        Integer::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn mat_mul(a: &[Vec<Integer>], b: &[Vec<Integer>]) -> Vec<Vec<Integer>> {
    a.iter()
        .map(|row| {
            (0..b[0].len())
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum())
                .collect()
        })
        .collect()
}

pub fn apply_matrix(m: &[Vec<Integer>], v: &[Integer]) -> Vec<Integer> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// Matrix of `x ↦ x + (x.α)α` on a blow-up lattice.
fn reflection_matrix(model: &SurfaceModel, alpha: &DivisorClass) -> Vec<Vec<Integer>> {
    let n = model.rank();
    let mut m = identity(n);
    // (x.α) = Σ_j g_j α_j x_j with g = diag(1,-1,..)
    for i in 0..n {
        for j in 0..n {
            let g = if j == 0 {
                Integer::one()
            } else {
                -Integer::one()
            };
            m[i][j] += &alpha.coords[i] * &alpha.coords[j] * g;
        }
    }
    m
}

/// The three indices (1-based) carrying the largest multiplicities
/// `b_i = -coords[i]`, ties to the lowest index.
fn three_largest(c: &DivisorClass) -> [usize; 3] {
    let mut idx: Vec<usize> = (1..c.coords.len()).collect();
    idx.sort_by_key(|&i| (c.coords[i].clone(), i));
    [idx[0], idx[1], idx[2]]
}

/// Isometry taking a (-1)-class to some `E_m` by quadratic reflections in
/// `H - E_i - E_j - E_k` on the three largest multiplicities.
fn weyl_reduce(model: &SurfaceModel, ell: &DivisorClass) -> (Vec<Vec<Integer>>, usize) {
    let n = model.rank();
    let mut w = identity(n);
    let mut cur = ell.clone();
    loop {
        if cur.coords[0].is_zero() {
            let m = (1..n)
                .find(|&i| cur.coords[i].is_one())
                .expect("degree zero (-1)-class is some E_m");
            return (w, m);
        }
        let [i, j, k] = three_largest(&cur);
        let mut alpha = model.zero_class();
        alpha.coords[0] = Integer::one();
        for t in [i, j, k] {
            alpha.coords[t] = -Integer::one();
        }
        let s = reflection_matrix(model, &alpha);
        let next = DivisorClass::new(model, apply_matrix(&s, &cur.coords)).unwrap();
        assert!(
            next.coords[0] < cur.coords[0],
            "reflection did not lower the degree"
        );
        cur = next;
        w = mat_mul(&s, &w);
    }
}

fn drop_row(n: usize, m: usize) -> Vec<Vec<Integer>> {
    (0..n)
        .filter(|&i| i != m)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Integer::one()
                    } else {
                        Integer::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// Blow down a (-1)-ray. Returns the new model and the pushforward on
/// divisor classes as an integer matrix.
pub fn contract_ray(
    model: &SurfaceModel,
    ray: &ExtremalRay,
) -> Result<(SurfaceModel, Vec<Vec<Integer>>)> {
    let rays = enumerate_extremal_rays(model)?;
    if !rays.contains(ray) {
        return Err(Error::InvalidRay(format!(
            "{} is not an extremal ray of {}",
            ray.generator,
            model.label()
        )));
    }
    if ray.contraction_kind != ContractionKind::BlowdownToPoint {
        return Err(Error::NotBirational);
    }
    let ell = &ray.generator;
    match model.kind {
        ModelKind::Hirzebruch { k: 1 } => {
            // H pulls back to C_0 + f
            let h = model.class(&[1, 1])?;
            let row = (0..2)
                .map(|j| lattice::pair_unchecked(model, &model.unit(j), &h))
                .collect();
            Ok((SurfaceModel::plane(), vec![row]))
        }
        ModelKind::BlowupPlane { r } => {
            let n = model.rank();
            if let Some(m) = (1..n).find(|&i| *ell == model.exceptional(i)) {
                let after = if r == 1 {
                    SurfaceModel::plane()
                } else {
                    SurfaceModel::blowup(r - 1)
                };
                return Ok((after, drop_row(n, m)));
            }
            if r == 2 {
                // the line through both points; C_0 and f pull back to
                // H - E_1 and H - E_2, and F_0 is self-dual under its form
                let c0 = model.class(&[1, -1, 0])?;
                let f = model.class(&[1, 0, -1])?;
                let row = |p: &DivisorClass| -> Vec<Integer> {
                    (0..n)
                        .map(|j| lattice::pair_unchecked(model, &model.unit(j), p))
                        .collect()
                };
                return Ok((SurfaceModel::hirzebruch(0), vec![row(&f), row(&c0)]));
            }
            let (w, m) = weyl_reduce(model, ell);
            Ok((SurfaceModel::blowup(r - 1), mat_mul(&drop_row(n, m), &w)))
        }
        _ => unreachable!("no blow-down rays on {}", model.label()),
    }
}

fn choose(rays: &[ExtremalRay], strategy: Strategy) -> &ExtremalRay {
    let first_of = |kind| rays.iter().find(|r| r.contraction_kind == kind);
    match strategy {
        Strategy::FirstRay => &rays[0],
        Strategy::PreferBirational => {
            first_of(ContractionKind::BlowdownToPoint).unwrap_or(&rays[0])
        }
        Strategy::PreferFiber => first_of(ContractionKind::RuledFibration).unwrap_or(&rays[0]),
    }
}

/// Contract rays until the plane is reached or a fiber-type ray is chosen.
pub fn run_mmp(model: &SurfaceModel, strategy: Strategy) -> Result<MmpTrace> {
    model.cone_supported()?;
    let mut cur = *model;
    let mut steps = Vec::new();
    let terminal = loop {
        let rays = enumerate_extremal_rays(&cur)?;
        let ray = choose(&rays, strategy);
        match ray.contraction_kind {
            ContractionKind::ContractToPoint => break Terminal::PlaneOutput,
            ContractionKind::RuledFibration => {
                break Terminal::RuledOutput {
                    base_genus: 0,
                    fiber: ray.generator.clone(),
                    rank: cur.rank(),
                }
            }
            ContractionKind::BlowdownToPoint => {
                let (after, pushforward) = contract_ray(&cur, ray)?;
                debug_assert_eq!(after.rank() + 1, cur.rank());
                steps.push(MmpStep {
                    model_before: cur,
                    ray: ray.clone(),
                    model_after: after,
                    pushforward,
                });
                cur = after;
            }
        }
    };
    Ok(MmpTrace {
        start: *model,
        strategy,
        steps,
        terminal,
    })
}

/// `(C^2, K.C)` of a class, as small integers for reporting.
pub fn numerics(model: &SurfaceModel, c: &DivisorClass) -> Result<(i64, i64)> {
    let k = lattice::canonical_class(model);
    let c2 = lattice::intersect(model, c, c)?;
    let kc = lattice::intersect(model, &k, c)?;
    Ok((
        c2.to_i64().unwrap_or(i64::MAX),
        kc.to_i64().unwrap_or(i64::MAX),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::intersect;

    #[test]
    fn minus_one_counts() {
        let counts: Vec<usize> = (1..=8)
            .map(|r| enumerate_minus_one_classes(r).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 3, 6, 10, 16, 27, 56, 240]);
        assert!(enumerate_minus_one_classes(0).unwrap().is_empty());
        assert!(matches!(
            enumerate_minus_one_classes(9),
            Err(Error::UnsupportedCone(_))
        ));
    }

    #[test]
    fn conic_counts() {
        let counts: Vec<usize> = (1..=8)
            .map(|r| enumerate_conic_classes(r).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 10, 27, 126, 2160]);
    }

    #[test]
    fn canonical_order_starts_with_exceptionals() {
        let cls = enumerate_minus_one_classes(3).unwrap();
        let shown: Vec<String> = cls.iter().map(|c| c.to_string()).collect();
        assert_eq!(
            shown,
            [
                "E1",
                "E2",
                "E3",
                "H - E1 - E2",
                "H - E1 - E3",
                "H - E2 - E3"
            ]
        );
    }

    #[test]
    fn hirzebruch_rays() {
        let f1 = enumerate_extremal_rays(&SurfaceModel::hirzebruch(1)).unwrap();
        assert_eq!(f1.len(), 2);
        assert_eq!(f1[0].contraction_kind, ContractionKind::BlowdownToPoint);
        assert_eq!(f1[1].contraction_kind, ContractionKind::RuledFibration);
        let f3 = enumerate_extremal_rays(&SurfaceModel::hirzebruch(3)).unwrap();
        assert_eq!(f3.len(), 1);
        assert_eq!(f3[0].generator, SurfaceModel::hirzebruch(3).unit(1));
    }

    #[test]
    fn blowup_two_rays() {
        let m = SurfaceModel::blowup(2);
        let rays = enumerate_extremal_rays(&m).unwrap();
        let shown: Vec<(String, ContractionKind)> = rays
            .iter()
            .map(|r| (r.generator.to_string(), r.contraction_kind))
            .collect();
        use ContractionKind::*;
        assert_eq!(
            shown,
            [
                ("E1".to_string(), BlowdownToPoint),
                ("E2".to_string(), BlowdownToPoint),
                ("H - E1 - E2".to_string(), BlowdownToPoint),
                ("H - E1".to_string(), RuledFibration),
                ("H - E2".to_string(), RuledFibration),
            ]
        );
    }

    #[test]
    fn contract_c0_on_f1() {
        let f1 = SurfaceModel::hirzebruch(1);
        let rays = enumerate_extremal_rays(&f1).unwrap();
        let (after, push) = contract_ray(&f1, &rays[0]).unwrap();
        assert_eq!(after, SurfaceModel::plane());
        assert_eq!(
            apply_matrix(&push, &f1.unit(0).coords),
            vec![BigInt::from(0)]
        );
        assert_eq!(
            apply_matrix(&push, &f1.class(&[1, 1]).unwrap().coords),
            vec![BigInt::from(1)]
        );
        assert!(matches!(
            contract_ray(&f1, &rays[1]),
            Err(Error::NotBirational)
        ));
    }

    #[test]
    fn contract_line_on_three_points() {
        let m = SurfaceModel::blowup(3);
        let ell = m.class(&[1, -1, -1, 0]).unwrap();
        let ray = ExtremalRay {
            generator: ell.clone(),
            contraction_kind: ContractionKind::BlowdownToPoint,
        };
        let (after, push) = contract_ray(&m, &ray).unwrap();
        assert_eq!(after, SurfaceModel::blowup(2));
        assert!(apply_matrix(&push, &ell.coords).iter().all(|x| x.is_zero()));
        // pushforward of K is K
        let k = lattice::canonical_class(&m);
        assert_eq!(
            apply_matrix(&push, &k.coords),
            lattice::canonical_class(&after).coords
        );
    }

    #[test]
    fn contract_line_on_two_points_gives_quadric() {
        let m = SurfaceModel::blowup(2);
        let ell = m.class(&[1, -1, -1]).unwrap();
        let ray = ExtremalRay {
            generator: ell.clone(),
            contraction_kind: ContractionKind::BlowdownToPoint,
        };
        let (after, push) = contract_ray(&m, &ray).unwrap();
        assert_eq!(after, SurfaceModel::hirzebruch(0));
        assert_eq!(
            apply_matrix(&push, &m.class(&[1, -1, 0]).unwrap().coords),
            vec![BigInt::from(1), BigInt::from(0)]
        );
        let k = lattice::canonical_class(&m);
        assert_eq!(
            apply_matrix(&push, &k.coords),
            lattice::canonical_class(&after).coords
        );
    }

    #[test]
    fn invalid_ray() {
        let m = SurfaceModel::blowup(3);
        let ray = ExtremalRay {
            generator: m.unit(0),
            contraction_kind: ContractionKind::BlowdownToPoint,
        };
        assert!(matches!(contract_ray(&m, &ray), Err(Error::InvalidRay(_))));
    }

    #[test]
    fn weyl_reduction_preserves_form() {
        let m = SurfaceModel::blowup(8);
        for ell in enumerate_minus_one_classes(8).unwrap() {
            let (w, idx) = weyl_reduce(&m, &ell);
            assert_eq!(apply_matrix(&w, &ell.coords), m.exceptional(idx).coords);
            let k = lattice::canonical_class(&m);
            assert_eq!(apply_matrix(&w, &k.coords), k.coords);
        }
    }

    #[test]
    fn mmp_examples() {
        let t = run_mmp(&SurfaceModel::plane(), Strategy::FirstRay).unwrap();
        assert!(t.steps.is_empty());
        assert_eq!(t.terminal, Terminal::PlaneOutput);

        let t = run_mmp(&SurfaceModel::blowup(8), Strategy::PreferBirational).unwrap();
        assert_eq!(t.steps.len(), 8);
        assert_eq!(t.terminal, Terminal::PlaneOutput);

        let t = run_mmp(&SurfaceModel::hirzebruch(0), Strategy::FirstRay).unwrap();
        assert!(t.steps.is_empty());
        assert!(matches!(t.terminal, Terminal::RuledOutput { rank: 2, .. }));

        let t = run_mmp(&SurfaceModel::blowup(5), Strategy::PreferFiber).unwrap();
        assert!(matches!(t.terminal, Terminal::RuledOutput { rank: 6, .. }));
    }

    #[test]
    fn fiber_rays_are_primitive() {
        for r in 1..=8 {
            let m = SurfaceModel::blowup(r);
            for ray in enumerate_extremal_rays(&m).unwrap() {
                let (c2, kc) = numerics(&m, &ray.generator).unwrap();
                match ray.contraction_kind {
                    ContractionKind::BlowdownToPoint => assert_eq!((c2, kc), (-1, -1)),
                    ContractionKind::RuledFibration => {
                        assert_eq!((c2, kc), (0, -2));
                        assert!(ray.generator.is_primitive());
                    }
                    ContractionKind::ContractToPoint => unreachable!(),
                }
                let k = lattice::canonical_class(&m);
                assert!(intersect(&m, &k, &ray.generator).unwrap().is_negative());
            }
        }
    }
}
