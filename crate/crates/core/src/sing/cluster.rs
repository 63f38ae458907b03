use crate::error::{Error, Result};
use crate::exact::{self, Rational};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// A point of the cluster: the exceptional curves it lies on (strict
/// transforms of earlier blow-ups) and the multiplicity of the curve's
/// strict transform there.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClusterPoint {
    pub proximity: Vec<usize>,
    pub mult: u32,
}

/// Infinitely near points over one point of a smooth surface, in blow-up
/// order. A free point lies on one exceptional curve, a satellite point on
/// the intersection of two.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlowupCluster {
    pub points: Vec<ClusterPoint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Center {
    /// The point under the exceptional curve with this index.
    Point(usize),
    /// A branch of the curve itself.
    CurveComponent(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairThresholdReport {
    pub discrepancies: Vec<i64>,
    pub total_multiplicities: Vec<i64>,
    #[serde(with = "exact::rational")]
    pub lct: Rational,
    pub argmin: Vec<usize>,
    pub centers: Vec<Center>,
    pub minimal_center: Center,
}

impl BlowupCluster {
    pub fn new(points: Vec<ClusterPoint>) -> Result<BlowupCluster> {
        let c = BlowupCluster { points };
        c.validate()?;
        Ok(c)
    }

    /// Builds a cluster from `(proximity, mult)` pairs.
    pub fn from_pairs(pairs: &[(&[usize], u32)]) -> Result<BlowupCluster> {
        BlowupCluster::new(
            pairs
                .iter()
                .map(|(p, m)| ClusterPoint {
                    proximity: p.to_vec(),
                    mult: *m,
                })
                .collect(),
        )
    }

    /// Ordinary `m`-fold point: one blow-up separates all branches.
    pub fn ordinary(m: u32) -> BlowupCluster {
        BlowupCluster {
            points: vec![ClusterPoint {
                proximity: Vec::new(),
                mult: m,
            }],
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The point whose blow-up created the chart this point sits in.
    pub fn parent(&self, i: usize) -> Option<usize> {
        self.points[i].proximity.iter().copied().max()
    }

    /// Points lying on the exceptional curve of `p`.
    pub fn proximate_to(&self, p: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.points.len()).filter(move |&i| self.points[i].proximity.contains(&p))
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |s: String| Err(Error::BadCluster(s));
        for (i, pt) in self.points.iter().enumerate() {
            if pt.mult == 0 {
                return bad(format!("point {i} has multiplicity 0"));
            }
            let prox = &pt.proximity;
            if i == 0 && !prox.is_empty() {
                return bad(
                    "the first point lies on the surface itself; its proximity set must be empty"
                        .into(),
                );
            }
            if i > 0 && !(1..=2).contains(&prox.len()) {
                return bad(format!(
                    "point {i} must lie on one or two exceptional curves, got {}",
                    prox.len()
                ));
            }
            if prox.iter().any(|&p| p >= i) {
                return bad(format!("point {i} refers to a later point"));
            }
            if prox.len() == 2 {
                let (p, q) = (prox[0].min(prox[1]), prox[0].max(prox[1]));
                if p == q {
                    return bad(format!("point {i} lists the same curve twice"));
                }
                if !self.points[q].proximity.contains(&p) {
                    return bad(format!("exceptional curves {p} and {q} do not meet"));
                }
                let dup = self.points[..i].iter().any(|o| {
                    o.proximity.len() == 2 && o.proximity.contains(&p) && o.proximity.contains(&q)
                });
                if dup {
                    return bad(format!(
                        "curves {p} and {q} meet once, but two points sit there"
                    ));
                }
            }
        }
        for p in 0..self.points.len() {
            let load: u32 = self.proximate_to(p).map(|i| self.points[i].mult).sum();
            if load > self.points[p].mult {
                return bad(format!(
                    "proximity inequality fails at point {p}: multiplicity {} < {load}",
                    self.points[p].mult
                ));
            }
        }
        Ok(())
    }

    /// `a_i = 1 + Σ a_p` over the curves the point lies on.
    pub fn discrepancies(&self) -> Result<Vec<i64>> {
        self.validate()?;
        let mut a: Vec<i64> = Vec::with_capacity(self.points.len());
        for pt in &self.points {
            a.push(1 + pt.proximity.iter().map(|&p| a[p]).sum::<i64>());
        }
        Ok(a)
    }

    /// `r_i = mult_i + Σ r_p` over the curves the point lies on.
    pub fn total_multiplicities(&self) -> Result<Vec<i64>> {
        self.validate()?;
        let mut r: Vec<i64> = Vec::with_capacity(self.points.len());
        for pt in &self.points {
            r.push(pt.mult as i64 + pt.proximity.iter().map(|&p| r[p]).sum::<i64>());
        }
        Ok(r)
    }

    /// Branches of the curve: at each point, the multiplicity not passed
    /// on to proximate points leaves along the exceptional curve.
    pub fn branches(&self) -> usize {
        if self.points.is_empty() {
            return 1;
        }
        (0..self.points.len())
            .map(|p| {
                let load: u32 = self.proximate_to(p).map(|i| self.points[i].mult).sum();
                (self.points[p].mult - load) as usize
            })
            .sum()
    }
}

/// `min(1, min (a_i + 1)/r_i)` with the divisors and curve branches that
/// reach log discrepancy zero there.
pub fn lct(c: &BlowupCluster) -> Result<PairThresholdReport> {
    let a = c.discrepancies()?;
    let r = c.total_multiplicities()?;
    let ratios: Vec<Rational> = a
        .iter()
        .zip(&r)
        .map(|(&a, &r)| Rational::new((a + 1).into(), r.into()))
        .collect();
    let lct = ratios
        .iter()
        .fold(Rational::one(), |m, x| if *x < m { x.clone() } else { m });
    let argmin: Vec<usize> = (0..ratios.len()).filter(|&i| ratios[i] == lct).collect();
    let mut centers: Vec<Center> = argmin.iter().map(|&i| Center::Point(i)).collect();
    if lct.is_one() {
        centers.extend((0..c.branches()).map(Center::CurveComponent));
    }
    let minimal_center = centers
        .first()
        .cloned()
        .expect("a center exists at the threshold");
    debug_assert!(lct > Rational::zero());
    Ok(PairThresholdReport {
        discrepancies: a,
        total_multiplicities: r,
        lct,
        argmin,
        centers,
        minimal_center,
    })
}

/// Whether `(X, tD)` is log canonical at the point.
pub fn is_lc_at(c: &BlowupCluster, t: &Rational) -> Result<bool> {
    if *t < Rational::zero() {
        return Err(Error::InvalidInput(
            "the coefficient must be non-negative".into(),
        ));
    }
    Ok(*t <= lct(c)?.lct)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn cusp() -> BlowupCluster {
        BlowupCluster::from_pairs(&[(&[], 2), (&[0], 1), (&[0, 1], 1)]).unwrap()
    }

    #[test]
    fn discrepancy_examples() {
        assert_eq!(BlowupCluster::ordinary(1).discrepancies().unwrap(), vec![1]);
        let chain = BlowupCluster::from_pairs(&[(&[], 1), (&[0], 1)]).unwrap();
        assert_eq!(chain.discrepancies().unwrap(), vec![1, 2]);
        assert_eq!(cusp().discrepancies().unwrap(), vec![1, 2, 4]);
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(
            BlowupCluster::ordinary(2).total_multiplicities().unwrap(),
            vec![2]
        );
        assert_eq!(cusp().total_multiplicities().unwrap(), vec![2, 3, 6]);
        assert_eq!(
            BlowupCluster::ordinary(1).total_multiplicities().unwrap(),
            vec![1]
        );
    }

    #[test]
    fn lct_examples() {
        let smooth = lct(&BlowupCluster::default()).unwrap();
        assert_eq!(smooth.lct, rat(1, 1));
        assert_eq!(smooth.minimal_center, Center::CurveComponent(0));

        let c = lct(&cusp()).unwrap();
        assert_eq!(c.lct, rat(5, 6));
        assert_eq!(c.argmin, vec![2]);
        assert_eq!(c.centers, vec![Center::Point(2)]);

        for m in 1..12u32 {
            let expected = if m <= 2 { rat(1, 1) } else { rat(2, m as i64) };
            assert_eq!(lct(&BlowupCluster::ordinary(m)).unwrap().lct, expected);
        }
    }

    #[test]
    fn two_branches_meet_in_a_center() {
        let node = lct(&BlowupCluster::ordinary(2)).unwrap();
        assert_eq!(node.lct, rat(1, 1));
        assert_eq!(
            node.centers,
            vec![
                Center::Point(0),
                Center::CurveComponent(0),
                Center::CurveComponent(1)
            ]
        );
    }

    #[test]
    fn lc_checks() {
        assert!(is_lc_at(&cusp(), &rat(5, 6)).unwrap());
        assert!(!is_lc_at(&cusp(), &rat(1, 1)).unwrap());
        assert!(is_lc_at(&cusp(), &rat(0, 1)).unwrap());
    }

    #[test]
    fn bad_clusters() {
        let bad = |pairs: &[(&[usize], u32)]| {
            matches!(BlowupCluster::from_pairs(pairs), Err(Error::BadCluster(_)))
        };
        assert!(bad(&[(&[], 1), (&[0], 2)]));
        assert!(bad(&[(&[1], 1)]));
        assert!(bad(&[(&[], 2), (&[], 1)]));
        assert!(bad(&[(&[], 3), (&[0], 1), (&[0], 1), (&[1, 2], 1)]));
        assert!(bad(&[(&[], 2), (&[0], 0)]));
        assert!(bad(&[(&[], 2), (&[0], 1), (&[0, 1], 1), (&[0, 1], 1)]));
    }
}
