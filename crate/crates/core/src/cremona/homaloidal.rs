use super::trace::{FactorizationTrace, LinkState, Step};
use crate::error::{Error, Result};
use crate::lattice::{self, DivisorClass, SurfaceModel};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

/// Degree and base-point multiplicities of a homaloidal net, multiplicities
/// sorted in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HomaloidalType {
    pub n: u64,
    pub mults: Vec<u64>,
}

impl HomaloidalType {
    pub fn linear() -> Self {
        HomaloidalType {
            n: 1,
            mults: Vec::new(),
        }
    }

    /// The class `nH - Σ m_i E_i` on the blow-up at all base points.
    pub fn class(&self) -> (SurfaceModel, DivisorClass) {
        let model = SurfaceModel::blowup(self.mults.len() as u32);
        let coords = std::iter::once(BigInt::from(self.n))
            .chain(self.mults.iter().map(|&m| -BigInt::from(m)))
            .collect();
        let class = DivisorClass::new(&model, coords).expect("rank matches");
        (model, class)
    }

    /// `(D^2, K.D)` of [`HomaloidalType::class`].
    pub fn lattice_numerics(&self) -> (i64, i64) {
        let (model, d) = self.class();
        let k = lattice::canonical_class(&model);
        let dd = lattice::intersect(&model, &d, &d).unwrap();
        let kd = lattice::intersect(&model, &k, &d).unwrap();
        (dd.to_i64().unwrap(), kd.to_i64().unwrap())
    }
}

impl std::fmt::Display for HomaloidalType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let m: Vec<String> = self.mults.iter().map(|m| m.to_string()).collect();
        write!(f, "({}; {})", self.n, m.join(","))
    }
}

const MAX_DEGREE: u64 = 1 << 30;

/// Checks the Noether identities `Σm = 3n-3`, `Σm^2 = n^2-1` and the bounds
/// `1 ≤ m ≤ n-1`, returning the sorted type.
pub fn validate_type(n: u64, mults: &[u64]) -> Result<HomaloidalType> {
    if n == 0 {
        return Err(Error::NotHomaloidal("degree must be at least 1".into()));
    }
    if n > MAX_DEGREE {
        return Err(Error::InvalidInput(format!("degree {n} is too large")));
    }
    if mults.contains(&0) {
        return Err(Error::NotHomaloidal(
            "multiplicities must be positive".into(),
        ));
    }
    if let Some(&m) = mults.iter().find(|&&m| m >= n) {
        return Err(Error::NotHomaloidal(format!(
            "multiplicity {m} exceeds n - 1 = {}",
            n - 1
        )));
    }
    let n = n as i128;
    let sum: i128 = mults.iter().map(|&m| m as i128).sum();
    if sum != 3 * n - 3 {
        return Err(Error::NotHomaloidal(format!(
            "sum of multiplicities {sum} != 3n - 3 = {}",
            3 * n - 3
        )));
    }
    let sq: i128 = mults.iter().map(|&m| (m as i128) * (m as i128)).sum();
    if sq != n * n - 1 {
        return Err(Error::NotHomaloidal(format!(
            "sum of squared multiplicities {sq} != n^2 - 1 = {}",
            n * n - 1
        )));
    }
    let mut sorted = mults.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    Ok(HomaloidalType {
        n: n as u64,
        mults: sorted,
    })
}

/// Index of the first maximal multiplicity, which exceeds `n/3`.
pub fn noether_fano_point(t: &HomaloidalType) -> Result<usize> {
    if t.n == 1 {
        return Err(Error::AlreadyLinear);
    }
    let max = *t.mults.iter().max().expect("n >= 2 has base points");
    let idx = t.mults.iter().position(|&m| m == max).unwrap();
    assert!(
        3 * max > t.n,
        "type {t} has no point of multiplicity above n/3"
    );
    Ok(idx)
}

/// Composes with the quadratic map based at the points `i`, `j`, `k`.
pub fn quadratic_untwist(
    t: &HomaloidalType,
    i: usize,
    j: usize,
    k: usize,
) -> Result<HomaloidalType> {
    let len = t.mults.len();
    if i == j || j == k || i == k || i >= len || j >= len || k >= len {
        return Err(Error::NoUntwist(format!(
            "indices {i}, {j}, {k} are not three distinct base points"
        )));
    }
    let n = t.n as i128;
    let (mi, mj, mk) = (t.mults[i] as i128, t.mults[j] as i128, t.mults[k] as i128);
    if mi + mj + mk <= n {
        return Err(Error::NoUntwist(format!(
            "{mi} + {mj} + {mk} does not exceed n = {n}"
        )));
    }
    let new = [n - mj - mk, n - mi - mk, n - mi - mj];
    if new.iter().any(|&m| m < 0) {
        return Err(Error::NoUntwist(format!(
            "multiplicities would become {:?}; {t} is not the type of a plane Cremona map",
            new
        )));
    }
    let mut mults: Vec<u64> = (0..len)
        .filter(|&x| x != i && x != j && x != k)
        .map(|x| t.mults[x])
        .collect();
    mults.extend(new.iter().filter(|&&m| m > 0).map(|&m| m as u64));
    let n2 = (2 * n - mi - mj - mk) as u64;
    let out = validate_type(n2, &mults)
        .map_err(|e| Error::NoUntwist(format!("untwisted type fails: {e}")))?;

    // the same move as a reflection of the lattice in H - E_i - E_j - E_k
    let (model, d) = t.class();
    let mut alpha = model.zero_class();
    alpha.coords[0] = BigInt::from(1);
    for x in [i, j, k] {
        alpha.coords[x + 1] = BigInt::from(-1);
    }
    let dot = lattice::intersect(&model, &d, &alpha).unwrap();
    let refl = d.add(&alpha.scale(&dot));
    let mut reflected: Vec<u64> = refl.coords[1..]
        .iter()
        .map(|c| (-c).to_u64().unwrap())
        .filter(|&m| m > 0)
        .collect();
    reflected.sort_unstable_by(|a, b| b.cmp(a));
    assert_eq!(refl.coords[0], BigInt::from(out.n));
    assert_eq!(reflected, out.mults);
    Ok(out)
}

fn link_state(
    model: SurfaceModel,
    coords: &[i64],
    remaining: Vec<u64>,
    threshold: i64,
) -> LinkState {
    let class = model.class(coords).unwrap();
    let k = lattice::canonical_class(&model);
    let dd = lattice::intersect(&model, &class, &class)
        .unwrap()
        .to_i64()
        .unwrap();
    let kd = lattice::intersect(&model, &k, &class)
        .unwrap()
        .to_i64()
        .unwrap();
    let sq: i64 = remaining.iter().map(|&m| (m * m) as i64).sum();
    let sum: i64 = remaining.iter().map(|&m| m as i64).sum();
    LinkState {
        model,
        class,
        remaining,
        threshold,
        self_intersection_certificate: dd - sq,
        canonical_certificate: kd + sum,
    }
}

fn without(v: &mut Vec<u64>, m: u64) {
    let pos = v
        .iter()
        .position(|&x| x == m)
        .expect("multiplicity present");
    v.remove(pos);
}

fn with(v: &[u64], m: i64) -> Vec<u64> {
    let mut out = v.to_vec();
    if m > 0 {
        out.push(m as u64);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// The same round as a chain of links `P2 <- F1 - -> F0 - -> F1 -> P2`,
/// assuming each base point sits on its own fiber and off `C_0`.
fn narrate_round(t: &HomaloidalType) -> (Vec<Step>, u64) {
    let n = t.n as i64;
    let (m1, m2, m3) = (t.mults[0] as i64, t.mults[1] as i64, t.mults[2] as i64);
    let f1 = SurfaceModel::hirzebruch(1);
    let f0 = SurfaceModel::hirzebruch(0);
    let threshold = n - m1;
    let mut rem = t.mults.clone();
    let mut steps = Vec::new();

    // blow up p1: nH - m1 E1 = (n - m1) C0 + n f
    without(&mut rem, m1 as u64);
    let (a, mut b) = (n - m1, n);
    steps.push(Step::BlowUpMaxMult {
        point: "p1".into(),
        mult: m1 as u64,
        certificate: 3 * m1 - n,
        state: link_state(f1, &[a, b], rem.clone(), threshold),
    });

    // elementary transformation at p2, F1 - -> F0: b -> b - m
    without(&mut rem, m2 as u64);
    b -= m2;
    let q1 = a - m2;
    rem = with(&rem, q1);
    steps.push(Step::ElementaryTransform {
        point: "p2".into(),
        mult: m2 as u64,
        from: f1,
        to: f0,
        exceeds_half_fiber_degree: 2 * m2 > a,
        new_point: "q1".into(),
        new_mult: q1 as u64,
        state: link_state(f0, &[a, b], rem.clone(), threshold),
    });

    // elementary transformation at p3, F0 - -> F1 along the section
    // through p3: b -> a + b - m
    without(&mut rem, m3 as u64);
    b = a + b - m3;
    let q2 = a - m3;
    rem = with(&rem, q2);
    steps.push(Step::ElementaryTransform {
        point: "p3".into(),
        mult: m3 as u64,
        from: f0,
        to: f1,
        exceeds_half_fiber_degree: 2 * m3 > a,
        new_point: "q2".into(),
        new_mult: q2 as u64,
        state: link_state(f1, &[a, b], rem.clone(), threshold),
    });

    // blow down C0: aC0 + bf = bH - (b - a)E
    let j = b;
    let q3 = b - a;
    rem = with(&rem, q3);
    steps.push(Step::BlowDown {
        new_point: "q3".into(),
        new_mult: q3 as u64,
        state: link_state(SurfaceModel::plane(), &[j], rem, threshold),
    });
    assert!(q1 >= 0 && q2 >= 0 && q3 >= 0);
    (steps, j as u64)
}

/// Untwists the type by quadratic maps on its three largest multiplicities
/// until it is linear, narrating each round as elementary links.
pub fn factor_type(t: &HomaloidalType) -> Result<FactorizationTrace> {
    let mut cur = validate_type(t.n, &t.mults)?;
    let mut steps = Vec::new();
    let mut degrees = vec![cur.n];
    while cur.n > 1 {
        let i = noether_fano_point(&cur)?;
        debug_assert_eq!(i, 0);
        let next = quadratic_untwist(&cur, 0, 1, 2)?;
        let (links, j) = narrate_round(&cur);
        assert_eq!(
            j, next.n,
            "link chain and quadratic untwist disagree on the new degree"
        );
        assert!(j < cur.n, "degree did not drop");
        if let Some(Step::BlowDown { state, .. }) = links.last() {
            assert_eq!(state.remaining, next.mults);
        }
        steps.push(Step::QuadraticCremona {
            points: vec!["p1".into(), "p2".into(), "p3".into()],
            mults: cur.mults[..3].to_vec(),
            degree_before: cur.n,
            degree_after: next.n,
            remaining: next.mults.clone(),
        });
        steps.extend(links);
        degrees.push(next.n);
        cur = next;
    }
    Ok(FactorizationTrace {
        start: Some(t.clone()),
        steps,
        degrees,
    })
}
