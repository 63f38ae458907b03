use biratlab::lattice::{intersect, DivisorClass, SurfaceModel};
use biratlab::mmp::{
    apply_matrix, contract_ray, enumerate_conic_classes, enumerate_extremal_rays,
    enumerate_minus_one_classes, numerics, run_mmp, ContractionKind, Strategy, Terminal,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use proptest::prelude::*;
use std::collections::BTreeSet;

/// Plain coordinates `(a, b_1..b_r)` of `aH - Σ b_i E_i`.
fn ab(c: &DivisorClass) -> Vec<i64> {
    let mut v: Vec<i64> = c.coords.iter().map(|x| -x.to_i64().unwrap()).collect();
    v[0] = -v[0];
    v
}

fn dot(x: &[i64], y: &[i64]) -> i64 {
    x[0] * y[0] - x[1..].iter().zip(&y[1..]).map(|(a, b)| a * b).sum::<i64>()
}

fn distinct_permutations(b: &[i64]) -> u64 {
    let mut n: u64 = (1..=b.len() as u64).product();
    let mut i = 0;
    while i < b.len() {
        let j = (i..b.len()).find(|&j| b[j] != b[i]).unwrap_or(b.len());
        n /= (1..=(j - i) as u64).product::<u64>();
        i = j;
    }
    n
}

/// Non-increasing `b` with entries in `0..=a` and the given sum and norm.
fn sorted_solutions(r: usize, a: i64, sum: i64, norm: i64) -> Vec<Vec<i64>> {
    fn go(left: usize, cap: i64, s: i64, q: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if left == 0 {
            if s == 0 && q == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for v in (0..=cap.min(s)).rev() {
            if v * v > q {
                continue;
            }
            cur.push(v);
            go(left - 1, v, s - v, q - v * v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(r, a, sum, norm, &mut Vec::new(), &mut out);
    out
}

/// Counts classes with `D^2 = s`, `K.D = k` by a multiset scan over `a ≤ 12`.
fn brute_count(r: usize, s: i64, k: i64) -> u64 {
    // a = 0: classes Σ c_i E_i with Σc_i^2 = -s and Σ c_i = -k, c_i any sign
    let mut total = 0;
    if s == -1 && k == -1 {
        total += r as u64;
    }
    for a in 1..=12 {
        for b in sorted_solutions(r, a, 3 * a + k, a * a - s) {
            total += distinct_permutations(&b);
        }
    }
    total
}

#[test]
fn minus_one_counts_match_wide_scan() {
    let expected = [1u64, 3, 6, 10, 16, 27, 56, 240];
    for r in 1..=8u32 {
        let found = enumerate_minus_one_classes(r).unwrap();
        assert_eq!(found.len() as u64, expected[r as usize - 1], "r = {r}");
        assert_eq!(
            brute_count(r as usize, -1, -1),
            expected[r as usize - 1],
            "scan r = {r}"
        );
    }
}

#[test]
fn conic_counts_match_wide_scan() {
    for r in 1..=8u32 {
        let found = enumerate_conic_classes(r).unwrap();
        assert_eq!(
            found.len() as u64,
            brute_count(r as usize, 0, -2),
            "r = {r}"
        );
    }
}

fn reflect(x: &[i64], alpha: &[i64]) -> Vec<i64> {
    let t = dot(x, alpha);
    x.iter().zip(alpha).map(|(a, b)| a + t * b).collect()
}

/// Orbit of `E_1` under the Weyl group generated by the simple roots.
fn weyl_orbit(r: usize) -> BTreeSet<Vec<i64>> {
    let mut roots = Vec::new();
    for i in 1..r {
        let mut a = vec![0; r + 1];
        a[i] = -1;
        a[i + 1] = 1;
        roots.push(a);
    }
    if r >= 3 {
        let mut a = vec![1, 1, 1, 1];
        a.resize(r + 1, 0);
        roots.push(a);
    }
    let mut e1 = vec![0; r + 1];
    e1[1] = -1;
    let mut seen = BTreeSet::from([e1.clone()]);
    let mut queue = vec![e1];
    while let Some(x) = queue.pop() {
        for a in &roots {
            let y = reflect(&x, a);
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    seen
}

#[test]
fn minus_one_classes_form_one_weyl_orbit() {
    for r in 3..=8 {
        let found: BTreeSet<Vec<i64>> = enumerate_minus_one_classes(r as u32)
            .unwrap()
            .iter()
            .map(ab)
            .collect();
        assert_eq!(found, weyl_orbit(r), "r = {r}");
    }
}

#[test]
fn classes_are_closed_under_permutation() {
    for r in 2..=8usize {
        let set: BTreeSet<Vec<i64>> = enumerate_minus_one_classes(r as u32)
            .unwrap()
            .iter()
            .map(ab)
            .collect();
        for x in &set {
            for i in 1..r {
                let mut y = x.clone();
                y.swap(i, i + 1);
                assert!(set.contains(&y));
            }
        }
    }
}

#[test]
fn ray_numerics() {
    let mut models = vec![SurfaceModel::plane()];
    models.extend((0..=8).map(SurfaceModel::blowup));
    models.extend((0..=10).map(SurfaceModel::hirzebruch));
    for m in models {
        for ray in enumerate_extremal_rays(&m).unwrap() {
            let (c2, kc) = numerics(&m, &ray.generator).unwrap();
            assert!(ray.generator.is_primitive());
            match ray.contraction_kind {
                ContractionKind::BlowdownToPoint => assert_eq!((c2, kc), (-1, -1)),
                ContractionKind::RuledFibration => assert_eq!((c2, kc), (0, -2)),
                ContractionKind::ContractToPoint => assert_eq!((c2, kc), (1, -3)),
            }
        }
    }
}

#[test]
fn unsupported_models_are_refused() {
    assert!(enumerate_extremal_rays(&SurfaceModel::blowup(9)).is_err());
    assert!(enumerate_extremal_rays(&SurfaceModel::blowup_special(4)).is_err());
}

fn supported(i: u32) -> SurfaceModel {
    match i {
        0 => SurfaceModel::plane(),
        1..=9 => SurfaceModel::blowup(i - 1),
        _ => SurfaceModel::hirzebruch(i - 10),
    }
}

fn strategy(i: u8) -> Strategy {
    [
        Strategy::FirstRay,
        Strategy::PreferBirational,
        Strategy::PreferFiber,
    ][i as usize]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mmp_drops_rank_by_one(i in 0u32..21, s in 0u8..3) {
        let m = supported(i);
        let trace = run_mmp(&m, strategy(s)).unwrap();
        for step in &trace.steps {
            prop_assert_eq!(step.model_after.rank() + 1, step.model_before.rank());
            prop_assert_eq!(numerics(&step.model_before, &step.ray.generator).unwrap(), (-1, -1));
        }
        match &trace.terminal {
            Terminal::PlaneOutput => prop_assert_eq!(trace.final_model().rank(), 1),
            Terminal::RuledOutput { rank, fiber, .. } => {
                prop_assert_eq!(*rank, trace.final_model().rank());
                prop_assert_eq!(numerics(&trace.final_model(), fiber).unwrap(), (0, -2));
            }
            Terminal::MinimalOutput => prop_assert!(false, "rational surfaces have no minimal output"),
        }
    }

    #[test]
    fn pushforward_respects_the_form(
        i in 0u32..21,
        pick in any::<prop::sample::Index>(),
        x in prop::collection::vec(-30i64..30, 9),
        y in prop::collection::vec(-30i64..30, 9),
    ) {
        let m = supported(i);
        let births: Vec<_> = enumerate_extremal_rays(&m).unwrap().into_iter()
            .filter(|r| r.contraction_kind == ContractionKind::BlowdownToPoint).collect();
        prop_assume!(!births.is_empty());
        let ray = pick.get(&births);
        let (after, p) = contract_ray(&m, ray).unwrap();
        let x = m.class(&x[..m.rank()]).unwrap();
        let y = m.class(&y[..m.rank()]).unwrap();
        let px = DivisorClass::new(&after, apply_matrix(&p, &x.coords)).unwrap();
        let py = DivisorClass::new(&after, apply_matrix(&p, &y.coords)).unwrap();
        let l = &ray.generator;
        let rhs = intersect(&m, &x, &y).unwrap() + intersect(&m, &x, l).unwrap() * intersect(&m, &y, l).unwrap();
        prop_assert_eq!(intersect(&after, &px, &py).unwrap(), rhs);
        // the contracted curve goes to zero
        let pl = apply_matrix(&p, &l.coords);
        prop_assert!(pl.iter().all(|v| v.abs() < BigInt::one()));
    }
}

#[test]
fn fiber_rays_do_not_contract() {
    for m in [
        SurfaceModel::hirzebruch(0),
        SurfaceModel::hirzebruch(3),
        SurfaceModel::blowup(4),
    ] {
        let fib = enumerate_extremal_rays(&m)
            .unwrap()
            .into_iter()
            .find(|r| r.contraction_kind == ContractionKind::RuledFibration)
            .unwrap();
        assert!(matches!(
            contract_ray(&m, &fib),
            Err(biratlab::Error::NotBirational)
        ));
    }
}

#[test]
fn eight_points_reach_the_plane() {
    let t = run_mmp(&SurfaceModel::blowup(8), Strategy::PreferBirational).unwrap();
    assert_eq!(t.steps.len(), 8);
    assert_eq!(t.terminal, Terminal::PlaneOutput);
    let ranks: Vec<usize> = t.steps.iter().map(|s| s.model_after.rank()).collect();
    assert_eq!(ranks, (1..=8).rev().collect::<Vec<_>>());
}
