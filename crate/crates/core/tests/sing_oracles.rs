use biratlab::exact::Rational;
use biratlab::poly::{parse_poly, Poly};
use biratlab::sing::{is_lc_at, lct, resolve_plane_curve, BlowupCluster, Center, DEFAULT_DEPTH};
use proptest::prelude::*;

fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

fn threshold(s: &str) -> Rational {
    let f = parse_poly(s, &["x", "y"]).unwrap();
    lct(&resolve_plane_curve(&f, DEFAULT_DEPTH).unwrap())
        .unwrap()
        .lct
}

fn newton_oracle(p: i64, q: i64) -> Rational {
    // the diagonal meets the Newton boundary of y^p - x^q at t = pq/(p+q)
    std::cmp::min(rat(1, 1), rat(1, p) + rat(1, q))
}

#[test]
fn a_k_golden_values() {
    for k in 1..=12 {
        let expected = std::cmp::min(rat(1, 1), rat(1, 2) + rat(1, k + 1));
        assert_eq!(threshold(&format!("y^2 - x^{}", k + 1)), expected, "A_{k}");
    }
}

#[test]
fn quasi_homogeneous_germs() {
    for p in 2..=6 {
        for q in p..=9 {
            assert_eq!(
                threshold(&format!("y^{p} - x^{q}")),
                newton_oracle(p, q),
                "y^{p} - x^{q}"
            );
        }
    }
}

#[test]
fn ordinary_points_from_distinct_lines() {
    for m in 2..=10 {
        let lines: Vec<String> = (0..m).map(|i| format!("(y - {i}*x)")).collect();
        let f = parse_poly(&lines.join("*"), &["x", "y"]).unwrap();
        let c = resolve_plane_curve(&f, DEFAULT_DEPTH).unwrap();
        assert_eq!(c, BlowupCluster::ordinary(m as u32));
        assert_eq!(c.branches(), m);
        assert_eq!(
            lct(&c).unwrap().lct,
            std::cmp::min(rat(1, 1), rat(2, m as i64))
        );
    }
}

#[test]
fn two_branch_log_canonical_centers() {
    let f = parse_poly("(y - x^2)*(x - y^2)", &["x", "y"]).unwrap();
    let c = resolve_plane_curve(&f, DEFAULT_DEPTH).unwrap();
    let rep = lct(&c).unwrap();
    assert_eq!(rep.lct, rat(1, 1));
    assert!(rep.centers.contains(&Center::Point(0)));
    assert!(rep.centers.contains(&Center::CurveComponent(0)));
    assert!(rep.centers.contains(&Center::CurveComponent(1)));
    assert_eq!(rep.minimal_center, Center::Point(0));
}

#[test]
fn tacnode_and_cusp_orders() {
    assert_eq!(threshold("y*(y - x^2)"), rat(3, 4));
    assert_eq!(threshold("y^2 - x^3"), rat(5, 6));
    assert_eq!(threshold("x*y"), rat(1, 1));
    assert_eq!(threshold("y^3 - x^4"), rat(7, 12));
    assert_eq!(threshold("y^3 - x^5"), rat(8, 15));
}

fn scaled(s: &str, a: i64, b: i64, c: i64) -> Poly {
    let f = parse_poly(s, &["x", "y"]).unwrap();
    let images = [
        Poly::var(2, 0).scale(&Rational::from_integer(a.into())),
        Poly::var(2, 1).scale(&Rational::from_integer(b.into())),
    ];
    f.substitute(&images)
        .scale(&Rational::from_integer(c.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn threshold_is_invariant_under_scaling(
        k in 1i64..9,
        a in prop::sample::select(vec![-5i64, -3, -2, -1, 1, 2, 3, 7]),
        b in prop::sample::select(vec![-4i64, -1, 1, 2, 5]),
        c in prop::sample::select(vec![-6i64, -1, 1, 3, 11]),
    ) {
        let s = format!("y^2 - x^{}", k + 1);
        let base = resolve_plane_curve(&parse_poly(&s, &["x", "y"]).unwrap(), DEFAULT_DEPTH).unwrap();
        let moved = resolve_plane_curve(&scaled(&s, a, b, c), DEFAULT_DEPTH).unwrap();
        prop_assert_eq!(&moved, &base);
        prop_assert_eq!(lct(&moved).unwrap().lct, std::cmp::min(rat(1, 1), rat(1, 2) + rat(1, k + 1)));
    }

    #[test]
    fn threshold_is_invariant_under_shears(k in 1i64..9, t in -4i64..=4) {
        // y -> y + t x keeps the germ analytically the same
        let s = format!("y^2 - x^{}", k + 1);
        let f = parse_poly(&s, &["x", "y"]).unwrap();
        let images = [Poly::var(2, 0), &Poly::var(2, 1) + &Poly::var(2, 0).scale(&Rational::from_integer(t.into()))];
        let g = f.substitute(&images);
        let c = resolve_plane_curve(&g, DEFAULT_DEPTH).unwrap();
        prop_assert_eq!(lct(&c).unwrap().lct, std::cmp::min(rat(1, 1), rat(1, 2) + rat(1, k + 1)));
    }

    #[test]
    fn lc_exactly_up_to_the_threshold(k in 1i64..12, num in 1i64..40) {
        let s = format!("y^2 - x^{}", k + 1);
        let c = resolve_plane_curve(&parse_poly(&s, &["x", "y"]).unwrap(), DEFAULT_DEPTH).unwrap();
        let l = lct(&c).unwrap().lct;
        let t = rat(num, 20);
        prop_assert_eq!(is_lc_at(&c, &t).unwrap(), t <= l);
    }
}

#[test]
fn clusters_round_trip_through_json() {
    let f = parse_poly("y^3 - x^7", &["x", "y"]).unwrap();
    let c = resolve_plane_curve(&f, DEFAULT_DEPTH).unwrap();
    let s = serde_json::to_string(&c).unwrap();
    assert_eq!(serde_json::from_str::<BlowupCluster>(&s).unwrap(), c);
    let rep = lct(&c).unwrap();
    let r = serde_json::to_string(&rep).unwrap();
    assert!(r.contains("\"lct\":\"10/21\""), "{r}");
}
