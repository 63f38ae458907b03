use crate::{to_value, CliError, Output};
use biratlab::bounds;
use biratlab::cremona::{factor_type, validate_type, HomaloidalType};
use biratlab::exact::{format_rational, rat};
use biratlab::mmp;
use biratlab::poly::parse_poly;
use biratlab::sing::{lct, resolve_plane_curve, DEFAULT_DEPTH};
use clap::{Args, Subcommand};
use serde::Serialize;
use serde_json::json;

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[command(subcommand)]
    kind: ScanKind,
}

#[derive(Subcommand, Debug)]
enum ScanKind {
    /// Castelnuovo inequality for every `d ≤ 2n - 4`.
    Uniruled {
        #[arg(long, default_value_t = 4)]
        n_min: u64,
        #[arg(long, default_value_t = 60)]
        n_max: u64,
    },
    /// `p(0)` and `p(1)` for indices `n-2`, `n-1`, `n`.
    Logfano {
        #[arg(long, default_value_t = 3)]
        n_min: u32,
        #[arg(long, default_value_t = 10)]
        n_max: u32,
        #[arg(long, default_value_t = 60)]
        d_max: u64,
    },
    /// Numbers of (-1)-classes and conic classes on `Bl_r`.
    MinusOne {
        #[arg(long, default_value_t = 8)]
        r_max: u32,
    },
    /// Every solution of the Noether identities and its untwisting.
    Homaloidal {
        #[arg(long, default_value_t = 20)]
        n_max: u64,
    },
    /// Thresholds of `y^2 = x^(k+1)`.
    LctAk {
        #[arg(long, default_value_t = 12)]
        k_max: u32,
    },
}

#[derive(Serialize)]
struct UniruledRow {
    n: u64,
    d: u64,
    m: i64,
    castelnuovo_bound: i64,
    genus_lower: String,
    passes: bool,
    inequality_holds: bool,
}

#[derive(Serialize)]
struct LogfanoRow {
    n: u32,
    d: u64,
    index: String,
    a: String,
    p0: String,
    p1: String,
    lower_bound: String,
    bound_holds: bool,
    regime: String,
    mukai_h0: Option<u64>,
}

#[derive(Serialize)]
struct CountRow {
    r: u32,
    minus_one_classes: usize,
    conic_classes: usize,
}

#[derive(Serialize)]
struct HomaloidalRow {
    n: u64,
    mults: String,
    max_mult: u64,
    exceeds_third: bool,
    degrees: String,
    outcome: String,
}

#[derive(Serialize)]
struct LctRow {
    k: u32,
    poly: String,
    lct: String,
    closed_form: String,
}

/// Non-increasing solutions of `Σm = 3n-3`, `Σm^2 = n^2-1`, `1 ≤ m < n`.
pub fn noether_solutions(n: u64) -> Vec<Vec<u64>> {
    fn go(cap: u64, s: u64, q: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if s == 0 {
            if q == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if q < s || q > cap * s {
            return;
        }
        for v in (1..=cap.min(s)).rev() {
            if v * v <= q {
                cur.push(v);
                go(v, s - v, q - v * v, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if n >= 2 {
        go(n - 1, 3 * n - 3, n * n - 1, &mut Vec::new(), &mut out);
    }
    out
}

fn table<R: Serialize>(kind: &str, rows: &[R]) -> Result<Output, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Input(e.to_string()))?;
    }
    let csv =
        String::from_utf8(w.into_inner().map_err(|e| CliError::Input(e.to_string()))?).unwrap();
    let rows: Vec<_> = rows.iter().map(to_value).collect();
    Ok(Output::new("scan", json!({ "kind": kind, "rows": rows })).with_csv(csv))
}

fn check_range<T: PartialOrd + std::fmt::Display>(
    lo: T,
    hi: T,
    what: &str,
) -> Result<(), CliError> {
    if lo > hi {
        return Err(CliError::Input(format!("empty {what} range {lo}..{hi}")));
    }
    Ok(())
}

pub fn run(a: &ScanArgs) -> Result<Output, CliError> {
    match a.kind {
        ScanKind::Uniruled { n_min, n_max } => {
            check_range(n_min, n_max, "n")?;
            let mut rows = Vec::new();
            for n in n_min..=n_max {
                for d in 1..=(2 * n).saturating_sub(4) {
                    let r = bounds::uniruled_criterion(d, n)?;
                    rows.push(UniruledRow {
                        n,
                        d,
                        m: r.m,
                        castelnuovo_bound: r.castelnuovo_bound,
                        genus_lower: format_rational(&r.genus_lower),
                        passes: r.passes,
                        inequality_holds: r.inequality_holds,
                    });
                }
            }
            table("uniruled", &rows)
        }
        ScanKind::Logfano {
            n_min,
            n_max,
            d_max,
        } => {
            check_range(n_min, n_max, "n")?;
            let mut rows = Vec::new();
            for n in n_min..=n_max {
                for d in 1..=d_max {
                    for i in [n - 2, n - 1, n] {
                        let r = bounds::logfano_h0(n, d, &rat(i as i64, 1))?;
                        rows.push(LogfanoRow {
                            n,
                            d,
                            index: i.to_string(),
                            a: format_rational(&r.a),
                            p0: format_rational(&r.p0),
                            p1: format_rational(&r.p1),
                            lower_bound: format_rational(&r.lower_bound),
                            bound_holds: r.bound_holds,
                            regime: format!("{:?}", r.regime),
                            mukai_h0: r.mukai_h0,
                        });
                    }
                }
            }
            table("logfano", &rows)
        }
        ScanKind::MinusOne { r_max } => {
            if r_max > 8 {
                return Err(CliError::Domain(biratlab::Error::UnsupportedCone(format!(
                    "blow-up of {r_max} points has infinitely many (-1)-curves"
                ))));
            }
            let rows = (1..=r_max)
                .map(|r| {
                    Ok(CountRow {
                        r,
                        minus_one_classes: mmp::enumerate_minus_one_classes(r)?.len(),
                        conic_classes: mmp::enumerate_conic_classes(r)?.len(),
                    })
                })
                .collect::<Result<Vec<_>, biratlab::Error>>()?;
            table("minus-one", &rows)
        }
        ScanKind::Homaloidal { n_max } => {
            if n_max > 40 {
                return Err(CliError::Input("n-max above 40 is not supported".into()));
            }
            let mut rows = Vec::new();
            let linear = HomaloidalType::linear();
            rows.push(HomaloidalRow {
                n: 1,
                mults: String::new(),
                max_mult: 0,
                exceeds_third: true,
                degrees: "1".into(),
                outcome: "linear".into(),
            });
            for n in 2..=n_max {
                for m in noether_solutions(n) {
                    let t = validate_type(n, &m)?;
                    let (degrees, outcome) = match factor_type(&t) {
                        Ok(tr) => {
                            debug_assert_eq!(tr.degrees.last(), Some(&linear.n));
                            let d: Vec<String> = tr.degrees.iter().map(|x| x.to_string()).collect();
                            (d.join(" "), "factored".to_string())
                        }
                        Err(e) => (String::new(), e.kind().to_string()),
                    };
                    let ms: Vec<String> = m.iter().map(|x| x.to_string()).collect();
                    rows.push(HomaloidalRow {
                        n,
                        mults: ms.join(" "),
                        max_mult: m[0],
                        exceeds_third: 3 * m[0] > n,
                        degrees,
                        outcome,
                    });
                }
            }
            table("homaloidal", &rows)
        }
        ScanKind::LctAk { k_max } => {
            let mut rows = Vec::new();
            for k in 1..=k_max {
                let poly = format!("y^2 - x^{}", k + 1);
                let f = parse_poly(&poly, &["x", "y"])?;
                let c = resolve_plane_curve(&f, DEFAULT_DEPTH)?;
                let closed = std::cmp::min(rat(1, 1), rat(1, 2) + rat(1, k as i64 + 1));
                rows.push(LctRow {
                    k,
                    poly,
                    lct: format_rational(&lct(&c)?.lct),
                    closed_form: format_rational(&closed),
                });
            }
            table("lct-ak", &rows)
        }
    }
}
