use super::plane_map::{format_point, PlaneMap, Point, VARS};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::poly::Poly;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Starting coordinate height of sampled points.
pub const START_HEIGHT: i64 = 10_000;
const DRAWS_PER_HEIGHT: usize = 64;
const MAX_DOUBLINGS: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub equal: bool,
    pub trials: u32,
    pub seed: u64,
    /// Coordinate height in force when sampling stopped.
    pub height: i64,
    /// A sampled point whose images are not proportional.
    pub witness: Option<String>,
    /// `f_i g_j - f_j g_i` for `(i, j)` = (0,1), (0,2), (1,2).
    pub residuals: Option<Vec<String>>,
}

fn proportional(a: &Point, b: &Point) -> bool {
    (0..3).all(|i| (0..3).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
}

/// Projective equality of two maps tested at random integer points outside
/// both base loci.
pub fn verify_equal(
    f: &PlaneMap,
    g: &PlaneMap,
    trials: u32,
    seed: u64,
    symbolic: bool,
) -> Result<VerifyReport> {
    if trials == 0 {
        return Err(Error::InvalidInput("at least one trial is needed".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut height = START_HEIGHT;
    let mut doublings = 0;
    let mut equal = true;
    let mut witness = None;
    'trials: for _ in 0..trials {
        let mut draws = 0;
        loop {
            if draws == DRAWS_PER_HEIGHT {
                if doublings == MAX_DOUBLINGS {
                    return Err(Error::Inconclusive(format!(
                        "every sampled point up to height {height} lies in a base locus"
                    )));
                }
                doublings += 1;
                height *= 2;
                draws = 0;
            }
            draws += 1;
            let p: Point =
                [0, 1, 2].map(|_| Rational::from_integer(rng.gen_range(-height..=height).into()));
            if p.iter().all(|x| x.is_zero()) {
                continue;
            }
            let (fp, gp) = (f.apply(&p), g.apply(&p));
            if fp.iter().all(|x| x.is_zero()) || gp.iter().all(|x| x.is_zero()) {
                continue;
            }
            if !proportional(&fp, &gp) {
                equal = false;
                witness = Some(format_point(&p));
                break 'trials;
            }
            break;
        }
    }
    let residuals = symbolic.then(|| {
        let (fc, gc) = (f.components(), g.components());
        [(0, 1), (0, 2), (1, 2)]
            .iter()
            .map(|&(i, j)| {
                let r: Poly = &(&fc[i] * &gc[j]) - &(&fc[j] * &gc[i]);
                r.to_string_with(&VARS)
            })
            .collect::<Vec<_>>()
    });
    Ok(VerifyReport {
        equal,
        trials,
        seed,
        height,
        witness,
        residuals,
    })
}
