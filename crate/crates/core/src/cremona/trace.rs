use super::homaloidal::HomaloidalType;
use crate::lattice::{DivisorClass, SurfaceModel};
use serde::{Deserialize, Serialize};

/// Where a link chain stands after one link.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkState {
    pub model: SurfaceModel,
    pub class: DivisorClass,
    /// Multiplicities of the base points not yet blown up.
    pub remaining: Vec<u64>,
    /// `n' = n - m_max` for the round.
    pub threshold: i64,
    /// `D^2 - Σ m^2` over the remaining points; 1 throughout.
    pub self_intersection_certificate: i64,
    /// `K.D + Σ m` over the remaining points; -3 throughout.
    pub canonical_certificate: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step")]
pub enum Step {
    QuadraticCremona {
        points: Vec<String>,
        mults: Vec<u64>,
        degree_before: u64,
        degree_after: u64,
        /// Base-point multiplicities known after the step.
        remaining: Vec<u64>,
    },
    BlowUpMaxMult {
        point: String,
        mult: u64,
        /// `-n + 3 m_max`, positive for a Noether-Fano point.
        certificate: i64,
        state: LinkState,
    },
    ElementaryTransform {
        point: String,
        mult: u64,
        from: SurfaceModel,
        to: SurfaceModel,
        /// Whether `m > n'/2` at the blown-up point.
        exceeds_half_fiber_degree: bool,
        new_point: String,
        new_mult: u64,
        state: LinkState,
    },
    BlowDown {
        new_point: String,
        new_mult: u64,
        state: LinkState,
    },
    Linear,
}

impl Step {
    pub fn state(&self) -> Option<&LinkState> {
        match self {
            Step::BlowUpMaxMult { state, .. }
            | Step::ElementaryTransform { state, .. }
            | Step::BlowDown { state, .. } => Some(state),
            Step::QuadraticCremona { .. } | Step::Linear => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationTrace {
    /// The factored type, when the input was combinatorial.
    pub start: Option<HomaloidalType>,
    pub steps: Vec<Step>,
    /// Plane degree at the start and after every quadratic step.
    pub degrees: Vec<u64>,
}

impl FactorizationTrace {
    pub fn quadratic_steps(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, Step::QuadraticCremona { .. }))
            .count()
    }
}
