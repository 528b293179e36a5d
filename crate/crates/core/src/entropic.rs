//! Number and phase Shannon entropies and the ln(2π) uncertainty bound.

use std::f64::consts::TAU;

use crate::numeric;
use crate::phase::{self, PhaseDistribution, PhaseGrid};
use crate::state::StateWeights;

/// ln(2π), the dimension-independent lower bound on R_N + R_φ. Equality
/// holds exactly for number eigenstates (uniform phase), i.e. at z = 0.
pub fn entropy_bound() -> f64 {
    TAU.ln()
}

/// Both entropies of one state, their sum, and the slack against ln(2π).
#[derive(Debug, Clone, Copy)]
pub struct EntropyReport {
    pub r_number: f64,
    pub r_phase: f64,
    pub total: f64,
    pub bound: f64,
    /// total − bound; nonnegative up to quadrature error.
    pub margin: f64,
}

/// R_N = −Σ_n w_n ln w_n with 0·ln 0 = 0.
///
/// ln w_n is taken from the stored log-space terms (log_raw − ln N), which
/// stays exact for weights far below the subnormal range.
pub fn number_entropy(state: &StateWeights) -> f64 {
    let log_norm = state.log_normalization();
    state
        .weights()
        .iter()
        .zip(state.log_raw())
        .map(|(&w, &log_raw)| {
            if w < 1e-300 {
                0.0
            } else {
                -w * (log_raw - log_norm)
            }
        })
        .sum()
}

fn entropy_integrand(p: f64) -> f64 {
    if p < 1e-300 {
        0.0
    } else {
        -p * p.ln()
    }
}

/// R_φ = −∫ P ln P dθ over the 2π window, by composite Simpson with the
/// periodic endpoint appended.
pub fn phase_entropy(distribution: &PhaseDistribution) -> f64 {
    let m = distribution.grid().points();
    let samples: Vec<f64> = (0..=m)
        .map(|j| entropy_integrand(distribution.value_wrapped(j)))
        .collect();
    numeric::simpson_uniform(&samples, distribution.grid().step())
}

/// Trapezoid variant of [`phase_entropy`], kept as a quadrature cross-check.
pub fn phase_entropy_trapezoid(distribution: &PhaseDistribution) -> f64 {
    let m = distribution.grid().points();
    let samples: Vec<f64> = (0..=m)
        .map(|j| entropy_integrand(distribution.value_wrapped(j)))
        .collect();
    numeric::trapezoid_uniform(&samples, distribution.grid().step())
}

/// Assemble R_N, R_φ, their sum, and the margin against ln(2π).
pub fn entropy_report(state: &StateWeights, grid: &PhaseGrid) -> EntropyReport {
    let r_number = number_entropy(state);
    let r_phase = phase_entropy(&phase::phase_distribution(state, grid));
    let total = r_number + r_phase;
    let bound = entropy_bound();
    EntropyReport {
        r_number,
        r_phase,
        total,
        bound,
        margin: total - bound,
    }
}
