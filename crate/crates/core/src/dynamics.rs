//! Time evolution of the phase observables in the Gazeau–Klauder picture.
//!
//! The evolved state attaches a phase e^{-iρ_n γ} to level n, with γ the
//! dimensionless time (ħ = ω = 1). Level weights are untouched, so the
//! Mandel parameter, number variance and number entropy never move; only the
//! phase distribution and the quantities built on it acquire a γ dependence.
//! Hamiltonian evolution by t shifts γ → γ + t, which is all "temporal
//! stability" means operationally.
//!
//! The evolved distribution is the symmetric-window double sum
//! P(θ, γ) = (1 + 2 Σ_{n>k} √(w_n w_k) cos[(n−k)θ] cos[(ρ_n−ρ_k)γ])/2π,
//! which is the ±θ average of |⟨θ|z, γ⟩|² and reduces to the static form at
//! γ = 0. The squared-modulus fast path is therefore only used at γ = 0,
//! where the two agree identically.

use crate::entropic;
use crate::phase::{self, PhaseDistribution, PhaseGrid};
use crate::state::StateWeights;

/// Uniformly sampled window of the evolution parameter γ (inclusive ends).
#[derive(Debug, Clone, Copy)]
pub struct EvolutionGrid {
    gamma_min: f64,
    gamma_max: f64,
    steps: usize,
}

impl EvolutionGrid {
    pub fn new(gamma_min: f64, gamma_max: f64, steps: usize) -> Self {
        assert!(
            gamma_max > gamma_min,
            "gamma window must have positive width"
        );
        assert!(steps >= 2, "need at least two samples");
        Self {
            gamma_min,
            gamma_max,
            steps,
        }
    }

    pub fn gamma_min(&self) -> f64 {
        self.gamma_min
    }

    pub fn gamma_max(&self) -> f64 {
        self.gamma_max
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn gammas(&self) -> impl Iterator<Item = f64> + '_ {
        let width = self.gamma_max - self.gamma_min;
        let denom = (self.steps - 1) as f64;
        (0..self.steps).map(move |i| self.gamma_min + width * i as f64 / denom)
    }
}

/// Mode coefficients C_m(γ) = Σ_k √(w_{k+m} w_k) cos[(ρ_{k+m} − ρ_k) γ].
fn evolved_mode_coefficients(state: &StateWeights, gamma: f64) -> Vec<f64> {
    let sqrt_w: Vec<f64> = state.weights().iter().map(|w| w.sqrt()).collect();
    let spectrum = state.spectrum();
    let n = sqrt_w.len();
    (1..n)
        .map(|mode| {
            (0..n - mode)
                .map(|k| {
                    let beat = (spectrum.rho(k + mode) - spectrum.rho(k)) * gamma;
                    sqrt_w[k + mode] * sqrt_w[k] * beat.cos()
                })
                .sum()
        })
        .collect()
}

/// Phase distribution of the state evolved to time γ.
///
/// For integer-valued spectra the result is 2π-periodic in γ.
pub fn gk_phase_distribution(
    state: &StateWeights,
    grid: &PhaseGrid,
    gamma: f64,
) -> PhaseDistribution {
    phase::cosine_series_distribution(
        &evolved_mode_coefficients(state, gamma),
        grid,
        state.z().arg(),
        gamma,
    )
}

/// Evolved phase variance on the symmetric window:
/// π²/3 + 4 Σ_{n>k} √(w_n w_k) (−1)^{n−k}/(n−k)² cos[(ρ_n−ρ_k)γ].
///
/// Same domain as the static series: real z ≥ 0.
pub fn gk_phase_variance(state: &StateWeights, gamma: f64) -> f64 {
    assert!(
        state.is_real_nonnegative(),
        "closed-form phase variance requires real z >= 0"
    );
    phase::series_variance_from_modes(&evolved_mode_coefficients(state, gamma))
}

/// R_φ(γ) = −∫ P(θ, γ) ln P(θ, γ) dθ.
pub fn gk_phase_entropy(state: &StateWeights, grid: &PhaseGrid, gamma: f64) -> f64 {
    entropic::phase_entropy(&gk_phase_distribution(state, grid, gamma))
}

/// One sample of the time-resolved entropic sum.
#[derive(Debug, Clone, Copy)]
pub struct EntropicSumRow {
    pub gamma: f64,
    pub r_number: f64,
    pub r_phase: f64,
    pub total: f64,
}

/// R_N + R_φ(γ) over an evolution window. R_N is γ-independent and computed
/// once; each row still satisfies total ≥ ln(2π) up to quadrature error.
pub fn gk_entropic_sum_sweep(
    state: &StateWeights,
    grid: &PhaseGrid,
    evolution: &EvolutionGrid,
) -> Vec<EntropicSumRow> {
    let r_number = entropic::number_entropy(state);
    evolution
        .gammas()
        .map(|gamma| {
            let r_phase = gk_phase_entropy(state, grid, gamma);
            EntropicSumRow {
                gamma,
                r_number,
                r_phase,
                total: r_number + r_phase,
            }
        })
        .collect()
}

/// A coherent state carrying its accumulated evolution parameter.
#[derive(Debug, Clone, Copy)]
pub struct GkState<'a> {
    state: &'a StateWeights,
    gamma: f64,
}

impl<'a> GkState<'a> {
    pub fn new(state: &'a StateWeights, gamma: f64) -> Self {
        Self { state, gamma }
    }

    /// Hamiltonian evolution by time t: γ → γ + t.
    #[must_use]
    pub fn evolve(&self, t: f64) -> Self {
        Self {
            state: self.state,
            gamma: self.gamma + t,
        }
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn state(&self) -> &StateWeights {
        self.state
    }

    pub fn phase_distribution(&self, grid: &PhaseGrid) -> PhaseDistribution {
        gk_phase_distribution(self.state, grid, self.gamma)
    }

    pub fn phase_variance(&self) -> f64 {
        gk_phase_variance(self.state, self.gamma)
    }

    pub fn phase_entropy(&self, grid: &PhaseGrid) -> f64 {
        gk_phase_entropy(self.state, grid, self.gamma)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropic::entropy_bound;
    use crate::phase::{phase_distribution, phase_variance_series};
    use crate::spectrum::DegenerateSpectrum;
    use crate::state::{StateWeights, TruncationPolicy};
    use std::f64::consts::{PI, TAU};
    use std::sync::Arc;

    fn state(spectrum: DegenerateSpectrum, z: f64) -> StateWeights {
        StateWeights::new(Arc::new(spectrum), z, &TruncationPolicy::default()).unwrap()
    }

    fn max_abs_diff(a: &PhaseDistribution, b: &PhaseDistribution) -> f64 {
        a.values()
            .iter()
            .zip(b.values())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn zero_gamma_reduces_to_static_distribution() {
        let grid = PhaseGrid::default();
        for z in [0.5, 2.0, 5.0] {
            let s = state(DegenerateSpectrum::box2d(513), z);
            let evolved = gk_phase_distribution(&s, &grid, 0.0);
            let static_dist = phase_distribution(&s, &grid);
            assert!(max_abs_diff(&evolved, &static_dist) < 1e-12, "z = {z}");
        }
    }

    #[test]
    fn zero_gamma_reduces_to_static_variance_and_entropy() {
        let grid = PhaseGrid::default();
        let s = state(DegenerateSpectrum::ho3d(513), 2.0);
        assert_eq!(gk_phase_variance(&s, 0.0), phase_variance_series(&s));
        let static_entropy = entropic::phase_entropy(&phase_distribution(&s, &grid));
        assert!((gk_phase_entropy(&s, &grid, 0.0) - static_entropy).abs() < 1e-12);
    }

    #[test]
    fn integer_spectra_are_two_pi_periodic_in_gamma() {
        let grid = PhaseGrid::default();
        for (spectrum, z) in [
            (DegenerateSpectrum::box2d(513), 2.0),
            (DegenerateSpectrum::ho3d(513), 2.0),
        ] {
            let s = state(spectrum, z);
            let early = gk_phase_distribution(&s, &grid, 1.0);
            let late = gk_phase_distribution(&s, &grid, 1.0 + TAU);
            assert!(
                max_abs_diff(&early, &late) < 1e-12,
                "{}",
                s.spectrum().label()
            );
        }
    }

    #[test]
    fn vacuum_is_stationary() {
        let grid = PhaseGrid::default();
        let s = state(DegenerateSpectrum::box2d(16), 0.0);
        for gamma in [0.0, 0.7, 3.9] {
            assert!((gk_phase_variance(&s, gamma) - PI * PI / 3.0).abs() < 1e-15);
            assert!((gk_phase_entropy(&s, &grid, gamma) - TAU.ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn evolved_distribution_stays_normalized() {
        let s = state(DegenerateSpectrum::box2d(513), 5.0);
        let dist = gk_phase_distribution(&s, &PhaseGrid::default(), 1.0);
        assert!((dist.integral() - 1.0).abs() < 1e-8);
        assert!(dist.values().iter().all(|&p| p >= 0.0));
    }

    #[test]
    fn series_variance_matches_quadrature_under_evolution() {
        let grid = PhaseGrid::default();
        let s = state(DegenerateSpectrum::box2d(513), 2.0);
        for gamma in [0.3, 1.0, 2.5] {
            let series = gk_phase_variance(&s, gamma);
            let quadrature =
                phase::phase_variance_quadrature(&gk_phase_distribution(&s, &grid, gamma));
            assert!((series - quadrature).abs() < 1e-8, "gamma = {gamma}");
        }
    }

    #[test]
    fn entropic_sum_oscillates_but_respects_the_bound() {
        let grid = PhaseGrid::default();
        let s = state(DegenerateSpectrum::box2d(513), 2.0);
        let evolution = EvolutionGrid::new(0.0, TAU, 129);
        let rows = gk_entropic_sum_sweep(&s, &grid, &evolution);
        assert_eq!(rows.len(), 129);
        let bound = entropy_bound();
        let mut low = f64::INFINITY;
        let mut high = f64::NEG_INFINITY;
        for row in &rows {
            assert!(row.total >= bound - 1e-9, "gamma = {}", row.gamma);
            low = low.min(row.total);
            high = high.max(row.total);
        }
        assert!(high - low > 0.01, "oscillation amplitude {}", high - low);
    }

    #[test]
    fn two_step_evolution_equals_single_step() {
        let grid = PhaseGrid::default();
        let s = state(DegenerateSpectrum::box2d(513), 2.0);
        let stepped = GkState::new(&s, 0.0).evolve(0.4).evolve(0.9);
        let direct = GkState::new(&s, 1.3);
        let diff = max_abs_diff(
            &stepped.phase_distribution(&grid),
            &direct.phase_distribution(&grid),
        );
        assert!(diff < 1e-12);
        assert!((stepped.phase_variance() - direct.phase_variance()).abs() < 1e-12);
    }

    #[test]
    fn evolution_grid_samples_both_ends() {
        let grid = EvolutionGrid::new(0.0, 1.0, 5);
        let gammas: Vec<f64> = grid.gammas().collect();
        assert_eq!(gammas, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    }
}
