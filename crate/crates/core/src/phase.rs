//! Pegg–Barnett phase machinery for degenerate spectra.
//!
//! Physical quantities live in the infinite-dimensional limit of the phase
//! basis, realized here as a dense sampling grid over one 2π window. The
//! distribution P(θ) of a state with level weights w_n and real z ≥ 0 is
//! (1/2π)|Σ_n √w_n e^{-inθ}|²; a complex amplitude only shifts the peak to
//! arg z.

use std::f64::consts::{PI, TAU};

use thiserror::Error;

use crate::numeric;
use crate::state::StateWeights;

#[derive(Debug, Error, PartialEq)]
pub enum PhaseError {
    #[error("phase grid needs an even point count of at least 16, got {points}")]
    InvalidGrid { points: usize },
    #[error("number-phase commutator vanishes (z = 0); squeezing parameters are undefined")]
    DegenerateCommutator,
}

/// Uniform sampling grid θ_j = θ_0 + 2πj/M, j = 0..M-1.
///
/// The point count must be even so that composite Simpson applies once the
/// periodic endpoint is appended. The default window is symmetric about the
/// real-z peak: θ_0 = −π, M = 4096.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseGrid {
    theta0: f64,
    points: usize,
}

impl PhaseGrid {
    pub const DEFAULT_POINTS: usize = 4096;

    pub fn new(theta0: f64, points: usize) -> Result<Self, PhaseError> {
        if points < 16 || !points.is_multiple_of(2) {
            return Err(PhaseError::InvalidGrid { points });
        }
        assert!(theta0.is_finite(), "window origin must be finite");
        Ok(Self { theta0, points })
    }

    /// Window symmetric about θ = 0.
    pub fn symmetric(points: usize) -> Result<Self, PhaseError> {
        Self::new(-PI, points)
    }

    #[inline]
    pub fn theta0(&self) -> f64 {
        self.theta0
    }

    #[inline]
    pub fn points(&self) -> usize {
        self.points
    }

    /// Grid spacing 2π/M.
    #[inline]
    pub fn step(&self) -> f64 {
        TAU / self.points as f64
    }

    #[inline]
    pub fn theta(&self, j: usize) -> f64 {
        self.theta0 + self.step() * j as f64
    }

    /// True when the window origin sits at −π (the closed-form variance
    /// series assumes this).
    pub fn is_symmetric(&self) -> bool {
        (self.theta0 + PI).abs() < 1e-12
    }
}

impl Default for PhaseGrid {
    fn default() -> Self {
        Self {
            theta0: -PI,
            points: Self::DEFAULT_POINTS,
        }
    }
}

/// Sampled phase probability density over one 2π window.
#[derive(Debug, Clone)]
pub struct PhaseDistribution {
    grid: PhaseGrid,
    values: Vec<f64>,
    gamma: f64,
}

impl PhaseDistribution {
    pub(crate) fn from_values(grid: PhaseGrid, values: Vec<f64>, gamma: f64) -> Self {
        debug_assert!(values.iter().all(|&p| p >= 0.0));
        Self {
            grid,
            values,
            gamma,
        }
    }

    pub fn grid(&self) -> &PhaseGrid {
        &self.grid
    }

    /// P(θ_j) for j = 0..M-1; the periodic endpoint is implicit.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Evolution parameter the distribution was sampled at (0 for static states).
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Trapezoidal integral over the window; by periodicity this is just
    /// h · Σ_j P(θ_j), and should be 1 within quadrature error.
    pub fn integral(&self) -> f64 {
        self.grid.step() * self.values.iter().sum::<f64>()
    }

    /// Periodic sample access: index j mod M.
    #[inline]
    pub fn value_wrapped(&self, j: usize) -> f64 {
        self.values[j % self.values.len()]
    }
}

/// Number and phase squeezing parameters for one state.
///
/// S < 0 flags squeezing in that component relative to half the
/// number-phase commutator magnitude.
#[derive(Debug, Clone, Copy)]
pub struct SqueezingReport {
    pub s_number: f64,
    pub s_phase: f64,
    /// |⟨\[N, φ\]⟩| = |1 − 2π P(θ_0)|.
    pub commutator_magnitude: f64,
    pub phase_variance: f64,
    pub number_variance: f64,
}

/// cos/sin of 2πk/M for k = 0..M-1, so trig factors on the grid reduce to
/// one table lookup plus an angle-addition step.
struct TrigTable {
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl TrigTable {
    fn new(points: usize) -> Self {
        let mut cos = Vec::with_capacity(points);
        let mut sin = Vec::with_capacity(points);
        for k in 0..points {
            let angle = TAU * k as f64 / points as f64;
            cos.push(angle.cos());
            sin.push(angle.sin());
        }
        Self { cos, sin }
    }
}

/// P(θ) on the grid via the squared-modulus form |Σ_n √w_n e^{-inα}|²/2π
/// with α = θ − arg z. Cost O(levels · points).
pub fn phase_distribution(state: &StateWeights, grid: &PhaseGrid) -> PhaseDistribution {
    let m = grid.points();
    let table = TrigTable::new(m);
    let base = grid.theta0() - state.z().arg();
    let mut re = vec![0.0; m];
    let mut im = vec![0.0; m];
    for (n, &w) in state.weights().iter().enumerate() {
        let amp = w.sqrt();
        if amp == 0.0 {
            continue;
        }
        // n·α_j = n·base + 2π·(n·j mod M)/M
        let (sin_b, cos_b) = (n as f64 * base).sin_cos();
        let stride = n % m;
        let mut k = 0usize;
        for j in 0..m {
            let c = cos_b * table.cos[k] - sin_b * table.sin[k];
            let s = sin_b * table.cos[k] + cos_b * table.sin[k];
            re[j] += amp * c;
            im[j] -= amp * s;
            k += stride;
            if k >= m {
                k -= m;
            }
        }
    }
    let values = re
        .iter()
        .zip(&im)
        .map(|(r, i)| (r * r + i * i) / TAU)
        .collect();
    PhaseDistribution::from_values(*grid, values, 0.0)
}

/// P(θ) at a single angle, by direct summation.
pub fn phase_density_at(state: &StateWeights, theta: f64) -> f64 {
    let alpha = theta - state.z().arg();
    let mut re = 0.0;
    let mut im = 0.0;
    for (n, &w) in state.weights().iter().enumerate() {
        let amp = w.sqrt();
        if amp == 0.0 {
            continue;
        }
        let (s, c) = (n as f64 * alpha).sin_cos();
        re += amp * c;
        im -= amp * s;
    }
    (re * re + im * im) / TAU
}

/// Mode coefficients C_m = Σ_k √(w_{k+m} w_k) of the static distribution's
/// cosine series.
pub(crate) fn static_mode_coefficients(state: &StateWeights) -> Vec<f64> {
    let sqrt_w: Vec<f64> = state.weights().iter().map(|w| w.sqrt()).collect();
    let n = sqrt_w.len();
    (1..n)
        .map(|mode| (0..n - mode).map(|k| sqrt_w[k + mode] * sqrt_w[k]).sum())
        .collect()
}

/// Evaluate (1 + 2 Σ_m C_m cos(m(θ_j − offset)))/2π on the grid, clamping
/// the tiny negatives cosine cancellation can leave (floor −1e-12).
pub(crate) fn cosine_series_distribution(
    mode_coefficients: &[f64],
    grid: &PhaseGrid,
    offset: f64,
    gamma: f64,
) -> PhaseDistribution {
    let m = grid.points();
    let table = TrigTable::new(m);
    let base = grid.theta0() - offset;
    let mut acc = vec![0.0; m];
    for (idx, &coeff) in mode_coefficients.iter().enumerate() {
        if coeff == 0.0 {
            continue;
        }
        let mode = idx + 1;
        let (sin_b, cos_b) = (mode as f64 * base).sin_cos();
        let stride = mode % m;
        let mut k = 0usize;
        for slot in acc.iter_mut() {
            *slot += coeff * (cos_b * table.cos[k] - sin_b * table.sin[k]);
            k += stride;
            if k >= m {
                k -= m;
            }
        }
    }
    let values = acc
        .iter()
        .map(|&a| {
            let p = (1.0 + 2.0 * a) / TAU;
            debug_assert!(
                p > -1e-12,
                "phase density fell below the numerical floor: {p}"
            );
            p.max(0.0)
        })
        .collect();
    PhaseDistribution::from_values(*grid, values, gamma)
}

/// P(θ) via the expanded double-sum form
/// (1 + 2 Σ_{n>k} √(w_n w_k) cos[(n−k)(θ − arg z)])/2π.
///
/// Algebraically identical to [`phase_distribution`]; kept as an independent
/// evaluation route for cross-checks.
pub fn phase_distribution_expanded(state: &StateWeights, grid: &PhaseGrid) -> PhaseDistribution {
    cosine_series_distribution(&static_mode_coefficients(state), grid, state.z().arg(), 0.0)
}

/// Closed-form phase variance for real z ≥ 0 on the symmetric window:
/// π²/3 + 4 Σ_{n>k} √(w_n w_k) (−1)^{n−k}/(n−k)².
///
/// Panics if the state's amplitude is not real and nonnegative; use
/// [`phase_variance_quadrature`] there.
pub fn phase_variance_series(state: &StateWeights) -> f64 {
    assert!(
        state.is_real_nonnegative(),
        "closed-form phase variance requires real z >= 0"
    );
    let coefficients = static_mode_coefficients(state);
    series_variance_from_modes(&coefficients)
}

pub(crate) fn series_variance_from_modes(mode_coefficients: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (idx, &coeff) in mode_coefficients.iter().enumerate() {
        let mode = (idx + 1) as f64;
        let sign = if (idx + 1) % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * coeff / (mode * mode);
    }
    PI * PI / 3.0 + 4.0 * acc
}

/// Phase variance by Simpson moments of a sampled distribution:
/// ∫θ²P dθ − (∫θP dθ)².
pub fn phase_variance_quadrature(distribution: &PhaseDistribution) -> f64 {
    let grid = distribution.grid();
    let m = grid.points();
    let h = grid.step();
    let mut first = Vec::with_capacity(m + 1);
    let mut second = Vec::with_capacity(m + 1);
    for j in 0..=m {
        let theta = grid.theta0() + h * j as f64;
        let p = distribution.value_wrapped(j);
        first.push(theta * p);
        second.push(theta * theta * p);
    }
    let mean = numeric::simpson_uniform(&first, h);
    numeric::simpson_uniform(&second, h) - mean * mean
}

/// Phase variance over the window: the closed-form series where it applies
/// (real z ≥ 0, symmetric window), Simpson quadrature otherwise.
pub fn phase_variance(state: &StateWeights, grid: &PhaseGrid) -> f64 {
    if state.is_real_nonnegative() && grid.is_symmetric() {
        phase_variance_series(state)
    } else {
        phase_variance_quadrature(&phase_distribution(state, grid))
    }
}

/// ⟨\[N, φ\]⟩/i = 1 − 2π P(θ_0), evaluated at the window origin.
pub fn number_phase_commutator(state: &StateWeights, grid: &PhaseGrid) -> f64 {
    1.0 - TAU * phase_density_at(state, grid.theta0())
}

/// Number and phase squeezing parameters
/// S_N = 2 Var(N)/|⟨\[N,φ\]⟩| − 1 and S_φ = 2 Var(φ)/|⟨\[N,φ\]⟩| − 1.
///
/// At z = 0 the commutator vanishes (uniform phase) and both parameters are
/// undefined; that case is reported as [`PhaseError::DegenerateCommutator`]
/// rather than as a number.
pub fn squeezing_report(
    state: &StateWeights,
    grid: &PhaseGrid,
) -> Result<SqueezingReport, PhaseError> {
    let commutator_magnitude = number_phase_commutator(state, grid).abs();
    if commutator_magnitude < 1e-12 {
        return Err(PhaseError::DegenerateCommutator);
    }
    let number_variance = state.number_variance();
    let phase_variance = phase_variance(state, grid);
    Ok(SqueezingReport {
        s_number: 2.0 * number_variance / commutator_magnitude - 1.0,
        s_phase: 2.0 * phase_variance / commutator_magnitude - 1.0,
        commutator_magnitude,
        phase_variance,
        number_variance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::DegenerateSpectrum;
    use crate::state::{StateWeights, TruncationPolicy};
    use num_complex::Complex64;
    use std::sync::Arc;

    fn state(spectrum: DegenerateSpectrum, z: f64) -> StateWeights {
        StateWeights::new(Arc::new(spectrum), z, &TruncationPolicy::default()).unwrap()
    }

    #[test]
    fn vacuum_distribution_is_uniform() {
        let s = state(DegenerateSpectrum::box2d(16), 0.0);
        let dist = phase_distribution(&s, &PhaseGrid::default());
        for &p in dist.values() {
            assert!((p - 1.0 / TAU).abs() < 1e-15);
        }
        assert!((dist.integral() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn peak_sits_at_zero_and_sharpens_with_z() {
        let grid = PhaseGrid::default();
        let mut previous_peak = 0.0;
        for z in [1.0, 2.0, 3.0] {
            let s = state(DegenerateSpectrum::box2d(128), z);
            let dist = phase_distribution(&s, &grid);
            let (argmax, &peak) = dist
                .values()
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.total_cmp(b.1))
                .unwrap();
            assert_eq!(argmax, grid.points() / 2, "peak off zero at z = {z}");
            assert!(peak > previous_peak);
            previous_peak = peak;
        }
    }

    #[test]
    fn distribution_is_normalized() {
        for z in [0.5, 2.0, 5.0] {
            let s = state(DegenerateSpectrum::ho3d(513), z);
            let dist = phase_distribution(&s, &PhaseGrid::default());
            assert!((dist.integral() - 1.0).abs() < 1e-8, "z = {z}");
        }
    }

    #[test]
    fn distribution_is_even_for_real_z() {
        let s = state(DegenerateSpectrum::box2d(128), 2.0);
        let dist = phase_distribution(&s, &PhaseGrid::default());
        let m = dist.values().len();
        for j in 1..m / 2 {
            let diff = (dist.values()[j] - dist.values()[m - j]).abs();
            assert!(diff < 1e-12, "asymmetry {diff} at j = {j}");
        }
    }

    #[test]
    fn squared_modulus_and_expanded_forms_agree() {
        let grid = PhaseGrid::default();
        for z in [0.5, 2.0, 5.0] {
            let s = state(DegenerateSpectrum::box2d(513), z);
            let direct = phase_distribution(&s, &grid);
            let expanded = phase_distribution_expanded(&s, &grid);
            let scale = direct.values().iter().cloned().fold(0.0, f64::max);
            for (a, b) in direct.values().iter().zip(expanded.values()) {
                assert!((a - b).abs() <= 1e-10 * scale, "z = {z}");
            }
        }
    }

    #[test]
    fn complex_amplitude_shifts_the_peak() {
        let spectrum = Arc::new(DegenerateSpectrum::box2d(128));
        let policy = TruncationPolicy::default();
        let arg = 1.0;
        let s = StateWeights::new(spectrum, Complex64::from_polar(2.0, arg), &policy).unwrap();
        let grid = PhaseGrid::default();
        let dist = phase_distribution(&s, &grid);
        let (argmax, _) = dist
            .values()
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap();
        let peak_theta = grid.theta(argmax);
        assert!((peak_theta - arg).abs() < 2.0 * grid.step());
    }

    #[test]
    fn vacuum_phase_variance_is_uniform_variance() {
        let s = state(DegenerateSpectrum::ho3d(16), 0.0);
        assert!((phase_variance_series(&s) - PI * PI / 3.0).abs() < 1e-15);
    }

    #[test]
    fn series_variance_matches_quadrature() {
        let grid = PhaseGrid::default();
        for z in [0.5, 2.0, 5.0] {
            let s = state(DegenerateSpectrum::box2d(513), z);
            let series = phase_variance_series(&s);
            let quadrature = phase_variance_quadrature(&phase_distribution(&s, &grid));
            assert!(
                (series - quadrature).abs() < 1e-8,
                "z = {z}: {series} vs {quadrature}"
            );
        }
    }

    #[test]
    fn phase_variance_decreases_as_peak_sharpens() {
        // Monotone over the figure's range; past z ~ 6 the finite system
        // heads back toward the uniform-phase number state and re-broadens.
        let spectrum = Arc::new(DegenerateSpectrum::box2d(23));
        let mut previous = f64::INFINITY;
        for z in [1.0, 2.0, 3.0, 5.0] {
            let s = StateWeights::on_full_spectrum(spectrum.clone(), z).unwrap();
            let variance = phase_variance_series(&s);
            assert!(variance < previous, "z = {z}: {variance} !< {previous}");
            previous = variance;
        }
    }

    #[test]
    fn number_and_phase_are_never_squeezed_together() {
        // The uncertainty product forbids 2 Var(N) and 2 Var(phi) both
        // falling below the commutator magnitude at the same z.
        let grid = PhaseGrid::default();
        // Linear spectra put the z = 20 weight peak near level 400, so the
        // sweep needs a deeper level budget than the default.
        let policy = TruncationPolicy { max_levels: 768, ..TruncationPolicy::default() };
        for spectrum in [
            DegenerateSpectrum::nondegenerate_ho(769),
            DegenerateSpectrum::box2d(769),
            DegenerateSpectrum::ho3d(769),
        ] {
            let spectrum = Arc::new(spectrum);
            for i in 1..=40 {
                let z = i as f64 * 0.5;
                let s = StateWeights::new(spectrum.clone(), z, &policy).unwrap();
                let report = squeezing_report(&s, &grid).unwrap();
                assert!(
                    report.s_number >= 0.0 || report.s_phase >= 0.0,
                    "{} z = {z}: S_N = {}, S_phi = {}",
                    s.spectrum().label(),
                    report.s_number,
                    report.s_phase
                );
            }
        }
        let finite = Arc::new(DegenerateSpectrum::box2d(23));
        for i in 1..=40 {
            let z = i as f64 * 0.5;
            let s = StateWeights::on_full_spectrum(finite.clone(), z).unwrap();
            let report = squeezing_report(&s, &grid).unwrap();
            assert!(
                report.s_number >= 0.0 || report.s_phase >= 0.0,
                "finite box z = {z}"
            );
        }
    }

    #[test]
    fn commutator_vanishes_for_vacuum() {
        let s = state(DegenerateSpectrum::box2d(16), 0.0);
        assert_eq!(number_phase_commutator(&s, &PhaseGrid::default()), 0.0);
    }

    #[test]
    fn commutator_approaches_one_for_sharp_peaks() {
        let s = state(DegenerateSpectrum::box2d(513), 5.0);
        let commutator = number_phase_commutator(&s, &PhaseGrid::default());
        assert!(commutator > 0.99 && commutator <= 1.0 + 1e-12);
    }

    #[test]
    fn commutator_consistent_with_expanded_form_at_window_origin() {
        let grid = PhaseGrid::default();
        let s = state(DegenerateSpectrum::nondegenerate_ho(256), 2.0);
        let expanded = phase_distribution_expanded(&s, &grid);
        let from_series = 1.0 - TAU * expanded.values()[0];
        let direct = number_phase_commutator(&s, &grid);
        assert!((from_series - direct).abs() < 1e-10);
    }

    #[test]
    fn box2d_squeezing_crossover_signs() {
        let grid = PhaseGrid::default();
        let spectrum = Arc::new(DegenerateSpectrum::box2d(513));
        let policy = TruncationPolicy::default();
        let report = |z: f64| {
            let s = StateWeights::new(spectrum.clone(), z, &policy).unwrap();
            squeezing_report(&s, &grid).unwrap()
        };
        let low = report(0.5);
        assert!(low.s_number < 0.0 && low.s_phase > 0.0);
        let mid = report(1.5);
        assert!(mid.s_number > 0.0 && mid.s_phase > 0.0);
        let high = report(3.0);
        assert!(high.s_phase < 0.0);
    }

    #[test]
    fn vacuum_squeezing_is_degenerate() {
        let s = state(DegenerateSpectrum::box2d(16), 0.0);
        assert!(matches!(
            squeezing_report(&s, &PhaseGrid::default()),
            Err(PhaseError::DegenerateCommutator)
        ));
    }

    #[test]
    fn uncertainty_product_respects_commutator_bound() {
        let grid = PhaseGrid::default();
        for z in [0.3, 1.0, 2.5, 6.0] {
            let s = state(DegenerateSpectrum::box2d(513), z);
            let commutator = number_phase_commutator(&s, &grid);
            let product = phase_variance_series(&s) * s.number_variance();
            assert!(product >= 0.25 * commutator * commutator - 1e-9, "z = {z}");
        }
    }

    #[test]
    fn grid_validation() {
        assert!(PhaseGrid::new(-PI, 15).is_err());
        assert!(PhaseGrid::new(-PI, 14).is_err());
        assert!(PhaseGrid::new(-PI, 16).is_ok());
        assert!(PhaseGrid::default().is_symmetric());
    }
}
