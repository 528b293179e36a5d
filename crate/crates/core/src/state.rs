//! Coherent-state level weights and number-operator observables.
//!
//! The state attached to a spectrum {ρ_n, d_n} puts amplitude z^n/√(\[ρ_n\]!)
//! on the (unnormalized, squared norm d_n) level-n superposition, so level n
//! carries probability w_n = |z|^{2n} d_n / (\[ρ_n\]! N_ρ). The generalized
//! factorial \[ρ_n\]! = ρ_n ρ_{n-1} ⋯ ρ_1 grows super-factorially for the
//! built-in systems, so every term magnitude lives as a logarithm and the
//! normalization N_ρ is taken by log-sum-exp.

use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::numeric;
use crate::spectrum::DegenerateSpectrum;

/// Controls where the level series is cut off.
///
/// Summation stops once a term's share of the running sum stays below
/// `tail_tolerance` for `consecutive_required` successive levels (degenerate
/// spectra have non-monotone term ratios at small n, so a single small term
/// is not proof of convergence).
#[derive(Debug, Clone)]
pub struct TruncationPolicy {
    /// Hard cap on the number of levels summed.
    pub max_levels: usize,
    /// Relative share below which a term counts as tail.
    pub tail_tolerance: f64,
    /// Number of successive tail terms required to stop.
    pub consecutive_required: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            max_levels: 512,
            tail_tolerance: 1e-15,
            consecutive_required: 5,
        }
    }
}

#[derive(Debug, Error)]
pub enum StateError {
    /// The spectrum ran out (or `max_levels` was hit) while terms were still
    /// significant; the caller must supply more levels.
    #[error("series not converged after {levels} levels (last term share {share:.3e}); supply more levels")]
    TruncationNotConverged { levels: usize, share: f64 },
    #[error("amplitude z must be finite")]
    NonFiniteInput,
    /// Ladder expectations reach one level past the truncation point.
    #[error("spectrum has no level beyond the {used} summed; ladder expectations need one spare")]
    SpectrumTooShort { used: usize },
}

/// Normalized occupation weights of a coherent state over spectrum levels.
///
/// Immutable once computed; every downstream observable is a pure function
/// of this data, so sweeps may share it across threads freely.
#[derive(Debug, Clone)]
pub struct StateWeights {
    z: Complex64,
    log_raw: Vec<f64>,
    weights: Vec<f64>,
    log_normalization: f64,
    levels_used: usize,
    spectrum: Arc<DegenerateSpectrum>,
}

/// Expectation values of the spectrum ladder operators in the state.
#[derive(Debug, Clone, Copy)]
pub struct LadderExpectations {
    /// ⟨A†A⟩; equals |z|² up to truncation by the eigenstate property.
    pub a_dag_a: f64,
    /// ⟨AA†⟩ = Σ_n w_n (d_n/d_{n+1}) ρ_{n+1}.
    pub a_a_dag: f64,
}

/// Quadrature variances and the commutator they should both equal half of.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureReport {
    pub var_x: f64,
    pub var_p: f64,
    /// ⟨\[A, A†\]⟩ = ⟨AA†⟩ − ⟨A†A⟩.
    pub commutator_expectation: f64,
    /// Largest relative spread of {(ΔX)², (ΔP)², ½|⟨\[A,A†\]⟩|} around their mean.
    pub max_relative_deviation: f64,
}

impl StateWeights {
    /// Evaluate the coherent-state series for amplitude `z` on `spectrum`.
    ///
    /// Term magnitudes follow the recurrence
    /// ln t_{n+1} = ln t_n + ln|z|² + ln d_{n+1} − ln d_n − ln ρ_{n+1},
    /// seeded with ln t_0 = ln d_0.
    pub fn new(
        spectrum: Arc<DegenerateSpectrum>,
        z: impl Into<Complex64>,
        policy: &TruncationPolicy,
    ) -> Result<Self, StateError> {
        assert!(policy.max_levels >= 2, "max_levels must be at least 2");
        assert!(
            policy.tail_tolerance > 0.0,
            "tail_tolerance must be positive"
        );
        assert!(policy.consecutive_required >= 1);
        let z = z.into();
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(StateError::NonFiniteInput);
        }

        let log_zsq = z.norm_sqr().ln();
        let cap = policy.max_levels.min(spectrum.len());
        let mut log_raw: Vec<f64> = Vec::with_capacity(cap.min(64));
        let mut running = f64::NEG_INFINITY;
        let mut tail_hits = 0usize;
        let mut last_share = 1.0;
        let mut converged = false;

        for n in 0..cap {
            let log_term = if n == 0 {
                (spectrum.degeneracy(0) as f64).ln()
            } else {
                log_raw[n - 1] + log_zsq + (spectrum.degeneracy(n) as f64).ln()
                    - (spectrum.degeneracy(n - 1) as f64).ln()
                    - spectrum.rho(n).ln()
            };
            log_raw.push(log_term);
            running = numeric::logsumexp2(running, log_term);
            last_share = (log_term - running).exp();
            if last_share < policy.tail_tolerance {
                tail_hits += 1;
                if tail_hits >= policy.consecutive_required {
                    converged = true;
                    break;
                }
            } else {
                tail_hits = 0;
            }
        }

        if !converged && last_share > 1e3 * policy.tail_tolerance {
            return Err(StateError::TruncationNotConverged {
                levels: log_raw.len(),
                share: last_share,
            });
        }

        let levels_used = log_raw.len();
        let (weights, log_normalization) = numeric::normalize_log_weights(&log_raw);
        Ok(Self {
            z,
            log_raw,
            weights,
            log_normalization,
            levels_used,
            spectrum,
        })
    }

    /// Evaluate the series over every level of a finite system.
    ///
    /// For a spectrum that is the system's whole Hilbert space — like the
    /// 23-level box spectrum the figure sweeps use — running out of levels is
    /// not a truncation failure: the sum simply ends, and at large |z| the
    /// state piles onto the top level (approaching a number state, Q → −1).
    /// Contrast [`StateWeights::new`], which treats the spectrum as a window
    /// onto an infinite system and insists the tail has converged.
    pub fn on_full_spectrum(
        spectrum: Arc<DegenerateSpectrum>,
        z: impl Into<Complex64>,
    ) -> Result<Self, StateError> {
        let z = z.into();
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(StateError::NonFiniteInput);
        }
        let log_zsq = z.norm_sqr().ln();
        let mut log_raw: Vec<f64> = Vec::with_capacity(spectrum.len());
        for n in 0..spectrum.len() {
            let log_term = if n == 0 {
                (spectrum.degeneracy(0) as f64).ln()
            } else {
                log_raw[n - 1] + log_zsq + (spectrum.degeneracy(n) as f64).ln()
                    - (spectrum.degeneracy(n - 1) as f64).ln()
                    - spectrum.rho(n).ln()
            };
            log_raw.push(log_term);
        }
        let levels_used = log_raw.len();
        let (weights, log_normalization) = numeric::normalize_log_weights(&log_raw);
        Ok(Self {
            z,
            log_raw,
            weights,
            log_normalization,
            levels_used,
            spectrum,
        })
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    /// Per-level ln(|z|^{2n} d_n / \[ρ_n\]!), before normalization.
    pub fn log_raw(&self) -> &[f64] {
        &self.log_raw
    }

    /// Normalized level probabilities w_n.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// ln N_ρ(|z|²).
    pub fn log_normalization(&self) -> f64 {
        self.log_normalization
    }

    pub fn levels_used(&self) -> usize {
        self.levels_used
    }

    pub fn spectrum(&self) -> &Arc<DegenerateSpectrum> {
        &self.spectrum
    }

    /// True for the amplitudes the closed-form phase series covers (real z ≥ 0).
    pub fn is_real_nonnegative(&self) -> bool {
        self.z.im == 0.0 && self.z.re >= 0.0
    }

    /// ⟨N⟩ = Σ_n n w_n.
    pub fn mean_number(&self) -> f64 {
        self.weights
            .iter()
            .enumerate()
            .map(|(n, w)| n as f64 * w)
            .sum()
    }

    /// ⟨N²⟩ = Σ_n n² w_n.
    pub fn second_moment_number(&self) -> f64 {
        self.weights
            .iter()
            .enumerate()
            .map(|(n, w)| (n as f64).powi(2) * w)
            .sum()
    }

    /// ⟨N²⟩ − ⟨N⟩², clamped at zero against rounding.
    pub fn number_variance(&self) -> f64 {
        let mean = self.mean_number();
        (self.second_moment_number() - mean * mean).max(0.0)
    }

    /// Mandel parameter Q = Var(N)/⟨N⟩ − 1.
    ///
    /// Negative is sub-Poissonian, zero Poissonian, positive super-Poissonian.
    /// At z = 0 the analytic limit 0 is returned (⟨N²⟩/⟨N⟩ → 1 as z → 0).
    pub fn mandel_q(&self) -> f64 {
        let mean = self.mean_number();
        if self.z.norm_sqr() == 0.0 || mean == 0.0 {
            return 0.0;
        }
        self.number_variance() / mean - 1.0
    }

    /// ⟨A†A⟩ and ⟨AA†⟩ from the ladder actions
    /// A|n⟩ = √ρ_n |n−1⟩ and A†|n⟩ = (d_n/d_{n+1}) √ρ_{n+1} |n+1⟩
    /// on the unnormalized level states (⟨n|n⟩ = d_n).
    ///
    /// Both sums reach one level past the last one summed, so the spectrum
    /// must hold at least `levels_used + 1` levels.
    pub fn ladder_expectations(&self) -> Result<LadderExpectations, StateError> {
        if self.levels_used >= self.spectrum.len() {
            return Err(StateError::SpectrumTooShort {
                used: self.levels_used,
            });
        }
        let spectrum = &self.spectrum;
        let mut a_dag_a = 0.0;
        let mut a_a_dag = 0.0;
        for (n, &w) in self.weights.iter().enumerate() {
            if n > 0 {
                let ratio = spectrum.degeneracy(n - 1) as f64 / spectrum.degeneracy(n) as f64;
                a_dag_a += w * spectrum.rho(n) * ratio;
            }
            let ratio = spectrum.degeneracy(n) as f64 / spectrum.degeneracy(n + 1) as f64;
            a_a_dag += w * spectrum.rho(n + 1) * ratio;
        }
        Ok(LadderExpectations { a_dag_a, a_a_dag })
    }

    /// Variances of X = (A + A†)/√2 and P = (A − A†)/i√2 together with the
    /// commutator expectation they must both equal half of.
    ///
    /// All mixed moments collapse through the eigenstate property ⟨A⟩ = z,
    /// ⟨A²⟩ = z²; only ⟨A†A⟩ and ⟨AA†⟩ come from the level series, and the
    /// reported spread measures how well the series reproduces the identity
    /// (ΔX)² = (ΔP)² = ½|⟨\[A, A†\]⟩|.
    pub fn quadrature_report(&self) -> Result<QuadratureReport, StateError> {
        let ladder = self.ladder_expectations()?;
        let sym = 0.5 * (ladder.a_a_dag + ladder.a_dag_a);
        let var_x = sym - self.z.norm_sqr();
        let var_p = sym - self.z.norm_sqr();
        let commutator_expectation = ladder.a_a_dag - ladder.a_dag_a;
        let half_comm = 0.5 * commutator_expectation.abs();
        let mean = (var_x + var_p + half_comm) / 3.0;
        let max_relative_deviation = if mean > 0.0 {
            [var_x, var_p, half_comm]
                .iter()
                .map(|q| (q - mean).abs() / mean)
                .fold(0.0, f64::max)
        } else {
            0.0
        };
        Ok(QuadratureReport {
            var_x,
            var_p,
            commutator_expectation,
            max_relative_deviation,
        })
    }
}
