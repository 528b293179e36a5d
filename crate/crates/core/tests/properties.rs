//! Property-based invariants over random spectra and amplitudes.

use std::sync::{Arc, OnceLock};

use num_complex::Complex64;
use proptest::prelude::*;

use degen_cs::{
    dynamics, entropic, phase, DegenerateSpectrum, EnergyLevel, PhaseGrid, StateWeights,
    TruncationPolicy,
};

/// Random valid level lists: strictly increasing energies from zero, small
/// degeneracy counts.
fn arbitrary_levels() -> impl Strategy<Value = Vec<EnergyLevel>> {
    (8usize..32).prop_flat_map(|len| {
        (
            proptest::collection::vec(0.1f64..4.0, len),
            proptest::collection::vec(1u64..=6, len),
        )
            .prop_map(|(gaps, degeneracies)| {
                let mut rho = 0.0;
                gaps.iter()
                    .zip(degeneracies)
                    .map(|(gap, degeneracy)| {
                        let level = EnergyLevel { rho, degeneracy };
                        rho += gap;
                        level
                    })
                    .collect()
            })
    })
}

fn built_in(choice: u8) -> Arc<DegenerateSpectrum> {
    static CACHE: OnceLock<[Arc<DegenerateSpectrum>; 4]> = OnceLock::new();
    let cache = CACHE.get_or_init(|| {
        [
            Arc::new(DegenerateSpectrum::box2d(513)),
            Arc::new(DegenerateSpectrum::ho2d(513)),
            Arc::new(DegenerateSpectrum::ho3d(513)),
            Arc::new(DegenerateSpectrum::nondegenerate_ho(513)),
        ]
    });
    cache[(choice % 4) as usize].clone()
}

fn small_grid() -> PhaseGrid {
    PhaseGrid::symmetric(512).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn custom_spectrum_text_round_trips(levels in arbitrary_levels()) {
        let spectrum = DegenerateSpectrum::from_levels("randomized", levels).unwrap();
        let reparsed = DegenerateSpectrum::parse(&spectrum.to_text()).unwrap();
        prop_assert_eq!(reparsed, spectrum);
    }

    #[test]
    fn weights_normalize_and_moments_obey_jensen(
        levels in arbitrary_levels(),
        z in 0.0f64..3.0,
    ) {
        let spectrum = Arc::new(DegenerateSpectrum::from_levels("randomized", levels).unwrap());
        let state = StateWeights::on_full_spectrum(spectrum, z).unwrap();
        let total: f64 = state.weights().iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        prop_assert!(state.weights().iter().all(|&w| w >= 0.0));
        prop_assert!(state.second_moment_number() >= state.mean_number().powi(2));
    }

    #[test]
    fn entropic_bound_holds_for_any_state(
        levels in arbitrary_levels(),
        z in 0.0f64..3.0,
    ) {
        let spectrum = Arc::new(DegenerateSpectrum::from_levels("randomized", levels).unwrap());
        let state = StateWeights::on_full_spectrum(spectrum, z).unwrap();
        let report = entropic::entropy_report(&state, &small_grid());
        prop_assert!(report.r_number >= 0.0);
        prop_assert!(report.margin >= -1e-9, "margin = {}", report.margin);
    }

    #[test]
    fn number_entropy_is_invariant_under_amplitude_rotation(
        levels in arbitrary_levels(),
        magnitude in 0.0f64..3.0,
        angle in 0.0f64..std::f64::consts::TAU,
    ) {
        let spectrum = Arc::new(DegenerateSpectrum::from_levels("randomized", levels).unwrap());
        let real = StateWeights::on_full_spectrum(spectrum.clone(), magnitude).unwrap();
        let rotated =
            StateWeights::on_full_spectrum(spectrum, Complex64::from_polar(magnitude, angle))
                .unwrap();
        let diff = (entropic::number_entropy(&real) - entropic::number_entropy(&rotated)).abs();
        prop_assert!(diff < 1e-12);
    }

    #[test]
    fn phase_distribution_is_a_density(
        levels in arbitrary_levels(),
        z in 0.0f64..3.0,
    ) {
        let spectrum = Arc::new(DegenerateSpectrum::from_levels("randomized", levels).unwrap());
        let state = StateWeights::on_full_spectrum(spectrum, z).unwrap();
        let dist = phase::phase_distribution(&state, &small_grid());
        prop_assert!(dist.values().iter().all(|&p| p >= 0.0));
        prop_assert!((dist.integral() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn quadratures_stay_minimum_uncertainty(choice in 0u8..4, z in 0.05f64..6.0) {
        let state = StateWeights::new(built_in(choice), z, &TruncationPolicy::default()).unwrap();
        let report = state.quadrature_report().unwrap();
        prop_assert!(report.max_relative_deviation < 1e-9);
    }

    #[test]
    fn evolution_reduces_to_statics_at_gamma_zero(choice in 0u8..4, z in 0.0f64..4.0) {
        let grid = small_grid();
        let state = StateWeights::new(built_in(choice), z, &TruncationPolicy::default()).unwrap();
        let evolved = dynamics::gk_phase_distribution(&state, &grid, 0.0);
        let static_dist = phase::phase_distribution(&state, &grid);
        let worst = evolved
            .values()
            .iter()
            .zip(static_dist.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        prop_assert!(worst < 1e-12, "worst pointwise gap {worst}");
    }

    #[test]
    fn box2d_builder_counts_match_direct_enumeration(level_count in 2usize..80) {
        let spectrum = DegenerateSpectrum::box2d(level_count);
        for level in spectrum.levels() {
            prop_assert_eq!(
                level.degeneracy,
                degen_cs::box2d_degeneracy(level.rho as u64)
            );
        }
    }
}
