//! Figure presets: named sweeps with the system, ranges and grids baked in.
//!
//! The 2D-box presets run on the finite 23-level spectrum (evaluated over
//! the whole level list, so large z piles weight onto the top level); the
//! 3D-oscillator presets use converged truncation on a long spectrum. Range
//! flags still override the preset grids; the system does not.

use std::sync::Arc;

use clap::ValueEnum;
use degen_cs::DegenerateSpectrum;

use crate::config::{CliError, GridArgs, GridDefaults, Job, JobKind, SweepContext};
use crate::sweep::ObservableGroup;

pub const FINITE_BOX_LEVELS: usize = 23;
/// Deep enough that ho3d sweeps converge at z = 20 (peak level ~ 400).
const HO3D_PRESET_LEVELS: usize = 768;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FigureName {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
    Fig9,
    Fig10,
}

enum PresetSystem {
    FiniteBox,
    Ho3d,
}

enum PresetKind {
    Scalar(ObservableGroup),
    Distribution,
    Dynamics,
}

impl FigureName {
    fn layout(&self) -> (PresetSystem, PresetKind, GridDefaults) {
        use FigureName::*;
        use PresetKind::*;
        use PresetSystem::*;
        let z = |z_min, z_max, z_steps| GridDefaults {
            z_min,
            z_max,
            z_steps,
            max_levels: match self {
                Fig1 | Fig2 | Fig3 | Fig4 | Fig9 => FINITE_BOX_LEVELS,
                _ => HO3D_PRESET_LEVELS,
            },
        };
        match self {
            Fig1 => (
                FiniteBox,
                Scalar(ObservableGroup::Mandel),
                z(0.0, 20.0, 201),
            ),
            Fig2 => (FiniteBox, Distribution, z(1.0, 3.0, 3)),
            Fig3 => (
                FiniteBox,
                Scalar(ObservableGroup::Squeezing),
                z(0.0, 6.0, 241),
            ),
            Fig4 => (
                FiniteBox,
                Scalar(ObservableGroup::Entropy),
                z(0.0, 20.0, 81),
            ),
            Fig5 => (Ho3d, Scalar(ObservableGroup::Mandel), z(0.0, 20.0, 201)),
            Fig6 => (Ho3d, Distribution, z(1.0, 3.0, 3)),
            Fig7 => (Ho3d, Scalar(ObservableGroup::Squeezing), z(0.0, 3.0, 241)),
            Fig8 => (Ho3d, Scalar(ObservableGroup::Entropy), z(0.0, 20.0, 81)),
            Fig9 => (FiniteBox, Dynamics, z(0.0, 20.0, 41)),
            Fig10 => (Ho3d, Dynamics, z(0.0, 20.0, 41)),
        }
    }

    pub fn resolve(&self, args: &GridArgs) -> Result<Job, CliError> {
        let (system, kind, defaults) = self.layout();
        let (spectrum, full_spectrum) = match system {
            PresetSystem::FiniteBox => {
                (Arc::new(DegenerateSpectrum::box2d(FINITE_BOX_LEVELS)), true)
            }
            PresetSystem::Ho3d => (
                Arc::new(DegenerateSpectrum::ho3d(
                    args.max_levels.unwrap_or(HO3D_PRESET_LEVELS) + 1,
                )),
                false,
            ),
        };
        let context = SweepContext {
            spectrum,
            full_spectrum,
            policy: args.policy(defaults.max_levels)?,
            grid: args.phase_grid()?,
        };
        let z_values = args.z_values(&defaults)?;
        let kind = match kind {
            PresetKind::Scalar(group) => JobKind::Scalar { group, z_values },
            PresetKind::Distribution => JobKind::Distribution { z_values },
            PresetKind::Dynamics => {
                // Coarse (z, gamma) surface plus dense cross-sections at the
                // caption's z = 2, 5, 20 — unless the flags pin the grids.
                let surface = (z_values, args.evolution(65)?);
                let overridden = args.z_min.is_some()
                    || args.z_max.is_some()
                    || args.z_steps.is_some()
                    || args.gamma_steps.is_some();
                let mut segments = vec![surface];
                if !overridden {
                    segments.push((vec![2.0, 5.0, 20.0], args.evolution(257)?));
                }
                JobKind::Dynamics { segments }
            }
        };
        Ok(Job { context, kind })
    }
}
