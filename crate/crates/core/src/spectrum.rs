//! Degenerate energy spectra: built-in physical systems, user-supplied custom
//! spectra, and the plain-text interchange format.
//!
//! A spectrum is the full identity of a system here: the distinct energies
//! ρ_0 < ρ_1 < … (shifted so ρ_0 = 0, in units ħ = ω = 1) together with the
//! degeneracy count d_n of each level. The Hamiltonian is implicit — diagonal
//! with eigenvalue ρ_n repeated d_n times.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

/// One energy level: shifted energy ρ_n with its degeneracy count d_n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel {
    /// Dimensionless level energy, ≥ 0 after the ground-state shift.
    pub rho: f64,
    /// Number of independent eigenstates sharing this energy; ≥ 1.
    pub degeneracy: u64,
}

/// Validation and parse failures for custom spectra.
#[derive(Debug, Error, PartialEq)]
pub enum SpectrumError {
    #[error("line {line}: cannot parse `{content}` as `<rho> <degeneracy>`")]
    MalformedLine { line: usize, content: String },
    #[error(
        "energies must be strictly increasing: level {index} has rho = {rho} after {previous}"
    )]
    NonIncreasingEnergy {
        index: usize,
        rho: f64,
        previous: f64,
    },
    #[error("level {index} has zero degeneracy")]
    ZeroDegeneracy { index: usize },
    #[error("a spectrum needs at least two levels, found {found}")]
    EmptySpectrum { found: usize },
}

/// A validated degenerate spectrum.
///
/// Invariants (enforced on construction): at least two levels, ρ_0 = 0,
/// energies strictly increasing, every degeneracy ≥ 1. Instances are
/// immutable afterwards and safe to share across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct DegenerateSpectrum {
    levels: Vec<EnergyLevel>,
    label: String,
}

impl DegenerateSpectrum {
    /// Validate a raw level list, shifting all energies so the first is zero.
    pub fn from_levels(
        label: impl Into<String>,
        mut levels: Vec<EnergyLevel>,
    ) -> Result<Self, SpectrumError> {
        if levels.len() < 2 {
            return Err(SpectrumError::EmptySpectrum {
                found: levels.len(),
            });
        }
        for (index, level) in levels.iter().enumerate() {
            if level.degeneracy == 0 {
                return Err(SpectrumError::ZeroDegeneracy { index });
            }
        }
        let shift = levels[0].rho;
        if shift != 0.0 {
            for level in &mut levels {
                level.rho -= shift;
            }
            levels[0].rho = 0.0;
        }
        for index in 1..levels.len() {
            let (previous, rho) = (levels[index - 1].rho, levels[index].rho);
            // partial_cmp also rejects NaN energies here.
            if rho.partial_cmp(&previous) != Some(std::cmp::Ordering::Greater) {
                return Err(SpectrumError::NonIncreasingEnergy {
                    index,
                    rho,
                    previous,
                });
            }
        }
        Ok(Self {
            levels,
            label: label.into(),
        })
    }

    /// Particle in a two-dimensional square box: the first `level_count`
    /// distinct values of n² + m² − 2 over n, m ≥ 1, with exact degeneracies.
    ///
    /// Pairs are enumerated on a [1, L]² block and only energies
    /// E = n² + m² ≤ L² + 1 are kept: that bound forces both n, m ≤ L, so
    /// every retained count is complete. L doubles until enough levels exist.
    pub fn box2d(level_count: usize) -> Self {
        assert!(level_count >= 2, "need at least two levels");
        let mut side: u64 = 8;
        loop {
            let cap = side * side + 1;
            let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
            for n in 1..=side {
                // n² + m² ≤ cap already fails at m = 1 once n is large enough.
                if n * n + 1 > cap {
                    break;
                }
                for m in 1..=side {
                    let e = n * n + m * m;
                    if e <= cap {
                        *counts.entry(e).or_insert(0) += 1;
                    }
                }
            }
            if counts.len() >= level_count {
                let levels = counts
                    .into_iter()
                    .take(level_count)
                    .map(|(e, d)| EnergyLevel {
                        rho: (e - 2) as f64,
                        degeneracy: d,
                    })
                    .collect();
                return Self {
                    levels,
                    label: "box2d".into(),
                };
            }
            side *= 2;
        }
    }

    /// Three-dimensional isotropic harmonic oscillator: ρ_ν = ν with
    /// d_ν = (ν + 1)(ν + 2)/2.
    pub fn ho3d(level_count: usize) -> Self {
        assert!(level_count >= 2, "need at least two levels");
        let levels = (0..level_count as u64)
            .map(|v| EnergyLevel {
                rho: v as f64,
                degeneracy: (v + 1) * (v + 2) / 2,
            })
            .collect();
        Self {
            levels,
            label: "ho3d".into(),
        }
    }

    /// Two-dimensional isotropic harmonic oscillator: ρ_ν = ν, d_ν = ν + 1.
    pub fn ho2d(level_count: usize) -> Self {
        assert!(level_count >= 2, "need at least two levels");
        let levels = (0..level_count as u64)
            .map(|v| EnergyLevel {
                rho: v as f64,
                degeneracy: v + 1,
            })
            .collect();
        Self {
            levels,
            label: "ho2d".into(),
        }
    }

    /// Nondegenerate harmonic oscillator: ρ_n = n, d_n = 1. The associated
    /// coherent state is the Glauber state, used as an analytic oracle.
    pub fn nondegenerate_ho(level_count: usize) -> Self {
        assert!(level_count >= 2, "need at least two levels");
        let levels = (0..level_count as u64)
            .map(|v| EnergyLevel {
                rho: v as f64,
                degeneracy: 1,
            })
            .collect();
        Self {
            levels,
            label: "glauber".into(),
        }
    }

    /// Parse the custom-spectrum text format.
    ///
    /// One level per line as `<rho> <degeneracy>`; `#` comments and blank
    /// lines are ignored. A leading `# system: <label>` comment restores the
    /// label. Energies are shifted so the first level sits at zero.
    pub fn parse(text: &str) -> Result<Self, SpectrumError> {
        let mut label = String::from("custom");
        let mut levels = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(name) = comment.trim().strip_prefix("system:") {
                    label = name.trim().to_string();
                }
                continue;
            }
            let malformed = || SpectrumError::MalformedLine {
                line: idx + 1,
                content: line.to_string(),
            };
            let mut fields = line.split_whitespace();
            let (Some(rho_text), Some(deg_text), None) =
                (fields.next(), fields.next(), fields.next())
            else {
                return Err(malformed());
            };
            let rho: f64 = rho_text.parse().map_err(|_| malformed())?;
            if !rho.is_finite() {
                return Err(malformed());
            }
            let degeneracy: u64 = deg_text.parse().map_err(|_| malformed())?;
            levels.push(EnergyLevel { rho, degeneracy });
        }
        Self::from_levels(label, levels)
    }

    /// Serialize in the same format `parse` accepts (round-trips exactly).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# system: {}", self.label);
        for level in &self.levels {
            let _ = writeln!(out, "{} {}", level.rho, level.degeneracy);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn levels(&self) -> &[EnergyLevel] {
        &self.levels
    }

    #[inline]
    pub fn rho(&self, n: usize) -> f64 {
        self.levels[n].rho
    }

    #[inline]
    pub fn degeneracy(&self, n: usize) -> u64 {
        self.levels[n].degeneracy
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// True when every energy is an integer to within 1e-12.
    ///
    /// Integer spectra make the time-evolved phase distribution 2π-periodic
    /// in the evolution parameter; callers relying on that periodicity should
    /// check this flag.
    pub fn is_integer_valued(&self) -> bool {
        self.levels
            .iter()
            .all(|l| (l.rho - l.rho.round()).abs() < 1e-12)
    }
}

/// Count lattice pairs (n, m) with n, m ≥ 1 and n² + m² = rho + 2.
///
/// Direct enumeration of n up to √(rho + 2); independent of the block scan
/// in [`DegenerateSpectrum::box2d`], so the two can cross-check each other.
pub fn box2d_degeneracy(rho: u64) -> u64 {
    let target = rho + 2;
    let mut count = 0;
    let mut n = 1;
    while n * n < target {
        let m_sq = target - n * n;
        let m = m_sq.isqrt();
        if m * m == m_sq {
            count += 1;
        }
        n += 1;
    }
    count
}
