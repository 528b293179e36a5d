//! Argument parsing and resolution into executable sweep jobs.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use degen_cs::{
    DegenerateSpectrum, EvolutionGrid, PhaseGrid, StateError, StateWeights, TruncationPolicy,
};

use crate::figures::FigureName;
use crate::sweep::ObservableGroup;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or flag combinations; exit code 1.
    Usage(String),
    /// Unreadable/invalid input data, convergence failure, output I/O; exit code 2.
    Data(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Data(msg) => f.write_str(msg),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "degen-cs",
    version,
    about = "Coherent-state observables for quantum systems with degenerate spectra"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Emit a system's spectrum in the custom text format
    Spectrum(SpectrumArgs),
    /// Sweep mean level number, its variance and the Mandel Q against z
    Mandel(SweepArgs),
    /// Sample the phase distribution at fixed z values (wide table)
    PhaseDist(SweepArgs),
    /// Sweep the number/phase squeezing parameters and commutator against z
    Squeezing(SweepArgs),
    /// Sweep number and phase entropies and their sum against z
    Entropy(SweepArgs),
    /// Sweep the time-resolved entropic sum over (z, gamma)
    Dynamics(SweepArgs),
    /// Verify the minimum-uncertainty quadrature identity along a z sweep
    Quadcheck(SweepArgs),
    /// Run a named figure preset (fig1..fig10)
    Figure(FigureArgs),
}

#[derive(Args)]
pub struct SpectrumArgs {
    /// box2d | ho2d | ho3d | glauber | custom:<path>
    #[arg(long, default_value = "box2d")]
    pub system: String,
    /// Number of levels to emit for built-in systems
    #[arg(long)]
    pub max_levels: Option<usize>,
    /// Output path (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Flags shared by every sweep-shaped subcommand.
#[derive(Args, Clone)]
pub struct GridArgs {
    #[arg(long)]
    pub z_min: Option<f64>,
    #[arg(long)]
    pub z_max: Option<f64>,
    #[arg(long)]
    pub z_steps: Option<usize>,
    /// Phase-grid sample count (even, >= 16)
    #[arg(long)]
    pub theta_points: Option<usize>,
    /// Phase window origin (default -pi)
    #[arg(long, allow_negative_numbers = true)]
    pub theta0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub gamma_min: Option<f64>,
    #[arg(long)]
    pub gamma_max: Option<f64>,
    #[arg(long)]
    pub gamma_steps: Option<usize>,
    /// Truncation cap on the number of levels summed
    #[arg(long)]
    pub max_levels: Option<usize>,
    /// Relative tail tolerance of the truncation rule
    #[arg(long)]
    pub tail_tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Write a convenience SVG rendering of the sweep here
    #[arg(long)]
    pub plot: Option<PathBuf>,
    /// Output path (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct SweepArgs {
    /// box2d | ho2d | ho3d | glauber | custom:<path>
    #[arg(long, default_value = "box2d")]
    pub system: String,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Args)]
pub struct FigureArgs {
    /// Preset name: fig1..fig10 (the target system is part of the preset)
    #[arg(value_enum)]
    pub name: FigureName,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Everything a worker needs to evaluate one sweep point.
#[derive(Clone)]
pub struct SweepContext {
    pub spectrum: Arc<DegenerateSpectrum>,
    /// Treat the spectrum as a complete finite system (no tail-convergence
    /// requirement); used by the 2D-box figure presets.
    pub full_spectrum: bool,
    pub policy: TruncationPolicy,
    pub grid: PhaseGrid,
}

impl SweepContext {
    pub fn state(&self, z: f64) -> Result<StateWeights, StateError> {
        if self.full_spectrum {
            StateWeights::on_full_spectrum(self.spectrum.clone(), z)
        } else {
            StateWeights::new(self.spectrum.clone(), z, &self.policy)
        }
    }
}

/// A fully resolved unit of work.
pub struct Job {
    pub context: SweepContext,
    pub kind: JobKind,
}

pub enum JobKind {
    Scalar {
        group: ObservableGroup,
        z_values: Vec<f64>,
    },
    Distribution {
        z_values: Vec<f64>,
    },
    Dynamics {
        segments: Vec<(Vec<f64>, EvolutionGrid)>,
    },
}

pub fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    if steps == 1 {
        return vec![lo];
    }
    let width = hi - lo;
    (0..steps)
        .map(|i| lo + width * i as f64 / (steps - 1) as f64)
        .collect()
}

/// Build the spectrum named by `--system`, with one spare level past the
/// truncation cap so ladder expectations stay defined.
pub fn build_system(
    selector: &str,
    max_levels: usize,
) -> Result<Arc<DegenerateSpectrum>, CliError> {
    let spectrum = match selector {
        "box2d" => DegenerateSpectrum::box2d(max_levels + 1),
        "ho2d" => DegenerateSpectrum::ho2d(max_levels + 1),
        "ho3d" => DegenerateSpectrum::ho3d(max_levels + 1),
        "glauber" => DegenerateSpectrum::nondegenerate_ho(max_levels + 1),
        other => {
            let Some(path) = other.strip_prefix("custom:") else {
                return Err(CliError::Usage(format!(
                    "unknown system `{other}`; expected box2d | ho2d | ho3d | glauber | custom:<path>"
                )));
            };
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Data(format!("cannot read `{path}`: {e}")))?;
            DegenerateSpectrum::parse(&text)
                .map_err(|e| CliError::Data(format!("invalid spectrum `{path}`: {e}")))?
        }
    };
    Ok(Arc::new(spectrum))
}

pub struct GridDefaults {
    pub z_min: f64,
    pub z_max: f64,
    pub z_steps: usize,
    pub max_levels: usize,
}

impl GridArgs {
    pub fn policy(&self, default_max_levels: usize) -> Result<TruncationPolicy, CliError> {
        let policy = TruncationPolicy {
            max_levels: self.max_levels.unwrap_or(default_max_levels),
            tail_tolerance: self.tail_tol.unwrap_or(1e-15),
            ..TruncationPolicy::default()
        };
        if policy.max_levels < 2 {
            return Err(CliError::Usage("--max-levels must be at least 2".into()));
        }
        if !policy.tail_tolerance.is_finite() || policy.tail_tolerance <= 0.0 {
            return Err(CliError::Usage("--tail-tol must be positive".into()));
        }
        Ok(policy)
    }

    pub fn phase_grid(&self) -> Result<PhaseGrid, CliError> {
        let theta0 = self.theta0.unwrap_or(-std::f64::consts::PI);
        let points = self.theta_points.unwrap_or(PhaseGrid::DEFAULT_POINTS);
        PhaseGrid::new(theta0, points).map_err(|e| CliError::Usage(e.to_string()))
    }

    pub fn z_values(&self, defaults: &GridDefaults) -> Result<Vec<f64>, CliError> {
        let z_min = self.z_min.unwrap_or(defaults.z_min);
        let z_max = self.z_max.unwrap_or(defaults.z_max);
        let z_steps = self.z_steps.unwrap_or(defaults.z_steps);
        if z_min < 0.0 {
            return Err(CliError::Usage("--z-min must be nonnegative".into()));
        }
        if z_max < z_min {
            return Err(CliError::Usage("--z-max must not be below --z-min".into()));
        }
        if z_max > z_min && z_steps < 2 {
            return Err(CliError::Usage(
                "--z-steps must be at least 2 for a nonempty range".into(),
            ));
        }
        if z_steps == 0 {
            return Err(CliError::Usage("--z-steps must be positive".into()));
        }
        Ok(linspace(z_min, z_max, z_steps))
    }

    pub fn evolution(&self, default_steps: usize) -> Result<EvolutionGrid, CliError> {
        let gamma_min = self.gamma_min.unwrap_or(0.0);
        let gamma_max = self.gamma_max.unwrap_or(std::f64::consts::TAU);
        let gamma_steps = self.gamma_steps.unwrap_or(default_steps);
        if gamma_max <= gamma_min {
            return Err(CliError::Usage(
                "--gamma-max must exceed --gamma-min".into(),
            ));
        }
        if gamma_steps < 2 {
            return Err(CliError::Usage("--gamma-steps must be at least 2".into()));
        }
        Ok(EvolutionGrid::new(gamma_min, gamma_max, gamma_steps))
    }
}
