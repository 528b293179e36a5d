//! Command-line front end: system selection, observable sweeps, figure
//! presets, and CSV/JSON/SVG emission.

mod config;
mod figures;
mod plot;
mod records;
mod sweep;

use std::io::Write as _;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;

use config::{
    Cli, CliError, Command, GridArgs, GridDefaults, Job, JobKind, SweepArgs, SweepContext,
};
use records::{DistributionTable, Outcome, ScalarRecord};
use sweep::ObservableGroup;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(error) => {
            let _ = error.print();
            // --help/--version land here too; only real usage errors are failures.
            return if error.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(CliError::Data(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Spectrum(args) => {
            let spectrum = config::build_system(&args.system, args.max_levels.unwrap_or(512))?;
            write_output(args.out.as_deref(), &spectrum.to_text())
        }
        Command::Mandel(args) => {
            let (job, title) = resolve_scalar(&args, ObservableGroup::Mandel, 0.0, 20.0, 201)?;
            execute(job, &args.grid, &title)
        }
        Command::Squeezing(args) => {
            let (job, title) = resolve_scalar(&args, ObservableGroup::Squeezing, 0.0, 6.0, 241)?;
            execute(job, &args.grid, &title)
        }
        Command::Entropy(args) => {
            let (job, title) = resolve_scalar(&args, ObservableGroup::Entropy, 0.0, 20.0, 81)?;
            execute(job, &args.grid, &title)
        }
        Command::Quadcheck(args) => {
            let (job, title) = resolve_scalar(&args, ObservableGroup::Quadrature, 0.0, 20.0, 81)?;
            execute(job, &args.grid, &title)
        }
        Command::PhaseDist(args) => {
            let context = context_for(&args, 512)?;
            let defaults = GridDefaults {
                z_min: 1.0,
                z_max: 3.0,
                z_steps: 3,
                max_levels: 512,
            };
            let z_values = args.grid.z_values(&defaults)?;
            let title = format!("phase distribution — {}", context.spectrum.label());
            execute(
                Job {
                    context,
                    kind: JobKind::Distribution { z_values },
                },
                &args.grid,
                &title,
            )
        }
        Command::Dynamics(args) => {
            let context = context_for(&args, 512)?;
            let defaults = GridDefaults {
                z_min: 2.0,
                z_max: 2.0,
                z_steps: 1,
                max_levels: 512,
            };
            let z_values = args.grid.z_values(&defaults)?;
            let evolution = args.grid.evolution(129)?;
            let title = format!("entropic sum over time — {}", context.spectrum.label());
            let kind = JobKind::Dynamics {
                segments: vec![(z_values, evolution)],
            };
            execute(Job { context, kind }, &args.grid, &title)
        }
        Command::Figure(args) => {
            let job = args.name.resolve(&args.grid)?;
            let title =
                format!("{:?} — {}", args.name, job.context.spectrum.label()).to_lowercase();
            execute(job, &args.grid, &title)
        }
    }
}

fn context_for(args: &SweepArgs, default_max_levels: usize) -> Result<SweepContext, CliError> {
    let policy = args.grid.policy(default_max_levels)?;
    Ok(SweepContext {
        spectrum: config::build_system(&args.system, policy.max_levels)?,
        full_spectrum: false,
        policy,
        grid: args.grid.phase_grid()?,
    })
}

fn resolve_scalar(
    args: &SweepArgs,
    group: ObservableGroup,
    z_min: f64,
    z_max: f64,
    z_steps: usize,
) -> Result<(Job, String), CliError> {
    let context = context_for(args, 512)?;
    let defaults = GridDefaults {
        z_min,
        z_max,
        z_steps,
        max_levels: 512,
    };
    let z_values = args.grid.z_values(&defaults)?;
    let title = format!("{} — {}", group.names().join("/"), context.spectrum.label());
    Ok((
        Job {
            context,
            kind: JobKind::Scalar { group, z_values },
        },
        title,
    ))
}

enum Rendered {
    Scalars(Vec<ScalarRecord>),
    Table(DistributionTable),
}

fn execute(job: Job, output: &GridArgs, title: &str) -> Result<(), CliError> {
    let rendered = match &job.kind {
        JobKind::Scalar { group, z_values } => {
            Rendered::Scalars(sweep::scalar_sweep(&job.context, z_values, *group))
        }
        JobKind::Distribution { z_values } => {
            Rendered::Table(sweep::distribution_sweep(&job.context, z_values)?)
        }
        JobKind::Dynamics { segments } => {
            Rendered::Scalars(sweep::dynamics_sweep(&job.context, segments))
        }
    };

    let text = match (&rendered, output.format) {
        (Rendered::Scalars(records), config::OutputFormat::Csv) => records::scalars_to_csv(records),
        (Rendered::Scalars(records), config::OutputFormat::Json) => {
            records::scalars_to_json(records)
        }
        (Rendered::Table(table), config::OutputFormat::Csv) => records::table_to_csv(table),
        (Rendered::Table(table), config::OutputFormat::Json) => records::table_to_json(table),
    };
    write_output(output.out.as_deref(), &text)?;

    if let Some(path) = &output.plot {
        let figure = build_plot(&rendered);
        let svg = plot::render(title, &figure);
        std::fs::write(path, svg)
            .map_err(|e| CliError::Data(format!("cannot write plot `{}`: {e}", path.display())))?;
    }
    Ok(())
}

fn build_plot(rendered: &Rendered) -> plot::Plot {
    match rendered {
        Rendered::Table(table) => plot::Plot::Lines {
            x_label: "theta".into(),
            series: table
                .columns
                .iter()
                .map(|(name, values)| {
                    let points = table
                        .theta
                        .iter()
                        .copied()
                        .zip(values.iter().copied())
                        .collect();
                    (name.clone(), points)
                })
                .collect(),
        },
        Rendered::Scalars(records) => {
            let time_resolved = records.iter().any(|r| r.gamma.is_some());
            if !time_resolved {
                // One line per observable against z.
                let mut series: Vec<(String, Vec<(f64, f64)>)> = Vec::new();
                for record in records {
                    let Outcome::Value(value) = record.outcome else {
                        continue;
                    };
                    match series
                        .iter_mut()
                        .find(|(name, _)| name == record.observable)
                    {
                        Some((_, points)) => points.push((record.z, value)),
                        None => series.push((record.observable.into(), vec![(record.z, value)])),
                    }
                }
                return plot::Plot::Lines {
                    x_label: "z".into(),
                    series,
                };
            }

            let mut z_axis: Vec<f64> = Vec::new();
            let mut gamma_axis: Vec<f64> = Vec::new();
            for record in records {
                if record.observable != "entropy_total" {
                    continue;
                }
                if !z_axis.contains(&record.z) {
                    z_axis.push(record.z);
                }
                if let Some(gamma) = record.gamma {
                    if !gamma_axis.contains(&gamma) {
                        gamma_axis.push(gamma);
                    }
                }
            }
            z_axis.sort_by(f64::total_cmp);
            gamma_axis.sort_by(f64::total_cmp);

            if z_axis.len() == 1 {
                // Lines against gamma at the single z.
                let mut series: Vec<(String, Vec<(f64, f64)>)> = Vec::new();
                for record in records {
                    let (Outcome::Value(value), Some(gamma)) = (&record.outcome, record.gamma)
                    else {
                        continue;
                    };
                    match series
                        .iter_mut()
                        .find(|(name, _)| name == record.observable)
                    {
                        Some((_, points)) => points.push((gamma, *value)),
                        None => series.push((record.observable.into(), vec![(gamma, *value)])),
                    }
                }
                return plot::Plot::Lines {
                    x_label: "gamma".into(),
                    series,
                };
            }

            // (z, gamma) surface of the entropic sum; sparse cells stay empty.
            let mut values = vec![vec![f64::NAN; gamma_axis.len()]; z_axis.len()];
            for record in records {
                let (Outcome::Value(value), Some(gamma)) = (&record.outcome, record.gamma) else {
                    continue;
                };
                if record.observable != "entropy_total" {
                    continue;
                }
                let i = z_axis.iter().position(|&z| z == record.z).unwrap();
                let j = gamma_axis.iter().position(|&g| g == gamma).unwrap();
                values[i][j] = *value;
            }
            plot::Plot::Heat {
                x_label: "z".into(),
                y_label: "entropy_total over gamma".into(),
                x: z_axis,
                y: gamma_axis,
                values,
            }
        }
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Data(format!("cannot write `{}`: {e}", path.display()))),
        None => {
            let stdout = std::io::stdout();
            let mut handle = stdout.lock();
            handle
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Data(format!("cannot write to stdout: {e}")))
        }
    }
}
