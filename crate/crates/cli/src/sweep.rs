//! Observable evaluation over sweep grids with a deterministic worker pool.
//!
//! Each sweep point is a pure function of immutable shared state, so points
//! fan out over rayon and return in index order regardless of completion
//! order; identical configs give byte-identical output.

use degen_cs::{dynamics, entropic, phase, EvolutionGrid, PhaseError, StateWeights};
use rayon::prelude::*;

use crate::config::{CliError, SweepContext};
use crate::records::{DistributionTable, Outcome, ScalarRecord};

#[derive(Copy, Clone)]
pub enum ObservableGroup {
    Mandel,
    Squeezing,
    Entropy,
    Quadrature,
}

impl ObservableGroup {
    /// Column names in emission order.
    pub fn names(&self) -> &'static [&'static str] {
        match self {
            ObservableGroup::Mandel => &["mean_n", "var_n", "mandel_q"],
            ObservableGroup::Squeezing => &["s_number", "s_phase", "commutator"],
            ObservableGroup::Entropy => &["r_number", "r_phase", "entropy_total"],
            ObservableGroup::Quadrature => &[
                "quad_var_x",
                "quad_var_p",
                "quad_commutator",
                "quad_max_rel_dev",
            ],
        }
    }

    fn evaluate(&self, context: &SweepContext, state: &StateWeights, z: f64) -> Vec<ScalarRecord> {
        let record = |observable: &'static str, outcome: Outcome| ScalarRecord {
            z,
            gamma: None,
            observable,
            outcome,
        };
        match self {
            ObservableGroup::Mandel => vec![
                record("mean_n", Outcome::Value(state.mean_number())),
                record("var_n", Outcome::Value(state.number_variance())),
                record("mandel_q", Outcome::Value(state.mandel_q())),
            ],
            ObservableGroup::Squeezing => {
                let commutator = phase::number_phase_commutator(state, &context.grid);
                match phase::squeezing_report(state, &context.grid) {
                    Ok(report) => vec![
                        record("s_number", Outcome::Value(report.s_number)),
                        record("s_phase", Outcome::Value(report.s_phase)),
                        record("commutator", Outcome::Value(commutator)),
                    ],
                    Err(PhaseError::DegenerateCommutator) => vec![
                        record("s_number", Outcome::Undefined),
                        record("s_phase", Outcome::Undefined),
                        record("commutator", Outcome::Value(commutator)),
                    ],
                    Err(other) => self.failed(z, other.to_string()),
                }
            }
            ObservableGroup::Entropy => {
                let report = entropic::entropy_report(state, &context.grid);
                vec![
                    record("r_number", Outcome::Value(report.r_number)),
                    record("r_phase", Outcome::Value(report.r_phase)),
                    record("entropy_total", Outcome::Value(report.total)),
                ]
            }
            ObservableGroup::Quadrature => match state.quadrature_report() {
                Ok(report) => vec![
                    record("quad_var_x", Outcome::Value(report.var_x)),
                    record("quad_var_p", Outcome::Value(report.var_p)),
                    record(
                        "quad_commutator",
                        Outcome::Value(report.commutator_expectation),
                    ),
                    record(
                        "quad_max_rel_dev",
                        Outcome::Value(report.max_relative_deviation),
                    ),
                ],
                Err(error) => self.failed(z, error.to_string()),
            },
        }
    }

    /// One failed row per observable in the group.
    fn failed(&self, z: f64, message: String) -> Vec<ScalarRecord> {
        self.names()
            .iter()
            .map(|observable| ScalarRecord {
                z,
                gamma: None,
                observable,
                outcome: Outcome::Failed(message.clone()),
            })
            .collect()
    }
}

/// Evaluate a scalar observable group over the z grid (z-major row order).
pub fn scalar_sweep(
    context: &SweepContext,
    z_values: &[f64],
    group: ObservableGroup,
) -> Vec<ScalarRecord> {
    z_values
        .par_iter()
        .map(|&z| match context.state(z) {
            Ok(state) => group.evaluate(context, &state, z),
            Err(error) => group.failed(z, error.to_string()),
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Evaluate the time-resolved entropic sum over each (z grid, gamma grid)
/// segment, z-major then gamma.
pub fn dynamics_sweep(
    context: &SweepContext,
    segments: &[(Vec<f64>, EvolutionGrid)],
) -> Vec<ScalarRecord> {
    let mut records = Vec::new();
    for (z_values, evolution) in segments {
        let mut chunk: Vec<Vec<ScalarRecord>> = z_values
            .par_iter()
            .map(|&z| match context.state(z) {
                Ok(state) => dynamics::gk_entropic_sum_sweep(&state, &context.grid, evolution)
                    .into_iter()
                    .flat_map(|row| {
                        [
                            ("r_number", row.r_number),
                            ("r_phase", row.r_phase),
                            ("entropy_total", row.total),
                        ]
                        .map(|(observable, value)| ScalarRecord {
                            z,
                            gamma: Some(row.gamma),
                            observable,
                            outcome: Outcome::Value(value),
                        })
                    })
                    .collect(),
                Err(error) => evolution
                    .gammas()
                    .flat_map(|gamma| {
                        ["r_number", "r_phase", "entropy_total"].map(|observable| ScalarRecord {
                            z,
                            gamma: Some(gamma),
                            observable,
                            outcome: Outcome::Failed(error.to_string()),
                        })
                    })
                    .collect(),
            })
            .collect();
        records.extend(chunk.drain(..).flatten());
    }
    records
}

/// Sample the static phase distribution at each z; columns are labeled
/// `z=<value>`. A state that fails to converge aborts the table (there is
/// no error cell in the wide format).
pub fn distribution_sweep(
    context: &SweepContext,
    z_values: &[f64],
) -> Result<DistributionTable, CliError> {
    let theta: Vec<f64> = (0..context.grid.points())
        .map(|j| context.grid.theta(j))
        .collect();
    let columns = z_values
        .par_iter()
        .map(|&z| {
            let state = context
                .state(z)
                .map_err(|e| CliError::Data(format!("z = {z}: {e}")))?;
            let distribution = phase::phase_distribution(&state, &context.grid);
            Ok((format!("z={z}"), distribution.values().to_vec()))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(DistributionTable { theta, columns })
}
