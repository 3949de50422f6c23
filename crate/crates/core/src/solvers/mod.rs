//! Exhaustive enumeration (the oracle) and simulated annealing.

mod anneal;
mod compiled;
mod exhaustive;

pub use anneal::{solve_anneal, AnnealConfig};
pub use compiled::CompiledModel;
pub use exhaustive::{solve_exhaustive, DEFAULT_CAP, TIE_TOLERANCE};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::models::{Assignment, Model, ModelError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("search space has {size} assignments, above the cap of {cap}")]
    SpaceTooLarge { size: String, cap: u128 },
    #[error("invalid anneal configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SolveResult {
    pub best_assignment: Assignment,
    pub best_cost: f64,
    /// Every assignment within [`TIE_TOLERANCE`] of the best, exhaustive only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub all_optima: Option<Vec<Assignment>>,
    pub evaluations: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Seconds.
    pub wall_time: f64,
}

impl SolveResult {
    /// Equality of everything except the wall time.
    pub fn same_outcome(&self, other: &SolveResult) -> bool {
        self.best_assignment == other.best_assignment
            && self.best_cost.to_bits() == other.best_cost.to_bits()
            && self.all_optima == other.all_optima
            && self.evaluations == other.evaluations
            && self.seed == other.seed
    }
}

/// Cost change from setting `x[i] = value`, using only the terms that touch
/// variable `i`.
pub fn incremental_delta(model: &Model, x: &Assignment, i: usize, value: usize) -> Result<f64, ModelError> {
    let dims = model.dims();
    if x.len() != dims.len() {
        return Err(ModelError::LengthMismatch {
            expected: dims.len(),
            got: x.len(),
        });
    }
    if i >= dims.len() {
        return Err(ModelError::IndexOutOfRange {
            index: i,
            num_vars: dims.len(),
        });
    }
    if value >= dims[i] {
        return Err(ModelError::ValueOutOfRange {
            index: i,
            value,
            dim: dims[i],
        });
    }
    crate::models::check_values(&dims, x.values())?;
    Ok(CompiledModel::new(model).delta(x.values(), i, value))
}
