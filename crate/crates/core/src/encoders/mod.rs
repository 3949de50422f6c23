//! Problem encoders: each turns an instance into a model plus the layout
//! needed to read assignments back as domain solutions.

mod hashi;
mod knapsack;
mod peg;
mod puzzles;
mod queens;
mod tsp;

pub use hashi::encode_hashi;
pub use knapsack::{encode_knapsack, KnapsackVariant};
pub use peg::encode_peg;
pub use puzzles::{encode_inshi, encode_kakuro};
pub use queens::encode_queens;
pub use tsp::{encode_tsp, prime_log_min_gap, prime_log_penalty, primes, TspPenalty};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::models::{Model, ModelError, TQudoModel};
use crate::penalty::PenaltyError;
use crate::problems::{
    Cell, DomainSolution, HashiEdge, HashiSolution, InshiSolution, KakuroSolution, KnapsackSolution,
    PegInstance, PegLayout, PegMove, PegSolution, ProblemError, QueensSolution, TspSolution,
};

/// Slack above an exact zero that still counts as feasible, absorbing float
/// rounding in expanded penalties.
pub const FEASIBILITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EncodeError {
    #[error(transparent)]
    Instance(#[from] ProblemError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Penalty(#[from] PenaltyError),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("instance is trivially infeasible: {0}")]
    Infeasible(String),
    #[error("penalty weight must be positive and finite, got {0}")]
    InvalidLambda(f64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("assignment has {got} values, model has {expected} variables")]
    LengthMismatch { expected: usize, got: usize },
    #[error("step {step} has {count} active moves, expected exactly one")]
    MoveCount { step: usize, count: usize },
}

pub(crate) fn check_lambda(lambda: f64) -> Result<f64, EncodeError> {
    if lambda > 0.0 && lambda.is_finite() {
        Ok(lambda)
    } else {
        Err(EncodeError::InvalidLambda(lambda))
    }
}

/// Model variables need at least two values. A domain of size one is padded
/// to two and the extra value is penalized by `lambda`.
pub(crate) fn padded_dim(domain: usize) -> usize {
    domain.max(2)
}

pub(crate) fn forbid_padding(
    model: &mut TQudoModel,
    var: usize,
    domain: usize,
    lambda: f64,
) -> Result<(), ModelError> {
    for v in domain..padded_dim(domain) {
        model.add_diagonal(var, v, lambda)?;
    }
    Ok(())
}

/// How to read a model assignment as a domain solution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "problem", rename_all = "lowercase", rename_all_fields = "camelCase")]
pub enum ProblemLayout {
    /// Per item class, the `(variable, multiplier)` pairs summing to its count.
    Knapsack { classes: Vec<Vec<(usize, u64)>> },
    /// Variable `k` holds the bridge count of `edges[k]`.
    Hashi { edges: Vec<(usize, usize)> },
    /// Variable `t` is the vertex visited at step `t` (step `t + 1` when the
    /// first vertex is fixed to 0).
    Tsp { vertices: usize, fix_first: bool },
    Queens { n: usize },
    /// Variable `k` is the digit minus one of `cells[k]`.
    Kakuro { size: usize, cells: Vec<Cell> },
    /// Variable `r * size + c` is the value minus one of cell `(r, c)`.
    Inshi { size: usize },
    Peg { instance: PegInstance },
}

impl ProblemLayout {
    pub fn decode(&self, values: &[usize]) -> Result<DomainSolution, DecodeError> {
        let need = |n: usize| {
            if values.len() < n {
                Err(DecodeError::LengthMismatch {
                    expected: n,
                    got: values.len(),
                })
            } else {
                Ok(())
            }
        };
        let sol = match self {
            ProblemLayout::Knapsack { classes } => {
                let top = classes.iter().flatten().map(|&(v, _)| v + 1).max().unwrap_or(0);
                need(top)?;
                let counts = classes
                    .iter()
                    .map(|digits| digits.iter().map(|&(v, m)| values[v] as u64 * m).sum())
                    .collect();
                DomainSolution::Knapsack(KnapsackSolution { counts })
            }
            ProblemLayout::Hashi { edges } => {
                need(edges.len())?;
                let edges = edges
                    .iter()
                    .zip(values)
                    .filter(|(_, &x)| x > 0)
                    .map(|(&(a, b), &count)| HashiEdge { a, b, count })
                    .collect();
                DomainSolution::Hashi(HashiSolution { edges })
            }
            ProblemLayout::Tsp { vertices, fix_first } => {
                let vars = vertices - usize::from(*fix_first);
                need(vars)?;
                let mut tour = Vec::with_capacity(*vertices);
                if *fix_first {
                    tour.push(0);
                }
                tour.extend_from_slice(&values[..vars]);
                DomainSolution::Tsp(TspSolution { tour })
            }
            ProblemLayout::Queens { n } => {
                need(*n)?;
                DomainSolution::Queens(QueensSolution {
                    columns: values[..*n].to_vec(),
                })
            }
            ProblemLayout::Kakuro { size, cells } => {
                need(cells.len())?;
                let mut grid = vec![vec![None; *size]; *size];
                for (&(r, c), &x) in cells.iter().zip(values) {
                    grid[r][c] = Some(x + 1);
                }
                DomainSolution::Kakuro(KakuroSolution { grid })
            }
            ProblemLayout::Inshi { size } => {
                need(size * size)?;
                let grid = (0..*size)
                    .map(|r| (0..*size).map(|c| values[r * size + c] + 1).collect())
                    .collect();
                DomainSolution::Inshi(InshiSolution { grid })
            }
            ProblemLayout::Peg { instance } => {
                let layout = PegLayout::new(instance);
                need(layout.num_vars())?;
                let mut moves = Vec::new();
                for step in 0..layout.steps() - 1 {
                    let active: Vec<_> = layout
                        .actions()
                        .iter()
                        .filter(|a| a.t == step && values[a.var] == 1)
                        .collect();
                    if active.len() != 1 {
                        return Err(DecodeError::MoveCount {
                            step,
                            count: active.len(),
                        });
                    }
                    moves.push(PegMove {
                        from: layout.cells()[active[0].source],
                        code: active[0].code,
                    });
                }
                DomainSolution::Peg(PegSolution { moves })
            }
        };
        Ok(sol)
    }
}

/// An encoded instance.
#[derive(Debug, Clone, PartialEq)]
pub struct EncodedProblem {
    pub model: Model,
    pub layout: ProblemLayout,
    /// Assignments costing at most this decode to rule-satisfying solutions.
    /// `None` when the chosen penalty weights do not guarantee a clean cut.
    pub feasibility_threshold: Option<f64>,
    /// Meaning of every model variable, by index.
    pub variable_names: Vec<String>,
}

impl EncodedProblem {
    pub fn decode(&self, values: &[usize]) -> Result<DomainSolution, DecodeError> {
        if values.len() != self.model.num_vars() {
            return Err(DecodeError::LengthMismatch {
                expected: self.model.num_vars(),
                got: values.len(),
            });
        }
        self.layout.decode(values)
    }

    pub fn is_feasible_cost(&self, cost: f64) -> Option<bool> {
        self.feasibility_threshold.map(|t| cost <= t)
    }
}
