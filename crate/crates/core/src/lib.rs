//! Cost-function models over bounded-integer and binary variables (QUBO,
//! QUDO, tensor QUDO and higher-order binary), conversions between them,
//! penalty builders, encoders for a set of combinatorial problems and games,
//! rule validators, exhaustive and annealing solvers, and a small qudit
//! statevector simulator for QAOA-style phase layers.

pub mod encoders;
pub mod models;
pub mod penalty;
pub mod poly;
pub mod problems;
pub mod qaoa;
pub mod solvers;
pub mod transforms;
pub mod validators;

pub use models::{Assignment, Formalism, HoboModel, Model, ModelError, QudoModel, TQudoModel, VariableSpace};
