//! Mixed-radix statevector simulator for qudit phase gates and a small
//! QAOA loop.
//!
//! Sign convention: the cost layer is `e^{-i gamma C}`, so a cost
//! coefficient `c` becomes a gate angle `theta = -gamma * c`.

mod gates;
mod state;

pub use gates::{
    apply_controlled_fp, apply_fp, apply_gate, apply_global_phase, apply_mixer, apply_multi_controlled_phase,
    apply_p, apply_p2, apply_pp, mixer_matrix, Gate,
};
pub use state::{QuditState, REGISTER_LIMIT};

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::models::{Assignment, Model, TQudoModel};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QaoaError {
    #[error("register of total dimension {total} exceeds the limit of {limit}")]
    RegisterTooLarge { total: String, limit: usize },
    #[error("qudit {qudit} has dimension {dim}, need at least 2")]
    Dimension { qudit: usize, dim: usize },
    #[error("qudit {qudit} out of range for {qudits} qudits")]
    QuditOutOfRange { qudit: usize, qudits: usize },
    #[error("value {value} outside qudit {qudit} of dimension {dim}")]
    ValueOutOfRange { qudit: usize, value: usize, dim: usize },
    #[error("two-qudit gate needs distinct qudits, got {0} twice")]
    SameQudit(usize),
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("state norm is {0}, expected 1")]
    NotNormalized(f64),
    #[error("{layers} layers need {layers} gammas and betas, got {gammas} and {betas}")]
    AngleCount { layers: usize, gammas: usize, betas: usize },
}

/// Gate sequence for `e^{-i gamma C}`.
///
/// QUDO: `P` for linear, `P2` for squares, `PP` for cross terms.
/// T-QUDO: `FP` for single-variable entries, controlled `FP` for pairs.
/// HOBO: `P` / `PP` up to order two, a multi-controlled phase above.
/// Offsets become a global phase.
pub fn compile_cost_phase(model: &Model, gamma: f64) -> Vec<Gate> {
    let th = |c: f64| -gamma * c;
    let mut gates = Vec::new();
    match model {
        Model::Qudo(m) => {
            if m.offset() != 0.0 {
                gates.push(Gate::GlobalPhase { theta: th(m.offset()) });
            }
            for (i, &d) in m.linear().iter().enumerate() {
                if d != 0.0 {
                    gates.push(Gate::P { qudit: i, theta: th(d) });
                }
            }
            for (i, j, q) in m.quadratic_terms() {
                if i == j {
                    gates.push(Gate::P2 { qudit: i, theta: th(q) });
                } else {
                    gates.push(Gate::PP { a: i, b: j, theta: th(q) });
                }
            }
        }
        Model::TQudo(m) => {
            if m.offset() != 0.0 {
                gates.push(Gate::GlobalPhase { theta: th(m.offset()) });
            }
            for ((i, j, a, b), v) in m.entries() {
                if i == j {
                    gates.push(Gate::FP {
                        qudit: i,
                        theta: th(v),
                        focus: a,
                    });
                } else {
                    gates.push(Gate::ControlledFP {
                        control: i,
                        control_value: a,
                        target: j,
                        theta: th(v),
                        focus: b,
                    });
                }
            }
        }
        Model::Hobo(m) => {
            for (key, c) in m.terms() {
                let theta = th(c);
                gates.push(match key {
                    [] => Gate::GlobalPhase { theta },
                    [i] => Gate::P { qudit: *i, theta },
                    [i, j] => Gate::PP { a: *i, b: *j, theta },
                    _ => Gate::MultiControlledPhase {
                        qudits: key.to_vec(),
                        theta,
                    },
                });
            }
        }
    }
    gates
}

fn check_register(state: &QuditState, model: &Model) -> Result<(), QaoaError> {
    let dims = model.dims();
    if state.dims() != dims.as_slice() {
        return Err(QaoaError::LengthMismatch {
            expected: dims.len(),
            got: state.num_qudits(),
        });
    }
    Ok(())
}

/// `e^{-i gamma C}` through the compiled gate sequence.
pub fn apply_cost_phase(state: &mut QuditState, model: &Model, gamma: f64) -> Result<(), QaoaError> {
    check_register(state, model)?;
    for g in compile_cost_phase(model, gamma) {
        apply_gate(state, &g)?;
    }
    Ok(())
}

/// `e^{-i gamma C(x)}` applied basis state by basis state from the model's
/// own evaluation; the reference for [`apply_cost_phase`].
pub fn apply_cost_phase_direct(state: &mut QuditState, model: &Model, gamma: f64) -> Result<(), QaoaError> {
    check_register(state, model)?;
    let costs = basis_costs(state, model);
    for (a, c) in state.amplitudes_mut().iter_mut().zip(costs) {
        *a *= Complex64::from_polar(1.0, -gamma * c);
    }
    Ok(())
}

fn basis_costs(state: &QuditState, model: &Model) -> Vec<f64> {
    (0..state.len()).map(|idx| model.cost(&state.values_of(idx))).collect()
}

/// T-QUDO phase via an auxiliary qubit: for every entry, flip the ancilla
/// when both qudits match, rotate it by `Rz(theta)`, and flip it back.
/// Each entry leaves an extra global phase `e^{-i theta / 2}`, so the result
/// equals [`apply_cost_phase`] only up to a global phase.
pub fn apply_cost_phase_ancilla(state: &QuditState, model: &TQudoModel, gamma: f64) -> Result<QuditState, QaoaError> {
    let dims = model.space().dims();
    if state.dims() != dims {
        return Err(QaoaError::LengthMismatch {
            expected: dims.len(),
            got: state.num_qudits(),
        });
    }
    let mut ext_dims = dims.to_vec();
    ext_dims.push(2);
    let anc = dims.len();
    // ancilla in |0>: same amplitudes, upper half zero
    let mut amps = state.amplitudes().to_vec();
    amps.resize(state.len() * 2, Complex64::new(0.0, 0.0));
    let mut ext = QuditState::from_amplitudes(&ext_dims, amps)?;
    let offset = model.offset();
    if offset != 0.0 {
        apply_global_phase(&mut ext, -gamma * offset);
    }
    for ((i, j, a, b), v) in model.entries() {
        let theta = -gamma * v;
        let controls = [(i, a), (j, b)];
        flip_if(&mut ext, &controls, anc);
        // Rz(theta) = diag(e^{-i theta/2}, e^{i theta/2})
        ext.apply_diagonal(|s, idx| Some(if s.digit(idx, anc) == 0 { -theta / 2.0 } else { theta / 2.0 }));
        flip_if(&mut ext, &controls, anc);
    }
    let half = state.len();
    let leak: f64 = ext.amplitudes()[half..].iter().map(|a| a.norm_sqr()).sum();
    debug_assert!(leak < 1e-20, "ancilla not returned to |0>");
    QuditState::from_amplitudes(state.dims(), ext.amplitudes()[..half].to_vec())
}

/// X on the `target` qubit wherever every `(qudit, value)` control matches.
fn flip_if(state: &mut QuditState, controls: &[(usize, usize)], target: usize) {
    let stride = state.stride(target);
    for idx in 0..state.len() {
        if state.digit(idx, target) == 0 && controls.iter().all(|&(q, v)| state.digit(idx, q) == v) {
            state.amplitudes_mut().swap(idx, idx + stride);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct QaoaResult {
    pub expected_cost: f64,
    /// Highest-probability basis state; ties go to the lowest index.
    pub best_sampled_assignment: Assignment,
    pub best_probability: f64,
    pub best_cost: f64,
}

/// `p` layers of cost phase then mixer on every qudit, from the uniform
/// superposition.
pub fn run_qaoa(model: &Model, layers: usize, gammas: &[f64], betas: &[f64]) -> Result<QaoaResult, QaoaError> {
    if gammas.len() != layers || betas.len() != layers {
        return Err(QaoaError::AngleCount {
            layers,
            gammas: gammas.len(),
            betas: betas.len(),
        });
    }
    let mut state = QuditState::uniform(&model.dims())?;
    let costs = basis_costs(&state, model);
    for (&g, &b) in gammas.iter().zip(betas) {
        apply_cost_phase(&mut state, model, g)?;
        for q in 0..state.num_qudits() {
            apply_mixer(&mut state, q, b)?;
        }
    }
    let probs: Vec<f64> = state.amplitudes().iter().map(|a| a.norm_sqr()).collect();
    let expected_cost = probs.iter().zip(&costs).map(|(p, c)| p * c).sum();
    let mut best = 0;
    for (idx, &p) in probs.iter().enumerate() {
        if p > probs[best] + 1e-15 {
            best = idx;
        }
    }
    Ok(QaoaResult {
        expected_cost,
        best_sampled_assignment: Assignment::new(state.values_of(best)),
        best_probability: probs[best],
        best_cost: costs[best],
    })
}

/// Single-layer grid search over `gamma, beta` in `[0, pi)`, `steps` points
/// each; returns the angles with the lowest expected cost.
pub fn grid_search(model: &Model, steps: usize) -> Result<(f64, f64, QaoaResult), QaoaError> {
    let steps = steps.max(1);
    let mut best: Option<(f64, f64, QaoaResult)> = None;
    for gi in 0..steps {
        for bi in 0..steps {
            let (g, b) = (PI * gi as f64 / steps as f64, PI * bi as f64 / steps as f64);
            let r = run_qaoa(model, 1, &[g], &[b])?;
            if best.as_ref().is_none_or(|(_, _, cur)| r.expected_cost < cur.expected_cost) {
                best = Some((g, b, r));
            }
        }
    }
    Ok(best.expect("at least one grid point"))
}
