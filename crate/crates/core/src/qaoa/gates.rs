use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{QaoaError, QuditState};

/// A gate on the register. All kinds except `Mixer` are diagonal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase", rename_all_fields = "camelCase")]
pub enum Gate {
    /// `e^{i theta k}` on value `k`.
    #[serde(rename = "P")]
    P { qudit: usize, theta: f64 },
    /// `e^{i theta k^2}` on value `k`.
    #[serde(rename = "P2")]
    P2 { qudit: usize, theta: f64 },
    /// `e^{i theta l m}` on joint value `(l, m)`.
    #[serde(rename = "PP")]
    PP { a: usize, b: usize, theta: f64 },
    /// Focus phase: `e^{i theta}` on value `focus` only.
    #[serde(rename = "FP")]
    FP { qudit: usize, theta: f64, focus: usize },
    /// `e^{i theta}` where `control == controlValue` and `target == focus`.
    ControlledFP {
        control: usize,
        control_value: usize,
        target: usize,
        theta: f64,
        focus: usize,
    },
    /// `e^{i theta}` where every listed qudit holds 1; higher-order binary terms.
    MultiControlledPhase { qudits: Vec<usize>, theta: f64 },
    GlobalPhase { theta: f64 },
    /// `e^{-i beta (X + X^dagger)}` with `X` the cyclic shift.
    Mixer { qudit: usize, beta: f64 },
}

pub fn apply_p(state: &mut QuditState, qudit: usize, theta: f64) -> Result<(), QaoaError> {
    state.check_qudit(qudit)?;
    state.apply_diagonal(|s, idx| Some(theta * s.digit(idx, qudit) as f64));
    Ok(())
}

pub fn apply_p2(state: &mut QuditState, qudit: usize, theta: f64) -> Result<(), QaoaError> {
    state.check_qudit(qudit)?;
    state.apply_diagonal(|s, idx| {
        let k = s.digit(idx, qudit) as f64;
        Some(theta * k * k)
    });
    Ok(())
}

pub fn apply_pp(state: &mut QuditState, a: usize, b: usize, theta: f64) -> Result<(), QaoaError> {
    state.check_qudit(a)?;
    state.check_qudit(b)?;
    if a == b {
        return Err(QaoaError::SameQudit(a));
    }
    state.apply_diagonal(|s, idx| Some(theta * (s.digit(idx, a) * s.digit(idx, b)) as f64));
    Ok(())
}

pub fn apply_fp(state: &mut QuditState, qudit: usize, theta: f64, focus: usize) -> Result<(), QaoaError> {
    state.check_value(qudit, focus)?;
    state.apply_diagonal(|s, idx| (s.digit(idx, qudit) == focus).then_some(theta));
    Ok(())
}

pub fn apply_controlled_fp(
    state: &mut QuditState,
    control: usize,
    control_value: usize,
    target: usize,
    theta: f64,
    focus: usize,
) -> Result<(), QaoaError> {
    state.check_value(control, control_value)?;
    state.check_value(target, focus)?;
    if control == target {
        return Err(QaoaError::SameQudit(control));
    }
    state.apply_diagonal(|s, idx| {
        (s.digit(idx, control) == control_value && s.digit(idx, target) == focus).then_some(theta)
    });
    Ok(())
}

pub fn apply_multi_controlled_phase(state: &mut QuditState, qudits: &[usize], theta: f64) -> Result<(), QaoaError> {
    for &q in qudits {
        state.check_value(q, 1)?;
    }
    state.apply_diagonal(|s, idx| qudits.iter().all(|&q| s.digit(idx, q) == 1).then_some(theta));
    Ok(())
}

pub fn apply_global_phase(state: &mut QuditState, theta: f64) {
    let phase = Complex64::from_polar(1.0, theta);
    for a in state.amplitudes_mut() {
        *a *= phase;
    }
}

/// `e^{-i beta (X + X^dagger)}` for dimension `d`, row-major.
///
/// `X + X^dagger` is circulant with eigenvalues `2 cos(2 pi m / d)` on the
/// Fourier modes, so entry `(k, l)` is
/// `(1/d) sum_m e^{-2 i beta cos(2 pi m / d)} e^{2 pi i m (k - l) / d}`.
pub fn mixer_matrix(d: usize, beta: f64) -> Vec<Complex64> {
    let mut u = vec![Complex64::new(0.0, 0.0); d * d];
    for k in 0..d {
        for l in 0..d {
            let mut acc = Complex64::new(0.0, 0.0);
            for m in 0..d {
                let w = 2.0 * PI * m as f64 / d as f64;
                let eig = -2.0 * beta * w.cos();
                let fourier = w * (k as f64 - l as f64);
                acc += Complex64::from_polar(1.0, eig + fourier);
            }
            u[k * d + l] = acc / d as f64;
        }
    }
    u
}

/// Applies a `d x d` matrix to one qudit.
pub(crate) fn apply_single(state: &mut QuditState, qudit: usize, u: &[Complex64]) -> Result<(), QaoaError> {
    state.check_qudit(qudit)?;
    let d = state.dims()[qudit];
    let stride = state.stride(qudit);
    let block = stride * d;
    let n = state.len();
    let amps = state.amplitudes_mut();
    let mut fiber = vec![Complex64::new(0.0, 0.0); d];
    for base in (0..n).step_by(block) {
        for low in 0..stride {
            let start = base + low;
            for (k, f) in fiber.iter_mut().enumerate() {
                *f = amps[start + k * stride];
            }
            for k in 0..d {
                amps[start + k * stride] = (0..d).map(|l| u[k * d + l] * fiber[l]).sum();
            }
        }
    }
    Ok(())
}

pub fn apply_mixer(state: &mut QuditState, qudit: usize, beta: f64) -> Result<(), QaoaError> {
    state.check_qudit(qudit)?;
    let u = mixer_matrix(state.dims()[qudit], beta);
    apply_single(state, qudit, &u)
}

pub fn apply_gate(state: &mut QuditState, gate: &Gate) -> Result<(), QaoaError> {
    match *gate {
        Gate::P { qudit, theta } => apply_p(state, qudit, theta),
        Gate::P2 { qudit, theta } => apply_p2(state, qudit, theta),
        Gate::PP { a, b, theta } => apply_pp(state, a, b, theta),
        Gate::FP { qudit, theta, focus } => apply_fp(state, qudit, theta, focus),
        Gate::ControlledFP {
            control,
            control_value,
            target,
            theta,
            focus,
        } => apply_controlled_fp(state, control, control_value, target, theta, focus),
        Gate::MultiControlledPhase { ref qudits, theta } => apply_multi_controlled_phase(state, qudits, theta),
        Gate::GlobalPhase { theta } => {
            apply_global_phase(state, theta);
            Ok(())
        }
        Gate::Mixer { qudit, beta } => apply_mixer(state, qudit, beta),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn p_on_qubit_one_flips_sign() {
        let mut s = QuditState::basis(&[2], &[1]).unwrap();
        apply_p(&mut s, 0, PI).unwrap();
        assert!((s.amplitudes()[1] - c(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn p_quarter_turn_on_qutrit() {
        let mut s = QuditState::uniform(&[3]).unwrap();
        apply_p(&mut s, 0, PI / 2.0).unwrap();
        let a = 1.0 / 3f64.sqrt();
        let want = [c(a, 0.0), c(0.0, a), c(-a, 0.0)];
        for (got, want) in s.amplitudes().iter().zip(want) {
            assert!((got - want).norm() < 1e-12);
        }
    }

    #[test]
    fn focus_errors_and_full_turn() {
        let mut s = QuditState::uniform(&[3]).unwrap();
        assert!(apply_fp(&mut s, 0, 1.0, 3).is_err());
        let before = s.clone();
        apply_fp(&mut s, 0, 2.0 * PI, 1).unwrap();
        assert!(s.distance(&before) < 1e-12);
    }

    #[test]
    fn mixer_on_qubit_is_rotation() {
        // d = 2: X + X^dagger = 2X, so U = cos(2 beta) I - i sin(2 beta) X
        let beta = 0.3;
        let u = mixer_matrix(2, beta);
        let (co, si) = ((2.0 * beta).cos(), (2.0 * beta).sin());
        let want = [c(co, 0.0), c(0.0, -si), c(0.0, -si), c(co, 0.0)];
        for (got, want) in u.iter().zip(want) {
            assert!((got - want).norm() < 1e-12);
        }
    }

    #[test]
    fn gate_serde_tags() {
        let g = Gate::ControlledFP {
            control: 0,
            control_value: 1,
            target: 2,
            theta: 0.5,
            focus: 0,
        };
        let json = serde_json::to_string(&g).unwrap();
        assert!(json.contains("\"kind\":\"controlledFP\"") && json.contains("controlValue"));
        assert_eq!(serde_json::from_str::<Gate>(&json).unwrap(), g);
    }
}
