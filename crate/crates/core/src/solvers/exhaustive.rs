use std::time::Instant;

use super::{CompiledModel, SolveError, SolveResult};
use crate::models::{Assignment, Model};

pub const DEFAULT_CAP: u128 = 10_000_000;

/// Costs this close to the best count as optimal ties.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// Running sums from deltas are re-anchored on a full evaluation this often.
const RESYNC_EVERY: u64 = 1 << 12;

/// Visits every assignment in mixed-radix order (variable 0 fastest).
///
/// The running cost is updated by deltas; any candidate near the current
/// best is re-evaluated exactly before it is compared, so the reported
/// costs never carry accumulated rounding.
pub fn solve_exhaustive(model: &Model, cap: u128) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    let dims = model.dims();
    let size = dims.iter().try_fold(1u128, |acc, &d| acc.checked_mul(d as u128));
    match size {
        Some(s) if s <= cap => {}
        Some(s) => return Err(SolveError::SpaceTooLarge { size: s.to_string(), cap }),
        None => {
            return Err(SolveError::SpaceTooLarge {
                size: "more than 2^128".into(),
                cap,
            })
        }
    }

    let compiled = CompiledModel::new(model);
    let n = dims.len();
    let mut x = vec![0usize; n];
    let mut running = compiled.evaluate(&x);
    let mut evaluations = 1u64;
    let mut best = running;
    let mut optima: Vec<(Vec<usize>, f64)> = vec![(x.clone(), running)];

    let mut steps = 0u64;
    'outer: loop {
        // odometer increment
        let Some(k) = (0..n).find(|&k| x[k] + 1 < dims[k]) else {
            break 'outer;
        };
        for j in 0..k {
            running += compiled.delta(&x, j, 0);
            x[j] = 0;
        }
        running += compiled.delta(&x, k, x[k] + 1);
        x[k] += 1;
        evaluations += 1;
        steps += 1;
        if steps % RESYNC_EVERY == 0 {
            running = compiled.evaluate(&x);
        }
        if running <= best + 1e3 * TIE_TOLERANCE.max(best.abs() * 1e-12) {
            let exact = compiled.evaluate(&x);
            running = exact;
            if exact < best {
                best = exact;
                optima.retain(|(_, c)| *c <= best + TIE_TOLERANCE);
            }
            if exact <= best + TIE_TOLERANCE {
                optima.push((x.clone(), exact));
            }
        }
    }

    let (best_x, _) = optima
        .iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("at least one assignment")
        .clone();
    let best_assignment = Assignment::new(best_x);
    let best_cost = model.evaluate(&best_assignment)?;
    Ok(SolveResult {
        best_assignment,
        best_cost,
        all_optima: Some(optima.into_iter().map(|(v, _)| Assignment::new(v)).collect()),
        evaluations,
        seed: None,
        wall_time: start.elapsed().as_secs_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{QudoModel, VariableSpace};

    #[test]
    fn empty_model_everything_optimal() {
        let mut m = QudoModel::new(VariableSpace::new(vec![2, 3]).unwrap());
        m.add_offset(2.5);
        let r = solve_exhaustive(&Model::Qudo(m), DEFAULT_CAP).unwrap();
        assert_eq!(r.best_cost, 2.5);
        assert_eq!(r.all_optima.unwrap().len(), 6);
    }

    #[test]
    fn zero_variables() {
        let m = QudoModel::new(VariableSpace::new(vec![]).unwrap());
        let r = solve_exhaustive(&Model::Qudo(m), DEFAULT_CAP).unwrap();
        assert_eq!(r.best_cost, 0.0);
        assert_eq!(r.all_optima.unwrap(), vec![Assignment::new(vec![])]);
    }

    #[test]
    fn refuses_above_cap() {
        let m = QudoModel::new(VariableSpace::new(vec![10; 8]).unwrap());
        match solve_exhaustive(&Model::Qudo(m), DEFAULT_CAP) {
            Err(SolveError::SpaceTooLarge { size, .. }) => assert_eq!(size, "100000000"),
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn finds_linear_minimum() {
        let mut m = QudoModel::new(VariableSpace::new(vec![3, 3]).unwrap());
        m.add_linear(0, -1.0).unwrap();
        m.add_linear(1, 1.0).unwrap();
        let r = solve_exhaustive(&Model::Qudo(m), DEFAULT_CAP).unwrap();
        assert_eq!(r.best_assignment.values(), &[2, 0]);
        assert_eq!(r.best_cost, -2.0);
        assert_eq!(r.evaluations, 9);
    }
}
