use serde::{Deserialize, Serialize};

use super::{check_lambda, EncodeError, EncodedProblem, ProblemLayout, FEASIBILITY_TOLERANCE};
use crate::models::{Model, ModelError, TQudoModel, VariableSpace};
use crate::problems::TspInstance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TspPenalty {
    /// `lambda * (sum_t log2 p[x_t] - sum_i log2 p[i])^2` with `p = (1, 2, 3, 5, ...)`.
    PrimeLog,
    /// `lambda` for every pair of steps visiting the same vertex.
    PairwiseDelta,
}

/// `(1, 2, 3, 5, 7, ...)`, the first `n` entries.
pub fn primes(n: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(n);
    if n > 0 {
        out.push(1);
    }
    let mut candidate = 2u64;
    while out.len() < n {
        if (2..candidate).take_while(|d| d * d <= candidate).all(|d| candidate % d != 0) {
            out.push(candidate);
        }
        candidate += 1;
    }
    out
}

fn prime_logs(vertices: usize) -> Vec<f64> {
    primes(vertices).into_iter().map(|p| (p as f64).log2()).collect()
}

/// Prime-log restriction term with `lambda = 1` for a full tour.
pub fn prime_log_penalty(tour: &[usize], vertices: usize) -> f64 {
    let logs = prime_logs(vertices);
    let target: f64 = logs.iter().sum();
    let total: f64 = tour.iter().map(|&x| logs[x]).sum();
    (total - target).powi(2)
}

/// Smallest prime-log penalty over value multisets that are not a
/// permutation, found by enumeration. `None` when there are more than
/// `limit` multisets.
pub fn prime_log_min_gap(vertices: usize, fix_first: bool, limit: u64) -> Option<f64> {
    let logs = prime_logs(vertices);
    let target: f64 = logs.iter().sum();
    let slots = vertices - usize::from(fix_first);
    // number of multisets: C(slots + V - 1, slots)
    let mut count: u128 = 1;
    for k in 0..slots as u128 {
        count = count * (vertices as u128 + k) / (k + 1);
        if count > limit as u128 {
            return None;
        }
    }
    // with the first vertex fixed to 0, the free slots must hold 1..V-1
    let first_free = usize::from(fix_first);
    let mut best = f64::INFINITY;
    let mut counts = vec![0usize; vertices];
    fn walk(
        value: usize,
        left: usize,
        sum: f64,
        counts: &mut Vec<usize>,
        ctx: (&[f64], f64, usize),
        best: &mut f64,
    ) {
        let (logs, target, first_free) = ctx;
        if value == logs.len() {
            if left == 0 {
                let is_perm = counts.iter().enumerate().all(|(v, &c)| c == usize::from(v >= first_free));
                if !is_perm {
                    *best = best.min((sum - target).powi(2));
                }
            }
            return;
        }
        for c in 0..=left {
            counts[value] = c;
            walk(value + 1, left - c, sum + c as f64 * logs[value], counts, ctx, best);
        }
        counts[value] = 0;
    }
    walk(0, slots, 0.0, &mut counts, (&logs, target, first_free), &mut best);
    Some(best)
}

#[derive(Clone, Copy)]
enum Slot {
    Fixed,
    Var(usize),
}

fn slot(t: usize, fix_first: bool) -> Slot {
    match (fix_first, t) {
        (true, 0) => Slot::Fixed,
        (true, t) => Slot::Var(t - 1),
        (false, t) => Slot::Var(t),
    }
}

/// Adds `w(x_s, x_u)` for two distinct steps; the fixed step holds vertex 0.
fn add_pair(
    model: &mut TQudoModel,
    s: Slot,
    u: Slot,
    vertices: usize,
    w: impl Fn(usize, usize) -> f64,
) -> Result<(), ModelError> {
    match (s, u) {
        (Slot::Var(i), Slot::Var(j)) => {
            for a in 0..vertices {
                for b in 0..vertices {
                    model.add_entry(i, j, a, b, w(a, b))?;
                }
            }
        }
        (Slot::Fixed, Slot::Var(j)) => {
            for b in 0..vertices {
                model.add_diagonal(j, b, w(0, b))?;
            }
        }
        (Slot::Var(i), Slot::Fixed) => {
            for a in 0..vertices {
                model.add_diagonal(i, a, w(a, 0))?;
            }
        }
        (Slot::Fixed, Slot::Fixed) => model.add_offset(w(0, 0)),
    }
    Ok(())
}

const GAP_ENUMERATION_LIMIT: u64 = 5_000_000;

/// T-QUDO tour model: one variable per step holding the visited vertex,
/// tour costs on consecutive steps (with wraparound), plus the chosen
/// permutation penalty. With `fix_first` the tour starts at vertex 0 and
/// only the remaining `V - 1` steps are variables.
///
/// Default `lambda`: `1 + sum |E|` over all per-step matrices for
/// `PairwiseDelta`; the same divided by the smallest non-permutation
/// prime-log gap for `PrimeLog`.
pub fn encode_tsp(
    inst: &TspInstance,
    penalty: TspPenalty,
    lambda: Option<f64>,
    fix_first: bool,
) -> Result<EncodedProblem, EncodeError> {
    inst.validate()?;
    let v = inst.vertices();
    let costs = inst.resolved_costs();
    let abs_total: f64 = costs.iter().flatten().flatten().map(|c| c.abs()).sum();
    let gap = match penalty {
        TspPenalty::PairwiseDelta => Some(1.0),
        TspPenalty::PrimeLog => prime_log_min_gap(v, fix_first, GAP_ENUMERATION_LIMIT),
    };
    let lambda = check_lambda(lambda.unwrap_or_else(|| (1.0 + abs_total) / gap.unwrap_or(1.0)))?;

    let n = v - usize::from(fix_first);
    let names: Vec<String> = (0..n).map(|k| format!("x[{}]", k + usize::from(fix_first))).collect();
    let mut model = TQudoModel::new(VariableSpace::with_names(vec![v; n], names.clone())?);
    for t in 0..v {
        let next = (t + 1) % v;
        add_pair(&mut model, slot(t, fix_first), slot(next, fix_first), v, |a, b| costs[t][a][b])?;
    }
    match penalty {
        TspPenalty::PairwiseDelta => {
            for s in 0..v {
                for u in s + 1..v {
                    add_pair(&mut model, slot(s, fix_first), slot(u, fix_first), v, |a, b| {
                        if a == b {
                            lambda
                        } else {
                            0.0
                        }
                    })?;
                }
            }
        }
        TspPenalty::PrimeLog => {
            // the fixed step holds vertex 0, whose log is 0
            let logs = prime_logs(v);
            let target: f64 = logs.iter().sum();
            model.add_offset(lambda * target * target);
            for i in 0..n {
                for a in 0..v {
                    model.add_diagonal(i, a, lambda * (logs[a] * logs[a] - 2.0 * target * logs[a]))?;
                }
                for j in i + 1..n {
                    for a in 0..v {
                        for b in 0..v {
                            model.add_entry(i, j, a, b, 2.0 * lambda * logs[a] * logs[b])?;
                        }
                    }
                }
            }
        }
    }

    // permutations cost at most `hi`; anything else at least `lo + lambda * gap`
    let hi: f64 = costs.iter().map(|m| m.iter().flatten().copied().fold(f64::MIN, f64::max)).sum();
    let lo: f64 = costs.iter().map(|m| m.iter().flatten().copied().fold(f64::MAX, f64::min)).sum();
    let threshold = hi + FEASIBILITY_TOLERANCE;
    let separated = gap.is_some_and(|g| lo + lambda * g > threshold);

    Ok(EncodedProblem {
        model: Model::TQudo(model),
        layout: ProblemLayout::Tsp {
            vertices: v,
            fix_first,
        },
        feasibility_threshold: separated.then_some(threshold),
        variable_names: names,
    })
}
