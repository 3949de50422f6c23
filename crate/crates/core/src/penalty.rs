//! Constraint-to-penalty builders.
//!
//! Every builder returns a model fragment over the caller's variable space
//! (extended with slack variables where needed). Fragments are zero exactly
//! on satisfying assignments and at least `lambda` on violations, so they can
//! be merged into a larger objective.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::models::{ModelError, QudoModel, TQudoModel, VariableSpace};
use crate::transforms::BoundedRadix;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PenaltyError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("penalty weight must be positive, got {0}")]
    NonPositiveLambda(f64),
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("slack base must be at least 2, got {0}")]
    SlackBase(usize),
    #[error("target {target} exceeds the {available} constrained variables")]
    TargetTooLarge { target: usize, available: usize },
    #[error("variable {0} is listed more than once")]
    DuplicateVariable(usize),
    #[error("pair constraints need two distinct variables, got {0} twice")]
    SameVariable(usize),
    #[error("binary pair constraint needs values in {{0, 1}}, got ({a}, {b})")]
    NonBinaryValues { a: usize, b: usize },
    #[error("binary pair constraint on variables of dimension {0} and {1}")]
    NonBinaryVariables(usize, usize),
}

fn check_lambda(lambda: f64) -> Result<(), PenaltyError> {
    if lambda > 0.0 {
        Ok(())
    } else {
        Err(PenaltyError::NonPositiveLambda(lambda))
    }
}

/// Discrete Heaviside: `H(0) = 0`, `H(v) = 1` for `v >= 1`.
pub fn heaviside(v: usize) -> f64 {
    if v == 0 {
        0.0
    } else {
        1.0
    }
}

/// `lambda * (target - sum_i weights_i x_i)^2`, expanded. Repeated
/// variables have their weights summed.
pub fn weighted_count_eq(
    space: &VariableSpace,
    vars: &[usize],
    weights: &[f64],
    target: f64,
    lambda: f64,
) -> Result<QudoModel, PenaltyError> {
    check_lambda(lambda)?;
    if weights.len() != vars.len() {
        return Err(PenaltyError::WeightCount {
            expected: vars.len(),
            got: weights.len(),
        });
    }
    let mut merged: Vec<(usize, f64)> = Vec::new();
    for (&v, &w) in vars.iter().zip(weights) {
        space.check_index(v)?;
        match merged.iter_mut().find(|(u, _)| *u == v) {
            Some((_, acc)) => *acc += w,
            None => merged.push((v, w)),
        }
    }
    let mut model = QudoModel::new(space.clone());
    add_squared_affine(&mut model, &merged, target, lambda)?;
    Ok(model)
}

/// Adds `lambda * (target - sum_k w_k x_k)^2` into `model`. Variables in
/// `terms` must be distinct.
fn add_squared_affine(
    model: &mut QudoModel,
    terms: &[(usize, f64)],
    target: f64,
    lambda: f64,
) -> Result<(), ModelError> {
    model.add_offset(lambda * target * target);
    for (k, &(i, wi)) in terms.iter().enumerate() {
        model.add_linear(i, -2.0 * lambda * target * wi)?;
        model.add_quadratic(i, i, lambda * wi * wi)?;
        for &(j, wj) in &terms[k + 1..] {
            model.add_quadratic(i, j, 2.0 * lambda * wi * wj)?;
        }
    }
    Ok(())
}

/// `lambda * (target - sum_{i in vars} x_i)^2`.
pub fn count_eq(
    space: &VariableSpace,
    vars: &[usize],
    target: f64,
    lambda: f64,
) -> Result<QudoModel, PenaltyError> {
    weighted_count_eq(space, vars, &vec![1.0; vars.len()], target, lambda)
}

/// Slack variables appended by [`weighted_leq`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SlackVariables {
    pub first_index: usize,
    pub radix: BoundedRadix,
}

impl SlackVariables {
    pub fn len(&self) -> usize {
        self.radix.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radix.is_empty()
    }

    pub fn indices(&self) -> std::ops::Range<usize> {
        self.first_index..self.first_index + self.radix.len()
    }

    /// Total slack value represented by `values` (full assignment).
    pub fn value(&self, values: &[usize]) -> u64 {
        self.radix.decode(&values[self.indices()])
    }
}

/// `sum_i a_i x_i <= bound` as
/// `lambda * (bound - sum_i a_i x_i - sum_j c_j s_j)^2` with slack digits of
/// dimension at most `slack_base` whose weighted sum ranges exactly over
/// `[0, bound]`.
///
/// The returned model lives on `space` extended by the slack variables.
pub fn weighted_leq(
    space: &VariableSpace,
    vars: &[usize],
    weights: &[i64],
    bound: u64,
    slack_base: usize,
    lambda: f64,
) -> Result<(QudoModel, SlackVariables), PenaltyError> {
    check_lambda(lambda)?;
    if slack_base < 2 {
        return Err(PenaltyError::SlackBase(slack_base));
    }
    if weights.len() != vars.len() {
        return Err(PenaltyError::WeightCount {
            expected: vars.len(),
            got: weights.len(),
        });
    }
    let radix = BoundedRadix::bounded(bound, slack_base);
    let mut extended = space.clone();
    extended.extend(radix.dims())?;
    let slack = SlackVariables {
        first_index: space.len(),
        radix,
    };
    let mut all_vars = vars.to_vec();
    let mut all_weights: Vec<f64> = weights.iter().map(|&w| w as f64).collect();
    for (k, &c) in slack.radix.coefficients().iter().enumerate() {
        all_vars.push(slack.first_index + k);
        all_weights.push(c as f64);
    }
    let model = weighted_count_eq(&extended, &all_vars, &all_weights, bound as f64, lambda)?;
    Ok((model, slack))
}

/// T-QUDO expansion of `lambda * (target - sum_{i in vars} H(x_i))^2`.
pub fn nonzero_count_eq(
    space: &VariableSpace,
    vars: &[usize],
    target: usize,
    lambda: f64,
) -> Result<TQudoModel, PenaltyError> {
    check_lambda(lambda)?;
    if target > vars.len() {
        return Err(PenaltyError::TargetTooLarge {
            target,
            available: vars.len(),
        });
    }
    for (k, &v) in vars.iter().enumerate() {
        space.check_index(v)?;
        if vars[..k].contains(&v) {
            return Err(PenaltyError::DuplicateVariable(v));
        }
    }
    let n = target as f64;
    let mut model = TQudoModel::new(space.clone());
    model.add_offset(lambda * n * n);
    for (k, &i) in vars.iter().enumerate() {
        for a in 1..space.dim(i) {
            let h = heaviside(a);
            model.add_diagonal(i, a, lambda * (h * h - 2.0 * n * h))?;
        }
        for &j in &vars[k + 1..] {
            for a in 1..space.dim(i) {
                for b in 1..space.dim(j) {
                    model.add_entry(i, j, a, b, 2.0 * lambda * heaviside(a) * heaviside(b))?;
                }
            }
        }
    }
    Ok(model)
}

fn check_pair(space: &VariableSpace, i: usize, j: usize, a: usize, b: usize) -> Result<(), PenaltyError> {
    space.check_value(i, a)?;
    space.check_value(j, b)?;
    if i == j {
        return Err(PenaltyError::SameVariable(i));
    }
    Ok(())
}

/// Shared body of the pair builders: `lambda` on every `(va, vb)` accepted by
/// the predicate.
fn pair_fragment(
    space: &VariableSpace,
    i: usize,
    j: usize,
    a: usize,
    b: usize,
    lambda: f64,
    hit: impl Fn(bool, bool) -> bool,
) -> Result<TQudoModel, PenaltyError> {
    check_lambda(lambda)?;
    check_pair(space, i, j, a, b)?;
    let mut model = TQudoModel::new(space.clone());
    for va in 0..space.dim(i) {
        for vb in 0..space.dim(j) {
            if hit(va == a, vb == b) {
                model.add_entry(i, j, va, vb, lambda)?;
            }
        }
    }
    Ok(model)
}

/// Penalizes `x_i == a && x_j == b`.
pub fn non_coincidence(
    space: &VariableSpace,
    i: usize,
    j: usize,
    a: usize,
    b: usize,
    lambda: f64,
) -> Result<TQudoModel, PenaltyError> {
    pair_fragment(space, i, j, a, b, lambda, |ia, jb| ia && jb)
}

/// Penalizes `x_i != a && x_j != b`.
pub fn non_equality(
    space: &VariableSpace,
    i: usize,
    j: usize,
    a: usize,
    b: usize,
    lambda: f64,
) -> Result<TQudoModel, PenaltyError> {
    pair_fragment(space, i, j, a, b, lambda, |ia, jb| !ia && !jb)
}

/// Penalizes violations of `x_i == a => x_j == b`.
pub fn implication(
    space: &VariableSpace,
    i: usize,
    j: usize,
    a: usize,
    b: usize,
    lambda: f64,
) -> Result<TQudoModel, PenaltyError> {
    pair_fragment(space, i, j, a, b, lambda, |ia, jb| ia && !jb)
}

/// Penalizes violations of `x_i != a => x_j != b`.
pub fn anti_implication(
    space: &VariableSpace,
    i: usize,
    j: usize,
    a: usize,
    b: usize,
    lambda: f64,
) -> Result<TQudoModel, PenaltyError> {
    pair_fragment(space, i, j, a, b, lambda, |ia, jb| !ia && jb)
}

/// Pair constraint kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum PairKind {
    NonCoincidence,
    NonEquality,
    Implication,
    AntiImplication,
}

impl PairKind {
    pub const ALL: [PairKind; 4] = [
        PairKind::NonCoincidence,
        PairKind::NonEquality,
        PairKind::Implication,
        PairKind::AntiImplication,
    ];

    /// Whether `(x_i, x_j)` violates the constraint.
    pub fn violated(self, xi: usize, xj: usize, a: usize, b: usize) -> bool {
        let (ia, jb) = (xi == a, xj == b);
        match self {
            PairKind::NonCoincidence => ia && jb,
            PairKind::NonEquality => !ia && !jb,
            PairKind::Implication => ia && !jb,
            PairKind::AntiImplication => !ia && jb,
        }
    }

    pub fn tqudo(
        self,
        space: &VariableSpace,
        i: usize,
        j: usize,
        a: usize,
        b: usize,
        lambda: f64,
    ) -> Result<TQudoModel, PenaltyError> {
        match self {
            PairKind::NonCoincidence => non_coincidence(space, i, j, a, b, lambda),
            PairKind::NonEquality => non_equality(space, i, j, a, b, lambda),
            PairKind::Implication => implication(space, i, j, a, b, lambda),
            PairKind::AntiImplication => anti_implication(space, i, j, a, b, lambda),
        }
    }
}

/// `1 - (-1)^a (x - a)`: equals `[x == a]` on binary `x`, as `(const, slope)`.
fn equals_factor(a: usize) -> (f64, f64) {
    if a == 0 {
        (1.0, -1.0)
    } else {
        (0.0, 1.0)
    }
}

/// `(-1)^a (x - a)`: equals `[x != a]` on binary `x`, as `(const, slope)`.
fn differs_factor(a: usize) -> (f64, f64) {
    if a == 0 {
        (0.0, 1.0)
    } else {
        (1.0, -1.0)
    }
}

/// Quadratic binary-variable pair penalties built from products of the affine
/// factors `1 - (-1)^a (x - a)` and `(-1)^a (x - a)`.
pub fn qubo_pair(
    kind: PairKind,
    space: &VariableSpace,
    i: usize,
    j: usize,
    a: usize,
    b: usize,
    lambda: f64,
) -> Result<QudoModel, PenaltyError> {
    check_lambda(lambda)?;
    if a > 1 || b > 1 {
        return Err(PenaltyError::NonBinaryValues { a, b });
    }
    space.check_index(i)?;
    space.check_index(j)?;
    if space.dim(i) != 2 || space.dim(j) != 2 {
        return Err(PenaltyError::NonBinaryVariables(space.dim(i), space.dim(j)));
    }
    if i == j {
        return Err(PenaltyError::SameVariable(i));
    }
    let ((c0, c1), (d0, d1)) = match kind {
        PairKind::NonCoincidence => (equals_factor(a), equals_factor(b)),
        PairKind::NonEquality => (differs_factor(a), differs_factor(b)),
        PairKind::Implication => (equals_factor(a), differs_factor(b)),
        PairKind::AntiImplication => (differs_factor(a), equals_factor(b)),
    };
    // lambda * (c0 + c1 x_i) (d0 + d1 x_j)
    let mut model = QudoModel::new(space.clone());
    model.add_offset(lambda * c0 * d0);
    model.add_linear(i, lambda * c1 * d0)?;
    model.add_linear(j, lambda * c0 * d1)?;
    model.add_quadratic(i, j, lambda * c1 * d1)?;
    Ok(model)
}

/// A constraint description that can be compiled into a penalty fragment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum ConstraintSpec {
    CountEq {
        vars: Vec<usize>,
        target: f64,
        lambda: f64,
    },
    WeightedCountEq {
        vars: Vec<usize>,
        weights: Vec<f64>,
        target: f64,
        lambda: f64,
    },
    CountLeq {
        vars: Vec<usize>,
        weights: Vec<i64>,
        bound: u64,
        slack_base: usize,
        lambda: f64,
    },
    NonzeroCountEq {
        vars: Vec<usize>,
        target: usize,
        lambda: f64,
    },
    Pair {
        pair: PairKind,
        i: usize,
        j: usize,
        a: usize,
        b: usize,
        lambda: f64,
    },
}

/// Output of [`ConstraintSpec::build`].
#[derive(Debug, Clone, PartialEq)]
pub enum Fragment {
    Qudo(QudoModel),
    QudoWithSlack(QudoModel, SlackVariables),
    TQudo(TQudoModel),
}

impl ConstraintSpec {
    pub fn lambda(&self) -> f64 {
        match self {
            ConstraintSpec::CountEq { lambda, .. }
            | ConstraintSpec::WeightedCountEq { lambda, .. }
            | ConstraintSpec::CountLeq { lambda, .. }
            | ConstraintSpec::NonzeroCountEq { lambda, .. }
            | ConstraintSpec::Pair { lambda, .. } => *lambda,
        }
    }

    pub fn build(&self, space: &VariableSpace) -> Result<Fragment, PenaltyError> {
        Ok(match self {
            ConstraintSpec::CountEq {
                vars,
                target,
                lambda,
            } => Fragment::Qudo(count_eq(space, vars, *target, *lambda)?),
            ConstraintSpec::WeightedCountEq {
                vars,
                weights,
                target,
                lambda,
            } => Fragment::Qudo(weighted_count_eq(space, vars, weights, *target, *lambda)?),
            ConstraintSpec::CountLeq {
                vars,
                weights,
                bound,
                slack_base,
                lambda,
            } => {
                let (m, s) = weighted_leq(space, vars, weights, *bound, *slack_base, *lambda)?;
                Fragment::QudoWithSlack(m, s)
            }
            ConstraintSpec::NonzeroCountEq {
                vars,
                target,
                lambda,
            } => Fragment::TQudo(nonzero_count_eq(space, vars, *target, *lambda)?),
            ConstraintSpec::Pair {
                pair,
                i,
                j,
                a,
                b,
                lambda,
            } => Fragment::TQudo(pair.tqudo(space, *i, *j, *a, *b, *lambda)?),
        })
    }
}
