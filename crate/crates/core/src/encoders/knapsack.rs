use serde::{Deserialize, Serialize};

use super::{check_lambda, EncodeError, EncodedProblem, ProblemLayout, FEASIBILITY_TOLERANCE};
use crate::models::{Model, VariableSpace};
use crate::penalty::weighted_leq;
use crate::problems::KnapsackInstance;
use crate::transforms::BoundedRadix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KnapsackVariant {
    /// One bit per available copy.
    QuboFlat,
    /// Base-2 digits per class; needs every count to be a power of two.
    QuboCondensed,
    /// One variable in `[0, c_i]` per class.
    Qudo,
    /// Base-`d` digits per class; needs every count to be a power of `d`.
    QudoDary,
}

fn is_power_of(value: u64, base: u64) -> bool {
    let mut v = value;
    while v % base == 0 && v > 1 {
        v /= base;
    }
    v == 1
}

/// `-sum_i v_i x_i + lambda * (Q - sum_i w_i x_i - slack)^2`.
///
/// QUBO variants use binary slack; QUDO variants use slack digits of
/// dimension `slack_base`, which is also the item digit base of
/// [`KnapsackVariant::QudoDary`]. `lambda` defaults to `1 + sum_i v_i c_i`.
pub fn encode_knapsack(
    inst: &KnapsackInstance,
    variant: KnapsackVariant,
    slack_base: usize,
    lambda: Option<f64>,
) -> Result<EncodedProblem, EncodeError> {
    inst.validate()?;
    let max_value: f64 = inst.values.iter().zip(&inst.counts).map(|(v, &c)| v * c as f64).sum();
    let lambda = check_lambda(lambda.unwrap_or(1.0 + max_value))?;
    if slack_base < 2 {
        return Err(EncodeError::Precondition(format!("slack base must be at least 2, got {slack_base}")));
    }
    let base = match variant {
        KnapsackVariant::QuboFlat | KnapsackVariant::QuboCondensed => 2,
        KnapsackVariant::Qudo | KnapsackVariant::QudoDary => slack_base,
    };

    // per class: digit dimensions and multipliers
    let mut class_digits: Vec<Vec<(usize, u64)>> = Vec::new();
    for (i, &c) in inst.counts.iter().enumerate() {
        let digits = match variant {
            KnapsackVariant::QuboFlat => vec![(2, 1); c as usize],
            KnapsackVariant::Qudo => vec![(c as usize + 1, 1)],
            KnapsackVariant::QuboCondensed | KnapsackVariant::QudoDary => {
                if !is_power_of(c, base as u64) {
                    return Err(EncodeError::Precondition(format!(
                        "count {c} of class {i} is not a power of {base}"
                    )));
                }
                let radix = BoundedRadix::bounded(c, base);
                radix.dims().iter().copied().zip(radix.coefficients().iter().copied()).collect()
            }
        };
        class_digits.push(digits);
    }

    let mut dims = Vec::new();
    let mut names = Vec::new();
    let mut vars = Vec::new();
    let mut weights = Vec::new();
    let mut classes = Vec::new();
    for (i, digits) in class_digits.iter().enumerate() {
        let mut layout = Vec::new();
        for (k, &(dim, mult)) in digits.iter().enumerate() {
            let var = dims.len();
            dims.push(dim);
            names.push(if digits.len() == 1 { format!("x[{i}]") } else { format!("x[{i},{k}]") });
            vars.push(var);
            weights.push((inst.weights[i] * mult) as i64);
            layout.push((var, mult));
        }
        classes.push(layout);
    }
    let space = VariableSpace::new(dims)?;
    let (mut model, slack) = weighted_leq(&space, &vars, &weights, inst.capacity, base, lambda)?;
    for k in 0..slack.len() {
        names.push(format!("s[{k}]"));
    }
    for (i, layout) in classes.iter().enumerate() {
        for &(var, mult) in layout {
            model.add_linear(var, -inst.values[i] * mult as f64)?;
        }
    }
    model.set_names(names.clone())?;

    // infeasible selections and wrong slack both pay at least `lambda`
    let threshold = (lambda - max_value > FEASIBILITY_TOLERANCE).then_some(FEASIBILITY_TOLERANCE);
    Ok(EncodedProblem {
        model: Model::Qudo(model),
        layout: ProblemLayout::Knapsack { classes },
        feasibility_threshold: threshold,
        variable_names: names,
    })
}
