//! Kakuro and Inshi no Heya: digit grids with sum and non-repetition rules.
//! Cells hold `x` in `[0, M - 1]` and mean the digit `x + 1`.

use std::collections::HashMap;

use super::{check_lambda, forbid_padding, padded_dim, EncodeError, EncodedProblem, ProblemLayout, FEASIBILITY_TOLERANCE};
use crate::models::{qudo_to_tqudo, Model, TQudoModel, VariableSpace};
use crate::penalty::count_eq;
use crate::problems::{Cell, InshiInstance, KakuroInstance, Portion};

/// `lambda * (sum (x + 1) - S)^2` over the cells of one group.
fn add_sum(
    model: &mut TQudoModel,
    space: &VariableSpace,
    vars: &[usize],
    sum: u64,
    lambda: f64,
) -> Result<(), EncodeError> {
    let target = sum as f64 - vars.len() as f64;
    let fragment = count_eq(space, vars, target, lambda)?;
    model.merge(&qudo_to_tqudo(&fragment))?;
    Ok(())
}

/// `lambda` whenever two cells of a group hold the same value.
fn add_distinct(model: &mut TQudoModel, vars: &[usize], dim: usize, lambda: f64) -> Result<(), EncodeError> {
    for (k, &i) in vars.iter().enumerate() {
        for &j in &vars[k + 1..] {
            for a in 0..dim {
                model.add_entry(i, j, a, a, lambda)?;
            }
        }
    }
    Ok(())
}

fn portion_vars(p: &Portion, index: &HashMap<Cell, usize>) -> Vec<usize> {
    p.cells.iter().map(|c| index[c]).collect()
}

/// One variable per white cell (row-major). Sum penalties for every row and
/// column portion, repetition penalties for every pair within a portion.
/// Both weights default to 1.
pub fn encode_kakuro(
    inst: &KakuroInstance,
    lambda_sum: Option<f64>,
    lambda_rep: Option<f64>,
) -> Result<EncodedProblem, EncodeError> {
    inst.validate()?;
    let lambda_sum = check_lambda(lambda_sum.unwrap_or(1.0))?;
    let lambda_rep = check_lambda(lambda_rep.unwrap_or(1.0))?;
    let m = inst.max_digit;
    for p in inst.portions() {
        let k = p.cells.len() as u64;
        let (lo, hi) = (k * (k + 1) / 2, k * m as u64 - k * (k.saturating_sub(1)) / 2);
        if p.sum < lo || p.sum > hi {
            return Err(EncodeError::Infeasible(format!(
                "{k} distinct digits up to {m} cannot sum to {}",
                p.sum
            )));
        }
    }

    let cells = inst.white_cells();
    let index: HashMap<Cell, usize> = cells.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let names: Vec<String> = cells.iter().map(|(r, c)| format!("v[{r},{c}]")).collect();
    let space = VariableSpace::with_names(vec![padded_dim(m); cells.len()], names.clone())?;
    let mut model = TQudoModel::new(space.clone());
    for var in 0..cells.len() {
        forbid_padding(&mut model, var, m, lambda_rep)?;
    }
    for p in inst.portions() {
        let vars = portion_vars(p, &index);
        add_sum(&mut model, &space, &vars, p.sum, lambda_sum)?;
        add_distinct(&mut model, &vars, m, lambda_rep)?;
    }
    Ok(EncodedProblem {
        model: Model::TQudo(model),
        layout: ProblemLayout::Kakuro { size: inst.size, cells },
        feasibility_threshold: Some(FEASIBILITY_TOLERANCE),
        variable_names: names,
    })
}

/// `N^2` variables, cell `(r, c)` at index `r * N + c`. Region sums plus
/// non-repetition along every row and column. Both weights default to 1.
pub fn encode_inshi(
    inst: &InshiInstance,
    lambda_sum: Option<f64>,
    lambda_rep: Option<f64>,
) -> Result<EncodedProblem, EncodeError> {
    inst.validate()?;
    let lambda_sum = check_lambda(lambda_sum.unwrap_or(1.0))?;
    let lambda_rep = check_lambda(lambda_rep.unwrap_or(1.0))?;
    let n = inst.size;
    for region in &inst.regions {
        let k = region.cells.len() as u64;
        if region.sum < k || region.sum > k * n as u64 {
            return Err(EncodeError::Infeasible(format!(
                "{k} values in [1, {n}] cannot sum to {}",
                region.sum
            )));
        }
    }

    let names: Vec<String> = (0..n * n).map(|k| format!("v[{},{}]", k / n, k % n)).collect();
    let space = VariableSpace::with_names(vec![padded_dim(n); n * n], names.clone())?;
    let mut model = TQudoModel::new(space.clone());
    for var in 0..n * n {
        forbid_padding(&mut model, var, n, lambda_rep)?;
    }
    for region in &inst.regions {
        let vars: Vec<usize> = region.cells.iter().map(|&(r, c)| r * n + c).collect();
        add_sum(&mut model, &space, &vars, region.sum, lambda_sum)?;
    }
    for k in 0..n {
        let row: Vec<usize> = (0..n).map(|c| k * n + c).collect();
        let col: Vec<usize> = (0..n).map(|r| r * n + k).collect();
        add_distinct(&mut model, &row, n, lambda_rep)?;
        add_distinct(&mut model, &col, n, lambda_rep)?;
    }
    Ok(EncodedProblem {
        model: Model::TQudo(model),
        layout: ProblemLayout::Inshi { size: n },
        feasibility_threshold: Some(FEASIBILITY_TOLERANCE),
        variable_names: names,
    })
}
