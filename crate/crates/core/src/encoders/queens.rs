use super::{check_lambda, forbid_padding, padded_dim, EncodeError, EncodedProblem, ProblemLayout, FEASIBILITY_TOLERANCE};
use crate::models::{Model, TQudoModel, VariableSpace};
use crate::problems::QueensInstance;

/// `x_i` is the column of the queen in row `i`. For rows `i < j` with
/// `k = j - i`, `lambda * (d[x_i, x_j] + d[x_i, x_j + k] + d[x_i, x_j - k])`.
pub fn encode_queens(inst: &QueensInstance, lambda: Option<f64>) -> Result<EncodedProblem, EncodeError> {
    inst.validate()?;
    let lambda = check_lambda(lambda.unwrap_or(1.0))?;
    let n = inst.n;
    let names: Vec<String> = (0..n).map(|r| format!("q[{r}]")).collect();
    let mut model = TQudoModel::new(VariableSpace::with_names(vec![padded_dim(n); n], names.clone())?);
    for i in 0..n {
        forbid_padding(&mut model, i, n, lambda)?;
        for j in i + 1..n {
            let k = j - i;
            for a in 0..n {
                for b in 0..n {
                    let hits = usize::from(a == b) + usize::from(a == b + k) + usize::from(a + k == b);
                    if hits > 0 {
                        model.add_entry(i, j, a, b, lambda * hits as f64)?;
                    }
                }
            }
        }
    }
    Ok(EncodedProblem {
        model: Model::TQudo(model),
        layout: ProblemLayout::Queens { n },
        feasibility_threshold: Some(FEASIBILITY_TOLERANCE),
        variable_names: names,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoders::testing::feasible;

    #[test]
    fn one_queen() {
        let enc = encode_queens(&QueensInstance::new(1).unwrap(), None).unwrap();
        assert_eq!(enc.model.cost(&[0]), 0.0);
        assert_eq!(feasible(&enc), vec![vec![0]]);
    }

    #[test]
    fn four_queens_has_two_solutions() {
        let enc = encode_queens(&QueensInstance::new(4).unwrap(), None).unwrap();
        assert_eq!(enc.model.dims(), vec![4; 4]);
        let mut sols = feasible(&enc);
        sols.sort();
        assert_eq!(sols, vec![vec![1, 3, 0, 2], vec![2, 0, 3, 1]]);
    }

    #[test]
    fn adjacent_diagonal_pays_lambda() {
        let enc = encode_queens(&QueensInstance::new(4).unwrap(), Some(3.0)).unwrap();
        for c in 0..4 {
            for d in 0..4 {
                assert!(enc.model.cost(&[0, 1, c, d]) >= 3.0);
            }
        }
    }
}
