use super::{check_lambda, EncodeError, EncodedProblem, ProblemLayout, FEASIBILITY_TOLERANCE};
use crate::models::{Model, QudoModel, VariableSpace};
use crate::penalty::count_eq;
use crate::problems::HashiInstance;

/// One variable per connectable pair with `max_edges + 1` values; squared
/// degree deviations plus `lambda_cross` per active crossing pair.
///
/// Connectivity of the bridge graph is not part of the model. Zero-cost
/// assignments satisfy degrees and non-crossing only; the validator decides
/// connectivity.
pub fn encode_hashi(inst: &HashiInstance, lambda_cross: Option<f64>) -> Result<EncodedProblem, EncodeError> {
    inst.validate()?;
    let lambda = check_lambda(lambda_cross.unwrap_or(1.0))?;
    let edges = inst.candidate_edges();
    for (i, node) in inst.nodes.iter().enumerate() {
        if !edges.iter().any(|&(a, b)| a == i || b == i) {
            return Err(EncodeError::Infeasible(format!(
                "node {i} at ({}, {}) needs {} bridges but has no visible neighbor",
                node.row, node.col, node.degree
            )));
        }
    }

    let names: Vec<String> = edges.iter().map(|(a, b)| format!("e[{a},{b}]")).collect();
    let space = VariableSpace::with_names(vec![inst.max_edges + 1; edges.len()], names.clone())?;
    let mut model = QudoModel::new(space.clone());
    for (i, node) in inst.nodes.iter().enumerate() {
        let incident: Vec<usize> = (0..edges.len())
            .filter(|&k| edges[k].0 == i || edges[k].1 == i)
            .collect();
        model.merge(&count_eq(&space, &incident, node.degree as f64, 1.0)?)?;
    }
    for k in 0..edges.len() {
        for l in k + 1..edges.len() {
            if inst.edges_cross(edges[k], edges[l]) {
                model.add_quadratic(k, l, lambda)?;
            }
        }
    }

    Ok(EncodedProblem {
        model: Model::Qudo(model),
        layout: ProblemLayout::Hashi { edges },
        feasibility_threshold: (lambda > FEASIBILITY_TOLERANCE).then_some(FEASIBILITY_TOLERANCE),
        variable_names: names,
    })
}
