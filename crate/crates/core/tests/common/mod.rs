#![allow(dead_code)]

use proptest::prelude::*;
use qudo_core::models::{HoboModel, QudoModel, TQudoModel, VariableSpace};

/// Every mixed-radix vector over `dims`, variable 0 slowest.
pub fn all_assignments(dims: &[usize]) -> Vec<Vec<usize>> {
    let total: usize = dims.iter().product();
    let mut out = Vec::with_capacity(total);
    let mut x = vec![0; dims.len()];
    for _ in 0..total {
        out.push(x.clone());
        for k in (0..dims.len()).rev() {
            x[k] += 1;
            if x[k] < dims[k] {
                break;
            }
            x[k] = 0;
        }
    }
    out
}

fn coef(integer: bool) -> BoxedStrategy<f64> {
    if integer {
        (-5i32..=5).prop_map(f64::from).boxed()
    } else {
        (-3.0f64..3.0).boxed()
    }
}

pub fn qudo_model(max_n: usize, max_d: usize, integer: bool) -> impl Strategy<Value = QudoModel> {
    prop::collection::vec(2..=max_d, 1..=max_n).prop_flat_map(move |dims| {
        let n = dims.len();
        let pairs = n * (n + 1) / 2;
        (
            Just(dims),
            prop::collection::vec(coef(integer), n),
            prop::collection::vec(coef(integer), pairs),
            coef(integer),
        )
            .prop_map(|(dims, lin, quad, offset)| {
                let n = dims.len();
                let mut m = QudoModel::new(VariableSpace::new(dims).unwrap());
                m.add_offset(offset);
                for (i, c) in lin.into_iter().enumerate() {
                    m.add_linear(i, c).unwrap();
                }
                let mut q = quad.into_iter();
                for i in 0..n {
                    for j in i..n {
                        m.add_quadratic(i, j, q.next().unwrap()).unwrap();
                    }
                }
                m
            })
    })
}

/// Dense random tensor model: every admissible entry drawn.
pub fn tqudo_model(max_n: usize, max_d: usize, integer: bool) -> impl Strategy<Value = TQudoModel> {
    prop::collection::vec(2..=max_d, 1..=max_n).prop_flat_map(move |dims| {
        let mut keys = Vec::new();
        for i in 0..dims.len() {
            for j in i..dims.len() {
                for a in 0..dims[i] {
                    for b in 0..dims[j] {
                        if i != j || a == b {
                            keys.push((i, j, a, b));
                        }
                    }
                }
            }
        }
        let n_keys = keys.len();
        (
            Just(dims),
            Just(keys),
            prop::collection::vec(coef(integer), n_keys),
            coef(integer),
        )
            .prop_map(|(dims, keys, vals, offset)| {
                let mut m = TQudoModel::new(VariableSpace::new(dims).unwrap());
                m.add_offset(offset);
                for ((i, j, a, b), v) in keys.into_iter().zip(vals) {
                    m.add_entry(i, j, a, b, v).unwrap();
                }
                m
            })
    })
}

/// Random polynomial over up to `max_n` bits with up to `max_terms` monomials
/// of order up to `max_order`.
pub fn hobo_model(max_n: usize, max_order: usize, max_terms: usize) -> impl Strategy<Value = HoboModel> {
    (1..=max_n).prop_flat_map(move |n| {
        let term = (prop::collection::vec(0..n, 0..=max_order), -4.0f64..4.0);
        (Just(n), prop::collection::vec(term, 0..=max_terms))
            .prop_map(|(n, terms)| HoboModel::from_terms(n, terms).unwrap())
    })
}
