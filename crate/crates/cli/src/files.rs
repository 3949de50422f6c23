//! JSON documents read and written by the CLI.

use serde::{Deserialize, Serialize};

use qudo_core::encoders::{
    encode_hashi, encode_inshi, encode_kakuro, encode_knapsack, encode_peg, encode_queens, encode_tsp,
    EncodedProblem, KnapsackVariant, ProblemLayout, TspPenalty,
};
use qudo_core::models::{Formalism, HoboModel, Model, QudoModel, TQudoModel, VariableSpace};
use qudo_core::problems::{
    DomainSolution, HashiInstance, InshiInstance, KakuroInstance, KnapsackInstance, PegInstance, ProblemInstance,
    ProblemKind, QueensInstance, TspInstance,
};
use qudo_core::solvers::SolveResult;
use qudo_core::transforms::{decode_assignment, BinaryEncoding};

use crate::CliError;

/// One cost term. QUBO/QUDO: `[i]` is linear, `[i, j]` quadratic with
/// `i <= j`. T-QUDO: `[i, j]` with `values: [a, b]`. HOBO: a monomial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Term {
    pub indices: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<usize>>,
    pub coefficient: f64,
}

/// Everything needed to turn a model assignment back into a domain solution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Layout {
    pub decoder: ProblemLayout,
    /// Binarizations applied after encoding, oldest first.
    #[serde(default)]
    pub encodings: Vec<BinaryEncoding>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub feasibility_threshold: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ModelFile {
    pub formalism: Formalism,
    pub dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    #[serde(default)]
    pub offset: f64,
    pub terms: Vec<Term>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layout: Option<Layout>,
}

fn schema(msg: impl Into<String>) -> CliError {
    CliError::Schema(msg.into())
}

impl ModelFile {
    pub fn from_model(model: &Model, layout: Option<Layout>) -> Self {
        let mut terms = Vec::new();
        let offset = match model {
            Model::Qudo(m) => {
                for (i, &d) in m.linear().iter().enumerate() {
                    if d != 0.0 {
                        terms.push(Term {
                            indices: vec![i],
                            values: None,
                            coefficient: d,
                        });
                    }
                }
                for (i, j, q) in m.quadratic_terms() {
                    terms.push(Term {
                        indices: vec![i, j],
                        values: None,
                        coefficient: q,
                    });
                }
                m.offset()
            }
            Model::TQudo(m) => {
                for ((i, j, a, b), v) in m.entries() {
                    terms.push(Term {
                        indices: vec![i, j],
                        values: Some(vec![a, b]),
                        coefficient: v,
                    });
                }
                m.offset()
            }
            Model::Hobo(m) => {
                for (key, c) in m.terms() {
                    if !key.is_empty() {
                        terms.push(Term {
                            indices: key.to_vec(),
                            values: None,
                            coefficient: c,
                        });
                    }
                }
                m.constant()
            }
        };
        ModelFile {
            formalism: model.formalism(),
            dims: model.dims(),
            names: model.names().map(<[String]>::to_vec),
            offset,
            terms,
            layout,
        }
    }

    pub fn to_model(&self) -> Result<Model, CliError> {
        let space = || -> Result<VariableSpace, CliError> {
            let space = match &self.names {
                Some(n) => VariableSpace::with_names(self.dims.clone(), n.clone()),
                None => VariableSpace::new(self.dims.clone()),
            };
            space.map_err(|e| schema(e.to_string()))
        };
        let bad_term = |k: usize, msg: &str| schema(format!("term {k}: {msg}"));
        let model = match self.formalism {
            Formalism::Qubo | Formalism::Qudo => {
                if self.formalism == Formalism::Qubo && self.dims.iter().any(|&d| d != 2) {
                    return Err(schema("qubo models need every dimension to be 2"));
                }
                let mut m = QudoModel::new(space()?);
                m.add_offset(self.offset);
                for (k, t) in self.terms.iter().enumerate() {
                    if t.values.is_some() {
                        return Err(bad_term(k, "values are only allowed in tqudo models"));
                    }
                    let r = match t.indices[..] {
                        [i] => m.add_linear(i, t.coefficient),
                        [i, j] => m.add_quadratic(i, j, t.coefficient),
                        _ => return Err(bad_term(k, "needs one or two indices")),
                    };
                    r.map_err(|e| bad_term(k, &e.to_string()))?;
                }
                Model::Qudo(m)
            }
            Formalism::Tqudo => {
                let mut m = TQudoModel::new(space()?);
                m.add_offset(self.offset);
                for (k, t) in self.terms.iter().enumerate() {
                    let (&[i, j], Some(&[a, b])) = (&t.indices[..], t.values.as_deref()) else {
                        return Err(bad_term(k, "needs two indices and two values"));
                    };
                    m.add_entry(i, j, a, b, t.coefficient)
                        .map_err(|e| bad_term(k, &e.to_string()))?;
                }
                Model::TQudo(m)
            }
            Formalism::Hobo => {
                if self.dims.iter().any(|&d| d != 2) {
                    return Err(schema("hobo models need every dimension to be 2"));
                }
                if self.names.is_some() {
                    return Err(schema("hobo models carry no variable names"));
                }
                let mut m = HoboModel::new(self.dims.len());
                if self.offset != 0.0 {
                    m.add_term(&[], self.offset).map_err(|e| schema(e.to_string()))?;
                }
                for (k, t) in self.terms.iter().enumerate() {
                    if t.values.is_some() {
                        return Err(bad_term(k, "values are only allowed in tqudo models"));
                    }
                    m.add_term(&t.indices, t.coefficient)
                        .map_err(|e| bad_term(k, &e.to_string()))?;
                }
                Model::Hobo(m)
            }
        };
        Ok(model)
    }

    pub fn read(path: &std::path::Path) -> Result<Self, CliError> {
        read_json(path)
    }
}

/// Reads source values back through every recorded binarization.
pub fn unwind_encodings(encodings: &[BinaryEncoding], values: &[usize]) -> Result<Vec<usize>, String> {
    let mut values = values.to_vec();
    for enc in encodings.iter().rev() {
        let dec = decode_assignment(enc, &values.into()).map_err(|e| e.to_string())?;
        if !dec.is_feasible() {
            return Err(format!("bits decode outside the domain of variables {:?}", dec.infeasible));
        }
        values = dec.values;
    }
    Ok(values)
}

impl Layout {
    /// Domain solution for a model assignment, or why there is none.
    pub fn decode(&self, values: &[usize]) -> Result<(Vec<usize>, DomainSolution), String> {
        let source = unwind_encodings(&self.encodings, values)?;
        let sol = self.decoder.decode(&source).map_err(|e| e.to_string())?;
        Ok((source, sol))
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| schema(format!("{}: {e}", path.display())))
}

pub fn write_json<T: Serialize>(path: &std::path::Path, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    std::fs::write(path, text + "\n").map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Lambdas {
    /// Main constraint weight: knapsack capacity, TSP permutation, queens.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub penalty: Option<f64>,
    /// Hashi crossing weight.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross: Option<f64>,
    /// Kakuro / inshi sum weight.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sum: Option<f64>,
    /// Kakuro / inshi repetition weight.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rep: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct EncodingOptions {
    /// Knapsack: `qubo_flat`, `qubo_condensed`, `qudo`, `qudo_dary`.
    /// TSP: `pairwise_delta`, `prime_log`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    #[serde(default)]
    pub lambdas: Lambdas,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slack_base: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fix_first: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct InstanceFile {
    pub problem: ProblemKind,
    pub params: serde_json::Value,
    #[serde(default)]
    pub encoding: EncodingOptions,
}

fn params<T: serde::de::DeserializeOwned>(kind: ProblemKind, value: &serde_json::Value) -> Result<T, CliError> {
    T::deserialize(value).map_err(|e| schema(format!("{kind} params: {e}")))
}

fn parse_variant<T: serde::de::DeserializeOwned>(name: &str) -> Result<T, CliError> {
    T::deserialize(serde_json::Value::String(name.to_string()))
        .map_err(|e| schema(format!("encoding variant: {e}")))
}

impl InstanceFile {
    pub fn read(path: &std::path::Path) -> Result<Self, CliError> {
        read_json(path)
    }

    pub fn instance(&self) -> Result<ProblemInstance, CliError> {
        let k = self.problem;
        let p = &self.params;
        let inst = match k {
            ProblemKind::Knapsack => ProblemInstance::Knapsack(params::<KnapsackInstance>(k, p)?),
            ProblemKind::Hashi => ProblemInstance::Hashi(params::<HashiInstance>(k, p)?),
            ProblemKind::Tsp => ProblemInstance::Tsp(params::<TspInstance>(k, p)?),
            ProblemKind::Queens => ProblemInstance::Queens(params::<QueensInstance>(k, p)?),
            ProblemKind::Kakuro => ProblemInstance::Kakuro(params::<KakuroInstance>(k, p)?),
            ProblemKind::Inshi => ProblemInstance::Inshi(params::<InshiInstance>(k, p)?),
            ProblemKind::Peg => ProblemInstance::Peg(params::<PegInstance>(k, p)?),
        };
        inst.validate().map_err(|e| schema(e.to_string()))?;
        Ok(inst)
    }

    /// Rejects encoding options the chosen problem does not use.
    fn check_options(&self) -> Result<(), CliError> {
        let o = &self.encoding;
        let l = &o.lambdas;
        let allowed: (bool, bool, bool, bool, bool, bool, bool) = match self.problem {
            // variant, penalty, cross, sum, rep, slackBase, fixFirst
            ProblemKind::Knapsack => (true, true, false, false, false, true, false),
            ProblemKind::Hashi => (false, false, true, false, false, false, false),
            ProblemKind::Tsp => (true, true, false, false, false, false, true),
            ProblemKind::Queens => (false, true, false, false, false, false, false),
            ProblemKind::Kakuro | ProblemKind::Inshi => (false, false, false, true, true, false, false),
            ProblemKind::Peg => (false, false, false, false, false, false, false),
        };
        let given = [
            ("variant", o.variant.is_some(), allowed.0),
            ("lambdas.penalty", l.penalty.is_some(), allowed.1),
            ("lambdas.cross", l.cross.is_some(), allowed.2),
            ("lambdas.sum", l.sum.is_some(), allowed.3),
            ("lambdas.rep", l.rep.is_some(), allowed.4),
            ("slackBase", o.slack_base.is_some(), allowed.5),
            ("fixFirst", o.fix_first.is_some(), allowed.6),
        ];
        for (name, set, ok) in given {
            if set && !ok {
                return Err(schema(format!("encoding option {name} does not apply to {}", self.problem)));
            }
        }
        Ok(())
    }

    pub fn encode(&self) -> Result<EncodedProblem, CliError> {
        self.check_options()?;
        let o = &self.encoding;
        let l = &o.lambdas;
        let enc = match self.instance()? {
            ProblemInstance::Knapsack(i) => {
                let variant = match &o.variant {
                    Some(v) => parse_variant(v)?,
                    None => KnapsackVariant::Qudo,
                };
                encode_knapsack(&i, variant, o.slack_base.unwrap_or(2), l.penalty)
            }
            ProblemInstance::Hashi(i) => encode_hashi(&i, l.cross),
            ProblemInstance::Tsp(i) => {
                let penalty = match &o.variant {
                    Some(v) => parse_variant(v)?,
                    None => TspPenalty::PairwiseDelta,
                };
                encode_tsp(&i, penalty, l.penalty, o.fix_first.unwrap_or(false))
            }
            ProblemInstance::Queens(i) => encode_queens(&i, l.penalty),
            ProblemInstance::Kakuro(i) => encode_kakuro(&i, l.sum, l.rep),
            ProblemInstance::Inshi(i) => encode_inshi(&i, l.sum, l.rep),
            ProblemInstance::Peg(i) => encode_peg(&i),
        };
        enc.map_err(|e| CliError::Encode(e.to_string()))
    }
}

/// What `solve` writes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SolveOutput {
    pub method: String,
    pub result: SolveResult,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_values: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solution: Option<DomainSolution>,
    /// Whether the cost is within the feasibility threshold.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub feasible: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decode_error: Option<String>,
}

/// A bare domain solution, or the `solution` field of a solve output.
pub fn read_solution(path: &std::path::Path) -> Result<DomainSolution, CliError> {
    let value: serde_json::Value = read_json(path)?;
    let target = match value.get("solution") {
        Some(s) => s.clone(),
        None if value.get("result").is_some() => {
            return Err(schema(format!("{}: solve output has no decoded solution", path.display())))
        }
        None => value,
    };
    serde_json::from_value(target).map_err(|e| schema(format!("{}: {e}", path.display())))
}
