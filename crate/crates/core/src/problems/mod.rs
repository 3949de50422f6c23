//! Problem instances and their domain solutions.
//!
//! These types are shared by the encoders and by the rule validators. They
//! carry no cost-function logic; geometry that both sides need (Hashi edge
//! visibility and crossings, the Peg Solitaire variable layout) lives here so
//! the two sides agree on it without depending on each other.

mod hashi;
mod peg;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use hashi::{HashiEdge, HashiInstance, HashiNode, HashiSolution};
pub use peg::{DirectionCode, PegAction, PegInstance, PegLayout, PegMove, PegSolution, XSlot};

pub type Cell = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProblemError {
    #[error("invalid {problem} instance: {reason}")]
    InvalidInstance {
        problem: &'static str,
        reason: String,
    },
}

pub(crate) fn invalid(problem: &'static str, reason: impl Into<String>) -> ProblemError {
    ProblemError::InvalidInstance {
        problem,
        reason: reason.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct KnapsackInstance {
    pub values: Vec<f64>,
    pub weights: Vec<u64>,
    pub counts: Vec<u64>,
    pub capacity: u64,
}

impl KnapsackInstance {
    pub fn new(values: Vec<f64>, weights: Vec<u64>, counts: Vec<u64>, capacity: u64) -> Result<Self, ProblemError> {
        let inst = Self {
            values,
            weights,
            counts,
            capacity,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn num_classes(&self) -> usize {
        self.values.len()
    }

    pub fn validate(&self) -> Result<(), ProblemError> {
        let n = self.values.len();
        if self.weights.len() != n || self.counts.len() != n {
            return Err(invalid(
                "knapsack",
                format!(
                    "values, weights and counts differ in length ({n}, {}, {})",
                    self.weights.len(),
                    self.counts.len()
                ),
            ));
        }
        if let Some(v) = self.values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(invalid("knapsack", format!("item value {v} is not a positive real")));
        }
        if self.weights.contains(&0) {
            return Err(invalid("knapsack", "item weights must be positive"));
        }
        if self.counts.contains(&0) {
            return Err(invalid("knapsack", "item counts must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct KnapsackSolution {
    pub counts: Vec<u64>,
}

/// Travelling salesman instance. Either a static cost matrix `costs[i][j]` or
/// per-step matrices `timeCosts[t][i][j]`; `null` marks a missing edge.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct TspInstance {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub costs: Option<Vec<Vec<Option<f64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time_costs: Option<Vec<Vec<Vec<Option<f64>>>>>,
    /// Cost used for missing edges; defaults to `1 + sum |present costs|`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub missing_edge_cost: Option<f64>,
}

impl TspInstance {
    pub fn from_matrix(costs: Vec<Vec<f64>>) -> Result<Self, ProblemError> {
        let inst = Self {
            costs: Some(costs.into_iter().map(|r| r.into_iter().map(Some).collect()).collect()),
            time_costs: None,
            missing_edge_cost: None,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn from_time_matrices(costs: Vec<Vec<Vec<f64>>>) -> Result<Self, ProblemError> {
        let inst = Self {
            costs: None,
            time_costs: Some(
                costs
                    .into_iter()
                    .map(|m| m.into_iter().map(|r| r.into_iter().map(Some).collect()).collect())
                    .collect(),
            ),
            missing_edge_cost: None,
        };
        inst.validate()?;
        Ok(inst)
    }

    fn matrices(&self) -> Vec<&Vec<Vec<Option<f64>>>> {
        match (&self.costs, &self.time_costs) {
            (Some(m), _) => vec![m],
            (None, Some(ms)) => ms.iter().collect(),
            (None, None) => Vec::new(),
        }
    }

    pub fn vertices(&self) -> usize {
        self.matrices().first().map(|m| m.len()).unwrap_or(0)
    }

    pub fn is_time_dependent(&self) -> bool {
        self.costs.is_none()
    }

    pub fn validate(&self) -> Result<(), ProblemError> {
        if self.costs.is_some() == self.time_costs.is_some() {
            return Err(invalid("tsp", "exactly one of `costs` and `timeCosts` must be given"));
        }
        let v = self.vertices();
        if v < 2 {
            return Err(invalid("tsp", format!("need at least 2 vertices, got {v}")));
        }
        let mats = self.matrices();
        if self.time_costs.is_some() && mats.len() != v {
            return Err(invalid(
                "tsp",
                format!("time-dependent costs need {v} matrices, got {}", mats.len()),
            ));
        }
        for m in mats {
            if m.len() != v || m.iter().any(|r| r.len() != v) {
                return Err(invalid("tsp", "cost matrices must be square and equally sized"));
            }
            if m.iter().flatten().flatten().any(|c| !c.is_finite()) {
                return Err(invalid("tsp", "costs must be finite"));
            }
        }
        if let Some(c) = self.missing_edge_cost {
            if !c.is_finite() {
                return Err(invalid("tsp", "missing edge cost must be finite"));
            }
        }
        Ok(())
    }

    /// Fully resolved `E[t][i][j]`, one matrix per step (`V` matrices).
    pub fn resolved_costs(&self) -> Vec<Vec<Vec<f64>>> {
        let mats = self.matrices();
        let present: f64 = mats
            .iter()
            .flat_map(|m| m.iter().flatten().flatten())
            .map(|c| c.abs())
            .sum();
        let missing = self.missing_edge_cost.unwrap_or(1.0 + present);
        let resolve = |m: &Vec<Vec<Option<f64>>>| -> Vec<Vec<f64>> {
            m.iter()
                .map(|r| r.iter().map(|c| c.unwrap_or(missing)).collect())
                .collect()
        };
        let v = self.vertices();
        if mats.len() == 1 {
            vec![resolve(mats[0]); v]
        } else {
            mats.into_iter().map(resolve).collect()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct TspSolution {
    pub tour: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct QueensInstance {
    pub n: usize,
}

impl QueensInstance {
    pub fn new(n: usize) -> Result<Self, ProblemError> {
        let inst = Self { n };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<(), ProblemError> {
        if self.n == 0 {
            return Err(invalid("queens", "board size must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct QueensSolution {
    pub columns: Vec<usize>,
}

/// A group of cells with a required sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Portion {
    pub cells: Vec<Cell>,
    pub sum: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct KakuroInstance {
    pub size: usize,
    pub max_digit: usize,
    /// White cells; defaults to the union of all portion cells.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub white: Option<Vec<Cell>>,
    #[serde(default)]
    pub rows: Vec<Portion>,
    #[serde(default)]
    pub cols: Vec<Portion>,
}

impl KakuroInstance {
    /// White cells in row-major order.
    pub fn white_cells(&self) -> Vec<Cell> {
        let set: BTreeSet<Cell> = match &self.white {
            Some(w) => w.iter().copied().collect(),
            None => self
                .rows
                .iter()
                .chain(&self.cols)
                .flat_map(|p| p.cells.iter().copied())
                .collect(),
        };
        set.into_iter().collect()
    }

    pub fn portions(&self) -> impl Iterator<Item = &Portion> {
        self.rows.iter().chain(&self.cols)
    }

    pub fn validate(&self) -> Result<(), ProblemError> {
        if self.max_digit < 2 {
            return Err(invalid("kakuro", "maximum digit must be at least 2"));
        }
        let white: BTreeSet<Cell> = self.white_cells().into_iter().collect();
        if let Some(w) = &self.white {
            if w.len() != white.len() {
                return Err(invalid("kakuro", "white cells must be distinct"));
            }
        }
        if let Some(&(r, c)) = white.iter().find(|&&(r, c)| r >= self.size || c >= self.size) {
            return Err(invalid("kakuro", format!("cell ({r}, {c}) is off the board")));
        }
        for (orientation, portions) in [("row", &self.rows), ("column", &self.cols)] {
            let mut seen = BTreeSet::new();
            for p in portions {
                if p.cells.is_empty() {
                    return Err(invalid("kakuro", format!("empty {orientation} portion")));
                }
                if p.cells.len() > self.max_digit {
                    return Err(invalid(
                        "kakuro",
                        format!("{orientation} portion of {} cells exceeds the maximum digit", p.cells.len()),
                    ));
                }
                let line = |c: &Cell| if orientation == "row" { c.0 } else { c.1 };
                if p.cells.iter().any(|c| line(c) != line(&p.cells[0])) {
                    return Err(invalid("kakuro", format!("{orientation} portion spans several lines")));
                }
                for c in &p.cells {
                    if !white.contains(c) {
                        return Err(invalid("kakuro", format!("portion cell {c:?} is not white")));
                    }
                    if !seen.insert(*c) {
                        return Err(invalid("kakuro", format!("cell {c:?} is in two {orientation} portions")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Cell values per row; `None` marks a black cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct KakuroSolution {
    pub grid: Vec<Vec<Option<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct InshiInstance {
    pub size: usize,
    pub regions: Vec<Portion>,
}

impl InshiInstance {
    pub fn validate(&self) -> Result<(), ProblemError> {
        if self.size == 0 {
            return Err(invalid("inshi", "board size must be at least 1"));
        }
        let mut owner = BTreeMap::new();
        for (k, region) in self.regions.iter().enumerate() {
            if region.cells.is_empty() {
                return Err(invalid("inshi", format!("region {k} is empty")));
            }
            for &(r, c) in &region.cells {
                if r >= self.size || c >= self.size {
                    return Err(invalid("inshi", format!("cell ({r}, {c}) is off the board")));
                }
                if owner.insert((r, c), k).is_some() {
                    return Err(invalid("inshi", format!("cell ({r}, {c}) is in two regions")));
                }
            }
        }
        if owner.len() != self.size * self.size {
            return Err(invalid("inshi", "regions must cover the whole board"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct InshiSolution {
    pub grid: Vec<Vec<usize>>,
}

/// Which game or problem an instance describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemKind {
    Knapsack,
    Hashi,
    Tsp,
    Queens,
    Kakuro,
    Inshi,
    Peg,
}

impl std::fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ProblemKind::Knapsack => "knapsack",
            ProblemKind::Hashi => "hashi",
            ProblemKind::Tsp => "tsp",
            ProblemKind::Queens => "queens",
            ProblemKind::Kakuro => "kakuro",
            ProblemKind::Inshi => "inshi",
            ProblemKind::Peg => "peg",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProblemInstance {
    Knapsack(KnapsackInstance),
    Hashi(HashiInstance),
    Tsp(TspInstance),
    Queens(QueensInstance),
    Kakuro(KakuroInstance),
    Inshi(InshiInstance),
    Peg(PegInstance),
}

impl ProblemInstance {
    pub fn kind(&self) -> ProblemKind {
        match self {
            ProblemInstance::Knapsack(_) => ProblemKind::Knapsack,
            ProblemInstance::Hashi(_) => ProblemKind::Hashi,
            ProblemInstance::Tsp(_) => ProblemKind::Tsp,
            ProblemInstance::Queens(_) => ProblemKind::Queens,
            ProblemInstance::Kakuro(_) => ProblemKind::Kakuro,
            ProblemInstance::Inshi(_) => ProblemKind::Inshi,
            ProblemInstance::Peg(_) => ProblemKind::Peg,
        }
    }

    pub fn validate(&self) -> Result<(), ProblemError> {
        match self {
            ProblemInstance::Knapsack(i) => i.validate(),
            ProblemInstance::Hashi(i) => i.validate(),
            ProblemInstance::Tsp(i) => i.validate(),
            ProblemInstance::Queens(i) => i.validate(),
            ProblemInstance::Kakuro(i) => i.validate(),
            ProblemInstance::Inshi(i) => i.validate(),
            ProblemInstance::Peg(i) => i.validate(),
        }
    }
}

/// A decoded solution of any problem.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "problem", rename_all = "lowercase")]
pub enum DomainSolution {
    Knapsack(KnapsackSolution),
    Hashi(HashiSolution),
    Tsp(TspSolution),
    Queens(QueensSolution),
    Kakuro(KakuroSolution),
    Inshi(InshiSolution),
    Peg(PegSolution),
}

impl DomainSolution {
    pub fn kind(&self) -> ProblemKind {
        match self {
            DomainSolution::Knapsack(_) => ProblemKind::Knapsack,
            DomainSolution::Hashi(_) => ProblemKind::Hashi,
            DomainSolution::Tsp(_) => ProblemKind::Tsp,
            DomainSolution::Queens(_) => ProblemKind::Queens,
            DomainSolution::Kakuro(_) => ProblemKind::Kakuro,
            DomainSolution::Inshi(_) => ProblemKind::Inshi,
            DomainSolution::Peg(_) => ProblemKind::Peg,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn knapsack_shape_checks() {
        assert!(KnapsackInstance::new(vec![1.0], vec![1, 2], vec![1], 3).is_err());
        assert!(KnapsackInstance::new(vec![0.0], vec![1], vec![1], 3).is_err());
        assert!(KnapsackInstance::new(vec![1.0], vec![1], vec![0], 3).is_err());
        assert!(KnapsackInstance::new(vec![1.0], vec![1], vec![1], 0).is_ok());
    }

    #[test]
    fn tsp_missing_edges_resolve() {
        let inst: TspInstance =
            serde_json::from_str(r#"{"costs": [[0, 2, null], [2, 0, 3], [1, 3, 0]]}"#).unwrap();
        inst.validate().unwrap();
        let e = inst.resolved_costs();
        assert_eq!(e.len(), 3);
        assert_eq!(e[0][0][2], 1.0 + 2.0 + 2.0 + 3.0 + 1.0 + 3.0);
        assert_eq!(e[2][1][2], 3.0);
    }

    #[test]
    fn tsp_rejects_bad_shapes() {
        assert!(TspInstance::from_matrix(vec![vec![0.0]]).is_err());
        assert!(TspInstance::from_matrix(vec![vec![0.0, 1.0], vec![1.0]]).is_err());
        assert!(TspInstance::from_time_matrices(vec![vec![vec![0.0, 1.0], vec![1.0, 0.0]]]).is_err());
        let bad: Result<TspInstance, _> = serde_json::from_str(r#"{"costs": [[0]], "bogus": 1}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn kakuro_validation() {
        let ok = KakuroInstance {
            size: 2,
            max_digit: 2,
            white: None,
            rows: vec![Portion {
                cells: vec![(0, 0), (0, 1)],
                sum: 3,
            }],
            cols: vec![],
        };
        ok.validate().unwrap();
        assert_eq!(ok.white_cells(), vec![(0, 0), (0, 1)]);

        let mut bad = ok.clone();
        bad.rows[0].cells = vec![(0, 0), (1, 1)];
        assert!(bad.validate().is_err());

        let mut bad = ok.clone();
        bad.white = Some(vec![(0, 0)]);
        assert!(bad.validate().is_err());

        let mut bad = ok;
        bad.rows.push(Portion {
            cells: vec![(0, 1)],
            sum: 1,
        });
        assert!(bad.validate().is_err());
    }

    #[test]
    fn inshi_partition() {
        let inst = InshiInstance {
            size: 2,
            regions: vec![
                Portion {
                    cells: vec![(0, 0), (0, 1)],
                    sum: 3,
                },
                Portion {
                    cells: vec![(1, 0)],
                    sum: 2,
                },
            ],
        };
        assert!(inst.validate().is_err());
    }

    #[test]
    fn solution_tagging() {
        let s = DomainSolution::Queens(QueensSolution { columns: vec![1, 3, 0, 2] });
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"problem":"queens","columns":[1,3,0,2]}"#);
        let back: DomainSolution = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}
