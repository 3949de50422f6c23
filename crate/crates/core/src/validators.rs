//! Rule checkers for every problem, written directly against the game rules.
//!
//! Nothing here evaluates a model or cost function; these are the ground
//! truth the encoders are tested against. The only model type used is
//! [`Assignment`], in [`trajectory_from_moves`].

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::models::Assignment;
use crate::problems::{
    DomainSolution, HashiInstance, HashiSolution, InshiInstance, InshiSolution, KakuroInstance,
    KakuroSolution, KnapsackInstance, KnapsackSolution, PegInstance, PegLayout, PegMove,
    ProblemInstance, QueensInstance, QueensSolution, TspInstance, TspSolution, XSlot,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("solution shape does not match the instance: {0}")]
    ShapeMismatch(String),
    #[error("solution is for {solution}, instance is {instance}")]
    KindMismatch { instance: String, solution: String },
    #[error("move {index} cannot be expressed on this board")]
    OffBoardMove { index: usize },
}

fn shape(msg: impl Into<String>) -> ValidationError {
    ValidationError::ShapeMismatch(msg.into())
}

#[derive(Debug, Clone, PartialEq)]
pub struct KnapsackReport {
    pub within_counts: bool,
    pub feasible: bool,
    pub value: f64,
    pub weight: u64,
}

pub fn validate_knapsack(
    inst: &KnapsackInstance,
    sol: &KnapsackSolution,
) -> Result<KnapsackReport, ValidationError> {
    if sol.counts.len() != inst.num_classes() {
        return Err(shape(format!(
            "{} counts for {} item classes",
            sol.counts.len(),
            inst.num_classes()
        )));
    }
    let within_counts = sol.counts.iter().zip(&inst.counts).all(|(s, c)| s <= c);
    let weight = sol.counts.iter().zip(&inst.weights).map(|(s, w)| s * w).sum();
    let value = sol
        .counts
        .iter()
        .zip(&inst.values)
        .map(|(&s, v)| s as f64 * v)
        .sum();
    Ok(KnapsackReport {
        within_counts,
        feasible: within_counts && weight <= inst.capacity,
        value,
        weight,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HashiReport {
    /// Every bridge joins two mutually visible islands within the multiplicity limit.
    pub edges_valid: bool,
    pub degrees_ok: bool,
    pub no_cross: bool,
    pub connected: bool,
    pub accepted: bool,
}

pub fn validate_hashi(inst: &HashiInstance, sol: &HashiSolution) -> Result<HashiReport, ValidationError> {
    let n = inst.nodes.len();
    let mut bridges: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for e in &sol.edges {
        if e.a >= n || e.b >= n {
            return Err(shape(format!("edge ({}, {}) names a missing node", e.a, e.b)));
        }
        if e.count > 0 {
            *bridges.entry((e.a.min(e.b), e.a.max(e.b))).or_insert(0) += e.count;
        }
    }
    let edges_valid = bridges
        .iter()
        .all(|(&(a, b), &count)| a != b && inst.connectable(a, b) && count <= inst.max_edges);

    let mut degree = vec![0usize; n];
    for (&(a, b), &count) in &bridges {
        degree[a] += count;
        degree[b] += count;
    }
    let degrees_ok = degree.iter().zip(&inst.nodes).all(|(&d, node)| d == node.degree);

    let keys: Vec<_> = bridges.keys().copied().collect();
    let no_cross = keys.iter().enumerate().all(|(k, &e)| {
        keys[k + 1..]
            .iter()
            .all(|&f| !(e.0 != f.0 && e.0 != f.1 && e.1 != f.0 && e.1 != f.1 && inst.edges_cross(e, f)))
    });

    // reachability from node 0 over bridged pairs
    let connected = if n == 0 {
        true
    } else {
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &(a, b) in &keys {
                let v = if a == u {
                    b
                } else if b == u {
                    a
                } else {
                    continue;
                };
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };

    Ok(HashiReport {
        edges_valid,
        degrees_ok,
        no_cross,
        connected,
        accepted: edges_valid && degrees_ok && no_cross && connected,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TspReport {
    pub is_permutation: bool,
    pub tour_cost: f64,
}

pub fn validate_tsp(inst: &TspInstance, sol: &TspSolution) -> Result<TspReport, ValidationError> {
    let v = inst.vertices();
    if sol.tour.len() != v {
        return Err(shape(format!("tour visits {} steps, graph has {v} vertices", sol.tour.len())));
    }
    if let Some(&bad) = sol.tour.iter().find(|&&x| x >= v) {
        return Err(shape(format!("tour names vertex {bad}, graph has {v}")));
    }
    let distinct: BTreeSet<_> = sol.tour.iter().collect();
    let costs = inst.resolved_costs();
    let tour_cost = (0..v)
        .map(|t| costs[t][sol.tour[t]][sol.tour[(t + 1) % v]])
        .sum();
    Ok(TspReport {
        is_permutation: distinct.len() == v,
        tour_cost,
    })
}

pub fn validate_queens(inst: &QueensInstance, sol: &QueensSolution) -> Result<bool, ValidationError> {
    let n = inst.n;
    if sol.columns.len() != n {
        return Err(shape(format!("{} queens on a board of size {n}", sol.columns.len())));
    }
    if sol.columns.iter().any(|&c| c >= n) {
        return Ok(false);
    }
    for r1 in 0..n {
        for r2 in r1 + 1..n {
            let (c1, c2) = (sol.columns[r1] as i64, sol.columns[r2] as i64);
            if c1 == c2 || (c1 - c2).abs() == (r2 - r1) as i64 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn sums_and_distinct(values: &[usize], sum: u64) -> bool {
    let distinct: BTreeSet<_> = values.iter().collect();
    distinct.len() == values.len() && values.iter().map(|&v| v as u64).sum::<u64>() == sum
}

pub fn validate_kakuro(inst: &KakuroInstance, sol: &KakuroSolution) -> Result<bool, ValidationError> {
    let n = inst.size;
    if sol.grid.len() != n || sol.grid.iter().any(|r| r.len() != n) {
        return Err(shape(format!("grid is not {n} x {n}")));
    }
    let white: BTreeSet<_> = inst.white_cells().into_iter().collect();
    for r in 0..n {
        for c in 0..n {
            match (white.contains(&(r, c)), sol.grid[r][c]) {
                (true, Some(v)) if (1..=inst.max_digit).contains(&v) => {}
                (false, None) => {}
                _ => return Ok(false),
            }
        }
    }
    Ok(inst.portions().all(|p| {
        let values: Vec<usize> = p.cells.iter().map(|&(r, c)| sol.grid[r][c].unwrap_or(0)).collect();
        sums_and_distinct(&values, p.sum)
    }))
}

pub fn validate_inshi(inst: &InshiInstance, sol: &InshiSolution) -> Result<bool, ValidationError> {
    let n = inst.size;
    if sol.grid.len() != n || sol.grid.iter().any(|r| r.len() != n) {
        return Err(shape(format!("grid is not {n} x {n}")));
    }
    if sol.grid.iter().flatten().any(|&v| !(1..=n).contains(&v)) {
        return Ok(false);
    }
    for k in 0..n {
        let row: Vec<usize> = sol.grid[k].clone();
        let col: Vec<usize> = (0..n).map(|r| sol.grid[r][k]).collect();
        for line in [row, col] {
            let distinct: BTreeSet<_> = line.iter().collect();
            if distinct.len() != n {
                return Ok(false);
            }
        }
    }
    Ok(inst.regions.iter().all(|region| {
        let total: u64 = region.cells.iter().map(|&(r, c)| sol.grid[r][c] as u64).sum();
        total == region.sum
    }))
}

/// Replays `moves` and checks that every jump is legal and that exactly one
/// ball remains, on the initially empty cell.
pub fn validate_peg(inst: &PegInstance, moves: &[PegMove]) -> bool {
    let cells: BTreeSet<_> = inst.cells.iter().copied().collect();
    let mut balls: BTreeSet<_> = cells.iter().copied().filter(|&c| c != inst.empty).collect();
    for mv in moves {
        let (over, onto) = mv.code.jump(mv.from);
        let legal = cells.contains(&mv.from)
            && cells.contains(&over)
            && cells.contains(&onto)
            && balls.contains(&mv.from)
            && balls.contains(&over)
            && !balls.contains(&onto);
        if !legal {
            return false;
        }
        balls.remove(&mv.from);
        balls.remove(&over);
        balls.insert(onto);
    }
    balls.len() == 1 && balls.contains(&inst.empty)
}

/// Occupancy and action bits of the trajectory model for a move sequence of
/// the full length `M - 2`.
pub fn trajectory_from_moves(inst: &PegInstance, moves: &[PegMove]) -> Result<Assignment, ValidationError> {
    let layout = PegLayout::new(inst);
    let m = layout.num_cells();
    if moves.len() != m - 2 {
        return Err(shape(format!("{} moves, a full game on {m} cells has {}", moves.len(), m - 2)));
    }
    let mut values = vec![0usize; layout.num_vars()];
    let mut state: Vec<usize> = (0..m).map(|c| usize::from(c != layout.empty_cell())).collect();
    for (t, mv) in moves.iter().enumerate() {
        let source = layout
            .cell_index(mv.from)
            .ok_or(ValidationError::OffBoardMove { index: t })?;
        let action = layout
            .find_action(t, source, mv.code)
            .ok_or(ValidationError::OffBoardMove { index: t })?;
        values[action.var] = 1;
        state[action.source] = 0;
        state[action.jumped] = 0;
        state[action.target] = 1;
        for (c, &occupied) in state.iter().enumerate() {
            if let XSlot::Var(idx) = layout.x(c, t + 1) {
                values[idx] = occupied;
            }
        }
    }
    Ok(Assignment::new(values))
}

/// Outcome of [`validate`]: acceptance plus named sub-checks for display.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub accepted: bool,
    pub checks: Vec<(&'static str, String)>,
}

/// Runs the validator matching the instance.
pub fn validate(inst: &ProblemInstance, sol: &DomainSolution) -> Result<ValidationReport, ValidationError> {
    let flag = |b: bool| b.to_string();
    let report = match (inst, sol) {
        (ProblemInstance::Knapsack(i), DomainSolution::Knapsack(s)) => {
            let r = validate_knapsack(i, s)?;
            ValidationReport {
                accepted: r.feasible,
                checks: vec![
                    ("withinCounts", flag(r.within_counts)),
                    ("weight", r.weight.to_string()),
                    ("value", r.value.to_string()),
                    ("feasible", flag(r.feasible)),
                ],
            }
        }
        (ProblemInstance::Hashi(i), DomainSolution::Hashi(s)) => {
            let r = validate_hashi(i, s)?;
            ValidationReport {
                accepted: r.accepted,
                checks: vec![
                    ("edgesValid", flag(r.edges_valid)),
                    ("degreesOk", flag(r.degrees_ok)),
                    ("noCross", flag(r.no_cross)),
                    ("connected", flag(r.connected)),
                ],
            }
        }
        (ProblemInstance::Tsp(i), DomainSolution::Tsp(s)) => {
            let r = validate_tsp(i, s)?;
            ValidationReport {
                accepted: r.is_permutation,
                checks: vec![
                    ("isPermutation", flag(r.is_permutation)),
                    ("tourCost", r.tour_cost.to_string()),
                ],
            }
        }
        (ProblemInstance::Queens(i), DomainSolution::Queens(s)) => {
            let ok = validate_queens(i, s)?;
            ValidationReport {
                accepted: ok,
                checks: vec![("noAttacks", flag(ok))],
            }
        }
        (ProblemInstance::Kakuro(i), DomainSolution::Kakuro(s)) => {
            let ok = validate_kakuro(i, s)?;
            ValidationReport {
                accepted: ok,
                checks: vec![("rulesOk", flag(ok))],
            }
        }
        (ProblemInstance::Inshi(i), DomainSolution::Inshi(s)) => {
            let ok = validate_inshi(i, s)?;
            ValidationReport {
                accepted: ok,
                checks: vec![("rulesOk", flag(ok))],
            }
        }
        (ProblemInstance::Peg(i), DomainSolution::Peg(s)) => {
            let ok = validate_peg(i, &s.moves);
            ValidationReport {
                accepted: ok,
                checks: vec![("moves", s.moves.len().to_string()), ("solved", flag(ok))],
            }
        }
        (i, s) => {
            return Err(ValidationError::KindMismatch {
                instance: i.kind().to_string(),
                solution: s.kind().to_string(),
            })
        }
    };
    Ok(report)
}
