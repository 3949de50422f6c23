use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::{invalid, ProblemError};

/// Peg Solitaire on an arbitrary set of cells with one initially empty cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct PegInstance {
    pub cells: Vec<(i64, i64)>,
    pub empty: (i64, i64),
}

impl PegInstance {
    pub fn new(cells: Vec<(i64, i64)>, empty: (i64, i64)) -> Result<Self, ProblemError> {
        let inst = Self { cells, empty };
        inst.validate()?;
        Ok(inst)
    }

    /// A full `rows x cols` rectangle.
    pub fn rectangle(rows: i64, cols: i64, empty: (i64, i64)) -> Result<Self, ProblemError> {
        let cells = (0..rows).flat_map(|r| (0..cols).map(move |c| (r, c))).collect();
        Self::new(cells, empty)
    }

    pub fn validate(&self) -> Result<(), ProblemError> {
        let set: BTreeSet<_> = self.cells.iter().collect();
        if set.len() != self.cells.len() {
            return Err(invalid("peg", "cells must be distinct"));
        }
        if self.cells.len() < 3 {
            return Err(invalid("peg", format!("need at least 3 cells, got {}", self.cells.len())));
        }
        if !set.contains(&self.empty) {
            return Err(invalid("peg", format!("empty cell {:?} is not on the board", self.empty)));
        }
        Ok(())
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }
}

/// Move direction as the code pair `(k1, k2)`, row and column components,
/// each selecting a displacement from `(0, -1, +1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[u8; 2]", into = "[u8; 2]")]
pub struct DirectionCode {
    k1: u8,
    k2: u8,
}

const DISPLACEMENT: [i64; 3] = [0, -1, 1];

impl DirectionCode {
    pub const ALL: [DirectionCode; 4] = [
        DirectionCode { k1: 0, k2: 1 },
        DirectionCode { k1: 0, k2: 2 },
        DirectionCode { k1: 1, k2: 0 },
        DirectionCode { k1: 2, k2: 0 },
    ];

    pub fn new(k1: u8, k2: u8) -> Option<Self> {
        let code = DirectionCode { k1, k2 };
        Self::ALL.contains(&code).then_some(code)
    }

    pub fn k1(self) -> u8 {
        self.k1
    }

    pub fn k2(self) -> u8 {
        self.k2
    }

    /// `(row, col)` displacement of one step.
    pub fn step(self) -> (i64, i64) {
        (DISPLACEMENT[self.k1 as usize], DISPLACEMENT[self.k2 as usize])
    }

    /// Jumped and landing positions for a jump starting at `from`.
    pub fn jump(self, from: (i64, i64)) -> ((i64, i64), (i64, i64)) {
        let (dr, dc) = self.step();
        ((from.0 + dr, from.1 + dc), (from.0 + 2 * dr, from.1 + 2 * dc))
    }
}

impl TryFrom<[u8; 2]> for DirectionCode {
    type Error = String;

    fn try_from(v: [u8; 2]) -> Result<Self, Self::Error> {
        DirectionCode::new(v[0], v[1]).ok_or_else(|| format!("invalid direction code {v:?}"))
    }
}

impl From<DirectionCode> for [u8; 2] {
    fn from(d: DirectionCode) -> Self {
        [d.k1, d.k2]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct PegMove {
    pub from: (i64, i64),
    pub code: DirectionCode,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct PegSolution {
    pub moves: Vec<PegMove>,
}

/// Where the cell-occupancy value `x[c, t]` comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XSlot {
    /// Boundary step, substituted by a constant 0 or 1.
    Fixed(u8),
    Var(usize),
}

/// One action variable: jump from `source` over `jumped` onto `target`
/// between steps `t` and `t + 1`. Cells are board indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PegAction {
    pub t: usize,
    pub source: usize,
    pub jumped: usize,
    pub target: usize,
    pub code: DirectionCode,
    pub var: usize,
}

/// Variable layout of the Peg Solitaire trajectory model.
///
/// Steps run over `t in [0, T-1]` with `T = M - 1`. Occupancy variables exist
/// for the interior steps `1..=T-2` (index `(t - 1) * M + cell`); the first
/// and last steps are constants. Action variables follow, one per
/// `(t in [0, T-2], source cell, direction)` whose jumped and landing cells
/// are on the board.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PegLayout {
    cells: Vec<(i64, i64)>,
    index: HashMap<(i64, i64), usize>,
    empty: usize,
    actions: Vec<PegAction>,
    num_x: usize,
}

impl PegLayout {
    pub fn new(inst: &PegInstance) -> Self {
        let cells = inst.cells.clone();
        let index: HashMap<_, _> = cells.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let m = cells.len();
        let steps = m - 1;
        let num_x = steps.saturating_sub(2) * m;
        let mut actions = Vec::new();
        for t in 0..steps - 1 {
            for (source, &pos) in cells.iter().enumerate() {
                for code in DirectionCode::ALL {
                    let (over, onto) = code.jump(pos);
                    if let (Some(&jumped), Some(&target)) = (index.get(&over), index.get(&onto)) {
                        actions.push(PegAction {
                            t,
                            source,
                            jumped,
                            target,
                            code,
                            var: num_x + actions.len(),
                        });
                    }
                }
            }
        }
        Self {
            empty: index[&inst.empty],
            cells,
            index,
            actions,
            num_x,
        }
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    /// Number of steps `T = M - 1`, including the fixed first and last.
    pub fn steps(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn num_vars(&self) -> usize {
        self.num_x + self.actions.len()
    }

    pub fn num_x_vars(&self) -> usize {
        self.num_x
    }

    pub fn cells(&self) -> &[(i64, i64)] {
        &self.cells
    }

    pub fn empty_cell(&self) -> usize {
        self.empty
    }

    pub fn cell_index(&self, pos: (i64, i64)) -> Option<usize> {
        self.index.get(&pos).copied()
    }

    pub fn actions(&self) -> &[PegAction] {
        &self.actions
    }

    pub fn x(&self, cell: usize, t: usize) -> XSlot {
        let last = self.steps() - 1;
        if t == 0 {
            XSlot::Fixed(u8::from(cell != self.empty))
        } else if t == last {
            XSlot::Fixed(u8::from(cell == self.empty))
        } else {
            XSlot::Var((t - 1) * self.cells.len() + cell)
        }
    }

    pub fn find_action(&self, t: usize, source: usize, code: DirectionCode) -> Option<&PegAction> {
        self.actions
            .iter()
            .find(|a| a.t == t && a.source == source && a.code == code)
    }

    pub fn variable_names(&self) -> Vec<String> {
        let mut names = Vec::with_capacity(self.num_vars());
        for t in 1..self.steps().saturating_sub(1) {
            for &(r, c) in &self.cells {
                names.push(format!("x[{r},{c};{t}]"));
            }
        }
        for a in &self.actions {
            let (r, c) = self.cells[a.source];
            names.push(format!("a[{r},{c};{};{}{}]", a.t, a.code.k1(), a.code.k2()));
        }
        names
    }
}
