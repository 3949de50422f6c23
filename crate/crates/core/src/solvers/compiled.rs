use crate::models::{HoboModel, Model, QudoModel, TQudoModel};

/// Flat, variable-indexed copy of a model for fast evaluation and
/// single-variable deltas. Every variable keeps the list of terms it
/// appears in, so a delta touches only those.
#[derive(Debug, Clone)]
pub struct CompiledModel {
    dims: Vec<usize>,
    offset: f64,
    kind: Kind,
}

#[derive(Debug, Clone)]
enum Kind {
    Qudo {
        linear: Vec<f64>,
        /// `Q_ii`, multiplying `x_i^2`.
        square: Vec<f64>,
        /// Per variable: `(other, Q)` for every cross term.
        cross: Vec<Vec<(usize, f64)>>,
    },
    TQudo {
        /// `diag[i][a]`
        diag: Vec<Vec<f64>>,
        /// Dense tables `(i, j, table[a * d_j + b])` with `i < j`.
        pairs: Vec<(usize, usize, Vec<f64>)>,
        /// Per variable: pair indices it belongs to.
        incidence: Vec<Vec<usize>>,
    },
    Hobo {
        terms: Vec<(Vec<usize>, f64)>,
        incidence: Vec<Vec<usize>>,
    },
}

impl CompiledModel {
    pub fn new(model: &Model) -> Self {
        match model {
            Model::Qudo(m) => Self::from_qudo(m),
            Model::TQudo(m) => Self::from_tqudo(m),
            Model::Hobo(m) => Self::from_hobo(m),
        }
    }

    fn from_qudo(m: &QudoModel) -> Self {
        let n = m.num_vars();
        let mut square = vec![0.0; n];
        let mut cross = vec![Vec::new(); n];
        for (i, j, q) in m.quadratic_terms() {
            if i == j {
                square[i] += q;
            } else {
                cross[i].push((j, q));
                cross[j].push((i, q));
            }
        }
        Self {
            dims: m.space().dims().to_vec(),
            offset: m.offset(),
            kind: Kind::Qudo {
                linear: m.linear().to_vec(),
                square,
                cross,
            },
        }
    }

    fn from_tqudo(m: &TQudoModel) -> Self {
        let dims = m.space().dims().to_vec();
        let n = dims.len();
        let mut diag: Vec<Vec<f64>> = dims.iter().map(|&d| vec![0.0; d]).collect();
        let mut pairs: Vec<(usize, usize, Vec<f64>)> = Vec::new();
        let mut incidence = vec![Vec::new(); n];
        // entries are sorted by (i, j, a, b), so each pair is contiguous
        for ((i, j, a, b), v) in m.entries() {
            if i == j {
                diag[i][a] += v;
                continue;
            }
            if pairs.last().is_none_or(|p| (p.0, p.1) != (i, j)) {
                incidence[i].push(pairs.len());
                incidence[j].push(pairs.len());
                pairs.push((i, j, vec![0.0; dims[i] * dims[j]]));
            }
            let table = &mut pairs.last_mut().expect("pair just pushed").2;
            table[a * dims[j] + b] += v;
        }
        Self {
            dims,
            offset: m.offset(),
            kind: Kind::TQudo { diag, pairs, incidence },
        }
    }

    fn from_hobo(m: &HoboModel) -> Self {
        let n = m.num_vars();
        let mut offset = 0.0;
        let mut terms = Vec::new();
        let mut incidence = vec![Vec::new(); n];
        for (key, c) in m.terms() {
            if key.is_empty() {
                offset += c;
                continue;
            }
            for &v in key {
                incidence[v].push(terms.len());
            }
            terms.push((key.to_vec(), c));
        }
        Self {
            dims: vec![2; n],
            offset,
            kind: Kind::Hobo { terms, incidence },
        }
    }

    pub fn num_vars(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Full cost. `x` must be a valid assignment.
    pub fn evaluate(&self, x: &[usize]) -> f64 {
        let mut total = self.offset;
        match &self.kind {
            Kind::Qudo { linear, square, cross } => {
                for i in 0..x.len() {
                    let xi = x[i] as f64;
                    total += linear[i] * xi + square[i] * xi * xi;
                    for &(j, q) in &cross[i] {
                        if j > i {
                            total += q * xi * x[j] as f64;
                        }
                    }
                }
            }
            Kind::TQudo { diag, pairs, .. } => {
                for (i, row) in diag.iter().enumerate() {
                    total += row[x[i]];
                }
                for (i, j, table) in pairs {
                    total += table[x[*i] * self.dims[*j] + x[*j]];
                }
            }
            Kind::Hobo { terms, .. } => {
                for (key, c) in terms {
                    if key.iter().all(|&v| x[v] == 1) {
                        total += c;
                    }
                }
            }
        }
        total
    }

    /// `evaluate(x with x[i] = value) - evaluate(x)`, from the terms touching `i`.
    pub fn delta(&self, x: &[usize], i: usize, value: usize) -> f64 {
        let old = x[i];
        if old == value {
            return 0.0;
        }
        match &self.kind {
            Kind::Qudo { linear, square, cross } => {
                let (o, n) = (old as f64, value as f64);
                let field: f64 = cross[i].iter().map(|&(j, q)| q * x[j] as f64).sum();
                (n - o) * (linear[i] + field) + square[i] * (n * n - o * o)
            }
            Kind::TQudo { diag, pairs, incidence } => {
                let mut d = diag[i][value] - diag[i][old];
                for &p in &incidence[i] {
                    let (a, b, table) = &pairs[p];
                    let dj = self.dims[*b];
                    if *a == i {
                        d += table[value * dj + x[*b]] - table[old * dj + x[*b]];
                    } else {
                        d += table[x[*a] * dj + value] - table[x[*a] * dj + old];
                    }
                }
                d
            }
            Kind::Hobo { terms, incidence } => {
                let sign = value as f64 - old as f64;
                incidence[i]
                    .iter()
                    .filter(|&&t| terms[t].0.iter().all(|&v| v == i || x[v] == 1))
                    .map(|&t| sign * terms[t].1)
                    .sum()
            }
        }
    }
}
