//! The four model formalisms and exact cost evaluation.
//!
//! * [`QudoModel`]: quadratic + linear cost over bounded integer variables.
//!   A QUDO model whose dimensions are all 2 is a QUBO model.
//! * [`TQudoModel`]: pairwise cost tensor whose entries depend on the values
//!   taken by both variables.
//! * [`HoboModel`]: polynomial of arbitrary order over binary variables.
//!
//! Every formalism carries an explicit constant so that penalty squares such
//! as `(N - sum x)^2` keep their constant part and a satisfied constraint
//! costs exactly zero.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("variable dimension must be at least 2, got {dim} for variable {index}")]
    DimensionTooSmall { index: usize, dim: usize },
    #[error("expected {expected} variable names, got {got}")]
    NameCount { expected: usize, got: usize },
    #[error("duplicate variable name `{0}`")]
    DuplicateName(String),
    #[error("assignment has {got} values but the model has {expected} variables")]
    LengthMismatch { expected: usize, got: usize },
    #[error("value {value} of variable {index} is outside [0, {dim})")]
    ValueOutOfRange { index: usize, value: usize, dim: usize },
    #[error("variable index {index} out of range for {num_vars} variables")]
    IndexOutOfRange { index: usize, num_vars: usize },
    #[error("diagonal tensor entry ({index}, {index}, {a}, {b}) must have equal values")]
    OffDiagonalValues { index: usize, a: usize, b: usize },
    #[error("models are defined over different variable spaces")]
    SpaceMismatch,
    #[error("operation requires binary variables, variable {index} has dimension {dim}")]
    NotBinary { index: usize, dim: usize },
}

/// Per-variable dimensions, with optional human-readable labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableSpace {
    dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
}

impl VariableSpace {
    pub fn new(dims: Vec<usize>) -> Result<Self, ModelError> {
        for (index, &dim) in dims.iter().enumerate() {
            if dim < 2 {
                return Err(ModelError::DimensionTooSmall { index, dim });
            }
        }
        Ok(Self { dims, names: None })
    }

    pub fn with_names(dims: Vec<usize>, names: Vec<String>) -> Result<Self, ModelError> {
        let mut space = Self::new(dims)?;
        space.set_names(names)?;
        Ok(space)
    }

    pub fn binary(n: usize) -> Self {
        Self {
            dims: vec![2; n],
            names: None,
        }
    }

    pub fn set_names(&mut self, names: Vec<String>) -> Result<(), ModelError> {
        if names.len() != self.dims.len() {
            return Err(ModelError::NameCount {
                expected: self.dims.len(),
                got: names.len(),
            });
        }
        let mut seen = std::collections::BTreeSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(ModelError::DuplicateName(name.clone()));
            }
        }
        self.names = Some(names);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, i: usize) -> usize {
        self.dims[i]
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn is_binary(&self) -> bool {
        self.dims.iter().all(|&d| d == 2)
    }

    /// Number of assignments, or `None` if it does not fit in a `u128`.
    pub fn search_space_size(&self) -> Option<u128> {
        self.dims
            .iter()
            .try_fold(1u128, |acc, &d| acc.checked_mul(d as u128))
    }

    /// Appends variables. Labels are generated when the space is named.
    pub fn extend(&mut self, dims: &[usize]) -> Result<(), ModelError> {
        for (k, &dim) in dims.iter().enumerate() {
            if dim < 2 {
                return Err(ModelError::DimensionTooSmall {
                    index: self.dims.len() + k,
                    dim,
                });
            }
        }
        if let Some(names) = &mut self.names {
            for k in 0..dims.len() {
                names.push(format!("v{}", self.dims.len() + k));
            }
        }
        self.dims.extend_from_slice(dims);
        Ok(())
    }

    pub fn check_index(&self, index: usize) -> Result<(), ModelError> {
        if index < self.dims.len() {
            Ok(())
        } else {
            Err(ModelError::IndexOutOfRange {
                index,
                num_vars: self.dims.len(),
            })
        }
    }

    pub fn check_value(&self, index: usize, value: usize) -> Result<(), ModelError> {
        self.check_index(index)?;
        let dim = self.dims[index];
        if value < dim {
            Ok(())
        } else {
            Err(ModelError::ValueOutOfRange { index, value, dim })
        }
    }

    pub fn validate(&self, x: &Assignment) -> Result<(), ModelError> {
        check_values(&self.dims, x.values())
    }

    fn same_dims(&self, other: &VariableSpace) -> bool {
        self.dims == other.dims
    }
}

pub(crate) fn check_values(dims: &[usize], values: &[usize]) -> Result<(), ModelError> {
    if values.len() != dims.len() {
        return Err(ModelError::LengthMismatch {
            expected: dims.len(),
            got: values.len(),
        });
    }
    for (index, (&value, &dim)) in values.iter().zip(dims).enumerate() {
        if value >= dim {
            return Err(ModelError::ValueOutOfRange { index, value, dim });
        }
    }
    Ok(())
}

/// A mixed-radix integer vector: one value per variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Assignment(Vec<usize>);

impl Assignment {
    pub fn new(values: Vec<usize>) -> Self {
        Self(values)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn values_mut(&mut self) -> &mut [usize] {
        &mut self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }
}

impl From<Vec<usize>> for Assignment {
    fn from(values: Vec<usize>) -> Self {
        Self(values)
    }
}

fn accumulate<K: Ord>(map: &mut BTreeMap<K, f64>, key: K, value: f64) {
    if value == 0.0 {
        return;
    }
    *map.entry(key).or_insert(0.0) += value;
}

fn prune<K: Ord + Clone>(map: &mut BTreeMap<K, f64>, key: &K) {
    if map.get(key) == Some(&0.0) {
        map.remove(key);
    }
}

/// Quadratic model over bounded integer variables:
/// `offset + sum_{i<=j} Q_ij x_i x_j + sum_i D_i x_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct QudoModel {
    space: VariableSpace,
    quad: BTreeMap<(usize, usize), f64>,
    linear: Vec<f64>,
    offset: f64,
}

impl QudoModel {
    pub fn new(space: VariableSpace) -> Self {
        let n = space.len();
        Self {
            space,
            quad: BTreeMap::new(),
            linear: vec![0.0; n],
            offset: 0.0,
        }
    }

    pub fn space(&self) -> &VariableSpace {
        &self.space
    }

    pub fn num_vars(&self) -> usize {
        self.space.len()
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn linear(&self) -> &[f64] {
        &self.linear
    }

    pub fn quadratic(&self, i: usize, j: usize) -> f64 {
        let key = if i <= j { (i, j) } else { (j, i) };
        self.quad.get(&key).copied().unwrap_or(0.0)
    }

    /// Stored upper-triangular entries `(i, j, Q_ij)` with `i <= j`.
    pub fn quadratic_terms(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.quad.iter().map(|(&(i, j), &v)| (i, j, v))
    }

    pub fn is_qubo(&self) -> bool {
        self.space.is_binary()
    }

    pub fn add_offset(&mut self, value: f64) {
        self.offset += value;
    }

    pub fn add_linear(&mut self, i: usize, value: f64) -> Result<(), ModelError> {
        self.space.check_index(i)?;
        self.linear[i] += value;
        Ok(())
    }

    /// Adds `value * x_i * x_j`; the pair is stored with `i <= j`.
    pub fn add_quadratic(&mut self, i: usize, j: usize, value: f64) -> Result<(), ModelError> {
        self.space.check_index(i)?;
        self.space.check_index(j)?;
        let key = if i <= j { (i, j) } else { (j, i) };
        accumulate(&mut self.quad, key, value);
        prune(&mut self.quad, &key);
        Ok(())
    }

    /// Appends variables with zero coefficients.
    pub fn extend_space(&mut self, dims: &[usize]) -> Result<(), ModelError> {
        self.space.extend(dims)?;
        self.linear.resize(self.space.len(), 0.0);
        Ok(())
    }

    pub fn set_names(&mut self, names: Vec<String>) -> Result<(), ModelError> {
        self.space.set_names(names)
    }

    /// Sums `other` into `self`. Both models must share the same dimensions.
    pub fn merge(&mut self, other: &QudoModel) -> Result<(), ModelError> {
        if !self.space.same_dims(&other.space) {
            return Err(ModelError::SpaceMismatch);
        }
        self.offset += other.offset;
        for (a, b) in self.linear.iter_mut().zip(&other.linear) {
            *a += b;
        }
        for (&key, &value) in &other.quad {
            accumulate(&mut self.quad, key, value);
            prune(&mut self.quad, &key);
        }
        Ok(())
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        out.offset *= factor;
        out.linear.iter_mut().for_each(|v| *v *= factor);
        out.quad.values_mut().for_each(|v| *v *= factor);
        out.quad.retain(|_, v| *v != 0.0);
        out
    }

    /// Dense upper-triangular `Q` (lower triangle left at zero).
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.num_vars();
        let mut dense = vec![vec![0.0; n]; n];
        for (&(i, j), &v) in &self.quad {
            dense[i][j] = v;
        }
        dense
    }

    pub fn evaluate(&self, x: &Assignment) -> Result<f64, ModelError> {
        self.space.validate(x)?;
        Ok(self.cost(x.values()))
    }

    /// Unchecked evaluation; `values` must be valid for the space.
    pub fn cost(&self, values: &[usize]) -> f64 {
        let mut total = self.offset;
        for (&(i, j), &q) in &self.quad {
            total += q * (values[i] as f64) * (values[j] as f64);
        }
        for (&d, &v) in self.linear.iter().zip(values) {
            total += d * v as f64;
        }
        total
    }
}

/// Pairwise value-dependent cost tensor: `offset + sum_{i<=j} Q[i, j, x_i, x_j]`.
///
/// Keys are stored with `i <= j`; diagonal keys have `a == b`.
#[derive(Debug, Clone, PartialEq)]
pub struct TQudoModel {
    space: VariableSpace,
    entries: BTreeMap<(usize, usize, usize, usize), f64>,
    offset: f64,
}

impl TQudoModel {
    pub fn new(space: VariableSpace) -> Self {
        Self {
            space,
            entries: BTreeMap::new(),
            offset: 0.0,
        }
    }

    pub fn space(&self) -> &VariableSpace {
        &self.space
    }

    pub fn num_vars(&self) -> usize {
        self.space.len()
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn add_offset(&mut self, value: f64) {
        self.offset += value;
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize, usize, usize), f64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn num_entries(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize, a: usize, b: usize) -> f64 {
        let key = if i <= j { (i, j, a, b) } else { (j, i, b, a) };
        self.entries.get(&key).copied().unwrap_or(0.0)
    }

    /// Adds `value` to the entry for `x_i == a && x_j == b`.
    pub fn add_entry(
        &mut self,
        i: usize,
        j: usize,
        a: usize,
        b: usize,
        value: f64,
    ) -> Result<(), ModelError> {
        self.space.check_value(i, a)?;
        self.space.check_value(j, b)?;
        if i == j && a != b {
            return Err(ModelError::OffDiagonalValues { index: i, a, b });
        }
        let key = if i <= j { (i, j, a, b) } else { (j, i, b, a) };
        accumulate(&mut self.entries, key, value);
        prune(&mut self.entries, &key);
        Ok(())
    }

    /// Adds `value` to the single-variable entry for `x_i == a`.
    pub fn add_diagonal(&mut self, i: usize, a: usize, value: f64) -> Result<(), ModelError> {
        self.add_entry(i, i, a, a, value)
    }

    pub fn extend_space(&mut self, dims: &[usize]) -> Result<(), ModelError> {
        self.space.extend(dims)
    }

    pub fn set_names(&mut self, names: Vec<String>) -> Result<(), ModelError> {
        self.space.set_names(names)
    }

    pub fn merge(&mut self, other: &TQudoModel) -> Result<(), ModelError> {
        if !self.space.same_dims(&other.space) {
            return Err(ModelError::SpaceMismatch);
        }
        self.offset += other.offset;
        for (&key, &value) in &other.entries {
            accumulate(&mut self.entries, key, value);
            prune(&mut self.entries, &key);
        }
        Ok(())
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        out.offset *= factor;
        out.entries.values_mut().for_each(|v| *v *= factor);
        out.entries.retain(|_, v| *v != 0.0);
        out
    }

    pub fn evaluate(&self, x: &Assignment) -> Result<f64, ModelError> {
        self.space.validate(x)?;
        Ok(self.cost(x.values()))
    }

    pub fn cost(&self, values: &[usize]) -> f64 {
        let mut total = self.offset;
        for (&(i, j, a, b), &v) in &self.entries {
            if values[i] == a && values[j] == b {
                total += v;
            }
        }
        total
    }
}

/// Polynomial over binary variables, keyed by canonical monomials
/// (sorted, duplicate-free index sets; the empty key is the constant).
#[derive(Debug, Clone, PartialEq)]
pub struct HoboModel {
    num_vars: usize,
    terms: BTreeMap<Vec<usize>, f64>,
    max_order: usize,
}

impl HoboModel {
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            terms: BTreeMap::new(),
            max_order: 0,
        }
    }

    pub fn from_terms<I, K>(num_vars: usize, terms: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = (K, f64)>,
        K: AsRef<[usize]>,
    {
        let mut model = Self::new(num_vars);
        for (key, value) in terms {
            model.add_term(key.as_ref(), value)?;
        }
        Ok(model)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], f64)> + '_ {
        self.terms.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    /// Coefficient of the monomial over `indices` (canonicalized first).
    pub fn coefficient(&self, indices: &[usize]) -> f64 {
        self.terms
            .get(&canonical_monomial(indices))
            .copied()
            .unwrap_or(0.0)
    }

    pub fn constant(&self) -> f64 {
        self.coefficient(&[])
    }

    /// Adds `value * prod_{i in indices} x_i`. Repeated indices collapse
    /// because `x_i^2 == x_i`.
    pub fn add_term(&mut self, indices: &[usize], value: f64) -> Result<(), ModelError> {
        if let Some(&index) = indices.iter().find(|&&i| i >= self.num_vars) {
            return Err(ModelError::IndexOutOfRange {
                index,
                num_vars: self.num_vars,
            });
        }
        self.add_canonical(canonical_monomial(indices), value);
        Ok(())
    }

    pub(crate) fn add_canonical(&mut self, key: Vec<usize>, value: f64) {
        if value == 0.0 {
            return;
        }
        let order = key.len();
        let entry = self.terms.entry(key.clone()).or_insert(0.0);
        *entry += value;
        if *entry == 0.0 {
            self.terms.remove(&key);
            if order == self.max_order {
                self.max_order = self.terms.keys().map(Vec::len).max().unwrap_or(0);
            }
        } else if order > self.max_order {
            self.max_order = order;
        }
    }

    pub fn merge(&mut self, other: &HoboModel) -> Result<(), ModelError> {
        if self.num_vars != other.num_vars {
            return Err(ModelError::SpaceMismatch);
        }
        for (key, &value) in &other.terms {
            self.add_canonical(key.clone(), value);
        }
        Ok(())
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = Self::new(self.num_vars);
        for (key, &value) in &self.terms {
            out.add_canonical(key.clone(), value * factor);
        }
        out
    }

    pub fn evaluate(&self, x: &Assignment) -> Result<f64, ModelError> {
        check_values(&vec![2; self.num_vars], x.values()).map_err(|e| match e {
            ModelError::ValueOutOfRange { index, .. } => ModelError::NotBinary {
                index,
                dim: x.values()[index] + 1,
            },
            other => other,
        })?;
        Ok(self.cost(x.values()))
    }

    pub fn cost(&self, values: &[usize]) -> f64 {
        self.terms
            .iter()
            .filter(|(key, _)| key.iter().all(|&i| values[i] != 0))
            .map(|(_, &v)| v)
            .sum()
    }
}

pub(crate) fn canonical_monomial(indices: &[usize]) -> Vec<usize> {
    let mut key = indices.to_vec();
    key.sort_unstable();
    key.dedup();
    key
}

/// The formalism tag of a [`Model`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Formalism {
    Qubo,
    Qudo,
    Tqudo,
    Hobo,
}

impl std::fmt::Display for Formalism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Formalism::Qubo => "QUBO",
            Formalism::Qudo => "QUDO",
            Formalism::Tqudo => "T-QUDO",
            Formalism::Hobo => "HOBO",
        };
        f.write_str(name)
    }
}

/// Any of the supported formalisms.
#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    Qudo(QudoModel),
    TQudo(TQudoModel),
    Hobo(HoboModel),
}

impl Model {
    pub fn formalism(&self) -> Formalism {
        match self {
            Model::Qudo(m) if m.is_qubo() => Formalism::Qubo,
            Model::Qudo(_) => Formalism::Qudo,
            Model::TQudo(_) => Formalism::Tqudo,
            Model::Hobo(_) => Formalism::Hobo,
        }
    }

    pub fn num_vars(&self) -> usize {
        match self {
            Model::Qudo(m) => m.num_vars(),
            Model::TQudo(m) => m.num_vars(),
            Model::Hobo(m) => m.num_vars(),
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        match self {
            Model::Qudo(m) => m.space().dims().to_vec(),
            Model::TQudo(m) => m.space().dims().to_vec(),
            Model::Hobo(m) => vec![2; m.num_vars()],
        }
    }

    pub fn names(&self) -> Option<&[String]> {
        match self {
            Model::Qudo(m) => m.space().names(),
            Model::TQudo(m) => m.space().names(),
            Model::Hobo(_) => None,
        }
    }

    pub fn evaluate(&self, x: &Assignment) -> Result<f64, ModelError> {
        match self {
            Model::Qudo(m) => m.evaluate(x),
            Model::TQudo(m) => m.evaluate(x),
            Model::Hobo(m) => m.evaluate(x),
        }
    }

    pub fn cost(&self, values: &[usize]) -> f64 {
        match self {
            Model::Qudo(m) => m.cost(values),
            Model::TQudo(m) => m.cost(values),
            Model::Hobo(m) => m.cost(values),
        }
    }
}

impl From<QudoModel> for Model {
    fn from(m: QudoModel) -> Self {
        Model::Qudo(m)
    }
}

impl From<TQudoModel> for Model {
    fn from(m: TQudoModel) -> Self {
        Model::TQudo(m)
    }
}

impl From<HoboModel> for Model {
    fn from(m: HoboModel) -> Self {
        Model::Hobo(m)
    }
}

/// Embeds a QUDO model as a tensor model with
/// `Q[i, j, a, b] = Q_ij a b` and `Q[i, i, a, a] = D_i a + Q_ii a^2`.
pub fn qudo_to_tqudo(model: &QudoModel) -> TQudoModel {
    let space = model.space().clone();
    let mut out = TQudoModel::new(space.clone());
    out.offset = model.offset;
    for i in 0..space.len() {
        let d = model.linear[i];
        let q = model.quadratic(i, i);
        for a in 1..space.dim(i) {
            let a_f = a as f64;
            let value = d * a_f + q * a_f * a_f;
            accumulate(&mut out.entries, (i, i, a, a), value);
        }
    }
    for (&(i, j), &q) in &model.quad {
        if i == j {
            continue;
        }
        for a in 1..space.dim(i) {
            for b in 1..space.dim(j) {
                accumulate(&mut out.entries, (i, j, a, b), q * (a as f64) * (b as f64));
            }
        }
    }
    out.entries.retain(|_, v| *v != 0.0);
    out
}

/// Reads a binary QUDO (QUBO) model as a polynomial, folding `x_i^2` into `x_i`.
pub fn qubo_to_hobo(model: &QudoModel) -> Result<HoboModel, ModelError> {
    if let Some((index, &dim)) = model.space().dims().iter().enumerate().find(|(_, &d)| d != 2) {
        return Err(ModelError::NotBinary { index, dim });
    }
    let mut out = HoboModel::new(model.num_vars());
    out.add_canonical(Vec::new(), model.offset);
    for (i, &d) in model.linear.iter().enumerate() {
        out.add_canonical(vec![i], d);
    }
    for (&(i, j), &q) in &model.quad {
        out.add_canonical(canonical_monomial(&[i, j]), q);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(dims: &[usize]) -> VariableSpace {
        VariableSpace::new(dims.to_vec()).unwrap()
    }

    #[test]
    fn qudo_single_product_term() {
        let mut m = QudoModel::new(space(&[3, 3]));
        m.add_quadratic(0, 1, 1.0).unwrap();
        assert_eq!(m.evaluate(&vec![2, 2].into()).unwrap(), 4.0);
    }

    #[test]
    fn qudo_zero_assignment_gives_offset() {
        let mut m = QudoModel::new(space(&[3, 4, 2]));
        m.add_quadratic(0, 2, 1.5).unwrap();
        m.add_linear(1, -2.0).unwrap();
        m.add_offset(7.25);
        assert_eq!(m.evaluate(&Assignment::zeros(3)).unwrap(), 7.25);
    }

    #[test]
    fn qudo_binary_direct_sum() {
        let mut m = QudoModel::new(space(&[2, 2]));
        m.add_quadratic(0, 0, 1.0).unwrap();
        m.add_quadratic(0, 1, 2.0).unwrap();
        m.add_quadratic(1, 1, 3.0).unwrap();
        assert_eq!(m.evaluate(&vec![1, 1].into()).unwrap(), 6.0);
    }

    #[test]
    fn qudo_rejects_bad_assignments() {
        let m = QudoModel::new(space(&[3, 3]));
        assert!(matches!(
            m.evaluate(&vec![1].into()),
            Err(ModelError::LengthMismatch { .. })
        ));
        assert!(matches!(
            m.evaluate(&vec![1, 3].into()),
            Err(ModelError::ValueOutOfRange { index: 1, .. })
        ));
    }

    #[test]
    fn space_invariants() {
        assert!(VariableSpace::new(vec![2, 1]).is_err());
        assert!(VariableSpace::with_names(vec![2, 2], vec!["a".into()]).is_err());
        assert!(VariableSpace::with_names(vec![2, 2], vec!["a".into(), "a".into()]).is_err());
        let s = VariableSpace::with_names(vec![2, 3], vec!["a".into(), "b".into()]).unwrap();
        assert_eq!(s.search_space_size(), Some(6));
    }

    #[test]
    fn tqudo_matching_and_non_matching_keys() {
        let mut m = TQudoModel::new(space(&[3, 3]));
        m.add_entry(0, 1, 2, 1, 5.0).unwrap();
        assert_eq!(m.evaluate(&vec![2, 1].into()).unwrap(), 5.0);
        assert_eq!(m.evaluate(&vec![2, 0].into()).unwrap(), 0.0);
    }

    #[test]
    fn tqudo_key_canonicalization() {
        let mut m = TQudoModel::new(space(&[3, 4]));
        m.add_entry(1, 0, 3, 2, 1.5).unwrap();
        assert_eq!(m.entry(0, 1, 2, 3), 1.5);
        assert_eq!(m.evaluate(&vec![2, 3].into()).unwrap(), 1.5);
        assert!(matches!(
            m.add_entry(0, 0, 1, 2, 1.0),
            Err(ModelError::OffDiagonalValues { .. })
        ));
        assert!(m.add_entry(0, 1, 3, 0, 1.0).is_err());
    }

    #[test]
    fn qudo_embedding_matches_example() {
        let mut m = QudoModel::new(space(&[3, 3]));
        m.add_quadratic(0, 1, 1.0).unwrap();
        let t = qudo_to_tqudo(&m);
        assert_eq!(t.evaluate(&vec![2, 2].into()).unwrap(), 4.0);
    }

    #[test]
    fn zero_qudo_embeds_to_empty_tensor() {
        let t = qudo_to_tqudo(&QudoModel::new(space(&[3, 5, 2])));
        assert_eq!(t.num_entries(), 0);
        assert_eq!(t.offset(), 0.0);
    }

    #[test]
    fn hobo_products() {
        let m = HoboModel::from_terms(3, [(vec![0, 1, 2], 2.0)]).unwrap();
        assert_eq!(m.evaluate(&vec![1, 1, 1].into()).unwrap(), 2.0);
        assert_eq!(m.evaluate(&vec![1, 0, 1].into()).unwrap(), 0.0);
        let m = HoboModel::from_terms(
            2,
            [(vec![], 1.5), (vec![0], -1.0), (vec![0, 1], 2.0)],
        )
        .unwrap();
        assert_eq!(m.evaluate(&vec![1, 1].into()).unwrap(), 2.5);
        assert!(matches!(
            m.evaluate(&vec![2, 0].into()),
            Err(ModelError::NotBinary { index: 0, .. })
        ));
    }

    #[test]
    fn hobo_canonical_keys() {
        let a = HoboModel::from_terms(2, [(vec![0, 0, 1], 3.0)]).unwrap();
        let b = HoboModel::from_terms(2, [(vec![1, 0], 3.0)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.max_order(), 2);
    }

    #[test]
    fn hobo_max_order_tracks_cancellation() {
        let mut m = HoboModel::new(3);
        m.add_term(&[0, 1, 2], 1.0).unwrap();
        m.add_term(&[0], 1.0).unwrap();
        assert_eq!(m.max_order(), 3);
        m.add_term(&[2, 1, 0], -1.0).unwrap();
        assert_eq!(m.max_order(), 1);
        assert_eq!(m.num_terms(), 1);
    }

    #[test]
    fn qubo_folding() {
        let mut m = QudoModel::new(VariableSpace::binary(2));
        m.add_quadratic(0, 0, 1.0).unwrap();
        let h = qubo_to_hobo(&m).unwrap();
        assert_eq!(h, HoboModel::from_terms(2, [(vec![0], 1.0)]).unwrap());

        let mut m = QudoModel::new(VariableSpace::binary(2));
        m.add_quadratic(0, 1, 2.0).unwrap();
        let h = qubo_to_hobo(&m).unwrap();
        assert_eq!(h, HoboModel::from_terms(2, [(vec![0, 1], 2.0)]).unwrap());

        let m = QudoModel::new(space(&[2, 3]));
        assert!(matches!(qubo_to_hobo(&m), Err(ModelError::NotBinary { index: 1, dim: 3 })));
    }

    #[test]
    fn merge_requires_same_space() {
        let mut a = QudoModel::new(space(&[2, 3]));
        let b = QudoModel::new(space(&[3, 2]));
        assert_eq!(a.merge(&b), Err(ModelError::SpaceMismatch));
    }

    #[test]
    fn dense_export() {
        let mut m = QudoModel::new(space(&[2, 2]));
        m.add_quadratic(1, 0, 2.0).unwrap();
        m.add_quadratic(1, 1, 3.0).unwrap();
        assert_eq!(m.to_dense(), vec![vec![0.0, 2.0], vec![0.0, 3.0]]);
    }
}
