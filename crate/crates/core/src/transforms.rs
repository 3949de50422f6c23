//! Cost-preserving conversions between formalisms.
//!
//! `qudo_to_qubo` substitutes every d-ary variable by a weighted sum of bits
//! using the bounded encoding (exact range `[0, d-1]`, no invalid codewords).
//! `tqudo_to_hobo` replaces each tensor entry by a product of bit indicators
//! under the plain binary code; codewords `>= d` get an explicit penalty.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::models::{Assignment, HoboModel, ModelError, QudoModel, TQudoModel, VariableSpace};
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TransformError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("invalid-codeword penalty must be positive, got {0}")]
    InvalidPenalty(f64),
    #[error("bit assignment has {got} values, encoding expects {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("bit {index} is not binary (value {value})")]
    NotBinary { index: usize, value: usize },
    #[error("variable {index} decodes to {value}, outside [0, {dim})")]
    InfeasibleCodeword { index: usize, value: usize, dim: usize },
    #[error("value {value} cannot be represented for variable {index} (dimension {dim})")]
    Unrepresentable { index: usize, value: usize, dim: usize },
    #[error("coefficients {coefficients:?} cannot represent every value below {dim}")]
    IncompleteCoefficients { dim: usize, coefficients: Vec<u64> },
}

/// A weighted mixed-radix decomposition `v = sum_k coefficient_k * digit_k`
/// with `digit_k < dim_k`, covering the contiguous range `[0, max]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundedRadix {
    coefficients: Vec<u64>,
    dims: Vec<usize>,
}

impl BoundedRadix {
    /// Digits of dimension at most `base` whose reachable sums are exactly
    /// `[0, max]`.
    ///
    /// Full base-`base` digits are taken while they fit; the remainder goes
    /// into one reduced digit when some dimension `e <= base` divides it,
    /// otherwise into two. For `base == 2` this gives
    /// `(1, 2, ..., 2^(k-2), max + 1 - 2^(k-1))` with `k = ceil(log2(max + 1))`.
    pub fn bounded(max: u64, base: usize) -> Self {
        assert!(base >= 2, "radix base must be at least 2");
        let base_u = base as u64;
        let mut coefficients = Vec::new();
        let mut dims = Vec::new();
        let mut covered = 0u64;
        while covered < max {
            let next = covered + 1;
            let remaining = max - covered;
            if remaining >= (base_u - 1) * next {
                coefficients.push(next);
                dims.push(base);
                covered += (base_u - 1) * next;
                continue;
            }
            // smallest digit range `steps` dividing the remainder whose
            // coefficient keeps the covered range contiguous
            let min_steps = remaining.div_ceil(next);
            if let Some(steps) = (min_steps..base_u).find(|s| remaining % s == 0) {
                coefficients.push(remaining / steps);
                dims.push(steps as usize + 1);
            } else {
                let steps = remaining / next;
                coefficients.push(next);
                dims.push(steps as usize + 1);
                let rest = remaining - steps * next;
                coefficients.push(rest);
                dims.push(2);
            }
            covered = max;
        }
        Self { coefficients, dims }
    }

    /// Plain base-2 digits `(1, 2, 4, ...)` with `ceil(log2(dim))` bits.
    pub fn plain_binary(dim: usize) -> Self {
        let bits = bits_for(dim);
        Self {
            coefficients: (0..bits).map(|k| 1u64 << k).collect(),
            dims: vec![2; bits],
        }
    }

    pub fn from_parts(coefficients: Vec<u64>, dims: Vec<usize>) -> Self {
        assert_eq!(coefficients.len(), dims.len());
        Self { coefficients, dims }
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coefficients
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Largest representable value.
    pub fn max(&self) -> u64 {
        self.coefficients
            .iter()
            .zip(&self.dims)
            .map(|(&c, &d)| c * (d as u64 - 1))
            .sum()
    }

    pub fn decode(&self, digits: &[usize]) -> u64 {
        self.coefficients
            .iter()
            .zip(digits)
            .map(|(&c, &x)| c * x as u64)
            .sum()
    }

    /// Greedy digit choice from the top coefficient down. Returns `None`
    /// when `value` has no representation.
    pub fn encode(&self, value: u64) -> Option<Vec<usize>> {
        let mut digits = vec![0; self.len()];
        let mut rem = value;
        for k in (0..self.len()).rev() {
            let c = self.coefficients[k];
            if c == 0 {
                continue;
            }
            let take = (rem / c).min(self.dims[k] as u64 - 1);
            digits[k] = take as usize;
            rem -= take * c;
        }
        (rem == 0).then_some(digits)
    }
}

fn bits_for(dim: usize) -> usize {
    let mut bits = 0;
    while (1usize << bits) < dim {
        bits += 1;
    }
    bits.max(1)
}

/// Which binary code an encoding uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum EncodingScheme {
    /// Exact-range code; every bit pattern is a valid value.
    Bounded,
    /// Powers of two; patterns `>= d` are infeasible.
    Binary,
    /// User-supplied coefficients.
    Custom,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VariableEncoding {
    pub source_dim: usize,
    pub coefficients: Vec<u64>,
    pub first_bit: usize,
}

impl VariableEncoding {
    pub fn bits(&self) -> std::ops::Range<usize> {
        self.first_bit..self.first_bit + self.coefficients.len()
    }

    fn value_of(&self, bits: &[usize]) -> usize {
        self.coefficients
            .iter()
            .zip(bits)
            .map(|(&c, &b)| c as usize * b)
            .sum()
    }
}

/// Mapping from d-ary variables to contiguous bit ranges of a binary model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BinaryEncoding {
    pub scheme: EncodingScheme,
    pub variables: Vec<VariableEncoding>,
}

impl BinaryEncoding {
    pub fn bounded(dims: &[usize]) -> Self {
        Self::build(EncodingScheme::Bounded, dims, |d| {
            BoundedRadix::bounded(d as u64 - 1, 2).coefficients
        })
    }

    pub fn plain_binary(dims: &[usize]) -> Self {
        Self::build(EncodingScheme::Binary, dims, |d| {
            BoundedRadix::plain_binary(d).coefficients
        })
    }

    /// Arbitrary per-variable coefficients. Every value below the source
    /// dimension must be reachable.
    pub fn custom(vars: Vec<(usize, Vec<u64>)>) -> Result<Self, TransformError> {
        let mut variables = Vec::with_capacity(vars.len());
        let mut first_bit = 0;
        for (source_dim, coefficients) in vars {
            let radix = BoundedRadix::from_parts(coefficients.clone(), vec![2; coefficients.len()]);
            if (0..source_dim as u64).any(|v| !reachable(&radix, v)) {
                return Err(TransformError::IncompleteCoefficients {
                    dim: source_dim,
                    coefficients,
                });
            }
            let len = coefficients.len();
            variables.push(VariableEncoding {
                source_dim,
                coefficients,
                first_bit,
            });
            first_bit += len;
        }
        Ok(Self {
            scheme: EncodingScheme::Custom,
            variables,
        })
    }

    fn build(scheme: EncodingScheme, dims: &[usize], coefficients: impl Fn(usize) -> Vec<u64>) -> Self {
        let mut first_bit = 0;
        let variables = dims
            .iter()
            .map(|&d| {
                let coefficients = coefficients(d);
                let var = VariableEncoding {
                    source_dim: d,
                    first_bit,
                    coefficients,
                };
                first_bit += var.coefficients.len();
                var
            })
            .collect();
        Self { scheme, variables }
    }

    pub fn num_source_vars(&self) -> usize {
        self.variables.len()
    }

    pub fn num_bits(&self) -> usize {
        self.variables
            .last()
            .map(|v| v.first_bit + v.coefficients.len())
            .unwrap_or(0)
    }

    pub fn source_dims(&self) -> Vec<usize> {
        self.variables.iter().map(|v| v.source_dim).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.variables
            .iter()
            .all(|v| v.source_dim == 2 && v.coefficients == [1])
    }

    /// Canonical bit pattern for each source value.
    pub fn encode(&self, x: &Assignment) -> Result<Assignment, TransformError> {
        if x.len() != self.variables.len() {
            return Err(ModelError::LengthMismatch {
                expected: self.variables.len(),
                got: x.len(),
            }
            .into());
        }
        let mut bits = Vec::with_capacity(self.num_bits());
        for (index, (var, &value)) in self.variables.iter().zip(x.values()).enumerate() {
            if value >= var.source_dim {
                return Err(ModelError::ValueOutOfRange {
                    index,
                    value,
                    dim: var.source_dim,
                }
                .into());
            }
            let radix = BoundedRadix::from_parts(var.coefficients.clone(), vec![2; var.coefficients.len()]);
            let digits = encode_exact(&radix, value as u64).ok_or(TransformError::Unrepresentable {
                index,
                value,
                dim: var.source_dim,
            })?;
            bits.extend(digits);
        }
        Ok(Assignment::new(bits))
    }

    /// All bit patterns of `var` that decode to `value`.
    pub fn codewords(&self, var: usize, value: usize) -> Vec<Vec<usize>> {
        let v = &self.variables[var];
        all_patterns(v.coefficients.len())
            .filter(|p| v.value_of(p) == value)
            .collect()
    }

    /// Bit patterns of `var` whose decoded value falls outside the source range.
    pub fn invalid_codewords(&self, var: usize) -> Vec<Vec<usize>> {
        let v = &self.variables[var];
        all_patterns(v.coefficients.len())
            .filter(|p| v.value_of(p) >= v.source_dim)
            .collect()
    }
}

fn reachable(radix: &BoundedRadix, value: u64) -> bool {
    encode_exact(radix, value).is_some()
}

/// Exact search over binary digits; greedy is not complete for arbitrary
/// coefficient lists.
fn encode_exact(radix: &BoundedRadix, value: u64) -> Option<Vec<usize>> {
    if let Some(d) = radix.encode(value) {
        return Some(d);
    }
    all_patterns(radix.len()).find(|p| radix.decode(p) == value)
}

fn all_patterns(bits: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..1usize << bits).map(move |m| (0..bits).map(|k| (m >> k) & 1).collect())
}

/// Every value's codewords per variable, the bit patterns that identify it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneHotMask {
    patterns: Vec<Vec<Vec<Vec<usize>>>>,
}

impl OneHotMask {
    pub fn new(encoding: &BinaryEncoding) -> Self {
        let patterns = encoding
            .variables
            .iter()
            .enumerate()
            .map(|(i, v)| (0..v.source_dim).map(|a| encoding.codewords(i, a)).collect())
            .collect();
        Self { patterns }
    }

    pub fn patterns(&self, var: usize, value: usize) -> &[Vec<usize>] {
        &self.patterns[var][value]
    }
}

/// Result of decoding bits back into source values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodedAssignment {
    pub values: Vec<usize>,
    /// Source variables whose bits decode outside their dimension.
    pub infeasible: Vec<usize>,
}

impl DecodedAssignment {
    pub fn is_feasible(&self) -> bool {
        self.infeasible.is_empty()
    }

    pub fn into_assignment(self, encoding: &BinaryEncoding) -> Result<Assignment, TransformError> {
        if let Some(&index) = self.infeasible.first() {
            return Err(TransformError::InfeasibleCodeword {
                index,
                value: self.values[index],
                dim: encoding.variables[index].source_dim,
            });
        }
        Ok(Assignment::new(self.values))
    }
}

pub fn decode_assignment(
    encoding: &BinaryEncoding,
    y: &Assignment,
) -> Result<DecodedAssignment, TransformError> {
    if y.len() != encoding.num_bits() {
        return Err(TransformError::LengthMismatch {
            expected: encoding.num_bits(),
            got: y.len(),
        });
    }
    if let Some((index, &value)) = y.values().iter().enumerate().find(|(_, &b)| b > 1) {
        return Err(TransformError::NotBinary { index, value });
    }
    let mut values = Vec::with_capacity(encoding.variables.len());
    let mut infeasible = Vec::new();
    for (i, var) in encoding.variables.iter().enumerate() {
        let value = var.value_of(&y.values()[var.bits()]);
        if value >= var.source_dim {
            infeasible.push(i);
        }
        values.push(value);
    }
    Ok(DecodedAssignment { values, infeasible })
}

fn bit_names(space: &VariableSpace, encoding: &BinaryEncoding) -> Option<Vec<String>> {
    let names = space.names()?;
    let mut out = Vec::with_capacity(encoding.num_bits());
    for (name, var) in names.iter().zip(&encoding.variables) {
        if var.coefficients.len() == 1 {
            out.push(name.clone());
        } else {
            out.extend((0..var.coefficients.len()).map(|k| format!("{name}#{k}")));
        }
    }
    Some(out)
}

/// Binarizes a QUDO model: `x_i = sum_k c_ik y_ik` under the bounded encoding.
pub fn qudo_to_qubo(model: &QudoModel) -> Result<(QudoModel, BinaryEncoding), TransformError> {
    let encoding = BinaryEncoding::bounded(model.space().dims());
    let mut space = VariableSpace::binary(encoding.num_bits());
    if let Some(names) = bit_names(model.space(), &encoding) {
        space.set_names(names)?;
    }
    let mut out = QudoModel::new(space);
    out.add_offset(model.offset());
    let vars = &encoding.variables;
    for (i, &d) in model.linear().iter().enumerate() {
        for (k, &c) in vars[i].coefficients.iter().enumerate() {
            out.add_linear(vars[i].first_bit + k, d * c as f64)?;
        }
    }
    for (i, j, q) in model.quadratic_terms() {
        let (vi, vj) = (&vars[i], &vars[j]);
        if i == j {
            for (k, &ck) in vi.coefficients.iter().enumerate() {
                let bk = vi.first_bit + k;
                out.add_quadratic(bk, bk, q * (ck * ck) as f64)?;
                for (l, &cl) in vi.coefficients.iter().enumerate().skip(k + 1) {
                    out.add_quadratic(bk, vi.first_bit + l, 2.0 * q * (ck * cl) as f64)?;
                }
            }
        } else {
            for (k, &ck) in vi.coefficients.iter().enumerate() {
                for (l, &cl) in vj.coefficients.iter().enumerate() {
                    out.add_quadratic(vi.first_bit + k, vj.first_bit + l, q * (ck * cl) as f64)?;
                }
            }
        }
    }
    Ok((out, encoding))
}

/// Indicator polynomial `prod_k (y_k or 1 - y_k)` selecting one bit pattern.
fn pattern_indicator(first_bit: usize, pattern: &[usize]) -> Polynomial {
    pattern
        .iter()
        .enumerate()
        .fold(Polynomial::constant(1.0), |acc, (k, &bit)| {
            let factor = if bit == 1 {
                Polynomial::var(first_bit + k)
            } else {
                Polynomial::not_var(first_bit + k)
            };
            acc * factor
        })
}

/// Default penalty for invalid codewords: `1 + sum |entries|`.
///
/// Any assignment with invalid codewords can be repaired variable by variable;
/// the repair changes the cost by at most the magnitude of the entries it
/// activates minus the removed penalty, so the repaired assignment is cheaper.
pub fn default_invalid_penalty(model: &TQudoModel) -> f64 {
    1.0 + model.entries().map(|(_, v)| v.abs()).sum::<f64>()
}

/// Rewrites a tensor model over binary-coded qudits as a HOBO polynomial.
///
/// Entry `(i, j, a, b) -> v` becomes `v * Ind_i(a) * Ind_j(b)`. For
/// non-power-of-two dimensions each unused codeword `c` adds
/// `invalid_penalty * Ind_i(c)`. `None` selects [`default_invalid_penalty`].
pub fn tqudo_to_hobo(
    model: &TQudoModel,
    invalid_penalty: Option<f64>,
) -> Result<(HoboModel, BinaryEncoding), TransformError> {
    let dims = model.space().dims();
    let encoding = BinaryEncoding::plain_binary(dims);
    let penalty = match invalid_penalty {
        Some(p) => p,
        None => default_invalid_penalty(model),
    };
    let needs_penalty = dims.iter().any(|&d| !d.is_power_of_two());
    if needs_penalty && !(penalty > 0.0) {
        return Err(TransformError::InvalidPenalty(penalty));
    }

    // indicator polynomials per (variable, value), plain binary code is unique
    let indicators: Vec<Vec<Polynomial>> = encoding
        .variables
        .iter()
        .enumerate()
        .map(|(i, var)| {
            (0..var.source_dim)
                .map(|a| {
                    let pattern = &encoding.codewords(i, a)[0];
                    pattern_indicator(var.first_bit, pattern)
                })
                .collect()
        })
        .collect();

    let mut out = HoboModel::new(encoding.num_bits());
    out.add_term(&[], model.offset())?;
    for ((i, j, a, b), v) in model.entries() {
        let poly = if i == j {
            indicators[i][a].scale(v)
        } else {
            (&indicators[i][a] * &indicators[j][b]).scale(v)
        };
        poly.add_to(&mut out)?;
    }
    if needs_penalty {
        for (i, var) in encoding.variables.iter().enumerate() {
            for pattern in encoding.invalid_codewords(i) {
                pattern_indicator(var.first_bit, &pattern)
                    .scale(penalty)
                    .add_to(&mut out)?;
            }
        }
    }
    Ok((out, encoding))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounded_binary_coefficients() {
        assert_eq!(BoundedRadix::bounded(1, 2).coefficients(), &[1]);
        assert_eq!(BoundedRadix::bounded(2, 2).coefficients(), &[1, 1]);
        assert_eq!(BoundedRadix::bounded(3, 2).coefficients(), &[1, 2]);
        assert_eq!(BoundedRadix::bounded(4, 2).coefficients(), &[1, 2, 1]);
        assert_eq!(BoundedRadix::bounded(5, 2).coefficients(), &[1, 2, 2]);
        assert_eq!(BoundedRadix::bounded(7, 2).coefficients(), &[1, 2, 4]);
        assert!(BoundedRadix::bounded(0, 2).is_empty());
    }

    #[test]
    fn bounded_radix_covers_exact_range() {
        for base in 2..=6usize {
            for max in 0..=80u64 {
                let r = BoundedRadix::bounded(max, base);
                assert_eq!(r.max(), max, "base {base} max {max}");
                assert!(r.dims().iter().all(|&d| (2..=base).contains(&d)));
                for v in 0..=max {
                    let digits = r.encode(v).expect("representable");
                    assert_eq!(r.decode(&digits), v);
                }
            }
        }
    }

    #[test]
    fn bounded_radix_uses_minimal_digit_count_in_base_two() {
        for max in 1..=200u64 {
            let expected = 64 - max.leading_zeros() as usize; // ceil(log2(max + 1))
            assert_eq!(BoundedRadix::bounded(max, 2).len(), expected);
        }
    }

    #[test]
    fn bounded_decode_of_degenerate_codeword() {
        let enc = BinaryEncoding::bounded(&[3]);
        assert_eq!(enc.variables[0].coefficients, vec![1, 1]);
        let d = decode_assignment(&enc, &vec![1, 1].into()).unwrap();
        assert_eq!(d.values, vec![2]);
        assert!(d.is_feasible());
    }

    #[test]
    fn plain_binary_flags_out_of_range() {
        let enc = BinaryEncoding::custom(vec![(3, vec![1, 2])]).unwrap();
        let d = decode_assignment(&enc, &vec![1, 1].into()).unwrap();
        assert_eq!(d.values, vec![3]);
        assert!(!d.is_feasible());
        assert!(matches!(
            d.into_assignment(&enc),
            Err(TransformError::InfeasibleCodeword { index: 0, value: 3, dim: 3 })
        ));
    }

    #[test]
    fn custom_rejects_incomplete_coefficients() {
        assert!(BinaryEncoding::custom(vec![(4, vec![2, 2])]).is_err());
    }

    #[test]
    fn decode_rejects_bad_bits() {
        let enc = BinaryEncoding::bounded(&[4]);
        assert!(matches!(
            decode_assignment(&enc, &vec![1].into()),
            Err(TransformError::LengthMismatch { .. })
        ));
        assert!(matches!(
            decode_assignment(&enc, &vec![0, 2].into()),
            Err(TransformError::NotBinary { index: 1, value: 2 })
        ));
    }

    #[test]
    fn round_trip_every_scheme() {
        let dims = [2, 3, 4, 5, 7, 8];
        for enc in [BinaryEncoding::bounded(&dims), BinaryEncoding::plain_binary(&dims)] {
            let mut x = vec![0; dims.len()];
            loop {
                let y = enc.encode(&x.clone().into()).unwrap();
                let d = decode_assignment(&enc, &y).unwrap();
                assert!(d.is_feasible());
                assert_eq!(d.values, x);
                // odometer
                let mut k = 0;
                while k < dims.len() {
                    x[k] += 1;
                    if x[k] < dims[k] {
                        break;
                    }
                    x[k] = 0;
                    k += 1;
                }
                if k == dims.len() {
                    break;
                }
            }
        }
    }

    #[test]
    fn one_hot_patterns_differ() {
        let enc = BinaryEncoding::bounded(&[3, 5]);
        let mask = OneHotMask::new(&enc);
        for var in 0..2 {
            let d = enc.variables[var].source_dim;
            for a in 0..d {
                assert!(!mask.patterns(var, a).is_empty());
                for b in 0..a {
                    for p in mask.patterns(var, a) {
                        assert!(!mask.patterns(var, b).contains(p));
                    }
                }
            }
        }
        // value 1 of a (1, 1) variable has two codewords
        assert_eq!(mask.patterns(0, 1).len(), 2);
    }

    #[test]
    fn binary_qudo_is_unchanged() {
        let mut m = QudoModel::new(VariableSpace::binary(3));
        m.add_quadratic(0, 0, 1.5).unwrap();
        m.add_quadratic(0, 2, -2.0).unwrap();
        m.add_linear(1, 4.0).unwrap();
        m.add_offset(0.5);
        let (q, enc) = qudo_to_qubo(&m).unwrap();
        assert!(enc.is_identity());
        assert_eq!(q, m);
    }

    #[test]
    fn power_of_two_linear_expansion() {
        let mut m = QudoModel::new(VariableSpace::new(vec![4]).unwrap());
        m.add_linear(0, 1.0).unwrap();
        let (q, enc) = qudo_to_qubo(&m).unwrap();
        let y = enc.encode(&vec![3].into()).unwrap();
        assert_eq!(y.values(), &[1, 1]);
        assert_eq!(q.evaluate(&y).unwrap(), 3.0);
    }

    #[test]
    fn single_bit_diagonal_entry() {
        let mut t = TQudoModel::new(VariableSpace::binary(1));
        t.add_entry(0, 0, 1, 1, 3.0).unwrap();
        let (h, _) = tqudo_to_hobo(&t, None).unwrap();
        assert_eq!(h, HoboModel::from_terms(1, [(vec![0], 3.0)]).unwrap());
    }

    #[test]
    fn zero_zero_indicator_expansion() {
        let mut t = TQudoModel::new(VariableSpace::binary(2));
        t.add_entry(0, 1, 0, 0, 2.0).unwrap();
        let (h, _) = tqudo_to_hobo(&t, None).unwrap();
        let expected = HoboModel::from_terms(
            2,
            [(vec![], 2.0), (vec![0], -2.0), (vec![1], -2.0), (vec![0, 1], 2.0)],
        )
        .unwrap();
        assert_eq!(h, expected);
        for (y0, y1) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let want = if y0 == 0 && y1 == 0 { 2.0 } else { 0.0 };
            assert_eq!(h.evaluate(&vec![y0, y1].into()).unwrap(), want);
        }
    }

    #[test]
    fn non_positive_penalty_rejected_when_needed() {
        let t = TQudoModel::new(VariableSpace::new(vec![3]).unwrap());
        assert!(matches!(
            tqudo_to_hobo(&t, Some(0.0)),
            Err(TransformError::InvalidPenalty(_))
        ));
        let t = TQudoModel::new(VariableSpace::new(vec![4]).unwrap());
        assert!(tqudo_to_hobo(&t, Some(0.0)).is_ok());
    }
}
