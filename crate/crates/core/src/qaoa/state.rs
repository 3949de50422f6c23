use num_complex::Complex64;

use super::QaoaError;

/// Largest register (product of qudit dimensions) the simulator accepts.
pub const REGISTER_LIMIT: usize = 1 << 14;

/// Mixed-radix statevector; qudit 0 is the least significant digit of the
/// basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct QuditState {
    dims: Vec<usize>,
    strides: Vec<usize>,
    amps: Vec<Complex64>,
}

pub(crate) fn register_size(dims: &[usize]) -> Result<usize, QaoaError> {
    let total = dims.iter().try_fold(1u128, |acc, &d| acc.checked_mul(d as u128));
    match total {
        Some(t) if t <= REGISTER_LIMIT as u128 => Ok(t as usize),
        Some(t) => Err(QaoaError::RegisterTooLarge {
            total: t.to_string(),
            limit: REGISTER_LIMIT,
        }),
        None => Err(QaoaError::RegisterTooLarge {
            total: "more than 2^128".into(),
            limit: REGISTER_LIMIT,
        }),
    }
}

impl QuditState {
    fn empty(dims: &[usize]) -> Result<Self, QaoaError> {
        if let Some(index) = dims.iter().position(|&d| d < 2) {
            return Err(QaoaError::Dimension { qudit: index, dim: dims[index] });
        }
        let size = register_size(dims)?;
        let mut strides = Vec::with_capacity(dims.len());
        let mut s = 1;
        for &d in dims {
            strides.push(s);
            s *= d;
        }
        Ok(Self {
            dims: dims.to_vec(),
            strides,
            amps: vec![Complex64::new(0.0, 0.0); size],
        })
    }

    pub fn basis(dims: &[usize], values: &[usize]) -> Result<Self, QaoaError> {
        let mut state = Self::empty(dims)?;
        if values.len() != dims.len() {
            return Err(QaoaError::LengthMismatch {
                expected: dims.len(),
                got: values.len(),
            });
        }
        for (q, (&v, &d)) in values.iter().zip(dims).enumerate() {
            if v >= d {
                return Err(QaoaError::ValueOutOfRange { qudit: q, value: v, dim: d });
            }
        }
        let idx = state.index_of(values);
        state.amps[idx] = Complex64::new(1.0, 0.0);
        Ok(state)
    }

    /// Equal superposition of all basis states.
    pub fn uniform(dims: &[usize]) -> Result<Self, QaoaError> {
        let mut state = Self::empty(dims)?;
        let a = 1.0 / (state.amps.len() as f64).sqrt();
        state.amps.fill(Complex64::new(a, 0.0));
        Ok(state)
    }

    /// Takes `amps` as given; fails unless the norm is 1 within `1e-10`.
    pub fn from_amplitudes(dims: &[usize], amps: Vec<Complex64>) -> Result<Self, QaoaError> {
        let mut state = Self::empty(dims)?;
        if amps.len() != state.amps.len() {
            return Err(QaoaError::LengthMismatch {
                expected: state.amps.len(),
                got: amps.len(),
            });
        }
        state.amps = amps;
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(QaoaError::NotNormalized(norm));
        }
        Ok(state)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn num_qudits(&self) -> usize {
        self.dims.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub(crate) fn stride(&self, qudit: usize) -> usize {
        self.strides[qudit]
    }

    /// Value of `qudit` in basis state `index`.
    pub fn digit(&self, index: usize, qudit: usize) -> usize {
        (index / self.strides[qudit]) % self.dims[qudit]
    }

    pub fn values_of(&self, index: usize) -> Vec<usize> {
        (0..self.dims.len()).map(|q| self.digit(index, q)).collect()
    }

    pub fn index_of(&self, values: &[usize]) -> usize {
        values.iter().zip(&self.strides).map(|(v, s)| v * s).sum()
    }

    pub(crate) fn check_qudit(&self, qudit: usize) -> Result<(), QaoaError> {
        if qudit < self.dims.len() {
            Ok(())
        } else {
            Err(QaoaError::QuditOutOfRange {
                qudit,
                qudits: self.dims.len(),
            })
        }
    }

    pub(crate) fn check_value(&self, qudit: usize, value: usize) -> Result<(), QaoaError> {
        self.check_qudit(qudit)?;
        if value < self.dims[qudit] {
            Ok(())
        } else {
            Err(QaoaError::ValueOutOfRange {
                qudit,
                value,
                dim: self.dims[qudit],
            })
        }
    }

    /// Multiplies every amplitude by `phase(index)`.
    pub(crate) fn apply_diagonal(&mut self, phase: impl Fn(&Self, usize) -> Option<f64>) {
        for idx in 0..self.amps.len() {
            if let Some(theta) = phase(self, idx) {
                self.amps[idx] *= Complex64::from_polar(1.0, theta);
            }
        }
    }

    /// `|<self|other>|`, for comparisons up to a global phase.
    pub fn overlap(&self, other: &QuditState) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            .norm()
    }

    /// Largest amplitude difference.
    pub fn distance(&self, other: &QuditState) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}
