//! Multilinear polynomials over binary variables, used to expand products of
//! indicators and squared sums into HOBO monomials.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::models::{HoboModel, ModelError};

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Vec<usize>, f64>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(value: f64) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), value);
        p
    }

    pub fn var(index: usize) -> Self {
        let mut p = Self::zero();
        p.add_term(vec![index], 1.0);
        p
    }

    /// `1 - x_index`
    pub fn not_var(index: usize) -> Self {
        Self::constant(1.0) - Self::var(index)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], f64)> + '_ {
        self.terms.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, key: Vec<usize>, value: f64) {
        if value == 0.0 {
            return;
        }
        let entry = self.terms.entry(key.clone()).or_insert(0.0);
        *entry += value;
        if *entry == 0.0 {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, factor: f64) -> Self {
        let mut out = Self::zero();
        for (k, &v) in &self.terms {
            out.add_term(k.clone(), v * factor);
        }
        out
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn evaluate(&self, values: &[usize]) -> f64 {
        self.terms
            .iter()
            .filter(|(k, _)| k.iter().all(|&i| values[i] != 0))
            .map(|(_, &v)| v)
            .sum()
    }

    /// Adds every monomial of `self` into `model`.
    pub fn add_to(&self, model: &mut HoboModel) -> Result<(), ModelError> {
        for (k, &v) in &self.terms {
            model.add_term(k, v)?;
        }
        Ok(())
    }
}

fn merge_keys(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        for (k, v) in rhs.terms {
            self.add_term(k, v);
        }
        self
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        self + (-rhs)
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(-1.0)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ka, &va) in &self.terms {
            for (kb, &vb) in &rhs.terms {
                out.add_term(merge_keys(ka, kb), va * vb);
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        iter.fold(Polynomial::zero(), |acc, p| acc + p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn idempotent_product() {
        let x = Polynomial::var(0);
        assert_eq!(&x * &x, x);
    }

    #[test]
    fn indicator_expansion() {
        let p = Polynomial::not_var(0) * Polynomial::not_var(1);
        let expected = Polynomial::constant(1.0) - Polynomial::var(0) - Polynomial::var(1)
            + Polynomial::var(0) * Polynomial::var(1);
        assert_eq!(p, expected);
        for (x0, x1) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let want = if x0 == 0 && x1 == 0 { 1.0 } else { 0.0 };
            assert_eq!(p.evaluate(&[x0, x1]), want);
        }
    }

    #[test]
    fn square_of_affine_sum() {
        // (2 - x0 - x1)^2 on every binary point
        let p = (Polynomial::constant(2.0) - Polynomial::var(0) - Polynomial::var(1)).square();
        for x0 in 0..2 {
            for x1 in 0..2 {
                let d = 2.0 - (x0 + x1) as f64;
                assert_eq!(p.evaluate(&[x0, x1]), d * d);
            }
        }
    }
}
