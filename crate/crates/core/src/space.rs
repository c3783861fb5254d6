//! Finite-dimensional real vector spaces with a crisp base norm.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Crisp norm on `R^n` underlying a profile anti-norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BaseNorm {
    Euclidean,
    Maximum,
    /// `(sum |x_i|^p)^(1/p)` with finite `p >= 1`.
    P {
        p: f64,
    },
}

impl BaseNorm {
    pub fn validate(&self) -> Result<()> {
        match *self {
            BaseNorm::P { p } if !(p.is_finite() && p >= 1.0) => {
                Err(invalid("p", format!("{p} must be a finite real >= 1")))
            }
            _ => Ok(()),
        }
    }

    /// Evaluates the norm. Scaled by the largest magnitude so tiny and huge
    /// vectors neither underflow nor overflow.
    pub fn norm(&self, x: &[f64]) -> f64 {
        let m = x.iter().fold(0.0f64, |acc, c| acc.max(c.abs()));
        if m == 0.0 || !m.is_finite() {
            return m;
        }
        match *self {
            BaseNorm::Maximum => m,
            BaseNorm::Euclidean => m * x.iter().map(|c| (c / m) * (c / m)).sum::<f64>().sqrt(),
            BaseNorm::P { p: 1.0 } => x.iter().map(|c| c.abs()).sum(),
            BaseNorm::P { p } => m * x.iter().map(|c| (c.abs() / m).powf(p)).sum::<f64>().powf(1.0 / p),
        }
    }

    pub fn name(&self) -> String {
        match self {
            BaseNorm::Euclidean => "euclidean".into(),
            BaseNorm::Maximum => "maximum".into(),
            BaseNorm::P { p } => format!("p-norm(p={p})"),
        }
    }

    pub(crate) fn is_euclidean(&self) -> bool {
        matches!(self, BaseNorm::Euclidean) || matches!(self, BaseNorm::P { p } if *p == 2.0)
    }
}

/// The space `R^n` together with its base norm. The zero vector of this
/// space is the `θ` of the anti-norm axioms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorSpaceSpec {
    pub dimension: usize,
    pub base_norm: BaseNorm,
}

impl VectorSpaceSpec {
    pub fn new(dimension: usize, base_norm: BaseNorm) -> Result<Self> {
        if dimension == 0 {
            return Err(invalid("dimension", "must be at least 1"));
        }
        base_norm.validate()?;
        Ok(Self { dimension, base_norm })
    }

    pub fn euclidean(dimension: usize) -> Result<Self> {
        Self::new(dimension, BaseNorm::Euclidean)
    }

    pub fn zero(&self) -> Vec<f64> {
        vec![0.0; self.dimension]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<f64> {
        let mut e = self.zero();
        e[i] = 1.0;
        e
    }

    pub fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() == self.dimension {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dimension,
                actual: x.len(),
            })
        }
    }

    pub fn norm(&self, x: &[f64]) -> f64 {
        self.base_norm.norm(x)
    }
}

pub fn is_zero(x: &[f64]) -> bool {
    x.iter().all(|&c| c == 0.0)
}

pub fn add(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn sub(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn scale(c: f64, x: &[f64]) -> Vec<f64> {
    x.iter().map(|a| c * a).collect()
}

/// `x + c * y`
pub fn axpy(x: &[f64], c: f64, y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a + c * b).collect()
}
