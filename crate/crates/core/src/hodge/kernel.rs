use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::laplacian::HodgeOperator;
use super::spectrum::spectrum;
use crate::error::{Error, Result};

/// Function applied to each eigenvalue by [`spectral_kernel`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Regularizer {
    /// `exp(-beta * lambda)`.
    Heat { beta: f64 },
    /// `1 / (lambda + eps)`, `eps > 0`.
    InverseShifted { eps: f64 },
    /// `sum_i c_i lambda^i`.
    Polynomial { coeffs: Vec<f64> },
}

impl Regularizer {
    pub fn eval(&self, lambda: f64) -> f64 {
        match self {
            Self::Heat { beta } => (-beta * lambda).exp(),
            Self::InverseShifted { eps } => 1.0 / (lambda + eps),
            Self::Polynomial { coeffs } => coeffs.iter().rev().fold(0.0, |acc, &c| acc * lambda + c),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Self::InverseShifted { eps } if eps.is_nan() || *eps <= 0.0 => {
                Err(Error::Config(format!("inverse regularizer needs eps > 0, got {eps}")))
            }
            Self::Heat { beta } if !beta.is_finite() => {
                Err(Error::Config(format!("heat regularizer needs finite beta, got {beta}")))
            }
            Self::Polynomial { coeffs } if coeffs.is_empty() => {
                Err(Error::Config("polynomial regularizer needs at least one coefficient".into()))
            }
            _ => Ok(()),
        }
    }
}

/// Parses `heat:<beta>`, `inverse:<eps>` or `poly:<c0>,<c1>,...`.
impl FromStr for Regularizer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = s.split_once(':').unwrap_or((s, ""));
        let num = |t: &str| {
            t.trim().parse::<f64>().map_err(|_| Error::Config(format!("bad number {t:?} in regularizer {s:?}")))
        };
        let r = match name {
            "heat" => Self::Heat { beta: num(arg)? },
            "inverse" | "inverse_shifted" => Self::InverseShifted { eps: num(arg)? },
            "poly" | "polynomial" => Self::Polynomial { coeffs: arg.split(',').map(num).collect::<Result<_>>()? },
            other => {
                return Err(Error::Config(format!("unknown regularizer {other:?} (expected heat, inverse or poly)")))
            }
        };
        r.validate()?;
        Ok(r)
    }
}

impl fmt::Display for Regularizer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Heat { beta } => write!(f, "heat:{beta}"),
            Self::InverseShifted { eps } => write!(f, "inverse:{eps}"),
            Self::Polynomial { coeffs } => {
                let parts: Vec<String> = coeffs.iter().map(f64::to_string).collect();
                write!(f, "poly:{}", parts.join(","))
            }
        }
    }
}

/// `r(L) = sum_i r(lambda_i) u_i u_i^T`.
///
/// For a normalized operator the kernel is conjugated back from the
/// symmetric form, so it is a function of the operator itself.
pub fn spectral_kernel(op: &HodgeOperator, r: &Regularizer) -> Result<DMatrix<f64>> {
    r.validate()?;
    let spec = spectrum(op, None)?;
    let mut k = spec.apply(|l| r.eval(l));
    if let Some(w) = op.weights() {
        for i in 0..k.nrows() {
            for j in 0..k.ncols() {
                k[(i, j)] *= (w[i] / w[j]).sqrt();
            }
        }
    }
    Ok(k)
}
