//! The parameter array (α₀, …, α_{n−1}, b): every construction in the crate
//! starts from one of these.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol;

/// Verblunsky-type parameters: finitely many coefficients strictly inside the
/// unit disk plus a final unimodular parameter. `n = alphas.len()` may be zero
/// (the construction degenerates to the 1×1 matrix `conj(b)`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParameterArray {
    alphas: Vec<Complex64>,
    b: Complex64,
}

impl ParameterArray {
    /// Validates |α_j| < 1 for all j and | |b| − 1 | ≤ tolerance. The value of
    /// `b` is stored exactly as given.
    pub fn new(alphas: Vec<Complex64>, b: Complex64) -> Result<Self> {
        for (index, &value) in alphas.iter().enumerate() {
            let modulus = value.norm();
            if modulus >= 1.0 {
                return Err(Error::AlphaOutsideDisk {
                    index,
                    value,
                    modulus,
                });
            }
        }
        check_unimodular("b", b)?;
        Ok(Self { alphas, b })
    }

    /// Number of disk parameters; the associated matrix has order n + 1.
    pub fn n(&self) -> usize {
        self.alphas.len()
    }

    pub fn order(&self) -> usize {
        self.alphas.len() + 1
    }

    pub fn alphas(&self) -> &[Complex64] {
        &self.alphas
    }

    pub fn alpha(&self, j: usize) -> Complex64 {
        self.alphas[j]
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    /// ρ_j = sqrt(1 − |α_j|²), computed in real arithmetic so it is always a
    /// nonnegative real number.
    pub fn rho(&self, j: usize) -> f64 {
        rho_of(self.alphas[j])
    }

    /// Sub-array (α_0, …, α_{m−1}, b_m) with a caller-chosen final parameter;
    /// needs m ≤ n.
    pub fn head(&self, m: usize, b_m: Complex64) -> Result<Self> {
        if m > self.n() {
            return Err(Error::IndexOutOfRange { m, n: self.n() });
        }
        Self::new(self.alphas[..m].to_vec(), b_m)
    }

    /// Sub-array (α_{m+1}, …, α_{n−1}, b); needs m < n.
    pub fn tail(&self, m: usize) -> Result<Self> {
        if m >= self.n() {
            return Err(Error::IndexOutOfRange { m, n: self.n() });
        }
        Self::new(self.alphas[m + 1..].to_vec(), self.b)
    }
}

pub fn rho_of(alpha: Complex64) -> f64 {
    (1.0 - alpha.norm_sqr()).max(0.0).sqrt()
}

pub fn check_unimodular(what: &'static str, value: Complex64) -> Result<()> {
    let deviation = (value.norm() - 1.0).abs();
    if deviation > tol::EPS_UNIT_INPUT {
        return Err(Error::NotUnimodular {
            what,
            value,
            deviation,
        });
    }
    Ok(())
}
