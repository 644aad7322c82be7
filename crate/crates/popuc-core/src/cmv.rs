//! CMV matrices: 2×2 Givens-type blocks, the block-diagonal factors L and M,
//! their pentadiagonal product, block partitions, and the diagonal gauge
//! matrices used by the structural identities.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, ONE, ZERO};
use crate::params::{check_unimodular, rho_of, ParameterArray};

/// The 2×2 block Θ(α) = [[conj(α), ρ], [ρ, −α]] with ρ = sqrt(1 − |α|²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GivensBlock {
    alpha: Complex64,
    rho: f64,
}

impl GivensBlock {
    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn matrix(&self) -> CMatrix {
        let r = Complex64::new(self.rho, 0.0);
        CMatrix::from_rows(&[vec![self.alpha.conj(), r], vec![r, -self.alpha]])
    }
}

/// Builds Θ(α); rejects parameters on or outside the unit circle.
pub fn theta_block(alpha: Complex64) -> Result<GivensBlock> {
    let modulus = alpha.norm();
    if modulus >= 1.0 {
        return Err(Error::AlphaOutsideDisk {
            index: 0,
            value: alpha,
            modulus,
        });
    }
    Ok(GivensBlock {
        alpha,
        rho: rho_of(alpha),
    })
}

/// Block-diagonal factors of the CMV product. For n even, L ends with the
/// scalar conj(b) and M starts with the scalar 1; for n odd, L is all Θ blocks
/// and M carries both scalars 1 and conj(b).
pub fn build_factors(p: &ParameterArray) -> (CMatrix, CMatrix) {
    let n = p.n();
    let order = n + 1;
    let b_conj = p.b().conj();

    let mut l = CMatrix::zeros(order, order);
    let mut offset = 0;
    while offset + 1 < order {
        let theta = theta_block(p.alpha(offset)).expect("validated parameter");
        l.set_block(offset, offset, &theta.matrix());
        offset += 2;
    }
    if offset < order {
        // n even: trailing scalar conj(b).
        l[(offset, offset)] = b_conj;
    }

    let mut m = CMatrix::zeros(order, order);
    m[(0, 0)] = ONE;
    let mut offset = 1;
    while offset + 1 < order {
        let theta = theta_block(p.alpha(offset)).expect("validated parameter");
        m.set_block(offset, offset, &theta.matrix());
        offset += 2;
    }
    if offset < order {
        // n odd: trailing scalar conj(b).
        m[(offset, offset)] = b_conj;
    }

    (l, m)
}

/// The CMV matrix C = L·M together with the parameters it came from.
#[derive(Debug, Clone)]
pub struct CmvMatrix {
    matrix: CMatrix,
    source: ParameterArray,
}

impl CmvMatrix {
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn source(&self) -> &ParameterArray {
        &self.source
    }

    pub fn order(&self) -> usize {
        self.matrix.order()
    }

    pub fn unitarity_error(&self) -> f64 {
        self.matrix.unitarity_error()
    }

    /// True when every entry outside the double-staircase pattern is exactly
    /// zero (they are, by construction: the factors are block diagonal).
    pub fn sparsity_ok(&self) -> bool {
        let order = self.order();
        (0..order).all(|i| {
            (0..order).all(|j| in_staircase(i, j, order) || self.matrix[(i, j)] == ZERO)
        })
    }
}

pub fn build_cmv(p: &ParameterArray) -> CmvMatrix {
    let (l, m) = build_factors(p);
    CmvMatrix {
        matrix: l.mul(&m),
        source: p.clone(),
    }
}

/// Double-staircase support: rows 2k and 2k+1 may be nonzero only in columns
/// 2k−1 ..= 2k+2 (clipped to the matrix).
pub fn in_staircase(i: usize, j: usize, order: usize) -> bool {
    debug_assert!(i < order && j < order);
    let k = i / 2;
    let lo = (2 * k).saturating_sub(1);
    let hi = 2 * k + 2;
    j >= lo && j <= hi
}

/// Four-block partition of a CMV matrix with an (m+1)×(m+1) leading block.
#[derive(Debug, Clone)]
pub struct BlockPartition {
    pub c11: CMatrix,
    pub c12: CMatrix,
    pub c21: CMatrix,
    pub c22: CMatrix,
    pub m: usize,
}

impl BlockPartition {
    /// Exact (bitwise) reassembly of the parent matrix.
    pub fn reassemble(&self) -> CMatrix {
        CMatrix::from_blocks(&self.c11, &self.c12, &self.c21, &self.c22)
    }
}

/// Splits at the (m+1)-row/column boundary; requires 0 ≤ m < n.
pub fn partition(c: &CmvMatrix, m: usize) -> Result<BlockPartition> {
    let n = c.source.n();
    if m >= n {
        return Err(Error::IndexOutOfRange { m, n });
    }
    let cut = m + 1;
    let order = c.order();
    let a = c.matrix.block(0, cut, 0, cut);
    let b = c.matrix.block(0, cut, cut, order);
    let d = c.matrix.block(cut, order, 0, cut);
    let e = c.matrix.block(cut, order, cut, order);
    Ok(BlockPartition {
        c11: a,
        c12: b,
        c21: d,
        c22: e,
        m,
    })
}

/// Alternating diagonal diag(β, 1, β, 1, …) of a given order.
fn alternating_diag(beta: Complex64, len: usize) -> Vec<Complex64> {
    (0..len)
        .map(|i| if i % 2 == 0 { beta } else { ONE })
        .collect()
}

/// The three diagonal unitary gauges of order n+1:
/// S = diag(I_m, conj(β), I_{n−m}),
/// D = diag(I_m, β, 1, β, 1, …),
/// V = diag(I_{m+1}, β, 1, β, 1, …).
pub fn gauge_matrices(n: usize, m: usize, beta: Complex64) -> Result<(CMatrix, CMatrix, CMatrix)> {
    if m > n {
        return Err(Error::IndexOutOfRange { m, n });
    }
    check_unimodular("beta", beta)?;

    let mut s = vec![ONE; n + 1];
    s[m] = beta.conj();

    let mut d = vec![ONE; n + 1];
    d[m..].copy_from_slice(&alternating_diag(beta, n + 1 - m));

    let mut v = vec![ONE; n + 1];
    v[m + 1..].copy_from_slice(&alternating_diag(beta, n - m));

    Ok((
        CMatrix::diagonal(&s),
        CMatrix::diagonal(&d),
        CMatrix::diagonal(&v),
    ))
}
