//! Dense complex linear algebra: a small row-major matrix type plus the
//! factorizations the rest of the crate is built on (pivoted LU, Hermitian
//! Jacobi, Cayley-transform eigendecomposition of unitary matrices).
//!
//! Everything here is plain `f64`-pair arithmetic on `num_complex::Complex64`;
//! sizes stay in the dozens, so clarity wins over blocking or SIMD.

mod eig;
mod jacobi;
mod lu;

pub use eig::{unitary_eigendecomposition, UnitaryEig};
pub use jacobi::hermitian_eigendecomposition;
pub use lu::Lu;

use num_complex::Complex64;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from nested row slices; rows must have equal length.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in entries.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn order(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn col(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].conj())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| s * self[(i, j)])
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)] + other[(i, j)])
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)] - other[(i, j)])
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * x[j]).sum())
            .collect()
    }

    /// Max-abs norm over entries.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// ‖A*A − I‖_max; small iff the matrix is unitary.
    pub fn unitarity_error(&self) -> f64 {
        self.adjoint().mul(self).max_abs_diff(&Self::identity(self.cols))
    }

    /// Copies the half-open block `[r0, r1) × [c0, c1)`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        assert!(r1 <= self.rows && c1 <= self.cols && r0 <= r1 && c0 <= c1);
        Self::from_fn(r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)])
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols);
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)];
            }
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        out
    }

    /// Assembles [[a, b], [c, d]] from conforming blocks.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let mut out = Self::zeros(a.rows + c.rows, a.cols + b.cols);
        out.set_block(0, 0, a);
        out.set_block(0, a.cols, b);
        out.set_block(a.rows, 0, c);
        out.set_block(a.rows, a.cols, d);
        out
    }

    /// Rank-one outer product u vᵀ (plain transpose, no conjugation).
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| u[i] * v[j])
    }

    /// det(zI − A) for square A, via pivoted LU.
    pub fn charpoly_at(&self, z: Complex64) -> Complex64 {
        let n = self.order();
        let shifted = Self::from_fn(n, n, |i, j| {
            if i == j {
                z - self[(i, j)]
            } else {
                -self[(i, j)]
            }
        });
        Lu::factor(&shifted).det()
    }

    /// Adjugate from cofactors: Adj(A)[i][j] = (−1)^{i+j} det(A with row j, col i deleted).
    /// Independent of any spectral information; O(n^5), intended for small orders.
    pub fn adjugate_by_cofactors(&self) -> Self {
        let n = self.order();
        if n == 0 {
            return Self::zeros(0, 0);
        }
        if n == 1 {
            return Self::from_rows(&[vec![ONE]]);
        }
        Self::from_fn(n, n, |i, j| {
            let minor = Self::from_fn(n - 1, n - 1, |r, c| {
                let rr = if r < j { r } else { r + 1 };
                let cc = if c < i { c } else { c + 1 };
                self[(rr, cc)]
            });
            let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            Lu::factor(&minor).det() * sign
        })
    }

    /// Singular values, descending, by one-sided Jacobi (Hestenes): rotate
    /// column pairs until mutually orthogonal, then read off column norms.
    /// Small singular values keep high relative accuracy, which the
    /// rank-of-(I−S) tests depend on; the Gram-matrix route would bury them
    /// under a sqrt(machine-eps) floor.
    pub fn singular_values(&self) -> Vec<f64> {
        let n = self.cols;
        let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| self.col(j)).collect();
        for _sweep in 0..64 {
            let mut rotated = false;
            for p in 0..n {
                for q in (p + 1)..n {
                    let app: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                    let aqq: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                    let apq = conj_inner(&cols[p], &cols[q]);
                    let mag = apq.norm();
                    // Relative orthogonality: |<p,q>| ≤ eps·‖p‖‖q‖ is done.
                    let denom = (app * aqq).sqrt();
                    if denom <= 0.0 || mag <= 1e-15 * denom {
                        continue;
                    }
                    rotated = true;
                    let phase = apq / mag;
                    let tau = (aqq - app) / (2.0 * mag);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    let u_pp = Complex64::new(c, 0.0);
                    let u_pq = phase * s;
                    let u_qp = -phase.conj() * s;
                    let u_qq = Complex64::new(c, 0.0);
                    for i in 0..self.rows {
                        let xp = cols[p][i];
                        let xq = cols[q][i];
                        cols[p][i] = xp * u_pp + xq * u_qp;
                        cols[q][i] = xp * u_pq + xq * u_qq;
                    }
                }
            }
            if !rotated {
                break;
            }
        }
        let mut sv: Vec<f64> = cols.iter().map(|c| norm2(c)).collect();
        sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
        sv
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

pub fn norm2(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// ⟨x, y⟩ = Σ conj(x_i) y_i.
pub fn conj_inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

/// Σ x_i y_i, no conjugation (the vᵀ z pairing).
pub fn dot_t(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub fn normalize(x: &mut [Complex64]) -> f64 {
    let n = norm2(x);
    if n > 0.0 {
        x.iter_mut().for_each(|z| *z /= n);
    }
    n
}

/// SplitMix64; used for reproducible start vectors and test fixtures without
/// pulling an RNG crate into the library.
#[derive(Debug, Clone)]
pub struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Standard complex normal via Box–Muller.
    pub fn next_complex_normal(&mut self) -> Complex64 {
        let u1 = (self.next_f64()).max(1e-300);
        let u2 = self.next_f64();
        let r = (-2.0 * u1.ln()).sqrt();
        Complex64::new(
            r * (2.0 * std::f64::consts::PI * u2).cos(),
            r * (2.0 * std::f64::consts::PI * u2).sin(),
        ) / std::f64::consts::SQRT_2
    }
}

/// Haar-like random unitary: complex Ginibre sample orthonormalized by
/// modified Gram–Schmidt with one reorthogonalization pass.
pub fn random_unitary(n: usize, seed: u64) -> CMatrix {
    let mut rng = SplitMix64(seed ^ 0xc0fe_u64.wrapping_mul(n as u64 + 1));
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|_| (0..n).map(|_| rng.next_complex_normal()).collect())
        .collect();
    for j in 0..n {
        for _pass in 0..2 {
            for k in 0..j {
                let proj = conj_inner(&cols[k], &cols[j]);
                let prev = cols[k].clone();
                for (x, p) in cols[j].iter_mut().zip(&prev) {
                    *x -= proj * p;
                }
            }
        }
        normalize(&mut cols[j]);
    }
    CMatrix::from_fn(n, n, |i, j| cols[j][i])
}
