//! LU factorization with partial pivoting for dense complex matrices.

use num_complex::Complex64;

use super::{CMatrix, ZERO};

/// Row-pivoted LU of a square matrix. Factorization never fails; an exactly
/// singular input is recorded (`det()` returns 0) and solves substitute a tiny
/// pivot so inverse iteration can still run against near-singular shifts.
#[derive(Debug, Clone)]
pub struct Lu {
    lu: CMatrix,
    perm: Vec<usize>,
    parity: f64,
    true_pivots: Vec<Complex64>,
    min_pivot: f64,
}

/// Stand-in for an exactly zero pivot during solves. Large enough that
/// complex division by it cannot underflow norm_sqr to zero.
const PIVOT_FLOOR: f64 = 1e-100;

impl Lu {
    pub fn factor(a: &CMatrix) -> Self {
        let n = a.order();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut parity = 1.0;
        let mut true_pivots = Vec::with_capacity(n);
        let mut min_pivot = f64::INFINITY;

        for k in 0..n {
            let mut best = k;
            let mut best_mag = lu[(k, k)].norm();
            for i in (k + 1)..n {
                let mag = lu[(i, k)].norm();
                if mag > best_mag {
                    best = i;
                    best_mag = mag;
                }
            }
            if best != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(best, j)];
                    lu[(best, j)] = tmp;
                }
                perm.swap(k, best);
                parity = -parity;
            }

            let pivot = lu[(k, k)];
            true_pivots.push(pivot);
            min_pivot = min_pivot.min(pivot.norm());
            let safe = if pivot == ZERO {
                Complex64::new(PIVOT_FLOOR, 0.0)
            } else {
                pivot
            };
            lu[(k, k)] = safe;

            for i in (k + 1)..n {
                let factor = lu[(i, k)] / safe;
                lu[(i, k)] = factor;
                if factor == ZERO {
                    continue;
                }
                for j in (k + 1)..n {
                    let sub = factor * lu[(k, j)];
                    lu[(i, j)] -= sub;
                }
            }
        }
        if n == 0 {
            min_pivot = 0.0;
        }

        Self {
            lu,
            perm,
            parity,
            true_pivots,
            min_pivot,
        }
    }

    /// Determinant from the untouched pivots (exactly zero if a pivot was zero).
    pub fn det(&self) -> Complex64 {
        let mut d = Complex64::new(self.parity, 0.0);
        for &p in &self.true_pivots {
            d *= p;
        }
        d
    }

    /// Σ log|pivot|; finite-range determinant magnitude for products that
    /// would over/underflow.
    pub fn log_abs_det(&self) -> f64 {
        self.true_pivots.iter().map(|p| p.norm().ln()).sum()
    }

    /// Magnitude of the smallest pivot; a crude singularity witness.
    pub fn min_pivot(&self) -> f64 {
        self.min_pivot
    }

    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.lu.order();
        assert_eq!(b.len(), n);
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        // Forward: L has unit diagonal.
        for i in 1..n {
            for k in 0..i {
                let sub = self.lu[(i, k)] * x[k];
                x[i] -= sub;
            }
        }
        // Backward.
        for i in (0..n).rev() {
            for k in (i + 1)..n {
                let sub = self.lu[(i, k)] * x[k];
                x[i] -= sub;
            }
            x[i] /= self.lu[(i, i)];
        }
        x
    }

    pub fn solve_matrix(&self, b: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(b.rows(), b.cols());
        for j in 0..b.cols() {
            let col = self.solve(&b.col(j));
            for (i, v) in col.into_iter().enumerate() {
                out[(i, j)] = v;
            }
        }
        out
    }

    pub fn inverse(&self) -> CMatrix {
        self.solve_matrix(&CMatrix::identity(self.lu.order()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{random_unitary, SplitMix64};

    #[test]
    fn solve_recovers_rhs() {
        let mut rng = SplitMix64(5);
        let n = 7;
        let a = CMatrix::from_fn(n, n, |_, _| rng.next_complex_normal());
        let x: Vec<Complex64> = (0..n).map(|_| rng.next_complex_normal()).collect();
        let b = a.matvec(&x);
        let got = Lu::factor(&a).solve(&b);
        for (xi, gi) in x.iter().zip(&got) {
            assert!((xi - gi).norm() < 1e-10);
        }
    }

    #[test]
    fn det_of_unitary_has_unit_modulus() {
        let u = random_unitary(9, 11);
        let d = Lu::factor(&u).det();
        assert!((d.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn det_matches_two_by_two_formula() {
        let a = CMatrix::from_rows(&[
            vec![Complex64::new(1.0, 2.0), Complex64::new(-0.5, 0.0)],
            vec![Complex64::new(0.0, 1.0), Complex64::new(3.0, -1.0)],
        ]);
        let want = a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)];
        assert!((Lu::factor(&a).det() - want).norm() < 1e-14);
    }

    #[test]
    fn singular_matrix_reports_zero_det() {
        let a = CMatrix::from_rows(&[
            vec![Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)],
            vec![Complex64::new(2.0, 0.0), Complex64::new(4.0, 0.0)],
        ]);
        let f = Lu::factor(&a);
        assert_eq!(f.det(), Complex64::new(0.0, 0.0));
        assert!(f.min_pivot() < 1e-200);
    }

    #[test]
    fn inverse_of_product_is_reversed_product_of_inverses() {
        let a = random_unitary(5, 1);
        let b = random_unitary(5, 2);
        let inv_ab = Lu::factor(&a.mul(&b)).inverse();
        let want = Lu::factor(&b).inverse().mul(&Lu::factor(&a).inverse());
        assert!(inv_ab.max_abs_diff(&want) < 1e-12);
    }
}
