//! Cyclic Jacobi eigendecomposition for complex Hermitian matrices.

use num_complex::Complex64;

use super::{CMatrix, ZERO};

const MAX_SWEEPS: usize = 64;

/// Diagonalizes a Hermitian matrix: returns `(eigenvalues, V)` with
/// `A V = V diag(eigenvalues)` and unitary `V` (eigenvectors as columns).
/// Eigenvalues come back in ascending order.
///
/// The input is symmetrized first, so a numerically-almost-Hermitian matrix
/// is accepted; convergence is quadratic and unconditional for Hermitian
/// input, which is why this is the trusted kernel under the unitary
/// eigensolver oracle.
pub fn hermitian_eigendecomposition(a: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = a.order();
    if n == 0 {
        return (vec![], CMatrix::zeros(0, 0));
    }

    // Work on (A + A*)/2 to discard the anti-Hermitian round-off part.
    let mut m = a.add(&a.adjoint()).scale(Complex64::new(0.5, 0.0));
    let mut v = CMatrix::identity(n);

    let scale = m.max_abs().max(f64::MIN_POSITIVE);
    let stop = 1e-15 * scale;

    for _sweep in 0..MAX_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(m[(p, q)].norm());
            }
        }
        if off <= stop {
            break;
        }

        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                let mag = apq.norm();
                if mag <= stop * 1e-2 {
                    continue;
                }
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let phase = apq / mag;

                // Annihilate m[p][q] with U = [[c, s·phase], [−s·conj(phase), c]].
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

                // M <- U* M U, touching only rows/cols p and q.
                for j in 0..n {
                    let mpj = m[(p, j)];
                    let mqj = m[(q, j)];
                    m[(p, j)] = u_pp.conj() * mpj + u_qp.conj() * mqj;
                    m[(q, j)] = u_pq.conj() * mpj + u_qq.conj() * mqj;
                }
                for i in 0..n {
                    let mip = m[(i, p)];
                    let miq = m[(i, q)];
                    m[(i, p)] = mip * u_pp + miq * u_qp;
                    m[(i, q)] = mip * u_pq + miq * u_qq;
                }
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * u_pp + viq * u_qp;
                    v[(i, q)] = vip * u_pq + viq * u_qq;
                }
                // Pin the annihilated pair and the real diagonal exactly.
                m[(p, q)] = ZERO;
                m[(q, p)] = ZERO;
                m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
                m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.partial_cmp(&m[(j, j)].re).unwrap());

    let evals: Vec<f64> = order.iter().map(|&i| m[(i, i)].re).collect();
    let mut vecs = CMatrix::zeros(n, n);
    for (new_j, &old_j) in order.iter().enumerate() {
        for i in 0..n {
            vecs[(i, new_j)] = v[(i, old_j)];
        }
    }
    (evals, vecs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{norm2, random_unitary, SplitMix64};

    fn random_hermitian(n: usize, seed: u64) -> CMatrix {
        let mut rng = SplitMix64(seed);
        let g = CMatrix::from_fn(n, n, |_, _| rng.next_complex_normal());
        g.add(&g.adjoint()).scale(Complex64::new(0.5, 0.0))
    }

    #[test]
    fn reconstructs_hermitian_matrix() {
        for n in [1, 2, 3, 8, 17] {
            let a = random_hermitian(n, 100 + n as u64);
            let (evals, v) = hermitian_eigendecomposition(&a);
            let lambda = CMatrix::diagonal(
                &evals
                    .iter()
                    .map(|&x| Complex64::new(x, 0.0))
                    .collect::<Vec<_>>(),
            );
            let back = v.mul(&lambda).mul(&v.adjoint());
            assert!(back.max_abs_diff(&a) < 1e-12 * a.max_abs().max(1.0), "n={n}");
            assert!(v.unitarity_error() < 1e-12);
        }
    }

    #[test]
    fn eigenvalues_sorted_and_residuals_small() {
        let a = random_hermitian(12, 7);
        let (evals, v) = hermitian_eigendecomposition(&a);
        for w in evals.windows(2) {
            assert!(w[0] <= w[1]);
        }
        for (j, &ev) in evals.iter().enumerate() {
            let z = v.col(j);
            let az = a.matvec(&z);
            let resid: Vec<Complex64> = az
                .iter()
                .zip(&z)
                .map(|(a, b)| a - b * Complex64::new(ev, 0.0))
                .collect();
            assert!(norm2(&resid) < 1e-12 * a.max_abs().max(1.0));
        }
    }

    #[test]
    fn degenerate_spectrum_is_handled() {
        // diag(1, 1, 2) conjugated by a random unitary.
        let q = random_unitary(3, 4);
        let d = CMatrix::diagonal(&[
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(2.0, 0.0),
        ]);
        let a = q.mul(&d).mul(&q.adjoint());
        let (evals, v) = hermitian_eigendecomposition(&a);
        assert!((evals[0] - 1.0).abs() < 1e-12);
        assert!((evals[1] - 1.0).abs() < 1e-12);
        assert!((evals[2] - 2.0).abs() < 1e-12);
        assert!(v.unitarity_error() < 1e-12);
    }
}
