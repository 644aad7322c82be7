//! Paraorthogonal polynomial machinery: determinant evaluation, the
//! pseudo-reflection recursion, the unimodular link factor, Schur-complement
//! reduction, and zero localization by phase winding.
//!
//! The zero finder rests on the reduction-to-scalar fact: for ζ on the unit
//! circle, ζ is an eigenvalue of C(α₀,…,α_{n−1},b) exactly when ζ·b₀(ζ) = 1,
//! and the recursion b_j(ζ) = φ_{α_j}(ζ·b_{j+1}(ζ)) composes disk
//! automorphisms, so the phase of ζ·b₀(ζ) increases strictly and winds n+1
//! times. Bracketing the lifted phase against multiples of 2π therefore
//! isolates every zero.

use num_complex::Complex64;

use crate::circle::{CirclePoint, TAU};
use crate::cmv::{build_cmv, partition, CmvMatrix};
use crate::error::{Error, Result};
use crate::linalg::{
    conj_inner, norm2, normalize, unitary_eigendecomposition, CMatrix, Lu, SplitMix64,
};
use crate::params::{check_unimodular, ParameterArray};
use crate::tol;

/// P_{n+1}(z) = det(zI − C(p)), evaluated by row-pivoted elimination.
/// Deliberately independent of the zero finder so each can audit the other.
pub fn popuc_eval(p: &ParameterArray, z: Complex64) -> Complex64 {
    build_cmv(p).matrix().charpoly_at(z)
}

/// The pseudo-reflection value b_m(ζ): starting from b_n(ζ) = b, apply
/// b_j(ζ) = (conj(ζ)·α_j + b_{j+1}) / (conj(α_j)·b_{j+1} + conj(ζ))
/// for j = n−1 down to m. Each step preserves the unit circle and its
/// denominator is bounded below by 1 − |α_j|.
pub fn pseudo_reflection(p: &ParameterArray, zeta: CirclePoint, m: usize) -> Result<Complex64> {
    let n = p.n();
    if m > n {
        return Err(Error::IndexOutOfRange { m, n });
    }
    let z = zeta.to_complex();
    let mut b = p.b();
    for j in (m..n).rev() {
        let alpha = p.alpha(j);
        b = (z.conj() * alpha + b) / (alpha.conj() * b + z.conj());
    }
    Ok(b)
}

/// γ = (α − b) / (conj(α)·b − 1); unimodular because the numerator and
/// denominator are conjugate up to the unimodular factor −b.
pub fn gamma(alpha: Complex64, b: Complex64) -> Result<Complex64> {
    let modulus = alpha.norm();
    if modulus >= 1.0 {
        return Err(Error::AlphaOutsideDisk {
            index: 0,
            value: alpha,
            modulus,
        });
    }
    check_unimodular("b", b)?;
    Ok((alpha - b) / (alpha.conj() * b - Complex64::new(1.0, 0.0)))
}

/// Eigenvalue/eigenvector pairs of a unitary matrix, eigenvalues stored as
/// circle points sorted ascending by angle.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<CirclePoint>,
    /// Unit-norm, index-aligned with `eigenvalues`.
    pub eigenvectors: Vec<Vec<Complex64>>,
    /// ‖C z − λ z‖₂ per pair.
    pub residuals: Vec<f64>,
    /// True when bracketing had to hand over to the dense eigensolver.
    pub used_fallback: bool,
    /// Human-readable notes about grid refinements or fallbacks.
    pub diagnostics: Vec<String>,
}

impl SpectralDecomposition {
    pub fn angles(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(|p| p.angle()).collect()
    }

    pub fn min_angular_gap(&self) -> f64 {
        let n = self.eigenvalues.len();
        if n < 2 {
            return TAU;
        }
        (0..n)
            .map(|i| {
                let a = self.eigenvalues[i].angle();
                let b = self.eigenvalues[(i + 1) % n].angle();
                (b - a).rem_euclid(TAU)
            })
            .fold(TAU, f64::min)
    }

    /// Smallest eigenvector component magnitude across all pairs.
    pub fn min_component_magnitude(&self) -> f64 {
        self.eigenvectors
            .iter()
            .flat_map(|z| z.iter().map(|c| c.norm()))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Exact continuous lift of arg b_m(ζ(θ)) over θ ∈ ℝ. The recursion factors
/// through disk automorphisms, b_j = φ_{α_j}(ζ·b_{j+1}), and on the circle
/// arg φ_a(e^{iψ}) = ψ + 2·arg(1 + a·e^{−iψ}) where the correction stays in
/// (−π/2, π/2) because Re(1 + a·e^{−iψ}) > 0 for |a| < 1. Composing these
/// closed-form lifts gives the global winding with no unwrapping, so a
/// Poisson spike narrower than any grid still contributes its full turns.
pub fn lifted_reflection_phase(p: &ParameterArray, m: usize, theta: f64) -> f64 {
    let n = p.n();
    debug_assert!(m <= n);
    let mut lift = p.b().arg();
    for j in (m..n).rev() {
        let psi = theta + lift;
        let w = Complex64::new(1.0, 0.0) + p.alpha(j) * Complex64::from_polar(1.0, -psi);
        lift = psi + 2.0 * w.arg();
    }
    lift
}

/// All n+1 zeros of the paraorthogonal polynomial: ζ(θ) is a zero exactly
/// when the lifted phase of ζ·b₀(ζ) hits a multiple of 2π, and that lift is
/// strictly increasing with winding n+1, so each zero is found by bisection
/// on an exactly evaluable monotone function. Eigenvectors come from inverse
/// iteration. The dense eigensolver remains as a fallback should the lift
/// ever fail its own winding audit (and `diagnostics` says so).
pub fn zeros(p: &ParameterArray) -> Result<SpectralDecomposition> {
    zeros_with(p, tol::THETA_BISECT)
}

pub fn zeros_with(p: &ParameterArray, theta_bisect: f64) -> Result<SpectralDecomposition> {
    let n = p.n();
    let winding = n + 1;
    let lift = |theta: f64| theta + lifted_reflection_phase(p, 0, theta);

    let cmv = build_cmv(p);
    let mut diagnostics = Vec::new();
    match monotone_phase_roots(&lift, winding, 0.0, theta_bisect) {
        Ok(angles) => {
            let eigenvalues: Vec<CirclePoint> =
                angles.into_iter().map(CirclePoint::from_angle).collect();
            let (eigenvectors, residuals) = eigenvectors_by_inverse_iteration(&cmv, &eigenvalues)?;
            let dec = SpectralDecomposition {
                eigenvalues,
                eigenvectors,
                residuals,
                used_fallback: false,
                diagnostics,
            };
            check_simplicity(&dec)?;
            Ok(dec)
        }
        Err(err) => {
            diagnostics.push(format!("phase winding route failed ({err}); using dense eigensolver"));
            let dec = zeros_by_dense_oracle(p)?;
            Ok(SpectralDecomposition {
                used_fallback: true,
                diagnostics,
                ..dec
            })
        }
    }
}

/// The independent route: dense Cayley/Jacobi eigendecomposition of C(p).
pub fn zeros_by_dense_oracle(p: &ParameterArray) -> Result<SpectralDecomposition> {
    let cmv = build_cmv(p);
    let eig = unitary_eigendecomposition(cmv.matrix())?;
    let eigenvalues: Vec<CirclePoint> = eig
        .eigenvalues
        .iter()
        .map(|&l| CirclePoint::from_complex(l))
        .collect();
    let eigenvectors = eig
        .eigenvectors
        .into_iter()
        .map(|mut z| {
            canonicalize_phase(&mut z);
            z
        })
        .collect();
    let dec = SpectralDecomposition {
        eigenvalues,
        eigenvectors,
        residuals: eig.residuals,
        used_fallback: false,
        diagnostics: vec![],
    };
    check_simplicity(&dec)?;
    Ok(dec)
}

fn check_simplicity(dec: &SpectralDecomposition) -> Result<()> {
    let gap = dec.min_angular_gap();
    if gap <= tol::EPS_SEP {
        return Err(Error::NonSimpleSpectrum {
            gap,
            min_gap: tol::EPS_SEP,
        });
    }
    Ok(())
}

/// Solutions in [0, 2π) of lift(θ) ≡ target_phase (mod 2π), for an exactly
/// evaluable nondecreasing lift gaining 2π·winding per revolution. Shared by
/// the zero finder and the b_m-level-set solver. The winding is audited at
/// the endpoints before any bisection.
pub fn monotone_phase_roots(
    lift: &dyn Fn(f64) -> f64,
    winding: usize,
    target_phase: f64,
    theta_bisect: f64,
) -> Result<Vec<f64>> {
    if winding == 0 {
        return Ok(vec![]);
    }
    let f0 = lift(0.0);
    let f1 = lift(TAU);
    let observed = (f1 - f0) / TAU;
    if (observed - winding as f64).abs() > 1e-6 {
        return Err(Error::WindingMismatch {
            expected: winding as i64,
            observed: observed.round() as i64,
            detail: "endpoint lift audit".into(),
        });
    }

    // Coarse grid for bracket seeding; every grid value is an exact lift, so
    // several targets sharing one cell (a spike) is handled by bisecting each
    // target separately inside it.
    let grid_n = tol::WINDING_GRID_FACTOR * winding;
    let thetas: Vec<f64> = (0..=grid_n).map(|k| TAU * k as f64 / grid_n as f64).collect();
    let values: Vec<f64> = thetas.iter().map(|&t| lift(t)).collect();

    let first_k = ((f0 - target_phase) / TAU).floor() as i64 + 1;
    let mut roots = Vec::with_capacity(winding);
    let mut cell = 0usize;
    for t in 0..winding {
        let target = target_phase + TAU * (first_k + t as i64) as f64;
        while cell < grid_n && !(values[cell] < target && target <= values[cell + 1]) {
            cell += 1;
        }
        if cell >= grid_n {
            return Err(Error::Bracketing(format!(
                "no grid cell brackets phase target {target:.6}"
            )));
        }
        let (mut lo, mut hi) = (thetas[cell], thetas[cell + 1]);
        let mut guard = 0;
        while hi - lo > theta_bisect {
            let mid = 0.5 * (lo + hi);
            if lift(mid) >= target {
                hi = mid;
            } else {
                lo = mid;
            }
            guard += 1;
            if guard > 128 {
                return Err(Error::Bracketing("bisection failed to shrink bracket".into()));
            }
        }
        let mut root = (0.5 * (lo + hi)).rem_euclid(TAU);
        // A root pinned against the 0 ≡ 2π seam: prefer the representative 0
        // when it is at least as good, so fixtures with a zero at angle 0
        // report 0 rather than 2π − ulp.
        if TAU - root <= 2.0 * theta_bisect.max(1e-15) {
            let dist = |theta: f64| {
                let v = lift(theta) - target_phase;
                (v - TAU * (v / TAU).round()).abs()
            };
            if dist(0.0) <= dist(root) {
                root = 0.0;
            }
        }
        roots.push(root);
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(roots)
}

/// Reduce to (−π, π].
pub fn wrap_to_pi(x: f64) -> f64 {
    let mut y = x.rem_euclid(TAU);
    if y > std::f64::consts::PI {
        y -= TAU;
    }
    y
}

fn eigenvectors_by_inverse_iteration(
    cmv: &CmvMatrix,
    eigenvalues: &[CirclePoint],
) -> Result<(Vec<Vec<Complex64>>, Vec<f64>)> {
    let order = cmv.order();
    let mut vectors: Vec<Vec<Complex64>> = Vec::with_capacity(eigenvalues.len());
    let mut residuals = Vec::with_capacity(eigenvalues.len());

    for (j, lambda_point) in eigenvalues.iter().enumerate() {
        let lambda = lambda_point.to_complex();
        let shifted = CMatrix::from_fn(order, order, |r, c| {
            let base = cmv.matrix()[(r, c)];
            if r == c {
                base - lambda
            } else {
                base
            }
        });
        let lu = Lu::factor(&shifted);

        let mut rng = SplitMix64(0x5eed_0000 ^ j as u64);
        let mut x: Vec<Complex64> = (0..order).map(|_| rng.next_complex_normal()).collect();
        normalize(&mut x);

        let mut best = (f64::INFINITY, x.clone());
        for _step in 0..4 {
            x = lu.solve(&x);
            if x.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
                // Exactly singular shift amplified past the range of f64;
                // restart from a fresh direction.
                x = (0..order).map(|_| rng.next_complex_normal()).collect();
                normalize(&mut x);
                continue;
            }
            // Simple eigenvalues: projecting out previously accepted vectors
            // costs little and guards clustered pairs.
            for prev in &vectors {
                let overlap = conj_inner(prev, &x);
                for (xi, pi) in x.iter_mut().zip(prev) {
                    *xi -= overlap * pi;
                }
            }
            if normalize(&mut x) == 0.0 {
                x = (0..order).map(|_| rng.next_complex_normal()).collect();
                normalize(&mut x);
                continue;
            }
            let resid = residual(cmv.matrix(), lambda, &x);
            if resid < best.0 {
                best = (resid, x.clone());
            }
            if best.0 < tol::EPS_EIG * 1e-3 {
                break;
            }
        }

        let (resid, mut z) = best;
        if resid > tol::EPS_EIG {
            return Err(Error::Eigensolver(format!(
                "inverse iteration stalled at residual {resid:.3e} for eigenvalue index {j}"
            )));
        }
        canonicalize_phase(&mut z);
        vectors.push(z);
        residuals.push(resid);
    }
    Ok((vectors, residuals))
}

fn residual(c: &CMatrix, lambda: Complex64, z: &[Complex64]) -> f64 {
    let cz = c.matvec(z);
    let diff: Vec<Complex64> = cz.iter().zip(z).map(|(a, b)| a - b * lambda).collect();
    norm2(&diff)
}

/// Rotates a vector's global phase so its largest-magnitude component is real
/// and positive; outer products are unchanged but reports become reproducible.
pub fn canonicalize_phase(z: &mut [Complex64]) {
    let mut best = 0usize;
    let mut best_mag = 0.0f64;
    for (i, c) in z.iter().enumerate() {
        let m = c.norm();
        if m > best_mag {
            best_mag = m;
            best = i;
        }
    }
    if best_mag == 0.0 {
        return;
    }
    let rot = z[best].conj() / best_mag;
    z.iter_mut().for_each(|c| *c *= rot);
}

/// The reduction C₁₁ − C₁₂ (C₂₂ − ζI)^{−1} C₂₁ of a partitioned CMV matrix;
/// equals the CMV matrix of (α₀,…,α_{m−1}, b_m(ζ)) when ζ is on the circle.
/// Returns the reduced matrix after asserting that equality.
pub fn schur_complement_reduce(
    p: &ParameterArray,
    m: usize,
    zeta: CirclePoint,
) -> Result<CMatrix> {
    schur_complement_reduce_with(p, m, zeta, tol::EPS_SCHUR)
}

pub fn schur_complement_reduce_with(
    p: &ParameterArray,
    m: usize,
    zeta: CirclePoint,
    eps_schur: f64,
) -> Result<CMatrix> {
    let n = p.n();
    if m >= n {
        return Err(Error::IndexOutOfRange { m, n });
    }
    let cmv = build_cmv(p);
    let blocks = partition(&cmv, m)?;
    let z = zeta.to_complex();
    let tail_order = blocks.c22.order();
    let shifted = CMatrix::from_fn(tail_order, tail_order, |r, c| {
        if r == c {
            blocks.c22[(r, c)] - z
        } else {
            blocks.c22[(r, c)]
        }
    });
    let lu = Lu::factor(&shifted);
    // C₂₂ keeps its spectrum off the circle, so a tiny pivot means ζ drifted.
    if lu.min_pivot() < 1e-13 {
        return Err(Error::NearSingular {
            pivot: lu.min_pivot(),
        });
    }
    let solved = lu.solve_matrix(&blocks.c21);
    let reduced = blocks.c11.sub(&blocks.c12.mul(&solved));

    let b_m = pseudo_reflection(p, zeta, m)?;
    let small = build_cmv(&p.head(m, b_m)?);
    let deviation = reduced.max_abs_diff(small.matrix());
    if deviation > eps_schur {
        return Err(Error::HypothesisViolation(format!(
            "Schur reduction deviates from the reduced construction by {deviation:.3e}"
        )));
    }
    Ok(reduced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ZERO;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn params(alphas: &[Complex64], b: Complex64) -> ParameterArray {
        ParameterArray::new(alphas.to_vec(), b).unwrap()
    }

    fn random_params(n: usize, seed: u64) -> ParameterArray {
        let mut rng = SplitMix64(seed);
        let alphas = (0..n)
            .map(|_| {
                let r = 0.95 * rng.next_f64().sqrt();
                let t = TAU * rng.next_f64();
                Complex64::from_polar(r, t)
            })
            .collect();
        let b = Complex64::from_polar(1.0, TAU * rng.next_f64());
        ParameterArray::new(alphas, b).unwrap()
    }

    #[test]
    fn zero_parameters_give_cyclotomic_polynomial() {
        for n in 0..6 {
            let p = params(&vec![ZERO; n], c(1.0, 0.0));
            let z = c(0.7, -0.3);
            let want = z.powu(n as u32 + 1) - 1.0;
            assert!((popuc_eval(&p, z) - want).norm() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn value_at_origin_has_unit_modulus() {
        let p = random_params(5, 21);
        let v = popuc_eval(&p, ZERO);
        assert!((v.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eval_agrees_with_eigenvalue_product() {
        let p = random_params(4, 33);
        let dec = zeros_by_dense_oracle(&p).unwrap();
        let z = c(0.3, 1.1);
        let mut prod = c(1.0, 0.0);
        for lam in &dec.eigenvalues {
            prod *= z - lam.to_complex();
        }
        let got = popuc_eval(&p, z);
        assert!((got - prod).norm() / prod.norm().max(1.0) < 1e-8);
    }

    #[test]
    fn reflection_powers_for_zero_parameters() {
        let p = params(&[ZERO; 5], c(1.0, 0.0));
        let zeta = CirclePoint::from_angle(0.83);
        for j in 0..=5 {
            let got = pseudo_reflection(&p, zeta, j).unwrap();
            let want = zeta.to_complex().powu((5 - j) as u32);
            assert!((got - want).norm() < 1e-13, "j={j}");
        }
    }

    #[test]
    fn reflection_base_case_returns_b() {
        let p = random_params(4, 5);
        let zeta = CirclePoint::from_angle(2.0);
        assert_eq!(pseudo_reflection(&p, zeta, 4).unwrap(), p.b());
        assert!(pseudo_reflection(&p, zeta, 5).is_err());
    }

    #[test]
    fn reflection_stays_on_circle() {
        let p = random_params(8, 6);
        let mut rng = SplitMix64(17);
        for _ in 0..20 {
            let zeta = CirclePoint::from_angle(TAU * rng.next_f64());
            for m in 0..=8 {
                let b = pseudo_reflection(&p, zeta, m).unwrap();
                assert!((b.norm() - 1.0).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn gamma_of_zero_alpha_is_b() {
        let b = c(0.0, 1.0);
        assert!((gamma(ZERO, b).unwrap() - b).norm() < 1e-15);
    }

    #[test]
    fn gamma_is_unimodular() {
        let g = gamma(c(0.6, 0.0), c(0.0, 1.0)).unwrap();
        assert!((g.norm() - 1.0).abs() <= 1e-15);
    }

    #[test]
    fn gamma_real_symmetric_case() {
        let g = gamma(c(0.5, 0.0), c(1.0, 0.0)).unwrap();
        assert!((g - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn gamma_rejects_bad_inputs() {
        assert!(gamma(c(1.0, 0.0), c(1.0, 0.0)).is_err());
        assert!(gamma(c(0.3, 0.0), c(0.5, 0.0)).is_err());
    }

    #[test]
    fn zeros_of_cube_roots_case() {
        let p = params(&[ZERO, ZERO], c(1.0, 0.0));
        let dec = zeros(&p).unwrap();
        let want = [0.0, TAU / 3.0, 2.0 * TAU / 3.0];
        assert_eq!(dec.eigenvalues.len(), 3);
        for (got, want) in dec.angles().iter().zip(&want) {
            assert!(
                crate::circle::angular_distance(*got, *want) < 1e-10,
                "{got} vs {want}"
            );
        }
        assert!(!dec.used_fallback);
    }

    #[test]
    fn zeros_of_sixth_roots_case() {
        let p = params(&[ZERO; 5], c(1.0, 0.0));
        let dec = zeros(&p).unwrap();
        for (k, point) in dec.eigenvalues.iter().enumerate() {
            let want = TAU * k as f64 / 6.0;
            assert!(crate::circle::angular_distance(point.angle(), want) < 1e-10);
        }
    }

    #[test]
    fn lifted_phase_agrees_with_direct_recursion() {
        // Two routes to b_m(ζ): the Möbius recursion on values and the
        // closed-form lift composition. They must agree as unimodular
        // numbers at every level and sample point.
        let p = random_params(9, 777);
        let mut rng = SplitMix64(3);
        for _ in 0..12 {
            let theta = TAU * rng.next_f64();
            let zeta = CirclePoint::from_angle(theta);
            for m in 0..=9 {
                let direct = pseudo_reflection(&p, zeta, m).unwrap();
                let lifted = Complex64::from_polar(1.0, lifted_reflection_phase(&p, m, theta));
                assert!(
                    (direct - lifted).norm() < 1e-12,
                    "m={m} theta={theta}: {direct} vs {lifted}"
                );
            }
        }
    }

    #[test]
    fn lifted_phase_winds_exactly() {
        let p = random_params(8, 99);
        for m in 0..=8usize {
            let gain =
                (lifted_reflection_phase(&p, m, TAU) - lifted_reflection_phase(&p, m, 0.0)) / TAU;
            assert!(
                (gain - (8 - m) as f64).abs() < 1e-9,
                "m={m}: winding {gain}"
            );
        }
    }

    #[test]
    fn zeros_survive_extreme_localization() {
        // Radius 0.99 drives the phase derivative through huge Poisson
        // spikes; the exact lift must keep every turn.
        let mut rng = SplitMix64(2718);
        let alphas: Vec<Complex64> = (0..24)
            .map(|_| {
                let r = 0.99 * rng.next_f64().sqrt();
                Complex64::from_polar(r, TAU * rng.next_f64())
            })
            .collect();
        let p = ParameterArray::new(alphas, Complex64::from_polar(1.0, 1.2)).unwrap();
        let fast = zeros(&p).unwrap();
        assert!(!fast.used_fallback, "{:?}", fast.diagnostics);
        let slow = zeros_by_dense_oracle(&p).unwrap();
        for (a, b) in fast.eigenvalues.iter().zip(&slow.eigenvalues) {
            assert!(a.distance(b) < 1e-9);
        }
    }

    #[test]
    fn zeros_match_dense_oracle_on_random_input() {
        for n in [1usize, 2, 5, 9, 16] {
            let p = random_params(n, 900 + n as u64);
            let fast = zeros(&p).unwrap();
            let slow = zeros_by_dense_oracle(&p).unwrap();
            assert_eq!(fast.eigenvalues.len(), slow.eigenvalues.len());
            for (a, b) in fast.eigenvalues.iter().zip(&slow.eigenvalues) {
                assert!(a.distance(b) < 1e-9, "n={n}: {} vs {}", a.angle(), b.angle());
            }
        }
    }

    #[test]
    fn zeros_degenerate_single_parameter() {
        let p = params(&[], c(0.0, 1.0));
        let dec = zeros(&p).unwrap();
        assert_eq!(dec.eigenvalues.len(), 1);
        // C = (conj(b)) = −i, angle 3π/2.
        assert!((dec.eigenvalues[0].angle() - 1.5 * std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn eigenvectors_satisfy_residual_and_fullness() {
        let p = random_params(7, 1234);
        let dec = zeros(&p).unwrap();
        for r in &dec.residuals {
            assert!(*r <= tol::EPS_EIG);
        }
        assert!(dec.min_component_magnitude() > tol::EPS_COMP);
        assert!(dec.min_angular_gap() > tol::EPS_SEP);
    }

    #[test]
    fn schur_reduction_matches_reduced_cmv() {
        let p = params(&[ZERO; 5], c(1.0, 0.0));
        let zeta = CirclePoint::from_angle(0.0);
        let reduced = schur_complement_reduce(&p, 2, zeta).unwrap();
        // b₂(1) = 1, so the reduction is the 3×3 cyclic permutation.
        let want = build_cmv(&params(&[ZERO, ZERO], c(1.0, 0.0)));
        assert!(reduced.max_abs_diff(want.matrix()) < 1e-12);
    }

    #[test]
    fn schur_reduction_consistent_with_one_step_reflection() {
        let p = random_params(5, 88);
        let zeta = CirclePoint::from_angle(1.37);
        let reduced = schur_complement_reduce(&p, 4, zeta).unwrap();
        let b4 = pseudo_reflection(&p, zeta, 4).unwrap();
        let want = build_cmv(&p.head(4, b4).unwrap());
        assert!(reduced.max_abs_diff(want.matrix()) < tol::EPS_SCHUR);
    }

    #[test]
    fn determinant_factorization_along_reduction() {
        let p = random_params(6, 55);
        let zeta = CirclePoint::from_angle(2.6);
        let z = zeta.to_complex();
        for m in 0..6 {
            let cmv = build_cmv(&p);
            let blocks = partition(&cmv, m).unwrap();
            let b_m = pseudo_reflection(&p, zeta, m).unwrap();
            let small = build_cmv(&p.head(m, b_m).unwrap());
            let lhs = cmv.matrix().charpoly_at(z);
            let rhs = small.matrix().charpoly_at(z) * blocks.c22.charpoly_at(z);
            assert!(
                (lhs - rhs).norm() / lhs.norm().max(1e-30) < 1e-8,
                "m={m}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn monic_leading_coefficient_by_interpolation() {
        // Divided differences at n+2 nodes: the top coefficient of a degree
        // n+1 polynomial; independent of how popuc_eval computes values.
        let p = random_params(6, 321);
        let degree = 7usize;
        let nodes: Vec<Complex64> = (0..=degree)
            .map(|k| Complex64::from_polar(4.0, TAU * k as f64 / (degree + 1) as f64))
            .collect();
        let mut table: Vec<Complex64> = nodes.iter().map(|&z| popuc_eval(&p, z)).collect();
        for level in 1..=degree {
            for i in (level..=degree).rev() {
                table[i] = (table[i] - table[i - 1]) / (nodes[i] - nodes[i - level]);
            }
        }
        assert!((table[degree] - c(1.0, 0.0)).norm() < 1e-8);
    }
}
