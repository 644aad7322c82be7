//! Rank-one multiplicative perturbations of unitary matrices: passing from U
//! to U·S with rank(I − S) = 1, the characteristic-polynomial identity the
//! move satisfies, the adjugate spectral formula at simple eigenvalues, and
//! the interlacing statements these facts combine into.

use num_complex::Complex64;

use crate::circle::{match_point_sets, CirclePoint, CircularPointSet};
use crate::error::{Error, Result};
use crate::interlace::{interlace_check, InterlacingVerdict};
use crate::linalg::{conj_inner, dot_t, unitary_eigendecomposition, CMatrix, Lu, ONE};
use crate::params::check_unimodular;
use crate::tol;

/// A unitary matrix together with a unitary rank-one gauge: rank(I − S) = 1
/// is enforced at construction through the singular values of I − S.
#[derive(Debug, Clone)]
pub struct UnitaryPair {
    pub u: CMatrix,
    pub s: CMatrix,
    pub us: CMatrix,
}

impl UnitaryPair {
    pub fn new(u: CMatrix, s: CMatrix) -> Result<Self> {
        if u.order() != s.order() {
            return Err(Error::HypothesisViolation(format!(
                "order mismatch: U is {}, S is {}",
                u.order(),
                s.order()
            )));
        }
        for (name, m) in [("U", &u), ("S", &s)] {
            let err = m.unitarity_error();
            if err > 1e-8 {
                return Err(Error::HypothesisViolation(format!(
                    "{name} is not unitary: residual {err:.3e}"
                )));
            }
        }
        let diff = CMatrix::identity(s.order()).sub(&s);
        let sv = diff.singular_values();
        let sigma1 = sv.first().copied().unwrap_or(0.0);
        let sigma2 = sv.get(1).copied().unwrap_or(0.0);
        if sigma1 <= tol::EPS_RANK {
            return Err(Error::RankZero);
        }
        if sigma2 > tol::EPS_RANK {
            return Err(Error::RankAboveOne { sigma2 });
        }
        let us = u.mul(&s);
        Ok(Self { u, s, us })
    }

    pub fn order(&self) -> usize {
        self.u.order()
    }
}

/// Vectors with U·S − U = u vᵀ (plain transpose).
#[derive(Debug, Clone)]
pub struct RankOneFactors {
    pub u: Vec<Complex64>,
    pub v: Vec<Complex64>,
    /// ‖US − U − u vᵀ‖_max of the extraction.
    pub residual: f64,
}

/// Factors the rank-one difference US − U. The strongest column spans the
/// range; v collects the projection coefficients, absorbing all conjugation
/// so the reconstruction uses the plain transpose.
pub fn extract_rank_one(pair: &UnitaryPair) -> Result<RankOneFactors> {
    let a = pair.us.sub(&pair.u);
    let n = a.order();
    let (best_col, best_norm) = (0..n)
        .map(|j| (j, crate::linalg::norm2(&a.col(j))))
        .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap())
        .expect("nonzero order");
    if best_norm == 0.0 {
        return Err(Error::RankZero);
    }
    let u = a.col(best_col);
    let uu = conj_inner(&u, &u);
    let v: Vec<Complex64> = (0..n).map(|j| conj_inner(&u, &a.col(j)) / uu).collect();
    let residual = a.max_abs_diff(&CMatrix::outer(&u, &v));
    if residual > tol::EPS_RANK1 {
        return Err(Error::HypothesisViolation(format!(
            "rank-one extraction residual {residual:.3e} exceeds {:.1e}",
            tol::EPS_RANK1
        )));
    }
    Ok(RankOneFactors { u, v, residual })
}

/// Relative residual of
/// χ_U(ζ) = χ_{US}(ζ) + vᵀ·Adj(ζI − US)·u.
/// Away from the spectrum the adjugate is det·inverse (one linear solve); at
/// an eigenvalue it collapses to the spectral formula χ'(λ_j)·z_j z_j*.
pub fn charpoly_identity_residual(
    pair: &UnitaryPair,
    factors: &RankOneFactors,
    zeta: Complex64,
) -> Result<f64> {
    charpoly_identity_residual_raw(&pair.u, &pair.us, factors, zeta)
}

pub fn charpoly_identity_residual_raw(
    u: &CMatrix,
    us: &CMatrix,
    factors: &RankOneFactors,
    zeta: Complex64,
) -> Result<f64> {
    let n = us.order();
    let lhs = u.charpoly_at(zeta);

    let shifted = CMatrix::from_fn(n, n, |i, j| {
        let base = -us[(i, j)];
        if i == j {
            base + zeta
        } else {
            base
        }
    });
    let lu = Lu::factor(&shifted);

    let rhs = if lu.min_pivot() > 1e-8 {
        let det = lu.det();
        let x = lu.solve(&factors.u);
        det + det * dot_t(&factors.v, &x)
    } else {
        // ζ sits on (or hugs) the spectrum of US: use the adjugate spectral
        // form at the nearest eigenvalue.
        let eig = unitary_eigendecomposition(us)?;
        let (j, _) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .map(|(j, &l)| (j, (l - zeta).norm()))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .expect("nonzero order");
        let lambda = eig.eigenvalues[j];
        let deriv: Complex64 = eig
            .eigenvalues
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != j)
            .map(|(_, &mu)| lambda - mu)
            .product();
        let z = &eig.eigenvectors[j];
        let det = lu.det();
        det + deriv * dot_t(&factors.v, z) * conj_inner(z, &factors.u)
    };

    let denom = lhs.norm().max(rhs.norm());
    if denom < 1e-300 {
        return Ok(0.0);
    }
    Ok((lhs - rhs).norm() / denom)
}

/// Max-abs residual of the adjugate spectral formula
/// Adj(λ_j I − M) = χ'(λ_j)·z_j z_j*
/// at the j-th eigenvalue of a unitary matrix with simple spectrum, with the
/// left side built entirely from cofactor determinants.
pub fn thompson_mcenteggert_residual(m: &CMatrix, j: usize) -> Result<f64> {
    let eig = unitary_eigendecomposition(m)?;
    let n = m.order();
    if j >= n {
        return Err(Error::IndexOutOfRange { m: j, n });
    }
    let angles: Vec<CirclePoint> = eig
        .eigenvalues
        .iter()
        .map(|&l| CirclePoint::from_complex(l))
        .collect();
    for a in 0..n {
        for b in (a + 1)..n {
            let gap = angles[a].distance(&angles[b]);
            if gap <= tol::EPS_SEP {
                return Err(Error::NonSimpleSpectrum {
                    gap,
                    min_gap: tol::EPS_SEP,
                });
            }
        }
    }

    let lambda = eig.eigenvalues[j];
    let shifted = CMatrix::from_fn(n, n, |r, c| {
        let base = -m[(r, c)];
        if r == c {
            base + lambda
        } else {
            base
        }
    });
    let adj_cofactor = shifted.adjugate_by_cofactors();

    let deriv: Complex64 = eig
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != j)
        .map(|(_, &mu)| lambda - mu)
        .product();
    let z = &eig.eigenvectors[j];
    let spectral = CMatrix::from_fn(n, n, |r, c| deriv * z[r] * z[c].conj());

    Ok(adj_cofactor.max_abs_diff(&spectral))
}

/// Report of the diagonal phase-twist check: U against U·diag(1,…,β,…,1).
#[derive(Debug, Clone)]
pub struct PhaseTwistReport {
    /// Relative residuals of χ_{US}(λ_j) = χ'_U(λ_j)·λ_j(1−β)|a_j|², per j.
    pub identity_residuals: Vec<f64>,
    pub interlacing: InterlacingVerdict,
    pub spectrum_u: CircularPointSet,
    pub spectrum_us: CircularPointSet,
}

impl PhaseTwistReport {
    pub fn max_identity_residual(&self) -> f64 {
        self.identity_residuals.iter().cloned().fold(0.0, f64::max)
    }

    pub fn all_ok(&self, eps: f64) -> bool {
        self.max_identity_residual() <= eps && self.interlacing.is_strict()
    }
}

/// Scaling one diagonal position of the identity by β ∈ S¹\{1} moves every
/// eigenvalue: the twisted characteristic polynomial at each original
/// eigenvalue equals χ'_U(λ_j)·λ_j(1−β)|a_j|² with a_j the eigenvector
/// component at the twisted position, and the two spectra strictly interlace.
/// Preconditions (simple spectrum, nonzero components at `position`) are
/// checked and reported per eigenvector.
pub fn phase_twist_check(u: &CMatrix, position: usize, beta: Complex64) -> Result<PhaseTwistReport> {
    let n = u.order();
    if position >= n {
        return Err(Error::IndexOutOfRange { m: position, n });
    }
    check_unimodular("beta", beta)?;
    let distance = CirclePoint::from_complex(beta).distance(&CirclePoint::from_angle(0.0));
    if distance <= tol::EPS_MATCH {
        return Err(Error::BetaIsOne { distance });
    }

    let eig = unitary_eigendecomposition(u)?;
    let spectrum_u = CircularPointSet::new(
        eig.eigenvalues
            .iter()
            .map(|&l| CirclePoint::from_complex(l))
            .collect(),
        "sigma(U)",
    );
    if spectrum_u.len() < n {
        return Err(Error::NonSimpleSpectrum {
            gap: spectrum_u.min_gap(),
            min_gap: tol::EPS_MATCH,
        });
    }
    for (j, z) in eig.eigenvectors.iter().enumerate() {
        let magnitude = z[position].norm();
        if magnitude <= tol::EPS_COMP {
            return Err(Error::ZeroEigenvectorComponent {
                component: j,
                position,
                magnitude,
            });
        }
    }

    let mut diag = vec![ONE; n];
    diag[position] = beta;
    let us = u.mul(&CMatrix::diagonal(&diag));

    let identity_residuals: Vec<f64> = (0..n)
        .map(|j| {
            let lambda = eig.eigenvalues[j];
            let lhs = us.charpoly_at(lambda);
            let deriv: Complex64 = eig
                .eigenvalues
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .map(|(_, &mu)| lambda - mu)
                .product();
            let a_sq = eig.eigenvectors[j][position].norm_sqr();
            let rhs = deriv * lambda * (Complex64::new(1.0, 0.0) - beta) * a_sq;
            let denom = lhs.norm().max(rhs.norm()).max(1e-300);
            (lhs - rhs).norm() / denom
        })
        .collect();

    let us_eig = unitary_eigendecomposition(&us)?;
    let spectrum_us = CircularPointSet::new(
        us_eig
            .eigenvalues
            .iter()
            .map(|&l| CirclePoint::from_complex(l))
            .collect(),
        "sigma(US)",
    );
    let interlacing = interlace_check(&spectrum_u, &spectrum_us, true)?;

    Ok(PhaseTwistReport {
        identity_residuals,
        interlacing,
        spectrum_u,
        spectrum_us,
    })
}

/// Report of the refined direct-sum statement: when U·S = U₁ ⊕ U₂, the three
/// pairwise spectrum intersections coincide and, after removing the common
/// part, the spectra strictly interlace.
#[derive(Debug, Clone)]
pub struct DirectSumRefinementReport {
    pub spectrum_u: CircularPointSet,
    pub spectrum_u1: CircularPointSet,
    pub spectrum_u2: CircularPointSet,
    /// U₁∩U₂ = U₁∩U = U₂∩U as matched angle sets.
    pub claim_ok: bool,
    pub common: CircularPointSet,
    pub interlacing: InterlacingVerdict,
    /// Relative residuals of χ_U(λ_j) = (χ'₁χ₂ + χ₁χ'₂)(λ_j)·(z_j*u)(vᵀz_j)
    /// over the eigenvalues of U·S.
    pub product_rule_residuals: Vec<f64>,
    /// min over λ ∈ σ(U₁) of |det(λI − U₁₁)| and the U₂ analogue; the lemma
    /// hypotheses ask these to stay away from zero.
    pub submatrix_clearance: (f64, f64),
}

impl DirectSumRefinementReport {
    pub fn max_product_rule_residual(&self) -> f64 {
        self.product_rule_residuals
            .iter()
            .cloned()
            .fold(0.0, f64::max)
    }
}

/// Checks the refined statement on a pair whose product is block diagonal
/// with blocks of order `split` and order−split.
pub fn direct_sum_refinement_check(
    pair: &UnitaryPair,
    split: usize,
) -> Result<DirectSumRefinementReport> {
    let n = pair.order();
    if split == 0 || split >= n {
        return Err(Error::IndexOutOfRange { m: split, n });
    }
    let off_upper = pair.us.block(0, split, split, n).max_abs();
    let off_lower = pair.us.block(split, n, 0, split).max_abs();
    let off = off_upper.max(off_lower);
    if off > 1e-10 {
        return Err(Error::HypothesisViolation(format!(
            "US is not block diagonal at split {split}: off-block magnitude {off:.3e}"
        )));
    }
    let u1 = pair.us.block(0, split, 0, split);
    let u2 = pair.us.block(split, n, split, n);

    let eig_u = unitary_eigendecomposition(&pair.u)?;
    let eig1 = unitary_eigendecomposition(&u1)?;
    let eig2 = unitary_eigendecomposition(&u2)?;

    let to_set = |vals: &[Complex64], label: &str| {
        CircularPointSet::new(
            vals.iter().map(|&l| CirclePoint::from_complex(l)).collect(),
            label,
        )
    };
    let spectrum_u = to_set(&eig_u.eigenvalues, "sigma(U)");
    let spectrum_u1 = to_set(&eig1.eigenvalues, "sigma(U1)");
    let spectrum_u2 = to_set(&eig2.eigenvalues, "sigma(U2)");

    if spectrum_u1.len() < u1.order() || spectrum_u2.len() < u2.order() {
        return Err(Error::NonSimpleSpectrum {
            gap: spectrum_u1.min_gap().min(spectrum_u2.min_gap()),
            min_gap: tol::EPS_MATCH,
        });
    }

    // Hypothesis clearance: eigenvalues of a block must not be eigenvalues of
    // the corresponding principal submatrix of U.
    let u11 = pair.u.block(0, split, 0, split);
    let u22 = pair.u.block(split, n, split, n);
    let clearance = |sub: &CMatrix, spectrum: &CircularPointSet| -> f64 {
        spectrum
            .points()
            .iter()
            .map(|p| sub.charpoly_at(p.to_complex()).norm())
            .fold(f64::INFINITY, f64::min)
    };
    let submatrix_clearance = (clearance(&u11, &spectrum_u1), clearance(&u22, &spectrum_u2));

    let common = spectrum_u1.intersection(&spectrum_u2, tol::EPS_MATCH, "U1 cap U2");
    let c_u1_u = spectrum_u1.intersection(&spectrum_u, tol::EPS_MATCH, "U1 cap U");
    let c_u2_u = spectrum_u2.intersection(&spectrum_u, tol::EPS_MATCH, "U2 cap U");
    let claim_ok = same_sets(&common, &c_u1_u) && same_sets(&common, &c_u2_u);

    let lhs_set = spectrum_u.difference(&common, tol::EPS_MATCH, "U minus common");
    let rhs_set = spectrum_u1.union(
        &spectrum_u2.difference(&common, tol::EPS_MATCH, "U2 minus common"),
        "U1 with U2 minus common",
    );
    let (small, large) = if lhs_set.len() <= rhs_set.len() {
        (&lhs_set, &rhs_set)
    } else {
        (&rhs_set, &lhs_set)
    };
    let interlacing = interlace_check(small, large, true)?;

    // Product-rule identity over σ(US), using the block structure of the
    // eigenvectors of U₁ ⊕ U₂.
    let factors = extract_rank_one(pair)?;
    let mut product_rule_residuals = Vec::with_capacity(n);
    let mut push_residual = |lambda: Complex64, z: Vec<Complex64>| {
        let lhs = pair.u.charpoly_at(lambda);
        let chi1 = poly_from_roots(&eig1.eigenvalues, lambda);
        let chi2 = poly_from_roots(&eig2.eigenvalues, lambda);
        let d1 = poly_derivative_from_roots(&eig1.eigenvalues, lambda);
        let d2 = poly_derivative_from_roots(&eig2.eigenvalues, lambda);
        let pairing = conj_inner(&z, &factors.u) * dot_t(&factors.v, &z);
        let rhs = (d1 * chi2 + chi1 * d2) * pairing;
        let denom = lhs.norm().max(rhs.norm()).max(1e-300);
        product_rule_residuals.push((lhs - rhs).norm() / denom);
    };
    for (j, &lambda) in eig1.eigenvalues.iter().enumerate() {
        let mut z = vec![Complex64::new(0.0, 0.0); n];
        z[..split].copy_from_slice(&eig1.eigenvectors[j]);
        push_residual(lambda, z);
    }
    for (j, &lambda) in eig2.eigenvalues.iter().enumerate() {
        let mut z = vec![Complex64::new(0.0, 0.0); n];
        z[split..].copy_from_slice(&eig2.eigenvectors[j]);
        push_residual(lambda, z);
    }

    Ok(DirectSumRefinementReport {
        spectrum_u,
        spectrum_u1,
        spectrum_u2,
        claim_ok,
        common,
        interlacing,
        product_rule_residuals,
        submatrix_clearance,
    })
}

fn same_sets(a: &CircularPointSet, b: &CircularPointSet) -> bool {
    if a.len() != b.len() {
        return false;
    }
    match_point_sets(a.points(), b.points(), tol::EPS_MATCH).pairs.len() == a.len()
}

fn poly_from_roots(roots: &[Complex64], at: Complex64) -> Complex64 {
    roots.iter().map(|&r| at - r).product()
}

/// Derivative of ∏(z − r_k) at `at`: Σ_i ∏_{k≠i}(at − r_k). Stable at and off
/// the roots, unlike dividing the product by (at − r_i).
fn poly_derivative_from_roots(roots: &[Complex64], at: Complex64) -> Complex64 {
    let n = roots.len();
    (0..n)
        .map(|i| {
            roots
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, &r)| at - r)
                .product::<Complex64>()
        })
        .sum()
}

/// Unitary Householder-type gauge I − (1 − β)·w w* for a unit vector w:
/// eigenvalues {β, 1, …, 1}, so rank(I − S) = 1. Used to synthesize pairs.
pub fn householder_gauge(w: &[Complex64], beta: Complex64) -> Result<CMatrix> {
    check_unimodular("beta", beta)?;
    let nrm = crate::linalg::norm2(w);
    if nrm == 0.0 {
        return Err(Error::HypothesisViolation("zero gauge vector".into()));
    }
    let n = w.len();
    let one_minus = Complex64::new(1.0, 0.0) - beta;
    Ok(CMatrix::from_fn(n, n, |i, j| {
        let base = if i == j { ONE } else { Complex64::new(0.0, 0.0) };
        base - one_minus * (w[i] / nrm) * (w[j] / nrm).conj()
    }))
}
