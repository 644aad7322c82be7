//! Circular interlacing: the decision procedure for finite point sets on the
//! unit circle, and the theorem-level verifiers (tail rotation, refined
//! common-eigenvalue interlacing, the consecutive-degree corollary, and the
//! structural gauge/direct-sum identities behind them).
//!
//! The decision procedure reduces the padded-alternation definition to gap
//! occupancy. With `large` of size q and `small` of size p ≤ q:
//! - STRICT ⟺ no point of `small` coincides with a point of `large` and every
//!   open arc between circularly consecutive `large` points holds at most one
//!   `small` point; the q − p empty arcs then take midpoint padding.
//! - WEAK additionally tolerates coincidences: a gap counts as served when it
//!   holds an interior `small` point or one of its endpoints coincides with a
//!   `small` point; the remaining unserved gaps must be coverable by q − p
//!   padding points, where a point placed on a shared `large` endpoint serves
//!   both neighboring gaps (a circular run of r unserved gaps costs ⌈r/2⌉).
//! Both reductions are validated against a definition-level brute force in
//! the test suites.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circle::{match_point_sets, CirclePoint, CircularPointSet, TAU};
use crate::cmv::{build_cmv, gauge_matrices, theta_block};
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, ONE};
use crate::params::{check_unimodular, ParameterArray};
use crate::popuc::{
    gamma, lifted_reflection_phase, monotone_phase_roots, zeros_with, SpectralDecomposition,
};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Strict,
    Weak,
    Fail,
}

/// Outcome of an interlacing decision, with a padding witness on success and
/// an offending arc on failure (degenerate — equal endpoints — when the
/// obstruction is a coincident pair).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InterlacingVerdict {
    pub verdict: Verdict,
    pub padding: Vec<CirclePoint>,
    pub violation: Option<(CirclePoint, CirclePoint)>,
}

impl InterlacingVerdict {
    pub fn is_strict(&self) -> bool {
        self.verdict == Verdict::Strict
    }

    pub fn interlaces_weakly(&self) -> bool {
        self.verdict != Verdict::Fail
    }
}

pub fn interlace_check(
    small: &CircularPointSet,
    large: &CircularPointSet,
    strict: bool,
) -> Result<InterlacingVerdict> {
    interlace_check_with(small, large, strict, tol::EPS_MATCH)
}

/// Classifies into the strongest verdict (STRICT > WEAK > FAIL). The `strict`
/// flag only affects reporting: when a strict check comes back WEAK, the
/// coincidence blocking strictness is attached as the (degenerate) violation.
pub fn interlace_check_with(
    small: &CircularPointSet,
    large: &CircularPointSet,
    strict: bool,
    eps: f64,
) -> Result<InterlacingVerdict> {
    if small.is_empty() || large.is_empty() {
        return Err(Error::EmptySet);
    }
    if small.len() > large.len() {
        return Err(Error::HypothesisViolation(format!(
            "small set has {} points, large only {}",
            small.len(),
            large.len()
        )));
    }

    let p = small.len();
    let q = large.len();
    let larges = large.points();

    // Sort each small point into a gap of the large set, or mark it
    // coincident with a large point.
    let mut counts = vec![0usize; q];
    let mut endpoint_hit = vec![false; q];
    let mut first_coincidence: Option<(CirclePoint, CirclePoint)> = None;
    for s in small.points() {
        let (nearest, dist) = larges
            .iter()
            .enumerate()
            .map(|(j, l)| (j, s.distance(l)))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .expect("large is nonempty");
        if dist <= eps {
            endpoint_hit[nearest] = true;
            if first_coincidence.is_none() {
                first_coincidence = Some((*s, larges[nearest]));
            }
        } else {
            counts[gap_of(larges, s.angle())] += 1;
        }
    }

    // An overfull open arc defeats both variants.
    if let Some(i) = counts.iter().position(|&c| c >= 2) {
        return Ok(InterlacingVerdict {
            verdict: Verdict::Fail,
            padding: vec![],
            violation: Some((larges[i], larges[(i + 1) % q])),
        });
    }

    if first_coincidence.is_none() {
        // counts ≤ 1 everywhere and all points distinct: strict, with
        // midpoints of the q − p empty gaps as the witness.
        let padding: Vec<CirclePoint> = (0..q)
            .filter(|&i| counts[i] == 0)
            .map(|i| gap_midpoint(larges, i))
            .collect();
        debug_assert_eq!(padding.len(), q - p);
        return Ok(InterlacingVerdict {
            verdict: Verdict::Strict,
            padding,
            violation: None,
        });
    }

    // Coincidences present: weak is the best possible. Serve gaps, then try
    // to cover the unserved ones within the padding budget.
    let served: Vec<bool> = (0..q)
        .map(|i| counts[i] == 1 || endpoint_hit[i] || endpoint_hit[(i + 1) % q])
        .collect();
    let budget = q - p;
    match cover_unserved_gaps(larges, &served, budget) {
        Ok(mut padding) => {
            // Any leftover budget parks on large points, where it cannot
            // disturb a closed-arc condition.
            while padding.len() < budget {
                padding.push(larges[padding.len() % q]);
            }
            Ok(InterlacingVerdict {
                verdict: Verdict::Weak,
                padding,
                violation: if strict { first_coincidence } else { None },
            })
        }
        Err(run_span) => Ok(InterlacingVerdict {
            verdict: Verdict::Fail,
            padding: vec![],
            violation: Some(run_span),
        }),
    }
}

/// Index of the open arc (large[i], large[i+1]) containing `angle`; the
/// caller guarantees `angle` hits no large point.
fn gap_of(larges: &[CirclePoint], angle: f64) -> usize {
    let q = larges.len();
    let mut idx = None;
    for (i, l) in larges.iter().enumerate() {
        if l.angle() <= angle {
            idx = Some(i);
        } else {
            break;
        }
    }
    idx.unwrap_or(q - 1)
}

fn gap_midpoint(larges: &[CirclePoint], i: usize) -> CirclePoint {
    let q = larges.len();
    let a = larges[i].angle();
    let b = larges[(i + 1) % q].angle();
    let width = (b - a).rem_euclid(TAU);
    let width = if width == 0.0 { TAU } else { width };
    CirclePoint::from_angle(a + width / 2.0)
}

/// Greedy cover of circular runs of unserved gaps: padding on the shared
/// endpoint of two adjacent unserved gaps serves both. Returns the chosen
/// padding points, or the arc spanning the first run when the budget is
/// insufficient overall.
fn cover_unserved_gaps(
    larges: &[CirclePoint],
    served: &[bool],
    budget: usize,
) -> std::result::Result<Vec<CirclePoint>, (CirclePoint, CirclePoint)> {
    let q = served.len();
    if served.iter().all(|&s| s) {
        return Ok(vec![]);
    }
    if served.iter().all(|&s| !s) {
        // Full cycle of unserved gaps: alternate endpoints cover two each.
        let need = q.div_ceil(2);
        if need > budget {
            return Err((larges[0], larges[0]));
        }
        let mut pads: Vec<CirclePoint> = (0..q / 2).map(|k| larges[2 * k + 1]).collect();
        if q % 2 == 1 {
            pads.push(larges[0]);
        }
        return Ok(pads);
    }

    // Walk runs starting just after a served gap.
    let start = (0..q).find(|&i| served[i]).expect("some gap is served");
    let mut pads = Vec::new();
    let mut i = (start + 1) % q;
    let mut first_run_span: Option<(CirclePoint, CirclePoint)> = None;
    while i != start {
        if served[i] {
            i = (i + 1) % q;
            continue;
        }
        let run_start = i;
        let mut len = 0usize;
        while !served[i] && i != start {
            len += 1;
            i = (i + 1) % q;
        }
        if first_run_span.is_none() {
            first_run_span = Some((larges[run_start], larges[(run_start + len) % q]));
        }
        // Gaps run_start .. run_start+len−1: cover pairs at interior shared
        // endpoints, odd leftover at the run's final endpoint.
        for k in 0..len / 2 {
            pads.push(larges[(run_start + 2 * k + 1) % q]);
        }
        if len % 2 == 1 {
            pads.push(larges[(run_start + len) % q]);
        }
    }
    if pads.len() > budget {
        Err(first_run_span.expect("at least one run exists"))
    } else {
        Ok(pads)
    }
}

/// (α₀,…,α_{m−1}, β·α_m,…, β·α_{n−1}, β·b) for m < n; only b is rotated at
/// m = n. β must be unimodular and distinct from 1.
pub fn rotate_tail(p: &ParameterArray, m: usize, beta: Complex64) -> Result<ParameterArray> {
    let n = p.n();
    if m > n {
        return Err(Error::IndexOutOfRange { m, n });
    }
    check_unimodular("beta", beta)?;
    let distance = CirclePoint::from_complex(beta).distance(&CirclePoint::from_angle(0.0));
    if distance <= tol::EPS_MATCH {
        return Err(Error::BetaIsOne { distance });
    }
    let mut alphas = p.alphas().to_vec();
    for a in alphas.iter_mut().skip(m) {
        *a *= beta;
    }
    ParameterArray::new(alphas, p.b() * beta)
}

/// Spectra of C(p) and of the tail-rotated array strictly interlace; equal
/// cardinalities make the verdict a perfect-alternation test.
///
/// Tail rotations deep in the array can move some zeros by as little as
/// |1−β|·|a_j|² (eigenvector localization), which may sit below the default
/// matching tolerance. A non-strict first verdict is therefore re-decided
/// from zeros recomputed at tightened bisection with the 1e−11 matching
/// level, the same escalation used for branch membership.
pub fn verify_rotation_interlacing(
    p: &ParameterArray,
    m: usize,
    beta: Complex64,
) -> Result<InterlacingVerdict> {
    let rotated = rotate_tail(p, m, beta)?;
    let original = crate::popuc::zeros(p)?;
    let moved = crate::popuc::zeros(&rotated)?;
    let a = spectrum_set(&original, "sigma(C)");
    let b = spectrum_set(&moved, "sigma(C rotated)");
    let first = interlace_check(&a, &b, true)?;
    if first.is_strict() {
        return Ok(first);
    }
    let tight_a = spectrum_set(&zeros_with(p, 1e-14)?, "sigma(C)");
    let tight_b = spectrum_set(&zeros_with(&rotated, 1e-14)?, "sigma(C rotated)");
    interlace_check_with(&tight_a, &tight_b, true, 1e-11)
}

pub fn spectrum_set(dec: &SpectralDecomposition, label: impl Into<String>) -> CircularPointSet {
    CircularPointSet::new(dec.eigenvalues.clone(), label)
}

/// The gauged tail matrix N = C(α_{m+1},…,α_{n−1}, b) · diag(γ_m, I) of
/// order n − m, unitary by construction.
pub fn build_gauged_tail(p: &ParameterArray, m: usize, b_m: Complex64) -> Result<CMatrix> {
    let n = p.n();
    if m >= n {
        return Err(Error::IndexOutOfRange { m, n });
    }
    check_unimodular("b_m", b_m)?;
    let tail = build_cmv(&p.tail(m)?);
    let g = gamma(p.alpha(m), b_m)?;
    let mut d = vec![ONE; n - m];
    d[0] = g;
    Ok(tail.matrix().mul(&CMatrix::diagonal(&d)))
}

/// The level set {ζ : b_m(ζ) = b_m} with provenance flags.
#[derive(Debug, Clone)]
pub struct LevelSet {
    pub points: CircularPointSet,
    /// True when bracketing failed and the points came from the spectrum of
    /// the gauged tail instead.
    pub used_fallback: bool,
    pub diagnostics: Vec<String>,
}

/// Solutions of b_m(ζ) = b_m on the circle: the phase of b_m(ζ)·conj(b_m)
/// winds n − m times, so the same bracketing used for zeros applies.
pub fn level_set_candidates(
    p: &ParameterArray,
    m: usize,
    b_m: Complex64,
) -> Result<CircularPointSet> {
    Ok(level_set(p, m, b_m, tol::THETA_BISECT)?.points)
}

pub fn level_set(
    p: &ParameterArray,
    m: usize,
    b_m: Complex64,
    theta_bisect: f64,
) -> Result<LevelSet> {
    let n = p.n();
    if m >= n {
        return Err(Error::IndexOutOfRange { m, n });
    }
    check_unimodular("b_m", b_m)?;
    let lift = |theta: f64| lifted_reflection_phase(p, m, theta);
    let mut diagnostics = Vec::new();
    match monotone_phase_roots(&lift, n - m, b_m.arg(), theta_bisect) {
        Ok(roots) => Ok(LevelSet {
            points: CircularPointSet::new(
                roots.into_iter().map(CirclePoint::from_angle).collect(),
                "C",
            ),
            used_fallback: false,
            diagnostics,
        }),
        Err(err) => {
            // The level set coincides with σ(N): b_m(ζ) = b_m rewrites as
            // ζ·b_{m+1}(ζ) = γ_m, the eigenvalue criterion of the gauged
            // tail. When a Poisson spike hides the winding from the grid,
            // the dense eigensolver on N recovers the same points.
            diagnostics.push(format!(
                "level-set bracketing failed ({err}); using the gauged-tail spectrum"
            ));
            let gauged = build_gauged_tail(p, m, b_m)?;
            let eig = crate::linalg::unitary_eigendecomposition(&gauged)?;
            Ok(LevelSet {
                points: CircularPointSet::new(
                    eig.eigenvalues
                        .iter()
                        .map(|&l| CirclePoint::from_complex(l))
                        .collect(),
                    "C",
                ),
                used_fallback: true,
                diagnostics,
            })
        }
    }
}

/// Full report for the refined interlacing statement at a split index m.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RefinedInterlacingReport {
    pub m: usize,
    pub set_a: CircularPointSet,
    pub set_b: CircularPointSet,
    pub set_c: CircularPointSet,
    pub spectrum_full: CircularPointSet,
    pub spectrum_head: CircularPointSet,
    pub spectrum_gauged_tail: CircularPointSet,
    /// A equals the directly-matched common eigenvalues of the two spectra.
    pub common_agrees: bool,
    /// |A| ≤ min{m+1, n−m}.
    pub bound_ok: bool,
    /// A = σ(N) ∩ σ(C_m), the alternative expression.
    pub alt_expression_agrees: bool,
    /// Both interlacing operands have n+1−|A| points.
    pub cardinality_ok: bool,
    pub interlacing: InterlacingVerdict,
    /// Whether ambiguity forced a rerun at tightened tolerances.
    pub tightened: bool,
    /// True when the level set came from the gauged-tail spectrum; the
    /// alternative-expression check is then a self-comparison and vacuous.
    pub level_set_fallback: bool,
}

impl RefinedInterlacingReport {
    pub fn all_ok(&self) -> bool {
        self.common_agrees
            && self.bound_ok
            && self.alt_expression_agrees
            && self.cardinality_ok
            && self.interlacing.is_strict()
    }
}

pub fn verify_refined_interlacing(
    p: &ParameterArray,
    m: usize,
    b_m: Complex64,
) -> Result<RefinedInterlacingReport> {
    match refined_interlacing_pass(p, m, b_m, tol::THETA_BISECT, tol::EPS_MATCH, false) {
        Ok((report, ambiguous)) if ambiguous || !report.all_ok() => {
            // Either a matching decision sat near the equality threshold or
            // some assertion failed at default tolerances: redo the whole
            // pass with tighter localization before trusting the verdict. A
            // genuine failure stays a failure at the tightened level.
            let (report2, _) = refined_interlacing_pass(p, m, b_m, 1e-14, 1e-11, true)
                .unwrap_or((report.clone(), false));
            Ok(report2)
        }
        Ok((report, _)) => Ok(report),
        Err(e) => Err(e),
    }
}

fn refined_interlacing_pass(
    p: &ParameterArray,
    m: usize,
    b_m: Complex64,
    theta_bisect: f64,
    eps: f64,
    tightened: bool,
) -> Result<(RefinedInterlacingReport, bool)> {
    let n = p.n();
    if m >= n {
        return Err(Error::IndexOutOfRange { m, n });
    }
    check_unimodular("b_m", b_m)?;

    let full = zeros_with(p, theta_bisect)?;
    let head = zeros_with(&p.head(m, b_m)?, theta_bisect)?;
    let spectrum_full = spectrum_set(&full, "sigma(C_n)");
    let spectrum_head = spectrum_set(&head, "sigma(C_m)");

    let level = level_set(p, m, b_m, theta_bisect)?;
    let set_c = level.points;
    let gauged = build_gauged_tail(p, m, b_m)?;
    let tail_eig = crate::linalg::unitary_eigendecomposition(&gauged)?;
    let spectrum_gauged_tail = CircularPointSet::new(
        tail_eig
            .eigenvalues
            .iter()
            .map(|&l| CirclePoint::from_complex(l))
            .collect(),
        "sigma(N)",
    );

    let mut ambiguous = false;

    // A = C ∩ σ(C_m).
    let m_a = match_point_sets(set_c.points(), spectrum_head.points(), eps);
    ambiguous |= m_a.ambiguous;
    let set_a = CircularPointSet::new(
        m_a.pairs.iter().map(|&(i, _)| set_c.points()[i]).collect(),
        "A",
    );

    // Common eigenvalues of the two spectra, matched directly.
    let m_common = match_point_sets(spectrum_full.points(), spectrum_head.points(), eps);
    ambiguous |= m_common.ambiguous;
    let common = CircularPointSet::new(
        m_common
            .pairs
            .iter()
            .map(|&(i, _)| spectrum_full.points()[i])
            .collect(),
        "common",
    );
    let common_agrees = sets_equal(&set_a, &common, eps, &mut ambiguous);

    let bound_ok = set_a.len() <= (m + 1).min(n - m);

    // Alternative expression A = σ(N) ∩ σ(C_m).
    let m_alt = match_point_sets(spectrum_gauged_tail.points(), spectrum_head.points(), eps);
    ambiguous |= m_alt.ambiguous;
    let alt = CircularPointSet::new(
        m_alt
            .pairs
            .iter()
            .map(|&(i, _)| spectrum_gauged_tail.points()[i])
            .collect(),
        "alt",
    );
    let alt_expression_agrees = sets_equal(&set_a, &alt, eps, &mut ambiguous);

    let set_b = spectrum_gauged_tail.difference(&set_a, eps, "B");

    let lhs = spectrum_full.difference(&set_a, eps, "sigma(C_n) minus A");
    let rhs = spectrum_head.union(&set_b, "sigma(C_m) union B");
    let want = n + 1 - set_a.len();
    let cardinality_ok = lhs.len() == want && rhs.len() == want;

    let (small, large) = if lhs.len() <= rhs.len() {
        (&lhs, &rhs)
    } else {
        (&rhs, &lhs)
    };
    let interlacing = interlace_check_with(small, large, true, eps)?;

    Ok((
        RefinedInterlacingReport {
            m,
            set_a,
            set_b,
            set_c,
            spectrum_full,
            spectrum_head,
            spectrum_gauged_tail,
            common_agrees,
            bound_ok,
            alt_expression_agrees,
            cardinality_ok,
            interlacing,
            tightened,
            level_set_fallback: level.used_fallback,
        },
        ambiguous,
    ))
}

fn sets_equal(a: &CircularPointSet, b: &CircularPointSet, eps: f64, ambiguous: &mut bool) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let m = match_point_sets(a.points(), b.points(), eps);
    *ambiguous |= m.ambiguous;
    m.pairs.len() == a.len()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConsecutiveBranch {
    /// conj(b)·γ_{n−1} is the unique common eigenvalue.
    SharedPoint,
    /// Spectra are disjoint and conj(b)·γ_{n−1} belongs to neither.
    Disjoint,
}

/// Report for the consecutive-degree specialization (m = n − 1).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConsecutiveReport {
    pub zeta_star: CirclePoint,
    pub branch: ConsecutiveBranch,
    pub in_full_spectrum: bool,
    pub in_head_spectrum: bool,
    /// The branch-specific assertions (unique common point, or absent from
    /// both) all hold.
    pub branch_assertions_ok: bool,
    pub interlacing: InterlacingVerdict,
    pub spectrum_full: CircularPointSet,
    pub spectrum_head: CircularPointSet,
}

impl ConsecutiveReport {
    pub fn all_ok(&self) -> bool {
        self.branch_assertions_ok && self.interlacing.is_strict()
    }
}

pub fn verify_consecutive_interlacing(
    p: &ParameterArray,
    b_prev: Complex64,
) -> Result<ConsecutiveReport> {
    let report = consecutive_pass(p, b_prev, tol::THETA_BISECT, tol::EPS_MATCH)?;
    if report.all_ok() {
        return Ok(report);
    }
    // Same escalation as the refined check: re-decide from tighter zeros
    // with the 1e−11 matching level before accepting a failure.
    consecutive_pass(p, b_prev, 1e-14, 1e-11).or(Ok(report))
}

fn consecutive_pass(
    p: &ParameterArray,
    b_prev: Complex64,
    theta_bisect: f64,
    eps: f64,
) -> Result<ConsecutiveReport> {
    let n = p.n();
    if n == 0 {
        return Err(Error::IndexOutOfRange { m: 0, n: 0 });
    }
    check_unimodular("b_prev", b_prev)?;
    let zeta_star_value = p.b().conj() * gamma(p.alpha(n - 1), b_prev)?;
    let zeta_star = CirclePoint::from_complex(zeta_star_value);

    let full = zeros_with(p, theta_bisect)?;
    let head = zeros_with(&p.head(n - 1, b_prev)?, theta_bisect)?;
    let spectrum_full = spectrum_set(&full, "sigma(C_n)");
    let spectrum_head = spectrum_set(&head, "sigma(C_{n-1})");

    let in_full = robust_membership(&spectrum_full, &zeta_star, eps, || {
        zeros_with(p, 1e-14).map(|d| spectrum_set(&d, "sigma(C_n)"))
    })?;
    let in_head = robust_membership(&spectrum_head, &zeta_star, eps, || {
        zeros_with(&p.head(n - 1, b_prev)?, 1e-14).map(|d| spectrum_set(&d, "sigma(C_{n-1})"))
    })?;

    let (branch, branch_assertions_ok, interlacing) = if in_full && in_head {
        let common = spectrum_full.intersection(&spectrum_head, eps, "common");
        let unique_common = common.len() == 1 && common.points()[0].distance(&zeta_star) <= eps;
        let lhs = CircularPointSet::new(
            spectrum_full
                .points()
                .iter()
                .filter(|q| q.distance(&zeta_star) > eps)
                .cloned()
                .collect(),
            "sigma(C_n) minus zeta*",
        );
        let verdict = interlace_check_with(&lhs, &spectrum_head, true, eps)?;
        (ConsecutiveBranch::SharedPoint, unique_common, verdict)
    } else if !in_full && !in_head {
        let no_common = spectrum_full
            .intersection(&spectrum_head, eps, "common")
            .is_empty();
        let star_set = CircularPointSet::new(vec![zeta_star], "zeta*");
        let rhs = spectrum_head.union(&star_set, "sigma(C_{n-1}) with zeta*");
        let verdict = interlace_check_with(&spectrum_full, &rhs, true, eps)?;
        (ConsecutiveBranch::Disjoint, no_common, verdict)
    } else {
        // One-sided membership contradicts the dichotomy; report it as a
        // failed branch assertion rather than guessing.
        (
            if in_full {
                ConsecutiveBranch::SharedPoint
            } else {
                ConsecutiveBranch::Disjoint
            },
            false,
            InterlacingVerdict {
                verdict: Verdict::Fail,
                padding: vec![],
                violation: Some((zeta_star, zeta_star)),
            },
        )
    };

    Ok(ConsecutiveReport {
        zeta_star,
        branch,
        in_full_spectrum: in_full,
        in_head_spectrum: in_head,
        branch_assertions_ok,
        interlacing,
        spectrum_full,
        spectrum_head,
    })
}

/// Membership of a point in a computed spectrum at level `eps`. Distances in
/// the band (eps, 100·ε_match] are re-decided after recomputing the spectrum
/// at tightened bisection tolerance; the tightened threshold is 1e−11.
fn robust_membership(
    spectrum: &CircularPointSet,
    point: &CirclePoint,
    eps: f64,
    recompute: impl FnOnce() -> Result<CircularPointSet>,
) -> Result<bool> {
    let d = spectrum
        .points()
        .iter()
        .map(|q| q.distance(point))
        .fold(f64::INFINITY, f64::min);
    if d <= eps {
        return Ok(true);
    }
    if d > 100.0 * tol::EPS_MATCH {
        return Ok(false);
    }
    let tightened = recompute()?;
    let d2 = tightened
        .points()
        .iter()
        .map(|q| q.distance(point))
        .fold(f64::INFINITY, f64::min);
    Ok(d2 <= 1e-11)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitParity {
    Even,
    Odd,
}

/// Direct-sum identity at a split index m: the block-diagonal gauge
/// S = diag(I_m, Z, I_{n−m−1}) with Z = Θ_m^*·diag(conj(b_m), γ_m) satisfies
/// C_m ⊕ N = C_n·S (m odd) or C_m ⊕ Nᵀ = Sᵀ·C_n (m even). The report keeps
/// the pieces so callers can reuse them as a rank-one perturbation instance.
#[derive(Debug, Clone)]
pub struct DirectSumIdentity {
    pub m: usize,
    pub parity: SplitParity,
    /// Max-abs deviation between the two sides.
    pub deviation: f64,
    /// Largest two singular values of I − S.
    pub gauge_sigma: (f64, f64),
    pub gauge: CMatrix,
    pub head_matrix: CMatrix,
    pub gauged_tail: CMatrix,
    pub full_matrix: CMatrix,
}

impl DirectSumIdentity {
    pub fn identity_ok(&self, eps: f64) -> bool {
        self.deviation <= eps
    }

    pub fn gauge_rank_one(&self) -> bool {
        self.gauge_sigma.0 > tol::EPS_RANK && self.gauge_sigma.1 <= tol::EPS_RANK
    }

    /// The (U, S, split) triple realizing the identity as a unitary pair with
    /// U·S block diagonal: (C_n, S) for m odd, (C_nᵀ, S) for m even.
    pub fn perturbation_instance(&self) -> (CMatrix, CMatrix, usize) {
        match self.parity {
            SplitParity::Odd => (self.full_matrix.clone(), self.gauge.clone(), self.m + 1),
            SplitParity::Even => (
                self.full_matrix.transpose(),
                self.gauge.clone(),
                self.m + 1,
            ),
        }
    }
}

pub fn verify_direct_sum_identity(
    p: &ParameterArray,
    m: usize,
    b_m: Complex64,
) -> Result<DirectSumIdentity> {
    let n = p.n();
    if m >= n {
        return Err(Error::IndexOutOfRange { m, n });
    }
    check_unimodular("b_m", b_m)?;

    let g = gamma(p.alpha(m), b_m)?;
    let z = theta_block(p.alpha(m))?
        .matrix()
        .adjoint()
        .mul(&CMatrix::diagonal(&[b_m.conj(), g]));

    let order = n + 1;
    let mut s = CMatrix::identity(order);
    s.set_block(m, m, &z);

    let full = build_cmv(p);
    let head = build_cmv(&p.head(m, b_m)?);
    let tail = build_gauged_tail(p, m, b_m)?;

    let (parity, lhs, rhs) = if m % 2 == 1 {
        (
            SplitParity::Odd,
            head.matrix().direct_sum(&tail),
            full.matrix().mul(&s),
        )
    } else {
        (
            SplitParity::Even,
            head.matrix().direct_sum(&tail.transpose()),
            s.transpose().mul(full.matrix()),
        )
    };
    let deviation = lhs.max_abs_diff(&rhs);

    let eye_minus_s = CMatrix::identity(order).sub(&s);
    let sv = eye_minus_s.singular_values();
    let gauge_sigma = (
        sv.first().copied().unwrap_or(0.0),
        sv.get(1).copied().unwrap_or(0.0),
    );

    Ok(DirectSumIdentity {
        m,
        parity,
        deviation,
        gauge_sigma,
        gauge: s,
        head_matrix: head.matrix().clone(),
        gauged_tail: tail,
        full_matrix: full.matrix().clone(),
    })
}

/// Gauge-conjugation identity behind the tail-rotation statement:
/// D*·C·D·S = C_m^β for even m, S·D·C·D* = C_m^β for odd m (m = n allowed).
/// Returns the max-abs deviation between the two sides.
pub fn gauge_conjugation_deviation(
    p: &ParameterArray,
    m: usize,
    beta: Complex64,
) -> Result<f64> {
    let n = p.n();
    let rotated = build_cmv(&rotate_tail(p, m, beta)?);
    let (s, d, _v) = gauge_matrices(n, m, beta)?;
    let c = build_cmv(p);
    let conjugated = if m % 2 == 0 {
        d.adjoint().mul(c.matrix()).mul(&d).mul(&s)
    } else {
        s.mul(&d).mul(c.matrix()).mul(&d.adjoint())
    };
    Ok(conjugated.max_abs_diff(rotated.matrix()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{SplitMix64, ZERO};
    use crate::popuc::zeros;

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

    fn set(angles: &[f64]) -> CircularPointSet {
        CircularPointSet::from_angles(angles, "t")
    }

    /// One location of the merged configuration, with membership flags.
    #[derive(Debug, Clone, Copy)]
    struct Loc {
        angle: f64,
        in_a: bool,
        in_b: bool,
    }

    fn merge_locations(a: &CircularPointSet, b: &CircularPointSet) -> Vec<Loc> {
        let mut locs: Vec<Loc> = a
            .points()
            .iter()
            .map(|p| Loc {
                angle: p.angle(),
                in_a: true,
                in_b: false,
            })
            .collect();
        for q in b.points() {
            if let Some(l) = locs
                .iter_mut()
                .find(|l| crate::circle::angular_distance(l.angle, q.angle()) <= tol::EPS_MATCH)
            {
                l.in_b = true;
            } else {
                locs.push(Loc {
                    angle: q.angle(),
                    in_a: false,
                    in_b: true,
                });
            }
        }
        locs.sort_by(|x, y| x.angle.partial_cmp(&y.angle).unwrap());
        locs
    }

    /// Definition-level check for equal-size sets: strict demands pairwise
    /// distinct locations in perfect circular alternation; weak demands that
    /// every closed arc between consecutive same-side locations contain a
    /// point of the other side (coincident locations count for both sides).
    fn alternation_oracle(a: &CircularPointSet, b: &CircularPointSet, strict: bool) -> bool {
        assert_eq!(a.len(), b.len());
        let locs = merge_locations(a, b);
        if strict {
            if locs.iter().any(|l| l.in_a && l.in_b) {
                return false;
            }
            let k = locs.len();
            return (0..k).all(|i| locs[i].in_a != locs[(i + 1) % k].in_a);
        }
        closed_arcs_hit(&locs, true) && closed_arcs_hit(&locs, false)
    }

    /// For `side_a`: walk consecutive locations belonging to side A and check
    /// each closed arc between them for a side-B location (endpoints count).
    fn closed_arcs_hit(locs: &[Loc], side_a: bool) -> bool {
        let own: Vec<usize> = locs
            .iter()
            .enumerate()
            .filter(|(_, l)| if side_a { l.in_a } else { l.in_b })
            .map(|(i, _)| i)
            .collect();
        if own.len() < 2 {
            return true;
        }
        let k = own.len();
        let total = locs.len();
        for w in 0..k {
            let from = own[w];
            let to = own[(w + 1) % k];
            let mut hit = false;
            let mut i = from;
            loop {
                let other = if side_a { locs[i].in_b } else { locs[i].in_a };
                if other {
                    hit = true;
                }
                if i == to {
                    break;
                }
                i = (i + 1) % total;
            }
            if !hit {
                return false;
            }
        }
        true
    }

    #[test]
    fn perfect_triangles_interlace_strictly() {
        let small = set(&[0.0, TAU / 3.0, 2.0 * TAU / 3.0]);
        let large = set(&[TAU / 6.0, TAU / 2.0, 5.0 * TAU / 6.0]);
        let v = interlace_check(&small, &large, true).unwrap();
        assert_eq!(v.verdict, Verdict::Strict);
        assert!(v.padding.is_empty());
    }

    #[test]
    fn crowded_arc_fails_with_witness() {
        let small = set(&[0.0, 0.1]);
        let large = set(&[1.0, 2.0, 3.0, 4.0]);
        let v = interlace_check(&small, &large, true).unwrap();
        assert_eq!(v.verdict, Verdict::Fail);
        let (a, b) = v.violation.expect("violation populated");
        assert!((a.angle() - 4.0).abs() < 1e-12);
        assert!((b.angle() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn padding_witness_fills_empty_gaps() {
        let small = set(&[0.5]);
        let large = set(&[0.0, 1.0, 2.0, 3.0]);
        let v = interlace_check(&small, &large, true).unwrap();
        assert_eq!(v.verdict, Verdict::Strict);
        assert_eq!(v.padding.len(), 3);
        // Extended small must alternate with large.
        let mut ext: Vec<f64> = v.padding.iter().map(|p| p.angle()).collect();
        ext.push(0.5);
        let extended = CircularPointSet::from_angles(&ext, "ext");
        let again = interlace_check(&extended, &large, true).unwrap();
        assert_eq!(again.verdict, Verdict::Strict);
    }

    #[test]
    fn coincidence_downgrades_to_weak() {
        let small = set(&[0.0, 2.0]);
        let large = set(&[0.0, 1.0, 3.0]);
        let v = interlace_check(&small, &large, true).unwrap();
        assert_eq!(v.verdict, Verdict::Weak);
        assert!(v.violation.is_some());

        let v2 = interlace_check(&small, &large, false).unwrap();
        assert_eq!(v2.verdict, Verdict::Weak);
        assert!(v2.violation.is_none());
    }

    #[test]
    fn shared_everything_is_weak() {
        let s = set(&[0.0, 2.0, 4.0]);
        let v = interlace_check(&s, &s, false).unwrap();
        assert_eq!(v.verdict, Verdict::Weak);
    }

    #[test]
    fn coincident_singletons() {
        let a = set(&[1.0]);
        let v = interlace_check(&a, &a, true).unwrap();
        assert_eq!(v.verdict, Verdict::Weak);
        let b = set(&[2.0]);
        let v2 = interlace_check(&a, &b, true).unwrap();
        assert_eq!(v2.verdict, Verdict::Strict);
    }

    #[test]
    fn weak_budget_shortfall_fails() {
        // Three smalls all on large points, far apart, with five larges:
        // unserved gaps form runs too long for the remaining budget.
        let large = set(&[0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        let small = set(&[0.0, 1.0, 2.0]);
        // served gaps: (0,1),(1,2),(2,3) and (6,0) by endpoint hits; unserved:
        // (3,4),(4,5),(5,6) → run of 3, cost 2 ≤ budget 4 → weak holds here.
        let v = interlace_check(&small, &large, false).unwrap();
        assert_eq!(v.verdict, Verdict::Weak);

        // Equal sizes with one coincidence and a bare gap: no budget at all.
        let large2 = set(&[0.0, 2.0, 4.0]);
        let small2 = set(&[0.0, 1.0, 3.0]);
        // gaps (0,2):1.0 interior ✓, (2,4):3.0 interior ✓, (4,0): endpoint 0 hit ✓ → weak.
        assert_eq!(
            interlace_check(&small2, &large2, false).unwrap().verdict,
            Verdict::Weak
        );
        let small3 = set(&[0.0, 0.5, 1.0]);
        // gap (0,2) holds two interior smalls → fail.
        assert_eq!(
            interlace_check(&small3, &large2, false).unwrap().verdict,
            Verdict::Fail
        );
    }

    #[test]
    fn equal_size_classification_matches_alternation_oracle() {
        let mut rng = SplitMix64(2024);
        for trial in 0..400 {
            let k = 1 + (rng.next_u64() % 7) as usize;
            let mut a: Vec<f64> = (0..k).map(|_| TAU * rng.next_f64()).collect();
            let b: Vec<f64> = (0..k).map(|_| TAU * rng.next_f64()).collect();
            // Sprinkle coincidences.
            if trial % 3 == 0 && k > 1 {
                a[0] = b[0];
            }
            let sa = CircularPointSet::from_angles(&a, "a");
            let sb = CircularPointSet::from_angles(&b, "b");
            if sa.len() != sb.len() {
                continue;
            }
            let got = interlace_check(&sa, &sb, true).unwrap();
            let strict_want = alternation_oracle(&sa, &sb, true);
            let weak_want = alternation_oracle(&sa, &sb, false);
            assert_eq!(
                got.verdict == Verdict::Strict,
                strict_want,
                "trial {trial}: {:?} vs {:?}",
                sa.points(),
                sb.points()
            );
            assert_eq!(
                got.verdict != Verdict::Fail,
                weak_want,
                "weak mismatch, trial {trial}: {:?} vs {:?}",
                sa.points(),
                sb.points()
            );
        }
    }

    #[test]
    fn rotate_tail_cases() {
        let p = random_params(4, 9);
        let r = rotate_tail(&p, 4, c(-1.0, 0.0)).unwrap();
        assert_eq!(r.alphas(), p.alphas());
        assert!((r.b() + p.b()).norm() < 1e-15);

        let beta = Complex64::from_polar(1.0, 0.7);
        let r2 = rotate_tail(&p, 2, beta).unwrap();
        for j in 0..2 {
            assert_eq!(r2.alpha(j), p.alpha(j));
        }
        for j in 2..4 {
            assert!((r2.alpha(j) - p.alpha(j) * beta).norm() < 1e-15);
            assert!((r2.alpha(j).norm() - p.alpha(j).norm()).abs() < 1e-15);
        }

        let zeros_p = params(&[ZERO, ZERO], c(1.0, 0.0));
        let r3 = rotate_tail(&zeros_p, 1, beta).unwrap();
        assert_eq!(r3.alphas(), &[ZERO, ZERO]);
        assert!((r3.b() - beta).norm() < 1e-15);

        assert!(rotate_tail(&p, 0, c(1.0, 0.0)).is_err());
        assert!(rotate_tail(&p, 5, beta).is_err());
    }

    #[test]
    fn rotation_interlacing_closed_form_cases() {
        // Cube roots of 1 vs cube roots of conj(β): rotating everything.
        let p = params(&[ZERO, ZERO], c(1.0, 0.0));
        let beta = Complex64::from_polar(1.0, std::f64::consts::PI / 3.0);
        let v = verify_rotation_interlacing(&p, 2, beta).unwrap();
        assert_eq!(v.verdict, Verdict::Strict);

        let v2 = verify_rotation_interlacing(&p, 0, c(-1.0, 0.0)).unwrap();
        assert_eq!(v2.verdict, Verdict::Strict);
    }

    #[test]
    fn rotation_interlacing_random_trials() {
        let mut rng = SplitMix64(515);
        for trial in 0..25 {
            let n = 1 + (rng.next_u64() % 8) as usize;
            let p = random_params(n, 7000 + trial);
            let m = (rng.next_u64() % (n as u64 + 1)) as usize;
            let theta = 1e-3 + (TAU - 2e-3) * rng.next_f64();
            let beta = Complex64::from_polar(1.0, theta);
            let v = verify_rotation_interlacing(&p, m, beta).unwrap();
            assert_eq!(v.verdict, Verdict::Strict, "trial {trial} n={n} m={m}");
        }
    }

    #[test]
    fn gauged_tail_closed_forms() {
        // All-zero parameters: γ = b_m and N = C(0,…,0,b)·diag(b_m, I).
        let p = params(&[ZERO; 5], c(1.0, 0.0));
        let n_mat = build_gauged_tail(&p, 2, c(1.0, 0.0)).unwrap();
        let want = build_cmv(&params(&[ZERO, ZERO], c(1.0, 0.0)));
        assert!(n_mat.max_abs_diff(want.matrix()) < 1e-15);
        assert!(n_mat.unitarity_error() < 1e-13);

        // m = n−1: N is the 1×1 matrix conj(b)·γ_{n−1}.
        let q = random_params(3, 61);
        let b_m = Complex64::from_polar(1.0, 1.9);
        let n1 = build_gauged_tail(&q, 2, b_m).unwrap();
        let want1 = q.b().conj() * gamma(q.alpha(2), b_m).unwrap();
        assert_eq!(n1.order(), 1);
        assert!((n1[(0, 0)] - want1).norm() < 1e-15);
    }

    #[test]
    fn level_set_roots_of_unity() {
        let p = params(&[ZERO; 5], c(1.0, 0.0));
        // b₂(ζ) = ζ³; solutions of ζ³ = 1 are the cube roots of unity.
        let cs = level_set_candidates(&p, 2, c(1.0, 0.0)).unwrap();
        assert_eq!(cs.len(), 3);
        for (k, pt) in cs.points().iter().enumerate() {
            assert!(crate::circle::angular_distance(pt.angle(), TAU * k as f64 / 3.0) < 1e-10);
        }

        // General m with zero parameters: the (n−m)-th roots of b_m.
        let b_m = Complex64::from_polar(1.0, 0.9);
        let cs2 = level_set_candidates(&p, 1, b_m).unwrap();
        assert_eq!(cs2.len(), 4);
        for pt in cs2.points() {
            let val = pt.to_complex().powu(4);
            assert!((val - b_m).norm() < 1e-9);
        }
    }

    #[test]
    fn level_set_single_solution_at_top_split() {
        let p = random_params(4, 321);
        let b_m = Complex64::from_polar(1.0, 2.2);
        let cs = level_set_candidates(&p, 3, b_m).unwrap();
        assert_eq!(cs.len(), 1);
        let want = p.b().conj() * gamma(p.alpha(3), b_m).unwrap();
        assert!(cs.points()[0].distance(&CirclePoint::from_complex(want)) < 1e-9);
    }

    #[test]
    fn refined_interlacing_on_roots_of_unity_fixture() {
        let p = params(&[ZERO; 5], c(1.0, 0.0));
        let report = verify_refined_interlacing(&p, 2, c(1.0, 0.0)).unwrap();
        assert_eq!(report.set_a.len(), 3);
        assert!(report.set_b.is_empty());
        assert!(report.common_agrees);
        assert!(report.bound_ok);
        assert!(report.alt_expression_agrees);
        assert!(report.cardinality_ok);
        assert_eq!(report.interlacing.verdict, Verdict::Strict);
        assert!(report.all_ok());
        // |A| meets the bound min{m+1, n−m} = 3 with equality here.
        assert_eq!(report.set_a.len(), 3.min(3));
    }

    #[test]
    fn refined_interlacing_generic_position() {
        let p = random_params(6, 99);
        let b_m = Complex64::from_polar(1.0, 2.51);
        let report = verify_refined_interlacing(&p, 2, b_m).unwrap();
        assert!(report.set_a.is_empty(), "generic b_m should give empty A");
        assert_eq!(report.set_b.len(), 4);
        assert!(report.all_ok());
    }

    #[test]
    fn refined_interlacing_random_trials() {
        let mut rng = SplitMix64(31337);
        for trial in 0..20 {
            let n = 2 + (rng.next_u64() % 7) as usize;
            let p = random_params(n, 8800 + trial);
            let m = (rng.next_u64() % n as u64) as usize;
            let b_m = Complex64::from_polar(1.0, TAU * rng.next_f64());
            let report = verify_refined_interlacing(&p, m, b_m).unwrap();
            assert!(report.all_ok(), "trial {trial} n={n} m={m}: {report:?}");
        }
    }

    #[test]
    fn consecutive_shared_point_fixture() {
        // 6th vs 5th roots of unity share exactly ζ = 1.
        let p = params(&[ZERO; 5], c(1.0, 0.0));
        let report = verify_consecutive_interlacing(&p, c(1.0, 0.0)).unwrap();
        assert_eq!(report.branch, ConsecutiveBranch::SharedPoint);
        assert!(report.zeta_star.distance(&CirclePoint::from_angle(0.0)) < 1e-12);
        assert!(report.all_ok());
    }

    #[test]
    fn consecutive_generic_is_disjoint() {
        let mut rng = SplitMix64(404);
        for trial in 0..10 {
            let n = 2 + (rng.next_u64() % 6) as usize;
            let p = random_params(n, 5100 + trial);
            let b_prev = Complex64::from_polar(1.0, TAU * rng.next_f64());
            let report = verify_consecutive_interlacing(&p, b_prev).unwrap();
            assert_eq!(report.branch, ConsecutiveBranch::Disjoint, "trial {trial}");
            assert!(report.all_ok(), "trial {trial}");
        }
    }

    #[test]
    fn consecutive_agrees_with_refined_at_top_split() {
        let p = random_params(5, 606);
        let b_prev = Complex64::from_polar(1.0, 3.3);
        let cons = verify_consecutive_interlacing(&p, b_prev).unwrap();
        let refined = verify_refined_interlacing(&p, 4, b_prev).unwrap();
        let shared = cons.branch == ConsecutiveBranch::SharedPoint;
        assert_eq!(shared, !refined.set_a.is_empty());
        assert_eq!(cons.all_ok(), refined.all_ok());
    }

    #[test]
    fn direct_sum_identity_both_parities() {
        let mut rng = SplitMix64(777);
        for trial in 0..12 {
            let n = 2 + (rng.next_u64() % 7) as usize;
            let p = random_params(n, 9900 + trial);
            let m = (rng.next_u64() % n as u64) as usize;
            let b_m = Complex64::from_polar(1.0, TAU * rng.next_f64());
            let report = verify_direct_sum_identity(&p, m, b_m).unwrap();
            assert!(
                report.identity_ok(tol::EPS_STRUCTURE),
                "trial {trial} n={n} m={m} parity {:?}: deviation {:.3e}",
                report.parity,
                report.deviation
            );
            assert!(report.gauge_rank_one(), "trial {trial}");
        }
    }

    #[test]
    fn direct_sum_identity_permutation_case() {
        let p = params(&[ZERO; 5], c(1.0, 0.0));
        let report = verify_direct_sum_identity(&p, 2, c(1.0, 0.0)).unwrap();
        assert_eq!(report.parity, SplitParity::Even);
        assert!(report.deviation < 1e-15);
        // Sᵀ·C(0,…,0,1) = C(0,0,1) ⊕ C(0,0,1)ᵀ for this fixture.
        let head = build_cmv(&params(&[ZERO, ZERO], c(1.0, 0.0)));
        let lhs = report.gauge.transpose().mul(&report.full_matrix);
        let want = head.matrix().direct_sum(&head.matrix().transpose());
        assert!(lhs.max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn gauge_conjugation_identity_both_parities() {
        let mut rng = SplitMix64(888);
        for trial in 0..12 {
            let n = 1 + (rng.next_u64() % 8) as usize;
            let p = random_params(n, 7700 + trial);
            let m = (rng.next_u64() % (n as u64 + 1)) as usize;
            let theta = 0.2 + 5.8 * rng.next_f64();
            let beta = Complex64::from_polar(1.0, theta);
            let dev = gauge_conjugation_deviation(&p, m, beta).unwrap();
            assert!(dev <= tol::EPS_STRUCTURE, "trial {trial} n={n} m={m}: {dev:.3e}");
        }
    }

    #[test]
    fn zeros_and_level_set_feed_consistent_reports() {
        // The common eigenvalues found by matching spectra appear among the
        // level-set candidates.
        let p = params(&[ZERO; 5], c(1.0, 0.0));
        let dec = zeros(&p).unwrap();
        let cs = level_set_candidates(&p, 2, c(1.0, 0.0)).unwrap();
        let spec = spectrum_set(&dec, "sigma");
        for pt in cs.points() {
            assert!(spec.contains(pt, 1e-9));
        }
    }
}
