//! Tolerance policy, pinned in one place.
//!
//! Input-validation slack is looser than construction accuracy, which in turn
//! is looser than what the double-precision kernels actually deliver; each
//! consumer asserts at its own named level rather than inventing thresholds.

/// Unit-modulus slack accepted on *inputs* (b, beta, b_m).
pub const EPS_UNIT_INPUT: f64 = 1e-10;

/// ‖C*C − I‖_max allowed on *constructed* matrices (orders up to 64).
pub const EPS_UNITARY: f64 = 1e-12;

/// Eigenpair residual ‖C z − λ z‖₂ accepted from either zero-finding route.
pub const EPS_EIG: f64 = 1e-9;

/// Minimum angular gap below which a spectrum is treated as non-simple.
pub const EPS_SEP: f64 = 1e-9;

/// Eigenvector components below this magnitude count as zero (small orders).
pub const EPS_COMP: f64 = 1e-12;

/// Angular distance at which two circle points are the same point.
pub const EPS_MATCH: f64 = 1e-8;

/// Matched pairs must be this factor clearer than the runner-up.
pub const MATCH_AMBIGUITY_FACTOR: f64 = 10.0;

/// Entrywise tolerance for the Schur-complement reduction identity.
pub const EPS_SCHUR: f64 = 1e-9;

/// Entrywise tolerance for the gauge and direct-sum identities (no inverses).
pub const EPS_STRUCTURE: f64 = 1e-12;

/// Singular-value threshold deciding the numerical rank of I − S.
pub const EPS_RANK: f64 = 1e-8;

/// Residual allowed on the rank-one factor extraction US − U = u vᵀ.
pub const EPS_RANK1: f64 = 1e-12;

/// Relative residual for the characteristic-polynomial perturbation identity
/// evaluated off the spectrum.
pub const EPS_DETEQ: f64 = 1e-10;

/// Max-abs residual for the adjugate spectral formula (orders ≤ 12).
pub const EPS_ADJUGATE: f64 = 1e-8;

/// Relative residual for the diagonal phase-twist eigenvalue identity.
pub const EPS_TWIST: f64 = 1e-7;

/// Bisection width for angles located on the unit circle.
pub const THETA_BISECT: f64 = 1e-12;

/// Grid density multiplier for phase-winding bracketing: 8 points per turn.
pub const WINDING_GRID_FACTOR: usize = 8;

/// Runtime-overridable subset of the policy (CLI `--tol KEY=VAL`).
#[derive(Debug, Clone)]
pub struct Tolerances {
    pub unit_input: f64,
    pub unitary: f64,
    pub eig: f64,
    pub sep: f64,
    pub comp: f64,
    pub match_angle: f64,
    pub schur: f64,
    pub structure: f64,
    pub rank: f64,
    pub rank1: f64,
    pub deteq: f64,
    pub adjugate: f64,
    pub twist: f64,
    pub theta_bisect: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            unit_input: EPS_UNIT_INPUT,
            unitary: EPS_UNITARY,
            eig: EPS_EIG,
            sep: EPS_SEP,
            comp: EPS_COMP,
            match_angle: EPS_MATCH,
            schur: EPS_SCHUR,
            structure: EPS_STRUCTURE,
            rank: EPS_RANK,
            rank1: EPS_RANK1,
            deteq: EPS_DETEQ,
            adjugate: EPS_ADJUGATE,
            twist: EPS_TWIST,
            theta_bisect: THETA_BISECT,
        }
    }
}

impl Tolerances {
    /// Applies one `KEY=VAL` override; unknown keys are reported back.
    pub fn set(&mut self, key: &str, value: f64) -> std::result::Result<(), String> {
        match key {
            "unit_input" => self.unit_input = value,
            "unitary" => self.unitary = value,
            "eig" => self.eig = value,
            "sep" => self.sep = value,
            "comp" => self.comp = value,
            "match" | "match_angle" => self.match_angle = value,
            "schur" => self.schur = value,
            "structure" => self.structure = value,
            "rank" => self.rank = value,
            "rank1" => self.rank1 = value,
            "deteq" => self.deteq = value,
            "adjugate" => self.adjugate = value,
            "twist" => self.twist = value,
            "theta_bisect" => self.theta_bisect = value,
            other => return Err(format!("unknown tolerance key '{other}'")),
        }
        Ok(())
    }
}
