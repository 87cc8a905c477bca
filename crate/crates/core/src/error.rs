//! Error type shared by all modules.

use crate::centers::CenterId;
use crate::kinematics::Rail;
use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// Numeric tolerances quoted in messages are the ones the operation was
/// invoked with, so a failed check can be reproduced from the message alone.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Billiard construction requires strictly `a > b > 0`; the circular
    /// table `a == b` is rejected because the confocal-caustic formulas
    /// degenerate to 0/0 there.
    #[error("semi-axes must satisfy a > b > 0, got a = {a}, b = {b}")]
    InvalidSemiAxes { a: f64, b: f64 },

    /// A precondition on an argument (sample counts, bracket ordering, …).
    #[error("{what}")]
    InvalidArgument { what: String },

    /// The least-squares conic fit has no unique solution (collinear or
    /// repeated input points).
    #[error("conic fit is rank-deficient: {reason}")]
    DegenerateFit { reason: String },

    /// An orbit failed one of its construction invariants (third-side
    /// tangency, on-billiard vertices, or the reflection law); this is an
    /// internal-consistency failure, not a user error.
    #[error("orbit consistency violated at t = {t}: {check} residual {residual:.3e} exceeds {tol:.1e}")]
    ClosureViolation {
        t: f64,
        check: &'static str,
        residual: f64,
        tol: f64,
    },

    /// An iterative solve ran out of retries.
    #[error("{what} did not converge after {attempts} attempts (last residual {residual:.3e})")]
    NonConvergence {
        what: String,
        attempts: usize,
        residual: f64,
    },

    /// Adaptive quadrature could not reach its target accuracy.
    #[error("quadrature failed to reach tolerance {tol:.1e} on [{lo}, {hi}]")]
    QuadratureFailure { tol: f64, lo: f64, hi: f64 },

    /// Trilinear-to-Cartesian conversion hit a vanishing divisor: the center
    /// lies on the line at infinity for this triangle.
    #[error("point at infinity: trilinear divisor {divisor:.3e} below {threshold:.3e}")]
    PointAtInfinity { divisor: f64, threshold: f64 },

    /// The requested center does not exist for this triangle (vanishing
    /// trilinear denominators, or a constructive recipe that degenerates).
    #[error("center {id} undefined for this triangle: {reason}")]
    UndefinedCenter { id: CenterId, reason: String },

    /// A derived-triangle construction collapsed (e.g. the orthic of a right
    /// triangle is a segment).
    #[error("degenerate {kind} triangle: {reason}")]
    DegenerateTriangle { kind: &'static str, reason: String },

    /// A point handed to boundary-parameter recovery does not lie on the
    /// requested rail.
    #[error("point is off the {rail} rail: residual {residual:.3e} exceeds {tol:.1e}")]
    OffRail { rail: Rail, residual: f64, tol: f64 },

    /// Center name not in the catalog.
    #[error("unknown center {name:?}")]
    UnknownCenter { name: String },

    /// Threshold name not in the registry.
    #[error("unknown threshold {name:?}")]
    UnknownThreshold { name: String },

    /// A behavioral threshold search found the same predicate sign at both
    /// bracket ends; the bracket and the observed values are reported so the
    /// scan range can be adjusted.
    #[error(
        "predicate for {name} is not monotone on [{lo}, {hi}]: f(lo) = {f_lo:.6e}, f(hi) = {f_hi:.6e}"
    )]
    NonMonotonePredicate {
        name: String,
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    /// Input outside an operation's mathematical domain (e.g. a sidelength
    /// triple that is not a right triangle).
    #[error("{what}")]
    Domain { what: String },

    /// Malformed catalog table, formula string, or CSV input.
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

impl Error {
    /// Shorthand for [`Error::InvalidArgument`].
    pub fn invalid(what: impl Into<String>) -> Self {
        Error::InvalidArgument { what: what.into() }
    }
}
