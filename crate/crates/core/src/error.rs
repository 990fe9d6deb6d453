//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A parameter left its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Elliptic-integral modulus too close to the singular line k·sin θ = 1.
    #[error("modulus domain: k*sin(theta) = {ksin} exceeds the guard {guard}")]
    ModulusDomain { ksin: f64, guard: f64 },

    /// Parameter derivative of F is singular at k = 1.
    #[error("singular modulus: |k-1| = {dist} below guard for dF/dk")]
    SingularModulus { dist: f64 },

    /// The Delaunay radicand went negative.
    #[error("radicand negative at x = {x} (window [{lo}, {hi}])")]
    RadicandNegative { x: f64, lo: f64, hi: f64 },

    /// An evaluation left the profile's validity window.
    #[error("out of validity window: {0}")]
    OutOfWindow(String),

    /// A monotone bracket for the implicit mean curvature could not be established.
    #[error("no bracket: {0}")]
    NoBracket(String),

    /// Undulary evaluated past its half-period.
    #[error("beyond bulge: x3 = {x3} exceeds half-period {half_period}")]
    BeyondBulge { x3: f64, half_period: f64 },

    /// The undulary never meets the unit circle in its half-period.
    #[error("no intersection with the unit circle for neck t = {t}")]
    NoIntersection { t: f64 },

    /// Curve reconstruction crossed the rotation axis.
    #[error("domain exit: x1 = {x1} at s = {s}")]
    DomainExit { s: f64, x1: f64 },

    /// Mean curvature requested too close to the axis.
    #[error("axis contact: x1 = {x1} at s = {s}")]
    AxisContact { s: f64, x1: f64 },

    /// A round-corner parameter constraint is violated.
    #[error("constraint violation: {0}")]
    ConstraintViolation(String),

    /// Center curves failed to intersect within tolerance.
    #[error("no center match: residual {residual}")]
    NoMatch { residual: f64 },

    /// Parameter search hit its iteration cap.
    #[error("search exhausted after {attempts} attempts: {last}")]
    SearchExhausted { attempts: usize, last: String },

    /// A posteriori verification of a constructed object failed.
    #[error("verification failure in {check}: margin {margin} at s = {at}")]
    VerificationFailure { check: String, at: f64, margin: f64 },

    /// Gluing failed while assembling a perturbation.
    #[error("glue failure: {0}")]
    GlueFailure(String),

    /// No admissible undulary neck parameter for the requested zone.
    #[error("window failure: {0}")]
    WindowFailure(String),

    /// Comparison profile never crosses the circle inside the zone.
    #[error("crossing not found: {0}")]
    CrossingNotFound(String),

    /// Quadrature failed to converge to the requested tolerance.
    #[error("quadrature did not converge: error estimate {estimate} > {tol}")]
    QuadratureNoConvergence { estimate: f64, tol: f64 },

    /// Input/output error surfaced by the serialization helpers.
    #[error("io error: {0}")]
    Io(String),
}
