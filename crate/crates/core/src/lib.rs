//! Meridian-curve toolkit for constant-mean-curvature surfaces of revolution.
//!
//! Everything lives in the meridian half-plane with coordinates (x3, x1):
//! x3 runs along the rotation axis, x1 is the distance to it. Rotating a
//! profile curve about the x3-axis produces a surface of revolution; the
//! library computes Delaunay CMC profiles, the mean-curvature rigidity
//! classification of equatorial zones on the unit sphere, and explicit
//! smooth "round-corner" perturbations realizing the non-rigid cases,
//! each with a machine-checked certificate.
//!
//! Orientation convention, used consistently throughout: for a unit-speed
//! curve with tangent angle θ = arg T, the normal is n = (sin θ, −cos θ)
//! (T rotated by −π/2), the signed curvature satisfies T′ = κ·n (so
//! θ′ = −κ), and the mean curvature of the surface of revolution is
//! 2H(s) = κ(s) + cos θ(s)/x1(s) with respect to the normal induced by n.
//! Under this convention a unit circle about the origin traversed with the
//! poles at x3 = ±1 carries the inward normal and has H ≡ 1.

pub mod curve;
pub mod delaunay;
pub mod elliptic;
pub mod error;
pub mod numeric;
pub mod perturb;
pub mod report;
pub mod rigidity;
pub mod roundcorner;

pub use curve::{ArcCurve, CircleArc, CurvaturePoint, CurvatureProfile, PlanarCurve, Point};
pub use delaunay::{DelaunayParams, ZoneSpec};
pub use error::Error;
pub use perturb::{PerturbMode, PerturbationResult};
pub use report::{Section, VerificationReport, Witness};
pub use rigidity::{RigidityClass, RigidityConstants};
pub use roundcorner::{CornerJoin, RoundCornerParams};

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
