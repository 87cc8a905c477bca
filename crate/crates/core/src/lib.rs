//! Geometry of 3-periodic billiard orbits in an ellipse.
//!
//! An elliptic billiard admits a one-parameter family of triangular
//! (3-bounce) orbits, all tangent to a single confocal caustic. This crate
//! constructs that family, evaluates a catalog of triangle centers over it,
//! classifies the curves those centers sweep, and measures how boundary-railed
//! centers move — including the aspect-ratio thresholds at which the family's
//! qualitative behavior changes.
//!
//! - [`conics`]: ellipses, general conics, fitting and classification, real
//!   polynomial roots
//! - [`billiard`]: the billiard table, orbit construction, conserved
//!   quantities, the Poritsky boundary parameter
//! - [`centers`]: trilinear coordinates, the center catalog, derived
//!   triangles, the circumbilliard
//! - [`loci`]: locus sampling and classification (conic fits,
//!   self-intersections, compactness, arc structure, envelopes)
//! - [`kinematics`]: boundary-parameter motion profiles, threshold registry
//!   and rediscovery, the X88/X162 ballet
//!
//! Angles are radians everywhere in the library; conversion to degrees is
//! left to front-ends and serialization.

pub mod billiard;
pub mod centers;
pub mod conics;
pub mod error;
pub mod kinematics;
pub mod loci;
pub(crate) mod numeric;
pub mod serialize;
pub mod triangle;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// A point in the plane.
pub type Point = nalgebra::Point2<f64>;

/// A displacement in the plane.
pub type Vec2 = nalgebra::Vector2<f64>;

/// Full turn, for parameter wrapping.
pub const TAU: f64 = std::f64::consts::TAU;

/// Wraps an angle to `[0, 2π)`.
pub fn wrap_angle(t: f64) -> f64 {
    let r = t.rem_euclid(TAU);
    // rem_euclid can return exactly TAU when t is a tiny negative number.
    if r >= TAU {
        r - TAU
    } else {
        r
    }
}
