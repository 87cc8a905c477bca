//! Plain triangles: sidelengths, angles, classical radii, orientation.
//!
//! Indexing convention used everywhere in this crate: vertex `i` is opposite
//! side `i`, so `sidelengths()[0]` is `|P2 − P3|`, the side that does not
//! touch `P1`. Derived triangles preserve this correspondence.

use crate::{Point, Vec2};

/// Cross product z-component of two plane vectors.
pub(crate) fn cross(u: Vec2, v: Vec2) -> f64 {
    u.x * v.y - u.y * v.x
}

/// A triangle as three vertices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triangle {
    vertices: [Point; 3],
}

impl Triangle {
    /// Builds a triangle from its vertices (degeneracy is not checked here;
    /// operations that require area guard against it themselves).
    pub fn new(p1: Point, p2: Point, p3: Point) -> Self {
        Triangle {
            vertices: [p1, p2, p3],
        }
    }

    /// The vertices `[P1, P2, P3]`.
    pub fn vertices(&self) -> [Point; 3] {
        self.vertices
    }

    /// Vertex by index (0-based).
    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i]
    }

    /// Sidelengths `[s1, s2, s3]`, side `i` opposite vertex `i`.
    pub fn sidelengths(&self) -> [f64; 3] {
        let [p1, p2, p3] = self.vertices;
        [(p3 - p2).norm(), (p1 - p3).norm(), (p2 - p1).norm()]
    }

    /// Interior angles `[θ1, θ2, θ3]` at the three vertices, by the law of
    /// cosines (clamped against rounding excursions outside `[−1, 1]`).
    pub fn angles(&self) -> [f64; 3] {
        let [s1, s2, s3] = self.sidelengths();
        let angle = |opp: f64, u: f64, v: f64| {
            ((u * u + v * v - opp * opp) / (2.0 * u * v)).clamp(-1.0, 1.0).acos()
        };
        [
            angle(s1, s2, s3),
            angle(s2, s3, s1),
            angle(s3, s1, s2),
        ]
    }

    /// Index of the vertex with the largest interior angle.
    pub fn largest_angle_vertex(&self) -> usize {
        let angles = self.angles();
        (0..3)
            .max_by(|&i, &j| angles[i].partial_cmp(&angles[j]).expect("angles are finite"))
            .expect("three angles always have a max")
    }

    /// Perimeter.
    pub fn perimeter(&self) -> f64 {
        self.sidelengths().iter().sum()
    }

    /// Signed area: positive for counterclockwise vertex order.
    pub fn signed_area(&self) -> f64 {
        let [p1, p2, p3] = self.vertices;
        0.5 * cross(p2 - p1, p3 - p1)
    }

    /// Absolute area.
    pub fn area(&self) -> f64 {
        self.signed_area().abs()
    }

    /// True when the vertices run counterclockwise.
    pub fn is_ccw(&self) -> bool {
        self.signed_area() > 0.0
    }

    /// Inradius `area / semiperimeter`.
    pub fn inradius(&self) -> f64 {
        self.area() / (0.5 * self.perimeter())
    }

    /// Circumradius `s1 s2 s3 / (4 area)`.
    pub fn circumradius(&self) -> f64 {
        let [s1, s2, s3] = self.sidelengths();
        s1 * s2 * s3 / (4.0 * self.area())
    }

    /// Vertex average (the centroid).
    pub fn centroid(&self) -> Point {
        let [p1, p2, p3] = self.vertices;
        Point::new(
            (p1.x + p2.x + p3.x) / 3.0,
            (p1.y + p2.y + p3.y) / 3.0,
        )
    }

    /// Longest sidelength — the scale used for relative tolerances.
    pub fn scale(&self) -> f64 {
        let [s1, s2, s3] = self.sidelengths();
        s1.max(s2).max(s3)
    }

    /// Applies a point map to every vertex (used by similarity tests).
    pub fn map(&self, f: impl Fn(Point) -> Point) -> Triangle {
        let [p1, p2, p3] = self.vertices;
        Triangle::new(f(p1), f(p2), f(p3))
    }

    /// Circumcenter, by the standard determinant formula; `None` for
    /// (near-)collinear vertices, where no finite circumcircle exists.
    pub fn circumcenter(&self) -> Option<Point> {
        let [p1, p2, p3] = self.vertices;
        let d = 2.0
            * (p1.x * (p2.y - p3.y) + p2.x * (p3.y - p1.y) + p3.x * (p1.y - p2.y));
        let scale = self.scale();
        if d.abs() < 1e-14 * scale * scale {
            return None;
        }
        let (n1, n2, n3) = (
            p1.coords.norm_squared(),
            p2.coords.norm_squared(),
            p3.coords.norm_squared(),
        );
        Some(Point::new(
            (n1 * (p2.y - p3.y) + n2 * (p3.y - p1.y) + n3 * (p1.y - p2.y)) / d,
            (n1 * (p3.x - p2.x) + n2 * (p1.x - p3.x) + n3 * (p2.x - p1.x)) / d,
        ))
    }

    /// Orthocenter via the circumcenter identity `H = P1 + P2 + P3 − 2O`;
    /// `None` for (near-)collinear vertices.
    pub fn orthocenter(&self) -> Option<Point> {
        let o = self.circumcenter()?;
        let [p1, p2, p3] = self.vertices;
        Some(Point::new(
            p1.x + p2.x + p3.x - 2.0 * o.x,
            p1.y + p2.y + p3.y - 2.0 * o.y,
        ))
    }
}
