//! Axis-aligned ellipses, general conics, least-squares conic fitting and
//! classification, lines, and real roots of polynomials.
//!
//! Everything downstream leans on this module: the billiard table and its
//! caustic are [`Ellipse`]s, locus classification runs through [`fit_conic`]
//! and [`classify_conic`], and the threshold registry extracts its numeric
//! values with [`real_roots`].

use crate::{Error, Point, Result, Vec2};
use nalgebra::{DMatrix, Matrix3, SymmetricEigen};

/// Tolerance used by [`classify_conic`] on the (normalized) discriminant and
/// on the 3x3 determinant degeneracy test.
pub const CLASSIFY_TOL: f64 = 1e-10;

/// Relative singular-value cutoff below which a conic fit counts as
/// rank-deficient (non-unique solution).
const FIT_RANK_TOL: f64 = 1e-6;

/// An axis-aligned ellipse centered at the origin: `(x/a)² + (y/b)² = 1`.
///
/// `a` is the semi-axis along x and `b` along y; either may be the larger
/// one (the orthocenter locus, for instance, is taller than it is wide).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ellipse {
    a: f64,
    b: f64,
}

impl Ellipse {
    /// Creates an ellipse with semi-axes `a` (along x) and `b` (along y).
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
            return Err(Error::invalid(format!(
                "ellipse semi-axes must be positive and finite, got a = {a}, b = {b}"
            )));
        }
        Ok(Ellipse { a, b })
    }

    /// Semi-axis along x.
    pub fn a(&self) -> f64 {
        self.a
    }

    /// Semi-axis along y.
    pub fn b(&self) -> f64 {
        self.b
    }

    /// Left-hand side of the implicit equation, `(x/a)² + (y/b)²`.
    ///
    /// Equals 1 on the curve, < 1 inside, > 1 outside.
    pub fn implicit_value(&self, p: Point) -> f64 {
        let (x, y) = (p.x / self.a, p.y / self.b);
        x * x + y * y
    }

    /// Point at parameter `theta`: `(a cos θ, b sin θ)`.
    pub fn point_at(&self, theta: f64) -> Point {
        Point::new(self.a * theta.cos(), self.b * theta.sin())
    }

    /// Parameter of a point assumed on (or near) the ellipse.
    pub fn param_of(&self, p: Point) -> f64 {
        crate::wrap_angle((p.y / self.b).atan2(p.x / self.a))
    }

    /// Unit tangent direction at parameter `theta`, oriented with increasing
    /// `theta` (counterclockwise).
    pub fn tangent_dir(&self, theta: f64) -> Vec2 {
        Vec2::new(-self.a * theta.sin(), self.b * theta.cos()).normalize()
    }

    /// Tangent line at parameter `theta`: `(cos θ / a) x + (sin θ / b) y = 1`.
    pub fn tangent_line(&self, theta: f64) -> Line {
        Line::new(theta.cos() / self.a, theta.sin() / self.b, -1.0)
            .expect("tangent line of a valid ellipse is never degenerate")
    }

    /// Signed curvature at parameter `theta` (positive: counterclockwise).
    pub fn curvature(&self, theta: f64) -> f64 {
        let (s, c) = theta.sin_cos();
        let g = (self.a * self.a * s * s + self.b * self.b * c * c).sqrt();
        self.a * self.b / (g * g * g)
    }

    /// The same curve as a general [`Conic`].
    pub fn to_conic(&self) -> Conic {
        Conic::new([1.0 / (self.a * self.a), 0.0, 1.0 / (self.b * self.b), 0.0, 0.0, -1.0])
            .expect("ellipse coefficients are never all zero")
    }
}

/// A line `a x + b y + c = 0`, stored normalized: `a² + b² = 1` and the
/// first nonzero of `(a, b)` positive. With that scaling [`Line::eval`] is
/// the signed distance to the line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    a: f64,
    b: f64,
    c: f64,
}

impl Line {
    /// Builds a line from raw coefficients, normalizing them.
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        let n = a.hypot(b);
        if !(n > 1e-300) || !c.is_finite() {
            return Err(Error::invalid(format!(
                "degenerate line coefficients ({a}, {b}, {c})"
            )));
        }
        let (mut a, mut b, mut c) = (a / n, b / n, c / n);
        let flip = if a != 0.0 { a < 0.0 } else { b < 0.0 };
        if flip {
            a = -a;
            b = -b;
            c = -c;
        }
        Ok(Line { a, b, c })
    }

    /// Line through two distinct points.
    pub fn through(p: Point, q: Point) -> Result<Self> {
        let d = q - p;
        // normal (-dy, dx), offset so p satisfies the equation
        Line::new(-d.y, d.x, d.y * p.x - d.x * p.y).map_err(|_| {
            Error::invalid(format!("cannot build a line through coincident points {p:?}, {q:?}"))
        })
    }

    /// Coefficients `(a, b, c)` of the normalized equation.
    pub fn coeffs(&self) -> (f64, f64, f64) {
        (self.a, self.b, self.c)
    }

    /// Signed distance from `p` to the line.
    pub fn eval(&self, p: Point) -> f64 {
        self.a * p.x + self.b * p.y + self.c
    }

    /// A unit vector along the line.
    pub fn direction(&self) -> Vec2 {
        Vec2::new(-self.b, self.a)
    }

    /// Intersection with another line, or `None` when the lines are parallel
    /// (cross of normals below 1e-12; both lines are unit-normalized, so the
    /// threshold is an absolute sine of the angle between them).
    pub fn intersect(&self, other: &Line) -> Option<Point> {
        let det = self.a * other.b - other.a * self.b;
        if det.abs() < 1e-12 {
            return None;
        }
        let x = (self.b * other.c - other.b * self.c) / det;
        let y = (other.a * self.c - self.a * other.c) / det;
        Some(Point::new(x, y))
    }
}

/// A general conic `A x² + B xy + C y² + D x + E y + F = 0`.
///
/// Coefficients are stored normalized to unit Euclidean norm with the first
/// nonzero coefficient positive, so equal curves compare equal and printed
/// output is reproducible.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conic {
    coeffs: [f64; 6],
}

impl Conic {
    /// Builds a conic from raw `[A, B, C, D, E, F]`, normalizing.
    pub fn new(raw: [f64; 6]) -> Result<Self> {
        let norm = raw.iter().map(|c| c * c).sum::<f64>().sqrt();
        if !(norm > 1e-300) || raw.iter().any(|c| !c.is_finite()) {
            return Err(Error::invalid(
                "conic coefficients must be finite and not all zero".to_string(),
            ));
        }
        let mut coeffs = raw.map(|c| c / norm);
        if let Some(first) = coeffs.iter().find(|c| **c != 0.0) {
            if *first < 0.0 {
                for c in &mut coeffs {
                    *c = -*c;
                }
            }
        }
        Ok(Conic { coeffs })
    }

    /// Normalized coefficients `[A, B, C, D, E, F]`.
    pub fn coeffs(&self) -> [f64; 6] {
        self.coeffs
    }

    /// Left-hand side of the implicit equation at `p`.
    pub fn eval(&self, p: Point) -> f64 {
        let [a, b, c, d, e, f] = self.coeffs;
        let (x, y) = (p.x, p.y);
        a * x * x + b * x * y + c * y * y + d * x + e * y + f
    }

    /// The symmetric 3x3 matrix of the quadratic form in homogeneous
    /// coordinates.
    pub fn matrix(&self) -> Matrix3<f64> {
        let [a, b, c, d, e, f] = self.coeffs;
        Matrix3::new(
            a,
            b / 2.0,
            d / 2.0,
            b / 2.0,
            c,
            e / 2.0,
            d / 2.0,
            e / 2.0,
            f,
        )
    }
}

/// Verdict of [`classify_conic`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConicClass {
    Ellipse,
    Parabola,
    Hyperbola,
    /// The full 3x3 determinant (nearly) vanishes: the "conic" is a line
    /// pair, a repeated line, or a single point.
    Degenerate,
}

/// Classifies a conic by the sign of `B² − 4AC`, with the 3x3 determinant
/// test for degeneracy, both against [`CLASSIFY_TOL`] on the normalized
/// coefficients.
///
/// The test is purely algebraic: an "imaginary ellipse" such as
/// `x² + y² + 1 = 0` classifies as an ellipse even though it contains no
/// real points.
pub fn classify_conic(c: &Conic) -> ConicClass {
    if c.matrix().determinant().abs() < CLASSIFY_TOL {
        return ConicClass::Degenerate;
    }
    let [a, b, cc, ..] = c.coeffs();
    let disc = b * b - 4.0 * a * cc;
    if disc < -CLASSIFY_TOL {
        ConicClass::Ellipse
    } else if disc > CLASSIFY_TOL {
        ConicClass::Hyperbola
    } else {
        ConicClass::Parabola
    }
}

/// Least-squares conic through `points` (at least 5), with the root-mean-
/// square residual of the implicit equation over the inputs.
///
/// The coefficient vector is the eigenvector of the smallest eigenvalue of
/// the design matrix's normal equations; because the returned [`Conic`] has
/// unit-norm coefficients, residuals of different fits are comparable. A
/// second near-zero singular direction (collinear or repeated points) makes
/// the fit non-unique and is reported as [`Error::DegenerateFit`].
pub fn fit_conic(points: &[Point]) -> Result<(Conic, f64)> {
    if points.len() < 5 {
        return Err(Error::invalid(format!(
            "conic fit needs at least 5 points, got {}",
            points.len()
        )));
    }
    let rows = points.len();
    let design = DMatrix::from_fn(rows, 6, |i, j| {
        let (x, y) = (points[i].x, points[i].y);
        match j {
            0 => x * x,
            1 => x * y,
            2 => y * y,
            3 => x,
            4 => y,
            _ => 1.0,
        }
    });
    let normal = design.transpose() * &design;
    let eigen = SymmetricEigen::new(normal);
    let mut order: Vec<usize> = (0..6).collect();
    order.sort_by(|&i, &j| {
        eigen.eigenvalues[i]
            .partial_cmp(&eigen.eigenvalues[j])
            .expect("eigenvalues of a real symmetric matrix are finite")
    });
    let lambda_min = eigen.eigenvalues[order[0]].max(0.0);
    let lambda_next = eigen.eigenvalues[order[1]].max(0.0);
    let lambda_max = eigen.eigenvalues[order[5]];
    if lambda_next <= FIT_RANK_TOL * FIT_RANK_TOL * lambda_max {
        return Err(Error::DegenerateFit {
            reason: format!(
                "two near-null directions (eigenvalue ratios {:.3e}, {:.3e})",
                lambda_min / lambda_max,
                lambda_next / lambda_max
            ),
        });
    }
    let v = eigen.eigenvectors.column(order[0]);
    let conic = Conic::new([v[0], v[1], v[2], v[3], v[4], v[5]])?;
    let mean_sq =
        points.iter().map(|&p| conic.eval(p).powi(2)).sum::<f64>() / points.len() as f64;
    Ok((conic, mean_sq.sqrt()))
}

/// A tangent line from an external (or boundary) point to an ellipse.
#[derive(Debug, Clone, Copy)]
pub struct Tangency {
    /// Ellipse parameter of the touchpoint.
    pub theta: f64,
    /// The touchpoint `(a cos θ, b sin θ)`.
    pub point: Point,
    /// The tangent line itself.
    pub line: Line,
}

/// Tangent lines from `p` to the ellipse: none for `p` inside, one on the
/// curve (within 1e-10 of it in implicit value), two outside.
///
/// Touchpoint parameters are `φ ± arccos(1/R)` where `R² = (p_x/a)² +
/// (p_y/b)²` and `φ = atan2(p_y/b, p_x/a)`; the two-tangent case returns the
/// `+` branch first.
pub fn tangents_from_point(e: &Ellipse, p: Point) -> Vec<Tangency> {
    const ON_CURVE_TOL: f64 = 1e-10;
    let (u, v) = (p.x / e.a(), p.y / e.b());
    let r = u.hypot(v);
    if r < 1.0 - ON_CURVE_TOL {
        return Vec::new();
    }
    let phi = v.atan2(u);
    let make = |theta: f64| Tangency {
        theta: crate::wrap_angle(theta),
        point: e.point_at(theta),
        line: e.tangent_line(theta),
    };
    if r <= 1.0 + ON_CURVE_TOL {
        return vec![make(phi)];
    }
    let half = (1.0 / r).acos();
    vec![make(phi + half), make(phi - half)]
}

/// Intersection of a line with an ellipse: 0, 1 (tangency), or 2 points,
/// in lexicographic `(x, y)` order.
pub fn line_ellipse_intersect(e: &Ellipse, line: &Line) -> Vec<Point> {
    let (la, lb, lc) = line.coeffs();
    // foot of the perpendicular from the origin, then march along the line
    let p0 = Point::new(-lc * la, -lc * lb);
    let d = line.direction();
    let alpha = (d.x / e.a()).powi(2) + (d.y / e.b()).powi(2);
    let beta = 2.0 * (p0.x * d.x / (e.a() * e.a()) + p0.y * d.y / (e.b() * e.b()));
    let gamma = e.implicit_value(p0) - 1.0;
    let disc = beta * beta - 4.0 * alpha * gamma;
    let scale = beta * beta + (4.0 * alpha * gamma).abs();
    if disc < -1e-12 * scale {
        return Vec::new();
    }
    if disc <= 1e-12 * scale {
        let s = -beta / (2.0 * alpha);
        return vec![p0 + s * d];
    }
    let q = -0.5 * (beta + beta.signum() * disc.sqrt());
    let (s1, s2) = (q / alpha, gamma / q);
    let (p, q) = (p0 + s1 * d, p0 + s2 * d);
    if (p.x, p.y) <= (q.x, q.y) {
        vec![p, q]
    } else {
        vec![q, p]
    }
}

/// A polynomial with real coefficients, stored ascending: `coeffs[i]` is the
/// coefficient of `x^i`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealPolynomial {
    coeffs: Vec<f64>,
}

impl RealPolynomial {
    /// Builds a polynomial from ascending coefficients, trimming trailing
    /// exact zeros. An empty list is the zero polynomial.
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        RealPolynomial { coeffs }
    }

    /// Ascending coefficients.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Degree (0 for constants, including the zero polynomial).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Formal derivative.
    pub fn deriv(&self) -> RealPolynomial {
        if self.coeffs.len() == 1 {
            return RealPolynomial::new(vec![0.0]);
        }
        RealPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| i as f64 * c)
                .collect(),
        )
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }
}

/// Real roots of `p` inside `[lo, hi]`, sorted ascending.
///
/// Roots are isolated by a sign scan over 4096 uniform subintervals, refined
/// by bisection to width `tol`, then polished with a few guarded Newton
/// steps. Roots of even multiplicity that never produce a sign change (the
/// curve touches zero) are not found — callers pick brackets where the
/// polynomial crosses.
pub fn real_roots(p: &RealPolynomial, bracket: (f64, f64), tol: f64) -> Result<Vec<f64>> {
    const SCAN: usize = 4096;
    let (lo, hi) = bracket;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::invalid(format!(
            "root bracket must be finite and increasing, got [{lo}, {hi}]"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid(format!("root tolerance must be positive, got {tol}")));
    }
    if p.is_zero() {
        return Err(Error::invalid(
            "the zero polynomial has no isolated roots".to_string(),
        ));
    }
    if p.degree() == 0 {
        return Ok(Vec::new());
    }

    let dp = p.deriv();
    let polish = |root: f64, cell: f64| -> f64 {
        let mut x = root;
        let mut fx = p.eval(x).abs();
        for _ in 0..3 {
            let d = dp.eval(x);
            if d == 0.0 {
                break;
            }
            let next = x - p.eval(x) / d;
            if !next.is_finite() || (next - root).abs() > cell {
                break;
            }
            let f_next = p.eval(next).abs();
            if f_next >= fx {
                break;
            }
            x = next;
            fx = f_next;
        }
        x
    };

    let step = (hi - lo) / SCAN as f64;
    let mut candidates = Vec::new();
    let mut prev_x = lo;
    let mut prev_f = p.eval(lo);
    if prev_f == 0.0 {
        candidates.push(lo);
    }
    for i in 1..=SCAN {
        let x = if i == SCAN { hi } else { lo + i as f64 * step };
        let f = p.eval(x);
        if f == 0.0 {
            candidates.push(x);
        } else if prev_f != 0.0 && (prev_f > 0.0) != (f > 0.0) {
            let root = crate::numeric::bisect(|x| p.eval(x), prev_x, x, tol);
            candidates.push(polish(root, step));
        }
        prev_x = x;
        prev_f = f;
    }

    candidates.sort_by(|a, b| a.partial_cmp(b).expect("roots are finite"));
    let mut roots: Vec<f64> = Vec::new();
    for r in candidates {
        match roots.last() {
            Some(&last) if (r - last).abs() <= tol.max(1e-14 * (hi - lo)) => {}
            _ => roots.push(r),
        }
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::TAU;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    fn conic(raw: [f64; 6]) -> Conic {
        Conic::new(raw).unwrap()
    }

    #[test]
    fn classify_standard_forms() {
        // x²/2.25 + y² = 1
        assert_eq!(
            classify_conic(&Ellipse::new(1.5, 1.0).unwrap().to_conic()),
            ConicClass::Ellipse
        );
        // xy = 1
        assert_eq!(
            classify_conic(&conic([0.0, 1.0, 0.0, 0.0, 0.0, -1.0])),
            ConicClass::Hyperbola
        );
        // y = x²
        assert_eq!(
            classify_conic(&conic([1.0, 0.0, 0.0, 0.0, -1.0, 0.0])),
            ConicClass::Parabola
        );
        // x² − y² = 0 (crossing line pair)
        assert_eq!(
            classify_conic(&conic([1.0, 0.0, -1.0, 0.0, 0.0, 0.0])),
            ConicClass::Degenerate
        );
    }

    #[test]
    fn conic_normalization_is_sign_and_scale_invariant() {
        let c1 = conic([2.0, 0.0, 4.0, 0.0, 0.0, -8.0]);
        let c2 = conic([-1.0, 0.0, -2.0, 0.0, 0.0, 4.0]);
        assert_eq!(c1, c2);
        let norm: f64 = c1.coeffs().iter().map(|c| c * c).sum();
        assert_relative_eq!(norm, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn fit_recovers_known_ellipse() {
        let e = Ellipse::new(1.5, 1.0).unwrap();
        let pts: Vec<Point> = (0..7).map(|i| e.point_at(0.31 + i as f64)).collect();
        let (fitted, residual) = fit_conic(&pts).unwrap();
        assert!(residual < 1e-12, "residual {residual:e}");
        assert_eq!(classify_conic(&fitted), ConicClass::Ellipse);
        let expect = e.to_conic();
        for (got, want) in fitted.coeffs().iter().zip(expect.coeffs()) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-10);
        }
    }

    #[test]
    fn fit_rejects_collinear_and_short_input() {
        let on_line: Vec<Point> = (0..8).map(|i| Point::new(i as f64, 2.0 * i as f64)).collect();
        assert!(matches!(fit_conic(&on_line), Err(Error::DegenerateFit { .. })));
        let four = [
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(0.0, 1.0),
            Point::new(1.0, 1.0),
        ];
        assert!(matches!(fit_conic(&four), Err(Error::InvalidArgument { .. })));
    }

    #[test]
    fn fit_residual_reflects_noise() {
        let e = Ellipse::new(2.0, 1.0).unwrap();
        let pts: Vec<Point> = (0..40)
            .map(|i| {
                let t = i as f64 * TAU / 40.0;
                let p = e.point_at(t);
                Point::new(p.x + 0.01 * (7.0 * t).sin(), p.y - 0.01 * (5.0 * t).cos())
            })
            .collect();
        let (_, residual) = fit_conic(&pts).unwrap();
        assert!(residual > 1e-4, "noisy fit should not look exact: {residual:e}");
    }

    #[test]
    fn tangents_inside_on_outside() {
        let e = Ellipse::new(1.5, 1.0).unwrap();
        assert!(tangents_from_point(&e, Point::new(0.2, 0.1)).is_empty());

        let on = tangents_from_point(&e, Point::new(1.5, 0.0));
        assert_eq!(on.len(), 1);
        assert_abs_diff_eq!(on[0].theta, 0.0, epsilon = 1e-12);

        let two = tangents_from_point(&e, Point::new(3.0, 2.0));
        assert_eq!(two.len(), 2);
        for t in &two {
            assert_abs_diff_eq!(e.implicit_value(t.point), 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(t.line.eval(Point::new(3.0, 2.0)), 0.0, epsilon = 1e-12);
            // the tangent line meets the ellipse only at the touchpoint
            let hits = line_ellipse_intersect(&e, &t.line);
            assert_eq!(hits.len(), 1);
            assert_abs_diff_eq!((hits[0] - t.point).norm(), 0.0, epsilon = 1e-7);
        }
    }

    #[test]
    fn line_intersection_cases() {
        let e = Ellipse::new(1.5, 1.0).unwrap();
        let x_axis = Line::new(0.0, 1.0, 0.0).unwrap();
        let hits = line_ellipse_intersect(&e, &x_axis);
        assert_eq!(hits.len(), 2);
        assert_abs_diff_eq!((hits[0] - Point::new(-1.5, 0.0)).norm(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!((hits[1] - Point::new(1.5, 0.0)).norm(), 0.0, epsilon = 1e-12);

        let top = Line::new(0.0, 1.0, -1.0).unwrap();
        assert_eq!(line_ellipse_intersect(&e, &top).len(), 1);

        let above = Line::new(0.0, 1.0, -2.0).unwrap();
        assert!(line_ellipse_intersect(&e, &above).is_empty());
    }

    #[test]
    fn lines_compose() {
        let l1 = Line::through(Point::new(0.0, 0.0), Point::new(1.0, 1.0)).unwrap();
        let l2 = Line::through(Point::new(1.0, 0.0), Point::new(0.0, 1.0)).unwrap();
        let p = l1.intersect(&l2).unwrap();
        assert_abs_diff_eq!((p - Point::new(0.5, 0.5)).norm(), 0.0, epsilon = 1e-14);

        let parallel = Line::new(1.0, -1.0, -3.0).unwrap();
        assert!(l1.intersect(&parallel).is_none());
        assert!(Line::through(Point::new(1.0, 2.0), Point::new(1.0, 2.0)).is_err());
    }

    #[test]
    fn roots_of_simple_polynomials() {
        let p = RealPolynomial::new(vec![-2.0, 0.0, 1.0]); // x² − 2
        let roots = real_roots(&p, (-3.0, 3.0), 1e-12).unwrap();
        assert_eq!(roots.len(), 2);
        assert_relative_eq!(roots[0], -(2f64.sqrt()), epsilon = 1e-11);
        assert_relative_eq!(roots[1], 2f64.sqrt(), epsilon = 1e-11);

        // (x+1)x(x−2) = x³ − x² − 2x
        let cubic = RealPolynomial::new(vec![0.0, -2.0, -1.0, 1.0]);
        let roots = real_roots(&cubic, (-5.0, 5.0), 1e-12).unwrap();
        assert_eq!(roots.len(), 3);
        for (got, want) in roots.iter().zip([-1.0, 0.0, 2.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-11);
        }

        assert!(real_roots(&RealPolynomial::new(vec![3.0]), (0.0, 1.0), 1e-12)
            .unwrap()
            .is_empty());
        assert!(real_roots(&RealPolynomial::new(vec![]), (0.0, 1.0), 1e-12).is_err());
        assert!(real_roots(&p, (3.0, -3.0), 1e-12).is_err());
    }

    #[test]
    fn root_matches_closed_form_quartic() {
        // 4x⁴ − 12x² + 7, upper root √(6+2√2)/2
        let p = RealPolynomial::new(vec![7.0, 0.0, -12.0, 0.0, 4.0]);
        let roots = real_roots(&p, (1.0, 2.0), 1e-13).unwrap();
        assert_eq!(roots.len(), 1);
        let closed = (6.0 + 2.0 * 2f64.sqrt()).sqrt() / 2.0;
        assert_relative_eq!(roots[0], closed, epsilon = 1e-12);
    }

    proptest! {
        // Both tangents from a random external point really touch the curve
        // and pass through the point.
        #[test]
        fn prop_tangents_touch(
            a in 0.5f64..3.0,
            b in 0.5f64..3.0,
            r in 1.5f64..10.0,
            phi in 0.0f64..TAU,
        ) {
            let e = Ellipse::new(a, b).unwrap();
            // scale an on-curve point outward so it is strictly outside
            let p = Point::new(r * a * phi.cos(), r * b * phi.sin());
            let tangents = tangents_from_point(&e, p);
            prop_assert_eq!(tangents.len(), 2);
            for t in tangents {
                prop_assert!((e.implicit_value(t.point) - 1.0).abs() < 1e-9);
                prop_assert!(t.line.eval(p).abs() < 1e-9 * r.max(1.0));
            }
        }

        // A conic fitted to exact samples of a random ellipse classifies as
        // an ellipse with tiny residual.
        #[test]
        fn prop_fit_exact_samples(a in 0.5f64..3.0, b in 0.5f64..3.0, t0 in 0.0f64..TAU) {
            let e = Ellipse::new(a, b).unwrap();
            let pts: Vec<Point> = (0..9).map(|i| e.point_at(t0 + i as f64 * TAU / 9.0)).collect();
            let (fitted, residual) = fit_conic(&pts).unwrap();
            prop_assert!(residual < 1e-10);
            prop_assert_eq!(classify_conic(&fitted), ConicClass::Ellipse);
        }
    }
}
