//! The elliptic billiard, its confocal caustic, and the one-parameter family
//! of 3-periodic orbits.
//!
//! A triangular orbit is built geometrically: from the leading vertex
//! `P1(t) = (a cos t, b sin t)` draw both tangents to the caustic; each meets
//! the boundary again at another vertex. Closure of the third side against
//! the caustic is not assumed — it is measured, and a violation is an error.
//! An independent Newton solver on the reflection law ([`Billiard::orbit_oracle`])
//! cross-checks the construction.

use crate::conics::{tangents_from_point, Ellipse};
use crate::triangle::{cross, Triangle};
use crate::{wrap_angle, Error, Point, Result, Vec2, TAU};

/// Maximum allowed distance of an orbit vertex from the billiard curve
/// (in implicit value).
pub const ON_BILLIARD_TOL: f64 = 1e-10;

/// Maximum allowed third-side tangency residual (support-function test) and
/// reflection-law residual at a vertex.
pub const CLOSURE_TOL: f64 = 1e-9;

/// Half-width of the band around 90° inside which the largest angle counts
/// as a right angle.
pub const RIGHT_ANGLE_TOL: f64 = 1e-8;

/// The billiard table: an ellipse `(x/a)² + (y/b)² = 1` with `a > b > 0`
/// strictly.
///
/// The circular table is rejected because the caustic semi-axes degenerate
/// to 0/0 at `a = b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Billiard {
    a: f64,
    b: f64,
}

impl Billiard {
    /// Creates a billiard with semi-major `a` and semi-minor `b`.
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > b && b > 0.0) || !a.is_finite() {
            return Err(Error::InvalidSemiAxes { a, b });
        }
        Ok(Billiard { a, b })
    }

    /// Billiard with aspect ratio `ab` and unit semi-minor axis.
    pub fn from_aspect(ab: f64) -> Result<Self> {
        Billiard::new(ab, 1.0)
    }

    /// Semi-major axis.
    pub fn a(&self) -> f64 {
        self.a
    }

    /// Semi-minor axis.
    pub fn b(&self) -> f64 {
        self.b
    }

    /// Aspect ratio `a/b`.
    pub fn aspect(&self) -> f64 {
        self.a / self.b
    }

    /// `c² = a² − b²` (squared linear eccentricity).
    pub fn c2(&self) -> f64 {
        self.a * self.a - self.b * self.b
    }

    /// `δ = √(a⁴ − a²b² + b⁴)`, the recurring radical of this family.
    pub fn delta(&self) -> f64 {
        let (a2, b2) = (self.a * self.a, self.b * self.b);
        (a2 * a2 - a2 * b2 + b2 * b2).sqrt()
    }

    /// The boundary as an [`Ellipse`].
    pub fn ellipse(&self) -> Ellipse {
        Ellipse::new(self.a, self.b).expect("billiard axes are valid ellipse axes")
    }

    /// Left-hand side of the boundary equation at `p` (1 on the boundary).
    pub fn implicit_value(&self, p: Point) -> f64 {
        self.ellipse().implicit_value(p)
    }

    /// Boundary point at parameter `t`.
    pub fn point_at(&self, t: f64) -> Point {
        self.ellipse().point_at(t)
    }

    /// The confocal caustic: the ellipse tangent to every side of every
    /// 3-periodic orbit, with semi-axes
    /// `a_c = a(δ − b²)/c²`, `b_c = b(a² − δ)/c²`.
    pub fn caustic(&self) -> Ellipse {
        let (a, b) = (self.a, self.b);
        let (c2, delta) = (self.c2(), self.delta());
        let ac = a * (delta - b * b) / c2;
        let bc = b * (a * a - delta) / c2;
        Ellipse::new(ac, bc).expect("caustic semi-axes are positive for a > b")
    }

    /// The 3-periodic orbit with leading vertex `P1(t)`.
    ///
    /// `P2` and `P3` are the second boundary intersections of the two caustic
    /// tangents from `P1`, ordered so the triangle winds counterclockwise.
    /// All construction invariants (vertices on the boundary, all three sides
    /// tangent to the caustic, reflection law at each vertex) are verified
    /// before returning.
    pub fn orbit(&self, t: f64) -> Result<Orbit> {
        let caustic = self.caustic();
        let p1 = self.point_at(t);
        let tangents = tangents_from_point(&caustic, p1);
        if tangents.len() != 2 {
            // cannot happen for p1 on the boundary, which is strictly outside
            // the caustic; guard anyway so a future edit fails loudly
            return Err(Error::ClosureViolation {
                t,
                check: "tangent count",
                residual: tangents.len() as f64,
                tol: 2.0,
            });
        }
        let hit = |theta: f64| {
            let touch = caustic.point_at(theta);
            self.second_intersection(p1, touch - p1)
        };
        let (q1, q2) = (hit(tangents[0].theta), hit(tangents[1].theta));
        // counterclockwise: P2 is the one that turns left from P1
        let ((p2, th12), (p3, th13)) = if cross(q1 - p1, q2 - p1) > 0.0 {
            ((q1, tangents[0].theta), (q2, tangents[1].theta))
        } else {
            ((q2, tangents[1].theta), (q1, tangents[0].theta))
        };

        // touchpoint of the closing side P2P3 via the caustic support function
        let (th23, closure_residual) = side_tangency(&caustic, p2, p3);

        let orbit = Orbit {
            billiard: *self,
            params: [
                wrap_angle(t),
                self.ellipse().param_of(p2),
                self.ellipse().param_of(p3),
            ],
            vertices: [p1, p2, p3],
            tangency_params: [
                wrap_angle(th23),
                wrap_angle(th13),
                wrap_angle(th12),
            ],
        };
        orbit.validate(t, closure_residual)?;
        Ok(orbit)
    }

    /// Independent orbit solver: Newton iteration on the boundary parameters
    /// `(t2, t3)` of the non-leading vertices, driving the reflection-law
    /// residuals at `P2` and `P3` to zero.
    ///
    /// Seeded from the tangent construction; if that seed stalls, a 64x64
    /// coarse grid over `(t2, t3)` supplies a restart (two attempts total).
    /// Used to cross-check [`Billiard::orbit`], which it must match to 1e−9.
    pub fn orbit_oracle(&self, t: f64) -> Result<Orbit> {
        let p1 = self.point_at(t);
        let residuals = |t2: f64, t3: f64| -> Vec2 {
            let p2 = self.point_at(t2);
            let p3 = self.point_at(t3);
            Vec2::new(
                reflection_defect(self, t2, p1, p3),
                reflection_defect(self, t3, p2, p1),
            )
        };

        let seed = {
            let o = self.orbit(t)?;
            (o.params[1], o.params[2])
        };
        let coarse = || {
            let mut best = (f64::INFINITY, 0.0, 0.0);
            for i in 1..64 {
                for j in (i + 1)..64 {
                    let t2 = t + TAU * i as f64 / 64.0;
                    let t3 = t + TAU * j as f64 / 64.0;
                    let r = residuals(t2, t3).norm();
                    if r < best.0 {
                        best = (r, t2, t3);
                    }
                }
            }
            (best.1, best.2)
        };

        let mut last_residual = f64::INFINITY;
        for attempt in 0..2 {
            // the coarse grid is a fallback; don't pay for it when the seed works
            let (mut t2, mut t3) = if attempt == 0 { seed } else { coarse() };
            for _ in 0..40 {
                let r = residuals(t2, t3);
                last_residual = r.norm();
                if last_residual < 1e-13 {
                    let caustic = self.caustic();
                    let p2 = self.point_at(t2);
                    let p3 = self.point_at(t3);
                    let (th23, closure_residual) = side_tangency(&caustic, p2, p3);
                    let orbit = Orbit {
                        billiard: *self,
                        params: [wrap_angle(t), wrap_angle(t2), wrap_angle(t3)],
                        vertices: [p1, p2, p3],
                        tangency_params: [
                            th23,
                            side_tangency(&caustic, p3, p1).0,
                            side_tangency(&caustic, p1, p2).0,
                        ],
                    };
                    orbit.validate(t, closure_residual)?;
                    return Ok(orbit);
                }
                // finite-difference Jacobian
                const H: f64 = 1e-7;
                let drdt2 = (residuals(t2 + H, t3) - residuals(t2 - H, t3)) / (2.0 * H);
                let drdt3 = (residuals(t2, t3 + H) - residuals(t2, t3 - H)) / (2.0 * H);
                let det = drdt2.x * drdt3.y - drdt3.x * drdt2.y;
                if det.abs() < 1e-18 {
                    break;
                }
                let (mut dt2, mut dt3) = (
                    (-r.x * drdt3.y + r.y * drdt3.x) / det,
                    (-drdt2.x * r.y + drdt2.y * r.x) / det,
                );
                // damp steps that overshoot
                for _ in 0..8 {
                    if residuals(t2 + dt2, t3 + dt3).norm() <= last_residual {
                        break;
                    }
                    dt2 *= 0.5;
                    dt3 *= 0.5;
                }
                t2 += dt2;
                t3 += dt3;
            }
        }
        Err(Error::NonConvergence {
            what: format!("orbit reflection solver at t = {t}"),
            attempts: 2,
            residual: last_residual,
        })
    }

    /// Second intersection with the boundary of the line through `p` (on the
    /// boundary) with direction `d`, using the known root at `p` — no
    /// discriminant, no cancellation.
    fn second_intersection(&self, p: Point, d: Vec2) -> Point {
        let (a2, b2) = (self.a * self.a, self.b * self.b);
        let alpha = d.x * d.x / a2 + d.y * d.y / b2;
        let beta = 2.0 * (p.x * d.x / a2 + p.y * d.y / b2);
        p + (-beta / alpha) * d
    }

    /// Conserved-quantity report over `n` uniformly spaced orbits: relative
    /// spreads `(max − min)/mean` of perimeter, inradius-to-circumradius
    /// ratio, and angle-cosine sum, plus the farthest the mittenpunkt X9
    /// strays from the origin.
    pub fn invariant_report(&self, n: usize) -> Result<InvariantReport> {
        use crate::centers::{center, CenterId};
        if n < 16 {
            return Err(Error::invalid(format!(
                "invariant report needs at least 16 samples, got {n}"
            )));
        }
        let mut perimeter = Spread::new();
        let mut r_over_cr = Spread::new();
        let mut cosine_sum = Spread::new();
        let mut x9_max = 0.0f64;
        for i in 0..n {
            let t = TAU * i as f64 / n as f64;
            let orbit = self.orbit(t)?;
            let tri = orbit.triangle();
            perimeter.add(tri.perimeter());
            r_over_cr.add(tri.inradius() / tri.circumradius());
            cosine_sum.add(tri.angles().iter().map(|a| a.cos()).sum());
            let x9 = center(&tri, CenterId::X(9))?;
            x9_max = x9_max.max(x9.coords.norm());
        }
        Ok(InvariantReport {
            perimeter_spread: perimeter.relative(),
            inradius_ratio_spread: r_over_cr.relative(),
            cosine_sum_spread: cosine_sum.relative(),
            x9_max_distance: x9_max,
        })
    }

    /// Arclength, curvature, and normalized Poritsky parameter at the caustic
    /// touchpoint of side `P1P2` of the orbit through `t`.
    ///
    /// The Poritsky parameter integrates `κ^(2/3) ds` along the caustic from
    /// its vertex `(a_c, 0)` and normalizes the full circuit to 1; under it
    /// the three touchpoints of any orbit are spaced exactly 1/3 apart.
    pub fn poritsky(&self, t: f64) -> Result<ArcParams> {
        let orbit = self.orbit(t)?;
        self.arc_params(orbit.tangency_params[2])
    }

    /// [`ArcParams`] at an arbitrary caustic parameter.
    pub fn arc_params(&self, theta: f64) -> Result<ArcParams> {
        let caustic = self.caustic();
        let (ac, bc) = (caustic.a(), caustic.b());
        let metric = move |u: f64| {
            let (s, c) = u.sin_cos();
            (ac * ac * s * s + bc * bc * c * c).sqrt()
        };
        let density = move |u: f64| (ac * bc).powf(2.0 / 3.0) / metric(u);
        let theta = wrap_angle(theta);
        const QUAD_TOL: f64 = 1e-11;
        let full = crate::numeric::adaptive_simpson(density, 0.0, TAU, QUAD_TOL)?;
        let partial = if theta == 0.0 {
            0.0
        } else {
            crate::numeric::adaptive_simpson(density, 0.0, theta, QUAD_TOL)?
        };
        let s = if theta == 0.0 {
            0.0
        } else {
            crate::numeric::adaptive_simpson(metric, 0.0, theta, QUAD_TOL)?
        };
        Ok(ArcParams {
            s,
            kappa: caustic.curvature(theta),
            eta: partial / full,
        })
    }
}

/// Reflection-law defect at the boundary point `point_at(tv)` with incoming
/// neighbor `prev` and outgoing neighbor `next`: the tangential component of
/// the sum of the two unit directions (zero iff the angles against the
/// normal are equal).
fn reflection_defect(b: &Billiard, tv: f64, prev: Point, next: Point) -> f64 {
    let p = b.point_at(tv);
    let u = (prev - p).normalize();
    let v = (next - p).normalize();
    (u + v).dot(&b.ellipse().tangent_dir(tv))
}

/// Caustic parameter of the touchpoint of line `PaPb` and the support-
/// function tangency residual of that line.
fn side_tangency(caustic: &Ellipse, pa: Point, pb: Point) -> (f64, f64) {
    let d = pb - pa;
    let n = Vec2::new(-d.y, d.x).normalize();
    let w = n.x * pa.x + n.y * pa.y;
    let (ac2, bc2) = (caustic.a() * caustic.a(), caustic.b() * caustic.b());
    let h = (ac2 * n.x * n.x + bc2 * n.y * n.y).sqrt();
    let touch = Point::new(ac2 * n.x, bc2 * n.y) * (w.signum() / h);
    (caustic.param_of(touch), (w.abs() - h).abs())
}

/// A 3-periodic orbit: counterclockwise vertices with their boundary
/// parameters and the caustic parameters of the three side touchpoints.
#[derive(Debug, Clone, Copy)]
pub struct Orbit {
    billiard: Billiard,
    /// Boundary parameters `[t, t2, t3]` of the vertices, wrapped to `[0, 2π)`.
    params: [f64; 3],
    vertices: [Point; 3],
    /// Caustic parameters of the side touchpoints, indexed like sides
    /// (entry `i` belongs to the side opposite vertex `i`).
    tangency_params: [f64; 3],
}

impl Orbit {
    /// The billiard this orbit lives in.
    pub fn billiard(&self) -> Billiard {
        self.billiard
    }

    /// Leading-vertex parameter `t`, wrapped to `[0, 2π)`.
    pub fn t(&self) -> f64 {
        self.params[0]
    }

    /// Boundary parameters `[t, t2, t3]` of all three vertices.
    pub fn params(&self) -> [f64; 3] {
        self.params
    }

    /// The vertices `[P1, P2, P3]`, counterclockwise.
    pub fn vertices(&self) -> [Point; 3] {
        self.vertices
    }

    /// Caustic parameters of the touchpoints, indexed by opposite vertex.
    pub fn tangency_params(&self) -> [f64; 3] {
        self.tangency_params
    }

    /// The orbit as a plain triangle.
    pub fn triangle(&self) -> Triangle {
        Triangle::new(self.vertices[0], self.vertices[1], self.vertices[2])
    }

    /// Sidelengths `[s1, s2, s3]`, side `i` opposite vertex `i`.
    pub fn sidelengths(&self) -> [f64; 3] {
        self.triangle().sidelengths()
    }

    /// Reflection-law residuals at the three vertices.
    pub fn reflection_residuals(&self) -> [f64; 3] {
        let [t1, t2, t3] = self.params;
        let [p1, p2, p3] = self.vertices;
        [
            reflection_defect(&self.billiard, t1, p3, p2).abs(),
            reflection_defect(&self.billiard, t2, p1, p3).abs(),
            reflection_defect(&self.billiard, t3, p2, p1).abs(),
        ]
    }

    /// Shape class of the orbit by its largest angle, with a ±[`RIGHT_ANGLE_TOL`]
    /// band around 90° reported as right.
    ///
    /// Away from the band the verdict agrees with the position of the
    /// orthocenter relative to the billiard (inside for acute, outside for
    /// obtuse) — asserted in debug builds.
    pub fn shape_class(&self) -> ShapeClass {
        let tri = self.triangle();
        let vertex = tri.largest_angle_vertex();
        let largest = tri.angles()[vertex];
        let defect = largest - std::f64::consts::FRAC_PI_2;
        if defect.abs() <= RIGHT_ANGLE_TOL {
            return ShapeClass::Right { vertex };
        }
        let class = if defect < 0.0 {
            ShapeClass::Acute
        } else {
            ShapeClass::Obtuse { vertex }
        };
        #[cfg(debug_assertions)]
        if defect.abs() > 1e-6 {
            let x4 = tri.orthocenter().expect("orbit triangles are nondegenerate");
            let fx4 = self.billiard.implicit_value(x4);
            if (fx4 - 1.0).abs() > 1e-9 {
                debug_assert_eq!(
                    matches!(class, ShapeClass::Acute),
                    fx4 < 1.0,
                    "shape class and orthocenter position disagree at t = {}",
                    self.params[0]
                );
            }
        }
        class
    }

    fn validate(&self, t: f64, closure_residual: f64) -> Result<()> {
        let fail = |check: &'static str, residual: f64, tol: f64| {
            Err(Error::ClosureViolation {
                t,
                check,
                residual,
                tol,
            })
        };
        for v in self.vertices {
            let residual = (self.billiard.implicit_value(v) - 1.0).abs();
            if residual > ON_BILLIARD_TOL {
                return fail("on-billiard", residual, ON_BILLIARD_TOL);
            }
        }
        if closure_residual > CLOSURE_TOL {
            return fail("third-side tangency", closure_residual, CLOSURE_TOL);
        }
        let worst_reflection = self
            .reflection_residuals()
            .into_iter()
            .fold(0.0f64, f64::max);
        if worst_reflection > CLOSURE_TOL {
            return fail("reflection law", worst_reflection, CLOSURE_TOL);
        }
        Ok(())
    }
}

/// Verdict of [`Orbit::shape_class`]; the vertex index accompanies the
/// non-acute verdicts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeClass {
    Acute,
    Right { vertex: usize },
    Obtuse { vertex: usize },
}

/// Output of [`Billiard::invariant_report`].
#[derive(Debug, Clone, Copy)]
pub struct InvariantReport {
    /// Relative spread `(max − min)/mean` of the orbit perimeter.
    pub perimeter_spread: f64,
    /// Relative spread of inradius/circumradius.
    pub inradius_ratio_spread: f64,
    /// Relative spread of the angle-cosine sum.
    pub cosine_sum_spread: f64,
    /// Largest distance of X9 from the origin.
    pub x9_max_distance: f64,
}

/// Arclength `s`, curvature `κ`, and normalized Poritsky parameter `η` at a
/// point of the caustic.
#[derive(Debug, Clone, Copy)]
pub struct ArcParams {
    pub s: f64,
    pub kappa: f64,
    pub eta: f64,
}

/// Running (max − min)/mean accumulator.
struct Spread {
    min: f64,
    max: f64,
    sum: f64,
    count: usize,
}

impl Spread {
    fn new() -> Self {
        Spread {
            min: f64::INFINITY,
            max: f64::NEG_INFINITY,
            sum: 0.0,
            count: 0,
        }
    }

    fn add(&mut self, x: f64) {
        self.min = self.min.min(x);
        self.max = self.max.max(x);
        self.sum += x;
        self.count += 1;
    }

    fn relative(&self) -> f64 {
        (self.max - self.min) / (self.sum / self.count as f64)
    }
}
