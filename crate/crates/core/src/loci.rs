//! Loci traced by triangle centers over the orbit family: sampling with
//! degeneracy-resolving limits, analytic semi-axes for the orthocenter and
//! Bevan-point ellipses, self-intersection detection, compactness
//! classification, the four-arc structure of the orthic-incenter locus, and
//! envelopes of moving line families.
//!
//! Every operation works on one closed curve: the orbit family retraces
//! each distinct triangle three times per circuit (once per starting
//! vertex), so geometric questions — crossings, divergence directions, arc
//! counts — are answered on the fundamental domain `[0, t₂(0))`, which
//! visits each triangle exactly once.

use std::fmt;

use nalgebra::{Matrix2, Vector2};

use crate::billiard::{Billiard, ShapeClass};
use crate::centers::{self, CenterId, DerivedKind};
use crate::conics::{Ellipse, Line};
use crate::kinematics;
use crate::numeric::golden_max;
use crate::triangle;
use crate::{wrap_angle, Error, Point, Result, TAU};

/// Sample magnitude beyond which a point is recorded as divergent rather
/// than entering the regular sample list (matches the default compactness
/// blowup radius).
pub const DIVERGENT_MAG: f64 = 1e6;

/// One finite locus sample.
#[derive(Debug, Clone, Copy)]
pub struct LocusSample {
    pub t: f64,
    pub point: Point,
}

/// A parameter where the center could not be evaluated even as a limit.
#[derive(Debug, Clone, Copy)]
pub struct LocusGap {
    pub t: f64,
    /// Whether the underlying failure was a point at infinity (a vanishing
    /// trilinear-conversion denominator) rather than a plain degeneracy.
    pub at_infinity: bool,
}

/// A center's sampled locus over one orbit circuit.
#[derive(Debug, Clone)]
pub struct Locus {
    id: CenterId,
    billiard: Billiard,
    samples: Vec<LocusSample>,
    gaps: Vec<LocusGap>,
    divergent: Vec<(f64, Point)>,
    closed: bool,
    gappy: bool,
}

impl Locus {
    pub fn id(&self) -> CenterId {
        self.id
    }

    pub fn billiard(&self) -> Billiard {
        self.billiard
    }

    /// Finite samples in strictly increasing `t` over `[0, 2π)`.
    pub fn samples(&self) -> &[LocusSample] {
        &self.samples
    }

    /// Parameters where the center stayed undefined after limit probing.
    pub fn gaps(&self) -> &[LocusGap] {
        &self.gaps
    }

    /// Finite samples beyond [`DIVERGENT_MAG`], kept out of the regular
    /// list so fits ignore them but divergence reporting can use them.
    pub fn divergent(&self) -> &[(f64, Point)] {
        &self.divergent
    }

    pub fn closed(&self) -> bool {
        self.closed
    }

    /// Warning flag: more than 10% of the requested samples were gaps.
    pub fn gappy(&self) -> bool {
        self.gappy
    }

    /// The regular sample points, in order.
    pub fn points(&self) -> Vec<Point> {
        self.samples.iter().map(|s| s.point).collect()
    }
}

/// Outcome of evaluating a center at one parameter, with degeneracies
/// resolved by limits where the one-sided limits agree.
enum Resolution {
    Point(Point),
    Gap { at_infinity: bool },
}

fn resolve_center(b: &Billiard, t: f64, id: CenterId) -> Result<Resolution> {
    let eval = |t: f64| -> Result<Point> { centers::center(&b.orbit(t)?.triangle(), id) };
    match eval(t) {
        Ok(p) => Ok(Resolution::Point(p)),
        Err(
            e @ (Error::UndefinedCenter { .. }
            | Error::PointAtInfinity { .. }
            | Error::DegenerateTriangle { .. }),
        ) => {
            let at_infinity = matches!(e, Error::PointAtInfinity { .. });
            let probe = |h: f64| -> Result<(Point, Point)> { Ok((eval(t + h)?, eval(t - h)?)) };
            let (Ok((p1, m1)), Ok((p2, m2))) = (probe(1e-6), probe(1e-7)) else {
                return Ok(Resolution::Gap { at_infinity });
            };
            let d1 = (p1 - m1).norm();
            let d2 = (p2 - m2).norm();
            let scale = b.a().max(p2.coords.norm()).max(m2.coords.norm());
            if d2 <= (1e-8 * scale).max(0.25 * d1) {
                // the limits converge as the probe shrinks: take their mean
                Ok(Resolution::Point(Point::from((p2.coords + m2.coords) / 2.0)))
            } else {
                Ok(Resolution::Gap { at_infinity })
            }
        }
        Err(e) => Err(e),
    }
}

/// Evaluates center `id` on the orbit at `t`, resolving exact degeneracies
/// (vanishing trilinear denominators at isosceles orbits, pinning-rule
/// switches) by symmetric one-sided limits. Errs only when the limits
/// genuinely disagree — a center that flies off in opposite directions.
pub fn orbit_center(b: &Billiard, t: f64, id: CenterId) -> Result<Point> {
    match resolve_center(b, t, id)? {
        Resolution::Point(p) => Ok(p),
        Resolution::Gap { .. } => Err(Error::UndefinedCenter {
            id,
            reason: format!("one-sided limits disagree at t = {t}"),
        }),
    }
}

/// Samples the locus of `id` at `n ≥ 8` uniform parameters over `[0, 2π)`.
///
/// Undefined parameters become gaps, finite-but-huge points are set aside
/// as divergent, and a locus with more than 10% gaps carries a warning
/// flag. Deterministic for a given `(billiard, id, n)`.
pub fn sample_locus(b: &Billiard, id: CenterId, n: usize) -> Result<Locus> {
    if n < 8 {
        return Err(Error::invalid(format!("need at least 8 samples, got {n}")));
    }
    let step = TAU / n as f64;
    let mut samples = Vec::with_capacity(n);
    let mut gaps = Vec::new();
    let mut divergent = Vec::new();
    for k in 0..n {
        let t = k as f64 * step;
        match resolve_center(b, t, id)? {
            Resolution::Point(p) if p.coords.norm() > DIVERGENT_MAG => divergent.push((t, p)),
            Resolution::Point(p) => samples.push(LocusSample { t, point: p }),
            Resolution::Gap { at_infinity } => gaps.push(LocusGap { t, at_infinity }),
        }
    }
    let gappy = gaps.len() * 10 > n;
    Ok(Locus {
        id,
        billiard: *b,
        samples,
        gaps,
        divergent,
        closed: true,
        gappy,
    })
}

/// Analytic semi-axes of the orthocenter (X4) locus.
pub fn x4_locus_axes(b: &Billiard) -> (f64, f64) {
    let (a, bb) = (b.a(), b.b());
    let k4 = ((a * a + bb * bb) * b.delta() - 2.0 * a * a * bb * bb) / b.c2();
    (k4 / a, k4 / bb)
}

/// Analytic semi-axes of the Bevan-point (X40) locus.
pub fn x40_locus_axes(b: &Billiard) -> (f64, f64) {
    (b.c2() / b.a(), b.c2() / b.b())
}

/// Length of the orbit family's fundamental domain: as `t` sweeps
/// `[0, t₂(0))` each distinct orbit triangle appears exactly once, and any
/// center's locus is traced exactly once.
pub fn fundamental_domain(b: &Billiard) -> Result<f64> {
    Ok(wrap_angle(b.orbit(0.0)?.params()[1]))
}

/// Orbit parameters in `[lo, hi)` where the orbit is a right triangle,
/// found by scanning the largest angle and bisecting each sign change.
pub fn right_angle_params(b: &Billiard, lo: f64, hi: f64) -> Result<Vec<f64>> {
    if !(hi > lo) {
        return Err(Error::invalid(format!("empty parameter window [{lo}, {hi})")));
    }
    let defect = |t: f64| -> Result<f64> {
        let tri = b.orbit(t)?.triangle();
        Ok(tri.angles()[tri.largest_angle_vertex()] - std::f64::consts::FRAC_PI_2)
    };
    let n = 1024;
    let step = (hi - lo) / n as f64;
    let mut roots = Vec::new();
    let mut prev = defect(lo)?;
    for k in 1..=n {
        let t = lo + k as f64 * step;
        let here = defect(t)?;
        if prev.signum() != here.signum() {
            let (mut a, mut c) = (t - step, t);
            let sign_a = prev.signum();
            for _ in 0..80 {
                let m = (a + c) / 2.0;
                if defect(m)?.signum() == sign_a {
                    a = m;
                } else {
                    c = m;
                }
            }
            let root = (a + c) / 2.0;
            if root < hi {
                roots.push(root);
            }
        }
        prev = here;
    }
    Ok(roots)
}

/// A self-crossing of a locus.
#[derive(Debug, Clone, Copy)]
pub struct SelfIntersection {
    pub point: Point,
    /// The two pass parameters through the point, ascending, in radians.
    pub t_pair: (f64, f64),
    /// Transversal crossings are Newton-refined; tangential contacts are
    /// flagged with their polyline estimate and left unrefined.
    pub transversal: bool,
}

impl SelfIntersection {
    /// The two pass parameters in degrees.
    pub fn t_pair_deg(&self) -> (f64, f64) {
        (self.t_pair.0.to_degrees(), self.t_pair.1.to_degrees())
    }
}

/// True when segment `p1p2` crosses `q1q2` properly (transversally, away
/// from shared endpoints).
fn segments_cross(p1: Point, p2: Point, q1: Point, q2: Point) -> bool {
    let d1 = triangle::cross(q2 - q1, p1 - q1);
    let d2 = triangle::cross(q2 - q1, p2 - q1);
    let d3 = triangle::cross(p2 - p1, q1 - p1);
    let d4 = triangle::cross(p2 - p1, q2 - p1);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

/// Finds all self-crossings of a closed locus.
///
/// The locus polyline is restricted to the fundamental domain (one full
/// trace of the geometric curve), crossing segment pairs are detected
/// combinatorially, and each hit is refined by a two-parameter Newton
/// solve of `C(u) = C(v)`. Parameters come back in radians; degrees via
/// [`SelfIntersection::t_pair_deg`].
pub fn self_intersections(locus: &Locus) -> Result<Vec<SelfIntersection>> {
    if !locus.closed() {
        return Err(Error::invalid("self-intersection search needs a closed locus"));
    }
    if locus.samples().len() < 200 {
        return Err(Error::invalid(format!(
            "need at least 200 samples, got {}",
            locus.samples().len()
        )));
    }
    let b = locus.billiard();
    let id = locus.id();
    let t_fd = fundamental_domain(&b)?;
    let pts: Vec<(f64, Point)> = locus
        .samples()
        .iter()
        .filter(|s| s.t < t_fd)
        .map(|s| (s.t, s.point))
        .collect();
    let m = pts.len();

    let scale = b.a();
    let eval = |t: f64| orbit_center(&b, t, id);
    let deriv = |t: f64| -> Result<Vector2<f64>> {
        let h = 1e-7;
        Ok((eval(t + h)? - eval(t - h)?) / (2.0 * h))
    };

    let mut found: Vec<SelfIntersection> = Vec::new();
    for i in 0..m {
        for j in (i + 2)..m {
            if i == 0 && j == m - 1 {
                continue; // cyclically adjacent
            }
            let (pi, pi1) = (pts[i].1, pts[(i + 1) % m].1);
            let (pj, pj1) = (pts[j].1, pts[(j + 1) % m].1);
            if !segments_cross(pi, pi1, pj, pj1) {
                continue;
            }
            // segment midpoint parameters seed the refinement
            let seg_end = |k: usize| if k + 1 < m { pts[k + 1].0 } else { t_fd };
            let mut u = (pts[i].0 + seg_end(i)) / 2.0;
            let mut v = (pts[j].0 + seg_end(j)) / 2.0;
            let mut transversal = true;
            let mut converged = false;
            for _ in 0..40 {
                let f = eval(u)? - eval(v)?;
                if f.norm() < 1e-12 * scale {
                    converged = true;
                    break;
                }
                let du = deriv(u)?;
                let dv = deriv(v)?;
                let jac = Matrix2::from_columns(&[du, -dv]);
                if jac.determinant().abs() < 1e-10 * du.norm() * dv.norm() {
                    transversal = false;
                    break;
                }
                let Some(delta) = jac.try_inverse().map(|inv| inv * f) else {
                    transversal = false;
                    break;
                };
                u -= delta.x;
                v -= delta.y;
            }
            let (point, (u, v)) = if transversal && converged {
                let (u, v) = (wrap_angle(u), wrap_angle(v));
                (eval(u)?, if u <= v { (u, v) } else { (v, u) })
            } else {
                // tangential or stalled: keep the polyline estimate
                let p = Point::from((pi.coords + pi1.coords + pj.coords + pj1.coords) / 4.0);
                (p, (pts[i].0, pts[j].0))
            };
            let duplicate = found.iter().any(|c| {
                (c.point - point).norm() < 1e-6 * scale
                    || ((c.t_pair.0 - u).abs() < 1e-6 && (c.t_pair.1 - v).abs() < 1e-6)
            });
            if !duplicate {
                found.push(SelfIntersection {
                    point,
                    t_pair: (u, v),
                    transversal: transversal && converged,
                });
            }
        }
    }
    found.sort_by(|a, b| a.t_pair.0.total_cmp(&b.t_pair.0));
    Ok(found)
}

/// Boundedness classification of a locus.
#[derive(Debug, Clone)]
pub enum Compactness {
    /// Every point (after refining magnitude peaks) stays within `blowup`.
    Bounded { max_radius: f64 },
    /// The locus escapes any bound; divergence parameters are reported as
    /// fundamental-domain representatives, one per escaping triangle.
    Unbounded { divergence_params: Vec<f64> },
}

/// Decides whether a locus is bounded. Every cyclic local maximum of the
/// sampled magnitude is sharpened by golden-section search, so poles
/// between samples cannot hide; the locus is unbounded when a refined
/// magnitude exceeds `blowup` or a gap stemmed from a point at infinity.
pub fn compactness(locus: &Locus, blowup: f64) -> Result<Compactness> {
    if !(blowup > 0.0) {
        return Err(Error::invalid(format!("blowup radius must be positive, got {blowup}")));
    }
    let b = locus.billiard();
    let id = locus.id();
    let mut series: Vec<(f64, f64)> = locus
        .samples()
        .iter()
        .map(|s| (s.t, s.point.coords.norm()))
        .chain(locus.divergent().iter().map(|&(t, p)| (t, p.coords.norm())))
        .collect();
    series.sort_by(|x, y| x.0.total_cmp(&y.0));
    let m = series.len();
    if m < 8 {
        return Err(Error::invalid("too few finite samples to classify"));
    }

    let mag = |t: f64| match orbit_center(&b, t, id) {
        Ok(p) => p.coords.norm(),
        Err(_) => f64::INFINITY,
    };
    let mut max_radius: f64 = 0.0;
    let mut escapes = Vec::new();
    for k in 0..m {
        let (prev, here, next) = (
            series[(k + m - 1) % m].1,
            series[k].1,
            series[(k + 1) % m].1,
        );
        max_radius = max_radius.max(here);
        if here >= prev && here > next {
            let lo = series[(k + m - 1) % m].0;
            let mut hi = series[(k + 1) % m].0;
            if hi <= lo {
                hi += TAU;
            }
            let (t_peak, g_peak) = golden_max(&mag, lo, hi, 1e-9);
            if g_peak > blowup {
                escapes.push(wrap_angle(t_peak));
            } else {
                max_radius = max_radius.max(g_peak);
            }
        }
    }
    for gap in locus.gaps() {
        if gap.at_infinity {
            escapes.push(gap.t);
        }
    }
    if escapes.is_empty() && max_radius <= blowup {
        return Ok(Compactness::Bounded { max_radius });
    }

    // reduce the escape parameters to one representative per triangle
    let t_fd = fundamental_domain(&b)?;
    let mut reps = Vec::new();
    for &t in &escapes {
        for p in b.orbit(t)?.params() {
            let w = wrap_angle(p);
            if w < t_fd {
                reps.push(w);
            }
        }
    }
    reps.sort_by(f64::total_cmp);
    reps.dedup_by(|a, b| (*a - *b).abs() < 1e-7);
    Ok(Compactness::Unbounded {
        divergence_params: reps,
    })
}

/// Which conic carries an arc of the orthic-incenter locus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcSupport {
    /// The billiard boundary (obtuse orbits: the incenter of the orthic is
    /// the obtuse vertex).
    Billiard,
    /// The orthocenter ellipse (acute orbits: it is the orthocenter).
    X4Ellipse,
}

impl fmt::Display for ArcSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ArcSupport::Billiard => "billiard",
            ArcSupport::X4Ellipse => "x4-ellipse",
        })
    }
}

/// One arc of the orthic-incenter locus.
#[derive(Debug, Clone, Copy)]
pub struct OrthicArc {
    pub support: ArcSupport,
    /// Fundamental-domain parameter interval (the end of the last arc
    /// wraps past the domain length).
    pub t_range: (f64, f64),
    /// Largest on-conic residual of the arc's samples.
    pub max_residual: f64,
}

/// Arc structure of the orthic-incenter locus.
#[derive(Debug, Clone)]
pub struct OrthicIncenterReport {
    /// Right-orbit parameters inside the fundamental domain where the locus
    /// switches conics; empty when the whole family is acute.
    pub transitions: Vec<f64>,
    /// One arc below the right-triangle threshold, four above.
    pub arcs: Vec<OrthicArc>,
}

/// Samples the orthic-incenter locus and reports its arc structure: a
/// single orthocenter-ellipse below the right-triangle threshold, and four
/// alternating billiard/orthocenter-ellipse arcs above it, split at the
/// right-orbit parameters.
pub fn orthic_incenter_locus(b: &Billiard, n: usize) -> Result<(Locus, OrthicIncenterReport)> {
    let locus = sample_locus(b, CenterId::OrthicIncenter, n)?;
    let (a4, b4) = x4_locus_axes(b);
    let x4_ellipse = Ellipse::new(a4, b4)?;
    let t_fd = fundamental_domain(b)?;
    let alpha_4 = kinematics::threshold("alpha_4")?.value();

    let arc_residual = |support: ArcSupport, lo: f64, hi: f64| -> Result<f64> {
        let conic: &Ellipse = match support {
            ArcSupport::Billiard => &b.ellipse(),
            ArcSupport::X4Ellipse => &x4_ellipse,
        };
        // open interval: the endpoints are right-orbit limits that sit on
        // both conics but carry the limit probe's resolution noise
        let m = 256;
        let mut worst: f64 = 0.0;
        for i in 1..m {
            let t = lo + (hi - lo) * i as f64 / m as f64;
            let p = orbit_center(b, t, CenterId::OrthicIncenter)?;
            worst = worst.max((conic.implicit_value(p) - 1.0).abs());
        }
        Ok(worst)
    };

    if b.aspect() <= alpha_4 {
        let max_residual = arc_residual(ArcSupport::X4Ellipse, 0.0, t_fd)?;
        let report = OrthicIncenterReport {
            transitions: Vec::new(),
            arcs: vec![OrthicArc {
                support: ArcSupport::X4Ellipse,
                t_range: (0.0, t_fd),
                max_residual,
            }],
        };
        return Ok((locus, report));
    }

    let transitions = right_angle_params(b, 0.0, t_fd)?;
    let mut arcs = Vec::with_capacity(transitions.len());
    for (k, &lo) in transitions.iter().enumerate() {
        let hi = if k + 1 < transitions.len() {
            transitions[k + 1]
        } else {
            transitions[0] + t_fd
        };
        let support = match b.orbit((lo + hi) / 2.0)?.shape_class() {
            ShapeClass::Obtuse { .. } => ArcSupport::Billiard,
            _ => ArcSupport::X4Ellipse,
        };
        arcs.push(OrthicArc {
            support,
            t_range: (lo, hi),
            max_residual: arc_residual(support, lo, hi)?,
        });
    }
    Ok((locus, OrthicIncenterReport { transitions, arcs }))
}

/// A moving line family whose envelope can be traced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineFamily {
    /// The line through the incenter and X100.
    X1X100,
}

impl fmt::Display for LineFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineFamily::X1X100 => f.write_str("x1-x100"),
        }
    }
}

/// One envelope sample: the instantaneous center of rotation of the line.
#[derive(Debug, Clone, Copy)]
pub struct EnvelopeSample {
    pub t: f64,
    pub point: Point,
}

/// The envelope of a moving line family.
#[derive(Debug, Clone)]
pub struct Envelope {
    family: LineFamily,
    samples: Vec<EnvelopeSample>,
    gaps: Vec<f64>,
}

impl Envelope {
    pub fn family(&self) -> LineFamily {
        self.family
    }

    /// Envelope points; each lies on its generating line to 1e−8.
    pub fn samples(&self) -> &[EnvelopeSample] {
        &self.samples
    }

    /// Parameters where consecutive lines were parallel or the family
    /// degenerated (coincident defining points).
    pub fn gaps(&self) -> &[f64] {
        &self.gaps
    }
}

/// Shared envelope tracer: intersects each line with its forward neighbor
/// at two step sizes and Richardson-extrapolates the pair.
fn envelope_of(
    line_at: impl Fn(f64) -> Result<Option<Line>>,
    n: usize,
) -> Result<(Vec<EnvelopeSample>, Vec<f64>)> {
    if n < 8 {
        return Err(Error::invalid(format!("need at least 8 samples, got {n}")));
    }
    let step = TAU / n as f64;
    let mut samples = Vec::with_capacity(n);
    let mut gaps = Vec::new();
    'sample: for k in 0..n {
        let t = k as f64 * step;
        let Some(base) = line_at(t)? else {
            gaps.push(t);
            continue;
        };
        // first-order error in ε cancels between ε and ε/2
        let mut pair = [Point::origin(); 2];
        for (slot, eps) in pair.iter_mut().zip([1e-4, 5e-5]) {
            let Some(ahead) = line_at(t + eps)? else {
                gaps.push(t);
                continue 'sample;
            };
            let Some(hit) = base.intersect(&ahead) else {
                gaps.push(t);
                continue 'sample;
            };
            *slot = hit;
        }
        let point = Point::from(2.0 * pair[1].coords - pair[0].coords);
        samples.push(EnvelopeSample { t, point });
    }
    Ok((samples, gaps))
}

/// Traces the envelope of a line family over the orbit circuit: each
/// sample is the instantaneous center of rotation, the intersection of
/// infinitesimally separated family members.
pub fn envelope(b: &Billiard, family: LineFamily, n: usize) -> Result<Envelope> {
    let line_at = |t: f64| -> Result<Option<Line>> {
        let x1 = orbit_center(b, t, CenterId::X(1))?;
        // isosceles orbits pin X100 to a vertex; the line limit is clean
        let x100 = match orbit_center(b, t, CenterId::X(100)) {
            Ok(p) => p,
            Err(Error::UndefinedCenter { .. } | Error::PointAtInfinity { .. }) => {
                return Ok(None)
            }
            Err(e) => return Err(e),
        };
        if (x1 - x100).norm() < 1e-12 * b.a() {
            return Ok(None);
        }
        Ok(Some(Line::through(x1, x100)?))
    };
    let (samples, gaps) = match family {
        LineFamily::X1X100 => envelope_of(line_at, n)?,
    };
    Ok(Envelope {
        family,
        samples,
        gaps,
    })
}

/// Samples the locus of one vertex of a derived triangle over the orbit
/// family (vertex indices follow the reference orbit's). Parameters whose
/// derived triangle degenerates are skipped.
pub fn derived_vertex_locus(
    b: &Billiard,
    kind: DerivedKind,
    vertex: usize,
    n: usize,
) -> Result<Vec<(f64, Point)>> {
    if vertex >= 3 {
        return Err(Error::invalid(format!("vertex index {vertex} out of range 0..3")));
    }
    if n < 8 {
        return Err(Error::invalid(format!("need at least 8 samples, got {n}")));
    }
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let t = k as f64 * TAU / n as f64;
        let tri = b.orbit(t)?.triangle();
        match centers::derived_triangle(&tri, kind) {
            Ok(d) => out.push((t, d.triangle().vertex(vertex))),
            Err(Error::DegenerateTriangle { .. } | Error::UndefinedCenter { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}
