//! How railed centers move as the orbit family sweeps the billiard: boundary
//! parameter profiles with winding numbers and reversals, the aspect-ratio
//! threshold registry, behavioral threshold discovery, the extouchpoint
//! antipodal relation, and the joint X88/X162 "ballet".
//!
//! A center flagged `billiard` or `caustic` in the catalog stays on that
//! curve for every orbit, so its position is a single boundary parameter
//! `t′(t)`. Everything here is about that scalar function: where it is
//! monotonic, how often it winds, where it reverses, and how close two
//! railed centers come to each other.

use std::fmt;

use crate::billiard::Billiard;
use crate::centers::{self, CenterId, DerivedKind};
use crate::conics::{real_roots, RealPolynomial};
use crate::numeric::{golden_max, golden_min};
use crate::{wrap_angle, Error, Point, Result, TAU};

/// A profile sample must sit on its rail within this tolerance.
pub const RAIL_TOL: f64 = 1e-9;

/// [`boundary_param`] accepts points this far (in implicit-equation residual)
/// from the rail.
pub const ON_RAIL_TOL: f64 = 1e-8;

/// Gap below which the ballet declares the two centers to have crossed.
pub const CROSSING_TOL: f64 = 1e-7;

/// Curve a railed center rides as the orbit family sweeps the billiard.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rail {
    /// The billiard boundary itself.
    Billiard,
    /// The confocal caustic inscribed in every orbit.
    Caustic,
}

impl fmt::Display for Rail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rail::Billiard => "billiard",
            Rail::Caustic => "caustic",
        })
    }
}

/// Signed difference `x` reduced to `(-π, π]`.
pub(crate) fn wrap_pm_pi(x: f64) -> f64 {
    let w = wrap_angle(x);
    if w > std::f64::consts::PI {
        w - TAU
    } else {
        w
    }
}

/// Geodesic distance between two angles on the circle, in `[0, π]`.
pub(crate) fn circ_dist(a: f64, b: f64) -> f64 {
    wrap_pm_pi(a - b).abs()
}

/// Recovers the rail parameter of a point: the `t′` with
/// `p = (a cos t′, b sin t′)` on the billiard (or the caustic analog).
///
/// The point must satisfy the rail's implicit equation to [`ON_RAIL_TOL`];
/// continuous-branch selection across samples is the profile assembler's
/// job, so the returned angle is simply wrapped to `[0, 2π)`.
pub fn boundary_param(b: &Billiard, p: Point, rail: Rail) -> Result<f64> {
    let ellipse = match rail {
        Rail::Billiard => b.ellipse(),
        Rail::Caustic => b.caustic(),
    };
    let residual = (ellipse.implicit_value(p) - 1.0).abs();
    if residual > ON_RAIL_TOL {
        return Err(Error::OffRail {
            rail,
            residual,
            tol: ON_RAIL_TOL,
        });
    }
    Ok(ellipse.param_of(p))
}

/// One motion-profile sample: orbit parameter, unwrapped rail parameter,
/// and whether the value was filled from one-sided limits (an exactly
/// isosceles orbit where the center's trilinears divide by zero).
#[derive(Debug, Clone, Copy)]
pub struct ProfileSample {
    pub t: f64,
    pub t_prime: f64,
    pub filled: bool,
}

/// The rail parameter of one railed center over a full orbit circuit.
#[derive(Debug, Clone)]
pub struct MotionProfile {
    id: CenterId,
    rail: Rail,
    samples: Vec<ProfileSample>,
    winding: i32,
    reversals: Vec<f64>,
}

impl MotionProfile {
    pub fn id(&self) -> CenterId {
        self.id
    }

    pub fn rail(&self) -> Rail {
        self.rail
    }

    /// `n + 1` samples: `t = 2πk/n` for `k = 0..=n`, the last closing the
    /// circuit at `t = 2π`. The `t_prime` values form one continuous
    /// unwrapped branch, so the last differs from the first by `2π·winding`.
    pub fn samples(&self) -> &[ProfileSample] {
        &self.samples
    }

    /// Net number of rail revolutions per orbit circuit (signed).
    pub fn winding(&self) -> i32 {
        self.winding
    }

    /// Orbit parameters in `[0, 2π)` where the center's motion along the
    /// rail changes direction, bisection-refined.
    pub fn reversals(&self) -> &[f64] {
        &self.reversals
    }
}

/// Rail parameter of `id` at orbit parameter `t`, wrapped to `[0, 2π)`.
fn raw_rail_param(b: &Billiard, id: CenterId, rail: Rail, t: f64) -> Result<f64> {
    let tri = b.orbit(t)?.triangle();
    let p = centers::center(&tri, id)?;
    let ellipse = match rail {
        Rail::Billiard => b.ellipse(),
        Rail::Caustic => b.caustic(),
    };
    let residual = (ellipse.implicit_value(p) - 1.0).abs();
    if residual > RAIL_TOL {
        return Err(Error::OffRail {
            rail,
            residual,
            tol: RAIL_TOL,
        });
    }
    Ok(ellipse.param_of(p))
}

/// Like [`raw_rail_param`], but an exactly vanishing trilinear denominator
/// (bitwise-isosceles orbit) is filled from one-sided limits at `t ± h`,
/// which must agree; disagreement means the profile genuinely jumps and is
/// reported as a closure violation.
fn rail_param_or_fill(b: &Billiard, id: CenterId, rail: Rail, t: f64) -> Result<(f64, bool)> {
    match raw_rail_param(b, id, rail, t) {
        Ok(v) => Ok((v, false)),
        Err(Error::UndefinedCenter { .. } | Error::PointAtInfinity { .. }) => {
            let h = 1e-7;
            let plus = raw_rail_param(b, id, rail, t + h)?;
            let minus = raw_rail_param(b, id, rail, t - h)?;
            let delta = wrap_pm_pi(plus - minus);
            let tol = 1e-3;
            if delta.abs() > tol {
                return Err(Error::ClosureViolation {
                    t,
                    check: "one-sided rail-parameter limits agree",
                    residual: delta.abs(),
                    tol,
                });
            }
            Ok((wrap_angle(minus + delta / 2.0), true))
        }
        Err(e) => Err(e),
    }
}

/// Builds the [`MotionProfile`] of railed center `id` from `n ≥ 16` samples.
///
/// Raw rail parameters are unwrapped into one continuous branch; the
/// winding number comes from the circuit-closing sample, and reversals are
/// sign changes of consecutive difference quotients, each refined by
/// bisection on a short central difference.
pub fn motion_profile(b: &Billiard, id: CenterId, n: usize) -> Result<MotionProfile> {
    let rail = id.rail().ok_or_else(|| {
        Error::invalid(format!("{id} does not ride a rail; no motion profile exists"))
    })?;
    if n < 16 {
        return Err(Error::invalid(format!("need at least 16 samples, got {n}")));
    }

    let step = TAU / n as f64;
    let mut samples = Vec::with_capacity(n + 1);
    let mut unwrapped = 0.0;
    for k in 0..=n {
        let t = k as f64 * step;
        let (raw, filled) = rail_param_or_fill(b, id, rail, t)?;
        unwrapped = if k == 0 {
            raw
        } else {
            unwrapped + wrap_pm_pi(raw - wrap_angle(unwrapped))
        };
        samples.push(ProfileSample {
            t,
            t_prime: unwrapped,
            filled,
        });
    }

    let turns = (samples[n].t_prime - samples[0].t_prime) / TAU;
    let winding = turns.round() as i32;
    debug_assert!(
        (turns - f64::from(winding)).abs() < 1e-6,
        "non-integer winding {turns} for {id}"
    );

    let reversals = refine_reversals(b, id, rail, &samples)?;
    Ok(MotionProfile {
        id,
        rail,
        samples,
        winding,
        reversals,
    })
}

/// Central difference of the rail parameter at `t` over `±h`, sign-stable
/// near isosceles fills.
fn velocity_sign_probe(b: &Billiard, id: CenterId, rail: Rail, t: f64, h: f64) -> Result<f64> {
    let (plus, _) = rail_param_or_fill(b, id, rail, t + h)?;
    let (minus, _) = rail_param_or_fill(b, id, rail, t - h)?;
    Ok(wrap_pm_pi(plus - minus))
}

/// Finds sign changes of consecutive difference quotients and bisects each
/// bracket down to the reversal parameter.
fn refine_reversals(
    b: &Billiard,
    id: CenterId,
    rail: Rail,
    samples: &[ProfileSample],
) -> Result<Vec<f64>> {
    let n = samples.len() - 1;
    // quotient k lives at the midpoint of [t_k, t_{k+1}]
    let quotients: Vec<f64> = (0..n)
        .map(|k| samples[k + 1].t_prime - samples[k].t_prime)
        .collect();
    let midpoint = |k: usize| (samples[k].t + samples[k + 1].t) / 2.0;
    let h = 1e-6;
    let mut reversals = Vec::new();
    for k in 0..n {
        let (dk, dk1) = (quotients[k], quotients[(k + 1) % n]);
        if dk == 0.0 || dk1 == 0.0 || dk.signum() == dk1.signum() {
            continue;
        }
        // bracket between midpoints (the last pair wraps past 2π)
        let lo = midpoint(k);
        let hi = if k + 1 < n { midpoint(k + 1) } else { midpoint(0) + TAU };
        let f_lo = velocity_sign_probe(b, id, rail, lo, h)?;
        if f_lo.signum() != dk.signum() {
            // the probe disagrees with the coarse quotient right at the
            // bracket edge; the sign change sits closer than h resolves
            reversals.push(wrap_angle(lo));
            continue;
        }
        let mut lo = lo;
        let mut hi = hi;
        for _ in 0..64 {
            if hi - lo < 1e-12 {
                break;
            }
            let mid = (lo + hi) / 2.0;
            let f_mid = velocity_sign_probe(b, id, rail, mid, h)?;
            if f_mid.signum() == f_lo.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        reversals.push(wrap_angle((lo + hi) / 2.0));
    }
    reversals.sort_by(f64::total_cmp);
    Ok(reversals)
}

/// Residual of the extouchpoint antipodal relation at orbit parameter `t`:
/// the touchpoint opposite `P1` sits on the caustic at parameter `t ± π`,
/// and this returns the circle distance between the recovered parameter and
/// that prediction (zero up to roundoff for every orbit).
pub fn extouch_relation(b: &Billiard, t: f64) -> Result<f64> {
    let tri = b.orbit(t)?.triangle();
    let e1 = centers::derived_triangle(&tri, DerivedKind::Extouch)?
        .triangle()
        .vertex(0);
    let t_prime = boundary_param(b, e1, Rail::Caustic)?;
    Ok(circ_dist(t_prime, t + std::f64::consts::PI))
}

// ---------------------------------------------------------------------------
// Threshold registry
// ---------------------------------------------------------------------------

/// One aspect-ratio threshold: a defining polynomial in `a/b` (where one
/// exists), an isolating bracket, a closed form (where one exists), and the
/// value the published table prints.
#[derive(Debug)]
pub struct ThresholdSpec {
    name: &'static str,
    symbol: &'static str,
    polynomial: Option<RealPolynomial>,
    bracket: (f64, f64),
    degree: Option<u32>,
    closed_form: Option<f64>,
    closed_form_text: &'static str,
    /// For the one numeric-only entry, the pinned numeric value.
    pinned: Option<f64>,
    printed: f64,
}

impl ThresholdSpec {
    /// Registry key, e.g. `"alpha_88"`.
    pub fn name(&self) -> &'static str {
        self.name
    }

    /// Display symbol, e.g. `"α88"`.
    pub fn symbol(&self) -> &'static str {
        self.symbol
    }

    /// Degree of the defining polynomial, if the threshold is algebraic.
    pub fn degree(&self) -> Option<u32> {
        self.degree
    }

    /// Closed-form value, if one is known.
    pub fn closed_form(&self) -> Option<f64> {
        self.closed_form
    }

    /// Human-readable closed form (or a note that none is known).
    pub fn closed_form_text(&self) -> &'static str {
        self.closed_form_text
    }

    /// Value as printed in the published threshold table (3 decimals).
    pub fn printed(&self) -> f64 {
        self.printed
    }

    /// The threshold's numeric value: the polynomial root inside the
    /// bracket, or the pinned numeric value for the one entry with no
    /// algebraic characterization.
    pub fn value(&self) -> f64 {
        if let Some(poly) = &self.polynomial {
            let roots = real_roots(poly, self.bracket, 1e-13)
                .expect("registry brackets isolate their roots");
            debug_assert_eq!(roots.len(), 1, "bracket for {} is not isolating", self.name);
            roots[0]
        } else {
            self.pinned.expect("non-algebraic entries carry a pinned value")
        }
    }
}

fn registry() -> &'static [ThresholdSpec] {
    use std::sync::OnceLock;
    static REGISTRY: OnceLock<Vec<ThresholdSpec>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let poly = |ascending: &[f64]| Some(RealPolynomial::new(ascending.to_vec()));
        vec![
            ThresholdSpec {
                name: "alpha_162",
                symbol: "α162",
                // 5x⁸ + 3x⁶ − 32x⁴ + 52x² − 36, only positive root
                polynomial: poly(&[-36.0, 0.0, 52.0, 0.0, -32.0, 0.0, 3.0, 0.0, 5.0]),
                bracket: (1.0, 1.5),
                degree: Some(8),
                closed_form: None,
                closed_form_text: "positive root of 5x^8+3x^6-32x^4+52x^2-36",
                pinned: None,
                printed: 1.164,
            },
            ThresholdSpec {
                name: "alpha_h",
                symbol: "αh",
                // 97y⁴ − 52y³ − 122y² + 12y + 1 in y = (a/b)², root above 1
                polynomial: poly(&[1.0, 0.0, 12.0, 0.0, -122.0, 0.0, -52.0, 0.0, 97.0]),
                bracket: (1.01, 1.3),
                degree: Some(8),
                closed_form: None,
                closed_form_text: "sqrt of the root above 1 of 97y^4-52y^3-122y^2+12y+1",
                pinned: None,
                printed: 1.174,
            },
            ThresholdSpec {
                name: "alpha_act",
                symbol: "αact",
                polynomial: poly(&[-8.0, 0.0, 5.0]),
                bracket: (1.01, 1.5),
                degree: Some(2),
                closed_form: Some((8f64 / 5.0).sqrt()),
                closed_form_text: "2*sqrt(2/5)",
                pinned: None,
                printed: 1.265,
            },
            ThresholdSpec {
                name: "alpha_4",
                symbol: "α4",
                polynomial: poly(&[-7.0, 0.0, 2.0, 0.0, 1.0]),
                bracket: (1.01, 1.5),
                degree: Some(4),
                closed_form: Some((2.0 * 2f64.sqrt() - 1.0).sqrt()),
                closed_form_text: "sqrt(2*sqrt(2)-1)",
                pinned: None,
                printed: 1.352,
            },
            ThresholdSpec {
                name: "alpha_88_perp",
                symbol: "α88⊥",
                polynomial: poly(&[11.0, 0.0, -27.0, 0.0, 11.0]),
                bracket: (1.2, 1.45),
                degree: Some(4),
                closed_form: Some((7.0 + 5f64.sqrt()) * 11f64.sqrt() / 22.0),
                closed_form_text: "(7+sqrt(5))*sqrt(11)/22",
                pinned: None,
                printed: 1.392,
            },
            ThresholdSpec {
                name: "alpha_88",
                symbol: "α88",
                polynomial: poly(&[7.0, 0.0, -12.0, 0.0, 4.0]),
                bracket: (1.3, 1.6),
                degree: Some(4),
                closed_form: Some((6.0 + 2.0 * 2f64.sqrt()).sqrt() / 2.0),
                closed_form_text: "sqrt(6+2*sqrt(2))/2",
                pinned: None,
                printed: 1.486,
            },
            ThresholdSpec {
                name: "alpha_4_star",
                symbol: "α4*",
                polynomial: poly(&[-1.0, 0.0, -1.0, -4.0, 1.0, 0.0, 1.0]),
                bracket: (1.3, 1.7),
                degree: Some(6),
                closed_form: None,
                closed_form_text: "real root of x^6+x^4-4x^3-x^2-1",
                pinned: None,
                printed: 1.510,
            },
            ThresholdSpec {
                name: "alpha_59_perp",
                symbol: "α59⊥",
                polynomial: None,
                bracket: (1.5, 1.7),
                degree: None,
                closed_form: None,
                closed_form_text: "numeric only (right orbit at the X59 axis crossing)",
                // pinned by the behavioral bisection in discover_threshold
                pinned: Some(1.580_045_8),
                printed: 1.580,
            },
            ThresholdSpec {
                name: "alpha_h_prime",
                symbol: "αh'",
                // y⁸ + 12y⁶ − 122y⁴ − 52y² + 97: the same orthic quartic
                // with (a/b)² replaced by its reciprocal (upright isosceles)
                polynomial: poly(&[97.0, 0.0, -52.0, 0.0, -122.0, 0.0, 12.0, 0.0, 1.0]),
                bracket: (2.4, 2.8),
                degree: Some(8),
                closed_form: None,
                closed_form_text: "1/sqrt of the positive root below 1 of 97y^4-52y^3-122y^2+12y+1",
                pinned: None,
                printed: 2.605,
            },
            ThresholdSpec {
                name: "phi",
                symbol: "φ",
                polynomial: poly(&[-1.0, -1.0, 1.0]),
                bracket: (1.4, 1.8),
                degree: Some(2),
                closed_form: Some((1.0 + 5f64.sqrt()) / 2.0),
                closed_form_text: "(1+sqrt(5))/2",
                pinned: None,
                printed: 1.618,
            },
            ThresholdSpec {
                name: "sqrt2",
                symbol: "√2",
                polynomial: poly(&[-2.0, 0.0, 1.0]),
                bracket: (1.2, 1.6),
                degree: Some(2),
                closed_form: Some(2f64.sqrt()),
                closed_form_text: "sqrt(2)",
                pinned: None,
                printed: 1.414,
            },
        ]
    })
}

/// All registered thresholds, in ascending order of value.
pub fn thresholds() -> &'static [ThresholdSpec] {
    registry()
}

/// Looks up a threshold by registry name (e.g. `"alpha_88"`).
pub fn threshold(name: &str) -> Result<&'static ThresholdSpec> {
    registry()
        .iter()
        .find(|spec| spec.name == name.trim())
        .ok_or_else(|| Error::UnknownThreshold {
            name: name.to_string(),
        })
}

// ---------------------------------------------------------------------------
// Behavioral threshold discovery
// ---------------------------------------------------------------------------

/// Counts sign changes of the rail-parameter difference quotients over one
/// circuit — a cheap reversal count without refinement, for scanning.
fn coarse_reversal_count(b: &Billiard, id: CenterId, rail: Rail, n: usize) -> Result<usize> {
    let step = TAU / n as f64;
    let mut quotients = Vec::with_capacity(n);
    let mut prev = rail_param_or_fill(b, id, rail, 0.0)?.0;
    for k in 1..=n {
        let raw = rail_param_or_fill(b, id, rail, k as f64 * step)?.0;
        quotients.push(wrap_pm_pi(raw - prev));
        prev = raw;
    }
    Ok((0..n)
        .filter(|&k| {
            let (d, e) = (quotients[k], quotients[(k + 1) % n]);
            d != 0.0 && e != 0.0 && d.signum() != e.signum()
        })
        .count())
}

/// Largest orbit angle over a family scan minus a right angle.
fn max_family_angle_defect(ab: f64, n: usize) -> Result<f64> {
    let b = Billiard::from_aspect(ab)?;
    let mut max_angle: f64 = 0.0;
    for k in 0..n {
        let tri = b.orbit(k as f64 * TAU / n as f64)?.triangle();
        let angles = tri.angles();
        max_angle = max_angle.max(angles[tri.largest_angle_vertex()]);
    }
    Ok(max_angle - std::f64::consts::FRAC_PI_2)
}

/// Largest angle of the orthic of the isosceles orbit at `t0`, minus π/2.
fn isosceles_orthic_defect(ab: f64, t0: f64) -> Result<f64> {
    let tri = Billiard::from_aspect(ab)?.orbit(t0)?.triangle();
    let orthic = centers::derived_triangle(&tri, DerivedKind::Orthic)?.triangle();
    Ok(orthic.angles()[orthic.largest_angle_vertex()] - std::f64::consts::FRAC_PI_2)
}

/// Largest orbit parameter in (2°, 88°) where the X59 locus crosses the
/// vertical axis below center — the pass through the lower of its two
/// on-axis self-intersection points.
fn x59_lower_crossing(ab: f64) -> Result<f64> {
    let b = Billiard::from_aspect(ab)?;
    let at = |t: f64| -> Result<Point> {
        centers::center(&b.orbit(t)?.triangle(), CenterId::X(59))
    };
    let n = 512;
    let (lo, hi) = (2f64.to_radians(), 88f64.to_radians());
    let mut best = None;
    let mut prev_t = lo;
    let mut prev = at(lo)?;
    for k in 1..=n {
        let t = lo + (hi - lo) * k as f64 / n as f64;
        let p = at(t)?;
        if prev.x.signum() != p.x.signum() {
            let (mut a, mut c) = (prev_t, t);
            let sign_a = prev.x.signum();
            for _ in 0..60 {
                let m = (a + c) / 2.0;
                if at(m)?.x.signum() == sign_a {
                    a = m;
                } else {
                    c = m;
                }
            }
            let root = (a + c) / 2.0;
            if at(root)?.y < 0.0 {
                // ascending scan: the last qualifying root is the largest
                best = Some(root);
            }
        }
        prev_t = t;
        prev = p;
    }
    best.ok_or_else(|| Error::NonConvergence {
        what: format!("X59 lower axis crossing for a/b = {ab}"),
        attempts: n,
        residual: prev.x.abs(),
    })
}

/// Bisects a continuous aspect-ratio predicate to 1e−6; the endpoint values
/// must straddle zero.
fn bisect_aspect(
    name: &str,
    f: impl Fn(f64) -> Result<f64>,
    lo: f64,
    hi: f64,
) -> Result<f64> {
    let f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NonMonotonePredicate {
            name: name.to_string(),
            lo,
            hi,
            f_lo,
            f_hi,
        });
    }
    let (mut lo, mut hi) = (lo, hi);
    while hi - lo > 1e-6 {
        let mid = (lo + hi) / 2.0;
        if f(mid)?.signum() == f_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) / 2.0)
}

/// Measures a threshold from the phenomenon it governs, independently of
/// the polynomial registry: bisection on a behavioral predicate of the
/// aspect ratio, to 1e−6 resolution.
///
/// Supported names and their behaviors:
/// - `"alpha_4"` — the family first contains a right triangle;
/// - `"alpha_h"` / `"alpha_h_prime"` — the orthic of the sideways/upright
///   isosceles orbit becomes right (the upright scan starts above α4,
///   where the reference obtuse regime begins, because below it the
///   upright orthic degenerates and the defect changes sign twice);
/// - `"alpha_act"` / `"alpha_88"` / `"alpha_162"` — the ACT intouchpoint /
///   X88 / X162 motion gains its first reversal;
/// - `"alpha_59_perp"` — the orbit through the lower on-axis
///   self-intersection of the X59 locus becomes right;
/// - `"orthic_x4_vertex"` — the orthocenter of the sideways isosceles
///   orbit's orthic reaches the lateral billiard vertices (a locus feature
///   with no registry entry; compares against ≈1.325).
pub fn discover_threshold(name: &str) -> Result<f64> {
    match name.trim() {
        "alpha_4" => bisect_aspect(name, |ab| max_family_angle_defect(ab, 360), 1.01, 3.2),
        "alpha_h" => bisect_aspect(name, |ab| isosceles_orthic_defect(ab, 0.0), 1.01, 3.2),
        "alpha_h_prime" => bisect_aspect(
            name,
            |ab| isosceles_orthic_defect(ab, std::f64::consts::FRAC_PI_2),
            1.5,
            3.2,
        ),
        "alpha_act" => reversal_onset(name, CenterId::ActIntouch(1), 1.01, 3.2),
        "alpha_88" => reversal_onset(name, CenterId::X(88), 1.01, 3.2),
        "alpha_162" => reversal_onset(name, CenterId::X(162), 1.01, 3.2),
        "alpha_59_perp" => bisect_aspect(
            name,
            |ab| {
                let t_cross = x59_lower_crossing(ab)?;
                let tri = Billiard::from_aspect(ab)?.orbit(t_cross)?.triangle();
                Ok(tri.angles()[tri.largest_angle_vertex()] - std::f64::consts::FRAC_PI_2)
            },
            1.2,
            2.2,
        ),
        "orthic_x4_vertex" => bisect_aspect(
            name,
            |ab| {
                let b = Billiard::from_aspect(ab)?;
                let tri = b.orbit(0.0)?.triangle();
                let orthic = centers::derived_triangle(&tri, DerivedKind::Orthic)?.triangle();
                let x4 = orthic.orthocenter().ok_or_else(|| {
                    Error::invalid("orthic of the sideways isosceles is degenerate")
                })?;
                Ok(x4.x.abs() - b.a())
            },
            1.05,
            1.34,
        ),
        other => Err(Error::UnknownThreshold {
            name: other.to_string(),
        }),
    }
}

/// First aspect ratio at which the center's motion shows a reversal,
/// located by bisection on the coarse reversal count.
fn reversal_onset(name: &str, id: CenterId, lo: f64, hi: f64) -> Result<f64> {
    let rail = id.rail().expect("reversal-onset centers are railed");
    let has_reversal = |ab: f64| -> Result<bool> {
        let b = Billiard::from_aspect(ab)?;
        Ok(coarse_reversal_count(&b, id, rail, 2048)? > 0)
    };
    let at_lo = has_reversal(lo)?;
    let at_hi = has_reversal(hi)?;
    if at_lo || !at_hi {
        return Err(Error::NonMonotonePredicate {
            name: name.to_string(),
            lo,
            hi,
            f_lo: if at_lo { 1.0 } else { 0.0 },
            f_hi: if at_hi { 1.0 } else { 0.0 },
        });
    }
    let (mut lo, mut hi) = (lo, hi);
    while hi - lo > 1e-6 {
        let mid = (lo + hi) / 2.0;
        if has_reversal(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok((lo + hi) / 2.0)
}

// ---------------------------------------------------------------------------
// Ballet
// ---------------------------------------------------------------------------

/// One ballet sample: the orbit parameter, the circle distance between the
/// two centers' rail parameters, and their Euclidean distance.
#[derive(Debug, Clone, Copy)]
pub struct BalletSample {
    pub t: f64,
    pub gap: f64,
    pub gap_euclid: f64,
}

/// Joint-motion report for two billiard-railed centers.
#[derive(Debug, Clone)]
pub struct BalletReport {
    samples: Vec<BalletSample>,
    minima: Vec<(f64, f64)>,
    maxima: Vec<(f64, f64)>,
    min_gap: f64,
    crossing_found: bool,
}

impl BalletReport {
    pub fn samples(&self) -> &[BalletSample] {
        &self.samples
    }

    /// Golden-section-refined local minima of the gap, as `(t, gap)` pairs
    /// sorted by `t`.
    pub fn minima(&self) -> &[(f64, f64)] {
        &self.minima
    }

    /// Refined local maxima of the gap, as `(t, gap)` pairs sorted by `t`.
    pub fn maxima(&self) -> &[(f64, f64)] {
        &self.maxima
    }

    /// Smallest gap seen anywhere (samples and refined minima).
    pub fn min_gap(&self) -> f64 {
        self.min_gap
    }

    /// Whether the two centers ever come within [`CROSSING_TOL`] of each
    /// other on the rail.
    pub fn crossing_found(&self) -> bool {
        self.crossing_found
    }
}

/// Tracks two billiard-railed centers around one orbit circuit and reports
/// how close they come: the circle distance of their rail parameters,
/// refined local minima and maxima, and whether they ever meet.
pub fn ballet(b: &Billiard, id_a: CenterId, id_b: CenterId, n: usize) -> Result<BalletReport> {
    for id in [id_a, id_b] {
        if id.rail() != Some(Rail::Billiard) {
            return Err(Error::invalid(format!(
                "{id} does not ride the billiard; the ballet needs billiard-railed centers"
            )));
        }
    }
    if n < 16 {
        return Err(Error::invalid(format!("need at least 16 samples, got {n}")));
    }

    let gap_at = |t: f64| -> Result<(f64, f64)> {
        let tri = b.orbit(t)?.triangle();
        let pa = centers::center(&tri, id_a)?;
        let pb = centers::center(&tri, id_b)?;
        let ta = b.ellipse().param_of(pa);
        let tb = b.ellipse().param_of(pb);
        Ok((circ_dist(ta, tb), (pa - pb).norm()))
    };
    // measure-zero isosceles degeneracies: nudge rather than die
    let gap_robust = |t: f64| -> Result<(f64, f64)> {
        match gap_at(t) {
            Err(Error::UndefinedCenter { .. } | Error::PointAtInfinity { .. }) => gap_at(t + 1e-9),
            other => other,
        }
    };

    let step = TAU / n as f64;
    let mut samples = Vec::with_capacity(n);
    for k in 0..n {
        let t = k as f64 * step;
        let (gap, gap_euclid) = gap_robust(t)?;
        samples.push(BalletSample { t, gap, gap_euclid });
    }

    let scalar_gap = |t: f64| gap_robust(t).map(|(g, _)| g).unwrap_or(f64::NAN);
    let mut minima = Vec::new();
    let mut maxima = Vec::new();
    for k in 0..n {
        let (prev, here, next) = (
            samples[(k + n - 1) % n].gap,
            samples[k].gap,
            samples[(k + 1) % n].gap,
        );
        let lo = samples[k].t - step;
        let hi = samples[k].t + step;
        if here < prev && here <= next {
            let (t_min, g_min) = golden_min(scalar_gap, lo, hi, 1e-10);
            minima.push((wrap_angle(t_min), g_min));
        } else if here > prev && here >= next {
            let (t_max, g_max) = golden_max(scalar_gap, lo, hi, 1e-10);
            maxima.push((wrap_angle(t_max), g_max));
        }
    }
    minima.sort_by(|a, b| a.0.total_cmp(&b.0));
    maxima.sort_by(|a, b| a.0.total_cmp(&b.0));
    minima.dedup_by(|a, b| circ_dist(a.0, b.0) < 1e-6);
    maxima.dedup_by(|a, b| circ_dist(a.0, b.0) < 1e-6);

    let sample_min = samples.iter().map(|s| s.gap).fold(f64::INFINITY, f64::min);
    let refined_min = minima.iter().map(|&(_, g)| g).fold(f64::INFINITY, f64::min);
    let min_gap = sample_min.min(refined_min);
    Ok(BalletReport {
        samples,
        minima,
        maxima,
        min_gap,
        crossing_found: min_gap < CROSSING_TOL,
    })
}

// ---------------------------------------------------------------------------
// X88 vertex coincidences
// ---------------------------------------------------------------------------

/// Finds every orbit parameter in `[0, 2π)` where X88 coincides with an
/// orbit vertex — the roots of `s2 − (s1 + s3)/2` over sorted sidelengths —
/// and verifies that the incenter bisects X88–X100 there (`ρ = 1`).
pub fn vertex_coincidence_x88(b: &Billiard) -> Result<Vec<f64>> {
    let gap = |t: f64| -> Result<f64> {
        let mut s = b.orbit(t)?.sidelengths();
        s.sort_by(f64::total_cmp);
        Ok(s[1] - (s[0] + s[2]) / 2.0)
    };
    let n = 720;
    let step = TAU / n as f64;
    let mut roots = Vec::new();
    let mut prev = gap(0.0)?;
    for k in 1..=n {
        let t = k as f64 * step;
        let here = gap(t)?;
        if prev.signum() != here.signum() {
            let mut lo = t - step;
            let mut hi = t;
            let f_lo = prev;
            for _ in 0..80 {
                let mid = (lo + hi) / 2.0;
                if gap(mid)?.signum() == f_lo.signum() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            roots.push(wrap_angle((lo + hi) / 2.0));
        }
        prev = here;
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| circ_dist(*a, *b) < 1e-9);

    for &t in &roots {
        // exactly at the coincidence X88's trilinears divide by zero (its
        // limit is the vertex itself), so fall back to rho's symmetric limit
        let rho_at = |t: f64| -> Result<f64> { centers::rho(&b.orbit(t)?.triangle()) };
        let rho = match rho_at(t) {
            Ok(r) => r,
            Err(Error::UndefinedCenter { .. } | Error::PointAtInfinity { .. }) => {
                (rho_at(t + 1e-7)? + rho_at(t - 1e-7)?) / 2.0
            }
            Err(e) => return Err(e),
        };
        let residual = (rho - 1.0).abs();
        if residual > 1e-9 {
            return Err(Error::ClosureViolation {
                t,
                check: "X1 bisects X88X100 at a vertex coincidence (rho = 1)",
                residual,
                tol: 1e-9,
            });
        }
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand::{Rng, SeedableRng};
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn rails_display_their_names() {
        assert_eq!(Rail::Billiard.to_string(), "billiard");
        assert_eq!(Rail::Caustic.to_string(), "caustic");
    }

    #[test]
    fn boundary_param_recovers_known_points() {
        let b = Billiard::new(1.5, 1.0).unwrap();
        assert_abs_diff_eq!(
            boundary_param(&b, Point::new(1.5, 0.0), Rail::Billiard).unwrap(),
            0.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            boundary_param(&b, Point::new(0.0, 1.0), Rail::Billiard).unwrap(),
            FRAC_PI_2,
            epsilon = 1e-15
        );
        // X88 of the sideways isosceles orbit sits on the opposite vertex
        let tri = b.orbit(0.0).unwrap().triangle();
        let x88 = centers::center(&tri, CenterId::X(88)).unwrap();
        assert_abs_diff_eq!(
            boundary_param(&b, x88, Rail::Billiard).unwrap(),
            PI,
            epsilon = 1e-9
        );
        assert!(matches!(
            boundary_param(&b, Point::new(0.3, 0.2), Rail::Billiard),
            Err(Error::OffRail { rail: Rail::Billiard, .. })
        ));
    }

    #[test]
    fn registry_values_match_frozen_roots_and_closed_forms() {
        let expected = [
            ("alpha_162", 1.163696153746896),
            ("alpha_h", 1.174351205429768),
            ("alpha_act", 1.2649110640673518),
            ("alpha_4", 1.3521934494539567),
            ("alpha_88_perp", 1.3923896372537938),
            ("sqrt2", 1.4142135623730951),
            ("alpha_88", 1.4856334612503004),
            ("alpha_4_star", 1.5099716761834467),
            ("alpha_59_perp", 1.5800458),
            ("phi", 1.618033988749895),
            ("alpha_h_prime", 2.605544279963327),
        ];
        for (name, frozen) in expected {
            let spec = threshold(name).unwrap();
            assert_relative_eq!(spec.value(), frozen, epsilon = 1e-9);
            // numeric root and closed form agree wherever both exist
            if let Some(closed) = spec.closed_form() {
                assert_abs_diff_eq!(spec.value(), closed, epsilon = 1e-10);
            }
            // and every value agrees with its printed 3-decimal form, which
            // in some rows truncates the digits rather than rounding them
            let (v, p) = (spec.value(), spec.printed());
            let rounds = ((v * 1000.0).round() - p * 1000.0).abs() < 1e-6;
            let truncates = ((v * 1000.0).floor() - p * 1000.0).abs() < 1e-6;
            assert!(rounds || truncates, "{name}: {v} vs printed {p}");
        }
        assert_eq!(thresholds().len(), expected.len());
        assert!(matches!(
            threshold("alpha_99"),
            Err(Error::UnknownThreshold { .. })
        ));
    }

    #[test]
    fn registry_degrees_match_the_published_table() {
        let degrees = [
            ("alpha_162", Some(8)),
            ("alpha_h", Some(8)),
            ("alpha_act", Some(2)),
            ("alpha_4", Some(4)),
            ("alpha_88_perp", Some(4)),
            ("alpha_88", Some(4)),
            ("alpha_4_star", Some(6)),
            ("alpha_59_perp", None),
            ("phi", Some(2)),
        ];
        for (name, degree) in degrees {
            assert_eq!(threshold(name).unwrap().degree(), degree, "{name}");
        }
    }

    #[test]
    fn x100_profile_is_monotone_and_winds_thrice() {
        for ab in [1.2, 1.5, 2.0] {
            let b = Billiard::from_aspect(ab).unwrap();
            let profile = motion_profile(&b, CenterId::X(100), 1024).unwrap();
            assert_eq!(profile.reversals().len(), 0, "a/b = {ab}");
            assert_eq!(profile.winding().abs(), 3, "a/b = {ab}");
            assert_eq!(profile.samples().len(), 1025);
        }
    }

    #[test]
    fn x88_reversals_switch_on_past_the_threshold() {
        let below = motion_profile(
            &Billiard::from_aspect(1.4).unwrap(),
            CenterId::X(88),
            2048,
        )
        .unwrap();
        assert_eq!(below.reversals().len(), 0);
        assert_eq!(below.winding().abs(), 3);

        let above = motion_profile(
            &Billiard::from_aspect(1.6).unwrap(),
            CenterId::X(88),
            2048,
        )
        .unwrap();
        assert!(above.reversals().len() >= 2);
        assert_eq!(above.reversals().len() % 2, 0, "reversal count must be even");
        assert_eq!(above.winding().abs(), 3);
    }

    #[test]
    fn act_intouchpoint_reverses_four_times_at_moderate_aspect() {
        let b = Billiard::from_aspect(1.5).unwrap();
        let profile = motion_profile(&b, CenterId::ActIntouch(1), 2048).unwrap();
        let reversals = profile.reversals();
        assert_eq!(reversals.len(), 4, "reversals at {reversals:?}");
        // one pair straddles the top vertex symmetrically, one the bottom
        let upper: Vec<f64> = reversals.iter().copied().filter(|&t| t < PI).collect();
        let lower: Vec<f64> = reversals.iter().copied().filter(|&t| t > PI).collect();
        assert_eq!((upper.len(), lower.len()), (2, 2), "reversals at {reversals:?}");
        assert_abs_diff_eq!((upper[0] + upper[1]) / 2.0, FRAC_PI_2, epsilon = 1e-6);
        assert_abs_diff_eq!((lower[0] + lower[1]) / 2.0, 3.0 * FRAC_PI_2, epsilon = 1e-6);
    }

    #[test]
    fn reversal_counts_are_stable_under_sample_doubling() {
        let b = Billiard::from_aspect(2.0).unwrap();
        for id in [CenterId::X(88), CenterId::X(162)] {
            let coarse = motion_profile(&b, id, 2048).unwrap();
            let fine = motion_profile(&b, id, 4096).unwrap();
            assert_eq!(coarse.reversals().len(), fine.reversals().len(), "{id}");
            assert_eq!(coarse.winding(), fine.winding(), "{id}");
        }
    }

    #[test]
    fn profiles_reject_unrailed_centers_and_tiny_sample_counts() {
        let b = Billiard::new(1.5, 1.0).unwrap();
        assert!(motion_profile(&b, CenterId::X(1), 256).is_err());
        assert!(motion_profile(&b, CenterId::X(100), 8).is_err());
    }

    #[test]
    fn extouch_relation_holds_everywhere() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for ab in [1.2, 1.5, 2.0] {
            let b = Billiard::from_aspect(ab).unwrap();
            for _ in 0..100 {
                let t: f64 = rng.random_range(0.0..TAU);
                assert!(
                    extouch_relation(&b, t).unwrap() < 1e-9,
                    "relation broke at ab={ab}, t={t}"
                );
            }
        }
        // t = 0 pins the touchpoint to the caustic's left vertex
        let b = Billiard::new(1.5, 1.0).unwrap();
        let tri = b.orbit(0.0).unwrap().triangle();
        let e1 = centers::derived_triangle(&tri, DerivedKind::Extouch)
            .unwrap()
            .triangle()
            .vertex(0);
        assert_abs_diff_eq!(
            (e1 - Point::new(-b.caustic().a(), 0.0)).norm(),
            0.0,
            epsilon = 1e-9
        );
    }

    #[test]
    fn extouch_tangent_identity_off_axis() {
        // (a/b)·(y/x) on the billiard equals (ac/bc)·(y′/x′) on the caustic
        let b = Billiard::new(1.5, 1.0).unwrap();
        let caustic = b.caustic();
        for t in [0.35, 1.1, 2.2, 4.4] {
            let p1 = b.point_at(t);
            let tri = b.orbit(t).unwrap().triangle();
            let e1 = centers::derived_triangle(&tri, DerivedKind::Extouch)
                .unwrap()
                .triangle()
                .vertex(0);
            let lhs = (b.a() / b.b()) * (p1.y / p1.x);
            let rhs = (caustic.a() / caustic.b()) * (e1.y / e1.x);
            assert_relative_eq!(lhs, rhs, epsilon = 1e-9);
        }
    }

    #[test]
    fn discovered_thresholds_match_the_registry() {
        // the cheap continuous predicates; reversal-onset scans live in the
        // acceptance suite (they bisect over thousands of orbits per probe)
        for name in ["alpha_4", "alpha_h", "alpha_h_prime"] {
            let discovered = discover_threshold(name).unwrap();
            let registered = threshold(name).unwrap().value();
            assert!(
                (discovered - registered).abs() < 1e-4,
                "{name}: discovered {discovered} vs registered {registered}"
            );
        }
        assert!(matches!(
            discover_threshold("alpha_88_perp"),
            Err(Error::UnknownThreshold { .. })
        ));
    }

    #[test]
    fn discovered_x59_threshold_is_its_own_check() {
        let discovered = discover_threshold("alpha_59_perp").unwrap();
        assert!(
            (discovered - threshold("alpha_59_perp").unwrap().value()).abs() < 1e-5,
            "discovered {discovered}"
        );
    }

    #[test]
    fn fig7_locus_touch_threshold() {
        let discovered = discover_threshold("orthic_x4_vertex").unwrap();
        assert!((discovered - 1.325).abs() < 5e-3, "discovered {discovered}");
        assert_abs_diff_eq!(discovered, 1.3251439738018806, epsilon = 1e-5);
    }

    #[test]
    fn ballet_of_x88_and_x162_at_double_aspect() {
        let b = Billiard::from_aspect(2.0).unwrap();
        let report = ballet(&b, CenterId::X(88), CenterId::X(162), 1024).unwrap();
        assert_eq!(report.minima().len(), 12, "minima at {:?}", report.minima());
        assert_eq!(report.maxima().len(), 12);
        assert!(report.min_gap() > 0.0);
        assert!(!report.crossing_found());
        for &(_, gap) in report.maxima() {
            assert!((gap - PI).abs() < 0.5f64.to_radians(), "maximum {gap}");
        }
        // one minimum near t = 41°, all minima sharing the same gap depth
        assert!(
            report
                .minima()
                .iter()
                .any(|&(t, _)| (t.to_degrees() - 41.0).abs() < 1.0),
            "minima at {:?}",
            report.minima()
        );
        let depths: Vec<f64> = report.minima().iter().map(|&(_, g)| g).collect();
        for d in &depths {
            assert_abs_diff_eq!(*d, report.min_gap(), epsilon = 1e-6);
        }
    }

    #[test]
    fn ballet_of_a_center_with_itself_is_silent() {
        let b = Billiard::from_aspect(1.5).unwrap();
        let report = ballet(&b, CenterId::X(100), CenterId::X(100), 256).unwrap();
        assert_eq!(report.min_gap(), 0.0);
        assert!(report.crossing_found());
        assert!(report.samples().iter().all(|s| s.gap == 0.0));
        assert!(matches!(
            ballet(&b, CenterId::X(100), CenterId::X(11), 256),
            Err(Error::InvalidArgument { .. })
        ));
    }

    #[test]
    fn x88_vertex_coincidences_carry_the_publicized_shapes() {
        // at the dedicated aspect ratio the coincident orbit is a 3:4:5
        let ab = threshold("alpha_88_perp").unwrap().value();
        let b = Billiard::from_aspect(ab).unwrap();
        let roots = vertex_coincidence_x88(&b).unwrap();
        assert!(!roots.is_empty());
        let mut s = b.orbit(roots[0]).unwrap().sidelengths();
        s.sort_by(f64::total_cmp);
        assert_relative_eq!(s[1] / s[0], 4.0 / 3.0, epsilon = 1e-6);
        assert_relative_eq!(s[2] / s[0], 5.0 / 3.0, epsilon = 1e-6);

        // at a/b = 1.2 the roots pair up under the mirror t → −t
        let b = Billiard::from_aspect(1.2).unwrap();
        let roots = vertex_coincidence_x88(&b).unwrap();
        assert!(!roots.is_empty());
        for &t in &roots {
            let mirrored = wrap_angle(-t);
            assert!(
                roots.iter().any(|&u| circ_dist(u, mirrored) < 1e-6),
                "no mirror partner for {t}"
            );
        }
    }

    #[test]
    fn wrapping_helpers() {
        assert_abs_diff_eq!(wrap_pm_pi(3.0 * PI), PI, epsilon = 1e-12);
        assert_abs_diff_eq!(wrap_pm_pi(-0.1), -0.1, epsilon = 1e-15);
        assert_abs_diff_eq!(circ_dist(0.1, TAU - 0.1), 0.2, epsilon = 1e-12);
        assert_abs_diff_eq!(circ_dist(0.0, PI), PI, epsilon = 1e-15);
    }
}
