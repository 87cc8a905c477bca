//! Acceptance suite: one test per published claim about the orbit family,
//! each printing a single `criterion NN: PASS/FAIL` line and enforcing the
//! stated tolerance. Tolerances are pinned here, not tuned to the
//! implementation; a failing criterion is reported with the measured values.

use std::f64::consts::PI;

use billiard_core::billiard::Billiard;
use billiard_core::centers::{
    act_intouchpoints, circumbilliard, pythagorean_aspect, CenterId, DerivedKind,
};
use billiard_core::conics::fit_conic;
use billiard_core::kinematics::{
    ballet, discover_threshold, extouch_relation, motion_profile, threshold,
};
use billiard_core::loci::{
    compactness, derived_vertex_locus, envelope, fundamental_domain, orthic_incenter_locus,
    right_angle_params, sample_locus, self_intersections, x4_locus_axes, Compactness, LineFamily,
};
use billiard_core::{Point, TAU};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Prints the one-line verdict and panics (with the same text) on failure.
fn verdict(num: u32, what: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("criterion {num:02}: PASS — {what}");
    } else {
        let line = format!("criterion {num:02}: FAIL — {what}: {}", failures.join("; "));
        println!("{line}");
        panic!("{line}");
    }
}

fn billiard(aspect: f64) -> Billiard {
    Billiard::from_aspect(aspect).unwrap()
}

#[test]
fn criterion_01_invariants_are_flat_across_the_family() {
    let mut failures = Vec::new();
    for aspect in [1.25, 1.5, 2.0] {
        let report = billiard(aspect).invariant_report(1000).unwrap();
        for (name, value) in [
            ("perimeter spread", report.perimeter_spread),
            ("r/R spread", report.inradius_ratio_spread),
            ("cosine-sum spread", report.cosine_sum_spread),
            ("max |X9|", report.x9_max_distance),
        ] {
            if !(value < 1e-9) {
                failures.push(format!("a/b={aspect}: {name} = {value:.3e} ≥ 1e-9"));
            }
        }
    }
    verdict(
        1,
        "perimeter, r/R, cosine sum conserved and X9 stationary over 1000 samples",
        &failures,
    );
}

#[test]
fn criterion_02_constructed_orbits_match_the_reflection_solver() {
    let mut failures = Vec::new();
    for (i, aspect) in [1.25, 1.5, 2.0].into_iter().enumerate() {
        let b = billiard(aspect);
        let mut rng = ChaCha8Rng::seed_from_u64(2026 + i as u64);
        let mut worst = 0.0_f64;
        for _ in 0..100 {
            let t = rng.random_range(0.0..TAU);
            let fast = b.orbit(t).unwrap();
            let slow = b.orbit_oracle(t).unwrap();
            for (p, q) in fast.vertices().iter().zip(slow.vertices()) {
                worst = worst.max((p - q).norm());
            }
        }
        if !(worst < 1e-9) {
            failures.push(format!(
                "a/b={aspect}: worst vertex disagreement {worst:.3e} ≥ 1e-9"
            ));
        }
    }
    verdict(
        2,
        "tangent-construction orbits match the reflection-equation solver at 100 random parameters",
        &failures,
    );
}

#[test]
fn criterion_03_x4_locus_is_the_predicted_ellipse() {
    let mut failures = Vec::new();
    for aspect in [1.2, 1.5] {
        let b = billiard(aspect);
        let points = sample_locus(&b, CenterId::X(4), 360).unwrap().points();
        let (conic, _) = fit_conic(&points).unwrap();
        let [ca, cb, cc, cd, ce, cf] = conic.coeffs();
        let scale = ca.abs().max(cc.abs());
        if cb.abs() > 1e-9 * scale || cd.abs() > 1e-9 * scale || ce.abs() > 1e-9 * scale {
            failures.push(format!(
                "a/b={aspect}: fitted conic is not centered/axis-aligned \
                 (B={cb:.2e}, D={cd:.2e}, E={ce:.2e})"
            ));
            continue;
        }
        let fitted = ((-cf / ca).sqrt(), (-cf / cc).sqrt());
        let expected = x4_locus_axes(&b);
        let rel_x = (fitted.0 - expected.0).abs() / expected.0;
        let rel_y = (fitted.1 - expected.1).abs() / expected.1;
        if !(rel_x < 1e-7 && rel_y < 1e-7) {
            failures.push(format!(
                "a/b={aspect}: fitted semi-axes ({:.12}, {:.12}) vs predicted \
                 ({:.12}, {:.12}), relative error ({rel_x:.3e}, {rel_y:.3e}) ≥ 1e-7",
                fitted.0, fitted.1, expected.0, expected.1
            ));
        }
    }
    verdict(
        3,
        "fitted orthocenter-locus semi-axes match (k4/a, k4/b) to 1e-7 relative",
        &failures,
    );
}

#[test]
fn criterion_04_threshold_registry_matches_published_values() {
    let mut failures = Vec::new();
    let printed: [(&str, f64); 8] = [
        ("alpha_162", 1.164),
        ("alpha_h", 1.174),
        ("alpha_act", 1.265),
        ("alpha_4", 1.352),
        ("alpha_88_perp", 1.392),
        ("alpha_88", 1.486),
        ("alpha_4_star", 1.510),
        ("phi", 1.618),
    ];
    for (name, value_3dp) in printed {
        let spec = threshold(name).unwrap();
        let value = spec.value();
        let diff = (value - value_3dp).abs();
        if !(diff < 5e-4) {
            failures.push(format!(
                "{name}: root {value:.15} vs printed {value_3dp} — |diff| {diff:.3e} ≥ 5e-4"
            ));
        }
        if let Some(closed) = spec.closed_form() {
            let cf_diff = (value - closed).abs();
            if !(cf_diff < 1e-10) {
                failures.push(format!(
                    "{name}: root {value:.15} vs closed form {closed:.15} — \
                     |diff| {cf_diff:.3e} ≥ 1e-10"
                ));
            }
        }
    }
    verdict(
        4,
        "all eight tabulated thresholds match their three-decimal values and closed forms",
        &failures,
    );
}

#[test]
fn criterion_05_behavioral_rediscovery_agrees_with_the_registry() {
    let mut failures = Vec::new();
    for name in ["alpha_4", "alpha_act", "alpha_88", "alpha_162"] {
        let found = discover_threshold(name).unwrap();
        let registered = threshold(name).unwrap().value();
        let diff = (found - registered).abs();
        if !(diff < 1e-4) {
            failures.push(format!(
                "{name}: rediscovered {found:.10} vs registry {registered:.10} — \
                 |diff| {diff:.3e} ≥ 1e-4"
            ));
        }
    }
    let touch = discover_threshold("orthic_x4_vertex").unwrap();
    let diff = (touch - 1.325).abs();
    if !(diff < 5e-3) {
        failures.push(format!(
            "orthic_x4_vertex: rediscovered {touch:.10} vs published 1.325 — \
             |diff| {diff:.3e} ≥ 5e-3"
        ));
    }
    verdict(
        5,
        "aspect-sweep rediscovery reproduces the registry and the orthic-locus touch value",
        &failures,
    );
}

#[test]
fn criterion_06_act_intouchpoints_ride_the_billiard() {
    let mut failures = Vec::new();
    for aspect in [1.2, 1.5, 2.0] {
        let b = billiard(aspect);
        let mut worst = 0.0_f64;
        for k in 0..360 {
            let t = k as f64 * TAU / 360.0;
            let tri = b.orbit(t).unwrap().triangle();
            for p in act_intouchpoints(&tri) {
                worst = worst.max((b.implicit_value(p) - 1.0).abs());
            }
        }
        if !(worst < 1e-9) {
            failures.push(format!(
                "a/b={aspect}: worst |f(i′) − 1| = {worst:.3e} ≥ 1e-9"
            ));
        }
    }
    verdict(
        6,
        "anticomplementary-triangle intouchpoints satisfy the billiard equation over 360 samples",
        &failures,
    );
}

#[test]
fn criterion_07_extouchpoint_rides_the_caustic_half_a_turn_away() {
    let mut failures = Vec::new();
    for aspect in [1.2, 1.5, 2.0] {
        let b = billiard(aspect);
        let mut worst = 0.0_f64;
        for k in 0..360 {
            let t = k as f64 * TAU / 360.0;
            worst = worst.max(extouch_relation(&b, t).unwrap());
        }
        if !(worst < 1e-9) {
            failures.push(format!(
                "a/b={aspect}: worst |t′ − (t + π)| = {worst:.3e} ≥ 1e-9"
            ));
        }
    }
    verdict(
        7,
        "the extouchpoint's caustic parameter is t ± π over 360 samples",
        &failures,
    );
}

#[test]
fn criterion_08_x59_crossings_and_right_angle_threshold() {
    let mut failures = Vec::new();
    for (aspect, published_deg) in [(1.3, 32.52), (1.5, 29.09)] {
        let b = billiard(aspect);
        let locus = sample_locus(&b, CenterId::X(59), 2048).unwrap();
        let crossings = self_intersections(&locus).unwrap();
        if crossings.len() != 4 {
            failures.push(format!(
                "a/b={aspect}: expected exactly 4 self-intersections, found {}",
                crossings.len()
            ));
            continue;
        }
        let lower: Vec<_> = crossings
            .iter()
            .filter(|c| c.point.x.abs() < 1e-3 && c.point.y < 0.0)
            .collect();
        let [lower] = lower.as_slice() else {
            failures.push(format!(
                "a/b={aspect}: expected one crossing below the center on the minor axis, \
                 found {}",
                lower.len()
            ));
            continue;
        };
        let (u, v) = lower.t_pair_deg();
        let err = (u - published_deg).abs().min((v - published_deg).abs());
        if !(err < 0.1) {
            failures.push(format!(
                "a/b={aspect}: lower crossing passes at ({u:.4}°, {v:.4}°), \
                 neither within 0.1° of {published_deg}°"
            ));
        }
    }
    let found = discover_threshold("alpha_59_perp").unwrap();
    let diff = (found - 1.58).abs();
    if !(diff < 0.01) {
        failures.push(format!(
            "alpha_59_perp: rediscovered {found:.6} vs published 1.58 — |diff| {diff:.3e} ≥ 0.01"
        ));
    }
    verdict(
        8,
        "the X59 locus self-intersects four times at the published parameters and its \
         right-angle aspect is rediscovered",
        &failures,
    );
}

#[test]
fn criterion_09_x26_compactness_flips_with_the_right_triangles() {
    let mut failures = Vec::new();

    let bounded = billiard(1.25);
    let locus = sample_locus(&bounded, CenterId::X(26), 1024).unwrap();
    match compactness(&locus, 1e3).unwrap() {
        Compactness::Bounded { max_radius } => {
            if !(max_radius < 1e3) {
                failures.push(format!("a/b=1.25: max radius {max_radius:.3e} ≥ 1e3"));
            }
        }
        Compactness::Unbounded { divergence_params } => failures.push(format!(
            "a/b=1.25: expected a bounded locus, found {} divergence parameters",
            divergence_params.len()
        )),
    }

    let unbounded = billiard(1.4);
    let locus = sample_locus(&unbounded, CenterId::X(26), 2048).unwrap();
    match compactness(&locus, 1e3).unwrap() {
        Compactness::Bounded { max_radius } => failures.push(format!(
            "a/b=1.4: expected an unbounded locus, found max radius {max_radius:.3e}"
        )),
        Compactness::Unbounded { divergence_params } => {
            let fd = fundamental_domain(&unbounded).unwrap();
            let rights = right_angle_params(&unbounded, 0.0, fd).unwrap();
            if divergence_params.len() != 4 {
                failures.push(format!(
                    "a/b=1.4: expected 4 divergence parameters, found {}",
                    divergence_params.len()
                ));
            } else {
                for (d, r) in divergence_params.iter().zip(&rights) {
                    if !((d - r).abs() < 1e-6) {
                        failures.push(format!(
                            "a/b=1.4: divergence at t={d:.8} vs right-triangle t={r:.8} — \
                             off by {:.3e} ≥ 1e-6",
                            (d - r).abs()
                        ));
                    }
                }
            }
        }
    }
    verdict(
        9,
        "the circumcenter-of-tangential locus is bounded at 1.25 and blows up at the four \
         right-triangle parameters at 1.4",
        &failures,
    );
}

#[test]
fn criterion_10_x88_reversals_and_the_envelope_crossing() {
    let mut failures = Vec::new();

    let quiet = motion_profile(&billiard(1.4), CenterId::X(88), 720).unwrap();
    if !quiet.reversals().is_empty() {
        failures.push(format!(
            "a/b=1.4: expected monotone X88 motion, found {} reversals",
            quiet.reversals().len()
        ));
    }
    let lively = motion_profile(&billiard(1.6), CenterId::X(88), 720).unwrap();
    if lively.reversals().is_empty() {
        failures.push("a/b=1.6: expected X88 reversals, found none".to_string());
    }

    // the incenter–X100 line envelope pokes through the billiard exactly when
    // X88 starts reversing: bisect max f(E) − 1 on the aspect
    let max_f = |aspect: f64| -> f64 {
        let b = billiard(aspect);
        envelope(&b, LineFamily::X1X100, 360)
            .unwrap()
            .samples()
            .iter()
            .map(|s| b.implicit_value(s.point))
            .fold(f64::NEG_INFINITY, f64::max)
    };
    let (mut lo, mut hi) = (1.4_f64, 1.6_f64);
    if max_f(lo) >= 1.0 || max_f(hi) <= 1.0 {
        failures.push(format!(
            "envelope bracket broken: max f = {:.6} at 1.4, {:.6} at 1.6",
            max_f(lo),
            max_f(hi)
        ));
    } else {
        while hi - lo > 1e-5 {
            let mid = 0.5 * (lo + hi);
            if max_f(mid) < 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let crossing = 0.5 * (lo + hi);
        let alpha_88 = threshold("alpha_88").unwrap().value();
        let diff = (crossing - alpha_88).abs();
        if !(diff < 1e-3) {
            failures.push(format!(
                "envelope pierces the billiard at a/b = {crossing:.6}, but X88 reversals \
                 switch on at {alpha_88:.6} — |diff| {diff:.3e} ≥ 1e-3"
            ));
        }
    }
    verdict(
        10,
        "X88 reverses only above its threshold, where the incenter–X100 envelope first \
         pierces the billiard",
        &failures,
    );
}

#[test]
fn criterion_11_the_ballet_never_lets_x88_and_x162_meet() {
    let mut failures = Vec::new();
    let b = billiard(2.0);
    let report = ballet(&b, CenterId::X(88), CenterId::X(162), 720).unwrap();

    if report.crossing_found() || !(report.min_gap() > 0.0) {
        failures.push(format!(
            "minimum gap {:.3e} rad is not strictly positive",
            report.min_gap()
        ));
    }
    if report.minima().len() != 12 || report.maxima().len() != 12 {
        failures.push(format!(
            "expected 12 minima and 12 maxima, found {} and {}",
            report.minima().len(),
            report.maxima().len()
        ));
    }
    for &(t, gap) in report.maxima() {
        let gap_deg = gap.to_degrees();
        if !((gap_deg - 180.0).abs() < 0.5) {
            failures.push(format!(
                "maximum at t={:.2}° has gap {gap_deg:.3}°, not 180° ± 0.5°",
                t.to_degrees()
            ));
        }
    }
    if !report
        .minima()
        .iter()
        .any(|&(t, _)| (t.to_degrees() - 41.0).abs() < 1.0)
    {
        let ts: Vec<String> = report
            .minima()
            .iter()
            .map(|&(t, _)| format!("{:.2}°", t.to_degrees()))
            .collect();
        failures.push(format!("no minimum at 41° ± 1°; minima at [{}]", ts.join(", ")));
    }
    for id in [CenterId::X(88), CenterId::X(162)] {
        let winding = motion_profile(&b, id, 720).unwrap().winding();
        if winding.abs() != 3 {
            failures.push(format!("{id} winds {winding} times, expected |winding| = 3"));
        }
    }
    verdict(
        11,
        "at a/b = 2 the X88/X162 gap stays positive with 12 antipodal maxima, a minimum \
         near 41°, and triple winding",
        &failures,
    );
}

#[test]
fn criterion_12_pythagorean_aspects_match_the_published_table() {
    let mut failures = Vec::new();
    // (legs, hypotenuse, exact form, three-decimal table value)
    let rows: [(f64, f64, f64, f64, f64); 5] = [
        (3.0, 4.0, 5.0, (7.0 + 5f64.sqrt()) * 11f64.sqrt() / 22.0, 1.392),
        (5.0, 12.0, 13.0, 14f64.sqrt() * (65f64.sqrt() + 17.0) / 56.0, 1.674),
        (8.0, 15.0, 17.0, 111f64.sqrt() * (85f64.sqrt() + 23.0) / 222.0, 1.529),
        (7.0, 24.0, 25.0, 159f64.sqrt() * (5.0 * 13f64.sqrt() + 31.0) / 318.0, 1.944),
        (20.0, 21.0, 29.0, 6f64.sqrt() * (145f64.sqrt() + 41.0) / 96.0, 1.353),
    ];
    for (s1, s2, s3, exact, printed) in rows {
        let computed = pythagorean_aspect(s1, s2, s3).unwrap();
        let vs_exact = (computed - exact).abs();
        if !(vs_exact < 1e-12) {
            failures.push(format!(
                "({s1},{s2},{s3}): computed {computed:.15} vs exact form {exact:.15} — \
                 |diff| {vs_exact:.3e}"
            ));
        }
        let vs_printed = (computed - printed).abs();
        if !(vs_printed < 5e-4) {
            failures.push(format!(
                "({s1},{s2},{s3}): computed {computed:.15} vs printed {printed} — \
                 |diff| {vs_printed:.3e} ≥ 5e-4 (the three-decimal entry truncates \
                 {computed:.5} instead of rounding it; the computed value matches the \
                 row's exact radical to {vs_exact:.1e})"
            ));
        }
    }

    let tri = billiard_core::triangle::Triangle::new(
        Point::new(0.0, 0.0),
        Point::new(4.0, 0.0),
        Point::new(0.0, 3.0),
    );
    let via_circumbilliard = circumbilliard(&tri).unwrap().aspect;
    let via_formula = pythagorean_aspect(3.0, 4.0, 5.0).unwrap();
    let diff = (via_circumbilliard - via_formula).abs();
    if !(diff < 1e-9) {
        failures.push(format!(
            "(3,4,5): circumbilliard aspect {via_circumbilliard:.15} vs formula \
             {via_formula:.15} — |diff| {diff:.3e} ≥ 1e-9"
        ));
    }
    verdict(
        12,
        "right-triangle billiard aspects match the five printed values and the \
         circumbilliard construction",
        &failures,
    );
}

#[test]
fn criterion_13_orthic_incenter_locus_splits_into_four_true_arcs() {
    let mut failures = Vec::new();
    let b = billiard(1.5);
    let (_, report) = orthic_incenter_locus(&b, 720).unwrap();
    if report.arcs.len() != 4 {
        failures.push(format!("expected 4 arcs, found {}", report.arcs.len()));
    }
    for arc in &report.arcs {
        if !(arc.max_residual < 1e-8) {
            failures.push(format!(
                "{} arc over ({:.4}, {:.4}) strays {:.3e} ≥ 1e-8 from its conic",
                arc.support, arc.t_range.0, arc.t_range.1, arc.max_residual
            ));
        }
    }
    for &t in &report.transitions {
        let orbit = b.orbit(t).unwrap();
        let largest = orbit
            .triangle()
            .angles()
            .into_iter()
            .fold(f64::NEG_INFINITY, f64::max);
        if !((largest - PI / 2.0).abs() < 1e-8) {
            failures.push(format!(
                "transition at t={t:.8} has largest angle {largest:.10}, not π/2"
            ));
        }
    }
    verdict(
        13,
        "at a/b = 1.5 the orthic-incenter locus rides billiard and orthocenter-ellipse \
         arcs, switching exactly at right-triangle parameters",
        &failures,
    );
}

#[test]
fn criterion_14_caustic_touchpoints_are_equally_spaced_in_the_poritsky_parameter() {
    let mut failures = Vec::new();
    let b = billiard(1.5);
    let mut rng = ChaCha8Rng::seed_from_u64(59);
    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let t = rng.random_range(0.0..TAU);
        let orbit = b.orbit(t).unwrap();
        let mut etas: Vec<f64> = orbit
            .tangency_params()
            .iter()
            .map(|&theta| b.arc_params(theta).unwrap().eta)
            .collect();
        etas.sort_by(f64::total_cmp);
        let gaps = [
            etas[1] - etas[0],
            etas[2] - etas[1],
            1.0 - etas[2] + etas[0],
        ];
        for g in gaps {
            worst = worst.max((g - 1.0 / 3.0).abs());
        }
    }
    if !(worst < 1e-7) {
        failures.push(format!("worst |spacing − 1/3| = {worst:.3e} ≥ 1e-7"));
    }
    verdict(
        14,
        "the three caustic touchpoints sit exactly a third of a circuit apart over 100 \
         random orbits",
        &failures,
    );
}

#[test]
fn criterion_15_ellipticity_census_separates_conic_from_nonconic_loci() {
    let mut failures = Vec::new();
    let b = billiard(1.5);

    for id in [1, 2, 3, 4, 5, 40].map(CenterId::X) {
        let points = sample_locus(&b, id, 360).unwrap().points();
        let (_, residual) = fit_conic(&points).unwrap();
        if !(residual < 1e-8) {
            failures.push(format!("{id} locus fit residual {residual:.3e} ≥ 1e-8"));
        }
    }
    for vertex in 0..3 {
        let points: Vec<Point> = derived_vertex_locus(&b, DerivedKind::Excentral, vertex, 360)
            .unwrap()
            .into_iter()
            .map(|(_, p)| p)
            .collect();
        let (_, residual) = fit_conic(&points).unwrap();
        if !(residual < 1e-8) {
            failures.push(format!(
                "excenter vertex {vertex} locus fit residual {residual:.3e} ≥ 1e-8"
            ));
        }
    }
    for kind in [DerivedKind::Intouch, DerivedKind::Medial, DerivedKind::Feuerbach] {
        for vertex in 0..3 {
            let points: Vec<Point> = derived_vertex_locus(&b, kind, vertex, 360)
                .unwrap()
                .into_iter()
                .map(|(_, p)| p)
                .collect();
            let (_, residual) = fit_conic(&points).unwrap();
            if !(residual > 1e-4) {
                failures.push(format!(
                    "{kind} vertex {vertex} locus fit residual {residual:.3e} ≤ 1e-4 — \
                     unexpectedly conic"
                ));
            }
        }
    }
    verdict(
        15,
        "classic centers and excenters trace conics to 1e-8 while intouch, medial, and \
         Feuerbach vertices do not",
        &failures,
    );
}
