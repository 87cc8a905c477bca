//! Static SVG 1.1 figures: a locus over its billiard, and single frames of
//! the X88/X162 ballet. All geometry is emitted in billiard coordinates
//! (y flipped for screen space) inside a viewBox padded 10% past the
//! billiard's bounding box, so figures scale to any output size.

use billiard_core::billiard::Billiard;
use billiard_core::loci::{Locus, SelfIntersection};
use billiard_core::Point;

use std::fmt::Write as _;

/// Fixed six-decimal coordinate formatting: deterministic and far below
/// visual resolution.
fn num(x: f64) -> String {
    format!("{x:.6}")
}

fn open_figure(b: &Billiard) -> String {
    let (a, bb) = (b.a(), b.b());
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
        num(-1.1 * a),
        num(-1.1 * bb),
        num(2.2 * a),
        num(2.2 * bb)
    );
    let stroke = num(0.008 * a);
    let _ = writeln!(out, r#"<g fill="none" stroke-width="{stroke}">"#);
    let _ = writeln!(
        out,
        r##"<ellipse class="billiard" cx="0" cy="0" rx="{}" ry="{}" stroke="#303030"/>"##,
        num(a),
        num(bb)
    );
    let caustic = b.caustic();
    let _ = writeln!(
        out,
        r##"<ellipse class="caustic" cx="0" cy="0" rx="{}" ry="{}" stroke="#9a9a9a" stroke-dasharray="{} {}"/>"##,
        num(caustic.a()),
        num(caustic.b()),
        num(0.04 * a),
        num(0.03 * a)
    );
    out
}

fn close_figure(mut out: String) -> String {
    out.push_str("</g>\n</svg>\n");
    out
}

fn polyline(out: &mut String, run: &[Point], class: &str, stroke: &str) {
    if run.len() < 2 {
        return;
    }
    let points: Vec<String> = run
        .iter()
        .map(|p| format!("{},{}", num(p.x), num(-p.y)))
        .collect();
    let _ = writeln!(
        out,
        r#"<polyline class="{class}" points="{}" stroke="{stroke}"/>"#,
        points.join(" ")
    );
}

/// The locus drawn over billiard and caustic; runs are broken wherever the
/// center was undefined or diverged, and self-intersections are marked when
/// provided.
pub fn locus_figure(
    b: &Billiard,
    locus: &Locus,
    crossings: Option<&[SelfIntersection]>,
) -> String {
    let mut out = open_figure(b);

    // walk all records in parameter order; gap and divergent parameters
    // break the polyline into separate runs
    enum Event {
        Draw(Point),
        Break,
    }
    let mut events: Vec<(f64, Event)> = locus
        .samples()
        .iter()
        .map(|s| (s.t, Event::Draw(s.point)))
        .chain(locus.gaps().iter().map(|g| (g.t, Event::Break)))
        .chain(locus.divergent().iter().map(|&(t, _)| (t, Event::Break)))
        .collect();
    events.sort_by(|x, y| x.0.total_cmp(&y.0));

    let mut runs: Vec<Vec<Point>> = vec![Vec::new()];
    for (_, event) in events {
        match event {
            Event::Draw(p) => runs.last_mut().unwrap().push(p),
            Event::Break => runs.push(Vec::new()),
        }
    }
    let unbroken = runs.len() == 1;
    if unbroken {
        // visually close the curve
        let first = runs[0].first().copied();
        if let Some(first) = first {
            runs[0].push(first);
        }
    }
    for run in &runs {
        polyline(&mut out, run, "locus", "#1965c0");
    }

    if let Some(crossings) = crossings {
        for c in crossings {
            let _ = writeln!(
                out,
                r##"<circle class="crossing" cx="{}" cy="{}" r="{}" stroke="#c22525"/>"##,
                num(c.point.x),
                num(-c.point.y),
                num(0.025 * b.a())
            );
        }
    }
    close_figure(out)
}

/// One ballet frame: the orbit triangle at `t` with both tracked centers
/// marked on the billiard.
pub fn ballet_frame(
    b: &Billiard,
    vertices: [Point; 3],
    center_a: Point,
    center_b: Point,
) -> String {
    let mut out = open_figure(b);
    let mut triangle = vertices.to_vec();
    triangle.push(vertices[0]);
    polyline(&mut out, &triangle, "orbit", "#5c8a4f");
    for (p, class, color) in [
        (center_a, "center-a", "#c22525"),
        (center_b, "center-b", "#1965c0"),
    ] {
        let _ = writeln!(
            out,
            r#"<circle class="{class}" cx="{}" cy="{}" r="{}" fill="{color}" stroke="none"/>"#,
            num(p.x),
            num(-p.y),
            num(0.03 * b.a())
        );
    }
    close_figure(out)
}
