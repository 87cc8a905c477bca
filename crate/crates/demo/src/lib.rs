//! Wasm bindings for the browser demo: a handle per billiard exposing the
//! orbit family, center loci, and the joint X88/X162 motion as flat
//! coordinate arrays a canvas can draw directly.
//!
//! Geometry crosses the boundary as `Float64Array`s of interleaved `x, y`
//! pairs (NaN pairs break a polyline), angles as degrees, and summaries as
//! short strings. Build for the web with
//! `wasm-pack build crates/demo --target web`; the page in `www/` loads the
//! result. The crate also compiles natively so the logic is testable
//! without a wasm toolchain.

use billiard_core::billiard::{Billiard, ShapeClass};
use billiard_core::centers::{catalog_entries, CenterId};
use billiard_core::loci::{orbit_center, sample_locus};
use billiard_core::{Result, TAU};
use wasm_bindgen::prelude::*;

/// One billiard with everything the page draws derived from it.
#[wasm_bindgen]
pub struct Demo {
    b: Billiard,
}

#[wasm_bindgen]
impl Demo {
    /// Builds the billiard `x² / (ab)² + y² = 1` for an aspect ratio `ab > 1`.
    #[wasm_bindgen(constructor)]
    pub fn new(aspect: f64) -> std::result::Result<Demo, JsError> {
        Ok(Demo {
            b: Billiard::from_aspect(aspect).map_err(js)?,
        })
    }

    /// `[a, b, a_caustic, b_caustic]` — the two reference ellipses.
    pub fn axes(&self) -> Vec<f64> {
        let caustic = self.b.caustic();
        vec![self.b.a(), self.b.b(), caustic.a(), caustic.b()]
    }

    /// The orbit triangle at `t`, interleaved `[x1, y1, x2, y2, x3, y3]`.
    pub fn orbit_vertices(&self, t_deg: f64) -> std::result::Result<Vec<f64>, JsError> {
        orbit_vertices(&self.b, t_deg).map_err(js)
    }

    /// One-line orbit readout: perimeter, inradius/circumradius, cosine sum,
    /// shape class.
    pub fn orbit_summary(&self, t_deg: f64) -> std::result::Result<String, JsError> {
        orbit_summary(&self.b, t_deg).map_err(js)
    }

    /// A catalog center at the orbit through `t`, as `[x, y]`; isolated
    /// pinch parameters resolve to their limiting point.
    pub fn center_point(&self, name: &str, t_deg: f64) -> std::result::Result<Vec<f64>, JsError> {
        center_point(&self.b, name, t_deg).map_err(js)
    }

    /// A center's full locus as interleaved pairs in parameter order; a NaN
    /// pair marks a break (undefined or divergent parameter).
    pub fn locus(&self, name: &str, samples: usize) -> std::result::Result<Vec<f64>, JsError> {
        locus_polyline(&self.b, name, samples).map_err(js)
    }

    /// X88, X162, and their rail gap at `t`:
    /// `[x88, y88, x162, y162, gap_deg]`.
    pub fn ballet_positions(&self, t_deg: f64) -> std::result::Result<Vec<f64>, JsError> {
        ballet_positions(&self.b, t_deg).map_err(js)
    }

    /// All catalog center names, in catalog order.
    pub fn center_names(&self) -> Vec<String> {
        catalog_entries()
            .iter()
            .map(|e| e.id().to_string())
            .collect()
    }
}

fn js(e: billiard_core::Error) -> JsError {
    JsError::new(&e.to_string())
}

fn orbit_vertices(b: &Billiard, t_deg: f64) -> Result<Vec<f64>> {
    let orbit = b.orbit(t_deg.to_radians())?;
    Ok(orbit
        .vertices()
        .iter()
        .flat_map(|p| [p.x, p.y])
        .collect())
}

fn orbit_summary(b: &Billiard, t_deg: f64) -> Result<String> {
    let orbit = b.orbit(t_deg.to_radians())?;
    let [s1, s2, s3] = orbit.sidelengths();
    let perimeter = s1 + s2 + s3;
    let angles = orbit.triangle().angles();
    let cosine_sum: f64 = angles.iter().map(|a| a.cos()).sum();
    // r/R via the sidelength identities r = area/s, R = s1 s2 s3 / (4 area)
    let semi = perimeter / 2.0;
    let area = (semi * (semi - s1) * (semi - s2) * (semi - s3)).sqrt();
    let ratio = (area / semi) / (s1 * s2 * s3 / (4.0 * area));
    let shape = match orbit.shape_class() {
        ShapeClass::Acute => "acute".to_string(),
        ShapeClass::Right { vertex } => format!("right at P{}", vertex + 1),
        ShapeClass::Obtuse { vertex } => format!("obtuse at P{}", vertex + 1),
    };
    Ok(format!(
        "perimeter {perimeter:.6} · r/R {ratio:.6} · Σcos {cosine_sum:.6} · {shape}"
    ))
}

fn center_point(b: &Billiard, name: &str, t_deg: f64) -> Result<Vec<f64>> {
    let id: CenterId = name.parse()?;
    let p = orbit_center(b, t_deg.to_radians(), id)?;
    Ok(vec![p.x, p.y])
}

fn locus_polyline(b: &Billiard, name: &str, samples: usize) -> Result<Vec<f64>> {
    let id: CenterId = name.parse()?;
    let locus = sample_locus(b, id, samples)?;

    enum Record {
        Point(f64, f64),
        Break,
    }
    let mut records: Vec<(f64, Record)> = locus
        .samples()
        .iter()
        .map(|s| (s.t, Record::Point(s.point.x, s.point.y)))
        .chain(locus.gaps().iter().map(|g| (g.t, Record::Break)))
        .chain(locus.divergent().iter().map(|&(t, _)| (t, Record::Break)))
        .collect();
    records.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut flat = Vec::with_capacity(2 * records.len());
    for (_, record) in records {
        match record {
            Record::Point(x, y) => flat.extend([x, y]),
            Record::Break => flat.extend([f64::NAN, f64::NAN]),
        }
    }
    Ok(flat)
}

fn ballet_positions(b: &Billiard, t_deg: f64) -> Result<Vec<f64>> {
    let t = t_deg.to_radians();
    let p88 = orbit_center(b, t, CenterId::X(88))?;
    let p162 = orbit_center(b, t, CenterId::X(162))?;
    let ellipse = b.ellipse();
    let gap = {
        let d = (ellipse.param_of(p88) - ellipse.param_of(p162)).rem_euclid(TAU);
        d.min(TAU - d)
    };
    Ok(vec![p88.x, p88.y, p162.x, p162.y, gap.to_degrees()])
}
