//! Deterministic text serialization: fixed-precision floats and the CSV
//! table formats shared by the library and the command-line tool.
//!
//! Every float is printed with 17 significant digits, enough to reconstruct
//! the exact bit pattern, so a table written, parsed, and written again is
//! byte-identical. Angles appear in degrees in every table (the paper's
//! figures are labeled in degrees); everything internal stays in radians.

use std::fmt::Write as _;

use crate::kinematics::{BalletReport, MotionProfile};
use crate::loci::Locus;
use crate::{Error, Result};

/// Formats a float with 17 significant digits — the minimum that
/// round-trips every `f64` exactly.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Flag column of a locus table row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocusFlag {
    /// A regular finite sample.
    Ok,
    /// The center was undefined at this parameter (coordinates are NaN).
    Gap,
    /// A finite sample beyond the divergence magnitude, excluded from fits.
    Divergent,
}

impl LocusFlag {
    fn as_str(self) -> &'static str {
        match self {
            LocusFlag::Ok => "ok",
            LocusFlag::Gap => "gap",
            LocusFlag::Divergent => "divergent",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "ok" => Some(LocusFlag::Ok),
            "gap" => Some(LocusFlag::Gap),
            "divergent" => Some(LocusFlag::Divergent),
            _ => None,
        }
    }
}

/// One parsed locus table row.
#[derive(Debug, Clone, Copy)]
pub struct LocusRow {
    pub t_deg: f64,
    pub x: f64,
    pub y: f64,
    pub flag: LocusFlag,
}

const LOCUS_HEADER: &str = "t_deg,x,y,flag";

/// Renders a locus as its CSV table: `t_deg,x,y,flag`, all record kinds
/// merged in increasing parameter order; gap rows carry NaN coordinates.
pub fn locus_to_csv(locus: &Locus) -> String {
    let mut rows: Vec<LocusRow> = locus
        .samples()
        .iter()
        .map(|s| LocusRow {
            t_deg: s.t.to_degrees(),
            x: s.point.x,
            y: s.point.y,
            flag: LocusFlag::Ok,
        })
        .chain(locus.gaps().iter().map(|g| LocusRow {
            t_deg: g.t.to_degrees(),
            x: f64::NAN,
            y: f64::NAN,
            flag: LocusFlag::Gap,
        }))
        .chain(locus.divergent().iter().map(|&(t, p)| LocusRow {
            t_deg: t.to_degrees(),
            x: p.x,
            y: p.y,
            flag: LocusFlag::Divergent,
        }))
        .collect();
    rows.sort_by(|a, b| a.t_deg.total_cmp(&b.t_deg));
    locus_rows_to_csv(&rows)
}

/// Renders already-parsed locus rows back to CSV, byte-identical to the
/// table they came from.
pub fn locus_rows_to_csv(rows: &[LocusRow]) -> String {
    let mut out = String::with_capacity(rows.len() * 80 + LOCUS_HEADER.len() + 1);
    out.push_str(LOCUS_HEADER);
    out.push('\n');
    for row in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt_f64(row.t_deg),
            fmt_f64(row.x),
            fmt_f64(row.y),
            row.flag.as_str()
        );
    }
    out
}

/// Parses a locus CSV table.
pub fn locus_rows_from_csv(text: &str) -> Result<Vec<LocusRow>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == LOCUS_HEADER => {}
        Some((_, header)) => {
            return Err(Error::Parse {
                line: 1,
                reason: format!("expected header `{LOCUS_HEADER}`, got `{header}`"),
            })
        }
        None => {
            return Err(Error::Parse {
                line: 1,
                reason: "empty table".to_string(),
            })
        }
    }
    let mut rows = Vec::new();
    for (idx, line) in lines {
        let lineno = idx + 1;
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        let [t_deg, x, y, flag] = fields.as_slice() else {
            return Err(Error::Parse {
                line: lineno,
                reason: format!("expected 4 fields, got {}", fields.len()),
            });
        };
        let num = |s: &str| -> Result<f64> {
            s.parse().map_err(|_| Error::Parse {
                line: lineno,
                reason: format!("not a number: `{s}`"),
            })
        };
        let flag = LocusFlag::parse(flag).ok_or_else(|| Error::Parse {
            line: lineno,
            reason: format!("unknown flag `{flag}`"),
        })?;
        rows.push(LocusRow {
            t_deg: num(t_deg)?,
            x: num(x)?,
            y: num(y)?,
            flag,
        });
    }
    Ok(rows)
}

/// Renders a motion profile as its CSV table:
/// `t_deg,tprime_deg_unwrapped,flag` with flag ∈ {ok, filled}.
pub fn profile_to_csv(profile: &MotionProfile) -> String {
    let mut out = String::new();
    out.push_str("t_deg,tprime_deg_unwrapped,flag\n");
    for s in profile.samples() {
        let _ = writeln!(
            out,
            "{},{},{}",
            fmt_f64(s.t.to_degrees()),
            fmt_f64(s.t_prime.to_degrees()),
            if s.filled { "filled" } else { "ok" }
        );
    }
    out
}

/// Renders a ballet report as its CSV table: `t_deg,gap_deg,gap_euclid`
/// (the Euclidean gap is in billiard length units).
pub fn ballet_to_csv(report: &BalletReport) -> String {
    let mut out = String::new();
    out.push_str("t_deg,gap_deg,gap_euclid\n");
    for s in report.samples() {
        let _ = writeln!(
            out,
            "{},{},{}",
            fmt_f64(s.t.to_degrees()),
            fmt_f64(s.gap.to_degrees()),
            fmt_f64(s.gap_euclid)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::billiard::Billiard;
    use crate::centers::CenterId;
    use crate::kinematics::{ballet, motion_profile};
    use crate::loci::sample_locus;

    #[test]
    fn seventeen_digits_round_trip_exactly() {
        let values = [
            0.0,
            -0.0,
            1.0 / 3.0,
            std::f64::consts::PI,
            -2.718281828459045e-300,
            6.02214076e23,
            f64::MIN_POSITIVE,
            5e-324, // smallest subnormal
            f64::MAX,
        ];
        for v in values {
            let text = fmt_f64(v);
            let back: f64 = text.parse().unwrap();
            assert_eq!(v.to_bits(), back.to_bits(), "{v} -> {text} -> {back}");
            assert_eq!(fmt_f64(back), text);
        }
        // NaN has no bit-identity guarantee, but text form is stable
        assert_eq!(fmt_f64(fmt_f64(f64::NAN).parse().unwrap()), fmt_f64(f64::NAN));
    }

    #[test]
    fn locus_tables_round_trip_byte_for_byte() {
        let b = Billiard::new(1.5, 1.0).unwrap();
        let locus = sample_locus(&b, CenterId::X(1), 32).unwrap();
        let text = locus_to_csv(&locus);
        let rows = locus_rows_from_csv(&text).unwrap();
        assert_eq!(rows.len(), 32);
        assert_eq!(locus_rows_to_csv(&rows), text);
    }

    #[test]
    fn locus_tables_cover_every_flag() {
        let rows = vec![
            LocusRow {
                t_deg: 0.0,
                x: 1.25,
                y: -3.5,
                flag: LocusFlag::Ok,
            },
            LocusRow {
                t_deg: 90.0,
                x: f64::NAN,
                y: f64::NAN,
                flag: LocusFlag::Gap,
            },
            LocusRow {
                t_deg: 180.0,
                x: 2.5e7,
                y: -9.1e8,
                flag: LocusFlag::Divergent,
            },
        ];
        let text = locus_rows_to_csv(&rows);
        let back = locus_rows_from_csv(&text).unwrap();
        assert_eq!(locus_rows_to_csv(&back), text);
        assert_eq!(back[1].flag, LocusFlag::Gap);
        assert!(back[1].x.is_nan());
        assert_eq!(back[2].flag, LocusFlag::Divergent);
    }

    #[test]
    fn malformed_locus_tables_are_rejected_with_line_numbers() {
        assert!(matches!(
            locus_rows_from_csv(""),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            locus_rows_from_csv("wrong,header\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        let bad_fields = "t_deg,x,y,flag\n1.0,2.0,ok\n";
        assert!(matches!(
            locus_rows_from_csv(bad_fields),
            Err(Error::Parse { line: 2, .. })
        ));
        let bad_flag = "t_deg,x,y,flag\n1.0,2.0,3.0,maybe\n";
        assert!(matches!(
            locus_rows_from_csv(bad_flag),
            Err(Error::Parse { line: 2, .. })
        ));
        let bad_number = "t_deg,x,y,flag\nabc,2.0,3.0,ok\n";
        assert!(matches!(
            locus_rows_from_csv(bad_number),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn profile_and_ballet_tables_have_their_headers() {
        let b = Billiard::new(1.5, 1.0).unwrap();
        let profile = motion_profile(&b, CenterId::X(100), 64).unwrap();
        let text = profile_to_csv(&profile);
        assert!(text.starts_with("t_deg,tprime_deg_unwrapped,flag\n"));
        assert_eq!(text.lines().count(), 66); // header + n + 1 closing sample
        // the 64-sample grid lands bitwise on the isosceles pinches at 90°
        // and 270°, where the X(100) rail parameter is a filled limit
        let filled: Vec<&str> = text
            .lines()
            .filter(|l| l.ends_with(",filled"))
            .collect();
        assert!(!filled.is_empty() && filled.len() <= 4, "{filled:?}");
        assert!(text
            .lines()
            .skip(1)
            .all(|l| l.ends_with(",ok") || l.ends_with(",filled")));

        let report = ballet(&b, CenterId::X(88), CenterId::X(162), 64).unwrap();
        let text = ballet_to_csv(&report);
        assert!(text.starts_with("t_deg,gap_deg,gap_euclid\n"));
        assert_eq!(text.lines().count(), 65);
    }

    #[test]
    fn identical_inputs_serialize_identically() {
        let b = Billiard::new(1.5, 1.0).unwrap();
        let a = locus_to_csv(&sample_locus(&b, CenterId::X(4), 64).unwrap());
        let c = locus_to_csv(&sample_locus(&b, CenterId::X(4), 64).unwrap());
        assert_eq!(a, c);
    }
}
