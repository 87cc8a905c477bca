//! `billiard` — batch front-end for the elliptic-billiard orbit library.
//!
//! Subcommands compute orbits, conserved-quantity tables, center loci,
//! the threshold registry, rail-motion profiles, and the X88/X162 ballet,
//! emitting CSV tables and static SVG figures. Angles are degrees at this
//! boundary (figures are labeled that way); the library itself is radians.
//!
//! Identical invocations produce byte-identical output: floats are printed
//! with fixed 17-significant-digit formatting, rows in fixed order, and all
//! computation is deterministic.

mod config;
mod svg;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use billiard_core::billiard::{Billiard, ShapeClass};
use billiard_core::centers::{catalog_entries, CenterId};
use billiard_core::kinematics::{ballet, motion_profile, threshold, thresholds};
use billiard_core::loci::{orbit_center, sample_locus, self_intersections};
use billiard_core::serialize::{ballet_to_csv, fmt_f64, locus_to_csv, profile_to_csv};
use billiard_core::TAU;
use clap::{Args, Parser, Subcommand};

use config::{merged, resolve, ConfigMap};

/// One-line failure surfaced to the user; process exit status 1.
#[derive(Debug)]
pub struct CliError(pub String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<billiard_core::Error> for CliError {
    fn from(e: billiard_core::Error) -> Self {
        CliError(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "billiard",
    version,
    about = "3-periodic orbits in an elliptic billiard: tables and figures"
)]
struct Cli {
    /// key=value defaults file, merged under explicit flags (flags win)
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One orbit: vertices, sidelengths, shape class, and every catalog center
    Orbit(OrbitArgs),
    /// Conserved-quantity spreads over the whole orbit family
    Invariants(InvariantsArgs),
    /// A center's locus as a CSV table or an SVG figure
    Locus(LocusArgs),
    /// The aspect-ratio threshold registry
    Thresholds(ThresholdsArgs),
    /// Rail-parameter motion profiles for railed centers
    Motion(MotionArgs),
    /// Joint X88/X162 motion: gap table, extreme report, optional SVG frames
    Ballet(BalletArgs),
}

/// Billiard geometry: either the aspect ratio or an explicit semi-axis pair.
#[derive(Args)]
struct GeometryArgs {
    /// semi-axis ratio a/b (must exceed 1)
    #[arg(long)]
    ab: Option<f64>,

    /// major semi-axis, paired with --b
    #[arg(long)]
    a: Option<f64>,

    /// minor semi-axis, paired with --a
    #[arg(long)]
    b: Option<f64>,
}

impl GeometryArgs {
    fn billiard(&self, cfg: &ConfigMap) -> Result<Billiard, CliError> {
        let ab = merged(self.ab, cfg, "ab")?;
        let a = merged(self.a, cfg, "a")?;
        let b = merged(self.b, cfg, "b")?;
        match (ab, a, b) {
            (Some(_), Some(_), _) | (Some(_), _, Some(_)) => Err(CliError(
                "give either --ab or the --a/--b pair, not both".to_string(),
            )),
            (Some(ab), None, None) => Ok(Billiard::from_aspect(ab)?),
            (None, Some(a), Some(b)) => Ok(Billiard::new(a, b)?),
            (None, None, None) => Err(CliError(
                "missing geometry: give --ab, or --a and --b".to_string(),
            )),
            (None, _, _) => Err(CliError(
                "--a and --b must be given together".to_string(),
            )),
        }
    }
}

#[derive(Args)]
struct OrbitArgs {
    #[command(flatten)]
    geometry: GeometryArgs,

    /// orbit parameter t in degrees
    #[arg(long = "t-deg")]
    t_deg: Option<f64>,

    /// write here instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InvariantsArgs {
    #[command(flatten)]
    geometry: GeometryArgs,

    /// family sample count
    #[arg(long)]
    samples: Option<usize>,

    /// write here instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct LocusArgs {
    #[command(flatten)]
    geometry: GeometryArgs,

    /// center to trace (X-number like X88, or a named slug)
    #[arg(long)]
    center: Option<String>,

    /// locus sample count
    #[arg(long)]
    samples: Option<usize>,

    /// output format: csv or svg
    #[arg(long)]
    format: Option<String>,

    /// mark locus self-intersections (svg only)
    #[arg(long, num_args = 0..=1, default_missing_value = "true", value_name = "BOOL")]
    mark_crossings: Option<bool>,

    /// write here instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ThresholdsArgs {
    /// registry names (e.g. alpha_88); empty lists the whole registry
    names: Vec<String>,

    /// write here instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MotionArgs {
    #[command(flatten)]
    geometry: GeometryArgs,

    /// comma-separated railed centers, e.g. X88,X100
    #[arg(long)]
    centers: Option<String>,

    /// circuit sample count
    #[arg(long)]
    samples: Option<usize>,

    /// directory for the per-center profile tables
    #[arg(long = "out-dir", value_name = "DIR")]
    out_dir: Option<PathBuf>,
}

#[derive(Args)]
struct BalletArgs {
    #[command(flatten)]
    geometry: GeometryArgs,

    /// circuit sample count
    #[arg(long)]
    samples: Option<usize>,

    /// number of SVG frames to emit (omit for none)
    #[arg(long)]
    frames: Option<usize>,

    /// directory for the frame files
    #[arg(long = "frames-dir", value_name = "DIR")]
    frames_dir: Option<PathBuf>,

    /// write the gap table here instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = ConfigMap::load(cli.config.as_deref())?;
    match cli.command {
        Command::Orbit(args) => cmd_orbit(&args, &cfg),
        Command::Invariants(args) => cmd_invariants(&args, &cfg),
        Command::Locus(args) => cmd_locus(&args, &cfg),
        Command::Thresholds(args) => cmd_thresholds(&args),
        Command::Motion(args) => cmd_motion(&args, &cfg),
        Command::Ballet(args) => cmd_ballet(&args, &cfg),
    }
}

/// Writes to the file when a path is given, standard output otherwise.
fn emit(out: Option<&Path>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn shape_label(shape: ShapeClass) -> String {
    match shape {
        ShapeClass::Acute => "acute".to_string(),
        ShapeClass::Right { vertex } => format!("right at P{}", vertex + 1),
        ShapeClass::Obtuse { vertex } => format!("obtuse at P{}", vertex + 1),
    }
}

fn cmd_orbit(args: &OrbitArgs, cfg: &ConfigMap) -> Result<(), CliError> {
    let b = args.geometry.billiard(cfg)?;
    let t_deg: f64 = config::resolve_required(args.t_deg, cfg, "t-deg")?;
    let t = t_deg.to_radians();
    let orbit = b.orbit(t)?;

    let mut out = String::new();
    out.push_str(&format!("a = {}\n", fmt_f64(b.a())));
    out.push_str(&format!("b = {}\n", fmt_f64(b.b())));
    out.push_str(&format!("aspect = {}\n", fmt_f64(b.aspect())));
    out.push_str(&format!("t_deg = {}\n", fmt_f64(t_deg)));
    for (i, p) in orbit.vertices().iter().enumerate() {
        out.push_str(&format!(
            "P{} = ({}, {})\n",
            i + 1,
            fmt_f64(p.x),
            fmt_f64(p.y)
        ));
    }
    let s = orbit.sidelengths();
    out.push_str(&format!(
        "sides = ({}, {}, {})\n",
        fmt_f64(s[0]),
        fmt_f64(s[1]),
        fmt_f64(s[2])
    ));
    out.push_str(&format!("shape = {}\n", shape_label(orbit.shape_class())));

    out.push_str("center,name,x,y\n");
    for entry in catalog_entries() {
        // evaluate through the limit-resolving path so isolated pinch
        // parameters (isosceles orbits) still print their limiting point
        match orbit_center(&b, t, entry.id()) {
            Ok(p) => out.push_str(&format!(
                "{},{},{},{}\n",
                entry.id(),
                entry.name(),
                fmt_f64(p.x),
                fmt_f64(p.y)
            )),
            Err(_) => out.push_str(&format!(
                "{},{},undefined,undefined\n",
                entry.id(),
                entry.name()
            )),
        }
    }
    emit(args.out.as_deref(), &out)
}

fn cmd_invariants(args: &InvariantsArgs, cfg: &ConfigMap) -> Result<(), CliError> {
    let b = args.geometry.billiard(cfg)?;
    let samples = resolve(args.samples, cfg, "samples", 1000)?;
    let report = b.invariant_report(samples)?;
    let mut out = String::from("quantity,value\n");
    for (name, value) in [
        ("perimeter_spread", report.perimeter_spread),
        ("inradius_ratio_spread", report.inradius_ratio_spread),
        ("cosine_sum_spread", report.cosine_sum_spread),
        ("x9_max_distance", report.x9_max_distance),
    ] {
        out.push_str(&format!("{name},{}\n", fmt_f64(value)));
    }
    emit(args.out.as_deref(), &out)
}

fn cmd_locus(args: &LocusArgs, cfg: &ConfigMap) -> Result<(), CliError> {
    let b = args.geometry.billiard(cfg)?;
    let center: String = config::resolve_required(args.center.clone(), cfg, "center")?;
    let id: CenterId = center.parse()?;
    let samples = resolve(args.samples, cfg, "samples", 720)?;
    let format = resolve(args.format.clone(), cfg, "format", "csv".to_string())?;
    let mark = resolve(args.mark_crossings, cfg, "mark-crossings", false)?;

    let locus = sample_locus(&b, id, samples)?;
    let content = match format.as_str() {
        "csv" => locus_to_csv(&locus),
        "svg" => {
            let crossings = if mark {
                Some(self_intersections(&locus)?)
            } else {
                None
            };
            svg::locus_figure(&b, &locus, crossings.as_deref())
        }
        other => {
            return Err(CliError(format!(
                "unknown format `{other}`; expected csv or svg"
            )))
        }
    };
    emit(args.out.as_deref(), &content)
}

fn cmd_thresholds(args: &ThresholdsArgs) -> Result<(), CliError> {
    let mut failures: Vec<String> = Vec::new();
    let specs: Vec<_> = if args.names.is_empty() {
        thresholds().iter().collect()
    } else {
        let mut specs = Vec::new();
        for name in &args.names {
            match threshold(name) {
                Ok(spec) => specs.push(spec),
                Err(e) => failures.push(e.to_string()),
            }
        }
        specs
    };

    let mut out = String::from("name,numeric,closed_form,abs_diff,degree\n");
    for spec in specs {
        let value = spec.value();
        let (closed, diff) = match spec.closed_form() {
            Some(cf) => (fmt_f64(cf), fmt_f64((value - cf).abs())),
            None => ("-".to_string(), "-".to_string()),
        };
        let degree = spec
            .degree()
            .map_or_else(|| "-".to_string(), |d| d.to_string());
        out.push_str(&format!(
            "{},{},{closed},{diff},{degree}\n",
            spec.name(),
            fmt_f64(value)
        ));
    }
    emit(args.out.as_deref(), &out)?;

    if failures.is_empty() {
        Ok(())
    } else {
        for f in &failures {
            eprintln!("{f}");
        }
        Err(CliError(format!(
            "{} of {} requested thresholds failed",
            failures.len(),
            args.names.len()
        )))
    }
}

fn cmd_motion(args: &MotionArgs, cfg: &ConfigMap) -> Result<(), CliError> {
    let b = args.geometry.billiard(cfg)?;
    let centers: String = config::resolve_required(args.centers.clone(), cfg, "centers")?;
    let samples = resolve(args.samples, cfg, "samples", 360)?;
    let out_dir = resolve(args.out_dir.clone(), cfg, "out-dir", PathBuf::from("."))?;
    std::fs::create_dir_all(&out_dir)
        .map_err(|e| CliError(format!("cannot create {}: {e}", out_dir.display())))?;

    let names: Vec<&str> = centers.split(',').map(str::trim).collect();
    let total = names.len();
    let mut failures: Vec<String> = Vec::new();
    for name in names {
        let result = name
            .parse::<CenterId>()
            .map_err(CliError::from)
            .and_then(|id| motion_profile(&b, id, samples).map_err(CliError::from))
            .and_then(|profile| {
                let path = out_dir.join(format!("motion_{name}.csv"));
                emit(Some(&path), &profile_to_csv(&profile))?;
                println!(
                    "wrote {} (winding {}, reversals {})",
                    path.display(),
                    profile.winding(),
                    profile.reversals().len()
                );
                Ok(())
            });
        if let Err(e) = result {
            failures.push(format!("motion {name}: {e}"));
        }
    }

    if failures.is_empty() {
        Ok(())
    } else {
        for f in &failures {
            eprintln!("{f}");
        }
        Err(CliError(format!(
            "{} of {total} requested profiles failed",
            failures.len()
        )))
    }
}

fn cmd_ballet(args: &BalletArgs, cfg: &ConfigMap) -> Result<(), CliError> {
    let b = args.geometry.billiard(cfg)?;
    let samples = resolve(args.samples, cfg, "samples", 720)?;
    let frames = merged(args.frames, cfg, "frames")?;
    let frames_dir = resolve(
        args.frames_dir.clone(),
        cfg,
        "frames-dir",
        PathBuf::from("frames"),
    )?;

    let (id_a, id_b) = (CenterId::X(88), CenterId::X(162));
    let report = ballet(&b, id_a, id_b, samples)?;

    // summary first, as comment lines, so a bare invocation still yields a
    // parseable gap table underneath
    let deepest = report
        .minima()
        .iter()
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .copied();
    if let Some((t, gap)) = deepest {
        println!(
            "# min gap = {:.4}° at t = {:.4}°",
            gap.to_degrees(),
            t.to_degrees()
        );
    } else {
        println!("# min gap = {:.4}°", report.min_gap().to_degrees());
    }
    let list = |extremes: &[(f64, f64)]| -> String {
        extremes
            .iter()
            .map(|&(t, _)| format!("{:.2}", t.to_degrees()))
            .collect::<Vec<_>>()
            .join(", ")
    };
    println!("# minima t_deg = {}", list(report.minima()));
    println!("# maxima t_deg = {}", list(report.maxima()));
    println!("# crossing found = {}", report.crossing_found());

    if let Some(frames) = frames {
        if frames == 0 {
            return Err(CliError("need at least 1 frame".to_string()));
        }
        std::fs::create_dir_all(&frames_dir)
            .map_err(|e| CliError(format!("cannot create {}: {e}", frames_dir.display())))?;
        for k in 0..frames {
            let t = k as f64 * TAU / frames as f64;
            let vertices = b.orbit(t)?.vertices();
            let pa = orbit_center(&b, t, id_a)?;
            let pb = orbit_center(&b, t, id_b)?;
            let frame = svg::ballet_frame(&b, vertices, pa, pb);
            let path = frames_dir.join(format!("ballet_{k:04}.svg"));
            emit(Some(&path), &frame)?;
        }
        println!("# wrote {frames} frames to {}", frames_dir.display());
    }

    emit(args.out.as_deref(), &ballet_to_csv(&report))
}
