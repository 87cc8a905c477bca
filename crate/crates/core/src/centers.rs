//! Trilinear coordinates, the center catalog, derived triangles, and the
//! circumbilliard.
//!
//! A triangle center is a point whose trilinear coordinates are a cyclic,
//! bisymmetric function of the sidelengths `(s1, s2, s3)` (equivalently of
//! the angles). The shipped catalog lives in `catalog.txt` next to this
//! file: each entry is either a trilinear formula (only the first
//! coordinate is stored — the other two follow by cyclic substitution), the
//! reciprocal of another entry (isogonal conjugation), or a named geometric
//! recipe. The trilinears of X11 and X190 are standard entries from
//! Kimberling's Encyclopedia of Triangle Centers; everything else is defined
//! by the formulas and constructions in this module.
//!
//! Indexing follows [`crate::triangle`]: side `i` is opposite vertex `i`,
//! and every derived triangle keeps vertex `i` associated with reference
//! vertex `i` (the altitude foot *from* `P1`, the excenter *opposite* `P1`,
//! the touchpoint on the side opposite `P1`, … are all vertex 1).

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use nalgebra::{Matrix3, Vector3};

use crate::conics::{Conic, Line};
use crate::kinematics::Rail;
use crate::triangle::Triangle;
use crate::{Error, Point, Result};

/// Relative threshold on the trilinear divisor `D = s1 x + s2 y + s3 z`
/// below which the center is reported at infinity.
pub const INFINITY_TOL: f64 = 1e-12;

/// A largest-angle cosine below this magnitude counts as an exact right
/// angle, for which the orthic triangle (and everything built on it)
/// degenerates to a segment.
pub const ORTHIC_RIGHT_TOL: f64 = 1e-14;

// ---------------------------------------------------------------------------
// Trilinears
// ---------------------------------------------------------------------------

/// A projective triple of trilinear coordinates.
///
/// Two triples describe the same point when they differ by a nonzero common
/// factor; [`Trilinears::normalized`] picks the canonical representative
/// (unit norm, first nonzero coordinate positive).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trilinears {
    x: f64,
    y: f64,
    z: f64,
}

impl Trilinears {
    /// Builds a triple; all components must be finite and at least one
    /// nonzero.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(Error::invalid(format!(
                "trilinears must be finite, got {x}:{y}:{z}"
            )));
        }
        if x == 0.0 && y == 0.0 && z == 0.0 {
            return Err(Error::invalid("trilinears 0:0:0 name no point"));
        }
        Ok(Trilinears { x, y, z })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    /// Canonical representative: unit Euclidean norm, first nonzero
    /// coordinate positive.
    pub fn normalized(&self) -> Trilinears {
        let norm = (self.x * self.x + self.y * self.y + self.z * self.z).sqrt();
        let lead = [self.x, self.y, self.z]
            .into_iter()
            .find(|&c| c != 0.0)
            .expect("constructor rejects 0:0:0");
        let scale = lead.signum() / norm;
        Trilinears {
            x: self.x * scale,
            y: self.y * scale,
            z: self.z * scale,
        }
    }

    /// Projective equality: canonical representatives agree within `tol`.
    pub fn projectively_eq(&self, other: &Trilinears, tol: f64) -> bool {
        let (p, q) = (self.normalized(), other.normalized());
        (p.x - q.x).abs() <= tol && (p.y - q.y).abs() <= tol && (p.z - q.z).abs() <= tol
    }

    /// Reciprocal triple `(1/x : 1/y : 1/z)`, cleared of denominators as
    /// `(yz : zx : xy)` so that a single vanishing coordinate maps to the
    /// corresponding vertex instead of blowing up. This is isogonal
    /// conjugation; it is undefined when two or more coordinates vanish.
    pub fn reciprocal(&self) -> Result<Trilinears> {
        Trilinears::new(self.y * self.z, self.z * self.x, self.x * self.y)
    }
}

/// Converts trilinears to the Cartesian point
/// `(s1 x P1 + s2 y P2 + s3 z P3) / D` with `D = s1 x + s2 y + s3 z`.
///
/// The triple is normalized first, so `D` is comparable to the triangle
/// scale; `|D| < INFINITY_TOL * scale` means the point lies on the line at
/// infinity and is reported as such.
pub fn trilinear_to_cartesian(t: &Triangle, tri: &Trilinears) -> Result<Point> {
    let n = tri.normalized();
    let [s1, s2, s3] = t.sidelengths();
    let d = s1 * n.x + s2 * n.y + s3 * n.z;
    let threshold = INFINITY_TOL * t.scale();
    if d.abs() < threshold {
        return Err(Error::PointAtInfinity {
            divisor: d,
            threshold,
        });
    }
    let [p1, p2, p3] = t.vertices();
    Ok(Point::from(
        (s1 * n.x * p1.coords + s2 * n.y * p2.coords + s3 * n.z * p3.coords) / d,
    ))
}

// ---------------------------------------------------------------------------
// Center identifiers and the catalog
// ---------------------------------------------------------------------------

/// Identifier of a catalog entry.
///
/// Numbered variants are the classical `X_n`; the rest are the constructive
/// families this crate tracks alongside them. Indexed variants use 1-based
/// indices matching the vertex/side convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CenterId {
    /// Numbered center `X_n`.
    X(u16),
    /// Incenter of the orthic triangle, with the obtuse pinning rule.
    OrthicIncenter,
    /// Intouchpoint `i` of the anticomplementary triangle.
    ActIntouch(u8),
    /// Extouchpoint `i` (touchpoint of excircle `i` with side `i`).
    Extouch(u8),
}

impl CenterId {
    /// Display name from the catalog.
    pub fn name(&self) -> &'static str {
        catalog().get(*self).map(|e| e.name.as_str()).unwrap_or("?")
    }

    /// The curve this center rides over the orbit family, if any.
    pub fn rail(&self) -> Option<Rail> {
        catalog().get(*self).and_then(|e| e.rail)
    }

    /// Purely syntactic parse (no catalog membership check).
    fn parse_slug(s: &str) -> Option<CenterId> {
        let s = s.trim().to_ascii_lowercase();
        if let Some(rest) = s.strip_prefix('x') {
            return rest.parse::<u16>().ok().map(CenterId::X);
        }
        if s == "orthic-incenter" {
            return Some(CenterId::OrthicIncenter);
        }
        for (prefix, make) in [
            ("act-intouchpoint-", CenterId::ActIntouch as fn(u8) -> CenterId),
            ("extouchpoint-", CenterId::Extouch as fn(u8) -> CenterId),
        ] {
            if let Some(rest) = s.strip_prefix(prefix) {
                return match rest.parse::<u8>() {
                    Ok(i @ 1..=3) => Some(make(i)),
                    _ => None,
                };
            }
        }
        None
    }
}

impl fmt::Display for CenterId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CenterId::X(n) => write!(f, "X{n}"),
            CenterId::OrthicIncenter => write!(f, "orthic-incenter"),
            CenterId::ActIntouch(i) => write!(f, "act-intouchpoint-{i}"),
            CenterId::Extouch(i) => write!(f, "extouchpoint-{i}"),
        }
    }
}

impl FromStr for CenterId {
    type Err = Error;

    /// Parses `"X88"`/`"x88"` and the named slugs, accepting only catalog
    /// members.
    fn from_str(s: &str) -> Result<Self> {
        CenterId::parse_slug(s)
            .filter(|id| catalog().get(*id).is_some())
            .ok_or_else(|| Error::UnknownCenter {
                name: s.to_string(),
            })
    }
}

/// One catalog row.
#[derive(Debug)]
pub struct CatalogEntry {
    id: CenterId,
    name: String,
    rail: Option<Rail>,
    kind: EntryKind,
}

impl CatalogEntry {
    pub fn id(&self) -> CenterId {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rail(&self) -> Option<Rail> {
        self.rail
    }

    /// `"trilinear"`, `"reciprocal"`, or `"recipe"` — how the entry is
    /// defined.
    pub fn kind_label(&self) -> &'static str {
        match self.kind {
            EntryKind::Trilinear(_) => "trilinear",
            EntryKind::Reciprocal(_) => "reciprocal",
            EntryKind::Recipe(_) => "recipe",
        }
    }
}

#[derive(Debug)]
enum EntryKind {
    /// First trilinear coordinate; the rest by cyclic substitution.
    Trilinear(Expr),
    /// Reciprocal trilinears of the referenced entry.
    Reciprocal(CenterId),
    Recipe(Recipe),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Recipe {
    Circumcenter,
    Orthocenter,
    CircumcenterOfTangential,
    CircumcenterOfExcentral,
    OrthicIncenter,
    ActIntouch(u8),
    Extouch(u8),
}

struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    fn get(&self, id: CenterId) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.id == id)
    }
}

/// All catalog entries, in catalog (display) order: numbered centers
/// ascending, then the constructive families.
pub fn catalog_entries() -> &'static [CatalogEntry] {
    &catalog().entries
}

fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| {
        parse_catalog(include_str!("catalog.txt")).expect("embedded catalog is well-formed")
    })
}

fn parse_catalog(src: &str) -> Result<Catalog> {
    let bad = |line: usize, reason: String| Error::Parse { line, reason };
    let mut entries: Vec<CatalogEntry> = Vec::new();
    let mut saw_version = false;
    for (idx, raw) in src.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !saw_version {
            if line != "version 1" {
                return Err(bad(line_no, format!("expected \"version 1\", got {line:?}")));
            }
            saw_version = true;
            continue;
        }
        let fields: Vec<&str> = line.split('|').map(str::trim).collect();
        let [id, name, rail, kind, definition] = fields[..] else {
            return Err(bad(line_no, format!("expected 5 |-separated fields, got {}", fields.len())));
        };
        let id = CenterId::parse_slug(id)
            .ok_or_else(|| bad(line_no, format!("bad center id {id:?}")))?;
        if entries.iter().any(|e| e.id == id) {
            return Err(bad(line_no, format!("duplicate entry for {id}")));
        }
        let rail = match rail {
            "-" => None,
            "billiard" => Some(Rail::Billiard),
            "caustic" => Some(Rail::Caustic),
            other => return Err(bad(line_no, format!("bad rail {other:?}"))),
        };
        let kind = match kind {
            "trilinear" => EntryKind::Trilinear(
                parse_formula(definition).map_err(|reason| bad(line_no, reason))?,
            ),
            "reciprocal" => EntryKind::Reciprocal(
                CenterId::parse_slug(definition)
                    .ok_or_else(|| bad(line_no, format!("bad reciprocal target {definition:?}")))?,
            ),
            "recipe" => EntryKind::Recipe(match definition {
                "circumcenter" => Recipe::Circumcenter,
                "orthocenter" => Recipe::Orthocenter,
                "circumcenter-of-tangential" => Recipe::CircumcenterOfTangential,
                "circumcenter-of-excentral" => Recipe::CircumcenterOfExcentral,
                "orthic-incenter" => Recipe::OrthicIncenter,
                "act-intouchpoint-1" => Recipe::ActIntouch(1),
                "act-intouchpoint-2" => Recipe::ActIntouch(2),
                "act-intouchpoint-3" => Recipe::ActIntouch(3),
                "extouchpoint-1" => Recipe::Extouch(1),
                "extouchpoint-2" => Recipe::Extouch(2),
                "extouchpoint-3" => Recipe::Extouch(3),
                other => return Err(bad(line_no, format!("unknown recipe {other:?}"))),
            }),
            other => return Err(bad(line_no, format!("bad entry kind {other:?}"))),
        };
        entries.push(CatalogEntry {
            id,
            name: name.to_string(),
            rail,
            kind,
        });
    }
    // reciprocal targets must exist and be plain trilinear entries
    for entry in &entries {
        if let EntryKind::Reciprocal(target) = entry.kind {
            match entries.iter().find(|e| e.id == target).map(|e| &e.kind) {
                Some(EntryKind::Trilinear(_)) => {}
                _ => {
                    return Err(Error::Parse {
                        line: 0,
                        reason: format!("{} refers to {target}, which is not a trilinear entry", entry.id),
                    })
                }
            }
        }
    }
    Ok(Catalog { entries })
}

// ---------------------------------------------------------------------------
// Formula expressions
// ---------------------------------------------------------------------------

/// Parsed formula over sidelengths and angles.
#[derive(Debug)]
enum Expr {
    Num(f64),
    /// 0, 1, 2 = s1, s2, s3; shifted by the cyclic rotation at evaluation.
    Side(usize),
    /// 0, 1, 2 = A, B, C.
    Angle(usize),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Fun(Fun, Box<Expr>),
}

#[derive(Debug, Clone, Copy)]
enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, Copy)]
enum Fun {
    Cos,
    Sin,
    Sec,
}

impl Expr {
    /// Evaluates with variables rotated by `rot` (0, 1, 2 for the three
    /// trilinear coordinates).
    fn eval(&self, rot: usize, s: &[f64; 3], ang: &[f64; 3]) -> f64 {
        match self {
            Expr::Num(v) => *v,
            Expr::Side(i) => s[(i + rot) % 3],
            Expr::Angle(i) => ang[(i + rot) % 3],
            Expr::Neg(e) => -e.eval(rot, s, ang),
            Expr::Bin(op, l, r) => {
                let (a, b) = (l.eval(rot, s, ang), r.eval(rot, s, ang));
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => a / b,
                    BinOp::Pow => a.powf(b),
                }
            }
            Expr::Fun(f, e) => {
                let v = e.eval(rot, s, ang);
                match f {
                    Fun::Cos => v.cos(),
                    Fun::Sin => v.sin(),
                    Fun::Sec => 1.0 / v.cos(),
                }
            }
        }
    }
}

/// Recursive-descent parser for the catalog formula grammar:
/// `+ - * / ^` (with `^` binding tightest and right-associative),
/// parentheses, decimal numbers, the variables `s1 s2 s3 A B C`, and the
/// functions `cos sin sec`.
fn parse_formula(src: &str) -> std::result::Result<Expr, String> {
    let tokens = tokenize(src)?;
    let mut pos = 0;
    let expr = parse_sum(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(format!("trailing input after position {pos}"));
    }
    Ok(expr)
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

fn tokenize(src: &str) -> std::result::Result<Vec<Token>, String> {
    let mut tokens = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' => i += 1,
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                tokens.push(match c {
                    '+' => Token::Plus,
                    '-' => Token::Minus,
                    '*' => Token::Star,
                    '/' => Token::Slash,
                    '^' => Token::Caret,
                    '(' => Token::Open,
                    _ => Token::Close,
                });
                i += 1;
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < bytes.len() && matches!(bytes[i] as char, '0'..='9' | '.') {
                    i += 1;
                }
                let text = &src[start..i];
                tokens.push(Token::Num(
                    text.parse().map_err(|_| format!("bad number {text:?}"))?,
                ));
            }
            _ if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_alphanumeric() {
                    i += 1;
                }
                tokens.push(Token::Ident(src[start..i].to_string()));
            }
            _ => return Err(format!("unexpected character {c:?}")),
        }
    }
    Ok(tokens)
}

fn parse_sum(tokens: &[Token], pos: &mut usize) -> std::result::Result<Expr, String> {
    let mut lhs = parse_product(tokens, pos)?;
    while let Some(op) = match tokens.get(*pos) {
        Some(Token::Plus) => Some(BinOp::Add),
        Some(Token::Minus) => Some(BinOp::Sub),
        _ => None,
    } {
        *pos += 1;
        let rhs = parse_product(tokens, pos)?;
        lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
    }
    Ok(lhs)
}

fn parse_product(tokens: &[Token], pos: &mut usize) -> std::result::Result<Expr, String> {
    let mut lhs = parse_factor(tokens, pos)?;
    while let Some(op) = match tokens.get(*pos) {
        Some(Token::Star) => Some(BinOp::Mul),
        Some(Token::Slash) => Some(BinOp::Div),
        _ => None,
    } {
        *pos += 1;
        let rhs = parse_factor(tokens, pos)?;
        lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
    }
    Ok(lhs)
}

fn parse_factor(tokens: &[Token], pos: &mut usize) -> std::result::Result<Expr, String> {
    if let Some(Token::Minus) = tokens.get(*pos) {
        *pos += 1;
        return Ok(Expr::Neg(Box::new(parse_factor(tokens, pos)?)));
    }
    let base = parse_atom(tokens, pos)?;
    if let Some(Token::Caret) = tokens.get(*pos) {
        *pos += 1;
        let exponent = parse_factor(tokens, pos)?;
        return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exponent)));
    }
    Ok(base)
}

fn parse_atom(tokens: &[Token], pos: &mut usize) -> std::result::Result<Expr, String> {
    match tokens.get(*pos) {
        Some(Token::Num(v)) => {
            *pos += 1;
            Ok(Expr::Num(*v))
        }
        Some(Token::Open) => {
            *pos += 1;
            let inner = parse_sum(tokens, pos)?;
            match tokens.get(*pos) {
                Some(Token::Close) => {
                    *pos += 1;
                    Ok(inner)
                }
                _ => Err("missing closing parenthesis".to_string()),
            }
        }
        Some(Token::Ident(name)) => {
            *pos += 1;
            match name.as_str() {
                "s1" => Ok(Expr::Side(0)),
                "s2" => Ok(Expr::Side(1)),
                "s3" => Ok(Expr::Side(2)),
                "A" => Ok(Expr::Angle(0)),
                "B" => Ok(Expr::Angle(1)),
                "C" => Ok(Expr::Angle(2)),
                "cos" | "sin" | "sec" => {
                    let fun = match name.as_str() {
                        "cos" => Fun::Cos,
                        "sin" => Fun::Sin,
                        _ => Fun::Sec,
                    };
                    match tokens.get(*pos) {
                        Some(Token::Open) => {
                            *pos += 1;
                            let arg = parse_sum(tokens, pos)?;
                            match tokens.get(*pos) {
                                Some(Token::Close) => {
                                    *pos += 1;
                                    Ok(Expr::Fun(fun, Box::new(arg)))
                                }
                                _ => Err(format!("missing closing parenthesis after {name}")),
                            }
                        }
                        _ => Err(format!("{name} needs a parenthesized argument")),
                    }
                }
                other => Err(format!("unknown identifier {other:?}")),
            }
        }
        Some(tok) => Err(format!("unexpected token {tok:?}")),
        None => Err("unexpected end of formula".to_string()),
    }
}

// ---------------------------------------------------------------------------
// Center evaluation
// ---------------------------------------------------------------------------

/// Evaluates catalog center `id` for triangle `t`.
///
/// Trilinear entries evaluate their formula cyclically and convert through
/// [`trilinear_to_cartesian`]; a diverging coordinate (vanishing denominator,
/// e.g. X100 on an isosceles triangle) is an [`Error::UndefinedCenter`],
/// never a silent wrong value. Constructive entries run their geometric
/// recipe and report degeneracies the same way.
pub fn center(t: &Triangle, id: CenterId) -> Result<Point> {
    let entry = catalog().get(id).ok_or_else(|| Error::UnknownCenter {
        name: id.to_string(),
    })?;
    match &entry.kind {
        EntryKind::Trilinear(expr) => trilinear_to_cartesian(t, &eval_trilinears(t, id, expr)?),
        EntryKind::Reciprocal(target) => {
            let base = match catalog().get(*target).map(|e| &e.kind) {
                Some(EntryKind::Trilinear(expr)) => eval_trilinears(t, *target, expr)?,
                _ => unreachable!("catalog load validates reciprocal targets"),
            };
            let conjugate = base.reciprocal().map_err(|_| Error::UndefinedCenter {
                id,
                reason: format!("reciprocal of {target} is degenerate here"),
            })?;
            trilinear_to_cartesian(t, &conjugate)
        }
        EntryKind::Recipe(recipe) => match recipe {
            Recipe::Circumcenter => t.circumcenter().ok_or_else(|| collinear(id)),
            Recipe::Orthocenter => t.orthocenter().ok_or_else(|| collinear(id)),
            Recipe::CircumcenterOfTangential => {
                let tangential =
                    derived_triangle(t, DerivedKind::Tangential).map_err(|e| {
                        Error::UndefinedCenter {
                            id,
                            reason: e.to_string(),
                        }
                    })?;
                tangential.triangle().circumcenter().ok_or_else(|| collinear(id))
            }
            Recipe::CircumcenterOfExcentral => {
                let excentral = derived_triangle(t, DerivedKind::Excentral)?;
                excentral.triangle().circumcenter().ok_or_else(|| collinear(id))
            }
            Recipe::OrthicIncenter => orthic_incenter(t),
            Recipe::ActIntouch(i) => Ok(act_intouchpoints(t)[usize::from(*i) - 1]),
            Recipe::Extouch(i) => {
                Ok(derived_triangle(t, DerivedKind::Extouch)?.triangle().vertex(usize::from(*i) - 1))
            }
        },
    }
}

fn collinear(id: CenterId) -> Error {
    Error::UndefinedCenter {
        id,
        reason: "vertices are collinear".to_string(),
    }
}

fn eval_trilinears(t: &Triangle, id: CenterId, expr: &Expr) -> Result<Trilinears> {
    let s = t.sidelengths();
    let ang = t.angles();
    let coords = [0, 1, 2].map(|rot| expr.eval(rot, &s, &ang));
    if coords.iter().any(|c| !c.is_finite()) {
        return Err(Error::UndefinedCenter {
            id,
            reason: format!(
                "trilinear coordinate diverges (vanishing denominator) at sides \
                 {:.6}:{:.6}:{:.6}",
                s[0], s[1], s[2]
            ),
        });
    }
    Trilinears::new(coords[0], coords[1], coords[2]).map_err(|_| Error::UndefinedCenter {
        id,
        reason: "all trilinear coordinates vanish".to_string(),
    })
}

// ---------------------------------------------------------------------------
// Derived triangles
// ---------------------------------------------------------------------------

/// The derived-triangle constructions this crate ships.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DerivedKind {
    /// Vertex `i` = midpoint of side `i`.
    Medial,
    /// Vertex `i` = foot of the altitude from `P_i`.
    Orthic,
    /// Vertex `i` = excenter opposite `P_i` (trilinears `−1:1:1` cyclic).
    Excentral,
    /// Vertex `i` = reflection-double of `P_i` about the centroid,
    /// `P_j + P_k − P_i`.
    Anticomplementary,
    /// Vertex `i` = intersection of the circumcircle tangents at `P_j` and
    /// `P_k`, so side `i` touches the circumcircle at `P_i`.
    Tangential,
    /// Vertex `i` = touchpoint of the incircle with side `i`.
    Intouch,
    /// Vertex `i` = touchpoint of excircle `i` with side `i`.
    Extouch,
    /// Vertex `i` = touchpoint of the nine-point circle with excircle `i`.
    Feuerbach,
}

impl fmt::Display for DerivedKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match self {
            DerivedKind::Medial => "medial",
            DerivedKind::Orthic => "orthic",
            DerivedKind::Excentral => "excentral",
            DerivedKind::Anticomplementary => "anticomplementary",
            DerivedKind::Tangential => "tangential",
            DerivedKind::Intouch => "intouch",
            DerivedKind::Extouch => "extouch",
            DerivedKind::Feuerbach => "feuerbach",
        };
        f.write_str(label)
    }
}

/// A derived triangle together with the construction that produced it.
///
/// Vertex `i` always corresponds to reference vertex `i` as documented on
/// [`DerivedKind`].
#[derive(Debug, Clone, Copy)]
pub struct DerivedTriangle {
    kind: DerivedKind,
    triangle: Triangle,
}

impl DerivedTriangle {
    pub fn kind(&self) -> DerivedKind {
        self.kind
    }

    pub fn triangle(&self) -> Triangle {
        self.triangle
    }

    pub fn vertices(&self) -> [Point; 3] {
        self.triangle.vertices()
    }
}

/// Builds the derived triangle of the given kind.
///
/// Degenerate constructions (the orthic or tangential triangle of a right
/// triangle) are reported as [`Error::DegenerateTriangle`] rather than
/// returning a collapsed or unbounded result.
pub fn derived_triangle(t: &Triangle, kind: DerivedKind) -> Result<DerivedTriangle> {
    let [p1, p2, p3] = t.vertices();
    let mid = |u: Point, v: Point| Point::from((u.coords + v.coords) / 2.0);
    let vertices: [Point; 3] = match kind {
        DerivedKind::Medial => [mid(p2, p3), mid(p3, p1), mid(p1, p2)],
        DerivedKind::Orthic => {
            let angles = t.angles();
            if let Some(i) = (0..3).find(|&i| angles[i].cos().abs() < ORTHIC_RIGHT_TOL) {
                return Err(Error::DegenerateTriangle {
                    kind: "orthic",
                    reason: format!(
                        "right angle at P{}: the altitude feet are collinear",
                        i + 1
                    ),
                });
            }
            [
                altitude_foot(p1, p2, p3),
                altitude_foot(p2, p3, p1),
                altitude_foot(p3, p1, p2),
            ]
        }
        DerivedKind::Excentral => {
            let j = |x: f64, y: f64, z: f64| {
                trilinear_to_cartesian(t, &Trilinears::new(x, y, z)?)
            };
            [
                j(-1.0, 1.0, 1.0)?,
                j(1.0, -1.0, 1.0)?,
                j(1.0, 1.0, -1.0)?,
            ]
        }
        DerivedKind::Anticomplementary => [
            Point::from(p2.coords + p3.coords - p1.coords),
            Point::from(p3.coords + p1.coords - p2.coords),
            Point::from(p1.coords + p2.coords - p3.coords),
        ],
        DerivedKind::Tangential => {
            let o = t.circumcenter().ok_or(Error::DegenerateTriangle {
                kind: "tangential",
                reason: "collinear vertices have no circumcircle".to_string(),
            })?;
            let tangent_at = |v: Point| -> Result<Line> {
                let n = v - o;
                Line::new(n.x, n.y, -(n.x * v.x + n.y * v.y))
            };
            let (l1, l2, l3) = (tangent_at(p1)?, tangent_at(p2)?, tangent_at(p3)?);
            let corner = |la: &Line, lb: &Line, opposite: usize| {
                la.intersect(lb).ok_or_else(|| Error::DegenerateTriangle {
                    kind: "tangential",
                    reason: format!(
                        "circumcircle tangents flanking P{opposite} are parallel \
                         (right angle at P{opposite})"
                    ),
                })
            };
            [corner(&l2, &l3, 1)?, corner(&l3, &l1, 2)?, corner(&l1, &l2, 3)?]
        }
        DerivedKind::Intouch => {
            let [s1, s2, s3] = t.sidelengths();
            let sp = (s1 + s2 + s3) / 2.0;
            [
                p2 + ((sp - s2) / s1) * (p3 - p2),
                p3 + ((sp - s3) / s2) * (p1 - p3),
                p1 + ((sp - s1) / s3) * (p2 - p1),
            ]
        }
        DerivedKind::Extouch => {
            let [s1, s2, s3] = t.sidelengths();
            let sp = (s1 + s2 + s3) / 2.0;
            [
                p2 + ((sp - s3) / s1) * (p3 - p2),
                p3 + ((sp - s1) / s2) * (p1 - p3),
                p1 + ((sp - s2) / s3) * (p2 - p1),
            ]
        }
        DerivedKind::Feuerbach => {
            let x5 = center(t, CenterId::X(5))?;
            let radius = t.circumradius() / 2.0;
            let excentral = derived_triangle(t, DerivedKind::Excentral)?;
            excentral.vertices().map(|j| {
                let dir = (j - x5).normalize();
                x5 + radius * dir
            })
        }
    };
    Ok(DerivedTriangle {
        kind,
        triangle: Triangle::new(vertices[0], vertices[1], vertices[2]),
    })
}

/// Foot of the perpendicular from `p` onto line `ab`.
fn altitude_foot(p: Point, a: Point, b: Point) -> Point {
    let d = b - a;
    let lambda = (p - a).dot(&d) / d.norm_squared();
    a + lambda * d
}

/// Incenter of the orthic triangle, by the pinning rule: `X4` for an acute
/// reference, the obtuse vertex for an obtuse one.
///
/// The rule is what the naive incenter-of-orthic converges to on either side
/// of a right configuration (where the orthic itself degenerates and this
/// function errors); evaluating it directly keeps the locus exact through
/// the transition.
pub fn orthic_incenter(t: &Triangle) -> Result<Point> {
    let vertex = t.largest_angle_vertex();
    let cos_largest = t.angles()[vertex].cos();
    if cos_largest.abs() < ORTHIC_RIGHT_TOL {
        return Err(Error::DegenerateTriangle {
            kind: "orthic",
            reason: format!(
                "right angle at P{}: the altitude feet are collinear",
                vertex + 1
            ),
        });
    }
    if cos_largest > 0.0 {
        t.orthocenter().ok_or(Error::DegenerateTriangle {
            kind: "orthic",
            reason: "collinear reference vertices".to_string(),
        })
    } else {
        Ok(t.vertex(vertex))
    }
}

/// The three intouchpoints of the anticomplementary triangle (incircle
/// touchpoints of the double-size reflection of `t` about its centroid),
/// indexed like vertices: point `i` lies on the ACT side containing `P_i`.
///
/// For billiard orbits these ride the billiard boundary itself.
pub fn act_intouchpoints(t: &Triangle) -> [Point; 3] {
    let act = derived_triangle(t, DerivedKind::Anticomplementary)
        .expect("anticomplementary construction cannot fail");
    let intouch = derived_triangle(&act.triangle(), DerivedKind::Intouch)
        .expect("intouch construction cannot fail");
    intouch.vertices()
}

// ---------------------------------------------------------------------------
// Circumbilliard
// ---------------------------------------------------------------------------

/// The circumellipse of a triangle centered on its mittenpunkt X9 — the
/// unique elliptic billiard admitting that triangle as a 3-periodic orbit.
#[derive(Debug, Clone)]
pub struct Circumbilliard {
    /// The circumellipse, in the coordinates of the input triangle.
    pub conic: Conic,
    /// Semi-axis ratio `a/b ≥ 1` of that ellipse.
    pub aspect: f64,
}

/// Computes the [`Circumbilliard`] of `t`.
///
/// Worked in the frame centered on X9, where the ellipse is
/// `A x² + B xy + C y² = 1` and the three vertices give a linear system for
/// `(A, B, C)`; the aspect ratio is the square-rooted eigenvalue ratio of
/// the quadratic-form matrix, and the conic is then translated back to the
/// original frame.
pub fn circumbilliard(t: &Triangle) -> Result<Circumbilliard> {
    let x9 = center(t, CenterId::X(9))?;
    let rows = t.vertices().map(|p| p - x9);
    let m = Matrix3::new(
        rows[0].x * rows[0].x, rows[0].x * rows[0].y, rows[0].y * rows[0].y,
        rows[1].x * rows[1].x, rows[1].x * rows[1].y, rows[1].y * rows[1].y,
        rows[2].x * rows[2].x, rows[2].x * rows[2].y, rows[2].y * rows[2].y,
    );
    let solution = m.lu().solve(&Vector3::new(1.0, 1.0, 1.0)).ok_or_else(|| {
        Error::DegenerateFit {
            reason: "vertices do not determine a centered circumconic".to_string(),
        }
    })?;
    let (qa, qb, qc) = (solution[0], solution[1], solution[2]);
    // eigenvalues of [[A, B/2], [B/2, C]]; both positive iff an ellipse
    let trace = qa + qc;
    let det = qa * qc - qb * qb / 4.0;
    if !(det > 0.0 && trace > 0.0) {
        return Err(Error::DegenerateFit {
            reason: format!(
                "centered circumconic is not an ellipse (trace {trace:.3e}, det {det:.3e})"
            ),
        });
    }
    let gap = (trace * trace - 4.0 * det).max(0.0).sqrt();
    let (hi, lo) = ((trace + gap) / 2.0, (trace - gap) / 2.0);
    // semi-axis ~ 1/sqrt(eigenvalue), so the larger eigenvalue is the minor axis
    let aspect = (hi / lo).sqrt();
    let (cx, cy) = (x9.x, x9.y);
    let conic = Conic::new([
        qa,
        qb,
        qc,
        -2.0 * qa * cx - qb * cy,
        -qb * cx - 2.0 * qc * cy,
        qa * cx * cx + qb * cx * cy + qc * cy * cy - 1.0,
    ])?;
    Ok(Circumbilliard { conic, aspect })
}

/// Aspect ratio of the billiard admitting a right 3-periodic orbit with
/// legs `s1, s2` and hypotenuse `s3`:
/// `(s1 + s2 + √(s3(3s3 − 2s1 − 2s2))) / √((s1 + s2 + 3s3)(s1 + s2 − s3))`.
///
/// The triple must be a genuine right triangle with the hypotenuse last
/// (relative residual of `s1² + s2² − s3²` at most 1e−9).
pub fn pythagorean_aspect(s1: f64, s2: f64, s3: f64) -> Result<f64> {
    if !(s1 > 0.0 && s2 > 0.0 && s3 > 0.0)
        || !(s1.is_finite() && s2.is_finite() && s3.is_finite())
    {
        return Err(Error::Domain {
            what: format!("sidelengths must be positive and finite, got ({s1}, {s2}, {s3})"),
        });
    }
    let residual = (s1 * s1 + s2 * s2 - s3 * s3).abs();
    if residual > 1e-9 * s3 * s3 {
        return Err(Error::Domain {
            what: format!(
                "({s1}, {s2}, {s3}) is not a right triple with the hypotenuse last \
                 (s1²+s2²−s3² = {:.3e})",
                s1 * s1 + s2 * s2 - s3 * s3
            ),
        });
    }
    let legs = s1 + s2;
    Ok((legs + (s3 * (3.0 * s3 - 2.0 * legs)).sqrt())
        / ((legs + 3.0 * s3) * (legs - s3)).sqrt())
}

/// The ratio `ρ = |X1 − X100| / |X1 − X88|`; it equals 1 exactly when X88
/// sits on a vertex, i.e. when `s2 = (s1 + s3)/2` for some labeling.
pub fn rho(t: &Triangle) -> Result<f64> {
    let x1 = center(t, CenterId::X(1))?;
    let x100 = center(t, CenterId::X(100))?;
    let x88 = center(t, CenterId::X(88))?;
    Ok((x1 - x100).norm() / (x1 - x88).norm())
}
