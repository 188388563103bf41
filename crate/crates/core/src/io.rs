//! Polygon documents: parsing, serialization, validation and SVG output.
//!
//! JSON documents are a top-level array of `[x, y]` number pairs. CSV
//! documents hold one `x,y` pair per line; blank lines and lines starting with
//! `#` are skipped, and surrounding whitespace is ignored. Numbers use a
//! decimal point and may use exponent notation. Non-finite values are
//! rejected in both formats.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{bbox_diagonal, bounding_box, signed_area, Circle, ConvexPolygon, ParamLine, Point2, Triangle, Wedge};
use crate::scalar::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    /// Guesses the format from a file extension; anything but `.csv` is JSON.
    pub fn from_path(path: &std::path::Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("csv") => Format::Csv,
            _ => Format::Json,
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolygonDocument {
    pub vertices: Vec<(f64, f64)>,
    /// Where the vertices came from (a path, a generator seed, ...).
    pub source: String,
    /// Set once the vertices have been through [`validate_normalize`].
    pub normalized: bool,
}

impl PolygonDocument {
    pub fn new(vertices: Vec<(f64, f64)>, source: impl Into<String>) -> Self {
        Self {
            vertices,
            source: source.into(),
            normalized: false,
        }
    }

    pub fn from_polygon(poly: &ConvexPolygon<f64>, source: impl Into<String>) -> Self {
        Self {
            vertices: poly.vertices().iter().map(|p| (p.x, p.y)).collect(),
            source: source.into(),
            normalized: true,
        }
    }

    pub fn points(&self) -> Vec<Point2<f64>> {
        self.vertices.iter().map(|&(x, y)| Point2::new(x, y)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("a polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
}

impl ParseError {
    pub fn code(&self) -> &'static str {
        match self {
            ParseError::Syntax { .. } => "parse_error",
            ParseError::TooFewVertices(_) => "too_few_vertices",
        }
    }
}

pub fn parse_polygon(bytes: &[u8], format: Format, source: &str) -> Result<PolygonDocument, ParseError> {
    let vertices = match format {
        Format::Json => parse_json(bytes)?,
        Format::Csv => parse_csv(bytes)?,
    };
    if vertices.len() < 3 {
        return Err(ParseError::TooFewVertices(vertices.len()));
    }
    Ok(PolygonDocument::new(vertices, source))
}

fn parse_json(bytes: &[u8]) -> Result<Vec<(f64, f64)>, ParseError> {
    let pairs: Vec<[f64; 2]> = serde_json::from_slice(bytes).map_err(|e| ParseError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    pairs
        .into_iter()
        .enumerate()
        .map(|(i, [x, y])| {
            if x.is_finite() && y.is_finite() {
                Ok((x, y))
            } else {
                Err(ParseError::Syntax {
                    line: 1,
                    column: 0,
                    message: format!("vertex {i} is not finite"),
                })
            }
        })
        .collect()
}

fn parse_csv(bytes: &[u8]) -> Result<Vec<(f64, f64)>, ParseError> {
    let text = std::str::from_utf8(bytes).map_err(|e| {
        let before = &bytes[..e.valid_up_to()];
        let line = before.iter().filter(|b| **b == b'\n').count() + 1;
        let column = before.iter().rev().take_while(|b| **b != b'\n').count() + 1;
        ParseError::Syntax {
            line,
            column,
            message: "invalid UTF-8".into(),
        }
    })?;
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = raw.split(',').collect();
        if fields.len() != 2 {
            return Err(ParseError::Syntax {
                line,
                column: 1,
                message: format!("expected 2 comma-separated fields, found {}", fields.len()),
            });
        }
        let mut column = 1;
        let mut xy = [0.0; 2];
        for (slot, field) in xy.iter_mut().zip(&fields) {
            let lead = field.len() - field.trim_start().len();
            let value = field.trim();
            *slot = parse_number(value).ok_or_else(|| ParseError::Syntax {
                line,
                column: column + lead,
                message: format!("not a finite number: {value:?}"),
            })?;
            column += field.len() + 1;
        }
        out.push((xy[0], xy[1]));
    }
    Ok(out)
}

/// Plain decimal with optional sign, fraction and exponent. Rust's float
/// parser also takes `inf`, `nan` and friends, which are refused here.
fn parse_number(s: &str) -> Option<f64> {
    let plain = !s.is_empty()
        && s.bytes()
            .all(|b| b.is_ascii_digit() || matches!(b, b'+' | b'-' | b'.' | b'e' | b'E'));
    let v: f64 = if plain { s.parse().ok()? } else { return None };
    v.is_finite().then_some(v)
}

pub fn serialize_polygon(doc: &PolygonDocument, format: Format) -> String {
    match format {
        Format::Json => {
            let pairs: Vec<[f64; 2]> = doc.vertices.iter().map(|&(x, y)| [x, y]).collect();
            let mut s = serde_json::to_string(&pairs).expect("finite pairs serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::new();
            if !doc.source.is_empty() {
                let _ = writeln!(s, "# {}", doc.source.replace('\n', " "));
            }
            for (x, y) in &doc.vertices {
                // `{:?}` prints the shortest string that parses back exactly.
                let _ = writeln!(s, "{x:?},{y:?}");
            }
            s
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("a polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {0} is not finite")]
    NonFinite(usize),
    #[error("vertex {0} repeats its predecessor")]
    DuplicateVertex(usize),
    #[error("ring is not convex at vertex {0}")]
    NonConvex(usize),
    #[error("fewer than 3 vertices remain after merging colinear neighbours")]
    DegenerateAfterMerge,
}

impl ValidationError {
    /// Stable machine-readable reason.
    pub fn code(&self) -> &'static str {
        match self {
            ValidationError::TooFewVertices(_) => "too_few_vertices",
            ValidationError::NonFinite(_) => "non_finite",
            ValidationError::DuplicateVertex(_) => "duplicate_vertex",
            ValidationError::NonConvex(_) => "non_convex",
            ValidationError::DegenerateAfterMerge => "degenerate_after_merge",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Validated {
    pub polygon: ConvexPolygon<f64>,
    /// Number of vertices dropped because their neighbours were colinear.
    pub merged: usize,
    /// The input ring was clockwise and has been reversed.
    pub reversed: bool,
}

/// Brings a ring into the form the solver expects: counter-clockwise, no
/// repeated or colinear-middle vertices, strictly convex.
pub fn validate_normalize(doc: &PolygonDocument, tol: &Tolerances<f64>) -> Result<Validated, ValidationError> {
    let mut pts = doc.points();
    if pts.len() < 3 {
        return Err(ValidationError::TooFewVertices(pts.len()));
    }
    if let Some(i) = pts.iter().position(|p| !p.is_finite()) {
        return Err(ValidationError::NonFinite(i));
    }
    let diag = bbox_diagonal(&pts);
    let len_tol = tol.len * diag;
    let n = pts.len();
    for i in 0..n {
        if pts[i].distance(pts[(i + n - 1) % n]) <= len_tol {
            return Err(ValidationError::DuplicateVertex(i));
        }
    }
    let area = signed_area(&pts);
    if area.abs() <= len_tol * diag {
        // Zero area: either everything lies on one line, or the ring crosses itself.
        let turning = (0..n).position(|i| {
            let u = pts[i] - pts[(i + n - 1) % n];
            let v = pts[(i + 1) % n] - pts[i];
            u.cross(v).abs() > tol.cross * u.norm() * v.norm()
        });
        return Err(match turning {
            Some(i) => ValidationError::NonConvex(i),
            None => ValidationError::DegenerateAfterMerge,
        });
    }
    let reversed = area < 0.0;
    if reversed {
        pts.reverse();
    }

    // Indices refer to the oriented input, so report positions through `ids`.
    let mut ids: Vec<usize> = (0..pts.len()).collect();
    let mut merged = 0;
    loop {
        let m = pts.len();
        if m < 3 {
            return Err(ValidationError::DegenerateAfterMerge);
        }
        let mut drop = None;
        for i in 0..m {
            let prev = pts[(i + m - 1) % m];
            let next = pts[(i + 1) % m];
            let (Some(u), Some(v)) = ((pts[i] - prev).normalized(0.0), (next - pts[i]).normalized(0.0)) else {
                return Err(ValidationError::DuplicateVertex(ids[i]));
            };
            let sine = u.cross(v);
            if sine.abs() <= tol.cross {
                if u.dot(v) > 0.0 {
                    drop = Some(i);
                    break;
                }
                return Err(ValidationError::NonConvex(ids[i]));
            }
            if sine < 0.0 {
                return Err(ValidationError::NonConvex(ids[i]));
            }
        }
        match drop {
            Some(i) => {
                pts.remove(i);
                ids.remove(i);
                merged += 1;
            }
            None => break,
        }
    }
    let polygon = ConvexPolygon::new(pts, tol).map_err(|e| match e {
        crate::geom::PolygonError::DuplicateVertex(i) => ValidationError::DuplicateVertex(ids[i]),
        crate::geom::PolygonError::NonConvex(i) => ValidationError::NonConvex(ids[i]),
        crate::geom::PolygonError::TooFewVertices(_) | crate::geom::PolygonError::DegenerateAfterMerge => {
            ValidationError::DegenerateAfterMerge
        }
        crate::geom::PolygonError::NonFinite(i) => ValidationError::NonFinite(ids[i]),
        crate::geom::PolygonError::Clockwise => ValidationError::NonConvex(0),
    })?;
    Ok(Validated {
        polygon,
        merged,
        reversed,
    })
}

/// Everything that can be drawn. Only `polygon` is required to be non-empty
/// for a useful picture; the other layers are optional.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Scene {
    pub polygon: Vec<Point2<f64>>,
    pub triangle: Option<Triangle<f64>>,
    pub wedges: Vec<Wedge<f64>>,
    pub circles: Vec<Circle<f64>>,
    /// Infinite lines, clipped to the view.
    pub lines: Vec<ParamLine<f64>>,
}

fn fmt_num(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

/// Part of `origin + t * dir`, `t >= t_min`, inside the box.
fn clip(origin: Point2<f64>, dir: Point2<f64>, t_min: f64, lo: Point2<f64>, hi: Point2<f64>) -> Option<(Point2<f64>, Point2<f64>)> {
    let (mut t0, mut t1) = (t_min, f64::INFINITY);
    for (o, d, l, h) in [(origin.x, dir.x, lo.x, hi.x), (origin.y, dir.y, lo.y, hi.y)] {
        if d == 0.0 {
            if o < l || o > h {
                return None;
            }
            continue;
        }
        let (a, b) = ((l - o) / d, (h - o) / d);
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        t0 = t0.max(a);
        t1 = t1.min(b);
    }
    if t0 > t1 || !t1.is_finite() && t0 == f64::NEG_INFINITY {
        return None;
    }
    let t0 = if t0.is_finite() { t0 } else { t_min };
    Some((origin + dir * t0, origin + dir * t1))
}

/// Deterministic SVG 1.1 picture of a scene, y axis pointing up.
pub fn render_svg(scene: &Scene) -> String {
    let mut pts: Vec<Point2<f64>> = scene.polygon.clone();
    if let Some(t) = &scene.triangle {
        pts.extend(t.vertices());
    }
    for c in &scene.circles {
        pts.push(c.center + Point2::new(c.radius, c.radius));
        pts.push(c.center - Point2::new(c.radius, c.radius));
    }
    for w in &scene.wedges {
        pts.extend([w.arm0.origin(), w.arm0.through(), w.arm1.origin(), w.arm1.through()]);
    }
    for l in &scene.lines {
        pts.extend([l.origin(), l.through()]);
    }
    let (lo, hi) = bounding_box(&pts).unwrap_or((Point2::new(-1.0, -1.0), Point2::new(1.0, 1.0)));
    let span = (hi - lo).norm().max(1e-9);
    let margin = Point2::new((hi.x - lo.x).max(span * 1e-3), (hi.y - lo.y).max(span * 1e-3)) * 0.1;
    let (lo, hi) = (lo - margin, hi + margin);
    let stroke = fmt_num(span * 0.004);
    let xy = |p: Point2<f64>| format!("{} {}", fmt_num(p.x), fmt_num(-p.y));

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
        fmt_num(lo.x),
        fmt_num(-hi.y),
        fmt_num(hi.x - lo.x),
        fmt_num(hi.y - lo.y)
    );
    if !scene.polygon.is_empty() {
        let mut d = String::new();
        for (i, p) in scene.polygon.iter().enumerate() {
            let _ = write!(d, "{}{} ", if i == 0 { "M " } else { "L " }, xy(*p));
        }
        d.push('Z');
        let _ = writeln!(
            s,
            r##"  <path d="{d}" fill="#9ecae1" fill-opacity="0.6" stroke="#08519c" stroke-width="{stroke}"/>"##
        );
    }
    if let Some(t) = &scene.triangle {
        let points: Vec<String> = t.vertices().iter().map(|p| format!("{},{}", fmt_num(p.x), fmt_num(-p.y))).collect();
        let _ = writeln!(
            s,
            r##"  <polygon points="{}" fill="none" stroke="#d62728" stroke-width="{stroke}"/>"##,
            points.join(" ")
        );
    }
    let segment = |s: &mut String, a: Point2<f64>, b: Point2<f64>, color: &str| {
        let _ = writeln!(
            s,
            r#"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}" stroke-width="{stroke}"/>"#,
            fmt_num(a.x),
            fmt_num(-a.y),
            fmt_num(b.x),
            fmt_num(-b.y)
        );
    };
    for w in &scene.wedges {
        // Rays from the apex, or whole lines for a strip.
        let t_min = if w.degenerate { f64::NEG_INFINITY } else { 0.0 };
        for arm in [&w.arm0, &w.arm1] {
            if let Some((a, b)) = clip(arm.origin(), arm.direction(), t_min, lo, hi) {
                segment(&mut s, a, b, "#2ca02c");
            }
        }
    }
    for l in &scene.lines {
        if let Some((a, b)) = clip(l.origin(), l.direction(), f64::NEG_INFINITY, lo, hi) {
            segment(&mut s, a, b, "#7f7f7f");
        }
    }
    for c in &scene.circles {
        let _ = writeln!(
            s,
            r##"  <circle cx="{}" cy="{}" r="{}" fill="none" stroke="#ff7f0e" stroke-width="{stroke}"/>"##,
            fmt_num(c.center.x),
            fmt_num(-c.center.y),
            fmt_num(c.radius)
        );
    }
    s.push_str("</svg>\n");
    s
}
