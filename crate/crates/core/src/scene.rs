//! Scene files: a small JSON schema describing a circle (or the unit
//! sphere), an optional line, the pivot points, and tolerance overrides.
//!
//! Loading is strict (unknown fields are rejected) and split into two error
//! channels: malformed JSON surfaces as [`Error::ParseError`] with line and
//! column, while schema-level violations surface as
//! [`Error::ValidationError`] naming the offending field.
//!
//! Saving always emits the canonical form: fixed key order
//! `mode, circle, line, pivots, start, tol_geom, tol_alg`, absent options
//! written as `null`, defaults filled in, every number rendered with 17
//! significant digits so values round-trip bit-exactly.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::geom::{Circle, CirclePoint, Line2, Point2};
use crate::sphere::{Point3, SpherePoint};
use crate::tol::Tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SceneMode {
    Circle,
    Sphere,
}

impl SceneMode {
    pub fn name(self) -> &'static str {
        match self {
            SceneMode::Circle => "circle",
            SceneMode::Sphere => "sphere",
        }
    }
}

/// Pivot list; dimensionality is tied to the scene mode.
#[derive(Debug, Clone, PartialEq)]
pub enum Pivots {
    Planar(Vec<Point2>),
    Spatial(Vec<Point3>),
}

impl Pivots {
    pub fn len(&self) -> usize {
        match self {
            Pivots::Planar(v) => v.len(),
            Pivots::Spatial(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Optional starting point of a trace: an angle on the circle or a unit
/// vector on the sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Start {
    Angle(CirclePoint),
    Direction(SpherePoint),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    pub mode: SceneMode,
    pub circle: Circle,
    pub line: Option<Line2>,
    pub pivots: Pivots,
    pub start: Option<Start>,
    pub tol: Tol,
}

impl Scene {
    /// Planar pivots, or `UnsupportedMode` for sphere scenes — the guard
    /// used by every circle-only analysis.
    pub fn planar_pivots(&self) -> Result<&[Point2]> {
        match &self.pivots {
            Pivots::Planar(v) => Ok(v),
            Pivots::Spatial(_) => Err(Error::UnsupportedMode {
                mode: self.mode.name().into(),
            }),
        }
    }

    pub fn spatial_pivots(&self) -> Result<&[Point3]> {
        match &self.pivots {
            Pivots::Spatial(v) => Ok(v),
            Pivots::Planar(_) => Err(Error::UnsupportedMode {
                mode: self.mode.name().into(),
            }),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScene {
    mode: String,
    circle: RawCircle,
    #[serde(default)]
    line: Option<RawLine>,
    #[serde(default)]
    pivots: Vec<Vec<f64>>,
    #[serde(default)]
    start: Option<serde_json::Value>,
    #[serde(default)]
    tol_geom: Option<f64>,
    #[serde(default)]
    tol_alg: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCircle {
    center: [f64; 2],
    radius: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLine {
    a: f64,
    b: f64,
    c: f64,
}

fn invalid(field: &str, message: impl Into<String>) -> Error {
    Error::ValidationError {
        field: field.into(),
        message: message.into(),
    }
}

/// Parses and validates a scene file.
pub fn load_scene(text: &str) -> Result<Scene> {
    let raw: RawScene = serde_json::from_str(text).map_err(|e| Error::ParseError {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;

    let mode = match raw.mode.as_str() {
        "circle" => SceneMode::Circle,
        "sphere" => SceneMode::Sphere,
        other => return Err(invalid("mode", format!("unknown mode {other:?}"))),
    };

    let tol_geom = raw.tol_geom.unwrap_or(Tol::default().geom);
    let tol_alg = raw.tol_alg.unwrap_or(Tol::default().alg);
    if tol_geom <= 0.0 || !tol_geom.is_finite() {
        return Err(invalid("tol_geom", "must be positive and finite"));
    }
    if tol_alg <= 0.0 || !tol_alg.is_finite() {
        return Err(invalid("tol_alg", "must be positive and finite"));
    }
    let tol = Tol::new(tol_geom, tol_alg);

    let [cx, cy] = raw.circle.center;
    if !cx.is_finite() || !cy.is_finite() || !raw.circle.radius.is_finite() {
        return Err(invalid("circle", "coordinates must be finite"));
    }
    let circle = Circle::new(Point2::new(cx, cy), raw.circle.radius)
        .map_err(|_| invalid("circle.radius", "must be positive"))?;
    if mode == SceneMode::Sphere
        && (cx != 0.0 || cy != 0.0 || (raw.circle.radius - 1.0).abs() > tol.geom)
    {
        return Err(invalid(
            "circle",
            "sphere scenes are posed on the unit sphere: center [0,0], radius 1",
        ));
    }

    let line = match raw.line {
        None => None,
        Some(rl) => Some(
            Line2::new(rl.a, rl.b, rl.c)
                .map_err(|_| invalid("line", "coefficients a, b must not both vanish"))?,
        ),
    };

    let dim = match mode {
        SceneMode::Circle => 2,
        SceneMode::Sphere => 3,
    };
    for (i, p) in raw.pivots.iter().enumerate() {
        if p.len() != dim {
            return Err(invalid(
                &format!("pivots[{i}]"),
                format!("expected {dim} coordinates in {} mode, got {}", mode.name(), p.len()),
            ));
        }
        if p.iter().any(|x| !x.is_finite()) {
            return Err(invalid(&format!("pivots[{i}]"), "coordinates must be finite"));
        }
    }
    let pivots = match mode {
        SceneMode::Circle => {
            let pts: Vec<Point2> = raw.pivots.iter().map(|p| Point2::new(p[0], p[1])).collect();
            for (i, p) in pts.iter().enumerate() {
                if circle.boundary_dist(*p).abs() <= tol.geom {
                    return Err(invalid(
                        &format!("pivots[{i}]"),
                        "pivot lies on the circle",
                    ));
                }
            }
            Pivots::Planar(pts)
        }
        SceneMode::Sphere => {
            let pts: Vec<Point3> = raw
                .pivots
                .iter()
                .map(|p| Point3::new(p[0], p[1], p[2]))
                .collect();
            for (i, p) in pts.iter().enumerate() {
                if (p.norm() - 1.0).abs() <= tol.geom {
                    return Err(invalid(
                        &format!("pivots[{i}]"),
                        "pivot lies on the sphere",
                    ));
                }
            }
            Pivots::Spatial(pts)
        }
    };

    let start = match raw.start {
        None | Some(serde_json::Value::Null) => None,
        Some(serde_json::Value::Number(n)) => {
            if mode != SceneMode::Circle {
                return Err(invalid("start", "sphere scenes start at a unit vector [x,y,z]"));
            }
            let th = n.as_f64().ok_or_else(|| invalid("start", "not a finite number"))?;
            if !th.is_finite() {
                return Err(invalid("start", "must be finite"));
            }
            Some(Start::Angle(CirclePoint::new(th)))
        }
        Some(serde_json::Value::Array(arr)) => {
            if mode != SceneMode::Sphere {
                return Err(invalid("start", "circle scenes start at an angle (number)"));
            }
            let coords: Option<Vec<f64>> = arr.iter().map(|v| v.as_f64()).collect();
            let coords = coords.ok_or_else(|| invalid("start", "expected three numbers"))?;
            if coords.len() != 3 || coords.iter().any(|x| !x.is_finite()) {
                return Err(invalid("start", "expected three finite numbers"));
            }
            let v = Point3::new(coords[0], coords[1], coords[2]);
            if (v.norm() - 1.0).abs() > 1e-6 {
                return Err(invalid("start", "must be a unit vector"));
            }
            Some(Start::Direction(SpherePoint::new(v)?))
        }
        Some(other) => {
            return Err(invalid(
                "start",
                format!("expected number or [x,y,z], got {other}"),
            ))
        }
    };

    Ok(Scene {
        mode,
        circle,
        line,
        pivots,
        start,
        tol,
    })
}

/// Renders `x` with 17 significant digits, enough for f64 round-trips.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes the canonical form of a scene.
pub fn save_scene(scene: &Scene) -> String {
    let mut s = String::with_capacity(256);
    s.push_str("{\"mode\":\"");
    s.push_str(scene.mode.name());
    s.push_str("\",\"circle\":{\"center\":[");
    s.push_str(&num(scene.circle.center.x));
    s.push(',');
    s.push_str(&num(scene.circle.center.y));
    s.push_str("],\"radius\":");
    s.push_str(&num(scene.circle.radius));
    s.push_str("},\"line\":");
    match &scene.line {
        None => s.push_str("null"),
        Some(l) => {
            s.push_str("{\"a\":");
            s.push_str(&num(l.a));
            s.push_str(",\"b\":");
            s.push_str(&num(l.b));
            s.push_str(",\"c\":");
            s.push_str(&num(l.c));
            s.push('}');
        }
    }
    s.push_str(",\"pivots\":[");
    match &scene.pivots {
        Pivots::Planar(pts) => {
            for (i, p) in pts.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                s.push('[');
                s.push_str(&num(p.x));
                s.push(',');
                s.push_str(&num(p.y));
                s.push(']');
            }
        }
        Pivots::Spatial(pts) => {
            for (i, p) in pts.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                s.push('[');
                s.push_str(&num(p.x));
                s.push(',');
                s.push_str(&num(p.y));
                s.push(',');
                s.push_str(&num(p.z));
                s.push(']');
            }
        }
    }
    s.push_str("],\"start\":");
    match &scene.start {
        None => s.push_str("null"),
        Some(Start::Angle(a)) => s.push_str(&num(a.theta())),
        Some(Start::Direction(d)) => {
            let p = d.point();
            s.push('[');
            s.push_str(&num(p.x));
            s.push(',');
            s.push_str(&num(p.y));
            s.push(',');
            s.push_str(&num(p.z));
            s.push(']');
        }
    }
    s.push_str(",\"tol_geom\":");
    s.push_str(&num(scene.tol.geom));
    s.push_str(",\"tol_alg\":");
    s.push_str(&num(scene.tol.alg));
    s.push_str("}\n");
    s
}

/// Certified pivot cycles on the right-angled dodecahedron, as written by
/// the cycle search: the circumradius, the 20 vertices, and each cycle as
/// vertex indices.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleFixture {
    pub scale: f64,
    pub vertices: Vec<Point3>,
    pub cycles: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCycleFixture {
    scale: f64,
    vertices: Vec<[f64; 3]>,
    cycles: Vec<Vec<usize>>,
}

pub fn load_cycles(text: &str) -> Result<CycleFixture> {
    let raw: RawCycleFixture = serde_json::from_str(text).map_err(|e| Error::ParseError {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if !(raw.scale > 0.0 && raw.scale < 1.0) {
        return Err(invalid("scale", "must lie in (0, 1)"));
    }
    let vertices: Vec<Point3> = raw
        .vertices
        .iter()
        .map(|v| Point3::new(v[0], v[1], v[2]))
        .collect();
    for (i, c) in raw.cycles.iter().enumerate() {
        if c.iter().any(|&k| k >= vertices.len()) {
            return Err(invalid(&format!("cycles[{i}]"), "vertex index out of range"));
        }
    }
    Ok(CycleFixture {
        scale: raw.scale,
        vertices,
        cycles: raw.cycles,
    })
}

pub fn save_cycles(fx: &CycleFixture) -> String {
    let mut s = String::from("{\"scale\":");
    s.push_str(&num(fx.scale));
    s.push_str(",\"vertices\":[");
    for (i, v) in fx.vertices.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push('[');
        s.push_str(&num(v.x));
        s.push(',');
        s.push_str(&num(v.y));
        s.push(',');
        s.push_str(&num(v.z));
        s.push(']');
    }
    s.push_str("],\"cycles\":[");
    for (i, c) in fx.cycles.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push('[');
        for (j, k) in c.iter().enumerate() {
            if j > 0 {
                s.push(',');
            }
            s.push_str(&k.to_string());
        }
        s.push(']');
    }
    s.push_str("]}\n");
    s
}
