//! Deterministic SVG figures: the circle, the pivot line, labeled pivots,
//! the traced chord chain, and a closure verdict.
//!
//! Coordinates are rendered y-up (the y axis points towards the top of the
//! figure) and the viewBox pads the circle by 10% of its radius. Sphere
//! scenes render as two orthographic projections, onto the xy and xz
//! planes. Output is a pure function of the inputs: identical scenes and
//! analyses produce byte-identical SVG.

use std::fmt::Write as _;

use crate::geom::Point2;
use crate::porism::ChordChain;
use crate::scene::{Pivots, Scene};
use crate::sphere::{Point3, SphereChain};

/// Analysis results to overlay on a scene figure.
#[derive(Debug, Clone, Default)]
pub struct Figure {
    /// Traced chain for circle scenes.
    pub chain: Option<ChordChain>,
    /// Traced chain for sphere scenes.
    pub sphere_chain: Option<SphereChain>,
    /// One-line verdict printed in the top-left corner.
    pub verdict: Option<String>,
}

fn fmt(x: f64) -> String {
    // Fixed precision keeps the output stable; -0.0000 would depend on the
    // sign of a zero, so normalize it away.
    let s = format!("{x:.4}");
    if s == "-0.0000" {
        "0.0000".to_string()
    } else {
        s
    }
}

/// xy position in figure space (y flipped for y-up rendering).
fn at(p: Point2) -> (String, String) {
    (fmt(p.x), fmt(-p.y))
}

pub fn render_svg(scene: &Scene, fig: &Figure) -> String {
    match &scene.pivots {
        Pivots::Planar(pts) => render_circle_scene(scene, pts, fig),
        Pivots::Spatial(pts) => render_sphere_scene(pts, fig),
    }
}

fn render_circle_scene(scene: &Scene, pivots: &[Point2], fig: &Figure) -> String {
    let c = scene.circle.center;
    let r = scene.circle.radius;
    let (bx, by) = (c.x - 1.1 * r, -c.y - 1.1 * r);
    let mut s = String::with_capacity(2048);
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\" width=\"480\" height=\"480\">",
        fmt(bx),
        fmt(by),
        fmt(2.2 * r),
        fmt(2.2 * r)
    );
    let stroke = r * 0.008;
    let (ccx, ccy) = at(c);
    let _ = writeln!(
        s,
        "  <circle cx=\"{ccx}\" cy=\"{ccy}\" r=\"{}\" fill=\"none\" stroke=\"#333\" stroke-width=\"{}\"/>",
        fmt(r),
        fmt(stroke)
    );
    if let Some(l) = &scene.line {
        // Segment of the pivot line long enough to cross the padded box.
        let p0 = Point2::new(-l.c * l.a, -l.c * l.b);
        let d = l.direction();
        let len = c.norm() + l.c.abs() + 2.4 * r;
        let (x1, y1) = at(p0 + d * len);
        let (x2, y2) = at(p0 + d * (-len));
        let _ = writeln!(
            s,
            "  <line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"#888\" stroke-width=\"{}\"/>",
            fmt(stroke)
        );
    }
    if let Some(chain) = &fig.chain {
        let mut pts = String::new();
        for (i, v) in chain.vertices.iter().enumerate() {
            if i > 0 {
                pts.push(' ');
            }
            let (x, y) = at(chain.circle.point_at(*v));
            let _ = write!(pts, "{x},{y}");
        }
        let _ = writeln!(
            s,
            "  <polyline points=\"{pts}\" fill=\"none\" stroke=\"#1a6faa\" stroke-width=\"{}\"/>",
            fmt(stroke * 1.5)
        );
        let (sx, sy) = at(chain.circle.point_at(chain.start));
        let _ = writeln!(
            s,
            "  <circle cx=\"{sx}\" cy=\"{sy}\" r=\"{}\" fill=\"#1a6faa\"/>",
            fmt(r * 0.018)
        );
    }
    for (i, p) in pivots.iter().enumerate() {
        let (x, y) = at(*p);
        let _ = writeln!(s, "  <circle cx=\"{x}\" cy=\"{y}\" r=\"{}\" fill=\"#c0392b\"/>", fmt(r * 0.015));
        let (lx, ly) = at(*p + Point2::new(0.025 * r, 0.025 * r));
        let _ = writeln!(
            s,
            "  <text x=\"{lx}\" y=\"{ly}\" font-size=\"{}\" fill=\"#c0392b\">p{}</text>",
            fmt(r * 0.08),
            i + 1
        );
    }
    if let Some(v) = &fig.verdict {
        let _ = writeln!(
            s,
            "  <text x=\"{}\" y=\"{}\" font-size=\"{}\" fill=\"#333\">{}</text>",
            fmt(c.x - 1.05 * r),
            fmt(-c.y - 0.98 * r),
            fmt(r * 0.07),
            xml_escape(v)
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Orthographic projections: xy at the origin, xz shifted right.
const XZ_SHIFT: f64 = 2.4;

fn project(p: Point3, onto_xz: bool) -> Point2 {
    if onto_xz {
        Point2::new(p.x + XZ_SHIFT, p.z)
    } else {
        Point2::new(p.x, p.y)
    }
}

fn render_sphere_scene(pivots: &[Point3], fig: &Figure) -> String {
    let mut s = String::with_capacity(4096);
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.2 -1.45 4.8 2.9\" width=\"800\" height=\"483\">"
    );
    for onto_xz in [false, true] {
        let cx = if onto_xz { XZ_SHIFT } else { 0.0 };
        let _ = writeln!(
            s,
            "  <circle cx=\"{}\" cy=\"0.0000\" r=\"1.0000\" fill=\"none\" stroke=\"#333\" stroke-width=\"0.0080\"/>",
            fmt(cx)
        );
        let _ = writeln!(
            s,
            "  <text x=\"{}\" y=\"1.3000\" font-size=\"0.1000\" fill=\"#333\">{}</text>",
            fmt(cx - 0.08),
            if onto_xz { "xz" } else { "xy" }
        );
        if let Some(chain) = &fig.sphere_chain {
            let mut pts = String::new();
            for (i, v) in chain.vertices.iter().enumerate() {
                if i > 0 {
                    pts.push(' ');
                }
                let (x, y) = at(project(v.point(), onto_xz));
                let _ = write!(pts, "{x},{y}");
            }
            let _ = writeln!(
                s,
                "  <polyline points=\"{pts}\" fill=\"none\" stroke=\"#1a6faa\" stroke-width=\"0.0120\"/>",
            );
        }
        for (i, p) in pivots.iter().enumerate() {
            let (x, y) = at(project(*p, onto_xz));
            let _ = writeln!(s, "  <circle cx=\"{x}\" cy=\"{y}\" r=\"0.0150\" fill=\"#c0392b\"/>");
            let _ = writeln!(
                s,
                "  <text x=\"{x}\" y=\"{y}\" dx=\"0.025\" dy=\"-0.025\" font-size=\"0.0800\" fill=\"#c0392b\">p{}</text>",
                i + 1
            );
        }
    }
    if let Some(v) = &fig.verdict {
        let _ = writeln!(
            s,
            "  <text x=\"-1.1500\" y=\"-1.3200\" font-size=\"0.0900\" fill=\"#333\">{}</text>",
            xml_escape(v)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn xml_escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
