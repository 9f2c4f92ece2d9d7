//! Shared helpers for the integration suites: a conformal-disk distance
//! oracle that never touches the library's cross-ratio code paths, plus
//! seeded random generators for scene material.
//!
//! The oracle maps Klein-chart points to the conformal (Poincare) disk,
//! where distance has a closed form and angles are Euclidean. Distances to
//! lines are found by direct minimization along the chord, so agreement
//! with the library is evidence, not tautology.

#![allow(dead_code)]

use porism_core::geom::{line_circle_meet, polarity, Circle, LineCircleMeet, Point2};
use porism_core::Tol;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const TOL: Tol = Tol { geom: 1e-9, alg: 1e-12 };

pub fn seeded(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Normalizes to the unit disk, then maps the Klein chart to the conformal
/// disk: `u -> u / (1 + sqrt(1 - |u|^2))`.
pub fn to_conformal(c: &Circle, p: Point2) -> Point2 {
    let u = (p - c.center) * (1.0 / c.radius);
    let s = 1.0 + (1.0 - u.dot(u)).max(0.0).sqrt();
    u * (1.0 / s)
}

/// Hyperbolic distance between two conformal-disk points:
/// `cosh d = 1 + 2|u-v|^2 / ((1-|u|^2)(1-|v|^2))`.
pub fn conformal_dist(u: Point2, v: Point2) -> f64 {
    let du = u - v;
    let arg = 1.0 + 2.0 * du.dot(du) / ((1.0 - u.dot(u)) * (1.0 - v.dot(v)));
    arg.acosh()
}

/// Oracle for the distance between two interior points.
pub fn oracle_point_point(c: &Circle, p: Point2, q: Point2) -> f64 {
    conformal_dist(to_conformal(c, p), to_conformal(c, q))
}

/// Endpoints of the chord cut by the polar line of an exterior point.
pub fn polar_chord(c: &Circle, exterior: Point2, tol: &Tol) -> (Point2, Point2) {
    let l = polarity(c, exterior, tol).expect("polar of an off-center point");
    match line_circle_meet(c, &l, tol) {
        LineCircleMeet::Secant { a, b } => (c.point_at(a), c.point_at(b)),
        other => panic!("polar of an exterior point must be secant, got {other:?}"),
    }
}

/// Minimizes a unimodal function on `[lo, hi]` by ternary search.
fn ternary_min(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    for _ in 0..200 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if f(m1) <= f(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    f(0.5 * (lo + hi))
}

/// Oracle for the point-to-line case: minimize the conformal distance from
/// the interior point over the polar chord of the exterior point.
pub fn oracle_point_line(c: &Circle, interior: Point2, exterior: Point2, tol: &Tol) -> f64 {
    let (a, b) = polar_chord(c, exterior, tol);
    ternary_min(1e-9, 1.0 - 1e-9, |t| {
        oracle_point_point(c, interior, a + (b - a) * t)
    })
}

/// Oracle for the distance between two disjoint hyperbolic lines, given as
/// the polars of two exterior points whose join is secant: nested
/// minimization over both chords.
pub fn oracle_lines_distance(c: &Circle, p: Point2, q: Point2, tol: &Tol) -> f64 {
    let (a1, b1) = polar_chord(c, p, tol);
    let (a2, b2) = polar_chord(c, q, tol);
    ternary_min(1e-9, 1.0 - 1e-9, |t| {
        let x = a1 + (b1 - a1) * t;
        ternary_min(1e-9, 1.0 - 1e-9, |u| oracle_point_point(c, x, a2 + (b2 - a2) * u))
    })
}

/// Oracle for the angle between two crossing hyperbolic lines: in the
/// conformal disk angles are Euclidean, so take central-difference tangents
/// of the two mapped chords at their Klein-chart crossing.
pub fn oracle_lines_angle(c: &Circle, p: Point2, q: Point2, tol: &Tol) -> f64 {
    let lp = polarity(c, p, tol).expect("polar");
    let lq = polarity(c, q, tol).expect("polar");
    let w = lp.meet(&lq, tol).expect("polars of a disjoint-join pair cross");
    let h = 1e-5 * c.radius;
    let tangent = |l: &porism_core::Line2| {
        let d = l.direction();
        to_conformal(c, w + d * h) - to_conformal(c, w - d * h)
    };
    let u = tangent(&lp);
    let v = tangent(&lq);
    let raw = u.cross(v).atan2(u.dot(v)).abs();
    let folded = raw.min(std::f64::consts::PI - raw);
    if folded <= 0.0 {
        std::f64::consts::PI / 2.0
    } else {
        folded
    }
}

/// Random point strictly inside the circle, at most `max_frac` of the
/// radius from the center.
pub fn rand_interior<R: Rng + ?Sized>(rng: &mut R, c: &Circle, max_frac: f64) -> Point2 {
    loop {
        let x = rng.random_range(-max_frac..max_frac);
        let y = rng.random_range(-max_frac..max_frac);
        let p = Point2::new(x, y);
        if p.norm() < max_frac {
            return c.center + p * c.radius;
        }
    }
}

/// Random point strictly outside the circle, between `min_frac` and
/// `max_frac` radii from the center.
pub fn rand_exterior<R: Rng + ?Sized>(
    rng: &mut R,
    c: &Circle,
    min_frac: f64,
    max_frac: f64,
) -> Point2 {
    let th = rng.random_range(0.0..std::f64::consts::TAU);
    let r = rng.random_range(min_frac..max_frac);
    c.center + Point2::new(th.cos(), th.sin()) * (r * c.radius)
}

/// Relative closeness with an absolute floor of 1.
pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}
