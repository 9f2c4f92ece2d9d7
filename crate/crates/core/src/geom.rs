//! Planar primitives: points, normalized lines, circles, and the three-way
//! relation between a line and a circle.
//!
//! Lines are stored as `a*x + b*y + c = 0` with `a^2 + b^2 = 1` and the first
//! nonzero of `(a, b)` positive, so equal lines have equal coefficients and
//! `a*x + b*y + c` is a signed distance. Points on a circle are kept as
//! angles, which survive long chord chains much better than raw coordinates.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::tol::Tol;

pub const TAU: f64 = std::f64::consts::TAU;

/// Point of the Euclidean plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    #[inline]
    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the cross product, i.e. the signed parallelogram area.
    #[inline]
    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn dist(self, o: Point2) -> f64 {
        (self - o).norm()
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

/// Line `a*x + b*y + c = 0`, normalized so `a^2 + b^2 = 1` and the first
/// nonzero of `(a, b)` is positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Line2 {
    /// Builds and normalizes a line from raw coefficients.
    pub fn new(a: f64, b: f64, c: f64) -> Result<Line2> {
        let n = a.hypot(b);
        if n < 1e-300 {
            return Err(Error::DegenerateLine);
        }
        let (mut a, mut b, mut c) = (a / n, b / n, c / n);
        // Sign canonicalization: first nonzero of (a, b) positive.
        let flip = if a.abs() > 1e-12 { a < 0.0 } else { b < 0.0 };
        if flip {
            a = -a;
            b = -b;
            c = -c;
        }
        Ok(Line2 { a, b, c })
    }

    /// Line through two distinct points.
    pub fn through(p: Point2, q: Point2, tol: &Tol) -> Result<Line2> {
        if p.dist(q) <= tol.geom {
            return Err(Error::DegenerateLine);
        }
        let d = q - p;
        // Normal (-dy, dx), offset chosen so p is incident.
        Line2::new(-d.y, d.x, d.y * p.x - d.x * p.y)
    }

    /// Signed distance from a point (the line is normalized).
    #[inline]
    pub fn signed_dist(&self, p: Point2) -> f64 {
        self.a * p.x + self.b * p.y + self.c
    }

    /// Unit direction along the line. Fixed as `(b, -a)`: for a horizontal
    /// line stored as `y = k` this points toward +x, which pins the sign of
    /// every 1-D coordinate taken along a line.
    #[inline]
    pub fn direction(&self) -> Point2 {
        Point2::new(self.b, -self.a)
    }

    /// 1-D coordinate of a point along the line (projection onto
    /// [`Line2::direction`]); only differences of coordinates are meaningful.
    #[inline]
    pub fn coordinate_of(&self, p: Point2) -> f64 {
        p.dot(self.direction())
    }

    /// Foot of the perpendicular from `p`.
    #[inline]
    pub fn project(&self, p: Point2) -> Point2 {
        let s = self.signed_dist(p);
        p - Point2::new(self.a, self.b) * s
    }

    /// Intersection with another line; `None` when parallel within `tol`.
    pub fn meet(&self, other: &Line2, tol: &Tol) -> Option<Point2> {
        let det = self.a * other.b - self.b * other.a;
        if det.abs() <= tol.geom {
            return None;
        }
        Some(Point2::new(
            (self.b * other.c - self.c * other.b) / det,
            (self.c * other.a - self.a * other.c) / det,
        ))
    }
}

/// Circle with positive radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: Point2,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Point2, radius: f64) -> Result<Circle> {
        if radius <= 0.0 || !radius.is_finite() {
            return Err(Error::ValidationError {
                field: "circle.radius".into(),
                message: format!("radius must be positive and finite, got {radius}"),
            });
        }
        Ok(Circle { center, radius })
    }

    pub const fn unit() -> Circle {
        Circle { center: Point2::new(0.0, 0.0), radius: 1.0 }
    }

    /// Planar coordinates of the circle point at angle `theta`.
    #[inline]
    pub fn point_at(&self, p: CirclePoint) -> Point2 {
        self.center + Point2::new(p.theta.cos(), p.theta.sin()) * self.radius
    }

    /// Circle point nearest to an arbitrary planar point (its angle seen from
    /// the center).
    #[inline]
    pub fn angle_of(&self, p: Point2) -> CirclePoint {
        let d = p - self.center;
        CirclePoint::new(d.y.atan2(d.x))
    }

    /// Signed distance of `p` from the circle: negative inside.
    #[inline]
    pub fn boundary_dist(&self, p: Point2) -> f64 {
        p.dist(self.center) - self.radius
    }

    /// True when `p` is strictly inside, with margin `tol.geom`.
    #[inline]
    pub fn strictly_inside(&self, p: Point2, tol: &Tol) -> bool {
        self.boundary_dist(p) < -tol.geom
    }

    /// Errors with [`Error::PivotOnCircle`] when `p` is within `tol.geom` of
    /// the circle.
    pub fn check_off_circle(&self, p: Point2, tol: &Tol) -> Result<()> {
        let d = self.boundary_dist(p);
        if d.abs() <= tol.geom {
            return Err(Error::PivotOnCircle { dist: d });
        }
        Ok(())
    }
}

/// Point on a circle, stored as its angle in `[0, 2pi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CirclePoint {
    theta: f64,
}

impl CirclePoint {
    /// Wraps any finite angle into `[0, 2pi)`.
    pub fn new(theta: f64) -> CirclePoint {
        CirclePoint { theta: theta.rem_euclid(TAU) }
    }

    #[inline]
    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Angular distance on the circle, in `[0, pi]`.
    pub fn angular_dist(&self, other: CirclePoint) -> f64 {
        let d = (self.theta - other.theta).abs() % TAU;
        d.min(TAU - d)
    }

    /// Signed angular offset `other - self`, wrapped into `(-pi, pi]`.
    pub fn signed_offset_to(&self, other: CirclePoint) -> f64 {
        let mut d = (other.theta - self.theta) % TAU;
        if d > std::f64::consts::PI {
            d -= TAU;
        } else if d <= -std::f64::consts::PI {
            d += TAU;
        }
        d
    }
}

/// The three ways a line can meet a circle.
///
/// `Disjoint` carries a planar stand-in for the complex intersection pair:
/// the `witness` sits on the perpendicular from the center, strictly inside
/// the circle, displaced from the line by the imaginary part of the chord
/// roots; `mirror` is its reflection across the line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LineCircleMeet {
    Secant { a: CirclePoint, b: CirclePoint },
    Tangent { a: CirclePoint },
    Disjoint { witness: Point2, mirror: Point2, perp_distance: f64 },
}

/// Classifies a line against a circle and returns the case data.
///
/// Secant endpoints are ordered so that `a = foot - h * l.direction()` where
/// `foot` is the perpendicular foot: the x-axis against the unit circle
/// yields `a` at angle `pi` and `b` at angle `0`.
pub fn line_circle_meet(c: &Circle, l: &Line2, tol: &Tol) -> LineCircleMeet {
    let s = l.signed_dist(c.center);
    let d = s.abs();
    let r = c.radius;
    if (d - r).abs() <= tol.geom {
        return LineCircleMeet::Tangent { a: c.angle_of(l.project(c.center)) };
    }
    if d < r {
        let foot = l.project(c.center);
        let h = (r * r - d * d).sqrt();
        let t = l.direction();
        let a = c.angle_of(foot - t * h);
        let b = c.angle_of(foot + t * h);
        return LineCircleMeet::Secant { a, b };
    }
    // Disjoint: u points from the center toward the line.
    let u = if s > 0.0 {
        -Point2::new(l.a, l.b)
    } else {
        Point2::new(l.a, l.b)
    };
    let im = (d * d - r * r).sqrt();
    let witness = c.center + u * (d - im);
    let mirror = c.center + u * (d + im);
    LineCircleMeet::Disjoint { witness, mirror, perp_distance: d }
}

/// Second intersection of the chord through `x` and the pivot `p`.
///
/// Returns `x` itself exactly when the chord is tangent at `x`. The pivot
/// must not lie on the circle.
pub fn chord_second_point(c: &Circle, x: CirclePoint, p: Point2, tol: &Tol) -> Result<CirclePoint> {
    c.check_off_circle(p, tol)?;
    let xp = c.point_at(x);
    let v = p - xp;
    let w = xp - c.center;
    let vv = v.dot(v);
    // p != x because p is off the circle, so vv > 0.
    let t2 = -2.0 * v.dot(w) / vv;
    if t2 == 0.0 {
        return Ok(x);
    }
    Ok(c.angle_of(xp + v * t2))
}

/// Polar line of a point with respect to a circle.
///
/// For the unit circle and `p = (k, 0)` this is the vertical line `x = 1/k`.
pub fn polarity(c: &Circle, p: Point2, tol: &Tol) -> Result<Line2> {
    let d = p - c.center;
    if d.norm() <= tol.geom {
        return Err(Error::PolarUndefined);
    }
    // (p - o) . (X - o) = r^2, expanded into line coefficients.
    Line2::new(
        d.x,
        d.y,
        -(c.radius * c.radius + d.dot(c.center)),
    )
}

/// Pole of a line with respect to a circle: the inverse of [`polarity`].
pub fn pole(c: &Circle, l: &Line2, tol: &Tol) -> Result<Point2> {
    let k = -(l.c + l.a * c.center.x + l.b * c.center.y);
    if k.abs() <= tol.geom {
        return Err(Error::PoleAtInfinity);
    }
    let f = c.radius * c.radius / k;
    Ok(c.center + Point2::new(l.a, l.b) * f)
}

/// Circle point of the tangency seen from an exterior point `p`: the polar
/// chord endpoint construction, exposed for tests and the hyperbolic layer.
pub fn tangency_points(c: &Circle, p: Point2, tol: &Tol) -> Result<(CirclePoint, CirclePoint)> {
    let l = polarity(c, p, tol)?;
    match line_circle_meet(c, &l, tol) {
        LineCircleMeet::Secant { a, b } => Ok((a, b)),
        _ => Err(Error::NotInterior { dist: p.dist(c.center), radius: c.radius }),
    }
}
