//! The circle interior as the projective (Klein) model of the hyperbolic
//! plane: chord distance, the point/line invariant of a pair of off-circle
//! points under polarity, and right-angled regular polygons.
//!
//! In this model a point outside the circle stands for a hyperbolic line
//! (its polar chord). A pair of points therefore carries one of four
//! invariants, selected by which side of the circle each point is on and,
//! for two exterior points, by whether their joining line meets the circle.

use crate::crossratio::cr_collinear;
use crate::error::{Error, Result};
use crate::geom::{line_circle_meet, Circle, Line2, LineCircleMeet, Point2};
use crate::tol::Tol;

/// Invariant of a pair of off-circle points under the hyperbolic reading.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PairInvariant {
    /// Both inside: hyperbolic distance between two points.
    PointPoint { distance: f64 },
    /// One inside, one outside: distance from the point to the line polar to
    /// the outside point.
    PointLine { distance: f64 },
    /// Both outside, joining line meets the circle: the two polar lines are
    /// disjoint; distance along their common perpendicular (which is the
    /// joining line itself).
    LinesDistance { distance: f64 },
    /// Both outside, joining line misses the circle: the polar lines cross;
    /// angle folded into `(0, pi/2]`.
    LinesAngle { angle: f64 },
}

/// Hyperbolic distance between two interior points:
/// `d = |log cr(a, b; p, q)| / 2` with `a, b` the chord ends through them.
///
/// Worked values: center to `(0.5, 0)` is `log(3)/2`; `(-0.5, 0)` to
/// `(0.2, 0)` is `log(4.5)/2`.
pub fn klein_distance(c: &Circle, p: Point2, q: Point2, tol: &Tol) -> Result<f64> {
    for x in [p, q] {
        let dist = x.dist(c.center);
        // `>=` alone would let NaN coordinates slip through.
        if dist >= c.radius - tol.geom || dist.is_nan() {
            return Err(Error::NotInterior { dist, radius: c.radius });
        }
    }
    if p.dist(q) <= tol.geom {
        return Ok(0.0);
    }
    let l = Line2::through(p, q, tol)?;
    let (a, b) = match line_circle_meet(c, &l, tol) {
        LineCircleMeet::Secant { a, b } => (a, b),
        _ => unreachable!("a line through interior points is secant"),
    };
    let cr = cr_collinear(c.point_at(a), c.point_at(b), p, q, tol)?
        .finite()
        .expect("interior points give a finite positive cross-ratio");
    Ok(0.5 * cr.ln().abs())
}

/// The four-case invariant of a pair of off-circle points.
///
/// Both interior reduces to [`klein_distance`]; mixed pairs use the sign
/// flip of the cross-ratio (`d = |log(-cr)| / 2`); two exterior points hand
/// off to the case split of their joining line: secant gives a distance,
/// disjoint gives the angle at the interior witness, tangent degenerates to
/// distance zero (asymptotically parallel polars).
pub fn pair_invariant(c: &Circle, p: Point2, q: Point2, tol: &Tol) -> Result<PairInvariant> {
    for x in [p, q] {
        if c.boundary_dist(x).abs() <= tol.geom {
            return Err(Error::OnCircle);
        }
    }
    let p_in = c.strictly_inside(p, tol);
    let q_in = c.strictly_inside(q, tol);
    match (p_in, q_in) {
        (true, true) => Ok(PairInvariant::PointPoint { distance: klein_distance(c, p, q, tol)? }),
        (true, false) | (false, true) => {
            // Normalize to interior first, exterior second; the formula is
            // symmetric in the chord ends.
            let (pin, pout) = if p_in { (p, q) } else { (q, p) };
            let l = Line2::through(pin, pout, tol)?;
            let (a, b) = match line_circle_meet(c, &l, tol) {
                LineCircleMeet::Secant { a, b } => (a, b),
                _ => unreachable!("a line through an interior point is secant"),
            };
            let cr = cr_collinear(c.point_at(a), c.point_at(b), pin, pout, tol)?
                .finite()
                .expect("off-circle pivots give finite cross-ratio");
            Ok(PairInvariant::PointLine { distance: 0.5 * (-cr).ln().abs() })
        }
        (false, false) => {
            let l = Line2::through(p, q, tol)?;
            match line_circle_meet(c, &l, tol) {
                LineCircleMeet::Secant { a, b } => {
                    let cr = cr_collinear(c.point_at(a), c.point_at(b), p, q, tol)?
                        .finite()
                        .expect("off-circle pivots give finite cross-ratio");
                    Ok(PairInvariant::LinesDistance { distance: 0.5 * cr.ln().abs() })
                }
                LineCircleMeet::Tangent { .. } => {
                    // Polars meet on the circle: asymptotically parallel.
                    Ok(PairInvariant::LinesDistance { distance: 0.0 })
                }
                LineCircleMeet::Disjoint { witness, .. } => {
                    let u = p - witness;
                    let v = q - witness;
                    let raw = u.cross(v).atan2(u.dot(v)).abs();
                    let angle = raw.min(std::f64::consts::PI - raw);
                    // Lines cross at a positive angle; fold to (0, pi/2].
                    Ok(PairInvariant::LinesAngle {
                        angle: if angle <= 0.0 { std::f64::consts::PI / 2.0 } else { angle },
                    })
                }
            }
        }
    }
}

/// Vertices of the regular hyperbolic `n`-gon with all interior angles
/// `pi/2`, inscribed in the given circle read as the Klein disk.
///
/// Exists only for `n >= 5`. The hyperbolic circumradius `R` satisfies
/// `cosh R = cot(pi/n)`; in the disk that is the Euclidean radius
/// `tanh R = sqrt(cot^2(pi/n) - 1) / cot(pi/n)`. The first vertex sits on
/// the positive x-direction from the center, the rest follow
/// counterclockwise.
pub fn right_angled_polygon(c: &Circle, n: usize, _tol: &Tol) -> Result<Vec<Point2>> {
    if n <= 4 {
        return Err(Error::NoSuchPolygon { n });
    }
    let cot = 1.0 / (std::f64::consts::PI / n as f64).tan();
    let klein_r = (cot * cot - 1.0).sqrt() / cot;
    let r = klein_r * c.radius;
    Ok((0..n)
        .map(|k| {
            let th = crate::geom::TAU * k as f64 / n as f64;
            c.center + Point2::new(th.cos(), th.sin()) * r
        })
        .collect())
}
