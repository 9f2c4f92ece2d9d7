//! Chord chains through fixed pivots and the closure criterion in its three
//! guises: secant (cross-ratio equality), tangent (reciprocal differences),
//! disjoint (equal angles at the interior witness).
//!
//! The three-case check, the boundary-map pair condition, and brute-force
//! chain tracing are deliberately independent routes to the same verdict;
//! tests compare them rather than letting one define another.

use crate::crossratio::cr_collinear;
use crate::error::{Error, Result};
use crate::geom::{
    chord_second_point, line_circle_meet, Circle, CirclePoint, Line2, LineCircleMeet, Point2,
};
use crate::moebius::{compose, involution_of, MoebiusMap};
use crate::tol::Tol;

/// A traced chord chain: from `start`, each step crosses to the other chord
/// endpoint through the next pivot, cycling through `pivots` once.
#[derive(Debug, Clone)]
pub struct ChordChain {
    pub circle: Circle,
    pub start: CirclePoint,
    pub pivots: Vec<Point2>,
    /// `pivots.len() + 1` circle points; the first is `start`.
    pub vertices: Vec<CirclePoint>,
    /// Angular distance between the final vertex and `start`, in `[0, pi]`.
    pub defect: f64,
}

impl ChordChain {
    /// Signed defect: wrapped angular offset from `start` to the final
    /// vertex, in `(-pi, pi]`. Root-finding wants the sign.
    pub fn signed_defect(&self) -> f64 {
        self.start.signed_offset_to(*self.vertices.last().expect("nonempty chain"))
    }
}

/// Which of the three line-circle cases a butterfly check ran in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ButterflyCase {
    Secant,
    Tangent,
    Disjoint,
}

impl ButterflyCase {
    pub fn name(&self) -> &'static str {
        match self {
            ButterflyCase::Secant => "secant",
            ButterflyCase::Tangent => "tangent",
            ButterflyCase::Disjoint => "disjoint",
        }
    }
}

/// Outcome of the three-case closure criterion for one pivot quadruple.
///
/// `satisfied` is `|lhs - rhs| <= tol.alg * max(1, |lhs|, |rhs|)`.
#[derive(Debug, Clone, Copy)]
pub struct ButterflyReport {
    pub case: ButterflyCase,
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
    /// Tangency point (tangent case) or interior witness (disjoint case).
    pub witness: Option<Point2>,
}

/// Traces the chord chain from `start` through the pivots in order.
///
/// Tracing the same pivot twice returns to the start: the chord map is an
/// involution, so the defect vanishes.
pub fn trace_chain(
    c: &Circle,
    start: CirclePoint,
    pivots: &[Point2],
    tol: &Tol,
) -> Result<ChordChain> {
    let mut vertices = Vec::with_capacity(pivots.len() + 1);
    vertices.push(start);
    let mut x = start;
    for p in pivots {
        x = chord_second_point(c, x, *p, tol)?;
        vertices.push(x);
    }
    let defect = start.angular_dist(x);
    Ok(ChordChain { circle: *c, start, pivots: pivots.to_vec(), vertices, defect })
}

fn check_pivots_on_line(l: &Line2, pts: &[Point2], tol: &Tol) -> Result<()> {
    for (index, p) in pts.iter().enumerate() {
        let offset = l.signed_dist(*p).abs();
        if offset > tol.geom {
            return Err(Error::NotOnLine { index, offset });
        }
    }
    Ok(())
}

/// Unsigned angle at vertex `at` between rays toward `p` and `q`, in `[0, pi]`.
fn angle_at(at: Point2, p: Point2, q: Point2) -> f64 {
    let u = p - at;
    let v = q - at;
    u.cross(v).atan2(u.dot(v)).abs()
}

/// Evaluates the closure criterion for the pivot quadruple `(p, q, r, s)` on
/// line `l` against circle `c`, in whichever of the three cases `l` is in.
///
/// Secant: `cr(a, b; p, q) = cr(a, b; s, r)` with `a, b` the chord endpoints.
/// Tangent: `1/(a-p) - 1/(a-q) = 1/(a-s) - 1/(a-r)` in signed coordinates
/// along `l` (`a` the tangency). Disjoint: the angles `p-w-q` and `s-w-r` at
/// the interior witness `w` agree.
pub fn butterfly_check(
    c: &Circle,
    l: &Line2,
    p: Point2,
    q: Point2,
    r: Point2,
    s: Point2,
    tol: &Tol,
) -> Result<ButterflyReport> {
    let pivots = [p, q, r, s];
    check_pivots_on_line(l, &pivots, tol)?;
    for piv in &pivots {
        c.check_off_circle(*piv, tol)?;
    }
    match line_circle_meet(c, l, tol) {
        LineCircleMeet::Secant { a, b } => {
            let (pa, pb) = (c.point_at(a), c.point_at(b));
            let lhs = cr_collinear(pa, pb, p, q, tol)?;
            let rhs = cr_collinear(pa, pb, s, r, tol)?;
            // Pivots are off the circle, so neither value can be infinite.
            let (lhs, rhs) = match (lhs.finite(), rhs.finite()) {
                (Some(x), Some(y)) => (x, y),
                _ => return Err(Error::DegenerateQuadruple { i: 0, j: 0 }),
            };
            Ok(ButterflyReport {
                case: ButterflyCase::Secant,
                lhs,
                rhs,
                satisfied: tol.alg_close(lhs, rhs),
                witness: None,
            })
        }
        LineCircleMeet::Tangent { a } => {
            let alpha = l.coordinate_of(c.point_at(a));
            let coord = |x: Point2| l.coordinate_of(x);
            let inv = |x: Point2| -> Result<f64> {
                let d = alpha - coord(x);
                if d.abs() <= tol.geom {
                    return Err(Error::PivotOnCircle { dist: d });
                }
                Ok(1.0 / d)
            };
            let lhs = inv(p)? - inv(q)?;
            let rhs = inv(s)? - inv(r)?;
            Ok(ButterflyReport {
                case: ButterflyCase::Tangent,
                lhs,
                rhs,
                satisfied: tol.alg_close(lhs, rhs),
                witness: Some(c.point_at(a)),
            })
        }
        LineCircleMeet::Disjoint { witness, .. } => {
            let lhs = angle_at(witness, p, q);
            let rhs = angle_at(witness, s, r);
            Ok(ButterflyReport {
                case: ButterflyCase::Disjoint,
                lhs,
                rhs,
                satisfied: tol.alg_close(lhs, rhs),
                witness: Some(witness),
            })
        }
    }
}

/// Boundary-map form of the closure condition: the composition through `q`
/// then `p` equals the composition through `r` then `s`, as projective
/// matrices within `tol.alg`.
pub fn pair_condition(
    c: &Circle,
    p: Point2,
    q: Point2,
    r: Point2,
    s: Point2,
    tol: &Tol,
) -> Result<bool> {
    let ip = involution_of(c, p, tol)?;
    let iq = involution_of(c, q, tol)?;
    let ir = involution_of(c, r, tol)?;
    let is = involution_of(c, s, tol)?;
    let lhs = compose(&iq, &ip);
    let rhs = compose(&ir, &is);
    Ok(lhs.proj_dist(&rhs) <= tol.alg * 100.0)
}

/// Holonomy of one pass through the pivots: the composition of their chord
/// involutions, rightmost applied first.
pub fn chain_map(c: &Circle, pivots: &[Point2], tol: &Tol) -> Result<MoebiusMap> {
    let mut m = MoebiusMap::identity();
    for p in pivots {
        m = compose(&involution_of(c, *p, tol)?, &m);
    }
    Ok(m)
}

/// Completes `(p, q, ?, s)` to a closed quadruple: the unique point `r` of
/// `l` for which the chain through `(p, q, r, s)` closes from every start.
///
/// Construction: from an auxiliary start `x`, walk `y` through `p`, `z`
/// through `q`, and `t` backwards through `s` (the closing chord joins `t`
/// to `x`); then `r` is where line `(z, t)` crosses `l`. The result does not
/// depend on the auxiliary; degenerate starts are retried and only if all
/// fail does this error with [`Error::DegenerateAuxiliary`].
pub fn fourth_point(
    c: &Circle,
    l: &Line2,
    p: Point2,
    q: Point2,
    s: Point2,
    tol: &Tol,
) -> Result<Point2> {
    check_pivots_on_line(l, &[p, q, s], tol)?;
    for piv in [p, q, s] {
        c.check_off_circle(piv, tol)?;
    }
    // p = q collapses the first two steps: the chord (x, t) already passes
    // through s, and indeed the construction returns r = s.
    let starts = [0.7, 2.1, 3.9, 5.2, 1.3, 4.6, 0.2, 2.9];
    for th in starts {
        let x = CirclePoint::new(th);
        let y = chord_second_point(c, x, p, tol)?;
        let z = chord_second_point(c, y, q, tol)?;
        let t = chord_second_point(c, x, s, tol)?;
        let (zp, tp) = (c.point_at(z), c.point_at(t));
        if zp.dist(tp) <= tol.geom.max(1e-7) {
            continue; // Chord (z, t) degenerates; try another auxiliary.
        }
        let chord = Line2::through(zp, tp, tol)?;
        match chord.meet(l, tol) {
            Some(r) => return Ok(r),
            None => continue, // Parallel to l; try another auxiliary.
        }
    }
    Err(Error::DegenerateAuxiliary)
}
