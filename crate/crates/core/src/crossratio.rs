//! Cross-ratios of reals, collinear points, concurrent lines, and circle
//! points, plus projective maps of the plane.
//!
//! Everything funnels through one projective-pair kernel: an extended real is
//! a direction `[u : v]`, a difference `x - y` becomes the 2x2 determinant of
//! the pair matrix, and infinity needs no special cases. Near-coincident
//! arguments are refused loudly (`DegenerateQuadruple`) instead of returning
//! huge values, because closure checks downstream must fail visibly.

use crate::error::{Error, Result};
use crate::geom::{Circle, CirclePoint, Line2, Point2};
use crate::tol::Tol;

/// Real number or the point at infinity of the projective line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtReal {
    Finite(f64),
    Infinity,
}

impl ExtReal {
    pub fn finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(x) => Some(x),
            ExtReal::Infinity => None,
        }
    }

    /// Approximate equality: finite values compare relatively with `tol.alg`,
    /// infinity only equals infinity.
    pub fn close_to(self, other: ExtReal, tol: &Tol) -> bool {
        match (self, other) {
            (ExtReal::Finite(x), ExtReal::Finite(y)) => tol.alg_close(x, y),
            (ExtReal::Infinity, ExtReal::Infinity) => true,
            _ => false,
        }
    }
}

impl From<f64> for ExtReal {
    fn from(x: f64) -> Self {
        ExtReal::Finite(x)
    }
}

impl std::fmt::Display for ExtReal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExtReal::Finite(x) => write!(f, "{x}"),
            ExtReal::Infinity => write!(f, "inf"),
        }
    }
}

/// Unit-normalized projective pair `[u : v]` representing `u / v`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PPoint {
    pub u: f64,
    pub v: f64,
}

impl PPoint {
    pub fn from_ext(x: ExtReal) -> PPoint {
        match x {
            ExtReal::Finite(t) => {
                let n = t.hypot(1.0);
                PPoint { u: t / n, v: 1.0 / n }
            }
            ExtReal::Infinity => PPoint { u: 1.0, v: 0.0 },
        }
    }

    pub fn to_ext(self, tol: &Tol) -> ExtReal {
        // The pair is kept near unit norm, so |v| measures distance from the
        // infinite direction directly.
        if self.v.abs() <= tol.alg * self.u.hypot(self.v) {
            ExtReal::Infinity
        } else {
            ExtReal::Finite(self.u / self.v)
        }
    }

    /// Determinant of two pairs: the projective substitute for `x - y`.
    #[inline]
    pub fn det(self, o: PPoint) -> f64 {
        self.u * o.v - self.v * o.u
    }
}

/// Sine of the angle between two unit-normalized pairs; zero iff they name
/// the same projective point.
fn pair_sep(x: PPoint, y: PPoint) -> f64 {
    x.det(y).abs() / (x.u.hypot(x.v) * y.u.hypot(y.v))
}

fn check_distinct(pts: &[PPoint; 4], tol: &Tol) -> Result<()> {
    for i in 0..4 {
        for j in (i + 1)..4 {
            if pair_sep(pts[i], pts[j]) <= tol.geom {
                return Err(Error::DegenerateQuadruple { i, j });
            }
        }
    }
    Ok(())
}

fn cr_of_pairs(a: PPoint, b: PPoint, c: PPoint, d: PPoint, tol: &Tol) -> ExtReal {
    let num = a.det(c) * b.det(d);
    let den = b.det(c) * a.det(d);
    PPoint { u: num, v: den }.to_ext(tol)
}

/// Cross-ratio `cr(a, b; c, d) = ((a-c)(b-d)) / ((b-c)(a-d))` on the
/// projective line.
///
/// `cr(0, 1; 2, 3) = 4/3`, `cr(0, 2; 1, inf) = -1`. Any two arguments closer
/// than `tol.geom` (projectively) raise [`Error::DegenerateQuadruple`].
pub fn cr_reals(a: ExtReal, b: ExtReal, c: ExtReal, d: ExtReal, tol: &Tol) -> Result<ExtReal> {
    let pts = [
        PPoint::from_ext(a),
        PPoint::from_ext(b),
        PPoint::from_ext(c),
        PPoint::from_ext(d),
    ];
    check_distinct(&pts, tol)?;
    Ok(cr_of_pairs(pts[0], pts[1], pts[2], pts[3], tol))
}

/// Fits the support line of four points: the line through the farthest pair,
/// with every point required to lie on it within `tol.geom`.
fn support_line(pts: &[Point2; 4], tol: &Tol) -> Result<Line2> {
    let (mut bi, mut bj, mut best) = (0, 1, -1.0);
    for i in 0..4 {
        for j in (i + 1)..4 {
            let d = pts[i].dist(pts[j]);
            if d > best {
                best = d;
                bi = i;
                bj = j;
            }
        }
    }
    let l = Line2::through(pts[bi], pts[bj], tol)?;
    let mut offset = 0.0_f64;
    for p in pts {
        offset = offset.max(l.signed_dist(*p).abs());
    }
    if offset > tol.geom {
        return Err(Error::NotCollinear { offset });
    }
    Ok(l)
}

/// Cross-ratio of four collinear points, computed in the 1-D affine chart of
/// their support line. The value does not depend on the chart.
pub fn cr_collinear(a: Point2, b: Point2, c: Point2, d: Point2, tol: &Tol) -> Result<ExtReal> {
    let pts = [a, b, c, d];
    let l = support_line(&pts, tol)?;
    let [xa, xb, xc, xd] = pts.map(|p| ExtReal::Finite(l.coordinate_of(p)));
    cr_reals(xa, xb, xc, xd, tol)
}

/// Direction angle of a line (mod pi, any representative).
fn line_angle(l: &Line2) -> f64 {
    let d = l.direction();
    d.y.atan2(d.x)
}

fn check_concurrent(ls: &[Line2; 4], tol: &Tol) -> Result<()> {
    // Homogeneous meet of the first two lines, unit-normalized.
    let (l1, l2) = (ls[0], ls[1]);
    let (x, y, w) = (
        l1.b * l2.c - l1.c * l2.b,
        l1.c * l2.a - l1.a * l2.c,
        l1.a * l2.b - l1.b * l2.a,
    );
    let n = (x * x + y * y + w * w).sqrt();
    if n < 1e-300 {
        // First two lines coincide; concurrency reduces to pairwise meets of
        // the remaining lines, checked by the degenerate-quadruple guard later.
        return Ok(());
    }
    let (x, y, w) = (x / n, y / n, w / n);
    let mut offset = 0.0_f64;
    for l in &ls[2..] {
        // Incidence residual of the homogeneous meet with each line: a
        // distance scaled by |w| when the meet is finite, a direction
        // incidence when it is ideal.
        offset = offset.max((l.a * x + l.b * y + l.c * w).abs());
    }
    let scaled = if w.abs() > 1e-9 { offset / w.abs() } else { offset };
    if scaled > tol.geom * 10.0 {
        return Err(Error::NotConcurrent { offset: scaled });
    }
    Ok(())
}

/// Cross-ratio of four concurrent lines via the sine formula
/// `cr = (sin(a-c) sin(b-d)) / (sin(b-c) sin(a-d))` on direction angles.
/// Replacing any angle by `angle + pi` leaves the value unchanged.
pub fn cr_pencil(l1: &Line2, l2: &Line2, l3: &Line2, l4: &Line2, tol: &Tol) -> Result<ExtReal> {
    let ls = [*l1, *l2, *l3, *l4];
    check_concurrent(&ls, tol)?;
    let ang = ls.map(|l| line_angle(&l));
    // Degeneracy: two directions equal mod pi.
    for i in 0..4 {
        for j in (i + 1)..4 {
            if (ang[i] - ang[j]).sin().abs() <= tol.geom {
                return Err(Error::DegenerateQuadruple { i, j });
            }
        }
    }
    let num = (ang[0] - ang[2]).sin() * (ang[1] - ang[3]).sin();
    let den = (ang[1] - ang[2]).sin() * (ang[0] - ang[3]).sin();
    Ok(PPoint { u: num, v: den }.to_ext(tol))
}

/// Witness on the circle for [`cr_circle`]: midpoint of the longest arc cut
/// by the four points, i.e. the circle point maximizing the minimal angular
/// separation from all four.
pub fn circle_witness(pts: [CirclePoint; 4]) -> CirclePoint {
    let mut thetas = pts.map(|p| p.theta());
    thetas.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut best = (0.0, 0.0); // (gap, midpoint)
    for i in 0..4 {
        let a = thetas[i];
        let b = if i + 1 < 4 { thetas[i + 1] } else { thetas[0] + crate::geom::TAU };
        if b - a > best.0 {
            best = (b - a, (a + b) / 2.0);
        }
    }
    CirclePoint::new(best.1)
}

/// Cross-ratio of four circle points as the pencil of chords from a witness
/// point of the circle; independent of the witness.
pub fn cr_circle(
    circle: &Circle,
    a: CirclePoint,
    b: CirclePoint,
    c: CirclePoint,
    d: CirclePoint,
    tol: &Tol,
) -> Result<ExtReal> {
    let w = circle_witness([a, b, c, d]);
    cr_circle_with_witness(circle, w, a, b, c, d, tol)
}

/// Same as [`cr_circle`] but with an explicit witness, so independence of the
/// witness can be observed from outside.
pub fn cr_circle_with_witness(
    circle: &Circle,
    witness: CirclePoint,
    a: CirclePoint,
    b: CirclePoint,
    c: CirclePoint,
    d: CirclePoint,
    tol: &Tol,
) -> Result<ExtReal> {
    let pts = [a, b, c, d];
    for i in 0..4 {
        for j in (i + 1)..4 {
            if pts[i].angular_dist(pts[j]) <= tol.geom {
                return Err(Error::DegenerateQuadruple { i, j });
            }
        }
    }
    let wp = circle.point_at(witness);
    let mut chords = Vec::with_capacity(4);
    for p in pts {
        if witness.angular_dist(p) <= tol.geom {
            return Err(Error::DegenerateQuadruple { i: 0, j: 0 });
        }
        chords.push(Line2::through(wp, circle.point_at(p), tol)?);
    }
    cr_pencil(&chords[0], &chords[1], &chords[2], &chords[3], tol)
}

/// Invertible projective map of the plane, stored as a 3x3 matrix acting on
/// homogeneous columns `[x : y : 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjMap2 {
    pub m: [[f64; 3]; 3],
}

impl ProjMap2 {
    pub fn new(m: [[f64; 3]; 3]) -> Result<ProjMap2> {
        let map = ProjMap2 { m };
        let det = map.det();
        // Scale-free singularity test: compare det against the cube of the
        // Frobenius norm.
        let scale = map.frobenius() / 3.0_f64.sqrt();
        if det.abs() <= 1e-14 * scale.powi(3).max(1e-300) {
            return Err(Error::SingularMap { det });
        }
        Ok(map)
    }

    pub fn identity() -> ProjMap2 {
        ProjMap2 { m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]] }
    }

    fn frobenius(&self) -> f64 {
        self.m.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn det(&self) -> f64 {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Adjugate, which inverts up to scale -- all a projective map needs.
    pub fn adjugate(&self) -> ProjMap2 {
        let m = &self.m;
        let cof = |r1: usize, r2: usize, c1: usize, c2: usize| {
            m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]
        };
        ProjMap2 {
            m: [
                [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
                [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
                [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
            ],
        }
    }

    /// Image of a point; errors if it lands on the line at infinity.
    pub fn apply(&self, p: Point2, tol: &Tol) -> Result<Point2> {
        let hom = [p.x, p.y, 1.0];
        let mut out = [0.0; 3];
        for (r, row) in self.m.iter().enumerate() {
            out[r] = row[0] * hom[0] + row[1] * hom[1] + row[2] * hom[2];
        }
        let n = (out[0] * out[0] + out[1] * out[1] + out[2] * out[2]).sqrt();
        if out[2].abs() <= tol.geom * n.max(1e-300) {
            return Err(Error::ImageAtInfinity { w: out[2] });
        }
        Ok(Point2::new(out[0] / out[2], out[1] / out[2]))
    }

    /// Image of a line under the map: lines push forward by the transpose of
    /// the adjugate (inverse-transpose up to scale).
    pub fn apply_line(&self, l: &Line2) -> Result<Line2> {
        let adj = self.adjugate();
        // l' = adj(M)^T * l.
        let a = adj.m[0][0] * l.a + adj.m[1][0] * l.b + adj.m[2][0] * l.c;
        let b = adj.m[0][1] * l.a + adj.m[1][1] * l.b + adj.m[2][1] * l.c;
        let c = adj.m[0][2] * l.a + adj.m[1][2] * l.b + adj.m[2][2] * l.c;
        Line2::new(a, b, c)
    }
}

/// Applies a projective map to a point: free-function alias for
/// [`ProjMap2::apply`].
pub fn apply_proj(h: &ProjMap2, p: Point2, tol: &Tol) -> Result<Point2> {
    h.apply(p, tol)
}
