//! Circle self-maps as 2x2 real matrices in the half-angle chart.
//!
//! A point of the circle at angle `theta` is charted to `t = tan(theta/2)`,
//! with `theta = pi` at infinity; a matrix `[[a, b], [c, d]]` acts as
//! `t -> (a t + b) / (c t + d)`. All arithmetic runs on projective pairs
//! `[u : v]`, so the infinite chart point is an ordinary value. Matrices are
//! stored with `|det| = 1` (sign preserved: negative determinant means the
//! map reverses circle orientation).

use crate::crossratio::{ExtReal, PPoint};
use crate::error::{Error, Result};
use crate::geom::{chord_second_point, Circle, CirclePoint, Point2};
use crate::tol::Tol;

/// Boundary map of the circle in the half-angle chart, `|det| = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusMap {
    pub m: [[f64; 2]; 2],
}

/// Conjugacy classification of a boundary map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MoebiusClass {
    /// Proportional to the identity matrix.
    Identity,
    /// No boundary fixed point; `rotation_trace` is the normalized trace,
    /// `|tr| < 2`.
    Elliptic { rotation_trace: f64 },
    /// Exactly one boundary fixed point.
    Parabolic,
    /// Two boundary fixed points; `translation_trace` is the normalized
    /// trace, `|tr| > 2`.
    Hyperbolic { translation_trace: f64 },
    /// Orientation-reversing (negative determinant); two boundary fixed
    /// points.
    Reversing,
}

/// Chart of the circle: `theta -> tan(theta / 2)`, with `theta = pi` mapped
/// to infinity. The chart does not depend on the circle's center or radius.
pub fn chart(x: CirclePoint) -> ExtReal {
    let t = x.theta();
    if (t - std::f64::consts::PI).abs() < 1e-15 {
        ExtReal::Infinity
    } else {
        ExtReal::Finite((t / 2.0).tan())
    }
}

/// Inverse chart: `t -> 2 atan(t)`, infinity to `theta = pi`.
pub fn unchart(t: ExtReal) -> CirclePoint {
    match t {
        ExtReal::Finite(x) => CirclePoint::new(2.0 * x.atan()),
        ExtReal::Infinity => CirclePoint::new(std::f64::consts::PI),
    }
}

fn pair_of(x: ExtReal) -> PPoint {
    PPoint::from_ext(x)
}

impl MoebiusMap {
    /// Normalizes a raw matrix to `|det| = 1`, preserving the determinant
    /// sign. Rejects (numerically) singular input.
    pub fn new(m: [[f64; 2]; 2]) -> Result<MoebiusMap> {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        let scale = m.iter().flatten().map(|x| x * x).sum::<f64>();
        if det.abs() <= 1e-14 * scale.max(1e-300) {
            return Err(Error::SingularMap { det });
        }
        let s = det.abs().sqrt();
        Ok(MoebiusMap {
            m: [[m[0][0] / s, m[0][1] / s], [m[1][0] / s, m[1][1] / s]],
        })
    }

    pub fn identity() -> MoebiusMap {
        MoebiusMap { m: [[1.0, 0.0], [0.0, 1.0]] }
    }

    #[inline]
    pub fn det(&self) -> f64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    #[inline]
    pub fn trace(&self) -> f64 {
        self.m[0][0] + self.m[1][1]
    }

    /// Action on a chart value through projective pairs.
    pub fn apply_chart(&self, t: ExtReal, tol: &Tol) -> ExtReal {
        let p = pair_of(t);
        let u = self.m[0][0] * p.u + self.m[0][1] * p.v;
        let v = self.m[1][0] * p.u + self.m[1][1] * p.v;
        let n = u.hypot(v);
        PPoint { u: u / n, v: v / n }.to_ext(tol)
    }

    /// Action on a circle point: chart, map, unchart.
    pub fn apply(&self, x: CirclePoint, tol: &Tol) -> CirclePoint {
        unchart(self.apply_chart(chart(x), tol))
    }

    /// Inverse map (adjugate works projectively; renormalized).
    pub fn inverse(&self) -> MoebiusMap {
        let [[a, b], [c, d]] = self.m;
        MoebiusMap::new([[d, -b], [-c, a]]).expect("inverse of a unit-determinant matrix")
    }

    /// Scale-free distance between two maps as projective matrices: Frobenius
    /// distance after unit normalization, minimized over the sign ambiguity.
    pub fn proj_dist(&self, other: &MoebiusMap) -> f64 {
        let norm = |m: &[[f64; 2]; 2]| m.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
        let (na, nb) = (norm(&self.m), norm(&other.m));
        let mut dp = 0.0_f64;
        let mut dm = 0.0_f64;
        for r in 0..2 {
            for c in 0..2 {
                let x = self.m[r][c] / na;
                let y = other.m[r][c] / nb;
                dp = dp.max((x - y).abs());
                dm = dm.max((x + y).abs());
            }
        }
        dp.min(dm)
    }

    /// Identity test: proportional to the identity matrix within `tol.alg`
    /// and fixes three sampled chart points within `tol.geom`.
    pub fn is_identity(&self, tol: &Tol) -> bool {
        if self.proj_dist(&MoebiusMap::identity()) > tol.alg * 10.0 {
            return false;
        }
        [0.35, 2.2, 4.4].into_iter().all(|th| {
            let x = CirclePoint::new(th);
            self.apply(x, tol).angular_dist(x) <= tol.geom
        })
    }
}

/// Composition `f` after `g` (matrix product `f * g`).
pub fn compose(f: &MoebiusMap, g: &MoebiusMap) -> MoebiusMap {
    let (a, b) = (&f.m, &g.m);
    MoebiusMap::new([
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ])
    .expect("product of unit-determinant matrices is invertible")
}

/// Unique boundary map sending one chart triple to another.
///
/// `(0, 1, inf) -> (1, 0, inf)` yields `t -> 1 - t`. Coincident entries in
/// either triple raise [`Error::DegenerateTriple`].
pub fn from_triples(src: [ExtReal; 3], dst: [ExtReal; 3], tol: &Tol) -> Result<MoebiusMap> {
    let check = |tri: &[PPoint; 3]| -> Result<()> {
        for i in 0..3 {
            for j in (i + 1)..3 {
                let sep = tri[i].det(tri[j]).abs()
                    / (tri[i].u.hypot(tri[i].v) * tri[j].u.hypot(tri[j].v));
                if sep <= tol.geom {
                    return Err(Error::DegenerateTriple { i, j });
                }
            }
        }
        Ok(())
    };
    let s = [pair_of(src[0]), pair_of(src[1]), pair_of(src[2])];
    let d = [pair_of(dst[0]), pair_of(dst[1]), pair_of(dst[2])];
    check(&s)?;
    check(&d)?;
    // Matrix sending a triple (p1, p2, p3) to (0, 1, inf):
    // rows are the linear forms det(z, p1) * det(p2, p3) and
    // det(z, p3) * det(p2, p1).
    let to_std = |p: &[PPoint; 3]| -> [[f64; 2]; 2] {
        let k1 = p[1].det(p[2]);
        let k2 = p[1].det(p[0]);
        [[p[0].v * k1, -p[0].u * k1], [p[2].v * k2, -p[2].u * k2]]
    };
    let a = to_std(&s);
    let bm = to_std(&d);
    // Result = inverse(B) * A, with the adjugate standing in for the inverse.
    let badj = [[bm[1][1], -bm[0][1]], [-bm[1][0], bm[0][0]]];
    MoebiusMap::new([
        [
            badj[0][0] * a[0][0] + badj[0][1] * a[1][0],
            badj[0][0] * a[0][1] + badj[0][1] * a[1][1],
        ],
        [
            badj[1][0] * a[0][0] + badj[1][1] * a[1][0],
            badj[1][0] * a[0][1] + badj[1][1] * a[1][1],
        ],
    ])
}

/// The chord involution through pivot `p` as a boundary map, built by
/// interpolating three sampled chord images.
///
/// Its normalized trace is 0; its determinant is positive exactly when `p`
/// is inside the circle.
pub fn involution_of(c: &Circle, p: Point2, tol: &Tol) -> Result<MoebiusMap> {
    c.check_off_circle(p, tol)?;
    // Three fixed, well-spread sample angles; chord images of distinct points
    // are distinct because the chord map is injective.
    let samples = [0.9, 2.9, 4.9].map(CirclePoint::new);
    let mut src = [ExtReal::Finite(0.0); 3];
    let mut dst = [ExtReal::Finite(0.0); 3];
    for (i, s) in samples.into_iter().enumerate() {
        let img = chord_second_point(c, s, p, tol)?;
        src[i] = chart(s);
        dst[i] = chart(img);
    }
    from_triples(src, dst, tol)
}

/// Trace/determinant classification with explicit tolerance `tol` for the
/// parabolic band and the identity test.
///
/// With determinant +1: `|tr| < 2` elliptic, `|tr| = 2` parabolic (or the
/// identity when the matrix is scalar), `|tr| > 2` hyperbolic. Negative
/// determinant is `Reversing`. Never errors.
pub fn classify(f: &MoebiusMap, tol: f64) -> MoebiusClass {
    if f.det() < 0.0 {
        return MoebiusClass::Reversing;
    }
    let tr = f.trace();
    let t = Tol { geom: tol, alg: tol.min(1e-9) };
    if f.is_identity(&t) {
        return MoebiusClass::Identity;
    }
    if (tr.abs() - 2.0).abs() <= tol {
        MoebiusClass::Parabolic
    } else if tr.abs() < 2.0 {
        MoebiusClass::Elliptic { rotation_trace: tr }
    } else {
        MoebiusClass::Hyperbolic { translation_trace: tr }
    }
}

/// Boundary fixed points of a non-identity map, as circle points.
///
/// Elliptic maps have none, parabolic exactly one, hyperbolic and reversing
/// two. The identity errors with [`Error::IsIdentity`].
pub fn fixed_points(f: &MoebiusMap, tol: f64) -> Result<Vec<CirclePoint>> {
    let class = classify(f, tol);
    let [[a, b], [c, d]] = f.m;
    // Fixed directions are eigenvectors of the matrix: for eigenvalue l,
    // kernel direction of (M - l I) is (b, l - a) or (l - d, c), whichever is
    // larger.
    let eigendir = |l: f64| -> PPoint {
        let v1 = (b, l - a);
        let v2 = (l - d, c);
        let (u, v) = if v1.0.hypot(v1.1) >= v2.0.hypot(v2.1) { v1 } else { v2 };
        let n = u.hypot(v).max(1e-300);
        PPoint { u: u / n, v: v / n }
    };
    let t = Tol { geom: tol, alg: 1e-12 };
    match class {
        MoebiusClass::Identity => Err(Error::IsIdentity),
        MoebiusClass::Elliptic { .. } => Ok(vec![]),
        MoebiusClass::Parabolic => {
            let l = f.trace() / 2.0;
            Ok(vec![unchart(eigendir(l).to_ext(&t))])
        }
        MoebiusClass::Hyperbolic { .. } | MoebiusClass::Reversing => {
            let tr = f.trace();
            let disc = (tr * tr - 4.0 * f.det()).sqrt();
            // Stable quadratic roots: avoid cancellation in l = (tr +- disc)/2.
            let l1 = if tr >= 0.0 { (tr + disc) / 2.0 } else { (tr - disc) / 2.0 };
            let l2 = f.det() / l1;
            Ok(vec![
                unchart(eigendir(l1).to_ext(&t)),
                unchart(eigendir(l2).to_ext(&t)),
            ])
        }
    }
}
