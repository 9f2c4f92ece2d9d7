//! Inscribed polygons with sides through prescribed pivots, solved as the
//! boundary fixed-point problem of the pivot holonomy.
//!
//! A polygon inscribed in the circle whose sides pass through `p_1 .. p_n`
//! in order is exactly a fixed point of the composed chord involutions.
//! Identity holonomy means every start works (a porism); otherwise the
//! candidate starts are the at most two boundary fixed points, each
//! confirmed by actually tracing the chain.

use rand::Rng;

use crate::error::Result;
use crate::geom::{Circle, CirclePoint, Point2};
use crate::moebius::{classify, fixed_points, MoebiusClass, MoebiusMap};
use crate::porism::{chain_map, trace_chain, ChordChain};
use crate::tol::Tol;

/// Outcome of the inscribed-polygon problem.
#[derive(Debug, Clone)]
pub enum CastillonOutcome {
    /// No inscribed polygon exists (elliptic holonomy).
    NoSolution,
    /// At most two solutions; each chain re-traced and closing within
    /// tolerance, with degenerate chains (repeated consecutive vertices)
    /// filtered out.
    Finite { solutions: Vec<ChordChain> },
    /// Identity holonomy: every boundary start closes. Carries the random
    /// starts used for verification.
    Porism { verified_starts: Vec<CirclePoint> },
}

/// Tolerance for the trace/parabolic classification band, in boundary-angle
/// units; geometric rather than algebraic scale.
fn class_tol(tol: &Tol) -> f64 {
    tol.geom
}

/// Composition of the chord involutions through the pivots, rightmost
/// (first pivot) applied first.
pub fn holonomy(c: &Circle, pivots: &[Point2], tol: &Tol) -> Result<MoebiusMap> {
    chain_map(c, pivots, tol)
}

/// Polishes a closure-defect root by Newton steps on the traced defect,
/// with a secant-estimated derivative. Falls back to the input when the
/// iteration does not improve.
fn polish_start(c: &Circle, pivots: &[Point2], th0: f64, tol: &Tol) -> f64 {
    let defect = |th: f64| -> f64 {
        match trace_chain(c, CirclePoint::new(th), pivots, tol) {
            Ok(chain) => chain.signed_defect(),
            Err(_) => f64::NAN,
        }
    };
    let mut th = th0;
    let mut f = defect(th);
    if !f.is_finite() {
        return th0;
    }
    let h = 1e-7;
    for _ in 0..8 {
        if f.abs() < 1e-15 {
            break;
        }
        let fp = (defect(th + h) - defect(th - h)) / (2.0 * h);
        if !fp.is_finite() || fp.abs() < 1e-9 {
            break;
        }
        let next = th - f / fp;
        let fn_ = defect(next);
        if !fn_.is_finite() || fn_.abs() >= f.abs() {
            break;
        }
        th = next;
        f = fn_;
    }
    th
}

fn is_degenerate_chain(chain: &ChordChain, c: &Circle, tol: &Tol) -> bool {
    chain.vertices.windows(2).any(|w| {
        let a = c.point_at(w[0]);
        let b = c.point_at(w[1]);
        a.dist(b) <= tol.geom.max(1e-9)
    })
}

/// Solves the inscribed-polygon problem for the given pivots.
///
/// Identity holonomy is double-checked by closing the chain from at least 20
/// random starts before `Porism` is returned. Otherwise each boundary fixed
/// point of the holonomy is Newton-polished on the traced defect, re-traced,
/// and kept only if the chain closes within `tol.geom` and is not
/// degenerate.
pub fn solve<R: Rng + ?Sized>(
    c: &Circle,
    pivots: &[Point2],
    tol: &Tol,
    rng: &mut R,
) -> Result<CastillonOutcome> {
    let m = holonomy(c, pivots, tol)?;
    let ct = class_tol(tol);
    if let MoebiusClass::Identity = classify(&m, ct) {
        let mut starts = Vec::with_capacity(24);
        let mut ok = true;
        for _ in 0..24 {
            let th = rng.random_range(0.0..crate::geom::TAU);
            let chain = trace_chain(c, CirclePoint::new(th), pivots, tol)?;
            if chain.defect > tol.geom.max(1e-9) {
                ok = false;
                break;
            }
            starts.push(CirclePoint::new(th));
        }
        if ok {
            return Ok(CastillonOutcome::Porism { verified_starts: starts });
        }
        // Matrix said identity but a chain failed to close: fall through to
        // the fixed-point route, which re-verifies everything by tracing.
    }
    let candidates = match classify(&m, ct) {
        MoebiusClass::Elliptic { .. } => return Ok(CastillonOutcome::NoSolution),
        MoebiusClass::Identity => Vec::new(),
        _ => fixed_points(&m, ct)?,
    };
    let mut solutions: Vec<ChordChain> = Vec::new();
    for cand in candidates {
        let th = polish_start(c, pivots, cand.theta(), tol);
        let start = CirclePoint::new(th);
        // Deduplicate fixed points that merged during polishing.
        if solutions.iter().any(|s| s.start.angular_dist(start) < 1e-6) {
            continue;
        }
        let chain = trace_chain(c, start, pivots, tol)?;
        if chain.defect <= tol.geom.max(1e-9) && !is_degenerate_chain(&chain, c, tol) {
            solutions.push(chain);
        }
    }
    if solutions.is_empty() {
        Ok(CastillonOutcome::NoSolution)
    } else {
        Ok(CastillonOutcome::Finite { solutions })
    }
}
