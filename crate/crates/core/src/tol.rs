//! Numeric tolerances shared by every geometric predicate in the crate.
//!
//! Two scales are kept apart on purpose: `geom` is an absolute tolerance in
//! scene units (incidence, case splits, defects), `alg` is a relative
//! tolerance for algebraic identities (cross-ratio equalities, matrix
//! proportionality). Mixing them up is the classic way to make a closure
//! check pass for the wrong reason.

/// Tolerance bundle threaded through predicates that branch on geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tol {
    /// Absolute tolerance in scene units. Default `1e-9`.
    pub geom: f64,
    /// Relative tolerance for algebraic identities. Default `1e-12`.
    pub alg: f64,
}

impl Default for Tol {
    fn default() -> Self {
        Tol { geom: 1e-9, alg: 1e-12 }
    }
}

impl Tol {
    pub fn new(geom: f64, alg: f64) -> Self {
        Tol { geom, alg }
    }

    /// Relative comparison against `alg`: |x - y| <= alg * max(1, |x|, |y|).
    #[inline]
    pub fn alg_close(&self, x: f64, y: f64) -> bool {
        (x - y).abs() <= self.alg * x.abs().max(y.abs()).max(1.0)
    }
}
