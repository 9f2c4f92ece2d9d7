//! Geometry toolkit for chord-chain closure problems on circles and spheres.
//!
//! The central object is the chord chain: starting from a boundary point,
//! each step jumps to the other intersection of the chord through a fixed
//! pivot. One pass through a pivot list either returns to the start for
//! every start (a porism) or for at most finitely many. The crate provides
//! the planar primitives, cross-ratio machinery, boundary maps, the
//! closure criteria, hyperbolic invariants, the fixed-point solver for
//! inscribed-polygon problems, the spherical analogue, and scene I/O.

pub mod castillon;
pub mod crossratio;
pub mod error;
pub mod geom;
pub mod hyperbolic;
pub mod moebius;
pub mod porism;
pub mod scene;
pub mod sphere;
pub mod svg;
pub mod tol;

pub use error::{Error, Result};
pub use geom::{Circle, CirclePoint, Line2, LineCircleMeet, Point2};
pub use tol::Tol;
