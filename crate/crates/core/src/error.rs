//! One error enum for the whole crate.
//!
//! Every failure mode carries a stable machine-readable code (see
//! [`Error::code`]) so the CLI can report it and scripts can match on it
//! without parsing prose.

use thiserror::Error;

/// All failure modes of the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A chord pivot lies on the circle itself; the chord map is undefined there.
    #[error("pivot lies on the circle (distance to circle {dist:.3e} within tolerance)")]
    PivotOnCircle { dist: f64 },

    /// The polar line of the circle center is undefined.
    #[error("polar line undefined: point coincides with the circle center")]
    PolarUndefined,

    /// A line through the center has its pole at infinity.
    #[error("pole at infinity: line passes through the circle center")]
    PoleAtInfinity,

    /// Two of the four cross-ratio arguments coincide within tolerance.
    #[error("degenerate quadruple: arguments {i} and {j} coincide within tolerance")]
    DegenerateQuadruple { i: usize, j: usize },

    /// Input points do not lie on a common line.
    #[error("points are not collinear (max offset {offset:.3e})")]
    NotCollinear { offset: f64 },

    /// Input lines do not pass through a common point.
    #[error("lines are not concurrent (max offset {offset:.3e})")]
    NotConcurrent { offset: f64 },

    /// A projective image landed on the line at infinity.
    #[error("projective image at infinity (homogeneous w = {w:.3e})")]
    ImageAtInfinity { w: f64 },

    /// A projective map with zero determinant was requested.
    #[error("projective map is singular (det = {det:.3e})")]
    SingularMap { det: f64 },

    /// A triple for boundary-map interpolation contains coincident entries.
    #[error("degenerate triple: entries {i} and {j} coincide within tolerance")]
    DegenerateTriple { i: usize, j: usize },

    /// Fixed points of the identity map are everything; refuse to enumerate.
    #[error("map is the identity; every boundary point is fixed")]
    IsIdentity,

    /// Distance requested for a point not strictly inside the circle.
    #[error("point is not strictly interior (|p - center| = {dist:.6}, radius {radius:.6})")]
    NotInterior { dist: f64, radius: f64 },

    /// Pair invariant requested for a point on the circle.
    #[error("point lies on the circle; its pair invariant is undefined")]
    OnCircle,

    /// No right-angled regular polygon exists for n <= 4.
    #[error("no right-angled regular polygon with {n} sides exists (need n >= 5)")]
    NoSuchPolygon { n: usize },

    /// Two points are needed to span a line.
    #[error("degenerate line: the two points coincide within tolerance")]
    DegenerateLine,

    /// A pivot handed to a line-based check does not lie on the line.
    #[error("point {index} is off the reference line by {offset:.3e}")]
    NotOnLine { index: usize, offset: f64 },

    /// Every auxiliary start for the fourth-point construction degenerated.
    #[error("all auxiliary starts degenerated; configuration admits no fourth-point trace")]
    DegenerateAuxiliary,

    /// A chord pivot lies on the sphere itself.
    #[error("pivot lies on the sphere (|p| = {norm:.12})")]
    PivotOnSphere { norm: f64 },

    /// Dodecahedron scale outside the open unit interval.
    #[error("scale {scale} outside the open interval (0, 1)")]
    OutOfRange { scale: f64 },

    /// Scene file is not syntactically valid JSON (or has a wrong shape).
    #[error("parse error at line {line}, column {column}: {message}")]
    ParseError { line: usize, column: usize, message: String },

    /// Scene violates a semantic invariant; names the offending field.
    #[error("invalid scene: field `{field}`: {message}")]
    ValidationError { field: String, message: String },

    /// Operation applies only to the other scene mode.
    #[error("operation does not support `{mode}` scenes")]
    UnsupportedMode { mode: String },
}

impl Error {
    /// Stable machine-readable code, used by the CLI as `error` field.
    pub fn code(&self) -> &'static str {
        match self {
            Error::PivotOnCircle { .. } => "PivotOnCircle",
            Error::PolarUndefined => "PolarUndefined",
            Error::PoleAtInfinity => "PoleAtInfinity",
            Error::DegenerateQuadruple { .. } => "DegenerateQuadruple",
            Error::NotCollinear { .. } => "NotCollinear",
            Error::NotConcurrent { .. } => "NotConcurrent",
            Error::ImageAtInfinity { .. } => "ImageAtInfinity",
            Error::SingularMap { .. } => "SingularMap",
            Error::DegenerateTriple { .. } => "DegenerateTriple",
            Error::IsIdentity => "IsIdentity",
            Error::NotInterior { .. } => "NotInterior",
            Error::OnCircle => "OnCircle",
            Error::NoSuchPolygon { .. } => "NoSuchPolygon",
            Error::DegenerateLine => "DegenerateLine",
            Error::NotOnLine { .. } => "NotOnLine",
            Error::DegenerateAuxiliary => "DegenerateAuxiliary",
            Error::PivotOnSphere { .. } => "PivotOnSphere",
            Error::OutOfRange { .. } => "OutOfRange",
            Error::ParseError { .. } => "ParseError",
            Error::ValidationError { .. } => "ValidationError",
            Error::UnsupportedMode { .. } => "UnsupportedMode",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
