//! The spherical analogue: chords of the unit sphere through 3-D pivots,
//! the regular dodecahedron rescaled until its hyperbolic dihedral angles
//! are right, and the search for pivot cycles whose chord holonomy is the
//! identity.
//!
//! Inside the unit ball the Klein reading applies verbatim: a face plane of
//! a polyhedron corresponds to a hyperbolic plane, and the dihedral angle
//! along an edge is computed from Lorentz-normalized plane normals in
//! Minkowski signature `(-, +, +, +)`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::tol::Tol;

/// Point of Euclidean 3-space.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }

    #[inline]
    pub fn dot(self, o: Point3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    #[inline]
    pub fn cross(self, o: Point3) -> Point3 {
        Point3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    #[inline]
    pub fn dist(self, o: Point3) -> f64 {
        (self - o).norm()
    }

    pub fn normalized(self) -> Point3 {
        let n = self.norm();
        Point3::new(self.x / n, self.y / n, self.z / n)
    }
}

impl std::ops::Add for Point3 {
    type Output = Point3;
    fn add(self, o: Point3) -> Point3 {
        Point3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl std::ops::Sub for Point3 {
    type Output = Point3;
    fn sub(self, o: Point3) -> Point3 {
        Point3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl std::ops::Mul<f64> for Point3 {
    type Output = Point3;
    fn mul(self, s: f64) -> Point3 {
        Point3::new(self.x * s, self.y * s, self.z * s)
    }
}

/// Point on the unit sphere, kept normalized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint(Point3);

impl SpherePoint {
    /// Normalizes a nonzero vector onto the sphere.
    pub fn new(p: Point3) -> Result<SpherePoint> {
        let n = p.norm();
        if n <= 1e-12 || !n.is_finite() {
            return Err(Error::ValidationError {
                field: "sphere point".into(),
                message: "cannot normalize a (near-)zero vector".into(),
            });
        }
        Ok(SpherePoint(p * (1.0 / n)))
    }

    #[inline]
    pub fn point(self) -> Point3 {
        self.0
    }

    /// Geodesic (great-circle) distance to another sphere point, in `[0, pi]`.
    /// atan2 of cross and dot stays accurate near 0 and pi, where acos of
    /// the dot alone loses half the significant digits.
    pub fn geodesic_dist(self, o: SpherePoint) -> f64 {
        self.0.cross(o.0).norm().atan2(self.0.dot(o.0))
    }
}

/// Second intersection of the line through sphere point `x` and pivot `p`
/// with the unit sphere. Tangent lines return `x` itself. The pivot must be
/// off the sphere.
pub fn sphere_chord_second(x: SpherePoint, p: Point3, tol: &Tol) -> Result<SpherePoint> {
    let norm = p.norm();
    if (norm - 1.0).abs() <= tol.geom {
        return Err(Error::PivotOnSphere { norm });
    }
    let xp = x.point();
    let v = p - xp;
    let vv = v.dot(v);
    let t2 = -2.0 * v.dot(xp) / vv;
    if t2 == 0.0 {
        return Ok(x);
    }
    SpherePoint::new(xp + v * t2)
}

/// A traced spherical chord chain.
#[derive(Debug, Clone)]
pub struct SphereChain {
    pub start: SpherePoint,
    pub pivots: Vec<Point3>,
    pub vertices: Vec<SpherePoint>,
    /// Geodesic distance between the final vertex and `start`.
    pub defect: f64,
}

/// Traces the spherical chord chain through the pivots in order.
pub fn sphere_trace(
    start: SpherePoint,
    pivots: &[Point3],
    tol: &Tol,
) -> Result<SphereChain> {
    let mut vertices = Vec::with_capacity(pivots.len() + 1);
    vertices.push(start);
    let mut x = start;
    for p in pivots {
        x = sphere_chord_second(x, *p, tol)?;
        vertices.push(x);
    }
    Ok(SphereChain {
        start,
        pivots: pivots.to_vec(),
        vertices,
        defect: start.geodesic_dist(x),
    })
}

const PHI: f64 = 1.618033988749894848204586834365638118;

/// The 20 vertices of the regular dodecahedron with circumradius 1:
/// `(+-1, +-1, +-1)` and the cyclic orbit of `(0, +-1/phi, +-phi)`, all
/// scaled by `1/sqrt(3)`.
fn base_dodecahedron() -> Vec<Point3> {
    let mut v = Vec::with_capacity(20);
    for sx in [-1.0, 1.0] {
        for sy in [-1.0, 1.0] {
            for sz in [-1.0, 1.0] {
                v.push(Point3::new(sx, sy, sz));
            }
        }
    }
    let (a, b) = (1.0 / PHI, PHI);
    for s1 in [-1.0, 1.0] {
        for s2 in [-1.0, 1.0] {
            v.push(Point3::new(0.0, s1 * a, s2 * b));
            v.push(Point3::new(s1 * a, s2 * b, 0.0));
            v.push(Point3::new(s2 * b, 0.0, s1 * a));
        }
    }
    let s = 1.0 / 3.0_f64.sqrt();
    v.into_iter().map(|p| p * s).collect()
}

/// Face normals of the dodecahedron: the icosahedral orbit dual to the
/// vertex set above, `(+-1, 0, +-phi)` and cyclic shifts, normalized.
/// (Each face, e.g. the pentagon through (1,1,1), (1,-1,1), (phi,0,1/phi),
/// (0,+-1/phi,phi), has its five vertices at equal height along exactly one
/// of these.)
fn face_directions() -> Vec<Point3> {
    let mut dirs = Vec::with_capacity(12);
    for s1 in [-1.0, 1.0] {
        for s2 in [-1.0, 1.0] {
            dirs.push(Point3::new(s1, 0.0, s2 * PHI).normalized());
            dirs.push(Point3::new(s2 * PHI, s1, 0.0).normalized());
            dirs.push(Point3::new(0.0, s2 * PHI, s1).normalized());
        }
    }
    dirs
}

/// Face planes (unit normal, offset) of the dodecahedron with circumradius
/// `scale`; each face holds the five vertices maximizing the normal dot.
fn face_planes(scale: f64) -> Vec<(Point3, f64)> {
    let verts: Vec<Point3> = base_dodecahedron().into_iter().map(|p| p * scale).collect();
    face_directions()
        .into_iter()
        .map(|m| {
            let mut dots: Vec<f64> = verts.iter().map(|v| v.dot(m)).collect();
            dots.sort_by(|a, b| b.partial_cmp(a).unwrap());
            // Offset = mean height of the five face vertices.
            let h = dots[..5].iter().sum::<f64>() / 5.0;
            (m, h)
        })
        .collect()
}

/// Hyperbolic dihedral angle along an edge of the dodecahedron whose
/// circumradius is `scale`, the unit sphere read as the Klein ball.
///
/// Face planes `n . x = h` are Lorentz-normalized as `(h, n)` in signature
/// `(-, +, +, +)`; the interior angle between adjacent faces is
/// `arccos((h1 h2 - n1 . n2) / sqrt((1 - h1^2)(1 - h2^2)))`. The function is
/// monotone decreasing in `scale`, from the Euclidean value
/// `arccos(-1/sqrt(5))` toward the ideal value `pi/3`.
pub fn dihedral_angle(scale: f64) -> Result<f64> {
    if !(scale > 0.0 && scale < 1.0) {
        return Err(Error::OutOfRange { scale });
    }
    let planes = face_planes(scale);
    // Pick the pair of adjacent faces with maximal normal dot (all pairs are
    // congruent by symmetry).
    let mut best = (-2.0, 0, 1);
    for i in 0..planes.len() {
        for j in (i + 1)..planes.len() {
            let d = planes[i].0.dot(planes[j].0);
            if d > best.0 {
                best = (d, i, j);
            }
        }
    }
    let (n1, h1) = planes[best.1];
    let (n2, h2) = planes[best.2];
    // Lorentz inner product of outward normals (h, n): -h1 h2 + n1.n2;
    // interior dihedral angle has cos = -<N1, N2>.
    let num = h1 * h2 - n1.dot(n2);
    let den = ((1.0 - h1 * h1) * (1.0 - h2 * h2)).sqrt();
    Ok((num / den).clamp(-1.0, 1.0).acos())
}

/// Circumradius at which the hyperbolic dodecahedron is right-angled, found
/// by bisecting [`dihedral_angle`] against `pi/2`.
pub fn right_angle_scale() -> f64 {
    let target = std::f64::consts::FRAC_PI_2;
    let (mut lo, mut hi) = (1e-6, 1.0 - 1e-9);
    // dihedral(lo) > pi/2 > dihedral(hi); bisect on the sign of the excess.
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let d = dihedral_angle(mid).expect("mid lies in (0, 1)");
        if d > target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// The 20 vertices of the right-angled hyperbolic dodecahedron in the Klein
/// ball: the base orbit scaled to [`right_angle_scale`].
pub fn right_angled_dodecahedron() -> Vec<Point3> {
    let s = right_angle_scale();
    base_dodecahedron().into_iter().map(|p| p * s).collect()
}

/// Edge adjacency of a dodecahedron vertex list: pairs at (near-)minimal
/// distance. Every vertex has exactly three neighbors.
pub fn edge_adjacency(vertices: &[Point3]) -> Vec<Vec<usize>> {
    let n = vertices.len();
    let mut min_d = f64::INFINITY;
    for i in 0..n {
        for j in (i + 1)..n {
            min_d = min_d.min(vertices[i].dist(vertices[j]));
        }
    }
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        for j in (i + 1)..n {
            if vertices[i].dist(vertices[j]) < min_d * 1.1 {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    adj
}

/// Certifies that the chord holonomy of the indexed pivot cycle is the
/// identity, by closing the spherical trace from `starts` random,
/// well-separated starting points.
pub fn certify_cycle<R: Rng + ?Sized>(
    vertices: &[Point3],
    cycle: &[usize],
    starts: usize,
    tol: &Tol,
    rng: &mut R,
) -> Result<bool> {
    let pivots: Vec<Point3> = cycle.iter().map(|&i| vertices[i]).collect();
    let mut tried = 0;
    let mut used: Vec<SpherePoint> = Vec::new();
    while used.len() < starts && tried < starts * 40 {
        tried += 1;
        let p = random_sphere_point(rng);
        if used.iter().any(|u| u.geodesic_dist(p) < 0.3) {
            continue;
        }
        let chain = sphere_trace(p, &pivots, tol)?;
        if chain.defect > 1e-8 {
            return Ok(false);
        }
        used.push(p);
    }
    Ok(used.len() >= starts.min(6))
}

pub fn random_sphere_point<R: Rng + ?Sized>(rng: &mut R) -> SpherePoint {
    loop {
        let p = Point3::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        let n = p.norm();
        if n > 0.1 && n < 1.0 {
            return SpherePoint::new(p).expect("norm checked");
        }
    }
}

/// The twelve pentagonal faces of a dodecahedron vertex list, as index
/// 5-rings: the dodecahedral edge graph has exactly twelve 5-cycles and
/// they are precisely the faces.
pub fn face_pentagons(vertices: &[Point3]) -> Vec<Vec<usize>> {
    let adj = edge_adjacency(vertices);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(5);
    for v0 in 0..vertices.len() {
        path.clear();
        path.push(v0);
        pentagon_dfs(&adj, v0, &mut path, &mut seen, &mut out);
    }
    out
}

fn pentagon_dfs(
    adj: &[Vec<usize>],
    v0: usize,
    path: &mut Vec<usize>,
    seen: &mut std::collections::BTreeSet<Vec<usize>>,
    out: &mut Vec<Vec<usize>>,
) {
    let cur = *path.last().expect("path nonempty");
    if path.len() == 5 {
        if adj[cur].contains(&v0) {
            let canon = canonical_cycle(path);
            if seen.insert(canon.clone()) {
                out.push(canon);
            }
        }
        return;
    }
    for &next in &adj[cur] {
        if !path.contains(&next) {
            path.push(next);
            pentagon_dfs(adj, v0, path, seen, out);
            path.pop();
        }
    }
}

/// Canonical form of a cyclic index sequence up to rotation and reversal.
fn canonical_cycle(cycle: &[usize]) -> Vec<usize> {
    let n = cycle.len();
    let mut best: Option<Vec<usize>> = None;
    for rev in [false, true] {
        let seq: Vec<usize> = if rev {
            cycle.iter().rev().copied().collect()
        } else {
            cycle.to_vec()
        };
        for shift in 0..n {
            let rot: Vec<usize> = (0..n).map(|k| seq[(k + shift) % n]).collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.expect("nonempty cycle")
}

/// Searches closed pivot cycles on the dodecahedron, up to `max_len`
/// pivots, whose spherical chord holonomy is the identity.
///
/// A vertex reflection factors into reflections in the three faces at the
/// vertex, so the composition over an edge pair collapses to two face
/// reflections, and those telescope when consecutive pairs hand over
/// inside a shared face. The search space mirrors that structure: walks
/// alternate an edge step (the involution pair) with a connector step
/// between co-facial vertices (possibly the same vertex). Candidates are
/// deduplicated up to rotation and reversal and certified by closure from
/// at least ten random starts. Odd cycles never certify — each chord step
/// is orientation-reversing in the ball — so every cycle found is even.
pub fn find_closed_cycles<R: Rng + ?Sized>(
    vertices: &[Point3],
    max_len: usize,
    tol: &Tol,
    rng: &mut R,
) -> Result<Vec<Vec<usize>>> {
    assert!(max_len >= 2 && max_len.is_multiple_of(2), "max_len must be even and >= 2");
    let n = vertices.len();
    let adj = edge_adjacency(vertices);
    // Co-facial step relation, self included (a connector may stand still,
    // which is how a pair cancels against its own reverse).
    let mut cofacial = vec![vec![false; n]; n];
    for f in face_pentagons(vertices) {
        for &u in &f {
            for &v in &f {
                cofacial[u][v] = true;
            }
        }
    }
    for (v, row) in cofacial.iter_mut().enumerate() {
        row[v] = true;
    }

    let mut seen = std::collections::BTreeSet::new();
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    for start in 0..n {
        stack.clear();
        stack.push(start);
        dfs_walks(
            &adj, &cofacial, vertices, start, max_len, &mut stack, &mut seen, &mut out, tol, rng,
        )?;
    }
    out.sort_by_key(|c| (c.len(), c.clone()));
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn dfs_walks<R: Rng + ?Sized>(
    adj: &[Vec<usize>],
    cofacial: &[Vec<bool>],
    vertices: &[Point3],
    start: usize,
    max_len: usize,
    stack: &mut Vec<usize>,
    seen: &mut std::collections::BTreeSet<Vec<usize>>,
    out: &mut Vec<Vec<usize>>,
    tol: &Tol,
    rng: &mut R,
) -> Result<()> {
    let cur = *stack.last().expect("stack nonempty");
    // The closing step back to the start is a connector, so candidates are
    // exactly the even-length stacks whose tail is co-facial with the start.
    if stack.len() >= 2 && stack.len().is_multiple_of(2) && cofacial[cur][start] {
        let canon = canonical_cycle(stack);
        if seen.insert(canon.clone()) && certify_cycle(vertices, stack, 10, tol, rng)? {
            out.push(canon);
        }
    }
    if stack.len() > max_len {
        return Ok(());
    }
    // Steps alternate: edge for the pair, co-facial for the connector.
    if stack.len() % 2 == 1 {
        for &next in &adj[cur] {
            stack.push(next);
            dfs_walks(adj, cofacial, vertices, start, max_len, stack, seen, out, tol, rng)?;
            stack.pop();
        }
    } else {
        for (next, &ok) in cofacial[cur].iter().enumerate() {
            if ok {
                stack.push(next);
                dfs_walks(adj, cofacial, vertices, start, max_len, stack, seen, out, tol, rng)?;
                stack.pop();
            }
        }
    }
    Ok(())
}
