//! Planar primitives: points, parametric lines, wedges, circles, triangles and
//! strictly convex polygons, plus the distance and support queries the solver
//! is built from.
//!
//! Orientation convention: polygons are counter-clockwise and every line that
//! bounds a region is directed so that the region lies on its left. With that
//! convention [`signed_point_line_distance`] is negative on the inner side and
//! positive on the outer side.

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{Scalar, Tolerances};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("line endpoints coincide")]
    DegenerateLine,
    #[error("lines are parallel")]
    ParallelLines,
    #[error("non-finite coordinate")]
    NonFinite,
}

/// Reasons a vertex ring is not an admissible convex polygon.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {0} has a non-finite coordinate")]
    NonFinite(usize),
    #[error("vertex {0} duplicates its successor")]
    DuplicateVertex(usize),
    #[error("ring is not strictly convex at vertex {0}")]
    NonConvex(usize),
    #[error("ring is clockwise")]
    Clockwise,
    #[error("ring collapses below 3 vertices after merging colinear neighbours")]
    DegenerateAfterMerge,
}

impl PolygonError {
    /// Stable, machine-readable reason code.
    pub fn code(&self) -> &'static str {
        match self {
            PolygonError::TooFewVertices(_) => "TooFewVertices",
            PolygonError::NonFinite(_) => "NonFinite",
            PolygonError::DuplicateVertex(_) => "DuplicateVertex",
            PolygonError::NonConvex(_) => "NonConvex",
            PolygonError::Clockwise => "Clockwise",
            PolygonError::DegenerateAfterMerge => "DegenerateAfterMerge",
        }
    }
}

/// A point or a free vector in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2<F> {
    pub x: F,
    pub y: F,
}

impl<F: Scalar> Point2<F> {
    #[inline]
    pub const fn new(x: F, y: F) -> Self {
        Self { x, y }
    }

    /// Builds a point, rejecting NaN and infinities.
    pub fn checked(x: F, y: F) -> Result<Self, GeomError> {
        if x.is_finite() && y.is_finite() {
            Ok(Self { x, y })
        } else {
            Err(GeomError::NonFinite)
        }
    }

    #[inline]
    pub fn zero() -> Self {
        Self::new(F::zero(), F::zero())
    }

    /// Unit vector at angle `theta` (radians).
    #[inline]
    pub fn from_angle(theta: F) -> Self {
        Self::new(theta.cos(), theta.sin())
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    #[inline]
    pub fn cross(self, other: Self) -> F {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn dot(self, other: Self) -> F {
        self.x * other.x + self.y * other.y
    }

    #[inline]
    pub fn norm_sq(self) -> F {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> F {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn distance(self, other: Self) -> F {
        (self - other).norm()
    }

    /// Counter-clockwise quarter turn.
    #[inline]
    pub fn perp(self) -> Self {
        Self::new(-self.y, self.x)
    }

    /// Unit vector in the same direction; `None` for a (near) zero vector.
    pub fn normalized(self, tol: F) -> Option<Self> {
        let n = self.norm();
        (n > tol).then(|| self / n)
    }

    #[inline]
    pub fn midpoint(self, other: Self) -> Self {
        (self + other) * F::half()
    }

    #[inline]
    pub fn angle(self) -> F {
        self.y.atan2(self.x)
    }

    /// Rotation about the origin by `theta` radians.
    pub fn rotated(self, theta: F) -> Self {
        let (s, c) = theta.sin_cos();
        Self::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn cast<G: Scalar>(self) -> Point2<G> {
        Point2::new(G::lit(self.x.to_f64_lossy()), G::lit(self.y.to_f64_lossy()))
    }
}

impl<F: Scalar> Add for Point2<F> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl<F: Scalar> AddAssign for Point2<F> {
    #[inline]
    fn add_assign(&mut self, rhs: Self) {
        self.x += rhs.x;
        self.y += rhs.y;
    }
}

impl<F: Scalar> Sub for Point2<F> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl<F: Scalar> Mul<F> for Point2<F> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: F) -> Self {
        Self::new(self.x * rhs, self.y * rhs)
    }
}

impl<F: Scalar> Div<F> for Point2<F> {
    type Output = Self;
    #[inline]
    fn div(self, rhs: F) -> Self {
        Self::new(self.x / rhs, self.y / rhs)
    }
}

impl<F: Scalar> Neg for Point2<F> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

/// Signed area of the parallelogram spanned by `u` and `v`.
#[inline]
pub fn cross2<F: Scalar>(u: Point2<F>, v: Point2<F>) -> F {
    u.cross(v)
}

/// Sine of the angle from `u` to `v`, or `None` if either vector is shorter than `tol`.
pub fn sine_between<F: Scalar>(u: Point2<F>, v: Point2<F>, tol: F) -> Option<F> {
    let nu = u.norm();
    let nv = v.norm();
    (nu > tol && nv > tol).then(|| u.cross(v) / (nu * nv))
}

/// Signed distance from `x` to the line through `a` and `b`:
/// `cross(b - a, a - x) / |b - a|`. Points left of `a -> b` are negative.
pub fn signed_point_line_distance<F: Scalar>(
    a: Point2<F>,
    b: Point2<F>,
    x: Point2<F>,
    tol: &Tolerances<F>,
) -> Result<F, GeomError> {
    let d = b - a;
    let len = d.norm();
    if len <= tol.len {
        return Err(GeomError::DegenerateLine);
    }
    Ok(d.cross(a - x) / len)
}

/// Directed line `l(t) = (Q - P) t + P` through two distinct points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamLine<F> {
    origin: Point2<F>,
    through: Point2<F>,
}

impl<F: Scalar> ParamLine<F> {
    pub fn new(origin: Point2<F>, through: Point2<F>, tol: &Tolerances<F>) -> Result<Self, GeomError> {
        if !origin.is_finite() || !through.is_finite() {
            return Err(GeomError::NonFinite);
        }
        if (through - origin).norm() <= tol.len {
            return Err(GeomError::DegenerateLine);
        }
        Ok(Self { origin, through })
    }

    /// Line through `origin` heading along `direction`.
    pub fn from_direction(
        origin: Point2<F>,
        direction: Point2<F>,
        tol: &Tolerances<F>,
    ) -> Result<Self, GeomError> {
        Self::new(origin, origin + direction, tol)
    }

    #[inline]
    pub fn origin(&self) -> Point2<F> {
        self.origin
    }

    #[inline]
    pub fn through(&self) -> Point2<F> {
        self.through
    }

    #[inline]
    pub fn direction(&self) -> Point2<F> {
        self.through - self.origin
    }

    #[inline]
    pub fn unit_direction(&self) -> Point2<F> {
        let d = self.direction();
        d / d.norm()
    }

    /// Unit normal pointing to the right of the direction (the outer side).
    #[inline]
    pub fn outward_normal(&self) -> Point2<F> {
        -self.unit_direction().perp()
    }

    #[inline]
    pub fn eval(&self, t: F) -> Point2<F> {
        if t == F::zero() {
            return self.origin;
        }
        if t == F::one() {
            return self.through;
        }
        self.direction() * t + self.origin
    }

    /// Parameter of the orthogonal projection of `x` onto the line.
    pub fn param_of(&self, x: Point2<F>) -> F {
        let d = self.direction();
        (x - self.origin).dot(d) / d.norm_sq()
    }

    pub fn project(&self, x: Point2<F>) -> Point2<F> {
        self.eval(self.param_of(x))
    }

    /// Signed distance, positive on the right (outer) side.
    pub fn signed_distance(&self, x: Point2<F>) -> F {
        let d = self.direction();
        d.cross(self.origin - x) / d.norm()
    }

    pub fn reversed(&self) -> Self {
        Self {
            origin: self.through,
            through: self.origin,
        }
    }

    /// The same line with its direction scaled to unit length.
    pub fn unitized(&self) -> Self {
        Self {
            origin: self.origin,
            through: self.origin + self.unit_direction(),
        }
    }

    /// Line parallel to `self`, same direction, passing through `p`.
    pub fn parallel_through(&self, p: Point2<F>) -> Self {
        Self {
            origin: p,
            through: p + self.direction(),
        }
    }
}

/// Intersection of two lines.
pub fn intersect_lines<F: Scalar>(
    l1: &ParamLine<F>,
    l2: &ParamLine<F>,
    tol: &Tolerances<F>,
) -> Result<Point2<F>, GeomError> {
    let d1 = l1.direction();
    let d2 = l2.direction();
    match sine_between(d1, d2, tol.len) {
        Some(s) if s.abs() > tol.cross => {}
        _ => return Err(GeomError::ParallelLines),
    }
    let t = (l2.origin() - l1.origin()).cross(d2) / d1.cross(d2);
    Ok(l1.eval(t))
}

/// An ordered pair of directed arms `w(S0E0, S1E1)`.
///
/// A wedge used for closing is built with [`Wedge::from_apex`], so both arms
/// start at the apex and point into the region the polygon occupies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Wedge<F> {
    pub arm0: ParamLine<F>,
    pub arm1: ParamLine<F>,
    pub degenerate: bool,
}

impl<F: Scalar> Wedge<F> {
    pub fn new(arm0: ParamLine<F>, arm1: ParamLine<F>, tol: &Tolerances<F>) -> Self {
        let s = sine_between(arm0.direction(), arm1.direction(), tol.len).unwrap_or(F::zero());
        Self {
            arm0,
            arm1,
            degenerate: s.abs() <= tol.cross,
        }
    }

    /// Wedge with apex `c` and arms `c -> a`, `c -> b`.
    pub fn from_apex(
        c: Point2<F>,
        a: Point2<F>,
        b: Point2<F>,
        tol: &Tolerances<F>,
    ) -> Result<Self, GeomError> {
        let arm0 = ParamLine::new(c, a, tol)?;
        let arm1 = ParamLine::new(c, b, tol)?;
        Ok(Self::new(arm0, arm1, tol))
    }

    /// Intersection of the arm lines; `None` for a degenerate wedge.
    pub fn apex(&self, tol: &Tolerances<F>) -> Option<Point2<F>> {
        if self.degenerate {
            return None;
        }
        intersect_lines(&self.arm0, &self.arm1, tol).ok()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle<F> {
    pub center: Point2<F>,
    pub radius: F,
}

impl<F: Scalar> Circle<F> {
    pub fn new(center: Point2<F>, radius: F) -> Self {
        Self { center, radius }
    }

    /// Point of contact with a tangent line (the foot of the center).
    pub fn tangency_point(&self, line: &ParamLine<F>) -> Point2<F> {
        line.project(self.center)
    }

    /// Absolute difference between the center-to-line distance and the radius.
    pub fn tangency_residual(&self, line: &ParamLine<F>) -> F {
        (line.signed_distance(self.center).abs() - self.radius).abs()
    }
}

/// Triangle with vertices A, B, C. Side names follow the usual convention:
/// `a = |CB|`, `b = |AC|`, `c = |AB|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Triangle<F> {
    pub a: Point2<F>,
    pub b: Point2<F>,
    pub c: Point2<F>,
}

impl<F: Scalar> Triangle<F> {
    pub fn new(a: Point2<F>, b: Point2<F>, c: Point2<F>) -> Self {
        Self { a, b, c }
    }

    /// `(a, b, c)` side lengths.
    pub fn sides(&self) -> (F, F, F) {
        (
            self.c.distance(self.b),
            self.a.distance(self.c),
            self.a.distance(self.b),
        )
    }

    pub fn perimeter(&self) -> F {
        let (a, b, c) = self.sides();
        a + b + c
    }

    pub fn semiperimeter(&self) -> F {
        self.perimeter() * F::half()
    }

    pub fn signed_area(&self) -> F {
        (self.b - self.a).cross(self.c - self.a) * F::half()
    }

    pub fn vertices(&self) -> [Point2<F>; 3] {
        [self.a, self.b, self.c]
    }

    pub fn is_degenerate(&self, tol: &Tolerances<F>) -> bool {
        let (a, b, c) = self.sides();
        let s = (a + b + c) * F::half();
        a <= tol.len || b <= tol.len || c <= tol.len || s - a.max(b).max(c) <= tol.len
    }

    /// Side lines directed counter-clockwise, so the interior is on the left.
    pub fn side_lines(&self, tol: &Tolerances<F>) -> Result<[ParamLine<F>; 3], GeomError> {
        let [p, q, r] = if self.signed_area() >= F::zero() {
            [self.a, self.b, self.c]
        } else {
            [self.a, self.c, self.b]
        };
        Ok([
            ParamLine::new(p, q, tol)?,
            ParamLine::new(q, r, tol)?,
            ParamLine::new(r, p, tol)?,
        ])
    }

    pub fn map(&self, f: impl Fn(Point2<F>) -> Point2<F>) -> Self {
        Self::new(f(self.a), f(self.b), f(self.c))
    }
}

/// A counter-clockwise, strictly convex ring with no colinear neighbours.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexPolygon<F> {
    vertices: Vec<Point2<F>>,
}

impl<F: Scalar> ConvexPolygon<F> {
    /// Validates a ring that is already counter-clockwise and merged.
    ///
    /// Length thresholds are taken relative to the bounding-box diagonal; the
    /// turn at every vertex must have a sine above `tol.cross`, and the turns
    /// must add up to a single revolution.
    pub fn new(vertices: Vec<Point2<F>>, tol: &Tolerances<F>) -> Result<Self, PolygonError> {
        let n = vertices.len();
        if n < 3 {
            return Err(PolygonError::TooFewVertices(n));
        }
        if let Some(i) = vertices.iter().position(|v| !v.is_finite()) {
            return Err(PolygonError::NonFinite(i));
        }
        let scale = bbox_diagonal(&vertices);
        let len_tol = tol.len * scale.max(F::min_positive_value());
        for i in 0..n {
            if (vertices[(i + 1) % n] - vertices[i]).norm() <= len_tol {
                return Err(PolygonError::DuplicateVertex(i));
            }
        }
        let mut winding = F::zero();
        for i in 0..n {
            let prev = vertices[(i + n - 1) % n];
            let cur = vertices[i];
            let next = vertices[(i + 1) % n];
            let e0 = cur - prev;
            let e1 = next - cur;
            let s = e0.cross(e1) / (e0.norm() * e1.norm());
            if s <= tol.cross {
                if signed_area(&vertices) < F::zero() {
                    return Err(PolygonError::Clockwise);
                }
                return Err(PolygonError::NonConvex(i));
            }
            winding += e0.cross(e1).atan2(e0.dot(e1));
        }
        if (winding - F::TAU()).abs() > F::lit(1e-3) {
            return Err(PolygonError::NonConvex(0));
        }
        Ok(Self { vertices })
    }

    /// Axis-aligned `[0, side]^2` square, handy in tests and examples.
    pub fn square(side: F) -> Self {
        let z = F::zero();
        Self {
            vertices: vec![
                Point2::new(z, z),
                Point2::new(side, z),
                Point2::new(side, side),
                Point2::new(z, side),
            ],
        }
    }

    /// Regular polygon with vertex 0 at angle `phase`.
    pub fn regular(n: usize, circumradius: F, phase: F) -> Self {
        assert!(n >= 3);
        let step = F::TAU() / F::from_usize(n).unwrap();
        let vertices = (0..n)
            .map(|i| Point2::from_angle(phase + step * F::from_usize(i).unwrap()) * circumradius)
            .collect();
        Self { vertices }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    #[inline]
    pub fn vertices(&self) -> &[Point2<F>] {
        &self.vertices
    }

    /// Vertex `i` modulo `n`.
    #[inline]
    pub fn vertex(&self, i: usize) -> Point2<F> {
        self.vertices[i % self.vertices.len()]
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1`.
    #[inline]
    pub fn edge(&self, i: usize) -> (Point2<F>, Point2<F>) {
        (self.vertex(i), self.vertex(i + 1))
    }

    pub fn edge_line(&self, i: usize) -> ParamLine<F> {
        let (p, q) = self.edge(i);
        ParamLine { origin: p, through: q }
    }

    pub fn edge_normal(&self, i: usize) -> Point2<F> {
        self.edge_line(i).outward_normal()
    }

    pub fn perimeter(&self) -> F {
        (0..self.len()).fold(F::zero(), |acc, i| {
            let (p, q) = self.edge(i);
            acc + p.distance(q)
        })
    }

    pub fn area(&self) -> F {
        signed_area(&self.vertices)
    }

    pub fn vertex_centroid(&self) -> Point2<F> {
        let sum = self.vertices.iter().fold(Point2::zero(), |acc, v| acc + *v);
        sum / F::from_usize(self.len()).unwrap()
    }

    pub fn bbox_diagonal(&self) -> F {
        bbox_diagonal(&self.vertices)
    }

    /// Applies a point map that preserves orientation (similarities, rigid motions).
    pub fn map(&self, f: impl Fn(Point2<F>) -> Point2<F>) -> Self {
        Self {
            vertices: self.vertices.iter().map(|v| f(*v)).collect(),
        }
    }

    /// Rotates the vertex list so that vertex `k` becomes vertex 0.
    pub fn rotate_indices(&self, k: usize) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.rotate_left(k % self.len());
        Self { vertices }
    }

    pub fn into_vertices(self) -> Vec<Point2<F>> {
        self.vertices
    }

    pub fn cast<G: Scalar>(&self) -> ConvexPolygon<G> {
        ConvexPolygon {
            vertices: self.vertices.iter().map(|v| v.cast()).collect(),
        }
    }
}

pub fn signed_area<F: Scalar>(vertices: &[Point2<F>]) -> F {
    let n = vertices.len();
    let mut acc = F::zero();
    for i in 0..n {
        acc += vertices[i].cross(vertices[(i + 1) % n]);
    }
    acc * F::half()
}

pub fn bbox_diagonal<F: Scalar>(points: &[Point2<F>]) -> F {
    let Some((lo, hi)) = bounding_box(points) else {
        return F::zero();
    };
    (hi - lo).norm()
}

pub fn bounding_box<F: Scalar>(points: &[Point2<F>]) -> Option<(Point2<F>, Point2<F>)> {
    let first = *points.first()?;
    Some(points.iter().fold((first, first), |(lo, hi), p| {
        (
            Point2::new(lo.x.min(p.x), lo.y.min(p.y)),
            Point2::new(hi.x.max(p.x), hi.y.max(p.y)),
        )
    }))
}

/// Similarity taking a polygon to normalized units: vertex centroid at the
/// origin and bounding-box diagonal equal to one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normalization<F> {
    pub center: Point2<F>,
    pub scale: F,
}

impl<F: Scalar> Normalization<F> {
    pub fn for_polygon(poly: &ConvexPolygon<F>) -> Self {
        let scale = poly.bbox_diagonal();
        Self {
            center: poly.vertex_centroid(),
            scale: if scale > F::zero() { scale } else { F::one() },
        }
    }

    pub fn identity() -> Self {
        Self {
            center: Point2::zero(),
            scale: F::one(),
        }
    }

    #[inline]
    pub fn apply(&self, p: Point2<F>) -> Point2<F> {
        (p - self.center) / self.scale
    }

    #[inline]
    pub fn invert(&self, p: Point2<F>) -> Point2<F> {
        p * self.scale + self.center
    }
}

/// Supporting line whose outward normal points at angle `normal_angle`.
///
/// The line passes through the vertex maximizing `dot(v, n)` (smallest index
/// on ties) and is directed so the polygon lies on its left.
pub fn supporting_line<F: Scalar>(poly: &ConvexPolygon<F>, normal_angle: F) -> ParamLine<F> {
    let n = Point2::from_angle(normal_angle);
    let (idx, _) = poly
        .vertices()
        .iter()
        .enumerate()
        .fold((0, F::neg_infinity()), |(bi, bd), (i, v)| {
            let d = v.dot(n);
            if d > bd {
                (i, d)
            } else {
                (bi, bd)
            }
        });
    let v = poly.vertex(idx);
    ParamLine {
        origin: v,
        through: v + n.perp(),
    }
}

/// True iff every vertex is on one closed side of `l` and at least one vertex
/// is on `l`, both within `tol.residual`.
pub fn is_tangent_to_polygon<F: Scalar>(
    l: &ParamLine<F>,
    poly: &ConvexPolygon<F>,
    tol: &Tolerances<F>,
) -> bool {
    let (lo, hi) = poly
        .vertices()
        .iter()
        .map(|v| l.signed_distance(*v))
        .fold((F::infinity(), F::neg_infinity()), |(lo, hi), d| {
            (lo.min(d), hi.max(d))
        });
    let one_side = hi <= tol.residual || lo >= -tol.residual;
    let touches = hi.abs() <= tol.residual || lo.abs() <= tol.residual;
    one_side && touches
}

/// Vertex farthest from the supporting line of edge `edge_index`; the smallest
/// index wins among vertices within `tol.residual` of the maximum.
pub fn antipodal_vertex<F: Scalar>(
    poly: &ConvexPolygon<F>,
    edge_index: usize,
    tol: &Tolerances<F>,
) -> usize {
    let line = poly.edge_line(edge_index);
    let depths: Vec<F> = poly
        .vertices()
        .iter()
        .map(|v| -line.signed_distance(*v))
        .collect();
    let max = depths.iter().copied().fold(F::neg_infinity(), F::max);
    depths
        .iter()
        .position(|d| *d >= max - tol.residual)
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    type P = Point2<f64>;

    fn tol() -> Tolerances<f64> {
        Tolerances::default()
    }

    fn line(ax: f64, ay: f64, bx: f64, by: f64) -> ParamLine<f64> {
        ParamLine::new(P::new(ax, ay), P::new(bx, by), &tol()).unwrap()
    }

    #[test]
    fn cross2_examples() {
        assert_eq!(cross2(P::new(1.0, 0.0), P::new(0.0, 1.0)), 1.0);
        assert_eq!(cross2(P::new(2.0, 0.0), P::new(1.0, 0.0)), 0.0);
        assert_eq!(cross2(P::new(3.0, 4.0), P::new(4.0, 3.0)), -7.0);
    }

    #[test]
    fn line_eval_examples() {
        let l = line(0.0, 0.0, 2.0, 0.0);
        assert_eq!(l.eval(0.0), P::new(0.0, 0.0));
        assert_eq!(l.eval(1.0), P::new(2.0, 0.0));
        assert_eq!(line(0.0, 2.0, 0.0, 7.0).eval(0.5), P::new(0.0, 4.5));
    }

    #[test]
    fn degenerate_line_rejected() {
        assert_eq!(
            ParamLine::new(P::new(1.0, 1.0), P::new(1.0, 1.0), &tol()),
            Err(GeomError::DegenerateLine)
        );
        assert_eq!(
            signed_point_line_distance(P::zero(), P::zero(), P::new(1.0, 0.0), &tol()),
            Err(GeomError::DegenerateLine)
        );
    }

    #[test]
    fn signed_distance_examples() {
        let t = tol();
        let d = signed_point_line_distance(P::zero(), P::new(1.0, 0.0), P::new(0.0, 1.0), &t).unwrap();
        assert_eq!(d.abs(), 1.0);
        // left of the direction is the inner side
        assert!(d < 0.0);
        let d = signed_point_line_distance(P::zero(), P::new(1.0, 0.0), P::new(5.0, 0.0), &t).unwrap();
        assert_eq!(d, 0.0);
        let d = signed_point_line_distance(
            P::new(0.0, 16.0 / 3.0),
            P::new(4.0, 8.0),
            P::new(2.0, 4.26296581635734),
            &t,
        )
        .unwrap();
        assert_abs_diff_eq!(d.abs(), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn intersect_examples() {
        let t = tol();
        let x = intersect_lines(&line(0.0, 0.0, 1.0, 0.0), &line(0.0, 0.0, 0.0, 1.0), &t).unwrap();
        assert_eq!(x, P::zero());
        let x = intersect_lines(&line(0.0, 0.0, 1.0, 1.0), &line(0.0, 2.0, 1.0, 1.0), &t).unwrap();
        assert_abs_diff_eq!(x.x, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(x.y, 1.0, epsilon = 1e-15);
        let c = P::new(0.0, -1.57143);
        let ca = ParamLine::new(c, P::new(0.909091, -2.09091), &t).unwrap();
        let cb = ParamLine::new(c, P::new(0.0, -3.0), &t).unwrap();
        let x = intersect_lines(&ca, &cb, &t).unwrap();
        assert_abs_diff_eq!(x.x, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(x.y, -1.57143, epsilon = 1e-12);
        assert_eq!(
            intersect_lines(&line(0.0, 0.0, 1.0, 0.0), &line(0.0, 1.0, 3.0, 1.0), &t),
            Err(GeomError::ParallelLines)
        );
    }

    #[test]
    fn supporting_line_examples() {
        let t = tol();
        let sq = ConvexPolygon::square(1.0);
        let l = supporting_line(&sq, 0.0);
        assert_abs_diff_eq!(l.origin().x, 1.0);
        assert_abs_diff_eq!(l.direction().x, 0.0, epsilon = 1e-15);
        assert!(is_tangent_to_polygon(&l, &sq, &t));
        let l = supporting_line(&sq, std::f64::consts::FRAC_PI_2);
        assert_abs_diff_eq!(l.origin().y, 1.0);
        assert_abs_diff_eq!(l.direction().y, 0.0, epsilon = 1e-15);
        let hex = ConvexPolygon::regular(6, 1.0, 0.0);
        let l = supporting_line(&hex, 0.0);
        assert_eq!(l.origin(), P::new(1.0, 0.0));
        assert!(is_tangent_to_polygon(&l, &hex, &t));
    }

    #[test]
    fn tangency_examples() {
        let t = tol();
        let sq = ConvexPolygon::square(1.0);
        assert!(is_tangent_to_polygon(&line(1.0, 0.0, 1.0, 1.0), &sq, &t));
        assert!(!is_tangent_to_polygon(&line(0.5, 0.0, 0.5, 1.0), &sq, &t));
        assert!(!is_tangent_to_polygon(&line(2.0, 0.0, 2.0, 1.0), &sq, &t));
    }

    #[test]
    fn antipodal_examples() {
        let t = tol();
        let sq = ConvexPolygon::square(1.0);
        assert_eq!(antipodal_vertex(&sq, 0, &t), 2);
        let tri = ConvexPolygon::new(
            vec![P::new(0.0, 0.0), P::new(4.0, 0.0), P::new(0.0, 3.0)],
            &t,
        )
        .unwrap();
        assert_eq!(antipodal_vertex(&tri, 0, &t), 2);
        let hex = ConvexPolygon::regular(6, 1.0, 0.0);
        for e in 0..6 {
            let opp = [(e + 3) % 6, (e + 4) % 6];
            assert_eq!(antipodal_vertex(&hex, e, &t), *opp.iter().min().unwrap());
        }
    }

    #[test]
    fn polygon_validation() {
        let t = tol();
        let sq = ConvexPolygon::square(1.0f64).into_vertices();
        let mut cw = sq.clone();
        cw.reverse();
        assert_eq!(ConvexPolygon::new(cw, &t), Err(PolygonError::Clockwise));
        let bowtie = vec![P::new(0.0, 0.0), P::new(1.0, 1.0), P::new(1.0, 0.0), P::new(0.0, 1.0)];
        assert!(matches!(
            ConvexPolygon::new(bowtie, &t),
            Err(PolygonError::NonConvex(_)) | Err(PolygonError::Clockwise)
        ));
        let mut dup = sq.clone();
        dup.insert(1, P::new(0.0, 0.0));
        assert_eq!(ConvexPolygon::new(dup, &t), Err(PolygonError::DuplicateVertex(0)));
        // pentagram: all left turns, winds twice
        let star: Vec<P> = (0..5)
            .map(|i| P::from_angle(std::f64::consts::TAU * (2 * i) as f64 / 5.0))
            .collect();
        assert!(matches!(ConvexPolygon::new(star, &t), Err(PolygonError::NonConvex(_))));
        assert_eq!(
            ConvexPolygon::new(sq[..2].to_vec(), &t),
            Err(PolygonError::TooFewVertices(2))
        );
    }

    #[test]
    fn wedge_degeneracy() {
        let t = tol();
        let w = Wedge::new(line(0.0, 2.0, 0.0, 7.0), line(4.0, 4.0, 4.0, 10.0), &t);
        assert!(w.degenerate);
        assert!(w.apex(&t).is_none());
        let w = Wedge::from_apex(P::new(0.0, 0.0), P::new(1.0, 0.0), P::new(0.0, 1.0), &t).unwrap();
        assert!(!w.degenerate);
        assert_eq!(w.apex(&t), Some(P::zero()));
    }

    fn pt() -> impl Strategy<Value = P> {
        (-100.0..100.0f64, -100.0..100.0f64).prop_map(|(x, y)| P::new(x, y))
    }

    proptest! {
        #[test]
        fn cross2_antisymmetric(u in pt(), v in pt()) {
            prop_assert_eq!(cross2(u, v), -cross2(v, u));
        }

        #[test]
        fn distance_sign_and_translation(a in pt(), b in pt(), x in pt(), shift in pt()) {
            prop_assume!((b - a).norm() > 1e-3);
            let t = tol();
            let d = signed_point_line_distance(a, b, x, &t).unwrap();
            let swapped = signed_point_line_distance(b, a, x, &t).unwrap();
            prop_assert!((d + swapped).abs() <= 1e-9 * (1.0 + d.abs()));
            let moved = signed_point_line_distance(a + shift, b + shift, x + shift, &t).unwrap();
            prop_assert!((d - moved).abs() <= 1e-9 * (1.0 + d.abs()));
        }

        #[test]
        fn intersection_lies_on_both(a in pt(), b in pt(), c in pt(), d in pt()) {
            let t = tol();
            let (Ok(l1), Ok(l2)) = (ParamLine::new(a, b, &t), ParamLine::new(c, d, &t)) else {
                return Ok(());
            };
            let s = sine_between(l1.direction(), l2.direction(), 0.0).unwrap();
            prop_assume!(s.abs() > 1e-3);
            let x = intersect_lines(&l1, &l2, &t).unwrap();
            // relative to the coordinate magnitude of the inputs
            let scale = 1.0 + x.norm().max(100.0);
            prop_assert!(l1.signed_distance(x).abs() <= 1e-9 * scale);
            prop_assert!(l2.signed_distance(x).abs() <= 1e-9 * scale);
        }

        #[test]
        fn eval_param_round_trip(a in pt(), b in pt(), tt in -10.0..10.0f64) {
            let t = tol();
            let Ok(l) = ParamLine::new(a, b, &t) else { return Ok(()) };
            prop_assume!(l.direction().norm() > 1e-2);
            let back = l.param_of(l.eval(tt));
            prop_assert!((back - tt).abs() <= 1e-12 * (1.0 + a.norm().max(b.norm()) / l.direction().norm()));
        }

        #[test]
        fn supporting_line_supports(n in 3usize..20, phase in 0.0..6.3f64, theta in -7.0..7.0f64) {
            let t = tol();
            let poly = ConvexPolygon::regular(n, 1.0, phase);
            let l = supporting_line(&poly, theta);
            let max = poly.vertices().iter().map(|v| l.signed_distance(*v)).fold(f64::NEG_INFINITY, f64::max);
            prop_assert!(max <= t.residual);
            prop_assert!(max.abs() <= t.residual);
        }
    }
}
