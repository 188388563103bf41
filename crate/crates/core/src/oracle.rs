//! Brute-force reference solver and random test polygons.
//!
//! A triangle circumscribing a convex polygon with all three sides touching it
//! is determined by the outward normal angles of its sides. The oracle fixes
//! one normal to an edge normal, scans the other two on a midpoint grid, and
//! polishes the best cell by coordinate search with a halving step. It shares
//! no code with the wedge-closing solver beyond point arithmetic.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::geom::{ConvexPolygon, Point2, Triangle};
use crate::scalar::{Scalar, Tolerances};

pub const DEFAULT_COARSE_STEPS: usize = 720;
const REFINE_STOP: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("support lines do not bound a triangle")]
    DegenerateConfiguration,
    #[error("could not generate a convex {n}-gon after {attempts} attempts")]
    GenerationFailed { n: usize, attempts: usize },
    #[error("a polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("coarse_steps must be positive")]
    EmptyGrid,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult<F> {
    pub triangle: Triangle<F>,
    pub perimeter: F,
    /// Outward normal angles of the three sides, counter-clockwise from the
    /// first (which is an edge normal unless `free_base` was requested).
    pub angles: [F; 3],
    /// Angular spacing of the coarse grid.
    pub grid_resolution: F,
    pub refined: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub coarse_steps: usize,
    /// Search the first normal too instead of pinning it to edge normals.
    pub free_base: bool,
    pub refine: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            coarse_steps: DEFAULT_COARSE_STEPS,
            free_base: false,
            refine: true,
        }
    }
}

fn support<F: Scalar>(poly: &ConvexPolygon<F>, theta: F) -> F {
    let n = Point2::from_angle(theta);
    poly.vertices()
        .iter()
        .map(|v| v.dot(n))
        .fold(F::neg_infinity(), F::max)
}

/// Intersection of `n_a . x = h_a` and `n_b . x = h_b`.
fn meet<F: Scalar>(na: Point2<F>, ha: F, nb: Point2<F>, hb: F) -> Point2<F> {
    let det = na.cross(nb);
    Point2::new((ha * nb.y - hb * na.y) / det, (na.x * hb - nb.x * ha) / det)
}

fn angle_gap<F: Scalar>(from: F, to: F) -> F {
    let tau = F::TAU();
    let mut d = (to - from) % tau;
    if d < F::zero() {
        d += tau;
    }
    d
}

fn lines_triangle<F: Scalar>(lines: [(Point2<F>, F); 3]) -> Triangle<F> {
    let [(n1, h1), (n2, h2), (n3, h3)] = lines;
    Triangle::new(meet(n1, h1, n2, h2), meet(n2, h2, n3, h3), meet(n3, h3, n1, h1))
}

/// Triangle bounded by the supporting lines of `poly` with the given outward
/// normal angles, in that counter-clockwise order.
pub fn triangle_from_angles<F: Scalar>(
    poly: &ConvexPolygon<F>,
    angles: [F; 3],
    tol: &Tolerances<F>,
) -> Result<Triangle<F>, OracleError> {
    let pi = F::PI();
    let g1 = angle_gap(angles[0], angles[1]);
    let g2 = angle_gap(angles[1], angles[2]);
    let g3 = angle_gap(angles[2], angles[0]);
    let total = g1 + g2 + g3;
    let ok = [g1, g2, g3].iter().all(|g| g.sin() > tol.cross && *g < pi)
        && (total - F::TAU()).abs() < F::lit(1e-6);
    if !ok {
        return Err(OracleError::DegenerateConfiguration);
    }
    let lines = angles.map(|t| (Point2::from_angle(t), support(poly, t)));
    let tri = lines_triangle(lines);
    if tri.vertices().iter().all(|v| v.is_finite()) {
        Ok(tri)
    } else {
        Err(OracleError::DegenerateConfiguration)
    }
}

fn perimeter_at<F: Scalar>(poly: &ConvexPolygon<F>, a: [F; 3], tol: &Tolerances<F>) -> Option<F> {
    triangle_from_angles(poly, a, tol).ok().map(|t| t.perimeter())
}

/// Best grid cell for base normal `phi`: returns (perimeter, theta2, theta3).
fn scan_edge<F: Scalar>(poly: &ConvexPolygon<F>, phi: F, h1: F, k: usize) -> Option<(F, F, F)> {
    let pi = F::PI();
    let step = pi / F::lit(k as f64);
    let n = poly.len();
    let verts = poly.vertices();
    // Supports along 2k midpoint angles, with a pointer that only moves forward.
    let mut start = 0;
    for i in 1..n {
        if verts[i].dot(Point2::from_angle(phi + step * F::half()))
            > verts[start].dot(Point2::from_angle(phi + step * F::half()))
        {
            start = i;
        }
    }
    let mut ptr = start;
    let mut grid: Vec<(Point2<F>, F)> = Vec::with_capacity(2 * k);
    for j in 0..2 * k {
        let nrm = Point2::from_angle(phi + step * (F::lit(j as f64) + F::half()));
        let mut guard = 0;
        while guard < n && verts[(ptr + 1) % n].dot(nrm) > verts[ptr].dot(nrm) {
            ptr = (ptr + 1) % n;
            guard += 1;
        }
        grid.push((nrm, verts[ptr].dot(nrm)));
    }
    let n1 = Point2::from_angle(phi);
    let mut best: Option<(F, usize, usize)> = None;
    for j in 0..k {
        let (n2, h2) = grid[j];
        let p12 = meet(n1, h1, n2, h2);
        for kk in 0..j {
            let (n3, h3) = grid[k + kk];
            let p23 = meet(n2, h2, n3, h3);
            let p31 = meet(n3, h3, n1, h1);
            let per = p12.distance(p23) + p23.distance(p31) + p31.distance(p12);
            if per.is_finite() && best.is_none_or(|b| per < b.0) {
                best = Some((per, j, k + kk));
            }
        }
    }
    best.map(|(p, j, l)| {
        let at = |i: usize| phi + step * (F::lit(i as f64) + F::half());
        (p, at(j), at(l))
    })
}

/// Grid over all three normals, none tied to an edge. Cost grows with the
/// cube of `k`, so this is meant for small grids.
fn scan_free<F: Scalar>(poly: &ConvexPolygon<F>, k: usize) -> Option<([F; 3], F)> {
    let step = F::PI() / F::lit(k as f64);
    let m = 2 * k;
    let at = |i: usize| step * (F::lit(i as f64) + F::half());
    let grid: Vec<(Point2<F>, F)> = (0..m).map(|i| (Point2::from_angle(at(i)), support(poly, at(i)))).collect();
    let mut best: Option<(F, [usize; 3])> = None;
    for a in 0..m {
        for b in a + 1..a + k {
            for c in b + 1..b + k {
                if a + m - c >= k || c >= a + m {
                    continue;
                }
                let [(n1, h1), (n2, h2), (n3, h3)] = [grid[a], grid[b % m], grid[c % m]];
                let tri = lines_triangle([(n1, h1), (n2, h2), (n3, h3)]);
                let per = tri.perimeter();
                if per.is_finite() && best.is_none_or(|(p, _)| per < p) {
                    best = Some((per, [a, b, c]));
                }
            }
        }
    }
    best.map(|(p, idx)| (idx.map(at), p))
}

/// Coordinate search with a halving step over the free angles.
fn refine<F: Scalar>(
    poly: &ConvexPolygon<F>,
    mut a: [F; 3],
    mut best: F,
    start_step: F,
    free_base: bool,
    tol: &Tolerances<F>,
) -> ([F; 3], F) {
    let mut step = start_step;
    let stop = F::lit(REFINE_STOP);
    let coords: &[usize] = if free_base { &[0, 1, 2] } else { &[1, 2] };
    while step >= stop {
        let mut improved = false;
        for &c in coords {
            for sign in [F::one(), -F::one()] {
                let mut trial = a;
                trial[c] += sign * step;
                if let Some(p) = perimeter_at(poly, trial, tol) {
                    if p < best {
                        best = p;
                        a = trial;
                        improved = true;
                    }
                }
            }
        }
        if !improved {
            step *= F::half();
        }
    }
    (a, best)
}

/// Minimum-perimeter enclosing triangle by exhaustive search.
pub fn oracle_min_perimeter<F: Scalar>(
    poly: &ConvexPolygon<F>,
    config: &OracleConfig,
) -> Result<OracleResult<F>, OracleError> {
    if config.coarse_steps == 0 {
        return Err(OracleError::EmptyGrid);
    }
    let tol = Tolerances::<F>::default();
    let n = poly.len();
    let k = config.coarse_steps;
    let step = F::PI() / F::lit(k as f64);
    let found = if config.free_base {
        scan_free(poly, k).map(|(a, p)| {
            if config.refine {
                refine(poly, a, p, step, true, &tol)
            } else {
                (a, p)
            }
        })
    } else {
        let per_edge: Vec<Option<([F; 3], F)>> = (0..n)
            .into_par_iter()
            .map(|e| {
                let phi = poly.edge_normal(e).angle();
                let h1 = poly.vertex(e).dot(Point2::from_angle(phi));
                let (p, t2, t3) = scan_edge(poly, phi, h1, k)?;
                let a = [phi, t2, t3];
                if config.refine {
                    Some(refine(poly, a, p, step, false, &tol))
                } else {
                    Some((a, p))
                }
            })
            .collect();
        // In edge order, so ties go to the smallest edge index.
        per_edge
            .into_iter()
            .flatten()
            .fold(None, |acc: Option<([F; 3], F)>, c| match acc {
                Some(b) if b.1 <= c.1 => Some(b),
                _ => Some(c),
            })
    };
    let (angles, _) = found.ok_or(OracleError::DegenerateConfiguration)?;
    let triangle = triangle_from_angles(poly, angles, &tol)?;
    Ok(OracleResult {
        perimeter: triangle.perimeter(),
        triangle,
        angles,
        grid_resolution: step,
        refined: config.refine,
    })
}

fn hull(mut pts: Vec<Point2<f64>>) -> Vec<Point2<f64>> {
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Point2<f64>> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && (lower[lower.len() - 1] - lower[lower.len() - 2]).cross(p - lower[lower.len() - 1]) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point2<f64>> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && (upper[upper.len() - 1] - upper[upper.len() - 2]).cross(p - upper[upper.len() - 1]) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

const SMALL_N: usize = 48;
const MAX_ATTEMPTS: usize = 10_000;

/// Random strictly convex counter-clockwise polygon with exactly `n` vertices.
///
/// Small sizes take the hull of uniform points in the unit disk (the sample
/// count is tuned so the expected hull size is near `n`, and draws are
/// repeated until it matches). Larger sizes place jittered points on the unit
/// circle and apply a random stretch and rotation.
pub fn random_convex_polygon(n: usize, seed: u64) -> Result<ConvexPolygon<f64>, OracleError> {
    if n < 3 {
        return Err(OracleError::TooFewVertices(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tol = Tolerances::<f64>::default();
    let mut samples = ((n as f64 / 3.38).powi(3).round() as usize).max(n);
    for _ in 0..MAX_ATTEMPTS {
        let pts = if n <= SMALL_N {
            let raw: Vec<Point2<f64>> = (0..samples)
                .map(|_| {
                    let r = rng.gen::<f64>().sqrt();
                    let t = rng.gen::<f64>() * std::f64::consts::TAU;
                    Point2::new(r * t.cos(), r * t.sin())
                })
                .collect();
            let h = hull(raw);
            if h.len() < n {
                samples += 1 + samples / 16;
                continue;
            }
            if h.len() > n {
                samples = (samples - samples / 32).max(n);
                continue;
            }
            h
        } else {
            let stretch = rng.gen_range(0.4..1.0);
            let rot = rng.gen::<f64>() * std::f64::consts::TAU;
            (0..n)
                .map(|k| {
                    let t = std::f64::consts::TAU * (k as f64 + rng.gen_range(0.15..0.85)) / n as f64;
                    Point2::new(t.cos(), stretch * t.sin()).rotated(rot)
                })
                .collect()
        };
        if let Ok(p) = ConvexPolygon::new(pts, &tol) {
            return Ok(p);
        }
    }
    Err(OracleError::GenerationFailed {
        n,
        attempts: MAX_ATTEMPTS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_triangle_from_angles() {
        let sq = ConvexPolygon::<f64>::square(1.0);
        let pi = std::f64::consts::PI;
        let t = triangle_from_angles(&sq, [-pi / 2.0, pi / 4.0, 3.0 * pi / 4.0], &Tolerances::default()).unwrap();
        // Flush bottom, 45 degree sides: base 3, legs 1.5 * sqrt 2.
        assert!((t.perimeter() - (3.0 + 3.0 * 2f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn rejects_open_configuration() {
        let sq = ConvexPolygon::<f64>::square(1.0);
        let r = triangle_from_angles(&sq, [0.0, 0.5, 1.0], &Tolerances::default());
        assert_eq!(r.unwrap_err(), OracleError::DegenerateConfiguration);
    }

    #[test]
    fn triangle_is_its_own_optimum() {
        let tri = ConvexPolygon::<f64>::new(
            vec![Point2::new(0.0, 0.0), Point2::new(4.0, 0.0), Point2::new(1.0, 3.0)],
            &Tolerances::default(),
        )
        .unwrap();
        let r = oracle_min_perimeter(&tri, &OracleConfig::default()).unwrap();
        assert!((r.perimeter - tri.perimeter()).abs() < 1e-8, "{}", r.perimeter);
    }

    #[test]
    fn free_base_agrees_with_edge_search() {
        let poly = random_convex_polygon(9, 3).unwrap();
        let pinned = oracle_min_perimeter(&poly, &OracleConfig::default()).unwrap();
        let free = oracle_min_perimeter(
            &poly,
            &OracleConfig {
                coarse_steps: 48,
                free_base: true,
                refine: true,
            },
        )
        .unwrap();
        assert!(free.perimeter >= pinned.perimeter - 1e-7, "{} {}", free.perimeter, pinned.perimeter);
        assert!(free.perimeter <= pinned.perimeter * (1.0 + 1e-6), "{} {}", free.perimeter, pinned.perimeter);
    }

    #[test]
    fn generator_hits_requested_size_and_is_deterministic() {
        for n in [3, 4, 7, 20, 48, 49, 500] {
            let a = random_convex_polygon(n, 11).unwrap();
            let b = random_convex_polygon(n, 11).unwrap();
            assert_eq!(a.len(), n);
            assert_eq!(a, b);
        }
    }
}
