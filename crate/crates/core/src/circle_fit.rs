//! Circle fitting inside a wedge, solved with parametric lines and 2x2 linear
//! algebra so that no slope case analysis is needed.
//!
//! Four problems are covered:
//!
//! * parallel arms + a crossing line ([`fit_degenerate_wedge_line`]),
//! * parallel arms + a point between them ([`fit_degenerate_wedge_point`]),
//! * proper wedge + a crossing line, excircle opposite the apex
//!   ([`fit_wedge_line_excircle`]),
//! * proper wedge + an interior point ([`fit_wedge_point_incircle`]).
//!
//! Every solver returns the whole algebraic solution set together with the
//! geometrically selected member.

use thiserror::Error;

use crate::geom::{intersect_lines, sine_between, Circle, GeomError, ParamLine, Point2, Wedge};
use crate::scalar::{Scalar, Tolerances};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FitError {
    #[error("wedge arms are not parallel")]
    NotDegenerate,
    #[error("wedge is degenerate")]
    DegenerateWedge,
    #[error("line is parallel to the wedge arms")]
    LineParallelToArms,
    #[error("line is parallel to one of the wedge arms")]
    LineParallelToArm,
    #[error("point lies outside the wedge")]
    PointOutsideWedge,
    #[error("line does not cut a triangle from the wedge")]
    NoTriangle,
    #[error("no candidate satisfies the tangency check")]
    SelectionFailed,
    #[error("quadratic has no real roots")]
    NoRealRoots,
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// All candidate circles of a fitting problem and the selected one.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult<F> {
    pub candidates: Vec<Circle<F>>,
    /// Line parameter `t` that produced each candidate center, where the
    /// problem is parametrized along a line (empty otherwise).
    pub params: Vec<F>,
    selected: Option<usize>,
    /// Residual of the selection criterion for the selected candidate, as a distance.
    pub selection_residual: F,
}

impl<F: Scalar> FitResult<F> {
    pub fn selected(&self) -> Option<&Circle<F>> {
        self.selected.map(|i| &self.candidates[i])
    }

    pub fn selected_index(&self) -> Option<usize> {
        self.selected
    }
}

/// Midline of a strip: a point equidistant from both arms, and half the width.
///
/// The point is the midpoint between `S1` and its projection on arm 0.
fn strip_midline<F: Scalar>(w: &Wedge<F>, tol: &Tolerances<F>) -> Result<(Point2<F>, F), FitError> {
    if !w.degenerate {
        return Err(FitError::NotDegenerate);
    }
    let s1 = w.arm1.origin();
    let foot = w.arm0.project(s1);
    let r = s1.distance(foot) * F::half();
    if r <= tol.len {
        return Err(FitError::DegenerateWedge);
    }
    Ok((s1.midpoint(foot), r))
}

/// Roots of `a t^2 + b t + c` given a non-negative discriminant, ascending.
fn quadratic_roots<F: Scalar>(a: F, b: F, c: F, disc: F) -> (F, F) {
    let sq = disc.max(F::zero()).sqrt();
    let q = -(b + b.signum() * sq) * F::half();
    let (t1, t2) = if q == F::zero() {
        let t = -b / (F::two() * a);
        (t, t)
    } else {
        (q / a, c / q)
    };
    if t1 <= t2 {
        (t1, t2)
    } else {
        (t2, t1)
    }
}

/// Circles of radius `r` (half the strip width) tangent to both parallel arms
/// and to the line `AB`.
///
/// Centers are `l(t) = (E1 - S1) t + I` with
/// `t = ((B-A) x (A-I) +- |B-A| r) / ((B-A) x (E1-S1))`. The selected circle is
/// the one on the right of `A -> B`, which is the outer side when `AB` is
/// directed with the polygon on its left.
pub fn fit_degenerate_wedge_line<F: Scalar>(
    w: &Wedge<F>,
    a: Point2<F>,
    b: Point2<F>,
    tol: &Tolerances<F>,
) -> Result<FitResult<F>, FitError> {
    let (mid, r) = strip_midline(w, tol)?;
    let ab = b - a;
    let len = ab.norm();
    if len <= tol.len {
        return Err(GeomError::DegenerateLine.into());
    }
    let dir = w.arm1.direction();
    match sine_between(ab, dir, tol.len) {
        Some(s) if s.abs() > tol.cross => {}
        _ => return Err(FitError::LineParallelToArms),
    }
    let den = ab.cross(dir);
    let base = ab.cross(a - mid);
    let mut ts = [(base + len * r) / den, (base - len * r) / den];
    ts.sort_by(|x, y| x.partial_cmp(y).unwrap());

    let candidates: Vec<Circle<F>> = ts.iter().map(|t| Circle::new(dir * *t + mid, r)).collect();
    let sd = |c: &Circle<F>| ab.cross(a - c.center) / len;
    let sel = if sd(&candidates[0]) >= sd(&candidates[1]) { 0 } else { 1 };
    let selection_residual = (sd(&candidates[sel]) - r).abs();
    Ok(FitResult {
        candidates,
        params: ts.to_vec(),
        selected: Some(sel),
        selection_residual,
    })
}

/// Circles of radius `r` tangent to both parallel arms and passing through `p`.
///
/// Solves `|E1-S1|^2 t^2 + 2 (I-P).(E1-S1) t + |I-P|^2 - r^2 = 0`. With `p` on
/// an arm the roots coincide and the tangent circle is returned twice. The
/// selected circle has the larger `t`, i.e. lies further along `E1 - S1`.
pub fn fit_degenerate_wedge_point<F: Scalar>(
    w: &Wedge<F>,
    p: Point2<F>,
    tol: &Tolerances<F>,
) -> Result<FitResult<F>, FitError> {
    let (mid, r) = strip_midline(w, tol)?;
    let dir = w.arm1.direction();
    let offset = dir.cross(mid - p) / dir.norm();
    if offset.abs() > r + tol.residual {
        return Err(FitError::PointOutsideWedge);
    }
    let ip = mid - p;
    let qa = dir.norm_sq();
    let qb = F::two() * ip.dot(dir);
    let qc = ip.norm_sq() - r * r;
    let disc = if (r - offset.abs()).abs() <= tol.residual {
        F::zero()
    } else {
        qb * qb - F::lit(4.0) * qa * qc
    };
    let (t1, t2) = quadratic_roots(qa, qb, qc, disc);
    let candidates = vec![Circle::new(dir * t1 + mid, r), Circle::new(dir * t2 + mid, r)];
    let selection_residual = (candidates[1].center.distance(p) - r).abs();
    Ok(FitResult {
        candidates,
        params: vec![t1, t2],
        selected: Some(1),
        selection_residual,
    })
}

/// Apex `C` followed by one point on each arm ray.
type ApexFrame<F> = (Point2<F>, Point2<F>, Point2<F>);

/// Apex `C` and one point on each arm ray: `A = C + dir(arm0)`, `B = C + dir(arm1)`.
fn apex_frame<F: Scalar>(w: &Wedge<F>, tol: &Tolerances<F>) -> Result<ApexFrame<F>, FitError> {
    if w.degenerate {
        return Err(FitError::DegenerateWedge);
    }
    let c = w.apex(tol).ok_or(FitError::DegenerateWedge)?;
    Ok((c, c + w.arm0.direction(), c + w.arm1.direction()))
}

/// Excircle opposite the apex of the triangle that line `AB` cuts from the wedge.
///
/// `A` and `B` may be any two distinct points of the closing line; the
/// triangle vertices are its intersections with the arm lines, which must lie
/// on the arm rays. The radius comes from `r = sqrt(s (s-a)(s-b) / (s-c))`, the
/// four centers from the 2x2 systems expressing distance `+-r` to lines `AB`
/// and `AC`, and the selected center is the one whose distance to line `CB`
/// also equals `r`.
pub fn fit_wedge_line_excircle<F: Scalar>(
    w: &Wedge<F>,
    a: Point2<F>,
    b: Point2<F>,
    tol: &Tolerances<F>,
) -> Result<FitResult<F>, FitError> {
    let (c, ray_a, ray_b) = apex_frame(w, tol)?;
    let closing = ParamLine::new(a, b, tol)?;
    let arm_a = ParamLine::new(c, ray_a, tol)?;
    let arm_b = ParamLine::new(c, ray_b, tol)?;
    let a = intersect_lines(&closing, &arm_a, tol).map_err(|_| FitError::LineParallelToArm)?;
    let b = intersect_lines(&closing, &arm_b, tol).map_err(|_| FitError::LineParallelToArm)?;
    if (a - c).dot(arm_a.direction()) <= F::zero() || (b - c).dot(arm_b.direction()) <= F::zero() {
        return Err(FitError::NoTriangle);
    }

    let side_a = c.distance(b);
    let side_b = a.distance(c);
    let side_c = a.distance(b);
    let s = (side_a + side_b + side_c) * F::half();
    if side_a <= tol.len || side_b <= tol.len || s - side_c <= tol.len {
        return Err(FitError::NoTriangle);
    }
    let r = (s * (s - side_a) * (s - side_b) / (s - side_c)).sqrt();

    let ab = b - a;
    let ac = c - a;
    let det = ab.cross(ac);
    if det.abs() <= tol.cross * ab.norm() * ac.norm() {
        return Err(FitError::LineParallelToArm);
    }
    let bxa = b.cross(a);
    let cxa = c.cross(a);
    let signs = [(F::one(), F::one()), (F::one(), -F::one()), (-F::one(), F::one()), (-F::one(), -F::one())];
    let candidates: Vec<Circle<F>> = signs
        .iter()
        .map(|(s1, s2)| {
            // [-y_AB  x_AB] [x_I]   [B x A +- r |AB|]
            // [-y_AC  x_AC] [y_I] = [C x A +- r |AC|]
            let r1 = bxa + *s1 * r * side_c;
            let r2 = cxa + *s2 * r * side_b;
            let x = (r1 * ac.x - ab.x * r2) / det;
            let y = (ab.y * r2 - ac.y * r1) / -det;
            Circle::new(Point2::new(x, y), r)
        })
        .collect();

    let cb = c - b;
    let residual = |ctr: Point2<F>| ((cb.cross(b - ctr)).abs() - r * side_a).abs() / side_a;
    let beyond = |ctr: Point2<F>| closing.signed_distance(ctr) * closing.signed_distance(c) < F::zero();
    let mut best: Option<(usize, F)> = None;
    for (i, cand) in candidates.iter().enumerate() {
        let res = residual(cand.center);
        best = match best {
            None => Some((i, res)),
            Some((bi, bres)) => {
                let tie = (res - bres).abs() <= tol.residual;
                if (tie && beyond(cand.center) && !beyond(candidates[bi].center)) || (!tie && res < bres) {
                    Some((i, res))
                } else {
                    Some((bi, bres))
                }
            }
        };
    }
    let (sel, res) = best.expect("four candidates");
    if res > tol.residual * (F::one() + r) {
        return Err(FitError::SelectionFailed);
    }
    Ok(FitResult {
        candidates,
        params: Vec::new(),
        selected: Some(sel),
        selection_residual: res,
    })
}

/// Circles inscribed in the wedge and passing through `p`; the larger is selected.
///
/// Centers lie on the bisector `l(t) = (D - C) t + C`, `D = (A - B) a/(a+b) + B`,
/// and `t` solves
/// `(|D-C|^2 - ((A-C) x (D-C) / b)^2) t^2 + 2 (D-C).(C-P) t + |C-P|^2 = 0`.
pub fn fit_wedge_point_incircle<F: Scalar>(
    w: &Wedge<F>,
    p: Point2<F>,
    tol: &Tolerances<F>,
) -> Result<FitResult<F>, FitError> {
    let (c, a, b) = apex_frame(w, tol)?;
    let ca = a - c;
    let cb = b - c;
    let side_a = cb.norm();
    let side_b = ca.norm();
    // Inner side of each arm is the side holding the other arm.
    let orient = ca.cross(cb).signum();
    let d0 = orient * ca.cross(p - c) / side_b;
    let d1 = -orient * cb.cross(p - c) / side_a;
    if d0 < -tol.residual || d1 < -tol.residual {
        return Err(FitError::PointOutsideWedge);
    }

    let d = (a - b) * (side_a / (side_a + side_b)) + b;
    let dc = d - c;
    let sin_part = ca.cross(dc) / side_b;
    let qa = dc.norm_sq() - sin_part * sin_part;
    if qa <= tol.len * tol.len {
        return Err(FitError::DegenerateWedge);
    }
    let cp = c - p;
    let qb = F::two() * dc.dot(cp);
    let qc = cp.norm_sq();
    let mut disc = qb * qb - F::lit(4.0) * qa * qc;
    if disc < F::zero() {
        if disc < -tol.residual * qb * qb {
            return Err(FitError::NoRealRoots);
        }
        disc = F::zero();
    }
    let (t1, t2) = quadratic_roots(qa, qb, qc, disc);
    let circle = |t: F| {
        let center = dc * t + c;
        Circle::new(center, (ca.cross(c - center) / side_b).abs())
    };
    let mut pairs = [(t1, circle(t1)), (t2, circle(t2))];
    pairs.sort_by(|x, y| x.1.radius.partial_cmp(&y.1.radius).unwrap());
    let candidates = vec![pairs[0].1, pairs[1].1];
    let selection_residual = (candidates[1].center.distance(p) - candidates[1].radius).abs();
    Ok(FitResult {
        candidates,
        params: vec![pairs[0].0, pairs[1].0],
        selected: Some(1),
        selection_residual,
    })
}
