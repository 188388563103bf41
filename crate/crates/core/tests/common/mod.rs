#![allow(dead_code)]

use trienc::{ConvexPolygon, Point2, SolveReport};

/// Signed distance of `x` from the directed line `a -> b`; positive on the right.
fn side_distance(a: Point2<f64>, b: Point2<f64>, x: Point2<f64>) -> f64 {
    let d = b - a;
    d.cross(a - x) / d.norm()
}

/// Containment, tangency of every side, the flush side and monotone flipping,
/// all rechecked from the triangle's vertices alone. `tol` is relative to the
/// polygon's bounding-box diagonal.
pub fn check_invariants(poly: &ConvexPolygon<f64>, report: &SolveReport<f64>, tol: f64) -> Result<(), String> {
    let scale = poly.bbox_diagonal();
    let eps = tol * scale;
    let tri = report.best;
    if tri.signed_area() <= 0.0 {
        return Err(format!("triangle not counter-clockwise: {tri:?}"));
    }
    let [a, b, c] = tri.vertices();
    let mut flush = false;
    for (i, (p, q)) in [(a, b), (b, c), (c, a)].into_iter().enumerate() {
        let ds: Vec<f64> = poly.vertices().iter().map(|&v| side_distance(p, q, v)).collect();
        let worst = ds.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if worst > eps {
            return Err(format!("side {i}: vertex outside by {worst:e}"));
        }
        if worst < -eps {
            return Err(format!("side {i}: not touching, gap {:e}", -worst));
        }
        let (s, e) = poly.edge(report.flush_edge);
        if side_distance(p, q, s).abs() <= eps && side_distance(p, q, e).abs() <= eps {
            flush = true;
        }
    }
    if !flush {
        return Err(format!("edge {} is not flush with any side", report.flush_edge));
    }
    let perim = (a.distance(b) + b.distance(c) + c.distance(a) - report.perimeter).abs();
    if perim > eps {
        return Err(format!("reported perimeter off by {perim:e}"));
    }
    for (e, trace) in report.flip_traces.iter().enumerate() {
        for w in trace.windows(2) {
            if w[1] > w[0] + eps {
                return Err(format!("edge {e}: perimeter rose from {} to {}", w[0], w[1]));
            }
        }
    }
    Ok(())
}
