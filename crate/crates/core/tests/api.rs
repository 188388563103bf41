mod common;

use common::check_invariants;
use trienc::{
    bootstrap, close_wedge, random_convex_polygon, solve, solve_for_edge, solve_vertices, ConvexPolygon, Point2,
    PolygonError, SideKind, SolveError, SolveMode, SolverConfig, Tolerances,
};

#[test]
fn invariants_on_random_polygons() {
    for seed in 0..200u64 {
        let n = 3 + (seed as usize * 37) % 150;
        let poly = random_convex_polygon(n, 500 + seed).unwrap();
        for mode in [SolveMode::Linear, SolveMode::QuadraticSafe] {
            let r = solve(&poly, mode).unwrap();
            check_invariants(&poly, &r, 1e-9).unwrap_or_else(|e| panic!("seed {seed} n {n} {mode:?}: {e}"));
        }
    }
}

#[test]
fn rigid_motion_and_scale_do_not_change_the_answer() {
    let poly = random_convex_polygon(17, 4).unwrap();
    let base = solve(&poly, SolveMode::Linear).unwrap().perimeter;
    for (angle, shift, scale) in [(0.7, Point2::new(3.0, -8.0), 1.0), (2.9, Point2::new(-1e3, 1e3), 1.0), (0.0, Point2::zero(), 250.0)] {
        let moved = poly.map(|p| p.rotated(angle) * scale + shift);
        let p = solve(&moved, SolveMode::Linear).unwrap().perimeter;
        assert!((p / scale - base).abs() <= 1e-9 * base, "{angle}: {p} vs {base}");
    }
}

#[test]
fn starting_vertex_does_not_matter() {
    let poly = random_convex_polygon(23, 9).unwrap();
    let base = solve(&poly, SolveMode::Linear).unwrap().perimeter;
    for k in 1..23 {
        let p = solve(&poly.rotate_indices(k), SolveMode::Linear).unwrap().perimeter;
        assert!((p - base).abs() <= 1e-9 * base);
    }
}

#[test]
fn single_precision_runs() {
    let poly = random_convex_polygon(12, 2).unwrap();
    let p64 = solve(&poly, SolveMode::Linear).unwrap().perimeter;
    let p32 = solve(&poly.cast::<f32>(), SolveMode::Linear).unwrap().perimeter;
    assert!(((p32 as f64) - p64).abs() <= 1e-4 * p64, "{p32} vs {p64}");
}

#[test]
fn report_sides_touch_as_described() {
    let poly = random_convex_polygon(30, 5).unwrap();
    let r = solve(&poly, SolveMode::Linear).unwrap();
    assert_eq!(r.sides[0].kind, SideKind::FlushEdge(r.flush_edge));
    for side in &r.sides {
        match side.kind {
            SideKind::FlushEdge(e) => {
                let (a, b) = poly.edge(e);
                assert!(side.line.signed_distance(a).abs() < 1e-9 && side.line.signed_distance(b).abs() < 1e-9);
            }
            SideKind::VertexTangent { vertex, witness } => {
                assert!(side.line.signed_distance(poly.vertex(vertex)).abs() < 1e-9);
                assert!(witness.tangency_residual(&side.line) < 1e-9);
            }
        }
    }
    assert_eq!(r.per_edge_perimeters.len(), 30);
    assert!(r.per_edge_perimeters.iter().all(|p| *p >= r.perimeter - 1e-12));
    assert!(r.max_flips_exceeded.is_empty());
}

#[test]
fn triangle_input_is_returned() {
    let pts = vec![Point2::new(0.0, 0.0), Point2::new(5.0, 1.0), Point2::new(2.0, 4.0)];
    let r = solve_vertices(&pts, &SolverConfig::new(SolveMode::Linear)).unwrap();
    assert_eq!(r.best.vertices().to_vec(), pts);
}

#[test]
fn invalid_input_is_reported() {
    let cfg = SolverConfig::<f64>::new(SolveMode::Linear);
    let two = [Point2::new(0.0, 0.0), Point2::new(1.0, 0.0)];
    assert_eq!(
        solve_vertices(&two, &cfg).unwrap_err(),
        SolveError::InvalidPolygon(PolygonError::TooFewVertices(2))
    );
    let cw = [Point2::new(0.0, 0.0), Point2::new(0.0, 1.0), Point2::new(1.0, 1.0), Point2::new(1.0, 0.0)];
    assert!(matches!(solve_vertices(&cw, &cfg), Err(SolveError::InvalidPolygon(_))));
}

#[test]
fn per_edge_pieces_fit_together() {
    let tol = Tolerances::default();
    let poly = ConvexPolygon::<f64>::regular(7, 1.0, 0.1);
    let full = solve(&poly, SolveMode::QuadraticSafe).unwrap();
    for e in 0..7 {
        let (tri, _) = solve_for_edge(&poly, e, &tol).unwrap();
        assert!((tri.perimeter() - full.per_edge_perimeters[e]).abs() < 1e-9);

        let (wedge, side) = bootstrap(&poly, e, &tol).unwrap();
        assert!(!wedge.degenerate);
        let closed = close_wedge(&poly, &wedge, 0, &tol).unwrap();
        // The bootstrap side is one arm of the wedge; the closing side is new.
        assert_ne!(closed.line, side.line);
        for v in poly.vertices() {
            assert!(closed.line.signed_distance(*v) < 1e-9);
        }
    }
}
