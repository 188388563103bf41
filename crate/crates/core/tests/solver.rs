use trienc::enclosing::{solve, SolveMode};
use trienc::oracle::{oracle_min_perimeter, random_convex_polygon, OracleConfig};
use trienc::ConvexPolygon;

fn oracle(poly: &ConvexPolygon<f64>) -> f64 {
    oracle_min_perimeter(poly, &OracleConfig::default()).unwrap().perimeter
}

#[test]
fn matches_oracle_on_random_polygons() {
    for seed in 0..30u64 {
        let n = 3 + (seed as usize * 7) % 30;
        let poly = random_convex_polygon(n, seed).unwrap();
        let want = oracle(&poly);
        for mode in [SolveMode::Linear, SolveMode::QuadraticSafe] {
            let got = solve(&poly, mode).unwrap().perimeter;
            assert!(
                got >= want - 1e-6 && got <= want * (1.0 + 1e-4),
                "seed {seed} n {n} {mode:?}: solver {got} oracle {want}"
            );
        }
    }
}

#[test]
fn unit_square() {
    let sq = ConvexPolygon::<f64>::square(1.0);
    let r = solve(&sq, SolveMode::Linear).unwrap();
    assert!((r.perimeter - oracle(&sq)).abs() < 1e-7, "{}", r.perimeter);
}

#[test]
fn regular_polygons() {
    for n in [4, 5, 6, 7, 8, 12, 31] {
        let poly = ConvexPolygon::<f64>::regular(n, 1.0, 0.3);
        let want = oracle(&poly);
        let got = solve(&poly, SolveMode::Linear).unwrap().perimeter;
        assert!((got - want).abs() <= 1e-6 * want, "n {n}: {got} vs {want}");
    }
}

// Computed once with the oracle and frozen.
const UNIT_SQUARE_OPTIMUM: f64 = 6.457409902189;

#[test]
fn unit_square_frozen() {
    let sq = ConvexPolygon::<f64>::square(1.0);
    assert!((oracle(&sq) - UNIT_SQUARE_OPTIMUM).abs() < 1e-9);
    for mode in [SolveMode::Linear, SolveMode::QuadraticSafe] {
        let r = solve(&sq, mode).unwrap();
        assert!((r.perimeter - UNIT_SQUARE_OPTIMUM).abs() < 1e-9, "{}", r.perimeter);
    }
}

#[test]
fn hexagon_gives_equilateral_triangle() {
    for phase in [0.0, std::f64::consts::FRAC_PI_3, 0.4] {
        let hex = ConvexPolygon::<f64>::regular(6, 1.0, phase);
        assert!((oracle(&hex) - 9.0).abs() < 1e-6);
        let r = solve(&hex, SolveMode::Linear).unwrap();
        assert!((r.perimeter - 9.0).abs() < 1e-9, "{}", r.perimeter);
        let [a, b, c] = r.best.vertices();
        assert!((a.distance(b) - 3.0).abs() < 1e-9 && (b.distance(c) - 3.0).abs() < 1e-9);
    }
}
