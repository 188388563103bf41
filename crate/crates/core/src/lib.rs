//! Minimum-perimeter triangle enclosing a convex polygon.
//!
//! The geometry is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix it to `f64`, with `F32` variants for single precision.
//!
//! ```
//! use trienc::{solve, ConvexPolygon, SolveMode};
//!
//! let square = ConvexPolygon::<f64>::square(1.0);
//! let report = solve(&square, SolveMode::Linear).unwrap();
//! assert!((report.perimeter - 6.457409902).abs() < 1e-8);
//! ```

pub mod circle_fit;
pub mod enclosing;
pub mod geom;
pub mod io;
pub mod oracle;
pub mod scalar;

pub use circle_fit::{
    fit_degenerate_wedge_line, fit_degenerate_wedge_point, fit_wedge_line_excircle, fit_wedge_point_incircle,
    FitError, FitResult,
};
pub use enclosing::{
    bootstrap, close_wedge, solve, solve_for_edge, solve_vertices, solve_with, ClosingSide, SideKind, SolveError,
    SolveMode, SolveReport, SolverConfig,
};
pub use geom::{Circle, ConvexPolygon, GeomError, Normalization, ParamLine, Point2, PolygonError, Triangle, Wedge};
pub use oracle::{oracle_min_perimeter, random_convex_polygon, triangle_from_angles, OracleConfig, OracleError, OracleResult};
pub use scalar::{Scalar, Tolerances};

pub type Point = Point2<f64>;
pub type Line = ParamLine<f64>;
pub type Polygon = ConvexPolygon<f64>;
pub type Tri = Triangle<f64>;
pub type Report = SolveReport<f64>;

pub type PointF32 = Point2<f32>;
pub type LineF32 = ParamLine<f32>;
pub type PolygonF32 = ConvexPolygon<f32>;
pub type TriF32 = Triangle<f32>;
pub type ReportF32 = SolveReport<f32>;
