//! Minimum-perimeter enclosing triangle.
//!
//! Every polygon edge is tried as a flush side. For a given flush side the
//! second side is bootstrapped from the strip between the edge line and the
//! parallel support line through the antipodal vertex, then the wedge formed
//! by the flush side and the newest side is closed optimally, and the older
//! side is replaced ("flipping") until the perimeter stops decreasing.
//!
//! Closing a wedge means finding the supporting line whose wedge circle on
//! the far side is smallest. It touches the polygon either along an edge (the
//! excircle of the cut triangle touches the edge itself, not its extension) or
//! at a vertex (the tangent at the vertex to the larger inscribed circle
//! through it supports the polygon).
//!
//! Two scan strategies are provided. [`SolveMode::Linear`] walks the polygon
//! from a remembered position using the two acceptance tests above, and
//! carries positions from one flush edge to the next. [`SolveMode::QuadraticSafe`]
//! evaluates every edge and vertex for every wedge and keeps the valid
//! candidate with the smallest perimeter.

use serde::Serialize;
use thiserror::Error;

use crate::circle_fit::{
    fit_degenerate_wedge_line, fit_degenerate_wedge_point, fit_wedge_line_excircle,
    fit_wedge_point_incircle, FitError,
};
use crate::geom::{
    antipodal_vertex, intersect_lines, Circle, ConvexPolygon, GeomError, Normalization, ParamLine,
    Point2, PolygonError, Triangle, Wedge,
};
use crate::scalar::{Scalar, Tolerances};

pub const DEFAULT_MAX_FLIPS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveMode {
    Linear,
    QuadraticSafe,
}

impl SolveMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveMode::Linear => "linear",
            SolveMode::QuadraticSafe => "quadratic_safe",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("invalid polygon: {0}")]
    InvalidPolygon(#[from] PolygonError),
    #[error("no closing side found for flush edge {edge}")]
    NoClosingSide { edge: usize },
    #[error(transparent)]
    Fit(#[from] FitError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// How a triangle side touches the polygon.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum SideKind<F> {
    /// The side contains the whole edge with this index.
    FlushEdge(usize),
    /// The side touches a single vertex; `witness` is the wedge circle it is
    /// tangent to at that vertex.
    VertexTangent { vertex: usize, witness: Circle<F> },
}

/// A triangle side: its contact type and its line, directed so the polygon
/// lies on the left.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosingSide<F> {
    pub kind: SideKind<F>,
    pub line: ParamLine<F>,
}

impl<F: Scalar> ClosingSide<F> {
    fn map(&self, norm: &Normalization<F>) -> Self {
        let line = ParamLine::new(norm.invert(self.line.origin()), norm.invert(self.line.through()), &Tolerances {
            len: F::zero(),
            ..Tolerances::default()
        })
        .expect("similarity keeps points distinct");
        let kind = match self.kind {
            SideKind::FlushEdge(e) => SideKind::FlushEdge(e),
            SideKind::VertexTangent { vertex, witness } => SideKind::VertexTangent {
                vertex,
                witness: Circle::new(norm.invert(witness.center), witness.radius * norm.scale),
            },
        };
        Self { kind, line }
    }
}

/// Result of a full solve, in the input's coordinates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport<F> {
    pub best: Triangle<F>,
    pub perimeter: F,
    pub flush_edge: usize,
    /// Sides of `best`: the flush side followed by the other two in
    /// counter-clockwise order.
    pub sides: [ClosingSide<F>; 3],
    pub per_edge_perimeters: Vec<F>,
    pub flip_counts: Vec<usize>,
    /// Perimeter after each accepted step of every per-edge run.
    pub flip_traces: Vec<Vec<F>>,
    /// Edges whose run hit the flip cap.
    pub max_flips_exceeded: Vec<usize>,
    pub advance_steps: usize,
    pub mode: SolveMode,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig<F> {
    pub tol: Tolerances<F>,
    pub max_flips: usize,
    pub mode: SolveMode,
}

impl<F: Scalar> SolverConfig<F> {
    pub fn new(mode: SolveMode) -> Self {
        Self {
            tol: Tolerances::default(),
            max_flips: DEFAULT_MAX_FLIPS,
            mode,
        }
    }
}

impl<F: Scalar> Default for SolverConfig<F> {
    fn default() -> Self {
        Self::new(SolveMode::Linear)
    }
}

/// Solves with default tolerances.
pub fn solve<F: Scalar>(poly: &ConvexPolygon<F>, mode: SolveMode) -> Result<SolveReport<F>, SolveError> {
    solve_with(poly, &SolverConfig::new(mode))
}

/// Validates a raw counter-clockwise ring, then solves it.
pub fn solve_vertices<F: Scalar>(
    vertices: &[Point2<F>],
    config: &SolverConfig<F>,
) -> Result<SolveReport<F>, SolveError> {
    let poly = ConvexPolygon::new(vertices.to_vec(), &config.tol)?;
    solve_with(&poly, config)
}

pub fn solve_with<F: Scalar>(
    poly: &ConvexPolygon<F>,
    config: &SolverConfig<F>,
) -> Result<SolveReport<F>, SolveError> {
    let norm = Normalization::for_polygon(poly);
    let local = poly.map(|p| norm.apply(p));
    let n = local.len();
    let mut ctx = Ctx::new(&local, config.tol, config.mode);

    if n == 3 {
        let [a, b, c] = [poly.vertex(0), poly.vertex(1), poly.vertex(2)];
        let tri = Triangle::new(a, b, c);
        let p = tri.perimeter();
        let sides = [0, 1, 2].map(|e| ClosingSide {
            kind: SideKind::FlushEdge(e),
            line: poly.edge_line(e),
        });
        return Ok(SolveReport {
            best: tri,
            perimeter: p,
            flush_edge: 0,
            sides,
            per_edge_perimeters: vec![p; 3],
            flip_counts: vec![0; 3],
            flip_traces: vec![vec![p]; 3],
            max_flips_exceeded: Vec::new(),
            advance_steps: 0,
            mode: config.mode,
        });
    }

    let mut runs: Vec<EdgeRun<F>> = Vec::with_capacity(n);
    let mut previous: Option<(ClosingSide<F>, ClosingSide<F>)> = None;
    for e in 0..n {
        let run = ctx.run_edge(e, previous, config.max_flips)?;
        previous = Some((run.side1, run.side2));
        runs.push(run);
    }

    let mut best = 0;
    for (i, run) in runs.iter().enumerate() {
        if run.perimeter < runs[best].perimeter {
            best = i;
        }
    }
    let run = &runs[best];
    let tri = run.triangle.map(|p| norm.invert(p));
    let base = ClosingSide {
        kind: SideKind::FlushEdge(best),
        line: poly.edge_line(best),
    };
    Ok(SolveReport {
        perimeter: tri.perimeter(),
        best: tri,
        flush_edge: best,
        sides: [base, run.side1.map(&norm), run.side2.map(&norm)],
        per_edge_perimeters: runs.iter().map(|r| r.perimeter * norm.scale).collect(),
        flip_counts: runs.iter().map(|r| r.flips).collect(),
        flip_traces: runs
            .iter()
            .map(|r| r.trace.iter().map(|p| *p * norm.scale).collect())
            .collect(),
        max_flips_exceeded: runs
            .iter()
            .enumerate()
            .filter(|(_, r)| r.capped)
            .map(|(i, _)| i)
            .collect(),
        advance_steps: ctx.steps,
        mode: config.mode,
    })
}

/// Degenerate wedge for flush edge `edge_index`, closed on whichever end of
/// the strip leads to the smaller first triangle.
///
/// Returns the proper wedge between the flush side and the bootstrap side,
/// together with that side. Coordinates are the polygon's own.
pub fn bootstrap<F: Scalar>(
    poly: &ConvexPolygon<F>,
    edge_index: usize,
    tol: &Tolerances<F>,
) -> Result<(Wedge<F>, ClosingSide<F>), SolveError> {
    let mut ctx = Ctx::new(poly, *tol, SolveMode::QuadraticSafe);
    let boot = ctx.bootstrap(edge_index % poly.len())?;
    let frame = boot.next_frame(&poly.edge_line(edge_index), tol)?;
    Ok((frame.wedge(), boot.newest.side))
}

/// Closes a proper wedge whose arms start at the apex and point toward the
/// polygon, scanning from vertex `hint`.
pub fn close_wedge<F: Scalar>(
    poly: &ConvexPolygon<F>,
    wedge: &Wedge<F>,
    hint: usize,
    tol: &Tolerances<F>,
) -> Result<ClosingSide<F>, SolveError> {
    let apex = wedge.apex(tol).ok_or(FitError::DegenerateWedge)?;
    let (r0, r1) = (wedge.arm0.direction(), wedge.arm1.direction());
    let (ray_q, ray_p) = if r0.cross(r1) > F::zero() { (r0, r1) } else { (r1, r0) };
    let q = ParamLine::from_direction(apex, ray_q, tol)?;
    let p = ParamLine::from_direction(apex, -ray_p, tol)?;
    let frame = Frame::apex(q, p, tol).ok_or(FitError::DegenerateWedge)?;
    let mut ctx = Ctx::new(poly, *tol, SolveMode::Linear);
    ctx.close(&frame, Role::Side1, hint % poly.len())
        .map(|c| c.side)
        .ok_or(SolveError::NoClosingSide { edge: usize::MAX })
}

/// Best triangle with edge `edge_index` flush, and the number of improving flips.
pub fn solve_for_edge<F: Scalar>(
    poly: &ConvexPolygon<F>,
    edge_index: usize,
    tol: &Tolerances<F>,
) -> Result<(Triangle<F>, usize), SolveError> {
    let norm = Normalization::for_polygon(poly);
    let local = poly.map(|p| norm.apply(p));
    let mut ctx = Ctx::new(&local, *tol, SolveMode::QuadraticSafe);
    let run = ctx.run_edge(edge_index % poly.len(), None, DEFAULT_MAX_FLIPS)?;
    Ok((run.triangle.map(|p| norm.invert(p)), run.flips))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    /// Strip end ahead of the flush edge.
    CapForward,
    /// Strip end behind the flush edge.
    CapBackward,
    /// Side following the flush side counter-clockwise.
    Side1,
    /// Side preceding the flush side.
    Side2,
}

impl Role {
    fn slot(self) -> usize {
        match self {
            Role::CapForward => 0,
            Role::CapBackward => 1,
            Role::Side1 => 2,
            Role::Side2 => 3,
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Shape<F> {
    Strip {
        wedge: Wedge<F>,
        cap_dir: Point2<F>,
    },
    Apex {
        apex: Point2<F>,
        ray_q: Point2<F>,
        ray_p: Point2<F>,
        wedge: Wedge<F>,
    },
}

/// A pair of supporting lines to be closed by a third. In counter-clockwise
/// order the sides are `q`, the new side, then `p`.
#[derive(Debug, Clone, Copy)]
struct Frame<F> {
    q: ParamLine<F>,
    p: ParamLine<F>,
    shape: Shape<F>,
}

impl<F: Scalar> Frame<F> {
    fn apex(q: ParamLine<F>, p: ParamLine<F>, tol: &Tolerances<F>) -> Option<Self> {
        let apex = intersect_lines(&q, &p, tol).ok()?;
        let ray_q = q.unit_direction();
        let ray_p = -p.unit_direction();
        let wedge = Wedge::from_apex(apex, apex + ray_q, apex + ray_p, tol).ok()?;
        Some(Self {
            q,
            p,
            shape: Shape::Apex { apex, ray_q, ray_p, wedge },
        })
    }

    /// Strip between `base` and its parallel through `far`, capped ahead of
    /// (`forward`) or behind the base direction.
    fn strip(base: ParamLine<F>, far: Point2<F>, forward: bool, tol: &Tolerances<F>) -> Option<Self> {
        let d = base.unit_direction();
        let top = ParamLine::from_direction(far, -d, tol).ok()?;
        let cap_dir = if forward { d } else { -d };
        let wedge = Wedge::new(base.unitized(), ParamLine::from_direction(far, cap_dir, tol).ok()?, tol);
        let (q, p) = if forward { (base, top) } else { (top, base) };
        Some(Self {
            q,
            p,
            shape: Shape::Strip { wedge, cap_dir },
        })
    }

    fn wedge(&self) -> Wedge<F> {
        match self.shape {
            Shape::Strip { wedge, .. } | Shape::Apex { wedge, .. } => wedge,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Candidate<F> {
    side: ClosingSide<F>,
    /// Perimeter of the closed triangle, or the cap position for a strip.
    objective: F,
    /// Contact vertex, or start vertex of the contact edge.
    anchor: usize,
}

enum Status<F> {
    Accept(Candidate<F>),
    Forward,
    Backward,
}

#[derive(Debug, Clone, Copy)]
struct Placed<F> {
    side: ClosingSide<F>,
    role: Role,
}

struct Bootstrapped<F> {
    older: Placed<F>,
    newest: Placed<F>,
    perimeter: F,
}

impl<F: Scalar> Bootstrapped<F> {
    /// Wedge between the flush side and the newest side.
    fn next_frame(&self, base: &ParamLine<F>, tol: &Tolerances<F>) -> Result<Frame<F>, SolveError> {
        next_frame(base, &self.newest, tol).ok_or(FitError::DegenerateWedge.into())
    }
}

fn next_frame<F: Scalar>(base: &ParamLine<F>, newest: &Placed<F>, tol: &Tolerances<F>) -> Option<Frame<F>> {
    match newest.role {
        Role::Side1 | Role::CapForward => Frame::apex(newest.side.line, *base, tol),
        Role::Side2 | Role::CapBackward => Frame::apex(*base, newest.side.line, tol),
    }
}

fn closes(newest: Role) -> Role {
    match newest {
        Role::Side1 | Role::CapForward => Role::Side2,
        Role::Side2 | Role::CapBackward => Role::Side1,
    }
}

struct EdgeRun<F> {
    triangle: Triangle<F>,
    perimeter: F,
    side1: ClosingSide<F>,
    side2: ClosingSide<F>,
    flips: usize,
    trace: Vec<F>,
    capped: bool,
}

struct Ctx<'a, F> {
    poly: &'a ConvexPolygon<F>,
    tol: Tolerances<F>,
    mode: SolveMode,
    hints: [usize; 4],
    antipode: Option<usize>,
    steps: usize,
}

impl<'a, F: Scalar> Ctx<'a, F> {
    fn new(poly: &'a ConvexPolygon<F>, tol: Tolerances<F>, mode: SolveMode) -> Self {
        Self {
            poly,
            tol,
            mode,
            hints: [0; 4],
            antipode: None,
            steps: 0,
        }
    }

    fn n(&self) -> usize {
        self.poly.len()
    }

    fn run_edge(
        &mut self,
        e: usize,
        previous: Option<(ClosingSide<F>, ClosingSide<F>)>,
        max_flips: usize,
    ) -> Result<EdgeRun<F>, SolveError> {
        let base = self.poly.edge_line(e);
        if self.mode == SolveMode::Linear {
            // Keep the caliper in step even when the strip is not needed.
            self.antipode_of(e);
        }
        let start = match (self.mode, previous) {
            (SolveMode::Linear, Some(prev)) => self.warm_start(e, prev),
            _ => None,
        };
        let Bootstrapped { mut older, mut newest, mut perimeter } = match start {
            Some(b) => b,
            None => self.bootstrap(e)?,
        };
        let mut trace = vec![perimeter];
        let mut flips = 0;
        let mut capped = true;
        for _ in 0..max_flips {
            let Some(frame) = next_frame(&base, &newest, &self.tol) else {
                capped = false;
                break;
            };
            let role = closes(newest.role);
            let Some(cand) = self.close(&frame, role, self.hints[role.slot()]) else {
                capped = false;
                break;
            };
            if cand.objective >= perimeter - self.tol.improve {
                capped = false;
                break;
            }
            older = newest;
            newest = Placed { side: cand.side, role };
            perimeter = cand.objective;
            trace.push(perimeter);
            flips += 1;
        }
        let (s1, s2) = if newest.role == Role::Side1 { (newest, older) } else { (older, newest) };
        let triangle = triangle_from_sides(&base, &s1.side.line, &s2.side.line, &self.tol)?;
        Ok(EdgeRun {
            perimeter: triangle.perimeter(),
            triangle,
            side1: s1.side,
            side2: s2.side,
            flips,
            trace,
            capped,
        })
    }

    /// Reuses the previous flush edge's final sides as a starting wedge.
    fn warm_start(&mut self, e: usize, (side1, side2): (ClosingSide<F>, ClosingSide<F>)) -> Option<Bootstrapped<F>> {
        let base = self.poly.edge_line(e);
        let nb = base.outward_normal();
        for (side, role) in [(side2, Role::Side2), (side1, Role::Side1)] {
            let s = nb.cross(side.line.outward_normal());
            let valid = match role {
                Role::Side2 => s < -self.tol.cross,
                _ => s > self.tol.cross,
            };
            if !valid {
                continue;
            }
            let placed = Placed { side, role };
            let Some(frame) = next_frame(&base, &placed, &self.tol) else {
                continue;
            };
            let next = closes(role);
            if let Some(c) = self.close(&frame, next, self.hints[next.slot()]) {
                return Some(Bootstrapped {
                    older: placed,
                    newest: Placed { side: c.side, role: next },
                    perimeter: c.objective,
                });
            }
        }
        None
    }

    fn antipode_of(&mut self, e: usize) -> usize {
        match (self.mode, self.antipode) {
            (SolveMode::Linear, Some(mut a)) => {
                let line = self.poly.edge_line(e);
                let n = self.n();
                let depth = |i: usize| -line.signed_distance(self.poly.vertex(i));
                let mut guard = 0;
                while depth(a + 1) > depth(a) && guard < n {
                    a = (a + 1) % n;
                    guard += 1;
                }
                self.steps += guard;
                self.antipode = Some(a);
                a
            }
            _ => {
                let a = antipodal_vertex(self.poly, e, &self.tol);
                if self.mode == SolveMode::QuadraticSafe {
                    self.steps += self.n();
                }
                self.antipode = Some(a);
                a
            }
        }
    }

    fn bootstrap(&mut self, e: usize) -> Result<Bootstrapped<F>, SolveError> {
        let base = self.poly.edge_line(e);
        let far = self.poly.vertex(self.antipode_of(e));
        let mut best: Option<Bootstrapped<F>> = None;
        for (forward, role) in [(true, Role::CapForward), (false, Role::CapBackward)] {
            let frame = Frame::strip(base, far, forward, &self.tol).ok_or(SolveError::NoClosingSide { edge: e })?;
            let Some(cap) = self.close(&frame, role, self.hints[role.slot()]) else {
                continue;
            };
            let placed = Placed { side: cap.side, role };
            let Some(apex_frame) = next_frame(&base, &placed, &self.tol) else {
                continue;
            };
            let next = closes(role);
            let Some(third) = self.close(&apex_frame, next, self.hints[next.slot()]) else {
                continue;
            };
            let cap_role = if forward { Role::Side1 } else { Role::Side2 };
            let cand = Bootstrapped {
                older: Placed { side: cap.side, role: cap_role },
                newest: Placed { side: third.side, role: next },
                perimeter: third.objective,
            };
            if best.as_ref().is_none_or(|b| cand.perimeter < b.perimeter) {
                best = Some(cand);
            }
        }
        best.ok_or(SolveError::NoClosingSide { edge: e })
    }

    fn close(&mut self, frame: &Frame<F>, role: Role, hint: usize) -> Option<Candidate<F>> {
        let found = match self.mode {
            SolveMode::Linear => self.close_walk(frame, hint).or_else(|| self.close_full(frame)),
            SolveMode::QuadraticSafe => self.close_full(frame),
        }?;
        self.hints[role.slot()] = found.anchor;
        Some(found)
    }

    /// Signed distances of the neighbours of vertex `i` to `line`.
    fn neighbour_offsets(&self, line: &ParamLine<F>, i: usize) -> (F, F) {
        let n = self.n();
        (
            line.signed_distance(self.poly.vertex(i + n - 1)),
            line.signed_distance(self.poly.vertex(i + 1)),
        )
    }

    fn on_arms(&self, frame: &Frame<F>, v: Point2<F>) -> (bool, bool) {
        (
            frame.q.signed_distance(v).abs() <= self.tol.residual,
            frame.p.signed_distance(v).abs() <= self.tol.residual,
        )
    }

    /// Perimeter of the triangle `line` cuts from an apex frame, if proper.
    fn apex_perimeter(&self, frame: &Frame<F>, line: &ParamLine<F>) -> Option<F> {
        let Shape::Apex { apex, ray_q, ray_p, .. } = frame.shape else {
            return None;
        };
        let x = intersect_lines(line, &frame.q, &self.tol).ok()?;
        let y = intersect_lines(line, &frame.p, &self.tol).ok()?;
        if (x - apex).dot(ray_q) <= self.tol.len || (y - apex).dot(ray_p) <= self.tol.len {
            return None;
        }
        Some(apex.distance(x) + x.distance(y) + y.distance(apex))
    }

    /// Tangent at vertex `i` to its far wedge circle. Validity beyond a
    /// well-formed triangle (support) is left to the caller.
    fn vertex_candidate(&self, frame: &Frame<F>, i: usize) -> Option<Candidate<F>> {
        let v = self.poly.vertex(i);
        let circle = *match frame.shape {
            Shape::Strip { wedge, .. } => fit_degenerate_wedge_point(&wedge, v, &self.tol).ok()?,
            Shape::Apex { wedge, .. } => fit_wedge_point_incircle(&wedge, v, &self.tol).ok()?,
        }
        .selected()?;
        let normal = (circle.center - v).normalized(self.tol.len)?;
        let line = ParamLine::from_direction(v, normal.perp(), &self.tol).ok()?;
        let objective = match frame.shape {
            Shape::Strip { cap_dir, .. } => (normal.dot(cap_dir) > F::zero()).then(|| circle.center.dot(cap_dir))?,
            Shape::Apex { .. } => self.apex_perimeter(frame, &line)?,
        };
        Some(Candidate {
            side: ClosingSide {
                kind: SideKind::VertexTangent {
                    vertex: i % self.n(),
                    witness: circle,
                },
                line,
            },
            objective,
            anchor: i % self.n(),
        })
    }

    /// Edge `e` as closing side, with the parameter of the far circle's
    /// contact point along the edge (`None` when no circle could be fitted).
    fn edge_candidate(&self, frame: &Frame<F>, e: usize) -> Option<(Candidate<F>, Option<F>)> {
        let line = self.poly.edge_line(e);
        let (a, b) = self.poly.edge(e);
        let (objective, circle) = match frame.shape {
            Shape::Strip { wedge, cap_dir } => {
                if line.outward_normal().dot(cap_dir) <= self.tol.cross {
                    return None;
                }
                let fit = fit_degenerate_wedge_line(&wedge, a, b, &self.tol).ok()?;
                let c = *fit.selected()?;
                (c.center.dot(cap_dir), Some(c))
            }
            Shape::Apex { apex, wedge, .. } => {
                if line.signed_distance(apex) >= -self.tol.residual {
                    return None;
                }
                let perimeter = self.apex_perimeter(frame, &line)?;
                let c = fit_wedge_line_excircle(&wedge, a, b, &self.tol)
                    .ok()
                    .and_then(|f| f.selected().copied());
                (perimeter, c)
            }
        };
        let t = circle.map(|c| line.param_of(c.center));
        Some((
            Candidate {
                side: ClosingSide {
                    kind: SideKind::FlushEdge(e % self.n()),
                    line,
                },
                objective,
                anchor: e % self.n(),
            },
            t,
        ))
    }

    fn vertex_status(&self, frame: &Frame<F>, i: usize) -> Status<F> {
        let v = self.poly.vertex(i);
        match self.on_arms(frame, v) {
            (true, _) => return Status::Forward,
            (false, true) => return Status::Backward,
            _ => {}
        }
        let Some(cand) = self.vertex_candidate(frame, i) else {
            return Status::Forward;
        };
        let (prev, next) = self.neighbour_offsets(&cand.side.line, i);
        let r = self.tol.residual;
        match (prev > r, next > r) {
            (false, false) => Status::Accept(cand),
            (true, false) => Status::Backward,
            _ => Status::Forward,
        }
    }

    fn supported_vertex(&self, frame: &Frame<F>, i: usize) -> Option<Candidate<F>> {
        let v = self.poly.vertex(i);
        if self.on_arms(frame, v) != (false, false) {
            return None;
        }
        let cand = self.vertex_candidate(frame, i)?;
        let (prev, next) = self.neighbour_offsets(&cand.side.line, i);
        (prev <= self.tol.residual && next <= self.tol.residual).then_some(cand)
    }

    /// Walks from `hint` in the direction the acceptance tests point to.
    fn close_walk(&mut self, frame: &Frame<F>, hint: usize) -> Option<Candidate<F>> {
        let n = self.n();
        let mut i = hint % n;
        let forward = match self.vertex_status(frame, i) {
            Status::Accept(c) => return Some(c),
            Status::Forward => true,
            Status::Backward => false,
        };
        for _ in 0..=n {
            let j = if forward { (i + 1) % n } else { (i + n - 1) % n };
            self.steps += 1;
            match self.vertex_status(frame, j) {
                Status::Accept(c) => return Some(c),
                Status::Forward if forward => i = j,
                Status::Backward if !forward => i = j,
                _ => {
                    let e = if forward { i } else { j };
                    return self.resolve_edge(frame, e);
                }
            }
        }
        None
    }

    /// Edge between a vertex whose test points forward and one pointing back.
    fn resolve_edge(&self, frame: &Frame<F>, e: usize) -> Option<Candidate<F>> {
        let edge = self.edge_candidate(frame, e);
        if let Some((cand, Some(t))) = edge {
            if t >= -self.tol.residual && t <= F::one() + self.tol.residual {
                return Some(cand);
            }
        }
        [
            edge.map(|(c, _)| c),
            self.supported_vertex(frame, e),
            self.supported_vertex(frame, e + 1),
        ]
        .into_iter()
        .flatten()
        .fold(None, |best: Option<Candidate<F>>, c| match best {
            Some(b) if b.objective <= c.objective => Some(b),
            _ => Some(c),
        })
    }

    /// Smallest objective over every valid edge and vertex candidate.
    fn close_full(&mut self, frame: &Frame<F>) -> Option<Candidate<F>> {
        let n = self.n();
        self.steps += n;
        let mut best: Option<Candidate<F>> = None;
        let mut consider = |c: Candidate<F>| {
            if best.is_none_or(|b| c.objective < b.objective) {
                best = Some(c);
            }
        };
        for i in 0..n {
            if let Some(c) = self.supported_vertex(frame, i) {
                consider(c);
            }
            if let Some((c, _)) = self.edge_candidate(frame, i) {
                consider(c);
            }
        }
        best
    }
}

/// Triangle bounded by the flush side and the two other sides, vertices in
/// counter-clockwise order starting at the end of the flush side.
fn triangle_from_sides<F: Scalar>(
    base: &ParamLine<F>,
    side1: &ParamLine<F>,
    side2: &ParamLine<F>,
    tol: &Tolerances<F>,
) -> Result<Triangle<F>, SolveError> {
    let a = intersect_lines(base, side1, tol)?;
    let b = intersect_lines(side1, side2, tol)?;
    let c = intersect_lines(side2, base, tol)?;
    Ok(Triangle::new(a, b, c))
}
