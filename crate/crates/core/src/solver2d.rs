//! Two-dimensional Müller iteration for `F₁(x, y) = F₂(x, y) = 0`.
//!
//! Every outer iteration fits the plane `z = C₁x + C₂y + C₃` through the last
//! three samples of `F₂`, intersects it with `z = 0` to get a linear relation
//! between the unknowns, and runs one-dimensional Müller on `F₁` restricted to
//! that line. The second unknown then comes either from the line itself (M1)
//! or from a one-dimensional Müller solve of `F₂` with the first unknown
//! frozen (M2).

use num_complex::Complex64;
use thiserror::Error;

use crate::muller1d::{muller_solve, MullerConfig, MullerError};
use crate::system::{EvalError, SystemSpec};
use crate::types::{ConfigError, ExitReason, Method, PointPair, RootResult, SolveConfig};

/// Plane `z = c1·x + c2·y + c3`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Plane {
    pub c1: Complex64,
    pub c2: Complex64,
    pub c3: Complex64,
}

impl Plane {
    pub fn eval(&self, p: PointPair) -> Complex64 {
        self.c1 * p.x + self.c2 * p.y + self.c3
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// `y = slope·x + intercept`.
    YofX,
    /// `x = slope·y + intercept`.
    XofY,
}

/// Zero line of a [`Plane`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineRelation {
    pub slope: Complex64,
    pub intercept: Complex64,
    pub orientation: Orientation,
}

impl LineRelation {
    /// Dependent coordinate for the given free coordinate.
    pub fn dependent(&self, free: Complex64) -> Complex64 {
        self.slope * free + self.intercept
    }

    /// The point on the line whose free coordinate is `free`.
    pub fn point(&self, free: Complex64) -> PointPair {
        match self.orientation {
            Orientation::YofX => PointPair::new(free, self.dependent(free)),
            Orientation::XofY => PointPair::new(self.dependent(free), free),
        }
    }
}

/// Last three iterates, oldest first, with both function values at each.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IterateTriple {
    pub points: [PointPair; 3],
    pub f1_vals: [Complex64; 3],
    pub f2_vals: [Complex64; 3],
}

impl IterateTriple {
    pub fn newest(&self) -> PointPair {
        self.points[2]
    }

    fn push(&mut self, p: PointPair, f1: Complex64, f2: Complex64) {
        self.points = [self.points[1], self.points[2], p];
        self.f1_vals = [self.f1_vals[1], self.f1_vals[2], f1];
        self.f2_vals = [self.f2_vals[1], self.f2_vals[2], f2];
    }

    fn values(&self, which: usize) -> [Complex64; 3] {
        if which == 0 {
            self.f1_vals
        } else {
            self.f2_vals
        }
    }
}

#[derive(Debug, Clone, Copy, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("sample points are collinear; the plane through them is not unique")]
    CollinearSamples,
    #[error("fitted plane is parallel to z = 0")]
    FlatPlane,
}

/// The three starting pairs built from one start: the start itself is the
/// newest sample, preceded by `(x₀ − δ, y₀ − δ)` and `(x₀ + δ, y₀ − δ)`.
///
/// The three points must not be collinear or the plane fit is singular, so the
/// offsets are not the symmetric `start ± (δ, δ)`.
pub fn seed_points(start: PointPair, deviation: Complex64) -> [PointPair; 3] {
    [
        PointPair::new(start.x - deviation, start.y - deviation),
        PointPair::new(start.x + deviation, start.y - deviation),
        start,
    ]
}

pub fn seed_triple(sys: &SystemSpec, start: PointPair, deviation: Complex64) -> Result<IterateTriple, EvalError> {
    let points = seed_points(start, deviation);
    let mut f1_vals = [Complex64::default(); 3];
    let mut f2_vals = [Complex64::default(); 3];
    for (i, p) in points.iter().enumerate() {
        let (a, b) = sys.eval(*p)?;
        f1_vals[i] = a;
        f2_vals[i] = b;
    }
    Ok(IterateTriple {
        points,
        f1_vals,
        f2_vals,
    })
}

/// Plane through `(xᵢ, yᵢ, vᵢ)`, `i = 0..3`.
///
/// Coordinates are shifted to the newest sample before elimination so that
/// nearly coincident iterates keep their relative precision.
pub fn fit_plane_values(points: &[PointPair; 3], values: &[Complex64; 3]) -> Result<Plane, GeometryError> {
    let origin = points[2];
    let mut m = [[Complex64::default(); 4]; 3];
    for i in 0..3 {
        m[i] = [
            points[i].x - origin.x,
            points[i].y - origin.y,
            Complex64::new(1.0, 0.0),
            values[i],
        ];
    }
    // Collinear in the complex-affine sense ⇔ the difference vectors are parallel.
    let (u, v) = ((m[0][0], m[0][1]), (m[1][0], m[1][1]));
    let det = u.0 * v.1 - u.1 * v.0;
    let scale = (u.0.norm() + u.1.norm()) * (v.0.norm() + v.1.norm());
    if !(det.norm() > 1e-13 * scale) {
        return Err(GeometryError::CollinearSamples);
    }
    let sol = gauss3(m).ok_or(GeometryError::CollinearSamples)?;
    let (c1, c2) = (sol[0], sol[1]);
    let c3 = sol[2] - c1 * origin.x - c2 * origin.y;
    Ok(Plane { c1, c2, c3 })
}

/// Plane through the three `F₂` samples of the triple.
pub fn fit_plane(t: &IterateTriple) -> Result<Plane, GeometryError> {
    fit_plane_values(&t.points, &t.f2_vals)
}

/// Gaussian elimination with partial pivoting on an augmented 3×4 system.
fn gauss3(mut m: [[Complex64; 4]; 3]) -> Option<[Complex64; 3]> {
    for col in 0..3 {
        let pivot = (col..3).max_by(|&a, &b| m[a][col].norm().total_cmp(&m[b][col].norm()))?;
        if m[pivot][col].norm() == 0.0 {
            return None;
        }
        m.swap(col, pivot);
        for row in col + 1..3 {
            let factor = m[row][col] / m[col][col];
            for k in col..4 {
                let sub = factor * m[col][k];
                m[row][k] -= sub;
            }
        }
    }
    let mut x = [Complex64::default(); 3];
    for row in (0..3).rev() {
        let mut acc = m[row][3];
        for k in row + 1..3 {
            acc -= m[row][k] * x[k];
        }
        x[row] = acc / m[row][row];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

/// Intersection of the plane with `z = 0`, solved for whichever unknown has
/// the larger coefficient.
pub fn intersect_zero(pl: &Plane) -> Result<LineRelation, GeometryError> {
    let (n1, n2) = (pl.c1.norm(), pl.c2.norm());
    let floor = 1e-14 * pl.c3.norm();
    if n1 <= floor && n2 <= floor {
        return Err(GeometryError::FlatPlane);
    }
    let rel = if n2 >= n1 {
        LineRelation {
            slope: -pl.c1 / pl.c2,
            intercept: -pl.c3 / pl.c2,
            orientation: Orientation::YofX,
        }
    } else {
        LineRelation {
            slope: -pl.c2 / pl.c1,
            intercept: -pl.c3 / pl.c1,
            orientation: Orientation::XofY,
        }
    };
    if rel.slope.is_finite() && rel.intercept.is_finite() {
        Ok(rel)
    } else {
        Err(GeometryError::FlatPlane)
    }
}

/// Ratio between the two residuals that triggers the one-function fallback.
const FALLBACK_RATIO: f64 = 1e3;
/// Iteration cap for the fallback solve in the remaining variable.
const FALLBACK_CAP: usize = 100;

/// Runs the two-dimensional Müller method (M1 or M2, from `cfg.method`).
///
/// Residuals in the result are those of the system actually iterated
/// (after preconditioning), listed in the caller's equation order.
pub fn solve(sys: &SystemSpec, start: PointPair, cfg: &SolveConfig) -> Result<RootResult, ConfigError> {
    cfg.validate()?;
    let variant = match cfg.method {
        Method::M1 | Method::M2 => cfg.method,
        _ => Method::M1,
    };
    let mut work = match &cfg.precondition {
        Some(m) => sys.apply_precondition(m)?,
        None => sys.clone(),
    };
    if cfg.swap_equations {
        work = work.swapped();
    }
    let mut run = Run::new(&work, cfg, variant, start);
    let mut result = run.execute();
    if cfg.swap_equations {
        std::mem::swap(&mut result.residual_f1, &mut result.residual_f2);
    }
    Ok(result)
}

struct Run<'a> {
    sys: &'a SystemSpec,
    cfg: &'a SolveConfig,
    variant: Method,
    start: PointPair,
    step_tol: f64,
    tol: f64,
    history: Vec<PointPair>,
    inner_total: usize,
    outer: usize,
    perturbed: bool,
}

enum Halt {
    Eval(EvalError),
    Geometry(GeometryError),
}

impl From<EvalError> for Halt {
    fn from(e: EvalError) -> Self {
        Halt::Eval(e)
    }
}

impl<'a> Run<'a> {
    fn new(sys: &'a SystemSpec, cfg: &'a SolveConfig, variant: Method, start: PointPair) -> Self {
        Self {
            sys,
            cfg,
            variant,
            start,
            step_tol: cfg.step_tol(),
            tol: 0.0,
            history: vec![start],
            inner_total: 0,
            outer: 0,
            perturbed: false,
        }
    }

    fn finish(&mut self, p: PointPair, r: (f64, f64), exit: ExitReason, message: Option<String>) -> RootResult {
        let precision_limited = exit == ExitReason::OuterCapReached
            && self.history.len() >= 2
            && self.history[self.history.len() - 1].max_dist(&self.history[self.history.len() - 2]) < self.step_tol
            && r.0.max(r.1) > self.tol;
        RootResult {
            root: p,
            residual_f1: r.0,
            residual_f2: r.1,
            outer_iterations: self.outer,
            inner_iterations_total: self.inner_total,
            exit_reason: exit,
            residual_tol: self.tol,
            precision_limited,
            history: std::mem::take(&mut self.history),
            message,
        }
    }

    fn fail_eval(&mut self, p: PointPair, e: EvalError) -> RootResult {
        self.finish(p, (f64::NAN, f64::NAN), ExitReason::EvaluationFailure, Some(e.to_string()))
    }

    fn execute(&mut self) -> RootResult {
        let mut triple = match seed_triple(self.sys, self.start, self.cfg.deviation) {
            Ok(t) => t,
            Err(e) => return self.fail_eval(self.start, e),
        };
        let scale = triple
            .f1_vals
            .iter()
            .chain(triple.f2_vals.iter())
            .map(|v| v.norm())
            .fold(0.0, f64::max);
        self.tol = self.cfg.residual_tol_for(scale);

        loop {
            let current = triple.newest();
            let current_r = (triple.f1_vals[2].norm(), triple.f2_vals[2].norm());
            if self.outer >= self.cfg.outer_cap {
                return self.finish(current, current_r, ExitReason::OuterCapReached, None);
            }
            self.outer += 1;
            // (first, second): `first` is solved along the zero line of `second`'s plane.
            let (first, second) = if self.cfg.alternate_order && self.outer % 2 == 0 {
                (1, 0)
            } else {
                (0, 1)
            };

            let next = match self.iterate(&mut triple, first, second) {
                Ok(p) => p,
                Err(Halt::Eval(e)) => return self.fail_eval(current, e),
                Err(Halt::Geometry(g)) => {
                    if !self.perturbed {
                        self.perturbed = true;
                        match self.perturb(&mut triple) {
                            Ok(()) => continue,
                            Err(e) => return self.fail_eval(current, e),
                        }
                    }
                    return self.finish(current, current_r, ExitReason::DegenerateGeometry, Some(g.to_string()));
                }
            };

            let (g1, g2) = match self.sys.eval(next) {
                Ok(v) => v,
                Err(e) => return self.fail_eval(next, e),
            };
            let r = (g1.norm(), g2.norm());
            self.history.push(next);
            let dx = (next.x - current.x).norm();
            let dy = (next.y - current.y).norm();

            if dx < self.step_tol && dy < self.step_tol && r.0 <= self.tol && r.1 <= self.tol {
                return self.finish(next, r, ExitReason::StepBelowTolerance, None);
            }

            if let Some(res) = self.try_fallback(next, r, dx, dy) {
                return res;
            }

            // Stagnation: the new iterate repeats one of the stored ones.
            let repeat_tol = self.step_tol * 1e-2;
            if triple.points.iter().any(|p| p.max_dist(&next) < repeat_tol) {
                // Returning to a stored iterate is a zero step from that iterate.
                if r.0 <= self.tol && r.1 <= self.tol {
                    return self.finish(
                        next,
                        r,
                        ExitReason::StepBelowTolerance,
                        Some("returned to a stored iterate".to_string()),
                    );
                }
                if self.perturbed {
                    return self.finish(
                        next,
                        r,
                        ExitReason::OuterCapReached,
                        Some("iterates stagnated".to_string()),
                    );
                }
                self.perturbed = true;
                triple.push(next, g1, g2);
                if let Err(e) = self.perturb(&mut triple) {
                    return self.fail_eval(next, e);
                }
                continue;
            }
            triple.push(next, g1, g2);
        }
    }

    /// One outer step: plane fit, line intersection, inner solves.
    fn iterate(&mut self, triple: &mut IterateTriple, first: usize, second: usize) -> Result<PointPair, Halt> {
        let plane = fit_plane_values(&triple.points, &triple.values(second)).map_err(Halt::Geometry)?;
        let line = intersect_zero(&plane).map_err(Halt::Geometry)?;
        let current = triple.newest();
        let sys = self.sys;

        let (free_in, other_in) = match line.orientation {
            Orientation::YofX => (current.x, current.y),
            Orientation::XofY => (current.y, current.x),
        };
        let free = self.inner(free_in, |t| sys.f(first, line.point(t)))?;
        let next = match self.variant {
            Method::M2 => {
                let with_other = |o: Complex64| match line.orientation {
                    Orientation::YofX => PointPair::new(free, o),
                    Orientation::XofY => PointPair::new(o, free),
                };
                let other = self.inner(other_in, |o| sys.f(second, with_other(o)))?;
                with_other(other)
            }
            _ => line.point(free),
        };
        Ok(next)
    }

    fn inner<F>(&mut self, x_in: Complex64, mut f: F) -> Result<Complex64, Halt>
    where
        F: FnMut(Complex64) -> Result<Complex64, EvalError>,
    {
        self.inner_with_cap(x_in, self.cfg.inner_cap, &mut f)
    }

    fn inner_with_cap<F>(&mut self, x_in: Complex64, cap: usize, f: &mut F) -> Result<Complex64, Halt>
    where
        F: FnMut(Complex64) -> Result<Complex64, EvalError>,
    {
        let mcfg = MullerConfig {
            max_iter: cap,
            digits: self.cfg.digits,
            deviation: self.cfg.deviation,
            residual_tol: self.tol,
        };
        let mut failure = None;
        let out = muller_solve(
            |t| match f(t) {
                Ok(v) => Some(v),
                Err(e) => {
                    failure = Some(e);
                    None
                }
            },
            x_in,
            &mcfg,
        );
        match out {
            Ok(o) => {
                self.inner_total += o.iterations;
                Ok(o.x_final)
            }
            Err(MullerError::EvaluationFailure(at)) => Err(Halt::Eval(failure.unwrap_or(EvalError::NonFinite {
                which: "inner function",
                at: PointPair::new(at, at),
            }))),
            Err(MullerError::Degenerate) => unreachable!("muller_solve reports degeneracy through its exit"),
        }
    }

    /// Exit item 5: one residual is already within tolerance while the other
    /// is far from it and one coordinate has stopped moving. That coordinate is
    /// frozen and the other function is solved in the remaining variable.
    fn try_fallback(&mut self, p: PointPair, r: (f64, f64), dx: f64, dy: f64) -> Option<RootResult> {
        let pending = if r.0 <= self.tol && r.1 > FALLBACK_RATIO * self.tol {
            1
        } else if r.1 <= self.tol && r.0 > FALLBACK_RATIO * self.tol {
            0
        } else {
            return None;
        };
        let freeze_x = if dx < self.step_tol && dy >= self.step_tol {
            true
        } else if dy < self.step_tol && dx >= self.step_tol {
            false
        } else {
            return None;
        };
        let sys = self.sys;
        let solved = if freeze_x {
            self.inner_with_cap(p.y, FALLBACK_CAP, &mut |y| sys.f(pending, PointPair::new(p.x, y)))
                .map(|y| PointPair::new(p.x, y))
        } else {
            self.inner_with_cap(p.x, FALLBACK_CAP, &mut |x| sys.f(pending, PointPair::new(x, p.y)))
                .map(|x| PointPair::new(x, p.y))
        };
        let fin = match solved {
            Ok(q) => q,
            Err(Halt::Eval(e)) => return Some(self.fail_eval(p, e)),
            Err(Halt::Geometry(_)) => unreachable!(),
        };
        self.history.push(fin);
        Some(match sys.residual(fin) {
            Ok(res) => self.finish(fin, res, ExitReason::OneFunctionZeroFallback, None),
            Err(e) => self.fail_eval(fin, e),
        })
    }

    /// Nudges the newest sample by `deviation / 10` and re-evaluates it.
    fn perturb(&mut self, triple: &mut IterateTriple) -> Result<(), EvalError> {
        let shift = self.cfg.deviation / 10.0;
        let p = triple.points[2];
        let q = PointPair::new(p.x + shift, p.y - shift);
        let (a, b) = self.sys.eval(q)?;
        triple.points[2] = q;
        triple.f1_vals[2] = a;
        triple.f2_vals[2] = b;
        Ok(())
    }
}
