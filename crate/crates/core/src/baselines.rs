//! Comparison methods: two-dimensional Newton and "Broyden", the latter in the
//! sense of a Newton iteration whose Jacobian is rebuilt from forward
//! differences at every step (no rank-one update).

use num_complex::Complex64;

use crate::system::{EvalError, Jacobian, SystemSpec};
use crate::types::{ConfigError, ExitReason, Method, PointPair, RootResult, SolveConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JacobianMethod {
    Analytic,
    ForwardDifference,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JacobianEstimate {
    pub j11: Complex64,
    pub j12: Complex64,
    pub j21: Complex64,
    pub j22: Complex64,
    pub method: JacobianMethod,
    /// Difference steps in x and y (zero for analytic Jacobians).
    pub step: (f64, f64),
}

impl JacobianEstimate {
    pub fn det(&self) -> Complex64 {
        self.j11 * self.j22 - self.j12 * self.j21
    }

    fn scale(&self) -> f64 {
        (self.j11.norm() + self.j12.norm()) * (self.j21.norm() + self.j22.norm())
    }

    pub fn is_singular(&self) -> bool {
        !(self.det().norm() >= 1e-14 * self.scale()) || self.scale() == 0.0
    }

    /// `J⁻¹·(f1, f2)` by Cramer's rule.
    pub fn solve(&self, f1: Complex64, f2: Complex64) -> (Complex64, Complex64) {
        let det = self.det();
        ((self.j22 * f1 - self.j12 * f2) / det, (self.j11 * f2 - self.j21 * f1) / det)
    }

    fn from_matrix(m: Jacobian, method: JacobianMethod, step: (f64, f64)) -> Self {
        Self {
            j11: m[0][0],
            j12: m[0][1],
            j21: m[1][0],
            j22: m[1][1],
            method,
            step,
        }
    }
}

/// Forward-difference Jacobian. Steps are taken along the real direction of
/// each coordinate, which gives the complex derivative for analytic functions.
pub fn forward_difference_jacobian(
    sys: &SystemSpec,
    p: PointPair,
    at: (Complex64, Complex64),
) -> Result<JacobianEstimate, EvalError> {
    let eps = f64::EPSILON.sqrt();
    let hx = eps * (1.0 + p.x.norm());
    let hy = eps * (1.0 + p.y.norm());
    let (ax, bx) = sys.eval(PointPair::new(p.x + hx, p.y))?;
    let (ay, by) = sys.eval(PointPair::new(p.x, p.y + hy))?;
    let m = [
        [(ax - at.0) / hx, (ay - at.0) / hy],
        [(bx - at.1) / hx, (by - at.1) / hy],
    ];
    Ok(JacobianEstimate::from_matrix(m, JacobianMethod::ForwardDifference, (hx, hy)))
}

/// Newton's method. Uses the system's analytic Jacobian when it has one and
/// forward differences otherwise.
pub fn newton_solve(sys: &SystemSpec, start: PointPair, cfg: &SolveConfig) -> Result<RootResult, ConfigError> {
    run(sys, start, cfg, false)
}

/// Newton iteration with a fresh forward-difference Jacobian every step.
pub fn broyden_solve(sys: &SystemSpec, start: PointPair, cfg: &SolveConfig) -> Result<RootResult, ConfigError> {
    run(sys, start, cfg, true)
}

/// Dispatches on `cfg.method`, including the Müller variants.
pub fn solve_with(sys: &SystemSpec, start: PointPair, cfg: &SolveConfig) -> Result<RootResult, ConfigError> {
    match cfg.method {
        Method::Newton => newton_solve(sys, start, cfg),
        Method::Broyden => broyden_solve(sys, start, cfg),
        Method::M1 | Method::M2 => crate::solver2d::solve(sys, start, cfg),
    }
}

fn run(sys: &SystemSpec, start: PointPair, cfg: &SolveConfig, force_fd: bool) -> Result<RootResult, ConfigError> {
    cfg.validate()?;
    let mut work = match &cfg.precondition {
        Some(m) => sys.apply_precondition(m)?,
        None => sys.clone(),
    };
    if cfg.swap_equations {
        work = work.swapped();
    }
    let mut res = iterate(&work, start, cfg, force_fd);
    if cfg.swap_equations {
        std::mem::swap(&mut res.residual_f1, &mut res.residual_f2);
    }
    Ok(res)
}

fn iterate(sys: &SystemSpec, start: PointPair, cfg: &SolveConfig, force_fd: bool) -> RootResult {
    let step_tol = cfg.step_tol();
    let mut p = start;
    let mut history = vec![start];
    let mut iterations = 0;

    let done = |p: PointPair,
                f: (Complex64, Complex64),
                tol: f64,
                iterations: usize,
                history: Vec<PointPair>,
                exit: ExitReason,
                message: Option<String>| {
        let (r1, r2) = (f.0.norm(), f.1.norm());
        let n = history.len();
        let precision_limited = exit != ExitReason::StepBelowTolerance
            && n >= 2
            && history[n - 1].max_dist(&history[n - 2]) < step_tol
            && r1.max(r2) > tol;
        RootResult {
            root: p,
            residual_f1: r1,
            residual_f2: r2,
            outer_iterations: iterations,
            inner_iterations_total: 0,
            exit_reason: exit,
            residual_tol: tol,
            precision_limited,
            history,
            message,
        }
    };
    let eval_fail = |p: PointPair, iterations: usize, history: Vec<PointPair>, e: EvalError| RootResult {
        root: p,
        residual_f1: f64::NAN,
        residual_f2: f64::NAN,
        outer_iterations: iterations,
        inner_iterations_total: 0,
        exit_reason: ExitReason::EvaluationFailure,
        residual_tol: f64::NAN,
        precision_limited: false,
        history,
        message: Some(e.to_string()),
    };

    let mut f = match sys.eval(p) {
        Ok(v) => v,
        Err(e) => return eval_fail(p, 0, history, e),
    };
    let tol = cfg.residual_tol_for(f.0.norm().max(f.1.norm()));

    loop {
        if iterations >= cfg.outer_cap {
            return done(p, f, tol, iterations, history, ExitReason::OuterCapReached, None);
        }
        let jac = match (force_fd, sys.jacobian(p)) {
            (false, Some(Ok(m))) => JacobianEstimate::from_matrix(m, JacobianMethod::Analytic, (0.0, 0.0)),
            (false, Some(Err(e))) => return eval_fail(p, iterations, history, e),
            _ => match forward_difference_jacobian(sys, p, f) {
                Ok(j) => j,
                Err(e) => return eval_fail(p, iterations, history, e),
            },
        };
        if jac.is_singular() {
            let msg = format!("|det J| = {:.3e} at {}", jac.det().norm(), p);
            return done(p, f, tol, iterations, history, ExitReason::SingularJacobian, Some(msg));
        }
        let (dx, dy) = jac.solve(f.0, f.1);
        let next = PointPair::new(p.x - dx, p.y - dy);
        iterations += 1;
        if !next.is_finite() {
            let msg = "Newton update is not finite".to_string();
            return done(p, f, tol, iterations, history, ExitReason::SingularJacobian, Some(msg));
        }
        let fn_ = match sys.eval(next) {
            Ok(v) => v,
            Err(e) => return eval_fail(next, iterations, history, e),
        };
        history.push(next);
        let moved = next.max_dist(&p);
        p = next;
        f = fn_;
        if moved < step_tol && f.0.norm() <= tol && f.1.norm() <= tol {
            return done(p, f, tol, iterations, history, ExitReason::StepBelowTolerance, None);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn affine() -> SystemSpec {
        SystemSpec::new(
            "affine",
            |x, y| 2.0 * x + c(0.0, 1.0) * y - 3.0,
            |x, y| x - 4.0 * y + c(1.0, 1.0),
        )
    }

    #[test]
    fn newton_exact_on_affine() {
        let cfg = SolveConfig::with_method(Method::Newton);
        let r = newton_solve(&affine(), PointPair::real(5.0, -7.0), &cfg).unwrap();
        assert!(r.converged(), "{r:?}");
        // One update lands on the root; the second confirms the step test.
        assert!(r.history[1].max_dist(&r.root) < 1e-12);
    }

    #[test]
    fn broyden_matches_newton_on_affine() {
        let cfg = SolveConfig::with_method(Method::Broyden);
        let b = broyden_solve(&affine(), PointPair::real(5.0, -7.0), &cfg).unwrap();
        let n = newton_solve(&affine(), PointPair::real(5.0, -7.0), &cfg).unwrap();
        assert!(b.converged());
        assert!(b.outer_iterations <= 2 + 1);
        assert!(b.root.max_dist(&n.root) < 1e-10);
    }

    #[test]
    fn singular_jacobian_is_reported() {
        let sys = SystemSpec::new("flat", |x, _| x * 0.0 + 1.0, |_, y| y * 0.0 + 1.0);
        let cfg = SolveConfig::with_method(Method::Broyden);
        let r = broyden_solve(&sys, PointPair::real(0.0, 0.0), &cfg).unwrap();
        assert_eq!(r.exit_reason, ExitReason::SingularJacobian);
    }

    #[test]
    fn forward_difference_close_to_exact() {
        let sys = SystemSpec::new("poly", |x, y| x * x * y, |x, y| (x + y).exp());
        let p = PointPair::new(c(0.3, 0.2), c(-0.5, 0.4));
        let f = sys.eval(p).unwrap();
        let j = forward_difference_jacobian(&sys, p, f).unwrap();
        assert!((j.j11 - 2.0 * p.x * p.y).norm() < 1e-7);
        assert!((j.j12 - p.x * p.x).norm() < 1e-7);
        assert!((j.j22 - (p.x + p.y).exp()).norm() < 1e-7);
    }
}
