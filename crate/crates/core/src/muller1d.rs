//! One-dimensional Müller iteration on a complex function of one complex variable.
//!
//! Each step fits the parabola through the last three samples and moves to
//! its root obtained with the larger-modulus denominator, i.e. the parabola
//! root nearest to the newest sample.

use num_complex::Complex64;
use thiserror::Error;

/// All intermediate quantities of one Müller step.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MullerStep {
    pub q: Complex64,
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d_plus: Complex64,
    pub d_minus: Complex64,
    pub next: Complex64,
}

impl MullerStep {
    /// Denominator actually used for the step.
    pub fn d_max(&self) -> Complex64 {
        if self.d_plus.norm() >= self.d_minus.norm() {
            self.d_plus
        } else {
            self.d_minus
        }
    }
}

#[derive(Debug, Clone, Copy, Error, PartialEq)]
pub enum MullerError {
    #[error("interpolation points coincide or the parabola has no usable root")]
    Degenerate,
    #[error("function value is not finite at {0}")]
    EvaluationFailure(Complex64),
}

/// One Müller step from samples `x2 = x_{j-2}`, `x1 = x_{j-1}`, `x0 = x_j`.
pub fn muller_step(
    x2: Complex64,
    x1: Complex64,
    x0: Complex64,
    f2: Complex64,
    f1: Complex64,
    f0: Complex64,
) -> Result<MullerStep, MullerError> {
    let h1 = x1 - x2;
    let h0 = x0 - x1;
    if h1.norm() == 0.0 || h0.norm() == 0.0 {
        return Err(MullerError::Degenerate);
    }
    let q = h0 / h1;
    let one = Complex64::new(1.0, 0.0);
    let a = q * f0 - q * (one + q) * f1 + q * q * f2;
    let b = (2.0 * q + one) * f0 - (one + q) * (one + q) * f1 + q * q * f2;
    let c = (one + q) * f0;
    let root = (b * b - 4.0 * a * c).sqrt();
    let d_plus = b + root;
    let d_minus = b - root;
    let d_max = if d_plus.norm() >= d_minus.norm() { d_plus } else { d_minus };
    if d_max.norm() == 0.0 {
        return Err(MullerError::Degenerate);
    }
    let next = x0 - 2.0 * h0 * c / d_max;
    if !next.is_finite() {
        return Err(MullerError::Degenerate);
    }
    Ok(MullerStep {
        q,
        a,
        b,
        c,
        d_plus,
        d_minus,
        next,
    })
}

/// Settings of a one-dimensional solve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MullerConfig {
    /// Iteration cap `P`.
    pub max_iter: usize,
    /// Step exit `|x_j − x_{j−1}| < 10^-d`.
    pub digits: u32,
    pub deviation: Complex64,
    /// Exit as soon as `|f| ≤ residual_tol`.
    pub residual_tol: f64,
}

impl Default for MullerConfig {
    fn default() -> Self {
        Self {
            max_iter: 30,
            digits: 12,
            deviation: Complex64::new(1e-3, 0.0),
            residual_tol: 1e-14,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MullerExit {
    StepTol,
    FunctionTol,
    CapP,
    Degenerate,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Muller1DOutcome {
    pub x_final: Complex64,
    pub f_final: Complex64,
    pub iterations: usize,
    pub exit: MullerExit,
    /// Every accepted iterate, starting with `x_in`.
    pub trace: Vec<Complex64>,
}

/// Runs Müller's method on `f` from the seed triple `{x_in − δ, x_in, x_in + δ}`.
///
/// A degenerate step ends the run with [`MullerExit::Degenerate`] and the best
/// point so far; only non-finite function values are errors.
pub fn muller_solve<F>(mut f: F, x_in: Complex64, cfg: &MullerConfig) -> Result<Muller1DOutcome, MullerError>
where
    F: FnMut(Complex64) -> Option<Complex64>,
{
    let mut eval = |x: Complex64| match f(x) {
        Some(v) if v.is_finite() => Ok(v),
        _ => Err(MullerError::EvaluationFailure(x)),
    };
    let step_tol = 10f64.powi(-(cfg.digits as i32));

    let f_in = eval(x_in)?;
    let mut trace = vec![x_in];
    if f_in.norm() <= cfg.residual_tol {
        return Ok(Muller1DOutcome {
            x_final: x_in,
            f_final: f_in,
            iterations: 0,
            exit: MullerExit::FunctionTol,
            trace,
        });
    }
    let (mut x2, mut x1, mut x0) = (x_in - cfg.deviation, x_in, x_in + cfg.deviation);
    let (mut f2, mut f1, mut f0) = (eval(x2)?, f_in, eval(x0)?);
    // Report the best sample seen if the run is cut short.
    let mut best = (x_in, f_in);

    let mut iterations = 0;
    let exit = loop {
        if iterations >= cfg.max_iter {
            break MullerExit::CapP;
        }
        let step = match muller_step(x2, x1, x0, f2, f1, f0) {
            Ok(s) => s,
            Err(_) => break MullerExit::Degenerate,
        };
        let x_next = step.next;
        let f_next = eval(x_next)?;
        iterations += 1;
        trace.push(x_next);
        let moved = (x_next - x0).norm();
        (x2, x1, x0) = (x1, x0, x_next);
        (f2, f1, f0) = (f1, f0, f_next);
        if f_next.norm() <= best.1.norm() {
            best = (x_next, f_next);
        }
        if f_next.norm() <= cfg.residual_tol {
            break MullerExit::FunctionTol;
        }
        if moved < step_tol {
            break MullerExit::StepTol;
        }
    };

    let (x_final, f_final) = match exit {
        MullerExit::Degenerate => best,
        _ => (x0, f0),
    };
    Ok(Muller1DOutcome {
        x_final,
        f_final,
        iterations,
        exit,
        trace,
    })
}

/// Empirical convergence order from the last iterates of a trace, measured
/// against a known root: `p ≈ ln(e_{k+1}/e_k) / ln(e_k/e_{k−1})`, averaged
/// over the usable triples among the last `window` errors.
pub fn empirical_order(trace: &[Complex64], root: Complex64, window: usize) -> Option<f64> {
    let errs: Vec<f64> = trace
        .iter()
        .map(|x| (x - root).norm())
        .filter(|e| *e > 1e-15)
        .collect();
    if errs.len() < 3 {
        return None;
    }
    let start = errs.len().saturating_sub(window);
    let tail = &errs[start..];
    let orders: Vec<f64> = tail
        .windows(3)
        .map(|w| (w[2] / w[1]).ln() / (w[1] / w[0]).ln())
        .filter(|p| p.is_finite())
        .collect();
    if orders.is_empty() {
        None
    } else {
        Some(orders.iter().sum::<f64>() / orders.len() as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn r(v: f64) -> Complex64 {
        c(v, 0.0)
    }

    #[test]
    fn hand_evaluated_step_on_parabola() {
        // f = x² − 1 through 0, 2, 3.
        let s = muller_step(r(0.0), r(2.0), r(3.0), r(-1.0), r(3.0), r(8.0)).unwrap();
        assert_eq!(s.q, r(0.5));
        assert_eq!(s.a, r(1.5));
        assert_eq!(s.b, r(9.0));
        assert_eq!(s.c, r(12.0));
        assert_eq!(s.d_max(), r(12.0));
        assert_eq!(s.next, r(1.0));
    }

    #[test]
    fn linear_function_is_one_step() {
        let s = muller_step(r(0.0), r(1.0), r(2.0), r(-5.0), r(-4.0), r(-3.0)).unwrap();
        assert_eq!(s.a, r(0.0));
        assert!((s.next - r(5.0)).norm() < 1e-14);
    }

    #[test]
    fn constant_function_is_degenerate() {
        let err = muller_step(r(0.0), r(1.0), r(2.0), r(1.0), r(1.0), r(1.0)).unwrap_err();
        assert_eq!(err, MullerError::Degenerate);
    }

    #[test]
    fn coincident_points_are_degenerate() {
        assert!(muller_step(r(1.0), r(1.0), r(2.0), r(1.0), r(2.0), r(3.0)).is_err());
    }

    #[test]
    fn denominators_sum_to_twice_b() {
        let s = muller_step(c(0.1, 0.2), c(-0.3, 1.0), c(0.7, -0.4), c(1.0, 1.0), c(-2.0, 0.5), c(0.3, 0.1)).unwrap();
        assert!((s.d_plus + s.d_minus - 2.0 * s.b).norm() < 1e-13);
        assert!(s.d_max().norm() >= s.d_plus.norm().min(s.d_minus.norm()));
    }

    #[test]
    fn solves_z_squared_plus_one() {
        let cfg = MullerConfig {
            max_iter: 20,
            digits: 12,
            residual_tol: 1e-15,
            ..MullerConfig::default()
        };
        let out = muller_solve(|z| Some(z * z + 1.0), c(0.5, 0.5), &cfg).unwrap();
        assert!((out.x_final - c(0.0, 1.0)).norm() < 1e-12, "{:?}", out);
    }

    #[test]
    fn linear_converges_immediately() {
        let out = muller_solve(|z| Some(z - 5.0), r(0.0), &MullerConfig::default()).unwrap();
        assert!((out.x_final - r(5.0)).norm() < 1e-12);
        assert!(out.iterations <= 2);
    }

    #[test]
    fn cap_is_respected() {
        let cfg = MullerConfig {
            max_iter: 2,
            ..MullerConfig::default()
        };
        let out = muller_solve(|z| Some(z.exp() - 3.0), r(10.0), &cfg).unwrap();
        assert_eq!(out.exit, MullerExit::CapP);
        assert!(out.iterations <= 2);
    }

    #[test]
    fn already_at_root_takes_no_iterations() {
        let out = muller_solve(|z| Some(z - 5.0), r(5.0), &MullerConfig::default()).unwrap();
        assert_eq!(out.iterations, 0);
        assert_eq!(out.exit, MullerExit::FunctionTol);
    }

    #[test]
    fn non_finite_is_reported() {
        let err = muller_solve(|z| Some(1.0 / (z - 1.001)), r(1.0), &MullerConfig::default()).unwrap_err();
        assert!(matches!(err, MullerError::EvaluationFailure(_)));
    }

    #[test]
    fn order_on_cubic_exceeds_secant() {
        let cfg = MullerConfig {
            max_iter: 30,
            digits: 15,
            residual_tol: 0.0,
            ..MullerConfig::default()
        };
        let out = muller_solve(|z| Some(z * z * z - 1.0), r(0.9), &cfg).unwrap();
        assert!((out.x_final - r(1.0)).norm() < 1e-12);
        // The seed centre is not an iterate; its error equals its neighbours'.
        let p = empirical_order(&out.trace[1..], r(1.0), 4).unwrap();
        assert!((1.6..=2.0).contains(&p), "order {p}");
    }
}
