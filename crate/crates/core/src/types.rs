//! Value types shared by every solver: iterate pairs, solver configuration and
//! result records.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A point `(x, y)` of the two-variable complex domain.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointPair {
    pub x: Complex64,
    pub y: Complex64,
}

impl PointPair {
    pub fn new(x: Complex64, y: Complex64) -> Self {
        Self { x, y }
    }

    pub fn real(x: f64, y: f64) -> Self {
        Self::new(Complex64::new(x, 0.0), Complex64::new(y, 0.0))
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Largest coordinate-wise distance `max(|Δx|, |Δy|)`.
    pub fn max_dist(&self, other: &PointPair) -> f64 {
        (self.x - other.x).norm().max((self.y - other.y).norm())
    }

    pub fn swapped(&self) -> PointPair {
        PointPair::new(self.y, self.x)
    }
}

impl fmt::Display for PointPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Which solver to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    /// Two-dimensional Müller, `y` taken from the zero line of the fitted plane.
    M1,
    /// Two-dimensional Müller, `y` from a second one-dimensional Müller solve.
    M2,
    Newton,
    /// Newton-type iteration with a fresh forward-difference Jacobian each step.
    Broyden,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Newton, Method::Broyden, Method::M2, Method::M1];

    pub fn name(&self) -> &'static str {
        match self {
            Method::M1 => "m1",
            Method::M2 => "m2",
            Method::Newton => "newton",
            Method::Broyden => "broyden",
        }
    }

    pub fn is_muller(&self) -> bool {
        matches!(self, Method::M1 | Method::M2)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "m1" => Ok(Method::M1),
            "m2" => Ok(Method::M2),
            "newton" => Ok(Method::Newton),
            "broyden" => Ok(Method::Broyden),
            other => Err(ConfigError::UnknownMethod(other.to_string())),
        }
    }
}

/// A 2×2 complex matrix `(α₁, β₁; α₂, β₂)` mixing the two equations:
/// `F*₁ = α₁F₁ + β₁F₂`, `F*₂ = α₂F₁ + β₂F₂`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mix2 {
    pub a1: Complex64,
    pub b1: Complex64,
    pub a2: Complex64,
    pub b2: Complex64,
}

impl Mix2 {
    pub fn new(a1: Complex64, b1: Complex64, a2: Complex64, b2: Complex64) -> Self {
        Self { a1, b1, a2, b2 }
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self::new(one, zero, zero, one)
    }

    /// `(1, 1; 1, −1)`, the sum/difference mix used for the QNM system.
    pub fn sum_difference() -> Self {
        let one = Complex64::new(1.0, 0.0);
        Self::new(one, one, one, -one)
    }

    pub fn det(&self) -> Complex64 {
        self.a1 * self.b2 - self.b1 * self.a2
    }

    pub fn is_singular(&self) -> bool {
        let scale = self
            .a1
            .norm()
            .max(self.b1.norm())
            .max(self.a2.norm())
            .max(self.b2.norm());
        !(self.det().norm() > 1e-14 * scale * scale)
    }

    pub fn apply(&self, f1: Complex64, f2: Complex64) -> (Complex64, Complex64) {
        (self.a1 * f1 + self.b1 * f2, self.a2 * f1 + self.b2 * f2)
    }
}

/// Knobs shared by all four methods.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveConfig {
    /// Precision exponent `d`: step exit test is `|Δ| < 10^-d`.
    pub digits: u32,
    /// Cap `P` on one-dimensional Müller iterations per call.
    pub inner_cap: usize,
    /// Cap `N` on outer iterations.
    pub outer_cap: usize,
    /// Initial deviation used to build seed triples.
    pub deviation: Complex64,
    pub method: Method,
    /// Exchange the roles of `F₁` and `F₂` before solving.
    pub swap_equations: bool,
    /// Exchange the equations at every outer iteration (Müller variants only).
    pub alternate_order: bool,
    pub precondition: Option<Mix2>,
    /// Absolute residual tolerance; `None` selects `10^-d · (1 + scale)`
    /// with `scale` the largest function modulus over the seed triple.
    pub residual_tol: Option<f64>,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            digits: 12,
            inner_cap: 5,
            outer_cap: 100,
            deviation: Complex64::new(1e-3, 0.0),
            method: Method::M1,
            swap_equations: false,
            alternate_order: false,
            precondition: None,
            residual_tol: None,
        }
    }
}

impl SolveConfig {
    pub fn with_method(method: Method) -> Self {
        Self {
            method,
            ..Self::default()
        }
    }

    pub fn inner_cap(mut self, p: usize) -> Self {
        self.inner_cap = p;
        self
    }

    pub fn outer_cap(mut self, n: usize) -> Self {
        self.outer_cap = n;
        self
    }

    pub fn digits(mut self, d: u32) -> Self {
        self.digits = d;
        self
    }

    pub fn swapped(mut self, swap: bool) -> Self {
        self.swap_equations = swap;
        self
    }

    pub fn preconditioned(mut self, m: Mix2) -> Self {
        self.precondition = Some(m);
        self
    }

    /// `10^-d`.
    pub fn step_tol(&self) -> f64 {
        10f64.powi(-(self.digits as i32))
    }

    /// Residual tolerance for a run whose seed triple has largest function modulus `scale`.
    pub fn residual_tol_for(&self, scale: f64) -> f64 {
        match self.residual_tol {
            Some(t) => t,
            None => self.step_tol() * (1.0 + scale),
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(4..=15).contains(&self.digits) {
            return Err(ConfigError::Digits(self.digits));
        }
        if !(1..=100).contains(&self.inner_cap) {
            return Err(ConfigError::InnerCap(self.inner_cap));
        }
        if self.outer_cap == 0 {
            return Err(ConfigError::OuterCap);
        }
        if self.deviation.norm() == 0.0 || !self.deviation.is_finite() {
            return Err(ConfigError::Deviation);
        }
        if let Some(m) = &self.precondition {
            if m.is_singular() {
                return Err(ConfigError::SingularPrecondition);
            }
        }
        if let Some(t) = self.residual_tol {
            if !(t > 0.0) {
                return Err(ConfigError::ResidualTol(t));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ConfigError {
    #[error("digits must lie in [4, 15], got {0}")]
    Digits(u32),
    #[error("inner cap P must lie in [1, 100], got {0}")]
    InnerCap(usize),
    #[error("outer cap N must be at least 1")]
    OuterCap,
    #[error("initial deviation must be a finite nonzero complex number")]
    Deviation,
    #[error("preconditioning matrix is singular")]
    SingularPrecondition,
    #[error("residual tolerance must be positive, got {0}")]
    ResidualTol(f64),
    #[error("unknown method '{0}' (expected m1, m2, newton or broyden)")]
    UnknownMethod(String),
    #[error("invalid system parameters: {0}")]
    Invalid(String),
}

/// Why a solve stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExitReason {
    /// Both coordinate steps below `10^-d` and both residuals within tolerance.
    /// A Müller iterate that returns to one of its three stored points also
    /// counts, since its step from that point is zero.
    StepBelowTolerance,
    /// One function vanished first; the other variable was finished by a
    /// one-dimensional Müller solve.
    OneFunctionZeroFallback,
    /// Iteration cap hit. A Müller run whose iterate repeats a stored point
    /// after its one perturbation would cycle up to the cap, so it stops here
    /// early with a message.
    OuterCapReached,
    DegenerateGeometry,
    EvaluationFailure,
    SingularJacobian,
}

impl ExitReason {
    pub fn name(&self) -> &'static str {
        match self {
            ExitReason::StepBelowTolerance => "StepBelowTolerance",
            ExitReason::OneFunctionZeroFallback => "OneFunctionZeroFallback",
            ExitReason::OuterCapReached => "OuterCapReached",
            ExitReason::DegenerateGeometry => "DegenerateGeometry",
            ExitReason::EvaluationFailure => "EvaluationFailure",
            ExitReason::SingularJacobian => "SingularJacobian",
        }
    }
}

impl fmt::Display for ExitReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of a two-dimensional solve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootResult {
    pub root: PointPair,
    pub residual_f1: f64,
    pub residual_f2: f64,
    pub outer_iterations: usize,
    pub inner_iterations_total: usize,
    pub exit_reason: ExitReason,
    /// Tolerance the residuals were judged against.
    pub residual_tol: f64,
    /// Set when the run stopped with residuals stuck above tolerance although
    /// the iterates had stopped moving (finite precision floor).
    pub precision_limited: bool,
    /// Outer iterates in order, starting with the start point.
    pub history: Vec<PointPair>,
    /// Detail for failure exits.
    pub message: Option<String>,
}

impl RootResult {
    /// True for the two exits that deliver a root with residuals within tolerance.
    pub fn converged(&self) -> bool {
        matches!(
            self.exit_reason,
            ExitReason::StepBelowTolerance | ExitReason::OneFunctionZeroFallback
        ) && self.residual_f1.max(self.residual_f2) <= self.residual_tol
    }

    pub fn max_residual(&self) -> f64 {
        self.residual_f1.max(self.residual_f2)
    }

    /// A run that could not evaluate the system at `at`.
    pub fn evaluation_failure(at: PointPair, err: impl fmt::Display) -> Self {
        Self {
            root: at,
            residual_f1: f64::NAN,
            residual_f2: f64::NAN,
            outer_iterations: 0,
            inner_iterations_total: 0,
            exit_reason: ExitReason::EvaluationFailure,
            residual_tol: f64::NAN,
            precision_limited: false,
            history: vec![at],
            message: Some(err.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        let cfg = SolveConfig::default();
        assert!(cfg.validate().is_ok());
        assert_eq!(cfg.inner_cap, 5);
        assert_eq!(cfg.outer_cap, 100);
        assert_eq!(cfg.digits, 12);
        assert_eq!(cfg.deviation, Complex64::new(0.001, 0.0));
    }

    #[test]
    fn config_rejects_out_of_range() {
        assert_eq!(
            SolveConfig::default().digits(3).validate(),
            Err(ConfigError::Digits(3))
        );
        assert_eq!(
            SolveConfig::default().inner_cap(0).validate(),
            Err(ConfigError::InnerCap(0))
        );
        assert_eq!(
            SolveConfig::default().inner_cap(101).validate(),
            Err(ConfigError::InnerCap(101))
        );
        let mut cfg = SolveConfig::default();
        cfg.deviation = Complex64::new(0.0, 0.0);
        assert_eq!(cfg.validate(), Err(ConfigError::Deviation));
        let one = Complex64::new(1.0, 0.0);
        let cfg = SolveConfig::default().preconditioned(Mix2::new(one, one, one, one));
        assert_eq!(cfg.validate(), Err(ConfigError::SingularPrecondition));
    }

    #[test]
    fn default_residual_tolerance_is_relative() {
        let cfg = SolveConfig::default();
        assert!((cfg.residual_tol_for(0.0) - 1e-12).abs() < 1e-27);
        assert!((cfg.residual_tol_for(99.0) - 1e-10).abs() < 1e-24);
    }

    #[test]
    fn method_parsing() {
        assert_eq!("M2".parse::<Method>().unwrap(), Method::M2);
        assert_eq!("broyden".parse::<Method>().unwrap(), Method::Broyden);
        assert!("secant".parse::<Method>().is_err());
    }
}
