//! Systems of two complex equations in two complex unknowns.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::heunc::HeunError;
use crate::specfun::SpecFunError;
use crate::types::{ConfigError, Mix2, PointPair};

/// Failure while evaluating one of the system functions.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum EvalError {
    #[error("{which} is not finite at {at}")]
    NonFinite { which: &'static str, at: PointPair },
    #[error(transparent)]
    SpecialFunction(#[from] SpecFunError),
    #[error(transparent)]
    Heun(#[from] HeunError),
}

pub type EvalFn = Arc<dyn Fn(Complex64, Complex64) -> Result<Complex64, EvalError> + Send + Sync>;

/// Row-major Jacobian `[[∂F₁/∂x, ∂F₁/∂y], [∂F₂/∂x, ∂F₂/∂y]]`.
pub type Jacobian = [[Complex64; 2]; 2];

pub type JacobianFn = Arc<dyn Fn(Complex64, Complex64) -> Result<Jacobian, EvalError> + Send + Sync>;

/// A published root of a system, with where it came from.
#[derive(Clone, Debug, PartialEq)]
pub struct KnownRoot {
    pub label: String,
    pub pair: PointPair,
    pub provenance: String,
    /// Coordinate-wise match tolerance.
    pub tolerance: f64,
}

impl KnownRoot {
    pub fn matches(&self, p: &PointPair) -> bool {
        self.pair.max_dist(p) < self.tolerance
    }
}

/// `F₁`, `F₂` plus catalog metadata. Cloning is cheap: the functions are shared.
#[derive(Clone)]
pub struct SystemSpec {
    pub name: String,
    f1: EvalFn,
    f2: EvalFn,
    jacobian: Option<JacobianFn>,
    pub known_roots: Vec<KnownRoot>,
    pub recommended_starts: Vec<PointPair>,
}

impl fmt::Debug for SystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SystemSpec")
            .field("name", &self.name)
            .field("analytic_jacobian", &self.jacobian.is_some())
            .field("known_roots", &self.known_roots.len())
            .finish()
    }
}

impl SystemSpec {
    /// Builds a system from two infallible closures.
    pub fn new<F1, F2>(name: impl Into<String>, f1: F1, f2: F2) -> Self
    where
        F1: Fn(Complex64, Complex64) -> Complex64 + Send + Sync + 'static,
        F2: Fn(Complex64, Complex64) -> Complex64 + Send + Sync + 'static,
    {
        Self::fallible(name, move |x, y| Ok(f1(x, y)), move |x, y| Ok(f2(x, y)))
    }

    pub fn fallible<F1, F2>(name: impl Into<String>, f1: F1, f2: F2) -> Self
    where
        F1: Fn(Complex64, Complex64) -> Result<Complex64, EvalError> + Send + Sync + 'static,
        F2: Fn(Complex64, Complex64) -> Result<Complex64, EvalError> + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            f1: Arc::new(f1),
            f2: Arc::new(f2),
            jacobian: None,
            known_roots: Vec::new(),
            recommended_starts: Vec::new(),
        }
    }

    pub fn with_jacobian<J>(mut self, jac: J) -> Self
    where
        J: Fn(Complex64, Complex64) -> Result<Jacobian, EvalError> + Send + Sync + 'static,
    {
        self.jacobian = Some(Arc::new(jac));
        self
    }

    pub fn with_root(mut self, label: &str, pair: PointPair, provenance: &str, tolerance: f64) -> Self {
        self.known_roots.push(KnownRoot {
            label: label.to_string(),
            pair,
            provenance: provenance.to_string(),
            tolerance,
        });
        self
    }

    pub fn with_start(mut self, start: PointPair) -> Self {
        self.recommended_starts.push(start);
        self
    }

    pub fn has_jacobian(&self) -> bool {
        self.jacobian.is_some()
    }

    pub fn f1(&self, p: PointPair) -> Result<Complex64, EvalError> {
        finite((self.f1)(p.x, p.y)?, "F1", p)
    }

    pub fn f2(&self, p: PointPair) -> Result<Complex64, EvalError> {
        finite((self.f2)(p.x, p.y)?, "F2", p)
    }

    /// Evaluates function `index` (0 → `F₁`, 1 → `F₂`).
    pub fn f(&self, index: usize, p: PointPair) -> Result<Complex64, EvalError> {
        if index == 0 {
            self.f1(p)
        } else {
            self.f2(p)
        }
    }

    pub fn eval(&self, p: PointPair) -> Result<(Complex64, Complex64), EvalError> {
        Ok((self.f1(p)?, self.f2(p)?))
    }

    /// `(|F₁(p)|, |F₂(p)|)`.
    pub fn residual(&self, p: PointPair) -> Result<(f64, f64), EvalError> {
        let (a, b) = self.eval(p)?;
        Ok((a.norm(), b.norm()))
    }

    /// Analytic Jacobian at `p`, when the system carries one.
    pub fn jacobian(&self, p: PointPair) -> Option<Result<Jacobian, EvalError>> {
        self.jacobian.as_ref().map(|j| {
            let m = j(p.x, p.y)?;
            if m.iter().flatten().all(|v| v.is_finite()) {
                Ok(m)
            } else {
                Err(EvalError::NonFinite { which: "Jacobian", at: p })
            }
        })
    }

    /// The system with `F₁` and `F₂` exchanged. Root set is unchanged.
    pub fn swapped(&self) -> SystemSpec {
        let jacobian = self.jacobian.clone().map(|j| -> JacobianFn {
            Arc::new(move |x, y| {
                let m = j(x, y)?;
                Ok([m[1], m[0]])
            })
        });
        SystemSpec {
            name: self.name.clone(),
            f1: self.f2.clone(),
            f2: self.f1.clone(),
            jacobian,
            known_roots: self.known_roots.clone(),
            recommended_starts: self.recommended_starts.clone(),
        }
    }

    /// Replaces `(F₁, F₂)` by `(α₁F₁ + β₁F₂, α₂F₁ + β₂F₂)`.
    pub fn apply_precondition(&self, m: &Mix2) -> Result<SystemSpec, ConfigError> {
        if m.is_singular() {
            return Err(ConfigError::SingularPrecondition);
        }
        let m = *m;
        let (g1, g2) = (self.f1.clone(), self.f2.clone());
        let (h1, h2) = (self.f1.clone(), self.f2.clone());
        let jacobian = self.jacobian.clone().map(|j| -> JacobianFn {
            Arc::new(move |x, y| {
                let a = j(x, y)?;
                let row = |c1: Complex64, c2: Complex64| [c1 * a[0][0] + c2 * a[1][0], c1 * a[0][1] + c2 * a[1][1]];
                Ok([row(m.a1, m.b1), row(m.a2, m.b2)])
            })
        });
        Ok(SystemSpec {
            name: self.name.clone(),
            f1: Arc::new(move |x, y| Ok(m.a1 * g1(x, y)? + m.b1 * g2(x, y)?)),
            f2: Arc::new(move |x, y| Ok(m.a2 * h1(x, y)? + m.b2 * h2(x, y)?)),
            jacobian,
            known_roots: self.known_roots.clone(),
            recommended_starts: self.recommended_starts.clone(),
        })
    }

    /// First cataloged root within its tolerance of `p`.
    pub fn match_root(&self, p: &PointPair) -> Option<&KnownRoot> {
        self.known_roots.iter().find(|r| r.matches(p))
    }

    /// Residual in units of the local sensitivity:
    /// `max_i |F_i(p)| / Σ_j |∂F_i/∂x_j| (1 + |p_j|)`, with difference
    /// quotients of step `1e-6`. Measures how far `p` is from a root in relative
    /// coordinate terms, so rounded printed roots score about `1e-10`.
    pub fn scaled_residual(&self, p: PointPair) -> Result<f64, EvalError> {
        let h = 1e-6;
        let (a, b) = self.eval(p)?;
        let (ax, bx) = self.eval(PointPair::new(p.x + h, p.y))?;
        let (ay, by) = self.eval(PointPair::new(p.x, p.y + h))?;
        let (wx, wy) = (1.0 + p.x.norm(), 1.0 + p.y.norm());
        let s1 = (ax - a).norm() / h * wx + (ay - a).norm() / h * wy;
        let s2 = (bx - b).norm() / h * wx + (by - b).norm() / h * wy;
        Ok((a.norm() / s1.max(1e-300)).max(b.norm() / s2.max(1e-300)))
    }
}

fn finite(v: Complex64, which: &'static str, at: PointPair) -> Result<Complex64, EvalError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(EvalError::NonFinite { which, at })
    }
}
