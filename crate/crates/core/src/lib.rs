//! Two-dimensional Müller method for systems of two complex equations
//! `F₁(x, y) = F₂(x, y) = 0`, together with Newton and finite-difference
//! baselines, the special functions used by the bundled test systems, a
//! confluent Heun evaluator, and the Schwarzschild quasi-normal-mode system.
//!
//! The usual entry points are [`systems::catalog`] for a preset system,
//! [`SolveConfig`] for settings, and [`solve`] to run any of the four methods.

pub mod baselines;
pub mod harness;
pub mod heunc;
pub mod muller1d;
pub mod solver2d;
pub mod specfun;
pub mod system;
pub mod systems;
pub mod types;

pub use baselines::{broyden_solve, newton_solve, solve_with as solve};
pub use system::{EvalError, KnownRoot, SystemSpec};
pub use types::{ConfigError, ExitReason, Method, Mix2, PointPair, RootResult, SolveConfig};
