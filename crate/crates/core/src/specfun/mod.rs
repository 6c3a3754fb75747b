//! Special functions needed by the preset systems: Bessel and Hankel functions
//! of integer order, `₁F₁(1; 3; z)`, the Gauss series `₂F₁`, and the Ferrers
//! function of order 2 and complex degree.
//!
//! Every function rejects arguments outside the region where double precision
//! is known to hold instead of degrading silently.

mod bessel;
mod digamma;
mod ferrers;
mod hyper;

use num_complex::Complex64;
use thiserror::Error;

pub use bessel::{bessel_j, bessel_j_deriv, bessel_y, bessel_y_deriv, hankel1, BESSEL_MAX_ABS};
pub use digamma::{digamma, sin_pi_times_digamma};
pub use ferrers::{ferrers_p_order2, ferrers_p_order2_theta};
pub use hyper::{hyp1f1_1_3, hyp1f1_1_3_deriv, hyp2f1_series, HYP1F1_MAX_ABS};

#[derive(Debug, Clone, Copy, Error, PartialEq)]
pub enum SpecFunError {
    #[error("{function}: argument {z} outside the supported region (|z| <= {limit})")]
    OutOfEnvelope {
        function: &'static str,
        z: Complex64,
        limit: f64,
    },
    #[error("{function}: singular at {z}")]
    Singular { function: &'static str, z: Complex64 },
    #[error("{function}: series did not converge within {terms} terms")]
    NoConvergence { function: &'static str, terms: usize },
}

/// How a series evaluation ended.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesAccuracy {
    pub terms_used: usize,
    pub tail_bound: f64,
}

pub(crate) const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
