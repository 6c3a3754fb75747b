use std::f64::consts::PI;

use num_complex::Complex64;

use super::digamma::sin_pi_times_digamma;
use super::hyper::hyp2f1_series;
use super::{SpecFunError, EULER_GAMMA};

/// Ferrers function `P_ν²(x)` on the cut, `x ∈ (−1, 1)`, normalised so that
/// `P₂²(x) = 3(1 − x²)` and `P₃²(x) = 15x(1 − x²)`.
pub fn ferrers_p_order2(nu: Complex64, x: f64) -> Result<Complex64, SpecFunError> {
    if !(x > -1.0 && x < 1.0) {
        return Err(SpecFunError::OutOfEnvelope {
            function: "ferrers_p_order2",
            z: Complex64::new(x, 0.0),
            limit: 1.0,
        });
    }
    eval(nu, (1.0 - x) / 2.0, (1.0 + x) / 2.0)
}

/// `P_ν²(cos θ)` for `θ ∈ (0, π)`.
///
/// Works from `sin²(θ/2)` and `cos²(θ/2)` directly, which keeps full relative
/// precision when `θ` is within rounding of an endpoint and `cos θ` is not.
pub fn ferrers_p_order2_theta(nu: Complex64, theta: f64) -> Result<Complex64, SpecFunError> {
    if !(theta > 0.0 && theta < PI) {
        return Err(SpecFunError::OutOfEnvelope {
            function: "ferrers_p_order2_theta",
            z: Complex64::new(theta, 0.0),
            limit: PI,
        });
    }
    let (sh, ch) = (theta / 2.0).sin_cos();
    eval(nu, sh * sh, ch * ch)
}

/// `t = (1 − x)/2`, `s = (1 + x)/2`; `1 − x² = 4ts`.
fn eval(nu: Complex64, t: f64, s: f64) -> Result<Complex64, SpecFunError> {
    let one_minus_x2 = 4.0 * t * s;
    let pref = (nu + 2.0) * (nu + 1.0) * nu * (nu - 1.0) / 8.0;
    let a = 2.0 - nu;
    let b = nu + 3.0;
    let g = if t <= 0.5 {
        pref * hyp2f1_series(a, b, Complex64::new(3.0, 0.0), Complex64::new(t, 0.0))?
    } else {
        pref * near_minus_one(nu, a, b, s)? + singular_part(nu, s)
    };
    Ok(one_minus_x2 * g)
}

/// `−sin(πν)/(4π) · s⁻² (1 + ν(ν+1)s)`: the part of `₂F₁(a, b; 3; 1 − s)`
/// (times the prefactor) that blows up as `s → 0`.
fn singular_part(nu: Complex64, s: f64) -> Complex64 {
    let sin = (PI * nu).sin();
    -sin / (4.0 * PI) * (1.0 + nu * (nu + 1.0) * s) / (s * s)
}

/// `(2/π) Σ (a)_n (b)_n / (n!(n+2)!) sⁿ [sin πν (ln s − ψ(n+1) − ψ(n+3))
/// + sin πν ψ(a+n) + sin πν ψ(b+n)]`, the logarithmic part of the
/// `c − a − b = −2` continuation of `₂F₁` to `1 − s`.
///
/// Each `sin πν · ψ(w)` product is rewritten through `sin πw`, which differs
/// from `sin πν` by a sign, so it stays finite at the poles of `ψ`.
fn near_minus_one(nu: Complex64, a: Complex64, b: Complex64, s: f64) -> Result<Complex64, SpecFunError> {
    let sin_nu = (PI * nu).sin();
    let ln_s = s.ln();
    let mut coeff = Complex64::new(0.5, 0.0); // (a)_0 (b)_0 / (0! 2!)
    let mut h1 = -EULER_GAMMA; // ψ(n+1)
    let mut h3 = 1.5 - EULER_GAMMA; // ψ(n+3)
    let mut sum = Complex64::default();
    let mut s_pow = 1.0;
    for n in 0..500usize {
        if n > 0 {
            let nf = n as f64;
            coeff *= (a + nf - 1.0) * (b + nf - 1.0) / (nf * (nf + 2.0));
            h1 += 1.0 / nf;
            h3 += 1.0 / (nf + 2.0);
            s_pow *= s;
        }
        let parity = if n % 2 == 0 { 1.0 } else { -1.0 };
        // sin πν = −(−1)ⁿ sin π(a+n) = −(−1)ⁿ sin π(b+n).
        let sa = -parity * sin_pi_times_digamma(a + n as f64);
        let sb = -parity * sin_pi_times_digamma(b + n as f64);
        let bracket = sin_nu * (ln_s - h1 - h3) + sa + sb;
        let term = coeff * s_pow * bracket;
        sum += term;
        if n > 2 && term.norm() <= 1e-17 * sum.norm().max(1e-300) && (coeff * s_pow).norm() < 1e-17 {
            return Ok(2.0 / PI * sum);
        }
        if n > 2 && (coeff * s_pow).norm() == 0.0 {
            return Ok(2.0 / PI * sum);
        }
    }
    Err(SpecFunError::NoConvergence {
        function: "ferrers_p_order2",
        terms: 500,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn closed_forms_at_integer_degree() {
        for &x in &[-0.9, -0.6, -0.2, 0.0, 0.2, 0.5, 0.8] {
            let p2 = ferrers_p_order2(c(2.0, 0.0), x).unwrap();
            let p3 = ferrers_p_order2(c(3.0, 0.0), x).unwrap();
            assert!((p2 - 3.0 * (1.0 - x * x)).norm() < 1e-13, "x={x}");
            assert!((p3 - 15.0 * x * (1.0 - x * x)).norm() < 1e-13, "x={x}");
            for nu in [0.0, 1.0] {
                assert!(ferrers_p_order2(c(nu, 0.0), x).unwrap().norm() < 1e-13);
            }
        }
    }

    #[test]
    fn branches_agree_at_the_switch() {
        for &nu in &[c(2.3, 0.4), c(5.5, -1.2), c(1.7, 0.0), c(3.0, 0.5)] {
            let (t, s) = (0.5, 0.5);
            let upper = {
                let pref = (nu + 2.0) * (nu + 1.0) * nu * (nu - 1.0) / 8.0;
                pref * hyp2f1_series(2.0 - nu, nu + 3.0, c(3.0, 0.0), c(t, 0.0)).unwrap()
            };
            let pref = (nu + 2.0) * (nu + 1.0) * nu * (nu - 1.0) / 8.0;
            let lower = pref * near_minus_one(nu, 2.0 - nu, nu + 3.0, s).unwrap() + singular_part(nu, s);
            assert!((upper - lower).norm() < 1e-10 * upper.norm(), "{nu}: {upper} vs {lower}");
        }
    }

    #[test]
    fn rejects_endpoints() {
        assert!(ferrers_p_order2(c(2.0, 0.0), 1.0).is_err());
        assert!(ferrers_p_order2(c(2.0, 0.0), -1.0).is_err());
        assert!(ferrers_p_order2_theta(c(2.0, 0.0), PI).is_err());
    }
}
