use num_complex::Complex64;

use super::{SeriesAccuracy, SpecFunError};

/// Largest `|z|` accepted by [`hyp1f1_1_3`].
pub const HYP1F1_MAX_ABS: f64 = 200.0;

const SMALL: f64 = 2.0;

/// `₁F₁(1; 3; z) = Σ 2zᵏ/(k+2)!`.
///
/// Near the origin the series is summed directly. Elsewhere the closed form
/// `2(eᶻ − 1 − z)/z²` is exact and free of the series' cancellation.
pub fn hyp1f1_1_3(z: Complex64) -> Result<Complex64, SpecFunError> {
    check(z, "hyp1f1_1_3")?;
    if z.norm() <= SMALL {
        return Ok(small_series(z, 0).0);
    }
    Ok(2.0 * (z.exp() - 1.0 - z) / (z * z))
}

/// `d/dz ₁F₁(1; 3; z)`.
pub fn hyp1f1_1_3_deriv(z: Complex64) -> Result<Complex64, SpecFunError> {
    check(z, "hyp1f1_1_3_deriv")?;
    if z.norm() <= SMALL {
        return Ok(small_series(z, 1).0);
    }
    let em1 = z.exp() - 1.0;
    Ok(2.0 * (em1 / (z * z) - 2.0 * (em1 - z) / (z * z * z)))
}

fn check(z: Complex64, function: &'static str) -> Result<(), SpecFunError> {
    if !z.is_finite() || z.norm() > HYP1F1_MAX_ABS {
        return Err(SpecFunError::OutOfEnvelope {
            function,
            z,
            limit: HYP1F1_MAX_ABS,
        });
    }
    Ok(())
}

/// `order`-th derivative of `Σ 2zᵏ/(k+2)!` for `|z| ≤ 2`.
fn small_series(z: Complex64, order: usize) -> (Complex64, SeriesAccuracy) {
    // term_k = 2 z^k / (k + 2 + order)! · (k+order)!/k! ; built incrementally.
    let mut term = Complex64::new(2.0 / factorial(2 + order) * factorial(order), 0.0);
    let mut sum = term;
    let mut k = 0usize;
    loop {
        let next = term * z * ((k + order + 1) as f64) / (((k + 1) * (k + order + 3)) as f64);
        sum += next;
        term = next;
        k += 1;
        if term.norm() <= 1e-17 * sum.norm() || k > 80 {
            break;
        }
    }
    (
        sum,
        SeriesAccuracy {
            terms_used: k + 1,
            tail_bound: term.norm(),
        },
    )
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Gauss series `₂F₁(a, b; c; t)` for `|t| ≤ 0.75`.
pub fn hyp2f1_series(a: Complex64, b: Complex64, c: Complex64, t: Complex64) -> Result<Complex64, SpecFunError> {
    if t.norm() > 0.75 {
        return Err(SpecFunError::OutOfEnvelope {
            function: "hyp2f1_series",
            z: t,
            limit: 0.75,
        });
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for n in 0..2000 {
        let nf = n as f64;
        let denom = (c + nf) * (nf + 1.0);
        if denom.norm() == 0.0 {
            return Err(SpecFunError::Singular {
                function: "hyp2f1_series",
                z: c,
            });
        }
        term = term * (a + nf) * (b + nf) / denom * t;
        sum += term;
        if term.norm() <= 1e-17 * sum.norm().max(1e-300) && nf > (a.norm() + b.norm()) {
            return Ok(sum);
        }
        if term.norm() == 0.0 {
            return Ok(sum);
        }
    }
    Err(SpecFunError::NoConvergence {
        function: "hyp2f1_series",
        terms: 2000,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn normalisation_and_leading_terms() {
        assert_eq!(hyp1f1_1_3(c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        let z = c(1e-4, -2e-4);
        let v = hyp1f1_1_3(z).unwrap();
        assert!((v - (1.0 + z / 3.0)).norm() < 1e-8);
    }

    #[test]
    fn value_at_one() {
        let v = hyp1f1_1_3(c(1.0, 0.0)).unwrap();
        assert!((v.re - 2.0 * (std::f64::consts::E - 2.0)).abs() < 1e-15);
    }

    #[test]
    fn series_and_closed_form_meet_at_the_switch() {
        for k in 0..16 {
            let z = Complex64::from_polar(SMALL, k as f64 * 0.4);
            let series = small_series(z, 0).0;
            let closed = 2.0 * (z.exp() - 1.0 - z) / (z * z);
            assert!((series - closed).norm() < 1e-14 * closed.norm(), "{z}");
            let ds = small_series(z, 1).0;
            let dc = 2.0 * ((z.exp() - 1.0) / (z * z) - 2.0 * (z.exp() - 1.0 - z) / (z * z * z));
            assert!((ds - dc).norm() < 1e-13 * dc.norm(), "{z}");
        }
    }

    #[test]
    fn rejects_large_arguments() {
        assert!(hyp1f1_1_3(c(250.0, 0.0)).is_err());
    }

    #[test]
    fn gauss_series_elementary() {
        // ₂F₁(1, 1; 2; t) = −ln(1 − t)/t.
        let t = c(0.3, 0.2);
        let v = hyp2f1_series(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), t).unwrap();
        assert!((v + (1.0 - t).ln() / t).norm() < 1e-14);
        // Terminating series.
        let p = hyp2f1_series(c(-2.0, 0.0), c(3.0, 0.0), c(1.0, 0.0), t).unwrap();
        let expect = 1.0 - 6.0 * t + 6.0 * t * t;
        assert!((p - expect).norm() < 1e-14);
    }
}
