use std::f64::consts::PI;

use num_complex::Complex64;

// B_{2k} / (2k) for k = 1..8.
const ASYMPTOTIC: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
];

/// Complex digamma `ψ(w)`. Poles at non-positive integers give non-finite values.
pub fn digamma(w: Complex64) -> Complex64 {
    if w.re < 0.5 {
        let pi_w = PI * w;
        return digamma(1.0 - w) - PI * pi_w.cos() / pi_w.sin();
    }
    let mut acc = Complex64::default();
    let mut v = w;
    while v.norm() < 12.0 {
        acc -= 1.0 / v;
        v += 1.0;
    }
    let inv2 = 1.0 / (v * v);
    let mut pow = inv2;
    let mut series = Complex64::default();
    for c in ASYMPTOTIC {
        series += c * pow;
        pow *= inv2;
    }
    acc + v.ln() - 0.5 / v - series
}

/// `sin(πw)·ψ(w)`, finite at the poles of `ψ`.
pub fn sin_pi_times_digamma(w: Complex64) -> Complex64 {
    let pi_w = PI * w;
    if w.re < 0.5 {
        pi_w.sin() * digamma(1.0 - w) - PI * pi_w.cos()
    } else {
        pi_w.sin() * digamma(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_values_are_harmonic_numbers() {
        let mut h = 0.0;
        for n in 1..30 {
            let psi = digamma(Complex64::new(n as f64, 0.0));
            assert!((psi.re - (h - crate::specfun::EULER_GAMMA)).abs() < 1e-14, "n = {n}");
            h += 1.0 / n as f64;
        }
    }

    #[test]
    fn recurrence_holds_off_axis() {
        for &(re, im) in &[(0.3, 2.0), (-4.7, 0.8), (12.5, -3.0), (1e-3, 1e-3)] {
            let w = Complex64::new(re, im);
            let diff = digamma(w + 1.0) - digamma(w) - 1.0 / w;
            assert!(diff.norm() < 1e-12 * (1.0 + (1.0 / w).norm()), "{w}");
        }
    }

    #[test]
    fn sin_product_is_finite_at_poles() {
        // sin(πw)ψ(w) → −π cos(πw) = −π(−1)^n as w → −n.
        for n in 0..5 {
            let v = sin_pi_times_digamma(Complex64::new(-(n as f64), 0.0));
            let expect = -PI * if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((v.re - expect).abs() < 1e-12 && v.im.abs() < 1e-12);
        }
    }
}
