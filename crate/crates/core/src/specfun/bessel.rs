use std::f64::consts::PI;

use num_complex::Complex64;

use super::{SpecFunError, EULER_GAMMA};

/// Largest `|z|` accepted by the Bessel routines.
pub const BESSEL_MAX_ABS: f64 = 60.0;

/// Below this modulus the ascending series are used directly.
const SERIES_MAX_ABS: f64 = 5.0;

fn envelope(function: &'static str, z: Complex64) -> Result<(), SpecFunError> {
    if !z.is_finite() || z.norm() > BESSEL_MAX_ABS {
        return Err(SpecFunError::OutOfEnvelope {
            function,
            z,
            limit: BESSEL_MAX_ABS,
        });
    }
    Ok(())
}

/// `J_n(z)` for integer `n ≥ 0`.
pub fn bessel_j(n: u32, z: Complex64) -> Result<Complex64, SpecFunError> {
    envelope("bessel_j", z)?;
    if z.norm() <= SERIES_MAX_ABS {
        Ok(j_series(n, z))
    } else {
        Ok(j_miller(z, n as usize + 1)[n as usize])
    }
}

/// `Y_n(z)` for integer `n ≥ 0`, principal branch of the logarithm.
pub fn bessel_y(n: u32, z: Complex64) -> Result<Complex64, SpecFunError> {
    envelope("bessel_y", z)?;
    if z.norm() == 0.0 {
        return Err(SpecFunError::Singular { function: "bessel_y", z });
    }
    if z.norm() <= SERIES_MAX_ABS {
        Ok(y_series(n, z, j_series(n, z)))
    } else {
        Ok(y_neumann(n, z))
    }
}

/// `H⁽¹⁾_n(z) = J_n(z) + i·Y_n(z)`.
///
/// Accuracy is relative to `|J_n| + |Y_n|`. Far into the upper half-plane
/// `H⁽¹⁾` is exponentially smaller than either and loses relative digits.
pub fn hankel1(n: u32, z: Complex64) -> Result<Complex64, SpecFunError> {
    envelope("hankel1", z)?;
    if z.norm() == 0.0 {
        return Err(SpecFunError::Singular { function: "hankel1", z });
    }
    let i = Complex64::i();
    if z.norm() <= SERIES_MAX_ABS {
        let j = j_series(n, z);
        Ok(j + i * y_series(n, z, j))
    } else {
        let (j, y) = j_and_y_large(n, z);
        Ok(j + i * y)
    }
}

/// `J′_n(z)` from `J′_n = J_{n−1} − (n/z)J_n` (and `J′₀ = −J₁`).
pub fn bessel_j_deriv(n: u32, z: Complex64) -> Result<Complex64, SpecFunError> {
    if n == 0 {
        return Ok(-bessel_j(1, z)?);
    }
    Ok(bessel_j(n - 1, z)? - n as f64 / z * bessel_j(n, z)?)
}

/// `Y′_n(z)`, same recurrence as [`bessel_j_deriv`].
pub fn bessel_y_deriv(n: u32, z: Complex64) -> Result<Complex64, SpecFunError> {
    if n == 0 {
        return Ok(-bessel_y(1, z)?);
    }
    Ok(bessel_y(n - 1, z)? - n as f64 / z * bessel_y(n, z)?)
}

fn j_series(n: u32, z: Complex64) -> Complex64 {
    let half = z / 2.0;
    let q = -half * half;
    let mut term = half.powu(n) / (1..=n).map(f64::from).product::<f64>();
    let mut sum = term;
    for k in 1..200 {
        term *= q / (k as f64 * (k + n as usize) as f64);
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    sum
}

/// Ascending series with logarithm; `j` is `J_n(z)`.
fn y_series(n: u32, z: Complex64, j: Complex64) -> Complex64 {
    let n = n as usize;
    let half = z / 2.0;
    let q = half * half;

    let mut finite = Complex64::default();
    if n > 0 {
        // Σ_{k<n} (n−k−1)!/k! (z/2)^{2k−n}
        let mut fact_top: f64 = (1..n).map(|v| v as f64).product();
        let mut fact_k = 1.0;
        let mut pow = half.powi(-(n as i32));
        for k in 0..n {
            if k > 0 {
                fact_top /= (n - k) as f64;
                fact_k *= k as f64;
                pow *= q;
            }
            finite += pow * (fact_top / fact_k);
        }
    }

    // Σ (−1)^k [ψ(k+1) + ψ(n+k+1)] (z/2)^{2k+n} / (k!(n+k)!)
    let mut psi_a = -EULER_GAMMA;
    let mut psi_b = -EULER_GAMMA + (1..=n).map(|v| 1.0 / v as f64).sum::<f64>();
    let mut term = half.powu(n as u32) / (1..=n).map(|v| v as f64).product::<f64>();
    let mut tail = term * (psi_a + psi_b);
    for k in 1..200 {
        term *= -q / (k as f64 * (n + k) as f64);
        psi_a += 1.0 / k as f64;
        psi_b += 1.0 / (n + k) as f64;
        let add = term * (psi_a + psi_b);
        tail += add;
        if add.norm() <= 1e-17 * tail.norm() && term.norm() <= 1e-17 * j.norm().max(1e-300) {
            break;
        }
    }

    (2.0 * half.ln() * j - finite - tail) / PI
}

/// All of `J_0..J_{count−1}` by backward recurrence, normalised through
/// `e^{∓iz} = J₀ + 2Σ(∓i)ᵏJ_k`.
fn j_miller(z: Complex64, count: usize) -> Vec<Complex64> {
    let start = (count.max(z.norm().ceil() as usize) + 40 + (z.norm() as usize) / 2) | 1;
    let mut vals = vec![Complex64::default(); start + 2];
    vals[start] = Complex64::new(1.0, 0.0);
    let two_over_z = 2.0 / z;
    for k in (1..=start).rev() {
        let v = two_over_z * (k as f64) * vals[k] - vals[k + 1];
        vals[k - 1] = v;
        // Kept well below 1e154 so the normalising division can square it.
        if v.norm() > 1e100 {
            for w in vals.iter_mut().skip(k - 1) {
                *w *= 1e-100;
            }
        }
    }
    let (rot, target) = if z.im >= 0.0 {
        (-Complex64::i(), (-Complex64::i() * z).exp())
    } else {
        (Complex64::i(), (Complex64::i() * z).exp())
    };
    let mut norm = vals[0];
    let mut phase = Complex64::new(1.0, 0.0);
    for v in vals.iter().take(start + 1).skip(1) {
        phase *= rot;
        norm += 2.0 * phase * v;
    }
    let scale = target / norm;
    vals.truncate(count.max(2));
    vals.iter_mut().for_each(|v| *v *= scale);
    vals
}

/// `J_n` and `Y_n` for `|z| > 5` from one Miller sweep: `Y₀`, `Y₁` by their
/// Neumann series, higher orders by forward recurrence.
fn j_and_y_large(n: u32, z: Complex64) -> (Complex64, Complex64) {
    let sweep = j_miller(z, 2 * (z.norm() as usize + 60) + n as usize + 4);
    let lead = (z / 2.0).ln() + EULER_GAMMA;
    let mut y0_sum = Complex64::default();
    let mut y1_sum = Complex64::default();
    let mut sign = -1.0;
    let mut k = 1;
    while 2 * k + 1 < sweep.len() {
        y0_sum += sign * sweep[2 * k] / k as f64;
        y1_sum += sign * (sweep[2 * k - 1] - sweep[2 * k + 1]) / k as f64;
        sign = -sign;
        k += 1;
    }
    let y0 = 2.0 / PI * (lead * sweep[0] - 2.0 * y0_sum);
    let y1 = 2.0 / PI * (lead * sweep[1] - sweep[0] / z + y1_sum);
    let y = if n == 0 {
        y0
    } else {
        let (mut prev, mut cur) = (y0, y1);
        for k in 1..n {
            let next = 2.0 * k as f64 / z * cur - prev;
            prev = cur;
            cur = next;
        }
        cur
    };
    (sweep[n as usize], y)
}

fn y_neumann(n: u32, z: Complex64) -> Complex64 {
    j_and_y_large(n, z).1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64, rel: f64) -> bool {
        (a - b).norm() <= rel * b.norm().max(1e-300)
    }

    #[test]
    fn trivial_values() {
        assert_eq!(bessel_j(0, c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        assert_eq!(bessel_j(3, c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert!(hankel1(0, c(0.0, 0.0)).is_err());
        assert!(bessel_j(1, c(61.0, 0.0)).is_err());
    }

    #[test]
    fn series_and_recurrence_agree_at_switch() {
        for n in 0..8 {
            for k in 0..12 {
                let z = Complex64::from_polar(SERIES_MAX_ABS, 0.5 * k as f64);
                let a = j_series(n, z);
                let b = j_miller(z, n as usize + 1)[n as usize];
                assert!(close(b, a, 1e-12), "J{n}({z}): {a} vs {b}");
                let ys = y_series(n, z, a);
                let yl = y_neumann(n, z);
                assert!(close(yl, ys, 1e-11), "Y{n}({z}): {ys} vs {yl}");
            }
        }
    }

    #[test]
    fn wronskian_beyond_series_radius() {
        for &(re, im) in &[(5.5, 0.0), (7.5, -2.0), (0.3, -6.0), (12.0, 0.5), (-20.0, 9.0), (45.0, -3.0)] {
            let z = c(re, im);
            for n in 0..8 {
                let (a, b) = (
                    bessel_j(n, z).unwrap() * bessel_y_deriv(n, z).unwrap(),
                    bessel_j_deriv(n, z).unwrap() * bessel_y(n, z).unwrap(),
                );
                // The two products are far larger than their difference off the real axis.
                let scale = a.norm() + b.norm();
                assert!(((a - b) - 2.0 / (PI * z)).norm() < 1e-12 * scale, "n={n} z={z}: {}", a - b);
                let h = hankel1(n, z).unwrap();
                let (j, y) = (bessel_j(n, z).unwrap(), bessel_y(n, z).unwrap());
                assert!((h - (j + Complex64::i() * y)).norm() < 1e-12 * (j.norm() + y.norm()), "n={n} z={z}");
            }
        }
    }

    #[test]
    fn recurrence_identity_on_envelope() {
        for &(re, im) in &[(0.7, 0.2), (3.0, -2.0), (-8.0, 4.0), (25.0, 1.0), (-40.0, -15.0)] {
            let z = c(re, im);
            for n in 1..10 {
                let lhs = bessel_j(n - 1, z).unwrap() + bessel_j(n + 1, z).unwrap();
                let rhs = 2.0 * n as f64 / z * bessel_j(n, z).unwrap();
                let scale = bessel_j(n - 1, z).unwrap().norm() + bessel_j(n + 1, z).unwrap().norm();
                assert!((lhs - rhs).norm() < 1e-10 * scale, "n={n} z={z}");
            }
        }
    }
}
