//! Values of the special functions used by the preset systems.

use muller2d::specfun::{
    bessel_j, bessel_y, digamma, ferrers_p_order2, ferrers_p_order2_theta, hankel1, hyp1f1_1_3, hyp2f1_series,
};
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() {
    for z in [c(1.0, 0.0), c(2.5, -1.0), c(-3.0, 4.0)] {
        println!("z = {z}");
        for n in 0..3 {
            println!(
                "  J_{n} = {:.12}   Y_{n} = {:.12}   H1_{n} = {:.12}",
                bessel_j(n, z).unwrap(),
                bessel_y(n, z).unwrap(),
                hankel1(n, z).unwrap()
            );
        }
        println!("  1F1(1;3;z) = {:.12}", hyp1f1_1_3(z).unwrap());
        println!("  digamma(z) = {:.12}", digamma(z));
    }

    println!("\n2F1(1/2, 1; 3/2; t)  vs  atanh(sqrt t)/sqrt t");
    for t in [c(0.25, 0.0), c(-0.3, 0.4)] {
        let s = t.sqrt();
        println!("  t = {t}: {:.14}  {:.14}", hyp2f1_series(c(0.5, 0.0), c(1.0, 0.0), c(1.5, 0.0), t).unwrap(), s.atanh() / s);
    }

    println!("\nFerrers P_nu^2(x)");
    for nu in [c(2.0, 0.0), c(3.0, 0.0), c(2.1, 0.01), c(2.5, -0.5)] {
        println!("  nu = {nu}: x = 0.3 -> {:.12}", ferrers_p_order2(nu, 0.3).unwrap());
    }
    // Close to θ = π the degree-2 root shows as a zero of the angular factor.
    let theta = std::f64::consts::PI - 1e-7;
    for nu in [c(1.9, 0.0), c(2.0, 0.0), c(2.1, 0.0)] {
        let s = theta.sin();
        println!("  -sin^2(theta) P_nu^2(cos theta), nu = {nu}: {:.6e}", -s * s * ferrers_p_order2_theta(nu, theta).unwrap());
    }
}
