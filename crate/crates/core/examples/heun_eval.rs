//! Confluent Heun function by analytic continuation from the origin. Prints
//! the value, the derivative, the continuation path and two self-checks: an
//! ODE residual from a central difference of the derivative, and the change
//! when every step is halved.
//!
//! ```text
//! cargo run --release --example heun_eval [re im]
//! ```

use muller2d::heunc::{heunc_eval, heunc_eval_with_step, HeunParams};
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() {
    let args: Vec<f64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let points = match args[..] {
        [re, im] => vec![c(re, im)],
        _ => vec![c(0.3, 0.2), c(-0.6, 0.5), c(3.0, 2.0), c(1.5, 0.0), c(-19.0, 2.0)],
    };
    let p = HeunParams::new(c(0.7, -0.3), c(0.4, 0.2), c(1.3, -0.5), c(-0.6, 0.9), c(0.25, 0.1));
    println!("mu = {:.6}, nu = {:.6}", p.mu(), p.nu());
    for z in points {
        match heunc_eval(&p, z) {
            Ok(e) => {
                let h = 1e-4;
                let dp = heunc_eval(&p, z + h).map(|v| v.derivative);
                let dm = heunc_eval(&p, z - h).map(|v| v.derivative);
                let ode = match (dp, dm) {
                    (Ok(a), Ok(b)) => p.ode_residual(z, e.value, e.derivative, (a - b) / (2.0 * h)),
                    _ => f64::NAN,
                };
                let halved = heunc_eval_with_step(&p, z, 0.5).map(|v| (v.value - e.value).norm()).unwrap_or(f64::NAN);
                println!("\nz = {z}");
                println!("  H  = {:.15}", e.value);
                println!("  H' = {:.15}", e.derivative);
                println!("  {} centres, est. error {:.1e}, ODE residual {:.1e}, half-step change {:.1e}", e.path.len(), e.est_error, ode, halved);
            }
            Err(err) => println!("\nz = {z}: {err}"),
        }
    }
}
