//! One-dimensional Müller iteration on a few polynomials, with the iterates
//! and the convergence order measured from them.

use muller2d::muller1d::{empirical_order, muller_solve, muller_step, MullerConfig};
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() {
    // A single step through three samples of x² − 1 lands on the root.
    let f = |x: Complex64| x * x - 1.0;
    let (x2, x1, x0) = (c(0.0, 0.0), c(2.0, 0.0), c(3.0, 0.0));
    let s = muller_step(x2, x1, x0, f(x2), f(x1), f(x0)).unwrap();
    println!("one step on x^2 - 1 from (0, 2, 3): next = {}, q = {}, A = {}", s.next, s.q, s.a);

    let cases: [(&str, fn(Complex64) -> Complex64, Complex64, Complex64); 3] = [
        ("z^3 - 1", |z| z * z * z - 1.0, c(0.9, 0.0), c(1.0, 0.0)),
        ("z^2 + 1", |z| z * z + 1.0, c(0.5, 0.5), c(0.0, 1.0)),
        ("exp(z) - 2", |z| z.exp() - 2.0, c(0.0, 0.3), c(2f64.ln(), 0.0)),
    ];
    for (name, g, x_in, root) in cases {
        let cfg = MullerConfig {
            residual_tol: 0.0,
            ..MullerConfig::default()
        };
        let out = muller_solve(|z| Some(g(z)), x_in, &cfg).unwrap();
        println!("\n{name} from {x_in}: {:?} after {} steps", out.exit, out.iterations);
        for (k, x) in out.trace.iter().enumerate() {
            println!("  {k:>2}  {:<44} |x - root| = {:.3e}", format!("{x:.15}"), (x - root).norm());
        }
        // Order from the generated iterates; the seed centre is left out.
        if let Some(p) = empirical_order(&out.trace[1..], root, 4) {
            println!("  order ~ {p:.3}");
        }
    }
}
