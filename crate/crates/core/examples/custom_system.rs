//! Defining a system in code and solving it with each method.
//!
//! The system is `x² + y² = 4`, `eˣ + y = 1` over the complex numbers.

use muller2d::{solve, Method, PointPair, SolveConfig, SystemSpec};
use num_complex::Complex64;

fn main() {
    let sys = SystemSpec::new("circle-exp", |x, y| x * x + y * y - 4.0, |x, y| x.exp() + y - 1.0)
        .with_jacobian(|x, y| Ok([[2.0 * x, 2.0 * y], [x.exp(), Complex64::new(1.0, 0.0)]]));

    let starts = [
        PointPair::real(-1.8, 0.8),
        PointPair::real(1.0, -1.7),
        PointPair::new(Complex64::new(0.5, 1.0), Complex64::new(1.0, -1.0)),
    ];
    for start in starts {
        println!("start {start}");
        for method in Method::ALL {
            let cfg = SolveConfig::with_method(method).inner_cap(4);
            let r = solve(&sys, start, &cfg).expect("valid settings");
            println!(
                "  {:<8} {:>3} iters  {:<26} {:.10}  |F| = {:.1e}",
                method.name(),
                r.outer_iterations,
                r.exit_reason.name(),
                r.root,
                r.max_residual()
            );
        }
    }
}
