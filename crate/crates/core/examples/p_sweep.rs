//! Sweeps the inner iteration cap `P` on S4 from `(4.4 − 5i, 8.5 − 16i)`.
//! Different `P` lead the Müller variants to different roots of the
//! seven-root catalog; Newton and the finite-difference baseline are shown
//! for comparison.
//!
//! ```text
//! cargo run --release --example p_sweep
//! ```

use muller2d::systems::{by_name, S4_MULTI_START};
use muller2d::{solve, Method, SolveConfig};

fn main() {
    let sys = by_name("S4").expect("preset");
    for method in [Method::Newton, Method::Broyden] {
        let res = solve(&sys, S4_MULTI_START, &SolveConfig::with_method(method)).expect("config");
        let label = sys.match_root(&res.root).map_or("-", |r| r.label.as_str());
        println!("{:<8} iters {:>3}  root {:<4} {}", method.name(), res.outer_iterations, label, res.exit_reason.name());
    }
    for method in [Method::M2, Method::M1] {
        for p in 3..=17 {
            let cfg = SolveConfig::with_method(method).inner_cap(p);
            let res = solve(&sys, S4_MULTI_START, &cfg).expect("config");
            let label = sys.match_root(&res.root).map_or("-", |r| r.label.as_str());
            println!(
                "{:<8} P={:<2} iters {:>3}  root {:<4} {}  {}",
                method.name(),
                p,
                res.outer_iterations,
                label,
                res.exit_reason.name(),
                res.root
            );
        }
    }
}
