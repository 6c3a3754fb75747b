//! Equation order and linear mixing. Newton-type methods do not care about
//! either; the Müller variants may end at a different root, but every exit
//! is a root of the original system.

use muller2d::systems::{by_name, reference_rows};
use muller2d::{solve, Method, Mix2, SolveConfig};
use num_complex::Complex64;

fn main() {
    let mixes = [
        ("as given", None),
        ("[F1+F2, F1-F2]", Some(Mix2::sum_difference())),
        (
            "[F1+iF2, 2F1-F2]",
            Some(Mix2::new(
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(2.0, 0.0),
                Complex64::new(-1.0, 0.0),
            )),
        ),
    ];
    for row in reference_rows().into_iter().filter(|r| ["S1", "S3", "S6"].contains(&r.system)) {
        let sys = by_name(row.system).unwrap();
        println!("{} row {} from {}", row.system, row.label, row.start);
        for method in [Method::Newton, Method::M1, Method::M2] {
            for swap in [false, true] {
                for (name, mix) in &mixes {
                    let mut cfg = SolveConfig::with_method(method).inner_cap(4).swapped(swap);
                    cfg.precondition = *mix;
                    let r = solve(&sys, row.start, &cfg).unwrap();
                    let label = sys.match_root(&r.root).map(|k| k.label.as_str()).unwrap_or("-");
                    let (f1, f2) = sys.residual(r.root).unwrap_or((f64::NAN, f64::NAN));
                    println!(
                        "  {:<7} swap={:<5} {:<17} {:>3} iters  root {:<4} original |F| = {:.1e}",
                        method.name(),
                        swap,
                        name,
                        r.outer_iterations,
                        label,
                        f1.max(f2)
                    );
                }
            }
        }
    }
}
