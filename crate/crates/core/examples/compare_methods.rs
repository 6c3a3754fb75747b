//! Runs every reference row of the elementary and special-function systems with
//! all four methods and prints iterations next to the reported counts.
//!
//! ```text
//! cargo run --release --example compare_methods [SYSTEM...]
//! ```

use muller2d::systems::{by_name, reference_rows};
use muller2d::{solve, Method};

fn main() {
    let only: Vec<String> = std::env::args().skip(1).map(|s| s.to_uppercase()).collect();
    println!(
        "{:<5} {:<4} {:<8} {:>6} {:>6} {:>8} {:<24} {}",
        "sys", "row", "method", "iters", "ref", "inner", "exit", "root"
    );
    for row in reference_rows() {
        if row.system == "KERR" || (!only.is_empty() && !only.iter().any(|s| s == row.system)) {
            continue;
        }
        let sys = by_name(row.system).expect("preset");
        for method in Method::ALL {
            let Some((reported, _)) = row.reported(method) else { continue };
            let res = solve(&sys, row.start, &row.config(method)).expect("valid config");
            let hit = if res.root.max_dist(&row.root) < 1e-9 { "match" } else { "MISS" };
            println!(
                "{:<5} {:<4} {:<8} {:>6} {:>6} {:>8} {:<24} {} {} |F|={:.1e}",
                row.system,
                row.label,
                method.name(),
                res.outer_iterations,
                reported,
                res.inner_iterations_total,
                res.exit_reason.name(),
                hit,
                res.root,
                res.max_residual()
            );
        }
    }
}
