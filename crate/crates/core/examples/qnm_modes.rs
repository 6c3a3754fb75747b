//! Schwarzschild quasinormal modes for `l = 2` from the coupled
//! angular/radial system. Each mode is seeded at the tabulated frequency plus
//! a small offset and solved together with `l`. `--plain` mixes the equations
//! as `[F₁ + F₂, F₁ − F₂]` without balancing their sizes first.
//!
//! ```text
//! cargo run --release --example qnm_modes [n...] [--eps 0.2] [--method m1|m2|newton|broyden] [--plain]
//! ```

use std::time::Instant;

use muller2d::systems::{qnm_default_config, solve_qnm_mode_with, QnmMix, QnmParams, QNM_SEED_OFFSET, QNM_TABLE};
use muller2d::Method;

fn main() {
    let mut modes = Vec::new();
    let mut eps = 0.0;
    let mut method = Method::M1;
    let mut mix = QnmMix::Balanced;
    let mut args = std::env::args().skip(1);
    while let Some(a) = args.next() {
        match a.as_str() {
            "--eps" => eps = args.next().and_then(|v| v.parse().ok()).expect("--eps takes a number"),
            "--plain" => mix = QnmMix::Plain,
            "--method" => method = args.next().and_then(|v| v.parse().ok()).expect("unknown method"),
            n => modes.push(n.parse::<usize>().expect("mode index")),
        }
    }
    if modes.is_empty() {
        modes = (0..QNM_TABLE.len()).collect();
    }
    let q = QnmParams::default().with_epsilon(eps);
    let mut cfg = qnm_default_config();
    cfg.method = method;
    println!("{:>2} {:<40} {:<28} {:>9} {:>6} {:>9} exit", "n", "omega", "l", "|dw|", "iters", "secs");
    for n in modes {
        let t = Instant::now();
        let out = solve_qnm_mode_with(QNM_TABLE[n] + QNM_SEED_OFFSET, &q, &cfg, mix).expect("config");
        println!(
            "{:>2} {:<40} {:<28} {:>9.2e} {:>6} {:>9.2} {}{}",
            n,
            format!("{:.10}", out.omega),
            format!("{:.10}", out.l),
            (out.omega - QNM_TABLE[n]).norm(),
            out.result.outer_iterations,
            t.elapsed().as_secs_f64(),
            out.result.exit_reason.name(),
            if out.is_mode() { "" } else { " (no mode)" },
        );
    }
}
