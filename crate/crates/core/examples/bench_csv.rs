//! Runs a benchmark suite through the library harness, writes the records as
//! CSV and reads them back.
//!
//! ```text
//! cargo run --release --example bench_csv [basic|heun|all] [out.csv]
//! ```

use std::fs::File;

use muller2d::harness::{read_csv, run_cells, suite_cells, write_records, Format, Overrides};

fn main() {
    let mut args = std::env::args().skip(1);
    let suite = args.next().unwrap_or_else(|| "basic".to_string());
    let path = args.next().unwrap_or_else(|| std::env::temp_dir().join("muller2d_bench.csv").display().to_string());

    let cells = suite_cells(&suite, &Overrides::default()).expect("suite");
    let records = run_cells(&cells, 3).expect("valid settings");
    write_records(&records, Format::Csv, File::create(&path).expect("create")).expect("write");

    let rows = read_csv(File::open(&path).expect("open")).expect("parse");
    let converged = rows.iter().filter(|r| r.status == "StepBelowTolerance" || r.status == "OneFunctionZeroFallback").count();
    let matched = rows.iter().filter(|r| !r.matched_root.is_empty()).count();
    let banded = rows.iter().filter(|r| r.iters_within_band == Some(true)).count();
    let reported = rows.iter().filter(|r| r.reported_iters.is_some()).count();
    println!("{} records written to {path}", rows.len());
    println!("converged {converged}, matched a cataloged root {matched}, iterations within ±50% of the reported count {banded}/{reported}");
    let total: f64 = rows.iter().map(|r| r.wall_time_ms).sum();
    println!("mean wall time per cell {:.3} ms", total / rows.len().max(1) as f64);
}
