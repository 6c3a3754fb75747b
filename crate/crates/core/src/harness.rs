//! Batch drivers behind the command-line tool: complex literal parsing, run
//! records with CSV/JSON output, benchmark suites and parameter sweeps.
//!
//! Cells of a suite run in parallel; records always come back in input order.

use std::io::Write;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::baselines::solve_with;
use crate::system::SystemSpec;
use crate::systems::{
    by_name, catalog, reference_rows, solve_qnm_mode, QnmParams, ReferenceRow, QNM_L_START, QNM_LITERATURE,
    QNM_SEED_OFFSET, QNM_TABLE,
};
use crate::types::{ConfigError, Method, Mix2, PointPair, RootResult, SolveConfig};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("malformed complex literal '{0}'")]
    Complex(String),
    #[error("expected a pair 'x,y', got '{0}'")]
    Pair(String),
    #[error("expected four complex entries 'a,b,c,d', got '{0}'")]
    Matrix(String),
    #[error("malformed range '{0}' (expected lo:hi or lo:hi:step)")]
    Range(String),
    #[error("unknown system '{0}'")]
    UnknownSystem(String),
    #[error("unknown suite '{0}' (expected basic, heun, qnm or all)")]
    UnknownSuite(String),
    #[error("unknown sweep parameter '{0}' (expected p or epsilon)")]
    UnknownParam(String),
    #[error("mode index {0} is outside the table (0..={max})", max = QNM_TABLE.len() - 1)]
    Mode(usize),
    #[error("system '{0}' has no start point; pass one explicitly")]
    NoStart(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Parses `"a+bi"`, `"-5.4"`, `"3i"`, `"-i"`, `"1e-3-2.5e2i"`.
pub fn parse_complex(s: &str) -> Result<Complex64, HarnessError> {
    let err = || HarnessError::Complex(s.to_string());
    if s.is_empty() || s.chars().any(char::is_whitespace) {
        return Err(err());
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| err());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let re = if re.is_empty() { 0.0 } else { re.parse::<f64>().map_err(|_| err())? };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        v => v.parse::<f64>().map_err(|_| err())?,
    };
    Ok(Complex64::new(re, im))
}

/// Twelve significant digits per part, in a form [`parse_complex`] reads back.
pub fn format_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() && !z.im.is_nan() { "" } else { "+" };
    format!("{:.11e}{}{:.11e}i", z.re, sign, z.im)
}

/// `"x,y"` with complex literals on both sides.
pub fn parse_pair(s: &str) -> Result<PointPair, HarnessError> {
    let (x, y) = s.split_once(',').ok_or_else(|| HarnessError::Pair(s.to_string()))?;
    Ok(PointPair::new(parse_complex(x)?, parse_complex(y)?))
}

/// `"a1,b1,a2,b2"`.
pub fn parse_matrix(s: &str) -> Result<Mix2, HarnessError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(HarnessError::Matrix(s.to_string()));
    }
    let v = parts.iter().map(|p| parse_complex(p)).collect::<Result<Vec<_>, _>>()?;
    Ok(Mix2::new(v[0], v[1], v[2], v[3]))
}

/// `lo:hi[:step]`, inclusive of `hi` up to rounding; `step` defaults to 1.
pub fn parse_range(s: &str) -> Result<Vec<f64>, HarnessError> {
    let err = || HarnessError::Range(s.to_string());
    let parts = s.split(':').map(|p| p.parse::<f64>().map_err(|_| err())).collect::<Result<Vec<_>, _>>()?;
    let (lo, hi, step) = match parts[..] {
        [lo, hi] => (lo, hi, 1.0),
        [lo, hi, step] => (lo, hi, step),
        _ => return Err(err()),
    };
    if !(step > 0.0) || !(hi >= lo) || !lo.is_finite() || !hi.is_finite() {
        return Err(err());
    }
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|k| lo + k as f64 * step).collect())
}

/// Mode lists: `"0..7"` (inclusive), `"3"`, `"0,2,5"`.
pub fn parse_modes(s: &str) -> Result<Vec<usize>, HarnessError> {
    let err = || HarnessError::Range(s.to_string());
    let mut out = Vec::new();
    for part in s.split(',') {
        if let Some((a, b)) = part.split_once("..") {
            let a: usize = a.parse().map_err(|_| err())?;
            let b: usize = b.trim_start_matches('=').parse().map_err(|_| err())?;
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| err())?);
        }
    }
    for &n in &out {
        if n >= QNM_TABLE.len() {
            return Err(HarnessError::Mode(n));
        }
    }
    Ok(out)
}

/// Settings given on the command line; unset fields keep each cell's own value.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub method: Option<Method>,
    pub digits: Option<u32>,
    pub inner_cap: Option<usize>,
    pub outer_cap: Option<usize>,
    pub deviation: Option<Complex64>,
    pub swap: bool,
    pub precondition: Option<Mix2>,
}

impl Overrides {
    pub fn apply(&self, mut cfg: SolveConfig) -> SolveConfig {
        if let Some(m) = self.method {
            cfg.method = m;
        }
        if let Some(d) = self.digits {
            cfg.digits = d;
        }
        if let Some(p) = self.inner_cap {
            cfg.inner_cap = p;
        }
        if let Some(n) = self.outer_cap {
            cfg.outer_cap = n;
        }
        if let Some(d) = self.deviation {
            cfg.deviation = d;
        }
        if self.swap {
            cfg.swap_equations = !cfg.swap_equations;
        }
        if let Some(m) = self.precondition {
            cfg.precondition = Some(m);
        }
        cfg
    }
}

/// One solve and its bookkeeping.
#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub system: String,
    pub method: Method,
    pub start: PointPair,
    pub result: RootResult,
    pub matched_known_root: Option<String>,
    /// Mean over the repeats.
    pub wall_time_ms: f64,
    /// Reported iteration count for this cell, when there is one.
    pub reported_iters: Option<usize>,
    /// Distance to the reference value of this cell.
    pub delta_ref: Option<f64>,
}

impl RunRecord {
    /// Reported count within ±50% of ours.
    pub fn iters_within_band(&self) -> Option<bool> {
        self.reported_iters.map(|p| (self.result.outer_iterations as f64 - p as f64).abs() <= 0.5 * p as f64)
    }

    pub fn row(&self) -> CsvRow {
        CsvRow {
            system: self.system.clone(),
            method: self.method.name().to_string(),
            x0: format_complex(self.start.x),
            y0: format_complex(self.start.y),
            x_final: format_complex(self.result.root.x),
            y_final: format_complex(self.result.root.y),
            outer_iters: self.result.outer_iterations,
            inner_iters: self.result.inner_iterations_total,
            f1_abs: round12(self.result.residual_f1),
            f2_abs: round12(self.result.residual_f2),
            status: self.status(),
            matched_root: self.matched_known_root.clone().unwrap_or_default(),
            wall_time_ms: round12(self.wall_time_ms),
            reported_iters: self.reported_iters,
            iters_within_band: self.iters_within_band(),
            delta_ref: self.delta_ref.map(round12),
        }
    }

    /// Exit reason, with `/precision` appended for precision-limited stops.
    pub fn status(&self) -> String {
        let mut s = self.result.exit_reason.name().to_string();
        if self.result.precision_limited {
            s.push_str("/precision");
        }
        s
    }
}

/// Flat form of a [`RunRecord`], shared by the CSV and JSON writers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub system: String,
    pub method: String,
    pub x0: String,
    pub y0: String,
    pub x_final: String,
    pub y_final: String,
    pub outer_iters: usize,
    pub inner_iters: usize,
    pub f1_abs: f64,
    pub f2_abs: f64,
    pub status: String,
    pub matched_root: String,
    pub wall_time_ms: f64,
    pub reported_iters: Option<usize>,
    pub iters_within_band: Option<bool>,
    pub delta_ref: Option<f64>,
}

fn round12(v: f64) -> f64 {
    format!("{v:.11e}").parse().unwrap_or(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

pub fn write_records<W: Write>(records: &[RunRecord], format: Format, out: W) -> Result<(), HarnessError> {
    let rows: Vec<CsvRow> = records.iter().map(RunRecord::row).collect();
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in &rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        Format::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, &rows)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

pub fn read_csv<R: std::io::Read>(input: R) -> Result<Vec<CsvRow>, HarnessError> {
    let mut r = csv::Reader::from_reader(input);
    Ok(r.deserialize().collect::<Result<Vec<CsvRow>, _>>()?)
}

/// A cell to run: system, start, settings and reference metadata.
#[derive(Clone, Debug)]
pub struct Cell {
    pub system: SystemSpec,
    pub start: PointPair,
    pub cfg: SolveConfig,
    pub reported_iters: Option<usize>,
    pub reference_root: Option<PointPair>,
}

impl Cell {
    pub fn new(system: SystemSpec, start: PointPair, cfg: SolveConfig) -> Self {
        Self {
            system,
            start,
            cfg,
            reported_iters: None,
            reference_root: None,
        }
    }
}

/// Runs a cell `repeat` times (at least once). The result of the first run
/// is kept; the wall time is the mean.
pub fn run_cell(cell: &Cell, repeat: usize) -> Result<RunRecord, ConfigError> {
    let mut first = None;
    let mut total = 0.0;
    for _ in 0..repeat.max(1) {
        let t = Instant::now();
        let r = solve_with(&cell.system, cell.start, &cell.cfg)?;
        total += t.elapsed().as_secs_f64() * 1e3;
        first.get_or_insert(r);
    }
    let result = first.expect("at least one run");
    Ok(RunRecord {
        system: cell.system.name.clone(),
        method: cell.cfg.method,
        start: cell.start,
        matched_known_root: cell.system.match_root(&result.root).map(|k| k.label.clone()),
        delta_ref: cell.reference_root.map(|r| r.max_dist(&result.root)),
        reported_iters: cell.reported_iters,
        wall_time_ms: total / repeat.max(1) as f64,
        result,
    })
}

/// Runs cells in parallel and returns their records in input order.
pub fn run_cells(cells: &[Cell], repeat: usize) -> Result<Vec<RunRecord>, ConfigError> {
    cells.par_iter().map(|c| run_cell(c, repeat)).collect()
}

pub fn lookup(name: &str) -> Result<SystemSpec, HarnessError> {
    by_name(name).ok_or_else(|| HarnessError::UnknownSystem(name.to_string()))
}

const BASIC: [&str; 7] = ["S1", "S2", "S3", "S4", "S5", "S6", "S7"];
const HEUN: [&str; 2] = ["EX1", "KERR"];

fn row_cells(system: &str, ov: &Overrides) -> Result<Vec<Cell>, HarnessError> {
    let sys = lookup(system)?;
    let rows: Vec<ReferenceRow> = reference_rows().into_iter().filter(|r| r.system == system).collect();
    let mut cells = Vec::new();
    for start in sys.recommended_starts.clone() {
        let row = rows.iter().find(|r| r.start == start);
        for method in Method::ALL {
            let (cfg, reported_iters) = match row {
                Some(row) => match row.reported(method) {
                    Some((n, _)) => (row.config(method), Some(n)),
                    None => continue,
                },
                None => (SolveConfig::with_method(method), None),
            };
            let mut cell = Cell::new(sys.clone(), start, ov.apply(cfg));
            cell.reported_iters = reported_iters;
            cell.reference_root = row.map(|r| r.root);
            cells.push(cell);
        }
    }
    Ok(cells)
}

/// Cells of a named suite. `qnm` cells are handled by [`qnm_records`] and
/// are not part of this list.
pub fn suite_cells(suite: &str, ov: &Overrides) -> Result<Vec<Cell>, HarnessError> {
    let names: &[&str] = match suite {
        "basic" => &BASIC,
        "heun" => &HEUN,
        "qnm" => &[],
        "all" => &["S1", "S2", "S3", "S4", "S5", "S6", "S7", "EX1", "KERR"],
        other => return Err(HarnessError::UnknownSuite(other.to_string())),
    };
    let mut cells = Vec::new();
    for n in names {
        cells.extend(row_cells(n, ov)?);
    }
    Ok(cells)
}

/// Mode solves with the balanced sum/difference mix. `delta_ref` is the
/// distance to the literature value; `matched_root` names the tabulated mode
/// when the result lies within its tolerance.
pub fn qnm_records(
    modes: &[usize],
    q: &QnmParams,
    cfg: &SolveConfig,
    repeat: usize,
) -> Result<Vec<RunRecord>, HarnessError> {
    for &n in modes {
        if n >= QNM_TABLE.len() {
            return Err(HarnessError::Mode(n));
        }
    }
    let sys = crate::systems::build_rw_system(q);
    let recs = modes
        .par_iter()
        .map(|&n| {
            let seed = QNM_TABLE[n] + QNM_SEED_OFFSET;
            let mut first = None;
            let mut total = 0.0;
            for _ in 0..repeat.max(1) {
                let t = Instant::now();
                let out = solve_qnm_mode(seed, q, cfg)?;
                total += t.elapsed().as_secs_f64() * 1e3;
                first.get_or_insert(out);
            }
            let out = first.expect("at least one run");
            let matched = if out.is_mode() {
                sys.match_root(&out.result.root).map(|k| k.label.clone())
            } else {
                None
            };
            Ok(RunRecord {
                system: "RW".to_string(),
                method: cfg.method,
                start: PointPair::new(seed, QNM_L_START),
                matched_known_root: matched,
                wall_time_ms: total / repeat.max(1) as f64,
                reported_iters: None,
                delta_ref: Some((out.omega - QNM_LITERATURE[n]).norm()),
                result: out.result,
            })
        })
        .collect::<Result<Vec<_>, ConfigError>>()?;
    Ok(recs)
}

/// Full benchmark: the cells of `suite`, then the mode table when the suite
/// is `qnm` or `all`.
pub fn bench(
    suite: &str,
    ov: &Overrides,
    modes: &[usize],
    q: &QnmParams,
    repeat: usize,
) -> Result<Vec<RunRecord>, HarnessError> {
    let mut recs = run_cells(&suite_cells(suite, ov)?, repeat)?;
    if suite == "qnm" || suite == "all" {
        let cfg = ov.apply(crate::systems::qnm_default_config());
        recs.extend(qnm_records(modes, q, &cfg, repeat)?);
    }
    Ok(recs)
}

/// Runs `system` from `start` once for each `P` in `values`.
pub fn sweep_p(
    system: &SystemSpec,
    start: PointPair,
    base: &SolveConfig,
    values: &[f64],
    repeat: usize,
) -> Result<Vec<RunRecord>, HarnessError> {
    let cells: Vec<Cell> = values
        .iter()
        .map(|&p| Cell::new(system.clone(), start, base.clone().inner_cap(p.round().max(0.0) as usize)))
        .collect();
    Ok(run_cells(&cells, repeat)?)
}

/// Solves mode `mode` once for each phase shift `ε` in `values`.
pub fn sweep_epsilon(
    mode: usize,
    base: &QnmParams,
    cfg: &SolveConfig,
    values: &[f64],
    repeat: usize,
) -> Result<Vec<RunRecord>, HarnessError> {
    let mut out = Vec::new();
    for &eps in values {
        // Snap float ranges like -0.3:0.3:0.1 onto exact decimals so 0 stays 0.
        let eps = (eps * 1e12).round() / 1e12;
        out.extend(qnm_records(&[mode], &base.with_epsilon(eps), cfg, repeat)?);
    }
    Ok(out)
}

/// One line per preset for `list-systems`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemSummary {
    pub name: String,
    pub known_roots: Vec<(String, String, String)>,
    pub starts: Vec<(String, String)>,
}

pub fn list_systems() -> Vec<SystemSummary> {
    catalog()
        .into_iter()
        .map(|s| SystemSummary {
            known_roots: s
                .known_roots
                .iter()
                .map(|k| (k.label.clone(), format_complex(k.pair.x), format_complex(k.pair.y)))
                .collect(),
            starts: s.recommended_starts.iter().map(|p| (format_complex(p.x), format_complex(p.y))).collect(),
            name: s.name,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("0.17+0.97i").unwrap(), c(0.17, 0.97));
        assert_eq!(parse_complex("-5.4").unwrap(), c(-5.4, 0.0));
        assert_eq!(parse_complex("3i").unwrap(), c(0.0, 3.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("2-i").unwrap(), c(2.0, -1.0));
        assert_eq!(parse_complex("1e-3-2.5e+2i").unwrap(), c(1e-3, -250.0));
        assert_eq!(parse_complex("4.4-5.0i").unwrap(), c(4.4, -5.0));
        for bad in ["", "1 + 2i", "abc", "1+2j", "1++2i", "--1"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn format_reads_back() {
        for z in [c(1.1890465736, -0.1379439181), c(-0.0, 0.0), c(1e-300, -7.5e12)] {
            let back = parse_complex(&format_complex(z)).unwrap();
            assert!((back - z).norm() <= 1e-11 * z.norm());
        }
    }

    #[test]
    fn pairs_and_matrices() {
        assert_eq!(parse_pair("1.689,-0.637").unwrap(), PointPair::real(1.689, -0.637));
        assert!(parse_pair("1.689").is_err());
        assert_eq!(parse_matrix("1,1,1,-1").unwrap(), Mix2::sum_difference());
        assert!(parse_matrix("1,1,1").is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3:17").unwrap().len(), 15);
        assert_eq!(parse_range("5:5").unwrap(), vec![5.0]);
        let e = parse_range("-0.3:0.3:0.1").unwrap();
        assert_eq!(e.len(), 7);
        assert!(e[3].abs() < 1e-12);
        assert!(parse_range("3:1").is_err());
        assert!(parse_range("1:2:0").is_err());
        assert_eq!(parse_modes("0..3,7").unwrap(), vec![0, 1, 2, 3, 7]);
        assert!(parse_modes("12").is_err());
    }

    #[test]
    fn overrides_leave_unset_fields() {
        let cfg = SolveConfig::with_method(Method::M2).inner_cap(4);
        let ov = Overrides {
            digits: Some(9),
            ..Overrides::default()
        };
        let out = ov.apply(cfg.clone());
        assert_eq!(out.inner_cap, 4);
        assert_eq!(out.digits, 9);
        assert_eq!(out.method, Method::M2);
    }

    #[test]
    fn basic_records_are_ordered_and_matched() {
        let recs = run_cells(&suite_cells("basic", &Overrides::default()).unwrap(), 1).unwrap();
        let again = run_cells(&suite_cells("basic", &Overrides::default()).unwrap(), 1).unwrap();
        assert_eq!(recs.len(), again.len());
        for (a, b) in recs.iter().zip(&again) {
            assert_eq!(a.result, b.result);
            assert_eq!(a.system, b.system);
        }
        for r in &recs {
            if r.result.converged() && r.delta_ref.is_some() {
                assert!(r.matched_known_root.is_some(), "{} {:?}", r.system, r.result.root);
            }
        }
    }
}
