use std::fmt;
use std::io::Write;

use rayon::prelude::*;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use super::components::analyze;
use super::predictors::{local_predictors_with, DEFAULT_PREDICTOR_BUDGET};
use super::witness::component_diameter;
use super::{sample, PredictorAudit};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::trial_seed;

/// Environment variable overriding the worker count.
pub const THREADS_ENV: &str = "GIANTLAB_THREADS";

#[derive(Debug, Clone)]
pub struct McOptions {
    /// Predictor radius; `None` skips the predictor audit.
    pub r: Option<usize>,
    /// Vertex whose open-component eccentricity is recorded.
    pub ecc_vertex: Option<usize>,
    /// Worker threads; `None` reads `GIANTLAB_THREADS`, then uses all cores.
    pub threads: Option<usize>,
    pub predictor_budget: usize,
}

impl Default for McOptions {
    fn default() -> Self {
        Self { r: None, ecc_vertex: None, threads: None, predictor_budget: DEFAULT_PREDICTOR_BUDGET }
    }
}

/// Measurements of one trial. Fractions are per vertex of the host graph.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub trial: usize,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub p: f64,
    pub r: Option<usize>,
    pub c1_frac: f64,
    pub c2_size: usize,
    pub e1_frac: f64,
    pub excess_frac: f64,
    /// `D_k / n` for `k = 1..=d`.
    pub degree_frac: Vec<f64>,
    pub core_v_frac: f64,
    pub core_e_frac: f64,
    /// `D*_k / n` for `k = 2..=d`.
    pub core_degree_frac: Vec<f64>,
    pub bridges_frac: f64,
    /// 2-core vertices outside the giant, per vertex.
    pub noncore_giant_frac: f64,
    pub audit: Option<PredictorAudit>,
    pub ecc_v: Option<usize>,
}

/// One CSV cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(u64),
    Real(f64),
    Empty,
}

impl Cell {
    pub fn as_f64(self) -> Option<f64> {
        match self {
            Cell::Int(x) => Some(x as f64),
            Cell::Real(x) => Some(x),
            Cell::Empty => None,
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Int(x) => write!(f, "{x}"),
            Cell::Real(x) => write!(f, "{x}"),
            Cell::Empty => Ok(()),
        }
    }
}

/// CSV column names for a graph of maximum degree `d`.
pub fn csv_columns(d: usize) -> Vec<String> {
    let mut cols: Vec<String> = ["trial", "seed", "n", "m", "p", "R", "c1_frac", "c2_size", "e1_frac", "excess_frac"]
        .map(String::from)
        .to_vec();
    cols.extend((1..=d).map(|k| format!("d{k}_frac")));
    cols.extend(["core_v_frac", "core_e_frac"].map(String::from));
    cols.extend((2..=d).map(|k| format!("ds{k}_frac")));
    cols.extend(
        ["bridges_frac", "noncore_giant_frac", "audit_e1", "audit_v1", "audit_e2", "audit_v2", "ecc_v"]
            .map(String::from),
    );
    cols
}

impl ResultRow {
    /// Cells in [`csv_columns`] order.
    pub fn cells(&self) -> Vec<Cell> {
        let int = |x: usize| Cell::Int(x as u64);
        let mut cells = vec![
            int(self.trial),
            Cell::Int(self.seed),
            int(self.n),
            int(self.m),
            Cell::Real(self.p),
            self.r.map_or(Cell::Empty, int),
            Cell::Real(self.c1_frac),
            int(self.c2_size),
            Cell::Real(self.e1_frac),
            Cell::Real(self.excess_frac),
        ];
        cells.extend(self.degree_frac.iter().map(|&x| Cell::Real(x)));
        cells.push(Cell::Real(self.core_v_frac));
        cells.push(Cell::Real(self.core_e_frac));
        cells.extend(self.core_degree_frac.iter().map(|&x| Cell::Real(x)));
        cells.push(Cell::Real(self.bridges_frac));
        cells.push(Cell::Real(self.noncore_giant_frac));
        match self.audit {
            Some(a) => cells.extend([a.e1, a.v1, a.e2, a.v2].map(int)),
            None => cells.extend([Cell::Empty; 4]),
        }
        cells.push(self.ecc_v.map_or(Cell::Empty, int));
        cells
    }

    pub fn csv_record(&self) -> String {
        self.cells().iter().map(Cell::to_string).collect::<Vec<_>>().join(",")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ColumnStats {
    pub mean: f64,
    /// Sample standard deviation; absent for a single trial.
    pub std: Option<f64>,
    pub stderr: Option<f64>,
    pub count: usize,
}

/// Per-column statistics in column order (trial and seed excluded).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Summary {
    pub columns: Vec<(String, ColumnStats)>,
}

impl Summary {
    pub fn get(&self, column: &str) -> Option<&ColumnStats> {
        self.columns.iter().find(|(name, _)| name == column).map(|(_, s)| s)
    }

    pub fn mean(&self, column: &str) -> Option<f64> {
        self.get(column).map(|s| s.mean)
    }

    pub fn of(rows: &[ResultRow], d: usize) -> Self {
        let names = csv_columns(d);
        let table: Vec<Vec<Cell>> = rows.iter().map(ResultRow::cells).collect();
        let mut columns = Vec::new();
        for (j, name) in names.iter().enumerate().skip(2) {
            let xs: Vec<f64> = table.iter().filter_map(|r| r[j].as_f64()).collect();
            if xs.is_empty() {
                continue;
            }
            let k = xs.len() as f64;
            let mean = xs.iter().sum::<f64>() / k;
            let (std, stderr) = if xs.len() > 1 {
                let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0);
                (Some(var.sqrt()), Some((var / k).sqrt()))
            } else {
                (None, None)
            };
            columns.push((name.clone(), ColumnStats { mean, std, stderr, count: xs.len() }));
        }
        Self { columns }
    }
}

impl Serialize for Summary {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.columns.len()))?;
        for (name, stats) in &self.columns {
            map.serialize_entry(name, stats)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone)]
pub struct McResult {
    /// Maximum degree of the host graph; fixes the histogram columns.
    pub d: usize,
    pub rows: Vec<ResultRow>,
    pub summary: Summary,
}

impl McResult {
    /// Header line followed by one line per trial.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{}", csv_columns(self.d).join(","))?;
        for row in &self.rows {
            writeln!(out, "{}", row.csv_record())?;
        }
        Ok(())
    }
}

/// Resolves the worker count: explicit option, then `GIANTLAB_THREADS`,
/// then 0 (all cores).
pub fn thread_count(explicit: Option<usize>) -> usize {
    explicit.or_else(|| std::env::var(THREADS_ENV).ok().and_then(|s| s.trim().parse().ok())).unwrap_or(0)
}

/// Runs `trials` independent percolation trials on `g`. Trial `i` uses seed
/// `trial_seed(master_seed, i)`; rows are ordered by trial, so the output
/// does not depend on the thread count.
pub fn monte_carlo(g: &Graph, p: f64, trials: usize, master_seed: u64, options: &McOptions) -> Result<McResult> {
    if trials == 0 {
        return Err(Error::param("trials must be at least 1"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::param(format!("p must lie in [0, 1], got {p}")));
    }
    if let Some(v) = options.ecc_vertex {
        if v >= g.n() {
            return Err(Error::param(format!("eccentricity vertex {v} out of range")));
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_count(options.threads))
        .build()
        .map_err(|e| Error::param(format!("thread pool: {e}")))?;
    let rows = pool.install(|| {
        (0..trials)
            .into_par_iter()
            .map(|t| run_trial(g, p, t, trial_seed(master_seed, t as u64), options))
            .collect::<Result<Vec<_>>>()
    })?;
    let d = g.max_degree();
    let summary = Summary::of(&rows, d);
    Ok(McResult { d, rows, summary })
}

fn run_trial(g: &Graph, p: f64, trial: usize, seed: u64, options: &McOptions) -> Result<ResultRow> {
    let mask = sample(g, p, seed)?;
    let a = analyze(g, &mask);
    let audit = match options.r {
        Some(r) => Some(local_predictors_with(g, &mask, r, &a, options.predictor_budget)?.audit),
        None => None,
    };
    let ecc_v = options.ecc_vertex.map(|v| component_diameter(g, &mask, v).0);
    let n = g.n();
    let frac = |x: usize| x as f64 / n as f64;
    let d = g.max_degree();
    let c = &a.components;
    let core = &a.core;
    Ok(ResultRow {
        trial,
        seed,
        n,
        m: g.m(),
        p,
        r: options.r,
        c1_frac: frac(c.giant_size),
        c2_size: c.second_size,
        e1_frac: frac(c.giant_edges),
        excess_frac: frac(c.giant_excess),
        degree_frac: (1..=d).map(|k| frac(c.degree_hist[k])).collect(),
        core_v_frac: frac(core.vertices),
        core_e_frac: frac(core.edges),
        core_degree_frac: (2..=d).map(|k| frac(core.degree_hist[k])).collect(),
        bridges_frac: frac(core.bridges),
        noncore_giant_frac: frac(core.other_core_vertices),
        audit,
        ecc_v,
    })
}
