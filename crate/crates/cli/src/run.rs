use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use giantlab::graph::{
    girth, random_regular, read_graph, theorem2_build, theorem3_build, write_graph, Theorem2Params, Theorem3Params,
};
use giantlab::percolation::csv_columns;
use giantlab::theory::degree_forecast;
use giantlab::{giant_forecast, monte_carlo, Graph, McOptions, McResult, PercolationParams};
use serde_json::{json, Value};

use crate::config::{check_probability, parse_count_grid, parse_real_grid, usage, Settings};

pub struct Built {
    pub graph: Graph,
    /// Designated vertex of the long-range component, when the
    /// construction has one.
    pub root: Option<usize>,
    pub report: Value,
}

/// Forecast document shared by `forecast --json` and summary files.
pub fn forecast_json(d: usize, p: f64) -> Result<Value> {
    let params = PercolationParams::new(d, p).map_err(|e| usage(e.to_string()))?;
    let f = giant_forecast(params);
    let deg = degree_forecast(params);
    Ok(json!({
        "d": d,
        "p": p,
        "supercritical": f.supercritical,
        "q": f.q,
        "theta1": f.theta1,
        "eta1": f.eta1,
        "theta2": f.theta2,
        "eta2": f.eta2,
        "excess": f.excess1,
        "alpha": deg.alpha_k(),
        "beta": deg.beta_k(),
    }))
}

pub fn print_forecast(d: usize, p: f64, as_json: bool) -> Result<()> {
    let doc = forecast_json(d, p)?;
    let mut out = io::stdout().lock();
    if as_json {
        serde_json::to_writer_pretty(&mut out, &doc)?;
        writeln!(out)?;
        return Ok(());
    }
    writeln!(out, "# giantlab {} forecast d={d} p={p}", env!("CARGO_PKG_VERSION"))?;
    writeln!(out, "supercritical={}", doc["supercritical"])?;
    for key in ["q", "theta1", "eta1", "theta2", "eta2", "excess"] {
        writeln!(out, "{key}={:.6}", doc[key].as_f64().unwrap())?;
    }
    for (name, first) in [("alpha", 1), ("beta", 2)] {
        for (i, x) in doc[name].as_array().unwrap().iter().enumerate() {
            writeln!(out, "{name}{}={:.6}", i + first, x.as_f64().unwrap())?;
        }
    }
    Ok(())
}

/// Builds or loads the graph described by `s`, with `n` and `p` taken from
/// the arguments so that grid points can vary them.
pub fn build_graph(s: &Settings, n: usize, p: f64) -> Result<Built> {
    let seed: u64 = s.require("seed")?;
    let kind = s.raw("kind").unwrap_or("regular");
    match kind {
        "file" => {
            let path = s.path("graph").ok_or_else(|| usage("--kind file needs --graph"))?;
            let graph = read_graph(&path).with_context(|| format!("reading graph {}", path.display()))?;
            let report = json!({ "kind": kind, "vertices": graph.n(), "edges": graph.m() });
            Ok(Built { graph, root: None, report })
        }
        "regular" => {
            let d: usize = s.require("d")?;
            let graph = random_regular(n, d, seed)?;
            let report = json!({ "kind": kind, "vertices": graph.n(), "edges": graph.m(), "girth": girth(&graph) });
            Ok(Built { graph, root: None, report })
        }
        "theorem2" => {
            let mut params = Theorem2Params::new(n, s.require("alpha")?, s.require("d")?, p);
            params.seed = seed;
            if let Some(delta) = s.get("delta")? {
                params.delta = delta;
            }
            params.m_gadget = s.count("gadget-m")?;
            if let Some(girth) = s.get("gadget-girth")? {
                params.gadget_girth = girth;
            }
            let (graph, report) = theorem2_build(&params)?;
            Ok(Built { graph, root: None, report: with_kind(kind, serde_json::to_value(report)?) })
        }
        "theorem3" => {
            let mut params = Theorem3Params::new(p, s.get("eps")?.unwrap_or(0.5), n);
            params.seed = seed;
            let (graph, root, report) = theorem3_build(&params)?;
            let report = with_kind(kind, serde_json::to_value(report)?);
            Ok(Built { graph, root: Some(root), report })
        }
        other => Err(usage(format!("unknown --kind {other:?}; expected regular, theorem2, theorem3 or file"))),
    }
}

fn with_kind(kind: &str, mut report: Value) -> Value {
    report.as_object_mut().unwrap().insert("kind".into(), kind.into());
    report
}

/// Normalises settings shared by every experiment subcommand.
pub fn prepare(mut s: Settings) -> Result<Settings> {
    if s.raw("graph").is_some() {
        s.set("kind", "file");
    }
    let n = s.count("n")?.unwrap_or(0);
    s.set("n", n);
    Ok(s)
}

pub fn build(s: Settings) -> Result<()> {
    let s = prepare(s)?;
    let out = s.path("out").ok_or_else(|| usage("build needs --out"))?;
    let n = s.count("n")?.unwrap_or(0);
    let built = build_graph(&s, n, s.probability("p")?)?;
    write_graph(&built.graph, create(&out)?).with_context(|| format!("writing {}", out.display()))?;
    let doc = json!({ "config": s.to_json(), "graph": built.report, "root": built.root });
    let text = serde_json::to_string_pretty(&doc)?;
    match s.path("summary") {
        Some(path) => write_text(&path, &text)?,
        None => writeln!(io::stdout().lock(), "{text}")?,
    }
    Ok(())
}

fn mc_options(s: &Settings, threads: Option<usize>, root: Option<usize>) -> Result<McOptions> {
    Ok(McOptions { r: s.get("r")?, ecc_vertex: s.get("ecc-vertex")?.or(root), threads, ..McOptions::default() })
}

fn forecast_for(g: &Graph, p: f64) -> Value {
    forecast_json(g.max_degree(), p).unwrap_or(Value::Null)
}

pub fn percolate(s: Settings, threads: Option<usize>) -> Result<()> {
    let s = prepare(s)?;
    let p = s.probability("p")?;
    let trials: usize = s.require("trials")?;
    let seed: u64 = s.require("seed")?;
    let built = build_graph(&s, s.count("n")?.unwrap_or(0), p)?;
    let opts = mc_options(&s, threads, built.root)?;
    let res = monte_carlo(&built.graph, p, trials, seed, &opts)?;

    let mut csv = s.header("percolate");
    csv.push_str(&csv_columns(res.d).join(","));
    csv.push('\n');
    for row in &res.rows {
        csv.push_str(&row.csv_record());
        csv.push('\n');
    }
    let summary = json!({
        "config": s.to_json(),
        "forecast": forecast_for(&built.graph, p),
        "summary_stats": res.summary,
    });
    emit(&s, &csv, &summary)
}

/// One Monte Carlo block of a sweep.
struct Block {
    point: f64,
    result: McResult,
    forecast: Value,
}

pub fn sweep(s: Settings, threads: Option<usize>) -> Result<()> {
    let s = prepare(s)?;
    let trials: usize = s.require("trials")?;
    let seed: u64 = s.require("seed")?;
    let (p_grid, n_grid) = (s.raw("p-grid"), s.raw("n-grid"));
    let mut blocks = Vec::new();
    let mut slope_fit = Value::Null;
    match (p_grid, n_grid) {
        (Some(_), Some(_)) => return Err(usage("give only one of --p-grid and --n-grid")),
        (None, None) => return Err(usage("sweep needs --p-grid or --n-grid")),
        (Some(grid), None) => {
            let grid = parse_real_grid("p-grid", grid)?;
            nonempty("p-grid", grid.len())?;
            let n = s.count("n")?.unwrap_or(0);
            let rebuild = matches!(s.raw("kind"), Some("theorem2" | "theorem3"));
            let mut cached: Option<Built> = None;
            for &p in &grid {
                check_probability("p-grid", p)?;
                if rebuild || cached.is_none() {
                    cached = Some(build_graph(&s, n, p)?);
                }
                let built = cached.as_ref().unwrap();
                let result = monte_carlo(&built.graph, p, trials, seed, &mc_options(&s, threads, built.root)?)?;
                blocks.push(Block { point: p, forecast: forecast_for(&built.graph, p), result });
            }
        }
        (None, Some(grid)) => {
            let grid = parse_count_grid("n-grid", grid)?;
            nonempty("n-grid", grid.len())?;
            let p = s.probability("p")?;
            for &n in &grid {
                let built = build_graph(&s, n, p)?;
                let result = monte_carlo(&built.graph, p, trials, seed, &mc_options(&s, threads, built.root)?)?;
                blocks.push(Block { point: n as f64, forecast: forecast_for(&built.graph, p), result });
            }
            if s.raw("kind") == Some("theorem2") {
                slope_fit = fit_c2(&blocks);
            }
        }
    }
    write_blocks(&s, "sweep", &blocks, slope_fit)
}

pub fn audit(s: Settings, threads: Option<usize>) -> Result<()> {
    let mut s = prepare(s)?;
    if s.raw("r-grid").is_none() {
        s.set("r-grid", "10,20,50");
    }
    let grid = parse_count_grid("r-grid", s.raw("r-grid").unwrap())?;
    nonempty("r-grid", grid.len())?;
    if grid.contains(&0) {
        return Err(usage("--r-grid entries must be at least 1"));
    }
    let p = s.probability("p")?;
    let trials: usize = s.require("trials")?;
    let seed: u64 = s.require("seed")?;
    let built = build_graph(&s, s.count("n")?.unwrap_or(0), p)?;
    let mut blocks = Vec::new();
    for &r in &grid {
        let opts = McOptions { r: Some(r), ..mc_options(&s, threads, built.root)? };
        let result = monte_carlo(&built.graph, p, trials, seed, &opts)?;
        blocks.push(Block { point: r as f64, forecast: forecast_for(&built.graph, p), result });
    }
    write_blocks(&s, "audit", &blocks, Value::Null)
}

fn nonempty(key: &str, len: usize) -> Result<()> {
    if len == 0 {
        Err(usage(format!("--{key} is empty")))
    } else {
        Ok(())
    }
}

/// Least-squares fit of `ln mean |C2|` against `ln n`.
fn fit_c2(blocks: &[Block]) -> Value {
    let points: Vec<(f64, f64)> = blocks
        .iter()
        .filter_map(|b| b.result.summary.mean("c2_size").filter(|&c| c > 0.0).map(|c| (b.point, c)))
        .collect();
    if points.len() < 2 {
        return Value::Null;
    }
    let xs: Vec<f64> = points.iter().map(|(n, _)| n.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|(_, c)| c.ln()).collect();
    let k = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / k, ys.iter().sum::<f64>() / k);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    json!({
        "slope": slope,
        "intercept": my - slope * mx,
        "points": points.iter().map(|&(n, c)| json!({ "n": n, "mean_c2_size": c })).collect::<Vec<_>>(),
    })
}

fn write_blocks(s: &Settings, command: &str, blocks: &[Block], slope_fit: Value) -> Result<()> {
    let d = blocks.iter().map(|b| b.result.d).max().unwrap_or(0);
    let mut csv = s.header(command);
    csv.push_str("grid_point,");
    csv.push_str(&csv_columns(d).join(","));
    csv.push('\n');
    for b in blocks {
        let pad = ",".repeat(2 * (d - b.result.d));
        for row in &b.result.rows {
            let record = row.csv_record();
            if pad.is_empty() {
                csv.push_str(&format!("{},{record}\n", b.point));
            } else {
                csv.push_str(&format!("{},{}\n", b.point, pad_histograms(&record, b.result.d, d)));
            }
        }
    }
    let mut summary = json!({
        "config": s.to_json(),
        "forecast": blocks.iter().map(|b| json!({ "grid_point": b.point, "forecast": b.forecast })).collect::<Vec<_>>(),
        "summary_stats": blocks
            .iter()
            .map(|b| json!({ "grid_point": b.point, "stats": b.result.summary }))
            .collect::<Vec<_>>(),
    });
    if !slope_fit.is_null() {
        summary.as_object_mut().unwrap().insert("slope_fit".into(), slope_fit);
    }
    emit(s, &csv, &summary)
}

/// Widens a record written for maximum degree `from` to the columns of
/// maximum degree `to`, leaving the extra histogram cells empty.
fn pad_histograms(record: &str, from: usize, to: usize) -> String {
    let cells: Vec<&str> = record.split(',').collect();
    let extra = to - from;
    let mut out: Vec<&str> = Vec::with_capacity(cells.len() + 2 * extra);
    let deg_end = 10 + from;
    out.extend(&cells[..deg_end]);
    out.extend(std::iter::repeat_n("", extra));
    let core_end = deg_end + 2 + from.saturating_sub(1);
    out.extend(&cells[deg_end..core_end]);
    out.extend(std::iter::repeat_n("", extra));
    out.extend(&cells[core_end..]);
    out.join(",")
}

/// Writes the CSV to `--out` (or stdout) and the summary to `--summary`,
/// defaulting to `<out>.summary.json` beside the CSV.
fn emit(s: &Settings, csv: &str, summary: &Value) -> Result<()> {
    let out = s.path("out");
    match &out {
        Some(path) => write_text(path, csv)?,
        None => io::stdout().lock().write_all(csv.as_bytes())?,
    }
    let summary_path = s.path("summary").or_else(|| out.as_ref().map(|p| summary_beside(p)));
    if let Some(path) = summary_path {
        write_text(&path, &(serde_json::to_string_pretty(summary)? + "\n"))?;
    }
    Ok(())
}

fn summary_beside(csv: &Path) -> PathBuf {
    let mut name = csv.file_stem().unwrap_or_default().to_os_string();
    name.push(".summary.json");
    csv.with_file_name(name)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(file))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    let mut w = create(path)?;
    w.write_all(text.as_bytes()).and_then(|_| w.flush()).with_context(|| format!("writing {}", path.display()))
}
