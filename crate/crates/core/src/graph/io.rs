//! Plain-text graph files.
//!
//! ```text
//! #giantlab-graph v1
//! <n> <m>
//! <u> <v>          (m lines, 0 <= u < v < n, sorted)
//! L <v> <TAG>      (optional, one per labelled vertex)
//! ```

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use super::{Graph, Region};
use crate::error::{Error, Result};

pub const GRAPH_MAGIC: &str = "#giantlab-graph v1";

pub fn write_graph<W: Write>(g: &Graph, out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    writeln!(out, "{GRAPH_MAGIC}")?;
    writeln!(out, "{} {}", g.n(), g.m())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    for (v, label) in g.labels().iter().enumerate() {
        if let Some(r) = label {
            writeln!(out, "L {v} {r}")?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<Graph> {
    parse_graph(BufReader::new(File::open(path)?))
}

pub fn parse_graph<R: BufRead>(input: R) -> Result<Graph> {
    let parse_err = |line: usize, message: String| Error::Parse { line, message };
    let mut lines = input.lines().enumerate().map(|(i, l)| (i + 1, l));

    match lines.next() {
        Some((no, l)) => {
            if l?.trim_end() != GRAPH_MAGIC {
                return Err(parse_err(no, format!("expected header {GRAPH_MAGIC:?}")));
            }
        }
        None => return Err(parse_err(1, "empty file".into())),
    }
    let (no, counts) = lines.next().ok_or_else(|| parse_err(2, "missing `n m` line".into()))?;
    let counts = counts?;
    let (n, m) = two_numbers(&counts).ok_or_else(|| parse_err(no, format!("malformed counts {counts:?}")))?;

    let mut edges: Vec<((u32, u32), usize)> = Vec::with_capacity(m);
    let mut labels: Vec<Option<Region>> = Vec::new();
    for (no, line) in lines {
        let line = line?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        if let Some(rest) = text.strip_prefix("L ") {
            let mut parts = rest.split_whitespace();
            let v = parts.next().and_then(|s| s.parse::<usize>().ok());
            let tag = parts.next().map(str::parse::<Region>);
            match (v, tag, parts.next()) {
                (Some(v), Some(Ok(r)), None) if v < n => {
                    if labels.is_empty() {
                        labels = vec![None; n];
                    }
                    labels[v] = Some(r);
                }
                (_, Some(Err(e)), _) => return Err(parse_err(no, e)),
                _ => return Err(parse_err(no, format!("malformed label line {text:?}"))),
            }
            continue;
        }
        if !labels.is_empty() {
            return Err(parse_err(no, "edge line after label lines".into()));
        }
        let (u, v) = two_numbers(text).ok_or_else(|| parse_err(no, format!("malformed edge line {text:?}")))?;
        if u >= n || v >= n {
            return Err(parse_err(no, format!("vertex out of range in {text:?}")));
        }
        if u == v {
            return Err(Error::Format { line: no, message: format!("self-loop at vertex {u}") });
        }
        let key = if u < v { (u as u32, v as u32) } else { (v as u32, u as u32) };
        edges.push((key, no));
    }
    if edges.len() != m {
        return Err(parse_err(2, format!("header declares {m} edges, found {}", edges.len())));
    }
    edges.sort_unstable();
    if let Some(w) = edges.windows(2).find(|w| w[0].0 == w[1].0) {
        let line = w[0].1.max(w[1].1);
        let (u, v) = w[0].0;
        return Err(Error::Format { line, message: format!("duplicate edge ({u}, {v})") });
    }
    Graph::from_sorted_unique(n, edges.into_iter().map(|(e, _)| e).collect()).with_labels(labels)
}

fn two_numbers(s: &str) -> Option<(usize, usize)> {
    let mut it = s.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}
