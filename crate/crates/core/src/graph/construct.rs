//! Edge subdivision, subdivided k-ary trees, and the two adversarial
//! expander constructions (a polynomially large second component; a small
//! giant with a long-range component around a designated root).

use std::collections::BTreeMap;

use serde::Serialize;

use super::generate::{high_girth_regular, moore_bound, random_regular, random_with_degrees};
use super::metrics::girth;
use super::{Graph, Region};
use crate::error::{Error, Result};
use crate::rng::{builder_rng, keyed};

/// Hard cap on the order of any constructed graph.
const MAX_VERTICES: usize = 60_000_000;

/// Replaces each edge of `selected` by a path of `len` edges through
/// `len - 1` fresh vertices appended after the existing ones.
///
/// Fresh vertices are labelled [`Region::Subdiv`] when `g` carries labels.
pub fn subdivide(g: &Graph, selected: &[(usize, usize)], len: usize) -> Result<Graph> {
    if len == 0 {
        return Err(Error::param("subdivision length must be at least 1"));
    }
    let mut chosen = vec![false; g.m()];
    for &(u, v) in selected {
        let e = g.edge_index(u, v).ok_or_else(|| Error::param(format!("edge ({u}, {v}) is not in the graph")))?;
        chosen[e] = true;
    }
    if len == 1 {
        return Ok(g.clone());
    }
    let extra = chosen.iter().filter(|&&c| c).count() * (len - 1);
    let total = g.n() + extra;
    if total > MAX_VERTICES {
        return Err(Error::param(format!("subdivision would create {total} vertices")));
    }
    let mut edges = Vec::with_capacity(g.m() + extra);
    let mut next = g.n();
    for (e, (u, v)) in g.edges().enumerate() {
        if !chosen[e] {
            edges.push((u, v));
            continue;
        }
        let mut prev = u;
        for _ in 0..len - 1 {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, v));
    }
    let out = Graph::from_edges(total, edges)?;
    if g.is_labeled() {
        let mut labels = g.labels().to_vec();
        labels.resize(total, Some(Region::Subdiv));
        out.with_labels(labels)
    } else {
        Ok(out)
    }
}

/// A subdivided k-ary tree: root at vertex 0, original tree vertices in
/// breadth-first order, subdivision vertices appended after them.
#[derive(Debug, Clone)]
pub struct SubdividedTree {
    pub graph: Graph,
    /// The `k^h` deepest original vertices, left to right.
    pub leaves: Vec<usize>,
}

/// `k`-ary tree of depth `h` in which every edge from a parent at depth
/// `>= h - h_star` to its child is replaced by a path of `l_star` edges.
pub fn build_t_tree(k: usize, h: usize, h_star: usize, l_star: usize) -> Result<SubdividedTree> {
    if k < 2 {
        return Err(Error::param(format!("branching k must be at least 2, got {k}")));
    }
    if h == 0 {
        return Err(Error::param("tree depth h must be at least 1"));
    }
    if h_star > h {
        return Err(Error::param(format!("h_star = {h_star} exceeds h = {h}")));
    }
    if l_star == 0 {
        return Err(Error::param("subdivision length must be at least 1"));
    }
    // level_start[j] = index of the first vertex at depth j.
    let mut level_start = vec![0usize];
    let mut width = 1usize;
    for _ in 0..=h {
        let start = *level_start.last().unwrap();
        level_start.push(
            start
                .checked_add(width)
                .filter(|&s| s <= MAX_VERTICES)
                .ok_or_else(|| Error::param(format!("T({k},{h},..) is too large")))?,
        );
        width = width.saturating_mul(k);
    }
    let original = level_start[h + 1];
    let subdivided_from = h - h_star;
    let subdivided_edges = level_start[h + 1] - level_start[subdivided_from + 1];
    let total = subdivided_edges
        .checked_mul(l_star - 1)
        .and_then(|x| x.checked_add(original))
        .filter(|&t| t <= MAX_VERTICES)
        .ok_or_else(|| Error::param(format!("T({k},{h},{h_star},{l_star}) is too large")))?;

    let mut edges = Vec::with_capacity(total - 1);
    let mut next = original;
    for depth in 0..h {
        for parent in level_start[depth]..level_start[depth + 1] {
            for c in 1..=k {
                let child = parent * k + c;
                if depth < subdivided_from || l_star == 1 {
                    edges.push((parent, child));
                    continue;
                }
                let mut prev = parent;
                for _ in 0..l_star - 1 {
                    edges.push((prev, next));
                    prev = next;
                    next += 1;
                }
                edges.push((prev, child));
            }
        }
    }
    debug_assert_eq!(next, total);
    Ok(SubdividedTree {
        graph: Graph::from_edges(total, edges)?,
        leaves: (level_start[h]..level_start[h + 1]).collect(),
    })
}

/// Incrementally assembled labelled graph.
#[derive(Default)]
struct Assembly {
    labels: Vec<Option<Region>>,
    edges: Vec<(usize, usize)>,
}

impl Assembly {
    fn vertex(&mut self, region: Region) -> usize {
        self.labels.push(Some(region));
        self.labels.len() - 1
    }

    fn block(&mut self, count: usize, region: Region) -> usize {
        let start = self.labels.len();
        self.labels.resize(start + count, Some(region));
        start
    }

    fn edge(&mut self, a: usize, b: usize) {
        self.edges.push((a, b));
    }

    /// Copies `g` in with every vertex labelled `region`; returns the offset.
    fn append(&mut self, g: &Graph, region: Region) -> usize {
        let offset = self.block(g.n(), region);
        self.edges.extend(g.edges().map(|(u, v)| (u + offset, v + offset)));
        offset
    }

    fn finish(self) -> Result<Graph> {
        Graph::from_edges(self.labels.len(), self.edges)?.with_labels(self.labels)
    }
}

fn region_counts(g: &Graph) -> BTreeMap<String, usize> {
    Region::ALL.into_iter().map(|r| (r.tag().to_string(), g.region_count(r))).filter(|&(_, c)| c > 0).collect()
}

/// `ceil` and `floor` that forgive rounding noise in exact-integer logs.
fn ceil_exact(x: f64) -> f64 {
    (x - 1e-9).ceil()
}

fn floor_exact(x: f64) -> f64 {
    (x + 1e-9).floor()
}

#[derive(Debug, Clone, Serialize)]
pub struct Theorem2Params {
    pub n_target: usize,
    /// Exponent of the second component, in (0, 1).
    pub alpha: f64,
    pub d: usize,
    pub p: f64,
    /// Fraction of H1 vertices whose edges are subdivided (matching size).
    pub delta: f64,
    /// Gadget order; `None` picks the smallest feasible size.
    pub m_gadget: Option<usize>,
    /// Gadget girth.
    pub gadget_girth: usize,
    pub seed: u64,
}

impl Theorem2Params {
    pub fn new(n_target: usize, alpha: f64, d: usize, p: f64) -> Self {
        Self { n_target, alpha, d, p, delta: 0.1, m_gadget: None, gadget_girth: 5, seed: 0 }
    }

    /// Tree depth `ceil((1 - alpha)/2 * log_{d-1} n)`.
    pub fn h(&self) -> usize {
        let log = (self.n_target as f64).ln() / ((self.d - 1) as f64).ln();
        ceil_exact(0.5 * (1.0 - self.alpha) * log).max(0.0) as usize
    }

    /// Gadget chain length `ceil((2 + alpha) / ((1 - alpha) log_{d-1}(1/p)))`.
    pub fn chain_length(&self) -> usize {
        let log = (1.0 / self.p).ln() / ((self.d - 1) as f64).ln();
        ceil_exact((2.0 + self.alpha) / ((1.0 - self.alpha) * log)).max(0.0) as usize
    }

    fn validate(&self) -> Result<()> {
        if self.d < 3 {
            return Err(Error::param(format!("d must be at least 3, got {}", self.d)));
        }
        let pc = 1.0 / (self.d - 1) as f64;
        if !(self.p > pc && self.p < 1.0) {
            return Err(Error::param(format!("p must lie in ({pc}, 1), got {}", self.p)));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::param(format!("alpha must lie in (0, 1), got {}", self.alpha)));
        }
        if !(self.delta > 0.0 && self.delta <= 0.5) {
            return Err(Error::param(format!("delta must lie in (0, 0.5], got {}", self.delta)));
        }
        if self.n_target < 16 {
            return Err(Error::param(format!("n_target = {} is too small", self.n_target)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Theorem2Report {
    pub n_target: usize,
    pub alpha: f64,
    pub d: usize,
    pub p: f64,
    pub delta: f64,
    pub h: usize,
    #[serde(rename = "L")]
    pub chain_length: usize,
    /// Order of the base regular graph of H1.
    pub n1: usize,
    /// Number of subdivided matching edges (degree-2 vertices of H1).
    pub n1_hat: usize,
    /// Tree leaves, identified with the degree-(d-1) vertices of H2.
    pub n2_hat: usize,
    /// Degree-d vertices of H2.
    pub n2: usize,
    pub m_gadget: usize,
    pub gadget_girth: usize,
    pub h1_girth: Option<usize>,
    pub h2_girth: Option<usize>,
    pub vertices: usize,
    pub edges: usize,
    pub region_counts: BTreeMap<String, usize>,
    /// `p^(hL) * n^((1+alpha)/2)`.
    pub leak_bound: f64,
    /// `n^(-1/2)`.
    pub leak_threshold: f64,
    pub leak_check: bool,
    /// `p^L`.
    pub chain_survival: f64,
    /// `d^(-2)`.
    pub chain_threshold: f64,
    pub chain_check: bool,
}

/// Smallest `m >= moore_bound` with `m * d` even on which a gadget is found.
fn smallest_gadget(d: usize, girth: usize) -> Result<Graph> {
    let mut last = None;
    for m in (moore_bound(d, girth)..).take(64) {
        if (m * d).is_multiple_of(2) {
            match high_girth_regular(m, d, girth) {
                Ok(g) => return Ok(g),
                Err(e @ Error::Generation(_)) => last = Some(e),
                Err(e) => return Err(e),
            }
        }
    }
    Err(last.unwrap_or_else(|| Error::generation("no gadget found")))
}

/// Builds a `d`-regular graph whose percolation giant lives in a large
/// expander H2 while a smaller expander H1 of order `n^alpha`, hanging off
/// H2 through long gadget-chained trees, carries a second component of
/// order `n^alpha`.
pub fn theorem2_build(params: &Theorem2Params) -> Result<(Graph, Theorem2Report)> {
    params.validate()?;
    let d = params.d;
    let h = params.h();
    let chain = params.chain_length();
    if h == 0 || chain == 0 {
        return Err(Error::param(format!("degenerate construction: h = {h}, L = {chain}")));
    }

    let gadget = match params.m_gadget {
        Some(m) => high_girth_regular(m, d, params.gadget_girth)?,
        None => smallest_gadget(d, params.gadget_girth)?,
    };
    let m_gadget = gadget.n();
    let (gx, gy) = gadget.edge(0);
    let gadget_edges: Vec<(usize, usize)> = gadget.edges().skip(1).collect();

    let mut n1 = (params.n_target as f64).powf(params.alpha).floor() as usize;
    if (n1 * d) % 2 == 1 {
        n1 += 1;
    }
    let n1 = n1.max(d + 1 + (d % 2));
    let h1 = random_regular(n1, d, keyed(params.seed, 1))?;
    let h1_girth = girth(&h1);

    let want = (params.delta * n1 as f64).ceil() as usize;
    let mut used = vec![false; n1];
    let mut matching = Vec::with_capacity(want);
    for (u, v) in h1.edges() {
        if matching.len() == want {
            break;
        }
        if !used[u] && !used[v] {
            used[u] = true;
            used[v] = true;
            matching.push((u, v));
        }
    }
    if matching.len() < want {
        return Err(Error::param(format!(
            "greedy matching has only {} edges, delta = {} needs {want}",
            matching.len(),
            params.delta
        )));
    }
    let n1_hat = matching.len();

    let branch = d - 1;
    let trees = n1_hat * (d - 2);
    let per_tree_internal: usize = (0..h).map(|j| branch.pow(j as u32)).sum();
    let per_tree_edges: usize = (1..=h).map(|j| branch.pow(j as u32)).sum();
    let n2_hat = trees * branch.pow(h as u32);
    let gadget_vertices = trees * per_tree_edges * chain * m_gadget;
    let others = n1 + n1_hat + trees * per_tree_internal + gadget_vertices;
    let mut n2 = params.n_target.saturating_sub(others + n2_hat).max(n2_hat + d + 1);
    if (n2_hat * (d - 1) + n2 * d) % 2 == 1 {
        n2 += 1;
    }
    let total = others + n2_hat + n2;
    if total > MAX_VERTICES {
        return Err(Error::param(format!("construction would have {total} vertices")));
    }

    let mut asm = Assembly::default();
    asm.block(n1, Region::H1);
    let matched: std::collections::HashSet<(usize, usize)> = matching.iter().copied().collect();
    let mut hubs = Vec::with_capacity(n1_hat);
    for (u, v) in h1.edges() {
        if matched.contains(&(u, v)) {
            let s = asm.vertex(Region::Subdiv);
            asm.edge(u, s);
            asm.edge(s, v);
            hubs.push(s);
        } else {
            asm.edge(u, v);
        }
    }

    let h2_start = asm.block(n2_hat + n2, Region::H2);
    let mut degrees = vec![d - 1; n2_hat];
    degrees.resize(n2_hat + n2, d);
    let mut rng = builder_rng(keyed(params.seed, 2));
    let h2 = random_with_degrees(&degrees, &mut rng)?;
    let h2_girth = girth(&h2);
    asm.edges.extend(h2.edges().map(|(u, v)| (u + h2_start, v + h2_start)));

    let mut next_leaf = h2_start;
    for &hub in &hubs {
        for _ in 0..d - 2 {
            let root = asm.vertex(Region::Tree);
            asm.edge(hub, root);
            let mut frontier = vec![root];
            for depth in 0..h {
                let mut deeper = Vec::with_capacity(frontier.len() * branch);
                for &a in &frontier {
                    for _ in 0..branch {
                        let b = if depth + 1 == h {
                            next_leaf += 1;
                            next_leaf - 1
                        } else {
                            asm.vertex(Region::Tree)
                        };
                        // Chain of gadgets: a - x_1, y_i - x_{i+1}, y_L - b.
                        let mut prev = a;
                        for _ in 0..chain {
                            let off = asm.block(m_gadget, Region::Gadget);
                            asm.edges.extend(gadget_edges.iter().map(|&(u, v)| (u + off, v + off)));
                            asm.edge(prev, off + gx);
                            prev = off + gy;
                        }
                        asm.edge(prev, b);
                        deeper.push(b);
                    }
                }
                frontier = deeper;
            }
        }
    }
    debug_assert_eq!(next_leaf, h2_start + n2_hat);
    let graph = asm.finish()?;
    debug_assert_eq!(graph.n(), total);

    let n = params.n_target as f64;
    let leak_bound = params.p.powi((h * chain) as i32) * n.powf(0.5 * (1.0 + params.alpha));
    let leak_threshold = n.powf(-0.5);
    let chain_survival = params.p.powi(chain as i32);
    let chain_threshold = 1.0 / (d * d) as f64;
    let report = Theorem2Report {
        n_target: params.n_target,
        alpha: params.alpha,
        d,
        p: params.p,
        delta: params.delta,
        h,
        chain_length: chain,
        n1,
        n1_hat,
        n2_hat,
        n2,
        m_gadget,
        gadget_girth: params.gadget_girth,
        h1_girth,
        h2_girth,
        vertices: graph.n(),
        edges: graph.m(),
        region_counts: region_counts(&graph),
        leak_bound,
        leak_threshold,
        leak_check: leak_bound <= leak_threshold,
        chain_survival,
        chain_threshold,
        chain_check: chain_survival < chain_threshold,
    };
    Ok((graph, report))
}

#[derive(Debug, Clone, Serialize)]
pub struct Theorem3Params {
    pub p: f64,
    pub eps: f64,
    pub n_target: usize,
    pub seed: u64,
}

impl Theorem3Params {
    pub fn new(p: f64, eps: f64, n_target: usize) -> Self {
        Self { p, eps, n_target, seed: 0 }
    }

    /// Branching `ceil((1/p)^(2/eps))`.
    pub fn branching(&self) -> usize {
        ceil_exact((1.0 / self.p).powf(2.0 / self.eps)) as usize
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Theorem3Report {
    pub p: f64,
    pub eps: f64,
    pub n_target: usize,
    pub d: usize,
    pub h_n: usize,
    pub h_star: usize,
    /// Subdivision length in T1.
    pub alpha: usize,
    /// Subdivision length in T2 and F.
    pub beta: usize,
    /// Leaves per tree, equal to the order of the base expander of F.
    pub leaves: usize,
    pub vertices: usize,
    pub edges: usize,
    pub max_degree: usize,
    pub region_counts: BTreeMap<String, usize>,
    /// `log_{1/p} n_target`.
    pub log_n: f64,
    /// `(1 + 6 eps) log_{1/p} n_target`.
    pub diameter_bound: f64,
    /// Height of T2 after subdivision.
    pub t2_height: usize,
}

/// Builds the two-tree construction: T1 (rooted at the returned vertex,
/// last levels subdivided `alpha` times) and T2 (subdivided `beta` times)
/// with leaf `i` of each joined to vertex `w_i` of a `beta`-subdivided
/// `d`-regular expander.
pub fn theorem3_build(params: &Theorem3Params) -> Result<(Graph, usize, Theorem3Report)> {
    let (p, eps) = (params.p, params.eps);
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::param(format!("p must lie in (0, 1), got {p}")));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::param(format!("eps must lie in (0, 1), got {eps}")));
    }
    let d_real = (1.0 / p).powf(2.0 / eps);
    if d_real > 1e6 {
        return Err(Error::param(format!("branching (1/p)^(2/eps) = {d_real:.3e} is too large")));
    }
    let d = params.branching();
    let log_inv_p = |x: f64| x.ln() / (1.0 / p).ln();
    let h_n = floor_exact((params.n_target as f64).ln() / (d as f64).ln()) as usize;
    if h_n < 2 {
        return Err(Error::param(format!(
            "n_target = {} is too small for branching d = {d}: need at least d^2 leaves",
            params.n_target
        )));
    }
    let alpha = ceil_exact(log_inv_p(d as f64) / eps) as usize;
    let beta = ceil_exact(2.0 * log_inv_p(d as f64)) as usize;
    let h_star = floor_exact(eps * h_n as f64) as usize;
    let leaves = d.checked_pow(h_n as u32).ok_or_else(|| Error::param("leaf count overflows"))?;
    if (leaves * d) % 2 == 1 {
        return Err(Error::param(format!("no {d}-regular graph on {leaves} vertices (odd degree sum)")));
    }

    let t1 = build_t_tree(d, h_n, h_star, alpha)?;
    let t2 = build_t_tree(d, h_n, h_star, beta)?;
    let f0_edges = leaves * d / 2;
    let estimate = t1.graph.n() + t2.graph.n() + leaves + f0_edges * (beta - 1);
    if estimate > MAX_VERTICES {
        return Err(Error::param(format!("construction would have {estimate} vertices")));
    }
    let f0 = random_regular(leaves, d, keyed(params.seed, 3))?;
    let all: Vec<(usize, usize)> = f0.edges().collect();
    let f = subdivide(&f0, &all, beta)?;

    let mut asm = Assembly::default();
    let off1 = asm.append(&t1.graph, Region::T1);
    let off2 = asm.append(&t2.graph, Region::T2);
    let off_f = asm.append(&f, Region::F);
    for i in 0..leaves {
        asm.edge(off1 + t1.leaves[i], off_f + i);
        asm.edge(off2 + t2.leaves[i], off_f + i);
    }
    let graph = asm.finish()?;
    let root = off1;

    let log_n = log_inv_p(params.n_target as f64);
    let report = Theorem3Report {
        p,
        eps,
        n_target: params.n_target,
        d,
        h_n,
        h_star,
        alpha,
        beta,
        leaves,
        vertices: graph.n(),
        edges: graph.m(),
        max_degree: graph.max_degree(),
        region_counts: region_counts(&graph),
        log_n,
        diameter_bound: (1.0 + 6.0 * eps) * log_n,
        t2_height: h_n + (beta - 1) * h_star,
    };
    Ok((graph, root, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::bfs_distances;

    #[test]
    fn subdividing_a_triangle() {
        let tri = Graph::cycle(3);
        let all: Vec<_> = tri.edges().collect();
        let c6 = subdivide(&tri, &all, 2).unwrap();
        assert_eq!(c6.n(), 6);
        assert_eq!(c6.m(), 6);
        assert!((0..6).all(|v| c6.degree(v) == 2));
        assert_eq!(girth(&c6), Some(6));
        assert_eq!(girth(&subdivide(&tri, &all, 4).unwrap()), Some(12));
        assert_eq!(subdivide(&tri, &all, 1).unwrap(), tri);
        assert!(subdivide(&Graph::path(3), &[(0, 2)], 2).is_err());
    }

    #[test]
    fn subdivision_keeps_original_degrees() {
        let g = Graph::complete(5);
        let sub = subdivide(&g, &[(0, 1), (2, 4)], 3).unwrap();
        assert_eq!(sub.n(), 9);
        assert!((0..5).all(|v| sub.degree(v) == 4));
        assert!((5..9).all(|v| sub.degree(v) == 2));
    }

    #[test]
    fn t_tree_sizes() {
        let t = build_t_tree(2, 2, 0, 5).unwrap();
        assert_eq!(t.graph.n(), 7);
        assert_eq!(t.leaves, vec![3, 4, 5, 6]);
        let t = build_t_tree(2, 2, 1, 2).unwrap();
        assert_eq!(t.graph.n(), 11);
        assert_eq!(build_t_tree(3, 3, 2, 1).unwrap().graph, build_t_tree(3, 3, 0, 9).unwrap().graph);
        // Leaves sit at depth h + h_star (L* - 1).
        let t = build_t_tree(3, 3, 2, 4).unwrap();
        let dist = bfs_distances(&t.graph, 0);
        assert!(t.leaves.iter().all(|&l| dist[l] == 3 + 2 * 3));
        assert!(build_t_tree(1, 2, 0, 1).is_err());
        assert!(build_t_tree(2, 2, 3, 1).is_err());
        assert!(build_t_tree(2, 2, 1, 0).is_err());
    }

    #[test]
    fn theorem2_formulas() {
        let params = Theorem2Params::new(10_000, 0.5, 3, 0.75);
        assert_eq!(params.h(), 4);
        assert_eq!(params.chain_length(), 13);
    }

    #[test]
    fn theorem2_graph_is_regular_and_consistent() {
        let mut params = Theorem2Params::new(10_000, 0.5, 3, 0.75);
        params.delta = 0.05;
        let (g, report) = theorem2_build(&params).unwrap();
        assert!((0..g.n()).all(|v| g.degree(v) == 3));
        assert_eq!(report.vertices, g.n());
        assert_eq!(report.n2_hat, report.n1_hat * 2usize.pow(report.h as u32));
        assert_eq!(report.region_counts["H2"], report.n2_hat + report.n2);
        assert_eq!(report.region_counts["SUBDIV"], report.n1_hat);
        // Leaves are exactly the H2 vertices touching a gadget.
        let touching = (0..g.n())
            .filter(|&v| g.label(v) == Some(Region::H2))
            .filter(|&v| g.neighbors(v).any(|w| g.label(w) == Some(Region::Gadget)))
            .count();
        assert_eq!(touching, report.n2_hat);
        assert!(report.leak_check);
        assert!((report.leak_bound - 0.75f64.powi(52) * 1e3).abs() < 1e-12);
        assert!(report.chain_check);
        let (again, _) = theorem2_build(&params).unwrap();
        assert_eq!(g, again);
    }

    #[test]
    fn theorem3_formulas_and_structure() {
        let params = Theorem3Params::new(0.5, 0.5, 1_000_000);
        assert_eq!(params.branching(), 16);

        // A small instance with the same shape rules.
        let small = Theorem3Params::new(0.5, 0.5, 300);
        let (g, v, report) = theorem3_build(&small).unwrap();
        assert_eq!((report.d, report.h_n, report.h_star, report.alpha, report.beta), (16, 2, 1, 8, 8));
        assert_eq!(report.leaves, 256);
        assert!(300 / 16 < report.leaves && report.leaves <= 300);
        assert_eq!(g.max_degree(), 18);
        assert_eq!(v, 0);
        assert_eq!(report.vertices, g.n());
        assert_eq!(report.region_counts["T1"], report.region_counts["T2"]);
        let w_count = (0..g.n()).filter(|&x| g.label(x) == Some(Region::F) && g.degree(x) == 18).count();
        assert_eq!(w_count, 256);
        let dist = bfs_distances(&g, v);
        assert!(dist.iter().all(|&x| x < usize::MAX));
    }

    #[test]
    fn theorem3_rejects_bad_parameters() {
        assert!(theorem3_build(&Theorem3Params::new(1.0, 0.5, 1000)).is_err());
        assert!(theorem3_build(&Theorem3Params::new(0.5, 0.0, 1000)).is_err());
        assert!(theorem3_build(&Theorem3Params::new(0.5, 0.5, 100)).is_err());
    }
}
