//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use giantlab::graph::Graph;
use giantlab::rng::uniform;
use giantlab::theory::RootedTreeShape;
use rand::Rng;

pub fn random_graph(rng: &mut impl Rng, n: usize, edge_p: f64) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect::<Vec<_>>();
    Graph::from_edges(n, edges.into_iter().filter(|_| rng.random::<f64>() < edge_p)).unwrap()
}

/// Shortest cycle by enumerating simple paths that start at their
/// smallest vertex.
pub fn exhaustive_girth(g: &Graph) -> Option<usize> {
    fn walk(g: &Graph, start: usize, path: &mut Vec<usize>, best: &mut Option<usize>) {
        let last = *path.last().unwrap();
        for w in g.neighbors(last).collect::<Vec<_>>() {
            if w == start && path.len() >= 3 {
                *best = Some(best.map_or(path.len(), |b| b.min(path.len())));
            } else if w > start && !path.contains(&w) {
                path.push(w);
                walk(g, start, path, best);
                path.pop();
            }
        }
    }
    let mut best = None;
    for s in 0..g.n() {
        walk(g, s, &mut vec![s], &mut best);
    }
    best
}

/// Depth-2 template for `d = 3`: the root has 3 children and each child 2.
/// Vertex `v > 0` owns the edge to its parent, numbered `v - 1`.
pub struct DepthTwo {
    parent: Vec<usize>,
}

pub const DEPTH_TWO_EDGES: u32 = 9;

impl DepthTwo {
    pub fn new() -> Self {
        let mut parent = vec![usize::MAX, 0, 0, 0];
        for c in 1..=3 {
            parent.extend([c, c]);
        }
        Self { parent }
    }

    /// Root cluster when edge `v - 1` is open iff `open(v)`.
    pub fn cluster(&self, open: impl Fn(usize) -> bool) -> RootedTreeShape {
        let n = self.parent.len();
        let mut index = vec![usize::MAX; n];
        index[0] = 0;
        let mut parents = vec![None];
        for v in 1..n {
            let up = index[self.parent[v]];
            if up != usize::MAX && open(v) {
                index[v] = parents.len();
                parents.push(Some(up));
            }
        }
        RootedTreeShape::from_parents(&parents).unwrap()
    }

    /// Every root cluster, keyed by canonical code.
    pub fn shapes(&self) -> HashMap<String, RootedTreeShape> {
        let mut shapes = HashMap::new();
        for bits in 0u32..1 << DEPTH_TWO_EDGES {
            let shape = self.cluster(|v| bits >> (v - 1) & 1 == 1);
            shapes.entry(shape.canonical(0)).or_insert(shape);
        }
        shapes
    }

    /// Exact cluster distribution by summing over all edge subsets.
    pub fn exact(&self, p: f64) -> HashMap<String, f64> {
        let mut out: HashMap<String, f64> = HashMap::new();
        for bits in 0u32..1 << DEPTH_TWO_EDGES {
            let k = bits.count_ones() as i32;
            let weight = p.powi(k) * (1.0 - p).powi(DEPTH_TWO_EDGES as i32 - k);
            *out.entry(self.cluster(|v| bits >> (v - 1) & 1 == 1).canonical(0)).or_default() += weight;
        }
        out
    }

    /// Cluster frequencies over `samples` independent percolations.
    pub fn sampled(&self, p: f64, samples: u64, key: u64) -> HashMap<String, u64> {
        let mut counts: HashMap<String, u64> = HashMap::new();
        for s in 0..samples {
            let base = s * DEPTH_TWO_EDGES as u64;
            let shape = self.cluster(|v| uniform(key, base + v as u64 - 1) < p);
            *counts.entry(shape.canonical(0)).or_default() += 1;
        }
        counts
    }
}
