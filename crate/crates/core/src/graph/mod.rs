//! Simple undirected graphs, their generators, and the adversarial
//! expander constructions.

mod construct;
mod generate;
mod io;
mod metrics;
mod spectral;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use construct::{
    build_t_tree, subdivide, theorem2_build, theorem3_build, SubdividedTree, Theorem2Params, Theorem2Report,
    Theorem3Params, Theorem3Report,
};
pub use generate::{high_girth_regular, moore_bound, random_regular, random_with_degrees};
pub use io::{parse_graph, read_graph, write_graph, GRAPH_MAGIC};
pub use metrics::{bfs_distances, diameter_lower_bound, girth, is_connected, UNREACHED};
pub use spectral::{cheeger_lower_bound, fiedler, Fiedler};

use crate::error::{Error, Result};

/// Construction region a vertex belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Region {
    H1,
    Tree,
    Gadget,
    H2,
    T1,
    T2,
    F,
    Subdiv,
}

impl Region {
    pub const ALL: [Region; 8] =
        [Region::H1, Region::Tree, Region::Gadget, Region::H2, Region::T1, Region::T2, Region::F, Region::Subdiv];

    pub fn tag(self) -> &'static str {
        match self {
            Region::H1 => "H1",
            Region::Tree => "TREE",
            Region::Gadget => "GADGET",
            Region::H2 => "H2",
            Region::T1 => "T1",
            Region::T2 => "T2",
            Region::F => "F",
            Region::Subdiv => "SUBDIV",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Region {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Region::ALL.into_iter().find(|r| r.tag() == s).ok_or_else(|| format!("unknown region tag {s:?}"))
    }
}

/// Immutable simple undirected graph on vertices `0..n`.
///
/// Edges are stored once as `(u, v)` with `u < v`, sorted lexicographically;
/// the edge index is the position in that list. Adjacency is a compressed
/// row array carrying, for each incidence, the neighbour and the edge index.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
    offsets: Vec<usize>,
    targets: Vec<u32>,
    edge_ids: Vec<u32>,
    labels: Vec<Option<Region>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("n", &self.n).field("m", &self.edges.len()).finish()
    }
}

impl Graph {
    /// Builds a graph from an edge list in any order and orientation.
    ///
    /// Self-loops and repeated edges are rejected.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n > u32::MAX as usize {
            return Err(Error::param(format!("{n} vertices exceed the u32 index range")));
        }
        let mut list: Vec<(u32, u32)> = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::param(format!("edge ({u}, {v}) out of range for n = {n}")));
            }
            if u == v {
                return Err(Error::param(format!("self-loop at vertex {u}")));
            }
            list.push(if u < v { (u as u32, v as u32) } else { (v as u32, u as u32) });
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::param(format!("duplicate edge ({}, {})", w[0].0, w[0].1)));
        }
        Ok(Self::from_sorted_unique(n, list))
    }

    /// `edges` must already be sorted, deduplicated, loop-free and oriented.
    pub(crate) fn from_sorted_unique(n: usize, edges: Vec<(u32, u32)>) -> Self {
        let mut degree = vec![0usize; n + 1];
        for &(u, v) in &edges {
            degree[u as usize + 1] += 1;
            degree[v as usize + 1] += 1;
        }
        for i in 0..n {
            degree[i + 1] += degree[i];
        }
        let offsets = degree;
        let mut cursor = offsets.clone();
        let mut targets = vec![0u32; 2 * edges.len()];
        let mut edge_ids = vec![0u32; 2 * edges.len()];
        for (e, &(u, v)) in edges.iter().enumerate() {
            let (u, v) = (u as usize, v as usize);
            targets[cursor[u]] = v as u32;
            edge_ids[cursor[u]] = e as u32;
            cursor[u] += 1;
            targets[cursor[v]] = u as u32;
            edge_ids[cursor[v]] = e as u32;
            cursor[v] += 1;
        }
        Self { n, edges, offsets, targets, edge_ids, labels: Vec::new() }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_unique(n, Vec::new())
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
    }

    pub fn complete(n: usize) -> Self {
        Self::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("complete graph is simple")
    }

    /// Attaches region labels, one per vertex.
    pub fn with_labels(mut self, labels: Vec<Option<Region>>) -> Result<Self> {
        if !labels.is_empty() && labels.len() != self.n {
            return Err(Error::param(format!("{} labels for {} vertices", labels.len(), self.n)));
        }
        self.labels = if labels.iter().all(Option::is_none) { Vec::new() } else { labels };
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        let (u, v) = self.edges[e];
        (u as usize, v as usize)
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&(u, v)| (u as usize, v as usize))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.targets[self.offsets[v]..self.offsets[v + 1]].iter().map(|&w| w as usize)
    }

    /// `(neighbour, edge index)` pairs incident to `v`.
    pub fn incident(&self, v: usize) -> impl ExactSizeIterator<Item = (usize, usize)> + '_ {
        let r = self.offsets[v]..self.offsets[v + 1];
        self.targets[r.clone()].iter().zip(&self.edge_ids[r]).map(|(&w, &e)| (w as usize, e as usize))
    }

    /// Position of the first incidence of `v` in the adjacency arrays;
    /// `incidence_start(n)` is `2m`.
    pub fn incidence_start(&self, v: usize) -> usize {
        self.offsets[v]
    }

    /// `(neighbour, edge index)` stored at adjacency position `slot`.
    pub fn incidence(&self, slot: usize) -> (usize, usize) {
        (self.targets[slot] as usize, self.edge_ids[slot] as usize)
    }

    /// Index of edge `{u, v}`, if present.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        let key = if u < v { (u as u32, v as u32) } else { (v as u32, u as u32) };
        self.edges.binary_search(&key).ok()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    pub fn label(&self, v: usize) -> Option<Region> {
        self.labels.get(v).copied().flatten()
    }

    pub fn is_labeled(&self) -> bool {
        !self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Option<Region>] {
        &self.labels
    }

    /// Number of vertices carrying `region`.
    pub fn region_count(&self, region: Region) -> usize {
        self.labels.iter().filter(|&&l| l == Some(region)).count()
    }

    /// Stable 64-bit digest of `n` and the edge list.
    pub fn fingerprint(&self) -> u64 {
        let mut h = crate::rng::keyed(0x0067_7261_7068, self.n as u64);
        for &(u, v) in &self.edges {
            h = crate::rng::keyed(h, ((u as u64) << 32) | v as u64);
        }
        h
    }

    /// Subgraph induced by `vertices` (in the given order), with the map from
    /// new to old indices.
    pub fn induced(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut index = vec![u32::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i as u32;
        }
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            let (a, b) = (index[u as usize], index[v as usize]);
            if a != u32::MAX && b != u32::MAX {
                edges.push(if a < b { (a, b) } else { (b, a) });
            }
        }
        edges.sort_unstable();
        (Graph::from_sorted_unique(vertices.len(), edges), vertices.to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_sorted_csr() {
        let g = Graph::from_edges(4, [(2, 1), (0, 3), (1, 0)]).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 3), (1, 2)]);
        assert_eq!(g.degree(0), 2);
        assert_eq!(g.degree(2), 1);
        let mut nb: Vec<_> = g.neighbors(0).collect();
        nb.sort();
        assert_eq!(nb, vec![1, 3]);
        for v in 0..4 {
            for (w, e) in g.incident(v) {
                let (a, b) = g.edge(e);
                assert!((a, b) == (v.min(w), v.max(w)));
            }
        }
        assert_eq!(g.edge_index(3, 0), Some(1));
        assert_eq!(g.edge_index(2, 3), None);
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(Graph::from_edges(3, [(1, 1)]).is_err());
        assert!(Graph::from_edges(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
    }

    #[test]
    fn standard_families() {
        assert_eq!(Graph::cycle(5).m(), 5);
        assert_eq!(Graph::path(5).m(), 4);
        assert_eq!(Graph::complete(5).m(), 10);
        assert_eq!(Graph::complete(4).max_degree(), 3);
    }

    #[test]
    fn induced_subgraph() {
        let g = Graph::cycle(6);
        let (h, map) = g.induced(&[5, 0, 1]);
        assert_eq!(h.m(), 2);
        assert_eq!(map, vec![5, 0, 1]);
        assert!(h.has_edge(0, 1) && h.has_edge(1, 2));
    }

    #[test]
    fn region_tags_roundtrip() {
        for r in Region::ALL {
            assert_eq!(r.tag().parse::<Region>().unwrap(), r);
        }
        assert!("XX".parse::<Region>().is_err());
    }

    #[test]
    fn labels_attach_and_count() {
        let g = Graph::path(3).with_labels(vec![Some(Region::H1), None, Some(Region::H1)]).unwrap();
        assert_eq!(g.region_count(Region::H1), 2);
        assert_eq!(g.label(1), None);
        assert!(Graph::path(3).with_labels(vec![None]).is_err());
        assert!(!Graph::path(3).with_labels(vec![None; 3]).unwrap().is_labeled());
    }
}
