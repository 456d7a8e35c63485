use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::uniform;

/// One percolation sample: an open/closed bit per edge of a graph, in
/// edge-index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeMask {
    graph: u64,
    seed: u64,
    words: Vec<u64>,
    len: usize,
}

impl EdgeMask {
    /// Every edge open.
    pub fn all_open(g: &Graph) -> Self {
        Self::from_fn(g, 0, |_| true)
    }

    /// Mask with edge `e` open iff `open(e)`.
    pub fn from_fn(g: &Graph, seed: u64, mut open: impl FnMut(usize) -> bool) -> Self {
        let len = g.m();
        let mut words = vec![0u64; len.div_ceil(64)];
        for e in 0..len {
            if open(e) {
                words[e / 64] |= 1 << (e % 64);
            }
        }
        Self { graph: g.fingerprint(), seed, words, len }
    }

    #[inline]
    pub fn is_open(&self, e: usize) -> bool {
        self.words[e / 64] >> (e % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn open_count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Whether this mask was drawn for `g`.
    pub fn belongs_to(&self, g: &Graph) -> bool {
        self.len == g.m() && self.graph == g.fingerprint()
    }

    /// Open edges as vertex pairs.
    pub fn open_edges<'a>(&'a self, g: &'a Graph) -> impl Iterator<Item = (usize, usize)> + 'a {
        (0..self.len).filter(|&e| self.is_open(e)).map(|e| g.edge(e))
    }

    /// The open subgraph as a graph on the same vertex set.
    pub fn open_subgraph(&self, g: &Graph) -> Graph {
        Graph::from_edges(g.n(), self.open_edges(g)).expect("subgraph of a simple graph is simple")
    }
}

/// Bond percolation: edge `e` is open iff `uniform(seed, e) < p`.
pub fn sample(g: &Graph, p: f64, seed: u64) -> Result<EdgeMask> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::param(format!("p must lie in [0, 1], got {p}")));
    }
    Ok(EdgeMask::from_fn(g, seed, |e| uniform(seed, e as u64) < p))
}
