use std::collections::VecDeque;

use serde::Serialize;

use super::EdgeMask;
use crate::graph::Graph;

/// Disjoint sets with union by size and path halving.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self { parent: (0..n as u32).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let grand = self.parent[self.parent[x] as usize];
            self.parent[x] = grand;
            x = grand as usize;
        }
        x
    }

    /// Merges the sets of `a` and `b`; false if they were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn set_size(&mut self, x: usize) -> usize {
        let r = self.find(x);
        self.size[r] as usize
    }
}

/// Components of the open subgraph, ranked by decreasing size with ties
/// broken by smallest vertex.
#[derive(Debug, Clone)]
pub struct ComponentLabels {
    /// Rank of the component of each vertex; 0 is the giant.
    pub rank: Vec<u32>,
    /// Sizes by rank.
    pub sizes: Vec<usize>,
}

impl ComponentLabels {
    pub fn of(g: &Graph, mask: &EdgeMask) -> Self {
        let n = g.n();
        let mut uf = UnionFind::new(n);
        for e in 0..g.m() {
            if mask.is_open(e) {
                let (u, v) = g.edge(e);
                uf.union(u, v);
            }
        }
        // First vertex seen for a root is its smallest member.
        let mut first = vec![u32::MAX; n];
        let mut roots = Vec::new();
        for v in 0..n {
            let r = uf.find(v);
            if first[r] == u32::MAX {
                first[r] = v as u32;
                roots.push(r);
            }
        }
        let mut keyed: Vec<(usize, u32, usize)> = roots.iter().map(|&r| (uf.size[r] as usize, first[r], r)).collect();
        keyed.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut rank_of_root = vec![0u32; n];
        for (i, &(_, _, r)) in keyed.iter().enumerate() {
            rank_of_root[r] = i as u32;
        }
        let rank = (0..n).map(|v| rank_of_root[uf.find(v)]).collect();
        Self { rank, sizes: keyed.iter().map(|k| k.0).collect() }
    }

    /// Vertices of the component with the given rank, ascending.
    pub fn members(&self, rank: u32) -> Vec<usize> {
        (0..self.rank.len()).filter(|&v| self.rank[v] == rank).collect()
    }

    pub fn giant(&self) -> Vec<usize> {
        self.members(0)
    }
}

/// Reference labelling by breadth-first search; same ranking rule.
pub fn bfs_component_labels(g: &Graph, mask: &EdgeMask) -> ComponentLabels {
    let n = g.n();
    let mut comp = vec![u32::MAX; n];
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..n {
        if comp[s] != u32::MAX {
            continue;
        }
        let id = sizes.len() as u32;
        comp[s] = id;
        queue.push_back(s);
        let mut size = 0;
        while let Some(x) = queue.pop_front() {
            size += 1;
            for (y, e) in g.incident(x) {
                if mask.is_open(e) && comp[y] == u32::MAX {
                    comp[y] = id;
                    queue.push_back(y);
                }
            }
        }
        sizes.push(size);
    }
    // Components were discovered in order of smallest vertex.
    let mut order: Vec<usize> = (0..sizes.len()).collect();
    order.sort_by(|&a, &b| sizes[b].cmp(&sizes[a]).then(a.cmp(&b)));
    let mut rank_of = vec![0u32; sizes.len()];
    for (r, &c) in order.iter().enumerate() {
        rank_of[c] = r as u32;
    }
    ComponentLabels {
        rank: comp.iter().map(|&c| rank_of[c as usize]).collect(),
        sizes: order.iter().map(|&c| sizes[c]).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentSummary {
    /// All component sizes, decreasing.
    pub sizes: Vec<usize>,
    pub giant_size: usize,
    /// 0 when the open subgraph is connected.
    pub second_size: usize,
    pub giant_edges: usize,
    /// `|E(C1)| - |C1| + 1`.
    pub giant_excess: usize,
    /// Giant vertices by open degree; index `k` counts degree `k`.
    pub degree_hist: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoreSummary {
    /// Vertices of the giant's 2-core.
    pub vertices: usize,
    pub edges: usize,
    /// Giant 2-core vertices by degree within the core; index `k` counts `k`.
    pub degree_hist: Vec<usize>,
    /// Bridges of the giant's 2-core.
    pub bridges: usize,
    /// 2-core vertices lying outside the giant.
    pub other_core_vertices: usize,
    /// `edges - vertices + 1`, or 0 for an empty core.
    pub excess: usize,
}

/// Everything measured on one sample, with the per-vertex data the
/// predictor audit needs.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub labels: ComponentLabels,
    pub open_degree: Vec<u32>,
    /// Membership in the 2-core of the open subgraph.
    pub in_core: Vec<bool>,
    pub components: ComponentSummary,
    pub core: CoreSummary,
}

pub fn analyze(g: &Graph, mask: &EdgeMask) -> Analysis {
    let n = g.n();
    let labels = ComponentLabels::of(g, mask);
    let mut open_degree = vec![0u32; n];
    for (u, v) in mask.open_edges(g) {
        open_degree[u] += 1;
        open_degree[v] += 1;
    }
    let dmax = g.max_degree();

    let mut giant_edges = 0;
    for (u, _) in mask.open_edges(g) {
        if labels.rank[u] == 0 {
            giant_edges += 1;
        }
    }
    let giant_size = labels.sizes.first().copied().unwrap_or(0);
    let mut degree_hist = vec![0usize; dmax + 1];
    for v in 0..n {
        if labels.rank[v] == 0 {
            degree_hist[open_degree[v] as usize] += 1;
        }
    }
    let components = ComponentSummary {
        sizes: labels.sizes.clone(),
        giant_size,
        second_size: labels.sizes.get(1).copied().unwrap_or(0),
        giant_edges,
        giant_excess: (giant_edges + 1).saturating_sub(giant_size),
        degree_hist,
    };

    let in_core = peel(g, mask, &open_degree);
    let mut core_degree = vec![0u32; n];
    let mut core_edges = 0;
    for (u, v) in mask.open_edges(g) {
        if in_core[u] && in_core[v] {
            core_degree[u] += 1;
            core_degree[v] += 1;
            if labels.rank[u] == 0 {
                core_edges += 1;
            }
        }
    }
    let mut core_hist = vec![0usize; dmax + 1];
    let (mut core_vertices, mut other) = (0, 0);
    for v in 0..n {
        if !in_core[v] {
            continue;
        }
        if labels.rank[v] == 0 {
            core_vertices += 1;
            core_hist[core_degree[v] as usize] += 1;
        } else {
            other += 1;
        }
    }
    let bridges = count_bridges(g, mask, |v| in_core[v] && labels.rank[v] == 0);
    let core = CoreSummary {
        vertices: core_vertices,
        edges: core_edges,
        degree_hist: core_hist,
        bridges,
        other_core_vertices: other,
        excess: if core_vertices == 0 { 0 } else { core_edges + 1 - core_vertices },
    };
    Analysis { labels, open_degree, in_core, components, core }
}

pub fn components(g: &Graph, mask: &EdgeMask) -> ComponentSummary {
    analyze(g, mask).components
}

pub fn two_core(g: &Graph, mask: &EdgeMask) -> CoreSummary {
    analyze(g, mask).core
}

/// Repeatedly strips vertices of open degree at most 1.
fn peel(g: &Graph, mask: &EdgeMask, open_degree: &[u32]) -> Vec<bool> {
    let mut deg = open_degree.to_vec();
    let mut alive = vec![true; g.n()];
    let mut stack: Vec<usize> = (0..g.n()).filter(|&v| deg[v] <= 1).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for (w, e) in g.incident(v) {
            if mask.is_open(e) && alive[w] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    stack.push(w);
                }
            }
        }
    }
    alive
}

/// Bridges of the open subgraph induced on vertices satisfying `keep`,
/// by an iterative low-link depth-first search.
pub(crate) fn count_bridges(g: &Graph, mask: &EdgeMask, keep: impl Fn(usize) -> bool) -> usize {
    let n = g.n();
    let mut disc = vec![u32::MAX; n];
    let mut low = vec![0u32; n];
    let mut time = 0u32;
    let mut bridges = 0;
    // (vertex, edge to parent, next incidence offset)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    for s in 0..n {
        if disc[s] != u32::MAX || !keep(s) {
            continue;
        }
        disc[s] = time;
        low[s] = time;
        time += 1;
        stack.push((s, usize::MAX, 0));
        while let Some(&mut (v, parent_edge, ref mut next)) = stack.last_mut() {
            let slot = g.incidence_start(v) + *next;
            if slot < g.incidence_start(v + 1) {
                let (w, e) = g.incidence(slot);
                *next += 1;
                if e == parent_edge || !mask.is_open(e) || !keep(w) {
                    continue;
                }
                if disc[w] == u32::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, e, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(u, _, _)) = stack.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] > disc[u] {
                        bridges += 1;
                    }
                }
            }
        }
    }
    bridges
}
