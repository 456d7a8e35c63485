//! Eccentricities, path counts and heuristic structure witnesses (long
//! paths, balanced separators, clique minors). Witnesses are verified;
//! none of the searches claims optimality.

use std::collections::VecDeque;

use serde::Serialize;

use super::components::ComponentLabels;
use super::EdgeMask;
use crate::error::{Error, Result};
use crate::graph::{fiedler, is_connected, Graph, UNREACHED};

/// Exhaustive separator search is used up to this order.
const EXHAUSTIVE_SEPARATOR_LIMIT: usize = 12;

/// Eccentricity of `v` inside its open component, and that component's size.
pub fn component_diameter(g: &Graph, mask: &EdgeMask, v: usize) -> (usize, usize) {
    let mut dist = vec![UNREACHED; g.n()];
    let mut queue = VecDeque::from([v]);
    dist[v] = 0;
    let (mut ecc, mut size) = (0, 0);
    while let Some(x) = queue.pop_front() {
        size += 1;
        ecc = ecc.max(dist[x]);
        for (y, e) in g.incident(x) {
            if mask.is_open(e) && dist[y] == UNREACHED {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    (ecc, size)
}

/// Number of paths with 1, 2 and 3 edges inside the giant of the open
/// subgraph (each path counted once, not once per direction).
pub fn giant_path_counts(g: &Graph, mask: &EdgeMask) -> [u64; 3] {
    let labels = ComponentLabels::of(g, mask);
    let n = g.n();
    let in_giant = |v: usize| labels.rank[v] == 0;
    let mut deg = vec![0u64; n];
    for (u, v) in mask.open_edges(g) {
        deg[u] += 1;
        deg[v] += 1;
    }
    let mut edges = 0u64;
    let mut wedges = 0u64;
    let mut three = 0u64;
    for (u, v) in mask.open_edges(g) {
        if in_giant(u) {
            edges += 1;
            three += (deg[u] - 1) * (deg[v] - 1);
        }
    }
    for (v, &k) in deg.iter().enumerate() {
        if in_giant(v) {
            wedges += k * k.saturating_sub(1) / 2;
        }
    }
    // Each triangle closes one walk per middle edge.
    let mut mark = vec![false; n];
    let mut triangles = 0u64;
    for u in 0..n {
        if !in_giant(u) {
            continue;
        }
        for (w, e) in g.incident(u) {
            if mask.is_open(e) {
                mark[w] = true;
            }
        }
        for (v, e) in g.incident(u) {
            if v > u && mask.is_open(e) {
                for (w, f) in g.incident(v) {
                    if w > v && mask.is_open(f) && mark[w] {
                        triangles += 1;
                    }
                }
            }
        }
        for (w, _) in g.incident(u) {
            mark[w] = false;
        }
    }
    [edges, wedges, three - 3 * triangles]
}

/// Whether `path` is a simple path of open edges.
pub fn is_open_simple_path(g: &Graph, mask: &EdgeMask, path: &[usize]) -> bool {
    let mut seen = vec![false; g.n()];
    for &v in path {
        if v >= g.n() || std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    path.windows(2).all(|w| g.edge_index(w[0], w[1]).is_some_and(|e| mask.is_open(e)))
}

/// A long simple open path, found by depth-first sweeps that restart from
/// the deepest vertex of the previous sweep. Neighbours with the fewest
/// unvisited neighbours are explored first.
pub fn longest_path_lb(g: &Graph, mask: &EdgeMask) -> Vec<usize> {
    if g.n() == 0 {
        return Vec::new();
    }
    let labels = ComponentLabels::of(g, mask);
    let start = (0..g.n()).find(|&v| labels.rank[v] == 0).unwrap_or(0);
    let mut best = vec![start];
    let mut src = start;
    for _ in 0..6 {
        let path = dfs_deepest(g, mask, src);
        if path.len() <= best.len() {
            if src != start {
                break;
            }
        } else {
            best = path;
        }
        src = *best.last().unwrap();
    }
    best
}

fn dfs_deepest(g: &Graph, mask: &EdgeMask, src: usize) -> Vec<usize> {
    let n = g.n();
    let mut visited = vec![false; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut stack = vec![src];
    visited[src] = true;
    let mut deepest = src;
    let unvisited_degree =
        |visited: &[bool], v: usize| g.incident(v).filter(|&(w, e)| mask.is_open(e) && !visited[w]).count();
    while let Some(&v) = stack.last() {
        let next = g
            .incident(v)
            .filter(|&(w, e)| mask.is_open(e) && !visited[w])
            .map(|(w, _)| w)
            .min_by_key(|&w| (unvisited_degree(&visited, w), w));
        match next {
            Some(w) => {
                visited[w] = true;
                parent[w] = v;
                depth[w] = depth[v] + 1;
                if depth[w] > depth[deepest] {
                    deepest = w;
                }
                stack.push(w);
            }
            None => {
                stack.pop();
            }
        }
    }
    let mut path = vec![deepest];
    while parent[*path.last().unwrap()] != usize::MAX {
        path.push(parent[*path.last().unwrap()]);
    }
    path.reverse();
    path
}

/// A vertex separator `S` with parts `A`, `B`: no edge joins `A` and `B`
/// and both parts have at most `2n/3` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Separator {
    pub separator: Vec<usize>,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    /// True when found by exhaustive search, hence of minimum size.
    pub exhaustive: bool,
}

impl Separator {
    pub fn verify(&self, g: &Graph) -> bool {
        let n = g.n();
        let mut side = vec![0u8; n];
        for (set, tag) in [(&self.separator, 1u8), (&self.a, 2), (&self.b, 3)] {
            for &v in set {
                if v >= n || side[v] != 0 {
                    return false;
                }
                side[v] = tag;
            }
        }
        side.iter().all(|&s| s != 0)
            && 3 * self.a.len() <= 2 * n
            && 3 * self.b.len() <= 2 * n
            && g.edges().all(|(u, v)| !matches!((side[u], side[v]), (2, 3) | (3, 2)))
    }
}

/// Smallest balanced separator found by a sweep over the Fiedler order
/// (both directions); exact by exhaustion for graphs of at most 12 vertices.
pub fn separator_search(g: &Graph) -> Result<Separator> {
    if g.n() == 0 || !is_connected(g) {
        return Err(Error::param("separator search needs a connected, nonempty graph"));
    }
    if g.n() <= EXHAUSTIVE_SEPARATOR_LIMIT {
        return Ok(exhaustive_separator(g));
    }
    let f = fiedler(g);
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by(|&a, &b| f.vector[a].total_cmp(&f.vector[b]).then(a.cmp(&b)));
    let forward = sweep_separator(g, &order);
    order.reverse();
    let backward = sweep_separator(g, &order);
    Ok(if backward.separator.len() < forward.separator.len() { backward } else { forward })
}

/// Best balanced prefix cut of `order`: `A` is a prefix, `S` its outer
/// vertex boundary, `B` the rest.
fn sweep_separator(g: &Graph, order: &[usize]) -> Separator {
    let n = g.n();
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    // v is on the boundary of the prefix of length k iff first(v) < k <= pos(v).
    let mut diff = vec![0i64; n + 2];
    for v in 0..n {
        let first = g.neighbors(v).map(|w| pos[w]).min().unwrap_or(usize::MAX);
        if first < pos[v] {
            diff[first + 1] += 1;
            diff[pos[v] + 1] -= 1;
        }
    }
    let mut best: Option<(usize, usize)> = None;
    let mut running = 0i64;
    for (k, &step) in diff.iter().enumerate().take(n + 1) {
        running += step;
        let s = running as usize;
        let b = n - k - s;
        if 3 * k <= 2 * n && 3 * b <= 2 * n && best.is_none_or(|(bs, _)| s < bs) {
            best = Some((s, k));
        }
    }
    let (_, k) = best.expect("the prefix of length floor(2n/3) is balanced");
    let a: Vec<usize> = order[..k].to_vec();
    let mut in_a = vec![false; n];
    a.iter().for_each(|&v| in_a[v] = true);
    let (mut separator, mut rest) = (Vec::new(), Vec::new());
    for &v in &order[k..] {
        if g.neighbors(v).any(|w| in_a[w]) {
            separator.push(v);
        } else {
            rest.push(v);
        }
    }
    let mut sep = Separator { separator, a, b: rest, exhaustive: false };
    sep.separator.sort_unstable();
    sep.a.sort_unstable();
    sep.b.sort_unstable();
    sep
}

fn exhaustive_separator(g: &Graph) -> Separator {
    let n = g.n();
    let mut subsets: Vec<u32> = (0..1u32 << n).collect();
    subsets.sort_by_key(|s| (s.count_ones(), *s));
    for s in subsets {
        let removed = |v: usize| s >> v & 1 == 1;
        // Components of G - S as bitmasks.
        let mut comps: Vec<u32> = Vec::new();
        let mut seen = s;
        for v in 0..n {
            if seen >> v & 1 == 1 {
                continue;
            }
            let mut comp = 0u32;
            let mut stack = vec![v];
            seen |= 1 << v;
            while let Some(x) = stack.pop() {
                comp |= 1 << x;
                for w in g.neighbors(x) {
                    if !removed(w) && seen >> w & 1 == 0 {
                        seen |= 1 << w;
                        stack.push(w);
                    }
                }
            }
            comps.push(comp);
        }
        for pick in 0..1u32 << comps.len() {
            let a: u32 = (0..comps.len()).filter(|&i| pick >> i & 1 == 1).map(|i| comps[i]).fold(0, |x, c| x | c);
            let b = !(a | s) & ((1u64 << n) - 1) as u32;
            if 3 * a.count_ones() as usize <= 2 * n && 3 * b.count_ones() as usize <= 2 * n {
                let bits = |m: u32| (0..n).filter(|&v| m >> v & 1 == 1).collect();
                return Separator { separator: bits(s), a: bits(a), b: bits(b), exhaustive: true };
            }
        }
    }
    unreachable!("the full vertex set is a separator")
}

/// Branch sets of a clique minor: disjoint, each connected, pairwise joined
/// by an edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinorWitness {
    pub branch_sets: Vec<Vec<usize>>,
}

impl MinorWitness {
    pub fn order(&self) -> usize {
        self.branch_sets.len()
    }

    pub fn verify(&self, g: &Graph) -> bool {
        let n = g.n();
        let t = self.branch_sets.len();
        let mut owner = vec![usize::MAX; n];
        for (i, set) in self.branch_sets.iter().enumerate() {
            if set.is_empty() {
                return false;
            }
            for &v in set {
                if v >= n || owner[v] != usize::MAX {
                    return false;
                }
                owner[v] = i;
            }
        }
        for (i, set) in self.branch_sets.iter().enumerate() {
            let mut seen = vec![set[0]];
            let mut reached = std::collections::HashSet::from([set[0]]);
            while let Some(x) = seen.pop() {
                for w in g.neighbors(x) {
                    if owner[w] == i && reached.insert(w) {
                        seen.push(w);
                    }
                }
            }
            if reached.len() != set.len() {
                return false;
            }
        }
        let mut adjacent = vec![false; t * t];
        for (u, v) in g.edges() {
            let (a, b) = (owner[u], owner[v]);
            if a != usize::MAX && b != usize::MAX && a != b {
                adjacent[a * t + b] = true;
                adjacent[b * t + a] = true;
            }
        }
        (0..t).all(|a| (0..t).all(|b| a == b || adjacent[a * t + b]))
    }
}

/// Order of a clique minor found greedily: the graph is cut into connected
/// cells (breadth-first balls of a few sizes up to about `sqrt(n)`), and
/// cells are added to the clique one at a time, each absorbing paths of
/// unused cells to reach the members it does not yet touch.
pub fn minor_order_lb(g: &Graph) -> MinorWitness {
    let n = g.n();
    if n == 0 {
        return MinorWitness { branch_sets: Vec::new() };
    }
    let root = (n as f64).sqrt().ceil() as usize;
    let mut sizes = vec![root, root.div_ceil(2), root.div_ceil(4)];
    if n <= 200 {
        sizes.push(1);
    }
    sizes.sort_unstable();
    sizes.dedup();
    let mut best = MinorWitness { branch_sets: vec![vec![0]] };
    for s in sizes {
        let cells = partition_cells(g, s.max(1));
        let candidate = grow_clique(g, &cells);
        if candidate.order() > best.order() {
            best = candidate;
        }
    }
    debug_assert!(best.verify(g));
    best
}

/// Connected cells of about `size` vertices; undersized fragments are
/// merged into a neighbouring cell.
fn partition_cells(g: &Graph, size: usize) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut cell = vec![usize::MAX; n];
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if cell[s] != usize::MAX {
            continue;
        }
        let id = cells.len();
        let mut members = vec![s];
        cell[s] = id;
        let mut head = 0;
        while head < members.len() && members.len() < size {
            let x = members[head];
            head += 1;
            for w in g.neighbors(x) {
                if cell[w] == usize::MAX && members.len() < size {
                    cell[w] = id;
                    members.push(w);
                }
            }
        }
        cells.push(members);
    }
    if size > 1 {
        for id in 0..cells.len() {
            if cells[id].is_empty() || 2 * cells[id].len() >= size {
                continue;
            }
            let target = cells[id].iter().flat_map(|&v| g.neighbors(v)).map(|w| cell[w]).find(|&c| c != id);
            if let Some(t) = target {
                let moved = std::mem::take(&mut cells[id]);
                moved.iter().for_each(|&v| cell[v] = t);
                cells[t].extend(moved);
            }
        }
        cells.retain(|c| !c.is_empty());
    }
    cells
}

fn grow_clique(g: &Graph, cells: &[Vec<usize>]) -> MinorWitness {
    let k = cells.len();
    let mut cell_of = vec![0usize; g.n()];
    for (i, c) in cells.iter().enumerate() {
        c.iter().for_each(|&v| cell_of[v] = i);
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (u, v) in g.edges() {
        let (a, b) = (cell_of[u], cell_of[v]);
        if a != b {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    let mut candidates: Vec<usize> = (0..k).collect();
    candidates.sort_by_key(|&c| (std::cmp::Reverse(adj[c].len()), c));

    let mut owner: Vec<Option<usize>> = vec![None; k];
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut failures = 0;
    for &c in &candidates {
        if owner[c].is_some() {
            continue;
        }
        let t = members.len();
        let mut absorbed = vec![c];
        owner[c] = Some(t);
        let mut ok = true;
        for j in 0..t {
            let touches = |absorbed: &[usize], owner: &[Option<usize>]| {
                absorbed.iter().any(|&a| adj[a].iter().any(|&b| owner[b] == Some(j)))
            };
            if touches(&absorbed, &owner) {
                continue;
            }
            match connect(&adj, &owner, &absorbed, j) {
                Some(path) => {
                    for x in path {
                        owner[x] = Some(t);
                        absorbed.push(x);
                    }
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            members.push(absorbed);
            failures = 0;
        } else {
            absorbed.iter().for_each(|&x| owner[x] = None);
            failures += 1;
            if failures > 64 {
                break;
            }
        }
    }
    let branch_sets = members
        .into_iter()
        .map(|m| {
            let mut set: Vec<usize> = m.iter().flat_map(|&c| cells[c].iter().copied()).collect();
            set.sort_unstable();
            set
        })
        .collect();
    MinorWitness { branch_sets }
}

/// Shortest chain of unused cells leading from `from` to a cell adjacent to
/// member `target`; returns the chain's unused cells.
fn connect(adj: &[Vec<usize>], owner: &[Option<usize>], from: &[usize], target: usize) -> Option<Vec<usize>> {
    let k = adj.len();
    let mut prev = vec![usize::MAX; k];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &f in from {
        prev[f] = f;
        queue.push_back(f);
    }
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if prev[y] != usize::MAX || owner[y].is_some() {
                continue;
            }
            prev[y] = x;
            if adj[y].iter().any(|&z| owner[z] == Some(target)) {
                let mut path = vec![y];
                let mut cur = x;
                while prev[cur] != cur {
                    path.push(cur);
                    cur = prev[cur];
                }
                return Some(path);
            }
            queue.push_back(y);
        }
    }
    None
}
