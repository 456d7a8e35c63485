use std::collections::VecDeque;

use super::Graph;

pub const UNREACHED: usize = usize::MAX;

/// Length of the shortest cycle, or `None` for a forest.
///
/// A BFS from every vertex; a non-tree edge `xy` met during the search from
/// `s` closes a walk of length `dist(x) + dist(y) + 1` through `s`, and the
/// minimum over all roots is exactly the girth. Each search stops once no
/// shorter cycle can appear.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.n();
    let mut best = usize::MAX;
    let mut dist = vec![UNREACHED; n];
    let mut parent_edge = vec![usize::MAX; n];
    let mut touched = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..n {
        dist[s] = 0;
        touched.push(s);
        queue.push_back(s);
        'search: while let Some(x) = queue.pop_front() {
            // Cycles closed from depth t have length at least 2t.
            if 2 * dist[x] >= best {
                break;
            }
            for (y, e) in g.incident(x) {
                if e == parent_edge[x] {
                    continue;
                }
                if dist[y] == UNREACHED {
                    dist[y] = dist[x] + 1;
                    parent_edge[y] = e;
                    touched.push(y);
                    queue.push_back(y);
                } else {
                    best = best.min(dist[x] + dist[y] + 1);
                    if best == 3 {
                        break 'search;
                    }
                }
            }
        }
        queue.clear();
        for v in touched.drain(..) {
            dist[v] = UNREACHED;
            parent_edge[v] = usize::MAX;
        }
        if best == 3 {
            break;
        }
    }
    (best != usize::MAX).then_some(best)
}

/// Hop distances from `src`; unreachable vertices hold `usize::MAX`.
pub fn bfs_distances(g: &Graph, src: usize) -> Vec<usize> {
    let mut dist = vec![UNREACHED; g.n()];
    let mut queue = VecDeque::from([src]);
    dist[src] = 0;
    while let Some(x) = queue.pop_front() {
        for y in g.neighbors(x) {
            if dist[y] == UNREACHED {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    dist
}

pub fn is_connected(g: &Graph) -> bool {
    g.n() == 0 || bfs_distances(g, 0).iter().all(|&d| d != UNREACHED)
}

/// Lower bound on the diameter of the component of `start` by repeated
/// BFS sweeps, each restarted from the farthest vertex of the previous one.
pub fn diameter_lower_bound(g: &Graph, start: usize, sweeps: usize) -> usize {
    let mut best = 0;
    let mut src = start;
    for _ in 0..sweeps.max(1) {
        let dist = bfs_distances(g, src);
        let (far, ecc) = dist
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != UNREACHED)
            .max_by_key(|&(v, &d)| (d, std::cmp::Reverse(v)))
            .map(|(v, &d)| (v, d))
            .unwrap_or((src, 0));
        if ecc <= best && src != start {
            break;
        }
        best = best.max(ecc);
        src = far;
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn girth_of_standard_graphs() {
        assert_eq!(girth(&Graph::cycle(5)), Some(5));
        assert_eq!(girth(&Graph::cycle(8)), Some(8));
        assert_eq!(girth(&Graph::complete(4)), Some(3));
        assert_eq!(girth(&Graph::path(6)), None);
        assert_eq!(girth(&Graph::empty(3)), None);
        // Complete bipartite K_{3,3}.
        let k33 = Graph::from_edges(6, (0..3).flat_map(|u| (3..6).map(move |v| (u, v)))).unwrap();
        assert_eq!(girth(&k33), Some(4));
    }

    #[test]
    fn girth_of_disjoint_union_takes_minimum() {
        let g = Graph::from_edges(9, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 8), (8, 4)]).unwrap();
        assert_eq!(girth(&g), Some(4));
    }

    #[test]
    fn distances_and_connectivity() {
        let g = Graph::path(5);
        assert_eq!(bfs_distances(&g, 0), vec![0, 1, 2, 3, 4]);
        assert!(is_connected(&g));
        assert!(!is_connected(&Graph::empty(2)));
    }

    #[test]
    fn multi_sweep_finds_path_diameter() {
        assert_eq!(diameter_lower_bound(&Graph::path(11), 5, 4), 10);
        assert_eq!(diameter_lower_bound(&Graph::cycle(10), 0, 3), 5);
    }
}
