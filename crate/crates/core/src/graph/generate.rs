use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::error::{Error, Result};
use crate::rng::{builder_rng, keyed};

const PAIRING_RESTARTS: usize = 1_000;
const RANDOM_TRIES: usize = 64;
/// Below this many unmatched points a failed round triggers an exhaustive
/// scan for admissible pairs.
const EXHAUSTIVE_LIMIT: usize = 2_048;

const GIRTH_RESTARTS: usize = 400;
const GIRTH_NODE_BUDGET: usize = 200_000;

/// Uniform-ish random simple `d`-regular graph on `n` vertices.
///
/// Points (half-edges) are paired at random; a proposed pair that would
/// create a loop or a repeated edge is rejected and redrawn, and the whole
/// pairing restarts when no admissible pair remains.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if (n * d) % 2 == 1 {
        return Err(Error::param(format!("n * d = {n} * {d} is odd")));
    }
    if n <= d {
        return Err(Error::param(format!("need n > d, got n = {n}, d = {d}")));
    }
    let mut rng = builder_rng(seed);
    random_with_degrees(&vec![d; n], &mut rng)
}

/// Random simple graph with the given degree sequence (pairing model with
/// collision rejection and restarts).
pub fn random_with_degrees(degrees: &[usize], rng: &mut ChaCha8Rng) -> Result<Graph> {
    let total: usize = degrees.iter().sum();
    if total % 2 == 1 {
        return Err(Error::param("degree sum is odd"));
    }
    let n = degrees.len();
    let mut offsets = Vec::with_capacity(n + 1);
    offsets.push(0usize);
    for &d in degrees {
        offsets.push(offsets.last().unwrap() + d);
    }

    for _ in 0..PAIRING_RESTARTS {
        if let Some(edges) = try_pairing(degrees, &offsets, rng) {
            let mut edges = edges;
            edges.sort_unstable();
            return Ok(Graph::from_sorted_unique(n, edges));
        }
    }
    Err(Error::generation(format!("pairing model failed {PAIRING_RESTARTS} times for a degree sequence of length {n}")))
}

fn try_pairing(degrees: &[usize], offsets: &[usize], rng: &mut ChaCha8Rng) -> Option<Vec<(u32, u32)>> {
    let mut points: Vec<u32> = Vec::with_capacity(*offsets.last().unwrap());
    for (v, &d) in degrees.iter().enumerate() {
        points.extend(std::iter::repeat_n(v as u32, d));
    }
    let mut adj = vec![u32::MAX; points.len()];
    let mut fill = vec![0usize; degrees.len()];
    let adjacent = |adj: &[u32], fill: &[usize], a: usize, b: u32| adj[offsets[a]..offsets[a] + fill[a]].contains(&b);

    let mut edges = Vec::with_capacity(points.len() / 2);
    let mut live = points.len();
    let mut stalls = 0usize;
    while live > 0 {
        let mut chosen = None;
        for _ in 0..RANDOM_TRIES {
            let i = rng.random_range(0..live);
            let mut j = rng.random_range(0..live - 1);
            if j >= i {
                j += 1;
            }
            let (a, b) = (points[i], points[j]);
            if a != b && !adjacent(&adj, &fill, a as usize, b) {
                chosen = Some((i, j));
                break;
            }
        }
        if chosen.is_none() {
            if live > EXHAUSTIVE_LIMIT {
                stalls += 1;
                if stalls > 1_000 {
                    return None;
                }
                continue;
            }
            let mut admissible = Vec::new();
            for i in 0..live {
                for j in i + 1..live {
                    let (a, b) = (points[i], points[j]);
                    if a != b && !adjacent(&adj, &fill, a as usize, b) {
                        admissible.push((i, j));
                    }
                }
            }
            if admissible.is_empty() {
                return None;
            }
            chosen = Some(admissible[rng.random_range(0..admissible.len())]);
        }
        let (i, j) = chosen.unwrap();
        let (a, b) = (points[i], points[j]);
        adj[offsets[a as usize] + fill[a as usize]] = b;
        fill[a as usize] += 1;
        adj[offsets[b as usize] + fill[b as usize]] = a;
        fill[b as usize] += 1;
        edges.push((a.min(b), a.max(b)));
        let (hi, lo) = (i.max(j), i.min(j));
        points.swap(hi, live - 1);
        points.swap(lo, live - 2);
        live -= 2;
    }
    Some(edges)
}

/// Fewest vertices a `d`-regular graph of girth `girth` can have.
pub fn moore_bound(d: usize, girth: usize) -> usize {
    assert!(d >= 2 && girth >= 3);
    if girth % 2 == 1 {
        let r = (girth - 1) / 2;
        1 + d * (0..r).map(|i| (d - 1).pow(i as u32)).sum::<usize>()
    } else {
        let r = girth / 2;
        2 * (0..r).map(|i| (d - 1).pow(i as u32)).sum::<usize>()
    }
}

/// A `d`-regular graph on `m` vertices with girth at least `min_girth`.
///
/// Backtracking edge insertion: the lowest-index vertex with spare degree is
/// joined to a random partner at distance at least `min_girth - 1`. Each
/// attempt has a node budget; attempts restart with a fresh shuffle. The
/// search is seeded from `(m, d, min_girth)`, so the output is deterministic.
pub fn high_girth_regular(m: usize, d: usize, min_girth: usize) -> Result<Graph> {
    if d < 2 {
        return Err(Error::param("degree must be at least 2"));
    }
    let min_girth = min_girth.max(3);
    let bound = moore_bound(d, min_girth);
    if m < bound {
        return Err(Error::Infeasible(format!(
            "{m} vertices is below the Moore bound {bound} for degree {d} and girth {min_girth}"
        )));
    }
    if (m * d) % 2 == 1 {
        return Err(Error::param(format!("m * d = {m} * {d} is odd")));
    }
    let seed = keyed(keyed(m as u64, d as u64), min_girth as u64);
    let mut rng = builder_rng(seed);
    for _ in 0..GIRTH_RESTARTS {
        let mut search = GirthSearch::new(m, d, min_girth);
        let mut budget = GIRTH_NODE_BUDGET;
        if search.extend(&mut rng, &mut budget) {
            let edges = search.edges();
            return Graph::from_edges(m, edges);
        }
    }
    Err(Error::generation(format!(
        "no {d}-regular graph of girth >= {min_girth} found on {m} vertices within budget; try a larger m"
    )))
}

struct GirthSearch {
    d: usize,
    min_girth: usize,
    adj: Vec<Vec<usize>>,
    stamp: Vec<usize>,
    epoch: usize,
}

impl GirthSearch {
    fn new(m: usize, d: usize, min_girth: usize) -> Self {
        Self { d, min_girth, adj: vec![Vec::with_capacity(d); m], stamp: vec![0; m], epoch: 0 }
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, nb) in self.adj.iter().enumerate() {
            out.extend(nb.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        out
    }

    /// Marks every vertex within distance `min_girth - 2` of `u`.
    fn mark_near(&mut self, u: usize) {
        self.epoch += 1;
        let limit = self.min_girth - 2;
        let mut frontier = vec![u];
        self.stamp[u] = self.epoch;
        for _ in 0..limit {
            let mut next = Vec::new();
            for &x in &frontier {
                for &y in &self.adj[x] {
                    if self.stamp[y] != self.epoch {
                        self.stamp[y] = self.epoch;
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
    }

    fn extend(&mut self, rng: &mut ChaCha8Rng, budget: &mut usize) -> bool {
        let Some(u) = (0..self.adj.len()).find(|&v| self.adj[v].len() < self.d) else {
            return true;
        };
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        self.mark_near(u);
        let mut candidates: Vec<usize> =
            (0..self.adj.len()).filter(|&v| self.adj[v].len() < self.d && self.stamp[v] != self.epoch).collect();
        candidates.shuffle(rng);
        for v in candidates {
            self.adj[u].push(v);
            self.adj[v].push(u);
            if self.extend(rng, budget) {
                return true;
            }
            self.adj[u].pop();
            self.adj[v].pop();
            if *budget == 0 {
                return false;
            }
        }
        false
    }
}
