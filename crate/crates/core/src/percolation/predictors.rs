use serde::Serialize;

use super::components::{analyze, Analysis};
use super::EdgeMask;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default cap on vertex visits across all truncated searches of one pass.
pub const DEFAULT_PREDICTOR_BUDGET: usize = 2_000_000_000;

/// Symmetric differences between the local predictors and the measured
/// giant and giant 2-core.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PredictorAudit {
    pub e1: usize,
    pub v1: usize,
    pub e2: usize,
    pub v2: usize,
}

/// Radius-`r` local predictors of giant and 2-core membership.
///
/// For an open edge `xy`, `A(x, y)` holds when the component of `y` in the
/// open subgraph minus `xy` has at least `r` vertices. `E1` holds the open
/// edges with `A(x, y)` or `A(y, x)`, `E2` those with both; `V1` holds
/// vertices `x` with some open `xy` satisfying `A(x, y)`, and `V2` the
/// endpoints of `E2`.
#[derive(Debug, Clone)]
pub struct PredictorSets {
    pub r: usize,
    pub e1: Vec<bool>,
    pub v1: Vec<bool>,
    pub e2: Vec<bool>,
    pub v2: Vec<bool>,
    pub audit: PredictorAudit,
}

impl PredictorSets {
    pub fn e1_len(&self) -> usize {
        self.e1.iter().filter(|&&b| b).count()
    }

    pub fn e2_len(&self) -> usize {
        self.e2.iter().filter(|&&b| b).count()
    }

    pub fn v1_len(&self) -> usize {
        self.v1.iter().filter(|&&b| b).count()
    }

    pub fn v2_len(&self) -> usize {
        self.v2.iter().filter(|&&b| b).count()
    }
}

pub fn local_predictors(g: &Graph, mask: &EdgeMask, r: usize) -> Result<PredictorSets> {
    let analysis = analyze(g, mask);
    local_predictors_with(g, mask, r, &analysis, DEFAULT_PREDICTOR_BUDGET)
}

/// As [`local_predictors`], reusing a measured [`Analysis`] of the same
/// sample and with an explicit visit budget.
pub fn local_predictors_with(
    g: &Graph,
    mask: &EdgeMask,
    r: usize,
    analysis: &Analysis,
    budget: usize,
) -> Result<PredictorSets> {
    if r == 0 {
        return Err(Error::param("predictor radius R must be at least 1"));
    }
    let open = mask.open_count();
    let worst = open.saturating_mul(2).saturating_mul(r);
    if worst > budget {
        return Err(Error::Budget(format!(
            "R = {r} over {open} open edges may visit {worst} vertices, budget is {budget}"
        )));
    }

    let (n, m) = (g.n(), g.m());
    let mut search = Truncated { stamp: vec![0; n], epoch: 0, queue: Vec::with_capacity(r) };
    let (mut e1, mut e2) = (vec![false; m], vec![false; m]);
    let (mut v1, mut v2) = (vec![false; n], vec![false; n]);
    for e in 0..m {
        if !mask.is_open(e) {
            continue;
        }
        let (x, y) = g.edge(e);
        if analysis.labels.sizes[analysis.labels.rank[x] as usize] < r {
            continue;
        }
        let a_xy = search.reaches(g, mask, y, e, r);
        let a_yx = search.reaches(g, mask, x, e, r);
        if a_xy {
            v1[x] = true;
        }
        if a_yx {
            v1[y] = true;
        }
        if a_xy || a_yx {
            e1[e] = true;
        }
        if a_xy && a_yx {
            e2[e] = true;
            v2[x] = true;
            v2[y] = true;
        }
    }

    let rank = &analysis.labels.rank;
    let in_core = &analysis.in_core;
    let mut audit = PredictorAudit { e1: 0, v1: 0, e2: 0, v2: 0 };
    for e in 0..m {
        let (x, y) = g.edge(e);
        let giant = mask.is_open(e) && rank[x] == 0;
        let core = giant && in_core[x] && in_core[y];
        audit.e1 += (e1[e] != giant) as usize;
        audit.e2 += (e2[e] != core) as usize;
    }
    for v in 0..n {
        let giant = rank[v] == 0;
        audit.v1 += (v1[v] != giant) as usize;
        audit.v2 += (v2[v] != (giant && in_core[v])) as usize;
    }
    Ok(PredictorSets { r, e1, v1, e2, v2, audit })
}

struct Truncated {
    stamp: Vec<u32>,
    epoch: u32,
    queue: Vec<usize>,
}

impl Truncated {
    /// Whether at least `r` vertices are reachable from `start` over open
    /// edges other than `skip`; stops as soon as `r` are seen.
    fn reaches(&mut self, g: &Graph, mask: &EdgeMask, start: usize, skip: usize, r: usize) -> bool {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        self.queue.clear();
        self.queue.push(start);
        self.stamp[start] = self.epoch;
        let mut head = 0;
        while head < self.queue.len() {
            if self.queue.len() >= r {
                return true;
            }
            let x = self.queue[head];
            head += 1;
            for (y, e) in g.incident(x) {
                if e != skip && self.stamp[y] != self.epoch && mask.is_open(e) {
                    self.stamp[y] = self.epoch;
                    self.queue.push(y);
                }
            }
        }
        self.queue.len() >= r
    }
}
