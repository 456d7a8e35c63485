//! Shared fixtures for the criterion benches.

use giantlab::graph::random_regular;
use giantlab::{sample, EdgeMask, Graph};

pub const FIXTURE_SEED: u64 = 17;

/// Random cubic graph with a `p = 0.75` percolation mask.
pub fn cubic_sample(n: usize) -> (Graph, EdgeMask) {
    let g = random_regular(n, 3, FIXTURE_SEED).expect("cubic fixture");
    let mask = sample(&g, 0.75, FIXTURE_SEED).expect("mask");
    (g, mask)
}
