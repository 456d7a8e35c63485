//! Closed-form forecasts for supercritical bond percolation on high-girth
//! `d`-regular graphs.
//!
//! Everything here is a function of the degree `d` and the retention
//! probability `p`, through the extinction probability `q` of a
//! `Bin(d-1, p)` Galton-Watson tree.

mod tree;

use serde::Serialize;

pub use tree::{tree_density, RootedTreeShape, TreeDensity, MAX_TREE_DEPTH};

use crate::error::{Error, Result};

/// Relative step at which the fixed-point iteration stops.
const ITERATION_TOL: f64 = 1e-14;
const MAX_ITERATIONS: usize = 100_000;
/// Upper end of the bisection bracket for the extinction probability.
const BISECTION_HI: f64 = 1.0 - 1e-9;

/// Degree and edge-retention probability of a percolation experiment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PercolationParams {
    d: usize,
    p: f64,
}

impl PercolationParams {
    pub fn new(d: usize, p: f64) -> Result<Self> {
        if d < 3 {
            return Err(Error::param(format!("degree d must be at least 3, got {d}")));
        }
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::param(format!("p must lie in (0, 1], got {p}")));
        }
        Ok(Self { d, p })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Mean offspring `p(d-1)` of the exploration branching process.
    pub fn lambda(&self) -> f64 {
        self.p * (self.d - 1) as f64
    }

    /// `p > 1/(d-1)`.
    pub fn is_supercritical(&self) -> bool {
        self.lambda() > 1.0
    }

    /// Probability that a given neighbour does not lead to an infinite
    /// cluster: `1 - p + p q`.
    fn edge_dies(&self, q: f64) -> f64 {
        1.0 - self.p + self.p * q
    }
}

/// Extinction probability of the `Bin(d-1, p)` Galton-Watson tree: the
/// smallest root in `[0, 1]` of `q = (1 - p + p q)^(d-1)`.
pub fn solve_q(params: PercolationParams) -> f64 {
    if !params.is_supercritical() {
        return 1.0;
    }
    let exp = (params.d - 1) as i32;
    let g = |q: f64| params.edge_dies(q).powi(exp);

    // Iterating from 0 increases monotonically to the smallest fixed point.
    let mut q = 0.0;
    for _ in 0..MAX_ITERATIONS {
        let next = g(q);
        if (next - q).abs() <= ITERATION_TOL * next {
            return next;
        }
        q = next;
    }

    // Near-critical slowdown. g(q) - q is convex with g(0) - 0 > 0 and a
    // single sign change in [0, 1).
    let (mut lo, mut hi) = (q.min(BISECTION_HI), BISECTION_HI);
    if g(hi) - hi > 0.0 {
        return hi;
    }
    while hi - lo > f64::EPSILON * hi.max(1e-300) * 4.0 {
        let mid = 0.5 * (lo + hi);
        if g(mid) - mid > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if mid == lo && mid == hi {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Vertex and edge densities of the giant component and of its 2-core.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GiantForecast {
    pub q: f64,
    pub theta1: f64,
    pub eta1: f64,
    pub theta2: f64,
    pub eta2: f64,
    pub excess1: f64,
    pub excess2: f64,
    pub supercritical: bool,
}

pub fn giant_forecast(params: PercolationParams) -> GiantForecast {
    if !params.is_supercritical() {
        return GiantForecast {
            q: 1.0,
            theta1: 0.0,
            eta1: 0.0,
            theta2: 0.0,
            eta2: 0.0,
            excess1: 0.0,
            excess2: 0.0,
            supercritical: false,
        };
    }
    let q = solve_q(params);
    let p = params.p;
    let d = params.d as f64;
    let theta1 = 1.0 - q * (1.0 - p) - p * q * q;
    let eta1 = 0.5 * p * d * (1.0 - q.powi(2));
    let theta2 = 1.0 - q - (d - 1.0) * p * q * (1.0 - q);
    let eta2 = 0.5 * p * d * (1.0 - q) * (1.0 - q);
    GiantForecast { q, theta1, eta1, theta2, eta2, excess1: eta1 - theta1, excess2: eta2 - theta2, supercritical: true }
}

/// Densities of degree-`k` vertices in the giant (`alpha`, `k = 1..=d`) and
/// in its 2-core (`beta`, `k = 2..=d`).
///
/// Both vectors are indexed by degree: `alpha[k]` and `beta[k]`, with unused
/// leading slots held at zero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeForecast {
    pub d: usize,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
}

impl DegreeForecast {
    /// `alpha_1..alpha_d`.
    pub fn alpha_k(&self) -> &[f64] {
        &self.alpha[1..]
    }

    /// `beta_2..beta_d`.
    pub fn beta_k(&self) -> &[f64] {
        &self.beta[2..]
    }
}

pub fn degree_forecast(params: PercolationParams) -> DegreeForecast {
    let d = params.d;
    let mut alpha = vec![0.0; d + 1];
    let mut beta = vec![0.0; d + 1];
    if params.is_supercritical() {
        let q = solve_q(params);
        let p = params.p;
        let s = params.edge_dies(q);
        let survive = p * (1.0 - q);
        for k in 1..=d {
            let c = binomial(d, k);
            let ki = k as i32;
            alpha[k] = c * p.powi(ki) * (1.0 - p).powi((d - k) as i32) * (1.0 - q.powi(ki));
            if k >= 2 {
                beta[k] = c * survive.powi(ki) * s.powi((d - k) as i32);
            }
        }
    }
    DegreeForecast { d, alpha, beta }
}

/// `C(n, k)` as a double.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Cubic truncations of the forecast as `d -> infinity` with
/// `p = (1 + xi)/(d - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LargeDegreeSeries {
    pub xi: f64,
    pub q: f64,
    pub theta1: f64,
    pub eta1: f64,
    pub theta2: f64,
    pub eta2: f64,
    pub excess: f64,
    /// Set when `xi > 0.3`, where the neglected quartic terms are no longer
    /// small.
    pub outside_validity: bool,
}

pub fn large_d_series(xi: f64) -> Result<LargeDegreeSeries> {
    if xi.is_nan() || xi <= 0.0 || xi.is_infinite() {
        return Err(Error::param(format!("xi must be positive, got {xi}")));
    }
    let x2 = xi * xi;
    let x3 = x2 * xi;
    Ok(LargeDegreeSeries {
        xi,
        q: 1.0 - 2.0 * xi + 8.0 / 3.0 * x2 - 28.0 / 9.0 * x3,
        theta1: 2.0 * xi - 8.0 / 3.0 * x2 + 28.0 / 9.0 * x3,
        eta1: 2.0 * xi - 8.0 / 3.0 * x2 + 34.0 / 9.0 * x3,
        theta2: 2.0 * x2 - 4.0 * x3,
        eta2: 2.0 * x2 - 10.0 / 3.0 * x3,
        excess: 2.0 / 3.0 * x3,
        outside_validity: xi > 0.3,
    })
}

/// Per-vertex density of `ell`-edge paths contained in the giant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PathDensity {
    pub ell: usize,
    pub density: f64,
    /// The parameters were not supercritical; `density` is 0.
    pub subcritical: bool,
}

pub fn path_density(params: PercolationParams, ell: usize) -> Result<PathDensity> {
    if ell == 0 {
        return Err(Error::param("path length must be at least 1 edge"));
    }
    if !params.is_supercritical() {
        return Ok(PathDensity { ell, density: 0.0, subcritical: true });
    }
    let q = solve_q(params);
    let p = params.p;
    let d = params.d as f64;
    let s = params.edge_dies(q);
    let e = ell as i32;
    // Same operation order as eta1 so that ell = 1 reproduces it exactly.
    let density = 0.5 * p.powi(e) * d * (d - 1.0).powi(e - 1) * (1.0 - q.powi(e + 1) * s.powi(1 - e));
    Ok(PathDensity { ell, density, subcritical: false })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(d: usize, p: f64) -> PercolationParams {
        PercolationParams::new(d, p).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn rejects_bad_params() {
        assert!(PercolationParams::new(2, 0.5).is_err());
        assert!(PercolationParams::new(3, 0.0).is_err());
        assert!(PercolationParams::new(3, 1.5).is_err());
        assert!(PercolationParams::new(3, f64::NAN).is_err());
        assert_eq!(params(4, 0.5).lambda(), 1.5);
    }

    #[test]
    fn q_matches_cubic_closed_form() {
        // d = 3: q = ((1-p)/p)^2.
        assert!(close(solve_q(params(3, 0.75)), 1.0 / 9.0, 1e-12));
        assert!(close(solve_q(params(3, 0.6)), 4.0 / 9.0, 1e-12));
        assert_eq!(solve_q(params(3, 0.5)), 1.0);
        assert_eq!(solve_q(params(3, 0.3)), 1.0);
        assert_eq!(solve_q(params(5, 1.0)), 0.0);
    }

    #[test]
    fn q_near_critical_uses_bisection_and_is_accurate() {
        let pr = params(3, 0.5 + 1e-7);
        let q = solve_q(pr);
        let residual = q - (1.0 - pr.p() + pr.p() * q).powi(2);
        assert!(q < 1.0);
        assert!(residual.abs() <= 1e-12, "residual {residual}");
        let exact = ((1.0 - pr.p()) / pr.p()).powi(2);
        assert!(close(q, exact, 1e-6));
    }

    #[test]
    fn giant_forecast_examples() {
        let f = giant_forecast(params(3, 0.75));
        assert!(close(f.theta1, 26.0 / 27.0, 1e-12));
        assert!(close(f.eta1, 10.0 / 9.0, 1e-12));
        assert!(close(f.theta2, 20.0 / 27.0, 1e-12));
        assert!(close(f.eta2, 8.0 / 9.0, 1e-12));
        assert!(close(f.excess1, 4.0 / 27.0, 1e-12));

        let f = giant_forecast(params(3, 0.6));
        assert!(close(f.theta1, 19.0 / 27.0, 1e-12));
        assert!(close(f.eta1, 13.0 / 18.0, 1e-12));
        assert!(close(f.theta2, 7.0 / 27.0, 1e-12));
        assert!(close(f.eta2, 5.0 / 18.0, 1e-12));
        assert!(close(f.excess2, 1.0 / 54.0, 1e-12));
    }

    #[test]
    fn subcritical_forecast_is_degenerate() {
        let f = giant_forecast(params(4, 0.2));
        assert!(!f.supercritical);
        assert_eq!(f.q, 1.0);
        assert_eq!([f.theta1, f.eta1, f.theta2, f.eta2], [0.0; 4]);
        let df = degree_forecast(params(4, 0.2));
        assert!(df.alpha.iter().chain(&df.beta).all(|&x| x == 0.0));
    }

    #[test]
    fn degree_forecast_examples() {
        let f = degree_forecast(params(3, 0.75));
        assert!(close(f.alpha[1], 0.125, 1e-12));
        assert!(close(f.alpha[2], 5.0 / 12.0, 1e-12));
        assert!(close(f.alpha[3], 0.421875 * (1.0 - 1.0 / 729.0), 1e-12));
        assert!(close(f.beta[2], 4.0 / 9.0, 1e-12));
        assert!(close(f.beta[3], 8.0 / 27.0, 1e-12));
        assert_eq!(f.alpha_k().len(), 3);
        assert_eq!(f.beta_k().len(), 2);
    }

    #[test]
    fn full_retention_puts_everything_at_degree_d() {
        for d in 3..=8 {
            let f = degree_forecast(params(d, 1.0));
            for k in 1..d {
                assert_eq!(f.alpha[k], 0.0);
                assert_eq!(f.beta[k], 0.0);
            }
            assert_eq!(f.alpha[d], 1.0);
            assert_eq!(f.beta[d], 1.0);
        }
    }

    #[test]
    fn beta_binomial_form_equals_ratio_form() {
        for d in 3..=10 {
            for step in 1..100 {
                let p = step as f64 / 100.0;
                let pr = params(d, p);
                if !pr.is_supercritical() {
                    continue;
                }
                let q = solve_q(pr);
                let f = degree_forecast(pr);
                for k in 2..=d {
                    let ratio = binomial(d, k) * p.powi(k as i32) * (1.0 - q).powi(k as i32) * q
                        / (1.0 - p + p * q).powi(k as i32 - 1);
                    assert!(close(f.beta[k], ratio, 1e-12), "d={d} p={p} k={k}");
                }
            }
        }
    }

    #[test]
    fn binomial_coefficients() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(10, 0), 1.0);
        assert_eq!(binomial(10, 10), 1.0);
        assert_eq!(binomial(3, 4), 0.0);
    }

    #[test]
    fn series_values() {
        let s = large_d_series(0.1).unwrap();
        assert!(close(s.theta1, 0.2 - 0.08 / 3.0 + 28.0 / 9000.0, 1e-15));
        assert!(close(s.theta1, 0.1764444, 1e-7));
        assert!(close(s.excess, s.eta1 - s.theta1, 1e-15));
        assert!(close(s.excess, s.eta2 - s.theta2, 1e-15));
        assert!(!s.outside_validity);
        assert!(large_d_series(0.5).unwrap().outside_validity);
        assert!(large_d_series(0.0).is_err());
        assert!(large_d_series(-1.0).is_err());

        let tiny = large_d_series(1e-9).unwrap();
        assert!(close(tiny.q, 1.0, 1e-8));
        assert!(tiny.theta1 < 1e-8 && tiny.eta2 < 1e-8);
    }

    #[test]
    fn series_tracks_large_degree_forecast() {
        let d = 10_000;
        let xi = 0.05;
        let f = giant_forecast(params(d, (1.0 + xi) / (d - 1) as f64));
        let s = large_d_series(xi).unwrap();
        let bound = xi.powi(4) + 1.0 / d as f64;
        assert!((f.theta1 - s.theta1).abs() <= bound);
        assert!((f.q - s.q).abs() <= bound);
        assert!((f.excess1 - s.excess).abs() <= bound);
    }

    #[test]
    fn path_density_examples() {
        let pr = params(3, 0.75);
        let one = path_density(pr, 1).unwrap();
        assert_eq!(one.density, giant_forecast(pr).eta1);
        let two = path_density(pr, 2).unwrap();
        assert!(close(two.density, 1.6875 * (726.0 / 729.0), 1e-12));
        assert!(close(two.density, 1.680555, 1e-6));
        assert!(path_density(pr, 0).is_err());
        let sub = path_density(params(3, 0.4), 2).unwrap();
        assert!(sub.subcritical && sub.density == 0.0);
    }
}
