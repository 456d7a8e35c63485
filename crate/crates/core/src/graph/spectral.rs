//! Second Laplacian eigenvalue and Fiedler vector.

use nalgebra::{DMatrix, SymmetricEigen};

use super::metrics::is_connected;
use super::Graph;
use crate::rng::uniform;

/// Graphs up to this order use a dense eigendecomposition.
const DENSE_LIMIT: usize = 400;
const REL_TOL: f64 = 1e-6;
const MAX_STEPS: usize = 3_000;
const CHECK_EVERY: usize = 20;

#[derive(Debug, Clone)]
pub struct Fiedler {
    /// Second-smallest Laplacian eigenvalue.
    pub lambda2: f64,
    /// Unit eigenvector orthogonal to the constant vector.
    pub vector: Vec<f64>,
    pub converged: bool,
}

/// Spectral lower bound `lambda2 / 2` on the edge expansion; 0 for
/// disconnected graphs.
pub fn cheeger_lower_bound(g: &Graph) -> f64 {
    if g.n() < 2 || !is_connected(g) {
        return 0.0;
    }
    fiedler(g).lambda2.max(0.0) / 2.0
}

/// Fiedler pair of `g` (dense for small graphs, Lanczos otherwise).
pub fn fiedler(g: &Graph) -> Fiedler {
    if g.n() <= DENSE_LIMIT {
        fiedler_dense(g)
    } else {
        fiedler_lanczos(g)
    }
}

pub(crate) fn fiedler_dense(g: &Graph) -> Fiedler {
    let n = g.n();
    if n < 2 {
        return Fiedler { lambda2: 0.0, vector: vec![0.0; n], converged: true };
    }
    let mut lap = DMatrix::<f64>::zeros(n, n);
    for (u, v) in g.edges() {
        lap[(u, v)] -= 1.0;
        lap[(v, u)] -= 1.0;
        lap[(u, u)] += 1.0;
        lap[(v, v)] += 1.0;
    }
    let eig = SymmetricEigen::new(lap);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let idx = order[1];
    Fiedler {
        lambda2: eig.eigenvalues[idx],
        vector: eig.eigenvectors.column(idx).iter().copied().collect(),
        converged: true,
    }
}

fn laplacian_apply(g: &Graph, x: &[f64], out: &mut [f64]) {
    for v in 0..g.n() {
        let mut acc = g.degree(v) as f64 * x[v];
        for w in g.neighbors(v) {
            acc -= x[w];
        }
        out[v] = acc;
    }
}

fn project_out_constant(x: &mut [f64]) {
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    x.iter_mut().for_each(|v| *v -= mean);
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Lanczos on the Laplacian restricted to the complement of the constant
/// vector. No reorthogonalisation: the extreme Ritz value is unaffected by
/// the spurious copies that loss of orthogonality produces. The eigenvector
/// comes from a second pass replaying the same recurrence.
pub(crate) fn fiedler_lanczos(g: &Graph) -> Fiedler {
    let n = g.n();
    let start = || {
        let mut v: Vec<f64> = (0..n).map(|i| uniform(0x1a2c_20f5, i as u64) - 0.5).collect();
        project_out_constant(&mut v);
        let s = norm(&v);
        v.iter_mut().for_each(|x| *x /= s);
        v
    };

    let mut alphas = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let (mut theta, mut converged) = (f64::INFINITY, false);
    let mut ritz_vec = Vec::new();
    {
        let mut prev = vec![0.0; n];
        let mut cur = start();
        let mut w = vec![0.0; n];
        for step in 0..MAX_STEPS.min(n - 1) {
            laplacian_apply(g, &cur, &mut w);
            let a = dot(&w, &cur);
            let b_prev = betas.last().copied().unwrap_or(0.0);
            for i in 0..n {
                w[i] -= a * cur[i] + b_prev * prev[i];
            }
            project_out_constant(&mut w);
            let b = norm(&w);
            alphas.push(a);

            let last_step = step + 1 == MAX_STEPS.min(n - 1) || b <= 1e-12 * a.abs().max(1.0);
            if last_step || (step + 1) % CHECK_EVERY == 0 {
                let t = smallest_tridiagonal_eigenvalue(&alphas, &betas);
                let s = tridiagonal_eigenvector(&alphas, &betas, t);
                let residual = b * s.last().copied().unwrap_or(0.0).abs();
                theta = t;
                ritz_vec = s;
                if residual <= REL_TOL * t.abs() || last_step {
                    converged = residual <= REL_TOL * t.abs() || b <= 1e-12 * a.abs().max(1.0);
                    break;
                }
            }
            betas.push(b);
            for i in 0..n {
                prev[i] = cur[i];
                cur[i] = w[i] / b;
            }
        }
    }

    // Second pass: accumulate the Ritz vector.
    let mut vector = vec![0.0; n];
    {
        let mut prev = vec![0.0; n];
        let mut cur = start();
        let mut w = vec![0.0; n];
        for (k, &coef) in ritz_vec.iter().enumerate() {
            for i in 0..n {
                vector[i] += coef * cur[i];
            }
            if k + 1 == ritz_vec.len() {
                break;
            }
            laplacian_apply(g, &cur, &mut w);
            let b_prev = if k == 0 { 0.0 } else { betas[k - 1] };
            for i in 0..n {
                w[i] -= alphas[k] * cur[i] + b_prev * prev[i];
            }
            project_out_constant(&mut w);
            for i in 0..n {
                prev[i] = cur[i];
                cur[i] = w[i] / betas[k];
            }
        }
    }
    project_out_constant(&mut vector);
    let s = norm(&vector);
    if s > 0.0 {
        vector.iter_mut().for_each(|x| *x /= s);
    }
    Fiedler { lambda2: theta, vector, converged }
}

/// Number of eigenvalues of the tridiagonal matrix below `x` (Sturm count).
fn sturm_count(alphas: &[f64], betas: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..alphas.len() {
        let b2 = if i == 0 { 0.0 } else { betas[i - 1] * betas[i - 1] };
        q = alphas[i] - x - if i == 0 { 0.0 } else { b2 / q };
        if q == 0.0 {
            q = f64::EPSILON * (alphas[i].abs() + 1.0);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn smallest_tridiagonal_eigenvalue(alphas: &[f64], betas: &[f64]) -> f64 {
    let k = alphas.len();
    // Gershgorin bounds.
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..k {
        let r = if i > 0 { betas[i - 1].abs() } else { 0.0 } + if i + 1 < k { betas[i].abs() } else { 0.0 };
        lo = lo.min(alphas[i] - r);
        hi = hi.max(alphas[i] + r);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(alphas, betas, mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Unit eigenvector for eigenvalue estimate `theta` by inverse iteration.
fn tridiagonal_eigenvector(alphas: &[f64], betas: &[f64], theta: f64) -> Vec<f64> {
    let k = alphas.len();
    let shift = theta - 1e-10 * theta.abs().max(1e-12);
    let mut x = vec![1.0; k];
    for _ in 0..3 {
        x = solve_shifted_tridiagonal(alphas, betas, shift, &x);
        let s = norm(&x);
        if !s.is_finite() || s == 0.0 {
            break;
        }
        x.iter_mut().for_each(|v| *v /= s);
    }
    x
}

/// Solves `(T - shift I) x = rhs` by the Thomas algorithm.
fn solve_shifted_tridiagonal(alphas: &[f64], betas: &[f64], shift: f64, rhs: &[f64]) -> Vec<f64> {
    let k = alphas.len();
    let mut c = vec![0.0; k];
    let mut d = vec![0.0; k];
    let tiny = 1e-300;
    let mut denom = alphas[0] - shift;
    if denom.abs() < tiny {
        denom = tiny;
    }
    if k > 1 {
        c[0] = betas[0] / denom;
    }
    d[0] = rhs[0] / denom;
    for i in 1..k {
        let mut m = alphas[i] - shift - betas[i - 1] * c[i - 1];
        if m.abs() < tiny {
            m = tiny;
        }
        if i + 1 < k {
            c[i] = betas[i] / m;
        }
        d[i] = (rhs[i] - betas[i - 1] * d[i - 1]) / m;
    }
    for i in (0..k - 1).rev() {
        d[i] -= c[i] * d[i + 1];
    }
    d
}
