use std::collections::BTreeMap;

use serde::Serialize;

use super::{solve_q, PercolationParams};
use crate::error::{Error, Result};

/// Deepest shape accepted by [`tree_density`].
pub const MAX_TREE_DEPTH: usize = 4;

/// A finite rooted tree, root at index 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTreeShape {
    children: Vec<Vec<usize>>,
}

impl RootedTreeShape {
    /// Builds a shape from child lists; vertex 0 is the root.
    pub fn from_children(children: Vec<Vec<usize>>) -> Result<Self> {
        let n = children.len();
        if n == 0 {
            return Err(Error::param("tree shape has no vertices"));
        }
        let mut parent_seen = vec![false; n];
        for (u, kids) in children.iter().enumerate() {
            for &c in kids {
                if c >= n {
                    return Err(Error::param(format!("child {c} of {u} out of range")));
                }
                if c == 0 {
                    return Err(Error::param("the root cannot be a child"));
                }
                if std::mem::replace(&mut parent_seen[c], true) {
                    return Err(Error::param(format!("vertex {c} has two parents")));
                }
            }
        }
        if let Some(orphan) = (1..n).find(|&v| !parent_seen[v]) {
            return Err(Error::param(format!("vertex {orphan} has no parent")));
        }
        let shape = Self { children };
        // n-1 parent links with every non-root covered: acyclic iff all
        // vertices are reachable from the root.
        if shape.preorder().len() != n {
            return Err(Error::param("tree shape contains a cycle"));
        }
        Ok(shape)
    }

    /// Builds a shape from parent pointers; the root is the unique `None`.
    pub fn from_parents(parents: &[Option<usize>]) -> Result<Self> {
        let roots: Vec<usize> = (0..parents.len()).filter(|&v| parents[v].is_none()).collect();
        if roots.len() != 1 {
            return Err(Error::param(format!("expected one root, found {}", roots.len())));
        }
        // Relabel so the root is 0.
        let root = roots[0];
        let relabel = |v: usize| match v {
            v if v == root => 0,
            0 => root,
            v => v,
        };
        let mut children = vec![Vec::new(); parents.len()];
        for (v, par) in parents.iter().enumerate() {
            if let Some(u) = *par {
                if u >= parents.len() {
                    return Err(Error::param(format!("parent {u} out of range")));
                }
                children[relabel(u)].push(relabel(v));
            }
        }
        Self::from_children(children)
    }

    /// A root with `k` leaf children.
    pub fn star(k: usize) -> Self {
        Self { children: std::iter::once((1..=k).collect()).chain((0..k).map(|_| Vec::new())).collect() }
    }

    pub fn len(&self) -> usize {
        self.children.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    fn preorder(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.children.len());
        let mut stack = vec![0];
        let mut seen = vec![false; self.children.len()];
        while let Some(u) = stack.pop() {
            if std::mem::replace(&mut seen[u], true) {
                return order;
            }
            order.push(u);
            stack.extend(self.children[u].iter().rev());
        }
        order
    }

    fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.len()];
        for u in self.preorder() {
            for &c in &self.children[u] {
                depth[c] = depth[u] + 1;
            }
        }
        depth
    }

    /// Depth of the deepest vertex (the root has depth 0).
    pub fn depth(&self) -> usize {
        self.depths().into_iter().max().unwrap_or(0)
    }

    /// Number of vertices at maximal depth.
    pub fn boundary_leaves(&self) -> usize {
        let depth = self.depths();
        let k = depth.iter().copied().max().unwrap_or(0);
        depth.iter().filter(|&&x| x == k).count()
    }

    /// AHU canonical string of the subtree at `v`; two rooted trees are
    /// isomorphic iff their root codes are equal.
    pub fn canonical(&self, v: usize) -> String {
        let mut codes: Vec<String> = self.children[v].iter().map(|&c| self.canonical(c)).collect();
        codes.sort_unstable();
        let mut s = String::with_capacity(2 + codes.iter().map(String::len).sum::<usize>());
        s.push('(');
        for c in codes {
            s.push_str(&c);
        }
        s.push(')');
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TreeDensity {
    /// Probability that the root's cluster in the depth-`k` regular tree is
    /// isomorphic to the shape.
    pub alpha_t: f64,
    pub depth: usize,
    /// Shape vertices at depth exactly `k`.
    pub boundary_leaves: usize,
    /// `(1 - q^l) * alpha_t`: density of giant vertices whose `k`-ball is
    /// the shape.
    pub giant_density: f64,
}

/// Exact density of a rooted neighbourhood shape.
///
/// The template is the depth-`k` tree in which the root has `d` children and
/// every other internal vertex `d - 1`. The probability is computed bottom-up
/// over rooted-isomorphism classes: for a shape vertex whose children fall in
/// classes with multiplicities `m_1..m_t` (total `s`), with `c` template
/// children available,
/// `P = c! / ((c-s)! prod m_i!) (1-p)^(c-s) prod (p P_i)^(m_i)`.
pub fn tree_density(params: PercolationParams, shape: &RootedTreeShape) -> Result<TreeDensity> {
    let d = params.d();
    let k = shape.depth();
    if k == 0 {
        return Err(Error::param("tree shape must have depth at least 1"));
    }
    if k > MAX_TREE_DEPTH {
        return Err(Error::param(format!("tree depth {k} exceeds the cap {MAX_TREE_DEPTH}")));
    }
    if shape.children(0).len() > d {
        return Err(Error::param(format!("root has more than d = {d} children")));
    }
    if let Some(v) = (1..shape.len()).find(|&v| shape.children(v).len() > d - 1) {
        return Err(Error::param(format!("vertex {v} has more than d - 1 = {} children", d - 1)));
    }

    let alpha_t = class_probability(shape, 0, d, k, params.p());
    let boundary = shape.boundary_leaves();
    let q = solve_q(params);
    Ok(TreeDensity {
        alpha_t,
        depth: k,
        boundary_leaves: boundary,
        giant_density: (1.0 - q.powi(boundary as i32)) * alpha_t,
    })
}

fn class_probability(shape: &RootedTreeShape, v: usize, d: usize, remaining: usize, p: f64) -> f64 {
    let kids = shape.children(v);
    if remaining == 0 {
        return if kids.is_empty() { 1.0 } else { 0.0 };
    }
    let slots = if v == 0 { d } else { d - 1 };
    if kids.len() > slots {
        return 0.0;
    }
    let mut classes: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for &c in kids {
        classes.entry(shape.canonical(c)).or_insert((c, 0)).1 += 1;
    }
    let used = kids.len();
    let mut prob = falling_factorial(slots, used) * (1.0 - p).powi((slots - used) as i32);
    for (rep, mult) in classes.into_values() {
        let child = p * class_probability(shape, rep, d, remaining - 1, p);
        prob *= child.powi(mult as i32) / factorial(mult);
    }
    prob
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |a, i| a * i as f64)
}

fn falling_factorial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |a, i| a * (n - i) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::degree_forecast;

    fn params(d: usize, p: f64) -> PercolationParams {
        PercolationParams::new(d, p).unwrap()
    }

    #[test]
    fn single_child_matches_alpha_one() {
        let pr = params(3, 0.75);
        let t = tree_density(pr, &RootedTreeShape::star(1)).unwrap();
        assert!((t.alpha_t - 0.140625).abs() < 1e-15);
        assert!((t.giant_density - 0.125).abs() < 1e-12);
        assert_eq!(t.boundary_leaves, 1);
    }

    #[test]
    fn stars_reproduce_degree_forecast() {
        for (d, p) in [(3, 0.75), (4, 0.5), (5, 0.9)] {
            let pr = params(d, p);
            let f = degree_forecast(pr);
            for k in 1..=d {
                let t = tree_density(pr, &RootedTreeShape::star(k)).unwrap();
                assert!((t.giant_density - f.alpha[k]).abs() < 1e-12, "d={d} k={k}");
            }
        }
        let t = tree_density(params(3, 0.75), &RootedTreeShape::star(3)).unwrap();
        assert!((t.alpha_t - 0.421875).abs() < 1e-15);
    }

    #[test]
    fn canonical_form_ignores_child_order() {
        let a = RootedTreeShape::from_children(vec![vec![1, 2], vec![3], vec![], vec![]]).unwrap();
        let b = RootedTreeShape::from_children(vec![vec![1, 2], vec![], vec![3], vec![]]).unwrap();
        assert_eq!(a.canonical(0), b.canonical(0));
        assert_eq!(a.canonical(0), "((())())");
        assert_eq!(a.depth(), 2);
        assert_eq!(a.boundary_leaves(), 1);
    }

    #[test]
    fn from_parents_relabels_root() {
        let s = RootedTreeShape::from_parents(&[Some(1), None, Some(1)]).unwrap();
        assert_eq!(s.children(0).len(), 2);
        assert_eq!(s.canonical(0), "(()())");
    }

    #[test]
    fn rejects_malformed_shapes() {
        assert!(RootedTreeShape::from_children(vec![]).is_err());
        assert!(RootedTreeShape::from_children(vec![vec![1], vec![0]]).is_err());
        assert!(RootedTreeShape::from_children(vec![vec![1, 1], vec![]]).is_err());
        assert!(RootedTreeShape::from_children(vec![vec![], vec![]]).is_err());
        assert!(RootedTreeShape::from_children(vec![vec![1], vec![2], vec![1]]).is_err());
        assert!(RootedTreeShape::from_parents(&[None, None]).is_err());
    }

    #[test]
    fn enforces_degree_and_depth_bounds() {
        let pr = params(3, 0.75);
        assert!(tree_density(pr, &RootedTreeShape::star(4)).is_err());
        // Non-root vertex with three children when d - 1 = 2.
        let wide = RootedTreeShape::from_children(vec![vec![1], vec![2, 3, 4], vec![], vec![], vec![]]).unwrap();
        assert!(tree_density(pr, &wide).is_err());
        // Path of depth 5.
        let path: Vec<Vec<usize>> = (0..6).map(|i| if i < 5 { vec![i + 1] } else { vec![] }).collect();
        let path = RootedTreeShape::from_children(path).unwrap();
        assert!(tree_density(pr, &path).is_err());
        assert!(tree_density(pr, &RootedTreeShape::star(0)).is_err());
    }
}
