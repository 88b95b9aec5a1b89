//! Exhaustive reference solver for small transportation problems.
//!
//! Every vertex of the transportation polytope is the basic solution of some
//! spanning tree of `K_{m,n}`. This module enumerates all spanning trees,
//! solves each tree's flow by leaf elimination, discards trees whose flow is
//! negative somewhere and returns the cheapest remaining one. It shares no
//! code with the network simplex.

use ndarray::Array2;

use crate::error::{Error, Result};

/// Enumeration is limited to `m + n ≤ ORACLE_MAX_NODES`.
pub const ORACLE_MAX_NODES: usize = 9;

const NEGATIVE_FLOW_TOL: f64 = 1e-12;

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }
}

struct Enumeration<'a> {
    m: usize,
    n: usize,
    cost: &'a Array2<f64>,
    wmu: &'a [f64],
    wnu: &'a [f64],
    chosen: Vec<(usize, usize)>,
    best: f64,
    trees: usize,
}

impl Enumeration<'_> {
    fn visit(&mut self, next_arc: usize, sets: &DisjointSets) {
        let needed = self.m + self.n - 1;
        if self.chosen.len() == needed {
            self.trees += 1;
            if let Some(c) = self.tree_cost() {
                self.best = self.best.min(c);
            }
            return;
        }
        let total = self.m * self.n;
        if total - next_arc < needed - self.chosen.len() {
            return;
        }
        for arc in next_arc..total {
            let (i, j) = (arc / self.n, arc % self.n);
            let (a, b) = (sets.find(i), sets.find(self.m + j));
            if a == b {
                continue;
            }
            let mut merged = DisjointSets {
                parent: sets.parent.clone(),
            };
            merged.parent[a] = b;
            self.chosen.push((i, j));
            self.visit(arc + 1, &merged);
            self.chosen.pop();
        }
    }

    /// Flow of the current tree by repeatedly peeling leaves; `None` if some
    /// arc would carry negative mass.
    fn tree_cost(&self) -> Option<f64> {
        let nodes = self.m + self.n;
        let mut balance: Vec<f64> = self.wmu.iter().copied().chain(self.wnu.iter().map(|w| -w)).collect();
        let mut degree = vec![0usize; nodes];
        for &(i, j) in &self.chosen {
            degree[i] += 1;
            degree[self.m + j] += 1;
        }
        let mut done = vec![false; self.chosen.len()];
        let mut total = 0.0;
        for _ in 0..self.chosen.len() {
            let (k, leaf_is_row) = self.chosen.iter().enumerate().find_map(|(k, &(i, j))| {
                if done[k] {
                    None
                } else if degree[i] == 1 {
                    Some((k, true))
                } else if degree[self.m + j] == 1 {
                    Some((k, false))
                } else {
                    None
                }
            })?;
            let (i, j) = self.chosen[k];
            let flow = if leaf_is_row { balance[i] } else { -balance[self.m + j] };
            if flow < -NEGATIVE_FLOW_TOL {
                return None;
            }
            balance[i] -= flow;
            balance[self.m + j] += flow;
            degree[i] -= 1;
            degree[self.m + j] -= 1;
            done[k] = true;
            total += self.cost[[i, j]] * flow.max(0.0);
        }
        Some(total)
    }
}

/// Optimal transport cost by spanning-tree enumeration.
pub fn oracle_transport(cost: &Array2<f64>, wmu: &[f64], wnu: &[f64]) -> Result<f64> {
    let (m, n) = (wmu.len(), wnu.len());
    if m + n > ORACLE_MAX_NODES {
        return Err(Error::TooLarge {
            rows: m,
            cols: n,
            limit: ORACLE_MAX_NODES,
        });
    }
    super::simplex::validate(cost, wmu, wnu)?;
    let mut e = Enumeration {
        m,
        n,
        cost,
        wmu,
        wnu,
        chosen: Vec::with_capacity(m + n - 1),
        best: f64::INFINITY,
        trees: 0,
    };
    e.visit(0, &DisjointSets::new(m + n));
    debug_assert_eq!(e.trees, m.pow(n as u32 - 1) * n.pow(m as u32 - 1));
    Ok(e.best)
}
