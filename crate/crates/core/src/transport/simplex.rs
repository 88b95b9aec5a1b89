//! Network simplex on the complete bipartite supply/demand graph.
//!
//! Bases are spanning trees with `m + n − 1` arcs, zero-flow basic arcs
//! allowed. The initial tree comes from the northwest-corner rule. Entering
//! arcs are chosen by most-negative reduced cost; after `10·(m+n)`
//! consecutive degenerate pivots the solver switches to Bland's rule
//! (smallest arc index, for both entering and leaving arcs) until a
//! non-degenerate pivot occurs.

use std::collections::VecDeque;

use ndarray::Array2;

use super::TransportResult;
use crate::error::{Error, Result};
use crate::measure::Coupling;

/// Reduced costs above `−PIVOT_TOL·scale` are treated as nonnegative, and
/// step lengths at most `PIVOT_TOL` count as degenerate.
pub const PIVOT_TOL: f64 = 1e-12;

/// Total source and target mass may differ by at most this much.
pub const BALANCE_TOL: f64 = 1e-9;

struct Tree {
    m: usize,
    n: usize,
    /// Basic arcs as `(row, col)`.
    arcs: Vec<(usize, usize)>,
    in_basis: Vec<bool>,
    flow: Array2<f64>,
}

impl Tree {
    fn northwest_corner(wmu: &[f64], wnu: &[f64]) -> Tree {
        let (m, n) = (wmu.len(), wnu.len());
        let mut supply = wmu.to_vec();
        let mut demand = wnu.to_vec();
        let mut flow = Array2::zeros((m, n));
        let mut arcs = Vec::with_capacity(m + n - 1);
        let mut in_basis = vec![false; m * n];
        let (mut i, mut j) = (0, 0);
        while i < m && j < n {
            let x = supply[i].min(demand[j]).max(0.0);
            flow[[i, j]] = x;
            supply[i] -= x;
            demand[j] -= x;
            arcs.push((i, j));
            in_basis[i * n + j] = true;
            // Advance exactly one index per step so the staircase has
            // m + n − 1 arcs even when both marginals are exhausted together.
            if i + 1 == m {
                j += 1;
            } else if j + 1 == n || supply[i] <= demand[j] {
                i += 1;
            } else {
                j += 1;
            }
        }
        debug_assert_eq!(arcs.len(), m + n - 1);
        Tree {
            m,
            n,
            arcs,
            in_basis,
            flow,
        }
    }

    /// Node ids: rows `0..m`, columns `m..m+n`.
    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.m + self.n];
        for (k, &(i, j)) in self.arcs.iter().enumerate() {
            adj[i].push((self.m + j, k));
            adj[self.m + j].push((i, k));
        }
        adj
    }

    /// Potentials with `u[0] = 0` and `u_i + v_j = c_ij` on every basic arc.
    fn potentials(&self, cost: &Array2<f64>, adj: &[Vec<(usize, usize)>]) -> (Vec<f64>, Vec<f64>) {
        let mut pot = vec![f64::NAN; self.m + self.n];
        pot[0] = 0.0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(node) = queue.pop_front() {
            for &(next, k) in &adj[node] {
                if pot[next].is_nan() {
                    let (i, j) = self.arcs[k];
                    pot[next] = cost[[i, j]] - pot[node];
                    queue.push_back(next);
                }
            }
        }
        let v = pot.split_off(self.m);
        (pot, v)
    }

    /// Basic arcs on the tree path from row `i` to column `j`, in order.
    fn path(&self, adj: &[Vec<(usize, usize)>], i: usize, j: usize) -> Vec<usize> {
        let target = self.m + j;
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.m + self.n];
        let mut seen = vec![false; self.m + self.n];
        seen[i] = true;
        let mut queue = VecDeque::from([i]);
        while let Some(node) = queue.pop_front() {
            if node == target {
                break;
            }
            for &(next, k) in &adj[node] {
                if !seen[next] {
                    seen[next] = true;
                    parent[next] = Some((node, k));
                    queue.push_back(next);
                }
            }
        }
        let mut arcs = Vec::new();
        let mut node = target;
        while let Some((prev, k)) = parent[node] {
            arcs.push(k);
            node = prev;
        }
        arcs.reverse();
        arcs
    }
}

pub(super) fn solve(cost: &Array2<f64>, wmu: &[f64], wnu: &[f64]) -> Result<TransportResult> {
    validate(cost, wmu, wnu)?;
    let (m, n) = (wmu.len(), wnu.len());
    let scale = cost.iter().fold(1.0_f64, |acc, c| acc.max(c.abs()));
    let price_tol = PIVOT_TOL * scale;
    let bland_after = 10 * (m + n);
    let max_pivots = 1000 * m * n;

    let mut tree = Tree::northwest_corner(wmu, wnu);
    let mut degenerate_streak = 0usize;
    let mut pivots = 0usize;

    let (u, v) = loop {
        let adj = tree.adjacency();
        let (u, v) = tree.potentials(cost, &adj);

        let bland = degenerate_streak >= bland_after;
        let mut entering: Option<(usize, usize, f64)> = None;
        'pricing: for i in 0..m {
            for j in 0..n {
                if tree.in_basis[i * n + j] {
                    continue;
                }
                let reduced = cost[[i, j]] - u[i] - v[j];
                if reduced < -price_tol && entering.is_none_or(|(_, _, best)| reduced < best) {
                    entering = Some((i, j, reduced));
                    if bland {
                        break 'pricing;
                    }
                }
            }
        }
        let Some((ei, ej, _)) = entering else {
            break (u, v);
        };

        pivots += 1;
        if pivots > max_pivots {
            return Err(Error::IterationLimit(max_pivots));
        }

        // Cycle signs along the path from row ei: −, +, −, …, −.
        let path = tree.path(&adj, ei, ej);
        let mut leaving: Option<(usize, f64)> = None;
        for &k in path.iter().step_by(2) {
            let (i, j) = tree.arcs[k];
            let x = tree.flow[[i, j]];
            let better = match leaving {
                None => true,
                Some((lk, lx)) => {
                    let (li, lj) = tree.arcs[lk];
                    x < lx || (x == lx && i * n + j < li * n + lj)
                }
            };
            if better {
                leaving = Some((k, x));
            }
        }
        let (leave_k, theta) = leaving.expect("cycle has a decreasing arc");
        let theta = theta.max(0.0);

        for (pos, &k) in path.iter().enumerate() {
            let (i, j) = tree.arcs[k];
            let x = &mut tree.flow[[i, j]];
            if pos % 2 == 0 {
                *x = (*x - theta).max(0.0);
            } else {
                *x += theta;
            }
        }
        let (li, lj) = tree.arcs[leave_k];
        tree.flow[[li, lj]] = 0.0;
        tree.flow[[ei, ej]] = theta;
        tree.in_basis[li * n + lj] = false;
        tree.in_basis[ei * n + ej] = true;
        tree.arcs[leave_k] = (ei, ej);

        if theta <= PIVOT_TOL {
            degenerate_streak += 1;
        } else {
            degenerate_streak = 0;
        }
    };

    let total: f64 = tree.flow.iter().zip(cost.iter()).map(|(x, c)| x * c).sum();
    let plan = Coupling::new(tree.flow, wmu.to_vec(), wnu.to_vec())?;
    Ok(TransportResult {
        plan,
        cost: total,
        dual_u: u,
        dual_v: v,
    })
}

pub(super) fn validate(cost: &Array2<f64>, wmu: &[f64], wnu: &[f64]) -> Result<()> {
    if wmu.is_empty() || wnu.is_empty() || cost.dim() != (wmu.len(), wnu.len()) {
        return Err(Error::DimensionMismatch {
            expected: format!("non-empty {}x{} cost matrix", wmu.len(), wnu.len()),
            actual: format!("{}x{}", cost.nrows(), cost.ncols()),
        });
    }
    for (index, &weight) in wmu.iter().chain(wnu).enumerate() {
        if !weight.is_finite() || weight < 0.0 {
            return Err(Error::NegativeWeight { index, weight });
        }
    }
    if let Some(c) = cost.iter().find(|c| !c.is_finite() || **c < 0.0) {
        return Err(Error::InvalidArgument(format!(
            "cost entry {c} must be finite and >= 0"
        )));
    }
    let (source_mass, target_mass) = (wmu.iter().sum::<f64>(), wnu.iter().sum::<f64>());
    if (source_mass - target_mass).abs() > BALANCE_TOL {
        return Err(Error::InfeasibleWeights {
            source_mass,
            target_mass,
        });
    }
    Ok(())
}
