//! Exact discrete optimal transport and Wasserstein distances.

mod oracle;
mod simplex;

use ndarray::Array2;
use serde::Serialize;

pub use oracle::{oracle_transport, ORACLE_MAX_NODES};
pub use simplex::{BALANCE_TOL, PIVOT_TOL};

use crate::error::{Error, Result};
use crate::measure::{Coupling, FinitePointMeasure};
use crate::space::SpaceDescriptor;

/// Tolerance used by [`TransportResult::certificate`] checks.
pub const CERTIFICATE_TOL: f64 = 1e-9;

/// Plan entries above this count as support for complementary slackness.
pub const SUPPORT_TOL: f64 = 1e-12;

/// An optimal plan together with dual potentials certifying optimality.
#[derive(Debug, Clone, PartialEq)]
pub struct TransportResult {
    pub plan: Coupling,
    /// `Σ c(i,j)·π(i,j)` at the optimum.
    pub cost: f64,
    pub dual_u: Vec<f64>,
    pub dual_v: Vec<f64>,
}

/// Worst violations of the three optimality conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DualCertificate {
    /// `max(0, max_{i,j} u_i + v_j − c_ij)`.
    pub feasibility: f64,
    /// `max |u_i + v_j − c_ij|` over plan entries above [`SUPPORT_TOL`].
    pub slackness: f64,
    /// `|Σ u_i a_i + Σ v_j b_j − cost|`.
    pub duality_gap: f64,
}

impl DualCertificate {
    pub fn worst(&self) -> f64 {
        self.feasibility.max(self.slackness).max(self.duality_gap)
    }

    pub fn holds(&self, tol: f64) -> bool {
        self.worst() <= tol
    }
}

impl TransportResult {
    pub fn certificate(&self, cost: &Array2<f64>) -> DualCertificate {
        let mass = self.plan.mass();
        let mut feasibility: f64 = 0.0;
        let mut slackness: f64 = 0.0;
        for ((i, j), &c) in cost.indexed_iter() {
            let gap = self.dual_u[i] + self.dual_v[j] - c;
            feasibility = feasibility.max(gap);
            if mass[[i, j]] > SUPPORT_TOL {
                slackness = slackness.max(gap.abs());
            }
        }
        let dual_value: f64 = self
            .dual_u
            .iter()
            .zip(self.plan.source_weights())
            .chain(self.dual_v.iter().zip(self.plan.target_weights()))
            .map(|(p, w)| p * w)
            .sum();
        DualCertificate {
            feasibility,
            slackness,
            duality_gap: (dual_value - self.cost).abs(),
        }
    }
}

/// `d^p` computed as `exp(p·ln d)`, with `0^p = 0`.
pub fn pow_p(d: f64, p: f64) -> f64 {
    if d == 0.0 {
        0.0
    } else {
        (p * d.ln()).exp()
    }
}

pub(crate) fn check_p(p: f64) -> Result<()> {
    if p.is_finite() && p >= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidP(p))
    }
}

pub(crate) fn check_same_space(space: &SpaceDescriptor, m: &FinitePointMeasure) -> Result<()> {
    if m.space() == space {
        Ok(())
    } else {
        Err(Error::SpaceMismatch {
            left: space.to_string(),
            right: m.space().to_string(),
        })
    }
}

/// `cost[i][j] = d(x_i, y_j)^p`.
pub fn cost_matrix(
    space: &SpaceDescriptor,
    mu: &FinitePointMeasure,
    nu: &FinitePointMeasure,
    p: f64,
) -> Result<Array2<f64>> {
    check_p(p)?;
    check_same_space(space, mu)?;
    check_same_space(space, nu)?;
    let (xs, ys) = (mu.atoms(), nu.atoms());
    Ok(Array2::from_shape_fn((xs.len(), ys.len()), |(i, j)| {
        pow_p(space.metric(&xs[i], &ys[j]), p)
    }))
}

/// Minimises `Σ c(i,j)·π(i,j)` over couplings with row sums `wmu` and
/// column sums `wnu`, by network simplex.
pub fn solve_transport(cost: &Array2<f64>, wmu: &[f64], wnu: &[f64]) -> Result<TransportResult> {
    simplex::solve(cost, wmu, wnu)
}

/// Optimal plan for `W_p(μ, ν)`; its `cost` is `W_p^p`.
pub fn optimal_plan(
    space: &SpaceDescriptor,
    mu: &FinitePointMeasure,
    nu: &FinitePointMeasure,
    p: f64,
) -> Result<TransportResult> {
    let cost = cost_matrix(space, mu, nu, p)?;
    solve_transport(&cost, mu.weights(), nu.weights())
}

/// The Wasserstein distance of order `p`. Two Dirac measures are handled
/// exactly: `W_p(δ_x, δ_y) = d(x, y)`.
pub fn wasserstein(space: &SpaceDescriptor, mu: &FinitePointMeasure, nu: &FinitePointMeasure, p: f64) -> Result<f64> {
    check_p(p)?;
    check_same_space(space, mu)?;
    check_same_space(space, nu)?;
    if mu.is_dirac() && nu.is_dirac() {
        return Ok(space.metric(&mu.atoms()[0], &nu.atoms()[0]));
    }
    let result = optimal_plan(space, mu, nu, p)?;
    Ok(result.cost.max(0.0).powf(1.0 / p))
}
