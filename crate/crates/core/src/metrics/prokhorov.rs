//! Exact Lévy–Prokhorov distance between finitely supported measures.
//!
//! `d(μ, ν) = inf{ε > 0 : μ(A) ≤ ν(A^ε) + ε for every A}` with the open
//! enlargement `A^ε = {y : d(x, y) < ε for some x ∈ A}`. Only `A ⊆ supp μ`
//! matter. Between consecutive pairwise distances `t_k < t_{k+1}` the
//! enlargement pattern is fixed for `ε ∈ (t_k, t_{k+1}]` (membership holds iff
//! `d ≤ t_k`), so `g_k = max_A μ(A) − ν(A^ε)` is constant there and the
//! infimum over that interval is `max(t_k, g_k)` whenever this does not
//! exceed `t_{k+1}`. `g_k` is non-increasing in `k`, so the first interval
//! that admits a feasible `ε` yields the answer.

use crate::error::{Error, Result};
use crate::measure::FinitePointMeasure;
use crate::space::SpaceDescriptor;
use crate::transport::check_same_space;

/// Largest support of `μ` for which all subsets are enumerated.
pub const LP_MAX_SUPPORT: usize = 15;

/// Fixed-size bitset over the atoms of `ν`.
#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }

    fn set(&mut self, j: usize) {
        self.0[j / 64] |= 1 << (j % 64);
    }

    fn union(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a | b).collect())
    }

    fn mass(&self, weights: &[f64]) -> f64 {
        let mut total = 0.0;
        for (w, &word) in self.0.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let j = w * 64 + bits.trailing_zeros() as usize;
                total += weights[j];
                bits &= bits - 1;
            }
        }
        total
    }
}

/// `max_{A ⊆ supp μ} μ(A) − ν(A^ε)` for the enlargement pattern
/// `d(x_i, y_j) ≤ threshold`.
fn worst_excess(dist: &[Vec<f64>], wmu: &[f64], wnu: &[f64], threshold: f64) -> f64 {
    let (m, n) = (wmu.len(), wnu.len());
    let nbr: Vec<Bits> = dist
        .iter()
        .map(|row| {
            let mut b = Bits::empty(n);
            row.iter()
                .enumerate()
                .filter(|(_, &d)| d <= threshold)
                .for_each(|(j, _)| b.set(j));
            b
        })
        .collect();
    let subsets = 1usize << m;
    let mut hood: Vec<Bits> = Vec::with_capacity(subsets);
    let mut mass = vec![0.0; subsets];
    hood.push(Bits::empty(n));
    let mut best: f64 = 0.0;
    for a in 1..subsets {
        let low = a.trailing_zeros() as usize;
        let rest = a & (a - 1);
        hood.push(hood[rest].union(&nbr[low]));
        mass[a] = mass[rest] + wmu[low];
        best = best.max(mass[a] - hood[a].mass(wnu));
    }
    best
}

/// Exact Lévy–Prokhorov distance `d_LP(μ, ν)`; requires
/// `|supp μ| ≤` [`LP_MAX_SUPPORT`].
pub fn levy_prokhorov_distance(
    space: &SpaceDescriptor,
    mu: &FinitePointMeasure,
    nu: &FinitePointMeasure,
) -> Result<f64> {
    check_same_space(space, mu)?;
    check_same_space(space, nu)?;
    if mu.len() > LP_MAX_SUPPORT {
        return Err(Error::SupportTooLarge {
            size: mu.len(),
            limit: LP_MAX_SUPPORT,
        });
    }
    let dist: Vec<Vec<f64>> = mu
        .atoms()
        .iter()
        .map(|x| nu.atoms().iter().map(|y| space.metric(x, y)).collect())
        .collect();
    let mut thresholds: Vec<f64> = std::iter::once(0.0).chain(dist.iter().flatten().copied()).collect();
    thresholds.sort_by(f64::total_cmp);
    thresholds.dedup();

    for (k, &t) in thresholds.iter().enumerate() {
        let excess = worst_excess(&dist, mu.weights(), nu.weights(), t);
        let candidate = t.max(excess);
        match thresholds.get(k + 1) {
            Some(&next) if candidate > next => continue,
            _ => return Ok(candidate.min(1.0)),
        }
    }
    unreachable!("the last interval is unbounded")
}
