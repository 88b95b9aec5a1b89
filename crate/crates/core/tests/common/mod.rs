//! Brute-force oracles written independently of the library algorithms.
#![allow(dead_code)]

use otlab::{FinitePointMeasure, Point};
use proptest::prelude::*;

pub fn line(pairs: &[(f64, f64)]) -> FinitePointMeasure {
    FinitePointMeasure::on_line(pairs).unwrap()
}

fn pairs(m: &FinitePointMeasure) -> Vec<(f64, f64)> {
    m.iter().map(|(x, w)| (x.as_real().unwrap(), w)).collect()
}

fn mass_where(m: &FinitePointMeasure, keep: impl Fn(f64) -> bool) -> f64 {
    pairs(m).into_iter().filter(|&(x, _)| keep(x)).map(|(_, w)| w).sum()
}

/// `W_p` on the line through the quantile coupling:
/// `(∫_0^1 |F⁻¹(t) − G⁻¹(t)|^p dt)^{1/p}`.
pub fn quantile_wp(mu: &FinitePointMeasure, nu: &FinitePointMeasure, p: f64) -> f64 {
    let (a, b) = (pairs(mu), pairs(nu));
    let (mut i, mut j) = (0, 0);
    let (mut left_a, mut left_b) = (a[0].1, b[0].1);
    let mut total = 0.0;
    loop {
        let step = left_a.min(left_b);
        total += step * (a[i].0 - b[j].0).abs().powf(p);
        left_a -= step;
        left_b -= step;
        if left_a <= 1e-15 {
            i += 1;
            if i == a.len() {
                break;
            }
            left_a = a[i].1;
        }
        if left_b <= 1e-15 {
            j += 1;
            if j == b.len() {
                break;
            }
            left_b = b[j].1;
        }
    }
    total.powf(1.0 / p)
}

/// `½ Σ_x |μ{x} − ν{x}|` over the union of supports.
pub fn tv_by_atoms(mu: &FinitePointMeasure, nu: &FinitePointMeasure) -> f64 {
    let mut support: Vec<&Point> = mu.atoms().iter().chain(nu.atoms()).collect();
    support.sort_by(|x, y| x.canonical_cmp(y));
    support.dedup();
    0.5 * support
        .iter()
        .map(|x| (mu.mass_at(x) - nu.mass_at(x)).abs())
        .sum::<f64>()
}

/// Every interval with endpoints at atoms (open or closed), half-lines
/// and the whole line.
fn intervals(mu: &FinitePointMeasure, nu: &FinitePointMeasure) -> Vec<Box<dyn Fn(f64) -> bool>> {
    let mut ends: Vec<f64> = pairs(mu).into_iter().chain(pairs(nu)).map(|(x, _)| x).collect();
    ends.sort_by(f64::total_cmp);
    ends.dedup();
    let mut out: Vec<Box<dyn Fn(f64) -> bool>> = vec![Box::new(|_| true)];
    for &a in &ends {
        out.push(Box::new(move |x| x <= a));
        out.push(Box::new(move |x| x < a));
        out.push(Box::new(move |x| x >= a));
        out.push(Box::new(move |x| x > a));
        for &b in &ends {
            if a <= b {
                out.push(Box::new(move |x| a <= x && x <= b));
                out.push(Box::new(move |x| a < x && x <= b));
                out.push(Box::new(move |x| a <= x && x < b));
                out.push(Box::new(move |x| a < x && x < b));
            }
        }
    }
    out
}

/// `max |μ(I) − ν(I)|` over intervals `I`; this is the Kuiper distance.
pub fn kuiper_by_intervals(mu: &FinitePointMeasure, nu: &FinitePointMeasure) -> f64 {
    intervals(mu, nu)
        .iter()
        .map(|i| (mass_where(mu, i) - mass_where(nu, i)).abs())
        .fold(0.0, f64::max)
}

/// `max |μ(H) − ν(H)|` over half-lines `(−∞, a]` and `(−∞, a)`.
pub fn ks_by_half_lines(mu: &FinitePointMeasure, nu: &FinitePointMeasure) -> f64 {
    let ends: Vec<f64> = pairs(mu).into_iter().chain(pairs(nu)).map(|(x, _)| x).collect();
    let mut best: f64 = 0.0;
    for a in ends {
        best = best.max((mass_where(mu, |x| x <= a) - mass_where(nu, |x| x <= a)).abs());
        best = best.max((mass_where(mu, |x| x < a) - mass_where(nu, |x| x < a)).abs());
    }
    best
}

/// Whether `μ(A) ≤ ν(A^ε) + ε` and `ν(A) ≤ μ(A^ε) + ε` for every subset
/// `A` of the supports, with closed neighbourhoods.
pub fn lp_feasible(mu: &FinitePointMeasure, nu: &FinitePointMeasure, eps: f64) -> bool {
    one_sided(mu, nu, eps) && one_sided(nu, mu, eps)
}

fn one_sided(mu: &FinitePointMeasure, nu: &FinitePointMeasure, eps: f64) -> bool {
    let space = *mu.space();
    let n = mu.len();
    (1u32..(1 << n)).all(|set| {
        let chosen: Vec<usize> = (0..n).filter(|i| set & (1 << i) != 0).collect();
        let mass: f64 = chosen.iter().map(|&i| mu.weights()[i]).sum();
        let near: f64 = nu
            .iter()
            .filter(|(y, _)| {
                chosen
                    .iter()
                    .any(|&i| space.distance(&mu.atoms()[i], y).unwrap() <= eps)
            })
            .map(|(_, w)| w)
            .sum();
        mass <= near + eps + 1e-13
    })
}

/// Lévy–Prokhorov distance by bisection over `ε` with full subset checks.
pub fn lp_by_bisection(mu: &FinitePointMeasure, nu: &FinitePointMeasure) -> f64 {
    let (mut lo, mut hi) = (0.0, 1.0);
    if lp_feasible(mu, nu, 0.0) {
        return 0.0;
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if lp_feasible(mu, nu, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

fn cdf(m: &[(f64, f64)], x: f64) -> f64 {
    m.iter().filter(|&&(a, _)| a <= x).map(|&(_, w)| w).sum()
}

/// Whether `F(x − ε) − ε ≤ G(x) ≤ F(x + ε) + ε` for all `x`. Both sides
/// are right-continuous step functions of `x`, constant between the jumps
/// of `G` and the `±ε` shifts of the jumps of `F`, so checking at those
/// points is exhaustive.
pub fn levy_feasible(mu: &FinitePointMeasure, nu: &FinitePointMeasure, eps: f64) -> bool {
    let (f, g) = (pairs(mu), pairs(nu));
    let mut probes = Vec::new();
    for &(a, _) in f.iter().chain(&g) {
        probes.extend([a, a - eps, a + eps]);
    }
    probes.iter().all(|&x| {
        let gx = cdf(&g, x);
        cdf(&f, x - eps) - eps <= gx + 1e-13 && gx <= cdf(&f, x + eps) + eps + 1e-13
    })
}

pub fn levy_by_bisection(mu: &FinitePointMeasure, nu: &FinitePointMeasure) -> f64 {
    if levy_feasible(mu, nu, 0.0) {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if levy_feasible(mu, nu, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Minimum average cost over permutations; the optimal transport cost
/// between two uniform measures with equally many atoms.
pub fn assignment_by_permutations(cost: &[Vec<f64>]) -> f64 {
    fn go(cost: &[Vec<f64>], row: usize, used: &mut Vec<bool>, acc: f64, best: &mut f64) {
        if row == cost.len() {
            *best = best.min(acc);
            return;
        }
        for j in 0..cost.len() {
            if !used[j] {
                used[j] = true;
                go(cost, row + 1, used, acc + cost[row][j], best);
                used[j] = false;
            }
        }
    }
    let mut best = f64::INFINITY;
    go(cost, 0, &mut vec![false; cost.len()], 0.0, &mut best);
    best / cost.len() as f64
}

/// A line measure with 1 to `max_atoms` atoms in `[−5, 5]` on a coarse
/// grid (so coincident atoms occur) and weights bounded away from 0.
pub fn line_measure(max_atoms: usize) -> impl Strategy<Value = FinitePointMeasure> {
    prop::collection::vec((-20i32..=20, 1u32..=100), 1..=max_atoms).prop_map(|raw| {
        let total: f64 = raw.iter().map(|&(_, w)| w as f64).sum();
        let pairs: Vec<(f64, f64)> = raw.iter().map(|&(x, w)| (x as f64 * 0.25, w as f64 / total)).collect();
        line(&pairs)
    })
}

/// A line measure with continuous atom positions.
pub fn smooth_line_measure(max_atoms: usize) -> impl Strategy<Value = FinitePointMeasure> {
    prop::collection::vec((-5.0..5.0f64, 0.01..1.0f64), 1..=max_atoms).prop_map(|raw| {
        let total: f64 = raw.iter().map(|&(_, w)| w).sum();
        let pairs: Vec<(f64, f64)> = raw.iter().map(|&(x, w)| (x, w / total)).collect();
        line(&pairs)
    })
}
