//! The Dirac characterisation on the radius-½ sphere: a measure is at
//! `W_p`-distance 1 from something iff it is a Dirac mass.
//!
//! For a non-Dirac `μ` and any `ν`, the product coupling bounds
//! `W_p^p(μ, ν) ≤ ∫ I_μ dν` where `I_μ(y) = Σ w_i d(x_i, y)^p`, so it
//! suffices to bound `I_μ` uniformly. With `D` the smallest gap between two
//! atoms, at most one atom lies within `D/2` of `−y`; every other atom has
//! `d(x, y)² = 1 − d(x, −y)² ≤ 1 − D²/4` by the parallelogram identity on
//! the sphere. Hence
//! `I_μ(y) ≤ w_max + (1 − w_max)(1 − D²/4)^{p/2} < 1` for every `y`.

use std::f64::consts::PI;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measure::FinitePointMeasure;
use crate::sampling::random_measure;
use crate::space::{antipode, Point, SpaceDescriptor, SpaceKind, SPHERE_RADIUS};
use crate::transport::{check_p, pow_p, wasserstein};

/// Tolerance for `W_p(δ_x, δ_{−x}) = 1`.
pub const DIRAC_WITNESS_TOL: f64 = 1e-12;

/// Slack allowed when comparing a computed `W_p^p` against its bound.
pub const BOUND_SLACK: f64 = 1e-12;

fn require_sphere(space: &SpaceDescriptor) -> Result<()> {
    if space.kind == SpaceKind::Sphere {
        Ok(())
    } else {
        Err(Error::WrongSpace {
            expected: "sphere".into(),
            actual: space.to_string(),
        })
    }
}

/// Deterministic probes for `n = 2` (uniform angles) and `n = 3`
/// (Fibonacci lattice), random probes for `n ≥ 4`; all on radius ½.
pub fn probe_grid<R: Rng + ?Sized>(space: &SpaceDescriptor, count: usize, rng: &mut R) -> Result<Vec<Point>> {
    require_sphere(space)?;
    let r = SPHERE_RADIUS;
    Ok(match space.dim {
        2 => (0..count)
            .map(|k| {
                let a = 2.0 * PI * k as f64 / count as f64;
                Point::Coords(vec![r * a.cos(), r * a.sin()])
            })
            .collect(),
        3 => {
            let golden = PI * (3.0 - 5.0_f64.sqrt());
            (0..count)
                .map(|k| {
                    let z = 1.0 - 2.0 * (k as f64 + 0.5) / count as f64;
                    let rho = (1.0 - z * z).sqrt();
                    let phi = golden * k as f64;
                    Point::Coords(vec![r * rho * phi.cos(), r * rho * phi.sin(), r * z])
                })
                .collect()
        }
        _ => (0..count).map(|_| space.random_point(rng)).collect::<Result<_>>()?,
    })
}

/// Maximum of `y ↦ Σ w_i d(x_i, y)^p` over a probe set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupProfile {
    pub max_integral: f64,
    pub argmax: Point,
}

fn integral(space: &SpaceDescriptor, mu: &FinitePointMeasure, y: &Point, p: f64) -> f64 {
    mu.iter().map(|(x, w)| w * pow_p(space.metric(x, y), p)).sum()
}

/// Evaluates `∫ d(x, y)^p dμ(x)`, the product-coupling cost against `δ_y`,
/// at every probe and returns the largest value.
pub fn dirac_sup_profile(
    space: &SpaceDescriptor,
    mu: &FinitePointMeasure,
    p: f64,
    probes: &[Point],
) -> Result<SupProfile> {
    require_sphere(space)?;
    check_p(p)?;
    if mu.space() != space {
        return Err(Error::WrongSpace {
            expected: space.to_string(),
            actual: mu.space().to_string(),
        });
    }
    let mut best: Option<SupProfile> = None;
    for y in probes {
        space.check(y)?;
        let v = integral(space, mu, y, p);
        if best.as_ref().is_none_or(|b| v > b.max_integral) {
            best = Some(SupProfile {
                max_integral: v,
                argmax: y.clone(),
            });
        }
    }
    best.ok_or_else(|| Error::InvalidArgument("probe set is empty".into()))
}

/// Uniform upper bound on `y ↦ ∫ d(x, y)^p dμ(x)` over the whole sphere;
/// 1 for a Dirac measure, strictly below 1 otherwise.
pub fn analytic_sup_bound(mu: &FinitePointMeasure, p: f64) -> f64 {
    if mu.is_dirac() {
        return 1.0;
    }
    let space = mu.space();
    let atoms = mu.atoms();
    let mut gap = f64::INFINITY;
    for (i, x) in atoms.iter().enumerate() {
        for y in &atoms[i + 1..] {
            gap = gap.min(space.metric(x, y));
        }
    }
    let w_max = mu.weights().iter().copied().fold(0.0, f64::max);
    let far = (1.0 - 0.25 * gap * gap).max(0.0);
    w_max + (1.0 - w_max) * far.powf(0.5 * p)
}

/// Outcome of [`verify_dirac_characterization`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiracReport {
    pub is_dirac: bool,
    pub p: f64,
    /// For a Dirac `δ_x`, the antipode `−x`.
    pub witness: Option<Point>,
    /// `W_p(δ_x, δ_{−x})` for a Dirac input.
    pub witness_distance: Option<f64>,
    /// Uniform bound on the product-coupling cost (non-Dirac inputs).
    pub analytic_bound: f64,
    /// `1 − analytic_bound`.
    pub margin: f64,
    /// Largest product-coupling cost seen at a probe.
    pub probe_max: f64,
    /// Largest `W_p(μ, ν)` over all opponents `ν`.
    pub worst_wp: f64,
    pub opponents: usize,
    /// Largest `W_p^p(μ, ν) − bound(ν)` over opponents; ≤ 0 when consistent.
    pub max_bound_excess: f64,
    pub pass: bool,
}

/// Checks the Dirac characterisation for one measure on the sphere.
///
/// A Dirac `δ_x` must reach `W_p = 1` against `δ_{−x}`. A non-Dirac `μ` is
/// compared against the Dirac masses at `probe_count` probes and at the
/// antipodes of its atoms, and against `probe_count / 2` random measures with
/// 2 to 5 atoms; every `W_p^p(μ, ν)` (from the exact solver) must lie below
/// its product-coupling bound, which in turn must lie below the analytic
/// uniform bound `< 1`.
pub fn verify_dirac_characterization<R: Rng + ?Sized>(
    space: &SpaceDescriptor,
    mu: &FinitePointMeasure,
    p: f64,
    probe_count: usize,
    rng: &mut R,
) -> Result<DiracReport> {
    require_sphere(space)?;
    check_p(p)?;
    if mu.is_dirac() {
        let x = &mu.atoms()[0];
        let minus_x = antipode(space, x)?;
        let target = FinitePointMeasure::dirac(*space, minus_x.clone())?;
        let w = wasserstein(space, mu, &target, p)?;
        return Ok(DiracReport {
            is_dirac: true,
            p,
            witness: Some(minus_x),
            witness_distance: Some(w),
            analytic_bound: 1.0,
            margin: 0.0,
            probe_max: 1.0,
            worst_wp: w,
            opponents: 1,
            max_bound_excess: 0.0,
            pass: (w - 1.0).abs() <= DIRAC_WITNESS_TOL,
        });
    }

    let bound = analytic_sup_bound(mu, p);
    let mut probes = probe_grid(space, probe_count.max(1), rng)?;
    for x in mu.atoms() {
        probes.push(antipode(space, x)?);
    }
    let profile = dirac_sup_profile(space, mu, p, &probes)?;

    let mut worst_wp: f64 = 0.0;
    let mut excess = f64::NEG_INFINITY;
    let mut opponents = 0;
    for y in &probes {
        let nu = FinitePointMeasure::dirac(*space, y.clone())?;
        let w = wasserstein(space, mu, &nu, p)?;
        excess = excess.max(pow_p(w, p) - integral(space, mu, y, p));
        worst_wp = worst_wp.max(w);
        opponents += 1;
    }
    for _ in 0..probe_count / 2 {
        let atoms = rng.random_range(2..=5);
        let nu = random_measure(space, atoms, rng)?;
        let w = wasserstein(space, mu, &nu, p)?;
        let product: f64 = nu.iter().map(|(y, v)| v * integral(space, mu, y, p)).sum();
        excess = excess.max(pow_p(w, p) - product);
        worst_wp = worst_wp.max(w);
        opponents += 1;
    }

    let pass = bound < 1.0
        && profile.max_integral <= bound + BOUND_SLACK
        && excess <= BOUND_SLACK
        && pow_p(worst_wp, p) <= bound + BOUND_SLACK
        && worst_wp < 1.0;
    Ok(DiracReport {
        is_dirac: false,
        p,
        witness: None,
        witness_distance: None,
        analytic_bound: bound,
        margin: 1.0 - bound,
        probe_max: profile.max_integral,
        worst_wp,
        opponents,
        max_bound_excess: excess,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::trial_rng;

    fn sphere3() -> SpaceDescriptor {
        SpaceDescriptor::sphere(3).unwrap()
    }

    #[test]
    fn dirac_profile_peaks_at_the_antipode() {
        let s = sphere3();
        let x = Point::Coords(vec![0.0, 0.0, 0.5]);
        let mu = FinitePointMeasure::dirac(s, x.clone()).unwrap();
        let mut probes = probe_grid(&s, 50, &mut trial_rng(0, 0)).unwrap();
        probes.push(antipode(&s, &x).unwrap());
        let prof = dirac_sup_profile(&s, &mu, 2.0, &probes).unwrap();
        assert_eq!(prof.max_integral, 1.0);
        assert_eq!(prof.argmax, antipode(&s, &x).unwrap());
    }

    #[test]
    fn antipodal_pair_has_flat_quadratic_profile() {
        let s = sphere3();
        let mut rng = trial_rng(1, 0);
        let x = s.random_point(&mut rng).unwrap();
        let mu = FinitePointMeasure::uniform(s, vec![x.clone(), antipode(&s, &x).unwrap()]).unwrap();
        for y in probe_grid(&s, 40, &mut rng).unwrap() {
            let v = dirac_sup_profile(&s, &mu, 2.0, std::slice::from_ref(&y))
                .unwrap()
                .max_integral;
            assert!((v - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn probes_lie_on_the_sphere() {
        let mut rng = trial_rng(2, 0);
        for n in 2..6 {
            let s = SpaceDescriptor::sphere(n).unwrap();
            let probes = probe_grid(&s, 64, &mut rng).unwrap();
            assert_eq!(probes.len(), 64);
            assert!(probes.iter().all(|y| s.contains(y)));
        }
        assert!(probe_grid(&SpaceDescriptor::line(), 3, &mut rng).is_err());
    }

    #[test]
    fn dirac_characterisation_on_examples() {
        let s = sphere3();
        let mut rng = trial_rng(3, 0);
        let x = s.random_point(&mut rng).unwrap();
        let d = FinitePointMeasure::dirac(s, x.clone()).unwrap();
        let r = verify_dirac_characterization(&s, &d, 1.5, 10, &mut rng).unwrap();
        assert!(r.pass && r.is_dirac);
        assert_eq!(r.witness, Some(antipode(&s, &x).unwrap()));

        let pair = FinitePointMeasure::uniform(s, vec![x.clone(), antipode(&s, &x).unwrap()]).unwrap();
        let r = verify_dirac_characterization(&s, &pair, 2.0, 100, &mut rng).unwrap();
        assert!(r.pass);
        assert!((r.probe_max - 0.5).abs() < 1e-15);
    }

    #[test]
    fn nearly_dirac_measures_stay_below_one() {
        let s = sphere3();
        let mut rng = trial_rng(4, 0);
        let x = s.random_point(&mut rng).unwrap();
        let x2 = s.random_point(&mut rng).unwrap();
        let mut prev = 0.0;
        for t in [0.1, 0.01] {
            let mu = FinitePointMeasure::new(s, vec![x.clone(), x2.clone()], vec![1.0 - t, t]).unwrap();
            let r = verify_dirac_characterization(&s, &mu, 2.0, 200, &mut rng).unwrap();
            assert!(r.pass, "{r:?}");
            assert!(r.worst_wp < 1.0 && r.worst_wp > prev);
            prev = r.worst_wp;
        }
    }
}
