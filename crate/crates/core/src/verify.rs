//! Seeded verification suites.
//!
//! Each suite runs `trials` independent trials, trial `k` drawing from
//! [`trial_rng`]`(seed, k)`. Trials run in parallel; the report keeps the
//! maximum error, whether every trial passed, and a witness (the first
//! failing trial, otherwise the trial with the largest error), so a report
//! depends only on `(suite, seed, trials)`.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::isometry::{random_isometry, random_orthogonal, MonotoneMap};
use crate::lab::{
    extract_point_map, kloeckner_isometry, ks_isometry, kuiper_isometry, levy_isometry, lift_isometry, lp_isometry,
    verify_dirac_characterization, FiniteUniverse, MeasureTransform,
};
use crate::measure::FinitePointMeasure;
use crate::metrics::{ks_distance, kuiper_distance, tv_distance, w1_cdf, Metric};
use crate::sampling::{random_measure, random_measure_upto, random_weights, trial_rng};
use crate::space::{Point, SpaceDescriptor};
use crate::transport::{oracle_transport, solve_transport, wasserstein, CERTIFICATE_TOL};

/// Names accepted by [`run_suite`].
pub const SUITES: [&str; 14] = [
    "metric-axioms",
    "chain",
    "w1-tv",
    "w1-cdf",
    "pushforward",
    "kloeckner",
    "ks-iso",
    "levy-iso",
    "kuiper-iso",
    "lp-iso",
    "dirac-claim",
    "point-map",
    "oracle",
    "bidual",
];

/// Probe count used per non-Dirac measure in the `dirac-claim` suite.
pub const DIRAC_PROBES: usize = 200;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub max_error: f64,
    pub pass: bool,
    pub witness: Value,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

struct Trial {
    error: f64,
    ok: bool,
    witness: Value,
}

impl Trial {
    fn within(error: f64, tol: f64, witness: Value) -> Trial {
        Trial {
            error,
            ok: error <= tol,
            witness,
        }
    }
}

type TrialFn = fn(&mut ChaCha8Rng, usize) -> Result<Trial>;

fn suite_fn(name: &str) -> Option<TrialFn> {
    Some(match name {
        "metric-axioms" => metric_axioms,
        "chain" => chain,
        "w1-tv" => w1_tv,
        "w1-cdf" => w1_cdf_trial,
        "pushforward" => pushforward,
        "kloeckner" => kloeckner,
        "ks-iso" => ks_iso,
        "levy-iso" => levy_iso,
        "kuiper-iso" => kuiper_iso,
        "lp-iso" => lp_iso,
        "dirac-claim" => dirac_characterisation,
        "point-map" => point_map,
        "oracle" => oracle,
        "bidual" => bidual,
        _ => return None,
    })
}

/// Runs one named suite.
pub fn run_suite(name: &str, seed: u64, trials: usize) -> Result<VerifyReport> {
    let f = suite_fn(name)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {name:?}; expected one of {SUITES:?}")))?;
    let outcomes: Vec<Trial> = (0..trials)
        .into_par_iter()
        .map(|k| {
            let mut rng = trial_rng(seed, k as u64);
            f(&mut rng, k).unwrap_or_else(|e| Trial {
                error: f64::INFINITY,
                ok: false,
                witness: json!({ "error": e.to_string() }),
            })
        })
        .collect();

    let max_error = outcomes.iter().map(|t| t.error).fold(0.0, f64::max);
    let pass = outcomes.iter().all(|t| t.ok);
    let pick = outcomes
        .iter()
        .position(|t| !t.ok)
        .or_else(|| outcomes.iter().position(|t| t.error == max_error));
    let witness = match pick {
        Some(k) => {
            let mut w = outcomes[k].witness.clone();
            if let Value::Object(map) = &mut w {
                map.insert("trial".into(), json!(k));
            }
            w
        }
        None => Value::Null,
    };
    Ok(VerifyReport {
        suite: name.to_string(),
        seed,
        trials,
        max_error,
        pass,
        witness,
    })
}

fn line() -> SpaceDescriptor {
    SpaceDescriptor::line()
}

fn rotating_space(k: usize) -> SpaceDescriptor {
    match k % 5 {
        0 => SpaceDescriptor::line(),
        1 => SpaceDescriptor::euclidean(2).unwrap(),
        2 => SpaceDescriptor::euclidean(3).unwrap(),
        3 => SpaceDescriptor::sphere(3).unwrap(),
        _ => SpaceDescriptor::discrete(6).unwrap(),
    }
}

const AXIOM_TOL: f64 = 1e-9;

fn metric_axioms(rng: &mut ChaCha8Rng, k: usize) -> Result<Trial> {
    let space = rotating_space(k);
    let mut metrics = vec![
        Metric::Wasserstein { p: 1.0 },
        Metric::Wasserstein { p: 2.0 },
        Metric::TotalVariation,
        Metric::LevyProkhorov,
    ];
    if space == line() {
        metrics.extend([Metric::KolmogorovSmirnov, Metric::Kuiper, Metric::Levy]);
    }
    let a = random_measure_upto(&space, 5, rng)?;
    let b = random_measure_upto(&space, 5, rng)?;
    let c = random_measure_upto(&space, 5, rng)?;
    let mut worst = (0.0_f64, "none".to_string());
    for m in metrics {
        let (ab, ba) = (m.distance(&a, &b)?, m.distance(&b, &a)?);
        let (ac, bc, aa) = (m.distance(&a, &c)?, m.distance(&b, &c)?, m.distance(&a, &a)?);
        let violation = [-ab, aa, (ab - ba).abs(), ac - ab - bc].into_iter().fold(0.0, f64::max);
        if violation > worst.0 {
            worst = (violation, m.to_string());
        }
    }
    Ok(Trial::within(
        worst.0,
        AXIOM_TOL,
        json!({ "space": space.to_string(), "metric": worst.1 }),
    ))
}

fn chain(rng: &mut ChaCha8Rng, _k: usize) -> Result<Trial> {
    let mu = random_measure_upto(&line(), 6, rng)?;
    let nu = random_measure_upto(&line(), 6, rng)?;
    let (ks, ku, tv) = (
        ks_distance(&mu, &nu)?,
        kuiper_distance(&mu, &nu)?,
        tv_distance(&mu, &nu)?,
    );
    let error = [ks - ku, ku - tv, tv - 1.0, -ks].into_iter().fold(0.0, f64::max);
    let ok = ks <= ku + 1e-12 && ku + 1e-12 <= tv + 2e-12 && tv + 2e-12 <= 1.0 + 3e-12 && ks >= 0.0;
    Ok(Trial {
        error,
        ok,
        witness: json!({ "ks": ks, "kuiper": ku, "tv": tv }),
    })
}

fn w1_tv(rng: &mut ChaCha8Rng, _k: usize) -> Result<Trial> {
    let space = SpaceDescriptor::discrete(8)?;
    let mu = random_measure_upto(&space, 8, rng)?;
    let nu = random_measure_upto(&space, 8, rng)?;
    let (w, tv) = (wasserstein(&space, &mu, &nu, 1.0)?, tv_distance(&mu, &nu)?);
    Ok(Trial::within((w - tv).abs(), 1e-10, json!({ "w1": w, "tv": tv })))
}

fn w1_cdf_trial(rng: &mut ChaCha8Rng, _k: usize) -> Result<Trial> {
    let mu = random_measure_upto(&line(), 8, rng)?;
    let nu = random_measure_upto(&line(), 8, rng)?;
    let (w, integral) = (wasserstein(&line(), &mu, &nu, 1.0)?, w1_cdf(&mu, &nu)?);
    Ok(Trial::within(
        (w - integral).abs(),
        1e-10,
        json!({ "w1": w, "cdf_integral": integral }),
    ))
}

fn pushforward(rng: &mut ChaCha8Rng, k: usize) -> Result<Trial> {
    let space = rotating_space(k);
    let p = [1.0, 2.0, 3.0][(k / 5) % 3];
    let psi = random_isometry(&space, rng)?;
    let mu = random_measure_upto(&space, 6, rng)?;
    let nu = random_measure_upto(&space, 6, rng)?;
    let phi = lift_isometry(psi);
    let d = phi.distortion(Metric::Wasserstein { p }, &mu, &nu)?;
    Ok(Trial::within(d, 1e-9, json!({ "space": space.to_string(), "p": p })))
}

fn kloeckner(rng: &mut ChaCha8Rng, k: usize) -> Result<Trial> {
    let dim = 2 + k % 2;
    let space = SpaceDescriptor::euclidean(dim)?;
    let phi = kloeckner_isometry(random_orthogonal(dim, rng)?)?;
    let mu = random_measure_upto(&space, 6, rng)?;
    let nu = random_measure_upto(&space, 6, rng)?;
    let distortion = phi.distortion(Metric::Wasserstein { p: 2.0 }, &mu, &nu)?;
    let x = space.random_point(rng)?;
    let image = phi.apply(&FinitePointMeasure::dirac(space, x.clone())?)?;
    let fix_error = if image.is_dirac() {
        space.metric(&image.atoms()[0], &x)
    } else {
        f64::INFINITY
    };
    Ok(Trial {
        error: distortion.max(fix_error),
        ok: distortion <= 1e-7 && fix_error <= 1e-12,
        witness: json!({ "dim": dim, "w2_distortion": distortion, "dirac_fix_error": fix_error }),
    })
}

fn random_slope(rng: &mut ChaCha8Rng) -> f64 {
    rng.random_range(0.2..5.0)
}

fn line_pair(rng: &mut ChaCha8Rng, max_atoms: usize) -> Result<(FinitePointMeasure, FinitePointMeasure)> {
    Ok((
        random_measure_upto(&line(), max_atoms, rng)?,
        random_measure_upto(&line(), max_atoms, rng)?,
    ))
}

fn ks_iso(rng: &mut ChaCha8Rng, k: usize) -> Result<Trial> {
    let (psi, increasing) = match k % 4 {
        0 => (
            MonotoneMap::affine(random_slope(rng), rng.random_range(-2.0..2.0))?,
            true,
        ),
        1 => (
            MonotoneMap::affine(-random_slope(rng), rng.random_range(-2.0..2.0))?,
            false,
        ),
        2 => (MonotoneMap::cube(), true),
        _ => (
            MonotoneMap::new("t -> -t^3", |t| -t * t * t, |t| f64::cbrt(-t), false)?,
            false,
        ),
    };
    let name = psi.name().to_string();
    let phi = ks_isometry(psi, increasing)?;
    let (mu, nu) = line_pair(rng, 6)?;
    let d = phi.distortion(Metric::KolmogorovSmirnov, &mu, &nu)?;
    Ok(Trial::within(
        d,
        1e-10,
        json!({ "psi": name, "increasing": increasing }),
    ))
}

fn levy_iso(rng: &mut ChaCha8Rng, k: usize) -> Result<Trial> {
    let c = rng.random_range(-3.0..3.0);
    let reflect = k % 2 == 1;
    let phi = levy_isometry(c, reflect);
    let (mu, nu) = line_pair(rng, 6)?;
    let d = phi.distortion(Metric::Levy, &mu, &nu)?;
    Ok(Trial::within(d, 1e-9, json!({ "c": c, "reflect": reflect })))
}

fn kuiper_iso(rng: &mut ChaCha8Rng, k: usize) -> Result<Trial> {
    let g = if k.is_multiple_of(2) {
        MonotoneMap::cube()
    } else {
        MonotoneMap::affine(random_slope(rng), rng.random_range(-2.0..2.0))?
    };
    let name = g.name().to_string();
    let phi = kuiper_isometry(g);
    let (mu, nu) = line_pair(rng, 6)?;
    let d = phi.distortion(Metric::Kuiper, &mu, &nu)?;
    Ok(Trial::within(d, 1e-9, json!({ "g": name })))
}

fn lp_iso(rng: &mut ChaCha8Rng, _k: usize) -> Result<Trial> {
    let space = SpaceDescriptor::euclidean(2)?;
    let phi = lp_isometry(random_isometry(&space, rng)?)?;
    let mu = random_measure_upto(&space, 8, rng)?;
    let nu = random_measure_upto(&space, 8, rng)?;
    let d = phi.distortion(Metric::LevyProkhorov, &mu, &nu)?;
    Ok(Trial::within(d, 1e-8, json!({ "atoms": [mu.len(), nu.len()] })))
}

fn dirac_characterisation(rng: &mut ChaCha8Rng, k: usize) -> Result<Trial> {
    let space = SpaceDescriptor::sphere(2 + k % 2)?;
    let p = [1.0, 2.0, 3.0][(k / 2) % 3];
    let dirac = FinitePointMeasure::dirac(space, space.random_point(rng)?)?;
    let d = verify_dirac_characterization(&space, &dirac, p, DIRAC_PROBES, rng)?;
    let atoms = rng.random_range(2..=5);
    let mu = random_measure(&space, atoms, rng)?;
    let r = verify_dirac_characterization(&space, &mu, p, DIRAC_PROBES, rng)?;
    let dirac_error = (d.witness_distance.unwrap_or(f64::NAN) - 1.0).abs();
    Ok(Trial {
        error: dirac_error.max(r.max_bound_excess.max(0.0)),
        ok: d.pass && r.pass,
        witness: json!({
            "space": space.to_string(),
            "p": p,
            "dirac_witness_distance": d.witness_distance,
            "non_dirac_atoms": atoms,
            "worst_wp": r.worst_wp,
            "analytic_bound": r.analytic_bound,
            "probe_max": r.probe_max,
            "opponents": r.opponents,
        }),
    })
}

fn point_map(rng: &mut ChaCha8Rng, _k: usize) -> Result<Trial> {
    let space = SpaceDescriptor::sphere(3)?;
    let q = random_orthogonal(3, rng)?;
    let sample: Vec<Point> = (0..30).map(|_| space.random_point(rng)).collect::<Result<_>>()?;
    let report = extract_point_map(&lift_isometry(q.clone()), &space, &sample)?;
    let mut match_error: f64 = 0.0;
    for (x, tx) in sample.iter().zip(&report.images) {
        match_error = match_error.max(space.metric(&q.apply(&space, x)?, tx));
    }
    let x0 = sample[0].clone();
    let collapse = MeasureTransform::from_fn("collapse", move |m| FinitePointMeasure::dirac(*m.space(), x0.clone()));
    let flagged = match extract_point_map(&collapse, &space, &sample) {
        Err(Error::ImageNotDirac { .. }) => true,
        Ok(r) => r.isometry_defect > 0.1,
        Err(e) => return Err(e),
    };
    Ok(Trial {
        error: match_error.max(report.isometry_defect),
        ok: match_error <= 1e-10 && report.isometry_defect <= 1e-9 && flagged,
        witness: json!({
            "match_error": match_error,
            "isometry_defect": report.isometry_defect,
            "non_isometry_flagged": flagged,
        }),
    })
}

fn oracle(rng: &mut ChaCha8Rng, k: usize) -> Result<Trial> {
    let (m, n) = (rng.random_range(1..=4), rng.random_range(1..=4));
    let (wmu, wnu) = if k.is_multiple_of(3) {
        (vec![1.0 / m as f64; m], vec![1.0 / n as f64; n])
    } else {
        (random_weights(m, rng), random_weights(n, rng))
    };
    let cost = if k.is_multiple_of(2) {
        ndarray::Array2::from_shape_fn((m, n), |_| rng.random::<f64>())
    } else {
        let plane = SpaceDescriptor::euclidean(2)?;
        let xs: Vec<Point> = (0..m).map(|_| plane.random_point(rng)).collect::<Result<_>>()?;
        let ys: Vec<Point> = (0..n).map(|_| plane.random_point(rng)).collect::<Result<_>>()?;
        ndarray::Array2::from_shape_fn((m, n), |(i, j)| plane.metric(&xs[i], &ys[j]))
    };
    let result = solve_transport(&cost, &wmu, &wnu)?;
    let brute = oracle_transport(&cost, &wmu, &wnu)?;
    let cert = result.certificate(&cost);
    let error = (result.cost - brute).abs();
    Ok(Trial {
        error,
        ok: error <= 1e-10 && cert.holds(CERTIFICATE_TOL),
        witness: json!({ "m": m, "n": n, "simplex": result.cost, "oracle": brute, "certificate": cert }),
    })
}

/// Index of the non-Dirac member probed by the `bidual` suite.
pub const BIDUAL_PROBE: usize = 3;

/// Twenty line measures: `δ_0`, Dirac masses just right and just left of
/// 0, ten non-Dirac measures with 2 to 4 atoms in `[−3, 3]` (the first at
/// index [`BIDUAL_PROBE`]), a Dirac mass at the midpoint of the two
/// smallest atoms of that first non-Dirac measure, and six further Dirac
/// masses in `[−3, 3]`.
///
/// The midpoint Dirac lies in `U(U({μ}))` for the probe `μ`, so the probe
/// is never a fixed point.
pub fn bidual_universe<R: Rng + ?Sized>(rng: &mut R) -> Result<Vec<FinitePointMeasure>> {
    let mut universe = vec![FinitePointMeasure::on_line(&[(0.0, 1.0)])?];
    universe.push(FinitePointMeasure::on_line(&[(rng.random_range(0.001..0.05), 1.0)])?);
    universe.push(FinitePointMeasure::on_line(&[(-rng.random_range(0.001..0.05), 1.0)])?);
    while universe.len() < BIDUAL_PROBE + 10 {
        let atoms = rng.random_range(2..=4);
        let weights = random_weights(atoms, rng);
        let pairs: Vec<(f64, f64)> = weights.into_iter().map(|w| (rng.random_range(-3.0..3.0), w)).collect();
        let m = FinitePointMeasure::on_line(&pairs)?;
        if !m.is_dirac() {
            universe.push(m);
        }
    }
    let xs = universe[BIDUAL_PROBE].real_atoms()?;
    universe.push(FinitePointMeasure::on_line(&[(0.5 * (xs[0] + xs[1]), 1.0)])?);
    for _ in 0..6 {
        universe.push(FinitePointMeasure::on_line(&[(rng.random_range(-3.0..3.0), 1.0)])?);
    }
    Ok(universe)
}

fn bidual(rng: &mut ChaCha8Rng, _k: usize) -> Result<Trial> {
    let universe = FiniteUniverse::new(bidual_universe(rng)?, Metric::KolmogorovSmirnov)?;
    let dirac_fixed = universe.is_fixed_point(0);
    let probe = BIDUAL_PROBE;
    let non_dirac_fixed = universe.is_fixed_point(probe);
    let ok = dirac_fixed && !non_dirac_fixed;
    Ok(Trial {
        error: if ok { 0.0 } else { 1.0 },
        ok,
        witness: json!({
            "note": "restricted-universe proxy for the Dirac bidual characterisation",
            "universe_size": universe.measures().len(),
            "unit_set_of_dirac": universe.unit_set(&[0]),
            "bidual_of_dirac": universe.bidual_of(0),
            "non_dirac_index": probe,
            "bidual_of_non_dirac": universe.bidual_of(probe),
        }),
    })
}
