//! An isometry of `W_p(S)` sends Dirac masses to Dirac masses; the induced
//! point map is an isometry of the sphere.

use otlab::lab::{extract_point_map, lift_isometry, MeasureTransform};
use otlab::sampling::trial_rng;
use otlab::{random_orthogonal, FinitePointMeasure, Point, SpaceDescriptor};

fn main() -> otlab::Result<()> {
    let sphere = SpaceDescriptor::sphere(3)?;
    let mut rng = trial_rng(5, 0);
    let q = random_orthogonal(3, &mut rng)?;
    let sample: Vec<Point> = (0..30)
        .map(|_| sphere.random_point(&mut rng))
        .collect::<otlab::Result<_>>()?;

    let report = extract_point_map(&lift_isometry(q.clone()), &sphere, &sample)?;
    let worst = sample
        .iter()
        .zip(&report.images)
        .map(|(x, tx)| sphere.distance(&q.apply(&sphere, x).unwrap(), tx).unwrap())
        .fold(0.0, f64::max);
    println!(
        "orthogonal lift: max |T(x) - Qx| = {worst:.2e}, isometry defect = {:.2e}",
        report.isometry_defect
    );

    let anchor = sample[0].clone();
    let collapse = MeasureTransform::from_fn("collapse", move |m| {
        FinitePointMeasure::dirac(*m.space(), anchor.clone())
    });
    let report = extract_point_map(&collapse, &sphere, &sample)?;
    println!("collapse: isometry defect = {:.4}", report.isometry_defect);
    Ok(())
}
