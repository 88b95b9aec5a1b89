//! On `W_2(ℝⁿ)`, rotating every measure about its own center of mass is an
//! isometry that fixes all Dirac masses but is not a push-forward.

use otlab::lab::kloeckner_isometry;
use otlab::{FinitePointMeasure, IsometryMap, Metric, Point, SpaceDescriptor};

fn main() -> otlab::Result<()> {
    let plane = SpaceDescriptor::euclidean(2)?;
    let pt = |x: f64, y: f64| Point::Coords(vec![x, y]);
    let phi = kloeckner_isometry(IsometryMap::rotation_2d(std::f64::consts::FRAC_PI_2))?;

    let mu = FinitePointMeasure::uniform(plane, vec![pt(-1.0, 0.0), pt(1.0, 0.0)])?;
    let nu = FinitePointMeasure::new(
        plane,
        vec![pt(2.0, 2.0), pt(3.0, 1.0), pt(2.0, 0.0)],
        vec![0.2, 0.5, 0.3],
    )?;
    let image = phi.apply(&mu)?;
    println!("mu      = {:?}", mu.atoms());
    println!("phi(mu) = {:?}", image.atoms());
    println!("center  = {:?} -> {:?}", mu.center_of_mass()?, image.center_of_mass()?);

    let w2 = Metric::Wasserstein { p: 2.0 };
    println!("W_2(mu, nu) = {:.12}", w2.distance(&mu, &nu)?);
    println!("W_2(phi mu, phi nu) = {:.12}", w2.distance(&image, &phi.apply(&nu)?)?);

    let dirac = FinitePointMeasure::dirac(plane, pt(0.3, -2.0))?;
    println!("phi(δ_x) = δ_x: {}", phi.apply(&dirac)? == dirac);
    Ok(())
}
