//! `x ↦ δ_x` is an isometric embedding into every Wasserstein space.

use otlab::sampling::trial_rng;
use otlab::{wasserstein, FinitePointMeasure, SpaceDescriptor};

fn main() -> otlab::Result<()> {
    let mut rng = trial_rng(1, 0);
    let spaces = [
        SpaceDescriptor::line(),
        SpaceDescriptor::euclidean(3)?,
        SpaceDescriptor::sphere(3)?,
        SpaceDescriptor::discrete(6)?,
    ];
    for space in spaces {
        let (x, y) = (space.random_point(&mut rng)?, space.random_point(&mut rng)?);
        let d = space.distance(&x, &y)?;
        let (dx, dy) = (
            FinitePointMeasure::dirac(space, x)?,
            FinitePointMeasure::dirac(space, y)?,
        );
        print!("{space:<24} d = {d:.6}");
        for p in [1.0, 1.5, 2.0, 3.0] {
            print!("  W_{p} = {:.6}", wasserstein(&space, &dx, &dy, p)?);
        }
        println!();
    }
    Ok(())
}
