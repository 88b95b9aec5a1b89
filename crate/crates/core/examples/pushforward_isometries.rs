//! Isometries of the base space act on measures by push-forward and keep
//! every Wasserstein distance.

use otlab::lab::lift_isometry;
use otlab::sampling::{random_measure, trial_rng};
use otlab::{random_isometry, Metric, SpaceDescriptor};

fn main() -> otlab::Result<()> {
    let mut rng = trial_rng(3, 0);
    for space in [
        SpaceDescriptor::euclidean(2)?,
        SpaceDescriptor::sphere(3)?,
        SpaceDescriptor::discrete(5)?,
    ] {
        let psi = random_isometry(&space, &mut rng)?;
        println!("{space}: {}", psi.describe());
        let phi = lift_isometry(psi);
        let mu = random_measure(&space, 4, &mut rng)?;
        let nu = random_measure(&space, 3, &mut rng)?;
        for p in [1.0, 2.0, 3.0] {
            let m = Metric::Wasserstein { p };
            let before = m.distance(&mu, &nu)?;
            let after = m.distance(&phi.apply(&mu)?, &phi.apply(&nu)?)?;
            println!("  W_{p}: {before:.12} -> {after:.12}");
        }
    }
    Ok(())
}
