//! The distances between two measures on the line, and the chain
//! `KS ≤ Kuiper ≤ TV ≤ 1`.

use otlab::{FinitePointMeasure, Metric};

fn main() -> otlab::Result<()> {
    let mu = FinitePointMeasure::on_line(&[(0.0, 0.2), (1.0, 0.5), (3.0, 0.3)])?;
    let nu = FinitePointMeasure::on_line(&[(0.5, 0.4), (1.0, 0.1), (2.0, 0.5)])?;
    let metrics = [
        Metric::Wasserstein { p: 1.0 },
        Metric::Wasserstein { p: 2.0 },
        Metric::TotalVariation,
        Metric::KolmogorovSmirnov,
        Metric::Kuiper,
        Metric::Levy,
        Metric::LevyProkhorov,
    ];
    for m in metrics {
        println!("{:<8} {:.10}", m.to_string(), m.distance(&mu, &nu)?);
    }
    println!("W_1 as the integral of |F - G|: {:.10}", otlab::w1_cdf(&mu, &nu)?);

    let ks = otlab::ks_distance(&mu, &nu)?;
    let ku = otlab::kuiper_distance(&mu, &nu)?;
    let tv = otlab::tv_distance(&mu, &nu)?;
    assert!(ks <= ku && ku <= tv && tv <= 1.0);
    println!("KS {ks:.4} <= Kuiper {ku:.4} <= TV {tv:.4} <= 1");
    Ok(())
}
