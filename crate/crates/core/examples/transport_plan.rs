//! Exact optimal transport with a dual certificate, and the plan file
//! written by `otlab transport`.

use otlab::json::PlanFile;
use otlab::transport::optimal_plan;
use otlab::{cost_matrix, FinitePointMeasure, Point, SpaceDescriptor};

fn main() -> otlab::Result<()> {
    let plane = SpaceDescriptor::euclidean(2)?;
    let pt = |x: f64, y: f64| Point::Coords(vec![x, y]);
    let mu = FinitePointMeasure::new(
        plane,
        vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(0.0, 2.0)],
        vec![0.5, 0.3, 0.2],
    )?;
    let nu = FinitePointMeasure::new(plane, vec![pt(1.0, 1.0), pt(-1.0, 0.0)], vec![0.6, 0.4])?;

    let p = 2.0;
    let result = optimal_plan(&plane, &mu, &nu, p)?;
    let cert = result.certificate(&cost_matrix(&plane, &mu, &nu, p)?);
    println!("W_2^2 = {:.12}", result.cost);
    println!("plan:\n{:.4}", result.plan.mass());
    println!("duals u = {:?}, v = {:?}", result.dual_u, result.dual_v);
    println!(
        "certificate: feasibility {:.1e}, slackness {:.1e}, duality gap {:.1e}",
        cert.feasibility, cert.slackness, cert.duality_gap
    );
    println!(
        "{}",
        serde_json::to_string_pretty(&PlanFile::from_result(&result, p)).unwrap()
    );
    Ok(())
}
