// A normal deformation `u N` of a planar mesh keeps every vertex mean
// curvature fixed exactly when `u` is discrete harmonic.

use std::error::Error;

use isoform::deform::{edge_length_rates, harmonic_normal_deformation};
use isoform::generators::square_domain;
use isoform::harmonic::{solve_dirichlet, DEFAULT_TOLERANCE};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let r = square_domain(15)?;
    let xy: Vec<f64> = r.positions().iter().map(|p| p.x * p.y).collect();
    let u = solve_dirichlet(&r, |i| xy[i], DEFAULT_TOLERANCE)?;
    let hn = harmonic_normal_deformation(&r, &u.u)?;
    let stretch = edge_length_rates(&r, &hn.field.f_dot)
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()));
    println!(
        "harmonic u: max |Hdot| = {:.2e}, max length rate = {:.2e}",
        hn.max_hdot(),
        stretch
    );

    let x2: Vec<f64> = r.positions().iter().map(|p| p.x * p.x).collect();
    let bent = harmonic_normal_deformation(&r, &x2)?;
    println!("u = x^2:    max |Hdot| = {:.2e}", bent.max_hdot());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
