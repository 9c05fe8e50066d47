// Discrete Enneper surface from `u = xy` on the boundary of a square.

use std::error::Error;

use isoform::expr::BoundaryExpr;
use isoform::minimal::{weierstrass, Domain, DomainMesh, WeierstrassConfig};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let domain = DomainMesh::new(Domain::Square { n: 20 })?;
    let surface = weierstrass(
        &domain,
        &BoundaryExpr::parse("x*y")?,
        &WeierstrassConfig::default(),
    )?;
    let rep = &surface.report;
    println!("faces: {}", surface.dual.points.len());
    println!("parallelism: {:.1e} rad", rep.dual.parallel.max_angle);
    println!("closure:     {:.1e}", rep.dual.closure);
    println!("duality:     {:.1e}", rep.dual.duality);
    println!("transport:   {:.1e}", rep.transport_residual);
    let obj = surface.dual.to_obj();
    println!("dual OBJ: {} lines", obj.lines().count());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
