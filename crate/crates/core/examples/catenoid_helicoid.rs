// Minimal surfaces over a cut annulus. Angular boundary data close up into a
// catenoid; radial data `log r` open up along the axis into a helicoid.

use std::error::Error;

use isoform::expr::BoundaryExpr;
use isoform::minimal::{screw_symmetry, weierstrass, Domain, DomainMesh, WeierstrassConfig};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let domain = DomainMesh::new(Domain::annulus(0.5, 2.0, 32))?;
    for (name, data) in [("catenoid", "theta"), ("helicoid", "log(r)")] {
        let s = weierstrass(
            &domain,
            &BoundaryExpr::parse(data)?,
            &WeierstrassConfig::default(),
        )?;
        let sym = screw_symmetry(&s).expect("annulus domain");
        let period = s
            .report
            .period
            .as_ref()
            .map(|p| p.vector)
            .unwrap_or_default();
        println!("{name} (u = {data})");
        println!("  max residual {:.1e}", s.report.max_residual());
        println!("  period across the cut {:.3?}", period.as_slice());
        println!(
            "  rotation symmetry {:.1e}, axial shift per step {:.3e}",
            sym.deviation, sym.translation.z
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
