// Homogeneous cylinders: the map to edge lengths and mean curvature has a
// one-dimensional kernel, giving a non-trivial first-order flex.

use std::error::Error;

use isoform::generators::{cylinder_flex, homogeneous_cylinder, CylinderParams};
use isoform::isothermic::isothermic_basis;
use isoform::linalg::DEFAULT_RANK_TOL;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let p = CylinderParams::default();
    let c = homogeneous_cylinder(&p)?;
    println!(
        "edge classes {:.6?}, spread {:.1e}",
        c.lengths, c.class_spread
    );
    println!(
        "H at the center {:.6}, spread {:.1e}",
        c.center_h(),
        c.h_spread()
    );
    let flex = cylinder_flex(&p, 1e-5)?;
    let sv: Vec<String> = flex
        .singular_values
        .iter()
        .map(|s| format!("{s:.2e}"))
        .collect();
    println!(
        "rank of dmu {} with singular values [{}]",
        flex.rank,
        sv.join(", ")
    );
    println!("kernel {:.4?}", flex.kernel[0]);
    println!(
        "observed order {:.2}, rigid fit residual {:.2e}",
        flex.observed_order, flex.rigid_fit_residual
    );
    let basis = isothermic_basis(&c.realization, DEFAULT_RANK_TOL);
    println!("window nullity {}", basis.nullity());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
