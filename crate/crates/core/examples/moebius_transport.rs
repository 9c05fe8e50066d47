// Carries a self-stress of a planar grid through an inversion and checks the
// defining equations on the image.

use std::error::Error;

use isoform::generators::grid_disk;
use isoform::isothermic::isothermic_basis;
use isoform::linalg::DEFAULT_RANK_TOL;
use isoform::moebius::{quaternion_transport_check, transport_stress, MoebiusMap};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let r = grid_disk(6)?;
    let basis = isothermic_basis(&r, DEFAULT_RANK_TOL);
    let k = &basis.stresses[0].values;
    let map: MoebiusMap = "translate 0 0 2; invert".parse()?;
    let moved = transport_stress(&r, k, &map)?;
    println!("chain: {map}");
    println!("residuals on the image: {:?}", moved.residuals);
    println!("largest inversion factor: {:.3}", moved.amplification);
    let shifted = MoebiusMap::new(vec![]).then(isoform::moebius::Primitive::Translate(
        nalgebra::Vector3::new(0.0, 0.0, 2.0),
    ));
    let q = quaternion_transport_check(&shifted.apply(&r)?, k)?;
    println!("quaternion identity mismatch: {q:.1e}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
