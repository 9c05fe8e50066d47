// Dimension of infinitesimal conformal deformations of closed meshes,
// compared with the bound `|V| - 6g + 6`.

use std::error::Error;

use isoform::deform::conformal_dimension;
use isoform::generators::{jessen, platonic, Platonic};
use isoform::linalg::DEFAULT_RANK_TOL;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let meshes = [
        ("tetrahedron", platonic(Platonic::Tetrahedron)),
        ("octahedron", platonic(Platonic::Octahedron)),
        ("icosahedron", platonic(Platonic::Icosahedron)),
        ("jessen", jessen()),
    ];
    for (name, r) in &meshes {
        let d = conformal_dimension(r, DEFAULT_RANK_TOL)?;
        println!(
            "{name:12} dim {:2}  bound {:2}  isothermic {}",
            d.dimension, d.bound, d.isothermic
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
