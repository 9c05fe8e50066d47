// Inscribed meshes are isothermic exactly when they flex infinitesimally.

use std::error::Error;

use isoform::generators::{jessen, platonic, Platonic};
use isoform::isothermic::inscribed_diagnostics;
use isoform::linalg::DEFAULT_RANK_TOL;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for (name, r) in [
        ("tetrahedron", platonic(Platonic::Tetrahedron)),
        ("octahedron", platonic(Platonic::Octahedron)),
        ("icosahedron", platonic(Platonic::Icosahedron)),
        ("jessen", jessen()),
    ] {
        let d = inscribed_diagnostics(&r, DEFAULT_RANK_TOL)?;
        println!(
            "{name:12} corank {:2}  flexible {:5}  verdict {:?}  agree {}",
            d.rigidity_corank, d.flexible, d.verdict, d.agree
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
