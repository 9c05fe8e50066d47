// Planar triangulated disks carry at least `|V_b| - 3` independent self-stresses.

use std::error::Error;

use isoform::generators::grid_disk;
use isoform::isothermic::isothermic_basis;
use isoform::linalg::DEFAULT_RANK_TOL;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for n in [3, 5, 9] {
        let r = grid_disk(n)?;
        let boundary = r.mesh().boundary_vertices().len();
        let basis = isothermic_basis(&r, DEFAULT_RANK_TOL);
        println!(
            "{n}x{n} grid: nullity {} (bound {}), verdict {:?}, max residual {:.1e}",
            basis.nullity(),
            boundary - 3,
            basis.verdict,
            basis.max_residual()
        );
        if basis.nullity() < boundary - 3 {
            return Err(format!("nullity below |V_b| - 3 on the {n}x{n} grid").into());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
