// Infinitesimal Möbius flows keep circumcircle and circumsphere angles fixed;
// a generic vector field does not. The test mesh is a bumpy grid, so no four
// neighbouring vertices share a sphere by accident.

use std::error::Error;

use nalgebra::Vector3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use isoform::generators::grid_disk;
use isoform::moebius::{angle_rate, AngleKind, MoebiusVelocity};

fn max_abs(v: &[Option<f64>]) -> f64 {
    v.iter().flatten().fold(0.0, |m, x| m.max(x.abs()))
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let flat = grid_disk(5)?;
    let bumped = flat
        .positions()
        .iter()
        .map(|p| p + Vector3::new(0.0, 0.0, 0.3 * (2.0 * p.x).sin() * (3.0 * p.y).cos()))
        .collect();
    let r = flat.with_positions(bumped)?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let flow = MoebiusVelocity::random(&mut rng).field(&r);
    let noise: Vec<Vector3<f64>> = (0..r.positions().len())
        .map(|_| {
            Vector3::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            )
        })
        .collect();
    for kind in [AngleKind::Circles, AngleKind::Spheres] {
        let moebius = max_abs(&angle_rate(&r, &flow, kind, 1e-5)?);
        let generic = max_abs(&angle_rate(&r, &noise, kind, 1e-5)?);
        println!("{kind:?}: Möbius flow {moebius:.1e}, random field {generic:.1e}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
