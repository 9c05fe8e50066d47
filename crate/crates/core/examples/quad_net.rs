// An isothermic quad net, its Christoffel dual and the rotations that make
// every triangulation of it flex isometrically.

use std::error::Error;

use isoform::moebius::MoebiusMap;
use isoform::quadnet::{
    fit_factorization, quad_dual, subdivide_and_rotate, DiagonalPattern, QuadNet,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let grid = QuadNet::rectangle(&[0.0, 0.4, 1.0, 1.3, 2.1], &[0.0, 0.6, 0.9, 1.8])?;
    let map: MoebiusMap = "translate 0.3 -0.2 0.7; invert; scale 2".parse()?;
    let net = grid.map(|p| map.apply_point(p));
    let fact = fit_factorization(&net, 1e-10)?;
    println!("alpha {:.4?}", fact.alpha);
    println!("beta  {:.4?}", fact.beta);
    let dual = quad_dual(&net, &fact);
    println!(
        "dual closure {:.1e}, diagonal identities {:.1e}",
        dual.max_closure, dual.diagonal
    );
    for pattern in ["all-ne", "all-nw", "alternating", "random:11"] {
        let choices = pattern.parse::<DiagonalPattern>()?.choices(&net);
        let sub = subdivide_and_rotate(&net, &dual, &choices, 1e-10)?;
        println!(
            "{pattern:12} compatibility {:.1e}, max |Hdot| {:.1e}",
            sub.compatibility,
            sub.max_hdot()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
