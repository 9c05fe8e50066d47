use nalgebra::Vector3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use isoform::expr::BoundaryExpr;
use isoform::mesh::{integrate_dual, integrate_dual_from, DualOneForm};
use isoform::minimal::{
    christoffel_dual, duality_sums, reciprocal_parallel_check, weierstrass, Domain, DomainMesh,
    DualRealization, MinimalError, MinimalSurface, WeierstrassConfig,
};

fn build(domain: Domain, data: &str) -> MinimalSurface {
    let d = DomainMesh::new(domain).unwrap();
    weierstrass(
        &d,
        &BoundaryExpr::parse(data).unwrap(),
        &WeierstrassConfig::default(),
    )
    .unwrap()
}

fn tau_of(s: &MinimalSurface) -> DualOneForm<Vector3<f64>> {
    let m = s.gauss.mesh();
    DualOneForm::from_fn(m, |e| {
        s.k[m.interior_index(e).unwrap()] * s.gauss.edge_vector(e)
    })
}

#[test]
fn dual_is_recovered_from_the_stress() {
    let s = build(Domain::Square { n: 12 }, "x*y");
    let again = christoffel_dual(&s.gauss, &tau_of(&s), 1e-8).unwrap();
    let shift = s.dual.points[0] - again.dual.points[0];
    let worst = s
        .dual
        .points
        .iter()
        .zip(&again.dual.points)
        .map(|(a, b)| (a - b - shift).norm())
        .fold(0.0, f64::max);
    assert!(worst < 1e-12 * s.dual.scale(), "{worst}");
}

#[test]
fn root_choice_only_translates_the_dual() {
    let s = build(Domain::Square { n: 10 }, "x*y - x");
    let m = s.gauss.mesh();
    let tau = tau_of(&s);
    let base = integrate_dual(m, &tau);
    for first in [1, m.face_count() / 2, m.face_count() - 1] {
        let moved = integrate_dual_from(m, &tau, first);
        assert_eq!(moved.roots[0], first);
        let shift = base.values[first] - moved.values[first];
        for (a, b) in base.values.iter().zip(&moved.values) {
            assert!((a - b - shift).norm() < 1e-12 * s.dual.scale());
        }
    }
}

#[test]
fn noisy_dual_fails_the_checks() {
    let s = build(Domain::Square { n: 10 }, "x*y");
    let clean = reciprocal_parallel_check(&s.gauss, &s.dual);
    assert!(clean.max_angle < 1e-10);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let h = 1e-3 * s.dual.scale();
    let noisy = DualRealization {
        mesh: s.dual.mesh.clone(),
        points: s
            .dual
            .points
            .iter()
            .map(|p| {
                p + h * Vector3::new(
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                )
            })
            .collect(),
    };
    assert!(reciprocal_parallel_check(&s.gauss, &noisy).max_angle > 1e-4);
    assert!(duality_sums(&s.gauss, &noisy).0 > 1e-5);
}

#[test]
fn annulus_form_is_closed_and_catenoid_closes_up() {
    let s = build(Domain::annulus(0.5, 2.0, 24), "theta");
    let m = s.gauss.mesh();
    let tau = tau_of(&s);
    assert!(tau.closedness(m).max < 1e-10 * tau.max_magnitude());
    let period = s.report.period.as_ref().unwrap();
    assert!(period.vector.norm() < 1e-10 * s.dual.scale());
}

#[test]
fn helicoid_period_is_axial() {
    let s = build(Domain::annulus(0.5, 2.0, 24), "log(r)");
    let p = s.report.period.as_ref().unwrap().vector;
    assert!(p.z.abs() > 1.0);
    assert!(p.xy().norm() < 1e-10 * p.z.abs());
}

#[test]
fn harmonic_linear_data_have_no_surface() {
    let d = DomainMesh::new(Domain::Square { n: 8 }).unwrap();
    let r = weierstrass(
        &d,
        &BoundaryExpr::parse("2*x - y + 1").unwrap(),
        &WeierstrassConfig::default(),
    );
    assert!(matches!(r, Err(MinimalError::Trivial)));
}

#[test]
fn scaling_the_data_scales_the_surface() {
    let a = build(Domain::Square { n: 8 }, "x*y");
    let b = build(Domain::Square { n: 8 }, "3*x*y");
    let ratio = b.dual.scale() / a.dual.scale();
    assert!((ratio - 3.0).abs() < 1e-9, "{ratio}");
}
