use nalgebra::Vector3;

use isoform::deform::{decompose, harmonic_normal_deformation, isometric_from_rotations};
use isoform::expr::{BoundaryExpr, Sample};
use isoform::generators::{cut_annulus, grid_disk, jessen, platonic, Platonic};
use isoform::isothermic::{isothermic_basis, vertex_mean_curvature_rate, Verdict};
use isoform::moebius::MoebiusMap;

#[test]
fn bent_disks_meet_the_naive_count() {
    // four equations per interior vertex leave at least |E_int| - 4|V_int| = |V_b| - 3 - |V_int|
    let flat = grid_disk(6).unwrap();
    let bent = flat
        .positions()
        .iter()
        .map(|p| p + Vector3::new(0.0, 0.0, (p.x * 3.0).cos() * p.y * p.y))
        .collect();
    let r = flat.with_positions(bent).unwrap();
    let basis = isothermic_basis(&r, 1e-8);
    let m = r.mesh();
    let count = m.interior_edges().len() as i64 - 4 * m.interior_vertices().len() as i64;
    assert_eq!(
        count,
        m.boundary_vertices().len() as i64 - 3 - m.interior_vertices().len() as i64
    );
    assert!(count > 0 && basis.nullity() as i64 >= count);
    assert!(basis.max_residual() < 1e-10);
}

#[test]
fn jessen_has_one_stress_and_octahedron_none() {
    assert_eq!(isothermic_basis(&jessen(), 1e-8).nullity(), 1);
    let octa = isothermic_basis(&platonic(Platonic::Octahedron), 1e-8);
    assert_eq!(octa.nullity(), 0);
    assert_eq!(octa.verdict, Verdict::NotIsothermic);
}

#[test]
fn stresses_survive_inversion_of_jessen() {
    let map: MoebiusMap = "translate 0.3 0.1 2.5; invert".parse().unwrap();
    let moved = map.apply(&jessen()).unwrap();
    assert_eq!(isothermic_basis(&moved, 1e-8).nullity(), 1);
}

#[test]
fn rotations_reconstruct_the_normal_field() {
    let r = grid_disk(6).unwrap();
    let u: Vec<f64> = r
        .positions()
        .iter()
        .map(|p| p.x * p.x - p.y * p.y)
        .collect();
    let hn = harmonic_normal_deformation(&r, &u).unwrap();
    let z = hn.field.z.clone().unwrap();
    let again = isometric_from_rotations(&r, &z, 1e-10).unwrap();
    // same rotations give the same field up to a translation
    let shift = hn.field.f_dot[0] - again.f_dot[0];
    for (a, b) in hn.field.f_dot.iter().zip(&again.f_dot) {
        assert!((a - b - shift).norm() < 1e-12);
    }
    let rates = vertex_mean_curvature_rate(&r, &z);
    assert!(rates.iter().all(|h| h.abs() < 1e-12));
}

#[test]
fn decomposition_rebuilds_edges() {
    let r = platonic(Platonic::Icosahedron);
    let f_dot: Vec<Vector3<f64>> = r
        .positions()
        .iter()
        .map(|p| Vector3::new(p.y * p.z, p.x, -p.z * p.z))
        .collect();
    let d = decompose(&r, &f_dot).unwrap();
    assert!(d.reconstruction < 1e-12);
    for (e, w) in d.w.iter().enumerate() {
        assert!(w.dot(&r.edge_vector(e)).abs() < 1e-12);
    }
}

#[test]
fn annulus_seam_sees_both_branches() {
    let a = cut_annulus(0.5, 2.0, 4, 12).unwrap();
    let theta = BoundaryExpr::parse("theta").unwrap();
    for &(lo, hi) in &a.seam {
        let (r0, t0) = a.polar[lo];
        let (r1, t1) = a.polar[hi];
        assert_eq!(r0, r1);
        let jump =
            theta.eval(Sample::polar(r1, t1)).unwrap() - theta.eval(Sample::polar(r0, t0)).unwrap();
        assert!((jump - std::f64::consts::TAU).abs() < 1e-14);
    }
}

#[test]
fn expressions_reject_unknown_functions() {
    assert!(BoundaryExpr::parse("foo(x)").is_err());
    assert!(BoundaryExpr::parse("log(r) + sqrt(x^2)").is_ok());
}
