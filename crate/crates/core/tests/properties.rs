use nalgebra::Vector3;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use isoform::deform::{kernel_generator, lcr_operator};
use isoform::expr::Sample;
use isoform::generators::{grid_disk, platonic, rect_grid, Platonic};
use isoform::harmonic::{solve_dirichlet, DEFAULT_TOLERANCE};
use isoform::isothermic::isothermic_basis;
use isoform::mesh::{integrate_dual, parse_obj, write_obj_string, DualOneForm};
use isoform::minimal::relative_residual;
use isoform::moebius::{lift, lorentz_defect, minkowski, random_map, transport_stress};
use isoform::quadnet::{fit_factorization, QuadNet};

fn spacings(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.2f64..1.5, n).prop_map(|steps| {
        std::iter::once(0.0)
            .chain(steps.iter().scan(0.0, |acc, s| {
                *acc += s;
                Some(*acc)
            }))
            .collect()
    })
}

fn vec3(scale: f64) -> impl Strategy<Value = Vector3<f64>> {
    (-scale..scale, -scale..scale, -scale..scale).prop_map(|(x, y, z)| Vector3::new(x, y, z))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lifts_are_null(p in vec3(10.0)) {
        let l = lift(&p);
        prop_assert!(minkowski(&l, &l).abs() < 1e-12 * (1.0 + p.norm_squared()));
    }

    #[test]
    fn random_maps_are_lorentz(seed in any::<u64>()) {
        let pts = grid_disk(3).unwrap().positions().to_vec();
        let map = random_map(&mut ChaCha8Rng::seed_from_u64(seed), &pts, 0.3);
        let l = map.lorentz();
        prop_assert!(lorentz_defect(&l) < 1e-9 * l.abs().max().powi(2));
        for p in &pts {
            let direct = map.apply_point(p);
            prop_assert!((direct - map.apply_projective(p)).norm() < 1e-9 * (1.0 + direct.norm()));
        }
    }

    #[test]
    fn stresses_transport_through_random_maps(seed in any::<u64>()) {
        let r = grid_disk(4).unwrap();
        let basis = isothermic_basis(&r, 1e-8);
        let map = random_map(&mut ChaCha8Rng::seed_from_u64(seed), r.positions(), 0.3);
        for s in &basis.stresses {
            let t = transport_stress(&r, &s.values, &map).unwrap();
            let kmax = t.k.iter().map(|v| v.abs()).fold(0.0, f64::max);
            prop_assert!(relative_residual(&t.residuals, kmax, t.realization.scale()) < 1e-8);
        }
    }

    #[test]
    fn obj_round_trip_is_exact(pts in prop::collection::vec(vec3(1e3), 9)) {
        let r = grid_disk(3).unwrap().with_positions(pts).unwrap();
        let back = parse_obj(&write_obj_string(&r)).unwrap();
        prop_assert_eq!(back.positions(), r.positions());
        prop_assert_eq!(back.mesh().faces(), r.mesh().faces());
    }

    #[test]
    fn exact_dual_forms_close_and_integrate_back(z in prop::collection::vec(vec3(5.0), 32)) {
        let r = grid_disk(5).unwrap();
        let m = r.mesh();
        let tau = DualOneForm::exact(m, &z);
        prop_assert!(tau.closedness(m).max < 1e-12);
        let integ = integrate_dual(m, &tau);
        let shift = z[0] - integ.values[0];
        for (a, b) in z.iter().zip(&integ.values) {
            prop_assert!((a - b - shift).norm() < 1e-12);
        }
    }

    #[test]
    fn harmonic_solver_reproduces_linear_data(
        xs in spacings(4), ys in spacings(4), a in -3.0f64..3.0, b in -3.0f64..3.0, c in -3.0f64..3.0
    ) {
        let r = rect_grid(&xs, &ys).unwrap();
        let g: Vec<f64> = r.positions().iter().map(|p| a * p.x + b * p.y + c).collect();
        let u = solve_dirichlet(&r, |i| g[i], DEFAULT_TOLERANCE).unwrap();
        for (x, y) in u.u.iter().zip(&g) {
            prop_assert!((x - y).abs() < 1e-10 * (1.0 + y.abs()));
        }
    }

    #[test]
    fn lcr_kills_vertex_sums(u in prop::collection::vec(-1.0f64..1.0, 12)) {
        let m = platonic(Platonic::Icosahedron).mesh().clone();
        let l = lcr_operator(&m);
        let sigma = kernel_generator(&m) * nalgebra::DVector::from_column_slice(&u);
        let image = l.apply(sigma.as_slice());
        prop_assert!(image.iter().all(|v| v.abs() < 1e-13));
    }

    #[test]
    fn moebius_images_of_grids_factorize(xs in spacings(3), ys in spacings(3), seed in any::<u64>()) {
        let net = QuadNet::rectangle(&xs, &ys).unwrap();
        let map = random_map(&mut ChaCha8Rng::seed_from_u64(seed), &net.points, 0.3);
        let f = fit_factorization(&net.map(|p| map.apply_point(p)), 1e-8).unwrap();
        prop_assert!(f.factorized, "residual {} imag {}", f.residual, f.max_imag);
    }

    #[test]
    fn planar_theta_stays_in_range(x in -10.0f64..10.0, y in -10.0f64..10.0) {
        let s = Sample::planar(x, y);
        prop_assert!((0.0..std::f64::consts::TAU).contains(&s.theta));
        prop_assert!((s.r - x.hypot(y)).abs() < 1e-15 * (1.0 + s.r));
    }
}
