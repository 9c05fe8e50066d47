use nalgebra::Vector3;

use isoform::moebius::MoebiusMap;
use isoform::quadnet::{
    center_configurations, cross_ratio, fit_factorization, quad_dual, quad_edge_rates,
    similarity_fit, subdivide_and_rotate, Diagonal, DiagonalPattern, QuadError, QuadNet,
};

fn curved() -> QuadNet {
    let map: MoebiusMap = "translate 0.2 0.1 0.9; invert".parse().unwrap();
    QuadNet::rectangle(&[0.0, 0.3, 0.9, 1.2, 2.0], &[0.0, 0.5, 0.7, 1.5])
        .unwrap()
        .map(|p| map.apply_point(p))
}

#[test]
fn doubled_spacing_gives_minus_four() {
    let net = QuadNet::rectangle(&[0.0, 2.0, 4.0], &[0.0, 1.0, 2.0]).unwrap();
    let f = fit_factorization(&net, 1e-12).unwrap();
    assert!(f.factorized);
    for a in &f.alpha {
        assert!((a + 4.0).abs() < 1e-13, "{a}");
    }
    assert!((f.beta[0] - 1.0).abs() < 1e-15);
}

#[test]
fn cross_ratio_is_moebius_invariant() {
    let p = |x: f64, y: f64| Vector3::new(x, y, 0.0);
    let quad = [p(0.0, 0.0), p(0.7, 0.0), p(0.7, 0.4), p(0.0, 0.4)];
    let map: MoebiusMap = "rotate 0 1 1 0.4; translate 1 -2 0.5; invert; scale 3"
        .parse()
        .unwrap();
    let moved: Vec<_> = quad.iter().map(|x| map.apply_point(x)).collect();
    let a = cross_ratio(&quad[0], &quad[1], &quad[2], &quad[3], 1e-12).unwrap();
    let b = cross_ratio(&moved[0], &moved[1], &moved[2], &moved[3], 1e-10).unwrap();
    assert!(b.real);
    assert!((a.q.w - b.q.w).abs() < 1e-12);
}

#[test]
fn perturbed_net_is_not_factorized() {
    let mut net = curved();
    let i = net.index(2, 1);
    net.points[i].z += 0.05;
    let f = fit_factorization(&net, 1e-10).unwrap();
    assert!(!f.factorized);
    assert!(f.max_imag > 1e-4);
}

#[test]
fn dual_of_dual_is_similar() {
    let net = curved();
    let dual = quad_dual(&net, &fit_factorization(&net, 1e-10).unwrap());
    assert!(dual.is_closed(1e-12));
    let back = quad_dual(&dual.net, &fit_factorization(&dual.net, 1e-9).unwrap());
    assert!(similarity_fit(&net.points, &back.net.points) < 1e-12);
}

#[test]
fn every_center_configuration_keeps_h() {
    let map: MoebiusMap = "translate -0.4 0.3 1; invert".parse().unwrap();
    let net = QuadNet::rectangle(&[0.0, 0.5, 1.6], &[0.0, 0.9, 1.2])
        .unwrap()
        .map(|p| map.apply_point(p));
    let dual = quad_dual(&net, &fit_factorization(&net, 1e-10).unwrap());
    let configs = center_configurations();
    assert_eq!(configs.len(), 16);
    for c in configs {
        let sub = subdivide_and_rotate(&net, &dual, &c, 1e-10).unwrap();
        assert!(sub.incompatible_edges.is_empty());
        assert!(sub.max_hdot() < 1e-10, "{c:?}: {}", sub.max_hdot());
    }
}

#[test]
fn quad_edge_rates_ignore_diagonals() {
    let net = curved();
    let dual = quad_dual(&net, &fit_factorization(&net, 1e-10).unwrap());
    let rates = |d: &[Diagonal]| {
        quad_edge_rates(&net, &subdivide_and_rotate(&net, &dual, d, 1e-10).unwrap())
    };
    let a = rates(&DiagonalPattern::AllNe.choices(&net));
    let b = rates(&DiagonalPattern::Random(17).choices(&net));
    let scale = a.iter().map(|v| v.norm()).fold(0.0, f64::max);
    for (x, y) in a.iter().zip(&b) {
        assert!((x - y).norm() < 1e-12 * scale);
    }
}

#[test]
fn diagonal_count_is_checked() {
    let net = curved();
    let dual = quad_dual(&net, &fit_factorization(&net, 1e-10).unwrap());
    let r = subdivide_and_rotate(&net, &dual, &[Diagonal::Ne], 1e-10);
    assert!(matches!(r, Err(QuadError::DiagonalCount { .. })));
}

#[test]
fn grid_json_round_trip() {
    let net = curved();
    let text = serde_json::to_string(&net).unwrap();
    assert!(text.contains("\"M\":5") && text.contains("\"N\":4"));
    let back: QuadNet = serde_json::from_str(&text).unwrap();
    assert_eq!(back, net);
}
