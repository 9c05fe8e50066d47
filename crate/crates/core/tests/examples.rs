//! Every example runs to completion.

#[allow(dead_code)]
mod planar_disk_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/planar_disk.rs"
    ));
}

#[test]
fn planar_disk_example_runs() {
    planar_disk_example::run_example().expect("planar_disk example failed");
}

#[allow(dead_code)]
mod harmonic_curvature_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/harmonic_curvature.rs"
    ));
}

#[test]
fn harmonic_curvature_example_runs() {
    harmonic_curvature_example::run_example().expect("harmonic_curvature example failed");
}

#[allow(dead_code)]
mod moebius_transport_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/moebius_transport.rs"
    ));
}

#[test]
fn moebius_transport_example_runs() {
    moebius_transport_example::run_example().expect("moebius_transport example failed");
}

#[allow(dead_code)]
mod conformal_dimension_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/conformal_dimension.rs"
    ));
}

#[test]
fn conformal_dimension_example_runs() {
    conformal_dimension_example::run_example().expect("conformal_dimension example failed");
}

#[allow(dead_code)]
mod enneper_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/enneper.rs"));
}

#[test]
fn enneper_example_runs() {
    enneper_example::run_example().expect("enneper example failed");
}

#[allow(dead_code)]
mod catenoid_helicoid_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/catenoid_helicoid.rs"
    ));
}

#[test]
fn catenoid_helicoid_example_runs() {
    catenoid_helicoid_example::run_example().expect("catenoid_helicoid example failed");
}

#[allow(dead_code)]
mod quad_net_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/quad_net.rs"));
}

#[test]
fn quad_net_example_runs() {
    quad_net_example::run_example().expect("quad_net example failed");
}

#[allow(dead_code)]
mod cylinder_flex_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/cylinder_flex.rs"
    ));
}

#[test]
fn cylinder_flex_example_runs() {
    cylinder_flex_example::run_example().expect("cylinder_flex example failed");
}

#[allow(dead_code)]
mod angle_preservation_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/angle_preservation.rs"
    ));
}

#[test]
fn angle_preservation_example_runs() {
    angle_preservation_example::run_example().expect("angle_preservation example failed");
}

#[allow(dead_code)]
mod inscribed_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/inscribed.rs"
    ));
}

#[test]
fn inscribed_example_runs() {
    inscribed_example::run_example().expect("inscribed example failed");
}
