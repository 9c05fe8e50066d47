//! Christoffel duals and discrete minimal surfaces.
//!
//! A harmonic function `u` on a planar mesh gives face rotations `Z` whose
//! differential `τ = dZ` is an isothermic dual 1-form. Carrying `τ` to the
//! sphere by inverse stereographic projection and integrating it over the dual
//! graph yields a minimal surface `f*` with Gauss map the projected mesh.

use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::sync::Arc;

use nalgebra::{Rotation3, Vector3};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::deform::{harmonic_normal_deformation, DeformError};
use crate::expr::{BoundaryExpr, ExprError, Sample};
use crate::generators::{cut_annulus, square_domain, GenError};
use crate::harmonic::{solve_with_seam, HarmonicError, SeamPair, DEFAULT_TOLERANCE};
use crate::isothermic::{stress_residuals, vertex_mean_curvature_rate, StressResiduals};
use crate::mesh::{integrate_dual, DualOneForm, Realization, SurfaceMesh};
use crate::moebius::{transport_stress, MoebiusError, MoebiusMap, Primitive};

/// Default gate for the relative residuals of the pipeline.
pub const DEFAULT_GATE: f64 = 1e-8;

/// Dual edges shorter than this times the longest one count as zero length.
pub const ZERO_DUAL_EDGE: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum MinimalError {
    #[error("generator: {0}")]
    Gen(#[from] GenError),
    #[error("boundary: {0}")]
    Expr(#[from] ExprError),
    #[error("harmonic: {0}")]
    Harmonic(#[from] HarmonicError),
    #[error("deform: {0}")]
    Deform(#[from] DeformError),
    #[error("moebius: {0}")]
    Moebius(#[from] MoebiusError),
    #[error("boundary value at vertex {vertex} is not finite")]
    NonFinite { vertex: usize },
    #[error("dual 1-form vanishes: the dual would be constant")]
    Trivial,
    #[error("dual graph has {0} components")]
    Disconnected(usize),
    #[error("dual 1-form has {got} values but the mesh has {expected} interior edges")]
    Length { expected: usize, got: usize },
    #[error("dual 1-form is not isothermic for this realization (relative residual {0:e})")]
    NotIsothermic(f64),
    #[error("{stage} residual {value:e} exceeds {limit:e}")]
    Gate {
        stage: &'static str,
        value: f64,
        limit: f64,
    },
}

/// Worst angle between `df*(e*)` and `df(e)`, taken between lines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParallelCheck {
    pub max_angle: f64,
    pub worst_edge: Option<usize>,
    /// Dual edges of zero length, left out of the maximum.
    pub zero_length: usize,
}

/// Face points of a dual realization and its edge vectors.
#[derive(Debug, Clone)]
pub struct DualRealization {
    pub mesh: Arc<SurfaceMesh>,
    /// `f*` per face.
    pub points: Vec<Vector3<f64>>,
}

impl DualRealization {
    /// `f*(left) - f*(right)` for an interior edge.
    pub fn edge_vector(&self, e: usize) -> Option<Vector3<f64>> {
        let r = self.mesh.right_face(e)?;
        Some(self.points[self.mesh.left_face(e)] - self.points[r])
    }

    /// Diagonal of the bounding box of `f*`.
    pub fn scale(&self) -> f64 {
        let mut lo = Vector3::repeat(f64::INFINITY);
        let mut hi = Vector3::repeat(f64::NEG_INFINITY);
        for p in &self.points {
            lo = lo.inf(p);
            hi = hi.sup(p);
        }
        (hi - lo).norm()
    }

    /// OBJ with one vertex per face and one polygon around each interior primal vertex.
    pub fn to_obj(&self) -> String {
        let mut out = String::new();
        for p in &self.points {
            writeln!(out, "v {} {} {}", p.x + 0.0, p.y + 0.0, p.z + 0.0).unwrap();
        }
        for &i in self.mesh.interior_vertices() {
            out.push('f');
            for f in face_cycle(&self.mesh, i) {
                write!(out, " {}", f + 1).unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// Faces around an interior vertex in rotational order.
pub fn face_cycle(mesh: &SurfaceMesh, i: usize) -> Vec<usize> {
    let (e, _) = mesh.star(i)[0];
    let edge = mesh.edge(e);
    let start = if edge.tail == i {
        edge.left
    } else {
        edge.right.expect("interior vertex has interior edges")
    };
    let mut out = Vec::new();
    let mut h = start;
    loop {
        out.push(mesh.halfedge(h).face);
        // prev(h) ends at i; its twin leaves i in the next face
        match mesh.halfedge(mesh.prev(h)).twin {
            Some(t) if t != start => h = t,
            _ => break,
        }
    }
    out
}

/// Residuals of a Christoffel dual, all relative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualReport {
    /// Max non-tree mismatch over `|τ|∞`.
    pub closure: f64,
    pub parallel: ParallelCheck,
    /// `max_i |sum_j <df, df*>| / sum_j |df| |df*|`.
    pub duality: f64,
    /// The same sums unnormalized.
    pub duality_abs: f64,
    pub dual_components: usize,
}

/// A Christoffel dual with its residuals.
#[derive(Debug, Clone)]
pub struct ChristoffelDual {
    pub dual: DualRealization,
    pub report: DualReport,
}

/// Edge stress `k = <τ, df>/ℓ²` on interior edges.
pub fn stress_of_form(source: &Realization, tau: &DualOneForm<Vector3<f64>>) -> Vec<f64> {
    let m = source.mesh();
    m.interior_edges()
        .iter()
        .map(|&e| {
            let d = source.edge_vector(e);
            tau.on_edge(m, e).unwrap().dot(&d) / d.norm_squared()
        })
        .collect()
}

/// Stress residuals made scale free: closedness over `|k|∞ s`, the quadratic ones over `|k|∞ s²`.
pub fn relative_residual(res: &StressResiduals, kmax: f64, scale: f64) -> f64 {
    if kmax == 0.0 {
        return 0.0;
    }
    (res.closedness / (kmax * scale))
        .max(res.parallelism / (kmax * scale * scale))
        .max(res.pairing / (kmax * scale * scale))
}

/// Integrates `τ` over the dual graph, after checking it against the defining equations.
///
/// `tol` bounds the relative residual of `τ` on `source`.
pub fn christoffel_dual(
    source: &Realization,
    tau: &DualOneForm<Vector3<f64>>,
    tol: f64,
) -> Result<ChristoffelDual, MinimalError> {
    let m = source.mesh();
    if tau.values().len() != m.interior_edges().len() {
        return Err(MinimalError::Length {
            expected: m.interior_edges().len(),
            got: tau.values().len(),
        });
    }
    let tmax = tau.max_magnitude();
    if tmax == 0.0 {
        return Err(MinimalError::Trivial);
    }
    // the normal component of τ does not enter k, so check parallelism on τ itself
    let k = stress_of_form(source, tau);
    let kmax = k.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let mut res = stress_residuals(m, source.positions(), &k);
    let off_line = m
        .interior_edges()
        .iter()
        .map(|&e| {
            tau.on_edge(m, e)
                .unwrap()
                .cross(&source.edge_vector(e))
                .norm()
        })
        .fold(0.0, f64::max);
    res.parallelism = res.parallelism.max(off_line);
    let rel = relative_residual(&res, kmax.max(tmax / source.scale()), source.scale());
    if rel > tol {
        return Err(MinimalError::NotIsothermic(rel));
    }
    let integ = integrate_dual(m, tau);
    if integ.components() != 1 {
        return Err(MinimalError::Disconnected(integ.components()));
    }
    let dual = DualRealization {
        mesh: source.mesh_arc().clone(),
        points: integ.values,
    };
    let parallel = reciprocal_parallel_check(source, &dual);
    let (duality, duality_abs) = duality_sums(source, &dual);
    Ok(ChristoffelDual {
        report: DualReport {
            closure: integ.closure / tmax,
            parallel,
            duality,
            duality_abs,
            dual_components: 1,
        },
        dual,
    })
}

/// Largest angle between `df*(e*)` and `df(e)` as lines, over interior edges.
pub fn reciprocal_parallel_check(source: &Realization, dual: &DualRealization) -> ParallelCheck {
    let m = source.mesh();
    let dmax = m
        .interior_edges()
        .iter()
        .map(|&e| dual.edge_vector(e).unwrap().norm())
        .fold(0.0, f64::max);
    let mut out = ParallelCheck {
        max_angle: 0.0,
        worst_edge: None,
        zero_length: 0,
    };
    for &e in m.interior_edges() {
        let a = dual.edge_vector(e).unwrap();
        if a.norm() <= ZERO_DUAL_EDGE * dmax {
            out.zero_length += 1;
            continue;
        }
        let b = source.edge_vector(e);
        let angle = a.cross(&b).norm().atan2(a.dot(&b).abs());
        if out.worst_edge.is_none() || angle > out.max_angle {
            out.max_angle = angle;
            out.worst_edge = Some(e);
        }
    }
    out
}

/// `(relative, absolute)` maxima of `sum_j <df(e_ij), df*(e*_ij)>` over interior vertices.
pub fn duality_sums(source: &Realization, dual: &DualRealization) -> (f64, f64) {
    let m = source.mesh();
    let sums = vertex_mean_curvature_rate(source, &dual.points);
    let mut rel: f64 = 0.0;
    let mut abs: f64 = 0.0;
    for (c, &i) in m.interior_vertices().iter().enumerate() {
        let norm: f64 = m
            .star(i)
            .iter()
            .map(|&(e, _)| source.edge_length(e) * dual.edge_vector(e).unwrap().norm())
            .sum();
        abs = abs.max(sums[c].abs());
        if norm > 0.0 {
            rel = rel.max(sums[c].abs() / norm);
        }
    }
    (rel, abs)
}

/// Planar parameter domain of the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Domain {
    /// `[-1/2, 1/2]²` with `n × n` vertices.
    Square { n: usize },
    /// Annulus cut along the positive x-axis.
    Annulus {
        r_inner: f64,
        r_outer: f64,
        n_r: usize,
        n_theta: usize,
    },
}

impl Domain {
    /// Annulus whose cells are roughly square for `n_theta` segments.
    pub fn annulus(r_inner: f64, r_outer: f64, n_theta: usize) -> Self {
        let n_r = ((n_theta as f64) * (r_outer / r_inner).ln() / TAU).ceil() as usize + 1;
        Domain::Annulus {
            r_inner,
            r_outer,
            n_r: n_r.max(3),
            n_theta,
        }
    }
}

/// A meshed domain with evaluation points and seam gluing.
#[derive(Debug, Clone)]
pub struct DomainMesh {
    pub domain: Domain,
    pub realization: Realization,
    pub samples: Vec<Sample>,
    /// `(θ = 0 copy, θ = 2π copy)` strictly inside the annulus.
    pub seam: Vec<(usize, usize)>,
}

impl DomainMesh {
    pub fn new(domain: Domain) -> Result<Self, MinimalError> {
        match domain {
            Domain::Square { n } => {
                let realization = square_domain(n)?;
                let samples = realization
                    .positions()
                    .iter()
                    .map(|p| Sample::planar(p.x, p.y))
                    .collect();
                Ok(Self {
                    domain,
                    realization,
                    samples,
                    seam: Vec::new(),
                })
            }
            Domain::Annulus {
                r_inner,
                r_outer,
                n_r,
                n_theta,
            } => {
                let a = cut_annulus(r_inner, r_outer, n_r, n_theta)?;
                Ok(Self {
                    domain,
                    samples: a.polar.iter().map(|&(r, t)| Sample::polar(r, t)).collect(),
                    seam: a.inner_seam().to_vec(),
                    realization: a.realization,
                })
            }
        }
    }
}

/// Settings for [`weierstrass`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeierstrassConfig {
    /// Circle that the stereographic projection sends to the equator.
    pub radius: f64,
    pub harmonic_tol: f64,
    /// Bound on the relative transport and closure residuals.
    pub gate: f64,
}

impl Default for WeierstrassConfig {
    fn default() -> Self {
        Self {
            radius: 1.0,
            harmonic_tol: DEFAULT_TOLERANCE,
            gate: DEFAULT_GATE,
        }
    }
}

/// Where a minimal surface came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub domain: Domain,
    pub vertices: usize,
    pub faces: usize,
    pub boundary: String,
    pub config: WeierstrassConfig,
}

/// Mismatch of `f*` across the annulus cut, per ring gap.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Period {
    /// Mean period vector.
    pub vector: Vector3<f64>,
    /// Largest deviation of a single ring gap from the mean.
    pub spread: f64,
}

/// Full residual report of the pipeline; every entry is relative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub harmonic_residual: f64,
    pub harmonic_tolerance: f64,
    /// `max |Ḣ_i|` of the planar normal deformation over `|Z|∞ s`.
    pub hdot: f64,
    /// `τ = dZ` on the planar mesh.
    pub planar_residual: f64,
    pub transport_residual: f64,
    pub amplification: f64,
    pub sphere_deviation: f64,
    pub dual: DualReport,
    pub period: Option<Period>,
}

impl PipelineReport {
    /// Largest residual that should vanish.
    pub fn max_residual(&self) -> f64 {
        self.planar_residual
            .max(self.transport_residual)
            .max(self.dual.closure)
            .max(self.dual.parallel.max_angle)
            .max(self.dual.duality)
    }
}

/// Output of [`weierstrass`].
#[derive(Debug, Clone)]
pub struct MinimalSurface {
    pub planar: Realization,
    pub u: Vec<f64>,
    /// Face rotations of the planar normal deformation.
    pub z: Vec<Vector3<f64>>,
    pub gauss: Realization,
    /// Transported stress on the sphere.
    pub k: Vec<f64>,
    pub dual: DualRealization,
    pub report: PipelineReport,
    pub provenance: Provenance,
}

fn gate(stage: &'static str, value: f64, limit: f64) -> Result<(), MinimalError> {
    if value <= limit {
        Ok(())
    } else {
        Err(MinimalError::Gate {
            stage,
            value,
            limit,
        })
    }
}

/// Factor by which `map` multiplies the stress on the edge `pq`.
fn transport_factor(map: &MoebiusMap, p: Vector3<f64>, q: Vector3<f64>) -> f64 {
    let (mut p, mut q) = (p, q);
    let mut factor = 1.0;
    for s in &map.steps {
        if *s == Primitive::Invert {
            factor *= p.norm_squared() * q.norm_squared();
        }
        p = s.apply(&p);
        q = s.apply(&q);
    }
    factor
}

/// Harmonic function → face rotations → stereographic transport → Christoffel dual.
pub fn weierstrass(
    domain: &DomainMesh,
    boundary: &BoundaryExpr,
    config: &WeierstrassConfig,
) -> Result<MinimalSurface, MinimalError> {
    let r = &domain.realization;
    let m = r.mesh();
    let g = boundary.eval_all(domain.samples.iter().copied())?;
    for &v in &m.boundary_vertices() {
        if !g[v].is_finite() {
            return Err(MinimalError::NonFinite { vertex: v });
        }
    }
    let seam: Vec<SeamPair> = domain
        .seam
        .iter()
        .map(|&(a, b)| SeamPair {
            a,
            b,
            jump: g[b] - g[a],
        })
        .collect();
    let harmonic = solve_with_seam(r, |i| g[i], &seam, config.harmonic_tol)?;
    let normal = harmonic_normal_deformation(r, &harmonic.u)?;
    let z = normal
        .field
        .z
        .clone()
        .expect("normal deformation has rotations");
    let scale = r.scale();
    let zmax = z.iter().map(|v| v.norm()).fold(0.0, f64::max);

    let tau = DualOneForm::exact(m, &z);
    let k = stress_of_form(r, &tau);
    let kmax = k.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let umax = harmonic.u.iter().map(|v| v.abs()).fold(0.0, f64::max);
    if tau.max_magnitude() <= 1e-12 * (zmax + umax / scale) {
        return Err(MinimalError::Trivial);
    }
    let planar = stress_residuals(m, r.positions(), &k);
    let planar_residual = relative_residual(&planar, kmax, scale);
    gate("planar stress", planar_residual, config.gate)?;

    let map = MoebiusMap::stereographic(config.radius);
    let moved = transport_stress(r, &k, &map)?;
    let gauss = moved.realization.clone();
    let kt = moved.k.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let transport_residual = relative_residual(&moved.residuals, kt, gauss.scale());
    gate("transport", transport_residual, config.gate)?;

    let dual = christoffel_dual(&gauss, &moved.tau, config.gate)?;
    gate("dual closure", dual.report.closure, config.gate)?;

    let period = match domain.domain {
        Domain::Annulus { n_r, n_theta, .. } => Some(annulus_period(
            r, &gauss, &z, &dual.dual, &map, n_r, n_theta,
        )),
        Domain::Square { .. } => None,
    };
    let sphere_deviation = gauss
        .positions()
        .iter()
        .map(|p| (p.norm() - 1.0).abs())
        .fold(0.0, f64::max);
    let report = PipelineReport {
        harmonic_residual: harmonic.max_residual,
        harmonic_tolerance: harmonic.tolerance,
        hdot: normal.max_hdot() / (zmax * scale).max(f64::MIN_POSITIVE),
        planar_residual,
        transport_residual,
        amplification: moved.amplification,
        sphere_deviation,
        dual: dual.report,
        period,
    };
    Ok(MinimalSurface {
        provenance: Provenance {
            domain: domain.domain,
            vertices: m.vertex_count(),
            faces: m.face_count(),
            boundary: boundary.source().to_string(),
            config: *config,
        },
        planar: r.clone(),
        u: harmonic.u,
        z,
        gauss,
        k: moved.k,
        dual: dual.dual,
        report,
    })
}

/// Face of the cut annulus in `ring`, `segment`; `t` picks the triangle.
fn annulus_face(n_theta: usize, ring: usize, segment: usize, t: usize) -> usize {
    2 * (ring * n_theta + segment) + t
}

/// Gap of `f*` across the cut: the two faces at the cut share an edge once glued,
/// and the dual edge there should carry the transported `τ`.
fn annulus_period(
    planar: &Realization,
    gauss: &Realization,
    z: &[Vector3<f64>],
    dual: &DualRealization,
    map: &MoebiusMap,
    n_r: usize,
    n_theta: usize,
) -> Period {
    let per_ring = n_theta + 1;
    let gaps: Vec<Vector3<f64>> = (0..n_r - 1)
        .map(|i| {
            let (a, d) = (i * per_ring, (i + 1) * per_ring);
            let first = annulus_face(n_theta, i, 0, 0);
            let last = annulus_face(n_theta, i, n_theta - 1, 1);
            // `first` lies left of a -> d once glued, `last` to its right
            let df = planar.position(d) - planar.position(a);
            let k = (z[first] - z[last]).dot(&df) / df.norm_squared();
            let kt = k * transport_factor(map, planar.position(a), planar.position(d));
            let tau = kt * (gauss.position(d) - gauss.position(a));
            dual.points[first] - dual.points[last] - tau
        })
        .collect();
    let vector = gaps.iter().sum::<Vector3<f64>>() / gaps.len() as f64;
    let spread = gaps.iter().map(|g| (g - vector).norm()).fold(0.0, f64::max);
    Period { vector, spread }
}

/// Deviation of an annulus surface from its rotational symmetry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScrewSymmetry {
    /// `max |f*(shifted) - R f* - c|` over the diameter of `f*`.
    pub deviation: f64,
    /// Best translation `c` after the rotation `R`.
    pub translation: Vector3<f64>,
    /// `|c_z|` over the diameter of `f*`.
    pub pitch: f64,
}

/// Compares every face with its neighbor one segment further around the axis.
///
/// Returns `None` for square domains.
pub fn screw_symmetry(surface: &MinimalSurface) -> Option<ScrewSymmetry> {
    let Domain::Annulus { n_r, n_theta, .. } = surface.provenance.domain else {
        return None;
    };
    let rot = Rotation3::from_axis_angle(&Vector3::z_axis(), TAU / n_theta as f64).into_inner();
    let f = &surface.dual.points;
    let mut pairs = Vec::new();
    for i in 0..n_r - 1 {
        for s in 0..n_theta - 1 {
            for t in 0..2 {
                pairs.push((
                    annulus_face(n_theta, i, s, t),
                    annulus_face(n_theta, i, s + 1, t),
                ));
            }
        }
    }
    let diffs: Vec<Vector3<f64>> = pairs.iter().map(|&(a, b)| f[b] - rot * f[a]).collect();
    let c = diffs.iter().sum::<Vector3<f64>>() / diffs.len() as f64;
    let diam = surface.dual.scale();
    let deviation = diffs.iter().map(|d| (d - c).norm()).fold(0.0, f64::max) / diam;
    Some(ScrewSymmetry {
        deviation,
        translation: c,
        pitch: c.z.abs() / diam,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::grid_disk;

    fn enneper(n: usize) -> MinimalSurface {
        let d = DomainMesh::new(Domain::Square { n }).unwrap();
        weierstrass(
            &d,
            &BoundaryExpr::parse("x*y").unwrap(),
            &WeierstrassConfig::default(),
        )
        .unwrap()
    }

    #[test]
    fn enneper_residuals() {
        let s = enneper(12);
        let rep = &s.report;
        assert!(rep.max_residual() < 1e-8, "{rep:?}");
        assert!(rep.sphere_deviation < 1e-12);
        assert_eq!(rep.dual.parallel.zero_length, 0);
    }

    #[test]
    fn linear_data_is_trivial() {
        let d = DomainMesh::new(Domain::Square { n: 6 }).unwrap();
        let e = weierstrass(
            &d,
            &BoundaryExpr::parse("2*x - y + 1").unwrap(),
            &WeierstrassConfig::default(),
        );
        assert!(matches!(e, Err(MinimalError::Trivial)));
    }

    #[test]
    fn zero_form_rejected() {
        let s = enneper(5);
        let zero = DualOneForm::zero(s.gauss.mesh());
        assert!(matches!(
            christoffel_dual(&s.gauss, &zero, 1e-8),
            Err(MinimalError::Trivial)
        ));
    }

    #[test]
    fn face_cycle_closes() {
        let r = grid_disk(4).unwrap();
        let m = r.mesh();
        for &i in m.interior_vertices() {
            let cyc = face_cycle(m, i);
            assert_eq!(cyc.len(), m.star(i).len());
            for f in &cyc {
                assert!(m.face(*f).contains(&i));
            }
        }
    }

    #[test]
    fn dual_obj_has_interior_cells() {
        let s = enneper(5);
        let obj = s.dual.to_obj();
        assert_eq!(
            obj.lines().filter(|l| l.starts_with("v ")).count(),
            s.gauss.mesh().face_count()
        );
        assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 9);
    }

    fn annulus(expr: &str) -> MinimalSurface {
        let d = DomainMesh::new(Domain::annulus(0.5, 2.0, 16)).unwrap();
        weierstrass(
            &d,
            &BoundaryExpr::parse(expr).unwrap(),
            &WeierstrassConfig::default(),
        )
        .unwrap()
    }

    #[test]
    fn angle_data_closes_up_around_the_axis() {
        let s = annulus("theta");
        assert!(s.report.max_residual() < 1e-8);
        let p = s.report.period.as_ref().unwrap();
        assert!(p.vector.norm() < 1e-10 * s.dual.scale());
        let sym = screw_symmetry(&s).unwrap();
        assert!(sym.deviation < 1e-10 && sym.pitch < 1e-10, "{sym:?}");
    }

    #[test]
    fn radial_data_has_axial_period() {
        let s = annulus("log(r)");
        assert!(s.report.max_residual() < 1e-8);
        let p = s.report.period.as_ref().unwrap();
        assert!(p.vector.z.abs() > 0.1 * s.dual.scale());
        assert!(p.vector.xy().norm() < 1e-10 * s.dual.scale());
        let sym = screw_symmetry(&s).unwrap();
        assert!(sym.deviation < 1e-10 && sym.pitch > 1e-3, "{sym:?}");
        // the diagonals carry no stress
        assert!(s.report.dual.parallel.zero_length > 0);
    }
}
