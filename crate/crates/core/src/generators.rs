//! Reference meshes: planar grids, cut annuli, Platonic solids, Jessen's
//! orthogonal icosahedron and homogeneous screw-motion cylinders.

use std::f64::consts::TAU;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector, Matrix3, Vector3};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::isothermic::vertex_mean_curvature;
use crate::linalg;
use crate::mesh::{MeshError, Realization, SurfaceMesh};

#[derive(Debug, Error)]
pub enum GenError {
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
}

fn invalid(msg: impl Into<String>) -> GenError {
    GenError::InvalidParameter(msg.into())
}

fn realize(
    n: usize,
    faces: &[[usize; 3]],
    positions: Vec<Vector3<f64>>,
) -> Result<Realization, MeshError> {
    Realization::new(Arc::new(SurfaceMesh::new(n, faces)?), positions)
}

/// Planar grid with vertex `(i, j)` at `(xs[i], ys[j], 0)` and id `j * xs.len() + i`.
/// Every cell is split along its south-west to north-east diagonal.
pub fn rect_grid(xs: &[f64], ys: &[f64]) -> Result<Realization, GenError> {
    let (nx, ny) = (xs.len(), ys.len());
    if nx < 2 || ny < 2 {
        return Err(invalid("grid needs at least 2 samples per axis"));
    }
    let id = |i: usize, j: usize| j * nx + i;
    let mut faces = Vec::with_capacity(2 * (nx - 1) * (ny - 1));
    for j in 0..ny - 1 {
        for i in 0..nx - 1 {
            let (a, b, c, d) = (id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));
            faces.push([a, b, c]);
            faces.push([a, c, d]);
        }
    }
    let positions = (0..ny)
        .flat_map(|j| (0..nx).map(move |i| (i, j)))
        .map(|(i, j)| Vector3::new(xs[i], ys[j], 0.0))
        .collect();
    Ok(realize(nx * ny, &faces, positions)?)
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect()
}

/// `n x n` grid on the unit square `[0, 1]²`.
pub fn grid_disk(n: usize) -> Result<Realization, GenError> {
    if n < 2 {
        return Err(invalid("grid size must be at least 2"));
    }
    let t = linspace(0.0, 1.0, n);
    rect_grid(&t, &t)
}

/// `n x n` grid on the centered square `[-1/2, 1/2]²`.
pub fn square_domain(n: usize) -> Result<Realization, GenError> {
    if n < 2 {
        return Err(invalid("grid size must be at least 2"));
    }
    let t = linspace(-0.5, 0.5, n);
    rect_grid(&t, &t)
}

/// A planar annulus cut open along the positive x-axis.
#[derive(Debug, Clone)]
pub struct CutAnnulus {
    pub realization: Realization,
    /// `(r, theta)` per vertex, with `theta` in `[0, 2π]` following the cut.
    pub polar: Vec<(f64, f64)>,
    /// `(theta = 0 copy, theta = 2π copy)` for every ring, innermost first.
    pub seam: Vec<(usize, usize)>,
    pub rings: usize,
    pub segments: usize,
}

impl CutAnnulus {
    pub fn vertex(&self, ring: usize, segment: usize) -> usize {
        ring * (self.segments + 1) + segment
    }

    /// Seam pairs strictly between the two boundary circles.
    pub fn inner_seam(&self) -> &[(usize, usize)] {
        &self.seam[1..self.seam.len() - 1]
    }
}

/// Annulus `r_in <= |z| <= r_out` with `n_r` geometrically spaced rings of
/// `n_theta` segments, each ring carrying a duplicated seam vertex at `θ = 2π`.
pub fn cut_annulus(
    r_in: f64,
    r_out: f64,
    n_r: usize,
    n_theta: usize,
) -> Result<CutAnnulus, GenError> {
    if !(r_in > 0.0 && r_in < r_out) {
        return Err(invalid("need 0 < r_in < r_out"));
    }
    if n_r < 2 || n_theta < 3 {
        return Err(invalid("need at least 2 rings and 3 segments"));
    }
    let per_ring = n_theta + 1;
    let id = |i: usize, s: usize| i * per_ring + s;
    let mut positions = Vec::with_capacity(n_r * per_ring);
    let mut polar = Vec::with_capacity(n_r * per_ring);
    for i in 0..n_r {
        let r = r_in * (r_out / r_in).powf(i as f64 / (n_r - 1) as f64);
        for s in 0..per_ring {
            let theta = TAU * s as f64 / n_theta as f64;
            let (sin, cos) = if s == n_theta {
                (0.0, 1.0)
            } else {
                theta.sin_cos()
            };
            positions.push(Vector3::new(r * cos, r * sin, 0.0));
            polar.push((r, theta));
        }
    }
    let mut faces = Vec::with_capacity(2 * (n_r - 1) * n_theta);
    for i in 0..n_r - 1 {
        for s in 0..n_theta {
            let (a, b, c, d) = (id(i, s), id(i, s + 1), id(i + 1, s + 1), id(i + 1, s));
            faces.push([a, d, c]);
            faces.push([a, c, b]);
        }
    }
    let realization = realize(n_r * per_ring, &faces, positions)?;
    Ok(CutAnnulus {
        realization,
        polar,
        seam: (0..n_r).map(|i| (id(i, 0), id(i, n_theta))).collect(),
        rings: n_r,
        segments: n_theta,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Platonic {
    Tetrahedron,
    Octahedron,
    Icosahedron,
}

/// Triangles of the graph of edges no longer than `max_len`, wound outward.
fn hull_triangles(points: &[Vector3<f64>], max_len: f64) -> Vec<[usize; 3]> {
    let n = points.len();
    let adj = |i: usize, j: usize| (points[i] - points[j]).norm() <= max_len * (1.0 + 1e-9);
    let mut faces = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !adj(i, j) {
                continue;
            }
            for k in j + 1..n {
                if adj(i, k) && adj(j, k) {
                    let normal = (points[j] - points[i]).cross(&(points[k] - points[i]));
                    let centroid = points[i] + points[j] + points[k];
                    faces.push(if normal.dot(&centroid) > 0.0 {
                        [i, j, k]
                    } else {
                        [i, k, j]
                    });
                }
            }
        }
    }
    faces
}

/// Cyclic coordinate permutations of `(0, ±1, ±c)`.
fn icosahedral_points(c: f64) -> Vec<Vector3<f64>> {
    let mut out = Vec::with_capacity(12);
    for shift in 0..3 {
        for s1 in [1.0, -1.0] {
            for s2 in [1.0, -1.0] {
                let base = [0.0, s1, s2 * c];
                out.push(Vector3::new(
                    base[shift % 3],
                    base[(shift + 1) % 3],
                    base[(shift + 2) % 3],
                ));
            }
        }
    }
    out
}

/// Platonic solid inscribed in the unit sphere.
pub fn platonic(which: Platonic) -> Realization {
    let points: Vec<Vector3<f64>> = match which {
        Platonic::Tetrahedron => vec![
            Vector3::new(1.0, 1.0, 1.0),
            Vector3::new(1.0, -1.0, -1.0),
            Vector3::new(-1.0, 1.0, -1.0),
            Vector3::new(-1.0, -1.0, 1.0),
        ],
        Platonic::Octahedron => vec![
            Vector3::x(),
            -Vector3::x(),
            Vector3::y(),
            -Vector3::y(),
            Vector3::z(),
            -Vector3::z(),
        ],
        Platonic::Icosahedron => icosahedral_points((1.0 + 5f64.sqrt()) / 2.0),
    };
    let edge = match which {
        Platonic::Tetrahedron => 8f64.sqrt(),
        Platonic::Octahedron => 2f64.sqrt(),
        Platonic::Icosahedron => 2.0,
    };
    let faces = hull_triangles(&points, edge);
    let positions: Vec<_> = points.iter().map(|p| p.normalize()).collect();
    realize(positions.len(), &faces, positions).expect("platonic solids are valid surfaces")
}

/// Jessen's orthogonal icosahedron on the sphere of radius √5.
///
/// Starting from the convex icosahedral combinatorics of the points
/// `(0, ±1, ±2)` (cyclically permuted), each of the six length-2 edges is
/// flipped, which makes all dihedral angles right angles.
pub fn jessen() -> Realization {
    let points = icosahedral_points(2.0);
    let mut faces = hull_triangles(&points, 6f64.sqrt());
    let short: Vec<(usize, usize)> = (0..12)
        .flat_map(|i| (i + 1..12).map(move |j| (i, j)))
        .filter(|&(i, j)| ((points[i] - points[j]).norm() - 2.0).abs() < 1e-12)
        .collect();
    for (x, y) in short {
        let pos = |faces: &Vec<[usize; 3]>, a: usize, b: usize| {
            faces
                .iter()
                .position(|t| (0..3).any(|k| t[k] == a && t[(k + 1) % 3] == b))
        };
        let (f1, f2) = match (pos(&faces, x, y), pos(&faces, y, x)) {
            (Some(f1), Some(f2)) => (f1, f2),
            _ => unreachable!("short edge borders two faces"),
        };
        let apex = |t: [usize; 3]| t.into_iter().find(|&v| v != x && v != y).unwrap();
        let (p, q) = (apex(faces[f1]), apex(faces[f2]));
        faces[f1] = [x, q, p];
        faces[f2] = [y, p, q];
    }
    realize(12, &faces, points).expect("Jessen's icosahedron is a valid surface")
}

/// Screw parameters of two commuting motions about the z-axis and the sampled window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CylinderParams {
    pub r: f64,
    pub theta1: f64,
    pub h1: f64,
    pub theta2: f64,
    pub h2: f64,
    /// Window extent in `s` and `t` (number of vertices).
    pub ns: usize,
    pub nt: usize,
}

impl Default for CylinderParams {
    fn default() -> Self {
        Self {
            r: 1.0,
            theta1: TAU / 7.0,
            h1: 0.0,
            theta2: std::f64::consts::PI / 9.0,
            h2: 0.4,
            ns: 7,
            nt: 7,
        }
    }
}

impl CylinderParams {
    /// `(r, θ₁, h₁, θ₂, h₂)`.
    pub fn to_vec(&self) -> [f64; 5] {
        [self.r, self.theta1, self.h1, self.theta2, self.h2]
    }

    pub fn with_vec(&self, p: [f64; 5]) -> Self {
        Self {
            r: p[0],
            theta1: p[1],
            h1: p[2],
            theta2: p[3],
            h2: p[4],
            ..*self
        }
    }

    /// `g₁^s g₂^t (r, 0, 0)`.
    pub fn point(&self, s: i64, t: i64) -> Vector3<f64> {
        let phi = s as f64 * self.theta1 + t as f64 * self.theta2;
        Vector3::new(
            self.r * phi.cos(),
            -self.r * phi.sin(),
            s as f64 * self.h1 + t as f64 * self.h2,
        )
    }

    /// The screw motion `p -> R(θ) p + (0, 0, h)` as a rotation matrix and a height.
    pub fn motion(theta: f64, h: f64) -> (Matrix3<f64>, Vector3<f64>) {
        let (s, c) = theta.sin_cos();
        (
            Matrix3::new(c, s, 0.0, -s, c, 0.0, 0.0, 0.0, 1.0),
            Vector3::new(0.0, 0.0, h),
        )
    }

    /// Derivative of every window vertex along a parameter direction `v`.
    pub fn point_velocity(&self, s: i64, t: i64, v: [f64; 5]) -> Vector3<f64> {
        let phi = s as f64 * self.theta1 + t as f64 * self.theta2;
        let phi_dot = s as f64 * v[1] + t as f64 * v[3];
        let (sin, cos) = phi.sin_cos();
        Vector3::new(
            v[0] * cos - self.r * sin * phi_dot,
            -v[0] * sin - self.r * cos * phi_dot,
            s as f64 * v[2] + t as f64 * v[4],
        )
    }
}

/// A sampled window of a homogeneous cylinder with its edge-class report.
#[derive(Debug, Clone)]
pub struct Cylinder {
    pub realization: Realization,
    pub params: CylinderParams,
    /// Lengths of the edge classes `{f(0,0), f(1,0)}`, `{f(1,0), f(0,1)}`, `{f(0,1), f(0,0)}`.
    pub lengths: [f64; 3],
    /// Largest deviation of a window edge from its class length.
    pub class_spread: f64,
    /// Integrated mean curvature `sum_j α_ij ℓ_ij` at each interior vertex.
    pub vertex_h: Vec<(usize, f64)>,
}

impl Cylinder {
    pub fn vertex(&self, s: usize, t: usize) -> usize {
        t * self.params.ns + s
    }

    /// H at the interior vertex closest to the window center.
    pub fn center_h(&self) -> f64 {
        let c = self.vertex(self.params.ns / 2, self.params.nt / 2);
        self.vertex_h
            .iter()
            .find(|&&(v, _)| v == c)
            .map(|&(_, h)| h)
            .unwrap()
    }

    pub fn h_spread(&self) -> f64 {
        let hs: Vec<f64> = self.vertex_h.iter().map(|&(_, h)| h).collect();
        let max = hs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = hs.iter().copied().fold(f64::INFINITY, f64::min);
        max - min
    }
}

fn cylinder_faces(ns: usize, nt: usize) -> Vec<[usize; 3]> {
    let id = |s: usize, t: usize| t * ns + s;
    let mut faces = Vec::new();
    for t in 0..nt - 1 {
        for s in 0..ns - 1 {
            faces.push([id(s, t), id(s + 1, t), id(s, t + 1)]);
            faces.push([id(s + 1, t), id(s + 1, t + 1), id(s, t + 1)]);
        }
    }
    faces
}

/// Samples `f(s, t)` for `0 <= s < ns`, `0 <= t < nt` and triangulates the window.
pub fn homogeneous_cylinder(p: &CylinderParams) -> Result<Cylinder, GenError> {
    if p.ns < 3 || p.nt < 3 {
        return Err(invalid("cylinder window needs at least 3x3 vertices"));
    }
    if !(p.r > 0.0) {
        return Err(invalid("radius must be positive"));
    }
    if p.h1 == 0.0 && p.h2 == 0.0 {
        return Err(GenError::Degenerate(
            "h1 = h2 = 0 puts every vertex on one circle".into(),
        ));
    }
    let positions: Vec<Vector3<f64>> = (0..p.nt)
        .flat_map(|t| (0..p.ns).map(move |s| (s, t)))
        .map(|(s, t)| p.point(s as i64, t as i64))
        .collect();
    let scale = positions.iter().map(|x| x.norm()).fold(0.0, f64::max);
    for i in 0..positions.len() {
        for j in i + 1..positions.len() {
            if (positions[i] - positions[j]).norm() <= 1e-9 * scale {
                return Err(GenError::Degenerate(format!(
                    "vertices {i} and {j} coincide"
                )));
            }
        }
    }
    let faces = cylinder_faces(p.ns, p.nt);
    let realization = realize(positions.len(), &faces, positions)?;
    realization.require_strong()?;
    let lengths = [
        (p.point(1, 0) - p.point(0, 0)).norm(),
        (p.point(1, 0) - p.point(0, 1)).norm(),
        (p.point(0, 1) - p.point(0, 0)).norm(),
    ];
    let m = realization.mesh();
    let mut class_spread: f64 = 0.0;
    for (e, edge) in m.edges().iter().enumerate() {
        let (s0, t0) = ((edge.tail % p.ns) as i64, (edge.tail / p.ns) as i64);
        let (s1, t1) = ((edge.head % p.ns) as i64, (edge.head / p.ns) as i64);
        let class = match ((s1 - s0).abs(), (t1 - t0).abs()) {
            (1, 0) => 0,
            (1, 1) => 1,
            (0, 1) => 2,
            _ => unreachable!("window edges are unit steps"),
        };
        class_spread = class_spread.max((realization.edge_length(e) - lengths[class]).abs());
    }
    let h = vertex_mean_curvature(&realization)?;
    let vertex_h = m.interior_vertices().iter().map(|&v| (v, h[v])).collect();
    Ok(Cylinder {
        realization,
        params: *p,
        lengths,
        class_spread,
        vertex_h,
    })
}

/// `μ = (ℓ_a, ℓ_b, ℓ_c, H)` evaluated on a 3x3 window around `f(1, 1)`.
pub fn mu(p: &CylinderParams) -> Result<[f64; 4], GenError> {
    let small = CylinderParams { ns: 3, nt: 3, ..*p };
    let c = homogeneous_cylinder(&small)?;
    Ok([c.lengths[0], c.lengths[1], c.lengths[2], c.center_h()])
}

/// First-order flexibility of a homogeneous cylinder.
#[derive(Debug, Clone)]
pub struct CylinderFlex {
    /// `dμ` as a 4x5 matrix by central differences.
    pub jacobian: DMatrix<f64>,
    pub singular_values: Vec<f64>,
    pub rank: usize,
    /// Unit kernel vectors of `dμ`, in parameter space `(r, θ₁, h₁, θ₂, h₂)`.
    pub kernel: Vec<[f64; 5]>,
    /// Vertex velocities of the window induced by the first kernel vector.
    pub f_dot: Vec<Vector3<f64>>,
    /// `|μ(p + ηv) - μ(p)|` at the two probe steps.
    pub changes: [f64; 2],
    pub probe_steps: [f64; 2],
    /// `log2` of the ratio of the two changes; 2 for a first-order-flat direction.
    pub observed_order: f64,
    /// Relative residual of the best infinitesimal rigid motion fit to `f_dot`.
    pub rigid_fit_residual: f64,
}

/// Computes `ker dμ` at `p` and checks that moving along it keeps μ fixed to first order.
pub fn cylinder_flex(p: &CylinderParams, rel_step: f64) -> Result<CylinderFlex, GenError> {
    let x = p.to_vec();
    let mut jacobian = DMatrix::zeros(4, 5);
    for k in 0..5 {
        let h = rel_step * (1.0 + x[k].abs());
        let mut xp = x;
        let mut xm = x;
        xp[k] += h;
        xm[k] -= h;
        let fp = mu(&p.with_vec(xp))?;
        let fm = mu(&p.with_vec(xm))?;
        for i in 0..4 {
            jacobian[(i, k)] = (fp[i] - fm[i]) / (2.0 * h);
        }
    }
    let ns = linalg::nullspace(&jacobian, linalg::DEFAULT_RANK_TOL);
    let kernel: Vec<[f64; 5]> = ns
        .basis
        .column_iter()
        .map(|c| [c[0], c[1], c[2], c[3], c[4]])
        .collect();
    let v = kernel[0];

    let window = homogeneous_cylinder(p)?;
    let f_dot: Vec<Vector3<f64>> = (0..p.nt)
        .flat_map(|t| (0..p.ns).map(move |s| (s, t)))
        .map(|(s, t)| p.point_velocity(s as i64, t as i64, v))
        .collect();

    let base = mu(p)?;
    let probe_steps = [1e-2, 5e-3];
    let mut changes = [0.0; 2];
    for (slot, &eta) in changes.iter_mut().zip(&probe_steps) {
        let xs: [f64; 5] = std::array::from_fn(|k| x[k] + eta * v[k]);
        let moved = mu(&p.with_vec(xs))?;
        *slot = (0..4)
            .map(|i| (moved[i] - base[i]).powi(2))
            .sum::<f64>()
            .sqrt();
    }
    let observed_order = (changes[0] / changes[1]).log2();
    let rigid_fit_residual = rigid_fit_residual(window.realization.positions(), &f_dot);
    Ok(CylinderFlex {
        jacobian,
        singular_values: ns.singular_values[..4].to_vec(),
        rank: ns.rank,
        kernel,
        f_dot,
        changes,
        probe_steps,
        observed_order,
        rigid_fit_residual,
    })
}

/// `|ḟ - (a + ω × f)| / |ḟ|` for the least-squares rigid motion `(a, ω)`.
pub fn rigid_fit_residual(f: &[Vector3<f64>], f_dot: &[Vector3<f64>]) -> f64 {
    let n = f.len();
    let mut a = DMatrix::zeros(3 * n, 6);
    let mut b = DVector::zeros(3 * n);
    for (i, (p, v)) in f.iter().zip(f_dot).enumerate() {
        for r in 0..3 {
            a[(3 * i + r, r)] = 1.0;
            b[3 * i + r] = v[r];
        }
        // ω × p = -[p]x ω
        let cross = -p.cross_matrix();
        a.view_mut((3 * i, 3), (3, 3)).copy_from(&cross);
    }
    let x = linalg::least_squares(&a, &b);
    (&a * x - &b).norm() / b.norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn grid_counts() {
        let r = grid_disk(2).unwrap();
        assert_eq!((r.mesh().vertex_count(), r.mesh().face_count()), (4, 2));
        assert_eq!(r.mesh().euler_characteristic(), 1);
        let r = grid_disk(3).unwrap();
        assert_eq!(r.mesh().boundary_vertices().len(), 8);
        assert_eq!(r.mesh().interior_vertices().len(), 1);
        assert!(grid_disk(1).is_err());
    }

    #[test]
    fn grid_faces_point_up() {
        let r = grid_disk(4).unwrap();
        for f in 0..r.mesh().face_count() {
            assert!(r.face_normal(f).z > 0.99);
        }
    }

    #[test]
    fn annulus_has_disk_topology_and_seam() {
        let a = cut_annulus(0.5, 1.0, 2, 8).unwrap();
        let m = a.realization.mesh();
        assert_eq!(m.euler_characteristic(), 1);
        assert_eq!(m.boundary_loops().len(), 1);
        for &(v0, v1) in &a.seam {
            assert_eq!(a.polar[v0].1, 0.0);
            assert_eq!(a.polar[v1].1, TAU);
            assert_eq!(a.realization.position(v0), a.realization.position(v1));
        }
        for f in 0..m.face_count() {
            assert!(a.realization.face_normal(f).z > 0.99);
        }
    }

    #[test]
    fn platonic_solids_on_unit_sphere() {
        for (w, v, e) in [
            (Platonic::Tetrahedron, 4, 6),
            (Platonic::Octahedron, 6, 12),
            (Platonic::Icosahedron, 12, 30),
        ] {
            let r = platonic(w);
            assert_eq!(r.mesh().vertex_count(), v);
            assert_eq!(r.mesh().edge_count(), e);
            assert_eq!(r.mesh().genus(), Some(0));
            assert!(r.positions().iter().all(|p| (p.norm() - 1.0).abs() < 1e-15));
            assert_eq!(r.mesh().flipped_faces(), 0);
        }
    }

    #[test]
    fn jessen_vertices_and_edges() {
        let r = jessen();
        let has = |p: [f64; 3]| r.positions().iter().any(|q| *q == Vector3::from(p));
        assert!(has([1.0, -2.0, 0.0]));
        assert!(has([2.0, 0.0, 1.0]));
        assert!(r
            .positions()
            .iter()
            .all(|p| (p.norm_squared() - 5.0).abs() < 1e-14));
        assert_eq!(r.mesh().edge_count(), 30);
        assert_eq!(r.mesh().genus(), Some(0));
    }

    #[test]
    fn jessen_differs_from_icosahedron_in_six_edges() {
        let edges = |r: &Realization| -> HashSet<(usize, usize)> {
            r.mesh()
                .edges()
                .iter()
                .map(|e| (e.tail.min(e.head), e.tail.max(e.head)))
                .collect()
        };
        let a = edges(&jessen());
        let b = edges(&platonic(Platonic::Icosahedron));
        assert_eq!(a.symmetric_difference(&b).count(), 12);
    }

    #[test]
    fn jessen_dihedral_angles_are_right_angles() {
        let r = jessen();
        let m = r.mesh();
        for e in 0..m.edge_count() {
            let nl = r.face_normal(m.left_face(e));
            let nr = r.face_normal(m.right_face(e).unwrap());
            assert!(nl.dot(&nr).abs() < 1e-12);
        }
    }

    #[test]
    fn cylinder_group_action() {
        let p = CylinderParams::default();
        let (g1, h1) = CylinderParams::motion(p.theta1, p.h1);
        for s in -2..3 {
            for t in -2..3 {
                let lhs = p.point(s + 1, t);
                let rhs = g1 * p.point(s, t) + h1;
                assert!((lhs - rhs).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn cylinder_is_homogeneous() {
        let c = homogeneous_cylinder(&CylinderParams::default()).unwrap();
        assert!(c.class_spread < 1e-12);
        assert!(c.h_spread() < 1e-10);
        let flat = CylinderParams {
            h2: 0.0,
            ..CylinderParams::default()
        };
        assert!(matches!(
            homogeneous_cylinder(&flat),
            Err(GenError::Degenerate(_))
        ));
    }

    #[test]
    fn rigid_motion_fits_exactly() {
        let r = grid_disk(3).unwrap();
        let w = Vector3::new(0.3, -0.2, 0.7);
        let a = Vector3::new(1.0, 2.0, 3.0);
        let v: Vec<_> = r.positions().iter().map(|p| a + w.cross(p)).collect();
        assert!(rigid_fit_residual(r.positions(), &v) < 1e-12);
    }
}
