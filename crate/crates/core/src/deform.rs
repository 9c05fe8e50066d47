//! Infinitesimal deformations.
//!
//! Every deformation `ḟ` splits edgewise as `dḟ = σ df + df × W` with
//! `σ = <dḟ, df>/ℓ²` and `W ⊥ df`. Isometric deformations come from face
//! rotations `Z` with `dḟ(e_ij) = df(e_ij) × Z_ijk`. The operator `L` maps
//! edge scalings to the rate of the logarithmic length cross ratio.

use nalgebra::{DMatrix, Vector3};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::isothermic::vertex_mean_curvature_rate;
use crate::linalg::{self, Marginal};
use crate::mesh::{integrate_primal, MeshError, PrimalOneForm, Realization, SurfaceMesh};

#[derive(Debug, Error)]
pub enum DeformError {
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error("expected {expected} values, got {got}")]
    Length { expected: usize, got: usize },
    #[error(
        "rotations are incompatible on {count} edges (worst: edge {worst} with defect {defect:e})"
    )]
    Incompatible {
        count: usize,
        worst: usize,
        defect: f64,
        edges: Vec<usize>,
    },
    #[error("rotation field does not integrate: closure defect {0:e}")]
    NotExact(f64),
    #[error("realization is not planar")]
    NotPlanar,
    #[error("conformal dimension needs a closed surface")]
    NotClosed,
}

fn check_len(expected: usize, got: usize) -> Result<(), DeformError> {
    if expected == got {
        Ok(())
    } else {
        Err(DeformError::Length { expected, got })
    }
}

/// The vertices `(i, j, k, l)` around interior edge `e`: `ijk` is the left face, `jil` the right.
fn edge_diamond(mesh: &SurfaceMesh, e: usize) -> [usize; 4] {
    let edge = mesh.edge(e);
    [
        edge.tail,
        edge.head,
        mesh.left_apex(e),
        mesh.right_apex(e).expect("interior edge"),
    ]
}

/// `log ℓ_jk - log ℓ_ki + log ℓ_il - log ℓ_lj` per interior edge.
pub fn lcr(r: &Realization) -> Vec<f64> {
    let m = r.mesh();
    let len = |a: usize, b: usize| (r.position(a) - r.position(b)).norm().ln();
    m.interior_edges()
        .iter()
        .map(|&e| {
            let [i, j, k, l] = edge_diamond(m, e);
            len(j, k) - len(k, i) + len(i, l) - len(l, j)
        })
        .collect()
}

/// Same cross ratio for arbitrary per-edge lengths.
pub fn lcr_of_lengths(mesh: &SurfaceMesh, lengths: &[f64]) -> Vec<f64> {
    let len = |a: usize, b: usize| lengths[mesh.find_edge(a, b).unwrap()].ln();
    mesh.interior_edges()
        .iter()
        .map(|&e| {
            let [i, j, k, l] = edge_diamond(mesh, e);
            len(j, k) - len(k, i) + len(i, l) - len(l, j)
        })
        .collect()
}

/// `L(σ)_ij = σ_jk - σ_ki + σ_il - σ_lj` as an `|E_int| x |E|` matrix.
#[derive(Debug, Clone)]
pub struct LcrOperator {
    pub matrix: DMatrix<f64>,
}

pub fn lcr_operator(mesh: &SurfaceMesh) -> LcrOperator {
    let mut a = DMatrix::zeros(mesh.interior_edges().len(), mesh.edge_count());
    for (row, &e) in mesh.interior_edges().iter().enumerate() {
        let [i, j, k, l] = edge_diamond(mesh, e);
        for (x, y, s) in [(j, k, 1.0), (k, i, -1.0), (i, l, 1.0), (l, j, -1.0)] {
            a[(row, mesh.find_edge(x, y).unwrap())] += s;
        }
    }
    LcrOperator { matrix: a }
}

/// `a_ij = u_i + u_j` as an `|E| x |V|` matrix; its columns span `Ker L`.
pub fn kernel_generator(mesh: &SurfaceMesh) -> DMatrix<f64> {
    let mut k = DMatrix::zeros(mesh.edge_count(), mesh.vertex_count());
    for (e, edge) in mesh.edges().iter().enumerate() {
        k[(e, edge.tail)] = 1.0;
        k[(e, edge.head)] = 1.0;
    }
    k
}

/// Structure of `L` on a closed surface.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LStructure {
    pub rank: usize,
    /// `|E| - |V|`, the expected rank.
    pub expected_rank: usize,
    /// `max |L K|` for the kernel generator `K`.
    pub kernel_residual: f64,
    /// `max |P_ker + P_im - I|` for the orthogonal projectors.
    pub projector_residual: f64,
    /// `max |Kᵀ P_im|`: image vectors have vanishing vertex sums.
    pub image_residual: f64,
}

impl LcrOperator {
    pub fn apply(&self, sigma: &[f64]) -> Vec<f64> {
        (&self.matrix * nalgebra::DVector::from_column_slice(sigma))
            .iter()
            .copied()
            .collect()
    }

    /// Checks `Ker L = {u_i + u_j}` and `Im L = {a : sum_j a_ij = 0}` by projectors.
    pub fn structure(&self, mesh: &SurfaceMesh, rank_tol: f64) -> Result<LStructure, DeformError> {
        if !mesh.is_closed() {
            return Err(DeformError::NotClosed);
        }
        let k = kernel_generator(mesh);
        let kernel_residual = (&self.matrix * &k).abs().max();
        let qk = linalg::column_space(&k, rank_tol);
        let qi = linalg::column_space(&self.matrix, rank_tol);
        let n = mesh.edge_count();
        let p = &qk * qk.transpose() + &qi * qi.transpose() - DMatrix::identity(n, n);
        Ok(LStructure {
            rank: qi.ncols(),
            expected_rank: mesh.edge_count() - mesh.vertex_count(),
            kernel_residual,
            projector_residual: p.abs().max(),
            image_residual: (k.transpose() * &qi).abs().max(),
        })
    }
}

/// Edgewise split of a deformation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    /// `σ_ij = <dḟ, df>/ℓ²` per edge.
    pub sigma: Vec<f64>,
    /// `W_ij = dḟ × df / ℓ²`, perpendicular to the edge.
    pub w: Vec<Vector3<f64>>,
    /// `max |dḟ - σ df - df × W|`.
    pub reconstruction: f64,
}

pub fn decompose(r: &Realization, f_dot: &[Vector3<f64>]) -> Result<Decomposition, DeformError> {
    check_len(r.mesh().vertex_count(), f_dot.len())?;
    let d = PrimalOneForm::exact(r.mesh(), f_dot);
    let mut sigma = Vec::with_capacity(r.mesh().edge_count());
    let mut w = Vec::with_capacity(r.mesh().edge_count());
    let mut reconstruction: f64 = 0.0;
    for e in 0..r.mesh().edge_count() {
        let df = r.edge_vector(e);
        let dd = d.value(e);
        let l2 = df.norm_squared();
        let s = dd.dot(&df) / l2;
        let we = dd.cross(&df) / l2;
        reconstruction = reconstruction.max((dd - s * df - df.cross(&we)).norm());
        sigma.push(s);
        w.push(we);
    }
    Ok(Decomposition {
        sigma,
        w,
        reconstruction,
    })
}

/// `dℓ/dt = <dḟ, df>/ℓ` per edge.
pub fn edge_length_rates(r: &Realization, f_dot: &[Vector3<f64>]) -> Vec<f64> {
    r.mesh()
        .edges()
        .iter()
        .enumerate()
        .map(|(e, edge)| {
            (f_dot[edge.head] - f_dot[edge.tail]).dot(&r.edge_vector(e)) / r.edge_length(e)
        })
        .collect()
}

/// A deformation with optional face rotations and its edgewise split.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DeformationField {
    pub f_dot: Vec<Vector3<f64>>,
    pub z: Option<Vec<Vector3<f64>>>,
    pub sigma: Vec<f64>,
    pub w: Vec<Vector3<f64>>,
    /// Largest non-tree mismatch when `f_dot` was integrated from rotations.
    pub closure: f64,
}

impl DeformationField {
    pub fn max_sigma(&self) -> f64 {
        self.sigma.iter().map(|s| s.abs()).fold(0.0, f64::max)
    }
}

/// Largest `|(Z_left - Z_right) × df| / (|df| |Z|∞)` over interior edges with the offending edges.
pub fn rotation_compatibility(r: &Realization, z: &[Vector3<f64>], tol: f64) -> (f64, Vec<usize>) {
    let m = r.mesh();
    let zmax = z
        .iter()
        .map(|v| v.norm())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let mut worst: f64 = 0.0;
    let mut bad = Vec::new();
    for &e in m.interior_edges() {
        let dz = z[m.left_face(e)] - z[m.right_face(e).unwrap()];
        let df = r.edge_vector(e);
        let defect = dz.cross(&df).norm() / (df.norm() * zmax);
        worst = worst.max(defect);
        if defect > tol {
            bad.push(e);
        }
    }
    (worst, bad)
}

/// Integrates `dḟ(e_ij) = df(e_ij) × Z_ijk` from `ḟ_0 = 0`.
pub fn isometric_from_rotations(
    r: &Realization,
    z: &[Vector3<f64>],
    tol: f64,
) -> Result<DeformationField, DeformError> {
    let m = r.mesh();
    check_len(m.face_count(), z.len())?;
    let (worst, bad) = rotation_compatibility(r, z, tol);
    if !bad.is_empty() {
        let worst_edge = *bad
            .iter()
            .max_by(|&&a, &&b| {
                let d = |e: usize| {
                    (z[m.left_face(e)] - z[m.right_face(e).unwrap()])
                        .cross(&r.edge_vector(e))
                        .norm()
                };
                d(a).total_cmp(&d(b))
            })
            .unwrap();
        return Err(DeformError::Incompatible {
            count: bad.len(),
            worst: worst_edge,
            defect: worst,
            edges: bad,
        });
    }
    let omega = PrimalOneForm::from_edge_values(
        m,
        (0..m.edge_count())
            .map(|e| r.edge_vector(e).cross(&z[m.left_face(e)]))
            .collect(),
    )
    .expect("one value per edge");
    let integ = integrate_primal(m, &omega);
    let zmax = z.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if integ.closure > tol * r.scale() * zmax.max(1.0) {
        return Err(DeformError::NotExact(integ.closure));
    }
    let dec = decompose(r, &integ.values)?;
    Ok(DeformationField {
        f_dot: integ.values,
        z: Some(z.to_vec()),
        sigma: dec.sigma,
        w: dec.w,
        closure: integ.closure,
    })
}

/// Normal deformation `ḟ = u N` of a planar mesh with its face rotations.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HarmonicNormal {
    pub field: DeformationField,
    pub normal: Vector3<f64>,
    /// `Ḣ_i` per interior vertex.
    pub hdot: Vec<f64>,
}

impl HarmonicNormal {
    pub fn max_hdot(&self) -> f64 {
        self.hdot.iter().map(|h| h.abs()).fold(0.0, f64::max)
    }
}

/// `Z_ijk = -(u_i df(e_jk) + u_j df(e_ki) + u_k df(e_ij)) / (2 A_ijk)` with
/// signed area `A_ijk` measured against the plane normal.
pub fn harmonic_normal_deformation(
    r: &Realization,
    u: &[f64],
) -> Result<HarmonicNormal, DeformError> {
    let m = r.mesh();
    check_len(m.vertex_count(), u.len())?;
    r.require_strong()?;
    let (normal, _) = r.plane().ok_or(DeformError::NotPlanar)?;
    let z: Vec<Vector3<f64>> = m
        .faces()
        .iter()
        .map(|&[i, j, k]| {
            let (fi, fj, fk) = (r.position(i), r.position(j), r.position(k));
            let area = 0.5 * (fj - fi).cross(&(fk - fi)).dot(&normal);
            -(u[i] * (fk - fj) + u[j] * (fi - fk) + u[k] * (fj - fi)) / (2.0 * area)
        })
        .collect();
    let f_dot: Vec<Vector3<f64>> = u.iter().map(|&ui| ui * normal).collect();
    let dec = decompose(r, &f_dot)?;
    let hdot = vertex_mean_curvature_rate(r, &z);
    Ok(HarmonicNormal {
        field: DeformationField {
            f_dot,
            z: Some(z),
            sigma: dec.sigma,
            w: dec.w,
            closure: 0.0,
        },
        normal,
        hdot,
    })
}

/// `ḟ -> σ(ḟ)` as an `|E| x 3|V|` matrix in normalized coordinates.
pub fn sigma_map(r: &Realization) -> DMatrix<f64> {
    let m = r.mesh();
    let (p, _, _) = r.normalized_positions();
    let mut s = DMatrix::zeros(m.edge_count(), 3 * m.vertex_count());
    for (e, edge) in m.edges().iter().enumerate() {
        let d = p[edge.head] - p[edge.tail];
        let d = d / d.norm_squared();
        for c in 0..3 {
            s[(e, 3 * edge.head + c)] = d[c];
            s[(e, 3 * edge.tail + c)] = -d[c];
        }
    }
    s
}

/// Dimension of infinitesimal conformal deformations of a closed surface.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConformalDimension {
    /// `dim ker(L ∘ σ)`.
    pub dimension: usize,
    pub genus: usize,
    /// `|V| - 6g + 6`.
    pub bound: i64,
    pub isothermic: bool,
    /// `|V| < 6g + 4`, which forces an isothermic structure.
    pub heawood: bool,
    pub spectrum_tail: Vec<f64>,
    pub marginal: Option<Marginal>,
}

pub fn conformal_dimension(
    r: &Realization,
    rank_tol: f64,
) -> Result<ConformalDimension, DeformError> {
    let m = r.mesh();
    let genus = m.genus().ok_or(DeformError::NotClosed)?;
    let composite = lcr_operator(m).matrix * sigma_map(r);
    let ns = linalg::nullspace(&composite, rank_tol);
    let n = m.vertex_count() as i64;
    let g = genus as i64;
    let bound = n - 6 * g + 6;
    Ok(ConformalDimension {
        dimension: ns.nullity(),
        genus,
        bound,
        isothermic: ns.nullity() as i64 > bound,
        heawood: n < 6 * g + 4,
        spectrum_tail: ns.singular_values.iter().rev().take(12).copied().collect(),
        marginal: ns.marginal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{self, Platonic};
    use crate::linalg::DEFAULT_RANK_TOL;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rand_vec(rng: &mut ChaCha8Rng) -> Vector3<f64> {
        Vector3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        )
    }

    #[test]
    fn equilateral_lcr_vanishes() {
        let r = generators::platonic(Platonic::Icosahedron);
        assert!(lcr(&r).iter().all(|v| v.abs() < 1e-14));
    }

    #[test]
    fn stretched_grid_lcr_is_nonzero() {
        let xs: Vec<f64> = (0..4).map(|i| 2.0 * i as f64).collect();
        let ys: Vec<f64> = (0..4).map(|i| i as f64).collect();
        let r = generators::rect_grid(&xs, &ys).unwrap();
        assert!(lcr(&r).iter().any(|v| v.abs() > 0.1));
    }

    #[test]
    fn tetrahedron_l_rank() {
        let r = generators::platonic(Platonic::Tetrahedron);
        let l = lcr_operator(r.mesh());
        assert_eq!(linalg::rank(&l.matrix, DEFAULT_RANK_TOL), 2);
    }

    #[test]
    fn rotation_and_scaling_split() {
        let r = generators::jessen();
        let c = Vector3::new(0.2, -0.4, 0.9);
        let rot: Vec<_> = r.positions().iter().map(|p| c.cross(p)).collect();
        let d = decompose(&r, &rot).unwrap();
        assert!(d.sigma.iter().all(|s| s.abs() < 1e-15));
        let scale = decompose(&r, r.positions()).unwrap();
        assert!(scale.sigma.iter().all(|s| (s - 1.0).abs() < 1e-15));
        assert!(scale.w.iter().all(|w| w.norm() < 1e-15));
    }

    #[test]
    fn random_field_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let r = generators::grid_disk(5).unwrap();
        let v: Vec<_> = (0..r.mesh().vertex_count())
            .map(|_| rand_vec(&mut rng))
            .collect();
        assert!(decompose(&r, &v).unwrap().reconstruction < 1e-13 * r.scale());
    }

    #[test]
    fn constant_rotation_is_rigid() {
        let r = generators::jessen();
        let c = Vector3::new(0.3, 0.1, -0.2);
        let z = vec![c; r.mesh().face_count()];
        let field = isometric_from_rotations(&r, &z, 1e-10).unwrap();
        let f0 = r.position(0);
        for (v, p) in field.f_dot.iter().zip(r.positions()) {
            assert!((v - (p - f0).cross(&c)).norm() < 1e-14);
        }
        assert!(field.max_sigma() < 1e-15);
    }

    #[test]
    fn incompatible_rotations_rejected() {
        let r = generators::grid_disk(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let z: Vec<_> = (0..r.mesh().face_count())
            .map(|_| rand_vec(&mut rng))
            .collect();
        assert!(matches!(
            isometric_from_rotations(&r, &z, 1e-10),
            Err(DeformError::Incompatible { .. })
        ));
    }

    #[test]
    fn tetrahedron_conformal_dimension() {
        let r = generators::platonic(Platonic::Tetrahedron);
        let c = conformal_dimension(&r, DEFAULT_RANK_TOL).unwrap();
        assert_eq!(c.dimension, 10);
        assert_eq!(c.bound, 10);
        assert!(!c.isothermic && !c.heawood);
    }
}
