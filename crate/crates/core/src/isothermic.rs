//! Self-stress detection of isothermic realizations and edge mean curvature.
//!
//! A realization is isothermic when some nonzero `k: E_int -> R` satisfies, at
//! every interior vertex `i`,
//!
//! ```text
//! sum_j k_ij (f_j - f_i) = 0,    sum_j k_ij (|f_j|² - |f_i|²) = 0,
//! ```
//!
//! in which case `τ(e*_ij) = k_ij df(e_ij)` is the dual 1-form of the
//! isothermic structure. The system is assembled in coordinates normalized
//! to the unit bounding box (which leaves its nullspace unchanged) with
//! columns scaled by `1/ℓ_ij`.

use nalgebra::{DMatrix, Vector3};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, Marginal};
use crate::mesh::{DualOneForm, MeshError, MeshReport, Realization, SurfaceMesh};
use crate::moebius::lift;

#[derive(Debug, Error)]
pub enum IsothermicError {
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error("stress has {got} values but the mesh has {expected} interior edges")]
    StressLength { expected: usize, got: usize },
    #[error("vertex {vertex} is off the sphere: |f| = {norm}, expected {radius}")]
    OffSphere {
        vertex: usize,
        norm: f64,
        radius: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Isothermic,
    NotIsothermic,
    /// A singular value sits within half a decade of the rank threshold.
    Marginal,
    /// No interior vertex, so there is nothing to satisfy.
    VacuouslyNonIsothermic,
}

/// The dense self-stress system with its conditioning data.
#[derive(Debug, Clone)]
pub struct StressSystem {
    /// `4 |V_int|` rows (x, y, z, scalar per interior vertex) by `|E_int|` columns.
    pub matrix: DMatrix<f64>,
    /// Edge lengths in normalized coordinates; column `c` was divided by `lengths[c]`.
    pub lengths: Vec<f64>,
    /// Normalized vertex positions used for assembly.
    pub positions: Vec<Vector3<f64>>,
}

/// Oriented outgoing edge vector `f_j - f_i` for edge `e` seen from `i`.
fn outgoing(
    mesh: &SurfaceMesh,
    positions: &[Vector3<f64>],
    e: usize,
    i: usize,
) -> (usize, Vector3<f64>) {
    let j = mesh.edge(e).other(i);
    (j, positions[j] - positions[i])
}

fn assemble(mesh: &SurfaceMesh, positions: &[Vector3<f64>], lifted: bool) -> DMatrix<f64> {
    let rows_per = if lifted { 5 } else { 4 };
    let mut a = DMatrix::zeros(
        rows_per * mesh.interior_vertices().len(),
        mesh.interior_edges().len(),
    );
    let lifts: Vec<_> = positions.iter().map(lift).collect();
    for (row, &i) in mesh.interior_vertices().iter().enumerate() {
        for &(e, _) in mesh.star(i) {
            let c = mesh
                .interior_index(e)
                .expect("edges at interior vertices are interior");
            let (j, d) = outgoing(mesh, positions, e, i);
            if lifted {
                let dl = lifts[j] - lifts[i];
                for r in 0..5 {
                    a[(5 * row + r, c)] += dl[r];
                }
            } else {
                for r in 0..3 {
                    a[(4 * row + r, c)] += d[r];
                }
                a[(4 * row + 3, c)] += positions[j].norm_squared() - positions[i].norm_squared();
            }
        }
    }
    a
}

fn scale_columns(mut a: DMatrix<f64>, lengths: &[f64]) -> DMatrix<f64> {
    for (c, &l) in lengths.iter().enumerate() {
        a.column_mut(c).unscale_mut(l);
    }
    a
}

/// Assembles the four-row-per-vertex stress system in normalized coordinates.
pub fn self_stress_system(r: &Realization) -> StressSystem {
    let (positions, _, _) = r.normalized_positions();
    let m = r.mesh();
    let lengths: Vec<f64> = m
        .interior_edges()
        .iter()
        .map(|&e| {
            let edge = m.edge(e);
            (positions[edge.head] - positions[edge.tail]).norm()
        })
        .collect();
    let matrix = scale_columns(assemble(m, &positions, false), &lengths);
    StressSystem {
        matrix,
        lengths,
        positions,
    }
}

/// Residuals of the defining equations for one stress, in normalized coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StressResiduals {
    /// `max_i |sum_j k_ij df(e_ij)|`: closedness of `τ`.
    pub closedness: f64,
    /// `max |df × τ|` over interior edges: parallelism of `τ`.
    pub parallelism: f64,
    /// `max_i |sum_j <df(e_ij), τ(e*_ij)>|`.
    pub pairing: f64,
    /// `max_i |sum_j k_ij (|f_j|² - |f_i|²)|`.
    pub scalar_row: f64,
}

impl StressResiduals {
    pub fn max(&self) -> f64 {
        self.closedness
            .max(self.parallelism)
            .max(self.pairing)
            .max(self.scalar_row)
    }
}

/// A self-stress `k` on interior edges, indexed like `mesh.interior_edges()`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeStress {
    pub values: Vec<f64>,
    /// Number of edges with `|k| > 1e-8 max |k|`.
    pub support: usize,
    pub residuals: StressResiduals,
}

/// Evaluates the defining equations for `k` on the given positions.
pub fn stress_residuals(
    mesh: &SurfaceMesh,
    positions: &[Vector3<f64>],
    k: &[f64],
) -> StressResiduals {
    let mut out = StressResiduals {
        closedness: 0.0,
        parallelism: 0.0,
        pairing: 0.0,
        scalar_row: 0.0,
    };
    for &i in mesh.interior_vertices() {
        let mut vec_sum = Vector3::zeros();
        let mut pair = 0.0;
        let mut scalar = 0.0;
        for &(e, _) in mesh.star(i) {
            let kv = k[mesh.interior_index(e).unwrap()];
            let (j, d) = outgoing(mesh, positions, e, i);
            vec_sum += kv * d;
            pair += kv * d.norm_squared();
            scalar += kv * (positions[j].norm_squared() - positions[i].norm_squared());
        }
        out.closedness = out.closedness.max(vec_sum.norm());
        out.pairing = out.pairing.max(pair.abs());
        out.scalar_row = out.scalar_row.max(scalar.abs());
    }
    for (c, &e) in mesh.interior_edges().iter().enumerate() {
        let edge = mesh.edge(e);
        let d = positions[edge.head] - positions[edge.tail];
        out.parallelism = out.parallelism.max(d.cross(&(k[c] * d)).norm());
    }
    out
}

fn support(k: &[f64]) -> usize {
    let max = k.iter().map(|v| v.abs()).fold(0.0, f64::max);
    k.iter().filter(|v| v.abs() > 1e-8 * max).count()
}

/// Orthonormal basis (columns) of `S y` for the nullspace vectors `y`.
fn unscaled_basis(basis: &DMatrix<f64>, lengths: &[f64]) -> DMatrix<f64> {
    if basis.ncols() == 0 {
        return basis.clone();
    }
    let mut k = basis.clone();
    for (r, &l) in lengths.iter().enumerate() {
        k.row_mut(r).unscale_mut(l);
    }
    k.qr().q()
}

/// Nullspace of the self-stress system with its verdict and diagnostics.
#[derive(Debug, Clone)]
pub struct SelfStressBasis {
    pub verdict: Verdict,
    pub stresses: Vec<EdgeStress>,
    /// All singular values of the column-scaled system, descending.
    pub singular_values: Vec<f64>,
    pub rank_tol: f64,
    /// Absolute threshold `rank_tol * sigma_max`.
    pub threshold: f64,
    pub marginal: Option<Marginal>,
    pub rows: usize,
    pub cols: usize,
    /// Nullity of the five-row light-cone system.
    pub lifted_nullity: usize,
    /// Largest principal angle between the two nullspaces.
    pub lifted_angle: f64,
}

impl SelfStressBasis {
    pub fn nullity(&self) -> usize {
        self.stresses.len()
    }

    pub fn is_isothermic(&self) -> bool {
        self.verdict == Verdict::Isothermic
    }

    /// Largest residual over all basis vectors.
    pub fn max_residual(&self) -> f64 {
        self.stresses
            .iter()
            .map(|s| s.residuals.max())
            .fold(0.0, f64::max)
    }

    /// Basis vectors as columns.
    pub fn matrix(&self) -> DMatrix<f64> {
        let n = self.cols;
        DMatrix::from_fn(n, self.stresses.len(), |r, c| self.stresses[c].values[r])
    }
}

/// Computes the self-stress nullspace and classifies the realization.
pub fn isothermic_basis(r: &Realization, rank_tol: f64) -> SelfStressBasis {
    let m = r.mesh();
    let sys = self_stress_system(r);
    let (rows, cols) = sys.matrix.shape();
    if m.interior_vertices().is_empty() || cols == 0 {
        return SelfStressBasis {
            verdict: Verdict::VacuouslyNonIsothermic,
            stresses: Vec::new(),
            singular_values: Vec::new(),
            rank_tol,
            threshold: 0.0,
            marginal: None,
            rows,
            cols,
            lifted_nullity: 0,
            lifted_angle: 0.0,
        };
    }
    let ns = linalg::nullspace(&sys.matrix, rank_tol);
    let k = unscaled_basis(&ns.basis, &sys.lengths);

    let lifted_matrix = scale_columns(assemble(m, &sys.positions, true), &sys.lengths);
    let lifted = linalg::nullspace(&lifted_matrix, rank_tol);
    let k_lifted = unscaled_basis(&lifted.basis, &sys.lengths);
    let lifted_angle = linalg::max_principal_angle(&k, &k_lifted);

    let stresses: Vec<EdgeStress> = k
        .column_iter()
        .map(|c| {
            let values: Vec<f64> = c.iter().copied().collect();
            EdgeStress {
                support: support(&values),
                residuals: stress_residuals(m, &sys.positions, &values),
                values,
            }
        })
        .collect();
    let verdict = if ns.marginal.is_some() {
        Verdict::Marginal
    } else if stresses.is_empty() {
        Verdict::NotIsothermic
    } else {
        Verdict::Isothermic
    };
    SelfStressBasis {
        verdict,
        stresses,
        singular_values: ns.singular_values,
        rank_tol,
        threshold: ns.threshold,
        marginal: ns.marginal,
        rows,
        cols,
        lifted_nullity: lifted.nullity(),
        lifted_angle,
    }
}

/// `τ` built from a stress, with its consistency report.
#[derive(Debug, Clone)]
pub struct TauReport {
    pub tau: DualOneForm<Vector3<f64>>,
    /// Residuals in the realization's own coordinates.
    pub residuals: StressResiduals,
    /// False when a residual exceeds ten times the tolerance.
    pub consistent: bool,
    pub trivial: bool,
}

/// `τ(e*_ij) = k_ij df(e_ij)` on the realization's own coordinates.
///
/// `tol` is relative: closedness is compared with `tol * scale * |k|∞` and the
/// quadratic equations with `tol * scale² * |k|∞`.
pub fn tau_from_stress(r: &Realization, k: &[f64], tol: f64) -> Result<TauReport, IsothermicError> {
    let m = r.mesh();
    if k.len() != m.interior_edges().len() {
        return Err(IsothermicError::StressLength {
            expected: m.interior_edges().len(),
            got: k.len(),
        });
    }
    let tau = DualOneForm::from_fn(m, |e| k[m.interior_index(e).unwrap()] * r.edge_vector(e));
    let residuals = stress_residuals(m, r.positions(), k);
    let kmax = k.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let s = r.scale();
    let lim = 10.0 * tol * kmax;
    let consistent = residuals.closedness <= lim * s
        && residuals.parallelism <= lim * s * s
        && residuals.pairing <= lim * s * s;
    Ok(TauReport {
        tau,
        residuals,
        consistent,
        trivial: kmax == 0.0,
    })
}

/// Signed dihedral angles and edge mean curvature on interior edges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeanCurvatureData {
    /// `α_ij`, indexed like `mesh.interior_edges()`.
    pub alpha: Vec<f64>,
    /// `H_ij = α_ij ℓ_ij`.
    pub edge_h: Vec<f64>,
    /// `sum_j H_ij` per vertex over interior edges.
    pub vertex_h: Vec<f64>,
}

/// Dihedral angle of interior edge `e`, positive where the normals diverge.
pub fn dihedral_angle(r: &Realization, e: usize) -> Option<f64> {
    let m = r.mesh();
    let rf = m.right_face(e)?;
    let nl = r.face_normal(m.left_face(e));
    let nr = r.face_normal(rf);
    let axis = r.edge_vector(e).normalize();
    Some(nl.cross(&nr).dot(&axis).atan2(nl.dot(&nr)))
}

pub fn mean_curvature(r: &Realization) -> Result<MeanCurvatureData, MeshError> {
    r.require_strong()?;
    let m = r.mesh();
    let alpha: Vec<f64> = m
        .interior_edges()
        .iter()
        .map(|&e| dihedral_angle(r, e).unwrap())
        .collect();
    let edge_h: Vec<f64> = m
        .interior_edges()
        .iter()
        .zip(&alpha)
        .map(|(&e, a)| a * r.edge_length(e))
        .collect();
    let mut vertex_h = vec![0.0; m.vertex_count()];
    for (c, &e) in m.interior_edges().iter().enumerate() {
        let edge = m.edge(e);
        vertex_h[edge.tail] += edge_h[c];
        vertex_h[edge.head] += edge_h[c];
    }
    Ok(MeanCurvatureData {
        alpha,
        edge_h,
        vertex_h,
    })
}

/// `sum_j α_ij ℓ_ij` per vertex.
pub fn vertex_mean_curvature(r: &Realization) -> Result<Vec<f64>, MeshError> {
    Ok(mean_curvature(r)?.vertex_h)
}

/// `Ḣ_i = sum_j <df(e_ij), Z_ijk - Z_jil>` at each interior vertex,
/// ordered like `mesh.interior_vertices()`.
pub fn vertex_mean_curvature_rate(r: &Realization, z: &[Vector3<f64>]) -> Vec<f64> {
    let m = r.mesh();
    m.interior_vertices()
        .iter()
        .map(|&i| {
            m.star(i)
                .iter()
                .map(|&(e, _)| {
                    // the product is the same in both orientations of the edge
                    let dz = z[m.left_face(e)] - z[m.right_face(e).unwrap()];
                    r.edge_vector(e).dot(&dz)
                })
                .sum()
        })
        .collect()
}

/// Rigidity matrix of the bar framework: one row per edge, `3|V|` columns.
pub fn rigidity_matrix(r: &Realization) -> DMatrix<f64> {
    let m = r.mesh();
    let (p, _, _) = r.normalized_positions();
    let mut a = DMatrix::zeros(m.edge_count(), 3 * m.vertex_count());
    for (e, edge) in m.edges().iter().enumerate() {
        let d = p[edge.head] - p[edge.tail];
        for c in 0..3 {
            a[(e, 3 * edge.head + c)] = d[c];
            a[(e, 3 * edge.tail + c)] = -d[c];
        }
    }
    a
}

/// Report relating infinitesimal flexibility and isothermicity of an inscribed mesh.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InscribedReport {
    pub radius: f64,
    /// `3|V| - rank` of the rigidity matrix.
    pub rigidity_corank: usize,
    pub flexible: bool,
    /// Dimension of the Euclidean stresses `sum_j k_ij df(e_ij) = 0`.
    pub euclidean_nullity: usize,
    /// `max |sum_j k_ij |df|²|` over interior vertices and Euclidean stresses.
    pub quadratic_identity: f64,
    pub verdict: Verdict,
    pub agree: bool,
}

/// Checks the inscribed-mesh relations for a realization on an origin-centered sphere.
pub fn inscribed_diagnostics(
    r: &Realization,
    rank_tol: f64,
) -> Result<InscribedReport, IsothermicError> {
    let radius = r.position(0).norm();
    for (v, p) in r.positions().iter().enumerate() {
        if (p.norm() - radius).abs() > 1e-9 * radius.max(1.0) {
            return Err(IsothermicError::OffSphere {
                vertex: v,
                norm: p.norm(),
                radius,
            });
        }
    }
    let m = r.mesh();
    let rig = linalg::nullspace(&rigidity_matrix(r), rank_tol);
    let rigidity_corank = rig.nullity();

    let sys = self_stress_system(r);
    let euclid_rows: Vec<usize> = (0..sys.matrix.nrows()).filter(|row| row % 4 != 3).collect();
    let euclid = sys.matrix.select_rows(euclid_rows.iter());
    let ens = linalg::nullspace(&euclid, rank_tol);
    let k = unscaled_basis(&ens.basis, &sys.lengths);
    let quadratic_identity = k
        .column_iter()
        .map(|c| {
            let values: Vec<f64> = c.iter().copied().collect();
            stress_residuals(m, &sys.positions, &values).pairing
        })
        .fold(0.0, f64::max);

    let basis = isothermic_basis(r, rank_tol);
    let flexible = rigidity_corank > 6;
    Ok(InscribedReport {
        radius,
        rigidity_corank,
        flexible,
        euclidean_nullity: ens.nullity(),
        quadratic_identity,
        verdict: basis.verdict,
        agree: flexible == basis.is_isothermic(),
    })
}

/// JSON report for one check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IsothermicReport {
    pub schema: u32,
    pub verdict: Verdict,
    pub nullity: usize,
    pub rank_tol: f64,
    pub threshold: f64,
    pub sigma_max: f64,
    /// The smallest singular values, ascending.
    pub spectrum_tail: Vec<f64>,
    pub marginal: Option<Marginal>,
    pub system: [usize; 2],
    pub lifted_nullity: usize,
    pub lifted_angle: f64,
    pub residuals: Vec<StressResiduals>,
    pub support: Vec<usize>,
    pub mesh: MeshReport,
}

impl IsothermicReport {
    pub fn new(r: &Realization, basis: &SelfStressBasis) -> Self {
        let tail: Vec<f64> = basis
            .singular_values
            .iter()
            .rev()
            .take(12)
            .copied()
            .collect();
        Self {
            schema: 1,
            verdict: basis.verdict,
            nullity: basis.nullity(),
            rank_tol: basis.rank_tol,
            threshold: basis.threshold,
            sigma_max: basis.singular_values.first().copied().unwrap_or(0.0),
            spectrum_tail: tail,
            marginal: basis.marginal,
            system: [basis.rows, basis.cols],
            lifted_nullity: basis.lifted_nullity,
            lifted_angle: basis.lifted_angle,
            residuals: basis.stresses.iter().map(|s| s.residuals).collect(),
            support: basis.stresses.iter().map(|s| s.support).collect(),
            mesh: MeshReport::new(r),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{self, Platonic};
    use crate::linalg::DEFAULT_RANK_TOL;
    use std::sync::Arc;

    #[test]
    fn tetrahedron_system_shape_and_verdict() {
        let r = generators::platonic(Platonic::Tetrahedron);
        let b = isothermic_basis(&r, DEFAULT_RANK_TOL);
        assert_eq!((b.rows, b.cols), (16, 6));
        assert_eq!(b.verdict, Verdict::NotIsothermic);
    }

    #[test]
    fn jessen_system_shape() {
        let r = generators::jessen();
        let s = self_stress_system(&r);
        assert_eq!(s.matrix.shape(), (48, 30));
    }

    #[test]
    fn small_grid_nullity_meets_boundary_count() {
        let r = generators::grid_disk(3).unwrap();
        let b = isothermic_basis(&r, DEFAULT_RANK_TOL);
        assert!(b.nullity() >= 8 - 3);
        assert!(b.max_residual() < 1e-12);
        assert!(b.lifted_angle < 1e-8);
    }

    #[test]
    fn single_triangle_is_vacuous() {
        let r = Realization::new(
            Arc::new(SurfaceMesh::new(3, &[[0, 1, 2]]).unwrap()),
            vec![Vector3::zeros(), Vector3::x(), Vector3::y()],
        )
        .unwrap();
        assert_eq!(
            isothermic_basis(&r, DEFAULT_RANK_TOL).verdict,
            Verdict::VacuouslyNonIsothermic
        );
    }

    #[test]
    fn zero_stress_is_trivial() {
        let r = generators::grid_disk(4).unwrap();
        let k = vec![0.0; r.mesh().interior_edges().len()];
        let t = tau_from_stress(&r, &k, 1e-8).unwrap();
        assert!(t.trivial && t.tau.is_zero());
    }

    #[test]
    fn planar_mesh_has_zero_curvature() {
        let r = generators::grid_disk(5).unwrap();
        let h = mean_curvature(&r).unwrap();
        assert!(h.edge_h.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn right_fold() {
        // two right triangles hinged on the y-axis, folded to a right angle
        let mesh = Arc::new(SurfaceMesh::new(4, &[[0, 1, 2], [0, 3, 1]]).unwrap());
        let p = vec![Vector3::zeros(), Vector3::y(), Vector3::x(), Vector3::z()];
        let r = Realization::new(mesh, p).unwrap();
        let h = mean_curvature(&r).unwrap();
        assert!((h.alpha[0].abs() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert!((h.edge_h[0].abs() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn tetrahedron_dihedral_is_convex_positive() {
        let r = generators::platonic(Platonic::Tetrahedron);
        let h = mean_curvature(&r).unwrap();
        let expected = (-1.0f64 / 3.0).acos();
        for a in h.alpha {
            assert!((a - expected).abs() < 1e-12, "{a}");
        }
    }

    #[test]
    fn constant_rotation_has_zero_rate() {
        let r = generators::jessen();
        let z = vec![Vector3::new(0.1, 0.2, 0.3); r.mesh().face_count()];
        assert!(vertex_mean_curvature_rate(&r, &z).iter().all(|v| *v == 0.0));
    }
}
