//! Cotangent weights and the discrete Dirichlet problem.

use nalgebra::{DMatrix, DVector};
use nalgebra_sparse::factorization::CscCholesky;
use nalgebra_sparse::{CooMatrix, CscMatrix};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mesh::{MeshError, Realization, SurfaceMesh};

/// Default interior residual tolerance, relative to `max|u| * max_i sum_j |c_ij|`.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Dense fallback is used for indefinite systems up to this many unknowns.
const DENSE_FALLBACK_LIMIT: usize = 4000;

#[derive(Debug, Error)]
pub enum HarmonicError {
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error("mesh has no boundary vertices to carry Dirichlet data")]
    NoBoundary,
    #[error(
        "Dirichlet system is singular ({unknowns} unknowns, {negative_weights} negative weights)"
    )]
    Singular {
        unknowns: usize,
        negative_weights: usize,
    },
    #[error("indefinite Dirichlet system with {0} unknowns is too large for the dense fallback")]
    TooLarge(usize),
    #[error("harmonic residual {max:e} exceeds tolerance {tol:e}")]
    Residual { max: f64, tol: f64 },
}

/// `c_ij = cot(angle at k) + cot(angle at l)`, one value per edge; boundary edges
/// carry the single cotangent available.
#[derive(Debug, Clone, PartialEq)]
pub struct CotanWeights {
    pub weights: Vec<f64>,
}

pub fn cotan_weights(r: &Realization) -> Result<CotanWeights, MeshError> {
    r.require_strong()?;
    let m = r.mesh();
    let corner = |f: usize, v: usize| m.face(f).iter().position(|&w| w == v).unwrap();
    let weights = (0..m.edge_count())
        .map(|e| {
            let lf = m.left_face(e);
            let mut c = r.corner_cot(lf, corner(lf, m.left_apex(e)));
            if let (Some(rf), Some(l)) = (m.right_face(e), m.right_apex(e)) {
                c += r.corner_cot(rf, corner(rf, l));
            }
            c
        })
        .collect();
    Ok(CotanWeights { weights })
}

impl CotanWeights {
    pub fn get(&self, e: usize) -> f64 {
        self.weights[e]
    }

    pub fn negative_count(&self) -> usize {
        self.weights.iter().filter(|&&c| c < 0.0).count()
    }

    /// `sum_j c_ij (u_j - u_i)` at vertex `i`.
    pub fn laplacian_at(&self, mesh: &SurfaceMesh, u: &[f64], i: usize) -> f64 {
        mesh.star(i)
            .iter()
            .map(|&(e, _)| self.weights[e] * (u[mesh.edge(e).other(i)] - u[i]))
            .sum()
    }

    /// The Laplacian at every vertex (boundary rows included).
    pub fn apply(&self, mesh: &SurfaceMesh, u: &[f64]) -> Vec<f64> {
        (0..mesh.vertex_count())
            .map(|i| self.laplacian_at(mesh, u, i))
            .collect()
    }

    /// `max_i sum_j |c_ij|`, the scale of a Laplacian row.
    pub fn row_scale(&self, mesh: &SurfaceMesh) -> f64 {
        (0..mesh.vertex_count())
            .map(|i| {
                mesh.star(i)
                    .iter()
                    .map(|&(e, _)| self.weights[e].abs())
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }
}

/// Which factorization produced a solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverMethod {
    SparseCholesky,
    DenseLu,
    Trivial,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverDiagnostics {
    pub method: SolverMethod,
    pub unknowns: usize,
    pub negative_weights: usize,
    /// False when the Cholesky factorization failed and LU was used instead.
    pub definite: bool,
}

/// A discrete harmonic function together with its residual report.
#[derive(Debug, Clone)]
pub struct HarmonicFunction {
    pub u: Vec<f64>,
    /// Laplacian at each interior vertex, ordered like `mesh.interior_vertices()`.
    pub residuals: Vec<f64>,
    /// Combined Laplacian over each identified seam pair.
    pub seam_residuals: Vec<f64>,
    pub max_residual: f64,
    /// Absolute tolerance the residuals were checked against.
    pub tolerance: f64,
    pub diagnostics: SolverDiagnostics,
}

/// Boundary vertices that are glued back together with a fixed jump.
///
/// Each pair `(a, b)` is solved as one unknown with `u_b = u_a + jump`, and the
/// harmonic equation is imposed on the union of their stars.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeamPair {
    pub a: usize,
    pub b: usize,
    pub jump: f64,
}

/// Solves `sum_j c_ij (u_j - u_i) = 0` at interior vertices with `u = g` on the boundary.
pub fn solve_dirichlet(
    r: &Realization,
    boundary: impl Fn(usize) -> f64,
    rel_tol: f64,
) -> Result<HarmonicFunction, HarmonicError> {
    solve_with_seam(r, boundary, &[], rel_tol)
}

/// Like [`solve_dirichlet`], but seam pairs are treated as glued interior vertices.
pub fn solve_with_seam(
    r: &Realization,
    boundary: impl Fn(usize) -> f64,
    seam: &[SeamPair],
    rel_tol: f64,
) -> Result<HarmonicFunction, HarmonicError> {
    let m = r.mesh();
    let n = m.vertex_count();
    if m.interior_vertices().len() == n {
        return Err(HarmonicError::NoBoundary);
    }
    let weights = cotan_weights(r)?;

    // each vertex is either fixed or an unknown plus an offset
    let mut node: Vec<Option<(usize, f64)>> = vec![None; n];
    let mut unknowns = 0;
    for &i in m.interior_vertices() {
        node[i] = Some((unknowns, 0.0));
        unknowns += 1;
    }
    for s in seam {
        node[s.a] = Some((unknowns, 0.0));
        node[s.b] = Some((unknowns, s.jump));
        unknowns += 1;
    }
    let fixed: Vec<f64> = (0..n)
        .map(|v| if node[v].is_none() { boundary(v) } else { 0.0 })
        .collect();

    // minimize sum_e c_e (u_i - u_j)^2 over the unknowns
    let mut coo = CooMatrix::new(unknowns, unknowns);
    let mut rhs = DVector::zeros(unknowns);
    for (e, edge) in m.edges().iter().enumerate() {
        let c = weights.get(e);
        let (i, j) = (edge.tail, edge.head);
        match (node[i], node[j]) {
            (Some((a, oa)), Some((b, ob))) => {
                if a != b {
                    coo.push(a, a, c);
                    coo.push(b, b, c);
                    coo.push(a, b, -c);
                    coo.push(b, a, -c);
                }
                // (x_a + oa - x_b - ob)^2
                rhs[a] -= c * (oa - ob);
                rhs[b] += c * (oa - ob);
            }
            (Some((a, oa)), None) => {
                coo.push(a, a, c);
                rhs[a] += c * (fixed[j] - oa);
            }
            (None, Some((b, ob))) => {
                coo.push(b, b, c);
                rhs[b] += c * (fixed[i] - ob);
            }
            (None, None) => {}
        }
    }

    let (x, method, definite) = if unknowns == 0 {
        (DVector::zeros(0), SolverMethod::Trivial, true)
    } else {
        let csc = CscMatrix::from(&coo);
        match CscCholesky::factor(&csc) {
            Ok(chol) => {
                let b = DMatrix::from_column_slice(unknowns, 1, rhs.as_slice());
                let x = chol.solve(&b);
                (x.column(0).into_owned(), SolverMethod::SparseCholesky, true)
            }
            Err(_) => {
                if unknowns > DENSE_FALLBACK_LIMIT {
                    return Err(HarmonicError::TooLarge(unknowns));
                }
                let dense = DMatrix::from(&csc);
                let x = dense.lu().solve(&rhs).ok_or(HarmonicError::Singular {
                    unknowns,
                    negative_weights: weights.negative_count(),
                })?;
                (x, SolverMethod::DenseLu, false)
            }
        }
    };

    let u: Vec<f64> = (0..n)
        .map(|v| match node[v] {
            Some((a, off)) => x[a] + off,
            None => fixed[v],
        })
        .collect();
    let residuals: Vec<f64> = m
        .interior_vertices()
        .iter()
        .map(|&i| weights.laplacian_at(m, &u, i))
        .collect();
    let seam_residuals: Vec<f64> = seam
        .iter()
        .map(|s| weights.laplacian_at(m, &u, s.a) + weights.laplacian_at(m, &u, s.b))
        .collect();
    let max_residual = residuals
        .iter()
        .chain(&seam_residuals)
        .map(|v| v.abs())
        .fold(0.0, f64::max);
    let u_max = u.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let tolerance = rel_tol * u_max.max(1.0) * weights.row_scale(m);
    if !(max_residual <= tolerance) {
        return Err(HarmonicError::Residual {
            max: max_residual,
            tol: tolerance,
        });
    }
    Ok(HarmonicFunction {
        u,
        residuals,
        seam_residuals,
        max_residual,
        tolerance,
        diagnostics: SolverDiagnostics {
            method,
            unknowns,
            negative_weights: weights.negative_count(),
            definite,
        },
    })
}

/// Writes `vertex_id,u` lines with a header.
pub fn to_csv(u: &[f64]) -> String {
    let mut s = String::from("vertex_id,u\n");
    for (i, v) in u.iter().enumerate() {
        s.push_str(&format!("{i},{v}\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use nalgebra::Vector3;
    use std::sync::Arc;

    fn two_triangles(p: [[f64; 3]; 4]) -> Realization {
        let mesh = SurfaceMesh::new(4, &[[0, 1, 2], [0, 2, 3]]).unwrap();
        Realization::new(
            Arc::new(mesh),
            p.iter().map(|c| Vector3::from(*c)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn equilateral_pair_weight() {
        let h = 3f64.sqrt() / 2.0;
        let r = two_triangles([
            [0.0, 0.0, 0.0],
            [0.5, -h, 0.0],
            [1.0, 0.0, 0.0],
            [0.5, h, 0.0],
        ]);
        let w = cotan_weights(&r).unwrap();
        let e = r.mesh().find_edge(0, 2).unwrap();
        assert!((w.get(e) - 2.0 / 3f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn square_diagonal_weight_vanishes() {
        let r = two_triangles([
            [0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [1.0, 1.0, 0.0],
            [0.0, 1.0, 0.0],
        ]);
        let w = cotan_weights(&r).unwrap();
        let e = r.mesh().find_edge(0, 2).unwrap();
        assert!(w.get(e).abs() < 1e-15);
    }

    #[test]
    fn obtuse_pair_gives_negative_weight() {
        let r = two_triangles([
            [0.0, 0.0, 0.0],
            [1.0, -0.1, 0.0],
            [2.0, 0.0, 0.0],
            [1.0, 0.1, 0.0],
        ]);
        let w = cotan_weights(&r).unwrap();
        let e = r.mesh().find_edge(0, 2).unwrap();
        assert!(w.get(e) < 0.0);
    }

    #[test]
    fn constant_boundary_gives_constant() {
        let r = generators::grid_disk(6).unwrap();
        let h = solve_dirichlet(&r, |_| 2.5, DEFAULT_TOLERANCE).unwrap();
        assert!(h.u.iter().all(|&v| (v - 2.5).abs() < 1e-13));
    }

    #[test]
    fn linear_precision() {
        let r = generators::grid_disk(7).unwrap();
        let lin = |p: &Vector3<f64>| 0.3 * p.x - 1.7 * p.y + 0.25;
        let w = cotan_weights(&r).unwrap();
        let exact: Vec<f64> = r.positions().iter().map(lin).collect();
        for &i in r.mesh().interior_vertices() {
            assert!(w.laplacian_at(r.mesh(), &exact, i).abs() < 1e-12);
        }
        let h = solve_dirichlet(&r, |v| lin(&r.position(v)), DEFAULT_TOLERANCE).unwrap();
        for (a, b) in h.u.iter().zip(&exact) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn no_boundary_is_an_error() {
        let r = generators::platonic(generators::Platonic::Tetrahedron);
        assert!(matches!(
            solve_dirichlet(&r, |_| 0.0, DEFAULT_TOLERANCE),
            Err(HarmonicError::NoBoundary)
        ));
    }

    #[test]
    fn csv_sidecar_format() {
        assert_eq!(to_csv(&[1.0, -0.5]), "vertex_id,u\n0,1\n1,-0.5\n");
    }
}
