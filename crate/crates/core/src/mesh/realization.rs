use std::sync::Arc;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use super::{MeshError, PrimalOneForm, SurfaceMesh};

/// Edges shorter than this fraction of the bounding-box diagonal are degenerate.
pub const EDGE_REL_TOL: f64 = 1e-12;
/// Faces with area below this fraction of the squared diagonal are collinear.
pub const AREA_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegeneracyGrade {
    /// Distinct endpoints on every edge, but some face is (nearly) collinear.
    NonDegenerate,
    /// Every face spans an affine 2-plane.
    StronglyNonDegenerate,
}

/// Per-face unit normal, unsigned area and interior angles at the three corners.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FaceGeometry {
    pub normal: Vector3<f64>,
    pub area: f64,
    /// `angles[k]` is the corner angle at `faces[f][k]`.
    pub angles: [f64; 3],
}

/// Vertex positions in R³ for a [`SurfaceMesh`].
#[derive(Debug, Clone)]
pub struct Realization {
    mesh: Arc<SurfaceMesh>,
    positions: Vec<Vector3<f64>>,
    grade: DegeneracyGrade,
    scale: f64,
}

impl Realization {
    /// Wraps positions, rejecting realizations with a zero-length edge.
    pub fn new(mesh: Arc<SurfaceMesh>, positions: Vec<Vector3<f64>>) -> Result<Self, MeshError> {
        if positions.len() != mesh.vertex_count() {
            return Err(MeshError::PositionCount {
                expected: mesh.vertex_count(),
                got: positions.len(),
            });
        }
        if let Some(v) = positions
            .iter()
            .position(|p| !p.iter().all(|c| c.is_finite()))
        {
            return Err(MeshError::NonFinite(v));
        }
        let scale = bbox_diagonal(&positions);
        for (e, edge) in mesh.edges().iter().enumerate() {
            let len = (positions[edge.head] - positions[edge.tail]).norm();
            if len <= EDGE_REL_TOL * scale || scale == 0.0 {
                return Err(MeshError::DegenerateEdge(e, len));
            }
        }
        let strong = mesh.faces().iter().all(|t| {
            let a = positions[t[1]] - positions[t[0]];
            let b = positions[t[2]] - positions[t[0]];
            0.5 * a.cross(&b).norm() > AREA_REL_TOL * scale * scale
        });
        let grade = if strong {
            DegeneracyGrade::StronglyNonDegenerate
        } else {
            DegeneracyGrade::NonDegenerate
        };
        Ok(Self {
            mesh,
            positions,
            grade,
            scale,
        })
    }

    /// Same combinatorics, new positions.
    pub fn with_positions(&self, positions: Vec<Vector3<f64>>) -> Result<Self, MeshError> {
        Self::new(self.mesh.clone(), positions)
    }

    /// Applies `map` to every vertex.
    pub fn map_positions(
        &self,
        map: impl Fn(&Vector3<f64>) -> Vector3<f64>,
    ) -> Result<Self, MeshError> {
        self.with_positions(self.positions.iter().map(map).collect())
    }

    pub fn mesh(&self) -> &SurfaceMesh {
        &self.mesh
    }

    pub fn mesh_arc(&self) -> &Arc<SurfaceMesh> {
        &self.mesh
    }

    pub fn positions(&self) -> &[Vector3<f64>] {
        &self.positions
    }

    pub fn position(&self, v: usize) -> Vector3<f64> {
        self.positions[v]
    }

    pub fn grade(&self) -> DegeneracyGrade {
        self.grade
    }

    pub fn is_strongly_non_degenerate(&self) -> bool {
        self.grade == DegeneracyGrade::StronglyNonDegenerate
    }

    /// Bounding-box diagonal, the length scale used by relative tolerances.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// `df(e) = f_head - f_tail` along the canonical orientation of `e`.
    pub fn edge_vector(&self, e: usize) -> Vector3<f64> {
        let edge = self.mesh.edge(e);
        self.positions[edge.head] - self.positions[edge.tail]
    }

    pub fn edge_length(&self, e: usize) -> f64 {
        self.edge_vector(e).norm()
    }

    pub fn edge_lengths(&self) -> Vec<f64> {
        (0..self.mesh.edge_count())
            .map(|e| self.edge_length(e))
            .collect()
    }

    /// The exact primal 1-form `df`.
    pub fn df(&self) -> PrimalOneForm<Vector3<f64>> {
        PrimalOneForm::exact(&self.mesh, &self.positions)
    }

    /// Area-weighted normal direction `(f_j - f_i) x (f_k - f_i) / 2` (not normalized).
    pub fn face_area_vector(&self, f: usize) -> Vector3<f64> {
        let t = self.mesh.face(f);
        let a = self.positions[t[1]] - self.positions[t[0]];
        let b = self.positions[t[2]] - self.positions[t[0]];
        0.5 * a.cross(&b)
    }

    /// Unit normal of face `f`; zero-length for collinear faces.
    pub fn face_normal(&self, f: usize) -> Vector3<f64> {
        let n = self.face_area_vector(f);
        let len = n.norm();
        if len > 0.0 {
            n / len
        } else {
            n
        }
    }

    /// Fails with the first collinear face when the realization is not strongly non-degenerate.
    pub fn require_strong(&self) -> Result<(), MeshError> {
        let tol = AREA_REL_TOL * self.scale * self.scale;
        for f in 0..self.mesh.face_count() {
            let a = self.face_area_vector(f).norm();
            if a <= tol {
                return Err(MeshError::CollinearFace(f, a));
            }
        }
        Ok(())
    }

    /// Normals, areas and corner angles of every face.
    pub fn face_geometry(&self) -> Result<Vec<FaceGeometry>, MeshError> {
        self.require_strong()?;
        Ok((0..self.mesh.face_count())
            .map(|f| {
                let t = self.mesh.face(f);
                let p = [
                    self.positions[t[0]],
                    self.positions[t[1]],
                    self.positions[t[2]],
                ];
                let av = self.face_area_vector(f);
                let area = av.norm();
                let mut angles = [0.0; 3];
                for (k, angle) in angles.iter_mut().enumerate() {
                    let u = p[(k + 1) % 3] - p[k];
                    let w = p[(k + 2) % 3] - p[k];
                    *angle = u.cross(&w).norm().atan2(u.dot(&w));
                }
                FaceGeometry {
                    normal: av / area,
                    area,
                    angles,
                }
            })
            .collect())
    }

    /// Cotangent of the corner angle at local corner `k` of face `f`.
    pub fn corner_cot(&self, f: usize, k: usize) -> f64 {
        let t = self.mesh.face(f);
        let u = self.positions[t[(k + 1) % 3]] - self.positions[t[k]];
        let w = self.positions[t[(k + 2) % 3]] - self.positions[t[k]];
        u.dot(&w) / u.cross(&w).norm()
    }

    /// Translates and scales into the unit box around the origin; returns the
    /// normalized positions, the center and the scale factor applied.
    pub fn normalized_positions(&self) -> (Vec<Vector3<f64>>, Vector3<f64>, f64) {
        let (lo, hi) = bbox(&self.positions);
        let center = 0.5 * (lo + hi);
        let s = 1.0 / self.scale;
        (
            self.positions.iter().map(|p| (p - center) * s).collect(),
            center,
            s,
        )
    }

    /// Returns `(unit normal, max deviation)` if all vertices lie in one plane.
    pub fn plane(&self) -> Option<(Vector3<f64>, f64)> {
        let mut n = Vector3::zeros();
        for f in 0..self.mesh.face_count() {
            n += self.face_area_vector(f);
        }
        if n.norm() == 0.0 {
            return None;
        }
        let n = n.normalize();
        let p0 = self.positions[0];
        let dev = self
            .positions
            .iter()
            .map(|p| (p - p0).dot(&n).abs())
            .fold(0.0, f64::max);
        (dev <= 1e-12 * self.scale).then_some((n, dev))
    }
}

fn bbox(points: &[Vector3<f64>]) -> (Vector3<f64>, Vector3<f64>) {
    let mut lo = Vector3::repeat(f64::INFINITY);
    let mut hi = Vector3::repeat(f64::NEG_INFINITY);
    for p in points {
        lo = lo.inf(p);
        hi = hi.sup(p);
    }
    (lo, hi)
}

fn bbox_diagonal(points: &[Vector3<f64>]) -> f64 {
    let (lo, hi) = bbox(points);
    (hi - lo).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4};

    fn tri(p: [[f64; 3]; 3]) -> Realization {
        let mesh = Arc::new(SurfaceMesh::new(3, &[[0, 1, 2]]).unwrap());
        Realization::new(mesh, p.iter().map(|c| Vector3::from(*c)).collect()).unwrap()
    }

    #[test]
    fn right_triangle_geometry() {
        let r = tri([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]);
        let g = r.face_geometry().unwrap()[0];
        assert!((g.area - 0.5).abs() < 1e-15);
        assert!((g.angles[0] - FRAC_PI_2).abs() < 1e-15);
        assert!((g.angles[1] - FRAC_PI_4).abs() < 1e-15);
        assert!((g.angles[2] - FRAC_PI_4).abs() < 1e-15);
        assert_eq!(g.normal, Vector3::z());
    }

    #[test]
    fn equilateral_triangle_geometry() {
        let h = 3f64.sqrt() / 2.0;
        let r = tri([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.5, h, 0.0]]);
        let g = r.face_geometry().unwrap()[0];
        assert!((g.area - 3f64.sqrt() / 4.0).abs() < 1e-15);
        for a in g.angles {
            assert!((a - FRAC_PI_3).abs() < 1e-14);
        }
    }

    #[test]
    fn collinear_face_is_reported() {
        let r = tri([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [2.0, 0.0, 0.0]]);
        assert_eq!(r.grade(), DegeneracyGrade::NonDegenerate);
        assert!(matches!(
            r.face_geometry(),
            Err(MeshError::CollinearFace(0, _))
        ));
    }

    #[test]
    fn coincident_vertices_rejected() {
        let mesh = Arc::new(SurfaceMesh::new(3, &[[0, 1, 2]]).unwrap());
        let p = vec![Vector3::zeros(), Vector3::zeros(), Vector3::x()];
        assert!(matches!(
            Realization::new(mesh, p),
            Err(MeshError::DegenerateEdge(..))
        ));
    }
}
