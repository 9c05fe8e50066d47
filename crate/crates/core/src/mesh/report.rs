use serde::{Deserialize, Serialize};

use super::{DegeneracyGrade, Realization};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeshCounts {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub interior_vertices: usize,
    pub interior_edges: usize,
    pub boundary_vertices: usize,
}

/// Summary of a realized surface as written to JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshReport {
    pub chi: i64,
    /// Present only for closed surfaces.
    pub genus: Option<usize>,
    pub counts: MeshCounts,
    pub boundary_loops: Vec<Vec<usize>>,
    pub degeneracy_grade: DegeneracyGrade,
}

impl MeshReport {
    pub fn new(r: &Realization) -> Self {
        let m = r.mesh();
        Self {
            chi: m.euler_characteristic(),
            genus: m.genus(),
            counts: MeshCounts {
                vertices: m.vertex_count(),
                edges: m.edge_count(),
                faces: m.face_count(),
                interior_vertices: m.interior_vertices().len(),
                interior_edges: m.interior_edges().len(),
                boundary_vertices: m.vertex_count() - m.interior_vertices().len(),
            },
            boundary_loops: m.boundary_loops().to_vec(),
            degeneracy_grade: r.grade(),
        }
    }
}
