//! Oriented triangulated surfaces.
//!
//! A [`SurfaceMesh`] is built once from a list of vertex triples and is
//! immutable afterwards. Construction re-orients faces coherently (when the
//! complex is orientable), and derives half-edges, undirected edges with a
//! canonical orientation, interior/boundary classification and boundary
//! loops.
//!
//! Every undirected edge `e` stores the half-edge it was first seen as. That
//! half-edge fixes the canonical orientation `tail -> head` of the edge, its
//! face is the *left* face and the twin's face (if any) is the *right* face.
//! The dual edge `e*` is oriented from the right face to the left face.

mod forms;
mod obj;
mod realization;
mod report;

pub use forms::{
    integrate_dual, integrate_dual_from, integrate_primal, Closedness, DualIntegration,
    DualOneForm, FormError, FormValue, PrimalIntegration, PrimalOneForm,
};
pub use obj::{parse_obj, read_obj, write_obj, write_obj_string, ObjError};
pub use realization::{DegeneracyGrade, FaceGeometry, Realization, AREA_REL_TOL, EDGE_REL_TOL};
pub use report::{MeshCounts, MeshReport};

use std::collections::{HashMap, HashSet, VecDeque};

use thiserror::Error;

/// Errors raised while building or validating a surface.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeshError {
    #[error("mesh has no faces")]
    Empty,
    #[error("face {face} references vertex {vertex} but only {vertex_count} vertices exist")]
    VertexOutOfRange {
        face: usize,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("face {0} repeats a vertex")]
    DegenerateFace(usize),
    #[error("faces {0} and {1} span the same vertex triple")]
    DuplicateFace(usize, usize),
    #[error("edge {{{0}, {1}}} belongs to {2} faces")]
    NonManifoldEdge(usize, usize, usize),
    #[error("complex is not orientable (conflict at face {0})")]
    NonOrientable(usize),
    #[error("complex is disconnected ({0} faces unreachable from face 0)")]
    Disconnected(usize),
    #[error("vertex {0} is not used by any face")]
    UnreferencedVertex(usize),
    #[error("link of vertex {0} is neither a disk nor a fan")]
    BadVertexLink(usize),
    #[error("expected {expected} vertex positions, got {got}")]
    PositionCount { expected: usize, got: usize },
    #[error("edge {0} is degenerate (length {1:e})")]
    DegenerateEdge(usize, f64),
    #[error("face {0} is collinear (area {1:e})")]
    CollinearFace(usize, f64),
    #[error("non-finite vertex position at vertex {0}")]
    NonFinite(usize),
}

/// A directed half of an edge, living in exactly one face.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HalfEdge {
    pub tail: usize,
    pub head: usize,
    pub face: usize,
    pub twin: Option<usize>,
    pub edge: usize,
}

/// An undirected edge with its canonical orientation `tail -> head`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    /// Half-edge `tail -> head`; its face is the left face.
    pub left: usize,
    /// Half-edge `head -> tail`, present for interior edges.
    pub right: Option<usize>,
}

impl Edge {
    pub fn is_interior(&self) -> bool {
        self.right.is_some()
    }

    pub fn other(&self, v: usize) -> usize {
        if v == self.tail {
            self.head
        } else {
            self.tail
        }
    }
}

/// An oriented simplicial 2-manifold with derived combinatorics.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceMesh {
    vertex_count: usize,
    faces: Vec<[usize; 3]>,
    halfedges: Vec<HalfEdge>,
    edges: Vec<Edge>,
    /// `(edge, sign)` for each edge incident to a vertex; `sign` is `1.0` when the
    /// vertex is the canonical tail.
    stars: Vec<Vec<(usize, f64)>>,
    boundary_vertex: Vec<bool>,
    interior_vertices: Vec<usize>,
    interior_edges: Vec<usize>,
    interior_index: Vec<Option<usize>>,
    boundary_loops: Vec<Vec<usize>>,
    flipped_faces: usize,
}

impl SurfaceMesh {
    /// Builds a surface on vertices `0..vertex_count` from vertex triples.
    ///
    /// Inconsistently wound input is re-oriented by a breadth-first sweep from
    /// face 0, which keeps the winding of face 0.
    pub fn new(vertex_count: usize, triangles: &[[usize; 3]]) -> Result<Self, MeshError> {
        if triangles.is_empty() {
            return Err(MeshError::Empty);
        }
        for (f, tri) in triangles.iter().enumerate() {
            for &v in tri {
                if v >= vertex_count {
                    return Err(MeshError::VertexOutOfRange {
                        face: f,
                        vertex: v,
                        vertex_count,
                    });
                }
            }
            if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
                return Err(MeshError::DegenerateFace(f));
            }
        }

        let mut seen: HashMap<[usize; 3], usize> = HashMap::new();
        for (f, tri) in triangles.iter().enumerate() {
            let mut key = *tri;
            key.sort_unstable();
            if let Some(&g) = seen.get(&key) {
                return Err(MeshError::DuplicateFace(g, f));
            }
            seen.insert(key, f);
        }

        let mut edge_faces: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (f, tri) in triangles.iter().enumerate() {
            for k in 0..3 {
                let (a, b) = (tri[k], tri[(k + 1) % 3]);
                edge_faces.entry((a.min(b), a.max(b))).or_default().push(f);
            }
        }
        let mut keys: Vec<_> = edge_faces.keys().copied().collect();
        keys.sort_unstable();
        for key in &keys {
            let n = edge_faces[key].len();
            if n > 2 {
                return Err(MeshError::NonManifoldEdge(key.0, key.1, n));
            }
        }

        let faces = orient_faces(triangles, &edge_faces)?;
        let flipped_faces = faces.iter().zip(triangles).filter(|(a, b)| a != b).count();

        let mut used = vec![false; vertex_count];
        for tri in &faces {
            for &v in tri {
                used[v] = true;
            }
        }
        if let Some(v) = used.iter().position(|u| !u) {
            return Err(MeshError::UnreferencedVertex(v));
        }

        // half-edges
        let mut directed: HashMap<(usize, usize), usize> = HashMap::with_capacity(faces.len() * 3);
        let mut halfedges = Vec::with_capacity(faces.len() * 3);
        for (f, tri) in faces.iter().enumerate() {
            for k in 0..3 {
                let (tail, head) = (tri[k], tri[(k + 1) % 3]);
                let h = halfedges.len();
                if directed.insert((tail, head), h).is_some() {
                    return Err(MeshError::NonOrientable(f));
                }
                halfedges.push(HalfEdge {
                    tail,
                    head,
                    face: f,
                    twin: None,
                    edge: usize::MAX,
                });
            }
        }
        for h in 0..halfedges.len() {
            let HalfEdge { tail, head, .. } = halfedges[h];
            halfedges[h].twin = directed.get(&(head, tail)).copied();
        }

        let mut edges = Vec::new();
        for h in 0..halfedges.len() {
            if halfedges[h].edge != usize::MAX {
                continue;
            }
            let e = edges.len();
            halfedges[h].edge = e;
            let twin = halfedges[h].twin;
            if let Some(t) = twin {
                halfedges[t].edge = e;
            }
            edges.push(Edge {
                tail: halfedges[h].tail,
                head: halfedges[h].head,
                left: h,
                right: twin,
            });
        }

        let mut stars = vec![Vec::new(); vertex_count];
        let mut boundary_vertex = vec![false; vertex_count];
        for (e, edge) in edges.iter().enumerate() {
            stars[edge.tail].push((e, 1.0));
            stars[edge.head].push((e, -1.0));
            if !edge.is_interior() {
                boundary_vertex[edge.tail] = true;
                boundary_vertex[edge.head] = true;
            }
        }

        check_links(vertex_count, &faces)?;

        let interior_vertices: Vec<usize> =
            (0..vertex_count).filter(|&v| !boundary_vertex[v]).collect();
        let mut interior_index = vec![None; edges.len()];
        let mut interior_edges = Vec::new();
        for (e, edge) in edges.iter().enumerate() {
            if edge.is_interior() {
                interior_index[e] = Some(interior_edges.len());
                interior_edges.push(e);
            }
        }

        let boundary_loops = trace_boundary(&halfedges);

        Ok(Self {
            vertex_count,
            faces,
            halfedges,
            edges,
            stars,
            boundary_vertex,
            interior_vertices,
            interior_edges,
            interior_index,
            boundary_loops,
            flipped_faces,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Faces after orientation repair.
    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn face(&self, f: usize) -> [usize; 3] {
        self.faces[f]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn halfedges(&self) -> &[HalfEdge] {
        &self.halfedges
    }

    pub fn halfedge(&self, h: usize) -> &HalfEdge {
        &self.halfedges[h]
    }

    /// Next half-edge inside the same face.
    pub fn next(&self, h: usize) -> usize {
        3 * (h / 3) + (h % 3 + 1) % 3
    }

    pub fn prev(&self, h: usize) -> usize {
        3 * (h / 3) + (h % 3 + 2) % 3
    }

    /// Number of faces whose input winding was reversed during construction.
    pub fn flipped_faces(&self) -> usize {
        self.flipped_faces
    }

    /// Edges incident to `v` together with `+1` (v is the canonical tail) or `-1`.
    pub fn star(&self, v: usize) -> &[(usize, f64)] {
        &self.stars[v]
    }

    pub fn is_boundary_vertex(&self, v: usize) -> bool {
        self.boundary_vertex[v]
    }

    pub fn interior_vertices(&self) -> &[usize] {
        &self.interior_vertices
    }

    pub fn boundary_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count)
            .filter(|&v| self.boundary_vertex[v])
            .collect()
    }

    /// Ids of interior edges in ascending order.
    pub fn interior_edges(&self) -> &[usize] {
        &self.interior_edges
    }

    /// Position of edge `e` within [`Self::interior_edges`].
    pub fn interior_index(&self, e: usize) -> Option<usize> {
        self.interior_index[e]
    }

    pub fn boundary_edge_count(&self) -> usize {
        self.edges.len() - self.interior_edges.len()
    }

    pub fn is_closed(&self) -> bool {
        self.interior_edges.len() == self.edges.len()
    }

    /// Vertex cycles of the boundary, each following the boundary half-edges.
    pub fn boundary_loops(&self) -> &[Vec<usize>] {
        &self.boundary_loops
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Genus of a closed surface; `None` when the surface has boundary.
    pub fn genus(&self) -> Option<usize> {
        if self.is_closed() {
            Some(((2 - self.euler_characteristic()) / 2) as usize)
        } else {
            None
        }
    }

    pub fn left_face(&self, e: usize) -> usize {
        self.halfedges[self.edges[e].left].face
    }

    pub fn right_face(&self, e: usize) -> Option<usize> {
        self.edges[e].right.map(|h| self.halfedges[h].face)
    }

    /// Vertex of the left face opposite to edge `e` (the `k` of face `ijk`).
    pub fn left_apex(&self, e: usize) -> usize {
        self.halfedges[self.next(self.edges[e].left)].head
    }

    /// Vertex of the right face opposite to edge `e` (the `l` of face `jil`).
    pub fn right_apex(&self, e: usize) -> Option<usize> {
        self.edges[e]
            .right
            .map(|h| self.halfedges[self.next(h)].head)
    }

    /// Edge id of `{a, b}`, if present.
    pub fn find_edge(&self, a: usize, b: usize) -> Option<usize> {
        self.stars[a]
            .iter()
            .map(|&(e, _)| e)
            .find(|&e| self.edges[e].other(a) == b)
    }

    /// Faces adjacent to `f` across interior edges, ascending.
    pub fn face_neighbors(&self, f: usize) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (0..3)
            .filter_map(|k| {
                let h = &self.halfedges[3 * f + k];
                h.twin.map(|t| (self.halfedges[t].face, h.edge))
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Same complex with every face wound the other way.
    pub fn reversed(&self) -> Self {
        let faces: Vec<[usize; 3]> = self.faces.iter().map(|t| [t[0], t[2], t[1]]).collect();
        Self::new(self.vertex_count, &faces).expect("reversing a valid mesh keeps it valid")
    }

    /// `|E_int| - 3 |V_int|`, which equals `|V_b| - 3 chi` for every surface.
    pub fn stress_count_excess(&self) -> i64 {
        self.interior_edges.len() as i64 - 3 * self.interior_vertices.len() as i64
    }
}

fn orient_faces(
    triangles: &[[usize; 3]],
    edge_faces: &HashMap<(usize, usize), Vec<usize>>,
) -> Result<Vec<[usize; 3]>, MeshError> {
    let n = triangles.len();
    let mut flip: Vec<Option<bool>> = vec![None; n];
    let winding = |tri: &[usize; 3], flipped: bool, a: usize, b: usize| -> bool {
        // true if the (possibly flipped) face traverses a -> b
        let t = if flipped {
            [tri[0], tri[2], tri[1]]
        } else {
            *tri
        };
        (0..3).any(|k| t[k] == a && t[(k + 1) % 3] == b)
    };
    flip[0] = Some(false);
    let mut queue = VecDeque::from([0usize]);
    let mut reached = 1;
    while let Some(f) = queue.pop_front() {
        let tri = triangles[f];
        let fl = flip[f].unwrap();
        let mut nbrs = Vec::new();
        for k in 0..3 {
            let (a, b) = (tri[k], tri[(k + 1) % 3]);
            for &g in &edge_faces[&(a.min(b), a.max(b))] {
                if g != f {
                    nbrs.push((g, a, b));
                }
            }
        }
        nbrs.sort_unstable();
        for (g, a, b) in nbrs {
            // orientation of f along {a,b} as currently chosen
            let (a, b) = if winding(&tri, fl, a, b) {
                (a, b)
            } else {
                (b, a)
            };
            // g must traverse b -> a
            let needs_flip = !winding(&triangles[g], false, b, a);
            match flip[g] {
                None => {
                    flip[g] = Some(needs_flip);
                    reached += 1;
                    queue.push_back(g);
                }
                Some(existing) if existing != needs_flip => {
                    return Err(MeshError::NonOrientable(g));
                }
                _ => {}
            }
        }
    }
    if reached < n {
        return Err(MeshError::Disconnected(n - reached));
    }
    Ok(triangles
        .iter()
        .zip(&flip)
        .map(|(t, fl)| if fl.unwrap() { [t[0], t[2], t[1]] } else { *t })
        .collect())
}

fn check_links(vertex_count: usize, faces: &[[usize; 3]]) -> Result<(), MeshError> {
    let mut links: Vec<Vec<(usize, usize)>> = vec![Vec::new(); vertex_count];
    for tri in faces {
        for k in 0..3 {
            links[tri[k]].push((tri[(k + 1) % 3], tri[(k + 2) % 3]));
        }
    }
    for (v, link) in links.iter().enumerate() {
        let next: HashMap<usize, usize> = link.iter().copied().collect();
        let heads: HashSet<usize> = link.iter().map(|&(_, b)| b).collect();
        let starts: Vec<usize> = link
            .iter()
            .map(|&(a, _)| a)
            .filter(|a| !heads.contains(a))
            .collect();
        let start = match starts.len() {
            0 => link[0].0,
            1 => starts[0],
            _ => return Err(MeshError::BadVertexLink(v)),
        };
        let mut cur = start;
        let mut steps = 0;
        while let Some(&nx) = next.get(&cur) {
            steps += 1;
            cur = nx;
            if cur == start || steps > link.len() {
                break;
            }
        }
        if steps != link.len() {
            return Err(MeshError::BadVertexLink(v));
        }
    }
    Ok(())
}

fn trace_boundary(halfedges: &[HalfEdge]) -> Vec<Vec<usize>> {
    let mut out_of: HashMap<usize, usize> = HashMap::new();
    let mut boundary: Vec<usize> = Vec::new();
    for (h, he) in halfedges.iter().enumerate() {
        if he.twin.is_none() {
            out_of.insert(he.tail, h);
            boundary.push(h);
        }
    }
    let mut visited = vec![false; halfedges.len()];
    let mut loops = Vec::new();
    for &h0 in &boundary {
        if visited[h0] {
            continue;
        }
        let mut lp = Vec::new();
        let mut h = h0;
        while !visited[h] {
            visited[h] = true;
            lp.push(halfedges[h].tail);
            h = out_of[&halfedges[h].head];
        }
        loops.push(lp);
    }
    loops
}
