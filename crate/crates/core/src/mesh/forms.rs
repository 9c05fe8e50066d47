//! Primal and dual 1-forms.
//!
//! A primal 1-form stores one value per undirected edge, read along the
//! edge's canonical orientation; the opposite orientation is the negated
//! value. A dual 1-form stores one value per interior edge, read along the
//! dual edge `e*` that runs from the right face to the left face of the
//! canonical orientation.

use std::collections::VecDeque;
use std::ops::{Add, AddAssign, Neg, Sub};

use nalgebra::Vector3;
use thiserror::Error;

use super::SurfaceMesh;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FormError {
    #[error("expected {expected} values, got {got}")]
    Length { expected: usize, got: usize },
    #[error("values on edge {{{0}, {1}}} are not antisymmetric")]
    NotAntisymmetric(usize, usize),
}

/// Scalars and vectors that 1-forms can take values in.
pub trait FormValue:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + std::fmt::Debug
    + Send
    + Sync
{
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
    fn scale(self, s: f64) -> Self;
}

impl FormValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
}

impl FormValue for Vector3<f64> {
    fn zero() -> Self {
        Vector3::zeros()
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
}

/// Residuals of a closedness test.
#[derive(Debug, Clone, PartialEq)]
pub struct Closedness {
    /// One residual magnitude per face (primal) or per interior vertex (dual).
    pub residuals: Vec<f64>,
    pub max: f64,
}

impl Closedness {
    fn from_residuals(residuals: Vec<f64>) -> Self {
        let max = residuals.iter().copied().fold(0.0, f64::max);
        Self { residuals, max }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrimalOneForm<T> {
    values: Vec<T>,
}

impl<T: FormValue> PrimalOneForm<T> {
    /// Values along canonical edge orientations.
    pub fn from_edge_values(mesh: &SurfaceMesh, values: Vec<T>) -> Result<Self, FormError> {
        if values.len() != mesh.edge_count() {
            return Err(FormError::Length {
                expected: mesh.edge_count(),
                got: values.len(),
            });
        }
        Ok(Self { values })
    }

    /// Builds a form from a function of oriented edges, checking
    /// `omega(i, j) = -omega(j, i)` on every edge.
    pub fn from_oriented(
        mesh: &SurfaceMesh,
        omega: impl Fn(usize, usize) -> T,
        tol: f64,
    ) -> Result<Self, FormError> {
        let mut values = Vec::with_capacity(mesh.edge_count());
        for edge in mesh.edges() {
            let fwd = omega(edge.tail, edge.head);
            let bwd = omega(edge.head, edge.tail);
            let scale = fwd.magnitude().max(bwd.magnitude());
            if (fwd + bwd).magnitude() > tol * scale {
                return Err(FormError::NotAntisymmetric(edge.tail, edge.head));
            }
            values.push(fwd);
        }
        Ok(Self { values })
    }

    /// `dg(e_ij) = g_j - g_i`.
    pub fn exact(mesh: &SurfaceMesh, g: &[T]) -> Self {
        Self {
            values: mesh.edges().iter().map(|e| g[e.head] - g[e.tail]).collect(),
        }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Value on edge `e` along its canonical orientation.
    pub fn value(&self, e: usize) -> T {
        self.values[e]
    }

    /// Value on the oriented edge `tail -> head`; `None` if no such edge.
    pub fn oriented(&self, mesh: &SurfaceMesh, tail: usize, head: usize) -> Option<T> {
        let e = mesh.find_edge(tail, head)?;
        let v = self.values[e];
        Some(if mesh.edge(e).tail == tail { v } else { -v })
    }

    /// Per-face sums `omega(e_ij) + omega(e_jk) + omega(e_ki)`.
    pub fn closedness(&self, mesh: &SurfaceMesh) -> Closedness {
        let residuals = (0..mesh.face_count())
            .map(|f| {
                let mut s = T::zero();
                for k in 0..3 {
                    let h = mesh.halfedge(3 * f + k);
                    let v = self.values[h.edge];
                    s += if mesh.edge(h.edge).tail == h.tail {
                        v
                    } else {
                        -v
                    };
                }
                s.magnitude()
            })
            .collect();
        Closedness::from_residuals(residuals)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualOneForm<T> {
    values: Vec<T>,
}

impl<T: FormValue> DualOneForm<T> {
    /// Values indexed like [`SurfaceMesh::interior_edges`].
    pub fn from_interior_values(mesh: &SurfaceMesh, values: Vec<T>) -> Result<Self, FormError> {
        let n = mesh.interior_edges().len();
        if values.len() != n {
            return Err(FormError::Length {
                expected: n,
                got: values.len(),
            });
        }
        Ok(Self { values })
    }

    /// Builds `tau(e*)` from a function of interior edge ids.
    pub fn from_fn(mesh: &SurfaceMesh, tau: impl Fn(usize) -> T) -> Self {
        Self {
            values: mesh.interior_edges().iter().map(|&e| tau(e)).collect(),
        }
    }

    /// `dZ(e*_ij) = Z_left - Z_right`.
    pub fn exact(mesh: &SurfaceMesh, z: &[T]) -> Self {
        Self::from_fn(mesh, |e| {
            z[mesh.left_face(e)] - z[mesh.right_face(e).expect("interior edge")]
        })
    }

    pub fn zero(mesh: &SurfaceMesh) -> Self {
        Self {
            values: vec![T::zero(); mesh.interior_edges().len()],
        }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Value on the dual of edge `e` (canonical orientation); `None` on boundary edges.
    pub fn on_edge(&self, mesh: &SurfaceMesh, e: usize) -> Option<T> {
        mesh.interior_index(e).map(|i| self.values[i])
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            values: self.values.iter().map(|v| v.scale(s)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.magnitude() == 0.0)
    }

    pub fn max_magnitude(&self) -> f64 {
        self.values
            .iter()
            .map(|v| v.magnitude())
            .fold(0.0, f64::max)
    }

    /// `sum_j tau(e*_ij)` at vertex `i`.
    pub fn vertex_sum(&self, mesh: &SurfaceMesh, i: usize) -> T {
        let mut s = T::zero();
        for &(e, sign) in mesh.star(i) {
            if let Some(v) = self.on_edge(mesh, e) {
                s += v.scale(sign);
            }
        }
        s
    }

    /// Vertex sums over every interior vertex.
    pub fn closedness(&self, mesh: &SurfaceMesh) -> Closedness {
        let residuals = mesh
            .interior_vertices()
            .iter()
            .map(|&i| self.vertex_sum(mesh, i).magnitude())
            .collect();
        Closedness::from_residuals(residuals)
    }
}

/// Face values integrated from a dual 1-form.
#[derive(Debug, Clone)]
pub struct DualIntegration<T> {
    /// One value per face; zero at each component root.
    pub values: Vec<T>,
    /// Max `|dZ(e*) - tau(e*)|` over interior edges off the spanning tree.
    pub closure: f64,
    /// Residual `dZ(e*) - tau(e*)` for each non-tree interior edge, by edge id.
    pub non_tree: Vec<(usize, T)>,
    /// Root face of every connected component of the dual graph.
    pub roots: Vec<usize>,
}

impl<T> DualIntegration<T> {
    pub fn components(&self) -> usize {
        self.roots.len()
    }
}

/// Integrates `tau` along a breadth-first spanning tree of the dual graph.
///
/// Each component is rooted at its lowest face index with value zero;
/// neighbors are visited in ascending face order.
pub fn integrate_dual<T: FormValue>(
    mesh: &SurfaceMesh,
    tau: &DualOneForm<T>,
) -> DualIntegration<T> {
    integrate_dual_from(mesh, tau, 0)
}

/// Like [`integrate_dual`], but the component containing `first` is rooted there.
pub fn integrate_dual_from<T: FormValue>(
    mesh: &SurfaceMesh,
    tau: &DualOneForm<T>,
    first: usize,
) -> DualIntegration<T> {
    let nf = mesh.face_count();
    let mut values: Vec<Option<T>> = vec![None; nf];
    let mut tree_edge = vec![false; mesh.edge_count()];
    let mut roots = Vec::new();
    for root in (nf > 0).then(|| first.min(nf - 1)).into_iter().chain(0..nf) {
        if values[root].is_some() {
            continue;
        }
        roots.push(root);
        values[root] = Some(T::zero());
        let mut queue = VecDeque::from([root]);
        while let Some(f) = queue.pop_front() {
            let zf = values[f].unwrap();
            for (g, e) in mesh.face_neighbors(f) {
                if values[g].is_some() {
                    continue;
                }
                let t = tau.on_edge(mesh, e).expect("interior edge");
                // Z_left - Z_right = tau(e*)
                let zg = if mesh.left_face(e) == g {
                    zf + t
                } else {
                    zf - t
                };
                values[g] = Some(zg);
                tree_edge[e] = true;
                queue.push_back(g);
            }
        }
    }
    let values: Vec<T> = values.into_iter().map(Option::unwrap).collect();
    let mut non_tree = Vec::new();
    let mut closure: f64 = 0.0;
    for &e in mesh.interior_edges() {
        if tree_edge[e] {
            continue;
        }
        let dz = values[mesh.left_face(e)] - values[mesh.right_face(e).unwrap()];
        let r = dz - tau.on_edge(mesh, e).unwrap();
        closure = closure.max(r.magnitude());
        non_tree.push((e, r));
    }
    DualIntegration {
        values,
        closure,
        non_tree,
        roots,
    }
}

/// Vertex values integrated from a primal 1-form.
#[derive(Debug, Clone)]
pub struct PrimalIntegration<T> {
    pub values: Vec<T>,
    /// Max `|dg(e) - omega(e)|` over edges off the spanning tree.
    pub closure: f64,
    pub worst_edge: Option<usize>,
}

/// Integrates `omega` along a breadth-first vertex spanning tree rooted at vertex 0.
pub fn integrate_primal<T: FormValue>(
    mesh: &SurfaceMesh,
    omega: &PrimalOneForm<T>,
) -> PrimalIntegration<T> {
    let n = mesh.vertex_count();
    let mut values: Vec<Option<T>> = vec![None; n];
    let mut tree_edge = vec![false; mesh.edge_count()];
    values[0] = Some(T::zero());
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        let gv = values[v].unwrap();
        let mut nbrs: Vec<(usize, usize, f64)> = mesh
            .star(v)
            .iter()
            .map(|&(e, s)| (mesh.edge(e).other(v), e, s))
            .collect();
        nbrs.sort_unstable_by_key(|a| a.0);
        for (w, e, sign) in nbrs {
            if values[w].is_some() {
                continue;
            }
            values[w] = Some(gv + omega.value(e).scale(sign));
            tree_edge[e] = true;
            queue.push_back(w);
        }
    }
    let values: Vec<T> = values.into_iter().map(Option::unwrap).collect();
    let mut closure: f64 = 0.0;
    let mut worst_edge = None;
    for (e, edge) in mesh.edges().iter().enumerate() {
        if tree_edge[e] {
            continue;
        }
        let r = (values[edge.head] - values[edge.tail] - omega.value(e)).magnitude();
        if r > closure {
            closure = r;
            worst_edge = Some(e);
        }
    }
    PrimalIntegration {
        values,
        closure,
        worst_edge,
    }
}
