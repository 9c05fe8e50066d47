//! Isothermic quad nets.
//!
//! A net `F: [0, M) x [0, N) -> R³` is isothermic when the cross-ratio of every
//! elementary quadrilateral factors as `α_m / β_n`. Its Christoffel dual comes
//! from `F*_{m+1,n} - F*_{m,n} = α_m dF / |dF|²` and the `β_n` analogue along `n`.
//! Splitting each quad by a diagonal and rotating each triangle by a dual
//! vertex gives an isometric deformation of the triangulated net.

use std::str::FromStr;
use std::sync::Arc;

use nalgebra::{Quaternion, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::deform::rotation_compatibility;
use crate::isothermic::vertex_mean_curvature_rate;
use crate::mesh::{MeshError, Realization, SurfaceMesh};

#[derive(Debug, Error)]
pub enum QuadError {
    #[error("grid needs at least 2 x 2 points, got {m} x {n}")]
    TooSmall { m: usize, n: usize },
    #[error("grid of {m} x {n} needs {} points, got {got}", m * n)]
    PointCount { m: usize, n: usize, got: usize },
    #[error("consecutive corners coincide in quad ({m}, {n})")]
    Coincident { m: usize, n: usize },
    #[error("points must be distinct")]
    CoincidentPoints,
    #[error("expected {expected} diagonal choices, got {got}")]
    DiagonalCount { expected: usize, got: usize },
    #[error("unknown diagonal pattern {0:?}; use all-ne, all-nw, alternating or random:<seed>")]
    Pattern(String),
    #[error(transparent)]
    Mesh(#[from] MeshError),
}

/// Points on a grid, stored row by row: `F_{m,n}` at `n * M + m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadNet {
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub points: Vec<Vector3<f64>>,
}

impl QuadNet {
    pub fn new(m: usize, n: usize, points: Vec<Vector3<f64>>) -> Result<Self, QuadError> {
        let net = Self { m, n, points };
        net.validate()?;
        Ok(net)
    }

    /// Checks the grid size; deserialized nets should pass through here.
    pub fn validate(&self) -> Result<(), QuadError> {
        if self.m < 2 || self.n < 2 {
            return Err(QuadError::TooSmall {
                m: self.m,
                n: self.n,
            });
        }
        if self.points.len() != self.m * self.n {
            return Err(QuadError::PointCount {
                m: self.m,
                n: self.n,
                got: self.points.len(),
            });
        }
        Ok(())
    }

    /// Planar grid through the given coordinates.
    pub fn rectangle(xs: &[f64], ys: &[f64]) -> Result<Self, QuadError> {
        let points = ys
            .iter()
            .flat_map(|&y| xs.iter().map(move |&x| Vector3::new(x, y, 0.0)))
            .collect();
        Self::new(xs.len(), ys.len(), points)
    }

    pub fn index(&self, m: usize, n: usize) -> usize {
        n * self.m + m
    }

    pub fn at(&self, m: usize, n: usize) -> Vector3<f64> {
        self.points[self.index(m, n)]
    }

    pub fn quad_count(&self) -> usize {
        (self.m - 1) * (self.n - 1)
    }

    /// `(F_{m,n}, F_{m+1,n}, F_{m+1,n+1}, F_{m,n+1})`.
    pub fn quad(&self, m: usize, n: usize) -> [Vector3<f64>; 4] {
        [
            self.at(m, n),
            self.at(m + 1, n),
            self.at(m + 1, n + 1),
            self.at(m, n + 1),
        ]
    }

    pub fn map(&self, f: impl Fn(&Vector3<f64>) -> Vector3<f64>) -> Self {
        Self {
            m: self.m,
            n: self.n,
            points: self.points.iter().map(f).collect(),
        }
    }
}

fn quat(v: &Vector3<f64>) -> Quaternion<f64> {
    Quaternion::from_imag(*v)
}

/// A quaternionic cross-ratio with its realness verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossRatio {
    pub q: Quaternion<f64>,
    pub real: bool,
}

impl CrossRatio {
    pub fn imag_norm(&self) -> f64 {
        self.q.imag().norm()
    }
}

/// `(a - b)(b - c)⁻¹(c - d)(d - a)⁻¹` with points as pure imaginary quaternions.
///
/// Real when the imaginary part is below `tol (1 + |q|)`.
pub fn cross_ratio(
    a: &Vector3<f64>,
    b: &Vector3<f64>,
    c: &Vector3<f64>,
    d: &Vector3<f64>,
    tol: f64,
) -> Result<CrossRatio, QuadError> {
    let inv = |v: Vector3<f64>| quat(&v).try_inverse().ok_or(QuadError::CoincidentPoints);
    if a == b || b == c || c == d || d == a {
        return Err(QuadError::CoincidentPoints);
    }
    let q = quat(&(a - b)) * inv(b - c)? * quat(&(c - d)) * inv(d - a)?;
    let real = q.imag().norm() < tol * (1.0 + q.norm());
    Ok(CrossRatio { q, real })
}

/// Fitted factors `q_{m,n} ≈ α_m / β_n` with `β_0 = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Factorization {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    /// Real part of every cross-ratio, stored like the quads: `n * (M - 1) + m`.
    pub q: Vec<f64>,
    pub max_imag: f64,
    /// `max |q_{m,n} - α_m / β_n|`.
    pub residual: f64,
    pub tolerance: f64,
    pub factorized: bool,
}

/// Fits `log |q_{m,n}| = log |α_m| - log |β_n|` by least squares over all quads.
///
/// On a full grid the least-squares solution is given by row and column means.
/// Signs follow the first row and column: `sign α_m = sign q_{m,0}`,
/// `sign β_n = sign q_{0,0} sign q_{0,n}`.
pub fn fit_factorization(net: &QuadNet, tol: f64) -> Result<Factorization, QuadError> {
    net.validate()?;
    let (mq, nq) = (net.m - 1, net.n - 1);
    let mut q = Vec::with_capacity(mq * nq);
    let mut max_imag: f64 = 0.0;
    for n in 0..nq {
        for m in 0..mq {
            let [a, b, c, d] = net.quad(m, n);
            let cr =
                cross_ratio(&a, &b, &c, &d, tol).map_err(|_| QuadError::Coincident { m, n })?;
            max_imag = max_imag.max(cr.imag_norm() / (1.0 + cr.q.norm()));
            q.push(cr.q.w);
        }
    }
    let at = |m: usize, n: usize| q[n * mq + m];
    let logs: Vec<f64> = q
        .iter()
        .map(|v| v.abs().max(f64::MIN_POSITIVE).ln())
        .collect();
    let log_at = |m: usize, n: usize| logs[n * mq + m];
    let grand = logs.iter().sum::<f64>() / logs.len() as f64;
    let row = |m: usize| (0..nq).map(|n| log_at(m, n)).sum::<f64>() / nq as f64;
    let col = |n: usize| (0..mq).map(|m| log_at(m, n)).sum::<f64>() / mq as f64;
    // a_m - b_n with b_0 = 0
    let c0 = col(0);
    let sign = |v: f64| if v < 0.0 { -1.0 } else { 1.0 };
    let s00 = sign(at(0, 0));
    let alpha: Vec<f64> = (0..mq)
        .map(|m| sign(at(m, 0)) * (row(m) + c0 - grand).exp())
        .collect();
    let beta: Vec<f64> = (0..nq)
        .map(|n| s00 * sign(at(0, n)) * (c0 - col(n)).exp())
        .collect();
    let mut residual: f64 = 0.0;
    for n in 0..nq {
        for m in 0..mq {
            residual = residual.max((at(m, n) - alpha[m] / beta[n]).abs());
        }
    }
    Ok(Factorization {
        factorized: max_imag <= tol && residual <= tol,
        alpha,
        beta,
        q,
        max_imag,
        residual,
        tolerance: tol,
    })
}

fn reciprocal(v: Vector3<f64>) -> Vector3<f64> {
    v / v.norm_squared()
}

/// Christoffel dual of a net with its certificates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadDual {
    pub net: QuadNet,
    /// Loop mismatch per quad over the largest increment of that quad.
    pub closure: Vec<f64>,
    pub max_closure: f64,
    /// Worst residual of the two diagonal identities, relative like `closure`.
    pub diagonal: f64,
}

impl QuadDual {
    pub fn is_closed(&self, tol: f64) -> bool {
        self.max_closure <= tol
    }
}

/// Integrates the dual row by row from `F*_{0,0} = 0`: first along `n = 0`,
/// then up every column.
pub fn quad_dual(net: &QuadNet, fact: &Factorization) -> QuadDual {
    let (mm, nn) = (net.m, net.n);
    let (alpha, beta) = (&fact.alpha, &fact.beta);
    let mut star = vec![Vector3::zeros(); mm * nn];
    for m in 0..mm - 1 {
        star[m + 1] = star[m] + alpha[m] * reciprocal(net.at(m + 1, 0) - net.at(m, 0));
    }
    for n in 0..nn - 1 {
        for m in 0..mm {
            let d = net.at(m, n + 1) - net.at(m, n);
            star[(n + 1) * mm + m] = star[n * mm + m] + beta[n] * reciprocal(d);
        }
    }
    let dual = QuadNet {
        m: mm,
        n: nn,
        points: star,
    };
    let mut closure = Vec::with_capacity(net.quad_count());
    let mut diagonal: f64 = 0.0;
    for n in 0..nn - 1 {
        for m in 0..mm - 1 {
            let [a, b, c, d] = net.quad(m, n);
            let (al, be) = (alpha[m], beta[n]);
            let steps = [
                al * reciprocal(b - a),
                be * reciprocal(c - b),
                -al * reciprocal(c - d),
                -be * reciprocal(d - a),
            ];
            let size = steps.iter().map(|s| s.norm()).fold(0.0, f64::max);
            closure.push(steps.iter().sum::<Vector3<f64>>().norm() / size);
            let [sa, sb, sc, sd] = dual.quad(m, n);
            let d1 = (sb - sd) - (al - be) * reciprocal(c - a);
            let d2 = (sc - sa) - (al - be) * reciprocal(b - d);
            diagonal = diagonal.max(d1.norm().max(d2.norm()) / size);
        }
    }
    let max_closure = closure.iter().copied().fold(0.0, f64::max);
    QuadDual {
        net: dual,
        closure,
        max_closure,
        diagonal,
    }
}

/// Which diagonal splits a quad `ABCD` with `A = F_{m,n}`, `C = F_{m+1,n+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Diagonal {
    /// `AC`, triangles `ABC` and `ACD`.
    Ne,
    /// `BD`, triangles `BCD` and `BDA`.
    Nw,
}

/// A rule assigning a diagonal to every quad.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagonalPattern {
    AllNe,
    AllNw,
    /// `Ne` when `m + n` is even.
    Alternating,
    Random(u64),
}

impl DiagonalPattern {
    /// Choices in quad order `n * (M - 1) + m`.
    pub fn choices(&self, net: &QuadNet) -> Vec<Diagonal> {
        let (mq, nq) = (net.m - 1, net.n - 1);
        match *self {
            DiagonalPattern::AllNe => vec![Diagonal::Ne; mq * nq],
            DiagonalPattern::AllNw => vec![Diagonal::Nw; mq * nq],
            DiagonalPattern::Alternating => (0..nq)
                .flat_map(|n| {
                    (0..mq).map(move |m| {
                        if (m + n) % 2 == 0 {
                            Diagonal::Ne
                        } else {
                            Diagonal::Nw
                        }
                    })
                })
                .collect(),
            DiagonalPattern::Random(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..mq * nq)
                    .map(|_| {
                        if rng.gen::<bool>() {
                            Diagonal::Ne
                        } else {
                            Diagonal::Nw
                        }
                    })
                    .collect()
            }
        }
    }
}

impl FromStr for DiagonalPattern {
    type Err = QuadError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all-ne" => Ok(DiagonalPattern::AllNe),
            "all-nw" => Ok(DiagonalPattern::AllNw),
            "alternating" => Ok(DiagonalPattern::Alternating),
            _ => s
                .strip_prefix("random:")
                .and_then(|seed| seed.parse().ok())
                .map(DiagonalPattern::Random)
                .ok_or_else(|| QuadError::Pattern(s.to_string())),
        }
    }
}

/// A triangulated net with its face rotations and checks.
#[derive(Debug, Clone)]
pub struct Subdivision {
    pub realization: Realization,
    /// Face rotations assigned by dual vertices.
    pub z: Vec<Vector3<f64>>,
    pub diagonals: Vec<Diagonal>,
    /// Largest `|(Z_left - Z_right) × df| / (|df| |Z|∞)`.
    pub compatibility: f64,
    pub incompatible_edges: Vec<usize>,
    /// `Ḣ_i` per interior vertex, ordered like `mesh.interior_vertices()`.
    pub hdot: Vec<f64>,
}

impl Subdivision {
    pub fn max_hdot(&self) -> f64 {
        self.hdot.iter().map(|h| h.abs()).fold(0.0, f64::max)
    }
}

/// Triangles with vertex ids `n * M + m` and the dual vertex rotating each one.
fn triangles(net: &QuadNet, diagonals: &[Diagonal]) -> Vec<([usize; 3], usize)> {
    let mq = net.m - 1;
    let mut out = Vec::with_capacity(2 * diagonals.len());
    for (q, &d) in diagonals.iter().enumerate() {
        let (m, n) = (q % mq, q / mq);
        let a = net.index(m, n);
        let b = net.index(m + 1, n);
        let c = net.index(m + 1, n + 1);
        let dd = net.index(m, n + 1);
        match d {
            Diagonal::Ne => {
                out.push(([a, b, c], b));
                out.push(([a, c, dd], dd));
            }
            Diagonal::Nw => {
                out.push(([b, c, dd], c));
                out.push(([b, dd, a], a));
            }
        }
    }
    out
}

/// Splits every quad along the chosen diagonal and rotates `ABC` by `B*`,
/// `ACD` by `D*` (or `BCD` by `C*`, `BDA` by `A*`).
pub fn subdivide_and_rotate(
    net: &QuadNet,
    dual: &QuadDual,
    diagonals: &[Diagonal],
    tol: f64,
) -> Result<Subdivision, QuadError> {
    net.validate()?;
    if diagonals.len() != net.quad_count() {
        return Err(QuadError::DiagonalCount {
            expected: net.quad_count(),
            got: diagonals.len(),
        });
    }
    let tris = triangles(net, diagonals);
    let faces: Vec<[usize; 3]> = tris.iter().map(|t| t.0).collect();
    let mesh = SurfaceMesh::new(net.points.len(), &faces)?;
    let realization = Realization::new(Arc::new(mesh), net.points.clone())?;
    let z: Vec<Vector3<f64>> = tris.iter().map(|&(_, v)| dual.net.points[v]).collect();
    let (compatibility, incompatible_edges) = rotation_compatibility(&realization, &z, tol);
    let hdot = vertex_mean_curvature_rate(&realization, &z);
    Ok(Subdivision {
        realization,
        z,
        diagonals: diagonals.to_vec(),
        compatibility,
        incompatible_edges,
        hdot,
    })
}

/// `dḟ = df × Z_left` on the quad edges `(m, n) -> (m + 1, n)` and `(m, n) -> (m, n + 1)`,
/// horizontal edges first.
pub fn quad_edge_rates(net: &QuadNet, sub: &Subdivision) -> Vec<Vector3<f64>> {
    let r = &sub.realization;
    let m = r.mesh();
    let rate = |a: usize, b: usize| {
        let e = m.find_edge(a, b).expect("quad edge");
        let edge = m.edge(e);
        let v = r.edge_vector(e).cross(&sub.z[m.left_face(e)]);
        if edge.tail == a {
            v
        } else {
            -v
        }
    };
    let mut out = Vec::new();
    for n in 0..net.n {
        for i in 0..net.m - 1 {
            out.push(rate(net.index(i, n), net.index(i + 1, n)));
        }
    }
    for n in 0..net.n - 1 {
        for i in 0..net.m {
            out.push(rate(net.index(i, n), net.index(i, n + 1)));
        }
    }
    out
}

/// Best similarity `b ≈ s R a + t` (reflections allowed); returns the largest
/// point residual over the diameter of `b`.
pub fn similarity_fit(a: &[Vector3<f64>], b: &[Vector3<f64>]) -> f64 {
    let n = a.len() as f64;
    let ca = a.iter().sum::<Vector3<f64>>() / n;
    let cb = b.iter().sum::<Vector3<f64>>() / n;
    let mut cov = nalgebra::Matrix3::zeros();
    let mut var_a = 0.0;
    for (p, q) in a.iter().zip(b) {
        cov += (q - cb) * (p - ca).transpose();
        var_a += (p - ca).norm_squared();
    }
    let svd = cov.svd(true, true);
    let (u, v_t) = (svd.u.unwrap(), svd.v_t.unwrap());
    let rot = u * v_t;
    let s = svd.singular_values.sum() / var_a;
    let diam = b.iter().map(|q| (q - cb).norm()).fold(0.0, f64::max) * 2.0;
    a.iter()
        .zip(b)
        .map(|(p, q)| (s * rot * (p - ca) + cb - q).norm())
        .fold(0.0, f64::max)
        / diam
}

/// Every assignment of diagonals to the four quads around the center of a 3 x 3 net.
pub fn center_configurations() -> Vec<[Diagonal; 4]> {
    (0..16u8)
        .map(|bits| {
            let pick = |k: u8| {
                if bits >> k & 1 == 0 {
                    Diagonal::Ne
                } else {
                    Diagonal::Nw
                }
            };
            [pick(0), pick(1), pick(2), pick(3)]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_grid(k: usize) -> QuadNet {
        let xs: Vec<f64> = (0..k).map(|i| i as f64).collect();
        QuadNet::rectangle(&xs, &xs).unwrap()
    }

    #[test]
    fn square_cross_ratio() {
        let p = |x: f64, y: f64| Vector3::new(x, y, 0.0);
        let cr = cross_ratio(&p(0., 0.), &p(1., 0.), &p(1., 1.), &p(0., 1.), 1e-12).unwrap();
        assert!(cr.real);
        assert!((cr.q.w + 1.0).abs() < 1e-15 && cr.imag_norm() < 1e-15);
    }

    #[test]
    fn coincident_corners_rejected() {
        let p = Vector3::new(1.0, 2.0, 3.0);
        assert!(cross_ratio(&p, &p, &Vector3::zeros(), &Vector3::x(), 1e-12).is_err());
    }

    #[test]
    fn unit_grid_factors() {
        let f = fit_factorization(&unit_grid(4), 1e-12).unwrap();
        assert!(f.factorized);
        assert!(f.alpha.iter().all(|a| (a + 1.0).abs() < 1e-14));
        assert!(f.beta.iter().all(|b| (b - 1.0).abs() < 1e-14));
    }

    #[test]
    fn pattern_parsing() {
        assert_eq!(
            "all-ne".parse::<DiagonalPattern>().unwrap(),
            DiagonalPattern::AllNe
        );
        assert_eq!(
            "random:7".parse::<DiagonalPattern>().unwrap(),
            DiagonalPattern::Random(7)
        );
        assert!("random:x".parse::<DiagonalPattern>().is_err());
        assert!("diag".parse::<DiagonalPattern>().is_err());
    }

    #[test]
    fn grid_dual_and_rotations() {
        let net = unit_grid(4);
        let f = fit_factorization(&net, 1e-12).unwrap();
        let dual = quad_dual(&net, &f);
        assert!(dual.max_closure < 1e-12 && dual.diagonal < 1e-12);
        for pat in [
            DiagonalPattern::AllNe,
            DiagonalPattern::AllNw,
            DiagonalPattern::Alternating,
        ] {
            let sub = subdivide_and_rotate(&net, &dual, &pat.choices(&net), 1e-12).unwrap();
            assert!(sub.compatibility < 1e-12 && sub.incompatible_edges.is_empty());
            assert!(sub.max_hdot() < 1e-12);
        }
    }

    #[test]
    fn similarity_fit_detects_similarity() {
        let a: Vec<Vector3<f64>> = unit_grid(3).points;
        let b: Vec<Vector3<f64>> = a
            .iter()
            .map(|p| Vector3::new(-2.0 * p.y + 1.0, 2.0 * p.x, 3.0))
            .collect();
        assert!(similarity_fit(&a, &b) < 1e-14);
        let mut c = b.clone();
        c[4].z += 0.5;
        assert!(similarity_fit(&a, &c) > 1e-2);
    }
}
