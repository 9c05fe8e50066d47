//! Möbius geometry: light-cone lifts, chains of Möbius primitives with their
//! Lorentz matrices, transport of self-stresses through inversions, and the
//! intersection angles of circumcircles and circumspheres.
//!
//! Lorentz matrices act on `R^{4,1}` with the form `diag(1, 1, 1, 1, -1)`;
//! a point `f` lifts to `(f, (1 - |f|²)/2, (1 + |f|²)/2)`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix3, Matrix4, Quaternion, SMatrix, SVector, Unit, Vector3};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::isothermic::{stress_residuals, StressResiduals};
use crate::mesh::{DualOneForm, MeshError, Realization};

pub type Vector5 = SVector<f64, 5>;
pub type Matrix5 = SMatrix<f64, 5, 5>;

/// Points closer than this to an inversion center are rejected.
pub const INVERSION_MIN_RADIUS: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum MoebiusError {
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error("step {step}: vertex {vertex} is too close to the inversion center (|f| = {norm:e})")]
    NearCenter {
        step: usize,
        vertex: usize,
        norm: f64,
    },
    #[error("cannot parse Möbius chain: {0}")]
    Parse(String),
    #[error("input is not planar (z deviation {0:e})")]
    NotPlanar(f64),
    #[error("edge {0} is a boundary edge")]
    BoundaryEdge(usize),
    #[error("stress has {got} values but the mesh has {expected} interior edges")]
    StressLength { expected: usize, got: usize },
}

/// `(f, (1 - |f|²)/2, (1 + |f|²)/2)`.
pub fn lift(f: &Vector3<f64>) -> Vector5 {
    let n = f.norm_squared();
    Vector5::new(f.x, f.y, f.z, 0.5 * (1.0 - n), 0.5 * (1.0 + n))
}

/// Minkowski product with signature `(+, +, +, +, -)`.
pub fn minkowski(a: &Vector5, b: &Vector5) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3] - a[4] * b[4]
}

/// Point of R³ represented by a light-like vector.
pub fn project(x: &Vector5) -> Vector3<f64> {
    Vector3::new(x[0], x[1], x[2]) / (x[3] + x[4])
}

fn j_metric() -> Matrix5 {
    Matrix5::from_diagonal(&Vector5::new(1.0, 1.0, 1.0, 1.0, -1.0))
}

/// A generator of the Möbius group.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Primitive {
    Translate(Vector3<f64>),
    Rotate(Matrix3<f64>),
    /// Uniform scaling; negative factors include the point reflection.
    Scale(f64),
    /// `f -> -f / |f|²`.
    Invert,
}

impl Primitive {
    pub fn apply(&self, p: &Vector3<f64>) -> Vector3<f64> {
        match self {
            Primitive::Translate(t) => p + t,
            Primitive::Rotate(r) => r * p,
            Primitive::Scale(s) => p * *s,
            Primitive::Invert => -p / p.norm_squared(),
        }
    }

    /// Matrix in null coordinates `(x, a, b)` with `a = x₅ + x₄`, `b = x₅ - x₄`,
    /// where the form reads `|x|² - ab`.
    fn null_matrix(&self) -> Matrix5 {
        let mut m = Matrix5::zeros();
        match self {
            Primitive::Translate(t) => {
                // (x + a t, a, b + 2<t, x> + a |t|²)
                for i in 0..3 {
                    m[(i, i)] = 1.0;
                    m[(i, 3)] = t[i];
                    m[(4, i)] = 2.0 * t[i];
                }
                m[(3, 3)] = 1.0;
                m[(4, 3)] = t.norm_squared();
                m[(4, 4)] = 1.0;
            }
            Primitive::Rotate(r) => {
                m.fixed_view_mut::<3, 3>(0, 0).copy_from(r);
                m[(3, 3)] = 1.0;
                m[(4, 4)] = 1.0;
            }
            Primitive::Scale(s) => {
                for i in 0..3 {
                    m[(i, i)] = s.signum();
                }
                m[(3, 3)] = 1.0 / s.abs();
                m[(4, 4)] = s.abs();
            }
            Primitive::Invert => {
                for i in 0..3 {
                    m[(i, i)] = -1.0;
                }
                m[(3, 4)] = 1.0;
                m[(4, 3)] = 1.0;
            }
        }
        m
    }
}

impl fmt::Display for Primitive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Primitive::Translate(t) => write!(f, "translate {} {} {}", t.x, t.y, t.z),
            Primitive::Rotate(r) => {
                let rot = nalgebra::Rotation3::from_matrix_unchecked(*r);
                match rot.axis_angle() {
                    Some((axis, angle)) => {
                        write!(f, "rotate {} {} {} {}", axis.x, axis.y, axis.z, angle)
                    }
                    None => write!(f, "rotate 0 0 1 0"),
                }
            }
            Primitive::Scale(s) => write!(f, "scale {s}"),
            Primitive::Invert => write!(f, "invert"),
        }
    }
}

/// A composition of primitives, applied left to right.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MoebiusMap {
    pub steps: Vec<Primitive>,
}

impl MoebiusMap {
    pub fn new(steps: Vec<Primitive>) -> Self {
        Self { steps }
    }

    pub fn then(mut self, p: Primitive) -> Self {
        self.steps.push(p);
        self
    }

    /// Inverse stereographic projection of the plane `z = 0`, scaled so the
    /// circle of the given radius maps to the equator and the origin to `(0, 0, -1)`.
    pub fn stereographic(radius: f64) -> Self {
        let n = Vector3::z();
        Self::new(vec![
            Primitive::Scale(1.0 / radius),
            Primitive::Translate(-n),
            Primitive::Invert,
            Primitive::Scale(-2.0),
            Primitive::Translate(n),
        ])
    }

    pub fn apply_point(&self, p: &Vector3<f64>) -> Vector3<f64> {
        self.steps.iter().fold(*p, |x, s| s.apply(&x))
    }

    /// Applies the chain to every vertex, rejecting vertices that hit an inversion center.
    pub fn apply(&self, r: &Realization) -> Result<Realization, MoebiusError> {
        let mut pts = r.positions().to_vec();
        for (step, prim) in self.steps.iter().enumerate() {
            if *prim == Primitive::Invert {
                check_center(&pts, step)?;
            }
            for p in &mut pts {
                *p = prim.apply(p);
            }
        }
        Ok(r.with_positions(pts)?)
    }

    /// The Lorentz matrix acting on light-cone lifts.
    pub fn lorentz(&self) -> Matrix5 {
        // std -> null: a = x4 + x5, b = x5 - x4
        let mut p = Matrix5::identity();
        p[(3, 3)] = 1.0;
        p[(3, 4)] = 1.0;
        p[(4, 3)] = -1.0;
        p[(4, 4)] = 1.0;
        let p_inv = p.try_inverse().expect("basis change is invertible");
        let null = self
            .steps
            .iter()
            .fold(Matrix5::identity(), |acc, s| s.null_matrix() * acc);
        p_inv * null * p
    }

    /// Applies the Lorentz matrix to the lift and projects back.
    pub fn apply_projective(&self, p: &Vector3<f64>) -> Vector3<f64> {
        project(&(self.lorentz() * lift(p)))
    }
}

impl fmt::Display for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.steps.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

impl FromStr for MoebiusMap {
    type Err = MoebiusError;

    /// Parses `"translate 0 0 2; invert; scale 0.5; rotate ax ay az angle"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut steps = Vec::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let mut tok = part.split_whitespace();
            let name = tok.next().unwrap();
            let nums: Vec<f64> = tok
                .map(|t| {
                    t.parse::<f64>()
                        .map_err(|_| MoebiusError::Parse(format!("bad number {t:?} in {part:?}")))
                })
                .collect::<Result<_, _>>()?;
            let want = |n: usize| {
                if nums.len() == n {
                    Ok(())
                } else {
                    Err(MoebiusError::Parse(format!(
                        "{name} takes {n} numbers, got {}",
                        nums.len()
                    )))
                }
            };
            let step = match name {
                "translate" => {
                    want(3)?;
                    Primitive::Translate(Vector3::new(nums[0], nums[1], nums[2]))
                }
                "rotate" => {
                    want(4)?;
                    let axis = Vector3::new(nums[0], nums[1], nums[2]);
                    if axis.norm() == 0.0 {
                        return Err(MoebiusError::Parse("rotation axis is zero".into()));
                    }
                    let rot =
                        nalgebra::Rotation3::from_axis_angle(&Unit::new_normalize(axis), nums[3]);
                    Primitive::Rotate(*rot.matrix())
                }
                "scale" => {
                    want(1)?;
                    if nums[0] == 0.0 {
                        return Err(MoebiusError::Parse("scale factor is zero".into()));
                    }
                    Primitive::Scale(nums[0])
                }
                "invert" => {
                    want(0)?;
                    Primitive::Invert
                }
                other => return Err(MoebiusError::Parse(format!("unknown primitive {other:?}"))),
            };
            steps.push(step);
        }
        Ok(Self { steps })
    }
}

fn check_center(pts: &[Vector3<f64>], step: usize) -> Result<(), MoebiusError> {
    let scale = pts.iter().map(|p| p.norm()).fold(0.0, f64::max).max(1.0);
    for (v, p) in pts.iter().enumerate() {
        if p.norm() <= INVERSION_MIN_RADIUS * scale {
            return Err(MoebiusError::NearCenter {
                step,
                vertex: v,
                norm: p.norm(),
            });
        }
    }
    Ok(())
}

/// `f⁻¹ = -f / |f|²`.
pub fn invert(r: &Realization) -> Result<Realization, MoebiusError> {
    MoebiusMap::new(vec![Primitive::Invert]).apply(r)
}

/// Inverse stereographic projection of a realization in the plane `z = 0`.
pub fn stereographic(r: &Realization, radius: f64) -> Result<Realization, MoebiusError> {
    let dev = r.positions().iter().map(|p| p.z.abs()).fold(0.0, f64::max);
    if dev > 1e-12 * r.scale() {
        return Err(MoebiusError::NotPlanar(dev));
    }
    MoebiusMap::stereographic(radius).apply(r)
}

/// A stress carried through a Möbius chain.
#[derive(Debug, Clone)]
pub struct Transported {
    pub realization: Realization,
    /// Transported stress, indexed like `mesh.interior_edges()`.
    pub k: Vec<f64>,
    pub tau: DualOneForm<Vector3<f64>>,
    /// Residuals of the defining equations on the image.
    pub residuals: StressResiduals,
    /// Largest factor `|f_i|² |f_j|²` applied at an inversion step.
    pub amplification: f64,
}

/// Transports `k` through `map`: inversions multiply `k_ij` by `|f_i|² |f_j|²`
/// (positions just before the inversion); other primitives keep `k`.
pub fn transport_stress(
    r: &Realization,
    k: &[f64],
    map: &MoebiusMap,
) -> Result<Transported, MoebiusError> {
    let m = r.mesh();
    if k.len() != m.interior_edges().len() {
        return Err(MoebiusError::StressLength {
            expected: m.interior_edges().len(),
            got: k.len(),
        });
    }
    let mut pts = r.positions().to_vec();
    let mut k = k.to_vec();
    let mut amplification: f64 = 1.0;
    for (step, prim) in map.steps.iter().enumerate() {
        if *prim == Primitive::Invert {
            check_center(&pts, step)?;
            for (c, &e) in m.interior_edges().iter().enumerate() {
                let edge = m.edge(e);
                let factor = pts[edge.tail].norm_squared() * pts[edge.head].norm_squared();
                amplification = amplification.max(factor);
                k[c] *= factor;
            }
        }
        for p in &mut pts {
            *p = prim.apply(p);
        }
    }
    let realization = r.with_positions(pts)?;
    let tau = DualOneForm::from_fn(m, |e| {
        k[m.interior_index(e).unwrap()] * realization.edge_vector(e)
    });
    let residuals = stress_residuals(m, realization.positions(), &k);
    Ok(Transported {
        realization,
        k,
        tau,
        residuals,
        amplification,
    })
}

fn quat(v: &Vector3<f64>) -> Quaternion<f64> {
    Quaternion::from_imag(*v)
}

/// Largest deviation between `|f_i|²|f_j|² k_ij df⁻¹(e_ij)` and the quaternion
/// product `f_i τ(e*_ij) f̄_j`, with `τ = k df`, over interior edges.
pub fn quaternion_transport_check(r: &Realization, k: &[f64]) -> Result<f64, MoebiusError> {
    let inv = invert(r)?;
    let m = r.mesh();
    let mut worst: f64 = 0.0;
    for (c, &e) in m.interior_edges().iter().enumerate() {
        let edge = m.edge(e);
        let (fi, fj) = (r.position(edge.tail), r.position(edge.head));
        let direct = k[c] * fi.norm_squared() * fj.norm_squared() * inv.edge_vector(e);
        let tau = k[c] * r.edge_vector(e);
        let q = quat(&fi) * quat(&tau) * quat(&fj).conjugate();
        let diff = (q.imag() - direct).norm().max(q.scalar().abs());
        worst = worst.max(diff);
    }
    Ok(worst)
}

/// Corner points `(i, j, k, l)` of the two faces at interior edge `e`:
/// `ijk` is the left face and `jil` the right face.
fn edge_quad(r: &Realization, e: usize) -> Result<[Vector3<f64>; 4], MoebiusError> {
    let m = r.mesh();
    let edge = m.edge(e);
    let l = m.right_apex(e).ok_or(MoebiusError::BoundaryEdge(e))?;
    Ok([
        r.position(edge.tail),
        r.position(edge.head),
        r.position(m.left_apex(e)),
        r.position(l),
    ])
}

/// Angle between the circumcircles of the two faces at `e`: 0 when the four
/// points are cocircular, the inversive angle otherwise.
pub fn circumcircle_angle(r: &Realization, e: usize) -> Result<f64, MoebiusError> {
    let [i, j, k, l] = edge_quad(r, e)?;
    // inversion centered at i turns both circles into lines through j'
    let inv = |x: Vector3<f64>| {
        let d = x - i;
        d / d.norm_squared()
    };
    let (j, k, l) = (inv(j), inv(k), inv(l));
    let (u, v) = (k - j, l - j);
    Ok(PI - u.cross(&v).norm().atan2(u.dot(&v)))
}

/// Result of a circumsphere computation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum SphereAngle {
    Angle(f64),
    /// One of the quadruples is cocircular, so its sphere is not unique.
    Degenerate,
}

impl SphereAngle {
    pub fn value(&self) -> Option<f64> {
        match self {
            SphereAngle::Angle(a) => Some(*a),
            SphereAngle::Degenerate => None,
        }
    }
}

/// Unit spacelike Minkowski vector of the sphere through the four points, or
/// `None` for a cocircular quadruple.
pub fn sphere_vector(p: &[Vector3<f64>; 4]) -> Option<Vector5> {
    let lifts: Vec<Vector5> = p.iter().map(lift).collect();
    let scale: f64 = lifts.iter().map(|x| x.norm()).product();
    let mut s = Vector5::zeros();
    for c in 0..5 {
        let mut minor = Matrix4::zeros();
        for (row, x) in lifts.iter().enumerate() {
            let mut col = 0;
            for cc in 0..5 {
                if cc != c {
                    minor[(row, col)] = x[cc];
                    col += 1;
                }
            }
        }
        let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
        s[c] = sign * minor.determinant();
    }
    // Euclidean orthogonal -> Minkowski orthogonal
    s[4] = -s[4];
    let q = minkowski(&s, &s);
    if q <= 1e-20 * scale * scale {
        return None;
    }
    Some(s / q.sqrt())
}

/// Angle between the circumspheres of the face pairs at interior edges `e1` and `e2`.
pub fn circumsphere_angle(
    r: &Realization,
    e1: usize,
    e2: usize,
) -> Result<SphereAngle, MoebiusError> {
    let s1 = sphere_vector(&edge_quad(r, e1)?);
    let s2 = sphere_vector(&edge_quad(r, e2)?);
    Ok(match (s1, s2) {
        (Some(a), Some(b)) => SphereAngle::Angle(minkowski(&a, &b).clamp(-1.0, 1.0).acos()),
        _ => SphereAngle::Degenerate,
    })
}

/// Pairs of interior edges sharing an endpoint, each listed once.
pub fn neighboring_sphere_pairs(r: &Realization) -> Vec<(usize, usize)> {
    let m = r.mesh();
    let mut pairs = Vec::new();
    for v in 0..m.vertex_count() {
        let edges: Vec<usize> = m
            .star(v)
            .iter()
            .map(|&(e, _)| e)
            .filter(|&e| m.edge(e).is_interior())
            .collect();
        for a in 0..edges.len() {
            for b in a + 1..edges.len() {
                pairs.push((edges[a].min(edges[b]), edges[a].max(edges[b])));
            }
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AngleKind {
    Circles,
    Spheres,
}

/// All circle angles (per interior edge) or sphere angles (per neighboring pair).
pub fn angles(r: &Realization, which: AngleKind) -> Result<Vec<Option<f64>>, MoebiusError> {
    match which {
        AngleKind::Circles => r
            .mesh()
            .interior_edges()
            .par_iter()
            .map(|&e| circumcircle_angle(r, e).map(Some))
            .collect(),
        AngleKind::Spheres => neighboring_sphere_pairs(r)
            .par_iter()
            .map(|&(a, b)| circumsphere_angle(r, a, b).map(|s| s.value()))
            .collect(),
    }
}

/// Rates of change of the angles under `ḟ`, by Richardson-extrapolated central
/// differences at steps `eps` and `eps / 2`. Degenerate items give `None`.
pub fn angle_rate(
    r: &Realization,
    f_dot: &[Vector3<f64>],
    which: AngleKind,
    eps: f64,
) -> Result<Vec<Option<f64>>, MoebiusError> {
    let moved = |h: f64| -> Result<Vec<Option<f64>>, MoebiusError> {
        let pts = r
            .positions()
            .iter()
            .zip(f_dot)
            .map(|(p, v)| p + h * v)
            .collect();
        angles(&r.with_positions(pts)?, which)
    };
    let central = |h: f64| -> Result<Vec<Option<f64>>, MoebiusError> {
        let plus = moved(h)?;
        let minus = moved(-h)?;
        Ok(plus
            .iter()
            .zip(&minus)
            .map(|(a, b)| Some((a.as_ref()? - b.as_ref()?) / (2.0 * h)))
            .collect())
    };
    let d1 = central(eps)?;
    let d2 = central(eps / 2.0)?;
    Ok(d1
        .iter()
        .zip(&d2)
        .map(|(a, b)| Some((4.0 * (*b)? - (*a)?) / 3.0))
        .collect())
}

/// Velocity field of a one-parameter Möbius flow:
/// `a + ω × x + λ x + 2<b, x> x - |x|² b`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MoebiusVelocity {
    pub translation: Vector3<f64>,
    pub rotation: Vector3<f64>,
    pub dilation: f64,
    pub special: Vector3<f64>,
}

impl MoebiusVelocity {
    pub fn at(&self, x: &Vector3<f64>) -> Vector3<f64> {
        self.translation
            + self.rotation.cross(x)
            + self.dilation * x
            + 2.0 * self.special.dot(x) * x
            - x.norm_squared() * self.special
    }

    pub fn random(rng: &mut impl Rng) -> Self {
        let mut v = || {
            Vector3::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            )
        };
        let (a, w, b) = (v(), v(), v());
        Self {
            translation: a,
            rotation: w,
            dilation: rng.gen_range(-1.0..1.0),
            special: b,
        }
    }

    pub fn field(&self, r: &Realization) -> Vec<Vector3<f64>> {
        r.positions().iter().map(|p| self.at(p)).collect()
    }
}

/// A random Möbius chain whose inversion center stays at least `margin`
/// (relative to the point cloud size) away from every point.
pub fn random_map(rng: &mut impl Rng, points: &[Vector3<f64>], margin: f64) -> MoebiusMap {
    let radius = points
        .iter()
        .map(|p| p.norm())
        .fold(0.0, f64::max)
        .max(1e-300);
    fn unit(rng: &mut impl Rng) -> Vector3<f64> {
        Vector3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        )
    }
    let axis = unit(rng);
    let angle = rng.gen_range(-PI..PI);
    let center = loop {
        let c = unit(rng) * 1.5 * radius;
        if points.iter().all(|p| (p - c).norm() > margin * radius) {
            break c;
        }
    };
    let shift = unit(rng) * radius;
    let rot = nalgebra::Rotation3::from_axis_angle(&Unit::new_normalize(axis), angle);
    let s = rng.gen_range(0.5..2.0) * radius;
    MoebiusMap::new(vec![
        Primitive::Rotate(*rot.matrix()),
        Primitive::Translate(-center),
        Primitive::Invert,
        Primitive::Scale(s * s),
        Primitive::Translate(shift),
    ])
}

/// Checks that a Lorentz matrix preserves the Minkowski form: `max |LᵀJL - J|`.
pub fn lorentz_defect(l: &Matrix5) -> f64 {
    let j = j_metric();
    (l.transpose() * j * l - j).abs().max()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn lift_is_light_like() {
        let f = Vector3::new(0.3, -2.0, 5.0);
        let x = lift(&f);
        assert!(minkowski(&x, &x).abs() < 1e-12 * (1.0 + f.norm_squared()).powi(2));
        assert!(x[4] >= 0.5);
    }

    #[test]
    fn inversion_examples() {
        let m: MoebiusMap = "invert".parse().unwrap();
        assert_eq!(
            m.apply_point(&Vector3::new(2.0, 0.0, 0.0)),
            Vector3::new(-0.5, 0.0, 0.0)
        );
        let p = Vector3::new(0.6, 0.0, 0.8);
        assert!((m.apply_point(&p).norm() - 1.0).abs() < 1e-15);
        let twice = m.apply_point(&m.apply_point(&Vector3::new(0.3, 1.2, -0.7)));
        assert!((twice - Vector3::new(0.3, 1.2, -0.7)).norm() < 1e-12);
    }

    #[test]
    fn chain_and_matrix_agree() {
        let m: MoebiusMap =
            "rotate 1 2 3 0.7; translate 0 0 2; invert; scale -0.5; translate 1 0 0"
                .parse()
                .unwrap();
        let l = m.lorentz();
        assert!(lorentz_defect(&l) < 1e-12);
        for p in [Vector3::new(0.1, 0.2, 0.3), Vector3::new(-3.0, 1.0, 0.5)] {
            assert!((m.apply_point(&p) - m.apply_projective(&p)).norm() < 1e-10);
        }
    }

    #[test]
    fn stereographic_fixed_points() {
        let m = MoebiusMap::stereographic(1.0);
        assert!((m.apply_point(&Vector3::zeros()) - Vector3::new(0.0, 0.0, -1.0)).norm() < 1e-15);
        let eq = m.apply_point(&Vector3::new(0.6, 0.8, 0.0));
        assert!(eq.z.abs() < 1e-15 && (eq.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn chain_round_trips_through_display() {
        let m: MoebiusMap = "translate 0 0 2; invert; scale 0.5".parse().unwrap();
        let again: MoebiusMap = m.to_string().parse().unwrap();
        assert_eq!(m, again);
        assert!("warp 1".parse::<MoebiusMap>().is_err());
        assert!("scale 1 2".parse::<MoebiusMap>().is_err());
    }

    #[test]
    fn origin_vertex_cannot_be_inverted() {
        let r = generators::square_domain(3).unwrap();
        assert!(matches!(invert(&r), Err(MoebiusError::NearCenter { .. })));
    }

    #[test]
    fn cocircular_pair_has_zero_circle_angle() {
        let r = generators::grid_disk(2).unwrap();
        let e = r.mesh().interior_edges()[0];
        assert!(circumcircle_angle(&r, e).unwrap().abs() < 1e-12);
        assert!(matches!(
            circumsphere_angle(&r, e, e).unwrap(),
            SphereAngle::Degenerate
        ));
    }

    #[test]
    fn identical_sphere_pairs_have_zero_angle() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut r = generators::grid_disk(3).unwrap();
        let pts = r
            .positions()
            .iter()
            .map(|p| p + Vector3::new(0.0, 0.0, rng.gen_range(-0.3..0.3)))
            .collect();
        r = r.with_positions(pts).unwrap();
        let e = r.mesh().interior_edges()[2];
        assert!(circumsphere_angle(&r, e, e).unwrap().value().unwrap() < 1e-7);
    }
}
