//! Dense rank and nullspace computations shared by every module.
//!
//! One rank policy is used everywhere: singular values below
//! `rel_tol * sigma_max` count as zero, and a spectrum with any value within
//! half a decade of the threshold is flagged as marginal.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

/// Default relative rank tolerance.
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

/// Result of a rank-revealing SVD.
#[derive(Debug, Clone)]
pub struct Nullspace {
    /// Orthonormal basis of the numerical nullspace, one column per vector.
    pub basis: DMatrix<f64>,
    /// All `ncols` singular values in descending order (zero-padded when the
    /// matrix has fewer rows than columns).
    pub singular_values: Vec<f64>,
    pub rank: usize,
    pub threshold: f64,
    pub marginal: Option<Marginal>,
}

impl Nullspace {
    pub fn nullity(&self) -> usize {
        self.basis.ncols()
    }

    pub fn sigma_max(&self) -> f64 {
        self.singular_values.first().copied().unwrap_or(0.0)
    }
}

/// Singular values that sit too close to the rank threshold to classify.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Marginal {
    /// Smallest singular value kept in the rank.
    pub smallest_kept: f64,
    /// Largest singular value counted as zero.
    pub largest_dropped: f64,
    /// Ratio between the two, the spectral gap around the threshold.
    pub gap: f64,
}

/// Rank-revealing SVD nullspace of `a` with relative tolerance `rel_tol`.
pub fn nullspace(a: &DMatrix<f64>, rel_tol: f64) -> Nullspace {
    let n = a.ncols();
    if n == 0 {
        return Nullspace {
            basis: DMatrix::zeros(0, 0),
            singular_values: Vec::new(),
            rank: 0,
            threshold: 0.0,
            marginal: None,
        };
    }
    let padded = if a.nrows() < n {
        let mut p = DMatrix::zeros(n, n);
        p.view_mut((0, 0), (a.nrows(), n)).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let singular_values: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
    let sigma_max = singular_values[0];
    let threshold = rel_tol * sigma_max;
    let rank = if sigma_max == 0.0 {
        0
    } else {
        singular_values.iter().filter(|&&s| s >= threshold).count()
    };
    let null_rows: Vec<usize> = order[rank..].to_vec();
    let mut basis = DMatrix::zeros(n, null_rows.len());
    for (c, &row) in null_rows.iter().enumerate() {
        basis.set_column(c, &v_t.row(row).transpose());
    }
    let lo = threshold / 10f64.sqrt();
    let hi = threshold * 10f64.sqrt();
    let marginal = if sigma_max > 0.0 && singular_values.iter().any(|&s| s >= lo && s <= hi) {
        let smallest_kept = if rank > 0 {
            singular_values[rank - 1]
        } else {
            f64::INFINITY
        };
        let largest_dropped = singular_values.get(rank).copied().unwrap_or(0.0);
        Some(Marginal {
            smallest_kept,
            largest_dropped,
            gap: smallest_kept / largest_dropped,
        })
    } else {
        None
    };
    Nullspace {
        basis,
        singular_values,
        rank,
        threshold,
        marginal,
    }
}

/// Numerical rank of `a` under the shared policy.
pub fn rank(a: &DMatrix<f64>, rel_tol: f64) -> usize {
    nullspace(a, rel_tol).rank
}

/// Orthonormal basis of the column space of `a` (rank by `rel_tol`).
pub fn column_space(a: &DMatrix<f64>, rel_tol: f64) -> DMatrix<f64> {
    if a.ncols() == 0 || a.nrows() == 0 {
        return DMatrix::zeros(a.nrows(), 0);
    }
    let svd = a.clone().svd(true, false);
    let u = svd.u.expect("requested U");
    let smax = svd.singular_values.max();
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| smax > 0.0 && svd.singular_values[i] >= rel_tol * smax)
        .collect();
    let mut q = DMatrix::zeros(a.nrows(), keep.len());
    for (c, &i) in keep.iter().enumerate() {
        q.set_column(c, &u.column(i));
    }
    q
}

/// Largest principal angle between the column spaces of two orthonormal bases.
/// Subspaces of different dimension are at angle π/2.
pub fn max_principal_angle(q1: &DMatrix<f64>, q2: &DMatrix<f64>) -> f64 {
    if q1.ncols() != q2.ncols() {
        return std::f64::consts::FRAC_PI_2;
    }
    if q1.ncols() == 0 {
        return 0.0;
    }
    let resid = q1 - q2 * (q2.transpose() * q1);
    let s = resid.svd(false, false).singular_values.max();
    s.clamp(0.0, 1.0).asin()
}

/// Least-squares solution of `a x = b` via SVD.
pub fn least_squares(a: &DMatrix<f64>, b: &DVector<f64>) -> DVector<f64> {
    let svd = a.clone().svd(true, true);
    let eps = 1e-14 * svd.singular_values.max();
    svd.solve(b, eps).expect("U and V^T were computed")
}
