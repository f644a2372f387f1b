//! Latent semantic indexing: singular value decomposition of the weight
//! matrix and rank-k truncation.
//!
//! The decomposition is a one-sided Jacobi iteration: columns of a working
//! copy are pairwise rotated until mutually orthogonal, which yields
//! A = U·diag(S)·Vᵀ with orthonormal U and V and S sorted descending.
//! Truncating to the leading k factors gives the latent document vectors
//! used downstream (rows of V_k scaled by S_k).

use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::weighting::WeightMatrix;

/// Jacobi sweeps attempted before giving up.
const SWEEP_LIMIT: usize = 100;
/// A column pair counts as orthogonal when |dot| ≤ tol·‖p‖·‖q‖.
const ORTHO_TOL: f64 = 1e-12;
/// Singular values at or below tol·s_max are treated as zero.
const NULL_TOL: f64 = 1e-12;

/// Full decomposition A = U·diag(S)·Vᵀ with r = min(rows, cols).
#[derive(Debug, Clone, PartialEq)]
pub struct LatentModel {
    /// Term factors, terms × r, orthonormal columns.
    pub u: Mat,
    /// Singular values, descending, all non-negative.
    pub s: Vec<f64>,
    /// Document factors, docs × r, orthonormal columns.
    pub v: Mat,
}

impl LatentModel {
    pub fn rank(&self) -> usize {
        self.s.len()
    }
}

/// Leading-k slice of a `LatentModel`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedModel {
    pub k: usize,
    pub u_k: Mat,
    pub s_k: Vec<f64>,
    pub v_k: Mat,
    /// Latent embedding of each document: V_k rows scaled by S_k.
    pub doc_vectors: Vec<Vec<f64>>,
}

/// Decomposes the weight matrix (densified, terms × docs).
pub fn svd(weights: &WeightMatrix) -> Result<LatentModel> {
    let dense = Mat::from_rows(&weights.to_dense())?;
    svd_dense(&dense)
}

/// Decomposes an arbitrary dense matrix.
pub fn svd_dense(a: &Mat) -> Result<LatentModel> {
    let (m, n) = (a.rows(), a.cols());
    if m == 0 || n == 0 {
        return Err(Error::ShapeMismatch {
            expected: 1,
            found: 0,
        });
    }
    for i in 0..m {
        for &x in a.row(i) {
            if !x.is_finite() {
                return Err(Error::NonFinite);
            }
        }
    }

    let (mut u, s, mut v) = if m >= n {
        one_sided_jacobi(a)?
    } else {
        // decompose the transpose and swap the factor roles
        let (ut, s, vt) = one_sided_jacobi(&a.transpose())?;
        (vt, s, ut)
    };

    // sign convention: the largest-magnitude entry of each U column is
    // non-negative, with V negated alongside to keep the product fixed
    for j in 0..s.len() {
        let mut pivot = 0;
        for i in 0..u.rows() {
            if u[(i, j)].abs() > u[(pivot, j)].abs() {
                pivot = i;
            }
        }
        if u[(pivot, j)] < 0.0 {
            for i in 0..u.rows() {
                u[(i, j)] = -u[(i, j)];
            }
            for i in 0..v.rows() {
                v[(i, j)] = -v[(i, j)];
            }
        }
    }

    Ok(LatentModel { u, s, v })
}

/// Jacobi iteration for m ≥ n. Returns (U: m×n, S: n, V: n×n).
fn one_sided_jacobi(a: &Mat) -> Result<(Mat, Vec<f64>, Mat)> {
    let (m, n) = (a.rows(), a.cols());
    let mut w = a.clone();
    let mut v = Mat::identity(n);

    let mut converged = false;
    for _ in 0..SWEEP_LIMIT {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let mut app = 0.0;
                let mut aqq = 0.0;
                let mut apq = 0.0;
                for i in 0..m {
                    app += w[(i, p)] * w[(i, p)];
                    aqq += w[(i, q)] * w[(i, q)];
                    apq += w[(i, p)] * w[(i, q)];
                }
                if apq.abs() <= ORTHO_TOL * (app * aqq).sqrt() {
                    continue;
                }
                rotated = true;

                let tau = (aqq - app) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;

                for i in 0..m {
                    let (wp, wq) = (w[(i, p)], w[(i, q)]);
                    w[(i, p)] = c * wp - s * wq;
                    w[(i, q)] = s * wp + c * wq;
                }
                for i in 0..n {
                    let (vp, vq) = (v[(i, p)], v[(i, q)]);
                    v[(i, p)] = c * vp - s * vq;
                    v[(i, q)] = s * vp + c * vq;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps: SWEEP_LIMIT,
        });
    }

    // singular values are the column norms of the rotated matrix
    let norms: Vec<f64> = (0..n)
        .map(|j| (0..m).map(|i| w[(i, j)] * w[(i, j)]).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| norms[b].partial_cmp(&norms[a]).unwrap().then(a.cmp(&b)));

    let s_max = norms[order[0]];
    let mut u = Mat::zeros(m, n);
    let mut v_sorted = Mat::zeros(n, n);
    let mut s = Vec::with_capacity(n);
    let mut null_cols = Vec::new();
    for (j, &src) in order.iter().enumerate() {
        let norm = norms[src];
        if norm > NULL_TOL * s_max {
            s.push(norm);
            for i in 0..m {
                u[(i, j)] = w[(i, src)] / norm;
            }
        } else {
            s.push(0.0);
            null_cols.push(j);
        }
        for i in 0..n {
            v_sorted[(i, j)] = v[(i, src)];
        }
    }

    // null columns of U get deterministic orthonormal fillers: the first
    // standard basis vector with a usable residual after projecting out
    // every column fixed so far
    for &j in &null_cols {
        let mut filled = false;
        for k in 0..m {
            let mut cand = vec![0.0; m];
            cand[k] = 1.0;
            for jj in 0..n {
                if s[jj] == 0.0 && jj >= j {
                    continue;
                }
                let dot: f64 = (0..m).map(|i| cand[i] * u[(i, jj)]).sum();
                for (i, c) in cand.iter_mut().enumerate() {
                    *c -= dot * u[(i, jj)];
                }
            }
            let norm = (cand.iter().map(|x| x * x).sum::<f64>()).sqrt();
            if norm > 1e-6 {
                for (i, c) in cand.iter().enumerate() {
                    u[(i, j)] = c / norm;
                }
                filled = true;
                break;
            }
        }
        debug_assert!(filled, "standard basis always completes the column space");
    }

    Ok((u, s, v_sorted))
}

/// Slices the leading k factors of a decomposition.
pub fn truncate(model: &LatentModel, k: usize) -> Result<TruncatedModel> {
    let r = model.rank();
    if k < 1 || k > r {
        return Err(Error::RankOutOfBounds { k, max: r });
    }
    let u_k = model.u.take_cols(k);
    let v_k = model.v.take_cols(k);
    let s_k = model.s[..k].to_vec();
    let doc_vectors = (0..v_k.rows())
        .map(|d| (0..k).map(|j| v_k[(d, j)] * s_k[j]).collect())
        .collect();
    Ok(TruncatedModel {
        k,
        u_k,
        s_k,
        v_k,
        doc_vectors,
    })
}

/// Rebuilds the rank-k matrix U_k·diag(S_k)·V_kᵀ.
pub fn reconstruct(model: &TruncatedModel) -> Mat {
    let (m, n) = (model.u_k.rows(), model.v_k.rows());
    let mut out = Mat::zeros(m, n);
    for l in 0..model.k {
        let sl = model.s_k[l];
        if sl == 0.0 {
            continue;
        }
        for i in 0..m {
            let uil = model.u_k[(i, l)] * sl;
            if uil == 0.0 {
                continue;
            }
            for j in 0..n {
                out[(i, j)] += uil * model.v_k[(j, l)];
            }
        }
    }
    out
}
