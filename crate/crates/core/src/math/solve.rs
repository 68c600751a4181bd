//! Dense solvers for the tiny systems the pose module produces.

use alloc::vec;
use alloc::vec::Vec;

use super::scalar::Real;
use super::{Mat3, Vec3};

/// Eigendecomposition of a symmetric `n x n` matrix by cyclic Jacobi sweeps.
///
/// `a` is row-major and left untouched. Returns `(values, vectors)` with
/// eigenvalues ascending and eigenvectors as columns of the row-major `n x n`
/// vector matrix (column `j` pairs with `values[j]`).
pub fn jacobi_eigen_sym(n: usize, a: &[f64]) -> (Vec<f64>, Vec<f64>) {
    assert_eq!(a.len(), n * n, "matrix size mismatch");
    let mut m = a.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    for _sweep in 0..64 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += m[p * n + q] * m[p * n + q];
            }
        }
        if off < 1e-28 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                if Real::abs(apq) < 1e-300 {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let tau = (aqq - app) / (2.0 * apq);
                // Smaller-magnitude root keeps the rotation angle <= pi/4.
                let t = if tau >= 0.0 {
                    1.0 / (tau + Real::sqrt(1.0 + tau * tau))
                } else {
                    -1.0 / (-tau + Real::sqrt(1.0 + tau * tau))
                };
                let c = 1.0 / Real::sqrt(1.0 + t * t);
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k * n + p];
                    let mkq = m[k * n + q];
                    m[k * n + p] = c * mkp - s * mkq;
                    m[k * n + q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p * n + k];
                    let mqk = m[q * n + k];
                    m[p * n + k] = c * mpk - s * mqk;
                    m[q * n + k] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        m[i * n + i]
            .partial_cmp(&m[j * n + j])
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    let values: Vec<f64> = order.iter().map(|&i| m[i * n + i]).collect();
    let mut vectors = vec![0.0; n * n];
    for (jnew, &jold) in order.iter().enumerate() {
        for k in 0..n {
            vectors[k * n + jnew] = v[k * n + jold];
        }
    }
    (values, vectors)
}

/// SVD of a 3x3 matrix: `a = u * diag(s) * v^T` with `s` descending.
///
/// `u` and `v` have orthonormal columns but may have negative determinant;
/// callers that need proper rotations fix the signs themselves.
#[derive(Debug, Clone, Copy)]
pub struct Svd3 {
    pub u: Mat3,
    pub s: [f64; 3],
    pub v: Mat3,
}

pub fn svd3(a: &Mat3) -> Svd3 {
    // Eigendecompose a^T a for V, then recover U from a*V with rank fixups.
    let ata = a.transpose().mul_mat(a);
    let flat: [f64; 9] = [
        ata.0[0][0], ata.0[0][1], ata.0[0][2], ata.0[1][0], ata.0[1][1], ata.0[1][2], ata.0[2][0],
        ata.0[2][1], ata.0[2][2],
    ];
    let (vals, vecs) = jacobi_eigen_sym(3, &flat);
    // Ascending -> descending.
    let idx = [2usize, 1, 0];
    let mut s = [0.0; 3];
    let mut vcols = [Vec3::ZERO; 3];
    for (j, &k) in idx.iter().enumerate() {
        s[j] = Real::sqrt(Real::max_val(vals[k], 0.0));
        vcols[j] = Vec3::new(vecs[k], vecs[3 + k], vecs[6 + k]);
    }
    let mut ucols = [Vec3::ZERO; 3];
    for j in 0..3 {
        let av = a.mul_vec(&vcols[j]);
        ucols[j] = match (s[j] > 1e-12, j) {
            (true, _) => av.scale(1.0 / s[j]),
            (false, 2) => ucols[0].cross(&ucols[1]),
            (false, _) => orthogonal_complement(&ucols, j),
        };
    }
    Svd3 {
        u: Mat3::from_cols(ucols[0], ucols[1], ucols[2]),
        s,
        v: Mat3::from_cols(vcols[0], vcols[1], vcols[2]),
    }
}

fn orthogonal_complement(cols: &[Vec3; 3], j: usize) -> Vec3 {
    // Any unit vector orthogonal to the columns before `j`.
    let candidates = [
        Vec3::new(1.0, 0.0, 0.0),
        Vec3::new(0.0, 1.0, 0.0),
        Vec3::new(0.0, 0.0, 1.0),
    ];
    let mut best = candidates[0];
    let mut best_norm = -1.0;
    for c in candidates {
        let mut r = c;
        for col in cols.iter().take(j) {
            r -= col.scale(col.dot(&r));
        }
        let n = r.norm();
        if n > best_norm {
            best_norm = n;
            best = r;
        }
    }
    best.normalized().unwrap_or(candidates[0])
}

/// Solve `a x = b` in place for a small dense system (row-major `a`).
///
/// Gaussian elimination with partial pivoting; returns `false` when a pivot
/// falls below `1e-12` times the largest initial entry.
pub fn solve_sym(n: usize, a: &mut [f64], b: &mut [f64]) -> bool {
    assert_eq!(a.len(), n * n);
    assert_eq!(b.len(), n);
    let scale = a
        .iter()
        .fold(0.0f64, |acc, &x| Real::max_val(acc, Real::abs(x)))
        .max(1e-300);
    for col in 0..n {
        let mut pivot = col;
        for row in (col + 1)..n {
            if Real::abs(a[row * n + col]) > Real::abs(a[pivot * n + col]) {
                pivot = row;
            }
        }
        if Real::abs(a[pivot * n + col]) < 1e-12 * scale {
            return false;
        }
        if pivot != col {
            for k in 0..n {
                a.swap(col * n + k, pivot * n + k);
            }
            b.swap(col, pivot);
        }
        let inv = 1.0 / a[col * n + col];
        for row in (col + 1)..n {
            let f = a[row * n + col] * inv;
            if f == 0.0 {
                continue;
            }
            for k in col..n {
                a[row * n + k] -= f * a[col * n + k];
            }
            b[row] -= f * b[col];
        }
    }
    for col in (0..n).rev() {
        let mut acc = b[col];
        for k in (col + 1)..n {
            acc -= a[col * n + k] * b[k];
        }
        b[col] = acc / a[col * n + col];
    }
    true
}
