//! Dense symmetric eigensolvers.
//!
//! The eigenbasis construction only ever hands tridiagonal matrices to [`symmetric_eigen`], which
//! routes them to the implicit QL iteration. Cyclic Jacobi handles everything else and doubles
//! as an independent check of the QL results in tests.

use crate::error::{Error, Result};
use crate::foundation::RealMatrix;

/// Eigenvalues and column eigenvectors of a real symmetric matrix.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: RealMatrix,
}

impl SymmetricEigen {
    /// Reorders eigenpairs by descending eigenvalue.
    pub fn sort_descending(self) -> Self {
        let n = self.values.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| self.values[b].total_cmp(&self.values[a]));
        let values = order.iter().map(|&i| self.values[i]).collect();
        let mut vectors = RealMatrix::zeros(self.vectors.rows(), n);
        for (dst, &src) in order.iter().enumerate() {
            vectors.set_column(dst, &self.vectors.column(src));
        }
        SymmetricEigen { values, vectors }
    }
}

fn is_tridiagonal(a: &RealMatrix) -> bool {
    let n = a.rows();
    (0..n).all(|r| (0..n).all(|c| r.abs_diff(c) <= 1 || a[(r, c)] == 0.0))
}

/// Eigendecomposition of a symmetric matrix, choosing QL for tridiagonal input.
pub fn symmetric_eigen(a: &RealMatrix) -> Result<SymmetricEigen> {
    assert_eq!(a.rows(), a.cols(), "matrix must be square");
    if is_tridiagonal(a) {
        let n = a.rows();
        let diag: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
        let off: Vec<f64> = (1..n).map(|i| a[(i, i - 1)]).collect();
        tridiagonal_eigen(&diag, &off)
    } else {
        jacobi_eigen(a)
    }
}

/// Implicit QL iteration with Wilkinson shifts for a symmetric tridiagonal matrix.
///
/// `diag` has length n, `off` has length n-1 with `off[i]` coupling rows i and i+1.
pub fn tridiagonal_eigen(diag: &[f64], off: &[f64]) -> Result<SymmetricEigen> {
    let n = diag.len();
    assert!(n >= 1);
    assert_eq!(off.len(), n - 1, "off-diagonal must have length n-1");

    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    e.push(0.0);
    // columns of the accumulated rotation
    let mut z: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut col = vec![0.0; n];
            col[i] = 1.0;
            col
        })
        .collect();

    let eps = f64::EPSILON;
    let max_iter = 50 * n.max(1);
    let mut iterations = 0;
    let mut f = 0.0;
    let mut tst1 = 0.0f64;

    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }

        if m > l {
            loop {
                iterations += 1;
                if iterations > max_iter {
                    return Err(Error::NoConvergence { iterations: max_iter });
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);

                    let (left, right) = z.split_at_mut(i + 1);
                    let zi = &mut left[i];
                    let zi1 = &mut right[0];
                    for k in 0..n {
                        let t = zi1[k];
                        zi1[k] = s * zi[k] + c * t;
                        zi[k] = c * zi[k] - s * t;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }

    let mut vectors = RealMatrix::zeros(n, n);
    for (j, col) in z.iter().enumerate() {
        vectors.set_column(j, col);
    }
    Ok(SymmetricEigen { values: d, vectors })
}

/// Cyclic Jacobi rotations on a dense symmetric matrix.
pub fn jacobi_eigen(a: &RealMatrix) -> Result<SymmetricEigen> {
    let n = a.rows();
    assert_eq!(n, a.cols(), "matrix must be square");
    let mut m = a.clone();
    let mut v = RealMatrix::identity(n);
    const MAX_SWEEPS: usize = 100;

    let scale = a.as_slice().iter().map(|x| x * x).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| m[(p, q)] * m[(p, q)])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            let values = (0..n).map(|i| m[(i, i)]).collect();
            return Ok(SymmetricEigen { values, vectors: v });
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    Err(Error::NoConvergence { iterations: MAX_SWEEPS })
}
