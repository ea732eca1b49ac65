//! Single-order fractional transform `W^a = V diag((-j)^(l a)) V^T`.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::eigenbasis::EigenBasis;
use crate::error::{Error, Result};
use crate::foundation::{ComplexMatrix, ComplexSignal};

/// Fractional order, interpreted modulo 4.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracOrder(f64);

impl FracOrder {
    pub fn new(a: f64) -> Result<Self> {
        if a.is_finite() {
            Ok(FracOrder(a))
        } else {
            Err(Error::InvalidOrder)
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for FracOrder {
    type Error = Error;

    fn try_from(a: f64) -> Result<Self> {
        FracOrder::new(a)
    }
}

/// `(-j)^(l a) = exp(-j (pi/2) l a)`, with `l a` reduced mod 4 before the exponential.
pub fn fractional_eigenvalue(l: usize, a: FracOrder) -> Complex64 {
    let phase = -FRAC_PI_2 * (l as f64 * a.0).rem_euclid(4.0);
    Complex64::new(phase.cos(), phase.sin())
}

fn eigenvalue_powers(basis: &EigenBasis, a: FracOrder) -> Vec<Complex64> {
    basis.index_vector().iter().map(|&l| fractional_eigenvalue(l, a)).collect()
}

/// Materializes `W^a`. O(N³); meant for tests and small-N inspection.
pub fn frft_matrix(basis: &EigenBasis, a: FracOrder) -> ComplexMatrix {
    let n = basis.n();
    let v = basis.vectors();
    let lam = eigenvalue_powers(basis, a);
    let mut out = ComplexMatrix::zeros(n, n);
    for r in 0..n {
        let vr = v.row(r);
        for c in 0..n {
            let vc = v.row(c);
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                acc += lam[k] * (vr[k] * vc[k]);
            }
            out[(r, c)] = acc;
        }
    }
    out
}

/// Applies `W^a` to `x` in O(N²) without forming the matrix.
pub fn frft_apply(basis: &EigenBasis, a: FracOrder, x: &ComplexSignal) -> Result<ComplexSignal> {
    let n = basis.n();
    if x.len() != n {
        return Err(Error::LengthMismatch { expected: n, actual: x.len() });
    }
    let v = basis.vectors();
    let lam = eigenvalue_powers(basis, a);

    // coefficients = diag(lam) V^T x
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
    for (row, &xv) in x.as_slice().iter().enumerate() {
        for (c, &vk) in coeffs.iter_mut().zip(v.row(row)) {
            *c += xv * vk;
        }
    }
    for (c, l) in coeffs.iter_mut().zip(&lam) {
        *c *= l;
    }

    let out = (0..n).map(|r| v.row(r).iter().zip(&coeffs).map(|(&vk, c)| c * vk).sum()).collect();
    Ok(ComplexSignal::from_vec_unchecked(out))
}
