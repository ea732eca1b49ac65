//! The multiangle transform: every fractional order on the grid `4r/R` at once.
//!
//! With `Z[n,k] = V[n,k] (V^T x)[k]`, the transform at order `4r/R` is
//! `X[n,r] = sum_k Z[n,k] exp(-j 2 pi l[k] r / R)`. When `l[k] = k` each row of `X` is the
//! unnormalized FFT of the matching row of `Z`. For the standard DFT with even `N` the last
//! exponent is `N` instead of `N-1`; its phase term is identically 1, so the last column of
//! `Z` is folded into column 0 (`Zhat`) and the row FFTs apply again.
//!
//! Rows of `Z` inherit the mirror symmetry of the eigenvectors, which makes row `mirror(n)` of
//! `X` a circular shift by `R/2` of row `n`. The half path transforms one row per mirror
//! orbit and copies the rest. Odd `N` needs an even `R` for that shift, so the half path pads
//! `Z` with a zero column and evaluates the `N+1` orders `4r/(N+1)`.
//!
//! Geometrically, row `n` collects the chirp components tangent to a circle around the
//! rotation centre of the time-frequency plane; rows `n` and `mirror(n)` trace the same circle
//! in opposite directions. That picture is not needed by the code.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::eigenbasis::{mirror_orbits, EigenBasis};
use crate::error::{Error, Result};
use crate::foundation::{ComplexMatrix, ComplexSignal, FftPlan, OpCounter, TransformVariant};
use crate::frft::{frft_apply, FracOrder};

/// Which algorithm produced a [`MultiangleResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MultianglePath {
    /// One eigendecomposition-based transform per order, O(N³).
    Naive,
    /// One FFT per row of `Z`.
    Full,
    /// One FFT per mirror orbit of rows.
    Half,
}

impl MultianglePath {
    pub const ALL: [MultianglePath; 3] = [MultianglePath::Naive, MultianglePath::Full, MultianglePath::Half];

    pub fn as_str(self) -> &'static str {
        match self {
            MultianglePath::Naive => "naive",
            MultianglePath::Full => "full",
            MultianglePath::Half => "half",
        }
    }
}

impl fmt::Display for MultianglePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MultianglePath {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "naive" => Ok(MultianglePath::Naive),
            "full" => Ok(MultianglePath::Full),
            "half" => Ok(MultianglePath::Half),
            other => Err(format!("unknown path '{other}' (expected naive, full or half)")),
        }
    }
}

/// `N x R` matrix whose column `r` is the transform at order `orders[r] = 4r/R`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiangleResult {
    pub x: ComplexMatrix,
    pub orders: Vec<f64>,
    pub variant: TransformVariant,
    pub path: MultianglePath,
}

impl MultiangleResult {
    pub fn n(&self) -> usize {
        self.x.rows()
    }

    pub fn num_orders(&self) -> usize {
        self.x.cols()
    }
}

/// The order grid `4r/R`.
pub fn order_grid(r_count: usize) -> Vec<f64> {
    (0..r_count).map(|r| 4.0 * r as f64 / r_count as f64).collect()
}

/// `Z` and, for the standard variant with even N, its folded form `Zhat`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZMatrix {
    pub z: ComplexMatrix,
    pub zhat: Option<ComplexMatrix>,
}

impl ZMatrix {
    /// The matrix whose rows are transformed: `Zhat` when present, else `Z`.
    pub fn fft_source(&self) -> &ComplexMatrix {
        self.zhat.as_ref().unwrap_or(&self.z)
    }
}

fn check_len(basis: &EigenBasis, x: &ComplexSignal) -> Result<()> {
    if x.len() != basis.n() {
        return Err(Error::LengthMismatch { expected: basis.n(), actual: x.len() });
    }
    Ok(())
}

/// `V^T x` by direct product.
pub fn change_of_basis(basis: &EigenBasis, x: &ComplexSignal) -> Result<ComplexSignal> {
    change_of_basis_counted(basis, x, &OpCounter::new())
}

/// [`change_of_basis`], recording one multiply per real-by-complex product on `mults`.
pub fn change_of_basis_counted(basis: &EigenBasis, x: &ComplexSignal, mults: &OpCounter) -> Result<ComplexSignal> {
    check_len(basis, x)?;
    let n = basis.n();
    let v = basis.vectors();
    let mut y = vec![Complex64::new(0.0, 0.0); n];
    for (row, &xv) in x.as_slice().iter().enumerate() {
        for (acc, &vk) in y.iter_mut().zip(v.row(row)) {
            *acc += xv * vk;
        }
    }
    mults.add(n * n);
    Ok(ComplexSignal::from_vec_unchecked(y))
}

/// `V^T x` using the mirror symmetry of the basis.
///
/// The input splits into `x + Px` and `x - Px`, each kept on one representative per mirror
/// orbit. Even-symmetric columns only see the first half, odd-symmetric columns only the
/// second, so the product costs roughly `N²/2` multiplies. For even N with the standard
/// variant the two half-size blocks act like DCT-I / DST-I kernels; no specialised kernel is
/// used here.
pub fn change_of_basis_fast(basis: &EigenBasis, x: &ComplexSignal) -> Result<ComplexSignal> {
    change_of_basis_fast_counted(basis, x, &OpCounter::new())
}

pub fn change_of_basis_fast_counted(
    basis: &EigenBasis,
    x: &ComplexSignal,
    mults: &OpCounter,
) -> Result<ComplexSignal> {
    check_len(basis, x)?;
    let n = basis.n();
    let v = basis.vectors();
    let xs = x.as_slice();
    let orbits = mirror_orbits(n, basis.variant());

    // fixed points belong to the even part only; their odd component is zero
    let even: Vec<(usize, Complex64)> = orbits
        .iter()
        .map(|o| (o.rep, if o.is_fixed() { xs[o.rep] } else { xs[o.rep] + xs[o.partner] }))
        .collect();
    let odd: Vec<(usize, Complex64)> =
        orbits.iter().filter(|o| !o.is_fixed()).map(|o| (o.rep, xs[o.rep] - xs[o.partner])).collect();

    let mut y = vec![Complex64::new(0.0, 0.0); n];
    let mut count = 0;
    for (k, out) in y.iter_mut().enumerate() {
        let half = if basis.index_vector()[k].is_multiple_of(2) { &even } else { &odd };
        *out = half.iter().map(|&(row, xv)| xv * v[(row, k)]).sum();
        count += half.len();
    }
    mults.add(count);
    Ok(ComplexSignal::from_vec_unchecked(y))
}

/// Builds `Z` (and `Zhat` for the standard variant with even N).
pub fn z_matrix(basis: &EigenBasis, x: &ComplexSignal) -> Result<ZMatrix> {
    let y = change_of_basis_fast(basis, x)?;
    let n = basis.n();
    let v = basis.vectors();
    let z = ComplexMatrix::from_fn(n, n, |r, k| y[k] * v[(r, k)]);
    let zhat = (basis.variant() == TransformVariant::Standard && n.is_multiple_of(2)).then(|| {
        let mut zh = z.clone();
        for r in 0..n {
            let row = zh.row_mut(r);
            row[0] += row[n - 1];
            row[n - 1] = Complex64::new(0.0, 0.0);
        }
        zh
    });
    Ok(ZMatrix { z, zhat })
}

/// Every order `4r/N` via per-order eigendecomposition transforms; the reference oracle.
pub fn ma_frft_naive(basis: &EigenBasis, x: &ComplexSignal) -> Result<MultiangleResult> {
    check_len(basis, x)?;
    let n = basis.n();
    let orders = order_grid(n);
    let mut out = ComplexMatrix::zeros(n, n);
    for (r, &a) in orders.iter().enumerate() {
        let col = frft_apply(basis, FracOrder::new(a)?, x)?;
        for (row, value) in col.as_slice().iter().enumerate() {
            out[(row, r)] = *value;
        }
    }
    Ok(MultiangleResult { x: out, orders, variant: basis.variant(), path: MultianglePath::Naive })
}

pub fn ma_frft_full(basis: &EigenBasis, x: &ComplexSignal) -> Result<MultiangleResult> {
    ma_frft_full_counted(basis, x, &OpCounter::new())
}

/// Row FFTs of `Z` (or `Zhat`), one per row; `ffts` receives one count per FFT.
pub fn ma_frft_full_counted(basis: &EigenBasis, x: &ComplexSignal, ffts: &OpCounter) -> Result<MultiangleResult> {
    let zm = z_matrix(basis, x)?;
    let n = basis.n();
    let plan = FftPlan::new(n);
    let mut out = zm.fft_source().clone();
    for r in 0..n {
        plan.forward_counted(out.row_mut(r), ffts);
    }
    Ok(MultiangleResult { x: out, orders: order_grid(n), variant: basis.variant(), path: MultianglePath::Full })
}

pub fn ma_frft_half(basis: &EigenBasis, x: &ComplexSignal, pad_odd: bool) -> Result<MultiangleResult> {
    ma_frft_half_counted(basis, x, pad_odd, &OpCounter::new())
}

/// Row FFTs for one row per mirror orbit; the mirrored rows are shifted copies.
///
/// Odd N requires `pad_odd`, which appends a zero column to `Z` and evaluates `N+1` orders.
pub fn ma_frft_half_counted(
    basis: &EigenBasis,
    x: &ComplexSignal,
    pad_odd: bool,
    ffts: &OpCounter,
) -> Result<MultiangleResult> {
    check_len(basis, x)?;
    let n = basis.n();
    if n % 2 == 1 && !pad_odd {
        return Err(Error::OddWithoutPad { n });
    }
    let zm = z_matrix(basis, x)?;
    let src = zm.fft_source();
    let r_count = if n.is_multiple_of(2) { n } else { n + 1 };
    let shift = r_count / 2;
    let plan = FftPlan::new(r_count);

    let mut out = ComplexMatrix::zeros(n, r_count);
    let mut buf = vec![Complex64::new(0.0, 0.0); r_count];
    for orbit in mirror_orbits(n, basis.variant()) {
        buf[..n].copy_from_slice(src.row(orbit.rep));
        buf[n..].fill(Complex64::new(0.0, 0.0));
        plan.forward_counted(&mut buf, ffts);
        out.row_mut(orbit.rep).copy_from_slice(&buf);
        if !orbit.is_fixed() {
            let mirrored = out.row_mut(orbit.partner);
            for (r, value) in buf.iter().enumerate() {
                mirrored[(r + shift) % r_count] = *value;
            }
        }
    }
    Ok(MultiangleResult { x: out, orders: order_grid(r_count), variant: basis.variant(), path: MultianglePath::Half })
}

/// Dispatches to one of the three paths. `pad_odd` only affects the half path.
pub fn ma_frft(
    basis: &EigenBasis,
    x: &ComplexSignal,
    path: MultianglePath,
    pad_odd: bool,
    ffts: &OpCounter,
) -> Result<MultiangleResult> {
    match path {
        MultianglePath::Naive => ma_frft_naive(basis, x),
        MultianglePath::Full => ma_frft_full_counted(basis, x, ffts),
        MultianglePath::Half => ma_frft_half_counted(basis, x, pad_odd, ffts),
    }
}

/// Peak-to-energy ratio `max_n |X[n,r]| / ||X[:,r]||` for every order.
pub fn concentration_profile(result: &MultiangleResult) -> Result<Vec<f64>> {
    let x = &result.x;
    let mut profile = Vec::with_capacity(x.cols());
    let mut any_energy = false;
    for r in 0..x.cols() {
        let col = x.column(r);
        let energy = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let peak = col.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if energy > 0.0 {
            any_energy = true;
            profile.push(peak / energy);
        } else {
            profile.push(0.0);
        }
    }
    if !any_energy {
        return Err(Error::ZeroSignal);
    }
    Ok(profile)
}

/// Indices whose value lies within `tol` of the maximum.
pub fn argmax_set(values: &[f64], tol: f64) -> Vec<usize> {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    values.iter().enumerate().filter(|(_, &v)| v >= max - tol).map(|(i, _)| i).collect()
}

/// Numerical reconstruction of the matrix that turns the standard even-N row transform into
/// a plain DFT. Never used on the computational path; kept to check the folding into `Zhat`.
pub mod derivation {
    use num_complex::Complex64;

    use crate::eigenbasis::index_vector;
    use crate::foundation::{ifft_unnormalized, ComplexMatrix, ComplexSignal, QuarterRoots, TransformVariant};

    /// `B[r,k] = exp(-j 2 pi r l[k] / N)` for the standard even-N index vector.
    pub fn b_matrix(n: usize) -> ComplexMatrix {
        assert!(n >= 2 && n.is_multiple_of(2), "defined for even n");
        let l = index_vector(n, TransformVariant::Standard);
        let roots = QuarterRoots::new(n);
        ComplexMatrix::from_fn(n, n, |r, k| roots.get(4 * (r * l[k]) as i64))
    }

    /// `B = sqrt(N) W_s Gamma` solved column by column with inverse FFTs.
    pub fn gamma_from_columns(n: usize) -> ComplexMatrix {
        let b = b_matrix(n);
        let mut gamma = ComplexMatrix::zeros(n, n);
        for k in 0..n {
            let col = ComplexSignal::new(b.column(k)).expect("finite");
            for (r, v) in ifft_unnormalized(&col).as_slice().iter().enumerate() {
                gamma[(r, k)] = v / n as f64;
            }
        }
        gamma
    }

    /// Identity, except the last column is the first unit vector.
    pub fn gamma_closed_form(n: usize) -> ComplexMatrix {
        let mut gamma = ComplexMatrix::identity(n);
        gamma[(n - 1, n - 1)] = Complex64::new(0.0, 0.0);
        gamma[(0, n - 1)] = Complex64::new(1.0, 0.0);
        gamma
    }
}
