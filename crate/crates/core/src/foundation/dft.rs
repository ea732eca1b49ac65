use std::f64::consts::PI;

use num_complex::Complex64;

use super::fft::FftPlan;
use super::types::{ComplexMatrix, RealMatrix, TransformVariant};

/// Table of `exp(-j 2 pi e / (4N))` for `e in 0..4N`.
///
/// Centered DFT exponents are products of half-integers, so four times the exponent is always
/// an integer and every entry of either DFT matrix is one lookup in this table.
#[derive(Debug, Clone)]
pub(crate) struct QuarterRoots {
    modulus: i64,
    table: Vec<Complex64>,
}

impl QuarterRoots {
    pub(crate) fn new(n: usize) -> Self {
        let modulus = 4 * n as i64;
        let table = (0..modulus)
            .map(|e| {
                let t = -2.0 * PI * e as f64 / modulus as f64;
                Complex64::new(t.cos(), t.sin())
            })
            .collect();
        QuarterRoots { modulus, table }
    }

    pub(crate) fn get(&self, quarter_exponent: i64) -> Complex64 {
        self.table[quarter_exponent.rem_euclid(self.modulus) as usize]
    }

    /// Four times the DFT exponent for entry `(row, col)`.
    pub(crate) fn exponent(variant: TransformVariant, n: usize, row: usize, col: usize) -> i64 {
        let (n, row, col) = (n as i64, row as i64, col as i64);
        match variant {
            TransformVariant::Standard => 4 * row * col,
            TransformVariant::Centered => (2 * row - (n - 1)) * (2 * col - (n - 1)),
        }
    }
}

/// The unitary `N x N` DFT matrix of the given variant.
pub fn dft_matrix(n: usize, variant: TransformVariant) -> ComplexMatrix {
    assert!(n >= 1, "n must be positive");
    let roots = QuarterRoots::new(n);
    let scale = 1.0 / (n as f64).sqrt();
    ComplexMatrix::from_fn(n, n, |r, c| roots.get(QuarterRoots::exponent(variant, n, r, c)) * scale)
}

/// The reversal operator `P = W^2` as a 0/1 matrix.
pub fn reversal_matrix(n: usize, variant: TransformVariant) -> ComplexMatrix {
    assert!(n >= 1, "n must be positive");
    let mut p = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        p[(i, variant.mirror(n, i))] = Complex64::new(1.0, 0.0);
    }
    p
}

/// Real-valued copy of [`reversal_matrix`].
pub fn reversal_matrix_real(n: usize, variant: TransformVariant) -> RealMatrix {
    let mut p = RealMatrix::zeros(n, n);
    for i in 0..n {
        p[(i, variant.mirror(n, i))] = 1.0;
    }
    p
}

/// Apply the reversal operator to a vector.
pub fn reverse<T: Copy>(x: &[T], variant: TransformVariant) -> Vec<T> {
    let n = x.len();
    (0..n).map(|i| x[variant.mirror(n, i)]).collect()
}

/// Applies the unitary DFT of the given variant to `x` through the FFT engine.
#[derive(Debug, Clone)]
pub struct DftOperator {
    variant: TransformVariant,
    plan: FftPlan,
    pre: Vec<Complex64>,
    post: Vec<Complex64>,
}

impl DftOperator {
    pub fn new(n: usize, variant: TransformVariant) -> Self {
        assert!(n >= 1, "n must be positive");
        let scale = 1.0 / (n as f64).sqrt();
        let (pre, post) = match variant {
            TransformVariant::Standard => (vec![Complex64::new(1.0, 0.0); n], vec![Complex64::new(scale, 0.0); n]),
            TransformVariant::Centered => {
                // 4(n-c)(k-c) = 4nk - 2(N-1)k - 2(N-1)n + (N-1)^2 with c = (N-1)/2
                let roots = QuarterRoots::new(n);
                let m = n as i64 - 1;
                let pre = (0..n as i64).map(|k| roots.get(-2 * m * k)).collect();
                let post = (0..n as i64).map(|r| roots.get(-2 * m * r + m * m) * scale).collect();
                (pre, post)
            }
        };
        DftOperator { variant, plan: FftPlan::new(n), pre, post }
    }

    pub fn variant(&self) -> TransformVariant {
        self.variant
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut buf: Vec<Complex64> = x.iter().zip(&self.pre).map(|(a, b)| a * b).collect();
        self.plan.forward(&mut buf);
        for (z, p) in buf.iter_mut().zip(&self.post) {
            *z *= p;
        }
        buf
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const S: TransformVariant = TransformVariant::Standard;
    const C: TransformVariant = TransformVariant::Centered;

    #[test]
    fn trivial_sizes() {
        let w1 = dft_matrix(1, S);
        assert_eq!(w1[(0, 0)], Complex64::new(1.0, 0.0));

        let w2 = dft_matrix(2, S);
        let h = 1.0 / 2f64.sqrt();
        let expect = [[h, h], [h, -h]];
        for r in 0..2 {
            for c in 0..2 {
                assert!((w2[(r, c)] - Complex64::new(expect[r][c], 0.0)).norm() < 1e-15);
            }
        }

        let w2c = dft_matrix(2, C);
        for r in 0..2 {
            for c in 0..2 {
                assert!((w2c[(r, c)].norm() - h).abs() < 1e-15);
            }
        }
        assert!((w2c[(0, 0)] - Complex64::new(0.5, -0.5)).norm() < 1e-15);
    }

    #[test]
    fn unitary_up_to_64() {
        for n in 1..=64 {
            for v in TransformVariant::ALL {
                let w = dft_matrix(n, v);
                let err = w.matmul(&w.conj_transpose()).max_abs_diff(&ComplexMatrix::identity(n));
                assert!(err < 1e-12, "n={n} {v} err={err}");
            }
        }
    }

    #[test]
    fn odd_centered_is_circular_shift_of_standard() {
        for n in [3usize, 5, 7, 9, 15] {
            let ws = dft_matrix(n, S);
            let wc = dft_matrix(n, C);
            let h = (n - 1) / 2;
            for r in 0..n {
                for c in 0..n {
                    let shifted = ws[((r + n - h) % n, (c + n - h) % n)];
                    assert!((wc[(r, c)] - shifted).norm() < 1e-12, "n={n}");
                }
            }
        }
    }

    #[test]
    fn reversal_examples() {
        let p3 = reversal_matrix(3, C);
        for r in 0..3 {
            for c in 0..3 {
                let expect = if r + c == 2 { 1.0 } else { 0.0 };
                assert_eq!(p3[(r, c)].re, expect);
            }
        }
        let p4 = reversal_matrix(4, S);
        let ones: Vec<(usize, usize)> =
            (0..4).flat_map(|r| (0..4).map(move |c| (r, c))).filter(|&(r, c)| p4[(r, c)].re == 1.0).collect();
        assert_eq!(ones, vec![(0, 0), (1, 3), (2, 2), (3, 1)]);
    }

    #[test]
    fn reversal_is_involution_and_dft_square() {
        for n in [3usize, 4, 8] {
            for v in TransformVariant::ALL {
                let p = reversal_matrix(n, v);
                assert_eq!(p.matmul(&p), ComplexMatrix::identity(n));
                let w = dft_matrix(n, v);
                assert!(w.matmul(&w).max_abs_diff(&p) < 1e-12);
            }
        }
    }

    #[test]
    fn operator_matches_matrix() {
        for n in [4usize, 7, 8, 12, 16] {
            for v in TransformVariant::ALL {
                let x: Vec<Complex64> =
                    (0..n).map(|i| Complex64::new((i as f64 * 0.7).sin(), (i as f64 * 1.3).cos())).collect();
                let direct = dft_matrix(n, v).mul_vec(&x);
                let fast = DftOperator::new(n, v).apply(&x);
                let err = super::super::types::max_abs_diff(&direct, &fast);
                assert!(err < 1e-12, "n={n} {v} err={err}");
            }
        }
    }
}
