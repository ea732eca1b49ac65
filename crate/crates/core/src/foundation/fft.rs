//! Unnormalized FFT engine.
//!
//! Forward transforms compute `y[r] = sum_k v[k] exp(-j 2 pi r k / N)`, i.e. `sqrt(N)` times the
//! unitary DFT matrix. Power-of-two lengths use an iterative radix-2 decimation-in-time
//! transform; every other length falls back to a direct O(N²) sum over a table of roots.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::types::{ComplexSignal, OpCounter};

/// Precomputed transform for one length.
#[derive(Debug, Clone)]
pub struct FftPlan {
    len: usize,
    kind: PlanKind,
}

#[derive(Debug, Clone)]
enum PlanKind {
    Radix2 { twiddles: Vec<Complex64>, bitrev: Vec<usize> },
    Direct { roots: Vec<Complex64> },
}

impl FftPlan {
    pub fn new(len: usize) -> Self {
        assert!(len >= 1, "FFT length must be positive");
        let kind = if len.is_power_of_two() {
            let bits = len.trailing_zeros();
            let bitrev = (0..len)
                .map(|i| if bits == 0 { 0 } else { i.reverse_bits() >> (usize::BITS - bits) })
                .collect();
            let twiddles = (0..len / 2).map(|k| root(k, len)).collect();
            PlanKind::Radix2 { twiddles, bitrev }
        } else {
            PlanKind::Direct { roots: (0..len).map(|k| root(k, len)).collect() }
        };
        FftPlan { len, kind }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_radix2(&self) -> bool {
        matches!(self.kind, PlanKind::Radix2 { .. })
    }

    /// Unnormalized forward transform in place.
    pub fn forward(&self, buf: &mut [Complex64]) {
        assert_eq!(buf.len(), self.len, "buffer length does not match plan");
        match &self.kind {
            PlanKind::Radix2 { twiddles, bitrev } => radix2(buf, twiddles, bitrev),
            PlanKind::Direct { roots } => direct(buf, roots),
        }
    }

    /// Forward transform that also records one invocation on `counter`.
    pub fn forward_counted(&self, buf: &mut [Complex64], counter: &OpCounter) {
        counter.add(1);
        self.forward(buf);
    }

    /// Unnormalized inverse transform (positive exponent) in place.
    pub fn inverse(&self, buf: &mut [Complex64]) {
        for z in buf.iter_mut() {
            *z = z.conj();
        }
        self.forward(buf);
        for z in buf.iter_mut() {
            *z = z.conj();
        }
    }
}

// exp(-j 2 pi k / n)
fn root(k: usize, n: usize) -> Complex64 {
    let theta = -2.0 * PI * (k as f64) / (n as f64);
    Complex64::new(theta.cos(), theta.sin())
}

fn radix2(buf: &mut [Complex64], twiddles: &[Complex64], bitrev: &[usize]) {
    let n = buf.len();
    for (i, &j) in bitrev.iter().enumerate() {
        if i < j {
            buf.swap(i, j);
        }
    }
    let mut size = 2;
    while size <= n {
        let half = size / 2;
        let stride = n / size;
        for start in (0..n).step_by(size) {
            for k in 0..half {
                let w = twiddles[k * stride];
                let a = buf[start + k];
                let b = buf[start + k + half] * w;
                buf[start + k] = a + b;
                buf[start + k + half] = a - b;
            }
        }
        size <<= 1;
    }
}

fn direct(buf: &mut [Complex64], roots: &[Complex64]) {
    let n = buf.len();
    let input = buf.to_vec();
    for (r, out) in buf.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut idx = 0usize;
        for x in &input {
            acc += x * roots[idx];
            idx += r;
            if idx >= n {
                idx -= n;
            }
        }
        *out = acc;
    }
}

/// Unnormalized forward DFT of a signal.
pub fn fft_unnormalized(v: &ComplexSignal) -> ComplexSignal {
    let mut buf = v.as_slice().to_vec();
    FftPlan::new(buf.len()).forward(&mut buf);
    ComplexSignal::from_vec_unchecked(buf)
}

/// Unnormalized inverse DFT; `ifft_unnormalized(fft_unnormalized(v)) == N * v`.
pub fn ifft_unnormalized(v: &ComplexSignal) -> ComplexSignal {
    let mut buf = v.as_slice().to_vec();
    FftPlan::new(buf.len()).inverse(&mut buf);
    ComplexSignal::from_vec_unchecked(buf)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn naive_dft(x: &[Complex64], sign: f64) -> Vec<Complex64> {
        let n = x.len();
        (0..n)
            .map(|r| {
                x.iter()
                    .enumerate()
                    .map(|(k, v)| {
                        let t = sign * 2.0 * PI * ((r * k) % n) as f64 / n as f64;
                        v * Complex64::new(t.cos(), t.sin())
                    })
                    .sum()
            })
            .collect()
    }

    fn pseudo_random(n: usize, seed: u64) -> Vec<Complex64> {
        let mut s = seed;
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        (0..n).map(|_| c(next(), next())).collect()
    }

    #[test]
    fn constant_and_delta() {
        let ones = ComplexSignal::new(vec![c(1.0, 0.0); 4]).unwrap();
        let y = fft_unnormalized(&ones);
        assert_eq!(y.as_slice(), &[c(4.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);

        let delta = ComplexSignal::delta(4, 0).unwrap();
        let y = fft_unnormalized(&delta);
        assert_eq!(y.as_slice(), &[c(1.0, 0.0); 4]);
    }

    #[test]
    fn inverse_of_scaled_delta() {
        let x = ComplexSignal::new(vec![c(4.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(ifft_unnormalized(&x).as_slice(), &[c(4.0, 0.0); 4]);
        let z = ComplexSignal::zeros(6).unwrap();
        assert!(ifft_unnormalized(&z).is_zero());
    }

    #[test]
    fn length_one() {
        let x = ComplexSignal::new(vec![c(2.5, -1.0)]).unwrap();
        assert_eq!(fft_unnormalized(&x).as_slice(), &[c(2.5, -1.0)]);
    }

    #[test]
    fn matches_naive_for_all_small_lengths() {
        for n in 1..=40 {
            let x = pseudo_random(n, n as u64);
            let mut y = x.clone();
            FftPlan::new(n).forward(&mut y);
            let expect = naive_dft(&x, -1.0);
            let err = super::super::types::max_abs_diff(&y, &expect);
            assert!(err < 1e-12, "n={n} err={err}");
        }
    }

    #[test]
    fn round_trip_scales_by_n() {
        let x = ComplexSignal::new(pseudo_random(10, 7)).unwrap();
        let back = ifft_unnormalized(&fft_unnormalized(&x));
        let scaled: Vec<_> = x.as_slice().iter().map(|z| z * 10.0).collect();
        assert!(super::super::types::max_abs_diff(back.as_slice(), &scaled) < 1e-12);
    }

    #[test]
    fn counter_records_invocations() {
        let plan = FftPlan::new(8);
        let counter = OpCounter::new();
        let mut buf = vec![c(1.0, 0.0); 8];
        plan.forward_counted(&mut buf, &counter);
        plan.forward_counted(&mut buf, &counter);
        assert_eq!(counter.get(), 2);
        assert!(plan.is_radix2());
        assert!(!FftPlan::new(12).is_radix2());
    }
}
