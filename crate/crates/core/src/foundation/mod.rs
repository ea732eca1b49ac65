//! Complex containers, DFT and reversal matrices, and the FFT engine.

mod dft;
mod fft;
mod types;

pub use dft::{dft_matrix, reversal_matrix, reversal_matrix_real, reverse, DftOperator};
pub(crate) use dft::QuarterRoots;
pub use fft::{fft_unnormalized, ifft_unnormalized, FftPlan};
pub use types::{ComplexMatrix, ComplexSignal, OpCounter, RealMatrix, TransformVariant};
pub use types::max_abs_diff;
