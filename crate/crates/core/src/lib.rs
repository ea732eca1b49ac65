//! Discrete fractional Fourier transforms built from real DFT eigenbases, and the multiangle
//! transform that evaluates every order on the grid `4r/R` with one FFT per row (or per
//! mirrored pair of rows).
//!
//! ```
//! use mafrft::{build_eigenbasis, ma_frft_half, ComplexSignal, TransformVariant};
//!
//! let basis = build_eigenbasis(8, TransformVariant::Standard).unwrap();
//! let x = ComplexSignal::delta(8, 0).unwrap();
//! let result = ma_frft_half(&basis, &x, false).unwrap();
//! assert_eq!(result.orders[2], 1.0);
//! ```

pub mod cli;
pub mod eigenbasis;
pub mod error;
pub mod foundation;
pub mod frft;
pub mod io;
pub mod multiangle;
pub mod signal;
pub mod symeig;

pub use eigenbasis::{
    build_eigenbasis, commuting_matrix, expected_multiplicities, index_vector, validate_eigenbasis, EigenBasis,
    ValidationReport,
};
pub use error::{Error, Result};
pub use foundation::{
    dft_matrix, fft_unnormalized, ifft_unnormalized, reversal_matrix, ComplexMatrix, ComplexSignal, OpCounter,
    RealMatrix, TransformVariant,
};
pub use frft::{frft_apply, frft_matrix, FracOrder};
pub use multiangle::{
    change_of_basis, change_of_basis_fast, concentration_profile, ma_frft, ma_frft_full, ma_frft_half, ma_frft_naive,
    z_matrix, MultianglePath, MultiangleResult, ZMatrix,
};
