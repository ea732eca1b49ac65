//! C ABI for the multiangle fractional Fourier transform.
//!
//! Complex data crosses the boundary as interleaved `double` pairs (`re, im`). Every function
//! returns a [`MafrftStatus`]; on failure a message is available from [`mafrft_last_error`]
//! until the next call on the same thread. Handles are opaque and owned by the caller, who
//! releases them with the matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mafrft::multiangle::MultianglePath;
use mafrft::{
    build_eigenbasis, frft_apply, ma_frft, validate_eigenbasis, ComplexSignal, EigenBasis, Error, FracOrder,
    MultiangleResult, OpCounter, TransformVariant,
};
use num_complex::Complex64;

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MafrftStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    LengthMismatch = 3,
    NonFinite = 4,
    OddWithoutPad = 5,
    NumericalFailure = 6,
    Panic = 7,
}

/// `0` = standard DFT, `1` = centered DFT.
pub const MAFRFT_VARIANT_STANDARD: i32 = 0;
pub const MAFRFT_VARIANT_CENTERED: i32 = 1;

/// `0` = per-order oracle, `1` = N row FFTs, `2` = mirror-halved row FFTs.
pub const MAFRFT_PATH_NAIVE: i32 = 0;
pub const MAFRFT_PATH_FULL: i32 = 1;
pub const MAFRFT_PATH_HALF: i32 = 2;

/// Opaque eigenbasis handle.
pub struct MafrftBasis(EigenBasis);

/// Opaque multiangle result handle (`rows` samples by `cols` orders).
pub struct MafrftResult {
    result: MultiangleResult,
    fft_count: usize,
}

/// Eigenbasis validation summary.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct MafrftReport {
    pub orthonormality_residual: f64,
    pub eigen_residual: f64,
    pub symmetry_residual: f64,
    /// Counts for eigenvalues 1, -j, -1, j.
    pub multiplicities: [usize; 4],
    pub expected: [usize; 4],
    pub pass: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn status_of(err: &Error) -> MafrftStatus {
    match err {
        Error::LengthMismatch { .. } => MafrftStatus::LengthMismatch,
        Error::NonFinite { .. } | Error::InvalidOrder => MafrftStatus::NonFinite,
        Error::OddWithoutPad { .. } => MafrftStatus::OddWithoutPad,
        Error::CommutationFailure { .. }
        | Error::DegenerateBasis { .. }
        | Error::EigenMismatch { .. }
        | Error::NoConvergence { .. } => MafrftStatus::NumericalFailure,
        _ => MafrftStatus::InvalidArgument,
    }
}

struct Failure(MafrftStatus, String);

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure(status_of(&err), err.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(MafrftStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, translating errors and panics into a status plus the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> MafrftStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MafrftStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            MafrftStatus::Panic
        }
    }
}

fn variant_of(v: i32) -> Result<TransformVariant, Failure> {
    match v {
        MAFRFT_VARIANT_STANDARD => Ok(TransformVariant::Standard),
        MAFRFT_VARIANT_CENTERED => Ok(TransformVariant::Centered),
        other => Err(Failure(MafrftStatus::InvalidArgument, format!("unknown variant {other}"))),
    }
}

fn path_of(p: i32) -> Result<MultianglePath, Failure> {
    match p {
        MAFRFT_PATH_NAIVE => Ok(MultianglePath::Naive),
        MAFRFT_PATH_FULL => Ok(MultianglePath::Full),
        MAFRFT_PATH_HALF => Ok(MultianglePath::Half),
        other => Err(Failure(MafrftStatus::InvalidArgument, format!("unknown path {other}"))),
    }
}

/// Reads `len` interleaved complex samples.
unsafe fn read_signal(data: *const f64, len: usize) -> Result<ComplexSignal, Failure> {
    if data.is_null() {
        return Err(null("input"));
    }
    let raw = std::slice::from_raw_parts(data, 2 * len);
    Ok(ComplexSignal::new(raw.chunks_exact(2).map(|p| Complex64::new(p[0], p[1])).collect())?)
}

unsafe fn write_interleaved(values: impl Iterator<Item = Complex64>, out: *mut f64, len: usize) {
    let out = std::slice::from_raw_parts_mut(out, 2 * len);
    for (slot, z) in out.chunks_exact_mut(2).zip(values) {
        slot[0] = z.re;
        slot[1] = z.im;
    }
}

/// Last error message on this thread, or null. Valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn mafrft_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds the eigenbasis of size `n` (at least 4).
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn mafrft_basis_new(n: usize, variant: i32, out: *mut *mut MafrftBasis) -> MafrftStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let basis = build_eigenbasis(n, variant_of(variant)?)?;
        *out = Box::into_raw(Box::new(MafrftBasis(basis)));
        Ok(())
    })
}

/// Releases a basis. Null is ignored.
///
/// # Safety
/// `basis` must come from [`mafrft_basis_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mafrft_basis_free(basis: *mut MafrftBasis) {
    if !basis.is_null() {
        drop(Box::from_raw(basis));
    }
}

/// Signal length of the basis, or 0 for null.
///
/// # Safety
/// `basis` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mafrft_basis_len(basis: *const MafrftBasis) -> usize {
    basis.as_ref().map_or(0, |b| b.0.n())
}

/// Writes the validation summary of `basis` to `report`.
///
/// # Safety
/// `basis` must be a live handle and `report` writable.
#[no_mangle]
pub unsafe extern "C" fn mafrft_basis_validate(basis: *const MafrftBasis, report: *mut MafrftReport) -> MafrftStatus {
    guard(|| {
        let basis = basis.as_ref().ok_or_else(|| null("basis"))?;
        if report.is_null() {
            return Err(null("report"));
        }
        let r = validate_eigenbasis(&basis.0);
        *report = MafrftReport {
            orthonormality_residual: r.orthonormality_residual,
            eigen_residual: r.eigen_residual,
            symmetry_residual: r.symmetry_residual,
            multiplicities: r.multiplicities,
            expected: r.expected,
            pass: r.pass,
        };
        Ok(())
    })
}

/// Fractional transform of order `a` applied to `len` interleaved samples.
///
/// # Safety
/// `input` and `output` must each hold `2 * len` doubles; they may alias.
#[no_mangle]
pub unsafe extern "C" fn mafrft_frft_apply(
    basis: *const MafrftBasis,
    a: f64,
    input: *const f64,
    output: *mut f64,
    len: usize,
) -> MafrftStatus {
    guard(|| {
        let basis = basis.as_ref().ok_or_else(|| null("basis"))?;
        if output.is_null() {
            return Err(null("output"));
        }
        let x = read_signal(input, len)?;
        let y = frft_apply(&basis.0, FracOrder::new(a)?, &x)?;
        write_interleaved(y.into_vec().into_iter(), output, len);
        Ok(())
    })
}

/// Transform at every order `4r/R` at once. `pad_odd` lets the half path handle odd lengths
/// with `R = len + 1`.
///
/// # Safety
/// `input` must hold `2 * len` doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mafrft_multiangle(
    basis: *const MafrftBasis,
    input: *const f64,
    len: usize,
    path: i32,
    pad_odd: bool,
    out: *mut *mut MafrftResult,
) -> MafrftStatus {
    guard(|| {
        let basis = basis.as_ref().ok_or_else(|| null("basis"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let x = read_signal(input, len)?;
        let counter = OpCounter::new();
        let result = ma_frft(&basis.0, &x, path_of(path)?, pad_odd, &counter)?;
        *out = Box::into_raw(Box::new(MafrftResult { result, fft_count: counter.get() }));
        Ok(())
    })
}

/// Releases a result. Null is ignored.
///
/// # Safety
/// `result` must come from [`mafrft_multiangle`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mafrft_result_free(result: *mut MafrftResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// Number of samples (rows), or 0 for null.
///
/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mafrft_result_rows(result: *const MafrftResult) -> usize {
    result.as_ref().map_or(0, |r| r.result.x.rows())
}

/// Number of orders (columns), or 0 for null.
///
/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mafrft_result_cols(result: *const MafrftResult) -> usize {
    result.as_ref().map_or(0, |r| r.result.x.cols())
}

/// FFT invocations used to compute the result (0 for the naive path or null).
///
/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mafrft_result_fft_count(result: *const MafrftResult) -> usize {
    result.as_ref().map_or(0, |r| r.fft_count)
}

/// Copies the row-major `rows x cols` matrix as interleaved pairs into `out` (capacity in
/// complex values).
///
/// # Safety
/// `out` must hold `2 * capacity` doubles.
#[no_mangle]
pub unsafe extern "C" fn mafrft_result_copy(result: *const MafrftResult, out: *mut f64, capacity: usize) -> MafrftStatus {
    guard(|| {
        let r = result.as_ref().ok_or_else(|| null("result"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let data = r.result.x.as_slice();
        if capacity < data.len() {
            return Err(Failure(
                MafrftStatus::LengthMismatch,
                format!("buffer holds {capacity} values, result has {}", data.len()),
            ));
        }
        write_interleaved(data.iter().copied(), out, data.len());
        Ok(())
    })
}

/// Copies the `cols` fractional orders into `out`.
///
/// # Safety
/// `out` must hold `capacity` doubles.
#[no_mangle]
pub unsafe extern "C" fn mafrft_result_orders(
    result: *const MafrftResult,
    out: *mut f64,
    capacity: usize,
) -> MafrftStatus {
    guard(|| {
        let r = result.as_ref().ok_or_else(|| null("result"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let orders = &r.result.orders;
        if capacity < orders.len() {
            return Err(Failure(
                MafrftStatus::LengthMismatch,
                format!("buffer holds {capacity} orders, result has {}", orders.len()),
            ));
        }
        std::slice::from_raw_parts_mut(out, orders.len()).copy_from_slice(orders);
        Ok(())
    })
}
