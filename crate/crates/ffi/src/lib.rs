//! C interface to `twistor-core`.
//!
//! Structures cross the boundary as opaque `TwistorAcs` handles created by
//! the `twistor_acs_*` constructors and released with [`twistor_acs_free`].
//! Every fallible call returns a [`TwistorStatus`]; the detail text of the
//! most recent failure on the calling thread is available through
//! [`twistor_last_error`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use twistor_core::acs::{ank_reference, hopf, matrix_from_row_major, random_acs, validate};
use twistor_core::cp3::{acs_to_cp3, cp3_to_acs};
use twistor_core::nearly_kaehler::is_ank;
use twistor_core::nijenhuis::{is_integrable, max_norm, nijenhuis_norm};
use twistor_core::search::{maximize, minimize, SearchError, SearchReport};
use twistor_core::{Acs, Cp3Point, TwistorError};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwistorStatus {
    Ok = 0,
    NullPointer = 1,
    /// The matrix is not an orthogonal complex structure of the reference
    /// orientation.
    NotInZ = 2,
    /// Zero homogeneous coordinates or an otherwise unusable argument.
    InvalidArgument = 3,
    /// The search budget ran out; the best iterate is still returned.
    NoConvergence = 4,
    Internal = 5,
}

/// Opaque handle to a validated structure.
pub struct TwistorAcs {
    acs: Acs,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(text: impl Into<String>) {
    let text = CString::new(text.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn status_of(e: &TwistorError) -> TwistorStatus {
    match e {
        TwistorError::NotComplex { .. }
        | TwistorError::NotOrthogonal { .. }
        | TwistorError::WrongOrientation { .. }
        | TwistorError::NotInZ(_) => TwistorStatus::NotInZ,
        _ => TwistorStatus::InvalidArgument,
    }
}

fn guard(body: impl FnOnce() -> Result<(), (TwistorStatus, String)>) -> TwistorStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            TwistorStatus::Ok
        }
        Ok(Err((status, text))) => {
            set_error(text);
            status
        }
        Err(_) => {
            set_error("internal panic");
            TwistorStatus::Internal
        }
    }
}

fn null() -> (TwistorStatus, String) {
    (TwistorStatus::NullPointer, "null pointer argument".into())
}

fn core_error(e: TwistorError) -> (TwistorStatus, String) {
    (status_of(&e), e.to_string())
}

/// Shared view of a handle.
///
/// # Safety
/// `p` is null or a live handle from this library.
unsafe fn handle<'a>(p: *const TwistorAcs) -> Result<&'a Acs, (TwistorStatus, String)> {
    unsafe { p.as_ref() }.map(|h| &h.acs).ok_or_else(null)
}

/// # Safety
/// `out` is null or writable.
unsafe fn emit(out: *mut *mut TwistorAcs, acs: Acs) -> Result<(), (TwistorStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    unsafe { *out = Box::into_raw(Box::new(TwistorAcs { acs })) };
    Ok(())
}

/// Copies `values` into the caller's buffer of the same length.
///
/// # Safety
/// `out` is null or points to `values.len()` writable doubles.
unsafe fn write_doubles(out: *mut f64, values: &[f64]) -> Result<(), (TwistorStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    unsafe { ptr::copy_nonoverlapping(values.as_ptr(), out, values.len()) };
    Ok(())
}

/// Validates a row-major 6×6 vector-action matrix.
///
/// # Safety
/// `matrix` points to 36 readable doubles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn twistor_acs_from_matrix(matrix: *const f64, out: *mut *mut TwistorAcs) -> TwistorStatus {
    guard(|| {
        if matrix.is_null() {
            return Err(null());
        }
        let entries: [f64; 36] = unsafe { ptr::read(matrix as *const [f64; 36]) };
        let acs = validate(&matrix_from_row_major(&entries)).map_err(core_error)?;
        unsafe { emit(out, acs) }
    })
}

/// Structure of the ℂP³ point with homogeneous coordinates given as four
/// (re, im) pairs.
///
/// # Safety
/// `coords` points to 8 readable doubles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn twistor_acs_from_cp3(coords: *const f64, out: *mut *mut TwistorAcs) -> TwistorStatus {
    guard(|| {
        if coords.is_null() {
            return Err(null());
        }
        let raw: [f64; 8] = unsafe { ptr::read(coords as *const [f64; 8]) };
        let z = std::array::from_fn(|k| num_complex::Complex64::new(raw[2 * k], raw[2 * k + 1]));
        let point = Cp3Point::new(z).map_err(core_error)?;
        let acs = cp3_to_acs(&point).map_err(core_error)?;
        unsafe { emit(out, acs) }
    })
}

/// Haar-distributed structure, reproducible from `seed`.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn twistor_acs_random(seed: u64, out: *mut *mut TwistorAcs) -> TwistorStatus {
    guard(|| unsafe { emit(out, random_acs(seed)) })
}

/// The integrable structure induced by the Hopf identification.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn twistor_acs_hopf(out: *mut *mut TwistorAcs) -> TwistorStatus {
    guard(|| unsafe { emit(out, hopf()) })
}

/// The factor-swapping structure that attains the maximal norm.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn twistor_acs_ank_reference(out: *mut *mut TwistorAcs) -> TwistorStatus {
    guard(|| unsafe { emit(out, ank_reference()) })
}

/// Copies a handle.
///
/// # Safety
/// `acs` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn twistor_acs_clone(acs: *const TwistorAcs, out: *mut *mut TwistorAcs) -> TwistorStatus {
    guard(|| {
        let acs = *unsafe { handle(acs) }?;
        unsafe { emit(out, acs) }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `acs` is null or a live handle not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn twistor_acs_free(acs: *mut TwistorAcs) {
    if !acs.is_null() {
        drop(unsafe { Box::from_raw(acs) });
    }
}

/// Row-major vector-action matrix into `out[36]`.
///
/// # Safety
/// `acs` is a live handle; `out` holds 36 doubles.
#[no_mangle]
pub unsafe extern "C" fn twistor_acs_matrix(acs: *const TwistorAcs, out: *mut f64) -> TwistorStatus {
    guard(|| {
        let m = unsafe { handle(acs) }?.to_row_major();
        unsafe { write_doubles(out, &m) }
    })
}

/// # Safety
/// `acs` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn twistor_acs_nijenhuis_norm(acs: *const TwistorAcs, out: *mut f64) -> TwistorStatus {
    guard(|| {
        let n = nijenhuis_norm(unsafe { handle(acs) }?);
        unsafe { write_doubles(out, &[n]) }
    })
}

/// # Safety
/// `acs` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn twistor_acs_is_integrable(acs: *const TwistorAcs, tol: f64, out: *mut bool) -> TwistorStatus {
    guard(|| {
        let flag = is_integrable(unsafe { handle(acs) }?, tol);
        let out = unsafe { out.as_mut() }.ok_or_else(null)?;
        *out = flag;
        Ok(())
    })
}

/// # Safety
/// `acs` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn twistor_acs_is_ank(acs: *const TwistorAcs, tol: f64, out: *mut bool) -> TwistorStatus {
    guard(|| {
        let flag = is_ank(unsafe { handle(acs) }?, tol);
        let out = unsafe { out.as_mut() }.ok_or_else(null)?;
        *out = flag;
        Ok(())
    })
}

/// Unit-normalized homogeneous coordinates as four (re, im) pairs in `out[8]`.
///
/// # Safety
/// `acs` is a live handle; `out` holds 8 doubles.
#[no_mangle]
pub unsafe extern "C" fn twistor_acs_to_cp3(acs: *const TwistorAcs, out: *mut f64) -> TwistorStatus {
    guard(|| {
        let point = acs_to_cp3(unsafe { handle(acs) }?).map_err(core_error)?;
        let flat: Vec<f64> = point.coords().iter().flat_map(|z| [z.re, z.im]).collect();
        unsafe { write_doubles(out, &flat) }
    })
}

/// Barycentric tetrahedron coordinates `|z_k|² / ‖z‖²` in `out[4]`.
///
/// # Safety
/// `acs` is a live handle; `out` holds 4 doubles.
#[no_mangle]
pub unsafe extern "C" fn twistor_acs_tetra(acs: *const TwistorAcs, out: *mut f64) -> TwistorStatus {
    guard(|| {
        let point = acs_to_cp3(unsafe { handle(acs) }?).map_err(core_error)?;
        unsafe { write_doubles(out, &point.tetra_coords().b) }
    })
}

/// The calibrated maximum of the Nijenhuis norm.
#[no_mangle]
pub extern "C" fn twistor_max_norm() -> f64 {
    max_norm()
}

/// Extremum search over `restarts` seeded starts. On `Ok` or
/// `NoConvergence` the best structure and its norm are written out.
///
/// # Safety
/// `best_value` and `best` are writable.
#[no_mangle]
pub unsafe extern "C" fn twistor_search(
    maximize_norm: bool,
    seed: u64,
    restarts: usize,
    max_iters: usize,
    best_value: *mut f64,
    best: *mut *mut TwistorAcs,
) -> TwistorStatus {
    let mut exhausted = false;
    let status = guard(|| {
        if best_value.is_null() || best.is_null() {
            return Err(null());
        }
        let result = if maximize_norm {
            maximize(seed, restarts, max_iters)
        } else {
            minimize(seed, restarts, max_iters)
        };
        let report: SearchReport = match result {
            Ok(r) => r,
            Err(SearchError::NoConvergence(r)) => {
                exhausted = true;
                *r
            }
            Err(e @ SearchError::NoRestarts) => return Err((TwistorStatus::InvalidArgument, e.to_string())),
        };
        unsafe { write_doubles(best_value, &[report.best_value]) }?;
        unsafe { emit(best, report.best_acs) }
    });
    if status == TwistorStatus::Ok && exhausted {
        set_error("no restart converged");
        TwistorStatus::NoConvergence
    } else {
        status
    }
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn twistor_status_message(status: TwistorStatus) -> *const c_char {
    let text: &'static [u8] = match status {
        TwistorStatus::Ok => b"ok\0",
        TwistorStatus::NullPointer => b"null pointer argument\0",
        TwistorStatus::NotInZ => b"not an orthogonal complex structure of the reference orientation\0",
        TwistorStatus::InvalidArgument => b"invalid argument\0",
        TwistorStatus::NoConvergence => b"search did not converge\0",
        TwistorStatus::Internal => b"internal error\0",
    };
    text.as_ptr().cast()
}

/// Detail text of the last failure on this thread, copied into `buf`
/// (truncated, always NUL-terminated when `len > 0`). Returns the full
/// length excluding the terminator.
///
/// # Safety
/// `buf` is null or holds `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn twistor_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let bytes = e.borrow();
        let bytes = bytes.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            unsafe {
                ptr::copy_nonoverlapping(bytes.as_ptr().cast(), buf, n);
                *buf.add(n) = 0;
            }
        }
        bytes.len()
    })
}
