//! C ABI for `wehrl-core`.
//!
//! Groups and frames are opaque handles created by `wehrl_*_parse` /
//! `wehrl_frame_*` and released with the matching `*_free`. Every fallible
//! call returns a [`WehrlStatus`]; on failure the message is available from
//! [`wehrl_last_error_message`] on the same thread.
//!
//! Complex vectors cross the boundary as interleaved `re, im` doubles, so a
//! state on `|G|` points is `2·|G|` doubles. Density matrices are row-major.
//!
//! # Safety
//!
//! Pointer arguments must be null or valid for the stated length for the
//! duration of the call. Null inputs are reported as
//! `WEHRL_STATUS_NULL_POINTER` rather than dereferenced.
#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use num_complex::Complex64;
use wehrl_core::husimi::{self, husimi, husimi_fast, von_neumann_entropy, wehrl_entropy};
use wehrl_core::minimizer::minimize;
use wehrl_core::{
    CoherentFrame, DensityMatrix, GroupDescriptor, MinimizerConfig, StateVector, WehrlError,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WehrlStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    Dimension = 3,
    InvalidState = 4,
    NotVacuum = 5,
    InvalidArgument = 6,
    Panic = 7,
}

/// Opaque group handle.
pub struct WehrlGroup(GroupDescriptor);

/// Opaque coherent frame handle.
pub struct WehrlFrame(CoherentFrame);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &WehrlError) -> WehrlStatus {
    match err {
        WehrlError::Parse(_)
        | WehrlError::DescriptorMismatch(_)
        | WehrlError::Json(_)
        | WehrlError::Io(_) => WehrlStatus::Parse,
        WehrlError::DimensionMismatch { .. } | WehrlError::DenseLimitExceeded { .. } => {
            WehrlStatus::Dimension
        }
        WehrlError::NotNormalized(_)
        | WehrlError::NotHermitian(_)
        | WehrlError::NotPositive(_)
        | WehrlError::BadTrace(_) => WehrlStatus::InvalidState,
        WehrlError::NotVacuumFrame(_) => WehrlStatus::NotVacuum,
        WehrlError::InvalidConfig(_) => WehrlStatus::InvalidArgument,
    }
}

struct Failure(WehrlStatus, String);

impl From<WehrlError> for Failure {
    fn from(err: WehrlError) -> Self {
        Failure(status_of(&err), err.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(WehrlStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> WehrlStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            WehrlStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_error(format!("internal panic: {message}"));
            WehrlStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(WehrlStatus::Parse, format!("{what} is not valid UTF-8")))
}

unsafe fn complex_arg(p: *const f64, len: usize, what: &str) -> Result<Vec<Complex64>, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts(p, 2 * len)
        .chunks_exact(2)
        .map(|c| Complex64::new(c[0], c[1]))
        .collect())
}

unsafe fn frame_arg<'a>(frame: *const WehrlFrame) -> Result<&'a CoherentFrame, Failure> {
    frame.as_ref().map(|f| &f.0).ok_or_else(|| null("frame"))
}

fn check_dim(expected: usize, found: usize) -> Result<(), Failure> {
    if expected == found {
        Ok(())
    } else {
        Err(WehrlError::DimensionMismatch { expected, found }.into())
    }
}

unsafe fn density_arg(p: *const f64, dim: usize) -> Result<DensityMatrix, Failure> {
    let entries = complex_arg(p, dim * dim, "rho")?;
    Ok(DensityMatrix::from_row_slice(dim, &entries)?)
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

/// Parses a group such as `"Z4xZ2"`. On success `*out` owns a new handle.
#[no_mangle]
pub unsafe extern "C" fn wehrl_group_parse(
    spec: *const c_char,
    out: *mut *mut WehrlGroup,
) -> WehrlStatus {
    guard(|| {
        let spec = str_arg(spec, "spec")?;
        let group = GroupDescriptor::parse(spec)?;
        write_out(out, Box::into_raw(Box::new(WehrlGroup(group))))
    })
}

/// `|G|`, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn wehrl_group_order(group: *const WehrlGroup) -> usize {
    group.as_ref().map_or(0, |g| g.0.order())
}

#[no_mangle]
pub unsafe extern "C" fn wehrl_group_free(group: *mut WehrlGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// The vacuum frame of the subgroup generated by `generators` (e.g.
/// `"2,0;0,1"`; empty for the trivial subgroup, null for `H = G`).
#[no_mangle]
pub unsafe extern "C" fn wehrl_frame_vacuum(
    group: *const WehrlGroup,
    generators: *const c_char,
    out: *mut *mut WehrlFrame,
) -> WehrlStatus {
    guard(|| {
        let group = &group.as_ref().ok_or_else(|| null("group"))?.0;
        let h = if generators.is_null() {
            group.whole()
        } else {
            group.subgroup_closure(group.parse_generators(str_arg(generators, "generators")?)?)?
        };
        write_out(
            out,
            Box::into_raw(Box::new(WehrlFrame(CoherentFrame::vacuum(&h)))),
        )
    })
}

/// A frame with an arbitrary unit fiducial of `dim = |G|` complex entries.
#[no_mangle]
pub unsafe extern "C" fn wehrl_frame_from_fiducial(
    group: *const WehrlGroup,
    fiducial: *const f64,
    dim: usize,
    out: *mut *mut WehrlFrame,
) -> WehrlStatus {
    guard(|| {
        let group = &group.as_ref().ok_or_else(|| null("group"))?.0;
        check_dim(group.order(), dim)?;
        let fiducial = StateVector::new(complex_arg(fiducial, dim, "fiducial")?)?;
        let frame = CoherentFrame::new(group, fiducial)?;
        write_out(out, Box::into_raw(Box::new(WehrlFrame(frame))))
    })
}

/// Hilbert space dimension `|G|`, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn wehrl_frame_dim(frame: *const WehrlFrame) -> usize {
    frame.as_ref().map_or(0, |f| f.0.dim())
}

#[no_mangle]
pub unsafe extern "C" fn wehrl_frame_free(frame: *mut WehrlFrame) {
    if !frame.is_null() {
        drop(Box::from_raw(frame));
    }
}

/// Writes the Husimi function of a pure state into `out`, which must hold
/// `dim²` doubles, indexed `g_index·|G| + λ_index`.
#[no_mangle]
pub unsafe extern "C" fn wehrl_husimi_pure(
    frame: *const WehrlFrame,
    psi: *const f64,
    dim: usize,
    out: *mut f64,
    out_len: usize,
) -> WehrlStatus {
    guard(|| {
        let frame = frame_arg(frame)?;
        check_dim(frame.dim(), dim)?;
        check_dim(dim * dim, out_len)?;
        let psi = StateVector::new(complex_arg(psi, dim, "psi")?)?;
        let table = husimi_fast(frame, &psi)?;
        if out.is_null() {
            return Err(null("out"));
        }
        slice::from_raw_parts_mut(out, out_len).copy_from_slice(table.values());
        Ok(())
    })
}

/// Wehrl entropy (nats) of a pure state.
#[no_mangle]
pub unsafe extern "C" fn wehrl_entropy_pure(
    frame: *const WehrlFrame,
    psi: *const f64,
    dim: usize,
    out: *mut f64,
) -> WehrlStatus {
    guard(|| {
        let frame = frame_arg(frame)?;
        check_dim(frame.dim(), dim)?;
        let psi = StateVector::new(complex_arg(psi, dim, "psi")?)?;
        write_out(out, husimi::wehrl_entropy_pure(frame, &psi)?)
    })
}

/// Wehrl entropy (nats) of a density matrix given as `dim²` row-major
/// complex entries.
#[no_mangle]
pub unsafe extern "C" fn wehrl_entropy_density(
    frame: *const WehrlFrame,
    rho: *const f64,
    dim: usize,
    out: *mut f64,
) -> WehrlStatus {
    guard(|| {
        let frame = frame_arg(frame)?;
        check_dim(frame.dim(), dim)?;
        let rho = density_arg(rho, dim)?;
        write_out(out, wehrl_entropy(&husimi(frame, &rho)?))
    })
}

/// Von Neumann entropy (nats) of a density matrix.
#[no_mangle]
pub unsafe extern "C" fn wehrl_von_neumann_entropy(
    rho: *const f64,
    dim: usize,
    out: *mut f64,
) -> WehrlStatus {
    guard(|| {
        let rho = density_arg(rho, dim)?;
        write_out(out, von_neumann_entropy(&rho))
    })
}

/// Minimizes the Wehrl entropy over pure states with the default settings
/// and the given seed. `best_state` may be null; otherwise it receives
/// `dim` interleaved complex amplitudes.
#[no_mangle]
pub unsafe extern "C" fn wehrl_minimize(
    frame: *const WehrlFrame,
    seed: u64,
    best_entropy: *mut f64,
    overlap: *mut f64,
    best_state: *mut f64,
    dim: usize,
) -> WehrlStatus {
    guard(|| {
        let frame = frame_arg(frame)?;
        check_dim(frame.dim(), dim)?;
        let result = minimize(frame, &MinimizerConfig::with_seed(seed))?;
        write_out(best_entropy, result.best_entropy)?;
        write_out(overlap, result.overlap)?;
        if !best_state.is_null() {
            let out = slice::from_raw_parts_mut(best_state, 2 * dim);
            for (pair, a) in out.chunks_exact_mut(2).zip(result.best_state.amplitudes()) {
                pair[0] = a.re;
                pair[1] = a.im;
            }
        }
        Ok(())
    })
}

/// The message of the last failed call on this thread, or null. The caller
/// owns the returned string and releases it with [`wehrl_string_free`].
#[no_mangle]
pub extern "C" fn wehrl_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map_or(ptr::null_mut(), |s| s.clone().into_raw())
    })
}

#[no_mangle]
pub unsafe extern "C" fn wehrl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
