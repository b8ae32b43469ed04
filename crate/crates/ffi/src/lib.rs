//! C ABI over sx-core.
//!
//! Complexes live behind the opaque `SxComplex` handle. Every fallible call
//! returns an `SxStatus`; on failure `sx_last_error` describes the cause for
//! the calling thread. Strings returned through `char **` are owned by the
//! caller and released with `sx_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sx_core::certify::{
    certify_k_shelled, certify_k_stacked_sphere, certify_k_stellated, collapse, is_k_stacked_ball,
    is_one_stacked_ball, SearchBudget, Verdict,
};
use sx_core::homology::{betti, CoefficientField};
use sx_core::io::{self as sxio, Format};
use sx_core::symmetry::automorphism_group;
use sx_core::{corpus, Complex, Error};

/// Opaque simplicial complex.
pub struct SxComplex(Complex);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SxStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Failed = 5,
    GuardExceeded = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SxCertifier {
    Stellated = 0,
    Shelled = 1,
    StackedBall = 2,
    OneStacked = 3,
    StackedSphere = 4,
    Collapse = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SxStatus {
    match e {
        Error::Parse(_) | Error::EmptyInput | Error::EmptyFace | Error::UnknownFixture(_) => SxStatus::Parse,
        Error::GuardExceeded { .. } => SxStatus::GuardExceeded,
        Error::BadParameters(_) | Error::FieldTooLarge(_) | Error::NotPrime(_) | Error::BadDimension(_) => {
            SxStatus::InvalidArgument
        }
        _ => SxStatus::Failed,
    }
}

/// Runs `f`, turning errors and panics into a status plus last-error text.
fn guard(f: impl FnOnce() -> Result<(), (SxStatus, String)>) -> SxStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SxStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            SxStatus::Panic
        }
    }
}

fn core(e: Error) -> (SxStatus, String) {
    (status_of(&e), e.to_string())
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, (SxStatus, String)> {
    if p.is_null() {
        return Err((SxStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (SxStatus::InvalidUtf8, "string is not valid UTF-8".into()))
}

unsafe fn complex_arg<'a>(p: *const SxComplex) -> Result<&'a Complex, (SxStatus, String)> {
    p.as_ref().map(|c| &c.0).ok_or((SxStatus::NullPointer, "null complex handle".into()))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), (SxStatus, String)> {
    if out.is_null() {
        return Err((SxStatus::NullPointer, "null output pointer".into()));
    }
    let c = CString::new(s).map_err(|_| (SxStatus::Failed, "output contains a nul byte".into()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn put_complex(out: *mut *mut SxComplex, x: Complex) -> Result<(), (SxStatus, String)> {
    if out.is_null() {
        return Err((SxStatus::NullPointer, "null output pointer".into()));
    }
    *out = Box::into_raw(Box::new(SxComplex(x)));
    Ok(())
}

/// Message for the most recent failure on this thread, or NULL. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sx_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sx_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `.fac` text or JSON into a new complex.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sx_complex_parse(text: *const c_char, out: *mut *mut SxComplex) -> SxStatus {
    guard(|| {
        let t = str_arg(text)?;
        put_complex(out, sxio::parse_any(t).map_err(core)?)
    })
}

/// Loads a bundled example complex by name.
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sx_complex_fixture(name: *const c_char, out: *mut *mut SxComplex) -> SxStatus {
    guard(|| {
        let n = str_arg(name)?;
        put_complex(out, corpus::complex(n).map_err(core)?)
    })
}

/// Releases a complex. NULL is ignored.
///
/// # Safety
/// `c` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sx_complex_free(c: *mut SxComplex) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Dimension, or -2 for a NULL handle (-1 is the empty complex).
///
/// # Safety
/// `c` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sx_complex_dim(c: *const SxComplex) -> i64 {
    c.as_ref().map_or(-2, |c| c.0.dim())
}

/// # Safety
/// `c` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sx_complex_vertex_count(c: *const SxComplex) -> usize {
    c.as_ref().map_or(0, |c| c.0.vertex_count())
}

/// # Safety
/// `c` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sx_complex_facet_count(c: *const SxComplex) -> usize {
    c.as_ref().map_or(0, |c| c.0.facet_count())
}

/// Writes the complex as `.fac` text (`json == 0`) or JSON.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sx_complex_write(c: *const SxComplex, json: i32, out: *mut *mut c_char) -> SxStatus {
    guard(|| {
        let x = complex_arg(c)?;
        let format = if json == 0 { Format::Fac } else { Format::Json };
        put_string(out, sxio::write(x, format, None))
    })
}

/// The f-vector as a JSON array.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sx_complex_f_vector_json(c: *const SxComplex, out: *mut *mut c_char) -> SxStatus {
    guard(|| {
        let x = complex_arg(c)?;
        put_string(out, serde_json::to_string(&x.f_vector()).expect("f-vector serializes"))
    })
}

/// The boundary as a new complex.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sx_complex_boundary(c: *const SxComplex, out: *mut *mut SxComplex) -> SxStatus {
    guard(|| {
        let x = complex_arg(c)?;
        put_complex(out, x.boundary().map_err(core)?)
    })
}

/// Reduced Betti numbers as `{"field": ..., "reduced_betti": [...]}`.
/// `field` is 0 for the rationals or a prime.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sx_homology_json(c: *const SxComplex, field: u64, out: *mut *mut c_char) -> SxStatus {
    guard(|| {
        let x = complex_arg(c)?;
        let f = CoefficientField::new(field).map_err(core)?;
        put_string(out, serde_json::to_string(&betti(x, f)).expect("betti serializes"))
    })
}

/// Runs a certifier with the default budget and the given seed. The
/// verdict is written as JSON to `out`; `status_out` (if not NULL) gets 0
/// for proved, 1 for refuted, 2 for unknown.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable; `status_out` must be
/// NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn sx_certify(
    c: *const SxComplex,
    which: SxCertifier,
    k: i64,
    seed: u64,
    out: *mut *mut c_char,
    status_out: *mut i32,
) -> SxStatus {
    guard(|| {
        let x = complex_arg(c)?;
        let budget = SearchBudget { seed, ..SearchBudget::default() };
        let v: Verdict = match which {
            SxCertifier::Stellated => certify_k_stellated(x, k, &budget),
            SxCertifier::Shelled => certify_k_shelled(x, k, &budget),
            SxCertifier::StackedBall => is_k_stacked_ball(x, k).map_err(core)?,
            SxCertifier::OneStacked => is_one_stacked_ball(x).map_err(core)?,
            SxCertifier::StackedSphere => certify_k_stacked_sphere(x, k),
            SxCertifier::Collapse => collapse(x, &budget),
        };
        if let Some(s) = status_out.as_mut() {
            *s = v.status.exit_code();
        }
        put_string(out, serde_json::to_string(&v).expect("verdict serializes"))
    })
}

/// Order of the automorphism group as a decimal string.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sx_automorphism_order(c: *const SxComplex, guard_vertices: usize, out: *mut *mut c_char) -> SxStatus {
    guard(|| {
        let x = complex_arg(c)?;
        let g = automorphism_group(x, guard_vertices).map_err(core)?;
        put_string(out, g.order.to_string())
    })
}
