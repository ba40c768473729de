//! C interface: opaque handles for filtered dg algebras and transferred
//! structures, status codes for every call, JSON strings for results.
//!
//! Strings returned through `out` pointers are owned by the caller and must
//! be released with [`ainfp_string_free`]. A failing call leaves a message
//! for [`ainfp_last_error`] on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ainfp::ainfty::{transfer, ANStructure, TransferOptions};
use ainfp::complex::FilteredSimplicialComplex;
use ainfp::dga::FilteredDgAlgebra;
use ainfp::distance::{an_bottleneck, DistanceOptions};
use ainfp::field::Field;
use ainfp::persistence::Persistence;
use ainfp::{fixtures, Error};

/// Filtered dg algebra.
pub struct AinfpAlgebra(FilteredDgAlgebra);

/// Minimal A_N-structure on persistent cohomology.
pub struct AinfpStructure(ANStructure);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AinfpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Input = 3,
    Identity = 4,
    Precondition = 5,
    FieldMismatch = 6,
    Budget = 7,
    Internal = 8,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> AinfpStatus {
    match e {
        Error::Identity { .. } => AinfpStatus::Identity,
        Error::Precondition(_) => AinfpStatus::Precondition,
        Error::FieldMismatch(..) => AinfpStatus::FieldMismatch,
        Error::Budget(_) => AinfpStatus::Budget,
        Error::NotPrime(_) | Error::Parse(_) | Error::Input(_) | Error::Io(_) => AinfpStatus::Input,
    }
}

/// Runs `f`, turning library errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (AinfpStatus, String)>) -> AinfpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AinfpStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            AinfpStatus::Internal
        }
    }
}

fn lib<T>(r: ainfp::Result<T>) -> Result<T, (AinfpStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null() -> (AinfpStatus, String) {
    (AinfpStatus::NullPointer, "null pointer argument".into())
}

/// # Safety
/// `s` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, (AinfpStatus, String)> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (AinfpStatus::InvalidUtf8, "string is not UTF-8".into()))
}

fn field_of(p: u32) -> Result<Field, (AinfpStatus, String)> {
    if p == 0 {
        Ok(Field::Q)
    } else {
        lib(Field::prime(p))
    }
}

/// # Safety
/// `out` must be null or valid for writes.
unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), (AinfpStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    *out = CString::new(s).map_err(|_| (AinfpStatus::Internal, "nul in output".into()))?.into_raw();
    Ok(())
}

/// # Safety
/// `out` must be null or valid for writes.
unsafe fn put<T>(out: *mut *mut T, v: T) -> Result<(), (AinfpStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    *out = Box::into_raw(Box::new(v));
    Ok(())
}

/// Message of the last failing call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ainfp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a filtered dg algebra from its JSON description and checks its
/// identities.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` must be valid for
/// writes. On success `*out` must later be passed to [`ainfp_algebra_free`].
#[no_mangle]
pub unsafe extern "C" fn ainfp_algebra_from_json(json: *const c_char, out: *mut *mut AinfpAlgebra) -> AinfpStatus {
    guard(|| {
        let text = read_str(json)?;
        let alg = lib(FilteredDgAlgebra::from_json_str(text))?;
        put(out, AinfpAlgebra(alg))
    })
}

/// A built-in algebra by name over `F_p`, or over `Q` when `p` is 0.
///
/// # Safety
/// `name` must be a valid NUL-terminated string; `out` must be valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn ainfp_algebra_fixture(name: *const c_char, p: u32, out: *mut *mut AinfpAlgebra) -> AinfpStatus {
    guard(|| {
        let name = read_str(name)?;
        let alg = fixtures::by_name(name, field_of(p)?).ok_or((AinfpStatus::Input, format!("unknown fixture `{name}`")))?;
        put(out, AinfpAlgebra(alg))
    })
}

/// Cochain algebra of the Vietoris-Rips complex of `n_points` points of
/// dimension `dim` (row-major coordinates), up to simplices of dimension
/// `max_dim`. `p` selects the field as in [`ainfp_algebra_fixture`].
///
/// # Safety
/// `coords` must point to `n_points * dim` readable doubles (or be null when
/// the product is 0); `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ainfp_algebra_from_points(
    coords: *const f64,
    n_points: usize,
    dim: usize,
    max_dim: usize,
    p: u32,
    out: *mut *mut AinfpAlgebra,
) -> AinfpStatus {
    guard(|| {
        let len = n_points.checked_mul(dim).ok_or((AinfpStatus::Input, "size overflow".into()))?;
        let flat: &[f64] = if len == 0 {
            &[]
        } else if coords.is_null() {
            return Err(null());
        } else {
            std::slice::from_raw_parts(coords, len)
        };
        let points: Vec<Vec<f64>> = (0..n_points).map(|i| flat[i * dim..(i + 1) * dim].to_vec()).collect();
        if points.iter().flatten().any(|x| !x.is_finite()) {
            return Err((AinfpStatus::Input, "non-finite coordinate".into()));
        }
        let dist = lib(FilteredSimplicialComplex::distances(&points))?;
        let c = lib(FilteredSimplicialComplex::rips(&dist, max_dim, None))?;
        put(out, AinfpAlgebra(c.cochain_algebra(field_of(p)?)))
    })
}

/// # Safety
/// `alg` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ainfp_algebra_free(alg: *mut AinfpAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Persistent cohomology barcode as a JSON array of
/// `{"degree", "lower", "upper", "multiplicity"}`.
///
/// # Safety
/// `alg` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ainfp_barcode_json(alg: *const AinfpAlgebra, out: *mut *mut c_char) -> AinfpStatus {
    guard(|| {
        let alg = alg.as_ref().ok_or_else(null)?;
        let bars = Persistence::new(&alg.0).barcode().to_entries();
        put_string(out, serde_json::to_string(&bars).map_err(|e| (AinfpStatus::Internal, e.to_string()))?)
    })
}

/// Transfers the Rees algebra of `alg` to its cohomology up to arity `n`.
///
/// # Safety
/// `alg` must be a live handle; `out` must be valid for writes. On success
/// `*out` must later be passed to [`ainfp_structure_free`].
#[no_mangle]
pub unsafe extern "C" fn ainfp_transfer(alg: *const AinfpAlgebra, n: usize, seed: u64, out: *mut *mut AinfpStructure) -> AinfpStatus {
    guard(|| {
        let alg = alg.as_ref().ok_or_else(null)?;
        let tr = lib(transfer(&alg.0, &TransferOptions { n, seed, unitary: false }))?;
        put(out, AinfpStructure(tr.structure))
    })
}

/// # Safety
/// `s` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ainfp_structure_free(s: *mut AinfpStructure) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// The structure as JSON: basis and sparse tensors `m_k`.
///
/// # Safety
/// `s` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ainfp_structure_json(s: *const AinfpStructure, out: *mut *mut c_char) -> AinfpStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(null)?;
        put_string(out, s.0.to_json().to_string())
    })
}

/// A_N-bottleneck distance report as JSON; `n` = 1 is the classical
/// bottleneck distance.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ainfp_distance(
    a: *const AinfpStructure,
    b: *const AinfpStructure,
    n: usize,
    out: *mut *mut c_char,
) -> AinfpStatus {
    guard(|| {
        let (a, b) = (a.as_ref().ok_or_else(null)?, b.as_ref().ok_or_else(null)?);
        let r = lib(an_bottleneck(&a.0, &b.0, n, &DistanceOptions::default()))?;
        put_string(out, r.to_json().to_string())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ainfp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
