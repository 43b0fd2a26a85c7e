//! C ABI for dyform.
//!
//! Every fallible function returns a [`DyStatus`] and writes its result
//! through an out-pointer. On failure, [`dy_last_error`] describes the most
//! recent error on the calling thread. Panics never cross the boundary.
//!
//! Handles are opaque: create them with `dy_*_new`, release them with the
//! matching `dy_*_free`. A ring handle keeps its field alive independently,
//! so handles may be freed in any order.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use dyform::charsums::{endoscopy_check, kloosterman_fast};
use dyform::conductor::{artin_adjoint, artin_rankin_selberg, gamma_abs, swan_split, ParamSpec};
use dyform::dring::RingSpec;
use dyform::gf2::{FieldElem, FieldSpec};
use dyform::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DyStatus {
    Ok = 0,
    NullPointer = 1,
    Usage = 2,
    Domain = 3,
    InvalidField = 4,
    Precision = 5,
    Overflow = 6,
    Panic = 7,
}

/// The residue field `GF(2^f)`.
pub struct DyField(Arc<FieldSpec>);

/// The Galois ring `GR(2^m, f)`.
pub struct DyRing(Arc<RingSpec>);

/// Conductor bookkeeping for one rank. `|γ| = gamma_base^gamma_exponent`.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DyConductor {
    pub artin_rs: u64,
    pub swan_ad: u64,
    pub artin_ad: u64,
    pub gamma_base: u64,
    pub gamma_exponent: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> DyStatus {
    match e {
        Error::InvalidField(_) | Error::ReducibleModulus { .. } => DyStatus::InvalidField,
        Error::Domain(_) | Error::NotUnit { .. } => DyStatus::Domain,
        Error::Precision { .. } => DyStatus::Precision,
        Error::Overflow(_) => DyStatus::Overflow,
        Error::Usage(_) | Error::Parse(_) => DyStatus::Usage,
    }
}

enum Failure {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> DyStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => DyStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_last_error(format!("null pointer: {what}"));
            DyStatus::NullPointer
        }
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("internal panic: {msg}"));
            DyStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn write<T>(p: *mut T, value: T, what: &'static str) -> Result<(), Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    p.write(value);
    Ok(())
}

fn element(field: &FieldSpec, x: u32) -> Result<FieldElem, Failure> {
    let e = FieldElem(x);
    if !field.contains(e) {
        return Err(Error::Domain(format!("{x} is not an element of GF({})", field.q())).into());
    }
    Ok(e)
}

/// Message for the last failed call on this thread, or NULL. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn dy_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn dy_version() -> *const c_char {
    const VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

/// Builds `GF(2^f)`. `modulus = 0` selects the default irreducible
/// polynomial; otherwise it is the bit pattern of a degree-`f` polynomial.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dy_field_new(f: u32, modulus: u64, out: *mut *mut DyField) -> DyStatus {
    guard(|| {
        let spec = FieldSpec::new(f, (modulus != 0).then_some(modulus))?;
        write(out, Box::into_raw(Box::new(DyField(Arc::new(spec)))), "out")
    })
}

/// # Safety
/// `field` must be NULL or a handle from [`dy_field_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dy_field_free(field: *mut DyField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Field cardinality `q`, or 0 for a NULL handle.
///
/// # Safety
/// `field` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dy_field_q(field: *const DyField) -> u32 {
    field.as_ref().map_or(0, |f| f.0.q())
}

/// `g^k` for the canonical generator `g`, as a bit pattern.
///
/// # Safety
/// `field` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dy_field_gen_pow(field: *const DyField, k: u64, out: *mut u32) -> DyStatus {
    guard(|| {
        let field = borrow(field, "field")?;
        write(out, field.0.gen_pow(k).bits(), "out")
    })
}

/// `ψ(x) = (-1)^{Tr(x)}`.
///
/// # Safety
/// `field` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dy_psi(field: *const DyField, x: u32, out: *mut i32) -> DyStatus {
    guard(|| {
        let field = borrow(field, "field")?;
        let x = element(&field.0, x)?;
        write(out, field.0.psi(x), "out")
    })
}

/// `Kl^N_x`. Fails with `Overflow` if the value does not fit 64 bits.
///
/// # Safety
/// `field` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dy_kloosterman(field: *const DyField, big_n: u32, x: u32, out: *mut i64) -> DyStatus {
    guard(|| {
        let field = borrow(field, "field")?;
        let x = element(&field.0, x)?;
        let v = kloosterman_fast(big_n, x, &field.0)?;
        let v = i64::try_from(v.0).map_err(|_| Error::Overflow(format!("Kl = {} exceeds 64 bits", v.0)))?;
        write(out, v, "out")
    })
}

/// Builds `GR(2^m, f)` over `field`.
///
/// # Safety
/// `field` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dy_ring_new(field: *const DyField, m: u32, out: *mut *mut DyRing) -> DyStatus {
    guard(|| {
        let field = borrow(field, "field")?;
        let spec = RingSpec::new(field.0.clone(), m)?;
        write(out, Box::into_raw(Box::new(DyRing(Arc::new(spec)))), "out")
    })
}

/// # Safety
/// `ring` must be NULL or a handle from [`dy_ring_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dy_ring_free(ring: *mut DyRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// Compares the twisted character at `g_u`, the symplectic character at
/// `h_u` and `Kl^{n+1}_{au}`. `holds` receives whether all agree and `h_u`
/// is a norm of `g_u`; `value` receives `Kl^{n+1}_{au}`.
///
/// # Safety
/// `ring` must be a live handle; `holds` and `value` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dy_endoscopy_check(
    ring: *const DyRing,
    n: u32,
    u: u32,
    a: u32,
    holds: *mut bool,
    value: *mut i64,
) -> DyStatus {
    guard(|| {
        let ring = borrow(ring, "ring")?;
        let field = ring.0.field();
        let (u, a) = (element(field, u)?, element(field, a)?);
        let rep = endoscopy_check(n as usize, u, a, &ring.0)?;
        let v = i64::try_from(rep.kloosterman.0).map_err(|_| Error::Overflow("value exceeds 64 bits".into()))?;
        write(holds, rep.holds(), "holds")?;
        write(value, v, "value")
    })
}

/// Conductor and γ-factor data for rank `n` over a residue field of size `q`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dy_conductor(n: u64, q: u64, out: *mut DyConductor) -> DyStatus {
    guard(|| {
        let spec = ParamSpec::new(n, q)?;
        let gamma = gamma_abs(spec.n, spec.q);
        let c = DyConductor {
            artin_rs: artin_rankin_selberg(n),
            swan_ad: swan_split(n).swan_wedge,
            artin_ad: artin_adjoint(n),
            gamma_base: gamma.base,
            gamma_exponent: gamma.exponent,
        };
        write(out, c, "out")
    })
}
