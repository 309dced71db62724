//! C ABI for `cms_eigenbasis`.
//!
//! Polynomials cross the boundary as opaque [`CmsPoly`] handles. Every
//! function returns a [`CmsStatus`]; on failure a message is kept per
//! thread and can be fetched with [`cms_last_error_message`]. Strings
//! returned through out-parameters are owned by the caller and released
//! with [`cms_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cms_eigenbasis::eigen::solve_eigenfunction;
use cms_eigenbasis::fbasis::f_polynomial;
use cms_eigenbasis::jack::{eval_point, super_jack};
use cms_eigenbasis::operators::OperatorSpec;
use cms_eigenbasis::partition::{HookShape, IntVector, Partition};
use cms_eigenbasis::poly::{variable_names, MultiPoly, VarSpace};
use cms_eigenbasis::scalar::{format_rational, parse_rational, Rational};
use cms_eigenbasis::Error;

/// Status codes returned by every function.
#[repr(i32)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Degenerate = 5,
    NotInHook = 6,
    Math = 7,
    Panic = 8,
}

/// Opaque polynomial in ℚ(θ)[x, x̃].
pub struct CmsPoly {
    value: MultiPoly,
    space: VarSpace,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<String>> = const { RefCell::new(None) };
}

struct Failure(CmsStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_) => CmsStatus::Parse,
            Error::InvalidArgument(_) | Error::SpaceMismatch | Error::LengthMismatch(..) => CmsStatus::InvalidArgument,
            Error::Degenerate(_) => CmsStatus::Degenerate,
            Error::NotInHook(..) | Error::TooManyParts(..) => CmsStatus::NotInHook,
            _ => CmsStatus::Math,
        };
        Failure(status, e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> CmsStatus {
    let outcome = catch_unwind(AssertUnwindSafe(body))
        .unwrap_or_else(|_| Err(Failure(CmsStatus::Panic, "internal panic".into())));
    match outcome {
        Ok(()) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            CmsStatus::Ok
        }
        Err(Failure(status, message)) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = Some(message));
            status
        }
    }
}

/// # Safety
/// `s` must be null or a valid NUL-terminated string.
unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure(CmsStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Failure(CmsStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn out_string(s: String, out: *mut *mut c_char) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(CmsStatus::NullPointer, "output pointer is null".into()));
    }
    let c = CString::new(s).map_err(|_| Failure(CmsStatus::InvalidArgument, "interior NUL".into()))?;
    // SAFETY: checked non-null above; the caller provides writable storage.
    unsafe { *out = c.into_raw() };
    Ok(())
}

fn out_poly(value: MultiPoly, space: VarSpace, out: *mut *mut CmsPoly) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(CmsStatus::NullPointer, "output pointer is null".into()));
    }
    // SAFETY: checked non-null above.
    unsafe { *out = Box::into_raw(Box::new(CmsPoly { value, space })) };
    Ok(())
}

/// # Safety
/// `p` must be null or a handle returned by this library and not yet freed.
unsafe fn poly<'a>(p: *const CmsPoly) -> Result<&'a CmsPoly, Failure> {
    p.as_ref().ok_or_else(|| Failure(CmsStatus::NullPointer, "polynomial handle is null".into()))
}

/// Super Jack polynomial SP_λ on n + ñ variables. `lambda` is a
/// comma-separated partition such as "2,1".
///
/// # Safety
/// `lambda` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cms_superjack(
    lambda: *const c_char,
    n: usize,
    nt: usize,
    out: *mut *mut CmsPoly,
) -> CmsStatus {
    guard(|| {
        let lambda: Partition = text(lambda, "lambda")?.parse()?;
        let space = HookShape::new(n, nt);
        let p = super_jack(&lambda, space)?;
        out_poly((*p).clone(), space, out)
    })
}

/// f_a^{(m̄)} on the space (n, ñ); `a` has m + m̃ entries.
///
/// # Safety
/// `a` must point to `len` integers (or be null when `len` is 0) and `out`
/// must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cms_fpoly(
    a: *const i64,
    len: usize,
    m: usize,
    mt: usize,
    n: usize,
    nt: usize,
    out: *mut *mut CmsPoly,
) -> CmsStatus {
    guard(|| {
        let entries = if len == 0 {
            Vec::new()
        } else if a.is_null() {
            return Err(Failure(CmsStatus::NullPointer, "a is null".into()));
        } else {
            std::slice::from_raw_parts(a, len).to_vec()
        };
        let mbar = HookShape::new(m, mt);
        if entries.len() != mbar.total() {
            return Err(Failure(CmsStatus::InvalidArgument, format!("a needs {} entries", mbar.total())));
        }
        let a = IntVector::new(entries, m)?;
        let space = HookShape::new(n, nt);
        out_poly(f_polynomial(&a, space, mbar)?.value.clone(), space, out)
    })
}

/// Eigenfunction P_λ^{(m̄)} of ℒ. `spec` is a preset name (trig, hermite,
/// laguerre, jacobi, bessel) or raw coefficients such as "a2=1,b1=-1/2".
/// When `eigenvalue` is non-null it receives the eigenvalue as text.
///
/// # Safety
/// `spec` and `lambda` must be valid C strings; `out` must be a valid
/// pointer and `eigenvalue` null or valid.
#[no_mangle]
pub unsafe extern "C" fn cms_eigenfunction(
    spec: *const c_char,
    lambda: *const c_char,
    n: usize,
    nt: usize,
    m: usize,
    mt: usize,
    out: *mut *mut CmsPoly,
    eigenvalue: *mut *mut c_char,
) -> CmsStatus {
    guard(|| {
        let spec = OperatorSpec::resolve(text(spec, "spec")?, None, None)?;
        let lambda: Partition = text(lambda, "lambda")?.parse()?;
        let space = HookShape::new(n, nt);
        let e = solve_eigenfunction(&lambda, &spec, space, HookShape::new(m, mt))?;
        if out.is_null() {
            return Err(Failure(CmsStatus::NullPointer, "output pointer is null".into()));
        }
        if !eigenvalue.is_null() {
            out_string(e.eigenvalue.to_string(), eigenvalue)?;
        }
        out_poly(e.value, space, out)
    })
}

/// JSON term list {"nvars", "terms": [{"exp", "coeff"}]}.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cms_poly_to_json(p: *const CmsPoly, out: *mut *mut c_char) -> CmsStatus {
    guard(|| {
        let p = poly(p)?;
        let s = serde_json::to_string(&p.value).map_err(|e| Failure(CmsStatus::Math, e.to_string()))?;
        out_string(s, out)
    })
}

/// Text rendering with variables x1.., xt1...
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cms_poly_to_string(p: *const CmsPoly, out: *mut *mut c_char) -> CmsStatus {
    guard(|| {
        let p = poly(p)?;
        out_string(p.value.render(&variable_names(p.space)), out)
    })
}

/// Value at a rational point and rational θ. `point` holds `len` strings
/// such as "1/2", one per variable; the result is written as "p/q".
///
/// # Safety
/// `p` must be a live handle, `point` must point to `len` valid C strings,
/// `theta` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cms_poly_eval(
    p: *const CmsPoly,
    point: *const *const c_char,
    len: usize,
    theta: *const c_char,
    out: *mut *mut c_char,
) -> CmsStatus {
    guard(|| {
        let p = poly(p)?;
        if len != p.value.nvars() {
            return Err(Failure(CmsStatus::InvalidArgument, format!("point needs {} coordinates", p.value.nvars())));
        }
        if point.is_null() && len > 0 {
            return Err(Failure(CmsStatus::NullPointer, "point is null".into()));
        }
        let coords = (0..len)
            .map(|i| Ok(parse_rational(text(*point.add(i), "coordinate")?)?))
            .collect::<Result<Vec<Rational>, Failure>>()?;
        let theta = parse_rational(text(theta, "theta")?)?;
        out_string(format_rational(&eval_point(&p.value, &coords, &theta)?), out)
    })
}

/// Number of variables of a polynomial, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cms_poly_nvars(p: *const CmsPoly) -> usize {
    p.as_ref().map_or(0, |p| p.value.nvars())
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `p` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cms_poly_free(p: *mut CmsPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cms_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread as a new string, or null
/// if the last call succeeded. Free with [`cms_string_free`].
#[no_mangle]
pub extern "C" fn cms_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| match e.borrow().as_deref() {
        Some(m) => CString::new(m.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    })
}
