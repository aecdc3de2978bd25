//! C ABI for the subprofile engine.
//!
//! Every fallible call returns an [`SpStatus`] and writes its result through an
//! out pointer. Objects are opaque and owned by the caller once returned; free
//! them with the matching `*_free` function. Strings returned by the library
//! are NUL-terminated UTF-8 and must be released with [`sp_string_free`].
//! After a failure, [`sp_last_error_message`] describes the error on the
//! calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, UnwindSafe};

use subprofile::fforacle::{self, FpMatrix};
use subprofile::profiles::{self, ProfileTuple, SimilarityType};
use subprofile::ratfunc::BigQ;
use subprofile::{Basis, Error, Partition, RatFunc, SymFunc};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    SizeMismatch = 5,
    Unrealizable = 6,
    Budget = 7,
    DegreeCap = 8,
    Pole = 9,
    DivisionByZero = 10,
    NotPolynomial = 11,
    Panic = 12,
}

/// A similarity class type.
pub struct SpType(SimilarityType);

/// A square matrix over a prime field.
pub struct SpMatrix(FpMatrix);

/// A rational function in `t` with rational coefficients.
pub struct SpRatFunc(RatFunc);

/// A homogeneous symmetric function.
pub struct SpSymFunc(SymFunc);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> SpStatus {
    match e {
        Error::SizeMismatch(_) => SpStatus::SizeMismatch,
        Error::InvalidArgument(_) => SpStatus::InvalidArgument,
        Error::DivisionByZero => SpStatus::DivisionByZero,
        Error::Pole(_) => SpStatus::Pole,
        Error::DegreeCap { .. } => SpStatus::DegreeCap,
        Error::Budget { .. } => SpStatus::Budget,
        Error::Unrealizable { .. } => SpStatus::Unrealizable,
        Error::NotPolynomial(_) => SpStatus::NotPolynomial,
        Error::Parse(_) => SpStatus::Parse,
    }
}

struct Fail(SpStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard<F: FnOnce() -> Result<(), Fail> + UnwindSafe>(f: F) -> SpStatus {
    match catch_unwind(f) {
        Ok(Ok(())) => {
            set_error("");
            SpStatus::Ok
        }
        Ok(Err(Fail(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            SpStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail(SpStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(SpStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn read_ref<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(SpStatus::NullPointer, "null handle".into()))
}

unsafe fn read_parts(parts: *const usize, len: usize) -> Result<Vec<usize>, Fail> {
    if len == 0 {
        return Ok(Vec::new());
    }
    if parts.is_null() {
        return Err(Fail(SpStatus::NullPointer, "null array".into()));
    }
    Ok(std::slice::from_raw_parts(parts, len).to_vec())
}

unsafe fn write_out<T>(out: *mut *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(SpStatus::NullPointer, "null out pointer".into()));
    }
    *out = Box::into_raw(Box::new(v));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(SpStatus::NullPointer, "null out pointer".into()));
    }
    *out = CString::new(s).map_err(|_| Fail(SpStatus::InvalidArgument, "interior NUL".into()))?.into_raw();
    Ok(())
}

unsafe fn free<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Message for the last failed call on this thread. Valid until the next call.
#[no_mangle]
pub extern "C" fn sp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn sp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `{"blocks": [{"d": 1, "lambda": [2, 1]}, ...]}`.
///
/// # Safety
/// `json` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sp_type_parse(json: *const c_char, out: *mut *mut SpType) -> SpStatus {
    guard(|| {
        let t = SimilarityType::from_json_str(read_str(json)?)?;
        write_out(out, SpType(t))
    })
}

/// # Safety
/// `t` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn sp_type_free(t: *mut SpType) {
    free(t)
}

/// Size `n` of the type, or 0 for a null handle.
///
/// # Safety
/// `t` must be a valid handle or null.
#[no_mangle]
pub unsafe extern "C" fn sp_type_size(t: *const SpType) -> usize {
    t.as_ref().map_or(0, |t| t.0.size())
}

/// # Safety
/// `t` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sp_type_to_json(t: *const SpType, out: *mut *mut c_char) -> SpStatus {
    guard(|| write_string(out, read_ref(t)?.0.to_json().to_string()))
}

/// Parses `{"p": 2, "n": 2, "entries": [[0, 1], [0, 0]]}`.
///
/// # Safety
/// `json` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sp_matrix_parse(json: *const c_char, out: *mut *mut SpMatrix) -> SpStatus {
    guard(|| {
        let m = FpMatrix::from_json_str(read_str(json)?)?;
        write_out(out, SpMatrix(m))
    })
}

/// # Safety
/// `m` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn sp_matrix_free(m: *mut SpMatrix) {
    free(m)
}

/// Similarity class type of a matrix.
///
/// # Safety
/// `m` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sp_matrix_type(m: *const SpMatrix, out: *mut *mut SpType) -> SpStatus {
    guard(|| {
        let t = fforacle::similarity_type(&read_ref(m)?.0)?;
        write_out(out, SpType(t))
    })
}

/// `σ(μ, τ)` as a polynomial in `t`.
///
/// # Safety
/// `mu` must point to `len` entries (or be null when `len` is 0).
#[no_mangle]
pub unsafe extern "C" fn sp_sigma(t: *const SpType, mu: *const usize, len: usize, out: *mut *mut SpRatFunc) -> SpStatus {
    guard(|| {
        let mu = Partition::new(read_parts(mu, len)?)?;
        let s = profiles::sigma(&mu, &read_ref(t)?.0)?;
        write_out(out, SpRatFunc(RatFunc::from_poly(s)))
    })
}

/// Number of subspaces with partial profile `rho`.
///
/// # Safety
/// `rho` must point to `len` entries.
#[no_mangle]
pub unsafe extern "C" fn sp_pi_partial(t: *const SpType, rho: *const usize, len: usize, out: *mut *mut SpRatFunc) -> SpStatus {
    guard(|| {
        let rho = ProfileTuple(read_parts(rho, len)?);
        let s = profiles::pi_partial(&rho, &read_ref(t)?.0)?;
        write_out(out, SpRatFunc(RatFunc::from_poly(s)))
    })
}

/// # Safety
/// Handles and out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sp_anti_invariant(t: *const SpType, m: usize, fold: usize, out: *mut *mut SpRatFunc) -> SpStatus {
    guard(|| {
        let s = profiles::anti_invariant_count(m, fold, &read_ref(t)?.0)?;
        write_out(out, SpRatFunc(RatFunc::from_poly(s)))
    })
}

/// # Safety
/// Handles and out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sp_krylov_prob(t: *const SpType, k: usize, l: usize, out: *mut *mut SpRatFunc) -> SpStatus {
    guard(|| {
        let r = profiles::krylov_prob(k, l, &read_ref(t)?.0)?;
        write_out(out, SpRatFunc(r))
    })
}

/// The invariant-flag generating function of a type.
///
/// # Safety
/// Handles and out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sp_flag_gf(t: *const SpType, out: *mut *mut SpSymFunc) -> SpStatus {
    guard(|| {
        let f = profiles::flag_gf(&read_ref(t)?.0)?;
        write_out(out, SpSymFunc(f))
    })
}

/// Exhaustive count of subspaces with profile `mu` under `m`.
///
/// # Safety
/// `mu` must point to `len` entries; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sp_sigma_bruteforce(m: *const SpMatrix, mu: *const usize, len: usize, out: *mut u64) -> SpStatus {
    guard(|| {
        let mu = Partition::new(read_parts(mu, len)?)?;
        let c = fforacle::sigma_bruteforce(&mu, &read_ref(m)?.0)?;
        if out.is_null() {
            return Err(Fail(SpStatus::NullPointer, "null out pointer".into()));
        }
        *out = u64::try_from(c).map_err(|_| Fail(SpStatus::Budget, "count exceeds 64 bits".into()))?;
        Ok(())
    })
}

/// Canonical human form, e.g. `1 + t + 2*t^2`.
///
/// # Safety
/// Handles and out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sp_ratfunc_to_string(r: *const SpRatFunc, out: *mut *mut c_char) -> SpStatus {
    guard(|| write_string(out, read_ref(r)?.0.to_string()))
}

/// `{"num": [...], "den": [...]}` with coefficients as rational strings.
///
/// # Safety
/// Handles and out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sp_ratfunc_to_json(r: *const SpRatFunc, out: *mut *mut c_char) -> SpStatus {
    guard(|| write_string(out, read_ref(r)?.0.to_json().to_string()))
}

/// Exact value at `t = num/den`, written as `"a"` or `"a/b"`.
///
/// # Safety
/// Handles and out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sp_ratfunc_eval(r: *const SpRatFunc, num: i64, den: i64, out: *mut *mut c_char) -> SpStatus {
    guard(|| {
        if den == 0 {
            return Err(Error::DivisionByZero.into());
        }
        let v = read_ref(r)?.0.eval_at(&BigQ::new(num.into(), den.into()))?;
        write_string(out, v.to_string())
    })
}

/// # Safety
/// `r` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn sp_ratfunc_free(r: *mut SpRatFunc) {
    free(r)
}

/// JSON expansion in the basis named by `basis` (`s`, `m`, `e`, `h`, `p`,
/// `P`, `H`, `Hmod`, `W`, `Wdual`).
///
/// # Safety
/// Handles, strings and out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sp_symfunc_to_json(f: *const SpSymFunc, basis: *const c_char, out: *mut *mut c_char) -> SpStatus {
    guard(|| {
        let b: Basis = read_str(basis)?.parse()?;
        let v = subprofile::symfunc::to_json(&read_ref(f)?.0, b)?;
        write_string(out, v.to_string())
    })
}

/// # Safety
/// `f` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn sp_symfunc_free(f: *mut SpSymFunc) {
    free(f)
}
