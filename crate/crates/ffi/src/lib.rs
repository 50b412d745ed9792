//! C ABI over `qplab`.
//!
//! Polynomials and verification reports cross the boundary as opaque handles
//! owned by the caller and released with the matching `_free` function.
//! Strings returned to the caller are released with `qplab_string_free`.
//! Every fallible call returns a `QplabStatus`; on failure a message is kept
//! per thread and read back with `qplab_last_error_message`. Panics are caught
//! and reported as `QPLAB_STATUS_PANIC`, never unwound into the caller.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qplab::harness::{
    lookup, run_suite, verify, IdentityInstance, Mode, Params, RunOptions, Status,
    VerificationReport,
};
use qplab::partition::{count, PartitionConstraints};
use qplab::qpoly::{gaussian_binomial, LaurentPoly, Monomial};
use qplab::tables::{reproduce, TableName};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QplabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Arithmetic = 4,
    InvalidArgument = 5,
    Panic = 6,
}

/// Outcome of a verification.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QplabVerdict {
    Pass = 0,
    Fail = 1,
    Error = 2,
}

/// A Laurent polynomial over `q, t, z, a, b, c, d, x, y` with integer coefficients.
pub struct QplabPoly(LaurentPoly);

/// The report of one identity verification.
pub struct QplabReport(VerificationReport);

/// Partition constraints; a negative bound means unbounded.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct QplabConstraints {
    pub max_part: i64,
    pub max_parts: i64,
    pub fixed_norm: i64,
    pub max_norm: i64,
    pub distinct: bool,
}

/// Pass, fail and error counts of a suite run.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct QplabSummary {
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

#[derive(Debug)]
struct Failure(QplabStatus, String);

type Outcome = Result<(), Failure>;

fn set_last_error(msg: Option<String>) {
    let c = msg.map(|m| CString::new(m.replace('\0', " ")).unwrap_or_default());
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Outcome) -> QplabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error(None);
            QplabStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(Some(msg));
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(Some(format!("internal panic: {msg}")));
            QplabStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(QplabStatus::NullPointer, format!("{what} is null"))
}

fn invalid(msg: impl ToString) -> Failure {
    Failure(QplabStatus::InvalidArgument, msg.to_string())
}

/// # Safety
/// `p` is null or a valid NUL-terminated string.
unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        Failure(
            QplabStatus::InvalidUtf8,
            format!("{what} is not valid UTF-8"),
        )
    })
}

/// # Safety
/// `p` is null or a live handle from this library.
unsafe fn poly<'a>(p: *const QplabPoly, what: &str) -> Result<&'a LaurentPoly, Failure> {
    p.as_ref().map(|h| &h.0).ok_or_else(|| null(what))
}

/// # Safety
/// `out` is null or writable.
unsafe fn put<T>(out: *mut T, v: T) -> Outcome {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(v);
    Ok(())
}

unsafe fn put_poly(out: *mut *mut QplabPoly, p: LaurentPoly) -> Outcome {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(Box::into_raw(Box::new(QplabPoly(p))));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Outcome {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|_| invalid("string contains NUL"))?;
    out.write(c.into_raw());
    Ok(())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qplab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the most recent failed call on this thread, or null after a
/// successful call. Valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn qplab_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` is null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qplab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses text such as `"q^2 - 3*a*b^-1 + 1"`.
///
/// # Safety
/// `src` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qplab_poly_parse(
    src: *const c_char,
    out: *mut *mut QplabPoly,
) -> QplabStatus {
    guard(|| {
        let s = text(src, "source text")?;
        let p: LaurentPoly = s
            .parse()
            .map_err(|e| Failure(QplabStatus::Parse, format!("{e}")))?;
        put_poly(out, p)
    })
}

/// Gaussian binomial `[k; n]` in `q`; zero unless `k >= n >= 0`.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qplab_poly_gaussian_binomial(
    k: i64,
    n: i64,
    out: *mut *mut QplabPoly,
) -> QplabStatus {
    guard(|| put_poly(out, gaussian_binomial(k, n, &Monomial::q(1))))
}

/// `*out = a + b`.
///
/// # Safety
/// `a`, `b` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qplab_poly_add(
    a: *const QplabPoly,
    b: *const QplabPoly,
    out: *mut *mut QplabPoly,
) -> QplabStatus {
    guard(|| put_poly(out, poly(a, "a")? + poly(b, "b")?))
}

/// `*out = a - b`.
///
/// # Safety
/// `a`, `b` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qplab_poly_sub(
    a: *const QplabPoly,
    b: *const QplabPoly,
    out: *mut *mut QplabPoly,
) -> QplabStatus {
    guard(|| put_poly(out, poly(a, "a")? - poly(b, "b")?))
}

/// `*out = a * b`.
///
/// # Safety
/// `a`, `b` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qplab_poly_mul(
    a: *const QplabPoly,
    b: *const QplabPoly,
    out: *mut *mut QplabPoly,
) -> QplabStatus {
    guard(|| put_poly(out, poly(a, "a")? * poly(b, "b")?))
}

/// `*out = num / den` when the division is exact; `QPLAB_STATUS_ARITHMETIC` otherwise.
///
/// # Safety
/// `num`, `den` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qplab_poly_divide_exact(
    num: *const QplabPoly,
    den: *const QplabPoly,
    out: *mut *mut QplabPoly,
) -> QplabStatus {
    guard(|| {
        let q = poly(num, "numerator")?
            .divide_exact(poly(den, "denominator")?)
            .map_err(|e| Failure(QplabStatus::Arithmetic, e.to_string()))?;
        put_poly(out, q)
    })
}

/// `*out = (a == b)`.
///
/// # Safety
/// `a`, `b` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qplab_poly_equal(
    a: *const QplabPoly,
    b: *const QplabPoly,
    out: *mut bool,
) -> QplabStatus {
    guard(|| put(out, poly(a, "a")? == poly(b, "b")?))
}

/// Canonical text form; release with `qplab_string_free`.
///
/// # Safety
/// `p` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qplab_poly_to_string(
    p: *const QplabPoly,
    out: *mut *mut c_char,
) -> QplabStatus {
    guard(|| put_string(out, poly(p, "polynomial")?.to_string()))
}

/// Releases a polynomial. Null is ignored.
///
/// # Safety
/// `p` is null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qplab_poly_free(p: *mut QplabPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

fn bound(v: i64, what: &str) -> Result<Option<u32>, Failure> {
    if v < 0 {
        Ok(None)
    } else {
        u32::try_from(v)
            .map(Some)
            .map_err(|_| invalid(format!("{what} too large")))
    }
}

/// Number of partitions satisfying `c`; infinite sets are rejected.
///
/// # Safety
/// `c` points to a valid struct; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qplab_count_partitions(
    c: *const QplabConstraints,
    out: *mut u64,
) -> QplabStatus {
    guard(|| {
        let c = c.as_ref().ok_or_else(|| null("constraints"))?;
        let mut pc = PartitionConstraints::new();
        if let Some(v) = bound(c.max_part, "max_part")? {
            pc = pc.max_part(v);
        }
        if let Some(v) = bound(c.max_parts, "max_parts")? {
            pc = pc.max_parts(v);
        }
        if let Some(v) = bound(c.fixed_norm, "fixed_norm")? {
            pc = pc.fixed_norm(v);
        }
        if let Some(v) = bound(c.max_norm, "max_norm")? {
            pc = pc.max_norm(v);
        }
        if c.distinct {
            pc = pc.distinct();
        }
        put(out, count(&pc).map_err(invalid)?)
    })
}

fn parse_params(s: &str) -> Result<Params, Failure> {
    let mut params = Params::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (k, v) = item.split_once('=').ok_or_else(|| {
            Failure(
                QplabStatus::Parse,
                format!("expected name=value, got {item:?}"),
            )
        })?;
        let v: i64 = v.trim().parse().map_err(|_| {
            Failure(
                QplabStatus::Parse,
                format!("value of {k} is not an integer"),
            )
        })?;
        params.insert(k.trim().to_string(), v);
    }
    Ok(params)
}

/// Verifies one identity instance. `params` is `"name=value,..."` or null;
/// `mode` is `exact`, `truncated:C`, `rational:N:SEED` or null for the
/// identity's default. Unknown ids and bad parameters still produce a report
/// whose verdict is `QPLAB_VERDICT_ERROR`.
///
/// # Safety
/// `id` is a NUL-terminated string; `params` and `mode` are null or
/// NUL-terminated strings; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qplab_verify(
    id: *const c_char,
    params: *const c_char,
    mode: *const c_char,
    out: *mut *mut QplabReport,
) -> QplabStatus {
    guard(|| {
        let id = text(id, "id")?;
        let params = if params.is_null() {
            Params::new()
        } else {
            parse_params(text(params, "params")?)?
        };
        let mode = if mode.is_null() {
            lookup(id).map_or(Mode::Exact, |e| e.default_mode(&params))
        } else {
            text(mode, "mode")?
                .parse()
                .map_err(|e| Failure(QplabStatus::Parse, format!("{e}")))?
        };
        let inst = IdentityInstance {
            id: id.to_string(),
            params,
            mode,
        };
        if out.is_null() {
            return Err(null("output pointer"));
        }
        out.write(Box::into_raw(Box::new(QplabReport(verify(&inst)))));
        Ok(())
    })
}

fn verdict(s: Status) -> QplabVerdict {
    match s {
        Status::Pass => QplabVerdict::Pass,
        Status::Fail => QplabVerdict::Fail,
        Status::Error => QplabVerdict::Error,
    }
}

/// Verdict of a report.
///
/// # Safety
/// `r` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qplab_report_verdict(
    r: *const QplabReport,
    out: *mut QplabVerdict,
) -> QplabStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null("report"))?;
        put(out, verdict(r.0.status))
    })
}

/// The report as JSON; release with `qplab_string_free`.
///
/// # Safety
/// `r` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qplab_report_to_json(
    r: *const QplabReport,
    out: *mut *mut c_char,
) -> QplabStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null("report"))?;
        put_string(out, serde_json::to_string(&r.0).map_err(invalid)?)
    })
}

/// Releases a report. Null is ignored.
///
/// # Safety
/// `r` is null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qplab_report_free(r: *mut QplabReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Runs the suite `smoke`, `default` or `full` on `jobs` threads (0 for all cores).
///
/// # Safety
/// `name` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qplab_run_suite(
    name: *const c_char,
    jobs: usize,
    out: *mut QplabSummary,
) -> QplabStatus {
    guard(|| {
        let suite = text(name, "suite name")?.parse().map_err(invalid)?;
        let s = run_suite(suite, jobs, &RunOptions::default()).summary;
        put(
            out,
            QplabSummary {
                pass: s.pass,
                fail: s.fail,
                error: s.error,
            },
        )
    })
}

/// Reproduces `table2`, `table6`, `table7` or `table8` as JSON; `*reproduced`
/// tells whether every list and polynomial agreed.
///
/// # Safety
/// `name` is a NUL-terminated string; `json` and `reproduced` are writable.
#[no_mangle]
pub unsafe extern "C" fn qplab_table_json(
    name: *const c_char,
    json: *mut *mut c_char,
    reproduced: *mut bool,
) -> QplabStatus {
    guard(|| {
        let name: TableName = text(name, "table name")?.parse().map_err(invalid)?;
        let t = reproduce(name).map_err(|e| Failure(QplabStatus::Arithmetic, e.to_string()))?;
        if reproduced.is_null() {
            return Err(null("output pointer"));
        }
        put_string(json, serde_json::to_string(&t).map_err(invalid)?)?;
        reproduced.write(t.ok());
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn panics_become_status() {
        let s = guard(|| panic!("boom"));
        assert_eq!(s, QplabStatus::Panic);
        let msg = unsafe { CStr::from_ptr(qplab_last_error_message()) };
        assert!(msg.to_str().unwrap().contains("boom"));
    }

    #[test]
    fn success_clears_error() {
        set_last_error(Some("old".into()));
        assert_eq!(guard(|| Ok(())), QplabStatus::Ok);
        assert!(qplab_last_error_message().is_null());
    }

    #[test]
    fn params_text() {
        let p = parse_params("bound=3, i=1,j=-2").unwrap();
        assert_eq!(p.get("j"), Some(&-2));
        assert!(parse_params("bound").is_err());
    }
}
