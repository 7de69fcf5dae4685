//! C interface. Every handle is opaque and owned by the caller until passed to
//! its `*_free` function. Strings returned through out-parameters are
//! allocated here and must be released with `bifset_string_free`.
//!
//! Failures return a nonzero `BifsetStatus`; the message is available from
//! `bifset_last_error` on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bifset::cli::{self, exit, Command, RunOptions};
use bifset::instance::{parse_curve, InstanceFile};
use bifset::{parse_polynomial, Error, Polynomial, Ring};
use num_complex::Complex64;

/// Result codes. Values 0 to 4 coincide with the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BifsetStatus {
    Ok = 0,
    Parse = 1,
    Degenerate = 2,
    Budget = 3,
    Computation = 4,
    InvalidArgument = 5,
}

/// Subcommands accepted by `bifset_run`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BifsetCommand {
    Polyhedron = 0,
    Nondeg = 1,
    Bifurcation = 2,
    Stability = 3,
    Probe = 4,
}

/// A validated instance file.
pub struct BifsetInstance {
    file: InstanceFile,
}

/// A polynomial together with its ring.
pub struct BifsetPolynomial {
    poly: Polynomial,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(code: i32) -> BifsetStatus {
    match code {
        exit::OK => BifsetStatus::Ok,
        exit::PARSE => BifsetStatus::Parse,
        exit::DEGENERATE => BifsetStatus::Degenerate,
        exit::BUDGET => BifsetStatus::Budget,
        _ => BifsetStatus::Computation,
    }
}

fn fail(e: &Error) -> BifsetStatus {
    set_error(e.to_string());
    status_of(cli::exit_code_for(e))
}

fn invalid(msg: &str) -> BifsetStatus {
    set_error(msg);
    BifsetStatus::InvalidArgument
}

/// Runs `f`, turning a panic into `Computation`.
fn guard(f: impl FnOnce() -> BifsetStatus) -> BifsetStatus {
    clear_error();
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| {
        set_error("internal panic");
        BifsetStatus::Computation
    })
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, BifsetStatus> {
    if p.is_null() {
        return Err(invalid(&format!("{what} is NULL")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| invalid(&format!("{what} is not UTF-8")))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// Parses an instance file (TOML text) into `*out`.
///
/// # Safety
/// `toml` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bifset_instance_from_toml(toml: *const c_char, out: *mut *mut BifsetInstance) -> BifsetStatus {
    guard(|| {
        if out.is_null() {
            return invalid("out is NULL");
        }
        *out = ptr::null_mut();
        let text = match read_str(toml, "toml") {
            Ok(t) => t,
            Err(s) => return s,
        };
        let file = match InstanceFile::from_toml(text) {
            Ok(f) => f,
            Err(e) => return fail(&e),
        };
        if let Err(e) = file.to_instance() {
            return fail(&e);
        }
        *out = Box::into_raw(Box::new(BifsetInstance { file }));
        BifsetStatus::Ok
    })
}

/// # Safety
/// `instance` must come from `bifset_instance_from_toml` or be NULL.
#[no_mangle]
pub unsafe extern "C" fn bifset_instance_free(instance: *mut BifsetInstance) {
    if !instance.is_null() {
        drop(Box::from_raw(instance));
    }
}

/// Runs a subcommand and stores the JSON report in `*out_report`. The status
/// is the command's exit code: a report is produced for every status except
/// `InvalidArgument`. `curve` (curve-file text) is required by `Probe` and
/// ignored otherwise; it may be NULL.
///
/// # Safety
/// `instance` must be a live handle, `curve` NULL or NUL-terminated, and
/// `out_report` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bifset_run(
    instance: *const BifsetInstance,
    command: u32,
    curve: *const c_char,
    out_report: *mut *mut c_char,
) -> BifsetStatus {
    guard(|| {
        if out_report.is_null() {
            return invalid("out_report is NULL");
        }
        *out_report = ptr::null_mut();
        let Some(inst) = instance.as_ref() else { return invalid("instance is NULL") };
        let cmd = match command {
            0 => Command::Polyhedron,
            1 => Command::Nondeg,
            2 => Command::Bifurcation,
            3 => Command::Stability,
            4 => Command::Probe,
            _ => return invalid(&format!("unknown command {command}")),
        };
        let mut opts = RunOptions::default();
        if !curve.is_null() {
            let text = match read_str(curve, "curve") {
                Ok(t) => t,
                Err(s) => return s,
            };
            match parse_curve(text, inst.file.variables.len()) {
                Ok(c) => opts.curve = Some(c),
                Err(e) => return fail(&e),
            }
        }
        let out = cli::run(cmd, &inst.file, &opts);
        if out.exit_code != exit::OK {
            set_error(out.error.unwrap_or_else(|| format!("{} reported status {}", cmd.as_str(), out.exit_code)));
        }
        *out_report = to_c_string(out.report);
        status_of(out.exit_code)
    })
}

/// # Safety
/// `s` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn bifset_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread, or NULL. Valid until the next
/// call into the library from the same thread.
#[no_mangle]
pub extern "C" fn bifset_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses `text` in the ring with the given variable names.
///
/// # Safety
/// `text` and each of the `nvars` entries of `variables` must be
/// NUL-terminated strings; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bifset_polynomial_parse(
    text: *const c_char,
    variables: *const *const c_char,
    nvars: usize,
    out: *mut *mut BifsetPolynomial,
) -> BifsetStatus {
    guard(|| {
        if out.is_null() {
            return invalid("out is NULL");
        }
        *out = ptr::null_mut();
        if variables.is_null() && nvars > 0 {
            return invalid("variables is NULL");
        }
        let mut names = Vec::with_capacity(nvars);
        for k in 0..nvars {
            match read_str(*variables.add(k), "variable name") {
                Ok(s) => names.push(s.to_string()),
                Err(s) => return s,
            }
        }
        let text = match read_str(text, "text") {
            Ok(t) => t,
            Err(s) => return s,
        };
        let poly = match Ring::new(&names).and_then(|r| parse_polynomial(text, &r)) {
            Ok(p) => p,
            Err(e) => return fail(&e),
        };
        *out = Box::into_raw(Box::new(BifsetPolynomial { poly }));
        BifsetStatus::Ok
    })
}

/// Canonical text of the polynomial.
///
/// # Safety
/// `poly` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bifset_polynomial_to_string(poly: *const BifsetPolynomial, out: *mut *mut c_char) -> BifsetStatus {
    guard(|| {
        if out.is_null() {
            return invalid("out is NULL");
        }
        let Some(p) = poly.as_ref() else { return invalid("poly is NULL") };
        *out = to_c_string(p.poly.to_string());
        BifsetStatus::Ok
    })
}

/// Evaluates at the point with coordinates `re[k] + i im[k]`, `k < n`.
///
/// # Safety
/// `poly` must be a live handle; `re` and `im` must hold `n` doubles;
/// `out_re` and `out_im` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn bifset_polynomial_evaluate(
    poly: *const BifsetPolynomial,
    re: *const f64,
    im: *const f64,
    n: usize,
    out_re: *mut f64,
    out_im: *mut f64,
) -> BifsetStatus {
    guard(|| {
        let Some(p) = poly.as_ref() else { return invalid("poly is NULL") };
        if out_re.is_null() || out_im.is_null() {
            return invalid("output pointer is NULL");
        }
        if n != p.poly.nvars() {
            return invalid(&format!("expected {} coordinates, got {n}", p.poly.nvars()));
        }
        if n > 0 && (re.is_null() || im.is_null()) {
            return invalid("coordinates are NULL");
        }
        let z: Vec<Complex64> = (0..n).map(|k| Complex64::new(*re.add(k), *im.add(k))).collect();
        if z.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return invalid("non-finite coordinate");
        }
        let v = p.poly.evaluate(&z);
        *out_re = v.re;
        *out_im = v.im;
        BifsetStatus::Ok
    })
}

/// # Safety
/// `poly` must come from `bifset_polynomial_parse` or be NULL.
#[no_mangle]
pub unsafe extern "C" fn bifset_polynomial_free(poly: *mut BifsetPolynomial) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}
