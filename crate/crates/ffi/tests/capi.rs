use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use bifset_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = bifset_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn instance(toml: &str) -> Result<*mut BifsetInstance, (BifsetStatus, String)> {
    let mut out = ptr::null_mut();
    let st = unsafe { bifset_instance_from_toml(c(toml).as_ptr(), &mut out) };
    if st == BifsetStatus::Ok {
        Ok(out)
    } else {
        assert!(out.is_null());
        Err((st, last_error()))
    }
}

fn run(inst: *const BifsetInstance, cmd: BifsetCommand, curve: Option<&str>) -> (BifsetStatus, Option<serde_json::Value>) {
    let curve = curve.map(c);
    let mut report: *mut c_char = ptr::null_mut();
    let st = unsafe { bifset_run(inst, cmd as u32, curve.as_ref().map_or(ptr::null(), |s| s.as_ptr()), &mut report) };
    let json = (!report.is_null()).then(|| {
        let text = unsafe { CStr::from_ptr(report) }.to_str().unwrap().to_string();
        unsafe { bifset_string_free(report) };
        serde_json::from_str(&text).unwrap()
    });
    (st, json)
}

#[test]
fn runs_every_command() {
    let inst = instance("variables = [\"x\", \"y\"]\nf = \"x + x^2*y\"\n").unwrap();
    for cmd in [BifsetCommand::Polyhedron, BifsetCommand::Nondeg, BifsetCommand::Bifurcation] {
        let (st, json) = run(inst, cmd, None);
        assert_eq!(st, BifsetStatus::Ok);
        assert_eq!(json.unwrap()["format"], 1);
    }
    let (st, json) = run(inst, BifsetCommand::Bifurcation, None);
    assert_eq!(st, BifsetStatus::Ok);
    assert_eq!(json.unwrap()["superset"], serde_json::json!(["0"]));
    let (st, json) = run(inst, BifsetCommand::Probe, Some("-0.0005 1000\n"));
    assert_eq!(st, BifsetStatus::Ok);
    assert_eq!(json.unwrap()["profile"][0]["product"], "0.00025");
    let (st, _) = run(inst, BifsetCommand::Probe, None);
    assert_eq!(st, BifsetStatus::Parse);
    assert!(last_error().contains("curve"));
    let (st, _) = run(inst, BifsetCommand::Probe, Some("1 2 3\n"));
    assert_eq!(st, BifsetStatus::Parse);
    unsafe { bifset_instance_free(inst) };
}

#[test]
fn status_codes() {
    let inst = instance("variables = [\"x\", \"y\"]\nf = \"(x + y)^2\"\n").unwrap();
    let (st, json) = run(inst, BifsetCommand::Nondeg, None);
    assert_eq!(st, BifsetStatus::Degenerate);
    assert_eq!(json.unwrap()["nondegeneracy"]["status"], "failed");
    unsafe { bifset_instance_free(inst) };

    let inst = instance("variables = [\"x\", \"y\"]\nf = \"x^2*y^2 - x*y\"\n[options]\nbudget_pairs = 1\n").unwrap();
    let (st, json) = run(inst, BifsetCommand::Bifurcation, None);
    assert_eq!(st, BifsetStatus::Budget);
    assert_eq!(json.unwrap()["error"]["kind"], "budget");
    unsafe { bifset_instance_free(inst) };

    let (st, msg) = instance("variables = [\"x\"]\nf = \"x + z\"\n").unwrap_err();
    assert_eq!(st, BifsetStatus::Parse);
    assert!(msg.contains("unknown variable"), "{msg}");
}

#[test]
fn invalid_arguments() {
    let inst = instance("variables = [\"x\"]\nf = \"x^2\"\n").unwrap();
    let mut report: *mut c_char = ptr::null_mut();
    let st = unsafe { bifset_run(inst, 17, ptr::null(), &mut report) };
    assert_eq!(st, BifsetStatus::InvalidArgument);
    assert!(report.is_null());
    let st = unsafe { bifset_run(ptr::null(), 0, ptr::null(), &mut report) };
    assert_eq!(st, BifsetStatus::InvalidArgument);
    let st = unsafe { bifset_run(inst, 0, ptr::null(), ptr::null_mut()) };
    assert_eq!(st, BifsetStatus::InvalidArgument);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { bifset_instance_from_toml(ptr::null(), &mut out) }, BifsetStatus::InvalidArgument);
    unsafe {
        bifset_instance_free(inst);
        bifset_instance_free(ptr::null_mut());
        bifset_string_free(ptr::null_mut());
        bifset_polynomial_free(ptr::null_mut());
    }
}

#[test]
fn polynomials() {
    let names = [c("x"), c("y")];
    let vars: Vec<*const c_char> = names.iter().map(|s| s.as_ptr()).collect();
    let mut p = ptr::null_mut();
    let st = unsafe { bifset_polynomial_parse(c("(x + I*y)^2").as_ptr(), vars.as_ptr(), 2, &mut p) };
    assert_eq!(st, BifsetStatus::Ok);

    let mut text: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { bifset_polynomial_to_string(p, &mut text) }, BifsetStatus::Ok);
    assert_eq!(unsafe { CStr::from_ptr(text) }.to_str().unwrap(), "x^2 + 2*I*x*y - y^2");
    unsafe { bifset_string_free(text) };

    let (re, im) = ([1.0, 2.0], [0.0, 0.0]);
    let (mut vr, mut vi) = (0.0, 0.0);
    let st = unsafe { bifset_polynomial_evaluate(p, re.as_ptr(), im.as_ptr(), 2, &mut vr, &mut vi) };
    assert_eq!(st, BifsetStatus::Ok);
    assert_eq!((vr, vi), (-3.0, 4.0));
    let st = unsafe { bifset_polynomial_evaluate(p, re.as_ptr(), im.as_ptr(), 1, &mut vr, &mut vi) };
    assert_eq!(st, BifsetStatus::InvalidArgument);
    unsafe { bifset_polynomial_free(p) };

    let st = unsafe { bifset_polynomial_parse(c("x^").as_ptr(), vars.as_ptr(), 2, &mut p) };
    assert_eq!(st, BifsetStatus::Parse);
    assert!(p.is_null());
}

/// Compiles a C program against the generated header and the static library.
#[test]
fn c_program_links_against_the_header() {
    let Ok(cc) = which_cc() else { return };
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = exe_dir.join("libbifset_ffi.a");
    if !lib.exists() {
        eprintln!("skipping: {} not built", lib.display());
        return;
    }
    let dir = std::env::temp_dir().join(format!("bifset-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let exe = dir.join("smoke");
    let status = Command::new(&cc)
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok\n");
    let _ = std::fs::remove_dir_all(&dir);
}

fn which_cc() -> Result<String, ()> {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    Command::new(&cc).arg("--version").output().map(|_| cc).map_err(|_| ())
}
