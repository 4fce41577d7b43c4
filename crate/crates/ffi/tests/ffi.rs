use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use bvsaito_ffi::*;
use serde_json::Value;

const A2: &str = "variables = [\"x1\"]\nweights = [\"1/3\"]\nf = \"(1/3)*x1^3\"\n[point]\ns2 = \"1\"\n";

fn take(s: *mut std::ffi::c_char) -> Value {
    assert!(!s.is_null());
    let v = serde_json::from_str(unsafe { CStr::from_ptr(s) }.to_str().unwrap()).unwrap();
    unsafe { bv_string_free(s) };
    v
}

fn session(text: &str) -> *mut BvSession {
    let spec = CString::new(text).unwrap();
    let mut s = ptr::null_mut();
    let mut err = ptr::null_mut();
    assert_eq!(unsafe { bv_session_new(spec.as_ptr(), &mut s, &mut err) }, BvStatus::Ok);
    assert!(err.is_null());
    s
}

fn run(s: *const BvSession, cmd: &str, input: Option<&str>, order: i64) -> (BvStatus, Value) {
    let cmd = CString::new(cmd).unwrap();
    let input = input.map(|i| CString::new(i).unwrap());
    let mut out = ptr::null_mut();
    let status = unsafe {
        bv_run(s, cmd.as_ptr(), input.as_ref().map_or(ptr::null(), |c| c.as_ptr()), ptr::null(), order, &mut out)
    };
    (status, take(out))
}

#[test]
fn session_round_trip() {
    let s = session(A2);
    assert_eq!(unsafe { bv_session_mu(s) }, 2);
    let (status, v) = run(s, "potential", None, 3);
    assert_eq!(status, BvStatus::Ok);
    assert_eq!(v["result"]["potential"], "-(1/24)*t2^4 + (1/2)*t1^2*t2");
    let (status, v) = run(s, "rmatrix", None, -1);
    assert_eq!(status, BvStatus::Ok);
    assert_eq!(v["result"]["reference"]["r"][1], serde_json::json!([["0", "7/48"], ["5/48", "0"]]));
    let (status, v) = run(s, "check", None, -1);
    assert_eq!(status, BvStatus::CheckFailed);
    assert_eq!(v["result"]["all_pass"], false);
    unsafe { bv_session_free(s) };
}

#[test]
fn errors_are_codes_plus_documents() {
    let spec = CString::new("variables = [\"x1\"]\nweights = [\"2\"]\nf = \"x1\"\n").unwrap();
    let mut s = ptr::null_mut();
    let mut err = ptr::null_mut();
    assert_eq!(unsafe { bv_session_new(spec.as_ptr(), &mut s, &mut err) }, BvStatus::InvalidInput);
    assert!(s.is_null());
    assert_eq!(take(err)["error"]["exit_code"], 1);

    let s = session(A2);
    let (status, v) = run(s, "frobnicate", None, -1);
    assert_eq!(status, BvStatus::InvalidInput);
    assert!(v["error"]["message"].as_str().unwrap().contains("frobnicate"));
    let (status, _) = run(s, "trivialize", None, -1);
    assert_eq!(status, BvStatus::InvalidInput);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { bv_run(s, ptr::null(), ptr::null(), ptr::null(), -1, &mut out) }, BvStatus::NullPointer);
    assert_eq!(unsafe { bv_run(ptr::null(), ptr::null(), ptr::null(), ptr::null(), -1, &mut out) }, BvStatus::NullPointer);
    assert!(out.is_null());
    let bad = [0xffu8, 0];
    assert_eq!(unsafe { bv_run(s, bad.as_ptr().cast(), ptr::null(), ptr::null(), -1, &mut out) }, BvStatus::InvalidUtf8);
    unsafe {
        bv_session_free(s);
        bv_session_free(ptr::null_mut());
        bv_string_free(ptr::null_mut());
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(bv_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_and_links_from_c() {
    let Ok(cc) = Command::new("cc").arg("--version").output() else {
        eprintln!("no C compiler, skipped");
        return;
    };
    assert!(cc.status.success());
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let lib_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    if !lib_dir.join("libbvsaito_ffi.a").exists() {
        eprintln!("static library not built, skipped");
        return;
    }
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let exe = tmp.join("ffi_smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(lib_dir.join("libbvsaito_ffi.a"))
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "mu=7\nstatus=0\n");
}
