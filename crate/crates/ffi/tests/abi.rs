use std::ffi::{CStr, CString};
use std::ptr;

use polytract_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = pt_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn set(json: &str) -> *mut PtSet {
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { pt_set_from_json(c(json).as_ptr(), &mut out) },
        PtStatus::Ok
    );
    out
}

const DELTA22: &str = r#"{"n":2,"r":2,"bases":[[0,2],[1,1],[2,0]]}"#;

#[test]
fn set_round_trip_through_handles() {
    let s = set(DELTA22);
    assert_eq!(unsafe { pt_set_len(s) }, 3);
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { pt_set_to_json(s, &mut text) }, PtStatus::Ok);
    assert_eq!(unsafe { CStr::from_ptr(text) }.to_str().unwrap(), DELTA22);
    unsafe {
        pt_string_free(text);
        pt_set_free(s);
    }
}

#[test]
fn invariants() {
    let s = set(DELTA22);
    let mut tau = 0;
    assert_eq!(unsafe { pt_set_tutte_rank(s, &mut tau) }, PtStatus::Ok);
    assert_eq!(tau, 2);
    let (mut rank, mut trivial) = (0, 0);
    assert_eq!(
        unsafe { pt_set_foundation(s, &mut rank, &mut trivial) },
        PtStatus::Ok
    );
    assert_eq!((rank, trivial), (1, 1));
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { pt_set_dual(s, &mut d) }, PtStatus::Ok);
    assert_eq!(unsafe { pt_set_len(d) }, 3);
    unsafe {
        pt_set_free(d);
        pt_set_free(s);
    }
}

#[test]
fn error_codes() {
    let mut out = ptr::null_mut();
    let st = unsafe { pt_set_from_json(c("{not json").as_ptr(), &mut out) };
    assert_eq!(st, PtStatus::Malformed);
    assert!(last_error().contains("JSON"));
    let st = unsafe { pt_set_from_json(c(r#"{"n":2,"bases":[[2,0],[0,2]]}"#).as_ptr(), &mut out) };
    assert_eq!(st, PtStatus::Domain);
    assert!(out.is_null());
    assert_eq!(
        unsafe { pt_set_from_json(ptr::null(), &mut out) },
        PtStatus::NullPointer
    );
    assert_eq!(
        unsafe { pt_set_tutte_rank(ptr::null(), ptr::null_mut()) },
        PtStatus::NullPointer
    );
    let bad = [0xffu8, 0];
    assert_eq!(
        unsafe { pt_set_from_json(bad.as_ptr().cast(), &mut out) },
        PtStatus::InvalidUtf8
    );
}

#[test]
fn check_points_reports_without_building() {
    let mut ok = -1;
    let st = unsafe { pt_check_points(c(r#"{"n":2,"bases":[[2,0],[0,2]]}"#).as_ptr(), &mut ok) };
    assert_eq!((st, ok), (PtStatus::Ok, 0));
    let st = unsafe { pt_check_points(c(DELTA22).as_ptr(), &mut ok) };
    assert_eq!((st, ok), (PtStatus::Ok, 1));
}

#[test]
fn representation_verdicts() {
    let rep = |json: &str| {
        let mut out = ptr::null_mut();
        assert_eq!(
            unsafe { pt_rep_from_json(c(json).as_ptr(), &mut out) },
            PtStatus::Ok
        );
        out
    };
    let valid = rep(
        r#"{"tract":"t0","set":{"n":2,"r":2,"bases":[[0,2],[1,1],[2,0]]},"values":[{"basis":[0,2],"value":"0"},{"basis":[1,1],"value":"1"},{"basis":[2,0],"value":"0"}]}"#,
    );
    let mut v = PtVerdict::Violated;
    assert_eq!(
        unsafe { pt_rep_verify(valid, PtMode::Strong, &mut v) },
        PtStatus::Ok
    );
    assert_eq!(v, PtVerdict::Valid);
    let signed = rep(
        r#"{"tract":"f3","set":{"n":2,"r":2,"bases":[[0,2],[1,1],[2,0]]},"values":[{"basis":[0,2],"value":"1"},{"basis":[1,1],"value":"1"},{"basis":[2,0],"value":"1"}]}"#,
    );
    assert_eq!(
        unsafe { pt_rep_verify(signed, PtMode::Weak, &mut v) },
        PtStatus::Ok
    );
    assert_eq!(v, PtVerdict::IdempotencyObstruction);
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { pt_rep_to_json(valid, &mut text) }, PtStatus::Ok);
    assert!(unsafe { CStr::from_ptr(text) }
        .to_str()
        .unwrap()
        .starts_with(r#"{"tract":"t0""#));
    unsafe {
        pt_string_free(text);
        pt_rep_free(valid);
        pt_rep_free(signed);
    }
}

#[test]
fn lr_coefficient() {
    let (l, m, n) = ([2i64, 1], [2i64, 1], [3i64, 2, 1]);
    let mut out = 0u64;
    let st = unsafe { pt_lr_coefficient(l.as_ptr(), 2, m.as_ptr(), 2, n.as_ptr(), 3, 3, &mut out) };
    assert_eq!((st, out), (PtStatus::Ok, 2));
    let st = unsafe { pt_lr_coefficient(l.as_ptr(), 2, m.as_ptr(), 2, n.as_ptr(), 2, 3, &mut out) };
    assert_eq!(st, PtStatus::Malformed);
    let st =
        unsafe { pt_lr_coefficient(ptr::null(), 2, m.as_ptr(), 2, n.as_ptr(), 3, 3, &mut out) };
    assert_eq!(st, PtStatus::NullPointer);
}

#[test]
fn header_is_generated_and_parses_as_c() {
    let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("include/polytract.h");
    let text = std::fs::read_to_string(&header).expect("header written by build script");
    for sym in [
        "pt_set_from_json",
        "pt_rep_verify",
        "pt_lr_coefficient",
        "PT_STATUS_DOMAIN",
        "typedef struct PtSet PtSet",
    ] {
        assert!(text.contains(sym), "{sym} missing from header");
    }
    let Ok(status) = std::process::Command::new("cc")
        .args(["-fsyntax-only", "-x", "c", "-std=c99", "-Wall", "-Werror"])
        .arg(&header)
        .status()
    else {
        eprintln!("no C compiler; skipping syntax check");
        return;
    };
    assert!(status.success());
}

#[test]
fn c_program_links_against_the_shared_library() {
    let exe = std::env::current_exe().unwrap();
    let deps = exe.parent().unwrap();
    let lib_dir = [deps, deps.parent().unwrap()]
        .into_iter()
        .find(|d| d.join("libpolytract_ffi.so").exists());
    let Some(lib_dir) = lib_dir else {
        eprintln!("shared library not found; skipping");
        return;
    };
    let manifest = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let bin = std::env::temp_dir().join(format!("polytract_smoke_{}", std::process::id()));
    let Ok(status) = std::process::Command::new("cc")
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg("-L")
        .arg(lib_dir)
        .arg("-lpolytract_ffi")
        .arg("-o")
        .arg(&bin)
        .status()
    else {
        eprintln!("no C compiler; skipping");
        return;
    };
    assert!(status.success());
    let out = std::process::Command::new(&bin)
        .env("LD_LIBRARY_PATH", lib_dir)
        .output()
        .unwrap();
    let _ = std::fs::remove_file(&bin);
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        r#"{"n":2,"r":2,"bases":[[0,2],[1,1],[2,0]]}"#
    );
}
