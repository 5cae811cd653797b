use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use equichar_ffi::*;

fn last_error() -> String {
    let p = eq_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn problem(name: &str) -> *mut EqProblem {
    let name = CString::new(name).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { eq_problem_from_builtin(name.as_ptr(), &mut out) }, EqStatus::Ok);
    out
}

#[test]
fn analyze_builtin() {
    let p = problem("c6-z3");
    let mut a = ptr::null_mut();
    assert_eq!(unsafe { eq_analyze(p, 12, true, &mut a) }, EqStatus::Ok);
    unsafe {
        assert_eq!(eq_analysis_group_order(a), 6);
        assert_eq!(eq_analysis_irreducible_count(a), 6);
        assert!(eq_analysis_all_passed(a));
        let mut n = 0u64;
        assert_eq!(eq_analysis_period(a, &mut n), EqStatus::Ok);
        assert_eq!(n, 6);

        let delta = eq_analysis_reciprocity_index(a);
        let (mut num, mut den) = (0i64, 0i64);
        // m(δ; 6) = (216 − 72 + 36 − 12)/6 = 28
        assert_eq!(eq_analysis_multiplicity(a, delta, 6, &mut num, &mut den), EqStatus::Ok);
        assert_eq!((num, den), (28, 1));
        assert_eq!(eq_analysis_multiplicity(a, 99, 6, &mut num, &mut den), EqStatus::OutOfRange);
        assert!(last_error().contains("out of range"));

        let mut s: *mut c_char = ptr::null_mut();
        assert_eq!(eq_analysis_render(a, EqFormat::Json, &mut s), EqStatus::Ok);
        let json = CStr::from_ptr(s).to_str().unwrap().to_owned();
        eq_string_free(s);
        assert!(json.contains("\"all_passed\": true"));

        eq_analysis_free(a);
        eq_problem_free(p);
    }
}

#[test]
fn error_codes() {
    let mut out = ptr::null_mut();
    let bad = CString::new("nope").unwrap();
    assert_eq!(unsafe { eq_problem_from_builtin(bad.as_ptr(), &mut out) }, EqStatus::InputError);
    assert!(last_error().contains("unknown example"));
    assert_eq!(unsafe { eq_problem_from_builtin(ptr::null(), &mut out) }, EqStatus::NullPointer);

    let json = CString::new(r#"{"name": "shear", "rank": 2, "generators": [[[1, 1], [0, 1]]], "options": {"max_order": 20}}"#).unwrap();
    assert_eq!(unsafe { eq_problem_from_json(json.as_ptr(), &mut out) }, EqStatus::Ok);
    let mut a = ptr::null_mut();
    assert_eq!(unsafe { eq_analyze(out, 0, false, &mut a) }, EqStatus::InputError);
    assert!(last_error().starts_with("group-engine:"));
    assert!(a.is_null());
    unsafe { eq_problem_free(out) };

    let garbage = CString::new("{").unwrap();
    assert_eq!(unsafe { eq_problem_from_json(garbage.as_ptr(), &mut out) }, EqStatus::InputError);
    assert!(last_error().contains("line 1"));

    unsafe {
        eq_problem_free(ptr::null_mut());
        eq_analysis_free(ptr::null_mut());
        eq_string_free(ptr::null_mut());
        assert_eq!(eq_analysis_group_order(ptr::null()), 0);
        assert!(!eq_analysis_all_passed(ptr::null()));
    }
    assert!(!unsafe { CStr::from_ptr(eq_version()) }.to_bytes().is_empty());
}

#[test]
fn from_file() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../problems/s3_a2.json");
    let path = CString::new(path.to_str().unwrap()).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { eq_problem_from_file(path.as_ptr(), &mut p) }, EqStatus::Ok);
    let mut a = ptr::null_mut();
    assert_eq!(unsafe { eq_analyze(p, 0, false, &mut a) }, EqStatus::Ok);
    let (mut num, mut den) = (0i64, 0i64);
    // m(𝟏; 4) = (16 + 12 + 2)/6 = 5
    assert_eq!(unsafe { eq_analysis_multiplicity(a, 0, 4, &mut num, &mut den) }, EqStatus::Ok);
    assert_eq!((num, den), (5, 1));
    unsafe {
        eq_analysis_free(a);
        eq_problem_free(p);
    }
}

const C_SMOKE: &str = r#"
#include <stdio.h>
#include "equichar.h"

int main(void) {
    EqProblem *p = NULL;
    EqAnalysis *a = NULL;
    if (eq_problem_from_builtin("s3-a2", &p) != EQ_STATUS_OK) return 10;
    if (eq_analyze(p, 12, true, &a) != EQ_STATUS_OK) { fprintf(stderr, "%s\n", eq_last_error()); return 11; }
    int64_t num = 0, den = 0;
    if (eq_analysis_multiplicity(a, 0, 3, &num, &den) != EQ_STATUS_OK) return 12;
    printf("%lld/%lld %d\n", (long long)num, (long long)den, eq_analysis_all_passed(a));
    eq_analysis_free(a);
    eq_problem_free(p);
    return 0;
}
"#;

#[test]
fn header_links_from_c() {
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler on PATH; C smoke test not run");
        return;
    }
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/capi-<hash> → target/<profile>
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libequichar_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());

    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    let bin = dir.path().join("smoke");
    std::fs::write(&src, C_SMOKE).unwrap();
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    // m(𝟏; 3) = (9 + 9 + 6)/6 = 4
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "4/1 1\n");
}
