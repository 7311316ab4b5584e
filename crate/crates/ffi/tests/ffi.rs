use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use crossedcoh_ffi::*;

fn fixture(name: &str) -> CString {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(format!("{name}.json"));
    CString::new(std::fs::read_to_string(path).unwrap()).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(ccoh_last_error()) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn crossed_module_round_trip() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(
            ccoh_crossed_module_from_json(fixture("q8_v4").as_ptr(), &mut h),
            CcohStatus::Ok
        );
        assert!(!h.is_null());
        let mut count = 0usize;
        assert_eq!(ccoh_h1_class_count(h, 0, &mut count), CcohStatus::Ok);
        assert_eq!(count, 2);

        let mut buf = [0u64; 4];
        let mut len = 0usize;
        assert_eq!(
            ccoh_h1_abelian_invariants(h, 0, buf.as_mut_ptr(), buf.len(), &mut len),
            CcohStatus::Ok
        );
        assert_eq!(&buf[..len], &[2]);
        assert_eq!(
            ccoh_h1_abelian_invariants(h, 0, buf.as_mut_ptr(), 0, &mut len),
            CcohStatus::BufferTooSmall
        );
        assert_eq!(len, 1);

        let psi = [0usize, 1];
        let (mut class, mut dist) = (0usize, 0usize);
        assert_eq!(
            ccoh_cr1(h, psi.as_ptr(), 2, 0, &mut class, &mut dist),
            CcohStatus::Ok
        );
        assert_ne!(class, dist);
        let bad = [0usize, 5];
        assert_eq!(
            ccoh_cr1(h, bad.as_ptr(), 2, 0, &mut class, &mut dist),
            CcohStatus::NotACocycle
        );
        assert!(!last_error().is_empty());

        assert_eq!(
            ccoh_h1_class_count(h, 3, &mut count),
            CcohStatus::BoundExceeded
        );
        assert!(last_error().contains("budget"));
        ccoh_crossed_module_free(h);
    }
}

#[test]
fn modules_and_kinds() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(
            ccoh_module_from_json(fixture("unitary_1").as_ptr(), &mut m),
            CcohStatus::Ok
        );
        let mut buf = [0u64; 8];
        let mut len = 0usize;
        assert_eq!(
            ccoh_module_h1_invariants(m, 0, buf.as_mut_ptr(), 8, &mut len),
            CcohStatus::Ok
        );
        assert_eq!(&buf[..len], &[2, 2, 2]);
        ccoh_module_free(m);

        let mut h = ptr::null_mut();
        assert_eq!(
            ccoh_crossed_module_from_json(fixture("unitary_1").as_ptr(), &mut h),
            CcohStatus::WrongKind
        );
        assert!(h.is_null());
        let mut m = ptr::null_mut();
        assert_eq!(
            ccoh_module_from_json(fixture("q8_v4").as_ptr(), &mut m),
            CcohStatus::WrongKind
        );

        let mut h = ptr::null_mut();
        let junk = CString::new("{\"rho\": [0], \"extra\": true}").unwrap();
        assert_eq!(
            ccoh_crossed_module_from_json(junk.as_ptr(), &mut h),
            CcohStatus::Schema
        );
        let mut h = ptr::null_mut();
        assert_eq!(
            ccoh_crossed_module_from_json(fixture("one_v4").as_ptr(), &mut h),
            CcohStatus::Ok
        );
        let mut len = 0usize;
        assert_eq!(
            ccoh_h1_abelian_invariants(h, 0, buf.as_mut_ptr(), 8, &mut len),
            CcohStatus::Ok
        );
        assert_eq!(&buf[..len], &[2, 2]);
        ccoh_crossed_module_free(h);
    }
}

#[test]
fn null_pointers_are_reported() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(
            ccoh_crossed_module_from_json(ptr::null(), &mut h),
            CcohStatus::NullPointer
        );
        assert_eq!(
            ccoh_crossed_module_from_json(fixture("q8_v4").as_ptr(), ptr::null_mut()),
            CcohStatus::NullPointer
        );
        let mut count = 0usize;
        assert_eq!(
            ccoh_h1_class_count(ptr::null(), 0, &mut count),
            CcohStatus::NullPointer
        );
        assert_eq!(last_error(), "handle is null");
        ccoh_crossed_module_free(ptr::null_mut());
        ccoh_module_free(ptr::null_mut());
        ccoh_string_free(ptr::null_mut());
        let bad = [0xffu8, 0];
        assert_eq!(
            ccoh_crossed_module_from_json(bad.as_ptr().cast(), &mut h),
            CcohStatus::InvalidUtf8
        );
    }
}

#[test]
fn scenarios_through_the_boundary() {
    unsafe {
        let name = CString::new("pu2").unwrap();
        let mut report = ptr::null_mut();
        let mut passed = false;
        assert_eq!(
            ccoh_scenario_run(name.as_ptr(), 0, 1, 0, 0, &mut report, &mut passed),
            CcohStatus::Ok
        );
        assert!(passed);
        let json = CStr::from_ptr(report).to_str().unwrap().to_owned();
        ccoh_string_free(report);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["scenario"], "pu2");

        let name = CString::new("nope").unwrap();
        assert_eq!(
            ccoh_scenario_run(name.as_ptr(), 0, 1, 0, 0, &mut report, &mut passed),
            CcohStatus::UnknownScenario
        );
        assert!(report.is_null());
        assert!(!CStr::from_ptr(ccoh_version()).to_bytes().is_empty());
    }
}

fn cc() -> Option<String> {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    Command::new(&cc)
        .arg("--version")
        .output()
        .ok()
        .filter(|o| o.status.success())
        .map(|_| cc)
}

fn target_dir() -> PathBuf {
    // tests run from <target>/<profile>/deps
    std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf()
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include "crossedcoh.h"
int main(int argc, char **argv) {
    FILE *f = fopen(argv[1], "rb");
    if (!f) return 10;
    static char text[1 << 16];
    size_t n = fread(text, 1, sizeof text - 1, f);
    fclose(f);
    text[n] = 0;
    CcohCrossedModule *h = NULL;
    if (ccoh_crossed_module_from_json(text, &h) != CCOH_STATUS_OK) return 11;
    size_t count = 0;
    if (ccoh_h1_class_count(h, 0, &count) != CCOH_STATUS_OK) return 12;
    uint64_t buf[4];
    size_t len = 0;
    if (ccoh_h1_abelian_invariants(h, 0, buf, 4, &len) != CCOH_STATUS_OK) return 13;
    ccoh_crossed_module_free(h);
    if (ccoh_h1_class_count(NULL, 0, &count) != CCOH_STATUS_NULL_POINTER) return 14;
    printf("%zu %zu %llu\n", count, len, (unsigned long long)buf[0]);
    return 0;
}
"#;

#[test]
fn header_compiles_and_links_from_c() {
    let Some(cc) = cc() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let status = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&include)
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success(), "header does not compile");

    let lib = target_dir().join("libcrossedcoh_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping link step", lib.display());
        return;
    }
    let exe = dir.path().join("main");
    let status = Command::new(&cc)
        .args(["-std=c99", "-I"])
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "link failed");
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures/q8_v4.json");
    let out = Command::new(&exe).arg(path).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "2 1 2");
}
