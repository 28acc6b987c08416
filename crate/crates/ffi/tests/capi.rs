use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use multmon_ffi::*;

fn parse(text: &str) -> *mut MmIdeal {
    let t = CString::new(text).unwrap();
    let mut h = ptr::null_mut();
    let s = unsafe { mm_ideal_parse(t.as_ptr(), ptr::null(), &mut h) };
    assert_eq!(s, MmStatus::Ok);
    assert!(!h.is_null());
    h
}

fn last_error() -> String {
    let p = mm_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn multiplicity_by_every_method() {
    let h = parse("a^3*c, a*b*e^3, a^2*b^2, c^2, d^2*e^2");
    for method in [MmMethod::Auto, MmMethod::Ps, MmMethod::Oracle] {
        let mut e = 0u64;
        assert_eq!(unsafe { mm_ideal_multiplicity(h, method, &mut e) }, MmStatus::Ok);
        assert_eq!(e, 18, "{method:?}");
    }
    let mut c = 0usize;
    assert_eq!(unsafe { mm_ideal_codim(h, &mut c) }, MmStatus::Ok);
    assert_eq!(c, 3);
    assert_eq!(unsafe { mm_ideal_generator_count(h) }, 5);
    assert_eq!(unsafe { mm_ideal_variable_count(h) }, 5);
    unsafe { mm_ideal_free(h) };
}

#[test]
fn predicates_and_regularity() {
    let h = parse("a^2, b^3, a*b");
    let mut flag = true;
    assert_eq!(unsafe { mm_ideal_is_dominant(h, &mut flag) }, MmStatus::Ok);
    assert!(!flag);
    assert_eq!(unsafe { mm_ideal_is_complete_intersection(h, &mut flag) }, MmStatus::Ok);
    assert!(!flag);
    let mut reg = 0u64;
    assert_eq!(unsafe { mm_ideal_regularity(h, &mut reg) }, MmStatus::Unsupported);
    assert!(last_error().contains("dominant"));
    unsafe { mm_ideal_free(h) };

    let h = parse("a*b, a*c, d*e");
    assert_eq!(unsafe { mm_ideal_regularity(h, &mut reg) }, MmStatus::Ok);
    assert_eq!(reg, 2);
    unsafe { mm_ideal_free(h) };
}

#[test]
fn parse_errors_map_to_status_one() {
    let mut h = ptr::null_mut();
    for bad in ["x^0", "", "x, 1", "x + y"] {
        let t = CString::new(bad).unwrap();
        assert_eq!(unsafe { mm_ideal_parse(t.as_ptr(), ptr::null(), &mut h) }, MmStatus::InvalidInput, "{bad}");
        assert!(h.is_null());
        assert!(!last_error().is_empty());
    }
    assert_eq!(unsafe { mm_ideal_parse(ptr::null(), ptr::null(), &mut h) }, MmStatus::InvalidInput);
}

#[test]
fn null_handles_are_rejected() {
    let mut c = 0usize;
    assert_eq!(unsafe { mm_ideal_codim(ptr::null(), &mut c) }, MmStatus::InvalidInput);
    assert_eq!(unsafe { mm_ideal_generator_count(ptr::null()) }, 0);
    assert!(unsafe { mm_ideal_to_string(ptr::null()) }.is_null());
    unsafe { mm_ideal_free(ptr::null_mut()) };
    unsafe { mm_string_free(ptr::null_mut()) };
}

#[test]
fn explicit_variables_and_printing() {
    let t = CString::new("e*d, c").unwrap();
    let v = CString::new("c,d,e").unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { mm_ideal_parse(t.as_ptr(), v.as_ptr(), &mut h) }, MmStatus::Ok);
    let s = unsafe { mm_ideal_to_string(h) };
    assert_eq!(unsafe { CStr::from_ptr(s) }.to_str().unwrap(), "c, d*e");
    unsafe {
        mm_string_free(s);
        mm_ideal_free(h);
    }
}

#[test]
fn run_json_matches_cli_codes() {
    let cmd = CString::new("betti").unwrap();
    let text = CString::new("a^2, b^3, a*b").unwrap();
    let mut out = ptr::null_mut();
    let s = unsafe { mm_run_json(cmd.as_ptr(), text.as_ptr(), ptr::null(), false, &mut out) };
    assert_eq!(s as i32, 3);
    let json = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_owned();
    assert!(json.contains("\"unsupported\""));
    unsafe { mm_string_free(out) };

    let cmd = CString::new("multiplicity").unwrap();
    let text = CString::new("a^2*b*c, b^3*c, c^4, d^2*e^2, d*e*f, d*g^2").unwrap();
    let s = unsafe { mm_run_json(cmd.as_ptr(), text.as_ptr(), ptr::null(), true, &mut out) };
    assert_eq!(s, MmStatus::Ok);
    let json = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_owned();
    assert!(json.contains("\"method\":\"stem\""));
    assert!(json.contains("\"agreement\":true"));
    unsafe { mm_string_free(out) };

    let cmd = CString::new("nope").unwrap();
    let s = unsafe { mm_run_json(cmd.as_ptr(), text.as_ptr(), ptr::null(), false, &mut out) };
    assert_eq!(s, MmStatus::InvalidInput);
}

#[test]
fn status_values_are_exit_codes() {
    assert_eq!(MmStatus::Ok as i32, 0);
    assert_eq!(MmStatus::InvalidInput as i32, 1);
    assert_eq!(MmStatus::Hypothesis as i32, 2);
    assert_eq!(MmStatus::Unsupported as i32, 3);
    assert_eq!(MmStatus::ResourceCap as i32, 4);
    assert_eq!(MmStatus::Internal as i32, 5);
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include "multmon.h"

int main(void) {
    MmIdeal *m = NULL;
    if (mm_ideal_parse("a^3*c, a*b*e^3, a^2*b^2, c^2, d^2*e^2", NULL, &m) != MM_STATUS_OK) return 10;
    uint64_t e = 0;
    if (mm_ideal_multiplicity(m, MM_METHOD_PS, &e) != MM_STATUS_OK) return 11;
    size_t c = 0;
    if (mm_ideal_codim(m, &c) != MM_STATUS_OK) return 12;
    mm_ideal_free(m);
    if (mm_ideal_parse("x^0", NULL, &m) != MM_STATUS_INVALID_INPUT) return 13;
    printf("%llu %zu\n", (unsigned long long)e, c);
    return 0;
}
"#;

/// Compiles a C program against the generated header and the static
/// library. Skipped when no C compiler or static library is available.
#[test]
fn header_compiles_and_links() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header_dir = manifest.join("include");
    assert!(header_dir.join("multmon.h").exists(), "header not generated");
    let target = std::env::var_os("CARGO_TARGET_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| manifest.join("../../target"));
    let profile = if cfg!(debug_assertions) { "debug" } else { "release" };
    let lib = target.join(profile).join("libmultmon_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: static library or cc not available");
        return;
    }
    let dir = tempfile_dir();
    let src = dir.join("smoke.c");
    let exe = dir.join("smoke");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&header_dir)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "18 3");
    let _ = std::fs::remove_dir_all(&dir);
}

fn tempfile_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("multmon-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
