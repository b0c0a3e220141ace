use std::ffi::CStr;
use std::process::Command;
use std::ptr;

use kronecker_ffi::*;

fn triple(a: i64, b: i64, c: i64) -> *mut KcTriple {
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { kc_triple_new(a, b, c, &mut t) }, KcStatus::Ok);
    t
}

#[test]
fn exact_and_certified_for_one_two_three() {
    let t = triple(1, 2, 3);
    let mut v = KcRational::default();
    assert_eq!(unsafe { kc_alpha_exact(t, &mut v) }, KcStatus::Ok);
    assert_eq!(v, KcRational { num: 1, den: 4 });

    let mut iv = KcInterval::default();
    assert_eq!(unsafe { kc_alpha_certified(t, 1, 10_000, &mut iv) }, KcStatus::Ok);
    assert!(iv.lo_f64 <= 0.25 && 0.25 <= iv.hi_f64);
    assert!(iv.hi_f64 - iv.lo_f64 <= 1e-4);
    unsafe { kc_triple_free(t) };
}

#[test]
fn bounds_and_lattice() {
    let t = triple(-1, 2, 5);
    let (mut m, mut r) = (0, 0);
    assert_eq!(unsafe { kc_triple_lattice(t, &mut m, &mut r) }, KcStatus::Ok);
    assert_eq!((m, r), (1, 2));
    let mut b = KcBounds::default();
    assert_eq!(unsafe { kc_triple_bounds(t, &mut b) }, KcStatus::Ok);
    assert!(b.has_closed_form);
    assert_eq!(b.lower, KcRational { num: 1, den: 8 });
    assert_eq!(b.e1, KcRational { num: 9, den: 40 });
    assert_eq!(b.upper, KcRational { num: 57, den: 200 });
    unsafe { kc_triple_free(t) };
}

#[test]
fn rectangular_has_no_closed_form() {
    let t = triple(3, 4, 6);
    let mut b = KcBounds::default();
    assert_eq!(unsafe { kc_triple_bounds(t, &mut b) }, KcStatus::Ok);
    assert!(b.rectangular && !b.has_closed_form);
    assert_eq!(b.r, 0);
    unsafe { kc_triple_free(t) };
}

#[test]
fn non_distinct_goes_to_oracle() {
    let t = triple(-2, 2, 4);
    let mut v = KcRational::default();
    assert_eq!(unsafe { kc_alpha_exact(t, &mut v) }, KcStatus::NonDistinct);
    unsafe { kc_triple_free(t) };

    let set = [-1i64, 1, 2];
    let mut iv = KcInterval::default();
    assert_eq!(unsafe { kc_oracle_alpha(set.as_ptr(), set.len(), &mut iv) }, KcStatus::Ok);
    assert!((iv.lo_f64 - 1.0 / 3.0).abs() <= 5e-3);
}

#[test]
fn error_paths() {
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { kc_triple_new(1, 1, 2, &mut t) }, KcStatus::InvalidInput);
    assert!(t.is_null());
    assert_eq!(unsafe { kc_alpha_exact(ptr::null(), ptr::null_mut()) }, KcStatus::NullPointer);
    let t = triple(1, 2, 3);
    assert_eq!(unsafe { kc_alpha_certified(t, 1, 0, &mut KcInterval::default()) }, KcStatus::InvalidInput);
    assert_eq!(unsafe { kc_alpha_certified(t, 0, 1, &mut KcInterval::default()) }, KcStatus::InvalidInput);
    unsafe { kc_triple_free(t) };
    unsafe { kc_triple_free(ptr::null_mut()) };
    let mut k = 0.0;
    assert_eq!(unsafe { kc_kappa_from_alpha(0.75, &mut k) }, KcStatus::InvalidInput);
    assert_eq!(unsafe { kc_kappa_from_alpha(0.25, &mut k) }, KcStatus::Ok);
    assert!((k - 2f64.sqrt()).abs() < 1e-12);
    for s in [KcStatus::Ok, KcStatus::Overflow, KcStatus::Panic] {
        let msg = unsafe { CStr::from_ptr(kc_status_message(s)) };
        assert!(!msg.to_bytes().is_empty());
    }
}

/// Compiles a small C program against the generated header and the static
/// library. Skipped when no C compiler or archive is available.
#[test]
fn c_program_links_and_runs() {
    let root = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let header_dir = root.join("include");
    let out_dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let profile_dir = out_dir.parent().unwrap().join(if cfg!(debug_assertions) { "debug" } else { "release" });
    let archive = profile_dir.join("libkronecker_ffi.a");
    if !archive.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no archive at {} or no cc", archive.display());
        return;
    }
    let src = out_dir.join("smoke.c");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include "kronecker.h"
int main(void) {
    KcTriple *t = NULL;
    if (kc_triple_new(2, 4, 6, &t) != KC_STATUS_OK) return 1;
    KcRational v;
    if (kc_alpha_exact(t, &v) != KC_STATUS_OK) return 2;
    kc_triple_free(t);
    printf("%lld/%lld\n", (long long)v.num, (long long)v.den);
    return v.num == 1 && v.den == 4 ? 0 : 3;
}
"#,
    )
    .unwrap();
    let exe = out_dir.join("smoke");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&header_dir)
        .arg(&archive)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{out:?}");
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "1/4");
}
