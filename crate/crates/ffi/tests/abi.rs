use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use qplab_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn take_string(p: *mut c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { qplab_string_free(p) };
    s
}

fn parse(s: &str) -> *mut QplabPoly {
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { qplab_poly_parse(cstr(s).as_ptr(), &mut out) },
        QplabStatus::Ok
    );
    out
}

fn last_error() -> String {
    let p = qplab_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

#[test]
fn poly_arithmetic_round_trip() {
    let a = parse("1 - q");
    let b = parse("1 + q + q^2");
    let mut prod = ptr::null_mut();
    let mut sum = ptr::null_mut();
    let mut quot = ptr::null_mut();
    let mut diff = ptr::null_mut();
    unsafe {
        assert_eq!(qplab_poly_mul(a, b, &mut prod), QplabStatus::Ok);
        assert_eq!(qplab_poly_add(a, b, &mut sum), QplabStatus::Ok);
        assert_eq!(qplab_poly_sub(prod, prod, &mut diff), QplabStatus::Ok);
        assert_eq!(qplab_poly_divide_exact(prod, a, &mut quot), QplabStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(qplab_poly_to_string(prod, &mut s), QplabStatus::Ok);
        assert_eq!(take_string(s), "1 - q^3");
        assert_eq!(qplab_poly_to_string(sum, &mut s), QplabStatus::Ok);
        assert_eq!(take_string(s), "2 + q^2");
        assert_eq!(qplab_poly_to_string(diff, &mut s), QplabStatus::Ok);
        assert_eq!(take_string(s), "0");
        let mut eq = false;
        assert_eq!(qplab_poly_equal(quot, b, &mut eq), QplabStatus::Ok);
        assert!(eq);
        for p in [a, b, prod, sum, quot, diff] {
            qplab_poly_free(p);
        }
    }
}

#[test]
fn gaussian_binomial_values() {
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(qplab_poly_gaussian_binomial(4, 2, &mut g), QplabStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(qplab_poly_to_string(g, &mut s), QplabStatus::Ok);
        assert_eq!(take_string(s), "1 + q + 2*q^2 + q^3 + q^4");
        qplab_poly_free(g);
        assert_eq!(qplab_poly_gaussian_binomial(2, 4, &mut g), QplabStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(qplab_poly_to_string(g, &mut s), QplabStatus::Ok);
        assert_eq!(take_string(s), "0");
        qplab_poly_free(g);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(
            qplab_poly_parse(ptr::null(), &mut out),
            QplabStatus::NullPointer
        );
        assert!(out.is_null());
        assert!(last_error().contains("null"));
        assert_eq!(
            qplab_poly_parse(cstr("q^").as_ptr(), &mut out),
            QplabStatus::Parse
        );
        let bytes = [0xffu8, 0];
        assert_eq!(
            qplab_poly_parse(bytes.as_ptr().cast(), &mut out),
            QplabStatus::InvalidUtf8
        );
        let a = parse("1 + q^2");
        let b = parse("1 + q");
        assert_eq!(
            qplab_poly_divide_exact(a, b, &mut out),
            QplabStatus::Arithmetic
        );
        assert!(out.is_null());
        assert_eq!(
            qplab_poly_add(a, ptr::null(), &mut out),
            QplabStatus::NullPointer
        );
        assert_eq!(
            qplab_poly_add(a, b, ptr::null_mut()),
            QplabStatus::NullPointer
        );
        qplab_poly_free(a);
        qplab_poly_free(b);
        qplab_poly_free(ptr::null_mut());
        qplab_report_free(ptr::null_mut());
        qplab_string_free(ptr::null_mut());
    }
}

#[test]
fn counting() {
    let mut n = 0u64;
    let distinct14 = QplabConstraints {
        max_part: -1,
        max_parts: -1,
        fixed_norm: 14,
        max_norm: -1,
        distinct: true,
    };
    assert_eq!(
        unsafe { qplab_count_partitions(&distinct14, &mut n) },
        QplabStatus::Ok
    );
    assert_eq!(n, 22);
    let infinite = QplabConstraints {
        fixed_norm: -1,
        distinct: false,
        ..distinct14
    };
    assert_eq!(
        unsafe { qplab_count_partitions(&infinite, &mut n) },
        QplabStatus::InvalidArgument
    );
    assert!(last_error().contains("infinite"));
}

#[test]
fn verification_reports() {
    unsafe {
        let mut r = ptr::null_mut();
        let mut v = QplabVerdict::Error;
        assert_eq!(
            qplab_verify(
                cstr("T2_1").as_ptr(),
                cstr("bound=3,i=1,j=0").as_ptr(),
                ptr::null(),
                &mut r
            ),
            QplabStatus::Ok
        );
        assert_eq!(qplab_report_verdict(r, &mut v), QplabStatus::Ok);
        assert_eq!(v, QplabVerdict::Pass);
        let mut js = ptr::null_mut();
        assert_eq!(qplab_report_to_json(r, &mut js), QplabStatus::Ok);
        let json: serde_json::Value = serde_json::from_str(&take_string(js)).unwrap();
        assert_eq!(json["status"], "pass");
        assert_eq!(json["rhs"], "q + q^3 + q^5");
        qplab_report_free(r);

        assert_eq!(
            qplab_verify(
                cstr("T6_4").as_ptr(),
                cstr("N=2,nu=1").as_ptr(),
                cstr("rational:5:182").as_ptr(),
                &mut r
            ),
            QplabStatus::Ok
        );
        assert_eq!(qplab_report_verdict(r, &mut v), QplabStatus::Ok);
        assert_eq!(v, QplabVerdict::Pass);
        qplab_report_free(r);

        assert_eq!(
            qplab_verify(cstr("NOPE").as_ptr(), ptr::null(), ptr::null(), &mut r),
            QplabStatus::Ok
        );
        assert_eq!(qplab_report_verdict(r, &mut v), QplabStatus::Ok);
        assert_eq!(v, QplabVerdict::Error);
        qplab_report_free(r);

        assert_eq!(
            qplab_verify(
                cstr("T2_1").as_ptr(),
                ptr::null(),
                cstr("sideways").as_ptr(),
                &mut r
            ),
            QplabStatus::Parse
        );
    }
}

#[test]
fn suites_and_tables() {
    unsafe {
        let mut s = QplabSummary::default();
        assert_eq!(
            qplab_run_suite(cstr("smoke").as_ptr(), 2, &mut s),
            QplabStatus::Ok
        );
        assert!(s.pass > 46 && s.fail == 0 && s.error == 0);
        assert_eq!(
            qplab_run_suite(cstr("huge").as_ptr(), 1, &mut s),
            QplabStatus::InvalidArgument
        );

        let mut js = ptr::null_mut();
        let mut ok = false;
        assert_eq!(
            qplab_table_json(cstr("table7").as_ptr(), &mut js, &mut ok),
            QplabStatus::Ok
        );
        assert!(ok);
        let t: serde_json::Value = serde_json::from_str(&take_string(js)).unwrap();
        assert_eq!(t["sets"][0]["count"], 4);
        assert_eq!(
            qplab_table_json(cstr("table5").as_ptr(), &mut js, &mut ok),
            QplabStatus::InvalidArgument
        );
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(qplab_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

/// Directory holding the library artifacts next to this test binary.
fn artifact_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn header_is_current() {
    let header = std::fs::read_to_string(crate_dir().join("include/qplab.h")).unwrap();
    for f in [
        "qplab_version",
        "qplab_last_error_message",
        "qplab_string_free",
        "qplab_poly_parse",
        "qplab_poly_gaussian_binomial",
        "qplab_poly_add",
        "qplab_poly_sub",
        "qplab_poly_mul",
        "qplab_poly_divide_exact",
        "qplab_poly_equal",
        "qplab_poly_to_string",
        "qplab_poly_free",
        "qplab_count_partitions",
        "qplab_verify",
        "qplab_report_verdict",
        "qplab_report_to_json",
        "qplab_report_free",
        "qplab_run_suite",
        "qplab_table_json",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(header.contains("typedef struct QplabPoly QplabPoly;"));
    assert!(header.contains("QPLAB_STATUS_PANIC = 6"));
}

#[test]
fn c_program_links_against_static_library() {
    let lib = artifact_dir().join("libqplab_ffi.a");
    if Command::new("cc").arg("--version").output().is_err() || !lib.exists() {
        eprintln!(
            "skipping: no C compiler or static library at {}",
            lib.display()
        );
        return;
    }
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("qplab_c_smoke");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(crate_dir().join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let run = Command::new(&out).output().unwrap();
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok "));
}
