use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use regbound_ffi::*;

fn last_error() -> String {
    let p = rb_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn graph_round_trip() {
    let text = CString::new("IheA@GUAo").unwrap();
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(rb_graph_from_graph6(text.as_ptr(), &mut g), RbStatus::Ok);
        assert_eq!(rb_graph_vertex_count(g), 10);
        let mut mu1 = 0.0;
        assert_eq!(rb_graph_mu1(g, &mut mu1), RbStatus::Ok);
        assert!((mu1 - 1.0).abs() < 1e-9);
        let mut out = ptr::null_mut();
        assert_eq!(rb_graph_to_graph6(g, &mut out), RbStatus::Ok);
        assert_eq!(CStr::from_ptr(out).to_str().unwrap(), "IheA@GUAo");
        rb_string_free(out);
        rb_graph_free(g);
    }
}

#[test]
fn spectrum_buffer_contract() {
    let name = CString::new("K5").unwrap();
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(rb_graph_from_atlas(name.as_ptr(), &mut g), RbStatus::Ok);
        let mut len = 0;
        let mut small = [0.0; 2];
        assert_eq!(rb_graph_spectrum(g, small.as_mut_ptr(), small.len(), &mut len), RbStatus::BufferTooSmall);
        assert_eq!(len, 5);
        let mut buf = vec![0.0; len];
        assert_eq!(rb_graph_spectrum(g, buf.as_mut_ptr(), buf.len(), &mut len), RbStatus::Ok);
        assert!((buf[0] - 4.0).abs() < 1e-9);
        assert!(buf[1..].iter().all(|v| (v + 1.0).abs() < 1e-9));
        rb_graph_free(g);
    }
}

#[test]
fn errors_carry_messages() {
    let bad = CString::new("!!").unwrap();
    let unknown = CString::new("nonesuch").unwrap();
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(rb_graph_from_graph6(bad.as_ptr(), &mut g), RbStatus::Graph6);
        assert!(last_error().contains("byte 0"));
        assert_eq!(rb_graph_from_atlas(unknown.as_ptr(), &mut g), RbStatus::UnknownName);
        assert_eq!(rb_graph_from_graph6(ptr::null(), &mut g), RbStatus::NullPointer);
        assert_eq!(rb_graph_vertex_count(ptr::null()), 0);
        rb_graph_free(ptr::null_mut());
        let mut b = ptr::null_mut();
        assert_eq!(rb_bound_compute(2, 0.0, RbMethod::Linear, 0, 0, &mut b), RbStatus::InvalidParameter);
        assert_eq!(rb_bound_compute(3, 2.8, RbMethod::Nterm, 2, 0, &mut b), RbStatus::Infeasible);
        assert!(last_error().contains("no feasible"));
    }
}

#[test]
fn bound_summary_and_coefficients() {
    let mut b = ptr::null_mut();
    unsafe {
        assert_eq!(rb_bound_compute(3, 1.0, RbMethod::Machine, 0, 0, &mut b), RbStatus::Ok);
        let mut c = RbCertificate::default();
        assert_eq!(rb_bound_summary(b, &mut c), RbStatus::Ok);
        assert_eq!(c.method, RbMethod::Machine as u32);
        assert_eq!(c.vertex_bound_int, 23);
        assert_eq!(c.m, 2);
        let mut len = 0;
        let mut buf = vec![0.0; c.coeff_count];
        assert_eq!(rb_bound_coeffs(b, buf.as_mut_ptr(), buf.len(), &mut len), RbStatus::Ok);
        assert_eq!(len, c.coeff_count);
        assert!(buf.iter().all(|&x| x >= 0.0));
        rb_bound_free(b);
    }
}

#[test]
fn version_is_set() {
    let v = unsafe { CStr::from_ptr(rb_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/regbound.h")).unwrap();
    for name in [
        "rb_graph_from_graph6",
        "rb_graph_from_atlas",
        "rb_graph_spectrum",
        "rb_graph_mu1",
        "rb_bound_compute",
        "rb_bound_summary",
        "rb_last_error_message",
        "typedef struct RbGraph RbGraph",
        "RB_STATUS_BUFFER_TOO_SMALL",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

#[test]
fn c_program_links_against_static_library() {
    // `cargo test` builds only the rlib, so build the static library here.
    let profile = if cfg!(debug_assertions) { "dev" } else { "release" };
    let built = Command::new(env!("CARGO"))
        .args(["build", "-p", "regbound-ffi", "--lib", "--profile", profile])
        .status()
        .expect("run cargo");
    assert!(built.success());
    let target = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = target.join("libregbound_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("ffi_smoke");
    let status = Command::new("cc")
        .arg(crate_dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("run cc");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}
