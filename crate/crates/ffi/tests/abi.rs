use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use dcoset_ffi::*;

fn kashina_path() -> CString {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data/kashina.json");
    CString::new(p.to_str().unwrap()).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(dc_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn kashina_through_the_abi() {
    unsafe {
        let mut inst = ptr::null_mut();
        assert_eq!(dc_instance_load(kashina_path().as_ptr(), &mut inst), DcStatus::Ok);
        let mut rank = 0;
        assert_eq!(dc_instance_rank(inst, &mut rank), DcStatus::Ok);
        assert_eq!(rank, 7);

        let (left, right) = (CString::new("trivial").unwrap(), CString::new("K").unwrap());
        let mut dec = ptr::null_mut();
        assert_eq!(dc_cosets(inst, left.as_ptr(), right.as_ptr(), &mut dec), DcStatus::Ok);
        assert_eq!(dc_cosets_num_classes(dec), 4);
        assert!(dc_cosets_verified(dec));

        let mut classes = Vec::new();
        for i in 0..dc_cosets_num_classes(dec) {
            let mut len = 0;
            assert_eq!(dc_cosets_class_len(dec, i, &mut len), DcStatus::Ok);
            let mut labels = Vec::new();
            for pos in 0..len {
                let mut m = 0;
                assert_eq!(dc_cosets_class_member(dec, i, pos, &mut m), DcStatus::Ok);
                let mut s = ptr::null_mut();
                assert_eq!(dc_instance_label(inst, m, &mut s), DcStatus::Ok);
                labels.push(CStr::from_ptr(s).to_string_lossy().into_owned());
                dc_string_free(s);
            }
            classes.push(labels.join(","));
        }
        classes.sort();
        assert_eq!(classes, ["1,x", "d1,d3", "d2", "y,xy"]);

        dc_cosets_free(dec);
        dc_instance_free(inst);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut inst = ptr::null_mut();
        let bad = CString::new("{\n  \"name\": 3\n}").unwrap();
        assert_eq!(dc_instance_from_json(bad.as_ptr(), &mut inst), DcStatus::Parse);
        assert!(inst.is_null());
        assert!(last_error().contains("line 2"), "{}", last_error());

        assert_eq!(dc_instance_from_json(ptr::null(), &mut inst), DcStatus::NullPointer);
        assert_eq!(dc_instance_rank(ptr::null(), ptr::null_mut()), DcStatus::NullPointer);

        assert_eq!(dc_instance_load(kashina_path().as_ptr(), &mut inst), DcStatus::Ok);
        assert!(last_error().is_empty());
        let mut s = ptr::null_mut();
        assert_eq!(dc_instance_label(inst, 99, &mut s), DcStatus::OutOfRange);
        assert!(s.is_null());

        let (left, right) = (CString::new("trivial").unwrap(), CString::new("missing").unwrap());
        let mut dec = ptr::null_mut();
        assert_eq!(
            dc_cosets(inst, left.as_ptr(), right.as_ptr(), &mut dec),
            DcStatus::UnknownName
        );
        let not_closed = CString::new(
            r#"{"name":"t","basis":[{"label":"1","dim":1},{"label":"a","dim":1}],"unit":"1",
               "star":{"1":"1","a":"a"},"fusion":[["1","1","1",1],["1","a","a",1],["a","1","a",1],["a","a","1",1]],
               "subalgebras":{"bad":["a"]}}"#,
        )
        .unwrap();
        let mut other = ptr::null_mut();
        assert_eq!(dc_instance_from_json(not_closed.as_ptr(), &mut other), DcStatus::Ok);
        let bad = CString::new("bad").unwrap();
        assert_eq!(
            dc_cosets(other, left.as_ptr(), bad.as_ptr(), &mut dec),
            DcStatus::Closure
        );

        dc_instance_free(other);
        dc_instance_free(inst);
        dc_instance_free(ptr::null_mut());
        dc_cosets_free(ptr::null_mut());
        assert_eq!(dc_cosets_num_classes(ptr::null()), 0);
    }
}

#[test]
fn check_all_report() {
    unsafe {
        let mut inst = ptr::null_mut();
        assert_eq!(dc_instance_load(kashina_path().as_ptr(), &mut inst), DcStatus::Ok);
        let mut json = ptr::null_mut();
        let mut code = -1;
        assert_eq!(dc_check_all_json(inst, &mut json, &mut code), DcStatus::Ok);
        assert_eq!(code, 0);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        dc_string_free(json);
        assert!(text.contains("\"command\": \"check-all\""));
        dc_instance_free(inst);
    }
}

/// `target/<profile>`, two levels above this test binary.
fn profile_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_the_header() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = profile_dir().join("libdcoset_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("dcoset_smoke");
    let status = Command::new(std::env::var("CC").unwrap_or_else(|_| "cc".into()))
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler runs");
    assert!(status.success());
    let out = Command::new(&exe)
        .arg(Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data/kashina.json"))
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
