//! Exercise the C ABI through the exported functions, raw pointers and all.

use std::ffi::{CStr, CString};
use std::ptr;

use linspace_ffi::{
    ls_bkc_json, ls_certify_json, ls_classify_json, ls_design_gram_json, ls_free, ls_gram_json,
    ls_hanani_json, ls_last_error, ls_line_count, ls_parse, ls_point_count, ls_string_free,
    ls_validate_json, LsSpace, LsStatus,
};

unsafe fn parse(text: &str) -> (LsStatus, *mut LsSpace) {
    let c = CString::new(text).unwrap();
    let mut handle: *mut LsSpace = ptr::null_mut();
    let status = ls_parse(c.as_ptr(), &mut handle);
    (status, handle)
}

unsafe fn take_json(
    status: LsStatus,
    out: *mut std::ffi::c_char,
) -> (LsStatus, serde_json::Value) {
    assert!(!out.is_null());
    let doc: serde_json::Value =
        serde_json::from_str(CStr::from_ptr(out).to_str().unwrap()).unwrap();
    ls_string_free(out);
    (status, doc)
}

const FANO: &str = r#"{"points": 7, "lines": [[0,1,2],[0,3,4],[0,5,6],[1,3,5],[1,4,6],[2,3,6],[2,4,5]]}"#;

#[test]
fn parse_inspect_free() {
    unsafe {
        let (status, handle) = parse(FANO);
        assert_eq!(status, LsStatus::LS_OK);
        assert_eq!(ls_point_count(handle), 7);
        assert_eq!(ls_line_count(handle), 7);
        ls_free(handle);
        // NULL handling
        assert_eq!(ls_point_count(ptr::null()), 0);
        ls_free(ptr::null_mut());
        ls_string_free(ptr::null_mut());
    }
}

#[test]
fn invalid_input_sets_error_message() {
    unsafe {
        let (status, handle) = parse(r#"{"points": 4, "lines": [[0,1,2],[0,3],[1,3]]}"#);
        assert_eq!(status, LsStatus::LS_INVALID_INPUT);
        assert!(handle.is_null());
        let msg = CStr::from_ptr(ls_last_error()).to_str().unwrap();
        assert!(msg.contains("2") && msg.contains("3"), "message: {msg}");
    }
}

#[test]
fn null_and_bad_variant_codes() {
    unsafe {
        let mut out: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(
            ls_parse(ptr::null(), &mut (ptr::null_mut() as *mut LsSpace)),
            LsStatus::LS_NULL_POINTER
        );
        assert_eq!(
            ls_certify_json(ptr::null(), &mut out),
            LsStatus::LS_NULL_POINTER
        );
        let (_, handle) = parse(FANO);
        assert_eq!(ls_bkc_json(handle, 7, &mut out), LsStatus::LS_INVALID_INPUT);
        ls_free(handle);
        // non-UTF-8 input
        let bad = [0xffu8, 0xfe, 0x00];
        assert_eq!(
            ls_parse(
                bad.as_ptr() as *const std::ffi::c_char,
                &mut (ptr::null_mut() as *mut LsSpace)
            ),
            LsStatus::LS_INVALID_UTF8
        );
    }
}

#[test]
fn reports_round_trip_as_json() {
    unsafe {
        let (_, handle) = parse(FANO);
        let mut out: *mut std::ffi::c_char = ptr::null_mut();

        let (s, doc) = take_json(ls_validate_json(handle, &mut out), out);
        assert_eq!(s, LsStatus::LS_OK);
        assert_eq!(doc["instance"]["n"], 7);

        let (s, doc) = take_json(ls_certify_json(handle, &mut out), out);
        assert_eq!(s, LsStatus::LS_OK);
        assert_eq!(doc["verdict"], "ok");
        assert_eq!(doc["report"]["sdr"]["complete"], true);

        let (s, doc) = take_json(ls_classify_json(handle, &mut out), out);
        assert_eq!(s, LsStatus::LS_OK);
        assert_eq!(doc["report"]["classification"]["verdict"], "projective_plane");

        let (s, doc) = take_json(ls_gram_json(handle, &mut out), out);
        assert_eq!(s, LsStatus::LS_OK);
        assert_eq!(doc["report"]["det_elimination"], "576");

        let (s, doc) = take_json(ls_hanani_json(handle, &mut out), out);
        assert_eq!(s, LsStatus::LS_OK);
        assert_eq!(doc["report"]["quantities"]["p"], 7);

        for variant in [0u32, 1] {
            let (s, doc) = take_json(ls_bkc_json(handle, variant, &mut out), out);
            assert_eq!(s, LsStatus::LS_OK);
            assert_eq!(doc["report"]["square"]["sums_equal"], true);
        }

        ls_free(handle);
    }
}

#[test]
fn design_gram_with_lambda_two() {
    unsafe {
        let input =
            CString::new(r#"{"points":4,"lines":[[0,1,2],[0,1,3],[0,2,3],[1,2,3]]}"#).unwrap();
        let mut out: *mut std::ffi::c_char = ptr::null_mut();
        let (s, doc) = take_json(ls_design_gram_json(input.as_ptr(), 2, &mut out), out);
        assert_eq!(s, LsStatus::LS_OK);
        assert_eq!(doc["report"]["det_elimination"], "9");
        assert_eq!(doc["report"]["rank"], 4);
    }
}

#[test]
fn generated_header_covers_the_surface() {
    let header = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/include/linspace.h"
    ))
    .expect("header generated by the build script");
    for name in [
        "LsStatus",
        "LsSpace",
        "ls_parse",
        "ls_free",
        "ls_point_count",
        "ls_line_count",
        "ls_validate_json",
        "ls_certify_json",
        "ls_classify_json",
        "ls_gram_json",
        "ls_design_gram_json",
        "ls_hanani_json",
        "ls_bkc_json",
        "ls_string_free",
        "ls_last_error",
    ] {
        assert!(header.contains(name), "header is missing {name}");
    }
}
