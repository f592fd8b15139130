use std::ffi::{c_char, CStr, CString};
use std::ptr;

use syzkit_ffi::*;

const HEXAGON: &str = r#"{"dim":2,"vertices":[[0,0],[1,0],[2,1],[2,2],[1,2],[0,1]]}"#;

unsafe fn take_string(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    syz_string_free(s);
    out
}

unsafe fn last_error() -> String {
    let p = syz_last_error_message();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_str().unwrap().to_owned()
}

unsafe fn hexagon_list() -> *mut SyzDecompositionList {
    let json = CString::new(HEXAGON).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(syz_polytope_from_json(json.as_ptr(), &mut p), SyzStatus::Ok);
    let mut list = ptr::null_mut();
    assert_eq!(syz_decompose(p, 0, &mut list), SyzStatus::Ok);
    syz_polytope_free(p);
    list
}

#[test]
fn decompose_and_query_hexagon() {
    unsafe {
        let list = hexagon_list();
        assert_eq!(syz_decomposition_list_len(list), 2);

        let mut d = ptr::null_mut();
        assert_eq!(syz_decomposition_list_get(list, 0, &mut d), SyzStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(syz_mirror_json(d, &mut s), SyzStatus::Ok);
        let mirror = take_string(s);
        assert!(mirror.contains(r#"{"point":[1,1],"n":2}"#), "{mirror}");

        let basis = CString::new("(0,1),(1,1),(1,2)").unwrap();
        assert_eq!(syz_transition_json(d, basis.as_ptr(), &mut s), SyzStatus::Ok);
        let report = take_string(s);
        assert!(report.contains(r#"{"point":[1,0],"value":"1/4"}"#), "{report}");
        assert!(report.ends_with(r#""verified":true}"#));

        let mut ok = false;
        assert_eq!(syz_dual_fan_check(d, &mut ok), SyzStatus::Ok);
        assert!(ok);

        let class = CString::new(r#"{"sector":"D0","multiplicities":[[1],[1],[1]]}"#).unwrap();
        let mut n = 9u8;
        assert_eq!(syz_gw_invariant(d, 2, class.as_ptr(), &mut n), SyzStatus::Ok);
        assert_eq!(n, 1);
        assert_eq!(syz_gw_invariant(d, 1, class.as_ptr(), &mut n), SyzStatus::Ok);
        assert_eq!(n, 0);
        syz_decomposition_free(d);

        assert_eq!(syz_decomposition_list_get(list, 2, &mut d), SyzStatus::IndexOutOfRange);
        syz_decomposition_list_free(list);
    }
}

#[test]
fn json_round_trip_through_handles() {
    unsafe {
        let list = hexagon_list();
        let mut s = ptr::null_mut();
        assert_eq!(syz_decomposition_list_to_json(list, &mut s), SyzStatus::Ok);
        let all: Vec<serde_json::Value> = serde_json::from_str(&take_string(s)).unwrap();
        syz_decomposition_list_free(list);

        let text = CString::new(all[1].to_string()).unwrap();
        let mut d = ptr::null_mut();
        assert_eq!(syz_decomposition_from_json(text.as_ptr(), &mut d), SyzStatus::Ok);
        assert_eq!(syz_decomposition_to_json(d, &mut s), SyzStatus::Ok);
        assert_eq!(take_string(s), all[1].to_string());
        syz_decomposition_free(d);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(syz_polytope_from_json(ptr::null(), &mut p), SyzStatus::NullPointer);
        let bad = CString::new("{not json").unwrap();
        assert_eq!(syz_polytope_from_json(bad.as_ptr(), &mut p), SyzStatus::ParseError);
        assert!(last_error().starts_with("ParseError"));

        let list = hexagon_list();
        let mut d = ptr::null_mut();
        assert_eq!(syz_decomposition_list_get(list, 0, &mut d), SyzStatus::Ok);
        syz_decomposition_list_free(list);

        let class = CString::new(r#"{"sector":"D0","multiplicities":[[0]]}"#).unwrap();
        let mut n = 0u8;
        assert_eq!(syz_gw_invariant(d, 0, class.as_ptr(), &mut n), SyzStatus::ShapeMismatch);
        assert_eq!(syz_gw_invariant(d, 7, class.as_ptr(), &mut n), SyzStatus::InvalidChamber);
        assert!(last_error().starts_with("InvalidChamber"));

        let basis = CString::new("(1,1),(2,1),(2,2)").unwrap();
        let mut s = ptr::null_mut();
        assert_eq!(syz_transition_json(d, basis.as_ptr(), &mut s), SyzStatus::InvalidBasis);
        assert!(s.is_null());
        assert_eq!(syz_mirror_json(d, ptr::null_mut()), SyzStatus::NullPointer);
        syz_decomposition_free(d);

        let segment = CString::new(r#"{"dim":1,"vertices":[[0],[3]]}"#).unwrap();
        assert_eq!(syz_polytope_from_json(segment.as_ptr(), &mut p), SyzStatus::Ok);
        let mut list = ptr::null_mut();
        assert_eq!(syz_decompose(p, 0, &mut list), SyzStatus::Ok);
        assert_eq!(syz_decomposition_list_get(list, 0, &mut d), SyzStatus::Ok);
        let mut flag = false;
        assert_eq!(syz_dual_fan_check(d, &mut flag), SyzStatus::UnsupportedDimension);
        syz_decomposition_free(d);
        syz_decomposition_list_free(list);
        syz_polytope_free(p);

        // freeing NULL is a no-op
        syz_polytope_free(ptr::null_mut());
        syz_decomposition_free(ptr::null_mut());
        syz_decomposition_list_free(ptr::null_mut());
        syz_string_free(ptr::null_mut());
        assert_eq!(syz_decomposition_list_len(ptr::null()), 0);
    }
}

#[test]
fn tiny_budget_is_exceeded() {
    unsafe {
        let json = CString::new(HEXAGON).unwrap();
        let mut p = ptr::null_mut();
        assert_eq!(syz_polytope_from_json(json.as_ptr(), &mut p), SyzStatus::Ok);
        let mut list = ptr::null_mut();
        assert_eq!(syz_decompose(p, 1, &mut list), SyzStatus::SearchBudgetExceeded);
        assert!(list.is_null());
        syz_polytope_free(p);
    }
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/syzkit.h")).unwrap();
    for name in [
        "syz_last_error_message",
        "syz_string_free",
        "syz_polytope_from_json",
        "syz_polytope_to_json",
        "syz_decompose",
        "syz_decomposition_list_get",
        "syz_decomposition_from_json",
        "syz_mirror_json",
        "syz_transition_json",
        "syz_gw_invariant",
        "syz_dual_fan_check",
        "SYZ_STATUS_OK = 0",
        "typedef struct SyzDecomposition SyzDecomposition;",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}
