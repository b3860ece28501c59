use std::ffi::{CStr, CString};
use std::ptr;

use rider_types_ffi::*;

fn parse(s: &str) -> *mut RtMoveSet {
    let text = CString::new(s).unwrap();
    let mut ms = ptr::null_mut();
    assert_eq!(unsafe { rt_moveset_parse(text.as_ptr(), &mut ms) }, RtStatus::Ok);
    ms
}

fn last_error() -> String {
    let p = rt_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn moveset_round_trip() {
    let ms = parse("queen");
    let mut r = 0;
    assert_eq!(unsafe { rt_moveset_r(ms, &mut r) }, RtStatus::Ok);
    assert_eq!(r, 4);
    unsafe { rt_moveset_free(ms) };
}

#[test]
fn parse_errors_carry_messages() {
    let text = CString::new("1,0;2,0").unwrap();
    let mut ms = ptr::null_mut();
    assert_eq!(
        unsafe { rt_moveset_parse(text.as_ptr(), &mut ms) },
        RtStatus::ParseError
    );
    assert!(ms.is_null());
    assert!(last_error().contains("slope"));
    assert_eq!(unsafe { rt_moveset_parse(ptr::null(), &mut ms) }, RtStatus::NullPointer);
}

#[test]
fn closed_form_and_table() {
    let mut v = 0;
    assert_eq!(unsafe { rt_t3_closed_form(4, &mut v) }, RtStatus::Ok);
    assert_eq!(v, 36);
    let mut a = RtAnnotation::Exact;
    assert_eq!(unsafe { rt_known_types(4, 4, &mut v, &mut a) }, RtStatus::Ok);
    assert_eq!((v, a), (574, RtAnnotation::QueenOnly));
    assert_eq!(unsafe { rt_known_types(4, 5, &mut v, &mut a) }, RtStatus::NotFound);
}

#[test]
fn engines() {
    let ms = parse("1,0;0,1;1,1");
    let (mut l, mut u) = (0, 0);
    assert_eq!(unsafe { rt_types_ff(ms, 3, &mut l, &mut u) }, RtStatus::Ok);
    assert_eq!((l, u), (102, 17));

    let mut census = ptr::null_mut();
    assert_eq!(unsafe { rt_census_geometric(ms, 3, 1, &mut census) }, RtStatus::Ok);
    let (mut size, mut exact) = (0, false);
    assert_eq!(unsafe { rt_census_size(census, &mut size, &mut exact) }, RtStatus::Ok);
    assert_eq!((size, exact), (17, true));
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { rt_census_to_json(census, &mut json) }, RtStatus::Ok);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["size"], 17);
    unsafe {
        rt_string_free(json);
        rt_census_free(census);
    }

    let board = CString::new("square").unwrap();
    let queen = parse("queen");
    let mut count = 0;
    assert_eq!(
        unsafe { rt_count_nonattacking(queen, board.as_ptr(), 3, 2, &mut count) },
        RtStatus::Ok
    );
    assert_eq!(count, 8);
    let bad = CString::new("hexagon").unwrap();
    assert_eq!(
        unsafe { rt_count_nonattacking(queen, bad.as_ptr(), 3, 2, &mut count) },
        RtStatus::ParseError
    );
    unsafe {
        rt_moveset_free(ms);
        rt_moveset_free(queen);
    }
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(rt_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/rider_types.h")).unwrap();
    for name in [
        "rt_moveset_parse",
        "rt_moveset_free",
        "rt_types_ff",
        "rt_census_to_json",
        "rt_string_free",
        "rt_last_error_message",
        "RT_STATUS_OK",
        "typedef struct RtMoveSet RtMoveSet",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}
