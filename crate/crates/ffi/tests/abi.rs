use std::ffi::{CStr, CString};
use std::ptr;

use mincayley_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = mc_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe fn cayley(spec: &str, gens: &str) -> *mut McGraph {
    let mut g = ptr::null_mut();
    assert_eq!(mc_group_new(c(spec).as_ptr(), &mut g), McStatus::Ok);
    let mut graph = ptr::null_mut();
    assert_eq!(mc_cayley_graph(g, c(gens).as_ptr(), &mut graph), McStatus::Ok);
    mc_group_free(g);
    graph
}

#[test]
fn order_21_graph_through_the_abi() {
    unsafe {
        let graph = cayley("sdp:7,3,2", "(1,0),(0,1)");
        assert_eq!(mc_graph_vertex_count(graph), 21);
        assert_eq!(mc_graph_edge_count(graph), 42);
        let (mut lo, mut hi) = (0, 0);
        let mut colors = vec![usize::MAX; 21];
        assert_eq!(mc_chromatic_number(graph, 10.0, &mut lo, &mut hi, colors.as_mut_ptr()), McStatus::Ok);
        assert_eq!((lo, hi), (4, 4));
        assert!(colors.iter().all(|&x| x < 4));
        let mut omega = 0;
        assert_eq!(mc_clique_number(graph, &mut omega), McStatus::Ok);
        assert_eq!(omega, 3);
        mc_graph_free(graph);
    }
}

#[test]
fn json_round_trip() {
    unsafe {
        let graph = cayley("cyclic:5", "1");
        let mut json = ptr::null_mut();
        assert_eq!(mc_graph_to_json(graph, &mut json), McStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(mc_graph_from_json(json, &mut back), McStatus::Ok);
        assert_eq!(mc_graph_vertex_count(back), 5);
        assert_eq!(mc_graph_edge_count(back), 5);
        let (mut lo, mut hi) = (0, 0);
        assert_eq!(mc_chromatic_number(back, 5.0, &mut lo, &mut hi, ptr::null_mut()), McStatus::Ok);
        assert_eq!(lo, 3);
        mc_string_free(json);
        mc_graph_free(back);
        mc_graph_free(graph);
    }
}

#[test]
fn error_codes_and_messages() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(mc_group_new(c("cyclic:").as_ptr(), &mut g), McStatus::Parse);
        assert!(g.is_null());
        assert!(last_error().contains("parse"));
        assert_eq!(mc_group_new(c("sym:9").as_ptr(), &mut g), McStatus::Guard);
        assert_eq!(mc_group_new(ptr::null(), &mut g), McStatus::NullPointer);
        assert_eq!(mc_group_new(c("cyclic:4").as_ptr(), ptr::null_mut()), McStatus::NullPointer);

        assert_eq!(mc_group_new(c("cyclic:4").as_ptr(), &mut g), McStatus::Ok);
        assert!(mc_last_error_message().is_null());
        assert_eq!(mc_group_order(g), 4);
        let mut graph = ptr::null_mut();
        assert_eq!(mc_cayley_graph(g, c("7").as_ptr(), &mut graph), McStatus::Invalid);
        let bad = [0xffu8, 0];
        assert_eq!(mc_cayley_graph(g, bad.as_ptr().cast(), &mut graph), McStatus::InvalidUtf8);
        mc_group_free(g);

        assert_eq!(mc_graph_from_json(c("{\"n\": 2}").as_ptr(), &mut graph), McStatus::Parse);
        let loop_edge = c("{\"n\": 2, \"edges\": [[1, 1]]}");
        assert_eq!(mc_graph_from_json(loop_edge.as_ptr(), &mut graph), McStatus::Invalid);
        assert!(last_error().contains("u < v"));
        assert_eq!(mc_group_order(ptr::null()), 0);
        mc_graph_free(ptr::null_mut());
        mc_string_free(ptr::null_mut());
    }
}

#[test]
fn budget_reports_bounds() {
    unsafe {
        let graph = cayley("dicyclic:32", "(8,0),(4,0),(5,1),(3,1),(6,1)");
        let (mut lo, mut hi) = (0, 0);
        assert_eq!(mc_chromatic_number(graph, 0.0, &mut lo, &mut hi, ptr::null_mut()), McStatus::Budget);
        assert!(lo <= 7 && 7 <= hi && lo >= 4);
        assert_eq!(mc_chromatic_number(graph, -1.0, &mut lo, &mut hi, ptr::null_mut()), McStatus::Invalid);
        mc_graph_free(graph);
    }
}

#[test]
fn header_is_in_sync() {
    let header = include_str!("../include/mincayley.h");
    for name in [
        "mc_group_new",
        "mc_group_free",
        "mc_cayley_graph",
        "mc_graph_from_json",
        "mc_graph_to_json",
        "mc_chromatic_number",
        "mc_clique_number",
        "mc_last_error_message",
        "MC_STATUS_BUDGET = 7",
        "typedef struct McGraph McGraph;",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
    assert_eq!(unsafe { CStr::from_ptr(mc_version()) }.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
