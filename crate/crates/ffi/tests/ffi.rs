use std::ffi::{CStr, CString};
use std::ptr;

use gowers_ffi::*;

fn sum_spec(m: usize) -> GowersSpec {
    GowersSpec {
        kind: GowersKind::GowersSum,
        m_sum: m,
        m_prod: 0,
        distinct_values: false,
        closure: true,
        sum_generators_positive: false,
    }
}

fn last_error() -> String {
    let p = gowers_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn coloring_round_trip_and_witness() {
    let text = CString::new("k=1 N=4 r=2 space=Xk\n1 0\n2 0\n3 1\n4 1\n").unwrap();
    let mut c = ptr::null_mut();
    unsafe {
        assert_eq!(
            gowers_coloring_parse(text.as_ptr(), &mut c),
            GowersStatus::Ok
        );
        assert_eq!(gowers_coloring_cell_count(c), 4);
        assert_eq!(gowers_coloring_num_colors(c), 2);
        let mut color = 9;
        assert_eq!(
            gowers_coloring_color_of(c, [3u64].as_ptr(), 1, &mut color),
            GowersStatus::Ok
        );
        assert_eq!(color, 1);
        assert_eq!(
            gowers_coloring_color_of(c, [9u64].as_ptr(), 1, &mut color),
            GowersStatus::InvalidArgument
        );

        let mut s = ptr::null_mut();
        assert_eq!(gowers_coloring_serialize(c, &mut s), GowersStatus::Ok);
        assert_eq!(CStr::from_ptr(s).to_bytes(), text.as_bytes());
        gowers_string_free(s);

        // {1,1} generates {1,2}, both color 0
        let mut w = ptr::null_mut();
        assert_eq!(
            gowers_find_witness(c, &sum_spec(2), &mut w),
            GowersStatus::Ok
        );
        assert!(!w.is_null());
        assert_eq!(gowers_witness_color(w), 0);
        let mut cells = ptr::null_mut();
        assert_eq!(gowers_witness_cells(w, &mut cells), GowersStatus::Ok);
        assert_eq!(gowers_tuple_list_len(cells), 2);
        let mut out = [0u64; 1];
        gowers_tuple_list_get(cells, 1, out.as_mut_ptr());
        assert_eq!(out, [2]);
        gowers_tuple_list_free(cells);
        gowers_witness_free(w);
        gowers_coloring_free(c);
    }
}

#[test]
fn no_witness_gives_null() {
    let text = CString::new("k=1 N=4 r=2 space=Xk\n1 0\n2 1\n3 1\n4 0\n").unwrap();
    unsafe {
        let mut c = ptr::null_mut();
        gowers_coloring_parse(text.as_ptr(), &mut c);
        let mut w = ptr::null_mut();
        assert_eq!(
            gowers_find_witness(c, &sum_spec(2), &mut w),
            GowersStatus::Ok
        );
        assert!(w.is_null());
        gowers_coloring_free(c);
    }
}

#[test]
fn errors_carry_messages() {
    let bad = CString::new("k=1 N=2 r=2 space=Xk\n1 0\n").unwrap();
    let mut c = ptr::null_mut();
    unsafe {
        assert_eq!(
            gowers_coloring_parse(bad.as_ptr(), &mut c),
            GowersStatus::ParseError
        );
        assert!(c.is_null());
        assert!(last_error().contains("uncolored"), "{}", last_error());
        assert_eq!(
            gowers_coloring_parse(ptr::null(), &mut c),
            GowersStatus::NullArgument
        );
        assert!(last_error().contains("text"));
        let ok = CString::new("k=1 N=1 r=1 space=Xk\n1 0\n").unwrap();
        assert_eq!(gowers_coloring_parse(ok.as_ptr(), &mut c), GowersStatus::Ok);
        assert!(gowers_last_error().is_null());
        gowers_coloring_free(c);
    }
    assert!(gowers_tuple_list_new(0).is_null());
}

#[test]
fn structures() {
    unsafe {
        let gens = gowers_tuple_list_new(2);
        assert_eq!(
            gowers_tuple_list_push(gens, [1u64, 0].as_ptr(), 2),
            GowersStatus::Ok
        );
        assert_eq!(
            gowers_tuple_list_push(gens, [2u64, 5].as_ptr(), 2),
            GowersStatus::Ok
        );
        assert_eq!(
            gowers_tuple_list_push(gens, [2u64].as_ptr(), 1),
            GowersStatus::InvalidArgument
        );
        let mut vals = ptr::null_mut();
        assert_eq!(
            gowers_structure_values(GowersKind::GowersSum, gens, false, &mut vals),
            GowersStatus::Ok
        );
        assert_eq!(gowers_tuple_list_len(vals), 5);
        assert_eq!(gowers_tuple_list_dim(vals), 2);
        let mut first = [0u64; 2];
        gowers_tuple_list_get(vals, 0, first.as_mut_ptr());
        assert_eq!(first, [1, 0]);
        assert_eq!(
            gowers_tuple_list_get(vals, 5, first.as_mut_ptr()),
            GowersStatus::InvalidArgument
        );
        gowers_tuple_list_free(vals);

        let mut none = ptr::null_mut();
        assert_eq!(
            gowers_structure_values(GowersKind::GowersProduct, gens, false, &mut none),
            GowersStatus::InvalidArgument
        );
        assert!(
            last_error().contains("coordinate 2 is 0"),
            "{}",
            last_error()
        );
        gowers_tuple_list_free(gens);
    }
}

#[test]
fn search_entry_points() {
    unsafe {
        let mut t = GowersThreshold::default();
        assert_eq!(
            gowers_threshold(1, 2, &sum_spec(2), GowersSpace::Xk, 10, 0, &mut t),
            GowersStatus::Ok
        );
        assert!(t.resolved);
        assert_eq!(t.value, 5);

        let mut verdict = GowersVerdict::BudgetExceeded;
        let mut c = ptr::null_mut();
        assert_eq!(
            gowers_avoiding_coloring(
                1,
                4,
                GowersSpace::Xk,
                2,
                &sum_spec(2),
                0,
                &mut verdict,
                &mut c
            ),
            GowersStatus::Ok
        );
        assert_eq!(verdict, GowersVerdict::Avoiding);
        assert!(!c.is_null());
        gowers_coloring_free(c);
        assert_eq!(
            gowers_avoiding_coloring(
                1,
                5,
                GowersSpace::Xk,
                2,
                &sum_spec(2),
                0,
                &mut verdict,
                &mut c
            ),
            GowersStatus::Ok
        );
        assert_eq!(verdict, GowersVerdict::Unavoidable);
        assert!(c.is_null());

        let mut s = ptr::null_mut();
        assert_eq!(
            gowers_encode_dimacs(1, 5, GowersSpace::Xk, 2, &sum_spec(2), &mut s),
            GowersStatus::Ok
        );
        let text = CStr::from_ptr(s).to_string_lossy().into_owned();
        gowers_string_free(s);
        assert!(text.lines().any(|l| l == "p cnf 10 22"));

        let mut bad = sum_spec(0);
        bad.m_sum = 0;
        assert_eq!(
            gowers_threshold(1, 2, &bad, GowersSpace::Xk, 10, 0, &mut t),
            GowersStatus::InvalidArgument
        );
    }
}

#[test]
fn scaling_check() {
    let (mut l, mut r) = ([0u64; 2], [0u64; 2]);
    let mut passed = true;
    unsafe {
        let st = gowers_check_scaling(
            [1u64, 2].as_ptr(),
            [1u64, 0].as_ptr(),
            [1u64, 1].as_ptr(),
            2,
            1,
            &mut passed,
            l.as_mut_ptr(),
            r.as_mut_ptr(),
        );
        assert_eq!(st, GowersStatus::Ok);
        assert!(!passed);
        assert_eq!((l, r), ([1, 1], [1, 2]));
        gowers_check_scaling(
            [2u64, 2].as_ptr(),
            [1u64, 0].as_ptr(),
            [1u64, 1].as_ptr(),
            2,
            1,
            &mut passed,
            ptr::null_mut(),
            ptr::null_mut(),
        );
        assert!(passed);
        assert_eq!(
            gowers_check_scaling(
                [1u64].as_ptr(),
                [1u64].as_ptr(),
                [1u64].as_ptr(),
                1,
                1,
                &mut passed,
                ptr::null_mut(),
                ptr::null_mut()
            ),
            GowersStatus::InvalidArgument
        );
    }
}
