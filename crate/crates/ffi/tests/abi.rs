use pvarlab_ffi::*;
use std::ffi::CStr;
use std::ptr;

fn grid1(data: &[f64]) -> *mut PvlGrid1 {
    let mut h = ptr::null_mut();
    assert_eq!(
        unsafe { pvl_grid1_new(data.as_ptr(), data.len(), &mut h) },
        PvlStatus::Ok
    );
    h
}

fn grid2(data: &[f64], rows: usize, cols: usize) -> *mut PvlGrid2 {
    let mut h = ptr::null_mut();
    assert_eq!(
        unsafe { pvl_grid2_new(data.as_ptr(), rows, cols, &mut h) },
        PvlStatus::Ok
    );
    h
}

fn tent(n: usize, size: usize) -> Vec<f64> {
    (0..size)
        .map(|k| {
            let x = (n * k % size) as f64 / size as f64;
            x.min(1.0 - x)
        })
        .collect()
}

#[test]
fn pvar_matches_tent_formula_and_oracle() {
    let g = grid1(&tent(4, 64));
    let mut v = 0.0;
    assert_eq!(unsafe { pvl_pvar(g, 2.0, &mut v) }, PvlStatus::Ok);
    assert!((v - 2f64.sqrt()).abs() < 1e-12);
    let small = grid1(&[0.0, 1.0, 0.25, 0.5, -1.0, 0.0]);
    let (mut a, mut b) = (0.0, 0.0);
    for p in [1.0, 1.5, 2.0, 3.0] {
        assert_eq!(unsafe { pvl_pvar(small, p, &mut a) }, PvlStatus::Ok);
        assert_eq!(unsafe { pvl_pvar_oracle(small, p, &mut b) }, PvlStatus::Ok);
        assert_eq!(a.to_bits(), b.to_bits());
    }
    assert_eq!(unsafe { pvl_grid1_len(g) }, 64);
    unsafe {
        pvl_grid1_free(g);
        pvl_grid1_free(small);
    }
}

#[test]
fn vitali_of_product_is_product_of_variations() {
    let g = tent(1, 6);
    let data: Vec<f64> = g
        .iter()
        .flat_map(|a| g.iter().map(move |b| a * b))
        .collect();
    let f = grid2(&data, 6, 6);
    let (mut rows, mut cols) = (0, 0);
    assert_eq!(
        unsafe { pvl_grid2_shape(f, &mut rows, &mut cols) },
        PvlStatus::Ok
    );
    assert_eq!((rows, cols), (6, 6));
    let g1 = grid1(&g);
    for p in [1.0, 2.0, 3.0] {
        let (mut o, mut a, mut v1) = (0.0, 0.0, 0.0);
        assert_eq!(unsafe { pvl_vitali_oracle(f, p, &mut o) }, PvlStatus::Ok);
        assert_eq!(
            unsafe { pvl_vitali_ascent(f, p, 32, &mut a) },
            PvlStatus::Ok
        );
        assert_eq!(unsafe { pvl_pvar(g1, p, &mut v1) }, PvlStatus::Ok);
        assert_eq!(a, o);
        assert!((o - v1 * v1).abs() < 1e-12);
    }
    let mut fin = 0.0;
    assert_eq!(
        unsafe { pvl_vitali_finest(f, 1.0, &mut fin) },
        PvlStatus::Ok
    );
    assert!((fin - 1.0).abs() < 1e-12);
    unsafe {
        pvl_grid2_free(f);
        pvl_grid1_free(g1);
    }
}

#[test]
fn moduli_and_integrals() {
    let s: Vec<f64> = (0..16)
        .map(|k| (std::f64::consts::TAU * k as f64 / 16.0).sin())
        .collect();
    let data: Vec<f64> = s
        .iter()
        .flat_map(|a| s.iter().map(move |b| a * b))
        .collect();
    let f = grid2(&data, 16, 16);
    let mut table = vec![0.0; 17 * 17];
    assert_eq!(
        unsafe { pvl_modulus_mixed(f, 2.0, 0, table.as_mut_ptr(), table.len()) },
        PvlStatus::Ok
    );
    assert_eq!(table[0], 0.0);
    assert!(table.windows(2).take(16).all(|w| w[0] <= w[1]));
    let mut short = vec![0.0; 4];
    assert_eq!(
        unsafe { pvl_modulus_mixed(f, 2.0, 0, short.as_mut_ptr(), short.len()) },
        PvlStatus::BufferTooSmall
    );
    let mut iso = vec![0.0; 17];
    assert_eq!(
        unsafe { pvl_modulus_iso(f, 2.0, iso.as_mut_ptr(), iso.len()) },
        PvlStatus::Ok
    );
    let blank = PvlEnclosure {
        lo: 0.0,
        hi: 0.0,
        u_min: 0.0,
        u_max: 0.0,
        v_min: 0.0,
        v_max: 0.0,
        p: 0.0,
    };
    let (mut j, mut k, mut i) = (blank, blank, blank);
    assert_eq!(
        unsafe { pvl_integrals(f, 2.0, 0, &mut j, &mut k, &mut i) },
        PvlStatus::Ok
    );
    for e in [j, k, i] {
        assert!(e.lo <= e.hi && e.lo > 0.0);
        assert_eq!(e.p, 2.0);
    }
    assert!(j.v_min.is_nan());
    assert_eq!(i.u_min, 1.0 / 16.0);
    assert_eq!(
        unsafe { pvl_integrals(f, 1.0, 0, &mut j, ptr::null_mut(), ptr::null_mut()) },
        PvlStatus::PMustExceedOne
    );
    let g = grid1(&s);
    let mut m1 = vec![0.0; 17];
    assert_eq!(
        unsafe { pvl_modulus_1d(g, 1.0, m1.as_mut_ptr(), m1.len()) },
        PvlStatus::Ok
    );
    assert_eq!(unsafe { pvl_integral_j_1d(g, 2.0, &mut j) }, PvlStatus::Ok);
    let mut w = 0.0;
    assert_eq!(unsafe { pvl_w_p(f, 2.0, &mut w) }, PvlStatus::Ok);
    assert!(w > 0.0);
    unsafe {
        pvl_grid2_free(f);
        pvl_grid1_free(g);
    }
}

#[test]
fn errors_are_reported_not_raised() {
    let mut h = ptr::null_mut();
    assert_eq!(
        unsafe { pvl_grid1_new(ptr::null(), 4, &mut h) },
        PvlStatus::NullPointer
    );
    let one = [1.0];
    assert_eq!(
        unsafe { pvl_grid1_new(one.as_ptr(), 1, &mut h) },
        PvlStatus::InvalidArgument
    );
    let nan = [0.0, f64::NAN];
    assert_eq!(
        unsafe { pvl_grid1_new(nan.as_ptr(), 2, &mut h) },
        PvlStatus::InvalidArgument
    );
    let g = grid1(&[0.0, 1.0, 0.0]);
    let mut v = 0.0;
    assert_eq!(
        unsafe { pvl_pvar(g, 0.5, &mut v) },
        PvlStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { pvl_pvar(g, 2.0, ptr::null_mut()) },
        PvlStatus::NullPointer
    );
    assert_eq!(
        unsafe { pvl_pvar(ptr::null(), 2.0, &mut v) },
        PvlStatus::NullPointer
    );
    let big = vec![0.0; 8 * 8];
    let f = grid2(&big, 8, 8);
    assert_eq!(
        unsafe { pvl_vitali_oracle(f, 2.0, &mut v) },
        PvlStatus::OracleLimit
    );
    let mut t = vec![0.0; 81];
    assert_eq!(
        unsafe { pvl_modulus_mixed(f, 2.0, 4, t.as_mut_ptr(), t.len()) },
        PvlStatus::CapExceeded
    );
    assert_eq!(
        unsafe { pvl_grid2_new(big.as_ptr(), usize::MAX, 2, &mut ptr::null_mut()) },
        PvlStatus::InvalidArgument
    );
    unsafe {
        pvl_grid1_free(g);
        pvl_grid2_free(f);
        pvl_grid1_free(ptr::null_mut());
        pvl_grid2_free(ptr::null_mut());
    }
}

#[test]
fn static_strings() {
    let msg = unsafe { CStr::from_ptr(pvl_status_message(PvlStatus::PMustExceedOne)) };
    assert_eq!(msg.to_str().unwrap(), "p must exceed 1");
    let v = unsafe { CStr::from_ptr(pvl_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
