//! C ABI for pvarlab.
//!
//! Grids are opaque handles created from caller-owned sample buffers and
//! released with the matching `*_free` function. Every fallible function
//! returns a [`PvlStatus`] and writes its result through an out-pointer; no
//! Rust panic crosses the boundary.

#![allow(clippy::missing_safety_doc)]

use pvarlab::grid::{Exponent, Grid1, Grid2};
use pvarlab::modulus::{modulus_1d, modulus_iso_2d, modulus_mixed_with_cap, MIXED_TABLE_CAP};
use pvarlab::smoothness::{integral_i, integral_j, integral_k, Enclosure};
use pvarlab::vitali2d::{vitali_ascent, vitali_finest, vitali_oracle};
use pvarlab::Error;
use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PvlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    PMustExceedOne = 3,
    Misaligned = 4,
    OracleLimit = 5,
    CapExceeded = 6,
    ShapeMismatch = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

impl From<Error> for PvlStatus {
    fn from(e: Error) -> Self {
        match e {
            Error::ExponentOne => PvlStatus::PMustExceedOne,
            Error::Misaligned { .. } | Error::Nyquist { .. } => PvlStatus::Misaligned,
            Error::OracleLimit { .. } => PvlStatus::OracleLimit,
            Error::CapExceeded { .. } => PvlStatus::CapExceeded,
            Error::Shape(_) => PvlStatus::ShapeMismatch,
            _ => PvlStatus::InvalidArgument,
        }
    }
}

/// Opaque one-dimensional periodic grid.
pub struct PvlGrid1(Grid1);

/// Opaque two-dimensional periodic grid (row-major samples).
pub struct PvlGrid2(Grid2);

/// Certified enclosure `[lo, hi]` of a truncated integral over
/// `[u_min, u_max] x [v_min, v_max]`; the `v` bounds are NaN for
/// one-dimensional integrals.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PvlEnclosure {
    pub lo: f64,
    pub hi: f64,
    pub u_min: f64,
    pub u_max: f64,
    pub v_min: f64,
    pub v_max: f64,
    pub p: f64,
}

impl From<Enclosure> for PvlEnclosure {
    fn from(e: Enclosure) -> Self {
        PvlEnclosure {
            lo: e.lo,
            hi: e.hi,
            u_min: e.domain.u_min,
            u_max: e.domain.u_max,
            v_min: e.domain.v_min.unwrap_or(f64::NAN),
            v_max: e.domain.v_max.unwrap_or(f64::NAN),
            p: e.p,
        }
    }
}

fn guard<F: FnOnce() -> Result<(), PvlStatus>>(f: F) -> PvlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PvlStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => PvlStatus::Panic,
    }
}

unsafe fn slice<'a>(data: *const f64, len: usize) -> Result<&'a [f64], PvlStatus> {
    if data.is_null() {
        Err(PvlStatus::NullPointer)
    } else {
        Ok(std::slice::from_raw_parts(data, len))
    }
}

unsafe fn handle<'a, T>(h: *const T) -> Result<&'a T, PvlStatus> {
    h.as_ref().ok_or(PvlStatus::NullPointer)
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), PvlStatus> {
    if out.is_null() {
        return Err(PvlStatus::NullPointer);
    }
    out.write(value);
    Ok(())
}

fn exponent(p: f64) -> Result<Exponent, PvlStatus> {
    Ok(Exponent::new(p)?)
}

/// Creates a grid from `len` samples (copied). `len` must be at least 2.
#[no_mangle]
pub unsafe extern "C" fn pvl_grid1_new(
    data: *const f64,
    len: usize,
    out: *mut *mut PvlGrid1,
) -> PvlStatus {
    guard(|| {
        let g = Grid1::new(slice(data, len)?.to_vec())?;
        write(out, Box::into_raw(Box::new(PvlGrid1(g))))
    })
}

/// Releases a grid; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn pvl_grid1_free(grid: *mut PvlGrid1) {
    if !grid.is_null() {
        drop(Box::from_raw(grid));
    }
}

/// Number of samples of a grid (0 for null).
#[no_mangle]
pub unsafe extern "C" fn pvl_grid1_len(grid: *const PvlGrid1) -> usize {
    grid.as_ref().map_or(0, |g| g.0.len())
}

/// Creates a `rows x cols` grid from row-major samples (copied).
#[no_mangle]
pub unsafe extern "C" fn pvl_grid2_new(
    data: *const f64,
    rows: usize,
    cols: usize,
    out: *mut *mut PvlGrid2,
) -> PvlStatus {
    guard(|| {
        let len = rows.checked_mul(cols).ok_or(PvlStatus::InvalidArgument)?;
        let f = Grid2::new(rows, cols, slice(data, len)?.to_vec())?;
        write(out, Box::into_raw(Box::new(PvlGrid2(f))))
    })
}

/// Releases a grid; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn pvl_grid2_free(grid: *mut PvlGrid2) {
    if !grid.is_null() {
        drop(Box::from_raw(grid));
    }
}

/// Writes the shape of a grid.
#[no_mangle]
pub unsafe extern "C" fn pvl_grid2_shape(
    grid: *const PvlGrid2,
    rows: *mut usize,
    cols: *mut usize,
) -> PvlStatus {
    guard(|| {
        let f = &handle(grid)?.0;
        write(rows, f.rows())?;
        write(cols, f.cols())
    })
}

/// Cyclic p-variation `v_p(g)` (exact dynamic program).
#[no_mangle]
pub unsafe extern "C" fn pvl_pvar(grid: *const PvlGrid1, p: f64, out: *mut f64) -> PvlStatus {
    guard(|| {
        let g = &handle(grid)?.0;
        write(out, pvarlab::pvar1d::pvar(g, exponent(p)?))
    })
}

/// `v_p(g)` by exhaustive enumeration (at most 18 samples).
#[no_mangle]
pub unsafe extern "C" fn pvl_pvar_oracle(
    grid: *const PvlGrid1,
    p: f64,
    out: *mut f64,
) -> PvlStatus {
    guard(|| {
        let g = &handle(grid)?.0;
        write(out, pvarlab::pvar_oracle(g, exponent(p)?)?)
    })
}

/// Vitali variation over the finest net (exact at p = 1).
#[no_mangle]
pub unsafe extern "C" fn pvl_vitali_finest(
    grid: *const PvlGrid2,
    p: f64,
    out: *mut f64,
) -> PvlStatus {
    guard(|| {
        let f = &handle(grid)?.0;
        write(out, vitali_finest(f, exponent(p)?))
    })
}

/// Certified lower bound of the Vitali variation by coordinate ascent.
#[no_mangle]
pub unsafe extern "C" fn pvl_vitali_ascent(
    grid: *const PvlGrid2,
    p: f64,
    max_sweeps: usize,
    out: *mut f64,
) -> PvlStatus {
    guard(|| {
        let f = &handle(grid)?.0;
        write(out, vitali_ascent(f, exponent(p)?, max_sweeps).value)
    })
}

/// Vitali variation by exhaustive enumeration (at most 7 x 7).
#[no_mangle]
pub unsafe extern "C" fn pvl_vitali_oracle(
    grid: *const PvlGrid2,
    p: f64,
    out: *mut f64,
) -> PvlStatus {
    guard(|| {
        let f = &handle(grid)?.0;
        write(out, vitali_oracle(f, exponent(p)?)?)
    })
}

unsafe fn copy_out(values: &[f64], out: *mut f64, out_len: usize) -> Result<(), PvlStatus> {
    if out.is_null() {
        return Err(PvlStatus::NullPointer);
    }
    if out_len < values.len() {
        return Err(PvlStatus::BufferTooSmall);
    }
    ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
    Ok(())
}

/// Modulus `omega(g; k/N)_p` for `k = 0..=N` into `out` (length `N + 1`).
#[no_mangle]
pub unsafe extern "C" fn pvl_modulus_1d(
    grid: *const PvlGrid1,
    p: f64,
    out: *mut f64,
    out_len: usize,
) -> PvlStatus {
    guard(|| {
        let g = &handle(grid)?.0;
        copy_out(modulus_1d(g, exponent(p)?).values(), out, out_len)
    })
}

/// Isotropic modulus of a 2D grid for `k = 0..=max(M, N)` into `out`.
#[no_mangle]
pub unsafe extern "C" fn pvl_modulus_iso(
    grid: *const PvlGrid2,
    p: f64,
    out: *mut f64,
    out_len: usize,
) -> PvlStatus {
    guard(|| {
        let f = &handle(grid)?.0;
        copy_out(modulus_iso_2d(f, exponent(p)?).values(), out, out_len)
    })
}

/// Mixed modulus `omega(f; k/M, l/N)_p`, row-major over `k = 0..=M`,
/// `l = 0..=N` (length `(M + 1)(N + 1)`). `cap = 0` selects the default cap.
#[no_mangle]
pub unsafe extern "C" fn pvl_modulus_mixed(
    grid: *const PvlGrid2,
    p: f64,
    cap: usize,
    out: *mut f64,
    out_len: usize,
) -> PvlStatus {
    guard(|| {
        let f = &handle(grid)?.0;
        let cap = if cap == 0 { MIXED_TABLE_CAP } else { cap };
        let t = modulus_mixed_with_cap(f, exponent(p)?, Some(cap))?;
        let mut values = Vec::with_capacity((f.rows() + 1) * (f.cols() + 1));
        for k in 0..=f.rows() {
            for l in 0..=f.cols() {
                values.push(t.at(k, l));
            }
        }
        copy_out(&values, out, out_len)
    })
}

/// Enclosure of `J_p(g)` for a 1D grid (p > 1).
#[no_mangle]
pub unsafe extern "C" fn pvl_integral_j_1d(
    grid: *const PvlGrid1,
    p: f64,
    out: *mut PvlEnclosure,
) -> PvlStatus {
    guard(|| {
        let g = &handle(grid)?.0;
        let e = integral_j(&modulus_1d(g, exponent(p)?))?;
        write(out, e.into())
    })
}

/// Enclosures of `J_p` (isotropic modulus), `K_p` and `I_p` of a 2D grid
/// (p > 1). Any of the out-pointers may be null to skip that integral.
#[no_mangle]
pub unsafe extern "C" fn pvl_integrals(
    grid: *const PvlGrid2,
    p: f64,
    cap: usize,
    j: *mut PvlEnclosure,
    k: *mut PvlEnclosure,
    i: *mut PvlEnclosure,
) -> PvlStatus {
    guard(|| {
        let f = &handle(grid)?.0;
        let p = exponent(p)?.require_above_one()?;
        if !j.is_null() {
            write(j, integral_j(&modulus_iso_2d(f, p))?.into())?;
        }
        if !k.is_null() || !i.is_null() {
            let cap = if cap == 0 { MIXED_TABLE_CAP } else { cap };
            let t = modulus_mixed_with_cap(f, p, Some(cap))?;
            if !k.is_null() {
                write(k, integral_k(&t)?.into())?;
            }
            if !i.is_null() {
                write(i, integral_i(&t)?.into())?;
            }
        }
        Ok(())
    })
}

/// `W_p(f) = v_p(phi_p[f]) + v_p(psi_p[f])`.
#[no_mangle]
pub unsafe extern "C" fn pvl_w_p(grid: *const PvlGrid2, p: f64, out: *mut f64) -> PvlStatus {
    guard(|| {
        let f = &handle(grid)?.0;
        write(out, pvarlab::mixednorm::w_p(f, exponent(p)?))
    })
}

/// Static, NUL-terminated description of a status code.
#[no_mangle]
pub extern "C" fn pvl_status_message(status: PvlStatus) -> *const c_char {
    let s: &'static str = match status {
        PvlStatus::Ok => "ok\0",
        PvlStatus::NullPointer => "null pointer argument\0",
        PvlStatus::InvalidArgument => "invalid argument\0",
        PvlStatus::PMustExceedOne => "p must exceed 1\0",
        PvlStatus::Misaligned => "grid resolution not aligned with the requested structure\0",
        PvlStatus::OracleLimit => "input exceeds the brute-force limit\0",
        PvlStatus::CapExceeded => "grid exceeds the mixed modulus cap\0",
        PvlStatus::ShapeMismatch => "shape mismatch\0",
        PvlStatus::BufferTooSmall => "output buffer too small\0",
        PvlStatus::Panic => "internal error\0",
    };
    s.as_ptr().cast()
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pvl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
