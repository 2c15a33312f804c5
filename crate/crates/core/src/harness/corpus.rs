//! The named grids every suite runs over.

use crate::error::Result;
use crate::grid::{
    gen_cumulative, gen_gn, gen_product, gen_series_f, gen_sine, gen_staircase, gen_tent_scaled,
    gen_trigpoly, Exponent, Grid1, Grid2, TrigCoefficients,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A corpus member with a stable descriptive name.
#[derive(Debug, Clone)]
pub struct Named<G> {
    pub name: String,
    pub grid: G,
}

impl<G> Named<G> {
    fn new(name: impl Into<String>, grid: G) -> Self {
        Named {
            name: name.into(),
            grid,
        }
    }
}

/// Sorted distinct breakpoints in `1..size`, at most `max_jumps` of them.
fn breakpoints(rng: &mut ChaCha8Rng, size: usize, max_jumps: usize) -> Vec<usize> {
    let k = rng.gen_range(1..=max_jumps);
    let mut b: Vec<usize> = (0..k).map(|_| rng.gen_range(1..size)).collect();
    b.sort_unstable();
    b.dedup();
    b
}

fn piece(b: &[usize], i: usize) -> usize {
    b.partition_point(|&x| x <= i)
}

/// Piecewise-constant signal with at most `max_jumps` jumps.
pub fn random_piecewise_constant_1d(rng: &mut ChaCha8Rng, size: usize, max_jumps: usize) -> Grid1 {
    let b = breakpoints(rng, size, max_jumps);
    let vals: Vec<f64> = (0..=b.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    Grid1::new((0..size).map(|i| vals[piece(&b, i)]).collect()).expect("size >= 2")
}

/// Periodic piecewise-linear interpolation of random knot values.
pub fn random_piecewise_linear_1d(rng: &mut ChaCha8Rng, size: usize, max_knots: usize) -> Grid1 {
    let mut knots = breakpoints(rng, size, max_knots);
    knots.insert(0, 0);
    let vals: Vec<f64> = knots.iter().map(|_| rng.gen_range(-1.0..1.0)).collect();
    let k = knots.len();
    Grid1::new(
        (0..size)
            .map(|i| {
                let s = piece(&knots, i) - 1;
                let (x0, v0) = (knots[s], vals[s]);
                let (x1, v1) = if s + 1 < k {
                    (knots[s + 1], vals[s + 1])
                } else {
                    (size, vals[0])
                };
                v0 + (v1 - v0) * (i - x0) as f64 / (x1 - x0) as f64
            })
            .collect(),
    )
    .expect("size >= 2")
}

/// Piecewise-constant field on a random rectangle partition.
pub fn random_piecewise_constant_2d(
    rng: &mut ChaCha8Rng,
    rows: usize,
    cols: usize,
    max_jumps: usize,
) -> Grid2 {
    let br = breakpoints(rng, rows, max_jumps);
    let bc = breakpoints(rng, cols, max_jumps);
    let w = bc.len() + 1;
    let vals: Vec<f64> = (0..(br.len() + 1) * w)
        .map(|_| rng.gen_range(-1.0..1.0))
        .collect();
    Grid2::from_fn(rows, cols, |i, j| vals[piece(&br, i) * w + piece(&bc, j)]).expect("valid size")
}

/// Sum of two random piecewise-linear products plus a piecewise-constant
/// row profile.
pub fn random_piecewise_linear_2d(
    rng: &mut ChaCha8Rng,
    rows: usize,
    cols: usize,
    max_knots: usize,
) -> Grid2 {
    let mut acc = Grid2::zeros(rows, cols).expect("valid size");
    for _ in 0..2 {
        let g = random_piecewise_linear_1d(rng, rows, max_knots);
        let h = random_piecewise_linear_1d(rng, cols, max_knots);
        acc = acc.add(&gen_product(&g, &h)).expect("same shape");
    }
    let r = random_piecewise_constant_1d(rng, rows, max_knots);
    Grid2::from_fn(rows, cols, |i, j| acc.at(i, j) + r.at(i)).expect("valid size")
}

/// Random field with all row and column means zero.
pub fn random_mean_zero(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Grid2 {
    let f = Grid2::from_fn(rows, cols, |_, _| rng.gen_range(-1.0..1.0)).expect("valid size");
    crate::smoothness::decompose_lp0(&f).core
}

/// Small random grids of three kinds (uniform, small integers, half steps)
/// used by the oracle suites.
pub fn random_small(rng: &mut ChaCha8Rng, rows: usize, cols: usize, kind: usize) -> Grid2 {
    Grid2::from_fn(rows, cols, |_, _| match kind % 3 {
        0 => rng.gen_range(-1.0..1.0),
        1 => rng.gen_range(-2i32..=2) as f64,
        _ => rng.gen_range(0..4) as f64 * 0.5,
    })
    .expect("valid size")
}

/// One-dimensional corpus.
pub fn corpus_1d(seed: u64) -> Result<Vec<Named<Grid1>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1d);
    let mut out = Vec::new();
    for n in [1, 2, 4] {
        out.push(Named::new(
            format!("tent n={n} N=64"),
            gen_tent_scaled(n, 64)?,
        ));
        out.push(Named::new(format!("sine n={n} N=64"), gen_sine(n, 64)?));
    }
    for n in [1, 2, 3] {
        out.push(Named::new(format!("bump n={n} N=64"), gen_gn(n, 64)?));
    }
    for k in 0..3 {
        out.push(Named::new(
            format!("piecewise-constant #{k} N=64"),
            random_piecewise_constant_1d(&mut rng, 64, 6),
        ));
        out.push(Named::new(
            format!("piecewise-linear #{k} N=64"),
            random_piecewise_linear_1d(&mut rng, 64, 6),
        ));
    }
    Ok(out)
}

/// Two-dimensional corpus; every member is at most 32 x 32.
pub fn corpus_2d(seed: u64) -> Result<Vec<Named<Grid2>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x2d);
    let mut out = Vec::new();
    let s = |n, size| gen_sine(n, size);
    out.push(Named::new(
        "t1 x t1 32x32",
        gen_product(&s(1, 32)?, &s(1, 32)?),
    ));
    out.push(Named::new(
        "t2 x t1 32x16",
        gen_product(&s(2, 32)?, &s(1, 16)?),
    ));
    out.push(Named::new(
        "tent2 x tent1 16x16",
        gen_product(&gen_tent_scaled(2, 16)?, &gen_tent_scaled(1, 16)?),
    ));
    out.push(Named::new("staircase 16x16", gen_staircase(16)?));
    out.push(Named::new(
        "series M=3 p=2 32x32",
        gen_series_f(3, Exponent::TWO, 32)?.grid,
    ));
    let coeffs = TrigCoefficients::random(2, 1, &mut rng);
    out.push(Named::new(
        "trig poly (2,1) 16x16",
        gen_trigpoly(&coeffs, 16, 16)?.0,
    ));
    let g = random_mean_zero(&mut rng, 16, 16);
    out.push(Named::new(
        "cumulative of mean-zero 16x16",
        gen_cumulative(&g)?,
    ));
    for k in 0..2 {
        out.push(Named::new(
            format!("piecewise-constant #{k} 16x16"),
            random_piecewise_constant_2d(&mut rng, 16, 16, 4),
        ));
        out.push(Named::new(
            format!("piecewise-linear #{k} 16x12"),
            random_piecewise_linear_2d(&mut rng, 16, 12, 4),
        ));
    }
    Ok(out)
}

/// Grids small enough for the exhaustive Vitali oracle.
pub fn corpus_oracle_2d(seed: u64, size: usize) -> Result<Vec<Named<Grid2>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0a);
    let mut out = Vec::new();
    if size % 2 == 0 {
        out.push(Named::new(
            format!("tent1 x tent1 {size}x{size}"),
            gen_product(&gen_tent_scaled(1, size)?, &gen_tent_scaled(1, size)?),
        ));
    }
    if size % 4 == 0 {
        out.push(Named::new(
            format!("t1 x tent1 {size}x{size}"),
            gen_product(&gen_sine(1, size)?, &gen_tent_scaled(1, size)?),
        ));
    }
    for k in 0..3 {
        out.push(Named::new(
            format!("random kind {k} {size}x{size}"),
            random_small(&mut rng, size, size, k),
        ));
    }
    out.push(Named::new(
        format!("piecewise-constant {size}x{size}"),
        random_piecewise_constant_2d(&mut rng, size, size, 2),
    ));
    Ok(out)
}

/// Smooth product `t_n (x) t_m` with `per_period` samples per period on
/// each axis, the family used by the refinement study.
pub fn smooth_product(n: usize, m: usize, per_period: usize) -> Result<Grid2> {
    Ok(gen_product(
        &gen_sine(n, per_period * n)?,
        &gen_sine(m, per_period * m)?,
    ))
}
