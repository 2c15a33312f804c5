//! Generators for the standard test functions. Every generator with an
//! alignment precondition evaluates the target with integer arithmetic on
//! the grid index, so breakpoints and extrema land exactly on samples.

use super::{Grid1, Grid2, GridData};
use crate::error::{Error, Result};
use crate::grid::Exponent;
use rand::Rng;
use std::f64::consts::TAU;

fn require_multiple(size: usize, required: usize) -> Result<()> {
    if required == 0 || size % required != 0 || size == 0 {
        Err(Error::Misaligned { size, required })
    } else {
        Ok(())
    }
}

/// Distance from `r/size` to the nearest integer, for `0 <= r < size`.
#[inline]
fn tent_at(r: u128, size: u128) -> f64 {
    let r = r % size;
    r.min(size - r) as f64 / size as f64
}

/// `sin(2*pi*num/den)` evaluated through octant reduction: quarter-period
/// points are exact and samples related by symmetry agree bit-for-bit.
pub fn sin_turns(num: i64, den: u64) -> f64 {
    let den = den as i128;
    let full = 8 * den;
    let mut a = (num as i128).rem_euclid(den) * 8;
    let mut sign = 1.0;
    if a >= full / 2 {
        a -= full / 2;
        sign = -1.0;
    }
    if a > full / 4 {
        a = full / 2 - a;
    }
    if a == 0 {
        return 0.0;
    }
    if a == full / 4 {
        return sign;
    }
    if a > full / 8 {
        sign * (TAU * (full / 4 - a) as f64 / full as f64).cos()
    } else {
        sign * (TAU * a as f64 / full as f64).sin()
    }
}

/// `cos(2*pi*num/den)`, same reduction as [`sin_turns`].
pub fn cos_turns(num: i64, den: u64) -> f64 {
    sin_turns(4 * num + den as i64, 4 * den)
}

/// `phi_n(x) = dist(n x, Z)` sampled on `N` points; `N` must be a multiple
/// of `2n`.
pub fn gen_tent_scaled(n: usize, size: usize) -> Result<Grid1> {
    require_multiple(size, 2 * n)?;
    let s = size as u128;
    Grid1::new(
        (0..size)
            .map(|k| tent_at(n as u128 * k as u128, s))
            .collect(),
    )
}

/// `t_n(x) = sin(2 pi n x)` on `N` points; `N` must be a multiple of `4n`.
pub fn gen_sine(n: usize, size: usize) -> Result<Grid1> {
    require_multiple(size, 4 * n)?;
    Grid1::new(
        (0..size)
            .map(|k| sin_turns((n * k) as i64, size as u64))
            .collect(),
    )
}

/// The bump `g_n(x) = phi(2^n x - 1) * 1[0,1](2^n x - 1)`, supported on
/// `[2^-n, 2^(1-n)]`; `N` must be a multiple of `2^(n+1)`.
pub fn gen_gn(n: usize, size: usize) -> Result<Grid1> {
    if n == 0 || n > 60 {
        return Err(Error::Config(format!("g_n needs 1 <= n <= 60, got {n}")));
    }
    require_multiple(size, 1usize << (n + 1))?;
    Grid1::new((0..size).map(|k| gn_at(n, k, size)).collect())
}

fn gn_at(n: usize, k: usize, size: usize) -> f64 {
    // 2^n x - 1 = t / N with t = 2^n k - N.
    let t = ((k as i128) << n) - size as i128;
    if t < 0 || t > size as i128 {
        0.0
    } else {
        let t = t as u128;
        let s = size as u128;
        t.min(s - t) as f64 / s as f64
    }
}

/// Truncated series `sum_{n<=M} 2^{-n/p} g_n(x) phi(2^n y)` with its
/// truncation metadata.
#[derive(Debug, Clone)]
pub struct SeriesField {
    pub grid: Grid2,
    pub terms: usize,
    pub p: Exponent,
    /// Sup-norm bound on the omitted tail, `2^{-M/p}/4`.
    pub tail_bound: f64,
}

/// Samples the truncated series on an `N x N` grid; `N` must be a multiple
/// of `2^(M+1)`.
pub fn gen_series_f(terms: usize, p: Exponent, size: usize) -> Result<SeriesField> {
    if terms == 0 || terms > 60 {
        return Err(Error::Config(format!(
            "series truncation must be in 1..=60, got {terms}"
        )));
    }
    require_multiple(size, 1usize << (terms + 1))?;
    let coef: Vec<f64> = (1..=terms)
        .map(|n| 2f64.powf(-(n as f64) / p.value()))
        .collect();
    let s = size as u128;
    let grid = Grid2::from_fn(size, size, |i, j| {
        let mut acc = 0.0;
        for n in 1..=terms {
            let g = gn_at(n, i, size);
            if g != 0.0 {
                acc += coef[n - 1] * g * tent_at((j as u128) << n, s);
            }
        }
        acc
    })?;
    Ok(SeriesField {
        grid,
        terms,
        p,
        tail_bound: 2f64.powf(-(terms as f64) / p.value()) * 0.25,
    })
}

/// Indicator of `0 < x <= y <= 1` on an `N x N` grid, where index 0 stands
/// for the point 1 of the half-open period `(0, 1]`.
pub fn gen_staircase(size: usize) -> Result<Grid2> {
    let rep = |k: usize| if k == 0 { size } else { k };
    Grid2::from_fn(size, size, |i, j| if rep(i) <= rep(j) { 1.0 } else { 0.0 })
}

/// Tensor product `g(x) h(y)`.
pub fn gen_product(g: &Grid1, h: &Grid1) -> Grid2 {
    Grid2::from_fn(g.len(), h.len(), |i, j| g.samples()[i] * h.samples()[j])
        .expect("factors are valid grids")
}

/// Coefficients of a bivariate trigonometric polynomial of degree `(n, m)`:
/// `sum a_jk cos cos + b_jk cos sin + c_jk sin cos + d_jk sin sin`, with
/// `cos cos = cos(2 pi j x) cos(2 pi k y)` and so on.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigCoefficients {
    n: usize,
    m: usize,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    pub d: Vec<f64>,
}

impl TrigCoefficients {
    pub fn zeros(n: usize, m: usize) -> Self {
        let len = (n + 1) * (m + 1);
        TrigCoefficients {
            n,
            m,
            a: vec![0.0; len],
            b: vec![0.0; len],
            c: vec![0.0; len],
            d: vec![0.0; len],
        }
    }

    /// Independent uniform coefficients in `[-1, 1]`.
    pub fn random<R: Rng>(n: usize, m: usize, rng: &mut R) -> Self {
        let mut t = TrigCoefficients::zeros(n, m);
        for v in
            t.a.iter_mut()
                .chain(t.b.iter_mut())
                .chain(t.c.iter_mut())
                .chain(t.d.iter_mut())
        {
            *v = rng.gen_range(-1.0..=1.0);
        }
        t
    }

    pub fn degree(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    #[inline]
    pub fn index(&self, j: usize, k: usize) -> usize {
        j * (self.m + 1) + k
    }
}

/// Samples a trigonometric polynomial and its mixed derivative `D1 D2 T` on
/// an `M x N` grid (`M > 2n`, `N > 2m`).
pub fn gen_trigpoly(coeffs: &TrigCoefficients, rows: usize, cols: usize) -> Result<(Grid2, Grid2)> {
    let (n, m) = coeffs.degree();
    if rows <= 2 * n || cols <= 2 * m {
        return Err(Error::Nyquist { n, m, rows, cols });
    }
    let mut t = vec![0.0; rows * cols];
    let mut dt = vec![0.0; rows * cols];
    let four_pi2 = TAU * TAU;
    for i in 0..rows {
        for jdeg in 0..=n {
            let cx = cos_turns((jdeg * i) as i64, rows as u64);
            let sx = sin_turns((jdeg * i) as i64, rows as u64);
            for col in 0..cols {
                let out = i * cols + col;
                for kdeg in 0..=m {
                    let q = coeffs.index(jdeg, kdeg);
                    let (a, b, c, d) = (coeffs.a[q], coeffs.b[q], coeffs.c[q], coeffs.d[q]);
                    if a == 0.0 && b == 0.0 && c == 0.0 && d == 0.0 {
                        continue;
                    }
                    let cy = cos_turns((kdeg * col) as i64, cols as u64);
                    let sy = sin_turns((kdeg * col) as i64, cols as u64);
                    t[out] += a * cx * cy + b * cx * sy + c * sx * cy + d * sx * sy;
                    // d/dx cos = -2 pi j sin, d/dx sin = 2 pi j cos.
                    let w = four_pi2 * (jdeg * kdeg) as f64;
                    dt[out] += w * (a * sx * sy - b * sx * cy - c * cx * sy + d * cx * cy);
                }
            }
        }
    }
    Ok((Grid2::new(rows, cols, t)?, Grid2::new(rows, cols, dt)?))
}

/// Discrete double primitive `F(i, j) = (1/(MN)) sum_{s<i, t<j} f(s, t)` of
/// a grid whose row and column means all vanish.
pub fn gen_cumulative(f: &Grid2) -> Result<Grid2> {
    let (rows, cols) = (f.rows(), f.cols());
    let tol = 1e-9 * f.max_abs().max(1.0);
    for i in 0..rows {
        let mean = f.row(i).iter().sum::<f64>() / cols as f64;
        if mean.abs() > tol {
            return Err(Error::NotMeanZero(format!("row {i} has mean {mean:e}")));
        }
    }
    for j in 0..cols {
        let mean = (0..rows).map(|i| f.at(i, j)).sum::<f64>() / rows as f64;
        if mean.abs() > tol {
            return Err(Error::NotMeanZero(format!("column {j} has mean {mean:e}")));
        }
    }
    let scale = 1.0 / (rows * cols) as f64;
    let mut out = vec![0.0; rows * cols];
    // prefix[j] accumulates sum_{s<i} f(s, j) for the current i.
    let mut prefix = vec![0.0; cols];
    for i in 0..rows {
        let mut run = 0.0;
        for j in 0..cols {
            out[i * cols + j] = run * scale;
            run += prefix[j];
        }
        for (j, pj) in prefix.iter_mut().enumerate() {
            *pj += f.at(i, j);
        }
    }
    Grid2::new(rows, cols, out)
}
