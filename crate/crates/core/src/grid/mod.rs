//! Sampled periodic functions and the exponent type.
//!
//! A [`Grid1`] with `N` samples represents a 1-periodic function sampled at
//! `x = k/N`; a [`Grid2`] with shape `M x N` samples a doubly periodic
//! function at `(i/M, j/N)`. Indices are always taken modulo the period.

mod generators;
mod io;

pub use generators::{
    gen_cumulative, gen_gn, gen_product, gen_series_f, gen_sine, gen_staircase, gen_tent_scaled,
    gen_trigpoly, sin_turns, SeriesField, TrigCoefficients,
};
pub use io::{load_csv, read_csv, save_csv, write_csv, AnyGrid};

use crate::error::{Error, Result};
use serde::Serialize;

/// Variation / integrability exponent `p >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Exponent(f64);

impl Exponent {
    pub const ONE: Exponent = Exponent(1.0);
    pub const TWO: Exponent = Exponent(2.0);

    pub fn new(p: f64) -> Result<Self> {
        if p.is_finite() && p >= 1.0 {
            Ok(Exponent(p))
        } else {
            Err(Error::BadExponent(p))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self.0 == 1.0
    }

    /// `1/p`.
    #[inline]
    pub fn inv(self) -> f64 {
        1.0 / self.0
    }

    /// Conjugate exponent `p' = p/(p-1)`; infinite for `p = 1`.
    pub fn conj(self) -> f64 {
        if self.is_one() {
            f64::INFINITY
        } else {
            self.0 / (self.0 - 1.0)
        }
    }

    /// `1/p' = 1 - 1/p` (zero for `p = 1`).
    pub fn inv_conj(self) -> f64 {
        1.0 - 1.0 / self.0
    }

    /// Rejects `p = 1` for quantities that only exist for `p > 1`.
    pub fn require_above_one(self) -> Result<Self> {
        if self.0 > 1.0 {
            Ok(self)
        } else {
            Err(Error::ExponentOne)
        }
    }

    /// `|x|^p`, with exact fast paths for p = 1 and p = 2.
    #[inline]
    pub fn pow_abs(self, x: f64) -> f64 {
        let a = x.abs();
        if self.0 == 1.0 {
            a
        } else if self.0 == 2.0 {
            a * a
        } else {
            a.powf(self.0)
        }
    }

    /// `s^(1/p)` for a nonnegative sum `s`.
    #[inline]
    pub fn root(self, s: f64) -> f64 {
        if self.0 == 1.0 {
            s
        } else if self.0 == 2.0 {
            s.sqrt()
        } else {
            s.powf(1.0 / self.0)
        }
    }
}

impl std::fmt::Display for Exponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Common access to the raw sample buffer of either grid type.
pub trait GridData {
    fn samples(&self) -> &[f64];

    fn max_abs(&self) -> f64 {
        self.samples().iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

fn check_finite(values: &[f64]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(Error::NonFinite(i)),
        None => Ok(()),
    }
}

/// Uniform samples of a 1-periodic function.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid1 {
    samples: Vec<f64>,
}

impl Grid1 {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::TooShort(values.len()));
        }
        check_finite(&values)?;
        Ok(Grid1 { samples: values })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Grid1::new(vec![0.0; n])
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    /// Always false; a grid holds at least two samples.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Sample at index `k` modulo the period.
    #[inline]
    pub fn at(&self, k: usize) -> f64 {
        self.samples[k % self.samples.len()]
    }

    pub fn step(&self) -> f64 {
        1.0 / self.len() as f64
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Grid1 {
        Grid1 {
            samples: self.samples.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn scale(&self, lambda: f64) -> Grid1 {
        self.map(|v| lambda * v)
    }

    /// Circular difference `g(x + h) - g(x)` with `h = shift/N`.
    pub fn shift_diff(&self, shift: usize) -> Grid1 {
        let n = self.len();
        Grid1 {
            samples: (0..n)
                .map(|k| self.at(k + shift) - self.samples[k])
                .collect(),
        }
    }

    pub fn sub(&self, other: &Grid1) -> Result<Grid1> {
        if self.len() != other.len() {
            return Err(Error::Shape(format!(
                "lengths {} and {} differ",
                self.len(),
                other.len()
            )));
        }
        Ok(Grid1 {
            samples: self
                .samples
                .iter()
                .zip(&other.samples)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.samples
    }
}

impl GridData for Grid1 {
    fn samples(&self) -> &[f64] {
        &self.samples
    }
}

/// Uniform samples of a doubly 1-periodic function, stored row-major.
/// Rows are indexed by the first variable `x`, columns by `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid2 {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Grid2 {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows < 2 {
            return Err(Error::TooShort(rows));
        }
        if cols < 2 {
            return Err(Error::TooShort(cols));
        }
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} values for a {}x{} grid",
                data.len(),
                rows,
                cols
            )));
        }
        check_finite(&data)?;
        Ok(Grid2 { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Grid2::new(m, n, rows.concat())
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> f64,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Grid2::new(rows, cols, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Grid2::new(rows, cols, vec![0.0; rows * cols])
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Sample at `(i, j)`, both indices modulo the period.
    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.data[(i % self.rows) * self.cols + (j % self.cols)]
    }

    /// Row `i` (the x-section at `x = i/M`) as a slice.
    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        let i = i % self.rows;
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_grid(&self, i: usize) -> Grid1 {
        Grid1 {
            samples: self.row(i).to_vec(),
        }
    }

    pub fn col_grid(&self, j: usize) -> Grid1 {
        Grid1 {
            samples: (0..self.rows).map(|i| self.at(i, j)).collect(),
        }
    }

    pub fn transpose(&self) -> Grid2 {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.data[i * self.cols + j]);
            }
        }
        Grid2 {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Grid2 {
        Grid2 {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn scale(&self, lambda: f64) -> Grid2 {
        self.map(|v| lambda * v)
    }

    pub fn sub(&self, other: &Grid2) -> Result<Grid2> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn add(&self, other: &Grid2) -> Result<Grid2> {
        self.zip_with(other, |a, b| a + b)
    }

    fn zip_with(&self, other: &Grid2, f: impl Fn(f64, f64) -> f64) -> Result<Grid2> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Grid2 {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    /// Circular first difference in x: `f(x + h, y) - f(x, y)`, `h = shift/M`.
    pub fn row_shift_diff(&self, shift: usize) -> Grid2 {
        let mut data = Vec::with_capacity(self.data.len());
        for i in 0..self.rows {
            let (a, b) = (self.row(i + shift), self.row(i));
            data.extend(a.iter().zip(b).map(|(x, y)| x - y));
        }
        Grid2 {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }
}

impl GridData for Grid2 {
    fn samples(&self) -> &[f64] {
        &self.data
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_grid1_examples() {
        assert_eq!(Grid1::new(vec![0.0, 0.0]).unwrap().len(), 2);
        assert_eq!(Grid1::new(vec![1.0, 0.0, 1.0, 0.0]).unwrap().len(), 4);
        assert_eq!(Grid1::new(vec![1.0, f64::NAN]), Err(Error::NonFinite(1)));
        assert_eq!(Grid1::new(vec![3.0]), Err(Error::TooShort(1)));
    }

    #[test]
    fn exponent_conjugate() {
        let p = Exponent::new(3.0).unwrap();
        assert!((p.inv() + 1.0 / p.conj() - 1.0).abs() < 1e-15);
        assert_eq!(Exponent::ONE.inv_conj(), 0.0);
        assert!(Exponent::ONE.conj().is_infinite());
        assert!(Exponent::new(0.5).is_err());
        assert!(Exponent::new(f64::INFINITY).is_err());
        assert_eq!(Exponent::ONE.require_above_one(), Err(Error::ExponentOne));
    }

    #[test]
    fn periodic_indexing() {
        let f = Grid2::from_rows(&[vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0]]).unwrap();
        assert_eq!(f.at(2, 4), 2.0);
        assert_eq!(f.row(3), &[4.0, 5.0, 6.0]);
        assert_eq!(f.transpose().at(2, 1), 6.0);
        assert_eq!(f.col_grid(1).samples(), &[2.0, 5.0]);
    }
}
