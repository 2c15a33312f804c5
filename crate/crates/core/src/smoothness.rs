//! Marginal decomposition and the weighted modulus integrals
//!
//! ```text
//! J_p(f) = int_0^1 t^{-1/p} omega(f; t) dt/t
//! K_p(f) = int_0^1 t^{-1/p} [omega(f; t, 1) + omega(f; 1, t)] dt/t
//! I_p(f) = int_0^1 int_0^1 (uv)^{-1/p} omega(f; u, v) du/u dv/v
//! ```
//!
//! Grid data cannot resolve the region below one grid step, so every
//! integral is taken over `[u_min, 1]` (and `[v_min, 1]`) with `u_min`
//! a grid point. On each cell the weight is integrated exactly and the
//! modulus, being monotone, is bracketed by its endpoint values; the result
//! is a certified enclosure of the truncated integral.

use crate::check::Comparison;
use crate::error::{Error, Result};
use crate::grid::{Exponent, Grid1, Grid2, GridData};
use crate::modulus::{
    modulus_iso_2d, modulus_mixed_with_cap, ModulusTable1D, ModulusTable2D, MIXED_TABLE_CAP,
};
use crate::sum::ExactSum;
use serde::Serialize;

/// Integration domain of an enclosure. One-dimensional integrals leave the
/// `v` range empty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Domain {
    pub u_min: f64,
    pub u_max: f64,
    pub v_min: Option<f64>,
    pub v_max: Option<f64>,
}

/// Certified interval `[lo, hi]` for a truncated integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Enclosure {
    pub lo: f64,
    pub hi: f64,
    pub domain: Domain,
    pub p: f64,
}

impl Enclosure {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// Does `self` lie inside `outer` up to an absolute slack?
    pub fn nested_in(&self, outer: &Enclosure, slack: f64) -> bool {
        self.lo >= outer.lo - slack && self.hi <= outer.hi + slack
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }
}

/// `f = core + phi1(x) + phi2(y)` with all row and column means of `core`
/// equal to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub core: Grid2,
    /// Row means `phi1(x) = int f(x, t) dt`.
    pub marginal_x: Grid1,
    /// Column means minus the grand mean.
    pub marginal_y: Grid1,
}

impl Decomposition {
    pub fn reconstruct(&self) -> Grid2 {
        let (a, b) = (self.marginal_x.samples(), self.marginal_y.samples());
        Grid2::from_fn(self.core.rows(), self.core.cols(), |i, j| {
            self.core.at(i, j) + a[i] + b[j]
        })
        .expect("finite values")
    }
}

fn exact_mean(values: impl Iterator<Item = f64>, count: usize) -> f64 {
    let mut acc = ExactSum::new();
    values.for_each(|v| acc.add(v));
    acc.value() / count as f64
}

/// Splits off the marginal averages.
pub fn decompose_lp0(f: &Grid2) -> Decomposition {
    let (m, n) = (f.rows(), f.cols());
    let phi1: Vec<f64> = (0..m)
        .map(|i| exact_mean(f.row(i).iter().copied(), n))
        .collect();
    let grand = exact_mean(f.samples().iter().copied(), m * n);
    let phi2: Vec<f64> = (0..n)
        .map(|j| exact_mean((0..m).map(|i| f.at(i, j)), m) - grand)
        .collect();
    let core = Grid2::from_fn(m, n, |i, j| f.at(i, j) - phi1[i] - phi2[j]).expect("finite values");
    Decomposition {
        core,
        marginal_x: Grid1::new(phi1).expect("at least two rows"),
        marginal_y: Grid1::new(phi2).expect("at least two columns"),
    }
}

/// `int_{k/L}^{(k+1)/L} t^{-1/p - 1} dt = p [(k/L)^{-1/p} - ((k+1)/L)^{-1/p}]`,
/// evaluated without cancellation.
pub fn cell_weight(k: usize, l: usize, p: Exponent) -> f64 {
    debug_assert!(k >= 1);
    let ip = p.inv();
    let a = (k as f64 / l as f64).powf(-ip);
    // 1 - (k/(k+1))^{1/p} = -expm1(-ln(1 + 1/k)/p)
    let frac = -(-(1.0 / k as f64).ln_1p() * ip).exp_m1();
    p.value() * a * frac
}

fn weights(start: usize, l: usize, p: Exponent) -> Vec<f64> {
    (start..l).map(|k| cell_weight(k, l, p)).collect()
}

fn check_start(start: usize, l: usize) -> Result<()> {
    if start == 0 || start >= l {
        Err(Error::Config(format!(
            "truncation start {start} must lie in 1..{l}"
        )))
    } else {
        Ok(())
    }
}

/// Enclosure of `int_{1/L}^1 t^{-1/p} omega(t) dt/t`.
pub fn integral_j(table: &ModulusTable1D) -> Result<Enclosure> {
    integral_j_from(table, 1)
}

/// Enclosure of `int_{start/L}^1 t^{-1/p} omega(t) dt/t`.
pub fn integral_j_from(table: &ModulusTable1D, start: usize) -> Result<Enclosure> {
    let p = table.p().require_above_one()?;
    let l = table.resolution();
    check_start(start, l)?;
    let w = weights(start, l, p);
    let (mut lo, mut hi) = (ExactSum::new(), ExactSum::new());
    for (k, wk) in (start..l).zip(&w) {
        lo.add(wk * table.at(k));
        hi.add(wk * table.at(k + 1));
    }
    Ok(Enclosure {
        lo: lo.value(),
        hi: hi.value(),
        domain: Domain {
            u_min: start as f64 / l as f64,
            u_max: 1.0,
            v_min: None,
            v_max: None,
        },
        p: p.value(),
    })
}

/// Enclosure of `K_p` over `[1/M, 1]` and `[1/N, 1]`.
pub fn integral_k(table: &ModulusTable2D) -> Result<Enclosure> {
    integral_k_from(table, 1, 1)
}

/// Enclosure of `K_p` over `[start_u/M, 1]` and `[start_v/N, 1]`.
pub fn integral_k_from(
    table: &ModulusTable2D,
    start_u: usize,
    start_v: usize,
) -> Result<Enclosure> {
    let a = integral_j_from(&table.row_slice(), start_u)?;
    let b = integral_j_from(&table.col_slice(), start_v)?;
    Ok(Enclosure {
        lo: a.lo + b.lo,
        hi: a.hi + b.hi,
        domain: Domain {
            u_min: a.domain.u_min,
            u_max: 1.0,
            v_min: Some(b.domain.u_min),
            v_max: Some(1.0),
        },
        p: a.p,
    })
}

/// Enclosure of `I_p` over `[1/M, 1] x [1/N, 1]`.
pub fn integral_i(table: &ModulusTable2D) -> Result<Enclosure> {
    integral_i_from(table, 1, 1)
}

/// Enclosure of `I_p` over `[start_u/M, 1] x [start_v/N, 1]`: lower-left
/// corner values for the lower bound, upper-right for the upper bound.
pub fn integral_i_from(
    table: &ModulusTable2D,
    start_u: usize,
    start_v: usize,
) -> Result<Enclosure> {
    let p = table.p().require_above_one()?;
    let (m, n) = (table.rows(), table.cols());
    check_start(start_u, m)?;
    check_start(start_v, n)?;
    let (wu, wv) = (weights(start_u, m, p), weights(start_v, n, p));
    let (mut lo, mut hi) = (ExactSum::new(), ExactSum::new());
    for (k, a) in (start_u..m).zip(&wu) {
        for (l, b) in (start_v..n).zip(&wv) {
            let w = a * b;
            lo.add(w * table.at(k, l));
            hi.add(w * table.at(k + 1, l + 1));
        }
    }
    Ok(Enclosure {
        lo: lo.value(),
        hi: hi.value(),
        domain: Domain {
            u_min: start_u as f64 / m as f64,
            u_max: 1.0,
            v_min: Some(start_v as f64 / n as f64),
            v_max: Some(1.0),
        },
        p: p.value(),
    })
}

/// Non-certified estimate of the omitted `(0, 1/L)` part of `J_p`, assuming
/// `omega(t) ~ omega(1/L) L t` below the grid step.
pub fn tail_model_j(table: &ModulusTable1D) -> Result<f64> {
    let p = table.p().require_above_one()?;
    let l = table.resolution() as f64;
    Ok(p.conj() * l.powf(p.inv()) * table.at(1))
}

/// Non-certified estimate of the omitted part of `K_p` (both slices).
pub fn tail_model_k(table: &ModulusTable2D) -> Result<f64> {
    Ok(tail_model_j(&table.row_slice())? + tail_model_j(&table.col_slice())?)
}

/// Non-certified estimate of the omitted part of `I_p`: the two strips and
/// the corner, with `omega` extended linearly below one grid step.
pub fn tail_model_i(table: &ModulusTable2D) -> Result<f64> {
    let p = table.p().require_above_one()?;
    let (m, n) = (table.rows(), table.cols());
    let (cu, cv) = (
        p.conj() * (m as f64).powf(p.inv()),
        p.conj() * (n as f64).powf(p.inv()),
    );
    let strip_u: Vec<f64> = (0..=n).map(|l| table.at(1, l)).collect();
    let strip_v: Vec<f64> = (0..=m).map(|k| table.at(k, 1)).collect();
    let ju = integral_j(&ModulusTable1D::new(strip_u, p))?.lo;
    let jv = integral_j(&ModulusTable1D::new(strip_v, p))?.lo;
    Ok(cu * ju + cv * jv + cu * cv * table.at(1, 1))
}

/// The three inequalities linking the integrals, all on the same truncated
/// domain:
///
/// * `K.lo <= (4/p') I.hi`
/// * `omega(f; 1, 1) <= (4/p'^2) I.hi`
/// * `J.lo(core) <= 3 K.hi(core)` for the mean-zero core of `f`.
pub fn chain_check(f: &Grid2, p: Exponent, cap: Option<usize>) -> Result<Vec<Comparison>> {
    let p = p.require_above_one()?;
    let pc = p.conj();
    let table = modulus_mixed_with_cap(f, p, cap)?;
    let k = integral_k(&table)?;
    let i = integral_i(&table)?;
    let core = decompose_lp0(f).core;
    let core_table = modulus_mixed_with_cap(&core, p, cap)?;
    let kc = integral_k(&core_table)?;
    let jc = integral_j(&modulus_iso_2d(&core, p))?;
    Ok(vec![
        Comparison::new("K.lo <= (4/p') I.hi", k.lo, 4.0 / pc * i.hi),
        Comparison::new(
            "omega(1,1) <= (4/p'^2) I.hi",
            table.at(f.rows(), f.cols()),
            4.0 / (pc * pc) * i.hi,
        ),
        Comparison::new("J.lo(core) <= 3 K.hi(core)", jc.lo, 3.0 * kc.hi),
    ])
}

/// [`chain_check`] with the default mixed-table cap.
pub fn chain_check_default(f: &Grid2, p: Exponent) -> Result<Vec<Comparison>> {
    chain_check(f, p, Some(MIXED_TABLE_CAP))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{gen_product, gen_sine};
    use crate::modulus::{modulus_1d, modulus_mixed};

    fn e(p: f64) -> Exponent {
        Exponent::new(p).unwrap()
    }

    #[test]
    fn decomposition_examples() {
        let s = gen_sine(1, 8).unwrap();
        let f = gen_product(&s, &s);
        let d = decompose_lp0(&f);
        assert!(d.marginal_x.max_abs() < 1e-16 && d.marginal_y.max_abs() < 1e-16);
        let additive = Grid2::from_fn(4, 6, |i, j| (i * i) as f64 + (j as f64).sqrt()).unwrap();
        assert!(decompose_lp0(&additive).core.max_abs() < 1e-12);
    }

    #[test]
    fn weights_sum_to_antiderivative() {
        let p = e(1.7);
        let total: f64 = (1..64).map(|k| cell_weight(k, 64, p)).sum();
        let exact = p.value() * (64f64.powf(p.inv()) - 1.0);
        assert!((total - exact).abs() < 1e-12 * exact);
    }

    #[test]
    fn zero_function_and_p_one() {
        let z = Grid2::zeros(8, 8).unwrap();
        let t = modulus_mixed(&z, e(2.0)).unwrap();
        let k = integral_k(&t).unwrap();
        let i = integral_i(&t).unwrap();
        assert_eq!((k.lo, k.hi, i.lo, i.hi), (0.0, 0.0, 0.0, 0.0));
        let t1 = modulus_mixed(&z, Exponent::ONE).unwrap();
        assert_eq!(integral_i(&t1), Err(Error::ExponentOne));
        assert_eq!(integral_k(&t1), Err(Error::ExponentOne));
        let g = Grid1::zeros(8).unwrap();
        assert_eq!(
            integral_j(&modulus_1d(&g, Exponent::ONE)),
            Err(Error::ExponentOne)
        );
    }

    #[test]
    fn linear_modulus_closed_form() {
        // omega(t) = t exactly; the closed form is p'(1 - N^{-1/p'}).
        for p in [1.5, 2.0, 3.0] {
            let p = e(p);
            let n = 256;
            let t = ModulusTable1D::new((0..=n).map(|k| k as f64 / n as f64).collect(), p);
            let enc = integral_j(&t).unwrap();
            let exact = p.conj() * (1.0 - (n as f64).powf(-p.inv_conj()));
            assert!(enc.lo <= exact && exact <= enc.hi, "{enc:?} {exact}");
        }
    }

    #[test]
    fn separable_i_is_product_of_j() {
        let s = gen_sine(1, 16).unwrap();
        let f = gen_product(&s, &s);
        let p = e(2.0);
        let i = integral_i(&modulus_mixed(&f, p).unwrap()).unwrap();
        let j = integral_j(&modulus_1d(&s, p)).unwrap();
        assert!((i.lo - j.lo * j.lo).abs() < 1e-12 * i.lo);
        assert!((i.hi - j.hi * j.hi).abs() < 1e-12 * i.hi);
    }

    #[test]
    fn enclosure_json_shape() {
        let s = gen_sine(1, 8).unwrap();
        let j = integral_j(&modulus_1d(&s, e(2.0))).unwrap();
        let v: serde_json::Value = serde_json::from_str(&j.to_json()).unwrap();
        for key in ["lo", "hi", "p"] {
            assert!(v[key].is_number());
        }
        for key in ["u_min", "u_max", "v_min", "v_max"] {
            assert!(v["domain"].get(key).is_some());
        }
    }

    #[test]
    fn chain_on_sine_product() {
        let s = gen_sine(1, 16).unwrap();
        let f = gen_product(&s, &s);
        for p in [1.25, 2.0, 4.0] {
            for c in chain_check_default(&f, e(p)).unwrap() {
                assert!(c.holds(1e-12), "{c:?}");
            }
        }
    }
}
