//! Measured-constant checks that combine several modules.

use crate::error::Result;
use crate::grid::{gen_series_f, Exponent, Grid1, Grid2, GridData};
use crate::mixednorm::phi_profile;
use crate::modulus::{
    circular_diff_pow_sum, lp_norm, modulus_1d, modulus_iso_2d, modulus_mixed_with_cap,
};
use crate::pvar1d::pvar;
use crate::smoothness::{decompose_lp0, integral_i, integral_j, integral_k};
use crate::sum::{mixed_term, ExactSum};
use crate::vitali2d::{vitali_finest, vitali_lower_with, AscentConfig};
use serde::Serialize;

/// `S = max omega(f; u, v)_1 / (uv)` against the exact `V = v_1^{(2)}(f)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HardyLittlewood {
    pub sup_ratio: f64,
    pub vitali: f64,
    /// `|S - V| / V`, zero when both vanish.
    pub relative_gap: f64,
    /// Grid shifts `(s, t)` at which `||Delta(s,t) f||_1 <= V st/(MN)` was
    /// decided in exact arithmetic.
    pub checked: usize,
    /// Shifts violating it (zero in exact arithmetic by the theory).
    pub violations: usize,
    /// Shifts too close to equality for the floating point filter, which
    /// were settled by an exact expansion sum.
    pub exact_evaluations: usize,
}

/// Exact sign test of `sum_{i,j} |Delta(s,t) f(i,j)| - c * V` where `v` is
/// the exact expansion of `V`. Returns true when the difference is `<= 0`.
fn exact_shift_bound(f: &Grid2, s: usize, t: usize, c: f64, v: &[f64]) -> bool {
    let (m, n) = (f.rows(), f.cols());
    let mut acc = ExactSum::new();
    for i in 0..m {
        let (r0, r1) = (f.row(i), f.row(i + s));
        for j in 0..n {
            let jt = (j + t) % n;
            acc.add_term(&mixed_term(r1[jt], r1[j], r0[jt], r0[j], Exponent::ONE));
        }
    }
    for &x in v {
        acc.add_product(-c, x);
    }
    acc.value() <= 0.0
}

/// Hardy–Littlewood characterisation at p = 1. The pointwise direction
/// `omega(f; u, v)_1 <= V uv` is decided exactly for every grid shift:
/// since the modulus is a prefix maximum of shift norms, the bound at the
/// shifts implies it at every grid argument. Shifts beyond half a period
/// repeat a norm with a larger right-hand side and need no separate test.
pub fn hardy_littlewood_check(f: &Grid2, cap: Option<usize>) -> Result<HardyLittlewood> {
    let p = Exponent::ONE;
    let (m, n) = (f.rows(), f.cols());
    let table = modulus_mixed_with_cap(f, p, cap)?;
    let v = vitali_finest(f, p);
    let mut sup_ratio = 0.0f64;
    for k in 1..=m {
        for l in 1..=n {
            let uv = (k as f64 / m as f64) * (l as f64 / n as f64);
            sup_ratio = sup_ratio.max(table.at(k, l) / uv);
        }
    }
    let relative_gap = if v == 0.0 && sup_ratio == 0.0 {
        0.0
    } else {
        (sup_ratio - v).abs() / v
    };

    // Exact expansion of V (unnormalised finest-net sum).
    let mut vsum = ExactSum::new();
    for i in 0..m {
        let (r0, r1) = (f.row(i), f.row(i + 1));
        for j in 0..n {
            let j1 = (j + 1) % n;
            vsum.add_term(&mixed_term(r1[j1], r1[j], r0[j1], r0[j], p));
        }
    }
    let vparts = vsum.partials().to_vec();
    let vval = vsum.value();
    // Each sample enters four mixed differences per shift; the plain sum of
    // MN terms has relative error below (MN + 4) u, with margin.
    let abs_sum: f64 = f.samples().iter().map(|x| x.abs()).sum();
    let err = 1.02 * (m * n + 4) as f64 * f64::EPSILON * 4.0 * abs_sum;
    let (hm, hn) = (m / 2, n / 2);
    let (mut checked, mut violations, mut exact_evaluations) = (0, 0, 0);
    let mut d = vec![0.0; n];
    for s in 1..=hm {
        let mut sums = vec![0.0f64; hn + 1];
        for i in 0..m {
            for (dj, (a, b)) in d.iter_mut().zip(f.row(i + s).iter().zip(f.row(i))) {
                *dj = a - b;
            }
            for (t, acc) in sums.iter_mut().enumerate().skip(1) {
                *acc += circular_diff_pow_sum(&d, t, p);
            }
        }
        for (t, &approx) in sums.iter().enumerate().skip(1) {
            checked += 1;
            let c = (s * t) as f64;
            let rhs = c * vval;
            // rhs is within one rounding of c * V and vval within one of V.
            if approx + err <= rhs * (1.0 - 4.0 * f64::EPSILON) {
                continue;
            }
            exact_evaluations += 1;
            if !exact_shift_bound(f, s, t, c, &vparts) {
                violations += 1;
            }
        }
    }
    Ok(HardyLittlewood {
        sup_ratio,
        vitali: v,
        relative_gap,
        checked,
        violations,
        exact_evaluations,
    })
}

/// Measured constants of the two one-dimensional embeddings
/// `||g||_inf <= A [||g||_p + J/(pp')]` and `v_p(g) <= A [omega(g;1) + J/(pp')]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Embedding1d {
    pub sup: f64,
    pub norm: f64,
    pub variation: f64,
    pub omega1: f64,
    pub j_hi: f64,
    /// `None` when the bracket vanishes.
    pub a_sup: Option<f64>,
    pub a_var: Option<f64>,
}

fn ratio(num: f64, den: f64) -> Option<f64> {
    if den > 0.0 {
        Some(num / den)
    } else {
        None
    }
}

pub fn embedding_1d_check(g: &Grid1, p: Exponent) -> Result<Embedding1d> {
    let p = p.require_above_one()?;
    let table = modulus_1d(g, p);
    let j_hi = integral_j(&table)?.hi;
    let jt = j_hi / (p.value() * p.conj());
    let (sup, norm, variation) = (g.max_abs(), lp_norm(g, p), pvar(g, p));
    let omega1 = table.at(g.len());
    Ok(Embedding1d {
        sup,
        norm,
        variation,
        omega1,
        j_hi,
        a_sup: ratio(sup, norm + jt),
        a_var: ratio(variation, omega1 + jt),
    })
}

/// Measured constants of the main estimates for the mean-zero core:
/// `v_p^{(2)} <= A [omega(1,1) + K/(pp') + I/(pp')^2]` and
/// `||core||_inf <= A [||core||_p + J/(pp') + I/(pp')^2]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MainEstimate {
    pub vitali_lower: f64,
    pub omega11: f64,
    pub k_term: f64,
    pub i_term: f64,
    pub bracket: f64,
    pub a_obs: Option<f64>,
    pub sup: f64,
    pub norm: f64,
    pub j_term: f64,
    pub bracket_sup: f64,
    pub a_obs_sup: Option<f64>,
    /// Share of the I term in the bracket.
    pub i_share: f64,
}

pub fn main_estimate_check(
    f: &Grid2,
    p: Exponent,
    cap: Option<usize>,
    ascent: &AscentConfig,
) -> Result<MainEstimate> {
    let p = p.require_above_one()?;
    let core = decompose_lp0(f).core;
    let table = modulus_mixed_with_cap(&core, p, cap)?;
    let ppc = p.value() * p.conj();
    let omega11 = table.at(core.rows(), core.cols());
    let k_term = integral_k(&table)?.hi / ppc;
    let i_term = integral_i(&table)?.hi / (ppc * ppc);
    let j_term = integral_j(&modulus_iso_2d(&core, p))?.hi / ppc;
    let bracket = omega11 + k_term + i_term;
    let vitali_lower = vitali_lower_with(&core, p, ascent);
    let (sup, norm) = (core.max_abs(), lp_norm(&core, p));
    let bracket_sup = norm + j_term + i_term;
    Ok(MainEstimate {
        vitali_lower,
        omega11,
        k_term,
        i_term,
        bracket,
        a_obs: ratio(vitali_lower, bracket),
        sup,
        norm,
        j_term,
        bracket_sup,
        a_obs_sup: ratio(sup, bracket_sup),
        i_share: if bracket > 0.0 { i_term / bracket } else { 0.0 },
    })
}

/// Diagnostics of the truncated series `f_M` on its natural grid
/// `N = 2^{M+2}`: the Vitali side stays bounded while the row-section
/// profile oscillates `2M` times between 0 and the midpoint amplitude.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesSeparation {
    pub terms: usize,
    pub size: usize,
    pub vitali_finest: f64,
    /// Smallest section variation at the dyadic midpoints
    /// `x = 3 * 2^{-k-2}`, `k = 1..=M`.
    pub amp: f64,
    /// `v_p(phi_p[f_M])`.
    pub profile_variation: f64,
    /// `amp * (2M)^{1/p}`, the variation of the alternating 0/amp pattern.
    pub alternation_bound: f64,
}

pub fn series_separation(terms: usize, p: Exponent) -> Result<SeriesSeparation> {
    let size = 1usize << (terms + 2);
    let f = gen_series_f(terms, p, size)?.grid;
    let phi = phi_profile(&f, p).values;
    let amp = (1..=terms)
        .map(|k| phi.at(3 << (terms - k)))
        .fold(f64::INFINITY, f64::min);
    Ok(SeriesSeparation {
        terms,
        size,
        vitali_finest: vitali_finest(&f, p),
        amp,
        profile_variation: pvar(&phi, p),
        alternation_bound: amp * ((2 * terms) as f64).powf(p.inv()),
    })
}
