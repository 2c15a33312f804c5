//! Section-variation profiles and the mixed-norm functional
//! `W_p(f) = v_p(phi_p[f]) + v_p(psi_p[f])`, where `phi_p[f](x) = v_p(f_x)`
//! and `psi_p[f](y) = v_p(f_y)`.

use crate::check::Summary;
use crate::error::Result;
use crate::grid::{Exponent, Grid1, Grid2};
use crate::modulus::modulus_mixed_with_cap;
use crate::pvar1d::pvar;
use crate::smoothness::{decompose_lp0, integral_i, integral_k};
use serde::Serialize;

/// Which variable is frozen to form the sections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    /// x-sections `f_x = f(x, .)`, i.e. grid rows.
    Rows,
    /// y-sections `f_y = f(., y)`, i.e. grid columns.
    Cols,
}

/// `values[k]` is the p-variation of the k-th section along `axis`.
#[derive(Debug, Clone, PartialEq)]
pub struct SectionProfile {
    pub values: Grid1,
    pub axis: Axis,
    pub p: Exponent,
}

/// `phi_p[f]`: exact p-variation of every row.
pub fn phi_profile(f: &Grid2, p: Exponent) -> SectionProfile {
    let values = (0..f.rows()).map(|i| pvar(&f.row_grid(i), p)).collect();
    SectionProfile {
        values: Grid1::new(values).expect("at least two rows"),
        axis: Axis::Rows,
        p,
    }
}

/// `psi_p[f]`: exact p-variation of every column.
pub fn psi_profile(f: &Grid2, p: Exponent) -> SectionProfile {
    let values = (0..f.cols()).map(|j| pvar(&f.col_grid(j), p)).collect();
    SectionProfile {
        values: Grid1::new(values).expect("at least two columns"),
        axis: Axis::Cols,
        p,
    }
}

/// `W_p(f) = v_p(phi_p[f]) + v_p(psi_p[f])`.
pub fn w_p(f: &Grid2, p: Exponent) -> f64 {
    pvar(&phi_profile(f, p).values, p) + pvar(&psi_profile(f, p).values, p)
}

/// `|v_p(f_x'') - v_p(f_x')| <= 2 v_p(f_x'' - f_x')` for every pair of rows
/// and, symmetrically, every pair of columns.
pub fn section_lipschitz_check(f: &Grid2, p: Exponent) -> Summary {
    let mut s = Summary::new("section variation Lipschitz bound");
    for (grid, axis) in [(f.clone(), "row"), (f.transpose(), "col")] {
        let sections: Vec<Grid1> = (0..grid.rows()).map(|i| grid.row_grid(i)).collect();
        let vars: Vec<f64> = sections.iter().map(|g| pvar(g, p)).collect();
        for a in 0..sections.len() {
            for b in (a + 1)..sections.len() {
                let diff = sections[b].sub(&sections[a]).expect("same length");
                s.record((vars[b] - vars[a]).abs(), 2.0 * pvar(&diff, p), || {
                    format!("{axis}s {a} and {b}")
                });
            }
        }
    }
    s
}

/// Measured constant of `W_p(core) <= A [omega(1,1) + K/(pp') + I/(pp')^2]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WEstimate {
    pub w: f64,
    pub omega11: f64,
    pub k_term: f64,
    pub i_term: f64,
    pub bracket: f64,
    /// `w / bracket`; `None` when the bracket vanishes (0/0 is skipped).
    pub a_obs: Option<f64>,
}

/// Evaluates [`WEstimate`] for the mean-zero core of `f`, with enclosure
/// upper bounds in the bracket.
pub fn w_p_estimate_check(f: &Grid2, p: Exponent, cap: Option<usize>) -> Result<WEstimate> {
    let p = p.require_above_one()?;
    let core = decompose_lp0(f).core;
    let table = modulus_mixed_with_cap(&core, p, cap)?;
    let ppc = p.value() * p.conj();
    let omega11 = table.at(core.rows(), core.cols());
    let k_term = integral_k(&table)?.hi / ppc;
    let i_term = integral_i(&table)?.hi / (ppc * ppc);
    let bracket = omega11 + k_term + i_term;
    let w = w_p(&core, p);
    Ok(WEstimate {
        w,
        omega11,
        k_term,
        i_term,
        bracket,
        a_obs: if bracket > 0.0 {
            Some(w / bracket)
        } else {
            None
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{gen_product, gen_sine, gen_staircase, gen_tent_scaled, GridData};

    #[test]
    fn zero_grid() {
        let z = Grid2::zeros(6, 5).unwrap();
        let p = Exponent::TWO;
        assert_eq!(phi_profile(&z, p).values.max_abs(), 0.0);
        assert_eq!(psi_profile(&z, p).values.max_abs(), 0.0);
        assert_eq!(w_p(&z, p), 0.0);
        assert_eq!(w_p_estimate_check(&z, p, None).unwrap().a_obs, None);
    }

    #[test]
    fn product_profile() {
        let g = gen_sine(1, 8).unwrap();
        let h = gen_tent_scaled(2, 8).unwrap();
        let p = Exponent::new(1.5).unwrap();
        let phi = phi_profile(&gen_product(&g, &h), p);
        let vh = pvar(&h, p);
        for (k, v) in phi.values.samples().iter().enumerate() {
            assert!((v - g.samples()[k].abs() * vh).abs() < 1e-14);
        }
    }

    #[test]
    fn staircase_profiles_on_the_grid() {
        // Every section is the indicator of a cyclic arc except one: on a
        // grid the arc of row 1 and of column 0 is the whole period.
        for n in [4usize, 8, 16] {
            let f = gen_staircase(n).unwrap();
            for p in [1.0, 2.0, 3.0] {
                let p = Exponent::new(p).unwrap();
                let two = 2f64.powf(p.inv());
                let phi = phi_profile(&f, p).values;
                let psi = psi_profile(&f, p).values;
                for k in 0..n {
                    let expect_row = if k == 1 { 0.0 } else { two };
                    let expect_col = if k == 0 { 0.0 } else { two };
                    assert!((phi.samples()[k] - expect_row).abs() < 1e-15);
                    assert!((psi.samples()[k] - expect_col).abs() < 1e-15);
                }
                assert!((w_p(&f, p) - 2.0 * 4f64.powf(p.inv())).abs() < 1e-14);
                assert!(section_lipschitz_check(&f, p).holds(0.0));
            }
        }
    }

    #[test]
    fn x_independent_grid() {
        let f = Grid2::from_fn(5, 6, |_, j| (j as f64).sin()).unwrap();
        let s = section_lipschitz_check(&f, Exponent::TWO);
        assert!(s.holds(0.0));
    }
}
