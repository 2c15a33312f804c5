//! Sharpness sweeps over product and trigonometric families.

use crate::error::{Error, Result};
use crate::grid::{gen_product, gen_sine, gen_trigpoly, Exponent, Grid2, TrigCoefficients};
use crate::modulus::{lp_norm, modulus_mixed_with_cap};
use crate::smoothness::{integral_i, integral_k};
use crate::vitali2d::{vitali_lower_with, AscentConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Sampling points per period used by every sweep family.
pub const POINTS_PER_PERIOD: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `t_1 (x) t_1`; the `n` parameter is ignored.
    T1xT1,
    /// `t_n (x) t_1`.
    TnxT1,
    /// `t_n (x) t_n`.
    TnxTn,
    /// Seeded random trigonometric polynomials of degree `(n, m)` for every
    /// pair `n, m` from the degree grid.
    TrigPoly,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::T1xT1,
        Family::TnxT1,
        Family::TnxTn,
        Family::TrigPoly,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::T1xT1 => "t1xt1",
            Family::TnxT1 => "tnxt1",
            Family::TnxTn => "tnxtn",
            Family::TrigPoly => "trigpoly",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown family '{s}'")))
    }
}

/// One `(family, p, n)` measurement; `values` is ordered by key.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub family: Family,
    pub p: f64,
    pub n: usize,
    pub values: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub ascent: AscentConfig,
    pub cap: Option<usize>,
    /// Seed of the random trigonometric coefficients.
    pub seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            ascent: AscentConfig {
                max_sweeps: 16,
                pair_starts: 2,
                restarts: 0,
                seed: 0,
            },
            cap: None,
            seed: 0,
        }
    }
}

/// Measurements shared by every family.
fn measure(
    f: &Grid2,
    p: Exponent,
    degree: (usize, usize),
    cfg: &SweepConfig,
) -> Result<BTreeMap<String, f64>> {
    let table = modulus_mixed_with_cap(f, p, cfg.cap)?;
    let v = vitali_lower_with(f, p, &cfg.ascent);
    let omega11 = table.at(f.rows(), f.cols());
    let norm = lp_norm(f, p);
    let pv = p.value();
    let mut out = BTreeMap::new();
    out.insert("vitali_lower".to_string(), v);
    out.insert("omega11".to_string(), omega11);
    out.insert("norm".to_string(), norm);
    let nm = (degree.0 * degree.1) as f64;
    out.insert("oskolkov_ratio".to_string(), v / (nm.powf(p.inv()) * norm));
    out.insert("n".to_string(), degree.0 as f64);
    out.insert("m".to_string(), degree.1 as f64);
    if p.is_one() {
        return Ok(out);
    }
    let k = integral_k(&table)?;
    let i = integral_i(&table)?;
    let pc = p.conj();
    out.insert("k_lo".to_string(), k.lo);
    out.insert("k_hi".to_string(), k.hi);
    out.insert("i_lo".to_string(), i.lo);
    out.insert("i_hi".to_string(), i.hi);
    // p -> 1 sharpness: v (p')^2 / I stays away from zero.
    out.insert("sharpness_ratio".to_string(), v * pc * pc / i.hi);
    // Term necessity: v against 1 + K/p + I/p^2 as p grows.
    let bracket = 1.0 + k.hi / pv + i.hi / (pv * pv);
    out.insert("term_bracket".to_string(), bracket);
    out.insert("term_ratio".to_string(), v / bracket);
    out.insert("p_times_ratio".to_string(), pv * (v / bracket - 1.0));
    Ok(out)
}

fn product_grid(n: usize, m: usize) -> Result<Grid2> {
    let g = gen_sine(n, POINTS_PER_PERIOD * n)?;
    let h = gen_sine(m, POINTS_PER_PERIOD * m)?;
    Ok(gen_product(&g, &h))
}

/// Runs one family over the `p` and `n` grids. Rows are emitted in
/// `(p, n[, m])` order.
pub fn sharpness_sweep(
    family: Family,
    p_grid: &[Exponent],
    n_grid: &[usize],
    cfg: &SweepConfig,
) -> Result<Vec<SweepRow>> {
    if n_grid.contains(&0) {
        return Err(Error::Config("sweep degrees must be positive".into()));
    }
    let mut rows = Vec::new();
    for &p in p_grid {
        let mut push = |n: usize, values| {
            rows.push(SweepRow {
                family,
                p: p.value(),
                n,
                values,
            })
        };
        match family {
            Family::T1xT1 => {
                let f = product_grid(1, 1)?;
                push(1, measure(&f, p, (1, 1), cfg)?);
            }
            Family::TnxT1 => {
                for &n in n_grid {
                    let f = product_grid(n, 1)?;
                    push(n, measure(&f, p, (n, 1), cfg)?);
                }
            }
            Family::TnxTn => {
                for &n in n_grid {
                    let f = product_grid(n, n)?;
                    push(n, measure(&f, p, (n, n), cfg)?);
                }
            }
            Family::TrigPoly => {
                for &n in n_grid {
                    for &m in n_grid {
                        let seed = cfg.seed ^ ((n as u64) << 32 | m as u64);
                        let mut rng = ChaCha8Rng::seed_from_u64(seed);
                        let coeffs = TrigCoefficients::random(n, m, &mut rng);
                        let (t, _) =
                            gen_trigpoly(&coeffs, POINTS_PER_PERIOD * n, POINTS_PER_PERIOD * m)?;
                        push(n, measure(&t, p, (n, m), cfg)?);
                    }
                }
            }
        }
    }
    Ok(rows)
}

/// Largest Oskolkov ratio across rows.
pub fn max_oskolkov_ratio(rows: &[SweepRow]) -> f64 {
    rows.iter()
        .filter_map(|r| r.values.get("oskolkov_ratio").copied())
        .fold(0.0, f64::max)
}
