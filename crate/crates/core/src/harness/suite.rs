//! The verification suite: every check of the library, run in a fixed order
//! and collected into one [`CheckReport`].

use super::checks::{
    embedding_1d_check, hardy_littlewood_check, main_estimate_check, series_separation,
};
use super::corpus::{
    corpus_1d, corpus_2d, corpus_oracle_2d, random_mean_zero, random_small, smooth_product, Named,
};
use super::report::{CheckEntry, CheckReport, SweepEntry};
use super::sweep::{sharpness_sweep, Family, SweepConfig, POINTS_PER_PERIOD};
use crate::error::{Error, Result};
use crate::grid::{
    gen_cumulative, gen_product, gen_series_f, gen_sine, gen_staircase, gen_tent_scaled, read_csv,
    write_csv, AnyGrid, Exponent, Grid1, Grid2, GridData,
};
use crate::mixednorm::{section_lipschitz_check, w_p, w_p_estimate_check};
use crate::modulus::{
    averaged_modulus_check, diff_modulus_bound_check, golubov_bound, modulus_1d, modulus_iso_2d,
    modulus_mixed_with_cap, omega_sandwich, table1d_invariants, table2d_invariants,
};
use crate::pvar1d::{pvar, pvar_cyclic, pvar_cyclic_pruned, pvar_oracle, PVAR_ORACLE_LIMIT};
use crate::smoothness::{
    chain_check, decompose_lp0, integral_i_from, integral_j_from, integral_k_from, Enclosure,
};
use crate::vitali2d::{
    hardy_section_check, staircase_net_bound, vitali_ascent_with, vitali_finest,
    vitali_oracle_with_limit, AscentConfig, VITALI_ORACLE_LIMIT,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;

/// Suite sections in execution order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Section {
    Generators,
    PvarOracle,
    VitaliOracle,
    Golubov,
    Modulus,
    Lemmas,
    Chain,
    HardyLittlewood,
    MainEstimate,
    MixedNorm,
    Sharpness,
}

impl Section {
    pub const ALL: [Section; 11] = [
        Section::Generators,
        Section::PvarOracle,
        Section::VitaliOracle,
        Section::Golubov,
        Section::Modulus,
        Section::Lemmas,
        Section::Chain,
        Section::HardyLittlewood,
        Section::MainEstimate,
        Section::MixedNorm,
        Section::Sharpness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Section::Generators => "generators",
            Section::PvarOracle => "pvar-oracle",
            Section::VitaliOracle => "vitali-oracle",
            Section::Golubov => "golubov",
            Section::Modulus => "modulus",
            Section::Lemmas => "lemmas",
            Section::Chain => "chain",
            Section::HardyLittlewood => "hardy-littlewood",
            Section::MainEstimate => "main-estimate",
            Section::MixedNorm => "mixed-norm",
            Section::Sharpness => "sharpness",
        }
    }

    /// Parses `all` or a comma-separated list of section names.
    pub fn parse_list(s: &str) -> Result<Vec<Section>> {
        if s.trim() == "all" {
            return Ok(Section::ALL.to_vec());
        }
        let mut out: Vec<Section> = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(Section::from_str)
            .collect::<Result<_>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Section {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Section::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite section '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Sections to run; an empty list gives an empty report.
    pub sections: Vec<Section>,
    /// Families of the sharpness sweeps.
    pub families: Vec<Family>,
    /// Number of random grids (per exponent) compared with the 1D oracle.
    pub pvar_oracle_count: usize,
    /// Largest grid length used against the 1D oracle.
    pub pvar_oracle_max_len: usize,
    /// Number of random grids (per exponent) compared with the 2D oracle.
    pub vitali_oracle_count: usize,
    /// Side length of the random 2D oracle grids.
    pub vitali_oracle_size: usize,
    /// Size limit of the 2D oracle (default [`VITALI_ORACLE_LIMIT`]).
    pub oracle_limit: Option<usize>,
    /// Override of the mixed modulus table cap (`None`: no cap beyond the
    /// suite's own sizes).
    pub cap: Option<usize>,
    /// Append a deliberately failing check (used to test exit codes).
    pub inject_failure: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            sections: Section::ALL.to_vec(),
            families: Family::ALL.to_vec(),
            pvar_oracle_count: 250,
            pvar_oracle_max_len: 12,
            vitali_oracle_count: 100,
            vitali_oracle_size: 6,
            oracle_limit: None,
            cap: None,
            inject_failure: false,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.pvar_oracle_max_len < 2 || self.pvar_oracle_max_len > PVAR_ORACLE_LIMIT {
            return Err(Error::OracleLimit {
                size: self.pvar_oracle_max_len,
                limit: PVAR_ORACLE_LIMIT,
            });
        }
        let limit = self.oracle_limit.unwrap_or(VITALI_ORACLE_LIMIT);
        if limit > 12 {
            return Err(Error::Config(format!(
                "oracle limit {limit} exceeds the maximum 12"
            )));
        }
        if self.vitali_oracle_size < 2 || self.vitali_oracle_size > limit {
            return Err(Error::OracleLimit {
                size: self.vitali_oracle_size,
                limit,
            });
        }
        Ok(())
    }

    fn vitali_limit(&self) -> usize {
        self.oracle_limit.unwrap_or(VITALI_ORACLE_LIMIT)
    }
}

/// Runs the configured sections in order. A section that returns an error
/// or panics is reported as a failed check and the suite continues.
pub fn run_suite(cfg: &SuiteConfig) -> Result<CheckReport> {
    cfg.validate()?;
    let mut report = CheckReport::new(cfg.seed);
    for &section in Section::ALL.iter().filter(|s| cfg.sections.contains(s)) {
        let mut ctx = Ctx {
            cfg,
            checks: Vec::new(),
            sweeps: Vec::new(),
        };
        let outcome = catch_unwind(AssertUnwindSafe(|| run_section(section, &mut ctx)));
        report.checks.append(&mut ctx.checks);
        report.sweeps.append(&mut ctx.sweeps);
        let id = format!("{section}.completed");
        match outcome {
            Ok(Ok(())) => {}
            Ok(Err(e)) => report.checks.push(CheckEntry::failure(
                &id,
                "section ran to completion",
                format!("error: {e}"),
            )),
            Err(panic) => {
                let msg = panic
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "unknown panic".into());
                report.checks.push(CheckEntry::failure(
                    &id,
                    "section ran to completion",
                    format!("panic: {msg}"),
                ));
            }
        }
    }
    if cfg.inject_failure {
        report.checks.push(CheckEntry::exact(
            "synthetic.injected-failure",
            "deliberately failing check",
            "inject_failure = true",
            1.0,
            0.0,
        ));
    }
    Ok(report)
}

struct Ctx<'a> {
    cfg: &'a SuiteConfig,
    checks: Vec<CheckEntry>,
    sweeps: Vec<SweepEntry>,
}

impl Ctx<'_> {
    fn push(&mut self, c: CheckEntry) {
        self.checks.push(c);
    }

    fn sweep(&mut self, family: &str, p: f64, n: usize, values: &[(&str, f64)]) {
        self.sweeps.push(SweepEntry {
            family: family.to_string(),
            p,
            n,
            values: values.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        });
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.cfg.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ salt)
    }
}

fn exps(values: &[f64]) -> Vec<Exponent> {
    values
        .iter()
        .map(|&p| Exponent::new(p).expect("valid exponent"))
        .collect()
}

fn run_section(section: Section, ctx: &mut Ctx) -> Result<()> {
    match section {
        Section::Generators => generators(ctx),
        Section::PvarOracle => pvar_oracle_suite(ctx),
        Section::VitaliOracle => vitali_oracle_suite(ctx),
        Section::Golubov => golubov(ctx),
        Section::Modulus => modulus(ctx),
        Section::Lemmas => lemmas(ctx),
        Section::Chain => chain(ctx),
        Section::HardyLittlewood => hardy_littlewood(ctx),
        Section::MainEstimate => main_estimate(ctx),
        Section::MixedNorm => mixed_norm(ctx),
        Section::Sharpness => sharpness(ctx),
    }
}

const ANCHOR_TENT: &str = "tent variation v_p(phi_n) = 2^{1/p-1} n^{1/p}";

fn generators(ctx: &mut Ctx) -> Result<()> {
    for p in exps(&[1.0, 1.5, 2.0, 3.0]) {
        let mut worst = 0.0f64;
        for n in [1usize, 2, 4, 8] {
            let v = pvar(&gen_tent_scaled(n, 64)?, p);
            let expect = 2f64.powf(p.inv() - 1.0) * (n as f64).powf(p.inv());
            worst = worst.max((v - expect).abs());
        }
        ctx.push(CheckEntry::exact(
            "generators.tent-formula",
            ANCHOR_TENT,
            format!("p={p}; n in {{1,2,4,8}}; N=64; |error|"),
            worst,
            1e-12,
        ));
    }
    let mut worst = 0.0f64;
    for n in [1usize, 2, 4, 8] {
        worst = worst.max((pvar(&gen_sine(n, 16 * n)?, Exponent::ONE) - 4.0 * n as f64).abs());
    }
    ctx.push(CheckEntry::exact(
        "generators.sine-total-variation",
        "total variation of sin(2 pi n x) is 4n",
        "n in {1,2,4,8}; N=16n; |error|",
        worst,
        0.0,
    ));

    let s = gen_staircase(2)?;
    let bad = [(1, 1, 1.0), (1, 0, 1.0), (0, 0, 1.0), (0, 1, 0.0)]
        .iter()
        .filter(|&&(i, j, v)| s.at(i, j) != v)
        .count();
    ctx.push(CheckEntry::count(
        "generators.staircase-values",
        "staircase f = 1 on 0 < x <= y <= 1",
        "N=2; grid index 0 stands for 1",
        bad,
        4,
    ));

    let series = gen_series_f(3, Exponent::TWO, 32)?.grid;
    let nonzero = (0..32)
        .filter(|&k| series.at(0, k) != 0.0 || series.at(k, 0) != 0.0)
        .count();
    ctx.push(CheckEntry::count(
        "generators.series-zero-lines",
        "truncated series vanishes on x = 1 and on y = 0",
        "M=3; p=2; N=32",
        nonzero,
        32,
    ));

    let mut rng = ctx.rng(1);
    let mut worst = 0.0f64;
    for size in [8usize, 16] {
        let g = random_mean_zero(&mut rng, size, size);
        let big = gen_cumulative(&g)?;
        let scale = 1.0 / (size * size) as f64;
        for i in 0..size {
            for j in 0..size {
                let d = crate::vitali2d::mixed_difference(&big, i, j, 1, 1);
                worst = worst.max((d - scale * g.at(i, j)).abs());
            }
        }
    }
    ctx.push(CheckEntry::exact(
        "generators.cumulative-differences",
        "mixed differences of the double primitive recover f/(MN)",
        "random mean-zero 8x8 and 16x16; max |error|",
        worst,
        1e-15,
    ));

    let mut mismatches = 0;
    let mut total = 0;
    for member in corpus_2d(ctx.cfg.seed)? {
        total += 1;
        if !csv_round_trip(AnyGrid::from(member.grid))? {
            mismatches += 1;
        }
    }
    for member in corpus_1d(ctx.cfg.seed)? {
        total += 1;
        if !csv_round_trip(AnyGrid::from(member.grid))? {
            mismatches += 1;
        }
    }
    ctx.push(CheckEntry::count(
        "generators.csv-round-trip",
        "grid CSV export is lossless",
        "full corpus; bitwise comparison",
        mismatches,
        total,
    ));
    Ok(())
}

fn csv_round_trip(g: AnyGrid) -> Result<bool> {
    let mut buf = Vec::new();
    write_csv(&g, &mut buf)?;
    let back = read_csv(buf.as_slice())?;
    Ok(back.shape() == g.shape()
        && back
            .samples()
            .iter()
            .zip(g.samples())
            .all(|(a, b)| a.to_bits() == b.to_bits()))
}

fn random_1d(rng: &mut ChaCha8Rng, max_len: usize, kind: usize) -> Grid1 {
    let n = rng.gen_range(2..=max_len);
    Grid1::new(
        (0..n)
            .map(|_| match kind % 3 {
                0 => rng.gen_range(-1.0..1.0),
                1 => rng.gen_range(-3i32..=3) as f64,
                _ => rng.gen_range(0..5) as f64 * 0.25,
            })
            .collect(),
    )
    .expect("length >= 2")
}

fn random_1d_exact(rng: &mut ChaCha8Rng, len: usize) -> Grid1 {
    Grid1::new(
        (0..len)
            .map(|_| rng.gen_range(-4i32..=4) as f64 * 0.25)
            .collect(),
    )
    .expect("length >= 2")
}

fn pvar_oracle_suite(ctx: &mut Ctx) -> Result<()> {
    let count = ctx.cfg.pvar_oracle_count;
    let max_len = ctx.cfg.pvar_oracle_max_len;
    for (k, p) in exps(&[1.0, 1.5, 2.0, 3.0]).into_iter().enumerate() {
        let mut rng = ctx.rng(100 + k as u64);
        let (mut dp_bad, mut pruned_bad) = (0, 0);
        for c in 0..count {
            let g = random_1d(&mut rng, max_len, c);
            let oracle = pvar_oracle(&g, p)?;
            if pvar_cyclic(&g, p).value.to_bits() != oracle.to_bits() {
                dp_bad += 1;
            }
            if pvar_cyclic_pruned(&g, p).value.to_bits() != oracle.to_bits() {
                pruned_bad += 1;
            }
        }
        let inputs = format!("p={p}; random grids N in 2..={max_len}; bitwise");
        ctx.push(CheckEntry::count(
            "pvar-oracle.dp",
            "p-variation as a supremum over all cyclic partitions",
            inputs.clone(),
            dp_bad,
            count,
        ));
        ctx.push(CheckEntry::count(
            "pvar-oracle.pruned",
            "optimal partitions may be taken at local extrema",
            inputs,
            pruned_bad,
            count,
        ));
    }
    Ok(())
}

fn vitali_oracle_suite(ctx: &mut Ctx) -> Result<()> {
    let limit = ctx.cfg.vitali_limit();
    let size = ctx.cfg.vitali_oracle_size;
    let count = ctx.cfg.vitali_oracle_count;
    let ascent = AscentConfig::default();
    for (k, p) in exps(&[1.5, 2.0, 3.0]).into_iter().enumerate() {
        let mut rng = ctx.rng(200 + k as u64);
        let (mut above, mut hits) = (0, 0);
        for c in 0..count {
            let f = random_small(&mut rng, size, size, c);
            let oracle = vitali_oracle_with_limit(&f, p, limit)?;
            let cfg = AscentConfig {
                seed: c as u64,
                ..ascent.clone()
            };
            let a = vitali_ascent_with(&f, p, &cfg).value;
            if a > oracle {
                above += 1;
            }
            if a == oracle {
                hits += 1;
            }
        }
        let inputs = format!("p={p}; {count} random {size}x{size} grids");
        ctx.push(CheckEntry::count(
            "vitali-oracle.ascent-is-lower-bound",
            "Vitali p-variation as a supremum over all nets",
            inputs.clone(),
            above,
            count,
        ));
        ctx.push(CheckEntry::exact(
            "vitali-oracle.ascent-hit-rate",
            "Vitali p-variation as a supremum over all nets",
            format!("{inputs}; hits >= 0.99 * count"),
            0.99 * count as f64,
            hits as f64,
        ));
    }
    // Products: the value is v_p(g) v_p(h) and the ascent attains it.
    let mut worst_ident = 0.0f64;
    let mut misses = 0;
    let mut total = 0;
    let sizes: Vec<usize> = [4usize, 6].into_iter().filter(|&s| s <= limit).collect();
    let mut rng = ctx.rng(240);
    for p in exps(&[1.0, 1.5, 2.0, 3.0]) {
        for &s in &sizes {
            let mut factors = vec![gen_tent_scaled(1, s)?, random_1d_exact(&mut rng, s)];
            if s % 4 == 0 {
                factors.push(gen_sine(1, s)?);
            }
            for g in &factors {
                for h in &factors {
                    let f = gen_product(g, h);
                    let oracle = vitali_oracle_with_limit(&f, p, limit)?;
                    let expect = pvar(g, p) * pvar(h, p);
                    worst_ident = worst_ident.max((oracle - expect).abs() / expect.max(1e-300));
                    let a = vitali_ascent_with(&f, p, &ascent).value;
                    total += 1;
                    if a != oracle {
                        misses += 1;
                    }
                }
            }
        }
    }
    ctx.push(CheckEntry::exact(
        "vitali-oracle.product-identity",
        "v_p^(2)(g (x) h) = v_p(g) v_p(h)",
        "tent/sine/random products 4x4 and 6x6; p in {1,1.5,2,3}; relative error",
        worst_ident,
        1e-9,
    ));
    ctx.push(CheckEntry::count(
        "vitali-oracle.product-ascent",
        "v_p^(2)(g (x) h) = v_p(g) v_p(h)",
        "ascent equals oracle on products",
        misses,
        total,
    ));
    let mut rng = ctx.rng(250);
    let mut bad = 0;
    let n1 = count.min(200);
    let s1 = size.min(5);
    for c in 0..n1 {
        let f = random_small(&mut rng, s1, s1, c);
        if vitali_finest(&f, Exponent::ONE) != vitali_oracle_with_limit(&f, Exponent::ONE, limit)? {
            bad += 1;
        }
    }
    ctx.push(CheckEntry::count(
        "vitali-oracle.finest-at-p1",
        "at p = 1 the finest net is optimal",
        format!("random {s1}x{s1} grids; bitwise"),
        bad,
        n1,
    ));
    Ok(())
}

fn golubov(ctx: &mut Ctx) -> Result<()> {
    let mut rng = ctx.rng(300);
    let mut members: Vec<(String, Grid2)> = Vec::new();
    for size in [8usize, 16, 32] {
        members.push((
            format!("random mean-zero {size}x{size}"),
            random_mean_zero(&mut rng, size, size),
        ));
    }
    let t = gen_sine(1, 16)?;
    members.push((
        "core of t1 x t1 16x16".into(),
        decompose_lp0(&gen_product(&t, &t)).core,
    ));
    members.push((
        "core of staircase 16x16".into(),
        decompose_lp0(&gen_staircase(16)?).core,
    ));
    for (name, g) in members {
        let v = vitali_finest(&gen_cumulative(&g)?, Exponent::ONE);
        let expect =
            g.samples().iter().map(|x| x.abs()).sum::<f64>() / (g.rows() * g.cols()) as f64;
        ctx.push(CheckEntry::exact(
            "golubov.identity",
            "v_1^(2) of the double primitive equals the L^1 norm of f",
            format!("{name}; relative error"),
            (v - expect).abs() / expect,
            1e-12,
        ));
    }
    Ok(())
}

fn modulus(ctx: &mut Ctx) -> Result<()> {
    let c1 = corpus_1d(ctx.cfg.seed)?;
    let c2 = corpus_2d(ctx.cfg.seed)?;
    let oracle = corpus_oracle_2d(ctx.cfg.seed, ctx.cfg.vitali_oracle_size.min(6))?;
    let limit = ctx.cfg.vitali_limit();
    for p in exps(&[1.0, 1.1, 1.5, 2.0, 3.0, 8.0]) {
        let inputs = format!("p={p}; 1D corpus");
        let (mut inv, mut avg) = (summary("1D modulus table"), summary("averaged modulus"));
        let mut sandwich = summary("Omega_p sandwich");
        for Named { grid, .. } in &c1 {
            inv.merge(table1d_invariants(&modulus_1d(grid, p)));
            avg.merge(averaged_modulus_check(grid, p));
            for c in omega_sandwich(grid, p) {
                sandwich.push(c);
            }
        }
        ctx.push(CheckEntry::from_summary(
            "modulus.table-1d",
            "monotonicity, doubling and ratio bound of the L^p modulus",
            inputs.clone(),
            &inv,
        ));
        ctx.push(CheckEntry::from_summary(
            "modulus.averaged",
            "modulus bounded by three times its average over [0, delta]",
            inputs.clone(),
            &avg,
        ));
        ctx.push(CheckEntry::from_summary(
            "modulus.omega-sandwich",
            "Omega_p(g) <= omega(g;1)_p <= 2 Omega_p(g)",
            inputs,
            &sandwich,
        ));
        let (mut mixed, mut iso) = (summary("mixed table"), summary("isotropic table"));
        let mut iso_mono = summary("isotropic monotonicity");
        for Named { grid, .. } in &c2 {
            mixed.merge(table2d_invariants(&modulus_mixed_with_cap(
                grid,
                p,
                ctx.cfg.cap,
            )?));
            let t = modulus_iso_2d(grid, p);
            // Halving a grid shift stays on the grid in both axes only when
            // the axes share one resolution; doubling and the ratio bound
            // are grid statements there. Monotonicity holds everywhere.
            if grid.rows() == grid.cols() {
                iso.merge(table1d_invariants(&t));
            }
            for k in 1..=t.resolution() {
                iso_mono.record(t.at(k - 1), t.at(k), || format!("step {k}"));
            }
        }
        ctx.push(CheckEntry::from_summary(
            "modulus.table-isotropic-monotone",
            "the 2D modulus is nondecreasing",
            format!("p={p}; 2D corpus"),
            &iso_mono,
        ));
        ctx.push(CheckEntry::from_summary(
            "modulus.table-mixed",
            "monotonicity, doubling and ratio bounds of the mixed modulus",
            format!("p={p}; 2D corpus"),
            &mixed,
        ));
        ctx.push(CheckEntry::from_summary(
            "modulus.table-isotropic",
            "monotonicity, doubling and ratio bound of the 2D modulus",
            format!("p={p}; square members of the 2D corpus"),
            &iso,
        ));
        let mut gb = summary("mixed modulus vs Vitali variation");
        for Named { grid, .. } in &oracle {
            let v = vitali_oracle_with_limit(grid, p, limit)?;
            gb.merge(golubov_bound(&modulus_mixed_with_cap(grid, p, None)?, v));
        }
        ctx.push(CheckEntry::from_summary(
            "modulus.vitali-bound",
            "omega(f;u,v)_p <= v_p^(2)(f) u^{1/p} v^{1/p}",
            format!("p={p}; oracle-sized corpus with exact v_p^(2)"),
            &gb,
        ));
    }
    Ok(())
}

fn summary(label: &str) -> crate::check::Summary {
    crate::check::Summary::new(label)
}

fn lemmas(ctx: &mut Ctx) -> Result<()> {
    let c2 = corpus_2d(ctx.cfg.seed)?;
    for p in exps(&[1.0, 1.5, 2.0, 3.0]) {
        let mut diff = summary("difference modulus bounds");
        let mut sections = summary("section bounds");
        for Named { grid, .. } in &c2 {
            for h in [1, grid.rows() / 4, grid.rows() / 2] {
                diff.merge(diff_modulus_bound_check(grid, h, p, ctx.cfg.cap)?);
            }
            for c in hardy_section_check(grid, p, None).comparisons {
                sections.push(c);
            }
        }
        ctx.push(CheckEntry::from_summary(
            "lemmas.difference-modulus",
            "omega(Delta_1(h) f) <= 2 min(omega(f; u, v), omega(f; |h|, v)) and the isotropic analogue",
            format!("p={p}; 2D corpus; h in {{1, M/4, M/2}}"),
            &diff,
        ));
        ctx.push(CheckEntry::from_summary(
            "lemmas.section-bound",
            "v_p(f_x) <= v_p^(2)(f) + v_p(f_x0)",
            format!("p={p}; 2D corpus; ascent lower bound of v_p^(2) on the right"),
            &sections,
        ));
    }
    Ok(())
}

fn chain(ctx: &mut Ctx) -> Result<()> {
    let c2 = corpus_2d(ctx.cfg.seed)?;
    for p in exps(&[1.1, 1.5, 2.0, 3.0, 8.0]) {
        let mut s = [summary("K"), summary("omega11"), summary("J")];
        for Named { grid, .. } in &c2 {
            for (acc, c) in s.iter_mut().zip(chain_check(grid, p, ctx.cfg.cap)?) {
                acc.push(c);
            }
        }
        let ids = [
            ("chain.k-vs-i", "K_p <= (4/p') I_p"),
            ("chain.omega-vs-i", "omega(f;1,1)_p <= (4/p'^2) I_p"),
            ("chain.j-vs-k", "J_p <= 3 K_p for functions in L^p_0"),
        ];
        for ((id, anchor), sum) in ids.iter().zip(&s) {
            ctx.push(CheckEntry::from_summary(
                id,
                anchor,
                format!("p={p}; 2D corpus; truncated domain"),
                sum,
            ));
        }
    }
    // Refinement study on smooth products: the enclosure on the fine grid,
    // restricted to the coarse grid's domain, nests and contracts.
    for p in exps(&[2.0, 4.0]) {
        for (n, m) in [(1usize, 1usize), (2, 1), (1, 2), (2, 2)] {
            let coarse = smooth_product(n, m, 16)?;
            let fine = smooth_product(n, m, 32)?;
            let (tc, tf) = (
                modulus_mixed_with_cap(&coarse, p, None)?,
                modulus_mixed_with_cap(&fine, p, None)?,
            );
            let pairs: [(&str, Enclosure, Enclosure); 3] = [
                (
                    "I",
                    integral_i_from(&tc, 1, 1)?,
                    integral_i_from(&tf, 2, 2)?,
                ),
                (
                    "K",
                    integral_k_from(&tc, 1, 1)?,
                    integral_k_from(&tf, 2, 2)?,
                ),
                (
                    "J",
                    integral_j_from(&modulus_iso_2d(&coarse, p), 1)?,
                    integral_j_from(&modulus_iso_2d(&fine, p), 2)?,
                ),
            ];
            for (name, c, f) in pairs {
                let inputs = format!(
                    "{name}; t{n} x t{m}; p={p}; {}x{} -> {}x{}",
                    coarse.rows(),
                    coarse.cols(),
                    fine.rows(),
                    fine.cols()
                );
                ctx.push(CheckEntry::new(
                    "chain.refinement-lower",
                    "enclosures nest under refinement",
                    inputs.clone(),
                    c.lo,
                    f.lo,
                    1e-12,
                ));
                ctx.push(CheckEntry::new(
                    "chain.refinement-upper",
                    "enclosures nest under refinement",
                    inputs.clone(),
                    f.hi,
                    c.hi,
                    1e-12,
                ));
                ctx.push(CheckEntry::exact(
                    "chain.refinement-contraction",
                    "enclosure width contracts under refinement",
                    format!("{inputs}; width ratio <= 0.6"),
                    f.width() / c.width(),
                    0.6,
                ));
            }
        }
    }
    Ok(())
}

const ANCHOR_HL: &str = "v_1^(2)(f) = sup omega(f;u,v)_1 / (uv)";

fn hardy_littlewood(ctx: &mut Ctx) -> Result<()> {
    let cap = Some(ctx.cfg.cap.unwrap_or(256).max(256));
    let t64 = gen_sine(1, 64)?;
    let t256 = gen_sine(1, 256)?;
    for (g, tol) in [(t64, 0.05), (t256, 0.02)] {
        let n = g.len();
        let f = gen_product(&g, &g);
        let h = hardy_littlewood_check(&f, cap)?;
        ctx.push(CheckEntry::exact(
            "hardy-littlewood.relative-gap",
            ANCHOR_HL,
            format!("t1 x t1; N={n}; |S - V| / V"),
            h.relative_gap,
            tol,
        ));
        ctx.push(CheckEntry::count(
            "hardy-littlewood.pointwise",
            ANCHOR_HL,
            format!(
                "t1 x t1; N={n}; exact arithmetic, {} exact evaluations",
                h.exact_evaluations
            ),
            h.violations,
            h.checked,
        ));
    }
    let mut rng = ctx.rng(400);
    for size in [8usize, 16] {
        let g = random_mean_zero(&mut rng, size, size);
        let h = hardy_littlewood_check(&gen_cumulative(&g)?, cap)?;
        ctx.push(CheckEntry::count(
            "hardy-littlewood.pointwise",
            ANCHOR_HL,
            format!("double primitive of random mean-zero {size}x{size}; exact arithmetic"),
            h.violations,
            h.checked,
        ));
    }
    let z = hardy_littlewood_check(&Grid2::zeros(8, 8)?, cap)?;
    ctx.push(CheckEntry::exact(
        "hardy-littlewood.zero",
        ANCHOR_HL,
        "zero 8x8; S + V",
        z.sup_ratio + z.vitali,
        0.0,
    ));
    Ok(())
}

/// `max <= 2 * first`: the measured constant does not drift upwards along
/// the family.
fn stability(ctx: &mut Ctx, id: &str, anchor: &str, inputs: String, values: &[Option<f64>]) {
    let nonfinite = values
        .iter()
        .filter(|v| !v.is_some_and(f64::is_finite))
        .count();
    ctx.push(CheckEntry::count(
        &format!("{id}.finite"),
        anchor,
        inputs.clone(),
        nonfinite,
        values.len(),
    ));
    let finite: Vec<f64> = values
        .iter()
        .flatten()
        .copied()
        .filter(|v| v.is_finite())
        .collect();
    if let Some(&first) = finite.first() {
        let max = finite.iter().copied().fold(f64::MIN, f64::max);
        ctx.push(CheckEntry::exact(
            &format!("{id}.bounded"),
            anchor,
            format!("{inputs}; max <= 2 * first"),
            max,
            2.0 * first,
        ));
    }
}

fn main_estimate(ctx: &mut Ctx) -> Result<()> {
    let p2 = Exponent::TWO;
    let anchor_sup = "||g||_inf <= A [||g||_p + J_p(g)/(pp')]";
    let anchor_var = "v_p(g) <= A [omega(g;1)_p + J_p(g)/(pp')]";
    for (name, grids) in [
        ("sine", [1usize, 2, 4, 8].map(|n| (n, gen_sine(n, 32 * n)))),
        (
            "tent",
            [2usize, 4, 8, 16].map(|n| (n, gen_tent_scaled(n, 16 * n))),
        ),
    ] {
        let (mut sup, mut var) = (Vec::new(), Vec::new());
        for (n, g) in grids {
            let e = embedding_1d_check(&g?, p2)?;
            ctx.sweep(
                &format!("embedding-{name}"),
                2.0,
                n,
                &[
                    ("a_sup", e.a_sup.unwrap_or(f64::NAN)),
                    ("a_var", e.a_var.unwrap_or(f64::NAN)),
                    ("j_hi", e.j_hi),
                    ("variation", e.variation),
                ],
            );
            sup.push(e.a_sup);
            var.push(e.a_var);
        }
        stability(
            ctx,
            &format!("main-estimate.embedding-{name}-sup"),
            anchor_sup,
            format!("{name} family; p=2"),
            &sup,
        );
        stability(
            ctx,
            &format!("main-estimate.embedding-{name}-var"),
            anchor_var,
            format!("{name} family; p=2"),
            &var,
        );
    }
    let anchor = "v_p^(2)(core) <= A [omega(1,1)_p + K_p/(pp') + I_p/(pp')^2]";
    let ascent = AscentConfig::default();
    let cap = Some(ctx.cfg.cap.unwrap_or(256).max(256));
    let t11 = smooth_product(1, 1, 32)?;
    let mut values = Vec::new();
    for p in exps(&[1.1, 2.0, 10.0]) {
        let r = main_estimate_check(&t11, p, cap, &ascent)?;
        ctx.sweep(
            "main-estimate-t1xt1",
            p.value(),
            1,
            &[
                ("a_obs", r.a_obs.unwrap_or(f64::NAN)),
                ("a_obs_sup", r.a_obs_sup.unwrap_or(f64::NAN)),
                ("i_share", r.i_share),
                ("vitali_lower", r.vitali_lower),
            ],
        );
        values.push(r.a_obs);
        values.push(r.a_obs_sup);
    }
    let nonfinite = values
        .iter()
        .filter(|v| !v.is_some_and(f64::is_finite))
        .count();
    ctx.push(CheckEntry::count(
        "main-estimate.t1xt1.finite",
        anchor,
        "t1 x t1 32x32; p in {1.1, 2, 10}; both measured constants",
        nonfinite,
        values.len(),
    ));
    let p4 = Exponent::new(4.0)?;
    let mut a = Vec::new();
    for n in 1..=8usize {
        let r = main_estimate_check(&smooth_product(n, 1, 32)?, p4, cap, &ascent)?;
        ctx.sweep(
            "main-estimate-tnxt1",
            4.0,
            n,
            &[
                ("a_obs", r.a_obs.unwrap_or(f64::NAN)),
                ("a_obs_sup", r.a_obs_sup.unwrap_or(f64::NAN)),
            ],
        );
        a.push(r.a_obs);
    }
    stability(
        ctx,
        "main-estimate.tnxt1",
        anchor,
        "t_n x t_1; p=4; n in 1..=8".into(),
        &a,
    );
    Ok(())
}

fn mixed_norm(ctx: &mut Ctx) -> Result<()> {
    let c2 = corpus_2d(ctx.cfg.seed)?;
    for p in exps(&[1.0, 1.5, 2.0, 3.0]) {
        let mut s = summary("section Lipschitz");
        for Named { grid, .. } in &c2 {
            s.merge(section_lipschitz_check(grid, p));
        }
        ctx.push(CheckEntry::from_summary(
            "mixed-norm.section-lipschitz",
            "|v_p(f_x'') - v_p(f_x')| <= 2 v_p(f_x'' - f_x')",
            format!("p={p}; 2D corpus"),
            &s,
        ));
    }
    let anchor = "W_p(core) <= A [omega(1,1)_p + K_p/(pp') + I_p/(pp')^2]";
    for p in exps(&[1.1, 2.0, 8.0]) {
        let mut nonfinite = 0;
        let mut max = 0.0f64;
        for Named { grid, .. } in &c2 {
            let w = w_p_estimate_check(grid, p, ctx.cfg.cap)?;
            match w.a_obs {
                Some(a) if a.is_finite() => max = max.max(a),
                Some(_) => nonfinite += 1,
                None => {}
            }
        }
        ctx.sweep(
            "w-estimate-corpus",
            p.value(),
            c2.len(),
            &[("max_a_obs", max)],
        );
        ctx.push(CheckEntry::count(
            "mixed-norm.w-estimate.finite",
            anchor,
            format!("p={p}; 2D corpus; max A_obs = {max:?}"),
            nonfinite,
            c2.len(),
        ));
    }
    // Staircase: the offset nets give v_p^(2) >= n^{1/p}; on the grid one row
    // and one column section are constant (the sampled gap (0, x) is empty),
    // so W_p = 2 * 4^{1/p} exactly, while the mean-zero core has constant
    // profiles and W_p = 0.
    let stair = gen_staircase(32)?;
    let core = decompose_lp0(&stair).core;
    for p in exps(&[1.0, 1.5, 2.0, 3.0]) {
        for n in [2usize, 4, 8, 16] {
            let v = staircase_net_bound(n, p, 32)?;
            ctx.push(CheckEntry::exact(
                "mixed-norm.staircase-net",
                "staircase: v_p^(2) >= n^{1/p} on offset nets",
                format!("p={p}; n={n}; N=32; n^(1/p) <= value"),
                (n as f64).powf(p.inv()),
                v,
            ));
        }
        let w = w_p(&stair, p);
        let expect = 2.0 * 4f64.powf(p.inv());
        ctx.push(CheckEntry::exact(
            "mixed-norm.staircase-w-sampled",
            "staircase section variations",
            format!("p={p}; N=32; |W_p - 2 * 4^(1/p)|"),
            (w - expect).abs(),
            1e-12,
        ));
        ctx.push(CheckEntry::exact(
            "mixed-norm.staircase-w-core",
            "staircase section variations",
            format!("p={p}; N=32; W_p of the mean-zero core"),
            w_p(&core, p),
            0.0,
        ));
    }
    // Series: v^(2) bounded in M while the section profile oscillates.
    let p2 = Exponent::TWO;
    let mut prev: Option<f64> = None;
    for m in 1..=5usize {
        let s = series_separation(m, p2)?;
        ctx.sweep(
            "series",
            2.0,
            m,
            &[
                ("vitali_finest", s.vitali_finest),
                ("amp", s.amp),
                ("profile_variation", s.profile_variation),
                ("alternation_bound", s.alternation_bound),
            ],
        );
        ctx.push(CheckEntry::inequality(
            "mixed-norm.series-profile",
            "series: v_p(phi_p[f_M]) >= 0.9 amp (2M)^{1/p}",
            format!("M={m}; p=2; N={}", s.size),
            0.9 * s.alternation_bound,
            s.profile_variation,
        ));
        if let Some(prev) = prev {
            ctx.push(CheckEntry::exact(
                "mixed-norm.series-vitali-monotone",
                "series: v_p^(2)(f_M) bounded in M",
                format!("M={}->{m}; p=2; previous <= current", m - 1),
                prev,
                s.vitali_finest,
            ));
            if m == 5 {
                ctx.push(CheckEntry::exact(
                    "mixed-norm.series-vitali-growth",
                    "series: v_p^(2)(f_M) bounded in M",
                    "M=4->5; p=2; ratio < 1.05",
                    s.vitali_finest / prev,
                    1.05,
                ));
            }
        }
        prev = Some(s.vitali_finest);
    }
    Ok(())
}

/// Grid constant of the Oskolkov ratio at p = 1 for `t_n (x) t_m` sampled
/// with `K` points per period: `4 K^2 tan^2(pi / K)` (tends to `4 pi^2`).
pub fn oskolkov_grid_constant(points_per_period: usize) -> f64 {
    let k = points_per_period as f64;
    let t = (std::f64::consts::PI / k).tan();
    4.0 * k * k * t * t
}

fn sharpness(ctx: &mut Ctx) -> Result<()> {
    use std::f64::consts::PI;
    let cfg = SweepConfig {
        cap: ctx.cfg.cap,
        seed: ctx.cfg.seed,
        ..SweepConfig::default()
    };
    let pi2 = PI * PI;
    for &family in &ctx.cfg.families.clone() {
        match family {
            Family::T1xT1 => {
                let rows =
                    sharpness_sweep(family, &exps(&[1.01, 1.1, 1.5, 10.0, 50.0]), &[1], &cfg)?;
                for r in &rows {
                    let p = Exponent::new(r.p)?;
                    let pc = p.conj();
                    let v = &r.values;
                    let inputs = format!("t1 x t1 32x32; p={}", r.p);
                    ctx.push(CheckEntry::exact(
                        "sharpness.vitali-at-least-one",
                        "v_p^(2)(t_1 (x) t_1) >= 1",
                        inputs.clone(),
                        1.0,
                        v["vitali_lower"],
                    ));
                    if r.p < 2.0 {
                        ctx.push(CheckEntry::inequality(
                            "sharpness.i-near-one",
                            "I_p(t_1 (x) t_1) <= 4 pi^2 (p')^2",
                            inputs,
                            v["i_hi"],
                            4.0 * pi2 * pc * pc,
                        ));
                    } else {
                        ctx.push(CheckEntry::inequality(
                            "sharpness.k-large-p",
                            "K_p(t_1 (x) t_1) <= 16 pi^2 p",
                            inputs.clone(),
                            v["k_hi"],
                            16.0 * pi2 * r.p,
                        ));
                        ctx.push(CheckEntry::inequality(
                            "sharpness.i-large-p",
                            "I_p(t_1 (x) t_1) <= 16 pi^2 p^2",
                            inputs,
                            v["i_hi"],
                            16.0 * pi2 * r.p * r.p,
                        ));
                    }
                }
                ctx.sweeps.extend(rows.into_iter().map(SweepEntry::from));
            }
            Family::TnxT1 | Family::TnxTn => {
                let rows = sharpness_sweep(family, &exps(&[1.5, 2.0, 4.0]), &[1, 2, 4], &cfg)?;
                ctx.sweeps.extend(rows.into_iter().map(SweepEntry::from));
            }
            Family::TrigPoly => {
                let rows =
                    sharpness_sweep(family, &exps(&[1.0, 2.0, 4.0, 8.0]), &[1, 2, 3, 4], &cfg)?;
                let c = oskolkov_grid_constant(POINTS_PER_PERIOD);
                for r in &rows {
                    let (n, m) = (r.values["n"], r.values["m"]);
                    ctx.push(CheckEntry::exact(
                        "sharpness.oskolkov",
                        "v_p^(2)(T) <= A (nm)^{1/p} ||T||_p for trigonometric polynomials",
                        format!("random degree ({n},{m}); p={}; A = 4K^2 tan^2(pi/K), K={POINTS_PER_PERIOD}", r.p),
                        r.values["oskolkov_ratio"],
                        c,
                    ));
                }
                ctx.sweeps.extend(rows.into_iter().map(SweepEntry::from));
            }
        }
    }
    Ok(())
}
