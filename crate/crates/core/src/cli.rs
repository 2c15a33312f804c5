//! Command line interface of the `pvarlab` binary.
//!
//! Exit codes: 0 on success, 1 when `verify` finds a failing check, 2 on
//! usage or input errors.

use crate::error::{Error, Result};
use crate::grid::{
    gen_cumulative, gen_gn, gen_product, gen_series_f, gen_sine, gen_staircase, gen_tent_scaled,
    gen_trigpoly, load_csv, write_csv, AnyGrid, Exponent, Grid1, Grid2, TrigCoefficients,
};
use crate::harness::report::{write_sweeps_csv, SweepEntry};
use crate::harness::suite::{run_suite, Section, SuiteConfig};
use crate::harness::sweep::{sharpness_sweep, Family, SweepConfig};
use crate::mixednorm::{w_p, w_p_estimate_check};
use crate::modulus::{modulus_1d, modulus_iso_2d, modulus_mixed_with_cap, MIXED_TABLE_CAP};
use crate::pvar1d::{pvar_cyclic_pruned, pvar_oracle};
use crate::smoothness::{
    integral_i, integral_j, integral_k, tail_model_i, tail_model_j, tail_model_k, Enclosure,
};
use crate::vitali2d::{
    vitali_ascent_with, vitali_finest, vitali_oracle_with_limit, AscentConfig, VITALI_ORACLE_LIMIT,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "pvarlab",
    version,
    about = "p-variation, Vitali variation and moduli of continuity on periodic grids"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Exponent p >= 1.
    #[arg(long, global = true)]
    p: Option<f64>,
    /// Input grid (CSV); alternatively pass the path as the last argument.
    #[arg(long, global = true)]
    grid: Option<PathBuf>,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output path (standard output when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format (plain text when omitted, where supported).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Size limit of the exhaustive 2D oracle (at most 12).
    #[arg(long = "oracle-limit", global = true)]
    oracle_limit: Option<usize>,
    /// Per-axis size cap of the mixed modulus table.
    #[arg(long = "cap-override", global = true)]
    cap_override: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Cyclic p-variation of a 1D grid (or of each row of a 2D grid).
    Pvar {
        file: Option<PathBuf>,
        /// Use the exhaustive oracle instead of the dynamic program.
        #[arg(long)]
        oracle: bool,
    },
    /// Vitali p-variation of a 2D grid.
    Vitali {
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = VitaliMethod::Ascent)]
        method: VitaliMethod,
        #[arg(long, default_value_t = 32)]
        max_sweeps: usize,
    },
    /// L^p modulus of continuity table.
    Modulus {
        file: Option<PathBuf>,
        /// Which modulus of a 2D grid (1D grids always use `line`).
        #[arg(long, value_enum, default_value_t = ModulusKind::Mixed)]
        kind: ModulusKind,
    },
    /// Enclosures of the weighted modulus integrals J, K and I.
    Integrals {
        file: Option<PathBuf>,
        /// Also report the non-certified model of the omitted part near 0.
        #[arg(long)]
        tail: bool,
    },
    /// The mixed-norm functional W_p and its measured estimate constant.
    Wp { file: Option<PathBuf> },
    /// Run the verification suite and write a report.
    Verify {
        /// `all` or a comma-separated list of sections.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Sweep families (comma-separated); `all` for every family.
        #[arg(long, default_value = "all")]
        families: String,
        /// Append a deliberately failing check.
        #[arg(long, hide = true)]
        inject_failure: bool,
    },
    /// Sharpness sweep over one family.
    Sweep {
        #[arg(long)]
        family: String,
        /// Comma-separated exponents.
        #[arg(long = "p-grid", default_value = "1.5,2,4")]
        p_grid: String,
        /// Comma-separated degrees.
        #[arg(long = "n-grid", default_value = "1,2,4")]
        n_grid: String,
    },
    /// Generate a grid and write it as CSV.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        /// Frequency, bump index or degree along x.
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Degree along y (products and trigonometric polynomials).
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Number of samples per axis.
        #[arg(long = "N", default_value_t = 64)]
        size: usize,
        /// Truncation of the series.
        #[arg(long, default_value_t = 3)]
        terms: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VitaliMethod {
    Finest,
    Ascent,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModulusKind {
    Line,
    Iso,
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenKind {
    /// `dist(n x, Z)`.
    Tent,
    /// `sin(2 pi n x)`.
    Sine,
    /// The bump `g_n`.
    Bump,
    /// `sin(2 pi n x) sin(2 pi m y)`.
    SineProduct,
    /// The indicator of `x <= y`.
    Staircase,
    /// Truncated series with `terms` terms (needs `--p`).
    Series,
    /// Random trigonometric polynomial of degree `(n, m)`.
    Trigpoly,
    /// Double primitive of a random field with zero row and column means.
    Cumulative,
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn exponent(g: &Global) -> Result<Exponent> {
    match g.p {
        Some(p) => Exponent::new(p),
        None => Err(Error::Config("missing --p".into())),
    }
}

fn input(g: &Global, file: Option<PathBuf>) -> Result<AnyGrid> {
    match file.or_else(|| g.grid.clone()) {
        Some(path) => load_csv(path),
        None => Err(Error::Config(
            "missing input grid (pass a file or --grid)".into(),
        )),
    }
}

fn two_d(grid: AnyGrid) -> Result<Grid2> {
    match grid {
        AnyGrid::Two(f) => Ok(f),
        AnyGrid::One(_) => Err(Error::Shape("this command needs a 2D grid".into())),
    }
}

fn output(g: &Global) -> Result<Box<dyn Write>> {
    Ok(match &g.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| Error::Config(format!("invalid {what} '{t}'")))
        })
        .collect()
}

fn parse_families(s: &str) -> Result<Vec<Family>> {
    if s.trim() == "all" {
        return Ok(Family::ALL.to_vec());
    }
    parse_list(s, "family")
}

fn cap(g: &Global) -> Option<usize> {
    Some(g.cap_override.unwrap_or(MIXED_TABLE_CAP))
}

fn execute(cli: Cli) -> Result<i32> {
    let g = &cli.global;
    match cli.command {
        Command::Pvar { file, oracle } => {
            let p = exponent(g)?;
            let rows: Vec<Grid1> = match input(g, file)? {
                AnyGrid::One(x) => vec![x],
                AnyGrid::Two(f) => (0..f.rows()).map(|i| f.row_grid(i)).collect(),
            };
            let mut results = Vec::new();
            for row in &rows {
                if oracle {
                    results.push((pvar_oracle(row, p)?, None));
                } else {
                    let r = pvar_cyclic_pruned(row, p);
                    results.push((r.value, Some(r.partition.indices().to_vec())));
                }
            }
            let mut w = output(g)?;
            match g.format {
                None => {
                    for (v, _) in &results {
                        writeln!(w, "{v}")?;
                    }
                }
                Some(Format::Csv) => {
                    writeln!(w, "row,p,value")?;
                    for (i, (v, _)) in results.iter().enumerate() {
                        writeln!(w, "{i},{:?},{v:?}", p.value())?;
                    }
                }
                Some(Format::Json) => {
                    let items: Vec<_> = results
                        .iter()
                        .map(|(v, part)| json!({"value": v, "partition": part}))
                        .collect();
                    writeln!(w, "{}", json!({"p": p.value(), "results": items}))?;
                }
            }
            w.flush()?;
            Ok(0)
        }
        Command::Vitali {
            file,
            method,
            max_sweeps,
        } => {
            let p = exponent(g)?;
            let f = two_d(input(g, file)?)?;
            let (value, net) = match method {
                VitaliMethod::Finest => (vitali_finest(&f, p), None),
                VitaliMethod::Oracle => (
                    vitali_oracle_with_limit(&f, p, g.oracle_limit.unwrap_or(VITALI_ORACLE_LIMIT))?,
                    None,
                ),
                VitaliMethod::Ascent => {
                    let cfg = AscentConfig {
                        max_sweeps,
                        seed: g.seed,
                        ..AscentConfig::default()
                    };
                    let r = vitali_ascent_with(&f, p, &cfg);
                    (r.value, Some(r.net))
                }
            };
            let mut w = output(g)?;
            match g.format {
                None => writeln!(w, "{value}")?,
                Some(Format::Csv) => writeln!(w, "p,value\n{:?},{value:?}", p.value())?,
                Some(Format::Json) => {
                    let net = net
                        .map(|n| json!({"rows": n.rows().indices(), "cols": n.cols().indices()}));
                    writeln!(w, "{}", json!({"p": p.value(), "value": value, "net": net}))?;
                }
            }
            w.flush()?;
            Ok(0)
        }
        Command::Modulus { file, kind } => {
            let p = exponent(g)?;
            let mut w = output(g)?;
            match (input(g, file)?, kind) {
                (AnyGrid::One(x), _) => modulus_1d(&x, p).write_csv(&mut w)?,
                (AnyGrid::Two(f), ModulusKind::Line) => {
                    modulus_1d(&f.row_grid(0), p).write_csv(&mut w)?
                }
                (AnyGrid::Two(f), ModulusKind::Iso) => modulus_iso_2d(&f, p).write_csv(&mut w)?,
                (AnyGrid::Two(f), ModulusKind::Mixed) => {
                    modulus_mixed_with_cap(&f, p, cap(g))?.write_csv(&mut w)?
                }
            }
            w.flush()?;
            Ok(0)
        }
        Command::Integrals { file, tail } => {
            let p = exponent(g)?.require_above_one()?;
            let mut items: Vec<(&str, Enclosure, Option<f64>)> = Vec::new();
            match input(g, file)? {
                AnyGrid::One(x) => {
                    let t = modulus_1d(&x, p);
                    items.push(("J", integral_j(&t)?, Some(tail_model_j(&t)?)));
                }
                AnyGrid::Two(f) => {
                    let iso = modulus_iso_2d(&f, p);
                    let mixed = modulus_mixed_with_cap(&f, p, cap(g))?;
                    items.push(("J", integral_j(&iso)?, Some(tail_model_j(&iso)?)));
                    items.push(("K", integral_k(&mixed)?, Some(tail_model_k(&mixed)?)));
                    items.push(("I", integral_i(&mixed)?, Some(tail_model_i(&mixed)?)));
                }
            }
            if !tail {
                for it in &mut items {
                    it.2 = None;
                }
            }
            let mut w = output(g)?;
            match g.format {
                Some(Format::Csv) => {
                    writeln!(w, "name,lo,hi,u_min,u_max,v_min,v_max,p,tail_model")?;
                    for (name, e, t) in &items {
                        let opt = |x: Option<f64>| x.map(|v| format!("{v:?}")).unwrap_or_default();
                        writeln!(
                            w,
                            "{name},{:?},{:?},{:?},{:?},{},{},{:?},{}",
                            e.lo,
                            e.hi,
                            e.domain.u_min,
                            e.domain.u_max,
                            opt(e.domain.v_min),
                            opt(e.domain.v_max),
                            e.p,
                            opt(*t)
                        )?;
                    }
                }
                None | Some(Format::Json) => {
                    let mut obj = serde_json::Map::new();
                    for (name, e, t) in &items {
                        obj.insert(
                            name.to_string(),
                            serde_json::to_value(e).expect("plain data"),
                        );
                        if let Some(t) = t {
                            obj.insert(format!("{name}_tail_model"), json!(t));
                        }
                    }
                    writeln!(w, "{}", serde_json::Value::Object(obj))?;
                }
            }
            w.flush()?;
            Ok(0)
        }
        Command::Wp { file } => {
            let p = exponent(g)?;
            let f = two_d(input(g, file)?)?;
            let value = w_p(&f, p);
            let estimate = if p.is_one() {
                None
            } else {
                Some(w_p_estimate_check(&f, p, cap(g))?)
            };
            let mut w = output(g)?;
            match g.format {
                None => writeln!(w, "{value}")?,
                Some(Format::Csv) => {
                    let a = estimate.as_ref().and_then(|e| e.a_obs);
                    writeln!(
                        w,
                        "p,w_p,a_obs_core\n{:?},{value:?},{}",
                        p.value(),
                        a.map(|x| format!("{x:?}")).unwrap_or_default()
                    )?
                }
                Some(Format::Json) => writeln!(
                    w,
                    "{}",
                    json!({"p": p.value(), "w_p": value, "core_estimate": estimate})
                )?,
            }
            w.flush()?;
            Ok(0)
        }
        Command::Verify {
            suite,
            families,
            inject_failure,
        } => {
            let cfg = SuiteConfig {
                seed: g.seed,
                sections: Section::parse_list(&suite)?,
                families: parse_families(&families)?,
                oracle_limit: g.oracle_limit,
                cap: g.cap_override,
                inject_failure,
                ..SuiteConfig::default()
            };
            let report = run_suite(&cfg)?;
            let mut w = output(g)?;
            match g.format {
                Some(Format::Csv) => report.write_sweeps_csv(&mut w)?,
                _ => report.write_json(&mut w)?,
            }
            w.flush()?;
            let failures: Vec<_> = report.failures().collect();
            for f in &failures {
                eprintln!(
                    "FAIL {}: {} (lhs {:?}, rhs {:?})",
                    f.id, f.inputs, f.lhs, f.rhs
                );
            }
            eprintln!(
                "{} checks, {} failed, {} sweep rows",
                report.checks.len(),
                failures.len(),
                report.sweeps.len()
            );
            Ok(report.exit_code())
        }
        Command::Sweep {
            family,
            p_grid,
            n_grid,
        } => {
            let family: Family = family.parse()?;
            let ps: Vec<f64> = parse_list(&p_grid, "exponent")?;
            let ps = ps
                .into_iter()
                .map(Exponent::new)
                .collect::<Result<Vec<_>>>()?;
            let ns: Vec<usize> = parse_list(&n_grid, "degree")?;
            let cfg = SweepConfig {
                cap: g.cap_override,
                seed: g.seed,
                ..SweepConfig::default()
            };
            let rows: Vec<SweepEntry> = sharpness_sweep(family, &ps, &ns, &cfg)?
                .into_iter()
                .map(SweepEntry::from)
                .collect();
            let mut w = output(g)?;
            match g.format {
                Some(Format::Json) => {
                    serde_json::to_writer_pretty(&mut w, &rows)
                        .map_err(|e| Error::Io(e.to_string()))?;
                    writeln!(w)?;
                }
                _ => write_sweeps_csv(&rows, &mut w)?,
            }
            w.flush()?;
            Ok(0)
        }
        Command::Gen {
            kind,
            n,
            m,
            size,
            terms,
        } => {
            let grid: AnyGrid = match kind {
                GenKind::Tent => gen_tent_scaled(n, size)?.into(),
                GenKind::Sine => gen_sine(n, size)?.into(),
                GenKind::Bump => gen_gn(n, size)?.into(),
                GenKind::SineProduct => {
                    gen_product(&gen_sine(n, size)?, &gen_sine(m, size)?).into()
                }
                GenKind::Staircase => gen_staircase(size)?.into(),
                GenKind::Series => gen_series_f(terms, exponent(g)?, size)?.grid.into(),
                GenKind::Trigpoly => {
                    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
                    let c = TrigCoefficients::random(n, m, &mut rng);
                    gen_trigpoly(&c, size, size)?.0.into()
                }
                GenKind::Cumulative => {
                    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
                    let f = crate::harness::corpus::random_mean_zero(&mut rng, size, size);
                    gen_cumulative(&f)?.into()
                }
            };
            let mut w = output(g)?;
            write_csv(&grid, &mut w)?;
            Ok(0)
        }
    }
}
