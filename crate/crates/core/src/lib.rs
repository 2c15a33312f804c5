//! Wiener p-variation, Vitali-type bivariate p-variation and L^p moduli of
//! continuity for periodic functions sampled on uniform grids.
//!
//! Everything here treats the sample array as *the* function: variations are
//! maxima over grid-aligned partitions and nets, moduli are maxima over grid
//! shifts, and the weighted smoothness integrals are returned as certified
//! enclosures built from the monotonicity of the moduli.
//!
//! Module map:
//!
//! * [`grid`] — sampled data types, generators for the standard test
//!   functions, CSV input/output.
//! * [`pvar1d`] — exact cyclic p-variation (dynamic programming) and a
//!   brute-force oracle.
//! * [`vitali2d`] — Vitali p-variation over nets: exact p = 1 path, oracle,
//!   alternating-DP ascent.
//! * [`modulus`] — difference operators and (mixed) L^p moduli.
//! * [`smoothness`] — marginal decomposition and the J, K, I enclosures.
//! * [`mixednorm`] — section-variation profiles and the W_p functional.
//! * [`harness`] — corpus, verification suite, sweeps and reports.

pub mod check;
pub mod cli;
pub mod error;
pub mod grid;
pub mod harness;
pub mod mixednorm;
pub mod modulus;
pub mod pvar1d;
pub mod smoothness;
pub mod vitali2d;

mod sum;

pub use check::Comparison;
pub use error::{Error, Result};
pub use grid::{Exponent, Grid1, Grid2, GridData};
pub use pvar1d::{pvar_cyclic, pvar_oracle, pvar_sum, CyclicPartition, PvarResult};
pub use vitali2d::{vitali_ascent, vitali_finest, vitali_oracle, vitali_sum, AscentResult, Net};
