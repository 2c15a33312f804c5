//! Corpus, verification suite, sharpness sweeps and report persistence.

pub mod checks;
pub mod corpus;
pub mod report;
pub mod suite;
pub mod sweep;

pub use checks::{
    embedding_1d_check, hardy_littlewood_check, main_estimate_check, series_separation,
};
pub use report::{CheckEntry, CheckReport, SweepEntry};
pub use suite::{run_suite, Section, SuiteConfig};
pub use sweep::{sharpness_sweep, Family, SweepConfig, SweepRow};
