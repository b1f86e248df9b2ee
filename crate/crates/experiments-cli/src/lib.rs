//! Experiment drivers behind the `nearres` command line: counting
//! verification, the invariant suite, coefficient scans, simulation
//! diagnostics and the approximation-error scaling in `N`.

pub mod compare_n;
pub mod configfile;
pub mod count;
pub mod invariants;
pub mod lower_bound;
pub mod report;
pub mod scan;
pub mod simulate;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
