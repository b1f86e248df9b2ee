//! Time integration of the full Boussinesq system and its near-resonant
//! approximation, in modulated variables `u = e^{-Nt L} U`.
//!
//! In modulated form both systems read `du/dt + B(Nt, u, u) + A u = 0`
//! with an explicit, quadratically small nonlinearity carrying phases
//! `e^{i omega^sigma N t}`, and a dissipation whose diagonal (in the
//! eigenframe) part is integrated exactly by an exponential factor. The
//! full system's modulated viscosity additionally carries oscillatory
//! off-diagonal terms when `nu1 != nu2`; those are non-stiff and treated
//! explicitly inside the Runge-Kutta stages.

pub mod config;
pub mod diagnostics;
pub mod init;
pub mod integrate;

pub use config::{RunMode, SimConfig};
pub use diagnostics::{run, run_with_context, DiagnosticsRow, RunOutput};
pub use init::random_divfree_field;
pub use integrate::{Integrator, SimState, SystemKind};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error(transparent)]
    Spectral(#[from] spectral_core::SpectralError),
    #[error("solution lost finiteness at t = {t}")]
    NotFinite { t: f64 },
    #[error("phase resolution violated: dt*N*omega_max = {value:.4} > {cap}")]
    PhaseResolution { value: f64, cap: f64 },
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, SolverError>;
