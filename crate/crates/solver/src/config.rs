//! Simulation configuration and its validity checks.

use crate::{Result, SolverError};
use resonance_sets::BandwidthSpec;
use spectral_core::DomainParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunMode {
    /// Modulated full Boussinesq system only.
    Full,
    /// Near-resonant restricted system only.
    Restricted,
    /// Both side by side with identical initial data, recording the
    /// difference norm.
    Compare,
}

#[derive(Debug, Clone)]
pub struct SimConfig {
    pub dom: DomainParams,
    pub nu1: f64,
    pub nu2: f64,
    /// Stiffness / Brunt-Vaisala frequency `N` multiplying the wave
    /// generator; the fast time is `tau = N t`.
    pub big_n: f64,
    pub cutoff: u32,
    pub dt: f64,
    pub t_final: f64,
    pub bw: BandwidthSpec,
    pub seed: u64,
    /// Spectral slope of the random initial data, `|u_k| ~ |k|^{-slope}`.
    pub spectrum_slope: f64,
    /// Relative weights of the `(r0, r+, r-)` branches in the initial data.
    pub branch_weights: [f64; 3],
    /// Desired L2 norm of the initial data (0 keeps the raw draw).
    pub amplitude: f64,
    pub mode: RunMode,
    /// Record a diagnostics row every this many steps (>= 1).
    pub sample_every: usize,
    /// Phase-resolution bound: `dt * N * omega_max` must not exceed it.
    pub phase_cap: f64,
    /// Reject the configuration on a phase-cap violation instead of
    /// warning.
    pub enforce_phase_cap: bool,
}

impl SimConfig {
    pub fn new(dom: DomainParams, bw: BandwidthSpec) -> Self {
        Self {
            dom,
            nu1: 0.0,
            nu2: 0.0,
            big_n: 1.0,
            cutoff: 6,
            dt: 1e-2,
            t_final: 1.0,
            bw,
            seed: 0,
            spectrum_slope: 2.0,
            branch_weights: [1.0, 1.0, 1.0],
            amplitude: 0.0,
            mode: RunMode::Restricted,
            sample_every: 1,
            phase_cap: 0.5,
            enforce_phase_cap: true,
        }
    }

    /// `dt * N * omega_max`, the per-step phase increment of the stiffest
    /// single-mode oscillation.
    pub fn phase_resolution(&self) -> f64 {
        self.dt * self.big_n * self.dom.omega_max()
    }

    /// Check the configuration; returns non-fatal warnings.
    pub fn validate(&self) -> Result<Vec<String>> {
        if !(self.dt > 0.0) || !(self.t_final >= 0.0) {
            return Err(SolverError::Config("dt must be positive and T nonnegative".into()));
        }
        if self.nu1 < 0.0 || self.nu2 < 0.0 {
            return Err(SolverError::Config("viscosities must be nonnegative".into()));
        }
        if !(self.big_n > 0.0) {
            return Err(SolverError::Config("N must be positive".into()));
        }
        if self.cutoff == 0 {
            return Err(SolverError::Config("cutoff must be at least 1".into()));
        }
        if self.sample_every == 0 {
            return Err(SolverError::Config("sample_every must be at least 1".into()));
        }
        let mut warnings = Vec::new();
        let pr = self.phase_resolution();
        if pr > self.phase_cap {
            if self.enforce_phase_cap {
                return Err(SolverError::PhaseResolution { value: pr, cap: self.phase_cap });
            }
            warnings.push(format!(
                "phase resolution dt*N*omega_max = {pr:.4} exceeds the bound {}",
                self.phase_cap
            ));
        }
        Ok(warnings)
    }

    pub fn steps(&self) -> usize {
        (self.t_final / self.dt).round() as usize
    }
}
