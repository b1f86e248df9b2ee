//! Driving loops and the recorded diagnostic series.
//!
//! Norms are computed on the modulated variable; the rotation
//! `e^{Nt L}` is mode-wise unitary and `|k_check|`-diagonal, so every
//! Sobolev norm (and the difference norm in compare mode) agrees with its
//! unmodulated counterpart exactly.

use crate::config::{RunMode, SimConfig};
use crate::init::random_divfree_field;
use crate::integrate::{Integrator, SimState, SystemKind};
use crate::Result;
use operators::OperatorContext;
use spectral_core::SpectralField;

/// One sampled diagnostics record. In compare mode the norm columns
/// describe the restricted system and `compare_err_h1` the `H^1` distance
/// between the two solutions.
#[derive(Debug, Clone)]
pub struct DiagnosticsRow {
    pub t: f64,
    pub l2: f64,
    pub h1: f64,
    pub h2: f64,
    pub slow_l2: f64,
    pub slow_h1: f64,
    pub slow_h2: f64,
    pub fast_l2: f64,
    pub fast_h1: f64,
    pub fast_h2: f64,
    pub q_l2: f64,
    pub q_h1: f64,
    /// `||u(t)||^2 + 2 nu_min int ||u||_{H1}^2 - ||u0||^2` (should stay <= 0
    /// up to integrator tolerance for the restricted system).
    pub l2_balance_residual: f64,
    /// `||u_s(t)||_{H1}^2 + 2 nu_min int ||u_s||_{H2}^2`.
    pub slow_monitor: f64,
    /// `||u_f(t)||_{H1}^2 + nu_min int ||u_f||_{H2}^2`.
    pub fast_monitor: f64,
    pub compare_err_h1: Option<f64>,
}

#[derive(Debug)]
pub struct RunOutput {
    pub rows: Vec<DiagnosticsRow>,
    pub warnings: Vec<String>,
    /// Largest `H^1` difference over all steps (compare mode).
    pub sup_compare_err: Option<f64>,
    /// Set when the run stopped early on a non-finite state.
    pub aborted_at: Option<f64>,
    pub final_state: Option<SimState>,
}

struct MonitorAccum {
    nu_min: f64,
    int_h1: f64,
    int_slow_h2: f64,
    int_fast_h2: f64,
    prev: Option<(f64, f64, f64)>,
    e0: f64,
}

impl MonitorAccum {
    fn new(nu_min: f64, e0: f64) -> Self {
        Self { nu_min, int_h1: 0.0, int_slow_h2: 0.0, int_fast_h2: 0.0, prev: None, e0 }
    }

    fn push(&mut self, dt: f64, h1: f64, slow_h2: f64, fast_h2: f64) {
        if let Some((p1, p2, p3)) = self.prev {
            self.int_h1 += dt * 0.5 * (p1 * p1 + h1 * h1);
            self.int_slow_h2 += dt * 0.5 * (p2 * p2 + slow_h2 * slow_h2);
            self.int_fast_h2 += dt * 0.5 * (p3 * p3 + fast_h2 * fast_h2);
        }
        self.prev = Some((h1, slow_h2, fast_h2));
    }
}

fn make_row(
    t: f64,
    u: &SpectralField,
    ctx: &OperatorContext,
    acc: &MonitorAccum,
    compare_err: Option<f64>,
) -> DiagnosticsRow {
    let table = ctx.table();
    let (us, uf) = u.slow_fast_split(table);
    let q = u.apply_lpv(table);
    let slow_h1 = us.sobolev_norm(1.0);
    let fast_h1 = uf.sobolev_norm(1.0);
    DiagnosticsRow {
        t,
        l2: u.l2_norm(),
        h1: u.sobolev_norm(1.0),
        h2: u.sobolev_norm(2.0),
        slow_l2: us.l2_norm(),
        slow_h1,
        slow_h2: us.sobolev_norm(2.0),
        fast_l2: uf.l2_norm(),
        fast_h1,
        fast_h2: uf.sobolev_norm(2.0),
        q_l2: q.l2_norm(),
        q_h1: q.sobolev_norm(1.0),
        l2_balance_residual: u.l2_norm().powi(2) + 2.0 * acc.nu_min * acc.int_h1 - acc.e0,
        slow_monitor: slow_h1 * slow_h1 + 2.0 * acc.nu_min * acc.int_slow_h2,
        fast_monitor: fast_h1 * fast_h1 + acc.nu_min * acc.int_fast_h2,
        compare_err_h1: compare_err,
    }
}

fn diff_h1(a: &SpectralField, b: &SpectralField) -> f64 {
    let mut d = a.clone();
    d.axpy(-1.0, b);
    d.sobolev_norm(1.0)
}

/// Advance the configured system(s), sampling diagnostics.
pub fn run(cfg: &SimConfig) -> Result<RunOutput> {
    let warnings = cfg.validate()?;
    let ctx = OperatorContext::new(cfg.cutoff, cfg.dom, cfg.bw);
    run_with_context(cfg, &ctx, warnings)
}

/// Like [`run`] but reusing a prebuilt context (parameter sweeps).
pub fn run_with_context(
    cfg: &SimConfig,
    ctx: &OperatorContext,
    warnings: Vec<String>,
) -> Result<RunOutput> {
    let mut u0 = random_divfree_field(cfg.cutoff, cfg.seed, cfg.spectrum_slope, cfg.dom, cfg.branch_weights);
    if cfg.amplitude > 0.0 {
        let n = u0.l2_norm();
        if n > 0.0 {
            u0.scale(cfg.amplitude / n);
        }
    }
    let restricted = Integrator::new(
        ctx,
        SystemKind::Restricted,
        cfg.nu1,
        cfg.nu2,
        cfg.big_n,
        cfg.dt,
    )?;
    let full =
        Integrator::new(ctx, SystemKind::Full, cfg.nu1, cfg.nu2, cfg.big_n, cfg.dt)?;
    let nu_min = cfg.nu1.min(cfg.nu2);

    let (mut primary, secondary) = match cfg.mode {
        RunMode::Full => (SimState { t: 0.0, u: u0 }, None),
        RunMode::Restricted => (SimState { t: 0.0, u: u0 }, None),
        RunMode::Compare => {
            let s = SimState { t: 0.0, u: u0.clone() };
            (SimState { t: 0.0, u: u0 }, Some(s))
        }
    };
    let mut secondary = secondary;

    let mut acc = MonitorAccum::new(nu_min, primary.u.l2_norm().powi(2));
    let mut rows = Vec::new();
    let mut sup_err: Option<f64> = None;
    let steps = cfg.steps();

    let snapshot = |t: f64,
                    u: &SpectralField,
                    acc: &MonitorAccum,
                    err: Option<f64>| make_row(t, u, ctx, acc, err);

    // initial sample
    {
        let (us, uf) = primary.u.slow_fast_split(ctx.table());
        acc.push(0.0, primary.u.sobolev_norm(1.0), us.sobolev_norm(2.0), uf.sobolev_norm(2.0));
        let err = secondary.as_ref().map(|s| diff_h1(&primary.u, &s.u));
        if err.is_some() {
            sup_err = err;
        }
        rows.push(snapshot(0.0, &primary.u, &acc, err));
    }

    for step in 1..=steps {
        let stepped = match cfg.mode {
            RunMode::Full => full.step(&primary),
            _ => restricted.step(&primary),
        };
        primary = match stepped {
            Ok(s) => s,
            Err(crate::SolverError::NotFinite { t }) => {
                return Ok(RunOutput {
                    rows,
                    warnings,
                    sup_compare_err: sup_err,
                    aborted_at: Some(t),
                    final_state: None,
                });
            }
            Err(e) => return Err(e),
        };
        if let Some(sec) = secondary.take() {
            match full.step(&sec) {
                Ok(s) => secondary = Some(s),
                Err(crate::SolverError::NotFinite { t }) => {
                    return Ok(RunOutput {
                        rows,
                        warnings,
                        sup_compare_err: sup_err,
                        aborted_at: Some(t),
                        final_state: None,
                    });
                }
                Err(e) => return Err(e),
            }
        }
        let (us, uf) = primary.u.slow_fast_split(ctx.table());
        acc.push(
            cfg.dt,
            primary.u.sobolev_norm(1.0),
            us.sobolev_norm(2.0),
            uf.sobolev_norm(2.0),
        );
        let err = secondary.as_ref().map(|s| diff_h1(&primary.u, &s.u));
        if let Some(e) = err {
            sup_err = Some(sup_err.map_or(e, |s| s.max(e)));
        }
        if step % cfg.sample_every == 0 || step == steps {
            rows.push(snapshot(primary.t, &primary.u, &acc, err));
        }
    }
    Ok(RunOutput {
        rows,
        warnings,
        sup_compare_err: sup_err,
        aborted_at: None,
        final_state: Some(primary),
    })
}
