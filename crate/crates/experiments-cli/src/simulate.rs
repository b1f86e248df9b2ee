//! Diagnostics-series emission around `solver::run`.

use crate::report::{fmt_f, Report};
use solver::{RunMode, RunOutput, SimConfig};

pub fn simulate_report(cfg: &SimConfig, out: &RunOutput) -> Report {
    let mut r = Report::new("simulate");
    r.param("eta", cfg.dom.eta())
        .param("l1", cfg.dom.l1())
        .param("l2", cfg.dom.l2())
        .param("cutoff", cfg.cutoff)
        .param("nu1", cfg.nu1)
        .param("nu2", cfg.nu2)
        .param("big-n", cfg.big_n)
        .param("dt", cfg.dt)
        .param("t-final", cfg.t_final)
        .param("seed", cfg.seed)
        .param("c-delta", cfg.bw.c_delta)
        .param("c-delta-star", cfg.bw.c_delta_star)
        .param("zeta", cfg.bw.zeta)
        .param(
            "mode",
            match cfg.mode {
                RunMode::Full => "full",
                RunMode::Restricted => "restricted",
                RunMode::Compare => "compare",
            },
        );
    for w in &out.warnings {
        r.note(format!("warning: {w}"));
    }
    if let Some(t) = out.aborted_at {
        r.note(format!("aborted on non-finite state at t = {t}"));
    }
    r.columns(&[
        "t",
        "l2",
        "h1",
        "h2",
        "slow_l2",
        "slow_h1",
        "slow_h2",
        "fast_l2",
        "fast_h1",
        "fast_h2",
        "q_l2",
        "q_h1",
        "l2_balance_residual",
        "slow_monitor",
        "fast_monitor",
        "compare_err_h1",
    ]);
    for row in &out.rows {
        r.row(vec![
            fmt_f(row.t),
            fmt_f(row.l2),
            fmt_f(row.h1),
            fmt_f(row.h2),
            fmt_f(row.slow_l2),
            fmt_f(row.slow_h1),
            fmt_f(row.slow_h2),
            fmt_f(row.fast_l2),
            fmt_f(row.fast_h1),
            fmt_f(row.fast_h2),
            fmt_f(row.q_l2),
            fmt_f(row.q_h1),
            fmt_f(row.l2_balance_residual),
            fmt_f(row.slow_monitor),
            fmt_f(row.fast_monitor),
            row.compare_err_h1.map(fmt_f).unwrap_or_default(),
        ]);
    }
    r
}
