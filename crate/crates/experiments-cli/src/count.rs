//! Counting experiments: localized FFF counts against the volume-law
//! bound shape, and mixed counts with power-law fits in the ball radius
//! and in the bandwidth.

use crate::report::{fmt_f, Report};
use resonance_sets::{count_fff, count_mixed, ols_loglog, FitResult};
use spectral_core::{DomainParams, Result, WaveVector};

/// Deterministic probe outputs used for per-`n` counts at a given size.
pub fn probe_outputs(size: f64) -> Vec<WaveVector> {
    let dirs: [[f64; 3]; 4] = [[1.0, 0.0, 0.0], [0.0, 0.0, 1.0], [1.0, 1.0, 1.0], [2.0, 1.0, 2.0]];
    dirs.iter()
        .map(|d| {
            let n = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
            WaveVector::new(
                (size * d[0] / n).round() as i32,
                (size * d[1] / n).round() as i32,
                (size * d[2] / n).round() as i32,
            )
        })
        .filter(|k| !k.is_zero())
        .collect()
}

pub struct FffCountOutcome {
    /// `(size, delta, mean count, bound shape, per-size constant)` rows.
    pub per_size: Vec<(f64, f64, f64, f64, f64)>,
    /// Largest per-size constant `count / (delta |n|^3 + |n|^2)`.
    pub fitted_c: f64,
    /// `max_i C_i / min_i C_i` over sizes with nonzero counts.
    pub c_spread: f64,
    pub all_zero: bool,
}

/// Localized FFF counts over dyadic `|n|` with `delta = c_delta / |n|`,
/// compared against the `C (delta |n|^3 + |n|^2)` shape.
pub fn fff_count_experiment(
    dom: &DomainParams,
    c_delta: f64,
    sizes: &[f64],
) -> Result<FffCountOutcome> {
    let mut per_size = Vec::new();
    let mut cs = Vec::new();
    for &size in sizes {
        let probes = probe_outputs(size);
        let mut total = 0u64;
        let mut delta_used = 0.0;
        for n in &probes {
            let nn = n.check_norm(dom);
            let delta = (c_delta / nn).min(dom.bandwidth_cap());
            delta_used = delta;
            total += count_fff(*n, delta, dom)?;
        }
        let mean = total as f64 / probes.len() as f64;
        let nn = size;
        let shape = delta_used * nn.powi(3) + nn * nn;
        let c = mean / shape;
        if mean > 0.0 {
            cs.push(c);
        }
        per_size.push((size, delta_used, mean, shape, c));
    }
    let all_zero = cs.is_empty();
    let fitted_c = cs.iter().cloned().fold(0.0f64, f64::max);
    let c_spread = if cs.len() >= 2 {
        cs.iter().cloned().fold(f64::MIN, f64::max) / cs.iter().cloned().fold(f64::MAX, f64::min)
    } else {
        1.0
    };
    Ok(FffCountOutcome { per_size, fitted_c, c_spread, all_zero })
}

pub struct MixedCountOutcome {
    /// `(M, delta*, count, bound shape)` rows of the M-ladder.
    pub m_rows: Vec<(f64, f64, u64, f64)>,
    pub m_fit: Option<FitResult>,
    /// `(delta*, count)` rows at the largest M.
    pub ds_rows: Vec<(f64, u64)>,
    pub ds_fit: Option<FitResult>,
}

/// Mixed counts: power-law fit in `M` at fixed `delta*`, then in
/// `delta*` at the largest `M`.
pub fn mixed_count_experiment(
    dom: &DomainParams,
    n: WaveVector,
    m_ladder: &[f64],
    delta_star: f64,
    ds_ladder: &[f64],
) -> Result<MixedCountOutcome> {
    let mut m_rows = Vec::new();
    let mut counts = Vec::new();
    for &m in m_ladder {
        let c = count_mixed(n, m, delta_star, dom)?;
        let shape = dom.l1() * dom.l2() * delta_star.sqrt() * m.powi(3)
            + dom.l1() * dom.l2() * m * m
            + (dom.l1() + dom.l2()) * m;
        m_rows.push((m, delta_star, c, shape));
        counts.push(c as f64);
    }
    let m_fit = ols_loglog(m_ladder, &counts);
    let m_big = m_ladder.iter().cloned().fold(0.0f64, f64::max);
    let mut ds_rows = Vec::new();
    let mut ds_counts = Vec::new();
    for &ds in ds_ladder {
        let c = count_mixed(n, m_big, ds, dom)?;
        ds_rows.push((ds, c));
        ds_counts.push(c as f64);
    }
    let ds_fit = ols_loglog(ds_ladder, &ds_counts);
    Ok(MixedCountOutcome { m_rows, m_fit, ds_rows, ds_fit })
}

pub fn fff_report(dom: &DomainParams, c_delta: f64, out: &FffCountOutcome) -> Report {
    let mut r = Report::new("count-fff");
    r.param("eta", dom.eta())
        .param("l1", dom.l1())
        .param("l2", dom.l2())
        .param("c-delta", c_delta);
    r.columns(&[
        "experiment",
        "eta",
        "l1",
        "l2",
        "n_size",
        "delta",
        "count",
        "predicted_bound",
        "fitted_c",
    ]);
    for (size, delta, count, shape, c) in &out.per_size {
        r.row(vec![
            "count-fff".into(),
            fmt_f(dom.eta()),
            fmt_f(dom.l1()),
            fmt_f(dom.l2()),
            fmt_f(*size),
            fmt_f(*delta),
            fmt_f(*count),
            fmt_f(out.fitted_c * shape),
            fmt_f(*c),
        ]);
    }
    r.note(format!("fitted C = {:.6} spread = {:.4}", out.fitted_c, out.c_spread));
    r
}

pub fn mixed_report(
    dom: &DomainParams,
    n: WaveVector,
    out: &MixedCountOutcome,
) -> Report {
    let mut r = Report::new("count-mixed");
    r.param("eta", dom.eta())
        .param("l1", dom.l1())
        .param("l2", dom.l2())
        .param("n", n);
    r.columns(&[
        "experiment",
        "eta",
        "l1",
        "l2",
        "param",
        "delta_star",
        "count",
        "predicted_bound",
        "fitted_exponent",
    ]);
    let me = out.m_fit.map(|f| f.slope).unwrap_or(f64::NAN);
    for (m, ds, c, shape) in &out.m_rows {
        r.row(vec![
            "count-mixed-M".into(),
            fmt_f(dom.eta()),
            fmt_f(dom.l1()),
            fmt_f(dom.l2()),
            fmt_f(*m),
            fmt_f(*ds),
            c.to_string(),
            fmt_f(*shape),
            fmt_f(me),
        ]);
    }
    let de = out.ds_fit.map(|f| f.slope).unwrap_or(f64::NAN);
    for (ds, c) in &out.ds_rows {
        r.row(vec![
            "count-mixed-delta".into(),
            fmt_f(dom.eta()),
            fmt_f(dom.l1()),
            fmt_f(dom.l2()),
            fmt_f(*ds),
            fmt_f(*ds),
            c.to_string(),
            String::new(),
            fmt_f(de),
        ]);
    }
    r
}
