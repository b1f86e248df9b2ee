//! Lower-bound family experiment: the explicit box construction against
//! its continuum estimate.

use crate::report::{fmt_f, Report};
use resonance_sets::{box_estimate, lower_bound_family};
use spectral_core::{dispersion, DomainParams, Result};

pub struct LowerBoundOutcome {
    /// `(M, family count, box estimate, ratio)` rows.
    pub rows: Vec<(u32, usize, f64, f64)>,
    /// Worst postcondition violation over emitted members (should be 0).
    pub violations: usize,
}

pub fn lower_bound_experiment(
    eta: f64,
    delta_star: f64,
    m_ladder: &[u32],
) -> Result<LowerBoundOutcome> {
    let dom = DomainParams::new(1.0, 1.0, eta)?;
    let mut rows = Vec::new();
    let mut violations = 0usize;
    for &m in m_ladder {
        let family = lower_bound_family(m, delta_star, eta)?;
        for k in &family {
            let norm = ((k.k1 as i64 * k.k1 as i64
                + k.k2 as i64 * k.k2 as i64
                + k.k3 as i64 * k.k3 as i64) as f64)
                .sqrt();
            let w = dispersion(*k, &dom)?;
            if !(m as f64 <= norm && norm < 2.0 * m as f64) || (w - 1.0).abs() > delta_star {
                violations += 1;
            }
        }
        let est = box_estimate(m, delta_star, eta);
        let ratio = family.len() as f64 / est;
        rows.push((m, family.len(), est, ratio));
    }
    Ok(LowerBoundOutcome { rows, violations })
}

pub fn lower_bound_report(eta: f64, delta_star: f64, out: &LowerBoundOutcome) -> Report {
    let mut r = Report::new("lower-bound");
    r.param("eta", eta).param("delta-star", delta_star);
    r.columns(&["experiment", "eta", "delta_star", "M", "count", "box_estimate", "ratio"]);
    for (m, count, est, ratio) in &out.rows {
        r.row(vec![
            "lower-bound".into(),
            fmt_f(eta),
            fmt_f(delta_star),
            m.to_string(),
            count.to_string(),
            fmt_f(*est),
            fmt_f(*ratio),
        ]);
    }
    r.note(format!("postcondition violations: {}", out.violations));
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_tracks_the_box_estimate() {
        let out = lower_bound_experiment(2.0, 0.1, &[32, 64]).unwrap();
        assert_eq!(out.violations, 0);
        for (_, _, _, ratio) in &out.rows {
            assert!(*ratio >= 0.9, "ratio {ratio} below 0.9");
            assert!(*ratio < 2.0, "ratio {ratio} implausibly large");
        }
    }
}
