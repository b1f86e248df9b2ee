//! Coefficient scans: closed form vs brute-force assembly, and the
//! smallness-bound ratio, over all triplets up to a max-norm.

use crate::report::{fmt_f, Report};
use operators::{ffs_closed_form, slow_coefficient_tabled};
use spectral_core::{DomainParams, FrameTable, Grid, Result, WaveVector};

pub struct ScanOutcome {
    pub scanned: u64,
    pub degenerate: u64,
    /// Worst of |closed - brute| / max(|brute|, noise floor / 1e-11) over
    /// non-degenerate triplets: <= 1e-11 means every triplet agrees to
    /// 1e-11 relative or to the f64 cancellation floor of the two
    /// assembly routes (kappa * eps * sum of summand magnitudes).
    pub worst_closed_rel: f64,
    /// Worst plain relative error, for visibility (noise-dominated near
    /// frequency degeneracies).
    pub worst_plain_rel: f64,
    /// Worst |S| over degenerate triplets (must be ~0).
    pub worst_degenerate_abs: f64,
    /// Max of |S| |n| / (|w_k - w_m| |k| |m|).
    pub max_bound_ratio: f64,
    pub rows: Vec<Vec<String>>,
}

/// Scan all convolution triplets with `max_norm(k), max_norm(m) <= max_norm`.
/// Rows are materialized only when `emit_rows` is set (the full scan is
/// far too large to dump).
pub fn coefficient_scan(dom: &DomainParams, max_norm: u32, emit_rows: bool) -> Result<ScanOutcome> {
    let table = FrameTable::new(2 * max_norm, *dom);
    let inner = Grid::new(max_norm);
    let mut out = ScanOutcome {
        scanned: 0,
        degenerate: 0,
        worst_closed_rel: 0.0,
        worst_plain_rel: 0.0,
        worst_degenerate_abs: 0.0,
        max_bound_ratio: 0.0,
        rows: Vec::new(),
    };
    let grid = table.grid();
    for k in inner.iter_nonzero() {
        for m in inner.iter_nonzero() {
            let n = -(k + m);
            if n.is_zero() {
                continue;
            }
            out.scanned += 1;
            let brute = slow_coefficient_tabled(&table, k, m, n);
            let closed = ffs_closed_form(k, m, n, dom)?;
            let wk = table.omega[grid.idx_unchecked(k)];
            let wm = table.omega[grid.idx_unchecked(m)];
            let dw = (wk - wm).abs();
            if dw < 1e-9 {
                out.degenerate += 1;
                out.worst_degenerate_abs = out.worst_degenerate_abs.max(brute.value.norm());
            } else {
                let err = (brute.value - closed.value).norm();
                // cancellation floor of the two assembly routes
                let noise = 100.0
                    * f64::EPSILON
                    * (brute.parts[0].norm()
                        + brute.parts[1].norm()
                        + closed.parts[0].norm()
                        + closed.parts[1].norm());
                out.worst_closed_rel =
                    out.worst_closed_rel.max(err / brute.value.norm().max(noise / 1e-11));
                out.worst_plain_rel =
                    out.worst_plain_rel.max(err / brute.value.norm().max(1e-12));
                let scale = k.check_norm(dom) * m.check_norm(dom) / n.check_norm(dom);
                out.max_bound_ratio = out.max_bound_ratio.max(brute.value.norm() / (dw * scale));
            }
            if emit_rows {
                out.rows.push(vec![
                    format!("{k}"),
                    format!("{m}"),
                    format!("{n}"),
                    "+-0".into(),
                    fmt_f(brute.value.re),
                    fmt_f(brute.value.im),
                    fmt_f((brute.value - closed.value).norm()),
                    fmt_f(if dw < 1e-9 { 0.0 } else { brute.value.norm() / (dw * k.check_norm(dom) * m.check_norm(dom) / n.check_norm(dom)) }),
                ]);
            }
        }
    }
    Ok(out)
}

pub fn scan_report(dom: &DomainParams, max_norm: u32, out: &ScanOutcome) -> Report {
    let mut r = Report::new("coeff-scan");
    r.param("eta", dom.eta())
        .param("l1", dom.l1())
        .param("l2", dom.l2())
        .param("max-norm", max_norm);
    r.columns(&["k", "m", "n", "sigma", "re_s", "im_s", "closed_form_error", "bound_ratio"]);
    for row in &out.rows {
        r.row(row.clone());
    }
    r.note(format!(
        "scanned={} degenerate={} worst_closed_rel={:.3e} worst_plain_rel={:.3e} worst_degenerate_abs={:.3e} max_bound_ratio={:.6}",
        out.scanned, out.degenerate, out.worst_closed_rel, out.worst_plain_rel, out.worst_degenerate_abs, out.max_bound_ratio
    ));
    r
}

/// Triplets whose horizontal parts both vanish have identically zero
/// coefficient and ratio.
pub fn vertical_triplets_have_zero_ratio(dom: &DomainParams, zmax: i32) -> bool {
    for k3 in -zmax..=zmax {
        for m3 in -zmax..=zmax {
            let k = WaveVector::new(0, 0, k3);
            let m = WaveVector::new(0, 0, m3);
            let n = -(k + m);
            if k.is_zero() || m.is_zero() || n.is_zero() {
                continue;
            }
            let s = operators::slow_coefficient(k, m, n, dom).unwrap().value;
            if s.norm() > 1e-14 {
                return false;
            }
        }
    }
    true
}
