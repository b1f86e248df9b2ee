//! Potential-vorticity form of the slow-slow transport term.
//!
//! On the slow sector the bilinearity acts as horizontal transport of the
//! linear potential vorticity by the geostrophic flow:
//! `L_pv B(U_s, U_s) = -(D_eta^{-2} grad_H^perp Q) . grad_H Q`, where
//! `D_eta^{-2}` has Fourier symbol `|k_check_eta|^{-2}`. In coefficients
//! this is the scalar convolution
//! `out_q = sum_{p+r=q} (p1 r2 - p2 r1)_check |p_eta|^{-2} Q_p Q_r`,
//! which pairs to zero against `Q` itself.

use num_complex::Complex64;
use spectral_core::{Result, SpectralError, SpectralScalarField, WaveVector};

pub fn lpv_slow_transport(q_field: &SpectralScalarField) -> Result<SpectralScalarField> {
    let grid = q_field.grid();
    let dom = *q_field.dom();
    let kk = grid.cutoff();
    let origin = grid.idx_unchecked(WaveVector::new(0, 0, 0));
    if q_field.coeffs[origin] != Complex64::ZERO {
        return Err(SpectralError::Invariant("transport input must have zero mean".into()));
    }
    let inv_l1 = 1.0 / dom.l1();
    let inv_l2 = 1.0 / dom.l2();
    // per-mode 1/|p_eta|^2
    let mut inv_eta2 = vec![0.0; grid.len()];
    for p in grid.iter_nonzero() {
        let e = p.check_eta(&dom);
        inv_eta2[grid.idx_unchecked(p)] = 1.0 / (e[0] * e[0] + e[1] * e[1] + e[2] * e[2]);
    }
    let mut out = SpectralScalarField::zeros(kk as u32, dom);
    for w in grid.iter_nonzero() {
        let wi = grid.idx_unchecked(w);
        let mut acc = Complex64::ZERO;
        for p1 in (-kk).max(w.k1 - kk)..=kk.min(w.k1 + kk) {
            let cp1 = p1 as f64 * inv_l1;
            let cr1 = (w.k1 - p1) as f64 * inv_l1;
            for p2 in (-kk).max(w.k2 - kk)..=kk.min(w.k2 + kk) {
                let cp2 = p2 as f64 * inv_l2;
                let cr2 = (w.k2 - p2) as f64 * inv_l2;
                let cross = cp1 * cr2 - cp2 * cr1;
                if cross == 0.0 {
                    continue;
                }
                let lo = (-kk).max(w.k3 - kk);
                let hi = kk.min(w.k3 + kk);
                let base_p = grid.idx_unchecked(WaveVector::new(p1, p2, lo));
                let base_r = grid.idx_unchecked(WaveVector::new(w.k1 - p1, w.k2 - p2, w.k3 - lo));
                for step in 0..=(hi - lo) as usize {
                    let pi = base_p + step;
                    let ri = base_r - step;
                    acc += cross * inv_eta2[pi] * q_field.coeffs[pi] * q_field.coeffs[ri];
                }
            }
        }
        out.coeffs[wi] = acc;
    }
    Ok(out)
}
