//! Triad interaction coefficients.
//!
//! The scalar weight a triad `(k, m, n)` with signs `(s1, s2, s3)`
//! contributes to the bilinearity's output channel at `-n` is assembled
//! directly from eigenframes and the advection symbol `i m_check'`:
//!
//! `value = i (r_k^{s1} . m') (r_m^{s2} . conj r_{-n}^{-s3})`
//!
//! For the slow-output fast-fast channel the two orderings `(+,-,0)` and
//! `(-,+,0)` of a same-field bilinearity combine into the coefficient
//! `S_kmn^{+-0}` of the slow coefficient formula, for which closed forms
//! exist (horizontal, one-vertical and both-vertical branches). The
//! closed forms shipped here are the ones that agree with the frame
//! assembly to machine precision; they differ from the printed ones by
//! the placement of a factor `i` and, in the one-vertical branch, by an
//! `eta` replacing a `1`.

use num_complex::Complex64;
use spectral_core::{
    eigenframe, DomainParams, Result, Sign, SpectralError, WaveVector,
};

/// A triad coupling scalar with its two retained factors or summands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coupling {
    pub value: Complex64,
    /// For [`coupling`]: `(i * advection factor, projection factor)`.
    /// For [`slow_coefficient`] / [`ffs_closed_form`]: the two summands.
    pub parts: [Complex64; 2],
}

fn dot_rc(r: &[Complex64; 4], v: &[f64; 4]) -> Complex64 {
    r[0] * v[0] + r[1] * v[1] + r[2] * v[2] + r[3] * v[3]
}

fn dot_cc(a: &[Complex64; 4], b: &[Complex64; 4]) -> Complex64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

fn sign_row(f: &spectral_core::EigenFrame, s: Sign) -> [Complex64; 4] {
    match s {
        Sign::Zero => {
            let r = f.r0;
            [r[0].into(), r[1].into(), r[2].into(), r[3].into()]
        }
        Sign::Plus => f.rplus,
        Sign::Minus => f.rminus(),
    }
}

fn negate(s: Sign) -> Sign {
    match s {
        Sign::Zero => Sign::Zero,
        Sign::Plus => Sign::Minus,
        Sign::Minus => Sign::Plus,
    }
}

/// The scalar multiplying `u_k^{s1} v_m^{s2}` in the `-n` output channel.
pub fn coupling(
    k: WaveVector,
    m: WaveVector,
    n: WaveVector,
    sigma: [Sign; 3],
    dom: &DomainParams,
) -> Result<Coupling> {
    if !(k + m + n).is_zero() {
        return Err(SpectralError::ConvolutionViolation);
    }
    let fk = eigenframe(k, dom)?;
    let fm = eigenframe(m, dom)?;
    let fq = eigenframe(-n, dom)?;
    let rk = sign_row(&fk, sigma[0]);
    let rm = sign_row(&fm, sigma[1]);
    let rq = sign_row(&fq, negate(sigma[2]));
    let adv = Complex64::i() * dot_rc(&rk, &m.check_prime(dom));
    let rq_conj = [rq[0].conj(), rq[1].conj(), rq[2].conj(), rq[3].conj()];
    let proj = dot_cc(&rm, &rq_conj);
    Ok(Coupling { value: adv * proj, parts: [adv, proj] })
}

/// `S_kmn^{+-0}` assembled from frames:
/// `(r_k^+ . m') (r_m^- . r_n^0) + (r_m^- . k') (r_k^+ . r_n^0)`.
pub fn slow_coefficient(
    k: WaveVector,
    m: WaveVector,
    n: WaveVector,
    dom: &DomainParams,
) -> Result<Coupling> {
    if !(k + m + n).is_zero() {
        return Err(SpectralError::ConvolutionViolation);
    }
    let fk = eigenframe(k, dom)?;
    let fm = eigenframe(m, dom)?;
    let fn_ = eigenframe(n, dom)?;
    let rp_k = fk.rplus;
    let rm_m = fm.rminus();
    let t1 = dot_rc(&rp_k, &m.check_prime(dom)) * dot_rc(&rm_m, &fn_.r0);
    let t2 = dot_rc(&rm_m, &k.check_prime(dom)) * dot_rc(&rp_k, &fn_.r0);
    Ok(Coupling { value: t1 + t2, parts: [t1, t2] })
}

/// Table-backed variant of [`slow_coefficient`] for large scans; all of
/// `k`, `m`, `n` must lie within the table's grid.
pub fn slow_coefficient_tabled(
    table: &spectral_core::FrameTable,
    k: WaveVector,
    m: WaveVector,
    n: WaveVector,
) -> Coupling {
    let grid = table.grid();
    let dom = table.dom();
    let (ki, mi, ni) = (grid.idx_unchecked(k), grid.idx_unchecked(m), grid.idx_unchecked(n));
    let rp_k = &table.rplus[ki];
    let rp_m = &table.rplus[mi];
    let r0_n = &table.r0[ni];
    let mp = m.check_prime(dom);
    let kp = k.check_prime(dom);
    let rm_m = [rp_m[0].conj(), rp_m[1].conj(), rp_m[2].conj(), rp_m[3].conj()];
    let t1 = dot_rc(rp_k, &mp) * dot_rc(&rm_m, r0_n);
    let t2 = dot_rc(&rm_m, &kp) * dot_rc(rp_k, r0_n);
    Coupling { value: t1 + t2, parts: [t1, t2] }
}

/// Closed-form `S_kmn^{+-0}` for the fast-fast-slow channel.
///
/// Branches, with `w = omega`, `D = 2|k_eta||m_eta||n_eta||k_H||m_H|`:
/// * both horizontal parts nonzero:
///   `S = [ (wm^2-wk^2) * |k|^2|m|^2 (1-eta^2)^{-1} (k_H x m_H)(eta^2 - wk wm)
///          - i (wm-wk) * eta ((k3^2|m_H|^2 + m3^2|k_H|^2)(k_H.m_H) - 2 k3 m3 |k_H|^2|m_H|^2) ] / D`
/// * `k_H = 0`: `S = (eta - wm)(i m1 + m2) k3 |m_H| / (2|m_eta||n_eta|)`
/// * `m_H = 0`: `S = (wk - eta)(i k1 - k2) m3 |k_H| / (2|k_eta||n_eta|)`
/// * both vertical: `S = 0`.
///
/// The cross product is `k_H x m_H = k1 m2 - k2 m1` on the domain-adjusted
/// horizontal parts. Whenever `wk = wm` every branch vanishes identically.
pub fn ffs_closed_form(
    k: WaveVector,
    m: WaveVector,
    n: WaveVector,
    dom: &DomainParams,
) -> Result<Coupling> {
    if !(k + m + n).is_zero() {
        return Err(SpectralError::ConvolutionViolation);
    }
    if k.is_zero() || m.is_zero() || n.is_zero() {
        return Err(SpectralError::ZeroWaveVector);
    }
    let eta = dom.eta();
    let wk = spectral_core::dispersion(k, dom)?;
    let wm = spectral_core::dispersion(m, dom)?;
    let (kh, mh) = (k.has_horizontal(), m.has_horizontal());
    if !kh && !mh {
        return Ok(Coupling { value: Complex64::ZERO, parts: [Complex64::ZERO; 2] });
    }
    let n_eta = n.check_eta_norm(dom);
    if !kh {
        let cm = m.check(dom);
        let mh_norm = m.check_h_norm(dom);
        let m_eta = m.check_eta_norm(dom);
        let v = (eta - wm) * (k.k3 as f64) * mh_norm / (2.0 * m_eta * n_eta)
            * Complex64::new(cm[1], cm[0]);
        return Ok(Coupling { value: v, parts: [v, Complex64::ZERO] });
    }
    if !mh {
        let ck = k.check(dom);
        let kh_norm = k.check_h_norm(dom);
        let k_eta = k.check_eta_norm(dom);
        let v = (wk - eta) * (m.k3 as f64) * kh_norm / (2.0 * k_eta * n_eta)
            * Complex64::new(-ck[1], ck[0]);
        return Ok(Coupling { value: v, parts: [v, Complex64::ZERO] });
    }
    let ck = k.check(dom);
    let cm = m.check(dom);
    let (k3, m3) = (k.k3 as f64, m.k3 as f64);
    let kh2 = ck[0] * ck[0] + ck[1] * ck[1];
    let mh2 = cm[0] * cm[0] + cm[1] * cm[1];
    let k2 = kh2 + k3 * k3;
    let m2 = mh2 + m3 * m3;
    let cross = ck[0] * cm[1] - ck[1] * cm[0];
    let dot_h = ck[0] * cm[0] + ck[1] * cm[1];
    let denom = 2.0
        * k.check_eta_norm(dom)
        * m.check_eta_norm(dom)
        * n_eta
        * kh2.sqrt()
        * mh2.sqrt();
    let g1 = (wm * wm - wk * wk) * (k2 * m2 / (1.0 - eta * eta)) * cross * (eta * eta - wk * wm)
        / denom;
    let g2 = (wm - wk) * eta * ((k3 * k3 * mh2 + m3 * m3 * kh2) * dot_h - 2.0 * k3 * m3 * kh2 * mh2)
        / denom;
    // The derivation expands r_n^0 through the linear vector
    // (-n2, n1, 0, -eta n3); for a vertical n the actual frame vector is
    // (0,0,0,1) = -sign(n3) times that normalization.
    let branch = if n.has_horizontal() { 1.0 } else { -(n.k3 as f64).signum() };
    Ok(Coupling {
        value: branch * Complex64::new(g1, -g2),
        parts: [branch * Complex64::new(g1, 0.0), branch * Complex64::new(0.0, -g2)],
    })
}

/// Ratio `|S| |n| / (|w_k - w_m| |k| |m|)` probing the coefficient
/// smallness bound for the mixed channel. When the frequencies coincide
/// the coefficient must vanish; a nonzero `|S|` there is flagged.
pub fn ffs_coefficient_bound_check(
    k: WaveVector,
    m: WaveVector,
    n: WaveVector,
    dom: &DomainParams,
) -> Result<f64> {
    let s = slow_coefficient(k, m, n, dom)?.value;
    let wk = spectral_core::dispersion(k, dom)?;
    let wm = spectral_core::dispersion(m, dom)?;
    let scale = k.check_norm(dom) * m.check_norm(dom) / n.check_norm(dom);
    if wk == wm {
        if s.norm() <= 1e-12 * scale {
            return Ok(0.0);
        }
        return Err(SpectralError::Invariant(format!(
            "S({k},{m},{n}) = {s} nonzero at w_k = w_m"
        )));
    }
    Ok(s.norm() / ((wk - wm).abs() * scale))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dom(eta: f64) -> DomainParams {
        DomainParams::new(1.0, 1.0, eta).unwrap()
    }

    #[test]
    fn all_vertical_slow_coupling_vanishes() {
        // sigma = (0,0,0) with all three wavevectors vertical: the advection
        // pairing hits the zero fourth slot of m'.
        let d = dom(2.0);
        let c = coupling(
            WaveVector::new(0, 0, 1),
            WaveVector::new(0, 0, 2),
            WaveVector::new(0, 0, -3),
            [Sign::Zero; 3],
            &d,
        )
        .unwrap();
        assert!(c.value.norm() < 1e-15);
    }

    #[test]
    fn closed_form_matches_brute_force() {
        let mut worst = 0.0f64;
        for (l1, l2, eta) in [(1.0, 1.0, 2.0), (1.3, 0.7, 0.4), (1.0, 1.0, 1.5)] {
            let d = DomainParams::new(l1, l2, eta).unwrap();
            for k1 in -3..=3 {
                for k2 in -3..=3i32 {
                    for k3 in -3..=3 {
                        for m1 in -3..=3 {
                            for m2 in -3..=3i32 {
                                for m3 in -3..=3 {
                                    let k = WaveVector::new(k1, k2, k3);
                                    let m = WaveVector::new(m1, m2, m3);
                                    let n = -(k + m);
                                    if k.is_zero() || m.is_zero() || n.is_zero() {
                                        continue;
                                    }
                                    let brute = slow_coefficient(k, m, n, &d).unwrap().value;
                                    let closed = ffs_closed_form(k, m, n, &d).unwrap().value;
                                    let dw = (spectral_core::dispersion(k, &d).unwrap()
                                        - spectral_core::dispersion(m, &d).unwrap())
                                    .abs();
                                    if dw < 1e-9 {
                                        // degenerate: both must vanish identically
                                        assert!(brute.norm() < 1e-10 && closed.norm() < 1e-10);
                                        continue;
                                    }
                                    worst = worst.max((brute - closed).norm() / brute.norm().max(1e-12));
                                }
                            }
                        }
                    }
                }
            }
        }
        assert!(worst < 1e-11, "worst closed-form relative error {worst}");
    }

    #[test]
    fn closed_form_case_iii_exactly_zero() {
        let d = dom(0.4);
        let s = ffs_closed_form(
            WaveVector::new(0, 0, 2),
            WaveVector::new(0, 0, -5),
            WaveVector::new(0, 0, 3),
            &d,
        )
        .unwrap();
        assert_eq!(s.value, Complex64::ZERO);
    }

    #[test]
    fn equal_frequencies_kill_the_coefficient() {
        // |k| = |m| with k3 = m3 forces w_k = w_m on the isotropic lattice.
        let d = dom(2.0);
        let k = WaveVector::new(3, 4, 2);
        let m = WaveVector::new(4, -3, 2);
        let n = -(k + m);
        let s = slow_coefficient(k, m, n, &d).unwrap().value;
        assert!(s.norm() < 1e-13, "|S| = {}", s.norm());
        assert_eq!(ffs_coefficient_bound_check(k, m, n, &d).unwrap(), 0.0);
    }

    #[test]
    fn bound_ratio_finite_and_scale_invariant() {
        let d = dom(2.0);
        let k = WaveVector::new(1, 2, 3);
        let m = WaveVector::new(2, -1, 1);
        let n = -(k + m);
        let r = ffs_coefficient_bound_check(k, m, n, &d).unwrap();
        assert!(r.is_finite() && r > 0.0);
        // rescaling the horizontal periods keeps the ratio finite
        let d2 = DomainParams::new(2.0, 2.0, 2.0).unwrap();
        let r2 = ffs_coefficient_bound_check(k, m, n, &d2).unwrap();
        assert!(r2.is_finite());
    }

    #[test]
    fn slow_coefficient_combines_orderings_of_coupling() {
        // S = eps * (c(k,m,n,(+,-,0)) + c(m,k,n,(-,+,0))) / i, where
        // eps = r0_{-n} / r0_n = -1 for n with a horizontal part, +1 else.
        let d = DomainParams::new(1.3, 0.7, 1.7).unwrap();
        for (k, m) in [
            (WaveVector::new(1, 2, -1), WaveVector::new(0, 1, 3)),
            (WaveVector::new(2, 0, 1), WaveVector::new(-2, 0, 4)), // vertical n
        ] {
            let n = -(k + m);
            let c1 = coupling(k, m, n, [Sign::Plus, Sign::Minus, Sign::Zero], &d).unwrap();
            let c2 = coupling(m, k, n, [Sign::Minus, Sign::Plus, Sign::Zero], &d).unwrap();
            let eps = if n.has_horizontal() { -1.0 } else { 1.0 };
            let combined = eps * (c1.value + c2.value) / Complex64::i();
            let s = slow_coefficient(k, m, n, &d).unwrap().value;
            assert!(
                (combined - s).norm() <= 1e-12 * s.norm().max(1.0),
                "combined {combined} vs S {s} at n={n}"
            );
        }
    }
}
