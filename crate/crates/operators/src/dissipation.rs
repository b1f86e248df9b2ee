//! Modified diagonal dissipation and the oscillatory remainder of the
//! modulated viscosity operator.
//!
//! The slow/fast symbols are computed directly from the eigenframes,
//! `s11 = <nu r0, r0>`, `s22 = <nu r+, conj r+>` with
//! `nu = diag(nu1, nu1, nu1, nu2)`; both lie in `[nu_min, nu_max]`, which
//! is the ellipticity property. The printed fast symbol in the source
//! material evaluates to `nu1/2` at `k_H = 0` and violates that bound;
//! [`printed_nu22_max_residual`] reports the gap between it and the
//! frame-derived value.

use num_complex::Complex64;
use spectral_core::{
    DomainParams, FrameTable, Result, SpectralComponents, SpectralError, SpectralField,
};

/// Per-mode dissipation data for a fixed `(nu1, nu2)`.
#[derive(Debug, Clone)]
pub struct DissipationSymbols {
    pub nu1: f64,
    pub nu2: f64,
    /// Slow symbol `<nu r0, r0>`.
    pub s11: Vec<f64>,
    /// Fast symbol `<nu r+, conj r+>`.
    pub s22: Vec<f64>,
    /// `|k_check|^2`.
    pub lap: Vec<f64>,
    /// Off-diagonal slow-fast coupling `<nu r0, conj r+>`.
    pub n0p: Vec<Complex64>,
    /// Off-diagonal fast-fast coupling `<nu r+, conj r->`.
    pub npm: Vec<Complex64>,
}

impl DissipationSymbols {
    pub fn new(table: &FrameTable, nu1: f64, nu2: f64) -> Result<Self> {
        if nu1 < 0.0 || nu2 < 0.0 {
            return Err(SpectralError::InvalidDomain(format!(
                "viscosities must be nonnegative, got ({nu1}, {nu2})"
            )));
        }
        let n = table.omega.len();
        let mut s11 = vec![0.0; n];
        let mut s22 = vec![0.0; n];
        let mut lap = vec![0.0; n];
        let mut n0p = vec![Complex64::ZERO; n];
        let mut npm = vec![Complex64::ZERO; n];
        let nu = [nu1, nu1, nu1, nu2];
        for i in 0..n {
            let r0 = &table.r0[i];
            let rp = &table.rplus[i];
            lap[i] = table.check_norm[i] * table.check_norm[i];
            let mut a = 0.0;
            let mut b = 0.0;
            let mut c = Complex64::ZERO;
            let mut d = Complex64::ZERO;
            for j in 0..4 {
                a += nu[j] * r0[j] * r0[j];
                b += nu[j] * rp[j].norm_sqr();
                c += nu[j] * r0[j] * rp[j].conj();
                d += nu[j] * rp[j] * rp[j];
            }
            s11[i] = a;
            s22[i] = b;
            n0p[i] = c;
            npm[i] = d;
        }
        Ok(Self { nu1, nu2, s11, s22, lap, n0p, npm })
    }

    pub fn nu_min(&self) -> f64 {
        self.nu1.min(self.nu2)
    }
}

/// `A~ U = -nu~11 lap U_s - nu~22 lap U_f` per mode; the output carries no
/// `r00` content.
pub fn modified_dissipation(
    u: &SpectralField,
    table: &FrameTable,
    syms: &DissipationSymbols,
) -> SpectralField {
    let comps = SpectralComponents::of(u, table);
    let mut out = SpectralField::zeros(u.grid().cutoff() as u32, *u.dom());
    let coeffs = out.coeffs_mut();
    for i in 0..comps.a0.len() {
        let r0 = &table.r0[i];
        let rp = &table.rplus[i];
        let a0 = syms.lap[i] * syms.s11[i] * comps.a0[i];
        let ap = syms.lap[i] * syms.s22[i] * comps.ap[i];
        let am = syms.lap[i] * syms.s22[i] * comps.am[i];
        for j in 0..4 {
            coeffs[i][j] = a0 * r0[j] + ap * rp[j] + am * rp[j].conj();
        }
    }
    out
}

/// Convenience wrapper validating the viscosities per call.
pub fn modified_dissipation_checked(
    u: &SpectralField,
    table: &FrameTable,
    nu1: f64,
    nu2: f64,
) -> Result<SpectralField> {
    let syms = DissipationSymbols::new(table, nu1, nu2)?;
    Ok(modified_dissipation(u, table, &syms))
}

/// The tau-oscillatory off-diagonal remainder `(A - A~) u` of the
/// modulated viscosity operator at fast time `tau`: per mode,
/// `|k|^2 sum_{sigma != sigma'} e^{i(sigma-sigma') omega tau}
/// <nu r^sigma, conj r^sigma'> u^sigma r^sigma'`. Vanishes identically
/// when `nu1 = nu2`.
pub fn oscillatory_dissipation(
    u: &SpectralField,
    table: &FrameTable,
    syms: &DissipationSymbols,
    tau: f64,
) -> SpectralField {
    let comps = SpectralComponents::of(u, table);
    let mut out = SpectralField::zeros(u.grid().cutoff() as u32, *u.dom());
    let coeffs = out.coeffs_mut();
    for i in 0..comps.a0.len() {
        let p = Complex64::from_polar(1.0, table.omega[i] * tau);
        let n0p = syms.n0p[i];
        let npm = syms.npm[i];
        let lap = syms.lap[i];
        // slow output: + <- (p * conj(n0p)) u+, - <- (conj p * n0p) u-
        let a0 = lap * (p * n0p.conj() * comps.ap[i] + p.conj() * n0p * comps.am[i]);
        // fast + output: 0 <- conj(p) n0p u0, - <- conj(p)^2 conj(npm) u-
        let ap = lap
            * (p.conj() * n0p * comps.a0[i] + p.conj() * p.conj() * npm.conj() * comps.am[i]);
        // fast - output: 0 <- p conj(n0p) u0, + <- p^2 npm u+
        let am = lap * (p * n0p.conj() * comps.a0[i] + p * p * npm * comps.ap[i]);
        let r0 = &table.r0[i];
        let rp = &table.rplus[i];
        for j in 0..4 {
            coeffs[i][j] = a0 * r0[j] + ap * rp[j] + am * rp[j].conj();
        }
    }
    out
}

/// Max absolute gap between the frame-derived fast symbol and the printed
/// closed form `(nu1 eta^2 k3^2 + 2(nu1+nu2)|k_H|^2) / (2|k_eta|^2)`.
pub fn printed_nu22_max_residual(
    table: &FrameTable,
    dom: &DomainParams,
    syms: &DissipationSymbols,
) -> f64 {
    let grid = table.grid();
    let mut worst: f64 = 0.0;
    for k in grid.iter_nonzero() {
        let i = grid.idx_unchecked(k);
        let kh2 = {
            let h = k.check_h(dom);
            h[0] * h[0] + h[1] * h[1]
        };
        let keta2 = {
            let e = k.check_eta(dom);
            e[0] * e[0] + e[1] * e[1] + e[2] * e[2]
        };
        let printed = (syms.nu1 * dom.eta() * dom.eta() * (k.k3 * k.k3) as f64
            + 2.0 * (syms.nu1 + syms.nu2) * kh2)
            / (2.0 * keta2);
        worst = worst.max((printed - syms.s22[i]).abs());
    }
    worst
}
