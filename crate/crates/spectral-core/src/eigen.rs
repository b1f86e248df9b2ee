//! Dispersion relation, eigenframes of the wave generator, and cached
//! per-mode frame tables.
//!
//! At a nonzero wavevector the generator `L_k = P_k (eta J ⊕ J) P_k` (Leray
//! projector times the block rotation) has eigenvalues `0, 0, ±i omega_k`
//! with `omega_k = |k_eta|/|k|`. The kernel is spanned by the potential
//! mode `r00` (velocity parallel to `k_check`, zero density) and the
//! geostrophic mode `r0`; the oscillatory pair `r±` carries inertia-gravity
//! waves. The orientation of the velocity rotation block is fixed so that
//! `L_k r± = ±i omega_k r±` holds for the frames below; the density block
//! keeps the printed orientation. See `generator_matrix`.

use crate::domain::{DomainParams, WaveVector};
use crate::{Result, SpectralError};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Eigenframe branch labels used by projections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sigma {
    /// Potential mode `r00` (excluded from the dynamics).
    ZeroZero,
    /// Slow (geostrophic) mode `r0`.
    Zero,
    /// Fast mode `r+`.
    Plus,
    /// Fast mode `r-`.
    Minus,
}

/// Interaction sign for triad bookkeeping: `0`, `+` or `-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Zero,
    Plus,
    Minus,
}

impl Sign {
    pub fn value(&self) -> f64 {
        match self {
            Sign::Zero => 0.0,
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn is_fast(&self) -> bool {
        !matches!(self, Sign::Zero)
    }

    pub const FAST: [Sign; 2] = [Sign::Plus, Sign::Minus];
    pub const ALL: [Sign; 3] = [Sign::Zero, Sign::Plus, Sign::Minus];
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Sign::Zero => "0",
            Sign::Plus => "+",
            Sign::Minus => "-",
        };
        write!(f, "{s}")
    }
}

/// Dispersion relation `omega_k = |k_check_eta| / |k_check|`, valued in
/// `[min(eta,1), max(eta,1)]`.
pub fn dispersion(k: WaveVector, dom: &DomainParams) -> Result<f64> {
    if k.is_zero() {
        return Err(SpectralError::ZeroWaveVector);
    }
    Ok(k.check_eta_norm(dom) / k.check_norm(dom))
}

/// The orthonormal quadruple `{r00, r0, r+, r-}` at one wavevector together
/// with `omega_k`. `r00` and `r0` are real; `r- = conj(r+)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenFrame {
    pub omega: f64,
    pub r00: [f64; 4],
    pub r0: [f64; 4],
    pub rplus: [Complex64; 4],
}

impl EigenFrame {
    pub fn rminus(&self) -> [Complex64; 4] {
        [self.rplus[0].conj(), self.rplus[1].conj(), self.rplus[2].conj(), self.rplus[3].conj()]
    }

    /// The frame as four complex rows `(r00, r0, r+, r-)`, handy for Gram tests.
    pub fn rows(&self) -> [[Complex64; 4]; 4] {
        let re = |v: &[f64; 4]| {
            [
                Complex64::new(v[0], 0.0),
                Complex64::new(v[1], 0.0),
                Complex64::new(v[2], 0.0),
                Complex64::new(v[3], 0.0),
            ]
        };
        [re(&self.r00), re(&self.r0), self.rplus, self.rminus()]
    }

    pub fn row(&self, sigma: Sigma) -> [Complex64; 4] {
        match sigma {
            Sigma::ZeroZero => self.rows()[0],
            Sigma::Zero => self.rows()[1],
            Sigma::Plus => self.rplus,
            Sigma::Minus => self.rminus(),
        }
    }
}

fn norm4(v: &[f64; 4]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]).sqrt()
}

/// Normalized eigenframe at `k`. Horizontal (`k_H != 0`) and vertical
/// branches are both normalized explicitly rather than through the
/// closed-form normalizers, which keeps small `|k_H|` underflow-safe.
pub fn eigenframe(k: WaveVector, dom: &DomainParams) -> Result<EigenFrame> {
    if k.is_zero() {
        return Err(SpectralError::ZeroWaveVector);
    }
    let eta = dom.eta();
    let omega = dispersion(k, dom)?;
    if k.has_horizontal() {
        let c = k.check(dom);
        let k3 = k.k3 as f64;
        let kh2 = c[0] * c[0] + c[1] * c[1];

        let mut r00 = [c[0], c[1], c[2], 0.0];
        let n = norm4(&r00);
        for x in &mut r00 {
            *x /= n;
        }

        let mut r0 = [-c[1], c[0], 0.0, -eta * k3];
        let n = norm4(&r0);
        for x in &mut r0 {
            *x /= n;
        }

        let a_re = [-eta * c[1] * k3, eta * c[0] * k3, 0.0, kh2];
        let a_im = [omega * c[0] * k3, omega * c[1] * k3, -omega * kh2, 0.0];
        let n = (norm4(&a_re).powi(2) + norm4(&a_im).powi(2)).sqrt();
        let rplus = [
            Complex64::new(a_re[0] / n, a_im[0] / n),
            Complex64::new(a_re[1] / n, a_im[1] / n),
            Complex64::new(a_re[2] / n, a_im[2] / n),
            Complex64::new(a_re[3] / n, a_im[3] / n),
        ];
        Ok(EigenFrame { omega, r00, r0, rplus })
    } else {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Ok(EigenFrame {
            omega,
            r00: [0.0, 0.0, 1.0, 0.0],
            r0: [0.0, 0.0, 0.0, 1.0],
            rplus: [Complex64::new(0.0, s), Complex64::new(s, 0.0), Complex64::ZERO, Complex64::ZERO],
        })
    }
}

/// Leray projector at `k` extended to four components (identity on the
/// density slot).
pub fn leray_matrix(k: WaveVector, dom: &DomainParams) -> [[f64; 4]; 4] {
    let c = k.check(dom);
    let n2 = c[0] * c[0] + c[1] * c[1] + c[2] * c[2];
    let mut p = [[0.0; 4]; 4];
    for i in 0..3 {
        for j in 0..3 {
            p[i][j] = if i == j { 1.0 } else { 0.0 };
            p[i][j] -= c[i] * c[j] / n2;
        }
    }
    p[3][3] = 1.0;
    p
}

/// Per-mode symbol of the wave generator, `L_k = P_k (eta J ⊕ J) P_k`.
///
/// The rotation acts as `(u1,u2,u3,rho) -> (-eta u2, eta u1, rho, -u3)`:
/// this is the orientation under which the frames of [`eigenframe`] satisfy
/// `L_k r0 = L_k r00 = 0` and `L_k r± = ±i omega_k r±`. (The opposite
/// velocity-block orientation swaps the labels of `r+` and `r-`.)
pub fn generator_matrix(k: WaveVector, dom: &DomainParams) -> [[f64; 4]; 4] {
    let eta = dom.eta();
    // M column action: M e1 = eta e2, M e2 = -eta e1, M e3 = -e4, M e4 = e3.
    let m = [
        [0.0, -eta, 0.0, 0.0],
        [eta, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
    ];
    let p = leray_matrix(k, dom);
    let mut pm = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for l in 0..4 {
                pm[i][j] += p[i][l] * m[l][j];
            }
        }
    }
    let mut out = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for l in 0..4 {
                out[i][j] += pm[i][l] * p[l][j];
            }
        }
    }
    out
}

/// Precomputed eigenframe data for every mode of a cube grid.
///
/// Slots hold `omega`, `|k_check|`, `r0`, `r00` and `r+` per mode; the
/// origin slot is filled with zeros and never read by the operations.
#[derive(Debug, Clone)]
pub struct FrameTable {
    grid: crate::domain::Grid,
    dom: DomainParams,
    pub omega: Vec<f64>,
    pub check_norm: Vec<f64>,
    pub r0: Vec<[f64; 4]>,
    pub r00: Vec<[f64; 4]>,
    pub rplus: Vec<[Complex64; 4]>,
}

impl FrameTable {
    pub fn new(cutoff: u32, dom: DomainParams) -> Self {
        let grid = crate::domain::Grid::new(cutoff);
        let n = grid.len();
        let mut omega = vec![0.0; n];
        let mut check_norm = vec![0.0; n];
        let mut r0 = vec![[0.0; 4]; n];
        let mut r00 = vec![[0.0; 4]; n];
        let mut rplus = vec![[Complex64::ZERO; 4]; n];
        for k in grid.iter_nonzero() {
            let i = grid.idx_unchecked(k);
            let f = eigenframe(k, &dom).expect("nonzero mode");
            omega[i] = f.omega;
            check_norm[i] = k.check_norm(&dom);
            r0[i] = f.r0;
            r00[i] = f.r00;
            rplus[i] = f.rplus;
        }
        Self { grid, dom, omega, check_norm, r0, r00, rplus }
    }

    pub fn grid(&self) -> crate::domain::Grid {
        self.grid
    }

    pub fn dom(&self) -> &DomainParams {
        &self.dom
    }

    pub fn frame(&self, k: WaveVector) -> Option<EigenFrame> {
        let i = self.grid.idx(k)?;
        if k.is_zero() {
            return None;
        }
        Some(EigenFrame {
            omega: self.omega[i],
            r00: self.r00[i],
            r0: self.r0[i],
            rplus: self.rplus[i],
        })
    }
}
