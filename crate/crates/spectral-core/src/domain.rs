//! Domain geometry: torus parameters, integer wavevectors and their
//! domain-adjusted real forms, and the dense cube grid used to store
//! truncated coefficient sets.

use crate::{Result, SpectralError};
use serde::{Deserialize, Serialize};

/// Physical parameters of the anisotropic torus and the rotation /
/// stratification ratio `eta = Omega / N`.
///
/// `eta = 1` is rejected: the dispersion relation degenerates to a constant
/// and the slow/fast machinery breaks down there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DomainParams {
    l1: f64,
    l2: f64,
    eta: f64,
}

impl DomainParams {
    pub fn new(l1: f64, l2: f64, eta: f64) -> Result<Self> {
        if !(l1 > 0.0) || !l1.is_finite() {
            return Err(SpectralError::InvalidDomain(format!("L1 = {l1} must be positive")));
        }
        if !(l2 > 0.0) || !l2.is_finite() {
            return Err(SpectralError::InvalidDomain(format!("L2 = {l2} must be positive")));
        }
        if !(eta > 0.0) || !eta.is_finite() {
            return Err(SpectralError::InvalidDomain(format!("eta = {eta} must be positive")));
        }
        if eta == 1.0 {
            return Err(SpectralError::InvalidDomain("eta = 1 is excluded".into()));
        }
        Ok(Self { l1, l2, eta })
    }

    pub fn l1(&self) -> f64 {
        self.l1
    }

    pub fn l2(&self) -> f64 {
        self.l2
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// `min(eta, 1)`, the lower edge of the dispersion range.
    pub fn omega_min(&self) -> f64 {
        self.eta.min(1.0)
    }

    /// `max(eta, 1)`, the upper edge of the dispersion range.
    pub fn omega_max(&self) -> f64 {
        self.eta.max(1.0)
    }

    /// Strict upper cap for near-resonance bandwidths, `min(eta/2, 1/2)`
    /// shrunk by one part in 1e9 so that stored bandwidths stay strictly
    /// below the open bound.
    pub fn bandwidth_cap(&self) -> f64 {
        (self.eta / 2.0).min(0.5) * (1.0 - 1e-9)
    }
}

/// Integer lattice wavevector `k ∈ Z^3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WaveVector {
    pub k1: i32,
    pub k2: i32,
    pub k3: i32,
}

impl WaveVector {
    pub const fn new(k1: i32, k2: i32, k3: i32) -> Self {
        Self { k1, k2, k3 }
    }

    pub fn is_zero(&self) -> bool {
        self.k1 == 0 && self.k2 == 0 && self.k3 == 0
    }

    pub fn max_norm(&self) -> i32 {
        self.k1.abs().max(self.k2.abs()).max(self.k3.abs())
    }

    /// Domain-adjusted form `k_check = (k1/L1, k2/L2, k3)`.
    pub fn check(&self, dom: &DomainParams) -> [f64; 3] {
        [self.k1 as f64 / dom.l1, self.k2 as f64 / dom.l2, self.k3 as f64]
    }

    /// `k_check_eta = (k1/L1, k2/L2, eta*k3)`.
    pub fn check_eta(&self, dom: &DomainParams) -> [f64; 3] {
        [self.k1 as f64 / dom.l1, self.k2 as f64 / dom.l2, dom.eta * self.k3 as f64]
    }

    /// Horizontal part `(k1/L1, k2/L2)`.
    pub fn check_h(&self, dom: &DomainParams) -> [f64; 2] {
        [self.k1 as f64 / dom.l1, self.k2 as f64 / dom.l2]
    }

    /// Four-slot advection symbol `k_check' = (k1/L1, k2/L2, k3, 0)`.
    pub fn check_prime(&self, dom: &DomainParams) -> [f64; 4] {
        [self.k1 as f64 / dom.l1, self.k2 as f64 / dom.l2, self.k3 as f64, 0.0]
    }

    pub fn check_norm(&self, dom: &DomainParams) -> f64 {
        let c = self.check(dom);
        (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt()
    }

    pub fn check_eta_norm(&self, dom: &DomainParams) -> f64 {
        let c = self.check_eta(dom);
        (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt()
    }

    pub fn check_h_norm(&self, dom: &DomainParams) -> f64 {
        let c = self.check_h(dom);
        (c[0] * c[0] + c[1] * c[1]).sqrt()
    }

    pub fn has_horizontal(&self) -> bool {
        self.k1 != 0 || self.k2 != 0
    }
}

impl std::ops::Neg for WaveVector {
    type Output = WaveVector;
    fn neg(self) -> WaveVector {
        WaveVector::new(-self.k1, -self.k2, -self.k3)
    }
}

impl std::ops::Add for WaveVector {
    type Output = WaveVector;
    fn add(self, o: WaveVector) -> WaveVector {
        WaveVector::new(self.k1 + o.k1, self.k2 + o.k2, self.k3 + o.k3)
    }
}

impl std::ops::Sub for WaveVector {
    type Output = WaveVector;
    fn sub(self, o: WaveVector) -> WaveVector {
        WaveVector::new(self.k1 - o.k1, self.k2 - o.k2, self.k3 - o.k3)
    }
}

impl std::fmt::Display for WaveVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.k1, self.k2, self.k3)
    }
}

/// Dense index space for the cube `max_norm(k) <= K`.
///
/// Linear index `((k1+K)*S + (k2+K))*S + (k3+K)` with side `S = 2K+1`.
/// The origin is a valid slot (kept identically zero by the field types) so
/// that index arithmetic stays branch-free in convolution loops.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid {
    cutoff: i32,
    side: usize,
}

impl Grid {
    pub fn new(cutoff: u32) -> Self {
        let k = cutoff as i32;
        Self { cutoff: k, side: (2 * k + 1) as usize }
    }

    pub fn cutoff(&self) -> i32 {
        self.cutoff
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn len(&self) -> usize {
        self.side * self.side * self.side
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, k: WaveVector) -> bool {
        k.max_norm() <= self.cutoff
    }

    /// Linear index; `None` outside the cube.
    pub fn idx(&self, k: WaveVector) -> Option<usize> {
        if self.contains(k) {
            Some(self.idx_unchecked(k))
        } else {
            None
        }
    }

    #[inline]
    pub fn idx_unchecked(&self, k: WaveVector) -> usize {
        let kk = self.cutoff;
        (((k.k1 + kk) as usize * self.side) + (k.k2 + kk) as usize) * self.side
            + (k.k3 + kk) as usize
    }

    pub fn wavevector(&self, idx: usize) -> WaveVector {
        let s = self.side;
        let k3 = (idx % s) as i32 - self.cutoff;
        let k2 = ((idx / s) % s) as i32 - self.cutoff;
        let k1 = (idx / (s * s)) as i32 - self.cutoff;
        WaveVector::new(k1, k2, k3)
    }

    /// Index of `-k` for the index of `k`.
    #[inline]
    pub fn mirror_idx(&self, idx: usize) -> usize {
        self.len() - 1 - idx
    }

    /// All nonzero wavevectors of the cube, lexicographic in `(k1,k2,k3)`.
    pub fn iter_nonzero(&self) -> impl Iterator<Item = WaveVector> + '_ {
        let k = self.cutoff;
        (-k..=k).flat_map(move |k1| {
            (-k..=k).flat_map(move |k2| {
                (-k..=k)
                    .map(move |k3| WaveVector::new(k1, k2, k3))
                    .filter(|w| !w.is_zero())
            })
        })
    }

    /// Half-lattice representatives: `k3>0`, or `k3=0, k2>0`, or
    /// `k3=k2=0, k1>0`. Exactly one of `k`, `-k` is a representative.
    pub fn is_representative(k: WaveVector) -> bool {
        k.k3 > 0 || (k.k3 == 0 && k.k2 > 0) || (k.k3 == 0 && k.k2 == 0 && k.k1 > 0)
    }

    pub fn iter_representatives(&self) -> impl Iterator<Item = WaveVector> + '_ {
        self.iter_nonzero().filter(|&k| Self::is_representative(k))
    }
}
