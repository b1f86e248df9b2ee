//! Bandwidth laws for the near-resonance sets.
//!
//! The theory only requires `delta <= C_delta * min(|k|,|m|,|n|)^{-1}` and
//! `delta* <= C_delta* * min(...)^{-zeta}` with both valued in
//! `[0, min(eta/2, 1/2))`; this module fixes the concrete functional form
//! as exactly those envelopes, clipped strictly below the cap. Since the
//! minimum of the inverse norms is a function of `max(|k|,|m|,|n|)`, the
//! evaluated bandwidths depend on the triad only through its largest
//! modulus, as the counting arguments assume.

use spectral_core::{DomainParams, Result, SpectralError, WaveVector};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandwidthSpec {
    pub c_delta: f64,
    pub c_delta_star: f64,
    pub zeta: f64,
}

impl BandwidthSpec {
    pub fn new(c_delta: f64, c_delta_star: f64, zeta: f64) -> Result<Self> {
        if !(c_delta >= 0.0) || !(c_delta_star >= 0.0) {
            return Err(SpectralError::InvalidDomain(
                "bandwidth constants must be nonnegative".into(),
            ));
        }
        if !(1.2..=2.0).contains(&zeta) {
            return Err(SpectralError::InvalidDomain(format!(
                "zeta = {zeta} outside [6/5, 2]"
            )));
        }
        Ok(Self { c_delta, c_delta_star, zeta })
    }

    /// Both channels switched off: only exact resonances survive.
    pub fn exact_resonances_only(zeta: f64) -> Self {
        Self { c_delta: 0.0, c_delta_star: 0.0, zeta }
    }

    /// FFF bandwidth given the largest domain-adjusted modulus of the triad.
    #[inline]
    pub fn delta_from_max(&self, dom: &DomainParams, max_norm: f64) -> f64 {
        (self.c_delta / max_norm).min(dom.bandwidth_cap())
    }

    /// Mixed bandwidth given the largest domain-adjusted modulus.
    #[inline]
    pub fn delta_star_from_max(&self, dom: &DomainParams, max_norm: f64) -> f64 {
        (self.c_delta_star * max_norm.powf(-self.zeta)).min(dom.bandwidth_cap())
    }

    pub fn delta(&self, dom: &DomainParams, k: WaveVector, m: WaveVector, n: WaveVector) -> f64 {
        self.delta_from_max(dom, max_check_norm(dom, k, m, n))
    }

    pub fn delta_star(
        &self,
        dom: &DomainParams,
        k: WaveVector,
        m: WaveVector,
        n: WaveVector,
    ) -> f64 {
        self.delta_star_from_max(dom, max_check_norm(dom, k, m, n))
    }
}

pub fn max_check_norm(dom: &DomainParams, k: WaveVector, m: WaveVector, n: WaveVector) -> f64 {
    k.check_norm(dom).max(m.check_norm(dom)).max(n.check_norm(dom))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bandwidths_stay_below_cap() {
        let dom = DomainParams::new(1.0, 1.0, 0.6).unwrap();
        let bw = BandwidthSpec::new(100.0, 100.0, 1.2).unwrap();
        let k = WaveVector::new(1, 0, 0);
        let m = WaveVector::new(0, 1, 0);
        let n = WaveVector::new(-1, -1, 0);
        let cap = dom.bandwidth_cap();
        assert!(bw.delta(&dom, k, m, n) <= cap);
        assert!(bw.delta_star(&dom, k, m, n) <= cap);
        assert!(cap < 0.3);
    }

    #[test]
    fn envelope_decays_with_the_max_modulus() {
        let dom = DomainParams::new(1.0, 1.0, 2.0).unwrap();
        let bw = BandwidthSpec::new(1.0, 1.0, 1.5).unwrap();
        let d8 = bw.delta_from_max(&dom, 8.0);
        let d16 = bw.delta_from_max(&dom, 16.0);
        assert!((d8 / d16 - 2.0).abs() < 1e-12);
        let s8 = bw.delta_star_from_max(&dom, 8.0);
        let s16 = bw.delta_star_from_max(&dom, 16.0);
        assert!((s8 / s16 - 2.0f64.powf(1.5)).abs() < 1e-12);
    }

    #[test]
    fn zeta_range_is_validated() {
        assert!(BandwidthSpec::new(1.0, 1.0, 1.0).is_err());
        assert!(BandwidthSpec::new(1.0, 1.0, 2.5).is_err());
        assert!(BandwidthSpec::new(1.0, 1.0, 1.2).is_ok());
    }
}
