//! Triad phases, sign classification and exhaustive enumeration.

use crate::bandwidth::{max_check_norm, BandwidthSpec};
use spectral_core::{dispersion, DomainParams, Result, Sign, SpectralError, WaveVector};

/// `omega_kmn^sigma = sigma1 w_k + sigma2 w_m + sigma3 w_n`.
pub fn phase(
    k: WaveVector,
    m: WaveVector,
    n: WaveVector,
    sigma: [Sign; 3],
    dom: &DomainParams,
) -> Result<f64> {
    let wk = dispersion(k, dom)?;
    let wm = dispersion(m, dom)?;
    let wn = dispersion(n, dom)?;
    Ok(sigma[0].value() * wk + sigma[1].value() * wm + sigma[2].value() * wn)
}

/// Minimum of `|s1 wk + s2 wm + s3 wn|` over the eight fast sign patterns,
/// and a pattern attaining it.
pub fn min_fast_phase(wk: f64, wm: f64, wn: f64) -> (f64, [Sign; 3]) {
    let mut best = f64::INFINITY;
    let mut arg = [Sign::Plus; 3];
    for s1 in Sign::FAST {
        for s2 in Sign::FAST {
            for s3 in Sign::FAST {
                let p = s1.value() * wk + s2.value() * wm + s3.value() * wn;
                if p.abs() < best {
                    best = p.abs();
                    arg = [s1, s2, s3];
                }
            }
        }
    }
    (best, arg)
}

/// Near-resonance membership flags of one triad. `sff` and `sss` are
/// always set: those channels are unrestricted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Membership {
    pub fff: bool,
    pub ffs: bool,
    pub fsf: bool,
    pub sff: bool,
    pub sss: bool,
}

/// An admissible triad with its minimizing fast sign pattern, the phase of
/// that pattern, and the set memberships.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TripletRecord {
    pub k: WaveVector,
    pub m: WaveVector,
    pub n: WaveVector,
    /// Fast sign pattern minimizing `|omega_kmn^sigma|`.
    pub sigma: [Sign; 3],
    /// `omega_kmn^sigma` for that pattern.
    pub phase: f64,
    pub membership: Membership,
}

/// Classify a convolution triad against the bandwidth spec. Membership
/// boundaries are inclusive.
pub fn classify(
    k: WaveVector,
    m: WaveVector,
    n: WaveVector,
    bw: &BandwidthSpec,
    dom: &DomainParams,
) -> Result<TripletRecord> {
    if !(k + m + n).is_zero() {
        return Err(SpectralError::ConvolutionViolation);
    }
    let wk = dispersion(k, dom)?;
    let wm = dispersion(m, dom)?;
    let wn = dispersion(n, dom)?;
    let max_norm = max_check_norm(dom, k, m, n);
    let delta = bw.delta_from_max(dom, max_norm);
    let delta_star = bw.delta_star_from_max(dom, max_norm);
    let (min_phase, sigma) = min_fast_phase(wk, wm, wn);
    let membership = Membership {
        fff: min_phase <= delta,
        ffs: (wk - wm).abs() <= delta_star,
        fsf: (wk - wn).abs() <= delta_star,
        sff: true,
        sss: true,
    };
    let phase = sigma[0].value() * wk + sigma[1].value() * wm + sigma[2].value() * wn;
    Ok(TripletRecord { k, m, n, sigma, phase, membership })
}

/// Sign patterns a near-resonant FFF triplet may carry, attached to the
/// descending ordering `w1 >= w2 >= w3 > delta >= 0`: the largest frequency
/// must oppose the other two. Any pattern outside the returned pair that
/// still satisfies `|sigma . w| <= delta` is a contract violation.
pub fn admissible_fff_signs(omega_desc: [f64; 3], delta: f64) -> Vec<[Sign; 3]> {
    assert!(
        omega_desc[0] >= omega_desc[1] && omega_desc[1] >= omega_desc[2],
        "frequencies must be sorted descending"
    );
    assert!(delta >= 0.0 && omega_desc[2] > delta, "need w3 > delta >= 0");
    vec![[Sign::Plus, Sign::Minus, Sign::Minus], [Sign::Minus, Sign::Plus, Sign::Plus]]
}

/// Per-output triad lists for every output mode of a cube.
#[derive(Debug)]
pub struct TriadIndex {
    cutoff: u32,
    /// `(output wavevector -n, records ordered lexicographically in k)`.
    pub per_output: Vec<(WaveVector, Vec<TripletRecord>)>,
}

impl TriadIndex {
    /// Materialize all convolution triads of the cube with membership
    /// annotations. `budget_bytes` guards against oversized requests; the
    /// error carries the exact triad count.
    pub fn enumerate(
        cutoff: u32,
        bw: &BandwidthSpec,
        dom: &DomainParams,
        budget_bytes: usize,
    ) -> Result<Self> {
        let grid = spectral_core::Grid::new(cutoff);
        let kk = cutoff as i64;
        // pairs (q, k) with q, k, q-k all in the cube: per q the k-range is
        // a box of side (2K+1-|q_i|)
        let per_axis: i64 = (-kk..=kk).map(|a| 2 * kk + 1 - a.abs()).sum();
        let triads = per_axis.pow(3) as usize;
        let need = triads * std::mem::size_of::<TripletRecord>();
        if need > budget_bytes {
            return Err(SpectralError::ResourceBudget(format!(
                "triad index for K={cutoff} holds {triads} triads (~{} MiB), budget {} MiB",
                need >> 20,
                budget_bytes >> 20
            )));
        }
        let mut per_output = Vec::new();
        for q in grid.iter_nonzero() {
            // output at q corresponds to n = -q
            let n = -q;
            let mut records = Vec::new();
            for k in grid.iter_nonzero() {
                let m = q - k;
                if m.is_zero() || !grid.contains(m) {
                    continue;
                }
                records.push(classify(k, m, n, bw, dom)?);
            }
            per_output.push((n, records));
        }
        Ok(Self { cutoff, per_output })
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn total_triads(&self) -> usize {
        self.per_output.iter().map(|(_, r)| r.len()).sum()
    }

    /// Records for a given output vector `-n` (i.e. keyed by `n`).
    pub fn for_n(&self, n: WaveVector) -> Option<&[TripletRecord]> {
        self.per_output.iter().find(|(nn, _)| *nn == n).map(|(_, r)| r.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dom(eta: f64) -> DomainParams {
        DomainParams::new(1.0, 1.0, eta).unwrap()
    }

    #[test]
    fn phase_examples() {
        let d = dom(2.0);
        // all k3=0 modes have w=1
        let p = phase(
            WaveVector::new(1, 0, 0),
            WaveVector::new(-2, 0, 0),
            WaveVector::new(1, 0, 0),
            [Sign::Plus, Sign::Minus, Sign::Zero],
            &d,
        )
        .unwrap();
        assert!(p.abs() < 1e-15);
        // all-zero signs
        let p = phase(
            WaveVector::new(1, 2, 3),
            WaveVector::new(0, -2, 1),
            WaveVector::new(-1, 0, -4),
            [Sign::Zero; 3],
            &d,
        )
        .unwrap();
        assert_eq!(p, 0.0);
        // vertical modes have w = eta
        let p = phase(
            WaveVector::new(0, 0, 1),
            WaveVector::new(0, 0, 1),
            WaveVector::new(0, 0, -2),
            [Sign::Plus, Sign::Plus, Sign::Minus],
            &d,
        )
        .unwrap();
        assert!((p - 2.0).abs() < 1e-15);
        assert!(phase(
            WaveVector::new(0, 0, 0),
            WaveVector::new(0, 0, 1),
            WaveVector::new(0, 0, -1),
            [Sign::Zero; 3],
            &d
        )
        .is_err());
    }

    #[test]
    fn classify_examples() {
        let d = dom(2.0);
        let bw = BandwidthSpec::new(0.0, 0.0, 1.2).unwrap();
        // w_k = w_m exactly -> FFS member even at delta* = 0
        let r = classify(
            WaveVector::new(1, 0, 0),
            WaveVector::new(1, 0, 0),
            WaveVector::new(-2, 0, 0),
            &bw,
            &d,
        )
        .unwrap();
        assert!(r.membership.ffs);
        assert!(r.membership.sss && r.membership.sff);
        // convolution violation
        assert!(classify(
            WaveVector::new(1, 0, 0),
            WaveVector::new(1, 0, 0),
            WaveVector::new(-1, 0, 0),
            &bw,
            &d
        )
        .is_err());
        // eta = 1.5 closes the FFF window for any delta < 1/2
        let d15 = dom(1.5);
        let bw = BandwidthSpec::new(1e9, 0.0, 1.2).unwrap(); // delta at cap
        for (k, m) in [
            (WaveVector::new(1, 2, 3), WaveVector::new(-2, 1, 1)),
            (WaveVector::new(0, 0, 2), WaveVector::new(3, 1, -1)),
            (WaveVector::new(5, 0, 1), WaveVector::new(-1, -1, 4)),
        ] {
            let n = -(k + m);
            let r = classify(k, m, n, &bw, &d15).unwrap();
            assert!(!r.membership.fff, "eta=1.5 must exclude FFF at ({k},{m})");
        }
        // vertical triplet: |w_k - w_m| = 0 -> FFS
        let r = classify(
            WaveVector::new(0, 0, 1),
            WaveVector::new(0, 0, 1),
            WaveVector::new(0, 0, -2),
            &BandwidthSpec::new(0.0, 0.0, 1.2).unwrap(),
            &d,
        )
        .unwrap();
        assert!(r.membership.ffs);
    }

    #[test]
    fn record_phase_is_consistent() {
        let d = dom(2.5);
        let bw = BandwidthSpec::new(1.0, 1.0, 1.2).unwrap();
        let k = WaveVector::new(2, -1, 3);
        let m = WaveVector::new(-1, 4, -2);
        let n = -(k + m);
        let r = classify(k, m, n, &bw, &d).unwrap();
        let p = phase(k, m, n, r.sigma, &d).unwrap();
        assert!((r.phase - p).abs() <= 1e-13);
    }

    #[test]
    fn admissible_patterns_are_the_lemma_pair() {
        let pats = admissible_fff_signs([1.9, 1.0, 1.0], 0.2);
        assert_eq!(pats.len(), 2);
        assert_eq!(pats[0], [Sign::Plus, Sign::Minus, Sign::Minus]);
        assert_eq!(pats[1], [Sign::Minus, Sign::Plus, Sign::Plus]);
        // |1.9 - 1.0 - 1.0| = 0.1 <= 0.2: near-resonant with the first pattern
        let p: f64 = 1.9 - 1.0 - 1.0;
        assert!(p.abs() <= 0.2);
        // w = (2,2,2), delta=0.3: patterns exist but membership fails
        let (min_p, _) = min_fast_phase(2.0, 2.0, 2.0);
        assert!(min_p > 0.3);
    }

    #[test]
    fn enumerate_k1_and_symmetry() {
        let d = dom(2.0);
        let bw = BandwidthSpec::new(1.0, 1.0, 1.2).unwrap();
        let idx = TriadIndex::enumerate(1, &bw, &d, 1 << 30).unwrap();
        // K=1: every convolution triplet of nonzero modes appears with SSS set
        assert!(idx.total_triads() > 0);
        for (_, records) in &idx.per_output {
            for r in records {
                assert!(r.membership.sss);
                // evenness under global negation
                let neg = classify(-r.k, -r.m, -r.n, &bw, &d).unwrap();
                assert_eq!(neg.membership, r.membership);
            }
            // deterministic lexicographic ordering in k
            for w in records.windows(2) {
                assert!((w[0].k.k1, w[0].k.k2, w[0].k.k3) < (w[1].k.k1, w[1].k.k2, w[1].k.k3));
            }
        }
        // budget guard reports the count
        let err = TriadIndex::enumerate(8, &bw, &d, 1024).unwrap_err();
        match err {
            SpectralError::ResourceBudget(msg) => assert!(msg.contains("triads")),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn monotone_in_bandwidth_constants() {
        let d = dom(2.2);
        let small = BandwidthSpec::new(0.3, 0.3, 1.2).unwrap();
        let large = BandwidthSpec::new(1.5, 1.5, 1.2).unwrap();
        let g = spectral_core::Grid::new(3);
        for k in g.iter_nonzero() {
            for m in g.iter_nonzero() {
                let n = -(k + m);
                if n.is_zero() {
                    continue;
                }
                let a = classify(k, m, n, &small, &d).unwrap().membership;
                let b = classify(k, m, n, &large, &d).unwrap().membership;
                assert!(!a.fff || b.fff);
                assert!(!a.ffs || b.ffs);
                assert!(!a.fsf || b.fsf);
            }
        }
    }
}
