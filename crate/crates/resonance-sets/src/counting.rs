//! Lattice point counting over the near-resonance sets and the power-law
//! fits used to verify the counting theorems empirically.

use crate::bandwidth::BandwidthSpec;
use crate::triads::min_fast_phase;
use spectral_core::{dispersion, DomainParams, Result, SpectralError, WaveVector};

/// Cardinality of the localized FFF set around a fixed output `n`:
/// wavevectors `k` with `m = -n-k`, both nonzero, `|n|/2 <= |k| <= |n|`
/// (domain-adjusted moduli) and `min_sigma |omega_kmn^sigma| <= delta`.
pub fn count_fff(n: WaveVector, delta: f64, dom: &DomainParams) -> Result<u64> {
    if n.is_zero() {
        return Err(SpectralError::ZeroWaveVector);
    }
    let nn = n.check_norm(dom);
    let wn = dispersion(n, dom)?;
    let lo = 0.5 * nn;
    let b1 = (nn * dom.l1()).ceil() as i32;
    let b2 = (nn * dom.l2()).ceil() as i32;
    let b3 = nn.ceil() as i32;
    let mut count = 0u64;
    for k1 in -b1..=b1 {
        let c1 = k1 as f64 / dom.l1();
        let c1sq = c1 * c1;
        if c1sq > nn * nn {
            continue;
        }
        for k2 in -b2..=b2 {
            let c2 = k2 as f64 / dom.l2();
            let h2 = c1sq + c2 * c2;
            if h2 > nn * nn {
                continue;
            }
            for k3 in -b3..=b3 {
                if k1 == 0 && k2 == 0 && k3 == 0 {
                    continue;
                }
                let kn2 = h2 + (k3 * k3) as f64;
                if kn2 < lo * lo || kn2 > nn * nn {
                    continue;
                }
                let k = WaveVector::new(k1, k2, k3);
                let m = -n - k;
                if m.is_zero() {
                    continue;
                }
                let wk = (h2 + (dom.eta() * k3 as f64).powi(2)).sqrt() / kn2.sqrt();
                let wm = m.check_eta_norm(dom) / m.check_norm(dom);
                if min_fast_phase(wk, wm, wn).0 <= delta {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// Cardinality of the mixed set `{k != 0 : |omega_k - omega_n| <= delta*,
/// |k_check| <= M}` for a fixed fast mode `n`.
pub fn count_mixed(n: WaveVector, m_radius: f64, delta_star: f64, dom: &DomainParams) -> Result<u64> {
    if n.is_zero() {
        return Err(SpectralError::ZeroWaveVector);
    }
    let wn = dispersion(n, dom)?;
    let b1 = (m_radius * dom.l1()).ceil() as i32;
    let b2 = (m_radius * dom.l2()).ceil() as i32;
    let b3 = m_radius.ceil() as i32;
    let m2max = m_radius * m_radius;
    let eta = dom.eta();
    let mut count = 0u64;
    for k1 in -b1..=b1 {
        let c1 = k1 as f64 / dom.l1();
        let c1sq = c1 * c1;
        if c1sq > m2max {
            continue;
        }
        for k2 in -b2..=b2 {
            let c2 = k2 as f64 / dom.l2();
            let h2 = c1sq + c2 * c2;
            if h2 > m2max {
                continue;
            }
            for k3 in -b3..=b3 {
                if k1 == 0 && k2 == 0 && k3 == 0 {
                    continue;
                }
                let kn2 = h2 + (k3 * k3) as f64;
                if kn2 > m2max {
                    continue;
                }
                let wk = (h2 + (eta * k3 as f64).powi(2)).sqrt() / kn2.sqrt();
                if (wk - wn).abs() <= delta_star {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

fn c_delta_star(delta_star: f64, eta: f64) -> f64 {
    if eta > 1.0 {
        ((delta_star * delta_star + 2.0 * delta_star) / (eta * eta - 1.0)).sqrt()
    } else {
        ((-delta_star * delta_star + 2.0 * delta_star) / (1.0 - eta * eta)).sqrt()
    }
}

/// The explicit family realizing the mixed-count lower bound on the
/// isotropic lattice (`L1 = L2 = 1`): the box `3M/5 <= k1 <= M`,
/// `4M/5 <= k2 <= M`, `0 <= k3 <= c_{delta*} |k_H|`, intersected with the
/// postcondition `M <= |k| < 2M`, `|omega_k - 1| <= delta*`.
pub fn lower_bound_family(m_size: u32, delta_star: f64, eta: f64) -> Result<Vec<WaveVector>> {
    let dom = DomainParams::new(1.0, 1.0, eta)?;
    if !(delta_star > 0.0 && delta_star < (eta / 2.0).min(0.5)) {
        return Err(SpectralError::InvalidDomain(format!(
            "delta* = {delta_star} outside (0, min(eta/2, 1/2))"
        )));
    }
    let m = m_size as i64;
    let c = c_delta_star(delta_star, eta);
    let mut out = Vec::new();
    let k1_lo = (3 * m + 4) / 5; // ceil(3M/5)
    let k2_lo = (4 * m + 4) / 5; // ceil(4M/5)
    for k1 in k1_lo..=m {
        for k2 in k2_lo..=m {
            let kh = (((k1 * k1 + k2 * k2) as f64).sqrt()) as f64;
            let k3_hi = (c * kh).floor() as i64;
            for k3 in 0..=k3_hi {
                let k = WaveVector::new(k1 as i32, k2 as i32, k3 as i32);
                let norm2 = (k1 * k1 + k2 * k2 + k3 * k3) as f64;
                if norm2 < (m * m) as f64 || norm2 >= (4 * m * m) as f64 {
                    continue;
                }
                let w = dispersion(k, &dom)?;
                if (w - 1.0).abs() <= delta_star {
                    out.push(k);
                }
            }
        }
    }
    Ok(out)
}

/// Continuum estimate of the lower-bound box: the integral of
/// `1 + c_{delta*} |k_H|` over the `(k1, k2)` rectangle, i.e. the expected
/// number of `k3` slots summed over the horizontal box.
pub fn box_estimate(m_size: u32, delta_star: f64, eta: f64) -> f64 {
    let m = m_size as f64;
    let c = c_delta_star(delta_star, eta);
    let (x0, x1) = (3.0 * m / 5.0, m);
    let (y0, y1) = (4.0 * m / 5.0, m);
    let n = 400;
    let (dx, dy) = ((x1 - x0) / n as f64, (y1 - y0) / n as f64);
    let mut s = 0.0;
    for i in 0..n {
        let x = x0 + (i as f64 + 0.5) * dx;
        for j in 0..n {
            let y = y0 + (j as f64 + 0.5) * dy;
            s += 1.0 + c * (x * x + y * y).sqrt();
        }
    }
    s * dx * dy
}

/// Ordinary least squares on `(ln x, ln y)`: slope, intercept and the
/// slope's standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub slope_stderr: f64,
    pub points: usize,
}

pub fn ols_loglog(xs: &[f64], ys: &[f64]) -> Option<FitResult> {
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys.iter())
        .filter(|(x, y)| **x > 0.0 && **y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    let n = pts.len();
    if n < 2 {
        return None;
    }
    let nf = n as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / nf;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / nf;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = pts
        .iter()
        .map(|p| {
            let r = p.1 - (intercept + slope * p.0);
            r * r
        })
        .sum();
    let stderr = if n > 2 { (ss_res / (nf - 2.0) / sxx).sqrt() } else { f64::NAN };
    Some(FitResult { slope, intercept, slope_stderr: stderr, points: n })
}

/// Empirical verification of the counting hypotheses behind the restricted
/// convolution lemmas: the per-output FFF count against `C |n|^beta`
/// (expect `beta <= 2` with `delta ~ 1/|n|`) and the per-annulus mixed
/// count against `c0 2^{mu i}` (expect `mu <= 3 - zeta/2`).
#[derive(Debug, Clone)]
pub struct HypothesisReport {
    /// Dyadic `|n|` sizes and the mean localized FFF counts at each size.
    pub fff_sizes: Vec<f64>,
    pub fff_counts: Vec<f64>,
    pub fff_beta: Option<FitResult>,
    /// All-empty FFF branch (e.g. eta outside the resonance window).
    pub fff_inconclusive: bool,
    /// Annulus indices `i` and mean mixed counts over `A_i`.
    pub mixed_levels: Vec<f64>,
    pub mixed_counts: Vec<f64>,
    pub mixed_mu: Option<FitResult>,
    pub mu_expected: f64,
}

fn probe_outputs(size: f64) -> Vec<WaveVector> {
    let dirs: [[f64; 3]; 4] =
        [[1.0, 0.0, 0.0], [0.0, 0.0, 1.0], [1.0, 1.0, 1.0], [2.0, 1.0, 2.0]];
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

/// Count FFF members of the ordered localized set with the triad-dependent
/// bandwidth law (rather than a fixed scalar `delta`).
fn count_fff_ordered(n: WaveVector, bw: &BandwidthSpec, dom: &DomainParams) -> Result<u64> {
    let nn = n.check_norm(dom);
    let wn = dispersion(n, dom)?;
    let b1 = (nn * dom.l1()).ceil() as i32;
    let b2 = (nn * dom.l2()).ceil() as i32;
    let b3 = nn.ceil() as i32;
    let mut count = 0u64;
    for k1 in -b1..=b1 {
        for k2 in -b2..=b2 {
            for k3 in -b3..=b3 {
                let k = WaveVector::new(k1, k2, k3);
                if k.is_zero() {
                    continue;
                }
                let kn = k.check_norm(dom);
                if kn > nn {
                    continue;
                }
                let m = -n - k;
                if m.is_zero() {
                    continue;
                }
                let mn = m.check_norm(dom);
                if mn > kn {
                    continue;
                }
                let delta = bw.delta_from_max(dom, nn.max(kn).max(mn));
                let wk = dispersion(k, dom)?;
                let wm = dispersion(m, dom)?;
                if min_fast_phase(wk, wm, wn).0 <= delta {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

pub fn counting_hypothesis_check(
    cutoff: u32,
    bw: &BandwidthSpec,
    dom: &DomainParams,
) -> Result<HypothesisReport> {
    if cutoff < 8 {
        return Err(SpectralError::InvalidDomain("hypothesis check needs K >= 8".into()));
    }
    // FFF branch over dyadic |n|
    let mut fff_sizes = Vec::new();
    let mut fff_counts = Vec::new();
    let mut size = 8.0;
    while size <= cutoff as f64 {
        let probes = probe_outputs(size);
        let mut total = 0u64;
        for n in &probes {
            total += count_fff_ordered(*n, bw, dom)?;
        }
        fff_sizes.push(size);
        fff_counts.push(total as f64 / probes.len() as f64);
        size *= 2.0;
    }
    let fff_inconclusive = fff_counts.iter().all(|c| *c == 0.0);
    let fff_beta = if fff_inconclusive { None } else { ols_loglog(&fff_sizes, &fff_counts) };

    // mixed branch: per-annulus counts at the largest probe size
    let nn_size = cutoff as f64;
    let probes = probe_outputs(nn_size);
    let imax = (cutoff as f64).log2().floor() as i32;
    let mut mixed_levels = Vec::new();
    let mut mixed_counts = Vec::new();
    for i in 1..=imax {
        let mut total = 0u64;
        for n in &probes {
            let nn = n.check_norm(dom);
            let wn = dispersion(*n, dom)?;
            let (lo, hi) = (2f64.powi(i - 1), 2f64.powi(i));
            let b = (hi.min(nn) * dom.l1().max(dom.l2()).max(1.0)).ceil() as i32;
            for k1 in -b..=b {
                for k2 in -b..=b {
                    for k3 in -b..=b {
                        let k = WaveVector::new(k1, k2, k3);
                        if k.is_zero() {
                            continue;
                        }
                        let kn = k.check_norm(dom);
                        if kn < lo || kn >= hi || kn > nn {
                            continue;
                        }
                        let m = -*n - k;
                        if m.is_zero() {
                            continue;
                        }
                        let ds = bw.delta_star_from_max(
                            dom,
                            nn.max(kn).max(m.check_norm(dom)),
                        );
                        let wk = dispersion(k, dom)?;
                        if (wk - wn).abs() <= ds {
                            total += 1;
                        }
                    }
                }
            }
        }
        mixed_levels.push(2f64.powi(i));
        mixed_counts.push(total as f64 / probes.len() as f64);
    }
    // mu is the dyadic exponent: slope of ln(count) vs ln(2^i) = ln-log fit
    let mixed_mu = ols_loglog(&mixed_levels, &mixed_counts);
    Ok(HypothesisReport {
        fff_sizes,
        fff_counts,
        fff_beta,
        fff_inconclusive,
        mixed_levels,
        mixed_counts,
        mixed_mu,
        mu_expected: 3.0 - bw.zeta / 2.0,
    })
}
