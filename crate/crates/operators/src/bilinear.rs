//! The Galerkin-truncated advection bilinearity and its near-resonant
//! restriction, evaluated by direct convolution.
//!
//! Channel layout of the restricted operator `B~(tau, U, V)`:
//!
//! * slow output: the unrestricted slow-slow-slow block, computed as the
//!   slow projection of `B(U_s, V_s)` (no phases: those triads are exact
//!   resonances), plus the opposite-sign fast-fast-slow channel over the
//!   near-resonant list;
//! * fast output: the unrestricted slow-fast-fast block, computed as the
//!   rotated-back fast projection of `B(U_s, e^{tau L} V_f)`, plus the
//!   sign-restricted fast-slow-fast channel and all eight fast sign
//!   combinations on near-resonant fast-fast-fast triads (the latter as a
//!   sparse convolution of the rotated fast parts);
//! * the slow-slow-fast channel is absent, and the one-fast-two-slow
//!   channels cannot be near-resonant under the bandwidth cap.
//!
//! Near-resonant triad lists are precomputed per context with their
//! coupling scalars; modulation phases `e^{i omega^sigma tau}` are formed
//! per call from a per-mode phase table, so no `tau` state is cached.

use num_complex::Complex64;
use resonance_sets::BandwidthSpec;
use spectral_core::field::{dot_conj, dot_noconj, Coeff};
use spectral_core::{
    DomainParams, FrameTable, Grid, Result, SpectralComponents, SpectralError, SpectralField,
};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Near-resonant entry with its cached coupling scalar; the pair index
/// `(q, k)` determines `m = q - k` and `n = -q`.
#[derive(Debug, Clone, Copy)]
struct CoupledEntry {
    q: u32,
    k: u32,
    c: Complex64,
}

#[derive(Debug, Clone, Copy)]
struct PairEntry {
    q: u32,
    k: u32,
}

/// Sparse channel lists, representative-output entries first so that
/// real-field applications can stop at the boundary.
#[derive(Debug, Default)]
struct Channels {
    ffs: Vec<CoupledEntry>,
    ffs_rep: usize,
    fsf: Vec<CoupledEntry>,
    fsf_rep: usize,
    fff: Vec<PairEntry>,
    fff_rep: usize,
}

/// Precomputed state for operator applications at one `(K, domain,
/// bandwidth)` choice: eigenframe tables and the near-resonant channel
/// lists.
pub struct OperatorContext {
    dom: DomainParams,
    bw: BandwidthSpec,
    grid: Grid,
    table: FrameTable,
    channels: Channels,
    all_outputs: Vec<u32>,
    rep_outputs: Vec<u32>,
    center: usize,
    inv_l1: f64,
    inv_l2: f64,
}

impl OperatorContext {
    pub fn new(cutoff: u32, dom: DomainParams, bw: BandwidthSpec) -> Self {
        let table = FrameTable::new(cutoff, dom);
        let grid = table.grid();
        let center = grid.idx_unchecked(spectral_core::WaveVector::new(0, 0, 0));
        let mut all_outputs = Vec::with_capacity(grid.len() - 1);
        let mut rep_outputs = Vec::new();
        for q in grid.iter_nonzero() {
            let qi = grid.idx_unchecked(q) as u32;
            all_outputs.push(qi);
            if Grid::is_representative(q) {
                rep_outputs.push(qi);
            }
        }
        let channels = build_channels(&table, &dom, &bw);
        Self {
            dom,
            bw,
            grid,
            table,
            channels,
            all_outputs,
            rep_outputs,
            center,
            inv_l1: 1.0 / dom.l1(),
            inv_l2: 1.0 / dom.l2(),
        }
    }

    pub fn dom(&self) -> &DomainParams {
        &self.dom
    }

    pub fn bandwidth(&self) -> &BandwidthSpec {
        &self.bw
    }

    pub fn table(&self) -> &FrameTable {
        &self.table
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    /// `(FFS, FSF, FFF)` near-resonant entry counts.
    pub fn channel_sizes(&self) -> (usize, usize, usize) {
        (self.channels.ffs.len(), self.channels.fsf.len(), self.channels.fff.len())
    }

    fn check_field(&self, f: &SpectralField) -> Result<()> {
        if f.grid() != self.grid || f.dom() != &self.dom {
            return Err(SpectralError::Mismatch(format!(
                "field (K={}) does not match operator context (K={})",
                f.cutoff(),
                self.grid.cutoff()
            )));
        }
        Ok(())
    }

    /// Per-mode modulation phases `e^{i omega_k tau}`.
    fn phases(&self, tau: f64) -> Vec<Complex64> {
        self.table
            .omega
            .iter()
            .map(|w| Complex64::from_polar(1.0, w * tau))
            .collect()
    }

    #[inline]
    fn m_index(&self, q: u32, k: u32) -> usize {
        // idx is affine in the wavevector: idx(q - k) = idx(q) - idx(k) + idx(0)
        (q as usize + self.center) - k as usize
    }

    /// Galerkin truncation of `P (U' . grad V)`: the full bilinearity.
    pub fn full_bilinear(&self, u: &SpectralField, v: &SpectralField) -> Result<SpectralField> {
        self.check_field(u)?;
        self.check_field(v)?;
        let mut out = SpectralField::zeros(self.grid.cutoff() as u32, self.dom);
        self.raw_advection(u.coeffs(), v.coeffs(), &self.all_outputs, out.coeffs_mut());
        Ok(out)
    }

    /// Modulated full bilinearity `e^{-tau L} B(e^{tau L} u, e^{tau L} v)`.
    pub fn full_bilinear_modulated(
        &self,
        u: &SpectralField,
        v: &SpectralField,
        tau: f64,
    ) -> Result<SpectralField> {
        self.check_field(u)?;
        self.check_field(v)?;
        let ur = u.evolution_rotate(&self.table, tau);
        let vr = v.evolution_rotate(&self.table, tau);
        let b = self.full_bilinear(&ur, &vr)?;
        Ok(b.evolution_rotate(&self.table, -tau))
    }

    /// Slow-output restricted bilinearity `B~_s(tau, U, V)`.
    pub fn restricted_bilinear_slow(
        &self,
        u: &SpectralField,
        v: &SpectralField,
        tau: f64,
    ) -> Result<SpectralField> {
        self.apply_restricted(u, v, tau, true, false, false)
    }

    /// Fast-output restricted bilinearity `B~_f(tau, U, V)`.
    pub fn restricted_bilinear_fast(
        &self,
        u: &SpectralField,
        v: &SpectralField,
        tau: f64,
    ) -> Result<SpectralField> {
        self.apply_restricted(u, v, tau, false, true, false)
    }

    /// `B~(tau, U, V) = B~_s + B~_f` in one pass.
    pub fn restricted_bilinear(
        &self,
        u: &SpectralField,
        v: &SpectralField,
        tau: f64,
    ) -> Result<SpectralField> {
        self.apply_restricted(u, v, tau, true, true, false)
    }

    /// `B~(tau, U, V)` for real-closed inputs: computes half-lattice
    /// outputs and mirrors via `out(-q) = conj(out(q))`. Roughly halves
    /// the work; callers must guarantee `U_{-k} = conj(U_k)` for both
    /// inputs (the restricted operator then preserves that closure).
    pub fn restricted_bilinear_real(
        &self,
        u: &SpectralField,
        v: &SpectralField,
        tau: f64,
    ) -> Result<SpectralField> {
        self.apply_restricted(u, v, tau, true, true, true)
    }

    /// Modulated full bilinearity for real-closed inputs (half-lattice).
    pub fn full_bilinear_modulated_real(
        &self,
        u: &SpectralField,
        v: &SpectralField,
        tau: f64,
    ) -> Result<SpectralField> {
        self.check_field(u)?;
        self.check_field(v)?;
        let ur = u.evolution_rotate(&self.table, tau);
        let vr = v.evolution_rotate(&self.table, tau);
        let mut out = SpectralField::zeros(self.grid.cutoff() as u32, self.dom);
        self.raw_advection(ur.coeffs(), vr.coeffs(), &self.rep_outputs, out.coeffs_mut());
        mirror(&mut out, &self.rep_outputs, self.grid);
        Ok(out.evolution_rotate(&self.table, -tau))
    }

    fn apply_restricted(
        &self,
        u: &SpectralField,
        v: &SpectralField,
        tau: f64,
        slow_out: bool,
        fast_out: bool,
        real_half: bool,
    ) -> Result<SpectralField> {
        self.check_field(u)?;
        self.check_field(v)?;
        let cu = SpectralComponents::of(u, &self.table);
        let cv = SpectralComponents::of(v, &self.table);
        let ph = self.phases(tau);
        let outs: &[u32] = if real_half { &self.rep_outputs } else { &self.all_outputs };

        let n = self.grid.len();
        let mut out_a0 = vec![Complex64::ZERO; n];
        let mut out_ap = vec![Complex64::ZERO; n];
        let mut out_am = vec![Complex64::ZERO; n];

        if slow_out {
            self.conv_slow_slow(&cu.a0, &cv.a0, outs, &mut out_a0);
            let lim = if real_half { self.channels.ffs_rep } else { self.channels.ffs.len() };
            for e in &self.channels.ffs[..lim] {
                let (qi, ki) = (e.q as usize, e.k as usize);
                let mi = self.m_index(e.q, e.k);
                let phase = ph[ki] * ph[mi].conj();
                let t = e.c * phase * cu.ap[ki] * cv.am[mi]
                    + e.c.conj() * phase.conj() * cu.am[ki] * cv.ap[mi];
                out_a0[qi] += I * t;
            }
        }
        if fast_out {
            // rotated fast part of V feeds both the SFF aggregate and FFF
            let vf_rot = rotated_fast(&cv, &ph, &self.table);
            self.conv_slow_fast(&cu.a0, &vf_rot, outs, &ph, &mut out_ap, &mut out_am);
            let lim = if real_half { self.channels.fsf_rep } else { self.channels.fsf.len() };
            for e in &self.channels.fsf[..lim] {
                let (qi, ki) = (e.q as usize, e.k as usize);
                let mi = self.m_index(e.q, e.k);
                out_ap[qi] += I * e.c * ph[ki] * ph[qi].conj() * cu.ap[ki] * cv.a0[mi];
                out_am[qi] += I * e.c.conj() * ph[ki].conj() * ph[qi] * cu.am[ki] * cv.a0[mi];
            }
            let lim = if real_half { self.channels.fff_rep } else { self.channels.fff.len() };
            if lim > 0 {
                let uf_rot = rotated_fast(&cu, &ph, &self.table);
                for e in &self.channels.fff[..lim] {
                    let (qi, ki) = (e.q as usize, e.k as usize);
                    let mi = self.m_index(e.q, e.k);
                    let q = self.grid.wavevector(qi);
                    let k = self.grid.wavevector(ki);
                    let m1 = (q.k1 - k.k1) as f64 * self.inv_l1;
                    let m2 = (q.k2 - k.k2) as f64 * self.inv_l2;
                    let m3 = (q.k3 - k.k3) as f64;
                    let uk = &uf_rot[ki];
                    let adv = uk[0] * m1 + uk[1] * m2 + uk[2] * m3;
                    let vm = &vf_rot[mi];
                    let w = [adv * vm[0], adv * vm[1], adv * vm[2], adv * vm[3]];
                    let rpq = &self.table.rplus[qi];
                    out_ap[qi] += I * ph[qi].conj() * dot_conj(&w, rpq);
                    out_am[qi] += I * ph[qi] * dot_noconj(&w, rpq);
                }
            }
        }

        let mut out = SpectralField::zeros(self.grid.cutoff() as u32, self.dom);
        {
            let coeffs = out.coeffs_mut();
            for &qi in outs {
                let i = qi as usize;
                let r0 = &self.table.r0[i];
                let rp = &self.table.rplus[i];
                for j in 0..4 {
                    coeffs[i][j] =
                        out_a0[i] * r0[j] + out_ap[i] * rp[j] + out_am[i] * rp[j].conj();
                }
            }
        }
        if real_half {
            mirror(&mut out, &self.rep_outputs, self.grid);
        }
        Ok(out)
    }

    /// `out_q += sum_k i (U_k . m') V_m` over the rectangular `k`-box,
    /// Leray-projected per output. Origin slots of the inputs are zero, so
    /// the `k = 0` and `m = 0` exclusions are automatic.
    fn raw_advection(&self, u: &[Coeff], v: &[Coeff], outs: &[u32], out: &mut [Coeff]) {
        let kk = self.grid.cutoff();
        for &qi in outs {
            let q = self.grid.wavevector(qi as usize);
            let mut acc = [Complex64::ZERO; 4];
            for k1 in (-kk).max(q.k1 - kk)..=kk.min(q.k1 + kk) {
                let m1 = (q.k1 - k1) as f64 * self.inv_l1;
                for k2 in (-kk).max(q.k2 - kk)..=kk.min(q.k2 + kk) {
                    let m2 = (q.k2 - k2) as f64 * self.inv_l2;
                    let lo = (-kk).max(q.k3 - kk);
                    let hi = kk.min(q.k3 + kk);
                    let base_k = self
                        .grid
                        .idx_unchecked(spectral_core::WaveVector::new(k1, k2, lo));
                    let base_m = self
                        .grid
                        .idx_unchecked(spectral_core::WaveVector::new(q.k1 - k1, q.k2 - k2, q.k3 - lo));
                    for (step, k3) in (lo..=hi).enumerate() {
                        let uk = &u[base_k + step];
                        let vm = &v[base_m - step];
                        let m3 = (q.k3 - k3) as f64;
                        let adv = uk[0] * m1 + uk[1] * m2 + uk[2] * m3;
                        for j in 0..4 {
                            acc[j] += adv * vm[j];
                        }
                    }
                }
            }
            // i * Leray projection at q
            let c = q.check(&self.dom);
            let n2 = c[0] * c[0] + c[1] * c[1] + c[2] * c[2];
            let dot = acc[0] * c[0] + acc[1] * c[1] + acc[2] * c[2];
            let s = dot / n2;
            out[qi as usize] = [
                I * (acc[0] - s * c[0]),
                I * (acc[1] - s * c[1]),
                I * (acc[2] - s * c[2]),
                I * acc[3],
            ];
        }
    }

    /// Slow-slow convolution onto the slow output component:
    /// `out0_q += i sum_k u0_k (r0_k . m') v0_m (r0_m . r0_q)`.
    fn conv_slow_slow(&self, a0u: &[Complex64], a0v: &[Complex64], outs: &[u32], out: &mut [Complex64]) {
        let kk = self.grid.cutoff();
        let r0 = &self.table.r0;
        for &qi in outs {
            let q = self.grid.wavevector(qi as usize);
            let r0q = r0[qi as usize];
            let mut acc = Complex64::ZERO;
            for k1 in (-kk).max(q.k1 - kk)..=kk.min(q.k1 + kk) {
                let m1 = (q.k1 - k1) as f64 * self.inv_l1;
                for k2 in (-kk).max(q.k2 - kk)..=kk.min(q.k2 + kk) {
                    let m2 = (q.k2 - k2) as f64 * self.inv_l2;
                    let lo = (-kk).max(q.k3 - kk);
                    let hi = kk.min(q.k3 + kk);
                    let base_k = self
                        .grid
                        .idx_unchecked(spectral_core::WaveVector::new(k1, k2, lo));
                    let base_m = self
                        .grid
                        .idx_unchecked(spectral_core::WaveVector::new(q.k1 - k1, q.k2 - k2, q.k3 - lo));
                    for step in 0..=(hi - lo) as usize {
                        let ki = base_k + step;
                        let mi = base_m - step;
                        let rk = &r0[ki];
                        let rm = &r0[mi];
                        let adv = rk[0] * m1 + rk[1] * m2;
                        let proj =
                            rm[0] * r0q[0] + rm[1] * r0q[1] + rm[2] * r0q[2] + rm[3] * r0q[3];
                        acc += (adv * proj) * (a0u[ki] * a0v[mi]);
                    }
                }
            }
            out[qi as usize] += I * acc;
        }
    }

    /// Slow-fast convolution `B(U_s, X)` onto the fast output components
    /// with the output rotation folded in (`X` is already rotated).
    fn conv_slow_fast(
        &self,
        a0u: &[Complex64],
        x: &[Coeff],
        outs: &[u32],
        ph: &[Complex64],
        out_ap: &mut [Complex64],
        out_am: &mut [Complex64],
    ) {
        let kk = self.grid.cutoff();
        let r0 = &self.table.r0;
        for &qi in outs {
            let q = self.grid.wavevector(qi as usize);
            let mut acc = [Complex64::ZERO; 4];
            for k1 in (-kk).max(q.k1 - kk)..=kk.min(q.k1 + kk) {
                let m1 = (q.k1 - k1) as f64 * self.inv_l1;
                for k2 in (-kk).max(q.k2 - kk)..=kk.min(q.k2 + kk) {
                    let m2 = (q.k2 - k2) as f64 * self.inv_l2;
                    let lo = (-kk).max(q.k3 - kk);
                    let hi = kk.min(q.k3 + kk);
                    let base_k = self
                        .grid
                        .idx_unchecked(spectral_core::WaveVector::new(k1, k2, lo));
                    let base_m = self
                        .grid
                        .idx_unchecked(spectral_core::WaveVector::new(q.k1 - k1, q.k2 - k2, q.k3 - lo));
                    for step in 0..=(hi - lo) as usize {
                        let ki = base_k + step;
                        let mi = base_m - step;
                        let rk = &r0[ki];
                        let adv = a0u[ki] * (rk[0] * m1 + rk[1] * m2);
                        let xm = &x[mi];
                        for j in 0..4 {
                            acc[j] += adv * xm[j];
                        }
                    }
                }
            }
            let i = qi as usize;
            let rpq = &self.table.rplus[i];
            out_ap[i] += I * ph[i].conj() * dot_conj(&acc, rpq);
            out_am[i] += I * ph[i] * dot_noconj(&acc, rpq);
        }
    }
}

/// `sum_sigma_fast e^{i sigma omega tau} u^sigma r^sigma` per mode: the
/// fast part of the rotated field, as raw 4-vectors.
fn rotated_fast(c: &SpectralComponents, ph: &[Complex64], table: &FrameTable) -> Vec<Coeff> {
    let mut out = vec![[Complex64::ZERO; 4]; c.ap.len()];
    for i in 0..c.ap.len() {
        let p = ph[i] * c.ap[i];
        let m = ph[i].conj() * c.am[i];
        let rp = &table.rplus[i];
        for j in 0..4 {
            out[i][j] = p * rp[j] + m * rp[j].conj();
        }
    }
    out
}

fn mirror(field: &mut SpectralField, reps: &[u32], grid: Grid) {
    let coeffs = field.coeffs_mut();
    for &qi in reps {
        let v = coeffs[qi as usize];
        coeffs[grid.mirror_idx(qi as usize)] =
            [v[0].conj(), v[1].conj(), v[2].conj(), v[3].conj()];
    }
}

fn build_channels(table: &FrameTable, dom: &DomainParams, bw: &BandwidthSpec) -> Channels {
    let grid = table.grid();
    let kk = grid.cutoff();
    let mut ffs_rep = Vec::new();
    let mut ffs_mir = Vec::new();
    let mut fsf_rep = Vec::new();
    let mut fsf_mir = Vec::new();
    let mut fff_rep = Vec::new();
    let mut fff_mir = Vec::new();
    for q in grid.iter_nonzero() {
        let qi = grid.idx_unchecked(q) as u32;
        let is_rep = Grid::is_representative(q);
        let wn = table.omega[qi as usize];
        let nn = table.check_norm[qi as usize];
        let rpq = table.rplus[qi as usize];
        let r0q = table.r0[qi as usize];
        for k1 in (-kk).max(q.k1 - kk)..=kk.min(q.k1 + kk) {
            for k2 in (-kk).max(q.k2 - kk)..=kk.min(q.k2 + kk) {
                for k3 in (-kk).max(q.k3 - kk)..=kk.min(q.k3 + kk) {
                    let k = spectral_core::WaveVector::new(k1, k2, k3);
                    if k.is_zero() {
                        continue;
                    }
                    let m = q - k;
                    if m.is_zero() {
                        continue;
                    }
                    let ki = grid.idx_unchecked(k);
                    let mi = grid.idx_unchecked(m);
                    let (wk, wm) = (table.omega[ki], table.omega[mi]);
                    let max_norm = nn.max(table.check_norm[ki]).max(table.check_norm[mi]);
                    let ds = bw.delta_star_from_max(dom, max_norm);
                    let mp = m.check_prime(dom);
                    if (wk - wm).abs() <= ds {
                        // Y = (r+_k . m') (r-_m . r0_q); r- = conj(r+)
                        let rpk = &table.rplus[ki];
                        let rpm = &table.rplus[mi];
                        let adv = rpk[0] * mp[0] + rpk[1] * mp[1] + rpk[2] * mp[2];
                        let proj =
                            (rpm[0] * r0q[0] + rpm[1] * r0q[1] + rpm[2] * r0q[2] + rpm[3] * r0q[3])
                                .conj();
                        let e = CoupledEntry { q: qi, k: ki as u32, c: adv * proj };
                        if is_rep {
                            ffs_rep.push(e);
                        } else {
                            ffs_mir.push(e);
                        }
                    }
                    if (wk - wn).abs() <= ds {
                        // X = (r+_k . m') (r0_m . conj r+_q)
                        let rpk = &table.rplus[ki];
                        let r0m = &table.r0[mi];
                        let adv = rpk[0] * mp[0] + rpk[1] * mp[1] + rpk[2] * mp[2];
                        let proj =
                            (rpq[0] * r0m[0] + rpq[1] * r0m[1] + rpq[2] * r0m[2] + rpq[3] * r0m[3])
                                .conj();
                        let e = CoupledEntry { q: qi, k: ki as u32, c: adv * proj };
                        if is_rep {
                            fsf_rep.push(e);
                        } else {
                            fsf_mir.push(e);
                        }
                    }
                    let delta = bw.delta_from_max(dom, max_norm);
                    if resonance_sets::min_fast_phase(wk, wm, wn).0 <= delta {
                        let e = PairEntry { q: qi, k: ki as u32 };
                        if is_rep {
                            fff_rep.push(e);
                        } else {
                            fff_mir.push(e);
                        }
                    }
                }
            }
        }
    }
    let ffs_boundary = ffs_rep.len();
    let fsf_boundary = fsf_rep.len();
    let fff_boundary = fff_rep.len();
    ffs_rep.extend(ffs_mir);
    fsf_rep.extend(fsf_mir);
    fff_rep.extend(fff_mir);
    Channels {
        ffs: ffs_rep,
        ffs_rep: ffs_boundary,
        fsf: fsf_rep,
        fsf_rep: fsf_boundary,
        fff: fff_rep,
        fff_rep: fff_boundary,
    }
}
