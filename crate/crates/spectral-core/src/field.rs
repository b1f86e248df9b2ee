//! Truncated four-component coefficient fields and the mode-local
//! operations on them: eigenprojections, slow/fast split, Sobolev norms,
//! the evolution rotation and the linear potential vorticity.

use crate::domain::{DomainParams, Grid, WaveVector};
use crate::eigen::{FrameTable, Sigma};
use crate::{Result, SpectralError};
use num_complex::Complex64;

pub type Coeff = [Complex64; 4];

const ZERO4: Coeff = [Complex64::ZERO; 4];

/// Dense truncated Fourier coefficient set `U_k ∈ C^4`,
/// `0 < max_norm(k) <= K`, origin slot pinned to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    dom: DomainParams,
    grid: Grid,
    coeffs: Vec<Coeff>,
}

impl SpectralField {
    pub fn zeros(cutoff: u32, dom: DomainParams) -> Self {
        let grid = Grid::new(cutoff);
        Self { dom, grid, coeffs: vec![ZERO4; grid.len()] }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn dom(&self) -> &DomainParams {
        &self.dom
    }

    pub fn cutoff(&self) -> i32 {
        self.grid.cutoff()
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Coeff] {
        &mut self.coeffs
    }

    /// Coefficient at `k`; zero outside the cube (truncation).
    pub fn get(&self, k: WaveVector) -> Coeff {
        match self.grid.idx(k) {
            Some(i) => self.coeffs[i],
            None => ZERO4,
        }
    }

    pub fn set(&mut self, k: WaveVector, value: Coeff) {
        if k.is_zero() {
            return;
        }
        if let Some(i) = self.grid.idx(k) {
            self.coeffs[i] = value;
        }
    }

    pub fn same_layout(&self, other: &Self) -> bool {
        self.grid == other.grid && self.dom == other.dom
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert!(self.same_layout(other));
        for (a, b) in self.coeffs.iter_mut().zip(other.coeffs.iter()) {
            for i in 0..4 {
                a[i] += b[i];
            }
        }
    }

    pub fn axpy(&mut self, alpha: f64, other: &Self) {
        assert!(self.same_layout(other));
        for (a, b) in self.coeffs.iter_mut().zip(other.coeffs.iter()) {
            for i in 0..4 {
                a[i] += alpha * b[i];
            }
        }
    }

    pub fn scale(&mut self, alpha: f64) {
        for a in self.coeffs.iter_mut() {
            for x in a.iter_mut() {
                *x *= alpha;
            }
        }
    }

    /// Largest violation of `U_{-k} = conj(U_k)`.
    pub fn reality_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for k in self.grid.iter_representatives() {
            let a = self.get(k);
            let b = self.get(-k);
            for i in 0..4 {
                worst = worst.max((a[i] - b[i].conj()).norm());
            }
        }
        worst
    }

    /// Largest violation of `velocity(U_k) ⟂ k_check`, relative to `|U_k|`.
    pub fn divergence_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for k in self.grid.iter_nonzero() {
            let u = self.get(k);
            let c = k.check(&self.dom);
            let dot = u[0] * c[0] + u[1] * c[1] + u[2] * c[2];
            let mag = (u[0].norm_sqr() + u[1].norm_sqr() + u[2].norm_sqr() + u[3].norm_sqr())
                .sqrt()
                * k.check_norm(&self.dom);
            if mag > 0.0 {
                worst = worst.max(dot.norm() / mag);
            }
        }
        worst
    }

    /// Overwrite the lower half-lattice with the conjugate of the upper
    /// half, enforcing reality exactly.
    pub fn enforce_reality(&mut self) {
        for k in self.grid.iter_representatives() {
            let i = self.grid.idx_unchecked(k);
            let v = self.coeffs[i];
            self.coeffs[self.grid.mirror_idx(i)] =
                [v[0].conj(), v[1].conj(), v[2].conj(), v[3].conj()];
        }
    }

    /// `sigma`-component `<U_k, conj r_k^sigma>`; zero for modes outside
    /// the cube.
    pub fn project_sigma(&self, table: &FrameTable, k: WaveVector, sigma: Sigma) -> Complex64 {
        if !self.grid.contains(k) || k.is_zero() {
            return Complex64::ZERO;
        }
        let i = self.grid.idx_unchecked(k);
        let u = self.coeffs[i];
        match sigma {
            Sigma::ZeroZero => dot_real(&u, &table.r00[i]),
            Sigma::Zero => dot_real(&u, &table.r0[i]),
            Sigma::Plus => dot_conj(&u, &table.rplus[i]),
            Sigma::Minus => {
                // <U, conj r-> = <U, r+>
                u[0] * table.rplus[i][0]
                    + u[1] * table.rplus[i][1]
                    + u[2] * table.rplus[i][2]
                    + u[3] * table.rplus[i][3]
            }
        }
    }

    /// Split into slow (`r0`) and fast (`r±`) parts; any `r00` content is
    /// dropped from both outputs (see [`SpectralField::r00_energy`]).
    pub fn slow_fast_split(&self, table: &FrameTable) -> (SpectralField, SpectralField) {
        assert_eq!(table.grid(), self.grid, "frame table grid mismatch");
        let mut slow = Self::zeros(self.grid.cutoff() as u32, self.dom);
        let mut fast = Self::zeros(self.grid.cutoff() as u32, self.dom);
        for (i, u) in self.coeffs.iter().enumerate() {
            let a0 = dot_real(u, &table.r0[i]);
            let ap = dot_conj(u, &table.rplus[i]);
            let am = dot_noconj(u, &table.rplus[i]);
            let r0 = &table.r0[i];
            let rp = &table.rplus[i];
            for j in 0..4 {
                slow.coeffs[i][j] = a0 * r0[j];
                fast.coeffs[i][j] = ap * rp[j] + am * rp[j].conj();
            }
        }
        (slow, fast)
    }

    /// Squared L2 content of the excluded potential subspace.
    pub fn r00_energy(&self, table: &FrameTable) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, u)| dot_real(u, &table.r00[i]).norm_sqr())
            .sum()
    }

    /// `||U||_{H^ell}` with the coefficient convention
    /// `(sum_k |k_check|^{2 ell} |U_k|^2)^{1/2}`.
    pub fn sobolev_norm(&self, ell: f64) -> f64 {
        let mut s = 0.0;
        for k in self.grid.iter_nonzero() {
            let u = self.get(k);
            let mag2 =
                u[0].norm_sqr() + u[1].norm_sqr() + u[2].norm_sqr() + u[3].norm_sqr();
            if mag2 > 0.0 {
                s += k.check_norm(&self.dom).powf(2.0 * ell) * mag2;
            }
        }
        s.sqrt()
    }

    pub fn l2_norm(&self) -> f64 {
        let s: f64 = self
            .coeffs
            .iter()
            .map(|u| u[0].norm_sqr() + u[1].norm_sqr() + u[2].norm_sqr() + u[3].norm_sqr())
            .sum();
        s.sqrt()
    }

    /// Coefficient inner product `sum_k U_k . conj(V_k)`.
    pub fn l2_inner(&self, other: &Self) -> Complex64 {
        assert!(self.same_layout(other));
        let mut s = Complex64::ZERO;
        for (u, v) in self.coeffs.iter().zip(other.coeffs.iter()) {
            for i in 0..4 {
                s += u[i] * v[i].conj();
            }
        }
        s
    }

    /// `sum_k |k_check|^{2 ell} U_k . conj(V_k)`.
    pub fn sobolev_inner(&self, other: &Self, ell: f64) -> Complex64 {
        assert!(self.same_layout(other));
        let mut s = Complex64::ZERO;
        for k in self.grid.iter_nonzero() {
            let i = self.grid.idx_unchecked(k);
            let u = &self.coeffs[i];
            let v = &other.coeffs[i];
            let mut t = Complex64::ZERO;
            for j in 0..4 {
                t += u[j] * v[j].conj();
            }
            s += k.check_norm(&self.dom).powf(2.0 * ell) * t;
        }
        s
    }

    /// Evolution rotation `e^{tau L} U`: multiplies the `sigma`-component
    /// by `e^{i sigma omega_k tau}`. Unitary in every Sobolev norm; the
    /// slow and `r00` components are untouched.
    pub fn evolution_rotate(&self, table: &FrameTable, tau: f64) -> SpectralField {
        assert_eq!(table.grid(), self.grid);
        let mut out = self.clone();
        for (i, u) in self.coeffs.iter().enumerate() {
            let rp = &table.rplus[i];
            let ap = dot_conj(u, rp);
            let am = dot_noconj(u, rp);
            if ap == Complex64::ZERO && am == Complex64::ZERO {
                continue;
            }
            let ph = Complex64::from_polar(1.0, table.omega[i] * tau);
            let dp = (ph - 1.0) * ap;
            let dm = (ph.conj() - 1.0) * am;
            for j in 0..4 {
                out.coeffs[i][j] += dp * rp[j] + dm * rp[j].conj();
            }
        }
        out
    }

    /// Linear potential vorticity `Q_k = i |k_check_eta| <U_k, r_k^0>`;
    /// annihilates the fast and `r00` content.
    pub fn apply_lpv(&self, table: &FrameTable) -> SpectralScalarField {
        assert_eq!(table.grid(), self.grid);
        let mut out = SpectralScalarField::zeros(self.grid.cutoff() as u32, self.dom);
        for k in self.grid.iter_nonzero() {
            let i = self.grid.idx_unchecked(k);
            let a0 = dot_real(&self.coeffs[i], &table.r0[i]);
            out.coeffs[i] = Complex64::i() * k.check_eta_norm(&self.dom) * a0;
        }
        out
    }

    /// Checked layout-compatibility guard for binary operations.
    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        if !self.same_layout(other) {
            return Err(SpectralError::Mismatch(format!(
                "field layouts differ: K={} vs K={}",
                self.grid.cutoff(),
                other.grid.cutoff()
            )));
        }
        Ok(())
    }
}

#[inline]
pub fn dot_real(u: &Coeff, r: &[f64; 4]) -> Complex64 {
    u[0] * r[0] + u[1] * r[1] + u[2] * r[2] + u[3] * r[3]
}

/// `<u, conj r>` for complex `r` (Hermitian pairing with `r` conjugated).
#[inline]
pub fn dot_conj(u: &Coeff, r: &[Complex64; 4]) -> Complex64 {
    u[0] * r[0].conj() + u[1] * r[1].conj() + u[2] * r[2].conj() + u[3] * r[3].conj()
}

/// `<u, r>` without conjugation; equals the `r-` pairing when `r = r+`.
#[inline]
pub fn dot_noconj(u: &Coeff, r: &[Complex64; 4]) -> Complex64 {
    u[0] * r[0] + u[1] * r[1] + u[2] * r[2] + u[3] * r[3]
}

/// Scalar coefficient field (used for the potential vorticity).
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralScalarField {
    dom: DomainParams,
    grid: Grid,
    pub coeffs: Vec<Complex64>,
}

impl SpectralScalarField {
    pub fn zeros(cutoff: u32, dom: DomainParams) -> Self {
        let grid = Grid::new(cutoff);
        Self { dom, grid, coeffs: vec![Complex64::ZERO; grid.len()] }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn dom(&self) -> &DomainParams {
        &self.dom
    }

    pub fn get(&self, k: WaveVector) -> Complex64 {
        match self.grid.idx(k) {
            Some(i) => self.coeffs[i],
            None => Complex64::ZERO,
        }
    }

    pub fn set(&mut self, k: WaveVector, v: Complex64) {
        if k.is_zero() {
            return;
        }
        if let Some(i) = self.grid.idx(k) {
            self.coeffs[i] = v;
        }
    }

    pub fn sobolev_norm(&self, ell: f64) -> f64 {
        let mut s = 0.0;
        for k in self.grid.iter_nonzero() {
            let m2 = self.coeffs[self.grid.idx_unchecked(k)].norm_sqr();
            if m2 > 0.0 {
                s += k.check_norm(&self.dom).powf(2.0 * ell) * m2;
            }
        }
        s.sqrt()
    }

    pub fn l2_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn l2_inner(&self, other: &Self) -> Complex64 {
        self.coeffs.iter().zip(other.coeffs.iter()).map(|(a, b)| a * b.conj()).sum()
    }
}

/// Eigenframe components of a field: `a0 = u^0`, `ap = u^+`, `am = u^-`
/// per grid slot. The working representation inside the operators.
#[derive(Debug, Clone)]
pub struct SpectralComponents {
    pub a0: Vec<Complex64>,
    pub ap: Vec<Complex64>,
    pub am: Vec<Complex64>,
}

impl SpectralComponents {
    pub fn of(field: &SpectralField, table: &FrameTable) -> Self {
        assert_eq!(table.grid(), field.grid());
        let n = field.coeffs.len();
        let mut a0 = vec![Complex64::ZERO; n];
        let mut ap = vec![Complex64::ZERO; n];
        let mut am = vec![Complex64::ZERO; n];
        for (i, u) in field.coeffs.iter().enumerate() {
            a0[i] = dot_real(u, &table.r0[i]);
            ap[i] = dot_conj(u, &table.rplus[i]);
            am[i] = dot_noconj(u, &table.rplus[i]);
        }
        Self { a0, ap, am }
    }

    /// Reassemble the field `sum_sigma a^sigma r^sigma` (no `r00` part).
    pub fn assemble(&self, table: &FrameTable, dom: DomainParams) -> SpectralField {
        let grid = table.grid();
        let mut out = SpectralField::zeros(grid.cutoff() as u32, dom);
        for i in 0..self.a0.len() {
            let r0 = &table.r0[i];
            let rp = &table.rplus[i];
            for j in 0..4 {
                out.coeffs[i][j] = self.a0[i] * r0[j]
                    + self.ap[i] * rp[j]
                    + self.am[i] * rp[j].conj();
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dom() -> DomainParams {
        DomainParams::new(1.0, 1.0, 2.0).unwrap()
    }

    #[test]
    fn project_sigma_orthonormality() {
        let d = dom();
        let table = FrameTable::new(3, d);
        let k = WaveVector::new(1, 2, -1);
        let f = crate::eigen::eigenframe(k, &d).unwrap();
        let mut u = SpectralField::zeros(3, d);
        u.set(k, f.rplus);
        assert!((u.project_sigma(&table, k, Sigma::Plus) - 1.0).norm() < 1e-14);
        assert!(u.project_sigma(&table, k, Sigma::Zero).norm() < 1e-14);
        assert!(u.project_sigma(&table, k, Sigma::Minus).norm() < 1e-14);
        // linearity: U = r0 + 2 r-
        let rm = f.rminus();
        let mut v = SpectralField::zeros(3, d);
        let mut c = [Complex64::ZERO; 4];
        for i in 0..4 {
            c[i] = Complex64::new(f.r0[i], 0.0) + 2.0 * rm[i];
        }
        v.set(k, c);
        assert!((v.project_sigma(&table, k, Sigma::Minus) - 2.0).norm() < 1e-14);
        assert!((v.project_sigma(&table, k, Sigma::Zero) - 1.0).norm() < 1e-14);
        // missing wavevector -> 0
        assert_eq!(v.project_sigma(&table, WaveVector::new(9, 9, 9), Sigma::Plus), Complex64::ZERO);
    }

    #[test]
    fn sobolev_norm_single_modes() {
        let d = dom();
        let mut u = SpectralField::zeros(4, d);
        u.set(WaveVector::new(1, 0, 0), [Complex64::new(1.0, 0.0), Complex64::ZERO, Complex64::ZERO, Complex64::ZERO]);
        assert!((u.sobolev_norm(2.0) - 1.0).abs() < 1e-14);
        let mut v = SpectralField::zeros(4, d);
        v.set(WaveVector::new(0, 0, 2), [Complex64::new(1.0, 0.0), Complex64::ZERO, Complex64::ZERO, Complex64::ZERO]);
        assert!((v.sobolev_norm(1.0) - 2.0).abs() < 1e-14);
        // Pythagorean additivity for orthogonal modes
        u.add_assign(&v);
        let want = (1.0f64 + 4.0).sqrt();
        assert!((u.sobolev_norm(1.0) - want).abs() < 1e-14);
    }

    #[test]
    fn rotate_is_unitary_and_invertible() {
        let d = dom();
        let table = FrameTable::new(2, d);
        let mut u = SpectralField::zeros(2, d);
        // a couple of deterministic mixed-content modes with reality pairing
        for (k, val) in [
            (WaveVector::new(1, 0, 1), [Complex64::new(0.3, 0.1); 4]),
            (WaveVector::new(0, 1, 1), [Complex64::new(-0.2, 0.4); 4]),
        ] {
            let p = crate::eigen::leray_matrix(k, &d);
            let mut v = [Complex64::ZERO; 4];
            for i in 0..4 {
                for j in 0..4 {
                    v[i] += p[i][j] * val[j];
                }
            }
            u.set(k, v);
            u.set(-k, [v[0].conj(), v[1].conj(), v[2].conj(), v[3].conj()]);
        }
        let tau = 0.83;
        let r = u.evolution_rotate(&table, tau);
        for ell in [0.0, 1.0, 2.0] {
            assert!((r.sobolev_norm(ell) - u.sobolev_norm(ell)).abs() < 1e-12 * u.sobolev_norm(ell));
        }
        let back = r.evolution_rotate(&table, -tau);
        for (a, b) in back.coeffs().iter().zip(u.coeffs().iter()) {
            for i in 0..4 {
                assert!((a[i] - b[i]).norm() < 1e-13);
            }
        }
        // tau = 0 is the identity
        let id = u.evolution_rotate(&table, 0.0);
        assert_eq!(id.coeffs(), u.coeffs());
    }

    #[test]
    fn lpv_vertical_slow_mode() {
        // U_k = r_k^0 at k=(0,0,1), eta=2: Q_k = 2i.
        let d = dom();
        let table = FrameTable::new(1, d);
        let k = WaveVector::new(0, 0, 1);
        let f = crate::eigen::eigenframe(k, &d).unwrap();
        let mut u = SpectralField::zeros(1, d);
        u.set(k, [
            Complex64::new(f.r0[0], 0.0),
            Complex64::new(f.r0[1], 0.0),
            Complex64::new(f.r0[2], 0.0),
            Complex64::new(f.r0[3], 0.0),
        ]);
        let q = u.apply_lpv(&table);
        assert!((q.get(k) - Complex64::new(0.0, 2.0)).norm() < 1e-14);
    }
}
