//! Divergence-free random initial data on the eigenframe.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use spectral_core::{eigenframe, DomainParams, SpectralField};

/// Random zero-mean, divergence-free field: `(r0, r+, r-)` components
/// drawn with magnitude `|k_check|^{-slope}` and uniform phases, weighted
/// per branch, with reality enforced by conjugate pairing and no `r00`
/// content. Identical seeds give bit-identical fields.
pub fn random_divfree_field(
    cutoff: u32,
    seed: u64,
    slope: f64,
    dom: DomainParams,
    weights: [f64; 3],
) -> SpectralField {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut f = SpectralField::zeros(cutoff, dom);
    let grid = f.grid();
    let reps: Vec<_> = grid.iter_representatives().collect();
    for k in reps {
        let fr = eigenframe(k, &dom).expect("nonzero mode");
        let mag = k.check_norm(&dom).powf(-slope);
        let mut draw = |w: f64| {
            let theta = rng.gen::<f64>() * std::f64::consts::TAU;
            Complex64::from_polar(w * mag, theta)
        };
        let a0 = draw(weights[0]);
        let ap = draw(weights[1]);
        let am = draw(weights[2]);
        let rm = fr.rminus();
        let mut v = [Complex64::ZERO; 4];
        for j in 0..4 {
            v[j] = a0 * fr.r0[j] + ap * fr.rplus[j] + am * rm[j];
        }
        f.set(k, v);
        f.set(-k, [v[0].conj(), v[1].conj(), v[2].conj(), v[3].conj()]);
    }
    f
}
