//! Manual timing probe for the convolution kernels (run with --ignored).

use operators::OperatorContext;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use resonance_sets::BandwidthSpec;
use spectral_core::{eigenframe, DomainParams, SpectralField};

fn random_real_field(cutoff: u32, dom: DomainParams, seed: u64) -> SpectralField {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut f = SpectralField::zeros(cutoff, dom);
    let grid = f.grid();
    for k in grid.iter_representatives().collect::<Vec<_>>() {
        let fr = eigenframe(k, &dom).unwrap();
        let mag = k.check_norm(&dom).powi(-2);
        let mut g = || num_complex::Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
        let (a0, ap, am) = (mag * g(), mag * g(), mag * g());
        let rm = fr.rminus();
        let mut v = [num_complex::Complex64::ZERO; 4];
        for j in 0..4 {
            v[j] = a0 * fr.r0[j] + ap * fr.rplus[j] + am * rm[j];
        }
        f.set(k, v);
        f.set(-k, [v[0].conj(), v[1].conj(), v[2].conj(), v[3].conj()]);
    }
    f
}

#[test]
#[ignore]
fn time_kernels_k8() {
    let dom = DomainParams::new(1.0, 1.0, 1.5).unwrap();
    let bw = BandwidthSpec::new(1.0, 1.0, 1.2).unwrap();
    let t0 = std::time::Instant::now();
    let ctx = OperatorContext::new(8, dom, bw);
    println!("context build: {:.3}s  channels: {:?}", t0.elapsed().as_secs_f64(), ctx.channel_sizes());
    let u = random_real_field(8, dom, 1);
    let v = random_real_field(8, dom, 2);
    for (name, reps) in [("full_modulated_real", 5), ("restricted_real", 5)] {
        let t0 = std::time::Instant::now();
        for i in 0..reps {
            let tau = 0.1 * i as f64;
            let out = match name {
                "full_modulated_real" => ctx.full_bilinear_modulated_real(&u, &v, tau).unwrap(),
                _ => ctx.restricted_bilinear_real(&u, &v, tau).unwrap(),
            };
            assert!(out.l2_norm().is_finite());
        }
        println!("{name}: {:.4}s per eval", t0.elapsed().as_secs_f64() / reps as f64);
    }
}
