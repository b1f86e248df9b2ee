//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line with the observed quantity and its pinned tolerance.
//!
//! Run with `cargo test -p experiments-cli --test acceptance -- --nocapture`
//! (included in the default workspace test run).

use experiments_cli::{compare_n, count, invariants, lower_bound, scan};
use operators::{modified_dissipation, printed_nu22_max_residual, DissipationSymbols};
use resonance_sets::BandwidthSpec;
use solver::{random_divfree_field, run, RunMode, SimConfig};
use spectral_core::{DomainParams, FrameTable};

fn verdict(idx: u32, name: &str, pass: bool, detail: &str) {
    println!("ACCEPTANCE {idx} {name}: {} — {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "acceptance criterion {idx} ({name}) failed: {detail}");
}

#[test]
fn acceptance_01_eigenframe_suite() {
    let p = invariants::InvariantParams {
        frame_max_norm: 16,
        ..invariants::InvariantParams::default()
    };
    let mut results = invariants::eigenframe_suite(&p);
    results.push(invariants::e0_sum_check(&p));
    let pass = results.iter().all(|c| c.pass);
    let detail = results
        .iter()
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect::<Vec<_>>()
        .join("; ");
    verdict(1, "eigenframe-suite", pass, &detail);
}

#[test]
fn acceptance_02_energy_identities() {
    let p = invariants::InvariantParams {
        identity_cutoff: 8,
        identity_fields: 20,
        taus: vec![0.0, 0.37, 5.0],
        ..invariants::InvariantParams::default()
    };
    let results = invariants::l2l_suite(&p);
    let pass = results.iter().all(|c| c.pass);
    let detail = results
        .iter()
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect::<Vec<_>>()
        .join("; ");
    verdict(2, "energy-identities", pass, &detail);
}

#[test]
fn acceptance_03_fff_sign_lemma_and_window() {
    // window open at eta in {0.4, 2.5}: members exist, none forbidden
    let mut detail = String::new();
    let mut pass = true;
    let mut total_members = 0;
    for eta in [0.4, 2.5] {
        let s = invariants::sign_lemma_scan(eta, 12);
        assert!(s.window_open);
        total_members += s.members;
        pass &= s.forbidden_patterns == 0 && s.cap_violations == 0;
        detail.push_str(&format!(
            "eta={eta}: {} members, {} forbidden, {} cap-violations; ",
            s.members, s.forbidden_patterns, s.cap_violations
        ));
    }
    pass &= total_members > 0;
    // window closed at eta in {0.7, 1.5}: zero members at delta = cap
    for eta in [0.7, 1.5] {
        let s = invariants::sign_lemma_scan(eta, 12);
        assert!(!s.window_open);
        pass &= s.members == 0;
        detail.push_str(&format!("eta={eta}: {} members (want 0); ", s.members));
    }
    verdict(3, "fff-sign-lemma-window", pass, &detail);
}

#[test]
fn acceptance_04_ffs_closed_forms() {
    let mut pass = true;
    let mut detail = String::new();
    for eta in [0.4, 1.5, 2.5] {
        for (l1, l2) in [(1.0, 1.0), (1.3, 0.7)] {
            let dom = DomainParams::new(l1, l2, eta).unwrap();
            let out = scan::coefficient_scan(&dom, 10, false).unwrap();
            pass &= out.worst_closed_rel <= 1e-11;
            pass &= out.worst_degenerate_abs <= 1e-12;
            pass &= out.max_bound_ratio.is_finite();
            detail.push_str(&format!(
                "(eta={eta},L=({l1},{l2})): rel={:.2e} deg={:.2e} ratio={:.3}; ",
                out.worst_closed_rel, out.worst_degenerate_abs, out.max_bound_ratio
            ));
        }
    }
    // case (iii) exact zero
    let dom = DomainParams::new(1.0, 1.0, 2.0).unwrap();
    pass &= scan::vertical_triplets_have_zero_ratio(&dom, 10);
    verdict(4, "ffs-closed-forms", pass, &detail);
}

#[test]
fn acceptance_05_mixed_counting_and_lower_bound() {
    let dom = DomainParams::new(1.0, 1.0, 2.0).unwrap();
    let n = spectral_core::WaveVector::new(2, 1, 0);
    let out = count::mixed_count_experiment(
        &dom,
        n,
        &[32.0, 64.0, 128.0],
        0.1,
        &[0.02, 0.04, 0.08, 0.16],
    )
    .unwrap();
    let m_slope = out.m_fit.unwrap().slope;
    let ds_slope = out.ds_fit.unwrap().slope;
    let mut pass = (2.6..=3.1).contains(&m_slope) && (0.35..=0.65).contains(&ds_slope);
    let mut detail =
        format!("M-exponent {m_slope:.3} (want [2.6,3.1]); delta*-exponent {ds_slope:.3} (want [0.35,0.65]); ");
    let lb = lower_bound::lower_bound_experiment(2.0, 0.1, &[64, 128]).unwrap();
    pass &= lb.violations == 0;
    for (m, count, est, ratio) in &lb.rows {
        pass &= *ratio >= 0.9;
        detail.push_str(&format!("M={m}: {count} members vs box {est:.0} (ratio {ratio:.3}); "));
    }
    verdict(5, "mixed-counting-lower-bound", pass, &detail);
}

#[test]
fn acceptance_06_fff_counting() {
    let dom = DomainParams::new(1.0, 1.0, 2.5).unwrap();
    let out = count::fff_count_experiment(&dom, 1.0, &[16.0, 32.0, 64.0]).unwrap();
    let mut pass = !out.all_zero;
    // per-size constants C_i = count / (delta |n|^3 + |n|^2) within +-50%
    // of each other (spread of the largest over the smallest <= 2.25)
    pass &= out.c_spread <= 2.25;
    let detail = format!(
        "per-size C: {:?}; spread {:.3} (want <= 2.25, i.e. +-50% around the mean)",
        out.per_size.iter().map(|r| (r.0, (r.4 * 1e4).round() / 1e4)).collect::<Vec<_>>(),
        out.c_spread
    );
    verdict(6, "fff-counting", pass, &detail);
}

#[test]
fn acceptance_07_dissipation_contract() {
    let (nu1, nu2) = (0.2, 0.9);
    let mut pass = true;
    let mut worst_defect: f64 = 0.0;
    let mut printed_res: f64 = 0.0;
    for (l1, l2, eta) in [(1.0, 1.0, 2.0), (1.3, 0.7, 0.4)] {
        let dom = DomainParams::new(l1, l2, eta).unwrap();
        let table = FrameTable::new(5, dom);
        let syms = DissipationSymbols::new(&table, nu1, nu2).unwrap();
        printed_res = printed_res.max(printed_nu22_max_residual(&table, &dom, &syms));
        for i in 0..syms.s11.len() {
            if syms.lap[i] > 0.0 {
                pass &= syms.s11[i] >= nu1.min(nu2) - 1e-13;
                pass &= syms.s22[i] >= nu1.min(nu2) - 1e-13;
            }
        }
        for seed in 0..50u64 {
            let u = random_divfree_field(5, 900 + seed, 2.0, dom, [1.0; 3]);
            let (us, uf) = u.slow_fast_split(&table);
            for ell in [0.0, 1.0] {
                for part in [&us, &uf] {
                    let lhs = modified_dissipation(part, &table, &syms)
                        .sobolev_inner(part, ell)
                        .re;
                    let rhs = nu1.min(nu2) * part.sobolev_norm(ell + 1.0).powi(2);
                    worst_defect = worst_defect.max(rhs - lhs);
                    pass &= lhs >= rhs - 1e-12;
                }
            }
        }
    }
    let detail = format!(
        "100 fields x 2 ells: worst ellipticity defect {worst_defect:.3e} (tol 1e-12); printed nu22 residual {printed_res:.4} logged, frame symbols never below nu_min"
    );
    verdict(7, "dissipation-contract", pass, &detail);
}

#[test]
fn acceptance_08_conservation_and_decay() {
    let dom = DomainParams::new(1.0, 1.0, 2.0).unwrap();
    let bw = BandwidthSpec::new(1.0, 1.0, 1.2).unwrap();
    // inviscid: 1000 steps at dt*N*omega_max = 0.1
    let mut cfg = SimConfig::new(dom, bw);
    cfg.cutoff = 6;
    cfg.big_n = 1.0;
    cfg.dt = 0.1 / (cfg.big_n * dom.omega_max());
    cfg.t_final = 1000.0 * cfg.dt;
    cfg.seed = 21;
    cfg.amplitude = 0.05;
    cfg.mode = RunMode::Restricted;
    cfg.sample_every = 100;
    let out = run(&cfg).unwrap();
    assert!(out.aborted_at.is_none());
    let e0 = out.rows[0].l2 * out.rows[0].l2;
    let mut drift: f64 = 0.0;
    for r in &out.rows {
        drift = drift.max((r.l2 * r.l2 / e0 - 1.0).abs());
    }
    let mut pass = drift <= 1e-8;
    let mut detail = format!("inviscid 1000-step relative energy drift {drift:.3e} (tol 1e-8); ");

    // viscous: monotone decay and the L2 balance inequality
    cfg.nu1 = 0.02;
    cfg.nu2 = 0.05;
    cfg.t_final = 400.0 * cfg.dt;
    cfg.sample_every = 10;
    let out = run(&cfg).unwrap();
    let mut monotone = true;
    let mut worst_balance: f64 = f64::MIN;
    let mut prev = f64::INFINITY;
    for r in &out.rows {
        monotone &= r.l2 <= prev + 1e-12;
        prev = r.l2;
        worst_balance = worst_balance.max(r.l2_balance_residual);
    }
    pass &= monotone && worst_balance <= 1e-8;
    detail.push_str(&format!(
        "viscous: monotone={monotone}, worst L2-balance residual {worst_balance:.3e} (tol 1e-8)"
    ));
    verdict(8, "conservation-decay", pass, &detail);
}

#[test]
fn acceptance_09_n_scaling() {
    let dom = DomainParams::new(1.0, 1.0, 1.5).unwrap();
    let bw = BandwidthSpec::new(1.0, 1.0, 1.2).unwrap();
    let p = compare_n::CompareNParams::new(dom, bw);
    // K=8, T=0.5, identical initial data, N-ladder 25..400 (defaults)
    let out = compare_n::compare_n_experiment(&p).unwrap();
    let fit = out.fit.unwrap();
    let pass = (-1.3..=-0.7).contains(&fit.slope);
    let pts: Vec<String> =
        out.rows.iter().map(|(n, _, _, e)| format!("N={n}: {e:.3e}")).collect();
    let detail = format!(
        "H1-error slope {:.3} +- {:.3} (want [-1.3, -0.7]); {}",
        fit.slope,
        fit.slope_stderr,
        pts.join(", ")
    );
    verdict(9, "n-scaling", pass, &detail);
}

#[test]
fn acceptance_10_slow_sector_monitor() {
    let dom = DomainParams::new(1.0, 1.0, 2.0).unwrap();
    // mixed channel active
    let bw = BandwidthSpec::new(1.0, 1.0, 1.2).unwrap();
    let mut cfg = SimConfig::new(dom, bw);
    cfg.cutoff = 6;
    cfg.nu1 = 0.02;
    cfg.nu2 = 0.05;
    cfg.big_n = 5.0;
    cfg.dt = 0.1 / (cfg.big_n * dom.omega_max());
    cfg.t_final = 300.0 * cfg.dt;
    cfg.seed = 33;
    cfg.amplitude = 0.2;
    cfg.mode = RunMode::Restricted;
    cfg.sample_every = 10;
    let out = run(&cfg).unwrap();
    let m0 = out.rows[0].slow_monitor;
    let mut mmax: f64 = 0.0;
    for r in &out.rows {
        mmax = mmax.max(r.slow_monitor);
    }
    let mut pass = m0 > 0.0 && mmax <= 10.0 * m0;
    let mut detail = format!(
        "slow monitor max/initial = {:.3} (want <= 10, regression bound with the constant fitted at t=0); ",
        mmax / m0
    );

    // mixed channel off: ||Q|| must be non-increasing (the exact mixed
    // resonances that remain carry identically-zero coefficients)
    let bw0 = BandwidthSpec::new(1.0, 0.0, 1.2).unwrap();
    let mut cfg0 = cfg.clone();
    cfg0.bw = bw0;
    let out0 = run(&cfg0).unwrap();
    let mut q_monotone = true;
    let mut prev = f64::INFINITY;
    for r in &out0.rows {
        q_monotone &= r.q_l2 <= prev * (1.0 + 1e-10) + 1e-14;
        prev = r.q_l2;
    }
    pass &= q_monotone;
    detail.push_str(&format!("Q-monotonicity with mixed channel off: {q_monotone}"));
    verdict(10, "slow-sector-monitor", pass, &detail);
}
