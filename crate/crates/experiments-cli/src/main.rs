//! `nearres` — counting, invariant, coefficient, simulation and
//! N-scaling experiments for the near-resonant Boussinesq toolkit.

use clap::{Args, Parser, Subcommand};
use experiments_cli::{compare_n, configfile::ConfigFile, count, invariants, lower_bound, scan, simulate};
use resonance_sets::BandwidthSpec;
use spectral_core::{DomainParams, WaveVector};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "nearres", version, about = "Near-resonant Boussinesq experiments")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Default)]
struct Common {
    /// Rotation/stratification ratio eta = Omega/N (default 2.0)
    #[arg(long)]
    eta: Option<f64>,
    /// Horizontal period factor L1 (default 1.0)
    #[arg(long)]
    l1: Option<f64>,
    /// Horizontal period factor L2 (default 1.0)
    #[arg(long)]
    l2: Option<f64>,
    /// Galerkin cutoff K (default per command)
    #[arg(long)]
    cutoff: Option<u32>,
    /// FFF bandwidth constant C_delta (default 1.0)
    #[arg(long)]
    c_delta: Option<f64>,
    /// Mixed bandwidth constant C_delta* (default 1.0)
    #[arg(long)]
    c_delta_star: Option<f64>,
    /// Mixed bandwidth exponent zeta in [6/5, 2] (default 1.2)
    #[arg(long)]
    zeta: Option<f64>,
    /// Viscosity nu1 (default 0.0)
    #[arg(long)]
    nu1: Option<f64>,
    /// Heat conductivity nu2 (default 0.0)
    #[arg(long)]
    nu2: Option<f64>,
    /// Stiffness N (default 10.0)
    #[arg(long)]
    big_n: Option<f64>,
    /// Time step (default from the phase-resolution bound)
    #[arg(long)]
    dt: Option<f64>,
    /// Final time (default 1.0)
    #[arg(long)]
    t_final: Option<f64>,
    /// RNG seed (default 0)
    #[arg(long)]
    seed: Option<u64>,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Flat key=value configuration file; command-line flags win
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Common {
    fn merged(mut self) -> Result<Merged, String> {
        if let Some(path) = &self.config {
            let cf = ConfigFile::load(path)?;
            cf.fill(&mut self.eta, "eta")?;
            cf.fill(&mut self.l1, "l1")?;
            cf.fill(&mut self.l2, "l2")?;
            cf.fill(&mut self.cutoff, "cutoff")?;
            cf.fill(&mut self.c_delta, "c-delta")?;
            cf.fill(&mut self.c_delta_star, "c-delta-star")?;
            cf.fill(&mut self.zeta, "zeta")?;
            cf.fill(&mut self.nu1, "nu1")?;
            cf.fill(&mut self.nu2, "nu2")?;
            cf.fill(&mut self.big_n, "big-n")?;
            cf.fill(&mut self.dt, "dt")?;
            cf.fill(&mut self.t_final, "t-final")?;
            cf.fill(&mut self.seed, "seed")?;
        }
        let dom = DomainParams::new(
            self.l1.unwrap_or(1.0),
            self.l2.unwrap_or(1.0),
            self.eta.unwrap_or(2.0),
        )
        .map_err(|e| e.to_string())?;
        let bw = BandwidthSpec::new(
            self.c_delta.unwrap_or(1.0),
            self.c_delta_star.unwrap_or(1.0),
            self.zeta.unwrap_or(1.2),
        )
        .map_err(|e| e.to_string())?;
        Ok(Merged {
            dom,
            bw,
            cutoff: self.cutoff,
            nu1: self.nu1.unwrap_or(0.0),
            nu2: self.nu2.unwrap_or(0.0),
            big_n: self.big_n.unwrap_or(10.0),
            dt: self.dt,
            t_final: self.t_final.unwrap_or(1.0),
            seed: self.seed.unwrap_or(0),
            out: self.out,
        })
    }
}

struct Merged {
    dom: DomainParams,
    bw: BandwidthSpec,
    cutoff: Option<u32>,
    nu1: f64,
    nu2: f64,
    big_n: f64,
    dt: Option<f64>,
    t_final: f64,
    seed: u64,
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Lattice counts over the near-resonance sets with power-law fits
    Count {
        #[command(flatten)]
        common: Common,
        /// Which family to count: fff or mixed
        #[arg(long, default_value = "mixed")]
        set: String,
        /// Comma-separated ladder of ball radii M (mixed) or |n| sizes (fff)
        #[arg(long, default_value = "32,64,128")]
        ladder: String,
        /// Fixed delta* for the mixed M-ladder
        #[arg(long, default_value_t = 0.1)]
        delta_star: f64,
        /// Comma-separated delta* ladder at the largest M
        #[arg(long, default_value = "0.02,0.04,0.08,0.16")]
        delta_star_ladder: String,
        /// Fixed output mode n for mixed counts, as k1,k2,k3
        #[arg(long, default_value = "2,1,0")]
        n_mode: String,
    },
    /// Run the invariant suite; exit code 0 iff every check passes
    Invariants {
        #[command(flatten)]
        common: Common,
        /// Shrunk grid for a fast smoke run
        #[arg(long)]
        quick: bool,
        /// Include the corrupted-frame negative control
        #[arg(long)]
        negative_control: bool,
    },
    /// Interaction-coefficient scan: closed forms vs frame assembly
    CoeffScan {
        #[command(flatten)]
        common: Common,
        /// Scan all triplets with max-norm up to this bound
        #[arg(long, default_value_t = 4)]
        max_norm: u32,
        /// Emit one CSV row per triplet (large!)
        #[arg(long)]
        rows: bool,
    },
    /// Integrate a system and stream diagnostics
    Simulate {
        #[command(flatten)]
        common: Common,
        /// full | restricted | compare
        #[arg(long, default_value = "restricted")]
        mode: String,
        /// Sample every this many steps
        #[arg(long, default_value_t = 10)]
        sample_every: usize,
        /// Branch weights for the initial data, as w0,w+,w-
        #[arg(long, default_value = "1,1,1")]
        weights: String,
        /// L2 amplitude of the initial data (0 keeps the raw draw)
        #[arg(long, default_value_t = 0.2)]
        amplitude: f64,
        /// Spectral slope of the initial data
        #[arg(long, default_value_t = 2.0)]
        slope: f64,
    },
    /// Error scaling of the approximation against the full system in N
    CompareN {
        #[command(flatten)]
        common: Common,
        /// Comma-separated N ladder
        #[arg(long, default_value = "25,50,100,200,400")]
        n_ladder: String,
        /// Per-step phase increment dt*N*omega_max used to pick dt
        #[arg(long, default_value_t = 0.25)]
        phase_factor: f64,
        /// L2 amplitude of the initial data
        #[arg(long, default_value_t = 0.3)]
        amplitude: f64,
    },
    /// Appendix lower-bound family vs its continuum box estimate
    LowerBound {
        #[command(flatten)]
        common: Common,
        /// Comma-separated M ladder
        #[arg(long, default_value = "64,128")]
        ladder: String,
        /// Mixed bandwidth value delta*
        #[arg(long, default_value_t = 0.1)]
        delta_star: f64,
    },
}

fn parse_ladder<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, String>
where
    T::Err: std::fmt::Display,
{
    s.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|e| format!("bad ladder entry {x:?}: {e}")))
        .collect()
}

fn run() -> Result<bool, String> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Count { common, set, ladder, delta_star, delta_star_ladder, n_mode } => {
            let m = common.merged()?;
            match set.as_str() {
                "fff" => {
                    let sizes: Vec<f64> = parse_ladder(&ladder)?;
                    let c_delta = m.bw.c_delta;
                    let out = count::fff_count_experiment(&m.dom, c_delta, &sizes)
                        .map_err(|e| e.to_string())?;
                    count::fff_report(&m.dom, c_delta, &out)
                        .emit(m.out.as_deref())
                        .map_err(|e| e.to_string())?;
                }
                "mixed" => {
                    let ms: Vec<f64> = parse_ladder(&ladder)?;
                    let ds: Vec<f64> = parse_ladder(&delta_star_ladder)?;
                    let nv: Vec<i32> = parse_ladder(&n_mode)?;
                    if nv.len() != 3 {
                        return Err("n-mode must be k1,k2,k3".into());
                    }
                    let n = WaveVector::new(nv[0], nv[1], nv[2]);
                    let out = count::mixed_count_experiment(&m.dom, n, &ms, delta_star, &ds)
                        .map_err(|e| e.to_string())?;
                    count::mixed_report(&m.dom, n, &out)
                        .emit(m.out.as_deref())
                        .map_err(|e| e.to_string())?;
                }
                other => return Err(format!("unknown set {other:?} (fff|mixed)")),
            }
            Ok(true)
        }
        Cmd::Invariants { common, quick, negative_control } => {
            let m = common.merged()?;
            let mut p = if quick {
                invariants::InvariantParams::quick()
            } else {
                invariants::InvariantParams::default()
            };
            p.bw = m.bw;
            p.seed = m.seed;
            p.negative_control = negative_control;
            let results = invariants::run_invariant_suite(&p);
            let all_pass = results.iter().all(|c| c.pass);
            for c in &results {
                println!(
                    "CHECK {:42} {}  {}",
                    c.name,
                    if c.pass { "PASS" } else { "FAIL" },
                    c.detail
                );
            }
            invariants::suite_report(&p, &results)
                .emit(m.out.as_deref())
                .map_err(|e| e.to_string())?;
            Ok(all_pass)
        }
        Cmd::CoeffScan { common, max_norm, rows } => {
            let m = common.merged()?;
            let out =
                scan::coefficient_scan(&m.dom, max_norm, rows).map_err(|e| e.to_string())?;
            scan::scan_report(&m.dom, max_norm, &out)
                .emit(m.out.as_deref())
                .map_err(|e| e.to_string())?;
            Ok(out.worst_closed_rel <= 1e-11 && out.worst_degenerate_abs <= 1e-12)
        }
        Cmd::Simulate { common, mode, sample_every, weights, amplitude, slope } => {
            let m = common.merged()?;
            let w: Vec<f64> = parse_ladder(&weights)?;
            if w.len() != 3 {
                return Err("weights must be w0,w+,w-".into());
            }
            let mut cfg = solver::SimConfig::new(m.dom, m.bw);
            cfg.cutoff = m.cutoff.unwrap_or(6);
            cfg.nu1 = m.nu1;
            cfg.nu2 = m.nu2;
            cfg.big_n = m.big_n;
            cfg.dt = m.dt.unwrap_or(0.25 / (m.big_n * m.dom.omega_max()));
            cfg.t_final = m.t_final;
            cfg.seed = m.seed;
            cfg.spectrum_slope = slope;
            cfg.branch_weights = [w[0], w[1], w[2]];
            cfg.amplitude = amplitude;
            cfg.sample_every = sample_every;
            cfg.mode = match mode.as_str() {
                "full" => solver::RunMode::Full,
                "restricted" => solver::RunMode::Restricted,
                "compare" => solver::RunMode::Compare,
                other => return Err(format!("unknown mode {other:?}")),
            };
            let out = solver::run(&cfg).map_err(|e| e.to_string())?;
            simulate::simulate_report(&cfg, &out)
                .emit(m.out.as_deref())
                .map_err(|e| e.to_string())?;
            Ok(out.aborted_at.is_none())
        }
        Cmd::CompareN { common, n_ladder, phase_factor, amplitude } => {
            let m = common.merged()?;
            let mut p = compare_n::CompareNParams::new(m.dom, m.bw);
            p.cutoff = m.cutoff.unwrap_or(8);
            p.nu1 = m.nu1;
            p.nu2 = m.nu2;
            p.t_final = m.t_final;
            p.seed = m.seed;
            p.amplitude = amplitude;
            p.n_ladder = parse_ladder(&n_ladder)?;
            p.phase_factor = phase_factor;
            let out = compare_n::compare_n_experiment(&p).map_err(|e| e.to_string())?;
            compare_n::compare_n_report(&p, &out)
                .emit(m.out.as_deref())
                .map_err(|e| e.to_string())?;
            Ok(true)
        }
        Cmd::LowerBound { common, ladder, delta_star } => {
            let m = common.merged()?;
            let ms: Vec<u32> = parse_ladder(&ladder)?;
            let out = lower_bound::lower_bound_experiment(m.dom.eta(), delta_star, &ms)
                .map_err(|e| e.to_string())?;
            lower_bound::lower_bound_report(m.dom.eta(), delta_star, &out)
                .emit(m.out.as_deref())
                .map_err(|e| e.to_string())?;
            Ok(out.violations == 0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
