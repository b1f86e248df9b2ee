//! Near-resonant interaction sets for the rotating stratified Boussinesq
//! system: triad phases, bandwidth laws, sign classification, exhaustive
//! enumeration, and the lattice-counting experiments that back the
//! restricted convolution estimates.
//!
//! A triad is an ordered triple `(k, m, n)` of nonzero wavevectors with
//! `k + m + n = 0`; `k, m` index the bilinearity inputs and `-n` the
//! output. Slow/fast type labels (S/F) refer to the eigenframe branch of
//! each slot, and near-resonance means `|sigma1 w_k + sigma2 w_m +
//! sigma3 w_n|` is below a wavevector-dependent bandwidth: `delta` for
//! fast-fast-fast triads, `delta*` for the mixed fast-fast-slow and
//! fast-slow-fast ones. Slow-slow-slow triads are exact resonances and
//! slow-fast-fast ones are kept unrestricted; the remaining sign types
//! cannot be near-resonant at all because the bandwidths are capped below
//! `min(eta/2, 1/2)` while their phases are bounded below by `min(eta,1)`.

pub mod bandwidth;
pub mod counting;
pub mod triads;

pub use bandwidth::BandwidthSpec;
pub use counting::{
    box_estimate, count_fff, count_mixed, counting_hypothesis_check, lower_bound_family,
    ols_loglog, FitResult, HypothesisReport,
};
pub use triads::{
    admissible_fff_signs, classify, min_fast_phase, phase, Membership, TriadIndex, TripletRecord,
};
