//! Nonlinear and dissipative operators of the near-resonant Boussinesq
//! approximation: the full advection bilinearity, the restricted slow and
//! fast bilinearities (plain and modulated), triad interaction
//! coefficients with their closed forms, the modified diagonal dissipation
//! and the potential-vorticity transport form of the slow-slow term.

pub mod bilinear;
pub mod coupling;
pub mod dissipation;
pub mod transport;

pub use bilinear::OperatorContext;
pub use coupling::{
    coupling, ffs_closed_form, ffs_coefficient_bound_check, slow_coefficient,
    slow_coefficient_tabled, Coupling,
};
pub use dissipation::{
    modified_dissipation, modified_dissipation_checked, oscillatory_dissipation,
    printed_nu22_max_residual, DissipationSymbols,
};
pub use transport::lpv_slow_transport;
