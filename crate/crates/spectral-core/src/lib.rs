//! Spectral substrate for the rotating stratified Boussinesq system on the
//! anisotropic torus `[0, 2*pi*L1] x [0, 2*pi*L2] x [0, 2*pi]`.
//!
//! Fields are four-component (three velocity components plus density
//! deviation), stored as truncated Fourier coefficient sets over the cube
//! `max(|k1|,|k2|,|k3|) <= K`. The wave generator `L = P (eta J ⊕ J) P`
//! has, at each nonzero wavevector, a two-dimensional kernel spanned by the
//! geostrophic mode `r0` and the potential mode `r00`, and a conjugate pair
//! of inertia-gravity eigenvectors `r±` with eigenvalues `±i omega_k`,
//! `omega_k = |k_eta| / |k|`.
//!
//! Everything here is mode-local and immutable after construction: domain
//! geometry ([`DomainParams`], [`WaveVector`], [`Grid`]), eigenframes
//! ([`EigenFrame`], [`FrameTable`]), coefficient containers
//! ([`SpectralField`], [`SpectralScalarField`]) and the operations on them
//! (projections, slow/fast split, Sobolev norms, the evolution rotation
//! `e^{tau L}` and the linear potential vorticity).
//!
//! Norm convention: all norms and inner products are plain coefficient sums
//! (`||U||_{H^l}^2 = sum |k_check|^{2l} |U_k|^2`) without the `|T^3|`
//! volume factor; every identity in this workspace uses the same convention.

pub mod domain;
pub mod eigen;
pub mod field;
pub mod snapshot;

pub use domain::{DomainParams, Grid, WaveVector};
pub use eigen::{dispersion, eigenframe, generator_matrix, EigenFrame, FrameTable, Sigma, Sign};
pub use field::{SpectralComponents, SpectralField, SpectralScalarField};

use thiserror::Error;

/// Errors shared across the workspace's spectral layers.
#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("invalid domain parameters: {0}")]
    InvalidDomain(String),
    #[error("zero wavevector has no dispersion relation or eigenframe")]
    ZeroWaveVector,
    #[error("wavevectors do not satisfy the convolution condition k+m+n=0")]
    ConvolutionViolation,
    #[error("mismatched grids or domains: {0}")]
    Mismatch(String),
    #[error("snapshot format error: {0}")]
    Snapshot(String),
    #[error("resource budget exceeded: {0}")]
    ResourceBudget(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, SpectralError>;
