//! # infolab
//!
//! A numerical laboratory for information-estimation identities on additive
//! noise channels `Y = X + sqrt(a)·W`.
//!
//! The crate computes differential entropy, entropy power, Fisher information
//! (with respect to location and to the noise scale `a`), posterior moments,
//! and score functions of the channel output, and uses them to verify a family
//! of exact identities numerically:
//!
//! - the De Bruijn identity `d/da h(Y) = J(Y)/2` for Gaussian noise,
//! - Stein's identity (classic and generalized / Fisher dual forms),
//! - the heat-equation identity `d/da E[g(Y)] = E[g''(Y)]/2` for Gaussian `Y`,
//! - posterior-mean expressions for `d/da h(Y)` valid for Gaussian,
//!   exponential, and gamma noise, with their noise-specific corollaries,
//! - second-derivative (curvature) expressions for `d²/da² h(Y)`,
//! - the Fisher information inequality and the decay law
//!   `d/da J(Y) = -E[(S')²]`.
//!
//! On top of the identities it evaluates estimation bounds - the MMSE, the
//! Bayesian Cramér-Rao lower bound, and the conditional entropy-power lower
//! bound `N(X|Y)` - checks their ordering over an SNR sweep, and verifies the
//! concavity of the entropy power along the noise path (Costa's inequality).
//!
//! Everything is driven by deterministic adaptive quadrature, Richardson
//! finite differences, and seeded Monte Carlo, so results are reproducible
//! bit for bit.
//!
//! ## Modules
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`numerics`] | adaptive Gauss-Legendre quadrature, Richardson differentiation, seeded sampling |
//! | [`distributions`] | scalar laws (gaussian, exponential, gamma, student-t, truncated gaussian) with pdf/cdf/quantile/sampler/MGF metadata |
//! | [`channel`] | the additive noise channel: kernels, marginals, posteriors, scores, kernel PDE residual |
//! | [`infomeasures`] | entropy, entropy power, Fisher information functionals, MMSE |
//! | [`identities`] | one verifier per identity, producing [`identities::IdentityReport`]s |
//! | [`bounds`] | BCRLB, entropy-power bound, ordering checks, concavity checks, SNR sweep |
//! | [`cli`] | config parsing and the `verify` / `bounds` / `figure1` commands |
//!
//! ## Example
//!
//! ```
//! use infolab::channel::AdditiveNoiseChannel;
//! use infolab::distributions::Distribution;
//! use infolab::identities::verify_de_bruijn;
//!
//! let ch = AdditiveNoiseChannel::new(
//!     Distribution::gaussian(0.0, 1.0).unwrap(),
//!     Distribution::gaussian(0.0, 1.0).unwrap(),
//!     1.0,
//! )
//! .unwrap();
//! let report = verify_de_bruijn(&ch).unwrap();
//! assert!(report.pass);
//! assert!((report.lhs - 0.25).abs() < 1e-5);
//! ```

pub mod bounds;
pub mod channel;
pub mod cli;
pub mod distributions;
pub mod identities;
pub mod infomeasures;
pub mod numerics;

use thiserror::Error;

/// Errors shared by every module.
///
/// Each variant carries a human-readable detail string naming the operation
/// and the offending quantity; variants map one-to-one onto the failure modes
/// of the numerical contracts (no catch-all).
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An adaptive routine exhausted its subdivision or iteration budget
    /// before reaching the requested tolerance.
    #[error("failed to converge: {0}")]
    NonConvergence(String),

    /// An integrand or derivative stencil produced NaN or an infinity at a
    /// point where a finite value is required.
    #[error("non-finite value: {0}")]
    NonFinite(String),

    /// An evaluation point (or a difference stencil around it) left the valid
    /// domain, e.g. a noise scale stepped to `a <= 0` or a kernel evaluated on
    /// its support boundary.
    #[error("domain violation: {0}")]
    DomainViolation(String),

    /// The requested operation is not available for this configuration
    /// (e.g. a sampler-less law, or a noise/prior pairing outside the
    /// supported family).
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A constructor argument violated its constraint (`var <= 0`,
    /// `alpha < 2`, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A moment (mean, variance, Fisher information) queried for a law that
    /// does not possess it.
    #[error("undefined moment: {0}")]
    UndefinedMoment(String),

    /// A marginal density fell below the degeneracy floor, so posterior
    /// ratios at this point would amplify quadrature noise.
    #[error("degenerate density: {0}")]
    DegenerateDensity(String),

    /// A verifier or bound was invoked outside its stated preconditions
    /// (wrong noise family, Gaussianity required, ...).
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    /// A channel failed the checkable admissibility conditions of the
    /// requested identity (MGF missing, unbounded pdf, tail decay, ...).
    #[error("assumption violated: {0}")]
    AssumptionViolated(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
