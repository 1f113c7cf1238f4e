//! The additive noise channel `Y = X + sqrt(a)·W`.
//!
//! An [`AdditiveNoiseChannel`] owns a prior law for `X`, a noise law for `W`,
//! and the noise scale `a > 0`, and computes every conditional quantity the
//! identities need: the conditional kernel, the output marginal and its first
//! two `y`-derivatives, posterior moments, the location score and its
//! derivative, the noise-scale score, and the kernel PDE residual.
//!
//! Derivatives of the marginal are routed per noise family. Smooth kernels
//! (gaussian, student-t) differentiate under the integral sign. The
//! exponential kernel's jump at its support edge contributes the prior density
//! itself when integrated, giving the exact forms
//!
//! ```text
//! d/dy f_Y = (f_X - f_Y) / sqrt(a)                 (exponential noise)
//! d/dy f_Y = (f_{Y,alpha-1} - f_Y) / sqrt(a)       (gamma noise)
//! ```
//!
//! where `f_{Y,alpha-1}` is the marginal of the companion channel with the
//! gamma shape lowered by one. Naive numerical differentiation would miss the
//! jump term entirely, so these routes are load-bearing, not an optimization.

use crate::distributions::{Distribution, Law};
use crate::numerics::{
    derivative, derivative_lower_bounded, geometric_ladder, integrate_split, DiffConfig,
    DiffOrder, Interval, QuadratureConfig,
};
use crate::{Error, Result};

/// Raw vs. around-`y` centering for posterior moments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Centering {
    /// `E[X^k | Y = y]`
    Raw,
    /// `E[(y - X)^k | Y = y]`
    AroundY,
}

/// The channel `Y = X + sqrt(a)·W` with independent prior and noise.
///
/// Immutable after construction; all operations are pure. Truncated prior and
/// noise ranges (exact finite support edges, tail-mass quantiles otherwise)
/// are cached at construction so per-point operations stay allocation-light.
#[derive(Debug, Clone)]
pub struct AdditiveNoiseChannel {
    prior: Distribution,
    noise: Distribution,
    a: f64,
    quad: QuadratureConfig,
    prior_range: Interval,
    noise_range: Interval,
    prior_core: Interval,
    noise_core: Interval,
}

fn truncated_range(dist: &Distribution, tail_mass: f64) -> Result<Interval> {
    let sup = dist.support();
    let lo = if sup.lo.is_finite() {
        sup.lo
    } else {
        dist.quantile(tail_mass)?
    };
    let hi = if sup.hi.is_finite() {
        sup.hi
    } else {
        dist.quantile(1.0 - tail_mass)?
    };
    Interval::new(lo, hi)
}

// Tail mass marking off the central 90% of a law; quadrature ladders spread
// from this core toward the truncated range edges.
const CORE_TAIL: f64 = 0.05;

fn quantile_core(dist: &Distribution) -> Result<Interval> {
    Interval::new(dist.quantile(CORE_TAIL)?, dist.quantile(1.0 - CORE_TAIL)?)
}

/// Finite support edges of a law (at most two).
fn finite_edges(dist: &Distribution) -> Vec<f64> {
    let sup = dist.support();
    [sup.lo, sup.hi].into_iter().filter(|e| e.is_finite()).collect()
}

impl AdditiveNoiseChannel {
    /// Builds a channel with the default quadrature policy.
    pub fn new(prior: Distribution, noise: Distribution, a: f64) -> Result<Self> {
        Self::with_config(prior, noise, a, QuadratureConfig::default())
    }

    /// Builds a channel with an explicit quadrature policy.
    ///
    /// One-sided noise families (exponential, gamma) require a nonnegative
    /// prior support; the general-prior case for those kernels is not
    /// supported.
    pub fn with_config(
        prior: Distribution,
        noise: Distribution,
        a: f64,
        quad: QuadratureConfig,
    ) -> Result<Self> {
        if !a.is_finite() || a <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "noise scale a must be positive, got {a}"
            )));
        }
        quad.validate()?;
        let one_sided_noise = matches!(noise.law(), Law::ExponentialUnit | Law::Gamma { .. });
        if one_sided_noise && prior.support().lo < 0.0 {
            return Err(Error::Unsupported(format!(
                "{} noise requires a prior with nonnegative support, got {}",
                noise.describe(),
                prior.describe()
            )));
        }
        let prior_range = truncated_range(&prior, quad.tail_mass)?;
        let noise_range = truncated_range(&noise, quad.tail_mass)?;
        let prior_core = quantile_core(&prior)?;
        let noise_core = quantile_core(&noise)?;
        Ok(Self {
            prior,
            noise,
            a,
            quad,
            prior_range,
            noise_range,
            prior_core,
            noise_core,
        })
    }

    /// The same channel at a different noise scale.
    pub fn with_a(&self, a: f64) -> Result<Self> {
        if !a.is_finite() || a <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "noise scale a must be positive, got {a}"
            )));
        }
        let mut ch = self.clone();
        ch.a = a;
        Ok(ch)
    }

    pub fn prior(&self) -> &Distribution {
        &self.prior
    }

    pub fn noise(&self) -> &Distribution {
        &self.noise
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn quad(&self) -> &QuadratureConfig {
        &self.quad
    }

    /// `prior=..., noise=..., a=...` label for reports.
    pub fn describe(&self) -> String {
        format!(
            "prior={}, noise={}, a={}",
            self.prior.describe(),
            self.noise.describe(),
            self.a
        )
    }

    /// Marginal density floor below which posterior ratios are refused.
    pub fn density_floor(&self) -> f64 {
        1e3 * self.quad.abs_tol
    }

    /// Effective output support: the Minkowski sum of the truncated prior and
    /// scaled-noise ranges. All `y`-integrals run over this interval.
    pub fn effective_support(&self) -> Interval {
        let r = self.a.sqrt();
        Interval {
            lo: self.prior_range.lo + r * self.noise_range.lo,
            hi: self.prior_range.hi + r * self.noise_range.hi,
        }
    }

    /// Interior points where the output density can lose smoothness: sums of
    /// a finite prior edge and a finite scaled noise edge. Empty when either
    /// law is smooth on the whole line.
    pub fn marginal_cuts(&self) -> Vec<f64> {
        let prior_edges = finite_edges(&self.prior);
        let noise_edges = finite_edges(&self.noise);
        if prior_edges.is_empty() || noise_edges.is_empty() {
            return Vec::new();
        }
        let r = self.a.sqrt();
        let mut cuts = Vec::with_capacity(prior_edges.len() * noise_edges.len());
        for &pe in &prior_edges {
            for &ne in &noise_edges {
                cuts.push(pe + r * ne);
            }
        }
        cuts
    }

    /// Quantile core of the output: Minkowski sum of the prior and
    /// scaled-noise cores.
    pub fn output_core(&self) -> Interval {
        let r = self.a.sqrt();
        Interval {
            lo: self.prior_core.lo + r * self.noise_core.lo,
            hi: self.prior_core.hi + r * self.noise_core.hi,
        }
    }

    /// Panel seeds for `y`-integrals against the output density: the kink
    /// cuts plus a geometric ladder spreading from the output core, so
    /// heavy-tailed supports cannot hide the mass core between quadrature
    /// nodes (see [`geometric_ladder`]).
    pub fn quadrature_cuts(&self) -> Vec<f64> {
        let mut cuts = self.marginal_cuts();
        cuts.extend(geometric_ladder(self.output_core(), self.effective_support()));
        cuts
    }

    /// Conditional kernel `f_{Y|X}(y | x) = f_W((y - x)/sqrt(a)) / sqrt(a)`.
    pub fn conditional_pdf(&self, y: f64, x: f64) -> f64 {
        let r = self.a.sqrt();
        self.noise.pdf((y - x) / r) / r
    }

    /// `x`-integration window for a fixed `y`: truncated prior range
    /// intersected with the set where the kernel is positive. `None` when the
    /// overlap is empty (the marginal vanishes there).
    fn x_domain(&self, y: f64) -> Option<Interval> {
        let r = self.a.sqrt();
        let kernel = Interval {
            lo: y - r * self.noise_range.hi,
            hi: y - r * self.noise_range.lo,
        };
        self.prior_range.intersect(&kernel)
    }

    // Integrates g(x) * f_X(x) * f_{Y|X}(y|x) over the x-window of y, with
    // panel boundaries pinned to the finite prior and mapped noise edges.
    // Panel seeds for `x`-integrals at fixed `y`: kink cuts plus ladders
    // around the two places the integrand can concentrate, the prior core
    // and the kernel core. Either bump can be narrow relative to the window
    // when the other factor is heavy-tailed.
    fn x_cuts(&self, y: f64, domain: Interval) -> Vec<f64> {
        let r = self.a.sqrt();
        let mut cuts = finite_edges(&self.prior);
        cuts.extend(finite_edges(&self.noise).into_iter().map(|e| y - r * e));
        cuts.extend(geometric_ladder(self.prior_core, domain));
        let kernel_core = Interval {
            lo: y - r * self.noise_core.hi,
            hi: y - r * self.noise_core.lo,
        };
        cuts.extend(geometric_ladder(kernel_core, domain));
        cuts
    }

    fn posterior_weighted<G: Fn(f64) -> f64>(&self, y: f64, g: G) -> Result<f64> {
        let Some(domain) = self.x_domain(y) else {
            return Ok(0.0);
        };
        integrate_split(
            |x| Ok(g(x) * self.prior.pdf(x) * self.conditional_pdf(y, x)),
            domain,
            &self.x_cuts(y, domain),
            &self.quad,
        )
    }

    /// Output marginal `f_Y(y) = E_X[f_{Y|X}(y|X)]` by quadrature over the
    /// prior.
    pub fn marginal_pdf(&self, y: f64) -> Result<f64> {
        self.posterior_weighted(y, |_| 1.0)
    }

    /// First `y`-derivative of the output marginal, routed per noise family
    /// (see the module docs for the jump-term forms).
    pub fn marginal_pdf_dy(&self, y: f64) -> Result<f64> {
        let r = self.a.sqrt();
        match *self.noise.law() {
            Law::ExponentialUnit => {
                Ok((self.prior.pdf(y) - self.marginal_pdf(y)?) / r)
            }
            Law::Gamma { alpha, beta } => {
                let companion = self.companion_gamma(alpha - 1.0, beta)?;
                Ok((companion.marginal_pdf(y)? - self.marginal_pdf(y)?) / r)
            }
            Law::Gaussian { .. } | Law::StudentT { .. } => {
                // d/dy lands on the kernel: f_W'((y-x)/sqrt(a)) / a.
                let Some(domain) = self.x_domain(y) else {
                    return Ok(0.0);
                };
                integrate_split(
                    |x| Ok(self.prior.pdf(x) * self.noise.pdf_deriv((y - x) / r) / self.a),
                    domain,
                    &self.x_cuts(y, domain),
                    &self.quad,
                )
            }
            Law::TruncatedGaussian { .. } => self.marginal_dy_prior_side(y, DiffOrder::First),
        }
    }

    /// Second `y`-derivative of the output marginal.
    ///
    /// For one-sided kernels this differentiates the jump-term form once more,
    /// which lands one derivative on the prior density; priors whose density
    /// jumps at a finite support edge would contribute point masses that
    /// quadrature cannot see, so those combinations are refused.
    pub fn marginal_pdf_d2y(&self, y: f64) -> Result<f64> {
        let r = self.a.sqrt();
        match *self.noise.law() {
            Law::ExponentialUnit => {
                self.require_continuous_prior_density("second y-derivative of the marginal")?;
                let fy = self.marginal_pdf(y)?;
                Ok(self.prior.pdf_deriv(y) / r - (self.prior.pdf(y) - fy) / self.a)
            }
            Law::Gamma { alpha, beta } => {
                if alpha >= 3.0 {
                    let c1 = self.companion_gamma(alpha - 1.0, beta)?;
                    let c2 = self.companion_gamma(alpha - 2.0, beta)?;
                    Ok((c2.marginal_pdf(y)? - 2.0 * c1.marginal_pdf(y)? + self.marginal_pdf(y)?)
                        / self.a)
                } else {
                    // alpha in [2, 3): the shape-lowered companion is the
                    // exponential kernel, whose jump integrates to the prior.
                    self.require_continuous_prior_density(
                        "second y-derivative of the marginal",
                    )?;
                    let c1 = self.companion_gamma(alpha - 1.0, beta)?;
                    Ok((self.prior.pdf(y) - 2.0 * c1.marginal_pdf(y)? + self.marginal_pdf(y)?)
                        / self.a)
                }
            }
            Law::Gaussian { .. } | Law::StudentT { .. } => {
                let Some(domain) = self.x_domain(y) else {
                    return Ok(0.0);
                };
                integrate_split(
                    |x| {
                        Ok(self.prior.pdf(x) * self.noise.pdf_deriv2((y - x) / r)
                            / (self.a * r))
                    },
                    domain,
                    &self.x_cuts(y, domain),
                    &self.quad,
                )
            }
            Law::TruncatedGaussian { .. } => self.marginal_dy_prior_side(y, DiffOrder::Second),
        }
    }

    // Fallback derivative route for kernels with bounded support: move the
    // derivative onto a smooth prior.
    fn marginal_dy_prior_side(&self, y: f64, order: DiffOrder) -> Result<f64> {
        let smooth_prior = matches!(self.prior.law(), Law::Gaussian { .. } | Law::StudentT { .. });
        if !smooth_prior {
            return Err(Error::Unsupported(format!(
                "marginal derivatives need a smooth prior or a routed kernel; got {}",
                self.describe()
            )));
        }
        let Some(domain) = self.x_domain(y) else {
            return Ok(0.0);
        };
        let prior = &self.prior;
        let deriv = move |x: f64| match order {
            DiffOrder::First => prior.pdf_deriv(x),
            DiffOrder::Second => prior.pdf_deriv2(x),
        };
        integrate_split(
            |x| Ok(deriv(x) * self.conditional_pdf(y, x)),
            domain,
            &self.x_cuts(y, domain),
            &self.quad,
        )
    }

    fn require_continuous_prior_density(&self, what: &str) -> Result<()> {
        let jumps = match *self.prior.law() {
            Law::ExponentialUnit => true,
            Law::TruncatedGaussian { .. } => true,
            Law::Gaussian { .. } | Law::StudentT { .. } | Law::Gamma { .. } => false,
        };
        if jumps {
            Err(Error::Unsupported(format!(
                "{what} under a one-sided kernel requires a prior density that is \
                 continuous everywhere; {} jumps at a support edge",
                self.prior.describe()
            )))
        } else {
            Ok(())
        }
    }

    // Companion channel with the gamma shape shifted; shape 1 degrades to the
    // exponential kernel. Only unit-rate companions arise in the identities.
    fn companion_gamma(&self, shape: f64, beta: f64) -> Result<AdditiveNoiseChannel> {
        let noise = if (shape - 1.0).abs() < 1e-12 {
            if (beta - 1.0).abs() > 1e-12 {
                return Err(Error::Unsupported(
                    "shape-1 companion kernels require unit rate".into(),
                ));
            }
            Distribution::exponential_unit()
        } else if shape >= 2.0 {
            Distribution::gamma_dist(shape, beta)?
        } else {
            return Err(Error::InvalidParameter(format!(
                "companion gamma shape must be 1 or >= 2, got {shape}"
            )));
        };
        AdditiveNoiseChannel::with_config(self.prior.clone(), noise, self.a, self.quad)
    }

    /// Posterior mean `E[X | Y = y]`.
    pub fn posterior_mean(&self, y: f64) -> Result<f64> {
        let fy = self.marginal_pdf(y)?;
        if fy < self.density_floor() {
            return Err(Error::DegenerateDensity(format!(
                "marginal density {fy:.3e} at y = {y} is below the floor {:.3e}",
                self.density_floor()
            )));
        }
        Ok(self.posterior_weighted(y, |x| x)? / fy)
    }

    /// Posterior moment of order `k` (1 or 2), raw or centered around `y`.
    pub fn posterior_moment(&self, y: f64, k: u32, center: Centering) -> Result<f64> {
        if !(k == 1 || k == 2) {
            return Err(Error::InvalidParameter(format!(
                "posterior moment order must be 1 or 2, got {k}"
            )));
        }
        let fy = self.marginal_pdf(y)?;
        if fy < self.density_floor() {
            return Err(Error::DegenerateDensity(format!(
                "marginal density {fy:.3e} at y = {y} is below the floor {:.3e}",
                self.density_floor()
            )));
        }
        let num = match (k, center) {
            (1, Centering::Raw) => self.posterior_weighted(y, |x| x)?,
            (2, Centering::Raw) => self.posterior_weighted(y, |x| x * x)?,
            (1, Centering::AroundY) => self.posterior_weighted(y, |x| y - x)?,
            (2, Centering::AroundY) => self.posterior_weighted(y, |x| (y - x) * (y - x))?,
            _ => unreachable!(),
        };
        Ok(num / fy)
    }

    /// Posterior variance `Var(X | Y = y)`, computed around the posterior mean
    /// for cancellation safety.
    pub fn posterior_variance(&self, y: f64) -> Result<f64> {
        let fy = self.marginal_pdf(y)?;
        if fy < self.density_floor() {
            return Err(Error::DegenerateDensity(format!(
                "marginal density {fy:.3e} at y = {y} is below the floor {:.3e}",
                self.density_floor()
            )));
        }
        let m = self.posterior_weighted(y, |x| x)? / fy;
        Ok(self.posterior_weighted(y, |x| (x - m) * (x - m))? / fy)
    }

    /// Location score `S_Y(y) = d/dy log f_Y(y)`.
    pub fn score_location(&self, y: f64) -> Result<f64> {
        let fy = self.marginal_pdf(y)?;
        if fy < self.density_floor() {
            return Err(Error::DegenerateDensity(format!(
                "marginal density {fy:.3e} at y = {y} is below the floor {:.3e}",
                self.density_floor()
            )));
        }
        Ok(self.marginal_pdf_dy(y)? / fy)
    }

    /// Derivative of the location score,
    /// `S_Y'(y) = f_Y''/f_Y - (f_Y'/f_Y)^2`.
    pub fn score_location_deriv(&self, y: f64) -> Result<f64> {
        let fy = self.marginal_pdf(y)?;
        if fy < self.density_floor() {
            return Err(Error::DegenerateDensity(format!(
                "marginal density {fy:.3e} at y = {y} is below the floor {:.3e}",
                self.density_floor()
            )));
        }
        let s = self.marginal_pdf_dy(y)? / fy;
        Ok(self.marginal_pdf_d2y(y)? / fy - s * s)
    }

    /// Noise-scale score `S_{Y_a}(y) = d/da log f_Y(y; a)` by Richardson
    /// differentiation of the log-marginal in `a` at fixed `y`.
    ///
    /// The step is wider than the generic differentiation default: each
    /// log-marginal evaluation carries quadrature jitter, and the step must
    /// dominate it.
    pub fn score_parameter(&self, y: f64) -> Result<f64> {
        let fy = self.marginal_pdf(y)?;
        if fy < self.density_floor() {
            return Err(Error::DegenerateDensity(format!(
                "marginal density {fy:.3e} at y = {y} is below the floor {:.3e}",
                self.density_floor()
            )));
        }
        let cfg = DiffConfig {
            base_step: 1e-3,
            richardson_levels: 3,
        };
        derivative_lower_bounded(
            |av| {
                let fya = self.with_a(av)?.marginal_pdf(y)?;
                if fya <= 0.0 {
                    return Err(Error::DegenerateDensity(format!(
                        "marginal vanished at y = {y} while stepping a to {av}"
                    )));
                }
                Ok(fya.ln())
            },
            self.a,
            0.0,
            DiffOrder::First,
            &cfg,
        )
    }

    /// Residual of the kernel evolution equation
    /// `d/da f_{Y|X} + (1/2a) d/dy[(y - x) f_{Y|X}]`, both sides by numerical
    /// differentiation. Small wherever the kernel is smooth.
    ///
    /// Points at or near the kernel's support boundary (within the stencil
    /// width) are refused: the kernel is not differentiable there.
    pub fn kernel_pde_residual(&self, y: f64, x: f64) -> Result<f64> {
        let r = self.a.sqrt();
        let w = (y - x) / r;
        let cfg = DiffConfig::default();
        let h_y = cfg.base_step * y.abs().max(1.0);
        let h_a = cfg.base_step * self.a.abs().max(1.0);
        // Conservative interior margin: the y-stencil moves w by h_y/sqrt(a),
        // the a-stencil by about |w| h_a / (2a).
        let margin = 4.0 * h_y / r + 2.0 * w.abs() * h_a / self.a + 1e-12;
        let sup = self.noise.support();
        for edge in [sup.lo, sup.hi] {
            if edge.is_finite() && (w - edge).abs() <= margin {
                return Err(Error::DomainViolation(format!(
                    "kernel point w = {w:.6} sits within the stencil margin {margin:.2e} \
                     of the support edge {edge}"
                )));
            }
        }
        if self.noise.pdf(w) <= 0.0 {
            return Err(Error::DomainViolation(format!(
                "kernel point w = {w:.6} lies outside the noise support"
            )));
        }
        let noise = &self.noise;
        let lhs = derivative_lower_bounded(
            |av| Ok(noise.pdf((y - x) / av.sqrt()) / av.sqrt()),
            self.a,
            0.0,
            DiffOrder::First,
            &cfg,
        )?;
        let flux_deriv = derivative(
            |yy| Ok((yy - x) * noise.pdf((yy - x) / r) / r),
            y,
            DiffOrder::First,
            &cfg,
        )?;
        Ok(lhs + flux_deriv / (2.0 * self.a))
    }
}

/// A gamma-noise channel with the shape parameter shifted, sharing the prior
/// and noise scale of its base channel. Outer expectations in the gamma-noise
/// identities run over this channel's marginal.
#[derive(Debug, Clone)]
pub struct CompanionChannel {
    shift: i32,
    channel: AdditiveNoiseChannel,
}

impl CompanionChannel {
    /// Builds the companion with shape `alpha + shift`; requires gamma noise
    /// on the base channel and a shifted shape of at least 1.
    pub fn new(base: &AdditiveNoiseChannel, shift: i32) -> Result<Self> {
        let Law::Gamma { alpha, beta } = *base.noise().law() else {
            return Err(Error::PreconditionViolated(format!(
                "companion channels require gamma noise, got {}",
                base.noise().describe()
            )));
        };
        let shape = alpha + shift as f64;
        if shape < 1.0 {
            return Err(Error::InvalidParameter(format!(
                "companion shape {alpha} + {shift} falls below 1"
            )));
        }
        Ok(Self {
            shift,
            channel: base.companion_gamma(shape, beta)?,
        })
    }

    /// The applied shape shift.
    pub fn shift(&self) -> i32 {
        self.shift
    }

    /// The shifted channel itself.
    pub fn channel(&self) -> &AdditiveNoiseChannel {
        &self.channel
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gg(a: f64) -> AdditiveNoiseChannel {
        AdditiveNoiseChannel::new(
            Distribution::gaussian(0.0, 1.0).unwrap(),
            Distribution::gaussian(0.0, 1.0).unwrap(),
            a,
        )
        .unwrap()
    }

    #[test]
    fn kernel_peaks_at_x() {
        let ch = gg(1.0);
        assert!((ch.conditional_pdf(0.7, 0.7) - 0.3989422804014327).abs() < 1e-12);
    }

    #[test]
    fn one_sided_kernel_vanishes_left_of_x() {
        let ch = AdditiveNoiseChannel::new(
            Distribution::gamma_dist(2.0, 1.0).unwrap(),
            Distribution::exponential_unit(),
            1.0,
        )
        .unwrap();
        assert_eq!(ch.conditional_pdf(1.0, 2.0), 0.0);
    }

    #[test]
    fn negative_prior_with_one_sided_noise_is_unsupported() {
        let err = AdditiveNoiseChannel::new(
            Distribution::gaussian(0.0, 1.0).unwrap(),
            Distribution::exponential_unit(),
            1.0,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Unsupported(_)));
    }

    #[test]
    fn gaussian_marginal_matches_convolution() {
        let ch = gg(1.0);
        // X + W with unit variances: N(0, 2).
        let expect = (-0.0f64).exp() / (2.0 * std::f64::consts::PI * 2.0).sqrt();
        assert!((ch.marginal_pdf(0.0).unwrap() - expect).abs() < 1e-10);
    }

    #[test]
    fn posterior_mean_is_linear_for_gaussians() {
        let ch = gg(0.5);
        let m = ch.posterior_mean(1.2).unwrap();
        assert!((m - 1.2 / 1.5).abs() < 1e-9);
    }
}
