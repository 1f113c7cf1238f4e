//! Scalar probability laws used as priors and noises.
//!
//! Each [`Distribution`] bundles a density with the structural metadata the
//! channel identities depend on: support, moments, MGF existence, and the
//! smooth-branch derivatives of the pdf. Quantiles are computed by bisection
//! on the cdf with a Newton polish, one shared routine for every law; cdfs use
//! closed forms (erf, regularized incomplete gamma/beta). Samplers draw from
//! the caller's ChaCha12 stream, so sampling is deterministic per seed.

use rand_chacha::ChaCha12Rng;
use rand_distr::Distribution as Draw;
use statrs::function::beta::beta_reg;
use statrs::function::erf::erfc;
use statrs::function::gamma::{gamma_lr, ln_gamma};

use crate::numerics::{Interval, Sampleable};
use crate::{Error, Result};

const SQRT_TAU: f64 = 2.5066282746310002; // sqrt(2*pi)

fn std_normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / SQRT_TAU
}

fn std_normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / std::f64::consts::SQRT_2)
}

/// Parametric family of a [`Distribution`], with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Law {
    Gaussian { mu: f64, var: f64 },
    ExponentialUnit,
    Gamma { alpha: f64, beta: f64 },
    StudentT { nu: f64 },
    TruncatedGaussian { mu: f64, var: f64, lo: f64, hi: f64 },
}

/// A scalar law: pdf, log-pdf, cdf, quantile, sampler, support, moments, and
/// optional MGF. Immutable after construction; freely shareable.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    law: Law,
    // Cached log normalization: ln c for student-t, alpha*ln(beta) - ln Gamma(alpha)
    // for gamma, ln z for the truncated gaussian window. Zero where unused.
    ln_norm: f64,
}

impl Distribution {
    /// Normal law with mean `mu` and variance `var` (`var > 0`).
    pub fn gaussian(mu: f64, var: f64) -> Result<Self> {
        if !var.is_finite() || !mu.is_finite() || var <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "gaussian requires finite mu and var > 0, got mu = {mu}, var = {var}"
            )));
        }
        Ok(Self {
            law: Law::Gaussian { mu, var },
            ln_norm: 0.0,
        })
    }

    /// Exponential law with unit rate: density `exp(-w)` on `[0, inf)`.
    pub fn exponential_unit() -> Self {
        Self {
            law: Law::ExponentialUnit,
            ln_norm: 0.0,
        }
    }

    /// Gamma law with shape `alpha >= 2` and rate `beta > 0`.
    ///
    /// The shape floor keeps the density continuously differentiable at the
    /// origin, which every identity using this family relies on; callers
    /// needing second-derivative identities must further restrict to
    /// `alpha >= 3` (see `check_assumptions`).
    pub fn gamma_dist(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha < 2.0 {
            return Err(Error::InvalidParameter(format!(
                "gamma requires alpha >= 2, got {alpha}"
            )));
        }
        if !beta.is_finite() || beta <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "gamma requires beta > 0, got {beta}"
            )));
        }
        Ok(Self {
            law: Law::Gamma { alpha, beta },
            ln_norm: alpha * beta.ln() - ln_gamma(alpha),
        })
    }

    /// Standard Student-t law with `nu > 0` degrees of freedom. No MGF.
    pub fn student_t(nu: f64) -> Result<Self> {
        if !nu.is_finite() || nu <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "student_t requires nu > 0, got {nu}"
            )));
        }
        let ln_norm = ln_gamma(0.5 * (nu + 1.0))
            - ln_gamma(0.5 * nu)
            - 0.5 * (nu * std::f64::consts::PI).ln();
        Ok(Self {
            law: Law::StudentT { nu },
            ln_norm,
        })
    }

    /// Normal law restricted and renormalized to `[lo, hi]`.
    ///
    /// The window must capture non-negligible mass (>= 1e-10) so the
    /// renormalization stays well-conditioned.
    pub fn truncated_gaussian(mu: f64, var: f64, lo: f64, hi: f64) -> Result<Self> {
        if !var.is_finite() || !mu.is_finite() || var <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "truncated gaussian requires finite mu and var > 0, got mu = {mu}, var = {var}"
            )));
        }
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "truncated gaussian requires finite lo < hi, got [{lo}, {hi}]"
            )));
        }
        let sd = var.sqrt();
        let z = std_normal_cdf((hi - mu) / sd) - std_normal_cdf((lo - mu) / sd);
        if z < 1e-10 {
            return Err(Error::InvalidParameter(format!(
                "truncation window [{lo}, {hi}] captures negligible mass ({z:.3e})"
            )));
        }
        Ok(Self {
            law: Law::TruncatedGaussian { mu, var, lo, hi },
            ln_norm: z.ln(),
        })
    }

    /// The parametric family and parameters.
    pub fn law(&self) -> &Law {
        &self.law
    }

    /// Density at `x` (zero outside the support).
    pub fn pdf(&self, x: f64) -> f64 {
        match self.law {
            Law::Gaussian { mu, var } => {
                let sd = var.sqrt();
                std_normal_pdf((x - mu) / sd) / sd
            }
            Law::ExponentialUnit => {
                if x < 0.0 {
                    0.0
                } else {
                    (-x).exp()
                }
            }
            Law::Gamma { alpha, beta } => {
                if x <= 0.0 {
                    0.0
                } else {
                    (self.ln_norm + (alpha - 1.0) * x.ln() - beta * x).exp()
                }
            }
            Law::StudentT { nu } => {
                (self.ln_norm - 0.5 * (nu + 1.0) * (x * x / nu).ln_1p()).exp()
            }
            Law::TruncatedGaussian { mu, var, lo, hi } => {
                if x < lo || x > hi {
                    0.0
                } else {
                    let sd = var.sqrt();
                    std_normal_pdf((x - mu) / sd) / sd / self.ln_norm.exp()
                }
            }
        }
    }

    /// Natural log of the density (`-inf` outside the support).
    pub fn log_pdf(&self, x: f64) -> f64 {
        match self.law {
            Law::Gaussian { mu, var } => {
                -0.5 * (x - mu) * (x - mu) / var - 0.5 * (var * SQRT_TAU * SQRT_TAU).ln()
            }
            Law::ExponentialUnit => {
                if x < 0.0 {
                    f64::NEG_INFINITY
                } else {
                    -x
                }
            }
            Law::Gamma { alpha, beta } => {
                if x <= 0.0 {
                    f64::NEG_INFINITY
                } else {
                    self.ln_norm + (alpha - 1.0) * x.ln() - beta * x
                }
            }
            Law::StudentT { nu } => self.ln_norm - 0.5 * (nu + 1.0) * (x * x / nu).ln_1p(),
            Law::TruncatedGaussian { mu, var, lo, hi } => {
                if x < lo || x > hi {
                    f64::NEG_INFINITY
                } else {
                    -0.5 * (x - mu) * (x - mu) / var
                        - 0.5 * (var * SQRT_TAU * SQRT_TAU).ln()
                        - self.ln_norm
                }
            }
        }
    }

    /// Derivative of the density along its smooth branch (zero outside the
    /// support; support-edge points take the outside value).
    pub fn pdf_deriv(&self, x: f64) -> f64 {
        match self.law {
            Law::Gaussian { mu, var } => -(x - mu) / var * self.pdf(x),
            Law::ExponentialUnit => {
                if x <= 0.0 {
                    0.0
                } else {
                    -self.pdf(x)
                }
            }
            Law::Gamma { alpha, beta } => {
                if x <= 0.0 {
                    0.0
                } else {
                    ((alpha - 1.0) / x - beta) * self.pdf(x)
                }
            }
            Law::StudentT { nu } => -(nu + 1.0) * x / (nu + x * x) * self.pdf(x),
            Law::TruncatedGaussian { mu, var, lo, hi } => {
                if x < lo || x > hi {
                    0.0
                } else {
                    -(x - mu) / var * self.pdf(x)
                }
            }
        }
    }

    /// Second derivative of the density along its smooth branch.
    pub fn pdf_deriv2(&self, x: f64) -> f64 {
        match self.law {
            Law::Gaussian { mu, var } => {
                let s = (x - mu) / var;
                (s * s - 1.0 / var) * self.pdf(x)
            }
            Law::ExponentialUnit => {
                if x <= 0.0 {
                    0.0
                } else {
                    self.pdf(x)
                }
            }
            Law::Gamma { alpha, beta } => {
                if x <= 0.0 {
                    0.0
                } else {
                    let s = (alpha - 1.0) / x - beta;
                    (s * s - (alpha - 1.0) / (x * x)) * self.pdf(x)
                }
            }
            Law::StudentT { nu } => {
                let s = -(nu + 1.0) * x / (nu + x * x);
                let ds = -(nu + 1.0) * (nu - x * x) / ((nu + x * x) * (nu + x * x));
                (s * s + ds) * self.pdf(x)
            }
            Law::TruncatedGaussian { mu, var, lo, hi } => {
                if x < lo || x > hi {
                    0.0
                } else {
                    let s = (x - mu) / var;
                    (s * s - 1.0 / var) * self.pdf(x)
                }
            }
        }
    }

    /// Cumulative distribution function.
    pub fn cdf(&self, x: f64) -> f64 {
        match self.law {
            Law::Gaussian { mu, var } => std_normal_cdf((x - mu) / var.sqrt()),
            Law::ExponentialUnit => {
                if x < 0.0 {
                    0.0
                } else {
                    -(-x).exp_m1()
                }
            }
            Law::Gamma { alpha, beta } => {
                if x <= 0.0 {
                    0.0
                } else {
                    gamma_lr(alpha, beta * x)
                }
            }
            Law::StudentT { nu } => {
                // Two parametrizations of the same incomplete-beta identity:
                // near the center `nu/(nu + x²)` rounds to 1 and flattens the
                // cdf at the 1e-8 scale, so the complementary argument keeps
                // precision there; the original form keeps it in the tails.
                let x2 = x * x;
                if x2 <= nu {
                    0.5 + 0.5 * x.signum() * beta_reg(0.5, 0.5 * nu, x2 / (nu + x2))
                } else {
                    let tail = 0.5 * beta_reg(0.5 * nu, 0.5, nu / (nu + x2));
                    if x >= 0.0 {
                        1.0 - tail
                    } else {
                        tail
                    }
                }
            }
            Law::TruncatedGaussian { mu, var, lo, hi } => {
                if x <= lo {
                    0.0
                } else if x >= hi {
                    1.0
                } else {
                    let sd = var.sqrt();
                    let mass = std_normal_cdf((x - mu) / sd) - std_normal_cdf((lo - mu) / sd);
                    (mass / self.ln_norm.exp()).clamp(0.0, 1.0)
                }
            }
        }
    }

    /// Quantile at probability `p` in `(0, 1)` by bisection on the cdf with a
    /// Newton polish. Accurate to `|cdf(q) - p| <~ 1e-12`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "quantile probability must lie in (0, 1), got {p}"
            )));
        }
        let sup = self.support();
        // Finite bracket [lo, hi] with cdf(lo) <= p <= cdf(hi).
        let center = self.mean().unwrap_or(0.0);
        let mut lo = if sup.lo.is_finite() { sup.lo } else { center - 1.0 };
        let mut hi = if sup.hi.is_finite() { sup.hi } else { center + 1.0 };
        let mut step = 1.0;
        while self.cdf(lo) > p {
            lo -= step;
            step *= 2.0;
            if !lo.is_finite() {
                return Err(Error::NonConvergence(format!(
                    "quantile bracket expansion diverged for p = {p}"
                )));
            }
        }
        step = 1.0;
        while self.cdf(hi) < p {
            hi += step;
            step *= 2.0;
            if !hi.is_finite() {
                return Err(Error::NonConvergence(format!(
                    "quantile bracket expansion diverged for p = {p}"
                )));
            }
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if hi - lo <= 1e-15 * mid.abs().max(1.0) {
                break;
            }
            if self.cdf(mid) < p {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut q = 0.5 * (lo + hi);
        for _ in 0..4 {
            let d = self.pdf(q);
            if d <= 0.0 {
                break;
            }
            let next = q - (self.cdf(q) - p) / d;
            if next.is_finite() && next > lo - (hi - lo) && next < hi + (hi - lo) {
                q = next;
            }
        }
        Ok(q)
    }

    /// Conceptual support (endpoints may be infinite).
    pub fn support(&self) -> Interval {
        let (lo, hi) = match self.law {
            Law::Gaussian { .. } | Law::StudentT { .. } => (f64::NEG_INFINITY, f64::INFINITY),
            Law::ExponentialUnit | Law::Gamma { .. } => (0.0, f64::INFINITY),
            Law::TruncatedGaussian { lo, hi, .. } => (lo, hi),
        };
        Interval { lo, hi }
    }

    /// Mean, where defined.
    pub fn mean(&self) -> Result<f64> {
        match self.law {
            Law::Gaussian { mu, .. } => Ok(mu),
            Law::ExponentialUnit => Ok(1.0),
            Law::Gamma { alpha, beta } => Ok(alpha / beta),
            Law::StudentT { nu } => {
                if nu > 1.0 {
                    Ok(0.0)
                } else {
                    Err(Error::UndefinedMoment(format!(
                        "student_t mean requires nu > 1, got nu = {nu}"
                    )))
                }
            }
            Law::TruncatedGaussian { mu, var, lo, hi } => {
                let sd = var.sqrt();
                let (al, be) = ((lo - mu) / sd, (hi - mu) / sd);
                let z = self.ln_norm.exp();
                Ok(mu + sd * (std_normal_pdf(al) - std_normal_pdf(be)) / z)
            }
        }
    }

    /// Variance, where defined.
    pub fn variance(&self) -> Result<f64> {
        match self.law {
            Law::Gaussian { var, .. } => Ok(var),
            Law::ExponentialUnit => Ok(1.0),
            Law::Gamma { alpha, beta } => Ok(alpha / (beta * beta)),
            Law::StudentT { nu } => {
                if nu > 2.0 {
                    Ok(nu / (nu - 2.0))
                } else {
                    Err(Error::UndefinedMoment(format!(
                        "student_t variance requires nu > 2, got nu = {nu}"
                    )))
                }
            }
            Law::TruncatedGaussian { mu, var, lo, hi } => {
                let sd = var.sqrt();
                let (al, be) = ((lo - mu) / sd, (hi - mu) / sd);
                let z = self.ln_norm.exp();
                let d = (std_normal_pdf(al) - std_normal_pdf(be)) / z;
                let c = (al * std_normal_pdf(al) - be * std_normal_pdf(be)) / z;
                Ok(var * (1.0 + c - d * d))
            }
        }
    }

    /// Whether the law possesses a moment generating function on an open
    /// interval around the origin. Declared metadata, not discovered
    /// numerically.
    pub fn mgf_exists(&self) -> bool {
        !matches!(self.law, Law::StudentT { .. })
    }

    /// Moment generating function `E[exp(tX)]` where it exists and converges.
    pub fn mgf(&self, t: f64) -> Result<f64> {
        match self.law {
            Law::Gaussian { mu, var } => Ok((mu * t + 0.5 * var * t * t).exp()),
            Law::ExponentialUnit => {
                if t < 1.0 {
                    Ok(1.0 / (1.0 - t))
                } else {
                    Err(Error::DomainViolation(format!(
                        "exponential MGF diverges for t >= 1, got t = {t}"
                    )))
                }
            }
            Law::Gamma { alpha, beta } => {
                if t < beta {
                    Ok((1.0 - t / beta).powf(-alpha))
                } else {
                    Err(Error::DomainViolation(format!(
                        "gamma MGF diverges for t >= beta = {beta}, got t = {t}"
                    )))
                }
            }
            Law::StudentT { .. } => Err(Error::Unsupported(
                "student_t has no moment generating function".into(),
            )),
            Law::TruncatedGaussian { mu, var, lo, hi } => {
                let sd = var.sqrt();
                let (al, be) = ((lo - mu) / sd, (hi - mu) / sd);
                let window =
                    std_normal_cdf(be - sd * t) - std_normal_cdf(al - sd * t);
                Ok((mu * t + 0.5 * var * t * t).exp() * window / self.ln_norm.exp())
            }
        }
    }

    /// One-line description for reports, e.g. `student_t(nu=3)`.
    pub fn describe(&self) -> String {
        match self.law {
            Law::Gaussian { mu, var } => format!("gaussian(mu={mu}, var={var})"),
            Law::ExponentialUnit => "exponential(1)".to_string(),
            Law::Gamma { alpha, beta } => format!("gamma(alpha={alpha}, beta={beta})"),
            Law::StudentT { nu } => format!("student_t(nu={nu})"),
            Law::TruncatedGaussian { mu, var, lo, hi } => {
                format!("truncated_gaussian(mu={mu}, var={var}, lo={lo}, hi={hi})")
            }
        }
    }
}

impl Sampleable for Distribution {
    fn draw(&self, rng: &mut ChaCha12Rng) -> f64 {
        match self.law {
            Law::Gaussian { mu, var } => rand_distr::Normal::new(mu, var.sqrt())
                .expect("validated at construction")
                .sample(rng),
            Law::ExponentialUnit => rand_distr::Exp::new(1.0)
                .expect("unit rate is valid")
                .sample(rng),
            Law::Gamma { alpha, beta } => rand_distr::Gamma::new(alpha, 1.0 / beta)
                .expect("validated at construction")
                .sample(rng),
            Law::StudentT { nu } => rand_distr::StudentT::new(nu)
                .expect("validated at construction")
                .sample(rng),
            Law::TruncatedGaussian { mu, var, lo, hi } => {
                // Rejection from the parent normal; the construction-time mass
                // floor bounds the expected number of proposals.
                let normal = rand_distr::Normal::new(mu, var.sqrt())
                    .expect("validated at construction");
                loop {
                    let x = normal.sample(rng);
                    if (lo..=hi).contains(&x) {
                        return x;
                    }
                }
            }
        }
    }
}

/// Whether the law is used as a prior or as a channel noise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Prior,
    Noise,
}

/// Which class of identity the channel will be used in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityClass {
    FirstDerivative,
    SecondDerivative,
}

/// Outcome of one checkable admissibility condition.
#[derive(Debug, Clone)]
pub struct AssumptionCheck {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

/// Pass/fail report over the checkable admissibility conditions of a law.
///
/// Which conditions are *required* depends on the identity and the partner
/// law; callers consult individual checks by name. Interchange-of-limits
/// conditions that cannot be checked numerically are taken as satisfied when
/// the checkable subset passes.
#[derive(Debug, Clone)]
pub struct AssumptionReport {
    pub checks: Vec<AssumptionCheck>,
}

impl AssumptionReport {
    /// Whether every reported check passed.
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Lookup one check's verdict by name.
    pub fn check(&self, name: &str) -> Option<&AssumptionCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// The first failing check, if any.
    pub fn first_failure(&self) -> Option<&AssumptionCheck> {
        self.checks.iter().find(|c| !c.pass)
    }
}

/// Names of the individual checks in an [`AssumptionReport`].
pub mod assumption {
    pub const FINITE_SECOND_MOMENT: &str = "finite_second_moment";
    pub const MGF_EXISTS: &str = "mgf_exists";
    pub const BOUNDED_PDF: &str = "bounded_pdf";
    pub const TAIL_DECAY: &str = "tail_decay";
    pub const NONNEGATIVE_SUPPORT: &str = "nonnegative_support";
    pub const SHAPE_SUPPORTS_IDENTITY: &str = "shape_supports_identity";
}

/// Evaluates the numerically checkable admissibility conditions of `dist` for
/// the given role and identity class. Reports, never fails.
pub fn check_assumptions(
    dist: &Distribution,
    role: Role,
    identity: IdentityClass,
) -> AssumptionReport {
    let mut checks = Vec::new();

    let var = dist.variance();
    checks.push(AssumptionCheck {
        name: assumption::FINITE_SECOND_MOMENT,
        pass: matches!(var, Ok(v) if v.is_finite()),
        detail: match &var {
            Ok(v) => format!("variance = {v}"),
            Err(e) => e.to_string(),
        },
    });

    checks.push(AssumptionCheck {
        name: assumption::MGF_EXISTS,
        pass: dist.mgf_exists(),
        detail: if dist.mgf_exists() {
            "declared on an open interval around 0".to_string()
        } else {
            "MGF undefined".to_string()
        },
    });

    // Every constructible law here has a bounded density (the gamma shape
    // floor alpha >= 2 excludes the unbounded-at-origin shapes).
    checks.push(AssumptionCheck {
        name: assumption::BOUNDED_PDF,
        pass: true,
        detail: "density bounded on its support".to_string(),
    });

    let tail_mass = crate::numerics::QuadratureConfig::default().tail_mass;
    let sup = dist.support();
    let mut tail_pass = true;
    let mut tail_detail = "support bounded; tails vanish identically".to_string();
    let mut worst: f64 = 0.0;
    for (endpoint_finite, p) in [(sup.lo.is_finite(), tail_mass), (sup.hi.is_finite(), 1.0 - tail_mass)]
    {
        if endpoint_finite {
            continue;
        }
        if let Ok(q) = dist.quantile(p) {
            worst = worst.max(q * q * dist.pdf(q));
        }
    }
    if !sup.lo.is_finite() || !sup.hi.is_finite() {
        tail_pass = worst <= 1e-6;
        tail_detail = format!("max y^2*pdf(y) at truncation edges = {worst:.3e}");
    }
    checks.push(AssumptionCheck {
        name: assumption::TAIL_DECAY,
        pass: tail_pass,
        detail: tail_detail,
    });

    checks.push(AssumptionCheck {
        name: assumption::NONNEGATIVE_SUPPORT,
        pass: sup.lo >= 0.0,
        detail: format!("support starts at {}", sup.lo),
    });

    // Gamma noise needs one extra shape unit per entropy-derivative order.
    let shape_check = match (role, &dist.law) {
        (Role::Noise, Law::Gamma { alpha, .. }) => {
            let needed = match identity {
                IdentityClass::FirstDerivative => 2.0,
                IdentityClass::SecondDerivative => 3.0,
            };
            Some((
                *alpha >= needed,
                format!("gamma shape {alpha} vs required {needed}"),
            ))
        }
        _ => None,
    };
    if let Some((pass, detail)) = shape_check {
        checks.push(AssumptionCheck {
            name: assumption::SHAPE_SUPPORTS_IDENTITY,
            pass,
            detail,
        });
    }

    AssumptionReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_mode_density() {
        let g = Distribution::gaussian(0.0, 1.0).unwrap();
        assert!((g.pdf(0.0) - 0.3989422804014327).abs() < 1e-15);
    }

    #[test]
    fn exponential_support_edge() {
        let e = Distribution::exponential_unit();
        assert_eq!(e.pdf(-1.0), 0.0);
        assert!((e.pdf(0.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn student_t_symmetry() {
        let t = Distribution::student_t(3.0).unwrap();
        for x in [0.3, 1.7, 4.2] {
            assert!((t.pdf(x) - t.pdf(-x)).abs() < 1e-15);
        }
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(Distribution::gaussian(0.0, 0.0).is_err());
        assert!(Distribution::gamma_dist(1.5, 1.0).is_err());
        assert!(Distribution::gamma_dist(2.0, 0.0).is_err());
        assert!(Distribution::student_t(0.0).is_err());
    }
}
