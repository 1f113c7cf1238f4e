//! One verifier per information-estimation identity.
//!
//! Each verifier computes the two sides of its identity along routes that
//! share no intermediate results beyond the output marginal itself, then
//! packs them into an [`IdentityReport`] with absolute and relative
//! residuals. A verifier invoked outside its preconditions returns an error
//! (`PreconditionViolated` for the wrong noise family, `AssumptionViolated`
//! for an admissibility failure) instead of a garbage residual; the CLI maps
//! those onto skipped rows.
//!
//! The catalog:
//!
//! | name                           | statement                                              |
//! |--------------------------------|--------------------------------------------------------|
//! | `de_bruijn`                    | d/da h(Y) = (σ²_W/2) J(Y), Gaussian noise              |
//! | `stein_classic`                | E[r(Y)(Y−μ)] = σ² E[r'(Y)], Gaussian Y                 |
//! | `stein_generalized`            | E[S²] = −E[S'], the two Fisher information forms       |
//! | `heat_equation`                | d/da E[g(Y)] = (σ²_W/2) E[g''(Y)], Gaussian Y          |
//! | `entropy_slope`                | d/da h(Y) = (1/2a)(1 − E[d/dY E[X|Y]])                 |
//! | `entropy_slope_exponential`    | slope via posterior means on the diagonal y = x        |
//! | `entropy_slope_gamma`          | slope via the shape-lowered companion marginal         |
//! | `entropy_curvature`            | d²/da² h(Y) from J_a and posterior moments             |
//! | `entropy_curvature_gaussian`   | d²/da² h(Y) = −(σ⁴_W/2) E[(S')²]                       |
//! | `entropy_curvature_exponential`| curvature via diagonal posterior moments               |
//! | `entropy_curvature_gamma`      | curvature via two companion channels                   |
//! | `fisher_decay`                 | d/da J(Y) = −σ²_W E[(S')²], Gaussian noise             |
//! | `fisher_information_inequality`| 1/J(Y) ≥ 1/J(X) + a·σ²_W (inequality mode)             |
//!
//! Entropy derivatives in `a` use a larger relative step (1e-3) than the
//! generic differentiation default: each entropy evaluation carries ~1e-10
//! quadrature noise, and the step must dominate it.

use crate::channel::{AdditiveNoiseChannel, Centering, CompanionChannel};
use crate::distributions::{
    assumption, check_assumptions, AssumptionReport, Distribution, IdentityClass, Law, Role,
};
use crate::infomeasures::{differential_entropy, fisher_location, fisher_parameter, prior_fisher};
use crate::numerics::{
    derivative, derivative_lower_bounded, geometric_ladder, integrate_split, DiffConfig,
    DiffOrder, Interval,
};
use crate::{Error, Result};

/// Default acceptance tolerance for identities involving one numerical
/// `a`-derivative of an entropy or Fisher functional.
pub const FIRST_ORDER_TOLERANCE: f64 = 1e-4;
/// Default tolerance for identities involving a second `a`-derivative, which
/// amplifies quadrature noise by ~1/h².
pub const SECOND_ORDER_TOLERANCE: f64 = 5e-3;
/// Default tolerance for identities where both sides are plain quadratures.
pub const QUADRATURE_TOLERANCE: f64 = 1e-6;
/// Default slack for inequality-mode verifiers.
pub const INEQUALITY_TOLERANCE: f64 = 1e-6;

/// Outcome of one identity verification.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub identity_name: String,
    pub channel_desc: String,
    pub a: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_residual: f64,
    pub rel_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub notes: String,
}

fn relative(abs: f64, lhs: f64, rhs: f64) -> f64 {
    let scale = lhs.abs().max(rhs.abs());
    if scale > 0.0 {
        abs / scale
    } else {
        0.0
    }
}

fn equality_report(
    name: &str,
    ch_desc: String,
    a: f64,
    lhs: f64,
    rhs: f64,
    tolerance: f64,
    notes: String,
) -> IdentityReport {
    let abs_residual = (lhs - rhs).abs();
    IdentityReport {
        identity_name: name.to_string(),
        channel_desc: ch_desc,
        a,
        lhs,
        rhs,
        abs_residual,
        rel_residual: relative(abs_residual, lhs, rhs),
        tolerance,
        pass: abs_residual <= tolerance.max(tolerance * lhs.abs()),
        notes,
    }
}

fn inequality_report(
    name: &str,
    ch_desc: String,
    a: f64,
    lhs: f64,
    rhs: f64,
    tolerance: f64,
) -> IdentityReport {
    let abs_residual = (lhs - rhs).abs();
    IdentityReport {
        identity_name: name.to_string(),
        channel_desc: ch_desc,
        a,
        lhs,
        rhs,
        abs_residual,
        rel_residual: relative(abs_residual, lhs, rhs),
        tolerance,
        pass: lhs >= rhs - tolerance,
        notes: format!("inequality mode; gap lhs - rhs = {:.6e}", lhs - rhs),
    }
}

/// Re-evaluates `pass` under a different tolerance, keeping the residuals.
/// Inequality-mode reports keep their one-sided rule.
pub fn apply_tolerance(mut report: IdentityReport, tolerance: f64) -> IdentityReport {
    report.tolerance = tolerance;
    report.pass = if report.identity_name == "fisher_information_inequality" {
        report.lhs >= report.rhs - tolerance
    } else {
        report.abs_residual <= tolerance.max(tolerance * report.lhs.abs())
    };
    report
}

/// A named scalar test function with its first two derivatives, for the
/// Stein and heat-equation verifiers.
#[derive(Debug, Clone, Copy)]
pub struct TestFunction {
    pub name: &'static str,
    pub f: fn(f64) -> f64,
    pub df: fn(f64) -> f64,
    pub d2f: fn(f64) -> f64,
}

/// Canonical test functions for the classic Stein verifier.
pub fn stein_test_functions() -> Vec<TestFunction> {
    vec![
        TestFunction {
            name: "y",
            f: |y| y,
            df: |_| 1.0,
            d2f: |_| 0.0,
        },
        TestFunction {
            name: "y^2",
            f: |y| y * y,
            df: |y| 2.0 * y,
            d2f: |_| 2.0,
        },
        TestFunction {
            name: "sin(y)",
            f: f64::sin,
            df: f64::cos,
            d2f: |y| -y.sin(),
        },
    ]
}

/// Canonical test functions for the heat-equation verifier.
pub fn heat_test_functions() -> Vec<TestFunction> {
    vec![
        TestFunction {
            name: "y^2",
            f: |y| y * y,
            df: |y| 2.0 * y,
            d2f: |_| 2.0,
        },
        TestFunction {
            name: "y^4",
            f: |y| y * y * y * y,
            df: |y| 4.0 * y * y * y,
            d2f: |y| 12.0 * y * y,
        },
        TestFunction {
            name: "cos(y)",
            f: f64::cos,
            df: |y| -y.sin(),
            d2f: |y| -y.cos(),
        },
    ]
}

// Step policy for entropy and Fisher functionals differentiated in a.
fn slope_cfg() -> DiffConfig {
    DiffConfig {
        base_step: 1e-3,
        richardson_levels: 3,
    }
}

// Step policy for d/dy of posterior means inside expectation integrands; the
// step must dominate the means' quadrature jitter.
fn inner_cfg() -> DiffConfig {
    DiffConfig {
        base_step: 1e-4,
        richardson_levels: 2,
    }
}

fn entropy_a_derivative(ch: &AdditiveNoiseChannel, order: DiffOrder) -> Result<f64> {
    derivative_lower_bounded(
        |av| differential_entropy(&ch.with_a(av)?),
        ch.a(),
        0.0,
        order,
        &slope_cfg(),
    )
}

fn gaussian_noise_var(ch: &AdditiveNoiseChannel, who: &str) -> Result<f64> {
    match *ch.noise().law() {
        Law::Gaussian { var, .. } => Ok(var),
        _ => Err(Error::PreconditionViolated(format!(
            "{who} requires Gaussian noise, got {}",
            ch.noise().describe()
        ))),
    }
}

fn one_sided_noise(ch: &AdditiveNoiseChannel) -> bool {
    matches!(ch.noise().law(), Law::ExponentialUnit | Law::Gamma { .. })
}

fn require_checks(report: &AssumptionReport, names: &[&str], who: &str) -> Result<()> {
    for name in names {
        if let Some(c) = report.check(name) {
            if !c.pass {
                return Err(Error::AssumptionViolated(format!(
                    "{who}: {} ({})",
                    c.name, c.detail
                )));
            }
        }
    }
    Ok(())
}

fn prior_density_continuous(prior: &Distribution) -> bool {
    // Gamma priors here have shape >= 2, so their density vanishes at the
    // support edge; exponential and truncated laws jump.
    match *prior.law() {
        Law::Gaussian { .. } | Law::StudentT { .. } | Law::Gamma { .. } => true,
        Law::ExponentialUnit | Law::TruncatedGaussian { .. } => false,
    }
}

// Admissibility gate for the entropy-derivative identities. One-sided noise
// kernels additionally demand a nonnegative prior with an MGF, and for
// second-order identities a prior density with no jumps: a jump would inject
// point masses into the second marginal derivative that quadrature cannot
// represent.
fn gate_entropy_identity(ch: &AdditiveNoiseChannel, class: IdentityClass) -> Result<()> {
    let prior_rep = check_assumptions(ch.prior(), Role::Prior, class);
    let noise_rep = check_assumptions(ch.noise(), Role::Noise, class);
    let prior_who = format!("prior {}", ch.prior().describe());
    let noise_who = format!("noise {}", ch.noise().describe());
    require_checks(
        &prior_rep,
        &[
            assumption::FINITE_SECOND_MOMENT,
            assumption::BOUNDED_PDF,
            assumption::TAIL_DECAY,
        ],
        &prior_who,
    )?;
    require_checks(&noise_rep, &[assumption::FINITE_SECOND_MOMENT], &noise_who)?;
    if one_sided_noise(ch) {
        require_checks(
            &prior_rep,
            &[assumption::MGF_EXISTS, assumption::NONNEGATIVE_SUPPORT],
            &prior_who,
        )?;
        require_checks(
            &noise_rep,
            &[assumption::SHAPE_SUPPORTS_IDENTITY],
            &noise_who,
        )?;
        if class == IdentityClass::SecondDerivative && !prior_density_continuous(ch.prior()) {
            return Err(Error::AssumptionViolated(format!(
                "{prior_who}: density jumps at a support edge, inadmissible for \
                 second-order identities under one-sided noise"
            )));
        }
    }
    Ok(())
}

// E_Y[g(Y)] under the channel marginal. Regions where the marginal sits
// below the density floor contribute nothing; a DegenerateDensity raised by
// g itself (a stencil point straddling the floor boundary) is likewise
// dropped, since it only occurs where the weight is at floor level.
fn expect_with<G>(
    ch: &AdditiveNoiseChannel,
    cfg: &crate::numerics::QuadratureConfig,
    g: G,
) -> Result<f64>
where
    G: Fn(f64) -> Result<f64>,
{
    let floor = ch.density_floor();
    integrate_split(
        |y| {
            let p = ch.marginal_pdf(y)?;
            if p < floor {
                return Ok(0.0);
            }
            match g(y) {
                Ok(v) => Ok(p * v),
                Err(Error::DegenerateDensity(_)) => Ok(0.0),
                Err(e) => Err(e),
            }
        },
        ch.effective_support(),
        &ch.quadrature_cuts(),
        cfg,
    )
}

fn expect_over_marginal<G>(ch: &AdditiveNoiseChannel, g: G) -> Result<f64>
where
    G: Fn(f64) -> Result<f64>,
{
    expect_with(ch, ch.quad(), g)
}

// Expectations whose integrand embeds a numerical derivative cannot be
// integrated tighter than the derivative's jitter floor; this tolerance sits
// an order of magnitude above it.
fn expect_over_marginal_noisy<G>(ch: &AdditiveNoiseChannel, g: G) -> Result<f64>
where
    G: Fn(f64) -> Result<f64>,
{
    let cfg = crate::numerics::QuadratureConfig {
        rel_tol: 1e-5,
        abs_tol: 1e-7,
        ..*ch.quad()
    };
    expect_with(ch, &cfg, g)
}

// E[g(Z)] where Z follows `weight`'s marginal but g interrogates another
// channel; used for the companion-channel outer expectations.
fn expect_over_other_marginal<G>(weight: &AdditiveNoiseChannel, g: G) -> Result<f64>
where
    G: Fn(f64) -> Result<f64>,
{
    expect_over_marginal(weight, g)
}

// E_X[g(X)] under the prior, g typically a posterior functional on the
// diagonal y = x.
fn expect_over_prior<G>(ch: &AdditiveNoiseChannel, g: G) -> Result<f64>
where
    G: Fn(f64) -> Result<f64>,
{
    let prior = ch.prior();
    let sup = prior.support();
    let tail = ch.quad().tail_mass;
    let lo = if sup.lo.is_finite() {
        sup.lo
    } else {
        prior.quantile(tail)?
    };
    let hi = if sup.hi.is_finite() {
        sup.hi
    } else {
        prior.quantile(1.0 - tail)?
    };
    integrate_split(
        |x| {
            let p = prior.pdf(x);
            if p <= 0.0 {
                return Ok(0.0);
            }
            match g(x) {
                Ok(v) => Ok(p * v),
                Err(Error::DegenerateDensity(_)) => Ok(0.0),
                Err(e) => Err(e),
            }
        },
        Interval::new(lo, hi)?,
        &geometric_ladder(
            Interval::new(prior.quantile(0.05)?, prior.quantile(0.95)?)?,
            Interval::new(lo, hi)?,
        ),
        ch.quad(),
    )
}

/// d/da h(Y) against half the location Fisher information (noise-variance
/// scaled), for Gaussian noise.
pub fn verify_de_bruijn(ch: &AdditiveNoiseChannel) -> Result<IdentityReport> {
    let var_w = gaussian_noise_var(ch, "de_bruijn")?;
    let lhs = entropy_a_derivative(ch, DiffOrder::First)?;
    let rhs = 0.5 * var_w * fisher_location(ch)?;
    Ok(equality_report(
        "de_bruijn",
        ch.describe(),
        ch.a(),
        lhs,
        rhs,
        FIRST_ORDER_TOLERANCE,
        "entropy slope vs half the location Fisher information".into(),
    ))
}

/// Classic Stein identity `E[r(Y)(Y−μ)] = σ² E[r'(Y)]` for a Gaussian law.
pub fn verify_stein_classic(dist: &Distribution, r: &TestFunction) -> Result<IdentityReport> {
    let Law::Gaussian { mu, var } = *dist.law() else {
        return Err(Error::PreconditionViolated(format!(
            "stein_classic requires a Gaussian law, got {}",
            dist.describe()
        )));
    };
    let cfg = crate::numerics::QuadratureConfig::default();
    let lo = dist.quantile(cfg.tail_mass)?;
    let hi = dist.quantile(1.0 - cfg.tail_mass)?;
    let domain = Interval::new(lo, hi)?;
    let lhs = integrate_split(
        |y| Ok(dist.pdf(y) * (r.f)(y) * (y - mu)),
        domain,
        &[],
        &cfg,
    )?;
    let rhs = var
        * integrate_split(|y| Ok(dist.pdf(y) * (r.df)(y)), domain, &[], &cfg)?;
    Ok(equality_report(
        "stein_classic",
        dist.describe(),
        f64::NAN,
        lhs,
        rhs,
        QUADRATURE_TOLERANCE,
        format!("test function r(y) = {}", r.name),
    ))
}

/// Generalized Stein identity with `r = t = -d/dy log f_Y`, `k = 1`, `ν = 0`:
/// the two location Fisher information forms `E[S²] = -E[S']`.
pub fn verify_stein_generalized(ch: &AdditiveNoiseChannel) -> Result<IdentityReport> {
    gaussian_noise_var(ch, "stein_generalized")?;
    let lhs = expect_over_marginal(ch, |y| {
        let s = ch.score_location(y)?;
        Ok(s * s)
    })?;
    let rhs = -expect_over_marginal(ch, |y| ch.score_location_deriv(y))?;
    Ok(equality_report(
        "stein_generalized",
        ch.describe(),
        ch.a(),
        lhs,
        rhs,
        FIRST_ORDER_TOLERANCE,
        "r = t = negative location score, k = 1, nu = 0; both sides equal J(Y)".into(),
    ))
}

/// Heat-equation identity `d/da E[g(Y)] = (σ²_W/2) E[g''(Y)]` for a Gaussian
/// output (both prior and noise Gaussian).
pub fn verify_heat_equation(ch: &AdditiveNoiseChannel, g: &TestFunction) -> Result<IdentityReport> {
    let var_w = gaussian_noise_var(ch, "heat_equation")?;
    if !matches!(ch.prior().law(), Law::Gaussian { .. }) {
        return Err(Error::PreconditionViolated(format!(
            "heat_equation requires a Gaussian output, got prior {}",
            ch.prior().describe()
        )));
    }
    let lhs = derivative_lower_bounded(
        |av| {
            let shifted = ch.with_a(av)?;
            integrate_split(
                |y| Ok(shifted.marginal_pdf(y)? * (g.f)(y)),
                shifted.effective_support(),
                &shifted.quadrature_cuts(),
                shifted.quad(),
            )
        },
        ch.a(),
        0.0,
        DiffOrder::First,
        &slope_cfg(),
    )?;
    let rhs = 0.5 * var_w * expect_over_marginal(ch, |y| Ok((g.d2f)(y)))?;
    Ok(equality_report(
        "heat_equation",
        ch.describe(),
        ch.a(),
        lhs,
        rhs,
        QUADRATURE_TOLERANCE,
        format!("test function g(y) = {}", g.name),
    ))
}

/// Entropy-slope identity `d/da h(Y) = (1/2a)(1 − E_Y[d/dY E[X|Y]])` for an
/// arbitrary admissible noise.
pub fn verify_entropy_slope(ch: &AdditiveNoiseChannel) -> Result<IdentityReport> {
    gate_entropy_identity(ch, IdentityClass::FirstDerivative)?;
    let lhs = entropy_a_derivative(ch, DiffOrder::First)?;
    let cfg = inner_cfg();
    let mean_slope = expect_over_marginal_noisy(ch, |y| {
        derivative(|yy| ch.posterior_mean(yy), y, DiffOrder::First, &cfg)
    })?;
    let rhs = (1.0 - mean_slope) / (2.0 * ch.a());
    Ok(equality_report(
        "entropy_slope",
        ch.describe(),
        ch.a(),
        lhs,
        rhs,
        FIRST_ORDER_TOLERANCE,
        "entropy slope vs posterior-mean derivative".into(),
    ))
}

/// Entropy slope for exponential noise via posterior means on the diagonal:
/// `d/da h(Y) = (1/2a√a)(√a − E[X] + E_X[E[X|Y]|_{Y=X}])`.
pub fn verify_entropy_slope_exponential(ch: &AdditiveNoiseChannel) -> Result<IdentityReport> {
    if !matches!(ch.noise().law(), Law::ExponentialUnit) {
        return Err(Error::PreconditionViolated(format!(
            "entropy_slope_exponential requires exponential noise, got {}",
            ch.noise().describe()
        )));
    }
    gate_entropy_identity(ch, IdentityClass::FirstDerivative)?;
    let a = ch.a();
    let r = a.sqrt();
    let lhs = entropy_a_derivative(ch, DiffOrder::First)?;
    let diag = expect_over_prior(ch, |x| ch.posterior_mean(x))?;
    let rhs = (r - ch.prior().mean()? + diag) / (2.0 * a * r);
    Ok(equality_report(
        "entropy_slope_exponential",
        ch.describe(),
        a,
        lhs,
        rhs,
        FIRST_ORDER_TOLERANCE,
        "entropy slope vs diagonal posterior means".into(),
    ))
}

/// Entropy slope for gamma noise via the shape-lowered companion channel:
/// `d/da h(Y) = (1/2a√a)(√a − E[X] + E_{companion}[E[X|Y]])`.
pub fn verify_entropy_slope_gamma(ch: &AdditiveNoiseChannel) -> Result<IdentityReport> {
    let Law::Gamma { alpha, .. } = *ch.noise().law() else {
        return Err(Error::PreconditionViolated(format!(
            "entropy_slope_gamma requires gamma noise, got {}",
            ch.noise().describe()
        )));
    };
    if alpha < 2.0 {
        return Err(Error::InvalidParameter(format!(
            "gamma slope identity needs shape >= 2, got {alpha}"
        )));
    }
    gate_entropy_identity(ch, IdentityClass::FirstDerivative)?;
    let a = ch.a();
    let r = a.sqrt();
    let lhs = entropy_a_derivative(ch, DiffOrder::First)?;
    let companion = CompanionChannel::new(ch, -1)?;
    let outer = expect_over_other_marginal(companion.channel(), |y| ch.posterior_mean(y))?;
    let rhs = (r - ch.prior().mean()? + outer) / (2.0 * a * r);
    Ok(equality_report(
        "entropy_slope_gamma",
        ch.describe(),
        a,
        lhs,
        rhs,
        FIRST_ORDER_TOLERANCE,
        "entropy slope vs companion-channel posterior means".into(),
    ))
}

/// Entropy-curvature identity for arbitrary admissible noise:
/// `d²/da² h(Y) = −J_a(Y) − (1/4a²) E[d/dY E[(Y−X)|Y]]
///  − (1/4a²) E[(d/dY S_Y)·E[(Y−X)²|Y]]`.
pub fn verify_entropy_curvature(ch: &AdditiveNoiseChannel) -> Result<IdentityReport> {
    gate_entropy_identity(ch, IdentityClass::SecondDerivative)?;
    let a = ch.a();
    let lhs = entropy_a_derivative(ch, DiffOrder::Second)?;
    let j_a = fisher_parameter(ch)?;
    let cfg = inner_cfg();
    let drift_slope = expect_over_marginal_noisy(ch, |y| {
        derivative(
            |yy| ch.posterior_moment(yy, 1, Centering::AroundY),
            y,
            DiffOrder::First,
            &cfg,
        )
    })?;
    let score_term = expect_over_marginal(ch, |y| {
        Ok(ch.score_location_deriv(y)? * ch.posterior_moment(y, 2, Centering::AroundY)?)
    })?;
    let rhs = -j_a - drift_slope / (4.0 * a * a) - score_term / (4.0 * a * a);
    Ok(equality_report(
        "entropy_curvature",
        ch.describe(),
        a,
        lhs,
        rhs,
        SECOND_ORDER_TOLERANCE,
        "entropy curvature vs parameter Fisher information and posterior moments".into(),
    ))
}

/// Entropy curvature for Gaussian noise:
/// `d²/da² h(Y) = −(σ⁴_W/2) E[(d/dY S_Y)²]`.
pub fn verify_entropy_curvature_gaussian(ch: &AdditiveNoiseChannel) -> Result<IdentityReport> {
    let var_w = gaussian_noise_var(ch, "entropy_curvature_gaussian")?;
    check_assumptions(ch.prior(), Role::Prior, IdentityClass::SecondDerivative)
        .check(assumption::FINITE_SECOND_MOMENT)
        .filter(|c| c.pass)
        .ok_or_else(|| {
            Error::AssumptionViolated(format!(
                "prior {}: finite second moment required",
                ch.prior().describe()
            ))
        })?;
    let lhs = entropy_a_derivative(ch, DiffOrder::Second)?;
    let rhs = -0.5
        * var_w
        * var_w
        * expect_over_marginal(ch, |y| {
            let sp = ch.score_location_deriv(y)?;
            Ok(sp * sp)
        })?;
    Ok(equality_report(
        "entropy_curvature_gaussian",
        ch.describe(),
        ch.a(),
        lhs,
        rhs,
        SECOND_ORDER_TOLERANCE,
        "entropy curvature vs mean squared score derivative".into(),
    ))
}

/// Entropy curvature for exponential noise via diagonal posterior moments:
/// `d²/da² h = −J_a + (3/4a²√a) E_X[E[(Y−X)|Y]|_{Y=X}] − 1/4a²
///  − (1/4a³) E_X[E[(Y−X)²|Y]|_{Y=X}]`.
pub fn verify_entropy_curvature_exponential(ch: &AdditiveNoiseChannel) -> Result<IdentityReport> {
    if !matches!(ch.noise().law(), Law::ExponentialUnit) {
        return Err(Error::PreconditionViolated(format!(
            "entropy_curvature_exponential requires exponential noise, got {}",
            ch.noise().describe()
        )));
    }
    gate_entropy_identity(ch, IdentityClass::SecondDerivative)?;
    let a = ch.a();
    let r = a.sqrt();
    let lhs = entropy_a_derivative(ch, DiffOrder::Second)?;
    let j_a = fisher_parameter(ch)?;
    let diag_drift = expect_over_prior(ch, |x| ch.posterior_moment(x, 1, Centering::AroundY))?;
    let diag_sq = expect_over_prior(ch, |x| ch.posterior_moment(x, 2, Centering::AroundY))?;
    let rhs = -j_a + 3.0 * diag_drift / (4.0 * a * a * r)
        - 1.0 / (4.0 * a * a)
        - diag_sq / (4.0 * a * a * a);
    Ok(equality_report(
        "entropy_curvature_exponential",
        ch.describe(),
        a,
        lhs,
        rhs,
        SECOND_ORDER_TOLERANCE,
        "entropy curvature vs diagonal posterior moments".into(),
    ))
}

/// Entropy curvature for gamma noise (shape ≥ 3) via two companion channels:
/// `d²/da² h = −(1/4a³) E_{Y_{−2}}[E[(Y−X)²|Y]]
///  − (1/4a²√a) E_{Y_{−1}}[E[X|Y]]
///  + ((α−1)/4a²√a) E_{Y_{−1}}[E[(Y−X)²|Y] / E_{−1}[(Y−X)|Y]]
///  − J_a − (1/4a²√a)(√a − E[X])`,
/// where `Y_{−k}` is the channel with the gamma shape lowered by `k`, inner
/// moments are taken under the base channel except the ratio's denominator,
/// which lives on the shape-lowered channel.
pub fn verify_entropy_curvature_gamma(ch: &AdditiveNoiseChannel) -> Result<IdentityReport> {
    let Law::Gamma { alpha, .. } = *ch.noise().law() else {
        return Err(Error::PreconditionViolated(format!(
            "entropy_curvature_gamma requires gamma noise, got {}",
            ch.noise().describe()
        )));
    };
    if alpha < 3.0 {
        return Err(Error::InvalidParameter(format!(
            "gamma curvature identity needs shape >= 3, got {alpha}"
        )));
    }
    gate_entropy_identity(ch, IdentityClass::SecondDerivative)?;
    let a = ch.a();
    let r = a.sqrt();
    let lhs = entropy_a_derivative(ch, DiffOrder::Second)?;
    let down1 = CompanionChannel::new(ch, -1)?;
    let down2 = CompanionChannel::new(ch, -2)?;
    let t1 = expect_over_other_marginal(down2.channel(), |y| {
        ch.posterior_moment(y, 2, Centering::AroundY)
    })? / (4.0 * a * a * a);
    let t2 = expect_over_other_marginal(down1.channel(), |y| ch.posterior_mean(y))?
        / (4.0 * a * a * r);
    let t3 = (alpha - 1.0) / (4.0 * a * a * r)
        * expect_over_other_marginal(down1.channel(), |y| {
            let num = ch.posterior_moment(y, 2, Centering::AroundY)?;
            let den = down1.channel().posterior_moment(y, 1, Centering::AroundY)?;
            if den.abs() < 1e-300 {
                return Err(Error::DegenerateDensity(format!(
                    "companion drift vanished at y = {y}"
                )));
            }
            Ok(num / den)
        })?;
    let j_a = fisher_parameter(ch)?;
    let t5 = (r - ch.prior().mean()?) / (4.0 * a * a * r);
    let rhs = -t1 - t2 + t3 - j_a - t5;
    Ok(equality_report(
        "entropy_curvature_gamma",
        ch.describe(),
        a,
        lhs,
        rhs,
        SECOND_ORDER_TOLERANCE,
        "entropy curvature vs companion-channel posterior moments".into(),
    ))
}

/// Fisher information decay `d/da J(Y) = −σ²_W E[(d/dY S_Y)²]` for Gaussian
/// noise.
pub fn verify_fisher_decay(ch: &AdditiveNoiseChannel) -> Result<IdentityReport> {
    let var_w = gaussian_noise_var(ch, "fisher_decay")?;
    let lhs = derivative_lower_bounded(
        |av| fisher_location(&ch.with_a(av)?),
        ch.a(),
        0.0,
        DiffOrder::First,
        &slope_cfg(),
    )?;
    let rhs = -var_w
        * expect_over_marginal(ch, |y| {
            let sp = ch.score_location_deriv(y)?;
            Ok(sp * sp)
        })?;
    Ok(equality_report(
        "fisher_decay",
        ch.describe(),
        ch.a(),
        lhs,
        rhs,
        FIRST_ORDER_TOLERANCE,
        "Fisher information slope vs mean squared score derivative".into(),
    ))
}

/// Fisher information inequality `1/J(Y) ≥ 1/J(X) + a·σ²_W` for Gaussian
/// noise, with equality exactly in the Gaussian-prior case.
pub fn verify_fisher_information_inequality(ch: &AdditiveNoiseChannel) -> Result<IdentityReport> {
    let var_w = gaussian_noise_var(ch, "fisher_information_inequality")?;
    let j_y = fisher_location(ch)?;
    if j_y <= 0.0 {
        return Err(Error::DegenerateDensity(format!(
            "output Fisher information {j_y} is not positive"
        )));
    }
    let j_x = prior_fisher(ch.prior())?;
    let lhs = 1.0 / j_y;
    let rhs = if j_x.is_infinite() { 0.0 } else { 1.0 / j_x } + ch.a() * var_w;
    Ok(inequality_report(
        "fisher_information_inequality",
        ch.describe(),
        ch.a(),
        lhs,
        rhs,
        INEQUALITY_TOLERANCE,
    ))
}

/// Names accepted by [`run_verifier`], in canonical order.
pub fn verifier_names() -> &'static [&'static str] {
    &[
        "de_bruijn",
        "stein_classic",
        "stein_generalized",
        "heat_equation",
        "entropy_slope",
        "entropy_slope_exponential",
        "entropy_slope_gamma",
        "entropy_curvature",
        "entropy_curvature_gaussian",
        "entropy_curvature_exponential",
        "entropy_curvature_gamma",
        "fisher_decay",
        "fisher_information_inequality",
    ]
}

// Worst-residual aggregation across a test-function family, one row out.
fn aggregate(name: &str, reports: Vec<IdentityReport>) -> IdentityReport {
    let notes = reports
        .iter()
        .map(|r| format!("{} -> {:.3e}", r.notes, r.abs_residual))
        .collect::<Vec<_>>()
        .join("; ");
    let mut worst = reports
        .into_iter()
        .max_by(|x, y| x.abs_residual.total_cmp(&y.abs_residual))
        .expect("aggregate over nonempty report set");
    worst.identity_name = name.to_string();
    worst.notes = notes;
    worst
}

/// Runs the named verifier against a channel, aggregating test-function
/// families into a single worst-residual report.
///
/// `stein_classic` and `heat_equation` require a Gaussian output; the classic
/// Stein identity is applied to the channel's marginal law
/// `N(μ_X + √a μ_W, σ²_X + a σ²_W)`.
pub fn run_verifier(name: &str, ch: &AdditiveNoiseChannel) -> Result<IdentityReport> {
    match name {
        "de_bruijn" => verify_de_bruijn(ch),
        "stein_classic" => {
            let (&Law::Gaussian { mu: mx, var: vx }, &Law::Gaussian { mu: mw, var: vw }) =
                (ch.prior().law(), ch.noise().law())
            else {
                return Err(Error::PreconditionViolated(format!(
                    "stein_classic requires a Gaussian output marginal, got {}",
                    ch.describe()
                )));
            };
            let a = ch.a();
            let marginal = Distribution::gaussian(mx + a.sqrt() * mw, vx + a * vw)?;
            let reports = stein_test_functions()
                .iter()
                .map(|r| verify_stein_classic(&marginal, r))
                .collect::<Result<Vec<_>>>()?;
            let mut agg = aggregate("stein_classic", reports);
            agg.a = a;
            agg.channel_desc = ch.describe();
            Ok(agg)
        }
        "stein_generalized" => verify_stein_generalized(ch),
        "heat_equation" => {
            let reports = heat_test_functions()
                .iter()
                .map(|g| verify_heat_equation(ch, g))
                .collect::<Result<Vec<_>>>()?;
            Ok(aggregate("heat_equation", reports))
        }
        "entropy_slope" => verify_entropy_slope(ch),
        "entropy_slope_exponential" => verify_entropy_slope_exponential(ch),
        "entropy_slope_gamma" => verify_entropy_slope_gamma(ch),
        "entropy_curvature" => verify_entropy_curvature(ch),
        "entropy_curvature_gaussian" => verify_entropy_curvature_gaussian(ch),
        "entropy_curvature_exponential" => verify_entropy_curvature_exponential(ch),
        "entropy_curvature_gamma" => verify_entropy_curvature_gamma(ch),
        "fisher_decay" => verify_fisher_decay(ch),
        "fisher_information_inequality" => verify_fisher_information_inequality(ch),
        other => Err(Error::InvalidParameter(format!(
            "unknown verifier name {other:?}"
        ))),
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
    fn de_bruijn_gaussian_gaussian() {
        let rep = verify_de_bruijn(&gg(1.0)).unwrap();
        assert!(rep.pass, "residual {}", rep.abs_residual);
        assert!((rep.lhs - 0.25).abs() < 1e-5);
        assert!((rep.rhs - 0.25).abs() < 1e-6);
    }

    #[test]
    fn stein_classic_linear_function() {
        let dist = Distribution::gaussian(1.5, 2.0).unwrap();
        let fns = stein_test_functions();
        let rep = verify_stein_classic(&dist, &fns[0]).unwrap();
        assert!(rep.pass);
        assert!((rep.lhs - 2.0).abs() < 1e-9);
    }

    #[test]
    fn wrong_noise_family_is_a_precondition_error() {
        let ch = AdditiveNoiseChannel::new(
            Distribution::gamma_dist(2.0, 1.0).unwrap(),
            Distribution::exponential_unit(),
            1.0,
        )
        .unwrap();
        assert!(matches!(
            verify_de_bruijn(&ch),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn unknown_verifier_name_rejected() {
        assert!(matches!(
            run_verifier("nonsense", &gg(1.0)),
            Err(Error::InvalidParameter(_))
        ));
    }
}
