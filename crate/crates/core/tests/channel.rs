//! Channel-layer contracts: marginal and posterior normalization, the tower
//! property of the posterior mean, Gaussian closed forms, the kernel PDE,
//! and boundary error behavior.

use infolab::channel::{AdditiveNoiseChannel, CompanionChannel};
use infolab::distributions::Distribution;
use infolab::numerics::{integrate_split, Interval, QuadratureConfig};
use infolab::Error;

fn gaussian(mu: f64, var: f64) -> Distribution {
    Distribution::gaussian(mu, var).unwrap()
}

fn channel(prior: Distribution, noise: Distribution, a: f64) -> AdditiveNoiseChannel {
    AdditiveNoiseChannel::new(prior, noise, a).unwrap()
}

// Every supported pairing shape: smooth two-sided, heavy-tailed, truncated,
// and the one-sided kernels over nonnegative priors.
fn catalog() -> Vec<AdditiveNoiseChannel> {
    let tn = || Distribution::truncated_gaussian(1.0, 1.0, 0.0, 3.0).unwrap();
    vec![
        channel(gaussian(0.0, 1.0), gaussian(0.0, 1.0), 1.0),
        channel(Distribution::student_t(3.0).unwrap(), gaussian(0.0, 1.0), 0.5),
        channel(tn(), gaussian(0.0, 1.0), 2.0),
        channel(tn(), Distribution::exponential_unit(), 1.0),
        channel(
            Distribution::gamma_dist(2.0, 1.0).unwrap(),
            Distribution::exponential_unit(),
            0.5,
        ),
        channel(
            Distribution::gamma_dist(2.0, 1.0).unwrap(),
            Distribution::gamma_dist(3.0, 1.0).unwrap(),
            1.0,
        ),
    ]
}

#[test]
fn marginal_density_normalizes() {
    for ch in catalog() {
        let mass = integrate_split(
            |y| ch.marginal_pdf(y),
            ch.effective_support(),
            &ch.quadrature_cuts(),
            ch.quad(),
        )
        .unwrap();
        assert!((mass - 1.0).abs() < 1e-8, "{}: mass = {mass}", ch.describe());
    }
}

#[test]
fn posterior_density_normalizes_at_sampled_outputs() {
    let cfg = QuadratureConfig::default();
    for ch in catalog() {
        let sup = ch.effective_support();
        // Interior probe points away from the extreme tails.
        for frac in [0.3, 0.5, 0.7] {
            let y = sup.lo + frac * sup.width();
            let f_y = ch.marginal_pdf(y).unwrap();
            if f_y < ch.density_floor() {
                continue;
            }
            let prior = ch.prior();
            let psup = prior.support();
            let lo = if psup.lo.is_finite() {
                psup.lo
            } else {
                prior.quantile(1e-12).unwrap()
            };
            let hi = if psup.hi.is_finite() {
                psup.hi
            } else {
                prior.quantile(1.0 - 1e-12).unwrap()
            };
            let domain = Interval::new(lo, hi).unwrap();
            // Seed panels around both places the integrand concentrates:
            // the prior's central mass and the kernel bump near x = y.
            let r = ch.a().sqrt();
            let mut cuts = infolab::numerics::geometric_ladder(
                Interval::new(
                    prior.quantile(0.05).unwrap(),
                    prior.quantile(0.95).unwrap(),
                )
                .unwrap(),
                domain,
            );
            cuts.extend(infolab::numerics::geometric_ladder(
                Interval::new(y - 3.0 * r - 1.0, y + 3.0 * r + 1.0).unwrap(),
                domain,
            ));
            let mass = integrate_split(
                |x| Ok(prior.pdf(x) * ch.conditional_pdf(y, x) / f_y),
                domain,
                &cuts,
                &cfg,
            )
            .unwrap();
            assert!(
                (mass - 1.0).abs() < 1e-8,
                "{} at y={y}: posterior mass = {mass}",
                ch.describe()
            );
        }
    }
}

#[test]
fn posterior_mean_satisfies_the_tower_property() {
    for ch in catalog() {
        let prior_mean = ch.prior().mean().unwrap();
        let floor = ch.density_floor();
        let towered = integrate_split(
            |y| {
                let p = ch.marginal_pdf(y)?;
                if p < floor {
                    return Ok(0.0);
                }
                Ok(p * ch.posterior_mean(y)?)
            },
            ch.effective_support(),
            &ch.quadrature_cuts(),
            ch.quad(),
        )
        .unwrap();
        assert!(
            (towered - prior_mean).abs() < 1e-6,
            "{}: E[E[X|Y]] = {towered} vs {prior_mean}",
            ch.describe()
        );
    }
}

#[test]
fn gaussian_channel_reproduces_closed_forms() {
    let a = 0.8;
    let ch = channel(gaussian(0.0, 1.0), gaussian(0.0, 1.0), a);
    let var_y = 1.0 + a;
    for y in [-2.0, -0.3, 0.0, 1.1, 2.7] {
        let marginal = ch.marginal_pdf(y).unwrap();
        let expect = (-0.5 * y * y / var_y).exp() / (2.0 * std::f64::consts::PI * var_y).sqrt();
        assert!((marginal - expect).abs() < 1e-9, "marginal at {y}");

        let mean = ch.posterior_mean(y).unwrap();
        assert!((mean - y / var_y).abs() < 1e-6, "posterior mean at {y}");

        let var = ch.posterior_variance(y).unwrap();
        assert!((var - a / var_y).abs() < 1e-6, "posterior var at {y}");

        let score = ch.score_location(y).unwrap();
        assert!((score + y / var_y).abs() < 1e-6, "score at {y}");

        // d/da log f_Y for f_Y = N(0, 1+a).
        let s_a = ch.score_parameter(y).unwrap();
        let expect_sa = 0.5 * (y * y / (var_y * var_y) - 1.0 / var_y);
        assert!((s_a - expect_sa).abs() < 1e-5, "parameter score at {y}");
    }
}

#[test]
fn effective_support_is_the_minkowski_sum() {
    let prior = Distribution::truncated_gaussian(1.0, 1.0, 0.0, 3.0).unwrap();
    let noise = gaussian(0.0, 1.0);
    let a = 4.0;
    let ch = channel(prior.clone(), noise.clone(), a);
    let sup = ch.effective_support();
    let w_lo = noise.quantile(1e-12).unwrap();
    let w_hi = noise.quantile(1.0 - 1e-12).unwrap();
    assert!((sup.lo - (0.0 + 2.0 * w_lo)).abs() < 1e-9);
    assert!((sup.hi - (3.0 + 2.0 * w_hi)).abs() < 1e-9);
}

#[test]
fn kernel_pde_holds_at_interior_points() {
    // The conditional density solves a first-order PDE in (y, a) specific
    // to each noise family; the residual is a direct functional check.
    let cases = vec![
        channel(gaussian(0.0, 1.0), gaussian(0.0, 1.0), 0.7),
        channel(
            Distribution::gamma_dist(2.0, 1.0).unwrap(),
            Distribution::exponential_unit(),
            1.3,
        ),
        channel(
            Distribution::gamma_dist(2.0, 1.0).unwrap(),
            Distribution::gamma_dist(3.0, 1.0).unwrap(),
            0.9,
        ),
    ];
    for ch in cases {
        let r = ch.a().sqrt();
        for (x, w) in [(0.5, 0.8), (1.4, 1.9), (2.2, 0.6)] {
            let y = x + r * w;
            let resid = ch.kernel_pde_residual(y, x).unwrap();
            assert!(
                resid.abs() < 1e-5,
                "{} at (x={x}, y={y}): residual {resid}",
                ch.describe()
            );
        }
    }
}

#[test]
fn degenerate_tail_requests_are_refused() {
    let ch = channel(gaussian(0.0, 1.0), gaussian(0.0, 1.0), 1.0);
    let err = ch.score_location(1.0e6).unwrap_err();
    assert!(matches!(err, Error::DegenerateDensity(_) | Error::DomainViolation(_)));
}

#[test]
fn one_sided_noise_rejects_two_sided_priors() {
    let err = AdditiveNoiseChannel::new(
        Distribution::student_t(3.0).unwrap(),
        Distribution::exponential_unit(),
        1.0,
    )
    .unwrap_err();
    assert!(matches!(err, Error::Unsupported(_)));
}

#[test]
fn scale_must_be_positive_and_finite() {
    for a in [0.0, -2.0, f64::NAN, f64::INFINITY] {
        let err =
            AdditiveNoiseChannel::new(gaussian(0.0, 1.0), gaussian(0.0, 1.0), a).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)), "a = {a}");
    }
}

#[test]
fn companion_channels_shift_the_gamma_shape() {
    let base = channel(
        Distribution::gamma_dist(2.0, 1.0).unwrap(),
        Distribution::gamma_dist(3.0, 1.0).unwrap(),
        1.0,
    );
    let companion = CompanionChannel::new(&base, -1).unwrap();
    assert_eq!(companion.shift(), -1);
    // Shape 3 - 1 = 2 keeps a gamma kernel; the companion marginal then
    // integrates to one like any channel marginal.
    let ch = companion.channel();
    let mass = integrate_split(
        |y| ch.marginal_pdf(y),
        ch.effective_support(),
        &ch.quadrature_cuts(),
        ch.quad(),
    )
    .unwrap();
    assert!((mass - 1.0).abs() < 1e-8);

    let err = CompanionChannel::new(
        &channel(gaussian(0.0, 1.0), gaussian(0.0, 1.0), 1.0),
        -1,
    )
    .unwrap_err();
    assert!(matches!(err, Error::PreconditionViolated(_)));
}
