//! Entropy, entropy power, Fisher information, and MMSE functionals.
//!
//! Everything here is a functional of an [`AdditiveNoiseChannel`] (or of a
//! bare law) computed by adaptive quadrature; [`mmse`] additionally offers a
//! Monte Carlo route so the two estimates can check each other.
//!
//! Conventions:
//! * `0·log 0 := 0` at support edges and wherever a density underflows.
//! * Location Fisher information of a law whose density jumps at a support
//!   edge is `+inf`; the divergent cases are detected analytically rather
//!   than asking the integrator to chase a non-integrable singularity.
//! * `h(X|Y)` is assembled by the chain rule `h(X) + h(Y|X) - h(Y)`, keeping
//!   all quadrature one-dimensional.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::channel::AdditiveNoiseChannel;
use crate::distributions::{Distribution, Law};
use crate::numerics::{geometric_ladder, integrate_split, Interval, Sampleable};
use crate::{Error, Result};

/// How a numerical estimate was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimationMethod {
    Quadrature,
    MonteCarlo,
}

impl std::fmt::Display for EstimationMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EstimationMethod::Quadrature => write!(f, "quadrature"),
            EstimationMethod::MonteCarlo => write!(f, "monte_carlo"),
        }
    }
}

/// A value plus the route that produced it and an error figure.
///
/// For quadrature the error figure is the acceptance tolerance of the
/// integrator; for Monte Carlo it is the standard error of the mean.
#[derive(Debug, Clone)]
pub struct InfoMeasureResult {
    pub value: f64,
    pub method: EstimationMethod,
    pub est_error: f64,
}

fn quad_error(value: f64, ch: &AdditiveNoiseChannel) -> f64 {
    ch.quad().abs_tol.max(ch.quad().rel_tol * value.abs())
}

/// Differential entropy `h(Y) = -∫ f_Y log f_Y dy` of the channel output.
pub fn differential_entropy(ch: &AdditiveNoiseChannel) -> Result<f64> {
    integrate_split(
        |y| {
            let p = ch.marginal_pdf(y)?;
            Ok(if p > 0.0 { -p * p.ln() } else { 0.0 })
        },
        ch.effective_support(),
        &ch.quadrature_cuts(),
        ch.quad(),
    )
}

/// Differential entropy of a bare law by quadrature over its truncated
/// support.
pub fn entropy_of(dist: &Distribution) -> Result<f64> {
    let sup = dist.support();
    let lo = if sup.lo.is_finite() {
        sup.lo
    } else {
        dist.quantile(1e-12)?
    };
    let hi = if sup.hi.is_finite() {
        sup.hi
    } else {
        dist.quantile(1.0 - 1e-12)?
    };
    let domain = Interval::new(lo, hi)?;
    integrate_split(
        |x| {
            let p = dist.pdf(x);
            Ok(if p > 0.0 { -p * p.ln() } else { 0.0 })
        },
        domain,
        &density_ladder(dist, domain)?,
        &crate::numerics::QuadratureConfig::default(),
    )
}

// Ladder seeds for integrals against a bare density (see
// `geometric_ladder`); the core is the central 90% of the law.
fn density_ladder(dist: &Distribution, domain: Interval) -> Result<Vec<f64>> {
    let core = Interval::new(dist.quantile(0.05)?, dist.quantile(0.95)?)?;
    Ok(geometric_ladder(core, domain))
}

/// `h(Y|X) = h(sqrt(a)·W) = h(W) + (1/2) log a`.
pub fn conditional_entropy_noise(ch: &AdditiveNoiseChannel) -> Result<f64> {
    Ok(entropy_of(ch.noise())? + 0.5 * ch.a().ln())
}

/// Entropy power `N = exp(2h) / (2πe)`.
pub fn entropy_power(h: f64) -> Result<f64> {
    if !h.is_finite() {
        return Err(Error::DomainViolation(format!(
            "entropy power needs a finite entropy, got {h}"
        )));
    }
    Ok((2.0 * h).exp() / (2.0 * std::f64::consts::PI * std::f64::consts::E))
}

/// Conditional entropy power `N(X|Y) = exp(2 h(X|Y)) / (2πe)` with
/// `h(X|Y) = h(X) + h(Y|X) - h(Y)`.
pub fn conditional_entropy_power(ch: &AdditiveNoiseChannel) -> Result<f64> {
    let h_x = entropy_of(ch.prior())?;
    let h_cond = h_x + conditional_entropy_noise(ch)? - differential_entropy(ch)?;
    entropy_power(h_cond)
}

/// Location Fisher information `J(Y) = ∫ (f_Y')² / f_Y dy`.
pub fn fisher_location(ch: &AdditiveNoiseChannel) -> Result<f64> {
    let floor = ch.density_floor();
    integrate_split(
        |y| {
            let p = ch.marginal_pdf(y)?;
            if p < floor {
                return Ok(0.0);
            }
            let d = ch.marginal_pdf_dy(y)?;
            Ok(d * d / p)
        },
        ch.effective_support(),
        &ch.quadrature_cuts(),
        ch.quad(),
    )
}

/// Noise-scale Fisher information `J_a(Y) = ∫ f_Y · (d/da log f_Y)² dy`.
///
/// The parameter score is itself a numerical derivative, so the outer
/// integral runs at a tolerance matched to the score's jitter floor rather
/// than the channel's full quadrature precision.
pub fn fisher_parameter(ch: &AdditiveNoiseChannel) -> Result<f64> {
    let floor = ch.density_floor();
    let cfg = crate::numerics::QuadratureConfig {
        rel_tol: 1e-5,
        abs_tol: 1e-8,
        ..*ch.quad()
    };
    integrate_split(
        |y| {
            let p = ch.marginal_pdf(y)?;
            if p < floor {
                return Ok(0.0);
            }
            let s = ch.score_parameter(y)?;
            Ok(p * s * s)
        },
        ch.effective_support(),
        &ch.quadrature_cuts(),
        &cfg,
    )
}

// Laws whose location Fisher information diverges: the density jumps at a
// support edge, or decays too slowly toward a finite edge for (f')²/f to stay
// integrable (gamma needs shape > 2).
fn location_fisher_diverges(dist: &Distribution) -> bool {
    match *dist.law() {
        Law::ExponentialUnit | Law::TruncatedGaussian { .. } => true,
        Law::Gamma { alpha, .. } => alpha <= 2.0,
        Law::Gaussian { .. } | Law::StudentT { .. } => false,
    }
}

fn location_fisher_of(dist: &Distribution) -> Result<f64> {
    if location_fisher_diverges(dist) {
        return Ok(f64::INFINITY);
    }
    let cfg = crate::numerics::QuadratureConfig::default();
    let sup = dist.support();
    let lo = if sup.lo.is_finite() {
        sup.lo
    } else {
        dist.quantile(cfg.tail_mass)?
    };
    let hi = if sup.hi.is_finite() {
        sup.hi
    } else {
        dist.quantile(1.0 - cfg.tail_mass)?
    };
    integrate_split(
        |x| {
            let p = dist.pdf(x);
            if p <= 0.0 {
                return Ok(0.0);
            }
            let d = dist.pdf_deriv(x);
            Ok(d * d / p)
        },
        Interval::new(lo, hi)?,
        &density_ladder(dist, Interval::new(lo, hi)?)?,
        &cfg,
    )
}

/// Location Fisher information of the prior alone, `J(X)`.
///
/// Returns `+inf` for priors whose density jumps at a support edge; the
/// resulting Bayesian bound degrades gracefully to zero.
pub fn prior_fisher(dist: &Distribution) -> Result<f64> {
    location_fisher_of(dist)
}

/// Expected conditional Fisher information `E_X[J(Y|X)]` by double
/// quadrature. For a location kernel this is `J(W)/a`, so Gaussian noise
/// gives exactly `1/a`; the double integral is kept as the implementation so
/// that property stays a checkable outcome rather than an input.
pub fn conditional_fisher(ch: &AdditiveNoiseChannel) -> Result<f64> {
    if location_fisher_diverges(ch.noise()) {
        return Ok(f64::INFINITY);
    }
    let a = ch.a();
    let r = a.sqrt();
    let noise = ch.noise();
    let nsup = noise.support();
    let cfg = *ch.quad();
    let w_lo = if nsup.lo.is_finite() {
        nsup.lo
    } else {
        noise.quantile(cfg.tail_mass)?
    };
    let w_hi = if nsup.hi.is_finite() {
        nsup.hi
    } else {
        noise.quantile(1.0 - cfg.tail_mass)?
    };
    let prior = ch.prior();
    let psup = prior.support();
    let x_lo = if psup.lo.is_finite() {
        psup.lo
    } else {
        prior.quantile(cfg.tail_mass)?
    };
    let x_hi = if psup.hi.is_finite() {
        psup.hi
    } else {
        prior.quantile(1.0 - cfg.tail_mass)?
    };
    let noise_core = Interval::new(noise.quantile(0.05)?, noise.quantile(0.95)?)?;
    let x_domain = Interval::new(x_lo, x_hi)?;
    integrate_split(
        |x| {
            // Inner integral over y at fixed x; d/dx of the kernel is
            // -f_W'((y-x)/sqrt(a)) / a.
            let y_domain = Interval::new(x + r * w_lo, x + r * w_hi)?;
            let y_core = Interval {
                lo: x + r * noise_core.lo,
                hi: x + r * noise_core.hi,
            };
            let inner = integrate_split(
                |y| {
                    let w = (y - x) / r;
                    let p = noise.pdf(w);
                    if p <= 0.0 {
                        return Ok(0.0);
                    }
                    let d = noise.pdf_deriv(w);
                    Ok(d * d / (p * a * r))
                },
                y_domain,
                &geometric_ladder(y_core, y_domain),
                &cfg,
            )?;
            Ok(prior.pdf(x) * inner)
        },
        x_domain,
        &density_ladder(prior, x_domain)?,
        &cfg,
    )
}

const MC_DEFAULT_N: usize = 1_000_000;
const MC_CHUNK: usize = 8192;
const GRID_POINTS: usize = 8192;
const GRID_TAIL: f64 = 1e-7;

/// Minimum mean square error `E[(X - E[X|Y])²]` of estimating the input from
/// the output.
///
/// The quadrature route integrates `f_Y · Var(X|Y)` over the effective
/// support. The Monte Carlo route draws `(X, W)` pairs, forms `Y`, and
/// averages `(X - E[X|Y])²`, evaluating the posterior mean through a dense
/// precomputed interpolation grid (exact quadrature for the rare samples
/// outside it); the reported error is the standard error of the mean.
/// Results are bitwise reproducible for a fixed seed at any thread count.
pub fn mmse(
    ch: &AdditiveNoiseChannel,
    method: EstimationMethod,
    n: Option<usize>,
    seed: Option<u64>,
) -> Result<InfoMeasureResult> {
    ch.prior().variance()?;
    match method {
        EstimationMethod::Quadrature => {
            let floor = ch.density_floor();
            let value = integrate_split(
                |y| {
                    let p = ch.marginal_pdf(y)?;
                    if p < floor {
                        return Ok(0.0);
                    }
                    Ok(p * ch.posterior_variance(y)?)
                },
                ch.effective_support(),
                &ch.quadrature_cuts(),
                ch.quad(),
            )?;
            Ok(InfoMeasureResult {
                value,
                method,
                est_error: quad_error(value, ch),
            })
        }
        EstimationMethod::MonteCarlo => mmse_monte_carlo(ch, n.unwrap_or(MC_DEFAULT_N), seed.unwrap_or(0)),
    }
}

// Posterior mean in noise coordinates, normalized by the prior density at y
// when possible: m(y) = y - sqrt(a)·N/D with N = ∫ w ρ(w) f_W(w) dw,
// D = ∫ ρ(w) f_W(w) dw, ρ(w) = f_X(y - sqrt(a)w) / f_X(y). The O(1)
// integrands stay well conditioned far into the output tails where the raw
// marginal underflows.
fn posterior_mean_robust(ch: &AdditiveNoiseChannel, y: f64) -> Result<f64> {
    let a = ch.a();
    let r = a.sqrt();
    let prior = ch.prior();
    let noise = ch.noise();
    let scale = prior.pdf(y);
    if scale <= 0.0 {
        return ch.posterior_mean(y);
    }
    let cfg = *ch.quad();
    let nsup = noise.support();
    let w_lo = if nsup.lo.is_finite() {
        nsup.lo
    } else {
        noise.quantile(cfg.tail_mass)?
    };
    let w_hi = if nsup.hi.is_finite() {
        nsup.hi
    } else {
        noise.quantile(1.0 - cfg.tail_mass)?
    };
    let domain = Interval::new(y - r * w_hi, y - r * w_lo)?;
    let psup = prior.support();
    let mut cuts: Vec<f64> = [psup.lo, psup.hi]
        .into_iter()
        .filter(|e| e.is_finite())
        .collect();
    cuts.extend(density_ladder(prior, domain)?);
    let kernel_core = Interval {
        lo: y - r * noise.quantile(0.95)?,
        hi: y - r * noise.quantile(0.05)?,
    };
    cuts.extend(geometric_ladder(kernel_core, domain));
    // Integrate in x to reuse the prior-edge cuts; w = (y - x)/sqrt(a).
    let d = integrate_split(
        |x| Ok(prior.pdf(x) / scale * noise.pdf((y - x) / r) / r),
        domain,
        &cuts,
        &cfg,
    )?;
    if d <= 0.0 {
        return Err(Error::DegenerateDensity(format!(
            "normalized posterior weight vanished at y = {y}"
        )));
    }
    let num = integrate_split(
        |x| Ok((y - x) / r * prior.pdf(x) / scale * noise.pdf((y - x) / r) / r),
        domain,
        &cuts,
        &cfg,
    )?;
    Ok(y - r * num / d)
}

// Uniform grid of posterior means over the bulk of the output law, plus a
// Catmull-Rom evaluator. Interpolation bias enters the MMSE only at second
// order (the cross term has zero conditional mean), so modest grid accuracy
// suffices.
struct MeanGrid {
    lo: f64,
    h: f64,
    values: Vec<f64>,
}

impl MeanGrid {
    fn build(ch: &AdditiveNoiseChannel) -> Result<Self> {
        let r = ch.a().sqrt();
        let psup = ch.prior().support();
        let nsup = ch.noise().support();
        let p_lo = if psup.lo.is_finite() {
            psup.lo
        } else {
            ch.prior().quantile(GRID_TAIL)?
        };
        let p_hi = if psup.hi.is_finite() {
            psup.hi
        } else {
            ch.prior().quantile(1.0 - GRID_TAIL)?
        };
        let n_lo = if nsup.lo.is_finite() {
            nsup.lo
        } else {
            ch.noise().quantile(GRID_TAIL)?
        };
        let n_hi = if nsup.hi.is_finite() {
            nsup.hi
        } else {
            ch.noise().quantile(1.0 - GRID_TAIL)?
        };
        let core = Interval::new(p_lo + r * n_lo, p_hi + r * n_hi)?;
        let core = core
            .intersect(&ch.effective_support())
            .ok_or_else(|| Error::DomainViolation("empty output core".into()))?;
        let h = core.width() / (GRID_POINTS - 1) as f64;
        let values = (0..GRID_POINTS)
            .into_par_iter()
            .map(|i| posterior_mean_robust(ch, core.lo + i as f64 * h))
            .collect::<Result<Vec<f64>>>()?;
        Ok(Self {
            lo: core.lo,
            h,
            values,
        })
    }

    fn covers(&self, y: f64) -> bool {
        let hi = self.lo + self.h * (self.values.len() - 1) as f64;
        y >= self.lo && y <= hi
    }

    // Catmull-Rom cubic through the four nodes around y; one-sided tangents
    // at the grid ends.
    fn eval(&self, y: f64) -> f64 {
        let n = self.values.len();
        let u = (y - self.lo) / self.h;
        let i = (u.floor() as usize).min(n - 2);
        let t = u - i as f64;
        let v = &self.values;
        let m0 = if i == 0 {
            v[1] - v[0]
        } else {
            0.5 * (v[i + 1] - v[i - 1])
        };
        let m1 = if i + 2 >= n {
            v[n - 1] - v[n - 2]
        } else {
            0.5 * (v[i + 2] - v[i])
        };
        let t2 = t * t;
        let t3 = t2 * t;
        (2.0 * t3 - 3.0 * t2 + 1.0) * v[i]
            + (t3 - 2.0 * t2 + t) * m0
            + (-2.0 * t3 + 3.0 * t2) * v[i + 1]
            + (t3 - t2) * m1
    }
}

fn mmse_monte_carlo(ch: &AdditiveNoiseChannel, n: usize, seed: u64) -> Result<InfoMeasureResult> {
    if n == 0 {
        return Err(Error::InvalidParameter("Monte Carlo needs n >= 1".into()));
    }
    if !(ch.prior().has_sampler() && ch.noise().has_sampler()) {
        return Err(Error::Unsupported(
            "Monte Carlo MMSE needs samplers for both laws".into(),
        ));
    }
    // One RNG stream, one (x, w) pair per draw: the realization depends only
    // on the seed, never on thread count.
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let r = ch.a().sqrt();
    let mut xs = Vec::with_capacity(n);
    let mut ys = Vec::with_capacity(n);
    for _ in 0..n {
        let x = ch.prior().draw(&mut rng);
        let w = ch.noise().draw(&mut rng);
        xs.push(x);
        ys.push(x + r * w);
    }
    let grid = MeanGrid::build(ch)?;
    // Fixed-size chunks summed internally in draw order, partials combined in
    // chunk order: bitwise identical at any thread count.
    let chunk_sums: Vec<Result<(f64, f64)>> = xs
        .par_chunks(MC_CHUNK)
        .zip(ys.par_chunks(MC_CHUNK))
        .map(|(xc, yc)| {
            let mut s = 0.0;
            let mut s2 = 0.0;
            for (&x, &y) in xc.iter().zip(yc) {
                let m = if grid.covers(y) {
                    grid.eval(y)
                } else {
                    posterior_mean_robust(ch, y)?
                };
                let e = (x - m) * (x - m);
                s += e;
                s2 += e * e;
            }
            Ok((s, s2))
        })
        .collect();
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for cs in chunk_sums {
        let (s, s2) = cs?;
        sum += s;
        sum_sq += s2;
    }
    let nf = n as f64;
    let mean = sum / nf;
    let var = (sum_sq / nf - mean * mean).max(0.0);
    Ok(InfoMeasureResult {
        value: mean,
        method: EstimationMethod::MonteCarlo,
        est_error: (var / nf).sqrt(),
    })
}
