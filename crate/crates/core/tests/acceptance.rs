//! Acceptance gate: every release-blocking criterion in one target, each
//! test printing a single PASS line with its measured worst case (a failed
//! assert is the FAIL line). Closed-form values use the Gaussian-Gaussian
//! channel; property checks run the full prior/noise catalog.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use infolab::bounds::{check_ordering, costa_epi_check, figure1_sweep, BoundsCurve};
use infolab::channel::AdditiveNoiseChannel;
use infolab::distributions::Distribution;
use infolab::identities::run_verifier;
use infolab::infomeasures::{mmse, EstimationMethod};
use infolab::numerics::{
    derivative, geometric_ladder, integrate_split, sample, DiffConfig, DiffOrder, Interval,
    QuadratureConfig,
};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha12Rng;

fn gaussian() -> Distribution {
    Distribution::gaussian(0.0, 1.0).unwrap()
}

fn t3() -> Distribution {
    Distribution::student_t(3.0).unwrap()
}

fn tn() -> Distribution {
    Distribution::truncated_gaussian(1.0, 1.0, 0.0, 3.0).unwrap()
}

fn gamma(alpha: f64) -> Distribution {
    Distribution::gamma_dist(alpha, 1.0).unwrap()
}

fn channel(prior: Distribution, noise: Distribution, a: f64) -> AdditiveNoiseChannel {
    AdditiveNoiseChannel::new(prior, noise, a).unwrap()
}

fn gg(a: f64) -> AdditiveNoiseChannel {
    channel(gaussian(), gaussian(), a)
}

/// The full 41-point sweep is shared between the two criteria that consume
/// it; the first caller pays and the build time is kept with the result.
fn figure_curve() -> &'static (BoundsCurve, Duration) {
    static CURVE: OnceLock<(BoundsCurve, Duration)> = OnceLock::new();
    CURVE.get_or_init(|| {
        let grid: Vec<f64> = (0..41).map(|i| -10.0 + i as f64).collect();
        let start = Instant::now();
        let curve = figure1_sweep(&t3(), &gaussian(), &grid, 1_000_000, 0).unwrap();
        (curve, start.elapsed())
    })
}

#[test]
fn criterion_01_de_bruijn_gaussian_closed_form() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for a in [0.25, 0.5, 1.0, 2.0, 5.0] {
        let rep = run_verifier("de_bruijn", &gg(a)).unwrap();
        let exact = 0.5 / (1.0 + a);
        for side in [rep.lhs, rep.rhs] {
            let err = (side - exact).abs();
            worst = worst.max(err);
            assert!(err < 1e-5, "a={a}: side {side} vs exact {exact}");
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    println!("PASS criterion 1: de Bruijn matches 1/(2(1+a)), worst error {worst:.2e}, {elapsed:.2?}");
}

#[test]
fn criterion_02_stein_dual_forms() {
    let mut worst = 0.0f64;
    for prior in [gaussian(), t3()] {
        for a in [0.5, 1.0, 2.0] {
            let ch = channel(prior.clone(), gaussian(), a);
            let rep = run_verifier("stein_generalized", &ch).unwrap();
            worst = worst.max(rep.abs_residual);
            assert!(
                rep.abs_residual <= 1e-4,
                "{}: residual {}",
                rep.channel_desc,
                rep.abs_residual
            );
        }
    }
    println!("PASS criterion 2: Stein dual forms agree, worst residual {worst:.2e}");
}

#[test]
fn criterion_03_heat_equation_test_functions() {
    let rep = run_verifier("heat_equation", &gg(1.0)).unwrap();
    assert!(rep.abs_residual <= 1e-4, "residual {}", rep.abs_residual);
    println!(
        "PASS criterion 3: heat-equation checks on y^2, y^4, cos y, worst residual {:.2e}",
        rep.abs_residual
    );
}

#[test]
fn criterion_04_entropy_slope_identities() {
    let mut worst = 0.0f64;
    // General posterior-mean route across the three noise families.
    for a in [0.5, 1.0, 2.0] {
        for ch in [
            gg(a),
            channel(gamma(2.0), Distribution::exponential_unit(), a),
            channel(tn(), gamma(2.0), a),
        ] {
            let rep = run_verifier("entropy_slope", &ch).unwrap();
            worst = worst.max(rep.abs_residual);
            assert!(
                rep.abs_residual <= 1e-3,
                "{}: residual {}",
                rep.channel_desc,
                rep.abs_residual
            );
        }
    }
    // One-sided specializations must agree with the general route on
    // shared channels.
    for a in [0.5, 1.0, 2.0] {
        let ch = channel(gamma(2.0), Distribution::exponential_unit(), a);
        let general = run_verifier("entropy_slope", &ch).unwrap();
        let special = run_verifier("entropy_slope_exponential", &ch).unwrap();
        let gap = (general.lhs - special.rhs).abs();
        worst = worst.max(gap);
        assert!(gap <= 1e-3, "exponential route at a={a}: gap {gap}");
    }
    for (alpha, a) in [(2.0, 1.0), (3.0, 1.0), (2.0, 0.5)] {
        let ch = channel(tn(), gamma(alpha), a);
        let general = run_verifier("entropy_slope", &ch).unwrap();
        let special = run_verifier("entropy_slope_gamma", &ch).unwrap();
        let gap = (general.lhs - special.rhs).abs();
        worst = worst.max(gap);
        assert!(gap <= 1e-3, "gamma({alpha}) route at a={a}: gap {gap}");
    }
    println!("PASS criterion 4: entropy slope identities across noise families, worst {worst:.2e}");
}

#[test]
fn criterion_05_entropy_curvature_identities() {
    let mut worst = 0.0f64;
    let catalog = [
        ("entropy_curvature", gg(1.0)),
        ("entropy_curvature", channel(t3(), gaussian(), 1.0)),
        ("entropy_curvature", channel(gamma(2.0), gamma(3.0), 1.0)),
        ("entropy_curvature_gaussian", gg(1.0)),
        ("entropy_curvature_gaussian", channel(t3(), gaussian(), 2.0)),
        (
            "entropy_curvature_exponential",
            channel(gamma(2.0), Distribution::exponential_unit(), 1.0),
        ),
        ("entropy_curvature_gamma", channel(gamma(2.0), gamma(3.0), 1.0)),
    ];
    for (name, ch) in catalog {
        let rep = run_verifier(name, &ch).unwrap();
        worst = worst.max(rep.abs_residual);
        assert!(
            rep.abs_residual <= 5e-3,
            "{name} on {}: residual {}",
            rep.channel_desc,
            rep.abs_residual
        );
    }
    // Gaussian-Gaussian closed form d2h/da2 = -1/(2(1+a)^2).
    for a in [0.5, 1.0, 2.0] {
        let rep = run_verifier("entropy_curvature", &gg(a)).unwrap();
        let exact = -0.5 / ((1.0 + a) * (1.0 + a));
        let err = (rep.lhs - exact).abs();
        worst = worst.max(err);
        assert!(err <= 1e-3, "a={a}: lhs {} vs {exact}", rep.lhs);
    }
    println!("PASS criterion 5: entropy curvature identities, worst deviation {worst:.2e}");
}

#[test]
fn criterion_06_fisher_information_decay() {
    let mut worst = 0.0f64;
    for ch in [gg(1.0), channel(t3(), gaussian(), 1.0)] {
        let rep = run_verifier("fisher_decay", &ch).unwrap();
        worst = worst.max(rep.abs_residual);
        assert!(
            rep.abs_residual <= 1e-3,
            "{}: residual {}",
            rep.channel_desc,
            rep.abs_residual
        );
    }
    for a in [0.5, 1.0, 2.0] {
        let rep = run_verifier("fisher_decay", &gg(a)).unwrap();
        let exact = -1.0 / ((1.0 + a) * (1.0 + a));
        let err = (rep.lhs - exact).abs();
        worst = worst.max(err);
        assert!(err <= 1e-4, "a={a}: lhs {} vs {exact}", rep.lhs);
    }
    println!("PASS criterion 6: Fisher information decay rate, worst deviation {worst:.2e}");
}

#[test]
fn criterion_07_fisher_information_inequality() {
    let mut worst_gap = 0.0f64;
    for a in [0.5, 1.0, 2.0] {
        for prior in [gaussian(), t3()] {
            let ch = channel(prior.clone(), gaussian(), a);
            let rep = run_verifier("fisher_information_inequality", &ch).unwrap();
            let gap = rep.lhs - rep.rhs;
            assert!(gap >= -1e-6, "{}: gap {gap}", rep.channel_desc);
            if matches!(prior.law(), infolab::distributions::Law::Gaussian { .. }) {
                worst_gap = worst_gap.max(gap.abs());
                assert!(gap.abs() <= 1e-6, "gaussian equality violated: {gap}");
            }
        }
    }
    println!("PASS criterion 7: Fisher information inequality, worst gaussian |gap| {worst_gap:.2e}");
}

#[test]
fn criterion_08_bounds_ordering_along_the_sweep() {
    let (curve, build_time) = figure_curve();
    assert_eq!(curve.rows.len(), 41);
    for row in &curve.rows {
        assert!(
            row.ordered(),
            "snr {} dB: mmse {} new_lb {} bcrlb {} (tol {})",
            row.snr_db,
            row.mmse,
            row.new_lb,
            row.bcrlb,
            row.tolerance()
        );
    }
    assert!(
        *build_time < Duration::from_secs(300),
        "sweep took {build_time:?}"
    );
    // Gaussian prior: all three bounds coincide.
    let mut worst = 0.0f64;
    for a in [0.01, 1.0, 100.0] {
        let rep = check_ordering(&gg(a)).unwrap();
        worst = worst
            .max((rep.mmse - rep.bcrlb).abs())
            .max((rep.mmse - rep.new_lb).abs());
        assert!((rep.mmse - rep.bcrlb).abs() <= 1e-4, "a={a}");
        assert!((rep.mmse - rep.new_lb).abs() <= 1e-4, "a={a}");
    }
    println!(
        "PASS criterion 8: bound ordering at 41 sweep points in {build_time:.2?}, gaussian triple equality within {worst:.2e}"
    );
}

#[test]
fn criterion_09_gap_concentrates_at_low_snr() {
    let (curve, _) = figure_curve();
    let gap = |i: usize| curve.rows[i].new_lb - curve.rows[i].bcrlb;
    let low = gap(0);
    let high_idx = curve
        .rows
        .iter()
        .position(|r| (r.snr_db - 20.0).abs() < 1e-9)
        .expect("+20 dB grid point");
    let high = gap(high_idx);
    assert!(low > high, "low-SNR gap {low} vs +20 dB gap {high}");
    println!("PASS criterion 9: entropy-power bound gap {low:.3e} at -10 dB exceeds {high:.3e} at +20 dB");
}

#[test]
fn criterion_10_entropy_power_concavity() {
    let grid: Vec<f64> = (1..=10).map(|k| k as f64 / 10.0).collect();
    let mut worst = f64::NEG_INFINITY;
    for prior in [gaussian(), t3(), tn()] {
        let rep = costa_epi_check(&prior, &gaussian(), &grid).unwrap();
        for d in &rep.second_diffs {
            worst = worst.max(*d);
            assert!(*d <= 1e-5, "{}: second diff {d}", prior.describe());
        }
        for g in &rep.chord_gaps {
            assert!(*g >= -1e-6, "{}: chord gap {g}", prior.describe());
        }
        if matches!(prior.law(), infolab::distributions::Law::Gaussian { .. }) {
            for d in &rep.second_diffs {
                assert!(d.abs() <= 1e-5, "gaussian curvature {d}");
            }
        }
        if matches!(prior.law(), infolab::distributions::Law::StudentT { .. }) {
            // Strict concavity away from the Gaussian case; a = 0.5 sits at
            // interior index 3.
            assert!(rep.second_diffs[3] < -1e-4, "t3 curvature {}", rep.second_diffs[3]);
        }
    }
    println!("PASS criterion 10: entropy power concave along the noise scale, max second diff {worst:.2e}");
}

#[test]
fn criterion_11_kernel_pde_at_random_interior_points() {
    let families: [(&str, Distribution, Distribution); 3] = [
        ("gaussian", gaussian(), gaussian()),
        ("exponential", gamma(2.0), Distribution::exponential_unit()),
        ("gamma", gamma(2.0), gamma(3.0)),
    ];
    let mut worst = 0.0f64;
    for (tag, prior, noise) in families {
        let mut rng = ChaCha12Rng::seed_from_u64(0xACCE);
        let (x_lo, x_hi) = (prior.quantile(0.05).unwrap(), prior.quantile(0.95).unwrap());
        let (w_lo, w_hi) = (noise.quantile(0.05).unwrap(), noise.quantile(0.95).unwrap());
        for _ in 0..100 {
            let a = rng.random_range(0.3..3.0);
            let x = rng.random_range(x_lo..x_hi);
            let w = rng.random_range(w_lo..w_hi);
            let ch = channel(prior.clone(), noise.clone(), a);
            let y = x + a.sqrt() * w;
            let resid = ch.kernel_pde_residual(y, x).unwrap().abs();
            worst = worst.max(resid);
            assert!(resid <= 1e-5, "{tag} at (x={x}, w={w}, a={a}): residual {resid}");
        }
    }
    println!("PASS criterion 11: kernel PDE residual at 300 random interior points, worst {worst:.2e}");
}

#[test]
fn criterion_12_numerics_self_test() {
    // Unit mass for every constructor.
    let cfg = QuadratureConfig::default();
    let laws = [
        gaussian(),
        Distribution::gaussian(1.7, 2.3).unwrap(),
        Distribution::exponential_unit(),
        gamma(2.0),
        Distribution::gamma_dist(3.5, 0.7).unwrap(),
        t3(),
        Distribution::student_t(5.0).unwrap(),
        tn(),
    ];
    let mut worst_mass = 0.0f64;
    for dist in &laws {
        let sup = dist.support();
        let lo = if sup.lo.is_finite() {
            sup.lo
        } else {
            dist.quantile(1e-12).unwrap()
        };
        let hi = if sup.hi.is_finite() {
            sup.hi
        } else {
            dist.quantile(1.0 - 1e-12).unwrap()
        };
        let domain = Interval::new(lo, hi).unwrap();
        let core = Interval::new(
            dist.quantile(0.05).unwrap(),
            dist.quantile(0.95).unwrap(),
        )
        .unwrap();
        let mass = integrate_split(
            |x| Ok(dist.pdf(x)),
            domain,
            &geometric_ladder(core, domain),
            &cfg,
        )
        .unwrap();
        worst_mass = worst_mass.max((mass - 1.0).abs());
        assert!((mass - 1.0).abs() <= 1e-9, "{}: mass {mass}", dist.describe());
    }

    // Derivative operator exact on cubics.
    let mut worst_d = 0.0f64;
    for (a, b, c, d, x0) in [
        (1.0, -2.0, 3.0, 0.5, 0.3),
        (-0.7, 0.1, -4.0, 2.0, -1.4),
        (2.5, 1.0, 0.0, -3.0, 1.9),
    ] {
        let num = derivative(
            |x| Ok(((a * x + b) * x + c) * x + d),
            x0,
            DiffOrder::First,
            &DiffConfig::default(),
        )
        .unwrap();
        let exact = (3.0 * a * x0 + 2.0 * b) * x0 + c;
        let err = (num - exact).abs();
        worst_d = worst_d.max(err);
        assert!(err <= 1e-8 * exact.abs().max(1.0), "cubic derivative error {err}");
    }

    // Byte-identical seeded reruns, both raw sampling and the Monte Carlo
    // estimator stack.
    let first = sample(&t3(), 65_536, 7).unwrap();
    let second = sample(&t3(), 65_536, 7).unwrap();
    assert_eq!(first, second);
    let ch = channel(t3(), gaussian(), 1.0);
    let m1 = mmse(&ch, EstimationMethod::MonteCarlo, Some(100_000), Some(5)).unwrap();
    let m2 = mmse(&ch, EstimationMethod::MonteCarlo, Some(100_000), Some(5)).unwrap();
    assert_eq!(m1.value.to_bits(), m2.value.to_bits());

    println!(
        "PASS criterion 12: numerics self-test, worst mass error {worst_mass:.2e}, worst cubic derivative error {worst_d:.2e}, seeded reruns bitwise equal"
    );
}
