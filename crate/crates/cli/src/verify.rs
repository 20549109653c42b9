//! Verification suites: every exact identity and statistical band the
//! library is supposed to satisfy, each reported as one `[PASS]`, `[FAIL]`,
//! or `[SKIP]` line.  Checks beyond the configured degree cap are skipped,
//! never silently dropped.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use permlab::caps;
use permlab::charlib::{hook, hook_dimension, kostka, mn_character, partitions, Partition};
use permlab::comb::{big_pow, binomial, factorial};
use permlab::determinants::{cayley_det, sdet_exact, sym_prod, AlgebraMatrix};
use permlab::estimators::{
    battery, cycle_cover_square, frobenius_consistency, run_campaign, ryser_permanent,
    sample_campaign, second_moment_with_stderr, EstimatorKind, EstimatorSpec, InstanceMatrix,
};
use permlab::linalg::{sample_gaussian, tensor_moment_4, Measure, RngStream};
use permlab::moments::{
    a2_bruteforce, a2_tilde_bruteforce, a2_tilde_character, a2_tilde_class, a_d_character,
    a_d_closed, sandwich_check,
};
use permlab::oracles::{literal_sdet, wick_gaussian_moment, DeltaTensor};
use permlab::permgroup::{commutator, enumerate, rotation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Exact,
    Statistical,
    AD,
    Characters,
    A2,
    Sandwich,
    CycleCover,
    Determinants,
    Tensor,
    Estimators,
    SecondMoment,
    Frobenius,
}

impl std::str::FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "all" => Suite::All,
            "exact" => Suite::Exact,
            "statistical" => Suite::Statistical,
            "a-d" => Suite::AD,
            "characters" => Suite::Characters,
            "a2" => Suite::A2,
            "sandwich" => Suite::Sandwich,
            "cycle-cover" => Suite::CycleCover,
            "determinants" => Suite::Determinants,
            "tensor" => Suite::Tensor,
            "estimators" => Suite::Estimators,
            "second-moment" => Suite::SecondMoment,
            "frobenius" => Suite::Frobenius,
            other => return Err(format!("unknown suite `{other}`")),
        })
    }
}

impl Suite {
    fn wants(self, leaf: Suite) -> bool {
        let exact = matches!(
            leaf,
            Suite::AD
                | Suite::Characters
                | Suite::A2
                | Suite::Sandwich
                | Suite::CycleCover
                | Suite::Determinants
        );
        match self {
            Suite::All => true,
            Suite::Exact => exact,
            Suite::Statistical => !exact,
            specific => specific == leaf,
        }
    }
}

/// Deliberate corruption for harness self-tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Off-by-one cycle statistic in the brute-force moment route.
    CycleCount,
}

impl std::str::FromStr for Fault {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "cycle-count" => Ok(Fault::CycleCount),
            other => Err(format!("unknown fault `{other}`")),
        }
    }
}

pub struct Config {
    pub suite: Suite,
    pub cap_n: Option<usize>,
    pub trials: u64,
    pub seed: u64,
    pub fault: Option<Fault>,
}

#[derive(Debug, Default)]
pub struct Report {
    pub passed: u64,
    pub failed: u64,
    pub skipped: u64,
}

impl Report {
    fn pass(&mut self, name: &str, inputs: &str) {
        self.passed += 1;
        println!("[PASS] {name} ({inputs})");
    }

    fn fail(&mut self, name: &str, inputs: &str, detail: &str) {
        self.failed += 1;
        println!("[FAIL] {name} ({inputs}): {detail}");
    }

    fn skip(&mut self, name: &str, inputs: &str, why: &str) {
        self.skipped += 1;
        println!("[SKIP] {name} ({inputs}): {why}");
    }

    fn check(&mut self, name: &str, inputs: &str, ok: bool, detail: impl FnOnce() -> String) {
        if ok {
            self.pass(name, inputs);
        } else {
            self.fail(name, inputs, &detail());
        }
    }
}

pub fn run(config: &Config) -> Report {
    let mut report = Report::default();
    if config.suite.wants(Suite::AD) {
        a_d_suite(config, &mut report);
    }
    if config.suite.wants(Suite::Characters) {
        characters_suite(config, &mut report);
    }
    if config.suite.wants(Suite::A2) {
        a2_suite(config, &mut report);
    }
    if config.suite.wants(Suite::Sandwich) {
        sandwich_suite(config, &mut report);
    }
    if config.suite.wants(Suite::CycleCover) {
        cycle_cover_suite(config, &mut report);
    }
    if config.suite.wants(Suite::Determinants) {
        determinants_suite(config, &mut report);
    }
    if config.suite.wants(Suite::Tensor) {
        tensor_suite(config, &mut report);
    }
    if config.suite.wants(Suite::Estimators) {
        estimators_suite(config, &mut report);
    }
    if config.suite.wants(Suite::SecondMoment) {
        second_moment_suite(config, &mut report);
    }
    if config.suite.wants(Suite::Frobenius) {
        frobenius_suite(config, &mut report);
    }
    report
}

fn cap(config: &Config, default: usize) -> usize {
    config.cap_n.map_or(default, |c| c.min(default))
}

/// Brute-force moment route with the cycle statistic corrupted by one —
/// used only to prove the three-route comparison catches a broken route.
fn faulty_a_d_bruteforce(n: usize, d: u64) -> BigRational {
    let r = rotation(n);
    let mut sum = BigInt::zero();
    for beta in enumerate(n, caps::ENUMERATION).expect("within cap") {
        let c = commutator(&beta, &r).cycle_count() + 1;
        sum += big_pow(d, c);
    }
    BigRational::new(sum, factorial(n) * big_pow(d, n))
}

fn a_d_suite(config: &Config, report: &mut Report) {
    let max_n = cap(config, 7);
    for n in 1..=7usize {
        if n > max_n {
            report.skip("a_d three-route", &format!("n={n}, d=1..8"), "beyond cap");
            continue;
        }
        for d in 1..=8u64 {
            let closed = a_d_closed(n, d);
            let brute = match config.fault {
                Some(Fault::CycleCount) => faulty_a_d_bruteforce(n, d),
                None => permlab::moments::a_d_bruteforce(n, d, caps::ENUMERATION)
                    .expect("within cap"),
            };
            let character = a_d_character(n, d);
            report.check(
                "a_d three-route",
                &format!("n={n}, d={d}"),
                closed == brute && closed == character,
                || format!("closed {closed} | brute {brute} | character {character}"),
            );
        }
    }
    for n in 1..=10usize {
        for d in 1..=10usize {
            let mut lhs = BigInt::zero();
            for k in 1..=d.min(n) {
                lhs += binomial(d, k) * binomial(n, k - 1);
            }
            let rhs = binomial(n + d, n + 1) - binomial(d, n + 1);
            report.check(
                "binomial identity",
                &format!("n={n}, d={d}"),
                lhs == rhs,
                || format!("{lhs} vs {rhs}"),
            );
        }
    }
}

fn characters_suite(config: &Config, report: &mut Report) {
    let max_n = cap(config, 7);
    for n in 1..=7usize {
        if n > max_n {
            report.skip("hook laws", &format!("n={n}"), "beyond cap");
            continue;
        }
        let full = Partition::row(n);
        let mut ok = true;
        let mut detail = String::new();
        for t in 0..n {
            let shape = hook(n, t).unwrap();
            let chi = mn_character(&shape, &full).unwrap();
            let want = if t % 2 == 0 { 1 } else { -1 };
            if chi != want {
                ok = false;
                detail = format!("chi_{t}([r]) = {chi}, expected {want}");
                break;
            }
            if hook_dimension(n, t).unwrap() != binomial(n - 1, t) {
                ok = false;
                detail = format!("dim chi_{t} != C({}, {t})", n - 1);
                break;
            }
            for content in partitions(n) {
                let got = kostka(&shape, &content).unwrap();
                let want = binomial(content.len() - 1, t);
                if got != want {
                    ok = false;
                    detail =
                        format!("K(hook t={t}, content {content}) = {got}, expected {want}");
                    break;
                }
            }
            if !ok {
                break;
            }
        }
        report.check("hook laws", &format!("n={n}"), ok, || detail);
    }
}

fn a2_suite(config: &Config, report: &mut Report) {
    let max_n = cap(config, 4);
    for n in 1..=4usize {
        if n > max_n {
            report.skip("~a two-route", &format!("n={n}, d=1..4"), "beyond cap");
            continue;
        }
        for d in 1..=4u64 {
            let brute = a2_tilde_bruteforce(n, d, caps::A2_QUADRUPLE).expect("within cap");
            let class = a2_tilde_class(n, d, caps::CLASS_ENUM).expect("within cap");
            let character = a2_tilde_character(n, d);
            report.check(
                "~a route agreement",
                &format!("n={n}, d={d}"),
                brute == class && brute == character,
                || format!("brute {brute} | class {class} | character {character}"),
            );
        }
    }
}

fn sandwich_suite(config: &Config, report: &mut Report) {
    let max_n = cap(config, 4);
    for n in 1..=4usize {
        if n > max_n {
            report.skip("moment sandwich", &format!("n={n}, d=1..4"), "beyond cap");
            continue;
        }
        for d in 1..=4u64 {
            match sandwich_check(n, d, caps::A2_QUADRUPLE) {
                Ok(_) => report.pass("moment sandwich", &format!("n={n}, d={d}")),
                Err(e) => report.fail("moment sandwich", &format!("n={n}, d={d}"), &e.to_string()),
            }
        }
    }
}

fn cycle_cover_suite(config: &Config, report: &mut Report) {
    let max_n = cap(config, 4);
    for n in 1..=3usize {
        if n > max_n {
            report.skip("cycle-cover identity", &format!("n={n}, exhaustive"), "beyond cap");
            continue;
        }
        let mut ok = true;
        let mut detail = String::new();
        for mask in 0u32..(1 << (n * n)) {
            let rows: Vec<Vec<f64>> = (0..n)
                .map(|i| (0..n).map(|j| ((mask >> (n * i + j)) & 1) as f64).collect())
                .collect();
            let a = InstanceMatrix::from_rows(rows).unwrap();
            let perm = ryser_permanent(&a, caps::RYSER).unwrap().to_f64() as i64;
            let covers = cycle_cover_square(&a, caps::CYCLE_COVER)
                .unwrap()
                .to_i64()
                .unwrap();
            if covers != perm * perm {
                ok = false;
                detail = format!("mask {mask}: covers {covers} vs perm^2 {}", perm * perm);
                break;
            }
        }
        report.check("cycle-cover identity", &format!("n={n}, exhaustive"), ok, || detail);
    }
    if max_n >= 4 {
        let mut rng = RngStream::new(config.seed).child(5).rng();
        let mut ok = true;
        let mut detail = String::new();
        for instance in 0..50 {
            let rows: Vec<Vec<f64>> = (0..4)
                .map(|_| {
                    (0..4)
                        .map(|_| if rng.random::<f64>() < 0.65 { 1.0 } else { 0.0 })
                        .collect()
                })
                .collect();
            let a = InstanceMatrix::from_rows(rows).unwrap();
            let perm = ryser_permanent(&a, caps::RYSER).unwrap().to_f64() as i64;
            let covers = cycle_cover_square(&a, caps::CYCLE_COVER)
                .unwrap()
                .to_i64()
                .unwrap();
            if covers != perm * perm {
                ok = false;
                detail = format!("instance {instance}: {covers} vs {}", perm * perm);
                break;
            }
        }
        report.check("cycle-cover identity", "n=4, 50 random", ok, || detail);
    } else {
        report.skip("cycle-cover identity", "n=4, 50 random", "beyond cap");
    }
}

fn determinants_suite(config: &Config, report: &mut Report) {
    let max_n = cap(config, 4);
    let mut rng = RngStream::new(config.seed).child(0xDE7).rng();

    let lit_n = max_n.min(3);
    let mut ok = true;
    let mut detail = String::new();
    for trial in 0..20 {
        let n = 1 + trial % lit_n;
        let mut m = AlgebraMatrix::zero(n, 2);
        for i in 0..n {
            for j in 0..n {
                if rng.random::<f64>() < 0.9 {
                    m.set(i, j, sample_gaussian(2, &mut rng));
                }
            }
        }
        let grouped = sdet_exact(&m, caps::SDET).unwrap();
        let literal = literal_sdet(&m, caps::LITERAL_SDET).unwrap();
        if (&grouped - &literal).norm() > 1e-10 * grouped.norm().max(1.0) {
            ok = false;
            detail = format!("trial {trial} (n={n})");
            break;
        }
    }
    report.check("sdet vs literal double sum", &format!("n<=({lit_n}), 1e-10"), ok, || detail);

    if max_n >= 4 {
        let mats: Vec<_> = (0..4).map(|_| sample_gaussian(2, &mut rng)).collect();
        let refs: Vec<&_> = mats.iter().collect();
        let by_ie = sym_prod(&refs, caps::SYM_PROD).unwrap();
        let mut avg = nalgebra::DMatrix::<Complex64>::zeros(2, 2);
        for p in enumerate(4, caps::ENUMERATION).unwrap() {
            let mut prod = nalgebra::DMatrix::<Complex64>::identity(2, 2);
            for i in 1..=4 {
                prod *= &mats[p.apply(i) - 1];
            }
            avg += prod;
        }
        avg /= Complex64::new(24.0, 0.0);
        report.check(
            "sym_prod vs ordering average",
            "n=4, 1e-10",
            (&by_ie - &avg).norm() <= 1e-10 * by_ie.norm().max(1.0),
            || "inclusion-exclusion disagrees with the 24-ordering average".into(),
        );
    } else {
        report.skip("sym_prod vs ordering average", "n=4", "beyond cap");
    }

    let mut ok = true;
    let mut detail = String::new();
    for n in 1..=max_n {
        let mut m = AlgebraMatrix::zero(n, 2);
        for i in 0..n {
            for j in 0..n {
                let z = Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
                m.set(i, j, nalgebra::DMatrix::identity(2, 2) * z);
            }
        }
        let cay = cayley_det(&m, caps::CAYLEY).unwrap();
        let sde = sdet_exact(&m, caps::SDET).unwrap();
        if (&cay - &sde).norm() > 1e-12 * cay.norm().max(1.0) {
            ok = false;
            detail = format!("n={n}");
            break;
        }
    }
    report.check(
        "commutative collapse",
        &format!("n<=({max_n}), 1e-12"),
        ok,
        || detail,
    );
}

fn tensor_suite(config: &Config, report: &mut Report) {
    for d in [1u64, 2, 3, 5] {
        report.check(
            "wick order-1 pattern",
            &format!("d={d}"),
            wick_gaussian_moment(1, d).unwrap() == DeltaTensor::cupcap(d),
            || "wick(1) differs from the normalized loop pair".into(),
        );
        let w2 = wick_gaussian_moment(2, d).unwrap();
        let coeff = BigRational::new(BigInt::one(), big_pow(d, 2));
        report.check(
            "wick order-2 pattern",
            &format!("d={d}"),
            w2.terms().len() == 2 && w2.terms().iter().all(|t| t.coeff == coeff),
            || format!("{} terms", w2.terms().len()),
        );
    }

    let d = 2usize;
    let mc = tensor_moment_4(
        Measure::Gaussian,
        d,
        config.trials,
        &RngStream::new(config.seed).child(60),
    );
    let expected: Vec<Complex64> = wick_gaussian_moment(2, d as u64)
        .unwrap()
        .to_dense(d)
        .iter()
        .map(|&x| Complex64::new(x, 0.0))
        .collect();
    let worst = mc.max_sigma_deviation(&expected);
    report.check(
        "gaussian fourth moment Monte Carlo",
        &format!("d={d}, trials={}", config.trials),
        worst < 5.0,
        || format!("worst deviation {worst:.2} sigma"),
    );

    for (i, d) in [2usize, 3].into_iter().enumerate() {
        let mc = tensor_moment_4(
            Measure::Haar,
            d,
            config.trials,
            &RngStream::new(config.seed).child(61 + i as u64),
        );
        let expected: Vec<Complex64> = DeltaTensor::haar_fourth(d as u64)
            .to_dense(d)
            .iter()
            .map(|&x| Complex64::new(x, 0.0))
            .collect();
        let worst = mc.max_sigma_deviation(&expected);
        report.check(
            "haar fourth moment Monte Carlo",
            &format!("d={d}, trials={}", config.trials),
            worst < 5.0,
            || format!("worst deviation {worst:.2} sigma"),
        );
    }
}

fn estimators_suite(config: &Config, report: &mut Report) {
    let max_n = cap(config, 4);
    let mut campaign = 0u64;
    for a in battery() {
        let n = a.n();
        if n > max_n {
            report.skip("estimator unbiasedness", &format!("n={n} battery entry"), "beyond cap");
            continue;
        }
        let perm = ryser_permanent(&a, caps::RYSER).unwrap().to_f64();
        for d in [2usize, 3] {
            for measure in [Measure::Gaussian, Measure::Haar] {
                for kind in [EstimatorKind::Trace, EstimatorKind::TraceSym] {
                    campaign += 1;
                    let spec = EstimatorSpec::matrix(kind, measure, d);
                    let stats =
                        run_campaign(&a, &spec, config.trials, config.seed.wrapping_add(campaign))
                            .unwrap();
                    let target = match kind {
                        EstimatorKind::TraceSym => {
                            perm * a_d_closed(n, d as u64).to_f64().unwrap()
                        }
                        _ => perm,
                    };
                    report.check(
                        "estimator unbiasedness",
                        &format!("{kind}/{measure}/d={d}/n={n}"),
                        (stats.mean - target).abs() <= 5.0 * stats.stderr_mean,
                        || {
                            format!(
                                "mean {} vs {target} (stderr {})",
                                stats.mean, stats.stderr_mean
                            )
                        },
                    );
                }
            }
        }
    }
}

fn second_moment_suite(config: &Config, report: &mut Report) {
    let max_n = cap(config, 4);
    for n in 1..=4usize {
        if n > max_n {
            report.skip("identity critical ratio", &format!("n={n}"), "beyond cap");
            continue;
        }
        for d in [2u64, 3] {
            let a = InstanceMatrix::identity(n);
            let spec = EstimatorSpec::matrix(EstimatorKind::Trace, Measure::Gaussian, d as usize);
            let samples = sample_campaign(
                &a,
                &spec,
                config.trials,
                config.seed.wrapping_add(800 + n as u64),
            )
            .unwrap();
            let stats = permlab::estimators::RunStats::from_samples(&samples, config.seed);
            let se = permlab::estimators::jackknife_ratio_stderr(&samples);
            let df = d as f64;
            let target = (1.0 + 1.0 / df).powi(n as i32) + (1.0 - 1.0 / df).powi(n as i32);
            report.check(
                "identity critical ratio",
                &format!("n={n}, d={d}"),
                (stats.critical_ratio_estimate - target).abs() <= 5.0 * se,
                || {
                    format!(
                        "ratio {} vs {target} (jackknife stderr {se})",
                        stats.critical_ratio_estimate
                    )
                },
            );
        }
    }
    if max_n >= 3 {
        let a = InstanceMatrix::identity(3);
        let spec = EstimatorSpec::matrix(EstimatorKind::TraceSym, Measure::Gaussian, 2);
        let samples =
            sample_campaign(&a, &spec, config.trials, config.seed.wrapping_add(850)).unwrap();
        let (m2, se2) = second_moment_with_stderr(&samples);
        let target = a2_bruteforce(3, 2, caps::A2_QUADRUPLE)
            .unwrap()
            .to_f64()
            .unwrap();
        report.check(
            "identity symmetrized second moment",
            "n=3, d=2",
            (m2 - target).abs() <= 5.0 * se2,
            || format!("second moment {m2} vs {target} (stderr {se2})"),
        );
    } else {
        report.skip("identity symmetrized second moment", "n=3, d=2", "beyond cap");
    }
}

fn frobenius_suite(config: &Config, report: &mut Report) {
    let max_n = cap(config, 4);
    for a in battery() {
        let n = a.n();
        if n > max_n {
            report.skip("frobenius rewiring bounds", &format!("n={n} battery entry"), "beyond cap");
            continue;
        }
        for d in [2usize, 3] {
            for measure in [Measure::Gaussian, Measure::Haar] {
                match frobenius_consistency(
                    &a,
                    measure,
                    d,
                    config.trials,
                    config.seed.wrapping_add(900 + d as u64),
                ) {
                    Ok(_) => report.pass(
                        "frobenius rewiring bounds",
                        &format!("n={n}, d={d}, {measure}"),
                    ),
                    Err(e) => report.fail(
                        "frobenius rewiring bounds",
                        &format!("n={n}, d={d}, {measure}"),
                        &e.to_string(),
                    ),
                }
            }
        }
    }
    for n in 1..=4usize {
        if n > max_n {
            report.skip("identity frobenius mean", &format!("n={n}"), "beyond cap");
            continue;
        }
        for d in [2usize, 3] {
            let a = InstanceMatrix::identity(n);
            let spec = EstimatorSpec::matrix(EstimatorKind::Frobenius, Measure::Gaussian, d);
            let stats = run_campaign(
                &a,
                &spec,
                config.trials,
                config.seed.wrapping_add(950 + n as u64),
            )
            .unwrap();
            report.check(
                "identity frobenius mean",
                &format!("n={n}, d={d}"),
                (stats.mean - d as f64).abs() <= 5.0 * stats.stderr_mean,
                || format!("mean {} vs {d} (stderr {})", stats.mean, stats.stderr_mean),
            );
        }
    }
}
