//! Campaign statistics.

/// Deterministic pairwise sum: the result depends only on the slice
/// contents, not on thread scheduling, and keeps rounding error at
/// `O(log n)` depth.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 64 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Monte Carlo campaign summary.
#[derive(Debug, Clone, PartialEq)]
pub struct RunStats {
    pub trials: u64,
    pub mean: f64,
    /// Unbiased sample variance.
    pub variance: f64,
    /// Second raw sample moment over the squared sample mean.
    pub critical_ratio_estimate: f64,
    pub stderr_mean: f64,
    pub master_seed: u64,
}

impl RunStats {
    pub fn from_samples(samples: &[f64], master_seed: u64) -> RunStats {
        let t = samples.len() as f64;
        assert!(samples.len() >= 2, "need at least two trials");
        let mean = pairwise_sum(samples) / t;
        let deviations: Vec<f64> = samples.iter().map(|x| (x - mean) * (x - mean)).collect();
        let variance = pairwise_sum(&deviations) / (t - 1.0);
        let squares: Vec<f64> = samples.iter().map(|x| x * x).collect();
        let m2 = pairwise_sum(&squares) / t;
        let critical_ratio_estimate = m2 / (mean * mean);
        RunStats {
            trials: samples.len() as u64,
            mean,
            variance,
            critical_ratio_estimate,
            stderr_mean: (variance / t).sqrt(),
            master_seed,
        }
    }
}

/// Sample second raw moment and its standard error.
pub fn second_moment_with_stderr(samples: &[f64]) -> (f64, f64) {
    let t = samples.len() as f64;
    let squares: Vec<f64> = samples.iter().map(|x| x * x).collect();
    let m2 = pairwise_sum(&squares) / t;
    let dev: Vec<f64> = squares.iter().map(|q| (q - m2) * (q - m2)).collect();
    let var = pairwise_sum(&dev) / (t - 1.0);
    (m2, (var / t).sqrt())
}

/// Leave-one-out (jackknife) standard error of the critical-ratio estimate
/// `m2 / mean^2`.
pub fn jackknife_ratio_stderr(samples: &[f64]) -> f64 {
    let t = samples.len();
    assert!(t >= 3);
    let s1 = pairwise_sum(samples);
    let squares: Vec<f64> = samples.iter().map(|x| x * x).collect();
    let s2 = pairwise_sum(&squares);
    let tm1 = (t - 1) as f64;
    let thetas: Vec<f64> = samples
        .iter()
        .zip(squares.iter())
        .map(|(x, q)| {
            let m1 = (s1 - x) / tm1;
            let m2 = (s2 - q) / tm1;
            m2 / (m1 * m1)
        })
        .collect();
    let theta_bar = pairwise_sum(&thetas) / t as f64;
    let dev: Vec<f64> = thetas
        .iter()
        .map(|th| (th - theta_bar) * (th - theta_bar))
        .collect();
    (tm1 / t as f64 * pairwise_sum(&dev)).sqrt()
}

/// Mean and standard error of a derived per-trial quantity.
pub fn mean_with_stderr(samples: &[f64]) -> (f64, f64) {
    let t = samples.len() as f64;
    let mean = pairwise_sum(samples) / t;
    let dev: Vec<f64> = samples.iter().map(|x| (x - mean) * (x - mean)).collect();
    let var = pairwise_sum(&dev) / (t - 1.0);
    (mean, (var / t).sqrt())
}
