//! Dense complex matrices and the two random-matrix measures.
//!
//! The working algebra is the full matrix algebra of `d x d` complex
//! matrices, represented as [`nalgebra`] dynamic matrices.  Two measures are
//! provided: the Gaussian measure (i.i.d. complex entries of mean 0 and
//! variance `1/d`) and the Haar measure on the unitary group, sampled by QR
//! of a Gaussian matrix with the R-diagonal phase correction — without the
//! phase fix the QR factor is not Haar distributed.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub use crate::rng::RngStream;

/// Dense complex matrix.
pub type CMat = DMatrix<Complex64>;

/// The two distributions on the matrix algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measure {
    /// i.i.d. complex Gaussian entries, mean 0, variance `1/d`.
    Gaussian,
    /// Uniform (Haar) distribution on the unitary group `U(d)`.
    Haar,
}

impl std::fmt::Display for Measure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Measure::Gaussian => write!(f, "gaussian"),
            Measure::Haar => write!(f, "haar"),
        }
    }
}

impl std::str::FromStr for Measure {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "gaussian" => Ok(Measure::Gaussian),
            "haar" => Ok(Measure::Haar),
            other => Err(crate::Error::Parse(format!("unknown measure `{other}`"))),
        }
    }
}

pub fn identity(d: usize) -> CMat {
    CMat::identity(d, d)
}

pub fn zeros(d: usize) -> CMat {
    CMat::zeros(d, d)
}

/// Conjugate transpose.
pub fn dagger(a: &CMat) -> CMat {
    a.adjoint()
}

/// Matrix trace.
pub fn trace(a: &CMat) -> Complex64 {
    a.trace()
}

/// Squared Frobenius norm: `tr(A A^dagger)`, equal to the sum of squared
/// entry moduli.
pub fn frobenius_sq(a: &CMat) -> f64 {
    a.norm_squared()
}

/// One matrix from the Gaussian measure: each entry has independent real and
/// imaginary parts of mean 0 and variance `1/(2d)`.
pub fn sample_gaussian<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMat {
    assert!(d >= 1);
    let scale = 1.0 / (2.0 * d as f64).sqrt();
    CMat::from_fn(d, d, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re * scale, im * scale)
    })
}

/// A standard complex Gaussian scalar (variance 1).
pub fn sample_scalar_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re / 2f64.sqrt(), im / 2f64.sqrt())
}

/// One Haar-distributed unitary: QR of a Gaussian matrix, with each column
/// of Q rotated by the phase of the corresponding R diagonal entry.
pub fn sample_haar<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMat {
    assert!(d >= 1);
    let g = sample_gaussian(d, rng);
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..d {
        let rjj = r[(j, j)];
        let norm = rjj.norm();
        // A zero diagonal has probability zero; keep the column as-is then.
        let phase = if norm > 0.0 {
            rjj / norm
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Monte Carlo estimate of a moment tensor `E[s (x) s (x) ... (x) s* ...]`.
///
/// Index order interleaves row and column per factor: for arity `2m` the
/// flat index is `(r_0, c_0, r_1, c_1, ..., r_{m-1}, c_{m-1})`, row-major.
#[derive(Debug, Clone)]
pub struct TensorMoment {
    d: usize,
    factors: usize,
    trials: u64,
    mean: Vec<Complex64>,
    stderr: Vec<f64>,
}

impl TensorMoment {
    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of matrix factors (2 for `s (x) s*`, 4 for the fourth moment).
    pub fn factors(&self) -> usize {
        self.factors
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    /// Flat index from per-factor `(row, col)` pairs.
    pub fn flat(&self, rc: &[(usize, usize)]) -> usize {
        assert_eq!(rc.len(), self.factors);
        let mut idx = 0;
        for &(r, c) in rc {
            idx = (idx * self.d + r) * self.d + c;
        }
        idx
    }

    pub fn mean(&self) -> &[Complex64] {
        &self.mean
    }

    pub fn stderr(&self) -> &[f64] {
        &self.stderr
    }

    /// Largest deviation from `expected`, in units of the per-entry standard
    /// error (entries with vanishing spread must match to `tiny`).
    pub fn max_sigma_deviation(&self, expected: &[Complex64]) -> f64 {
        assert_eq!(expected.len(), self.mean.len());
        let tiny = 1e-12;
        let mut worst: f64 = 0.0;
        for (i, (m, e)) in self.mean.iter().zip(expected.iter()).enumerate() {
            let dev = (m - e).norm();
            let se = self.stderr[i];
            if se < tiny {
                assert!(dev < tiny, "rigid entry {i} deviates by {dev}");
                continue;
            }
            worst = worst.max(dev / se);
        }
        worst
    }
}

fn sample_measure<R: Rng + ?Sized>(measure: Measure, d: usize, rng: &mut R) -> CMat {
    match measure {
        Measure::Gaussian => sample_gaussian(d, rng),
        Measure::Haar => sample_haar(d, rng),
    }
}

fn accumulate_moment(
    measure: Measure,
    d: usize,
    factors: usize,
    trials: u64,
    stream: &RngStream,
    conjugated: &[bool],
) -> TensorMoment {
    assert_eq!(conjugated.len(), factors);
    let len = (d * d).pow(factors as u32);
    let mut sum = vec![Complex64::new(0.0, 0.0); len];
    let mut sumsq = vec![0.0f64; len];
    let mut rng = stream.rng();
    let mut entries = vec![Complex64::new(0.0, 0.0); factors];
    for _ in 0..trials {
        let s = sample_measure(measure, d, &mut rng);
        // Walk all (row, col) tuples in row-major flat order.
        let mut counters = vec![0usize; 2 * factors];
        loop {
            for f in 0..factors {
                let v = s[(counters[2 * f], counters[2 * f + 1])];
                entries[f] = if conjugated[f] { v.conj() } else { v };
            }
            let z: Complex64 = entries.iter().product();
            let mut idx = 0;
            for &c in &counters {
                idx = idx * d + c;
            }
            sum[idx] += z;
            sumsq[idx] += z.norm_sqr();
            // Odometer increment.
            let mut pos = 2 * factors;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                counters[pos] += 1;
                if counters[pos] < d {
                    break;
                }
                counters[pos] = 0;
            }
            if counters.iter().all(|&c| c == 0) {
                break;
            }
        }
    }
    let t = trials as f64;
    let mean: Vec<Complex64> = sum.iter().map(|z| z / t).collect();
    let stderr: Vec<f64> = mean
        .iter()
        .zip(sumsq.iter())
        .map(|(m, &sq)| {
            let var = (sq / t - m.norm_sqr()).max(0.0);
            (var / t).sqrt()
        })
        .collect();
    TensorMoment {
        d,
        factors,
        trials,
        mean,
        stderr,
    }
}

/// Monte Carlo estimate of `E[s (x) s*]` (4 indices).
pub fn tensor_moment_2(measure: Measure, d: usize, trials: u64, stream: &RngStream) -> TensorMoment {
    accumulate_moment(measure, d, 2, trials, stream, &[false, true])
}

/// Monte Carlo estimate of `E[s (x) s (x) s* (x) s*]` (8 indices).
///
/// Keep `d` small: the estimate holds `d^8` complex entries.
pub fn tensor_moment_4(measure: Measure, d: usize, trials: u64, stream: &RngStream) -> TensorMoment {
    accumulate_moment(measure, d, 4, trials, stream, &[false, false, true, true])
}
