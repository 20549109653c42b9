//! Permanent estimators and Monte Carlo campaigns.
//!
//! An [`InstanceMatrix`] holds the nonnegative instance `A`.  A random
//! replacement matrix is built cell by cell as `sqrt(A_ij)` times a fresh
//! draw — a scalar sign, phase, or complex Gaussian for the classical
//! estimators, or a `d x d` matrix from the Gaussian or Haar measure for
//! the algebra estimators — and an estimator sample is the squared trace
//! norm or squared Frobenius norm of the chosen determinant.  Campaigns run
//! trials on derived substreams `(seed, [tag, trial])`, so results are
//! bit-identical regardless of thread scheduling.

mod stats;

pub use stats::{
    jackknife_ratio_stderr, mean_with_stderr, pairwise_sum, second_moment_with_stderr, RunStats,
};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use rayon::prelude::*;

use crate::caps;
use crate::determinants::{cayley_det, scalar_det, sdet_exact, AlgebraMatrix};
use crate::linalg::{
    frobenius_sq, sample_gaussian, sample_haar, sample_scalar_gaussian, trace, CMat, Measure,
};
use crate::rng::RngStream;
use crate::{Error, Result};

/// Nonnegative square instance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl InstanceMatrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty matrix".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(Error::InvalidInput(format!(
                    "row length {} in an order-{n} matrix",
                    row.len()
                )));
            }
            for &x in row {
                if !x.is_finite() || x < 0.0 {
                    return Err(Error::InvalidInput(format!("entry {x} not in [0, inf)")));
                }
                entries.push(x);
            }
        }
        Ok(InstanceMatrix { n, entries })
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1.0;
        }
        InstanceMatrix { n, entries }
    }

    pub fn ones(n: usize) -> Self {
        InstanceMatrix {
            n,
            entries: vec![1.0; n * n],
        }
    }

    pub fn from_zero_one(rows: &[&[u8]]) -> Self {
        InstanceMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&b| b as f64).collect())
                .collect(),
        )
        .expect("zero/one rows are valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn is_zero_one(&self) -> bool {
        self.entries.iter().all(|&x| x == 0.0 || x == 1.0)
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|&x| x.fract() == 0.0)
    }

    /// Parse the plain text format: `#` starts a comment line, the first
    /// data line holds `n`, then `n` lines of `n` whitespace-separated
    /// nonnegative entries.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("missing size line".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad size line: {e}")))?;
        if n == 0 {
            return Err(Error::Parse("matrix order must be positive".into()));
        }
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing row {}", i + 1)))?;
            let row: std::result::Result<Vec<f64>, _> =
                line.split_whitespace().map(str::parse::<f64>).collect();
            let row = row.map_err(|e| Error::Parse(format!("row {}: {e}", i + 1)))?;
            if row.len() != n {
                return Err(Error::Parse(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            rows.push(row);
        }
        if lines.next().is_some() {
            return Err(Error::Parse("trailing data after matrix rows".into()));
        }
        InstanceMatrix::from_rows(rows).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Serialize in the same format `parse` reads.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| format!("{}", self.get(i, j))).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Estimator families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EstimatorKind {
    /// Squared trace modulus of the row-ordered determinant over the algebra.
    Trace,
    /// Squared trace modulus of the symmetrized determinant.
    TraceSym,
    /// Squared Frobenius norm of the row-ordered determinant.
    Frobenius,
    /// Squared Frobenius norm of the symmetrized determinant.
    FrobeniusSym,
    /// Scalar determinant with independent signs.
    GgSign,
    /// Scalar determinant with independent unit-circle phases.
    UnitCircle,
    /// Scalar determinant with independent standard complex Gaussians.
    ScalarGaussian,
}

impl EstimatorKind {
    pub fn is_matrix_kind(self) -> bool {
        matches!(
            self,
            EstimatorKind::Trace
                | EstimatorKind::TraceSym
                | EstimatorKind::Frobenius
                | EstimatorKind::FrobeniusSym
        )
    }

    fn tag(self) -> u64 {
        match self {
            EstimatorKind::Trace => 1,
            EstimatorKind::TraceSym => 2,
            EstimatorKind::Frobenius => 3,
            EstimatorKind::FrobeniusSym => 4,
            EstimatorKind::GgSign => 5,
            EstimatorKind::UnitCircle => 6,
            EstimatorKind::ScalarGaussian => 7,
        }
    }
}

impl std::fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            EstimatorKind::Trace => "trace",
            EstimatorKind::TraceSym => "trace_sym",
            EstimatorKind::Frobenius => "frobenius",
            EstimatorKind::FrobeniusSym => "frobenius_sym",
            EstimatorKind::GgSign => "gg_sign",
            EstimatorKind::UnitCircle => "unit_circle",
            EstimatorKind::ScalarGaussian => "scalar_gaussian",
        };
        write!(f, "{name}")
    }
}

impl std::str::FromStr for EstimatorKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "trace" => EstimatorKind::Trace,
            "trace_sym" => EstimatorKind::TraceSym,
            "frobenius" => EstimatorKind::Frobenius,
            "frobenius_sym" => EstimatorKind::FrobeniusSym,
            "gg_sign" => EstimatorKind::GgSign,
            "unit_circle" => EstimatorKind::UnitCircle,
            "scalar_gaussian" => EstimatorKind::ScalarGaussian,
            other => return Err(Error::Parse(format!("unknown estimator `{other}`"))),
        })
    }
}

/// A fully specified estimator: the matrix kinds carry a measure and an
/// algebra dimension, the scalar kinds carry neither.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EstimatorSpec {
    pub kind: EstimatorKind,
    pub measure: Option<Measure>,
    pub d: Option<usize>,
}

impl EstimatorSpec {
    pub fn matrix(kind: EstimatorKind, measure: Measure, d: usize) -> Self {
        EstimatorSpec {
            kind,
            measure: Some(measure),
            d: Some(d),
        }
    }

    pub fn scalar(kind: EstimatorKind) -> Self {
        EstimatorSpec {
            kind,
            measure: None,
            d: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.kind.is_matrix_kind() {
            match (self.measure, self.d) {
                (Some(_), Some(d)) if d >= 1 => Ok(()),
                _ => Err(Error::InvalidSpec(format!(
                    "estimator `{}` needs a measure and an algebra dimension d >= 1",
                    self.kind
                ))),
            }
        } else if self.measure.is_some() || self.d.is_some() {
            Err(Error::InvalidSpec(format!(
                "estimator `{}` takes neither a measure nor a dimension",
                self.kind
            )))
        } else {
            Ok(())
        }
    }

    fn tag(&self) -> u64 {
        let measure_tag = match self.measure {
            None => 0,
            Some(Measure::Gaussian) => 1,
            Some(Measure::Haar) => 2,
        };
        self.kind.tag() * 1_000_000 + measure_tag * 100_000 + self.d.unwrap_or(0) as u64
    }
}

/// Replace each nonzero `A_ij` with `sqrt(A_ij)` times a fresh draw from the
/// spec's measure; zeros become structural zero markers.
pub fn build_random_instance<R: Rng + ?Sized>(
    a: &InstanceMatrix,
    spec: &EstimatorSpec,
    rng: &mut R,
) -> Result<AlgebraMatrix> {
    spec.validate()?;
    if !spec.kind.is_matrix_kind() {
        return Err(Error::InvalidSpec(format!(
            "`{}` is not an algebra estimator",
            spec.kind
        )));
    }
    let d = spec.d.expect("validated");
    let measure = spec.measure.expect("validated");
    let n = a.n();
    let mut m = AlgebraMatrix::zero(n, d);
    for i in 0..n {
        for j in 0..n {
            let weight = a.get(i, j);
            if weight == 0.0 {
                continue;
            }
            let draw = match measure {
                Measure::Gaussian => sample_gaussian(d, rng),
                Measure::Haar => sample_haar(d, rng),
            };
            m.set(i, j, draw * Complex64::new(weight.sqrt(), 0.0));
        }
    }
    Ok(m)
}

fn scalar_instance<R: Rng + ?Sized>(
    a: &InstanceMatrix,
    kind: EstimatorKind,
    rng: &mut R,
) -> CMat {
    let n = a.n();
    CMat::from_fn(n, n, |i, j| {
        let weight = a.get(i, j).sqrt();
        if weight == 0.0 {
            return Complex64::zero();
        }
        let rho = match kind {
            EstimatorKind::GgSign => {
                if rng.random::<bool>() {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(-1.0, 0.0)
                }
            }
            EstimatorKind::UnitCircle => {
                let theta = rng.random::<f64>() * std::f64::consts::TAU;
                Complex64::new(theta.cos(), theta.sin())
            }
            EstimatorKind::ScalarGaussian => sample_scalar_gaussian(rng),
            _ => unreachable!("matrix kinds handled elsewhere"),
        };
        rho * weight
    })
}

/// One estimator sample.
pub fn evaluate<R: Rng + ?Sized>(
    a: &InstanceMatrix,
    spec: &EstimatorSpec,
    rng: &mut R,
) -> Result<f64> {
    spec.validate()?;
    match spec.kind {
        EstimatorKind::GgSign | EstimatorKind::UnitCircle | EstimatorKind::ScalarGaussian => {
            let m = scalar_instance(a, spec.kind, rng);
            Ok(scalar_det(&m).norm_sqr())
        }
        EstimatorKind::Trace | EstimatorKind::Frobenius => {
            let m = build_random_instance(a, spec, rng)?;
            let det = cayley_det(&m, caps::CAYLEY)?;
            Ok(match spec.kind {
                EstimatorKind::Trace => trace(&det).norm_sqr(),
                _ => frobenius_sq(&det),
            })
        }
        EstimatorKind::TraceSym | EstimatorKind::FrobeniusSym => {
            let m = build_random_instance(a, spec, rng)?;
            let det = sdet_exact(&m, caps::SDET)?;
            Ok(match spec.kind {
                EstimatorKind::TraceSym => trace(&det).norm_sqr(),
                _ => frobenius_sq(&det),
            })
        }
    }
}

/// All trial values of a campaign, trial `t` drawn from the substream
/// `(master_seed, [spec tag, t])`.  Trials run in parallel; the output is
/// indexed by trial and therefore schedule-independent.
pub fn sample_campaign(
    a: &InstanceMatrix,
    spec: &EstimatorSpec,
    trials: u64,
    master_seed: u64,
) -> Result<Vec<f64>> {
    spec.validate()?;
    // Surface cap errors once, up front.
    let mut probe = RngStream::new(master_seed).child(spec.tag()).child(0).rng();
    evaluate(a, spec, &mut probe)?;
    let root = RngStream::new(master_seed).child(spec.tag());
    Ok((0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = root.child(t).rng();
            evaluate(a, spec, &mut rng).expect("validated spec")
        })
        .collect())
}

/// Summary statistics of a campaign; deterministic in
/// `(a, spec, trials, master_seed)`.
pub fn run_campaign(
    a: &InstanceMatrix,
    spec: &EstimatorSpec,
    trials: u64,
    master_seed: u64,
) -> Result<RunStats> {
    if trials < 2 {
        return Err(Error::InvalidInput("need at least two trials".into()));
    }
    let samples = sample_campaign(a, spec, trials, master_seed)?;
    Ok(RunStats::from_samples(&samples, master_seed))
}

/// Exact permanent value (big integer when every entry is integral).
#[derive(Debug, Clone, PartialEq)]
pub enum Permanent {
    Exact(BigInt),
    Approx(f64),
}

impl Permanent {
    pub fn to_f64(&self) -> f64 {
        match self {
            Permanent::Exact(v) => v.to_f64().expect("permanent fits in f64"),
            Permanent::Approx(v) => *v,
        }
    }
}

impl std::fmt::Display for Permanent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Permanent::Exact(v) => write!(f, "{v}"),
            Permanent::Approx(v) => write!(f, "{v}"),
        }
    }
}

/// Permanent by inclusion-exclusion over column subsets (Gray-code order,
/// `2^n` subsets, `O(n)` work each).
pub fn ryser_permanent(a: &InstanceMatrix, cap: usize) -> Result<Permanent> {
    let n = a.n();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "inclusion-exclusion permanent",
            n,
            cap,
        });
    }
    if a.is_integral() {
        let entries: Vec<BigInt> = a.entries.iter().map(|&x| BigInt::from(x as i64)).collect();
        Ok(Permanent::Exact(ryser_generic(
            n,
            &entries,
            BigInt::zero(),
        )))
    } else {
        Ok(Permanent::Approx(ryser_generic(n, &a.entries, 0.0)))
    }
}

fn ryser_generic<T>(n: usize, entries: &[T], zero: T) -> T
where
    T: Clone
        + std::ops::AddAssign
        + std::ops::SubAssign
        + std::ops::Neg<Output = T>
        + std::ops::Mul<Output = T>,
{
    let mut row_sums: Vec<T> = vec![zero.clone(); n];
    let mut acc = zero.clone();
    let mut prev_code: u64 = 0;
    for step in 1u64..(1 << n) {
        let code = step ^ (step >> 1);
        let flipped = (code ^ prev_code).trailing_zeros() as usize;
        if code & (1 << flipped) != 0 {
            for (i, rs) in row_sums.iter_mut().enumerate() {
                *rs += entries[i * n + flipped].clone();
            }
        } else {
            for (i, rs) in row_sums.iter_mut().enumerate() {
                *rs -= entries[i * n + flipped].clone();
            }
        }
        prev_code = code;
        let mut product = row_sums[0].clone();
        for rs in &row_sums[1..] {
            product = product * rs.clone();
        }
        if (n - code.count_ones() as usize) % 2 == 0 {
            acc += product;
        } else {
            acc -= product;
        }
    }
    acc
}

/// All permutations supported by the nonzero pattern of `a`.
fn support_permutations(a: &InstanceMatrix) -> Vec<Vec<usize>> {
    let n = a.n();
    let mut out = Vec::new();
    let mut cols = vec![0usize; n];
    let mut used = vec![false; n];
    fn rec(
        a: &InstanceMatrix,
        row: usize,
        cols: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = a.n();
        if row == n {
            out.push(cols.clone());
            return;
        }
        for j in 0..n {
            if !used[j] && a.get(row, j) != 0.0 {
                used[j] = true;
                cols[row] = j;
                rec(a, row + 1, cols, used, out);
                used[j] = false;
            }
        }
    }
    rec(a, 0, &mut cols, &mut used, &mut out);
    out
}

/// Evaluate `sum over double cycle covers C of 2^{t(C)}` for a zero/one
/// instance by enumerating ordered pairs of supported permutations, grouping
/// them by the edge multiset they cover, and asserting that each cover is
/// hit exactly `2^{t(C)}` times (`t(C)` = number of honest cycles, doubled
/// edges excluded).
pub fn cycle_cover_square(a: &InstanceMatrix, cap: usize) -> Result<BigInt> {
    let n = a.n();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "double cycle cover enumeration",
            n,
            cap,
        });
    }
    if !a.is_zero_one() {
        return Err(Error::InvalidInput(
            "cycle cover enumeration needs a zero/one matrix".into(),
        ));
    }
    let perms = support_permutations(a);
    let mut covers: std::collections::HashMap<Vec<u8>, u64> = std::collections::HashMap::new();
    for alpha in &perms {
        for beta in &perms {
            let mut key = vec![0u8; n * n];
            for i in 0..n {
                key[i * n + alpha[i]] += 1;
                key[i * n + beta[i]] += 1;
            }
            *covers.entry(key).or_default() += 1;
        }
    }
    let mut total = BigInt::zero();
    for (cover, count) in &covers {
        let t = cover_cycle_count(n, cover);
        assert_eq!(
            *count,
            1u64 << t,
            "cover hit {count} times, expected 2^{t}"
        );
        total += BigInt::from(*count);
    }
    Ok(total)
}

/// Number of nontrivial cycles in a double cover: connected components of
/// the single-multiplicity edges (each vertex there has exactly two).
fn cover_cycle_count(n: usize, cover: &[u8]) -> usize {
    let mut left_adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut right_adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            if cover[i * n + j] == 1 {
                left_adj[i].push(j);
                right_adj[j].push(i);
            }
        }
    }
    let mut seen_left = vec![false; n];
    let mut cycles = 0;
    for start in 0..n {
        if seen_left[start] || left_adj[start].is_empty() {
            continue;
        }
        cycles += 1;
        // Walk the alternating cycle: left -> right via one edge, back via
        // the other.
        let mut i = start;
        let mut j = left_adj[start][0];
        loop {
            seen_left[i] = true;
            // Arrive at right vertex j by edge (i, j); leave by its other edge.
            let &next_i = right_adj[j]
                .iter()
                .find(|&&x| x != i)
                .expect("degree two on cycle");
            let next_j = *left_adj[next_i]
                .iter()
                .find(|&&x| x != j)
                .expect("degree two on cycle");
            i = next_i;
            j = next_j;
            if i == start {
                break;
            }
        }
    }
    cycles
}

/// Shared-randomness comparison of the trace-squared and Frobenius
/// estimators on the same instances.
#[derive(Debug, Clone)]
pub struct FrobeniusReport {
    pub d: usize,
    pub trials: u64,
    pub trace_mean: f64,
    pub trace_stderr: f64,
    pub frob_mean: f64,
    pub frob_stderr: f64,
    pub trace_sq_mean: f64,
    pub frob_sq_mean: f64,
    pub first_moment_ratio: f64,
    pub second_moment_ratio: f64,
}

/// Estimate both estimators on shared draws and verify the rewiring bounds
/// `1/d <= E[X_F]/E[X] <= d` and `1/d^2 <= E[X_F^2]/E[X^2] <= d^2`, each
/// with a 5-standard-error slack on the defining linear combination.
pub fn frobenius_consistency(
    a: &InstanceMatrix,
    measure: Measure,
    d: usize,
    trials: u64,
    master_seed: u64,
) -> Result<FrobeniusReport> {
    let spec = EstimatorSpec::matrix(EstimatorKind::Trace, measure, d);
    let root = RngStream::new(master_seed).child(spec.tag()).child(0xF0B);
    let pairs: Vec<(f64, f64)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = root.child(t).rng();
            let m = build_random_instance(a, &spec, &mut rng).expect("matrix spec");
            let det = cayley_det(&m, caps::CAYLEY).expect("within cap");
            (trace(&det).norm_sqr(), frobenius_sq(&det))
        })
        .collect();
    let xs: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let fs: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    let (x_mean, x_se) = mean_with_stderr(&xs);
    let (f_mean, f_se) = mean_with_stderr(&fs);
    let (x2_mean, _) = second_moment_with_stderr(&xs);
    let (f2_mean, _) = second_moment_with_stderr(&fs);
    let df = d as f64;

    let check = |name: &str, deltas: Vec<f64>, upper: bool| -> Result<()> {
        let (mean, se) = mean_with_stderr(&deltas);
        let ok = if upper { mean <= 5.0 * se } else { mean >= -5.0 * se };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "{name} violated: mean {mean} vs 5 x stderr {se} \
                 (E[X] = {x_mean} +- {x_se}, E[X_F] = {f_mean} +- {f_se})"
            )))
        }
    };
    check(
        "E[X_F] <= d E[X]",
        pairs.iter().map(|(x, f)| f - df * x).collect(),
        true,
    )?;
    check(
        "E[X_F] >= E[X]/d",
        pairs.iter().map(|(x, f)| f - x / df).collect(),
        false,
    )?;
    check(
        "E[X_F^2] <= d^2 E[X^2]",
        pairs.iter().map(|(x, f)| f * f - df * df * x * x).collect(),
        true,
    )?;
    check(
        "E[X_F^2] >= E[X^2]/d^2",
        pairs.iter().map(|(x, f)| f * f - x * x / (df * df)).collect(),
        false,
    )?;

    Ok(FrobeniusReport {
        d,
        trials,
        trace_mean: x_mean,
        trace_stderr: x_se,
        frob_mean: f_mean,
        frob_stderr: f_se,
        trace_sq_mean: x2_mean,
        frob_sq_mean: f2_mean,
        first_moment_ratio: f_mean / x_mean,
        second_moment_ratio: f2_mean / x2_mean,
    })
}

/// The fixed zero/one test battery (orders 2 through 4, permanents
/// 2, 1, 2, 24, 5).
pub fn battery() -> Vec<InstanceMatrix> {
    vec![
        InstanceMatrix::ones(2),
        InstanceMatrix::identity(3),
        InstanceMatrix::from_zero_one(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]),
        InstanceMatrix::ones(4),
        InstanceMatrix::from_zero_one(&[
            &[1, 1, 0, 0],
            &[1, 1, 1, 0],
            &[0, 1, 1, 1],
            &[0, 0, 1, 1],
        ]),
    ]
}
