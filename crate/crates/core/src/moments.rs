//! Moment constants of the estimators, in exact rational arithmetic.
//!
//! The first moment constant `a_d` of the symmetrized estimator is computed
//! by three independent routes — closed form, brute-force enumeration of the
//! commutator cycle statistic, and character expansion — and the second
//! moment constants `a_d^(2)` / `~a_d^(2)` by quadruple enumeration, a
//! single-permutation class reduction, and a Kostka-number expansion.  Exact
//! routes must agree bit-for-bit; any disagreement means a combinatorial bug
//! somewhere, which is the reason everything here avoids floating point.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::caps;
use crate::charlib::{dimension, kostka, partitions_max_len, t_n_family, ClassFunction, Partition};
use crate::comb::{big_pow, binomial, factorial};
use crate::permgroup::{
    block_embed, commutator, conjugate, enumerate, rotation, sample_uniform, Permutation,
};
use crate::rng::RngStream;
use crate::{Error, Result};

fn ratio(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}

/// Closed form for `a_d`: `C(n+d, n+1)/d^n`, minus `C(d, n+1)/d^n` once
/// `d > n`.
pub fn a_d_closed(n: usize, d: u64) -> BigRational {
    assert!(n >= 1 && d >= 1);
    let mut num = binomial(n + d as usize, n + 1);
    if d as usize > n {
        num -= binomial(d as usize, n + 1);
    }
    ratio(num, big_pow(d, n))
}

/// Histogram of `c([beta, r])` over all `beta` in `S_n`, indexed by cycle
/// count `1..=n`.
fn commutator_cycle_histogram(n: usize, cap: usize) -> Result<Vec<u64>> {
    let r = rotation(n);
    let mut hist = vec![0u64; n + 1];
    for beta in enumerate(n, cap)? {
        hist[commutator(&beta, &r).cycle_count()] += 1;
    }
    Ok(hist)
}

/// Brute-force `a_d`: the average of `d^{c([beta, r])}` over `S_n`, divided
/// by `d^n`.
pub fn a_d_bruteforce(n: usize, d: u64, cap: usize) -> Result<BigRational> {
    assert!(n >= 1 && d >= 1);
    let hist = commutator_cycle_histogram(n, cap)?;
    let mut sum = BigInt::zero();
    for (c, &count) in hist.iter().enumerate().skip(1) {
        sum += BigInt::from(count) * big_pow(d, c);
    }
    Ok(ratio(sum, factorial(n) * big_pow(d, n)))
}

/// Character route for `a_d`: expand the convolution square of the
/// `n`-cycle distribution over the hook characters and pair with the
/// cycle-count class function.
///
/// Only hooks can appear in the expansion, so the sum runs over
/// `t = 0..n-1`.
pub fn a_d_character(n: usize, d: u64) -> BigRational {
    assert!(n >= 1 && d >= 1);
    let p = ClassFunction::n_cycle_uniform(n);
    let pp = p.convolve(&p, caps::CLASS_ENUM).expect("equal degrees");
    let dcyc = ClassFunction::d_cycles(n, d);
    let mut acc = BigRational::zero();
    for t in 0..n {
        let chi = ClassFunction::character(&crate::charlib::hook(n, t).expect("t < n"));
        let weight = pp.inner_product(&chi).expect("equal degrees");
        if weight.is_zero() {
            continue;
        }
        acc += weight * dcyc.inner_product(&chi).expect("equal degrees");
    }
    acc * ratio(factorial(n), big_pow(d, n))
}

/// Cycle histograms of `(r^-1, r^-1)^(a,b) w_k (r, r)^(g, e) w_k` over all
/// quadruples `(a, b, g, e)` in `S_n^4`, one histogram per `k = 0..=n`.
/// `hist[k][c]` counts tuples whose product has `c` cycles in `S_{2n}`.
fn w_k_cycle_histograms(n: usize, cap: usize) -> Result<Arc<Vec<Vec<u64>>>> {
    type Cache = Mutex<HashMap<usize, Arc<Vec<Vec<u64>>>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "quadruple second-moment enumeration",
            n,
            cap,
        });
    }
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return Ok(hit.clone());
    }

    let group: Vec<Permutation> = enumerate(n, cap)?.collect();
    let r = rotation(n);
    let r_inv = r.inverse();
    // (x)^s = s^-1 x s, tabulated for every s.
    let conj_rinv: Vec<Vec<usize>> = group
        .iter()
        .map(|s| conjugate(&r_inv, s).images().to_vec())
        .collect();
    let conj_r: Vec<Vec<usize>> = group
        .iter()
        .map(|s| conjugate(&r, s).images().to_vec())
        .collect();
    let order = group.len();
    let two_n = 2 * n;

    let hist = (0..order)
        .into_par_iter()
        .map(|ai| {
            let ca = &conj_rinv[ai];
            let mut local = vec![vec![0u64; two_n + 1]; n + 1];
            let mut visited = vec![false; two_n];
            for cb in &conj_rinv {
                for cg in &conj_r {
                    for ce in &conj_r {
                        for (k, slot) in local.iter_mut().enumerate() {
                            // image of i under w_k.
                            let wk = |i: usize| -> usize {
                                if i <= k {
                                    n + i
                                } else if i > n && i <= n + k {
                                    i - n
                                } else {
                                    i
                                }
                            };
                            // left block pair (ca, cb), right block pair (cg, ce).
                            let left = |i: usize| -> usize {
                                if i <= n {
                                    ca[i - 1]
                                } else {
                                    n + cb[i - n - 1]
                                }
                            };
                            let right = |i: usize| -> usize {
                                if i <= n {
                                    cg[i - 1]
                                } else {
                                    n + ce[i - n - 1]
                                }
                            };
                            visited.iter_mut().for_each(|v| *v = false);
                            let mut cycles = 0usize;
                            for start in 1..=two_n {
                                if visited[start - 1] {
                                    continue;
                                }
                                cycles += 1;
                                let mut i = start;
                                loop {
                                    visited[i - 1] = true;
                                    i = left(wk(right(wk(i))));
                                    if i == start {
                                        break;
                                    }
                                }
                            }
                            slot[cycles] += 1;
                        }
                    }
                }
            }
            local
        })
        .reduce(
            || vec![vec![0u64; two_n + 1]; n + 1],
            |mut acc, local| {
                for (a, l) in acc.iter_mut().zip(local.iter()) {
                    for (x, y) in a.iter_mut().zip(l.iter()) {
                        *x += y;
                    }
                }
                acc
            },
        );

    let arc = Arc::new(hist);
    cache.lock().unwrap().insert(n, arc.clone());
    Ok(arc)
}

fn histogram_power_sum(hist: &[u64], d: u64) -> BigInt {
    let mut sum = BigInt::zero();
    for (c, &count) in hist.iter().enumerate() {
        if count > 0 {
            sum += BigInt::from(count) * big_pow(d, c);
        }
    }
    sum
}

/// Second-moment constant `a_d^(2)` by full quadruple enumeration:
/// `sum_k C(n,k) E d^{c(...w_k...)} / d^{2n}`.
pub fn a2_bruteforce(n: usize, d: u64, cap: usize) -> Result<BigRational> {
    a2_from_histograms(n, d, cap, false)
}

/// Reweighted second-moment constant `~a_d^(2)`: the `k`-th term carries
/// `C(n,k)^2`.
pub fn a2_tilde_bruteforce(n: usize, d: u64, cap: usize) -> Result<BigRational> {
    a2_from_histograms(n, d, cap, true)
}

fn a2_from_histograms(n: usize, d: u64, cap: usize, tilde: bool) -> Result<BigRational> {
    assert!(n >= 1 && d >= 1);
    let hist = w_k_cycle_histograms(n, cap)?;
    let tuples = factorial(n).pow(4);
    let mut acc = BigRational::zero();
    for (k, h) in hist.iter().enumerate() {
        let mut weight = binomial(n, k);
        if tilde {
            weight = &weight * &weight;
        }
        acc += ratio(weight * histogram_power_sum(h, d), tuples.clone());
    }
    Ok(acc / BigRational::from(big_pow(d, 2 * n)))
}

/// Monte Carlo estimates of `(a_d^(2), ~a_d^(2))` with standard errors, for
/// degrees beyond the quadruple-enumeration cap.
pub fn a2_sampled(n: usize, d: u64, samples: u64, stream: &RngStream) -> (f64, f64, f64, f64) {
    let r = rotation(n);
    let r_inv = r.inverse();
    let mut rng = stream.rng();
    let binoms: Vec<f64> = (0..=n)
        .map(|k| binomial(n, k).to_f64().expect("small binomial"))
        .collect();
    let dpow = (d as f64).powi(2 * n as i32);
    let (mut s1, mut s1sq, mut s2, mut s2sq) = (0.0, 0.0, 0.0, 0.0);
    for _ in 0..samples {
        let a = sample_uniform(n, &mut rng);
        let b = sample_uniform(n, &mut rng);
        let g = sample_uniform(n, &mut rng);
        let e = sample_uniform(n, &mut rng);
        let left = block_embed(&conjugate(&r_inv, &a), &conjugate(&r_inv, &b));
        let right = block_embed(&conjugate(&r, &g), &conjugate(&r, &e));
        let (mut z1, mut z2) = (0.0, 0.0);
        for (k, weight) in binoms.iter().enumerate() {
            let wk = crate::permgroup::w_involution(n, k).expect("k <= n");
            let prod = left.compose(&wk).compose(&right).compose(&wk);
            let v = (d as f64).powi(prod.cycle_count() as i32) / dpow;
            z1 += weight * v;
            z2 += weight * weight * v;
        }
        s1 += z1;
        s1sq += z1 * z1;
        s2 += z2;
        s2sq += z2 * z2;
    }
    let t = samples as f64;
    let m1 = s1 / t;
    let m2 = s2 / t;
    let se1 = ((s1sq / t - m1 * m1).max(0.0) / t).sqrt();
    let se2 = ((s2sq / t - m2 * m2).max(0.0) / t).sqrt();
    (m1, se1, m2, se2)
}

/// Class-reduction route for `~a_d^(2)`: a single average over `S_{2n}`,
/// `C(2n,n) E_s d^{c((r,r)^s (r,r))} / d^{2n}`.
pub fn a2_tilde_class(n: usize, d: u64, cap: usize) -> Result<BigRational> {
    assert!(n >= 1 && d >= 1);
    let two_n = 2 * n;
    if two_n > cap {
        return Err(Error::CapExceeded {
            what: "class-route second-moment enumeration",
            n: two_n,
            cap,
        });
    }
    let r = rotation(n);
    let rr = block_embed(&r, &r);
    let mut hist = vec![0u64; two_n + 1];
    for s in enumerate(two_n, cap)? {
        let c = conjugate(&rr, &s).compose(&rr).cycle_count();
        hist[c] += 1;
    }
    let sum = histogram_power_sum(&hist, d);
    Ok(ratio(
        binomial(two_n, n) * sum,
        factorial(two_n) * big_pow(d, two_n),
    ))
}

/// Per-`k` class-route histograms over `S_{2n}`: `hist[k][c]` counts the
/// permutations `s` with exactly `k` of `{1..n}` mapped above `n` and
/// `c = c((r^-1, r^-1) (r, r)^s)`.  Conditioned on `k`, these averages must
/// reproduce the quadruple enumeration.
pub fn w_k_class_histograms(n: usize, cap: usize) -> Result<Vec<Vec<u64>>> {
    let two_n = 2 * n;
    if two_n > cap {
        return Err(Error::CapExceeded {
            what: "class-route second-moment enumeration",
            n: two_n,
            cap,
        });
    }
    let r = rotation(n);
    let rr = block_embed(&r, &r);
    let rr_inv = rr.inverse();
    let mut hist = vec![vec![0u64; two_n + 1]; n + 1];
    for s in enumerate(two_n, cap)? {
        let k = (1..=n).filter(|&i| s.apply(i) > n).count();
        let c = rr_inv.compose(&conjugate(&rr, &s)).cycle_count();
        hist[k][c] += 1;
    }
    Ok(hist)
}

/// Character route for `~a_d^(2)`: expand over the double-ribbon family and
/// count semistandard tableaux,
/// `C(2n,n)/d^{2n} * sum_tau chi^2 (sum_contents K^tau) / dim tau`,
/// where contents run over all length-`d` compositions of `2n`.
pub fn a2_tilde_character(n: usize, d: u64) -> BigRational {
    assert!(n >= 1 && d >= 1);
    let two_n = 2 * n;
    let mut acc = BigRational::zero();
    for (shape, chi) in t_n_family(n) {
        let mut kostka_sum = BigInt::zero();
        for content in partitions_max_len(two_n, d as usize) {
            let k = kostka(&shape, &content).expect("equal weights");
            if k.is_zero() {
                continue;
            }
            kostka_sum += composition_count(&content, d as usize) * k;
        }
        let dim = BigInt::from(dimension(&shape));
        acc += ratio(BigInt::from(chi * chi) * kostka_sum, dim);
    }
    acc * ratio(binomial(two_n, n), big_pow(d, two_n))
}

/// Number of ways to arrange the parts of `p` into `slots` ordered
/// nonnegative positions (unused slots hold zero).
fn composition_count(p: &Partition, slots: usize) -> BigInt {
    let len = p.len();
    debug_assert!(len <= slots);
    let mut count = binomial(slots, len) * factorial(len);
    for (_, mult) in p.multiplicities() {
        count /= factorial(mult);
    }
    count
}

/// The trivial-character term of the expansion alone:
/// `C(2n,n) C(2n+d-1, 2n) / d^{2n}`, a lower bound for `~a_d^(2)`.
pub fn a2_tilde_trivial_term(n: usize, d: u64) -> BigRational {
    ratio(
        binomial(2 * n, n) * binomial(2 * n + d as usize - 1, 2 * n),
        big_pow(d, 2 * n),
    )
}

/// Both sides' values for the moment sandwich, all exact.
#[derive(Debug, Clone)]
pub struct SandwichReport {
    pub n: usize,
    pub d: u64,
    pub a2: BigRational,
    pub a2_tilde: BigRational,
    /// `~a / C(n, floor(n/2))`, the lower clamp on `a2`.
    pub tilde_floor: BigRational,
    /// `C(2n,n) C(2n+d-1,2n) / d^{2n}`, the lower clamp on `~a`.
    pub binomial_lower: BigRational,
    /// `4 n^2` times the lower clamp, the upper clamp on `~a`.
    pub binomial_upper: BigRational,
}

/// Verify `~a/C(n, floor(n/2)) <= a2 <= ~a` together with the binomial
/// clamps on `~a`; a violation reports every value involved.
///
/// For odd `n` the central binomial is read at `floor(n/2)`.
pub fn sandwich_check(n: usize, d: u64, cap: usize) -> Result<SandwichReport> {
    let a2 = a2_bruteforce(n, d, cap)?;
    let a2_tilde = a2_tilde_bruteforce(n, d, cap)?;
    let central = BigRational::from(binomial(n, n / 2));
    let tilde_floor = &a2_tilde / &central;
    let binomial_lower = a2_tilde_trivial_term(n, d);
    let binomial_upper = &binomial_lower * BigRational::from(BigInt::from(4 * n * n));
    let report = SandwichReport {
        n,
        d,
        a2: a2.clone(),
        a2_tilde: a2_tilde.clone(),
        tilde_floor: tilde_floor.clone(),
        binomial_lower: binomial_lower.clone(),
        binomial_upper: binomial_upper.clone(),
    };
    if !(tilde_floor <= a2 && a2 <= a2_tilde) {
        return Err(Error::InvalidInput(format!(
            "sandwich violated at n={n}, d={d}: floor {tilde_floor} | a2 {a2} | tilde {a2_tilde}"
        )));
    }
    if !(binomial_lower <= a2_tilde && a2_tilde <= binomial_upper) {
        return Err(Error::InvalidInput(format!(
            "binomial clamp violated at n={n}, d={d}: {binomial_lower} | tilde {a2_tilde} | {binomial_upper}"
        )));
    }
    Ok(report)
}

/// Exact second-over-squared-first moment ratios for the identity instance
/// under the Gaussian measure.
#[derive(Debug, Clone)]
pub struct IdentityRatios {
    /// `(1 + 1/d)^n + (1 - 1/d)^n`, the plain-determinant estimator ratio.
    pub unsym_gaussian_ratio: BigRational,
    /// `a_d^(2) / a_d^2`, the symmetrized-estimator ratio.
    pub sym_gaussian_ratio: BigRational,
}

pub fn identity_matrix_ratios(n: usize, d: u64, cap: usize) -> Result<IdentityRatios> {
    let dp = big_pow(d, n);
    let plus = num_traits::pow::pow(BigInt::from(d + 1), n);
    let minus = num_traits::pow::pow(BigInt::from(d - 1), n);
    let unsym = ratio(plus + minus, dp);
    let a_d = a_d_closed(n, d);
    let sym = a2_bruteforce(n, d, cap)? / (&a_d * &a_d);
    Ok(IdentityRatios {
        unsym_gaussian_ratio: unsym,
        sym_gaussian_ratio: sym,
    })
}

/// Concrete envelope and floor values for the symmetrized critical ratio.
#[derive(Debug, Clone)]
pub struct BoundProfiles {
    pub n: usize,
    pub d: u64,
    /// Soft envelope `4 exp(4 n^2 / d)`.
    pub envelope_exp: f64,
    /// Exact envelope `4 n^2 C(2n,n) C(2n+d-1,2n) / (d^{2n} a_d^2)`.
    pub envelope_exact: BigRational,
    /// Exact floor `C(2n,n) C(2n+d-1,2n) / (d^{2n} C(n,floor(n/2)) a_d^2)`.
    pub floor_exact: BigRational,
}

pub fn bound_profiles(n: usize, d: u64) -> BoundProfiles {
    let a_d = a_d_closed(n, d);
    let a_d_sq = &a_d * &a_d;
    let base = a2_tilde_trivial_term(n, d);
    let envelope_exact = &base * BigRational::from(BigInt::from(4 * n * n)) / &a_d_sq;
    let floor_exact = &base / (BigRational::from(binomial(n, n / 2)) * &a_d_sq);
    BoundProfiles {
        n,
        d,
        envelope_exp: 4.0 * (4.0 * (n * n) as f64 / d as f64).exp(),
        envelope_exact,
        floor_exact,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn rat(num: i64, den: i64) -> BigRational {
        ratio(BigInt::from(num), BigInt::from(den))
    }

    #[test]
    fn closed_form_examples() {
        for d in 1..=6 {
            assert_eq!(a_d_closed(1, d), rat(1, 1), "d={d}");
        }
        assert_eq!(a_d_closed(3, 2), rat(5, 8));
        // S_2 is abelian: every commutator is trivial, so the constant is 1.
        assert_eq!(a_d_closed(2, 3), rat(1, 1));
    }

    #[test]
    fn brute_force_agrees_with_closed_form_spot() {
        for n in 1..=5 {
            for d in 1..=4 {
                assert_eq!(
                    a_d_bruteforce(n, d, caps::ENUMERATION).unwrap(),
                    a_d_closed(n, d),
                    "n={n}, d={d}"
                );
            }
        }
    }

    #[test]
    fn character_route_agrees_spot() {
        for n in 1..=5 {
            for d in 1..=4 {
                assert_eq!(a_d_character(n, d), a_d_closed(n, d), "n={n}, d={d}");
            }
        }
    }

    #[test]
    fn brute_force_d_one_is_one() {
        assert_eq!(a_d_bruteforce(3, 1, caps::ENUMERATION).unwrap(), rat(1, 1));
    }

    #[test]
    fn rotation_power_floor() {
        // At least the n powers of the rotation commute with it, giving
        // a_d >= n/n!.
        for n in 1..=6 {
            for d in 1..=5 {
                let floor = ratio(BigInt::from(n), factorial(n));
                assert!(
                    a_d_bruteforce(n, d, caps::ENUMERATION).unwrap() >= floor,
                    "n={n}, d={d}"
                );
            }
        }
    }

    #[test]
    fn a_d_tends_to_the_rotation_floor_for_large_d() {
        // The closed form gives a_d -> n/n! as d grows (the floor from the
        // n powers of the rotation is asymptotically tight); for n <= 2
        // that limit equals 1.
        for n in 1..=5usize {
            let d = 1_000_000 * n as u64;
            let limit = ratio(BigInt::from(n), factorial(n));
            let dist = (a_d_closed(n, d) - &limit).abs() / &limit;
            assert!(dist < rat(1, 1000), "n={n}: {dist}");
        }
        // Monotone decrease in d beyond d = 1 for fixed n (observed trend).
        for n in 3..=5 {
            let mut prev = a_d_closed(n, 1);
            for d in 2..=12 {
                let cur = a_d_closed(n, d);
                assert!(cur <= prev, "n={n}, d={d}");
                prev = cur;
            }
        }
    }

    #[test]
    fn character_route_binomial_chain() {
        // The hook expansion sums to the closed-form numerator:
        // sum_t sum_k C(d,k) C(n-1,k-1) C(k-1,t) / C(n-1,t)
        //   == C(n+d,n+1) - C(d,n+1).
        for n in 1..=10usize {
            for d in 1..=10usize {
                let mut lhs = BigRational::zero();
                for t in 0..n {
                    for k in 1..=d.min(n) {
                        let num = binomial(d, k) * binomial(n - 1, k - 1) * binomial(k - 1, t);
                        lhs += ratio(num, binomial(n - 1, t));
                    }
                }
                let rhs = BigRational::from(binomial(n + d, n + 1) - binomial(d, n + 1));
                assert_eq!(lhs, rhs, "n={n}, d={d}");
            }
        }
    }

    #[test]
    fn quadruple_enumeration_trivial_degree() {
        // n = 1: the rotation is trivial, both k-terms contribute 1.
        for d in 1..=5 {
            assert_eq!(a2_bruteforce(1, d, caps::A2_QUADRUPLE).unwrap(), rat(2, 1));
            assert_eq!(
                a2_tilde_bruteforce(1, d, caps::A2_QUADRUPLE).unwrap(),
                rat(2, 1)
            );
        }
    }

    #[test]
    fn d_one_collapse() {
        // At d = 1 every cycle-count weight is 1: the sums collapse to
        // 2^n and C(2n, n).
        for n in 1..=4usize {
            assert_eq!(
                a2_bruteforce(n, 1, caps::A2_QUADRUPLE).unwrap(),
                BigRational::from(big_pow(2, n)),
                "n={n}"
            );
            assert_eq!(
                a2_tilde_bruteforce(n, 1, caps::A2_QUADRUPLE).unwrap(),
                BigRational::from(binomial(2 * n, n)),
                "n={n}"
            );
        }
        assert_eq!(a2_tilde_class(2, 1, caps::CLASS_ENUM).unwrap(), rat(6, 1));
    }

    #[test]
    fn tilde_routes_agree_small() {
        for n in 1..=3 {
            for d in 1..=3 {
                let brute = a2_tilde_bruteforce(n, d, caps::A2_QUADRUPLE).unwrap();
                let class = a2_tilde_class(n, d, caps::CLASS_ENUM).unwrap();
                let character = a2_tilde_character(n, d);
                assert_eq!(brute, class, "n={n}, d={d}");
                assert_eq!(brute, character, "n={n}, d={d}");
            }
        }
        assert_eq!(a2_tilde_class(1, 4, caps::CLASS_ENUM).unwrap(), rat(2, 1));
    }

    #[test]
    fn per_k_class_histograms_match_quadruple_route() {
        // Conditioned on the crossing number k, the single-permutation
        // reduction must reproduce the quadruple enumeration exactly.
        for n in 1..=3usize {
            let quad = w_k_cycle_histograms(n, caps::A2_QUADRUPLE).unwrap();
            let class = w_k_class_histograms(n, caps::CLASS_ENUM).unwrap();
            let tuples = factorial(n).pow(4);
            for k in 0..=n {
                let group_size = binomial(n, k).pow(2) * factorial(n).pow(2);
                for d in 1..=3u64 {
                    let quad_mean = ratio(histogram_power_sum(&quad[k], d), tuples.clone());
                    let class_mean =
                        ratio(histogram_power_sum(&class[k], d), group_size.clone());
                    assert_eq!(quad_mean, class_mean, "n={n}, k={k}, d={d}");
                }
            }
        }
    }

    #[test]
    fn trivial_term_is_a_lower_bound_on_tilde() {
        for n in 1..=3 {
            for d in 1..=3 {
                let tilde = a2_tilde_character(n, d);
                let trivial = a2_tilde_trivial_term(n, d);
                assert!(trivial <= tilde, "n={n}, d={d}");
            }
        }
    }

    #[test]
    fn sandwich_holds_small() {
        for n in 1..=3 {
            for d in 1..=3 {
                let report = sandwich_check(n, d, caps::A2_QUADRUPLE).unwrap();
                assert!(report.tilde_floor <= report.a2);
            }
        }
        // n = 1 degenerates: both sides equal 2.
        let r = sandwich_check(1, 2, caps::A2_QUADRUPLE).unwrap();
        assert_eq!(r.a2, rat(2, 1));
        assert_eq!(r.a2_tilde, rat(2, 1));
    }

    #[test]
    fn identity_ratio_examples() {
        // n = 1: E|tr s|^4 = 2 for a unit-variance complex Gaussian trace.
        for d in 1..=4 {
            let r = identity_matrix_ratios(1, d, caps::A2_QUADRUPLE).unwrap();
            assert_eq!(r.unsym_gaussian_ratio, rat(2, 1), "d={d}");
        }
        let r = identity_matrix_ratios(3, 2, caps::A2_QUADRUPLE).unwrap();
        assert_eq!(r.unsym_gaussian_ratio, rat(7, 2));
        let r11 = identity_matrix_ratios(1, 1, caps::A2_QUADRUPLE).unwrap();
        assert_eq!(r11.sym_gaussian_ratio, rat(2, 1));
    }

    #[test]
    fn bound_profiles_examples() {
        let b = bound_profiles(10, 400);
        let expected = 4.0 * std::f64::consts::E;
        assert!((b.envelope_exp - expected).abs() < 1e-9);
        for n in 1..=3 {
            for d in 1..=3 {
                let b = bound_profiles(n, d);
                let exact = identity_matrix_ratios(n, d, caps::A2_QUADRUPLE)
                    .unwrap()
                    .sym_gaussian_ratio;
                assert!(b.envelope_exact >= exact, "n={n}, d={d}");
                assert!(b.floor_exact <= exact, "n={n}, d={d}");
            }
        }
    }

    #[test]
    fn sampled_estimates_cover_the_exact_values() {
        let n = 3;
        let d = 2;
        let stream = RngStream::new(0x5EED).child(2);
        let (a2, se1, tilde, se2) = a2_sampled(n, d, 40_000, &stream);
        let exact_a2 = a2_bruteforce(n, d, caps::A2_QUADRUPLE)
            .unwrap()
            .to_f64()
            .unwrap();
        let exact_tilde = a2_tilde_bruteforce(n, d, caps::A2_QUADRUPLE)
            .unwrap()
            .to_f64()
            .unwrap();
        assert!((a2 - exact_a2).abs() <= 5.0 * se1, "{a2} vs {exact_a2}");
        assert!(
            (tilde - exact_tilde).abs() <= 5.0 * se2,
            "{tilde} vs {exact_tilde}"
        );
    }

    #[test]
    fn caps_are_enforced() {
        assert!(matches!(
            a2_bruteforce(5, 2, caps::A2_QUADRUPLE),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(
            a2_tilde_class(5, 2, caps::CLASS_ENUM),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(
            a_d_bruteforce(11, 2, caps::ENUMERATION),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn composition_count_examples() {
        // (1,1) into 3 slots: choose 2 of 3 positions, halves for equal parts.
        let p = Partition::new(vec![1, 1]).unwrap();
        assert_eq!(composition_count(&p, 3), BigInt::from(3));
        // (2,1) into 3 slots: 3 * 2 = 6 ordered placements.
        let q = Partition::new(vec![2, 1]).unwrap();
        assert_eq!(composition_count(&q, 3), BigInt::from(6));
        // Total compositions of m into `slots` parts is C(m + slots - 1, m).
        for m in 1..=6usize {
            for slots in 1..=4usize {
                let total: BigInt = partitions_max_len(m, slots)
                    .iter()
                    .map(|p| composition_count(p, slots))
                    .sum();
                assert_eq!(total, binomial(m + slots - 1, m), "m={m}, slots={slots}");
            }
        }
    }
}
