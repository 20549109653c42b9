//! Exact factorials and binomial coefficients on big integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// `base^exp` as a big integer.
pub fn big_pow(base: u64, exp: usize) -> BigInt {
    num_traits::pow::pow(BigInt::from(base), exp)
}
