//! Exact class functions on symmetric groups.
//!
//! A class function assigns one rational value to each conjugacy class
//! (cycle type).  Inner products weight classes by `1/z_mu` where `z_mu` is
//! the centralizer order, so `<f, g> = (1/n!) sum_g f(g)* g(g)` without ever
//! enumerating the group.  Convolution is exact by group enumeration at
//! small degree and by character expansion beyond that.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::character::{dimension, mn_character};
use super::partition::{partitions, Partition};
use crate::comb::{big_pow, factorial};
use crate::permgroup::{enumerate, Permutation};
use crate::{Error, Result};

fn ratio(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}

/// Exact-rational function on the conjugacy classes of `S_n`.
#[derive(Clone, PartialEq, Eq)]
pub struct ClassFunction {
    n: usize,
    values: BTreeMap<Partition, BigRational>,
}

impl std::fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ClassFunction(n={}, {:?})", self.n, self.values)
    }
}

impl ClassFunction {
    /// Build from a value for every cycle type of `S_n`.
    pub fn from_fn(n: usize, mut f: impl FnMut(&Partition) -> BigRational) -> Self {
        let values = partitions(n)
            .into_iter()
            .map(|class| {
                let v = f(&class);
                (class, v)
            })
            .collect();
        ClassFunction { n, values }
    }

    /// The irreducible character labelled by `shape`, on all classes.
    pub fn character(shape: &Partition) -> Self {
        let n = shape.weight();
        ClassFunction::from_fn(n, |class| {
            BigRational::from(BigInt::from(
                mn_character(shape, class).expect("weights agree"),
            ))
        })
    }

    /// The class function `pi -> d^{c(pi)}` (cycle-count exponential).
    pub fn d_cycles(n: usize, d: u64) -> Self {
        ClassFunction::from_fn(n, |class| BigRational::from(big_pow(d, class.len())))
    }

    /// Uniform probability distribution on the class of `n`-cycles in `S_n`.
    pub fn n_cycle_uniform(n: usize) -> Self {
        // Class size (n-1)!, so the density is 1/(n-1)! on that class.
        let density = ratio(BigInt::one(), factorial(n - 1));
        ClassFunction::from_fn(n, |class| {
            if class.parts() == [n] {
                density.clone()
            } else {
                BigRational::zero()
            }
        })
    }

    /// Uniform probability distribution on the class of cycle type `(n, n)`
    /// in `S_{2n}`.
    pub fn double_cycle_uniform(n: usize) -> Self {
        let shape = Partition::from_unsorted(vec![n, n]);
        let class_size = factorial(2 * n) / shape.centralizer_order();
        let density = ratio(BigInt::one(), class_size);
        ClassFunction::from_fn(2 * n, |class| {
            if class == &shape {
                density.clone()
            } else {
                BigRational::zero()
            }
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn value(&self, class: &Partition) -> &BigRational {
        self.values
            .get(class)
            .unwrap_or_else(|| panic!("no value for class {class} in S_{}", self.n))
    }

    pub fn classes(&self) -> impl Iterator<Item = (&Partition, &BigRational)> {
        self.values.iter()
    }

    /// Inner product `(1/n!) sum_g f(g) g(g)` as a class-weighted sum
    /// (values here are rational, hence real, so no conjugation is needed).
    pub fn inner_product(&self, other: &Self) -> Result<BigRational> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch(self.n, other.n));
        }
        let mut acc = BigRational::zero();
        for (class, v) in &self.values {
            let w = other.values.get(class).expect("same class set");
            acc += v * w / BigRational::from(class.centralizer_order());
        }
        Ok(acc)
    }

    /// Convolution `(f * g)(pi) = sum_eta f(eta) g(eta^{-1} pi)`.
    ///
    /// Degrees up to `enum_cap` are handled by literal enumeration of the
    /// group; larger degrees use the Fourier route
    /// `f * g = sum_shape (n!/dim) <chi,f> <chi,g> chi`.
    pub fn convolve(&self, other: &Self, enum_cap: usize) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch(self.n, other.n));
        }
        if self.n <= enum_cap {
            self.convolve_by_enumeration(other)
        } else {
            self.convolve_by_characters(other)
        }
    }

    fn convolve_by_enumeration(&self, other: &Self) -> Result<Self> {
        let n = self.n;
        let group: Vec<Permutation> = enumerate(n, n)?.collect();
        let mut values = BTreeMap::new();
        for class in partitions(n) {
            let rep = class_representative(&class);
            let mut acc = BigRational::zero();
            for eta in &group {
                let left = self.values.get(&eta.cycle_type()).expect("class");
                let rest = eta.inverse().compose(&rep);
                let right = other.values.get(&rest.cycle_type()).expect("class");
                acc += left * right;
            }
            values.insert(class, acc);
        }
        Ok(ClassFunction { n, values })
    }

    fn convolve_by_characters(&self, other: &Self) -> Result<Self> {
        let n = self.n;
        let nf = BigRational::from(factorial(n));
        let mut out = ClassFunction::from_fn(n, |_| BigRational::zero());
        for shape in partitions(n) {
            let chi = ClassFunction::character(&shape);
            let a = chi.inner_product(self)?;
            let b = chi.inner_product(other)?;
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let scale = &a * &b * &nf / BigRational::from(BigInt::from(dimension(&shape)));
            for (class, v) in chi.values {
                *out.values.get_mut(&class).expect("class") += &scale * v;
            }
        }
        Ok(out)
    }
}

/// Canonical permutation with the given cycle type: consecutive blocks.
pub fn class_representative(class: &Partition) -> Permutation {
    let n = class.weight();
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut next = 1;
    for &len in class.parts() {
        cycles.push((next..next + len).collect());
        next += len;
    }
    let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
    Permutation::from_cycles(n, &refs).expect("valid cycles")
}
