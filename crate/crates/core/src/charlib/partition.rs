//! Integer partitions and Young diagrams.

use num_bigint::BigInt;
use num_traits::One;

use crate::comb::factorial;
use crate::{Error, Result};

/// A partition: weakly decreasing positive parts.  The empty partition (of 0)
/// is allowed and serves as the recursion base for character calculations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl std::fmt::Debug for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Partition{:?}", self.parts)
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl Partition {
    /// Build from parts that must already be weakly decreasing and positive.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::InvalidInput(format!(
                    "parts {parts:?} are not weakly decreasing"
                )));
            }
        }
        if parts.contains(&0) {
            return Err(Error::InvalidInput("zero part in partition".into()));
        }
        Ok(Partition { parts })
    }

    /// Sort the given multiset of positive lengths into a partition; zeros
    /// are dropped.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// One-row partition `(n)`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Partition::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    /// One-column partition `(1, ..., 1)` of weight `n`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the parts.
    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Conjugate (transposed) diagram.
    pub fn conjugate(&self) -> Partition {
        if self.parts.is_empty() {
            return Partition::empty();
        }
        let cols = self.parts[0];
        let parts = (1..=cols)
            .map(|c| self.parts.iter().filter(|&&p| p >= c).count())
            .collect();
        Partition { parts }
    }

    /// Number of cells on the main diagonal.
    pub fn rank(&self) -> usize {
        self.parts
            .iter()
            .enumerate()
            .filter(|&(i, &p)| p > i)
            .count()
    }

    /// Frobenius coordinates `(b_i, a_i)`: for the `i`-th diagonal cell,
    /// `b_i` counts cells strictly to its right and `a_i` cells strictly
    /// below it.
    pub fn frobenius_coords(&self) -> Vec<(usize, usize)> {
        let conj = self.conjugate();
        (0..self.rank())
            .map(|i| (self.parts[i] - (i + 1), conj.parts[i] - (i + 1)))
            .collect()
    }

    /// Multiplicity of each part size.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((size, count)) if *size == p => *count += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Centralizer order `z = prod_k k^{m_k} m_k!` of a permutation with this
    /// cycle type; the conjugacy class has size `n!/z`.
    pub fn centralizer_order(&self) -> BigInt {
        let mut z = BigInt::one();
        for (size, count) in self.multiplicities() {
            z *= num_traits::pow::pow(BigInt::from(size), count);
            z *= factorial(count);
        }
        z
    }
}

/// All partitions of `n`, in descending lexicographic order: `(n)` first,
/// `(1,...,1)` last.
pub fn partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: current.clone(),
            });
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            current.push(part);
            rec(remaining - part, part, current, out);
            current.pop();
        }
    }
    rec(n, n.max(1), &mut current, &mut out);
    out
}

/// Partitions of `n` with at most `max_len` parts.
pub fn partitions_max_len(n: usize, max_len: usize) -> Vec<Partition> {
    partitions(n)
        .into_iter()
        .filter(|p| p.len() <= max_len)
        .collect()
}

/// The hook `(n - t, 1, ..., 1)` with `t` trailing ones (height `t + 1`).
pub fn hook(n: usize, t: usize) -> Result<Partition> {
    if n == 0 || t >= n {
        return Err(Error::OutOfRange {
            what: "hook height offset",
            value: t,
            max: n.saturating_sub(1),
        });
    }
    let mut parts = vec![n - t];
    parts.extend(std::iter::repeat_n(1, t));
    Ok(Partition { parts })
}

/// Whether the diagram is a hook.
pub fn is_hook(p: &Partition) -> bool {
    !p.is_empty() && p.parts[1..].iter().all(|&x| x == 1)
}
