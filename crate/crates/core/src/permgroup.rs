//! Exact combinatorics of the symmetric group `S_n`.
//!
//! Permutations are stored in one-line notation with 1-based points, so the
//! special elements used throughout the moment calculus — the rotation
//! `(1 2 ... n)`, the block embedding `(p, q)` of `S_n x S_n` into `S_{2n}`,
//! and the involutions `w_k = (1 n+1)(2 n+2)...(k n+k)` — transcribe
//! directly.  All values are immutable; composition and friends return new
//! permutations.

use crate::charlib::Partition;
use crate::{Error, Result};
use rand::Rng;

/// A bijection of `{1, ..., n}` in one-line notation: `images[i-1]` is the
/// image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl std::fmt::Debug for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Permutation{:?}", self.images)
    }
}

impl std::fmt::Display for Permutation {
    /// Cycle notation, fixed points suppressed; the identity prints as `()`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut printed = false;
        for cycle in self.cycles() {
            if cycle.len() < 2 {
                continue;
            }
            printed = true;
            write!(f, "(")?;
            for (pos, pt) in cycle.iter().enumerate() {
                if pos > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{pt}")?;
            }
            write!(f, ")")?;
        }
        if !printed {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl Permutation {
    /// The identity of `S_n`.
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "degree must be positive");
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// Build from one-line images; fails unless `images` is a bijection of
    /// `{1, ..., n}`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidInput("degree must be positive".into()));
        }
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidInput(format!(
                    "images {images:?} are not a bijection of 1..={n}"
                )));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { images })
    }

    /// Build from disjoint cycles on `{1, ..., n}`; points not mentioned are
    /// fixed.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (pos, &pt) in cycle.iter().enumerate() {
                if pt == 0 || pt > n {
                    return Err(Error::OutOfRange {
                        what: "cycle point",
                        value: pt,
                        max: n,
                    });
                }
                if touched[pt - 1] {
                    return Err(Error::InvalidInput(format!("cycles reuse point {pt}")));
                }
                touched[pt - 1] = true;
                images[pt - 1] = cycle[(pos + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }

    /// Composition `self o other`: maps `i` to `self(other(i))`.
    ///
    /// Panics on a degree mismatch — composing across different groups is a
    /// programming error, not a runtime condition.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(
            self.degree(),
            other.degree(),
            "degree mismatch in composition"
        );
        let images = other.images.iter().map(|&v| self.images[v - 1]).collect();
        Permutation { images }
    }

    /// Cycle decomposition, each cycle led by its smallest point, cycles
    /// ordered by leading point.  Fixed points appear as singletons.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start - 1] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start - 1] = true;
            let mut next = self.apply(start);
            while next != start {
                seen[next - 1] = true;
                cycle.push(next);
                next = self.apply(next);
            }
            out.push(cycle);
        }
        out
    }

    /// Number of cycles, fixed points included.
    pub fn cycle_count(&self) -> usize {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 1..=n {
            if seen[start - 1] {
                continue;
            }
            count += 1;
            let mut next = start;
            loop {
                seen[next - 1] = true;
                next = self.apply(next);
                if next == start {
                    break;
                }
            }
        }
        count
    }

    /// Sign `(-1)^(n - cycle_count)`.
    pub fn sign(&self) -> i64 {
        if (self.degree() - self.cycle_count()) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Cycle type as a partition of `n`.
    pub fn cycle_type(&self) -> Partition {
        Partition::from_unsorted(self.cycles().iter().map(|c| c.len()).collect())
    }
}

/// Cycle type of `p`; constant on conjugacy classes.
pub fn conjugacy_class_of(p: &Permutation) -> Partition {
    p.cycle_type()
}

/// Commutator `b r b^{-1} r^{-1}`.
pub fn commutator(b: &Permutation, r: &Permutation) -> Permutation {
    assert_eq!(b.degree(), r.degree(), "degree mismatch in commutator");
    b.compose(r).compose(&b.inverse()).compose(&r.inverse())
}

/// Conjugate `q^{-1} p q`.
pub fn conjugate(p: &Permutation, q: &Permutation) -> Permutation {
    assert_eq!(p.degree(), q.degree(), "degree mismatch in conjugation");
    q.inverse().compose(p).compose(q)
}

/// The rotation `(1 2 ... n)`: maps `i` to `i + 1`, and `n` to `1`.
pub fn rotation(n: usize) -> Permutation {
    assert!(n >= 1);
    let images = (1..=n).map(|i| if i == n { 1 } else { i + 1 }).collect();
    Permutation { images }
}

/// The element `(p, q)` of `S_{2n}` acting as `p` on `{1..n}` and as `q` on
/// `{n+1..2n}`.
pub fn block_embed(p: &Permutation, q: &Permutation) -> Permutation {
    assert_eq!(p.degree(), q.degree(), "degree mismatch in block embedding");
    let n = p.degree();
    let mut images = Vec::with_capacity(2 * n);
    images.extend(p.images.iter().copied());
    images.extend(q.images.iter().map(|&v| v + n));
    Permutation { images }
}

/// The involution `w_k = (1 n+1)(2 n+2)...(k n+k)` in `S_{2n}`; `w_0` is the
/// identity.
pub fn w_involution(n: usize, k: usize) -> Result<Permutation> {
    if k > n {
        return Err(Error::OutOfRange {
            what: "w_k crossing count",
            value: k,
            max: n,
        });
    }
    let mut images: Vec<usize> = (1..=2 * n).collect();
    for i in 1..=k {
        images[i - 1] = n + i;
        images[n + i - 1] = i;
    }
    Ok(Permutation { images })
}

/// Streaming enumeration of `S_n` in lexicographic order of one-line images.
pub struct Permutations {
    next: Option<Vec<usize>>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let out = Permutation {
            images: current.clone(),
        };
        // Classic next-permutation step.
        let mut v = current;
        let n = v.len();
        let mut i = n;
        for j in (1..n).rev() {
            if v[j - 1] < v[j] {
                i = j;
                break;
            }
        }
        if i == n {
            self.next = None;
        } else {
            let pivot = i - 1;
            let mut j = n - 1;
            while v[j] <= v[pivot] {
                j -= 1;
            }
            v.swap(pivot, j);
            v[i..].reverse();
            self.next = Some(v);
        }
        Some(out)
    }
}

/// Enumerate all of `S_n`, each element exactly once, starting from the
/// identity; errors when `n` exceeds `cap`.
pub fn enumerate(n: usize, cap: usize) -> Result<Permutations> {
    if n > cap {
        return Err(Error::CapExceeded {
            what: "symmetric group enumeration",
            n,
            cap,
        });
    }
    assert!(n >= 1);
    Ok(Permutations {
        next: Some((1..=n).collect()),
    })
}

/// Uniform sample from `S_n` by Fisher–Yates on the supplied generator.
pub fn sample_uniform<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
    assert!(n >= 1);
    let mut images: Vec<usize> = (1..=n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        images.swap(i, j);
    }
    Permutation { images }
}
