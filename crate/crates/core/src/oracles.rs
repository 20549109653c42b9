//! Independent ground-truth engines.
//!
//! These deliberately avoid the code paths they are used to check: moment
//! tensors are represented symbolically as sums of delta patterns and
//! contracted by loop counting, and the symmetrized determinant is evaluated
//! straight from its double-sum definition.  A shared bug between an oracle
//! and the implementation it checks would defeat the purpose, so nothing
//! here calls into [`crate::moments`] or the grouped determinant routines.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::comb::big_pow;
use crate::determinants::AlgebraMatrix;
use crate::linalg::CMat;
use crate::permgroup::enumerate;
use crate::{Error, Result};

/// Tensor index slot: factor `f` exposes `upper(f)` (row) and `lower(f)`
/// (column).
pub fn upper(factor: usize) -> usize {
    2 * factor
}

pub fn lower(factor: usize) -> usize {
    2 * factor + 1
}

/// One delta pattern: a coefficient together with perfect matchings of the
/// factors' upper and lower indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaTerm {
    pub coeff: BigRational,
    /// Pairs of factor indices whose row indices are identified.
    pub upper_pairs: Vec<(usize, usize)>,
    /// Pairs of factor indices whose column indices are identified.
    pub lower_pairs: Vec<(usize, usize)>,
}

impl DeltaTerm {
    fn canonicalize(&mut self) {
        for pairs in [&mut self.upper_pairs, &mut self.lower_pairs] {
            for p in pairs.iter_mut() {
                if p.0 > p.1 {
                    *p = (p.1, p.0);
                }
            }
            pairs.sort_unstable();
        }
    }
}

/// Exact sum of delta patterns over an even number of matrix factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaTensor {
    factors: usize,
    terms: Vec<DeltaTerm>,
}

impl DeltaTensor {
    /// Build from raw terms; patterns are canonicalized, merged, and
    /// zero-coefficient terms dropped.
    pub fn new(factors: usize, terms: Vec<DeltaTerm>) -> Self {
        let mut canon: Vec<DeltaTerm> = Vec::new();
        for mut term in terms {
            assert_eq!(term.upper_pairs.len() * 2, factors, "upper matching");
            assert_eq!(term.lower_pairs.len() * 2, factors, "lower matching");
            term.canonicalize();
            match canon.iter_mut().find(|t| {
                t.upper_pairs == term.upper_pairs && t.lower_pairs == term.lower_pairs
            }) {
                Some(existing) => existing.coeff += term.coeff,
                None => canon.push(term),
            }
        }
        canon.retain(|t| !t.coeff.is_zero());
        canon.sort_unstable_by(|a, b| {
            (&a.upper_pairs, &a.lower_pairs).cmp(&(&b.upper_pairs, &b.lower_pairs))
        });
        DeltaTensor {
            factors,
            terms: canon,
        }
    }

    pub fn factors(&self) -> usize {
        self.factors
    }

    pub fn terms(&self) -> &[DeltaTerm] {
        &self.terms
    }

    /// The degree-2 moment `E[s (x) s*] = (1/d) delta delta`.
    pub fn cupcap(d: u64) -> Self {
        wick_gaussian_moment(1, d).expect("k = 1 is in range")
    }

    /// Exact Haar fourth moment `E[s (x) s (x) s* (x) s*]`: the two straight
    /// pairings weighted `1/(d^2-1)` minus the two crossed ones weighted
    /// `1/(d(d^2-1))`.
    pub fn haar_fourth(d: u64) -> Self {
        assert!(d >= 2, "the Haar fourth moment needs d >= 2");
        let main = BigRational::new(BigInt::one(), BigInt::from(d * d - 1));
        let cross = -BigRational::new(BigInt::one(), BigInt::from(d * (d * d - 1)));
        let straight13 = vec![(0, 2), (1, 3)];
        let straight14 = vec![(0, 3), (1, 2)];
        DeltaTensor::new(
            4,
            vec![
                DeltaTerm {
                    coeff: main.clone(),
                    upper_pairs: straight13.clone(),
                    lower_pairs: straight13.clone(),
                },
                DeltaTerm {
                    coeff: main,
                    upper_pairs: straight14.clone(),
                    lower_pairs: straight14.clone(),
                },
                DeltaTerm {
                    coeff: cross.clone(),
                    upper_pairs: straight13.clone(),
                    lower_pairs: straight14.clone(),
                },
                DeltaTerm {
                    coeff: cross,
                    upper_pairs: straight14,
                    lower_pairs: straight13,
                },
            ],
        )
    }

    /// Tensor product; the factors of `other` are shifted past `self`'s.
    pub fn tensor_product(&self, other: &DeltaTensor) -> DeltaTensor {
        let shift = self.factors;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let mut upper = a.upper_pairs.clone();
                upper.extend(b.upper_pairs.iter().map(|&(x, y)| (x + shift, y + shift)));
                let mut lower = a.lower_pairs.clone();
                lower.extend(b.lower_pairs.iter().map(|&(x, y)| (x + shift, y + shift)));
                terms.push(DeltaTerm {
                    coeff: &a.coeff * &b.coeff,
                    upper_pairs: upper,
                    lower_pairs: lower,
                });
            }
        }
        DeltaTensor::new(self.factors + other.factors, terms)
    }

    /// Close every index slot with the given wiring (a perfect matching on
    /// slots) and evaluate: each term contributes `coeff * d^loops`.
    pub fn contract(&self, wiring: &[(usize, usize)], d: u64) -> Result<BigRational> {
        let slots = 2 * self.factors;
        let mut degree = vec![0usize; slots];
        for &(a, b) in wiring {
            if a >= slots || b >= slots {
                return Err(Error::OpenWiring(a.max(b)));
            }
            degree[a] += 1;
            degree[b] += 1;
        }
        if let Some(slot) = degree.iter().position(|&c| c != 1) {
            return Err(Error::OpenWiring(slot));
        }
        let mut total = BigRational::zero();
        for term in &self.terms {
            let mut uf = UnionFind::new(slots);
            for &(a, b) in &term.upper_pairs {
                uf.union(upper(a), upper(b));
            }
            for &(a, b) in &term.lower_pairs {
                uf.union(lower(a), lower(b));
            }
            for &(a, b) in wiring {
                uf.union(a, b);
            }
            let loops = uf.components();
            total += &term.coeff * BigRational::from(big_pow(d, loops));
        }
        Ok(total)
    }

    /// Dense numeric form, index order `(r_0, c_0, r_1, c_1, ...)` row-major
    /// with all indices running over `0..d` — the same layout as
    /// [`crate::linalg::TensorMoment`].
    pub fn to_dense(&self, d: usize) -> Vec<f64> {
        let len = (d * d).pow(self.factors as u32);
        let mut out = vec![0.0; len];
        let mut counters = vec![0usize; 2 * self.factors];
        for (flat, slot) in out.iter_mut().enumerate() {
            for term in &self.terms {
                let ok = term
                    .upper_pairs
                    .iter()
                    .all(|&(a, b)| counters[upper(a)] == counters[upper(b)])
                    && term
                        .lower_pairs
                        .iter()
                        .all(|&(a, b)| counters[lower(a)] == counters[lower(b)]);
                if ok {
                    *slot += term.coeff.to_f64().expect("small rational");
                }
            }
            let _ = flat;
            // Odometer increment in row-major order.
            let mut pos = counters.len();
            while pos > 0 {
                pos -= 1;
                counters[pos] += 1;
                if counters[pos] < d {
                    break;
                }
                counters[pos] = 0;
            }
        }
        out
    }

    /// Dense form reinterpreted as an operator matrix: rows are the combined
    /// upper indices, columns the combined lower indices.
    pub fn to_operator(&self, d: usize) -> nalgebra::DMatrix<f64> {
        let side = d.pow(self.factors as u32);
        let dense = self.to_dense(d);
        nalgebra::DMatrix::from_fn(side, side, |r, c| {
            // Interleave (r, c) digit pairs back into the dense layout.
            let mut digits_r = vec![0usize; self.factors];
            let mut digits_c = vec![0usize; self.factors];
            let (mut rr, mut cc) = (r, c);
            for f in (0..self.factors).rev() {
                digits_r[f] = rr % d;
                rr /= d;
                digits_c[f] = cc % d;
                cc /= d;
            }
            let mut flat = 0;
            for f in 0..self.factors {
                flat = (flat * d + digits_r[f]) * d + digits_c[f];
            }
            dense[flat]
        })
    }
}

/// Gaussian Wick expansion of `E[s (x) ... (x) s (x) s* (x) ... (x) s*]`
/// with `k` unconjugated and `k` conjugated copies of a single sample:
/// one term per pairing of copies with conjugates, each `(1/d)^k` times the
/// row and column deltas of its pairs.
pub fn wick_gaussian_moment(k: usize, d: u64) -> Result<DeltaTensor> {
    if k == 0 || k > 3 {
        return Err(Error::OutOfRange {
            what: "wick moment order",
            value: k,
            max: 3,
        });
    }
    let coeff = BigRational::new(BigInt::one(), big_pow(d, k));
    let mut terms = Vec::new();
    let mut conj: Vec<usize> = (k..2 * k).collect();
    permute_all(&mut conj, 0, &mut |assignment| {
        let pairs: Vec<(usize, usize)> = assignment.iter().copied().enumerate().collect();
        terms.push(DeltaTerm {
            coeff: coeff.clone(),
            upper_pairs: pairs.clone(),
            lower_pairs: pairs,
        });
    });
    Ok(DeltaTensor::new(2 * k, terms))
}

fn permute_all(values: &mut Vec<usize>, at: usize, emit: &mut impl FnMut(&[usize])) {
    if at == values.len() {
        emit(values);
        return;
    }
    for i in at..values.len() {
        values.swap(at, i);
        permute_all(values, at + 1, emit);
        values.swap(at, i);
    }
}

/// Wiring for a product of traces: within each group, the column slot of one
/// factor is identified with the row slot of the next, cyclically.
pub fn trace_wiring(groups: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let mut wiring = Vec::new();
    for group in groups {
        for (pos, &f) in group.iter().enumerate() {
            let next = group[(pos + 1) % group.len()];
            wiring.push((lower(f), upper(next)));
        }
    }
    wiring
}

/// The symmetrized determinant straight from its definition: the
/// `1/n!`-weighted signed double sum over ordering pairs.
pub fn literal_sdet(m: &AlgebraMatrix, cap: usize) -> Result<CMat> {
    let n = m.n();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "literal symmetrized determinant",
            n,
            cap,
        });
    }
    let d = m.d();
    let group: Vec<_> = enumerate(n, cap)?.collect();
    let mut acc = CMat::zeros(d, d);
    for a in &group {
        'outer: for b in &group {
            let mut prod = CMat::identity(d, d);
            for i in 1..=n {
                match m.cell(a.apply(i) - 1, b.apply(i) - 1) {
                    Some(cell) => prod *= cell,
                    None => continue 'outer,
                }
            }
            let sign = b.compose(&a.inverse()).sign();
            if sign > 0 {
                acc += &prod;
            } else {
                acc -= &prod;
            }
        }
    }
    let n_factorial: f64 = (1..=n as u64).product::<u64>() as f64;
    Ok(acc / num_complex::Complex64::new(n_factorial, 0.0))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    fn components(&mut self) -> usize {
        let n = self.parent.len();
        (0..n).filter(|&x| self.find(x) == x).count()
    }
}
