//! Determinants over the matrix algebra.
//!
//! An [`AlgebraMatrix`] is an `n x n` array whose cells are `d x d` complex
//! matrices or explicit zero markers.  Because the algebra is
//! noncommutative, the row-ordered Cayley determinant depends on the order
//! of traversal; the symmetrized determinant removes that dependence by
//! averaging each product over all orderings.  The symmetrized product is
//! extracted by inclusion-exclusion over subsets (`2^n` matrix powers)
//! rather than by summing `n!` orderings.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use crate::linalg::CMat;
use crate::permgroup::{sample_uniform, Permutation};
use crate::{Error, Result};

/// Square matrix over the algebra of `d x d` complex matrices, with zero
/// markers for structurally absent cells.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraMatrix {
    n: usize,
    d: usize,
    cells: Vec<Option<CMat>>,
}

impl AlgebraMatrix {
    /// All-zero matrix.
    pub fn zero(n: usize, d: usize) -> Self {
        assert!(n >= 1 && d >= 1);
        AlgebraMatrix {
            n,
            d,
            cells: vec![None; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Set cell `(i, j)` (0-based).  Panics if the cell dimension is not `d`.
    pub fn set(&mut self, i: usize, j: usize, value: CMat) {
        assert_eq!(value.nrows(), self.d, "cell dimension mismatch");
        assert_eq!(value.ncols(), self.d, "cell dimension mismatch");
        self.cells[i * self.n + j] = Some(value);
    }

    pub fn clear(&mut self, i: usize, j: usize) {
        self.cells[i * self.n + j] = None;
    }

    /// Cell `(i, j)`; `None` is the zero element of the algebra.
    pub fn cell(&self, i: usize, j: usize) -> Option<&CMat> {
        self.cells[i * self.n + j].as_ref()
    }

    /// Transposed matrix (cells moved, not conjugated).
    pub fn transpose(&self) -> Self {
        let mut out = AlgebraMatrix::zero(self.n, self.d);
        for i in 0..self.n {
            for j in 0..self.n {
                if let Some(c) = self.cell(i, j) {
                    out.set(j, i, c.clone());
                }
            }
        }
        out
    }

    /// Relabel rows and columns by the same permutation.
    pub fn relabel(&self, p: &Permutation) -> Self {
        assert_eq!(p.degree(), self.n);
        let mut out = AlgebraMatrix::zero(self.n, self.d);
        for i in 0..self.n {
            for j in 0..self.n {
                if let Some(c) = self.cell(i, j) {
                    out.set(p.apply(i + 1) - 1, p.apply(j + 1) - 1, c.clone());
                }
            }
        }
        out
    }

    /// All permutations whose cells are all present, in lexicographic order.
    pub fn support_permutations(&self) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cols = vec![0usize; self.n];
        let mut used = vec![false; self.n];
        self.support_rec(0, &mut cols, &mut used, &mut |images| {
            out.push(Permutation::from_images(images.to_vec()).expect("bijection"));
        });
        out
    }

    fn support_rec(
        &self,
        row: usize,
        cols: &mut Vec<usize>,
        used: &mut Vec<bool>,
        emit: &mut impl FnMut(&[usize]),
    ) {
        if row == self.n {
            emit(cols);
            return;
        }
        for j in 0..self.n {
            if !used[j] && self.cell(row, j).is_some() {
                used[j] = true;
                cols[row] = j + 1;
                self.support_rec(row + 1, cols, used, emit);
                used[j] = false;
            }
        }
    }
}

/// Row-ordered Cayley determinant: signed sum over permutations of the cell
/// products taken strictly from the top row to the bottom row.
///
/// Permutations hitting a zero marker are pruned; a matrix with empty
/// support yields the zero matrix.
pub fn cayley_det(m: &AlgebraMatrix, cap: usize) -> Result<CMat> {
    if m.n > cap {
        return Err(Error::CapExceeded {
            what: "cayley determinant",
            n: m.n,
            cap,
        });
    }
    let d = m.d;
    let mut acc = CMat::zeros(d, d);
    // prefix[r] is the ordered product of the first r chosen cells.
    let mut prefix: Vec<CMat> = (0..=m.n).map(|_| CMat::zeros(d, d)).collect();
    prefix[0] = CMat::identity(d, d);
    let mut used = vec![false; m.n];
    cayley_rec(m, 0, 0, &mut used, &mut prefix, &mut acc);
    Ok(acc)
}

fn cayley_rec(
    m: &AlgebraMatrix,
    row: usize,
    inversions: usize,
    used: &mut Vec<bool>,
    prefix: &mut Vec<CMat>,
    acc: &mut CMat,
) {
    if row == m.n {
        if inversions % 2 == 0 {
            *acc += &prefix[m.n];
        } else {
            *acc -= &prefix[m.n];
        }
        return;
    }
    for j in 0..m.n {
        if used[j] {
            continue;
        }
        let Some(cell) = m.cell(row, j) else {
            continue;
        };
        let added = used[j + 1..].iter().filter(|&&u| u).count();
        used[j] = true;
        let (head, tail) = prefix.split_at_mut(row + 1);
        head[row].mul_to(cell, &mut tail[0]);
        cayley_rec(m, row + 1, inversions + added, used, prefix, acc);
        used[j] = false;
    }
}

/// Average of the product of `mats` over all orderings, via
/// inclusion-exclusion: `(1/n!) sum_{S != 0} (-1)^{n-|S|} (sum_{i in S} a_i)^n`.
pub fn sym_prod(mats: &[&CMat], cap: usize) -> Result<CMat> {
    let n = mats.len();
    if n == 0 || n > cap {
        return Err(Error::CapExceeded {
            what: "symmetrized product",
            n,
            cap,
        });
    }
    let d = mats[0].nrows();
    for m in mats {
        if m.nrows() != d || m.ncols() != d {
            return Err(Error::DimMismatch(m.nrows(), d));
        }
    }
    if n == 1 {
        return Ok(mats[0].clone());
    }
    let mut acc = CMat::zeros(d, d);
    let mut base = CMat::zeros(d, d);
    let mut power = CMat::zeros(d, d);
    let mut scratch = CMat::zeros(d, d);
    for subset in 1u32..(1u32 << n) {
        base.fill(Complex64::new(0.0, 0.0));
        for (i, m) in mats.iter().enumerate() {
            if subset & (1 << i) != 0 {
                base += *m;
            }
        }
        // base^n by repeated multiplication.
        power.copy_from(&base);
        for _ in 1..n {
            power.mul_to(&base, &mut scratch);
            std::mem::swap(&mut power, &mut scratch);
        }
        if (n - subset.count_ones() as usize) % 2 == 0 {
            acc += &power;
        } else {
            acc -= &power;
        }
    }
    let n_factorial: f64 = (1..=n as u64).product::<u64>() as f64;
    Ok(acc / Complex64::new(n_factorial, 0.0))
}

/// Exact symmetrized determinant: the signed double sum over ordering pairs,
/// grouped by the quotient permutation so each group becomes one signed
/// symmetrized product of the cells it selects.
pub fn sdet_exact(m: &AlgebraMatrix, cap: usize) -> Result<CMat> {
    if m.n > cap {
        return Err(Error::CapExceeded {
            what: "symmetrized determinant",
            n: m.n,
            cap,
        });
    }
    let d = m.d;
    let mut acc = CMat::zeros(d, d);
    for p in m.support_permutations() {
        let cells: Vec<&CMat> = (0..m.n)
            .map(|i| m.cell(i, p.apply(i + 1) - 1).expect("support"))
            .collect();
        let sp = sym_prod(&cells, m.n.max(1))?;
        if p.sign() > 0 {
            acc += &sp;
        } else {
            acc -= &sp;
        }
    }
    Ok(acc)
}

/// Unbiased sampled version of the symmetrized determinant: `n!` times the
/// average over `pair_count` uniform ordering pairs `(a, b)` of
/// `sign(b a^{-1}) M[a1, b1] M[a2, b2] ... M[an, bn]`.
///
/// The `n!` factor undoes the `1/n!` normalization of the double sum, making
/// the sample mean match [`sdet_exact`].  Useful as a diagnostic expectation
/// check only — squaring it does not give an unbiased second moment.
pub fn sdet_sampled<R: Rng + ?Sized>(m: &AlgebraMatrix, pair_count: u64, rng: &mut R) -> CMat {
    let d = m.d;
    let mut acc = CMat::zeros(d, d);
    let mut prod = CMat::zeros(d, d);
    let mut scratch = CMat::zeros(d, d);
    for _ in 0..pair_count {
        let a = sample_uniform(m.n, rng);
        let b = sample_uniform(m.n, rng);
        let mut zero = false;
        prod.fill(Complex64::new(0.0, 0.0));
        prod.fill_diagonal(Complex64::new(1.0, 0.0));
        for i in 1..=m.n {
            match m.cell(a.apply(i) - 1, b.apply(i) - 1) {
                Some(cell) => {
                    prod.mul_to(cell, &mut scratch);
                    std::mem::swap(&mut prod, &mut scratch);
                }
                None => {
                    zero = true;
                    break;
                }
            }
        }
        if zero {
            continue;
        }
        let sign = b.compose(&a.inverse()).sign();
        if sign > 0 {
            acc += &prod;
        } else {
            acc -= &prod;
        }
    }
    let n_factorial: f64 = (1..=m.n as u64).product::<u64>() as f64;
    acc * Complex64::new(n_factorial / pair_count as f64, 0.0)
}

/// Ordinary scalar determinant (partially pivoted elimination).
pub fn scalar_det(m: &DMatrix<Complex64>) -> Complex64 {
    assert_eq!(m.nrows(), m.ncols(), "determinant of a non-square matrix");
    m.determinant()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps;
    use crate::linalg::sample_gaussian;
    use crate::permgroup::enumerate;
    use crate::rng::RngStream;

    fn rng_for(tag: u64) -> rand_chacha::ChaCha8Rng {
        RngStream::new(0xDE7).child(tag).rng()
    }

    fn random_algebra_matrix(n: usize, d: usize, rng: &mut impl Rng) -> AlgebraMatrix {
        let mut m = AlgebraMatrix::zero(n, d);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, sample_gaussian(d, rng));
            }
        }
        m
    }

    fn close(a: &CMat, b: &CMat, tol: f64) -> bool {
        let scale = a.norm().max(b.norm()).max(1e-30);
        (a - b).norm() <= tol * scale
    }

    #[test]
    fn cayley_of_diagonal_matrix_is_the_ordered_product() {
        let mut rng = rng_for(1);
        let d = 2;
        let n = 4;
        let mut m = AlgebraMatrix::zero(n, d);
        let mut expected = CMat::identity(d, d);
        for i in 0..n {
            let cell = sample_gaussian(d, &mut rng);
            expected = expected * &cell;
            m.set(i, i, cell);
        }
        let det = cayley_det(&m, caps::CAYLEY).unwrap();
        assert!(close(&det, &expected, 1e-12));
    }

    #[test]
    fn cayley_of_one_by_one_is_the_cell() {
        let mut rng = rng_for(2);
        let cell = sample_gaussian(3, &mut rng);
        let mut m = AlgebraMatrix::zero(1, 3);
        m.set(0, 0, cell.clone());
        assert_eq!(cayley_det(&m, caps::CAYLEY).unwrap(), cell);
    }

    #[test]
    fn cayley_two_by_two_matches_hand_expansion() {
        let mut rng = rng_for(3);
        let m = random_algebra_matrix(2, 2, &mut rng);
        let got = cayley_det(&m, caps::CAYLEY).unwrap();
        let expected = m.cell(0, 0).unwrap() * m.cell(1, 1).unwrap()
            - m.cell(0, 1).unwrap() * m.cell(1, 0).unwrap();
        assert!(close(&got, &expected, 1e-12));
    }

    #[test]
    fn row_order_and_column_order_disagree_on_a_noncommuting_witness() {
        // Cells: b = E12 and c = E21 off the diagonal, identities on it.
        // Row order gives I - bc = diag(0, 1); column order gives
        // I - cb = diag(1, 0).
        let d = 2;
        let mut b = CMat::zeros(d, d);
        b[(0, 1)] = Complex64::new(1.0, 0.0);
        let mut c = CMat::zeros(d, d);
        c[(1, 0)] = Complex64::new(1.0, 0.0);
        let id = CMat::identity(d, d);
        let mut m = AlgebraMatrix::zero(2, d);
        m.set(0, 0, id.clone());
        m.set(0, 1, b);
        m.set(1, 0, c);
        m.set(1, 1, id);
        let row_ordered = cayley_det(&m, caps::CAYLEY).unwrap();
        // Column order = row order on the transpose.
        let col_ordered = cayley_det(&m.transpose(), caps::CAYLEY).unwrap();
        assert!((&row_ordered - &col_ordered).norm() > 0.5);
    }

    #[test]
    fn cap_errors_are_reported() {
        let m = AlgebraMatrix::zero(5, 1);
        assert!(matches!(
            cayley_det(&m, 4),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(
            sdet_exact(&m, 4),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn sym_prod_of_equal_matrices_is_the_power() {
        let mut rng = rng_for(4);
        let a = sample_gaussian(2, &mut rng);
        let got = sym_prod(&[&a, &a, &a], caps::SYM_PROD).unwrap();
        let expected = &a * &a * &a;
        assert!(close(&got, &expected, 1e-12));
    }

    #[test]
    fn sym_prod_of_two_is_the_anticommutator_half() {
        let mut rng = rng_for(5);
        let a = sample_gaussian(3, &mut rng);
        let b = sample_gaussian(3, &mut rng);
        let got = sym_prod(&[&a, &b], caps::SYM_PROD).unwrap();
        let expected = (&a * &b + &b * &a) / Complex64::new(2.0, 0.0);
        assert!(close(&got, &expected, 1e-12));
    }

    #[test]
    fn sym_prod_matches_average_over_all_orderings() {
        let mut rng = rng_for(6);
        let mats: Vec<CMat> = (0..4).map(|_| sample_gaussian(2, &mut rng)).collect();
        let refs: Vec<&CMat> = mats.iter().collect();
        let got = sym_prod(&refs, caps::SYM_PROD).unwrap();
        let mut avg = CMat::zeros(2, 2);
        let mut count = 0.0;
        for p in enumerate(4, 10).unwrap() {
            let mut prod = CMat::identity(2, 2);
            for i in 1..=4 {
                prod = prod * &mats[p.apply(i) - 1];
            }
            avg += prod;
            count += 1.0;
        }
        avg /= Complex64::new(count, 0.0);
        assert!(close(&got, &avg, 1e-10));
    }

    #[test]
    fn sym_prod_is_multilinear() {
        let mut rng = rng_for(7);
        let a = sample_gaussian(2, &mut rng);
        let b = sample_gaussian(2, &mut rng);
        let x = sample_gaussian(2, &mut rng);
        let y = sample_gaussian(2, &mut rng);
        let lambda = Complex64::new(0.37, -1.21);
        let combo = &x + &y * lambda;
        let lhs = sym_prod(&[&a, &combo, &b], caps::SYM_PROD).unwrap();
        let rhs = sym_prod(&[&a, &x, &b], caps::SYM_PROD).unwrap()
            + sym_prod(&[&a, &y, &b], caps::SYM_PROD).unwrap() * lambda;
        assert!(close(&lhs, &rhs, 1e-10));
    }

    #[test]
    fn sdet_equals_cayley_for_one_by_one() {
        let mut rng = rng_for(8);
        let m = random_algebra_matrix(1, 3, &mut rng);
        let s = sdet_exact(&m, caps::SDET).unwrap();
        let c = cayley_det(&m, caps::CAYLEY).unwrap();
        assert_eq!(s, c);
        assert_eq!(&s, m.cell(0, 0).unwrap());
    }

    #[test]
    fn sdet_collapses_to_cayley_on_commuting_cells() {
        // Scalar multiples of the identity commute, so symmetrization is
        // vacuous.
        let mut rng = rng_for(9);
        let d = 2;
        let n = 3;
        let mut m = AlgebraMatrix::zero(n, d);
        for i in 0..n {
            for j in 0..n {
                let z = Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
                m.set(i, j, CMat::identity(d, d) * z);
            }
        }
        let s = sdet_exact(&m, caps::SDET).unwrap();
        let c = cayley_det(&m, caps::CAYLEY).unwrap();
        assert!(close(&s, &c, 1e-12));
    }

    #[test]
    fn sdet_invariant_under_simultaneous_relabeling() {
        let mut rng = rng_for(10);
        for n in 1..=3 {
            let m = random_algebra_matrix(n, 2, &mut rng);
            let base = sdet_exact(&m, caps::SDET).unwrap();
            for p in enumerate(n, 10).unwrap() {
                let relabeled = sdet_exact(&m.relabel(&p), caps::SDET).unwrap();
                assert!(close(&base, &relabeled, 1e-10), "n={n} p={p}");
            }
        }
    }

    #[test]
    fn sampled_sdet_is_exact_for_one_by_one() {
        let mut rng = rng_for(11);
        let m = random_algebra_matrix(1, 2, &mut rng);
        let got = sdet_sampled(&m, 17, &mut rng);
        assert!(close(&got, m.cell(0, 0).unwrap(), 1e-12));
    }

    #[test]
    fn sampled_sdet_of_empty_support_is_zero() {
        // A zero row kills every product.
        let mut rng = rng_for(12);
        let mut m = random_algebra_matrix(3, 2, &mut rng);
        m.clear(1, 0);
        m.clear(1, 1);
        m.clear(1, 2);
        let got = sdet_sampled(&m, 200, &mut rng);
        assert_eq!(got.norm(), 0.0);
    }

    #[test]
    fn sampled_sdet_converges_to_exact() {
        let mut rng = rng_for(13);
        let m = random_algebra_matrix(4, 2, &mut rng);
        let exact = sdet_exact(&m, caps::SDET).unwrap();
        // Entrywise 5-sigma band from an empirical variance estimate.
        let pairs = 100_000u64;
        let mut sum = CMat::zeros(2, 2);
        let mut sumsq = CMat::zeros(2, 2).map(|_| 0.0);
        for _ in 0..pairs {
            let one = sdet_sampled(&m, 1, &mut rng);
            sum += &one;
            for i in 0..2 {
                for j in 0..2 {
                    sumsq[(i, j)] += one[(i, j)].norm_sqr();
                }
            }
        }
        let mean = sum / Complex64::new(pairs as f64, 0.0);
        for i in 0..2 {
            for j in 0..2 {
                let var = (sumsq[(i, j)] / pairs as f64 - mean[(i, j)].norm_sqr()).max(0.0);
                let se = (var / pairs as f64).sqrt();
                let dev = (mean[(i, j)] - exact[(i, j)]).norm();
                assert!(dev <= 5.0 * se, "entry ({i},{j}): {dev} > 5 x {se}");
            }
        }
    }

    #[test]
    fn scalar_det_examples() {
        let id = CMat::identity(4, 4);
        assert!((scalar_det(&id) - Complex64::new(1.0, 0.0)).norm() < 1e-12);

        let mut rng = rng_for(14);
        let mut singular = sample_gaussian(3, &mut rng);
        let row0: Vec<Complex64> = (0..3).map(|j| singular[(0, j)]).collect();
        for j in 0..3 {
            singular[(2, j)] = row0[j];
        }
        assert!(scalar_det(&singular).norm() < 1e-10);
    }

    #[test]
    fn scalar_det_matches_permutation_expansion() {
        let mut rng = rng_for(15);
        let m = sample_gaussian(5, &mut rng);
        let mut expansion = Complex64::new(0.0, 0.0);
        for p in enumerate(5, 10).unwrap() {
            let mut term = Complex64::new(p.sign() as f64, 0.0);
            for i in 1..=5 {
                term *= m[(i - 1, p.apply(i) - 1)];
            }
            expansion += term;
        }
        let got = scalar_det(&m);
        assert!((got - expansion).norm() <= 1e-9 * expansion.norm().max(1.0));
    }

    #[test]
    fn all_determinants_coincide_for_scalar_algebra() {
        // d = 1: the algebra is commutative, so every route reduces to the
        // ordinary determinant of the 1x1-cell matrix.
        let mut rng = rng_for(16);
        let n = 4;
        let m = random_algebra_matrix(n, 1, &mut rng);
        let flat = DMatrix::from_fn(n, n, |i, j| m.cell(i, j).unwrap()[(0, 0)]);
        let det = scalar_det(&flat);
        let cay = cayley_det(&m, caps::CAYLEY).unwrap()[(0, 0)];
        let sde = sdet_exact(&m, caps::SDET).unwrap()[(0, 0)];
        assert!((cay - det).norm() < 1e-10 * det.norm().max(1.0));
        assert!((sde - det).norm() < 1e-10 * det.norm().max(1.0));
    }

    #[test]
    fn support_permutations_respect_zero_markers() {
        let mut m = AlgebraMatrix::zero(3, 1);
        // Permanent-2 pattern: identity plus the 3-cycle.
        for (i, j) in [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (2, 0)] {
            m.set(i, j, CMat::identity(1, 1));
        }
        let support = m.support_permutations();
        assert_eq!(support.len(), 2);
    }
}
