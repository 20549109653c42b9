//! Irreducible characters of the symmetric group and Kostka numbers.
//!
//! Characters are computed by the Murnaghan–Nakayama recursion: remove a
//! border strip (ribbon) for the largest cycle, pick up a sign of
//! `(-1)^(rows - 1)` for the rows the strip spans, and recurse on the rest.
//! Strips are manipulated through first-column hook lengths ("beta
//! numbers"), where removing a strip of length `k` replaces a beta number
//! `b` by `b - k`.  Everything here is exact integer arithmetic.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::partition::{hook, Partition};
use crate::comb::binomial;
use crate::{Error, Result};

/// Character value `chi_shape(cycle_type)` by Murnaghan–Nakayama.
pub fn mn_character(shape: &Partition, cycle_type: &Partition) -> Result<i64> {
    if shape.weight() != cycle_type.weight() {
        return Err(Error::WeightMismatch(shape.weight(), cycle_type.weight()));
    }
    let mut memo: HashMap<(Vec<usize>, usize), i64> = HashMap::new();
    Ok(mn_rec(shape.parts(), cycle_type.parts(), &mut memo))
}

fn mn_rec(shape: &[usize], cycles: &[usize], memo: &mut HashMap<(Vec<usize>, usize), i64>) -> i64 {
    if cycles.is_empty() {
        debug_assert!(shape.is_empty());
        return 1;
    }
    let key = (shape.to_vec(), cycles.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let k = cycles[0];
    let m = shape.len();
    // beta[i] = shape[i] + (m - 1 - i): strictly decreasing.
    let beta: Vec<usize> = shape
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (m - 1 - i))
        .collect();
    let mut total = 0i64;
    for i in 0..m {
        if beta[i] < k {
            continue;
        }
        let target = beta[i] - k;
        if beta.contains(&target) {
            continue;
        }
        // Rows spanned minus one = beta numbers strictly between target and beta[i].
        let between = beta.iter().filter(|&&b| target < b && b < beta[i]).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        let mut new_beta = beta.clone();
        new_beta[i] = target;
        new_beta.sort_unstable_by(|a, b| b.cmp(a));
        let new_shape: Vec<usize> = new_beta
            .iter()
            .enumerate()
            .map(|(j, &b)| b - (m - 1 - j))
            .filter(|&p| p > 0)
            .collect();
        total += sign * mn_rec(&new_shape, &cycles[1..], memo);
    }
    memo.insert(key, total);
    total
}

/// Dimension of the irreducible representation labelled by `shape`
/// (the character at the identity, i.e. the number of standard tableaux).
pub fn dimension(shape: &Partition) -> i64 {
    if shape.is_empty() {
        return 1;
    }
    mn_character(shape, &Partition::column(shape.weight()))
        .expect("weights agree by construction")
}

/// Dimension of the hook character: `C(n-1, t)`.
pub fn hook_dimension(n: usize, t: usize) -> Result<BigInt> {
    hook(n, t)?;
    Ok(binomial(n - 1, t))
}

/// Kostka number: the count of semistandard tableaux of the given shape and
/// content (rows weakly increasing, columns strictly increasing), by
/// enumeration of horizontal-strip chains.
pub fn kostka(shape: &Partition, content: &Partition) -> Result<BigInt> {
    if shape.weight() != content.weight() {
        return Err(Error::WeightMismatch(shape.weight(), content.weight()));
    }
    let mut memo: HashMap<(Vec<usize>, usize), BigInt> = HashMap::new();
    Ok(kostka_rec(shape.parts(), content.parts(), &mut memo))
}

fn kostka_rec(
    shape: &[usize],
    content: &[usize],
    memo: &mut HashMap<(Vec<usize>, usize), BigInt>,
) -> BigInt {
    if content.is_empty() {
        debug_assert!(shape.is_empty());
        return BigInt::from(1);
    }
    let key = (shape.to_vec(), content.len());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    // Peel off a horizontal strip for the last value in the content.
    let strip = content[content.len() - 1];
    let rest = &content[..content.len() - 1];
    let mut total = BigInt::from(0);
    let mut inner = Vec::with_capacity(shape.len());
    strip_rec(shape, 0, strip, &mut inner, &mut |inner_shape| {
        let trimmed: Vec<usize> = inner_shape.iter().copied().filter(|&p| p > 0).collect();
        total += kostka_rec(&trimmed, rest, memo);
    });
    memo.insert(key, total.clone());
    total
}

/// Enumerate all `mu <= shape` with `shape/mu` a horizontal strip removing
/// exactly `budget` cells: row-by-row choice of `mu[row]` in
/// `[shape[row+1], shape[row]]`.
fn strip_rec(
    shape: &[usize],
    row: usize,
    budget: usize,
    acc: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if row == shape.len() {
        if budget == 0 {
            emit(acc);
        }
        return;
    }
    let hi = shape[row];
    let lo = if row + 1 < shape.len() { shape[row + 1] } else { 0 };
    // Remove between 0 and hi - lo cells from this row.
    let max_remove = (hi - lo).min(budget);
    for removed in 0..=max_remove {
        acc.push(hi - removed);
        strip_rec(shape, row + 1, budget - removed, acc, emit);
        acc.pop();
    }
}
