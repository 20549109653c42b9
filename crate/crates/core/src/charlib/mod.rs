//! Exact symmetric-group character theory.
//!
//! Partitions, hooks, the Murnaghan–Nakayama rule, Kostka numbers,
//! class-function calculus, and the family of double-ribbon shapes that
//! carries the second moment of the symmetrized estimator.  No floating
//! point anywhere in this module.

mod character;
mod class_function;
mod partition;

pub use character::{dimension, hook_dimension, kostka, mn_character};
pub use class_function::{class_representative, ClassFunction};
pub use partition::{hook, is_hook, partitions, partitions_max_len, Partition};

/// The double-ribbon family: all partitions of `2n` whose character does not
/// vanish on the class `(n, n)`, paired with that character value.
///
/// Every member decomposes into two `n`-ribbons, has diagonal rank at most
/// two, and carries a character value in `{+-1, +-2}`.  The family holds the
/// `2n` hooks of `2n` plus `C(n, 2)` rank-two shapes, so its size is
/// `2n + n(n-1)/2`; that is at most `n^2` once `n >= 3` (at `n = 1, 2` the
/// exact counts are 2 and 5).  These facts are asserted here because
/// downstream moment bounds rely on them.
pub fn t_n_family(n: usize) -> Vec<(Partition, i64)> {
    assert!(n >= 1);
    let class = Partition::from_unsorted(vec![n, n]);
    let mut family = Vec::new();
    for shape in partitions(2 * n) {
        let chi = mn_character(&shape, &class).expect("weights agree");
        if chi != 0 {
            assert!(
                matches!(chi.abs(), 1 | 2),
                "chi_{shape}(n,n) = {chi} outside {{+-1, +-2}}"
            );
            assert!(shape.rank() <= 2, "{shape} has rank > 2");
            family.push((shape, chi));
        }
    }
    assert_eq!(
        family.len(),
        2 * n + n * (n - 1) / 2,
        "unexpected family size at n = {n}"
    );
    family
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_1_contains_both_partitions_of_two() {
        // Both shapes of weight 2 survive; at n = 1 the class (1,1) is the
        // identity, so each value is the dimension, i.e. +1.
        let fam = t_n_family(1);
        assert_eq!(fam.len(), 2);
        assert_eq!(fam[0], (Partition::row(2), 1));
        assert_eq!(fam[1], (Partition::column(2), 1));
    }

    #[test]
    fn family_values_and_size_through_n_5() {
        for n in 1..=5 {
            let fam = t_n_family(n);
            assert_eq!(fam.len(), 2 * n + n * (n - 1) / 2);
            // The quadratic cap kicks in from n = 3; below that the hooks
            // alone already exceed it.
            if n >= 3 {
                assert!(fam.len() <= n * n);
            }
            for (shape, chi) in &fam {
                assert!(matches!(chi.abs(), 1 | 2), "{shape}: {chi}");
                assert!(shape.rank() <= 2);
            }
        }
    }

    #[test]
    fn rank_one_members_are_hooks_rank_two_split_as_two_ribbons() {
        for n in 2..=5 {
            for (shape, chi) in t_n_family(n) {
                match shape.rank() {
                    1 => {
                        assert!(is_hook(&shape));
                        assert_eq!(chi.abs(), 1, "{shape}");
                    }
                    2 => {
                        // Characteristics (b1, b2 | a1, a2) satisfy
                        // a1 + b2 + 1 = a2 + b1 + 1 = n.
                        let coords = shape.frobenius_coords();
                        let (b1, a1) = coords[0];
                        let (b2, a2) = coords[1];
                        assert_eq!(a1 + b2 + 1, n, "{shape}");
                        assert_eq!(a2 + b1 + 1, n, "{shape}");
                        assert_eq!(chi.abs(), 2, "{shape}");
                    }
                    r => panic!("unexpected rank {r} for {shape}"),
                }
            }
        }
    }

    #[test]
    fn family_matches_direct_character_scan() {
        for n in 1..=4 {
            let class = Partition::from_unsorted(vec![n, n]);
            let direct: Vec<(Partition, i64)> = partitions(2 * n)
                .into_iter()
                .filter_map(|shape| {
                    let chi = mn_character(&shape, &class).unwrap();
                    (chi != 0).then_some((shape, chi))
                })
                .collect();
            assert_eq!(t_n_family(n), direct);
        }
    }
}
