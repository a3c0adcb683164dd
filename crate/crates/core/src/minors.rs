//! Maximal-minor statistics: Σ(A), gcd(A) and the list of bases.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorStats {
    /// Maximum absolute m×m minor.
    #[serde(with = "crate::serde_big::int")]
    pub sigma: BigInt,
    /// gcd of all m×m minors.
    #[serde(with = "crate::serde_big::int")]
    pub gcd_minors: BigInt,
    /// Number of nonsingular m-column subsets.
    pub basis_count: usize,
}

/// A nonsingular column subset together with its determinant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    pub columns: Vec<usize>,
    pub det: BigInt,
}

/// Every nonsingular m-subset of columns, in lexicographic order.
pub fn bases(a: &IntMatrix) -> Vec<Basis> {
    let m = a.rows();
    (0..a.cols())
        .combinations(m)
        .filter_map(|cols| {
            let det = a.select_columns(&cols).det();
            (!det.is_zero()).then_some(Basis { columns: cols, det })
        })
        .collect()
}

/// Exhaustive over all column subsets; fails with `RankDeficient` if every minor vanishes.
pub fn minor_stats(a: &IntMatrix) -> Result<MinorStats> {
    let mut sigma = BigInt::zero();
    let mut g = BigInt::zero();
    let mut count = 0;
    for b in bases(a) {
        let abs = b.det.abs();
        g = g.gcd(&abs);
        if abs > sigma {
            sigma = abs;
        }
        count += 1;
    }
    if count == 0 {
        return Err(Error::RankDeficient);
    }
    Ok(MinorStats {
        sigma,
        gcd_minors: g,
        basis_count: count,
    })
}

/// det(A Aᵀ), equal to the sum of squared maximal minors.
pub fn gram_det(a: &IntMatrix) -> BigInt {
    a.mul(&a.transpose()).det()
}

/// First basis in lexicographic order containing `required`.
pub fn first_basis_containing(a: &IntMatrix, required: &[usize]) -> Option<Vec<usize>> {
    bases(a)
        .into_iter()
        .find(|b| required.iter().all(|i| b.columns.contains(i)))
        .map(|b| b.columns)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::int;

    fn example_2x4() -> IntMatrix {
        IntMatrix::from_rows(&[[2, 0, 5, 5], [0, 4, 2, -1]])
    }

    #[test]
    fn stats_of_2x4_example() {
        let s = minor_stats(&example_2x4()).unwrap();
        assert_eq!(s.sigma, int(20));
        assert_eq!(s.gcd_minors, int(1));
        assert_eq!(s.basis_count, 6);
        let dets: Vec<BigInt> = bases(&example_2x4()).into_iter().map(|b| b.det).collect();
        // hand enumeration of all six 2x2 minors
        assert_eq!(dets, [8, 4, -2, -20, -20, -15].map(int).to_vec());
    }

    #[test]
    fn stats_of_knapsack_row() {
        let s = minor_stats(&IntMatrix::from_rows(&[[4, 2, 1]])).unwrap();
        assert_eq!((s.sigma, s.gcd_minors), (int(4), int(1)));
    }

    #[test]
    fn stats_with_zero_minors() {
        let s = minor_stats(&IntMatrix::from_rows(&[[2, 0, 0], [0, 2, 0]])).unwrap();
        assert_eq!((s.sigma, s.gcd_minors, s.basis_count), (int(4), int(4), 1));
    }

    #[test]
    fn rank_deficient() {
        let a = IntMatrix::from_rows(&[[1, 2, 3], [2, 4, 6]]);
        assert_eq!(minor_stats(&a), Err(Error::RankDeficient));
    }

    #[test]
    fn gram_det_matches_cauchy_binet() {
        let a = example_2x4();
        assert_eq!(gram_det(&a), int(1109));
        let squares: BigInt = bases(&a).iter().map(|b| &b.det * &b.det).sum();
        assert_eq!(squares, int(1109));
    }

    proptest::proptest! {
        #[test]
        fn gcd_divides_every_minor(entries in proptest::collection::vec(-6i64..=6, 10)) {
            let a = IntMatrix::from_rows(&[&entries[..5], &entries[5..]]);
            if let Ok(s) = minor_stats(&a) {
                for cols in (0..5).combinations(2) {
                    let d = a.select_columns(&cols).det();
                    proptest::prop_assert!((&d % &s.gcd_minors).is_zero());
                    proptest::prop_assert!(d.abs() <= s.sigma);
                }
            }
        }
    }
}
