//! Column-style Hermite normal form with unimodular transform.
//!
//! `A U = H` where the first `rank` columns of `H` form a column echelon form and the
//! remaining columns are zero. The trailing columns of `U` are then a basis of the
//! integer kernel of `A`, complete because `U` is unimodular.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

#[derive(Debug, Clone)]
pub struct ColumnHermite {
    /// Echelon form, same shape as the input.
    pub h: IntMatrix,
    /// Unimodular transform with `A U = H`.
    pub u: IntMatrix,
    /// Pivot row of each of the first `rank` columns.
    pub pivot_rows: Vec<usize>,
}

impl ColumnHermite {
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }
}

fn combine_columns(m: &mut IntMatrix, p: usize, k: usize, coeffs: [&BigInt; 4]) {
    // new_p = c0*col_p + c1*col_k ; new_k = c2*col_p + c3*col_k
    let [c0, c1, c2, c3] = coeffs;
    for i in 0..m.rows() {
        let xp = m[(i, p)].clone();
        let xk = m[(i, k)].clone();
        m[(i, p)] = c0 * &xp + c1 * &xk;
        m[(i, k)] = c2 * &xp + c3 * &xk;
    }
}

fn negate_column(m: &mut IntMatrix, j: usize) {
    for i in 0..m.rows() {
        let v = -m[(i, j)].clone();
        m[(i, j)] = v;
    }
}

fn sub_multiple(m: &mut IntMatrix, target: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for i in 0..m.rows() {
        let v = &m[(i, src)] * q;
        m[(i, target)] -= v;
    }
}

/// Column Hermite form. Pivots are positive and the entries left of each pivot are
/// reduced into `[0, pivot)`.
pub fn column_hermite(a: &IntMatrix) -> ColumnHermite {
    let (rows, cols) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntMatrix::identity(cols);
    let mut pivot_rows = Vec::new();
    let mut p = 0;
    for i in 0..rows {
        if p == cols {
            break;
        }
        for k in p + 1..cols {
            if h[(i, k)].is_zero() {
                continue;
            }
            let x = h[(i, p)].clone();
            let y = h[(i, k)].clone();
            let eg = x.extended_gcd(&y);
            let g = eg.gcd;
            let (xa, yb) = (&x / &g, &y / &g);
            let neg_yb = -yb;
            combine_columns(&mut h, p, k, [&eg.x, &eg.y, &neg_yb, &xa]);
            combine_columns(&mut u, p, k, [&eg.x, &eg.y, &neg_yb, &xa]);
        }
        if h[(i, p)].is_zero() {
            continue;
        }
        if h[(i, p)].is_negative() {
            negate_column(&mut h, p);
            negate_column(&mut u, p);
        }
        let pivot = h[(i, p)].clone();
        for s in 0..p {
            let q = h[(i, s)].div_floor(&pivot);
            sub_multiple(&mut h, s, p, &q);
            sub_multiple(&mut u, s, p, &q);
        }
        pivot_rows.push(i);
        p += 1;
    }
    ColumnHermite { h, u, pivot_rows }
}

/// Basis of the integer kernel of a full-row-rank `A`, as the columns of an n×(n−m) matrix.
pub fn kernel_basis(a: &IntMatrix) -> Result<IntMatrix> {
    let hf = column_hermite(a);
    if hf.rank() < a.rows() {
        return Err(Error::RankDeficient);
    }
    let r = hf.rank();
    let cols: Vec<usize> = (r..a.cols()).collect();
    Ok(hf.u.select_columns(&cols))
}

/// Some integer solution of `A x = b`, or `None` when there is none.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let hf = column_hermite(a);
    let r = hf.rank();
    let mut y: Vec<BigInt> = Vec::with_capacity(r);
    for (t, &row) in hf.pivot_rows.iter().enumerate() {
        let partial: BigInt = (0..t).map(|s| &hf.h[(row, s)] * &y[s]).sum();
        let rem = &b[row] - partial;
        let (q, rest) = rem.div_rem(&hf.h[(row, t)]);
        if !rest.is_zero() {
            return None;
        }
        y.push(q);
    }
    let mut full = y;
    full.resize(a.cols(), BigInt::zero());
    let x = hf.u.mul_vec(&full);
    (a.mul_vec(&x) == b).then_some(x)
}

/// Hermite basis of a full-rank square lattice basis (columns): lower triangular,
/// positive diagonal, entries left of the diagonal reduced modulo it.
pub fn lattice_hermite(basis: &IntMatrix) -> Result<IntMatrix> {
    if !basis.is_square() {
        return Err(Error::Shape("lattice basis must be square".into()));
    }
    let hf = column_hermite(basis);
    if hf.rank() < basis.rows() {
        return Err(Error::RankDeficient);
    }
    Ok(hf.h)
}

/// Canonical coset representative of `v` modulo the lattice with lower-triangular Hermite
/// basis `h`: coordinate `i` lands in `[0, h_ii)`. This is the lexicographically smallest
/// nonnegative point of the coset.
pub fn reduce_mod_hermite(h: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    let mut w = v.to_vec();
    for i in 0..h.rows() {
        let q = w[i].div_floor(&h[(i, i)]);
        if q.is_zero() {
            continue;
        }
        for (r, x) in w.iter_mut().enumerate().skip(i) {
            *x -= &q * &h[(r, i)];
        }
    }
    w
}

/// Product of the diagonal of a square Hermite basis.
pub fn hermite_det(h: &IntMatrix) -> BigInt {
    (0..h.rows()).fold(BigInt::one(), |acc, i| acc * &h[(i, i)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::rat_combination;
    use crate::minors::{bases, minor_stats};
    use crate::num::{int, ints, to_rats};
    use proptest::prelude::*;

    #[test]
    fn kernel_of_one_one() {
        let g = kernel_basis(&IntMatrix::from_rows(&[[1, 1]])).unwrap();
        let col = g.column(0);
        assert!(col == ints(&[1, -1]) || col == ints(&[-1, 1]));
    }

    #[test]
    fn kernel_projection_determinants() {
        // knapsack (4,2,1), gamma = {1}: |det F| = 4
        let a = IntMatrix::from_rows(&[[4, 2, 1]]);
        let g = kernel_basis(&a).unwrap();
        assert_eq!(g.select_rows(&[1, 2]).det().abs(), int(4));
        // 2x4 example, gamma = {1,2}: |det F| = 8
        let a = IntMatrix::from_rows(&[[2, 0, 5, 5], [0, 4, 2, -1]]);
        let g = kernel_basis(&a).unwrap();
        assert_eq!(a.mul(&g), IntMatrix::zeros(2, 2));
        assert_eq!(g.select_rows(&[2, 3]).det().abs(), int(8));
    }

    #[test]
    fn kernel_rank_deficient() {
        let a = IntMatrix::from_rows(&[[1, 2], [2, 4]]);
        assert_eq!(kernel_basis(&a), Err(Error::RankDeficient));
    }

    #[test]
    fn integer_solvability() {
        let a = IntMatrix::from_rows(&[[2, 0, 5, 5], [0, 4, 2, -1]]);
        let x = solve_integer(&a, &ints(&[20, 3])).unwrap();
        assert_eq!(a.mul_vec(&x), ints(&[20, 3]));
        let even = IntMatrix::from_rows(&[[2, 4]]);
        assert!(solve_integer(&even, &ints(&[3])).is_none());
        assert!(solve_integer(&even, &ints(&[6])).is_some());
    }

    #[test]
    fn coset_representative() {
        // Λ = {(l2,l3): 2 l2 + l3 ≡ 0 mod 4}
        let a = IntMatrix::from_rows(&[[4, 2, 1]]);
        let f = kernel_basis(&a).unwrap().select_rows(&[1, 2]);
        let h = lattice_hermite(&f).unwrap();
        assert_eq!(hermite_det(&h), int(4));
        // (1,1) ≡ (0,3): both have 2l2 + l3 ≡ 3
        assert_eq!(
            reduce_mod_hermite(&h, &ints(&[1, 1])),
            reduce_mod_hermite(&h, &ints(&[0, 3]))
        );
        assert_eq!(reduce_mod_hermite(&h, &ints(&[2, 0])), ints(&[0, 0]));
    }

    fn brute_kernel_vectors(a: &IntMatrix, bound: i64) -> Vec<Vec<BigInt>> {
        let n = a.cols();
        let mut out = Vec::new();
        let mut cur = vec![-bound; n];
        loop {
            let v = ints(&cur);
            if a.mul_vec(&v).iter().all(Zero::is_zero) {
                out.push(v);
            }
            let mut i = 0;
            while i < n && cur[i] == bound {
                cur[i] = -bound;
                i += 1;
            }
            if i == n {
                break;
            }
            cur[i] += 1;
        }
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn kernel_basis_is_complete(m in 1usize..=2, extra in 1usize..=2, entries in proptest::collection::vec(-6i64..=6, 10)) {
            let n = m + extra + usize::from(m == 2);
            let rows: Vec<Vec<i64>> = (0..m).map(|i| entries[i * n..(i + 1) * n].to_vec()).collect();
            let a = IntMatrix::from_rows(&rows);
            prop_assume!(minor_stats(&a).is_ok());
            let g = kernel_basis(&a).unwrap();
            prop_assert_eq!(g.cols(), n - m);
            prop_assert!(a.mul(&g).to_rows().iter().flatten().all(Zero::is_zero));
            let gens: Vec<Vec<_>> = (0..g.cols()).map(|j| to_rats(&g.column(j))).collect();
            for v in brute_kernel_vectors(&a, if n > 4 { 3 } else { 5 }) {
                let coeffs = rat_combination(&gens, &to_rats(&v)).expect("kernel vector in span");
                prop_assert!(coeffs.iter().all(|c| c.is_integer()));
            }
            // |det F| = |det A_gamma| / gcd(A) for every basis gamma
            let stats = minor_stats(&a).unwrap();
            for b in bases(&a) {
                let rest: Vec<usize> = (0..n).filter(|j| !b.columns.contains(j)).collect();
                let f = g.select_rows(&rest);
                prop_assert_eq!(f.det().abs(), b.det.abs() / &stats.gcd_minors);
            }
        }
    }
}
