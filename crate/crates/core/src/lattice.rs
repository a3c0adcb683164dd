//! The affine lattice `Γ(A,b)` of integer solutions and its projection onto the
//! nonbasic coordinates `γ̄`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::hnf::{hermite_det, kernel_basis, lattice_hermite, reduce_mod_hermite, solve_integer};
use crate::matrix::IntMatrix;
use crate::minors::minor_stats;
use crate::num::{dot, Rat};

/// `A`, `b` and a basis `γ` with `A_γ` nonsingular. Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionContext {
    a: IntMatrix,
    b: Vec<BigInt>,
    gamma: Vec<usize>,
    gamma_bar: Vec<usize>,
    det: BigInt,
    adj: IntMatrix,
    a_bar: IntMatrix,
}

impl ProjectionContext {
    pub fn new(a: IntMatrix, b: Vec<BigInt>, gamma: Vec<usize>) -> Result<Self> {
        let (m, n) = (a.rows(), a.cols());
        if m >= n {
            return Err(Error::Shape(format!("need m < n, got {m}x{n}")));
        }
        if b.len() != m {
            return Err(Error::Shape(format!("b has length {}, expected {m}", b.len())));
        }
        let mut g = gamma;
        g.sort_unstable();
        g.dedup();
        if g.len() != m || g.iter().any(|&i| i >= n) {
            return Err(Error::Shape(format!("basis must be {m} distinct indices below {n}")));
        }
        let a_g = a.select_columns(&g);
        let det = a_g.det();
        if det.is_zero() {
            return Err(Error::InvalidInstance("A_gamma is singular".into()));
        }
        let gamma_bar: Vec<usize> = (0..n).filter(|j| !g.contains(j)).collect();
        let adj = a_g.adjugate();
        let a_bar = a.select_columns(&gamma_bar);
        Ok(Self {
            a,
            b,
            gamma: g,
            gamma_bar,
            det,
            adj,
            a_bar,
        })
    }

    pub fn a(&self) -> &IntMatrix {
        &self.a
    }

    pub fn b(&self) -> &[BigInt] {
        &self.b
    }

    pub fn gamma(&self) -> &[usize] {
        &self.gamma
    }

    pub fn gamma_bar(&self) -> &[usize] {
        &self.gamma_bar
    }

    /// det(A_γ) with sign.
    pub fn det(&self) -> &BigInt {
        &self.det
    }

    pub fn m(&self) -> usize {
        self.a.rows()
    }

    pub fn n(&self) -> usize {
        self.a.cols()
    }

    /// Dimension `n − m` of the projected space.
    pub fn k(&self) -> usize {
        self.gamma_bar.len()
    }

    /// `det(A_γ)·x_γ` for the point with nonbasic part `u`: `adj(A_γ)(b − A_γ̄ u)`.
    fn scaled_basic(&self, u: &[BigInt]) -> Vec<BigInt> {
        let au = self.a_bar.mul_vec(u);
        let rhs: Vec<BigInt> = self.b.iter().zip(&au).map(|(x, y)| x - y).collect();
        self.adj.mul_vec(&rhs)
    }

    fn assemble<T: Clone>(&self, basic: Vec<T>, nonbasic: &[T], zero: T) -> Vec<T> {
        let mut w = vec![zero; self.n()];
        for (&i, v) in self.gamma.iter().zip(basic) {
            w[i] = v;
        }
        for (&j, v) in self.gamma_bar.iter().zip(nonbasic) {
            w[j] = v.clone();
        }
        w
    }

    /// The unique point `w` with `A w = b` and `w_γ̄ = u`.
    pub fn lift(&self, u: &[BigInt]) -> Vec<Rat> {
        let d = Rat::from_integer(self.det.clone());
        let basic: Vec<Rat> = self
            .scaled_basic(u)
            .into_iter()
            .map(|v| Rat::from_integer(v) / &d)
            .collect();
        let ur: Vec<Rat> = u.iter().cloned().map(Rat::from_integer).collect();
        self.assemble(basic, &ur, Rat::zero())
    }

    /// Lift of `u` when it is integral, i.e. when `u ∈ Λ(A,b)`.
    pub fn lift_integral(&self, u: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut basic = Vec::with_capacity(self.m());
        for v in self.scaled_basic(u) {
            let (q, r) = v.div_rem(&self.det);
            if !r.is_zero() {
                return None;
            }
            basic.push(q);
        }
        Some(self.assemble(basic, u, BigInt::zero()))
    }

    /// `x*` with `x*_γ = A_γ⁻¹ b` and `x*_γ̄ = 0`.
    pub fn x_star(&self) -> Vec<Rat> {
        self.lift(&vec![BigInt::zero(); self.k()])
    }

    /// Restriction to the nonbasic coordinates.
    pub fn project<T: Clone>(&self, x: &[T]) -> Vec<T> {
        self.gamma_bar.iter().map(|&j| x[j].clone()).collect()
    }

    /// `|det(A_γ)|·Q` where `Q = −A_γ⁻¹A_γ̄`; row `t` belongs to basic index `gamma()[t]`.
    pub fn q_scaled(&self) -> IntMatrix {
        let mut q = self.adj.mul(&self.a_bar);
        let flip = self.det.is_positive();
        for i in 0..q.rows() {
            for j in 0..q.cols() {
                let v = q[(i, j)].clone();
                q[(i, j)] = if flip { -v } else { v };
            }
        }
        q
    }

    /// `A_γ⁻¹A_γ̄` entry by entry from Cramer's rule: column `i` of `A_γ` replaced by `A_j`.
    pub fn cramer_ratios(&self) -> Vec<Vec<Rat>> {
        let a_g = self.a.select_columns(&self.gamma);
        let d = Rat::from_integer(self.det.clone());
        (0..self.m())
            .map(|i| {
                self.gamma_bar
                    .iter()
                    .map(|&j| {
                        let mut mtx = a_g.clone();
                        for r in 0..self.m() {
                            mtx[(r, i)] = self.a[(r, j)].clone();
                        }
                        Rat::from_integer(mtx.det()) / &d
                    })
                    .collect()
            })
            .collect()
    }
}

/// `Σ coeffs_i·λ_i ≡ rhs (mod modulus)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    pub coeffs: Vec<BigInt>,
    pub rhs: BigInt,
    pub modulus: BigInt,
}

impl Congruence {
    pub fn holds(&self, p: &[BigInt]) -> bool {
        (dot(&self.coeffs, p) - &self.rhs).mod_floor(&self.modulus).is_zero()
    }
}

/// `shift + basis·Z^dim` with a lower-triangular Hermite basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineLattice {
    dim: usize,
    shift: Vec<BigInt>,
    basis: IntMatrix,
    determinant: BigInt,
    congruence: Option<Congruence>,
}

impl AffineLattice {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinatewise-reduced representative in `[0, h_ii)`; lexicographically smallest
    /// nonnegative point of the lattice.
    pub fn shift(&self) -> &[BigInt] {
        &self.shift
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn determinant(&self) -> &BigInt {
        &self.determinant
    }

    pub fn congruence(&self) -> Option<&Congruence> {
        self.congruence.as_ref()
    }

    pub fn member(&self, p: &[BigInt]) -> bool {
        if p.len() != self.dim {
            return false;
        }
        if let Some(c) = &self.congruence {
            return c.holds(p);
        }
        let d: Vec<BigInt> = p.iter().zip(&self.shift).map(|(x, y)| x - y).collect();
        reduce_mod_hermite(&self.basis, &d).iter().all(Zero::is_zero)
    }

    /// Whether `v` lies in the direction lattice (the lattice through the origin).
    pub fn direction_member(&self, v: &[BigInt]) -> bool {
        reduce_mod_hermite(&self.basis, v).iter().all(Zero::is_zero)
    }

    /// Canonical representative of `p` modulo the direction lattice.
    pub fn coset_key(&self, p: &[BigInt]) -> Vec<BigInt> {
        reduce_mod_hermite(&self.basis, p)
    }
}

/// `Λ(A,b) = π_γ(Γ(A,b))`; with `b = 0` this is `Λ(A)`.
pub fn project_lattice(ctx: &ProjectionContext) -> Result<AffineLattice> {
    let r = solve_integer(ctx.a(), ctx.b()).ok_or(Error::NoIntegerSolution)?;
    let g = kernel_basis(ctx.a())?;
    let f = g.select_rows(ctx.gamma_bar());
    let basis = lattice_hermite(&f)?;
    let determinant = hermite_det(&basis);
    let shift = reduce_mod_hermite(&basis, &ctx.project(&r));
    let congruence = (ctx.m() == 1).then(|| Congruence {
        coeffs: ctx.project(ctx.a().row(0)),
        rhs: ctx.b()[0].clone(),
        modulus: ctx.det().abs(),
    });
    Ok(AffineLattice {
        dim: ctx.k(),
        shift,
        basis,
        determinant,
        congruence,
    })
}

/// `|det(A_γ)| / gcd(A)`, the determinant of `Λ(A)` by the minor formula.
pub fn det_by_minors(ctx: &ProjectionContext) -> Result<BigInt> {
    let s = minor_stats(ctx.a())?;
    Ok(ctx.det().abs() / s.gcd_minors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{int, ints, rat};
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn worked_2x4() -> ProjectionContext {
        ProjectionContext::new(
            IntMatrix::from_rows(&[[2, 0, 5, 5], [0, 4, 2, -1]]),
            ints(&[20, 3]),
            vec![0, 1],
        )
        .unwrap()
    }

    fn knap(b: i64) -> ProjectionContext {
        ProjectionContext::new(IntMatrix::from_rows(&[[4, 2, 1]]), ints(&[b]), vec![0]).unwrap()
    }

    #[test]
    fn knapsack_projection() {
        let l = project_lattice(&knap(7)).unwrap();
        assert_eq!(l.determinant(), &int(4));
        // 2 l2 + l3 ≡ 3 (mod 4)
        for x in 0..4i64 {
            for y in 0..4i64 {
                assert_eq!(l.member(&ints(&[x, y])), (2 * x + y) % 4 == 3, "({x},{y})");
            }
        }
        assert!(l.member(l.shift()));
        assert_eq!(l.shift(), ints(&[0, 3]).as_slice());
    }

    #[test]
    fn worked_2x4_projection() {
        let ctx = worked_2x4();
        let l = project_lattice(&ctx).unwrap();
        assert_eq!(l.determinant(), &int(8));
        assert_eq!(det_by_minors(&ctx).unwrap(), int(8));
        assert!(l.member(&ints(&[1, 3])));
        assert!(!l.member(&ints(&[1, 0])));
        assert_eq!(ctx.lift(&ints(&[1, 0]))[0], rat(15, 2));
    }

    #[test]
    fn lifts() {
        let ctx = worked_2x4();
        assert_eq!(ctx.lift_integral(&ints(&[1, 3])), Some(ints(&[0, 1, 1, 3])));
        assert_eq!(ctx.x_star(), vec![rat(10, 1), rat(3, 4), rat(0, 1), rat(0, 1)]);
        assert_eq!(knap(7).lift_integral(&ints(&[1, 1])), Some(ints(&[1, 1, 1])));
        assert_eq!(ctx.lift_integral(&ints(&[1, 0])), None);
    }

    #[test]
    fn zero_rhs_contains_origin() {
        let ctx = ProjectionContext::new(
            IntMatrix::from_rows(&[[2, 0, 5, 5], [0, 4, 2, -1]]),
            ints(&[0, 0]),
            vec![0, 1],
        )
        .unwrap();
        let l = project_lattice(&ctx).unwrap();
        assert!(l.member(&ints(&[0, 0])));
        assert_eq!(l.shift(), ints(&[0, 0]).as_slice());
    }

    #[test]
    fn no_integer_solution() {
        let ctx = ProjectionContext::new(IntMatrix::from_rows(&[[2, 4]]), ints(&[3]), vec![0]).unwrap();
        assert_eq!(project_lattice(&ctx), Err(Error::NoIntegerSolution));
    }

    #[test]
    fn cramer_matches_inverse() {
        let ctx = worked_2x4();
        let q = ctx.q_scaled();
        let d = Rat::from_integer(ctx.det().abs());
        let cr = ctx.cramer_ratios();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(-Rat::from_integer(q[(i, j)].clone()) / &d, cr[i][j]);
            }
        }
    }

    fn instance() -> impl Strategy<Value = (IntMatrix, Vec<BigInt>, Vec<usize>)> {
        (
            1usize..=2,
            proptest::collection::vec(-6i64..=6, 10),
            proptest::collection::vec(0i64..=3, 5),
        )
            .prop_filter_map("need a basis", |(m, e, w)| {
                let n = if m == 1 { 3 } else { 4 };
                let rows: Vec<Vec<i64>> = (0..m).map(|i| e[i * n..(i + 1) * n].to_vec()).collect();
                let a = IntMatrix::from_rows(&rows);
                let gamma = crate::minors::bases(&a).into_iter().next()?.columns;
                let b = a.mul_vec(&ints(&w[..n]));
                Some((a, b, gamma))
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn membership_iff_integral_lift((a, b, gamma) in instance()) {
            let ctx = ProjectionContext::new(a, b, gamma).unwrap();
            let l = project_lattice(&ctx).unwrap();
            prop_assert_eq!(l.determinant().clone(), det_by_minors(&ctx).unwrap());
            let k = ctx.k();
            let pts: Vec<Vec<i64>> = if k == 1 {
                (-5..=5).map(|x| vec![x]).collect()
            } else {
                (-5..=5).flat_map(|x| (-5..=5).map(move |y| vec![x, y])).collect()
            };
            for p in pts {
                let p = ints(&p);
                let lifted = ctx.lift(&p);
                let integral = lifted.iter().all(|v| v.is_integer());
                prop_assert_eq!(l.member(&p), integral);
                if let Some(x) = ctx.lift_integral(&p) {
                    prop_assert_eq!(ctx.a().mul_vec(&x), ctx.b().to_vec());
                    prop_assert_eq!(ctx.project(&x), p);
                }
            }
        }

        #[test]
        fn coset_count_equals_determinant((a, b, gamma) in instance()) {
            let ctx = ProjectionContext::new(a, b, gamma).unwrap();
            let l = project_lattice(&ctx).unwrap();
            let det: i64 = l.determinant().try_into().unwrap();
            let k = ctx.k();
            let mut keys = HashSet::new();
            let mut idx = vec![0i64; k];
            loop {
                keys.insert(l.coset_key(&ints(&idx)));
                let mut i = 0;
                while i < k && idx[i] == det - 1 { idx[i] = 0; i += 1; }
                if i == k { break; }
                idx[i] += 1;
            }
            prop_assert_eq!(keys.len() as i64, det);
        }
    }
}
