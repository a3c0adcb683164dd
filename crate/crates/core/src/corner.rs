//! Sails of projected affine lattices and vertices of corner polyhedra.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::cone::{extreme_rays, Cone};
use crate::error::{Error, Result};
use crate::lattice::{project_lattice, AffineLattice, ProjectionContext};
use crate::lp::in_conv_plus_cone;
use crate::matrix::{rat_combination, rat_rank, IntMatrix};
use crate::minors::{bases, minor_stats, Basis};
use crate::num::{ints, support_size, to_rats, Rat};

/// Upper limit on the number of points visited in a product-bounded region.
pub const REGION_CAP: u64 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sail {
    pub lattice: AffineLattice,
    pub cone: Cone,
    /// Sorted lexicographically.
    pub vertices: Vec<Vec<BigInt>>,
    /// Product bound `∏(x_i+1) <= candidate_bound` used for the candidate region.
    pub candidate_bound: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerVertexSet {
    /// Basis whose nonbasic coordinates carry the projection.
    pub gamma: Vec<usize>,
    /// Present for `CP_τ`.
    pub tau: Option<Vec<usize>>,
    pub projected: Sail,
    /// `lifted[i]` is the lift of `projected.vertices[i]`.
    pub lifted: Vec<Vec<BigInt>>,
}

/// `∏(x_i + 1)`.
pub fn box_count(x: &[BigInt]) -> BigInt {
    x.iter().fold(BigInt::one(), |acc, v| acc * (v + 1u32))
}

/// Visit every `x ∈ Z^dim_{>=0}` with `∏(x_i+1) <= bound`, lexicographically.
pub fn for_each_in_region<F: FnMut(&[i64])>(dim: usize, bound: &BigInt, mut f: F) -> Result<()> {
    let Some(bound) = bound.to_u64() else {
        return Err(Error::SearchSpaceTooLarge(format!("product bound {bound}")));
    };
    if bound == 0 {
        return Ok(());
    }
    let mut visited = 0u64;
    let mut cur = vec![0i64; dim];
    fn rec<F: FnMut(&[i64])>(
        i: usize,
        prod: u64,
        bound: u64,
        cur: &mut Vec<i64>,
        visited: &mut u64,
        f: &mut F,
    ) -> Result<()> {
        if i == cur.len() {
            *visited += 1;
            if *visited > REGION_CAP {
                return Err(Error::SearchSpaceTooLarge(format!(
                    "more than {REGION_CAP} candidate points"
                )));
            }
            f(cur);
            return Ok(());
        }
        let mut v = 0u64;
        while prod * (v + 1) <= bound {
            cur[i] = v as i64;
            rec(i + 1, prod * (v + 1), bound, cur, visited, f)?;
            v += 1;
        }
        cur[i] = 0;
        Ok(())
    }
    rec(0, 1, bound, &mut cur, &mut visited, &mut f)
}

/// Irreducibility of `x` with respect to the direction lattice of `lattice` and the cone:
/// `(−x + C) ∩ (x − C)` contains no nonzero lattice vector.
pub fn is_irreducible(x: &[BigInt], lattice: &AffineLattice, cone: &Cone) -> Result<bool> {
    if x.len() != cone.dim() || !cone.contains(x) {
        return Err(Error::PointOutsideCone);
    }
    if cone.is_orthant() {
        return Ok(orthant_irreducible(x, lattice));
    }
    cone_irreducible(x, lattice, cone)
}

fn cone_irreducible(x: &[BigInt], lattice: &AffineLattice, cone: &Cone) -> Result<bool> {
    // The set lies in the box [−x, x] because C is inside the orthant.
    if x.iter().any(Signed::is_negative) {
        return Err(Error::DomainError("cone must lie in the nonnegative orthant".into()));
    }
    let xs: Vec<i64> = x
        .iter()
        .map(|v| {
            v.to_i64()
                .ok_or_else(|| Error::SearchSpaceTooLarge("coordinate".into()))
        })
        .collect::<Result<_>>()?;
    let mut v: Vec<i64> = xs.iter().map(|&c| -c).collect();
    loop {
        if v.iter().any(|&c| c != 0) {
            let vb = ints(&v);
            let plus: Vec<BigInt> = x.iter().zip(&vb).map(|(a, b)| a + b).collect();
            let minus: Vec<BigInt> = x.iter().zip(&vb).map(|(a, b)| a - b).collect();
            if cone.contains(&plus) && cone.contains(&minus) && lattice.direction_member(&vb) {
                return Ok(false);
            }
        }
        let mut i = 0;
        while i < v.len() && v[i] == xs[i] {
            v[i] = -xs[i];
            i += 1;
        }
        if i == v.len() {
            return Ok(true);
        }
        v[i] += 1;
    }
}

/// Orthant form: all points of the box `[0, x]` lie in distinct cosets.
fn orthant_irreducible(x: &[BigInt], lattice: &AffineLattice) -> bool {
    if &box_count(x) > lattice.determinant() {
        return false;
    }
    let xs: Vec<i64> = x.iter().map(|v| v.to_i64().unwrap_or(i64::MAX)).collect();
    let mut seen = HashSet::new();
    let mut y = vec![0i64; xs.len()];
    loop {
        if !seen.insert(lattice.coset_key(&ints(&y))) {
            return false;
        }
        let mut i = 0;
        while i < y.len() && y[i] == xs[i] {
            y[i] = 0;
            i += 1;
        }
        if i == y.len() {
            return true;
        }
        y[i] += 1;
    }
}

/// Keep the candidates that are vertices of `conv(candidates) + C`.
///
/// Candidates must contain every vertex of the sail; irreducible ones are kept as the
/// working set and each is tested against the hull of the others plus the cone.
pub fn vertices_among(candidates: &[Vec<BigInt>], lattice: &AffineLattice, cone: &Cone) -> Result<Vec<Vec<BigInt>>> {
    let mut pts = candidates.to_vec();
    pts.sort();
    pts.dedup();
    let flags: Vec<Result<bool>> = pts.par_iter().map(|x| is_irreducible(x, lattice, cone)).collect();
    let mut irred = Vec::new();
    for (p, f) in pts.into_iter().zip(flags) {
        if f? {
            irred.push(p);
        }
    }
    let rays: Vec<Vec<Rat>> = extreme_rays(cone)?.iter().map(|r| to_rats(r)).collect();
    let rats: Vec<Vec<Rat>> = irred.iter().map(|p| to_rats(p)).collect();
    let keep: Vec<Result<bool>> = (0..irred.len())
        .into_par_iter()
        .map(|i| {
            let dominated = irred.iter().enumerate().any(|(j, y)| {
                j != i && {
                    let d: Vec<BigInt> = irred[i].iter().zip(y).map(|(a, b)| a - b).collect();
                    cone.contains(&d)
                }
            });
            if dominated {
                return Ok(false);
            }
            let others: Vec<Vec<Rat>> = rats
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, p)| p.clone())
                .collect();
            Ok(!in_conv_plus_cone(&rats[i], &others, &rays)?)
        })
        .collect();
    let mut out = Vec::new();
    for (p, k) in irred.into_iter().zip(keep) {
        if k? {
            out.push(p);
        }
    }
    Ok(out)
}

/// Lattice points of the cone with `∏(x_i+1) <= bound`.
pub fn region_points(lattice: &AffineLattice, cone: &Cone, bound: &BigInt) -> Result<Vec<Vec<BigInt>>> {
    let mut out = Vec::new();
    for_each_in_region(lattice.dim(), bound, |x| {
        let p = ints(x);
        if lattice.member(&p) && cone.contains(&p) {
            out.push(p);
        }
    })?;
    Ok(out)
}

/// Vertices of `conv(L ∩ C)` for a cone `C` inside the orthant.
///
/// For the orthant the candidate region is `∏(x_i+1) <= det(L)`. For a cone cut out by
/// `d` further inequalities it is `∏(x_i+1) <= k^d det(L)` with `k` the dimension.
pub fn sail_vertices(lattice: &AffineLattice, cone: &Cone) -> Result<Sail> {
    let k = lattice.dim();
    if cone.dim() != k {
        return Err(Error::Shape("cone and lattice dimensions differ".into()));
    }
    let bound = if cone.is_orthant() {
        lattice.determinant().clone()
    } else {
        let d = cone.rows().len().saturating_sub(k);
        num_traits::pow(BigInt::from(k), d) * lattice.determinant()
    };
    let candidates = region_points(lattice, cone, &bound)?;
    if candidates.is_empty() {
        return Err(Error::EmptySail);
    }
    let vertices = vertices_among(&candidates, lattice, cone)?;
    Ok(Sail {
        lattice: lattice.clone(),
        cone: cone.clone(),
        vertices,
        candidate_bound: bound,
    })
}

/// Vertices of `CP_γ(A,b)` through the orthant sail of `Λ(A,b)`.
pub fn corner_vertices(ctx: &ProjectionContext) -> Result<CornerVertexSet> {
    let lattice = project_lattice(ctx)?;
    let sail = sail_vertices(&lattice, &Cone::orthant(ctx.k()))?;
    let lifted = sail
        .vertices
        .iter()
        .map(|u| ctx.lift_integral(u).expect("lattice point lifts integrally"))
        .collect();
    Ok(CornerVertexSet {
        gamma: ctx.gamma().to_vec(),
        tau: None,
        projected: sail,
        lifted,
    })
}

fn check_index_set(set: &[usize], n: usize) -> Result<Vec<usize>> {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.len() != set.len() || s.iter().any(|&i| i >= n) {
        return Err(Error::Shape(format!("index set {set:?} is not a subset of 0..{n}")));
    }
    Ok(s)
}

/// Bases of `A` containing `tau`, lexicographic.
pub fn bases_containing(a: &IntMatrix, tau: &[usize]) -> Vec<Basis> {
    bases(a)
        .into_iter()
        .filter(|b| tau.iter().all(|i| b.columns.contains(i)))
        .collect()
}

/// Basis `γ ⊇ τ` maximizing `|det A_γ|·∏_{i∈γ∖τ}(z_i+1)`, lexicographically first on ties.
///
/// The factors over `τ` are common to every candidate and are left out, so `z_τ` may
/// have any sign.
pub fn choose_basis_prop2(a: &IntMatrix, z: &[BigInt], tau: &[usize]) -> Result<Vec<usize>> {
    let n = a.cols();
    if z.len() != n {
        return Err(Error::Shape("z has the wrong length".into()));
    }
    let tau = check_index_set(tau, n)?;
    if (0..n).any(|j| !tau.contains(&j) && z[j].is_negative()) {
        return Err(Error::InvalidPoint("z must be nonnegative outside tau".into()));
    }
    let mut best: Option<(BigInt, Vec<usize>)> = None;
    for b in bases_containing(a, &tau) {
        let score = b
            .columns
            .iter()
            .filter(|i| !tau.contains(i))
            .fold(b.det.abs(), |acc, &i| acc * (&z[i] + 1u32));
        if best.as_ref().is_none_or(|(s, _)| score > *s) {
            best = Some((score, b.columns));
        }
    }
    best.map(|(_, g)| g).ok_or(Error::NoBasisContainsTau)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarefulRow {
    pub index: usize,
    /// `z_i + 1`.
    pub lhs: Rat,
    /// `(1/r) Σ_j |q_ij (z_j+1)|`.
    pub rhs: Rat,
}

impl CarefulRow {
    pub fn holds(&self) -> bool {
        self.lhs >= self.rhs
    }
}

/// Rows `i ∈ γ∖τ` of the basis-choice inequality. Requires `τ̄ ⊆ supp(z)`.
pub fn careful_choice_rows(a: &IntMatrix, z: &[BigInt], tau: &[usize], gamma: &[usize]) -> Result<Vec<CarefulRow>> {
    let n = a.cols();
    if (0..n).any(|j| !tau.contains(&j) && z[j].is_zero()) {
        return Err(Error::DomainError("complement of tau must lie in supp(z)".into()));
    }
    let ctx = ProjectionContext::new(a.clone(), a.mul_vec(z), gamma.to_vec())?;
    let r = support_size(&ctx.project(z));
    if r == 0 {
        return Ok(Vec::new());
    }
    let q = ctx.q_scaled();
    let det = Rat::from_integer(ctx.det().abs());
    let mut rows = Vec::new();
    for (t, &i) in ctx.gamma().iter().enumerate() {
        if tau.contains(&i) {
            continue;
        }
        let sum: BigInt = ctx
            .gamma_bar()
            .iter()
            .enumerate()
            .map(|(s, &j)| (&q[(t, s)] * (&z[j] + 1u32)).abs())
            .sum();
        rows.push(CarefulRow {
            index: i,
            lhs: Rat::from_integer(&z[i] + 1u32),
            rhs: Rat::from_integer(sum) / (&det * Rat::from_integer(BigInt::from(r))),
        });
    }
    Ok(rows)
}

/// Checks that `tau` is the support of a vertex of `P(A,b)` and returns that vertex.
pub fn vertex_with_support(a: &IntMatrix, b: &[BigInt], tau: &[usize]) -> Result<Vec<Rat>> {
    let n = a.cols();
    let tau = check_index_set(tau, n)?;
    let cols: Vec<Vec<Rat>> = tau.iter().map(|&j| to_rats(&a.column(j))).collect();
    if rat_rank(&cols) < tau.len() {
        return Err(Error::InvalidTau);
    }
    let coeffs = rat_combination(&cols, &to_rats(b)).ok_or(Error::InvalidTau)?;
    if coeffs.iter().any(|c| !c.is_positive()) {
        return Err(Error::InvalidTau);
    }
    let mut x = vec![Rat::zero(); n];
    for (&j, c) in tau.iter().zip(coeffs) {
        x[j] = c;
    }
    Ok(x)
}

/// Reference basis for `CP_τ`: largest `|det A_γ|` over `γ ⊇ τ`, lexicographically first.
pub fn reference_basis(a: &IntMatrix, tau: &[usize]) -> Result<Vec<usize>> {
    choose_basis_prop2(a, &vec![BigInt::zero(); a.cols()], tau)
}

/// The cone `{y >= 0, q_i·y >= 0 for i ∈ γ∖τ}` in the nonbasic coordinates of `ctx`.
pub fn tau_cone(ctx: &ProjectionContext, tau: &[usize]) -> Cone {
    let q = ctx.q_scaled();
    let extra = ctx
        .gamma()
        .iter()
        .enumerate()
        .filter(|(_, i)| !tau.contains(i))
        .map(|(t, _)| q.row(t).to_vec())
        .collect();
    Cone::orthant_with(ctx.k(), extra).expect("row length matches")
}

/// Vertices of `CP_τ(A,b) = conv{x ∈ Z^n : Ax = b, x_τ̄ >= 0}`.
///
/// Vertices are enumerated in the coordinates of the reference basis. The candidate
/// set is the union, over all bases `γ' ⊇ τ`, of the integer points with
/// `∏_{γ̄'}(x_j+1) <= (n−m)^d |det A_γ'| / gcd(A)`, which contains every vertex
/// whichever basis certifies it.
pub fn corner_tau_vertices(a: &IntMatrix, b: &[BigInt], tau: &[usize]) -> Result<CornerVertexSet> {
    let (m, n) = (a.rows(), a.cols());
    vertex_with_support(a, b, tau)?;
    let tau = check_index_set(tau, n)?;
    let stats = minor_stats(a)?;
    let gamma0 = reference_basis(a, &tau)?;
    let ctx0 = ProjectionContext::new(a.clone(), b.to_vec(), gamma0.clone())?;
    let lattice = project_lattice(&ctx0)?;
    let cone = tau_cone(&ctx0, &tau);
    let k = n - m;
    let d = m - tau.len();
    let factor = num_traits::pow(BigInt::from(k), d);

    let mut candidates: Vec<Vec<BigInt>> = Vec::new();
    let mut widest = BigInt::zero();
    for basis in bases_containing(a, &tau) {
        let ctx = ProjectionContext::new(a.clone(), b.to_vec(), basis.columns.clone())?;
        let bound = &factor * basis.det.abs() / &stats.gcd_minors;
        if bound > widest {
            widest = bound.clone();
        }
        let extra: Vec<usize> = basis.columns.iter().copied().filter(|i| !tau.contains(i)).collect();
        for_each_in_region(k, &bound, |u| {
            if let Some(x) = ctx.lift_integral(&ints(u)) {
                if extra.iter().all(|&i| !x[i].is_negative()) {
                    candidates.push(ctx0.project(&x));
                }
            }
        })?;
    }
    if candidates.is_empty() {
        return Err(Error::EmptySail);
    }
    let vertices = vertices_among(&candidates, &lattice, &cone)?;
    let lifted = vertices
        .iter()
        .map(|u| ctx0.lift_integral(u).expect("lattice point lifts integrally"))
        .collect();
    Ok(CornerVertexSet {
        gamma: gamma0,
        tau: Some(tau),
        projected: Sail {
            lattice,
            cone,
            vertices,
            candidate_bound: widest,
        },
        lifted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{int, rat};

    fn knap_ctx(a: &[i64], b: i64) -> ProjectionContext {
        ProjectionContext::new(IntMatrix::from_rows(&[a]), ints(&[b]), vec![0]).unwrap()
    }

    fn worked_2x4() -> ProjectionContext {
        ProjectionContext::new(
            IntMatrix::from_rows(&[[2, 0, 5, 5], [0, 4, 2, -1]]),
            ints(&[20, 3]),
            vec![0, 1],
        )
        .unwrap()
    }

    #[test]
    fn irreducibility_examples() {
        let l = project_lattice(&knap_ctx(&[4, 2, 1], 0)).unwrap();
        let o = Cone::orthant(2);
        assert!(is_irreducible(&ints(&[0, 0]), &l, &o).unwrap());
        assert!(is_irreducible(&ints(&[1, 1]), &l, &o).unwrap());
        assert!(!is_irreducible(&ints(&[3, 1]), &l, &o).unwrap());
        assert_eq!(is_irreducible(&ints(&[-1, 0]), &l, &o), Err(Error::PointOutsideCone));
    }

    #[test]
    fn cone_form_agrees_with_orthant_form() {
        let l = project_lattice(&knap_ctx(&[4, 2, 1], 7)).unwrap();
        // same orthant written with a redundant inequality, so the generic path runs
        let c = Cone::orthant(2);
        for x in 0..5i64 {
            for y in 0..5i64 {
                let p = ints(&[x, y]);
                assert_eq!(
                    orthant_irreducible(&p, &l),
                    cone_irreducible(&p, &l, &c).unwrap(),
                    "({x},{y})"
                );
            }
        }
    }

    #[test]
    fn knapsack_sail() {
        let l = project_lattice(&knap_ctx(&[4, 2, 1], 7)).unwrap();
        let s = sail_vertices(&l, &Cone::orthant(2)).unwrap();
        assert_eq!(s.vertices, vec![ints(&[0, 3]), ints(&[1, 1])]);
        assert_eq!(s.candidate_bound, int(4));
    }

    #[test]
    fn worked_2x4_corner() {
        let cv = corner_vertices(&worked_2x4()).unwrap();
        assert_eq!(cv.projected.vertices, vec![ints(&[1, 3])]);
        assert_eq!(cv.lifted, vec![ints(&[0, 1, 1, 3])]);
    }

    #[test]
    fn knapsack_corner_and_integral_vertex() {
        let cv = corner_vertices(&knap_ctx(&[4, 2, 1], 7)).unwrap();
        assert_eq!(cv.lifted, vec![ints(&[1, 0, 3]), ints(&[1, 1, 1])]);
        let cv = corner_vertices(&knap_ctx(&[4, 2, 1], 8)).unwrap();
        assert_eq!(cv.lifted, vec![ints(&[2, 0, 0])]);
    }

    #[test]
    fn prop2_examples() {
        let a = IntMatrix::from_rows(&[[2, 0, 5, 5], [0, 4, 2, -1]]);
        let z = ints(&[0, 1, 1, 3]);
        // candidates {1,2}: 8*1, {2,3}: 20*2, {2,4}: 20*4
        assert_eq!(choose_basis_prop2(&a, &z, &[1]).unwrap(), vec![1, 3]);
        assert_eq!(choose_basis_prop2(&a, &z, &[0, 1]).unwrap(), vec![0, 1]);
        let k = IntMatrix::from_rows(&[[4, 2, 1]]);
        assert_eq!(choose_basis_prop2(&k, &ints(&[1, 1, 1]), &[0]).unwrap(), vec![0]);
        let sing = IntMatrix::from_rows(&[[1, 0, 0], [0, 0, 0]]);
        assert_eq!(
            choose_basis_prop2(&sing, &ints(&[0, 0, 0]), &[]),
            Err(Error::NoBasisContainsTau)
        );
    }

    #[test]
    fn tau_validation() {
        let a = IntMatrix::from_rows(&[[2, 0, 5, 5], [0, 4, 2, -1]]);
        let x = vertex_with_support(&a, &ints(&[20, 3]), &[0, 1]).unwrap();
        assert_eq!(x[1], rat(3, 4));
        assert_eq!(vertex_with_support(&a, &ints(&[20, 3]), &[0]), Err(Error::InvalidTau));
        assert_eq!(vertex_with_support(&a, &ints(&[20, 0]), &[0]).unwrap()[0], rat(10, 1));
    }

    #[test]
    fn tau_equal_to_basis_matches_gamma_corner() {
        let a = IntMatrix::from_rows(&[[2, 0, 5, 5], [0, 4, 2, -1]]);
        let t = corner_tau_vertices(&a, &ints(&[20, 3]), &[0, 1]).unwrap();
        assert_eq!(t.lifted, vec![ints(&[0, 1, 1, 3])]);
        let k = IntMatrix::from_rows(&[[4, 2, 1]]);
        let t = corner_tau_vertices(&k, &ints(&[7]), &[0]).unwrap();
        assert_eq!(t.lifted, corner_vertices(&knap_ctx(&[4, 2, 1], 7)).unwrap().lifted);
    }

    #[test]
    fn degenerate_tau_corner() {
        // x* = (10, 0, 0, 0) is degenerate for b = (20, 0); tau = {1}
        let a = IntMatrix::from_rows(&[[2, 0, 5, 5], [0, 4, 2, -1]]);
        let t = corner_tau_vertices(&a, &ints(&[20, 0]), &[0]).unwrap();
        assert!(t.lifted.contains(&ints(&[10, 0, 0, 0])));
        for v in &t.lifted {
            assert_eq!(a.mul_vec(v), ints(&[20, 0]));
            assert!(v[1..].iter().all(|x| !x.is_negative()));
        }
    }

    #[test]
    fn recession_sanity() {
        let ctx = worked_2x4();
        let l = project_lattice(&ctx).unwrap();
        let s = sail_vertices(&l, &Cone::orthant(2)).unwrap();
        for v in &s.vertices {
            for i in 0..2 {
                let mut w = v.clone();
                w[i] += l.determinant();
                assert!(l.member(&w));
                let mut all = s.vertices.clone();
                all.push(w.clone());
                let vs = vertices_among(&all, &l, &Cone::orthant(2)).unwrap();
                assert!(!vs.contains(&w));
            }
        }
    }
}
