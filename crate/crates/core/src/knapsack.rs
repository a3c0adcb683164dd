//! Knapsack specializations (`m = 1`, positive primitive `a`).

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::corner::{corner_vertices, CornerVertexSet};
use crate::error::{Error, Result};
use crate::lattice::ProjectionContext;
use crate::matrix::IntMatrix;
use crate::num::{gcd_all, inf_norm, pow2, support, to_rat, Rat};
use crate::transference::{check_theorem3_report, TransferenceReport};

/// Residue states allowed in the semigroup search.
pub const RESIDUE_CAP: u64 = 10_000_000;
/// Largest right-hand side accepted by the exact value DP.
pub const VALUE_CAP: u64 = 1_000_000;
/// Node budget of the bounded proximity search.
pub const SEARCH_CAP: u64 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnapsackInstance {
    pub a: Vec<BigInt>,
    pub b: BigInt,
    pub c: Option<Vec<BigInt>>,
}

impl KnapsackInstance {
    pub fn new(a: Vec<BigInt>, b: BigInt, c: Option<Vec<BigInt>>) -> Result<Self> {
        validate(&a, &b)?;
        if let Some(c) = &c {
            if c.len() != a.len() {
                return Err(Error::Shape(format!("c has length {}, a has {}", c.len(), a.len())));
            }
        }
        Ok(Self { a, b, c })
    }

    pub fn context(&self) -> ProjectionContext {
        context(&self.a, &self.b)
    }
}

/// `n >= 2`, all `a_i > 0`, `gcd(a) = 1`, `b >= 0`.
pub fn validate(a: &[BigInt], b: &BigInt) -> Result<()> {
    if a.len() < 2 {
        return Err(Error::InvalidInstance("knapsack needs n >= 2".into()));
    }
    if a.iter().any(|v| !v.is_positive()) {
        return Err(Error::InvalidInstance("knapsack weights must be positive".into()));
    }
    if !gcd_all(a).is_one() {
        return Err(Error::InvalidInstance("knapsack weights must have gcd 1".into()));
    }
    if b.is_negative() {
        return Err(Error::InvalidInstance(
            "knapsack right-hand side must be nonnegative".into(),
        ));
    }
    Ok(())
}

/// Context with `γ = {0}`.
pub fn context(a: &[BigInt], b: &BigInt) -> ProjectionContext {
    ProjectionContext::new(
        IntMatrix::new(1, a.len(), a.to_vec()).expect("row shape"),
        vec![b.clone()],
        vec![0],
    )
    .expect("positive first weight")
}

fn to_u128(v: &BigInt) -> Result<u128> {
    v.to_u128()
        .ok_or_else(|| Error::SearchSpaceTooLarge(format!("{v} does not fit the residue search")))
}

/// Membership of `b` in `Sg(a)` with a witness `z >= 0`, `aᵀz = b`.
///
/// Shortest paths over residues modulo the smallest weight; `gcd(a) = 1` is not required.
pub fn in_semigroup(a: &[BigInt], b: &BigInt) -> Result<Option<Vec<BigInt>>> {
    let n = a.len();
    if b.is_negative() {
        return Ok(None);
    }
    if b.is_zero() {
        return Ok(Some(vec![BigInt::zero(); n]));
    }
    let p = (0..n)
        .filter(|&i| a[i].is_positive())
        .min_by(|&i, &j| a[i].cmp(&a[j]))
        .ok_or_else(|| Error::InvalidInstance("no positive weight".into()))?;
    let q = to_u128(&a[p])?;
    if q > RESIDUE_CAP as u128 {
        return Err(Error::SearchSpaceTooLarge(format!("{q} residues")));
    }
    let q = q as usize;
    let w: Vec<Option<u128>> = a
        .iter()
        .map(|v| if v.is_positive() { v.to_u128() } else { None })
        .collect();
    let mut dist: Vec<Option<u128>> = vec![None; q];
    let mut pred: Vec<Option<(usize, usize)>> = vec![None; q];
    dist[0] = Some(0);
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0u128, 0usize)));
    while let Some(Reverse((d, r))) = heap.pop() {
        if dist[r] != Some(d) {
            continue;
        }
        for (j, wj) in w.iter().enumerate() {
            let Some(wj) = wj else { continue };
            if j == p {
                continue;
            }
            let nd = d
                .checked_add(*wj)
                .ok_or_else(|| Error::SearchSpaceTooLarge("overflow".into()))?;
            let nr = ((r as u128 + wj % q as u128) % q as u128) as usize;
            if dist[nr].is_none_or(|old| nd < old) {
                dist[nr] = Some(nd);
                pred[nr] = Some((r, j));
                heap.push(Reverse((nd, nr)));
            }
        }
    }
    let target = (b % BigInt::from(q)).to_usize().expect("residue");
    let Some(d) = dist[target] else { return Ok(None) };
    if BigInt::from(d) > *b {
        return Ok(None);
    }
    let mut z = vec![BigInt::zero(); n];
    let mut r = target;
    while let Some((prev, j)) = pred[r] {
        z[j] += 1u32;
        r = prev;
    }
    z[p] = (b - BigInt::from(d)) / BigInt::from(q);
    debug_assert_eq!(&a.iter().zip(&z).map(|(x, y)| x * y).sum::<BigInt>(), b);
    Ok(Some(z))
}

fn require_semigroup(a: &[BigInt], b: &BigInt) -> Result<Vec<BigInt>> {
    in_semigroup(a, b)?.ok_or(Error::NotInSemigroup)
}

/// Corner vertices of `CP_γ(a,b)`, `γ = {0}`.
pub fn knapsack_corner(a: &[BigInt], b: &BigInt) -> Result<CornerVertexSet> {
    corner_vertices(&context(a, b))
}

/// The corner vertex maximizing `z_1`, lexicographically smallest on `z_γ̄` among ties.
/// It lies in `P(a,b)`.
pub fn corner_vertex_in_p(a: &[BigInt], b: &BigInt) -> Result<Vec<BigInt>> {
    validate(a, b)?;
    require_semigroup(a, b)?;
    let cv = knapsack_corner(a, b)?;
    let best = cv
        .lifted
        .iter()
        .min_by(|x, y| y[0].cmp(&x[0]).then_with(|| x[1..].cmp(&y[1..])))
        .cloned()
        .ok_or(Error::EmptySail)?;
    if best.iter().any(Signed::is_negative) {
        return Err(Error::InvalidVertex(format!("selected vertex {best:?} leaves P(a,b)")));
    }
    Ok(best)
}

pub fn check_theorem3(a: &[BigInt], b: &BigInt) -> Result<TransferenceReport> {
    let z = corner_vertex_in_p(a, b)?;
    check_theorem3_report(a, b, &z)
}

/// Index of the optimal LP vertex `(b/a_i) e_i`, lex-least on ties.
pub fn lp_vertex(c: &[BigInt], a: &[BigInt], b: &BigInt) -> usize {
    (0..a.len())
        .min_by(|&i, &j| {
            let vi = Rat::new(&c[i] * b, a[i].clone());
            let vj = Rat::new(&c[j] * b, a[j].clone());
            vi.cmp(&vj).then(i.cmp(&j))
        })
        .expect("nonempty")
}

/// `min{cᵀx : aᵀx = b, x >= 0}` over the simplex.
pub fn lp_value(c: &[BigInt], a: &[BigInt], b: &BigInt) -> Rat {
    let i = lp_vertex(c, a, b);
    Rat::new(&c[i] * b, a[i].clone())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IpOptimum {
    #[serde(with = "crate::serde_big::int")]
    pub value: BigInt,
    /// Lexicographically smallest optimal point.
    #[serde(with = "crate::serde_big::int_vec")]
    pub argmin: Vec<BigInt>,
}

/// Exact `min{cᵀx : aᵀx = b, x in Z^n_{>=0}}` by a value-indexed DP.
pub fn ip_value(c: &[BigInt], a: &[BigInt], b: &BigInt) -> Result<IpOptimum> {
    let n = a.len();
    if c.len() != n {
        return Err(Error::Shape("c and a differ in length".into()));
    }
    validate(a, b)?;
    let bu = b
        .to_u64()
        .filter(|&v| v <= VALUE_CAP)
        .ok_or_else(|| Error::SearchSpaceTooLarge(format!("b = {b} exceeds {VALUE_CAP}")))? as usize;
    require_semigroup(a, b)?;
    let cost: Vec<i128> = c
        .iter()
        .map(|v| {
            v.to_i128()
                .ok_or_else(|| Error::DomainError("cost out of range".into()))
        })
        .collect::<Result<_>>()?;
    let w: Vec<usize> = a.iter().map(|v| v.to_usize().unwrap_or(usize::MAX)).collect();
    const INF: i128 = i128::MAX;
    // g[k][v]: best cost reaching v with items k..n
    let mut g = vec![vec![INF; bu + 1]; n + 1];
    g[n][0] = 0;
    for k in (0..n).rev() {
        for v in 0..=bu {
            let mut best = g[k + 1][v];
            if w[k] <= v && g[k][v - w[k]] != INF {
                best = best.min(g[k][v - w[k]] + cost[k]);
            }
            g[k][v] = best;
        }
    }
    if g[0][bu] == INF {
        return Err(Error::NotInSemigroup);
    }
    let mut x = vec![BigInt::zero(); n];
    let mut v = bu;
    for k in 0..n {
        let target = g[k][v];
        let mut t = 0usize;
        loop {
            let rest = v - t * w[k];
            let sub = g[k + 1][rest];
            if sub != INF && sub + cost[k] * t as i128 == target {
                break;
            }
            t += 1;
        }
        x[k] = BigInt::from(t);
        v -= t * w[k];
    }
    Ok(IpOptimum {
        value: BigInt::from(g[0][bu]),
        argmin: x,
    })
}

/// Corollary-1 verdict for one corner vertex lying in `P(a,b)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cor1Verdict {
    /// Original coordinates.
    #[serde(with = "crate::serde_big::int_vec")]
    pub z_star: Vec<BigInt>,
    pub r: usize,
    #[serde(with = "crate::serde_big::rat")]
    pub delta: Rat,
    /// `0`, `2(‖a‖∞−1)‖c‖∞`, or `r(r+1)/2^r·‖a‖∞‖c‖∞`.
    #[serde(with = "crate::serde_big::rat")]
    pub bound: Rat,
    pub strict: bool,
    pub holds: bool,
    /// `δ·Σ_{supp(x*−z*)}|c_i|`.
    #[serde(with = "crate::serde_big::rat")]
    pub chain_mid: Rat,
    /// `(r+1)·δ·‖c‖∞`.
    #[serde(with = "crate::serde_big::rat")]
    pub chain_top: Rat,
    pub chain_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapReport {
    /// `perm[i]` is the original index placed at position `i`; `perm[0]` is the LP vertex.
    #[serde(with = "crate::serde_big::one_based")]
    pub permutation: Vec<usize>,
    #[serde(with = "crate::serde_big::rat")]
    pub lp_value: Rat,
    pub ip: IpOptimum,
    #[serde(with = "crate::serde_big::rat")]
    pub gap: Rat,
    pub verdicts: Vec<Cor1Verdict>,
}

impl GapReport {
    pub fn holds(&self) -> bool {
        !self.gap.is_negative() && !self.verdicts.is_empty() && self.verdicts.iter().all(|v| v.holds && v.chain_holds)
    }
}

pub fn integrality_gap_report(c: &[BigInt], a: &[BigInt], b: &BigInt) -> Result<GapReport> {
    let ip = ip_value(c, a, b)?;
    let n = a.len();
    let i0 = lp_vertex(c, a, b);
    let permutation: Vec<usize> = std::iter::once(i0).chain((0..n).filter(|&i| i != i0)).collect();
    let ap: Vec<BigInt> = permutation.iter().map(|&i| a[i].clone()).collect();
    let cp: Vec<BigInt> = permutation.iter().map(|&i| c[i].clone()).collect();
    let lp = lp_value(c, a, b);
    let gap = to_rat(&ip.value) - &lp;
    let norm_a = to_rat(&inf_norm(a));
    let norm_c = to_rat(&inf_norm(c));
    let mut x_star = vec![Rat::zero(); n];
    x_star[0] = Rat::new(b.clone(), ap[0].clone());

    let cv = knapsack_corner(&ap, b)?;
    let mut verdicts = Vec::new();
    for z in cv.lifted.iter().filter(|z| !z.iter().any(Signed::is_negative)) {
        let r = support(&z[1..]).len();
        let diff: Vec<Rat> = x_star.iter().zip(z).map(|(x, zi)| x - to_rat(zi)).collect();
        let delta = diff.iter().map(|v| v.abs()).max().unwrap_or_default();
        let (bound, strict) = match r {
            0 => (Rat::zero(), false),
            1 => (
                Rat::from_integer(BigInt::from(2)) * (&norm_a - Rat::one()) * &norm_c,
                false,
            ),
            _ => (Rat::new(BigInt::from(r * (r + 1)), pow2(r)) * &norm_a * &norm_c, true),
        };
        // a strict bound degenerates to `0 < 0` when c = 0; the gap is then 0
        let holds = if strict && !bound.is_zero() {
            gap < bound
        } else {
            gap <= bound
        };
        let csum: Rat = diff
            .iter()
            .zip(&cp)
            .filter(|(d, _)| !d.is_zero())
            .map(|(_, ci)| to_rat(&ci.abs()))
            .sum();
        let chain_mid = &delta * csum;
        let chain_top = Rat::from_integer(BigInt::from(r + 1)) * &delta * &norm_c;
        let chain_holds = gap <= chain_mid && chain_mid <= chain_top;
        let mut orig = vec![BigInt::zero(); n];
        for (pos, &i) in permutation.iter().enumerate() {
            orig[i] = z[pos].clone();
        }
        verdicts.push(Cor1Verdict {
            z_star: orig,
            r,
            delta,
            bound,
            strict,
            holds,
            chain_mid,
            chain_top,
            chain_holds,
        });
    }
    Ok(GapReport {
        permutation,
        lp_value: lp,
        ip,
        gap,
        verdicts,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExistenceWitnesses {
    /// Integer point within `‖a‖∞ − 1` of `x* = (b/a_1) e_1`.
    #[serde(with = "crate::serde_big::int_vec")]
    pub proximity: Vec<BigInt>,
    #[serde(with = "crate::serde_big::rat")]
    pub proximity_distance: Rat,
    /// Integer point of minimum support.
    #[serde(with = "crate::serde_big::int_vec")]
    pub sparse: Vec<BigInt>,
    pub sparse_support: usize,
    /// `2^{support−1} <= min a_i`.
    pub sparse_holds: bool,
}

/// Depth-first search for `Σ_{j>=1} a_j z_j = rest` with `0 <= z_j <= cap`.
fn bounded_fill(a: &[u128], rest: u128, cap: u128, out: &mut Vec<u128>, budget: &mut u64) -> Result<bool> {
    if *budget == 0 {
        return Err(Error::SearchSpaceTooLarge("proximity search budget".into()));
    }
    *budget -= 1;
    let Some((&w, tail)) = a.split_first() else {
        return Ok(rest == 0);
    };
    let max_tail: u128 = tail
        .iter()
        .map(|t| t.saturating_mul(cap))
        .fold(0u128, u128::saturating_add);
    let hi = cap.min(rest / w);
    for t in (0..=hi).rev() {
        let left = rest - t * w;
        if left > max_tail {
            break;
        }
        out.push(t);
        if bounded_fill(tail, left, cap, out, budget)? {
            return Ok(true);
        }
        out.pop();
    }
    Ok(false)
}

/// Witnesses for the additive proximity bound and the logarithmic support bound.
pub fn aho_and_sparsity_exist(a: &[BigInt], b: &BigInt) -> Result<ExistenceWitnesses> {
    validate(a, b)?;
    require_semigroup(a, b)?;
    let n = a.len();
    let norm = inf_norm(a);
    let aw: Vec<u128> = a.iter().map(to_u128).collect::<Result<_>>()?;
    let bw = to_u128(b)?;
    let cap = to_u128(&norm)? - 1;
    let x1 = Rat::new(b.clone(), a[0].clone());
    let hi = bw / aw[0];
    let lo_rat = &x1 - Rat::from_integer(norm.clone() - 1);
    let lo = if lo_rat.is_positive() {
        lo_rat.ceil().to_integer().to_u128().unwrap_or(0)
    } else {
        0
    };
    let mut budget = SEARCH_CAP;
    let mut proximity = None;
    for z1 in (lo..=hi).rev() {
        let mut out = Vec::new();
        if bounded_fill(&aw[1..], bw - z1 * aw[0], cap, &mut out, &mut budget)? {
            let mut z = vec![BigInt::from(z1)];
            z.extend(out.into_iter().map(BigInt::from));
            proximity = Some(z);
            break;
        }
    }
    let proximity = proximity.ok_or_else(|| Error::InvalidVertex("no point within the proximity bound".into()))?;
    let mut xs = vec![Rat::zero(); n];
    xs[0] = x1;
    let proximity_distance = xs
        .iter()
        .zip(&proximity)
        .map(|(x, z)| (x - to_rat(z)).abs())
        .max()
        .unwrap_or_default();

    let mut sparse = None;
    'outer: for size in 0..=n {
        for s in (0..n).combinations(size) {
            let sub: Vec<BigInt> = s.iter().map(|&i| a[i].clone()).collect();
            let hit = if sub.is_empty() {
                b.is_zero().then(Vec::new)
            } else {
                in_semigroup(&sub, b)?
            };
            if let Some(w) = hit {
                let mut z = vec![BigInt::zero(); n];
                for (k, &i) in s.iter().enumerate() {
                    z[i] = w[k].clone();
                }
                sparse = Some(z);
                break 'outer;
            }
        }
    }
    let sparse = sparse.ok_or(Error::NotInSemigroup)?;
    let sparse_support = support(&sparse).len();
    let min_a = a.iter().min().expect("nonempty");
    let sparse_holds = sparse_support == 0 || &pow2(sparse_support - 1) <= min_a;
    Ok(ExistenceWitnesses {
        proximity,
        proximity_distance,
        sparse,
        sparse_support,
        sparse_holds,
    })
}

/// `Λ(a,b)` as the congruence `Σ_{j>=2} a_j λ_j ≡ b (mod a_1)`.
pub fn congruence_member(a: &[BigInt], b: &BigInt, lambda: &[BigInt]) -> bool {
    let s: BigInt = a[1..].iter().zip(lambda).map(|(x, y)| x * y).sum();
    (s - b).is_multiple_of(&a[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{int, ints, rat};
    use proptest::prelude::*;

    #[test]
    fn semigroup_examples() {
        assert_eq!(in_semigroup(&ints(&[3, 5]), &int(7)).unwrap(), None);
        assert_eq!(in_semigroup(&ints(&[3, 5]), &int(8)).unwrap(), Some(ints(&[1, 1])));
        for b in 0..30 {
            let w = in_semigroup(&ints(&[7, 1, 9]), &int(b)).unwrap().unwrap();
            assert_eq!(7 * &w[0] + &w[1] + 9 * &w[2], int(b));
        }
        assert_eq!(in_semigroup(&ints(&[4, 6]), &int(9)).unwrap(), None);
    }

    #[test]
    fn corner_vertex_in_p_examples() {
        assert_eq!(
            corner_vertex_in_p(&ints(&[4, 2, 1]), &int(7)).unwrap(),
            ints(&[1, 0, 3])
        );
        assert_eq!(
            corner_vertex_in_p(&ints(&[4, 2, 1]), &int(4)).unwrap(),
            ints(&[1, 0, 0])
        );
        assert_eq!(
            corner_vertex_in_p(&ints(&[5, 5, 1]), &int(4)).unwrap(),
            ints(&[0, 0, 4])
        );
        assert!(matches!(
            corner_vertex_in_p(&ints(&[3, 5]), &int(7)),
            Err(Error::NotInSemigroup)
        ));
    }

    #[test]
    fn theorem3_examples() {
        let t = check_theorem3(&ints(&[5, 5, 1]), &int(4)).unwrap();
        assert_eq!((t.r, t.delta.clone()), (1, rat(4, 1)));
        assert!(t.holds && t.tight);
        let t = check_theorem3(&ints(&[4, 2, 1]), &int(4)).unwrap();
        assert_eq!(t.r, 0);
        assert!(t.holds);
    }

    #[test]
    fn lp_examples() {
        let (c, a) = (ints(&[1, 1, 1]), ints(&[4, 2, 1]));
        assert_eq!((lp_value(&c, &a, &int(7)), lp_vertex(&c, &a, &int(7))), (rat(7, 4), 0));
        assert_eq!(lp_value(&c, &a, &int(0)), rat(0, 1));
        assert_eq!(lp_value(&ints(&[0, 0, 0]), &a, &int(7)), rat(0, 1));
    }

    #[test]
    fn ip_examples() {
        let (c, a) = (ints(&[1, 1, 1]), ints(&[4, 2, 1]));
        let o = ip_value(&c, &a, &int(7)).unwrap();
        assert_eq!((o.value, o.argmin), (int(3), ints(&[1, 1, 1])));
        assert_eq!(ip_value(&ints(&[0, 0, 0]), &a, &int(7)).unwrap().value, int(0));
        let o = ip_value(&c, &a, &int(0)).unwrap();
        assert_eq!((o.value, o.argmin), (int(0), ints(&[0, 0, 0])));
        // negative costs with a bounded simplex
        let o = ip_value(&ints(&[-1, 0, 2]), &ints(&[2, 3, 1]), &int(7)).unwrap();
        assert_eq!((o.value, o.argmin), (int(-2), ints(&[2, 1, 0])));
    }

    #[test]
    fn gap_examples() {
        let g = integrality_gap_report(&ints(&[1, 1, 1]), &ints(&[4, 2, 1]), &int(7)).unwrap();
        assert_eq!(g.gap, rat(5, 4));
        let v = g.verdicts.iter().find(|v| v.z_star == ints(&[1, 1, 1])).unwrap();
        assert_eq!((v.r, v.bound.clone()), (2, rat(6, 1)));
        assert!(g.holds());
        let g = integrality_gap_report(&ints(&[0, 0, 1]), &ints(&[5, 5, 1]), &int(4)).unwrap();
        assert_eq!(g.gap, rat(4, 1));
        assert_eq!(g.verdicts.len(), 1);
        assert_eq!((g.verdicts[0].r, g.verdicts[0].bound.clone()), (1, rat(8, 1)));
        assert!(g.holds());
        let g = integrality_gap_report(&ints(&[1, 1, 1]), &ints(&[4, 2, 1]), &int(8)).unwrap();
        assert_eq!(g.gap, rat(0, 1));
        assert!(g.holds());
    }

    #[test]
    fn gap_renumbers_coordinates() {
        // LP optimum at the third coordinate
        let g = integrality_gap_report(&ints(&[5, 5, 1]), &ints(&[2, 3, 5]), &int(11)).unwrap();
        assert_eq!(g.permutation, vec![2, 0, 1]);
        assert!(g.holds());
        for v in &g.verdicts {
            let s: BigInt = [2, 3, 5].iter().zip(&v.z_star).map(|(x, y)| int(*x) * y).sum();
            assert_eq!(s, int(11));
        }
    }

    #[test]
    fn existence_examples() {
        let w = aho_and_sparsity_exist(&ints(&[5, 5, 1]), &int(4)).unwrap();
        assert_eq!(
            (w.proximity.clone(), w.proximity_distance.clone()),
            (ints(&[0, 0, 4]), rat(4, 1))
        );
        assert_eq!((w.sparse_support, w.sparse_holds), (1, true));
        let w = aho_and_sparsity_exist(&ints(&[4, 2, 1]), &int(7)).unwrap();
        assert_eq!(w.sparse, ints(&[0, 0, 7]));
        let w = aho_and_sparsity_exist(&ints(&[4, 2, 1]), &int(0)).unwrap();
        assert_eq!((w.proximity, w.sparse), (ints(&[0, 0, 0]), ints(&[0, 0, 0])));
    }

    #[test]
    fn validation() {
        assert!(validate(&ints(&[2, 4]), &int(6)).is_err());
        assert!(validate(&ints(&[3]), &int(6)).is_err());
        assert!(validate(&ints(&[3, 0, 1]), &int(6)).is_err());
        assert!(KnapsackInstance::new(ints(&[3, 5]), int(8), Some(ints(&[1]))).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ip_matches_exhaustive(a in proptest::collection::vec(1i64..=12, 2..=4), c in proptest::collection::vec(-3i64..=5, 4), b in 0i64..=40) {
            let g = a.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
            prop_assume!(g == 1);
            let a = ints(&a);
            let c = ints(&c[..a.len()]);
            let b = int(b);
            let member = in_semigroup(&a, &b).unwrap();
            let mut best: Option<(BigInt, Vec<BigInt>)> = None;
            let ranges: Vec<_> = a.iter().map(|ai| 0..=(&b / ai).to_i64().unwrap()).collect();
            for x in ranges.into_iter().multi_cartesian_product() {
                let x = ints(&x);
                if a.iter().zip(&x).map(|(p, q)| p * q).sum::<BigInt>() != b { continue; }
                let v: BigInt = c.iter().zip(&x).map(|(p, q)| p * q).sum();
                if best.as_ref().is_none_or(|(bv, bx)| v < *bv || (v == *bv && x < *bx)) {
                    best = Some((v, x));
                }
            }
            prop_assert_eq!(member.is_some(), best.is_some());
            if let Some((v, x)) = best {
                let o = ip_value(&c, &a, &b).unwrap();
                prop_assert_eq!((o.value, o.argmin), (v, x));
                let t = check_theorem3(&a, &b).unwrap();
                prop_assert!(t.holds);
                let z = &t.z_star;
                prop_assert!(congruence_member(&a, &b, &z[1..]));
                let g = integrality_gap_report(&c, &a, &b).unwrap();
                prop_assert!(g.holds(), "{:?}", g);
            }
        }
    }
}
