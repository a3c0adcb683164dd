//! Brute-force reference implementations: box enumeration, exhaustive optima and hulls.
//!
//! Nothing here uses lattice projections, irreducibility or the candidate regions of the
//! fast paths except [`region_box`], which is only consulted to size the initial box.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::cone::{extreme_rays, hull_vertices, hull_vertices_with_rays, Cone};
use crate::error::{Error, Result};
use crate::matrix::{rat_inverse, IntMatrix};
use crate::minors::{bases, first_basis_containing, minor_stats};
use crate::num::Rat;

/// Most nonbasic assignments the enumerator will visit.
pub const ENUM_CAP: u64 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Free,
    NonNeg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Min,
    Max,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxSpec {
    pub lower: Vec<BigInt>,
    pub upper: Vec<BigInt>,
    pub growth_factor: u32,
    pub max_rounds: usize,
}

impl BoxSpec {
    pub fn new(lower: Vec<BigInt>, upper: Vec<BigInt>, growth_factor: u32, max_rounds: usize) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::Shape("box bounds differ in length".into()));
        }
        if lower.iter().zip(&upper).any(|(l, u)| l > u) {
            return Err(Error::Shape("box lower bound exceeds upper bound".into()));
        }
        if growth_factor < 2 {
            return Err(Error::Shape("growth factor must be at least 2".into()));
        }
        Ok(Self {
            lower,
            upper,
            growth_factor,
            max_rounds: max_rounds.max(2),
        })
    }

    /// `[lo, hi]^n`, growth 2, four rounds.
    pub fn cube(n: usize, lo: i64, hi: i64) -> Self {
        Self::new(vec![BigInt::from(lo); n], vec![BigInt::from(hi); n], 2, 4).expect("valid cube")
    }

    /// The box of round `round` (1-based): bounds multiplied by `growth^(round-1)`.
    pub fn round(&self, round: usize) -> BoxSpec {
        let f = num_traits::pow(BigInt::from(self.growth_factor), round.saturating_sub(1));
        BoxSpec {
            lower: self.lower.iter().map(|v| v * &f).collect(),
            upper: self.upper.iter().map(|v| v * &f).collect(),
            ..self.clone()
        }
    }

    /// Strict interior, except that a lower bound at or below 0 on a nonnegative
    /// coordinate is the sign constraint itself and counts as satisfied.
    fn strictly_inside(&self, x: &[BigInt], sign: &[Sign]) -> bool {
        x.iter().enumerate().all(|(j, v)| {
            v < &self.upper[j] && (v > &self.lower[j] || (sign[j] == Sign::NonNeg && !self.lower[j].is_positive()))
        })
    }
}

fn small(v: &BigInt) -> Result<i128> {
    v.to_i128()
        .filter(|x| x.abs() < (1i128 << 60))
        .ok_or_else(|| Error::SearchSpaceTooLarge(format!("{v} is too large to enumerate")))
}

/// All integer points of `{Ax = b} ∩ box` obeying `sign`, sorted lexicographically.
pub fn enumerate_integer_points(a: &IntMatrix, b: &[BigInt], sign: &[Sign], bx: &BoxSpec) -> Result<Vec<Vec<BigInt>>> {
    Ok(enumerate_small(a, b, sign, bx)?
        .into_iter()
        .map(|p| p.into_iter().map(BigInt::from).collect())
        .collect())
}

fn enumerate_small(a: &IntMatrix, b: &[BigInt], sign: &[Sign], bx: &BoxSpec) -> Result<Vec<Vec<i128>>> {
    let (m, n) = (a.rows(), a.cols());
    if b.len() != m || sign.len() != n || bx.lower.len() != n {
        return Err(Error::Shape("enumeration inputs disagree in shape".into()));
    }
    let gamma = bases(a).into_iter().next().ok_or(Error::RankDeficient)?.columns;
    let nb: Vec<usize> = (0..n).filter(|j| !gamma.contains(j)).collect();
    let mut lo = Vec::with_capacity(n);
    let mut hi = Vec::with_capacity(n);
    for ((l, u), s) in bx.lower.iter().zip(&bx.upper).zip(sign) {
        let l = small(l)?;
        lo.push(if *s == Sign::NonNeg { l.max(0) } else { l });
        hi.push(small(u)?);
    }
    if (0..n).any(|j| lo[j] > hi[j]) {
        return Ok(Vec::new());
    }
    let ag = a.select_columns(&gamma);
    let det = small(&ag.det())?;
    let adj: Vec<Vec<i128>> = ag
        .adjugate()
        .to_rows()
        .iter()
        .map(|r| r.iter().map(small).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let cols: Vec<Vec<i128>> = nb
        .iter()
        .map(|&j| a.column(j).iter().map(small).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let bb: Vec<i128> = b.iter().map(small).collect::<Result<_>>()?;

    let step: Vec<Vec<i128>> = (0..m)
        .map(|t| cols.iter().map(|c| (0..m).map(|i| adj[t][i] * c[i]).sum()).collect())
        .collect();
    let base: Vec<i128> = (0..m).map(|t| (0..m).map(|i| adj[t][i] * bb[i]).sum()).collect();
    let reach: i128 = (0..nb.len())
        .map(|k| lo[nb[k]].abs().max(hi[nb[k]].abs()))
        .max()
        .unwrap_or(0);
    let worst = (0..m)
        .map(|t| {
            step[t].iter().try_fold(base[t].abs(), |acc, s| {
                s.abs().checked_mul(reach).and_then(|v| acc.checked_add(v))
            })
        })
        .try_fold(0i128, |acc, w| w.map(|w| acc.max(w)))
        .filter(|w| *w < (1i128 << 120))
        .ok_or_else(|| Error::SearchSpaceTooLarge("coordinates overflow 128-bit arithmetic".into()))?;
    // the innermost coordinate only visits one residue class modulo `period`
    let period = match (nb.last(), step.first()) {
        (Some(_), Some(row)) => det.abs() / row[nb.len() - 1].gcd(&det),
        _ => 1,
    };
    let mut count: u128 = 1;
    for (k, &j) in nb.iter().enumerate() {
        let width = (hi[j] - lo[j] + 1) as u128;
        let width = if k + 1 == nb.len() {
            width.div_ceil(period as u128)
        } else {
            width
        };
        count = count.saturating_mul(width);
    }
    if count > ENUM_CAP as u128 {
        return Err(Error::SearchSpaceTooLarge(format!("{count} enumeration steps")));
    }
    let walk = Walk {
        gamma: &gamma,
        nb: &nb,
        lo: &lo,
        hi: &hi,
        det,
        base: &base,
        step: &step,
        n,
    };
    let mut out = if worst.max(det.abs()) < (1i128 << 62) {
        walk.run::<i64>()
    } else {
        walk.run::<i128>()
    };
    out.sort();
    Ok(out)
}

struct Walk<'a> {
    gamma: &'a [usize],
    nb: &'a [usize],
    lo: &'a [i128],
    hi: &'a [i128],
    det: i128,
    base: &'a [i128],
    step: &'a [Vec<i128>],
    n: usize,
}

impl Walk<'_> {
    /// Odometer over all nonbasic coordinates but the last; along the last one only the
    /// residue class making the first basic coordinate integral is visited.
    fn run<T>(&self) -> Vec<Vec<i128>>
    where
        T: num_traits::PrimInt + num_traits::Signed + Into<i128> + TryFrom<i128>,
    {
        let cast = |v: i128| T::try_from(v).ok().expect("magnitudes checked by caller");
        let m = self.gamma.len();
        let det = cast(self.det);
        let lo: Vec<T> = self.lo.iter().map(|&v| cast(v)).collect();
        let hi: Vec<T> = self.hi.iter().map(|&v| cast(v)).collect();
        let step: Vec<Vec<T>> = self.step.iter().map(|r| r.iter().map(|&v| cast(v)).collect()).collect();
        let mut v: Vec<T> = self.nb.iter().map(|&j| lo[j]).collect();
        let mut num: Vec<T> = (0..m)
            .map(|t| {
                let mut s = cast(self.base[t]);
                for k in 0..v.len() {
                    s = s - step[t][k] * v[k];
                }
                s
            })
            .collect();
        let mut out = Vec::new();
        let emit = |num: &[T], v: &[T], out: &mut Vec<Vec<i128>>| {
            let fits = self.gamma.iter().enumerate().all(|(t, &g)| {
                (num[t] % det).is_zero() && {
                    let val = num[t] / det;
                    val >= lo[g] && val <= hi[g]
                }
            });
            if fits {
                let mut x = vec![0i128; self.n];
                for (t, &g) in self.gamma.iter().enumerate() {
                    x[g] = (num[t] / det).into();
                }
                for (k, &j) in self.nb.iter().enumerate() {
                    x[j] = v[k].into();
                }
                out.push(x);
            }
        };
        let Some(last) = self.nb.len().checked_sub(1) else {
            emit(&num, &v, &mut out);
            return out;
        };
        let jl = self.nb[last];
        let span_last: i128 = self.hi[jl] - self.lo[jl];
        let d0 = self.step[0][last];
        let g = d0.gcd(&self.det);
        let period = self.det.abs() / g;
        let inv = if period == 1 {
            0
        } else {
            (d0 / g).extended_gcd(&period).x.mod_floor(&period)
        };
        let mut cur = num.clone();
        let mut w = v.clone();
        'walk: loop {
            let n0: i128 = num[0].into();
            if n0 % g == 0 {
                let mut delta = ((n0 / g) * inv).mod_floor(&period);
                while delta <= span_last {
                    let dt = cast(delta);
                    for t in 0..m {
                        cur[t] = num[t] - step[t][last] * dt;
                    }
                    w[last] = v[last] + dt;
                    w[..last].copy_from_slice(&v[..last]);
                    emit(&cur, &w, &mut out);
                    delta += period;
                }
            }
            let mut k = last;
            loop {
                if k == 0 {
                    break 'walk;
                }
                k -= 1;
                let j = self.nb[k];
                if v[k] < hi[j] {
                    v[k] = v[k] + T::one();
                    for t in 0..m {
                        num[t] = num[t] - step[t][k];
                    }
                    break;
                }
                let span = hi[j] - lo[j];
                v[k] = lo[j];
                for t in 0..m {
                    num[t] = num[t] + step[t][k] * span;
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IlpOpt {
    #[serde(with = "crate::serde_big::int")]
    pub value: BigInt,
    /// All optimal points in the box, sorted.
    #[serde(with = "crate::serde_big::int_vecs")]
    pub argset: Vec<Vec<BigInt>>,
}

/// Exhaustive optimum of `cᵀx` over the nonnegative integer points of `{Ax = b}` in the box.
pub fn brute_ilp_opt(a: &IntMatrix, b: &[BigInt], c: &[BigInt], sense: Sense, bx: &BoxSpec) -> Result<IlpOpt> {
    let pts = enumerate_integer_points(a, b, &vec![Sign::NonNeg; a.cols()], bx)?;
    let mut best: Option<BigInt> = None;
    let mut argset = Vec::new();
    for p in pts {
        let v: BigInt = c.iter().zip(&p).map(|(x, y)| x * y).sum();
        let better = match (&best, sense) {
            (None, _) => true,
            (Some(bv), Sense::Min) => v < *bv,
            (Some(bv), Sense::Max) => v > *bv,
        };
        if better {
            best = Some(v);
            argset = vec![p];
        } else if best.as_ref() == Some(&v) {
            argset.push(p);
        }
    }
    let value = best.ok_or(Error::Infeasible)?;
    Ok(IlpOpt { value, argset })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CornerMode {
    /// Free coordinates `γ` (a basis).
    Gamma(Vec<usize>),
    /// Free coordinates `τ` (independent columns).
    Tau(Vec<usize>),
}

impl CornerMode {
    fn free(&self) -> &[usize] {
        match self {
            CornerMode::Gamma(g) => g,
            CornerMode::Tau(t) => t,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BruteCorner {
    /// Full-coordinate vertices, sorted.
    #[serde(with = "crate::serde_big::int_vecs")]
    pub vertices: Vec<Vec<BigInt>>,
    /// Rounds enumerated before two consecutive rounds agreed.
    pub rounds: usize,
    /// The candidate region lies strictly inside the first box.
    pub contained: bool,
}

/// Per-coordinate bounds `(lo, hi)` containing every vertex of the corner polyhedron.
///
/// For each basis `γ' ⊇ free`, nonbasic coordinates of a vertex obey
/// `∏(x_j+1) <= (n-m)^(m-|free|)·|det A_γ'|/gcd(A)`, and basic coordinates follow from them.
pub fn region_box(a: &IntMatrix, b: &[BigInt], mode: &CornerMode) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    let (m, n) = (a.rows(), a.cols());
    let free = mode.free();
    let stats = minor_stats(a)?;
    let factor = num_traits::pow(BigInt::from(n - m), m - free.len());
    let mut lo = vec![BigInt::zero(); n];
    let mut hi = vec![BigInt::zero(); n];
    let mut any = false;
    for basis in bases(a) {
        if !free.iter().all(|t| basis.columns.contains(t)) {
            continue;
        }
        any = true;
        let g = &basis.columns;
        let nb: Vec<usize> = (0..n).filter(|j| !g.contains(j)).collect();
        let r: BigInt = (&factor * basis.det.abs()).div_floor(&stats.gcd_minors) - 1;
        for &j in &nb {
            hi[j] = hi[j].clone().max(r.clone());
        }
        let inv = rat_inverse(&a.select_columns(g).to_rat_rows()).expect("basis");
        let rb: Vec<Rat> = (0..m)
            .map(|i| (0..m).map(|k| &inv[i][k] * Rat::from_integer(b[k].clone())).sum())
            .collect();
        for (t, &gj) in g.iter().enumerate() {
            // the nonbasic part sums to at most r, since ∏(x_j+1) >= 1 + Σx_j
            let mut spread = Rat::zero();
            for &j in &nb {
                let coef: Rat = (0..m).map(|k| &inv[t][k] * Rat::from_integer(a[(k, j)].clone())).sum();
                spread = spread.max(coef.abs() * Rat::from_integer(r.clone()));
            }
            let up = (&rb[t] + &spread).ceil().to_integer();
            let down = (&rb[t] - &spread).floor().to_integer();
            hi[gj] = hi[gj].clone().max(up);
            lo[gj] = lo[gj].clone().min(down);
        }
    }
    if !any {
        return Err(Error::NoBasisContainsTau);
    }
    Ok((lo, hi))
}

/// Vertices of the corner polyhedron from growing boxes, kept once two consecutive rounds agree
/// on the vertices strictly inside the first box.
///
/// The hull of each round is `conv(points) + {y : Ay = 0, y_free̅ >= 0}`.
pub fn brute_corner_vertices(
    a: &IntMatrix,
    b: &[BigInt],
    mode: &CornerMode,
    bx: Option<&BoxSpec>,
) -> Result<BruteCorner> {
    let (m, n) = (a.rows(), a.cols());
    let free = mode.free();
    if let CornerMode::Gamma(g) = mode {
        if g.len() != m || a.select_columns(g).det().is_zero() {
            return Err(Error::InvalidInstance("gamma is not a basis".into()));
        }
    }
    if first_basis_containing(a, free).is_none() {
        return Err(Error::InvalidTau);
    }
    let sign: Vec<Sign> = (0..n)
        .map(|j| if free.contains(&j) { Sign::Free } else { Sign::NonNeg })
        .collect();
    let (rlo, rhi) = region_box(a, b, mode)?;
    let first = match bx {
        Some(bx) => bx.clone(),
        None => BoxSpec::new(
            rlo.iter().map(|v| v - 1).collect(),
            rhi.iter().map(|v| v + 1).collect(),
            2,
            4,
        )?,
    };
    let contained = (0..n).all(|j| {
        rhi[j] < first.upper[j]
            && (rlo[j] > first.lower[j] || (sign[j] == Sign::NonNeg && !first.lower[j].is_positive()))
    });

    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for r in a.to_rows() {
        rows.push(r.iter().map(|v| -v).collect());
        rows.push(r);
    }
    for j in (0..n).filter(|j| !free.contains(j)) {
        let mut e = vec![BigInt::zero(); n];
        e[j] = BigInt::from(1);
        rows.push(e);
    }
    let rays = extreme_rays(&Cone::new(n, rows)?)?;
    let nonfree: Vec<usize> = (0..n).filter(|j| !free.contains(j)).collect();

    let mut prev: Option<Vec<Vec<BigInt>>> = None;
    for round in 1..=first.max_rounds {
        let bk = first.round(round);
        let pts = enumerate_small(a, b, &sign, &bk)?;
        // a point dominated on the nonnegative coordinates is a ray translate of another
        let mut keyed: Vec<(Vec<i128>, Vec<i128>)> = pts
            .into_iter()
            .map(|p| (nonfree.iter().map(|&j| p[j]).collect(), p))
            .collect();
        keyed.sort_unstable();
        let mut front: Vec<(Vec<i128>, Vec<i128>)> = Vec::new();
        for (key, p) in keyed {
            if !front.iter().any(|(k, _)| k.iter().zip(&key).all(|(x, y)| x <= y)) {
                front.push((key, p));
            }
        }
        let pts: Vec<Vec<BigInt>> = front
            .into_iter()
            .map(|(_, p)| p.into_iter().map(BigInt::from).collect())
            .collect();
        let verts = hull_vertices_with_rays(&pts, &rays)?;
        let inner: Vec<Vec<BigInt>> = verts.into_iter().filter(|v| first.strictly_inside(v, &sign)).collect();
        if prev.as_ref() == Some(&inner) {
            return Ok(BruteCorner {
                vertices: inner,
                rounds: round,
                contained,
            });
        }
        prev = Some(inner);
    }
    Err(Error::Unstable(first.max_rounds))
}

/// Nonnegative points `x` of `aᵀx = b` whose box `[0, x]` has pairwise distinct values `aᵀy`.
/// Every vertex of the integer hull is among them, and they satisfy `∏(x_i+1) <= b+1`.
fn hull_candidates(a: &[u64], b: u64) -> Vec<Vec<u64>> {
    fn rec(a: &[u64], b: u64, sum: u64, prod: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        let i = cur.len();
        if i == a.len() {
            if sum == b {
                out.push(cur.clone());
            }
            return;
        }
        let mut t = 0u64;
        while sum + t * a[i] <= b && prod * (t + 1) <= b + 1 {
            cur.push(t);
            rec(a, b, sum + t * a[i], prod * (t + 1), cur, out);
            cur.pop();
            t += 1;
        }
    }
    let mut all = Vec::new();
    rec(a, b, 0, 1, &mut Vec::new(), &mut all);
    all.retain(|x| {
        let mut seen = vec![false; b as usize + 1];
        let mut y = vec![0u64; x.len()];
        loop {
            let s: u64 = y.iter().zip(a).map(|(p, q)| p * q).sum();
            if seen[s as usize] {
                return false;
            }
            seen[s as usize] = true;
            let mut k = 0;
            loop {
                if k == x.len() {
                    return true;
                }
                if y[k] < x[k] {
                    y[k] += 1;
                    break;
                }
                y[k] = 0;
                k += 1;
            }
        }
    });
    all
}

/// Vertices of `P_I(a,b) = conv{x in Z^n_{>=0} : aᵀx = b}`.
pub fn integer_hull_vertices(a: &[BigInt], b: &BigInt) -> Result<Vec<Vec<BigInt>>> {
    let aw: Vec<u64> = a
        .iter()
        .map(|v| v.to_u64().filter(|&x| x > 0))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::InvalidInstance("weights must be positive machine integers".into()))?;
    let bw = b
        .to_u64()
        .filter(|&v| v <= 10_000_000)
        .ok_or_else(|| Error::SearchSpaceTooLarge(format!("b = {b}")))?;
    let cands = hull_candidates(&aw, bw);
    if cands.is_empty() {
        return Err(Error::Infeasible);
    }
    let pts: Vec<Vec<BigInt>> = cands
        .into_iter()
        .map(|x| x.into_iter().map(BigInt::from).collect())
        .collect();
    hull_vertices(&pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{int, ints};

    fn row(a: &[i64]) -> IntMatrix {
        IntMatrix::from_rows(&[a])
    }

    #[test]
    fn enumerate_examples() {
        let bx = BoxSpec::cube(3, 0, 10);
        let pts = enumerate_integer_points(&row(&[4, 2, 1]), &ints(&[7]), &[Sign::NonNeg; 3], &bx).unwrap();
        let want: Vec<Vec<BigInt>> = [[0, 0, 7], [0, 1, 5], [0, 2, 3], [0, 3, 1], [1, 0, 3], [1, 1, 1]]
            .iter()
            .map(|r| ints(r))
            .collect();
        assert_eq!(pts, want);
        let pts = enumerate_integer_points(&row(&[4, 2, 1]), &ints(&[0]), &[Sign::NonNeg; 3], &bx).unwrap();
        assert_eq!(pts, vec![ints(&[0, 0, 0])]);
        let pts = enumerate_integer_points(
            &row(&[2, 4, 6]),
            &ints(&[3]),
            &[Sign::Free; 3],
            &BoxSpec::cube(3, -5, 5),
        )
        .unwrap();
        assert!(pts.is_empty());
    }

    #[test]
    fn ilp_examples() {
        let bx = BoxSpec::cube(3, 0, 10);
        let o = brute_ilp_opt(&row(&[4, 2, 1]), &ints(&[7]), &ints(&[1, 1, 1]), Sense::Min, &bx).unwrap();
        assert_eq!((o.value, o.argset), (int(3), vec![ints(&[1, 1, 1])]));
        let o = brute_ilp_opt(&row(&[5, 5, 1]), &ints(&[4]), &ints(&[0, 0, 1]), Sense::Min, &bx).unwrap();
        assert_eq!(o.value, int(4));
        let o = brute_ilp_opt(&row(&[4, 2, 1]), &ints(&[7]), &ints(&[1, 1, 1]), Sense::Max, &bx).unwrap();
        assert_eq!((o.value, o.argset), (int(7), vec![ints(&[0, 0, 7])]));
        assert_eq!(
            brute_ilp_opt(
                &row(&[2, 4]),
                &ints(&[3]),
                &ints(&[1, 1]),
                Sense::Min,
                &BoxSpec::cube(2, 0, 9)
            ),
            Err(Error::Infeasible)
        );
    }

    #[test]
    fn brute_corner_examples() {
        let a = IntMatrix::from_rows(&[[2, 0, 5, 5], [0, 4, 2, -1]]);
        let bc = brute_corner_vertices(&a, &ints(&[20, 3]), &CornerMode::Gamma(vec![0, 1]), None).unwrap();
        assert_eq!(bc.vertices, vec![ints(&[0, 1, 1, 3])]);
        assert!(bc.contained);
        assert_eq!(bc.rounds, 2);
        let bc = brute_corner_vertices(&row(&[4, 2, 1]), &ints(&[7]), &CornerMode::Gamma(vec![0]), None).unwrap();
        assert_eq!(bc.vertices, vec![ints(&[1, 0, 3]), ints(&[1, 1, 1])]);
        let bc = brute_corner_vertices(&row(&[4, 2, 1]), &ints(&[8]), &CornerMode::Gamma(vec![0]), None).unwrap();
        assert_eq!(bc.vertices, vec![ints(&[2, 0, 0])]);
    }

    #[test]
    fn brute_tau_agrees_with_fast_path() {
        let a = IntMatrix::from_rows(&[[2, 0, 5, 5], [0, 4, 2, -1]]);
        let b = ints(&[20, 0]);
        let bc = brute_corner_vertices(&a, &b, &CornerMode::Tau(vec![0]), None).unwrap();
        let mut fast = crate::corner::corner_tau_vertices(&a, &b, &[0]).unwrap().lifted;
        fast.sort();
        assert_eq!(bc.vertices, fast);
        assert!(bc.vertices.contains(&ints(&[10, 0, 0, 0])));
    }

    #[test]
    fn small_box_is_not_contained() {
        let a = IntMatrix::from_rows(&[[2, 0, 5, 5], [0, 4, 2, -1]]);
        let bx = BoxSpec::cube(4, -2, 2);
        let bc = brute_corner_vertices(&a, &ints(&[20, 3]), &CornerMode::Gamma(vec![0, 1]), Some(&bx));
        if let Ok(bc) = bc {
            assert!(!bc.contained);
        }
    }

    #[test]
    fn integer_hull_examples() {
        assert_eq!(
            integer_hull_vertices(&ints(&[2, 1]), &int(3)).unwrap(),
            vec![ints(&[0, 3]), ints(&[1, 1])]
        );
        assert!(integer_hull_vertices(&ints(&[4, 2, 1]), &int(7))
            .unwrap()
            .contains(&ints(&[1, 1, 1])));
        assert_eq!(
            integer_hull_vertices(&ints(&[4, 2, 1]), &int(0)).unwrap(),
            vec![ints(&[0, 0, 0])]
        );
        assert_eq!(integer_hull_vertices(&ints(&[2, 4]), &int(3)), Err(Error::Infeasible));
    }

    #[test]
    fn integer_hull_matches_naive_hull() {
        for (a, b) in [
            (vec![4, 2, 1], 7),
            (vec![3, 5, 7], 30),
            (vec![6, 10, 15], 61),
            (vec![8, 4, 2, 1], 15),
        ] {
            let a = ints(&a);
            let bx = BoxSpec::cube(a.len(), 0, b);
            let all = enumerate_integer_points(
                &IntMatrix::new(1, a.len(), a.clone()).unwrap(),
                &[int(b)],
                &vec![Sign::NonNeg; a.len()],
                &bx,
            )
            .unwrap();
            assert_eq!(
                integer_hull_vertices(&a, &int(b)).unwrap(),
                hull_vertices(&all).unwrap()
            );
        }
    }
}
