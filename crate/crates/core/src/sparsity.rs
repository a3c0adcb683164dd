//! Support bounds for optimal integer points and short kernel vectors.
//!
//! Every comparison against `√det(AAᵀ)/gcd(A)` is made on squares.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::cone::hull_vertices;
use crate::error::{Error, Result};
use crate::lp::{lp_feasible, maximize, LpOutcome};
use crate::matrix::{echelon_pivots, rat_rank, IntMatrix};
use crate::minors::{bases, gram_det, minor_stats};
use crate::num::{isqrt, support, to_rats, Rat};
use crate::oracle::{enumerate_integer_points, BoxSpec, Sign};

/// Default limit on enumerated box points.
pub const DEFAULT_BOX_CAP: u64 = 10_000_000;
/// Limit on box points per shell in the short-vector search.
pub const SHELL_CAP: u64 = 50_000_000;

/// `ρ(x)`: least absolute nonzero entry, `0` for `x = 0`.
pub fn rho(x: &[BigInt]) -> BigInt {
    x.iter()
        .filter(|v| !v.is_zero())
        .map(|v| v.abs())
        .min()
        .unwrap_or_default()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SparsityReport {
    #[serde(with = "crate::serde_big::int_vec")]
    pub z_star: Vec<BigInt>,
    pub s: usize,
    pub m: usize,
    #[serde(with = "crate::serde_big::int")]
    pub rho: BigInt,
    /// `(ρ+1)^(s−m)`, a fraction when `s < m`.
    #[serde(with = "crate::serde_big::rat")]
    pub lhs: Rat,
    /// `det(AAᵀ)`; the right side is `√gram / gcd`.
    #[serde(with = "crate::serde_big::int")]
    pub gram: BigInt,
    #[serde(with = "crate::serde_big::int")]
    pub gcd: BigInt,
    pub holds: bool,
}

/// `(ρ+1)^(s−m) <= √det(AAᵀ)/gcd(A)` for a given point.
pub fn theorem5_report(z: &[BigInt], a: &IntMatrix) -> Result<SparsityReport> {
    let stats = minor_stats(a)?;
    let gram = gram_det(a);
    let m = a.rows();
    let s = support(z).len();
    let rho = rho(z);
    let base = Rat::from_integer(&rho + 1u32);
    let lhs = if s >= m {
        num_traits::pow(base, s - m)
    } else {
        Rat::one() / num_traits::pow(base, m - s)
    };
    // lhs <= 1 <= √gram/gcd by Cauchy–Binet whenever s <= m
    let holds = s <= m || num_traits::pow(&rho + 1u32, 2 * (s - m)) * &stats.gcd_minors * &stats.gcd_minors <= gram;
    Ok(SparsityReport {
        z_star: z.to_vec(),
        s,
        m,
        rho,
        lhs,
        gram,
        gcd: stats.gcd_minors,
        holds,
    })
}

/// `‖z‖₀ <= m + log₂(√det(AAᵀ)/gcd(A))`, i.e. `2^(2(‖z‖₀−m))·gcd² <= det(AAᵀ)`.
pub fn support_bound_check(z: &[BigInt], a: &IntMatrix) -> Result<bool> {
    let s = support(z).len();
    let m = a.rows();
    if s <= m {
        return Ok(true);
    }
    let g = minor_stats(a)?.gcd_minors;
    Ok(num_traits::pow(BigInt::from(4), s - m) * &g * &g <= gram_det(a))
}

/// Rows of `A` forming a first-come maximal independent set.
pub fn independent_rows(a: &IntMatrix) -> Vec<usize> {
    echelon_pivots(&a.transpose().to_rat_rows())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FullSupport {
    #[serde(with = "crate::serde_big::one_based")]
    pub tau: Vec<usize>,
    /// `A_τ` with dependent rows removed.
    #[serde(skip)]
    pub a_bar: IntMatrix,
    #[serde(with = "crate::serde_big::int")]
    pub gram_bar: BigInt,
    #[serde(with = "crate::serde_big::int")]
    pub gcd_bar: BigInt,
    /// `det(ĀĀᵀ)·gcd(A)² <= det(AAᵀ)·gcd(Ā)²`.
    pub monotone: bool,
    /// The support inequality for `z_τ` against `Ā`.
    pub reduced_holds: bool,
}

/// Restrict to `τ = supp(z)`; `None` for `z = 0`.
pub fn full_support_reduction(z: &[BigInt], a: &IntMatrix) -> Result<Option<FullSupport>> {
    let tau = support(z);
    if tau.is_empty() {
        return Ok(None);
    }
    let a_tau = a.select_columns(&tau);
    let rows = independent_rows(&a_tau);
    if rows.is_empty() {
        return Err(Error::InvalidPoint("support columns of A vanish".into()));
    }
    let a_bar = a_tau.select_rows(&rows);
    let gram_bar = gram_det(&a_bar);
    let gcd_bar = minor_stats(&a_bar)?.gcd_minors;
    let g = minor_stats(a)?.gcd_minors;
    let monotone = &gram_bar * &g * &g <= gram_det(a) * &gcd_bar * &gcd_bar;
    let z_tau: Vec<BigInt> = tau.iter().map(|&j| z[j].clone()).collect();
    let reduced_holds = theorem5_report(&z_tau, &a_bar)?.holds;
    Ok(Some(FullSupport {
        tau,
        a_bar,
        gram_bar,
        gcd_bar,
        monotone,
        reduced_holds,
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OptimumCandidate {
    #[serde(with = "crate::serde_big::int_vec")]
    pub z: Vec<BigInt>,
    /// Vertex of the integer hull.
    pub vertex: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SparsityOutcome {
    #[serde(with = "crate::serde_big::int")]
    pub value: BigInt,
    pub report: SparsityReport,
    pub reduction: Option<FullSupport>,
    /// All minimum-support optima, sorted.
    pub candidates: Vec<OptimumCandidate>,
}

/// Minimum-support optimum of `max{cᵀx : Ax = b, x in Z^n_{>=0}}` by bounded enumeration.
///
/// Ties on support prefer vertices of the integer hull, then the lexicographically least point.
pub fn min_support_optimum(a: &IntMatrix, b: &[BigInt], c: &[BigInt], box_cap: u64) -> Result<SparsityOutcome> {
    let n = a.cols();
    if c.len() != n || b.len() != a.rows() {
        return Err(Error::Shape("c or b disagree with A".into()));
    }
    let rows = a.to_rat_rows();
    let br = to_rats(b);
    let nonneg = vec![true; n];
    if !lp_feasible(&rows, &br, &nonneg)?.is_feasible() {
        return Err(Error::Infeasible);
    }
    let mut upper = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[j] = Rat::one();
        match maximize(&e, &rows, &br, &nonneg)? {
            LpOutcome::Optimal { value, .. } => upper.push(value.floor().to_integer()),
            LpOutcome::Unbounded => return Err(Error::SearchSpaceTooLarge("feasible region is unbounded".into())),
            LpOutcome::Infeasible => return Err(Error::Infeasible),
        }
    }
    let gamma = bases(a).into_iter().next().ok_or(Error::RankDeficient)?.columns;
    let mut count = BigInt::one();
    for j in (0..n).filter(|j| !gamma.contains(j)) {
        count *= &upper[j] + 1u32;
    }
    if count > BigInt::from(box_cap) {
        return Err(Error::SearchSpaceTooLarge(format!("{count} box points")));
    }
    let bx = BoxSpec::new(vec![BigInt::zero(); n], upper, 2, 2)?;
    let pts = enumerate_integer_points(a, b, &vec![Sign::NonNeg; n], &bx)?;
    let value_of = |p: &Vec<BigInt>| -> BigInt { c.iter().zip(p).map(|(x, y)| x * y).sum() };
    let value = pts.iter().map(value_of).max().ok_or(Error::Infeasible)?;
    let optimal: Vec<Vec<BigInt>> = pts.into_iter().filter(|p| value_of(p) == value).collect();
    // vertices of the optimal face are exactly the optimal vertices of the integer hull
    let verts = hull_vertices(&optimal)?;
    let s0 = optimal.iter().map(|p| support(p).len()).min().expect("nonempty");
    let mut candidates = Vec::new();
    for p in optimal.iter().filter(|p| support(p).len() == s0) {
        candidates.push(OptimumCandidate {
            vertex: verts.binary_search(p).is_ok(),
            holds: theorem5_report(p, a)?.holds,
            z: p.clone(),
        });
    }
    let chosen = candidates.iter().find(|c| c.vertex).unwrap_or(&candidates[0]).z.clone();
    Ok(SparsityOutcome {
        value,
        report: theorem5_report(&chosen, a)?,
        reduction: full_support_reduction(&chosen, a)?,
        candidates,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BvReport {
    #[serde(with = "crate::serde_big::int_vecs")]
    pub vectors: Vec<Vec<BigInt>>,
    #[serde(with = "crate::serde_big::int")]
    pub product: BigInt,
    #[serde(with = "crate::serde_big::int")]
    pub gram: BigInt,
    #[serde(with = "crate::serde_big::int")]
    pub gcd: BigInt,
    /// `product² · gcd² <= det(AAᵀ)`.
    pub holds: bool,
    /// Largest norm shell searched.
    pub shells: u64,
}

/// `n − m` independent vectors of `{y in Z^n : Ay = 0}` picked greedily by `(‖y‖∞, lex)`.
pub fn bv_short_vectors(a: &IntMatrix) -> Result<BvReport> {
    let (m, n) = (a.rows(), a.cols());
    let stats = minor_stats(a)?;
    let gram = gram_det(a);
    let g2 = &stats.gcd_minors * &stats.gcd_minors;
    let target = n - m;
    let limit = isqrt(&(&gram / &g2))
        .to_u64()
        .ok_or_else(|| Error::SearchSpaceTooLarge("shell bound overflow".into()))?;
    let gamma = bases(a).into_iter().next().ok_or(Error::RankDeficient)?.columns;
    let nb: Vec<usize> = (0..n).filter(|j| !gamma.contains(j)).collect();
    let ag = a.select_columns(&gamma);
    let det = ag
        .det()
        .to_i128()
        .ok_or_else(|| Error::SearchSpaceTooLarge("determinant".into()))?;
    let adj = ag.adjugate();
    // y_γ·det = −adj·A_γ̄·v
    let q: Vec<Vec<i128>> = (0..m)
        .map(|t| {
            nb.iter()
                .map(|&j| {
                    let s: BigInt = (0..m).map(|i| &adj[(t, i)] * &a[(i, j)]).sum();
                    (-s).to_i128().expect("small entries")
                })
                .collect()
        })
        .collect();

    let mut picked: Vec<Vec<BigInt>> = Vec::new();
    let mut picked_rat: Vec<Vec<Rat>> = Vec::new();
    let mut shell = 0u64;
    for k in 1..=limit.max(1) {
        shell = k;
        let k = k as i128;
        let width = (2 * k + 1) as u128;
        if width.checked_pow(nb.len() as u32).is_none_or(|c| c > SHELL_CAP as u128) {
            return Err(Error::SearchBudgetExceeded(shell));
        }
        let mut found: Vec<Vec<i128>> = Vec::new();
        let mut v = vec![-k; nb.len()];
        'walk: loop {
            let vmax = v.iter().map(|x| x.abs()).max().unwrap_or(0);
            if v.iter().find(|x| **x != 0).is_some_and(|x| *x > 0) {
                let mut y = vec![0i128; n];
                let mut ok = true;
                let mut norm = vmax;
                for (t, &g) in gamma.iter().enumerate() {
                    let s: i128 = q[t].iter().zip(&v).map(|(p, x)| p * x).sum();
                    if s % det != 0 {
                        ok = false;
                        break;
                    }
                    y[g] = s / det;
                    norm = norm.max(y[g].abs());
                    if norm > k {
                        ok = false;
                        break;
                    }
                }
                if ok && norm == k {
                    for (i, &j) in nb.iter().enumerate() {
                        y[j] = v[i];
                    }
                    // sign-normalize: first nonzero entry positive
                    if y.iter().find(|x| **x != 0).is_some_and(|x| *x < 0) {
                        y.iter_mut().for_each(|x| *x = -*x);
                    }
                    found.push(y);
                }
            }
            let mut i = nb.len();
            loop {
                if i == 0 {
                    break 'walk;
                }
                i -= 1;
                if v[i] < k {
                    v[i] += 1;
                    break;
                }
                v[i] = -k;
            }
        }
        found.sort();
        found.dedup();
        for y in found {
            let yb: Vec<BigInt> = y.into_iter().map(BigInt::from).collect();
            let mut trial = picked_rat.clone();
            trial.push(to_rats(&yb));
            if rat_rank(&trial) > picked.len() {
                picked_rat = trial;
                picked.push(yb);
                if picked.len() == target {
                    break;
                }
            }
        }
        if picked.len() == target {
            break;
        }
    }
    if picked.len() < target {
        return Err(Error::SearchBudgetExceeded(shell));
    }
    let product: BigInt = picked.iter().map(|y| crate::num::inf_norm(y)).product();
    let holds = &product * &product * &g2 <= gram;
    if !holds {
        return Err(Error::SearchBudgetExceeded(shell));
    }
    Ok(BvReport {
        vectors: picked,
        product,
        gram,
        gcd: stats.gcd_minors,
        holds,
        shells: shell,
    })
}
