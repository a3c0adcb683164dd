//! Exact checkers for the proximity/sparsity transference inequalities.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::corner::{box_count, careful_choice_rows, choose_basis_prop2, vertex_with_support, CarefulRow};
use crate::error::{Error, Result};
use crate::hnf::column_hermite;
use crate::lattice::ProjectionContext;
use crate::matrix::{rat_rank, IntMatrix};
use crate::minors::{first_basis_containing, minor_stats};
use crate::num::{inf_norm_rat, pow2, support, support_size, to_rat, to_rats, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TheoremId {
    Thm1,
    Thm2,
    Thm3,
    Lemma4,
}

impl TheoremId {
    pub fn tag(self) -> &'static str {
        match self {
            TheoremId::Thm1 => "thm1",
            TheoremId::Thm2 => "thm2",
            TheoremId::Thm3 => "thm3",
            TheoremId::Lemma4 => "lemma4",
        }
    }
}

/// One verdict of a case-split proximity inequality.
///
/// * `r = 0`: `lhs = δ`, `rhs = 0`, holds iff `x* = z*`.
/// * `r = 1`: `lhs = δ`, `rhs` is the additive bound.
/// * `r >= 2`: `lhs = δ·2^r / r^e` (`e = 1`, or `d + 1` for Theorem 2), `rhs` the determinant bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferenceReport {
    pub theorem: TheoremId,
    #[serde(with = "crate::serde_big::rat_vec")]
    pub x_star: Vec<Rat>,
    #[serde(with = "crate::serde_big::int_vec")]
    pub z_star: Vec<BigInt>,
    /// Basis used for `r`.
    #[serde(with = "crate::serde_big::one_based")]
    pub gamma: Vec<usize>,
    pub r: usize,
    pub d: usize,
    #[serde(with = "crate::serde_big::rat")]
    pub delta: Rat,
    #[serde(with = "crate::serde_big::rat")]
    pub lhs: Rat,
    #[serde(with = "crate::serde_big::rat")]
    pub rhs: Rat,
    pub strict: bool,
    pub holds: bool,
    pub tight: bool,
}

impl TransferenceReport {
    #[allow(clippy::too_many_arguments)]
    fn build(
        theorem: TheoremId,
        x_star: Vec<Rat>,
        z_star: Vec<BigInt>,
        gamma: Vec<usize>,
        r: usize,
        d: usize,
        ratio: &Rat,
        additive: &Rat,
        r_power: u32,
        strict: bool,
    ) -> Self {
        let zr: Vec<Rat> = to_rats(&z_star);
        let diff: Vec<Rat> = x_star.iter().zip(&zr).map(|(x, z)| x - z).collect();
        let delta = inf_norm_rat(&diff);
        let (lhs, rhs, strict) = match r {
            0 => (delta.clone(), Rat::zero(), false),
            1 => (delta.clone(), additive.clone(), false),
            _ => {
                let rr = Rat::from_integer(BigInt::from(r));
                let scale = Rat::from_integer(pow2(r)) / num_traits::pow(rr, r_power as usize);
                (&delta * scale, ratio.clone(), strict)
            }
        };
        let holds = if r == 0 {
            delta.is_zero()
        } else if strict {
            lhs < rhs
        } else {
            lhs <= rhs
        };
        let tight = lhs == rhs;
        Self {
            theorem,
            x_star,
            z_star,
            gamma,
            r,
            d,
            delta,
            lhs,
            rhs,
            strict,
            holds,
            tight,
        }
    }

    /// `instance_id, theorem, r, d, delta_num, delta_den, rhs_num, rhs_den, holds, tight`.
    pub fn csv_fields(&self, instance_id: &str) -> Vec<String> {
        vec![
            instance_id.to_string(),
            self.theorem.tag().to_string(),
            self.r.to_string(),
            self.d.to_string(),
            self.delta.numer().to_string(),
            self.delta.denom().to_string(),
            self.rhs.numer().to_string(),
            self.rhs.denom().to_string(),
            self.holds.to_string(),
            self.tight.to_string(),
        ]
    }
}

pub const CSV_HEADER: [&str; 10] = [
    "instance_id",
    "theorem",
    "r",
    "d",
    "delta_num",
    "delta_den",
    "rhs_num",
    "rhs_den",
    "holds",
    "tight",
];

fn sigma_over_gcd(a: &IntMatrix) -> Result<Rat> {
    let s = minor_stats(a)?;
    Ok(Rat::new(s.sigma, s.gcd_minors))
}

/// `A z = b` and `z_γ̄ >= 0`.
fn check_corner_point(ctx: &ProjectionContext, z: &[BigInt]) -> std::result::Result<(), String> {
    if z.len() != ctx.n() {
        return Err(format!("length {} instead of {}", z.len(), ctx.n()));
    }
    if ctx.a().mul_vec(z) != ctx.b() {
        return Err("A z differs from b".into());
    }
    if ctx.project(z).iter().any(Signed::is_negative) {
        return Err("negative nonbasic coordinate".into());
    }
    Ok(())
}

/// Theorem 1 for a vertex `z*` of `CP_γ(A,b)`.
pub fn check_theorem1(ctx: &ProjectionContext, z: &[BigInt]) -> Result<TransferenceReport> {
    check_corner_point(ctx, z).map_err(Error::InvalidVertex)?;
    let ratio = sigma_over_gcd(ctx.a())?;
    let additive = &ratio - Rat::one();
    let r = support_size(&ctx.project(z));
    Ok(TransferenceReport::build(
        TheoremId::Thm1,
        ctx.x_star(),
        z.to_vec(),
        ctx.gamma().to_vec(),
        r,
        0,
        &ratio,
        &additive,
        1,
        false,
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductCheck {
    #[serde(with = "crate::serde_big::int")]
    pub product: BigInt,
    #[serde(with = "crate::serde_big::rat")]
    pub rhs: Rat,
    #[serde(with = "crate::serde_big::rat")]
    pub slack: Rat,
    pub holds: bool,
}

/// Theorem 6: `∏_{γ̄}(z_j+1) <= |det A_γ| / gcd(A)`.
pub fn check_product_bound(z: &[BigInt], ctx: &ProjectionContext) -> Result<ProductCheck> {
    check_corner_point(ctx, z).map_err(Error::InvalidVertex)?;
    let s = minor_stats(ctx.a())?;
    let product = box_count(&ctx.project(z));
    let rhs = Rat::new(ctx.det().abs(), s.gcd_minors);
    let slack = &rhs - to_rat(&product);
    Ok(ProductCheck {
        holds: !slack.is_negative(),
        product,
        rhs,
        slack,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SumProduct {
    #[serde(with = "crate::serde_big::rat")]
    pub lhs: Rat,
    #[serde(with = "crate::serde_big::rat")]
    pub rhs: Rat,
    pub holds: bool,
    pub equality: bool,
}

/// Lemma 3: `x_1 + … + x_d <= d·∏(x_i+1) / 2^d` for `d >= 2`, `x_i >= 1`.
pub fn sum_product_holds(x: &[Rat]) -> Result<SumProduct> {
    let d = x.len();
    if d < 2 {
        return Err(Error::DomainError(format!("need d >= 2, got {d}")));
    }
    if x.iter().any(|v| v < &Rat::one()) {
        return Err(Error::DomainError("entries must be at least 1".into()));
    }
    let lhs: Rat = x.iter().sum();
    let prod: Rat = x.iter().fold(Rat::one(), |acc, v| acc * (v + Rat::one()));
    let rhs = prod * Rat::from_integer(BigInt::from(d)) / Rat::from_integer(pow2(d));
    Ok(SumProduct {
        holds: lhs <= rhs,
        equality: lhs == rhs,
        lhs,
        rhs,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma4Report {
    pub r: usize,
    #[serde(with = "crate::serde_big::rat")]
    pub delta: Rat,
    /// Case right side: 0, `(Σ/|det A_γ|)∏ − 1`, or `(Σ/|det A_γ|)∏`.
    #[serde(with = "crate::serde_big::rat")]
    pub bound: Rat,
    /// Case left side: `δ` or `δ·2^r/r`.
    #[serde(with = "crate::serde_big::rat")]
    pub lhs: Rat,
    #[serde(with = "crate::serde_big::int")]
    pub product: BigInt,
    pub holds: bool,
    /// `det(A_γ^i(A_j)) / det(A_γ)` for basic position `i` and nonbasic `j`.
    #[serde(skip)]
    pub cramer: Vec<Vec<Rat>>,
}

/// Lemma 4: needs only `A z = b`, integrality and `z_γ̄ >= 0`.
pub fn lemma4_bound(ctx: &ProjectionContext, z: &[BigInt]) -> Result<Lemma4Report> {
    check_corner_point(ctx, z).map_err(Error::InvalidPoint)?;
    let s = minor_stats(ctx.a())?;
    let zb = ctx.project(z);
    let r = support_size(&zb);
    let product = box_count(&zb);
    let scale = Rat::new(s.sigma, ctx.det().abs());
    let base = &scale * to_rat(&product);
    let cramer = ctx.cramer_ratios();
    let rep = TransferenceReport::build(
        TheoremId::Lemma4,
        ctx.x_star(),
        z.to_vec(),
        ctx.gamma().to_vec(),
        r,
        0,
        &base,
        &(&base - Rat::one()),
        1,
        false,
    );
    Ok(Lemma4Report {
        r,
        delta: rep.delta,
        bound: rep.rhs,
        lhs: rep.lhs,
        product,
        holds: rep.holds,
        cramer,
    })
}

/// The system restricted to `μ = τ ∪ supp(z*)` with a full-row-rank `A'_μ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedSystem {
    pub mu: Vec<usize>,
    pub a_prime: IntMatrix,
    pub b_prime: Vec<BigInt>,
    /// Positions of `τ` inside `μ`.
    pub tau_local: Vec<usize>,
    pub z_local: Vec<BigInt>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowBasis {
    /// Hermite basis of the integer row lattice of `A_μ`.
    Hermite,
    /// A maximal independent subset of the rows of `A_μ`, first-come.
    OriginalRows,
}

pub fn reduce_to_mu(
    a: &IntMatrix,
    x_star: &[Rat],
    z: &[BigInt],
    tau: &[usize],
    how: RowBasis,
) -> Result<ReducedSystem> {
    let mut mu: Vec<usize> = tau.iter().copied().chain(support(z)).collect();
    mu.sort_unstable();
    mu.dedup();
    let a_mu = a.select_columns(&mu);
    let a_prime = match how {
        RowBasis::Hermite => {
            let hf = column_hermite(&a_mu.transpose());
            let r = hf.rank();
            hf.h.select_columns(&(0..r).collect::<Vec<_>>()).transpose()
        }
        RowBasis::OriginalRows => {
            let mut keep: Vec<usize> = Vec::new();
            let rows = a_mu.to_rat_rows();
            for i in 0..rows.len() {
                let mut trial: Vec<Vec<Rat>> = keep.iter().map(|&k| rows[k].clone()).collect();
                trial.push(rows[i].clone());
                if rat_rank(&trial) > keep.len() {
                    keep.push(i);
                }
            }
            a_mu.select_rows(&keep)
        }
    };
    let x_mu: Vec<Rat> = mu.iter().map(|&j| x_star[j].clone()).collect();
    let bx = a_prime.mul_rat_vec(&x_mu);
    let b_prime = bx
        .iter()
        .map(|v| {
            v.is_integer()
                .then(|| v.to_integer())
                .ok_or_else(|| Error::InvalidInstance("reduced right-hand side is fractional".into()))
        })
        .collect::<Result<_>>()?;
    let tau_local = tau
        .iter()
        .map(|t| mu.iter().position(|m| m == t).expect("tau inside mu"))
        .collect();
    let z_local = mu.iter().map(|&j| z[j].clone()).collect();
    Ok(ReducedSystem {
        mu,
        a_prime,
        b_prime,
        tau_local,
        z_local,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem2Report {
    pub report: TransferenceReport,
    pub reduced: ReducedSystem,
    /// Careful basis choice for `A'_μ`, as indices of `A`.
    pub sigma: Vec<usize>,
    pub careful: Vec<CarefulRow>,
    /// `∏_{μ∖σ}(z_j+1)` against `r^{|σ|−|τ|}·|det A'_σ|/gcd(A'_μ)`.
    pub reduced_product: BigInt,
    pub reduced_product_bound: Rat,
    /// `∏_{γ̄}(z_j+1)` against `r^{|σ|−|τ|}·|det A_γ|/gcd(A)`.
    pub product: BigInt,
    pub product_bound: Rat,
}

impl Theorem2Report {
    pub fn careful_holds(&self) -> bool {
        self.careful.iter().all(CarefulRow::holds)
    }

    pub fn products_hold(&self) -> bool {
        to_rat(&self.reduced_product) <= self.reduced_product_bound && to_rat(&self.product) <= self.product_bound
    }
}

/// Theorem 2 for a vertex `z*` of `CP_τ(A,b)`, `τ = supp(x*)`.
pub fn check_theorem2(
    a: &IntMatrix,
    b: &[BigInt],
    x_star: &[Rat],
    z: &[BigInt],
    tau: &[usize],
) -> Result<Theorem2Report> {
    check_theorem2_with(a, b, x_star, z, tau, RowBasis::Hermite)
}

pub fn check_theorem2_with(
    a: &IntMatrix,
    b: &[BigInt],
    x_star: &[Rat],
    z: &[BigInt],
    tau: &[usize],
    how: RowBasis,
) -> Result<Theorem2Report> {
    let n = a.cols();
    let x = vertex_with_support(a, b, tau)?;
    if x != x_star {
        return Err(Error::InvalidVertex("x* is not the vertex supported on tau".into()));
    }
    if z.len() != n || a.mul_vec(z) != b {
        return Err(Error::InvalidVertex("A z differs from b".into()));
    }
    if (0..n).any(|j| !tau.contains(&j) && z[j].is_negative()) {
        return Err(Error::InvalidVertex("negative coordinate outside tau".into()));
    }
    let red = reduce_to_mu(a, x_star, z, tau, how)?;
    let (sigma_local, careful) = if red.a_prime.is_square() {
        ((0..red.mu.len()).collect::<Vec<_>>(), Vec::new())
    } else {
        let s = choose_basis_prop2(&red.a_prime, &red.z_local, &red.tau_local)?;
        let c = careful_choice_rows(&red.a_prime, &red.z_local, &red.tau_local, &s)?;
        (s, c)
    };
    let sigma: Vec<usize> = sigma_local.iter().map(|&i| red.mu[i]).collect();

    let rest_local: Vec<usize> = (0..red.mu.len()).filter(|i| !sigma_local.contains(i)).collect();
    let reduced_product = rest_local
        .iter()
        .fold(BigInt::one(), |acc, &i| acc * (&red.z_local[i] + 1u32));
    let r = rest_local.iter().filter(|&&i| !red.z_local[i].is_zero()).count();
    let e = sigma.len() - tau.len();
    let r_pow = Rat::from_integer(num_traits::pow(BigInt::from(r), e));
    let red_stats = minor_stats(&red.a_prime)?;
    let det_sigma = red.a_prime.select_columns(&sigma_local).det().abs();
    let reduced_product_bound = &r_pow * Rat::new(det_sigma, red_stats.gcd_minors);

    let gamma = first_basis_containing(a, &sigma).ok_or(Error::NoBasisContainsTau)?;
    let ctx = ProjectionContext::new(a.clone(), b.to_vec(), gamma.clone())?;
    let stats = minor_stats(a)?;
    let product = box_count(&ctx.project(z));
    let product_bound = &r_pow * Rat::new(ctx.det().abs(), stats.gcd_minors.clone());

    let r_full = support_size(&ctx.project(z));
    debug_assert_eq!(r, r_full);
    let d = a.rows() - tau.len();
    let ratio = Rat::new(stats.sigma, stats.gcd_minors);
    let report = TransferenceReport::build(
        TheoremId::Thm2,
        x_star.to_vec(),
        z.to_vec(),
        gamma,
        r_full,
        d,
        &ratio,
        &(&ratio - Rat::one()),
        (d + 1) as u32,
        false,
    );
    Ok(Theorem2Report {
        report,
        reduced: red,
        sigma,
        careful,
        reduced_product,
        reduced_product_bound,
        product,
        product_bound,
    })
}

/// Theorem 3 for the knapsack vertex `x* = (b/a_1) e_1` and a corner vertex `z* >= 0`.
pub fn check_theorem3_report(a: &[BigInt], b: &BigInt, z: &[BigInt]) -> Result<TransferenceReport> {
    let n = a.len();
    if z.len() != n {
        return Err(Error::Shape("z has the wrong length".into()));
    }
    let az: BigInt = a.iter().zip(z).map(|(x, y)| x * y).sum();
    if &az != b || z.iter().any(Signed::is_negative) {
        return Err(Error::InvalidVertex("z is not an integer point of P(a,b)".into()));
    }
    let mut x_star = vec![Rat::zero(); n];
    x_star[0] = Rat::new(b.clone(), a[0].clone());
    let norm = a.iter().map(|v| v.abs()).max().unwrap_or_default();
    let r = support_size(&z[1..]);
    let ratio = to_rat(&norm);
    Ok(TransferenceReport::build(
        TheoremId::Thm3,
        x_star,
        z.to_vec(),
        vec![0],
        r,
        0,
        &ratio,
        &(&ratio - Rat::one()),
        1,
        true,
    ))
}
