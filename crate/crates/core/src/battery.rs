//! The acceptance battery: nine checks with fixed case counts and time budgets.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cone::Cone;
use crate::corner::{corner_tau_vertices, corner_vertices, is_irreducible, vertex_with_support};
use crate::error::{Error, Result};
use crate::instances::{
    gen_paper_2x4, gen_r1_family, gen_random, gen_sharpness, sharpness_ratio, Instance, RandomKind, RandomSpec,
};
use crate::knapsack::{
    aho_and_sparsity_exist, check_theorem3, corner_vertex_in_p, integrality_gap_report, ip_value, knapsack_corner,
};
use crate::lattice::project_lattice;
use crate::num::{inf_norm, rat, to_rat, Rat};
use crate::oracle::{
    brute_corner_vertices, brute_ilp_opt, enumerate_integer_points, integer_hull_vertices, BoxSpec, CornerMode, Sense,
    Sign,
};
use crate::sparsity::{bv_short_vectors, min_support_optimum, support_bound_check, DEFAULT_BOX_CAP};
use crate::transference::{
    check_product_bound, check_theorem1, check_theorem2, check_theorem3_report, lemma4_bound, sum_product_holds,
};

#[derive(Debug, Clone)]
pub struct BatteryConfig {
    pub seed: u64,
    pub general: usize,
    pub degenerate: usize,
    pub knapsack: usize,
    pub sparsity: usize,
    pub lemma3: usize,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            general: 500,
            degenerate: 100,
            knapsack: 500,
            sparsity: 200,
            lemma3: 1000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub checks_passed: bool,
    pub cases: usize,
    pub elapsed: Duration,
    pub budget: Duration,
    pub detail: String,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.checks_passed && self.elapsed <= self.budget
    }

    pub fn line(&self) -> String {
        format!(
            "criterion {} {:<28} {} cases={:<5} time={:.3}s budget={}s {}",
            self.id,
            self.name,
            if self.passed() { "PASS" } else { "FAIL" },
            self.cases,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            self.detail
        )
    }
}

pub const NAMES: [&str; 9] = [
    "paper-2x4",
    "r1-family",
    "sharpness-family",
    "lemma5-hull-vertex",
    "general-suite",
    "degenerate-suite",
    "knapsack-suite",
    "sparsity-suite",
    "lemma3-random",
];

pub const BUDGET_SECS: [u64; 9] = [1, 9, 5, 30, 120, 120, 120, 60, 5];

type Check = std::result::Result<(usize, String), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

pub fn run_criterion(id: usize, cfg: &BatteryConfig) -> CriterionResult {
    let start = Instant::now();
    let outcome = match id {
        1 => criterion_worked_example(),
        2 => criterion_r1(),
        3 => criterion_sharpness(),
        4 => criterion_lemma5(),
        5 => criterion_general(cfg),
        6 => criterion_degenerate(cfg),
        7 => criterion_knapsack(cfg),
        8 => criterion_sparsity(cfg),
        9 => criterion_lemma3(cfg),
        _ => Err(format!("unknown criterion {id}")),
    };
    let elapsed = start.elapsed();
    let (checks_passed, cases, detail) = match outcome {
        Ok((cases, detail)) => (true, cases, detail),
        Err(detail) => (false, 0, detail),
    };
    CriterionResult {
        id,
        name: NAMES[id - 1],
        checks_passed,
        cases,
        elapsed,
        budget: Duration::from_secs(BUDGET_SECS[id - 1]),
        detail,
    }
}

pub fn run_all(cfg: &BatteryConfig) -> Vec<CriterionResult> {
    (1..=9).map(|i| run_criterion(i, cfg)).collect()
}

fn criterion_worked_example() -> Check {
    let inst = gen_paper_2x4();
    let ctx = inst.context().map_err(err)?;
    let cv = corner_vertices(&ctx).map_err(err)?;
    let z = crate::num::ints(&[0, 1, 1, 3]);
    ensure(cv.lifted == vec![z.clone()], || {
        format!("corner vertices {:?}", cv.lifted)
    })?;
    let rep = check_theorem1(&ctx, &z).map_err(err)?;
    ensure(
        rep.r == 2 && rep.delta == rat(10, 1) && rep.rhs == rat(20, 1) && rep.holds && rep.tight,
        || format!("theorem report {rep:?}"),
    )?;
    Ok((1, "vertex (0,1,1,3), r=2, delta=10, 10*2^2/2 = 20 = Sigma/gcd".into()))
}

fn criterion_r1() -> Check {
    let mut slowest = Duration::ZERO;
    let mut cases = 0;
    for k in [2u64, 5, 10] {
        for n in [2usize, 3, 5] {
            let t0 = Instant::now();
            let inst = gen_r1_family(k, n).map_err(err)?;
            let a = inst.weights().to_vec();
            let b = inst.b[0].clone();
            let bx = BoxSpec::cube(n, 0, k as i64);
            let pts = enumerate_integer_points(&inst.a, &inst.b, &vec![Sign::NonNeg; n], &bx).map_err(err)?;
            let mut only = vec![BigInt::zero(); n];
            only[n - 1] = BigInt::from(k - 1);
            ensure(pts == vec![only.clone()], || {
                format!("k={k} n={n}: feasible points {pts:?}")
            })?;
            let rep = check_theorem3(&a, &b).map_err(err)?;
            let want = to_rat(&inf_norm(&a)) - Rat::one();
            ensure(rep.z_star == only, || format!("k={k} n={n}: z* {:?}", rep.z_star))?;
            ensure(
                rep.r == 1
                    && rep.delta == Rat::from_integer(BigInt::from(k - 1))
                    && rep.delta == want
                    && rep.holds
                    && rep.tight,
                || format!("k={k} n={n}: {rep:?}"),
            )?;
            slowest = slowest.max(t0.elapsed());
            cases += 1;
        }
    }
    ensure(slowest < Duration::from_secs(1), || format!("slowest case {slowest:?}"))?;
    Ok((
        cases,
        format!("delta = k-1 = |a|-1 tight; slowest {:.3}s", slowest.as_secs_f64()),
    ))
}

fn criterion_sharpness() -> Check {
    let mut cases = 0;
    for s in [3usize, 4, 5] {
        let mut last: Option<Rat> = None;
        for t in [1u64, 10, 100] {
            let inst = gen_sharpness(s, t).map_err(err)?;
            let a = inst.weights().to_vec();
            let b = inst.b[0].clone();
            let ones = vec![BigInt::one(); s];
            let cv = knapsack_corner(&a, &b).map_err(err)?;
            ensure(cv.lifted.contains(&ones), || {
                format!("s={s} t={t}: 1_s not a corner vertex")
            })?;
            let rep = check_theorem3_report(&a, &b, &ones).map_err(err)?;
            ensure(rep.r == s - 1 && rep.strict && rep.holds && !rep.tight, || {
                format!("s={s} t={t}: {rep:?}")
            })?;
            let ratio = sharpness_ratio(s, &BigInt::from(t));
            let direct = &rep.delta * Rat::from_integer(crate::num::pow2(s - 1))
                / Rat::from_integer(BigInt::from(s - 1) * inf_norm(&a));
            ensure(ratio == direct, || format!("s={s} t={t}: ratio {ratio} vs {direct}"))?;
            ensure(ratio < Rat::one(), || format!("s={s} t={t}: ratio {ratio} not below 1"))?;
            if let Some(prev) = &last {
                ensure(&ratio > prev, || format!("s={s}: ratio not increasing at t={t}"))?;
            }
            if s == 3 && t == 100 {
                ensure(rep.delta == rat(803, 4), || format!("delta {}", rep.delta))?;
                ensure(ratio == rat(803, 804) && ratio > rat(995, 1000), || {
                    format!("ratio {ratio}")
                })?;
            }
            last = Some(ratio);
            cases += 1;
        }
    }
    Ok((
        cases,
        "1_s corner vertex, r=s-1, strict; s=3,t=100: delta=803/4, ratio=803/804".into(),
    ))
}

fn criterion_lemma5() -> Check {
    let mut cases = 0;
    for s in 2..=8usize {
        let a = crate::instances::sharpness_weights(s, &BigInt::zero());
        let b = crate::num::pow2(s) - 1;
        let verts = integer_hull_vertices(&a, &b).map_err(err)?;
        ensure(verts.contains(&vec![BigInt::one(); s]), || {
            format!("s={s}: 1_s missing")
        })?;
        cases += 1;
    }
    Ok((cases, "1_s is a vertex of P_I for s=2..8".into()))
}

fn suite<F>(count: usize, f: F) -> Check
where
    F: Fn(usize) -> std::result::Result<String, String> + Sync,
{
    let results: Vec<std::result::Result<String, String>> = (0..count).into_par_iter().map(&f).collect();
    let failures: Vec<String> = results
        .iter()
        .enumerate()
        .filter_map(|(i, r)| r.as_ref().err().map(|e| format!("#{i}: {e}")))
        .collect();
    if !failures.is_empty() {
        return Err(format!(
            "{} failures; first: {}",
            failures.len(),
            failures[..failures.len().min(3)].join(" | ")
        ));
    }
    let mut tally: std::collections::BTreeMap<String, usize> = Default::default();
    for r in results.into_iter().flatten() {
        *tally.entry(r).or_default() += 1;
    }
    let summary = tally
        .iter()
        .map(|(k, v)| format!("{k}:{v}"))
        .collect::<Vec<_>>()
        .join(" ");
    Ok((count, summary))
}

fn general_spec(i: usize, kind: RandomKind) -> RandomSpec {
    let m = if kind == RandomKind::Degenerate { 2 } else { 1 + i % 2 };
    let span = 5 - m;
    let n = m + 1 + (i / 2) % span;
    RandomSpec {
        m,
        n,
        entry_bound: 6,
        rhs_bound: 0,
        kind,
    }
}

fn criterion_general(cfg: &BatteryConfig) -> Check {
    suite(cfg.general, |i| {
        let seed = cfg.seed.wrapping_add(i as u64);
        let inst = gen_random(&general_spec(i, RandomKind::General), seed).map_err(err)?;
        check_general(&inst).map_err(|e| format!("seed {seed}: {e}"))
    })
}

fn check_general(inst: &Instance) -> std::result::Result<String, String> {
    let ctx = inst.context().map_err(err)?;
    let cv = corner_vertices(&ctx).map_err(err)?;
    let lattice = project_lattice(&ctx).map_err(err)?;
    let orth = Cone::orthant(ctx.k());
    let mut max_r = 0;
    for (u, z) in cv.projected.vertices.iter().zip(&cv.lifted) {
        ensure(is_irreducible(u, &lattice, &orth).map_err(err)?, || {
            format!("{u:?} reducible")
        })?;
        let p = check_product_bound(z, &ctx).map_err(err)?;
        ensure(p.holds, || format!("product bound fails at {z:?}"))?;
        let t1 = check_theorem1(&ctx, z).map_err(err)?;
        ensure(t1.holds, || format!("theorem 1 fails at {z:?}"))?;
        let l4 = lemma4_bound(&ctx, z).map_err(err)?;
        ensure(l4.holds && l4.lhs == t1.lhs && l4.bound <= t1.rhs, || {
            format!("lemma 4 sandwich fails at {z:?}")
        })?;
        max_r = max_r.max(t1.r);
    }
    let brute = brute_corner_vertices(&inst.a, &inst.b, &CornerMode::Gamma(ctx.gamma().to_vec()), None).map_err(err)?;
    let mut fast = cv.lifted.clone();
    fast.sort();
    ensure(brute.contained, || "oracle box misses the candidate region".into())?;
    ensure(brute.vertices == fast, || {
        format!("fast {fast:?} vs oracle {:?}", brute.vertices)
    })?;
    Ok(format!("r{max_r}"))
}

fn criterion_degenerate(cfg: &BatteryConfig) -> Check {
    suite(cfg.degenerate, |i| {
        let seed = cfg.seed.wrapping_add(10_000 + i as u64);
        let inst = gen_random(&general_spec(i, RandomKind::Degenerate), seed).map_err(err)?;
        check_degenerate(&inst).map_err(|e| format!("seed {seed}: {e}"))
    })
}

fn check_degenerate(inst: &Instance) -> std::result::Result<String, String> {
    let tau = inst.tau.clone().ok_or("missing tau")?;
    let x_star = vertex_with_support(&inst.a, &inst.b, &tau).map_err(err)?;
    let brute = brute_corner_vertices(&inst.a, &inst.b, &CornerMode::Tau(tau.clone()), None).map_err(err)?;
    ensure(brute.contained, || "oracle box misses the candidate region".into())?;
    ensure(!brute.vertices.is_empty(), || "no vertices".into())?;
    let mut max_r = 0;
    for z in &brute.vertices {
        let t2 = check_theorem2(&inst.a, &inst.b, &x_star, z, &tau).map_err(err)?;
        ensure(t2.careful_holds(), || format!("basis choice inequality fails at {z:?}"))?;
        ensure(t2.products_hold(), || format!("product bound fails at {z:?}"))?;
        ensure(t2.report.holds, || format!("theorem 2 fails at {z:?}: {:?}", t2.report))?;
        max_r = max_r.max(t2.report.r);
    }
    let mut fast = corner_tau_vertices(&inst.a, &inst.b, &tau).map_err(err)?.lifted;
    fast.sort();
    ensure(fast == brute.vertices, || {
        format!("fast {fast:?} vs oracle {:?}", brute.vertices)
    })?;
    Ok(format!("r{max_r}"))
}

fn criterion_knapsack(cfg: &BatteryConfig) -> Check {
    suite(cfg.knapsack, |i| {
        let seed = cfg.seed.wrapping_add(20_000 + i as u64);
        let spec = RandomSpec {
            m: 1,
            n: 2 + i % 4,
            entry_bound: 30,
            rhs_bound: 200,
            kind: RandomKind::Knapsack,
        };
        let inst = gen_random(&spec, seed).map_err(err)?;
        check_knapsack(&inst).map_err(|e| format!("seed {seed}: {e}"))
    })
}

fn check_knapsack(inst: &Instance) -> std::result::Result<String, String> {
    let a = inst.weights().to_vec();
    let b = inst.b[0].clone();
    let c = inst.c.clone().ok_or("missing c")?;
    let n = a.len();
    let z = corner_vertex_in_p(&a, &b).map_err(err)?;
    let brute = brute_corner_vertices(&inst.a, &inst.b, &CornerMode::Gamma(vec![0]), None).map_err(err)?;
    ensure(brute.vertices.contains(&z), || {
        format!("{z:?} is not an oracle corner vertex")
    })?;
    ensure(!z.iter().any(Signed::is_negative), || format!("{z:?} outside P"))?;
    let t3 = check_theorem3(&a, &b).map_err(err)?;
    ensure(t3.holds, || format!("theorem 3 fails: {t3:?}"))?;
    ensure(t3.r < 2 || (t3.strict && t3.lhs < t3.rhs), || {
        "strictness missing".into()
    })?;
    let ip = ip_value(&c, &a, &b).map_err(err)?;
    let upper: Vec<BigInt> = a.iter().map(|w| &b / w).collect();
    let bx = BoxSpec::new(vec![BigInt::zero(); n], upper, 2, 2).map_err(err)?;
    let opt = brute_ilp_opt(&inst.a, &inst.b, &c, Sense::Min, &bx).map_err(err)?;
    ensure(ip.value == opt.value && opt.argset.first() == Some(&ip.argmin), || {
        format!("ip {:?} vs oracle {:?}", ip, opt)
    })?;
    let gap = integrality_gap_report(&c, &a, &b).map_err(err)?;
    ensure(gap.holds(), || format!("corollary verdicts fail: {gap:?}"))?;
    let w = aho_and_sparsity_exist(&a, &b).map_err(err)?;
    ensure(w.proximity_distance <= to_rat(&inf_norm(&a)) - Rat::one(), || {
        "proximity witness too far".into()
    })?;
    ensure(w.sparse_holds, || format!("support {} too large", w.sparse_support))?;
    Ok(format!("r{}", t3.r))
}

fn criterion_sparsity(cfg: &BatteryConfig) -> Check {
    suite(cfg.sparsity, |i| {
        let seed = cfg.seed.wrapping_add(30_000 + i as u64);
        let inst = gen_random(&general_spec(i, RandomKind::Bounded), seed).map_err(err)?;
        check_sparsity(&inst).map_err(|e| format!("seed {seed}: {e}"))
    })
}

fn check_sparsity(inst: &Instance) -> std::result::Result<String, String> {
    let c = inst.c.clone().ok_or("missing c")?;
    let out = min_support_optimum(&inst.a, &inst.b, &c, DEFAULT_BOX_CAP).map_err(err)?;
    ensure(out.report.holds, || {
        format!("support inequality fails: {:?}", out.report)
    })?;
    ensure(out.candidates.iter().filter(|c| c.vertex).all(|c| c.holds), || {
        "a vertex optimum of minimum support violates the bound".into()
    })?;
    if let Some(r) = &out.reduction {
        ensure(r.monotone && r.reduced_holds, || {
            format!("full-support reduction fails: {r:?}")
        })?;
    }
    ensure(support_bound_check(&out.report.z_star, &inst.a).map_err(err)?, || {
        "support bound fails".into()
    })?;
    let bv = bv_short_vectors(&inst.a).map_err(err)?;
    let rows: Vec<Vec<Rat>> = bv.vectors.iter().map(|v| crate::num::to_rats(v)).collect();
    ensure(
        bv.vectors.len() == inst.a.cols() - inst.a.rows() && crate::matrix::rat_rank(&rows) == bv.vectors.len(),
        || "short vectors are not independent".into(),
    )?;
    ensure(bv.holds, || "short-vector product bound fails".into())?;
    for v in &bv.vectors {
        ensure(inst.a.mul_vec(v).iter().all(Zero::is_zero), || {
            format!("{v:?} not in the kernel")
        })?;
    }
    Ok(format!("s{}", out.report.s))
}

fn criterion_lemma3(cfg: &BatteryConfig) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(40_000));
    for d in 2..=6usize {
        let s = sum_product_holds(&vec![Rat::one(); d]).map_err(err)?;
        ensure(s.holds && s.equality, || {
            format!("d={d}: all-ones is not an equality case")
        })?;
    }
    let mut equalities = 0;
    for _ in 0..cfg.lemma3 {
        let d = rng.gen_range(2..=6usize);
        let x: Vec<Rat> = (0..d)
            .map(|_| {
                let den: i64 = rng.gen_range(1..=12);
                let num: i64 = rng.gen_range(den..=20 * den);
                rat(num, den)
            })
            .collect();
        let s = sum_product_holds(&x).map_err(err)?;
        ensure(s.holds, || format!("{x:?} violates the inequality"))?;
        let ones = x.iter().filter(|v| v.is_one()).count();
        let expected = ones == d || (d == 2 && ones > 0);
        ensure(s.equality == expected, || {
            format!("{x:?}: equality flag {}", s.equality)
        })?;
        equalities += usize::from(s.equality);
    }
    Ok((
        cfg.lemma3,
        format!("equality exactly at all-ones (and x_i=1 when d=2); {equalities} random equalities"),
    ))
}

/// Runs a criterion and turns a failed check into an error, for callers that want `Result`.
pub fn require(id: usize, cfg: &BatteryConfig) -> Result<CriterionResult> {
    let r = run_criterion(id, cfg);
    if r.checks_passed {
        Ok(r)
    } else {
        Err(Error::DomainError(r.detail.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_criteria_pass() {
        let cfg = BatteryConfig::default();
        for id in [1, 2, 3, 4, 9] {
            let r = run_criterion(id, &cfg);
            assert!(r.checks_passed, "{}", r.line());
        }
    }

    #[test]
    fn small_suites_pass() {
        let cfg = BatteryConfig {
            general: 12,
            degenerate: 6,
            knapsack: 12,
            sparsity: 8,
            lemma3: 50,
            ..Default::default()
        };
        for id in 5..=8 {
            let r = run_criterion(id, &cfg);
            assert!(r.checks_passed, "{}", r.line());
        }
    }
}
