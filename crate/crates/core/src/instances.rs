//! Instance files and generators.
//!
//! Integers are written as decimal strings and index sets are 1-based on disk.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::hnf::solve_integer;
use crate::knapsack::{knapsack_corner, validate as validate_knapsack};
use crate::lattice::ProjectionContext;
use crate::lp::lp_feasible;
use crate::matrix::{rat_rank, IntMatrix};
use crate::minors::{bases, first_basis_containing, minor_stats};
use crate::num::{inf_norm, pow2, to_rats, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InstanceKind {
    General,
    Knapsack,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    #[serde(default)]
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default)]
    pub params: BTreeMap<String, Value>,
}

/// A validated instance; index sets are 0-based in memory.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub kind: InstanceKind,
    pub a: IntMatrix,
    pub b: Vec<BigInt>,
    pub gamma: Option<Vec<usize>>,
    pub tau: Option<Vec<usize>>,
    pub c: Option<Vec<BigInt>>,
    pub meta: Meta,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum Num {
    Str(String),
    Int(i64),
}

impl Num {
    fn big(&self) -> Result<BigInt> {
        match self {
            Num::Int(v) => Ok(BigInt::from(*v)),
            Num::Str(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInstance(format!("not an integer: {s:?}"))),
        }
    }

    fn of(v: &BigInt) -> Self {
        Num::Str(v.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum RawRhs {
    Scalar(Num),
    Vector(Vec<Num>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    kind: InstanceKind,
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<Vec<Num>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a: Option<Vec<Num>>,
    b: RawRhs,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gamma: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tau: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    c: Option<Vec<Num>>,
    #[serde(default)]
    meta: Meta,
}

fn bigs(v: &[Num]) -> Result<Vec<BigInt>> {
    v.iter().map(Num::big).collect()
}

fn zero_based(v: &[usize], n: usize, what: &str) -> Result<Vec<usize>> {
    v.iter()
        .map(|&i| {
            if i == 0 || i > n {
                Err(Error::InvalidInstance(format!("{what} index {i} outside 1..={n}")))
            } else {
                Ok(i - 1)
            }
        })
        .collect()
}

impl Instance {
    pub fn general(a: IntMatrix, b: Vec<BigInt>) -> Self {
        Self {
            kind: InstanceKind::General,
            a,
            b,
            gamma: None,
            tau: None,
            c: None,
            meta: Meta::default(),
        }
    }

    pub fn knapsack(a: Vec<BigInt>, b: BigInt) -> Self {
        let n = a.len();
        Self {
            kind: InstanceKind::Knapsack,
            a: IntMatrix::new(1, n, a).expect("row shape"),
            b: vec![b],
            gamma: Some(vec![0]),
            tau: None,
            c: None,
            meta: Meta::default(),
        }
    }

    pub fn with_meta(mut self, family: &str, seed: Option<u64>, params: &[(&str, Value)]) -> Self {
        self.meta = Meta {
            family: family.to_string(),
            seed,
            params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        };
        self
    }

    /// Checks shapes, rank, the knapsack conditions, `γ` and `τ`.
    pub fn validate(&self) -> Result<()> {
        let (m, n) = (self.a.rows(), self.a.cols());
        if m == 0 || m >= n {
            return Err(Error::InvalidInstance(format!("need 0 < m < n, got {m}x{n}")));
        }
        if self.b.len() != m {
            return Err(Error::InvalidInstance("b disagrees with A".into()));
        }
        if let Some(c) = &self.c {
            if c.len() != n {
                return Err(Error::InvalidInstance("c disagrees with A".into()));
            }
        }
        minor_stats(&self.a).map_err(|_| Error::InvalidInstance("A does not have full row rank".into()))?;
        if self.kind == InstanceKind::Knapsack {
            if m != 1 {
                return Err(Error::InvalidInstance("knapsack instances have one row".into()));
            }
            validate_knapsack(self.a.row(0), &self.b[0])?;
        }
        let distinct = |s: &[usize]| {
            let mut t = s.to_vec();
            t.sort_unstable();
            t.dedup();
            t.len() == s.len()
        };
        if let Some(g) = &self.gamma {
            if g.len() != m || !distinct(g) || g.iter().any(|&j| j >= n) || self.a.select_columns(g).det().is_zero() {
                return Err(Error::InvalidInstance("A_gamma is not a nonsingular basis".into()));
            }
        }
        if let Some(t) = &self.tau {
            if t.len() > m || !distinct(t) || t.iter().any(|&j| j >= n) {
                return Err(Error::InvalidInstance(
                    "tau is not an index set of size at most m".into(),
                ));
            }
            if first_basis_containing(&self.a, t).is_none() {
                return Err(Error::InvalidInstance("columns of tau are dependent".into()));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawInstance =
            serde_json::from_str(text).map_err(|e| Error::InvalidInstance(format!("bad instance JSON: {e}")))?;
        let (a, b) = match raw.kind {
            InstanceKind::General => {
                let rows = raw
                    .matrix
                    .ok_or_else(|| Error::InvalidInstance("general instance needs A".into()))?;
                let rows = rows.iter().map(|r| bigs(r)).collect::<Result<Vec<_>>>()?;
                let b = match &raw.b {
                    RawRhs::Vector(v) => bigs(v)?,
                    RawRhs::Scalar(s) => vec![s.big()?],
                };
                (IntMatrix::from_big_rows(rows)?, b)
            }
            InstanceKind::Knapsack => {
                let a = bigs(
                    &raw.a
                        .ok_or_else(|| Error::InvalidInstance("knapsack instance needs a".into()))?,
                )?;
                let b = match &raw.b {
                    RawRhs::Scalar(s) => s.big()?,
                    RawRhs::Vector(v) if v.len() == 1 => v[0].big()?,
                    RawRhs::Vector(_) => return Err(Error::InvalidInstance("knapsack b is a scalar".into())),
                };
                let n = a.len();
                (IntMatrix::new(1, n, a)?, vec![b])
            }
        };
        let n = a.cols();
        let inst = Instance {
            kind: raw.kind,
            gamma: raw.gamma.map(|g| zero_based(&g, n, "gamma")).transpose()?,
            tau: raw.tau.map(|t| zero_based(&t, n, "tau")).transpose()?,
            c: raw.c.map(|c| bigs(&c)).transpose()?,
            a,
            b,
            meta: raw.meta,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn to_json(&self) -> String {
        let one_based = |v: &Vec<usize>| v.iter().map(|i| i + 1).collect();
        let (matrix, a, b) = match self.kind {
            InstanceKind::General => (
                Some(
                    self.a
                        .to_rows()
                        .iter()
                        .map(|r| r.iter().map(Num::of).collect())
                        .collect(),
                ),
                None,
                RawRhs::Vector(self.b.iter().map(Num::of).collect()),
            ),
            InstanceKind::Knapsack => (
                None,
                Some(self.a.row(0).iter().map(Num::of).collect()),
                RawRhs::Scalar(Num::of(&self.b[0])),
            ),
        };
        let raw = RawInstance {
            kind: self.kind,
            matrix,
            a,
            b,
            gamma: self.gamma.as_ref().map(one_based),
            tau: self.tau.as_ref().map(one_based),
            c: self.c.as_ref().map(|c| c.iter().map(Num::of).collect()),
            meta: self.meta.clone(),
        };
        serde_json::to_string_pretty(&raw).expect("serializable")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInstance(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// `family` plus seed or parameters, for report rows.
    pub fn id(&self) -> String {
        let mut id = if self.meta.family.is_empty() {
            "instance".to_string()
        } else {
            self.meta.family.clone()
        };
        if let Some(s) = self.meta.seed {
            id.push_str(&format!("-{s}"));
        }
        for (k, v) in &self.meta.params {
            if let Some(x) = v.as_u64() {
                id.push_str(&format!("-{k}{x}"));
            }
        }
        id
    }

    /// Knapsack weights.
    pub fn weights(&self) -> &[BigInt] {
        self.a.row(0)
    }

    /// The recorded `γ`, else the lexicographically first basis.
    pub fn basis(&self) -> Result<Vec<usize>> {
        match &self.gamma {
            Some(g) => Ok(g.clone()),
            None => bases(&self.a)
                .into_iter()
                .next()
                .map(|b| b.columns)
                .ok_or(Error::RankDeficient),
        }
    }

    pub fn context(&self) -> Result<ProjectionContext> {
        ProjectionContext::new(self.a.clone(), self.b.clone(), self.basis()?)
    }
}

/// `a^(s)(t) = (2^{s−1}, 2^{s−2} + t·2^{s−1}, …, 1 + t·2^{s−1})`.
pub fn sharpness_weights(s: usize, t: &BigInt) -> Vec<BigInt> {
    let top = pow2(s - 1);
    (0..s)
        .map(|i| {
            if i == 0 {
                top.clone()
            } else {
                pow2(s - 1 - i) + t * &top
            }
        })
        .collect()
}

/// `δ·2^{s−1} / ((s−1)·‖a‖∞)` for `z* = 1_s`, `x* = (b/a_1) e_1`.
pub fn sharpness_ratio(s: usize, t: &BigInt) -> Rat {
    let a = sharpness_weights(s, t);
    let b: BigInt = a.iter().sum();
    let delta = Rat::new(b, a[0].clone()) - Rat::one();
    delta * Rat::from_integer(pow2(s - 1)) / Rat::from_integer(BigInt::from(s - 1) * inf_norm(&a))
}

/// Largest `s` for which generation also checks that `1_s` is a corner vertex.
pub const SHARPNESS_CHECK_MAX: usize = 8;

pub fn gen_sharpness(s: usize, t: u64) -> Result<Instance> {
    if !(2..=30).contains(&s) {
        return Err(Error::DomainError(format!("s = {s} outside 2..=30")));
    }
    let tb = BigInt::from(t);
    let a = sharpness_weights(s, &tb);
    let b: BigInt = a.iter().sum();
    let ones = vec![BigInt::one(); s];
    let checked = s <= SHARPNESS_CHECK_MAX;
    if checked && !knapsack_corner(&a, &b)?.lifted.contains(&ones) {
        return Err(Error::InvalidVertex("1_s is not a corner vertex".into()));
    }
    let ratio = sharpness_ratio(s, &tb);
    let inst = Instance::knapsack(a, b).with_meta(
        "sharpness",
        None,
        &[
            ("s", Value::from(s)),
            ("t", Value::from(t)),
            ("ratio", Value::from(format!("{}/{}", ratio.numer(), ratio.denom()))),
            ("vertex_checked", Value::from(checked)),
        ],
    );
    inst.validate()?;
    Ok(inst)
}

/// `a = (k, …, k, 1)`, `b = k − 1`.
pub fn gen_r1_family(k: u64, n: usize) -> Result<Instance> {
    if k < 2 || n < 2 {
        return Err(Error::DomainError("need k >= 2 and n >= 2".into()));
    }
    let mut a = vec![BigInt::from(k); n - 1];
    a.push(BigInt::one());
    let inst = Instance::knapsack(a, BigInt::from(k - 1)).with_meta(
        "r1",
        None,
        &[("k", Value::from(k)), ("n", Value::from(n))],
    );
    inst.validate()?;
    Ok(inst)
}

pub fn gen_paper_2x4() -> Instance {
    let mut inst = Instance::general(
        IntMatrix::from_rows(&[[2, 0, 5, 5], [0, 4, 2, -1]]),
        vec![BigInt::from(20), BigInt::from(3)],
    )
    .with_meta("paper2x4", None, &[]);
    inst.gamma = Some(vec![0, 1]);
    inst
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RandomKind {
    /// Integer entries in `[−B, B]`, `b = A·x₀` with `x₀ >= 0`.
    General,
    /// Like `General` with a vertex `x*` whose support `τ` has fewer than `m` elements.
    Degenerate,
    /// First row positive so that `P(A,b)` is bounded; carries an objective.
    Bounded,
    /// Positive primitive weights in `[1, B]`.
    Knapsack,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomSpec {
    pub m: usize,
    pub n: usize,
    pub entry_bound: i64,
    /// Upper limit on the knapsack right-hand side; unused otherwise.
    pub rhs_bound: i64,
    pub kind: RandomKind,
}

pub const MAX_ATTEMPTS: usize = 1000;

fn random_matrix(rng: &mut ChaCha8Rng, m: usize, n: usize, lo: i64, hi: i64) -> IntMatrix {
    let data = (0..m * n).map(|_| BigInt::from(rng.gen_range(lo..=hi))).collect();
    IntMatrix::new(m, n, data).expect("shape")
}

fn has_full_rank(a: &IntMatrix) -> bool {
    rat_rank(&a.to_rat_rows()) == a.rows()
}

fn pick<T: Clone>(rng: &mut ChaCha8Rng, v: &[T]) -> T {
    v[rng.gen_range(0..v.len())].clone()
}

fn try_random(spec: &RandomSpec, rng: &mut ChaCha8Rng) -> Result<Option<Instance>> {
    let RandomSpec {
        m, n, entry_bound: bnd, ..
    } = *spec;
    match spec.kind {
        RandomKind::Knapsack => {
            let a: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(1..=bnd))).collect();
            if validate_knapsack(&a, &BigInt::zero()).is_err() {
                return Ok(None);
            }
            let target = rng.gen_range(0..=spec.rhs_bound);
            // greedy random fill below the target keeps b in Sg(a)
            let mut b = BigInt::zero();
            let mut order: Vec<usize> = (0..n).collect();
            for _ in 0..4 * n {
                let i = pick(rng, &order);
                let room = BigInt::from(target) - &b;
                if room >= a[i] {
                    b += &a[i];
                } else {
                    order.retain(|&j| j != i);
                    if order.is_empty() {
                        break;
                    }
                }
            }
            let mut inst = Instance::knapsack(a, b);
            inst.c = Some((0..n).map(|_| BigInt::from(rng.gen_range(-bnd..=bnd))).collect());
            Ok(Some(inst))
        }
        RandomKind::General | RandomKind::Bounded => {
            let mut a = random_matrix(rng, m, n, -bnd, bnd);
            if spec.kind == RandomKind::Bounded {
                for j in 0..n {
                    a[(0, j)] = BigInt::from(rng.gen_range(1..=bnd));
                }
            }
            if !has_full_rank(&a) {
                return Ok(None);
            }
            let x0: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(0..=bnd.min(3)))).collect();
            let b = a.mul_vec(&x0);
            let mut inst = Instance::general(a, b);
            inst.gamma = Some(pick(rng, &bases(&inst.a)).columns);
            inst.c = Some((0..n).map(|_| BigInt::from(rng.gen_range(-bnd..=bnd))).collect());
            Ok(Some(inst))
        }
        RandomKind::Degenerate => {
            if m < 2 {
                return Err(Error::DomainError("degenerate instances need m >= 2".into()));
            }
            let a = random_matrix(rng, m, n, -bnd, bnd);
            if !has_full_rank(&a) {
                return Ok(None);
            }
            let basis = pick(rng, &bases(&a)).columns;
            let size = rng.gen_range(1..m);
            let mut tau = basis.clone();
            while tau.len() > size {
                tau.remove(rng.gen_range(0..tau.len()));
            }
            let q = BigInt::from(rng.gen_range(1..=3));
            let w: Vec<BigInt> = (0..tau.len())
                .map(|_| BigInt::from(rng.gen_range(1..=2 * bnd)))
                .collect();
            let mut b = vec![BigInt::zero(); m];
            for (k, &j) in tau.iter().enumerate() {
                for (i, bi) in b.iter_mut().enumerate() {
                    *bi += &a[(i, j)] * &w[k];
                }
            }
            if b.iter().any(|v| !(v % &q).is_zero()) {
                return Ok(None);
            }
            let b: Vec<BigInt> = b.into_iter().map(|v| v / &q).collect();
            if solve_integer(&a, &b).is_none() {
                return Ok(None);
            }
            // the recession cone must reach into the interior of the nonnegative directions
            let mut rows = a.to_rat_rows();
            let mut rhs = vec![Rat::zero(); m];
            let mut nonneg = vec![false; n];
            for j in (0..n).filter(|j| !tau.contains(j)) {
                let mut e = vec![Rat::zero(); 2 * n];
                e[j] = Rat::one();
                e[n + j] = -Rat::one();
                rows.push(e);
                rhs.push(Rat::one());
                nonneg[j] = true;
            }
            for r in rows.iter_mut().take(m) {
                r.resize(2 * n, Rat::zero());
            }
            let mut nn = nonneg.clone();
            nn.extend(std::iter::repeat_n(true, n));
            if !lp_feasible(&rows, &rhs, &nn)?.is_feasible() {
                return Ok(None);
            }
            let mut inst = Instance::general(a, b);
            tau.sort_unstable();
            inst.gamma = Some(basis);
            inst.tau = Some(tau);
            Ok(Some(inst))
        }
    }
}

/// Deterministic in `seed`; fails after [`MAX_ATTEMPTS`] rejected draws.
pub fn gen_random(spec: &RandomSpec, seed: u64) -> Result<Instance> {
    if spec.m == 0 || spec.m >= spec.n || spec.entry_bound < 1 {
        return Err(Error::DomainError("need 0 < m < n and a positive entry bound".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        if let Some(inst) = try_random(spec, &mut rng)? {
            if inst.validate().is_ok() {
                let family = match spec.kind {
                    RandomKind::General => "random",
                    RandomKind::Degenerate => "degenerate",
                    RandomKind::Bounded => "bounded",
                    RandomKind::Knapsack => "knapsack",
                };
                return Ok(inst.with_meta_keep(family, seed, spec));
            }
        }
    }
    Err(Error::GenerationFailed(MAX_ATTEMPTS))
}

impl Instance {
    fn with_meta_keep(mut self, family: &str, seed: u64, spec: &RandomSpec) -> Self {
        self.meta = Meta {
            family: family.to_string(),
            seed: Some(seed),
            params: [
                ("m", Value::from(spec.m)),
                ("n", Value::from(spec.n)),
                ("entry_bound", Value::from(spec.entry_bound)),
            ]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
        };
        self
    }
}

/// Named instances: `paper2x4`, `r1:K,N`, `sharpness:S,T`.
pub fn builtin(name: &str) -> Option<Result<Instance>> {
    let nums = |s: &str| -> Option<Vec<u64>> { s.split(',').map(|p| p.trim().parse().ok()).collect() };
    if name == "paper2x4" {
        return Some(Ok(gen_paper_2x4()));
    }
    if let Some(rest) = name.strip_prefix("r1:") {
        let v = nums(rest)?;
        return (v.len() == 2).then(|| gen_r1_family(v[0], v[1] as usize));
    }
    if let Some(rest) = name.strip_prefix("sharpness:") {
        let v = nums(rest)?;
        return (v.len() == 2).then(|| gen_sharpness(v[0] as usize, v[1]));
    }
    None
}

/// A builtin name or a path to a JSON file.
pub fn resolve(spec: &str) -> Result<Instance> {
    match builtin(spec) {
        Some(r) => r,
        None => Instance::load(Path::new(spec)),
    }
}

/// `x₀ >= 0` with `A x₀ = b` exists in the data of generated general instances.
pub fn is_nonnegative_feasible(a: &IntMatrix, b: &[BigInt]) -> Result<bool> {
    Ok(lp_feasible(&a.to_rat_rows(), &to_rats(b), &vec![true; a.cols()])?.is_feasible())
}

/// `‖a‖∞` of a weight vector, for reports.
pub fn weight_norm(a: &[BigInt]) -> BigInt {
    a.iter().map(|v| v.abs()).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knapsack::in_semigroup;
    use crate::num::{int, ints, rat};

    #[test]
    fn sharpness_examples() {
        let i = gen_sharpness(3, 0).unwrap();
        assert_eq!((i.weights().to_vec(), i.b[0].clone()), (ints(&[4, 2, 1]), int(7)));
        let i = gen_sharpness(3, 100).unwrap();
        assert_eq!((i.weights().to_vec(), i.b[0].clone()), (ints(&[4, 402, 401]), int(807)));
        assert_eq!(sharpness_ratio(3, &int(100)), rat(803, 804));
        assert!(sharpness_ratio(3, &int(1_000_000)) < rat(1, 1));
        assert!(sharpness_ratio(3, &int(1_000_000)) > rat(999, 1000));
    }

    #[test]
    fn r1_examples() {
        let i = gen_r1_family(5, 3).unwrap();
        assert_eq!((i.weights().to_vec(), i.b[0].clone()), (ints(&[5, 5, 1]), int(4)));
        let i = gen_r1_family(2, 2).unwrap();
        assert_eq!((i.weights().to_vec(), i.b[0].clone()), (ints(&[2, 1]), int(1)));
    }

    #[test]
    fn json_round_trip() {
        for inst in [
            gen_paper_2x4(),
            gen_r1_family(5, 3).unwrap(),
            gen_sharpness(4, 10).unwrap(),
        ] {
            let text = inst.to_json();
            assert_eq!(Instance::from_json(&text).unwrap(), inst);
        }
        let text = gen_paper_2x4().to_json();
        assert!(text.contains("\"A\"") && text.contains("\"20\"") && text.contains("[\n    1,\n    2\n  ]"));
    }

    #[test]
    fn json_validation() {
        let bad = r#"{"kind":"knapsack","a":["2","4"],"b":"6"}"#;
        assert!(Instance::from_json(bad).is_err());
        let bad = r#"{"kind":"general","A":[["1","1"],["2","2"]],"b":["1","2"]}"#;
        assert!(Instance::from_json(bad).is_err());
        let bad = r#"{"kind":"general","A":[["1","0","1"]],"b":["1"],"gamma":[2]}"#;
        assert!(Instance::from_json(bad).is_err());
        let ok = r#"{"kind":"general","A":[["1","0","1"]],"b":[1],"gamma":[1]}"#;
        assert_eq!(Instance::from_json(ok).unwrap().gamma, Some(vec![0]));
        let big = r#"{"kind":"knapsack","a":["123456789012345678901234567890","1"],"b":"5"}"#;
        assert_eq!(
            Instance::from_json(big).unwrap().weights()[0].to_string(),
            "123456789012345678901234567890"
        );
    }

    #[test]
    fn random_is_deterministic_and_valid() {
        let specs = [
            RandomSpec {
                m: 2,
                n: 4,
                entry_bound: 6,
                rhs_bound: 0,
                kind: RandomKind::General,
            },
            RandomSpec {
                m: 2,
                n: 5,
                entry_bound: 6,
                rhs_bound: 0,
                kind: RandomKind::Degenerate,
            },
            RandomSpec {
                m: 2,
                n: 4,
                entry_bound: 6,
                rhs_bound: 0,
                kind: RandomKind::Bounded,
            },
            RandomSpec {
                m: 1,
                n: 4,
                entry_bound: 30,
                rhs_bound: 200,
                kind: RandomKind::Knapsack,
            },
        ];
        for spec in specs {
            for seed in 0..20 {
                let i = gen_random(&spec, seed).unwrap();
                assert_eq!(i, gen_random(&spec, seed).unwrap());
                i.validate().unwrap();
                assert_eq!(Instance::from_json(&i.to_json()).unwrap(), i);
                match spec.kind {
                    RandomKind::Knapsack => {
                        assert!(in_semigroup(i.weights(), &i.b[0]).unwrap().is_some());
                        assert!(i.b[0] <= int(200));
                    }
                    RandomKind::Degenerate => assert!(i.tau.as_ref().unwrap().len() < 2),
                    _ => assert!(is_nonnegative_feasible(&i.a, &i.b).unwrap()),
                }
            }
        }
    }

    #[test]
    fn builtins() {
        assert_eq!(resolve("paper2x4").unwrap(), gen_paper_2x4());
        assert_eq!(resolve("r1:5,3").unwrap().weights().to_vec(), ints(&[5, 5, 1]));
        assert!(resolve("sharpness:3,1").is_ok());
        assert!(resolve("/nonexistent.json").is_err());
    }
}
