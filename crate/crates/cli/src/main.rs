use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use cornerkit::battery::{run_criterion, BatteryConfig};
use cornerkit::corner::{corner_tau_vertices, corner_vertices, vertex_with_support, CornerVertexSet};
use cornerkit::instances::{
    gen_paper_2x4, gen_r1_family, gen_random, gen_sharpness, resolve, Instance, InstanceKind, RandomKind, RandomSpec,
};
use cornerkit::knapsack::{check_theorem3, integrality_gap_report};
use cornerkit::lattice::project_lattice;
use cornerkit::num::{parse_rat, Rat};
use cornerkit::sparsity::{bv_short_vectors, min_support_optimum, DEFAULT_BOX_CAP};
use cornerkit::transference::{
    check_product_bound, check_theorem1, check_theorem2, sum_product_holds, TransferenceReport, CSV_HEADER,
};
use cornerkit::Error;

#[derive(Parser)]
#[command(
    name = "cornerkit",
    version,
    about = "Exact corner-polyhedron vertices and proximity/sparsity checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// Instance file, or a builtin: paper2x4, r1:K,N, sharpness:S,T
    #[arg(long, global = true)]
    instance: Option<String>,
    /// Write the output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    count: Option<usize>,
    #[arg(long, global = true, default_value_t = DEFAULT_BOX_CAP)]
    box_cap: u64,
    /// Suppress stdout; the exit code still reports the verdict
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Vertices of the sail of the projected lattice
    Sail,
    /// Vertices of CP_gamma, or of CP_tau when a tau is given
    Corner {
        /// 1-based, comma separated
        #[arg(long, value_delimiter = ',')]
        tau: Option<Vec<usize>>,
    },
    /// Check one inequality on the instance
    Verify {
        #[arg(value_enum)]
        check: VerifyKind,
        #[arg(long, value_delimiter = ',')]
        tau: Option<Vec<usize>>,
        /// Rational values for lemma3, e.g. 1,3/2,4
        #[arg(long, value_delimiter = ',')]
        values: Option<Vec<String>>,
    },
    /// Integrality gap of a knapsack instance with its objective
    Gap,
    /// Minimum-support optimum and the support inequality
    Sparsity,
    /// Short independent kernel vectors
    Bv,
    /// Generate instances
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Run the acceptance battery
    Suite {
        /// Subset of criteria, comma separated
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<usize>>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyKind {
    Thm1,
    Thm2,
    Thm3,
    Thm5,
    Thm6,
    Cor1,
    Lemma3,
}

#[derive(Subcommand)]
enum GenFamily {
    Sharpness {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: u64,
    },
    R1 {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        n: usize,
    },
    Paper2x4,
    Random {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        bound: i64,
        #[arg(long, default_value_t = 200)]
        rhs_bound: i64,
        #[arg(long, value_enum, default_value_t = KindArg::General)]
        kind: KindArg,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    General,
    Degenerate,
    Bounded,
    Knapsack,
}

/// Rendered output plus whether every check held.
struct Outcome {
    json: Value,
    csv: Option<Vec<Vec<String>>>,
    holds: bool,
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn vecs(v: &[Vec<BigInt>]) -> Value {
    v.iter()
        .map(|x| x.iter().map(|e| e.to_string()).collect::<Vec<_>>())
        .collect()
}

fn load(common: &Common) -> Result<Instance, Failure> {
    let spec = common
        .instance
        .as_deref()
        .ok_or_else(|| Failure::Usage("--instance is required".into()))?;
    Ok(resolve(spec)?)
}

fn tau_of(inst: &Instance, tau: &Option<Vec<usize>>) -> Result<Option<Vec<usize>>, Failure> {
    match tau {
        Some(t) => {
            if t.iter().any(|&i| i == 0 || i > inst.a.cols()) {
                return Err(Failure::Usage("tau indices are 1-based column numbers".into()));
            }
            Ok(Some(t.iter().map(|i| i - 1).collect()))
        }
        None => Ok(inst.tau.clone()),
    }
}

fn report_row(id: &str, r: &TransferenceReport) -> Vec<String> {
    r.csv_fields(id)
}

#[allow(clippy::too_many_arguments)]
fn generic_row(
    id: &str,
    theorem: &str,
    r: usize,
    d: usize,
    lhs: &Rat,
    rhs: &Rat,
    holds: bool,
    tight: bool,
) -> Vec<String> {
    vec![
        id.to_string(),
        theorem.to_string(),
        r.to_string(),
        d.to_string(),
        lhs.numer().to_string(),
        lhs.denom().to_string(),
        rhs.numer().to_string(),
        rhs.denom().to_string(),
        holds.to_string(),
        tight.to_string(),
    ]
}

fn corner_json(cv: &CornerVertexSet) -> Value {
    json!({
        "gamma": cv.gamma.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "tau": cv.tau.as_ref().map(|t| t.iter().map(|i| i + 1).collect::<Vec<_>>()),
        "vertices": vecs(&cv.lifted),
        "projected": vecs(&cv.projected.vertices),
    })
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let common = &cli.common;
    match &cli.command {
        Command::Sail => {
            let inst = load(common)?;
            let ctx = inst.context()?;
            let lattice = project_lattice(&ctx)?;
            let cv = corner_vertices(&ctx)?;
            Ok(Outcome {
                json: json!({
                    "gamma": ctx.gamma().iter().map(|i| i + 1).collect::<Vec<_>>(),
                    "determinant": lattice.determinant().to_string(),
                    "shift": lattice.shift().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                    "basis": vecs(&lattice.basis().to_rows()),
                    "candidate_bound": cv.projected.candidate_bound.to_string(),
                    "vertices": vecs(&cv.projected.vertices),
                }),
                csv: None,
                holds: true,
            })
        }
        Command::Corner { tau } => {
            let inst = load(common)?;
            let cv = match tau_of(&inst, tau)? {
                Some(t) => corner_tau_vertices(&inst.a, &inst.b, &t)?,
                None => corner_vertices(&inst.context()?)?,
            };
            Ok(Outcome {
                json: corner_json(&cv),
                csv: None,
                holds: true,
            })
        }
        Command::Verify { check, tau, values } => verify(common, *check, tau, values),
        Command::Gap => {
            let inst = load(common)?;
            knapsack_only(&inst)?;
            let c = inst
                .c
                .clone()
                .ok_or_else(|| Failure::Usage("the instance has no objective c".into()))?;
            let g = integrality_gap_report(&c, inst.weights(), &inst.b[0])?;
            Ok(Outcome {
                holds: g.holds(),
                json: serde_json::to_value(&g).expect("serializable"),
                csv: None,
            })
        }
        Command::Sparsity => {
            let inst = load(common)?;
            let c = inst.c.clone().unwrap_or_else(|| vec![BigInt::from(0); inst.a.cols()]);
            let o = min_support_optimum(&inst.a, &inst.b, &c, common.box_cap)?;
            Ok(Outcome {
                holds: o.report.holds,
                json: serde_json::to_value(&o).expect("serializable"),
                csv: None,
            })
        }
        Command::Bv => {
            let inst = load(common)?;
            let r = bv_short_vectors(&inst.a)?;
            Ok(Outcome {
                holds: r.holds,
                json: serde_json::to_value(&r).expect("serializable"),
                csv: None,
            })
        }
        Command::Gen { family } => generate(common, family),
        Command::Suite { only } => {
            let mut cfg = BatteryConfig::default();
            if let Some(s) = common.seed {
                cfg.seed = s;
            }
            let ids = only.clone().unwrap_or_else(|| (1..=9).collect());
            if ids.iter().any(|i| !(1..=9).contains(i)) {
                return Err(Failure::Usage("criteria are numbered 1..=9".into()));
            }
            let mut rows = Vec::new();
            let mut all = true;
            for id in ids {
                let r = run_criterion(id, &cfg);
                if !common.quiet && common.out.is_none() && common.format == Format::Json {
                    eprintln!("{}", r.line());
                }
                all &= r.passed();
                rows.push(json!({
                    "criterion": r.id,
                    "name": r.name,
                    "passed": r.passed(),
                    "cases": r.cases,
                    "seconds": r.elapsed.as_secs_f64(),
                    "budget_seconds": r.budget.as_secs(),
                    "detail": r.detail,
                }));
            }
            Ok(Outcome {
                json: Value::Array(rows),
                csv: None,
                holds: all,
            })
        }
    }
}

fn knapsack_only(inst: &Instance) -> Result<(), Failure> {
    if inst.kind != InstanceKind::Knapsack {
        return Err(Failure::Usage("this command needs a knapsack instance".into()));
    }
    Ok(())
}

fn verify(
    common: &Common,
    check: VerifyKind,
    tau: &Option<Vec<usize>>,
    values: &Option<Vec<String>>,
) -> Result<Outcome, Failure> {
    if check == VerifyKind::Lemma3 {
        let vals = values
            .as_ref()
            .ok_or_else(|| Failure::Usage("lemma3 needs --values".into()))?;
        let x = vals
            .iter()
            .map(|s| parse_rat(s).ok_or_else(|| Failure::Usage(format!("not a rational: {s}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let s = sum_product_holds(&x)?;
        let row = generic_row(
            "values",
            "lemma3",
            x.len(),
            x.len(),
            &s.lhs,
            &s.rhs,
            s.holds,
            s.equality,
        );
        return Ok(Outcome {
            holds: s.holds,
            json: serde_json::to_value(&s).expect("serializable"),
            csv: Some(vec![row]),
        });
    }
    let inst = load(common)?;
    let id = inst.id();
    match check {
        VerifyKind::Thm1 | VerifyKind::Thm6 => {
            let ctx = inst.context()?;
            let cv = corner_vertices(&ctx)?;
            let mut rows = Vec::new();
            let mut items = Vec::new();
            let mut holds = true;
            for z in &cv.lifted {
                if check == VerifyKind::Thm1 {
                    let r = check_theorem1(&ctx, z)?;
                    holds &= r.holds;
                    rows.push(report_row(&id, &r));
                    items.push(serde_json::to_value(&r).expect("serializable"));
                } else {
                    let p = check_product_bound(z, &ctx)?;
                    holds &= p.holds;
                    let r = cornerkit::num::support_size(&ctx.project(z));
                    let lhs = Rat::from_integer(p.product.clone());
                    rows.push(generic_row(
                        &id,
                        "thm6",
                        r,
                        0,
                        &lhs,
                        &p.rhs,
                        p.holds,
                        p.slack == Rat::from_integer(BigInt::from(0)),
                    ));
                    let mut v = serde_json::to_value(&p).expect("serializable");
                    v["z_star"] = json!(z.iter().map(|e| e.to_string()).collect::<Vec<_>>());
                    items.push(v);
                }
            }
            Ok(Outcome {
                json: Value::Array(items),
                csv: Some(rows),
                holds,
            })
        }
        VerifyKind::Thm2 => {
            let t = tau_of(&inst, tau)?
                .ok_or_else(|| Failure::Usage("thm2 needs --tau or a tau in the instance".into()))?;
            let x = vertex_with_support(&inst.a, &inst.b, &t)?;
            let cv = corner_tau_vertices(&inst.a, &inst.b, &t)?;
            let mut rows = Vec::new();
            let mut items = Vec::new();
            let mut holds = true;
            for z in &cv.lifted {
                let r = check_theorem2(&inst.a, &inst.b, &x, z, &t)?;
                let ok = r.report.holds && r.careful_holds() && r.products_hold();
                holds &= ok;
                rows.push(report_row(&id, &r.report));
                let mut v = serde_json::to_value(&r.report).expect("serializable");
                v["sigma"] = json!(r.sigma.iter().map(|i| i + 1).collect::<Vec<_>>());
                v["basis_choice_holds"] = json!(r.careful_holds());
                v["product_bounds_hold"] = json!(r.products_hold());
                items.push(v);
            }
            Ok(Outcome {
                json: Value::Array(items),
                csv: Some(rows),
                holds,
            })
        }
        VerifyKind::Thm3 => {
            knapsack_only(&inst)?;
            let r = check_theorem3(inst.weights(), &inst.b[0])?;
            Ok(Outcome {
                holds: r.holds,
                csv: Some(vec![report_row(&id, &r)]),
                json: serde_json::to_value(&r).expect("serializable"),
            })
        }
        VerifyKind::Thm5 => {
            let c = inst.c.clone().unwrap_or_else(|| vec![BigInt::from(0); inst.a.cols()]);
            let o = min_support_optimum(&inst.a, &inst.b, &c, common.box_cap)?;
            let rep = &o.report;
            // squared comparison: (ρ+1)^{2(s−m)}·gcd² against det(AAᵀ)
            let lhs = &rep.lhs * &rep.lhs * Rat::from_integer(&rep.gcd * &rep.gcd);
            let rhs = Rat::from_integer(rep.gram.clone());
            Ok(Outcome {
                holds: rep.holds,
                csv: Some(vec![generic_row(
                    &id,
                    "thm5",
                    rep.s,
                    rep.m,
                    &lhs,
                    &rhs,
                    rep.holds,
                    lhs == rhs,
                )]),
                json: serde_json::to_value(&o).expect("serializable"),
            })
        }
        VerifyKind::Cor1 => {
            knapsack_only(&inst)?;
            let c = inst
                .c
                .clone()
                .ok_or_else(|| Failure::Usage("the instance has no objective c".into()))?;
            let g = integrality_gap_report(&c, inst.weights(), &inst.b[0])?;
            let rows = g
                .verdicts
                .iter()
                .map(|v| {
                    generic_row(
                        &id,
                        "cor1",
                        v.r,
                        0,
                        &g.gap,
                        &v.bound,
                        v.holds && v.chain_holds,
                        g.gap == v.bound,
                    )
                })
                .collect();
            Ok(Outcome {
                holds: g.holds(),
                csv: Some(rows),
                json: serde_json::to_value(&g).expect("serializable"),
            })
        }
        VerifyKind::Lemma3 => unreachable!("handled above"),
    }
}

fn generate(common: &Common, family: &GenFamily) -> Result<Outcome, Failure> {
    let insts: Vec<Instance> = match family {
        GenFamily::Sharpness { s, t } => vec![gen_sharpness(*s, *t)?],
        GenFamily::R1 { k, n } => vec![gen_r1_family(*k, *n)?],
        GenFamily::Paper2x4 => vec![gen_paper_2x4()],
        GenFamily::Random {
            m,
            n,
            bound,
            rhs_bound,
            kind,
        } => {
            let kind = match kind {
                KindArg::General => RandomKind::General,
                KindArg::Degenerate => RandomKind::Degenerate,
                KindArg::Bounded => RandomKind::Bounded,
                KindArg::Knapsack => RandomKind::Knapsack,
            };
            let spec = RandomSpec {
                m: *m,
                n: *n,
                entry_bound: *bound,
                rhs_bound: *rhs_bound,
                kind,
            };
            let seed = common.seed.unwrap_or(0);
            (0..common.count.unwrap_or(1) as u64)
                .map(|i| gen_random(&spec, seed + i))
                .collect::<Result<_, _>>()?
        }
    };
    let values: Vec<Value> = insts
        .iter()
        .map(|i| serde_json::from_str(&i.to_json()).expect("valid JSON"))
        .collect();
    let json = if values.len() == 1 {
        values[0].clone()
    } else {
        Value::Array(values)
    };
    Ok(Outcome {
        json,
        csv: None,
        holds: true,
    })
}

fn render(out: &Outcome, format: Format) -> String {
    match (format, &out.csv) {
        (Format::Csv, Some(rows)) => {
            let mut s = CSV_HEADER.join(",");
            s.push('\n');
            for r in rows {
                s.push_str(&r.join(","));
                s.push('\n');
            }
            s
        }
        _ => {
            let mut s = serde_json::to_string_pretty(&out.json).expect("serializable");
            s.push('\n');
            s
        }
    }
}

fn emit(text: &str, out: Option<&Path>, quiet: bool) -> std::io::Result<()> {
    if let Some(p) = out {
        fs::write(p, text)?;
    } else if !quiet {
        std::io::stdout().write_all(text.as_bytes())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let text = render(&out, cli.common.format);
            if let Err(e) = emit(&text, cli.common.out.as_deref(), cli.common.quiet) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if out.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            if e.is_resource_cap() {
                ExitCode::from(3)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
