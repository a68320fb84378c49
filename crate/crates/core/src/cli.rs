//! Command-line front end. Every subcommand reads and writes JSON.

use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::Error;
use crate::hives::{enumerate_hives, PartitionTriple};
use crate::json::{self, int_to_json, point_to_json, set_to_json};
use crate::mconvex::{
    enumerate_mconvex, exchange_witness, normalize_points, simplex_size, MConvexSet,
};
use crate::plucker::{log_constraints, LogConstraint, PluckerIndex};
use crate::presentations::{
    bijection_check, cross_ratio_generators, enumerate_cross_ratios, foundation_unit_group,
    idempotency_witness, pasture_presentation, tutte_group, verify_cross_ratio_relations,
    GroupAnalysis,
};
use crate::representations::{cross_ratio, verify, Mode, Verdict};
use crate::tracts::TractId;

pub const DEFAULT_GUARD: usize = 22;

#[derive(Parser, Debug)]
#[command(
    name = "polytract",
    version,
    about = "Discrete polymatroids, tract representations and hives"
)]
pub struct Cli {
    /// Write the result here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Enumeration size cap in lattice points (default: $POLYTRACT_GUARD or 22)
    #[arg(long, global = true)]
    guard: Option<usize>,
    /// Seed for randomized subcommands
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// Input JSON file; standard input when omitted or "-"
    #[arg(long = "in")]
    input: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Shape {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: i64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Test the exchange axiom on a point list
    Check(Input),
    /// Bounds, width, reduction and structural flags
    Info(Input),
    /// Dual polymatroid δ_J − J
    Dual(Input),
    /// Embedded minor (J∖ν)/μ + τ
    Minor {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        nu: Option<String>,
        #[arg(long)]
        mu: Option<String>,
        #[arg(long)]
        tau: Option<String>,
    },
    /// Direct sum of two sets
    Sum {
        #[arg(long = "in", num_args = 1..=2, required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Split into indecomposable direct summands
    Decompose(Input),
    /// Canonical form up to coordinate permutation
    Canon(Input),
    /// Combinatorial equivalence of two sets
    Equiv {
        #[arg(long = "in", num_args = 1..=2, required = true)]
        inputs: Vec<PathBuf>,
    },
    /// All M-convex subsets of Δ^r_n, one JSON object per line
    Enumerate {
        #[command(flatten)]
        shape: Shape,
        /// Emit a seeded random sample of this many sets instead
        #[arg(long)]
        sample: Option<usize>,
    },
    /// Check the Plücker relations for a representation
    VerifyRep {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "strong")]
        mode: String,
        /// Expected tract of the input
        #[arg(long)]
        tract: Option<String>,
    },
    /// Presentation and unit group of the foundation
    Foundation(Input),
    /// Free rank of the Tutte group
    TutteRank(Input),
    /// Cross-ratio symbols and the relation families they satisfy
    CrossRatios(Input),
    /// Compare the universal pasture and tract presentations
    BijectionCheck(Input),
    /// Number of integral hives with the given border
    HiveCount {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[arg(long)]
        r: Option<i64>,
        /// Also list the hives
        #[arg(long)]
        list: bool,
    },
    /// Strata of the polygrassmannian over the Krasner hyperfield
    Polygr {
        #[command(flatten)]
        shape: Shape,
    },
    /// Tropical log-constraints for each stratum
    Dressian {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: Option<i64>,
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
}

fn parse_ints(s: &str) -> Res<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|e| malformed(format!("{x:?}: {e}")))
        })
        .collect()
}

/// Result of one invocation: exit code and the text meant for standard output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_malformed() { 2 } else { 1 },
            message: e.to_string(),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn malformed(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: msg.into(),
    }
}

struct Ctx<'a> {
    stdin: &'a mut dyn Read,
    guard: usize,
    seed: u64,
}

impl Ctx<'_> {
    fn two_sets(&mut self, paths: &[PathBuf]) -> Res<(MConvexSet, MConvexSet)> {
        let [a, b] = paths else {
            return Err(malformed("expected exactly two --in files"));
        };
        Ok((
            json::set_from_json(&self.read(Some(a))?)?,
            json::set_from_json(&self.read(Some(b))?)?,
        ))
    }

    fn read(&mut self, path: Option<&PathBuf>) -> Res<Value> {
        let text = match path {
            Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
                .map_err(|e| malformed(format!("{}: {e}", p.display())))?,
            _ => {
                let mut s = String::new();
                self.stdin
                    .read_to_string(&mut s)
                    .map_err(|e| malformed(format!("stdin: {e}")))?;
                s
            }
        };
        Ok(json::parse(&text)?)
    }

    fn set(&mut self, input: &Input) -> Res<MConvexSet> {
        Ok(json::set_from_json(&self.read(input.input.as_ref())?)?)
    }
}

/// Guard precedence: explicit flag, then `POLYTRACT_GUARD`, then the default.
pub fn resolve_guard(flag: Option<usize>, env: Option<&str>) -> usize {
    flag.or_else(|| env.and_then(|v| v.trim().parse().ok()))
        .unwrap_or(DEFAULT_GUARD)
}

pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Outcome {
                code,
                stdout: e.to_string(),
            };
        }
    };
    let guard = resolve_guard(cli.guard, std::env::var("POLYTRACT_GUARD").ok().as_deref());
    let mut ctx = Ctx {
        stdin,
        guard,
        seed: cli.seed,
    };
    let (code, text) = match dispatch(&cli.command, &mut ctx) {
        Ok(lines) => (
            0,
            lines
                .iter()
                .map(|v| json::to_string(v) + "\n")
                .collect::<String>(),
        ),
        Err(f) => (f.code, json::to_string(&json!({"error": f.message})) + "\n"),
    };
    if let Some(path) = &cli.out {
        if code == 0 {
            if let Err(e) = std::fs::write(path, &text) {
                let msg = json::to_string(&json!({"error": format!("{}: {e}", path.display())}));
                return Outcome {
                    code: 1,
                    stdout: msg + "\n",
                };
            }
            return Outcome {
                code,
                stdout: String::new(),
            };
        }
    }
    Outcome { code, stdout: text }
}

fn group_json(g: &GroupAnalysis) -> Value {
    json!({
        "free_rank": g.free_rank,
        "invariant_factors": g.invariant_factors.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "minus_one": g.minus_one.name(),
    })
}

fn index_json(idx: &PluckerIndex) -> Value {
    json!({"s": idx.s, "alpha": point_to_json(&idx.alpha), "i": idx.i, "j": idx.j})
}

fn constraint_json(c: &LogConstraint) -> Value {
    let mono = |m: &Vec<Vec<i64>>| Value::Array(m.iter().map(|p| point_to_json(p)).collect());
    let (kind, sides) = match c {
        LogConstraint::Equal(a, b) => ("equal", vec![mono(a), mono(b)]),
        LogConstraint::AtLeast(a, b) => ("at_least", vec![mono(a), mono(b)]),
        LogConstraint::MaxTwice(ms) => ("max_twice", ms.iter().map(mono).collect()),
    };
    json!({"kind": kind, "monomials": sides, "text": c.to_string()})
}

fn stratum_json(j: &MConvexSet) -> Value {
    json!({"set": set_to_json(j), "constraints": log_constraints(j).iter().map(constraint_json).collect::<Vec<_>>()})
}

fn check_guard(n: usize, r: i64, guard: usize) -> Res<()> {
    let size = simplex_size(n, r);
    if size > guard {
        return Err(Error::Guard { size, guard }.into());
    }
    Ok(())
}

fn dispatch(cmd: &Command, ctx: &mut Ctx) -> Res<Vec<Value>> {
    let one = |v: Value| Ok(vec![v]);
    match cmd {
        Command::Check(input) => {
            let raw = json::raw_points_from_json(&ctx.read(input.input.as_ref())?)?;
            let (_, pts) = normalize_points(raw.n, raw.r, &raw.points)?;
            match exchange_witness(&pts) {
                None => one(json!({"m_convex": true})),
                Some(w) => one(json!({
                    "m_convex": false,
                    "witness": {"alpha": point_to_json(&w.alpha), "beta": point_to_json(&w.beta), "i": w.i},
                })),
            }
        }
        Command::Info(input) => {
            let j = ctx.set(input)?;
            let inv = j.invariants();
            let witness = idempotency_witness(&j)
                .map(|w| json!({"index": index_json(&w.index), "form": w.form.name()}))
                .unwrap_or(Value::Null);
            one(json!({
                "n": j.n(),
                "r": int_to_json(j.r()),
                "size": j.len(),
                "delta_minus": point_to_json(&inv.delta_minus),
                "delta_plus": point_to_json(&inv.delta_plus),
                "delta": point_to_json(&inv.delta),
                "width": point_to_json(&inv.width),
                "effective_rank": int_to_json(inv.effective_rank),
                "reduction": set_to_json(&inv.reduction),
                "matroid_translate": j.is_matroid_translate(),
                "proper": j.is_proper(),
                "components": j.component_count(),
                "idempotency_witness": witness,
            }))
        }
        Command::Dual(input) => one(set_to_json(&ctx.set(input)?.dual())),
        Command::Minor { input, nu, mu, tau } => {
            let j = ctx.set(input)?;
            let vec_or_zero =
                |v: &Option<String>| v.as_deref().map_or(Ok(vec![0; j.n()]), parse_ints);
            let m = j.embedded_minor(&vec_or_zero(nu)?, &vec_or_zero(mu)?, &vec_or_zero(tau)?)?;
            one(json!({"set": set_to_json(&m.set), "shift": point_to_json(&m.shift)}))
        }
        Command::Sum { inputs } => {
            let (a, b) = ctx.two_sets(inputs)?;
            one(set_to_json(&a.direct_sum(&b)))
        }
        Command::Decompose(input) => {
            let d = ctx.set(input)?.decompose();
            one(json!({
                "blocks": d.blocks,
                "components": d.components.iter().map(set_to_json).collect::<Vec<_>>(),
            }))
        }
        Command::Canon(input) => one(set_to_json(&ctx.set(input)?.canonical_form())),
        Command::Equiv { inputs } => {
            let (a, b) = ctx.two_sets(inputs)?;
            one(json!({"equivalent": a.combinatorially_equivalent(&b)}))
        }
        Command::Enumerate { shape, sample } => {
            let all = enumerate_mconvex(shape.n, shape.r, ctx.guard)?;
            let chosen: Vec<&MConvexSet> = match sample {
                None => all.iter().collect(),
                Some(k) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
                    let mut idx =
                        rand::seq::index::sample(&mut rng, all.len(), (*k).min(all.len()))
                            .into_vec();
                    idx.sort_unstable();
                    idx.into_iter().map(|i| &all[i]).collect()
                }
            };
            Ok(chosen.into_iter().map(set_to_json).collect())
        }
        Command::VerifyRep { input, mode, tract } => {
            let mode = Mode::parse(mode)?;
            let rho = json::representation_from_json(&ctx.read(input.input.as_ref())?)?;
            if let Some(t) = tract {
                let t = TractId::parse(t)?;
                if t != rho.tract() {
                    return Err(
                        Error::TractMismatch(t.name().into(), rho.tract().name().into()).into(),
                    );
                }
            }
            let mode_name = match mode {
                Mode::Strong => "strong",
                Mode::Weak => "weak",
            };
            one(match verify(&rho, mode)? {
                Verdict::Valid => json!({"valid": true, "mode": mode_name}),
                Verdict::Violated(v) => json!({
                    "valid": false,
                    "mode": mode_name,
                    "violations": v.iter().map(index_json).collect::<Vec<_>>(),
                }),
                Verdict::IdempotencyObstruction => {
                    json!({"valid": false, "mode": mode_name, "diagnostic": "idempotency_principle"})
                }
            })
        }
        Command::Foundation(input) => {
            let j = ctx.set(input)?;
            let p = pasture_presentation(&j);
            let f = foundation_unit_group(&j);
            let tutte = tutte_group(&j);
            let crs: Vec<Value> = cross_ratio_generators(&j)
                .into_iter()
                .map(|c| {
                    let t = &c.tuple;
                    json!({"alpha": point_to_json(&t.alpha), "i": t.i, "j": t.j, "k": t.k, "l": t.l, "exponents": c.exponents})
                })
                .collect();
            let mut out = group_json(&f);
            let obj = out.as_object_mut().expect("object");
            obj.insert("generators".into(), json!(p.labels()));
            obj.insert("relations".into(), json!(p.rows));
            obj.insert("tutte_rank".into(), json!(tutte.free_rank));
            obj.insert("cross_ratios".into(), Value::Array(crs));
            one(out)
        }
        Command::TutteRank(input) => {
            let g = tutte_group(&ctx.set(input)?);
            let mut out = json!({"tutte_rank": g.free_rank});
            out.as_object_mut()
                .expect("object")
                .insert("group".into(), group_json(&g));
            one(out)
        }
        Command::CrossRatios(input) => {
            let v = ctx.read(input.input.as_ref())?;
            let rho = if v.get("tract").is_some() {
                Some(json::representation_from_json(&v)?)
            } else {
                None
            };
            let j = match &rho {
                Some(r) => r.set().clone(),
                None => json::set_from_json(&v)?,
            };
            let mut symbols = Vec::new();
            for c in enumerate_cross_ratios(&j) {
                let t = &c.tuple;
                let mut s = json!({
                    "alpha": point_to_json(&t.alpha), "i": t.i, "j": t.j, "k": t.k, "l": t.l,
                    "degenerate": c.degenerate, "exponents": c.exponents,
                });
                if let Some(rho) = &rho {
                    let u = cross_ratio(rho, t)?;
                    s.as_object_mut()
                        .expect("object")
                        .insert("value".into(), json!(rho.tract().format_unit(&u)));
                }
                symbols.push(s);
            }
            let rep = verify_cross_ratio_relations(&j);
            let families: Vec<Value> = rep
                .families
                .iter()
                .map(|f| json!({"name": f.name, "checked": f.checked, "failed": f.failed}))
                .collect();
            one(json!({
                "symbols": symbols,
                "nondegenerate": rep.nondegenerate,
                "families": families,
                "lattice_complete": rep.lattice_complete,
                "all_hold": rep.all_hold(),
            }))
        }
        Command::BijectionCheck(input) => {
            let b = bijection_check(&ctx.set(input)?);
            one(
                json!({"holds": b.holds, "three_term_rows": b.three_term_rows, "full_rows": b.full_rows}),
            )
        }
        Command::HiveCount {
            lambda,
            mu,
            nu,
            r,
            list,
        } => {
            let t = PartitionTriple::new(&parse_ints(lambda)?, &parse_ints(mu)?, &parse_ints(nu)?)?;
            let r = r.unwrap_or((t.max_parts() as i64).max(1));
            let (count, hives) = enumerate_hives(&t, r, *list)?;
            let mut out = json!({"lr": count});
            if *list {
                let hs: Vec<Value> = hives.iter().map(json::hive_to_json).collect();
                out.as_object_mut()
                    .expect("object")
                    .insert("hives".into(), Value::Array(hs));
            }
            one(out)
        }
        Command::Polygr { shape } => {
            let all = enumerate_mconvex(shape.n, shape.r, ctx.guard)?;
            let strata: Vec<Value> = all
                .iter()
                .map(|j| json!({"set": set_to_json(j), "matroid_translate": j.is_matroid_translate()}))
                .collect();
            one(
                json!({"n": shape.n, "r": int_to_json(shape.r), "count": strata.len(), "strata": strata}),
            )
        }
        Command::Dressian { n, r, input } => {
            let strata: Vec<Value> = match (n, r, input) {
                (Some(n), Some(r), None) => {
                    check_guard(*n, *r, ctx.guard)?;
                    enumerate_mconvex(*n, *r, ctx.guard)?
                        .iter()
                        .map(stratum_json)
                        .collect()
                }
                (None, None, path) => {
                    let j = json::set_from_json(&ctx.read(path.as_ref())?)?;
                    vec![stratum_json(&j)]
                }
                _ => return Err(malformed("dressian takes either --n and --r, or --in")),
            };
            one(json!({"count": strata.len(), "strata": strata}))
        }
    }
}
