//! Command-line front end. Every command produces one JSON document.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{Algebra, VertexId};
use crate::band::{enumerate_bands, BandPool};
use crate::error::Error;
use crate::mgs::{
    build_brick_pools, complete_from_prefix, domestic_gentle_order, enumerate_mgs,
    is_complete_relative, lemma_property_suite, parse_sequence, simple_order_socle_first,
    LemmaBounds, PoolBounds, SearchLimits,
};
use crate::module::{
    band_module, band_top_socle, diagram, enumerate_bricks, hom_dim, is_brick, rational,
    string_module, top_socle,
};
use crate::oracle::{band_to_explicit, hom_space, string_to_explicit, ExplicitRep, RankMode};
use crate::walk::{enumerate_strings, Walk};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "mgslab",
    version,
    about = "String algebras, bricks and maximal green sequences"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct AlgebraArg {
    /// Algebra presentation file.
    #[arg(long)]
    pub algebra: PathBuf,
}

#[derive(Debug, clap::Args)]
pub struct PoolArgs {
    /// Length bound for string bricks.
    #[arg(long, default_value_t = 8)]
    pub max_string_len: usize,
    /// Length bound for band families; defaults to half the string bound.
    #[arg(long)]
    pub band_len: Option<usize>,
    /// Band parameters to sample.
    #[arg(long, value_delimiter = ',', default_values_t = [1i64, 2])]
    pub lambda: Vec<i64>,
}

impl PoolArgs {
    fn bounds(&self) -> PoolBounds {
        let mut b = PoolBounds::new(self.max_string_len);
        if let Some(bb) = self.band_len {
            b.band_bound = bb;
        }
        b.lambdas = self.lambda.clone();
        b
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the string and gentle axioms.
    Validate(AlgebraArg),
    /// List strings up to inversion.
    Strings {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// List band classes.
    Bands {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// String and band modules.
    Module {
        #[command(subcommand)]
        command: ModuleCommand,
    },
    /// Dimension of Hom between two string modules.
    Hom {
        #[command(flatten)]
        algebra: AlgebraArg,
        left: String,
        right: String,
    },
    /// List string bricks with their band-square annotations.
    Bricks {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Maximal green sequences.
    Mgs {
        #[command(subcommand)]
        command: MgsCommand,
    },
    /// Property checks over enumerated instances.
    Lemmas {
        #[command(subcommand)]
        command: LemmasCommand,
    },
    /// Explicit linear algebra.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum ModuleCommand {
    /// Representation, top, socle and diagram of a module.
    Show {
        #[command(flatten)]
        algebra: AlgebraArg,
        walk: String,
        /// Treat the walk as a band with this parameter.
        #[arg(long)]
        lambda: Option<i64>,
        /// Jordan block size of the band module.
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ExistsMethod {
    Simples,
    Gentle,
}

#[derive(Debug, Subcommand)]
pub enum MgsCommand {
    /// Enumerate sequences complete relative to the pools.
    Enumerate {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[command(flatten)]
        pools: PoolArgs,
        #[arg(long, default_value_t = SearchLimits::default().node_budget)]
        budget: u64,
        /// Longest sequence to consider.
        #[arg(long)]
        max_length: Option<usize>,
    },
    /// Verify a sequence file.
    Check {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long)]
        sequence: PathBuf,
        #[command(flatten)]
        pools: PoolArgs,
    },
    /// Complete an ordering of the simples.
    Exists {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long, value_enum)]
        method: ExistsMethod,
        #[command(flatten)]
        pools: PoolArgs,
        #[arg(long, default_value_t = SearchLimits::default().node_budget)]
        budget: u64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum RankModeArg {
    Sampled,
    Certified,
}

#[derive(Debug, Subcommand)]
pub enum LemmasCommand {
    /// Run the whole suite.
    Run {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        /// Member length bound of the unfiltered search.
        #[arg(long)]
        search_len: Option<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = [1i64, 2])]
        lambda: Vec<i64>,
        #[arg(long, value_enum, default_value_t = RankModeArg::Certified)]
        rank_mode: RankModeArg,
        /// Grid point cap for certified rank decisions.
        #[arg(long, default_value_t = 1 << 20)]
        cap: u128,
        #[arg(long, default_value_t = SearchLimits::default().node_budget)]
        budget: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Solve the intertwiner equations and print a basis.
    Hom {
        #[command(flatten)]
        algebra: AlgebraArg,
        left: String,
        right: String,
        /// Read the left walk as a band with this parameter.
        #[arg(long)]
        left_lambda: Option<i64>,
        /// Read the right walk as a band with this parameter.
        #[arg(long)]
        right_lambda: Option<i64>,
        /// Jordan block size for band operands.
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
}

#[derive(Debug, Serialize)]
pub struct CommandResult {
    pub command: Vec<String>,
    pub fingerprint: Option<String>,
    pub payload: Value,
    pub certificate: Option<Value>,
    pub error: Option<String>,
    pub exit_code: i32,
}

impl CommandResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }
}

/// Outcome of a command body before it is wrapped.
struct Outcome {
    payload: Value,
    certificate: Option<Value>,
    exit_code: i32,
}

impl Outcome {
    fn ok(payload: Value) -> Self {
        Self {
            payload,
            certificate: None,
            exit_code: EXIT_OK,
        }
    }
}

struct Failure {
    message: String,
    exit_code: i32,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit_code = match e {
            Error::Syntax { .. }
            | Error::UnknownArrow { .. }
            | Error::UnknownVertex { .. }
            | Error::DuplicateArrow { .. }
            | Error::DuplicateVertex { .. }
            | Error::NonComposable { .. }
            | Error::NonMonomial { .. }
            | Error::WalkLiteral { .. }
            | Error::NotComposable { .. } => EXIT_PARSE,
            _ => EXIT_NEGATIVE,
        };
        Failure {
            message: e.to_string(),
            exit_code,
        }
    }
}

type Run<T> = std::result::Result<T, Failure>;

fn load_algebra(path: &Path) -> Run<Algebra> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        message: format!("{}: {e}", path.display()),
        exit_code: EXIT_PARSE,
    })?;
    Ok(Algebra::parse(&text)?)
}

fn names(alg: &Algebra, vs: &[VertexId]) -> Vec<String> {
    vs.iter().map(|&v| alg.vertex_name(v).to_string()).collect()
}

fn shown(alg: &Algebra, ws: &[Walk]) -> Vec<String> {
    ws.iter().map(|w| w.display(alg)).collect()
}

fn pool_sizes(pools: &crate::mgs::BrickPools) -> Value {
    json!({
        "insertion": pools.len(),
        "members": pools.members().count(),
        "excluded": pools.excluded().count(),
        "band_families": pools.entries.iter().filter(|e| e.brick.is_band()).count(),
    })
}

fn explicit_json(rep: &ExplicitRep, alg: &Algebra) -> Value {
    let maps: serde_json::Map<String, Value> = alg
        .arrows()
        .map(|a| {
            (
                alg.arrow_name(a).to_string(),
                json!(rep.maps[a.0].to_strings()),
            )
        })
        .collect();
    json!({ "dims": rep.dims, "maps": maps })
}

fn band_pool_json(alg: &Algebra, pool: &BandPool) -> Value {
    json!({
        "bound": pool.bound,
        "looks_saturated": pool.looks_saturated(),
        "bands": pool.bands.iter().map(|b| json!({
            "walk": b.walk.display(alg),
            "minimal": b.is_minimal,
        })).collect::<Vec<_>>(),
    })
}

fn operand(alg: &Algebra, lit: &str, lambda: Option<i64>, k: usize) -> Run<ExplicitRep> {
    let w = Walk::parse(alg, lit)?;
    Ok(match lambda {
        None => string_to_explicit(alg, &string_module(alg, &w)?)?,
        Some(l) => band_to_explicit(alg, &band_module(alg, &w, rational(l), k)?)?,
    })
}

fn execute(command: &Command) -> Run<(Algebra, Outcome)> {
    match command {
        Command::Validate(a) => {
            let alg = load_algebra(&a.algebra)?;
            let r = alg.validate_axioms();
            let payload = json!({
                "is_string": r.is_string_algebra,
                "is_gentle": r.is_gentle,
                "violations": r.violations,
            });
            Ok((alg, Outcome::ok(payload)))
        }
        Command::Strings { algebra, max_len } => {
            let alg = load_algebra(&algebra.algebra)?;
            let strings = enumerate_strings(&alg, *max_len);
            let payload = json!({
                "max_len": max_len,
                "count": strings.len(),
                "strings": shown(&alg, &strings),
            });
            Ok((alg, Outcome::ok(payload)))
        }
        Command::Bands { algebra, max_len } => {
            let alg = load_algebra(&algebra.algebra)?;
            let pool = enumerate_bands(&alg, *max_len);
            let payload = band_pool_json(&alg, &pool);
            Ok((alg, Outcome::ok(payload)))
        }
        Command::Module {
            command:
                ModuleCommand::Show {
                    algebra,
                    walk,
                    lambda,
                    k,
                },
        } => {
            let alg = load_algebra(&algebra.algebra)?;
            let w = Walk::parse(&alg, walk)?;
            let payload = match lambda {
                None => {
                    let m = string_module(&alg, &w)?;
                    let (top, socle) = top_socle(&alg, &w);
                    json!({
                        "kind": "string",
                        "walk": w.display(&alg),
                        "dim_vector": m.dim_vector,
                        "basis": names(&alg, &m.basis),
                        "actions": m.actions.iter().map(|(a, from, to)| json!({
                            "arrow": alg.arrow_name(*a),
                            "from": from,
                            "to": to,
                        })).collect::<Vec<_>>(),
                        "top": names(&alg, &top),
                        "socle": names(&alg, &socle),
                        "is_brick": is_brick(&alg, &w),
                        "diagram": diagram(&alg, &w).0,
                    })
                }
                Some(l) => {
                    let m = band_module(&alg, &w, rational(*l), *k)?;
                    let rep = band_to_explicit(&alg, &m)?;
                    let (top, socle) = band_top_socle(&alg, &w);
                    json!({
                        "kind": "band",
                        "walk": w.display(&alg),
                        "lambda": m.lambda.to_string(),
                        "k": k,
                        "dim_vector": m.dim_vector,
                        "representation": explicit_json(&rep, &alg),
                        "top": names(&alg, &top),
                        "socle": names(&alg, &socle),
                    })
                }
            };
            Ok((alg, Outcome::ok(payload)))
        }
        Command::Hom {
            algebra,
            left,
            right,
        } => {
            let alg = load_algebra(&algebra.algebra)?;
            let l = Walk::parse(&alg, left)?;
            let r = Walk::parse(&alg, right)?;
            for w in [&l, &r] {
                if !w.is_string(&alg) {
                    return Err(Error::NotAString(w.display(&alg)).into());
                }
            }
            let payload = json!({
                "left": l.display(&alg),
                "right": r.display(&alg),
                "dim": hom_dim(&alg, &l, &r),
            });
            Ok((alg, Outcome::ok(payload)))
        }
        Command::Bricks { algebra, max_len } => {
            let alg = load_algebra(&algebra.algebra)?;
            let bricks = enumerate_bricks(&alg, *max_len);
            let payload = json!({
                "max_len": max_len,
                "count": bricks.len(),
                "bricks": bricks.iter().map(|b| json!({
                    "walk": b.walk.display(&alg),
                    "square_bands": shown(&alg, &b.square_bands),
                })).collect::<Vec<_>>(),
            });
            Ok((alg, Outcome::ok(payload)))
        }
        Command::Mgs { command } => mgs(command),
        Command::Lemmas {
            command:
                LemmasCommand::Run {
                    algebra,
                    max_len,
                    search_len,
                    lambda,
                    rank_mode,
                    cap,
                    budget,
                },
        } => {
            let alg = load_algebra(&algebra.algebra)?;
            let mut bounds = LemmaBounds::new(*max_len);
            bounds.search_len = search_len.unwrap_or(*max_len);
            bounds.lambdas = lambda.clone();
            bounds.rank_mode = match rank_mode {
                RankModeArg::Sampled => RankMode::Sampled,
                RankModeArg::Certified => RankMode::Certified { cap: *cap },
            };
            bounds.node_budget = *budget;
            let report = lemma_property_suite(&alg, &bounds)?;
            let exit_code = if report.search_budget_exhausted {
                EXIT_BUDGET
            } else {
                EXIT_OK
            };
            let payload = json!(report);
            Ok((
                alg,
                Outcome {
                    payload,
                    certificate: None,
                    exit_code,
                },
            ))
        }
        Command::Oracle {
            command:
                OracleCommand::Hom {
                    algebra,
                    left,
                    right,
                    left_lambda,
                    right_lambda,
                    k,
                },
        } => {
            let alg = load_algebra(&algebra.algebra)?;
            let a = operand(&alg, left, *left_lambda, *k)?;
            let b = operand(&alg, right, *right_lambda, *k)?;
            let space = hom_space(&alg, &a, &b)?;
            let basis: Vec<Value> = space
                .basis
                .iter()
                .map(|maps| {
                    let per_vertex: serde_json::Map<String, Value> = alg
                        .vertices()
                        .map(|v| {
                            (
                                alg.vertex_name(v).to_string(),
                                json!(maps[v.0].to_strings()),
                            )
                        })
                        .collect();
                    Value::Object(per_vertex)
                })
                .collect();
            let payload = json!({
                "left": explicit_json(&a, &alg),
                "right": explicit_json(&b, &alg),
                "dim": space.dim(),
                "basis": basis,
            });
            Ok((alg, Outcome::ok(payload)))
        }
    }
}

fn mgs(command: &MgsCommand) -> Run<(Algebra, Outcome)> {
    match command {
        MgsCommand::Enumerate {
            algebra,
            pools,
            budget,
            max_length,
        } => {
            let alg = load_algebra(&algebra.algebra)?;
            let bounds = pools.bounds();
            let p = build_brick_pools(&alg, &bounds)?;
            let limits = SearchLimits {
                node_budget: *budget,
                max_length: *max_length,
                stop_at_first: false,
            };
            let out = enumerate_mgs(&alg, &p, limits);
            let payload = json!({
                "count": out.sequences.len(),
                "sequences": out.sequences.iter().map(|s| shown(&alg, &s.entries)).collect::<Vec<_>>(),
                "nodes": out.nodes,
                "budget_exhausted": out.budget_exhausted,
                "missing_simple_sequences": out.missing_simple_sequences,
            });
            let verdict = if out.budget_exhausted {
                "partial"
            } else {
                "complete_relative"
            };
            let certificate =
                json!({ "bounds": bounds, "pools": pool_sizes(&p), "verdict": verdict });
            let exit_code = if out.budget_exhausted {
                EXIT_BUDGET
            } else {
                EXIT_OK
            };
            Ok((
                alg,
                Outcome {
                    payload,
                    certificate: Some(certificate),
                    exit_code,
                },
            ))
        }
        MgsCommand::Check {
            algebra,
            sequence,
            pools,
        } => {
            let alg = load_algebra(&algebra.algebra)?;
            let text = std::fs::read_to_string(sequence).map_err(|e| Failure {
                message: format!("{}: {e}", sequence.display()),
                exit_code: EXIT_PARSE,
            })?;
            let seq = parse_sequence(&alg, &text)?;
            let bounds = pools.bounds();
            let p = build_brick_pools(&alg, &bounds)?;
            let entries = shown(&alg, &seq);
            let (payload, verdict, exit_code) = match is_complete_relative(&alg, &seq, &p) {
                Ok(report) => {
                    let code = if report.is_complete() {
                        EXIT_OK
                    } else {
                        EXIT_NEGATIVE
                    };
                    let verdict = json!(report.verdict);
                    let payload = json!({
                        "entries": entries,
                        "weakly_fho": true,
                        "report": report,
                    });
                    (payload, verdict, code)
                }
                Err(Error::NotWeaklyFho { left, right }) => {
                    let payload = json!({
                        "entries": entries,
                        "weakly_fho": false,
                        "violation": { "left": left, "right": right },
                    });
                    (
                        payload,
                        json!({ "verdict": "not_weakly_fho" }),
                        EXIT_NEGATIVE,
                    )
                }
                Err(e) => return Err(e.into()),
            };
            let certificate =
                json!({ "bounds": bounds, "pools": pool_sizes(&p), "verdict": verdict });
            Ok((
                alg,
                Outcome {
                    payload,
                    certificate: Some(certificate),
                    exit_code,
                },
            ))
        }
        MgsCommand::Exists {
            algebra,
            method,
            pools,
            budget,
        } => {
            let alg = load_algebra(&algebra.algebra)?;
            let bounds = pools.bounds();
            let band_pool = enumerate_bands(&alg, bounds.band_bound);
            let (order, hypothesis) = match method {
                ExistsMethod::Simples => {
                    let o = simple_order_socle_first(&alg, &band_pool);
                    let h = json!(o);
                    (o.order, h)
                }
                ExistsMethod::Gentle => (domestic_gentle_order(&alg, &band_pool)?, Value::Null),
            };
            let p = build_brick_pools(&alg, &bounds)?;
            let limits = SearchLimits {
                node_budget: *budget,
                ..SearchLimits::default()
            };
            let done = complete_from_prefix(&alg, &p, &order, limits)?;
            let payload = json!({
                "method": match method { ExistsMethod::Simples => "simples", ExistsMethod::Gentle => "gentle" },
                "hypothesis": hypothesis,
                "order": names(&alg, &order),
                "band_pool": band_pool_json(&alg, &band_pool),
                "sequence": done.sequence.as_ref().map(|s| shown(&alg, &s.entries)),
                "nodes": done.nodes,
                "budget_exhausted": done.budget_exhausted,
            });
            let verdict = match (&done.sequence, done.budget_exhausted) {
                (Some(_), _) => "complete_relative",
                (None, true) => "partial",
                (None, false) => "none_within_bounds",
            };
            let exit_code = if done.sequence.is_none() && done.budget_exhausted {
                EXIT_BUDGET
            } else {
                EXIT_OK
            };
            let certificate =
                json!({ "bounds": bounds, "pools": pool_sizes(&p), "verdict": verdict });
            Ok((
                alg,
                Outcome {
                    payload,
                    certificate: Some(certificate),
                    exit_code,
                },
            ))
        }
    }
}

/// Applies `MGSLAB_THREADS` to the global thread pool, once.
fn configure_threads() {
    if let Some(n) = std::env::var("MGSLAB_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

/// Parses `argv` (program name first) and runs the command. Help and
/// version requests return `None` after printing.
pub fn run<I, T>(argv: I) -> Option<CommandResult>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let echo: Vec<String> = argv
        .iter()
        .skip(1)
        .map(|s| s.to_string_lossy().into_owned())
        .collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return Some(CommandResult {
                command: echo,
                fingerprint: None,
                payload: Value::Null,
                certificate: None,
                error: Some(e.kind().to_string()),
                exit_code: EXIT_USAGE,
            });
        }
        Err(e) => {
            let _ = e.print();
            return None;
        }
    };
    configure_threads();
    Some(match execute(&cli.command) {
        Ok((alg, out)) => CommandResult {
            command: echo,
            fingerprint: Some(alg.fingerprint()),
            payload: out.payload,
            certificate: out.certificate,
            error: None,
            exit_code: out.exit_code,
        },
        Err(f) => CommandResult {
            command: echo,
            fingerprint: None,
            payload: Value::Null,
            certificate: None,
            error: Some(f.message),
            exit_code: f.exit_code,
        },
    })
}
