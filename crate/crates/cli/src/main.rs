use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use quotcoh::algebra::parse;
use quotcoh::combinatorics::{TConvention, WeightVector};
use quotcoh::poincare::{filt_poincare, infinite_limits_check, quot_poincare, sym_prod_poincare};
use quotcoh::quot::{psi_pullback, psi_pullback_combinatorial, InvariantMode};
use quotcoh::restriction::{restrict, t_degree};
use quotcoh::verify::{self, Report, Suite};
use quotcoh::{Rank, RingContext, XiEngine};

#[derive(Parser)]
#[command(name = "quotcoh", version, about = "Cohomology of filt and quot schemes of points on a curve")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Genus of the curve; `verify` accepts a comma-separated list.
    #[arg(long, global = true, value_delimiter = ',')]
    genus: Vec<u32>,
    /// Number of tensor factors, when it cannot be read off the input.
    #[arg(long, global = true)]
    factors: Option<usize>,
    /// Rank of the ambient bundle: an integer or `inf`.
    #[arg(long, global = true)]
    rank: Option<Rank>,
    /// Line-bundle degrees d_0, d_1, ...
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    degrees: Vec<i64>,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true)]
    max_co: Option<u32>,
    #[arg(long, global = true)]
    max_degree: Option<u32>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    #[value(alias = "table")]
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Recursion,
    Combinatorial,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// The class ξ(v) in the free model.
    Xi {
        #[arg(long)]
        v: WeightVector,
        /// Compute the equivariant lift.
        #[arg(long)]
        equivariant: bool,
    },
    /// Pullback of ξ^Q(u; a) to the complete filt scheme.
    Psi {
        #[arg(long)]
        u: WeightVector,
        /// Curve class in the element grammar; defaults to 1.
        #[arg(long)]
        a: Option<String>,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        /// Reject classes that are not St(u)-invariant instead of averaging.
        #[arg(long)]
        strict: bool,
    },
    /// Restriction of the equivariant ξ(v) to the fixed point w.
    Restrict {
        #[arg(long)]
        v: WeightVector,
        #[arg(long)]
        w: WeightVector,
    },
    /// Poincaré polynomials.
    Poincare {
        #[command(subcommand)]
        kind: PoincareKind,
    },
    /// Run a named verification suite, or `all`.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        n: Option<usize>,
        /// Size of the seeded random sample in the recursion suite.
        #[arg(long)]
        random_cases: Option<usize>,
    },
    /// Print an element in canonical form.
    Parse { element: String },
}

#[derive(Subcommand)]
enum PoincareKind {
    /// P(Quot(r, l)).
    Quot {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        length: u32,
        #[arg(long)]
        max_t: Option<usize>,
    },
    /// P(Filt(r, n)).
    Filt {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: usize,
    },
    /// P(C^(m)).
    Sym {
        #[arg(long)]
        m: u32,
    },
    /// Stabilized series of P(Quot(r, r)) as r grows.
    Limit {
        #[arg(long, default_value_t = 10)]
        max_t: usize,
    },
}

/// Input or precondition problems, reported with exit code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage<T>(r: quotcoh::Result<T>) -> Result<T> {
    r.map_err(|e| Usage(e.to_string()).into())
}

struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Global {
    fn single_genus(&self) -> Result<u32> {
        match self.genus.as_slice() {
            [] => Ok(0),
            [g] => Ok(*g),
            _ => Err(Usage("expected a single genus".into()).into()),
        }
    }

    fn factors_or(&self, inferred: usize) -> Result<usize> {
        match self.factors {
            Some(n) if n != inferred => Err(Usage(format!("--factors {n} but the input has {inferred} entries")).into()),
            _ => Ok(inferred),
        }
    }

    fn context(&self, factors: usize) -> Result<Arc<RingContext>> {
        let rank = self.rank.unwrap_or(Rank::Unbounded);
        usage(RingContext::with(self.single_genus()?, factors, rank, self.degrees.clone()))
    }
}

fn poly_text(p: &[i64]) -> String {
    p.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
}

fn run(cli: Cli) -> Result<Output> {
    let g = &cli.global;
    match cli.command {
        Command::Xi { v, equivariant } => {
            let ctx = g.context(g.factors_or(v.len())?)?;
            let engine = XiEngine::new(&ctx);
            let x = usage(if equivariant { engine.xi_equivariant(&v) } else { engine.xi(&v) })?;
            Ok(Output {
                text: x.to_string(),
                json: json!({"v": v, "equivariant": equivariant, "value": x.to_string()}),
                ok: true,
            })
        }
        Command::Psi { u, a, method, strict } => {
            let ctx = g.context(g.factors_or(u.len())?)?;
            let class = usage(parse(&ctx, a.as_deref().unwrap_or("1")))?;
            let mode = if strict { InvariantMode::Strict } else { InvariantMode::Lenient };
            let engine = XiEngine::new(&ctx);
            let recursion = match method {
                Method::Combinatorial => None,
                _ => Some(usage(psi_pullback(&engine, &u, &class, mode))?),
            };
            let combinatorial = match method {
                Method::Recursion => None,
                _ => Some(usage(psi_pullback_combinatorial(
                    &ctx,
                    &u,
                    &class,
                    mode,
                    TConvention::default(),
                ))?),
            };
            let averaged = recursion.iter().chain(&combinatorial).any(|p| p.averaged);
            let agree = match (&recursion, &combinatorial) {
                (Some(x), Some(y)) => x.value == y.value,
                _ => true,
            };
            let mut text = String::new();
            if averaged {
                text.push_str("note: class replaced by its St(u)-average\n");
            }
            match (&recursion, &combinatorial) {
                (Some(x), None) | (None, Some(x)) => text.push_str(&x.value.to_string()),
                (Some(x), Some(y)) if agree => text.push_str(&format!("{}\nmethods agree", x.value)),
                (Some(x), Some(y)) => {
                    text.push_str(&format!("recursion:     {}\ncombinatorial: {}\nmethods disagree", x.value, y.value))
                }
                (None, None) => unreachable!(),
            }
            Ok(Output {
                text,
                json: json!({
                    "u": u,
                    "a": class.to_string(),
                    "averaged": averaged,
                    "recursion": recursion.map(|p| p.value.to_string()),
                    "combinatorial": combinatorial.map(|p| p.value.to_string()),
                    "agree": agree,
                }),
                ok: agree,
            })
        }
        Command::Restrict { v, w } => {
            let n = g.factors_or(v.len())?;
            if w.len() != n {
                bail!(Usage("v and w have different lengths".into()));
            }
            if g.rank.is_none() {
                bail!(Usage("restrict needs a finite --rank".into()));
            }
            let ctx = g.context(n)?;
            let engine = XiEngine::new(&ctx);
            let x = usage(engine.xi_equivariant(&v))?;
            let value = usage(restrict(&x, &w))?;
            let degree = t_degree(&value);
            Ok(Output {
                text: value.to_string(),
                json: json!({"v": v, "w": w, "value": value.to_string(), "t_degree": degree}),
                ok: true,
            })
        }
        Command::Poincare { kind } => {
            let genus = g.single_genus()?;
            let (label, coefficients, extra) = match kind {
                PoincareKind::Quot { r, length, max_t } => {
                    let mut p = quot_poincare(genus, r, length);
                    if let Some(cap) = max_t {
                        p.truncate(cap + 1);
                    }
                    (format!("P(Quot({r},{length}))"), p, json!({"r": r, "length": length}))
                }
                PoincareKind::Filt { r, n } => {
                    (format!("P(Filt({r},{n}))"), filt_poincare(genus, r, n), json!({"r": r, "n": n}))
                }
                PoincareKind::Sym { m } => (format!("P(C^({m}))"), sym_prod_poincare(genus, m), json!({"m": m})),
                PoincareKind::Limit { max_t } => {
                    let report = infinite_limits_check(genus, max_t);
                    if !report.ok() {
                        let json = serde_json::to_value(&report)?;
                        return Ok(Output {
                            text: format!("limit check failed: {json}"),
                            json,
                            ok: false,
                        });
                    }
                    ("P(Quot(inf,inf))".to_owned(), report.stabilized, json!({"max_t": max_t}))
                }
            };
            let mut json = json!({"genus": genus, "coefficients": coefficients});
            for (k, v) in extra.as_object().unwrap() {
                json[k] = v.clone();
            }
            let rows: Vec<String> =
                coefficients.iter().enumerate().map(|(k, c)| format!("t^{k:<3} {c}")).collect();
            Ok(Output {
                text: format!("{label}, genus {genus}: {}\n{}", poly_text(&coefficients), rows.join("\n")),
                json,
                ok: true,
            })
        }
        Command::Verify { suite, n, random_cases } => {
            let mut config = verify::Config {
                n,
                genera: (!g.genus.is_empty()).then(|| g.genus.clone()),
                rank: match g.rank {
                    None | Some(Rank::Unbounded) => None,
                    Some(Rank::Finite(r)) => Some(r),
                },
                max_co: g.max_co,
                max_degree: g.max_degree,
                seed: g.seed,
                ..verify::Config::default()
            };
            if let Some(k) = random_cases {
                config.random_cases = k;
            }
            let reports: Vec<Report> = if suite == "all" {
                usage(verify::run_all(&config))?
            } else {
                let s: Suite = usage(suite.parse())?;
                vec![usage(verify::run(s, &config))?]
            };
            let ok = reports.iter().all(Report::pass);
            let text = reports.iter().map(Report::render_text).collect::<String>();
            let json = if reports.len() == 1 {
                serde_json::to_value(&reports[0])?
            } else {
                serde_json::to_value(&reports)?
            };
            Ok(Output {
                text: text.trim_end().to_owned(),
                json,
                ok,
            })
        }
        Command::Parse { element } => {
            let n = g.factors.context("parse needs --factors")?;
            let ctx = g.context(n)?;
            let x = usage(parse(&ctx, &element))?;
            Ok(Output {
                text: x.to_string(),
                json: json!({"value": x.to_string()}),
                ok: true,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.global.format;
    match run(cli) {
        Ok(out) => {
            match format {
                Format::Text => println!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
