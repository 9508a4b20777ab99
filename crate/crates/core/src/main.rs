use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hyperturan::certstore::{self, Certificate, Environment};
use hyperturan::constructions::{self, Tag};
use hyperturan::patterns::{self, PatternTag};
use hyperturan::ramsey::{self, ArrowClaim, Arrowing};
use hyperturan::turan::{self, SearchSpec, BUDGET_ENV};
use hyperturan::{audit, Hypergraph3, Registry, Result};

#[derive(Parser)]
#[command(name = "hyperturan", version, about = "Turán and Ramsey numbers for short loose paths in 3-graphs")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Registry JSON to use instead of the built-in paper values.
    #[arg(long, global = true)]
    registry: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Prove,
    Exhaustive,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact higher-order or conditional Turán number by search.
    Turan {
        #[arg(long, default_value_t = 1)]
        order: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', default_value = "P")]
        forbid: Vec<PatternTag>,
        #[arg(long)]
        require: Option<PatternTag>,
        #[arg(long)]
        connected: bool,
        /// Seconds; defaults to the environment budget.
        #[arg(long, env = BUDGET_ENV)]
        budget: Option<u64>,
        /// Accept n above the default search limit.
        #[arg(long)]
        force: bool,
    },
    /// Decide `host -> (P; colors)`.
    Arrows {
        /// K14, K14-e, K12-2e or K12-2e-2.
        #[arg(long)]
        host: String,
        #[arg(long)]
        colors: usize,
        #[arg(long, value_enum, default_value = "prove")]
        mode: Mode,
        #[arg(long, env = BUDGET_ENV)]
        budget: Option<u64>,
    },
    /// `R(P; r) = r + 6`: prover upper bound, star-peeling lower bound.
    Ramsey {
        #[arg(long)]
        r: usize,
    },
    /// Exit 0 with a witness if the pattern occurs, 1 if not.
    Contains {
        #[arg(long)]
        pattern: PatternTag,
        #[arg(long)]
        input: PathBuf,
    },
    /// List the named constructions.
    Catalog,
    /// Write a named construction in the text format.
    Emit {
        #[arg(long)]
        tag: Tag,
        #[arg(long)]
        n: usize,
    },
    /// Check the decomposition inequalities on random {P,C}-free graphs.
    Audit {
        #[arg(long, value_delimiter = ',', default_value = "9,10,11,12,13,14,15")]
        n: Vec<usize>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Confirm the K6 u K6 overlap bound on the 6+6 bipartite host.
    Bipartite,
    /// Re-check stored certificates.
    VerifyCert { files: Vec<PathBuf> },
    /// Summary table of certificates, or of the registry.
    Report {
        files: Vec<PathBuf>,
        /// Tabulate the registry instead.
        #[arg(long)]
        all_registry: bool,
    },
}

fn parse_host(s: &str) -> Result<(Tag, usize)> {
    let bad = || hyperturan::Error::UnknownName(s.to_string());
    let rest = s.strip_prefix('K').ok_or_else(bad)?;
    let digits: String = rest.chars().take_while(char::is_ascii_digit).collect();
    let n: usize = digits.parse().map_err(|_| bad())?;
    let tag = match &rest[digits.len()..] {
        "" => Tag::Complete,
        suffix => format!("K{suffix}").parse::<Tag>()?,
    };
    if !matches!(tag, Tag::Complete | Tag::CompleteMinusEdge | Tag::CompleteMinusTwo(_)) {
        return Err(bad());
    }
    Ok((tag, n))
}

fn emit(common: &Common, text: &str) -> Result<()> {
    match &common.out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn registry(common: &Common) -> Result<Registry> {
    match &common.registry {
        Some(p) => Registry::from_json(&std::fs::read_to_string(p)?),
        None => Ok(Registry::paper()),
    }
}

fn budget(b: Option<u64>) -> u64 {
    b.unwrap_or(turan::DEFAULT_BUDGET_SECS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let c = &cli.common;
    if c.jobs > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(c.jobs).build_global();
    }
    match cli.cmd {
        Cmd::Turan {
            order,
            n,
            forbid,
            require,
            connected,
            budget: b,
            force,
        } => {
            let secs = budget(b);
            let mut base = SearchSpec::new(n, &forbid);
            base.budget = Duration::from_secs(secs);
            base.jobs = c.jobs;
            base.seed = c.seed;
            if force {
                base.search_limit = hyperturan::graph::MAX_VERTICES;
            }
            let env = Environment::new(c.seed, secs);
            let cert = match require {
                Some(g) => {
                    let r = turan::conditional(n, &forbid, g, connected, &base)?;
                    Certificate::turan(&r, &[], env)
                }
                None if connected => {
                    return Err(hyperturan::Error::InvalidSpec(
                        "--connected needs --require".into(),
                    ))
                }
                None => {
                    let chain = turan::higher_order_chain(n, &forbid, order, &base)?;
                    Certificate::turan_chain(&chain, &env).pop().unwrap()
                }
            };
            eprintln!(
                "{} = {} ({})",
                cert.claim["fact"].as_str().unwrap_or("?"),
                cert.verdict["value"],
                cert.status
            );
            emit(c, &cert.to_json())?;
        }
        Cmd::Arrows {
            host,
            colors,
            mode,
            budget: b,
        } => {
            let (tag, n) = parse_host(&host)?;
            let claim = ArrowClaim::from_tag(tag, n, colors)?;
            let env = Environment::new(c.seed, budget(b));
            let reg = registry(c)?;
            let outcome = match mode {
                Mode::Prove => ramsey::arrows(&claim, &reg, Duration::from_secs(budget(b))),
                Mode::Exhaustive => {
                    let out = ramsey::arrows_exhaustive(
                        &claim.host(),
                        colors,
                        Duration::from_secs(budget(b)),
                    );
                    match (out.arrows, out.witness) {
                        (Some(true), _) => Arrowing::Exhaustive { nodes: out.nodes },
                        (Some(false), Some(w)) => Arrowing::Fails(w),
                        _ => Arrowing::Unknown(format!("budget exhausted after {} nodes", out.nodes)),
                    }
                }
            };
            let cert = match &outcome {
                Arrowing::Certified(a) => Certificate::arrowing(a, env),
                Arrowing::Exhaustive { nodes } => {
                    Certificate::exhaustive(&claim.label, &claim.host(), colors, *nodes, env)
                }
                Arrowing::Fails(w) => Certificate::coloring(&claim.label, w, env),
                Arrowing::Unknown(why) => {
                    eprintln!("{claim}: unknown ({why})");
                    return Ok(ExitCode::from(2));
                }
            };
            eprintln!("{claim}: {}", outcome.arrows().unwrap());
            emit(c, &cert.to_json())?;
        }
        Cmd::Ramsey { r } => {
            let reg = registry(c)?;
            let res = ramsey::ramsey(r, &reg)?;
            eprintln!(
                "R(P;{r}) = {} ({})",
                res.value.map_or("?".to_string(), |v| v.to_string()),
                res.status
            );
            if let Some(g) = &res.gap {
                eprintln!("gap: {g}");
            }
            emit(c, &Certificate::ramsey(&res, Environment::new(c.seed, 0)).to_json())?;
        }
        Cmd::Contains { pattern, input } => {
            let g = Hypergraph3::parse_text(&std::fs::read_to_string(&input)?)?;
            return Ok(match patterns::find(&g, &pattern.pattern()) {
                Some(w) => {
                    for e in w {
                        let [a, b, d] = e.vertices();
                        println!("{a} {b} {d}");
                    }
                    ExitCode::SUCCESS
                }
                None => ExitCode::from(1),
            });
        }
        Cmd::Catalog => {
            let mut s = format!("{:<12} {:>5} {:>5}  size\n", "tag", "min_n", "max_n");
            for e in constructions::catalog() {
                s += &format!("{:<12} {:>5} {:>5}  {}\n", e.tag.to_string(), e.min_n, e.max_n, e.size_formula);
            }
            emit(c, &s)?;
        }
        Cmd::Emit { tag, n } => {
            emit(c, &constructions::build(tag, n)?.to_text())?;
        }
        Cmd::Audit { n, samples } => {
            let rep = audit::audit(&n, samples, c.seed);
            for (k, t) in &rep.checks {
                eprintln!("{k:<18} {}/{}", t.passed, t.applied);
            }
            let ok = rep.passes();
            emit(c, &Certificate::audit(&rep, Environment::new(c.seed, 0)).to_json())?;
            if !ok {
                eprintln!("{} violations", rep.violations.len());
                return Ok(ExitCode::from(1));
            }
        }
        Cmd::Bipartite => {
            let rep = ramsey::bipartite_check();
            eprintln!(
                "max overlap {} over {} splits; disjoint triple: {}",
                rep.max_overlap, rep.splits, rep.disjoint_triple
            );
            emit(c, &Certificate::bipartite(&rep, Environment::new(c.seed, 0)).to_json())?;
        }
        Cmd::VerifyCert { files } => {
            let reg = registry(c)?;
            let mut ok = true;
            for f in files {
                let check = certstore::verify_path(&f, &reg)?;
                if check.ok() {
                    println!("{}: ok", f.display());
                } else {
                    ok = false;
                    println!("{}: FAILED", f.display());
                    for m in check.failures {
                        println!("  {m}");
                    }
                }
            }
            return Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Cmd::Report {
            files,
            all_registry,
        } => {
            let mut certs = Vec::new();
            if all_registry {
                let reg = registry(c)?;
                let env = Environment::new(c.seed, 0);
                certs.extend(reg.entries().map(|e| Certificate::registry_entry(e, &reg, env.clone())));
            }
            for f in files {
                certs.push(certstore::load(&f)?);
            }
            emit(c, &certstore::report(&certs))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
