//! `kcirl`: enumerate k-CIRL algebras, build canonical formulas, search
//! embeddings and run the verification harnesses.
//!
//! Exit codes: 0 holds or verified, 1 refuted or violated, 2 usage error,
//! 3 precondition error.

use std::collections::BTreeSet;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kcirl::algebra::Lattice;
use kcirl::canonical::{all_d_embeddings, build_canonical, find_d_embedding, refutation_certificate, CanonicalFormula, DSpec};
use kcirl::enumeration::{enumerate_kcirl, Filter};
use kcirl::formula::{find_counterexample, parse};
use kcirl::verify::{parse_suite, verify, Theorem, VerifyConfig};
use kcirl::{Error, FiniteRl};

#[derive(Parser)]
#[command(name = "kcirl", version, about = "Finite k-potent commutative integral residuated lattices")]
struct Cli {
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Print a single JSON document on standard output.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FilterArg {
    All,
    Si,
    Linear,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Stable,
    Splitting,
    Custom,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate algebras up to isomorphism.
    Enumerate {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_size: u64,
        #[arg(long, value_enum, default_value = "all")]
        filter: FilterArg,
        /// Restrict to one lattice reduct, given as `{"size":n,"join":[[..]]}`.
        #[arg(long)]
        lattice: Option<PathBuf>,
        /// Catalog output (JSON lines).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check an algebra's tables against every law.
    Validate {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Decide whether a formula holds in an algebra.
    Check {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        formula: String,
    },
    /// Build the canonical formula of an SI algebra.
    Canon {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, value_enum, default_value = "stable")]
        mode: ModeArg,
        /// Pairs like `0-1,2-1`.
        #[arg(long, default_value = "")]
        dwedge: String,
        #[arg(long, default_value = "")]
        dto: String,
    },
    /// Search for D-embeddings of one algebra into another.
    Embed {
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        into: PathBuf,
        #[arg(long, default_value = "")]
        dwedge: String,
        #[arg(long, default_value = "")]
        dto: String,
        /// List every embedding instead of the least one.
        #[arg(long)]
        all: bool,
    },
    /// Refute a canonical formula in an algebra with a certificate.
    Certify {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        canon: PathBuf,
    },
    /// Run a theorem harness over the catalog.
    Verify {
        #[arg(long)]
        theorem: Theorem,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_size: u64,
        /// Bound on the algebras formulas are built from.
        #[arg(long)]
        small_size: Option<usize>,
        /// Chain length for lemma5.3.
        #[arg(long, default_value_t = 3)]
        h: usize,
        /// One formula per line, `#` comments.
        #[arg(long)]
        formulas: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Usage(String),
    Precondition(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. } | Error::Io(_) | Error::Json(_) => Failure::Usage(e.to_string()),
            _ => Failure::Precondition(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

struct Out {
    json: bool,
}

impl Out {
    /// Prints `doc` as JSON, or `text` otherwise.
    fn emit(&self, doc: Value, text: impl FnOnce() -> String) {
        if self.json {
            println!("{doc}");
        } else {
            println!("{}", text());
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<FiniteRl, Failure> {
    Ok(FiniteRl::from_json(&read(path)?)?)
}

fn load_lattice(path: &Path) -> Result<Lattice, Failure> {
    let v: Value = serde_json::from_str(&read(path)?).map_err(|e| Failure::Usage(e.to_string()))?;
    let bad = || Failure::Usage(format!("{}: expected {{\"size\":n,\"join\":[[..]]}}", path.display()));
    let n = v["size"].as_u64().ok_or_else(bad)? as usize;
    let rows = v["join"].as_array().ok_or_else(bad)?;
    let mut join = Vec::with_capacity(n * n);
    for r in rows {
        for x in r.as_array().ok_or_else(bad)? {
            join.push(x.as_u64().ok_or_else(bad)? as usize);
        }
    }
    if join.len() != n * n {
        return Err(bad());
    }
    Ok(Lattice::from_join(n, join)?)
}

fn parse_pairs(s: &str) -> Result<BTreeSet<(usize, usize)>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            let (a, b) = p.split_once('-').ok_or_else(|| Failure::Usage(format!("bad pair `{p}`")))?;
            let num = |x: &str| x.trim().parse::<usize>().map_err(|_| Failure::Usage(format!("bad pair `{p}`")));
            Ok((num(a)?, num(b)?))
        })
        .collect()
}

fn dspec(dwedge: &str, dto: &str) -> Result<DSpec, Failure> {
    Ok(DSpec { dwedge: parse_pairs(dwedge)?, dto: parse_pairs(dto)? })
}

fn summary_counts(counts: &[usize]) -> String {
    counts.iter().enumerate().map(|(i, c)| format!("  size {}: {c}", i + 1)).collect::<Vec<_>>().join("\n")
}

fn run(cmd: Command, out: &Out) -> Outcome {
    match cmd {
        Command::Enumerate { k, max_size, filter, lattice, out: path } => {
            let n = max_size as usize;
            if n > 8 {
                eprintln!("warning: sizes beyond 8 may take a very long time");
            }
            let filter = match (lattice, filter) {
                (Some(p), _) => Filter::LatticeReduct(load_lattice(&p)?),
                (None, FilterArg::All) => Filter::All,
                (None, FilterArg::Si) => Filter::Si,
                (None, FilterArg::Linear) => Filter::Linear,
            };
            let cat = enumerate_kcirl(k, n, &filter);
            if let Some(p) = &path {
                let f = fs::File::create(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
                let mut w = BufWriter::new(f);
                cat.write_jsonl(&mut w)?;
                w.flush().map_err(|e| Failure::Usage(e.to_string()))?;
            }
            let counts = cat.counts_by_size();
            out.emit(
                json!({"k": k, "max_size": n, "filter": cat.filter, "count": cat.len(), "counts": counts, "hash": cat.content_hash()}),
                || format!("{} algebras (k={k}, max size {n}, filter {})\n{}", cat.len(), cat.filter, summary_counts(&counts)),
            );
            Ok(true)
        }
        Command::Validate { algebra } => match FiniteRl::from_json(&read(&algebra)?) {
            Ok(a) => {
                let si = !a.is_trivial() && a.is_si();
                out.emit(
                    json!({"valid": true, "size": a.size(), "k": a.k(), "si": si, "linear": a.is_linear(), "well_connected": a.is_well_connected()}),
                    || format!("valid: size {}, k={}, si={si}, linear={}", a.size(), a.k(), a.is_linear()),
                );
                Ok(true)
            }
            Err(e @ (Error::LawViolation { .. } | Error::MalformedTables(_))) => {
                out.emit(json!({"valid": false, "error": e.to_string()}), || format!("invalid: {e}"));
                Ok(false)
            }
            Err(e) => Err(e.into()),
        },
        Command::Check { algebra, formula } => {
            let a = load_algebra(&algebra)?;
            let phi = parse(&formula)?;
            let cex = find_counterexample(&a, &phi);
            match &cex {
                None => out.emit(json!({"holds": true}), || "holds".to_owned()),
                Some(v) => out.emit(json!({"holds": false, "witness": v.0}), || format!("fails\n{v}")),
            }
            Ok(cex.is_none())
        }
        Command::Canon { algebra, mode, dwedge, dto } => {
            let a = load_algebra(&algebra)?;
            let d = match mode {
                ModeArg::Stable => DSpec::stable(),
                ModeArg::Splitting => DSpec::splitting(a.size()),
                ModeArg::Custom => dspec(&dwedge, &dto)?,
            };
            let c = build_canonical(&a, &d)?;
            println!("{}", c.to_json());
            Ok(true)
        }
        Command::Embed { from, into, dwedge, dto, all } => {
            let a = load_algebra(&from)?;
            let b = load_algebra(&into)?;
            let d = dspec(&dwedge, &dto)?;
            if all {
                let es = all_d_embeddings(&a, &b, &d)?;
                out.emit(json!({"embeddings": es}), || {
                    es.iter().map(|e| format!("{e:?}")).collect::<Vec<_>>().join("\n")
                });
                Ok(!es.is_empty())
            } else {
                let e = find_d_embedding(&a, &b, &d)?;
                out.emit(json!({"embedding": e}), || match &e {
                    Some(h) => format!("{h:?}"),
                    None => "none".to_owned(),
                });
                Ok(e.is_some())
            }
        }
        Command::Certify { algebra, canon } => {
            let b = load_algebra(&algebra)?;
            let g = CanonicalFormula::from_json(&read(&canon)?)?;
            match refutation_certificate(&b, &g)? {
                Some(cert) => {
                    println!("{}", cert.to_json());
                    Ok(false)
                }
                None => {
                    out.emit(json!({"models": true}), || "models".to_owned());
                    Ok(true)
                }
            }
        }
        Command::Verify { theorem, k, max_size, small_size, h, formulas, seed } => {
            let mut cfg = VerifyConfig::new(k, max_size as usize);
            if let Some(s) = small_size {
                cfg.small_size = s;
            }
            cfg.h = h;
            cfg.seed = seed;
            if let Some(p) = formulas {
                cfg.formulas = parse_suite(&read(&p)?)?;
            }
            let r = verify(theorem, &cfg);
            out.emit(serde_json::to_value(&r).expect("plain data serializes"), || {
                let status = if r.passed() { "verified" } else { "violated" };
                let mut s = format!("{}: {status} (k={}, bound {}, {} checks)", r.claim, r.k, r.bound, r.checked);
                for w in &r.witnesses {
                    s.push_str(&format!("\n  {w}"));
                }
                if !r.notes.is_null() {
                    s.push_str(&format!("\n  notes: {}", r.notes));
                }
                s
            });
            Ok(r.passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let out = Out { json: cli.json };
    match run(cli.command, &out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Precondition(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
