mod selftest;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use kschur_core::cores::{from_core, k_conjugate, to_core};
use kschur_core::kschur::k_pieri_set;
use kschur_core::ktableaux::{count_k_tableaux, count_standard, enumerate_skew_k_tableaux};
use kschur_core::partition::parse_int_list;
use kschur_core::quantum::{hecke_dimension, quantum_product_oracle};
use kschur_core::{cache, Basis, Context, Error, Partition, SymPoly};
use serde_json::{json, Value};

/// Exact computations with k-Schur functions, their duals and the quantum
/// cohomology of Grassmannians.
#[derive(Parser, Debug)]
#[command(name = "kschur", version)]
struct Cli {
    /// Bound k for k-Schur computations.
    #[arg(long, global = true)]
    k: Option<usize>,

    /// Grassmannian parameter l (rows of the rectangle have length l).
    #[arg(long, global = true)]
    l: Option<usize>,

    /// Grassmannian parameter n.
    #[arg(long, global = true)]
    n: Option<usize>,

    /// Degree, for commands that take one.
    #[arg(long, global = true)]
    degree: Option<usize>,

    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Refuse inputs whose joint degree exceeds this (core and conj allow its square in cells).
    #[arg(long, global = true, default_value_t = 14)]
    budget: usize,

    /// Directory for cached Kostka matrices [env: KSCHUR_CACHE_DIR].
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The k-Kostka matrix and its inverse (needs --k, --degree).
    Kostka,
    /// A k-Schur function in the h basis.
    Kschur { lambda: String },
    /// h_λ in the k-Schur basis.
    Hexpand { lambda: String },
    /// h_r times a k-Schur function, from the k-Pieri rule.
    Pieri { r: usize, nu: String },
    /// Product of two k-Schur functions.
    Klr { lambda: String, mu: String },
    /// A dual k-Schur function in the monomial basis.
    Dual { lambda: String },
    /// A skew dual k-Schur function.
    Skewdual {
        nu: String,
        mu: String,
        /// Expand in dual k-Schur functions instead of monomials.
        #[arg(long)]
        in_dual: bool,
    },
    /// Product of two dual k-Schur functions, in dual k-Schur functions.
    Dcoef { lambda: String, mu: String },
    /// Gromov-Witten invariants of Gr(l, n) (needs --l, --n).
    Gw {
        lambda: String,
        mu: String,
        /// Use the classical product followed by rim hook reduction.
        #[arg(long)]
        oracle: bool,
    },
    /// Fusion coefficients of su(l) at level n - l (needs --l, --n).
    Fusion { lambda: String, mu: String },
    /// The (k+1)-core of a k-bounded partition.
    Core {
        lambda: String,
        /// Map a (k+1)-core back to its k-bounded partition.
        #[arg(long)]
        inverse: bool,
    },
    /// Conjugate partition, or the k-conjugate when --k is given.
    Conj { lambda: String },
    /// k-tableaux of a given core shape and weight.
    Tableaux {
        /// Outer shape, a (k+1)-core.
        #[arg(long)]
        shape: String,
        /// Weight as a list of letter multiplicities.
        #[arg(long)]
        weight: String,
        /// Inner shape for skew tableaux, a (k+1)-core.
        #[arg(long)]
        inner: Option<String>,
        /// Print only the number of tableaux.
        #[arg(long)]
        count: bool,
    },
    /// Number of standard k-tableaux of shape c(λ).
    Standard { lambda: String },
    /// Dimension of a Hecke algebra representation (needs --l, --n).
    HeckeDim { lambda: String },
    /// Check the Cauchy identity (needs --k, --degree).
    CauchyCheck,
    /// Run the invariant suite up to --degree (default 6).
    Selftest,
    /// Inspect or clear the Kostka matrix cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum CacheAction {
    Stats,
    Clear,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => 2,
            Error::Precondition(_) => 3,
            Error::Internal(_) => 4,
            Error::Io(_) => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn precondition(message: impl Into<String>) -> Failure {
    Failure {
        code: 3,
        message: format!("precondition violated: {}", message.into()),
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if !out.is_empty() {
                emit(&out);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("kschur: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// Writes to stdout; a closed pipe (as in `kschur ... | head`) is not an error.
pub(crate) fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}").and_then(|()| out.flush());
}

fn default_cache_dir() -> Option<PathBuf> {
    if let Some(dir) = std::env::var_os("KSCHUR_CACHE_DIR").filter(|d| !d.is_empty()) {
        return Some(PathBuf::from(dir));
    }
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME").filter(|d| !d.is_empty()) {
        return Some(PathBuf::from(dir).join("kschur"));
    }
    std::env::var_os("HOME")
        .filter(|d| !d.is_empty())
        .map(|h| PathBuf::from(h).join(".cache").join("kschur"))
}

fn partition(s: &str) -> Result<Partition, Failure> {
    Ok(s.parse::<Partition>()?)
}

fn required(value: Option<usize>, flag: &str) -> Result<usize, Failure> {
    value.ok_or_else(|| precondition(format!("--{flag} is required")))
}

fn within_budget(cli: &Cli, degree: usize) -> Result<(), Failure> {
    if degree > cli.budget {
        return Err(precondition(format!(
            "joint degree {degree} exceeds the budget {}; raise it with --budget",
            cli.budget
        )));
    }
    Ok(())
}

/// Core and conjugation work is polynomial in the number of cells, so these
/// commands accept shapes up to the square of the budget.
fn within_cell_limit(cli: &Cli, lambda: &Partition) -> Result<(), Failure> {
    let limit = cli.budget.saturating_mul(cli.budget);
    if lambda.degree() > limit {
        return Err(precondition(format!(
            "{} cells exceed the limit {limit} (the square of --budget)",
            lambda.degree()
        )));
    }
    Ok(())
}

fn number(c: &impl ToString) -> Value {
    Value::Number(c.to_string().parse().expect("an integer literal is a JSON number"))
}

fn poly(cli: &Cli, f: &SymPoly) -> String {
    if cli.json {
        f.to_json()
    } else {
        f.to_string()
    }
}

fn run(cli: &Cli) -> Outcome {
    let cache_dir = cli.cache_dir.clone().or_else(default_cache_dir);
    let ctx = match &cache_dir {
        Some(dir) => Context::with_cache_dir(dir),
        None => Context::new(),
    };
    let k = || required(cli.k, "k");
    let l = || required(cli.l, "l");
    let n = || required(cli.n, "n");
    match &cli.command {
        Command::Kostka => {
            let (k, degree) = (k()?, required(cli.degree, "degree")?);
            within_budget(cli, degree)?;
            let m = ctx.kostka_matrix(k, degree)?;
            if cli.json {
                let rows = |mat: &Vec<Vec<num_bigint::BigInt>>| -> Value {
                    Value::Array(mat.iter().map(|r| Value::Array(r.iter().map(number).collect())).collect())
                };
                return Ok(json!({
                    "k": k,
                    "degree": degree,
                    "index": m.index(),
                    "forward": rows(m.forward()),
                    "inverse": rows(m.inverse()),
                })
                .to_string());
            }
            let mut lines = Vec::new();
            for (name, mat) in [("forward", m.forward()), ("inverse", m.inverse())] {
                lines.push(format!("{name}:"));
                for (nu, row) in m.index().iter().zip(mat) {
                    let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
                    lines.push(format!("{nu}: {}", cells.join(" ")));
                }
            }
            Ok(lines.join("\n"))
        }
        Command::Kschur { lambda } => {
            let lambda = partition(lambda)?;
            within_budget(cli, lambda.degree())?;
            Ok(poly(cli, &ctx.kschur_in_h(&lambda, k()?)?))
        }
        Command::Hexpand { lambda } => {
            let lambda = partition(lambda)?;
            within_budget(cli, lambda.degree())?;
            Ok(poly(cli, &ctx.h_in_kschur(&lambda, k()?)?))
        }
        Command::Pieri { r, nu } => {
            let (k, nu) = (k()?, partition(nu)?);
            within_budget(cli, nu.degree().saturating_add(*r))?;
            let set = k_pieri_set(&nu, *r, k)?;
            let row = Partition::new(vec![*r])?;
            let f = ctx.h_times_kschur(&row, &nu, k)?;
            let expected = SymPoly::from_terms(
                Basis::KSchur(k),
                nu.degree() + r,
                set.into_iter().map(|p| (p, 1.into())),
            )?;
            if f != expected {
                return Err(Error::Internal(format!("k-Pieri rule gives {expected}, skew counts give {f}")).into());
            }
            Ok(poly(cli, &f))
        }
        Command::Klr { lambda, mu } => {
            let (lambda, mu) = (partition(lambda)?, partition(mu)?);
            within_budget(cli, lambda.degree() + mu.degree())?;
            Ok(poly(cli, &ctx.klr(&lambda, &mu, k()?)?))
        }
        Command::Dual { lambda } => {
            let lambda = partition(lambda)?;
            within_budget(cli, lambda.degree())?;
            Ok(poly(cli, &ctx.dual_kschur_in_m(&lambda, k()?)?))
        }
        Command::Skewdual { nu, mu, in_dual } => {
            let (nu, mu) = (partition(nu)?, partition(mu)?);
            within_budget(cli, nu.degree())?;
            let f = if *in_dual {
                ctx.skew_dual_in_dual(&nu, &mu, k()?)?
            } else {
                ctx.skew_dual_in_m(&nu, &mu, k()?)?
            };
            Ok(poly(cli, &f))
        }
        Command::Dcoef { lambda, mu } => {
            let (lambda, mu) = (partition(lambda)?, partition(mu)?);
            within_budget(cli, lambda.degree() + mu.degree())?;
            Ok(poly(cli, &ctx.d_coefficients(&lambda, &mu, k()?)?))
        }
        Command::Gw { lambda, mu, oracle } => {
            let (lambda, mu) = (partition(lambda)?, partition(mu)?);
            within_budget(cli, lambda.degree() + mu.degree())?;
            let (l, n) = (l()?, n()?);
            let gw = if *oracle {
                quantum_product_oracle(&lambda, &mu, l, n)?
            } else {
                ctx.gw_invariants(&lambda, &mu, l, n)?
            };
            Ok(if cli.json { gw.to_json() } else { gw.to_string() })
        }
        Command::Fusion { lambda, mu } => {
            let (lambda, mu) = (partition(lambda)?, partition(mu)?);
            within_budget(cli, lambda.degree() + mu.degree())?;
            let (l, n) = (l()?, n()?);
            let rules: BTreeMap<Partition, num_bigint::BigInt> = ctx.fusion(&lambda, &mu, l, n)?;
            if cli.json {
                let terms: Vec<Value> = rules
                    .iter()
                    .rev()
                    .map(|(nu, c)| json!({"nu": nu, "coeff": number(c)}))
                    .collect();
                return Ok(json!({"l": l, "n": n, "lambda": lambda, "mu": mu, "terms": terms}).to_string());
            }
            Ok(rules.iter().rev().map(|(nu, c)| format!("{nu}: {c}")).collect::<Vec<_>>().join("\n"))
        }
        Command::Core { lambda, inverse } => {
            let (k, lambda) = (k()?, partition(lambda)?);
            within_cell_limit(cli, &lambda)?;
            let out = if *inverse {
                from_core(&lambda, k)?
            } else {
                to_core(&lambda, k)?.into_shape()
            };
            Ok(partition_out(cli, &out))
        }
        Command::Conj { lambda } => {
            let lambda = partition(lambda)?;
            within_cell_limit(cli, &lambda)?;
            let out = match cli.k {
                Some(k) => k_conjugate(&lambda, k)?,
                None => lambda.conjugate(),
            };
            Ok(partition_out(cli, &out))
        }
        Command::Tableaux { shape, weight, inner, count } => {
            let k = k()?;
            let gamma = partition(shape)?;
            let weight = parse_int_list(weight)?;
            within_budget(cli, weight.iter().fold(0usize, |a, &w| a.saturating_add(w)))?;
            let rho = match inner {
                Some(s) => partition(s)?,
                None => Partition::empty(),
            };
            if *count && rho.is_empty() {
                let mu = from_core(&gamma, k)?;
                let c = count_k_tableaux(k, &mu, &weight)?;
                return Ok(if cli.json { number(&c).to_string() } else { c.to_string() });
            }
            let ts = enumerate_skew_k_tableaux(k, &gamma, &rho, &weight)?;
            if *count {
                return Ok(ts.len().to_string());
            }
            if cli.json {
                return Ok(serde_json::to_string(&ts).expect("tableau serialization cannot fail"));
            }
            Ok(ts.iter().map(|t| t.to_string()).collect::<Vec<_>>().join("\n\n"))
        }
        Command::Standard { lambda } => {
            let lambda = partition(lambda)?;
            within_budget(cli, lambda.degree())?;
            Ok(count_standard(k()?, &lambda)?.to_string())
        }
        Command::HeckeDim { lambda } => {
            let lambda = partition(lambda)?;
            within_budget(cli, lambda.degree())?;
            Ok(hecke_dimension(&lambda, l()?, n()?)?.to_string())
        }
        Command::CauchyCheck => {
            let (k, degree) = (k()?, required(cli.degree, "degree")?);
            within_budget(cli, degree)?;
            if !ctx.cauchy_check(k, degree)? {
                return Err(Error::Internal(format!("Cauchy identity fails at k={k}, degree {degree}")).into());
            }
            Ok("true".into())
        }
        Command::Selftest => {
            let degree = cli.degree.unwrap_or(6);
            within_budget(cli, degree)?;
            selftest::run(&ctx, degree, cli.json)
        }
        Command::Cache { action } => {
            let dir = cache_dir.ok_or_else(|| precondition("no cache directory; pass --cache-dir or set KSCHUR_CACHE_DIR"))?;
            match action {
                CacheAction::Stats => {
                    let s = cache::stats(&dir)?;
                    if cli.json {
                        return Ok(json!({"dir": dir, "files": s.files, "bytes": s.bytes}).to_string());
                    }
                    Ok(format!("dir: {}\nfiles: {}\nbytes: {}", dir.display(), s.files, s.bytes))
                }
                CacheAction::Clear => {
                    let removed = cache::clear(&dir)?;
                    if cli.json {
                        return Ok(json!({"dir": dir, "removed": removed}).to_string());
                    }
                    Ok(format!("removed {removed} files from {}", dir.display()))
                }
            }
        }
    }
}

fn partition_out(cli: &Cli, p: &Partition) -> String {
    if cli.json {
        serde_json::to_string(p).expect("partition serialization cannot fail")
    } else {
        p.to_string()
    }
}
