//! The `subprofile` command line.

pub mod verify;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::profiles::{self, ProfileTuple, SimilarityType};
use crate::ratfunc::{BigQ, RatFunc};
use crate::symfunc::{from_basis, to_basis, Basis, SymFunc};
use verify::Suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "subprofile", version, about = "Count subspace profiles of matrices over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Output {
    /// Write the JSON result to this path (`-` for stdout).
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Expand a named symmetric function in a basis.
    Expand {
        /// hn, pn, en, flaggf, or a basis tag (s, m, e, h, p, P, H, Hmod, W, Wdual).
        func: String,
        #[arg(long)]
        n: Option<usize>,
        /// Partition as a JSON array, e.g. [2,1].
        #[arg(long)]
        part: Option<String>,
        /// Similarity type as JSON or a path to a JSON file.
        #[arg(long = "type")]
        ty: Option<String>,
        #[arg(long, default_value = "s")]
        to: String,
        #[command(flatten)]
        out: Output,
    },
    /// Number of subspaces with profile `mu`.
    Profile {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        at_prime: Option<u64>,
        #[command(flatten)]
        out: Output,
    },
    /// All profile counts for a type.
    ProfileTable {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        at_prime: Option<u64>,
        #[command(flatten)]
        out: Output,
    },
    /// Number of subspaces with partial profile `rho`.
    Partial {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        rho: String,
        #[arg(long)]
        at_prime: Option<u64>,
        #[command(flatten)]
        out: Output,
    },
    /// Number of `m`-dimensional subspaces `W` with `W + ΔW + … + Δ^fold W` of dimension `m(fold+1)`.
    AntiInvariant {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        fold: usize,
        #[arg(long)]
        at_prime: Option<u64>,
        #[command(flatten)]
        out: Output,
    },
    /// Probability that `k` random vectors generate a Krylov space of dimension `kℓ`.
    Krylov {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        at_prime: Option<u64>,
        #[command(flatten)]
        out: Output,
    },
    /// Compare formulas against exhaustive enumeration or check identities.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        primes: Vec<u64>,
        #[command(flatten)]
        out: Output,
    },
    /// Run every suite at a small size.
    Selftest {
        #[command(flatten)]
        out: Output,
    },
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
        }
    };
    match execute(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Budget { .. } | Error::DegreeCap { .. } => EXIT_BUDGET,
        _ => EXIT_VALIDATION,
    }
}

/// Reads a similarity type from inline JSON or a file. Accepts the
/// `{"blocks": [...]}` form or a bare list of `[d, [λ...]]` pairs.
pub fn parse_type(s: &str) -> Result<SimilarityType> {
    let text = if s.trim_start().starts_with(['{', '[']) {
        s.to_string()
    } else {
        std::fs::read_to_string(s).map_err(|e| Error::Parse(format!("{s}: {e}")))?
    };
    let v: Value = serde_json::from_str(&text)?;
    if v.is_array() {
        let pairs: Vec<(usize, Vec<usize>)> = serde_json::from_value(v)?;
        let blocks = pairs
            .into_iter()
            .map(|(d, l)| profiles::Block::new(d, Partition::new(l)?))
            .collect::<Result<Vec<_>>>()?;
        return SimilarityType::new(blocks);
    }
    Ok(serde_json::from_value(v)?)
}

fn parse_partition(s: &str) -> Result<Partition> {
    Partition::new(serde_json::from_str(s)?)
}

fn check_prime(p: u64) -> Result<()> {
    if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    Ok(())
}

fn print(text: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn emit(human: &str, value: &Value, out: &Output) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match out.json.as_deref() {
        Some(p) if p.as_os_str() == "-" => print(&text),
        Some(p) => {
            std::fs::write(p, text + "\n").map_err(|e| Error::InvalidArgument(format!("{}: {e}", p.display())))?;
            print(human);
        }
        None => print(human),
    }
    Ok(())
}

fn named_function(func: &str, n: Option<usize>, part: Option<&str>, ty: Option<&str>) -> Result<SymFunc> {
    let need_n = || n.ok_or_else(|| Error::InvalidArgument(format!("{func} needs --n")));
    match func {
        "hn" => from_basis(Basis::H, &Partition::row(need_n()?)),
        "pn" => from_basis(Basis::P, &Partition::row(need_n()?)),
        "en" => from_basis(Basis::E, &Partition::row(need_n()?)),
        "flaggf" => {
            let ty = ty.ok_or_else(|| Error::InvalidArgument("flaggf needs --type".into()))?;
            profiles::flag_gf(&parse_type(ty)?)
        }
        tag => {
            let basis: Basis = tag.parse()?;
            let part = part.ok_or_else(|| Error::InvalidArgument(format!("{func} needs --part")))?;
            let lam = parse_partition(part)?;
            crate::symfunc::check_cap(lam.size())?;
            from_basis(basis, &lam)
        }
    }
}

fn format_expansion(coeffs: &BTreeMap<Partition, RatFunc>) -> String {
    let mut s = String::from("{");
    for (i, (k, v)) in coeffs.iter().rev().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{k}: {v}");
    }
    s.push('}');
    s
}

fn count_output(label: Value, count: &RatFunc, tau: &SimilarityType, at_prime: Option<u64>) -> Result<(String, Value)> {
    let mut v = json!({ "type": tau.to_json(), "query": label, "count": count.to_json(), "display": count.to_string() });
    match at_prime {
        None => Ok((count.to_string(), v)),
        Some(p) => {
            check_prime(p)?;
            tau.check_realizable(p)?;
            let x = count.eval_at(&BigQ::from_integer(BigInt::from(p)))?;
            v["at_prime"] = json!(p);
            v["value"] = json!(x.to_string());
            Ok((x.to_string(), v))
        }
    }
}

fn execute(cmd: &Command) -> Result<i32> {
    match cmd {
        Command::Expand { func, n, part, ty, to, out } => {
            let basis: Basis = to.parse()?;
            if let Some(n) = n {
                crate::symfunc::check_cap(*n)?;
            }
            let f = named_function(func, *n, part.as_deref(), ty.as_deref())?;
            let coeffs = to_basis(&f, basis)?;
            emit(&format_expansion(&coeffs), &crate::symfunc::to_json(&f, basis)?, out)?;
        }
        Command::Profile { ty, mu, at_prime, out } => {
            let tau = parse_type(ty)?;
            let mu = parse_partition(mu)?;
            let c = RatFunc::from_poly(profiles::sigma(&mu, &tau)?);
            let (h, v) = count_output(json!(mu), &c, &tau, *at_prime)?;
            emit(&h, &v, out)?;
        }
        Command::ProfileTable { ty, at_prime, out } => {
            let tau = parse_type(ty)?;
            if let Some(p) = at_prime {
                check_prime(*p)?;
                tau.check_realizable(*p)?;
            }
            let mut human = String::new();
            let mut rows = Vec::new();
            for (mu, s) in profiles::sigma_table(&tau)? {
                let c = RatFunc::from_poly(s);
                let (h, v) = count_output(json!(mu), &c, &tau, *at_prime)?;
                let _ = writeln!(human, "{mu}\t{h}");
                rows.push(v);
            }
            emit(human.trim_end(), &json!({ "type": tau.to_json(), "rows": rows }), out)?;
        }
        Command::Partial { ty, rho, at_prime, out } => {
            let tau = parse_type(ty)?;
            let rho = ProfileTuple(serde_json::from_str(rho)?);
            let c = RatFunc::from_poly(profiles::pi_partial(&rho, &tau)?);
            let (h, v) = count_output(json!(rho), &c, &tau, *at_prime)?;
            emit(&h, &v, out)?;
        }
        Command::AntiInvariant { ty, m, fold, at_prime, out } => {
            let tau = parse_type(ty)?;
            let c = RatFunc::from_poly(profiles::anti_invariant_count(*m, *fold, &tau)?);
            let (h, v) = count_output(json!({ "m": m, "fold": fold }), &c, &tau, *at_prime)?;
            emit(&h, &v, out)?;
        }
        Command::Krylov { ty, k, l, at_prime, out } => {
            let tau = parse_type(ty)?;
            let c = profiles::krylov_prob(*k, *l, &tau)?;
            let (h, v) = count_output(json!({ "k": k, "l": l }), &c, &tau, *at_prime)?;
            emit(&h, &v, out)?;
        }
        Command::Verify { suite, max_n, primes, out } => {
            for &p in primes {
                check_prime(p)?;
            }
            let r = verify::run_suite(*suite, *max_n, primes)?;
            let human = match &r.counterexample {
                None => format!("{:?}: {} checks passed", r.suite, r.checks),
                Some(c) => format!("{:?}: FAILED after {} checks: {c}", r.suite, r.checks),
            };
            emit(&human, &serde_json::to_value(&r)?, out)?;
            if !r.passed {
                return Ok(EXIT_VERIFY);
            }
        }
        Command::Selftest { out } => {
            let runs = [
                (Suite::Identities, 4, vec![]),
                (Suite::Sigma, 3, vec![2, 3]),
                (Suite::Flags, 3, vec![2]),
                (Suite::Partial, 3, vec![2]),
                (Suite::Krylov, 2, vec![2]),
            ];
            let mut reports = Vec::new();
            let mut human = String::new();
            let mut ok = true;
            for (s, n, primes) in runs {
                let r = verify::run_suite(s, n, &primes)?;
                let _ = writeln!(human, "{:<12} {} ({} checks)", format!("{s:?}"), if r.passed { "ok" } else { "FAILED" }, r.checks);
                ok &= r.passed;
                reports.push(r);
            }
            emit(human.trim_end(), &json!({ "passed": ok, "suites": reports }), out)?;
            if !ok {
                return Ok(EXIT_VERIFY);
            }
        }
    }
    Ok(EXIT_OK)
}
