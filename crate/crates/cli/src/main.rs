use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use schreier_lab::constructions::jameson::JamesonTerms;
use schreier_lab::constructions::{
    almost_disjoint_family, flat_vector, flat_vector_powers, jameson_extremal, l_set, lemma63_witness,
    mpb_partition, verify_corollary64,
};
use schreier_lab::gl_index::{check_domination, domination_constant, gl_index_truncated};
use schreier_lab::harness::{run_suite, Suite, SuiteConfig};
use schreier_lab::norms::{baernstein_norm, oracle_norm, schreier_norm};
use schreier_lab::schreier::{maximal_chain_from, oracle_bound, tau1_of, tau1_oracle};
use schreier_lab::{CoeffVector, Error, Exponent, IndexSet, Mode, Rational, Result, Scalar, Space};

#[derive(Parser)]
#[command(name = "schreier-lab", version, about = "Exact Schreier and Baernstein norm computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Norm of a finitely supported vector, with an optimal witness.
    Norm(NormArgs),
    /// Schreier covering number of a finite set.
    Tau(TauArgs),
    /// Truncated Gasparis-Leung index of two index sets.
    Glindex(GlArgs),
    /// Compare the two basis subsequences on one coefficient vector.
    Dominate(DominateArgs),
    /// Generate an explicit construction.
    #[command(subcommand)]
    Construct(Construct),
    /// Run a verification suite and write its reports.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct NormArgs {
    #[arg(long, default_value = "sp")]
    space: Space,
    #[arg(long, default_value = "1", value_parser = parse_exponent)]
    p: Exponent,
    #[arg(long, default_value = "exact")]
    mode: Mode,
    /// Dense array, `{"index": value}` object, or `{"runs": [[lo, hi, v]]}`.
    #[arg(long)]
    vec: String,
    /// Also evaluate the exhaustive oracle.
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct TauArgs {
    /// JSON array of distinct positive integers.
    #[arg(long)]
    set: String,
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct GlArgs {
    /// Index rule or JSON array.
    #[arg(long = "M")]
    m: IndexSet,
    #[arg(long = "N")]
    n: IndexSet,
    #[arg(long = "K")]
    k: usize,
}

#[derive(Args)]
struct DominateArgs {
    #[arg(long = "M")]
    m: IndexSet,
    #[arg(long = "N")]
    n: IndexSet,
    #[arg(long = "K")]
    k: usize,
    #[arg(long, default_value = "sp")]
    space: Space,
    #[arg(long, default_value = "1", value_parser = parse_exponent)]
    p: Exponent,
    #[arg(long, default_value = "exact")]
    mode: Mode,
    /// JSON array of coefficients for the first positions.
    #[arg(long)]
    coeffs: String,
}

#[derive(Subcommand)]
enum Construct {
    /// Interval partition `F_n`, `G_n`.
    Mpb {
        #[arg(long)]
        n: usize,
    },
    /// Union of the partition intervals `J_n` for `n` in `N`.
    Lset {
        #[arg(long = "N")]
        n_set: IndexSet,
        #[arg(long)]
        through: usize,
    },
    /// Divergence witnesses for every `m` in `M \ N` up to the window.
    Witnesses {
        #[arg(long = "M")]
        m: IndexSet,
        #[arg(long = "N")]
        n: IndexSet,
        #[arg(long)]
        window: u64,
        /// Partition depth; defaults to `window + 1`.
        #[arg(long)]
        depth: Option<usize>,
        /// Only the witness for this `m`.
        #[arg(long)]
        only: Option<u64>,
    },
    /// Flat vector over the maximal chain starting at `start`.
    Flat {
        #[arg(long)]
        start: u64,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "sp")]
        space: Space,
        #[arg(long, default_value = "1", value_parser = parse_exponent)]
        p: Exponent,
        #[arg(long, default_value = "exact")]
        mode: Mode,
    },
    /// Extremal vector for the interpolation inequality.
    Jameson {
        #[arg(long)]
        k: u32,
        #[arg(long = "T")]
        t: u32,
        #[arg(long, default_value = "2", value_parser = parse_exponent)]
        p: Exponent,
        #[arg(long, default_value = "exact")]
        mode: Mode,
    },
    /// Branches of the node-labelled binary tree.
    AlmostDisjoint {
        #[arg(long)]
        count: usize,
        #[arg(long)]
        depth: u32,
    },
}

#[derive(Args)]
struct VerifyArgs {
    suite: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value = "exact")]
    mode: Mode,
    #[arg(long, default_value = "reports")]
    out: PathBuf,
    #[arg(long)]
    max_support: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long = "K")]
    k: Option<usize>,
    #[arg(long)]
    window: Option<u64>,
    #[arg(long)]
    n: Option<usize>,
}

fn parse_exponent(s: &str) -> std::result::Result<Exponent, String> {
    Exponent::parse(s).map_err(|e| e.to_string())
}

fn print(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

fn norm_in<S: Scalar>(args: &NormArgs) -> Result<Value> {
    let x = CoeffVector::<S>::parse(&args.vec)?;
    let r = match args.space {
        Space::Sp => schreier_norm(&x, args.p)?,
        Space::Bp => baernstein_norm(&x, args.p)?,
    };
    let mut out = r.to_json();
    if args.oracle {
        let o = oracle_norm(&x, args.p, args.space, oracle_bound())?;
        out["oracle_power"] = o.to_json();
        out["oracle_agrees"] = json!(o.eq_tol(&r.power));
    }
    Ok(out)
}

fn dominate_in<S: Scalar>(args: &DominateArgs) -> Result<Value> {
    let raw: Vec<Value> =
        serde_json::from_str(&args.coeffs).map_err(|e| Error::Parse(format!("coefficients: {e}")))?;
    let coeffs = raw
        .iter()
        .map(|v| match v {
            Value::String(s) => S::parse_literal(s),
            other => S::parse_literal(&other.to_string()),
        })
        .collect::<Result<Vec<S>>>()?;
    let constant = domination_constant(&args.m, &args.n, args.k, args.p, args.space)?;
    let c = check_domination(&args.m, &args.n, args.k, args.p, args.space, &coeffs)?;
    Ok(json!({
        "constant": constant.value(),
        "index": constant.index.to_json(),
        "lhs": c.lhs.to_json(),
        "rhs": c.rhs.to_json(),
        "holds": c.holds,
    }))
}

fn flat_in<S: Scalar>(start: u64, m: usize, space: Space, p: Exponent) -> Result<Value> {
    let chain = maximal_chain_from(start, m)?;
    // Blocks of a maximal chain are intervals; print their endpoints.
    let blocks: Vec<[u64; 2]> = chain.sets().iter().map(|f| [f.min().unwrap_or(0), f.max().unwrap_or(0)]).collect();
    let mut out = json!({"chain": blocks, "space": space.as_str(), "p": p.to_json()});
    match flat_vector::<S>(&chain, p, space) {
        Ok(x) => {
            let r = match space {
                Space::Sp => schreier_norm(&x, p)?,
                Space::Bp => baernstein_norm(&x, p)?,
            };
            out["vector"] = x.runs_json();
            out["norm"] = r.to_json();
        }
        Err(Error::UnsupportedExponent(_)) => {
            let powers = flat_vector_powers::<S>(&chain)?;
            let r = schreier_norm(&powers, Exponent::Integer(1))?;
            out["powers_vector"] = powers.runs_json();
            out["norm_power"] = r.power.to_json();
        }
        Err(e) => return Err(e),
    }
    Ok(out)
}

fn jameson_in<S: Scalar>(k: u32, t: u32, p: Exponent) -> Result<Value> {
    let x = jameson_extremal::<S>(k, t)?;
    let terms = JamesonTerms::measure(&x, p)?;
    Ok(json!({
        "k": k,
        "T": t,
        "p": p.to_json(),
        "vector": x.runs_json(),
        "lp_power": terms.lp_power.to_json(),
        "sup": terms.sup.to_json(),
        "s1": terms.s1.to_json(),
        "ratio": terms.ratio(p),
    }))
}

macro_rules! in_mode {
    ($mode:expr, $f:ident ( $($arg:expr),* )) => {
        match $mode {
            Mode::Exact => $f::<Rational>($($arg),*),
            Mode::Float => $f::<f64>($($arg),*),
        }
    };
}

fn construct(c: &Construct) -> Result<Value> {
    match c {
        Construct::Mpb { n } => {
            let part = mpb_partition(*n)?;
            part.check()?;
            let mut out = part.to_json();
            out["tau_G"] = json!(part.g_covering_numbers());
            Ok(out)
        }
        Construct::Lset { n_set, through } => {
            let part = mpb_partition(*through)?;
            let l = l_set(&part, n_set, *through)?;
            Ok(json!({"N": n_set.to_json(*through), "through": through, "L": l.runs_json()}))
        }
        Construct::Witnesses { m, n, window, depth, only } => {
            let part = mpb_partition(depth.unwrap_or(*window as usize + 1))?;
            let witnesses = match only {
                Some(v) => vec![lemma63_witness(&part, m, n, *v)?],
                None => verify_corollary64(&part, m, n, *window)?,
            };
            let bound = witnesses.iter().map(|w| w.m).max().unwrap_or(0);
            Ok(json!({
                "witnesses": witnesses.iter().map(|w| w.to_json()).collect::<Vec<_>>(),
                "certified_lower_bound": bound,
            }))
        }
        Construct::Flat { start, m, space, p, mode } => in_mode!(mode, flat_in(*start, *m, *space, *p)),
        Construct::Jameson { k, t, p, mode } => in_mode!(mode, jameson_in(*k, *t, *p)),
        Construct::AlmostDisjoint { count, depth } => Ok(almost_disjoint_family(*count, *depth)?.to_json()),
    }
}

fn verify(args: &VerifyArgs) -> Result<bool> {
    let suite: Suite = args.suite.parse()?;
    let d = SuiteConfig::default();
    let cfg = SuiteConfig {
        seed: args.seed,
        mode: args.mode,
        max_support: args.max_support.unwrap_or(d.max_support),
        samples: args.samples,
        m: args.m.unwrap_or(d.m),
        k: args.k.unwrap_or(d.k),
        window: args.window.unwrap_or(d.window),
        n: args.n.unwrap_or(d.n),
    };
    let started = Instant::now();
    let report = run_suite(suite, &cfg)?;
    let (json_path, csv_path) = report.write(&args.out)?;
    eprintln!("{suite}: {} checks in {:.2?}", report.checks, started.elapsed());
    for r in report.failing() {
        eprintln!("FAILED {}: expected {}, observed {}", r.check, r.expected, r.observed);
    }
    print(&json!({
        "suite": report.suite,
        "checks": report.checks,
        "failures": report.failures,
        "passed": report.passed,
        "json": json_path.display().to_string(),
        "csv": csv_path.display().to_string(),
    }));
    Ok(report.passed)
}

fn run(cli: &Cli) -> Result<bool> {
    let out = match &cli.command {
        Command::Norm(a) => in_mode!(a.mode, norm_in(a))?,
        Command::Tau(a) => {
            let elems: Vec<u64> =
                serde_json::from_str(&a.set).map_err(|e| Error::Parse(format!("set: {e}")))?;
            let cert = tau1_of(&elems)?;
            let mut out = serde_json::to_value(&cert).expect("certificates serialize");
            if a.oracle {
                out["oracle"] = json!(tau1_oracle(&elems, oracle_bound())?);
            }
            out
        }
        Command::Glindex(a) => {
            let r = gl_index_truncated(&a.m, &a.n, a.k)?;
            let mut out = r.to_json();
            out["M"] = a.m.to_json(a.k);
            out["N"] = a.n.to_json(a.k);
            out
        }
        Command::Dominate(a) => in_mode!(a.mode, dominate_in(a))?,
        Command::Construct(c) => construct(c)?,
        Command::Verify(a) => return verify(a),
    };
    print(&out);
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
