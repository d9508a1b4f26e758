//! `liegen`: nilpotent generating pairs, closures, ping-pong bounds and
//! free dense subgroups from the command line.
//!
//! Exit status: 0 on success (classified, certified, clean scan),
//! 1 on a negative outcome, 2 on invalid input.

mod docs;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use liegen_core::closure::{classify, predicted_type, subalgebra_closure_with, TypeLabel};
use liegen_core::exact::{approx_f64, format_rational, parse_rational, rat, Rational};
use liegen_core::generators::{
    doubling_bvector, g2_bvector, g2_pair, lower_pair, shift_pair, BVectorConvention,
    GeneratorPair, PairFamily,
};
use liegen_core::groups::{
    exp_nilpotent, freeness_scan_with, reduced_word_count, sampled_scan, thin_lower_pair_n4,
    thin_pair, OneParameter,
};
use liegen_core::par::Execution;
use liegen_core::pingpong::{
    certify_free_dense, compute_r0, compute_t0, default_width, s0, Conclusion, Parameters,
};
use serde_json::{json, Value};

use docs::{strings, BoundDocument, CertificateDocument, MatrixDocument, MatrixInput};

const WIDTH_ENV: &str = "LIEGEN_DEFAULT_WIDTH";

#[derive(Parser)]
#[command(
    name = "liegen",
    version,
    about = "Nilpotent generating pairs and free dense subgroups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a generating pair.
    Gen(FamilyArgs),
    /// Close matrices from JSON files under the bracket and classify the result.
    Closure {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        sequential: bool,
    },
    /// Close a generating pair and classify it.
    Classify {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        sequential: bool,
    },
    /// Ping-pong bound polynomials, root brackets and safe values.
    Bounds {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_parser = rational)]
        width: Option<Rational>,
    },
    /// Exponential of a generator, optionally raised to a power.
    Exp(ExpArgs),
    /// Certify that a pair generates a free dense subgroup.
    Certify {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        t: Rational,
        #[arg(long, value_parser = rational, allow_hyphen_values = true, conflicts_with = "r")]
        s: Option<Rational>,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        r: Option<Rational>,
        #[arg(long, value_parser = rational)]
        width: Option<Rational>,
    },
    /// Search for reduced words evaluating to the identity.
    Scan(ScanArgs),
    /// Integer generators of a thin subgroup.
    Thin {
        #[arg(long, value_enum, default_value = "corner")]
        family: ThinFamily,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "r")]
        s: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        r: Option<i64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Corner,
    #[value(name = "double_corner")]
    DoubleCorner,
    Lower,
    G2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ThinFamily {
    Corner,
    Lower,
}

#[derive(Args, Clone)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: Option<usize>,
    /// `doubling`, `doubling-rank`, or a comma-separated list such as `8,12,14`.
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
}

#[derive(Args)]
struct ExpArgs {
    #[arg(long)]
    n: Option<usize>,
    /// `a(t) = exp(t x)`, or `exp(t M)` with `--matrix`.
    #[arg(long, value_parser = rational, allow_hyphen_values = true, group = "param")]
    t: Option<Rational>,
    /// `b(s) = exp(s E_{n,1})`.
    #[arg(long, value_parser = rational, allow_hyphen_values = true, group = "param")]
    s: Option<Rational>,
    /// `c(r) = exp(r z_b)`; needs `--b`.
    #[arg(long, value_parser = rational, allow_hyphen_values = true, group = "param")]
    r: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, requires = "t")]
    matrix: Option<PathBuf>,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    power: i64,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    t: Rational,
    #[arg(long, value_parser = rational, allow_hyphen_values = true, conflicts_with = "r")]
    s: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    r: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, default_value_t = 6)]
    max_syll: usize,
    #[arg(long, default_value_t = 3)]
    max_exp: i64,
    /// Evaluate this many random words instead of all of them.
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    sequential: bool,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn execution(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::default()
    }
}

fn width_or_default(flag: Option<Rational>) -> anyhow::Result<Rational> {
    let width = match (flag, std::env::var(WIDTH_ENV)) {
        (Some(w), _) => w,
        (None, Ok(v)) => parse_rational(&v).with_context(|| format!("{WIDTH_ENV}={v:?}"))?,
        (None, Err(_)) => default_width(),
    };
    if width <= rat(0) {
        bail!("root-isolation width must be positive");
    }
    Ok(width)
}

fn parse_b(spec: &str, n: Option<usize>) -> anyhow::Result<Vec<Rational>> {
    let convention = match spec {
        "doubling" => Some(BVectorConvention::MatrixSize),
        "doubling-rank" => Some(BVectorConvention::Rank),
        _ => None,
    };
    if let Some(c) = convention {
        let n = n.ok_or_else(|| anyhow!("--b {spec} needs --n"))?;
        return Ok(doubling_bvector(n, c)?);
    }
    let b = spec
        .split(',')
        .map(parse_rational)
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(n) = n {
        if b.len() + 1 != n {
            bail!(
                "--b has {} entries, expected n - 1 = {}",
                b.len(),
                n.saturating_sub(1)
            );
        }
    }
    Ok(b)
}

impl FamilyArgs {
    fn core_family(&self) -> PairFamily {
        match self.family {
            Family::Corner => PairFamily::Corner,
            Family::DoubleCorner => PairFamily::DoubleCorner,
            Family::Lower => PairFamily::LowerBidiagonal,
            Family::G2 => PairFamily::G2,
        }
    }

    fn pair(&self) -> anyhow::Result<GeneratorPair> {
        if self.b.is_some() && self.family != Family::Lower {
            bail!("--b only applies to --family lower");
        }
        match self.family {
            Family::Corner | Family::DoubleCorner => {
                let n = self.n.ok_or_else(|| anyhow!("--n is required"))?;
                Ok(shift_pair(n, self.core_family())?)
            }
            Family::Lower => {
                let b = parse_b(self.b.as_deref().unwrap_or("doubling"), self.n)?;
                Ok(lower_pair(&b)?)
            }
            Family::G2 => {
                if self.n.is_some_and(|n| n != 7) {
                    bail!("the g2 pair is 7x7");
                }
                Ok(g2_pair())
            }
        }
    }
}

fn type_summary(label: &TypeLabel) -> String {
    format!("{label}, dim {}", label.dim)
}

fn print(value: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("json values serialize")
    );
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_gen(args: &FamilyArgs) -> anyhow::Result<ExitCode> {
    let pair = args.pair()?;
    print(&json!({
        "family": pair.family.name(),
        "n": pair.n,
        "b": pair.b.as_deref().map(strings),
        "first": MatrixDocument::from_matrix(&pair.first),
        "second": MatrixDocument::from_matrix(&pair.second),
    }));
    Ok(ExitCode::SUCCESS)
}

fn closure_report(
    seed: &[liegen_core::exact::Matrix],
    exec: Execution,
    extra: Value,
) -> anyhow::Result<ExitCode> {
    let result = subalgebra_closure_with(seed, exec)?;
    let label = classify(&result);
    let mut out = json!({
        "n": result.n,
        "dim": result.dim,
        "rounds": result.rounds,
        "verified": result.verified,
        "type": label.to_string(),
        "summary": type_summary(&label),
    });
    if let (Value::Object(out), Value::Object(extra)) = (&mut out, extra) {
        out.extend(extra);
    }
    print(&out);
    Ok(status(label.is_recognized()))
}

fn cmd_closure(files: &[PathBuf], sequential: bool) -> anyhow::Result<ExitCode> {
    let mut seed = Vec::new();
    for f in files {
        seed.extend(MatrixInput::read(f)?);
    }
    closure_report(
        &seed,
        execution(sequential),
        json!({ "inputs": seed.len() }),
    )
}

fn cmd_classify(args: &FamilyArgs, sequential: bool) -> anyhow::Result<ExitCode> {
    let pair = args.pair()?;
    let expected = match pair.family {
        PairFamily::LowerBidiagonal => None,
        f => Some(predicted_type(f, pair.n)?.to_string()),
    };
    closure_report(
        &[pair.first, pair.second],
        execution(sequential),
        json!({ "family": pair.family.name(), "expected": expected }),
    )
}

fn cmd_bounds(args: &FamilyArgs, width: Option<Rational>) -> anyhow::Result<ExitCode> {
    let width = width_or_default(width)?;
    // a(t) and b(s) exist for every n >= 2, so the shift families skip the pair.
    let (n, b) = match args.family {
        Family::Corner | Family::DoubleCorner => {
            (args.n.ok_or_else(|| anyhow!("--n is required"))?, None)
        }
        _ => {
            let pair = args.pair()?;
            (pair.n, Some(pair.b.clone().unwrap_or_else(g2_bvector)))
        }
    };
    let t = compute_t0(n, &width)?;
    let mut out = json!({
        "family": args.core_family().name(),
        "n": n,
        "width": format_rational(&width),
        "t": BoundDocument::new(&t),
    });
    match (args.family, b) {
        (Family::Corner, _) => out["s0"] = json!(format_rational(&s0())),
        (_, Some(b)) => {
            out["b"] = json!(strings(&b));
            out["r"] = serde_json::to_value(BoundDocument::new(&compute_r0(&b, &width)?))?;
        }
        _ => {}
    }
    print(&out);
    Ok(ExitCode::SUCCESS)
}

fn cmd_exp(args: &ExpArgs) -> anyhow::Result<ExitCode> {
    let (label, param, g) = if let Some(path) = &args.matrix {
        let mut ms = MatrixInput::read(path)?;
        if ms.len() != 1 {
            bail!("--matrix expects exactly one matrix");
        }
        let m = ms.remove(0);
        let t = args.t.clone().expect("clap enforces --t with --matrix");
        exp_nilpotent(&m, &t)?;
        ("exp(tM)", t.clone(), OneParameter::Nilpotent { m, t })
    } else if let Some(r) = &args.r {
        let spec = args.b.as_deref().ok_or_else(|| anyhow!("--r needs --b"))?;
        let b = parse_b(spec, args.n)?;
        ("c", r.clone(), OneParameter::Lower { r: r.clone(), b })
    } else {
        let n = args.n.ok_or_else(|| anyhow!("--n is required"))?;
        if n < 2 {
            bail!("n must be at least 2");
        }
        match (&args.t, &args.s) {
            (Some(t), None) => ("a", t.clone(), OneParameter::Upper { n, t: t.clone() }),
            (None, Some(s)) => ("b", s.clone(), OneParameter::Corner { n, s: s.clone() }),
            _ => bail!("give exactly one of --t, --s, --r"),
        }
    };
    let m = g.power(args.power)?;
    print(&json!({
        "generator": label,
        "parameter": format_rational(&param),
        "power": args.power,
        "n": m.n(),
        "matrix": MatrixDocument::from_matrix(&m),
        "determinant": format_rational(&m.determinant()),
    }));
    Ok(ExitCode::SUCCESS)
}

fn cmd_certify(
    args: &FamilyArgs,
    t: &Rational,
    s: Option<&Rational>,
    r: Option<&Rational>,
    width: Option<Rational>,
) -> anyhow::Result<ExitCode> {
    let width = width_or_default(width)?;
    let pair = args.pair()?;
    let parameters = match (pair.family, s, r) {
        (PairFamily::Corner, Some(s), None) => Parameters::UpperCorner {
            t: t.clone(),
            s: s.clone(),
        },
        (PairFamily::LowerBidiagonal | PairFamily::G2, None, Some(r)) => Parameters::UpperLower {
            t: t.clone(),
            r: r.clone(),
        },
        (PairFamily::Corner, _, _) => bail!("the corner family takes --t and --s"),
        (PairFamily::DoubleCorner, _, _) => bail!("no ping-pong bound for double_corner"),
        _ => bail!("the {} family takes --t and --r", pair.family.name()),
    };
    let cert = certify_free_dense(pair.n, pair.family, pair.b.as_deref(), &parameters, &width)?;
    print(&serde_json::to_value(CertificateDocument::new(
        &cert, &width,
    ))?);
    Ok(status(cert.conclusion == Conclusion::FreeDenseCertified))
}

fn cmd_scan(args: &ScanArgs) -> anyhow::Result<ExitCode> {
    let a = OneParameter::Upper {
        n: args.n,
        t: args.t.clone(),
    };
    let (second_name, second, b) = match (&args.s, &args.r) {
        (Some(s), None) => (
            "s",
            s.clone(),
            OneParameter::Corner {
                n: args.n,
                s: s.clone(),
            },
        ),
        (None, Some(r)) => {
            let spec = args.b.as_deref().ok_or_else(|| anyhow!("--r needs --b"))?;
            let b = parse_b(spec, Some(args.n))?;
            ("r", r.clone(), OneParameter::Lower { r: r.clone(), b })
        }
        _ => bail!("give one of --s, --r"),
    };
    if args.n < 2 {
        bail!("n must be at least 2");
    }
    let exec = execution(args.sequential);
    let report = match args.sample {
        Some(k) => sampled_scan(&a, &b, args.max_syll, args.max_exp, k, args.seed, exec)?,
        None => freeness_scan_with(&a, &b, args.max_syll, args.max_exp, exec)?,
    };
    let collisions: Vec<String> = report.collisions.iter().map(ToString::to_string).collect();
    let mut out = json!({
        "n": args.n,
        "t": format_rational(&args.t),
        second_name: format_rational(&second),
        "max_syllables": args.max_syll,
        "max_exp": args.max_exp,
        "mode": if args.sample.is_some() { "sampled" } else { "exhaustive" },
        "words_checked": report.words_checked,
        "collision_count": collisions.len(),
        "collisions": collisions,
        "clean": report.is_clean(),
    });
    if args.sample.is_some() {
        out["seed"] = json!(args.seed);
    } else {
        out["expected_words"] = json!(reduced_word_count(args.max_syll, args.max_exp));
    }
    print(&out);
    Ok(status(report.is_clean()))
}

fn cmd_thin(
    family: ThinFamily,
    n: usize,
    q: i64,
    s: Option<i64>,
    r: Option<i64>,
) -> anyhow::Result<ExitCode> {
    let (pair, second_name) = match (family, s, r) {
        (ThinFamily::Corner, Some(s), None) => (thin_pair(n, q, s)?, "s"),
        (ThinFamily::Lower, None, Some(r)) => {
            if n != 4 {
                bail!("lower thin pairs are only available at n = 4");
            }
            (thin_lower_pair_n4(q, r)?, "r")
        }
        (ThinFamily::Corner, _, _) => bail!("--family corner takes --s"),
        (ThinFamily::Lower, _, _) => bail!("--family lower takes --r"),
    };
    if let Some(w) = &pair.warning {
        eprintln!("warning: {w}");
    }
    let integral = pair.a.matrix.is_integral() && pair.b.matrix.is_integral();
    print(&json!({
        "family": match family { ThinFamily::Corner => "corner", ThinFamily::Lower => "lower" },
        "n": pair.n,
        "q": q,
        "t": format_rational(&pair.t),
        second_name: format_rational(&pair.s),
        "first": MatrixDocument::from_matrix(&pair.a.matrix),
        "second": MatrixDocument::from_matrix(&pair.b.matrix),
        "integral": integral,
        "certified": pair.certified && integral,
        "warning": pair.warning,
        "approx_t": approx_f64(&pair.t),
    }));
    Ok(status(pair.certified && integral))
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Gen(args) => cmd_gen(&args),
        Command::Closure { files, sequential } => cmd_closure(&files, sequential),
        Command::Classify { family, sequential } => cmd_classify(&family, sequential),
        Command::Bounds { family, width } => cmd_bounds(&family, width),
        Command::Exp(args) => cmd_exp(&args),
        Command::Certify {
            family,
            t,
            s,
            r,
            width,
        } => cmd_certify(&family, &t, s.as_ref(), r.as_ref(), width),
        Command::Scan(args) => cmd_scan(&args),
        Command::Thin { family, n, q, s, r } => cmd_thin(family, n, q, s, r),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
