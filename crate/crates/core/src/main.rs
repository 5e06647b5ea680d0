use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use monodromy::arith::{build_algebra, classify_by_factorization, splitting_data, InvolutiveAlgebra};
use monodromy::braid::{pure_generators, BraidWord};
use monodromy::gassner::{invariant_form, GassnerContext};
use monodromy::linalg::AlgMatrix;
use monodromy::verify::{run_verification, scan, Report, ScanConfig, VerificationConfig};
use monodromy::{Error, Result};

#[derive(Parser)]
#[command(name = "monodromy", version, about = "Gassner representations over finite fields and their images")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Splitting data and the algebra for a pair of primes.
    Analyze {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        l: u64,
    },
    /// Generator images, pure generator images and the invariant form.
    Matrices {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        l: u64,
        /// Monodromy vector, e.g. 1,1,1,1.
        #[arg(short)]
        k: String,
        /// Also evaluate this word, e.g. "0 0 -1".
        #[arg(long)]
        word: Option<String>,
    },
    /// Run checks for one parameter set.
    Verify(VerifyArgs),
    /// Run checks over a grid of parameters.
    Scan(ScanArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// key=value file; flags given on the command line take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(short)]
    p: Option<u64>,
    #[arg(short)]
    l: Option<u64>,
    #[arg(short)]
    k: Option<String>,
    /// Comma separated: splitting, relations, form, irreducibility, prop21,
    /// extension, image, or "all".
    #[arg(long)]
    checks: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    order_cap: Option<String>,
    #[arg(long)]
    closure_cap: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<String>,
    /// Report runtime_ms as 0, for byte-identical output.
    #[arg(long)]
    no_timings: bool,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    p_max: Option<u64>,
    #[arg(long)]
    l_max: Option<u64>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    order_cap: Option<String>,
    #[arg(long)]
    checks: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    no_timings: bool,
}

fn read_config(path: &Option<PathBuf>) -> Result<Option<String>> {
    path.as_ref()
        .map(|p| fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display()))))
        .transpose()
}

fn overrides(pairs: Vec<(&str, Option<String>)>) -> impl Iterator<Item = (&str, String)> {
    pairs.into_iter().filter_map(|(k, v)| v.map(|v| (k, v)))
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display()))),
        None => {
            // a closed pipe (e.g. `| head`) is not an error
            let _ = io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn verify(args: VerifyArgs) -> Result<i32> {
    let mut config = match read_config(&args.config)? {
        Some(text) => VerificationConfig::from_kv_text(&text)?,
        None => VerificationConfig::default(),
    };
    for (k, v) in overrides(vec![
        ("p", args.p.map(|x| x.to_string())),
        ("l", args.l.map(|x| x.to_string())),
        ("k", args.k),
        ("checks", args.checks),
        ("seed", args.seed.map(|x| x.to_string())),
        ("order_cap", args.order_cap),
        ("closure_cap", args.closure_cap.map(|x| x.to_string())),
        ("samples", args.samples.map(|x| x.to_string())),
        ("trials", args.trials.map(|x| x.to_string())),
        ("format", args.format),
    ]) {
        config.set(k, &v)?;
    }
    if let Some(out) = args.out {
        config.out = Some(out);
    }
    if args.no_timings {
        config.timings = false;
    }
    let report = run_verification(&config)?;
    emit(&report.render(config.format), config.out.as_ref())?;
    Ok(report.exit_code())
}

fn run_scan(args: ScanArgs) -> Result<i32> {
    let mut config = match read_config(&args.config)? {
        Some(text) => ScanConfig::from_kv_text(&text)?,
        None => ScanConfig::default(),
    };
    for (k, v) in overrides(vec![
        ("p_max", args.p_max.map(|x| x.to_string())),
        ("l_max", args.l_max.map(|x| x.to_string())),
        ("n_max", args.n_max.map(|x| x.to_string())),
        ("order_cap", args.order_cap),
        ("checks", args.checks),
        ("seed", args.seed.map(|x| x.to_string())),
        ("format", args.format),
    ]) {
        config.set(k, &v)?;
    }
    if let Some(out) = args.out {
        config.out = Some(out);
    }
    if args.no_timings {
        config.timings = false;
    }
    let report: Report = scan(&config);
    emit(&report.render(config.format), config.out.as_ref())?;
    Ok(report.exit_code())
}

fn matrix_json(alg: &InvolutiveAlgebra, m: &AlgMatrix) -> Value {
    let rows: Vec<Vec<Vec<u64>>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|&x| alg.to_digits(x)).collect())
        .collect();
    json!(rows)
}

fn analyze(p: u64, l: u64) -> Result<i32> {
    let sd = splitting_data(p, l)?;
    let oracle = classify_by_factorization(p, l)?;
    let algebra = match build_algebra(&sd) {
        Ok(alg) => serde_json::to_value(alg.descriptor()).expect("serializes"),
        Err(e) => json!(format!("skipped: {e}")),
    };
    let out = json!({
        "splitting": sd,
        "factorization": oracle,
        "algebra": algebra,
    });
    emit(&(serde_json::to_string_pretty(&out).expect("serializes") + "\n"), None)?;
    Ok(0)
}

fn matrices(p: u64, l: u64, k: &str, word: Option<String>) -> Result<i32> {
    let mut c = VerificationConfig {
        p,
        l,
        ..VerificationConfig::default()
    };
    c.set("k", k)?;
    c.validate()?;
    let alg = build_algebra(&splitting_data(p, l)?)?;
    let ctx = GassnerContext::new(alg.clone(), c.kvec.clone())?;
    let generators: Vec<Value> = (0..ctx.n())
        .map(|i| {
            let e = ctx.generator_matrix(i)?;
            Ok(json!({ "index": i, "matrix": matrix_json(&alg, &e.matrix), "end": e.end }))
        })
        .collect::<Result<_>>()?;
    let pure: Vec<Value> = pure_generators(ctx.n())
        .iter()
        .zip(ctx.pure_generator_images())
        .map(|(w, m)| json!({ "word": w.to_string(), "matrix": matrix_json(&alg, &m) }))
        .collect();
    let form = invariant_form(&ctx)?;
    let mut out = json!({
        "algebra": alg.descriptor(),
        "k": c.kvec,
        "generators": generators,
        "pure_generators": pure,
        "form": {
            "gram": matrix_json(&alg, &form.gram),
            "rank": form.rank,
            "kernel": form.kernel.iter().map(|v| v.iter().map(|&x| alg.to_digits(x)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        },
    });
    if let Some(w) = word {
        let w = BraidWord::parse(ctx.strands(), &w)?;
        let e = ctx.evaluate_word(&w)?;
        out["word"] = json!({
            "word": w.to_string(),
            "matrix": matrix_json(&alg, &e.matrix),
            "end": e.end,
            "pure": e.is_pure(),
        });
    }
    emit(&(serde_json::to_string_pretty(&out).expect("serializes") + "\n"), None)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze { p, l } => analyze(p, l),
        Command::Matrices { p, l, k, word } => matrices(p, l, &k, word),
        Command::Verify(args) => verify(args),
        Command::Scan(args) => run_scan(args),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
