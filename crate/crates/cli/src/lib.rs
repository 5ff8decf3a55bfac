//! The `dichot` command-line tool.
//!
//! Exit codes: 0 the property holds or the command succeeded, 1 it fails
//! (or a crosscheck found a mismatch), 2 the answer is unknown or the
//! request is unsupported, 64 usage errors, 65 malformed input data, 66 an
//! unreadable input file, 74 an output error.

mod crosscheck;
mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use dichotomous::detection::{detect, embed_from_witness, StructureProperty, Verdict, Witness};
use dichotomous::format::{parse_profile, write_profile};
use dichotomous::generate::{generate, GenParams, GenSpec, Structure};
use dichotomous::refine::{refine_pe, refine_psp};
use dichotomous::rules::{score, solve, Algorithm, Rule, Strategy};
use dichotomous::{ApprovalProfile, Committee, Error, Rational, WeightScheme};

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_NOINPUT: i32 = 66;
pub const EXIT_IO: i32 = 74;

#[derive(Parser, Debug)]
#[command(
    name = "dichot",
    version,
    about = "Structured approval profiles and committee selection"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Test a profile for a structural property.
    Detect {
        file: PathBuf,
        /// Property name (VI, CI, VEI, CEI, WSC, SSC, PART, 2PART, ...) or `all`.
        #[arg(long)]
        property: String,
        #[arg(long)]
        json: bool,
    },
    /// Compute a winning committee.
    Solve {
        file: PathBuf,
        #[command(flatten)]
        rule: RuleArgs,
        #[arg(short = 'k')]
        k: usize,
        /// `auto`, `oracle`, or an algorithm name.
        #[arg(long, default_value = "auto")]
        algo: String,
        #[arg(long)]
        json: bool,
    },
    /// Score a given committee.
    Score {
        file: PathBuf,
        #[command(flatten)]
        rule: RuleArgs,
        /// Comma-separated candidate labels.
        #[arg(long, allow_hyphen_values = true)]
        committee: String,
        #[arg(long)]
        json: bool,
    },
    /// Write a random profile with the given structure.
    Generate {
        #[arg(long)]
        structure: String,
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'm')]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest vote size (VI and CI generators).
        #[arg(long)]
        max_vote_size: Option<usize>,
        /// Largest candidate degree (VI and CI generators).
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare structured algorithms with the oracle on generated profiles.
    Crosscheck {
        #[arg(long)]
        structure: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, default_value_t = 8)]
        max_m: usize,
        #[arg(long, default_value_t = 4)]
        max_k: usize,
    },
    /// Print a 1-D Euclidean embedding built from a structural witness.
    Embed {
        file: PathBuf,
        #[arg(long, value_enum)]
        from: EmbedFrom,
        #[arg(long)]
        json: bool,
    },
    /// Print a single-peaked or 1-Euclidean total-order refinement.
    Refine {
        file: PathBuf,
        #[arg(long, value_enum)]
        target: Target,
    },
}

#[derive(clap::Args, Debug)]
struct RuleArgs {
    #[arg(long, value_enum)]
    rule: RuleName,
    /// `harmonic`, `cc`, or a list like `1,1/2` (zeros follow the list).
    #[arg(long, default_value = "harmonic")]
    weights: String,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum RuleName {
    Pav,
    Mav,
    Wpav,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum EmbedFrom {
    Cei,
    Vei,
    Wsc,
    Part,
    Ci,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Target {
    Psp,
    Pe,
}

/// A failure with its exit code and message.
struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Unsupported(_)
            | Error::NoApplicableAlgorithm(_)
            | Error::NotInDomain(_)
            | Error::OverLimit { .. }
            | Error::Unsatisfiable(_) => EXIT_UNKNOWN,
            _ => EXIT_DATA,
        };
        Failure(code, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure(EXIT_IO, e.to_string())
    }
}

type CliResult = Result<i32, Failure>;

fn read_profile(path: &PathBuf) -> Result<ApprovalProfile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure(EXIT_NOINPUT, format!("{}: {e}", path.display())))?;
    parse_profile(&text).map_err(|e| Failure(EXIT_DATA, format!("{}: {e}", path.display())))
}

fn parse_weights(s: &str) -> Result<WeightScheme, Failure> {
    match s.trim().to_ascii_lowercase().as_str() {
        "harmonic" => Ok(WeightScheme::harmonic()),
        "cc" => Ok(WeightScheme::chamberlin_courant()),
        list => {
            let entries = list
                .split(',')
                .map(|t| t.trim().parse::<Rational>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| Failure(EXIT_USAGE, format!("invalid weight list `{s}`")))?;
            WeightScheme::truncated(entries).map_err(|e| Failure(EXIT_USAGE, e.to_string()))
        }
    }
}

fn parse_rule(args: &RuleArgs) -> Result<Rule, Failure> {
    match args.rule {
        RuleName::Pav => Ok(Rule::pav()),
        RuleName::Mav => Ok(Rule::Mav),
        RuleName::Wpav => parse_weights(&args.weights).map(Rule::Wpav),
    }
}

fn parse_property(s: &str) -> Result<StructureProperty, Failure> {
    s.parse()
        .map_err(|_| Failure(EXIT_USAGE, format!("unknown property `{s}`")))
}

fn parse_structure(s: &str) -> Result<Structure, Failure> {
    s.parse()
        .map_err(|_| Failure(EXIT_USAGE, format!("unknown structure `{s}`")))
}

fn parse_committee(p: &ApprovalProfile, s: &str) -> Result<Committee, Failure> {
    let members = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            p.index_of(t)
                .ok_or_else(|| Failure(EXIT_DATA, format!("unknown candidate `{t}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Committee::new(members, p.m())?)
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Holds => EXIT_HOLDS,
        Verdict::Fails => EXIT_FAILS,
        Verdict::Unknown => EXIT_UNKNOWN,
    }
}

fn cmd_detect(out: &mut dyn Write, file: &PathBuf, property: &str, json: bool) -> CliResult {
    let p = read_profile(file)?;
    if !property.eq_ignore_ascii_case("all") {
        let r = detect(&p, parse_property(property)?)?;
        if json {
            writeln!(out, "{}", render::detection_json(&p, &r))?;
        } else {
            write!(out, "{}", render::detection_text(&p, &r))?;
        }
        return Ok(verdict_code(r.verdict));
    }
    // Every property in turn; unsupported ones are listed, not fatal.
    let mut rows = Vec::new();
    for prop in StructureProperty::ALL {
        match detect(&p, prop) {
            Ok(r) if json => rows.push(render::detection_json(&p, &r)),
            Ok(r) => writeln!(out, "{}", render::detection_text(&p, &r))?,
            Err(Error::Unsupported(_)) if json => rows.push(serde_json::json!({
                "property": prop.name(), "holds": null, "witness": null, "method": "unsupported",
            })),
            Err(Error::Unsupported(_)) => {
                write!(out, "property: {}\nverdict: unsupported\n\n", prop.name())?
            }
            Err(e) => return Err(e.into()),
        }
    }
    if json {
        writeln!(out, "{}", serde_json::Value::Array(rows))?;
    }
    Ok(EXIT_HOLDS)
}

fn parse_strategy(s: &str) -> Result<Strategy, Failure> {
    match s.trim().to_ascii_lowercase().as_str() {
        "auto" => Ok(Strategy::Auto),
        "oracle" => Ok(Strategy::Oracle),
        name => name
            .parse::<Algorithm>()
            .map(Strategy::Force)
            .map_err(|_| Failure(EXIT_USAGE, format!("unknown algorithm `{s}`"))),
    }
}

fn cmd_solve(
    out: &mut dyn Write,
    file: &PathBuf,
    rule: &RuleArgs,
    k: usize,
    algo: &str,
    json: bool,
) -> CliResult {
    let rule = parse_rule(rule)?;
    let strategy = parse_strategy(algo)?;
    let p = read_profile(file)?;
    let s = solve(&p, k, &rule, strategy)?;
    if json {
        writeln!(out, "{}", render::solution_json(&p, &s))?;
    } else {
        write!(out, "{}", render::solution_text(&p, &s))?;
    }
    Ok(EXIT_HOLDS)
}

fn cmd_score(
    out: &mut dyn Write,
    file: &PathBuf,
    rule: &RuleArgs,
    committee: &str,
    json: bool,
) -> CliResult {
    let rule = parse_rule(rule)?;
    let p = read_profile(file)?;
    let w = parse_committee(&p, committee)?;
    let s = score(&p, &rule, &w)?;
    if json {
        let v = serde_json::json!({
            "committee": w.labels(&p),
            "score": render::rational_json(&s.as_rational()),
        });
        writeln!(out, "{v}")?;
    } else {
        writeln!(out, "{s}")?;
    }
    Ok(EXIT_HOLDS)
}

fn cmd_embed(out: &mut dyn Write, file: &PathBuf, from: EmbedFrom, json: bool) -> CliResult {
    let prop = match from {
        EmbedFrom::Cei => StructureProperty::Cei,
        EmbedFrom::Vei => StructureProperty::Vei,
        EmbedFrom::Wsc => StructureProperty::Wsc,
        EmbedFrom::Part => StructureProperty::Part,
        EmbedFrom::Ci => StructureProperty::Ci,
    };
    let p = read_profile(file)?;
    let r = detect(&p, prop)?;
    if !r.holds() {
        return Err(Failure(
            EXIT_FAILS,
            format!("profile is not {}", prop.name()),
        ));
    }
    let e = embed_from_witness(&p, prop, &r.witness)?;
    if json {
        writeln!(out, "{}", render::embedding_json(&p, &e))?;
    } else {
        write!(out, "{}", render::embedding_text(&p, &e))?;
    }
    Ok(EXIT_HOLDS)
}

fn cmd_refine(out: &mut dyn Write, file: &PathBuf, target: Target) -> CliResult {
    let p = read_profile(file)?;
    let r = detect(&p, StructureProperty::Ci)?;
    let Witness::CandidateOrder(axis) = &r.witness else {
        return Err(Failure(
            EXIT_FAILS,
            "profile is not CI, so no refinement is constructed".into(),
        ));
    };
    match target {
        Target::Psp => {
            let t = refine_psp(&p, axis)?;
            writeln!(
                out,
                "axis: {}",
                render::labels(&p, axis.iter().copied()).join(",")
            )?;
            write!(out, "{}", render::rankings_text(&p, &t))?;
        }
        Target::Pe => {
            let e = embed_from_witness(&p, StructureProperty::Ci, &r.witness)?;
            let (t, perturbed) = refine_pe(&p, &e)?;
            write!(out, "{}", render::rankings_text(&p, &t))?;
            write!(out, "{}", render::embedding_text(&p, &perturbed))?;
        }
    }
    Ok(EXIT_HOLDS)
}

#[allow(clippy::too_many_arguments)]
fn cmd_generate(
    out: &mut dyn Write,
    structure: &str,
    n: usize,
    m: usize,
    seed: u64,
    max_vote_size: Option<usize>,
    max_degree: Option<usize>,
    path: Option<&PathBuf>,
) -> CliResult {
    let params = GenParams {
        max_vote_size,
        max_degree,
        spread: None,
    };
    let p = generate(&GenSpec::new(parse_structure(structure)?, n, m, seed).with_params(params))?;
    let text = write_profile(&p);
    match path {
        Some(path) => std::fs::write(path, text)?,
        None => write!(out, "{text}")?,
    }
    Ok(EXIT_HOLDS)
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> CliResult {
    match cli.command {
        Command::Detect {
            file,
            property,
            json,
        } => cmd_detect(out, &file, &property, json),
        Command::Solve {
            file,
            rule,
            k,
            algo,
            json,
        } => cmd_solve(out, &file, &rule, k, &algo, json),
        Command::Score {
            file,
            rule,
            committee,
            json,
        } => cmd_score(out, &file, &rule, &committee, json),
        Command::Generate {
            structure,
            n,
            m,
            seed,
            max_vote_size,
            max_degree,
            out: path,
        } => cmd_generate(
            out,
            &structure,
            n,
            m,
            seed,
            max_vote_size,
            max_degree,
            path.as_ref(),
        ),
        Command::Crosscheck {
            structure,
            trials,
            seed,
            max_n,
            max_m,
            max_k,
        } => {
            let cfg = crosscheck::Config {
                structure: parse_structure(&structure)?,
                trials,
                seed,
                max_n,
                max_m,
                max_k,
            };
            let summary = crosscheck::run(&cfg)?;
            crosscheck::report(out, &cfg, &summary)?;
            Ok(if summary.mismatch.is_some() {
                EXIT_FAILS
            } else {
                EXIT_HOLDS
            })
        }
        Command::Embed { file, from, json } => cmd_embed(out, &file, from, json),
        Command::Refine { file, target } => cmd_refine(out, &file, target),
    }
}

/// Runs the tool on `argv` (including the program name) and returns the
/// exit code. Results go to `out`, diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_HOLDS
            };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "dichot: {msg}");
            code
        }
    }
}
