mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quadsec_core::corpus::Family;
use quadsec_core::groebner::GbOptions;
use quadsec_core::{parse_input, Error, Field, InputModel};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::commands::Outcome;

#[derive(Parser)]
#[command(name = "quadsec", version, about = "Exact checks for quadric systems, secant varieties and flips")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone, Debug)]
pub struct Common {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest S-pair degree before a computation is abandoned.
    #[arg(long = "degree-cap", global = true, default_value_t = 40)]
    pub degree_cap: u32,
    /// Number of sampled trials for randomized checks.
    #[arg(long, global = true, default_value_t = 100)]
    pub trials: usize,
    /// Coefficient field: `q` or `gfp:<p>`.
    #[arg(long, global = true, default_value = "q")]
    pub field: String,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Name of the ideal to use when the input declares several.
    #[arg(long, global = true)]
    pub ideal: Option<String>,
    /// Name of a declared point.
    #[arg(long, global = true)]
    pub point: Option<String>,
    /// Use a generated corpus family instead of an input file, e.g. `rational-normal-curve:4`.
    #[arg(long, global = true)]
    pub corpus: Option<String>,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Clone, Debug)]
pub struct Input {
    /// Input file in the ring/ideal/point language.
    pub input: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Ideal,
    Quotient,
}

#[derive(Subcommand, Clone, Debug)]
pub enum Command {
    /// Reduced Gröbner basis and Hilbert data.
    Gb(Input),
    /// Minimal syzygies of the generators.
    Syz(Input),
    /// Graded Betti numbers of a minimal free resolution.
    Betti {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 3)]
        length: usize,
    },
    /// Condition (K_2) for the generators.
    CheckK2(Input),
    /// Condition (K_d) for generators of degree d.
    CheckKd {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 2)]
        degree: u32,
    },
    /// Condition (N_2) for a saturated ideal.
    CheckN2 {
        #[command(flatten)]
        input: Input,
        /// Last twist of the normality check (default 2d+2 with d = 2).
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Lines contained in X, and reduced four-point spans.
    Lines(Input),
    /// Ideal of the secant variety.
    Secant(Input),
    /// Secant deficiency and the image-dimension formula.
    Deficiency(Input),
    /// Fibers of the quadric map through a given or sampled points.
    Fiber(Input),
    /// Sheaf cohomology of twisted ideal or structure sheaves.
    Cohomology {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Kind::Ideal)]
        kind: Kind,
        /// Power of the ideal (saturated).
        #[arg(long, default_value_t = 1)]
        power: u32,
        #[arg(long = "k-min", default_value_t = -3, allow_hyphen_values = true)]
        k_min: i64,
        #[arg(long = "k-max", default_value_t = 6, allow_hyphen_values = true)]
        k_max: i64,
    },
    /// Vanishing of higher cohomology of ideal powers above the threshold.
    VanishScan {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 2)]
        d: u32,
        #[arg(long = "a-min", default_value_t = 1)]
        a_min: u32,
        #[arg(long = "a-max", default_value_t = 2)]
        a_max: u32,
        #[arg(long, default_value_t = 3)]
        window: i64,
        /// Also check h^i(I^a(2a-1)) = 0 for this power.
        #[arg(long)]
        second: Option<u32>,
    },
    /// Picard-lattice identities of the flip construction.
    FlipVerify,
    /// Evaluate vanishing thresholds.
    Thresholds {
        #[command(flatten)]
        input: Input,
        /// little, veronese or second (default: all three).
        #[arg(long)]
        variant: Option<String>,
        #[arg(long, default_value_t = 2)]
        d: i64,
        #[arg(long, default_value_t = 1)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        e: Option<i64>,
        #[arg(long)]
        n: Option<i64>,
        #[arg(long)]
        r: Option<i64>,
    },
    /// Every check on the default corpus (or on one input).
    ReportAll {
        #[command(flatten)]
        input: Input,
        #[arg(long = "a-max", default_value_t = 1)]
        a_max: u32,
    },
    /// Print a generated corpus family in the input language.
    Corpus {
        /// e.g. `rational-normal-curve:3`, `veronese:2,2`, `segre:1,2`, `complete-intersection:3:2,2:0`.
        family: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Gb(_) => "gb",
            Command::Syz(_) => "syz",
            Command::Betti { .. } => "betti",
            Command::CheckK2(_) => "check-k2",
            Command::CheckKd { .. } => "check-kd",
            Command::CheckN2 { .. } => "check-n2",
            Command::Lines(_) => "lines",
            Command::Secant(_) => "secant",
            Command::Deficiency(_) => "deficiency",
            Command::Fiber(_) => "fiber",
            Command::Cohomology { .. } => "cohomology",
            Command::VanishScan { .. } => "vanish-scan",
            Command::FlipVerify => "flip-verify",
            Command::Thresholds { .. } => "thresholds",
            Command::ReportAll { .. } => "report-all",
            Command::Corpus { .. } => "corpus",
        }
    }

    fn input(&self) -> Option<&Input> {
        match self {
            Command::Gb(i)
            | Command::Syz(i)
            | Command::CheckK2(i)
            | Command::Lines(i)
            | Command::Secant(i)
            | Command::Deficiency(i)
            | Command::Fiber(i) => Some(i),
            Command::Betti { input, .. }
            | Command::CheckKd { input, .. }
            | Command::CheckN2 { input, .. }
            | Command::Cohomology { input, .. }
            | Command::VanishScan { input, .. }
            | Command::Thresholds { input, .. }
            | Command::ReportAll { input, .. } => Some(input),
            Command::FlipVerify | Command::Corpus { .. } => None,
        }
    }
}

/// The loaded input: a model and the hash of its source text.
pub struct Loaded {
    pub model: InputModel,
    pub hash: String,
}

fn parse_field(s: &str) -> Result<Field, Error> {
    match s {
        "q" => Ok(Field::Q),
        _ => match s.strip_prefix("gfp:").map(str::parse::<u32>) {
            Some(Ok(p)) => Field::gfp(p),
            _ => Err(Error::InvalidArgument(format!("unknown field '{s}'; use q or gfp:<p>"))),
        },
    }
}

fn sha256(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn load(input: Option<&Input>, common: &Common, field: Field) -> Result<Option<Loaded>, Error> {
    if let Some(path) = input.and_then(|i| i.input.as_ref()) {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
        return Ok(Some(Loaded { model: parse_input(&text, field)?, hash: sha256(&text) }));
    }
    if let Some(spec) = &common.corpus {
        let family: Family = spec.parse()?;
        let model = family.generate(field)?.to_model();
        let text = model.to_string();
        return Ok(Some(Loaded { model, hash: sha256(&text) }));
    }
    Ok(None)
}

fn exit_code(e: &Error) -> u8 {
    if e.is_resource_limit() {
        3
    } else {
        2
    }
}

fn run(cli: &Cli) -> (Map<String, Value>, u8) {
    let common = &cli.common;
    let mut env = Map::new();
    env.insert("command".into(), Value::String(cli.command.name().into()));
    env.insert("engine_version".into(), Value::String(env!("CARGO_PKG_VERSION").into()));
    env.insert("seed".into(), report::int(common.seed));
    env.insert("degree_cap".into(), report::int(common.degree_cap));
    env.insert("field".into(), Value::String(common.field.clone()));
    let start = Instant::now();
    let opts = GbOptions { degree_cap: common.degree_cap, ..GbOptions::default() };
    let outcome = parse_field(&common.field).and_then(|field| {
        let loaded = load(cli.command.input(), common, field)?;
        env.insert("input_sha256".into(), loaded.as_ref().map_or(Value::Null, |l| Value::String(l.hash.clone())));
        commands::dispatch(&cli.command, loaded.as_ref(), common, field, &opts)
    });
    let code = match outcome {
        Ok(Outcome { parameters, result, violations }) => {
            env.insert("parameters".into(), parameters);
            env.insert("result".into(), result);
            env.insert("status".into(), Value::String(if violations { "violation" } else { "ok" }.into()));
            u8::from(violations)
        }
        Err(e) => {
            env.insert(
                "error".into(),
                report::obj([("code", Value::String(e.code().into())), ("message", Value::String(e.to_string()))]),
            );
            env.insert("status".into(), Value::String("error".into()));
            exit_code(&e)
        }
    };
    env.entry("input_sha256").or_insert(Value::Null);
    if common.timing {
        env.insert("wall_clock_ms".into(), report::int(start.elapsed().as_millis()));
    }
    (env, code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (env, code) = run(&cli);
    let value = Value::Object(env);
    let text = match cli.common.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&value).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => report::render_text(&value),
    };
    match &cli.common.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code)
}
