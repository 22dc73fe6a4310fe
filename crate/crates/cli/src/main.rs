mod tables;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use isobelief::ben::{ppt_network, revise};
use isobelief::classic::{mass_from_sigma, mass_from_t, mass_from_v, pichon_t, smets_sigma, smets_v, WeightKind};
use isobelief::fusion::Rule;
use isobelief::iso::{decompose, reconstruct, CommitmentForm};
use isobelief::json::{
    decomposition_to_json, mass_to_json, parse_decomposition, parse_mass_stream, parse_network, parse_weights,
    pignistic_to_json, set_function_to_json, weights_to_json, FormatError, WeightsDoc,
};
use isobelief::lattice::Subset;
use isobelief::mass::{MassFunction, Tolerances};
use isobelief::measures::report;
use isobelief::random::{random_masses, RandomKind};
use isobelief::sweep::{fixed6, sweep, sweep_csv, SweepBase, SweepSpec};
use isobelief::transforms::{betp, set_transform, SetKind};
use isobelief::BeliefError;
use serde_json::value::RawValue;

#[derive(Parser)]
#[command(
    name = "isobelief",
    version,
    about = "Belief-function engine: transforms, decompositions, fusion, measures"
)]
struct Cli {
    /// Write output here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    /// Tolerance on the sum of input masses.
    #[arg(long, global = true)]
    sum_tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Inputs {
    /// JSON input files; stdin when none are given.
    files: Vec<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Set functions and pignistic distributions.
    Transform {
        #[arg(long, value_enum)]
        kind: TransformKind,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Isopignistic (tau, zeta) or classical (sigma, v, t) decomposition.
    Decompose {
        #[arg(long, value_enum, default_value = "tau")]
        form: Form,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Mass functions from decomposition or weight documents.
    Reconstruct {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Combine two or more mass functions.
    Fuse {
        #[arg(long, value_parser = parse_rule, required_unless_present = "table")]
        rule: Option<Rule>,
        /// Move the empty-set mass onto the other subsets afterwards.
        #[arg(long)]
        normalize: bool,
        /// CSV with one row per rule.
        #[arg(long)]
        table: bool,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Specificity and entropy report, one object per input.
    Measure {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Revise through a belief evolution network (the pignistic one by default).
    Ben {
        #[arg(long)]
        net: Option<PathBuf>,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Vary entries of a decomposition and rebuild the masses.
    Sweep {
        #[arg(long, value_parser = parse_base)]
        base: SweepBase,
        /// Subset index to vary; repeatable.
        #[arg(long = "target", required = true)]
        targets: Vec<u32>,
        #[arg(long, requires = "hi", allow_negative_numbers = true)]
        lo: Option<f64>,
        #[arg(long, requires = "lo", allow_negative_numbers = true)]
        hi: Option<f64>,
        #[arg(long, default_value_t = 41)]
        steps: usize,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Seeded random mass functions.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, value_parser = parse_kind, default_value = "any")]
        kind: RandomKind,
    },
    /// Regenerate the example tables as CSV files.
    Tables {
        #[arg(long, default_value = "fixtures")]
        fixtures: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TransformKind {
    Bel,
    Pl,
    B,
    Q,
    Betp,
    Betpn,
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    Tau,
    Zeta,
    Sigma,
    V,
    T,
}

fn parse_rule(s: &str) -> Result<Rule, String> {
    Rule::from_name(s).ok_or_else(|| {
        let names: Vec<&str> = Rule::ALL.iter().map(|r| r.name()).collect();
        format!("unknown rule {s:?}; expected one of {}", names.join(", "))
    })
}

fn parse_base(s: &str) -> Result<SweepBase, String> {
    s.parse()
}

fn parse_kind(s: &str) -> Result<RandomKind, String> {
    s.parse()
}

/// Exit 1 for model errors, 2 for input and output failures.
#[derive(Debug)]
enum CliError {
    Model(BeliefError),
    Input(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Model(_) => 1,
            CliError::Input(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Model(e) => write!(f, "{e}"),
            CliError::Input(e) => f.write_str(e),
        }
    }
}

impl From<BeliefError> for CliError {
    fn from(e: BeliefError) -> Self {
        CliError::Model(e)
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Invalid(e) => CliError::Model(e),
            other => CliError::Input(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn read_path(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Each input's text, with stdin standing in for an empty list.
fn read_inputs(inputs: &Inputs) -> CliResult<Vec<(String, String)>> {
    if inputs.files.is_empty() {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        return Ok(vec![("<stdin>".into(), s)]);
    }
    inputs
        .files
        .iter()
        .map(|p| Ok((p.display().to_string(), read_path(p)?)))
        .collect()
}

fn with_source(source: &str, e: CliError) -> CliError {
    match e {
        CliError::Input(msg) => CliError::Input(format!("{source}: {msg}")),
        model => model,
    }
}

fn read_masses(inputs: &Inputs, tol: Tolerances) -> CliResult<Vec<MassFunction>> {
    let mut out = Vec::new();
    for (source, text) in read_inputs(inputs)? {
        let ms = parse_mass_stream(&text, tol).map_err(|e| with_source(&source, e.into()))?;
        out.extend(ms);
    }
    Ok(out)
}

/// The raw documents of every input, in order.
fn read_documents(inputs: &Inputs) -> CliResult<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (source, text) in read_inputs(inputs)? {
        for doc in serde_json::Deserializer::from_str(&text).into_iter::<&RawValue>() {
            let doc = doc.map_err(|e| CliError::Input(format!("{source}: malformed JSON: {e}")))?;
            out.push((source.clone(), doc.get().to_string()));
        }
    }
    Ok(out)
}

fn lines(items: impl IntoIterator<Item = String>) -> String {
    items.into_iter().map(|s| s + "\n").collect()
}

fn decompose_one(m: &MassFunction, form: Form) -> CliResult<String> {
    Ok(match form {
        Form::Tau => decomposition_to_json(&decompose(m, CommitmentForm::Tau)?),
        Form::Zeta => decomposition_to_json(&decompose(m, CommitmentForm::Zeta)?),
        Form::Sigma => weights_to_json(&WeightsDoc::Weights(smets_sigma(m)?)),
        Form::V => weights_to_json(&WeightsDoc::Weights(smets_v(m)?)),
        Form::T => weights_to_json(&WeightsDoc::T(pichon_t(m))),
    })
}

fn reconstruct_one(doc: &str) -> CliResult<MassFunction> {
    let probe: serde_json::Value =
        serde_json::from_str(doc).map_err(|e| CliError::Input(format!("malformed JSON: {e}")))?;
    if probe.get("form").is_some() {
        return Ok(reconstruct(&parse_decomposition(doc)?)?);
    }
    Ok(match parse_weights(doc)? {
        WeightsDoc::Weights(w) if w.kind() == WeightKind::Sigma => mass_from_sigma(&w)?,
        WeightsDoc::Weights(w) => mass_from_v(&w)?,
        WeightsDoc::T(t) => mass_from_t(&t)?,
    })
}

fn fuse_table(ms: &[MassFunction], normalize: bool) -> CliResult<String> {
    let size = ms[0].frame().size();
    let mut out = String::from("rule");
    for i in 0..size {
        out += &format!(",m{i}");
    }
    out.push('\n');
    for rule in Rule::ALL {
        let mut r = rule.combine(ms)?;
        if normalize {
            r = r.normalized()?;
        }
        out += rule.name();
        for x in r.masses() {
            out.push(',');
            out += &fixed6(*x);
        }
        out.push('\n');
    }
    Ok(out)
}

fn run(cli: Cli) -> CliResult<String> {
    let tol = Tolerances {
        sum: cli.sum_tol.unwrap_or(Tolerances::default().sum),
        ..Default::default()
    };
    let text = match cli.command {
        Command::Transform { kind, inputs } => {
            let ms = read_masses(&inputs, tol)?;
            let docs = ms.iter().map(|m| {
                Ok(match kind {
                    TransformKind::Bel => set_function_to_json(&set_transform(m, SetKind::Bel)),
                    TransformKind::Pl => set_function_to_json(&set_transform(m, SetKind::Pl)),
                    TransformKind::B => set_function_to_json(&set_transform(m, SetKind::B)),
                    TransformKind::Q => set_function_to_json(&set_transform(m, SetKind::Q)),
                    TransformKind::Betp => pignistic_to_json(&betp(m, false)?),
                    TransformKind::Betpn => pignistic_to_json(&betp(m, true)?),
                })
            });
            lines(docs.collect::<CliResult<Vec<_>>>()?)
        }
        Command::Decompose { form, inputs } => {
            let ms = read_masses(&inputs, tol)?;
            lines(
                ms.iter()
                    .map(|m| decompose_one(m, form))
                    .collect::<CliResult<Vec<_>>>()?,
            )
        }
        Command::Reconstruct { inputs } => {
            let docs = read_documents(&inputs)?;
            let ms = docs
                .iter()
                .map(|(source, doc)| reconstruct_one(doc).map_err(|e| with_source(source, e)))
                .collect::<CliResult<Vec<_>>>()?;
            lines(ms.iter().map(mass_to_json))
        }
        Command::Fuse {
            rule,
            normalize,
            table,
            inputs,
        } => {
            let ms = read_masses(&inputs, tol)?;
            if ms.len() < 2 {
                return Err(BeliefError::TooFewSources(ms.len()).into());
            }
            if table {
                fuse_table(&ms, normalize)?
            } else {
                let rule = rule.expect("clap requires --rule without --table");
                let mut r = rule.combine(&ms)?;
                if normalize {
                    r = r.normalized()?;
                }
                lines([mass_to_json(&r)])
            }
        }
        Command::Measure { inputs } => {
            let ms = read_masses(&inputs, tol)?;
            let reports = ms
                .iter()
                .map(|m| Ok(serde_json::to_string(&report(m)?).expect("report serializes")))
                .collect::<CliResult<Vec<_>>>()?;
            lines(reports)
        }
        Command::Ben { net, inputs } => {
            let net = match net {
                Some(p) => {
                    Some(parse_network(&read_path(&p)?).map_err(|e| with_source(&p.display().to_string(), e.into()))?)
                }
                None => None,
            };
            let ms = read_masses(&inputs, tol)?;
            let revised = ms
                .iter()
                .map(|m| {
                    let r = match &net {
                        Some(net) => revise(m, net)?,
                        None => revise(m, &ppt_network(m.frame().clone()))?,
                    };
                    Ok(mass_to_json(&r))
                })
                .collect::<CliResult<Vec<_>>>()?;
            lines(revised)
        }
        Command::Sweep {
            base,
            targets,
            lo,
            hi,
            steps,
            inputs,
        } => {
            let ms = read_masses(&inputs, tol)?;
            let [m] = ms.as_slice() else {
                return Err(CliError::Input(format!(
                    "sweep takes one mass function, got {}",
                    ms.len()
                )));
            };
            let range = lo.zip(hi);
            let spec = SweepSpec::new(base, targets.into_iter().map(Subset).collect(), range, steps)?;
            sweep_csv(&sweep(&spec, m)?, m.n())
        }
        Command::Random { seed, n, count, kind } => {
            lines(random_masses(seed, n, count, kind)?.iter().map(mass_to_json))
        }
        Command::Tables { fixtures, out } => {
            let files = tables::generate(&fixtures)?;
            fs::create_dir_all(&out).map_err(|e| CliError::Input(format!("{}: {e}", out.display())))?;
            for (name, csv) in &files {
                let path = out.join(name);
                fs::write(&path, csv).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            }
            lines(files.iter().map(|(name, _)| out.join(name).display().to_string()))
        }
    };
    Ok(text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.output.clone();
    let result = run(cli).and_then(|text| match &output {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Input(format!("stdout: {e}"))),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("isobelief: {e}");
            ExitCode::from(e.code())
        }
    }
}
