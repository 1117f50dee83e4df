use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};

use distinguon::density::{trace_norm, werner_mixture};
use distinguon::distributions::{compute, DistMatrixFile, DistributionFile, LabelsFile};
use distinguon::interferometer::{haar_random_unitary, reck_decompose, MatrixFile};
use distinguon::permanent::HARD_MAX_PERMANENT_SIZE;
use distinguon::sampler::{compare, sample_distinguishable_direct, sample_exact_labelled, SampleBatch};
use distinguon::verify::{run_suite, Suite};
use distinguon::{ComplexMatrix, Error, LabelConfiguration, Limits, Model, ModeWord, Occupation, OccupationDistribution, RandomSeed};

use crate::args::{Cli, Command, Format, Method, ModelArgs, ModelKind, SuiteArg};
use crate::manifest::{manifest_path, sha256_hex, FileDigest, RunManifest};

/// A self-check ran and found a discrepancy (exit code 3).
#[derive(Debug)]
pub struct VerificationFailed(pub String);

impl fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "verification failed: {}", self.0)
    }
}

impl std::error::Error for VerificationFailed {}

const MAX_N_VAR: &str = "DISTINGUON_MAX_N";

/// Size caps from the environment and `--unsafe-size`.
pub fn limits(unsafe_size: bool) -> Result<Limits> {
    let mut limits = Limits::default();
    if let Ok(v) = std::env::var(MAX_N_VAR) {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("{MAX_N_VAR}={v:?} is not a non-negative integer")))?;
        limits.max_permanent_size = n.max(limits.max_permanent_size).min(HARD_MAX_PERMANENT_SIZE);
    }
    if unsafe_size {
        limits.max_permanent_size = HARD_MAX_PERMANENT_SIZE;
        limits.max_basis_size = u128::MAX;
        limits.max_partial_bosons = 12;
    }
    Ok(limits)
}

// What a command produced, for the manifest.
struct Produced {
    output: PathBuf,
    inputs: Vec<PathBuf>,
    seeds: Vec<u64>,
}

/// Run `cli`; `args` is the argument list after the program name.
pub fn run(cli: &Cli, args: &[String], write_manifest: bool) -> Result<()> {
    let start = Instant::now();
    let limits = limits(cli.unsafe_size)?;
    let produced = match &cli.command {
        Command::GenUnitary { modes, seed, out } => gen_unitary(*modes, *seed, out.as_deref())?,
        Command::Decompose { input, out } => decompose(input, out.as_deref())?,
        Command::Distribution { model, format, out } => distribution(model, *format, out.as_deref(), &limits)?,
        Command::Sample { model, shots, seed, method, out } => {
            sample(model, *shots, *seed, *method, out.as_deref(), &limits)?
        }
        Command::Stats { samples, dist } => stats(samples, dist)?,
        Command::Verify { suite, seed } => verify(*suite, *seed)?,
        Command::TraceNorm { n, eps } => trace_norm_cmd(*n, *eps)?,
        Command::Replay { manifest } => replay(manifest)?,
    };
    if let (Some(p), true) = (produced, write_manifest) {
        let manifest = RunManifest {
            command: command_name(&cli.command).to_string(),
            args: args.to_vec(),
            seeds: p.seeds,
            version: env!("CARGO_PKG_VERSION").to_string(),
            inputs: p.inputs.iter().map(|i| FileDigest::of(i)).collect::<Result<_>>()?,
            output: FileDigest::of(&p.output)?,
            duration_seconds: start.elapsed().as_secs_f64(),
        };
        let path = manifest.write()?;
        eprintln!("wrote {} and {}", p.output.display(), path.display());
    }
    Ok(())
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::GenUnitary { .. } => "gen-unitary",
        Command::Decompose { .. } => "decompose",
        Command::Distribution { .. } => "distribution",
        Command::Sample { .. } => "sample",
        Command::Stats { .. } => "stats",
        Command::Verify { .. } => "verify",
        Command::TraceNorm { .. } => "trace-norm",
        Command::Replay { .. } => "replay",
    }
}

// Write to `out`, or stdout when absent (no manifest then).
fn emit(out: Option<&Path>, text: &str, inputs: Vec<PathBuf>, seeds: Vec<u64>) -> Result<Option<Produced>> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            Ok(Some(Produced { output: path.to_path_buf(), inputs, seeds }))
        }
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(None)
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())).into())
}

fn pretty<T: serde::Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn gen_unitary(modes: usize, seed: u64, out: Option<&Path>) -> Result<Option<Produced>> {
    let u = haar_random_unitary(modes, RandomSeed(seed))?;
    emit(out, &pretty(&MatrixFile::from_matrix(&u)?)?, vec![], vec![seed])
}

fn decompose(input: &Path, out: Option<&Path>) -> Result<Option<Produced>> {
    let u = read_json::<MatrixFile>(input)?.to_matrix()?;
    let seq = reck_decompose(&u)?;
    emit(out, &pretty(&seq)?, vec![input.to_path_buf()], vec![])
}

struct Prepared {
    model: Model,
    input: Occupation,
    unitary: ComplexMatrix,
    files: Vec<PathBuf>,
}

// Validate the cheap arguments before touching any file.
fn prepare(args: &ModelArgs) -> Result<Prepared> {
    let input = Occupation::parse(&args.input)?;
    let partial = args.model == ModelKind::Partial;
    if !partial && (args.labels.is_some() || args.smatrix.is_some()) {
        bail!(Error::InvalidInput("--labels and --smatrix apply to the partial model only".into()));
    }
    if partial && args.labels.is_none() && args.smatrix.is_none() {
        bail!(Error::InvalidInput("the partial model needs --labels or --smatrix".into()));
    }
    match (args.model, args.lost) {
        (ModelKind::Lossy, None) => bail!(Error::InvalidInput("the lossy model needs --lost".into())),
        (ModelKind::Lossy, Some(k)) if k > input.bosons() => bail!(Error::InvalidInput(format!(
            "cannot lose {k} of the {} input bosons",
            input.bosons()
        ))),
        (ModelKind::Lossy, _) => {}
        (_, Some(_)) => bail!(Error::InvalidInput("--lost applies to the lossy model only".into())),
        _ => {}
    }
    let Some(unitary_path) = &args.unitary else {
        bail!(Error::InvalidInput("--unitary is required".into()));
    };
    let mut files = vec![unitary_path.clone()];
    let unitary = read_json::<MatrixFile>(unitary_path)?.to_matrix()?;
    let model = match args.model {
        ModelKind::Ideal => Model::Ideal,
        ModelKind::Distinguishable => Model::Distinguishable,
        ModelKind::Lossy => Model::Lossy { lost: args.lost.unwrap_or(0) },
        ModelKind::Partial => {
            if let Some(path) = &args.labels {
                files.push(path.clone());
                let labels = read_json::<LabelsFile>(path)?.to_labels(input.modes())?;
                Model::Partial(LabelConfiguration::Labels(labels))
            } else {
                let path = args.smatrix.as_ref().expect("checked above");
                files.push(path.clone());
                Model::Partial(LabelConfiguration::Matrix(read_json::<DistMatrixFile>(path)?.to_dist_matrix()?))
            }
        }
    };
    Ok(Prepared { model, input, unitary, files })
}

fn distribution(args: &ModelArgs, format: Format, out: Option<&Path>, limits: &Limits) -> Result<Option<Produced>> {
    let p = prepare(args)?;
    let dist = compute(&p.model, &p.unitary, &p.input, limits)?;
    let file = DistributionFile::from(&dist);
    let text = match format {
        Format::Json => pretty(&file)?,
        Format::Csv => file.to_csv(),
    };
    emit(out, &text, p.files, vec![])
}

fn sample(
    args: &ModelArgs,
    shots: usize,
    seed: u64,
    method: Method,
    out: Option<&Path>,
    limits: &Limits,
) -> Result<Option<Produced>> {
    let p = prepare(args)?;
    let batch = match method {
        Method::Exact => {
            let dist = compute(&p.model, &p.unitary, &p.input, limits)?;
            sample_exact_labelled(&dist, shots, RandomSeed(seed), p.model.name())?
        }
        Method::Direct => {
            if p.model != Model::Distinguishable {
                bail!(Error::InvalidInput("--method direct needs --model distinguishable".into()));
            }
            sample_distinguishable_direct(&p.unitary, &p.input, shots, RandomSeed(seed))?
        }
    };
    let mut text = String::with_capacity(batch.len() * 4 * batch.m);
    for s in &batch.samples {
        text.push_str(&serde_json::to_string(s)?);
        text.push('\n');
    }
    emit(out, &text, p.files, vec![seed])
}

fn stats(samples: &Path, dist: &Path) -> Result<Option<Produced>> {
    let exact = OccupationDistribution::try_from(read_json::<DistributionFile>(dist)?)?;
    let text = fs::read_to_string(samples).with_context(|| format!("reading {}", samples.display()))?;
    let parsed = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str::<Occupation>(l)
                .map_err(|e| Error::InvalidInput(format!("{} line {}: {e}", samples.display(), i + 1)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let batch = SampleBatch {
        m: exact.modes(),
        n: exact.bosons(),
        samples: parsed,
        seed: RandomSeed(0),
        model: "file".into(),
    };
    let (tvd, chi) = compare(&batch, &exact)?;
    println!("samples     {}", batch.len());
    println!("tvd         {tvd:.6}");
    println!("chi-square  {:.4} (dof {})", chi.statistic, chi.degrees_of_freedom);
    println!("p-value     {:.6}", chi.p_value);
    Ok(None)
}

fn verify(suite: SuiteArg, seed: u64) -> Result<Option<Produced>> {
    let suites: Vec<Suite> = match suite {
        SuiteArg::RepTheory => vec![Suite::RepTheory],
        SuiteArg::Oracle => vec![Suite::Oracle],
        SuiteArg::Limits => vec![Suite::Limits],
        SuiteArg::Sampling => vec![Suite::Sampling],
        SuiteArg::All => Suite::ALL.to_vec(),
    };
    let mut failed = Vec::new();
    for s in suites {
        let report = run_suite(s, RandomSeed(seed))?;
        println!("suite {s}");
        for c in &report.checks {
            println!("  {:<4} {:<52} {}", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail);
            if !c.passed {
                failed.push(format!("{s}: {}", c.name));
            }
        }
    }
    if !failed.is_empty() {
        bail!(VerificationFailed(failed.join(", ")));
    }
    Ok(None)
}

/// Mismatch allowed between the computed trace norm and `1 + eps (n - 1)`.
const TRACE_NORM_TOLERANCE: f64 = 1e-8;

fn trace_norm_cmd(n: usize, eps: f64) -> Result<Option<Produced>> {
    if n == 0 {
        bail!(Error::InvalidInput("--n must be positive".into()));
    }
    let word = ModeWord::new((0..n).collect(), n)?;
    let rho = werner_mixture(&word, eps)?;
    let computed = trace_norm(&rho.partial_transpose_first())?;
    let closed = 1.0 + eps * (n as f64 - 1.0);
    println!("trace norm   {computed:.12}");
    println!("1+eps(n-1)   {closed:.12}");
    let diff = (computed - closed).abs();
    println!("difference   {diff:.3e}");
    if diff.is_nan() || diff > TRACE_NORM_TOLERANCE {
        bail!(VerificationFailed(format!("trace norm {computed} differs from {closed}")));
    }
    Ok(None)
}

// Swap the value of `--out` for `replacement`.
fn redirect_out(args: &[String], replacement: &Path) -> Result<Vec<String>> {
    let mut out = Vec::with_capacity(args.len());
    let mut found = false;
    let mut iter = args.iter();
    while let Some(a) = iter.next() {
        if a == "--out" {
            iter.next();
            out.push(a.clone());
            out.push(replacement.display().to_string());
            found = true;
        } else if a.starts_with("--out=") {
            out.push(format!("--out={}", replacement.display()));
            found = true;
        } else {
            out.push(a.clone());
        }
    }
    if !found {
        bail!(Error::InvalidInput("manifest arguments have no --out".into()));
    }
    Ok(out)
}

fn replay(path: &Path) -> Result<Option<Produced>> {
    use clap::Parser;
    let manifest = RunManifest::read(path)?;
    if manifest.version != env!("CARGO_PKG_VERSION") {
        eprintln!(
            "note: manifest written by version {}, replaying with {}",
            manifest.version,
            env!("CARGO_PKG_VERSION")
        );
    }
    for input in &manifest.inputs {
        let now = FileDigest::of(&input.path)?;
        if now.sha256 != input.sha256 {
            bail!(Error::InvalidInput(format!("input {} changed since the run", input.path.display())));
        }
    }
    let mut target = manifest.output.path.clone().into_os_string();
    target.push(".replay");
    let target = PathBuf::from(target);
    let args = redirect_out(&manifest.args, &target)?;
    let cli = Cli::try_parse_from(std::iter::once("distinguon".to_string()).chain(args.iter().cloned()))
        .map_err(|e| Error::InvalidInput(format!("manifest arguments do not parse: {e}")))?;
    if matches!(cli.command, Command::Replay { .. }) {
        bail!(Error::InvalidInput("a manifest cannot replay a replay".into()));
    }
    let outcome = run(&cli, &args, false);
    let digest = fs::read(&target).map(|b| sha256_hex(&b));
    let _ = fs::remove_file(&target);
    let _ = fs::remove_file(manifest_path(&target));
    outcome?;
    let digest = digest.with_context(|| format!("reading {}", target.display()))?;
    println!("recorded  {}", manifest.output.sha256);
    println!("replayed  {digest}");
    if digest != manifest.output.sha256 {
        bail!(VerificationFailed(format!("replayed output of {} differs", manifest.output.path.display())));
    }
    println!("identical");
    Ok(None)
}
