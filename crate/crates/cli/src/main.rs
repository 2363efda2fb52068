use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use fra_core::assessment::{assess_family, compare, AssessOptions, AssessmentProfile};
use fra_core::catalog::{parse_index_list, Arity, IndexKind};
use fra_core::curve::align_family;
use fra_core::io::{emit_sweep, load_family, read_sweep, DatasetManifest, ManifestCase};
use fra_core::report::{emit_index_matrix, emit_profile_plot, emit_ranking, emit_sensitivity};
use fra_core::synth::{format_percent, sweep, FaultSpec, LadderConfig, DEFAULT_CONTACT_RESISTANCE};
use fra_core::{Normalization, TwoArrayIndexKind};

/// Compare frequency response sweeps of transformer windings.
#[derive(Parser)]
#[command(name = "fra", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate indices between a reference sweep and one test sweep.
    Compute(ComputeArgs),
    /// Profile, score and rank every index over a dataset manifest.
    Assess(AssessArgs),
    /// Generate a reference sweep and faulted sweeps from an RLC ladder.
    Synth(SynthArgs),
    /// Check sweep CSV files or dataset manifests.
    Validate(ValidateArgs),
}

#[derive(Args)]
struct ComputeArgs {
    /// Reference (sound) sweep CSV.
    reference: PathBuf,
    /// Test sweep CSV.
    case: PathBuf,
    /// Comma-separated index abbreviations, case-insensitive. Defaults to
    /// all two-array indices. One-array indices report the percent change
    /// from the reference.
    #[arg(long, value_name = "LIST")]
    indices: Option<String>,
    /// Output file, `-` for stdout.
    #[arg(short, long, default_value = "-")]
    output: PathBuf,
}

#[derive(Args)]
struct AssessArgs {
    /// Dataset manifest JSON.
    manifest: PathBuf,
    /// Directory for the report files.
    outdir: PathBuf,
    /// Overrides the manifest's normalization mode.
    #[arg(long, value_enum)]
    normalization: Option<NormalizationArg>,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormalizationArg {
    Absolute,
    Signed,
}

impl From<NormalizationArg> for Normalization {
    fn from(n: NormalizationArg) -> Self {
        match n {
            NormalizationArg::Absolute => Normalization::Absolute,
            NormalizationArg::Signed => Normalization::Signed,
        }
    }
}

#[derive(Args)]
struct SynthArgs {
    /// Ladder configuration JSON.
    config: PathBuf,
    /// Directory for the sweeps and manifest.
    outdir: PathBuf,
    /// Shorted percentages of the winding, e.g. `15,16.5,18.5,25,37.5,50`.
    #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
    severities: Vec<f64>,
    /// Resistance of the short-circuit contact, ohm.
    #[arg(long, default_value_t = DEFAULT_CONTACT_RESISTANCE)]
    contact_resistance: f64,
}

#[derive(Args)]
struct ValidateArgs {
    /// Sweep CSVs or manifests (`.json`).
    #[arg(required = true)]
    paths: Vec<PathBuf>,
    /// Output file, `-` for stdout.
    #[arg(short, long, default_value = "-")]
    output: PathBuf,
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors and 0 for --help/--version.
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute(a) => run_compute(a),
        Command::Assess(a) => run_assess(a),
        Command::Synth(a) => run_synth(a),
        Command::Validate(a) => run_validate(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", diagnostic(&e));
            ExitCode::from(1)
        }
    }
}

fn diagnostic(e: &anyhow::Error) -> String {
    let code = e
        .chain()
        .find_map(|c| c.downcast_ref::<fra_core::Error>())
        .map_or("Io", fra_core::Error::code);
    // Core errors already render their own causes, so stop the chain there.
    let mut parts = Vec::new();
    for cause in e.chain() {
        parts.push(cause.to_string());
        if cause.is::<fra_core::Error>() {
            break;
        }
    }
    format!("error[{code}]: {}", parts.join(": "))
}

fn write_output(path: &Path, bytes: &[u8]) -> Result<()> {
    if path == Path::new("-") {
        let mut out = io::stdout().lock();
        out.write_all(bytes)?;
        out.flush()?;
    } else {
        fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn run_compute(args: ComputeArgs) -> Result<ExitCode> {
    let kinds = match &args.indices {
        Some(list) => parse_index_list(list)?,
        None => TwoArrayIndexKind::ALL
            .iter()
            .map(|&k| IndexKind::Two(k))
            .collect(),
    };
    let reference = read_sweep(&args.reference)?;
    let case = read_sweep(&args.case)?;
    let family = align_family(reference, vec![(case, 1.0)])?;
    let x = family.reference().magnitudes();
    let y = family.cases()[0].curve.magnitudes();

    let mut out = String::new();
    for kind in kinds {
        let v = compare(kind, x, y, family.frequencies()).with_context(|| format!("evaluating {kind}"))?;
        out.push_str(&format!("{} {v}\n", kind.abbrev()));
    }
    write_output(&args.output, out.as_bytes())?;
    Ok(ExitCode::SUCCESS)
}

fn run_assess(args: AssessArgs) -> Result<ExitCode> {
    let (manifest, family) = load_family(&args.manifest)?;
    let normalization = args
        .normalization
        .map(Normalization::from)
        .or(manifest.normalization)
        .unwrap_or_default();
    let assessment = assess_family(
        &family,
        &AssessOptions {
            normalization,
            indices: Vec::new(),
        },
    );

    let mut files: Vec<(&str, Vec<u8>)> = vec![
        ("index_matrix.csv", emit_index_matrix(&assessment)),
        ("sensitivity.csv", emit_sensitivity(&assessment)),
        ("ranking.csv", emit_ranking(&assessment)),
    ];
    let group = |keep: &dyn Fn(IndexKind) -> bool| -> Vec<AssessmentProfile> {
        assessment.profiles().filter(|p| keep(p.index)).cloned().collect()
    };
    let plots = [
        (
            "profiles_one_array.svg",
            "One-array indices",
            group(&|k| k.arity() == Arity::OneArray),
        ),
        (
            "profiles_two_array.svg",
            "Two-array indices",
            group(&|k| k.arity() == Arity::TwoArray),
        ),
        (
            "profiles_aadrr.svg",
            "AADRR against DABS and SSE",
            group(&|k| ["AADRR", "DABS", "SSE"].contains(&k.abbrev())),
        ),
    ];
    for (name, title, profiles) in plots {
        let svg = emit_profile_plot(&profiles, title).with_context(|| format!("plotting {name}"))?;
        files.push((name, svg));
    }

    write_all_or_nothing(&args.outdir, &files)?;
    for a in &assessment.indices {
        if let Some(f) = &a.failure {
            eprintln!("warning[{}]: {}: {}", f.code, a.index, f.message);
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Writes every file or, on the first failure, removes what was written.
fn write_all_or_nothing<N: AsRef<Path>>(dir: &Path, files: &[(N, Vec<u8>)]) -> Result<()> {
    let created = !dir.exists();
    let mut written = Vec::new();
    let result = (|| -> Result<()> {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (name, bytes) in files {
            let path = dir.join(name);
            fs::write(&path, bytes).with_context(|| format!("writing {}", path.display()))?;
            written.push(path);
        }
        Ok(())
    })();
    if result.is_err() {
        for p in &written {
            let _ = fs::remove_file(p);
        }
        if created {
            let _ = fs::remove_dir(dir);
        }
    }
    result
}

fn run_synth(args: SynthArgs) -> Result<ExitCode> {
    let text =
        fs::read_to_string(&args.config).with_context(|| format!("reading {}", args.config.display()))?;
    let config = LadderConfig::from_json(&text).with_context(|| args.config.display().to_string())?;
    let mut severities = args.severities.clone();
    for &s in &severities {
        // The reference sweep already is the zero-fault case.
        if s.is_nan() || s <= 0.0 {
            bail!(fra_core::Error::InvalidSeverity(s));
        }
        if s >= 100.0 {
            bail!(fra_core::Error::InvalidFault(s / 100.0));
        }
    }
    severities.sort_by(f64::total_cmp);
    if let Some(w) = severities.windows(2).find(|w| w[0] == w[1]) {
        bail!(fra_core::Error::DuplicateSeverity(w[0]));
    }

    let reference = sweep(&config, &FaultSpec::sound())?;
    let mut files = vec![("reference.csv".to_string(), emit_sweep(&reference))];
    let mut cases = Vec::new();
    for &pct in &severities {
        let fault = FaultSpec {
            shorted_fraction: pct / 100.0,
            contact_resistance: args.contact_resistance,
        };
        let label = format!("case_{}", format_percent(pct));
        let file = format!("{label}.csv");
        files.push((file.clone(), emit_sweep(&sweep(&config, &fault)?)));
        cases.push(ManifestCase {
            path: file.into(),
            severity_percent: pct,
            label,
        });
    }
    let manifest = DatasetManifest {
        reference: "reference.csv".into(),
        cases,
        normalization: None,
    };
    files.push(("manifest.json".to_string(), manifest.to_json().into_bytes()));

    write_all_or_nothing(&args.outdir, &files)?;
    Ok(ExitCode::SUCCESS)
}

fn run_validate(args: ValidateArgs) -> Result<ExitCode> {
    let mut out = String::new();
    let mut failed = false;
    for path in &args.paths {
        let checked = if path.extension().is_some_and(|e| e == "json") {
            load_family(path).map(|(_, fam)| {
                format!(
                    "ok manifest, {} cases on {} shared points",
                    fam.cases().len(),
                    fam.frequencies().len()
                )
            })
        } else {
            read_sweep(path).map(|c| {
                format!(
                    "ok sweep, {} points, {}..{} Hz",
                    c.len(),
                    c.min_frequency(),
                    c.max_frequency()
                )
            })
        };
        match checked {
            Ok(line) => out.push_str(&format!("{}: {line}\n", path.display())),
            Err(e) => {
                failed = true;
                eprintln!("error[{}]: {e}", e.code());
            }
        }
    }
    write_output(&args.output, out.as_bytes())?;
    Ok(if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}
