//! Command-line interface: build the standard elements and families,
//! evaluate and combine maps, run the bounded analyzer, re-verify
//! certificate files, drive the extraction pipelines, and plot graphs.
//!
//! Rationals cross this boundary only as `"p/q"` strings. Exit codes:
//! 0 success, 2 invalid input, 3 certificate rejected, 4 budget exceeded.
//! Failures print a machine-readable error object to stderr. The
//! `PLOI_MAX_ELEMENTS` environment variable caps word-ball sizes.

mod svg;

use clap::{Parser, Subcommand, ValueEnum};
use ploi::analyzer::{analyze, AnalyzerConfig};
use ploi::builders::{
    alpha, bcert_check, beta, beta0, gamma_family, upsilon_family, wn_generators, BCertificate,
    GeneratorFamily, WreathCert,
};
use ploi::dynamics::{Interval, SignedOrbital};
use ploi::embedproc::{extract_b, tower_to_wn, BExtraction, EmbedConfig, EmbedError};
use ploi::plmap::PLMap;
use ploi::rational::parse_rational;
use ploi::structures::{is_exemplary, is_tower, Tower};
use ploi::word::Word;
use serde::{Deserialize, Serialize};
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "ploi",
    version,
    about = "Exact piecewise-linear group calculator"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit a standard element or certified family as JSON.
    Build {
        #[command(subcommand)]
        target: BuildTarget,
    },
    /// Evaluate a map (stdin or --file) at a rational point.
    Eval {
        #[arg(long)]
        file: Option<PathBuf>,
        /// Point as "p/q".
        #[arg(long)]
        at: String,
    },
    /// Compose two maps, left to right ("-" reads stdin).
    Compose { a: PathBuf, b: PathBuf },
    /// Invert a map (stdin or --file).
    Inverse {
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Conjugate: g^h = h⁻¹ g h.
    Conj { g: PathBuf, h: PathBuf },
    /// Commutator: `[g,h]` = g⁻¹h⁻¹gh.
    Comm { g: PathBuf, h: PathBuf },
    /// Run the bounded word-ball analyzer over a generator file.
    Analyze {
        /// JSON array of maps.
        #[arg(long)]
        gens: PathBuf,
        #[arg(long, default_value_t = 3)]
        radius: usize,
        /// Write the report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        target_height: Option<usize>,
        /// Report a non-solvability witness above this tower height.
        #[arg(long)]
        threshold: Option<usize>,
        /// Also write the best tower as a reusable witness file.
        #[arg(long)]
        tower_out: Option<PathBuf>,
    },
    /// Re-verify a witness or certificate file; exits 3 when invalid.
    Certify {
        kind: CertKind,
        #[arg(long)]
        file: PathBuf,
    },
    /// Run the full extraction pipeline on two generator files.
    ExtractB {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Improve a tower file into certified wreath generators.
    TowerToWn {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Render superimposed graphs of the given maps as SVG.
    Plot {
        files: Vec<PathBuf>,
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 512)]
        width: u32,
        #[arg(long, default_value_t = 512)]
        height: u32,
    },
}

#[derive(Subcommand)]
enum BuildTarget {
    /// The two-sided stretching generator.
    Alpha,
    /// The bump generator supported on (7/16, 9/16).
    Beta0,
    /// The conjugate level beta_k.
    Beta { k: i64 },
    /// n wreath levels with their certificate.
    Wn { n: u32 },
    /// The block family realizing the first n wreath powers disjointly.
    Gamma { n: u32 },
    /// The negatively indexed block family.
    Upsilon { n: u32 },
}

#[derive(Clone, Copy, ValueEnum)]
enum CertKind {
    Wreath,
    B,
    Tower,
    Chain,
}

/// Signed orbital as raw data; the pairing is re-checked by `certify`
/// rather than at parse time.
#[derive(Serialize, Deserialize)]
struct RawSigned {
    orbital: Interval,
    signature: PLMap,
}

/// Every tagged JSON artifact this binary reads or writes.
#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Artifact {
    Family(GeneratorFamily),
    Wreath(WreathCert),
    B(BCertificate),
    Tower {
        entries: Vec<RawSigned>,
    },
    TransitionChain2 {
        first: RawSigned,
        second: RawSigned,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        first_word: Option<Word>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        second_word: Option<Word>,
    },
    Imbalance {
        element: PLMap,
        orbital: Interval,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        word: Option<Word>,
    },
    BExtraction(BExtraction),
}

enum CliError {
    Invalid(String),
    Rejected(String),
    Budget(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Rejected(_) => 3,
            CliError::Budget(_) => 4,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Invalid(_) => "invalid_input",
            CliError::Rejected(_) => "certificate_rejected",
            CliError::Budget(_) => "budget_exceeded",
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Invalid(m) | CliError::Rejected(m) | CliError::Budget(m) => m,
        }
    }
}

fn invalid<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Invalid(e.to_string())
}

fn embed_error(e: EmbedError) -> CliError {
    match e {
        EmbedError::BudgetExceeded { .. } | EmbedError::SearchExhausted => {
            CliError::Budget(e.to_string())
        }
        other => CliError::Invalid(other.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let payload = serde_json::json!({
                "error": { "kind": e.kind(), "message": e.message() }
            });
            eprintln!("{payload}");
            ExitCode::from(e.code())
        }
    }
}

fn read_input(path: Option<&Path>) -> Result<String, CliError> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| CliError::Invalid(format!("{}: {e}", p.display()))),
        _ => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf).map_err(invalid)?;
            Ok(buf)
        }
    }
}

fn read_map(path: &Path) -> Result<PLMap, CliError> {
    let text = read_input(Some(path))?;
    serde_json::from_str(&text).map_err(invalid)
}

fn read_map_opt(path: Option<&Path>) -> Result<PLMap, CliError> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(invalid)
}

fn write_output(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| CliError::Invalid(format!("{}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn emit_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string(value).map_err(invalid)?;
    text.push('\n');
    write_output(path, &text)
}

fn element_cap() -> Option<usize> {
    std::env::var("PLOI_MAX_ELEMENTS")
        .ok()
        .and_then(|v| v.parse().ok())
        .or(Some(100_000))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Build { target } => match target {
            BuildTarget::Alpha => emit_json(None, &alpha()),
            BuildTarget::Beta0 => emit_json(None, &beta0()),
            BuildTarget::Beta { k } => emit_json(None, &beta(k)),
            BuildTarget::Wn { n } => build_family(wn_generators(checked_n(n)?)),
            BuildTarget::Gamma { n } => build_family(gamma_family(checked_n(n)?)),
            BuildTarget::Upsilon { n } => build_family(upsilon_family(checked_n(n)?)),
        },
        Cmd::Eval { file, at } => {
            let map = read_map_opt(file.as_deref())?;
            let x = parse_rational(&at).map_err(invalid)?;
            let y = map.evaluate(&x).map_err(invalid)?;
            println!("{}", ploi::rational::format_rational(&y));
            Ok(())
        }
        Cmd::Compose { a, b } => {
            let (g, h) = (read_map(&a)?, read_map(&b)?);
            emit_json(None, &g.compose(&h))
        }
        Cmd::Inverse { file } => {
            let map = read_map_opt(file.as_deref())?;
            emit_json(None, &map.inverse())
        }
        Cmd::Conj { g, h } => {
            let (g, h) = (read_map(&g)?, read_map(&h)?);
            emit_json(None, &g.conjugate(&h))
        }
        Cmd::Comm { g, h } => {
            let (g, h) = (read_map(&g)?, read_map(&h)?);
            emit_json(None, &g.commutator(&h))
        }
        Cmd::Analyze {
            gens,
            radius,
            report,
            target_height,
            threshold,
            tower_out,
        } => {
            let text = read_input(Some(&gens))?;
            let gens: Vec<PLMap> = serde_json::from_str(&text).map_err(invalid)?;
            let config = AnalyzerConfig {
                radius,
                target_height: target_height.unwrap_or(8),
                element_cap: element_cap(),
                nonsolvable_threshold: threshold,
                ..AnalyzerConfig::default()
            };
            let result = analyze(&gens, &config).map_err(|e| CliError::Budget(e.to_string()))?;
            if let Some(tower_path) = tower_out {
                if let Some(tw) = &result.max_tower {
                    let entries = tw
                        .tower
                        .entries()
                        .iter()
                        .map(|e| RawSigned {
                            orbital: e.orbital().clone(),
                            signature: e.signature().clone(),
                        })
                        .collect();
                    emit_json(Some(&tower_path), &Artifact::Tower { entries })?;
                }
            }
            emit_json(report.as_deref(), &result)
        }
        Cmd::Certify { kind, file } => {
            let text = read_input(Some(&file))?;
            let artifact: Artifact = serde_json::from_str(&text).map_err(invalid)?;
            certify(kind, artifact)
        }
        Cmd::ExtractB { a, b, report } => {
            let (g, h) = (read_map(&a)?, read_map(&b)?);
            let config = EmbedConfig {
                element_cap: element_cap(),
                ..EmbedConfig::default()
            };
            let out = extract_b(&g, &h, &config).map_err(embed_error)?;
            emit_json(report.as_deref(), &Artifact::BExtraction(out))
        }
        Cmd::TowerToWn { file, report } => {
            let text = read_input(Some(&file))?;
            let artifact: Artifact = serde_json::from_str(&text).map_err(invalid)?;
            let entries = match artifact {
                Artifact::Tower { entries } => entries,
                _ => return Err(CliError::Invalid("expected a tower file".to_string())),
            };
            let entries = entries
                .into_iter()
                .map(|r| SignedOrbital::new(r.orbital, r.signature))
                .collect::<Result<Vec<_>, _>>()
                .map_err(invalid)?;
            let tower = Tower::new(entries).map_err(invalid)?;
            let config = EmbedConfig {
                element_cap: element_cap(),
                ..EmbedConfig::default()
            };
            let (family, trace) = tower_to_wn(&tower, &config).map_err(embed_error)?;
            emit_json(
                report.as_deref(),
                &serde_json::json!({
                    "kind": "wn_improvement",
                    "family": Artifact::Family(family),
                    "trace": trace,
                }),
            )
        }
        Cmd::Plot {
            files,
            out,
            width,
            height,
        } => {
            let maps = if files.is_empty() {
                vec![read_map_opt(None)?]
            } else {
                files
                    .iter()
                    .map(|f| read_map(f))
                    .collect::<Result<Vec<_>, _>>()?
            };
            write_output(out.as_deref(), &svg::render(&maps, width, height))
        }
    }
}

fn checked_n(n: u32) -> Result<u32, CliError> {
    if n == 0 {
        return Err(CliError::Invalid("n must be positive".to_string()));
    }
    Ok(n)
}

fn build_family(family: GeneratorFamily) -> Result<(), CliError> {
    if !family.verify() {
        // construction re-checks itself; a failure here is a genuine defect
        return Err(CliError::Rejected(
            "constructed family failed its own certificate".to_string(),
        ));
    }
    emit_json(None, &Artifact::Family(family))
}

/// Re-verification of certificate files. Every check is recomputed from
/// the serialized raw maps; stored results that disagree with the
/// recomputation are rejected along with genuinely failing checks.
fn certify(kind: CertKind, artifact: Artifact) -> Result<(), CliError> {
    match (kind, artifact) {
        (CertKind::Wreath, Artifact::Wreath(cert)) => {
            if cert.verify() {
                ok_line("wreath certificate verified")
            } else {
                Err(CliError::Rejected(
                    "wreath certificate failed recomputation".to_string(),
                ))
            }
        }
        (CertKind::Wreath, Artifact::Family(family)) => {
            if family.verify() {
                ok_line("family certificates verified")
            } else {
                Err(CliError::Rejected(
                    "family certificates failed recomputation".to_string(),
                ))
            }
        }
        (CertKind::B, Artifact::B(cert)) => {
            if cert.verify() {
                ok_line("recognition certificate verified")
            } else {
                Err(CliError::Rejected(
                    "recognition certificate failed recomputation".to_string(),
                ))
            }
        }
        (CertKind::B, Artifact::BExtraction(out)) => {
            let fresh = bcert_check(&out.base, &out.conjugator);
            if fresh == out.certificate && fresh.cleared {
                ok_line("extraction certificate verified")
            } else {
                Err(CliError::Rejected(
                    "extraction certificate failed recomputation".to_string(),
                ))
            }
        }
        (CertKind::Tower, Artifact::Tower { entries }) => {
            let mut checked = Vec::with_capacity(entries.len());
            for r in entries {
                match SignedOrbital::new(r.orbital, r.signature) {
                    Ok(so) => checked.push(so),
                    Err(_) => {
                        return Err(CliError::Rejected(
                            "entry orbital is not an orbital of its signature".to_string(),
                        ))
                    }
                }
            }
            if !is_tower(&checked) {
                return Err(CliError::Rejected(
                    "entries do not form a tower".to_string(),
                ));
            }
            let exemplary = is_exemplary(&checked);
            ok_line(&format!(
                "tower verified, height {}, exemplary: {exemplary}",
                checked.len()
            ))
        }
        (CertKind::Chain, Artifact::TransitionChain2 { first, second, .. }) => {
            let a = SignedOrbital::new(first.orbital, first.signature);
            let b = SignedOrbital::new(second.orbital, second.signature);
            match (a, b) {
                (Ok(a), Ok(b)) if ploi::structures::is_transition_chain2(&a, &b) => {
                    ok_line("transition-chain witness verified")
                }
                (Ok(_), Ok(_)) => Err(CliError::Rejected("orbitals do not interlock".to_string())),
                _ => Err(CliError::Rejected(
                    "witness orbital is not an orbital of its signature".to_string(),
                )),
            }
        }
        _ => Err(CliError::Invalid(
            "certificate kind does not match the file".to_string(),
        )),
    }
}

fn ok_line(msg: &str) -> Result<(), CliError> {
    println!("{}", serde_json::json!({ "ok": msg }));
    Ok(())
}
