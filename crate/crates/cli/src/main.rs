//! Batch front door: classify inputs, convert representations, emit atlases
//! and counts, run fiber reports and certification suites.
//!
//! Exit codes: 0 ok, 2 parse error, 3 validation error, 4 size guard,
//! 5 certification failure.

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use flagorbit_core::classify::{
    borel_reduce_witness, frame_z_block, invariant_profile, normalize_omega, reconstruct_spi,
    ClassifyError, LagrangianFrame, OrbitLabel,
};
use flagorbit_core::clans::{
    clan_to_label, clan_to_omega, count_clans, enumerate_clans, label_to_clan, omega_to_clan,
    parse_clan, spi_signature, DecoratedClan,
};
use flagorbit_core::galois::{d_of_tau, k_partition, real_fiber, strip_signs};
use flagorbit_core::matrix::Matrix;
use flagorbit_core::oracle::{
    borel_invariance_sample, certify_classifier, OracleError, MAX_BRUTE_FORCE_N, MAX_SAMPLE_M,
};
use flagorbit_core::params::{OmegaPair, TauPair};

const DEFAULT_ATLAS_MAX_N: usize = 8;

#[derive(Parser)]
#[command(
    name = "flagorbit",
    about = "Exact classification of triangular-group orbits on Lagrangian Grassmannians",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Scalar case: A = Gaussian rationals, B = rationals only.
    #[arg(long, value_enum, default_value_t = Case::A, global = true)]
    case: Case,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for the randomized verification suites.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Override the enumeration size guard (also via FLAGORBIT_MAX_N).
    #[arg(long, global = true)]
    max_n: Option<usize>,
    /// Include the triangular reduction witness in classification output.
    #[arg(long, global = true)]
    witness: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Case {
    A,
    B,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Clan,
    Omega,
    Label,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify a Hermitian/symmetric matrix, a frame {"C","D"}, or a
    /// signed pair {"tau1","tau2"}; reads a file, inline JSON, or stdin.
    Classify { input: Option<String> },
    /// Convert among representations: clan, omega, label.
    Convert {
        #[arg(long, value_enum)]
        from: Kind,
        #[arg(long, value_enum)]
        to: Kind,
        /// Ambient size, required when converting from a label.
        #[arg(long)]
        n: Option<usize>,
        input: Option<String>,
    },
    /// Stream every clan of size n with its involution, signature, and
    /// fiber data.
    Atlas { n: usize },
    /// Evaluate the closed counting formula, cross-checked by enumeration
    /// when feasible.
    Count { n: usize },
    /// Fiber report for an unsigned pair {"tau1","tau2"} in the
    /// rational-point locus.
    Galois { input: Option<String> },
    /// Run the certification suites up to the given size.
    Verify {
        level: usize,
        /// Trials per size for the randomized invariance sampler.
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

enum CliError {
    Parse(String),
    Validation(String),
    Guard(String),
    Certification(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Guard(_) => 4,
            CliError::Certification(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m)
            | CliError::Validation(m)
            | CliError::Guard(m)
            | CliError::Certification(m) => m,
        }
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::Certification(m) => CliError::Certification(m),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::SizeGuardExceeded { .. } => CliError::Guard(e.to_string()),
            OracleError::CertificationFailure {
                ref message,
                ref witness,
            } => CliError::Certification(format!("{message}\nwitness: {witness}")),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let output = match &cli.cmd {
        Cmd::Classify { input } => cmd_classify(&cli, read_input(input)?),
        Cmd::Convert { from, to, n, input } => {
            cmd_convert(&cli, *from, *to, *n, read_input(input)?)
        }
        Cmd::Atlas { n } => cmd_atlas(&cli, *n),
        Cmd::Count { n } => cmd_count(&cli, *n),
        Cmd::Galois { input } => cmd_galois(&cli, read_input(input)?),
        Cmd::Verify { level, trials } => cmd_verify(&cli, *level, *trials),
    }?;
    match &cli.out {
        Some(path) => std::fs::write(path, output)
            .map_err(|e| CliError::Validation(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{output}");
            Ok(())
        }
    }
}

/// The input argument is a path when it names an existing file; otherwise
/// it is taken as an inline payload. Absent input reads stdin.
fn read_input(arg: &Option<String>) -> Result<String, CliError> {
    match arg {
        Some(s) if std::path::Path::new(s).exists() => std::fs::read_to_string(s)
            .map_err(|e| CliError::Parse(format!("cannot read {s}: {e}"))),
        Some(s) => Ok(s.clone()),
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Parse(format!("cannot read stdin: {e}")))?;
            Ok(buf)
        }
    }
}

fn enumeration_guard(cli: &Cli, default: usize) -> usize {
    if let Some(n) = cli.max_n {
        return n;
    }
    if let Ok(v) = std::env::var("FLAGORBIT_MAX_N") {
        if let Ok(n) = v.parse() {
            return n;
        }
    }
    default
}

fn case_name(case: Case) -> &'static str {
    match case {
        Case::A => "A",
        Case::B => "B",
    }
}

fn require_real_for_case_b(cli: &Cli, m: &Matrix, what: &str) -> Result<(), CliError> {
    if cli.case == Case::B && !m.is_real() {
        return Err(CliError::Validation(format!(
            "case B admits rational entries only, but {what} has an imaginary part"
        )));
    }
    Ok(())
}

enum ClassifyInput {
    Hermitian(Matrix),
    Frame(LagrangianFrame),
    Omega(OmegaPair),
}

fn parse_classify_input(cli: &Cli, text: &str) -> Result<ClassifyInput, CliError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("invalid JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| CliError::Parse("expected a JSON object".into()))?;
    if obj.contains_key("tau1") {
        let omega: OmegaPair = serde_json::from_value(value.clone())
            .map_err(|e| CliError::Validation(format!("invalid pair: {e}")))?;
        return Ok(ClassifyInput::Omega(omega));
    }
    if obj.contains_key("C") || obj.contains_key("D") {
        let c: Matrix = serde_json::from_value(
            obj.get("C")
                .cloned()
                .ok_or_else(|| CliError::Parse("frame is missing \"C\"".into()))?,
        )
        .map_err(|e| CliError::Parse(format!("invalid \"C\": {e}")))?;
        let d: Matrix = serde_json::from_value(
            obj.get("D")
                .cloned()
                .ok_or_else(|| CliError::Parse("frame is missing \"D\"".into()))?,
        )
        .map_err(|e| CliError::Parse(format!("invalid \"D\": {e}")))?;
        require_real_for_case_b(cli, &c, "C")?;
        require_real_for_case_b(cli, &d, "D")?;
        let frame = LagrangianFrame::new(c, d)?;
        return Ok(ClassifyInput::Frame(frame));
    }
    if obj.contains_key("rows") {
        let z: Matrix = serde_json::from_value(value.clone())
            .map_err(|e| CliError::Parse(format!("invalid matrix: {e}")))?;
        require_real_for_case_b(cli, &z, "the matrix")?;
        return Ok(ClassifyInput::Hermitian(z));
    }
    Err(CliError::Parse(
        "unrecognized input; expected a matrix, a frame {\"C\",\"D\"}, or a pair {\"tau1\",\"tau2\"}"
            .into(),
    ))
}

fn cmd_classify(cli: &Cli, text: String) -> Result<String, CliError> {
    let input = parse_classify_input(cli, &text)?;
    let (kind, n, label, z_block) = match &input {
        ClassifyInput::Hermitian(z) => {
            let frame = LagrangianFrame::from_hermitian(z)?;
            let (i_set, z11) = frame_z_block(&frame)?;
            let label = OrbitLabel::new(i_set, reconstruct_spi(&invariant_profile(&z11)?)?)?;
            ("matrix", z.rows(), label, z11)
        }
        ClassifyInput::Frame(f) => {
            let (i_set, z11) = frame_z_block(f)?;
            let label = OrbitLabel::new(i_set, reconstruct_spi(&invariant_profile(&z11)?)?)?;
            ("frame", f.n(), label, z11)
        }
        ClassifyInput::Omega(w) => {
            let label = normalize_omega(w)?;
            let frame = LagrangianFrame::from_omega(w);
            let (_, z11) = frame_z_block(&frame)?;
            ("omega", w.n(), label, z11)
        }
    };
    let clan = label_to_clan(&label, n).map_err(|e| CliError::Validation(e.to_string()))?;
    let profile = invariant_profile(&z_block)?;
    let signature = spi_signature(label.spi());
    let witness = if cli.witness {
        Some(borel_reduce_witness(&z_block)?)
    } else {
        None
    };
    match cli.format {
        Format::Json => {
            let mut out = serde_json::json!({
                "case": case_name(cli.case),
                "input": kind,
                "n": n,
                "label": label,
                "clan": clan.to_string(),
                "clan_json": clan,
                "signature": signature,
                "profile": profile,
            });
            if let Some((b, w)) = &witness {
                out["witness"] = serde_json::json!({ "b": b, "w": w });
            }
            Ok(format!("{}\n", serde_json::to_string_pretty(&out).unwrap()))
        }
        Format::Csv => {
            let mut s = atlas_csv_header();
            write_atlas_csv_row(&mut s, n, &clan)?;
            Ok(s)
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "case: {}", case_name(cli.case));
            let _ = writeln!(s, "input: {kind} (n = {n})");
            let _ = writeln!(s, "I: {:?}", label.i_set());
            let _ = writeln!(s, "spi:");
            let _ = write!(s, "{:?}", label.spi());
            let _ = writeln!(s, "clan: {clan}");
            let _ = writeln!(s, "signature: {signature}");
            let _ = writeln!(s, "profile signatures: {}", join_signatures(&profile));
            let _ = writeln!(s, "profile ranks:");
            for p in 0..profile.m() {
                let ranks: Vec<String> = (p..profile.m())
                    .map(|q| profile.rank_at(p, q).to_string())
                    .collect();
                let _ = writeln!(s, "  p={p}: {}", ranks.join(" "));
            }
            if let Some((b, w)) = &witness {
                let _ = writeln!(s, "witness b:");
                let _ = write!(s, "{b:?}");
                let _ = writeln!(s, "witness w:");
                let _ = write!(s, "{w:?}");
            }
            Ok(s)
        }
    }
}

fn join_signatures(profile: &flagorbit_core::InvariantProfile) -> String {
    profile
        .signatures()
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_convert(
    cli: &Cli,
    from: Kind,
    to: Kind,
    ambient: Option<usize>,
    text: String,
) -> Result<String, CliError> {
    // Normalize the source to a clan; the clan carries the ambient size.
    let clan = match from {
        Kind::Clan => parse_clan_flexible(&text)?,
        Kind::Omega => {
            let omega: OmegaPair = serde_json::from_str(&text)
                .map_err(|e| CliError::Validation(format!("invalid pair: {e}")))?;
            omega_to_clan(&omega)
        }
        Kind::Label => {
            let label: OrbitLabel = serde_json::from_str(&text)
                .map_err(|e| CliError::Validation(format!("invalid label: {e}")))?;
            let n = ambient.ok_or_else(|| {
                CliError::Validation("--n is required when converting from a label".into())
            })?;
            label_to_clan(&label, n).map_err(|e| CliError::Validation(e.to_string()))?
        }
    };
    match to {
        Kind::Clan => match cli.format {
            Format::Json => Ok(format!(
                "{}\n",
                serde_json::to_string_pretty(&clan).unwrap()
            )),
            _ => Ok(format!("{clan}\n")),
        },
        Kind::Omega => {
            let omega = clan_to_omega(&clan);
            Ok(format!(
                "{}\n",
                serde_json::to_string_pretty(&omega).unwrap()
            ))
        }
        Kind::Label => {
            let label = clan_to_label(&clan).map_err(|e| CliError::Validation(e.to_string()))?;
            Ok(format!(
                "{}\n",
                serde_json::to_string_pretty(&label).unwrap()
            ))
        }
    }
}

fn parse_clan_flexible(text: &str) -> Result<DecoratedClan, CliError> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        serde_json::from_str(trimmed)
            .map_err(|e| CliError::Parse(format!("invalid clan JSON: {e}")))
    } else {
        parse_clan(trimmed).map_err(|e| CliError::Parse(e.to_string()))
    }
}

struct AtlasRow {
    n: usize,
    clan_text: String,
    i_set: Vec<usize>,
    spi_flat: Vec<i8>,
    signature: flagorbit_core::Inertia,
    d: usize,
    fiber_size: u64,
}

fn atlas_row(n: usize, clan: &DecoratedClan) -> Result<AtlasRow, CliError> {
    let label = clan_to_label(clan).map_err(|e| CliError::Validation(e.to_string()))?;
    let signature = spi_signature(label.spi());
    let omega = clan_to_omega(clan);
    let tau = strip_signs(&omega);
    let d = d_of_tau(&tau).map_err(|e| CliError::Validation(e.to_string()))?;
    let m = label.spi().n();
    let spi_flat: Vec<i8> = (0..m)
        .flat_map(|r| (0..m).map(move |c| (r, c)))
        .map(|(r, c)| label.spi().entry(r, c))
        .collect();
    Ok(AtlasRow {
        n,
        clan_text: clan.to_string(),
        i_set: label.i_set().to_vec(),
        spi_flat,
        signature,
        d,
        fiber_size: 1u64 << d,
    })
}

fn atlas_csv_header() -> String {
    "n,clan,I,spi,sig_p,sig_q,sig_r,d,fiber_size\n".to_string()
}

fn write_atlas_csv_row(out: &mut String, n: usize, clan: &DecoratedClan) -> Result<(), CliError> {
    let row = atlas_row(n, clan)?;
    let i_str = row
        .i_set
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(";");
    let spi_str = row
        .spi_flat
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(";");
    let _ = writeln!(
        out,
        "{},\"{}\",{},{},{},{},{},{},{}",
        row.n,
        row.clan_text,
        i_str,
        spi_str,
        row.signature.pos,
        row.signature.neg,
        row.signature.nul,
        row.d,
        row.fiber_size
    );
    Ok(())
}

fn cmd_atlas(cli: &Cli, n: usize) -> Result<String, CliError> {
    let guard = enumeration_guard(cli, DEFAULT_ATLAS_MAX_N);
    if n > guard {
        return Err(CliError::Guard(format!(
            "atlas size {n} exceeds the guard {guard}; raise --max-n or FLAGORBIT_MAX_N"
        )));
    }
    let clans = enumerate_clans(n);
    match cli.format {
        Format::Csv => {
            let mut out = atlas_csv_header();
            for clan in &clans {
                write_atlas_csv_row(&mut out, n, clan)?;
            }
            Ok(out)
        }
        Format::Json => {
            let rows: Result<Vec<serde_json::Value>, CliError> = clans
                .iter()
                .map(|clan| {
                    let row = atlas_row(n, clan)?;
                    Ok(serde_json::json!({
                        "n": row.n,
                        "clan": row.clan_text,
                        "I": row.i_set,
                        "spi": row.spi_flat,
                        "signature": row.signature,
                        "d": row.d,
                        "fiber_size": row.fiber_size,
                    }))
                })
                .collect();
            Ok(format!(
                "{}\n",
                serde_json::to_string_pretty(&rows?).unwrap()
            ))
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "atlas n = {n} (case {}): {} orbits",
                case_name(cli.case),
                clans.len()
            );
            for clan in &clans {
                let row = atlas_row(n, clan)?;
                let _ = writeln!(
                    out,
                    "clan [{}]  I={:?}  sig={}  d={}  fiber={}",
                    row.clan_text, row.i_set, row.signature, row.d, row.fiber_size
                );
            }
            Ok(out)
        }
    }
}

fn cmd_count(cli: &Cli, n: usize) -> Result<String, CliError> {
    let formula = count_clans(n);
    let guard = enumeration_guard(cli, DEFAULT_ATLAS_MAX_N);
    let enumerated = if n <= guard {
        let count = enumerate_clans(n).len();
        if num::BigUint::from(count) != formula {
            return Err(CliError::Certification(format!(
                "enumeration found {count} clans but the formula gives {formula}"
            )));
        }
        Some(count)
    } else {
        None
    };
    match cli.format {
        Format::Json => {
            let out = serde_json::json!({
                "n": n,
                "formula": formula.to_string(),
                "enumeration": enumerated,
            });
            Ok(format!("{}\n", serde_json::to_string_pretty(&out).unwrap()))
        }
        _ => match enumerated {
            Some(c) => Ok(format!("{formula} (enumeration cross-check: {c})\n")),
            None => Ok(format!("{formula}\n")),
        },
    }
}

fn cmd_galois(cli: &Cli, text: String) -> Result<String, CliError> {
    let tau: TauPair = serde_json::from_str(&text)
        .map_err(|e| CliError::Validation(format!("invalid pair: {e}")))?;
    let part = k_partition(&tau).map_err(|e| CliError::Validation(e.to_string()))?;
    let d = d_of_tau(&tau).map_err(|e| CliError::Validation(e.to_string()))?;
    let fiber = real_fiber(&tau).map_err(|e| CliError::Validation(e.to_string()))?;
    let labels: Result<Vec<OrbitLabel>, ClassifyError> =
        fiber.iter().map(normalize_omega).collect();
    let labels = labels?;
    match cli.format {
        Format::Json => {
            let out = serde_json::json!({
                "case": case_name(cli.case),
                "tau": tau,
                "d": d,
                "K": part,
                "fiber": fiber,
                "labels": labels,
            });
            Ok(format!("{}\n", serde_json::to_string_pretty(&out).unwrap()))
        }
        _ => {
            let mut s = String::new();
            let _ = writeln!(s, "case: {}", case_name(cli.case));
            let _ = writeln!(s, "d: {d}");
            let _ = writeln!(
                s,
                "K: c={:?} d={:?} one={:?} two={:?}",
                part.k_c, part.k_d, part.k_1, part.k_2
            );
            let _ = writeln!(s, "fiber size: {}", fiber.len());
            for (i, label) in labels.iter().enumerate() {
                let clan = label_to_clan(label, tau.n())
                    .map_err(|e| CliError::Validation(e.to_string()))?;
                let _ = writeln!(s, "orbit {}: I={:?} clan [{}]", i + 1, label.i_set(), clan);
            }
            Ok(s)
        }
    }
}

fn cmd_verify(cli: &Cli, level: usize, trials: usize) -> Result<String, CliError> {
    if level > MAX_BRUTE_FORCE_N {
        return Err(CliError::Guard(format!(
            "verify level {level} exceeds the exhaustive guard {MAX_BRUTE_FORCE_N}"
        )));
    }
    let seed = cli.seed.unwrap_or(0xF1A6);
    let mut out = String::new();
    for n in 0..=level {
        let report = certify_classifier(n)?;
        let _ = writeln!(
            out,
            "certify n={n}: PASS ({} elements, {} classes, {} ms)",
            report.elements, report.classes, report.elapsed_ms
        );
    }
    for m in 1..=MAX_SAMPLE_M {
        let report = borel_invariance_sample(m, trials, seed)?;
        let _ = writeln!(
            out,
            "invariance m={m}: PASS ({} conjugations, seed {seed}, {} ms)",
            report.checked, report.elapsed_ms
        );
    }
    let _ = writeln!(out, "verify level {level}: all suites passed");
    Ok(out)
}
