//! Command-line frontend: exact bound checks, threshold computation, code
//! audits, classification tables and plot-data emitters.
//!
//! Exit codes: 0 when every requested verdict or check passes, 1 when a
//! bound verdict or lemma check fails, 2 on usage errors (bad arguments,
//! malformed input files, unreachable horizons).

mod figures;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use degenbound::bounds::{
    classical_hamming_verdict, degenerate_bound_max_k, degenerate_verdict, ell_t_max_k,
    ell_t_verdict, low_weight_verdict, prior_distance3_verdict, qhamming_max_k, qhamming_verdict,
    singleton_max_k, singleton_verdict, BoundId, BoundVerdict, CodeParams, DegeneracyProfile,
    MaxK,
};
use degenbound::calculus::verify_calculus;
use degenbound::classifier::{classify_point, cross_check, PointClass};
use degenbound::stabilizer::{audit_with, parse_code, Limits};
use degenbound::thresholds::{reference_row, reference_table, threshold_report, ThresholdReport};

use output::{write_csv, write_document, OutputFormat};

#[derive(Parser)]
#[command(
    name = "degenbound",
    version,
    about = "Exact sphere-packing bounds for (degenerate) stabilizer codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format for the document.
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Write the document to this path instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check every applicable bound against the parameters [[n, k, d]].
    Bound {
        #[arg(short = 'n', long)]
        n: u32,
        #[arg(short = 'k', long)]
        k: u32,
        #[arg(short = 'd', long)]
        d: u32,
        /// Count of independent stabilizer generators of weight <= 2t;
        /// enables the (ell, t)-bound.
        #[arg(long)]
        ell: Option<u32>,
        /// Total weight of those generators; with --ell, enables the
        /// low-weight-profile bound.
        #[arg(long, requires = "ell")]
        sigma: Option<u32>,
        /// Treat the code as degenerate and apply the bounds specific to
        /// degenerate codes.
        #[arg(long)]
        assume_degenerate: bool,
        /// Also check the classical sphere-packing bound over an alphabet
        /// of this size, with K = 2^k.
        #[arg(long)]
        classical_q: Option<u32>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Largest admissible k under each bound at length n and distance d.
    Maxk {
        #[arg(short = 'n', long)]
        n: u32,
        #[arg(short = 'd', long)]
        d: u32,
        /// Generator counts for the (ell, t)-bound rows.
        #[arg(long, value_delimiter = ',', default_values_t = [0u32, 1, 2])]
        ell: Vec<u32>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compute the length threshold constants for one error weight, or
    /// reproduce the whole comparison table.
    Thresholds {
        #[arg(short = 't', long, required_unless_present = "table1")]
        t: Option<u32>,
        /// Emit the seven-row comparison table against the embedded
        /// reference constants.
        #[arg(long, conflicts_with = "t")]
        table1: bool,
        /// Crossing-scan horizon; defaults to max(500, 8·t·a0).
        #[arg(long, env = "DEGENBOUND_HORIZON")]
        horizon: Option<u32>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Parse a stabilizer code file, analyze it and audit it against
    /// every bound.
    Audit {
        /// Generator file: one Pauli string per line over IXYZ, optional
        /// +/- prefix, blank lines and #-comments ignored.
        file: PathBuf,
        /// Raise the distance-search qubit guard.
        #[arg(long, default_value_t = 14)]
        max_qubits: usize,
        /// Raise the group-enumeration generator guard.
        #[arg(long, default_value_t = 26)]
        max_generators: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Classify optimal distance-3 parameters: may each length still
    /// belong to a degenerate code?
    Classify {
        #[arg(long, default_value_t = 5)]
        n_lo: u32,
        #[arg(long, default_value_t = 25)]
        n_hi: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare the direct classification against the closed-form length
    /// families.
    CrossCheck {
        #[arg(long, default_value_t = 2)]
        m_max: u32,
        #[arg(long, default_value_t = 5)]
        n_lo: u32,
        #[arg(long, default_value_t = 25)]
        n_hi: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Emit column-oriented plot data for the bound curves and the
    /// classification points.
    Figure {
        /// Which figure: 1 (profile shifts), 2 (ell-t family), 3
        /// (degenerate bound and classified points).
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        which: u8,
        /// Directory for the emitted .tsv files.
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Run the bulk lemma verification sweep.
    VerifyAppendix {
        #[arg(long, default_value_t = 7)]
        t_max: u32,
        #[arg(long, default_value_t = 200)]
        x_max: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Bound { n, k, d, ell, sigma, assume_degenerate, classical_q, output } => {
            cmd_bound(n, k, d, ell, sigma, assume_degenerate, classical_q, &output)
        }
        Command::Maxk { n, d, ell, output } => cmd_maxk(n, d, &ell, &output),
        Command::Thresholds { t, table1, horizon, output } => {
            if table1 {
                cmd_table1(horizon, &output)
            } else {
                cmd_thresholds(t.expect("clap enforces t"), horizon, &output)
            }
        }
        Command::Audit { file, max_qubits, max_generators, output } => {
            cmd_audit(&file, Limits { max_qubits, max_generators }, &output)
        }
        Command::Classify { n_lo, n_hi, output } => cmd_classify(n_lo, n_hi, &output),
        Command::CrossCheck { m_max, n_lo, n_hi, output } => {
            cmd_cross_check(m_max, n_lo, n_hi, &output)
        }
        Command::Figure { which, out_dir } => figures::emit(which, &out_dir),
        Command::VerifyAppendix { t_max, x_max, output } => cmd_verify(t_max, x_max, &output),
    }
}

#[derive(Serialize)]
struct BoundDocument {
    params: CodeParams,
    verdicts: Vec<BoundVerdict>,
    notes: Vec<String>,
    all_hold: bool,
}

#[allow(clippy::too_many_arguments)]
fn cmd_bound(
    n: u32,
    k: u32,
    d: u32,
    ell: Option<u32>,
    sigma: Option<u32>,
    assume_degenerate: bool,
    classical_q: Option<u32>,
    output: &OutputArgs,
) -> Result<ExitCode> {
    let params = CodeParams::new(n, k, d)?;
    let t = params.t();
    let mut verdicts = vec![qhamming_verdict(&params), singleton_verdict(&params)];
    let mut notes = Vec::new();
    if let (Some(ell), Some(sigma)) = (ell, sigma) {
        verdicts.push(low_weight_verdict(&params, &DegeneracyProfile::new(ell, sigma))?);
    }
    if let Some(ell) = ell {
        verdicts.push(ell_t_verdict(&params, ell));
    }
    if assume_degenerate {
        if degenerate_bound_in_force(&params, &mut notes)? {
            verdicts.push(degenerate_verdict(&params));
        }
        if t == 1 {
            verdicts.push(prior_distance3_verdict(n, k));
        } else {
            notes.push("prior-distance-3 applies to distance-3 codes only".into());
        }
    }
    if let Some(q) = classical_q {
        if q < 2 {
            bail!("--classical-q must be at least 2");
        }
        let size = BigUint::one() << k;
        verdicts.push(classical_hamming_verdict(n, &size, d, q));
    }
    let all_hold = verdicts.iter().all(|v| v.holds);
    let doc = BoundDocument { params, verdicts, notes, all_hold };
    match output.format {
        OutputFormat::Json => write_document(&doc, output.out.as_deref())?,
        OutputFormat::Csv => {
            let mut rows = vec![vec![
                "bound".into(),
                "max_k".into(),
                "holds".into(),
                "saturated".into(),
                "lhs".into(),
                "rhs".into(),
            ]];
            for v in &doc.verdicts {
                rows.push(vec![
                    v.bound.to_string(),
                    v.max_k.to_string(),
                    v.holds.to_string(),
                    v.saturated.to_string(),
                    v.witness.lhs.clone(),
                    v.witness.rhs.clone(),
                ]);
            }
            write_csv(&rows, output.out.as_deref())?;
        }
    }
    Ok(exit_for(all_hold))
}

/// The degenerate-code bound is proven for every distance-3 code and past
/// the threshold N(t) for higher weights.
fn degenerate_bound_in_force(params: &CodeParams, notes: &mut Vec<String>) -> Result<bool> {
    let t = params.t();
    if t == 0 {
        notes.push("degenerate-hamming needs d >= 3".into());
        return Ok(false);
    }
    if t == 1 {
        return Ok(true);
    }
    let n_t = match reference_row(t) {
        Some(row) => row.n_t,
        None => threshold_report(t, None)?.n_ell(1),
    };
    if params.n() >= n_t {
        Ok(true)
    } else {
        notes.push(format!("degenerate-hamming not in force below N({t}) = {n_t}"));
        Ok(false)
    }
}

#[derive(Serialize)]
struct MaxKDocument {
    n: u32,
    d: u32,
    t: u32,
    rows: Vec<MaxKRow>,
}

#[derive(Serialize)]
struct MaxKRow {
    bound: BoundId,
    #[serde(skip_serializing_if = "Option::is_none")]
    ell: Option<u32>,
    max_k: MaxK,
}

fn cmd_maxk(n: u32, d: u32, ells: &[u32], output: &OutputArgs) -> Result<ExitCode> {
    if n == 0 || d == 0 {
        bail!("n and d must be positive");
    }
    let t = (d - 1) / 2;
    let mut rows = vec![
        MaxKRow { bound: BoundId::QuantumHamming, ell: None, max_k: qhamming_max_k(n, t) },
        MaxKRow { bound: BoundId::Singleton, ell: None, max_k: singleton_max_k(n, d) },
    ];
    if t >= 1 && n >= 2 * t + 1 {
        rows.push(MaxKRow {
            bound: BoundId::DegenerateHamming,
            ell: None,
            max_k: degenerate_bound_max_k(n, t),
        });
    }
    for &ell in ells {
        rows.push(MaxKRow { bound: BoundId::EllT, ell: Some(ell), max_k: ell_t_max_k(n, t, ell) });
    }
    let doc = MaxKDocument { n, d, t, rows };
    match output.format {
        OutputFormat::Json => write_document(&doc, output.out.as_deref())?,
        OutputFormat::Csv => {
            let mut rows = vec![vec!["bound".into(), "ell".into(), "max_k".into()]];
            for r in &doc.rows {
                rows.push(vec![
                    r.bound.to_string(),
                    r.ell.map_or_else(String::new, |e| e.to_string()),
                    r.max_k.to_string(),
                ]);
            }
            write_csv(&rows, output.out.as_deref())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_thresholds(t: u32, horizon: Option<u32>, output: &OutputArgs) -> Result<ExitCode> {
    let report: ThresholdReport = threshold_report(t, horizon)?;
    match output.format {
        OutputFormat::Json => write_document(&report, output.out.as_deref())?,
        OutputFormat::Csv => bail!("the threshold report is nested; use --format json"),
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct Table1Document {
    rows: Vec<Table1Row>,
    all_match: bool,
}

#[derive(Serialize)]
struct Table1Row {
    t: u32,
    rains_bound: u32,
    m_t: u32,
    n_t_reference: u32,
    n_t_computed: u32,
    matches: bool,
}

fn cmd_table1(horizon: Option<u32>, output: &OutputArgs) -> Result<ExitCode> {
    let mut rows = Vec::new();
    for reference in reference_table() {
        let computed = threshold_report(reference.t, horizon)?.n_ell(1);
        rows.push(Table1Row {
            t: reference.t,
            rains_bound: reference.rains_bound,
            m_t: reference.m_t,
            n_t_reference: reference.n_t,
            n_t_computed: computed,
            matches: computed == reference.n_t,
        });
    }
    let all_match = rows.iter().all(|r| r.matches);
    let doc = Table1Document { rows, all_match };
    match output.format {
        OutputFormat::Json => write_document(&doc, output.out.as_deref())?,
        OutputFormat::Csv => {
            let mut out = vec![vec![
                "t".into(),
                "rains_bound".into(),
                "m_t".into(),
                "n_t_reference".into(),
                "n_t_computed".into(),
                "matches".into(),
            ]];
            for r in &doc.rows {
                out.push(vec![
                    r.t.to_string(),
                    r.rains_bound.to_string(),
                    r.m_t.to_string(),
                    r.n_t_reference.to_string(),
                    r.n_t_computed.to_string(),
                    r.matches.to_string(),
                ]);
            }
            write_csv(&out, output.out.as_deref())?;
        }
    }
    Ok(exit_for(all_match))
}

fn cmd_audit(file: &std::path::Path, limits: Limits, output: &OutputArgs) -> Result<ExitCode> {
    let text =
        std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let code = parse_code(&text).with_context(|| format!("parsing {}", file.display()))?;
    let report = audit_with(&code, limits)?;
    match output.format {
        OutputFormat::Json => write_document(&report, output.out.as_deref())?,
        OutputFormat::Csv => bail!("the audit report is nested; use --format json"),
    }
    Ok(exit_for(report.all_hold))
}

#[derive(Serialize)]
struct ClassifyDocument {
    n_lo: u32,
    n_hi: u32,
    points: Vec<ClassifiedPoint>,
}

#[derive(Serialize)]
struct ClassifiedPoint {
    #[serde(flatten)]
    point: PointClass,
    color: &'static str,
}

fn cmd_classify(n_lo: u32, n_hi: u32, output: &OutputArgs) -> Result<ExitCode> {
    let mut points = Vec::new();
    for n in n_lo..=n_hi {
        let point = classify_point(n)?;
        points.push(ClassifiedPoint { point, color: if point.allowed { "red" } else { "black" } });
    }
    let doc = ClassifyDocument { n_lo, n_hi, points };
    match output.format {
        OutputFormat::Json => write_document(&doc, output.out.as_deref())?,
        OutputFormat::Csv => {
            let mut rows = vec![vec![
                "n".into(),
                "optimal_k".into(),
                "degenerate_max_k".into(),
                "allowed".into(),
                "color".into(),
            ]];
            for p in &doc.points {
                rows.push(vec![
                    p.point.n.to_string(),
                    p.point.optimal_k.to_string(),
                    p.point.degenerate_max_k.to_string(),
                    p.point.allowed.to_string(),
                    p.color.to_string(),
                ]);
            }
            write_csv(&rows, output.out.as_deref())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_cross_check(m_max: u32, n_lo: u32, n_hi: u32, output: &OutputArgs) -> Result<ExitCode> {
    let report = cross_check(m_max, n_lo..=n_hi)?;
    match output.format {
        OutputFormat::Json => write_document(&report, output.out.as_deref())?,
        OutputFormat::Csv => bail!("the cross-check report is nested; use --format json"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(t_max: u32, x_max: u32, output: &OutputArgs) -> Result<ExitCode> {
    if t_max == 0 {
        bail!("--t-max must be at least 1");
    }
    if x_max < 2 * t_max {
        bail!("--x-max must reach at least 2·t-max = {}", 2 * t_max);
    }
    let report = verify_calculus(1..=t_max, x_max)?;
    match output.format {
        OutputFormat::Json => write_document(&report, output.out.as_deref())?,
        OutputFormat::Csv => bail!("the verification report is nested; use --format json"),
    }
    Ok(exit_for(report.all_pass))
}

fn exit_for(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
