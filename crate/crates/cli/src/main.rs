//! `msdistill`: command-line front end for the exact magic-state
//! distillation simulator and certifier.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain error (bad code, bad
//! axis, zero success, failed cross-check, IO), 3 resource cap exceeded.
//! All output is deterministic for fixed flags and seed: fixed iteration
//! order, fixed float formatting, no wall-clock content.

mod failure;
mod render;
mod resolve;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use msdistill_core::codes::catalog;
use msdistill_core::engine::{dense_oracle, distill, iterate, EngineError};
use msdistill_core::scan::{find_threshold, region_scan, ThresholdFinding};
use msdistill_core::states::{surface_fidelity, BlochState};
use msdistill_core::witness::{build_witness, epsilon_bisect, EpsilonResult, WitnessReport};
use msdistill_core::{fidelity_curve, DistillationOutcome, StabilizerCode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use failure::Failure;
use render::{emit, outcome_block, sig, to_json, vec3};

#[derive(Parser)]
#[command(
    name = "msdistill",
    version,
    about = "Exact simulator and certifier for postselected stabilizer-code magic-state distillation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List and validate the built-in code catalog
    Codes(CodesArgs),
    /// Run one or more distillation rounds on copies of an input state
    Distill(DistillArgs),
    /// Tabulate output fidelity over a grid of input fidelities
    Curve(CurveArgs),
    /// Locate the fixed-point threshold of one round along an axis
    Threshold(ThresholdArgs),
    /// Build the octahedron-interior certificate for a code
    Witness(WitnessArgs),
    /// Scan the positive octant: thresholds and certified intervals per axis
    Scan(ScanArgs),
    /// Cross-check the group walk against the dense-matrix oracle
    OracleCheck(OracleCheckArgs),
}

#[derive(Copy, Clone, PartialEq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format (csv applies to the tabular commands: curve, scan)
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

impl OutputArgs {
    fn no_csv(&self, command: &str) -> Result<(), Failure> {
        if self.format == Format::Csv {
            return Err(Failure::Usage(format!(
                "csv output applies to tabular commands (curve, scan), not {command}"
            )));
        }
        Ok(())
    }
}

#[derive(Args)]
struct CodesArgs {
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct DistillArgs {
    /// Code: catalog name or path to a code file
    #[arg(long)]
    code: String,
    /// Axis: T, H, or x,y,z
    #[arg(long)]
    axis: String,
    /// Input fidelity along the axis, in [1/2, 1]
    #[arg(long)]
    f: f64,
    /// Number of rounds; outputs are re-twirled onto the axis between rounds
    #[arg(long, default_value_t = 1)]
    rounds: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct CurveArgs {
    /// Code: catalog name or path to a code file
    #[arg(long)]
    code: String,
    /// Axis: T, H, or x,y,z
    #[arg(long)]
    axis: String,
    /// Grid: lo:hi:count or a comma-separated fidelity list
    /// (default: f_surface to 1 in 33 points)
    #[arg(long)]
    grid: Option<String>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ThresholdArgs {
    /// Code: catalog name or path to a code file
    #[arg(long)]
    code: String,
    /// Axis: T, H, or x,y,z
    #[arg(long)]
    axis: String,
    /// Bisection tolerance on the crossing fidelity
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct WitnessArgs {
    /// Code: catalog name or path to a code file
    #[arg(long)]
    code: String,
    /// Optional axis (T, H, or x,y,z): also bisect the certified interval
    #[arg(long)]
    axis: Option<String>,
    /// Bisection tolerance for the certified-interval search
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ScanArgs {
    /// Codes to scan, comma separated (default: the whole catalog)
    #[arg(long, value_delimiter = ',')]
    code: Vec<String>,
    /// Angular grid resolution per octant direction
    #[arg(long, default_value_t = 33)]
    resolution: usize,
    /// Bisection tolerance for thresholds and certified intervals
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OracleCheckArgs {
    /// Code: catalog name or path to a code file
    #[arg(long)]
    code: String,
    /// Number of random (fidelity, axis) pairs to compare
    #[arg(long, default_value_t = 50)]
    trials: u64,
    /// Seed for the pair generator
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let wants_output =
                matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return if wants_output {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}

fn dispatch(command: Command) -> Result<(), Failure> {
    match command {
        Command::Codes(args) => run_codes(args),
        Command::Distill(args) => run_distill(args),
        Command::Curve(args) => run_curve(args),
        Command::Threshold(args) => run_threshold(args),
        Command::Witness(args) => run_witness(args),
        Command::Scan(args) => run_scan(args),
        Command::OracleCheck(args) => run_oracle_check(args),
    }
}

#[derive(serde::Serialize)]
struct CodeSummary {
    name: String,
    num_qubits: usize,
    group_order: u64,
    trivial: bool,
    generators: Vec<String>,
    logical_x: String,
    logical_z: String,
}

fn run_codes(args: CodesArgs) -> Result<(), Failure> {
    args.output.no_csv("codes")?;
    // Re-validate every embedded file through the full parser so this
    // command doubles as a catalog self-check.
    let summaries: Vec<CodeSummary> = catalog::ENTRIES
        .iter()
        .map(|(name, text)| {
            let code = StabilizerCode::parse(text)?;
            Ok(CodeSummary {
                name: (*name).to_string(),
                num_qubits: code.num_qubits(),
                group_order: code.group_order(),
                trivial: code.is_trivial(),
                generators: code.generators().iter().map(|g| g.to_string()).collect(),
                logical_x: code.logical_x().to_string(),
                logical_z: code.logical_z().to_string(),
            })
        })
        .collect::<Result<_, Failure>>()?;
    let content = match args.output.format {
        Format::Json => to_json(&summaries)?,
        _ => summaries
            .iter()
            .map(|s| {
                format!(
                    "{:<12} n={}  |S|={:<4} X_L={:<10} Z_L={:<10} generators: {}",
                    s.name,
                    s.num_qubits,
                    s.group_order,
                    s.logical_x,
                    s.logical_z,
                    s.generators.join(" ")
                )
            })
            .collect::<Vec<_>>()
            .join("\n"),
    };
    emit(args.output.out.as_deref(), &content)
}

fn run_distill(args: DistillArgs) -> Result<(), Failure> {
    args.output.no_csv("distill")?;
    if args.rounds == 0 {
        return Err(Failure::Usage("need at least one round".to_string()));
    }
    let code = resolve::code(&args.code)?;
    let axis = resolve::axis(&args.axis)?;
    let input = BlochState::new(args.f, axis.unit()?)?;
    if args.rounds == 1 {
        let outcome = distill(&code, &input)?;
        let content = match args.output.format {
            Format::Json => to_json(&outcome)?,
            _ => outcome_block(&outcome),
        };
        return emit(args.output.out.as_deref(), &content);
    }
    let run = iterate(&code, &input, args.rounds, &axis)?;
    let content = match args.output.format {
        Format::Json => to_json(&run)?,
        _ => {
            let mut blocks: Vec<String> = run
                .rounds
                .iter()
                .enumerate()
                .map(|(i, outcome)| format!("round {}\n{}", i + 1, outcome_block(outcome)))
                .collect();
            blocks.push(format!(
                "next input    = {} (re-twirled, f = {})",
                vec3(run.final_state.bloch_vector()),
                sig(run.final_state.fidelity())
            ));
            blocks.join("\n\n")
        }
    };
    emit(args.output.out.as_deref(), &content)
}

fn run_curve(args: CurveArgs) -> Result<(), Failure> {
    let code = resolve::code(&args.code)?;
    let axis = resolve::axis(&args.axis)?.unit()?;
    let grid = resolve::grid(args.grid.as_deref(), axis)?;
    let points = fidelity_curve(&code, axis, &grid)?;
    let content = match args.output.format {
        Format::Json => to_json(&points)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["f_in", "f_out", "success_prob", "location"])
                .map_err(|e| Failure::Domain(e.to_string()))?;
            for p in &points {
                w.write_record([
                    sig(p.f_in),
                    p.f_out.map(sig).unwrap_or_default(),
                    sig(p.success_prob),
                    p.location.map(|l| l.to_string()).unwrap_or_default(),
                ])
                .map_err(|e| Failure::Domain(e.to_string()))?;
            }
            finish_csv(w)?
        }
        Format::Text => {
            let mut lines = vec![format!(
                "{:<20} {:<20} {:<20} location",
                "f_in", "f_out", "success_prob"
            )];
            for p in &points {
                lines.push(format!(
                    "{:<20} {:<20} {:<20} {}",
                    sig(p.f_in),
                    p.f_out.map(sig).unwrap_or_else(|| "-".to_string()),
                    sig(p.success_prob),
                    p.location
                        .map(|l| l.to_string())
                        .unwrap_or_else(|| "-".to_string()),
                ));
            }
            lines.join("\n")
        }
    };
    emit(args.output.out.as_deref(), &content)
}

#[derive(serde::Serialize)]
struct ThresholdOutput {
    axis: [f64; 3],
    f_surface: f64,
    finding: ThresholdFinding,
}

fn run_threshold(args: ThresholdArgs) -> Result<(), Failure> {
    args.output.no_csv("threshold")?;
    let code = resolve::code(&args.code)?;
    let axis = resolve::axis(&args.axis)?.unit()?;
    let f_surface = surface_fidelity(axis)?;
    let finding = find_threshold(&code, axis, args.tol)?;
    let content = match args.output.format {
        Format::Json => to_json(&ThresholdOutput {
            axis,
            f_surface,
            finding,
        })?,
        _ => {
            let value = match finding {
                ThresholdFinding::Found(t) => sig(t),
                ThresholdFinding::NoImprovement => {
                    "none (no round improves fidelity on [f_surface, 1])".to_string()
                }
            };
            format!(
                "axis        = {}\nf_surface   = {}\nf_threshold = {}",
                vec3(axis),
                sig(f_surface),
                value
            )
        }
    };
    emit(args.output.out.as_deref(), &content)
}

#[derive(serde::Serialize)]
struct WitnessOutput {
    code: Option<String>,
    num_qubits: usize,
    report: WitnessReport,
    epsilon: Option<EpsilonResult>,
}

fn run_witness(args: WitnessArgs) -> Result<(), Failure> {
    args.output.no_csv("witness")?;
    let code = resolve::code(&args.code)?;
    let report = build_witness(&code.canonical_form()?)?;
    let epsilon = match &args.axis {
        Some(spec) => Some(epsilon_bisect(
            &code,
            resolve::axis(spec)?.unit()?,
            args.tol,
        )?),
        None => None,
    };
    let content = match args.output.format {
        Format::Json => to_json(&WitnessOutput {
            code: code.name().map(str::to_string),
            num_qubits: code.num_qubits(),
            report,
            epsilon,
        })?,
        _ => {
            let mut text = report.to_string();
            if let Some(eps) = &epsilon {
                text.push_str(&format!(
                    "\n\ncertified interval along {}:\nf_surface    = {}\nf_crossing   = {}\nepsilon      = {}\ncertified    = {}\ncrossing     = {}",
                    vec3(eps.axis),
                    sig(eps.f_surface),
                    sig(eps.f_crossing),
                    sig(eps.epsilon),
                    eps.certified,
                    if eps.crossing_found { "found" } else { "none below f = 1" },
                ));
            }
            text
        }
    };
    emit(args.output.out.as_deref(), &content)
}

fn run_scan(args: ScanArgs) -> Result<(), Failure> {
    if args.resolution == 0 {
        return Err(Failure::Usage("resolution must be at least 1".to_string()));
    }
    let codes: Vec<StabilizerCode> = if args.code.is_empty() {
        catalog::all()
    } else {
        args.code
            .iter()
            .map(|spec| resolve::code(spec))
            .collect::<Result<_, _>>()?
    };
    let samples = region_scan(&codes, args.resolution, args.tol);
    let content = match args.output.format {
        Format::Json => to_json(&samples)?,
        Format::Csv => {
            let names: Vec<&str> = samples[0]
                .per_code
                .iter()
                .map(|r| r.name.as_str())
                .collect();
            let mut header: Vec<String> = ["ax", "ay", "az", "f_surface"]
                .iter()
                .map(|s| s.to_string())
                .collect();
            header.extend(names.iter().map(|n| format!("f_threshold_{n}")));
            header.push("f_combined".to_string());
            header.extend(names.iter().map(|n| format!("epsilon_{n}")));
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&header)
                .map_err(|e| Failure::Domain(e.to_string()))?;
            for s in &samples {
                let mut record = vec![
                    sig(s.axis[0]),
                    sig(s.axis[1]),
                    sig(s.axis[2]),
                    sig(s.f_surface),
                ];
                record.extend(
                    s.per_code
                        .iter()
                        .map(|r| r.threshold.map(sig).unwrap_or_default()),
                );
                record.push(s.combined_threshold.map(sig).unwrap_or_default());
                record.extend(
                    s.per_code
                        .iter()
                        .map(|r| r.epsilon.map(sig).unwrap_or_default()),
                );
                w.write_record(&record)
                    .map_err(|e| Failure::Domain(e.to_string()))?;
            }
            finish_csv(w)?
        }
        Format::Text => {
            let mut lines = Vec::with_capacity(samples.len() * (codes.len() + 1));
            for s in &samples {
                lines.push(format!(
                    "axis = {}  f_surface = {}  combined = {}",
                    vec3(s.axis),
                    sig(s.f_surface),
                    s.combined_threshold
                        .map(sig)
                        .unwrap_or_else(|| "none".to_string()),
                ));
                for r in &s.per_code {
                    let mut line = format!(
                        "  {}: threshold = {}  epsilon = {}",
                        r.name,
                        r.threshold.map(sig).unwrap_or_else(|| "none".to_string()),
                        r.epsilon.map(sig).unwrap_or_else(|| "none".to_string()),
                    );
                    if let Some(note) = &r.note {
                        line.push_str(&format!("  note = {note:?}"));
                    }
                    lines.push(line);
                }
            }
            lines.join("\n")
        }
    };
    emit(args.output.out.as_deref(), &content)
}

#[derive(serde::Serialize)]
struct OracleCheckOutput {
    code: Option<String>,
    num_qubits: usize,
    trials: u64,
    seed: u64,
    max_deviation: f64,
    tolerance: f64,
    pass: bool,
}

fn run_oracle_check(args: OracleCheckArgs) -> Result<(), Failure> {
    args.output.no_csv("oracle-check")?;
    const TOLERANCE: f64 = 1e-10;
    let code = resolve::code(&args.code)?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut max_deviation: f64 = 0.0;
    for _ in 0..args.trials {
        let state = random_state(&mut rng);
        let deviation = match (distill(&code, &state), dense_oracle(&code, &state)) {
            (Ok(a), Ok(b)) => outcome_deviation(&a, &b),
            (Err(EngineError::ZeroSuccess), Err(EngineError::ZeroSuccess)) => 0.0,
            (Err(EngineError::ZeroSuccess), Ok(_)) | (Ok(_), Err(EngineError::ZeroSuccess)) => {
                f64::INFINITY
            }
            (Err(e), _) | (_, Err(e)) => return Err(e.into()),
        };
        max_deviation = max_deviation.max(deviation);
    }
    let pass = max_deviation <= TOLERANCE;
    let output = OracleCheckOutput {
        code: code.name().map(str::to_string),
        num_qubits: code.num_qubits(),
        trials: args.trials,
        seed: args.seed,
        max_deviation,
        tolerance: TOLERANCE,
        pass,
    };
    let content = match args.output.format {
        Format::Json => to_json(&output)?,
        _ => format!(
            "code          = {}\nqubits        = {}\ntrials        = {}\nseed          = {}\nmax deviation = {}\nstatus        = {}",
            output.code.as_deref().unwrap_or("(file)"),
            output.num_qubits,
            output.trials,
            output.seed,
            sig(output.max_deviation),
            if pass { "OK" } else { "FAIL" },
        ),
    };
    emit(args.output.out.as_deref(), &content)?;
    if !pass {
        return Err(Failure::Domain(format!(
            "oracle check failed: max deviation {} exceeds {}",
            sig(max_deviation),
            sig(TOLERANCE)
        )));
    }
    Ok(())
}

fn random_state<R: Rng>(rng: &mut R) -> BlochState {
    loop {
        let axis: [f64; 3] = [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        if axis.iter().map(|c| c * c).sum::<f64>().sqrt() < 1e-3 {
            continue;
        }
        let f = rng.gen_range(0.5..1.0);
        return BlochState::new(f, axis).expect("sampled inputs are valid");
    }
}

fn outcome_deviation(a: &DistillationOutcome, b: &DistillationOutcome) -> f64 {
    let mut dev = (a.success_prob - b.success_prob).abs();
    for c in 0..3 {
        dev = dev.max((a.out_bloch[c] - b.out_bloch[c]).abs());
    }
    dev.max((a.out_fidelity - b.out_fidelity).abs())
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String, Failure> {
    let bytes = w
        .into_inner()
        .map_err(|e| Failure::Domain(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::Domain(e.to_string()))
}
