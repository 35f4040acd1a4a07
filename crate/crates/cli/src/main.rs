//! `rindler`: acceleration sweeps, sudden-death thresholds, figure data and
//! closed-form verification for the accelerated W state.
//!
//! Exit codes: 0 success, 1 invalid arguments, 2 verification failure,
//! 3 I/O failure.

use std::f64::consts::FRAC_PI_4;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rindler_core::analysis::emit_csv;
use rindler_core::analysis::{
    distinct_curves, figure_presets, find_threshold, linspace, run_preset, run_sweep, write_csv,
    Measure, PointState, ScenarioTemplate, SweepConfig, DEFAULT_POINTS,
};
use rindler_core::closed_form::verify_closed_forms;
use rindler_core::{Error, StateFamily};

const EXIT_INVALID: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "rindler",
    version,
    about = "W-state entanglement for accelerated observers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate measures over a grid of r and write CSV.
    Sweep(SweepArgs),
    /// Bisect for the r at which a measure stops being positive.
    Threshold(ThresholdArgs),
    /// Compare the published closed forms with the numeric pipeline.
    Verify(VerifyArgs),
    /// Print the Rindler-expanded state vector.
    State(PointArgs),
    /// Evaluate one measure at one r.
    Measure(MeasureArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, Default)]
enum Family {
    #[default]
    W,
    Ghz,
}

impl From<Family> for StateFamily {
    fn from(f: Family) -> Self {
        match f {
            Family::W => StateFamily::W,
            Family::Ghz => StateFamily::Ghz,
        }
    }
}

#[derive(Args, Debug)]
struct ScenarioArgs {
    /// Accelerated parties, e.g. `C,D`, or `none`.
    #[arg(long, default_value = "none")]
    accelerated: String,
    /// Initial inertial state.
    #[arg(long, value_enum, default_value_t = Family::W)]
    family: Family,
}

impl ScenarioArgs {
    fn template(&self) -> Result<ScenarioTemplate, Error> {
        ScenarioTemplate::parse_accelerated(self.family.into(), &self.accelerated)
    }
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    scenario: ScenarioArgs,
    /// Measure name: n13, n11, n11-closed, pi, pi4, geo-pi4, pi4-gap, entropy, norm.
    #[arg(long)]
    measure: Option<String>,
    /// Party list for the measure, e.g. `A` or `A,B`.
    #[arg(long)]
    subsystem: Option<String>,
    #[arg(long, default_value_t = DEFAULT_POINTS)]
    grid: usize,
    #[arg(long, default_value_t = 0.0)]
    r_min: f64,
    #[arg(long, default_value_t = FRAC_PI_4)]
    r_max: f64,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Figure preset (fig1..fig6) or `all`; writes one CSV per figure.
    #[arg(long, conflicts_with_all = ["measure", "out"])]
    preset: Option<String>,
    /// Directory for preset CSVs.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args, Debug)]
struct ThresholdArgs {
    #[command(flatten)]
    scenario: ScenarioArgs,
    #[arg(long, default_value = "n11")]
    measure: String,
    #[arg(long)]
    subsystem: Option<String>,
    /// Lower end of the bracket.
    #[arg(long, default_value_t = 0.0)]
    r_min: f64,
    /// Upper end of the bracket.
    #[arg(long, default_value_t = FRAC_PI_4)]
    r_max: f64,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = 50)]
    grid: usize,
    #[arg(long, default_value_t = 0.0)]
    r_min: f64,
    #[arg(long, default_value_t = FRAC_PI_4)]
    r_max: f64,
    /// Report destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PointArgs {
    #[command(flatten)]
    scenario: ScenarioArgs,
    #[arg(long, default_value_t = 0.0)]
    r: f64,
}

#[derive(Args, Debug)]
struct MeasureArgs {
    #[command(flatten)]
    point: PointArgs,
    #[arg(long)]
    measure: String,
    #[arg(long)]
    subsystem: Option<String>,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) | Error::Csv(_) => EXIT_IO,
        _ => EXIT_INVALID,
    }
}

fn sweep(args: SweepArgs) -> Result<ExitCode, Error> {
    if let Some(name) = &args.preset {
        let presets: Vec<_> = figure_presets(args.grid)
            .into_iter()
            .filter(|p| name == "all" || p.name == name)
            .collect();
        if presets.is_empty() {
            return Err(Error::InvalidConfig(format!(
                "unknown preset {name:?} (expected fig1..fig6 or all)"
            )));
        }
        fs::create_dir_all(&args.out_dir)?;
        for p in presets {
            let records = run_preset(&p, &args.out_dir)?;
            let classes = distinct_curves(&records, 1e-10).len();
            println!(
                "{}: {} rows, {classes} distinct curves -> {}",
                p.name,
                records.len(),
                args.out_dir.join(p.file_name).display()
            );
        }
        return Ok(ExitCode::SUCCESS);
    }

    let name = args
        .measure
        .as_deref()
        .ok_or_else(|| Error::InvalidConfig("--measure or --preset is required".into()))?;
    let config = SweepConfig {
        scenarios: vec![args.scenario.template()?],
        r_min: args.r_min,
        r_max: args.r_max,
        points: args.grid,
        measures: vec![Measure::parse(name, args.subsystem.as_deref())?],
        output: args.out.clone(),
    };
    let records = run_sweep(&config)?;
    match &config.output {
        Some(path) => {
            emit_csv(&records, path)?;
        }
        None => {
            write_csv(&records, io::stdout().lock())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn threshold(args: ThresholdArgs) -> Result<ExitCode, Error> {
    let measure = Measure::parse(&args.measure, args.subsystem.as_deref())?;
    let res = find_threshold(
        &args.scenario.template()?,
        &measure,
        (args.r_min, args.r_max),
    )?;
    println!("scenario    {}", res.scenario);
    println!("measure     {} {}", res.measure, res.subsystem);
    println!("bracket     [{}, {}]", res.bracket.0, res.bracket.1);
    println!("root        {:.10}", res.root);
    println!(
        "width       {:.3e}",
        res.final_bracket.1 - res.final_bracket.0
    );
    println!("iterations  {}", res.iterations);
    println!("residual    {:.3e}", res.residual);
    Ok(ExitCode::SUCCESS)
}

fn verify(args: VerifyArgs) -> Result<ExitCode, Error> {
    if args.grid < 2 || !(0.0 <= args.r_min && args.r_min < args.r_max && args.r_max <= FRAC_PI_4) {
        return Err(Error::InvalidConfig(
            "need --grid >= 2 and 0 <= r-min < r-max <= pi/4".into(),
        ));
    }
    let report = verify_closed_forms(&linspace(args.r_min, args.r_max, args.grid))?;
    match &args.out {
        Some(path) => {
            fs::write(path, report.to_string())?;
            eprintln!("report written to {}", path.display());
        }
        None => print!("{report}"),
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY)
    })
}

fn state(args: PointArgs) -> Result<ExitCode, Error> {
    let scenario = args.scenario.template()?.at(args.r)?;
    let psi = scenario.expanded_state()?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    writeln!(
        out,
        "# scenario {} r={} slots {}",
        scenario.name(),
        args.r,
        psi.register()
    )?;
    for (idx, amp) in psi.amplitudes().iter().enumerate() {
        if amp.norm() > 1e-15 {
            writeln!(
                out,
                "{:+.12} {:+.12}i  {}",
                amp.re,
                amp.im,
                psi.register().ket(idx)
            )?;
        }
    }
    writeln!(out, "# norm {:.15}", psi.norm())?;
    Ok(ExitCode::SUCCESS)
}

fn measure(args: MeasureArgs) -> Result<ExitCode, Error> {
    let template = args.point.scenario.template()?;
    let measure = Measure::parse(&args.measure, args.subsystem.as_deref())?;
    let mut point = PointState::new(template.at(args.point.r)?)?;
    let value = point.evaluate(&measure)?;
    let rec = rindler_core::analysis::MeasureRecord {
        scenario: point.scenario.clone(),
        r: args.point.r,
        name: measure.name().to_string(),
        subsystem: measure.subsystem_label(&template),
        value,
    };
    write_csv(&[rec], io::stdout().lock())?;
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Sweep(a) => sweep(a),
        Command::Threshold(a) => threshold(a),
        Command::Verify(a) => verify(a),
        Command::State(a) => state(a),
        Command::Measure(a) => measure(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INVALID)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
