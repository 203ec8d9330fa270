//! The `wehrl` command-line front end.
//!
//! Every subcommand writes its report to stdout and diagnostics to stderr.
//! Exit codes: 0 on success, 1 when `verify` finds a failing invariant,
//! 2 on input or parse errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Result, WehrlError};
use crate::frame::CoherentFrame;
use crate::group::{GroupDescriptor, Subgroup};
use crate::husimi::{entropy_report, husimi, husimi_fast, measurement_channel, LogBase};
use crate::io::{
    density_to_csv, density_to_json, husimi_to_csv, husimi_to_json, read_state_file, StateInput,
};
use crate::minimizer::{minimize, scan_fiducials, MinimizeReport, MinimizerConfig};
use crate::random::{random_density, random_state};
use crate::state::DensityMatrix;
use crate::verify::{verify_subgroup, VerifyConfig};

#[derive(Debug, Parser)]
#[command(
    name = "wehrl",
    version,
    about = "Weyl frames, Husimi functions and Wehrl entropy over finite abelian groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order, dual, subgroup lattice and annihilator sizes.
    GroupInfo(CommonArgs),
    /// Runs the invariant suite for the vacuum frame of (G, H).
    Verify(CommonArgs),
    /// Wehrl and von Neumann entropy of a state.
    Entropy(CommonArgs),
    /// The Husimi function of a state.
    Husimi(CommonArgs),
    /// Applies the coherent-state measurement channel.
    Channel(CommonArgs),
    /// Minimizes the Wehrl entropy over pure states.
    Minimize(CommonArgs),
    /// Minimizes over random fiducials, with the vacuum frame as control.
    Scan(ScanArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Group, e.g. `Z4xZ2`.
    #[arg(long)]
    pub group: String,
    /// Generators of H, e.g. `2,0;0,1`. Defaults to H = G.
    #[arg(long)]
    pub subgroup: Option<String>,
    /// A state file (JSON vector, JSON density matrix or CSV vector) or one
    /// of `maximally_mixed`, `coherent:<g;λ>`, `random:<seed>`,
    /// `random_pure:<seed>`.
    #[arg(long)]
    pub state: Option<String>,
    #[arg(long, value_enum, default_value_t = LogBaseArg::E)]
    pub log_base: LogBaseArg,
    /// Defaults to csv for `husimi` and json otherwise.
    #[arg(long, value_enum)]
    pub output: Option<OutputFormat>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Number of random fiducials.
    #[arg(long, default_value_t = 4)]
    pub trials: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LogBaseArg {
    #[value(name = "e")]
    E,
    #[value(name = "2")]
    Two,
}

impl From<LogBaseArg> for LogBase {
    fn from(arg: LogBaseArg) -> Self {
        match arg {
            LogBaseArg::E => LogBase::E,
            LogBaseArg::Two => LogBase::Two,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(outcome) => {
            if stdout.write_all(outcome.report.as_bytes()).is_err() {
                return 2;
            }
            if let Some(message) = outcome.failure {
                let _ = writeln!(stderr, "error: {message}");
                return 1;
            }
            0
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

struct Outcome {
    report: String,
    failure: Option<String>,
}

impl Outcome {
    fn ok(report: String) -> Self {
        Outcome {
            report,
            failure: None,
        }
    }
}

fn execute(command: &Command) -> Result<Outcome> {
    match command {
        Command::GroupInfo(args) => group_info(args),
        Command::Verify(args) => verify(args),
        Command::Entropy(args) => entropy(args),
        Command::Husimi(args) => husimi_cmd(args),
        Command::Channel(args) => channel(args),
        Command::Minimize(args) => minimize_cmd(args),
        Command::Scan(args) => scan(args),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn format(args: &CommonArgs) -> OutputFormat {
    args.output.unwrap_or(OutputFormat::Json)
}

fn setup(args: &CommonArgs) -> Result<(GroupDescriptor, Subgroup)> {
    let group = GroupDescriptor::parse(&args.group)?;
    let h = match &args.subgroup {
        Some(text) => group.subgroup_closure(group.parse_generators(text)?)?,
        None => group.whole(),
    };
    Ok((group, h))
}

fn load_state(args: &CommonArgs, frame: &CoherentFrame) -> Result<StateInput> {
    let text = args.state.as_deref().ok_or_else(|| {
        WehrlError::InvalidConfig("--state is required for this subcommand".into())
    })?;
    let n = frame.dim();
    let state = if text == "maximally_mixed" {
        StateInput::Mixed(DensityMatrix::maximally_mixed(n))
    } else if let Some(point) = text.strip_prefix("coherent:") {
        let z = frame.group().parse_point(point)?;
        StateInput::Pure(frame.coherent_state(&z)?)
    } else if let Some(seed) = text.strip_prefix("random:") {
        StateInput::Mixed(random_density(
            n,
            &mut ChaCha8Rng::seed_from_u64(parse_seed(seed)?),
        ))
    } else if let Some(seed) = text.strip_prefix("random_pure:") {
        StateInput::Pure(random_state(
            n,
            &mut ChaCha8Rng::seed_from_u64(parse_seed(seed)?),
        ))
    } else {
        read_state_file(Path::new(text))?
    };
    if state.dim() != n {
        return Err(WehrlError::DimensionMismatch {
            expected: n,
            found: state.dim(),
        });
    }
    Ok(state)
}

fn parse_seed(text: &str) -> Result<u64> {
    text.parse()
        .map_err(|_| WehrlError::Parse(format!("invalid seed {text:?}")))
}

#[derive(Serialize)]
struct SubgroupInfo {
    generators: String,
    order: usize,
    annihilator_order: usize,
    is_corwin: bool,
}

#[derive(Serialize)]
struct GroupInfo {
    group: String,
    order: usize,
    cyclic_orders: Vec<usize>,
    dual_cyclic_orders: Vec<usize>,
    exponent: usize,
    n_invariant: usize,
    phase_space_order: usize,
    subgroup_count: usize,
    subgroups: Vec<SubgroupInfo>,
}

fn group_info(args: &CommonArgs) -> Result<Outcome> {
    let group = GroupDescriptor::parse(&args.group)?;
    let subgroups: Vec<SubgroupInfo> = group
        .all_subgroups()
        .iter()
        .map(|h| SubgroupInfo {
            generators: h.generator_string(),
            order: h.order(),
            annihilator_order: h.annihilator().order(),
            is_corwin: h.is_corwin(),
        })
        .collect();
    let report = match format(args) {
        OutputFormat::Json => json(&GroupInfo {
            group: group.to_string(),
            order: group.order(),
            cyclic_orders: group.cyclic_orders().to_vec(),
            dual_cyclic_orders: group.cyclic_orders().to_vec(),
            exponent: group.exponent(),
            n_invariant: group.n_invariant(),
            phase_space_order: group.phase_space_order(),
            subgroup_count: subgroups.len(),
            subgroups,
        }),
        OutputFormat::Csv => {
            let mut out = String::from("generators,order,annihilator_order,is_corwin\n");
            for s in &subgroups {
                writeln!(
                    out,
                    "\"{}\",{},{},{}",
                    s.generators, s.order, s.annihilator_order, s.is_corwin
                )
                .expect("write to string");
            }
            out
        }
    };
    Ok(Outcome::ok(report))
}

fn verify(args: &CommonArgs) -> Result<Outcome> {
    let (_, h) = setup(args)?;
    let config = VerifyConfig {
        seed: args.seed,
        ..Default::default()
    };
    let report = verify_subgroup(&h, &config)?;
    let text = match format(args) {
        OutputFormat::Json => json(&report),
        OutputFormat::Csv => {
            let mut out = String::from("check,residual,tolerance,passed\n");
            for c in &report.checks {
                writeln!(
                    out,
                    "{},{:?},{:?},{}",
                    c.name, c.residual, c.tolerance, c.passed
                )
                .expect("write to string");
            }
            out
        }
    };
    let failed: Vec<&str> = report
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name)
        .collect();
    Ok(Outcome {
        report: text,
        failure: (!failed.is_empty()).then(|| format!("failed checks: {}", failed.join(", "))),
    })
}

fn entropy(args: &CommonArgs) -> Result<Outcome> {
    let (_, h) = setup(args)?;
    let frame = CoherentFrame::vacuum(&h);
    let rho = load_state(args, &frame)?.density();
    let report = entropy_report(&frame, &rho, args.log_base.into())?;
    Ok(Outcome::ok(match format(args) {
        OutputFormat::Json => json(&report),
        OutputFormat::Csv => {
            let base = match report.log_base {
                LogBase::E => "e",
                LogBase::Two => "2",
            };
            format!(
                "wehrl,von_neumann,gap,log_base\n{:?},{:?},{:?},{base}\n",
                report.wehrl, report.von_neumann, report.gap
            )
        }
    }))
}

fn husimi_cmd(args: &CommonArgs) -> Result<Outcome> {
    let (_, h) = setup(args)?;
    let frame = CoherentFrame::vacuum(&h);
    let table = match load_state(args, &frame)? {
        StateInput::Pure(psi) => husimi_fast(&frame, &psi)?,
        StateInput::Mixed(rho) => husimi(&frame, &rho)?,
    };
    Ok(Outcome::ok(
        match args.output.unwrap_or(OutputFormat::Csv) {
            OutputFormat::Csv => husimi_to_csv(&table),
            OutputFormat::Json => husimi_to_json(&table) + "\n",
        },
    ))
}

fn channel(args: &CommonArgs) -> Result<Outcome> {
    let (_, h) = setup(args)?;
    let frame = CoherentFrame::vacuum(&h);
    let rho = load_state(args, &frame)?.density();
    let out = measurement_channel(&frame, &rho)?;
    Ok(Outcome::ok(match format(args) {
        OutputFormat::Json => density_to_json(&out) + "\n",
        OutputFormat::Csv => density_to_csv(&out),
    }))
}

fn rows_to_csv(rows: &[MinimizeReport]) -> String {
    let mut out =
        String::from("group,subgroup,fiducial_kind,best_entropy,overlap,iterations,seed\n");
    for r in rows {
        writeln!(
            out,
            "{},\"{}\",{},{:?},{:?},{},{}",
            r.group, r.subgroup, r.fiducial_kind, r.best_entropy, r.overlap, r.iterations, r.seed
        )
        .expect("write to string");
    }
    out
}

fn minimize_cmd(args: &CommonArgs) -> Result<Outcome> {
    let (_, h) = setup(args)?;
    let frame = CoherentFrame::vacuum(&h);
    let result = minimize(&frame, &MinimizerConfig::with_seed(args.seed))?;
    let mut report = MinimizeReport::new(&frame, "vacuum", &result, args.seed);
    report.best_entropy = LogBase::from(args.log_base).from_nats(report.best_entropy);
    Ok(Outcome::ok(match format(args) {
        OutputFormat::Json => json(&report),
        OutputFormat::Csv => rows_to_csv(std::slice::from_ref(&report)),
    }))
}

fn scan(args: &ScanArgs) -> Result<Outcome> {
    let (group, h) = setup(&args.common)?;
    let mut rows = scan_fiducials(
        &group,
        &h,
        args.trials,
        &MinimizerConfig::with_seed(args.common.seed),
    )?;
    for r in &mut rows {
        r.best_entropy = LogBase::from(args.common.log_base).from_nats(r.best_entropy);
    }
    Ok(Outcome::ok(match format(&args.common) {
        OutputFormat::Json => json(&rows),
        OutputFormat::Csv => rows_to_csv(&rows),
    }))
}
