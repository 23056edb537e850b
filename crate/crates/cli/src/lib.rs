//! Command-line front end. Every subcommand is a thin wrapper over one
//! library call; numeric output goes through the library's CSV and JSON
//! writers and is only emitted once the whole computation has succeeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qlorenz::analysis::SUM_TOLERANCE;
use qlorenz::{
    classify_stability, divergence, find_equilibria, integrate, integrate_multiplicative, lyapunov_spectrum,
    sweep_beta, vector_field, volume_contraction_check, write_csv, write_json, BenettinSettings,
    EquilibriumLabel, MulKind, ReportDocument, SimSettings, State3, SystemParams, Trajectory,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "qlorenz",
    version,
    about = "Simulate and analyze the modified quadratic Lorenz system"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Integrate the flow with fixed-step RK4 and emit the trajectory
    Simulate(SimulateArgs),
    /// Integrate the geometric or bigeometric multiplicative form
    Msim(MsimArgs),
    /// List the equilibria O, E+ and E-
    Equilibria(EquilibriaArgs),
    /// Eigenvalues of the Jacobian and stability class at the equilibria
    Stability(StabilityArgs),
    /// Lyapunov spectrum (Benettin) and Kaplan-Yorke dimension
    Lyapunov(LyapunovArgs),
    /// Attractor statistics and largest exponent over a list of beta values
    Sweep(SweepArgs),
    /// Compare the measured phase-volume contraction rate with the divergence
    Contraction(ContractionArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Geometric,
    Bigeometric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Point {
    O,
    Eplus,
    Eminus,
    All,
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    #[arg(long, default_value_t = 12.0, allow_negative_numbers = true)]
    pub sigma: f64,
    #[arg(long, default_value_t = 8.0, allow_negative_numbers = true)]
    pub rho: f64,
    #[arg(long, default_value_t = 4.0, allow_negative_numbers = true)]
    pub beta: f64,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; standard output when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct TimeArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub t0: Option<f64>,
    #[arg(long, default_value_t = 1000.0, allow_negative_numbers = true)]
    pub t_end: f64,
    #[arg(long, default_value_t = 0.001, allow_negative_numbers = true)]
    pub h: f64,
    /// Transient time dropped from the output [default: 10% of the time span]
    #[arg(long, allow_negative_numbers = true)]
    pub discard: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub sample_every: usize,
}

#[derive(Debug, Args)]
pub struct BenettinArgs {
    #[arg(long = "lyap-h", default_value_t = 0.001, allow_negative_numbers = true)]
    pub lyap_h: f64,
    #[arg(long, default_value_t = 100.0, allow_negative_numbers = true)]
    pub transient: f64,
    #[arg(long, default_value_t = 1000.0, allow_negative_numbers = true)]
    pub total_time: f64,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub renorm_interval: f64,
}

fn parse_state(s: &str) -> Result<State3, String> {
    let parts = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| format!("expected x,y,z: {e}"))?;
    match parts[..] {
        [x, y, z] => Ok(State3::new(x, y, z)),
        _ => Err(format!(
            "expected three comma-separated numbers, got {}",
            parts.len()
        )),
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value = "1,1,1", value_parser = parse_state, allow_hyphen_values = true)]
    pub init: State3,
    #[command(flatten)]
    pub time: TimeArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct MsimArgs {
    #[arg(long, value_enum, default_value_t = Kind::Geometric)]
    pub kind: Kind,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value = "1,1,1", value_parser = parse_state, allow_hyphen_values = true)]
    pub init: State3,
    #[command(flatten)]
    pub time: TimeArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EquilibriaArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct StabilityArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_enum, default_value_t = Point::All)]
    pub point: Point,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct LyapunovArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value = "1,1,1", value_parser = parse_state, allow_hyphen_values = true)]
    pub init: State3,
    #[arg(long, default_value_t = 0.001, allow_negative_numbers = true)]
    pub h: f64,
    #[arg(long, default_value_t = 100.0, allow_negative_numbers = true)]
    pub transient: f64,
    #[arg(long, default_value_t = 1000.0, allow_negative_numbers = true)]
    pub total_time: f64,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub renorm_interval: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 12.0, allow_negative_numbers = true)]
    pub sigma: f64,
    #[arg(long, default_value_t = 8.0, allow_negative_numbers = true)]
    pub rho: f64,
    #[arg(
        long,
        default_value = "0.1,0.5,2,4,10",
        value_delimiter = ',',
        allow_hyphen_values = true
    )]
    pub betas: Vec<f64>,
    #[arg(long, default_value = "1,1,1", value_parser = parse_state, allow_hyphen_values = true)]
    pub init: State3,
    #[command(flatten)]
    pub time: TimeArgs,
    #[command(flatten)]
    pub benettin: BenettinArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ContractionArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value = "1,1,1", value_parser = parse_state, allow_hyphen_values = true)]
    pub init: State3,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub t: f64,
    #[arg(long, default_value_t = 0.001, allow_negative_numbers = true)]
    pub h: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// A failed command and the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<qlorenz::Error> for Failure {
    fn from(e: qlorenz::Error) -> Self {
        let code = if e.is_numerical() {
            EXIT_NUMERICAL
        } else {
            EXIT_USAGE
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self {
            code: EXIT_IO,
            message: e.to_string(),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Self {
            code: EXIT_IO,
            message: e.to_string(),
        }
    }
}

type Outcome<T> = Result<T, Failure>;

impl ParamArgs {
    fn build(&self) -> Outcome<SystemParams> {
        Ok(SystemParams::new(self.sigma, self.rho, self.beta)?)
    }
}

impl TimeArgs {
    fn build(&self, default_t0: Option<f64>) -> Outcome<SimSettings> {
        let t0 = self
            .t0
            .or(default_t0)
            .ok_or_else(|| Failure::usage("--t0 is required (and must be > 0) for bigeometric runs"))?;
        let settings = SimSettings {
            t0,
            t_end: self.t_end,
            h: self.h,
            discard: self.discard.unwrap_or(0.1 * (self.t_end - t0)),
            sample_every: self.sample_every,
        };
        settings.validate()?;
        Ok(settings)
    }
}

fn analysis_format(output: &OutputArgs, command: &str) -> Outcome<()> {
    match output.format {
        None | Some(Format::Json) => Ok(()),
        Some(Format::Csv) => Err(Failure::usage(format!("{command} only supports --format json"))),
    }
}

fn json_bytes(doc: &ReportDocument) -> Outcome<Vec<u8>> {
    let mut buf = Vec::new();
    write_json(doc, &mut buf)?;
    Ok(buf)
}

fn trajectory_bytes(
    command: &str,
    traj: &Trajectory,
    inputs: serde_json::Value,
    format: Option<Format>,
) -> Outcome<Vec<u8>> {
    match format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut buf = Vec::new();
            write_csv(traj, &mut buf)?;
            Ok(buf)
        }
        Format::Json => {
            let doc = ReportDocument::new(command, &inputs, &json!({ "samples": traj.samples }))?;
            json_bytes(&doc)
        }
    }
}

fn simulate(args: &SimulateArgs) -> Outcome<Vec<u8>> {
    let p = args.params.build()?;
    let cfg = args.time.build(Some(0.0))?;
    let traj = integrate(&p, args.init, &cfg)?;
    let inputs = json!({ "params": p, "init": args.init, "settings": cfg });
    trajectory_bytes("simulate", &traj, inputs, args.output.format)
}

fn msim(args: &MsimArgs) -> Outcome<Vec<u8>> {
    let p = args.params.build()?;
    let (kind, default_t0) = match args.kind {
        Kind::Geometric => (MulKind::Geometric, Some(0.0)),
        Kind::Bigeometric => (MulKind::Bigeometric, None),
    };
    let cfg = args.time.build(default_t0)?;
    let traj = integrate_multiplicative(kind, &p, args.init, &cfg)?;
    let inputs = json!({ "kind": kind, "params": p, "init": args.init, "settings": cfg });
    trajectory_bytes("msim", &traj, inputs, args.output.format)
}

fn equilibria(args: &EquilibriaArgs) -> Outcome<Vec<u8>> {
    analysis_format(&args.output, "equilibria")?;
    let p = args.params.build()?;
    let points = find_equilibria(&p)
        .iter()
        .map(|e| {
            let residual = vector_field(e.location, &p).map(|d| d.norm())?;
            Ok(json!({ "label": e.label, "location": e.location, "residual": residual }))
        })
        .collect::<Outcome<Vec<_>>>()?;
    let doc = ReportDocument::new(
        "equilibria",
        &json!({ "params": p }),
        &json!({ "equilibria": points }),
    )?;
    json_bytes(&doc)
}

fn stability(args: &StabilityArgs) -> Outcome<Vec<u8>> {
    analysis_format(&args.output, "stability")?;
    let p = args.params.build()?;
    let wanted = |label: EquilibriumLabel| match args.point {
        Point::All => true,
        Point::O => label == EquilibriumLabel::O,
        Point::Eplus => label == EquilibriumLabel::Eplus,
        Point::Eminus => label == EquilibriumLabel::Eminus,
    };
    let reports: Vec<_> = find_equilibria(&p)
        .iter()
        .filter(|e| wanted(e.label))
        .map(|e| classify_stability(e, &p))
        .collect();
    let doc = ReportDocument::new(
        "stability",
        &json!({ "params": p, "point": format!("{:?}", args.point).to_lowercase() }),
        &json!({ "reports": reports }),
    )?;
    json_bytes(&doc)
}

fn lyapunov(args: &LyapunovArgs) -> Outcome<Vec<u8>> {
    analysis_format(&args.output, "lyapunov")?;
    let p = args.params.build()?;
    let cfg = BenettinSettings {
        h: args.h,
        transient: args.transient,
        total_time: args.total_time,
        renorm_interval: args.renorm_interval,
    };
    let spectrum = lyapunov_spectrum(&p, args.init, &cfg)?;
    let results = json!({
        "exponents": spectrum.exponents,
        "sum": spectrum.sum(),
        "divergence": divergence(&p),
        "sum_tolerance": SUM_TOLERANCE,
        "dimension": spectrum.dimension,
        "final_state": spectrum.final_state,
    });
    let doc = ReportDocument::new(
        "lyapunov",
        &json!({ "params": p, "init": args.init, "settings": cfg }),
        &results,
    )?
    .with_warnings(spectrum.diagnostics(&p));
    json_bytes(&doc)
}

fn sweep(args: &SweepArgs) -> Outcome<Vec<u8>> {
    analysis_format(&args.output, "sweep")?;
    // β is replaced per cell; the base only carries σ and ρ.
    let base = SystemParams::new(args.sigma, args.rho, 1.0)?;
    let cfg = args.time.build(Some(0.0))?;
    let lyap = BenettinSettings {
        h: args.benettin.lyap_h,
        transient: args.benettin.transient,
        total_time: args.benettin.total_time,
        renorm_interval: args.benettin.renorm_interval,
    };
    let report = sweep_beta(&base, &args.betas, args.init, &cfg, &lyap)?;
    let warnings = report
        .cells
        .iter()
        .flat_map(|c| c.errors.iter().map(move |e| format!("beta = {}: {e}", c.beta)))
        .collect();
    let inputs = json!({
        "sigma": args.sigma,
        "rho": args.rho,
        "betas": args.betas,
        "init": args.init,
        "settings": cfg,
        "lyapunov_settings": lyap,
    });
    let doc = ReportDocument::new("sweep", &inputs, &report)?.with_warnings(warnings);
    json_bytes(&doc)
}

fn contraction(args: &ContractionArgs) -> Outcome<Vec<u8>> {
    analysis_format(&args.output, "contraction")?;
    let p = args.params.build()?;
    let check = volume_contraction_check(&p, args.init, args.t, args.h)?;
    let results = json!({
        "measured_log_rate": check.measured_log_rate,
        "theoretical": check.theoretical,
        "relative_error": check.relative_error(),
    });
    let inputs = json!({ "params": p, "init": args.init, "t": args.t, "h": args.h });
    let doc = ReportDocument::new("contraction", &inputs, &results)?;
    json_bytes(&doc)
}

/// Runs the command and returns the bytes it would write.
pub fn execute(command: &CliCommand) -> Outcome<Vec<u8>> {
    match command {
        CliCommand::Simulate(a) => simulate(a),
        CliCommand::Msim(a) => msim(a),
        CliCommand::Equilibria(a) => equilibria(a),
        CliCommand::Stability(a) => stability(a),
        CliCommand::Lyapunov(a) => lyapunov(a),
        CliCommand::Sweep(a) => sweep(a),
        CliCommand::Contraction(a) => contraction(a),
    }
}

fn output_path(command: &CliCommand) -> Option<&PathBuf> {
    match command {
        CliCommand::Simulate(a) => a.output.out.as_ref(),
        CliCommand::Msim(a) => a.output.out.as_ref(),
        CliCommand::Equilibria(a) => a.output.out.as_ref(),
        CliCommand::Stability(a) => a.output.out.as_ref(),
        CliCommand::Lyapunov(a) => a.output.out.as_ref(),
        CliCommand::Sweep(a) => a.output.out.as_ref(),
        CliCommand::Contraction(a) => a.output.out.as_ref(),
    }
}

/// Parses `argv` (including the program name), runs the command and returns
/// the process exit code: 0 success, 1 I/O failure, 2 usage or invalid
/// input, 3 numerical failure. Nothing is written to `out` (or to the
/// `--out` file) unless the command succeeds.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };

    let result = execute(&cli.command).and_then(|bytes| match output_path(&cli.command) {
        Some(path) => std::fs::write(path, &bytes).map_err(|e| Failure {
            code: EXIT_IO,
            message: format!("{}: {e}", path.display()),
        }),
        None => out.write_all(&bytes).map_err(Failure::from),
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
