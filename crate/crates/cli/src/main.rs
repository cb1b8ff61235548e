//! Command-line interface: invariants at a point, sign-law checks,
//! randomized verification, and SVG rendering of projected curve families.
//!
//! Exit codes: 0 success; 1 verification found disagreements or residual
//! failures; 2 invalid input (surface syntax, geometry, I/O or usage);
//! 3 surface not evaluable at the requested point; 4 critical-point
//! precondition violated.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::f64::consts::PI;
use std::io::Write;
use std::process::ExitCode;

use curvefam::expr::EvalError;
use curvefam::invariants::{invariant_sample, InvariantSample};
use curvefam::projection::{ViewDirection, DEFAULT_EPS_REGULAR};
use curvefam::render::{render_svg, sample_family, DomainBox, FamilySelect, RenderError};
use curvefam::surface::Surface;
use curvefam::verify::{
    check_critical_props, check_sign_corollaries, run_suite, CriticalPointError, SignLawCheck,
    SignVerdict, SuiteConfig, DEFAULT_EPS_SIGN,
};

#[derive(Parser)]
#[command(
    name = "curvefam",
    version,
    about = "Invariants of curve families obtained by projecting a graph surface"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the projected-family invariants at one configuration
    Analyze(AnalyzeArgs),
    /// Check the sign laws at one configuration
    Signs(SignsArgs),
    /// Run the randomized verification suite and write a JSON report
    Verify(VerifyArgs),
    /// Render projected curve families as SVG
    Render(RenderArgs),
}

/// Surface and view shared by the point-wise commands.
#[derive(Args)]
struct SceneArgs {
    /// Surface: builtin name (sin_xy, ellip, hyp, parab, flat) or an
    /// expression in x and y, e.g. "x^2 - y^2"
    #[arg(short, long)]
    surface: String,

    /// Polar view angle θ (radians unless --degrees); default 3π/4
    #[arg(long)]
    theta: Option<f64>,

    /// Azimuthal view angle φ (radians unless --degrees); default 0
    #[arg(long)]
    phi: Option<f64>,

    /// Interpret --theta and --phi as degrees
    #[arg(long)]
    degrees: bool,
}

impl SceneArgs {
    fn surface(&self) -> Result<Surface, CliError> {
        Surface::from_spec(&self.surface)
            .map_err(|e| CliError::new(2, format!("invalid surface {:?}: {e}", self.surface)))
    }

    fn view(&self) -> ViewDirection {
        let convert = |v: f64| if self.degrees { v.to_radians() } else { v };
        ViewDirection::new(
            self.theta.map_or(3.0 * PI / 4.0, convert),
            self.phi.map_or(0.0, convert),
        )
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    scene: SceneArgs,

    /// Base-plane point, x coordinate
    #[arg(short, long, default_value_t = 0.0, allow_hyphen_values = true)]
    x: f64,

    /// Base-plane point, y coordinate
    #[arg(short, long, default_value_t = 0.0, allow_hyphen_values = true)]
    y: f64,
}

#[derive(Args)]
struct SignsArgs {
    #[command(flatten)]
    scene: SceneArgs,

    #[arg(short, long, default_value_t = 0.0, allow_hyphen_values = true)]
    x: f64,

    #[arg(short, long, default_value_t = 0.0, allow_hyphen_values = true)]
    y: f64,

    /// Check the critical-point sign laws at the origin instead of the
    /// general corollaries (requires g_x = g_y = g_xy = 0 there)
    #[arg(long)]
    critical: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// RNG seed for the sampling stream
    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Number of sampled configurations
    #[arg(long, default_value_t = 10_000)]
    samples: usize,

    /// Surfaces to sample (builtin names or expressions), comma-separated
    #[arg(long, value_delimiter = ',')]
    surfaces: Option<Vec<String>>,

    /// Relative residual tolerance for the closed-form route
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,

    /// Relative residual tolerance for the finite-difference route
    #[arg(long, default_value_t = 1e-5)]
    fd_tolerance: f64,

    /// Where to write the JSON report ("-" for stdout)
    #[arg(short, long, default_value = "verify-report.json")]
    output: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    X,
    Y,
    Both,
}

#[derive(Args)]
struct RenderArgs {
    #[command(flatten)]
    scene: SceneArgs,

    /// Domain box bounds
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    x_min: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    x_max: f64,
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    y_min: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    y_max: f64,

    /// Curves per family
    #[arg(long, default_value_t = 15)]
    curves: usize,

    /// Sample points per curve
    #[arg(long, default_value_t = 200)]
    points: usize,

    /// Which family to draw
    #[arg(long, value_enum, default_value_t = FamilyArg::Y)]
    family: FamilyArg,

    /// Image size in pixels
    #[arg(long, default_value_t = 800)]
    width: u32,
    #[arg(long, default_value_t = 600)]
    height: u32,

    /// Output file ("-" for stdout)
    #[arg(short, long, default_value = "-")]
    output: String,
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn new(code: u8, message: String) -> CliError {
        CliError { code, message }
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> CliError {
        CliError::new(3, format!("surface not evaluable: {e}"))
    }
}

impl From<CriticalPointError> for CliError {
    fn from(e: CriticalPointError) -> CliError {
        match e {
            CriticalPointError::Eval(inner) => inner.into(),
            other => CliError::new(4, other.to_string()),
        }
    }
}

impl From<RenderError> for CliError {
    fn from(e: RenderError) -> CliError {
        CliError::new(2, e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::new(2, format!("i/o error: {e}"))
    }
}

#[derive(Serialize)]
struct AnalyzeOutput<'a> {
    surface: &'a str,
    #[serde(flatten)]
    sample: InvariantSample,
}

#[derive(Serialize)]
struct SignsOutput<'a> {
    surface: &'a str,
    theta: f64,
    phi: f64,
    x: f64,
    y: f64,
    critical: bool,
    checks: Vec<SignLawCheck>,
}

fn write_output(target: &str, contents: &str) -> Result<(), CliError> {
    if target == "-" {
        std::io::stdout().write_all(contents.as_bytes())?;
    } else {
        std::fs::write(target, contents)?;
    }
    Ok(())
}

fn cmd_analyze(args: &AnalyzeArgs) -> Result<u8, CliError> {
    let surface = args.scene.surface()?;
    let view = args.scene.view();
    let sample = invariant_sample(&surface, &view, args.x, args.y, DEFAULT_EPS_REGULAR)?;
    let out = AnalyzeOutput { surface: surface.spec(), sample };
    println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    Ok(0)
}

fn cmd_signs(args: &SignsArgs) -> Result<u8, CliError> {
    let surface = args.scene.surface()?;
    let view = args.scene.view();
    let checks: Vec<SignLawCheck> = if args.critical {
        check_critical_props(&surface, &view, DEFAULT_EPS_SIGN)?.to_vec()
    } else {
        check_sign_corollaries(&surface, &view, args.x, args.y, DEFAULT_EPS_SIGN)?.to_vec()
    };
    let out = SignsOutput {
        surface: surface.spec(),
        theta: view.theta,
        phi: view.phi,
        x: if args.critical { 0.0 } else { args.x },
        y: if args.critical { 0.0 } else { args.y },
        critical: args.critical,
        checks,
    };
    println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    let disagreed = out.checks.iter().any(|c| c.verdict == SignVerdict::Disagree);
    Ok(if disagreed { 1 } else { 0 })
}

fn cmd_verify(args: &VerifyArgs) -> Result<u8, CliError> {
    let mut config = SuiteConfig {
        seed: args.seed,
        samples: args.samples,
        residual_tol: args.tolerance,
        fd_residual_tol: args.fd_tolerance,
        ..SuiteConfig::default()
    };
    if let Some(specs) = &args.surfaces {
        let mut surfaces = Vec::with_capacity(specs.len());
        for spec in specs {
            surfaces.push(
                Surface::from_spec(spec)
                    .map_err(|e| CliError::new(2, format!("invalid surface {spec:?}: {e}")))?,
            );
        }
        if surfaces.is_empty() {
            return Err(CliError::new(2, "need at least one surface".to_string()));
        }
        config.surfaces = surfaces;
    }

    let report = run_suite(&config);
    write_output(&args.output, &report.to_json())?;
    if args.output == "-" {
        eprint!("{}", report.summary());
    } else {
        print!("{}", report.summary());
        println!("report written to {}", args.output);
    }
    Ok(if report.pass { 0 } else { 1 })
}

fn cmd_render(args: &RenderArgs) -> Result<u8, CliError> {
    let surface = args.scene.surface()?;
    let view = args.scene.view();
    let domain = DomainBox {
        x_min: args.x_min,
        x_max: args.x_max,
        y_min: args.y_min,
        y_max: args.y_max,
    };
    let select = match args.family {
        FamilyArg::X => FamilySelect::X,
        FamilyArg::Y => FamilySelect::Y,
        FamilyArg::Both => FamilySelect::Both,
    };
    let drawing = sample_family(&surface, &view, &domain, args.curves, args.points, select)?;
    let svg = render_svg(&drawing, args.width, args.height);
    write_output(&args.output, &svg)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Signs(args) => cmd_signs(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Render(args) => cmd_render(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
