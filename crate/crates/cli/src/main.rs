mod figures;

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use simnitm::analysis::{
    bvp_residual_with, default_target_bracket, find_critical_parameter, resolve_sign,
    solve_for_target_p, solve_with_policy, sweep, EtaPolicy, SignPolicy, FOLD_BRACKET,
    TABLE1_MINUS, TABLE1_PLUS, TABLE2,
};
use simnitm::invariance::analyze_family;
use simnitm::ode::IntegratorConfig;
use simnitm::output::{self, Delimiter, PStarEntry};
use simnitm::problems::{recommended_sign, Family, Sign, SignChoice, SimilarityProblem};
use simnitm::scaling::ScaledSolution;
use simnitm::NitmError;

#[derive(Parser)]
#[command(
    name = "simnitm",
    version,
    about = "Blasius-type boundary layers solved by one IVP integration and a scaling-group rescale"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one problem for a given star parameter.
    Solve(SolveArgs),
    /// Find the star parameter giving a prescribed physical parameter, then solve.
    Target(TargetArgs),
    /// Solve a list of star parameters and write one row per value.
    Sweep(SweepArgs),
    /// Locate the extremal physical parameter on a branch.
    Critical(CriticalArgs),
    /// Check whether a family admits a usable extended scaling group.
    Invariance(InvarianceArgs),
    /// Write plot data for the branch and profile figures.
    Figures(FiguresArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Tsv,
}

impl From<Format> for Delimiter {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => Delimiter::Comma,
            Format::Tsv => Delimiter::Tab,
        }
    }
}

#[derive(Clone, Copy)]
enum SignArg {
    Fixed(Sign),
    Auto,
}

fn parse_sign(s: &str) -> Result<SignArg, String> {
    if s == "auto" {
        return Ok(SignArg::Auto);
    }
    s.parse::<Sign>()
        .map(SignArg::Fixed)
        .map_err(|_| format!("expected +1, -1 or auto, got '{s}'"))
}

fn parse_eta(s: &str) -> Result<EtaPolicy, String> {
    if s == "auto" {
        return Ok(EtaPolicy::Auto);
    }
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(EtaPolicy::Fixed(v)),
        _ => Err(format!("expected a positive number or auto, got '{s}'")),
    }
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: NitmError| e.to_string())
}

/// Options shared by every solving subcommand.
#[derive(Args)]
struct Common {
    /// Star truncated boundary, or `auto` to pick one from the family's candidates.
    #[arg(long, default_value = "auto", value_parser = parse_eta)]
    eta_inf: EtaPolicy,
    #[arg(long, default_value_t = 1e-10)]
    rel_tol: f64,
    #[arg(long, default_value_t = 1e-10)]
    abs_tol: f64,
    /// Tolerance on the terminal slope when judging that f' has flattened.
    #[arg(long, default_value_t = 1e-6)]
    plateau_tol: f64,
    #[arg(long, default_value_t = 1_000_000)]
    max_steps: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

impl Common {
    fn config(&self) -> Result<IntegratorConfig, CliError> {
        let cfg = IntegratorConfig {
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            plateau_tol: self.plateau_tol,
            max_steps: self.max_steps,
            ..IntegratorConfig::default()
        };
        cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(cfg)
    }

    fn delimiter(&self) -> Delimiter {
        self.format.into()
    }

    fn path(&self, stem: &str) -> Result<PathBuf, CliError> {
        fs::create_dir_all(&self.out)?;
        Ok(self
            .out
            .join(format!("{stem}.{}", self.delimiter().extension())))
    }
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct SolveArgs {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    /// Star parameter P*.
    #[arg(long)]
    pstar: f64,
    /// Star normalization f*''(0) for the moving wall: +1, -1 or auto.
    #[arg(long, default_value = "auto", value_parser = parse_sign)]
    sign: SignArg,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct TargetArgs {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    /// Physical parameter P to reach.
    #[arg(long = "p")]
    target: f64,
    #[arg(long, default_value = "auto", value_parser = parse_sign)]
    sign: SignArg,
    /// Star-parameter bracket; chosen automatically when omitted.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
    bracket: Option<Vec<f64>>,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    /// Star parameters of the moving-wall table, both normalizations.
    Table1,
    /// Star parameters of the gasification table.
    Table2,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct SweepArgs {
    #[arg(long, value_parser = parse_family, required_unless_present = "preset")]
    family: Option<Family>,
    /// File of star parameters (whitespace or comma separated, `#` comments).
    #[arg(long, conflicts_with_all = ["pstar", "preset"])]
    pstar_file: Option<PathBuf>,
    /// Comma-separated star parameters.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        conflicts_with = "preset"
    )]
    pstar: Option<Vec<f64>>,
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    #[arg(long, default_value = "auto", value_parser = parse_sign)]
    sign: SignArg,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct CriticalArgs {
    #[arg(long, value_parser = parse_family, default_value = "moving-wall")]
    family: Family,
    #[arg(long, default_value = "+1", value_parser = parse_sign)]
    sign: SignArg,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
    bracket: Option<Vec<f64>>,
    /// Number of star parameters in the written branch scan.
    #[arg(long, default_value_t = 101)]
    points: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct InvarianceArgs {
    #[arg(long, value_parser = parse_family)]
    family: Family,
}

#[derive(Args)]
struct FiguresArgs {
    /// Resample profiles onto N equally spaced points instead of the integrator steps.
    #[arg(long, value_name = "N")]
    resample: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Solver(NitmError),
    Io(io::Error),
}

impl From<NitmError> for CliError {
    fn from(e: NitmError) -> Self {
        CliError::Solver(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Solver(_) | CliError::Io(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Solver(e) => write!(f, "solver error: {e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

fn bracket_arg(v: &Option<Vec<f64>>) -> Option<(f64, f64)> {
    v.as_ref().map(|b| (b[0], b[1]))
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    Ok(BufWriter::new(File::create(path)?))
}

/// Writes `solution` and `summary` tables and echoes the summary on stdout.
fn write_solution(
    sol: &ScaledSolution,
    common: &Common,
    cfg: &IntegratorConfig,
) -> Result<(), CliError> {
    let delim = common.delimiter();
    let problem = SimilarityProblem::new(sol.family, sol.p_star, sol.sign);
    let residual = bvp_residual_with(sol, &problem, cfg);

    let mut w = create(&common.path("solution")?)?;
    output::write_trajectory(&mut w, &sol.trajectory, delim)?;
    w.flush()?;

    let mut summary = Vec::new();
    output::write_summary(&mut summary, sol, &residual, delim)?;
    fs::write(common.path("summary")?, &summary)?;
    io::stdout().write_all(&summary)?;
    if !residual.passes(1e-5) {
        eprintln!("warning: residual check above 1e-5: {residual:?}");
    }
    Ok(())
}

fn sign_policy(sign: SignArg) -> SignPolicy {
    match sign {
        SignArg::Fixed(s) => SignPolicy::Fixed(s),
        SignArg::Auto => SignPolicy::Auto,
    }
}

fn cmd_solve(a: &SolveArgs) -> Result<(), CliError> {
    let cfg = a.common.config()?;
    let eta = a.common.eta_inf;
    let sign = resolve_sign(a.family, a.pstar, sign_policy(a.sign), &cfg, eta);
    let sol = solve_with_policy(&SimilarityProblem::new(a.family, a.pstar, sign), &cfg, eta)?;
    write_solution(&sol, &a.common, &cfg)
}

fn cmd_target(a: &TargetArgs) -> Result<(), CliError> {
    if !a.family.is_solvable() {
        return Err(NitmError::Unsupported(a.family).into());
    }
    let cfg = a.common.config()?;
    let eta = a.common.eta_inf;
    let sign = match a.sign {
        SignArg::Fixed(s) => s,
        SignArg::Auto => match recommended_sign(a.target) {
            SignChoice::Sign(s) => s,
            SignChoice::Degenerate => Sign::Plus,
        },
    };
    let bracket = match bracket_arg(&a.bracket) {
        Some(b) => b,
        None => default_target_bracket(a.family, a.target, sign, &cfg, eta).ok_or_else(|| {
            CliError::Usage(format!(
                "no {} bracket reaches P = {} with sign {sign}; pass --bracket",
                a.family, a.target
            ))
        })?,
    };
    let sol = solve_for_target_p(a.family, a.target, sign, bracket, &cfg, eta)?;
    write_solution(&sol, &a.common, &cfg)
}

fn cmd_sweep(a: &SweepArgs) -> Result<(), CliError> {
    let cfg = a.common.config()?;
    let eta = a.common.eta_inf;
    let rows = match a.preset {
        Some(Preset::Table1) => {
            let mut rows = sweep(
                Family::MovingWall,
                &TABLE1_PLUS,
                SignPolicy::Fixed(Sign::Plus),
                &cfg,
                eta,
            );
            rows.extend(sweep(
                Family::MovingWall,
                &TABLE1_MINUS,
                SignPolicy::Fixed(Sign::Minus),
                &cfg,
                eta,
            ));
            rows
        }
        Some(Preset::Table2) => sweep(
            Family::Gasification,
            &TABLE2,
            SignPolicy::Fixed(Sign::Plus),
            &cfg,
            eta,
        ),
        None => {
            let family = a.family.expect("clap enforces --family without --preset");
            if !family.is_solvable() {
                return Err(NitmError::Unsupported(family).into());
            }
            let entries = match (&a.pstar_file, &a.pstar) {
                (Some(path), _) => {
                    let text = fs::read_to_string(path).map_err(|e| {
                        CliError::Usage(format!("cannot read {}: {e}", path.display()))
                    })?;
                    output::parse_p_star_list(&text).map_err(CliError::Usage)?
                }
                (None, Some(v)) => v
                    .iter()
                    .map(|&p_star| PStarEntry { p_star, sign: None })
                    .collect(),
                (None, None) => {
                    return Err(CliError::Usage(
                        "pass --pstar, --pstar-file or --preset".into(),
                    ))
                }
            };
            // Consecutive entries sharing a normalization are swept together.
            let mut rows = Vec::with_capacity(entries.len());
            for group in entries.chunk_by(|x, y| x.sign == y.sign) {
                let policy = group[0].sign.map_or(sign_policy(a.sign), SignPolicy::Fixed);
                let values: Vec<f64> = group.iter().map(|e| e.p_star).collect();
                rows.extend(sweep(family, &values, policy, &cfg, eta));
            }
            rows
        }
    };
    let mut table = Vec::new();
    output::write_sweep(&mut table, &rows, a.common.delimiter())?;
    fs::write(a.common.path("sweep")?, &table)?;
    io::stdout().write_all(&table)?;
    Ok(())
}

fn cmd_critical(a: &CriticalArgs) -> Result<(), CliError> {
    let cfg = a.common.config()?;
    let eta = a.common.eta_inf;
    let sign = match a.sign {
        SignArg::Fixed(s) => s,
        SignArg::Auto => Sign::Plus,
    };
    let (lo, hi) = bracket_arg(&a.bracket).unwrap_or(FOLD_BRACKET);
    let res = find_critical_parameter(a.family, sign, (lo, hi), &cfg, eta)?;
    println!("P_c = {}", output::format_number(res.p_c));
    println!("P* = {}", output::format_number(res.p_star_at_pc));

    let n = a.points.max(2);
    let grid: Vec<f64> = (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect();
    let rows = sweep(a.family, &grid, SignPolicy::Fixed(sign), &cfg, eta);
    let mut w = create(&a.common.path("critical_branch")?)?;
    output::write_series(
        &mut w,
        "P",
        "d2f0",
        rows.iter()
            .filter(|r| r.is_ok())
            .map(|r| (r.p_physical, r.d2f0)),
        a.common.delimiter(),
    )?;
    w.flush()?;
    Ok(())
}

fn cmd_invariance(a: &InvarianceArgs) -> ExitCode {
    let report = analyze_family(a.family);
    println!("family: {}", a.family);
    println!("{report}");
    if report.applicable {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    }
}

/// Caps rayon's global pool when `SIMNITM_THREADS` is set.
fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("SIMNITM_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|n| *n > 0).ok_or_else(|| {
        CliError::Usage(format!(
            "SIMNITM_THREADS must be a positive integer, got '{v}'"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    configure_threads()?;
    match &cli.command {
        Command::Solve(a) => cmd_solve(a)?,
        Command::Target(a) => cmd_target(a)?,
        Command::Sweep(a) => cmd_sweep(a)?,
        Command::Critical(a) => cmd_critical(a)?,
        Command::Invariance(a) => return Ok(cmd_invariance(a)),
        Command::Figures(a) => {
            figures::write_all(&a.common.config()?, a.common.eta_inf, a.resample, &a.common)?
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("simnitm: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
