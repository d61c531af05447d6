//! `doublewell` command-line front end.

mod report;

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use doublewell::example::{golden_checks, worked_example_spec};
use doublewell::oracle::compare_with_tol;
use doublewell::perturb::{invert_ratio, perturbed_levels, symmetric_base};
use doublewell::wavefunc::write_csv;
use doublewell::{Error, Parity, TunnelingModel, WavefunctionModel, WellSpec};

use report::{golden_table, GoldenBlock, OracleBlock, PerturbationBlock, Report};

#[derive(Parser)]
#[command(
    name = "doublewell",
    version,
    about = "Bound states of an asymmetric square double well"
)]
struct Cli {
    /// Also print a 12-digit summary table to stderr.
    #[arg(long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the closed-form pipeline and print a JSON report.
    Solve { spec: PathBuf },
    /// Add a small antisymmetric well-depth perturbation to a symmetric spec.
    Perturb {
        spec: PathBuf,
        #[command(flatten)]
        strength: Strength,
    },
    /// Compare the closed-form levels against exact shooting.
    Oracle {
        spec: PathBuf,
        /// Relative bisection tolerance of the exact levels.
        #[arg(long, default_value_t = doublewell::oracle::DEFAULT_TOL)]
        tol: f64,
    },
    /// Write the wavefunction on a uniform grid as CSV.
    Sample {
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = State::Ground)]
        state: State,
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true, required = true)]
        range: Vec<f64>,
        #[arg(long, default_value_t = 1001)]
        points: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Reproduce the built-in symmetric example against its golden values.
    #[command(name = "paper-example")]
    WorkedExample {
        /// Print the JSON report instead of the check table.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Strength {
    /// Shift `dV`: the left well is raised and the right well lowered by it.
    #[arg(long, allow_negative_numbers = true)]
    delta_v: Option<f64>,
    /// Shift in units of the unperturbed splitting, `v = dV / dE`.
    #[arg(long, allow_negative_numbers = true)]
    v: Option<f64>,
    /// Target ground-state ratio `P_R / P_L`.
    #[arg(long)]
    ratio: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum State {
    Ground,
    Excited,
}

enum Failure {
    Core(Error),
    ReadSpec(PathBuf, std::io::Error),
    BadFlag(String),
    Write(PathBuf, std::io::Error),
    Golden(Vec<String>),
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure::Core(err)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(err) => match err {
                Error::InvalidSpec(_)
                | Error::Parse { .. }
                | Error::BadRange(_)
                | Error::GridTooCoarse { .. }
                | Error::PerturbationTooLarge { .. } => 2,
                Error::AssumptionViolated(_) | Error::ExcitedBelowZero(_) => 3,
                Error::NotSymmetric { .. } => 4,
                Error::LevelNotFound { .. } | Error::DegeneracyUnresolved { .. } => 5,
                _ => 1,
            },
            Failure::ReadSpec(..) | Failure::BadFlag(_) => 2,
            Failure::Write(..) => 6,
            Failure::Golden(_) => 7,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(err @ (Error::AssumptionViolated(_) | Error::ExcitedBelowZero(_))) => format!(
                "{err}\nhint: the closed-form levels are unreliable here; run `doublewell oracle` for exact levels"
            ),
            Failure::Core(err @ Error::NotSymmetric { .. }) => {
                format!("{err}\nhint: `perturb` needs a left-right symmetric base spec")
            }
            Failure::Core(err @ Error::DegeneracyUnresolved { .. }) => {
                format!("{err}\nhint: pass a smaller --tol, well below dE / E")
            }
            Failure::Core(err @ Error::LevelNotFound { .. }) => {
                format!("{err}\nhint: the spec may bind fewer than two states")
            }
            Failure::Core(err) => err.to_string(),
            Failure::ReadSpec(path, err) => format!("cannot read spec file {}: {err}", path.display()),
            Failure::BadFlag(msg) => msg.clone(),
            Failure::Write(path, err) => format!("cannot write {}: {err}", path.display()),
            Failure::Golden(names) => format!("golden checks failed: {}", names.join(", ")),
        }
    }
}

fn read_spec(path: &Path) -> Result<WellSpec, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::ReadSpec(path.to_path_buf(), e))?;
    Ok(text.parse()?)
}

fn emit(report: &Report, verbose: bool) {
    if verbose {
        eprint!("{}", report.table());
    }
    print!("{}", report.to_json());
}

fn cmd_solve(path: &Path, verbose: bool) -> Result<(), Failure> {
    let spec = read_spec(path)?;
    let model = TunnelingModel::solve(&spec)?;
    emit(&Report::from_model(&model), verbose);
    Ok(())
}

fn cmd_perturb(path: &Path, strength: &Strength, verbose: bool) -> Result<(), Failure> {
    let spec = read_spec(path)?;
    let model = TunnelingModel::solve(&spec)?;
    let base = symmetric_base(&spec)?;
    let (flag, value, delta_v) = match (strength.delta_v, strength.v, strength.ratio) {
        (Some(dv), _, _) => ("delta_v", dv, dv),
        (_, Some(v), _) => ("v", v, v * base.delta_e),
        (_, _, Some(ratio)) => {
            if !(ratio > 0.0 && ratio.is_finite()) {
                return Err(Failure::BadFlag(format!(
                    "--ratio must be positive and finite, got {ratio}"
                )));
            }
            ("ratio", ratio, invert_ratio(&base, ratio)?)
        }
        _ => {
            return Err(Failure::BadFlag(
                "one of --delta-v, --v, --ratio is required".into(),
            ))
        }
    };
    let levels = perturbed_levels(&base, delta_v)?;
    let mut report = Report::from_model(&model);
    report.perturbation = Some(PerturbationBlock::new(flag, value, &base, &levels));
    emit(&report, verbose);
    Ok(())
}

fn cmd_oracle(path: &Path, tol: f64, verbose: bool) -> Result<(), Failure> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Failure::BadFlag(format!(
            "--tol must lie in (0, 1), got {tol}"
        )));
    }
    let spec = read_spec(path)?;
    let model = TunnelingModel::solve(&spec)?;
    let errors = compare_with_tol(&spec, tol)?;
    let mut report = Report::from_model(&model);
    report.oracle = Some(OracleBlock { tol, errors });
    emit(&report, verbose);
    Ok(())
}

fn cmd_sample(
    path: &Path,
    state: State,
    range: &[f64],
    points: usize,
    out: &Path,
) -> Result<(), Failure> {
    let spec = read_spec(path)?;
    let model = TunnelingModel::solve(&spec)?;
    let parity = match state {
        State::Ground => Parity::Ground,
        State::Excited => Parity::Excited,
    };
    let wave = WavefunctionModel::assemble(&spec, &model.reduced, model.solution(parity))?;
    let samples = wave.sample(range[0], range[1], points)?;
    let file = File::create(out).map_err(|e| Failure::Write(out.to_path_buf(), e))?;
    write_csv(&samples, BufWriter::new(file)).map_err(|e| Failure::Write(out.to_path_buf(), e))?;

    let trapezoid: f64 = samples
        .windows(2)
        .map(|w| 0.5 * (w[1].x - w[0].x) * (w[0].psi * w[0].psi + w[1].psi * w[1].psi))
        .sum();
    let (p_left, p_right) = wave.probabilities();
    eprintln!(
        "normalization: trapezoid over [{}, {}] = {trapezoid:.12}, analytic total = {:.12}",
        range[0],
        range[1],
        p_left + p_right
    );
    Ok(())
}

fn cmd_worked_example(json: bool, verbose: bool) -> Result<(), Failure> {
    let model = TunnelingModel::solve(&worked_example_spec())?;
    let checks = golden_checks()?;
    let failing: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| c.name.clone())
        .collect();
    if json {
        let mut report = Report::from_model(&model);
        report.golden = Some(GoldenBlock {
            all_passed: failing.is_empty(),
            checks,
        });
        emit(&report, verbose);
    } else {
        if verbose {
            eprint!("{}", Report::from_model(&model).table());
        }
        print!("{}", golden_table(&checks));
    }
    if failing.is_empty() {
        Ok(())
    } else {
        Err(Failure::Golden(failing))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve { spec } => cmd_solve(spec, cli.verbose),
        Command::Perturb { spec, strength } => cmd_perturb(spec, strength, cli.verbose),
        Command::Oracle { spec, tol } => cmd_oracle(spec, *tol, cli.verbose),
        Command::Sample {
            spec,
            state,
            range,
            points,
            out,
        } => cmd_sample(spec, *state, range, *points, out),
        Command::WorkedExample { json } => cmd_worked_example(*json, cli.verbose),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.exit_code())
        }
    }
}
