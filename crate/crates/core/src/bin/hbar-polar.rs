use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use hbar_polar::capacity::{ellipsoid_capacity_report, product_capacity, CapacityReport};
use hbar_polar::cloud::{
    cloud_analyze, cloud_generate_disk, cloud_generate_gaussian, disk_example, AnalysisOptions,
    MeasurementCloud,
};
use hbar_polar::containment::DEFAULT_TOL;
use hbar_polar::covariance::{covariance_report, CovarianceMatrix};
use hbar_polar::fit::FitMode;
use hbar_polar::hardy::{hardy_check, hardy_envelope_verify, sample_on_grid, HardyClass, HardyInput, UniformGrid};
use hbar_polar::io::{self, BodyDoc};
use hbar_polar::plot::{section_plot, SectionSource};
use hbar_polar::polar::{is_quantum_pair, polar_dual};
use hbar_polar::{ConvexBody, Ellipsoid, Error, Result};

#[derive(Parser)]
#[command(name = "hbar-polar", version, about = "ħ-polar duality, quantum pairs and symplectic capacities")]
struct Cli {
    /// Reduced Planck constant; h is taken as 2πħ.
    #[arg(long, global = true, default_value_t = 1.0)]
    hbar: f64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Fit::Ball)]
    fit: Fit,
    /// Fraction of outlying samples dropped before fitting.
    #[arg(long, global = true, default_value_t = 0.0)]
    trim: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fit {
    Ball,
    Mvee,
    IntervalBox,
}

impl From<Fit> for FitMode {
    fn from(f: Fit) -> Self {
        match f {
            Fit::Ball => FitMode::Ball,
            Fit::Mvee => FitMode::Mvee,
            Fit::IntervalBox => FitMode::IntervalBox,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Print the ħ-polar dual of a body document.
    Polar {
        body: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Test whether (X, P) is a ħ-polar quantum pair.
    PairCheck { x: PathBuf, p: PathBuf },
    /// Capacity of a phase-space ellipsoid or of a Lagrangian product X × P.
    Capacity {
        /// Ellipsoid matrix of size 2n (matrix file or ellipsoid body document).
        #[arg(long, conflicts_with_all = ["x", "p"])]
        ellipsoid: Option<PathBuf>,
        #[arg(requires = "p")]
        x: Option<PathBuf>,
        p: Option<PathBuf>,
    },
    /// Validate a covariance matrix in (x, p) ordering.
    Covariance { matrix: PathBuf },
    /// Hardy-type checks: eigenvalue criterion for (A, B), or the discrete
    /// envelope test on a Gaussian.
    Hardy(HardyArgs),
    /// Generate or analyze (x, p) measurement clouds
    #[command(subcommand)]
    Cloud(CloudCommand),
    /// Worked demonstrations
    #[command(subcommand)]
    Demo(DemoCommand),
    /// Plot data for sections of bodies and clouds
    #[command(subcommand)]
    Plot(PlotCommand),
}

#[derive(Args)]
struct HardyArgs {
    #[arg(long, requires = "b")]
    a: Option<PathBuf>,
    #[arg(long, requires = "a")]
    b: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    /// Envelope widths σx,σp for the grid test on exp(-x²/(4 w²)).
    #[arg(long, value_delimiter = ',', conflicts_with = "a")]
    envelope: Option<Vec<f64>>,
    #[arg(long, default_value_t = 1.0)]
    width: f64,
    #[arg(long, default_value_t = 1024)]
    grid_points: usize,
    #[arg(long, default_value_t = 20.0)]
    half_span: f64,
}

#[derive(Subcommand)]
enum CloudCommand {
    /// Generate a synthetic measurement cloud.
    Generate {
        #[arg(value_enum)]
        shape: Shape,
        #[arg(long, default_value_t = 1.0)]
        rx: f64,
        #[arg(long, default_value_t = 1.0)]
        rp: f64,
        /// Dimension for Gaussian clouds (disks are always 2-D).
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Write a structured cloud document here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write delimiter-separated x and p sample files.
        #[arg(long, requires = "p_out")]
        x_out: Option<PathBuf>,
        #[arg(long, requires = "x_out")]
        p_out: Option<PathBuf>,
    },
    /// Fit X and P to a cloud and report pair, capacity and covariance verdicts.
    Analyze {
        /// Structured cloud document.
        #[arg(long, conflicts_with_all = ["x", "p"])]
        cloud: Option<PathBuf>,
        #[arg(long, requires = "p")]
        x: Option<PathBuf>,
        #[arg(long, requires = "x")]
        p: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Shape {
    Disk,
    Gaussian,
}

#[derive(Subcommand)]
enum DemoCommand {
    /// Uniform position and momentum disks.
    DiskExample {
        #[arg(long, default_value_t = 2.0)]
        rx: f64,
        #[arg(long, default_value_t = 1.0)]
        rp: f64,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
    },
}

#[derive(Subcommand)]
enum PlotCommand {
    /// Boundary polyline of a coordinate-plane section.
    Section {
        #[arg(long, conflicts_with_all = ["x", "p"])]
        body: Option<PathBuf>,
        #[arg(long, requires = "p")]
        x: Option<PathBuf>,
        #[arg(long, requires = "x")]
        p: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', default_values_t = [0, 1])]
        plane: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Outcome of a subcommand: what to print and whether the verdict passed.
struct Outcome {
    text: String,
    structured: serde_json::Value,
    pass: bool,
}

impl Outcome {
    fn new(text: String, structured: impl Serialize, pass: bool) -> Result<Self> {
        Ok(Self {
            text,
            structured: serde_json::to_value(structured)?,
            pass,
        })
    }
}

fn two<T: Copy>(values: &[T], flag: &str) -> Result<[T; 2]> {
    match values {
        [a, b] => Ok([*a, *b]),
        _ => Err(Error::InvalidParameter(format!("{flag} takes exactly two comma-separated values"))),
    }
}

fn read_body_or_matrix(path: &Path) -> Result<ConvexBody> {
    let text = std::fs::read_to_string(path)?;
    if text.trim_start().starts_with('{') {
        io::body_from_json(&text)
    } else {
        Ok(Ellipsoid::new(io::matrix_from_str(&text)?)?.into())
    }
}

fn capacity_text(r: &CapacityReport) -> String {
    format!(
        "capacity ({:?}) : {:.12}\nlower bound     : {:.12} ({})\nequality case   : {}\n",
        r.kind,
        r.value,
        r.bound,
        if r.lower_bound_met { "met" } else { "NOT met" },
        r.equality_case
    )
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<String> {
    match out {
        Some(path) => {
            std::fs::write(path, text)?;
            Ok(format!("wrote {}\n", path.display()))
        }
        None => Ok(text.to_string()),
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let hbar = cli.hbar;
    match &cli.command {
        Command::Polar { body, out } => {
            let dual = polar_dual(&io::read_body(body)?, hbar)?;
            let doc = BodyDoc::from_body(&dual);
            let text = write_or_print(out.as_deref(), &(io::body_to_json(&dual)? + "\n"))?;
            Outcome::new(text, doc, true)
        }
        Command::PairCheck { x, p } => {
            let v = is_quantum_pair(&io::read_body(x)?, &io::read_body(p)?, hbar, cli.tol)?;
            let text = format!(
                "quantum pair : {}\nlambda_max   : {:.12}\nmargin       : {:.3e}\ncapacity     : {:.12} (4 hbar = {})\nexact        : {}\n",
                v.is_pair, v.lambda_max, v.margin, v.capacity, 4.0 * hbar, v.exact
            );
            Outcome::new(text, v, v.is_pair)
        }
        Command::Capacity { ellipsoid, x, p } => {
            let report = match (ellipsoid, x, p) {
                (Some(e), _, _) => match read_body_or_matrix(e)? {
                    ConvexBody::Ellipsoid(e) => ellipsoid_capacity_report(&e, hbar)?,
                    other => {
                        return Err(Error::InvalidParameter(format!(
                            "--ellipsoid expects an ellipsoid, got {}",
                            other.kind()
                        )))
                    }
                },
                (None, Some(x), Some(p)) => product_capacity(&io::read_body(x)?, &io::read_body(p)?, hbar)?,
                _ => {
                    return Err(Error::InvalidParameter(
                        "give --ellipsoid FILE or the two product factors X P".into(),
                    ))
                }
            };
            Outcome::new(capacity_text(&report), report, report.lower_bound_met)
        }
        Command::Covariance { matrix } => {
            let s = CovarianceMatrix::new(io::read_matrix(matrix)?)?;
            let r = covariance_report(&s, hbar, cli.tol)?;
            let mut text = format!(
                "n                      : {}\nquantum covariance     : {}\nmin eig(Sigma + i hbar/2 J): {:.6e}\nsymplectic spectrum    : {:?}\nWilliamson (nu >= hbar/2): {}\ncapacity of Omega      : {:.12} (h/2 = {:.12}) {}\nRS per mode            : {:?}\nsection areas          : {:?}\nprojection areas       : {:?}\n",
                r.n,
                r.is_quantum,
                r.sigpos_min_eigenvalue,
                r.symplectic_spectrum,
                r.williamson_ok,
                r.capacity,
                std::f64::consts::PI * hbar,
                if r.capacity_ok { "ok" } else { "below" },
                r.rs,
                r.section_areas,
                r.projection_areas
            );
            if let Some(v) = &r.pair {
                text += &format!("projection pair        : {} (lambda_max {:.12})\n", v.is_pair, v.lambda_max);
            }
            let pass = r.is_quantum;
            Outcome::new(text, r, pass)
        }
        Command::Hardy(args) => run_hardy(args, hbar),
        Command::Cloud(CloudCommand::Generate {
            shape,
            rx,
            rp,
            dim,
            samples,
            out,
            x_out,
            p_out,
        }) => {
            let cloud = match shape {
                Shape::Disk => cloud_generate_disk(*rx, *rp, *samples, cli.seed)?,
                Shape::Gaussian => cloud_generate_gaussian(*dim, *rx, *rp, *samples, cli.seed)?,
            };
            let mut text = String::new();
            if let Some(path) = out {
                cloud.write_json(path)?;
                text += &format!("wrote {}\n", path.display());
            }
            if let (Some(xp), Some(pp)) = (x_out, p_out) {
                cloud.write_text(xp, pp)?;
                text += &format!("wrote {} and {}\n", xp.display(), pp.display());
            }
            if text.is_empty() {
                text = cloud.to_json()? + "\n";
            }
            let summary = json!({
                "label": cloud.label,
                "x_samples": cloud.x_samples.len(),
                "p_samples": cloud.p_samples.len(),
            });
            Outcome::new(text, summary, true)
        }
        Command::Cloud(CloudCommand::Analyze { cloud, x, p }) => {
            let cloud = match (cloud, x, p) {
                (Some(c), _, _) => MeasurementCloud::read_json(c)?,
                (None, Some(x), Some(p)) => MeasurementCloud::read_text(x, p)?,
                _ => return Err(Error::InvalidParameter("give --cloud FILE or --x FILE --p FILE".into())),
            };
            let opts = AnalysisOptions {
                hbar,
                fit: cli.fit.into(),
                trim: cli.trim,
                tol: cli.tol,
            };
            let report = cloud_analyze(&cloud, &opts)?;
            let pass = report.pair.is_pair;
            Outcome::new(report.to_text(), report, pass)
        }
        Command::Demo(DemoCommand::DiskExample { rx, rp, samples }) => {
            let r = disk_example(*rx, *rp, *samples, cli.seed, hbar)?;
            let pass = r.measured_matches_analytic;
            Outcome::new(r.to_text(), r, pass)
        }
        Command::Plot(PlotCommand::Section { body, x, p, plane, out }) => {
            let source = match (body, x, p) {
                (Some(b), _, _) => SectionSource::Body(read_body_or_matrix(b)?),
                (None, Some(x), Some(p)) => SectionSource::Product(io::read_body(x)?, io::read_body(p)?),
                _ => return Err(Error::InvalidParameter("give --body FILE or --x FILE --p FILE".into())),
            };
            let [i, j] = two(plane, "--plane")?;
            let plot = section_plot(&source, (i, j))?;
            let text = write_or_print(out.as_deref(), &plot.to_text())?;
            Outcome::new(text, plot, true)
        }
    }
}

fn run_hardy(args: &HardyArgs, hbar: f64) -> Result<Outcome> {
    if let Some(widths) = &args.envelope {
        let [sx, sp] = two(widths, "--envelope")?;
        let grid = UniformGrid::spanning(-args.half_span, args.half_span, args.grid_points)?;
        let w = args.width;
        let psi = sample_on_grid(&grid, |x| Complex64::new((-x * x / (4.0 * w * w)).exp(), 0.0));
        let check = hardy_envelope_verify(&psi, &grid, sx, sp, hbar)?;
        let text = format!(
            "envelope sigma_x={}, sigma_p={} on exp(-x^2/(4*{w}^2)): {}\nconstant {:.6} (cap {:.6}){}\n",
            sx,
            sp,
            if check.holds { "holds" } else { "fails" },
            check.constant,
            check.constant_cap,
            if check.alarm { "\nALARM: envelopes hold below the hbar/2 threshold" } else { "" }
        );
        return Outcome::new(text, check, check.holds && !check.alarm);
    }
    let (Some(a), Some(b)) = (&args.a, &args.b) else {
        return Err(Error::InvalidParameter("give --a FILE --b FILE or --envelope SX,SP".into()));
    };
    let input = HardyInput::new(io::read_matrix(a)?, io::read_matrix(b)?, args.c)?;
    let v = hardy_check(&input, hbar)?;
    let text = format!(
        "eigenvalues of AB : {:?}\nhbar^2/4          : {}\nclassification    : {:?}\n",
        v.eigenvalues,
        0.25 * hbar * hbar,
        v.classification
    );
    let doc = json!({
        "eigenvalues": v.eigenvalues,
        "classification": v.classification,
        "x_body": BodyDoc::from_body(&v.pair.0),
        "p_body": BodyDoc::from_body(&v.pair.1),
    });
    Outcome::new(text, doc, v.classification != HardyClass::Violates)
}

fn main() -> ExitCode {
    // Usage errors exit with 1 so that 2 stays reserved for failed verdicts.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::FAILURE } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            match cli.format {
                Format::Text => print!("{}", outcome.text),
                Format::Structured => println!(
                    "{}",
                    serde_json::to_string_pretty(&outcome.structured).expect("values serialize")
                ),
            }
            if outcome.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
