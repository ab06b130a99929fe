//! `ellipse-gas`: density grids, kernel values, convergence studies,
//! orthogonality audits and sampling runs for Coulomb gases on a hard-wall
//! ellipse.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ellipse_gas::convergence::{run_study, Study};
use ellipse_gas::correlations::density_grid;
use ellipse_gas::polynomials::orthogonality_audit;
use ellipse_gas::quadrature::{QuadratureSpec, WeightedRule};
use ellipse_gas::sampler::{chi_square_test, run_chain_with, ChainSettings, RNG_ALGORITHM};
use ellipse_gas::{Complex64, EllipseGeometry, FiniteKernel, GasFamily, GridSpec, LimitKernelSpec, Rescale};
use serde_json::{json, Value};

use output::{complex_json, grid_csv, grid_json, Format};

const THREADS_VAR: &str = "ELLIPSE_GAS_THREADS";

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(String),
}

impl From<ellipse_gas::Error> for CliError {
    fn from(e: ellipse_gas::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

#[derive(Parser)]
#[command(name = "ellipse-gas", version, about = "Coulomb gases on a hard-wall ellipse")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One-point density on a grid, optionally under a figure rescaling.
    Density(DensityArgs),
    /// Finite or limiting kernel at point pairs.
    Kernel(KernelArgs),
    /// Discrepancy between rescaled kernels and their limits over a schedule.
    Converge(ConvergeArgs),
    /// Quadrature audit of the orthogonality of the monic polynomials.
    Orthocheck(OrthoArgs),
    /// Metropolis run with a chi-square check against the kernel diagonal.
    Sample(SampleArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Gegenbauer,
    JacobiPlus,
    JacobiMinus,
    ChebyshevT,
    ChebyshevV,
}

#[derive(Args)]
struct GasArgs {
    #[arg(long, value_enum, default_value = "gegenbauer")]
    family: FamilyArg,
    /// Charge of the Gegenbauer and Jacobi weights.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    a: f64,
    /// Non-Hermiticity parameter in (0, 1).
    #[arg(long, allow_negative_numbers = true, conflicts_with = "s")]
    tau: Option<f64>,
    /// Weak non-Hermiticity: 1/tau = 1 + s^2/(2 N^2).
    #[arg(long, allow_negative_numbers = true)]
    s: Option<f64>,
}

impl GasArgs {
    fn gas(&self) -> CliResult<GasFamily> {
        let a = self.a;
        let gas = match self.family {
            FamilyArg::Gegenbauer => GasFamily::Gegenbauer { a },
            FamilyArg::JacobiPlus => GasFamily::JacobiPlus { a },
            FamilyArg::JacobiMinus => GasFamily::JacobiMinus { a },
            FamilyArg::ChebyshevT | FamilyArg::ChebyshevV if a != 0.0 => {
                return usage("the Chebyshev gases take no charge; drop --a");
            }
            FamilyArg::ChebyshevT => GasFamily::ChebyshevT,
            FamilyArg::ChebyshevV => GasFamily::ChebyshevV,
        };
        gas.validate()?;
        Ok(gas)
    }

    fn geometry(&self, n: usize) -> CliResult<EllipseGeometry> {
        match (self.tau, self.s) {
            (Some(tau), None) => Ok(EllipseGeometry::new(tau)?),
            (None, Some(s)) => Ok(EllipseGeometry::weak(s, n)?),
            _ => usage("exactly one of --tau and --s is required"),
        }
    }
}

#[derive(Args)]
struct OutArgs {
    /// Output file; standard output when absent.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DensityArgs {
    #[command(flatten)]
    gas: GasArgs,
    #[arg(long = "N")]
    n: usize,
    #[arg(long, value_enum, default_value = "none")]
    rescale: RescaleArg,
    #[arg(long, default_value_t = 101)]
    nx: usize,
    #[arg(long, default_value_t = 101)]
    ny: usize,
    /// Plot window; by default the image of the ellipse under the rescaling.
    #[arg(long, allow_negative_numbers = true)]
    xmin: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    xmax: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    ymin: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    ymax: Option<f64>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum RescaleArg {
    None,
    Fig1,
    Fig2,
    Fig3,
}

impl RescaleArg {
    fn rescale(self) -> Rescale {
        match self {
            RescaleArg::None => Rescale::None,
            RescaleArg::Fig1 => Rescale::Fig1,
            RescaleArg::Fig2 => Rescale::Fig2,
            RescaleArg::Fig3 => Rescale::Fig3,
        }
    }
}

#[derive(Args)]
struct KernelArgs {
    /// `finite`, or a limiting kernel: bulk-weak, edge-weak,
    /// edge-weak-minus-sine, edge-weak-minus-cosine, bulk-strong, edge-strong,
    /// sine, bessel, ginibre, global-u, global-t, global-v, global-rot-u,
    /// global-rot-t, global-rot-v.
    #[arg(long)]
    kernel: String,
    #[command(flatten)]
    gas: GasArgs,
    /// Particle number of the finite kernel.
    #[arg(long = "N")]
    n: Option<usize>,
    /// Point pair `x1,y1,x2,y2`; repeatable.
    #[arg(long = "pair", required = true, allow_hyphen_values = true)]
    pairs: Vec<String>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct ConvergeArgs {
    #[arg(long, value_enum)]
    study: StudyArg,
    #[command(flatten)]
    gas: GasArgs,
    /// Comma-separated sweep values: N for the weak studies, s for the
    /// strong ones. Defaults to 100,200,400 and 10,20,40.
    #[arg(long)]
    schedule: Option<String>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum StudyArg {
    BulkWeak,
    EdgeWeak,
    LeftFocus,
    BulkStrong,
    EdgeStrong,
}

#[derive(Args)]
struct OrthoArgs {
    #[command(flatten)]
    gas: GasArgs,
    #[arg(long, default_value_t = 8)]
    max_degree: usize,
    #[arg(long, default_value_t = QuadratureSpec::default().radial_nodes)]
    radial_nodes: usize,
    #[arg(long, default_value_t = QuadratureSpec::default().angular_nodes)]
    angular_nodes: usize,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    gas: GasArgs,
    #[arg(long = "N")]
    n: usize,
    #[arg(long, default_value_t = 1_000_000)]
    steps: u64,
    /// Defaults to a tenth of the steps.
    #[arg(long)]
    burn_in: Option<u64>,
    /// Write every k-th retained configuration.
    #[arg(long, default_value_t = 1000)]
    record_every: u64,
    /// Proposal width; defaults to 0.15 times the minor semi-axis.
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cells per axis of the chi-square grid over the ellipse's bounding box.
    #[arg(long, default_value_t = 12)]
    cells: usize,
    /// Batches for the covariance of the cell counts; must exceed the number
    /// of cells inside the ellipse.
    #[arg(long, default_value_t = 200)]
    batches: usize,
    #[command(flatten)]
    out: OutArgs,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    configure_threads()?;
    match cli.command {
        Command::Density(a) => cmd_density(a),
        Command::Kernel(a) => cmd_kernel(a),
        Command::Converge(a) => cmd_converge(a),
        Command::Orthocheck(a) => cmd_orthocheck(a),
        Command::Sample(a) => cmd_sample(a),
    }
}

fn configure_threads() -> CliResult<()> {
    let Ok(v) = std::env::var(THREADS_VAR) else { return Ok(()) };
    let n: usize = match v.trim().parse() {
        Ok(n) if n >= 1 => n,
        _ => return usage(format!("{THREADS_VAR} must be a positive integer, got {v:?}")),
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn write_out(out: &OutArgs, text: &str) -> CliResult<()> {
    use std::io::Write;
    match &out.output {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes()).and_then(|_| so.flush()).map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

fn gas_json(gas: &GasFamily, g: &EllipseGeometry, n: Option<usize>) -> Value {
    let mut v = json!({ "family": gas.name(), "a": gas.a(), "tau": g.tau() });
    if let Some(n) = n {
        v["N"] = json!(n);
    }
    v
}

fn cmd_density(args: DensityArgs) -> CliResult<()> {
    if args.nx == 0 || args.ny == 0 {
        return usage("the grid needs --nx and --ny of at least 1");
    }
    if args.n == 0 {
        return usage("--N must be at least 1");
    }
    let gas = args.gas.gas()?;
    let g = args.gas.geometry(args.n)?;
    let rescale = args.rescale.rescale();
    if rescale == Rescale::Fig3 && !(gas.a() > 0.0) {
        return usage("--rescale fig3 needs --a > 0");
    }
    let ((x0, x1), (y0, y1)) = rescale.window(&g, args.n, gas.a())?;
    let grid = GridSpec::new(
        (args.xmin.unwrap_or(x0), args.xmax.unwrap_or(x1)),
        (args.ymin.unwrap_or(y0), args.ymax.unwrap_or(y1)),
        args.nx,
        args.ny,
    )?;
    let kernel = FiniteKernel::new(gas, g, args.n)?;
    let d = density_grid(&kernel, &grid, rescale)?;
    let text = match args.format {
        Format::Csv => grid_csv(&d),
        Format::Json => {
            let mut meta = gas_json(&gas, &g, Some(args.n));
            meta["rescale"] = json!(rescale.name());
            grid_json(&d, meta)
        }
    };
    write_out(&args.out, &text)
}

fn parse_pair(s: &str) -> CliResult<(Complex64, Complex64)> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("pair {s:?} is not four numbers x1,y1,x2,y2")))?;
    if v.len() != 4 || v.iter().any(|x| !x.is_finite()) {
        return usage(format!("pair {s:?} is not four finite numbers x1,y1,x2,y2"));
    }
    Ok((Complex64::new(v[0], v[1]), Complex64::new(v[2], v[3])))
}

fn limit_spec(name: &str, gas: &GasArgs) -> CliResult<LimitKernelSpec> {
    use LimitKernelSpec::*;
    let a = gas.a;
    let need_s = || gas.s.ok_or_else(|| CliError::Usage(format!("kernel {name} needs --s")));
    let need_tau = || gas.tau.ok_or_else(|| CliError::Usage(format!("kernel {name} needs --tau")));
    Ok(match name {
        "bulk-weak" => BulkWeak { a, s: need_s()? },
        "edge-weak" => EdgeWeak { a, s: need_s()? },
        "edge-weak-minus-sine" => EdgeWeakMinusSine { a, s: need_s()? },
        "edge-weak-minus-cosine" => EdgeWeakMinusCosine { a, s: need_s()? },
        "bulk-strong" => BulkStrong { a },
        "edge-strong" => EdgeStrong { a },
        "sine" => Sine,
        "bessel" => Bessel { a },
        "ginibre" => Ginibre,
        "global-u" => GlobalU { tau: need_tau()? },
        "global-t" => GlobalT { tau: need_tau()? },
        "global-v" => GlobalV { tau: need_tau()? },
        "global-rot-u" => GlobalRotU,
        "global-rot-t" => GlobalRotT,
        "global-rot-v" => GlobalRotV,
        _ => return usage(format!("unknown kernel {name:?}")),
    })
}

type KernelFn = Box<dyn Fn(Complex64, Complex64) -> ellipse_gas::Result<Complex64>>;

fn cmd_kernel(args: KernelArgs) -> CliResult<()> {
    let pairs: Vec<(Complex64, Complex64)> = args.pairs.iter().map(|p| parse_pair(p)).collect::<CliResult<_>>()?;
    let (header, eval): (Value, KernelFn) =
        if args.kernel == "finite" {
            let n = args.n.ok_or_else(|| CliError::Usage("the finite kernel needs --N".into()))?;
            if n == 0 {
                return usage("--N must be at least 1");
            }
            let gas = args.gas.gas()?;
            let g = args.gas.geometry(n)?;
            let mut h = gas_json(&gas, &g, Some(n));
            h["kernel"] = json!("finite");
            let k = FiniteKernel::new(gas, g, n)?;
            (h, Box::new(move |z1, z2| k.eval(z1, z2)))
        } else {
            let spec = limit_spec(&args.kernel, &args.gas)?;
            let mut h = json!({ "kernel": spec.name(), "a": args.gas.a });
            if let Some(s) = args.gas.s {
                h["s"] = json!(s);
            }
            if let Some(t) = args.gas.tau {
                h["tau"] = json!(t);
            }
            (h, Box::new(move |z1, z2| spec.eval(z1, z2)))
        };
    let mut values = Vec::with_capacity(pairs.len());
    let mut violations = Vec::new();
    for (i, &(z1, z2)) in pairs.iter().enumerate() {
        match eval(z1, z2) {
            Ok(k) => values.push(json!({
                "z1": [z1.re, z1.im],
                "z2": [z2.re, z2.im],
                "value": complex_json(k),
            })),
            Err(e) => violations.push(format!("pair {} ({}): {e}", i + 1, args.pairs[i])),
        }
    }
    if !violations.is_empty() {
        return usage(format!("inadmissible points:\n  {}", violations.join("\n  ")));
    }
    let mut doc = header;
    doc["values"] = Value::Array(values);
    write_out(&args.out, &(doc.to_string() + "\n"))
}

fn parse_schedule(s: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| CliError::Usage(format!("bad schedule entry {t:?}"))))
        .collect()
}

fn cmd_converge(args: ConvergeArgs) -> CliResult<()> {
    let a = args.gas.a;
    let weak = |f: fn(GasFamily, f64) -> Study| -> CliResult<Study> {
        let s = args.gas.s.ok_or_else(|| CliError::Usage("weak studies need --s".into()))?;
        Ok(f(args.gas.gas()?, s))
    };
    let study = match args.study {
        StudyArg::BulkWeak => weak(|gas, s| Study::BulkWeak { gas, s })?,
        StudyArg::EdgeWeak => weak(|gas, s| Study::EdgeWeak { gas, s })?,
        StudyArg::LeftFocus => weak(|gas, s| Study::LeftFocus { gas, s })?,
        StudyArg::BulkStrong => Study::BulkStrong { a },
        StudyArg::EdgeStrong => Study::EdgeStrong { a },
    };
    let mut doc_extra = None;
    let schedule = match &args.schedule {
        Some(s) => parse_schedule(s)?,
        None if study.sweeps_n() => vec![100.0, 200.0, 400.0],
        None => vec![10.0, 20.0, 40.0],
    };
    let r = run_study(&study, &schedule)?;
    if let Study::BulkWeak { gas, s } | Study::EdgeWeak { gas, s } | Study::LeftFocus { gas, s } = study {
        doc_extra = Some(json!({ "family": gas.name(), "s": s }));
    }
    let sweep = if study.sweeps_n() { "N" } else { "s" };
    let rows: Vec<Value> = r.rows.iter().map(|&(p, d)| json!({ sweep: p, "discrepancy": d })).collect();
    let mut doc = json!({
        "study": study.name(),
        "a": a,
        "rows": rows,
        "exponent": r.exponent,
        "strictly_decreasing": r.strictly_decreasing,
    });
    if let Some(Value::Object(extra)) = doc_extra {
        for (k, v) in extra {
            doc[k] = v;
        }
    }
    write_out(&args.out, &(doc.to_string() + "\n"))
}

fn cmd_orthocheck(args: OrthoArgs) -> CliResult<()> {
    let gas = args.gas.gas()?;
    let g = match args.gas.tau {
        Some(t) => EllipseGeometry::new(t)?,
        None => return usage("orthocheck needs --tau"),
    };
    let spec = QuadratureSpec {
        radial_nodes: args.radial_nodes,
        angular_nodes: args.angular_nodes,
        ..QuadratureSpec::default()
    };
    let rule = WeightedRule::new(&gas, &g, &spec)?;
    let r = orthogonality_audit(&gas, &g, args.max_degree, &rule)?;
    let mut doc = gas_json(&gas, &g, None);
    doc["max_degree"] = json!(r.max_degree);
    doc["gram"] = Value::Array(r.gram.iter().map(|&z| complex_json(z)).collect());
    doc["max_off_diagonal"] = json!(r.max_off_diagonal);
    doc["max_diagonal_error"] = json!(r.max_diagonal_error);
    write_out(&args.out, &(doc.to_string() + "\n"))
}

fn cmd_sample(args: SampleArgs) -> CliResult<()> {
    if args.n == 0 {
        return usage("--N must be at least 1");
    }
    if args.record_every == 0 || args.cells == 0 {
        return usage("--record-every and --cells must be at least 1");
    }
    let gas = args.gas.gas()?;
    let g = args.gas.geometry(args.n)?;
    let mut settings = ChainSettings::with_defaults(&g, args.steps, args.seed);
    if let Some(b) = args.burn_in {
        settings.burn_in = b;
    }
    if let Some(s) = args.sigma {
        settings.proposal_sigma = s;
    }
    settings.validate()?;
    let grid = GridSpec::covering(&g, args.cells, args.cells)?;

    let mut text = String::new();
    let mut retained = 0u64;
    let diag = run_chain_with(&gas, &g, args.n, &settings, |cfg| {
        if retained.is_multiple_of(args.record_every) {
            let pts: Vec<Value> = cfg.points.iter().map(|z| json!([z.re, z.im])).collect();
            text.push_str(&json!({ "index": retained, "points": pts }).to_string());
            text.push('\n');
        }
        retained += 1;
    })?;
    let chi = chi_square_test(&gas, &g, args.n, &settings, &grid, args.batches)?;
    let mut summary = gas_json(&gas, &g, Some(args.n));
    summary["rng"] = json!(RNG_ALGORITHM);
    summary["seed"] = json!(args.seed);
    summary["steps"] = json!(settings.steps);
    summary["burn_in"] = json!(settings.burn_in);
    summary["proposal_sigma"] = json!(settings.proposal_sigma);
    summary["acceptance_rate"] = json!(diag.acceptance_rate());
    summary["warnings"] = json!(diag.warnings);
    summary["chi_square"] = json!({
        "statistic": chi.statistic,
        "dof": chi.dof,
        "batches": chi.batches,
        "p_value": chi.p_value,
        "z_score": chi.z_score,
        "within_3_sigma": chi.passes(3.0),
    });
    text.push_str(&json!({ "summary": summary }).to_string());
    text.push('\n');
    write_out(&args.out, &text)
}
