//! `blackwell` — projective metrics, contraction certification, entropy
//! rates, and analyticity-radius bounds from the command line.
//!
//! Every command is deterministic for a fixed `--seed` (default a fixed
//! constant, never wall clock): repeated runs produce byte-identical
//! primary output regardless of worker count. Exit codes: 0 success
//! (including a degenerate `r_max = 0`), 2 input or domain error, 3
//! resource guard.

mod parse;

use std::fs;
use std::process::ExitCode;

use blackwell::bsc::{entropy_rate_exact, entropy_rate_mc, BscHmm, Model};
use blackwell::certify::{certify_contraction, certify_invariance, lemma_aa_mc, lemma_maxone_mc};
use blackwell::error::Error;
use blackwell::hmm;
use blackwell::matrix::{birkhoff_phi, birkhoff_tau};
use blackwell::metrics;
use blackwell::mobius::{
    halfplane_tau_closed_form, infinitesimal_dh_coeff, infinitesimal_dp_coeff, sup_coeff_numerical,
    CoeffKind, MobiusMap,
};
use blackwell::radius::{
    max_radius_search, sweep, verify_conditions_sampled, verify_tuple, FeasibleTuple, RadiusProblem,
};
use blackwell::report::{fmt_g15, sweep_to_csv};
use blackwell::seeding::DEFAULT_SEED;
use blackwell::simplex::{HalfPlanePoint, SimplexConfig};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "blackwell",
    version,
    about = "Hilbert metrics, contraction certificates, and entropy-rate analyticity bounds"
)]
struct Cli {
    /// Seed for every randomized routine (fixed default keeps bare runs
    /// reproducible).
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true, env = "BLACKWELL_WORKERS")]
    workers: Option<usize>,

    /// Override the simplex-sum renormalization tolerance.
    #[arg(long, global = true)]
    renorm_tolerance: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a metric between two points.
    Metric {
        #[command(subcommand)]
        kind: MetricCommand,
    },
    /// Contraction coefficients of a matrix action.
    Tau(TauArgs),
    /// Entropy rate of a hidden Markov process.
    Entropy(EntropyArgs),
    /// Certified lower bound on the analyticity radius.
    Radius(RadiusArgs),
    /// Radius bounds across a family of symmetric chains, as CSV.
    Sweep(SweepArgs),
    /// Monte Carlo certification reports (JSON).
    Certify {
        #[command(subcommand)]
        kind: CertifyCommand,
    },
}

#[derive(Args)]
struct PointPairArgs {
    /// First point: comma-separated coordinates (complex as `a+bi`).
    #[arg(long, conflicts_with = "points")]
    v: Option<String>,
    /// Second point.
    #[arg(long, conflicts_with = "points")]
    w: Option<String>,
    /// JSON file {"v": [...], "w": [...]}; coordinates are numbers or
    /// [re, im] pairs.
    #[arg(long)]
    points: Option<String>,
}

#[derive(Subcommand)]
enum MetricCommand {
    /// Real Hilbert metric on interior simplex points.
    HilbertReal(PointPairArgs),
    /// Complex Hilbert metric on W_C^+.
    HilbertComplex(PointPairArgs),
    /// Poincare-based complex metric d_P.
    Dp(PointPairArgs),
    /// Half-plane Hilbert metric |Log(z1/z2)|.
    HalfH {
        /// `re`, `re,im`, or `a+bi`.
        #[arg(long)]
        z1: String,
        #[arg(long)]
        z2: String,
    },
    /// Half-plane Poincare metric.
    HalfP {
        #[arg(long)]
        z1: String,
        #[arg(long)]
        z2: String,
    },
}

#[derive(Args)]
struct TauArgs {
    /// Row-major square matrix, comma-separated entries (complex as `a+bi`).
    #[arg(long)]
    matrix: String,
    /// Also evaluate the infinitesimal dH/dP coefficients at this point
    /// (`re,im`), 2x2 matrices only.
    #[arg(long)]
    at_z: Option<String>,
    /// Evaluation budget for the numerical suprema.
    #[arg(long, default_value_t = 300_000)]
    budget: u64,
}

#[derive(Args)]
struct EntropyArgs {
    /// Model JSON file: {"pi": [[..],[..]], "epsilon": e} or
    /// {"delta": [[..]..], "phi": [..]}.
    #[arg(long, required_unless_present = "pi", conflicts_with_all = ["pi", "epsilon"])]
    model: Option<String>,
    /// Inline binary chain, row-major `pi00,pi01,pi10,pi11`.
    #[arg(long, requires = "epsilon")]
    pi: Option<String>,
    /// Inline channel crossover probability.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Exact conditional entropy at this horizon.
    #[arg(long, conflicts_with = "mc")]
    exact: Option<u32>,
    /// Monte Carlo estimate over a path of this length.
    #[arg(long)]
    mc: Option<u64>,
    /// Report bits instead of nats.
    #[arg(long)]
    bits: bool,
}

#[derive(Args)]
struct RadiusArgs {
    /// Symmetric chain parameter (pi00 = pi11 = p).
    #[arg(long, conflicts_with = "pi")]
    p: Option<f64>,
    /// General chain, row-major `pi00,pi01,pi10,pi11`.
    #[arg(long)]
    pi: Option<String>,
    /// Center channel parameter.
    #[arg(long)]
    eps0: f64,
    /// Number of sampled tuples.
    #[arg(long)]
    budget: u64,
    /// Emit the full outcome as JSON instead of labeled lines.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// Chain parameters: `start:end:step` or a comma list.
    #[arg(long)]
    p: String,
    /// Center channel parameter.
    #[arg(long)]
    eps0: f64,
    /// Number of sampled tuples per point.
    #[arg(long)]
    budget: u64,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum CertifyCommand {
    /// Contraction of complex perturbations on the delta-neighborhood.
    Contraction {
        /// Real positive matrix, row-major.
        #[arg(long)]
        matrix: String,
        /// Matrix perturbation radius.
        #[arg(long, default_value_t = 1e-3)]
        r: f64,
        /// Neighborhood size.
        #[arg(long, default_value_t = 1e-3)]
        delta: f64,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
    },
    /// Neighborhood invariance of a (possibly complex) matrix action.
    Invariance {
        /// Square matrix, row-major (complex entries allowed).
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
    },
    /// The two elementary inequality oracles.
    Lemmas {
        /// Random instances per oracle.
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        /// Weight draws per convex-hull instance.
        #[arg(long, default_value_t = 10)]
        inner: u64,
    },
    /// Sampled un-relaxed conditions for a certified tuple.
    Conditions {
        #[arg(long, conflicts_with = "pi")]
        p: Option<f64>,
        #[arg(long)]
        pi: Option<String>,
        #[arg(long)]
        eps0: f64,
        #[arg(long)]
        r: f64,
        #[arg(long = "big-r")]
        big_r: f64,
        #[arg(long)]
        rho: f64,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        if workers == 0 {
            eprintln!("error: --workers must be >= 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
        {
            eprintln!("error: cannot configure {workers} workers: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Resource(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn arg_err(msg: impl Into<String>) -> Error {
    Error::Argument(msg.into())
}

fn run(cli: Cli) -> Result<(), Error> {
    let simplex_cfg = SimplexConfig {
        renorm_tolerance: cli
            .renorm_tolerance
            .unwrap_or(blackwell::simplex::RENORM_TOLERANCE),
    };
    match cli.command {
        Command::Metric { kind } => run_metric(kind, &simplex_cfg),
        Command::Tau(args) => run_tau(args),
        Command::Entropy(args) => run_entropy(args, cli.seed),
        Command::Radius(args) => run_radius(args, cli.seed),
        Command::Sweep(args) => run_sweep(args, cli.seed),
        Command::Certify { kind } => run_certify(kind, cli.seed),
    }
}

/// Resolve a point pair from inline flags or a points file.
fn resolve_pair(
    args: &PointPairArgs,
    cfg: &SimplexConfig,
) -> Result<(Vec<num_complex::Complex64>, Vec<num_complex::Complex64>), Error> {
    if let Some(path) = &args.points {
        let text = fs::read_to_string(path)
            .map_err(|e| arg_err(format!("cannot read points file {path}: {e}")))?;
        let file: parse::PointsFile = serde_json::from_str(&text)
            .map_err(|e| arg_err(format!("cannot parse points file {path}: {e}")))?;
        let v = file.v_complex(cfg).map_err(arg_err)?;
        let w = file.w_complex(cfg).map_err(arg_err)?;
        return Ok((v.coords().to_vec(), w.coords().to_vec()));
    }
    let (Some(v), Some(w)) = (&args.v, &args.w) else {
        return Err(arg_err("provide --v and --w, or --points"));
    };
    Ok((
        parse::parse_complex_list(v).map_err(arg_err)?,
        parse::parse_complex_list(w).map_err(arg_err)?,
    ))
}

fn run_metric(kind: MetricCommand, cfg: &SimplexConfig) -> Result<(), Error> {
    let value = match &kind {
        MetricCommand::HilbertReal(pair) => {
            let (v, w) = resolve_pair(pair, cfg)?;
            let v = parse::require_real_point(&v, cfg).map_err(arg_err)?;
            let w = parse::require_real_point(&w, cfg).map_err(arg_err)?;
            metrics::hilbert_real(&v, &w)?
        }
        MetricCommand::HilbertComplex(pair) | MetricCommand::Dp(pair) => {
            let (v, w) = resolve_pair(pair, cfg)?;
            let v = blackwell::ComplexSimplexPoint::with_config(v, cfg)?;
            let w = blackwell::ComplexSimplexPoint::with_config(w, cfg)?;
            match kind {
                MetricCommand::HilbertComplex(_) => metrics::hilbert_complex(&v, &w)?,
                _ => metrics::poincare_dp(&v, &w)?,
            }
        }
        MetricCommand::HalfH { z1, z2 } => metrics::halfplane_hilbert(
            parse::parse_half_plane(z1).map_err(arg_err)?,
            parse::parse_half_plane(z2).map_err(arg_err)?,
        )?,
        MetricCommand::HalfP { z1, z2 } => metrics::halfplane_poincare(
            parse::parse_half_plane(z1).map_err(arg_err)?,
            parse::parse_half_plane(z2).map_err(arg_err)?,
        )?,
    };
    println!("{}", fmt_g15(value));
    Ok(())
}

fn run_tau(args: TauArgs) -> Result<(), Error> {
    let matrix = parse::parse_complex_matrix(&args.matrix).map_err(arg_err)?;
    let is_real = matrix.entries().iter().flatten().all(|e| e.im == 0.0);

    if is_real {
        let rows = matrix
            .entries()
            .iter()
            .map(|row| row.iter().map(|e| e.re).collect())
            .collect();
        let real = blackwell::PositiveMatrix::new(rows)?;
        println!("phi = {}", fmt_g15(birkhoff_phi(&real)?));
        println!("tau = {}", fmt_g15(birkhoff_tau(&real)?));
    }

    if matrix.dim() == 2 {
        let map = MobiusMap::from_matrix(&matrix)?;
        if map.has_positive_entries() {
            println!(
                "halfplane_tau = {}",
                fmt_g15(halfplane_tau_closed_form(&map)?)
            );
        }
        match sup_coeff_numerical(&map, CoeffKind::Hilbert, args.budget) {
            Ok(est) => println!("sup_dH = {}", fmt_g15(est.value)),
            Err(e) => println!("sup_dH = undefined ({e})"),
        }
        match sup_coeff_numerical(&map, CoeffKind::Poincare, args.budget) {
            Ok(est) => println!("sup_dP = {}", fmt_g15(est.value)),
            Err(e) => println!("sup_dP = undefined ({e})"),
        }
        if let Some(at_z) = &args.at_z {
            let z = HalfPlanePoint::new(parse::parse_point_arg(at_z).map_err(arg_err)?)?;
            println!("dH_at_z = {}", fmt_g15(infinitesimal_dh_coeff(&map, z)?));
            println!("dP_at_z = {}", fmt_g15(infinitesimal_dp_coeff(&map, z)?));
        }
    } else if args.at_z.is_some() {
        return Err(arg_err("--at-z needs a 2x2 matrix"));
    }
    Ok(())
}

fn load_entropy_model(args: &EntropyArgs) -> Result<Model, Error> {
    if let Some(path) = &args.model {
        let text = fs::read_to_string(path)
            .map_err(|e| arg_err(format!("cannot read model file {path}: {e}")))?;
        return Model::from_json(&text);
    }
    let pi_text = args
        .pi
        .as_ref()
        .expect("clap enforces --pi without --model");
    let epsilon = args.epsilon.expect("clap enforces --epsilon with --pi");
    let entries = parse::parse_real_list(pi_text).map_err(arg_err)?;
    let [p00, p01, p10, p11] = entries.as_slice() else {
        return Err(arg_err("--pi needs four entries pi00,pi01,pi10,pi11"));
    };
    Ok(Model::Bsc(BscHmm::new_relaxed(
        [[*p00, *p01], [*p10, *p11]],
        epsilon,
    )?))
}

fn run_entropy(args: EntropyArgs, seed: u64) -> Result<(), Error> {
    let model = load_entropy_model(&args)?;
    let unit = if args.bits {
        std::f64::consts::LN_2
    } else {
        1.0
    };
    match (args.exact, args.mc) {
        (Some(horizon), None) => {
            let h = match &model {
                Model::Bsc(m) => entropy_rate_exact(m, horizon)?,
                Model::General(m) => hmm::entropy_rate_exact(m, horizon)?,
            };
            println!("{}", fmt_g15(h / unit));
        }
        (None, Some(length)) => {
            let Model::Bsc(m) = &model else {
                return Err(arg_err(
                    "Monte Carlo estimation is implemented for binary channel models",
                ));
            };
            let est = entropy_rate_mc(m, length, seed)?;
            println!(
                "{} {}",
                fmt_g15(est.estimate / unit),
                fmt_g15(est.stderr / unit)
            );
        }
        _ => return Err(arg_err("choose exactly one of --exact N or --mc L")),
    }
    Ok(())
}

fn resolve_problem(p: Option<f64>, pi: &Option<String>, eps0: f64) -> Result<RadiusProblem, Error> {
    match (p, pi) {
        (Some(p), None) => RadiusProblem::symmetric(p, eps0),
        (None, Some(text)) => {
            let entries = parse::parse_real_list(text).map_err(arg_err)?;
            let [p00, p01, p10, p11] = entries.as_slice() else {
                return Err(arg_err("--pi needs four entries pi00,pi01,pi10,pi11"));
            };
            RadiusProblem::new([[*p00, *p01], [*p10, *p11]], eps0)
        }
        _ => Err(arg_err("provide exactly one of --p or --pi")),
    }
}

fn run_radius(args: RadiusArgs, seed: u64) -> Result<(), Error> {
    let problem = resolve_problem(args.p, &args.pi, args.eps0)?;
    let outcome = max_radius_search(&problem, args.budget, seed)?;
    if outcome.best.is_none() {
        eprintln!(
            "warning: no feasible tuple in {} samples; the bound degenerates to 0",
            outcome.samples_tried
        );
    }
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&outcome).expect("outcome serializes")
        );
    } else {
        println!("r_max = {}", fmt_g15(outcome.r_max));
        if let Some(best) = outcome.best {
            println!("R = {}", fmt_g15(best.big_r));
            println!("rho = {}", fmt_g15(best.rho));
        }
    }
    Ok(())
}

fn run_sweep(args: SweepArgs, seed: u64) -> Result<(), Error> {
    let p_values = parse::parse_sweep_range(&args.p).map_err(arg_err)?;
    if p_values.is_empty() {
        return Err(arg_err("sweep needs at least one chain parameter"));
    }
    let rows = sweep(&p_values, args.eps0, args.budget, seed)?;
    let csv = sweep_to_csv(&rows);
    match args.out {
        Some(path) => fs::write(&path, csv)
            .map_err(|e| Error::Argument(format!("cannot write {path}: {e}")))?,
        None => print!("{csv}"),
    }
    Ok(())
}

fn run_certify(kind: CertifyCommand, seed: u64) -> Result<(), Error> {
    let report = match kind {
        CertifyCommand::Contraction {
            matrix,
            r,
            delta,
            samples,
        } => {
            let t = parse::parse_positive_matrix(&matrix).map_err(arg_err)?;
            let tau = birkhoff_tau(&t)?;
            let report = certify_contraction(&t, r, delta, samples, seed)?;
            json!({
                "check": "contraction",
                "tau_unperturbed": tau,
                "r": r,
                "delta": delta,
                "passed": report.passed(),
                "report": report,
            })
        }
        CertifyCommand::Invariance {
            matrix,
            delta,
            samples,
        } => {
            let t = parse::parse_complex_matrix(&matrix).map_err(arg_err)?;
            let report = certify_invariance(&t, delta, samples, seed)?;
            json!({
                "check": "invariance",
                "delta": delta,
                "passed": report.passed(),
                "report": report,
            })
        }
        CertifyCommand::Lemmas { samples, inner } => {
            let maxone = lemma_maxone_mc(samples, inner, seed)?;
            let aa = lemma_aa_mc(8, samples, seed.wrapping_add(1))?;
            json!({
                "check": "lemmas",
                "passed": maxone.violations == 0 && aa.violations == 0,
                "maxone": maxone,
                "aa": aa,
            })
        }
        CertifyCommand::Conditions {
            p,
            pi,
            eps0,
            r,
            big_r,
            rho,
            samples,
        } => {
            let problem = resolve_problem(p, &pi, eps0)?;
            let tuple = FeasibleTuple { r, big_r, rho };
            let certified = verify_tuple(&problem, &tuple);
            let report = verify_conditions_sampled(&problem, &tuple, samples, seed)?;
            json!({
                "check": "conditions",
                "tuple_certified": certified,
                "passed": report.total_violations() == 0,
                "report": report,
            })
        }
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("report serializes")
    );
    Ok(())
}
