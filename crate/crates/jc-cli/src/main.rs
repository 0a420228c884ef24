//! Command-line front end: certified spectra, overlap rows, projector
//! checks, perturbation-series reports, asymptotic comparisons, level
//! splittings, and a self-contained invariant suite.

mod report;
mod validate;

use clap::{Args, Parser, Subcommand, ValueEnum};
use jc_spectra::*;
use report::{Cell, Report};
use serde_json::json;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "jc-spectra",
    version,
    about = "Spectral analysis of the Jaynes-Cummings model with counter-rotating terms"
)]
struct Cli {
    /// Output format for tabular reports
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Write the report to this file instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
struct ParamArgs {
    /// Field-mode frequency (energy units)
    #[arg(long, default_value_t = 1.0)]
    omega: f64,

    /// Atomic transition frequency (same units)
    #[arg(long)]
    omega0: f64,

    /// Coupling constant (same units)
    #[arg(long)]
    g: f64,
}

impl ParamArgs {
    fn build(&self) -> Result<ModelParams> {
        validate_params(self.omega, self.omega0, self.g)
    }

    fn meta(&self) -> serde_json::Value {
        json!({ "omega": self.omega, "omega0": self.omega0, "g": self.g })
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    H1,
    H2,
    A0,
}

impl From<KindArg> for MatrixKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::H1 => MatrixKind::H1,
            KindArg::H2 => MatrixKind::H2,
            KindArg::A0 => MatrixKind::A0,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VariantArg {
    H1,
    H2,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::H1 => Variant::H1,
            VariantArg::H2 => Variant::H2,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ProjectorArg {
    P1,
    P2,
}

impl From<ProjectorArg> for ProjectorVariant {
    fn from(v: ProjectorArg) -> Self {
        match v {
            ProjectorArg::P1 => ProjectorVariant::P1,
            ProjectorArg::P2 => ProjectorVariant::P2,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Certified eigenvalues of h1, h2, or a0
    Spectrum {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum)]
        variant: KindArg,
        /// Largest eigenvalue index to certify
        #[arg(long)]
        m_max: usize,
        /// Absolute eigenvalue tolerance of the doubling certificate
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },

    /// Overlap row P^(m)_n with the contour-oracle residual column
    Overlaps {
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        #[arg(long)]
        g: f64,
        /// Eigenvector index m of the row
        #[arg(long)]
        m: usize,
        /// Largest oscillator index n
        #[arg(long)]
        n_max: usize,
        /// Starting quadrature point count of the oracle (at least 64)
        #[arg(long, default_value_t = 256, value_parser = clap::value_parser!(u64).range(64..))]
        quad_points: u64,
    },

    /// One transformed-projector element: closed form vs parity-sum oracle
    Projectors {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum)]
        variant: ProjectorArg,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        /// Term count of the parity-sum oracle (default 4 max(k,m) + 200)
        #[arg(long)]
        n_sum: Option<usize>,
    },

    /// Perturbation-series report for one level
    Perturb {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long)]
        m: usize,
        /// Highest series order (at most 5)
        #[arg(long, default_value_t = 4)]
        order: usize,
    },

    /// Exact / series / asymptotic comparison over a list of levels
    Asymptotics {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum)]
        variant: VariantArg,
        /// Comma-separated level indices
        #[arg(long, value_delimiter = ',', required = true)]
        m_list: Vec<usize>,
        #[arg(long, default_value_t = 4)]
        order: usize,
    },

    /// Splittings of the pairs degenerate at g = 0, with the RWA column
    Splitting {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long)]
        m_max: usize,
    },

    /// Run the invariant suite and print a pass/fail summary
    Validate,
}

fn truncation_cap() -> Result<usize> {
    match std::env::var("JC_SPECTRA_MAX_N") {
        Ok(s) => s
            .parse::<usize>()
            .map_err(|_| Error::InvalidArgument("JC_SPECTRA_MAX_N must be a positive integer")),
        Err(_) => Ok(DEFAULT_TRUNCATION_CAP),
    }
}

/// Ladder index of the closest unperturbed level `m w + w0 - g^2/w`.
fn nearest_unperturbed(lambda: f64, p: &ModelParams) -> i64 {
    let raw = (lambda - p.omega0() + p.g() * p.g() / p.omega()) / p.omega();
    raw.round().max(0.0) as i64
}

fn spectrum_report(args: &ParamArgs, variant: KindArg, m_max: usize, tol: f64) -> Result<Report> {
    let p = args.build()?;
    let cap = truncation_cap()?;
    let spec = converged_spectrum_kind(variant.into(), &p, m_max, tol, cap)?;
    let rows = spec
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(m, &lambda)| {
            vec![
                Cell::Int(m as i64),
                Cell::Float(lambda),
                Cell::Int(nearest_unperturbed(lambda, &p)),
            ]
        })
        .collect();
    Ok(Report {
        meta: json!({
            "command": "spectrum",
            "variant": MatrixKind::from(variant).to_string(),
            "params": args.meta(),
            "m_max": m_max,
            "tol_abs": tol,
            "n_basis": spec.truncation.n_basis,
            "converged_upto": spec.converged_upto,
        }),
        columns: vec!["m", "lambda", "nearest_unperturbed"],
        rows,
    })
}

fn overlaps_report(
    omega: f64,
    g: f64,
    m: usize,
    n_max: usize,
    quad_points: usize,
) -> Result<Report> {
    let mut rows = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let closed = displaced_overlap(m, n, g, omega)?;
        let contour = displaced_overlap_contour(m, n, g, omega, quad_points)?;
        rows.push(vec![
            Cell::Int(n as i64),
            Cell::Float(closed),
            Cell::Float(contour),
            Cell::Float((closed - contour).abs()),
        ]);
    }
    Ok(Report {
        meta: json!({
            "command": "overlaps",
            "params": { "omega": omega, "g": g },
            "m": m,
            "n_max": n_max,
            "quad_points": quad_points,
        }),
        columns: vec!["n", "p_mn", "contour", "abs_diff"],
        rows,
    })
}

fn projectors_report(
    args: &ParamArgs,
    variant: ProjectorArg,
    k: usize,
    m: usize,
    n_sum: Option<usize>,
) -> Result<Report> {
    let p = args.build()?;
    let terms = n_sum.unwrap_or_else(|| default_parity_terms(k, m));
    let pv: ProjectorVariant = variant.into();
    let closed = projector_element(pv, k, m, &p)?;
    let direct = projector_direct_sum(pv, k, m, &p, terms)?;
    Ok(Report {
        meta: json!({
            "command": "projectors",
            "variant": pv.to_string(),
            "params": args.meta(),
            "n_sum": terms,
        }),
        columns: vec!["k", "m", "closed_form", "direct_sum", "abs_diff"],
        rows: vec![vec![
            Cell::Int(k as i64),
            Cell::Int(m as i64),
            Cell::Float(closed),
            Cell::Float(direct),
            Cell::Float((closed - direct).abs()),
        ]],
    })
}

fn perturb_report(args: &ParamArgs, variant: VariantArg, m: usize, order: usize) -> Result<Report> {
    let p = args.build()?;
    let r = series_report(variant.into(), m, &p, order)?;
    let rows = (0..=order)
        .map(|k| {
            vec![
                Cell::Int(k as i64),
                Cell::Float(r.corrections[k]),
                Cell::Float(r.partial_sums[k]),
                Cell::Float(r.max_abs_terms[k]),
                Cell::opt_float(r.remainder_bounds[k]),
                Cell::Float(r.sigma_m),
                Cell::Float(r.t_m),
                Cell::opt_int(r.m0),
                Cell::Float(r.q),
            ]
        })
        .collect();
    Ok(Report {
        meta: json!({
            "command": "perturb",
            "variant": Variant::from(variant).to_string(),
            "params": args.meta(),
            "m": m,
            "order": order,
            "sigma_m": r.sigma_m,
            "t_m": r.t_m,
            "m0": r.m0,
            "q": r.q,
        }),
        columns: vec![
            "k",
            "correction",
            "partial_sum",
            "max_abs_term",
            "remainder_bound",
            "sigma_m",
            "t_m",
            "m0",
            "q",
        ],
        rows,
    })
}

fn asymptotics_report(
    args: &ParamArgs,
    variant: VariantArg,
    m_list: &[usize],
    order: usize,
) -> Result<Report> {
    let p = args.build()?;
    let cap = truncation_cap()?;
    let rows_data = convergence_table_with(
        variant.into(),
        &p,
        m_list,
        order,
        jc_spectra::asymptotic::TABLE_SPECTRUM_TOL,
        cap,
    )?;
    let rows = rows_data
        .iter()
        .map(|r| {
            vec![
                Cell::Int(r.m as i64),
                Cell::Float(r.lambda_exact),
                Cell::Float(*r.partial_sums.last().unwrap()),
                Cell::opt_float(r.remainder_bound),
                Cell::Float(r.asymptotic),
                Cell::Float(r.resid_series),
                Cell::Float(r.resid_asymptotic),
            ]
        })
        .collect();
    Ok(Report {
        meta: json!({
            "command": "asymptotics",
            "variant": Variant::from(variant).to_string(),
            "params": args.meta(),
            "m_list": m_list,
            "order": order,
        }),
        columns: vec![
            "m",
            "lambda_exact",
            "partial_sum",
            "remainder_bound",
            "asymptotic",
            "resid_series",
            "resid_asymptotic",
        ],
        rows,
    })
}

fn splitting_report(args: &ParamArgs, variant: VariantArg, m_max: usize) -> Result<Report> {
    let p = args.build()?;
    let cap = truncation_cap()?;
    let table = splitting_table_with(
        variant.into(),
        &p,
        m_max,
        jc_spectra::asymptotic::TABLE_SPECTRUM_TOL,
        cap,
    )?;
    let rows = table
        .rows
        .iter()
        .map(|r| {
            vec![
                Cell::Int(r.m as i64),
                Cell::Float(r.lambda_lo),
                Cell::Float(r.lambda_hi),
                Cell::Float(r.delta),
                Cell::opt_float(r.rwa_delta),
            ]
        })
        .collect();
    Ok(Report {
        meta: json!({
            "command": "splitting",
            "variant": Variant::from(variant).to_string(),
            "params": args.meta(),
            "m_max": m_max,
            "resonant": (args.omega - args.omega0).abs() <= 1e-12,
        }),
        columns: vec!["m", "lambda_lo", "lambda_hi", "delta", "rwa_delta"],
        rows,
    })
}

/// Replaces every `--args-from FILE` pair with the file's lines, one token
/// per nonempty non-comment line.
fn expand_args_from(argv: Vec<String>) -> std::result::Result<Vec<String>, String> {
    let mut out = Vec::with_capacity(argv.len());
    let mut iter = argv.into_iter();
    while let Some(arg) = iter.next() {
        let path = if arg == "--args-from" {
            match iter.next() {
                Some(p) => p,
                None => return Err("--args-from needs a file path".into()),
            }
        } else if let Some(p) = arg.strip_prefix("--args-from=") {
            p.to_string()
        } else {
            out.push(arg);
            continue;
        };
        let content = std::fs::read_to_string(&path)
            .map_err(|e| format!("cannot read --args-from file {path}: {e}"))?;
        for line in content.lines() {
            let token = line.trim();
            if !token.is_empty() && !token.starts_with('#') {
                out.push(token.to_string());
            }
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let argv = match expand_args_from(argv) {
        Ok(v) => v,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let cli = Cli::parse_from(argv);

    let mut sink: Box<dyn Write> = match &cli.output {
        Some(path) => match std::fs::File::create(path) {
            Ok(f) => Box::new(f),
            Err(e) => {
                eprintln!("error: cannot create {}: {e}", path.display());
                return ExitCode::from(1);
            }
        },
        None => Box::new(std::io::stdout().lock()),
    };

    if let Command::Validate = cli.command {
        return match validate::run(&mut sink) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(1),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        };
    }

    let report = match &cli.command {
        Command::Spectrum {
            params,
            variant,
            m_max,
            tol,
        } => spectrum_report(params, *variant, *m_max, *tol),
        Command::Overlaps {
            omega,
            g,
            m,
            n_max,
            quad_points,
        } => overlaps_report(*omega, *g, *m, *n_max, *quad_points as usize),
        Command::Projectors {
            params,
            variant,
            k,
            m,
            n_sum,
        } => projectors_report(params, *variant, *k, *m, *n_sum),
        Command::Perturb {
            params,
            variant,
            m,
            order,
        } => perturb_report(params, *variant, *m, *order),
        Command::Asymptotics {
            params,
            variant,
            m_list,
            order,
        } => asymptotics_report(params, *variant, m_list, *order),
        Command::Splitting {
            params,
            variant,
            m_max,
        } => splitting_report(params, *variant, *m_max),
        Command::Validate => unreachable!(),
    };

    let report = match report {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let written = match cli.format {
        Format::Csv => report.write_csv(&mut sink),
        Format::Json => report.write_json(&mut sink),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
