//! `gtrans`: generate graphs, apply exact and truncated translations,
//! sweep error bounds, search minimal orders, and profile impulse-response
//! localization. Every subcommand writes deterministic CSV.
//!
//! Exit codes: 0 success, 2 input/validation error, 3 numeric failure.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ndarray::Array1;
use num_complex::Complex64;

use graph_translation::approx::bounds::{
    empirical_sup_error, min_order_search, total_bound_adjacency, total_bound_laplacian,
    SymbolTruncation,
};
use graph_translation::io::{
    fmt_f64, read_signal_csv, write_bounds_csv, write_localization_csv, write_min_order_csv,
    write_signal_csv, MinOrderRow,
};
use graph_translation::{
    decay_report, epsilon_from_rho, generate_weighted, impulse_profile, load_graph,
    ApproxTranslation, BaseKind, Error, ExactTranslation, Graph, GraphKind, SpectralBasis,
};

#[derive(Parser)]
#[command(
    name = "gtrans",
    version,
    about = "Graph translation operators: exact application, truncated approximations, error bounds, localization"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a connected graph and write it as an edge list.
    Gen(GenArgs),
    /// Translate a signal on a graph, exactly and/or by truncated series.
    Translate(TranslateArgs),
    /// Sweep error bounds over truncation orders and write them as CSV.
    Bounds(BoundsArgs),
    /// Minimal P+Q meeting target errors for a hypothetical spectral gap.
    Minorder(MinorderArgs),
    /// Hop-energy decay profile of an exact impulse response.
    Localize(LocalizeArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Laplacian,
    #[value(alias = "normalized_laplacian")]
    Normalized,
    Adjacency,
}

impl From<KindArg> for BaseKind {
    fn from(k: KindArg) -> BaseKind {
        match k {
            KindArg::Laplacian => BaseKind::Laplacian,
            KindArg::Normalized => BaseKind::NormalizedLaplacian,
            KindArg::Adjacency => BaseKind::Adjacency,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GenType {
    Path,
    Cycle,
    Grid,
    Complete,
    Star,
    Erdos,
    Geometric,
}

#[derive(Args)]
struct GenArgs {
    /// Graph family.
    #[arg(long = "type", value_enum)]
    kind: GenType,
    /// Vertex count (star: total vertices, center plus leaves).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    /// Edge probability for the erdos family.
    #[arg(long)]
    p: Option<f64>,
    /// Connection radius for the geometric family.
    #[arg(long)]
    radius: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Lower end of a uniform weight range (default: unit weights).
    #[arg(long, requires = "wmax")]
    wmin: Option<f64>,
    /// Upper end of a uniform weight range.
    #[arg(long, requires = "wmin")]
    wmax: Option<f64>,
    /// Output edge-list file (`u v w` lines, `#` comments, `n <count>` header).
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct TranslateArgs {
    /// Edge-list file of the graph.
    graph: PathBuf,
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// Apply the exact operator.
    #[arg(long)]
    exact: bool,
    /// Truncation orders `P,Q` (Laplacian kinds).
    #[arg(long)]
    orders: Option<String>,
    /// Truncation order `K` (adjacency kind).
    #[arg(long)]
    order: Option<usize>,
    /// Input signal CSV (`index,re,im`).
    #[arg(long, conflicts_with = "impulse")]
    signal: Option<PathBuf>,
    /// Use the unit impulse at this vertex as input.
    #[arg(long)]
    impulse: Option<usize>,
    /// Output signal CSV (`index,re,im`).
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// Hypothetical spectral gap (pure formula mode).
    #[arg(long, conflicts_with = "graph")]
    rho: Option<f64>,
    /// Concrete graph; adds an eigenvalue-exact oracle column.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Inclusive `lo:hi` range of P.
    #[arg(long = "p-range")]
    p_range: Option<String>,
    /// Inclusive `lo:hi` range of Q.
    #[arg(long = "q-range")]
    q_range: Option<String>,
    /// Inclusive `lo:hi` range of K (adjacency kind).
    #[arg(long = "k-range")]
    k_range: Option<String>,
    /// Output CSV: `P,Q,alpha,rho,kappa_C,kappa_S,kappa_R,total_paper,
    /// corrected_total,dc_term[,oracle]`, or `K,alpha,bound[,oracle]` for
    /// the adjacency kind.
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct MinorderArgs {
    /// Comma-separated target errors in (0, 1].
    #[arg(long)]
    xi: String,
    /// Comma-separated diffusion factors.
    #[arg(long, default_value = "1")]
    alpha: String,
    #[arg(long)]
    rho: f64,
    /// Output CSV: `alpha,xi,min_order,P,Q,total`.
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct LocalizeArgs {
    graph: PathBuf,
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long)]
    vertex: usize,
    /// Output CSV: `hop,energy,cum_fraction,one_minus_cum,envelope_oracle,
    /// envelope_paper`.
    #[arg(short, long)]
    output: PathBuf,
}

/// 2 for input/validation problems, 3 for numeric failures.
fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::NoConvergence(_)
        | Error::NonPositiveScale(_)
        | Error::EigenvalueOutOfRange { .. } => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Translate(args) => cmd_translate(args),
        Command::Bounds(args) => cmd_bounds(args),
        Command::Minorder(args) => cmd_minorder(args),
        Command::Localize(args) => cmd_localize(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn require<T>(value: Option<T>, what: &str) -> Result<T, Error> {
    value.ok_or_else(|| Error::InvalidParam(format!("missing {what}")))
}

fn cmd_gen(args: GenArgs) -> Result<(), Error> {
    let kind = match args.kind {
        GenType::Path => GraphKind::Path {
            n: require(args.n, "--n")?,
        },
        GenType::Cycle => GraphKind::Cycle {
            n: require(args.n, "--n")?,
        },
        GenType::Grid => GraphKind::Grid {
            rows: require(args.rows, "--rows")?,
            cols: require(args.cols, "--cols")?,
        },
        GenType::Complete => GraphKind::Complete {
            n: require(args.n, "--n")?,
        },
        GenType::Star => {
            let n = require(args.n, "--n")?;
            if n < 2 {
                return Err(Error::InvalidParam("star needs --n >= 2".into()));
            }
            GraphKind::Star { leaves: n - 1 }
        }
        GenType::Erdos => GraphKind::ErdosRenyi {
            n: require(args.n, "--n")?,
            p: require(args.p, "--p")?,
        },
        GenType::Geometric => GraphKind::Geometric {
            n: require(args.n, "--n")?,
            radius: require(args.radius, "--radius")?,
        },
    };
    let weight_range = match (args.wmin, args.wmax) {
        (Some(lo), Some(hi)) => Some((lo, hi)),
        _ => None,
    };
    let g = generate_weighted(kind, args.seed, weight_range)?;
    let mut header = format!("generate {} seed={}", kind.summary(), args.seed);
    if let Some((lo, hi)) = weight_range {
        header.push_str(&format!(" weights=[{lo},{hi}]"));
    }
    fs::write(&args.output, g.to_edge_list(&[&header]))?;
    Ok(())
}

fn load_graph_file(path: &PathBuf) -> Result<Graph, Error> {
    load_graph(&fs::read_to_string(path)?)
}

fn parse_orders(text: &str) -> Result<(usize, usize), Error> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::InvalidParam(format!(
            "--orders expects `P,Q`, got `{text}`"
        )));
    }
    let p = parts[0]
        .trim()
        .parse()
        .map_err(|_| Error::InvalidParam(format!("bad P `{}`", parts[0])))?;
    let q = parts[1]
        .trim()
        .parse()
        .map_err(|_| Error::InvalidParam(format!("bad Q `{}`", parts[1])))?;
    Ok((p, q))
}

fn parse_range(text: &str, what: &str) -> Result<(usize, usize), Error> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 2 {
        return Err(Error::InvalidParam(format!(
            "{what} expects `lo:hi`, got `{text}`"
        )));
    }
    let lo: usize = parts[0]
        .trim()
        .parse()
        .map_err(|_| Error::InvalidParam(format!("bad bound `{}`", parts[0])))?;
    let hi: usize = parts[1]
        .trim()
        .parse()
        .map_err(|_| Error::InvalidParam(format!("bad bound `{}`", parts[1])))?;
    if hi < lo {
        return Err(Error::InvalidParam(format!("{what}: {lo}:{hi} is empty")));
    }
    Ok((lo, hi))
}

fn parse_f64_list(text: &str, what: &str) -> Result<Vec<f64>, Error> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::InvalidParam(format!("bad {what} value `{s}`")))
        })
        .collect()
}

fn cmd_translate(args: TranslateArgs) -> Result<(), Error> {
    let g = load_graph_file(&args.graph)?;
    let kind: BaseKind = args.kind.into();

    let x: Array1<Complex64> = match (&args.signal, args.impulse) {
        (Some(path), None) => {
            let sig = read_signal_csv(&fs::read_to_string(path)?)?;
            if sig.len() != g.n() {
                return Err(Error::LengthMismatch {
                    expected: g.n(),
                    got: sig.len(),
                });
            }
            sig
        }
        (None, Some(i)) => {
            if i >= g.n() {
                return Err(Error::VertexOutOfRange { id: i, n: g.n() });
            }
            let mut x = Array1::<Complex64>::zeros(g.n());
            x[i] = Complex64::new(1.0, 0.0);
            x
        }
        _ => {
            return Err(Error::InvalidParam(
                "provide exactly one of --signal or --impulse".into(),
            ))
        }
    };

    if args.orders.is_some() && kind == BaseKind::Adjacency {
        return Err(Error::InvalidParam(
            "--orders P,Q applies to the Laplacian kinds; use --order K".into(),
        ));
    }
    if args.order.is_some() && kind != BaseKind::Adjacency {
        return Err(Error::InvalidParam(
            "--order K applies to the adjacency kind; use --orders P,Q".into(),
        ));
    }
    let wants_approx = args.orders.is_some() || args.order.is_some();
    if !args.exact && !wants_approx {
        return Err(Error::InvalidParam(
            "choose --exact, an approximation order, or both".into(),
        ));
    }

    let basis = SpectralBasis::for_graph(&g, kind)?;
    let scaled_eigs = basis.scaled_eigenvalues();
    let exact_op = if args.exact {
        Some(ExactTranslation::from_basis(basis.clone(), args.alpha)?)
    } else {
        None
    };

    let approx_out = if wants_approx {
        let approx = match kind {
            BaseKind::Adjacency => ApproxTranslation::adjacency_with_gamma(
                &g,
                basis.scale(),
                args.order.expect("checked"),
                args.alpha,
            )?,
            _ => {
                let (p, q) = parse_orders(args.orders.as_ref().expect("checked"))?;
                let eps = basis.spectral_gap()?.epsilon;
                ApproxTranslation::laplacian_with_gap(&g, kind, p, q, args.alpha, eps)?
            }
        };
        let y = approx.apply(&x.view())?;
        if args.exact {
            let ye = exact_op.as_ref().expect("checked").apply(&x.view())?;
            let err: f64 = ye
                .iter()
                .zip(y.iter())
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            let xn: f64 = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let sup =
                empirical_sup_error(approx.symbol_truncation(), args.alpha, &scaled_eigs, true)?;
            println!("normalized_error={}", fmt_f64(err / xn));
            println!("oracle_bound={}", fmt_f64(sup));
        }
        Some(y)
    } else {
        None
    };

    let out = match approx_out {
        Some(y) => y,
        None => exact_op.expect("exact requested").apply(&x.view())?,
    };
    let mut buf = Vec::new();
    write_signal_csv(&mut buf, &out.view())?;
    fs::write(&args.output, buf)?;
    Ok(())
}

fn cmd_bounds(args: BoundsArgs) -> Result<(), Error> {
    let kind: BaseKind = args.kind.into();
    let graph = args.graph.as_ref().map(load_graph_file).transpose()?;

    let mut buf = Vec::new();
    if kind == BaseKind::Adjacency {
        let (klo, khi) = parse_range(require(args.k_range.as_deref(), "--k-range")?, "--k-range")?;
        let oracle_eigs = graph
            .as_ref()
            .map(|g| SpectralBasis::for_graph(g, kind).map(|b| b.scaled_eigenvalues()))
            .transpose()?;
        writeln_adjacency(&mut buf, klo, khi, args.alpha, oracle_eigs.as_deref())?;
    } else {
        let (plo, phi) = parse_range(require(args.p_range.as_deref(), "--p-range")?, "--p-range")?;
        let (qlo, qhi) = parse_range(require(args.q_range.as_deref(), "--q-range")?, "--q-range")?;
        let (epsilon, oracle_eigs) = match (&graph, args.rho) {
            (Some(g), None) => {
                let basis = SpectralBasis::for_graph(g, kind)?;
                let gap = basis.spectral_gap()?;
                (gap.epsilon, Some(basis.scaled_eigenvalues()))
            }
            (None, Some(rho)) => {
                if !(rho > 0.0 && rho <= 1.0) {
                    return Err(Error::InvalidParam(format!(
                        "--rho must be in (0, 1], got {rho}"
                    )));
                }
                (epsilon_from_rho(rho), None)
            }
            _ => {
                return Err(Error::InvalidParam(
                    "provide exactly one of --rho or --graph".into(),
                ))
            }
        };
        let mut rows = Vec::new();
        for p in plo..=phi {
            for q in qlo..=qhi {
                let mut report = total_bound_laplacian(p, q, args.alpha, epsilon)?;
                if let Some(eigs) = &oracle_eigs {
                    let sup = empirical_sup_error(
                        SymbolTruncation::Laplacian { p, q, epsilon },
                        args.alpha,
                        eigs,
                        false,
                    )?;
                    report = report.with_oracle(sup);
                }
                rows.push(report);
            }
        }
        write_bounds_csv(&mut buf, &rows)?;
    }
    fs::write(&args.output, buf)?;
    Ok(())
}

/// Adjacency sweep rows, with an oracle column when a spectrum is known.
fn writeln_adjacency(
    buf: &mut Vec<u8>,
    klo: usize,
    khi: usize,
    alpha: f64,
    oracle_eigs: Option<&[f64]>,
) -> Result<(), Error> {
    use std::io::Write;
    match oracle_eigs {
        None => writeln!(buf, "K,alpha,bound")?,
        Some(_) => writeln!(buf, "K,alpha,bound,oracle")?,
    }
    for k in klo..=khi {
        let bound = total_bound_adjacency(k, alpha);
        match oracle_eigs {
            None => writeln!(buf, "{k},{},{}", fmt_f64(alpha), fmt_f64(bound))?,
            Some(eigs) => {
                let sup =
                    empirical_sup_error(SymbolTruncation::Adjacency { k }, alpha, eigs, true)?;
                writeln!(
                    buf,
                    "{k},{},{},{}",
                    fmt_f64(alpha),
                    fmt_f64(bound),
                    fmt_f64(sup)
                )?;
            }
        }
    }
    Ok(())
}

fn cmd_minorder(args: MinorderArgs) -> Result<(), Error> {
    let xis = parse_f64_list(&args.xi, "--xi")?;
    let alphas = parse_f64_list(&args.alpha, "--alpha")?;
    let mut rows = Vec::new();
    for &alpha in &alphas {
        for &xi in &xis {
            let solution = match min_order_search(xi, alpha, args.rho) {
                Ok(m) => Some((m.p, m.q, m.total)),
                Err(Error::SearchCapExceeded(_)) => None,
                Err(e) => return Err(e),
            };
            rows.push(MinOrderRow {
                alpha,
                xi,
                solution,
            });
        }
    }
    let mut buf = Vec::new();
    write_min_order_csv(&mut buf, &rows)?;
    fs::write(&args.output, buf)?;
    Ok(())
}

fn cmd_localize(args: LocalizeArgs) -> Result<(), Error> {
    let g = load_graph_file(&args.graph)?;
    let profile = impulse_profile(&g, args.kind.into(), args.alpha, args.vertex)?;
    let rows = decay_report(&profile);
    let mut buf = Vec::new();
    write_localization_csv(&mut buf, &rows)?;
    fs::write(&args.output, buf)?;
    Ok(())
}
