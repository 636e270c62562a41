//! Command-line front end: every command reads and writes the cycle
//! interchange document, so commands compose through files and pipes.

pub mod bench;

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tropical::arith::{format_rational, parse_rational, Integer, Rational};
use tropical::cycles::{CycleDocument, TropicalCycle};
use tropical::functions::{divisor_power, parse_polynomial_in, FunctionDocument, RationalFunction};
use tropical::intersection::{diagonal_intersect, stable_intersect};
use tropical::matroids::{bergman_fan_normal, bergman_fan_rincon, Matroid, MatroidDocument};
use tropical::moduli::{
    curve_to_metric, curve_to_pruefer, enumerate_m0n_cones, local_m0n, m0n, m0n_cone_count, metric_to_curve,
    psi_product, psi_product_curves, pruefer_to_curve, PrueferSequence, RationalCurve,
};

#[derive(Parser, Debug)]
#[command(name = "tropical", version, about = "Exact tropical intersection theory")]
pub struct Cli {
    /// Output format for reports; cycles are always written as documents.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads (0 uses all cores).
    #[arg(long, env = "TROPICAL_THREADS", default_value_t = 0, global = true)]
    pub threads: usize,
    /// Write the result here instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum IntersectMethod {
    Stable,
    Diagonal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BergmanMethod {
    Rincon,
    Normalfan,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the balancing condition.
    Balance { cycle: PathBuf },
    /// Dimension, f-vector and weights.
    Summary { cycle: PathBuf },
    /// Divisor of a polynomial or of a function document.
    Divisor(DivisorArgs),
    /// Intersection product of two cycles in R^n.
    Intersect {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = IntersectMethod::Stable)]
        method: IntersectMethod,
    },
    /// Bergman fan of a matroid.
    Bergman(BergmanArgs),
    /// The moduli fan M0,n in matroid coordinates.
    M0n {
        n: usize,
        /// Only print the number of maximal cones.
        #[arg(long)]
        count: bool,
    },
    /// Maximal cones of M0,n around a curve, marked local.
    LocalM0n {
        curve: String,
        #[arg(long)]
        n: usize,
    },
    /// Product of Psi classes on M0,n.
    Psi {
        n: usize,
        /// Comma-separated exponents k_1,…,k_n.
        k: String,
        /// List the curves and weights instead of writing the cycle.
        #[arg(long)]
        curves: bool,
    },
    /// Convert between curve descriptions.
    Curve(CurveArgs),
    /// Space of balanced weightings.
    WeightSpace { cycle: PathBuf },
    /// k-dimensional skeleton as a complex document.
    Skeleton { cycle: PathBuf, k: usize },
    /// Cartesian product of two cycles.
    Product { a: PathBuf, b: PathBuf },
    /// Timing tables at desk scale.
    Bench(bench::BenchArgs),
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("function_source").required(true).args(["poly", "function"])))]
pub struct DivisorArgs {
    pub cycle: PathBuf,
    /// Tropical polynomial, e.g. "max(0,x,y)".
    #[arg(long)]
    pub poly: Option<String>,
    /// Function document.
    #[arg(long)]
    pub function: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub power: usize,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("source").required(true).args(["matroid", "matrix", "uniform", "graphic"])))]
pub struct BergmanArgs {
    /// Matroid document.
    #[arg(long)]
    pub matroid: Option<PathBuf>,
    /// Text file with one row of rationals per line.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    /// `r,n` for the uniform matroid of rank r on n elements.
    #[arg(long)]
    pub uniform: Option<String>,
    /// `k` or `Kk` for the complete graph on k vertices.
    #[arg(long)]
    pub graphic: Option<String>,
    #[arg(long, value_enum, default_value_t = BergmanMethod::Rincon)]
    pub method: BergmanMethod,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("conversion").required(true)
    .args(["to_metric", "from_metric", "to_pruefer", "from_pruefer"])))]
pub struct CurveArgs {
    /// Number of leaves; inferred from a metric.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub to_metric: Option<String>,
    #[arg(long)]
    pub from_metric: Option<String>,
    #[arg(long)]
    pub to_pruefer: Option<String>,
    #[arg(long)]
    pub from_pruefer: Option<String>,
}

#[derive(Debug)]
pub struct CliError(pub String);

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CliError {}

impl From<tropical::Error> for CliError {
    fn from(e: tropical::Error) -> Self {
        CliError(e.to_string())
    }
}

pub(crate) type CliResult<T> = Result<T, CliError>;

/// Either a document (always JSON) or a report in the requested format.
pub enum Output {
    Document(String),
    Report { json: Value, text: String },
}

impl Output {
    pub fn render(&self, format: Format) -> String {
        match self {
            Output::Document(s) => s.clone(),
            Output::Report { json, .. } if format == Format::Json => {
                serde_json::to_string_pretty(json).expect("serializable")
            }
            Output::Report { text, .. } => text.clone(),
        }
    }
}

fn read_text(path: &Path) -> CliResult<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

pub fn read_cycle(path: &Path) -> CliResult<TropicalCycle> {
    Ok(TropicalCycle::from_json(&read_text(path)?)?)
}

fn document(x: &TropicalCycle) -> Output {
    Output::Document(x.to_json())
}

pub(crate) fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> CliResult<Vec<T>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| CliError(format!("bad {what} entry {t:?}"))))
        .collect()
}

fn rationals(s: &str) -> CliResult<Vec<Rational>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| parse_rational(t).ok_or_else(|| CliError(format!("bad rational {t:?}"))))
        .collect()
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn summary(x: &TropicalCycle) -> Output {
    let f = x.complex().f_vector();
    let json = json!({
        "ambient_dim": x.ambient_dim(),
        "dim": x.dim(),
        "maximal_cells": x.cells().len(),
        "f_vector": f,
        "weights": x.weights(),
        "local": x.local_cone().is_some(),
    });
    let text = format!(
        "ambient dimension {}\ndimension {}\nmaximal cells {}\nf-vector {:?}\nweights {:?}{}",
        x.ambient_dim(),
        x.dim(),
        x.cells().len(),
        f,
        x.weights(),
        if x.local_cone().is_some() { "\nlocal" } else { "" }
    );
    Output::Report { json, text }
}

fn bergman_matroid(a: &BergmanArgs) -> CliResult<Matroid> {
    if let Some(p) = &a.matroid {
        return Ok(MatroidDocument::from_json(&read_text(p)?)?.to_matroid()?);
    }
    if let Some(p) = &a.matrix {
        let rows = read_text(p)?.lines().filter(|l| !l.trim().is_empty()).map(rationals).collect::<CliResult<Vec<_>>>()?;
        return Ok(Matroid::from_matrix(rows)?);
    }
    if let Some(u) = &a.uniform {
        let v: Vec<usize> = parse_list(u, "uniform")?;
        let [r, n] = v[..] else {
            return Err(CliError("--uniform expects r,n".into()));
        };
        return Ok(Matroid::uniform(r, n)?);
    }
    let g = a.graphic.as_deref().expect("one source is required");
    let k: usize = g.trim_start_matches(['K', 'k']).parse().map_err(|_| CliError(format!("bad graph {g:?}")))?;
    Ok(Matroid::complete_graph(k)?)
}

fn curve_command(a: &CurveArgs) -> CliResult<Output> {
    let need_n = || a.n.ok_or_else(|| CliError("--n is required".into()));
    let curve = if let Some(c) = a.to_metric.as_ref().or(a.to_pruefer.as_ref()) {
        RationalCurve::parse(c, need_n()?)?
    } else if let Some(m) = &a.from_metric {
        metric_to_curve(&rationals(m)?)?
    } else {
        let p = a.from_pruefer.as_deref().expect("one conversion is required");
        let entries: Vec<usize> = parse_list(p.trim_matches(['(', ')']), "sequence")?;
        pruefer_to_curve(&PrueferSequence::new(need_n()?, entries)?)?
    };
    let (json, text) = if a.to_metric.is_some() {
        let d = strings(&curve_to_metric(&curve));
        (json!({ "curve": curve.to_string(), "metric": d }), d.join(" "))
    } else if a.to_pruefer.is_some() {
        let p = curve_to_pruefer(&curve);
        (json!({ "curve": curve.to_string(), "pruefer": p.entries() }), p.to_string())
    } else {
        (json!({ "n": curve.n(), "curve": curve.to_string() }), curve.to_string())
    };
    Ok(Output::Report { json, text })
}

pub fn execute(command: &Command) -> CliResult<Output> {
    Ok(match command {
        Command::Balance { cycle } => {
            let x = read_cycle(cycle)?;
            let r = x.balance_report();
            let c1 = x.normalized().complex().codim_one().cells.clone();
            let points: Vec<Vec<String>> =
                r.offending.iter().map(|&t| strings(&c1[t].relative_interior_point())).collect();
            let text = if r.balanced {
                "balanced".to_string()
            } else {
                let mut s = format!("not balanced at {} codimension-one cells", r.offending.len());
                for p in &points {
                    s.push_str(&format!("\n  near ({})", p.join(", ")));
                }
                s
            };
            Output::Report { json: json!({ "balanced": r.balanced, "offending": r.offending, "points": points }), text }
        }
        Command::Summary { cycle } => summary(&read_cycle(cycle)?),
        Command::Divisor(a) => {
            let x = read_cycle(&a.cycle)?;
            let f = match (&a.poly, &a.function) {
                (Some(p), _) => RationalFunction::from_polynomial(&parse_polynomial_in(p, x.ambient_dim())?),
                (None, Some(path)) => RationalFunction::from_document(&FunctionDocument::from_json(&read_text(path)?)?)?,
                (None, None) => unreachable!("clap enforces a function"),
            };
            document(&divisor_power(&f, a.power, &x)?)
        }
        Command::Intersect { a, b, method } => {
            let (x, y) = (read_cycle(a)?, read_cycle(b)?);
            document(&match method {
                IntersectMethod::Stable => stable_intersect(&x, &y)?,
                IntersectMethod::Diagonal => diagonal_intersect(&x, &y)?,
            })
        }
        Command::Bergman(a) => {
            let m = bergman_matroid(a)?;
            let f = match a.method {
                BergmanMethod::Rincon => bergman_fan_rincon(&m)?,
                BergmanMethod::Normalfan => bergman_fan_normal(&m)?,
            };
            document(&f.cycle)
        }
        Command::M0n { n, count } => {
            if *count {
                let c = enumerate_m0n_cones(*n)?.len();
                debug_assert_eq!(c as u64, m0n_cone_count(*n));
                Output::Report { json: json!({ "n": n, "maximal_cones": c }), text: c.to_string() }
            } else {
                document(&m0n(*n)?)
            }
        }
        Command::LocalM0n { curve, n } => document(&local_m0n(&RationalCurve::parse(curve, *n)?)?),
        Command::Psi { n, k, curves } => {
            let k: Vec<usize> = parse_list(k, "exponent")?;
            if *curves {
                let list = psi_product_curves(*n, &k)?;
                let json = Value::Array(
                    list.iter().map(|(c, w)| json!({ "curve": c.to_string(), "weight": w })).collect(),
                );
                let text = list.iter().map(|(c, w)| format!("{w}\t{c}")).collect::<Vec<_>>().join("\n");
                Output::Report { json, text }
            } else {
                document(&psi_product(*n, &k)?)
            }
        }
        Command::Curve(a) => curve_command(a)?,
        Command::WeightSpace { cycle } => {
            let x = read_cycle(cycle)?;
            let ws = x.weight_space();
            let rows: Vec<Vec<String>> =
                ws.lattice_basis.iter().map(|r| r.iter().map(Integer::to_string).collect()).collect();
            let irreducible = ws.dimension == 1 && x.is_irreducible();
            let mut text = format!("dimension {}\nirreducible {}", ws.dimension, irreducible);
            for r in &rows {
                text.push('\n');
                text.push_str(&r.join(" "));
            }
            Output::Report { json: json!({ "dimension": ws.dimension, "irreducible": irreducible, "lattice_basis": rows }), text }
        }
        Command::Skeleton { cycle, k } => {
            let x = read_cycle(cycle)?;
            Output::Document(CycleDocument::from_complex(&x.k_skeleton(*k)).to_json())
        }
        Command::Product { a, b } => document(&read_cycle(a)?.cartesian_product(&read_cycle(b)?)),
        Command::Bench(a) => bench::run(a)?,
    })
}

/// Runs a parsed command line and returns the rendered output.
pub fn run(cli: &Cli) -> CliResult<String> {
    let format = if cli.json { Format::Json } else { cli.format };
    let out = if cli.threads > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build()
            .map_err(|e| CliError(format!("thread pool: {e}")))?;
        pool.install(|| execute(&cli.command))?
    } else {
        execute(&cli.command)?
    };
    Ok(out.render(format))
}
