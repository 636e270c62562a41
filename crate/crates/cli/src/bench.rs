//! Timing tables shaped like the reference experiments, at sizes that run
//! on a desk machine. Timings are local and informational.

use std::time::Instant;

use clap::{Args, ValueEnum};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use tropical::arith::{Integer, Rational};
use tropical::cycles::TropicalCycle;
use tropical::functions::{polynomial_divisor, Mode, TropicalPolynomial};
use tropical::intersection::stable_intersect;
use tropical::matroids::{bergman_fan_normal, bergman_fan_rincon, Matroid};
use tropical::moduli::{enumerate_m0n_cones, m0n};

use crate::{parse_list, CliError, CliResult, Output};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Divisors,
    Intersect,
    Bergman,
    M0n,
}

#[derive(Args, Debug, Clone)]
pub struct BenchArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Ambient dimensions, as `a..b` (inclusive) or a list.
    #[arg(long)]
    pub n: Option<String>,
    /// Dimensions k for the divisor suite.
    #[arg(long, default_value = "1,3")]
    pub k: String,
    /// Numbers of terms (divisors: 5,10,15; intersect: 5).
    #[arg(long)]
    pub terms: Option<String>,
    /// Uniform matroid `r,n`; repeatable.
    #[arg(long)]
    pub uniform: Vec<String>,
    /// Cube matroid C_i; repeatable.
    #[arg(long)]
    pub cube: Vec<usize>,
    /// Repetitions averaged per cell.
    #[arg(long, default_value_t = 1)]
    pub runs: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

impl BenchArgs {
    pub fn new(suite: Suite) -> Self {
        BenchArgs {
            suite,
            n: None,
            k: "1,3".into(),
            terms: None,
            uniform: Vec::new(),
            cube: Vec::new(),
            runs: 1,
            seed: 1,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub label: String,
    /// Seconds; `None` where the grid has no entry.
    pub cells: Vec<Option<f64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Row>,
}

impl Table {
    pub fn render(&self) -> String {
        let label_w = self.rows.iter().map(|r| r.label.len()).max().unwrap_or(0).max(1);
        let col_w: Vec<usize> = self.columns.iter().map(|c| c.len().max(9)).collect();
        let mut s = format!("{}\n{:label_w$}", self.title, "");
        for (c, w) in self.columns.iter().zip(&col_w) {
            s.push_str(&format!(" | {c:>w$}"));
        }
        s.push('\n');
        s.push_str(&"-".repeat(label_w + col_w.iter().map(|w| w + 3).sum::<usize>()));
        for r in &self.rows {
            s.push_str(&format!("\n{:label_w$}", r.label));
            for (c, w) in r.cells.iter().zip(&col_w) {
                match c {
                    Some(t) => s.push_str(&format!(" | {t:>w$.4}")),
                    None => s.push_str(&format!(" | {:>w$}", "")),
                }
            }
        }
        s
    }
}

fn parse_sizes(s: &str) -> CliResult<Vec<usize>> {
    if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| CliError(format!("bad range {s:?}")))?;
        let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| CliError(format!("bad range {s:?}")))?;
        return Ok((a..=b).collect());
    }
    parse_list(s, "size")
}

/// Mean wall-clock seconds of `runs` calls.
fn time<T>(runs: usize, mut f: impl FnMut(usize) -> CliResult<T>) -> CliResult<f64> {
    let mut total = 0.0;
    for r in 0..runs.max(1) {
        let start = Instant::now();
        std::hint::black_box(f(r)?);
        total += start.elapsed().as_secs_f64();
    }
    Ok(total / runs.max(1) as f64)
}

/// Max-polynomial in `n` variables with `l` distinct exponent vectors in `{0,…,3}^n`.
pub fn random_polynomial(rng: &mut ChaCha8Rng, n: usize, l: usize) -> CliResult<TropicalPolynomial> {
    let l = l.min(4usize.saturating_pow(n as u32));
    let mut exps: Vec<Vec<i64>> = Vec::with_capacity(l);
    while exps.len() < l {
        let e: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
        if !exps.contains(&e) {
            exps.push(e);
        }
    }
    exps.shuffle(rng);
    let terms: Vec<(Vec<i64>, i64)> = exps.into_iter().map(|e| (e, rng.gen_range(-5..=5))).collect();
    Ok(TropicalPolynomial::from_i64(Mode::Max, &terms)?)
}

/// `L × R^{k-1}` in `R^n`: the plane tropical line in the first two
/// coordinates, the next `k-1` coordinates free, the rest zero.
pub fn line_times_space(n: usize, k: usize) -> CliResult<TropicalCycle> {
    if k == 0 || k >= n {
        return Err(CliError(format!("need 1 <= k < n, got k={k}, n={n}")));
    }
    let unit = |i: usize, s: i64| -> Vec<i64> { (0..n).map(|j| if j == i { s } else { 0 }).collect() };
    let mut diag = vec![0; n];
    diag[0] = 1;
    diag[1] = 1;
    let rays = vec![unit(0, -1), unit(1, -1), diag];
    let lineality: Vec<Vec<i64>> = (2..k + 1).map(|i| unit(i, 1)).collect();
    Ok(TropicalCycle::fan(n, &rays, &[vec![0], vec![1], vec![2]], &lineality, vec![1; 3])?)
}

pub fn divisors(a: &BenchArgs) -> CliResult<Table> {
    let ns = parse_sizes(a.n.as_deref().unwrap_or("2..4"))?;
    let ks: Vec<usize> = parse_list(&a.k, "k")?;
    let ls: Vec<usize> = parse_list(a.terms.as_deref().unwrap_or("5,10,15"), "terms")?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut rows = Vec::new();
    for &k in &ks {
        for &l in &ls {
            let mut cells = Vec::new();
            for &n in &ns {
                if k >= n {
                    cells.push(None);
                    continue;
                }
                let x = line_times_space(n, k)?;
                let fs = (0..a.runs.max(1)).map(|_| random_polynomial(&mut rng, n, l)).collect::<CliResult<Vec<_>>>()?;
                cells.push(Some(time(a.runs, |r| Ok(polynomial_divisor(&fs[r], &x)?))?));
            }
            rows.push(Row { label: format!("k={k} l={l}"), cells });
        }
    }
    Ok(Table {
        title: "Divisor of a random polynomial with l terms on L x R^(k-1) in R^n (seconds)".into(),
        columns: ns.iter().map(|n| format!("n={n}")).collect(),
        rows,
    })
}

pub fn intersect(a: &BenchArgs) -> CliResult<Table> {
    let ns = parse_sizes(a.n.as_deref().unwrap_or("3..5"))?;
    let l = *parse_list::<usize>(a.terms.as_deref().unwrap_or("5"), "terms")?.first().unwrap_or(&5);
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut rows = Vec::new();
    for &n in &ns {
        let pairs = (0..a.runs.max(1))
            .map(|_| Ok((random_polynomial(&mut rng, n, l)?, random_polynomial(&mut rng, n, l)?)))
            .collect::<CliResult<Vec<_>>>()?;
        let space = TropicalCycle::whole_space(n);
        let successive = time(a.runs, |r| {
            let (f, g) = &pairs[r];
            Ok(polynomial_divisor(f, &polynomial_divisor(g, &space)?)?)
        })?;
        let product = time(a.runs, |r| {
            let (f, g) = &pairs[r];
            Ok(stable_intersect(&polynomial_divisor(f, &space)?, &polynomial_divisor(g, &space)?)?)
        })?;
        rows.push(Row { label: format!("n={n}"), cells: vec![Some(successive), Some(product)] });
    }
    Ok(Table {
        title: format!("Successive divisors vs intersection product, {l}-term polynomials (seconds)"),
        columns: vec!["f.(g.R^n)".into(), "(f.R^n).(g.R^n)".into()],
        rows,
    })
}

/// Linear matroid whose columns are `(1, v)` for the vertices `v` of the unit `i`-cube.
pub fn cube_matroid(i: usize) -> CliResult<Matroid> {
    let cols = 1usize << i;
    let mut rows = vec![vec![Rational::from_integer(Integer::from(1)); cols]];
    for b in 0..i {
        rows.push((0..cols).map(|v| Rational::from_integer(Integer::from(((v >> b) & 1) as i64))).collect());
    }
    Ok(Matroid::from_matrix(rows)?)
}

pub fn bergman(a: &BenchArgs) -> CliResult<Table> {
    let mut matroids: Vec<(String, Matroid)> = Vec::new();
    let uniform = if a.uniform.is_empty() && a.cube.is_empty() {
        vec!["3,5".to_string(), "3,6".to_string()]
    } else {
        a.uniform.clone()
    };
    let cubes = if a.uniform.is_empty() && a.cube.is_empty() { vec![2, 3] } else { a.cube.clone() };
    for u in &uniform {
        let v: Vec<usize> = parse_list(u, "uniform")?;
        let [r, n] = v[..] else {
            return Err(CliError("--uniform expects r,n".into()));
        };
        matroids.push((format!("U({r},{n})"), Matroid::uniform(r, n)?));
    }
    for &i in &cubes {
        matroids.push((format!("C_{i}"), cube_matroid(i)?));
    }
    let mut rows = Vec::new();
    for (label, m) in &matroids {
        let rincon = time(a.runs, |_| Ok(bergman_fan_rincon(m)?))?;
        let normal = time(a.runs, |_| Ok(bergman_fan_normal(m)?))?;
        rows.push(Row { label: label.clone(), cells: vec![Some(rincon), Some(normal)] });
    }
    Ok(Table {
        title: "Bergman fans: fundamental circuits vs normal fan of the matroid polytope (seconds)".into(),
        columns: vec!["rincon".into(), "normal fan".into()],
        rows,
    })
}

pub fn moduli(a: &BenchArgs) -> CliResult<Table> {
    let ns = parse_sizes(a.n.as_deref().unwrap_or("5..6"))?;
    let mut rows = Vec::new();
    for &n in &ns {
        if n < 4 {
            return Err(CliError("M0,n needs n >= 4".into()));
        }
        let graph = time(a.runs, |_| Ok(bergman_fan_rincon(&Matroid::complete_graph(n - 1)?)?))?;
        let combinatorial = time(a.runs, |_| {
            enumerate_m0n_cones(n)?;
            Ok(m0n(n)?)
        })?;
        rows.push(Row { label: format!("n={n}"), cells: vec![Some(graph), Some(combinatorial)] });
    }
    Ok(Table {
        title: "M0,n as B(K_(n-1)) vs combinatorial enumeration (seconds)".into(),
        columns: vec!["B(K_(n-1))".into(), "combinatorial".into()],
        rows,
    })
}

pub fn table(a: &BenchArgs) -> CliResult<Table> {
    match a.suite {
        Suite::Divisors => divisors(a),
        Suite::Intersect => intersect(a),
        Suite::Bergman => bergman(a),
        Suite::M0n => moduli(a),
    }
}

pub fn run(a: &BenchArgs) -> CliResult<Output> {
    let t = table(a)?;
    Ok(Output::Report { json: json!(t), text: t.render() })
}
