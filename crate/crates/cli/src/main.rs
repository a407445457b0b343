use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use oddtrans::format::{self, LabeledHypergraph};
use oddtrans::generators;
use oddtrans::report::{self, AnalyzeOptions, BetaFamily};
use oddtrans::spectral::SpectralOptions;
use oddtrans::transversal::{self, Method};
use oddtrans::Hypergraph;

#[derive(Parser)]
#[command(name = "oddtrans", version, about = "Odd transversals and non-odd-bipartite hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a hypergraph file.
    Analyze {
        path: PathBuf,
        #[arg(long)]
        json: bool,
        /// Also run the single-edge-deletion check and compare.
        #[arg(long)]
        definitional_check: bool,
        /// Largest edge-subset size for the intersection bound check.
        #[arg(long, default_value_t = 3)]
        max_t: usize,
    },
    /// Write a member of a hypergraph family.
    Generate {
        #[command(subcommand)]
        family: Family,
        /// Output file; stdout when omitted.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Spectral radius, least-eigenvalue estimate and bounds.
    Spectra {
        path: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 100_000)]
        max_iter: usize,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Exit 0 if minimal non-odd-transversal, 1 if not, 2 on error.
    Check { path: PathBuf },
    /// Tables over parameter ranges.
    Sweep {
        #[command(subcommand)]
        sweep: Sweep,
        #[arg(long, global = true)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Windows of k consecutive residues in Z_n.
    Cayley {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Generalized power of a graph: the cycle C_M or a 2-uniform file.
    Power {
        #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
        cycle: Option<usize>,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        k: usize,
    },
    /// t-fold blowup of a hypergraph file.
    Blowup {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        t: usize,
    },
    /// Projective plane of odd prime order q.
    Pp {
        #[arg(long)]
        q: usize,
    },
    /// Random 2-regular k-uniform hypergraph with m edges.
    Tworeg {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        /// Drawn from entropy and printed when omitted.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// All k-subsets of k + 1 vertices.
    Simplex {
        #[arg(long)]
        k: usize,
    },
    /// A named worked example.
    Fixture {
        #[arg(long)]
        name: String,
    },
}

#[derive(Subcommand)]
enum Sweep {
    /// Minimality of cayley(n, k) against gcd(k, n) = 1 for odd n.
    DregGcd {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n_max: usize,
    },
    /// Alpha and beta along a family.
    BetaTrend(BetaArgs),
}

#[derive(Args)]
struct BetaArgs {
    /// cm-pow (parameter m) or cayley (parameter n).
    #[arg(long)]
    family: BetaFamily,
    #[arg(long)]
    k: usize,
    #[arg(long, value_delimiter = ',', alias = "n-list")]
    m_list: Vec<usize>,
    #[arg(long, default_value_t = 8)]
    restarts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn read_graph(path: &Path) -> Result<LabeledHypergraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    format::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn analyze(path: &Path, json: bool, definitional_check: bool, max_t: usize) -> Result<()> {
    let input = read_graph(path)?;
    let r = report::analyze(&input, &AnalyzeOptions { definitional_check, max_t });
    if json {
        print_json(&r)
    } else {
        print!("{}", r.to_text());
        Ok(())
    }
}

fn build(family: &Family) -> Result<(Hypergraph, String)> {
    Ok(match family {
        Family::Cayley { n, k } => (generators::cayley(*n, *k)?, format!("cayley n={n} k={k}")),
        Family::Power { cycle: Some(m), k, .. } => {
            (generators::cycle_power(*m, *k)?, format!("power cycle={m} k={k}"))
        }
        Family::Power { graph: Some(path), k, .. } => {
            let base = read_graph(path)?.graph;
            if base.uniformity() != Some(2) {
                bail!("{} is not a graph (2-uniform)", path.display());
            }
            let pairs: Vec<(usize, usize)> = base.edges().iter().map(|e| (e[0], e[1])).collect();
            (generators::power(&pairs, *k)?, format!("power graph={} k={k}", path.display()))
        }
        Family::Power { .. } => bail!("power needs --cycle or --graph"),
        Family::Blowup { input, t } => {
            let base = read_graph(input)?.graph;
            (generators::blowup(&base, *t)?, format!("blowup input={} t={t}", input.display()))
        }
        Family::Pp { q } => (generators::projective_plane(*q)?, format!("pp q={q}")),
        Family::Tworeg { k, m, seed } => {
            let seed = seed.unwrap_or_else(rand::random);
            (
                generators::two_regular_random(*k, *m, seed)?,
                format!("tworeg k={k} m={m} seed={seed}"),
            )
        }
        Family::Simplex { k } => (generators::simplex(*k)?, format!("simplex k={k}")),
        Family::Fixture { name } => {
            let all = generators::fixtures();
            let Some(g) = all.get(name.as_str()) else {
                let names: Vec<&str> = all.keys().copied().collect();
                bail!("unknown fixture `{name}` (known: {})", names.join(", "));
            };
            (g.clone(), format!("fixture name={name}"))
        }
    })
}

fn summary(g: &Hypergraph, echo: &str) -> String {
    let c = transversal::classify_with(g, Method::RankCriterion);
    let opt = |v: Option<usize>| v.map_or("none".to_string(), |x| x.to_string());
    format!(
        "generated: {echo}\nvertices: {}\nedges: {}\nuniformity: {}\nregularity: {}\nrank over GF(2): {}\nverdict: {}\n",
        g.n(),
        g.m(),
        opt(g.uniformity()),
        opt(g.regularity()),
        c.rank,
        report::verdict(c.is_odd_transversal, c.is_minimal),
    )
}

fn generate(family: &Family, out: Option<&Path>) -> Result<()> {
    let (g, echo) = build(family)?;
    let text = format::write(&g, None);
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            print!("{}", summary(&g, &echo));
            println!("written: {}", path.display());
        }
        None => {
            print!("{text}");
            eprint!("{}", summary(&g, &echo));
        }
    }
    Ok(())
}

fn spectra(path: &Path, opts: &SpectralOptions, json: bool) -> Result<()> {
    let input = read_graph(path)?;
    let r = report::spectra(&input, opts)?;
    if json {
        print_json(&r)
    } else {
        print!("{}", r.to_text());
        Ok(())
    }
}

fn sweep(s: &Sweep, json: bool) -> Result<()> {
    match s {
        Sweep::DregGcd { k, n_max } => {
            let rows = report::gcd_sweep(*k, *n_max)?;
            if json {
                print_json(&rows)?;
            } else {
                print!("{}", report::gcd_table(&rows));
            }
        }
        Sweep::BetaTrend(a) => {
            if a.m_list.is_empty() {
                bail!("--m-list needs at least one value");
            }
            let opts = SpectralOptions {
                restarts: a.restarts,
                seed: a.seed,
                ..SpectralOptions::default()
            };
            let rows = report::beta_trend(a.family, a.k, &a.m_list, &opts)?;
            if json {
                print_json(&rows)?;
            } else {
                print!("{}", report::beta_table(&rows));
            }
        }
    }
    Ok(())
}

fn check(path: &Path) -> Result<bool> {
    let input = read_graph(path)?;
    Ok(transversal::classify_with(&input.graph, Method::RankCriterion).is_minimal)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Analyze { path, json, definitional_check, max_t } => {
            analyze(&path, json, definitional_check, max_t)?
        }
        Command::Generate { family, out } => generate(&family, out.as_deref())?,
        Command::Spectra { path, tol, max_iter, restarts, seed, json } => {
            let opts = SpectralOptions { tol, max_iter, restarts, seed };
            spectra(&path, &opts, json)?
        }
        Command::Check { path } => {
            return Ok(if check(&path)? { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Command::Sweep { sweep: s, json } => sweep(&s, json)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
