use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use pcube::constructions::{
    cartesian_product, expansion, gated_amalgam, theta_contraction, AmalgamSpec, Family,
    ProperCover,
};
use pcube::{Graph, Metric, VertexSet};
use pcube_harness::{enumerate_corpus, verify_corpus, CorpusParams, Selection};

#[derive(Parser)]
#[command(name = "pcube", version, about = "Geodesic convexity and partial cubes on small graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    /// Partial-cube recognition (all three recognisers).
    Pc,
    /// Att-convexity.
    Att,
    /// Pre-hull number.
    Ph,
    /// Whether `--set` is gated.
    Gated,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    All,
    Theorems,
    Properties,
    Global,
}

#[derive(Subcommand)]
enum Command {
    /// Test a property of a graph file ("-" reads stdin).
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "pc")]
        what: What,
        /// Vertex list for `--what gated`, e.g. 0,1,4.
        #[arg(long)]
        set: Option<String>,
    },
    /// Print a member of a named family: P n, C n, Q d, Qminus d, M d,
    /// K23, K a b, grid a b, random n p seed.
    Gen {
        family: String,
        params: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Cartesian product of two graphs.
    Product {
        f: PathBuf,
        g: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Expansion along a proper cover given as two vertex lists.
    Expand {
        file: PathBuf,
        #[arg(long, num_args = 2, value_names = ["V0", "V1"], required = true)]
        cover: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Contract one Θ-class (classes ordered by least edge).
    Contract {
        file: PathBuf,
        #[arg(long)]
        class: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Gated amalgam; the glue is a list of pairs like 0:1,2:3.
    Amalgam {
        f: PathBuf,
        g: PathBuf,
        #[arg(long)]
        glue: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Isometric hypercube labelling of a partial cube.
    Embed {
        #[arg(default_value = "-")]
        file: PathBuf,
    },
    /// Run the verification suite over the corpus.
    Verify {
        /// Exhaustive tier order (at most 7).
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = pcube_harness::corpus::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        random: usize,
        #[arg(long)]
        include_k1: bool,
        #[arg(long)]
        no_families: bool,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

/// Whether the tested property held.
enum Verdict {
    Holds,
    Violated,
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    Graph::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn metric(g: Graph) -> Result<Metric> {
    Ok(Metric::new(g)?)
}

fn emit(g: &Graph, output: Option<&Path>) -> Result<Verdict> {
    match output {
        Some(p) => fs::write(p, g.to_text()).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{}", g.to_text()),
    }
    Ok(Verdict::Holds)
}

fn parse_list(s: &str, n: usize) -> Result<VertexSet> {
    let mut set = VertexSet::empty(n);
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v: usize = tok.parse().with_context(|| format!("bad vertex {tok:?}"))?;
        if v >= n {
            bail!("vertex {v} out of range for n = {n}");
        }
        set.insert(v);
    }
    Ok(set)
}

fn parse_glue(s: &str) -> Result<Vec<(usize, usize)>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|pair| {
            let (a, b) = pair
                .split_once(':')
                .with_context(|| format!("glue pair {pair:?} is not of the form a:b"))?;
            Ok((a.trim().parse()?, b.trim().parse()?))
        })
        .collect::<Result<_>>()
        .context("parsing --glue")
}

fn check(file: &Path, what: What, set: Option<&str>) -> Result<Verdict> {
    let m = metric(read_graph(file)?)?;
    match what {
        What::Pc => {
            let failure = m.djokovic_failure();
            let agree = failure.is_none() == m.is_partial_cube_winkler()
                && failure.is_none() == m.is_partial_cube_embedding();
            if !agree {
                bail!("recognisers disagree; this is a bug");
            }
            match failure {
                None => {
                    let classes = m.theta_classes()?.len();
                    println!("partial cube: yes ({classes} Θ-classes)");
                    Ok(Verdict::Holds)
                }
                Some(f) => {
                    println!("partial cube: no ({f})");
                    Ok(Verdict::Violated)
                }
            }
        }
        What::Att => match m.att_convexity_violation()? {
            None => {
                println!("Att-convex: yes");
                Ok(Verdict::Holds)
            }
            Some(v) => {
                println!(
                    "Att-convex: no (copoint {} at {}: Att = {} is not convex, {} lies between {} and {})",
                    v.copoint.set, v.copoint.at, v.copoint.att, v.violation.z, v.violation.x, v.violation.y
                );
                Ok(Verdict::Violated)
            }
        },
        What::Ph => {
            println!("ph = {}", m.pre_hull_number()?);
            Ok(Verdict::Holds)
        }
        What::Gated => {
            let Some(set) = set else {
                bail!("--what gated needs --set");
            };
            let a = parse_list(set, m.n())?;
            if a.is_empty() {
                bail!("--set is empty");
            }
            match (0..m.n()).find(|&x| m.gate(&a, x).is_none()) {
                None => {
                    println!("gated: yes");
                    Ok(Verdict::Holds)
                }
                Some(x) => {
                    println!("gated: no (vertex {x} has no gate in {a})");
                    Ok(Verdict::Violated)
                }
            }
        }
    }
}

fn embed(file: &Path) -> Result<Verdict> {
    let m = metric(read_graph(file)?)?;
    match m.cube_embedding() {
        Ok(e) => {
            print!("{}", e.to_text());
            Ok(Verdict::Holds)
        }
        Err(pcube::Error::NotPartialCube(f)) => {
            println!("not a partial cube: {f}");
            Ok(Verdict::Violated)
        }
        Err(e) => Err(e.into()),
    }
}

#[allow(clippy::too_many_arguments)]
fn verify(
    n: usize,
    seed: u64,
    random: usize,
    include_k1: bool,
    no_families: bool,
    suite: Suite,
    json: Option<&Path>,
    csv: Option<&Path>,
) -> Result<Verdict> {
    let params = CorpusParams {
        n_max: n,
        include_k1,
        families: !no_families,
        random_count: random,
        seed,
        ..CorpusParams::default()
    };
    let corpus = enumerate_corpus(&params)?;
    let selection = match suite {
        Suite::All => Selection::default(),
        Suite::Theorems => Selection { theorems: true, properties: false, global: false },
        Suite::Properties => Selection { theorems: false, properties: true, global: false },
        Suite::Global => Selection { theorems: false, properties: false, global: true },
    };
    let report = verify_corpus(&corpus, selection);
    if let Some(p) = json {
        fs::write(p, report.to_json()?).with_context(|| format!("writing {}", p.display()))?;
    }
    if let Some(p) = csv {
        let f = fs::File::create(p).with_context(|| format!("writing {}", p.display()))?;
        report.write_csv(f)?;
    }
    println!("{} graphs, {} results", corpus.entries.len(), report.results.len());
    print!("{}", report.summary_table());
    for r in report.failures() {
        println!("FAIL {} {}: {}", r.graph_id, r.check, r.witness.clone().unwrap_or_default());
    }
    Ok(if report.is_clean() { Verdict::Holds } else { Verdict::Violated })
}

fn run(cli: Cli) -> Result<Verdict> {
    match cli.command {
        Command::Check { file, what, set } => check(&file, what, set.as_deref()),
        Command::Gen { family, params, output } => {
            let params: Vec<&str> = params.iter().map(String::as_str).collect();
            let g = Family::parse(&family, &params)?.build()?;
            emit(&g, output.as_deref())
        }
        Command::Product { f, g, output } => {
            let p = cartesian_product(&read_graph(&f)?, &read_graph(&g)?);
            emit(&p.graph, output.as_deref())
        }
        Command::Expand { file, cover, output } => {
            let g = read_graph(&file)?;
            let v0 = parse_list(&cover[0], g.n())?;
            let v1 = parse_list(&cover[1], g.n())?;
            let cover = ProperCover::new(&g, v0, v1)?;
            emit(&expansion(&g, &cover).graph, output.as_deref())
        }
        Command::Contract { file, class, output } => {
            let m = metric(read_graph(&file)?)?;
            emit(&theta_contraction(&m, class)?.graph, output.as_deref())
        }
        Command::Amalgam { f, g, glue, output } => {
            let spec = AmalgamSpec {
                g0: read_graph(&f)?,
                g1: read_graph(&g)?,
                glue: parse_glue(&glue)?,
            };
            emit(&gated_amalgam(&spec)?.graph, output.as_deref())
        }
        Command::Embed { file } => embed(&file),
        Command::Verify { n, seed, random, include_k1, no_families, suite, json, csv } => verify(
            n,
            seed,
            random,
            include_k1,
            no_families,
            suite,
            json.as_deref(),
            csv.as_deref(),
        ),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Verdict::Holds) => ExitCode::SUCCESS,
        Ok(Verdict::Violated) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
