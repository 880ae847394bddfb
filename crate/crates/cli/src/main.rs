use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use buneman_core::blocks::{all_blocks, blocks_intersect, BlockMeeting};
use buneman_core::buneman::enumerate_vertices;
use buneman_core::check::{check_system, CheckConfig, CheckReport};
use buneman_core::cut::analyze_all;
use buneman_core::io::{self, LoadError};
use buneman_core::trees::{block_cut_tree, reduce_to_xtree};
use buneman_core::{random, BunemanGraph, Error, Execution, Options, SplitSystem, Strategy};

/// Buneman graphs of split systems: cut vertices, blocks and X-trees.
#[derive(Parser, Debug)]
#[command(name = "buneman", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Cross-check every result against its alternative characterizations.
    #[arg(long, global = true)]
    verify: bool,
    /// Vertex enumeration strategy.
    #[arg(long, global = true, default_value = "incremental")]
    strategy: Strategy,
    /// Refuse systems with more splits than this.
    #[arg(long, global = true)]
    max_splits: Option<usize>,
    /// Seed for random systems and sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Run single-threaded.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate the Buneman graph and print its size.
    Graph {
        file: PathBuf,
        /// Print the graph as DOT instead.
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        /// Print the graph as adjacency JSON instead.
        #[arg(long)]
        json: bool,
    },
    /// List cut vertices with all six verdicts and witness bipartitions.
    Cuts {
        file: PathBuf,
        /// Show every vertex, not only cut vertices.
        #[arg(long)]
        all: bool,
    },
    /// List blocks, their incompatibility components and how they meet.
    Blocks { file: PathBuf },
    /// Print the block-cut tree as DOT.
    Tree { file: PathBuf },
    /// Print the reduced X-tree as Newick.
    Xtree { file: PathBuf },
    /// Run the invariant suite on a file or on random systems.
    Check {
        #[arg(required_unless_present = "random")]
        file: Option<PathBuf>,
        /// Number of random systems to check instead of a file.
        #[arg(long, conflicts_with = "file")]
        random: Option<usize>,
        /// Largest ground set for random systems.
        #[arg(long, default_value_t = 7)]
        n_max: usize,
        /// Largest split count for random systems.
        #[arg(long, default_value_t = 6)]
        m_max: usize,
    },
    /// Time brute against incremental enumeration.
    Bench {
        /// System to time; defaults to a random sparse one.
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 16)]
        n: usize,
        #[arg(long, default_value_t = 12)]
        m: usize,
        #[arg(long, default_value_t = 5)]
        repeat: u32,
    },
}

#[derive(Error, Debug)]
enum Failure {
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error("{0}")]
    Lib(#[from] Error),
    #[error("{0}")]
    Check(String),
    #[error("{0}")]
    Usage(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Load(_) => 2,
            Failure::Lib(Error::CapExceeded { .. }) => 3,
            Failure::Lib(Error::InternalInconsistency(_)) | Failure::Check(_) => 4,
            Failure::Lib(_) => 1,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}

fn options(g: &Global) -> Options {
    let mut o = Options {
        strategy: g.strategy,
        verify: g.verify,
        execution: if g.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        },
        ..Options::default()
    };
    if let Some(cap) = g.max_splits {
        o.limits.max_splits = cap;
    }
    o
}

fn load(path: &PathBuf, opts: &Options) -> Result<BunemanGraph, Failure> {
    let sys = io::load_split_file(path)?;
    Ok(BunemanGraph::build(sys, opts)?)
}

fn names(sys: &SplitSystem, idx: &[usize]) -> String {
    let v: Vec<&str> = idx.iter().map(|&i| sys.name(i)).collect();
    format!("{{{}}}", v.join(","))
}

fn labels(sys: &SplitSystem, xs: &[usize]) -> String {
    let v: Vec<&str> = xs.iter().map(|&x| sys.ground().label(x)).collect();
    format!("{{{}}}", v.join(","))
}

fn vertices(vs: &[usize]) -> String {
    let v: Vec<String> = vs.iter().map(|v| format!("v{v}")).collect();
    format!("{{{}}}", v.join(","))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let opts = options(&cli.global);
    match &cli.command {
        Command::Graph { file, dot, json } => {
            let g = load(file, &opts)?;
            if *dot {
                print!("{}", io::graph_to_dot(&g));
            } else if *json {
                println!("{}", io::graph_to_json(&g));
            } else {
                println!("splits: {}", g.system().len());
                println!("elements: {}", g.system().n());
                println!("vertices: {}", g.vertex_count());
                println!("edges: {}", g.edge_count());
            }
        }
        Command::Cuts { file, all } => cuts(&load(file, &opts)?, *all)?,
        Command::Blocks { file } => blocks(&load(file, &opts)?)?,
        Command::Tree { file } => {
            let g = load(file, &opts)?;
            let d = all_blocks(&g)?;
            let t = block_cut_tree(&g, &d)?;
            print!("{}", io::block_cut_tree_to_dot(&g, &d, &t));
        }
        Command::Xtree { file } => {
            let g = load(file, &opts)?;
            let d = all_blocks(&g)?;
            let x = reduce_to_xtree(&block_cut_tree(&g, &d)?)?;
            println!("{}", io::xtree_to_newick(&x, g.system().ground()));
        }
        Command::Check {
            file,
            random: count,
            n_max,
            m_max,
        } => check(&cli.global, &opts, file.as_ref(), *count, *n_max, *m_max)?,
        Command::Bench { file, n, m, repeat } => {
            bench(&cli.global, &opts, file.as_ref(), *n, *m, *repeat)?
        }
    }
    Ok(())
}

fn cuts(g: &BunemanGraph, all: bool) -> Result<(), Failure> {
    let sys = g.system();
    let analyses = analyze_all(g)?;
    let count = analyses.iter().filter(|a| a.is_cut).count();
    println!("cut vertices: {count} of {}", g.vertex_count());
    for a in analyses.iter().filter(|a| all || a.is_cut) {
        let v = a.vertex;
        let verdicts: Vec<&str> = a
            .verdicts
            .iter()
            .map(|&b| if b { "yes" } else { "no" })
            .collect();
        println!(
            "v{v} sides={} labels={} cut={} components={}",
            g.vertex(v).sides().to_bit_string(),
            labels(sys, g.labels_at(v)),
            if a.is_cut { "yes" } else { "no" },
            a.component_count
        );
        println!("  verdicts: {}", verdicts.join(" "));
        println!("  Σ^(φ) = {}", names(sys, &a.sigma_phi));
        if let Some(w) = &a.witnesses {
            println!(
                "  Γ_φ(Σ^(φ)): {} | {}",
                names(sys, &w.sigma_min.first),
                names(sys, &w.sigma_min.rest)
            );
            println!(
                "  Γ_φ(Σ):     {} | {}",
                names(sys, &w.sigma.first),
                names(sys, &w.sigma.rest)
            );
            println!(
                "  Γ_φ(X^(φ)): {} | {}",
                labels(sys, &w.elements.first),
                labels(sys, &w.elements.rest)
            );
            println!(
                "  Γ_φ(V^(φ)): {} | {}",
                vertices(&w.vertices.first),
                vertices(&w.vertices.rest)
            );
        }
    }
    Ok(())
}

fn blocks(g: &BunemanGraph) -> Result<(), Failure> {
    let sys = g.system();
    let d = all_blocks(g)?;
    println!("blocks: {}", d.blocks.len());
    println!("component -> block size");
    for b in &d.blocks {
        println!(
            "  {} -> {} {}",
            names(sys, &b.splits),
            b.len(),
            vertices(&b.vertices)
        );
    }
    println!("cut vertices: {}", vertices(&d.cut_vertices));
    println!("intersections:");
    for (i, b0) in d.blocks.iter().enumerate() {
        for b1 in &d.blocks[i + 1..] {
            if let BlockMeeting::MeetAt(v) = blocks_intersect(g, b0.component, b1.component)? {
                println!(
                    "  {} ∩ {} = v{v}",
                    names(sys, &b0.splits),
                    names(sys, &b1.splits)
                );
            }
        }
    }
    Ok(())
}

fn print_report(report: &CheckReport, verbose: bool) {
    for item in &report.items {
        if verbose || !item.passed {
            let tag = if item.passed { "PASS" } else { "FAIL" };
            if item.detail.is_empty() {
                println!("{tag} {}", item.name);
            } else {
                println!("{tag} {}: {}", item.name, item.detail);
            }
        }
    }
}

fn check(
    global: &Global,
    opts: &Options,
    file: Option<&PathBuf>,
    count: Option<usize>,
    n_max: usize,
    m_max: usize,
) -> Result<(), Failure> {
    let config = CheckConfig {
        seed: global.seed,
        ..CheckConfig::default()
    };
    if let Some(path) = file {
        let sys = io::load_split_file(path)?;
        let report = check_system(&sys, opts, &config)?;
        println!(
            "vertices: {}, edges: {}",
            report.vertex_count, report.edge_count
        );
        print_report(&report, true);
        return if report.passed() {
            Ok(())
        } else {
            Err(Failure::Check(format!(
                "{} checks failed",
                report.failures().count()
            )))
        };
    }
    if n_max < 2 || m_max < 1 {
        return Err(Failure::Usage(
            "--n-max must be at least 2 and --m-max at least 1".into(),
        ));
    }
    let count = count.unwrap_or(0);
    let mut rng = random::rng(global.seed);
    let mut failed = 0;
    for k in 0..count {
        let (n, m) = random::random_shape(&mut rng, 2, n_max, m_max);
        let sys = random::random_system(&mut rng, n, m);
        let report = check_system(&sys, opts, &config)?;
        if !report.passed() {
            failed += 1;
            println!("system {k} failed:");
            print!("{}", io::format_split_file(&sys));
            print_report(&report, false);
        }
    }
    println!(
        "checked {count} random systems (seed {}): {failed} failed",
        global.seed
    );
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "{failed} of {count} systems failed"
        )))
    }
}

fn time(
    repeat: u32,
    mut f: impl FnMut() -> Result<usize, Error>,
) -> Result<(Duration, usize), Error> {
    let mut best = Duration::MAX;
    let mut size = 0;
    for _ in 0..repeat.max(1) {
        let start = Instant::now();
        size = f()?;
        best = best.min(start.elapsed());
    }
    Ok((best, size))
}

fn bench(
    global: &Global,
    opts: &Options,
    file: Option<&PathBuf>,
    n: usize,
    m: usize,
    repeat: u32,
) -> Result<(), Failure> {
    let sys = match file {
        Some(path) => io::load_split_file(path)?,
        None => {
            if n < 4 {
                return Err(Failure::Usage("--n must be at least 4".into()));
            }
            random::sparse_system(&mut random::rng(global.seed), n, m, 2)
        }
    };
    println!("n={} m={}", sys.n(), sys.len());
    println!(
        "{:<12} {:<11} {:>10} {:>8}",
        "strategy", "execution", "best ms", "|V|"
    );
    for strategy in [Strategy::Brute, Strategy::Incremental] {
        for exec in [Execution::Sequential, Execution::Parallel] {
            let (t, size) = time(repeat, || {
                Ok(enumerate_vertices(&sys, strategy, &opts.limits, exec)?.len())
            })?;
            println!(
                "{:<12} {:<11} {:>10.3} {:>8}",
                format!("{strategy:?}").to_lowercase(),
                format!("{exec:?}").to_lowercase(),
                t.as_secs_f64() * 1e3,
                size
            );
        }
    }
    Ok(())
}
