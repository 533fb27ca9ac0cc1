use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use toptree_core::{
    generate, ingest_xml, load_topdag, parse_tree, save_topdag, serialize_tree, stats, LabeledTree, Query,
    StatsRecord, TopDag, TreeKind,
};

/// Compress labeled ordered trees into top DAGs and query them.
#[derive(Parser, Debug)]
#[command(name = "toptree", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compress a tree (parenthesized text or XML) into a TOPDAG file.
    Compress {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
        format: InputFormat,
    },
    /// Expand a TOPDAG file back into tree text.
    Decompress {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Answer one navigation query on a TOPDAG file.
    Query {
        input: PathBuf,
        /// access, depth, height, size, parent, first_child, next_sibling,
        /// level_ancestor, nca or decompress
        op: String,
        args: Vec<String>,
    },
    /// Print size statistics of a tree and its compressed forms.
    Stats {
        input: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
        format: InputFormat,
    },
    /// Generate a tree and print it as text.
    Gen {
        kind: TreeKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        sigma: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print statistics for tree families over doubling sizes.
    Bench {
        /// One family, or all of them when omitted.
        #[arg(long)]
        family: Option<TreeKind>,
        #[arg(long, default_value_t = 1 << 16)]
        max: usize,
        #[arg(long, default_value_t = 1)]
        sigma: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    /// XML if the first non-blank character is `<`, tree text otherwise.
    Auto,
    Tree,
    Xml,
}

/// Errors in the command line itself, reported with exit code 1.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn read_input(path: &Path) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn with_output(path: Option<&Path>, f: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> anyhow::Result<()> {
    match path {
        Some(p) => {
            let file = fs::File::create(p).with_context(|| format!("creating {}", p.display()))?;
            let mut w = io::BufWriter::new(file);
            f(&mut w).and_then(|()| w.flush()).with_context(|| format!("writing {}", p.display()))
        }
        None => {
            let stdout = io::stdout();
            let mut w = io::BufWriter::new(stdout.lock());
            f(&mut w).and_then(|()| w.flush()).context("writing standard output")
        }
    }
}

fn read_tree(path: &Path, format: InputFormat) -> anyhow::Result<LabeledTree> {
    let text = read_input(path)?;
    let xml = match format {
        InputFormat::Xml => true,
        InputFormat::Tree => false,
        InputFormat::Auto => text.trim_start().starts_with('<'),
    };
    let tree = if xml {
        ingest_xml(&text).with_context(|| format!("parsing XML {}", path.display()))?
    } else {
        parse_tree(&text).with_context(|| format!("parsing tree {}", path.display()))?
    };
    Ok(tree)
}

#[derive(Serialize)]
struct BenchRow<'a> {
    family: &'a str,
    #[serde(flatten)]
    record: &'a StatsRecord,
}

fn bench(family: Option<TreeKind>, max: usize, sigma: usize, seed: u64, json: bool) -> anyhow::Result<()> {
    if max < 2 {
        return Err(UsageError(format!("--max must be at least 2, got {max}")).into());
    }
    let families = match family {
        Some(f) => vec![f],
        None => TreeKind::ALL.to_vec(),
    };
    with_output(None, |w| {
        if !json {
            writeln!(w, "family\t{}", StatsRecord::tsv_header())?;
        }
        for kind in &families {
            let mut n = 16.min(max);
            loop {
                let tree = generate(*kind, n, sigma, seed).map_err(io::Error::other)?;
                let record = stats(&tree);
                if json {
                    let row = BenchRow {
                        family: kind.name(),
                        record: &record,
                    };
                    writeln!(w, "{}", serde_json::to_string(&row).map_err(io::Error::other)?)?;
                } else {
                    writeln!(w, "{}\t{record}", kind.name())?;
                }
                if n >= max {
                    break;
                }
                n = (2 * n).min(max);
            }
        }
        Ok(())
    })
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Compress { input, output, format } => {
            let tree = read_tree(&input, format)?;
            let dag = TopDag::from_tree(&tree);
            with_output(output.as_deref(), |w| save_topdag(&dag, w))
        }
        Command::Decompress { input, output } => {
            let dag = load_topdag(&read_input(&input)?).with_context(|| format!("loading {}", input.display()))?;
            let tree = dag.unfold();
            with_output(output.as_deref(), |w| writeln!(w, "{}", serialize_tree(&tree)))
        }
        Command::Query { input, op, args } => {
            let query = Query::parse(&op, &args).map_err(|e| UsageError(e.to_string()))?;
            let dag = load_topdag(&read_input(&input)?).with_context(|| format!("loading {}", input.display()))?;
            let answer = dag.navigator().answer(&query)?;
            with_output(None, |w| writeln!(w, "{answer}"))
        }
        Command::Stats { input, json, format } => {
            let record = stats(&read_tree(&input, format)?);
            if json {
                let line = serde_json::to_string(&record)?;
                with_output(None, |w| writeln!(w, "{line}"))
            } else {
                with_output(None, |w| writeln!(w, "{}\n{record}", StatsRecord::tsv_header()))
            }
        }
        Command::Gen {
            kind,
            n,
            sigma,
            seed,
            output,
        } => {
            let tree = match generate(kind, n, sigma, seed) {
                Ok(t) => t,
                Err(e) => bail!(UsageError(e.to_string())),
            };
            if tree.len() != n {
                eprintln!("toptree: {kind} tree has {} nodes (requested {n})", tree.len());
            }
            with_output(output.as_deref(), |w| writeln!(w, "{}", serialize_tree(&tree)))
        }
        Command::Bench {
            family,
            max,
            sigma,
            seed,
            json,
        } => bench(family, max, sigma, seed, json),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("toptree: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
