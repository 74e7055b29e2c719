//! Command-line front end: construct the colorings, dump them to files,
//! verify (p,q) properties, tabulate palette growth, and run the exact
//! oracle.
//!
//! Exit codes: 0 success / verification pass, 1 verification failure,
//! 2 usage or capacity error, 3 I/O error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pqcolor::chi::{growth_row, ChiColoring};
use pqcolor::dump::{build_dump, ColoringDump, DumpFormat, DumpParams, SourceKind};
use pqcolor::exact::{exact_min_colors, ExactStatus, SearchBudget};
use pqcolor::sigma::{SigmaColoring, SigmaParams};
use pqcolor::verify::{verify_pq, ColoringSource, Mode};
use pqcolor::Error;

#[derive(Parser)]
#[command(name = "pqcolor", version, about = "Low-palette (p,q)-colorings of complete graphs and 3-graphs: construct, dump, verify, measure")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Sigma,
    Chi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the pair-coloring parameters chosen for n vertices.
    Params {
        /// Vertex count (>= 2).
        #[arg(long)]
        n: u64,
    },
    /// Write a full coloring dump to a file.
    Generate {
        /// Which construction to dump.
        #[arg(long, value_enum)]
        kind: Kind,
        /// Vertex count.
        #[arg(long)]
        n: u64,
        /// Output path.
        #[arg(long)]
        out: PathBuf,
        /// Output format; csv also writes a `.palette.json` sidecar.
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Check that every p-subset spans at least q edge colors.
    Verify(VerifyArgs),
    /// Print the palette-growth table as CSV.
    Growth {
        /// Comma-separated bit lengths n; each row covers N = 2^n vertices.
        #[arg(long = "n-list", value_delimiter = ',')]
        n_list: Vec<u8>,
    },
    /// Exact minimum color count for tiny instances, by exhaustive search.
    Exact {
        /// Vertex count (<= 8).
        #[arg(long)]
        n: u64,
        /// Edge size (2 or 3).
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        /// Node budget for the search.
        #[arg(long = "max-nodes")]
        max_nodes: Option<u64>,
        /// Wall-clock budget in seconds.
        #[arg(long = "max-seconds")]
        max_seconds: Option<f64>,
        /// Where to write the certificate dump on exact status
        /// (default: certificate_n<N>_k<K>_p<P>_q<Q>.json).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Verify a coloring dump file instead of an in-memory construction.
    #[arg(long = "in", conflicts_with_all = ["kind", "n"])]
    input: Option<PathBuf>,
    /// In-memory construction to verify.
    #[arg(long, value_enum, requires = "n")]
    kind: Option<Kind>,
    /// Vertex count for --kind.
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    p: usize,
    #[arg(long)]
    q: usize,
    /// Check this many seeded random p-subsets instead of all of them.
    #[arg(long, requires = "seed")]
    sample: Option<u64>,
    /// Seed for --sample.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (default: available parallelism).
    #[arg(long, default_value_t = 0)]
    workers: usize,
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Io(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn run(command: Command) -> pqcolor::Result<u8> {
    match command {
        Command::Params { n } => {
            let params = SigmaParams::select(n)?;
            println!(
                "t={} m={} nprime={} bound={}",
                params.t,
                params.m,
                params.n_prime,
                params.bound()
            );
            Ok(0)
        }
        Command::Generate {
            kind,
            n,
            out,
            format,
        } => {
            let dump = match kind {
                Kind::Sigma => {
                    let params = SigmaParams::select(n)?;
                    let coloring = SigmaColoring::new(params)?;
                    let dp = DumpParams {
                        kind: "sigma".into(),
                        t: params.t,
                        m: params.m,
                        n_prime: params.n_prime,
                        bit_length: None,
                    };
                    build_dump(&coloring, SourceKind::Sigma, Some(dp))?
                }
                Kind::Chi => {
                    let coloring = ChiColoring::new(n)?;
                    let params = *coloring.params();
                    let dp = DumpParams {
                        kind: "chi".into(),
                        t: params.t,
                        m: params.m,
                        n_prime: params.n_prime,
                        bit_length: Some(coloring.bit_length()),
                    };
                    build_dump(&coloring, SourceKind::Chi, Some(dp))?
                }
            };
            dump.write(
                &out,
                match format {
                    Format::Csv => DumpFormat::Csv,
                    Format::Json => DumpFormat::Json,
                },
            )?;
            Ok(0)
        }
        Command::Verify(args) => {
            let mode = match (args.sample, args.seed) {
                (Some(sample_size), Some(seed)) => Mode::Sampled { sample_size, seed },
                (None, _) => Mode::Exhaustive,
                (Some(_), None) => {
                    return Err(Error::Parameter("--sample requires --seed".into()))
                }
            };
            let source: Box<dyn ColoringSource> = match (&args.input, args.kind, args.n) {
                (Some(path), _, _) => Box::new(ColoringDump::read(path)?.to_coloring()?),
                (None, Some(Kind::Sigma), Some(n)) => {
                    Box::new(SigmaColoring::new(SigmaParams::select(n)?)?)
                }
                (None, Some(Kind::Chi), Some(n)) => Box::new(ChiColoring::new(n)?),
                _ => {
                    return Err(Error::Parameter(
                        "need either --in PATH or --kind with --n".into(),
                    ))
                }
            };
            let report = verify_pq(source.as_ref(), args.p, args.q, mode, args.workers)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&report)
                    .map_err(|e| Error::Parameter(e.to_string()))?
            );
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Growth { n_list } => {
            println!("n,N,sigma_palette,chi_palette,bound,ratio");
            for n in n_list {
                let row = growth_row(n)?;
                println!(
                    "{},{},{},{},{},{:.6}",
                    row.n, row.n_vertices, row.sigma_palette, row.chi_palette, row.bound, row.ratio
                );
            }
            Ok(0)
        }
        Command::Exact {
            n,
            k,
            p,
            q,
            max_nodes,
            max_seconds,
            out,
        } => {
            let budget = SearchBudget {
                max_nodes: max_nodes.unwrap_or(u64::MAX),
                max_seconds: max_seconds.unwrap_or(f64::INFINITY),
            };
            let result = exact_min_colors(n, k, p, q, budget)?;
            match result.status {
                ExactStatus::Exact(value) => {
                    println!("status=exact value={value} nodes={}", result.nodes_expanded);
                    let cert = result.certificate.expect("exact status carries a certificate");
                    let path = out.unwrap_or_else(|| {
                        PathBuf::from(format!("certificate_n{n}_k{k}_p{p}_q{q}.json"))
                    });
                    let dump = build_dump(&cert, SourceKind::Opaque, None)?;
                    dump.write(&path, DumpFormat::Json)?;
                    println!("certificate={}", path.display());
                }
                ExactStatus::LowerBound(value) => {
                    println!(
                        "status=lower_bound value={value} nodes={}",
                        result.nodes_expanded
                    );
                }
            }
            Ok(0)
        }
    }
}
