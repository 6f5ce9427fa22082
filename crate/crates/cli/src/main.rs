//! `bettilab`: formula and resolution runs from the command line.
//!
//! Exit status is 0 when every row passes (`PASS*` included), 1 when any row
//! fails or a computation errors, 2 on usage or parse errors.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use bettilab::linalg::Prime;
use clap::{Parser, Subcommand};

use commands::{CliError, Common, Only, SeriesKind};

#[derive(Parser)]
#[command(name = "bettilab", version, about = "Poincaré series formulas checked against minimal free resolutions over F_p")]
struct Cli {
    /// Characteristic of the coefficient field.
    #[arg(long, global = true, default_value_t = 32003)]
    prime: u64,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Highest homological degree (or expansion order).
    #[arg(long, global = true)]
    imax: Option<usize>,
    /// Highest internal degree.
    #[arg(long, global = true)]
    jmax: Option<u32>,
    #[arg(long, global = true, default_value_t = 5)]
    trials: usize,
    /// Degree cap for dimension probes.
    #[arg(long, global = true)]
    cap: Option<u32>,
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    #[arg(long, global = true)]
    csv: bool,
    /// Output file (a directory for `construct`).
    #[arg(short = 'o', global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit ring-spec files for a construction.
    #[command(subcommand)]
    Construct(Construct),
    /// Closed-form series.
    #[command(subcommand)]
    Series(Series),
    /// Hilbert function and series of a ring.
    Hilbert {
        file: PathBuf,
        #[arg(long)]
        ring: Option<String>,
    },
    /// Graded Betti table of a module `R/J` (or `k`).
    Resolve {
        file: PathBuf,
        #[arg(long)]
        ring: Option<String>,
        #[arg(long, default_value = "k")]
        module: String,
    },
    /// Oracle Betti numbers against every applicable formula.
    Compare {
        file: PathBuf,
        #[arg(long)]
        ring: Option<String>,
        #[arg(long, default_value = "k")]
        module: String,
    },
    /// Run a verification grid.
    #[command(subcommand)]
    Verify(Verify),
}

#[derive(Subcommand)]
enum Construct {
    /// The pair `R -> S` with prescribed `(d, c, q, a)`.
    Optimal {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        c: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        a: usize,
    },
    /// Minors of the `s x (h+s-1)` staircase and its Golod quotient.
    Staircase {
        #[arg(long, default_value_t = 2)]
        s: usize,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        e: usize,
    },
}

#[derive(Subcommand)]
enum Series {
    Tate {
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        codim: u32,
    },
    /// Residue field over a graded complete intersection.
    Ci {
        #[arg(long)]
        e: u32,
        #[arg(long, value_delimiter = ',')]
        degrees: Vec<u32>,
    },
    /// Ideal of maximal minors of an adequate matrix.
    Adequate {
        #[arg(long, default_value_t = 2)]
        s: u32,
        #[arg(long)]
        h: u32,
        #[arg(long)]
        e: u32,
    },
    /// `z^2 P` for the minors plus a power of the maximal ideal.
    Det {
        #[arg(long, default_value_t = 2)]
        s: u32,
        #[arg(long)]
        h: u32,
        #[arg(long)]
        e: u32,
    },
    DetIdeal {
        #[arg(long, default_value_t = 2)]
        s: u32,
        #[arg(long)]
        h: u32,
        #[arg(long)]
        e: u32,
    },
    /// Golod residue series with determinantal input, and its granularity.
    Gring {
        #[arg(long)]
        c: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        e: u32,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        h: u32,
    },
    /// `max(c - q - 1, 0)`.
    Bound {
        #[arg(long)]
        c: u32,
        #[arg(long)]
        q: u32,
    },
}

#[derive(clap::Args, Clone, Copy)]
struct GridPoint {
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    c: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    a: Option<usize>,
}

impl From<GridPoint> for Only {
    fn from(g: GridPoint) -> Self {
        Only { d: g.d, c: g.c, q: g.q, a: g.a }
    }
}

#[derive(Subcommand)]
enum Verify {
    /// Invariants, granularity and oracle Betti numbers of the optimal families.
    Optimal {
        #[arg(long, default_value_t = 3)]
        dmax: usize,
        #[command(flatten)]
        only: GridPoint,
    },
    /// Granularity case formula against the pole order, symbolically.
    Gring {
        #[arg(long, default_value_t = 5)]
        cmax: usize,
        #[arg(long, default_value_t = 5)]
        dmax: usize,
        #[arg(long, default_value_t = 5)]
        emax: usize,
        #[arg(long, default_value_t = 6)]
        amax: usize,
    },
    /// Koszulness against minimal multiplicity for random quadrics.
    Minmult {
        #[arg(long, default_value_t = 4)]
        emax: usize,
    },
    /// Sampled points of the family `f_i - a_i f_r`.
    Family {
        file: Option<PathBuf>,
        #[arg(long)]
        ring: Option<String>,
        #[arg(long, default_value_t = 2)]
        q: usize,
    },
    /// Loewy bound on the optimal families with gn = 0.
    Loewy {
        #[arg(long, default_value_t = 3)]
        dmax: usize,
        #[command(flatten)]
        only: GridPoint,
    },
}

fn run(cli: &Cli, common: &Common) -> commands::CmdResult {
    let dir = cli.output.as_deref();
    match &cli.cmd {
        Cmd::Construct(Construct::Optimal { d, c, q, a }) => commands::construct_optimal(common, *d, *c, *q, *a, dir),
        Cmd::Construct(Construct::Staircase { s, h, e }) => commands::construct_staircase(common, *s, *h, *e, dir),
        Cmd::Series(s) => {
            let kind = match s {
                Series::Tate { dim, codim } => SeriesKind::Tate { dim: *dim, codim: *codim },
                Series::Ci { e, degrees } => SeriesKind::Ci { e: *e, degrees: degrees.clone() },
                Series::Adequate { s, h, e } => SeriesKind::Adequate { s: *s, h: *h, e: *e },
                Series::Det { s, h, e } => SeriesKind::Det { s: *s, h: *h, e: *e },
                Series::DetIdeal { s, h, e } => SeriesKind::DetIdeal { s: *s, h: *h, e: *e },
                Series::Gring { c, d, e, a, h } => SeriesKind::Gring { c: *c, d: *d, e: *e, a: *a, h: *h },
                Series::Bound { c, q } => SeriesKind::Bound { c: *c, q: *q },
            };
            commands::series(common, &kind)
        }
        Cmd::Hilbert { file, ring } => commands::hilbert_cmd(common, file, ring.as_deref()),
        Cmd::Resolve { file, ring, module } => commands::resolve_cmd(common, file, ring.as_deref(), module),
        Cmd::Compare { file, ring, module } => commands::compare(common, file, ring.as_deref(), module),
        Cmd::Verify(v) => match v {
            Verify::Optimal { dmax, only } => commands::verify_optimal(common, *dmax, (*only).into()),
            Verify::Gring { cmax, dmax, emax, amax } => commands::verify_gring(common, *cmax, *dmax, *emax, *amax),
            Verify::Minmult { emax } => commands::verify_minmult(common, *emax),
            Verify::Family { file, ring, q } => commands::verify_family(common, file.as_deref(), ring.as_deref(), *q),
            Verify::Loewy { dmax, only } => commands::verify_loewy(common, *dmax, (*only).into()),
        },
    }
}

fn emit(cli: &Cli, rep: &report::RunReport) -> std::io::Result<()> {
    let body = if cli.json {
        rep.to_json()
    } else if cli.csv {
        rep.to_csv()
    } else {
        rep.to_human()
    };
    let to_file = cli.output.as_deref().filter(|_| !matches!(cli.cmd, Cmd::Construct(_)));
    match to_file {
        Some(path) => {
            std::fs::write(path, body)?;
            std::fs::write(commands::timings_path(path), rep.timings_json())?;
        }
        None => {
            print!("{body}");
            if cli.json || cli.csv {
                eprint!("{}", rep.timings_json());
            } else {
                for (phase, secs) in &rep.timings {
                    println!("time {phase}: {secs:.3}s");
                }
            }
        }
    }
    Ok(())
}

fn thread_pool() {
    if let Some(n) = std::env::var("BETTILAB_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // a second initialization only happens in tests; ignore it
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    thread_pool();
    let prime = match Prime::new(cli.prime) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let common = Common {
        prime,
        seed: cli.seed,
        imax: cli.imax,
        jmax: cli.jmax,
        trials: cli.trials,
        cap: cli.cap,
    };
    match run(&cli, &common) {
        Ok(rep) => {
            if let Err(e) = emit(&cli, &rep) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if rep.failed() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CliError::Usage(_) => 2,
                CliError::Run(_) => 1,
            })
        }
    }
}

