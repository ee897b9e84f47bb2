//! Command line driver for the exotic-springer library.
//!
//! Exit codes: 0 on success, 1 when a computation or cross-check fails,
//! 2 on usage errors.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

use exotic_springer::exotic::build_normal_form;
use exotic_springer::jordan::{random_admissible_coeffs, LINE_DRAW_BOUND};
use exotic_springer::normalize::NormalBasis;
use exotic_springer::oracle::crosscheck_line;
use exotic_springer::partition::bipartitions_of;
use exotic_springer::rs::{compare_naive_geometric, full_table, verify_bijection};
use exotic_springer::seeding::{derive_rng, DEFAULT_SEED};
use exotic_springer::tableau::enumerate_syb;
use exotic_springer::{Bipartition, Result};

#[derive(Parser)]
#[command(name = "exspring", version, about = "Exotic Springer fibre computations")]
struct Cli {
    /// Seed for every randomised construction.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Independent samples behind each reported value.
    #[arg(long, global = true, default_value_t = 8)]
    samples: usize,

    /// Row format for table output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Standard bitableaux of one shape, or counts over all shapes.
    Syb(SybArgs),
    /// Compare the coefficient predictions for line reductions against
    /// brute-force linear algebra on random admissible lines.
    Crosscheck(CrosscheckArgs),
    /// Sample the geometric correspondence table for rank n.
    RsTable(RankArgs),
    /// Line the geometric correspondence up against naive insertion.
    NaiveCompare(RankArgs),
}

#[derive(Args)]
struct SybArgs {
    /// Shape to enumerate, written "mu|nu", e.g. "2,1|1".
    #[arg(long, value_parser = parse_bp, conflicts_with_all = ["all", "n"])]
    bp: Option<Bipartition>,

    /// Enumerate every shape of rank n.
    #[arg(long, requires = "n")]
    all: bool,

    /// Rank for --all.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args)]
struct CrosscheckArgs {
    /// Largest rank to check; every shape of every rank up to this is
    /// covered.
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct RankArgs {
    /// Rank of the group.
    #[arg(long)]
    n: usize,

    /// Permit rank 4, which takes minutes rather than seconds.
    #[arg(long)]
    allow_slow: bool,
}

fn parse_bp(s: &str) -> std::result::Result<Bipartition, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn usage_error(message: &str) -> ! {
    Cli::command()
        .error(ErrorKind::InvalidValue, message)
        .exit()
}

fn writer(out: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.samples == 0 {
        usage_error("--samples must be positive");
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<()> {
    let mut w = writer(&cli.out)?;
    match &cli.command {
        Command::Syb(args) => cmd_syb(args, &mut w),
        Command::Crosscheck(args) => cmd_crosscheck(cli, args, &mut w),
        Command::RsTable(args) => cmd_rs_table(cli, args, &mut w),
        Command::NaiveCompare(args) => cmd_naive_compare(cli, args, &mut w),
    }?;
    w.flush()?;
    Ok(())
}

fn cmd_syb(args: &SybArgs, w: &mut dyn Write) -> Result<()> {
    if let Some(bp) = &args.bp {
        let tabs = enumerate_syb(bp);
        for t in &tabs {
            writeln!(w, "{t}")?;
        }
        writeln!(w, "count = {}", tabs.len())?;
        return Ok(());
    }
    if !args.all {
        usage_error("pass either --bp SHAPE or --all --n N");
    }
    let n = args.n.expect("clap enforces --n with --all");
    let mut total = 0usize;
    for bp in bipartitions_of(n) {
        let count = enumerate_syb(&bp).len();
        total += count * count;
        writeln!(w, "{bp}: {count}")?;
    }
    writeln!(w, "sum of squares = {total}")?;
    Ok(())
}

fn cmd_crosscheck(cli: &Cli, args: &CrosscheckArgs, w: &mut dyn Write) -> Result<()> {
    if args.n == 0 || args.n > 5 {
        usage_error("--n must be between 1 and 5; larger ranks take too long to brute-force");
    }
    for size in 1..=args.n {
        for bp in bipartitions_of(size) {
            let p = build_normal_form(&bp);
            let nb = NormalBasis::standard(&bp);
            let mut rng = derive_rng(cli.seed, &["crosscheck", &bp.to_string()]);
            for _ in 0..cli.samples {
                let coeffs = random_admissible_coeffs(&bp, &mut rng, LINE_DRAW_BOUND);
                crosscheck_line(&p, &nb, &coeffs)?;
            }
            writeln!(w, "{bp}: {} lines ok", cli.samples)?;
        }
    }
    writeln!(w, "all predictions match")?;
    Ok(())
}

fn check_rank(args: &RankArgs) {
    if args.n == 0 {
        usage_error("--n must be positive");
    }
    if args.n >= 5 {
        usage_error("--n is capped at 4: the rank 5 table needs hours of sampling");
    }
    if args.n == 4 && !args.allow_slow {
        usage_error("rank 4 takes minutes; pass --allow-slow to confirm");
    }
}

fn cmd_rs_table(cli: &Cli, args: &RankArgs, w: &mut dyn Write) -> Result<()> {
    check_rank(args);
    let rows = full_table(args.n, cli.seed, cli.samples)?;
    for row in &rows {
        match cli.format {
            Format::Json => writeln!(w, "{}", row.to_json())?,
            Format::Tsv => writeln!(w, "{}", row.to_tsv())?,
        }
    }
    verify_bijection(args.n, &rows)?;
    Ok(())
}

fn cmd_naive_compare(cli: &Cli, args: &RankArgs, w: &mut dyn Write) -> Result<()> {
    check_rank(args);
    let rows = compare_naive_geometric(args.n, cli.seed, cli.samples)?;
    let agreeing = rows.iter().filter(|r| r.agree).count();
    for row in &rows {
        match cli.format {
            Format::Json => writeln!(w, "{}", row.to_json())?,
            Format::Tsv => writeln!(w, "{}", row.to_tsv())?,
        }
    }
    writeln!(w, "agreement: {agreeing} / {}", rows.len())?;
    Ok(())
}
