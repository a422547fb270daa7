use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use annulus::category::quantum::parse_spin;
use annulus::io::suites::{self, RunConfig};
use annulus::io::{ingest, parse_subgroup, Input, Report};
use annulus::{Error, Result};

#[derive(Parser)]
#[command(name = "annulus", version, about = "Tube algebras of rigid C*-tensor categories")]
struct Cli {
    /// Threshold for exact identities.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Threshold for eigen-derived quantities.
    #[arg(long, global = true, default_value_t = 1e-7)]
    eigen_tol: f64,
    /// Threshold for the tube-to-double homomorphism residual.
    #[arg(long, global = true, default_value_t = 1e-8)]
    hom_tol: f64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Directory for reports and artifacts; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Build, verify or decompose a tube algebra.
    #[command(subcommand)]
    Tube(TubeCmd),
    /// The Drinfeld double of a finite group.
    #[command(subcommand)]
    Double(DoubleCmd),
    /// Morita checks for the Q-system of a subgroup.
    #[command(subcommand)]
    Morita(MoritaCmd),
    /// Annular Temperley-Lieb corners.
    #[command(subcommand)]
    Tl(TlCmd),
    /// Run the built-in fixtures.
    Selftest,
}

#[derive(Args)]
struct InputArg {
    /// Group, quantum or table JSON file.
    #[arg(long, alias = "group")]
    input: PathBuf,
}

#[derive(Args)]
struct GroupArg {
    /// Group JSON file.
    #[arg(long)]
    group: PathBuf,
}

#[derive(Subcommand)]
enum TubeCmd {
    Build(InputArg),
    Verify(InputArg),
    Blocks(InputArg),
}

#[derive(Subcommand)]
enum DoubleCmd {
    Build(GroupArg),
    Corner(GroupArg),
}

#[derive(Subcommand)]
enum MoritaCmd {
    Verify {
        #[command(flatten)]
        group: GroupArg,
        /// Comma-separated element indices; `e` is the identity.
        #[arg(long, default_value = "e")]
        subgroup: String,
    },
}

#[derive(Subcommand)]
enum TlCmd {
    Corners {
        #[command(flatten)]
        input: InputArg,
        /// Largest internal spin, e.g. `3` or `5/2`.
        #[arg(long, default_value = "3")]
        window: String,
    },
}

fn load(path: &Path, cfg: &RunConfig) -> Result<(Input, String, Vec<u8>)> {
    let (input, bytes) = ingest(path, cfg.seed)?;
    let name = path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
    Ok((input, name, bytes))
}

fn engine_of(input: &Input) -> Result<annulus::category::Engine> {
    match input {
        Input::Group(g) => g.engine(),
        Input::Quantum(q) => q.engine(),
        Input::Table(_) => Err(Error::Validation("a stored table cannot be rebuilt; use `tube verify`".into())),
    }
}

fn group_of(input: Input) -> Result<annulus::category::group::GroupBackend> {
    match input {
        Input::Group(g) => Ok(g),
        other => Err(Error::Validation(format!("expected a group file, got a {} file", other.kind()))),
    }
}

/// The report plus an optional named artifact.
type Outcome = (Report, Option<(String, String)>);

fn run(cli: &Cli, cfg: &RunConfig) -> Result<Outcome> {
    let csv = cli.format == Format::Csv;
    let with_input = |path: &Path, f: &dyn Fn(Input) -> Result<Outcome>| -> Result<Outcome> {
        let (input, name, bytes) = load(path, cfg)?;
        let (mut r, art) = f(input)?;
        r.add_input(name, &bytes);
        Ok((r, art))
    };
    match &cli.command {
        Command::Tube(TubeCmd::Build(a)) => with_input(&a.input, &|inp| {
            let (r, table) = suites::tube_build(&engine_of(&inp)?, cfg)?;
            let ext = if csv { "csv" } else { "json" };
            Ok((r, Some((format!("table.{ext}"), suites::export_table(&table, csv)))))
        }),
        Command::Tube(TubeCmd::Verify(a)) => with_input(&a.input, &|inp| match &inp {
            Input::Table(t) => Ok((suites::table_verify(t, cfg)?, None)),
            _ => Ok((suites::tube_verify(&engine_of(&inp)?, cfg)?, None)),
        }),
        Command::Tube(TubeCmd::Blocks(a)) => with_input(&a.input, &|inp| match &inp {
            Input::Table(t) => Ok((suites::blocks_of(&t.algebra, cfg, "tube blocks")?, None)),
            _ => Ok((suites::tube_blocks(&engine_of(&inp)?, cfg)?, None)),
        }),
        Command::Double(DoubleCmd::Build(a)) => {
            with_input(&a.group, &|inp| Ok((suites::double_build(&group_of(inp)?, cfg)?, None)))
        }
        Command::Double(DoubleCmd::Corner(a)) => {
            with_input(&a.group, &|inp| Ok((suites::double_corner(&group_of(inp)?, cfg)?, None)))
        }
        Command::Morita(MoritaCmd::Verify { group, subgroup }) => with_input(&group.group, &|inp| {
            let g = group_of(inp)?;
            let h = parse_subgroup(subgroup, &g)?;
            Ok((suites::morita_verify(g, &h, cfg)?, None))
        }),
        Command::Tl(TlCmd::Corners { input, window }) => {
            let w2 = parse_spin(window)?;
            with_input(&input.input, &|inp| match inp {
                Input::Quantum(q) => Ok((suites::tl_corners(&q, w2, cfg)?, None)),
                other => Err(Error::Validation(format!("expected a quantum file, got a {} file", other.kind()))),
            })
        }
        Command::Selftest => Ok((suites::selftest(cfg)?, None)),
    }
}

fn emit(cli: &Cli, report: &Report, artifact: Option<(String, String)>) -> Result<()> {
    let (body, ext) = match cli.format {
        Format::Json => (report.to_json(), "json"),
        Format::Csv => (report.to_csv(), "csv"),
    };
    match &cli.out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            std::fs::write(dir.join(format!("report.{ext}")), body)?;
            if let Some((name, text)) = artifact {
                std::fs::write(dir.join(name), text)?;
            }
        }
        None => match artifact {
            Some((_, text)) => print!("{text}"),
            None => print!("{body}"),
        },
    }
    Ok(())
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("ANNULUS_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| Error::Validation(format!("ANNULUS_THREADS must be a positive integer, got {v:?}")))?;
        if n == 0 {
            return Err(Error::Validation("ANNULUS_THREADS must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Validation(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = RunConfig { tol: cli.tol, eigen_tol: cli.eigen_tol, hom_tol: cli.hom_tol, seed: cli.seed };
    let result = configure_threads()
        .and_then(|_| cfg.validate())
        .and_then(|_| run(&cli, &cfg))
        .and_then(|(report, art)| {
            let pass = report.pass();
            emit(&cli, &report, art)?;
            if !pass {
                for c in report.checks.iter().filter(|c| !c.pass) {
                    eprintln!("FAIL {}: {:e} (threshold {:e})", c.name, c.residual, c.threshold);
                }
            }
            Ok(pass)
        });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
