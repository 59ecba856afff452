//! Command-line front end.
//!
//! Exit codes: 0 success or verdict true, 1 verdict false (or a property
//! failure), 2 unreadable input, 3 internal error, 4 inexhaustive search.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::cbp::{CbpAnalyzer, CbpMode, CbpReport, Witness};
use crate::cover::{min_cover_with, CoverOptions, CoverResult};
use crate::error::{Error, Result};
use crate::harness::{
    counterexample_search_with, gen_collinear, gen_grid, gen_random, gen_skew, gen_split,
    run_suite, GeneratorSpec, Instance, Piece, SuiteConfig,
};
use crate::hilbert::hf_full;
use crate::io::{format_rational, read_point_set, PointSetFile};
use crate::projective::PointSet;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;
pub const EXIT_INEXHAUSTIVE: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "cb-lab",
    version,
    about = "Cayley-Bacharach property and plane-configuration lab"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the Hilbert function, its first difference and the regularity index.
    Hf { file: PathBuf },
    /// Decide CBP(r) with all four characterizations.
    Cbp {
        file: PathBuf,
        #[arg(long)]
        r: usize,
        /// Use only the Hilbert-function test.
        #[arg(long)]
        fast: bool,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Find a minimum-dimension plane configuration containing the points.
    Cover {
        file: PathBuf,
        #[arg(long)]
        budget: usize,
        /// Exhaustive search limit (overrides CB_LAB_LIMIT).
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Write a generated point set.
    Generate {
        #[command(subcommand)]
        family: GenerateCommand,
        #[arg(long, default_value_t = 0, global = true)]
        seed: u64,
        /// Output file (standard output when absent).
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Run a property suite.
    Verify {
        suite: PathBuf,
        /// Also write the JSON-lines report here.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Search for counterexamples to the plane-configuration bound for (d, r).
    Search {
        d: usize,
        r: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        limit: Option<usize>,
        /// Output file for the JSON-lines records (standard output when absent).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum GenerateCommand {
    /// The d × e grid (1 : i : j).
    Grid { d: usize, e: usize },
    /// s points on a random line.
    Collinear {
        s: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Random integer points.
    Random {
        n: usize,
        size: usize,
        #[arg(long, default_value_t = 20)]
        height: u32,
    },
    /// Points on split lines, one count per line.
    SplitLines {
        #[arg(required = true)]
        counts: Vec<usize>,
        /// Points off the lines.
        #[arg(long, default_value_t = 0)]
        extra: usize,
    },
    /// Points on pairwise skew lines in P^3.
    SkewLines {
        #[arg(required = true)]
        counts: Vec<usize>,
    },
    /// Any generator, from a JSON spec given inline or as a file path. The
    /// spec carries its own seed.
    Spec { spec: String },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::Json(_)
        | Error::Io(_)
        | Error::InvalidConfiguration(_)
        | Error::Generator(_) => EXIT_PARSE,
        Error::Inexhaustive { .. } => EXIT_INEXHAUSTIVE,
        _ => EXIT_INTERNAL,
    }
}

fn cover_options(limit: Option<usize>) -> Result<CoverOptions> {
    match limit {
        Some(limit) => Ok(CoverOptions { limit }),
        None => CoverOptions::from_env(),
    }
}

fn join<T: ToString>(values: &[T]) -> String {
    values
        .iter()
        .map(T::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn rational_list(values: &[crate::qlinalg::Rational]) -> String {
    let parts: Vec<String> = values.iter().map(format_rational).collect();
    format!("[{}]", parts.join(", "))
}

fn hf_command(x: &PointSet, out: &mut dyn Write) -> Result<i32> {
    if x.is_empty() {
        writeln!(out, "HF: 0; rX=0")?;
        return Ok(EXIT_OK);
    }
    let h = hf_full(x)?;
    writeln!(
        out,
        "HF: {}; rX={}",
        join(h.up_to_regularity()),
        h.reg_index
    )?;
    writeln!(out, "ΔHF: {}", join(&h.delta()[..=h.reg_index]))?;
    Ok(EXIT_OK)
}

fn print_cbp(
    x: &PointSet,
    names: Option<&[String]>,
    rep: &CbpReport,
    out: &mut dyn Write,
) -> Result<()> {
    writeln!(out, "CBP({}): {}", rep.r, rep.verdict)?;
    let m = &rep.per_method;
    let show = |v: Option<bool>| v.map_or("-".to_string(), |b| b.to_string());
    writeln!(
        out,
        "methods: hf={} alpha={} divisibility={} dual={}",
        m.hf,
        show(m.alpha),
        show(m.divisibility),
        show(m.dual)
    )?;
    match &rep.witness {
        Witness::Dual(v) => writeln!(out, "witness: dual vector {}", rational_list(&v.entries))?,
        Witness::FailingPoint { label } => match names.and_then(|n| n.get(*label)) {
            Some(name) => writeln!(
                out,
                "witness: failing point {label} \"{name}\" ({})",
                x.point(*label)
            )?,
            None => writeln!(out, "witness: failing point {label} ({})", x.point(*label))?,
        },
        Witness::Vacuous => writeln!(out, "witness: vacuous")?,
    }
    Ok(())
}

fn cbp_command(file: &Path, r: usize, fast: bool, json: bool, out: &mut dyn Write) -> Result<i32> {
    let text =
        fs::read_to_string(file).map_err(|e| Error::Parse(format!("{}: {e}", file.display())))?;
    let parsed = PointSetFile::parse(&text)?;
    let x = parsed.to_point_set()?;
    let mode = if fast { CbpMode::Fast } else { CbpMode::Full };
    let rep = CbpAnalyzer::new(&x)?.report_with(r, mode)?;
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&rep)?)?;
    } else {
        print_cbp(&x, parsed.labels.as_deref(), &rep, out)?;
    }
    Ok(if rep.verdict { EXIT_OK } else { EXIT_FALSE })
}

fn print_cover(c: &CoverResult, out: &mut dyn Write) -> Result<()> {
    writeln!(
        out,
        "dimension: {} ({})",
        c.total_dim,
        if c.optimal { "optimal" } else { "upper bound" }
    )?;
    writeln!(out, "length: {}", c.config.len())?;
    for (i, (flat, block)) in c.config.flats().iter().zip(&c.blocks).enumerate() {
        let rows: Vec<String> = flat
            .basis()
            .row_vecs()
            .iter()
            .map(|r| rational_list(r))
            .collect();
        writeln!(
            out,
            "flat {i}: P^{} basis [{}] points {}",
            flat.proj_dim(),
            rows.join(", "),
            join(block)
        )?;
    }
    Ok(())
}

fn cover_command(
    x: &PointSet,
    budget: usize,
    limit: Option<usize>,
    json: bool,
    out: &mut dyn Write,
) -> Result<i32> {
    match min_cover_with(x, budget, &cover_options(limit)?) {
        Ok(Some(c)) => {
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&c)?)?;
            } else {
                print_cover(&c, out)?;
            }
            Ok(EXIT_OK)
        }
        Ok(None) => {
            writeln!(
                out,
                "no plane configuration of dimension ≤ {budget} contains the points"
            )?;
            Ok(EXIT_FALSE)
        }
        Err(Error::Inexhaustive {
            size,
            limit,
            greedy,
        }) => {
            writeln!(
                out,
                "inexhaustive: {size} points exceed the limit {limit}; greedy upper bound below"
            )?;
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&greedy)?)?;
            } else {
                print_cover(&greedy, out)?;
            }
            Ok(EXIT_INEXHAUSTIVE)
        }
        Err(e) => Err(e),
    }
}

fn generate(family: &GenerateCommand, seed: u64) -> Result<Instance> {
    match family {
        GenerateCommand::Grid { d, e } => gen_grid(*d, *e),
        GenerateCommand::Collinear { s, n } => gen_collinear(*s, *n, seed),
        GenerateCommand::Random { n, size, height } => gen_random(*n, *size, *height, seed),
        GenerateCommand::SplitLines { counts, extra } => {
            let pieces: Vec<Piece> = counts
                .iter()
                .map(|&count| Piece::Points { dim: 1, count })
                .collect();
            let n = 2 * pieces.len() - 1 + usize::from(*extra > 0);
            gen_split(n, &pieces, *extra, seed)
        }
        GenerateCommand::SkewLines { counts } => gen_skew(3, counts, seed),
        GenerateCommand::Spec { spec } => {
            let text = if spec.trim_start().starts_with('{') {
                spec.clone()
            } else {
                fs::read_to_string(spec).map_err(|e| Error::Parse(format!("{spec}: {e}")))?
            };
            let spec: GeneratorSpec =
                serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            spec.instantiate()
        }
    }
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Hf { file } => hf_command(&read_point_set(&file)?, out),
        Command::Cbp {
            file,
            r,
            fast,
            json,
        } => cbp_command(&file, r, fast, json, out),
        Command::Cover {
            file,
            budget,
            limit,
            json,
        } => cover_command(&read_point_set(&file)?, budget, limit, json, out),
        Command::Generate {
            family,
            seed,
            output,
        } => {
            let inst = generate(&family, seed)?;
            emit(&inst.to_file().to_json(), output.as_deref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            suite,
            report,
            limit,
        } => {
            let text = fs::read_to_string(&suite)
                .map_err(|e| Error::Parse(format!("{}: {e}", suite.display())))?;
            let mut config = SuiteConfig::parse(&text)?;
            if limit.is_some() {
                config.limit = limit;
            }
            let result = run_suite(&config)?;
            if let Some(path) = report {
                fs::write(path, result.to_json_lines())?;
            }
            writeln!(out, "{result}")?;
            Ok(if result.failures() > 0 {
                EXIT_FALSE
            } else if result.inconclusive() > 0 {
                EXIT_INEXHAUSTIVE
            } else {
                EXIT_OK
            })
        }
        Command::Search {
            d,
            r,
            trials,
            seed,
            limit,
            output,
        } => {
            let rep = counterexample_search_with(d, r, trials, seed, &cover_options(limit)?)?;
            emit(&rep.to_json_lines(), output.as_deref(), out)?;
            let hits = rep.counterexamples().count();
            Ok(if hits > 0 {
                EXIT_FALSE
            } else if !rep.records.is_empty() {
                EXIT_INEXHAUSTIVE
            } else {
                EXIT_OK
            })
        }
    }
}

/// Runs the tool on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
