use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use qverify::catalog::{series_by_name, series_names};
use qverify::identities::{self, registry, VerifyOptions};
use qverify::lpi::LpiSpec;
use qverify::partitions::{enum_set, Overpartition, SetId};
use qverify::{Error, Series};

/// Exact checks of q-series identities and overpartition theorems.
#[derive(Parser)]
#[command(name = "qverify", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify one identity, or `all`.
    Verify {
        id: String,
        #[arg(long)]
        order: Option<u32>,
        /// One JSON object per report.
        #[arg(long)]
        json: bool,
        /// Shift one exponent on one side by one; the check should then fail.
        #[arg(long)]
        perturb: bool,
        /// Raise or lower the per-identity order limit.
        #[arg(long)]
        max_order: Option<u32>,
    },
    /// List the members of an overpartition set of a given size.
    Enum {
        #[arg(long, required_unless_present = "lpi_spec")]
        set: Option<String>,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        stats: bool,
        #[arg(long)]
        json: bool,
        /// Enumerate the members of a linked partition ideal read from JSON.
        #[arg(long)]
        lpi_spec: Option<PathBuf>,
    },
    /// Print the coefficient table of a named series.
    Coeffs {
        #[arg(long)]
        series: String,
        #[arg(long)]
        order: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Use this ideal for the `f<k>`/`g<k>` series.
        #[arg(long)]
        lpi_spec: Option<PathBuf>,
    },
    /// List identity ids and series names.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = match cli.command {
        Command::Verify {
            id,
            order,
            json,
            perturb,
            max_order,
        } => cmd_verify(
            &mut out,
            &id,
            VerifyOptions {
                order,
                perturb,
                max_order,
            },
            json,
        ),
        Command::Enum {
            set,
            n,
            stats,
            json,
            lpi_spec,
        } => cmd_enum(&mut out, set.as_deref(), n, stats, json, lpi_spec),
        Command::Coeffs {
            series,
            order,
            format,
            lpi_spec,
        } => cmd_coeffs(&mut out, &series, order, format, lpi_spec),
        Command::List => cmd_list(&mut out).map(|_| true),
    };
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(true), Ok(())) => ExitCode::SUCCESS,
        (Ok(false), Ok(())) => ExitCode::from(1),
        (Err(Failure::Usage(msg)), _) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        (Err(Failure::Io(e)), _) | (_, Err(e)) => {
            if e.kind() == io::ErrorKind::BrokenPipe {
                return ExitCode::SUCCESS;
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("QVERIFY_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        // Fails only if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn cmd_verify(out: &mut impl Write, id: &str, opts: VerifyOptions, json: bool) -> Result<bool, Failure> {
    let reports = if id == "all" {
        identities::verify_all(None, &opts)?
    } else {
        vec![identities::verify(id, &opts)?]
    };
    for r in &reports {
        if json {
            writeln!(out, "{}", r.to_json())?;
        } else {
            writeln!(out, "{r}")?;
        }
    }
    Ok(reports.iter().all(|r| r.passed))
}

fn load_lpi(path: &PathBuf) -> Result<LpiSpec, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    LpiSpec::from_json(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn cmd_enum(
    out: &mut impl Write,
    set: Option<&str>,
    n: u32,
    stats: bool,
    json: bool,
    lpi_spec: Option<PathBuf>,
) -> Result<bool, Failure> {
    let members: Vec<Overpartition> = match (&lpi_spec, set) {
        (Some(path), _) => load_lpi(path)?.members(n),
        (None, Some(name)) => {
            let id: SetId = name.parse().map_err(|e: qverify::partitions::PartitionError| {
                Failure::Usage(format!(
                    "{e}; expected one of A, A-no-1bar, A-no-1-1bar, A-no-1-1bar-2-3bar, Avee"
                ))
            })?;
            enum_set(id, n)
        }
        (None, None) => return Err(Failure::Usage("either --set or --lpi-spec is required".into())),
    };
    if stats && !json {
        writeln!(out, "parts\tsize\tlength\tr2mod4\tr0mod4\tover")?;
    }
    for lambda in &members {
        let s = lambda.stats();
        match (json, stats) {
            (true, false) => writeln!(out, "{}", serde_json::to_string(lambda.parts()).expect("serializable"))?,
            (true, true) => writeln!(
                out,
                "{}",
                json!({
                    "parts": lambda.parts(),
                    "size": s.size,
                    "length": s.length,
                    "r1mod2": s.r1mod2,
                    "r2mod4": s.r2mod4,
                    "r0mod4": s.r0mod4,
                    "over": s.over,
                })
            )?,
            (false, false) => writeln!(out, "{lambda}")?,
            (false, true) => writeln!(
                out,
                "{lambda}\t{}\t{}\t{}\t{}\t{}",
                s.size, s.length, s.r2mod4, s.r0mod4, s.over
            )?,
        }
    }
    Ok(true)
}

fn cmd_coeffs(
    out: &mut impl Write,
    name: &str,
    order: u32,
    format: Format,
    lpi_spec: Option<PathBuf>,
) -> Result<bool, Failure> {
    let lpi = lpi_spec.as_ref().map(load_lpi).transpose()?;
    let s = series_by_name(name, order, lpi.as_ref())?;
    match format {
        Format::Csv => write_csv(out, &s)?,
        Format::Json => writeln!(out, "{}", series_json(&s))?,
    }
    Ok(true)
}

fn sorted_rows(s: &Series) -> Vec<(Vec<u32>, String)> {
    let mut rows: Vec<(Vec<u32>, String)> = s.iter().map(|(m, c)| (m.exponents().to_vec(), c.to_string())).collect();
    rows.sort();
    rows
}

fn write_csv(out: &mut impl Write, s: &Series) -> io::Result<()> {
    writeln!(out, "{},coeff", s.vars().names().join(","))?;
    for (exps, c) in sorted_rows(s) {
        let cols: Vec<String> = exps.iter().map(u32::to_string).collect();
        writeln!(out, "{},{c}", cols.join(","))?;
    }
    Ok(())
}

fn series_json(s: &Series) -> serde_json::Value {
    let terms: Vec<serde_json::Value> = sorted_rows(s)
        .into_iter()
        .map(|(e, c)| json!({"exponents": e, "coeff": c}))
        .collect();
    json!({
        "vars": s.vars().names(),
        "order": s.order(),
        "terms": terms,
    })
}

fn cmd_list(out: &mut impl Write) -> Result<(), Failure> {
    writeln!(out, "identities:")?;
    for e in registry() {
        writeln!(out, "  {:<20} order {:>2}  {}", e.id, e.default_order, e.summary)?;
    }
    writeln!(out, "series:")?;
    for name in series_names(LpiSpec::paper_spec().len()) {
        writeln!(out, "  {name}")?;
    }
    Ok(())
}
