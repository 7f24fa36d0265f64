//! `hodgebn`: Brill-Noether counts, divisor classes in projectivized Hodge
//! bundles, Teichmuller curve intersections and cached class tables.
//!
//! Exit codes: 0 success, 1 verification failure, 2 bad input,
//! 3 unsupported / singular / zero denominator, 4 I/O, 5 table schema.

mod output;

use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hodgebn_core::batch::{generate_table, verify_grid, Grid, TableCache};
use hodgebn_core::brill_noether::{cone_weights, count_special, enumerate_divisorial, rho};
use hodgebn_core::divisor_classes::{
    bn_k_class_direct, bn_k_class_pushforward, pointed_bn_class, stratum_h22, weierstrass_k_class,
};
use hodgebn_core::picard::{incidence_class, DownClass, UpClass};
use hodgebn_core::rational::{self, Q};
use hodgebn_core::teichmuller::{
    infimum_threshold, intersections, AmpleVector, TeichCurve, ThresholdSummary,
};
use hodgebn_core::test_families::{solve_coefficients, Status};
use hodgebn_core::{BNData, VanishingSequence};
use serde_json::json;

use output::Format;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] hodgebn_core::Error),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use hodgebn_core::Error as E;
        match self {
            CliError::Core(e) => match e {
                E::Unsupported(_) | E::SingularSystem | E::ZeroDenominator => 3,
                E::Schema(_) => 5,
                E::Invariant(_) => 1,
                _ => 2,
            },
            CliError::Io { .. } => 4,
            CliError::Usage(_) => 2,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn parse_q(s: &str) -> Result<Q, String> {
    rational::parse(s).map_err(|e| e.to_string())
}

/// `A..B`, `A..=B` or a single `A`; both ends inclusive.
fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|_| format!("bad range bound {t:?}"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (num(lo)?, num(hi.strip_prefix('=').unwrap_or(hi))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok(lo..=hi)
}

#[derive(Parser)]
#[command(
    name = "hodgebn",
    version,
    about = "Exact divisor classes of pointed Brill-Noether loci in projectivized Hodge bundles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Brill-Noether numbers, counts and cone weights.
    #[command(subcommand)]
    Bn(BnCommand),
    /// Divisor classes on PE^k_g and PE^k_{g,1}.
    #[command(subcommand)]
    Class(ClassCommand),
    /// Check the three class computations agree over a grid of data.
    Verify(VerifyArgs),
    /// Teichmuller curve intersections and ample thresholds.
    #[command(subcommand)]
    Teich(TeichCommand),
    /// Generate or query the on-disk table of classes.
    #[command(subcommand)]
    Table(TableCommand),
}

#[derive(Args)]
struct SequenceArgs {
    #[arg(long, allow_hyphen_values = true)]
    g: i64,
    #[arg(long, allow_hyphen_values = true)]
    d: i64,
    /// Vanishing sequence, comma-separated (e.g. 0,1,3).
    #[arg(long)]
    a: VanishingSequence,
    /// Checked against the length of `--a` when given.
    #[arg(long, allow_hyphen_values = true)]
    r: Option<i64>,
}

impl SequenceArgs {
    fn r(&self) -> CliResult<i64> {
        match self.r {
            Some(r) if r != self.a.r() => Err(hodgebn_core::Error::LengthMismatch {
                len: self.a.len(),
                r,
            }
            .into()),
            _ => Ok(self.a.r()),
        }
    }

    fn datum(&self) -> CliResult<BNData> {
        self.r()?;
        Ok(BNData::new(self.g, self.d, self.a.clone())?)
    }
}

#[derive(Args)]
struct FormatArg {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum BnCommand {
    /// Adjusted Brill-Noether number.
    Rho {
        #[command(flatten)]
        seq: SequenceArgs,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Number of pointed linear series with the given vanishing.
    Count {
        #[command(flatten)]
        seq: SequenceArgs,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Cone weights (mu, nu) of a rho = -1 datum.
    Munu {
        #[command(flatten)]
        seq: SequenceArgs,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// All rho = -1 data in genus g up to the given bounds.
    Enumerate {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        r_max: i64,
        #[arg(long)]
        d_max: i64,
        #[command(flatten)]
        fmt: FormatArg,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Route {
    Direct,
    Pushforward,
    Families,
}

#[derive(Subcommand)]
enum ClassCommand {
    /// Closure of k-differentials vanishing at a Weierstrass point.
    Weierstrass {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        k: i64,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Class of the Brill-Noether divisor of a rho = -1 datum.
    BnDivisor {
        #[command(flatten)]
        seq: SequenceArgs,
        #[arg(long)]
        k: i64,
        #[arg(long, value_enum, default_value_t = Route::Direct)]
        route: Route,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Incidence divisor k psi - eta on PE^k_{g,1}.
    Incidence {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        k: i64,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Pointed Brill-Noether class mu BN_g + nu W_g.
    Pointed {
        #[command(flatten)]
        seq: SequenceArgs,
        #[arg(long, default_value_t = 1)]
        k: i64,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Genus-2 stratum of squares of abelian differentials.
    H22 {
        #[command(flatten)]
        fmt: FormatArg,
    },
}

#[derive(Args)]
struct GridArgs {
    /// Genus range, e.g. 3..6 (inclusive).
    #[arg(long, value_parser = parse_range)]
    g_range: RangeInclusive<i64>,
    /// k range, e.g. 1..3 (inclusive).
    #[arg(long, value_parser = parse_range)]
    k_range: RangeInclusive<i64>,
    #[arg(long)]
    d_max: i64,
    #[arg(long)]
    r_max: i64,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

impl GridArgs {
    fn grid(&self) -> CliResult<Grid> {
        if *self.k_range.start() < 1 {
            return Err(CliError::Usage("k must be positive".into()));
        }
        Ok(Grid {
            genus: self.g_range.clone(),
            k: self.k_range.clone(),
            d_max: self.d_max,
            r_max: self.r_max,
        })
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    grid: GridArgs,
    /// Report file; the report goes to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum TeichCommand {
    /// Intersection numbers of one curve with the generators.
    Table {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        g: i64,
        #[arg(long, value_parser = parse_q, allow_hyphen_values = true)]
        chi: Q,
        #[arg(long = "L", value_parser = parse_q, allow_hyphen_values = true)]
        lyapunov: Option<Q>,
        #[arg(long, value_parser = parse_q, allow_hyphen_values = true)]
        c_sv: Option<Q>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Infimum over curves of the d with C . (H + d A) = 0.
    Threshold {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        g: i64,
        /// Ample coefficients: eta, lambda, psi, delta_0, ..., delta_{g-1}.
        #[arg(long, value_parser = parse_q, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        ample: Vec<Q>,
        /// JSON array of curves.
        #[arg(long, conflicts_with_all = ["lyapunov", "c_sv"])]
        curves: Option<PathBuf>,
        /// Single curve given inline.
        #[arg(long = "L", value_parser = parse_q, allow_hyphen_values = true)]
        lyapunov: Option<Q>,
        #[arg(long, value_parser = parse_q, allow_hyphen_values = true)]
        c_sv: Option<Q>,
        #[arg(long, value_parser = parse_q, allow_hyphen_values = true, default_value = "-1")]
        chi: Q,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum TableCommand {
    /// Compute every cell of the grid and write the table.
    Generate {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Read one cell back.
    Query {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        k: i64,
        #[command(flatten)]
        seq: SequenceArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// A finished command: stdout payload and exit code.
struct Outcome {
    stdout: String,
    code: u8,
}

impl From<String> for Outcome {
    fn from(stdout: String) -> Self {
        Self { stdout, code: 0 }
    }
}

fn render_object(value: serde_json::Value, format: Format) -> String {
    match format {
        Format::Json => output::json(&value),
        Format::Csv => output::object_csv(&value),
        Format::Text => output::object_text(&value),
    }
}

fn render_down(c: &DownClass, format: Format) -> String {
    match format {
        Format::Json => output::json(c),
        Format::Csv => output::down_class_csv(c),
        Format::Text => c.to_string(),
    }
}

fn render_up(c: &UpClass, format: Format) -> String {
    match format {
        Format::Json => output::json(c),
        Format::Csv => output::up_class_csv(c),
        Format::Text => c.to_string(),
    }
}

fn run_bn(cmd: BnCommand) -> CliResult<Outcome> {
    Ok(match cmd {
        BnCommand::Rho { seq, fmt } => {
            let value = rho(seq.g, seq.r()?, seq.d, &seq.a)?;
            match fmt.format {
                Format::Text => value.to_string(),
                f => render_object(json!({ "rho": value }), f),
            }
        }
        BnCommand::Count { seq, fmt } => {
            seq.r()?;
            let n = count_special(seq.g, seq.d, &seq.a)?;
            match fmt.format {
                Format::Text => n.to_string(),
                f => render_object(json!({ "n": n.to_string() }), f),
            }
        }
        BnCommand::Munu { seq, fmt } => {
            let (mu, nu) = cone_weights(&seq.datum()?)?;
            let (mu, nu) = (rational::format(&mu), rational::format(&nu));
            match fmt.format {
                Format::Text => format!("mu = {mu}\nnu = {nu}"),
                f => render_object(json!({ "mu": mu, "nu": nu }), f),
            }
        }
        BnCommand::Enumerate {
            g,
            r_max,
            d_max,
            fmt,
        } => {
            if g < 2 || r_max < 0 || d_max < 1 {
                return Err(CliError::Usage(
                    "need g >= 2, r-max >= 0, d-max >= 1".into(),
                ));
            }
            let data = enumerate_divisorial(g, r_max, d_max);
            match fmt.format {
                Format::Text => data
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join("\n"),
                Format::Json => output::json(
                    &data
                        .iter()
                        .map(|x| json!({ "g": x.g, "r": x.r(), "d": x.d, "a": x.a.entries() }))
                        .collect::<Vec<_>>(),
                ),
                Format::Csv => {
                    let rows: Vec<Vec<String>> = data
                        .iter()
                        .map(|x| {
                            let a = x.a.entries().iter().map(i64::to_string).collect::<Vec<_>>();
                            vec![
                                x.g.to_string(),
                                x.r().to_string(),
                                x.d.to_string(),
                                a.join(","),
                            ]
                        })
                        .collect();
                    output::csv(&["g", "r", "d", "a"], &rows)
                }
            }
        }
    }
    .into())
}

fn check_k(k: i64) -> CliResult<()> {
    if k < 1 {
        return Err(CliError::Usage(format!("k must be positive, got {k}")));
    }
    Ok(())
}

fn run_class(cmd: ClassCommand) -> CliResult<Outcome> {
    Ok(match cmd {
        ClassCommand::Weierstrass { g, k, fmt } => {
            render_down(&weierstrass_k_class(g, k)?, fmt.format)
        }
        ClassCommand::BnDivisor { seq, k, route, fmt } => {
            let datum = seq.datum()?;
            let class = match route {
                Route::Direct => bn_k_class_direct(&datum, k)?,
                Route::Pushforward => bn_k_class_pushforward(&datum, k)?,
                Route::Families => {
                    check_k(k)?;
                    let (mu, nu) = cone_weights(&datum)?;
                    let n = Q::from_integer(count_special(datum.g, datum.d, &datum.a)?);
                    solve_coefficients(datum.g, k, &mu, &nu, &n)?
                }
            };
            render_down(&class, fmt.format)
        }
        ClassCommand::Incidence { g, k, fmt } => {
            check_k(k)?;
            if g < 2 {
                return Err(hodgebn_core::Error::GenusTooSmall { g, min: 2 }.into());
            }
            render_up(&incidence_class(g, k), fmt.format)
        }
        ClassCommand::Pointed { seq, k, fmt } => {
            check_k(k)?;
            render_up(&pointed_bn_class(&seq.datum()?, k)?, fmt.format)
        }
        ClassCommand::H22 { fmt } => render_down(&stratum_h22()?, fmt.format),
    }
    .into())
}

fn run_verify(args: VerifyArgs) -> CliResult<Outcome> {
    let reports = verify_grid(&args.grid.grid()?, args.grid.jobs)?;
    let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
    let (pass, fail, unsupported) = (
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Unsupported),
    );
    let summary = format!(
        "{} reports: {pass} pass, {fail} fail, {unsupported} unsupported",
        reports.len()
    );
    let payload = output::json_pretty(&reports);
    let stdout = match &args.out {
        Some(path) => {
            write(path, &payload)?;
            summary
        }
        None => {
            eprintln!("{summary}");
            payload.trim_end().to_string()
        }
    };
    Ok(Outcome {
        stdout,
        code: if fail > 0 { 1 } else { 0 },
    })
}

fn load_curves(path: &Path) -> CliResult<Vec<TeichCurve>> {
    let text = read(path)?;
    let curves: Vec<TeichCurve> = serde_json::from_str(&text).map_err(|e| {
        CliError::Usage(format!(
            "{}: not a JSON array of curves: {e}",
            path.display()
        ))
    })?;
    Ok(curves
        .into_iter()
        .map(TeichCurve::validated)
        .collect::<Result<_, _>>()?)
}

fn render_threshold(summary: &ThresholdSummary, format: Format) -> String {
    match format {
        Format::Json => output::json(summary),
        Format::Text => rational::format(&summary.infimum),
        Format::Csv => {
            let value = serde_json::to_value(summary).expect("summary serializes");
            output::object_csv(&value)
        }
    }
}

fn run_teich(cmd: TeichCommand) -> CliResult<Outcome> {
    Ok(match cmd {
        TeichCommand::Table {
            k,
            g,
            chi,
            lyapunov,
            c_sv,
            format,
        } => {
            let table = intersections(&TeichCurve::new(k, g, chi, lyapunov, c_sv)?)?;
            let value = serde_json::to_value(&table).expect("table serializes");
            render_object(value, format)
        }
        TeichCommand::Threshold {
            k,
            g,
            ample,
            curves,
            lyapunov,
            c_sv,
            chi,
            format,
        } => {
            let curves = match curves {
                Some(path) => load_curves(&path)?,
                None if lyapunov.is_none() && c_sv.is_none() => {
                    return Err(CliError::Usage("give --curves FILE, --L or --c-sv".into()))
                }
                None => vec![TeichCurve::new(k, g, chi, lyapunov, c_sv)?],
            };
            if let Some(c) = curves.iter().find(|c| c.k != k || c.g != g) {
                return Err(CliError::Usage(format!(
                    "curve with (k, g) = ({}, {}) does not match --k {k} --g {g}",
                    c.k, c.g
                )));
            }
            let summary = infimum_threshold(&curves, &AmpleVector::from_list(g, &ample)?)?;
            if !summary.positive {
                eprintln!("warning: threshold is not positive");
            }
            render_threshold(&summary, format)
        }
    }
    .into())
}

fn run_table(cmd: TableCommand) -> CliResult<Outcome> {
    Ok(match cmd {
        TableCommand::Generate { grid, out } => {
            let table = generate_table(&grid.grid()?, grid.jobs)?;
            write(&out, &table.to_json()?)?;
            format!(
                "wrote {} cells to {} (sha256 {})",
                table.cells.len(),
                out.display(),
                table.digest
            )
        }
        TableCommand::Query {
            input,
            k,
            seq,
            format,
        } => {
            seq.r()?;
            let table = TableCache::from_json(&read(&input)?)?;
            let cell = table.query(seq.g, k, seq.d, &seq.a).ok_or_else(|| {
                CliError::Usage(format!(
                    "g={} k={k} d={} a={} not in table",
                    seq.g, seq.d, seq.a
                ))
            })?;
            match format {
                Format::Json => output::json(cell),
                Format::Text => format!(
                    "n = {}\nmu = {}\nnu = {}\nclass = {}",
                    rational::format(&cell.n),
                    rational::format(&cell.mu),
                    rational::format(&cell.nu),
                    cell.class
                ),
                Format::Csv => {
                    let mut header = vec!["g", "k", "d", "a", "n", "mu", "nu", "eta", "lambda"]
                        .into_iter()
                        .map(String::from)
                        .collect::<Vec<_>>();
                    header.extend((0..cell.class.delta.len()).map(|i| format!("delta{i}")));
                    let a = cell
                        .a
                        .iter()
                        .map(i64::to_string)
                        .collect::<Vec<_>>()
                        .join(",");
                    let mut row = vec![
                        cell.g.to_string(),
                        cell.k.to_string(),
                        cell.d.to_string(),
                        a,
                    ];
                    row.extend(
                        [&cell.n, &cell.mu, &cell.nu]
                            .into_iter()
                            .map(rational::format),
                    );
                    row.extend(cell.class.coefficients().iter().map(rational::format));
                    output::csv(&header, &[row])
                }
            }
        }
    }
    .into())
}

fn run(cli: Cli) -> CliResult<Outcome> {
    match cli.command {
        Command::Bn(cmd) => run_bn(cmd),
        Command::Class(cmd) => run_class(cmd),
        Command::Verify(args) => run_verify(args),
        Command::Teich(cmd) => run_teich(cmd),
        Command::Table(cmd) => run_table(cmd),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if writeln!(stdout, "{}", outcome.stdout).is_err() {
                return ExitCode::from(4);
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
