//! Command-line front end: argument definitions, commands and reports.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::container::StreamMode;
use crate::converter::Tolerance;
use crate::error::Error;
use crate::input::{read_values, write_values, Column, Format};
use crate::metrics::StreamStats;
use crate::stream::{compress_stream_with_stats, decompress_stream, CodecConfig, Mode};
use crate::{exception, gorilla};

pub const EXIT_IO: u8 = 1;
pub const EXIT_FORMAT: u8 = 2;
pub const EXIT_DECODE: u8 = 3;
pub const EXIT_ROUND_TRIP: u8 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "dexor",
    version,
    about = "Lossless compression for streams of doubles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compress a series into a container file and print a report.
    Compress {
        input: PathBuf,
        output: PathBuf,
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        codec: CodecArgs,
        #[arg(long, value_enum, default_value_t = ModeArg::Full)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = ReportArg::Table)]
        report: ReportArg,
    },
    /// Restore a container file.
    Decompress {
        input: PathBuf,
        output: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Raw64le)]
        format: FormatArg,
    },
    /// Compare schemes on one input and verify every round trip.
    Bench {
        input: PathBuf,
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        codec: CodecArgs,
        #[arg(long, value_enum, value_delimiter = ',',
              default_values_t = [Scheme::Dexor, Scheme::DexorExceptionOnly, Scheme::Gorilla])]
        schemes: Vec<Scheme>,
        #[arg(long, value_enum, default_value_t = ReportArg::Table)]
        report: ReportArg,
    },
}

#[derive(Debug, Clone, clap::Args)]
pub struct SourceArgs {
    #[arg(long, value_enum, default_value_t = FormatArg::Raw64le)]
    pub format: FormatArg,
    /// CSV column, by header name or zero-based index.
    #[arg(long, default_value = "0")]
    pub column: String,
    /// Read at most this many values.
    #[arg(long)]
    pub limit: Option<usize>,
}

#[derive(Debug, Clone, clap::Args)]
pub struct CodecArgs {
    #[arg(long, default_value_t = Tolerance::DEFAULT.get())]
    pub tolerance: f64,
    #[arg(long, default_value_t = exception::DEFAULT_RHO)]
    pub rho: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Full,
    ExceptionOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Raw64le,
    Text,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Raw64le => Format::Raw64Le,
            FormatArg::Text => Format::Text,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportArg {
    Table,
    Flat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scheme {
    Dexor,
    DexorExceptionOnly,
    Gorilla,
}

impl Scheme {
    fn name(self) -> &'static str {
        match self {
            Scheme::Dexor => StreamMode::Full.name(),
            Scheme::DexorExceptionOnly => StreamMode::ExceptionOnly.name(),
            Scheme::Gorilla => StreamMode::Gorilla.name(),
        }
    }
}

/// A failed command: message for stderr plus the process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn io(what: &str, path: &std::path::Path, e: std::io::Error) -> Self {
        Self {
            code: EXIT_IO,
            message: format!("cannot {what} {}: {e}", path.display()),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = if e.is_decode_error() {
            EXIT_DECODE
        } else {
            EXIT_FORMAT
        };
        let message = match e.bit_offset() {
            Some(bit) => format!("{e} (byte offset {})", bit / 8),
            None => e.to_string(),
        };
        Self { code, message }
    }
}

fn codec_config(mode: Mode, args: &CodecArgs) -> Result<CodecConfig, CliError> {
    let tolerance = Tolerance::new(args.tolerance).ok_or_else(|| CliError {
        code: EXIT_FORMAT,
        message: format!("tolerance {} must lie in (0, 0.5)", args.tolerance),
    })?;
    Ok(CodecConfig::default()
        .with_mode(mode)
        .with_tolerance(tolerance)
        .with_rho(args.rho))
}

fn load(path: &std::path::Path, source: &SourceArgs) -> Result<Vec<u64>, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::io("read", path, e))?;
    let mut values = read_values(&bytes, source.format.into(), &Column::from(&*source.column))?;
    if let Some(limit) = source.limit {
        values.truncate(limit);
    }
    Ok(values)
}

fn mb_per_s(values: usize, secs: f64) -> f64 {
    (values * 8) as f64 / 1e6 / secs.max(1e-9)
}

/// Summary of one compression run.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub scheme: &'static str,
    pub stats: StreamStats,
    pub compress_mb_s: f64,
    pub decompress_mb_s: Option<f64>,
    pub verified: Option<bool>,
}

impl Report {
    fn acb_text(&self) -> String {
        self.stats
            .acb()
            .map_or_else(|_| "undefined".into(), |a| format!("{a:.4}"))
    }

    fn ratio_text(&self) -> String {
        self.stats
            .compression_ratio()
            .map_or_else(|_| "undefined".into(), |r| format!("{r:.4}"))
    }
}

/// One `key=value` line per report. Timing fields are the only
/// nondeterministic values.
pub fn render_flat(reports: &[Report]) -> String {
    let mut out = String::new();
    for r in reports {
        let h = &r.stats.case_histogram;
        let _ = write!(
            out,
            "scheme={} values={} payload_bits={} acb={} ratio={} case10={} case01={} case00={} case11={} compress_mb_s={:.2}",
            r.scheme,
            r.stats.value_count,
            r.stats.total_payload_bits,
            r.acb_text(),
            r.ratio_text(),
            h[0], h[1], h[2], h[3],
            r.compress_mb_s,
        );
        if let Some(d) = r.decompress_mb_s {
            let _ = write!(out, " decompress_mb_s={d:.2}");
        }
        if let Some(v) = r.verified {
            let _ = write!(out, " round_trip={}", if v { "pass" } else { "fail" });
        }
        out.push('\n');
    }
    out
}

pub fn render_table(reports: &[Report]) -> String {
    let mut rows = vec![[
        "scheme",
        "values",
        "bits",
        "acb",
        "ratio",
        "10",
        "01",
        "00",
        "11",
        "comp MB/s",
        "dec MB/s",
        "round trip",
    ]
    .map(String::from)];
    for r in reports {
        let h = &r.stats.case_histogram;
        rows.push([
            r.scheme.to_string(),
            r.stats.value_count.to_string(),
            r.stats.total_payload_bits.to_string(),
            r.acb_text(),
            r.ratio_text(),
            h[0].to_string(),
            h[1].to_string(),
            h[2].to_string(),
            h[3].to_string(),
            format!("{:.2}", r.compress_mb_s),
            r.decompress_mb_s.map_or("-".into(), |d| format!("{d:.2}")),
            r.verified
                .map_or("-", |v| if v { "pass" } else { "fail" })
                .to_string(),
        ]);
    }
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap())
        .collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(i, (cell, w))| {
                if i == 0 {
                    format!("{cell:<w$}")
                } else {
                    format!("{cell:>w$}")
                }
            })
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn render(reports: &[Report], style: ReportArg) -> String {
    match style {
        ReportArg::Table => render_table(reports),
        ReportArg::Flat => render_flat(reports),
    }
}

fn compress_scheme(values: &[u64], scheme: Scheme, codec: CodecConfig) -> (Vec<u8>, StreamStats) {
    match scheme {
        Scheme::Dexor => compress_stream_with_stats(values, codec.with_mode(Mode::Full)),
        Scheme::DexorExceptionOnly => {
            compress_stream_with_stats(values, codec.with_mode(Mode::ExceptionOnly))
        }
        Scheme::Gorilla => gorilla::compress_stream_with_stats(values),
    }
}

fn verify(scheme: Scheme, values: &[u64], back: &[u64]) -> Result<(), CliError> {
    if back == values {
        return Ok(());
    }
    let message = match values.iter().zip(back).position(|(a, b)| a != b) {
        Some(i) => format!(
            "{}: round trip differs at index {i}: expected {:#018x}, got {:#018x}",
            scheme.name(),
            values[i],
            back[i]
        ),
        None => format!(
            "{}: round trip returned {} values, expected {}",
            scheme.name(),
            back.len(),
            values.len()
        ),
    };
    Err(CliError {
        code: EXIT_ROUND_TRIP,
        message,
    })
}

/// Run a parsed command. The report goes to `out`, warnings to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let io_out = |e: std::io::Error| CliError {
        code: EXIT_IO,
        message: format!("cannot write report: {e}"),
    };
    match cli.command {
        Command::Compress {
            input,
            output,
            source,
            codec,
            mode,
            report,
        } => {
            let mode = match mode {
                ModeArg::Full => Mode::Full,
                ModeArg::ExceptionOnly => Mode::ExceptionOnly,
            };
            let config = codec_config(mode, &codec)?;
            let values = load(&input, &source)?;
            let start = Instant::now();
            let (bytes, stats) = compress_stream_with_stats(&values, config);
            let secs = start.elapsed().as_secs_f64();
            std::fs::write(&output, &bytes).map_err(|e| CliError::io("write", &output, e))?;
            if values.is_empty() {
                writeln!(
                    err,
                    "warning: input holds no values; average bits are undefined"
                )
                .map_err(io_out)?;
            }
            let scheme = match mode {
                Mode::Full => Scheme::Dexor,
                Mode::ExceptionOnly => Scheme::DexorExceptionOnly,
            };
            let r = Report {
                scheme: scheme.name(),
                stats,
                compress_mb_s: mb_per_s(values.len(), secs),
                decompress_mb_s: None,
                verified: None,
            };
            out.write_all(render(&[r], report).as_bytes())
                .map_err(io_out)?;
        }
        Command::Decompress {
            input,
            output,
            format,
        } => {
            let bytes = std::fs::read(&input).map_err(|e| CliError::io("read", &input, e))?;
            let values = decompress_stream(&bytes)?;
            let file =
                std::fs::File::create(&output).map_err(|e| CliError::io("create", &output, e))?;
            write_values(&values, format.into(), std::io::BufWriter::new(file))
                .map_err(|e| CliError::io("write", &output, e))?;
        }
        Command::Bench {
            input,
            source,
            codec,
            schemes,
            report,
        } => {
            let config = codec_config(Mode::Full, &codec)?;
            let values = load(&input, &source)?;
            if values.is_empty() {
                writeln!(
                    err,
                    "warning: input holds no values; average bits are undefined"
                )
                .map_err(io_out)?;
            }
            let mut reports = vec![];
            // Sequential on purpose: concurrent runs would skew the timings.
            for scheme in schemes {
                let start = Instant::now();
                let (bytes, stats) = compress_scheme(&values, scheme, config);
                let c_secs = start.elapsed().as_secs_f64();
                let start = Instant::now();
                let back = decompress_stream(&bytes)?;
                let d_secs = start.elapsed().as_secs_f64();
                verify(scheme, &values, &back)?;
                reports.push(Report {
                    scheme: scheme.name(),
                    stats,
                    compress_mb_s: mb_per_s(values.len(), c_secs),
                    decompress_mb_s: Some(mb_per_s(values.len(), d_secs)),
                    verified: Some(true),
                });
            }
            out.write_all(render(&reports, report).as_bytes())
                .map_err(io_out)?;
        }
    }
    Ok(())
}

/// Entry point used by the binary.
pub fn main() -> std::process::ExitCode {
    let cli = Cli::parse();
    match run(
        cli,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    ) {
        Ok(()) => std::process::ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            std::process::ExitCode::from(e.code)
        }
    }
}
