//! Command-line front end.
//!
//! Results go to the supplied writer, one record per line. Failures are
//! returned as [`CliError`] so the binary can print a single diagnostic
//! line and exit nonzero.

use std::collections::BTreeMap;
use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::combinat::{StirlingKind, StirlingTable};
use crate::egf::EgfSeries;
use crate::error::Error;
use crate::families::{deg_exp_series, Catalog, FamilyKind, Kernel};
use crate::identities::{IdentityId, Summary, Verifier};
use crate::multipoly::{MPoly, Var};
use crate::numeric::{GaussRat, Rat};

pub const DEFAULT_ORDER: usize = 16;
pub const DEFAULT_VERIFY_N_MAX: usize = 12;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("write failed: {0}")]
    Io(#[from] io::Error),
}

#[derive(Debug, Parser)]
#[command(
    name = "degenpoly",
    version,
    about = "Exact degenerate Bernoulli/Euler cosine and sine polynomials"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print members of a polynomial family.
    Table(TableArgs),
    /// Dump a triangular Stirling table.
    Stirling(StirlingArgs),
    /// Check identities and report one verdict per degree and display.
    Verify(VerifyArgs),
    /// Print raw EGF coefficients of a named series.
    Series(SeriesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesKind {
    Bernoulli,
    Euler,
    Cos,
    Sin,
    Exp,
}

impl SeriesKind {
    pub fn name(self) -> &'static str {
        match self {
            SeriesKind::Bernoulli => "bernoulli",
            SeriesKind::Euler => "euler",
            SeriesKind::Cos => "cos",
            SeriesKind::Sin => "sin",
            SeriesKind::Exp => "exp",
        }
    }
}

/// Optional rational values for the polynomial variables.
#[derive(Debug, Clone, Default, Args)]
pub struct Bindings {
    #[arg(long = "l", value_name = "RAT", allow_hyphen_values = true)]
    pub lambda: Option<Rat>,
    #[arg(long, value_name = "RAT", allow_hyphen_values = true)]
    pub x: Option<Rat>,
    #[arg(long, value_name = "RAT", allow_hyphen_values = true)]
    pub y: Option<Rat>,
    #[arg(long, value_name = "RAT", allow_hyphen_values = true)]
    pub r: Option<Rat>,
    /// Substitute the given values and keep the remaining variables
    /// symbolic instead of requiring a fully numeric result.
    #[arg(long)]
    pub partial: bool,
}

impl Bindings {
    fn map(&self) -> BTreeMap<Var, GaussRat> {
        [
            (Var::Lambda, &self.lambda),
            (Var::X, &self.x),
            (Var::Y, &self.y),
            (Var::R, &self.r),
        ]
        .into_iter()
        .filter_map(|(v, val)| val.as_ref().map(|q| (v, GaussRat::real(q.clone()))))
        .collect()
    }

    /// Symbolic `p` when nothing is bound, otherwise its value (or its
    /// partial specialization with `--partial`).
    fn apply(&self, p: &MPoly) -> Result<String, Error> {
        let map = self.map();
        if map.is_empty() {
            return Ok(p.to_string());
        }
        if self.partial {
            let bound = map
                .iter()
                .fold(p.clone(), |acc, (v, val)| acc.bind(*v, val));
            return Ok(bound.to_string());
        }
        Ok(p.eval(&map)?.to_string())
    }
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: FamilyKind,
    /// Print the single member of degree N.
    #[arg(long, conflicts_with = "n_max")]
    pub n: Option<usize>,
    /// Print every member of degree 0 through N-MAX.
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    /// Use the Stirling closed form instead of the series route.
    #[arg(long)]
    pub closed: bool,
    #[command(flatten)]
    pub bindings: Bindings,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct StirlingArgs {
    #[arg(long, value_parser = parse_stirling_kind)]
    pub kind: StirlingKind,
    /// Largest row; defaults to the order.
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// `all` or a comma-separated list of identity tags.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    pub identity: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_VERIFY_N_MAX)]
    pub n_max: usize,
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct SeriesArgs {
    #[arg(long, value_enum)]
    pub kernel: SeriesKind,
    /// Largest coefficient index; defaults to the order.
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Serialize)]
struct FamilyRow<'a> {
    family: &'static str,
    n: usize,
    value: &'a str,
}

#[derive(Serialize)]
struct StirlingRow {
    kind: &'static str,
    n: usize,
    k: usize,
    value: String,
}

#[derive(Serialize)]
struct SeriesRow {
    series: &'static str,
    n: usize,
    coeff: String,
}

#[derive(Serialize)]
struct SummaryLine<'a> {
    summary: &'a Summary,
}

fn json_line(out: &mut impl Write, row: &impl Serialize) -> io::Result<()> {
    let text = serde_json::to_string(row).expect("plain data serializes");
    writeln!(out, "{text}")
}

fn parse_family(s: &str) -> Result<FamilyKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_stirling_kind(s: &str) -> Result<StirlingKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn check_order(n_max: usize, order: usize) -> Result<(), Error> {
    if order < n_max + 1 {
        return Err(Error::OrderTooSmall { n_max, order });
    }
    Ok(())
}

fn reject_csv(command: &str, format: Format) -> Result<(), CliError> {
    if format == Format::Csv {
        return Err(CliError::Usage(format!(
            "csv output is only available for stirling tables, not {command}"
        )));
    }
    Ok(())
}

/// Runs one parsed command. `Ok(false)` means the command completed but
/// at least one identity check failed.
pub fn run(cli: &Cli, out: &mut impl Write) -> Result<bool, CliError> {
    match &cli.command {
        Command::Table(args) => table(args, out).map(|()| true),
        Command::Stirling(args) => stirling(args, out).map(|()| true),
        Command::Verify(args) => verify(args, out),
        Command::Series(args) => series(args, out).map(|()| true),
    }
}

fn table(args: &TableArgs, out: &mut impl Write) -> Result<(), CliError> {
    reject_csv("table", args.format)?;
    let (lo, hi) = match (args.n, args.n_max) {
        (Some(n), _) => (n, n),
        (None, Some(m)) => (0, m),
        (None, None) => return Err(CliError::Usage("table needs --n or --n-max".into())),
    };
    check_order(hi, args.order)?;
    let catalog = Catalog::new(args.order);
    let polys = if args.closed {
        &catalog.family_closed(args.family)?.polys[..]
    } else {
        catalog.family(args.family)
    };
    let single = args.n.is_some();
    for (n, p) in polys.iter().enumerate().take(hi + 1).skip(lo) {
        let value = args.bindings.apply(p)?;
        match args.format {
            Format::Json => {
                let row = FamilyRow {
                    family: args.family.name(),
                    n,
                    value: &value,
                };
                json_line(out, &row)?;
            }
            _ if single => writeln!(out, "{value}")?,
            _ => writeln!(out, "{n}: {value}")?,
        }
    }
    Ok(())
}

fn stirling(args: &StirlingArgs, out: &mut impl Write) -> Result<(), CliError> {
    let n_max = args.n_max.unwrap_or(args.order);
    if n_max > args.order {
        return Err(Error::IndexOutOfRange {
            index: n_max,
            max: args.order,
        }
        .into());
    }
    let table = StirlingTable::build(args.kind, n_max);
    if args.format == Format::Csv {
        writeln!(out, "n,k,value")?;
    }
    for (n, k, p) in table.triangle() {
        match args.format {
            Format::Csv => writeln!(out, "{n},{k},{p}")?,
            Format::Json => {
                let row = StirlingRow {
                    kind: args.kind.name(),
                    n,
                    k,
                    value: p.to_string(),
                };
                json_line(out, &row)?;
            }
            Format::Text => writeln!(out, "S({n},{k}) = {p}")?,
        }
    }
    Ok(())
}

fn parse_identities(filter: &[String]) -> Result<Vec<IdentityId>, Error> {
    if filter.iter().any(|s| s.trim() == "all") {
        return Ok(IdentityId::ALL.to_vec());
    }
    filter.iter().map(|s| s.trim().parse()).collect()
}

fn verify(args: &VerifyArgs, out: &mut impl Write) -> Result<bool, CliError> {
    reject_csv("verify", args.format)?;
    let ids = parse_identities(&args.identity)?;
    check_order(args.n_max, args.order)?;
    let verifier = Verifier::new(args.order);
    let reports = verifier.verify_many(&ids, args.n_max)?;
    let summary = Summary::from_reports(&reports, args.n_max, args.order);
    match args.format {
        Format::Json => {
            for r in &reports {
                json_line(out, &r.record())?;
            }
            json_line(out, &SummaryLine { summary: &summary })?;
        }
        _ => {
            for r in &reports {
                let part = if r.part.is_empty() {
                    String::new()
                } else {
                    format!(" [{}]", r.part)
                };
                write!(out, "{} n={}{} {}", r.id, r.n, part, r.verdict)?;
                if !r.residual.is_zero() {
                    write!(out, " residual: {}", r.residual)?;
                }
                writeln!(out)?;
                if let Some(note) = &r.variant_note {
                    writeln!(out, "  note: {note}")?;
                }
            }
            writeln!(
                out,
                "checks {} holds {} holds_variant {} fails {}{}",
                summary.checks,
                summary.holds,
                summary.holds_variant,
                summary.fails,
                if summary.variant_tags.is_empty() {
                    String::new()
                } else {
                    format!(" (variants: {})", summary.variant_tags.join(", "))
                }
            )?;
        }
    }
    Ok(summary.success)
}

fn series(args: &SeriesArgs, out: &mut impl Write) -> Result<(), CliError> {
    reject_csv("series", args.format)?;
    let n_max = args.n_max.unwrap_or(args.order);
    if n_max > args.order {
        return Err(Error::IndexOutOfRange {
            index: n_max,
            max: args.order,
        }
        .into());
    }
    let catalog = Catalog::new(args.order);
    let owned: EgfSeries;
    let s = match args.kernel {
        SeriesKind::Bernoulli => catalog.kernel(Kernel::Bernoulli),
        SeriesKind::Euler => catalog.kernel(Kernel::Euler),
        SeriesKind::Cos => &catalog.cos_sin().0,
        SeriesKind::Sin => &catalog.cos_sin().1,
        SeriesKind::Exp => {
            owned = deg_exp_series(&MPoly::var(Var::X), args.order);
            &owned
        }
    };
    let name = args.kernel.name();
    for (n, a) in s.coeffs().iter().enumerate().take(n_max + 1) {
        match args.format {
            Format::Json => json_line(
                out,
                &SeriesRow {
                    series: name,
                    n,
                    coeff: a.to_string(),
                },
            )?,
            _ => writeln!(out, "{n}: {a}")?,
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<(bool, String), CliError> {
        let cli = Cli::try_parse_from(std::iter::once("degenpoly").chain(args.iter().copied()))
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let mut buf = Vec::new();
        let ok = run(&cli, &mut buf)?;
        Ok((ok, String::from_utf8(buf).unwrap()))
    }

    #[test]
    fn table_single_member() {
        let (ok, out) = run_args(&["table", "--family", "deg-cosine", "--n", "2"]).unwrap();
        assert!(ok);
        assert_eq!(out, "x^2 - l*x - y^2\n");
        let (_, out) = run_args(&["table", "--family", "deg-sine", "--n", "0"]).unwrap();
        assert_eq!(out, "0\n");
    }

    #[test]
    fn evaluation_needs_every_variable() {
        let (_, out) = run_args(&[
            "table",
            "--family",
            "deg-cosine",
            "--n",
            "2",
            "--l",
            "1/2",
            "--x",
            "2",
            "--y",
            "-1",
        ])
        .unwrap();
        // 4 - 1 - 1
        assert_eq!(out, "2\n");
        let err =
            run_args(&["table", "--family", "deg-cosine", "--n", "2", "--l", "0"]).unwrap_err();
        assert!(matches!(err, CliError::Core(Error::UnboundVariable(_))));
        let (_, out) = run_args(&[
            "table",
            "--family",
            "deg-cosine",
            "--n",
            "2",
            "--l",
            "0",
            "--partial",
        ])
        .unwrap();
        assert_eq!(out, "x^2 - y^2\n");
    }

    #[test]
    fn order_violation_is_an_error() {
        let err = run_args(&["table", "--family", "deg-euler", "--n", "16"]).unwrap_err();
        assert!(matches!(err, CliError::Core(Error::OrderTooSmall { .. })));
        let err = run_args(&["verify", "--n-max", "5", "--order", "5"]).unwrap_err();
        assert!(matches!(err, CliError::Core(Error::OrderTooSmall { .. })));
    }

    #[test]
    fn stirling_csv_header_and_rows() {
        let (_, out) = run_args(&["stirling", "--kind", "first", "--n-max", "2"]).unwrap();
        assert_eq!(
            out,
            "n,k,value\n0,0,1\n1,0,0\n1,1,1\n2,0,0\n2,1,-1\n2,2,1\n"
        );
    }

    #[test]
    fn unknown_identity_rejected() {
        let err = run_args(&["verify", "--identity", "T2_cos,nope"]).unwrap_err();
        assert!(matches!(err, CliError::Core(Error::UnknownIdentity(_))));
    }
}
