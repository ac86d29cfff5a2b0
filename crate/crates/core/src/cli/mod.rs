//! Command-line surface: expansions, verification suites and dimension tables.

mod cache;
mod fixtures;
mod record;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::dims::dimension_report;
use crate::error::{Error, Result};
use crate::fourier::FourierSeries;
use crate::ring::{
    verify_chi5_square_relations, verify_generator_relations, verify_structure, GeneratorSet,
    RelationReport,
};

pub use cache::ExpansionCache;
pub use fixtures::{
    check_fixture, max_fixture_grade, verify_tables, Fixture, FixtureReport, TableMismatch,
    FIXTURES,
};
pub use record::{rows_from_csv, rows_to_csv, ExpansionRecord, ExpansionRow};

pub const CACHE_ENV: &str = "SIEGEL_RING_CACHE";

#[derive(Debug, Parser)]
#[command(
    name = "siegel-ring",
    version,
    about = "Siegel modular forms on Γ(1,6) in exact arithmetic"
)]
pub struct Cli {
    /// Directory for cached expansions.
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the Fourier expansion of a generator or a monomial in them.
    Expand {
        /// E2, E4, E6, E8, E10, phi2..phi10, chi5a, chi5b, chi15, delta20a,
        /// delta20b, or a product such as `phi2^2*phi4`.
        #[arg(long)]
        form: String,
        #[arg(long, default_value_t = 12)]
        prec: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Run a verification suite. Exits nonzero on any failure.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 12)]
        prec: u32,
    },
    /// Dimensions of cusp forms on Γ(1, 2p).
    Dims {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        from: i64,
        #[arg(long)]
        to: i64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Tables,
    Relations,
    Structure,
    Dims,
}

/// Expansions on demand, backed by an optional cache.
pub struct Session {
    cache: Option<ExpansionCache>,
    gens: Option<GeneratorSet>,
}

impl Session {
    pub fn new(cache_dir: Option<PathBuf>) -> Result<Self> {
        let cache = cache_dir.map(ExpansionCache::open).transpose()?;
        Ok(Session { cache, gens: None })
    }

    pub fn generators(&mut self, prec: u32) -> Result<GeneratorSet> {
        if let Some(g) = &self.gens {
            if g.prec >= prec {
                return Ok(g.truncate(prec));
            }
        }
        let g = GeneratorSet::build(prec)?;
        self.gens = Some(g.clone());
        Ok(g)
    }

    pub fn expansion(&mut self, form: &str, prec: u32) -> Result<FourierSeries> {
        crate::ring::parse_monomial(form)?;
        if let Some(cache) = &self.cache {
            if let Some(series) = cache.load(form, prec)? {
                return Ok(series);
            }
        }
        let series = self.generators(prec)?.evaluate(form)?;
        if let Some(cache) = &self.cache {
            cache.store(form, &series)?;
        }
        Ok(series)
    }
}

#[derive(Serialize)]
struct DimsRow {
    k: i64,
    dim_cusp: Option<i64>,
    dim_modular: Option<i64>,
    genfun: Option<i64>,
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn write_line(out: &mut dyn Write, line: impl AsRef<str>) -> Result<()> {
    writeln!(out, "{}", line.as_ref()).map_err(|source| Error::Io {
        path: PathBuf::from("<stdout>"),
        source,
    })
}

fn relation_lines(out: &mut dyn Write, reports: &[RelationReport]) -> Result<bool> {
    let mut ok = true;
    for r in reports {
        ok &= r.passed();
        write_line(
            out,
            format!(
                "{} {} ({} terms, {} indices, prec {})",
                status(r.passed()),
                r.name,
                r.terms,
                r.checked,
                r.prec
            ),
        )?;
        for m in &r.mismatches {
            write_line(
                out,
                format!("    at {}: lhs {} rhs {}", m.index, m.lhs, m.rhs),
            )?;
        }
    }
    Ok(ok)
}

/// Runs one suite and writes a line per check. Returns whether all passed.
pub fn run_suite(
    session: &mut Session,
    suite: Suite,
    prec: u32,
    out: &mut dyn Write,
) -> Result<bool> {
    let mut ok = true;
    match suite {
        Suite::Tables => {
            let gens = session.generators(prec)?;
            for r in verify_tables(&gens)? {
                ok &= r.passed();
                write_line(
                    out,
                    format!(
                        "{} {}/{} ({} rows, {} above prec)",
                        status(r.passed()),
                        r.group,
                        r.form,
                        r.checked,
                        r.skipped
                    ),
                )?;
                for m in &r.mismatches {
                    write_line(
                        out,
                        format!(
                            "    at {}: computed {} expected {}",
                            m.index, m.computed, m.expected
                        ),
                    )?;
                }
            }
        }
        Suite::Relations => {
            let gens = session.generators(prec)?;
            ok &= relation_lines(out, &verify_chi5_square_relations(&gens)?)?;
            ok &= relation_lines(out, &verify_generator_relations(&gens)?)?;
        }
        Suite::Structure => {
            let gens = session.generators(prec)?;
            let report = verify_structure(20, &gens)?;
            let precs: Vec<String> = report.precisions.iter().map(u32::to_string).collect();
            write_line(
                out,
                format!(
                    "{} ranks stable over precisions {}",
                    status(report.stable),
                    precs.join(", ")
                ),
            )?;
            for row in &report.rows {
                write_line(
                    out,
                    format!(
                        "{} weight {}: rank {} of {} monomials, Hilbert series {}",
                        status(row.matches()),
                        row.weight,
                        row.rank,
                        row.monomials.len(),
                        row.expected
                    ),
                )?;
            }
            for c in &report.claims {
                write_line(
                    out,
                    format!(
                        "{} {}: rank {} (expected {})",
                        status(c.holds()),
                        c.label,
                        c.rank,
                        c.expected
                    ),
                )?;
            }
            ok &= report.passed();
        }
        Suite::Dims => {
            let report = dimension_report(3, 0, 100)?;
            for row in report.rows.iter().filter(|r| !r.matches) {
                write_line(
                    out,
                    format!(
                        "FAIL k = {}: dim M_k {:?} vs Hilbert series {:?}",
                        row.k, row.dim_modular, row.genfun
                    ),
                )?;
            }
            ok &= report.all_match();
            write_line(
                out,
                format!(
                    "{} dim M_k(Γ(1,6)) equals the Hilbert series coefficient for 0 <= k <= 100",
                    status(ok)
                ),
            )?;
        }
    }
    Ok(ok)
}

/// Executes a parsed command line. Returns the process success flag.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<bool> {
    let mut session = Session::new(cli.cache_dir)?;
    match cli.command {
        Command::Expand { form, prec, format } => {
            let series = session.expansion(&form, prec)?;
            let record = ExpansionRecord::from_series(&form, &series);
            let text = match format {
                Format::Json => record.to_json()?,
                Format::Csv => record.to_csv()?,
            };
            write_line(out, text.trim_end())?;
            Ok(true)
        }
        Command::Verify { suite, prec } => run_suite(&mut session, suite, prec, out),
        Command::Dims {
            p,
            from,
            to,
            format,
        } => {
            let report = dimension_report(p, from, to)?;
            let rows: Vec<DimsRow> = report
                .rows
                .iter()
                .map(|r| DimsRow {
                    k: r.k,
                    dim_cusp: r.dim_cusp,
                    dim_modular: r.dim_modular,
                    genfun: r.genfun,
                })
                .collect();
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&rows)?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    for row in &rows {
                        w.serialize(row)?;
                    }
                    let bytes = w.into_inner().map_err(|e| Error::Record(e.to_string()))?;
                    String::from_utf8(bytes).map_err(|e| Error::Record(e.to_string()))?
                }
            };
            write_line(out, text.trim_end())?;
            Ok(true)
        }
    }
}
