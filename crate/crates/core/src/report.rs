//! Metrics, correlation and top-N tables in CSV, JSON or Markdown.
//!
//! CSV and JSON carry rationals at full `f64` precision; Markdown rounds them to two decimals.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::ingest::Corpus;
use crate::metrics::{ratio_to_f64, AuthorMetrics, Measure};
use crate::stats::CorrelationResult;

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("unknown measure `{0}`")]
    UnknownMeasure(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
    Markdown,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
            OutputFormat::Markdown => "md",
        }
    }
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            "markdown" | "md" => Ok(OutputFormat::Markdown),
            other => Err(format!(
                "unknown output format `{other}` (expected csv, json or markdown)"
            )),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
            OutputFormat::Markdown => "markdown",
        })
    }
}

/// A cell that is either an integer, a rational (as f64) or text.
#[derive(Debug, Clone)]
enum Cell {
    Int(u64),
    Real(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn render(&self, format: OutputFormat) -> String {
        match (self, format) {
            (Cell::Int(v), _) => v.to_string(),
            (Cell::Real(v), OutputFormat::Markdown) => format!("{v:.2}"),
            (Cell::Real(v), _) => v.to_string(),
            (Cell::Text(s), _) => s.clone(),
            (Cell::Bool(b), _) => b.to_string(),
            (Cell::Empty, _) => String::new(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Real(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Bool(b) => Value::from(*b),
            Cell::Empty => Value::Null,
        }
    }
}

struct Table {
    header: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    fn write<W: Write>(&self, out: W, format: OutputFormat) -> Result<(), ReportError> {
        match format {
            OutputFormat::Csv => {
                let mut wtr = csv::Writer::from_writer(out);
                wtr.write_record(&self.header)?;
                for row in &self.rows {
                    wtr.write_record(row.iter().map(|c| c.render(format)))?;
                }
                wtr.flush()?;
            }
            OutputFormat::Json => {
                let records: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let obj: Map<String, Value> =
                            self.header.iter().cloned().zip(row.iter().map(Cell::to_json)).collect();
                        Value::Object(obj)
                    })
                    .collect();
                let mut out = out;
                serde_json::to_writer_pretty(&mut out, &records)?;
                writeln!(out)?;
            }
            OutputFormat::Markdown => {
                let mut out = out;
                writeln!(out, "| {} |", self.header.join(" | "))?;
                writeln!(out, "|{}", "---|".repeat(self.header.len()))?;
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(|c| c.render(format).replace('|', "\\|")).collect();
                    writeln!(out, "| {} |", cells.join(" | "))?;
                }
            }
        }
        Ok(())
    }
}

fn measure_cell(m: &AuthorMetrics, measure: Measure) -> Cell {
    match measure {
        Measure::CitationCount => Cell::Int(m.citation_count),
        Measure::HIndex => Cell::Int(m.h_index.into()),
        Measure::Degree => Cell::Int(m.degree.into()),
        Measure::WeightedDegree => Cell::Int(m.weighted_degree),
        Measure::AvgTieStrength => Cell::Real(ratio_to_f64(&m.avg_tie_strength)),
        Measure::Effectiveness => Cell::Real(ratio_to_f64(&m.effectiveness)),
        Measure::EgoBetweenness => Cell::Real(ratio_to_f64(&m.ego_betweenness)),
        Measure::PowerDiversity => Cell::Int(m.power_diversity.into()),
        Measure::PowerTieDiversity => Cell::Int(m.power_tie_diversity.into()),
    }
}

fn metrics_header() -> Vec<String> {
    std::iter::once("author")
        .chain(Measure::ALL.iter().map(|m| m.name()))
        .map(String::from)
        .collect()
}

fn metrics_row(corpus: &Corpus, m: &AuthorMetrics) -> Vec<Cell> {
    let name = corpus
        .author(m.author_id)
        .map(|a| a.canonical_name.clone())
        .unwrap_or_default();
    std::iter::once(Cell::Text(name))
        .chain(Measure::ALL.iter().map(|&measure| measure_cell(m, measure)))
        .collect()
}

/// Writes one row per author with columns `author` followed by every [`Measure`].
pub fn write_metrics<W: Write>(
    out: W,
    corpus: &Corpus,
    metrics: &[AuthorMetrics],
    format: OutputFormat,
) -> Result<(), ReportError> {
    Table {
        header: metrics_header(),
        rows: metrics.iter().map(|m| metrics_row(corpus, m)).collect(),
    }
    .write(out, format)
}

/// Writes `measure_x,measure_y,rho,p_value,n,significant_at_0.01`; undefined pairs leave `rho`
/// and `p_value` empty.
pub fn write_correlations<W: Write>(
    out: W,
    table: &[CorrelationResult],
    format: OutputFormat,
) -> Result<(), ReportError> {
    let header = ["measure_x", "measure_y", "rho", "p_value", "n", "significant_at_0.01"]
        .map(String::from)
        .to_vec();
    let rows = table
        .iter()
        .map(|r| {
            let real = |v: Option<f64>| v.map_or(Cell::Empty, Cell::Real);
            vec![
                Cell::Text(r.measure_x.name().into()),
                Cell::Text(r.measure_y.name().into()),
                real(r.rho()),
                real(r.p_value()),
                Cell::Int(r.n as u64),
                Cell::Bool(r.is_significant()),
            ]
        })
        .collect();
    Table { header, rows }.write(out, format)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VenueMeasure {
    Publications,
    Citations,
}

/// What a top-N table ranks: authors by a metric, or venues by output or impact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopBy {
    Author(Measure),
    Venue(VenueMeasure),
}

impl FromStr for TopBy {
    type Err = ReportError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "publications" => Ok(TopBy::Venue(VenueMeasure::Publications)),
            "citations" => Ok(TopBy::Venue(VenueMeasure::Citations)),
            other => other
                .parse::<Measure>()
                .map(TopBy::Author)
                .map_err(|_| ReportError::UnknownMeasure(other.to_string())),
        }
    }
}

/// Exact comparison of one measure between two authors.
pub fn compare_measure(a: &AuthorMetrics, b: &AuthorMetrics, measure: Measure) -> Ordering {
    match measure {
        Measure::CitationCount => a.citation_count.cmp(&b.citation_count),
        Measure::HIndex => a.h_index.cmp(&b.h_index),
        Measure::Degree => a.degree.cmp(&b.degree),
        Measure::WeightedDegree => a.weighted_degree.cmp(&b.weighted_degree),
        Measure::AvgTieStrength => a.avg_tie_strength.cmp(&b.avg_tie_strength),
        Measure::Effectiveness => a.effectiveness.cmp(&b.effectiveness),
        Measure::EgoBetweenness => a.ego_betweenness.cmp(&b.ego_betweenness),
        Measure::PowerDiversity => a.power_diversity.cmp(&b.power_diversity),
        Measure::PowerTieDiversity => a.power_tie_diversity.cmp(&b.power_tie_diversity),
    }
}

/// The `n` best authors by `measure`, descending; ties go to the smaller canonical name.
pub fn top_authors<'a>(
    corpus: &Corpus,
    metrics: &'a [AuthorMetrics],
    measure: Measure,
    n: usize,
) -> Vec<&'a AuthorMetrics> {
    let name = |m: &AuthorMetrics| corpus.author(m.author_id).map(|a| a.canonical_name.as_str());
    let mut ranked: Vec<&AuthorMetrics> = metrics.iter().collect();
    ranked.sort_by(|a, b| compare_measure(b, a, measure).then_with(|| name(a).cmp(&name(b))));
    ranked.truncate(n);
    ranked
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VenueRow {
    pub venue: String,
    pub publications: u64,
    pub citations: u64,
}

/// Publication count and summed citations per venue, in venue-name order.
pub fn venue_table(corpus: &Corpus) -> Vec<VenueRow> {
    let mut by_venue: BTreeMap<&str, (u64, u64)> = BTreeMap::new();
    for p in &corpus.publications {
        let entry = by_venue.entry(p.venue.as_str()).or_default();
        entry.0 += 1;
        entry.1 += p.citations;
    }
    by_venue
        .into_iter()
        .map(|(venue, (publications, citations))| VenueRow {
            venue: venue.to_string(),
            publications,
            citations,
        })
        .collect()
}

pub fn top_venues(corpus: &Corpus, by: VenueMeasure, n: usize) -> Vec<VenueRow> {
    let key = |r: &VenueRow| match by {
        VenueMeasure::Publications => r.publications,
        VenueMeasure::Citations => r.citations,
    };
    let mut rows = venue_table(corpus);
    // venue_table is name-ordered, so a stable sort keeps name ascending within ties.
    rows.sort_by_key(|r| std::cmp::Reverse(key(r)));
    rows.truncate(n);
    rows
}

pub fn write_top<W: Write>(
    out: W,
    corpus: &Corpus,
    metrics: &[AuthorMetrics],
    by: TopBy,
    n: usize,
    format: OutputFormat,
) -> Result<(), ReportError> {
    let table = match by {
        TopBy::Author(measure) => {
            let mut header = vec!["rank".to_string()];
            header.extend(metrics_header());
            let rows = top_authors(corpus, metrics, measure, n)
                .into_iter()
                .enumerate()
                .map(|(i, m)| {
                    let mut row = vec![Cell::Int(i as u64 + 1)];
                    row.extend(metrics_row(corpus, m));
                    row
                })
                .collect();
            Table { header, rows }
        }
        TopBy::Venue(measure) => Table {
            header: ["rank", "venue", "publications", "citations"]
                .map(String::from)
                .to_vec(),
            rows: top_venues(corpus, measure, n)
                .into_iter()
                .enumerate()
                .map(|(i, r)| {
                    vec![
                        Cell::Int(i as u64 + 1),
                        Cell::Text(r.venue),
                        Cell::Int(r.publications),
                        Cell::Int(r.citations),
                    ]
                })
                .collect(),
        },
    };
    table.write(out, format)
}
