//! Publication record parsing and author identity resolution.
//!
//! Authors are identified by their normalized name only. Two scholars that normalize to the
//! same key are merged; known variants of one scholar can be folded together with an alias
//! file (`from_name,to_name`).

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::graph::AuthorId;

/// Separator between names in the CSV `authors` field (and between CSV keywords).
pub const AUTHOR_DELIMITER: char = ';';

#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("cannot read {}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed row at line {line}: {reason}")]
    MalformedRow { line: u64, reason: String },
    #[error("duplicate pub_id `{0}`")]
    DuplicatePubId(String),
    #[error("author name is empty after normalization")]
    EmptyName,
    #[error("malformed alias file at line {line}: {reason}")]
    MalformedAlias { line: u64, reason: String },
}

impl IngestError {
    fn malformed(line: u64, reason: impl Into<String>) -> Self {
        IngestError::MalformedRow {
            line,
            reason: reason.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputFormat {
    Csv,
    Jsonl,
}

impl FromStr for InputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(InputFormat::Csv),
            "jsonl" | "ndjson" => Ok(InputFormat::Jsonl),
            other => Err(format!("unknown input format `{other}` (expected csv or jsonl)")),
        }
    }
}

impl fmt::Display for InputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InputFormat::Csv => "csv",
            InputFormat::Jsonl => "jsonl",
        })
    }
}

/// One publication as read from the input file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PublicationRecord {
    pub pub_id: String,
    pub title: String,
    pub year: i32,
    pub venue: String,
    pub citations: u64,
    /// Raw author names, trimmed, in byline order.
    pub authors: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub keywords: Option<Vec<String>>,
}

/// A resolved author identity together with the citations of every publication it appears on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuthorProfile {
    pub author_id: AuthorId,
    pub canonical_name: String,
    /// Publication ids in corpus order.
    pub publication_ids: Vec<String>,
    /// `citation_vector[i]` is the citation count of `publication_ids[i]`.
    pub citation_vector: Vec<u64>,
}

/// An immutable, deduplicated view of a set of publications.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    pub publications: Vec<PublicationRecord>,
    pub authors: Vec<AuthorProfile>,
    pub author_index: BTreeMap<String, AuthorId>,
    /// Distinct author ids of each publication, ascending, aligned with `publications`.
    pub publication_authors: Vec<Vec<AuthorId>>,
}

impl Corpus {
    pub fn author(&self, id: AuthorId) -> Option<&AuthorProfile> {
        self.authors.get(id.index())
    }

    pub fn lookup(&self, raw_name: &str) -> Option<AuthorId> {
        let key = normalize_name(raw_name).ok()?;
        self.author_index.get(&key).copied()
    }

    pub fn num_authors(&self) -> usize {
        self.authors.len()
    }
}

/// Canonical form of an author name.
///
/// Trims, removes periods (so initials like `M.` and `Y.B.` become `m` and `yb`), collapses
/// whitespace runs to a single space and lower-cases. Idempotent.
pub fn normalize_name(raw: &str) -> Result<String, IngestError> {
    let lowered = raw.to_lowercase();
    let tokens: Vec<String> = lowered
        .split_whitespace()
        .map(|tok| tok.chars().filter(|&c| c != '.').collect::<String>())
        .filter(|tok| !tok.is_empty())
        .collect();
    if tokens.is_empty() {
        return Err(IngestError::EmptyName);
    }
    Ok(tokens.join(" "))
}

/// Reads all publication records from `path`.
pub fn parse_records(path: &Path, format: InputFormat) -> Result<Vec<PublicationRecord>, IngestError> {
    let file = File::open(path).map_err(|source| IngestError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_reader(BufReader::new(file), format)
}

/// Like [`parse_records`], reading from any byte source.
pub fn parse_reader<R: Read>(reader: R, format: InputFormat) -> Result<Vec<PublicationRecord>, IngestError> {
    let records = match format {
        InputFormat::Csv => parse_csv(reader)?,
        InputFormat::Jsonl => parse_jsonl(reader)?,
    };
    let mut seen = HashSet::with_capacity(records.len());
    for rec in &records {
        if !seen.insert(rec.pub_id.as_str()) {
            return Err(IngestError::DuplicatePubId(rec.pub_id.clone()));
        }
    }
    Ok(records)
}

struct CsvColumns {
    pub_id: usize,
    title: usize,
    year: usize,
    venue: usize,
    citations: usize,
    authors: usize,
    keywords: Option<usize>,
}

impl CsvColumns {
    fn from_header(header: &csv::StringRecord) -> Result<Self, IngestError> {
        let find = |name: &str| header.iter().position(|h| h.trim().eq_ignore_ascii_case(name));
        let require = |name: &str| {
            find(name).ok_or_else(|| IngestError::malformed(1, format!("header is missing column `{name}`")))
        };
        Ok(CsvColumns {
            pub_id: require("pub_id")?,
            title: require("title")?,
            year: require("year")?,
            venue: require("venue")?,
            citations: require("citations")?,
            authors: require("authors")?,
            keywords: find("keywords"),
        })
    }
}

fn csv_error_line(err: &csv::Error) -> u64 {
    err.position().map(|p| p.line()).unwrap_or(0)
}

fn parse_csv<R: Read>(reader: R) -> Result<Vec<PublicationRecord>, IngestError> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let header = rdr
        .headers()
        .map_err(|e| IngestError::malformed(csv_error_line(&e).max(1), e.to_string()))?
        .clone();
    let cols = CsvColumns::from_header(&header)?;

    let mut out = Vec::new();
    let mut row = csv::StringRecord::new();
    loop {
        match rdr.read_record(&mut row) {
            Ok(false) => break,
            Ok(true) => {}
            Err(e) => return Err(IngestError::malformed(csv_error_line(&e), e.to_string())),
        }
        let line = row.position().map(|p| p.line()).unwrap_or(0);
        let field = |idx: usize| row.get(idx).unwrap_or("").trim();

        let keywords = cols
            .keywords
            .map(|idx| split_list(field(idx)))
            .filter(|kw| !kw.is_empty());
        let rec = PublicationRecord {
            pub_id: required(field(cols.pub_id), "pub_id", line)?.to_string(),
            title: field(cols.title).to_string(),
            year: parse_year(field(cols.year), line)?,
            venue: field(cols.venue).to_string(),
            citations: parse_citations(field(cols.citations), line)?,
            authors: parse_author_list(field(cols.authors).split(AUTHOR_DELIMITER), line)?,
            keywords,
        };
        out.push(rec);
    }
    Ok(out)
}

fn parse_jsonl<R: Read>(reader: R) -> Result<Vec<PublicationRecord>, IngestError> {
    let mut out = Vec::new();
    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let line_no = idx as u64 + 1;
        let text = line.map_err(|e| IngestError::malformed(line_no, e.to_string()))?;
        if text.trim().is_empty() {
            continue;
        }
        let value: Value =
            serde_json::from_str(&text).map_err(|e| IngestError::malformed(line_no, format!("invalid JSON: {e}")))?;
        out.push(record_from_json(&value, line_no)?);
    }
    Ok(out)
}

fn record_from_json(value: &Value, line: u64) -> Result<PublicationRecord, IngestError> {
    let obj = value
        .as_object()
        .ok_or_else(|| IngestError::malformed(line, "expected a JSON object"))?;
    let text = |name: &str| -> Result<String, IngestError> {
        match obj.get(name) {
            Some(Value::String(s)) => Ok(s.trim().to_string()),
            Some(Value::Number(n)) => Ok(n.to_string()),
            Some(_) => Err(IngestError::malformed(line, format!("field `{name}` must be a string"))),
            None => Err(IngestError::malformed(line, format!("missing required field `{name}`"))),
        }
    };

    let pub_id = text("pub_id")?;
    required(&pub_id, "pub_id", line)?;

    let year = match obj.get("year") {
        Some(Value::Number(n)) => n
            .as_i64()
            .and_then(|y| i32::try_from(y).ok())
            .ok_or_else(|| IngestError::malformed(line, format!("year `{n}` is not an integer")))?,
        Some(Value::String(s)) => parse_year(s.trim(), line)?,
        Some(_) => return Err(IngestError::malformed(line, "year must be an integer")),
        None => return Err(IngestError::malformed(line, "missing required field `year`")),
    };

    let citations = match obj.get("citations") {
        Some(Value::Number(n)) => n
            .as_u64()
            .ok_or_else(|| IngestError::malformed(line, format!("citations `{n}` is not a non-negative integer")))?,
        Some(Value::String(s)) => parse_citations(s.trim(), line)?,
        Some(_) => return Err(IngestError::malformed(line, "citations must be an integer")),
        None => return Err(IngestError::malformed(line, "missing required field `citations`")),
    };

    let authors = match obj.get("authors") {
        Some(Value::Array(items)) => {
            let names = items
                .iter()
                .map(|v| {
                    v.as_str()
                        .ok_or_else(|| IngestError::malformed(line, "authors must be an array of strings"))
                })
                .collect::<Result<Vec<_>, _>>()?;
            parse_author_list(names.into_iter(), line)?
        }
        Some(_) => return Err(IngestError::malformed(line, "authors must be an array of strings")),
        None => return Err(IngestError::malformed(line, "missing required field `authors`")),
    };

    let keywords = match obj.get("keywords") {
        None | Some(Value::Null) => None,
        Some(Value::Array(items)) => Some(
            items
                .iter()
                .filter_map(|v| v.as_str().map(|s| s.trim().to_string()))
                .filter(|s| !s.is_empty())
                .collect(),
        ),
        Some(Value::String(s)) => Some(split_list(s)),
        Some(_) => return Err(IngestError::malformed(line, "keywords must be an array of strings")),
    };

    Ok(PublicationRecord {
        pub_id,
        title: text("title")?,
        year,
        venue: text("venue")?,
        citations,
        authors,
        keywords,
    })
}

fn required<'a>(value: &'a str, name: &str, line: u64) -> Result<&'a str, IngestError> {
    if value.is_empty() {
        Err(IngestError::malformed(line, format!("missing required field `{name}`")))
    } else {
        Ok(value)
    }
}

fn parse_year(raw: &str, line: u64) -> Result<i32, IngestError> {
    required(raw, "year", line)?
        .parse()
        .map_err(|_| IngestError::malformed(line, format!("year `{raw}` is not an integer")))
}

fn parse_citations(raw: &str, line: u64) -> Result<u64, IngestError> {
    required(raw, "citations", line)?
        .parse()
        .map_err(|_| IngestError::malformed(line, format!("citations `{raw}` is not a non-negative integer")))
}

fn parse_author_list<'a>(names: impl Iterator<Item = &'a str>, line: u64) -> Result<Vec<String>, IngestError> {
    let authors: Vec<String> = names.map(|n| n.trim().to_string()).collect();
    if authors.is_empty() || (authors.len() == 1 && authors[0].is_empty()) {
        return Err(IngestError::malformed(line, "missing required field `authors`"));
    }
    if authors.iter().any(|a| a.is_empty()) {
        return Err(IngestError::malformed(line, "author list contains an empty name"));
    }
    Ok(authors)
}

fn split_list(raw: &str) -> Vec<String> {
    raw.split(AUTHOR_DELIMITER)
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

/// Writes records in the same schema [`parse_records`] reads.
pub fn write_records<W: Write>(out: W, records: &[PublicationRecord], format: InputFormat) -> std::io::Result<()> {
    match format {
        InputFormat::Csv => {
            let with_keywords = records.iter().any(|r| r.keywords.is_some());
            let mut wtr = csv::Writer::from_writer(out);
            let mut header = vec!["pub_id", "title", "year", "venue", "citations", "authors"];
            if with_keywords {
                header.push("keywords");
            }
            wtr.write_record(&header)?;
            for r in records {
                let mut row = vec![
                    r.pub_id.clone(),
                    r.title.clone(),
                    r.year.to_string(),
                    r.venue.clone(),
                    r.citations.to_string(),
                    r.authors.join("; "),
                ];
                if with_keywords {
                    row.push(r.keywords.as_deref().unwrap_or_default().join("; "));
                }
                wtr.write_record(&row)?;
            }
            wtr.flush()
        }
        InputFormat::Jsonl => {
            let mut out = out;
            for r in records {
                serde_json::to_writer(&mut out, r)?;
                out.write_all(b"\n")?;
            }
            out.flush()
        }
    }
}

/// Canonical-name rewrites applied after normalization and before deduplication.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AliasMap {
    map: BTreeMap<String, String>,
}

impl AliasMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers `from -> to`; both sides are normalized first.
    pub fn insert(&mut self, from: &str, to: &str) -> Result<(), IngestError> {
        self.map.insert(normalize_name(from)?, normalize_name(to)?);
        Ok(())
    }

    /// Single-step lookup; aliases are not chained.
    pub fn resolve<'a>(&'a self, canonical: &'a str) -> &'a str {
        self.map.get(canonical).map(String::as_str).unwrap_or(canonical)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// Reads an alias CSV with header `from_name,to_name`.
pub fn read_aliases(path: &Path) -> Result<AliasMap, IngestError> {
    let file = File::open(path).map_err(|source| IngestError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_aliases_from(BufReader::new(file))
}

pub fn read_aliases_from<R: Read>(reader: R) -> Result<AliasMap, IngestError> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let header = rdr
        .headers()
        .map_err(|e| IngestError::MalformedAlias {
            line: 1,
            reason: e.to_string(),
        })?
        .clone();
    let pos = |name: &str| header.iter().position(|h| h.trim().eq_ignore_ascii_case(name));
    let (from_idx, to_idx) = match (pos("from_name"), pos("to_name")) {
        (Some(f), Some(t)) => (f, t),
        _ => {
            return Err(IngestError::MalformedAlias {
                line: 1,
                reason: "header must contain `from_name,to_name`".into(),
            })
        }
    };
    let mut aliases = AliasMap::new();
    for row in rdr.records() {
        let row = row.map_err(|e| IngestError::MalformedAlias {
            line: csv_error_line(&e),
            reason: e.to_string(),
        })?;
        let line = row.position().map(|p| p.line()).unwrap_or(0);
        let from = row.get(from_idx).unwrap_or("");
        let to = row.get(to_idx).unwrap_or("");
        aliases.insert(from, to).map_err(|_| IngestError::MalformedAlias {
            line,
            reason: "alias names must be non-empty".into(),
        })?;
    }
    Ok(aliases)
}

/// Resolves author identities and groups citations per author.
pub fn build_corpus(records: Vec<PublicationRecord>) -> Result<Corpus, IngestError> {
    build_corpus_with_aliases(records, &AliasMap::new())
}

pub fn build_corpus_with_aliases(records: Vec<PublicationRecord>, aliases: &AliasMap) -> Result<Corpus, IngestError> {
    // Canonical names per publication, deduplicated within the byline.
    let mut per_pub: Vec<BTreeSet<String>> = Vec::with_capacity(records.len());
    let mut seen_ids = HashSet::with_capacity(records.len());
    for rec in &records {
        if !seen_ids.insert(rec.pub_id.as_str()) {
            return Err(IngestError::DuplicatePubId(rec.pub_id.clone()));
        }
        let mut names = BTreeSet::new();
        for raw in &rec.authors {
            let key = normalize_name(raw)?;
            names.insert(aliases.resolve(&key).to_string());
        }
        per_pub.push(names);
    }

    // BTreeMap iteration order gives ids in lexicographic order of canonical name.
    let mut author_index: BTreeMap<String, AuthorId> = per_pub
        .iter()
        .flatten()
        .map(|name| (name.clone(), AuthorId(0)))
        .collect();
    for (i, id) in author_index.values_mut().enumerate() {
        *id = AuthorId::from_index(i);
    }

    let mut authors: Vec<AuthorProfile> = author_index
        .iter()
        .map(|(name, &author_id)| AuthorProfile {
            author_id,
            canonical_name: name.clone(),
            publication_ids: Vec::new(),
            citation_vector: Vec::new(),
        })
        .collect();

    let mut publication_authors = Vec::with_capacity(records.len());
    for (rec, names) in records.iter().zip(&per_pub) {
        let mut ids: Vec<AuthorId> = names.iter().map(|n| author_index[n]).collect();
        ids.sort_unstable();
        for &id in &ids {
            let profile = &mut authors[id.index()];
            profile.publication_ids.push(rec.pub_id.clone());
            profile.citation_vector.push(rec.citations);
        }
        publication_authors.push(ids);
    }

    Ok(Corpus {
        publications: records,
        authors,
        author_index,
        publication_authors,
    })
}
