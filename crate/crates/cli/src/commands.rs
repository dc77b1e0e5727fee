use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use tempfile::NamedTempFile;

use scholarnet::report::{self, OutputFormat, TopBy};
use scholarnet::{
    build_corpus_with_aliases, compute_all_with, correlation_table, parse_records, read_aliases, AliasMap,
    AuthorMetrics, CoauthorGraph, Corpus, EffectivenessVariant, InputFormat,
};

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input_path: PathBuf,
    pub input_format: InputFormat,
    pub alias_path: Option<PathBuf>,
    pub drop_isolates: bool,
    pub effectiveness_variant: EffectivenessVariant,
    pub top_n: usize,
    pub output_dir: PathBuf,
    pub output_format: OutputFormat,
}

fn load_corpus(config: &RunConfig) -> Result<Corpus> {
    let records = parse_records(&config.input_path, config.input_format)
        .with_context(|| format!("failed to ingest {}", config.input_path.display()))?;
    let aliases = match &config.alias_path {
        Some(path) => read_aliases(path).with_context(|| format!("failed to read aliases {}", path.display()))?,
        None => AliasMap::new(),
    };
    Ok(build_corpus_with_aliases(records, &aliases)?)
}

fn load_metrics(config: &RunConfig) -> Result<(Corpus, Vec<AuthorMetrics>)> {
    let corpus = load_corpus(config)?;
    let graph = CoauthorGraph::build(&corpus);
    let mut metrics = compute_all_with(&corpus, &graph, config.effectiveness_variant);
    if config.drop_isolates {
        metrics.retain(|m| m.degree > 0);
    }
    Ok((corpus, metrics))
}

/// Writes through a temp file in the destination directory and renames it into place, so a
/// failed run never leaves a truncated output behind.
fn write_atomically<F>(dir: &Path, file_name: &str, write: F) -> Result<PathBuf>
where
    F: FnOnce(&mut dyn Write) -> Result<()>,
{
    fs::create_dir_all(dir).with_context(|| format!("cannot create output directory {}", dir.display()))?;
    let target = dir.join(file_name);
    let tmp = NamedTempFile::new_in(dir).with_context(|| format!("cannot create temp file in {}", dir.display()))?;
    {
        let mut out = BufWriter::new(tmp.as_file());
        write(&mut out)?;
        out.flush()?;
    }
    tmp.persist(&target)
        .with_context(|| format!("cannot write {}", target.display()))?;
    Ok(target)
}

pub struct IngestSummary {
    pub publications: usize,
    pub authors: usize,
    pub authorships: usize,
    pub isolates: usize,
    pub edges: usize,
}

pub fn cmd_ingest_check(config: &RunConfig) -> Result<IngestSummary> {
    let corpus = load_corpus(config)?;
    let graph = CoauthorGraph::build(&corpus);
    Ok(IngestSummary {
        publications: corpus.publications.len(),
        authors: corpus.num_authors(),
        authorships: corpus.publication_authors.iter().map(Vec::len).sum(),
        isolates: corpus.authors.iter().filter(|a| graph.degree(a.author_id) == 0).count(),
        edges: graph.edge_count(),
    })
}

pub fn cmd_graph_export(config: &RunConfig) -> Result<PathBuf> {
    let corpus = load_corpus(config)?;
    let graph = CoauthorGraph::build(&corpus);
    write_atomically(&config.output_dir, "edges.csv", |out| Ok(graph.write_edge_list(out)?))
}

pub fn cmd_metrics(config: &RunConfig) -> Result<PathBuf> {
    let (corpus, metrics) = load_metrics(config)?;
    let name = format!("metrics.{}", config.output_format.extension());
    write_atomically(&config.output_dir, &name, |out| {
        Ok(report::write_metrics(out, &corpus, &metrics, config.output_format)?)
    })
}

pub fn cmd_correlate(config: &RunConfig) -> Result<PathBuf> {
    let (_, metrics) = load_metrics(config)?;
    if metrics.len() < 3 {
        bail!("need ≥ 3 authors for rank correlation, got {}", metrics.len());
    }
    let table = correlation_table(&metrics)?;
    let name = format!("correlations.{}", config.output_format.extension());
    write_atomically(&config.output_dir, &name, |out| {
        Ok(report::write_correlations(out, &table, config.output_format)?)
    })
}

pub fn cmd_top(config: &RunConfig, by: &str) -> Result<PathBuf> {
    let by_parsed: TopBy = by.parse()?;
    let (corpus, metrics) = load_metrics(config)?;
    let name = format!("top_{by}.{}", config.output_format.extension());
    write_atomically(&config.output_dir, &name, |out| {
        Ok(report::write_top(
            out,
            &corpus,
            &metrics,
            by_parsed,
            config.top_n,
            config.output_format,
        )?)
    })
}
