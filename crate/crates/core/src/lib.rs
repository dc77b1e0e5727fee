//! Co-authorship network analysis.
//!
//! The pipeline runs in four stages:
//!
//! 1. [`ingest`] parses publication records and resolves author identities into a [`Corpus`].
//! 2. [`graph`] folds the corpus into a weighted undirected [`CoauthorGraph`], where the weight
//!    of an edge is the number of publications the two authors share.
//! 3. [`metrics`] computes per-author performance (citations, h-index) and ego-network social
//!    capital, including the Power-Diversity and Power-Tie-Diversity indices.
//! 4. [`stats`] correlates every capital measure with every performance measure using
//!    Spearman's rho.
//!
//! [`report`] renders the results as CSV, JSON or Markdown tables, and [`synthetic`] produces
//! seeded random corpora for tests and benchmarks.

pub mod graph;
pub mod ingest;
pub mod metrics;
pub mod report;
pub mod stats;
pub mod synthetic;

pub use graph::{AuthorId, CoauthorGraph, EgoNetwork, GraphError};
pub use ingest::{
    build_corpus, build_corpus_with_aliases, normalize_name, parse_records, read_aliases, AliasMap, AuthorProfile,
    Corpus, IngestError, InputFormat, PublicationRecord,
};
pub use metrics::{compute_all, compute_all_with, AuthorMetrics, EffectivenessVariant, Measure, MetricsError};
pub use report::{OutputFormat, ReportError, TopBy, VenueMeasure};
pub use stats::{correlation_table, spearman, Correlation, CorrelationResult, StatsError};
