//! Seeded random publication corpora for tests and benchmarks.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ingest::PublicationRecord;

/// Environment variable that overrides the default seed of generated corpora.
pub const SEED_ENV: &str = "SCHOLARNET_SEED";

/// `SCHOLARNET_SEED` if set and numeric, otherwise `default`.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var(SEED_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(default)
}

#[derive(Debug, Clone)]
pub struct SyntheticConfig {
    /// Every one of these authors appears on at least one publication.
    pub authors: usize,
    /// Minimum number of publications.
    pub publications: usize,
    /// Keep adding publications until the co-authorship graph has at least this many edges.
    pub target_edges: usize,
    pub max_authors_per_pub: usize,
    pub venues: usize,
    pub seed: u64,
}

impl SyntheticConfig {
    pub fn new(authors: usize, publications: usize, seed: u64) -> Self {
        SyntheticConfig {
            authors,
            publications,
            target_edges: 0,
            max_authors_per_pub: 4,
            venues: 20,
            seed,
        }
    }

    pub fn with_target_edges(mut self, edges: usize) -> Self {
        self.target_edges = edges;
        self
    }

    pub fn with_max_authors(mut self, k: usize) -> Self {
        self.max_authors_per_pub = k.max(1);
        self
    }
}

pub fn author_name(i: usize) -> String {
    format!("Author {i:05}")
}

/// Generates publications with a mild rich-get-richer author choice and skewed citation counts.
///
/// Half of the co-author slots are filled by re-sampling a previous authorship, which yields
/// hubs and repeated collaborations.
pub fn generate(config: &SyntheticConfig) -> Vec<PublicationRecord> {
    assert!(config.authors > 0, "need at least one author");
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut uncovered: Vec<usize> = (0..config.authors).collect();
    uncovered.shuffle(&mut rng);

    let max_k = config.max_authors_per_pub.clamp(1, config.authors);
    let mut history: Vec<usize> = Vec::new();
    let mut edges: HashSet<(usize, usize)> = HashSet::new();
    let mut out = Vec::new();

    // Saturation guard for unreachable edge targets.
    let cap = config.publications.max(config.authors) + config.target_edges * 4 + 16;

    while (out.len() < config.publications || edges.len() < config.target_edges || !uncovered.is_empty())
        && out.len() < cap
    {
        let k = rng.gen_range(1..=max_k);
        let mut team: Vec<usize> = Vec::with_capacity(k);
        if let Some(first) = uncovered.pop() {
            team.push(first);
        }
        while team.len() < k {
            let pick = if !history.is_empty() && rng.gen_bool(0.5) {
                history[rng.gen_range(0..history.len())]
            } else {
                rng.gen_range(0..config.authors)
            };
            if !team.contains(&pick) {
                team.push(pick);
            }
        }
        for (i, &a) in team.iter().enumerate() {
            for &b in &team[i + 1..] {
                edges.insert((a.min(b), a.max(b)));
            }
        }
        history.extend_from_slice(&team);

        let u: f64 = rng.gen();
        let citations = (u * u * u * 120.0) as u64 + rng.gen_range(0..3) * (team.len() as u64 - 1);
        let id = out.len();
        out.push(PublicationRecord {
            pub_id: format!("s{id:06}"),
            title: format!("Synthetic paper {id}"),
            year: 2001 + rng.gen_range(0..10),
            venue: format!("Journal {:02}", rng.gen_range(0..config.venues.max(1))),
            citations,
            authors: team.into_iter().map(author_name).collect(),
            keywords: None,
        });
    }
    out
}
