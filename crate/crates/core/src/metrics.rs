//! Per-author performance and ego-network social-capital measures.
//!
//! Rational-valued measures (average tie strength, effectiveness, ego-betweenness) are kept as
//! exact [`BigRational`]s; conversion to `f64` happens only when rendering or ranking.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::{AuthorId, CoauthorGraph, EgoNetwork};
use crate::ingest::{AuthorProfile, Corpus};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum MetricsError {
    #[error("length mismatch: {left} alter h-indices but {right} tie weights")]
    LengthMismatch { left: usize, right: usize },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EffectivenessVariant {
    /// `n - 2t/n`, counting alter–alter ties without weights.
    #[default]
    Binary,
    /// Burt's effective size with proportional tie strengths.
    Weighted,
}

impl FromStr for EffectivenessVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "binary" => Ok(Self::Binary),
            "weighted" => Ok(Self::Weighted),
            other => Err(format!(
                "unknown effectiveness variant `{other}` (expected binary or weighted)"
            )),
        }
    }
}

/// Every per-author column, in export order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    CitationCount,
    HIndex,
    Degree,
    WeightedDegree,
    AvgTieStrength,
    Effectiveness,
    EgoBetweenness,
    PowerDiversity,
    PowerTieDiversity,
}

impl Measure {
    pub const ALL: [Measure; 9] = [
        Measure::CitationCount,
        Measure::HIndex,
        Measure::Degree,
        Measure::WeightedDegree,
        Measure::AvgTieStrength,
        Measure::Effectiveness,
        Measure::EgoBetweenness,
        Measure::PowerDiversity,
        Measure::PowerTieDiversity,
    ];

    /// Social-capital measures correlated against performance.
    pub const CAPITAL: [Measure; 7] = [
        Measure::Degree,
        Measure::WeightedDegree,
        Measure::AvgTieStrength,
        Measure::Effectiveness,
        Measure::EgoBetweenness,
        Measure::PowerDiversity,
        Measure::PowerTieDiversity,
    ];

    pub const PERFORMANCE: [Measure; 2] = [Measure::CitationCount, Measure::HIndex];

    pub fn name(self) -> &'static str {
        match self {
            Measure::CitationCount => "citation_count",
            Measure::HIndex => "h_index",
            Measure::Degree => "degree",
            Measure::WeightedDegree => "weighted_degree",
            Measure::AvgTieStrength => "avg_tie_strength",
            Measure::Effectiveness => "effectiveness",
            Measure::EgoBetweenness => "ego_betweenness",
            Measure::PowerDiversity => "power_diversity",
            Measure::PowerTieDiversity => "power_tie_diversity",
        }
    }

    pub fn is_rational(self) -> bool {
        matches!(
            self,
            Measure::AvgTieStrength | Measure::Effectiveness | Measure::EgoBetweenness
        )
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Measure::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown measure `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuthorMetrics {
    pub author_id: AuthorId,
    pub citation_count: u64,
    pub h_index: u32,
    /// Network size: number of distinct co-authors.
    pub degree: u32,
    /// Sum of tie strengths.
    pub weighted_degree: u64,
    pub avg_tie_strength: BigRational,
    pub effectiveness: BigRational,
    pub ego_betweenness: BigRational,
    pub power_diversity: u32,
    pub power_tie_diversity: u32,
}

impl AuthorMetrics {
    pub fn value(&self, measure: Measure) -> f64 {
        match measure {
            Measure::CitationCount => self.citation_count as f64,
            Measure::HIndex => f64::from(self.h_index),
            Measure::Degree => f64::from(self.degree),
            Measure::WeightedDegree => self.weighted_degree as f64,
            Measure::AvgTieStrength => ratio_to_f64(&self.avg_tie_strength),
            Measure::Effectiveness => ratio_to_f64(&self.effectiveness),
            Measure::EgoBetweenness => ratio_to_f64(&self.ego_betweenness),
            Measure::PowerDiversity => f64::from(self.power_diversity),
            Measure::PowerTieDiversity => f64::from(self.power_tie_diversity),
        }
    }
}

pub fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn ratio(numer: u64, denom: u64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn citation_count(profile: &AuthorProfile) -> u64 {
    profile.citation_vector.iter().sum()
}

/// Largest `h` such that at least `h` of `values` are `>= h`.
pub fn h_index<T: Copy + Into<u64>>(values: &[T]) -> u32 {
    let n = values.len();
    // Values above n are capped: h can never exceed the number of entries.
    let mut buckets = vec![0usize; n + 1];
    for &v in values {
        let v: u64 = v.into();
        buckets[usize::try_from(v).map_or(n, |v| v.min(n))] += 1;
    }
    let mut at_least = 0;
    for h in (1..=n).rev() {
        at_least += buckets[h];
        if at_least >= h {
            return h as u32;
        }
    }
    0
}

/// Degree, weighted degree and average tie strength (0 for isolates).
pub fn tie_strength(eg: &EgoNetwork) -> (u32, u64, BigRational) {
    let degree = eg.size() as u64;
    let weighted: u64 = eg.ego_ties.iter().map(|&w| u64::from(w)).sum();
    let avg = if degree == 0 {
        BigRational::zero()
    } else {
        ratio(weighted, degree)
    };
    (degree as u32, weighted, avg)
}

pub fn effectiveness(eg: &EgoNetwork, variant: EffectivenessVariant) -> BigRational {
    match variant {
        EffectivenessVariant::Binary => binary_effectiveness(eg),
        EffectivenessVariant::Weighted => weighted_effectiveness(eg),
    }
}

fn binary_effectiveness(eg: &EgoNetwork) -> BigRational {
    let n = eg.size() as u64;
    if n == 0 {
        return BigRational::zero();
    }
    let t = eg.alter_ties.len() as u64;
    ratio(n * n - 2 * t, n)
}

/// `sum_j [1 - sum_q p_iq m_jq]` which rearranges to `n - (1/W) sum_j S_j / M_j`, where `W` is
/// the ego's weighted degree, `S_j = sum_q w(i,q) w(j,q)` and `M_j` is j's strongest tie inside
/// the ego network (ego included).
fn weighted_effectiveness(eg: &EgoNetwork) -> BigRational {
    let n = eg.size();
    if n == 0 {
        return BigRational::zero();
    }
    let total: u64 = eg.ego_ties.iter().map(|&w| u64::from(w)).sum();
    let adj = eg.local_adjacency();
    let mut redundancy = BigRational::zero();
    for (j, ties) in adj.iter().enumerate() {
        if ties.is_empty() {
            continue;
        }
        let max_tie = ties
            .iter()
            .map(|&(_, w)| w)
            .chain(std::iter::once(eg.ego_ties[j]))
            .max()
            .map(u64::from)
            .unwrap_or(1);
        let shared: u64 = ties
            .iter()
            .map(|&(q, w)| u64::from(eg.ego_ties[q]) * u64::from(w))
            .sum();
        redundancy += ratio(shared, max_tie);
    }
    BigRational::from_integer(BigInt::from(n)) - redundancy / BigRational::from_integer(BigInt::from(total))
}

/// For each non-adjacent alter pair, `1/k` where `k` counts the nodes (ego included) adjacent to
/// both alters. Adjacent pairs contribute nothing; weights are ignored.
pub fn ego_betweenness(eg: &EgoNetwork) -> BigRational {
    let n = eg.size();
    if n < 2 {
        return BigRational::zero();
    }
    let adj: Vec<Vec<usize>> = eg
        .local_adjacency()
        .into_iter()
        .map(|l| l.into_iter().map(|(v, _)| v).collect())
        .collect();

    // by_connectors[k] = number of non-adjacent pairs with exactly k connectors.
    let mut by_connectors = vec![0u64; n + 1];
    let mut common = vec![0u32; n];
    let mut adjacent = vec![false; n];
    for a in 0..n {
        for &c in &adj[a] {
            adjacent[c] = true;
            for &b in &adj[c] {
                if b > a {
                    common[b] += 1;
                }
            }
        }
        for b in a + 1..n {
            if !adjacent[b] {
                by_connectors[common[b] as usize + 1] += 1;
            }
        }
        for &c in &adj[a] {
            adjacent[c] = false;
            for &b in &adj[c] {
                common[b] = 0;
            }
        }
    }

    by_connectors
        .iter()
        .enumerate()
        .filter(|&(_, &count)| count > 0)
        .fold(BigRational::zero(), |acc, (k, &count)| acc + ratio(count, k as u64))
}

/// h-operator over the alters' h-indices.
pub fn power_diversity(alter_h: &[u32]) -> u32 {
    h_index(alter_h)
}

/// h-operator over power-strengths `alter_h[j] * tie_w[j]`.
pub fn power_tie_diversity(alter_h: &[u32], tie_w: &[u32]) -> Result<u32, MetricsError> {
    if alter_h.len() != tie_w.len() {
        return Err(MetricsError::LengthMismatch {
            left: alter_h.len(),
            right: tie_w.len(),
        });
    }
    let power_strength: Vec<u64> = alter_h
        .iter()
        .zip(tie_w)
        .map(|(&h, &w)| u64::from(h) * u64::from(w))
        .collect();
    Ok(h_index(&power_strength))
}

/// Metrics for one ego given every author's h-index.
pub fn ego_metrics(
    eg: &EgoNetwork,
    profile: &AuthorProfile,
    h_indices: &[u32],
    variant: EffectivenessVariant,
) -> AuthorMetrics {
    let (degree, weighted_degree, avg_tie_strength) = tie_strength(eg);
    let alter_h: Vec<u32> = eg.alters.iter().map(|a| h_indices[a.index()]).collect();
    AuthorMetrics {
        author_id: eg.ego,
        citation_count: citation_count(profile),
        h_index: h_indices[eg.ego.index()],
        degree,
        weighted_degree,
        avg_tie_strength,
        effectiveness: effectiveness(eg, variant),
        ego_betweenness: ego_betweenness(eg),
        power_diversity: power_diversity(&alter_h),
        power_tie_diversity: power_tie_diversity(&alter_h, &eg.ego_ties).expect("ego ties are aligned with alters"),
    }
}

pub fn compute_all(corpus: &Corpus, g: &CoauthorGraph) -> Vec<AuthorMetrics> {
    compute_all_with(corpus, g, EffectivenessVariant::Binary)
}

/// One row per author, ordered by author id.
///
/// # Panics
///
/// If `g` was not built from `corpus` (node count differs).
pub fn compute_all_with(corpus: &Corpus, g: &CoauthorGraph, variant: EffectivenessVariant) -> Vec<AuthorMetrics> {
    assert_eq!(
        corpus.num_authors(),
        g.node_count(),
        "graph and corpus disagree on the number of authors"
    );
    let h_indices: Vec<u32> = corpus.authors.iter().map(|a| h_index(&a.citation_vector)).collect();
    corpus
        .authors
        .par_iter()
        .map(|profile| {
            let eg = g.ego_network(profile.author_id).expect("author id within graph");
            ego_metrics(&eg, profile, &h_indices, variant)
        })
        .collect()
}
