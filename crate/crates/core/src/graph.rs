//! Weighted undirected co-authorship graph and ego-network extraction.

use std::fmt;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::ingest::Corpus;

/// Dense author index, assigned in lexicographic order of canonical name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AuthorId(pub u32);

impl AuthorId {
    pub fn from_index(idx: usize) -> Self {
        AuthorId(u32::try_from(idx).expect("author index exceeds u32"))
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for AuthorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown author id {0}")]
    UnknownAuthor(AuthorId),
    #[error("self-loop on author {0}")]
    SelfLoop(AuthorId),
    #[error("edge ({0}, {1}) has zero weight")]
    ZeroWeight(AuthorId, AuthorId),
}

/// Undirected graph with positive integer edge weights, stored as sorted adjacency lists.
///
/// `weight(u, v)` is the number of distinct publications listing both `u` and `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoauthorGraph {
    adjacency: Vec<Vec<(AuthorId, u32)>>,
}

impl CoauthorGraph {
    /// Every unordered pair of distinct authors on a publication gains one unit of weight.
    pub fn build(corpus: &Corpus) -> Self {
        let mut half_edges: Vec<Vec<AuthorId>> = vec![Vec::new(); corpus.num_authors()];
        for ids in &corpus.publication_authors {
            for (i, &u) in ids.iter().enumerate() {
                for &v in &ids[i + 1..] {
                    half_edges[u.index()].push(v);
                    half_edges[v.index()].push(u);
                }
            }
        }
        let adjacency = half_edges.into_iter().map(collapse_sorted).collect();
        CoauthorGraph { adjacency }
    }

    /// Builds a graph from explicit weighted edges; repeated pairs accumulate their weights.
    pub fn from_edges(n: usize, edges: &[(AuthorId, AuthorId, u32)]) -> Result<Self, GraphError> {
        let mut adjacency: Vec<Vec<(AuthorId, u32)>> = vec![Vec::new(); n];
        for &(u, v, w) in edges {
            for id in [u, v] {
                if id.index() >= n {
                    return Err(GraphError::UnknownAuthor(id));
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if w == 0 {
                return Err(GraphError::ZeroWeight(u, v));
            }
            adjacency[u.index()].push((v, w));
            adjacency[v.index()].push((u, w));
        }
        for list in &mut adjacency {
            list.sort_unstable_by_key(|&(v, _)| v);
            list.dedup_by(|next, kept| {
                if next.0 == kept.0 {
                    kept.1 += next.1;
                    true
                } else {
                    false
                }
            });
        }
        Ok(CoauthorGraph { adjacency })
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Neighbors of `u` with edge weights, ascending by id.
    pub fn neighbors(&self, u: AuthorId) -> &[(AuthorId, u32)] {
        &self.adjacency[u.index()]
    }

    pub fn degree(&self, u: AuthorId) -> usize {
        self.adjacency[u.index()].len()
    }

    pub fn weighted_degree(&self, u: AuthorId) -> u64 {
        self.adjacency[u.index()].iter().map(|&(_, w)| u64::from(w)).sum()
    }

    /// Weight of the `u`–`v` edge, or `None` if they never co-authored.
    pub fn weight(&self, u: AuthorId, v: AuthorId) -> Option<u32> {
        let list = self.adjacency.get(u.index())?;
        list.binary_search_by_key(&v, |&(x, _)| x).ok().map(|i| list[i].1)
    }

    /// All edges as `(src, dst, weight)` with `src < dst`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (AuthorId, AuthorId, u32)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            let u = AuthorId::from_index(u);
            list.iter().filter(move |&&(v, _)| u < v).map(move |&(v, w)| (u, v, w))
        })
    }

    /// Writes the `src,dst,weight` edge list.
    pub fn write_edge_list<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut wtr = csv::Writer::from_writer(out);
        wtr.write_record(["src", "dst", "weight"])?;
        for (u, v, w) in self.edges() {
            wtr.write_record([u.to_string(), v.to_string(), w.to_string()])?;
        }
        wtr.flush()?;
        Ok(())
    }

    pub fn ego_network(&self, ego: AuthorId) -> Result<EgoNetwork, GraphError> {
        if ego.index() >= self.node_count() {
            return Err(GraphError::UnknownAuthor(ego));
        }
        let ego_list = self.neighbors(ego);
        let alters: Vec<AuthorId> = ego_list.iter().map(|&(v, _)| v).collect();
        let ego_ties: Vec<u32> = ego_list.iter().map(|&(_, w)| w).collect();

        let mut alter_ties = Vec::new();
        for (i, &a) in alters.iter().enumerate() {
            // Both lists are sorted, so a merge walk finds the alters adjacent to `a` above it.
            let rest = &alters[i + 1..];
            let mut j = 0;
            for &(b, w) in self.neighbors(a) {
                if b <= a {
                    continue;
                }
                while j < rest.len() && rest[j] < b {
                    j += 1;
                }
                if j == rest.len() {
                    break;
                }
                if rest[j] == b {
                    alter_ties.push((a, b, w));
                }
            }
        }
        Ok(EgoNetwork {
            ego,
            alters,
            ego_ties,
            alter_ties,
        })
    }
}

/// Sorted ids with repeats become `(id, multiplicity)` pairs.
fn collapse_sorted(mut ids: Vec<AuthorId>) -> Vec<(AuthorId, u32)> {
    ids.sort_unstable();
    let mut out: Vec<(AuthorId, u32)> = Vec::new();
    for id in ids {
        match out.last_mut() {
            Some((last, w)) if *last == id => *w += 1,
            _ => out.push((id, 1)),
        }
    }
    out
}

/// An ego, its alters, and the weighted ties among them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EgoNetwork {
    pub ego: AuthorId,
    /// Ascending by id.
    pub alters: Vec<AuthorId>,
    /// `ego_ties[i]` is the weight of the ego–`alters[i]` tie.
    pub ego_ties: Vec<u32>,
    /// Alter–alter edges `(a, b, w)` with `a < b`, sorted.
    pub alter_ties: Vec<(AuthorId, AuthorId, u32)>,
}

impl EgoNetwork {
    pub fn size(&self) -> usize {
        self.alters.len()
    }

    /// Position of `id` within `alters`.
    pub fn local_index(&self, id: AuthorId) -> Option<usize> {
        self.alters.binary_search(&id).ok()
    }

    /// Alter–alter adjacency in local indices, each list ascending.
    pub fn local_adjacency(&self) -> Vec<Vec<(usize, u32)>> {
        let mut adj = vec![Vec::new(); self.alters.len()];
        for &(a, b, w) in &self.alter_ties {
            let (ia, ib) = (self.local_index(a).unwrap(), self.local_index(b).unwrap());
            adj[ia].push((ib, w));
            adj[ib].push((ia, w));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }
}
