//! Graphs that cannot occur as the adjacency graph of distinct planar points
//! at unit threshold, and an exact induced-subgraph search against them.
//!
//! Because realizability is inherited by induced subgraphs (restrict the
//! point set), any graph *containing* a catalog entry as an induced subgraph
//! is itself unrealizable. The catalog carries a status per entry: some
//! entries are minimal (every proper induced subgraph is realizable), others
//! are merely known to be forbidden.

use crate::complex::Graph;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ObstructionError {
    #[error("{family} requires k >= {min}, got {got}")]
    ParameterBelowBound {
        family: &'static str,
        min: usize,
        got: usize,
    },
}

/// Whether an entry is known minimal or only known forbidden.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObstructionStatus {
    /// Every proper induced subgraph is realizable (certified at desk scale
    /// by the numerical realizer for entries small enough to audit).
    ProvenMinimal,
    /// Known unrealizable, minimality not established.
    ForbiddenNotNecessarilyMinimal,
}

impl std::fmt::Display for ObstructionStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ObstructionStatus::ProvenMinimal => write!(f, "proven-minimal"),
            ObstructionStatus::ForbiddenNotNecessarilyMinimal => {
                write!(f, "forbidden-not-necessarily-minimal")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub id: String,
    pub graph: Graph,
    /// Where the graph comes from, as a human-readable construction note.
    pub provenance: String,
    pub status: ObstructionStatus,
}

/// Complement of the disjoint union `K2 ⊔ C_{2k+1}`, i.e. the join of two
/// isolated vertices with the complement of an odd cycle. For `k = 1` this
/// is `K_{2,3}`; for `k = 2` it is the 1-skeleton of the suspension of a
/// pentagon. Defined for `k >= 1`.
pub fn gen_complement_k2_plus_odd_cycle(k: usize) -> Result<Graph, ObstructionError> {
    if k < 1 {
        return Err(ObstructionError::ParameterBelowBound {
            family: "complement(K2 + C_{2k+1})",
            min: 1,
            got: k,
        });
    }
    Ok(Graph::complete(2)
        .disjoint_union(&Graph::cycle(2 * k + 1))
        .complement())
}

/// Complement of the even cycle `C_{2k}`. Defined for `k >= 4`.
pub fn gen_complement_even_cycle(k: usize) -> Result<Graph, ObstructionError> {
    if k < 4 {
        return Err(ObstructionError::ParameterBelowBound {
            family: "complement(C_{2k})",
            min: 4,
            got: k,
        });
    }
    Ok(Graph::cycle(2 * k).complement())
}

/// The even cycle `C_{2k}` with each of its two maximal independent sets
/// (the size-`k` alternating classes) completed to a clique. Defined for
/// `k >= 4`.
pub fn gen_cstar(k: usize) -> Result<Graph, ObstructionError> {
    if k < 4 {
        return Err(ObstructionError::ParameterBelowBound {
            family: "C*_{2k}",
            min: 4,
            got: k,
        });
    }
    let n = 2 * k;
    let mut g = Graph::cycle(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if u % 2 == v % 2 {
                g.add_edge(u, v).expect("indices in range");
            }
        }
    }
    Ok(g)
}

fn star_k16() -> Graph {
    Graph::from_edges(7, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6)])
        .expect("valid edge list")
}

/// Seven-vertex graph on vertices A..G (as 0..6) obtained by restricting an
/// 11-vertex flag triangulation of the projective plane to seven of its
/// vertices. Its distinguishing adjacency facts: A is joined to all of
/// B, D, E, F, G, while E≁B, C≁F and F≁G.
fn rp2_7() -> Graph {
    Graph::from_edges(
        7,
        &[
            (0, 1), // AB
            (0, 3), // AD
            (0, 4), // AE
            (0, 5), // AF
            (0, 6), // AG
            (1, 2), // BC
            (1, 5), // BF
            (1, 6), // BG
            (2, 3), // CD
            (2, 4), // CE
            (3, 4), // DE
            (3, 6), // DG
            (4, 5), // EF
        ],
    )
    .expect("valid edge list")
    .with_labels(
        ["A", "B", "C", "D", "E", "F", "G"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
    )
    .expect("seven labels for seven vertices")
}

/// The built-in obstruction catalog, in search order.
pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            id: "k16".to_string(),
            graph: star_k16(),
            provenance: "star with six leaves; six points within unit distance of a common \
                         center include two within sixty degrees of each other, hence within \
                         unit distance"
                .to_string(),
            status: ObstructionStatus::ForbiddenNotNecessarilyMinimal,
        },
        CatalogEntry {
            id: "comp-k2c3".to_string(),
            graph: gen_complement_k2_plus_odd_cycle(1).expect("k = 1 is in range"),
            provenance: "complement of K2 ⊔ C3, isomorphic to K_{2,3}; smallest member of the \
                         complement-of-(K2 ⊔ odd cycle) family"
                .to_string(),
            status: ObstructionStatus::ProvenMinimal,
        },
        CatalogEntry {
            id: "comp-k2c5".to_string(),
            graph: gen_complement_k2_plus_odd_cycle(2).expect("k = 2 is in range"),
            provenance: "complement of K2 ⊔ C5; the 1-skeleton of the suspension of a pentagon"
                .to_string(),
            status: ObstructionStatus::ProvenMinimal,
        },
        CatalogEntry {
            id: "comp-c8".to_string(),
            graph: gen_complement_even_cycle(4).expect("k = 4 is in range"),
            provenance: "complement of the even cycle C8".to_string(),
            status: ObstructionStatus::ProvenMinimal,
        },
        CatalogEntry {
            id: "comp-c10".to_string(),
            graph: gen_complement_even_cycle(5).expect("k = 5 is in range"),
            provenance: "complement of the even cycle C10".to_string(),
            status: ObstructionStatus::ProvenMinimal,
        },
        CatalogEntry {
            id: "cstar-8".to_string(),
            graph: gen_cstar(4).expect("k = 4 is in range"),
            provenance: "C8 with each of its two alternating independent 4-sets completed to a \
                         clique"
                .to_string(),
            status: ObstructionStatus::ProvenMinimal,
        },
        CatalogEntry {
            id: "rp2-7".to_string(),
            graph: rp2_7(),
            provenance: "seven-vertex restriction of an 11-vertex flag triangulation of the \
                         projective plane; minimality checked by certifying every one-vertex \
                         deletion realizable"
                .to_string(),
            status: ObstructionStatus::ProvenMinimal,
        },
    ]
}

/// Exact search for an induced copy of `pattern` inside `host`.
///
/// Pattern vertices are assigned in index order, candidate host vertices in
/// increasing order, with degree and adjacency-consistency pruning, so the
/// first complete assignment found is the lexicographically smallest
/// embedding vector. Returns `emb` with `emb[p]` the host vertex playing
/// pattern vertex `p`.
fn find_induced_embedding(host: &Graph, pattern: &Graph) -> Option<Vec<usize>> {
    let hn = host.n();
    let pn = pattern.n();
    if pn > hn {
        return None;
    }
    let pdeg: Vec<usize> = (0..pn).map(|v| pattern.degree(v)).collect();
    let hdeg: Vec<usize> = (0..hn).map(|v| host.degree(v)).collect();
    let mut emb: Vec<usize> = Vec::with_capacity(pn);
    let mut used = vec![false; hn];

    // Iterative backtracking: `emb` holds the partial assignment, `next[d]`
    // the host candidate to try next at depth d.
    let mut next = vec![0usize; pn + 1];
    loop {
        let d = emb.len();
        if d == pn {
            return Some(emb);
        }
        let mut advanced = false;
        while next[d] < hn {
            let h = next[d];
            next[d] += 1;
            if used[h] || hdeg[h] < pdeg[d] {
                continue;
            }
            let consistent = (0..d).all(|p| host.has_edge(h, emb[p]) == pattern.has_edge(d, p));
            if consistent {
                used[h] = true;
                emb.push(h);
                next[d + 1] = 0;
                advanced = true;
                break;
            }
        }
        if !advanced {
            match emb.pop() {
                Some(h) => used[h] = false,
                None => return None,
            }
        }
    }
}

/// Search `g` for an induced copy of any entry in the built-in catalog.
/// Returns the id of the first entry hit (in catalog order) together with
/// the lexicographically smallest embedding.
pub fn find_obstruction(g: &Graph) -> Option<(String, Vec<usize>)> {
    find_obstruction_with(g, &catalog())
}

/// Same search against a caller-supplied entry list (e.g. the built-in
/// catalog merged with user extensions).
pub fn find_obstruction_with(g: &Graph, entries: &[CatalogEntry]) -> Option<(String, Vec<usize>)> {
    for entry in entries {
        if let Some(emb) = find_induced_embedding(g, &entry.graph) {
            return Some((entry.id.clone(), emb));
        }
    }
    None
}

/// Fast special case: a vertex whose neighborhood contains an independent
/// set of size six. Returns `[center, leaf1, .., leaf6]` with leaves in
/// increasing order, smallest center first.
pub fn contains_induced_k16(g: &Graph) -> Option<Vec<usize>> {
    for center in 0..g.n() {
        let nbrs = g.neighbors(center);
        if nbrs.len() < 6 {
            continue;
        }
        let mut chosen: Vec<usize> = Vec::with_capacity(6);
        if pick_independent(g, &nbrs, 0, &mut chosen) {
            let mut emb = vec![center];
            emb.extend_from_slice(&chosen);
            return Some(emb);
        }
    }
    None
}

fn pick_independent(g: &Graph, pool: &[usize], from: usize, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == 6 {
        return true;
    }
    for i in from..pool.len() {
        let v = pool[i];
        if chosen.iter().all(|&u| !g.has_edge(u, v)) {
            chosen.push(v);
            if pick_independent(g, pool, i + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}
