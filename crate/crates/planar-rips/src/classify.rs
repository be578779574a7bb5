//! Structural verdicts: cross-polytope detection, decomposition of a
//! complex into octahedral components glued at shared pieces, wedge
//! summaries, and the cloud-level verifiers tying those shapes to the
//! homology of the built complex.

use serde::Serialize;

use crate::complex::{ComplexError, FlagComplex};
use crate::homology::{betti_numbers, Field};
use crate::rips::{
    build_rips, count_octahedra, intersecting_edge_pairs, PointCloud, ThresholdMode,
};

/// The intersection of two chain components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SharedPiece {
    Vertex(usize),
    Edge(usize, usize),
}

/// A complex expressed as cross-polytope components glued pairwise along
/// single shared pieces, no three components meeting pairwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainDecomposition {
    /// Sorted vertex set of each strongly connected component; each induces
    /// a cross-polytope of dimension `n`.
    pub components: Vec<Vec<usize>>,
    /// Edges of the component-intersection multigraph: `(i, j, piece)` with
    /// i < j means components i and j share exactly `piece`.
    pub intersections: Vec<(usize, usize, SharedPiece)>,
    pub n: usize,
}

/// Homotopy-type summary of a decomposition: `m` spheres of dimension `n`
/// and `p` circles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WedgeSummary {
    pub m: usize,
    pub p: usize,
    pub n: usize,
}

/// Outcome of a decomposition attempt on a pure complex: either a valid
/// decomposition or the first structural reason none exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainOutcome {
    Chain(ChainDecomposition),
    NotChain { reason: String },
}

/// `Some(n)` iff the complex is the boundary complex of an
/// (n+1)-dimensional cross-polytope: an even number of vertices whose
/// complement graph is a perfect matching (every vertex non-adjacent to
/// exactly one other). The octahedron returns 2.
pub fn detect_cross_polytope(k: &FlagComplex) -> Option<usize> {
    let g = k.skeleton_1();
    let n = g.n();
    if n == 0 || n % 2 != 0 {
        return None;
    }
    (0..n).all(|v| g.degree(v) == n - 2).then(|| n / 2 - 1)
}

/// Decomposes a pure complex of dimension >= 2 into its strongly connected
/// components and validates the gluing pattern: every component a
/// cross-polytope of the full dimension, pairwise intersections a single
/// vertex (or a single edge when the dimension exceeds 2), and no three
/// components meeting pairwise.
pub fn decompose_iterated_chain(k: &FlagComplex) -> Result<ChainOutcome, ComplexError> {
    let n = k.pure_dimension()?.ok_or(ComplexError::NotPure)?;
    if n < 2 {
        return Err(ComplexError::DimensionTooSmall {
            required: 2,
            actual: n,
        });
    }
    let facets = k.facets();
    let mut components: Vec<Vec<usize>> = Vec::new();
    for group in k.strongly_connected_components()? {
        let mut vs: Vec<usize> = group
            .iter()
            .flat_map(|&i| facets[i].vertices().iter().copied())
            .collect();
        vs.sort_unstable();
        vs.dedup();
        components.push(vs);
    }
    for (i, vs) in components.iter().enumerate() {
        let (sub, _) = k.induced_subcomplex(vs)?;
        if detect_cross_polytope(&sub) != Some(n) {
            return Ok(ChainOutcome::NotChain {
                reason: format!(
                    "component {i} ({} vertices) does not induce a cross-polytope of dimension {n}",
                    vs.len()
                ),
            });
        }
    }
    let m = components.len();
    let mut meets = vec![vec![false; m]; m];
    let mut intersections = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            let shared: Vec<usize> = components[i]
                .iter()
                .copied()
                .filter(|v| components[j].binary_search(v).is_ok())
                .collect();
            let piece = match shared.len() {
                0 => continue,
                1 => SharedPiece::Vertex(shared[0]),
                2 if n > 2 && k.skeleton_1().has_edge(shared[0], shared[1]) => {
                    SharedPiece::Edge(shared[0], shared[1])
                }
                2 if n > 2 => {
                    return Ok(ChainOutcome::NotChain {
                        reason: format!(
                            "components {i} and {j} share two non-adjacent vertices"
                        ),
                    });
                }
                len => {
                    return Ok(ChainOutcome::NotChain {
                        reason: format!(
                            "components {i} and {j} share {len} vertices; at dimension {n} \
                             only a single {} is allowed",
                            if n > 2 { "vertex or edge" } else { "vertex" }
                        ),
                    });
                }
            };
            meets[i][j] = true;
            intersections.push((i, j, piece));
        }
    }
    for a in 0..m {
        for b in (a + 1)..m {
            if !meets[a][b] {
                continue;
            }
            for c in (b + 1)..m {
                if (meets[a][c] || meets[c][a]) && (meets[b][c] || meets[c][b]) {
                    return Ok(ChainOutcome::NotChain {
                        reason: format!("components {a}, {b}, {c} intersect pairwise"),
                    });
                }
            }
        }
    }
    Ok(ChainOutcome::Chain(ChainDecomposition {
        components,
        intersections,
        n,
    }))
}

/// Sphere and circle counts of a decomposition: m components, p the cycle
/// rank E - V + C of the component-intersection multigraph.
pub fn wedge_summary(d: &ChainDecomposition) -> WedgeSummary {
    let m = d.components.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(i, j, _) in &d.intersections {
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        parent[ri] = rj;
    }
    let c = (0..m).filter(|&x| find(&mut parent, x) == x).count();
    let p = d.intersections.len() + c - m;
    // A cycle in the intersection graph has length >= 4: length 2 needs two
    // shared pieces between one pair, length 3 a pairwise-meeting triple.
    debug_assert!(p == 0 || m > 3);
    WedgeSummary { m, p, n: d.n }
}

/// Verdict of a cloud-level verifier. A vacuous pass means the built
/// complex did not satisfy the hypothesis being verified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum TheoremVerdict {
    Consistent {
        vacuous: bool,
        /// Wedge summary when the chain verifier produced a decomposition.
        wedge: Option<WedgeSummary>,
    },
    Counterexample {
        reason: String,
    },
}

impl TheoremVerdict {
    fn vacuous() -> Self {
        TheoremVerdict::Consistent {
            vacuous: true,
            wedge: None,
        }
    }

    pub fn is_consistent(&self) -> bool {
        matches!(self, TheoremVerdict::Consistent { .. })
    }

    pub fn is_vacuous(&self) -> bool {
        matches!(
            self,
            TheoremVerdict::Consistent { vacuous: true, .. }
        )
    }
}

fn pure_dim_at_least(k: &FlagComplex, min: usize) -> Option<usize> {
    k.pure_dimension().ok().flatten().filter(|&d| d >= min)
}

/// If the built complex is a pseudomanifold of dimension >= 2, it must be a
/// cross-polytope of that dimension.
pub fn verify_sphere_theorem(cloud: &PointCloud, mode: ThresholdMode) -> TheoremVerdict {
    let k = build_rips(cloud, mode);
    let Some(n) = pure_dim_at_least(&k, 2) else {
        return TheoremVerdict::vacuous();
    };
    if !k.is_pseudomanifold().expect("pure of dimension >= 2") {
        return TheoremVerdict::vacuous();
    }
    match detect_cross_polytope(&k) {
        Some(d) if d == n => TheoremVerdict::Consistent {
            vacuous: false,
            wedge: None,
        },
        got => TheoremVerdict::Counterexample {
            reason: format!(
                "pseudomanifold of dimension {n} but cross-polytope detection returned {got:?}"
            ),
        },
    }
}

/// If the built complex is a weak pseudomanifold of dimension >= 2, it must
/// decompose into glued cross-polytopes with b_n = m and b_1 = p over GF(2).
pub fn verify_chain_theorem(cloud: &PointCloud, mode: ThresholdMode) -> TheoremVerdict {
    let k = build_rips(cloud, mode);
    let Some(n) = pure_dim_at_least(&k, 2) else {
        return TheoremVerdict::vacuous();
    };
    if !k.is_weak_pseudomanifold().expect("pure of dimension >= 2") {
        return TheoremVerdict::vacuous();
    }
    match decompose_iterated_chain(&k).expect("pure of dimension >= 2") {
        ChainOutcome::Chain(d) => {
            let w = wedge_summary(&d);
            let betti = betti_numbers(&k, Field::Gf2);
            let bn = betti.b.get(n).copied().unwrap_or(0);
            let b1 = betti.b.get(1).copied().unwrap_or(0);
            if bn == w.m && b1 == w.p {
                TheoremVerdict::Consistent {
                    vacuous: false,
                    wedge: Some(w),
                }
            } else {
                TheoremVerdict::Counterexample {
                    reason: format!(
                        "decomposition gives (m, p) = ({}, {}) but homology gives b_{n} = {bn}, b_1 = {b1}",
                        w.m, w.p
                    ),
                }
            }
        }
        ChainOutcome::NotChain { reason } => TheoremVerdict::Counterexample {
            reason: format!("weak pseudomanifold admits no chain decomposition: {reason}"),
        },
    }
}

/// If the built complex is pure 2-dimensional and closed, the octahedron
/// census must be nonempty, equal b_2 over GF(2), contain every
/// interior-crossing edge pair in exactly one copy, use every edge in at
/// most two copies, and cover every edge of facet-degree >= 3.
pub fn verify_census_theorem(cloud: &PointCloud, mode: ThresholdMode) -> TheoremVerdict {
    let k = build_rips(cloud, mode);
    if pure_dim_at_least(&k, 2) != Some(2) || !k.is_closed().expect("pure of dimension 2") {
        return TheoremVerdict::vacuous();
    }
    let (census, copies) = count_octahedra(&k);
    let b2 = betti_numbers(&k, Field::Gf2).b.get(2).copied().unwrap_or(0);
    if census == 0 || census != b2 {
        return TheoremVerdict::Counterexample {
            reason: format!("census found {census} octahedra but b_2 = {b2}"),
        };
    }
    for ((a, b), (c, d)) in intersecting_edge_pairs(cloud, &k) {
        let hits = copies
            .iter()
            .filter(|o| {
                [a, b, c, d]
                    .iter()
                    .all(|v| o.binary_search(v).is_ok())
            })
            .count();
        if hits != 1 {
            return TheoremVerdict::Counterexample {
                reason: format!(
                    "crossing pair ({a},{b}) x ({c},{d}) lies in {hits} census octahedra"
                ),
            };
        }
    }
    let facets = k.facets();
    for (u, v) in k.skeleton_1().edges() {
        let hits = copies
            .iter()
            .filter(|o| o.binary_search(&u).is_ok() && o.binary_search(&v).is_ok())
            .count();
        if hits > 2 {
            return TheoremVerdict::Counterexample {
                reason: format!("edge ({u},{v}) lies in {hits} census octahedra"),
            };
        }
        let facet_degree = facets
            .iter()
            .filter(|f| f.contains(u) && f.contains(v))
            .count();
        if facet_degree >= 3 && hits == 0 {
            return TheoremVerdict::Counterexample {
                reason: format!(
                    "edge ({u},{v}) has facet-degree {facet_degree} but lies in no census octahedron"
                ),
            };
        }
    }
    TheoremVerdict::Consistent {
        vacuous: false,
        wedge: None,
    }
}

/// Everything the library can say about one cloud, with stable field order
/// for serialization.
#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub vertices: usize,
    pub edges: usize,
    pub facets: usize,
    pub pure_dimension: Option<usize>,
    pub closed: bool,
    pub weak_pseudomanifold: bool,
    pub pseudomanifold: bool,
    pub normal_pseudomanifold: bool,
    pub cross_polytope: Option<usize>,
    pub chain: Option<ChainDecomposition>,
    pub chain_obstruction: Option<String>,
    pub wedge: Option<WedgeSummary>,
    pub octahedron_census: usize,
    pub census_copies: Vec<Vec<usize>>,
    /// Interior-crossing edge pairs; absent when the input carries no
    /// coordinates (a complex given without its cloud).
    pub crossing_pairs: Option<usize>,
    pub betti_gf2: Vec<usize>,
    pub betti_q: Vec<usize>,
    pub threshold_mode: String,
    pub provenance: Option<String>,
}

/// Builds the full report for one cloud. `provenance` is an opaque input
/// fingerprint supplied by the caller and echoed into the report.
pub fn classify_cloud(
    cloud: &PointCloud,
    mode: ThresholdMode,
    provenance: Option<String>,
) -> ClassificationReport {
    let k = build_rips(cloud, mode);
    let mut report = classify_complex(&k, &mode.to_string(), provenance);
    report.crossing_pairs = Some(intersecting_edge_pairs(cloud, &k).len());
    report
}

/// The combinatorial part of the report, for complexes given without
/// coordinates. `mode_label` is echoed into the report.
pub fn classify_complex(
    k: &FlagComplex,
    mode_label: &str,
    provenance: Option<String>,
) -> ClassificationReport {
    let pure_dimension = k.pure_dimension().ok().flatten();
    let (chain, chain_obstruction, wedge) = match pure_dimension {
        Some(n) if n >= 2 => match decompose_iterated_chain(k).expect("pure complex") {
            ChainOutcome::Chain(d) => {
                let w = wedge_summary(&d);
                (Some(d), None, Some(w))
            }
            ChainOutcome::NotChain { reason } => (None, Some(reason), None),
        },
        _ => (None, None, None),
    };
    let (octahedron_census, census_copies) = count_octahedra(k);
    let report = ClassificationReport {
        vertices: k.n(),
        edges: k.skeleton_1().edge_count(),
        facets: k.facets().len(),
        pure_dimension,
        closed: k.is_closed().unwrap_or(false),
        weak_pseudomanifold: k.is_weak_pseudomanifold().unwrap_or(false),
        pseudomanifold: k.is_pseudomanifold().unwrap_or(false),
        normal_pseudomanifold: k.is_normal_pseudomanifold().unwrap_or(false),
        cross_polytope: detect_cross_polytope(k),
        chain,
        chain_obstruction,
        wedge,
        octahedron_census,
        census_copies,
        crossing_pairs: None,
        betti_gf2: betti_numbers(k, Field::Gf2).b,
        betti_q: betti_numbers(k, Field::Q).b,
        threshold_mode: mode_label.to_string(),
        provenance,
    };
    debug_assert!(!report.pseudomanifold || report.weak_pseudomanifold);
    debug_assert!(!report.normal_pseudomanifold || report.pseudomanifold);
    report
}
