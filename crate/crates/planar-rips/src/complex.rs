//! Flag simplicial complexes represented by their 1-skeleton.
//!
//! A flag complex is determined by its graph: the faces are exactly the
//! cliques. Complexes are stored as a graph plus a lazily computed list of
//! facets (maximal cliques), which suffices for links, induced subcomplexes,
//! purity, and the pseudomanifold predicates.

use std::collections::HashMap;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("vertex {v} out of range for graph with {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("expected {n} labels, got {got}")]
    LabelCountMismatch { n: usize, got: usize },
    #[error("simplex {0:?} is not a face of the complex")]
    NotAFace(Vec<usize>),
    #[error("complex has no vertices")]
    EmptyComplex,
    #[error("complex is not pure")]
    NotPure,
    #[error("predicate requires pure dimension >= {required}, complex has dimension {actual}")]
    DimensionTooSmall { required: usize, actual: usize },
}

/// Simple undirected graph on vertices `0..n`, stored as a dense symmetric
/// adjacency matrix. No self-loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            adj: vec![false; n * n],
            labels: None,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, ComplexError> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, ComplexError> {
        if labels.len() != self.n {
            return Err(ComplexError::LabelCountMismatch {
                n: self.n,
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    fn check_vertex(&self, v: usize) -> Result<(), ComplexError> {
        if v >= self.n {
            return Err(ComplexError::VertexOutOfRange { v, n: self.n });
        }
        Ok(())
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), ComplexError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(ComplexError::SelfLoop(u));
        }
        self.adj[u * self.n + v] = true;
        self.adj[v * self.n + u] = true;
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u * self.n + v]
    }

    /// Edges as sorted pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.adj[u * self.n + v] {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&b| b).count() / 2
    }

    pub fn degree(&self, u: usize) -> usize {
        (0..self.n).filter(|&v| self.has_edge(u, v)).count()
    }

    pub fn neighbors(&self, u: usize) -> Vec<usize> {
        (0..self.n).filter(|&v| self.has_edge(u, v)).collect()
    }

    /// Complement graph (same vertices, inverted adjacency, still loop-free).
    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v).expect("valid vertices");
                }
            }
        }
        g.labels = self.labels.clone();
        g
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::new(self.n + other.n);
        for (u, v) in self.edges() {
            g.add_edge(u, v).expect("valid");
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n).expect("valid");
        }
        g
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_edge(u, v).expect("valid");
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::new(n);
        if n == 2 {
            g.add_edge(0, 1).expect("valid");
            return g;
        }
        for u in 0..n {
            g.add_edge(u, (u + 1) % n).expect("valid");
        }
        g
    }

    /// Complete multipartite graph with consecutive vertex blocks of the
    /// given sizes (e.g. `&[2, 2, 2]` is the octahedron 1-skeleton).
    pub fn complete_multipartite(part_sizes: &[usize]) -> Graph {
        let n: usize = part_sizes.iter().sum();
        let mut part = vec![0usize; n];
        let mut v = 0;
        for (pi, &sz) in part_sizes.iter().enumerate() {
            for _ in 0..sz {
                part[v] = pi;
                v += 1;
            }
        }
        let mut g = Graph::new(n);
        for u in 0..n {
            for w in (u + 1)..n {
                if part[u] != part[w] {
                    g.add_edge(u, w).expect("valid");
                }
            }
        }
        g
    }

    /// Whether the graph is connected (vacuously true for 0 or 1 vertices).
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for v in 0..self.n {
                if self.has_edge(u, v) && !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }
}

/// A simplex: a sorted, duplicate-free list of vertex ids. Its dimension is
/// one less than its cardinality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Simplex(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        debug_assert!(!self.0.is_empty(), "the empty simplex has no dimension");
        self.0.len() - 1
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Number of shared vertices with another simplex.
    pub fn intersection_size(&self, other: &Simplex) -> usize {
        self.0.iter().filter(|v| other.contains(**v)).count()
    }

    /// The faces of codimension one (each obtained by dropping one vertex).
    pub fn boundary_faces(&self) -> Vec<Simplex> {
        (0..self.0.len())
            .map(|i| {
                let mut v = self.0.clone();
                v.remove(i);
                Simplex(v)
            })
            .collect()
    }
}

/// A flag complex: the clique complex of its 1-skeleton graph. Facets are
/// the maximal cliques, computed once on first use.
#[derive(Clone, Debug)]
pub struct FlagComplex {
    graph: Graph,
    facets: OnceLock<Vec<Simplex>>,
}

/// The clique complex of a graph (every clique is a face).
pub fn clique_complex(graph: Graph) -> FlagComplex {
    FlagComplex {
        graph,
        facets: OnceLock::new(),
    }
}

impl FlagComplex {
    /// The underlying 1-skeleton. `clique_complex(k.skeleton_1())` has the
    /// same facets as `k`.
    pub fn skeleton_1(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n
    }

    /// Maximal cliques of the skeleton, in lexicographic order.
    pub fn facets(&self) -> &[Simplex] {
        self.facets.get_or_init(|| maximal_cliques(&self.graph))
    }

    /// Whether `s` is a face, i.e. a clique of the skeleton.
    pub fn is_face(&self, s: &Simplex) -> bool {
        let vs = s.vertices();
        if vs.is_empty() || vs.iter().any(|&v| v >= self.graph.n) {
            return false;
        }
        for i in 0..vs.len() {
            for j in (i + 1)..vs.len() {
                if !self.graph.has_edge(vs[i], vs[j]) {
                    return false;
                }
            }
        }
        true
    }

    /// Link of a face: the induced complex on the common neighborhood of its
    /// vertices. Returns the complex on remapped ids together with the map
    /// from new ids to original ids.
    pub fn link(&self, s: &Simplex) -> Result<(FlagComplex, Vec<usize>), ComplexError> {
        if !self.is_face(s) {
            return Err(ComplexError::NotAFace(s.vertices().to_vec()));
        }
        let common: Vec<usize> = (0..self.graph.n)
            .filter(|&v| s.vertices().iter().all(|&sv| self.graph.has_edge(v, sv)))
            .collect();
        self.induced_subcomplex(&common)
    }

    /// The flag complex of the induced subgraph on `u`. Vertices are
    /// remapped to `0..u.len()` in sorted order; the returned map sends new
    /// ids to original ids.
    pub fn induced_subcomplex(
        &self,
        u: &[usize],
    ) -> Result<(FlagComplex, Vec<usize>), ComplexError> {
        let mut vertex_map: Vec<usize> = u.to_vec();
        vertex_map.sort_unstable();
        vertex_map.dedup();
        if let Some(&v) = vertex_map.iter().find(|&&v| v >= self.graph.n) {
            return Err(ComplexError::VertexOutOfRange { v, n: self.graph.n });
        }
        let mut g = Graph::new(vertex_map.len());
        for i in 0..vertex_map.len() {
            for j in (i + 1)..vertex_map.len() {
                if self.graph.has_edge(vertex_map[i], vertex_map[j]) {
                    g.add_edge(i, j).expect("valid");
                }
            }
        }
        if let Some(labels) = &self.graph.labels {
            let sub: Vec<String> = vertex_map.iter().map(|&v| labels[v].clone()).collect();
            g = g.with_labels(sub).expect("matching length");
        }
        Ok((clique_complex(g), vertex_map))
    }

    /// If all facets share one cardinality, `Some(dimension)`; otherwise
    /// `None`. Errors on the complex with no vertices.
    pub fn pure_dimension(&self) -> Result<Option<usize>, ComplexError> {
        if self.graph.n == 0 {
            return Err(ComplexError::EmptyComplex);
        }
        let facets = self.facets();
        let d = facets[0].dim();
        Ok(facets.iter().all(|f| f.dim() == d).then_some(d))
    }

    pub fn is_pure(&self) -> Result<bool, ComplexError> {
        Ok(self.pure_dimension()?.is_some())
    }

    fn require_pure_dim(&self, min_dim: usize) -> Result<usize, ComplexError> {
        let dim = self.pure_dimension()?.ok_or(ComplexError::NotPure)?;
        if dim < min_dim {
            return Err(ComplexError::DimensionTooSmall {
                required: min_dim,
                actual: dim,
            });
        }
        Ok(dim)
    }

    /// Facet-degree of every codimension-one face, as a map from face to the
    /// number of facets containing it.
    fn ridge_degrees(&self) -> HashMap<Simplex, usize> {
        let mut deg: HashMap<Simplex, usize> = HashMap::new();
        for f in self.facets() {
            for r in f.boundary_faces() {
                *deg.entry(r).or_insert(0) += 1;
            }
        }
        deg
    }

    /// Pure complex of dimension n >= 1 where every (n-1)-face lies in at
    /// least two facets.
    pub fn is_closed(&self) -> Result<bool, ComplexError> {
        self.require_pure_dim(1)?;
        Ok(self.ridge_degrees().values().all(|&d| d >= 2))
    }

    /// Connected components of the facet-adjacency graph (facets adjacent
    /// when they share a codimension-one face), as sorted lists of facet
    /// indices. Requires purity. Dimension-0 facets are pairwise
    /// non-adjacent.
    pub fn strongly_connected_components(&self) -> Result<Vec<Vec<usize>>, ComplexError> {
        let dim = self.require_pure_dim(0)?;
        let facets = self.facets();
        let m = facets.len();
        let mut comp = vec![usize::MAX; m];
        let mut count = 0;
        for start in 0..m {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = count;
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for j in 0..m {
                    if comp[j] == usize::MAX
                        && dim >= 1
                        && facets[i].intersection_size(&facets[j]) == dim
                    {
                        comp[j] = count;
                        stack.push(j);
                    }
                }
            }
            count += 1;
        }
        let mut out = vec![Vec::new(); count];
        for (i, &c) in comp.iter().enumerate() {
            out[c].push(i);
        }
        Ok(out)
    }

    pub fn is_strongly_connected(&self) -> Result<bool, ComplexError> {
        Ok(self.strongly_connected_components()?.len() == 1)
    }

    /// Every codimension-one face lies in exactly two facets.
    pub fn is_weak_pseudomanifold(&self) -> Result<bool, ComplexError> {
        self.require_pure_dim(1)?;
        Ok(self.ridge_degrees().values().all(|&d| d == 2))
    }

    /// Weak pseudomanifold that is also strongly connected.
    pub fn is_pseudomanifold(&self) -> Result<bool, ComplexError> {
        Ok(self.is_weak_pseudomanifold()? && self.is_strongly_connected()?)
    }

    /// Pseudomanifold in which the link of every face of codimension at
    /// least two is connected. Requires dimension n >= 2.
    pub fn is_normal_pseudomanifold(&self) -> Result<bool, ComplexError> {
        let dim = self.require_pure_dim(2)?;
        if !self.is_pseudomanifold()? {
            return Ok(false);
        }
        // Faces of codimension >= 2 are the cliques with at most dim - 1
        // vertices.
        for s in self.faces_up_to_card(dim - 1) {
            let (lk, _) = self.link(&s).expect("enumerated faces are faces");
            if !lk.skeleton_1().is_connected() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All faces with between 1 and `max_card` vertices.
    pub fn faces_up_to_card(&self, max_card: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        if max_card == 0 {
            return out;
        }
        // Grow cliques one vertex at a time, always extending by a larger id
        // so each clique is produced exactly once.
        let mut frontier: Vec<Vec<usize>> = (0..self.graph.n).map(|v| vec![v]).collect();
        let mut card = 1;
        while !frontier.is_empty() && card <= max_card {
            for c in &frontier {
                out.push(Simplex(c.clone()));
            }
            let mut next = Vec::new();
            if card < max_card {
                for c in &frontier {
                    let last = *c.last().expect("nonempty");
                    for v in (last + 1)..self.graph.n {
                        if c.iter().all(|&u| self.graph.has_edge(u, v)) {
                            let mut bigger = c.clone();
                            bigger.push(v);
                            next.push(bigger);
                        }
                    }
                }
            }
            frontier = next;
            card += 1;
        }
        out
    }
}

/// All maximal cliques, by Bron–Kerbosch with greedy pivoting, returned in
/// lexicographic order.
fn maximal_cliques(g: &Graph) -> Vec<Simplex> {
    let mut out = Vec::new();
    let mut r = Vec::new();
    let p: Vec<usize> = (0..g.n()).collect();
    bron_kerbosch(g, &mut r, p, Vec::new(), &mut out);
    out.sort();
    out
}

fn bron_kerbosch(
    g: &Graph,
    r: &mut Vec<usize>,
    p: Vec<usize>,
    x: Vec<usize>,
    out: &mut Vec<Simplex>,
) {
    if p.is_empty() && x.is_empty() {
        out.push(Simplex::new(r.clone()));
        return;
    }
    // Pivot: vertex of P ∪ X with the most neighbors in P, so the branching
    // set P \ N(pivot) is small.
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by_key(|&u| p.iter().filter(|&&v| g.has_edge(u, v)).count())
        .expect("P or X nonempty");
    let branch: Vec<usize> = p
        .iter()
        .copied()
        .filter(|&v| !g.has_edge(pivot, v))
        .collect();
    let mut p = p;
    let mut x = x;
    for v in branch {
        let np: Vec<usize> = p.iter().copied().filter(|&u| g.has_edge(u, v)).collect();
        let nx: Vec<usize> = x.iter().copied().filter(|&u| g.has_edge(u, v)).collect();
        r.push(v);
        bron_kerbosch(g, r, np, nx, out);
        r.pop();
        p.retain(|&u| u != v);
        x.push(v);
    }
}
