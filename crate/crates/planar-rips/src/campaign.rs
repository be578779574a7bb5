//! Seeded batch campaigns: random point clouds plus constructed positive
//! cases, run through the geometric adjacency properties and the structure
//! verifiers, with violation collection and non-vacuousness statistics.
//!
//! Uniform random clouds almost never produce closed pure 2-complexes, so
//! every campaign mixes in constructed clouds (cross-polytopes, chains, the
//! octahedron ring) to keep the structure suites from passing vacuously.

use crate::classify::{verify_census_theorem, verify_chain_theorem, verify_sphere_theorem, TheoremVerdict};
use crate::complex::{FlagComplex, Graph};
use crate::geom::{
    in_triangle, orientation, point_in_polygon, segments_intersect, Point2, PolygonPosition,
    Rational, Segment, SegmentIntersection, Side, TrianglePosition,
};
use crate::obstructions::contains_induced_k16;
use crate::rips::{
    build_rips, build_udg, gen_cross_polytope_points, gen_octahedron_chain_points,
    gen_octahedron_ring_points, PointCloud, ThresholdMode,
};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Which property family a campaign exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Geometric adjacency lemmas: crossing edges, six-star freeness, hull
    /// membership in links, link-component hull disjointness, small links,
    /// facet non-degeneracy.
    Lemmas,
    /// Pseudomanifolds of dimension >= 2 are cross-polytope spheres.
    Sphere,
    /// Weak pseudomanifolds of dimension >= 2 decompose into chains.
    Chain,
    /// Octahedron census equals second Betti number on closed surfaces.
    Census,
    All,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lemmas" => Ok(Suite::Lemmas),
            "theoremA" => Ok(Suite::Sphere),
            "theoremB" => Ok(Suite::Chain),
            "theoremC" => Ok(Suite::Census),
            "all" => Ok(Suite::All),
            other => Err(format!(
                "unknown suite '{other}' (expected lemmas, theoremA, theoremB, theoremC or all)"
            )),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Lemmas => "lemmas",
            Suite::Sphere => "theoremA",
            Suite::Chain => "theoremB",
            Suite::Census => "theoremC",
            Suite::All => "all",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone)]
pub struct Campaign {
    pub suite: Suite,
    /// Number of random clouds; constructed positives are added on top.
    pub count: usize,
    pub seed: u64,
    pub mode: ThresholdMode,
}

#[derive(Debug, Clone, Serialize)]
pub struct CampaignReport {
    pub suite: String,
    pub seed: u64,
    pub mode: String,
    pub random_clouds: usize,
    pub injected_clouds: usize,
    /// Non-vacuousness statistics: how often each property actually fired.
    pub hits: BTreeMap<String, u64>,
    pub violations: Vec<String>,
}

impl CampaignReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Uniform random cloud: n in [4, 30] points with coordinates k/1000,
/// k in [0, 3000], distinct.
pub fn gen_random_cloud(rng: &mut ChaCha8Rng) -> PointCloud {
    let n = rng.random_range(4..=30usize);
    let mut seen = std::collections::HashSet::new();
    let mut points = Vec::with_capacity(n);
    while points.len() < n {
        let xk: i64 = rng.random_range(0..=3000);
        let yk: i64 = rng.random_range(0..=3000);
        if seen.insert((xk, yk)) {
            points.push(Point2::from_ratios(xk, 1000, yk, 1000));
        }
    }
    PointCloud::unit(points).expect("distinct points, unit scale")
}

/// The constructed clouds mixed into every campaign.
pub fn constructed_positives() -> Vec<(String, PointCloud)> {
    let mut out = Vec::new();
    for n in 2..=4 {
        out.push((
            format!("cross-polytope-{n}"),
            gen_cross_polytope_points(n).expect("n >= 2"),
        ));
    }
    for k in 1..=3 {
        out.push((
            format!("chain-{k}"),
            gen_octahedron_chain_points(k).expect("k >= 1"),
        ));
    }
    out.push(("octahedron-ring".to_string(), gen_octahedron_ring_points()));
    out
}

pub fn run_campaign(c: &Campaign) -> CampaignReport {
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    let mut report = CampaignReport {
        suite: c.suite.to_string(),
        seed: c.seed,
        mode: c.mode.to_string(),
        random_clouds: c.count,
        injected_clouds: 0,
        hits: BTreeMap::new(),
        violations: Vec::new(),
    };
    for i in 0..c.count {
        let cloud = gen_random_cloud(&mut rng);
        run_cloud(c, &format!("random-{i}"), &cloud, &mut report);
    }
    for (name, cloud) in constructed_positives() {
        report.injected_clouds += 1;
        run_cloud(c, &name, &cloud, &mut report);
    }
    report
}

fn bump(report: &mut CampaignReport, key: &str, by: u64) {
    *report.hits.entry(key.to_string()).or_insert(0) += by;
}

fn run_cloud(c: &Campaign, label: &str, cloud: &PointCloud, report: &mut CampaignReport) {
    if matches!(c.suite, Suite::Lemmas | Suite::All) {
        let graph = build_udg(cloud, c.mode);
        let complex = build_rips(cloud, c.mode);
        check_crossing_edges_close_up(label, cloud, &graph, report);
        check_no_induced_six_star(label, &graph, report);
        check_hull_points_join_link(label, cloud, &graph, report);
        check_link_component_hulls_disjoint(label, cloud, &graph, report);
        check_small_links(label, &complex, report);
        check_facet_nondegeneracy(label, cloud, &complex, report);
    }
    let suites: [(bool, &str, fn(&PointCloud, ThresholdMode) -> TheoremVerdict); 3] = [
        (
            matches!(c.suite, Suite::Sphere | Suite::All),
            "sphere",
            verify_sphere_theorem,
        ),
        (
            matches!(c.suite, Suite::Chain | Suite::All),
            "chain",
            verify_chain_theorem,
        ),
        (
            matches!(c.suite, Suite::Census | Suite::All),
            "census",
            verify_census_theorem,
        ),
    ];
    for (selected, name, verify) in suites {
        if !selected {
            continue;
        }
        match verify(cloud, c.mode) {
            TheoremVerdict::Consistent { vacuous, .. } => {
                if !vacuous {
                    bump(report, &format!("{name}-nonvacuous"), 1);
                }
            }
            TheoremVerdict::Counterexample { reason } => {
                report.violations.push(format!("{label}: {name}: {reason}"));
            }
        }
    }
}

/// Crossing edges force the closing edge: for edges AB and CD whose open
/// segments share a point, if C is not adjacent to A then B is adjacent
/// to D.
fn check_crossing_edges_close_up(
    label: &str,
    cloud: &PointCloud,
    g: &Graph,
    report: &mut CampaignReport,
) {
    let pts = cloud.points();
    let edges = g.edges();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[(i + 1)..] {
            if a == c || a == d || b == c || b == d {
                continue;
            }
            // The lemma only constrains labelings whose hypothesis C !~ A
            // holds; when all four cross-adjacencies are present the pair
            // is vacuous and the (expensive) exact crossing test can be
            // skipped.
            let labelings = [(a, b, c, d), (b, a, c, d), (a, b, d, c), (b, a, d, c)];
            let fires = labelings.iter().any(|&(x, _, u, _)| !g.has_edge(u, x));
            if !fires {
                continue;
            }
            // Cheap bounding-box rejection before the exact predicate.
            if bbox_disjoint(&pts[a], &pts[b], &pts[c], &pts[d]) {
                continue;
            }
            let s = Segment::new(pts[a].clone(), pts[b].clone()).expect("distinct");
            let t = Segment::new(pts[c].clone(), pts[d].clone()).expect("distinct");
            if segments_intersect(&s, &t).expect("valid segments")
                != SegmentIntersection::InteriorCross
            {
                continue;
            }
            bump(report, "crossing-pairs-verified", 1);
            for (x, y, u, v) in labelings {
                if !g.has_edge(u, x) && !g.has_edge(y, v) {
                    report.violations.push(format!(
                        "{label}: edges ({a},{b}) and ({c},{d}) cross but {y}~{v} is missing \
                         while {u}!~{x}"
                    ));
                }
            }
        }
    }
}

fn bbox_disjoint(a: &Point2, b: &Point2, c: &Point2, d: &Point2) -> bool {
    fn lo<'r>(p: &'r Rational, q: &'r Rational) -> &'r Rational {
        if p <= q {
            p
        } else {
            q
        }
    }
    fn hi<'r>(p: &'r Rational, q: &'r Rational) -> &'r Rational {
        if p >= q {
            p
        } else {
            q
        }
    }
    hi(&a.x, &b.x) < lo(&c.x, &d.x)
        || hi(&c.x, &d.x) < lo(&a.x, &b.x)
        || hi(&a.y, &b.y) < lo(&c.y, &d.y)
        || hi(&c.y, &d.y) < lo(&a.y, &b.y)
}

fn check_no_induced_six_star(label: &str, g: &Graph, report: &mut CampaignReport) {
    bump(report, "six-star-scans", 1);
    if let Some(emb) = contains_induced_k16(g) {
        report.violations.push(format!(
            "{label}: induced six-star at center {} with leaves {:?}",
            emb[0],
            &emb[1..]
        ));
    }
}

/// `w` lies on the closed segment from `a` to `b` (all points distinct
/// handling not required: callers pass distinct cloud points).
fn on_closed_segment(w: &Point2, a: &Point2, b: &Point2) -> bool {
    if orientation(a, b, w).expect("distinct endpoints") != Side::On {
        return false;
    }
    let (xlo, xhi) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (ylo, yhi) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    &w.x >= xlo && &w.x <= xhi && &w.y >= ylo && &w.y <= yhi
}

/// Convex hull vertex indices (into `idx`) in counterclockwise order,
/// collinear interior points dropped. Requires at least one point.
fn convex_hull(pts: &[Point2], idx: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = idx.to_vec();
    order.sort_by(|&i, &j| {
        pts[i]
            .x
            .cmp(&pts[j].x)
            .then_with(|| pts[i].y.cmp(&pts[j].y))
    });
    if order.len() <= 2 {
        return order;
    }
    let turn_ok = |h: &[usize], p: usize| -> bool {
        let m = h.len();
        orientation(&pts[h[m - 2]], &pts[h[m - 1]], &pts[p]).expect("distinct") == Side::Left
    };
    let mut lower: Vec<usize> = Vec::new();
    for &p in &order {
        while lower.len() >= 2 && !turn_ok(&lower, p) {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &p in order.iter().rev() {
        while upper.len() >= 2 && !turn_ok(&upper, p) {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Closed membership of `w` in the convex hull given by `hull` (indices into
/// `pts`, counterclockwise, possibly a point or segment).
fn in_hull(pts: &[Point2], hull: &[usize], w: &Point2) -> bool {
    match hull.len() {
        0 => false,
        1 => pts[hull[0]] == *w,
        2 => on_closed_segment(w, &pts[hull[0]], &pts[hull[1]]),
        _ => {
            let poly: Vec<Point2> = hull.iter().map(|&i| pts[i].clone()).collect();
            point_in_polygon(w, &poly).expect("hull is simple") != PolygonPosition::Outside
        }
    }
}

/// Conservative floating-point error bound for cross products of
/// coordinates in [0, 3]: sign tests beyond this margin are exact.
const CROSS_EPS: f64 = 1e-9;

fn f64_points(pts: &[Point2]) -> Vec<(f64, f64)> {
    pts.iter()
        .map(|p| {
            (
                p.x.to_f64().expect("small coordinate"),
                p.y.to_f64().expect("small coordinate"),
            )
        })
        .collect()
}

fn cross_f64(p: (f64, f64), q: (f64, f64), r: (f64, f64)) -> f64 {
    (q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0)
}

/// Any vertex in the convex hull of a subset of a link joins the link: it is
/// adjacent to the center and to some member of the subset. Membership in a
/// hull reduces to membership in a 2- or 3-member hull, so only pairs and
/// triples are enumerated, gated by membership in the full link hull.
///
/// Floating-point sign tests with a conservative margin discard pairs and
/// triples that definitely exclude the vertex; every candidate that survives
/// is confirmed with exact arithmetic before it is counted or flagged.
fn check_hull_points_join_link(
    label: &str,
    cloud: &PointCloud,
    g: &Graph,
    report: &mut CampaignReport,
) {
    let pts = cloud.points();
    let fpts = f64_points(pts);
    let n = g.n();
    for v in 0..n {
        let link = g.neighbors(v);
        if link.len() < 2 {
            continue;
        }
        let link_hull = convex_hull(pts, &link);
        for w in 0..n {
            if w == v {
                continue;
            }
            // Counterclockwise hull: a vertex clearly right of some side is
            // clearly outside.
            if link_hull.len() >= 3 {
                let m = link_hull.len();
                let definitely_out = (0..m).any(|i| {
                    cross_f64(fpts[link_hull[i]], fpts[link_hull[(i + 1) % m]], fpts[w])
                        < -CROSS_EPS
                });
                if definitely_out {
                    continue;
                }
            }
            if !in_hull(pts, &link_hull, &pts[w]) {
                continue;
            }
            for (ai, &a) in link.iter().enumerate() {
                if a == w {
                    continue;
                }
                for (bi, &b) in link.iter().enumerate().skip(ai + 1) {
                    if b == w {
                        continue;
                    }
                    if cross_f64(fpts[a], fpts[b], fpts[w]).abs() <= CROSS_EPS
                        && on_closed_segment(&pts[w], &pts[a], &pts[b])
                    {
                        bump(report, "link-hull-members-verified", 1);
                        if !g.has_edge(v, w) || !(g.has_edge(w, a) || g.has_edge(w, b)) {
                            report.violations.push(format!(
                                "{label}: vertex {w} on segment [{a},{b}] of the link of {v} \
                                 but not joined to it"
                            ));
                        }
                    }
                    for &cvert in &link[(bi + 1)..] {
                        if cvert == w {
                            continue;
                        }
                        let c1 = cross_f64(fpts[a], fpts[b], fpts[w]);
                        let c2 = cross_f64(fpts[b], fpts[cvert], fpts[w]);
                        let c3 = cross_f64(fpts[cvert], fpts[a], fpts[w]);
                        let pos = c1 > CROSS_EPS || c2 > CROSS_EPS || c3 > CROSS_EPS;
                        let neg = c1 < -CROSS_EPS || c2 < -CROSS_EPS || c3 < -CROSS_EPS;
                        if pos && neg {
                            continue;
                        }
                        if in_triangle(&pts[w], &pts[a], &pts[b], &pts[cvert])
                            == TrianglePosition::Outside
                        {
                            continue;
                        }
                        bump(report, "link-hull-members-verified", 1);
                        if !g.has_edge(v, w)
                            || !(g.has_edge(w, a) || g.has_edge(w, b) || g.has_edge(w, cvert))
                        {
                            report.violations.push(format!(
                                "{label}: vertex {w} in triangle [{a},{b},{cvert}] of the link \
                                 of {v} but not joined to it"
                            ));
                        }
                    }
                }
            }
        }
    }
}

/// Convex hulls of distinct connected components of a link are disjoint.
fn check_link_component_hulls_disjoint(
    label: &str,
    cloud: &PointCloud,
    g: &Graph,
    report: &mut CampaignReport,
) {
    let pts = cloud.points();
    for v in 0..g.n() {
        let link = g.neighbors(v);
        let comps = components_within(g, &link);
        if comps.len() < 2 {
            continue;
        }
        let hulls: Vec<Vec<usize>> = comps.iter().map(|c| convex_hull(pts, c)).collect();
        for i in 0..hulls.len() {
            for j in (i + 1)..hulls.len() {
                bump(report, "link-component-hull-pairs", 1);
                if hulls_intersect(pts, &hulls[i], &hulls[j]) {
                    report.violations.push(format!(
                        "{label}: link components {:?} and {:?} of vertex {v} have meeting hulls",
                        comps[i], comps[j]
                    ));
                }
            }
        }
    }
}

/// Connected components of the subgraph induced on `verts`.
fn components_within(g: &Graph, verts: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; verts.len()];
    let mut out = Vec::new();
    for s in 0..verts.len() {
        if seen[s] {
            continue;
        }
        let mut comp = vec![verts[s]];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(i) = stack.pop() {
            for (j, &w) in verts.iter().enumerate() {
                if !seen[j] && g.has_edge(verts[i], w) {
                    seen[j] = true;
                    comp.push(w);
                    stack.push(j);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Closed intersection test for two convex hulls (possibly degenerate).
fn hulls_intersect(pts: &[Point2], ha: &[usize], hb: &[usize]) -> bool {
    if ha.iter().any(|&p| in_hull(pts, hb, &pts[p])) {
        return true;
    }
    if hb.iter().any(|&p| in_hull(pts, ha, &pts[p])) {
        return true;
    }
    if ha.len() < 2 || hb.len() < 2 {
        return false;
    }
    let sides = |h: &[usize]| -> Vec<(usize, usize)> {
        if h.len() == 2 {
            vec![(h[0], h[1])]
        } else {
            (0..h.len()).map(|i| (h[i], h[(i + 1) % h.len()])).collect()
        }
    };
    for (a, b) in sides(ha) {
        let s = Segment::new(pts[a].clone(), pts[b].clone()).expect("distinct");
        for &(c, d) in &sides(hb) {
            let t = Segment::new(pts[c].clone(), pts[d].clone()).expect("distinct");
            if segments_intersect(&s, &t).expect("valid") != SegmentIntersection::Disjoint {
                return true;
            }
        }
    }
    false
}

/// In a weak pseudomanifold, links of faces of codimension >= 2 have at most
/// two strongly connected components, and links of faces of codimension
/// exactly 2 have at most 11 vertices.
fn check_small_links(label: &str, complex: &FlagComplex, report: &mut CampaignReport) {
    let Ok(Some(dim)) = complex.pure_dimension() else {
        return;
    };
    if dim < 2 || !complex.is_weak_pseudomanifold().unwrap_or(false) {
        return;
    }
    for face in complex.faces_up_to_card(dim - 1) {
        let card = face.vertices().len();
        if card == 0 {
            continue;
        }
        let Ok((lk, _)) = complex.link(&face) else {
            continue;
        };
        bump(report, "small-link-faces-verified", 1);
        match lk.strongly_connected_components() {
            Ok(comps) => {
                if comps.len() > 2 {
                    report.violations.push(format!(
                        "{label}: link of {:?} has {} strongly connected components",
                        face.vertices(),
                        comps.len()
                    ));
                }
            }
            Err(e) => report
                .violations
                .push(format!("{label}: link of {:?}: {e}", face.vertices())),
        }
        if card == dim - 1 && lk.n() > 11 {
            report.violations.push(format!(
                "{label}: link of codimension-2 face {:?} has {} vertices",
                face.vertices(),
                lk.n()
            ));
        }
    }
}

/// In a pure closed 2-complex, no facet vertex lies in the convex hull of
/// the facet's other two vertices.
fn check_facet_nondegeneracy(
    label: &str,
    cloud: &PointCloud,
    complex: &FlagComplex,
    report: &mut CampaignReport,
) {
    if complex.pure_dimension() != Ok(Some(2)) || complex.is_closed() != Ok(true) {
        return;
    }
    let pts = cloud.points();
    for facet in complex.facets() {
        let vs = facet.vertices();
        bump(report, "facets-verified-nondegenerate", 1);
        for r in 0..3 {
            let (p, a, b) = (vs[r], vs[(r + 1) % 3], vs[(r + 2) % 3]);
            if on_closed_segment(&pts[p], &pts[a], &pts[b]) {
                report.violations.push(format!(
                    "{label}: facet {vs:?} degenerate: {p} lies between {a} and {b}"
                ));
            }
        }
    }
}
