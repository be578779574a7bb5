//! Unit disk graphs and planar Rips complexes of exact point clouds, plus
//! the shadow-level combinatorics: crossing edge pairs, the four-point
//! configurations they induce, boundary edges, and the octahedron census.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::complex::{clique_complex, FlagComplex, Graph, Simplex};
use crate::geom::{
    dot_sign, in_triangle, on_closed_segment, orientation, segments_intersect, Point2, Rational,
    Segment, SegmentIntersection, Side, TrianglePosition,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RipsError {
    #[error("points {i} and {j} coincide")]
    DuplicatePoints { i: usize, j: usize },
    #[error("scale must be positive")]
    NonPositiveScale,
    #[error("cross-polytope points need dimension >= 2, got {0}")]
    CrossPolytopeTooSmall(usize),
    #[error("octahedron chains need at least 1 copy")]
    EmptyChain,
    #[error("complex is not pure 2-dimensional: facet {0:?}")]
    NotPureTwoDimensional(Vec<usize>),
    #[error("complex is not closed: edge {0:?} lies in fewer than two facets")]
    NotClosed(Vec<usize>),
    #[error("crossing edges {e1:?} and {e2:?} do not induce a four-point configuration")]
    MalformedCrossing { e1: (usize, usize), e2: (usize, usize) },
}

/// Which distances count as edges at scale `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ThresholdMode {
    /// Edge iff distance < r (the default).
    #[default]
    StrictLess,
    /// Edge iff distance <= r.
    AtMost,
}

impl std::fmt::Display for ThresholdMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ThresholdMode::StrictLess => write!(f, "strict"),
            ThresholdMode::AtMost => write!(f, "atmost"),
        }
    }
}

impl std::str::FromStr for ThresholdMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(ThresholdMode::StrictLess),
            "atmost" => Ok(ThresholdMode::AtMost),
            other => Err(format!("unknown mode '{other}' (expected strict or atmost)")),
        }
    }
}

/// A finite set of distinct points with a positive scale (default 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCloud {
    points: Vec<Point2>,
    r: Rational,
}

impl PointCloud {
    pub fn new(points: Vec<Point2>, r: Rational) -> Result<Self, RipsError> {
        if r <= Rational::from_integer(0.into()) {
            return Err(RipsError::NonPositiveScale);
        }
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                if points[i] == points[j] {
                    return Err(RipsError::DuplicatePoints { i, j });
                }
            }
        }
        Ok(PointCloud { points, r })
    }

    /// Cloud at the standard scale r = 1.
    pub fn unit(points: Vec<Point2>) -> Result<Self, RipsError> {
        PointCloud::new(points, Rational::one())
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn r(&self) -> &Rational {
        &self.r
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dist2(&self, i: usize, j: usize) -> Rational {
        self.points[i].dist2(&self.points[j])
    }

    /// Translate every point by `(dx, dy)`.
    pub fn translated(&self, dx: &Rational, dy: &Rational) -> PointCloud {
        PointCloud {
            points: self
                .points
                .iter()
                .map(|p| Point2::new(&p.x + dx, &p.y + dy))
                .collect(),
            r: self.r.clone(),
        }
    }
}

/// The unit disk graph: vertices are the points, edges join pairs within the
/// scale under the chosen threshold mode. All comparisons are exact.
pub fn build_udg(cloud: &PointCloud, mode: ThresholdMode) -> Graph {
    let n = cloud.len();
    let r2 = cloud.r() * cloud.r();
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let d2 = cloud.dist2(i, j);
            let within = match mode {
                ThresholdMode::StrictLess => d2 < r2,
                ThresholdMode::AtMost => d2 <= r2,
            };
            if within {
                g.add_edge(i, j).expect("i < j < n");
            }
        }
    }
    g
}

/// The planar Rips complex: the clique complex of the unit disk graph.
pub fn build_rips(cloud: &PointCloud, mode: ThresholdMode) -> FlagComplex {
    clique_complex(build_udg(cloud, mode))
}

/// Points of a regular (2n+2)-gon whose Rips complex at scale 1 is the
/// boundary of the (n+1)-dimensional cross-polytope (the n-dimensional
/// cross-polytopal sphere on 2n+2 vertices).
///
/// The circumradius R is chosen rationally with 1 <= 2R < 1/sin(n*pi/(2n+2)),
/// which makes every non-antipodal chord shorter than 1 and every antipodal
/// chord at least 1. Coordinates are rounded to denominator 10^12 and all
/// pairwise comparisons are then re-verified exactly, so the output is
/// self-certifying.
pub fn gen_cross_polytope_points(n: usize) -> Result<PointCloud, RipsError> {
    if n < 2 {
        return Err(RipsError::CrossPolytopeTooSmall(n));
    }
    let m = 2 * n + 2;
    let bound = 1.0 / (std::f64::consts::PI * n as f64 / m as f64).sin();
    // Pick 2R = 1 + k/g on a granularity ladder, capping k so 2R <= 1.1.
    let mut choice = None;
    for g in [100u64, 1_000, 10_000, 100_000] {
        let k_max = ((bound - 1.0) * g as f64).ceil() as i64 - 1;
        let k = k_max.min(g as i64 / 10);
        if k >= 1 {
            choice = Some((k as u64, g));
            break;
        }
    }
    let (k, g) = choice.expect("a rational circumradius exists for any n >= 2");
    let two_r = 1.0 + k as f64 / g as f64;
    let radius = two_r / 2.0;

    const DENOM: i64 = 1_000_000_000_000;
    let round = |x: f64| -> Rational {
        Rational::new(
            BigInt::from((x * DENOM as f64).round() as i64),
            BigInt::from(DENOM),
        )
    };
    let points: Vec<Point2> = (0..m)
        .map(|i| {
            let theta = 2.0 * std::f64::consts::PI * i as f64 / m as f64;
            Point2::new(round(radius * theta.cos()), round(radius * theta.sin()))
        })
        .collect();

    let cloud = PointCloud::unit(points)?;
    // Certify: rounding must not have moved any pair across the threshold.
    let one = Rational::one();
    for i in 0..m {
        for j in (i + 1)..m {
            let d2 = cloud.dist2(i, j);
            if j - i == m / 2 {
                assert!(d2 >= one, "antipodal pair ({i},{j}) fell below scale");
            } else {
                assert!(d2 < one, "non-antipodal pair ({i},{j}) reached scale");
            }
        }
    }
    Ok(cloud)
}

/// The flattened hexagon whose Rips complex is a single octahedral sphere:
/// six points with antipodal pairs at distance >= 1 and all other pairs
/// strictly closer than 1, and with total width 67/50 so that translated
/// copies can share a vertex without interacting otherwise.
fn squashed_hexagon() -> Vec<Point2> {
    vec![
        Point2::from_ratios(0, 1, 0, 1),
        Point2::from_ratios(13, 25, 12, 25),
        Point2::from_ratios(41, 50, 12, 25),
        Point2::from_ratios(67, 50, 0, 1),
        Point2::from_ratios(41, 50, -12, 25),
        Point2::from_ratios(13, 25, -12, 25),
    ]
}

/// Points whose Rips complex is a linear chain of `k` octahedral spheres,
/// consecutive spheres sharing exactly one vertex. Uses 5k+1 points: each
/// copy of the flattened hexagon reuses the rightmost point of the previous
/// copy as its leftmost point.
pub fn gen_octahedron_chain_points(k: usize) -> Result<PointCloud, RipsError> {
    if k == 0 {
        return Err(RipsError::EmptyChain);
    }
    let hex = squashed_hexagon();
    let width = Rational::new(67.into(), 50.into());
    let mut points = Vec::with_capacity(5 * k + 1);
    for copy in 0..k {
        let dx = Rational::from_integer(BigInt::from(copy as i64)) * &width;
        for (vi, p) in hex.iter().enumerate() {
            if copy > 0 && vi == 0 {
                continue; // coincides with the previous copy's rightmost point
            }
            points.push(Point2::new(&p.x + &dx, p.y.clone()));
        }
    }
    PointCloud::unit(points)
}

/// Coordinates (numerator pairs over 10^6) of forty points whose Rips
/// complex is a closed necklace of eight octahedral spheres, consecutive
/// spheres sharing exactly one vertex. Vertices 0..8 are the shared
/// corners; sphere i additionally owns vertices 8+4i..12+4i, with
/// antipodal pairs (corner i, corner i+1), (8+4i, 9+4i), (10+4i, 11+4i).
const RING_COORDS: [(i64, i64); 40] = [
    (4203539, 2306951),
    (3648041, 3648041),
    (2306951, 4203539),
    (965862, 3648041),
    (410364, 2306952),
    (965862, 965862),
    (2306951, 410364),
    (3648041, 965862),
    (3576187, 2807701),
    (4464167, 3270837),
    (3558520, 2850353),
    (4513903, 3150763),
    (2850353, 3558520),
    (3150763, 4513903),
    (2807701, 3576187),
    (3270837, 4464167),
    (1806201, 3576187),
    (1343066, 4464167),
    (1763550, 3558520),
    (1463140, 4513903),
    (1055383, 2850353),
    (100000, 3150763),
    (1037716, 2807702),
    (149736, 3270837),
    (1037716, 1806202),
    (149736, 1343066),
    (1055383, 1763550),
    (100000, 1463140),
    (1763550, 1055383),
    (1463140, 100000),
    (1806201, 1037716),
    (1343066, 149736),
    (2807701, 1037716),
    (3270837, 149736),
    (2850353, 1055383),
    (3150763, 100000),
    (3558520, 1763550),
    (4513903, 1463140),
    (3576187, 1806201),
    (4464167, 1343066),
];

/// Points whose Rips complex is a cyclic arrangement of eight octahedral
/// spheres: eight copies glued corner to corner around an annulus, the last
/// sharing a vertex with the first. The smaller cyclic arrangements (four
/// to six copies) admit no realization at unit scale, so this is the
/// library's witness that the circle count of a decomposition can be
/// positive.
///
/// The coordinates are frozen rationals; as in the other generators, every
/// pairwise comparison against the scale is re-verified exactly on
/// construction.
pub fn gen_octahedron_ring_points() -> PointCloud {
    let points: Vec<Point2> = RING_COORDS
        .iter()
        .map(|&(x, y)| Point2::from_ratios(x, 1_000_000, y, 1_000_000))
        .collect();
    let cloud = PointCloud::unit(points).expect("frozen coordinates are distinct");
    let m = 8;
    // Certify against the intended adjacency: within a sphere all pairs but
    // the three antipodal ones are closer than 1; every other pair is not.
    let sphere_of = |v: usize| -> Vec<usize> {
        if v < m {
            vec![(v + m - 1) % m, v]
        } else {
            vec![(v - m) / 4]
        }
    };
    let one = Rational::one();
    for i in 0..40 {
        for j in (i + 1)..40 {
            let common: Vec<usize> = sphere_of(i)
                .into_iter()
                .filter(|s| sphere_of(j).contains(s))
                .collect();
            let adjacent = common.iter().any(|&s| {
                let p = m + 4 * s;
                let antipodal = (i == s && j == (s + 1) % m)
                    || (i == (s + 1) % m && j == s)
                    || (i.min(j), i.max(j)) == (p, p + 1)
                    || (i.min(j), i.max(j)) == (p + 2, p + 3);
                !antipodal
            });
            let d2 = cloud.dist2(i, j);
            if adjacent {
                assert!(d2 < one, "in-sphere pair ({i},{j}) reached scale");
            } else {
                assert!(d2 >= one, "separated pair ({i},{j}) fell below scale");
            }
        }
    }
    cloud
}

/// Edges of the complex as sorted vertex pairs, with their segments.
fn edge_segments(cloud: &PointCloud, complex: &FlagComplex) -> Vec<((usize, usize), Segment)> {
    debug_assert_eq!(cloud.len(), complex.n(), "cloud and complex disagree");
    complex
        .skeleton_1()
        .edges()
        .into_iter()
        .map(|(u, v)| {
            let seg = Segment::new(cloud.points()[u].clone(), cloud.points()[v].clone())
                .expect("distinct points");
            ((u, v), seg)
        })
        .collect()
}

/// All unordered pairs of vertex-disjoint edges whose open segments cross,
/// in lexicographic order.
pub fn intersecting_edge_pairs(
    cloud: &PointCloud,
    complex: &FlagComplex,
) -> Vec<((usize, usize), (usize, usize))> {
    let edges = edge_segments(cloud, complex);
    let mut out = Vec::new();
    for (i, (e1, s1)) in edges.iter().enumerate() {
        for (e2, s2) in edges.iter().skip(i + 1) {
            let disjoint = e1.0 != e2.0 && e1.0 != e2.1 && e1.1 != e2.0 && e1.1 != e2.1;
            if !disjoint {
                continue;
            }
            if segments_intersect(s1, s2).expect("edges are non-degenerate")
                == SegmentIntersection::InteriorCross
            {
                out.push((*e1, *e2));
            }
        }
    }
    out
}

/// Four vertices spanning two triangles over a common base, induced by a
/// crossing edge pair: facets {a,b,c} and {a,b,d}, base {a,b}, the apexes c
/// and d non-adjacent, and the complex edges (a,d) and (b,c) crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gamma2Config {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

/// Check that the complex is pure 2-dimensional and closed, naming the
/// offending face otherwise.
fn require_pure_closed_2(complex: &FlagComplex) -> Result<(), RipsError> {
    for f in complex.facets() {
        if f.dim() != 2 {
            return Err(RipsError::NotPureTwoDimensional(f.vertices().to_vec()));
        }
    }
    let mut degree: std::collections::HashMap<Simplex, usize> = std::collections::HashMap::new();
    for f in complex.facets() {
        for r in f.boundary_faces() {
            *degree.entry(r).or_insert(0) += 1;
        }
    }
    let mut low: Vec<&Simplex> = degree
        .iter()
        .filter(|(_, &d)| d < 2)
        .map(|(r, _)| r)
        .collect();
    low.sort();
    if let Some(r) = low.first() {
        return Err(RipsError::NotClosed(r.vertices().to_vec()));
    }
    Ok(())
}

/// The four-point configuration induced by each crossing edge pair of a pure
/// closed 2-dimensional complex.
pub fn gamma2_configurations(
    cloud: &PointCloud,
    complex: &FlagComplex,
) -> Result<Vec<Gamma2Config>, RipsError> {
    require_pure_closed_2(complex)?;
    let g = complex.skeleton_1();
    let mut out = Vec::new();
    for (e1, e2) in intersecting_edge_pairs(cloud, complex) {
        // Exactly one pair of endpoints across the two edges is non-adjacent;
        // those are the apexes, the remaining two endpoints the base.
        let mut missing = Vec::new();
        for &x in &[e1.0, e1.1] {
            for &y in &[e2.0, e2.1] {
                if !g.has_edge(x, y) {
                    missing.push((x, y));
                }
            }
        }
        let &[(d, c)] = missing.as_slice() else {
            return Err(RipsError::MalformedCrossing { e1, e2 });
        };
        let a = if e1.0 == d { e1.1 } else { e1.0 };
        let b = if e2.0 == c { e2.1 } else { e2.0 };
        debug_assert!(complex.is_face(&Simplex::new(vec![a, b, c])));
        debug_assert!(complex.is_face(&Simplex::new(vec![a, b, d])));
        // At least one of the base angles (at a towards c, at b towards d)
        // must be obtuse.
        let pts = cloud.points();
        debug_assert!(
            dot_sign(&pts[a], &pts[c], &pts[b]) < 0 || dot_sign(&pts[b], &pts[a], &pts[d]) < 0,
            "no obtuse base angle in configuration a={a} b={b} c={c} d={d}"
        );
        out.push(Gamma2Config { a, b, c, d });
    }
    Ok(out)
}

/// Parameter of point `q` along segment `pa -> pb` (assumes collinear).
fn segment_parameter(pa: &Point2, pb: &Point2, q: &Point2) -> Rational {
    if pa.x != pb.x {
        (&q.x - &pa.x) / (&pb.x - &pa.x)
    } else {
        (&q.y - &pa.y) / (&pb.y - &pa.y)
    }
}

/// Edges whose open segment meets the boundary of the shadow (the union of
/// all projected closed simplices).
///
/// Along a fixed edge, the interior/boundary status of the shadow can change
/// only where the edge meets another edge or passes through a point of the
/// cloud. The edge is split at all such events and one exact rational sample
/// is taken per interval; the sample is interior to the shadow iff it lies
/// strictly inside some triangle or the triangles whose closure contains it
/// cover both sides of the edge's line.
pub fn boundary_edges(cloud: &PointCloud, complex: &FlagComplex) -> Vec<(usize, usize)> {
    let edges = edge_segments(cloud, complex);
    let triangles: Vec<Simplex> = complex
        .faces_up_to_card(3)
        .into_iter()
        .filter(|s| s.vertices().len() == 3)
        .collect();
    let pts = cloud.points();
    let one = Rational::one();
    let zero = Rational::from_integer(0.into());
    let half = Rational::new(1.into(), 2.into());

    let mut out = Vec::new();
    for ((u, v), seg) in &edges {
        let (pa, pb) = (&seg.a, &seg.b);
        let mut events: Vec<Rational> = vec![zero.clone(), one.clone()];
        for ((u2, v2), other) in &edges {
            if (u2, v2) == (u, v) {
                continue;
            }
            match segments_intersect(seg, other).expect("non-degenerate") {
                SegmentIntersection::Disjoint => continue,
                _ => {}
            }
            let d1 = orientation(pa, pb, &other.a).expect("pa != pb");
            let d2 = orientation(pa, pb, &other.b).expect("pa != pb");
            if d1 == Side::On && d2 == Side::On {
                // Collinear: both endpoints mark events (clamped by range).
                for q in [&other.a, &other.b] {
                    let t = segment_parameter(pa, pb, q);
                    if t > zero && t < one {
                        events.push(t);
                    }
                }
            } else if d1 != d2 {
                // A single intersection point of the supporting lines.
                let dxe = &pb.x - &pa.x;
                let dye = &pb.y - &pa.y;
                let dxo = &other.b.x - &other.a.x;
                let dyo = &other.b.y - &other.a.y;
                let denom = &dxe * &dyo - &dye * &dxo;
                if denom != zero {
                    let wx = &other.a.x - &pa.x;
                    let wy = &other.a.y - &pa.y;
                    let t = (&wx * &dyo - &wy * &dxo) / &denom;
                    if t > zero && t < one {
                        events.push(t);
                    }
                }
            }
        }
        for q in pts {
            if q != pa && q != pb && on_closed_segment(pa, pb, q) {
                let t = segment_parameter(pa, pb, q);
                if t > zero && t < one {
                    events.push(t);
                }
            }
        }
        events.sort();
        events.dedup();

        let mut is_boundary = false;
        for w in events.windows(2) {
            let t = (&w[0] + &w[1]) * &half;
            let sample = Point2::new(
                &pa.x + &t * (&pb.x - &pa.x),
                &pa.y + &t * (&pb.y - &pa.y),
            );
            if !sample_interior(&sample, pa, pb, &triangles, pts) {
                is_boundary = true;
                break;
            }
        }
        if is_boundary {
            out.push((*u, *v));
        }
    }
    out
}

/// Whether a (generic) point of an edge's open segment is interior to the
/// union of closed triangles: strictly inside one, or covered from both
/// sides of the edge's line.
fn sample_interior(
    sample: &Point2,
    pa: &Point2,
    pb: &Point2,
    triangles: &[Simplex],
    pts: &[Point2],
) -> bool {
    let mut left = false;
    let mut right = false;
    for tri in triangles {
        let [x, y, z] = [
            &pts[tri.vertices()[0]],
            &pts[tri.vertices()[1]],
            &pts[tri.vertices()[2]],
        ];
        match in_triangle(sample, x, y, z) {
            TrianglePosition::Inside => return true,
            TrianglePosition::Boundary => {
                // The triangle's interior lies on the side of its off-line
                // vertices (for a generic sample, the on-line vertices are
                // the side containing the sample).
                for w in [x, y, z] {
                    match orientation(pa, pb, w).expect("edge endpoints distinct") {
                        Side::Left => left = true,
                        Side::Right => right = true,
                        Side::On => {}
                    }
                }
                if left && right {
                    return true;
                }
            }
            TrianglePosition::Outside => {}
        }
    }
    false
}

/// All 6-vertex subsets inducing an octahedral sphere (complement of the
/// induced subgraph is a perfect matching), with their count.
///
/// Search is anchored at non-adjacent vertex pairs: an octahedron is such a
/// pair plus four common neighbors inducing a 4-cycle. Only vertices of
/// degree >= 4 can participate.
pub fn count_octahedra(complex: &FlagComplex) -> (usize, Vec<Vec<usize>>) {
    let g = complex.skeleton_1();
    let eligible: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) >= 4).collect();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    for (i, &u) in eligible.iter().enumerate() {
        for &v in &eligible[(i + 1)..] {
            if g.has_edge(u, v) {
                continue;
            }
            let common: Vec<usize> = eligible
                .iter()
                .copied()
                .filter(|&w| w != u && w != v && g.has_edge(w, u) && g.has_edge(w, v))
                .collect();
            let c = common.len();
            for a in 0..c {
                for b in (a + 1)..c {
                    for x in (b + 1)..c {
                        for y in (x + 1)..c {
                            let quad = [common[a], common[b], common[x], common[y]];
                            if induces_four_cycle(g, &quad) {
                                let mut six = vec![u, v, quad[0], quad[1], quad[2], quad[3]];
                                six.sort_unstable();
                                found.insert(six);
                            }
                        }
                    }
                }
            }
        }
    }
    let list: Vec<Vec<usize>> = found.into_iter().collect();
    (list.len(), list)
}

/// Whether four vertices induce a 4-cycle: exactly two non-edges, disjoint.
fn induces_four_cycle(g: &Graph, quad: &[usize; 4]) -> bool {
    let mut non = Vec::with_capacity(3);
    for i in 0..4 {
        for j in (i + 1)..4 {
            if !g.has_edge(quad[i], quad[j]) {
                non.push((i, j));
            }
        }
    }
    non.len() == 2 && {
        let ((a, b), (c, d)) = (non[0], non[1]);
        a != c && a != d && b != c && b != d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::GeomError;

    fn pt(xn: i64, xd: i64, yn: i64, yd: i64) -> Point2 {
        Point2::from_ratios(xn, xd, yn, yd)
    }

    #[test]
    fn udg_threshold_modes() {
        let close = PointCloud::unit(vec![pt(0, 1, 0, 1), pt(1, 2, 0, 1)]).unwrap();
        assert_eq!(build_udg(&close, ThresholdMode::StrictLess).edge_count(), 1);

        let exact = PointCloud::unit(vec![pt(0, 1, 0, 1), pt(1, 1, 0, 1)]).unwrap();
        assert_eq!(build_udg(&exact, ThresholdMode::StrictLess).edge_count(), 0);
        assert_eq!(build_udg(&exact, ThresholdMode::AtMost).edge_count(), 1);
    }

    #[test]
    fn cloud_validation() {
        assert_eq!(
            PointCloud::unit(vec![pt(1, 2, 1, 2), pt(2, 4, 3, 6)]).unwrap_err(),
            RipsError::DuplicatePoints { i: 0, j: 1 }
        );
        assert_eq!(
            PointCloud::new(vec![], Rational::from_integer(0.into())).unwrap_err(),
            RipsError::NonPositiveScale
        );
    }

    #[test]
    fn cross_polytope_points_hexagon() {
        let cloud = gen_cross_polytope_points(2).unwrap();
        assert_eq!(cloud.len(), 6);
        // Circumradius 11/20: the first point sits at (11/20, 0).
        assert_eq!(cloud.points()[0].x, Rational::new(11.into(), 20.into()));
        assert_eq!(cloud.points()[0].y, Rational::from_integer(0.into()));
        let g = build_udg(&cloud, ThresholdMode::StrictLess);
        // Antipodal pairs are the only non-edges.
        for i in 0..6 {
            for j in (i + 1)..6 {
                assert_eq!(g.has_edge(i, j), j - i != 3, "pair ({i},{j})");
            }
        }
        let k = build_rips(&cloud, ThresholdMode::StrictLess);
        assert_eq!(k.facets().len(), 8);
    }

    #[test]
    fn cross_polytope_points_higher() {
        for (n, expect_facets) in [(3usize, 16usize), (4, 32)] {
            let cloud = gen_cross_polytope_points(n).unwrap();
            assert_eq!(cloud.len(), 2 * n + 2);
            let k = build_rips(&cloud, ThresholdMode::StrictLess);
            assert_eq!(k.facets().len(), expect_facets, "n = {n}");
            assert!(k.facets().iter().all(|f| f.dim() == n));
        }
        assert_eq!(
            gen_cross_polytope_points(1).unwrap_err(),
            RipsError::CrossPolytopeTooSmall(1)
        );
    }

    #[test]
    fn cross_polytope_points_convex_position() {
        // Generated in angular order, so convexity = every consecutive turn
        // is a left turn (and the polygon closes up simply).
        for n in 2..=5 {
            let cloud = gen_cross_polytope_points(n).unwrap();
            let m = cloud.len();
            for i in 0..m {
                let a = &cloud.points()[i];
                let b = &cloud.points()[(i + 1) % m];
                let c = &cloud.points()[(i + 2) % m];
                assert_eq!(orientation(a, b, c), Ok(Side::Left), "turn at {i}, n={n}");
            }
        }
    }

    #[test]
    fn rips_small_examples() {
        let tri = PointCloud::unit(vec![pt(0, 1, 0, 1), pt(1, 2, 0, 1), pt(1, 4, 1, 4)]).unwrap();
        let k = build_rips(&tri, ThresholdMode::StrictLess);
        assert_eq!(k.facets().len(), 1);
        assert_eq!(k.facets()[0].vertices(), &[0, 1, 2]);

        let path = PointCloud::unit(vec![
            pt(0, 1, 0, 1),
            pt(9, 10, 0, 1),
            pt(18, 10, 0, 1),
        ])
        .unwrap();
        let k = build_rips(&path, ThresholdMode::StrictLess);
        assert_eq!(k.facets().len(), 2);
        assert!(k.facets().iter().all(|f| f.dim() == 1));
    }

    #[test]
    fn chain_points_shape() {
        let c1 = gen_octahedron_chain_points(1).unwrap();
        assert_eq!(c1.len(), 6);
        let k1 = build_rips(&c1, ThresholdMode::StrictLess);
        assert_eq!(k1.facets().len(), 8);
        // Antipodal pairs (0,3), (1,4), (2,5) are the non-edges.
        let g1 = build_udg(&c1, ThresholdMode::StrictLess);
        assert_eq!(g1.edge_count(), 12);
        for i in 0..6 {
            for j in (i + 1)..6 {
                assert_eq!(g1.has_edge(i, j), j - i != 3, "pair ({i},{j})");
            }
        }

        let c3 = gen_octahedron_chain_points(3).unwrap();
        assert_eq!(c3.len(), 16);
        let k3 = build_rips(&c3, ThresholdMode::StrictLess);
        assert_eq!(k3.facets().len(), 24);
        assert!(k3.is_closed().unwrap());
        assert_eq!(k3.strongly_connected_components().unwrap().len(), 3);

        assert_eq!(gen_octahedron_chain_points(0).unwrap_err(), RipsError::EmptyChain);
    }

    #[test]
    fn crossing_pairs_hexagon() {
        let cloud = gen_cross_polytope_points(2).unwrap();
        let k = build_rips(&cloud, ThresholdMode::StrictLess);
        assert_eq!(intersecting_edge_pairs(&cloud, &k).len(), 6);
    }

    #[test]
    fn crossing_pairs_convex_path_and_two_hexagons() {
        let path = PointCloud::unit(vec![
            pt(0, 1, 0, 1),
            pt(9, 10, 0, 1),
            pt(18, 10, 1, 10),
        ])
        .unwrap();
        let k = build_rips(&path, ThresholdMode::StrictLess);
        assert_eq!(intersecting_edge_pairs(&path, &k).len(), 0);

        let hex = gen_cross_polytope_points(2).unwrap();
        let far = hex.translated(&Rational::from_integer(10.into()), &Rational::one());
        let mut points = hex.points().to_vec();
        points.extend_from_slice(far.points());
        let both = PointCloud::unit(points).unwrap();
        let k = build_rips(&both, ThresholdMode::StrictLess);
        assert_eq!(intersecting_edge_pairs(&both, &k).len(), 12);
    }

    #[test]
    fn gamma2_hexagon_and_chain() {
        let hex = gen_cross_polytope_points(2).unwrap();
        let k = build_rips(&hex, ThresholdMode::StrictLess);
        let configs = gamma2_configurations(&hex, &k).unwrap();
        assert_eq!(configs.len(), 6);
        let g = k.skeleton_1();
        for cfg in &configs {
            assert!(!g.has_edge(cfg.c, cfg.d));
            assert!(g.has_edge(cfg.a, cfg.d));
            assert!(g.has_edge(cfg.b, cfg.c));
            assert!(g.has_edge(cfg.a, cfg.b));
        }

        let chain = gen_octahedron_chain_points(2).unwrap();
        let k = build_rips(&chain, ThresholdMode::StrictLess);
        assert_eq!(gamma2_configurations(&chain, &k).unwrap().len(), 12);
    }

    #[test]
    fn gamma2_rejects_open_complexes() {
        let tri = PointCloud::unit(vec![pt(0, 1, 0, 1), pt(1, 2, 0, 1), pt(1, 4, 1, 4)]).unwrap();
        let k = build_rips(&tri, ThresholdMode::StrictLess);
        assert_eq!(
            gamma2_configurations(&tri, &k).unwrap_err(),
            RipsError::NotClosed(vec![0, 1])
        );

        let path = PointCloud::unit(vec![pt(0, 1, 0, 1), pt(1, 2, 0, 1), pt(1, 1, 1, 2)]).unwrap();
        let k = build_rips(&path, ThresholdMode::StrictLess);
        assert!(matches!(
            gamma2_configurations(&path, &k).unwrap_err(),
            RipsError::NotPureTwoDimensional(_)
        ));
    }

    #[test]
    fn boundary_edges_hexagon() {
        let hex = gen_cross_polytope_points(2).unwrap();
        let k = build_rips(&hex, ThresholdMode::StrictLess);
        let boundary = boundary_edges(&hex, &k);
        // Exactly the six polygon sides (consecutive points).
        let expected: Vec<(usize, usize)> =
            vec![(0, 1), (0, 5), (1, 2), (2, 3), (3, 4), (4, 5)];
        assert_eq!(boundary, expected);
    }

    #[test]
    fn boundary_edges_simplex_and_chain() {
        let tri = PointCloud::unit(vec![pt(0, 1, 0, 1), pt(1, 2, 0, 1), pt(1, 4, 1, 4)]).unwrap();
        let k = build_rips(&tri, ThresholdMode::StrictLess);
        assert_eq!(boundary_edges(&tri, &k).len(), 3);

        let chain = gen_octahedron_chain_points(2).unwrap();
        let k = build_rips(&chain, ThresholdMode::StrictLess);
        let boundary = boundary_edges(&chain, &k);
        assert_eq!(boundary.len(), 12);
        // All are hexagon sides: consecutive points of either copy.
        let g = k.skeleton_1();
        for &(u, v) in &boundary {
            assert!(g.has_edge(u, v));
            let d2 = chain.dist2(u, v);
            let side_long = Rational::new(313.into(), 625.into()); // 0.5008
            let side_short = Rational::new(9.into(), 100.into()); // 0.09
            assert!(
                d2 == side_long || d2 == side_short,
                "({u},{v}) has squared length {d2}"
            );
        }
    }

    #[test]
    fn octahedron_census_counts() {
        let hex = gen_cross_polytope_points(2).unwrap();
        let k = build_rips(&hex, ThresholdMode::StrictLess);
        let (count, sets) = count_octahedra(&k);
        assert_eq!(count, 1);
        assert_eq!(sets, vec![vec![0, 1, 2, 3, 4, 5]]);

        for copies in [2usize, 3] {
            let chain = gen_octahedron_chain_points(copies).unwrap();
            let k = build_rips(&chain, ThresholdMode::StrictLess);
            assert_eq!(count_octahedra(&k).0, copies, "chain of {copies}");
        }

        let c6 = clique_complex(Graph::cycle(6));
        assert_eq!(count_octahedra(&c6).0, 0);
    }

    #[test]
    fn census_matches_crossing_pairs_over_six() {
        for copies in 1..=3usize {
            let chain = gen_octahedron_chain_points(copies).unwrap();
            let k = build_rips(&chain, ThresholdMode::StrictLess);
            let crossings = intersecting_edge_pairs(&chain, &k).len();
            assert_eq!(count_octahedra(&k).0, crossings / 6);
            assert_eq!(crossings % 6, 0);
        }
    }

    #[test]
    fn facets_are_nondegenerate_triangles() {
        // No facet vertex lies in the convex hull of the facet's other
        // vertices, on the standard fixtures.
        for cloud in [
            gen_cross_polytope_points(2).unwrap(),
            gen_octahedron_chain_points(3).unwrap(),
        ] {
            let k = build_rips(&cloud, ThresholdMode::StrictLess);
            let pts = cloud.points();
            for f in k.facets() {
                let vs = f.vertices();
                assert_eq!(vs.len(), 3);
                for i in 0..3 {
                    let (p, q, s) = (&pts[vs[i]], &pts[vs[(i + 1) % 3]], &pts[vs[(i + 2) % 3]]);
                    assert_eq!(
                        orientation(q, s, p).map(|side| side == Side::On),
                        Ok(false),
                        "degenerate facet {vs:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn segment_error_surfaces() {
        // Degenerate segments are rejected at the geometry layer, so clouds
        // with repeated points cannot even be formed; this pins the error.
        let p = pt(1, 2, 1, 2);
        assert_eq!(
            Segment::new(p.clone(), p).unwrap_err(),
            GeomError::DegenerateSegment(pt(1, 2, 1, 2))
        );
    }
}
