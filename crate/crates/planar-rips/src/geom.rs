//! Exact planar predicates over rational coordinates.
//!
//! Every predicate in this module is decided by the sign of an integer
//! polynomial in the input coordinates; there are no tolerances and no
//! rounding. Coordinates are arbitrary-precision rationals, so the answers
//! are exact for any input that can be written down.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

/// Exact rational scalar used for all coordinates.
pub type Rational = BigRational;

/// A point of the plane with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point2 {
    pub x: Rational,
    pub y: Rational,
}

impl Point2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point2 { x, y }
    }

    /// Point with integer coordinates.
    pub fn from_ints(x: i64, y: i64) -> Self {
        Point2 {
            x: Rational::from_integer(x.into()),
            y: Rational::from_integer(y.into()),
        }
    }

    /// Point `(xn/xd, yn/yd)`. Panics if a denominator is zero.
    pub fn from_ratios(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        Point2 {
            x: Rational::new(xn.into(), xd.into()),
            y: Rational::new(yn.into(), yd.into()),
        }
    }

    /// Exact squared Euclidean distance.
    pub fn dist2(&self, other: &Point2) -> Rational {
        let dx = &self.x - &other.x;
        let dy = &self.y - &other.y;
        &dx * &dx + &dy * &dy
    }
}

impl std::fmt::Display for Point2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Position of a point relative to a directed line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    On,
}

impl Side {
    /// Mirror across the line: swaps `Left` and `Right`, fixes `On`.
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
            Side::On => Side::On,
        }
    }
}

/// A line segment with distinct endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub a: Point2,
    pub b: Point2,
}

impl Segment {
    /// Errors if the endpoints coincide (the invariant `a != b`).
    pub fn new(a: Point2, b: Point2) -> Result<Self, GeomError> {
        if a == b {
            return Err(GeomError::DegenerateSegment(a));
        }
        Ok(Segment { a, b })
    }
}

/// How two segments meet, as point sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SegmentIntersection {
    /// Closed segments share no point.
    Disjoint,
    /// The open segments share at least one point (a proper crossing, or a
    /// collinear overlap of positive length).
    InteriorCross,
    /// Closed segments meet, but only at endpoints / boundary points.
    Touch,
}

/// Where a point sits relative to a (possibly degenerate) triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrianglePosition {
    Inside,
    Boundary,
    Outside,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeomError {
    #[error("degenerate line: both endpoints are {0}")]
    DegenerateLine(Point2),
    #[error("degenerate bisector: both sites are {0}")]
    DegenerateBisector(Point2),
    #[error("degenerate segment: both endpoints are {0}")]
    DegenerateSegment(Point2),
    #[error("points {0}, {1}, {2} are collinear")]
    CollinearInput(Point2, Point2, Point2),
    #[error("polygon needs at least 3 vertices, got {0}")]
    PolygonTooSmall(usize),
    #[error("polygon is not simple (self-intersecting or repeated vertices)")]
    PolygonNotSimple,
    #[error("query point {0} lies strictly inside the polygon")]
    PointInsidePolygon(Point2),
    #[error("edge index {index} out of range for polygon with {len} edges")]
    EdgeIndexOutOfRange { index: usize, len: usize },
}

/// Sign of `(b - a) x (p - a)`, computed over the integers.
///
/// Works on unreduced numerator/denominator pairs so that no gcd is ever
/// taken; only the sign of the cross product is needed. Denominators of
/// `BigRational` are kept positive by its constructors, which this relies on.
fn cross_sign(a: &Point2, b: &Point2, p: &Point2) -> i8 {
    // (b - a) as an unreduced fraction pair, likewise (p - a).
    let (uxn, uxd) = sub_frac(&b.x, &a.x);
    let (uyn, uyd) = sub_frac(&b.y, &a.y);
    let (vxn, vxd) = sub_frac(&p.x, &a.x);
    let (vyn, vyd) = sub_frac(&p.y, &a.y);
    // ux*vy - uy*vx, cross-multiplied onto a common positive denominator.
    let lhs = uxn * vyn * uyd * vxd;
    let rhs = uyn * vxn * uxd * vyd;
    match lhs.cmp(&rhs) {
        std::cmp::Ordering::Greater => 1,
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
    }
}

/// `p - q` as an unreduced `(numerator, denominator)` pair with positive
/// denominator.
fn sub_frac(p: &Rational, q: &Rational) -> (BigInt, BigInt) {
    (
        p.numer() * q.denom() - q.numer() * p.denom(),
        p.denom() * q.denom(),
    )
}

/// Side of the directed line `a -> b` on which `p` lies.
///
/// The sign convention is the usual counterclockwise one: `Left` means the
/// cross product `(b - a) x (p - a)` is positive, i.e. `p` is to the left
/// when walking from `a` to `b`.
pub fn orientation(a: &Point2, b: &Point2, p: &Point2) -> Result<Side, GeomError> {
    if a == b {
        return Err(GeomError::DegenerateLine(a.clone()));
    }
    Ok(match cross_sign(a, b, p) {
        1 => Side::Left,
        -1 => Side::Right,
        _ => Side::On,
    })
}

/// Side of the perpendicular bisector of `a, b` on which `p` lies.
///
/// `Left` means `p` is strictly closer to `a`, `Right` strictly closer to
/// `b`, `On` equidistant. Decided by comparing exact squared distances.
pub fn bisector_side(a: &Point2, b: &Point2, p: &Point2) -> Result<Side, GeomError> {
    if a == b {
        return Err(GeomError::DegenerateBisector(a.clone()));
    }
    let da = p.dist2(a);
    let db = p.dist2(b);
    Ok(match da.cmp(&db) {
        std::cmp::Ordering::Less => Side::Left,
        std::cmp::Ordering::Greater => Side::Right,
        std::cmp::Ordering::Equal => Side::On,
    })
}

/// Whether `p` lies on the closed segment `a..b` (endpoints allowed).
pub(crate) fn on_closed_segment(a: &Point2, b: &Point2, p: &Point2) -> bool {
    if a == b {
        return p == a;
    }
    if cross_sign(a, b, p) != 0 {
        return false;
    }
    // Collinear: check the coordinate range on the dominant axis.
    if a.x != b.x {
        within(&a.x, &b.x, &p.x)
    } else {
        within(&a.y, &b.y, &p.y)
    }
}

fn within(lo: &Rational, hi: &Rational, v: &Rational) -> bool {
    if lo <= hi {
        lo <= v && v <= hi
    } else {
        hi <= v && v <= lo
    }
}

/// Classify how two segments meet. Exact; errors on zero-length segments.
pub fn segments_intersect(s: &Segment, t: &Segment) -> Result<SegmentIntersection, GeomError> {
    if s.a == s.b {
        return Err(GeomError::DegenerateSegment(s.a.clone()));
    }
    if t.a == t.b {
        return Err(GeomError::DegenerateSegment(t.a.clone()));
    }
    let d1 = cross_sign(&t.a, &t.b, &s.a);
    let d2 = cross_sign(&t.a, &t.b, &s.b);
    let d3 = cross_sign(&s.a, &s.b, &t.a);
    let d4 = cross_sign(&s.a, &s.b, &t.b);

    if d1 == 0 && d2 == 0 {
        // Collinear segments: reduce to interval overlap on the dominant axis.
        let horizontal = s.a.x != s.b.x;
        let key = |p: &Point2| if horizontal { p.x.clone() } else { p.y.clone() };
        let (mut s0, mut s1) = (key(&s.a), key(&s.b));
        if s0 > s1 {
            std::mem::swap(&mut s0, &mut s1);
        }
        let (mut t0, mut t1) = (key(&t.a), key(&t.b));
        if t0 > t1 {
            std::mem::swap(&mut t0, &mut t1);
        }
        let lo = s0.max(t0);
        let hi = s1.min(t1);
        return Ok(match lo.cmp(&hi) {
            std::cmp::Ordering::Greater => SegmentIntersection::Disjoint,
            std::cmp::Ordering::Equal => SegmentIntersection::Touch,
            std::cmp::Ordering::Less => SegmentIntersection::InteriorCross,
        });
    }

    if d1 != 0 && d2 != 0 && d1 != d2 && d3 != 0 && d4 != 0 && d3 != d4 {
        return Ok(SegmentIntersection::InteriorCross);
    }

    let touches = (d1 == 0 && on_closed_segment(&t.a, &t.b, &s.a))
        || (d2 == 0 && on_closed_segment(&t.a, &t.b, &s.b))
        || (d3 == 0 && on_closed_segment(&s.a, &s.b, &t.a))
        || (d4 == 0 && on_closed_segment(&s.a, &s.b, &t.b));
    Ok(if touches {
        SegmentIntersection::Touch
    } else {
        SegmentIntersection::Disjoint
    })
}

/// Locate `p` relative to the closed triangle (or degenerate segment)
/// spanned by `a, b, c`.
///
/// For collinear `a, b, c` the convex hull is a segment, so `Inside` is
/// impossible and `Boundary` means `p` lies on that segment.
pub fn in_triangle(p: &Point2, a: &Point2, b: &Point2, c: &Point2) -> TrianglePosition {
    let sab = if a == b { 0 } else { cross_sign(a, b, p) };
    let sbc = if b == c { 0 } else { cross_sign(b, c, p) };
    let sca = if c == a { 0 } else { cross_sign(c, a, p) };

    let tri = if a == b || b == c { 0 } else { cross_sign(a, b, c) };
    if tri == 0 {
        // Degenerate hull: a segment (or a point).
        let on = on_closed_segment(a, b, p)
            || on_closed_segment(b, c, p)
            || on_closed_segment(c, a, p);
        return if on {
            TrianglePosition::Boundary
        } else {
            TrianglePosition::Outside
        };
    }
    // Normalize to counterclockwise so Inside means all-Left.
    let (sab, sbc, sca) = if tri > 0 {
        (sab, sbc, sca)
    } else {
        (-sab, -sbc, -sca)
    };
    if sab > 0 && sbc > 0 && sca > 0 {
        TrianglePosition::Inside
    } else if sab >= 0 && sbc >= 0 && sca >= 0 {
        TrianglePosition::Boundary
    } else {
        TrianglePosition::Outside
    }
}

/// Whether `c` lies in the closed convex hull of `{a, b, x}`, decided by the
/// two half-plane tests.
///
/// The region of points `x` for which this holds is the intersection of two
/// closed half-planes through `c`: for `a, b, c` in clockwise order it is
/// points on-or-right of `a -> c` and on-or-left of `b -> c`; mirrored for
/// counterclockwise order. This must (and does, see the tests) agree with
/// `in_triangle(c, a, b, x) != Outside`.
pub fn conv_abx_region_contains(
    a: &Point2,
    b: &Point2,
    c: &Point2,
    x: &Point2,
) -> Result<bool, GeomError> {
    if a == b {
        return Err(GeomError::DegenerateLine(a.clone()));
    }
    let tri = cross_sign(a, b, c);
    if tri == 0 {
        return Err(GeomError::CollinearInput(a.clone(), b.clone(), c.clone()));
    }
    let sac = cross_sign(a, c, x);
    let sbc = cross_sign(b, c, x);
    let contained = if tri < 0 {
        // a, b, c clockwise: x in cl(right of a->c) and cl(left of b->c).
        sac <= 0 && sbc >= 0
    } else {
        sac >= 0 && sbc <= 0
    };
    debug_assert_eq!(
        contained,
        in_triangle(c, a, b, x) != TrianglePosition::Outside,
        "half-plane region test disagrees with in_triangle at a={a} b={b} c={c} x={x}"
    );
    Ok(contained)
}

/// Sign of the dot product `(p - q) . (r - q)`; negative means the angle at
/// `q` between `p` and `r` is obtuse.
pub(crate) fn dot_sign(q: &Point2, p: &Point2, r: &Point2) -> i8 {
    let (uxn, uxd) = sub_frac(&p.x, &q.x);
    let (uyn, uyd) = sub_frac(&p.y, &q.y);
    let (vxn, vxd) = sub_frac(&r.x, &q.x);
    let (vyn, vyd) = sub_frac(&r.y, &q.y);
    let lhs = uxn * vxn * uyd * vyd;
    let rhs = -(uyn * vyn * uxd * vxd);
    match lhs.cmp(&rhs) {
        std::cmp::Ordering::Greater => 1,
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
    }
}

/// Where a point sits relative to a simple polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolygonPosition {
    Inside,
    OnBoundary,
    Outside,
}

fn validate_polygon(polygon: &[Point2]) -> Result<(), GeomError> {
    if polygon.len() < 3 {
        return Err(GeomError::PolygonTooSmall(polygon.len()));
    }
    if !polygon_is_simple(polygon) {
        return Err(GeomError::PolygonNotSimple);
    }
    Ok(())
}

/// Whether the vertex list bounds a simple polygon: distinct vertices,
/// non-adjacent edges disjoint, adjacent edges meeting only at the shared
/// vertex.
pub fn polygon_is_simple(polygon: &[Point2]) -> bool {
    let m = polygon.len();
    if m < 3 {
        return false;
    }
    for i in 0..m {
        for j in (i + 1)..m {
            if polygon[i] == polygon[j] {
                return false;
            }
        }
    }
    let edge = |i: usize| {
        Segment::new(polygon[i].clone(), polygon[(i + 1) % m].clone())
            .expect("distinct vertices imply non-degenerate edges")
    };
    for i in 0..m {
        let ei = edge(i);
        for j in (i + 1)..m {
            let adjacent = j == i + 1 || (i == 0 && j == m - 1);
            let class = segments_intersect(&ei, &edge(j)).expect("edges are non-degenerate");
            match class {
                SegmentIntersection::Disjoint => {
                    if adjacent {
                        return false; // consecutive edges must share a vertex
                    }
                }
                SegmentIntersection::Touch => {
                    if !adjacent {
                        return false;
                    }
                }
                SegmentIntersection::InteriorCross => return false,
            }
        }
    }
    true
}

/// Exact point-in-polygon test (crossing parity with a half-open vertex
/// rule). The polygon must be simple.
pub fn point_in_polygon(p: &Point2, polygon: &[Point2]) -> Result<PolygonPosition, GeomError> {
    validate_polygon(polygon)?;
    let m = polygon.len();
    for i in 0..m {
        if on_closed_segment(&polygon[i], &polygon[(i + 1) % m], p) {
            return Ok(PolygonPosition::OnBoundary);
        }
    }
    let mut crossings = 0usize;
    for i in 0..m {
        let a = &polygon[i];
        let b = &polygon[(i + 1) % m];
        // Count edges crossing the horizontal ray to the right of p, with the
        // half-open rule [min_y, max_y) so shared vertices are not double
        // counted. Horizontal edges never satisfy the straddle condition.
        let upward = a.y <= p.y && p.y < b.y;
        let downward = b.y <= p.y && p.y < a.y;
        if upward && cross_sign(a, b, p) > 0 {
            crossings += 1;
        } else if downward && cross_sign(a, b, p) < 0 {
            crossings += 1;
        }
    }
    Ok(if crossings % 2 == 1 {
        PolygonPosition::Inside
    } else {
        PolygonPosition::Outside
    })
}

/// Whether `v` guards the polygon edge at `edge_index`: every segment from
/// `v` to a polygon vertex meets that closed edge.
///
/// `v` may lie on the polygon boundary but not strictly inside it.
pub fn is_guard_point(
    v: &Point2,
    polygon: &[Point2],
    edge_index: usize,
) -> Result<bool, GeomError> {
    validate_polygon(polygon)?;
    let m = polygon.len();
    if edge_index >= m {
        return Err(GeomError::EdgeIndexOutOfRange {
            index: edge_index,
            len: m,
        });
    }
    if point_in_polygon(v, polygon)? == PolygonPosition::Inside {
        return Err(GeomError::PointInsidePolygon(v.clone()));
    }
    Ok(guards_edge(v, polygon, edge_index))
}

fn guards_edge(v: &Point2, polygon: &[Point2], edge_index: usize) -> bool {
    let m = polygon.len();
    let ea = &polygon[edge_index];
    let eb = &polygon[(edge_index + 1) % m];
    let edge = Segment::new(ea.clone(), eb.clone()).expect("polygon edges are non-degenerate");
    for p in polygon {
        if p == v {
            // The sight segment degenerates to the point v itself.
            if !on_closed_segment(ea, eb, v) {
                return false;
            }
            continue;
        }
        let sight = Segment::new(v.clone(), p.clone()).expect("v != p");
        if segments_intersect(&sight, &edge).expect("non-degenerate") == SegmentIntersection::Disjoint
        {
            return false;
        }
    }
    true
}

/// Result of searching for a guard edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GuardEdgeSearch {
    /// Index of an edge every sight segment crosses.
    Found(usize),
    /// The ray precondition failed at this polygon vertex: some intersection
    /// of the ray from `v` through that vertex lies beyond the vertex.
    RayConditionViolated { vertex: usize },
    /// No edge qualifies even though the ray precondition holds. The guard
    /// lemma says this cannot happen; it is reported rather than panicking so
    /// a counterexample would surface in test output.
    NotFound,
}

/// Whether every intersection of each ray `v -> vertex` with the polygon lies
/// between `v` and that vertex (inclusive).
///
/// `strict_grazings` controls the one underdetermined case: intersections
/// beyond the vertex where the ray merely grazes the boundary (meets an edge
/// endpoint, or runs along an edge) count as violations only when the flag is
/// set. Proper crossings beyond the vertex always violate.
pub fn ray_condition_holds(
    v: &Point2,
    polygon: &[Point2],
    strict_grazings: bool,
) -> Result<bool, GeomError> {
    Ok(ray_condition_witness(v, polygon, strict_grazings)?.is_none())
}

/// As `ray_condition_holds`, but returns the index of a violating vertex.
fn ray_condition_witness(
    v: &Point2,
    polygon: &[Point2],
    strict_grazings: bool,
) -> Result<Option<usize>, GeomError> {
    validate_polygon(polygon)?;
    for (pi, p) in polygon.iter().enumerate() {
        if p == v {
            continue;
        }
        if ray_violated_beyond(v, p, polygon, strict_grazings) {
            return Ok(Some(pi));
        }
    }
    Ok(None)
}

/// Does the ray from `v` through `p` meet the polygon at a parameter beyond
/// `p` (t > 1) in a way that counts as a violation?
fn ray_violated_beyond(v: &Point2, p: &Point2, polygon: &[Point2], strict_grazings: bool) -> bool {
    let m = polygon.len();
    let dx = &p.x - &v.x;
    let dy = &p.y - &v.y;
    let one = Rational::from_integer(1.into());
    for i in 0..m {
        let (qa, qb) = (&polygon[i], &polygon[(i + 1) % m]);
        let ex = &qb.x - &qa.x;
        let ey = &qb.y - &qa.y;
        // Solve v + t*d = qa + s*e.
        let denom = &dx * &ey - &dy * &ex;
        let wx = &qa.x - &v.x;
        let wy = &qa.y - &v.y;
        if denom.is_zero() {
            // Ray parallel to the edge; only collinear overlap can matter.
            if !(&wx * &dy - &wy * &dx).is_zero() {
                continue;
            }
            // Edge lies on the ray line: grazing if any part sits beyond p.
            let t_of = |q: &Point2| -> Rational {
                if !dx.is_zero() {
                    (&q.x - &v.x) / &dx
                } else {
                    (&q.y - &v.y) / &dy
                }
            };
            let t_hi = t_of(qa).max(t_of(qb));
            if t_hi > one && strict_grazings {
                return true;
            }
            continue;
        }
        let t = (&wx * &ey - &wy * &ex) / &denom;
        let s = (&wx * &dy - &wy * &dx) / &denom;
        if s < Rational::zero() || s > one || t <= one {
            continue;
        }
        // An intersection strictly beyond p. Proper crossings always violate;
        // endpoint grazings only under the strict flag.
        let endpoint_graze = s.is_zero() || s == one;
        if !endpoint_graze || strict_grazings {
            return true;
        }
    }
    false
}

/// Search for a guard edge of the polygon as seen from `v`.
///
/// `v` must be outside or on the polygon. The ray precondition is checked
/// first (with lenient grazing semantics); if it fails, the violating vertex
/// is reported instead of an edge.
pub fn find_guard_edge(v: &Point2, polygon: &[Point2]) -> Result<GuardEdgeSearch, GeomError> {
    validate_polygon(polygon)?;
    if point_in_polygon(v, polygon)? == PolygonPosition::Inside {
        return Err(GeomError::PointInsidePolygon(v.clone()));
    }
    if let Some(vertex) = ray_condition_witness(v, polygon, false)? {
        return Ok(GuardEdgeSearch::RayConditionViolated { vertex });
    }
    for e in 0..polygon.len() {
        if guards_edge(v, polygon, e) {
            return Ok(GuardEdgeSearch::Found(e));
        }
    }
    Ok(GuardEdgeSearch::NotFound)
}
