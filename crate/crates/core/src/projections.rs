//! Radial and metric projections, nearest points on lines, and bisectors of
//! point pairs.

use rand::Rng;

use crate::error::{Error, Result};
use crate::norms::{Metric, NormSpec};
use crate::plane::{symp, ConvexPolygon, Point2};
use crate::sampling::par_trials;

/// Tolerance on expansion ratios.
pub const RATIO_TOL: f64 = 1e-9;
/// Local-search configuration of the witness search.
pub const LOCAL_STARTS: usize = 10;
pub const LOCAL_STEPS: usize = 50;

/// `x` inside the unit ball, `x/‖x‖` outside.
pub fn radial_projection(n: &NormSpec, x: Point2) -> Point2 {
    let g = n.gauge(x);
    if g <= 1.0 {
        x
    } else {
        x / g
    }
}

/// Polygon that is star-shaped with respect to the origin, given
/// counterclockwise with the origin strictly inside every edge's sector.
#[derive(Clone, Debug, PartialEq)]
pub struct StarPolygon {
    vertices: Vec<Point2>,
}

impl StarPolygon {
    pub fn new(vertices: Vec<Point2>) -> Result<Self> {
        let k = vertices.len();
        if k < 3 || vertices.iter().any(|v| !v.is_finite()) {
            return Err(Error::Invalid("star polygon needs at least 3 finite vertices".into()));
        }
        let mut turn = 0.0;
        for i in 0..k {
            let (a, b) = (vertices[i], vertices[(i + 1) % k]);
            if symp(a, b) <= 0.0 {
                return Err(Error::Invalid("polygon is not star-shaped about the origin".into()));
            }
            turn += symp(a, b).atan2(a.dot(b));
        }
        if (turn - std::f64::consts::TAU).abs() > 1e-9 {
            return Err(Error::Invalid("polygon winds around the origin more than once".into()));
        }
        Ok(Self { vertices })
    }

    pub fn from_convex(p: &ConvexPolygon) -> Result<Self> {
        Self::new(p.vertices().to_vec())
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    /// Minkowski functional: `x / gauge(x)` is the boundary point on the ray through `x`.
    pub fn gauge(&self, x: Point2) -> f64 {
        if x.max_abs() == 0.0 {
            return 0.0;
        }
        let k = self.vertices.len();
        for i in 0..k {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % k]);
            if symp(a, x) >= 0.0 && symp(x, b) >= 0.0 {
                return symp(b - a, x) / symp(b - a, a);
            }
        }
        unreachable!("edge sectors cover the plane")
    }

    pub fn radial_projection(&self, x: Point2) -> Point2 {
        let g = self.gauge(x);
        if g <= 1.0 {
            x
        } else {
            x / g
        }
    }
}

/// Nearest-point set of a convex polygon: a single point or a segment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ProjectionFace {
    Point(Point2),
    Segment(Point2, Point2),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricProjection {
    /// The midpoint of the optimal set.
    pub point: Point2,
    pub face: ProjectionFace,
    pub distance: f64,
}

/// Nearest points of `s` to `x` in the norm.
pub fn metric_projection(n: &NormSpec, s: &ConvexPolygon, x: Point2) -> MetricProjection {
    metric_projection_in(n, Metric::Norm, s, x)
}

pub fn metric_projection_in(n: &NormSpec, metric: Metric, s: &ConvexPolygon, x: Point2) -> MetricProjection {
    if s.contains(x, 0.0) {
        return MetricProjection { point: x, face: ProjectionFace::Point(x), distance: 0.0 };
    }
    let per_edge: Vec<(f64, Point2, Point2)> = s
        .edges()
        .map(|(a, b)| {
            let (t0, t1) = n.segment_nearest_params(metric, x, a, b);
            let d = n.dist(metric, x - a.lerp(b, 0.5 * (t0 + t1)));
            (d, a.lerp(b, t0), a.lerp(b, t1))
        })
        .collect();
    let d = per_edge.iter().map(|e| e.0).fold(f64::INFINITY, f64::min);
    let tol = 1e-12 * d.max(s.diameter());
    let pts: Vec<Point2> = per_edge
        .iter()
        .filter(|e| e.0 <= d + tol)
        .flat_map(|e| [e.1, e.2])
        .collect();
    let (mut p, mut q, mut far) = (pts[0], pts[0], 0.0);
    for (i, &u) in pts.iter().enumerate() {
        for &v in &pts[i + 1..] {
            let e = (u - v).euclid();
            if e > far {
                (p, q, far) = (u, v, e);
            }
        }
    }
    let face = if far <= tol {
        ProjectionFace::Point(p)
    } else {
        ProjectionFace::Segment(p, q)
    };
    MetricProjection { point: p.lerp(q, 0.5), face, distance: d }
}

#[derive(Clone, Debug)]
pub enum ProjectionMap {
    /// Radial projection onto the unit ball.
    Radial,
    /// Metric projection (in the norm) onto a convex polygon.
    Metric(ConvexPolygon),
    /// Radial projection onto a star-shaped polygon.
    Star(StarPolygon),
}

impl ProjectionMap {
    pub fn apply(&self, n: &NormSpec, x: Point2) -> Point2 {
        match self {
            ProjectionMap::Radial => radial_projection(n, x),
            ProjectionMap::Metric(s) => metric_projection(n, s, x).point,
            ProjectionMap::Star(s) => s.radial_projection(x),
        }
    }

    /// Half-width of the sampling box.
    fn reach(&self, n: &NormSpec) -> f64 {
        let r = match self {
            ProjectionMap::Radial => n.ball_polygon(64).diameter() / 2.0,
            ProjectionMap::Metric(s) => s.vertices().iter().map(|v| v.max_abs()).fold(0.0, f64::max),
            ProjectionMap::Star(s) => s.vertices().iter().map(|v| v.max_abs()).fold(0.0, f64::max),
        };
        2.0 * r
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanResult {
    pub max_ratio: f64,
    pub witness: (Point2, Point2),
}

impl ScanResult {
    pub fn is_nonexpansive(&self) -> bool {
        self.max_ratio <= 1.0 + RATIO_TOL
    }
}

fn expansion(n: &NormSpec, map: &ProjectionMap, metric: Metric, v: Point2, w: Point2) -> f64 {
    let d = n.dist(metric, v - w);
    if !(d > 1e-12) {
        return 0.0;
    }
    n.dist(metric, map.apply(n, v) - map.apply(n, w)) / d
}

/// Largest expansion ratio of `map` in `metric` over `trials` random pairs,
/// followed by a coordinate-wise local maximization from the best pairs.
pub fn nonexpansive_scan(n: &NormSpec, map: &ProjectionMap, metric: Metric, trials: usize, seed: u64) -> ScanResult {
    let reach = map.reach(n);
    let mut found: Vec<(f64, Point2, Point2)> = par_trials(seed, trials, |k, rng| {
        let mut pt = |r: f64| Point2::new(rng.gen_range(-r..=r), rng.gen_range(-r..=r));
        // alternate wide pairs with close pairs
        let v = pt(reach);
        let w = if k % 2 == 0 { pt(reach) } else { v + pt(0.1 * reach) };
        (expansion(n, map, metric, v, w), v, w)
    });
    found.sort_by(|a, b| b.0.total_cmp(&a.0));
    found.truncate(LOCAL_STARTS);
    let refined = found.into_iter().map(|(r, v, w)| local_maximize(n, map, metric, r, v, w, 0.1 * reach));
    let best = refined.fold((0.0, Point2::ORIGIN, Point2::ORIGIN), |b, c| if c.0 > b.0 { c } else { b });
    ScanResult { max_ratio: best.0, witness: (best.1, best.2) }
}

fn local_maximize(
    n: &NormSpec,
    map: &ProjectionMap,
    metric: Metric,
    mut r: f64,
    mut v: Point2,
    mut w: Point2,
    mut h: f64,
) -> (f64, Point2, Point2) {
    let moves = [(1.0, 0.0, 0.0, 0.0), (0.0, 1.0, 0.0, 0.0), (0.0, 0.0, 1.0, 0.0), (0.0, 0.0, 0.0, 1.0)];
    for _ in 0..LOCAL_STEPS {
        let mut improved = false;
        for &(a, b, c, d) in &moves {
            for s in [h, -h] {
                let (v2, w2) = (v + Point2::new(a, b) * s, w + Point2::new(c, d) * s);
                let r2 = expansion(n, map, metric, v2, w2);
                if r2 > r {
                    (r, v, w, improved) = (r2, v2, w2, true);
                }
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    (r, v, w)
}

/// Largest gauge of an antinorm-nearest point on the line `oy` to unit `x`,
/// over random unit pairs. At most one in every Minkowski plane.
pub fn nearest_point_scan(n: &NormSpec, trials: usize, seed: u64) -> f64 {
    let polygonized;
    let n = match n {
        NormSpec::Mixed(_) => {
            polygonized = n.polygonized();
            &polygonized
        }
        _ => n,
    };
    par_trials(seed, trials, |_, rng| {
        let x = crate::sampling::random_direction(rng);
        let y = crate::sampling::random_direction(rng);
        let (x, y) = (x / n.gauge(x), y / n.gauge(y));
        if symp(x, y).abs() < 1e-9 {
            return 0.0;
        }
        let (t0, t1) = n.line_nearest_params(Metric::Antinorm, x, Point2::ORIGIN, y);
        n.gauge(y * t0).max(n.gauge(y * t1))
    })
    .into_iter()
    .fold(0.0, f64::max)
}

/// Strip bounded by the lines through `p` and `q` with the given direction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StripSpec {
    pub p: Point2,
    pub q: Point2,
    pub direction: Point2,
}

impl StripSpec {
    pub fn new(p: Point2, q: Point2, direction: Point2) -> Result<Self> {
        if symp(direction, q - p).abs() <= 1e-12 * direction.euclid() * (q - p).euclid() {
            return Err(Error::Dependent);
        }
        Ok(Self { p, q, direction })
    }

    /// Position across the strip: 0 on the line through `p`, 1 on the line through `q`.
    pub fn coordinate(&self, x: Point2) -> f64 {
        symp(x - self.p, self.direction) / symp(self.q - self.p, self.direction)
    }

    /// Strip of the theorem: lines tangent at `p`, `q` to the anticircle with
    /// diameter `pq`, parallel to `v` with `v ⊣ q - p`.
    pub fn anticircle(n: &NormSpec, p: Point2, q: Point2) -> Result<Self> {
        let d = q - p;
        let (v, _) = n.unit_face(Metric::Norm, d.rot270());
        Self::new(p, q, v)
    }

    /// Lines supporting the norm circle with diameter `pq` at `p` and `q`.
    pub fn circle(n: &NormSpec, p: Point2, q: Point2) -> Result<Self> {
        let cone = n.normal_cone(q - p)?;
        Self::new(p, q, cone.dir_lo())
    }
}

/// Sample points of the bisector `{x : ‖x - p‖ = ‖x - q‖}` on `count` lines
/// parallel to `q - p`, at offsets spread over five times `‖q - p‖` on either side.
pub fn bisector_sample(n: &NormSpec, p: Point2, q: Point2, count: usize) -> Result<Vec<Point2>> {
    if !n.is_strictly_convex() {
        return Err(Error::StrictConvexityRequired);
    }
    let d = q - p;
    let len = d.euclid();
    if !(n.gauge(d) > 1e-12 * p.max_abs().max(q.max_abs()).max(1.0)) {
        return Err(Error::ZeroVector);
    }
    let mid = p.lerp(q, 0.5);
    let perp = d.rot90() / len;
    let g = |x: Point2| n.gauge(x - p) - n.gauge(x - q);
    let count = count.max(1);
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let s = if count == 1 { 0.0 } else { -5.0 + 10.0 * k as f64 / (count - 1) as f64 };
        let base = mid + perp * (s * len);
        let at = |t: f64| base + d * t;
        let (mut lo, mut hi) = (-1.0, 1.0);
        while !(g(at(lo)) <= 0.0 && g(at(hi)) >= 0.0) && hi < 1e6 {
            lo *= 2.0;
            hi *= 2.0;
        }
        if hi >= 1e6 {
            continue;
        }
        for _ in 0..200 {
            let m = 0.5 * (lo + hi);
            if g(at(m)) < 0.0 {
                lo = m;
            } else {
                hi = m;
            }
            if hi - lo <= 1e-15 * hi.abs().max(1.0) {
                break;
            }
        }
        let x = at(0.5 * (lo + hi));
        let scale = n.gauge(x - p).max(1.0);
        if g(x).abs() <= 1e-10 * scale {
            out.push(x);
        }
    }
    Ok(out)
}

/// First sample outside the open strip (margin `1e-9` of its width).
pub fn strip_witness(samples: &[Point2], strip: &StripSpec) -> Option<Point2> {
    samples.iter().copied().find(|&x| {
        let c = strip.coordinate(x);
        !(c > 1e-9 && c < 1.0 - 1e-9)
    })
}

pub fn strip_test(samples: &[Point2], strip: &StripSpec) -> bool {
    strip_witness(samples, strip).is_none()
}

/// Expansion scan in the norm of the radial projection onto `s`; the result
/// is nonexpansive exactly for antiballs centered at the origin.
pub fn antiball_projection_uniqueness_scan(n: &NormSpec, s: &StarPolygon, trials: usize, seed: u64) -> ScanResult {
    nonexpansive_scan(n, &ProjectionMap::Star(s.clone()), Metric::Norm, trials, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::SymmetricPolygon;

    fn square() -> NormSpec {
        NormSpec::polygon(SymmetricPolygon::from_points(&[Point2::new(1.0, 1.0), Point2::new(-1.0, 1.0)]).unwrap())
    }

    fn hexagon() -> NormSpec {
        NormSpec::polygon(SymmetricPolygon::regular(6, 1.0, 0.0).unwrap())
    }

    fn p(x1: f64, x2: f64) -> Point2 {
        Point2::new(x1, x2)
    }

    #[test]
    fn radial_examples() {
        assert_eq!(radial_projection(&square(), p(2.0, 2.0)), p(1.0, 1.0));
        assert_eq!(radial_projection(&square(), p(0.5, 0.2)), p(0.5, 0.2));
        let l1 = square().dual_polygon_norm().unwrap();
        let r = radial_projection(&l1, p(3.0, 1.0));
        assert!((r - p(0.75, 0.25)).max_abs() < 1e-15);
    }

    #[test]
    fn radial_pair_ratio_in_antinorm() {
        let n = square();
        let r = expansion(&n, &ProjectionMap::Radial, Metric::Antinorm, p(2.0, 2.0), p(2.0, -2.0));
        assert!((r - 0.5).abs() < 1e-15);
    }

    #[test]
    fn radial_scans() {
        let r = nonexpansive_scan(&square(), &ProjectionMap::Radial, Metric::Antinorm, 2000, 3);
        assert!(r.is_nonexpansive(), "{r:?}");
        let r = nonexpansive_scan(&square(), &ProjectionMap::Radial, Metric::Norm, 2000, 3);
        assert!(r.max_ratio > 1.0 + 1e-6, "{r:?}");
        let r = nonexpansive_scan(&hexagon(), &ProjectionMap::Radial, Metric::Norm, 10_000, 3);
        assert!(r.is_nonexpansive(), "{r:?}");
    }

    #[test]
    fn metric_projection_examples() {
        let s = ConvexPolygon::new(vec![p(-1.0, -1.0), p(1.0, -1.0), p(1.0, 1.0), p(-1.0, 1.0)]).unwrap();
        let m = metric_projection(&square(), &s, p(3.0, 0.0));
        assert!((m.point - p(1.0, 0.0)).max_abs() < 1e-12);
        assert!((m.distance - 2.0).abs() < 1e-12);
        match m.face {
            ProjectionFace::Segment(a, b) => {
                let (lo, hi) = if a.x2 < b.x2 { (a, b) } else { (b, a) };
                assert!((lo - p(1.0, -1.0)).max_abs() < 1e-12 && (hi - p(1.0, 1.0)).max_abs() < 1e-12);
            }
            f => panic!("{f:?}"),
        }
        let m = metric_projection(&square(), &s, p(0.2, 0.3));
        assert_eq!((m.point, m.distance), (p(0.2, 0.3), 0.0));
        let thin = ConvexPolygon::new(vec![p(-1.0, -1e-9), p(1.0, -1e-9), p(1.0, 0.0), p(-1.0, 0.0)]).unwrap();
        let m = metric_projection(&NormSpec::euclidean(), &thin, p(0.0, 2.0));
        assert!((m.point - p(0.0, 0.0)).max_abs() < 1e-12);
        assert!(matches!(m.face, ProjectionFace::Point(_)));
    }

    #[test]
    fn metric_projection_matches_grid_oracle() {
        let s = ConvexPolygon::new(vec![p(0.0, 0.0), p(2.0, 0.5), p(1.0, 2.0)]).unwrap();
        let n = NormSpec::lp(3.0).unwrap();
        let x = p(3.0, 3.0);
        let m = metric_projection(&n, &s, x);
        let mut best = f64::INFINITY;
        for i in 0..=400 {
            for j in 0..=400 {
                let (u, v) = (i as f64 / 400.0, j as f64 / 400.0);
                if u + v <= 1.0 {
                    let z = s.vertex(0) + (s.vertex(1) - s.vertex(0)) * u + (s.vertex(2) - s.vertex(0)) * v;
                    best = best.min(n.gauge(x - z));
                }
            }
        }
        assert!(m.distance <= best + 1e-12 && m.distance > best - 1e-2);
    }

    #[test]
    fn nearest_point_lemma() {
        for n in [square(), hexagon(), NormSpec::lp(4.0).unwrap()] {
            assert!(nearest_point_scan(&n, 1000, 5) <= 1.0 + 1e-9);
        }
        let m = square().nearest_on_line(Metric::Antinorm, p(1.0, 1.0), Point2::ORIGIN, p(1.0, 0.0));
        assert!((m - p(1.0, 0.0)).max_abs() < 1e-15);
    }

    #[test]
    fn bisector_on_axis() {
        let n = NormSpec::lp(4.0).unwrap();
        let (a, b) = (p(-1.0, 0.0), p(1.0, 0.0));
        let pts = bisector_sample(&n, a, b, 21).unwrap();
        assert_eq!(pts.len(), 21);
        assert!(pts.iter().all(|x| x.x1.abs() < 1e-9));
        assert!(strip_test(&pts, &StripSpec::anticircle(&n, a, b).unwrap()));
    }

    #[test]
    fn strip_theorem_and_radon_variant() {
        let lp4 = NormSpec::lp(4.0).unwrap();
        let (a, b) = (p(0.3, -0.2), p(1.4, 0.4));
        let pts = bisector_sample(&lp4, a, b, 200).unwrap();
        assert!(strip_test(&pts, &StripSpec::anticircle(&lp4, a, b).unwrap()));
        assert!(!strip_test(&pts, &StripSpec::circle(&lp4, a, b).unwrap()));
        let mixed = NormSpec::mixed(4.0).unwrap();
        let pts = bisector_sample(&mixed, a, b, 200).unwrap();
        assert!(strip_test(&pts, &StripSpec::circle(&mixed, a, b).unwrap()));
        assert!(matches!(bisector_sample(&square(), a, b, 5), Err(Error::StrictConvexityRequired)));
    }

    #[test]
    fn gruber_scan() {
        let n = square();
        let anti = match &n {
            NormSpec::Polygon(pn) => pn.anti.clone(),
            _ => unreachable!(),
        };
        let s = StarPolygon::from_convex(anti.polygon()).unwrap();
        assert!(antiball_projection_uniqueness_scan(&n, &s, 2000, 1).is_nonexpansive());
        let s3 = StarPolygon::from_convex(&anti.polygon().scale(3.0)).unwrap();
        assert!(antiball_projection_uniqueness_scan(&n, &s3, 2000, 1).is_nonexpansive());
        let b = StarPolygon::new(vec![p(1.0, -1.0), p(1.0, 1.0), p(-1.0, 1.0), p(-1.0, -1.0)]).unwrap();
        assert!(!antiball_projection_uniqueness_scan(&n, &b, 2000, 1).is_nonexpansive());
    }

    #[test]
    fn star_polygon_gauge() {
        let s = StarPolygon::new(vec![p(2.0, 0.0), p(0.5, 0.5), p(0.0, 2.0), p(-1.0, 0.0), p(0.0, -1.0)]).unwrap();
        assert!((s.gauge(p(2.0, 0.0)) - 1.0).abs() < 1e-15);
        assert!((s.gauge(p(1.0, 1.0)) - 2.0).abs() < 1e-15);
        assert!(StarPolygon::new(vec![p(1.0, 0.0), p(0.0, 1.0), p(-1.0, 0.0)]).is_err());
    }
}
