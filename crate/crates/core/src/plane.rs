//! Plane primitives.
//!
//! The area form is fixed once and for all as the coordinate determinant
//! `symp(x, y) = x1*y2 - x2*y1`; it sets the unit of area (unit square has
//! area 1) and the positive orientation (counterclockwise).
//!
//! Polygons are stored counterclockwise, without repeated or collinear
//! vertices. A [`SymmetricPolygon`] is a polygonal unit ball: it additionally
//! satisfies `v[i + n] = -v[i]` and carries its facet functionals so that the
//! gauge is a single `max` over dot products.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};
use crate::norms::NormSpec;

/// Absolute tolerance for one- or two-layer exact constructions.
pub const EXACT_TOL: f64 = 1e-9;

/// Relative cross-product tolerance used when dropping collinear vertices.
const COLLINEAR_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point2 {
    pub x1: f64,
    pub x2: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x1: 0.0, x2: 0.0 };

    #[inline]
    pub const fn new(x1: f64, x2: f64) -> Self {
        Self { x1, x2 }
    }

    #[inline]
    pub fn from_angle(theta: f64) -> Self {
        Self::new(theta.cos(), theta.sin())
    }

    #[inline]
    pub fn dot(self, other: Point2) -> f64 {
        self.x1 * other.x1 + self.x2 * other.x2
    }

    #[inline]
    pub fn euclid(self) -> f64 {
        self.x1.hypot(self.x2)
    }

    /// Polar angle in `[0, 2π)`.
    pub fn angle(self) -> f64 {
        let a = self.x2.atan2(self.x1);
        if a < 0.0 {
            a + TAU
        } else {
            a
        }
    }

    /// Counterclockwise quarter turn `(x1, x2) -> (-x2, x1)`.
    #[inline]
    pub fn rot90(self) -> Self {
        Self::new(-self.x2, self.x1)
    }

    /// Clockwise quarter turn `(x1, x2) -> (x2, -x1)`.
    #[inline]
    pub fn rot270(self) -> Self {
        Self::new(self.x2, -self.x1)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x1.is_finite() && self.x2.is_finite()
    }

    #[inline]
    pub fn lerp(self, other: Point2, t: f64) -> Self {
        self + (other - self) * t
    }

    pub fn max_abs(self) -> f64 {
        self.x1.abs().max(self.x2.abs())
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x1, self.x2)
    }
}

impl Add for Point2 {
    type Output = Point2;
    #[inline]
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x1 + o.x1, self.x2 + o.x2)
    }
}

impl AddAssign for Point2 {
    #[inline]
    fn add_assign(&mut self, o: Point2) {
        self.x1 += o.x1;
        self.x2 += o.x2;
    }
}

impl Sub for Point2 {
    type Output = Point2;
    #[inline]
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x1 - o.x1, self.x2 - o.x2)
    }
}

impl SubAssign for Point2 {
    #[inline]
    fn sub_assign(&mut self, o: Point2) {
        self.x1 -= o.x1;
        self.x2 -= o.x2;
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    #[inline]
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x1 * s, self.x2 * s)
    }
}

impl Mul<Point2> for f64 {
    type Output = Point2;
    #[inline]
    fn mul(self, p: Point2) -> Point2 {
        p * self
    }
}

impl Div<f64> for Point2 {
    type Output = Point2;
    #[inline]
    fn div(self, s: f64) -> Point2 {
        Point2::new(self.x1 / s, self.x2 / s)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    #[inline]
    fn neg(self) -> Point2 {
        Point2::new(-self.x1, -self.x2)
    }
}

impl From<(f64, f64)> for Point2 {
    fn from((x1, x2): (f64, f64)) -> Self {
        Point2::new(x1, x2)
    }
}

impl From<[f64; 2]> for Point2 {
    fn from([x1, x2]: [f64; 2]) -> Self {
        Point2::new(x1, x2)
    }
}

/// The fixed symplectic (area) form.
#[inline]
pub fn symp(x: Point2, y: Point2) -> f64 {
    x.x1 * y.x2 - x.x2 * y.x1
}

/// A linear functional, housed through the area form as `φ(x) = symp(x, g)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Functional {
    pub g: Point2,
}

impl Functional {
    pub fn new(g: Point2) -> Self {
        Self { g }
    }

    /// The functional `x -> n·x`.
    pub fn from_normal(n: Point2) -> Self {
        Self { g: n.rot90() }
    }

    #[inline]
    pub fn eval(&self, x: Point2) -> f64 {
        symp(x, self.g)
    }

    /// Euclidean gradient `n` with `φ(x) = n·x`.
    #[inline]
    pub fn normal(&self) -> Point2 {
        self.g.rot270()
    }

    pub fn is_zero(&self) -> bool {
        self.g.x1 == 0.0 && self.g.x2 == 0.0
    }
}

/// Closed half-plane `normal·x <= offset`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfPlane {
    pub normal: Point2,
    pub offset: f64,
}

impl HalfPlane {
    pub fn new(normal: Point2, offset: f64) -> Self {
        Self { normal, offset }
    }

    /// Signed violation `normal·x - offset` (positive outside).
    #[inline]
    pub fn excess(&self, x: Point2) -> f64 {
        self.normal.dot(x) - self.offset
    }

    fn normalized(&self) -> Option<HalfPlane> {
        let len = self.normal.euclid();
        (len > 0.0).then(|| HalfPlane::new(self.normal / len, self.offset / len))
    }
}

fn line_intersection(a: &HalfPlane, b: &HalfPlane) -> Point2 {
    let det = a.normal.x1 * b.normal.x2 - a.normal.x2 * b.normal.x1;
    Point2::new(
        (a.offset * b.normal.x2 - a.normal.x2 * b.offset) / det,
        (a.normal.x1 * b.offset - a.offset * b.normal.x1) / det,
    )
}

/// Vertices of the intersection of half-planes, counterclockwise.
///
/// Sorted-by-angle deque sweep. Parallel half-planes with the same outward
/// direction keep the tighter one. Returns [`Error::InsufficientDirections`]
/// if the normals leave an angular gap of at least π (unbounded region) and
/// [`Error::Empty`] if nothing survives.
pub fn halfplane_vertices(halfplanes: &[HalfPlane]) -> Result<Vec<Point2>> {
    let mut hps: Vec<(f64, HalfPlane)> = Vec::with_capacity(halfplanes.len());
    for hp in halfplanes {
        if !hp.normal.is_finite() || !hp.offset.is_finite() {
            return Err(Error::Invalid("non-finite half-plane".into()));
        }
        match hp.normalized() {
            Some(h) => hps.push((h.normal.angle(), h)),
            None if hp.offset < 0.0 => return Err(Error::Empty),
            None => {}
        }
    }
    if hps.len() < 3 {
        return Err(Error::InsufficientDirections);
    }
    hps.sort_by(|a, b| a.0.total_cmp(&b.0));

    // same direction: keep the tighter offset
    let mut dedup: Vec<(f64, HalfPlane)> = Vec::with_capacity(hps.len());
    for (ang, h) in hps {
        if let Some(last) = dedup.last_mut() {
            if (ang - last.0).abs() < 1e-13 {
                if h.offset < last.1.offset {
                    *last = (ang, h);
                }
                continue;
            }
        }
        dedup.push((ang, h));
    }
    if dedup.len() > 1 {
        let first = dedup[0];
        let last = *dedup.last().unwrap();
        if (first.0 + TAU - last.0) < 1e-13 {
            if last.1.offset < first.1.offset {
                dedup[0] = last;
            }
            dedup.pop();
        }
    }
    let n = dedup.len();
    for i in 0..n {
        let gap = if i + 1 < n {
            dedup[i + 1].0 - dedup[i].0
        } else {
            dedup[0].0 + TAU - dedup[i].0
        };
        if gap >= PI - 1e-12 {
            return Err(Error::InsufficientDirections);
        }
    }

    let scale = dedup
        .iter()
        .map(|(_, h)| h.offset.abs())
        .fold(1.0_f64, f64::max);
    let eps = 1e-12 * scale;
    let out = |h: &HalfPlane, p: Point2| h.excess(p) > eps;

    let mut dq: std::collections::VecDeque<HalfPlane> = std::collections::VecDeque::new();
    for &(_, h) in &dedup {
        while dq.len() > 1 && out(&h, line_intersection(&dq[dq.len() - 1], &dq[dq.len() - 2])) {
            dq.pop_back();
        }
        while dq.len() > 1 && out(&h, line_intersection(&dq[0], &dq[1])) {
            dq.pop_front();
        }
        if let Some(back) = dq.back() {
            let cross = back.normal.x1 * h.normal.x2 - back.normal.x2 * h.normal.x1;
            if cross.abs() < 1e-14 && back.normal.dot(h.normal) < 0.0 {
                // antiparallel neighbours: either an empty strip or a sliver
                if back.offset + h.offset < -eps {
                    return Err(Error::Empty);
                }
                if cross <= 0.0 {
                    return Err(Error::Empty);
                }
            }
        }
        dq.push_back(h);
    }
    while dq.len() > 2 && out(&dq[0], line_intersection(&dq[dq.len() - 1], &dq[dq.len() - 2])) {
        dq.pop_back();
    }
    while dq.len() > 2 && out(&dq[dq.len() - 1], line_intersection(&dq[0], &dq[1])) {
        dq.pop_front();
    }
    if dq.len() < 3 {
        return Err(Error::Empty);
    }
    let m = dq.len();
    let verts: Vec<Point2> = (0..m)
        .map(|i| line_intersection(&dq[i], &dq[(i + 1) % m]))
        .collect();
    if verts.iter().any(|v| !v.is_finite()) {
        return Err(Error::Empty);
    }
    // every vertex must satisfy all constraints
    for v in &verts {
        if dedup.iter().any(|(_, h)| h.excess(*v) > 1e-9 * scale) {
            return Err(Error::Empty);
        }
    }
    Ok(verts)
}

/// Intersection of half-planes as a convex polygon.
pub fn halfplane_intersection(halfplanes: &[HalfPlane]) -> Result<ConvexPolygon> {
    let verts = halfplane_vertices(halfplanes)?;
    // rounding can fold near-coincident vertices backwards
    ConvexPolygon::new(verts.clone()).or_else(|_| ConvexPolygon::hull(&verts)).map_err(|e| match e {
        Error::Degenerate(_) => Error::Empty,
        other => other,
    })
}

/// Which face of a polygon attains a support value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Face {
    Vertex(usize),
    /// Edge from vertex `i` to vertex `i + 1`.
    Edge(usize),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Support {
    pub value: f64,
    pub face: Face,
}

/// Convex polygon with counterclockwise, strictly convex vertex sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
}

fn signed_area(v: &[Point2]) -> f64 {
    let n = v.len();
    0.5 * (0..n).map(|i| symp(v[i], v[(i + 1) % n])).sum::<f64>()
}

fn coordinate_scale(v: &[Point2]) -> f64 {
    v.iter().map(|p| p.max_abs()).fold(0.0, f64::max)
}

/// Drop repeated and collinear vertices (cyclically) until stable.
fn drop_collinear(mut v: Vec<Point2>, scale: f64) -> Vec<Point2> {
    let tol = COLLINEAR_TOL * scale * scale;
    v.dedup_by(|b, a| (*b - *a).max_abs() <= 1e-14 * scale);
    while v.len() > 1 && (v[0] - v[v.len() - 1]).max_abs() <= 1e-14 * scale {
        v.pop();
    }
    loop {
        let n = v.len();
        if n < 3 {
            return v;
        }
        let mut removed = false;
        let mut keep = Vec::with_capacity(n);
        for i in 0..n {
            let prev = keep.last().copied().unwrap_or(v[n - 1]);
            let cur = v[i];
            let next = v[(i + 1) % n];
            let cross = symp(cur - prev, next - cur);
            let dup = (cur - prev).max_abs() <= 1e-14 * scale;
            if dup || (cross.abs() <= tol && (cur - prev).dot(next - cur) >= 0.0) {
                removed = true;
                continue;
            }
            keep.push(cur);
        }
        v = keep;
        if !removed {
            return v;
        }
    }
}

impl ConvexPolygon {
    /// Validates and normalizes: orientation is made counterclockwise,
    /// repeated and collinear vertices are dropped.
    pub fn new(vertices: Vec<Point2>) -> Result<Self> {
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(Error::Invalid("non-finite vertex".into()));
        }
        if vertices.len() < 3 {
            return Err(Error::Degenerate("fewer than 3 vertices".into()));
        }
        let scale = coordinate_scale(&vertices);
        if scale == 0.0 {
            return Err(Error::Degenerate("all vertices at the origin".into()));
        }
        let mut v = vertices;
        if signed_area(&v) < 0.0 {
            v.reverse();
        }
        let v = drop_collinear(v, scale);
        if v.len() < 3 {
            return Err(Error::Degenerate("collinear vertices".into()));
        }
        let n = v.len();
        let mut turning = 0.0;
        for i in 0..n {
            let e0 = v[(i + 1) % n] - v[i];
            let e1 = v[(i + 2) % n] - v[(i + 1) % n];
            if symp(e0, e1) <= 0.0 {
                return Err(Error::Invalid("vertex sequence is not strictly convex".into()));
            }
            turning += symp(e0, e1).atan2(e0.dot(e1));
        }
        if (turning - TAU).abs() > 1e-6 {
            return Err(Error::Invalid("vertex sequence winds more than once".into()));
        }
        let area = signed_area(&v);
        if area <= 1e-14 * scale * scale {
            return Err(Error::Degenerate("zero area".into()));
        }
        Ok(Self { vertices: v })
    }

    /// Convex hull (Andrew's monotone chain); interior and collinear points are dropped.
    pub fn hull(points: &[Point2]) -> Result<Self> {
        if points.iter().any(|p| !p.is_finite()) {
            return Err(Error::Invalid("non-finite point".into()));
        }
        let mut pts: Vec<Point2> = points.to_vec();
        pts.sort_by(|a, b| a.x1.total_cmp(&b.x1).then(a.x2.total_cmp(&b.x2)));
        pts.dedup();
        if pts.len() < 3 {
            return Err(Error::Degenerate("fewer than 3 distinct points".into()));
        }
        let scale = coordinate_scale(&pts);
        let tol = COLLINEAR_TOL * scale * scale;
        let mut lower: Vec<Point2> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2
                && symp(lower[lower.len() - 1] - lower[lower.len() - 2], p - lower[lower.len() - 1]) <= tol
            {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<Point2> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2
                && symp(upper[upper.len() - 1] - upper[upper.len() - 2], p - upper[upper.len() - 1]) <= tol
            {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        Self::new(lower)
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> Point2 {
        self.vertices[i % self.vertices.len()]
    }

    /// Edge vector from vertex `i` to vertex `i + 1`.
    pub fn edge(&self, i: usize) -> Point2 {
        self.vertex(i + 1) - self.vertex(i)
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        (0..self.len()).map(move |i| (self.vertex(i), self.vertex(i + 1)))
    }

    /// Shoelace area.
    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn centroid(&self) -> Point2 {
        let n = self.len();
        let mut c = Point2::ORIGIN;
        let mut a2 = 0.0;
        let o = self.vertices[0];
        for i in 0..n {
            let p = self.vertices[i] - o;
            let q = self.vertices[(i + 1) % n] - o;
            let w = symp(p, q);
            a2 += w;
            c += (p + q) * w;
        }
        o + c / (3.0 * a2)
    }

    /// Outward half-planes of the edges.
    pub fn halfplanes(&self) -> Vec<HalfPlane> {
        self.edges()
            .map(|(a, b)| {
                let n = (b - a).rot270();
                HalfPlane::new(n, n.dot(a))
            })
            .collect()
    }

    /// Outer edge functionals `φ_j` (as the area-form pairing) with `φ_j <= offset_j` on the polygon.
    pub fn edge_functionals(&self) -> Vec<Functional> {
        self.halfplanes()
            .iter()
            .map(|h| Functional::from_normal(h.normal))
            .collect()
    }

    pub fn contains(&self, p: Point2, tol: f64) -> bool {
        self.edges().all(|(a, b)| symp(b - a, p - a) >= -tol * (b - a).euclid())
    }

    pub fn translate(&self, t: Point2) -> Self {
        Self { vertices: self.vertices.iter().map(|&v| v + t).collect() }
    }

    /// Homothety about the origin; `s > 0`.
    pub fn scale(&self, s: f64) -> Self {
        assert!(s > 0.0, "scale factor must be positive");
        Self { vertices: self.vertices.iter().map(|&v| v * s).collect() }
    }

    pub fn map(&self, f: impl Fn(Point2) -> Point2) -> Result<Self> {
        Self::new(self.vertices.iter().map(|&v| f(v)).collect())
    }

    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                d = d.max((*a - *b).euclid());
            }
        }
        d
    }

    /// Maximum of `φ` over the polygon and the face attaining it.
    pub fn support(&self, phi: &Functional) -> Support {
        let vals: Vec<f64> = self.vertices.iter().map(|&v| phi.eval(v)).collect();
        let (imax, vmax) = vals
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });
        let n = self.len();
        let tol = 1e-12 * (vmax.abs().max(phi.g.euclid() * coordinate_scale(&self.vertices)));
        let face = if vmax - vals[(imax + 1) % n] <= tol {
            Face::Edge(imax)
        } else if vmax - vals[(imax + n - 1) % n] <= tol {
            Face::Edge((imax + n - 1) % n)
        } else {
            Face::Vertex(imax)
        };
        Support { value: vmax, face }
    }
}

/// Intersection of the supporting half-planes of `body` for the given outer
/// functionals.
pub fn circumscribe(body: &ConvexPolygon, directions: &[Functional]) -> Result<ConvexPolygon> {
    let hps: Vec<HalfPlane> = directions
        .iter()
        .filter(|phi| !phi.is_zero())
        .map(|phi| HalfPlane::new(phi.normal(), body.support(phi).value))
        .collect();
    halfplane_intersection(&hps)
}

/// Centrally symmetric convex polygon: a polygonal unit ball.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricPolygon {
    poly: ConvexPolygon,
    /// Facet functionals `f_j` with `gauge(x) = max_j f_j·x`; these are the
    /// vertices of the polar body, in counterclockwise order.
    facets: Vec<Point2>,
}

impl SymmetricPolygon {
    /// From an explicit full vertex list; checks `v[i + n] = -v[i]` within tolerance.
    pub fn new(vertices: Vec<Point2>) -> Result<Self> {
        let scale = coordinate_scale(&vertices);
        let poly = ConvexPolygon::new(vertices)?;
        let n = poly.len();
        if n % 2 != 0 {
            return Err(Error::Invalid("odd vertex count for a symmetric polygon".into()));
        }
        let h = n / 2;
        for i in 0..h {
            if (poly.vertex(i) + poly.vertex(i + h)).max_abs() > EXACT_TOL * scale.max(1.0) {
                return Err(Error::Invalid("polygon is not centrally symmetric".into()));
            }
        }
        Self::from_points(&poly.vertices()[..h])
    }

    /// Hull of `points ∪ -points`. Points that are not extreme are dropped.
    pub fn from_points(points: &[Point2]) -> Result<Self> {
        let mut all: Vec<Point2> = points.to_vec();
        all.extend(points.iter().map(|&p| -p));
        let hull = ConvexPolygon::hull(&all)?;
        let n = hull.len();
        if n % 2 != 0 {
            return Err(Error::Invalid("hull of symmetric set has odd vertex count".into()));
        }
        // canonical start: smallest polar angle, with a little slack below zero
        let key = |p: &Point2| (p.angle() + 1e-9) % TAU;
        let start = (0..n)
            .min_by(|&a, &b| key(&hull.vertices[a]).total_cmp(&key(&hull.vertices[b])))
            .unwrap();
        let h = n / 2;
        let half: Vec<Point2> = (0..h).map(|i| hull.vertex(start + i)).collect();
        let mut full = half.clone();
        full.extend(half.iter().map(|&p| -p));
        let poly = ConvexPolygon::new(full)?;
        if poly.len() != n {
            return Err(Error::Invalid("symmetric polygon lost vertices on normalization".into()));
        }
        let facets = poly
            .edges()
            .map(|(a, b)| {
                let n = (b - a).rot270();
                n / n.dot(a)
            })
            .collect();
        Ok(Self { poly, facets })
    }

    /// Regular `k`-gon with the given circumradius and first vertex at angle `phase`.
    pub fn regular(k: usize, circumradius: f64, phase: f64) -> Result<Self> {
        if k < 4 || k % 2 != 0 {
            return Err(Error::Invalid(format!("regular symmetric polygon needs even k >= 4, got {k}")));
        }
        let pts: Vec<Point2> = (0..k / 2)
            .map(|i| Point2::from_angle(phase + TAU * i as f64 / k as f64) * circumradius)
            .collect();
        Self::from_points(&pts)
    }

    pub fn polygon(&self) -> &ConvexPolygon {
        &self.poly
    }

    pub fn vertices(&self) -> &[Point2] {
        self.poly.vertices()
    }

    pub fn len(&self) -> usize {
        self.poly.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poly.is_empty()
    }

    pub fn vertex(&self, i: usize) -> Point2 {
        self.poly.vertex(i)
    }

    pub fn facets(&self) -> &[Point2] {
        &self.facets
    }

    pub fn area(&self) -> f64 {
        self.poly.area()
    }

    /// Minkowski functional of this ball.
    #[inline]
    pub fn gauge(&self, x: Point2) -> f64 {
        self.facets.iter().map(|f| f.dot(x)).fold(f64::NEG_INFINITY, f64::max)
    }

    /// `max_{v in B} |symp(x, v)|`: the antinorm of the norm with this unit ball.
    #[inline]
    pub fn antinorm(&self, x: Point2) -> f64 {
        self.poly
            .vertices()
            .iter()
            .map(|&v| symp(x, v))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Support function `h_B(n) = max_{z in B} n·z`.
    pub fn support_value(&self, n: Point2) -> f64 {
        self.poly.vertices().iter().map(|v| v.dot(n)).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Face of the ball maximizing `n·z`, as its two endpoints (equal for a vertex).
    pub fn support_face(&self, n: Point2) -> (Point2, Point2) {
        match self.poly.support(&Functional::from_normal(n)).face {
            Face::Vertex(i) => (self.vertex(i), self.vertex(i)),
            Face::Edge(i) => (self.vertex(i), self.vertex(i + 1)),
        }
    }

    /// Boundary point on the ray through `x`.
    pub fn radial_point(&self, x: Point2) -> Point2 {
        x / self.gauge(x)
    }

    /// Boundary polyline running counterclockwise from the ray through `from`
    /// to the ray through `to` (a full turn if the rays coincide).
    pub fn arc(&self, from: Point2, to: Point2) -> Vec<Point2> {
        let t0 = from.angle();
        let mut span = (to.angle() - t0).rem_euclid(TAU);
        if span <= 1e-15 {
            span = TAU;
        }
        let mut inner: Vec<(f64, Point2)> = self
            .vertices()
            .iter()
            .map(|&v| ((v.angle() - t0).rem_euclid(TAU), v))
            .filter(|&(a, _)| a > 1e-12 && a < span - 1e-12)
            .collect();
        inner.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut out = vec![self.radial_point(from)];
        out.extend(inner.into_iter().map(|(_, v)| v));
        out.push(self.radial_point(to));
        out
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_points(&self.vertices()[..self.len() / 2].iter().map(|&v| v * s).collect::<Vec<_>>())
            .expect("positive scaling preserves validity")
    }

    pub fn diameter(&self) -> f64 {
        2.0 * self.vertices().iter().map(|v| v.euclid()).fold(0.0, f64::max)
    }
}

/// Polar body: the polygon whose gauge is the dual norm. Vertices of the polar
/// correspond to edges of `ball`.
pub fn polar(ball: &SymmetricPolygon) -> SymmetricPolygon {
    SymmetricPolygon::from_points(&ball.facets()[..ball.len() / 2])
        .expect("polar of a valid symmetric polygon is valid")
}

/// Symmetric Hausdorff distance in the given norm.
pub fn hausdorff(p: &ConvexPolygon, q: &ConvexPolygon, metric: &NormSpec) -> f64 {
    let one_sided = |a: &ConvexPolygon, b: &ConvexPolygon| {
        a.vertices()
            .iter()
            .map(|&v| metric.distance_to_polygon(v, b))
            .fold(0.0, f64::max)
    };
    one_sided(p, q).max(one_sided(q, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> SymmetricPolygon {
        SymmetricPolygon::from_points(&[Point2::new(1.0, 1.0), Point2::new(-1.0, 1.0)]).unwrap()
    }

    fn diamond() -> SymmetricPolygon {
        SymmetricPolygon::from_points(&[Point2::new(1.0, 0.0), Point2::new(0.0, 1.0)]).unwrap()
    }

    fn same_vertex_set(a: &[Point2], b: &[Point2], tol: f64) -> bool {
        a.len() == b.len() && a.iter().all(|p| b.iter().any(|q| (*p - *q).max_abs() <= tol))
    }

    #[test]
    fn symp_examples() {
        assert_eq!(symp(Point2::new(1.0, 0.0), Point2::new(0.0, 1.0)), 1.0);
        assert_eq!(symp(Point2::new(2.0, 1.0), Point2::new(3.0, 4.0)), 5.0);
        let x = Point2::new(0.3, -7.1);
        assert_eq!(symp(x, x), 0.0);
    }

    #[test]
    fn repeated_first_vertex_is_kept_once() {
        let a = Point2::new(0.3, 1.0);
        let o = Point2::ORIGIN;
        let v = vec![a, a, Point2::new(-0.1, 0.2), o, o, Point2::new(0.4, 0.8)];
        let p = ConvexPolygon::new(v).unwrap();
        assert_eq!(p.len(), 4);
        assert!(p.vertices().contains(&a));
    }

    #[test]
    fn area_examples() {
        assert_eq!(square().area(), 4.0);
        assert_eq!(diamond().area(), 2.0);
        let t = ConvexPolygon::new(vec![Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(0.0, 1.0)])
            .unwrap();
        assert_eq!(t.area(), 0.5);
    }

    #[test]
    fn normalization_fixes_orientation_and_collinear_points() {
        let p = ConvexPolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(0.0, 2.0),
            Point2::new(2.0, 2.0),
            Point2::new(2.0, 1.0),
            Point2::new(2.0, 0.0),
            Point2::new(1.0, 0.0),
        ])
        .unwrap();
        assert_eq!(p.len(), 4);
        assert!(p.area() > 0.0);
    }

    #[test]
    fn rejects_nonconvex_and_degenerate() {
        let bad = ConvexPolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(0.5, 0.5),
            Point2::new(0.0, 2.0),
        ]);
        assert!(matches!(bad, Err(Error::Invalid(_))));
        let flat = ConvexPolygon::new(vec![Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(2.0, 0.0)]);
        assert!(flat.is_err());
        let asym = SymmetricPolygon::new(vec![
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 1.0),
            Point2::new(-1.0, 0.0),
            Point2::new(0.0, -2.0),
        ]);
        assert!(asym.is_err());
    }

    #[test]
    fn support_examples() {
        let sq = square();
        let s = sq.polygon().support(&Functional::new(Point2::new(0.0, 1.0)));
        assert_eq!(s.value, 1.0);
        let Face::Edge(i) = s.face else { panic!("expected an edge, got {:?}", s.face) };
        assert_eq!(sq.vertex(i).x1, 1.0);
        assert_eq!(sq.vertex(i + 1).x1, 1.0);

        let d = diamond();
        let s = d.polygon().support(&Functional::new(Point2::new(-1.0, 1.0)));
        assert_eq!(s.value, 1.0);
        let Face::Edge(i) = s.face else { panic!("expected an edge") };
        assert!(same_vertex_set(
            &[d.vertex(i), d.vertex(i + 1)],
            &[Point2::new(1.0, 0.0), Point2::new(0.0, 1.0)],
            0.0
        ));
    }

    #[test]
    fn polar_examples() {
        let p = polar(&square());
        assert!(same_vertex_set(p.vertices(), diamond().vertices(), 1e-15));

        let hex = SymmetricPolygon::regular(6, 1.0, 0.0).unwrap();
        let ph = polar(&hex);
        let r = 2.0 / 3f64.sqrt();
        let expected = SymmetricPolygon::regular(6, r, std::f64::consts::PI / 6.0).unwrap();
        assert!(same_vertex_set(ph.vertices(), expected.vertices(), 1e-12));
    }

    #[test]
    fn polar_matches_halfplane_oracle() {
        // polar = {g : g·v <= 1 for all vertices v}
        let b = SymmetricPolygon::from_points(&[
            Point2::new(1.0, 0.2),
            Point2::new(0.4, 0.9),
            Point2::new(-0.6, 0.7),
        ])
        .unwrap();
        let hps: Vec<HalfPlane> = b.vertices().iter().map(|&v| HalfPlane::new(v, 1.0)).collect();
        let oracle = halfplane_intersection(&hps).unwrap();
        assert!(same_vertex_set(polar(&b).vertices(), oracle.vertices(), 1e-12));
    }

    #[test]
    fn circumscribe_examples() {
        let d = diamond();
        let axes: Vec<Functional> = [(0.0, 1.0), (1.0, 0.0), (0.0, -1.0), (-1.0, 0.0)]
            .iter()
            .map(|&(a, b)| Functional::new(Point2::new(a, b)))
            .collect();
        let sq = circumscribe(d.polygon(), &axes).unwrap();
        assert!(same_vertex_set(sq.vertices(), square().vertices(), 1e-15));

        let c = ConvexPolygon::new(vec![Point2::new(0.0, 0.0), Point2::new(3.0, 1.0), Point2::new(1.0, 2.0)])
            .unwrap();
        let again = circumscribe(&c, &c.edge_functionals()).unwrap();
        assert!(same_vertex_set(again.vertices(), c.vertices(), 1e-12));

        // outer normals (-1,0), (0,-1), (-1,-1) leave the first quadrant open
        let few: Vec<Functional> = [(-1.0, 0.0), (0.0, -1.0), (-1.0, -1.0)]
            .iter()
            .map(|&(a, b)| Functional::from_normal(Point2::new(a, b)))
            .collect();
        assert!(matches!(circumscribe(d.polygon(), &few), Err(Error::InsufficientDirections)));
    }

    #[test]
    fn halfplane_empty() {
        let hps = [
            HalfPlane::new(Point2::new(1.0, 0.0), -1.0),
            HalfPlane::new(Point2::new(-1.0, 0.0), -1.0),
            HalfPlane::new(Point2::new(0.0, 1.0), 1.0),
            HalfPlane::new(Point2::new(0.0, -1.0), 1.0),
        ];
        assert!(matches!(halfplane_vertices(&hps), Err(Error::Empty)));
    }

    #[test]
    fn halfplane_duplicate_directions_keep_tighter() {
        let mut hps = square().polygon().halfplanes();
        hps.push(HalfPlane::new(Point2::new(2.0, 0.0), 1.0)); // x1 <= 0.5
        let p = halfplane_intersection(&hps).unwrap();
        assert!((p.area() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn hausdorff_examples() {
        let sq = square();
        let big = sq.polygon().scale(1.1);
        let e = NormSpec::euclidean();
        let h = hausdorff(sq.polygon(), &big, &e);
        assert!((h - 0.1 * 2f64.sqrt()).abs() < 1e-12, "{h}");
        assert_eq!(hausdorff(sq.polygon(), sq.polygon(), &e), 0.0);

        // square vs diamond: corner (1,1) is 1/2 from the diamond in L∞ and 1 in ℓ1
        let linf = NormSpec::polygon(square());
        let l1 = NormSpec::polygon(diamond());
        let h_inf = hausdorff(sq.polygon(), diamond().polygon(), &linf);
        let h_1 = hausdorff(sq.polygon(), diamond().polygon(), &l1);
        assert!((h_inf - 0.5).abs() < 1e-12, "{h_inf}");
        assert!((h_1 - 1.0).abs() < 1e-12, "{h_1}");
    }
}
