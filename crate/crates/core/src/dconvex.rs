//! d-segments, ball hulls and the duality between d-convexity in the norm and
//! B-convexity in the antinorm.

use rand::Rng;

use crate::error::{Error, Result};
use crate::norms::NormSpec;
use crate::plane::{symp, ConvexPolygon, HalfPlane, Point2, SymmetricPolygon};
use crate::sampling::par_trials;

/// Far-field directions used by the sampled ball hull.
pub const FAR_FIELD_DIRECTIONS: usize = 720;

/// The set of points metrically between `a` and `b`: the segment `ab`, or a
/// parallelogram when `b - a` points into a facet cone of a polygonal ball.
#[derive(Clone, Debug, PartialEq)]
pub struct DSegmentRegion {
    pub a: Point2,
    pub b: Point2,
    /// Two-dimensional pieces; empty when the region is the segment itself.
    pub pieces: Vec<ConvexPolygon>,
}

impl DSegmentRegion {
    pub fn is_segment(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn area(&self) -> f64 {
        self.pieces.iter().map(|p| p.area()).sum()
    }

    /// Extreme points of the region.
    pub fn vertices(&self) -> Vec<Point2> {
        if self.is_segment() {
            vec![self.a, self.b]
        } else {
            self.pieces.iter().flat_map(|p| p.vertices().iter().copied()).collect()
        }
    }

    pub fn contains(&self, x: Point2, tol: f64) -> bool {
        let d = self.b - self.a;
        let t = (x - self.a).dot(d) / d.dot(d);
        let on_segment = (-tol..=1.0 + tol).contains(&t) && (self.a.lerp(self.b, t) - x).euclid() <= tol * d.euclid();
        on_segment || self.pieces.iter().any(|p| p.contains(x, tol))
    }
}

pub fn d_segment(n: &NormSpec, a: Point2, b: Point2) -> Result<DSegmentRegion> {
    let d = b - a;
    if !(n.gauge(d) > 1e-12 * a.max_abs().max(b.max_abs()).max(1.0)) {
        return Err(Error::ZeroVector);
    }
    let mut pieces = Vec::new();
    if let NormSpec::Polygon(pn) = n {
        let ball = &pn.ball;
        let k = ball.len();
        for j in 0..k {
            // facet j spans the cone of vertices j and j + 1
            let (e0, e1) = (ball.vertex(j), ball.vertex(j + 1));
            let det = symp(e0, e1);
            let l0 = symp(d, e1) / det;
            let l1 = symp(e0, d) / det;
            let scale = d.euclid() / e0.euclid().min(e1.euclid());
            if l0 > 1e-12 * scale && l1 > 1e-12 * scale {
                if let Ok(p) = ConvexPolygon::new(vec![a, a + e0 * l0, b, a + e1 * l1]) {
                    pieces.push(p);
                }
            }
        }
    }
    Ok(DSegmentRegion { a, b, pieces })
}

/// Whether `‖a - x‖ + ‖x - b‖ = ‖a - b‖` within `1e-9·‖b - a‖`.
pub fn d_member(n: &NormSpec, a: Point2, b: Point2, x: Point2) -> bool {
    let ab = n.gauge(b - a);
    (n.gauge(x - a) + n.gauge(b - x) - ab).abs() <= 1e-9 * ab
}

fn centroid(a: &[Point2]) -> Point2 {
    a.iter().fold(Point2::ORIGIN, |s, &p| s + p) / a.len() as f64
}

fn point_set_diameter(a: &[Point2]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, &p) in a.iter().enumerate() {
        for &q in &a[i + 1..] {
            d = d.max((p - q).euclid());
        }
    }
    d
}

/// Approximate ball-hull membership: `z` is rejected if a sampled ball
/// containing `a` misses it. Centers form a `resolution × resolution` grid
/// over the disk of radius `10·diam(a)`, plus far-field centers in
/// [`FAR_FIELD_DIRECTIONS`] directions, whose balls become half-planes.
pub fn ball_hull_member(n: &NormSpec, a: &[Point2], z: Point2, resolution: usize) -> Result<bool> {
    if a.len() < 2 {
        return Err(Error::Invalid("ball hull needs at least two points".into()));
    }
    let c0 = centroid(a);
    let diam = point_set_diameter(a);
    if !(diam > 0.0) {
        return Err(Error::Degenerate("ball hull of coincident points".into()));
    }
    let tol = 1e-9 * diam;
    let reject = |c: Point2| {
        let r = a.iter().map(|&p| n.gauge(p - c)).fold(0.0, f64::max);
        n.gauge(z - c) > r + tol
    };
    let radius = 10.0 * diam;
    let m = resolution.max(2);
    for i in 0..m {
        for j in 0..m {
            let u = Point2::new(
                -1.0 + 2.0 * i as f64 / (m - 1) as f64,
                -1.0 + 2.0 * j as f64 / (m - 1) as f64,
            );
            if u.euclid() <= 1.0 && reject(c0 + u * radius) {
                return Ok(false);
            }
        }
    }
    for k in 0..FAR_FIELD_DIRECTIONS {
        let u = Point2::from_angle(std::f64::consts::TAU * k as f64 / FAR_FIELD_DIRECTIONS as f64);
        let cone = n.normal_cone(u)?;
        for f in [cone.n_lo, cone.n_hi] {
            // limit of balls centered at c0 - t·u as t grows
            let top = a.iter().map(|&p| f.dot(p)).fold(f64::NEG_INFINITY, f64::max);
            if f.dot(z) > top + tol * f.euclid() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Keeps the part of a convex polygon (vertex list, possibly degenerate)
/// inside the half-plane.
pub fn clip(poly: &[Point2], h: &HalfPlane) -> Vec<Point2> {
    let k = poly.len();
    let mut out = Vec::with_capacity(k + 1);
    for i in 0..k {
        let (p, q) = (poly[i], poly[(i + 1) % k]);
        let (ep, eq) = (h.excess(p), h.excess(q));
        if ep <= 0.0 {
            out.push(p);
        }
        if (ep < 0.0 && eq > 0.0) || (ep > 0.0 && eq < 0.0) {
            out.push(p.lerp(q, ep / (ep - eq)));
        }
    }
    out
}

fn shoelace(v: &[Point2]) -> f64 {
    let k = v.len();
    0.5 * (0..k).map(|i| symp(v[i], v[(i + 1) % k])).sum::<f64>()
}

/// Exact ball hull of a finite set for a polygonal norm: every ball is cut
/// out by half-planes with the facet normals of `B`, so the hull is the
/// intersection of the tightest such half-planes containing the set.
/// Returned as a vertex list, which may be degenerate.
pub fn ball_hull_vertices(ball: &SymmetricPolygon, a: &[Point2]) -> Vec<Point2> {
    let (lo, hi) = a.iter().fold(
        (Point2::new(f64::INFINITY, f64::INFINITY), Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY)),
        |(lo, hi), v| (Point2::new(lo.x1.min(v.x1), lo.x2.min(v.x2)), Point2::new(hi.x1.max(v.x1), hi.x2.max(v.x2))),
    );
    let pad = (hi - lo).max_abs() + 1.0;
    let mut poly = vec![
        Point2::new(lo.x1 - pad, lo.x2 - pad),
        Point2::new(hi.x1 + pad, lo.x2 - pad),
        Point2::new(hi.x1 + pad, hi.x2 + pad),
        Point2::new(lo.x1 - pad, hi.x2 + pad),
    ];
    for &f in ball.facets() {
        let top = a.iter().map(|&p| f.dot(p)).fold(f64::NEG_INFINITY, f64::max);
        poly = clip(&poly, &HalfPlane::new(f, top));
    }
    poly
}

/// Area of the symmetric difference of two convex polygons.
pub fn symmetric_difference_area(p: &[Point2], q: &ConvexPolygon) -> f64 {
    let common = q.halfplanes().iter().fold(p.to_vec(), |acc, h| clip(&acc, h));
    shoelace(p) + q.area() - 2.0 * shoelace(&common)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LassakPair {
    pub a: Point2,
    pub b: Point2,
    pub region_area: f64,
    pub hull_area: f64,
    pub symmetric_difference: f64,
    pub agrees: bool,
}

/// Compares the d-segment of `a, b` in the norm with their ball hull in the
/// antinorm: the symmetric difference must be at most `1e-3` of the region
/// area, or both must be slivers of area below `1e-3·|b - a|²`.
pub fn lassak_pair(n: &NormSpec, a: Point2, b: Point2) -> Result<LassakPair> {
    let pn = n.as_polygon()?;
    let region = d_segment(n, a, b)?;
    let hull = ball_hull_vertices(&pn.anti, &[a, b]);
    let hull_area = shoelace(&hull);
    let region_area = region.area();
    let diff = match region.pieces.as_slice() {
        [] => hull_area,
        pieces => {
            let common: f64 = pieces
                .iter()
                .map(|p| shoelace(&p.halfplanes().iter().fold(hull.clone(), |acc, h| clip(&acc, h))))
                .sum();
            region_area + hull_area - 2.0 * common
        }
    };
    let thin = 1e-3 * (b - a).euclid().powi(2);
    let agrees = diff <= 1e-3 * region_area || (region_area <= thin && hull_area <= thin);
    Ok(LassakPair { a, b, region_area, hull_area, symmetric_difference: diff, agrees })
}

/// Runs [`lassak_pair`] on `pairs` random point pairs.
pub fn lassak_duality_check(n: &NormSpec, pairs: usize, seed: u64) -> Result<bool> {
    n.as_polygon()?;
    let results = par_trials(seed, pairs, |_, rng| {
        let mut pt = || Point2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let (a, b) = (pt(), pt());
        lassak_pair(n, a, b)
    });
    for r in results {
        if !r?.agrees {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the d-segments of `pairs` random pairs of points of the unit
/// antiball stay in it.
pub fn antiball_dconvex_check(n: &NormSpec, pairs: usize, seed: u64) -> Result<bool> {
    let results = par_trials(seed, pairs, |_, rng| {
        let mut pt = || loop {
            let x = Point2::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            if n.antinorm(x) <= 1.0 {
                return x;
            }
        };
        let (a, b) = (pt(), pt());
        d_segment(n, a, b).map(|r| r.vertices().iter().all(|&v| n.antinorm(v) <= 1.0 + 1e-9))
    });
    for r in results {
        match r {
            Ok(false) => return Ok(false),
            Ok(true) | Err(Error::ZeroVector) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(true)
}
