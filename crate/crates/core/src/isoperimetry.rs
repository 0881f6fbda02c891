//! Perimeter and area of convex polygons measured against the unit circle and
//! the unit anticircle: anticircle fits, the isoperimetric inequality family,
//! Zenodorus polygons, mixed perimeters and angular measures.

use std::borrow::Cow;
use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::lp::Lp;
use crate::norms::{Metric, NormSpec};
use crate::optim::{golden_min, nested_golden_min};
use crate::plane::{halfplane_intersection, symp, ConvexPolygon, HalfPlane, Point2, SymmetricPolygon};

/// Number of α samples for the Blaschke family.
pub const BLASCHKE_SAMPLES: usize = 101;
pub const ZENODORUS_STARTS: usize = 8;
pub const ZENODORUS_MAX_SWEEPS: usize = 10_000;
/// Largest accepted gap between a side's midpoint and the anticircle.
pub const MIDPOINT_TOL: f64 = 1e-6;

/// Mixed norms are evaluated through their polygonal ball so that the norm
/// and its isoperimetrix are an exact dual pair.
fn working(n: &NormSpec) -> Cow<'_, NormSpec> {
    match n {
        NormSpec::Mixed(_) => Cow::Owned(n.polygonized()),
        _ => Cow::Borrowed(n),
    }
}

/// Norm length of the boundary of `c`.
pub fn perimeter(n: &NormSpec, c: &ConvexPolygon) -> f64 {
    c.edges().map(|(a, b)| n.gauge(b - a)).sum()
}

/// Length of the boundary of `c` in the given metric.
pub fn metric_perimeter(n: &NormSpec, metric: Metric, c: &ConvexPolygon) -> f64 {
    c.edges().map(|(a, b)| n.dist(metric, b - a)).sum()
}

/// Area of the unit anticircle's ball.
pub fn isoperimetrix_area(n: &NormSpec) -> f64 {
    match n {
        NormSpec::Polygon(pn) => pn.anti.area(),
        NormSpec::Mixed(m) => m.anti.area(),
        NormSpec::Lp(l) => {
            let g = libm::tgamma(1.0 + 1.0 / l.q);
            4.0 * g * g / libm::tgamma(1.0 + 2.0 / l.q)
        }
        NormSpec::Euclidean => PI,
    }
}

/// Center and radius of a homothet `center + radius·I` of the isoperimetrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnticircleFit {
    pub center: Point2,
    pub radius: f64,
}

/// Largest anticircle contained in `c`.
pub fn inscribed_anticircle(n: &NormSpec, c: &ConvexPolygon) -> Result<AnticircleFit> {
    check_body(c)?;
    let n = working(n);
    let mut lp = Lp::minimize(vec![0.0, 0.0, -1.0]);
    for h in c.halfplanes() {
        let s = n.support_value(Metric::Antinorm, h.normal);
        lp.le(vec![h.normal.x1, h.normal.x2, s], h.offset);
    }
    let s = lp.solve()?;
    Ok(AnticircleFit { center: Point2::new(s.x[0], s.x[1]), radius: s.x[2] })
}

/// Smallest anticircle containing `c`.
pub fn enclosing_anticircle(n: &NormSpec, c: &ConvexPolygon) -> Result<AnticircleFit> {
    check_body(c)?;
    let n = working(n);
    let anti = match n.as_ref() {
        NormSpec::Polygon(pn) => Some(&pn.anti),
        _ => None,
    };
    if let Some(anti) = anti {
        // antinorm(w - c) = max_j f_j·(w - c) <= σ
        let mut lp = Lp::minimize(vec![0.0, 0.0, 1.0]);
        for &w in c.vertices() {
            for f in anti.facets() {
                lp.ge(vec![f.x1, f.x2, 1.0], f.dot(w));
            }
        }
        let s = lp.solve()?;
        let center = Point2::new(s.x[0], s.x[1]);
        return Ok(AnticircleFit { center, radius: enclosing_radius(&n, c, center) });
    }
    let (lo, hi) = bbox(c);
    let tol = 1e-12 * (hi - lo).max_abs();
    let ((x1, x2), _) = nested_golden_min(
        |x1, x2| enclosing_radius(&n, c, Point2::new(x1, x2)),
        (lo.x1, hi.x1),
        (lo.x2, hi.x2),
        tol,
    );
    let center = Point2::new(x1, x2);
    Ok(AnticircleFit { center, radius: enclosing_radius(&n, c, center) })
}

fn enclosing_radius(n: &NormSpec, c: &ConvexPolygon, center: Point2) -> f64 {
    c.vertices().iter().map(|&w| n.antinorm(w - center)).fold(0.0, f64::max)
}

fn bbox(c: &ConvexPolygon) -> (Point2, Point2) {
    c.vertices().iter().fold(
        (Point2::new(f64::INFINITY, f64::INFINITY), Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY)),
        |(lo, hi), v| (Point2::new(lo.x1.min(v.x1), lo.x2.min(v.x2)), Point2::new(hi.x1.max(v.x1), hi.x2.max(v.x2))),
    )
}

fn check_body(c: &ConvexPolygon) -> Result<()> {
    let d = c.diameter();
    if !(c.area() > 1e-12 * d * d) {
        return Err(Error::Degenerate("convex body has no interior".into()));
    }
    Ok(())
}

/// Signed slacks of the inequality family; each is nonnegative when the
/// inequality holds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InequalitySlacks {
    pub circump: f64,
    pub chakerian_star: f64,
    pub lhuilier: f64,
    pub ratio_diff: f64,
    pub bonnesen_plus: f64,
    pub bonnesen_plusplus: f64,
    pub blaschke_family_min: f64,
    pub petty_deficit: f64,
}

impl InequalitySlacks {
    pub fn named(&self) -> [(&'static str, f64); 8] {
        [
            ("circump", self.circump),
            ("chakerian_star", self.chakerian_star),
            ("lhuilier", self.lhuilier),
            ("ratio_diff", self.ratio_diff),
            ("bonnesen_plus", self.bonnesen_plus),
            ("bonnesen_plusplus", self.bonnesen_plusplus),
            ("blaschke_family_min", self.blaschke_family_min),
            ("petty_deficit", self.petty_deficit),
        ]
    }

    pub fn min(&self) -> f64 {
        self.named().iter().map(|s| s.1).fold(f64::INFINITY, f64::min)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IsoperimetricReport {
    pub perimeter: f64,
    pub area: f64,
    /// `perimeter² / area`.
    pub iota: f64,
    pub rho: f64,
    pub sigma: f64,
    pub inscribed: AnticircleFit,
    pub enclosing: AnticircleFit,
    /// Polygon with the edge directions of `C` circumscribed about the
    /// inscribed anticircle.
    pub circumscribed: ConvexPolygon,
    pub isoperimetrix_area: f64,
    pub slacks: InequalitySlacks,
    /// Scale of the slacks (`perimeter²`), for relative tolerances.
    pub scale: f64,
}

impl IsoperimetricReport {
    pub fn all_hold(&self, tol: f64) -> bool {
        self.slacks.min() >= -tol * self.scale
    }
}

pub fn inequality_report(n: &NormSpec, c: &ConvexPolygon) -> Result<IsoperimetricReport> {
    let n = working(n);
    let n = n.as_ref();
    let inscribed = inscribed_anticircle(n, c)?;
    let enclosing = enclosing_anticircle(n, c)?;
    let (rho, sigma) = (inscribed.radius, enclosing.radius);
    let q = halfplane_intersection(
        &c.halfplanes()
            .iter()
            .map(|h| {
                let s = n.support_value(Metric::Antinorm, h.normal);
                HalfPlane::new(h.normal, h.normal.dot(inscribed.center) + rho * s)
            })
            .collect::<Vec<_>>(),
    )?;
    let (p, a) = (perimeter(n, c), c.area());
    let (pq, aq) = (perimeter(n, &q), q.area());
    let ai = isoperimetrix_area(n);
    let iota = p * p / a;
    let family = |alpha: f64| alpha * p - a - alpha * alpha * ai;
    let mut blaschke = (0..BLASCHKE_SAMPLES)
        .map(|k| family(rho + (sigma - rho) * k as f64 / (BLASCHKE_SAMPLES - 1) as f64))
        .fold(f64::INFINITY, f64::min);
    let vertex = p / (2.0 * ai);
    if vertex > rho && vertex < sigma {
        blaschke = blaschke.min(family(vertex));
    }
    let slacks = InequalitySlacks {
        circump: 2.0 * a - rho * p,
        chakerian_star: rho * p - a - aq,
        lhuilier: p * p * rho * rho - 4.0 * a * aq,
        ratio_diff: iota - pq * pq / aq - (p - pq).powi(2) / a,
        bonnesen_plus: family(rho),
        bonnesen_plusplus: family(sigma),
        blaschke_family_min: blaschke,
        petty_deficit: p * p - 4.0 * ai * a - ai * ai * (sigma - rho).powi(2),
    };
    Ok(IsoperimetricReport {
        perimeter: p,
        area: a,
        iota,
        rho,
        sigma,
        inscribed,
        enclosing,
        circumscribed: q,
        isoperimetrix_area: ai,
        slacks,
        scale: p * p,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Zenodorus {
    pub polygon: ConvexPolygon,
    pub area: f64,
    /// Outer normal angles of the sides, increasing.
    pub normals: Vec<f64>,
    /// Largest gap `antinorm(midpoint) - 1` over the sides.
    pub midpoint_deviation: f64,
    pub sweeps: usize,
}

struct Tangents<'a> {
    n: &'a NormSpec,
    facet_angles: Vec<f64>,
}

impl Tangents<'_> {
    fn line(&self, theta: f64) -> HalfPlane {
        let u = Point2::from_angle(theta);
        HalfPlane::new(u, self.n.support_value(Metric::Antinorm, u))
    }

    fn vertices(&self, th: &[f64]) -> Option<Vec<Point2>> {
        let k = th.len();
        let lines: Vec<HalfPlane> = th.iter().map(|&t| self.line(t)).collect();
        (0..k)
            .map(|j| {
                let (a, b) = (lines[j], lines[(j + 1) % k]);
                let det = a.normal.x1 * b.normal.x2 - a.normal.x2 * b.normal.x1;
                (det > 0.0).then(|| {
                    Point2::new(
                        (a.offset * b.normal.x2 - a.normal.x2 * b.offset) / det,
                        (a.normal.x1 * b.offset - a.offset * b.normal.x1) / det,
                    )
                })
            })
            .collect()
    }

    fn area(&self, th: &[f64]) -> f64 {
        let Some(v) = self.vertices(th) else { return f64::INFINITY };
        let k = v.len();
        0.5 * (0..k).map(|i| symp(v[i], v[(i + 1) % k])).sum::<f64>()
    }

    /// Side `j` runs from vertex `j - 1` to vertex `j`.
    fn deviation(&self, th: &[f64]) -> f64 {
        let Some(v) = self.vertices(th) else { return f64::INFINITY };
        let k = v.len();
        (0..k)
            .map(|j| (self.n.antinorm((v[(j + k - 1) % k] + v[j]) * 0.5) - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// One pass of exact one-side minimizations.
    fn sweep(&self, th: &mut [f64]) {
        let k = th.len();
        for j in 0..k {
            let prev = if j == 0 { th[k - 1] - TAU } else { th[j - 1] };
            let next = if j == k - 1 { th[0] + TAU } else { th[j + 1] };
            let lo = prev.max(next - PI) + 1e-9;
            let hi = next.min(prev + PI) - 1e-9;
            if lo >= hi {
                continue;
            }
            let f = |t: f64| {
                let mut trial = th.to_vec();
                trial[j] = t;
                self.area(&trial)
            };
            let (mut best_t, mut best) = golden_min(f, lo, hi, 1e-14);
            if best > f(th[j]) {
                best_t = th[j];
                best = f(th[j]);
            }
            for &fa in &self.facet_angles {
                for cand in [fa - TAU, fa, fa + TAU] {
                    if cand > lo && cand < hi && (cand - best_t).abs() < 1e-6 {
                        let v = f(cand);
                        if v <= best + 1e-13 * best.abs() {
                            best_t = cand;
                            best = v;
                        }
                    }
                }
            }
            th[j] = best_t;
        }
    }
}

/// Locally area-minimal `k`-gon circumscribed about the unit anticircle, by
/// cyclic exact minimization over each side from several rotated starts.
/// Every returned polygon touches the anticircle at the midpoints of its sides.
pub fn zenodorus(n: &NormSpec, k: usize) -> Result<Zenodorus> {
    if k < 3 {
        return Err(Error::Invalid(format!("Zenodorus polygon needs at least 3 sides, got {k}")));
    }
    let n = working(n);
    let facet_angles = match n.as_ref() {
        // outer normals of I's edges
        NormSpec::Polygon(pn) => pn.anti.facets().iter().map(|f| f.angle()).collect(),
        _ => Vec::new(),
    };
    let tangents = Tangents { n: n.as_ref(), facet_angles };
    let mut best: Option<(Vec<f64>, f64, usize)> = None;
    let mut worst_residual = (0.0_f64, Vec::new());
    for s in 0..ZENODORUS_STARTS {
        let offset = TAU * s as f64 / (ZENODORUS_STARTS * k) as f64;
        let mut th: Vec<f64> = (0..k).map(|j| offset + TAU * j as f64 / k as f64).collect();
        let mut area = tangents.area(&th);
        let mut converged = None;
        for sweep in 1..=ZENODORUS_MAX_SWEEPS {
            tangents.sweep(&mut th);
            let next = tangents.area(&th);
            let stalled = area - next <= 1e-15 * next.abs();
            area = next;
            if stalled && tangents.deviation(&th) <= MIDPOINT_TOL {
                converged = Some(sweep);
                break;
            }
        }
        match converged {
            Some(sweeps) => {
                if best.as_ref().map_or(true, |b| area < b.1 - 1e-12 * area) {
                    best = Some((th, area, sweeps));
                }
            }
            None => {
                let r = tangents.deviation(&th);
                if r >= worst_residual.0 {
                    worst_residual = (r, tangents.vertices(&th).unwrap_or_default());
                }
            }
        }
    }
    let Some((th, area, sweeps)) = best else {
        return Err(Error::NotConverged {
            iterations: ZENODORUS_MAX_SWEEPS,
            residual: worst_residual.0,
            best: worst_residual.1,
        });
    };
    let verts = tangents.vertices(&th).expect("bounded polygon");
    let polygon = ConvexPolygon::hull(&verts).or_else(|_| ConvexPolygon::new(verts.clone()))?;
    Ok(Zenodorus { polygon, area, midpoint_deviation: tangents.deviation(&th), normals: th, sweeps })
}

/// The four mixed perimeters of the unit circle `B` and anticircle `I`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GirthReport {
    pub p_b_of_b: f64,
    pub p_i_of_i: f64,
    pub p_b_of_i: f64,
    pub p_i_of_b: f64,
    pub area_b: f64,
    pub area_i: f64,
}

pub fn girth_report(n: &NormSpec) -> Result<GirthReport> {
    let pn = n.as_polygon()?;
    let (b, i) = (pn.ball.polygon(), pn.anti.polygon());
    Ok(GirthReport {
        p_b_of_b: metric_perimeter(n, Metric::Norm, b),
        p_i_of_i: metric_perimeter(n, Metric::Antinorm, i),
        p_b_of_i: metric_perimeter(n, Metric::Norm, i),
        p_i_of_b: metric_perimeter(n, Metric::Antinorm, b),
        area_b: b.area(),
        area_i: i.area(),
    })
}

/// The two angular measures of a boundary arc of `B`, each normalized to `2π`
/// on the whole circle, and the antinorm arc-length measure.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArcMeasure {
    pub mu_l: f64,
    pub mu_a: f64,
    pub mu_anti_length: f64,
}

/// Measures of the counterclockwise arc of `∂B` from the ray through `from` to
/// the ray through `to` (the whole circle if the rays coincide).
pub fn angular_measures(n: &NormSpec, from: Point2, to: Point2) -> Result<ArcMeasure> {
    let pn = n.as_polygon()?;
    if from.max_abs() == 0.0 || to.max_abs() == 0.0 {
        return Err(Error::ZeroVector);
    }
    let ball = &pn.ball;
    let arc = ball.arc(from, to);
    let (mut len, mut sector, mut anti) = (0.0, 0.0, 0.0);
    for w in arc.windows(2) {
        len += ball.gauge(w[1] - w[0]);
        sector += 0.5 * symp(w[0], w[1]);
        anti += ball.antinorm(w[1] - w[0]);
    }
    let b = ball.polygon();
    Ok(ArcMeasure {
        mu_l: TAU * len / metric_perimeter(n, Metric::Norm, b),
        mu_a: TAU * sector / ball.area(),
        mu_anti_length: TAU * anti / metric_perimeter(n, Metric::Antinorm, b),
    })
}

/// Points splitting the closed polyline `ring` into `k` arcs of equal
/// `len`-length, starting at `ring[0]`; each arc is returned with its interior
/// vertices.
fn equal_length_arcs(ring: &[Point2], k: usize, len: impl Fn(Point2) -> f64) -> Vec<Vec<Point2>> {
    let m = ring.len();
    let seg: Vec<f64> = (0..m).map(|i| len(ring[(i + 1) % m] - ring[i])).collect();
    let total: f64 = seg.iter().sum();
    let step = total / k as f64;
    let mut arcs = Vec::with_capacity(k);
    let mut cur = vec![ring[0]];
    let (mut i, mut used, mut acc) = (0usize, 0.0, 0.0);
    for part in 1..=k {
        let target = step * part as f64;
        loop {
            let rest = seg[i] * (1.0 - used);
            if part < k && acc + rest >= target {
                let t = used + (target - acc) / seg[i];
                let p = ring[i].lerp(ring[(i + 1) % m], t);
                cur.push(p);
                arcs.push(std::mem::replace(&mut cur, vec![p]));
                acc = target;
                used = t;
                break;
            }
            acc += rest;
            i += 1;
            used = 0.0;
            cur.push(ring[i % m]);
            if i == m {
                arcs.push(std::mem::take(&mut cur));
                return arcs;
            }
        }
    }
    arcs
}

fn polyline_sector_area(arc: &[Point2]) -> f64 {
    arc.windows(2).map(|w| 0.5 * symp(w[0], w[1])).sum()
}

/// Splits `∂I` into `k` arcs of equal norm length and returns the spread
/// (max - min) of the sector areas they sweep.
pub fn kepler_check(n: &NormSpec, k: usize) -> Result<f64> {
    let pn = n.as_polygon()?;
    if k == 0 {
        return Err(Error::Invalid("partition count must be positive".into()));
    }
    let arcs = equal_length_arcs(pn.anti.vertices(), k, |d| pn.ball.gauge(d));
    let areas: Vec<f64> = arcs.iter().map(|a| polyline_sector_area(a)).collect();
    let hi = areas.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = areas.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(hi - lo)
}

/// Triangle circumscribed about `center + r·B` with the given outer normals.
pub fn circumscribed_triangle(n: &NormSpec, center: Point2, r: f64, normals: [Point2; 3]) -> Result<ConvexPolygon> {
    let hps: Vec<HalfPlane> = normals
        .iter()
        .map(|&u| HalfPlane::new(u, u.dot(center) + r * n.support_value(Metric::Norm, u)))
        .collect();
    halfplane_intersection(&hps)
}

/// Ratios `r·perimeter/area` of random triangles circumscribed about circles
/// of random radius `r`; returns `(max/min, min, max)`.
pub fn circumscribed_ratio_scan(n: &NormSpec, trials: usize, seed: u64) -> (f64, f64, f64) {
    use rand::Rng;
    let ratios = crate::sampling::par_trials(seed, trials, |_, rng| loop {
        let mut gaps = [rng.gen_range(0.2..1.0), rng.gen_range(0.2..1.0), rng.gen_range(0.2..1.0)];
        let s: f64 = gaps.iter().sum();
        gaps.iter_mut().for_each(|g| *g *= TAU / s);
        if gaps.iter().any(|&g| g >= PI - 0.05) {
            continue;
        }
        let t0 = rng.gen_range(0.0..TAU);
        let normals = [
            Point2::from_angle(t0),
            Point2::from_angle(t0 + gaps[0]),
            Point2::from_angle(t0 + gaps[0] + gaps[1]),
        ];
        let r = rng.gen_range(0.2..5.0);
        let c = Point2::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        if let Ok(t) = circumscribed_triangle(n, c, r, normals) {
            if t.len() == 3 {
                break r * perimeter(n, &t) / t.area();
            }
        }
    });
    let hi = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    (hi / lo, lo, hi)
}

/// `ι(C) / ι(I)`, at least one by the isoperimetric inequality.
pub fn isoperimetric_quotient(n: &NormSpec, c: &ConvexPolygon) -> f64 {
    let n = working(n);
    let p = perimeter(&n, c);
    p * p / (c.area() * 4.0 * isoperimetrix_area(&n))
}

/// The anticircle `center + r·I` as a polygon (exact for polygon backends).
pub fn anticircle_polygon(n: &NormSpec, center: Point2, r: f64, budget: usize) -> ConvexPolygon {
    let i: SymmetricPolygon = n.isoperimetrix(budget);
    i.polygon().scale(r).translate(center)
}
