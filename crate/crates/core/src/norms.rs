//! Norm backends, the antinorm and Birkhoff normality.
//!
//! Every backend answers two questions exactly (up to rounding): the value of
//! the norm or antinorm at a vector, and the face of the corresponding unit
//! ball that supports a given outer normal. Everything metric (distances to
//! lines, segments and polygons, normal cones) is derived from those two.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::plane::{symp, ConvexPolygon, Point2, SymmetricPolygon};

/// Vertex budget for polygonizing analytic norms.
pub const POLYGONIZE_N: usize = 1440;

/// Vectors whose gauge falls below this are treated as zero.
pub const ZERO_GAUGE: f64 = 1e-12;

/// Relative tolerance of the equality test `|[x,y]| = ‖x‖·antinorm(y)`.
pub const NORMALITY_TOL: f64 = 1e-9;

/// Which of the two norms a distance is measured in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Metric {
    Norm,
    Antinorm,
}

impl Metric {
    pub fn dual(self) -> Metric {
        match self {
            Metric::Norm => Metric::Antinorm,
            Metric::Antinorm => Metric::Norm,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolygonNorm {
    pub ball: SymmetricPolygon,
    pub anti: SymmetricPolygon,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpNorm {
    pub p: f64,
    pub q: f64,
}

/// The ℓp norm on the first and third quadrants glued to the ℓq norm on the
/// second and fourth. The antinorm is evaluated on a polygonization.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedNorm {
    pub p: f64,
    pub q: f64,
    pub ball: SymmetricPolygon,
    pub anti: SymmetricPolygon,
}

#[derive(Clone, Debug, PartialEq)]
pub enum NormSpec {
    Polygon(PolygonNorm),
    Lp(LpNorm),
    Mixed(MixedNorm),
    Euclidean,
}

fn conjugate(p: f64) -> Result<f64> {
    if !(p.is_finite() && p > 1.0) {
        return Err(Error::Invalid(format!("exponent p must lie in (1, ∞), got {p}")));
    }
    Ok(p / (p - 1.0))
}

fn lp_value(x: Point2, p: f64) -> f64 {
    let m = x.max_abs();
    if m == 0.0 {
        return 0.0;
    }
    let a = x.x1.abs() / m;
    let b = x.x2.abs() / m;
    m * (a.powf(p) + b.powf(p)).powf(1.0 / p)
}

/// Point of the ℓp unit sphere maximizing `n·z`.
fn lp_support_point(n: Point2, p: f64) -> Point2 {
    let q = p / (p - 1.0);
    let m = n.max_abs();
    let (a, b) = (n.x1 / m, n.x2 / m);
    let za = a.signum() * a.abs().powf(q - 1.0);
    let zb = b.signum() * b.abs().powf(q - 1.0);
    let z = Point2::new(if a == 0.0 { 0.0 } else { za }, if b == 0.0 { 0.0 } else { zb });
    z / lp_value(z, p)
}

/// Outer normal of the ℓp sphere at the ray through `x`.
fn lp_gradient(x: Point2, p: f64) -> Point2 {
    let m = x.max_abs();
    let (a, b) = (x.x1 / m, x.x2 / m);
    let f = |t: f64| if t == 0.0 { 0.0 } else { t.signum() * t.abs().powf(p - 1.0) };
    Point2::new(f(a), f(b))
}

/// Polygon with vertices on the unit sphere of a norm that is ℓ_{e_k} on the
/// k-th quadrant, `per_quadrant` vertices per quadrant.
fn superellipse(exponents: [f64; 4], per_quadrant: usize) -> Result<SymmetricPolygon> {
    let m = per_quadrant.max(1);
    let mut pts = Vec::with_capacity(2 * m);
    for (k, &e) in exponents.iter().take(2).enumerate() {
        for i in 0..m {
            let theta = FRAC_PI_2 * i as f64 / m as f64;
            let (s, c) = theta.sin_cos();
            let mut v = Point2::new(c.powf(2.0 / e), s.powf(2.0 / e));
            for _ in 0..k {
                v = v.rot90();
            }
            pts.push(v);
        }
    }
    SymmetricPolygon::from_points(&pts)
}

/// Isoperimetrix of a polygonal ball: the polar body turned a quarter clockwise.
pub fn polygon_isoperimetrix(ball: &SymmetricPolygon) -> SymmetricPolygon {
    let pts: Vec<Point2> = ball.facets()[..ball.len() / 2].iter().map(|f| f.rot270()).collect();
    SymmetricPolygon::from_points(&pts).expect("isoperimetrix of a valid ball is valid")
}

/// Angular interval of the directions `y` with `x ⊣ y`, given by the extreme
/// outer normals at `x/‖x‖`. Directions are the normals turned by a quarter;
/// the interval runs counterclockwise from `lo` to `hi` and is closed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormalCone {
    pub n_lo: Point2,
    pub n_hi: Point2,
}

impl NormalCone {
    pub fn is_singleton(&self) -> bool {
        symp(self.n_lo, self.n_hi).abs() <= 1e-12 * self.n_lo.euclid() * self.n_hi.euclid()
    }

    pub fn dir_lo(&self) -> Point2 {
        let d = self.n_lo.rot90();
        d / d.euclid()
    }

    pub fn dir_hi(&self) -> Point2 {
        let d = self.n_hi.rot90();
        d / d.euclid()
    }

    /// Endpoint angles modulo π, `lo` in `[0, π)` and `hi` in `[lo, lo + π)`.
    pub fn angles(&self) -> (f64, f64) {
        let pi = std::f64::consts::PI;
        let lo = self.dir_lo().angle() % pi;
        let mut hi = self.dir_hi().angle() % pi;
        if hi < lo - 1e-15 {
            hi += pi;
        }
        (lo, hi.max(lo))
    }

    /// Whether the direction `y` (up to sign) lies in the interval.
    pub fn contains(&self, y: Point2, tol: f64) -> bool {
        let (a, b) = (self.dir_lo(), self.dir_hi());
        let u = y / y.euclid();
        let inside = |u: Point2| symp(a, u) >= -tol && symp(u, b) >= -tol && a.dot(u) + b.dot(u) > -1.0;
        inside(u) || inside(-u)
    }
}

impl NormSpec {
    pub fn polygon(ball: SymmetricPolygon) -> Self {
        let anti = polygon_isoperimetrix(&ball);
        NormSpec::Polygon(PolygonNorm { ball, anti })
    }

    pub fn lp(p: f64) -> Result<Self> {
        let q = conjugate(p)?;
        Ok(NormSpec::Lp(LpNorm { p, q }))
    }

    pub fn mixed(p: f64) -> Result<Self> {
        let q = conjugate(p)?;
        let ball = superellipse([p, q, p, q], POLYGONIZE_N / 4)?;
        let anti = polygon_isoperimetrix(&ball);
        Ok(NormSpec::Mixed(MixedNorm { p, q, ball, anti }))
    }

    pub fn euclidean() -> Self {
        NormSpec::Euclidean
    }

    pub fn label(&self) -> String {
        match self {
            NormSpec::Polygon(pn) => format!("polygon({} vertices)", pn.ball.len()),
            NormSpec::Lp(l) => format!("lp({})", l.p),
            NormSpec::Mixed(m) => format!("mixed({})", m.p),
            NormSpec::Euclidean => "euclidean".to_string(),
        }
    }

    pub fn is_polygon(&self) -> bool {
        matches!(self, NormSpec::Polygon(_))
    }

    /// Smooth and strictly convex backends.
    pub fn is_strictly_convex(&self) -> bool {
        !self.is_polygon()
    }

    pub fn as_polygon(&self) -> Result<&PolygonNorm> {
        match self {
            NormSpec::Polygon(pn) => Ok(pn),
            _ => Err(Error::PolygonRequired),
        }
    }

    #[inline]
    pub fn gauge(&self, x: Point2) -> f64 {
        match self {
            NormSpec::Polygon(pn) => pn.ball.gauge(x),
            NormSpec::Lp(l) => lp_value(x, l.p),
            NormSpec::Mixed(m) => {
                if x.x1 * x.x2 >= 0.0 {
                    lp_value(x, m.p)
                } else {
                    lp_value(x, m.q)
                }
            }
            NormSpec::Euclidean => x.euclid(),
        }
    }

    #[inline]
    pub fn antinorm(&self, x: Point2) -> f64 {
        match self {
            NormSpec::Polygon(pn) => pn.ball.antinorm(x),
            NormSpec::Lp(l) => lp_value(x, l.q),
            NormSpec::Mixed(m) => m.anti.gauge(x),
            NormSpec::Euclidean => x.euclid(),
        }
    }

    #[inline]
    pub fn dist(&self, metric: Metric, x: Point2) -> f64 {
        match metric {
            Metric::Norm => self.gauge(x),
            Metric::Antinorm => self.antinorm(x),
        }
    }

    /// Face of the metric's unit ball maximizing `n·z`, as two endpoints
    /// (equal when the face is a point).
    pub fn unit_face(&self, metric: Metric, n: Point2) -> (Point2, Point2) {
        let point = |z: Point2| (z, z);
        match (self, metric) {
            (NormSpec::Polygon(pn), Metric::Norm) => pn.ball.support_face(n),
            (NormSpec::Polygon(pn), Metric::Antinorm) => pn.anti.support_face(n),
            (NormSpec::Lp(l), Metric::Norm) => point(lp_support_point(n, l.p)),
            (NormSpec::Lp(l), Metric::Antinorm) => point(lp_support_point(n, l.q)),
            (NormSpec::Mixed(m), Metric::Norm) => {
                let e = if n.x1 * n.x2 >= 0.0 { m.p } else { m.q };
                point(lp_support_point(n, e))
            }
            (NormSpec::Mixed(m), Metric::Antinorm) => m.anti.support_face(n),
            (NormSpec::Euclidean, _) => point(n / n.euclid()),
        }
    }

    /// Support function `max_{‖z‖ <= 1} n·z` of the metric's unit ball.
    pub fn support_value(&self, metric: Metric, n: Point2) -> f64 {
        match (self, metric) {
            (NormSpec::Polygon(pn), Metric::Norm) => pn.ball.support_value(n),
            (NormSpec::Polygon(pn), Metric::Antinorm) => pn.anti.support_value(n),
            (NormSpec::Mixed(m), Metric::Antinorm) => m.anti.support_value(n),
            (NormSpec::Mixed(_), Metric::Norm) => n.dot(self.unit_face(metric, n).0),
            // h_B(n) = antinorm(Rn) and h_I(n) = ‖R⁻¹n‖, R the clockwise quarter turn
            (_, Metric::Norm) => self.antinorm(n.rot270()),
            (_, Metric::Antinorm) => self.gauge(n.rot90()),
        }
    }

    /// Polygonal approximation of the unit ball with vertices on the unit
    /// sphere (the ball itself for the polygon backend).
    pub fn ball_polygon(&self, n: usize) -> SymmetricPolygon {
        match self {
            NormSpec::Polygon(pn) => pn.ball.clone(),
            NormSpec::Lp(l) => superellipse([l.p; 4], (n / 4).max(2)).expect("valid superellipse"),
            NormSpec::Mixed(m) => {
                if n == POLYGONIZE_N {
                    m.ball.clone()
                } else {
                    superellipse([m.p, m.q, m.p, m.q], (n / 4).max(2)).expect("valid superellipse")
                }
            }
            NormSpec::Euclidean => {
                let k = (n.max(4) / 2) * 2;
                SymmetricPolygon::regular(k, 1.0, 0.0).expect("valid regular polygon")
            }
        }
    }

    /// The unit anticircle's ball. Exact for polygons; for analytic norms a
    /// polygon with vertices on the anticircle (`n` is the vertex budget).
    pub fn isoperimetrix(&self, n: usize) -> SymmetricPolygon {
        match self {
            NormSpec::Polygon(pn) => pn.anti.clone(),
            NormSpec::Lp(l) => superellipse([l.q; 4], (n / 4).max(2)).expect("valid superellipse"),
            NormSpec::Mixed(m) => {
                if n == POLYGONIZE_N {
                    m.anti.clone()
                } else {
                    polygon_isoperimetrix(&self.ball_polygon(n))
                }
            }
            NormSpec::Euclidean => self.ball_polygon(n),
        }
    }

    /// The polygon norm of `ball_polygon(POLYGONIZE_N)`.
    pub fn polygonized(&self) -> NormSpec {
        match self {
            NormSpec::Polygon(_) => self.clone(),
            NormSpec::Mixed(m) => NormSpec::Polygon(PolygonNorm { ball: m.ball.clone(), anti: m.anti.clone() }),
            _ => NormSpec::polygon(self.ball_polygon(POLYGONIZE_N)),
        }
    }

    /// The norm whose unit ball is this norm's isoperimetrix (polygon backends).
    pub fn dual_polygon_norm(&self) -> Result<NormSpec> {
        let pn = self.as_polygon()?;
        Ok(NormSpec::Polygon(PolygonNorm { ball: pn.anti.clone(), anti: pn.ball.clone() }))
    }

    fn check_nonzero(&self, x: Point2) -> Result<()> {
        if !x.is_finite() {
            return Err(Error::Invalid("non-finite vector".into()));
        }
        if self.gauge(x) < ZERO_GAUGE {
            return Err(Error::ZeroVector);
        }
        Ok(())
    }

    /// Extreme outer normals of the unit ball at `x/‖x‖`.
    pub fn normal_cone(&self, x: Point2) -> Result<NormalCone> {
        self.check_nonzero(x)?;
        let single = |n: Point2| NormalCone { n_lo: n, n_hi: n };
        Ok(match self {
            NormSpec::Polygon(pn) => {
                let f = pn.ball.facets();
                let vals: Vec<f64> = f.iter().map(|g| g.dot(x)).collect();
                let top = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let k = f.len();
                let active: Vec<usize> = (0..k).filter(|&j| vals[j] >= top - NORMALITY_TOL * top).collect();
                match active.as_slice() {
                    [j] => single(f[*j]),
                    [a, b] if *b == a + 1 => NormalCone { n_lo: f[*a], n_hi: f[*b] },
                    [a, b] if *a == 0 && *b == k - 1 => NormalCone { n_lo: f[*b], n_hi: f[*a] },
                    _ => {
                        let j = vals
                            .iter()
                            .copied()
                            .enumerate()
                            .max_by(|a, b| a.1.total_cmp(&b.1))
                            .unwrap()
                            .0;
                        single(f[j])
                    }
                }
            }
            NormSpec::Lp(l) => single(lp_gradient(x, l.p)),
            NormSpec::Mixed(m) => {
                let e = if x.x1 * x.x2 >= 0.0 { m.p } else { m.q };
                single(lp_gradient(x, e))
            }
            NormSpec::Euclidean => single(x / x.euclid()),
        })
    }

    /// Birkhoff normality `x ⊣ y`.
    pub fn is_normal(&self, x: Point2, y: Point2) -> Result<bool> {
        self.check_nonzero(x)?;
        self.check_nonzero(y)?;
        Ok(match self {
            NormSpec::Mixed(_) => {
                let n = self.normal_cone(x)?.n_lo;
                n.dot(y).abs() <= NORMALITY_TOL * n.euclid() * y.euclid()
            }
            _ => {
                let rhs = self.gauge(x) * self.antinorm(y);
                symp(x, y).abs() >= rhs * (1.0 - NORMALITY_TOL)
            }
        })
    }

    /// Closed interval of all α with `x ⊣ αx + y`.
    pub fn normal_coefficients(&self, x: Point2, y: Point2) -> Result<(f64, f64)> {
        self.check_independent(x, y)?;
        let cone = self.normal_cone(x)?;
        let a = -cone.n_lo.dot(y) / cone.n_lo.dot(x);
        let b = -cone.n_hi.dot(y) / cone.n_hi.dot(x);
        Ok((a.min(b), a.max(b)))
    }

    /// Closed interval of all μ with `μy + x ⊣ y`.
    pub fn left_normal_coefficients(&self, x: Point2, y: Point2) -> Result<(f64, f64)> {
        self.check_independent(x, y)?;
        let (z0, z1) = self.unit_face(Metric::Norm, y.rot270());
        let mu = |z: Point2| -symp(x, z) / symp(y, z);
        let (a, b) = (mu(z0), mu(z1));
        Ok((a.min(b), a.max(b)))
    }

    fn check_independent(&self, x: Point2, y: Point2) -> Result<()> {
        self.check_nonzero(x)?;
        self.check_nonzero(y)?;
        if symp(x, y).abs() <= 1e-12 * x.euclid() * y.euclid() {
            return Err(Error::Dependent);
        }
        Ok(())
    }

    /// Minimum of `metric(p - z)` over the line through `q` with direction `d`.
    pub fn line_distance(&self, metric: Metric, p: Point2, q: Point2, d: Point2) -> f64 {
        symp(p - q, d).abs() / self.dist(metric.dual(), d)
    }

    /// Parameter interval `[t0, t1]` of the nearest points `q + t·d` to `x`.
    pub fn line_nearest_params(&self, metric: Metric, x: Point2, q: Point2, d: Point2) -> (f64, f64) {
        let z = q - x;
        let s = symp(z, d);
        let dd = d.dot(d);
        if s == 0.0 {
            let t = (x - q).dot(d) / dd;
            return (t, t);
        }
        let r = s.abs() / self.dist(metric.dual(), d);
        let n = d.rot270() * s.signum();
        let (w0, w1) = self.unit_face(metric, n);
        let t0 = (x + w0 * r - q).dot(d) / dd;
        let t1 = (x + w1 * r - q).dot(d) / dd;
        (t0.min(t1), t0.max(t1))
    }

    /// A nearest point of the line to `x`: the midpoint of the optimal set.
    pub fn nearest_on_line(&self, metric: Metric, x: Point2, q: Point2, d: Point2) -> Point2 {
        let (t0, t1) = self.line_nearest_params(metric, x, q, d);
        q + d * (0.5 * (t0 + t1))
    }

    /// Parameter interval of nearest points on the segment `a + t(b - a)`, `t ∈ [0, 1]`.
    pub fn segment_nearest_params(&self, metric: Metric, x: Point2, a: Point2, b: Point2) -> (f64, f64) {
        let (t0, t1) = self.line_nearest_params(metric, x, a, b - a);
        if t1 < 0.0 {
            (0.0, 0.0)
        } else if t0 > 1.0 {
            (1.0, 1.0)
        } else {
            (t0.max(0.0), t1.min(1.0))
        }
    }

    pub fn segment_distance(&self, metric: Metric, x: Point2, a: Point2, b: Point2) -> f64 {
        if (b - a).max_abs() == 0.0 {
            return self.dist(metric, x - a);
        }
        let (t0, t1) = self.segment_nearest_params(metric, x, a, b);
        let t = 0.5 * (t0 + t1);
        self.dist(metric, x - a.lerp(b, t))
    }

    /// Norm distance from `x` to the polygon (zero inside).
    pub fn distance_to_polygon(&self, x: Point2, poly: &ConvexPolygon) -> f64 {
        self.metric_distance_to_polygon(Metric::Norm, x, poly)
    }

    pub fn metric_distance_to_polygon(&self, metric: Metric, x: Point2, poly: &ConvexPolygon) -> f64 {
        if poly.contains(x, 0.0) {
            return 0.0;
        }
        poly.edges()
            .map(|(a, b)| self.segment_distance(metric, x, a, b))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Euclidean Hausdorff distance between `B` and the isoperimetrix of its isoperimetrix.
pub fn antinorm_involution_defect(n: &NormSpec) -> Result<f64> {
    let pn = n.as_polygon()?;
    let back = polygon_isoperimetrix(&pn.anti);
    Ok(crate::plane::hausdorff(pn.ball.polygon(), back.polygon(), &NormSpec::Euclidean))
}
