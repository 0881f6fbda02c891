//! Radon curves: construction from a quadrant arc, detection, radonization
//! and the normality asymmetry of non-Radon norms.

use crate::error::{Error, Result};
use crate::norms::{Metric, NormSpec};
use crate::plane::{halfplane_vertices, symp, HalfPlane, Point2, SymmetricPolygon, EXACT_TOL};
use crate::sampling::{par_trials, random_direction};

/// Defect below which a norm counts as Radon.
pub const RADON_TOL: f64 = 1e-6;

/// Tolerance for analytic norms, which are judged through their polygonization.
pub const RADON_TOL_POLYGONIZED: f64 = 1e-3;

/// Boundary directions sampled for the asymmetry measure.
pub const ASYMMETRY_DIRECTIONS: usize = 720;

/// A convex arc from `a` to `b` inside the parallelogram `o, a, a+b, b`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadrantArc {
    pub a: Point2,
    pub b: Point2,
    pub interior: Vec<Point2>,
}

impl QuadrantArc {
    /// Validates `[a,b] = 1`, containment in the parallelogram and convex position.
    pub fn new(a: Point2, b: Point2, interior: Vec<Point2>) -> Result<Self> {
        let arc = Self { a, b, interior };
        if (symp(a, b) - 1.0).abs() > EXACT_TOL {
            return Err(Error::Invalid(format!("arc endpoints need [a,b] = 1, got {}", symp(a, b))));
        }
        arc.check_shape(1.0)?;
        Ok(arc)
    }

    /// The straight segment from `a` to `b`.
    pub fn straight(a: Point2, b: Point2) -> Result<Self> {
        Self::new(a, b, Vec::new())
    }

    /// Quarter of the unit ℓp circle from `(1,0)` to `(0,1)` with `segments` pieces.
    pub fn lp_quarter(p: f64, segments: usize) -> Result<Self> {
        let m = segments.max(1);
        let interior = (1..m)
            .map(|i| {
                let th = std::f64::consts::FRAC_PI_2 * i as f64 / m as f64;
                let (s, c) = th.sin_cos();
                Point2::new(c.powf(2.0 / p), s.powf(2.0 / p))
            })
            .collect();
        Self::new(Point2::new(1.0, 0.0), Point2::new(0.0, 1.0), interior)
    }

    pub fn points(&self) -> Vec<Point2> {
        let mut v = Vec::with_capacity(self.interior.len() + 2);
        v.push(self.a);
        v.extend(&self.interior);
        v.push(self.b);
        v
    }

    fn check_shape(&self, scale: f64) -> Result<()> {
        let det = symp(self.a, self.b);
        if det <= 0.0 {
            return Err(Error::Invalid("arc endpoints must be positively oriented".into()));
        }
        let tol = EXACT_TOL * scale.max(1.0);
        for &p in &self.interior {
            let s = symp(p, self.b) / det;
            let t = symp(self.a, p) / det;
            if s < -tol || t < -tol || s > 1.0 + tol || t > 1.0 + tol {
                return Err(Error::Invalid(format!("arc point {p} leaves the parallelogram")));
            }
        }
        let pts = self.points();
        for w in pts.windows(3) {
            if symp(w[1] - w[0], w[2] - w[1]) < -tol * scale {
                return Err(Error::Invalid("arc is not in convex position".into()));
            }
        }
        if pts.windows(2).any(|w| symp(w[0], w[1]) <= 0.0) {
            return Err(Error::Invalid("arc does not turn counterclockwise around the origin".into()));
        }
        Ok(())
    }
}

/// Completes a quadrant arc to the unit circle of a normalized Radon norm.
pub fn radon_construct(arc: &QuadrantArc) -> Result<SymmetricPolygon> {
    complete(arc, 1.0)
}

/// Radon completion with the area form scaled so that `[a,b]` equals one:
/// the second-quadrant piece is bounded by `[w,x] <= [a,b]`.
fn complete(arc: &QuadrantArc, level: f64) -> Result<SymmetricPolygon> {
    let w = arc.points();
    let mut hps: Vec<HalfPlane> = w.iter().map(|&p| HalfPlane::new(p.rot90(), level)).collect();
    hps.push(HalfPlane::new(-arc.a.rot90(), 0.0));
    hps.push(HalfPlane::new(-arc.b.rot90(), 0.0));
    let q2 = halfplane_vertices(&hps)?;
    let mut pts = w.clone();
    pts.extend(q2);
    let ball = SymmetricPolygon::from_points(&pts)?;
    let scale = w.iter().fold(0.0_f64, |m, p| m.max(p.euclid()));
    for &p in &w {
        if (ball.gauge(p) - 1.0).abs() > 1e-9 * scale.max(1.0) {
            return Err(Error::Invalid(format!("arc point {p} is not on the completed circle")));
        }
    }
    Ok(ball)
}

/// `(min, max)` of `‖x‖_Q / ‖x‖_P` over `x ≠ 0`.
pub fn gauge_ratio_range(p: &SymmetricPolygon, q: &SymmetricPolygon) -> (f64, f64) {
    let hi = p.vertices().iter().map(|&v| q.gauge(v)).fold(f64::NEG_INFINITY, f64::max);
    let inv = q.vertices().iter().map(|&v| p.gauge(v)).fold(f64::NEG_INFINITY, f64::max);
    (1.0 / inv, hi)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RadonReport {
    pub is_radon: bool,
    /// Best factor with `B ≈ λI`.
    pub lambda: f64,
    /// `max |log(‖x‖_B / ‖x‖_{λI})|`.
    pub relative_defect: f64,
    pub asymmetry_eps: f64,
}

fn polygon_view(n: &NormSpec) -> NormSpec {
    n.polygonized()
}

/// Proportionality of `B` and `I`: returns `(λ, defect)`.
pub fn proportionality(n: &NormSpec) -> (f64, f64) {
    let pn = polygon_view(n);
    let pn = pn.as_polygon().expect("polygonized");
    let (lo, hi) = gauge_ratio_range(&pn.ball, &pn.anti);
    ((lo * hi).sqrt(), 0.5 * (hi / lo).ln())
}

pub fn is_radon(n: &NormSpec) -> RadonReport {
    let (lambda, relative_defect) = proportionality(n);
    let tol = if n.is_polygon() { RADON_TOL } else { RADON_TOL_POLYGONIZED };
    RadonReport {
        is_radon: relative_defect <= tol,
        lambda,
        relative_defect,
        asymmetry_eps: asymmetry_eps(n),
    }
}

fn unit(n: &NormSpec, d: Point2) -> Point2 {
    d / n.gauge(d)
}

/// Gruber's ε: the largest, over unit `x` and unit `y` with `x ⊣ y`, of the
/// distance from `x` to the nearest unit `z` with `y ⊣ z`.
pub fn asymmetry_eps(n: &NormSpec) -> f64 {
    let pn = polygon_view(n);
    let ball = &pn.as_polygon().expect("polygonized").ball;
    let mut xs: Vec<Point2> = (0..ASYMMETRY_DIRECTIONS)
        .map(|k| Point2::from_angle(std::f64::consts::TAU * k as f64 / ASYMMETRY_DIRECTIONS as f64))
        .collect();
    xs.extend(ball.vertices());
    let worst = par_trials(0, xs.len(), |k, _| {
        let x = unit(&pn, xs[k]);
        let cone = pn.normal_cone(x).expect("nonzero");
        let mut ys = vec![cone.dir_lo(), cone.dir_hi()];
        if !cone.is_singleton() {
            for i in 1..8 {
                let t = i as f64 / 8.0;
                ys.push(cone.dir_lo().lerp(cone.dir_hi(), t));
            }
        }
        ys.into_iter()
            .map(|y| {
                let y = unit(&pn, y);
                let cy = pn.normal_cone(y).expect("nonzero");
                let arc = if cy.is_singleton() {
                    vec![ball.radial_point(cy.dir_lo())]
                } else {
                    ball.arc(cy.dir_lo(), cy.dir_hi())
                };
                let mut best = f64::INFINITY;
                for sign in [1.0, -1.0] {
                    if arc.len() == 1 {
                        best = best.min(pn.gauge(x - arc[0] * sign));
                        continue;
                    }
                    for s in arc.windows(2) {
                        best = best.min(pn.segment_distance(Metric::Norm, x, s[0] * sign, s[1] * sign));
                    }
                }
                best
            })
            .fold(0.0, f64::max)
    });
    worst.into_iter().fold(0.0, f64::max)
}

/// Chooses the normal pair for [`radonize`]: `a` at polar angle zero and `b`
/// the first direction of its normal cone, if that pair is mutually normal;
/// otherwise the vertex pair maximizing `[a,b]`.
pub fn radon_pair(n: &NormSpec) -> Result<(Point2, Point2)> {
    let pn = n.as_polygon()?;
    let a = unit(n, Point2::new(1.0, 0.0));
    let b = unit(n, n.normal_cone(a)?.dir_lo());
    if n.is_normal(b, a)? {
        return Ok((a, b));
    }
    let v = pn.ball.vertices();
    let mut best = (f64::NEG_INFINITY, v[0], v[1]);
    for &p in v {
        for &q in v {
            let s = symp(p, q);
            if s > best.0 + 1e-12 {
                best = (s, p, q);
            }
        }
    }
    Ok((best.1, best.2))
}

/// Radon curve agreeing with `B` on the arc from `a` to `b` (and its reflection).
pub fn radonize_with(n: &NormSpec, a: Point2, b: Point2) -> Result<SymmetricPolygon> {
    let pn = n.as_polygon()?;
    let a = unit(n, a);
    let b = unit(n, b);
    if !(n.is_normal(a, b)? && n.is_normal(b, a)?) {
        return Err(Error::Invalid("radonize needs a mutually normal pair a, b".into()));
    }
    let level = symp(a, b);
    if level <= 0.0 {
        return Err(Error::Invalid("radonize needs [a,b] > 0".into()));
    }
    let pts = pn.ball.arc(a, b);
    let arc = QuadrantArc { a, b, interior: pts[1..pts.len() - 1].to_vec() };
    arc.check_shape(1.0)?;
    complete(&arc, level)
}

pub fn radonize(n: &NormSpec) -> Result<SymmetricPolygon> {
    let (a, b) = radon_pair(n)?;
    radonize_with(n, a, b)
}

/// `(μ - 1)/ε` with `μ` the ratio spread between `B` and its radonization.
pub fn stability_ratio(n: &NormSpec) -> Result<f64> {
    let pn = n.as_polygon()?;
    let eps = asymmetry_eps(n);
    if eps <= 1e-9 {
        return Err(Error::RatioUndefined);
    }
    let r = radonize(n)?;
    let (lo, hi) = gauge_ratio_range(&pn.ball, &r);
    Ok((hi / lo - 1.0) / eps)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SignTest {
    pub holds: bool,
    /// `(x, y, λ, μ)` with `x ⊣ λx + y`, `y ⊣ μy + x` and `λμ < 0`.
    pub witness: Option<(Point2, Point2, f64, f64)>,
}

/// Checks `λμ >= 0` whenever `x ⊣ λx + y` and `y ⊣ μy + x`, on random pairs.
pub fn sign_test_3prime(n: &NormSpec, trials: usize, seed: u64) -> SignTest {
    let results = par_trials(seed, trials, |_, rng| {
        let x = random_direction(rng);
        let y = random_direction(rng);
        let (Ok(l), Ok(m)) = (n.normal_coefficients(x, y), n.normal_coefficients(y, x)) else {
            return None;
        };
        for lam in [l.0, l.1] {
            for mu in [m.0, m.1] {
                if lam * mu < -1e-9 {
                    return Some((x, y, lam, mu));
                }
            }
        }
        None
    });
    let witness = results.into_iter().flatten().next();
    SignTest { holds: witness.is_none(), witness }
}

/// Counts sampled boundary pairs with `x ⊣ y` but not `y ⊣ x`.
pub fn normality_symmetry_violations(n: &NormSpec, samples: usize) -> usize {
    let per = par_trials(1, samples, |k, _| {
        let x = Point2::from_angle(std::f64::consts::TAU * (k as f64 + 0.5) / samples as f64);
        let cone = n.normal_cone(x).expect("nonzero");
        let mut ys = vec![cone.dir_lo(), cone.dir_hi()];
        if !cone.is_singleton() {
            ys.push(cone.dir_lo() + cone.dir_hi());
        }
        ys.into_iter().filter(|&y| !n.is_normal(y, x).unwrap_or(false)).count()
    });
    per.into_iter().sum()
}

/// Regular `k`-gon with circumradius one; only Radon cases are produced.
pub fn generator_regular_gon(k: usize) -> Result<SymmetricPolygon> {
    if k < 6 || k % 4 != 2 {
        return Err(Error::NotRadonGon(k));
    }
    SymmetricPolygon::regular(k, 1.0, 0.0)
}

/// Polygonized mixed ℓp–ℓq ball with `per_quadrant` vertices per quadrant.
pub fn generator_mixed(p: f64, per_quadrant: usize) -> Result<SymmetricPolygon> {
    let n = NormSpec::mixed(p)?;
    Ok(n.ball_polygon(4 * per_quadrant.max(2)))
}

/// Polygonal distance helper used by reports: Hausdorff in the Euclidean metric.
pub fn polygon_distance(p: &SymmetricPolygon, q: &SymmetricPolygon) -> f64 {
    crate::plane::hausdorff(p.polygon(), q.polygon(), &NormSpec::Euclidean)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> NormSpec {
        NormSpec::polygon(SymmetricPolygon::from_points(&[Point2::new(1.0, 1.0), Point2::new(-1.0, 1.0)]).unwrap())
    }

    fn same_vertex_set(a: &[Point2], b: &[Point2], tol: f64) -> bool {
        a.len() == b.len() && a.iter().all(|p| b.iter().any(|q| (*p - *q).max_abs() <= tol))
    }

    #[test]
    fn straight_arc_gives_mixed_l1_linf() {
        let arc = QuadrantArc::straight(Point2::new(1.0, 0.0), Point2::new(0.0, 1.0)).unwrap();
        let b = radon_construct(&arc).unwrap();
        let want = [(1.0, 0.0), (0.0, 1.0), (-1.0, 1.0), (-1.0, 0.0), (0.0, -1.0), (1.0, -1.0)].map(Point2::from);
        assert!(same_vertex_set(b.vertices(), &want, 1e-12));
        // oracle: half-plane intersection on the two endpoints
        let hps = [
            HalfPlane::new(Point2::new(0.0, 1.0), 1.0),
            HalfPlane::new(Point2::new(-1.0, 0.0), 1.0),
            HalfPlane::new(Point2::new(0.0, -1.0), 0.0),
            HalfPlane::new(Point2::new(1.0, 0.0), 0.0),
        ];
        let q2 = halfplane_vertices(&hps).unwrap();
        assert!(q2.iter().all(|&v| (b.gauge(v) - 1.0).abs() < 1e-12 || v == Point2::ORIGIN));
        let n = NormSpec::polygon(b);
        assert!(is_radon(&n).is_radon);
        assert_eq!(normality_symmetry_violations(&n, 1000), 0);
    }

    #[test]
    fn rejects_bad_arcs() {
        assert!(QuadrantArc::straight(Point2::new(2.0, 0.0), Point2::new(0.0, 1.0)).is_err());
        let bad = QuadrantArc::new(Point2::new(1.0, 0.0), Point2::new(0.0, 1.0), vec![Point2::new(0.2, 0.2)]);
        assert!(bad.is_err());
        let out = QuadrantArc::new(Point2::new(1.0, 0.0), Point2::new(0.0, 1.0), vec![Point2::new(1.2, 0.5)]);
        assert!(out.is_err());
    }

    #[test]
    fn euclidean_and_lp_arcs() {
        let arc = QuadrantArc::lp_quarter(2.0, 64).unwrap();
        let b = radon_construct(&arc).unwrap();
        for k in 0..360 {
            let x = Point2::from_angle(k as f64 * std::f64::consts::TAU / 360.0);
            assert!((b.gauge(x) - 1.0).abs() < 2e-3);
        }
        let arc = QuadrantArc::lp_quarter(4.0, 256).unwrap();
        let b = radon_construct(&arc).unwrap();
        let m = NormSpec::mixed(4.0).unwrap();
        for k in 0..360 {
            let x = Point2::from_angle(k as f64 * std::f64::consts::TAU / 360.0 + 0.01);
            let r = b.gauge(x) / m.gauge(x);
            assert!((r - 1.0).abs() < 1e-3, "{x} {r}");
        }
    }

    #[test]
    fn detection_examples() {
        let hex = NormSpec::polygon(generator_regular_gon(6).unwrap());
        let r = is_radon(&hex);
        assert!(r.is_radon && r.relative_defect < 1e-12);
        assert!((r.lambda - 3f64.sqrt() / 2.0).abs() < 1e-12);
        assert!(r.asymmetry_eps < 1e-9);

        let r = is_radon(&square());
        assert!(!r.is_radon);
        assert!((r.relative_defect - 2f64.sqrt().ln()).abs() < 1e-12);
        assert!((r.lambda - 2f64.sqrt()).abs() < 1e-12);
        assert!((r.asymmetry_eps - 1.0).abs() < 1e-9, "{}", r.asymmetry_eps);

        let m = NormSpec::mixed(4.0).unwrap();
        let (_, d) = proportionality(&m);
        assert!(d < 1e-3, "{d}");
    }

    #[test]
    fn radonize_examples() {
        let hex = NormSpec::polygon(generator_regular_gon(6).unwrap());
        let r = radonize(&hex).unwrap();
        assert!(polygon_distance(&r, &hex.as_polygon().unwrap().ball) < 1e-9);

        let r = radonize(&square()).unwrap();
        let want = [(1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (-1.0, 0.0), (-1.0, -1.0), (0.0, -1.0)].map(Point2::from);
        assert!(same_vertex_set(r.vertices(), &want, 1e-12), "{:?}", r.vertices());
        let rn = NormSpec::polygon(r.clone());
        assert!(is_radon(&rn).is_radon);
        let again = radonize(&rn).unwrap();
        assert!(polygon_distance(&again, &r) < 1e-9);
    }

    #[test]
    fn generators() {
        assert!(matches!(generator_regular_gon(8), Err(Error::NotRadonGon(8))));
        assert!(matches!(generator_regular_gon(4), Err(Error::NotRadonGon(4))));
        let d = generator_regular_gon(10).unwrap();
        assert!(is_radon(&NormSpec::polygon(d)).is_radon);
        let e = generator_mixed(2.0, 90).unwrap();
        assert!(e.vertices().iter().all(|v| (v.euclid() - 1.0).abs() < 1e-12));
    }

    #[test]
    fn stability_and_sign_tests() {
        let s = stability_ratio(&square()).unwrap();
        assert!(s.is_finite() && s > 0.0);
        let hex = NormSpec::polygon(generator_regular_gon(6).unwrap());
        assert!(matches!(stability_ratio(&hex), Err(Error::RatioUndefined)));
        assert!(sign_test_3prime(&hex, 1000, 3).holds);
        assert!(sign_test_3prime(&NormSpec::Euclidean, 1000, 3).holds);
        let sq = sign_test_3prime(&square(), 1000, 3);
        assert!(!sq.holds);
        let (x, y, l, m) = sq.witness.unwrap();
        let n = square();
        assert!(n.is_normal(x, x * l + y).unwrap() && n.is_normal(y, y * m + x).unwrap());
    }
}
