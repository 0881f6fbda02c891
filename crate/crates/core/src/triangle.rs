//! Triangles in a Minkowski plane: heights and anti-heights, angular
//! bisectors, inscribed circles and anticircles, anti-equilateral and reduced
//! triangles, Fermat–Torricelli points.

use crate::error::{Error, Result};
use crate::lp::Lp;
use crate::norms::{Metric, NormSpec};
use crate::optim::nested_golden_min;
use crate::plane::{symp, ConvexPolygon, Point2};

/// Relative spread of antinorm side lengths tolerated for anti-equilateral.
pub const ANTI_EQUILATERAL_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Triangle {
    /// Counterclockwise vertices.
    pub a: [Point2; 3],
}

impl Triangle {
    pub fn new(a1: Point2, a2: Point2, a3: Point2) -> Result<Self> {
        if ![a1, a2, a3].iter().all(|p| p.is_finite()) {
            return Err(Error::Invalid("non-finite triangle vertex".into()));
        }
        let scale = [a1, a2, a3].iter().fold(0.0_f64, |m, p| m.max((*p - a1).max_abs()));
        let det = symp(a2 - a1, a3 - a1);
        if det.abs() <= 1e-12 * scale * scale || scale == 0.0 {
            return Err(Error::Degenerate("triangle vertices are collinear".into()));
        }
        Ok(if det > 0.0 { Self { a: [a1, a2, a3] } } else { Self { a: [a1, a3, a2] } })
    }

    pub fn vertex(&self, i: usize) -> Point2 {
        self.a[i % 3]
    }

    /// Side opposite vertex `i`, as `(start, direction)`.
    pub fn side(&self, i: usize) -> (Point2, Point2) {
        let s = self.vertex(i + 1);
        (s, self.vertex(i + 2) - s)
    }

    pub fn area(&self) -> f64 {
        0.5 * symp(self.a[1] - self.a[0], self.a[2] - self.a[0])
    }

    pub fn centroid(&self) -> Point2 {
        (self.a[0] + self.a[1] + self.a[2]) / 3.0
    }

    pub fn scale(&self) -> f64 {
        (0..3).map(|i| self.side(i).1.euclid()).fold(0.0, f64::max)
    }

    pub fn polygon(&self) -> ConvexPolygon {
        ConvexPolygon::new(self.a.to_vec()).expect("valid triangle")
    }
}

/// Norm length of side `i`.
pub fn side_length(n: &NormSpec, t: &Triangle, i: usize) -> f64 {
    n.gauge(t.side(i).1)
}

/// Antinorm length of side `i`.
pub fn anti_side_length(n: &NormSpec, t: &Triangle, i: usize) -> f64 {
    n.antinorm(t.side(i).1)
}

/// Norm distance from vertex `i` to the line of the opposite side.
pub fn height(n: &NormSpec, t: &Triangle, i: usize) -> f64 {
    let (q, d) = t.side(i);
    n.line_distance(Metric::Norm, t.vertex(i), q, d)
}

/// Antinorm distance from vertex `i` to the line of the opposite side.
pub fn anti_height(n: &NormSpec, t: &Triangle, i: usize) -> f64 {
    let (q, d) = t.side(i);
    n.line_distance(Metric::Antinorm, t.vertex(i), q, d)
}

/// `(max - min)/max` of the antinorm side lengths.
pub fn anti_side_spread(n: &NormSpec, t: &Triangle) -> f64 {
    let l: Vec<f64> = (0..3).map(|i| anti_side_length(n, t, i)).collect();
    let hi = l.iter().copied().fold(0.0, f64::max);
    let lo = l.iter().copied().fold(f64::INFINITY, f64::min);
    (hi - lo) / hi
}

pub fn is_anti_equilateral(n: &NormSpec, t: &Triangle) -> bool {
    anti_side_spread(n, t) <= ANTI_EQUILATERAL_TOL
}

/// Largest `c + r·U` inside the triangle, `U` the unit ball of `metric`.
pub fn inscribed_ball(n: &NormSpec, metric: Metric, t: &Triangle) -> Result<(Point2, f64)> {
    let mut lp = Lp::minimize(vec![0.0, 0.0, -1.0]);
    for i in 0..3 {
        let (q, d) = t.side(i);
        let nrm = d.rot270();
        lp.le(vec![nrm.x1, nrm.x2, n.support_value(metric, nrm)], nrm.dot(q));
    }
    let s = lp.solve()?;
    Ok((Point2::new(s.x[0], s.x[1]), s.x[2]))
}

/// Minimum width of a convex polygon: the smallest norm distance between two
/// parallel supporting lines. It is attained parallel to an edge.
pub fn min_width(n: &NormSpec, p: &ConvexPolygon) -> f64 {
    p.edges()
        .map(|(a, b)| {
            p.vertices()
                .iter()
                .map(|&v| n.line_distance(Metric::Norm, v, a, b - a))
                .fold(0.0, f64::max)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Width of the polygon in the norm between supporting lines with direction `d`.
pub fn width_in_direction(n: &NormSpec, p: &ConvexPolygon, d: Point2) -> f64 {
    let vals = p.vertices().iter().map(|&v| symp(v, d));
    let (lo, hi) = vals.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| (lo.min(s), hi.max(s)));
    (hi - lo) / n.antinorm(d)
}

/// A proper convex subset with the same minimum width, found by cutting a
/// small corner; `None` if no corner cut keeps the width.
pub fn reduction_witness(n: &NormSpec, t: &Triangle) -> Option<ConvexPolygon> {
    let w = min_width(n, &t.polygon());
    for i in 0..3 {
        for &s in &[1e-3, 1e-2, 5e-2] {
            let v = t.vertex(i);
            let p = v + (t.vertex(i + 1) - v) * s;
            let q = v + (t.vertex(i + 2) - v) * s;
            let Ok(cut) = ConvexPolygon::new(vec![p, t.vertex(i + 1), t.vertex(i + 2), q]) else { continue };
            if min_width(n, &cut) >= w * (1.0 - 1e-12) {
                return Some(cut);
            }
        }
    }
    None
}

/// Checks that each of `count` random proper sub-triangles has strictly
/// smaller minimum width.
pub fn subtriangles_lose_width(n: &NormSpec, t: &Triangle, count: usize, seed: u64) -> bool {
    use rand::Rng;
    let mut rng = crate::sampling::trial_rng(seed, 0);
    let w = min_width(n, &t.polygon());
    (0..count).all(|_| {
        let mut pick = |i: usize| {
            let u: f64 = rng.gen_range(0.0..0.3);
            let v: f64 = rng.gen_range(0.0..0.3);
            t.vertex(i) * (1.0 - u - v) + t.vertex(i + 1) * u + t.vertex(i + 2) * v
        };
        let (a, b, c) = (pick(0), pick(1), pick(2));
        match Triangle::new(a, b, c) {
            Ok(sub) if (sub.area() - t.area()).abs() > 1e-12 * t.area() => min_width(n, &sub.polygon()) < w * (1.0 - 1e-12),
            _ => true,
        }
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TriangleReport {
    pub beta: [f64; 3],
    pub eta: [f64; 3],
    pub eta_anti: [f64; 3],
    pub anti_sides: [f64; 3],
    pub area: f64,
    pub centroid: Point2,
    pub incenter: Point2,
    pub inradius: f64,
    pub anti_incenter: Point2,
    pub anti_inradius: f64,
    pub is_anti_equilateral: bool,
    pub min_width: f64,
    pub is_reduced: bool,
    /// Whether the direct width tests agree with the anti-equilateral criterion.
    pub reduced_crosscheck: bool,
}

pub fn triangle_report(n: &NormSpec, t: &Triangle) -> Result<TriangleReport> {
    let arr = |f: &dyn Fn(usize) -> f64| [f(0), f(1), f(2)];
    let (incenter, inradius) = inscribed_ball(n, Metric::Norm, t)?;
    let (anti_incenter, anti_inradius) = inscribed_ball(n, Metric::Antinorm, t)?;
    let anti_eq = is_anti_equilateral(n, t);
    let direct = if anti_eq {
        reduction_witness(n, t).is_none() && subtriangles_lose_width(n, t, 20, 0)
    } else {
        reduction_witness(n, t).is_none()
    };
    Ok(TriangleReport {
        beta: arr(&|i| side_length(n, t, i)),
        eta: arr(&|i| height(n, t, i)),
        eta_anti: arr(&|i| anti_height(n, t, i)),
        anti_sides: arr(&|i| anti_side_length(n, t, i)),
        area: t.area(),
        centroid: t.centroid(),
        incenter,
        inradius,
        anti_incenter,
        anti_inradius,
        is_anti_equilateral: anti_eq,
        min_width: min_width(n, &t.polygon()),
        is_reduced: anti_eq && direct,
        reduced_crosscheck: anti_eq == direct,
    })
}

fn check_angle(r1: Point2, r2: Point2) -> Result<()> {
    if r1.max_abs() == 0.0 || r2.max_abs() == 0.0 {
        return Err(Error::ZeroVector);
    }
    if symp(r1, r2).abs() <= 1e-12 * r1.euclid() * r2.euclid() {
        return Err(if r1.dot(r2) < 0.0 { Error::StraightAngle } else { Error::Dependent });
    }
    Ok(())
}

fn unit_direction(d: Point2) -> Point2 {
    d / d.euclid()
}

/// Direction from the vertex to the midpoint of the unit points on the rays.
pub fn busemann_bisector(n: &NormSpec, r1: Point2, r2: Point2) -> Result<Point2> {
    check_angle(r1, r2)?;
    Ok(unit_direction(r1 / n.gauge(r1) + r2 / n.gauge(r2)))
}

/// Direction of the locus of points inside the angle equidistant, in
/// `metric`, from the two sides.
pub fn glogovskii_bisector(n: &NormSpec, r1: Point2, r2: Point2, metric: Metric) -> Result<Point2> {
    check_angle(r1, r2)?;
    let d = metric.dual();
    Ok(unit_direction(r1 * n.dist(d, r2) + r2 * n.dist(d, r1)))
}

fn line_intersection(p: Point2, d: Point2, q: Point2, e: Point2) -> Option<Point2> {
    let det = symp(d, e);
    if det.abs() <= 1e-14 * d.euclid() * e.euclid() {
        return None;
    }
    Some(p + d * (symp(q - p, e) / det))
}

/// Pairwise intersections of the three vertex bisectors and their spread.
pub fn bisector_concurrency(
    t: &Triangle,
    bisector: impl Fn(Point2, Point2) -> Result<Point2>,
) -> Result<(Point2, f64)> {
    let dirs: Vec<Point2> = (0..3)
        .map(|i| bisector(t.vertex(i + 1) - t.vertex(i), t.vertex(i + 2) - t.vertex(i)))
        .collect::<Result<_>>()?;
    let mut pts = Vec::new();
    for i in 0..3 {
        let j = (i + 1) % 3;
        pts.push(line_intersection(t.vertex(i), dirs[i], t.vertex(j), dirs[j]).ok_or(Error::Dependent)?);
    }
    let spread = (0..3).map(|i| (pts[i] - pts[(i + 1) % 3]).euclid()).fold(0.0, f64::max);
    Ok(((pts[0] + pts[1] + pts[2]) / 3.0, spread))
}

pub fn fermat_objective(n: &NormSpec, t: &Triangle, x: Point2) -> f64 {
    t.a.iter().map(|&a| n.gauge(x - a)).sum()
}

/// A minimizer of `x ↦ Σ ‖x - a_k‖`. For polygon norms an exact LP, with the
/// lexicographically smallest point of the optimal set.
pub fn fermat_torricelli(n: &NormSpec, t: &Triangle) -> Result<(Point2, f64)> {
    let x = match n {
        NormSpec::Polygon(pn) => {
            let mut lp = Lp::minimize(vec![0.0, 0.0, 1.0, 1.0, 1.0]);
            for (k, a) in t.a.iter().enumerate() {
                for f in pn.ball.facets() {
                    let mut row = vec![f.x1, f.x2, 0.0, 0.0, 0.0];
                    row[2 + k] = -1.0;
                    lp.le(row, f.dot(*a));
                }
            }
            let s = lp.solve_lexicographic(&[0, 1], 1e-12)?;
            Point2::new(s.x[0], s.x[1])
        }
        _ => {
            let lo = Point2::new(
                t.a.iter().map(|p| p.x1).fold(f64::INFINITY, f64::min),
                t.a.iter().map(|p| p.x2).fold(f64::INFINITY, f64::min),
            );
            let hi = Point2::new(
                t.a.iter().map(|p| p.x1).fold(f64::NEG_INFINITY, f64::max),
                t.a.iter().map(|p| p.x2).fold(f64::NEG_INFINITY, f64::max),
            );
            let pad = t.scale();
            let ((x1, x2), _) = nested_golden_min(
                |x1, x2| fermat_objective(n, t, Point2::new(x1, x2)),
                (lo.x1 - pad, hi.x1 + pad),
                (lo.x2 - pad, hi.x2 + pad),
                1e-11 * pad.max(1.0),
            );
            Point2::new(x1, x2)
        }
    };
    Ok((x, fermat_objective(n, t, x)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct FtCharacterization {
    pub holds: bool,
    /// The Fermat–Torricelli point is a vertex; nothing to check.
    pub trivial: bool,
    /// Smallest relative antinorm side spread found among tangent triangles.
    pub defect: f64,
    pub point: Point2,
}

/// Intersects the rays from the Fermat–Torricelli point to the vertices with
/// the unit circle around it and looks for tangent lines at those points that
/// bound an anti-equilateral triangle. The tangent lines are parametrized by
/// norming functionals of the touching points; a zero sum of three such
/// functionals gives the triangle, and is found by a small LP.
pub fn verify_ft_characterization(n: &NormSpec, t: &Triangle) -> Result<FtCharacterization> {
    let (p, _) = fermat_torricelli(n, t)?;
    let scale = t.scale();
    if t.a.iter().any(|&a| (a - p).euclid() <= 1e-9 * scale) {
        return Ok(FtCharacterization { holds: true, trivial: true, defect: 0.0, point: p });
    }
    let mut touch = [Point2::ORIGIN; 3];
    let mut faces = [(Point2::ORIGIN, Point2::ORIGIN); 3];
    for (k, &a) in t.a.iter().enumerate() {
        let u = (a - p) / n.gauge(a - p);
        let cone = n.normal_cone(u)?;
        let functional = |d: Point2| {
            let f = d.rot90();
            f / f.dot(u)
        };
        touch[k] = p + u;
        faces[k] = (functional(cone.dir_lo()), functional(cone.dir_hi()));
    }
    // minimize |Σ f_k(α_k)|₁ over α ∈ [0,1]³; variables α0..α2, e1, e2
    let base = faces.iter().fold(Point2::ORIGIN, |s, f| s + f.0);
    let mut lp = Lp::minimize(vec![0.0, 0.0, 0.0, 1.0, 1.0]);
    for k in 0..3 {
        let mut row = vec![0.0; 5];
        row[k] = 1.0;
        lp.le(row, 1.0);
    }
    for (c, e) in [(0usize, 3usize), (1, 4)] {
        let coord = |q: Point2| if c == 0 { q.x1 } else { q.x2 };
        let slope: Vec<f64> = faces.iter().map(|f| coord(f.1 - f.0)).collect();
        let mut hi = vec![slope[0], slope[1], slope[2], 0.0, 0.0];
        hi[e] = -1.0;
        lp.le(hi, -coord(base));
        let mut lo = vec![-slope[0], -slope[1], -slope[2], 0.0, 0.0];
        lo[e] = -1.0;
        lp.le(lo, coord(base));
    }
    let alpha = lp.solve()?.x;
    let f: Vec<Point2> = (0..3).map(|k| faces[k].0.lerp(faces[k].1, alpha[k].clamp(0.0, 1.0))).collect();
    let mut v = [Point2::ORIGIN; 3];
    let mut defect = f64::INFINITY;
    let mut bounded = true;
    for i in 0..3 {
        let j = (i + 1) % 3;
        match line_intersection(touch[i], f[i].rot90(), touch[j], f[j].rot90()) {
            Some(q) => v[i] = q,
            None => bounded = false,
        }
    }
    if bounded {
        if let Ok(tri) = Triangle::new(v[0], v[1], v[2]) {
            defect = anti_side_spread(n, &tri);
        }
    }
    Ok(FtCharacterization { holds: defect <= 1e-6, trivial: false, defect, point: p })
}

/// Spread (max - min) of the signed sums of norm distances to the side lines.
pub fn viviani_defect(n: &NormSpec, t: &Triangle, points: &[Point2]) -> Result<f64> {
    let spread = anti_side_spread(n, t);
    if spread > ANTI_EQUILATERAL_TOL {
        return Err(Error::NotAntiEquilateral { spread });
    }
    let sums = points.iter().map(|&x| {
        (0..3)
            .map(|i| {
                let (q, d) = t.side(i);
                symp(d, x - q) / n.antinorm(d)
            })
            .sum::<f64>()
    });
    let (lo, hi) = sums.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| (lo.min(s), hi.max(s)));
    Ok(if points.is_empty() { 0.0 } else { hi - lo })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::SymmetricPolygon;

    fn square() -> NormSpec {
        NormSpec::polygon(SymmetricPolygon::from_points(&[Point2::new(1.0, 1.0), Point2::new(-1.0, 1.0)]).unwrap())
    }

    fn diamond() -> NormSpec {
        NormSpec::polygon(SymmetricPolygon::from_points(&[Point2::new(1.0, 0.0), Point2::new(0.0, 1.0)]).unwrap())
    }

    fn tri(p: [(f64, f64); 3]) -> Triangle {
        Triangle::new(p[0].into(), p[1].into(), p[2].into()).unwrap()
    }

    fn grid_incenter(n: &NormSpec, metric: Metric, t: &Triangle, steps: usize) -> f64 {
        // inradius at c = min over sides of the metric distance to the side line
        let poly = t.polygon();
        let lo = t.a.iter().fold(Point2::new(f64::INFINITY, f64::INFINITY), |m, p| Point2::new(m.x1.min(p.x1), m.x2.min(p.x2)));
        let hi = t.a.iter().fold(Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY), |m, p| Point2::new(m.x1.max(p.x1), m.x2.max(p.x2)));
        let mut best: f64 = 0.0;
        for i in 0..=steps {
            for j in 0..=steps {
                let c = Point2::new(lo.x1 + (hi.x1 - lo.x1) * i as f64 / steps as f64, lo.x2 + (hi.x2 - lo.x2) * j as f64 / steps as f64);
                if !poly.contains(c, 0.0) {
                    continue;
                }
                let r = (0..3)
                    .map(|k| {
                        let (q, d) = t.side(k);
                        n.line_distance(metric, c, q, d)
                    })
                    .fold(f64::INFINITY, f64::min);
                best = best.max(r);
            }
        }
        best
    }

    #[test]
    fn incenter_examples() {
        let t = tri([(0.0, 0.0), (4.0, 0.0), (0.0, 4.0)]);
        let (c, r) = inscribed_ball(&square(), Metric::Norm, &t).unwrap();
        assert!((c - Point2::new(1.0, 1.0)).euclid() < 1e-12 && (r - 1.0).abs() < 1e-12);
        assert!((grid_incenter(&square(), Metric::Norm, &t, 400) - r).abs() < 1e-9);
        let h = NormSpec::polygon(SymmetricPolygon::regular(6, 1.0, 0.3).unwrap());
        let t = tri([(0.1, -0.2), (3.0, 0.4), (1.1, 2.5)]);
        for metric in [Metric::Norm, Metric::Antinorm] {
            let (_, r) = inscribed_ball(&h, metric, &t).unwrap();
            let g = grid_incenter(&h, metric, &t, 600);
            assert!(g <= r + 1e-12 && r - g < 1e-2, "{r} {g}");
        }
    }

    #[test]
    fn area_identity_examples() {
        let t = tri([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]);
        let n = square();
        assert_eq!(side_length(&n, &t, 0), 1.0);
        assert_eq!(anti_height(&n, &t, 0), 1.0);
        assert_eq!(t.area(), 0.5);
        for i in 0..3 {
            assert!((t.area() - 0.5 * side_length(&n, &t, i) * anti_height(&n, &t, i)).abs() < 1e-15);
        }
    }

    #[test]
    fn anti_equilateral_example() {
        let n = square();
        let t = tri([(0.0, 0.0), (1.0, 0.0), (0.5, 0.5)]);
        let r = triangle_report(&n, &t).unwrap();
        assert_eq!(r.anti_sides, [1.0, 1.0, 1.0]);
        assert!(r.is_anti_equilateral && r.is_reduced && r.reduced_crosscheck);
        assert!((r.centroid - Point2::new(0.5, 1.0 / 6.0)).euclid() < 1e-15);
        assert!((r.incenter - r.centroid).euclid() < 1e-6, "{}", r.incenter);

        let t = tri([(0.0, 0.0), (2.0, 0.0), (0.3, 1.1)]);
        let r = triangle_report(&n, &t).unwrap();
        assert!(!r.is_anti_equilateral && !r.is_reduced && r.reduced_crosscheck);
    }

    #[test]
    fn min_width_matches_direction_scan() {
        let n = NormSpec::polygon(SymmetricPolygon::regular(6, 1.0, 0.2).unwrap());
        let l3 = NormSpec::lp(3.0).unwrap();
        let t = tri([(0.0, 0.0), (2.0, 0.3), (0.7, 1.9)]);
        for n in [&n, &l3, &square()] {
            let w = min_width(n, &t.polygon());
            let (_, scan) = crate::optim::scan_min(
                |th| width_in_direction(n, &t.polygon(), Point2::from_angle(th)),
                0.0,
                std::f64::consts::PI,
                20_000,
                1e-13,
            );
            assert!((w - scan).abs() < 1e-9 * w, "{w} {scan}");
        }
    }

    #[test]
    fn bisector_examples() {
        let n = square();
        let e1 = Point2::new(1.0, 0.0);
        let e2 = Point2::new(0.0, 1.0);
        let d = Point2::new(1.0, 1.0);
        let close = |a: Point2, b: Point2| (unit_direction(a) - unit_direction(b)).euclid() < 1e-15;
        assert!(close(busemann_bisector(&n, e1, e2).unwrap(), d));
        assert!(close(busemann_bisector(&n, e1, d).unwrap(), Point2::new(2.0, 1.0)));
        assert!(close(busemann_bisector(&NormSpec::Euclidean, e1, e2).unwrap(), d));
        assert!(close(busemann_bisector(&n, e2 * 3.0, e1).unwrap(), d));
        assert!(close(glogovskii_bisector(&n, e1, e2, Metric::Norm).unwrap(), d));
        assert!(close(glogovskii_bisector(&n, e1, d, Metric::Antinorm).unwrap(), Point2::new(2.0, 1.0)));
        for m in [Metric::Norm, Metric::Antinorm] {
            assert!(close(glogovskii_bisector(&NormSpec::Euclidean, e1, e2, m).unwrap(), d));
        }
        assert!(matches!(busemann_bisector(&n, e1, -e1), Err(Error::StraightAngle)));
        assert!(matches!(glogovskii_bisector(&n, e1, -e1 * 2.0, Metric::Norm), Err(Error::StraightAngle)));
    }

    #[test]
    fn glogovskii_direction_is_equidistant() {
        let n = NormSpec::polygon(SymmetricPolygon::regular(8, 1.0, 0.1).unwrap());
        let r1 = Point2::new(1.0, 0.2);
        let r2 = Point2::new(-0.3, 1.0);
        for m in [Metric::Norm, Metric::Antinorm] {
            let g = glogovskii_bisector(&n, r1, r2, m).unwrap();
            let p = g * 2.7;
            let d1 = n.line_distance(m, p, Point2::ORIGIN, r1);
            let d2 = n.line_distance(m, p, Point2::ORIGIN, r2);
            assert!((d1 - d2).abs() < 1e-12);
        }
    }

    #[test]
    fn bisectors_meet_at_incenters() {
        let n = NormSpec::polygon(SymmetricPolygon::regular(8, 1.0, 0.1).unwrap());
        let t = tri([(0.0, 0.0), (3.0, 0.5), (1.0, 2.0)]);
        let (p, spread) = bisector_concurrency(&t, |a, b| busemann_bisector(&n, a, b)).unwrap();
        assert!(spread < 1e-12);
        let (c, _) = inscribed_ball(&n, Metric::Antinorm, &t).unwrap();
        assert!((p - c).euclid() < 1e-9, "{p} {c}");
        let (p, spread) = bisector_concurrency(&t, |a, b| glogovskii_bisector(&n, a, b, Metric::Norm)).unwrap();
        assert!(spread < 1e-12);
        let (c, _) = inscribed_ball(&n, Metric::Norm, &t).unwrap();
        assert!((p - c).euclid() < 1e-9);
    }

    fn grid_fermat(n: &NormSpec, t: &Triangle) -> f64 {
        let pad = t.scale();
        let lo = t.a.iter().fold(Point2::new(f64::INFINITY, f64::INFINITY), |m, p| Point2::new(m.x1.min(p.x1), m.x2.min(p.x2)));
        let mut center = lo;
        let mut half = pad * 1.5;
        center = center + Point2::new(pad * 0.5, pad * 0.5);
        let mut best = f64::INFINITY;
        for _ in 0..6 {
            let steps = 200;
            let mut arg = center;
            for i in 0..=steps {
                for j in 0..=steps {
                    let x = center + Point2::new(-half + 2.0 * half * i as f64 / steps as f64, -half + 2.0 * half * j as f64 / steps as f64);
                    let v = fermat_objective(n, t, x);
                    if v < best {
                        best = v;
                        arg = x;
                    }
                }
            }
            center = arg;
            half *= 0.05;
        }
        best
    }

    #[test]
    fn fermat_examples() {
        let t = tri([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]);
        let (p, v) = fermat_torricelli(&diamond(), &t).unwrap();
        assert_eq!((p, v), (Point2::ORIGIN, 2.0));
        let f = verify_ft_characterization(&diamond(), &t).unwrap();
        assert!(f.trivial && f.holds);

        let t = tri([(0.0, 0.0), (4.0, 0.0), (0.0, 4.0)]);
        let (_, v) = fermat_torricelli(&square(), &t).unwrap();
        assert!((v - grid_fermat(&square(), &t)).abs() < 1e-6);

        let s3 = 3f64.sqrt();
        let t = tri([(0.0, 0.0), (2.0, 0.0), (1.0, s3)]);
        let (p, v) = fermat_torricelli(&NormSpec::Euclidean, &t).unwrap();
        assert!((p - t.centroid()).euclid() < 1e-6);
        assert!((v - 2.0 * s3).abs() < 1e-12);
        let f = verify_ft_characterization(&NormSpec::Euclidean, &tri([(0.0, 0.0), (3.0, 0.2), (1.0, 1.7)])).unwrap();
        assert!(f.holds && !f.trivial, "{}", f.defect);
    }

    #[test]
    fn ft_characterization_on_hexagon() {
        let h = NormSpec::polygon(SymmetricPolygon::regular(6, 1.0, 0.0).unwrap());
        let t = tri([(0.0, 0.0), (3.0, 0.4), (1.2, 2.6)]);
        let f = verify_ft_characterization(&h, &t).unwrap();
        assert!(!f.trivial);
        assert!(f.holds, "{}", f.defect);
    }

    #[test]
    fn viviani_examples() {
        let n = square();
        let t = tri([(0.0, 0.0), (1.0, 0.0), (0.5, 0.5)]);
        let pts: Vec<Point2> = (0..100).map(|k| Point2::new(0.2 + 0.006 * k as f64, 0.05 + 0.002 * k as f64)).collect();
        assert!(viviani_defect(&n, &t, &pts).unwrap() < 1e-12);
        let outside = [Point2::new(3.0, -2.0), Point2::new(-1.0, 5.0)];
        assert!(viviani_defect(&n, &t, &outside).unwrap() < 1e-12);
        let bad = tri([(0.0, 0.0), (2.0, 0.0), (0.3, 1.1)]);
        assert!(matches!(viviani_defect(&n, &bad, &pts), Err(Error::NotAntiEquilateral { .. })));
    }
}
