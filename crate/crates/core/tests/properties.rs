use minkplane::dconvex::{d_member, d_segment};
use minkplane::isoperimetry::{inequality_report, isoperimetrix_area, perimeter};
use minkplane::norms::antinorm_involution_defect;
use minkplane::projections::{metric_projection, radial_projection};
use minkplane::sampling::{random_convex_polygon, random_symmetric_polygon, random_triangle, trial_rng};
use minkplane::triangle::{anti_height, fermat_objective, fermat_torricelli, side_length};
use minkplane::{symp, ConvexPolygon, Metric, NormSpec, Point2};
use proptest::prelude::*;

fn norm(seed: u64) -> NormSpec {
    let mut rng = trial_rng(seed, 0);
    let k = 2 + (seed % 20) as usize;
    NormSpec::polygon(random_symmetric_polygon(&mut rng, k))
}

fn any_norm(seed: u64) -> NormSpec {
    match seed % 4 {
        0 => NormSpec::lp(1.1 + (seed % 97) as f64 / 20.0).unwrap(),
        1 => NormSpec::euclidean(),
        _ => norm(seed),
    }
}

fn point() -> impl Strategy<Value = Point2> {
    (-10.0..10.0f64, -10.0..10.0f64).prop_map(|(a, b)| Point2::new(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gauge_is_a_norm(seed in any::<u64>(), x in point(), y in point(), t in -5.0..5.0f64) {
        let n = any_norm(seed);
        let (gx, gy) = (n.gauge(x), n.gauge(y));
        prop_assert!((n.gauge(x * t) - t.abs() * gx).abs() <= 1e-12 * (1.0 + t.abs() * gx));
        prop_assert!(n.gauge(x + y) <= gx + gy + 1e-12 * (gx + gy));
        prop_assert!((n.gauge(-x) - gx).abs() <= 1e-12 * gx.max(1.0));
    }

    #[test]
    fn antinorm_is_support_of_the_ball(seed in any::<u64>(), x in point()) {
        let n = norm(seed);
        let ball = n.ball_polygon(0);
        let brute = ball.vertices().iter().map(|&v| symp(x, v)).fold(f64::NEG_INFINITY, f64::max);
        prop_assert!((n.antinorm(x) - brute).abs() <= 1e-12 * brute.abs().max(1.0));
    }

    #[test]
    fn symplectic_bound(seed in any::<u64>(), x in point(), y in point()) {
        let n = any_norm(seed);
        prop_assert!(symp(x, y).abs() <= n.gauge(x) * n.antinorm(y) * (1.0 + 1e-9) + 1e-12);
    }

    #[test]
    fn isoperimetrix_of_isoperimetrix(seed in any::<u64>()) {
        let n = norm(seed);
        let d = n.ball_polygon(0).diameter();
        prop_assert!(antinorm_involution_defect(&n).unwrap() <= 1e-9 * d);
    }

    #[test]
    fn normality_is_reversed_by_the_antinorm(seed in any::<u64>(), th in 0.0..std::f64::consts::TAU, s in 0.0..=1.0f64) {
        let n = norm(seed);
        let anti = NormSpec::polygon(n.isoperimetrix(0));
        let x = Point2::from_angle(th);
        let cone = n.normal_cone(x).unwrap();
        let y = cone.dir_lo().lerp(cone.dir_hi(), s);
        prop_assert!(n.is_normal(x, y).unwrap());
        prop_assert!(anti.is_normal(y, x).unwrap());
    }

    #[test]
    fn triangle_area_identity(seed in any::<u64>()) {
        let n = any_norm(seed);
        let t = random_triangle(&mut trial_rng(seed, 1), 4.0);
        for i in 0..3 {
            let half = 0.5 * side_length(&n, &t, i) * anti_height(&n, &t, i);
            prop_assert!((half - t.area()).abs() <= 1e-9 * t.area());
        }
    }

    #[test]
    fn isoperimetric_inequality(seed in any::<u64>()) {
        let n = any_norm(seed);
        let c = random_convex_polygon(&mut trial_rng(seed, 2), 10, 5.0);
        let p = perimeter(&n, &c);
        prop_assert!(p * p >= 4.0 * isoperimetrix_area(&n) * c.area() * (1.0 - 1e-9));
    }

    #[test]
    fn inequality_slacks_hold(seed in any::<u64>()) {
        let n = norm(seed);
        let c = random_convex_polygon(&mut trial_rng(seed, 3), 10, 2.0);
        let r = inequality_report(&n, &c).unwrap();
        prop_assert!(r.all_hold(1e-9), "{:?}", r.slacks);
        prop_assert!(r.rho <= r.sigma);
    }

    #[test]
    fn radial_projection_lands_in_the_ball(seed in any::<u64>(), x in point()) {
        let n = any_norm(seed);
        let r = radial_projection(&n, x);
        prop_assert!(n.gauge(r) <= 1.0 + 1e-12);
        prop_assert!((radial_projection(&n, r) - r).max_abs() <= 1e-12);
        prop_assert!(symp(x, r).abs() <= 1e-9 * x.euclid().max(1.0));
    }

    #[test]
    fn radial_projection_contracts_the_antinorm(seed in any::<u64>(), x in point(), y in point()) {
        let n = norm(seed);
        let d = n.antinorm(x - y);
        let e = n.antinorm(radial_projection(&n, x) - radial_projection(&n, y));
        prop_assert!(e <= d * (1.0 + 1e-9) + 1e-12);
    }

    #[test]
    fn metric_projection_is_nearest(seed in any::<u64>(), x in point()) {
        let n = any_norm(seed);
        let s = random_convex_polygon(&mut trial_rng(seed, 4), 8, 2.0);
        let m = metric_projection(&n, &s, x);
        prop_assert!(s.contains(m.point, 1e-9));
        prop_assert!((n.gauge(x - m.point) - m.distance).abs() <= 1e-9 * m.distance.max(1.0));
        for &v in s.vertices() {
            prop_assert!(m.distance <= n.gauge(x - v) + 1e-12);
        }
    }

    #[test]
    fn d_segment_contains_the_segment(seed in any::<u64>(), a in point(), b in point(), t in 0.0..=1.0f64) {
        prop_assume!((a - b).euclid() > 1e-3);
        let n = norm(seed);
        let region = d_segment(&n, a, b).unwrap();
        let x = a.lerp(b, t);
        prop_assert!(region.contains(x, 1e-9) || region.is_segment());
        prop_assert!(d_member(&n, a, b, x));
        for v in region.vertices() {
            prop_assert!(d_member(&n, a, b, v));
        }
    }

    #[test]
    fn fermat_point_is_no_worse_than_the_vertices(seed in any::<u64>()) {
        let n = norm(seed);
        let t = random_triangle(&mut trial_rng(seed, 5), 3.0);
        let (x, v) = fermat_torricelli(&n, &t).unwrap();
        prop_assert!((fermat_objective(&n, &t, x) - v).abs() <= 1e-12 * v);
        for &a in &t.a {
            prop_assert!(v <= fermat_objective(&n, &t, a) + 1e-9);
        }
    }

    #[test]
    fn polygon_is_invariant_under_vertex_rotation(seed in any::<u64>(), shift in 0usize..16) {
        let c = random_convex_polygon(&mut trial_rng(seed, 6), 12, 3.0);
        let mut v = c.vertices().to_vec();
        let k = shift % v.len();
        v.rotate_left(k);
        let d = ConvexPolygon::new(v).unwrap();
        prop_assert!((d.area() - c.area()).abs() <= 1e-12 * c.area());
        prop_assert_eq!(d.len(), c.len());
    }

    #[test]
    fn dist_metrics_agree_with_gauges(seed in any::<u64>(), x in point()) {
        let n = any_norm(seed);
        prop_assert_eq!(n.dist(Metric::Norm, x), n.gauge(x));
        prop_assert_eq!(n.dist(Metric::Antinorm, x), n.antinorm(x));
    }
}
