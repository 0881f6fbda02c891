//! One function per command; each returns a report and a figure.

use std::collections::BTreeMap;

use minkplane::dconvex::{antiball_dconvex_check, ball_hull_vertices, d_segment, lassak_duality_check, lassak_pair};
use minkplane::isoperimetry::{
    angular_measures, anticircle_polygon, girth_report, inequality_report, isoperimetrix_area, kepler_check, zenodorus,
};
use minkplane::norms::{antinorm_involution_defect, POLYGONIZE_N};
use minkplane::projections::{
    bisector_sample, metric_projection, nearest_point_scan, nonexpansive_scan, strip_test, strip_witness, ProjectionFace,
    ProjectionMap, StripSpec,
};
use minkplane::radon::{
    asymmetry_eps, is_radon, normality_symmetry_violations, radon_construct, radon_pair, radonize, sign_test_3prime,
    stability_ratio, QuadrantArc, RADON_TOL, RADON_TOL_POLYGONIZED,
};
use minkplane::triangle::{
    bisector_concurrency, busemann_bisector, fermat_torricelli, glogovskii_bisector, triangle_report,
    verify_ft_characterization,
};
use minkplane::{Metric, NormSpec, Point2, SymmetricPolygon};
use serde_json::{json, Value};

use crate::report::{Check, Report};
use crate::scene::{coords, point, Scene};
use crate::svg::{Figure, PALETTE};
use crate::{CliError, Command};

/// Thresholds used by the checks in reports, overridable by name.
#[derive(Clone, Debug, PartialEq)]
pub struct Tolerances {
    pub values: BTreeMap<String, f64>,
}

impl Default for Tolerances {
    fn default() -> Self {
        let values = [
            ("involution", 1e-9),
            ("identity", 1e-9),
            ("slack", 1e-9),
            ("ratio", minkplane::projections::RATIO_TOL),
            ("characterization", 1e-6),
            ("midpoint", minkplane::isoperimetry::MIDPOINT_TOL),
            ("concurrency", 1e-8),
            ("measure", 1e-9),
            ("kepler", 1e-6),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
        Self { values }
    }
}

impl Tolerances {
    pub fn apply(&mut self, overrides: &BTreeMap<String, f64>) -> Result<(), CliError> {
        for (k, &v) in overrides {
            if !(v.is_finite() && v >= 0.0) {
                return Err(CliError::Validation(format!("tolerance {k} must be a nonnegative number")));
            }
            match self.values.get_mut(k) {
                Some(slot) => *slot = v,
                None => {
                    let known: Vec<&str> = self.values.keys().map(String::as_str).collect();
                    return Err(CliError::Validation(format!("unknown tolerance {k:?}; known: {}", known.join(", "))));
                }
            }
        }
        Ok(())
    }

    pub fn get(&self, k: &str) -> f64 {
        self.values[k]
    }
}

pub struct Context {
    pub scene: Scene,
    pub norm: NormSpec,
    pub seed: u64,
    pub tol: Tolerances,
}

impl Context {
    pub fn new(scene: Scene, seed: u64, tol: Tolerances) -> Result<Self, CliError> {
        let norm = scene.norm.build()?;
        Ok(Self { scene, norm, seed, tol })
    }

    fn report(&self, command: Command) -> Report {
        let mut inputs = serde_json::to_value(&self.scene).expect("scene serializes");
        inputs["tolerances"] = json!(self.tol.values);
        Report::new(&command.name(), self.seed, inputs)
    }

    fn budget(&self) -> usize {
        self.scene.options.budget.unwrap_or(POLYGONIZE_N)
    }

    fn trials(&self, default: usize) -> usize {
        self.scene.options.trials.unwrap_or(default)
    }

    /// The norm itself for polygons, its polygonization otherwise.
    fn polygon_norm(&self) -> NormSpec {
        self.norm.polygonized()
    }

    fn ball_and_anticircle(&self, caption: &str) -> Figure {
        let mut f = Figure::new(caption);
        let b = self.norm.ball_polygon(self.budget());
        let i = self.norm.isoperimetrix(self.budget());
        f.polygon(b.vertices(), PALETTE[0], "unit circle");
        f.polygon(i.vertices(), PALETTE[1], "anticircle");
        f.dot(Point2::ORIGIN, PALETTE[5]);
        f
    }
}

fn pts(v: &[Point2]) -> Vec<[f64; 2]> {
    v.iter().map(|&p| coords(p)).collect()
}

pub fn dispatch(command: Command, ctx: &Context) -> Result<(Report, Figure), CliError> {
    let mut r = ctx.report(command);
    r.put("norm", ctx.norm.label());
    let fig = match command {
        Command::Antinorm => antinorm(ctx, &mut r)?,
        Command::Isoperimetrix => isoperimetrix(ctx, &mut r)?,
        Command::RadonCheck => radon_check(ctx, &mut r)?,
        Command::RadonConstruct => radon_construct_cmd(ctx, &mut r)?,
        Command::Radonize => radonize_cmd(ctx, &mut r)?,
        Command::Triangle => triangle(ctx, &mut r)?,
        Command::Bisectors => bisectors(ctx, &mut r)?,
        Command::Fermat => fermat(ctx, &mut r)?,
        Command::IsoReport => iso_report(ctx, &mut r)?,
        Command::Zenodorus => zenodorus_cmd(ctx, &mut r)?,
        Command::Girth => girth(ctx, &mut r)?,
        Command::Angles => angles(ctx, &mut r)?,
        Command::Projections => projections(ctx, &mut r)?,
        Command::Convexity => convexity(ctx, &mut r)?,
        Command::Proptest => unreachable!("handled by the suite runner"),
    };
    Ok((r, fig))
}

fn involution_check(ctx: &Context, r: &mut Report) -> Result<(), CliError> {
    if ctx.norm.is_polygon() {
        let d = antinorm_involution_defect(&ctx.norm)?;
        let diam = ctx.norm.ball_polygon(0).diameter();
        r.check(Check::at_most("involution_defect", d, ctx.tol.get("involution") * diam));
    }
    Ok(())
}

fn antinorm(ctx: &Context, r: &mut Report) -> Result<Figure, CliError> {
    let points = match ctx.scene.optional_points()? {
        Some((_, p)) => p,
        None => vec![Point2::new(1.0, 0.0), Point2::new(0.0, 1.0), Point2::new(1.0, 1.0)],
    };
    let evals: Vec<Value> = points
        .iter()
        .map(|&x| json!({"point": coords(x), "gauge": ctx.norm.gauge(x), "antinorm": ctx.norm.antinorm(x)}))
        .collect();
    r.put("evaluations", evals);
    r.put("isoperimetrix_area", isoperimetrix_area(&ctx.norm));
    involution_check(ctx, r)?;
    let mut f = ctx.ball_and_anticircle(&format!("unit circle and anticircle, {}", ctx.norm.label()));
    for &x in &points {
        f.dot(x, PALETTE[2]);
    }
    Ok(f)
}

fn isoperimetrix(ctx: &Context, r: &mut Report) -> Result<Figure, CliError> {
    let b = ctx.norm.ball_polygon(ctx.budget());
    let i = ctx.norm.isoperimetrix(ctx.budget());
    r.put("exact", ctx.norm.is_polygon());
    r.put("ball_vertices", pts(b.vertices()));
    r.put("isoperimetrix_vertices", pts(i.vertices()));
    r.put("ball_area", b.area());
    r.put("isoperimetrix_area", isoperimetrix_area(&ctx.norm));
    r.put("isoperimetrix_polygon_area", i.area());
    involution_check(ctx, r)?;
    Ok(ctx.ball_and_anticircle(&format!("isoperimetrix of {}", ctx.norm.label())))
}

fn radon_check(ctx: &Context, r: &mut Report) -> Result<Figure, CliError> {
    let rep = is_radon(&ctx.norm);
    let trials = ctx.trials(1000);
    let sign = sign_test_3prime(&ctx.norm, trials, ctx.seed);
    let violations = normality_symmetry_violations(&ctx.norm, trials);
    r.put("is_radon", rep.is_radon);
    r.put("lambda", rep.lambda);
    r.put("relative_defect", rep.relative_defect);
    r.put("asymmetry_eps", rep.asymmetry_eps);
    r.put("sign_test_holds", sign.holds);
    r.put(
        "sign_test_witness",
        sign.witness.map(|(x, y, l, m)| json!({"x": coords(x), "y": coords(y), "lambda": l, "mu": m})),
    );
    r.put("normality_symmetry_violations", violations);
    let tol = if ctx.norm.is_polygon() { RADON_TOL } else { RADON_TOL_POLYGONIZED };
    r.check(Check::at_most("radon_relative_defect", rep.relative_defect, tol));
    let mut f = ctx.ball_and_anticircle(&format!("B and I, {}", ctx.norm.label()));
    if rep.is_radon {
        let scaled: Vec<Point2> = ctx.norm.isoperimetrix(ctx.budget()).vertices().iter().map(|&v| v * rep.lambda).collect();
        f.polyline(&closed(&scaled), PALETTE[2], true);
    }
    Ok(f)
}

fn closed(v: &[Point2]) -> Vec<Point2> {
    let mut out = v.to_vec();
    if let Some(&first) = v.first() {
        out.push(first);
    }
    out
}

/// The boundary of `ball` split at `±a`, `±b` into four colored arcs.
fn quadrant_figure(ball: &SymmetricPolygon, a: Point2, b: Point2, caption: &str) -> Figure {
    let mut f = Figure::new(caption);
    let ends = [a, b, -a, -b, a];
    for k in 0..4 {
        let arc = ball.arc(ends[k], ends[k + 1]);
        f.polyline(&arc, PALETTE[k % 4], false);
    }
    f.dot(Point2::ORIGIN, PALETTE[5]);
    f
}

fn radon_construct_cmd(ctx: &Context, r: &mut Report) -> Result<Figure, CliError> {
    let arc = match &ctx.scene.options.arc {
        Some(a) => a.build()?,
        None => QuadrantArc::straight(Point2::new(1.0, 0.0), Point2::new(0.0, 1.0))?,
    };
    let ball = radon_construct(&arc)?;
    let n = NormSpec::polygon(ball.clone());
    let samples = ctx.trials(1000);
    let violations = normality_symmetry_violations(&n, samples);
    let rep = is_radon(&n);
    r.put("arc", pts(&arc.points()));
    r.put("vertices", pts(ball.vertices()));
    r.put("is_radon", rep.is_radon);
    r.put("normality_symmetry_samples", samples);
    r.check(Check::at_most("normality_symmetry_violations", violations as f64, 0.0));
    r.check(Check::at_most("radon_relative_defect", rep.relative_defect, RADON_TOL));
    Ok(quadrant_figure(&ball, arc.a, arc.b, "Radon curve from a quarter arc"))
}

fn radonize_cmd(ctx: &Context, r: &mut Report) -> Result<Figure, CliError> {
    let n = ctx.polygon_norm();
    let (a, b) = radon_pair(&n)?;
    let ball = radonize(&n)?;
    let eps = asymmetry_eps(&n);
    let ratio = match stability_ratio(&n) {
        Ok(v) => Some(v),
        Err(minkplane::Error::RatioUndefined) => None,
        Err(e) => return Err(e.into()),
    };
    let radonized = NormSpec::polygon(ball.clone());
    let rep = is_radon(&radonized);
    r.put("pair", [coords(a), coords(b)]);
    r.put("vertices", pts(ball.vertices()));
    r.put("asymmetry_eps", eps);
    r.put("stability_ratio", ratio);
    r.check(Check::at_most("radonized_relative_defect", rep.relative_defect, RADON_TOL));
    let mut f = quadrant_figure(&ball, a, b, &format!("radonization of {}", ctx.norm.label()));
    f.polygon(n.ball_polygon(0).vertices(), PALETTE[5], "original unit circle");
    Ok(f)
}

fn ball_at(n: &NormSpec, metric: Metric, c: Point2, r: f64, budget: usize) -> Vec<Point2> {
    let unit = match metric {
        Metric::Norm => n.ball_polygon(budget),
        Metric::Antinorm => n.isoperimetrix(budget),
    };
    unit.vertices().iter().map(|&v| c + v * r).collect()
}

fn triangle(ctx: &Context, r: &mut Report) -> Result<Figure, CliError> {
    let (name, t) = ctx.scene.triangle()?;
    let rep = triangle_report(&ctx.norm, &t)?;
    r.put("body", &name);
    r.put("vertices", pts(&t.a));
    r.put("beta", rep.beta);
    r.put("eta", rep.eta);
    r.put("eta_anti", rep.eta_anti);
    r.put("anti_sides", rep.anti_sides);
    r.put("area", rep.area);
    r.put("centroid", coords(rep.centroid));
    r.put("incenter", coords(rep.incenter));
    r.put("inradius", rep.inradius);
    r.put("anti_incenter", coords(rep.anti_incenter));
    r.put("anti_inradius", rep.anti_inradius);
    r.put("is_anti_equilateral", rep.is_anti_equilateral);
    r.put("min_width", rep.min_width);
    r.put("is_reduced", rep.is_reduced);
    let worst = (0..3).map(|i| (rep.area - 0.5 * rep.beta[i] * rep.eta_anti[i]).abs()).fold(0.0, f64::max);
    r.check(Check::at_most("area_identity_defect", worst, ctx.tol.get("identity") * rep.area));
    r.check(Check::at_least("reduced_crosscheck", rep.reduced_crosscheck as u8 as f64, 1.0));
    let mut f = Figure::new(format!("triangle {name}, {}", ctx.norm.label()));
    f.polygon(&t.a, PALETTE[0], "triangle");
    f.polygon(&ball_at(&ctx.norm, Metric::Norm, rep.incenter, rep.inradius, ctx.budget()), PALETTE[1], "incircle");
    f.polygon(
        &ball_at(&ctx.norm, Metric::Antinorm, rep.anti_incenter, rep.anti_inradius, ctx.budget()),
        PALETTE[2],
        "inscribed anticircle",
    );
    f.dot(rep.centroid, PALETTE[5]);
    Ok(f)
}

fn bisectors(ctx: &Context, r: &mut Report) -> Result<Figure, CliError> {
    let n = &ctx.norm;
    let mut f = Figure::new(format!("bisectors, {}", n.label()));
    let mut any = false;
    if let Ok((name, t)) = ctx.scene.triangle() {
        any = true;
        let (bp, bs) = bisector_concurrency(&t, |a, b| busemann_bisector(n, a, b))?;
        let (gp, gs) = bisector_concurrency(&t, |a, b| glogovskii_bisector(n, a, b, Metric::Norm))?;
        let (ap, as_) = bisector_concurrency(&t, |a, b| glogovskii_bisector(n, a, b, Metric::Antinorm))?;
        let (anti_c, _) = minkplane::triangle::inscribed_ball(n, Metric::Antinorm, &t)?;
        let (norm_c, _) = minkplane::triangle::inscribed_ball(n, Metric::Norm, &t)?;
        let scale = t.scale();
        r.put("body", &name);
        r.put("busemann_point", coords(bp));
        r.put("glogovskii_norm_point", coords(gp));
        r.put("glogovskii_antinorm_point", coords(ap));
        r.put("anti_incenter", coords(anti_c));
        r.put("incenter", coords(norm_c));
        let tol = ctx.tol.get("concurrency") * scale;
        r.check(Check::at_most("busemann_spread", bs, tol));
        r.check(Check::at_most("glogovskii_norm_spread", gs, tol));
        r.check(Check::at_most("glogovskii_antinorm_spread", as_, tol));
        r.check(Check::at_most("busemann_to_anti_incenter", (bp - anti_c).euclid(), tol));
        r.check(Check::at_most("glogovskii_to_incenter", (gp - norm_c).euclid(), tol));
        f.polygon(&t.a, PALETTE[0], "triangle");
        for &v in &t.a {
            f.polyline(&[v, bp], PALETTE[1], false);
            f.polyline(&[v, gp], PALETTE[2], true);
        }
        f.dot(bp, PALETTE[1]).dot(gp, PALETTE[2]);
    }
    if let Some((name, p)) = ctx.scene.optional_points()? {
        if p.len() < 2 {
            return Err(CliError::Validation(format!("point set {name} needs two points")));
        }
        any = true;
        let (a, b) = (p[0], p[1]);
        let samples = bisector_sample(n, a, b, ctx.trials(200))?;
        let strip = StripSpec::anticircle(n, a, b)?;
        let circle = StripSpec::circle(n, a, b)?;
        let radon = is_radon(n).is_radon;
        r.put("pair", [coords(a), coords(b)]);
        r.put("bisector_samples", samples.len());
        r.put("anticircle_strip_direction", coords(strip.direction));
        r.put("circle_strip_direction", coords(circle.direction));
        r.put("circle_strip_holds", strip_test(&samples, &circle));
        r.put("circle_strip_witness", strip_witness(&samples, &circle).map(coords));
        r.put("is_radon", radon);
        r.check(Check::at_least("anticircle_strip_holds", strip_test(&samples, &strip) as u8 as f64, 1.0));
        f.polyline(&samples, PALETTE[3], false);
        let reach = samples.iter().map(|x| (*x - a).euclid()).fold((b - a).euclid(), f64::max);
        let d = strip.direction / strip.direction.euclid() * reach;
        f.polyline(&[a - d, a + d], PALETTE[1], true);
        f.polyline(&[b - d, b + d], PALETTE[1], true);
        f.dot(a, PALETTE[0]).dot(b, PALETTE[0]);
    }
    if !any {
        return Err(CliError::Validation("bisectors needs a triangle or a point pair".into()));
    }
    Ok(f)
}

fn fermat(ctx: &Context, r: &mut Report) -> Result<Figure, CliError> {
    let (name, t) = ctx.scene.triangle()?;
    let (x, v) = fermat_torricelli(&ctx.norm, &t)?;
    let ch = verify_ft_characterization(&ctx.norm, &t)?;
    r.put("body", &name);
    r.put("point", coords(x));
    r.put("value", v);
    r.put("trivial", ch.trivial);
    r.check(Check::at_most("characterization_defect", ch.defect, ctx.tol.get("characterization")));
    let mut f = Figure::new(format!("Fermat-Torricelli point, {}", ctx.norm.label()));
    f.polygon(&t.a, PALETTE[0], "triangle");
    f.polygon(&ball_at(&ctx.norm, Metric::Norm, x, 1.0, ctx.budget()), PALETTE[2], "unit circle at the point");
    for &a in &t.a {
        f.polyline(&[x, a], PALETTE[1], true);
    }
    f.dot(x, PALETTE[1]);
    Ok(f)
}

fn iso_report(ctx: &Context, r: &mut Report) -> Result<Figure, CliError> {
    let (name, c) = ctx.scene.polygon()?;
    let rep = inequality_report(&ctx.norm, &c)?;
    r.put("body", &name);
    r.put("perimeter", rep.perimeter);
    r.put("area", rep.area);
    r.put("iota", rep.iota);
    r.put("four_area_i", 4.0 * rep.isoperimetrix_area);
    r.put("rho", rep.rho);
    r.put("sigma", rep.sigma);
    r.put("inscribed_center", coords(rep.inscribed.center));
    r.put("enclosing_center", coords(rep.enclosing.center));
    r.put("circumscribed", pts(rep.circumscribed.vertices()));
    let slacks: BTreeMap<&str, f64> = rep.slacks.named().into_iter().collect();
    r.put("slacks", slacks);
    r.put("slack_scale", rep.scale);
    let tol = ctx.tol.get("slack") * rep.scale;
    for (k, v) in rep.slacks.named() {
        r.check(Check::at_least(k, v, -tol));
    }
    r.check(Check::at_least("isoperimetric", rep.iota - 4.0 * rep.isoperimetrix_area, -ctx.tol.get("slack") * rep.iota));
    let budget = ctx.budget();
    let mut f = Figure::new(format!("body {name} with anticircles, {}", ctx.norm.label()));
    f.polygon(c.vertices(), PALETTE[0], "body");
    f.polygon(anticircle_polygon(&ctx.norm, rep.inscribed.center, rep.rho, budget).vertices(), PALETTE[1], "inscribed anticircle");
    f.polygon(anticircle_polygon(&ctx.norm, rep.enclosing.center, rep.sigma, budget).vertices(), PALETTE[2], "enclosing anticircle");
    f.polyline(&closed(rep.circumscribed.vertices()), PALETTE[3], true);
    Ok(f)
}

fn zenodorus_cmd(ctx: &Context, r: &mut Report) -> Result<Figure, CliError> {
    let k = ctx.scene.options.k.unwrap_or(4);
    let z = zenodorus(&ctx.norm, k)?;
    r.put("k", k);
    r.put("vertices", pts(z.polygon.vertices()));
    r.put("area", z.area);
    r.put("normals", &z.normals);
    r.put("sweeps", z.sweeps);
    r.check(Check::at_most("midpoint_deviation", z.midpoint_deviation, ctx.tol.get("midpoint")));
    let mut f = Figure::new(format!("Zenodorus {k}-gon, {}", ctx.norm.label()));
    f.polygon(z.polygon.vertices(), PALETTE[0], "polygon");
    f.polygon(ctx.norm.isoperimetrix(ctx.budget()).vertices(), PALETTE[1], "anticircle");
    for (a, b) in z.polygon.edges() {
        f.dot(a.lerp(b, 0.5), PALETTE[2]);
    }
    Ok(f)
}

fn girth(ctx: &Context, r: &mut Report) -> Result<Figure, CliError> {
    let n = ctx.polygon_norm();
    let g = girth_report(&n)?;
    r.put("polygonized", !ctx.norm.is_polygon());
    r.put("p_b_of_b", g.p_b_of_b);
    r.put("p_i_of_i", g.p_i_of_i);
    r.put("p_b_of_i", g.p_b_of_i);
    r.put("p_i_of_b", g.p_i_of_b);
    r.put("area_b", g.area_b);
    r.put("area_i", g.area_i);
    r.check(Check::at_most(
        "self_perimeter_gap",
        (g.p_b_of_b - g.p_i_of_i).abs(),
        ctx.tol.get("identity") * g.p_b_of_b,
    ));
    Ok(ctx.ball_and_anticircle(&format!("girth, {}", ctx.norm.label())))
}

fn angles(ctx: &Context, r: &mut Report) -> Result<Figure, CliError> {
    let n = ctx.polygon_norm();
    let from = ctx.scene.options.from.map(point).unwrap_or(Point2::new(1.0, 0.0));
    let to = ctx.scene.options.to.map(point).unwrap_or(Point2::new(0.0, 1.0));
    let k = ctx.scene.options.k.unwrap_or(8);
    let m = angular_measures(&n, from, to)?;
    let spread = kepler_check(&n, k)?;
    let area_i = n.as_polygon()?.anti.area();
    r.put("polygonized", !ctx.norm.is_polygon());
    r.put("from", coords(from));
    r.put("to", coords(to));
    r.put("mu_l", m.mu_l);
    r.put("mu_a", m.mu_a);
    r.put("mu_anti_length", m.mu_anti_length);
    r.put("kepler_k", k);
    r.check(Check::at_most("mu_a_vs_anti_length", (m.mu_a - m.mu_anti_length).abs(), ctx.tol.get("measure")));
    r.check(Check::at_most("kepler_spread", spread, ctx.tol.get("kepler") * area_i / k as f64));
    let ball = n.as_polygon()?.ball.clone();
    let mut f = Figure::new(format!("arc and measures, {}", ctx.norm.label()));
    f.polygon(ball.vertices(), PALETTE[5], "unit circle");
    let arc = ball.arc(from, to);
    f.polyline(&arc, PALETTE[1], false);
    if let (Some(&s), Some(&e)) = (arc.first(), arc.last()) {
        f.polyline(&[s, Point2::ORIGIN, e], PALETTE[0], true);
    }
    Ok(f)
}

fn projections(ctx: &Context, r: &mut Report) -> Result<Figure, CliError> {
    let n = &ctx.norm;
    let trials = ctx.trials(10_000);
    let ratio = 1.0 + ctx.tol.get("ratio");
    let anti = nonexpansive_scan(n, &ProjectionMap::Radial, Metric::Antinorm, trials, ctx.seed);
    let norm = nonexpansive_scan(n, &ProjectionMap::Radial, Metric::Norm, trials, ctx.seed);
    let nearest = nearest_point_scan(n, trials.min(10_000), ctx.seed);
    let scan = |s: &minkplane::projections::ScanResult| {
        json!({"max_ratio": s.max_ratio, "witness": [coords(s.witness.0), coords(s.witness.1)]})
    };
    r.put("trials", trials);
    r.put("is_radon", is_radon(n).is_radon);
    r.put("radial_antinorm", scan(&anti));
    r.put("radial_norm", scan(&norm));
    r.check(Check::at_most("radial_antinorm_ratio", anti.max_ratio, ratio));
    r.check(Check::at_most("nearest_point_gauge", nearest, ratio));
    let mut f = ctx.ball_and_anticircle(&format!("projections, {}", n.label()));
    let (v, w) = norm.witness;
    f.polyline(&[v, w], PALETTE[3], true);
    f.polyline(&[minkplane::projections::radial_projection(n, v), minkplane::projections::radial_projection(n, w)], PALETTE[3], false);
    if let Some((name, s)) = ctx.scene.optional_polygon()? {
        let metric = nonexpansive_scan(n, &ProjectionMap::Metric(s.clone()), Metric::Antinorm, trials, ctx.seed);
        r.put("body", &name);
        r.put("metric_antinorm", scan(&metric));
        r.check(Check::at_most("metric_antinorm_ratio", metric.max_ratio, ratio));
        f.polygon(s.vertices(), PALETTE[2], "body");
        if let Some((_, points)) = ctx.scene.optional_points()? {
            let projected: Vec<Value> = points
                .iter()
                .map(|&x| {
                    let m = metric_projection(n, &s, x);
                    f.polyline(&[x, m.point], PALETTE[4], false);
                    let face = match m.face {
                        ProjectionFace::Point(p) => json!({"point": coords(p)}),
                        ProjectionFace::Segment(a, b) => json!({"segment": [coords(a), coords(b)]}),
                    };
                    json!({"x": coords(x), "point": coords(m.point), "distance": m.distance, "face": face})
                })
                .collect();
            r.put("metric_projections", projected);
        }
    }
    Ok(f)
}

fn convexity(ctx: &Context, r: &mut Report) -> Result<Figure, CliError> {
    let n = &ctx.norm;
    let (a, b) = match ctx.scene.optional_points()? {
        Some((_, p)) if p.len() >= 2 => (p[0], p[1]),
        Some((name, _)) => return Err(CliError::Validation(format!("point set {name} needs two points"))),
        None => (Point2::new(0.0, 0.0), Point2::new(2.0, 0.0)),
    };
    let region = d_segment(n, a, b)?;
    r.put("pair", [coords(a), coords(b)]);
    r.put("d_segment_is_segment", region.is_segment());
    r.put("d_segment_area", region.area());
    r.put("d_segment_pieces", region.pieces.iter().map(|p| pts(p.vertices())).collect::<Vec<_>>());
    let mut f = Figure::new(format!("d-segment and antinorm ball hull, {}", n.label()));
    for p in &region.pieces {
        f.polygon(p.vertices(), PALETTE[0], "d-segment piece");
    }
    f.polyline(&[a, b], PALETTE[0], false);
    let antiball_trials = ctx.trials(1000);
    let dconvex = antiball_dconvex_check(n, antiball_trials, ctx.seed)?;
    r.check(Check::at_least("antiball_dconvex", dconvex as u8 as f64, 1.0));
    if let NormSpec::Polygon(pn) = n {
        let pair = lassak_pair(n, a, b)?;
        let hull = ball_hull_vertices(&pn.anti, &[a, b]);
        r.put("ball_hull", pts(&hull));
        r.put("ball_hull_area", pair.hull_area);
        r.put("symmetric_difference", pair.symmetric_difference);
        r.check(Check::at_least("lassak_pair_agrees", pair.agrees as u8 as f64, 1.0));
        let pairs = ctx.scene.options.k.unwrap_or(20);
        r.check(Check::at_least("lassak_random_pairs", lassak_duality_check(n, pairs, ctx.seed)? as u8 as f64, 1.0));
        if hull.len() >= 3 {
            f.polygon(&hull, PALETTE[1], "ball hull in the antinorm");
        }
    }
    f.dot(a, PALETTE[2]).dot(b, PALETTE[2]);
    Ok(f)
}
