//! Seeded property suite behind `minkplane proptest`.

use minkplane::dconvex::d_segment;
use minkplane::isoperimetry::{inequality_report, isoperimetrix_area};
use minkplane::norms::antinorm_involution_defect;
use minkplane::projections::radial_projection;
use minkplane::radon::{normality_symmetry_violations, radon_construct, QuadrantArc};
use minkplane::sampling::{par_trials, random_convex_polygon, random_direction, random_symmetric_polygon, random_triangle};
use minkplane::triangle::{fermat_objective, fermat_torricelli, triangle_report};
use minkplane::{symp, NormSpec, Point2, Result};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::report::{Check, Report};
use crate::CliError;

const DEFAULT_TRIALS: usize = 64;

type Outcome = Result<Option<String>>;

struct Invariant {
    name: &'static str,
    check: fn(&mut ChaCha8Rng) -> Outcome,
}

const INVARIANTS: &[Invariant] = &[
    Invariant { name: "gauge_axioms", check: gauge_axioms },
    Invariant { name: "antinorm_is_support", check: antinorm_is_support },
    Invariant { name: "symplectic_bound", check: symplectic_bound },
    Invariant { name: "antinorm_involution", check: involution },
    Invariant { name: "radon_construct_symmetric", check: radon_symmetric },
    Invariant { name: "triangle_area_identity", check: area_identity },
    Invariant { name: "isoperimetric_inequality", check: isoperimetric },
    Invariant { name: "inequality_slacks", check: slacks },
    Invariant { name: "radial_antinorm_contraction", check: radial_contraction },
    Invariant { name: "fermat_beats_vertices", check: fermat_vertices },
    Invariant { name: "d_segment_contains_segment", check: d_segment_contains },
];

pub fn names() -> Vec<&'static str> {
    INVARIANTS.iter().map(|i| i.name).collect()
}

fn norm(rng: &mut ChaCha8Rng) -> NormSpec {
    let k = rng.gen_range(2..=12);
    NormSpec::polygon(random_symmetric_polygon(rng, k))
}

fn point(rng: &mut ChaCha8Rng) -> Point2 {
    random_direction(rng) * rng.gen_range(0.1..3.0)
}

fn fail(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    Ok((!ok).then(msg))
}

fn gauge_axioms(rng: &mut ChaCha8Rng) -> Outcome {
    let n = norm(rng);
    let (x, y, t) = (point(rng), point(rng), rng.gen_range(-3.0..3.0));
    let scale = n.gauge(x) + n.gauge(y);
    let tri = n.gauge(x + y) <= scale * (1.0 + 1e-12);
    let hom = (n.gauge(x * t) - t.abs() * n.gauge(x)).abs() <= 1e-12 * scale;
    fail(tri && hom, || format!("{}: x={x}, y={y}, t={t}", n.label()))
}

fn antinorm_is_support(rng: &mut ChaCha8Rng) -> Outcome {
    let n = norm(rng);
    let x = point(rng);
    let ball = n.ball_polygon(0);
    let support = ball.vertices().iter().map(|&v| symp(v, x)).fold(f64::NEG_INFINITY, f64::max);
    let a = n.antinorm(x);
    fail((a - support).abs() <= 1e-9 * a.max(1.0), || format!("{}: x={x}, antinorm {a}, support {support}", n.label()))
}

fn symplectic_bound(rng: &mut ChaCha8Rng) -> Outcome {
    let n = norm(rng);
    let (x, y) = (point(rng), point(rng));
    let bound = n.gauge(x) * n.antinorm(y);
    fail(symp(x, y).abs() <= bound * (1.0 + 1e-12), || format!("{}: x={x}, y={y}", n.label()))
}

fn involution(rng: &mut ChaCha8Rng) -> Outcome {
    let n = norm(rng);
    let d = antinorm_involution_defect(&n)?;
    let diam = n.ball_polygon(0).diameter();
    fail(d <= 1e-9 * diam, || format!("{}: defect {d}", n.label()))
}

fn radon_symmetric(rng: &mut ChaCha8Rng) -> Outcome {
    let a = random_direction(rng) * rng.gen_range(0.5..2.0);
    let b = a.rot90() * rng.gen_range(0.5..2.0) + a * rng.gen_range(-0.3..0.3);
    let b = b / symp(a, b);
    let arc = QuadrantArc::new(a, b, vec![(a + b) * rng.gen_range(0.55..0.95)])?;
    let n = NormSpec::polygon(radon_construct(&arc)?);
    let v = normality_symmetry_violations(&n, 200);
    fail(v == 0, || format!("arc a={a}, b={b}: {v} violations"))
}

fn area_identity(rng: &mut ChaCha8Rng) -> Outcome {
    let n = norm(rng);
    let t = random_triangle(rng, 3.0);
    let r = triangle_report(&n, &t)?;
    let worst = (0..3).map(|i| (r.area - 0.5 * r.beta[i] * r.eta_anti[i]).abs()).fold(0.0, f64::max);
    fail(worst <= 1e-9 * r.area, || format!("{}: defect {worst}", n.label()))
}

fn isoperimetric(rng: &mut ChaCha8Rng) -> Outcome {
    let n = norm(rng);
    let c = random_convex_polygon(rng, 12, 3.0);
    let r = inequality_report(&n, &c)?;
    let bound = 4.0 * isoperimetrix_area(&n);
    fail(r.iota >= bound * (1.0 - 1e-9), || format!("{}: iota {} < {bound}", n.label(), r.iota))
}

fn slacks(rng: &mut ChaCha8Rng) -> Outcome {
    let n = norm(rng);
    let c = random_convex_polygon(rng, 12, 3.0);
    let r = inequality_report(&n, &c)?;
    let worst = r.slacks.named().into_iter().min_by(|a, b| a.1.total_cmp(&b.1)).expect("eight slacks");
    fail(r.all_hold(1e-9), || format!("{}: {} = {}", n.label(), worst.0, worst.1))
}

fn radial_contraction(rng: &mut ChaCha8Rng) -> Outcome {
    let n = norm(rng);
    let (x, y) = (point(rng), point(rng));
    let d = n.antinorm(x - y);
    let p = n.antinorm(radial_projection(&n, x) - radial_projection(&n, y));
    fail(p <= d * (1.0 + 1e-9) + 1e-15, || format!("{}: x={x}, y={y}, ratio {}", n.label(), p / d))
}

fn fermat_vertices(rng: &mut ChaCha8Rng) -> Outcome {
    let n = norm(rng);
    let t = random_triangle(rng, 3.0);
    let (_, v) = fermat_torricelli(&n, &t)?;
    let best = t.a.iter().map(|&a| fermat_objective(&n, &t, a)).fold(f64::INFINITY, f64::min);
    fail(v <= best * (1.0 + 1e-9), || format!("{}: value {v} above vertex value {best}", n.label()))
}

fn d_segment_contains(rng: &mut ChaCha8Rng) -> Outcome {
    let n = norm(rng);
    let (a, b) = (point(rng), point(rng));
    let region = d_segment(&n, a, b)?;
    let scale = (b - a).euclid().max(1.0);
    let ok = (0..=8).all(|i| region.contains(a.lerp(b, i as f64 / 8.0), 1e-9 * scale));
    fail(ok, || format!("{}: a={a}, b={b}", n.label()))
}

/// Runs `suite` (`all` or one invariant name); returns the report and the
/// number of failed invariants. The table goes to stderr.
pub fn run(suite: &str, seed: u64, trials: Option<usize>) -> std::result::Result<(Report, usize), CliError> {
    let selected: Vec<&Invariant> = match suite {
        "all" => INVARIANTS.iter().collect(),
        name => match INVARIANTS.iter().find(|i| i.name == name) {
            Some(i) => vec![i],
            None => {
                return Err(CliError::Validation(format!("unknown suite {name:?}; known: all, {}", names().join(", "))));
            }
        },
    };
    let trials = trials.unwrap_or(DEFAULT_TRIALS);
    if trials == 0 {
        return Err(CliError::Validation("trials must be positive".into()));
    }
    let mut report = Report::new("proptest", seed, json!({"suite": suite, "trials": trials}));
    let mut failed = 0;
    let mut table = Vec::new();
    eprintln!("{:<32} {:>7} {:>7}  result", "invariant", "trials", "failed");
    for (idx, inv) in selected.into_iter().enumerate() {
        // each invariant gets its own master seed so that suites compose
        let master = seed.wrapping_add((idx as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let outcomes = par_trials(master, trials, |_, rng| (inv.check)(rng));
        let failures: Vec<String> = outcomes
            .into_iter()
            .enumerate()
            .filter_map(|(k, o)| match o {
                Ok(None) => None,
                Ok(Some(msg)) => Some(format!("trial {k}: {msg}")),
                Err(e) => Some(format!("trial {k}: error: {e}")),
            })
            .collect();
        let pass = failures.is_empty();
        if !pass {
            failed += 1;
        }
        eprintln!("{:<32} {:>7} {:>7}  {}", inv.name, trials, failures.len(), if pass { "PASS" } else { "FAIL" });
        table.push(json!({
            "invariant": inv.name,
            "master_seed": master,
            "trials": trials,
            "failed": failures.len(),
            "pass": pass,
            "first_failure": failures.first(),
        }));
        report.check(Check::at_most(inv.name, failures.len() as f64, 0.0));
    }
    report.put("table", table);
    Ok((report, failed))
}
