//! Seeded random inputs and parallel trial execution.
//!
//! Trial `k` of a run with master seed `s` draws from the ChaCha stream
//! `(s, k)`, so results do not depend on scheduling or thread count.

use std::f64::consts::TAU;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::plane::{ConvexPolygon, Point2, SymmetricPolygon};
use crate::triangle::Triangle;

/// Env var capping the number of worker threads.
pub const THREADS_ENV: &str = "MINKPLANE_THREADS";

pub fn trial_rng(master: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(trial);
    rng
}

fn pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let default = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
        let threads = std::env::var(THREADS_ENV)
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
            .filter(|&n| n > 0)
            .unwrap_or(default);
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool")
    })
}

/// Runs `f(trial, rng)` for `trials` trials in parallel, in trial order.
pub fn par_trials<T: Send>(master: u64, trials: usize, f: impl Fn(usize, &mut ChaCha8Rng) -> T + Sync) -> Vec<T> {
    pool().install(|| {
        (0..trials)
            .into_par_iter()
            .map(|k| f(k, &mut trial_rng(master, k as u64)))
            .collect()
    })
}

/// Unit-scale random symmetric polygon with `2k` vertices: radii in
/// `[0.5, 1.5]` at jittered angles over a half turn.
pub fn random_symmetric_polygon(rng: &mut impl Rng, k: usize) -> SymmetricPolygon {
    let k = k.max(2);
    loop {
        let offset = rng.gen_range(0.0..TAU);
        let pts: Vec<Point2> = (0..k)
            .map(|i| {
                let th = offset + std::f64::consts::PI * (i as f64 + rng.gen_range(0.1..0.9)) / k as f64;
                Point2::from_angle(th) * rng.gen_range(0.5..1.5)
            })
            .collect();
        if let Ok(p) = SymmetricPolygon::from_points(&pts) {
            if p.len() >= 4 {
                return p;
            }
        }
    }
}

/// Random convex polygon: hull of points on a random ellipse-ish curve,
/// translated by up to `spread`.
pub fn random_convex_polygon(rng: &mut impl Rng, max_vertices: usize, spread: f64) -> ConvexPolygon {
    let m = max_vertices.max(3);
    loop {
        let n = rng.gen_range(3..=m);
        let a = rng.gen_range(0.3..2.0);
        let b = rng.gen_range(0.3..2.0);
        let rot = rng.gen_range(0.0..TAU);
        let c = Point2::new(rng.gen_range(-spread..=spread), rng.gen_range(-spread..=spread));
        let pts: Vec<Point2> = (0..n)
            .map(|_| {
                let th = rng.gen_range(0.0..TAU);
                let r = rng.gen_range(0.6..1.0);
                let p = Point2::new(a * r * th.cos(), b * r * th.sin());
                let (s, co) = rot.sin_cos();
                c + Point2::new(co * p.x1 - s * p.x2, s * p.x1 + co * p.x2)
            })
            .collect();
        if let Ok(p) = ConvexPolygon::hull(&pts) {
            if p.area() > 1e-3 {
                return p;
            }
        }
    }
}

pub fn random_triangle(rng: &mut impl Rng, spread: f64) -> Triangle {
    loop {
        let mut p = || Point2::new(rng.gen_range(-spread..spread), rng.gen_range(-spread..spread));
        let (a, b, c) = (p(), p(), p());
        if let Ok(t) = Triangle::new(a, b, c) {
            if t.area() > 0.05 * spread * spread {
                return t;
            }
        }
    }
}

pub fn random_direction(rng: &mut impl Rng) -> Point2 {
    Point2::from_angle(rng.gen_range(0.0..TAU))
}
