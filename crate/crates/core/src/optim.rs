//! One- and two-dimensional minimizers for convex or unimodal objectives.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for a minimizer of a unimodal `f` on `[a, b]`.
pub fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut iters = 0;
    while (b - a).abs() > tol && iters < 200 {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        iters += 1;
    }
    let (fa, fb) = (f(a), f(b));
    [(a, fa), (b, fb), (c, fc), (d, fd)]
        .into_iter()
        .fold((c, fc), |best, cur| if cur.1 < best.1 { cur } else { best })
}

pub fn golden_max(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let (x, v) = golden_min(|t| -f(t), a, b, tol);
    (x, -v)
}

/// Grid scan of `samples + 1` points followed by golden refinement around the
/// best sample. Suited to functions that are unimodal near their minimum.
pub fn scan_min(f: impl Fn(f64) -> f64, a: f64, b: f64, samples: usize, tol: f64) -> (f64, f64) {
    let n = samples.max(2);
    let h = (b - a) / n as f64;
    let (mut bi, mut bv) = (0, f64::INFINITY);
    for i in 0..=n {
        let v = f(a + h * i as f64);
        if v < bv {
            bi = i;
            bv = v;
        }
    }
    let lo = a + h * bi.saturating_sub(1) as f64;
    let hi = a + h * (bi + 1).min(n) as f64;
    let (x, v) = golden_min(&f, lo, hi, tol);
    if v <= bv {
        (x, v)
    } else {
        (a + h * bi as f64, bv)
    }
}

pub fn scan_max(f: impl Fn(f64) -> f64, a: f64, b: f64, samples: usize, tol: f64) -> (f64, f64) {
    let (x, v) = scan_min(|t| -f(t), a, b, samples, tol);
    (x, -v)
}

/// Nested golden-section minimization of a jointly convex `f` over a box.
pub fn nested_golden_min(
    f: impl Fn(f64, f64) -> f64,
    (x_lo, x_hi): (f64, f64),
    (y_lo, y_hi): (f64, f64),
    tol: f64,
) -> ((f64, f64), f64) {
    let inner = |x: f64| golden_min(|y| f(x, y), y_lo, y_hi, tol);
    let (x, _) = golden_min(|x| inner(x).1, x_lo, x_hi, tol);
    let (y, v) = inner(x);
    ((x, y), v)
}
