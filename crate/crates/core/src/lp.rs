//! Small dense linear programs `min c·x  s.t.  A x <= b` with free `x`.
//!
//! The problems in this crate have a handful of variables and up to a few
//! thousand constraints, so the solver works on the dual
//!
//! ```text
//! max -b·y   s.t.  Aᵀ y = -c,  y >= 0
//! ```
//!
//! whose tableau has one row per primal variable. Two-phase simplex with
//! Dantzig pricing and a switch to Bland's rule after a run of degenerate
//! pivots. The primal solution is read off the simplex multipliers.

use crate::error::{Error, Result};

const PIVOT_TOL: f64 = 1e-11;
const OPT_TOL: f64 = 1e-10;
const MAX_ITERATIONS: usize = 100_000;
const DEGENERATE_RUN: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub value: f64,
}

#[derive(Clone, Debug, Default)]
pub struct Lp {
    c: Vec<f64>,
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
}

impl Lp {
    /// Minimize `c·x`.
    pub fn minimize(c: Vec<f64>) -> Self {
        Self { c, rows: Vec::new(), rhs: Vec::new() }
    }

    pub fn vars(&self) -> usize {
        self.c.len()
    }

    /// Adds `a·x <= b`. All-zero rows are checked for consistency and dropped.
    pub fn le(&mut self, a: Vec<f64>, b: f64) -> &mut Self {
        assert_eq!(a.len(), self.c.len(), "constraint width");
        self.rows.push(a);
        self.rhs.push(b);
        self
    }

    pub fn ge(&mut self, a: Vec<f64>, b: f64) -> &mut Self {
        self.le(a.into_iter().map(|v| -v).collect(), -b)
    }

    pub fn solve(&self) -> Result<LpSolution> {
        let x = solve_dual(&self.c, &self.rows, &self.rhs)?;
        let value = dot(&self.c, &x);
        Ok(LpSolution { x, value })
    }

    /// Solves, then among optimal points minimizes `x[k]` for each `k` in
    /// `order` in turn. Each stage pins the previous optimum exactly; if that
    /// is numerically infeasible the pin is relaxed by relative `tol`.
    pub fn solve_lexicographic(&self, order: &[usize], tol: f64) -> Result<LpSolution> {
        let first = self.solve()?;
        let mut lp = self.clone();
        let mut last = first.x.clone();
        let mut pin = (self.c.clone(), first.value);
        for &k in order {
            let mut e = vec![0.0; self.vars()];
            e[k] = 1.0;
            let mut sol = None;
            for slack in [0.0, tol] {
                let mut trial = lp.clone();
                trial.le(pin.0.clone(), pin.1 + slack * pin.1.abs().max(1.0));
                trial.c = e.clone();
                if let Ok(s) = trial.solve() {
                    lp = trial;
                    sol = Some(s);
                    break;
                }
            }
            let Some(s) = sol else { break };
            last = s.x.clone();
            pin = (e, s.x[k]);
        }
        Ok(LpSolution { value: dot(&self.c, &last), x: last })
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

struct Tableau {
    /// `n` constraint rows, each `cols + 1` wide with the right-hand side last.
    t: Vec<Vec<f64>>,
    obj: Vec<f64>,
    basis: Vec<usize>,
    cols: usize,
    /// Columns at or beyond this index may never enter the basis.
    enter_limit: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, e: usize) {
        let w = self.cols + 1;
        let p = self.t[r][e];
        for j in 0..w {
            self.t[r][j] /= p;
        }
        let pivot_row = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[e];
            if f != 0.0 {
                for j in 0..w {
                    row[j] -= f * pivot_row[j];
                }
                row[e] = 0.0;
            }
        }
        let f = self.obj[e];
        if f != 0.0 {
            for j in 0..w {
                self.obj[j] -= f * pivot_row[j];
            }
            self.obj[e] = 0.0;
        }
        self.basis[r] = e;
    }

    /// Maximizes the objective encoded in `obj` (reduced costs; the last
    /// entry holds minus the current value).
    fn run(&mut self) -> Result<()> {
        let mut degenerate = 0usize;
        for _ in 0..MAX_ITERATIONS {
            let bland = degenerate >= DEGENERATE_RUN;
            let mut enter = None;
            let mut best = OPT_TOL;
            for j in 0..self.enter_limit {
                if self.obj[j] > best {
                    enter = Some(j);
                    if bland {
                        break;
                    }
                    best = self.obj[j];
                }
            }
            let Some(e) = enter else { return Ok(()) };
            let rhs = self.cols;
            let mut leave: Option<(usize, f64)> = None;
            for (i, row) in self.t.iter().enumerate() {
                let a = row[e];
                if a > PIVOT_TOL {
                    let ratio = row[rhs] / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((li, lr)) => {
                            if ratio < lr - 1e-14 || (ratio <= lr + 1e-14 && self.basis[i] < self.basis[li]) {
                                Some((i, ratio))
                            } else {
                                Some((li, lr))
                            }
                        }
                    }
                }
            }
            let Some((r, ratio)) = leave else { return Err(Error::Unbounded) };
            if ratio <= 1e-14 {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
            self.pivot(r, e);
        }
        Err(Error::NotConverged { iterations: MAX_ITERATIONS, residual: f64::NAN, best: Vec::new() })
    }
}

fn solve_dual(c: &[f64], rows: &[Vec<f64>], rhs: &[f64]) -> Result<Vec<f64>> {
    let n = c.len();
    if c.iter().chain(rhs).any(|v| !v.is_finite()) || rows.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::Invalid("non-finite LP data".into()));
    }
    // scale rows to unit max-norm; zero rows must be satisfied trivially
    let mut a: Vec<Vec<f64>> = Vec::with_capacity(rows.len());
    let mut b: Vec<f64> = Vec::with_capacity(rows.len());
    for (row, &bi) in rows.iter().zip(rhs) {
        let s = row.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        if s == 0.0 {
            if bi < -1e-12 {
                return Err(Error::Infeasible);
            }
            continue;
        }
        a.push(row.iter().map(|v| v / s).collect());
        b.push(bi / s);
    }
    let m = a.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    // columns: y_0..y_{m-1}, artificials m..m+n-1
    let cols = m + n;
    let sign: Vec<f64> = (0..n).map(|k| if -c[k] < 0.0 { -1.0 } else { 1.0 }).collect();
    let mut t = vec![vec![0.0; cols + 1]; n];
    for k in 0..n {
        for i in 0..m {
            t[k][i] = sign[k] * a[i][k];
        }
        t[k][m + k] = 1.0;
        t[k][cols] = -sign[k] * c[k];
    }
    // phase 1: maximize -(sum of artificials)
    let mut obj = vec![0.0; cols + 1];
    for row in &t {
        for j in 0..m {
            obj[j] += row[j];
        }
        obj[cols] += row[cols];
    }
    let mut tab = Tableau { t, obj, basis: (m..m + n).collect(), cols, enter_limit: m };
    tab.run().map_err(|e| match e {
        Error::Unbounded => Error::Invalid("phase one cannot be unbounded".into()),
        other => other,
    })?;
    let infeas = tab.obj[cols];
    let scale = c.iter().fold(1.0_f64, |s, v| s.max(v.abs()));
    if infeas > 1e-9 * scale {
        // dual infeasible: the primal is unbounded (or infeasible)
        return Err(Error::Unbounded);
    }
    // drive zero-level artificials out where possible
    for r in 0..n {
        if tab.basis[r] >= m {
            if let Some(j) = (0..m).find(|&j| tab.t[r][j].abs() > 1e-9) {
                tab.pivot(r, j);
            }
        }
    }
    // phase 2: maximize -b·y
    let cost = |j: usize| if j < m { -b[j] } else { 0.0 };
    let mut obj = vec![0.0; cols + 1];
    for j in 0..cols {
        obj[j] = cost(j);
    }
    for (r, row) in tab.t.iter().enumerate() {
        let cb = cost(tab.basis[r]);
        if cb != 0.0 {
            for j in 0..=cols {
                obj[j] -= cb * row[j];
            }
        }
    }
    tab.obj = obj;
    tab.run().map_err(|e| match e {
        Error::Unbounded => Error::Infeasible,
        other => other,
    })?;
    // multipliers: reduced cost of artificial k is -π_k
    let x: Vec<f64> = (0..n).map(|k| sign[k] * tab.obj[m + k]).collect();
    // basic dual columns are active primal rows; re-solving them directly
    // removes the rounding of the multiplier read-out
    if tab.basis.iter().all(|&j| j < m) {
        let sys: Vec<Vec<f64>> = tab.basis.iter().map(|&j| a[j].clone()).collect();
        let rhs: Vec<f64> = tab.basis.iter().map(|&j| b[j]).collect();
        if let Some(v) = gauss_solve(sys, rhs) {
            let feasible = a.iter().zip(&b).all(|(row, bi)| dot(row, &v) <= bi + 1e-9 * bi.abs().max(1.0));
            if feasible && dot(c, &v) <= dot(c, &x) + 1e-12 * dot(c, &x).abs().max(1.0) {
                return Ok(v);
            }
        }
    }
    Ok(x)
}

fn gauss_solve(mut m: Vec<Vec<f64>>, mut r: Vec<f64>) -> Option<Vec<f64>> {
    let n = r.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[piv][col].abs() < 1e-12 {
            return None;
        }
        m.swap(col, piv);
        r.swap(col, piv);
        for i in col + 1..n {
            let f = m[i][col] / m[col][col];
            if f != 0.0 {
                for j in col..n {
                    m[i][j] -= f * m[col][j];
                }
                r[i] -= f * r[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| m[i][j] * x[j]).sum();
        x[i] = (r[i] - s) / m[i][i];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_2d(c: [f64; 2], rows: &[([f64; 2], f64)]) -> f64 {
        // optimum of a bounded 2-variable LP sits at a pairwise line intersection
        let mut best = f64::INFINITY;
        for (i, (a, p)) in rows.iter().enumerate() {
            for (b, q) in &rows[i + 1..] {
                let det = a[0] * b[1] - a[1] * b[0];
                if det.abs() < 1e-12 {
                    continue;
                }
                let x = [(p * b[1] - a[1] * q) / det, (a[0] * q - p * b[0]) / det];
                if rows.iter().all(|(r, s)| r[0] * x[0] + r[1] * x[1] <= s + 1e-9) {
                    best = best.min(c[0] * x[0] + c[1] * x[1]);
                }
            }
        }
        best
    }

    #[test]
    fn one_dimensional() {
        let mut lp = Lp::minimize(vec![1.0]);
        lp.ge(vec![1.0], 1.0);
        let s = lp.solve().unwrap();
        assert!((s.x[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn chebyshev_center_of_square() {
        // maximize r subject to the four sides of [-2,2]²
        let mut lp = Lp::minimize(vec![0.0, 0.0, -1.0]);
        lp.le(vec![1.0, 0.0, 1.0], 2.0)
            .le(vec![-1.0, 0.0, 1.0], 2.0)
            .le(vec![0.0, 1.0, 1.0], 2.0)
            .le(vec![0.0, -1.0, 1.0], 2.0);
        let s = lp.solve().unwrap();
        assert!((s.x[2] - 2.0).abs() < 1e-12);
        assert!(s.x[0].abs() < 1e-12 && s.x[1].abs() < 1e-12);
    }

    #[test]
    fn matches_vertex_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let k = rng.gen_range(3..12);
            let mut rows = Vec::new();
            for i in 0..k {
                let th = std::f64::consts::TAU * (i as f64 + rng.gen_range(0.0..0.8)) / k as f64;
                rows.push(([th.cos(), th.sin()], rng.gen_range(0.5..2.0)));
            }
            let c = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
            let mut lp = Lp::minimize(c.to_vec());
            for (a, b) in &rows {
                lp.le(a.to_vec(), *b);
            }
            match lp.solve() {
                Ok(s) => {
                    let want = brute_2d(c, &rows);
                    assert!((s.value - want).abs() < 1e-9, "{} vs {}", s.value, want);
                    assert!(rows.iter().all(|(a, b)| a[0] * s.x[0] + a[1] * s.x[1] <= b + 1e-9));
                }
                Err(Error::Unbounded) => {
                    // normals leave a gap of at least π
                    let mut ang: Vec<f64> = rows.iter().map(|(a, _)| a[1].atan2(a[0])).collect();
                    ang.sort_by(f64::total_cmp);
                    let gaps = ang.windows(2).map(|w| w[1] - w[0]).chain([ang[0] + std::f64::consts::TAU - ang[ang.len() - 1]]);
                    assert!(gaps.fold(0.0, f64::max) >= std::f64::consts::PI - 1e-9);
                }
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = Lp::minimize(vec![1.0]);
        lp.le(vec![1.0], -1.0).ge(vec![1.0], 1.0);
        assert!(matches!(lp.solve(), Err(Error::Infeasible)));
        let mut lp = Lp::minimize(vec![1.0]);
        lp.le(vec![1.0], 3.0);
        assert!(matches!(lp.solve(), Err(Error::Unbounded)));
    }

    #[test]
    fn degenerate_vertex() {
        // many constraints through the optimum (0,0)
        let mut lp = Lp::minimize(vec![1.0, 1.0]);
        for k in 0..20 {
            let th = 0.01 + 1.5 * k as f64 / 20.0;
            lp.ge(vec![th.cos(), th.sin()], 0.0);
        }
        lp.ge(vec![1.0, 0.0], 0.0).ge(vec![0.0, 1.0], 0.0);
        let s = lp.solve().unwrap();
        assert!(s.value.abs() < 1e-12);
    }

    #[test]
    fn lexicographic_picks_smallest_optimum() {
        // min x2 over the square [0,1]²: optimal face is the bottom edge
        let mut lp = Lp::minimize(vec![0.0, 1.0]);
        lp.le(vec![1.0, 0.0], 1.0).ge(vec![1.0, 0.0], 0.0).le(vec![0.0, 1.0], 1.0).ge(vec![0.0, 1.0], 0.0);
        let s = lp.solve_lexicographic(&[0, 1], 1e-12).unwrap();
        assert!(s.x[0].abs() < 1e-12 && s.x[1].abs() < 1e-12);
    }
}
