//! Adaptive Gauss–Legendre quadrature on intervals and rectangles.
//!
//! Each panel is integrated with a fixed-order Gauss–Legendre rule and
//! compared against the sum of the same rule over its children (two halves
//! in 1-D, four quadrants in 2-D). The panel with the largest discrepancy is
//! refined until the summed discrepancy falls below the requested relative
//! tolerance. The test is relative, so integrals of tiny magnitude such as
//! far-tail Gaussian masses keep their significant digits.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard ceiling on live panels, independent of `max_depth`.
const MAX_PANELS: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    /// Relative error target.
    pub rel_tol: f64,
    /// Absolute error floor.
    pub abs_tol: f64,
    /// Maximum number of times a panel may be subdivided.
    pub max_depth: u32,
    /// Gauss–Legendre order used on every panel.
    pub points_per_panel: usize,
}

impl QuadratureConfig {
    pub fn default_1d() -> Self {
        QuadratureConfig {
            rel_tol: 1e-9,
            abs_tol: 0.0,
            max_depth: 30,
            points_per_panel: 16,
        }
    }

    pub fn default_2d() -> Self {
        QuadratureConfig {
            rel_tol: 1e-7,
            ..Self::default_1d()
        }
    }

    pub fn with_rel_tol(self, rel_tol: f64) -> Self {
        QuadratureConfig { rel_tol, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::domain(format!("rel_tol must be positive, got {}", self.rel_tol)));
        }
        if !(self.abs_tol >= 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::domain(format!(
                "abs_tol must be nonnegative, got {}",
                self.abs_tol
            )));
        }
        if self.points_per_panel < 2 {
            return Err(Error::domain("points_per_panel must be at least 2"));
        }
        if self.max_depth < 1 {
            return Err(Error::domain("max_depth must be at least 1"));
        }
        Ok(())
    }
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self::default_1d()
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Computes the `n`-point rule by Newton iteration on `P_n`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre order must be positive");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        let nf = n as f64;
        for i in 0..m {
            // Tricomi's initial guess for the i-th root
            let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, z);
                dp = d;
                let dz = p / d;
                z -= dz;
                if dz.abs() <= 1e-16 * z.abs().max(1.0) {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, z);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - z * z) * dp * dp);
            nodes[i] = -z;
            nodes[n - 1 - i] = z;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    /// Shared rule of order `n`, built on first use.
    pub fn cached(n: usize) -> Arc<GaussLegendre> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussLegendre>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut map = cache.lock().unwrap_or_else(|e| e.into_inner());
        map.entry(n)
            .or_insert_with(|| Arc::new(GaussLegendre::new(n)))
            .clone()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    fn apply_1d<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64) -> Result<(f64, f64)> {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut sum = 0.0;
        let mut abs = 0.0;
        for (&t, &w) in self.nodes.iter().zip(&self.weights) {
            let x = mid + half * t;
            let v = f(x);
            if !v.is_finite() {
                return Err(Error::domain(format!("integrand is not finite at x = {x} ({v})")));
            }
            sum += w * v;
            abs += w * v.abs();
        }
        Ok((sum * half, abs * half.abs()))
    }

    fn apply_2d<F: Fn(f64, f64) -> f64>(&self, f: &F, r: &Rect) -> Result<(f64, f64)> {
        let hx = 0.5 * (r.x_hi - r.x_lo);
        let mx = 0.5 * (r.x_hi + r.x_lo);
        let hy = 0.5 * (r.y_hi - r.y_lo);
        let my = 0.5 * (r.y_hi + r.y_lo);
        let mut sum = 0.0;
        let mut abs = 0.0;
        for (&tx, &wx) in self.nodes.iter().zip(&self.weights) {
            let x = mx + hx * tx;
            let mut row = 0.0;
            let mut row_abs = 0.0;
            for (&ty, &wy) in self.nodes.iter().zip(&self.weights) {
                let y = my + hy * ty;
                let v = f(x, y);
                if !v.is_finite() {
                    return Err(Error::domain(format!(
                        "integrand is not finite at (x, y) = ({x}, {y}) ({v})"
                    )));
                }
                row += wy * v;
                row_abs += wy * v.abs();
            }
            sum += wx * row;
            abs += wx * row_abs;
        }
        let jac = hx * hy;
        Ok((sum * jac, abs * jac.abs()))
    }
}

/// `(P_n(z), P_n'(z))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let dp = nf * (z * p1 - p0) / (z * z - 1.0);
    (p1, dp)
}

#[derive(Clone, Copy, Debug)]
struct Rect {
    x_lo: f64,
    x_hi: f64,
    y_lo: f64,
    y_hi: f64,
}

struct Panel<R> {
    depth: u32,
    children: Vec<(R, f64, f64)>,
    fine: f64,
    abs: f64,
    err: f64,
}

#[derive(PartialEq)]
struct HeapKey {
    err: f64,
    seq: usize,
}

impl Eq for HeapKey {}

impl Ord for HeapKey {
    fn cmp(&self, other: &Self) -> Ordering {
        // largest error first; earlier panels win ties
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

impl PartialOrd for HeapKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shared driver for 1-D and 2-D refinement.
fn adaptive<R, E, S>(root: R, cfg: &QuadratureConfig, eval: E, split: S) -> Result<f64>
where
    R: Copy,
    E: Fn(&R) -> Result<(f64, f64)>,
    S: Fn(&R) -> Vec<R>,
{
    let make_panel = |region: &R, coarse: f64, depth: u32| -> Result<Panel<R>> {
        let mut children = Vec::new();
        let mut fine = 0.0;
        let mut abs = 0.0;
        for child in split(region) {
            let (v, a) = eval(&child)?;
            fine += v;
            abs += a;
            children.push((child, v, a));
        }
        Ok(Panel {
            depth,
            children,
            fine,
            abs,
            err: (fine - coarse).abs(),
        })
    };

    let (coarse, _) = eval(&root)?;
    let mut panels: Vec<Option<Panel<R>>> = vec![Some(make_panel(&root, coarse, 0)?)];
    let mut heap = BinaryHeap::new();
    heap.push(HeapKey {
        err: panels[0].as_ref().map_or(0.0, |p| p.err),
        seq: 0,
    });

    let exact_totals = |panels: &[Option<Panel<R>>]| {
        panels.iter().flatten().fold((0.0, 0.0, 0.0), |(v, e, a), p| {
            (v + p.fine, e + p.err, a + p.abs)
        })
    };
    let (mut total, mut err, mut abs) = exact_totals(&panels);
    let mut live = 1usize;

    loop {
        let target = |total: f64, abs: f64| {
            (cfg.rel_tol * total.abs())
                .max(cfg.abs_tol)
                .max(64.0 * f64::EPSILON * abs)
        };
        if err <= target(total, abs) {
            // confirm against freshly summed totals before accepting
            let (t, e, a) = exact_totals(&panels);
            total = t;
            err = e;
            abs = a;
            if err <= target(total, abs) {
                return Ok(total);
            }
        }

        let worst = loop {
            match heap.pop() {
                Some(key) => {
                    let depth = panels[key.seq].as_ref().map(|p| p.depth);
                    match depth {
                        Some(d) if d < cfg.max_depth => break Some(key.seq),
                        // at the depth limit: leave it in place, stop tracking
                        _ => continue,
                    }
                }
                None => break None,
            }
        };
        let Some(idx) = worst else {
            let (t, e, _) = exact_totals(&panels);
            return Err(Error::Convergence { estimate: t, error: e });
        };
        if live >= MAX_PANELS {
            let (t, e, _) = exact_totals(&panels);
            return Err(Error::Convergence { estimate: t, error: e });
        }

        let parent = panels[idx].take().expect("heap entries point at live panels");
        total -= parent.fine;
        err -= parent.err;
        abs -= parent.abs;
        live -= 1;
        for (region, value, _) in &parent.children {
            let child = make_panel(region, *value, parent.depth + 1)?;
            total += child.fine;
            err += child.err;
            abs += child.abs;
            let seq = panels.len();
            heap.push(HeapKey { err: child.err, seq });
            panels.push(Some(child));
            live += 1;
        }
        err = err.max(0.0);
    }
}

/// `∫ₐᵇ f(x) dx` by adaptive Gauss–Legendre panels.
pub fn integrate_1d<F>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    cfg.validate()?;
    if !(a.is_finite() && b.is_finite()) || a >= b {
        return Err(Error::domain(format!(
            "integration bounds must be finite with a < b, got [{a}, {b}]"
        )));
    }
    let rule = GaussLegendre::cached(cfg.points_per_panel);
    adaptive(
        (a, b),
        cfg,
        |&(lo, hi)| rule.apply_1d(&f, lo, hi),
        |&(lo, hi)| {
            let mid = 0.5 * (lo + hi);
            vec![(lo, mid), (mid, hi)]
        },
    )
}

/// `∫∫ f(x, y) dy dx` over `[x_lo, x_hi] × [y_lo, y_hi]`.
pub fn integrate_2d<F>(
    f: F,
    x_lo: f64,
    x_hi: f64,
    y_lo: f64,
    y_hi: f64,
    cfg: &QuadratureConfig,
) -> Result<f64>
where
    F: Fn(f64, f64) -> f64,
{
    cfg.validate()?;
    let ok = [x_lo, x_hi, y_lo, y_hi].iter().all(|v| v.is_finite());
    if !ok || x_lo >= x_hi || y_lo >= y_hi {
        return Err(Error::domain(format!(
            "integration rectangle must be finite and nonempty, got [{x_lo}, {x_hi}] x [{y_lo}, {y_hi}]"
        )));
    }
    let rule = GaussLegendre::cached(cfg.points_per_panel);
    adaptive(
        Rect { x_lo, x_hi, y_lo, y_hi },
        cfg,
        |r| rule.apply_2d(&f, r),
        |r| {
            let xm = 0.5 * (r.x_lo + r.x_hi);
            let ym = 0.5 * (r.y_lo + r.y_hi);
            vec![
                Rect { x_hi: xm, y_hi: ym, ..*r },
                Rect { x_hi: xm, y_lo: ym, ..*r },
                Rect { x_lo: xm, y_hi: ym, ..*r },
                Rect { x_lo: xm, y_lo: ym, ..*r },
            ]
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn midpoint(f: impl Fn(f64) -> f64, a: f64, b: f64, cells: usize) -> f64 {
        let h = (b - a) / cells as f64;
        (0..cells).map(|i| f(a + (i as f64 + 0.5) * h)).sum::<f64>() * h
    }

    fn phi(x: f64) -> f64 {
        (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()
    }

    #[test]
    fn rule_weights_sum_to_two() {
        for n in [2, 3, 5, 16, 31] {
            let r = GaussLegendre::new(n);
            let s: f64 = r.weights().iter().sum();
            assert!((s - 2.0).abs() < 1e-14, "n={n}: {s}");
            // exact for degree 2n-1
            let m: f64 = r
                .nodes()
                .iter()
                .zip(r.weights())
                .map(|(x, w)| w * x.powi(2 * n as i32 - 2))
                .sum();
            assert!((m - 2.0 / (2 * n - 1) as f64).abs() < 1e-13, "n={n}");
        }
    }

    #[test]
    fn polynomial_and_constant() {
        let cfg = QuadratureConfig::default_1d();
        let v = integrate_1d(|x| x * x, 0.0, 1.0, &cfg).unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-12);
        assert!((integrate_1d(|_| 1.0, 0.0, 1.0, &cfg).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn normal_pdf_matches_riemann() {
        let cfg = QuadratureConfig::default_1d();
        let v = integrate_1d(phi, 1.0, 2.0, &cfg).unwrap();
        let oracle = midpoint(phi, 1.0, 2.0, 1_000_000);
        assert!((v - oracle).abs() < 1e-6);
    }

    #[test]
    fn separable_2d() {
        let cfg = QuadratureConfig::default_2d();
        let v = integrate_2d(|x, y| x * y, 0.0, 1.0, 0.0, 1.0, &cfg).unwrap();
        assert!((v - 0.25).abs() < 1e-12);
        let v = integrate_2d(|_, _| 1.0, 0.0, 1.0, 0.0, 1.0, &cfg).unwrap();
        assert!((v - 1.0).abs() < 1e-14);
    }

    #[test]
    fn tiny_tail_keeps_relative_accuracy() {
        // ∫_{20}^{21} φ(x) dx ≈ 5.5e-89
        let cfg = QuadratureConfig::default_1d();
        let v = integrate_1d(phi, 20.0, 21.0, &cfg).unwrap();
        let oracle = midpoint(phi, 20.0, 21.0, 200_000);
        assert!(v > 0.0);
        assert!(((v - oracle) / oracle).abs() < 1e-6, "{v} vs {oracle}");
    }

    #[test]
    fn cancellation_terminates() {
        let cfg = QuadratureConfig::default_1d();
        let v = integrate_1d(|x| x.sin(), -3.0, 3.0, &cfg).unwrap();
        assert!(v.abs() < 1e-12);
    }

    #[test]
    fn errors() {
        let cfg = QuadratureConfig::default_1d();
        assert!(matches!(
            integrate_1d(|x| if x > 0.5 { f64::NAN } else { x }, 0.0, 1.0, &cfg),
            Err(Error::Domain(_))
        ));
        assert!(integrate_1d(|x| 1.0 / x, 0.0, 1.0, &cfg).is_err());
        assert!(integrate_1d(|x| x, 1.0, 0.0, &cfg).is_err());
        let shallow = QuadratureConfig {
            max_depth: 1,
            rel_tol: 1e-14,
            ..cfg
        };
        assert!(matches!(
            integrate_1d(|x: f64| x.abs().sqrt(), -1.0, 1.0, &shallow),
            Err(Error::Convergence { .. })
        ));
        let bad = QuadratureConfig { points_per_panel: 1, ..cfg };
        assert!(integrate_1d(|x| x, 0.0, 1.0, &bad).is_err());
    }

    #[test]
    fn deterministic() {
        let cfg = QuadratureConfig::default_2d();
        let f = |x: f64, y: f64| (x * y).cos() * (-x * x).exp();
        let a = integrate_2d(f, -2.0, 3.0, 0.0, 4.0, &cfg).unwrap();
        let b = integrate_2d(f, -2.0, 3.0, 0.0, 4.0, &cfg).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }
}
