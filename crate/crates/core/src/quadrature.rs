//! Composite Gauss-Legendre quadrature.
//!
//! Only used as the second, independent route to the normal CDF; the
//! integrand there is entire, so fixed-order panels converge far past
//! double precision and no adaptivity is needed.

use std::f64::consts::PI;

#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// Returns `(P_n(x), P_n'(x))` via the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 1..n {
        let k = k as f64;
        let next = ((2.0 * k + 1.0) * x * p - k * p_prev) / (k + 1.0);
        p_prev = p;
        p = next;
    }
    let dp = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

impl GaussLegendre {
    /// Builds an `n`-point rule on `[-1, 1]`, locating the roots of `P_n` by
    /// Newton iteration from the usual cosine starting guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "Gauss-Legendre rule needs at least two nodes");
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() <= 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes.push(x);
            weights.push(w);
            if 2 * i + 1 != n {
                nodes.push(-x);
                weights.push(w);
            }
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let sum: f64 = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum();
        half * sum
    }

    /// Splits `[a, b]` into panels no wider than `max_width` and sums the
    /// per-panel rules.
    pub fn integrate_composite<F: Fn(f64) -> f64>(
        &self,
        f: F,
        a: f64,
        b: f64,
        max_width: f64,
    ) -> f64 {
        if a == b {
            return 0.0;
        }
        let panels = ((b - a).abs() / max_width).ceil().max(1.0) as usize;
        let width = (b - a) / panels as f64;
        (0..panels)
            .map(|i| {
                let lo = a + i as f64 * width;
                let hi = if i + 1 == panels { b } else { lo + width };
                self.integrate(&f, lo, hi)
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_interval_length() {
        for n in [2, 5, 16, 20] {
            let rule = GaussLegendre::new(n);
            assert_eq!(rule.len(), n);
            let total: f64 = rule.weights.iter().sum();
            assert!((total - 2.0).abs() < 1e-14, "n = {n}: {total}");
        }
    }

    #[test]
    fn exact_for_polynomials_up_to_degree_2n_minus_1() {
        let rule = GaussLegendre::new(5);
        // x^9 on [0, 1] integrates to 1/10.
        let v = rule.integrate(|x| x.powi(9), 0.0, 1.0);
        assert!((v - 0.1).abs() < 1e-15);
        let v = rule.integrate(|x| x.powi(8) - 3.0 * x * x, -1.0, 2.0);
        let exact = (512.0 + 1.0) / 9.0 - (8.0 + 1.0);
        assert!((v - exact).abs() < 1e-12);
    }

    #[test]
    fn composite_matches_closed_form() {
        let rule = GaussLegendre::new(20);
        let v = rule.integrate_composite(f64::exp, 0.0, 3.0, 0.25);
        assert!((v - (3f64.exp() - 1.0)).abs() < 1e-13);
        assert_eq!(rule.integrate_composite(f64::exp, 1.0, 1.0, 0.25), 0.0);
    }
}
