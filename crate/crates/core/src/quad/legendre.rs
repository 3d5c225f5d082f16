use std::f64::consts::PI;
use std::sync::LazyLock;

use super::checked;
use crate::error::{Error, Result};

const MAX_ORDER: usize = 64;

struct Rule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

fn build(n: usize) -> Rule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            let (mut p1, mut p2) = (1.0, 0.0);
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2 * j + 1) as f64 * z * p2 - j as f64 * p3) / (j + 1) as f64;
            }
            pp = n as f64 * (z * p1 - p2) / (z * z - 1.0);
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        let w = 2.0 / ((1.0 - z * z) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    Rule { nodes, weights }
}

static RULES: LazyLock<Vec<Rule>> = LazyLock::new(|| (1..=MAX_ORDER).map(build).collect());

/// Nodes and weights of the n-point Gauss–Legendre rule on [−1, 1], n ≤ 64.
///
/// # Panics
/// If n is 0 or exceeds 64.
pub fn gauss_legendre(n: usize) -> (&'static [f64], &'static [f64]) {
    assert!(
        (1..=MAX_ORDER).contains(&n),
        "Gauss-Legendre order {n} outside 1..=64"
    );
    let r = &RULES[n - 1];
    (&r.nodes, &r.weights)
}

/// Composite Gauss–Legendre quadrature with `panels` equal panels of `order` points.
pub fn integrate_gauss_legendre<F>(
    f: F,
    lo: f64,
    hi: f64,
    panels: usize,
    order: usize,
) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if panels == 0 || !(1..=MAX_ORDER).contains(&order) {
        return Err(Error::Config(format!(
            "invalid composite rule: {panels} panels of order {order}"
        )));
    }
    let (nodes, weights) = gauss_legendre(order);
    let h = (hi - lo) / panels as f64;
    let mut total = 0.0;
    for k in 0..panels {
        let mid = lo + (k as f64 + 0.5) * h;
        let mut s = 0.0;
        for (&t, &w) in nodes.iter().zip(weights) {
            let x = mid + 0.5 * h * t;
            s += w * checked(f(x)?, x)?;
        }
        total += 0.5 * h * s;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two_and_nodes_sorted() {
        for n in [1, 2, 7, 20, 64] {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
            assert!(x.windows(2).all(|p| p[0] < p[1]));
        }
    }

    #[test]
    fn exact_for_degree_2n_minus_1() {
        let n = 10;
        let (x, w) = gauss_legendre(n);
        for k in 0..2 * n {
            let q: f64 = x.iter().zip(w).map(|(&x, &w)| w * x.powi(k as i32)).sum();
            let exact = if k % 2 == 1 {
                0.0
            } else {
                2.0 / (k as f64 + 1.0)
            };
            assert!((q - exact).abs() < 1e-14, "k = {k}");
        }
    }

    #[test]
    fn composite_rule() {
        let v = integrate_gauss_legendre(|u| Ok(u.sin()), 0.0, PI, 4, 10).unwrap();
        assert!((v - 2.0).abs() < 1e-14);
    }
}
