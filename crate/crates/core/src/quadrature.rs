//! One-dimensional Gauss–Legendre rules used by the β oracle.

use std::f64::consts::PI;

/// Nodes and weights of the `m`-point Gauss–Legendre rule on [-1, 1].
pub fn gauss_legendre(m: usize) -> Vec<(f64, f64)> {
    assert!(m >= 1, "gauss_legendre needs at least one node");
    let mut rule = Vec::with_capacity(m);
    for i in 0..m {
        // Tricomi initial guess, refined by Newton on P_m.
        let mut x = (PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(m, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(m, x);
        if d.is_finite() {
            dp = d;
        }
        rule.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    rule.sort_by(|a, b| a.0.total_cmp(&b.0));
    rule
}

fn legendre_with_derivative(m: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=m {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let p = if m == 0 { 1.0 } else { p1 };
    let m = m as f64;
    let d = m * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

/// Composite rule on [0, 1] with `panels` uniform panels.
///
/// The first and last panels are split geometrically toward their outer
/// endpoint (`levels` sub-panels, ratio `grading`, each with a higher-order
/// rule) so that integrands with algebraic endpoint singularities such as
/// `x^0.2` still converge fast.
#[derive(Debug, Clone)]
pub struct GradedRule {
    nodes: Vec<(f64, f64)>,
}

impl GradedRule {
    pub const DEFAULT_ORDER: usize = 2;
    pub const GRADED_ORDER: usize = 8;
    pub const DEFAULT_LEVELS: usize = 16;
    pub const DEFAULT_GRADING: f64 = 0.2;

    pub fn new(panels: usize) -> Self {
        Self::with_options(
            panels,
            Self::DEFAULT_ORDER,
            Self::DEFAULT_LEVELS,
            Self::DEFAULT_GRADING,
        )
    }

    pub fn with_options(panels: usize, order: usize, levels: usize, grading: f64) -> Self {
        assert!(panels >= 2, "graded rule needs two panels");
        let base = gauss_legendre(order);
        let fine = gauss_legendre(Self::GRADED_ORDER.max(order));
        let h = 1.0 / panels as f64;
        let mut nodes = Vec::new();
        let push_interval = |a: f64, b: f64, rule: &[(f64, f64)], nodes: &mut Vec<(f64, f64)>| {
            let half = 0.5 * (b - a);
            let mid = 0.5 * (a + b);
            nodes.extend(rule.iter().map(|&(x, w)| (mid + half * x, half * w)));
        };

        // Left end: [h g^{k+1}, h g^k], k = levels-1 .. 0. The leftover
        // [0, h g^levels] is dropped.
        for k in (0..levels).rev() {
            let b = h * grading.powi(k as i32);
            let a = b * grading;
            push_interval(a, b, &fine, &mut nodes);
        }
        for p in 1..panels - 1 {
            push_interval(p as f64 * h, (p + 1) as f64 * h, &base, &mut nodes);
        }
        for k in 0..levels {
            let a = 1.0 - h * grading.powi(k as i32);
            let b = 1.0 - h * grading.powi(k as i32 + 1);
            push_interval(a, b, &fine, &mut nodes);
        }
        GradedRule { nodes }
    }

    pub fn nodes(&self) -> &[(f64, f64)] {
        &self.nodes
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().map(|&(x, w)| w * f(x)).sum()
    }
}
