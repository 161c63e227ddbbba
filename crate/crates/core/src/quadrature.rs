//! Gauss quadrature rules and the composite rules built from them.
//!
//! All 1D rules come from the Golub-Welsch eigensolve of the Jacobi matrix of
//! the weight's orthogonal polynomials. Composite rules are explicit tensor
//! constructions; no adaptivity anywhere, orders are caller choices.

use crate::error::{Error, Result};
use crate::special::{beta_fn, gamma_fn};
use crate::C64;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::Distribution;

/// Neumaier compensated summation; keeps node sums accurate to O(eps)
/// independently of the node count.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// A one-dimensional Gauss rule: `int w(t) f(t) dt ~ sum_i weights[i] f(nodes[i])`.
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn apply<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        let mut acc = KahanSum::default();
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc.add(w * f(x));
        }
        acc.value()
    }
}

/// Nodes and weights from the symmetric tridiagonal Jacobi matrix with
/// diagonal `diag`, off-diagonal `offdiag`, and zeroth moment `mu0`.
fn golub_welsch(diag: &[f64], offdiag: &[f64], mu0: f64) -> GaussRule {
    let n = diag.len();
    if n == 1 {
        return GaussRule {
            nodes: vec![diag[0]],
            weights: vec![mu0],
        };
    }
    let mut m = DMatrix::<f64>::zeros(n, n);
    for (i, &d) in diag.iter().enumerate() {
        m[(i, i)] = d;
    }
    for (i, &b) in offdiag.iter().enumerate() {
        m[(i, i + 1)] = b;
        m[(i + 1, i)] = b;
    }
    let eig = nalgebra::linalg::SymmetricEigen::new(m);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|j| {
            let first = eig.eigenvectors[(0, j)];
            (eig.eigenvalues[j], mu0 * first * first)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    GaussRule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    }
}

/// Gauss-Jacobi rule on [0,1] for the weight `(1-t)^alpha t^beta`.
pub fn gauss_jacobi_01(n: usize, alpha: f64, beta: f64) -> Result<GaussRule> {
    if n == 0 {
        return Err(Error::InvalidParameter("rule order must be positive".into()));
    }
    if alpha <= -1.0 || beta <= -1.0 {
        return Err(Error::InvalidParameter(format!(
            "jacobi exponents must exceed -1, got alpha={alpha}, beta={beta}"
        )));
    }
    // Recurrence for (1-x)^alpha (1+x)^beta on [-1,1]; mapped to [0,1] below.
    let ab = alpha + beta;
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n.saturating_sub(1));
    for k in 0..n {
        let kf = k as f64;
        let denom = (2.0 * kf + ab) * (2.0 * kf + ab + 2.0);
        let a = if k == 0 {
            (beta - alpha) / (ab + 2.0)
        } else {
            (beta * beta - alpha * alpha) / denom
        };
        diag.push(a);
    }
    for k in 1..n {
        let kf = k as f64;
        let b2 = if k == 1 {
            4.0 * (alpha + 1.0) * (beta + 1.0) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0))
        } else {
            4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab)
                / ((2.0 * kf + ab) * (2.0 * kf + ab) * (2.0 * kf + ab + 1.0) * (2.0 * kf + ab - 1.0))
        };
        off.push(b2.sqrt());
    }
    let mu0 = 2f64.powf(ab + 1.0) * beta_fn(alpha + 1.0, beta + 1.0);
    let rule = golub_welsch(&diag, &off, mu0);
    // map x in [-1,1] to t = (1+x)/2; weights pick up 2^{-(ab+1)}
    let scale = 2f64.powf(-(ab + 1.0));
    Ok(GaussRule {
        nodes: rule.nodes.iter().map(|x| 0.5 * (1.0 + x)).collect(),
        weights: rule.weights.iter().map(|w| w * scale).collect(),
    })
}

/// Gauss-Laguerre rule on `[0, inf)` for the weight `t^alpha e^{-t}`.
pub fn gauss_laguerre(n: usize, alpha: f64) -> Result<GaussRule> {
    if n == 0 {
        return Err(Error::InvalidParameter("rule order must be positive".into()));
    }
    if alpha <= -1.0 {
        return Err(Error::InvalidParameter(format!(
            "laguerre exponent must exceed -1, got {alpha}"
        )));
    }
    let diag: Vec<f64> = (0..n).map(|k| 2.0 * k as f64 + alpha + 1.0).collect();
    let off: Vec<f64> = (1..n)
        .map(|k| ((k as f64) * (k as f64 + alpha)).sqrt())
        .collect();
    Ok(golub_welsch(&diag, &off, gamma_fn(alpha + 1.0)))
}

/// Gauss-Hermite rule on the line for the weight `e^{-t^2}`.
pub fn gauss_hermite(n: usize) -> Result<GaussRule> {
    if n == 0 {
        return Err(Error::InvalidParameter("rule order must be positive".into()));
    }
    let diag = vec![0.0; n];
    let off: Vec<f64> = (1..n).map(|k| (k as f64 / 2.0).sqrt()).collect();
    Ok(golub_welsch(&diag, &off, std::f64::consts::PI.sqrt()))
}

/// A flat multi-dimensional positive rule.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
    pub description: String,
}

impl QuadratureRule {
    pub fn integrate<F: FnMut(&[f64]) -> f64>(&self, mut f: F) -> f64 {
        let mut acc = KahanSum::default();
        for (x, &w) in self.nodes.iter().zip(&self.weights) {
            acc.add(w * f(x));
        }
        acc.value()
    }

    pub fn total_weight(&self) -> f64 {
        let mut acc = KahanSum::default();
        for &w in &self.weights {
            acc.add(w);
        }
        acc.value()
    }
}

/// Tensor rule for the probability measure `dv_lambda` on the ball `B^n`,
/// factorized as (radial simplex) x (torus).
///
/// The radial simplex `{ x in R_+^n : |x| < 1 }`, `x_j = r_j^2`, is handled by
/// the nested substitution `x_j = t_j prod_{i<j} (1 - t_i)` whose Jacobian
/// together with `(1-|x|)^lambda` turns axis `i` (1-based) into a Gauss-Jacobi
/// weight `(1-t)^{lambda+n-i}`. Angles use the `M`-point trapezoid rule per
/// axis, exact for trigonometric polynomials of degree < M.
#[derive(Debug, Clone)]
pub struct BallRule {
    pub n: usize,
    pub lambda: f64,
    pub radial_order: usize,
    pub angular_order: usize,
    radial: Vec<(Vec<f64>, f64)>,
}

/// Builds the full tensor rule on `B^n`; `radial_order` Gauss nodes per radial
/// axis and `angular_order` trapezoid points per angle.
pub fn ball_full_rule(n: usize, lambda: f64, radial_order: usize, angular_order: usize) -> Result<BallRule> {
    if n == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    if lambda <= -1.0 {
        return Err(Error::InvalidParameter("weight exponent must exceed -1".into()));
    }
    if angular_order == 0 {
        return Err(Error::InvalidParameter("angular order must be positive".into()));
    }
    let axes: Vec<GaussRule> = (0..n)
        .map(|i| gauss_jacobi_01(radial_order, lambda + (n - 1 - i) as f64, 0.0))
        .collect::<Result<_>>()?;
    let c = crate::domains::normalization_constant(n, lambda) / 2f64.powi(n as i32);

    let mut radial = Vec::with_capacity(radial_order.pow(n as u32));
    let mut idx = vec![0usize; n];
    loop {
        let mut remaining = 1.0;
        let mut w = c;
        let mut radii = Vec::with_capacity(n);
        for (axis, rule) in axes.iter().enumerate() {
            let t = rule.nodes[idx[axis]];
            w *= rule.weights[idx[axis]];
            let x = t * remaining;
            remaining *= 1.0 - t;
            radii.push(x.sqrt());
        }
        radial.push((radii, w));
        // odometer increment
        let mut axis = 0;
        loop {
            idx[axis] += 1;
            if idx[axis] < radial_order {
                break;
            }
            idx[axis] = 0;
            axis += 1;
            if axis == n {
                return Ok(BallRule {
                    n,
                    lambda,
                    radial_order,
                    angular_order,
                    radial,
                });
            }
        }
    }
}

impl BallRule {
    /// Radial part: `(radii, weight)` with the `c_lambda / 2^n` constant and
    /// the Jacobi weights folded in. Total measure needs the `(2 pi)^n`
    /// angular factor on top.
    pub fn radial_nodes(&self) -> &[(Vec<f64>, f64)] {
        &self.radial
    }

    /// Angle grid for one axis: `theta_m = 2 pi m / M`.
    pub fn angles(&self) -> Vec<f64> {
        (0..self.angular_order)
            .map(|m| 2.0 * std::f64::consts::PI * m as f64 / self.angular_order as f64)
            .collect()
    }

    /// Total mass of the rule; equals 1 up to roundoff.
    pub fn mass(&self) -> f64 {
        let mut acc = KahanSum::default();
        for (_, w) in &self.radial {
            acc.add(*w);
        }
        acc.value() * (2.0 * std::f64::consts::PI).powi(self.n as i32)
    }

    /// Integrates a torus-invariant function given by its radial profile
    /// `g(r_1, ..., r_n)` against `dv_lambda`.
    pub fn integrate_radial<F: FnMut(&[f64]) -> f64>(&self, mut g: F) -> f64 {
        let mut acc = KahanSum::default();
        for (radii, w) in &self.radial {
            acc.add(w * g(radii));
        }
        acc.value() * (2.0 * std::f64::consts::PI).powi(self.n as i32)
    }

    /// Integrates a general function of `z` against `dv_lambda` by the full
    /// tensor loop. Node count is `radial_order^n * angular_order^n`.
    pub fn integrate<F: FnMut(&[C64]) -> C64>(&self, mut f: F) -> C64 {
        let m = self.angular_order;
        let phases: Vec<C64> = (0..m)
            .map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / m as f64))
            .collect();
        let ang_w = (2.0 * std::f64::consts::PI / m as f64).powi(self.n as i32);
        let mut re = KahanSum::default();
        let mut im = KahanSum::default();
        let mut z = vec![Complex64::default(); self.n];
        let mut idx = vec![0usize; self.n];
        for (radii, w) in &self.radial {
            idx.iter_mut().for_each(|i| *i = 0);
            'angular: loop {
                for j in 0..self.n {
                    z[j] = radii[j] * phases[idx[j]];
                }
                let v = f(&z) * (w * ang_w);
                re.add(v.re);
                im.add(v.im);
                let mut axis = 0;
                loop {
                    idx[axis] += 1;
                    if idx[axis] < m {
                        break;
                    }
                    idx[axis] = 0;
                    axis += 1;
                    if axis == self.n {
                        break 'angular;
                    }
                }
            }
        }
        Complex64::new(re.value(), im.value())
    }

    /// Materializes the rule as a flat list over `R^{2n}` with coordinates
    /// `(Re z_1, Im z_1, ..., Re z_n, Im z_n)`.
    pub fn flatten(&self) -> QuadratureRule {
        let m = self.angular_order;
        let angles = self.angles();
        let ang_w = (2.0 * std::f64::consts::PI / m as f64).powi(self.n as i32);
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        let mut idx = vec![0usize; self.n];
        for (radii, w) in &self.radial {
            idx.iter_mut().for_each(|i| *i = 0);
            'angular: loop {
                let mut pt = Vec::with_capacity(2 * self.n);
                for j in 0..self.n {
                    pt.push(radii[j] * angles[idx[j]].cos());
                    pt.push(radii[j] * angles[idx[j]].sin());
                }
                nodes.push(pt);
                weights.push(w * ang_w);
                let mut axis = 0;
                loop {
                    idx[axis] += 1;
                    if idx[axis] < m {
                        break;
                    }
                    idx[axis] = 0;
                    axis += 1;
                    if axis == self.n {
                        break 'angular;
                    }
                }
            }
        }
        QuadratureRule {
            nodes,
            weights,
            description: format!(
                "ball rule n={} lambda={} radial={} angular={}",
                self.n, self.lambda, self.radial_order, self.angular_order
            ),
        }
    }
}

/// Per-axis weight specification for rules on the positive orthant.
#[derive(Debug, Clone, Copy)]
pub enum AxisWeight {
    /// Absorbs `u^{u_pow} (1+u)^{-inv_pow} du` through `u = t/(1-t)` and a
    /// Gauss-Jacobi rule; requires `inv_pow > u_pow + 1`.
    Rational { u_pow: f64, inv_pow: f64 },
    /// Absorbs `u^{alpha} e^{-scale u} du` through a scaled Gauss-Laguerre rule.
    Laguerre { alpha: f64, scale: f64 },
}

/// Tensor rule on `R_+^len(axes)`; each axis absorbs its declared weight, so
/// the rule integrates `f(u) * prod_axis w_axis(u_axis) du`.
pub fn orthant_rule(axes: &[AxisWeight], order: usize) -> Result<QuadratureRule> {
    if axes.is_empty() {
        return Err(Error::InvalidParameter("need at least one axis".into()));
    }
    let mut per_axis: Vec<(Vec<f64>, Vec<f64>)> = Vec::with_capacity(axes.len());
    for spec in axes {
        match *spec {
            AxisWeight::Rational { u_pow, inv_pow } => {
                if inv_pow <= u_pow + 1.0 {
                    return Err(Error::InvalidParameter(format!(
                        "rational axis weight not integrable: u^{u_pow} (1+u)^-{inv_pow}"
                    )));
                }
                let rule = gauss_jacobi_01(order, inv_pow - u_pow - 2.0, u_pow)?;
                let nodes: Vec<f64> = rule.nodes.iter().map(|t| t / (1.0 - t)).collect();
                per_axis.push((nodes, rule.weights));
            }
            AxisWeight::Laguerre { alpha, scale } => {
                if scale <= 0.0 {
                    return Err(Error::InvalidParameter("laguerre scale must be positive".into()));
                }
                let rule = gauss_laguerre(order, alpha)?;
                let nodes: Vec<f64> = rule.nodes.iter().map(|y| y / scale).collect();
                let factor = scale.powf(-(alpha + 1.0));
                let weights: Vec<f64> = rule.weights.iter().map(|w| w * factor).collect();
                per_axis.push((nodes, weights));
            }
        }
    }
    let dim = per_axis.len();
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    let mut idx = vec![0usize; dim];
    loop {
        let mut pt = Vec::with_capacity(dim);
        let mut w = 1.0;
        for (axis, (ns, ws)) in per_axis.iter().enumerate() {
            pt.push(ns[idx[axis]]);
            w *= ws[idx[axis]];
        }
        nodes.push(pt);
        weights.push(w);
        let mut axis = 0;
        loop {
            idx[axis] += 1;
            if idx[axis] < per_axis[axis].0.len() {
                break;
            }
            idx[axis] = 0;
            axis += 1;
            if axis == dim {
                return Ok(QuadratureRule {
                    nodes,
                    weights,
                    description: format!("orthant rule, {dim} axes, order {order}"),
                });
            }
        }
    }
}

/// A Monte Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy)]
pub struct MonteCarloEstimate {
    pub value: f64,
    pub std_error: f64,
    pub samples: usize,
}

/// Plain Monte Carlo mean of `f` under the sampler's distribution, seeded and
/// reproducible. The sampler draws one point per call.
pub fn monte_carlo<S, F>(sampler: S, f: F, samples: usize, seed: u64) -> MonteCarloEstimate
where
    S: Fn(&mut ChaCha8Rng) -> Vec<f64>,
    F: Fn(&[f64]) -> f64,
{
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mean = KahanSum::default();
    let mut sq = KahanSum::default();
    for _ in 0..samples {
        let x = sampler(&mut rng);
        let v = f(&x);
        mean.add(v);
        sq.add(v * v);
    }
    let m = mean.value() / samples as f64;
    let var = (sq.value() / samples as f64 - m * m).max(0.0);
    MonteCarloEstimate {
        value: m,
        std_error: (var / samples as f64).sqrt(),
        samples,
    }
}

/// Lebesgue volume of the unit ball of `C^n = R^{2n}`: `pi^n / n!`.
pub fn ball_volume(n: usize) -> f64 {
    std::f64::consts::PI.powi(n as i32) / gamma_fn(n as f64 + 1.0)
}

/// Uniform sampler on the ball `B^n`, returned as `2n` real coordinates.
pub fn ball_uniform_sampler(n: usize) -> impl Fn(&mut ChaCha8Rng) -> Vec<f64> {
    move |rng: &mut ChaCha8Rng| loop {
        let pt: Vec<f64> = (0..2 * n).map(|_| rng.random_range(-1.0..1.0)).collect();
        if pt.iter().map(|x| x * x).sum::<f64>() < 1.0 {
            return pt;
        }
    }
}

/// Sampler for the probability density
/// `Gamma(lambda+|p|+n+1) / (p! Gamma(lambda+1)) u^p / (1+|u|)^{lambda+|p|+n+1}`
/// on `R_+^n`: with independent draws `g_j ~ Gamma(p_j + 1)`,
/// `g ~ Gamma(lambda + 1)`, the ratio vector `u_j = g_j / g` has exactly this
/// law. Used to cross-validate the spectral integrals by Monte Carlo.
pub fn moment_density_sampler(p: &[usize], lambda: f64) -> impl Fn(&mut ChaCha8Rng) -> Vec<f64> {
    let shapes: Vec<f64> = p.iter().map(|&pj| pj as f64 + 1.0).collect();
    let last = lambda + 1.0;
    move |rng: &mut ChaCha8Rng| {
        let g_last: f64 = rand_distr::Gamma::new(last, 1.0).unwrap().sample(rng);
        shapes
            .iter()
            .map(|&s| rand_distr::Gamma::new(s, 1.0).unwrap().sample(rng) / g_last)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::ln_gamma;

    #[test]
    fn jacobi_single_node_midpoint() {
        let r = gauss_jacobi_01(1, 0.0, 0.0).unwrap();
        assert!((r.nodes[0] - 0.5).abs() < 1e-15);
        assert!((r.weights[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn jacobi_linear_exact() {
        let r = gauss_jacobi_01(1, 0.0, 0.0).unwrap();
        let v: f64 = r.apply(|t| t);
        assert!((v - 0.5).abs() < 1e-15);
    }

    #[test]
    fn jacobi_beta_moment() {
        // int_0^1 t^2 (1-t)^{3/2} dt = B(3, 5/2), exact at N = 2
        let r = gauss_jacobi_01(2, 1.5, 0.0).unwrap();
        let v = r.apply(|t| t * t);
        let exact = beta_fn(3.0, 2.5);
        assert!((v - exact).abs() < 1e-15, "{v} vs {exact}");
    }

    #[test]
    fn jacobi_weight_sums() {
        for &(alpha, beta) in &[(0.0, 0.0), (1.5, 0.0), (3.0, 2.5), (0.5, 0.5), (12.0, 4.0)] {
            for &n in &[1usize, 2, 8, 40, 64] {
                let r = gauss_jacobi_01(n, alpha, beta).unwrap();
                let total: f64 = r.weights.iter().sum();
                let mu0 = beta_fn(alpha + 1.0, beta + 1.0);
                assert!(
                    (total - mu0).abs() < 1e-13 * mu0,
                    "alpha={alpha} beta={beta} n={n}: {total} vs {mu0}"
                );
                assert!(r.nodes.iter().all(|&t| t > 0.0 && t < 1.0));
            }
        }
    }

    #[test]
    fn laguerre_values() {
        let r = gauss_laguerre(1, 0.0).unwrap();
        assert!((r.nodes[0] - 1.0).abs() < 1e-14);
        assert!((r.weights[0] - 1.0).abs() < 1e-14);
        // int t e^-t = 1 exact already at N = 1
        assert!((r.apply(|t| t) - 1.0).abs() < 1e-14);

        let r = gauss_laguerre(8, 0.0).unwrap();
        assert!((r.apply(|t| t * t * t) - 6.0).abs() < 1e-12);

        let r = gauss_laguerre(16, 2.5).unwrap();
        let total: f64 = r.weights.iter().sum();
        assert!((total - gamma_fn(3.5)).abs() < 1e-13 * gamma_fn(3.5));
    }

    #[test]
    fn hermite_values() {
        let r = gauss_hermite(1).unwrap();
        assert!(r.nodes[0].abs() < 1e-15);
        assert!((r.weights[0] - std::f64::consts::PI.sqrt()).abs() < 1e-14);

        let r = gauss_hermite(4).unwrap();
        let second = r.apply(|t| t * t);
        assert!((second - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-13);
        let odd = r.apply(|t| t * t * t);
        assert!(odd.abs() < 1e-13);
    }

    #[test]
    fn ball_rule_mass_is_one() {
        for &(n, lambda) in &[(1usize, 0.0), (2, 0.0), (2, 1.5), (3, 2.0)] {
            let rule = ball_full_rule(n, lambda, 12, 8).unwrap();
            assert!(
                (rule.mass() - 1.0).abs() < 1e-12,
                "n={n} lambda={lambda}: mass {}",
                rule.mass()
            );
        }
    }

    #[test]
    fn ball_rule_monomial_norms() {
        // int |z^p|^2 dv_lambda = p! Gamma(n+1+lambda) / Gamma(n+|p|+lambda+1)
        for &(n, lambda) in &[(1usize, 0.0), (2, 1.5), (3, 0.5)] {
            let rule = ball_full_rule(n, lambda, 16, 4).unwrap();
            for total_deg in 0..=4usize {
                let mut p = vec![0usize; n];
                p[0] = total_deg;
                if n > 1 {
                    p[0] = total_deg / 2;
                    p[n - 1] = total_deg - p[0];
                }
                let val = rule.integrate_radial(|r| {
                    r.iter()
                        .zip(&p)
                        .map(|(&rj, &pj)| rj.powi(2 * pj as i32))
                        .product()
                });
                let exact = (crate::special::ln_multi_factorial(&p)
                    + ln_gamma(n as f64 + 1.0 + lambda)
                    - ln_gamma(n as f64 + total_deg as f64 + lambda + 1.0))
                .exp();
                assert!(
                    (val - exact).abs() < 1e-13 * exact,
                    "n={n} lambda={lambda} p={p:?}: {val} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn ball_rule_odd_moment_vanishes() {
        let rule = ball_full_rule(2, 0.5, 6, 8).unwrap();
        let v = rule.integrate(|z| z[0]);
        assert!(v.norm() < 1e-15);
    }

    #[test]
    fn ball_rule_flatten_matches() {
        let rule = ball_full_rule(2, 1.0, 4, 6).unwrap();
        let flat = rule.flatten();
        assert_eq!(flat.nodes.len(), 16 * 36);
        assert!((flat.total_weight() - 1.0).abs() < 1e-12);
        let direct = rule.integrate(|z| (z[0].norm_sqr() * z[1].norm_sqr()).into());
        let via_flat = flat.integrate(|x| {
            (x[0] * x[0] + x[1] * x[1]) * (x[2] * x[2] + x[3] * x[3])
        });
        assert!((direct.re - via_flat).abs() < 1e-14);
    }

    #[test]
    fn orthant_rational_axis_exact() {
        // int_0^inf (1+u)^{-2} du = 1
        let rule = orthant_rule(&[AxisWeight::Rational { u_pow: 0.0, inv_pow: 2.0 }], 8).unwrap();
        assert!((rule.integrate(|_| 1.0) - 1.0).abs() < 1e-13);
    }

    #[test]
    fn orthant_dirichlet_integral() {
        // int_{R_+^2} u_1 / (1 + u_1 + u_2)^5 du = Gamma(2)Gamma(1)Gamma(2)/Gamma(5) = 1/24
        let axes = [
            AxisWeight::Rational { u_pow: 1.0, inv_pow: 3.0 },
            AxisWeight::Rational { u_pow: 0.0, inv_pow: 2.0 },
        ];
        let rule = orthant_rule(&axes, 160).unwrap();
        let v = rule.integrate(|u| {
            ((1.0 + u[0]).powi(3) * (1.0 + u[1]).powi(2)) / (1.0 + u[0] + u[1]).powi(5)
        });
        assert!((v - 1.0 / 24.0).abs() < 1e-10, "got {v}");
    }

    #[test]
    fn orthant_laguerre_axis() {
        // int u^2 e^{-3u} du = 2/27
        let rule = orthant_rule(&[AxisWeight::Laguerre { alpha: 2.0, scale: 3.0 }], 4).unwrap();
        assert!((rule.integrate(|_| 1.0) - 2.0 / 27.0).abs() < 1e-15);
    }

    #[test]
    fn monte_carlo_ball_mass() {
        // int_B2 dv_lambda = 1; uniform sampling with density correction
        let n = 2;
        let lambda = 1.5;
        let c = crate::domains::normalization_constant(n, lambda);
        let vol = ball_volume(n);
        let est = monte_carlo(
            ball_uniform_sampler(n),
            |x| {
                let d = 1.0 - x.iter().map(|v| v * v).sum::<f64>();
                vol * c * d.powf(lambda)
            },
            200_000,
            42,
        );
        assert!(
            (est.value - 1.0).abs() < 3.0 * est.std_error,
            "estimate {} +- {}",
            est.value,
            est.std_error
        );
        assert!(est.std_error < 0.01);
    }

    #[test]
    fn monte_carlo_moment_density() {
        // E[1/(1+|u|)] under the n=1, lambda=0, p=0 moment density is 1/2.
        let est = monte_carlo(
            moment_density_sampler(&[0], 0.0),
            |u| 1.0 / (1.0 + u[0]),
            400_000,
            7,
        );
        assert!(
            (est.value - 0.5).abs() < 4.0 * est.std_error,
            "estimate {} +- {}",
            est.value,
            est.std_error
        );
    }

    #[test]
    fn monte_carlo_reproducible() {
        let f = |x: &[f64]| x[0] * x[0];
        let a = monte_carlo(ball_uniform_sampler(1), f, 10_000, 5);
        let b = monte_carlo(ball_uniform_sampler(1), f, 10_000, 5);
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.std_error.to_bits(), b.std_error.to_bits());
        let c = monte_carlo(ball_uniform_sampler(1), f, 10_000, 6);
        assert_ne!(a.value.to_bits(), c.value.to_bits());
    }

    #[test]
    fn monomial_exactness_sweep() {
        // Gauss-Jacobi exactness class: degree <= 2N-1 against the Beta oracle.
        for &(alpha, beta) in &[(0.0, 0.0), (2.5, 0.0), (1.5, 3.0)] {
            for n in 1..=10usize {
                let rule = gauss_jacobi_01(n, alpha, beta).unwrap();
                for k in 0..=(2 * n - 1) {
                    let v = rule.apply(|t| t.powi(k as i32));
                    let exact = beta_fn(k as f64 + beta + 1.0, alpha + 1.0);
                    assert!(
                        (v - exact).abs() < 1e-12 * exact,
                        "alpha={alpha} beta={beta} n={n} k={k}: {v} vs {exact}"
                    );
                }
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn jacobi_exact_on_its_degree_class(
            n in 1usize..24,
            frac in 0.0f64..1.0,
            alpha in 0.0f64..6.0,
            beta in 0.0f64..4.0,
        ) {
            let k = ((2 * n - 1) as f64 * frac).floor() as i32;
            let rule = gauss_jacobi_01(n, alpha, beta).unwrap();
            let v = rule.apply(|t| t.powi(k));
            let exact = beta_fn(k as f64 + beta + 1.0, alpha + 1.0);
            proptest::prop_assert!(
                (v - exact).abs() < 1e-12 * exact,
                "n={} k={} alpha={} beta={}: {} vs {}", n, k, alpha, beta, v, exact
            );
        }

        #[test]
        fn laguerre_exact_on_its_degree_class(
            n in 1usize..24,
            frac in 0.0f64..1.0,
            alpha in 0.0f64..6.0,
        ) {
            let k = ((2 * n - 1) as f64 * frac).floor() as f64;
            let rule = gauss_laguerre(n, alpha).unwrap();
            let v = rule.apply(|t| t.powf(k));
            let exact = gamma_fn(k + alpha + 1.0);
            // the k-th moment concentrates at nodes near t = 2k whose
            // computed weights carry absolute eps-level noise, so the
            // attainable relative accuracy decays like 2^k eps
            let tol = (8.0 * k.exp2() * f64::EPSILON).max(1e-12);
            proptest::prop_assert!(
                (v - exact).abs() < tol * exact,
                "n={} k={} alpha={}: {} vs {}", n, k, alpha, v, exact
            );
        }
    }
}
