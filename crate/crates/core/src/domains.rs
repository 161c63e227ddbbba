//! The two realizations of complex hyperbolic space used throughout: the unit
//! ball `B^n` in `C^n` and the unbounded Siegel domain
//! `D_n = { z : Im z_n > |z'|^2 }`, together with their weighted volume
//! measures, Bergman kernels, and the Cayley transform linking them.
//!
//! Conventions: `z' = (z_1, ..., z_{n-1})`, the weighted measure on the ball
//! is the probability measure `dv_lambda = c_lambda (1 - |z|^2)^lambda dv`,
//! and on the Siegel domain `(c_lambda / 4)(Im z_n - |z'|^2)^lambda dv`.

use crate::error::{Error, Result};
use crate::special::{beta_fn, ln_gamma};
use crate::C64;
use num_complex::Complex64;
use rand::Rng;

/// Width of the guard band inside which points are rejected as
/// boundary-degenerate: moment maps and kernels blow up there.
pub const GUARD_BAND: f64 = 1e-14;

/// One of the two domain realizations, tagged with its complex dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// Unit ball `|z| < 1` in `C^n`.
    Ball(usize),
    /// Siegel domain `Im z_n > |z'|^2` in `C^n`.
    Siegel(usize),
}

impl Domain {
    pub fn dim(&self) -> usize {
        match *self {
            Domain::Ball(n) | Domain::Siegel(n) => n,
        }
    }
}

/// A validated point strictly inside its domain.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub domain: Domain,
    pub coords: Vec<C64>,
}

/// A tangent vector attached to a base point, encoded by the holomorphic
/// components `u_j` of `sum_j u_j d/dz_j + conj(u_j) d/dz_j-bar`.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentVector {
    pub base: Point,
    pub components: Vec<C64>,
}

/// `1 - |z|^2`, the boundary defect of the ball.
pub fn ball_defect(z: &[C64]) -> f64 {
    1.0 - z.iter().map(|c| c.norm_sqr()).sum::<f64>()
}

/// `Im z_n - |z'|^2`, the boundary defect of the Siegel domain.
pub fn siegel_defect(z: &[C64]) -> f64 {
    let n = z.len();
    z[n - 1].im - z[..n - 1].iter().map(|c| c.norm_sqr()).sum::<f64>()
}

/// Strict membership test, with no guard band.
pub fn contains(domain: Domain, v: &[C64]) -> bool {
    if v.len() != domain.dim() || domain.dim() == 0 {
        return false;
    }
    match domain {
        Domain::Ball(_) => ball_defect(v) > 0.0,
        Domain::Siegel(_) => siegel_defect(v) > 0.0,
    }
}

impl Point {
    /// Validates dimension and strict interior membership (with the guard
    /// band); boundary-degenerate points are rejected.
    pub fn new(domain: Domain, coords: Vec<C64>) -> Result<Self> {
        if coords.len() != domain.dim() {
            return Err(Error::DimensionMismatch {
                expected: domain.dim(),
                got: coords.len(),
            });
        }
        let defect = match domain {
            Domain::Ball(_) => ball_defect(&coords),
            Domain::Siegel(_) => siegel_defect(&coords),
        };
        if defect < GUARD_BAND {
            return Err(Error::OutsideDomain(format!(
                "boundary defect {defect:.3e} below guard band"
            )));
        }
        Ok(Point { domain, coords })
    }

    /// Skips validation; for finite-difference stencils and quadrature nodes
    /// whose membership is known or irrelevant.
    pub(crate) fn raw(domain: Domain, coords: Vec<C64>) -> Self {
        Point { domain, coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Boundary defect: `1 - |z|^2` on the ball, `Im z_n - |z'|^2` on the
    /// Siegel domain.
    pub fn defect(&self) -> f64 {
        match self.domain {
            Domain::Ball(_) => ball_defect(&self.coords),
            Domain::Siegel(_) => siegel_defect(&self.coords),
        }
    }
}

impl TangentVector {
    pub fn new(base: Point, components: Vec<C64>) -> Result<Self> {
        if components.len() != base.dim() {
            return Err(Error::DimensionMismatch {
                expected: base.dim(),
                got: components.len(),
            });
        }
        Ok(TangentVector { base, components })
    }
}

/// Normalizing constant `c_lambda = Gamma(n + 1 + lambda) / (pi^n Gamma(lambda + 1))`
/// that makes `dv_lambda` a probability measure on the ball.
pub fn normalization_constant(n: usize, lambda: f64) -> f64 {
    let nf = n as f64;
    (ln_gamma(nf + 1.0 + lambda) - ln_gamma(lambda + 1.0)).exp() / std::f64::consts::PI.powi(n as i32)
}

/// Cayley transform `B^n -> D_n`:
/// `phi(z) = (i / (1 + z_n)) (z', 1 - z_n)`.
pub fn cayley_to_siegel(z: &Point) -> Result<Point> {
    let n = match z.domain {
        Domain::Ball(n) => n,
        Domain::Siegel(_) => {
            return Err(Error::InvalidParameter(
                "cayley_to_siegel expects a ball point".into(),
            ))
        }
    };
    let i = Complex64::new(0.0, 1.0);
    let zn = z.coords[n - 1];
    let scale = i / (Complex64::new(1.0, 0.0) + zn);
    let mut w: Vec<C64> = z.coords[..n - 1].iter().map(|&zj| scale * zj).collect();
    w.push(scale * (Complex64::new(1.0, 0.0) - zn));
    Point::new(Domain::Siegel(n), w)
}

/// Inverse Cayley transform `D_n -> B^n`:
/// `psi(w) = (1 / (1 - i w_n)) (-2i w', 1 + i w_n)`.
pub fn cayley_to_ball(w: &Point) -> Result<Point> {
    let n = match w.domain {
        Domain::Siegel(n) => n,
        Domain::Ball(_) => {
            return Err(Error::InvalidParameter(
                "cayley_to_ball expects a Siegel point".into(),
            ))
        }
    };
    let i = Complex64::new(0.0, 1.0);
    let wn = w.coords[n - 1];
    let scale = Complex64::new(1.0, 0.0) / (Complex64::new(1.0, 0.0) - i * wn);
    let mut z: Vec<C64> = w.coords[..n - 1]
        .iter()
        .map(|&wj| scale * (-2.0 * i * wj))
        .collect();
    z.push(scale * (Complex64::new(1.0, 0.0) + i * wn));
    Point::new(Domain::Ball(n), z)
}

/// Raw coordinate form of the Cayley transform, for use on quadrature nodes
/// that are already known to lie strictly inside the ball.
pub fn cayley_to_siegel_coords(z: &[C64]) -> Vec<C64> {
    let n = z.len();
    let i = Complex64::new(0.0, 1.0);
    let scale = i / (Complex64::new(1.0, 0.0) + z[n - 1]);
    let mut w: Vec<C64> = z[..n - 1].iter().map(|&zj| scale * zj).collect();
    w.push(scale * (Complex64::new(1.0, 0.0) - z[n - 1]));
    w
}

/// Principal-branch power `base^expo`; the base must lie in the right
/// half-plane, which the kernel formulas guarantee on-domain.
fn principal_pow(base: C64, expo: f64) -> C64 {
    assert!(
        base.re > 0.0,
        "principal branch undefined: Re(base) = {} <= 0",
        base.re
    );
    base.powf(expo)
}

/// Weighted Bergman kernel. Ball: `(1 - z . conj(w))^-(lambda + n + 1)`;
/// Siegel: `((z_n - conj(w_n)) / 2i - z' . conj(w'))^-(lambda + n + 1)`.
pub fn bergman_kernel(domain: Domain, lambda: f64, z: &[C64], w: &[C64]) -> C64 {
    let n = domain.dim();
    assert_eq!(z.len(), n);
    assert_eq!(w.len(), n);
    let expo = -(lambda + n as f64 + 1.0);
    match domain {
        Domain::Ball(_) => {
            let dot: C64 = z.iter().zip(w).map(|(&a, &b)| a * b.conj()).sum();
            principal_pow(Complex64::new(1.0, 0.0) - dot, expo)
        }
        Domain::Siegel(_) => {
            let two_i = Complex64::new(0.0, 2.0);
            let dot: C64 = z[..n - 1]
                .iter()
                .zip(&w[..n - 1])
                .map(|(&a, &b)| a * b.conj())
                .sum();
            principal_pow((z[n - 1] - w[n - 1].conj()) / two_i - dot, expo)
        }
    }
}

/// Density of the weighted measure with respect to Lebesgue measure:
/// `c_lambda (1-|z|^2)^lambda` on the ball,
/// `(c_lambda/4)(Im z_n - |z'|^2)^lambda` on the Siegel domain.
pub fn weight_density(domain: Domain, lambda: f64, z: &[C64]) -> f64 {
    let n = domain.dim();
    let c = normalization_constant(n, lambda);
    match domain {
        Domain::Ball(_) => c * ball_defect(z).powf(lambda),
        Domain::Siegel(_) => 0.25 * c * siegel_defect(z).powf(lambda),
    }
}

/// The unitary `U_lambda : A^2_lambda(B^n) -> A^2_lambda(D_n)`,
/// `(U_lambda f)(w) = (2 / (1 - i w_n))^(lambda + n + 1) f(psi(w))`,
/// applied pointwise to a function given on the ball.
pub fn u_lambda_apply<F>(f: F, lambda: f64, w: &Point) -> Result<C64>
where
    F: Fn(&[C64]) -> C64,
{
    let n = match w.domain {
        Domain::Siegel(n) => n,
        Domain::Ball(_) => {
            return Err(Error::InvalidParameter(
                "u_lambda_apply expects a Siegel point".into(),
            ))
        }
    };
    let i = Complex64::new(0.0, 1.0);
    let base = Complex64::new(2.0, 0.0) / (Complex64::new(1.0, 0.0) - i * w.coords[n - 1]);
    let z = cayley_to_ball(w)?;
    Ok(principal_pow(base, lambda + n as f64 + 1.0) * f(&z.coords))
}

/// Squared `A^2_lambda(D_n)` norm of `U_lambda z^p`, computed natively on the
/// Siegel side (n <= 2). The domain is parametrized by
/// `(Re z_n, rho = Im z_n - |z'|^2, |z_1|)`; the angular integrals are exact
/// by torus invariance of the integrand, the `Re z_n` integral is reduced to
/// a Gauss-Jacobi rule on (-1,1) by a tangent substitution, and the remaining
/// radial integrals separate after `(rho, |z_1|^2) -> (T, u)`.
pub fn u_lambda_monomial_norm_sq_siegel(n: usize, lambda: f64, p: &[usize]) -> Result<f64> {
    use crate::quadrature::gauss_jacobi_01;
    if p.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: p.len(),
        });
    }
    if n == 0 || n > 2 {
        return Err(Error::InvalidParameter(
            "siegel-side norm integral implemented for n in {1, 2}".into(),
        ));
    }
    let pn = p[n - 1] as f64;
    let p1 = if n == 2 { p[0] as f64 } else { 0.0 };
    let nf = n as f64;
    let m = lambda + nf + 1.0 + p1 + pn;

    // x-integral: int (B^2 + x^2)^{p_n} (A^2 + x^2)^{-m} dx
    //   = A^{1-2m} * 2^{2a+1} int_0^1 (1-t)^a t^a Q(B^2 + (A^2-B^2)(2t-1)^2) dt,
    // a = m - p_n - 3/2, Q(y) = y^{p_n}; exact for N > p_n.
    let a_exp = m - pn - 1.5;
    let nx = p[n - 1] + 2;
    let x_rule = gauss_jacobi_01(nx, a_exp, a_exp)?;
    let x_scale = 2f64.powf(2.0 * a_exp + 1.0);

    // T-integral: int_0^inf T^{a0} (1+T)^{1-2m} sum_k c_k T^k dT via
    // T = tau/(1-tau) and Jacobi weight tau^{a0} (1-tau)^{2m-3-a0-2p_n}.
    let a0 = if n == 2 { lambda + p1 + 1.0 } else { lambda };
    let alpha_t = 2.0 * m - 3.0 - a0 - 2.0 * pn;
    let nt = p[n - 1] + 2;
    let t_rule = gauss_jacobi_01(nt, alpha_t, a0)?;

    // The factor (1+T)^{1-2m} from the x-part is exactly the (1-tau)^{2m-1}
    // piece of the absorbed Jacobi weight, so only the polynomial part of the
    // x-integral is evaluated at the nodes; (1-tau)^{2 p_n} clears the
    // denominators of T^k, k <= 2 p_n, leaving a polynomial evaluand.
    let mut total = 0.0;
    for (&tau, &wt) in t_rule.nodes.iter().zip(&t_rule.weights) {
        let t_val = tau / (1.0 - tau);
        let a_ball = 1.0 + t_val;
        let b_ball = 1.0 - t_val;
        let (a2, b2) = (a_ball * a_ball, b_ball * b_ball);
        let mut x_poly = 0.0;
        for (&t, &wx) in x_rule.nodes.iter().zip(&x_rule.weights) {
            let s = 2.0 * t - 1.0;
            x_poly += wx * (b2 + (a2 - b2) * s * s).powi(p[n - 1] as i32);
        }
        total += wt * x_scale * x_poly * (1.0 - tau).powf(2.0 * pn);
    }

    let c = normalization_constant(n, lambda);
    let mut result = 0.25 * c * 4f64.powf(lambda + nf + 1.0 + p1) * total;
    if n == 2 {
        // angular factor 2 pi, u-integral B(lambda+1, p_1+1), r dr = dR/2
        result *= 2.0 * std::f64::consts::PI * beta_fn(lambda + 1.0, p1 + 1.0) * 0.5;
    }
    Ok(result)
}

/// Seeded sample strictly inside the ball, `|z| <= max_norm`.
pub fn random_ball_point<R: Rng>(n: usize, max_norm: f64, rng: &mut R) -> Point {
    loop {
        let coords: Vec<C64> = (0..n)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let norm: f64 = coords.iter().map(|c| c.norm_sqr()).sum::<f64>();
        if norm < max_norm * max_norm {
            return Point::new(Domain::Ball(n), coords).expect("inside by construction");
        }
    }
}

/// Seeded sample strictly inside the Siegel domain with defect in
/// [0.2, 2.0] and bounded horizontal coordinates.
pub fn random_siegel_point<R: Rng>(n: usize, rng: &mut R) -> Point {
    let mut coords: Vec<C64> = (0..n - 1)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let horiz: f64 = coords.iter().map(|c| c.norm_sqr()).sum();
    let rho = rng.random_range(0.2..2.0);
    let x = rng.random_range(-2.0..2.0);
    coords.push(Complex64::new(x, rho + horiz));
    Point::new(Domain::Siegel(n), coords).expect("inside by construction")
}
