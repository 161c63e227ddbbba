//! Kahler geometry of the two domains and the Hamiltonian calculus on top:
//! metric, symplectic pairing, Hamiltonian vector fields, and the moment
//! components of the five action families.
//!
//! The metric is the complex Hessian of `-log defect`, where the defect is
//! `1 - |z|^2` on the ball and `Im z_n - |z'|^2` on the Siegel domain. All
//! Wirtinger derivatives follow `d/dz = (d/dx - i d/dy)/2`.

use crate::domains::{ball_defect, siegel_defect, Domain, Point};
use crate::error::{Error, Result};
use crate::group_actions::GroupAction;
use crate::C64;
use nalgebra::DMatrix;
use num_complex::Complex64;

/// A smooth real-valued function on a domain, exposing its holomorphic
/// Wirtinger gradient. For real fields the antiholomorphic gradient is the
/// conjugate, so one vector determines the full differential.
pub trait RealScalarField {
    fn value(&self, z: &Point) -> f64;
    /// `(d f / d z_j)_j`.
    fn d_dz(&self, z: &Point) -> Vec<C64>;
}

/// Wraps a plain closure and differentiates it by central differences.
/// The stencil steps off the validated domain, so evaluation uses raw
/// coordinates; the wrapped function must be defined on a neighborhood.
pub struct NumericField<F: Fn(&Point) -> f64> {
    f: F,
    domain: Domain,
    step: f64,
}

impl<F: Fn(&Point) -> f64> NumericField<F> {
    pub fn new(domain: Domain, f: F) -> Self {
        NumericField { f, domain, step: 1e-5 }
    }

    pub fn with_step(domain: Domain, f: F, step: f64) -> Self {
        NumericField { f, domain, step }
    }

    fn eval_shifted(&self, z: &Point, j: usize, dx: f64, dy: f64) -> f64 {
        let mut coords = z.coords.clone();
        coords[j] += Complex64::new(dx, dy);
        (self.f)(&Point::raw(self.domain, coords))
    }
}

impl<F: Fn(&Point) -> f64> RealScalarField for NumericField<F> {
    fn value(&self, z: &Point) -> f64 {
        (self.f)(z)
    }

    fn d_dz(&self, z: &Point) -> Vec<C64> {
        let h = self.step;
        (0..z.coords.len())
            .map(|j| {
                let fx = (self.eval_shifted(z, j, h, 0.0) - self.eval_shifted(z, j, -h, 0.0))
                    / (2.0 * h);
                let fy = (self.eval_shifted(z, j, 0.0, h) - self.eval_shifted(z, j, 0.0, -h))
                    / (2.0 * h);
                Complex64::new(fx, -fy) * 0.5
            })
            .collect()
    }
}

/// Kahler metric `g_{jk} = d^2 (-log defect) / dz_j dzbar_k` as a dense
/// Hermitian matrix, rows holomorphic, columns antiholomorphic.
pub fn metric(z: &Point) -> DMatrix<C64> {
    let n = z.coords.len();
    match z.domain {
        Domain::Ball(_) => {
            let q = ball_defect(&z.coords);
            DMatrix::from_fn(n, n, |j, k| {
                let delta = if j == k { 1.0 } else { 0.0 };
                (Complex64::new(delta * q, 0.0) + z.coords[j].conj() * z.coords[k]) / (q * q)
            })
        }
        Domain::Siegel(_) => {
            let rho = siegel_defect(&z.coords);
            let r2 = rho * rho;
            DMatrix::from_fn(n, n, |j, k| {
                if j < n - 1 && k < n - 1 {
                    let delta = if j == k { 1.0 } else { 0.0 };
                    (Complex64::new(delta * rho, 0.0) + z.coords[j].conj() * z.coords[k]) / r2
                } else if j < n - 1 {
                    Complex64::new(0.0, -0.5) * z.coords[j].conj() / r2
                } else if k < n - 1 {
                    Complex64::new(0.0, 0.5) * z.coords[k] / r2
                } else {
                    Complex64::new(0.25 / r2, 0.0)
                }
            })
        }
    }
}

/// Closed-form inverse of the metric.
pub fn metric_inverse(z: &Point) -> DMatrix<C64> {
    let n = z.coords.len();
    match z.domain {
        Domain::Ball(_) => {
            let q = ball_defect(&z.coords);
            DMatrix::from_fn(n, n, |j, k| {
                let delta = if j == k { 1.0 } else { 0.0 };
                (Complex64::new(delta, 0.0) - z.coords[j].conj() * z.coords[k]) * q
            })
        }
        Domain::Siegel(_) => {
            let rho = siegel_defect(&z.coords);
            DMatrix::from_fn(n, n, |j, k| {
                let entry = if j < n - 1 && k < n - 1 {
                    Complex64::new(if j == k { 1.0 } else { 0.0 }, 0.0)
                } else if j < n - 1 {
                    Complex64::new(0.0, 2.0) * z.coords[j].conj()
                } else if k < n - 1 {
                    Complex64::new(0.0, -2.0) * z.coords[k]
                } else {
                    Complex64::new(4.0 * z.coords[n - 1].im, 0.0)
                };
                entry * rho
            })
        }
    }
}

/// Symplectic pairing of two tangent vectors at `z` (holomorphic
/// components): `omega(u, v) = i sum g_jk (u_j vbar_k - v_j ubar_k)`.
pub fn kahler_pair(z: &Point, u: &[C64], v: &[C64]) -> Result<f64> {
    let n = z.coords.len();
    if u.len() != n || v.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: u.len().max(v.len()) });
    }
    let g = metric(z);
    let mut h = Complex64::default();
    for j in 0..n {
        for k in 0..n {
            h += g[(j, k)] * u[j] * v[k].conj();
        }
    }
    // i (H(u,v) - H(v,u)) = -2 Im H(u,v) for a Hermitian form
    Ok(-2.0 * h.im)
}

/// Hamiltonian vector field of `f` at `z` (holomorphic components), defined
/// by `df(Y) = omega(X_f, Y)`. Written out with the closed-form inverse
/// metric of each domain; `dbar_j f = conj(d_j f)` since `f` is real.
pub fn hamiltonian_field<F: RealScalarField + ?Sized>(f: &F, z: &Point) -> Result<Vec<C64>> {
    let n = z.coords.len();
    let dbar: Vec<C64> = f.d_dz(z).iter().map(|d| d.conj()).collect();
    if dbar.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: dbar.len() });
    }
    let mi = Complex64::new(0.0, -1.0);
    Ok(match z.domain {
        Domain::Ball(_) => {
            let q = ball_defect(&z.coords);
            let pairing: Complex64 = z.coords.iter().zip(&dbar).map(|(zj, dj)| zj.conj() * dj).sum();
            (0..n)
                .map(|k| mi * q * (dbar[k] - z.coords[k] * pairing))
                .collect()
        }
        Domain::Siegel(_) => {
            let rho = siegel_defect(&z.coords);
            let mut out = Vec::with_capacity(n);
            for k in 0..n - 1 {
                out.push(mi * rho * (dbar[k] - Complex64::new(0.0, 2.0) * z.coords[k] * dbar[n - 1]));
            }
            let cross: Complex64 = (0..n - 1).map(|k| z.coords[k].conj() * dbar[k]).sum();
            out.push(
                mi * rho
                    * (4.0 * z.coords[n - 1].im * dbar[n - 1] + Complex64::new(0.0, 2.0) * cross),
            );
            out
        }
    })
}

/// Components of the moment map of `action` in the additive chart, so that
/// the moment function of a Lie algebra direction `x` is the dot product
/// with this vector.
pub fn moment_vector(action: GroupAction, z: &Point) -> Result<Vec<f64>> {
    action.validate()?;
    if z.domain != action.domain() {
        return Err(Error::UnsupportedAction(format!(
            "{:?} does not act on {:?}",
            action, z.domain
        )));
    }
    let n = action.n();
    Ok(match action {
        GroupAction::Elliptic(_) => {
            let q = ball_defect(&z.coords);
            z.coords.iter().map(|zj| -zj.norm_sqr() / q).collect()
        }
        GroupAction::Hyperbolic(_) => {
            let rho = siegel_defect(&z.coords);
            let mut v: Vec<f64> = (0..n - 1).map(|j| -z.coords[j].norm_sqr() / rho).collect();
            v.push(-z.coords[n - 1].re / (2.0 * rho));
            v
        }
        GroupAction::Parabolic(_)
        | GroupAction::Nilpotent(_)
        | GroupAction::QuasiNilpotent(..) => {
            let rho = siegel_defect(&z.coords);
            let k = match action {
                GroupAction::Parabolic(_) => n - 1,
                GroupAction::Nilpotent(_) => 0,
                GroupAction::QuasiNilpotent(_, k) => k,
                _ => unreachable!(),
            };
            let mut v = Vec::with_capacity(n);
            for j in 0..k {
                v.push(-z.coords[j].norm_sqr() / rho);
            }
            for j in k..n - 1 {
                v.push(2.0 * z.coords[j].im / rho);
            }
            v.push(-0.5 / rho);
            v
        }
    })
}

/// The moment function `z -> <moment_vector(z), x>` of one Lie algebra
/// direction, with its analytic Wirtinger gradient.
pub struct MomentField {
    pub action: GroupAction,
    pub direction: Vec<f64>,
}

impl MomentField {
    pub fn new(action: GroupAction, direction: Vec<f64>) -> Result<Self> {
        action.validate()?;
        if direction.len() != action.n() {
            return Err(Error::DimensionMismatch {
                expected: action.n(),
                got: direction.len(),
            });
        }
        Ok(MomentField { action, direction })
    }
}

impl RealScalarField for MomentField {
    fn value(&self, z: &Point) -> f64 {
        moment_vector(self.action, z)
            .expect("validated at construction")
            .iter()
            .zip(&self.direction)
            .map(|(m, x)| m * x)
            .sum()
    }

    fn d_dz(&self, z: &Point) -> Vec<C64> {
        let n = self.action.n();
        let x = &self.direction;
        match self.action {
            GroupAction::Elliptic(_) => {
                let q = ball_defect(&z.coords);
                let s: f64 = z.coords.iter().zip(x).map(|(zj, xj)| xj * zj.norm_sqr()).sum();
                (0..n)
                    .map(|j| -z.coords[j].conj() * ((x[j] * q + s) / (q * q)))
                    .collect()
            }
            GroupAction::Parabolic(_)
            | GroupAction::Hyperbolic(_)
            | GroupAction::Nilpotent(_)
            | GroupAction::QuasiNilpotent(..) => {
                let rho = siegel_defect(&z.coords);
                let k = match self.action {
                    GroupAction::Parabolic(_) | GroupAction::Hyperbolic(_) => n - 1,
                    GroupAction::Nilpotent(_) => 0,
                    GroupAction::QuasiNilpotent(_, k) => k,
                    _ => unreachable!(),
                };
                // signed numerator m with mu_x = m / (2 rho)
                let mut m = 0.0;
                for j in 0..k {
                    m -= 2.0 * x[j] * z.coords[j].norm_sqr();
                }
                for j in k..n - 1 {
                    m += 4.0 * x[j] * z.coords[j].im;
                }
                m -= match self.action {
                    GroupAction::Hyperbolic(_) => x[n - 1] * z.coords[n - 1].re,
                    _ => x[n - 1],
                };
                let dm = |j: usize| -> C64 {
                    if j < k {
                        Complex64::new(-2.0 * x[j], 0.0) * z.coords[j].conj()
                    } else if j < n - 1 {
                        Complex64::new(0.0, -2.0 * x[j])
                    } else {
                        match self.action {
                            GroupAction::Hyperbolic(_) => Complex64::new(-0.5 * x[n - 1], 0.0),
                            _ => Complex64::default(),
                        }
                    }
                };
                let drho = |j: usize| -> C64 {
                    if j < n - 1 {
                        -z.coords[j].conj()
                    } else {
                        Complex64::new(0.0, -0.5)
                    }
                };
                (0..n)
                    .map(|j| dm(j) / (2.0 * rho) - drho(j) * (m / (2.0 * rho * rho)))
                    .collect()
            }
        }
    }
}

/// Largest coordinate gap between the Hamiltonian field of the moment
/// function of `x` and the fundamental field of `x` at `z`; the moment
/// property says this vanishes.
pub fn moment_property_gap(action: GroupAction, x: &[f64], z: &Point) -> Result<f64> {
    let field = MomentField::new(action, x.to_vec())?;
    let ham = hamiltonian_field(&field, z)?;
    let fund = action.fundamental_field(x, z)?;
    Ok(ham
        .iter()
        .zip(&fund)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max))
}
