//! The five maximal Abelian action families on the ball and Siegel domain.
//!
//! Every group here is identified with `R^n` through a fixed global chart in
//! which composition is vector addition and one-parameter subgroups are
//! straight lines. The elliptic family acts on the ball; the other four act
//! on the Siegel domain.
//!
//! Chart conventions, `z' = (z_1, ..., z_{n-1})`:
//! - elliptic `theta in R^n`: `z_j -> e^{i theta_j} z_j`
//! - parabolic `(theta, h)`: `z' -> e^{i theta} z'`, `z_n -> z_n + h`
//! - hyperbolic `(theta, l)`: `z' -> e^{l/2} e^{i theta} z'`, `z_n -> e^l z_n`
//! - nilpotent `(b, h)`: `z' -> z' + b`,
//!   `z_n -> z_n + h + 2i z'.b + i|b|^2`
//! - quasi-nilpotent `(theta, b, h)` with split `z' = (z_(1), z_(2))`,
//!   `z_(1)` of length `k`: rotations on `z_(1)`, the nilpotent motion on
//!   `(z_(2), z_n)`

use crate::domains::{siegel_defect, Domain, Point};
use crate::error::{Error, Result};
use crate::C64;
use num_complex::Complex64;
use rand::Rng;

/// One of the five action families, tagged with the domain dimension (and the
/// rotation count `k` for the quasi-nilpotent family).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupAction {
    Elliptic(usize),
    Parabolic(usize),
    Hyperbolic(usize),
    Nilpotent(usize),
    QuasiNilpotent(usize, usize),
}

/// A group element in the additive chart `R^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupParam {
    pub coords: Vec<f64>,
}

impl GroupParam {
    pub fn new(coords: Vec<f64>) -> Self {
        GroupParam { coords }
    }

    pub fn identity(n: usize) -> Self {
        GroupParam { coords: vec![0.0; n] }
    }

    /// Group composition; the chart is chosen so this is plain addition.
    pub fn compose(&self, other: &GroupParam) -> GroupParam {
        GroupParam {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// Result of trying to move `w` onto `z` by a group element.
#[derive(Debug, Clone)]
pub enum TransportOutcome {
    /// `act(param, w) = z` within tolerance.
    Param(GroupParam),
    /// Best candidate leaves this coordinate gap; the points sit on
    /// different orbits.
    NotInSameFiber { defect: f64 },
}

impl GroupAction {
    /// Ambient complex dimension; also the group dimension.
    pub fn n(&self) -> usize {
        match *self {
            GroupAction::Elliptic(n)
            | GroupAction::Parabolic(n)
            | GroupAction::Hyperbolic(n)
            | GroupAction::Nilpotent(n)
            | GroupAction::QuasiNilpotent(n, _) => n,
        }
    }

    /// Domain the family acts on.
    pub fn domain(&self) -> Domain {
        match *self {
            GroupAction::Elliptic(n) => Domain::Ball(n),
            GroupAction::Parabolic(n)
            | GroupAction::Hyperbolic(n)
            | GroupAction::Nilpotent(n)
            | GroupAction::QuasiNilpotent(n, _) => Domain::Siegel(n),
        }
    }

    /// Split point for quasi-nilpotent coordinates: indices `< k` rotate,
    /// indices in `k..n-1` translate. The other families reduce to the same
    /// bookkeeping (`k = n-1` parabolic-like, `k = 0` nilpotent-like).
    fn rotation_count(&self) -> usize {
        match *self {
            GroupAction::Elliptic(n) => n,
            GroupAction::Parabolic(n) | GroupAction::Hyperbolic(n) => n - 1,
            GroupAction::Nilpotent(_) => 0,
            GroupAction::QuasiNilpotent(_, k) => k,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            GroupAction::Elliptic(n)
            | GroupAction::Parabolic(n)
            | GroupAction::Hyperbolic(n) => {
                if n == 0 {
                    return Err(Error::InvalidParameter("dimension must be positive".into()));
                }
            }
            GroupAction::Nilpotent(n) => {
                if n < 2 {
                    return Err(Error::InvalidParameter(
                        "nilpotent family needs dimension >= 2".into(),
                    ));
                }
            }
            GroupAction::QuasiNilpotent(n, k) => {
                if n < 2 {
                    return Err(Error::InvalidParameter(
                        "quasi-nilpotent family needs dimension >= 2".into(),
                    ));
                }
                if k >= n {
                    return Err(Error::InvalidParameter(format!(
                        "rotation count {k} must be below dimension {n}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_inputs(&self, g: &GroupParam, z: &Point) -> Result<()> {
        self.validate()?;
        if g.coords.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: g.coords.len(),
            });
        }
        if z.domain != self.domain() {
            return Err(Error::UnsupportedAction(format!(
                "{:?} does not act on {:?}",
                self, z.domain
            )));
        }
        Ok(())
    }

    /// Exponential of the Lie algebra direction `x` at time `s`; in the
    /// additive chart this is the line `s x`.
    pub fn exp_group(&self, x: &[f64], s: f64) -> GroupParam {
        GroupParam {
            coords: x.iter().map(|v| v * s).collect(),
        }
    }

    /// Applies the group element to a point of the domain.
    pub fn act(&self, g: &GroupParam, z: &Point) -> Result<Point> {
        self.check_inputs(g, z)?;
        let n = self.n();
        let c = &z.coords;
        let coords: Vec<C64> = match *self {
            GroupAction::Elliptic(_) => c
                .iter()
                .zip(&g.coords)
                .map(|(zj, &t)| zj * Complex64::from_polar(1.0, t))
                .collect(),
            GroupAction::Hyperbolic(_) => {
                let l = g.coords[n - 1];
                let scale = (0.5 * l).exp();
                let mut out: Vec<C64> = (0..n - 1)
                    .map(|j| c[j] * scale * Complex64::from_polar(1.0, g.coords[j]))
                    .collect();
                out.push(c[n - 1] * l.exp());
                out
            }
            GroupAction::Parabolic(_)
            | GroupAction::Nilpotent(_)
            | GroupAction::QuasiNilpotent(..) => {
                let k = self.rotation_count();
                let h = g.coords[n - 1];
                let mut out = Vec::with_capacity(n);
                for j in 0..k {
                    out.push(c[j] * Complex64::from_polar(1.0, g.coords[j]));
                }
                let mut cross = Complex64::default();
                let mut b_sq = 0.0;
                for j in k..n - 1 {
                    let b = g.coords[j];
                    cross += c[j] * b;
                    b_sq += b * b;
                    out.push(c[j] + b);
                }
                out.push(c[n - 1] + h + Complex64::new(0.0, 2.0) * cross + Complex64::new(0.0, b_sq));
                out
            }
        };
        Point::new(z.domain, coords)
    }

    /// Holomorphic components of the fundamental vector field of the Lie
    /// algebra direction `x` at `z`: the `s`-derivative of the orbit at 0.
    pub fn fundamental_field(&self, x: &[f64], z: &Point) -> Result<Vec<C64>> {
        let g = GroupParam::new(x.to_vec());
        self.check_inputs(&g, z)?;
        let n = self.n();
        let c = &z.coords;
        Ok(match *self {
            GroupAction::Elliptic(_) => c
                .iter()
                .zip(x)
                .map(|(zj, &s)| Complex64::new(0.0, s) * zj)
                .collect(),
            GroupAction::Hyperbolic(_) => {
                let l = x[n - 1];
                let mut out: Vec<C64> = (0..n - 1)
                    .map(|j| Complex64::new(0.5 * l, x[j]) * c[j])
                    .collect();
                out.push(l * c[n - 1]);
                out
            }
            GroupAction::Parabolic(_)
            | GroupAction::Nilpotent(_)
            | GroupAction::QuasiNilpotent(..) => {
                let k = self.rotation_count();
                let mut out = Vec::with_capacity(n);
                for j in 0..k {
                    out.push(Complex64::new(0.0, x[j]) * c[j]);
                }
                let mut cross = Complex64::default();
                for j in k..n - 1 {
                    cross += c[j] * x[j];
                    out.push(Complex64::new(x[j], 0.0));
                }
                out.push(Complex64::new(x[n - 1], 0.0) + Complex64::new(0.0, 2.0) * cross);
                out
            }
        })
    }

    /// Looks for a group element carrying `w` to `z`. The candidate is read
    /// off coordinate by coordinate, then verified by acting; failure reports
    /// the residual gap.
    pub fn orbit_transport(&self, z: &Point, w: &Point, tol: f64) -> Result<TransportOutcome> {
        self.check_inputs(&GroupParam::identity(self.n()), z)?;
        if w.domain != z.domain {
            return Err(Error::UnsupportedAction("points on different domains".into()));
        }
        let n = self.n();
        let phase = |num: C64, den: C64| -> f64 {
            if den.norm() > 1e-13 && num.norm() > 1e-13 {
                (num / den).arg()
            } else {
                0.0
            }
        };
        let coords: Vec<f64> = match *self {
            GroupAction::Elliptic(_) => (0..n)
                .map(|j| phase(z.coords[j], w.coords[j]))
                .collect(),
            GroupAction::Hyperbolic(_) => {
                let l = (siegel_defect(&z.coords) / siegel_defect(&w.coords)).ln();
                let scale = (0.5 * l).exp();
                let mut v: Vec<f64> = (0..n - 1)
                    .map(|j| phase(z.coords[j], w.coords[j] * scale))
                    .collect();
                v.push(l);
                v
            }
            GroupAction::Parabolic(_)
            | GroupAction::Nilpotent(_)
            | GroupAction::QuasiNilpotent(..) => {
                let k = self.rotation_count();
                let mut v = Vec::with_capacity(n);
                for j in 0..k {
                    v.push(phase(z.coords[j], w.coords[j]));
                }
                let mut shift = 0.0;
                for j in k..n - 1 {
                    let b = z.coords[j].re - w.coords[j].re;
                    shift += 2.0 * w.coords[j].im * b;
                    v.push(b);
                }
                v.push(z.coords[n - 1].re - w.coords[n - 1].re + shift);
                v
            }
        };
        let g = GroupParam::new(coords);
        let moved = match self.act(&g, w) {
            Ok(p) => p,
            // candidate pushed w outside the domain: certainly not the fiber
            Err(_) => {
                let defect = z
                    .coords
                    .iter()
                    .zip(&w.coords)
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0, f64::max);
                return Ok(TransportOutcome::NotInSameFiber { defect });
            }
        };
        let defect = z
            .coords
            .iter()
            .zip(&moved.coords)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        if defect < tol {
            Ok(TransportOutcome::Param(g))
        } else {
            Ok(TransportOutcome::NotInSameFiber { defect })
        }
    }

    /// Uniform random group element for tests, coordinates in `[-1, 1)`.
    pub fn random_param<R: Rng>(&self, rng: &mut R) -> GroupParam {
        GroupParam {
            coords: (0..self.n()).map(|_| rng.random_range(-1.0..1.0)).collect(),
        }
    }

    /// Random point of the domain this family acts on.
    pub fn random_point<R: Rng>(&self, rng: &mut R) -> Point {
        match self.domain() {
            Domain::Ball(n) => crate::domains::random_ball_point(n, 0.9, rng),
            Domain::Siegel(n) => crate::domains::random_siegel_point(n, rng),
        }
    }
}

/// All five families at dimension `n` (quasi-nilpotent over every valid `k`),
/// the standard iteration order for sweeps.
pub fn all_actions(n: usize) -> Vec<GroupAction> {
    let mut v = vec![GroupAction::Elliptic(n)];
    if n >= 1 {
        v.push(GroupAction::Parabolic(n));
        v.push(GroupAction::Hyperbolic(n));
    }
    if n >= 2 {
        v.push(GroupAction::Nilpotent(n));
        for k in 1..n - 1 {
            v.push(GroupAction::QuasiNilpotent(n, k));
        }
    }
    v
}
