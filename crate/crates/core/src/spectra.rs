//! Spectral integral representations of the diagonalized Toeplitz operators:
//! for each action family, the eigenvalue function `gamma` of a symbol in two
//! parametrizations, one over the orbit-side variables (`*_beta`) and one
//! over the moment-map image (`*_moment`).
//!
//! All prefactors cancel exactly against the Gauss weights, so the constant
//! symbol evaluates to 1 up to roundoff in every route; this anchors the
//! normalizations.
//!
//! Spectral parameters by family: elliptic `p in N^n`; parabolic
//! `(p in N^{n-1}, xi > 0)`; nilpotent `(y in R^{n-1}, xi > 0)`;
//! quasi-nilpotent `(p in N^k, y in R^{n-k-1}, xi > 0)`. The hyperbolic
//! family is covered by its coordinate identities only.

use crate::domains::{siegel_defect, Domain, Point};
use crate::error::{Error, Result};
use crate::group_actions::GroupAction;
use crate::moment::{BetaBasis, SymbolSpec};
use crate::quadrature::{gauss_hermite, gauss_jacobi_01, gauss_laguerre, GaussRule, KahanSum};
use crate::special::{ln_gamma, ln_multi_factorial};
use crate::C64;
use num_complex::Complex64;

/// Tensor-product Gauss sum `sum prod_a w_a f(x_1, ..., x_m)`; an empty rule
/// list contributes the single empty node with weight 1.
fn tensor_sum<F>(rules: &[GaussRule], mut f: F) -> C64
where
    F: FnMut(&[f64]) -> C64,
{
    if rules.is_empty() {
        return f(&[]);
    }
    let mut re = KahanSum::default();
    let mut im = KahanSum::default();
    let mut idx = vec![0usize; rules.len()];
    let mut vals = vec![0.0f64; rules.len()];
    loop {
        let mut w = 1.0;
        for (a, rule) in rules.iter().enumerate() {
            vals[a] = rule.nodes[idx[a]];
            w *= rule.weights[idx[a]];
        }
        let v = f(&vals) * w;
        re.add(v.re);
        im.add(v.im);
        let mut a = 0;
        loop {
            idx[a] += 1;
            if idx[a] < rules[a].len() {
                break;
            }
            idx[a] = 0;
            a += 1;
            if a == rules.len() {
                return Complex64::new(re.value(), im.value());
            }
        }
    }
}

fn pairings(basis: &BetaBasis, u: &[f64]) -> Vec<f64> {
    basis
        .vectors()
        .iter()
        .map(|v| v.iter().zip(u).map(|(a, b)| a * b).sum())
        .collect()
}

fn check_family(basis: &BetaBasis, want: &str, ok: bool) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::UnsupportedAction(format!(
            "{want} spectral integral does not apply to {:?}",
            basis.action
        )))
    }
}

fn check_positive(order: usize, lambda: f64, xi: f64) -> Result<()> {
    if order == 0 {
        return Err(Error::InvalidParameter("rule order must be positive".into()));
    }
    if lambda <= -1.0 {
        return Err(Error::InvalidParameter("weight exponent must exceed -1".into()));
    }
    if xi <= 0.0 {
        return Err(Error::InvalidParameter("xi must be positive".into()));
    }
    Ok(())
}

/// Elliptic eigenvalue, orbit-side form: nested Dirichlet substitution on the
/// radial simplex with the monomial density `x^p (1-|x|)^lambda` absorbed
/// into per-axis Jacobi weights.
pub fn gamma_elliptic_beta<F>(
    basis: &BetaBasis,
    lambda: f64,
    p: &[usize],
    profile: &F,
    order: usize,
) -> Result<C64>
where
    F: Fn(&[f64]) -> C64 + ?Sized,
{
    let n = basis.action.n();
    check_family(basis, "elliptic", matches!(basis.action, GroupAction::Elliptic(_)))?;
    check_positive(order, lambda, 1.0)?;
    if p.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: p.len() });
    }
    let total: usize = p.iter().sum();
    let rules: Vec<GaussRule> = (0..n)
        .map(|i| {
            let tail: usize = p[i + 1..].iter().sum();
            gauss_jacobi_01(
                order,
                lambda + (n - 1 - i) as f64 + tail as f64,
                p[i] as f64,
            )
        })
        .collect::<Result<_>>()?;
    let mut u = vec![0.0; n];
    let s = tensor_sum(&rules, |t| {
        let mut rem = 1.0;
        for j in 0..n {
            u[j] = t[j] * rem;
            rem *= 1.0 - t[j];
        }
        // u currently holds x; divide by 1-|x| = rem
        for x in u.iter_mut() {
            *x /= rem;
        }
        profile(&pairings(basis, &u))
    });
    let pref = (ln_gamma(n as f64 + total as f64 + lambda + 1.0)
        - ln_multi_factorial(p)
        - ln_gamma(lambda + 1.0))
    .exp();
    Ok(s * pref)
}

/// Elliptic eigenvalue, moment-image form: polar splitting `u = rho theta`
/// of the orthant with a Jacobi rule in `rho/(1+rho)` and a Dirichlet rule
/// on the direction simplex.
pub fn gamma_elliptic_moment<F>(
    basis: &BetaBasis,
    lambda: f64,
    p: &[usize],
    profile: &F,
    order: usize,
) -> Result<C64>
where
    F: Fn(&[f64]) -> C64 + ?Sized,
{
    let n = basis.action.n();
    check_family(basis, "elliptic", matches!(basis.action, GroupAction::Elliptic(_)))?;
    check_positive(order, lambda, 1.0)?;
    if p.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: p.len() });
    }
    let total: usize = p.iter().sum();
    let mut rules = vec![gauss_jacobi_01(order, lambda, (total + n - 1) as f64)?];
    for i in 0..n - 1 {
        let tail: usize = p[i + 1..].iter().sum();
        rules.push(gauss_jacobi_01(
            order,
            tail as f64 + (n - 2 - i) as f64,
            p[i] as f64,
        )?);
    }
    let mut u = vec![0.0; n];
    let s = tensor_sum(&rules, |vals| {
        let rho = vals[0] / (1.0 - vals[0]);
        let mut rem = 1.0;
        for j in 0..n - 1 {
            u[j] = rho * vals[j + 1] * rem;
            rem *= 1.0 - vals[j + 1];
        }
        u[n - 1] = rho * rem;
        profile(&pairings(basis, &u))
    });
    let pref = (ln_gamma(n as f64 + total as f64 + lambda + 1.0)
        - ln_multi_factorial(p)
        - ln_gamma(lambda + 1.0))
    .exp();
    Ok(s * pref)
}

/// Parabolic eigenvalue at `(p, xi)`, orbit-side form: tensor Laguerre in the
/// orbit radii with the arguments `(2 <r', v'> + v_n) / (2 r_n)`.
pub fn gamma_parabolic_beta<F>(
    basis: &BetaBasis,
    lambda: f64,
    p: &[usize],
    xi: f64,
    profile: &F,
    order: usize,
) -> Result<C64>
where
    F: Fn(&[f64]) -> C64 + ?Sized,
{
    let n = basis.action.n();
    check_family(basis, "parabolic", matches!(basis.action, GroupAction::Parabolic(_)))?;
    check_positive(order, lambda, xi)?;
    if p.len() != n - 1 {
        return Err(Error::DimensionMismatch { expected: n - 1, got: p.len() });
    }
    let mut rules: Vec<GaussRule> = p
        .iter()
        .map(|&pj| gauss_laguerre(order, pj as f64))
        .collect::<Result<_>>()?;
    rules.push(gauss_laguerre(order, lambda)?);
    let vectors = basis.vectors().to_vec();
    let s = tensor_sum(&rules, |y| {
        let rn = y[n - 1] / (2.0 * xi);
        let args: Vec<f64> = vectors
            .iter()
            .map(|v| {
                let mut num = v[n - 1];
                for j in 0..n - 1 {
                    num += 2.0 * v[j] * (y[j] / (2.0 * xi));
                }
                num / (2.0 * rn)
            })
            .collect();
        profile(&args)
    });
    let pref = (-ln_multi_factorial(p) - ln_gamma(lambda + 1.0)).exp();
    Ok(s * pref)
}

/// Parabolic eigenvalue, moment-image form: outer Laguerre in `v = xi / u_n`
/// and inner Laguerre rules for the rotation coordinates `u_j = y_j / v`.
pub fn gamma_parabolic_moment<F>(
    basis: &BetaBasis,
    lambda: f64,
    p: &[usize],
    xi: f64,
    profile: &F,
    order: usize,
) -> Result<C64>
where
    F: Fn(&[f64]) -> C64 + ?Sized,
{
    let n = basis.action.n();
    check_family(basis, "parabolic", matches!(basis.action, GroupAction::Parabolic(_)))?;
    check_positive(order, lambda, xi)?;
    if p.len() != n - 1 {
        return Err(Error::DimensionMismatch { expected: n - 1, got: p.len() });
    }
    let mut rules = vec![gauss_laguerre(order, lambda)?];
    for &pj in p {
        rules.push(gauss_laguerre(order, pj as f64)?);
    }
    let mut u = vec![0.0; n];
    let s = tensor_sum(&rules, |vals| {
        let v = vals[0];
        for j in 0..n - 1 {
            u[j] = vals[j + 1] / v;
        }
        u[n - 1] = xi / v;
        profile(&pairings(basis, &u))
    });
    let pref = (-ln_multi_factorial(p) - ln_gamma(lambda + 1.0)).exp();
    Ok(s * pref)
}

/// Nilpotent eigenvalue at `(y, xi)`, orbit-side form: Hermite in the
/// centered translation variables and Laguerre in the vertical radius.
pub fn gamma_nilpotent_beta<F>(
    basis: &BetaBasis,
    lambda: f64,
    y: &[f64],
    xi: f64,
    profile: &F,
    order: usize,
) -> Result<C64>
where
    F: Fn(&[f64]) -> C64 + ?Sized,
{
    let n = basis.action.n();
    check_family(basis, "nilpotent", matches!(basis.action, GroupAction::Nilpotent(_)))?;
    check_positive(order, lambda, xi)?;
    if y.len() != n - 1 {
        return Err(Error::DimensionMismatch { expected: n - 1, got: y.len() });
    }
    let mut rules: Vec<GaussRule> = (0..n - 1)
        .map(|_| gauss_hermite(order))
        .collect::<Result<_>>()?;
    rules.push(gauss_laguerre(order, lambda)?);
    let sxi = xi.sqrt();
    let mut u = vec![0.0; n];
    let s = tensor_sum(&rules, |vals| {
        let rn = vals[n - 1] / (2.0 * xi);
        for j in 0..n - 1 {
            let x = (y[j] - vals[j]) / sxi;
            u[j] = x / rn;
        }
        u[n - 1] = 0.5 / rn;
        profile(&pairings(basis, &u))
    });
    let pref = (-ln_gamma(lambda + 1.0)).exp()
        / std::f64::consts::PI.powf((n - 1) as f64 / 2.0);
    Ok(s * pref)
}

/// Nilpotent eigenvalue, moment-image form.
pub fn gamma_nilpotent_moment<F>(
    basis: &BetaBasis,
    lambda: f64,
    y: &[f64],
    xi: f64,
    profile: &F,
    order: usize,
) -> Result<C64>
where
    F: Fn(&[f64]) -> C64 + ?Sized,
{
    let n = basis.action.n();
    check_family(basis, "nilpotent", matches!(basis.action, GroupAction::Nilpotent(_)))?;
    check_positive(order, lambda, xi)?;
    if y.len() != n - 1 {
        return Err(Error::DimensionMismatch { expected: n - 1, got: y.len() });
    }
    let mut rules = vec![gauss_laguerre(order, lambda)?];
    for _ in 0..n - 1 {
        rules.push(gauss_hermite(order)?);
    }
    let sxi = xi.sqrt();
    let mut u = vec![0.0; n];
    let s = tensor_sum(&rules, |vals| {
        let v = vals[0];
        for j in 0..n - 1 {
            u[j] = 2.0 * sxi * (y[j] - vals[j + 1]) / v;
        }
        u[n - 1] = xi / v;
        profile(&pairings(basis, &u))
    });
    let pref = (-ln_gamma(lambda + 1.0)).exp()
        / std::f64::consts::PI.powf((n - 1) as f64 / 2.0);
    Ok(s * pref)
}

/// Quasi-nilpotent eigenvalue at `(p, y, xi)`, orbit-side form: Laguerre in
/// the rotation radii, Hermite in the translations, Laguerre in the vertical.
pub fn gamma_quasinilpotent_beta<F>(
    basis: &BetaBasis,
    lambda: f64,
    p: &[usize],
    y: &[f64],
    xi: f64,
    profile: &F,
    order: usize,
) -> Result<C64>
where
    F: Fn(&[f64]) -> C64 + ?Sized,
{
    let (n, k) = match basis.action {
        GroupAction::QuasiNilpotent(n, k) => (n, k),
        _ => return check_family(basis, "quasi-nilpotent", false).map(|_| unreachable!()),
    };
    check_positive(order, lambda, xi)?;
    if p.len() != k {
        return Err(Error::DimensionMismatch { expected: k, got: p.len() });
    }
    if y.len() != n - k - 1 {
        return Err(Error::DimensionMismatch { expected: n - k - 1, got: y.len() });
    }
    let mut rules: Vec<GaussRule> = p
        .iter()
        .map(|&pj| gauss_laguerre(order, pj as f64))
        .collect::<Result<_>>()?;
    for _ in 0..n - k - 1 {
        rules.push(gauss_hermite(order)?);
    }
    rules.push(gauss_laguerre(order, lambda)?);
    let sxi = xi.sqrt();
    let mut u = vec![0.0; n];
    let s = tensor_sum(&rules, |vals| {
        let rn = vals[n - 1] / (2.0 * xi);
        for j in 0..k {
            let rj = vals[j] / (2.0 * xi);
            u[j] = rj / rn;
        }
        for j in 0..n - k - 1 {
            let x = (y[j] - vals[k + j]) / sxi;
            u[k + j] = x / rn;
        }
        u[n - 1] = 0.5 / rn;
        profile(&pairings(basis, &u))
    });
    let pref = (-ln_multi_factorial(p) - ln_gamma(lambda + 1.0)).exp()
        / std::f64::consts::PI.powf((n - k - 1) as f64 / 2.0);
    Ok(s * pref)
}

/// Quasi-nilpotent eigenvalue, moment-image form.
pub fn gamma_quasinilpotent_moment<F>(
    basis: &BetaBasis,
    lambda: f64,
    p: &[usize],
    y: &[f64],
    xi: f64,
    profile: &F,
    order: usize,
) -> Result<C64>
where
    F: Fn(&[f64]) -> C64 + ?Sized,
{
    let (n, k) = match basis.action {
        GroupAction::QuasiNilpotent(n, k) => (n, k),
        _ => return check_family(basis, "quasi-nilpotent", false).map(|_| unreachable!()),
    };
    check_positive(order, lambda, xi)?;
    if p.len() != k {
        return Err(Error::DimensionMismatch { expected: k, got: p.len() });
    }
    if y.len() != n - k - 1 {
        return Err(Error::DimensionMismatch { expected: n - k - 1, got: y.len() });
    }
    let mut rules = vec![gauss_laguerre(order, lambda)?];
    for &pj in p {
        rules.push(gauss_laguerre(order, pj as f64)?);
    }
    for _ in 0..n - k - 1 {
        rules.push(gauss_hermite(order)?);
    }
    let sxi = xi.sqrt();
    let mut u = vec![0.0; n];
    let s = tensor_sum(&rules, |vals| {
        let v = vals[0];
        for j in 0..k {
            u[j] = vals[1 + j] / v;
        }
        for j in 0..n - k - 1 {
            u[k + j] = 2.0 * sxi * (y[j] - vals[1 + k + j]) / v;
        }
        u[n - 1] = xi / v;
        profile(&pairings(basis, &u))
    });
    let pref = (-ln_multi_factorial(p) - ln_gamma(lambda + 1.0)).exp()
        / std::f64::consts::PI.powf((n - k - 1) as f64 / 2.0);
    Ok(s * pref)
}

/// Hyperbolic orbit coordinates on the Siegel domain: with
/// `zeta = z_n - i |z'|^2`, returns `(f_1, ..., f_{n-1}, f_n)` where
/// `f_j = |z_j| / sqrt(|z'|^2 + |zeta|)` and `f_n = arg zeta in (0, pi)`.
pub fn hyperbolic_coordinates(z: &Point) -> Result<Vec<f64>> {
    let n = match z.domain {
        Domain::Siegel(n) => n,
        Domain::Ball(_) => {
            return Err(Error::InvalidParameter(
                "hyperbolic coordinates live on the Siegel domain".into(),
            ))
        }
    };
    let horiz: f64 = z.coords[..n - 1].iter().map(|c| c.norm_sqr()).sum();
    let zeta = z.coords[n - 1] - Complex64::new(0.0, horiz);
    let denom = (horiz + zeta.norm()).sqrt();
    let mut f: Vec<f64> = z.coords[..n - 1].iter().map(|c| c.norm() / denom).collect();
    f.push(zeta.arg());
    Ok(f)
}

/// Residuals of the two coordinate identities that tie the hyperbolic chart
/// to the moment data: `Re z_n / rho = cot f_n` and
/// `|z_j|^2 / rho = f_j^2 csc(f_n) / (1 - |f'|^2)`.
pub fn hyperbolic_identity_gaps(z: &Point) -> Result<(f64, f64)> {
    let n = z.dim();
    let f = hyperbolic_coordinates(z)?;
    let rho = siegel_defect(&z.coords);
    let fn_ = f[n - 1];
    let first = (z.coords[n - 1].re / rho - fn_.cos() / fn_.sin()).abs();
    let fsq: f64 = f[..n - 1].iter().map(|x| x * x).sum();
    let mut second: f64 = 0.0;
    for j in 0..n - 1 {
        let lhs = z.coords[j].norm_sqr() / rho;
        let rhs = f[j] * f[j] / (fn_.sin() * (1.0 - fsq));
        second = second.max((lhs - rhs).abs());
    }
    Ok((first, second))
}

/// Spectral parameter tuple of one eigenvalue evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum SpectralParams {
    Elliptic { p: Vec<usize> },
    Parabolic { p: Vec<usize>, xi: f64 },
    Nilpotent { y: Vec<f64>, xi: f64 },
    QuasiNilpotent { p: Vec<usize>, y: Vec<f64>, xi: f64 },
}

/// Both eigenvalue routes for a symbol at one spectral parameter.
pub fn gamma_pair(
    spec: &SymbolSpec,
    lambda: f64,
    params: &SpectralParams,
    order: usize,
) -> Result<(C64, C64)> {
    let basis = &spec.basis;
    let f = spec.profile.as_ref();
    match params {
        SpectralParams::Elliptic { p } => Ok((
            gamma_elliptic_beta(basis, lambda, p, f, order)?,
            gamma_elliptic_moment(basis, lambda, p, f, order)?,
        )),
        SpectralParams::Parabolic { p, xi } => Ok((
            gamma_parabolic_beta(basis, lambda, p, *xi, f, order)?,
            gamma_parabolic_moment(basis, lambda, p, *xi, f, order)?,
        )),
        SpectralParams::Nilpotent { y, xi } => Ok((
            gamma_nilpotent_beta(basis, lambda, y, *xi, f, order)?,
            gamma_nilpotent_moment(basis, lambda, y, *xi, f, order)?,
        )),
        SpectralParams::QuasiNilpotent { p, y, xi } => Ok((
            gamma_quasinilpotent_beta(basis, lambda, p, y, *xi, f, order)?,
            gamma_quasinilpotent_moment(basis, lambda, p, y, *xi, f, order)?,
        )),
    }
}

/// A batch of eigenvalue evaluations for one symbol.
#[derive(Debug, Clone)]
pub struct SpectrumQuery {
    pub spec: SymbolSpec,
    pub lambda: f64,
    pub order: usize,
}

/// One evaluated row.
#[derive(Debug, Clone)]
pub struct SpectrumRow {
    pub params: SpectralParams,
    pub gamma_beta: C64,
    pub gamma_moment: C64,
}

/// Eigenvalue table with both routes per parameter.
#[derive(Debug, Clone)]
pub struct SpectrumTable {
    pub symbol: String,
    pub lambda: f64,
    pub rows: Vec<SpectrumRow>,
}

impl SpectrumQuery {
    pub fn evaluate(&self, params: &[SpectralParams]) -> Result<SpectrumTable> {
        let rows = params
            .iter()
            .map(|pr| {
                let (b, m) = gamma_pair(&self.spec, self.lambda, pr, self.order)?;
                Ok(SpectrumRow { params: pr.clone(), gamma_beta: b, gamma_moment: m })
            })
            .collect::<Result<_>>()?;
        Ok(SpectrumTable { symbol: self.spec.name.clone(), lambda: self.lambda, rows })
    }
}

fn join_usize(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn join_f64(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:.16e}")).collect::<Vec<_>>().join(" ")
}

impl SpectrumTable {
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("# spectrum symbol={} lambda={}\n", self.symbol, self.lambda));
        s.push_str("p,y,xi,re_beta,im_beta,re_moment,im_moment\n");
        for row in &self.rows {
            let (p, y, xi) = match &row.params {
                SpectralParams::Elliptic { p } => (join_usize(p), String::new(), String::new()),
                SpectralParams::Parabolic { p, xi } => {
                    (join_usize(p), String::new(), format!("{xi:.16e}"))
                }
                SpectralParams::Nilpotent { y, xi } => {
                    (String::new(), join_f64(y), format!("{xi:.16e}"))
                }
                SpectralParams::QuasiNilpotent { p, y, xi } => {
                    (join_usize(p), join_f64(y), format!("{xi:.16e}"))
                }
            };
            s.push_str(&format!(
                "{p},{y},{xi},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                row.gamma_beta.re, row.gamma_beta.im, row.gamma_moment.re, row.gamma_moment.im
            ));
        }
        s
    }
}
