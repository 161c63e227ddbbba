//! Truncated Toeplitz operators on the weighted Bergman space of the ball,
//! assembled by quadrature in the monomial basis.
//!
//! The matrix entry of a symbol `a` between normalized monomials `z^p, z^q`
//! is `int a z^q conj(z^p) dv_lambda / (|z^p| |z^q|)`. On the tensor rule
//! the angular part is a finite Fourier sum, so the assembly first collapses
//! each radial node's angular grid to the moment transform
//! `A_m(r) = sum_theta a(r e^{i theta}) e^{i m.theta}` for `|m_j| <= degree`
//! and then accumulates radial contributions entry by entry with compensated
//! summation.

use crate::domains::{cayley_to_siegel_coords, Domain};
use crate::error::{Error, Result};
use crate::moment::{BetaBasis, SymbolSpec};
use crate::quadrature::{ball_full_rule, KahanSum};
use crate::special::{ln_gamma, ln_multi_factorial, multi_degree};
use crate::C64;
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Squared `A^2_lambda(B^n)` norm of the monomial `z^p`:
/// `p! Gamma(n+1+lambda) / Gamma(n+|p|+lambda+1)`.
pub fn monomial_norm_sq(n: usize, lambda: f64, p: &[usize]) -> f64 {
    let nf = n as f64;
    (ln_multi_factorial(p) + ln_gamma(nf + 1.0 + lambda)
        - ln_gamma(nf + multi_degree(p) as f64 + lambda + 1.0))
    .exp()
}

/// Multi-indices `|p| <= degree` in graded order; within a degree the first
/// coordinate decreases, so `(1,0)` precedes `(0,1)`.
pub fn enumerate_basis(n: usize, degree: usize) -> Vec<Vec<usize>> {
    fn fill(slots: usize, total: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=total).rev() {
            prefix.push(first);
            fill(slots - 1, total - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for deg in 0..=degree {
        let mut prefix = Vec::with_capacity(n);
        fill(n, deg, &mut prefix, &mut out);
    }
    out
}

/// A truncated Toeplitz matrix in the graded monomial basis.
#[derive(Debug, Clone)]
pub struct ToeplitzMatrix {
    pub n: usize,
    pub lambda: f64,
    pub degree: usize,
    pub basis: Vec<Vec<usize>>,
    /// Row index is the bra multi-index `p`, column the ket `q`.
    pub data: DMatrix<C64>,
    pub symbol_name: String,
}

impl ToeplitzMatrix {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.dim()).map(|i| self.data[(i, i)]).collect()
    }

    /// Largest deviation from Hermitian symmetry; a real symbol gives a
    /// Hermitian operator, so this is a pure quadrature diagnostic.
    pub fn hermitian_residual(&self) -> f64 {
        let d = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..=i {
                worst = worst.max((self.data[(i, j)] - self.data[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Largest off-diagonal magnitude; vanishes for torus-invariant symbols.
    pub fn offdiagonal_mass(&self) -> f64 {
        let d = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    worst = worst.max(self.data[(i, j)].norm());
                }
            }
        }
        worst
    }

    /// Indices of basis elements of total degree `<= degree - buffer`.
    pub fn central_indices(&self, buffer: usize) -> Vec<usize> {
        let cut = self.degree.saturating_sub(buffer);
        self.basis
            .iter()
            .enumerate()
            .filter(|(_, p)| multi_degree(p) <= cut)
            .map(|(i, _)| i)
            .collect()
    }

    /// Row-major CSV dump with interleaved real/imaginary columns and the
    /// basis in a leading comment.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!(
            "# toeplitz n={} lambda={} degree={} symbol={}\n",
            self.n, self.lambda, self.degree, self.symbol_name
        ));
        let labels: Vec<String> = self
            .basis
            .iter()
            .map(|p| p.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        s.push_str(&format!("# basis: {}\n", labels.join(", ")));
        s.push_str("p");
        for l in &labels {
            s.push_str(&format!(",re[{l}],im[{l}]"));
        }
        s.push('\n');
        for (i, l) in labels.iter().enumerate() {
            s.push_str(l);
            for j in 0..self.dim() {
                let v = self.data[(i, j)];
                s.push_str(&format!(",{:.16e},{:.16e}", v.re, v.im));
            }
            s.push('\n');
        }
        s
    }
}

/// Assembly controls. `angular_axes` declares which angle coordinates the
/// symbol actually depends on; axes marked `false` are integrated exactly by
/// rotation invariance with a single sample. `None` treats every axis as
/// dependent.
#[derive(Debug, Clone)]
pub struct AssemblyOptions {
    pub radial_order: usize,
    pub angular_order: usize,
    pub angular_axes: Option<Vec<bool>>,
}

impl Default for AssemblyOptions {
    fn default() -> Self {
        AssemblyOptions { radial_order: 40, angular_order: 64, angular_axes: None }
    }
}

/// Angle coordinates a transported symbol depends on, derived from which
/// chart directions its basis uses. Rotation-type coordinate functions pull
/// back to torus-invariant functions; translation-type ones involve their own
/// angle and the last one; the vertical and hyperbolic-scale functions
/// involve only the last angle.
pub fn transported_angular_axes(basis: &BetaBasis) -> Result<Vec<bool>> {
    use crate::group_actions::GroupAction;
    let n = basis.action.n();
    let rotations = match basis.action {
        GroupAction::Elliptic(_) => n,
        GroupAction::Parabolic(_) | GroupAction::Hyperbolic(_) => n - 1,
        GroupAction::Nilpotent(_) => 0,
        GroupAction::QuasiNilpotent(_, k) => k,
    };
    let mut dep = vec![false; n];
    for v in basis.vectors() {
        for (j, &c) in v.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            if j >= rotations && j < n - 1 {
                dep[j] = true;
                dep[n - 1] = true;
            } else if j == n - 1 && basis.action != GroupAction::Elliptic(n) {
                dep[n - 1] = true;
            }
        }
    }
    Ok(dep)
}

/// Pulls a Siegel-side symbol back to the ball through the Cayley transform.
pub fn transport_symbol(spec: SymbolSpec) -> Result<impl Fn(&[C64]) -> C64> {
    let n = spec.basis.action.n();
    match spec.basis.action.domain() {
        Domain::Siegel(_) => {}
        Domain::Ball(_) => {
            return Err(Error::InvalidParameter(
                "transport expects a Siegel-side symbol".into(),
            ))
        }
    }
    Ok(move |z: &[C64]| {
        let w = cayley_to_siegel_coords(z);
        spec.eval_coords(Domain::Siegel(n), &w)
    })
}

struct PairEntry {
    row: u32,
    col: u32,
    mode: u32,
    exp_at: u32,
}

/// Assembles the truncated Toeplitz matrix of a symbol given in ball
/// coordinates. The angular grid must resolve all needed Fourier modes:
/// `angular_order >= 2 degree + 2`.
pub fn assemble_toeplitz<F>(
    symbol: F,
    n: usize,
    lambda: f64,
    degree: usize,
    opts: &AssemblyOptions,
    name: &str,
) -> Result<ToeplitzMatrix>
where
    F: Fn(&[C64]) -> C64,
{
    if n == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    if opts.angular_order < 2 * degree + 2 {
        return Err(Error::InvalidParameter(format!(
            "angular order {} cannot resolve modes of degree {degree}",
            opts.angular_order
        )));
    }
    if 2 * opts.radial_order < 2 * degree + 2 {
        return Err(Error::InvalidParameter(format!(
            "radial order {} cannot integrate degree {degree} pairs exactly",
            opts.radial_order
        )));
    }
    let dep = match &opts.angular_axes {
        Some(d) => {
            if d.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: d.len() });
            }
            d.clone()
        }
        None => vec![true; n],
    };

    let basis = enumerate_basis(n, degree);
    let dim = basis.len();
    let norms: Vec<f64> = basis.iter().map(|p| monomial_norm_sq(n, lambda, p).sqrt()).collect();

    let m_ang = opts.angular_order;
    let d = degree;
    let mode_len = 2 * d + 1;
    let mode_shape: Vec<usize> = dep.iter().map(|&x| if x { mode_len } else { 1 }).collect();
    let grid_shape: Vec<usize> = dep.iter().map(|&x| if x { m_ang } else { 1 }).collect();
    let mode_strides = strides(&mode_shape);

    // phase_table[m_idx][t] = exp(2 pi i t (m_idx - d) / M)
    let phase_table: Vec<Vec<C64>> = (0..mode_len)
        .map(|mi| {
            let mode = mi as i64 - d as i64;
            (0..m_ang)
                .map(|t| {
                    let k = (t as i64 * mode).rem_euclid(m_ang as i64);
                    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / m_ang as f64)
                })
                .collect()
        })
        .collect();

    // entry worklist: modes on independent axes must vanish, the angular
    // integral kills them exactly
    let mut pairs = Vec::new();
    let mut exps: Vec<u8> = Vec::new();
    for (i, p) in basis.iter().enumerate() {
        'cols: for (j, q) in basis.iter().enumerate() {
            let mut mode_flat = 0usize;
            for axis in 0..n {
                let m = q[axis] as i64 - p[axis] as i64;
                if dep[axis] {
                    mode_flat += (m + d as i64) as usize * mode_strides[axis];
                } else if m != 0 {
                    continue 'cols;
                }
            }
            let exp_at = exps.len() as u32;
            for axis in 0..n {
                exps.push((p[axis] + q[axis]) as u8);
            }
            pairs.push(PairEntry { row: i as u32, col: j as u32, mode: mode_flat as u32, exp_at });
        }
    }

    let rule = ball_full_rule(n, lambda, opts.radial_order, m_ang)?;
    let ang_norm: f64 = dep
        .iter()
        .map(|&x| {
            if x {
                2.0 * std::f64::consts::PI / m_ang as f64
            } else {
                2.0 * std::f64::consts::PI
            }
        })
        .product();

    let mut sums: Vec<(KahanSum, KahanSum)> = (0..dim * dim).map(|_| Default::default()).collect();
    let mut pow = vec![vec![0.0f64; 2 * d + 1]; n];
    let grid_len: usize = grid_shape.iter().product();
    let mut grid = vec![Complex64::default(); grid_len];
    let mut z = vec![Complex64::default(); n];
    let phases_unit: Vec<C64> = (0..m_ang)
        .map(|t| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * t as f64 / m_ang as f64))
        .collect();

    for (radii, w_rad) in rule.radial_nodes() {
        for j in 0..n {
            pow[j][0] = 1.0;
            for k in 1..=2 * d {
                pow[j][k] = pow[j][k - 1] * radii[j];
            }
        }
        // sample the symbol on the (dependent-axes) angular grid
        let mut t_idx = vec![0usize; n];
        for cell in grid.iter_mut() {
            for j in 0..n {
                z[j] = radii[j] * phases_unit[t_idx[j]];
            }
            *cell = symbol(&z);
            for axis in (0..n).rev() {
                t_idx[axis] += 1;
                if t_idx[axis] < grid_shape[axis] {
                    break;
                }
                t_idx[axis] = 0;
            }
        }
        let modes = angular_moment_transform(&grid, &grid_shape, &mode_shape, &phase_table);
        let w_total = w_rad * ang_norm;
        for pe in &pairs {
            let f = modes[pe.mode as usize];
            let mut factor = w_total;
            for axis in 0..n {
                factor *= pow[axis][exps[pe.exp_at as usize + axis] as usize];
            }
            let idx = pe.row as usize * dim + pe.col as usize;
            sums[idx].0.add(f.re * factor);
            sums[idx].1.add(f.im * factor);
        }
    }

    let data = DMatrix::from_fn(dim, dim, |i, j| {
        let (re, im) = &sums[i * dim + j];
        Complex64::new(re.value(), im.value()) / (norms[i] * norms[j])
    });
    Ok(ToeplitzMatrix { n, lambda, degree, basis, data, symbol_name: name.to_string() })
}

fn strides(shape: &[usize]) -> Vec<usize> {
    let n = shape.len();
    let mut s = vec![1usize; n];
    for axis in (0..n - 1).rev() {
        s[axis] = s[axis + 1] * shape[axis + 1];
    }
    s
}

/// Axis-by-axis partial DFT from the angular grid to the mode tensor; axes
/// of grid size 1 stay single-mode (`m = 0`).
fn angular_moment_transform(
    grid: &[C64],
    grid_shape: &[usize],
    mode_shape: &[usize],
    phase_table: &[Vec<C64>],
) -> Vec<C64> {
    let n = grid_shape.len();
    let mut current = grid.to_vec();
    let mut shape = grid_shape.to_vec();
    for axis in 0..n {
        if grid_shape[axis] == 1 {
            continue;
        }
        let m_out = mode_shape[axis];
        let m_in = shape[axis];
        let inner: usize = shape[axis + 1..].iter().product();
        let outer: usize = shape[..axis].iter().product();
        let mut next = vec![Complex64::default(); outer * m_out * inner];
        for o in 0..outer {
            for (mi, row) in phase_table.iter().enumerate() {
                for i in 0..inner {
                    let mut acc = Complex64::default();
                    for t in 0..m_in {
                        acc += current[(o * m_in + t) * inner + i] * row[t];
                    }
                    next[(o * m_out + mi) * inner + i] = acc;
                }
            }
        }
        current = next;
        shape[axis] = m_out;
    }
    current
}

/// Frobenius norm of the central block of `AB - BA`, divided by the block
/// dimension. The block keeps basis elements of degree `<= degree - buffer`,
/// discarding the truncation boundary where the finite section deviates from
/// the full operator.
pub fn commutator_norm(a: &ToeplitzMatrix, b: &ToeplitzMatrix, buffer: usize) -> Result<f64> {
    if a.n != b.n || a.degree != b.degree || a.lambda != b.lambda {
        return Err(Error::InvalidParameter(
            "commutator requires matching truncations".into(),
        ));
    }
    let comm = &a.data * &b.data - &b.data * &a.data;
    let idx = a.central_indices(buffer);
    if idx.is_empty() {
        return Err(Error::InvalidParameter("buffer removed every basis element".into()));
    }
    let mut frob = 0.0;
    for &i in &idx {
        for &j in &idx {
            frob += comm[(i, j)].norm_sqr();
        }
    }
    Ok(frob.sqrt() / idx.len() as f64)
}
