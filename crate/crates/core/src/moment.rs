//! Moment maps of the action families, restriction to subgroups cut out by a
//! basis of Lie algebra directions, the induced coordinate functions, and
//! symbols built from them.
//!
//! A subgroup is described by a `BetaBasis`: linearly independent vectors
//! `v_1, ..., v_m` in the additive chart `R^n`. The restricted moment map
//! collects the pairings `<mu(z), v_j>`; the coordinate functions flip the
//! sign, `a_j = -<mu(z), v_j>`, which makes them positive for rotation-type
//! directions.

use crate::domains::{Domain, Point};
use crate::error::{Error, Result};
use crate::group_actions::{GroupAction, TransportOutcome};
use crate::symplectic::moment_vector;
use crate::C64;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::fmt;
use std::sync::Arc;

/// Relative singular value below which a basis counts as rank deficient.
const RANK_TOL: f64 = 1e-10;

/// A set of linearly independent Lie algebra directions of an action family.
#[derive(Debug, Clone)]
pub struct BetaBasis {
    pub action: GroupAction,
    vectors: Vec<Vec<f64>>,
}

impl BetaBasis {
    pub fn new(action: GroupAction, vectors: Vec<Vec<f64>>) -> Result<Self> {
        action.validate()?;
        let n = action.n();
        if vectors.is_empty() || vectors.len() > n {
            return Err(Error::InvalidParameter(format!(
                "need between 1 and {n} basis vectors, got {}",
                vectors.len()
            )));
        }
        for v in &vectors {
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: v.len() });
            }
        }
        let basis = BetaBasis { action, vectors };
        let sv = basis.singular_values();
        let max = sv[0].max(f64::MIN_POSITIVE);
        let rank = sv.iter().filter(|&&s| s > RANK_TOL * max).count();
        if rank < basis.vectors.len() {
            return Err(Error::RankDeficient { rank, vectors: basis.vectors.len() });
        }
        Ok(basis)
    }

    /// The coordinate directions `e_1, ..., e_m`.
    pub fn canonical(action: GroupAction, m: usize) -> Result<Self> {
        let n = action.n();
        let vectors = (0..m)
            .map(|j| {
                let mut v = vec![0.0; n];
                v[j] = 1.0;
                v
            })
            .collect();
        BetaBasis::new(action, vectors)
    }

    /// Coordinate directions at the given indices (0-based).
    pub fn coordinate_axes(action: GroupAction, indices: &[usize]) -> Result<Self> {
        let n = action.n();
        let vectors = indices
            .iter()
            .map(|&j| {
                if j >= n {
                    return Err(Error::InvalidParameter(format!(
                        "axis {j} out of range for dimension {n}"
                    )));
                }
                let mut v = vec![0.0; n];
                v[j] = 1.0;
                Ok(v)
            })
            .collect::<Result<_>>()?;
        BetaBasis::new(action, vectors)
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    /// Stacked as an `m x n` matrix, rows the basis vectors.
    pub fn matrix(&self) -> DMatrix<f64> {
        let m = self.vectors.len();
        let n = self.action.n();
        DMatrix::from_fn(m, n, |i, j| self.vectors[i][j])
    }

    fn singular_values(&self) -> Vec<f64> {
        let a = self.matrix();
        let gram = &a * a.transpose();
        let eig = nalgebra::linalg::SymmetricEigen::new(gram);
        let mut sv: Vec<f64> = eig.eigenvalues.iter().map(|&e| e.max(0.0).sqrt()).collect();
        sv.sort_by(|x, y| y.partial_cmp(x).unwrap());
        sv
    }

    /// Pairwise orthogonality of the basis vectors.
    pub fn is_orthogonal(&self, tol: f64) -> bool {
        for i in 0..self.vectors.len() {
            for j in 0..i {
                let dot: f64 = self.vectors[i]
                    .iter()
                    .zip(&self.vectors[j])
                    .map(|(a, b)| a * b)
                    .sum();
                if dot.abs() > tol {
                    return false;
                }
            }
        }
        true
    }

    /// Orthonormal spanning set of the kernel of the pairing map
    /// `x -> (<x, v_j>)_j`, i.e. the orthogonal complement of the span.
    pub fn kernel(&self) -> Vec<Vec<f64>> {
        let a = self.matrix();
        let n = self.action.n();
        let gram = a.transpose() * &a; // n x n
        let eig = nalgebra::linalg::SymmetricEigen::new(gram);
        let max = eig.eigenvalues.iter().cloned().fold(f64::MIN_POSITIVE, f64::max);
        let mut out = Vec::new();
        for j in 0..n {
            if eig.eigenvalues[j] < RANK_TOL * RANK_TOL * max + f64::MIN_POSITIVE {
                out.push(eig.eigenvectors.column(j).iter().cloned().collect());
            }
        }
        out
    }
}

/// Moment map of the full family in the additive chart.
pub fn moment_masg(action: GroupAction, z: &Point) -> Result<Vec<f64>> {
    moment_vector(action, z)
}

/// Restricted moment map: the pairings `<mu(z), v_j>`, one per basis vector.
pub fn moment_subgroup(basis: &BetaBasis, z: &Point) -> Result<Vec<f64>> {
    let mu = moment_vector(basis.action, z)?;
    Ok(basis
        .vectors
        .iter()
        .map(|v| v.iter().zip(&mu).map(|(a, b)| a * b).sum())
        .collect())
}

/// Orthogonal projection of a chart vector onto the span of the basis,
/// computed through the Gram matrix so the result does not depend on the
/// choice of spanning vectors.
pub fn project_orthogonal(basis: &BetaBasis, x: &[f64]) -> Result<Vec<f64>> {
    let n = basis.action.n();
    if x.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: x.len() });
    }
    let a = basis.matrix();
    let gram = &a * a.transpose();
    let inv = gram
        .try_inverse()
        .ok_or(Error::RankDeficient { rank: 0, vectors: basis.len() })?;
    let coeffs = inv * (&a * DVector::from_column_slice(x));
    let proj = a.transpose() * coeffs;
    Ok(proj.iter().cloned().collect())
}

/// The coordinate functions of the basis: `a_j(z) = -<mu(z), v_j>`.
pub fn coordinate_functions(basis: &BetaBasis, z: &Point) -> Result<Vec<f64>> {
    Ok(moment_subgroup(basis, z)?.iter().map(|m| -m).collect())
}

/// A symbol: a profile applied to the coordinate functions of a basis.
#[derive(Clone)]
pub struct SymbolSpec {
    pub basis: BetaBasis,
    pub profile: Arc<dyn Fn(&[f64]) -> C64 + Send + Sync>,
    pub name: String,
}

impl fmt::Debug for SymbolSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymbolSpec")
            .field("basis", &self.basis)
            .field("name", &self.name)
            .finish_non_exhaustive()
    }
}

impl SymbolSpec {
    pub fn new<F>(basis: BetaBasis, name: impl Into<String>, profile: F) -> Self
    where
        F: Fn(&[f64]) -> C64 + Send + Sync + 'static,
    {
        SymbolSpec { basis, profile: Arc::new(profile), name: name.into() }
    }

    pub fn eval(&self, z: &Point) -> Result<C64> {
        let a = coordinate_functions(&self.basis, z)?;
        Ok((self.profile)(&a))
    }

    /// Evaluates on raw coordinates without interior validation, for
    /// quadrature nodes that are inside by construction. Panics if the
    /// domain does not match the basis action.
    pub fn eval_coords(&self, domain: Domain, coords: &[C64]) -> C64 {
        let p = Point::raw(domain, coords.to_vec());
        let a = coordinate_functions(&self.basis, &p).expect("domain matches basis action");
        (self.profile)(&a)
    }
}

/// Evaluates a symbol at a point.
pub fn eval_symbol(spec: &SymbolSpec, z: &Point) -> Result<C64> {
    spec.eval(z)
}

/// An ordered partition of coordinate indices into consecutive blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub sizes: Vec<usize>,
}

impl Partition {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() || sizes.iter().any(|&s| s == 0) {
            return Err(Error::InvalidPartition("blocks must be nonempty".into()));
        }
        Ok(Partition { sizes })
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Indicator vectors of the blocks inside `R^n`, starting at `offset`.
    fn indicators(&self, n: usize, offset: usize) -> Result<Vec<Vec<f64>>> {
        if offset + self.total() > n {
            return Err(Error::InvalidPartition(format!(
                "partition of {} at offset {offset} exceeds dimension {n}",
                self.total()
            )));
        }
        let mut out = Vec::with_capacity(self.sizes.len());
        let mut pos = offset;
        for &s in &self.sizes {
            let mut v = vec![0.0; n];
            for j in pos..pos + s {
                v[j] = 1.0;
            }
            pos += s;
            out.push(v);
        }
        Ok(out)
    }
}

/// Basis of block-indicator vectors for the elliptic family: the partition
/// must cover all of `R^n`.
pub fn partition_beta_elliptic(n: usize, partition: &Partition) -> Result<BetaBasis> {
    if partition.total() != n {
        return Err(Error::InvalidPartition(format!(
            "elliptic partition must sum to {n}, got {}",
            partition.total()
        )));
    }
    BetaBasis::new(GroupAction::Elliptic(n), partition.indicators(n, 0)?)
}

/// Basis for the parabolic family: a partition of the `n-1` rotation
/// coordinates (block indicators) plus the vertical direction `e_n`.
pub fn partition_beta_parabolic(n: usize, partition: &Partition) -> Result<BetaBasis> {
    if partition.total() != n - 1 {
        return Err(Error::InvalidPartition(format!(
            "parabolic partition must sum to {}, got {}",
            n - 1,
            partition.total()
        )));
    }
    let mut vectors = partition.indicators(n, 0)?;
    let mut vert = vec![0.0; n];
    vert[n - 1] = 1.0;
    vectors.push(vert);
    BetaBasis::new(GroupAction::Parabolic(n), vectors)
}

/// Basis for the quasi-nilpotent family `(n, k)`: a partition of the `k`
/// rotation coordinates, all translation directions individually, and the
/// vertical direction.
pub fn partition_beta_quasinilpotent(n: usize, k: usize, partition: &Partition) -> Result<BetaBasis> {
    if partition.total() != k {
        return Err(Error::InvalidPartition(format!(
            "rotation partition must sum to {k}, got {}",
            partition.total()
        )));
    }
    let mut vectors = partition.indicators(n, 0)?;
    for j in k..n {
        let mut v = vec![0.0; n];
        v[j] = 1.0;
        vectors.push(v);
    }
    BetaBasis::new(GroupAction::QuasiNilpotent(n, k), vectors)
}

/// Canonical interior point with a prescribed moment vector; inverts the
/// moment map on a slice through the fibers (real nonnegative coordinates,
/// `Re z_n = 0` where free, `rho = 1` for the hyperbolic family).
pub fn point_from_moment(action: GroupAction, mu: &[f64]) -> Result<Point> {
    action.validate()?;
    let n = action.n();
    if mu.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: mu.len() });
    }
    let coords: Vec<C64> = match action {
        GroupAction::Elliptic(_) => {
            // mu_j = -u_j / (1 + |u|) with u_j = |z_j|^2 / (1 - |z|^2)
            if mu.iter().any(|&m| m > 0.0) {
                return Err(Error::InvalidParameter(
                    "elliptic moment components must be nonpositive".into(),
                ));
            }
            let u: Vec<f64> = mu.iter().map(|&m| -m).collect();
            let q = 1.0 / (1.0 + u.iter().sum::<f64>());
            u.iter().map(|&uj| Complex64::new((uj * q).sqrt(), 0.0)).collect()
        }
        GroupAction::Hyperbolic(_) => {
            if mu[..n - 1].iter().any(|&m| m > 0.0) {
                return Err(Error::InvalidParameter(
                    "rotation moment components must be nonpositive".into(),
                ));
            }
            // scale slice rho = 1
            let mut c: Vec<C64> = mu[..n - 1]
                .iter()
                .map(|&m| Complex64::new((-m).sqrt(), 0.0))
                .collect();
            let horiz: f64 = c.iter().map(|v| v.norm_sqr()).sum();
            c.push(Complex64::new(-2.0 * mu[n - 1], 1.0 + horiz));
            c
        }
        GroupAction::Parabolic(_)
        | GroupAction::Nilpotent(_)
        | GroupAction::QuasiNilpotent(..) => {
            let k = match action {
                GroupAction::Parabolic(_) => n - 1,
                GroupAction::Nilpotent(_) => 0,
                GroupAction::QuasiNilpotent(_, k) => k,
                _ => unreachable!(),
            };
            if mu[n - 1] >= 0.0 {
                return Err(Error::InvalidParameter(
                    "vertical moment component must be negative".into(),
                ));
            }
            let rho = -0.5 / mu[n - 1];
            if mu[..k].iter().any(|&m| m > 0.0) {
                return Err(Error::InvalidParameter(
                    "rotation moment components must be nonpositive".into(),
                ));
            }
            let mut c: Vec<C64> = Vec::with_capacity(n);
            for &m in &mu[..k] {
                c.push(Complex64::new((-m * rho).sqrt(), 0.0));
            }
            for &m in &mu[k..n - 1] {
                c.push(Complex64::new(0.0, 0.5 * m * rho));
            }
            let horiz: f64 = c.iter().map(|v| v.norm_sqr()).sum();
            c.push(Complex64::new(0.0, rho + horiz));
            c
        }
    };
    Point::new(action.domain(), coords)
}

/// Outcome of the search for a pair of points that the restricted moment map
/// cannot tell apart.
#[derive(Debug, Clone)]
pub enum WitnessOutcome {
    /// `z` and `w` have equal pairings against the basis but are separated
    /// by the full moment map and lie on different orbits.
    Witness {
        z: Point,
        w: Point,
        pairing_gap: f64,
        moment_gap: f64,
    },
    NotFound { reason: String },
}

/// Searches for a separation witness of a proper basis: two points with the
/// same restricted moment but different full moments. Moves the base moment
/// along a kernel direction of the pairing map and inverts.
pub fn fiber_witness(basis: &BetaBasis, step: f64) -> Result<WitnessOutcome> {
    let action = basis.action;
    let n = action.n();
    let kernel = basis.kernel();
    if kernel.is_empty() {
        return Ok(WitnessOutcome::NotFound {
            reason: "basis spans the full chart; restricted moment map separates".into(),
        });
    }
    // base moment: valid for every family
    let mut mu0 = vec![0.0; n];
    match action {
        GroupAction::Elliptic(_) => mu0.iter_mut().for_each(|m| *m = -0.4),
        GroupAction::Hyperbolic(_) => {
            mu0[..n - 1].iter_mut().for_each(|m| *m = -0.4);
            mu0[n - 1] = -0.3;
        }
        _ => {
            let k = match action {
                GroupAction::Parabolic(_) => n - 1,
                GroupAction::Nilpotent(_) => 0,
                GroupAction::QuasiNilpotent(_, k) => k,
                _ => unreachable!(),
            };
            mu0[..k].iter_mut().for_each(|m| *m = -0.4);
            mu0[k..n - 1].iter_mut().for_each(|m| *m = 0.3);
            mu0[n - 1] = -0.5;
        }
    }
    let z = point_from_moment(action, &mu0)?;
    for kappa in &kernel {
        for &sign in &[1.0, -1.0] {
            let mut s = step * sign;
            for _ in 0..30 {
                let mu1: Vec<f64> = mu0.iter().zip(kappa).map(|(m, k)| m + s * k).collect();
                if let Ok(w) = point_from_moment(action, &mu1) {
                    let pz = moment_subgroup(basis, &z)?;
                    let pw = moment_subgroup(basis, &w)?;
                    let pairing_gap = pz
                        .iter()
                        .zip(&pw)
                        .map(|(a, b)| (a - b).abs())
                        .fold(0.0, f64::max);
                    let mz = moment_vector(action, &z)?;
                    let mw = moment_vector(action, &w)?;
                    let moment_gap = mz
                        .iter()
                        .zip(&mw)
                        .map(|(a, b)| (a - b).abs())
                        .fold(0.0, f64::max);
                    // accept only displacements that kept most of the step,
                    // and only if the two points sit on different orbits
                    if moment_gap > 0.2 * step.abs() {
                        if let TransportOutcome::NotInSameFiber { .. } =
                            action.orbit_transport(&z, &w, 1e-9)?
                        {
                            return Ok(WitnessOutcome::Witness { z, w, pairing_gap, moment_gap });
                        }
                    }
                }
                s *= 0.5;
            }
        }
    }
    Ok(WitnessOutcome::NotFound {
        reason: "no valid kernel displacement found".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        Complex64::new(re, im)
    }

    #[test]
    fn moment_spot_values() {
        let z = Point::new(Domain::Ball(2), vec![c(0.5, 0.0), c(0.0, 0.0)]).unwrap();
        let mu = moment_masg(GroupAction::Elliptic(2), &z).unwrap();
        assert!((mu[0] + 1.0 / 3.0).abs() < 1e-15);
        assert!(mu[1].abs() < 1e-15);

        let z = Point::new(Domain::Siegel(2), vec![c(0.0, 0.5), c(0.0, 2.0)]).unwrap();
        let mu = moment_masg(GroupAction::Nilpotent(2), &z).unwrap();
        assert!((mu[0] - 4.0 / 7.0).abs() < 1e-15);
        assert!((mu[1] + 2.0 / 7.0).abs() < 1e-15);
    }

    #[test]
    fn coordinate_function_spot_values() {
        let basis = BetaBasis::coordinate_axes(GroupAction::Parabolic(2), &[1]).unwrap();
        let z = Point::new(Domain::Siegel(2), vec![c(0.0, 0.0), c(0.0, 1.0)]).unwrap();
        let a = coordinate_functions(&basis, &z).unwrap();
        assert!((a[0] - 0.5).abs() < 1e-15);

        let basis = BetaBasis::new(GroupAction::Elliptic(2), vec![vec![1.0, 1.0]]).unwrap();
        let z = Point::new(Domain::Ball(2), vec![c(0.5, 0.0), c(0.0, 0.0)]).unwrap();
        let a = coordinate_functions(&basis, &z).unwrap();
        assert!((a[0] - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn rank_deficient_rejected() {
        let r = BetaBasis::new(
            GroupAction::Elliptic(2),
            vec![vec![1.0, 0.0], vec![2.0, 0.0]],
        );
        assert!(matches!(r, Err(Error::RankDeficient { .. })));
        let r = BetaBasis::new(GroupAction::Elliptic(2), vec![vec![0.0, 0.0]]);
        assert!(r.is_err());
    }

    #[test]
    fn orthogonality_probe() {
        let b = BetaBasis::canonical(GroupAction::Elliptic(3), 2).unwrap();
        assert!(b.is_orthogonal(1e-12));
        let b = BetaBasis::new(
            GroupAction::Elliptic(2),
            vec![vec![1.0, 0.0], vec![1.0, 1.0]],
        )
        .unwrap();
        assert!(!b.is_orthogonal(1e-12));
    }

    #[test]
    fn projection_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let action = GroupAction::Elliptic(4);
        let b2 = BetaBasis::new(
            action,
            vec![vec![1.0, 1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0, 2.0]],
        )
        .unwrap();
        let b1 = BetaBasis::new(action, vec![vec![1.0, 1.0, 0.0, 0.0]]).unwrap();
        // same span, different spanning set
        let b2_alt = BetaBasis::new(
            action,
            vec![vec![1.0, 1.0, 1.0, 2.0], vec![1.0, 1.0, -1.0, -2.0]],
        )
        .unwrap();
        for _ in 0..100 {
            let x: Vec<f64> = (0..4).map(|_| rng.random_range(-2.0..2.0)).collect();
            let p2 = project_orthogonal(&b2, &x).unwrap();
            // idempotent
            let pp = project_orthogonal(&b2, &p2).unwrap();
            for (a, b) in pp.iter().zip(&p2) {
                assert!((a - b).abs() < 1e-12);
            }
            // nested: P1 P2 = P1
            let p12 = project_orthogonal(&b1, &p2).unwrap();
            let p1 = project_orthogonal(&b1, &x).unwrap();
            for (a, b) in p12.iter().zip(&p1) {
                assert!((a - b).abs() < 1e-12);
            }
            // basis independent
            let alt = project_orthogonal(&b2_alt, &x).unwrap();
            for (a, b) in alt.iter().zip(&p2) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn kernel_is_orthogonal_complement() {
        let b = BetaBasis::new(
            GroupAction::QuasiNilpotent(3, 1),
            vec![vec![1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0]],
        )
        .unwrap();
        let k = b.kernel();
        assert_eq!(k.len(), 1);
        assert!((k[0][1].abs() - 1.0).abs() < 1e-12);
        for v in b.vectors() {
            let dot: f64 = v.iter().zip(&k[0]).map(|(a, b)| a * b).sum();
            assert!(dot.abs() < 1e-12);
        }
    }

    #[test]
    fn pairings_invariant_under_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let cases = vec![
            BetaBasis::canonical(GroupAction::Elliptic(3), 2).unwrap(),
            BetaBasis::coordinate_axes(GroupAction::Parabolic(3), &[0, 2]).unwrap(),
            BetaBasis::canonical(GroupAction::Hyperbolic(2), 2).unwrap(),
            BetaBasis::coordinate_axes(GroupAction::Nilpotent(2), &[0]).unwrap(),
            BetaBasis::coordinate_axes(GroupAction::QuasiNilpotent(3, 1), &[0, 2]).unwrap(),
        ];
        for basis in cases {
            for _ in 0..200 {
                let z = basis.action.random_point(&mut rng);
                let g = basis.action.random_param(&mut rng);
                let moved = basis.action.act(&g, &z).unwrap();
                let a = moment_subgroup(&basis, &z).unwrap();
                let b = moment_subgroup(&basis, &moved).unwrap();
                for (x, y) in a.iter().zip(&b) {
                    assert!((x - y).abs() < 1e-10 * (1.0 + x.abs()), "{:?}", basis.action);
                }
            }
        }
    }

    #[test]
    fn moment_inversion_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let actions = vec![
            GroupAction::Elliptic(1),
            GroupAction::Elliptic(3),
            GroupAction::Parabolic(2),
            GroupAction::Hyperbolic(2),
            GroupAction::Nilpotent(3),
            GroupAction::QuasiNilpotent(3, 1),
        ];
        for action in actions {
            let n = action.n();
            for _ in 0..50 {
                let z = action.random_point(&mut rng);
                let mu = moment_masg(action, &z).unwrap();
                let w = point_from_moment(action, &mu).unwrap();
                let back = moment_masg(action, &w).unwrap();
                for j in 0..n {
                    assert!(
                        (mu[j] - back[j]).abs() < 1e-11 * (1.0 + mu[j].abs()),
                        "{action:?} comp {j}: {} vs {}",
                        mu[j],
                        back[j]
                    );
                }
            }
        }
    }

    #[test]
    fn full_moment_fibers_are_orbits() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let actions = vec![
            GroupAction::Elliptic(2),
            GroupAction::Parabolic(2),
            GroupAction::Hyperbolic(2),
            GroupAction::Nilpotent(2),
            GroupAction::QuasiNilpotent(3, 1),
        ];
        for action in actions {
            for _ in 0..50 {
                let z = action.random_point(&mut rng);
                let mu = moment_masg(action, &z).unwrap();
                let w = point_from_moment(action, &mu).unwrap();
                match action.orbit_transport(&z, &w, 1e-8).unwrap() {
                    TransportOutcome::Param(_) => {}
                    TransportOutcome::NotInSameFiber { defect } => {
                        panic!("{action:?}: moment fiber left the orbit, defect {defect}")
                    }
                }
            }
        }
    }

    #[test]
    fn witness_for_proper_bases() {
        let b = BetaBasis::coordinate_axes(GroupAction::Elliptic(2), &[0]).unwrap();
        match fiber_witness(&b, 0.5).unwrap() {
            WitnessOutcome::Witness { pairing_gap, moment_gap, .. } => {
                assert!(pairing_gap < 1e-10);
                assert!(moment_gap > 0.1);
            }
            WitnessOutcome::NotFound { reason } => panic!("expected witness: {reason}"),
        }

        let b = BetaBasis::coordinate_axes(GroupAction::QuasiNilpotent(3, 1), &[0, 2]).unwrap();
        match fiber_witness(&b, 0.5).unwrap() {
            WitnessOutcome::Witness { pairing_gap, moment_gap, .. } => {
                assert!(pairing_gap < 1e-10);
                assert!(moment_gap > 0.1);
            }
            WitnessOutcome::NotFound { reason } => panic!("expected witness: {reason}"),
        }
    }

    #[test]
    fn no_witness_for_full_basis() {
        let b = BetaBasis::canonical(GroupAction::Elliptic(2), 2).unwrap();
        assert!(matches!(
            fiber_witness(&b, 0.5).unwrap(),
            WitnessOutcome::NotFound { .. }
        ));
    }

    #[test]
    fn symbol_evaluation() {
        let basis = BetaBasis::coordinate_axes(GroupAction::Parabolic(2), &[1]).unwrap();
        let spec = SymbolSpec::new(basis, "ratio", |a| {
            Complex64::new(a[0] / (1.0 + a[0]), 0.0)
        });
        let z = Point::new(Domain::Siegel(2), vec![c(0.0, 0.0), c(0.0, 1.0)]).unwrap();
        let v = eval_symbol(&spec, &z).unwrap();
        assert!((v - c(1.0 / 3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn partitions_build_indicator_bases() {
        let p = Partition::new(vec![2, 1]).unwrap();
        let b = partition_beta_elliptic(3, &p).unwrap();
        assert_eq!(b.vectors(), &[vec![1.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]]);

        let b = partition_beta_parabolic(3, &p.clone()).unwrap_err();
        // partition of 3 does not fit the 2 rotation slots
        let _ = b;
        let p2 = Partition::new(vec![2]).unwrap();
        let b = partition_beta_parabolic(3, &p2).unwrap();
        assert_eq!(b.vectors(), &[vec![1.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]]);

        let p3 = Partition::new(vec![1]).unwrap();
        let b = partition_beta_quasinilpotent(3, 1, &p3).unwrap();
        assert_eq!(
            b.vectors(),
            &[
                vec![1.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0],
                vec![0.0, 0.0, 1.0]
            ]
        );
        assert!(Partition::new(vec![0]).is_err());
    }
}
