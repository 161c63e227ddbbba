//! The invariant battery behind `mmtop verify`: moment-map defining
//! property, group invariance, fiber transport, projection nesting,
//! spectral normalization, cross-representation agreement, the hyperbolic
//! coordinate identities, and unitary transport of monomial norms. The
//! command exits 0 iff every check passes.

use crate::report::{self, Obj};
use crate::VerifyArgs;
use mmtop::domains::{random_siegel_point, u_lambda_monomial_norm_sq_siegel};
use mmtop::group_actions::all_actions;
use mmtop::moment::{moment_masg, point_from_moment, project_orthogonal};
use mmtop::spectra::{
    gamma_elliptic_beta, gamma_elliptic_moment, gamma_nilpotent_beta, gamma_nilpotent_moment,
    gamma_parabolic_beta, gamma_parabolic_moment, gamma_quasinilpotent_beta,
    gamma_quasinilpotent_moment, hyperbolic_identity_gaps,
};
use mmtop::symplectic::{hamiltonian_field, moment_property_gap, MomentField};
use mmtop::toeplitz::{enumerate_basis, monomial_norm_sq};
use mmtop::{BetaBasis, GroupAction, TransportOutcome, C64};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Check {
    name: &'static str,
    detail: String,
    residual: f64,
    tol: f64,
    pass: bool,
}

fn check(name: &'static str, detail: String, residual: f64, tol: f64) -> Check {
    Check { name, detail, residual, tol, pass: residual <= tol }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn moment_property(
    actions: &[GroupAction],
    rng: &mut ChaCha8Rng,
    inject: bool,
) -> Result<Check, String> {
    let mut worst = 0.0_f64;
    for &action in actions {
        for _ in 0..8 {
            let z = action.random_point(rng);
            let x = action.random_param(rng).coords;
            let gap = if inject && matches!(action, GroupAction::Elliptic(_)) {
                // deliberate fault: the Hamiltonian side is built from -mu_x
                let flipped: Vec<f64> = x.iter().map(|v| -v).collect();
                let field = MomentField::new(action, flipped).map_err(err)?;
                let ham = hamiltonian_field(&field, &z).map_err(err)?;
                let fund = action.fundamental_field(&x, &z).map_err(err)?;
                ham.iter().zip(&fund).map(|(h, f)| (h - f).norm()).fold(0.0, f64::max)
            } else {
                moment_property_gap(action, &x, &z).map_err(err)?
            };
            worst = worst.max(gap);
        }
    }
    Ok(check(
        "moment_property",
        format!("{} actions, 8 fields each", actions.len()),
        worst,
        1e-6,
    ))
}

fn invariance(actions: &[GroupAction], rng: &mut ChaCha8Rng) -> Result<Check, String> {
    let mut worst = 0.0_f64;
    let mut used = 0usize;
    for &action in actions {
        for _ in 0..100 {
            let z = action.random_point(rng);
            let g = action.random_param(rng);
            // motions that leave the guard band are skipped, not failed
            let Ok(moved) = action.act(&g, &z) else { continue };
            let before = moment_masg(action, &z).map_err(err)?;
            let after = moment_masg(action, &moved).map_err(err)?;
            let res = before
                .iter()
                .zip(&after)
                .map(|(p, q)| (p - q).abs())
                .fold(0.0, f64::max);
            worst = worst.max(res);
            used += 1;
        }
    }
    Ok(check("invariance", format!("{used} motions"), worst, 1e-10))
}

fn fiber_transport(actions: &[GroupAction], rng: &mut ChaCha8Rng) -> Result<Check, String> {
    let mut worst = 0.0_f64;
    for &action in actions {
        for _ in 0..10 {
            let z = action.random_point(rng);
            let mu = moment_masg(action, &z).map_err(err)?;
            let w = point_from_moment(action, &mu).map_err(err)?;
            let res = match action.orbit_transport(&z, &w, 1e-8).map_err(err)? {
                TransportOutcome::Param(h) => {
                    let back = action.act(&h, &w).map_err(err)?;
                    back.coords
                        .iter()
                        .zip(&z.coords)
                        .map(|(p, q)| (p - q).norm())
                        .fold(0.0, f64::max)
                }
                TransportOutcome::NotInSameFiber { defect } => defect,
            };
            worst = worst.max(res);
        }
    }
    Ok(check(
        "fiber_transport",
        format!("{} actions, 10 pairs each", actions.len()),
        worst,
        1e-8,
    ))
}

fn projection_nesting(rng: &mut ChaCha8Rng) -> Result<Check, String> {
    // the inner vector is the sum of the outer pair, so the spans nest
    // without either projection degenerating to a coordinate selection
    let outer_rows = || vec![vec![1.0, 0.5, 0.0], vec![0.0, 1.0, 1.0]];
    let inner_rows = || vec![vec![1.0, 1.5, 1.0]];
    let cases = [
        (
            BetaBasis::new(GroupAction::Elliptic(3), inner_rows()).map_err(err)?,
            BetaBasis::new(GroupAction::Elliptic(3), outer_rows()).map_err(err)?,
        ),
        (
            BetaBasis::new(GroupAction::Parabolic(3), inner_rows()).map_err(err)?,
            BetaBasis::new(GroupAction::Parabolic(3), outer_rows()).map_err(err)?,
        ),
    ];
    let mut worst = 0.0_f64;
    for (inner, outer) in &cases {
        let action = inner.action;
        for _ in 0..100 {
            let z = action.random_point(rng);
            // restricting to the inner subgroup directly or through the
            // outer one projects the moment vector to the same point
            let mu = moment_masg(action, &z).map_err(err)?;
            let through_outer =
                project_orthogonal(inner, &project_orthogonal(outer, &mu).map_err(err)?)
                    .map_err(err)?;
            let direct = project_orthogonal(inner, &mu).map_err(err)?;
            let res = through_outer
                .iter()
                .zip(&direct)
                .map(|(p, q)| (p - q).abs())
                .fold(0.0, f64::max);
            worst = worst.max(res);
        }
    }
    Ok(check("projection_nesting", "2 nested pairs, 100 points each".into(), worst, 1e-12))
}

fn normalization() -> Result<Check, String> {
    let one = |_: &[f64]| C64::new(1.0, 0.0);
    let order = 24;
    let eb = BetaBasis::canonical(GroupAction::Elliptic(2), 2).map_err(err)?;
    let pb = BetaBasis::canonical(GroupAction::Parabolic(2), 2).map_err(err)?;
    let nb = BetaBasis::canonical(GroupAction::Nilpotent(2), 2).map_err(err)?;
    let qb = BetaBasis::canonical(GroupAction::QuasiNilpotent(3, 1), 3).map_err(err)?;
    let values = [
        gamma_elliptic_beta(&eb, 0.7, &[1, 2], &one, order).map_err(err)?,
        gamma_elliptic_moment(&eb, 0.7, &[1, 2], &one, order).map_err(err)?,
        gamma_parabolic_beta(&pb, 0.4, &[1], 0.8, &one, order).map_err(err)?,
        gamma_parabolic_moment(&pb, 0.4, &[1], 0.8, &one, order).map_err(err)?,
        gamma_nilpotent_beta(&nb, 1.0, &[0.3], 1.1, &one, order).map_err(err)?,
        gamma_nilpotent_moment(&nb, 1.0, &[0.3], 1.1, &one, order).map_err(err)?,
        gamma_quasinilpotent_beta(&qb, 0.6, &[1], &[0.2], 0.9, &one, order).map_err(err)?,
        gamma_quasinilpotent_moment(&qb, 0.6, &[1], &[0.2], 0.9, &one, order).map_err(err)?,
    ];
    let worst = values.iter().map(|g| (g - 1.0).norm()).fold(0.0, f64::max);
    Ok(check("normalization", "8 unit-profile routes".into(), worst, 1e-10))
}

fn cross_representation() -> Result<Check, String> {
    let bounded = |a: &[f64]| {
        let t: f64 = a.iter().sum();
        C64::new(t / (1.0 + t * t), 0.25 * (-t * t).exp())
    };
    let mut worst = 0.0_f64;
    let mut gap = |b: C64, m: C64| worst = worst.max((b - m).norm());

    let eb = BetaBasis::canonical(GroupAction::Elliptic(2), 2).map_err(err)?;
    gap(
        gamma_elliptic_beta(&eb, 0.7, &[2, 1], &bounded, 64).map_err(err)?,
        gamma_elliptic_moment(&eb, 0.7, &[2, 1], &bounded, 64).map_err(err)?,
    );
    let pb = BetaBasis::canonical(GroupAction::Parabolic(2), 2).map_err(err)?;
    gap(
        gamma_parabolic_beta(&pb, 0.5, &[1], 1.3, &bounded, 64).map_err(err)?,
        gamma_parabolic_moment(&pb, 0.5, &[1], 1.3, &bounded, 64).map_err(err)?,
    );
    let nb = BetaBasis::canonical(GroupAction::Nilpotent(2), 2).map_err(err)?;
    gap(
        gamma_nilpotent_beta(&nb, 1.0, &[-0.4], 0.9, &bounded, 64).map_err(err)?,
        gamma_nilpotent_moment(&nb, 1.0, &[-0.4], 0.9, &bounded, 64).map_err(err)?,
    );
    let qb = BetaBasis::canonical(GroupAction::QuasiNilpotent(3, 1), 3).map_err(err)?;
    gap(
        gamma_quasinilpotent_beta(&qb, 0.8, &[1], &[0.3], 1.1, &bounded, 48).map_err(err)?,
        gamma_quasinilpotent_moment(&qb, 0.8, &[1], &[0.3], 1.1, &bounded, 48).map_err(err)?,
    );

    // the symbol 1 - |z|^2 written over the summed elliptic basis has the
    // closed spectrum (lambda + 1) / (lambda + |p| + n + 1)
    let ones = BetaBasis::new(GroupAction::Elliptic(2), vec![vec![1.0, 1.0]]).map_err(err)?;
    let reciprocal = |a: &[f64]| C64::new(1.0 / (1.0 + a[0]), 0.0);
    let exact = (0.7 + 1.0) / (0.7 + 3.0 + 2.0 + 1.0);
    for g in [
        gamma_elliptic_beta(&ones, 0.7, &[2, 1], &reciprocal, 64).map_err(err)?,
        gamma_elliptic_moment(&ones, 0.7, &[2, 1], &reciprocal, 64).map_err(err)?,
    ] {
        worst = worst.max((g - exact).norm());
    }
    Ok(check("cross_representation", "4 families + closed form".into(), worst, 1e-6))
}

fn hyperbolic_identities(rng: &mut ChaCha8Rng) -> Result<Check, String> {
    let mut worst = 0.0_f64;
    for n in 1..=3 {
        for _ in 0..200 {
            let z = random_siegel_point(n, rng);
            let (first, second) = hyperbolic_identity_gaps(&z).map_err(err)?;
            worst = worst.max(first).max(second);
        }
    }
    Ok(check("hyperbolic_identities", "600 points, n = 1..3".into(), worst, 1e-12))
}

fn unitary_transport() -> Result<Check, String> {
    let mut worst = 0.0_f64;
    for n in 1..=2 {
        for lambda in [0.0, 1.5] {
            for p in enumerate_basis(n, 3) {
                let ball = monomial_norm_sq(n, lambda, &p);
                let siegel = u_lambda_monomial_norm_sq_siegel(n, lambda, &p).map_err(err)?;
                worst = worst.max((siegel - ball).abs() / ball);
            }
        }
    }
    Ok(check("unitary_transport", "n = 1..2, degrees <= 3".into(), worst, 1e-6))
}

fn check_json(c: &Check) -> String {
    Obj::new()
        .field("name", report::string(c.name))
        .field("detail", report::string(&c.detail))
        .field("residual", report::num(c.residual))
        .field("tol", report::num(c.tol))
        .field("pass", report::boolean(c.pass))
        .finish()
}

pub fn run(a: &VerifyArgs) -> Result<bool, String> {
    if a.n_max == 0 {
        return Err("--n-max wants at least 1".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let actions: Vec<GroupAction> = (1..=a.n_max).flat_map(all_actions).collect();
    let checks = vec![
        moment_property(&actions, &mut rng, a.inject_sign_flip)?,
        invariance(&actions, &mut rng)?,
        fiber_transport(&actions, &mut rng)?,
        projection_nesting(&mut rng)?,
        normalization()?,
        cross_representation()?,
        hyperbolic_identities(&mut rng)?,
        unitary_transport()?,
    ];
    let all = checks.iter().all(|c| c.pass);
    for c in &checks {
        eprintln!(
            "[{}] {:<22} residual {:9.3e}  tol {:7.1e}  {}",
            if c.pass { " ok " } else { "FAIL" },
            c.name,
            c.residual,
            c.tol,
            c.detail
        );
    }

    let config = Obj::new()
        .field("seed", report::int(a.seed))
        .field("n_max", report::int(a.n_max))
        .field("inject_sign_flip", report::boolean(a.inject_sign_flip))
        .finish();
    let results = Obj::new()
        .field("checks", report::array(checks.iter().map(check_json)))
        .field("all_pass", report::boolean(all))
        .finish();
    report::emit(&report::wrap("verify", config, results), a.out.as_deref())?;
    Ok(all)
}
