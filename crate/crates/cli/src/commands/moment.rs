use crate::parse::{parse_action, parse_point, resolve_basis};
use crate::report::{self, Obj};
use crate::MomentArgs;
use mmtop::moment::{coordinate_functions, moment_masg, moment_subgroup};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run(a: &MomentArgs) -> Result<bool, String> {
    if a.point.is_empty() && a.count == 0 {
        return Err("--count wants at least 1 when no --point is given".into());
    }
    let action = parse_action(&a.action, a.n, a.k)?;
    let basis = resolve_basis(action, &a.beta, a.partition.as_deref())?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let points = if a.point.is_empty() {
        (0..a.count).map(|_| action.random_point(&mut rng)).collect::<Vec<_>>()
    } else {
        a.point
            .iter()
            .map(|s| parse_point(action.domain(), s))
            .collect::<Result<Vec<_>, _>>()?
    };

    let mut rows = Vec::new();
    let mut worst = 0.0_f64;
    for z in &points {
        let mu_g = moment_masg(action, z).map_err(|e| e.to_string())?;
        let mu_h = moment_subgroup(&basis, z).map_err(|e| e.to_string())?;
        let coords = coordinate_functions(&basis, z).map_err(|e| e.to_string())?;
        let mut row = Obj::new()
            .field("z", report::array(z.coords.iter().map(|&c| report::complex(c))))
            .field("mu_masg", report::reals(&mu_g))
            .field("mu_subgroup", report::reals(&mu_h))
            .field("coordinates", report::reals(&coords));
        if a.check_invariance {
            let g = action.random_param(&mut rng);
            let moved = action.act(&g, z).map_err(|e| e.to_string())?;
            let mu_moved = moment_masg(action, &moved).map_err(|e| e.to_string())?;
            let res = mu_g
                .iter()
                .zip(&mu_moved)
                .map(|(p, q)| (p - q).abs())
                .fold(0.0, f64::max);
            worst = worst.max(res);
            row = row.field("invariance_residual", report::num(res));
        }
        rows.push(row.finish());
    }
    let pass = !a.check_invariance || worst <= a.tol;

    let config = super::base_config(action, &basis)
        .field("points", report::int(points.len()))
        .field("seed", report::int(a.seed))
        .field("check_invariance", report::boolean(a.check_invariance))
        .field("tol", report::num(a.tol))
        .finish();
    let mut results = Obj::new().field("points", report::array(rows));
    if a.check_invariance {
        results = results
            .field("max_invariance_residual", report::num(worst))
            .field("pass", report::boolean(pass));
    }
    report::emit(&report::wrap("moment", config, results.finish()), a.out.as_deref())?;
    Ok(pass)
}
