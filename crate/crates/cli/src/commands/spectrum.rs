use crate::parse::{parse_action, parse_grid, resolve_basis};
use crate::report::{self, Obj};
use crate::{profiles, SpectrumArgs};
use mmtop::spectra::{SpectralParams, SpectrumRow};
use mmtop::toeplitz::enumerate_basis;
use mmtop::{GroupAction, SpectrumQuery, SymbolSpec};

const ROW_CAP: usize = 20_000;

fn multi_indices(len: usize, degree: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        vec![vec![]]
    } else {
        enumerate_basis(len, degree)
    }
}

fn grid_power(grid: &[f64], len: usize) -> Result<Vec<Vec<f64>>, String> {
    let total = grid.len().checked_pow(len as u32).filter(|&t| t <= ROW_CAP);
    if total.is_none() {
        return Err(format!(
            "the y grid spans {} axes of {} samples; shrink --grid-y",
            len,
            grid.len()
        ));
    }
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                grid.iter().map(move |&y| {
                    let mut v = prefix.clone();
                    v.push(y);
                    v
                })
            })
            .collect();
    }
    Ok(out)
}

fn build_params(
    action: GroupAction,
    degree: usize,
    xi_grid: &[f64],
    y_grid: &[f64],
) -> Result<Vec<SpectralParams>, String> {
    let n = action.n();
    let params: Vec<SpectralParams> = match action {
        GroupAction::Elliptic(_) => multi_indices(n, degree)
            .into_iter()
            .map(|p| SpectralParams::Elliptic { p })
            .collect(),
        GroupAction::Parabolic(_) => multi_indices(n - 1, degree)
            .into_iter()
            .flat_map(|p| {
                xi_grid
                    .iter()
                    .map(move |&xi| SpectralParams::Parabolic { p: p.clone(), xi })
            })
            .collect(),
        GroupAction::Nilpotent(_) => grid_power(y_grid, n - 1)?
            .into_iter()
            .flat_map(|y| {
                xi_grid
                    .iter()
                    .map(move |&xi| SpectralParams::Nilpotent { y: y.clone(), xi })
            })
            .collect(),
        GroupAction::QuasiNilpotent(_, k) => {
            let ys = grid_power(y_grid, n - k - 1)?;
            let mut v = Vec::new();
            for p in multi_indices(k, degree) {
                for y in &ys {
                    for &xi in xi_grid {
                        v.push(SpectralParams::QuasiNilpotent {
                            p: p.clone(),
                            y: y.clone(),
                            xi,
                        });
                    }
                }
            }
            v
        }
        GroupAction::Hyperbolic(_) => unreachable!("rejected before dispatch"),
    };
    if params.len() > ROW_CAP {
        return Err(format!(
            "the parameter grid has {} rows; the cap is {ROW_CAP}, shrink --degree or the grids",
            params.len()
        ));
    }
    Ok(params)
}

fn ints(p: &[usize]) -> String {
    report::array(p.iter().map(|&k| report::int(k)))
}

fn row_json(r: &SpectrumRow) -> String {
    let mut o = Obj::new();
    match &r.params {
        SpectralParams::Elliptic { p } => o = o.field("p", ints(p)),
        SpectralParams::Parabolic { p, xi } => {
            o = o.field("p", ints(p)).field("xi", report::num(*xi))
        }
        SpectralParams::Nilpotent { y, xi } => {
            o = o.field("y", report::reals(y)).field("xi", report::num(*xi))
        }
        SpectralParams::QuasiNilpotent { p, y, xi } => {
            o = o
                .field("p", ints(p))
                .field("y", report::reals(y))
                .field("xi", report::num(*xi))
        }
    }
    o.field("gamma_beta", report::complex(r.gamma_beta))
        .field("gamma_moment", report::complex(r.gamma_moment))
        .field("residual", report::num((r.gamma_beta - r.gamma_moment).norm()))
        .finish()
}

pub fn run(a: &SpectrumArgs) -> Result<bool, String> {
    let action = parse_action(&a.action, a.n, a.k)?;
    if matches!(action, GroupAction::Hyperbolic(_)) {
        return Err(
            "no spectral table for the hyperbolic family; its coordinate identities \
             run under `mmtop verify`"
                .into(),
        );
    }
    let basis = resolve_basis(action, &a.beta, a.partition.as_deref())?;
    let (f, coeffs) = profiles::build(&a.profile, a.profile_args.as_deref(), basis.len())?;
    let spec = SymbolSpec::new(basis.clone(), a.profile.as_str(), f);
    let xi_grid = parse_grid(&a.grid_xi)?;
    let y_grid = parse_grid(&a.grid_y)?;
    let params = build_params(action, a.degree, &xi_grid, &y_grid)?;
    let query = SpectrumQuery { spec, lambda: a.lambda, order: a.quad_radial };
    let table = query.evaluate(&params).map_err(|e| e.to_string())?;

    let max_residual = table
        .rows
        .iter()
        .map(|r| (r.gamma_beta - r.gamma_moment).norm())
        .fold(0.0, f64::max);
    let pass = a.tol.map_or(true, |t| max_residual <= t);

    let payload = match a.format.as_str() {
        "csv" => table.to_csv().trim_end().to_string(),
        "json" => {
            let mut config = super::base_config(action, &basis)
                .field("lambda", report::num(a.lambda))
                .field("profile", super::profile_config(&a.profile, &coeffs))
                .field("degree", report::int(a.degree))
                .field("grid_xi", report::reals(&xi_grid))
                .field("grid_y", report::reals(&y_grid))
                .field("quad_radial", report::int(a.quad_radial));
            if let Some(t) = a.tol {
                config = config.field("tol", report::num(t));
            }
            let results = Obj::new()
                .field("rows", report::array(table.rows.iter().map(row_json)))
                .field("max_residual", report::num(max_residual))
                .field("pass", report::boolean(pass))
                .finish();
            report::wrap("spectrum", config.finish(), results)
        }
        other => return Err(format!("unknown format '{other}'; expected json or csv")),
    };
    report::emit(&payload, a.out.as_deref())?;
    Ok(pass)
}
