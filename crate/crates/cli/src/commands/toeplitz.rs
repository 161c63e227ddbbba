use crate::parse::{parse_action, resolve_basis};
use crate::report::{self, Obj};
use crate::{profiles, ToeplitzArgs};
use mmtop::toeplitz::{
    assemble_toeplitz, commutator_norm, transport_symbol, transported_angular_axes,
    AssemblyOptions,
};
use mmtop::{Domain, SymbolSpec, ToeplitzMatrix};
use std::fs;
use std::path::{Path, PathBuf};

fn assemble(
    spec: SymbolSpec,
    lambda: f64,
    degree: usize,
    opts: &AssemblyOptions,
) -> Result<ToeplitzMatrix, String> {
    let action = spec.basis.action;
    let n = action.n();
    let name = spec.name.clone();
    match action.domain() {
        Domain::Ball(_) => {
            let sym = move |coords: &[mmtop::C64]| spec.eval_coords(Domain::Ball(n), coords);
            assemble_toeplitz(sym, n, lambda, degree, opts, &name)
        }
        Domain::Siegel(_) => transport_symbol(spec)
            .and_then(|sym| assemble_toeplitz(sym, n, lambda, degree, opts, &name)),
    }
    .map_err(|e| e.to_string())
}

fn matrix_json(name: &str, m: &ToeplitzMatrix) -> String {
    Obj::new()
        .field("symbol", report::string(name))
        .field("dim", report::int(m.dim()))
        .field("hermitian_residual", report::num(m.hermitian_residual()))
        .field("offdiagonal_mass", report::num(m.offdiagonal_mass()))
        .field("diagonal", report::array(m.diagonal().into_iter().map(report::complex)))
        .finish()
}

fn csv_sidecar(report_path: &Path, tag: &str) -> PathBuf {
    PathBuf::from(format!("{}.{tag}.csv", report_path.with_extension("").display()))
}

pub fn run(a: &ToeplitzArgs) -> Result<bool, String> {
    let action = parse_action(&a.action, a.n, a.k)?;
    let basis = resolve_basis(action, &a.beta, a.partition.as_deref())?;
    let m = basis.len();
    let angular = a.quad_angular.unwrap_or((2 * a.degree + 2).max(64));
    let axes = match action.domain() {
        // every elliptic coordinate function is torus-invariant
        Domain::Ball(_) => Some(vec![false; a.n]),
        Domain::Siegel(_) => Some(transported_angular_axes(&basis).map_err(|e| e.to_string())?),
    };
    let opts = AssemblyOptions {
        radial_order: a.quad_radial,
        angular_order: angular,
        angular_axes: axes,
    };

    let (fa, coeffs_a) = profiles::build(&a.profile, a.profile_args.as_deref(), m)?;
    let spec_a = SymbolSpec::new(basis.clone(), a.profile.as_str(), fa);
    let mat_a = assemble(spec_a, a.lambda, a.degree, &opts)?;

    let mut pair = None;
    if let Some(name2) = &a.profile2 {
        let (fb, coeffs_b) = profiles::build(name2, a.profile2_args.as_deref(), m)?;
        let spec_b = SymbolSpec::new(basis.clone(), name2.as_str(), fb);
        let mat_b = assemble(spec_b, a.lambda, a.degree, &opts)?;
        let comm = commutator_norm(&mat_a, &mat_b, a.buffer).map_err(|e| e.to_string())?;
        pair = Some((mat_b, coeffs_b, comm));
    }

    // single symbols are judged by diagonality, pairs by their commutator
    let measured = pair.as_ref().map_or(mat_a.offdiagonal_mass(), |(_, _, c)| *c);
    let pass = a.tol.map_or(true, |t| measured <= t);

    let mut config = super::base_config(action, &basis)
        .field("lambda", report::num(a.lambda))
        .field("degree", report::int(a.degree))
        .field("profile", super::profile_config(&a.profile, &coeffs_a));
    if let Some((_, coeffs_b, _)) = &pair {
        config = config.field(
            "profile2",
            super::profile_config(a.profile2.as_deref().unwrap(), coeffs_b),
        );
    }
    config = config
        .field("quad_radial", report::int(a.quad_radial))
        .field("quad_angular", report::int(angular))
        .field("buffer", report::int(a.buffer));
    if let Some(t) = a.tol {
        config = config.field("tol", report::num(t));
    }

    let mut results = Obj::new().field("a", matrix_json(&a.profile, &mat_a));
    if let Some((mat_b, _, comm)) = &pair {
        results = results
            .field("b", matrix_json(a.profile2.as_deref().unwrap(), mat_b))
            .field("commutator_norm", report::num(*comm));
    }
    results = results
        .field("measured", report::num(measured))
        .field("pass", report::boolean(pass));

    if let Some(path) = &a.out {
        fs::write(csv_sidecar(path, "a"), mat_a.to_csv())
            .map_err(|e| format!("cannot write matrix CSV: {e}"))?;
        if let Some((mat_b, _, _)) = &pair {
            fs::write(csv_sidecar(path, "b"), mat_b.to_csv())
                .map_err(|e| format!("cannot write matrix CSV: {e}"))?;
        }
    }
    report::emit(
        &report::wrap("toeplitz", config.finish(), results.finish()),
        a.out.as_deref(),
    )?;
    Ok(pass)
}
